mod expr;

use std::cell::OnceCell;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};
use morava::groupring::{RingElt, RingEltJson};
use morava::ideals::{RingIdeals, Submodule};
use morava::quotients::{self, Descriptor, DigitForm, QuotientGroup, Variant};
use morava::resolution::{self, CheckReport, Status, SuiteLevel};
use morava::witt::hex_mod;
use morava::{subgroups, EndoElt, Fgl, GElt, MoravaError, Result, WittApprox};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use expr::{recognise, Evaluator, Value};

#[derive(Parser)]
#[command(name = "morava", version, about = "Exact computations in the height-2 Morava stabilizer group at p = 2")]
struct Cli {
    /// Formal group law: honda or elliptic.
    #[arg(long, global = true, default_value = "honda")]
    fgl: Fgl,
    /// Precision N (residues mod 2^N); defaults to 16 for elements and 4 for rings.
    #[arg(long, global = true)]
    prec2: Option<u32>,
    /// Quotient depth M.
    #[arg(long, global = true, default_value_t = 5)]
    depth: u32,
    /// Quotient variant for ring computations: S2, PS2, G2 or PG2.
    #[arg(long, global = true, default_value = "PG2")]
    variant: Variant,
    /// Restrict the quotient to the norm-one image.
    #[arg(long, global = true)]
    norm_one: bool,
    #[arg(long, global = true, value_enum, default_value_t = Output::Text)]
    output: Output,
    /// Seed for random(k) in expressions.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Output {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print alpha, pi, sqrt(-7), i, j, k and omega.
    Constants,
    /// Evaluate an expression over named elements.
    Eval { expr: String },
    /// Digit normal form of a group element at the given depth.
    NormalForm { elt: String },
    /// Elements and order profile of a standard finite subgroup.
    Subgroup { name: String },
    /// Size of the quotient and of its standard subgroup images.
    QuotientInfo,
    /// Run the resolution checks.
    #[command(group(ArgGroup::new("what").required(true).args(["suite", "check"])))]
    Verify {
        #[arg(long)]
        suite: Option<SuiteLevel>,
        #[arg(long)]
        check: Option<String>,
    },
    /// Write an ideal, subgroup image or ring element as JSON.
    #[command(group(ArgGroup::new("what").required(true).args(["ideal", "subgroup", "ring_elt"])))]
    Export {
        #[arg(long)]
        ideal: Option<String>,
        #[arg(long)]
        subgroup: Option<String>,
        #[arg(long)]
        ring_elt: Option<String>,
    },
    /// Read an exported JSON file, rebuild it and write it back out.
    Import { file: PathBuf },
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
enum Export {
    Ideal {
        quotient: Descriptor,
        #[serde(rename = "N")]
        prec: u32,
        name: String,
        dim: usize,
        rows: Vec<(usize, String)>,
    },
    Subgroup {
        quotient: Descriptor,
        name: String,
        elements: Vec<String>,
    },
    RingElt(RingEltJson),
}

fn exit_code(e: &MoravaError) -> u8 {
    match e {
        MoravaError::InsufficientPrecision { .. } | MoravaError::DepthOutOfRange(_) | MoravaError::DimensionCap(_) => 3,
        _ => 2,
    }
}

fn max_depth() -> u32 {
    std::env::var("MORAVA_MAX_DEPTH")
        .ok()
        .and_then(|s| s.parse().ok())
        .map(|d: u32| d.min(quotients::MAX_DEPTH))
        .unwrap_or(quotients::MAX_DEPTH)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.prec2 {
        if !(3..=64).contains(&n) {
            eprintln!("error: --prec2 must lie in 3..=64");
            return ExitCode::from(2);
        }
    }
    if !(2..=quotients::MAX_DEPTH).contains(&cli.depth) {
        eprintln!("error: --depth must lie in 2..={}", quotients::MAX_DEPTH);
        return ExitCode::from(2);
    }
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn witt_json(w: &WittApprox) -> serde_json::Value {
    serde_json::json!([format!("{:#x}", w.a0()), format!("{:#x}", w.a1())])
}

fn endo_text(x: &EndoElt) -> String {
    format!(
        "(0x{:x} + 0x{:x}*zeta) + (0x{:x} + 0x{:x}*zeta)*xi mod 2^{}",
        x.a().a0(),
        x.a().a1(),
        x.b().a0(),
        x.b().a1(),
        x.prec()
    )
}

fn gelt_text(g: &GElt) -> String {
    let base = endo_text(&g.unit());
    let name = recognise(g).map(|n| format!("  [{n}]")).unwrap_or_default();
    if g.flag() == 1 {
        format!("{base} * sigma{name}")
    } else {
        format!("{base}{name}")
    }
}

fn gelt_json(g: &GElt) -> serde_json::Value {
    serde_json::json!({
        "a": witt_json(&g.unit().a()),
        "b": witt_json(&g.unit().b()),
        "flag": g.flag(),
        "N": g.prec(),
        "name": recognise(g),
    })
}

fn print_json<T: Serialize>(x: &T) -> Result<()> {
    let s = serde_json::to_string_pretty(x).map_err(|e| MoravaError::Parse(e.to_string()))?;
    println!("{s}");
    Ok(())
}

struct Ctx<'a> {
    cli: &'a Cli,
    quotient: OnceCell<Arc<QuotientGroup>>,
}

impl Ctx<'_> {
    fn elt_prec(&self) -> u32 {
        self.cli.prec2.unwrap_or(16)
    }

    fn ring_prec(&self) -> u32 {
        self.cli.prec2.unwrap_or(4)
    }

    fn quotient(&self) -> Result<Arc<QuotientGroup>> {
        if self.cli.depth > max_depth() {
            return Err(MoravaError::DepthOutOfRange(self.cli.depth));
        }
        if let Some(q) = self.quotient.get() {
            return Ok(q.clone());
        }
        let desc =
            Descriptor { variant: self.cli.variant, m: self.cli.depth, fgl: self.cli.fgl, norm_one: self.cli.norm_one };
        let q = Arc::new(QuotientGroup::from_descriptor(desc)?);
        Ok(self.quotient.get_or_init(|| q).clone())
    }

    fn eval(&self, src: &str) -> Result<Value> {
        let mut rng = ChaCha8Rng::seed_from_u64(self.cli.seed);
        let ring = || -> Result<(Arc<QuotientGroup>, u32)> { Ok((self.quotient()?, self.ring_prec())) };
        Evaluator::new(self.cli.fgl, self.elt_prec(), &ring, &mut rng).eval(src)
    }
}

fn run(cli: &Cli) -> Result<u8> {
    let ctx = Ctx { cli, quotient: OnceCell::new() };
    let json = cli.output == Output::Json;
    match &cli.cmd {
        Cmd::Constants => {
            let n = ctx.elt_prec();
            let mut scalars = Vec::new();
            for name in ["alpha", "pi", "sqrt_m7"] {
                scalars.push((name, WittApprox::constant(name, n)?));
            }
            let mut units = Vec::new();
            for name in ["i", "j", "k", "omega"] {
                units.push((name, EndoElt::standard(name, cli.fgl, n)?));
            }
            if json {
                let mut out = serde_json::Map::new();
                for (name, w) in &scalars {
                    out.insert(name.to_string(), witt_json(w));
                }
                for (name, x) in &units {
                    out.insert(name.to_string(), serde_json::json!({"a": witt_json(&x.a()), "b": witt_json(&x.b())}));
                }
                out.insert("N".into(), n.into());
                out.insert("fgl".into(), cli.fgl.name().into());
                print_json(&out)?;
            } else {
                for (name, w) in &scalars {
                    println!("{name} = {w}");
                }
                for (name, x) in &units {
                    println!("{name} = {}", endo_text(x));
                }
            }
            Ok(0)
        }
        Cmd::Eval { expr } => {
            match ctx.eval(expr)? {
                Value::Int(c) => {
                    let n = ctx.elt_prec();
                    if json {
                        print_json(&serde_json::json!({"int": hex_mod(c as u64, n)}))?;
                    } else {
                        println!("{}", hex_mod(c as u64, n));
                    }
                }
                Value::Group(g) => {
                    if json {
                        print_json(&gelt_json(&g))?;
                    } else {
                        println!("{}", gelt_text(&g));
                    }
                }
                Value::Ring(r) => {
                    if json {
                        print_json(&r.to_json())?;
                    } else {
                        println!("{r}");
                    }
                }
            }
            Ok(0)
        }
        Cmd::NormalForm { elt } => {
            let g = match ctx.eval(elt)? {
                Value::Group(g) => g,
                _ => return Err(MoravaError::Parse("normal-form needs a group element".into())),
            };
            let df = quotients::normal_form(&g, cli.depth)?;
            if json {
                print_json(&serde_json::json!({"M": cli.depth, "form": df.to_string()}))?;
            } else {
                println!("{df}");
            }
            Ok(0)
        }
        Cmd::Subgroup { name } => {
            let t = subgroups::standard(name, cli.fgl, cli.prec2.unwrap_or(8))?;
            let profile: Vec<(u64, usize)> = t.order_profile().into_iter().collect();
            if json {
                let els: Vec<_> = t.elements.iter().map(gelt_json).collect();
                print_json(&serde_json::json!({"name": name, "order": t.len(), "profile": profile, "elements": els}))?;
            } else {
                println!("{name}: order {}", t.len());
                let p: Vec<String> = profile.iter().map(|(o, c)| format!("{c} of order {o}")).collect();
                println!("profile: {}", p.join(", "));
                for g in &t.elements {
                    println!("  {}", gelt_text(g));
                }
            }
            Ok(0)
        }
        Cmd::QuotientInfo => {
            let q = ctx.quotient()?;
            let mut images = Vec::new();
            for name in quotients::SUBGROUP_NAMES {
                let name = if name == "F(i)" { "F(2)" } else { name };
                if let Ok(s) = q.subgroup_image(name) {
                    images.push((name.to_string(), s.len()));
                }
            }
            if json {
                print_json(&serde_json::json!({"quotient": q.descriptor(), "order": q.len(), "images": images}))?;
            } else {
                println!("{}: order {}", q.descriptor(), q.len());
                for (name, n) in images {
                    println!("  {name}: {n}");
                }
            }
            Ok(0)
        }
        Cmd::Verify { suite, check } => {
            let reports = match (suite, check) {
                (Some(level), _) => resolution::run_suite(*level, cli.fgl, max_depth())?,
                (None, Some(id)) => {
                    if cli.depth > max_depth() {
                        return Err(MoravaError::DepthOutOfRange(cli.depth));
                    }
                    vec![resolution::run_check(id, cli.fgl, cli.depth, ctx.ring_prec())?]
                }
                _ => unreachable!("clap requires one of --suite, --check"),
            };
            print_reports(&reports, json)?;
            Ok(if reports.iter().any(|r| r.status == Status::Fail) {
                1
            } else if reports.iter().any(|r| r.status == Status::Inconclusive) {
                3
            } else {
                0
            })
        }
        Cmd::Export { ideal, subgroup, ring_elt } => {
            let out = if let Some(name) = ideal {
                let q = ctx.quotient()?;
                let ideals = RingIdeals::new(&q, ctx.ring_prec())?;
                let s = ideals.standard(name)?;
                export_ideal(&q, name, &s)
            } else if let Some(name) = subgroup {
                let q = ctx.quotient()?;
                let s = q.subgroup_image(name)?;
                Export::Subgroup {
                    quotient: q.descriptor(),
                    name: name.clone(),
                    elements: s.ids().iter().map(|&g| q.form(g).to_string()).collect(),
                }
            } else {
                let src = ring_elt.as_deref().unwrap_or_default();
                let r = match ctx.eval(src)? {
                    Value::Ring(r) => r,
                    v @ (Value::Group(_) | Value::Int(_)) => {
                        let q = ctx.quotient()?;
                        match v {
                            Value::Group(g) => RingElt::from_gelt(&q, &g, ctx.ring_prec())?,
                            Value::Int(c) => RingElt::from_int(&q, c, ctx.ring_prec()),
                            Value::Ring(_) => unreachable!(),
                        }
                    }
                };
                Export::RingElt(r.to_json())
            };
            print_json(&out)?;
            Ok(0)
        }
        Cmd::Import { file } => {
            let text =
                std::fs::read_to_string(file).map_err(|e| MoravaError::Parse(format!("{}: {e}", file.display())))?;
            let parsed: Export = serde_json::from_str(&text).map_err(|e| MoravaError::Parse(e.to_string()))?;
            print_json(&reimport(parsed)?)?;
            Ok(0)
        }
    }
}

fn print_reports(reports: &[CheckReport], json: bool) -> Result<()> {
    if json {
        return print_json(&reports);
    }
    for r in reports {
        let status = match r.status {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Inconclusive => "inconclusive",
        };
        let c = &r.context;
        let mut line = format!("{:<4} {:<12} M={} N={} {} {}", r.check_id, status, c.m, c.n, c.fgl, c.variant);
        if let Some(w) = &r.witness {
            line += &format!("  ({w})");
        }
        println!("{}", line.trim_end());
    }
    Ok(())
}

fn hex_row(v: &[u8]) -> String {
    v.iter().map(|x| format!("{x:02x}")).collect()
}

fn parse_row(s: &str, dim: usize) -> Result<Vec<u8>> {
    if s.len() != 2 * dim || !s.is_ascii() {
        return Err(MoravaError::Parse(format!("row of length {} for dimension {dim}", s.len())));
    }
    (0..dim)
        .map(|n| u8::from_str_radix(&s[2 * n..2 * n + 2], 16).map_err(|_| MoravaError::Parse("bad hex row".into())))
        .collect()
}

fn export_ideal(q: &QuotientGroup, name: &str, s: &Submodule) -> Export {
    Export::Ideal {
        quotient: q.descriptor(),
        prec: s.prec(),
        name: name.to_string(),
        dim: s.dim(),
        rows: s.canonical().into_iter().map(|(c, v)| (c, hex_row(&v))).collect(),
    }
}

fn reimport(e: Export) -> Result<Export> {
    match e {
        Export::Ideal { quotient, prec, name, dim, rows } => {
            let q = QuotientGroup::from_descriptor(quotient)?;
            if dim != 2 * q.len() {
                return Err(MoravaError::Parse(format!("dimension {dim} for a group of order {}", q.len())));
            }
            let vs = rows.iter().map(|(_, r)| parse_row(r, dim)).collect::<Result<Vec<_>>>()?;
            let s = Submodule::span(&name, dim, prec, vs)?;
            Ok(export_ideal(&q, &name, &s))
        }
        Export::Subgroup { quotient, name, elements } => {
            let q = QuotientGroup::from_descriptor(quotient)?;
            let ids = elements
                .iter()
                .map(|f| f.parse::<DigitForm>().and_then(|df| q.id_of_form(&df)))
                .collect::<Result<Vec<_>>>()?;
            let s = q.subset(&name, ids);
            if !q.is_subgroup(&s) {
                return Err(MoravaError::NotASubgroup);
            }
            let elements = s.ids().iter().map(|&g| q.form(g).to_string()).collect();
            Ok(Export::Subgroup { quotient, name, elements })
        }
        Export::RingElt(j) => {
            let q = Arc::new(QuotientGroup::from_descriptor(j.quotient)?);
            Ok(Export::RingElt(RingElt::from_json(&q, &j)?.to_json()))
        }
    }
}
