//! Acceptance criteria 1-10. Runs without the test harness so that every criterion prints
//! one pass/fail line; exits nonzero if any criterion fails or overruns its time budget.

use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::{Duration, Instant};

use morava::endo::EndoElt;
use morava::groupring::RingElt;
use morava::ideals::Submodule;
use morava::quotients::{normal_form, reconstruct, QuotientGroup, Variant};
use morava::resolution::{self, run_check, ResVariant, ResolutionRing, Status, SuiteLevel};
use morava::{Fgl, Result, WittApprox};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<Option<String>>;

/// Name, body and time budget in seconds.
type Criterion = (&'static str, fn() -> Outcome, u64);

fn fail(msg: impl Into<String>) -> Outcome {
    Ok(Some(msg.into()))
}

fn checks_pass(ids: &[&str], m: u32, n: u32) -> Outcome {
    for fgl in Fgl::ALL {
        for id in ids {
            let r = run_check(id, fgl, m, n)?;
            if r.status != Status::Pass {
                return fail(format!("{id} at M={m} N={n} {fgl}: {:?} {}", r.status, r.witness.unwrap_or_default()));
            }
        }
    }
    Ok(None)
}

fn c1() -> Outcome {
    for fgl in Fgl::ALL {
        if let Some(w) = resolution::check_constants(fgl, 16)? {
            return fail(format!("{fgl}: {w}"));
        }
    }
    Ok(None)
}

fn c2() -> Outcome {
    for fgl in Fgl::ALL {
        if let Some(w) = resolution::check_battery(fgl, 8)? {
            return fail(format!("{fgl}: {w}"));
        }
    }
    Ok(None)
}

fn c3() -> Outcome {
    let n = 8;
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let unit = |rng: &mut ChaCha8Rng| loop {
        let a = WittApprox::new(rng.gen(), rng.gen(), n);
        if a.is_unit() {
            return EndoElt::new(a, WittApprox::new(rng.gen(), rng.gen(), n), Fgl::Elliptic).unwrap();
        }
    };
    for _ in 0..1000 {
        let (x, y) = (unit(&mut rng), unit(&mut rng));
        if (x * y).iso_he()? != x.iso_he()? * y.iso_he()? {
            return fail(format!("not multiplicative on {x:?}, {y:?}"));
        }
        for z in [x, EndoElt::new(WittApprox::one(n) + x.a().scale(2), x.b(), Fgl::Elliptic)?] {
            let (lz, li) = (z.filtration_level()?, z.iso_he()?.filtration_level()?);
            if lz != li {
                return fail(format!("level {lz:?} -> {li:?} for {z:?}"));
            }
        }
    }
    let a = EndoElt::standard("alpha", Fgl::Elliptic, n)?;
    if a.iso_he()? != EndoElt::standard("alpha", Fgl::Honda, n)? {
        return fail("alpha not fixed");
    }
    Ok(None)
}

fn c4() -> Outcome {
    for fgl in Fgl::ALL {
        for m in 2..=5u32 {
            let q = QuotientGroup::build(m, Variant::S2, fgl)?;
            if q.len() != 3 * 4usize.pow(m - 1) {
                return fail(format!("|S2/F| = {} at M={m}", q.len()));
            }
            for id in 0..q.len() as u32 {
                let df = q.form(id).clone();
                if normal_form(&reconstruct(&df, fgl)?, m)? != df || q.id_of(&q.rep(id))? != id {
                    return fail(format!("round trip of {df} at M={m}"));
                }
            }
        }
        // build validates det residues on 50 random representatives per coset
        let q = QuotientGroup::build(5, Variant::S2, fgl)?;
        let k = q.subgroup_image("K")?;
        let minus = q.named_id("-1")?;
        if k.contains(minus) {
            return fail("-1 in K");
        }
        let mut pm = k.ids().to_vec();
        pm.extend(k.ids().iter().map(|&x| q.mul(minus, x)));
        if q.subset("pmK", pm).ids() != q.filtration(2)?.ids() {
            return fail("F(2) != {+-1} K");
        }
        let k1 = q.subgroup_image("K1")?;
        if k1.len() * 24 != q.norm_one().len() || q.subgroup_image("K1_low")?.ids() != k1.ids() {
            return fail("K1 image");
        }
        let pg = QuotientGroup::build(5, Variant::PG2, fgl)?;
        if let Some(g) = pg.normalizer_witness(&pg.subgroup_image("K")?, &pg.all()) {
            return fail(format!("PK not normal: {}", pg.form(g)));
        }
        let g2 = QuotientGroup::build(5, Variant::G2, fgl)?;
        if g2.normalizer_witness(&g2.subgroup_image("K")?, &g2.all()).is_none() {
            return fail("K normal in G2");
        }
    }
    Ok(None)
}

fn c5() -> Outcome {
    let (m, n) = (5, 4);
    if let Some(w) = checks_pass(&["C3"], m, n)? {
        return fail(w);
    }
    for fgl in Fgl::ALL {
        for v in [ResVariant::Plain, ResVariant::Phi] {
            let r = ResolutionRing::new(v, fgl, m, n)?;
            let s = r.eijk()?;
            let t = r.int(3) + r.g("i")? + r.g("j")? + r.g("k")?;
            if &s * &t != s.scale_int(6) {
                return fail(format!("(e+i+j+k)(3+i+j+k) != 6(e+i+j+k) [{v}]"));
            }
            let d = &s - &((r.e() - r.g("i")?) * (r.e() - r.g("j")?));
            if d.coeffs().values().any(|c| c.val2() == 0) {
                return fail(format!("(e+i+j+k) != (1-i)(1-j) mod 2 [{v}]"));
            }
        }
        let r = ResolutionRing::new(ResVariant::Plain, fgl, m, n)?;
        let (e, a) = (r.e(), r.g("alpha")?);
        for t in ["i", "j", "k"] {
            let tau = r.g(t)?;
            let at = r.g(&format!("alpha_{t}"))?;
            if (&tau - &at) * (&e - &a) != (&e - &(&at * &a)) * (&tau - &e) + (&e - &at) {
                return fail(format!("commutator identity for {t}"));
            }
        }
        let q = Arc::new(QuotientGroup::build_norm_one(m, Variant::PG2, fgl)?);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let x = RingElt::random(&q, n, 8, &mut rng);
            let t = x.tr_sigma()?;
            if t.tr_sigma()? != t || t.sigma()? != t {
                return fail(format!("tr_sigma on {x}"));
            }
        }
    }
    Ok(None)
}

fn c6() -> Outcome {
    for (m, n) in [(4, 3), (5, 3)] {
        if let Some(w) = checks_pass(&["C4", "C5"], m, n)? {
            return fail(w);
        }
    }
    Ok(None)
}

fn c7() -> Outcome {
    checks_pass(&["C6", "C7", "C8"], 5, 3)
}

fn c8() -> Outcome {
    checks_pass(&["C9"], 5, 3)
}

fn c9() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..50 {
        let k = rng.gen_range(1..=3usize);
        let gens: Vec<Vec<u8>> = (0..k).map(|_| (0..4).map(|_| rng.gen_range(0..4u8)).collect()).collect();
        let mut span = BTreeSet::new();
        for c in 0..4usize.pow(k as u32) {
            let mut v = vec![0u8; 4];
            for (g, gen) in gens.iter().enumerate() {
                let coef = ((c >> (2 * g)) & 3) as u8;
                for (x, y) in v.iter_mut().zip(gen) {
                    *x = (*x + coef * y) & 3;
                }
            }
            span.insert(v);
        }
        let howell = Submodule::span("Z4^4", 4, 2, gens.clone())?;
        for x in 0..256u32 {
            let v: Vec<u8> = (0..4).map(|i| ((x >> (2 * i)) & 3) as u8).collect();
            if howell.contains(&v)? != span.contains(&v) {
                return fail(format!("membership of {v:?} in span of {gens:?}"));
            }
        }
    }
    Ok(None)
}

fn c10() -> Outcome {
    let run = || -> Result<String> {
        let t = Instant::now();
        let reports = resolution::run_suite(SuiteLevel::Full, Fgl::Honda, morava::quotients::MAX_DEPTH)?;
        if t.elapsed() > Duration::from_secs(600) {
            return Err(morava::MoravaError::Validation("full suite over 10 minutes".into()));
        }
        Ok(serde_json::to_string(&reports).expect("reports serialize"))
    };
    let (a, b) = (run()?, run()?);
    if a != b {
        return fail("suite reports differ between runs");
    }
    if a.contains("\"fail\"") || a.contains("\"inconclusive\"") {
        return fail("full suite has a non-passing report");
    }
    Ok(None)
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("constant identities at N=16", c1, 1),
        ("quaternion and subgroup battery at N=8", c2, 5),
        ("elliptic-to-Honda isomorphism", c3, 5),
        ("quotient integrity at M <= 5", c4, 60),
        ("ring identities at M=5, N=4", c5, 60),
        ("resolution head exactness", c6, 120),
        ("theta and delta2 congruences at M=5, N=3", c7, 300),
        ("dual-map identity at M=5, N=3", c8, 60),
        ("Howell membership vs exhaustive spans", c9, 10),
        // two full-suite runs, each within the 10 minute budget
        ("full suite determinism", c10, 1200),
    ];
    let mut failed = 0;
    for (n, (name, f, budget)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = f();
        let dt = t.elapsed();
        let over = dt > Duration::from_secs(*budget);
        let (ok, detail) = match outcome {
            Ok(None) if !over => (true, String::new()),
            Ok(None) => (false, format!("over budget of {budget} s")),
            Ok(Some(w)) => (false, w),
            Err(e) => (false, format!("error: {e}")),
        };
        if !ok {
            failed += 1;
        }
        let status = if ok { "PASS" } else { "FAIL" };
        let detail = if detail.is_empty() { String::new() } else { format!(" -- {detail}") };
        println!("criterion {:>2} {status} {name} ({:.2?}){detail}", n + 1, dt);
    }
    println!("acceptance: {} of 10 criteria passed", 10 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
