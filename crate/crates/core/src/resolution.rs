//! The differentials of the duality resolution over the finite quotients, and the checks.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::endo::{EndoElt, Fgl};
use crate::error::{MoravaError, Result};
use crate::groupring::{act, CosetModule, ModuleElt, RingElt};
use crate::gtwo::GElt;
use crate::ideals::{kernel, RingIdeals, Submodule};
use crate::quotients::{Descriptor, QuotientGroup, Variant};
use crate::subgroups;
use crate::witt::WittApprox;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ResVariant {
    Plain,
    Phi,
}

impl fmt::Display for ResVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ResVariant::Plain => "plain",
            ResVariant::Phi => "phi",
        })
    }
}

impl FromStr for ResVariant {
    type Err = MoravaError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plain" => Ok(ResVariant::Plain),
            "phi" => Ok(ResVariant::Phi),
            _ => Err(MoravaError::UnknownName(s.to_string())),
        }
    }
}

/// The ring W[PS_2^1] (plain) or W_phi[PG_2^1] (phi) at depth M, coefficients mod 2^N,
/// with the coset modules carrying e_0, e_1 = e_2 and e_3.
pub struct ResolutionRing {
    pub variant: ResVariant,
    q: Arc<QuotientGroup>,
    prec: u32,
    e0: Arc<CosetModule>,
    e1: Arc<CosetModule>,
    e3: Arc<CosetModule>,
    ideals: Option<RingIdeals>,
}

impl fmt::Debug for ResolutionRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ResolutionRing({}, {:?}, N={})", self.variant, self.q, self.prec)
    }
}

impl ResolutionRing {
    pub fn new(variant: ResVariant, fgl: Fgl, m: u32, prec: u32) -> Result<Self> {
        let qv = match variant {
            ResVariant::Plain => Variant::PS2,
            ResVariant::Phi => Variant::PG2,
        };
        let q = Arc::new(QuotientGroup::from_descriptor(Descriptor { variant: qv, m, fgl, norm_one: true })?);
        Self::with_quotient(variant, q, prec)
    }

    pub fn with_quotient(variant: ResVariant, q: Arc<QuotientGroup>, prec: u32) -> Result<Self> {
        let (h0, h1, h3) = match variant {
            ResVariant::Plain => ("G24", "C6", "G24p"),
            ResVariant::Phi => ("G48", "G12", "G48p"),
        };
        let module = |name: &str| -> Result<Arc<CosetModule>> {
            let mut h = q.subgroup_image(name)?;
            h.name = format!("P{name}");
            CosetModule::new(&q, h)
        };
        let ideals = if prec <= crate::ideals::MAX_PREC && 2 * q.len() <= crate::ideals::MAX_DIM {
            Some(RingIdeals::new(&q, prec)?)
        } else {
            None
        };
        Ok(ResolutionRing { variant, e0: module(h0)?, e1: module(h1)?, e3: module(h3)?, q, prec, ideals })
    }

    pub fn quotient(&self) -> &Arc<QuotientGroup> {
        &self.q
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn ideals(&self) -> Result<&RingIdeals> {
        self.ideals
            .as_ref()
            .ok_or(MoravaError::InsufficientPrecision { needed: self.prec, have: crate::ideals::MAX_PREC })
    }

    /// The coset module of e_p (e_1 and e_2 share one).
    pub fn module(&self, p: u32) -> &Arc<CosetModule> {
        match p {
            0 => &self.e0,
            1 | 2 => &self.e1,
            _ => &self.e3,
        }
    }

    pub fn generator(&self, p: u32) -> ModuleElt {
        self.module(p).generator(self.prec)
    }

    pub fn e(&self) -> RingElt {
        RingElt::one(&self.q, self.prec)
    }

    pub fn int(&self, c: i64) -> RingElt {
        RingElt::from_int(&self.q, c, self.prec)
    }

    pub fn g(&self, name: &str) -> Result<RingElt> {
        RingElt::named(&self.q, name, self.prec)
    }

    fn third(&self) -> WittApprox {
        WittApprox::from_int(3, self.prec).inv().expect("3 is a unit")
    }

    fn need_galois(&self) -> Result<()> {
        if self.variant == ResVariant::Phi {
            Ok(())
        } else {
            Err(MoravaError::VariantMismatch("phi-versions need the Galois ring".into()))
        }
    }

    fn need_depth(&self) -> Result<()> {
        if self.q.depth() < 4 {
            return Err(MoravaError::InsufficientPrecision { needed: 4, have: self.q.depth() });
        }
        Ok(())
    }

    /// e + i + j + k
    pub fn eijk(&self) -> Result<RingElt> {
        Ok(self.e() + self.g("i")? + self.g("j")? + self.g("k")?)
    }

    /// delta1 = e - alpha; delta3 = pi (e+i+j+k)(e - alpha^-1) pi^-1; the phi-versions apply tr_sigma.
    pub fn delta(&self, name: &str) -> Result<RingElt> {
        match name {
            "delta1" => Ok(self.e() - self.g("alpha")?),
            "delta3" => {
                let alpha_inv = RingElt::group(&self.q, self.q.inv(self.q.named_id("alpha")?), self.prec);
                let inner = self.eijk()? * (self.e() - alpha_inv);
                inner.conj_by(&GElt::standard("pi0", self.q.fgl(), self.q.prec())?)
            }
            "delta1_phi" | "delta3_phi" => {
                self.need_galois()?;
                self.delta(name.trim_end_matches("_phi"))?.tr_sigma()
            }
            _ => Err(MoravaError::UnknownName(name.to_string())),
        }
    }

    /// delta3 with pi-conjugation applied factor by factor.
    pub fn delta3_factored(&self) -> Result<RingElt> {
        let pi = GElt::standard("pi0", self.q.fgl(), self.q.prec())?;
        let alpha_inv = RingElt::group(&self.q, self.q.inv(self.q.named_id("alpha")?), self.prec);
        let a = self.eijk()?.conj_by(&pi)?;
        let b = (self.e() - alpha_inv).conj_by(&pi)?;
        a.try_mul(&b)
    }

    fn delta2_core(&self, with_tail: bool) -> Result<RingElt> {
        self.need_depth()?;
        let a = self.g("alpha")?;
        let (ai, aj, ak) = (self.g("alpha_i")?, self.g("alpha_j")?, self.g("alpha_k")?);
        let e = self.e();
        let head = &(&(&e + &a) + &(self.g("i")? + self.g("j")? + self.g("k")?)) - &(&(&ai + &aj) + &ak);
        let aij = &ai * &aj;
        let mut inner = (&e - &ai) * (self.g("j")? - aj.clone()) + (&e - &aij) * (self.g("k")? - ak.clone());
        if with_tail {
            inner = inner + (&e - &(&aij * &ak)) * (&e + &a);
        }
        let tail = inner.tr_c3()?.scale(&self.third());
        let x = head - tail;
        match self.variant {
            ResVariant::Plain => Ok(x),
            ResVariant::Phi => x.tr_sigma(),
        }
    }

    /// The explicit approximation to theta (tr_sigma of it in the phi ring).
    pub fn theta_approx(&self) -> Result<RingElt> {
        self.delta2_core(true)
    }

    /// The approximation to delta2 modulo I (tr_sigma of it in the phi ring).
    pub fn delta2_approx(&self) -> Result<RingElt> {
        self.delta2_core(false)
    }

    /// delta_1 of this variant: e - alpha or tr_sigma(e - alpha).
    pub fn d1(&self) -> Result<RingElt> {
        match self.variant {
            ResVariant::Plain => self.delta("delta1"),
            ResVariant::Phi => self.delta("delta1_phi"),
        }
    }

    pub fn d3(&self) -> Result<RingElt> {
        match self.variant {
            ResVariant::Plain => self.delta("delta3"),
            ResVariant::Phi => self.delta("delta3_phi"),
        }
    }

    pub fn ideal(&self, name: &str) -> Result<Arc<Submodule>> {
        self.ideals()?.standard(name)
    }

    pub fn ideal_sum(&self, a: &str, b: &str) -> Result<Submodule> {
        self.ideal(a)?.sum(&*self.ideal(b)?)
    }

    /// Whether x e_p lies in (ideal) e_p.
    pub fn in_module_image(&self, ideal: &Submodule, x: &RingElt, p: u32) -> Result<bool> {
        let m = self.module(p);
        let img = self.ideals()?.module_image(ideal, m, m.coset_of(self.q.identity()))?;
        let v = act(x, &self.generator(p))?;
        img.contains(&v.to_vector())
    }

    pub fn ring_contains(&self, ideal: &Submodule, x: &RingElt) -> Result<bool> {
        self.ideals()?.contains(ideal, x)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportContext {
    pub fgl: Fgl,
    #[serde(rename = "M")]
    pub m: u32,
    #[serde(rename = "N")]
    pub n: u32,
    pub variant: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub check_id: String,
    pub status: Status,
    pub context: ReportContext,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<String>,
}

pub const CHECK_IDS: [&str; 10] = ["C1", "C2", "C3", "C4", "C5", "C6", "C7", "C8", "C9", "C10"];

/// Outcome of one condition: None when it holds, Some(witness) otherwise.
type Cond = Option<String>;

fn cond(ok: bool, what: impl FnOnce() -> String) -> Cond {
    if ok {
        None
    } else {
        Some(what())
    }
}

fn first_failure(conds: Vec<Cond>) -> Cond {
    conds.into_iter().flatten().next()
}

fn variants_for(id: &str) -> &'static [ResVariant] {
    match id {
        "C3" | "C8" => &[ResVariant::Phi],
        "C4" | "C5" | "C6" | "C7" | "C9" | "C10" => &[ResVariant::Plain, ResVariant::Phi],
        _ => &[],
    }
}

/// Runs one check; precondition failures (depth, precision, caps) give `inconclusive`.
pub fn run_check(id: &str, fgl: Fgl, m: u32, n: u32) -> Result<CheckReport> {
    if !CHECK_IDS.contains(&id) {
        return Err(MoravaError::UnknownName(id.to_string()));
    }
    let vs = variants_for(id);
    let variant = if vs.is_empty() {
        "group".to_string()
    } else {
        vs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("+")
    };
    let context = ReportContext { fgl, m, n, variant };
    let outcome = match id {
        "C1" => check_constants(fgl, n),
        "C2" => check_battery(fgl, n),
        _ => (|| {
            let mut conds = Vec::new();
            for v in vs {
                let r = ResolutionRing::new(*v, fgl, m, n)?;
                conds.push(run_ring_check(id, &r)?);
            }
            Ok(first_failure(conds))
        })(),
    };
    let (status, witness) = match outcome {
        Ok(None) => (Status::Pass, None),
        Ok(Some(w)) => (Status::Fail, Some(w)),
        Err(
            e @ (MoravaError::InsufficientPrecision { .. }
            | MoravaError::DimensionCap(_)
            | MoravaError::DepthOutOfRange(_)),
        ) => (Status::Inconclusive, Some(e.to_string())),
        Err(e) => return Err(e),
    };
    Ok(CheckReport { check_id: id.to_string(), status, context, witness })
}

pub fn run_ring_check(id: &str, r: &ResolutionRing) -> Result<Cond> {
    let tag = |s: &str| format!("{} [{}]", s, r.variant);
    match id {
        "C3" => check_taucom(r).map(|c| c.map(|w| tag(&w))),
        "C4" => check_augmentation(r).map(|c| c.map(|w| tag(&w))),
        "C5" => check_head_span(r).map(|c| c.map(|w| tag(&w))),
        "C6" => check_theta(r).map(|c| c.map(|w| tag(&w))),
        "C7" => check_composites(r).map(|c| c.map(|w| tag(&w))),
        "C8" => check_delta1_sigma(r).map(|c| c.map(|w| tag(&w))),
        "C9" => check_dual(r).map(|c| c.map(|w| tag(&w))),
        "C10" => check_well_defined(r).map(|c| c.map(|w| tag(&w))),
        _ => Err(MoravaError::UnknownName(id.to_string())),
    }
}

/// C1: alpha alpha^sigma = -1, pi^2 = -3, pi pi^sigma = 3, sqrt(-7) = 5 mod 8, det(pi) = 3.
pub fn check_constants(fgl: Fgl, n: u32) -> Result<Cond> {
    let alpha = WittApprox::constant("alpha", n)?;
    let pi = WittApprox::constant("pi", n)?;
    let s = WittApprox::constant("sqrt_m7", n)?;
    let det_pi = EndoElt::standard("pi", fgl, n)?.det();
    Ok(first_failure(vec![
        cond(alpha * alpha.frobenius() == WittApprox::from_int(-1, n), || "alpha alpha^sigma != -1".into()),
        cond(pi * pi == WittApprox::from_int(-3, n), || "pi^2 != -3".into()),
        cond(pi * pi.frobenius() == WittApprox::from_int(3, n), || "pi pi^sigma != 3".into()),
        cond((s.a0() & 7) == 5 && s.a1() == 0, || format!("sqrt(-7) = {s:?}")),
        cond(det_pi == 3, || format!("det(pi) = {det_pi}")),
    ]))
}

/// Order profile of the symmetric group on `k` letters, by enumerating permutations.
pub fn symmetric_profile(k: usize) -> BTreeMap<u64, usize> {
    fn perms(k: usize) -> Vec<Vec<usize>> {
        if k == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for p in perms(k - 1) {
            for pos in 0..k {
                let mut q = p.clone();
                q.insert(pos, k - 1);
                out.push(q);
            }
        }
        out
    }
    let mut prof = BTreeMap::new();
    for p in perms(k) {
        let mut x: Vec<usize> = (0..k).collect();
        let mut ord = 0u64;
        loop {
            x = x.iter().map(|&i| p[i]).collect();
            ord += 1;
            if x.iter().enumerate().all(|(i, &v)| i == v) {
                break;
            }
        }
        *prof.entry(ord).or_insert(0) += 1;
    }
    prof
}

/// C2: quaternion, omega and bracket identities, subgroup orders, profiles, transversal.
pub fn check_battery(fgl: Fgl, n: u32) -> Result<Cond> {
    let g = |s: &str| GElt::named(s, fgl, n);
    let (e, m1, i, j, k, w) = (g("e")?, g("-1")?, g("i")?, g("j")?, g("k")?, g("omega")?);
    let mut conds = vec![
        cond(i * i == m1 && j * j == m1 && k * k == m1, || "i^2 = j^2 = k^2 = -1 fails".into()),
        cond(i * j == k && j * k == i && k * i == j, || "ij = k, jk = i, ki = j fails".into()),
        cond(j * i == k.neg() && k * j == i.neg() && i * k == j.neg(), || "anticommutation fails".into()),
    ];
    let one = EndoElt::one(fgl, n);
    let sum = one + i.unit() + j.unit() + k.unit();
    let two_w = w.unit().scale(&WittApprox::from_int(-2, n));
    conds.push(cond(sum == two_w, || "omega != -(1+i+j+k)/2".into()));
    let wi = w.inv();
    conds.push(cond(w * i * wi == j && w * j * wi == k && w * k * wi == i, || "omega conjugation".into()));
    let b = g("bracket_1pi")?;
    let expect = if fgl == Fgl::Honda { i } else { i.neg() };
    conds.push(cond(b * b == expect, || format!("[1+i]^2 = {:?}", b * b)));
    let jmk = g("bracket_jmk")?;
    conds.push(cond(jmk == j * b, || "[j-k] != j[1+i]".into()));
    let a = g("alpha")?;
    let a_sigma = GElt::scalar(WittApprox::alpha(n).frobenius(), fgl)?;
    conds.push(cond(jmk.conj(&a)? == a_sigma, || "[j-k] alpha [j-k]^-1 != alpha^sigma".into()));
    for (name, size) in [("Q8", 8), ("C6", 6), ("C8", 8), ("G24", 24), ("G12", 12), ("G48", 48)] {
        let t = subgroups::standard(name, fgl, n)?;
        conds.push(cond(t.len() == size, || format!("|{name}| = {}", t.len())));
    }
    let p48 = subgroups::standard("PG48", fgl, n)?.order_profile();
    conds.push(cond(p48 == symmetric_profile(4), || format!("PG48 profile {p48:?}")));
    let p12 = subgroups::standard("PG12", fgl, n)?.order_profile();
    conds.push(cond(p12 == symmetric_profile(3), || format!("PG12 profile {p12:?}")));
    let reps = subgroups::transversal(&subgroups::standard("G48", fgl, n)?, &subgroups::standard("G12", fgl, n)?)?;
    conds.push(cond(reps == vec![e, i, j, k], || format!("G48/G12 transversal {reps:?}")));
    Ok(first_failure(conds))
}

/// C3: tau tr_sigma-core(e - alpha) = tr_sigma-core(e - alpha) tau for every tau in G12.
pub fn check_taucom(r: &ResolutionRing) -> Result<Cond> {
    r.need_galois()?;
    let x = r.d1()?.neg();
    let q = r.quotient();
    for t in &subgroups::standard("G12", q.fgl(), q.prec().max(4))?.elements {
        let tau = RingElt::from_gelt(q, t, r.prec())?;
        if &tau * &x != &x * &tau {
            return Ok(Some(format!("tau = {}", q.form(q.id_of(t)?))));
        }
    }
    Ok(None)
}

/// C4: epsilon(g w delta_1 e_0) = 0 for every group element g and w in {1, zeta}.
pub fn check_augmentation(r: &ResolutionRing) -> Result<Cond> {
    let d1e0 = act(&r.d1()?, &r.generator(0))?;
    let q = r.quotient();
    for g in 0..q.len() as u32 {
        for w in [WittApprox::one(r.prec()), WittApprox::zeta(r.prec())] {
            let x = RingElt::term(q, g, w);
            let v = act(&x, &d1e0)?;
            if !v.augment().is_zero() {
                return Ok(Some(format!("epsilon({} . d1 e0) != 0", q.form(g))));
            }
        }
    }
    Ok(None)
}

/// Kernel of the module augmentation, from the Howell kernel of its matrix.
pub fn augmentation_kernel(m: &CosetModule, prec: u32) -> Result<Submodule> {
    let d = 2 * m.num_cosets();
    let images: Vec<Vec<u8>> = (0..d).map(|i| if i % 2 == 0 { vec![1, 0] } else { vec![0, 1] }).collect();
    kernel(&images, 2, prec)
}

/// C5: the span of {w g delta_1 e_0} is the augmentation kernel, basis for basis.
pub fn check_head_span(r: &ResolutionRing) -> Result<Cond> {
    r.ideals()?;
    let q = r.quotient();
    let d1e0 = act(&r.d1()?, &r.generator(0))?;
    let mut vs = Vec::new();
    for g in 0..q.len() as u32 {
        for w in [WittApprox::one(r.prec()), WittApprox::zeta(r.prec())] {
            vs.push(act(&RingElt::term(q, g, w), &d1e0)?.to_vector());
        }
    }
    let m = r.module(0);
    let span = Submodule::span("M1", 2 * m.num_cosets(), r.prec(), vs)?;
    let ker = augmentation_kernel(m, r.prec())?;
    Ok(cond(span.same_span(&ker), || format!("span has 2^{} elements, kernel 2^{}", span.log_size(), ker.log_size())))
}

/// C6: theta conditions. Plain: (3) mod (4, IPK^1), theta = (1-i)(1-j) mod (2, IPK^1),
/// (2) mod Itheta and (1) for PC6 mod Itheta. Phi: the same for tr_sigma(theta), with Itheta
/// enlarged by (4IPK^1, 2(IPS^1)^2 IPK^1, (IPK^1)^2) in (2).
pub fn check_theta(r: &ResolutionRing) -> Result<Cond> {
    let theta = r.theta_approx()?;
    let target = r.int(3) + r.g("i")? + r.g("j")? + r.g("k")?;
    let mut conds = vec![cond(r.ring_contains(&*r.ideal("I4K")?, &(&theta - &target))?, || {
        "theta != 3+i+j+k mod (4, IPK^1)".into()
    })];
    if r.variant == ResVariant::Plain {
        let low = (r.e() - r.g("i")?) * (r.e() - r.g("j")?);
        conds.push(cond(r.ring_contains(&*r.ideal("I2K")?, &(&theta - &low))?, || {
            "theta != (1-i)(1-j) mod (2, IPK^1)".into()
        }));
    }
    let itheta = r.ideal("Itheta")?;
    let fine = match r.variant {
        ResVariant::Plain => (*itheta).clone(),
        ResVariant::Phi => r.ideal_sum("Itheta", "Iphi")?,
    };
    let x = &theta * &r.d1()?;
    conds.push(cond(r.in_module_image(&fine, &x, 0)?, || "theta delta1 e0 not in Itheta e0".into()));
    let q = r.quotient();
    for &t in q.subgroup_image("C6")?.ids() {
        let tau = RingElt::group(q, t, r.prec());
        let c = &(&tau * &theta) - &(&theta * &tau);
        if !r.ring_contains(&itheta, &c)? {
            conds.push(Some(format!("theta does not commute with {} mod Itheta", q.form(t))));
            break;
        }
    }
    Ok(first_failure(conds))
}

/// For each tau in PG12: whether tau tr_sigma(theta) - tr_sigma(theta) tau lies in
/// Itheta + Iphi, and whether it lies in I. Diagnostic only.
pub fn galois_commutation_defect(r: &ResolutionRing) -> Result<Vec<(String, bool, bool)>> {
    r.need_galois()?;
    let theta = r.theta_approx()?;
    let fine = r.ideal_sum("Itheta", "Iphi")?;
    let i = r.ideal("I")?;
    let q = r.quotient();
    let mut out = Vec::new();
    for &t in q.subgroup_image("G12")?.ids() {
        let tau = RingElt::group(q, t, r.prec());
        let c = &(&tau * &theta) - &(&theta * &tau);
        out.push((q.form(t).to_string(), r.ring_contains(&fine, &c)?, r.ring_contains(&i, &c)?));
    }
    Ok(out)
}

/// C7: delta2 e1 = (alpha+i+j+k) e1 mod J, delta2 = theta mod I, and the composites vanish mod I.
pub fn check_composites(r: &ResolutionRing) -> Result<Cond> {
    let d2 = r.delta2_approx()?;
    let theta = r.theta_approx()?;
    let j = r.ideal("J")?;
    let i = r.ideal("I")?;
    let mut simple = r.g("alpha")? + r.g("i")? + r.g("j")? + r.g("k")?;
    if r.variant == ResVariant::Phi {
        simple = simple.tr_sigma()?;
    }
    Ok(first_failure(vec![
        cond(r.in_module_image(&j, &(&d2 - &simple), 1)?, || "delta2 e1 != (alpha+i+j+k) e1 mod J".into()),
        cond(r.ring_contains(&i, &(&d2 - &theta))?, || "delta2 != theta mod I".into()),
        cond(r.in_module_image(&i, &(&d2 * &r.d1()?), 0)?, || "delta2 delta1 e0 not in I e0".into()),
        cond(r.in_module_image(&i, &(&r.d3()? * &d2), 1)?, || "delta3 delta2 e1 not in I e1".into()),
        cond(i.is_subset_of(&j)?, || "I not in J".into()),
        cond(r.ideal("Itheta")?.is_subset_of(&i)?, || "Itheta not in I".into()),
    ]))
}

/// C8: delta1 + delta1^sigma in (IPK^1)^2.
pub fn check_delta1_sigma(r: &ResolutionRing) -> Result<Cond> {
    r.need_galois()?;
    let d1 = r.delta("delta1")?;
    let x = &d1 + &d1.sigma()?;
    Ok(cond(r.ring_contains(&*r.ideal("IK2")?, &x)?, || format!("delta1 + delta1^sigma = {x}")))
}

/// C9: the dual of d1 evaluated through [g]^*(x) = x sum_h h g^-1 against the closed form
/// (e+i+j+k) d(e - alpha^-1) e_1^*; in the plain ring d is the identity, in the phi ring tr_sigma.
pub fn check_dual(r: &ResolutionRing) -> Result<Cond> {
    let q = r.quotient();
    let e = q.identity();
    // d1^*(e0^*)(e1) = e0^*(d1 e0) = d1 . e0^*(e0)
    let lhs = r.module(0).dual(e, &r.d1()?)?;
    let alpha_inv = RingElt::group(q, q.inv(q.named_id("alpha")?), r.prec());
    let mut y = r.e() - alpha_inv;
    if r.variant == ResVariant::Phi {
        y = y.tr_sigma()?;
    }
    let y = r.eijk()? * y;
    // (y f)(x) = f(x) anti(y), and e1^*(e1) = sum over the subgroup of e1.
    let rhs = r.module(1).dual(e, &r.e())? * y.anti();
    Ok(cond(lhs == rhs, || format!("difference {}", &lhs - &rhs)))
}

/// C10: tau d1 e0 = d1 e0 for every tau in the stabilizer of e1.
pub fn check_well_defined(r: &ResolutionRing) -> Result<Cond> {
    let q = r.quotient();
    let d1e0 = act(&r.d1()?, &r.generator(0))?;
    for &t in r.module(1).subgroup().ids() {
        let v = act(&RingElt::group(q, t, r.prec()), &d1e0)?;
        if v != d1e0 {
            return Ok(Some(format!("tau = {}", q.form(t))));
        }
    }
    Ok(None)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SuiteLevel {
    Fast,
    Full,
}

impl FromStr for SuiteLevel {
    type Err = MoravaError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fast" => Ok(SuiteLevel::Fast),
            "full" => Ok(SuiteLevel::Full),
            _ => Err(MoravaError::UnknownName(s.to_string())),
        }
    }
}

/// Checks and (M, N) pairs run by a suite, in report order.
pub fn suite_plan(level: SuiteLevel) -> Vec<(&'static str, u32, u32)> {
    match level {
        SuiteLevel::Fast => ["C1", "C2", "C3", "C4", "C10"]
            .into_iter()
            .map(|id| match id {
                "C1" => (id, 4, 16),
                "C2" => (id, 4, 8),
                _ => (id, 4, 3),
            })
            .collect(),
        SuiteLevel::Full => {
            let mut plan: Vec<(&'static str, u32, u32)> = CHECK_IDS
                .into_iter()
                .map(|id| match id {
                    "C1" => (id, 5, 16),
                    "C2" => (id, 5, 8),
                    _ => (id, 5, 4),
                })
                .collect();
            plan.extend(CHECK_IDS[2..].iter().map(|&id| (id, 6, 3)));
            plan
        }
    }
}

pub fn run_suite(level: SuiteLevel, fgl: Fgl, max_depth: u32) -> Result<Vec<CheckReport>> {
    let mut out = Vec::new();
    for (id, m, n) in suite_plan(level) {
        if m > max_depth {
            out.push(CheckReport {
                check_id: id.to_string(),
                status: Status::Inconclusive,
                context: ReportContext { fgl, m, n, variant: String::new() },
                witness: Some(format!("depth {m} above the cap {max_depth}")),
            });
            continue;
        }
        out.push(run_check(id, fgl, m, n)?);
    }
    Ok(out)
}

/// Sizes (log_2) of the kernel of d1: D1 -> D0 and of the image of d2 in D1, as diagnostics.
pub fn exactness_diagnostics(r: &ResolutionRing) -> Result<BTreeMap<String, u32>> {
    let q = r.quotient();
    let m1 = r.module(1);
    let d1e0 = act(&r.d1()?, &r.generator(0))?;
    let images: Vec<Vec<u8>> = (0..m1.num_cosets() as u32)
        .flat_map(|c| {
            let g = m1.rep(c);
            [WittApprox::one(r.prec()), WittApprox::zeta(r.prec())].into_iter().map(move |w| (g, w))
        })
        .map(|(g, w)| act(&RingElt::term(q, g, w), &d1e0).map(|v| v.to_vector()))
        .collect::<Result<_>>()?;
    let ker = kernel(&images, 2 * r.module(0).num_cosets(), r.prec())?;
    let d2e1 = act(&r.delta2_approx()?, &r.generator(1))?;
    let mut vs = Vec::new();
    for g in 0..q.len() as u32 {
        for w in [WittApprox::one(r.prec()), WittApprox::zeta(r.prec())] {
            vs.push(act(&RingElt::term(q, g, w), &d2e1)?.to_vector());
        }
    }
    let img = Submodule::span("im d2", 2 * m1.num_cosets(), r.prec(), vs)?;
    let mut out = BTreeMap::new();
    out.insert("log2 |ker d1|".to_string(), ker.log_size());
    out.insert("log2 |im d2|".to_string(), img.log_size());
    out.insert("log2 |D1|".to_string(), 2 * m1.num_cosets() as u32 * r.prec());
    Ok(out)
}
