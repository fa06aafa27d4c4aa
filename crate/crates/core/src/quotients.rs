//! Finite quotients S_2/F_{M/2}, their projective and Galois-extended versions, and the
//! norm-one subgroups, with digit normal forms.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::endo::{EndoElt, Fgl};
use crate::error::{MoravaError, Result};
use crate::gtwo::GElt;
use crate::subgroups;
use crate::witt::{mask, WittApprox};

pub const MAX_DEPTH: u32 = 8;
pub const DET_SAMPLES: usize = 50;
const TABLE_CAP: usize = 4096;
const ABSENT: u32 = u32::MAX;

/// g = omega^e (1 + t(a_1) xi)(1 + t(a_2) xi^2) ... (1 + t(a_{M-1}) xi^{M-1}) sigma^flag.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DigitForm {
    pub omega_exp: u8,
    pub digits: Vec<u8>,
    pub flag: u8,
}

fn digit_str(d: u8) -> &'static str {
    ["0", "1", "z", "z+1"][(d & 3) as usize]
}

impl fmt::Display for DigitForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "w^{}[", self.omega_exp)?;
        for (n, d) in self.digits.iter().enumerate() {
            if n > 0 {
                f.write_str(",")?;
            }
            f.write_str(digit_str(*d))?;
        }
        f.write_str("]")?;
        if self.flag == 1 {
            f.write_str("*s")?;
        }
        Ok(())
    }
}

impl FromStr for DigitForm {
    type Err = MoravaError;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || MoravaError::Parse(format!("bad digit form `{s}`"));
        let s = s.trim();
        let (body, flag) = match s.strip_suffix("*s") {
            Some(b) => (b, 1),
            None => (s, 0),
        };
        let rest = body.strip_prefix("w^").ok_or_else(bad)?;
        let open = rest.find('[').ok_or_else(bad)?;
        let omega_exp: u8 = rest[..open].parse().map_err(|_| bad())?;
        if omega_exp > 2 {
            return Err(bad());
        }
        let inner = rest[open + 1..].strip_suffix(']').ok_or_else(bad)?;
        let digits = if inner.is_empty() {
            Vec::new()
        } else {
            inner
                .split(',')
                .map(|d| match d.trim() {
                    "0" => Ok(0),
                    "1" => Ok(1),
                    "z" => Ok(2),
                    "z+1" | "1+z" => Ok(3),
                    _ => Err(bad()),
                })
                .collect::<Result<Vec<u8>>>()?
        };
        Ok(DigitForm { omega_exp, digits, flag })
    }
}

impl DigitForm {
    pub fn depth(&self) -> u32 {
        self.digits.len() as u32 + 1
    }

    fn code(&self) -> usize {
        let m = self.digits.len();
        let mut c = (self.flag as usize * 3 + self.omega_exp as usize) << (2 * m);
        for (n, d) in self.digits.iter().enumerate() {
            c |= (*d as usize) << (2 * n);
        }
        c
    }

    fn from_code(mut c: usize, m: u32) -> Self {
        let digits = (0..m - 1)
            .map(|_| {
                let d = (c & 3) as u8;
                c >>= 2;
                d
            })
            .collect();
        DigitForm { omega_exp: (c % 3) as u8, digits, flag: (c / 3) as u8 }
    }
}

/// Working precision for depth M: digits need 2^ceil(M/2); two guard bits on top.
pub fn working_prec(m: u32) -> u32 {
    m.div_ceil(2) + 2
}

/// Modulus exponent d(M) for which det is constant on F_{M/2}-cosets.
pub fn det_exponent(m: u32) -> u32 {
    m.div_ceil(2)
}

/// The factors 1 + t(d) xi^i and their inverses, at a fixed precision.
struct Peeler {
    fgl: Fgl,
    prec: u32,
    factor: Vec<[EndoElt; 4]>,
    inverse: Vec<[EndoElt; 4]>,
}

impl Peeler {
    fn new(fgl: Fgl, m: u32, prec: u32) -> Self {
        let mut factor = Vec::new();
        let mut inverse = Vec::new();
        let one = EndoElt::one(fgl, prec);
        factor.push([one; 4]);
        inverse.push([one; 4]);
        for i in 1..m {
            let half = i / 2;
            // (2u)^half
            let pow = WittApprox::from_int(fgl.u(), prec).pow(half as u64).scale(1u64 << half.min(63));
            let mut f = [one; 4];
            let mut g = [one; 4];
            for d in 1..4u8 {
                let c = WittApprox::teichmuller(d, prec).mul_unchecked(&pow);
                let x = if i % 2 == 0 {
                    EndoElt::from_parts(WittApprox::one(prec).add_unchecked(&c), WittApprox::zero(prec), fgl)
                } else {
                    EndoElt::from_parts(WittApprox::one(prec), c, fgl)
                };
                f[d as usize] = x;
                g[d as usize] = x.inv_unchecked();
            }
            factor.push(f);
            inverse.push(g);
        }
        Peeler { fgl, prec, factor, inverse }
    }

    fn form(&self, g: &GElt, m: u32) -> Result<DigitForm> {
        if g.fgl() != self.fgl {
            return Err(MoravaError::TagMismatch);
        }
        if g.prec() < self.prec {
            return Err(MoravaError::InsufficientPrecision { needed: self.prec, have: g.prec() });
        }
        let u = g.unit().reduce(self.prec)?;
        if !u.is_unit() {
            return Err(MoravaError::NotAUnit);
        }
        let omega_exp = match u.a().residue_f4() {
            1 => 0,
            2 => 1,
            _ => 2,
        };
        // omega^-e = omega^(3-e)
        let w = WittApprox::zeta(self.prec).pow(((3 - omega_exp) % 3) as u64);
        let mut x = EndoElt::scalar(w, self.fgl).mul_unchecked(&u);
        let mut digits = Vec::with_capacity(m as usize - 1);
        for i in 1..m {
            let half = i / 2;
            let d = if i % 2 == 0 {
                x.a().sub_unchecked(&WittApprox::one(self.prec)).shr(half).residue_f4()
            } else {
                x.b().shr(half).residue_f4()
            };
            if d != 0 {
                x = self.inverse[i as usize][d as usize].mul_unchecked(&x);
            }
            digits.push(d);
        }
        Ok(DigitForm { omega_exp, digits, flag: g.flag() })
    }

    fn reconstruct(&self, df: &DigitForm) -> GElt {
        let w = WittApprox::zeta(self.prec).pow(df.omega_exp as u64);
        let mut x = EndoElt::scalar(w, self.fgl);
        for (n, d) in df.digits.iter().enumerate() {
            if *d != 0 {
                x = x.mul_unchecked(&self.factor[n + 1][*d as usize]);
            }
        }
        GElt::from_parts(x, df.flag)
    }
}

/// Digit normal form of g modulo F_{M/2}, without sign canonicalization.
pub fn normal_form(g: &GElt, m: u32) -> Result<DigitForm> {
    if !(1..=MAX_DEPTH).contains(&m) {
        return Err(MoravaError::DepthOutOfRange(m));
    }
    Peeler::new(g.fgl(), m, working_prec(m)).form(g, m)
}

/// Representative of a digit form at the working precision for its depth.
pub fn reconstruct(df: &DigitForm, fgl: Fgl) -> Result<GElt> {
    let m = df.depth();
    if m > MAX_DEPTH {
        return Err(MoravaError::DepthOutOfRange(m));
    }
    Ok(Peeler::new(fgl, m, working_prec(m)).reconstruct(df))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Variant {
    S2,
    PS2,
    G2,
    PG2,
}

impl Variant {
    pub const ALL: [Variant; 4] = [Variant::S2, Variant::PS2, Variant::G2, Variant::PG2];

    pub fn is_projective(self) -> bool {
        matches!(self, Variant::PS2 | Variant::PG2)
    }

    pub fn has_galois(self) -> bool {
        matches!(self, Variant::G2 | Variant::PG2)
    }
}

impl FromStr for Variant {
    type Err = MoravaError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "S2" => Ok(Variant::S2),
            "PS2" => Ok(Variant::PS2),
            "G2" => Ok(Variant::G2),
            "PG2" => Ok(Variant::PG2),
            _ => Err(MoravaError::UnknownName(s.to_string())),
        }
    }
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Identifies a quotient; `norm_one` restricts to the image of the norm-one subgroup.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Descriptor {
    pub variant: Variant,
    #[serde(rename = "M")]
    pub m: u32,
    pub fgl: Fgl,
    pub norm_one: bool,
}

impl fmt::Display for Descriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{} M={} {}", self.variant, if self.norm_one { "^1" } else { "" }, self.m, self.fgl)
    }
}

/// A set of element ids, usually a subgroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subset {
    pub name: String,
    ids: Vec<u32>,
    mask: Vec<bool>,
}

impl Subset {
    pub fn from_ids(name: &str, size: usize, mut ids: Vec<u32>) -> Self {
        ids.sort_unstable();
        ids.dedup();
        let mut mask = vec![false; size];
        for &i in &ids {
            mask[i as usize] = true;
        }
        Subset { name: name.to_string(), ids, mask }
    }

    pub fn ids(&self) -> &[u32] {
        &self.ids
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn contains(&self, id: u32) -> bool {
        self.mask.get(id as usize).copied().unwrap_or(false)
    }

    pub fn is_subset_of(&self, o: &Subset) -> bool {
        self.ids.iter().all(|&i| o.contains(i))
    }

    pub fn intersect(&self, o: &Subset, name: &str) -> Subset {
        let ids = self.ids.iter().copied().filter(|&i| o.contains(i)).collect();
        Subset::from_ids(name, self.mask.len(), ids)
    }
}

pub const SUBGROUP_NAMES: [&str; 13] =
    ["K", "K1", "K1_low", "S1", "G24", "G48", "G12", "Q8", "C6", "C8", "G24p", "G48p", "F(i)"];

pub struct QuotientGroup {
    desc: Descriptor,
    prec: u32,
    peeler: Peeler,
    forms: Vec<DigitForm>,
    reps: Vec<GElt>,
    code_to_id: Vec<u32>,
    det: Vec<u64>,
    inverse: Vec<u32>,
    identity: u32,
    rows: Vec<OnceLock<Vec<u32>>>,
}

impl fmt::Debug for QuotientGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuotientGroup({}, {} elements)", self.desc, self.len())
    }
}

impl QuotientGroup {
    pub fn build(m: u32, variant: Variant, fgl: Fgl) -> Result<Self> {
        Self::from_descriptor(Descriptor { variant, m, fgl, norm_one: false })
    }

    pub fn build_norm_one(m: u32, variant: Variant, fgl: Fgl) -> Result<Self> {
        Self::from_descriptor(Descriptor { variant, m, fgl, norm_one: true })
    }

    pub fn from_descriptor(desc: Descriptor) -> Result<Self> {
        let m = desc.m;
        if !(2..=MAX_DEPTH).contains(&m) {
            return Err(MoravaError::DepthOutOfRange(m));
        }
        let prec = working_prec(m);
        let peeler = Peeler::new(desc.fgl, m, prec);
        let dmod = mask(det_exponent(m));
        let flags = if desc.variant.has_galois() { 2 } else { 1 };
        let per_flag = 3usize << (2 * (m - 1));
        let mut q = QuotientGroup {
            desc,
            prec,
            peeler,
            forms: Vec::new(),
            reps: Vec::new(),
            code_to_id: vec![ABSENT; per_flag * flags],
            det: Vec::new(),
            inverse: Vec::new(),
            identity: 0,
            rows: Vec::new(),
        };
        for code in 0..per_flag * flags {
            let df = DigitForm::from_code(code, m);
            if q.projective_sign_flip(&df) {
                continue;
            }
            let rep = q.peeler.reconstruct(&df);
            let det = rep.unit().det() & dmod;
            if desc.norm_one && det != 1 && det != dmod {
                continue;
            }
            q.code_to_id[code] = q.forms.len() as u32;
            q.forms.push(df);
            q.reps.push(rep);
            q.det.push(det);
        }
        q.identity = q.id_of(&GElt::identity(desc.fgl, prec))?;
        q.inverse = (0..q.len()).map(|n| q.id_of(&q.reps[n].inv())).collect::<Result<_>>()?;
        if q.len() <= TABLE_CAP {
            q.rows = (0..q.len()).map(|_| OnceLock::new()).collect();
        }
        q.validate_det(DET_SAMPLES)?;
        Ok(q)
    }

    /// In P-variants the digit a_2 is taken in {0, zeta}; forms with a_2 in {1, zeta+1} are -g.
    fn projective_sign_flip(&self, df: &DigitForm) -> bool {
        self.desc.variant.is_projective() && df.digits.len() >= 2 && df.digits[1] & 1 == 1
    }

    /// Each coset's det residue must be shared by `samples` random representatives g f,
    /// f in F_{M/2}; those representatives must also have the same normal form.
    fn validate_det(&self, samples: usize) -> Result<()> {
        let m = self.desc.m;
        let n = self.prec;
        let dmod = mask(det_exponent(m));
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0000 + m as u64);
        let lo_a = m.div_ceil(2);
        let lo_b = m / 2;
        for id in 0..self.len() {
            for _ in 0..samples {
                let ra = WittApprox::new(rng.gen::<u64>() << lo_a, rng.gen::<u64>() << lo_a, n);
                let rb = WittApprox::new(rng.gen::<u64>() << lo_b, rng.gen::<u64>() << lo_b, n);
                let f = EndoElt::from_parts(WittApprox::one(n).add_unchecked(&ra), rb, self.desc.fgl);
                let g = self.reps[id].mul_unchecked(&GElt::from_parts(f, 0));
                if g.unit().det() & dmod != self.det[id] {
                    return Err(MoravaError::Validation(format!(
                        "det residue not constant on the coset of {}",
                        self.forms[id]
                    )));
                }
                if self.id_of(&g)? != id as u32 {
                    return Err(MoravaError::Validation(format!(
                        "normal form not constant on the coset of {}",
                        self.forms[id]
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn descriptor(&self) -> Descriptor {
        self.desc
    }

    pub fn depth(&self) -> u32 {
        self.desc.m
    }

    pub fn variant(&self) -> Variant {
        self.desc.variant
    }

    pub fn fgl(&self) -> Fgl {
        self.desc.fgl
    }

    pub fn is_norm_one(&self) -> bool {
        self.desc.norm_one
    }

    /// Precision of the stored representatives.
    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn len(&self) -> usize {
        self.forms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forms.is_empty()
    }

    pub fn identity(&self) -> u32 {
        self.identity
    }

    pub fn form(&self, id: u32) -> &DigitForm {
        &self.forms[id as usize]
    }

    pub fn rep(&self, id: u32) -> GElt {
        self.reps[id as usize]
    }

    pub fn flag(&self, id: u32) -> u8 {
        self.forms[id as usize].flag
    }

    /// det of the representative mod 2^d(M).
    pub fn det_residue(&self, id: u32) -> u64 {
        self.det[id as usize]
    }

    /// Normal form with the P-variant sign convention applied.
    pub fn canonical_form(&self, g: &GElt) -> Result<DigitForm> {
        let df = self.peeler.form(g, self.desc.m)?;
        if self.projective_sign_flip(&df) {
            self.peeler.form(&g.neg(), self.desc.m)
        } else {
            Ok(df)
        }
    }

    pub fn id_of_form(&self, df: &DigitForm) -> Result<u32> {
        if df.depth() != self.desc.m || df.omega_exp > 2 || df.flag > 1 || df.digits.iter().any(|d| *d > 3) {
            return Err(MoravaError::NotInGroundSet);
        }
        match self.code_to_id.get(df.code()) {
            Some(&id) if id != ABSENT => Ok(id),
            _ => Err(MoravaError::NotInGroundSet),
        }
    }

    pub fn id_of(&self, g: &GElt) -> Result<u32> {
        if g.flag() == 1 && !self.desc.variant.has_galois() {
            return Err(MoravaError::NotInGroundSet);
        }
        let df = self.canonical_form(g)?;
        self.id_of_form(&df)
    }

    pub fn named_id(&self, name: &str) -> Result<u32> {
        self.id_of(&GElt::named(name, self.desc.fgl, self.prec.max(4))?)
    }

    fn compute_mul(&self, a: u32, b: u32) -> u32 {
        let g = self.reps[a as usize].mul_unchecked(&self.reps[b as usize]);
        self.id_of(&g).expect("quotient is closed under products")
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        match self.rows.get(a as usize) {
            Some(row) => {
                row.get_or_init(|| (0..self.len() as u32).map(|b| self.compute_mul(a, b)).collect())[b as usize]
            }
            None => self.compute_mul(a, b),
        }
    }

    pub fn inv(&self, a: u32) -> u32 {
        self.inverse[a as usize]
    }

    /// g x g^-1 for g in G_2 (not necessarily in the ground set, e.g. pi).
    pub fn conj_by(&self, g: &GElt, x: u32) -> Result<u32> {
        let g = g.reduce(self.prec)?;
        self.id_of(&g.conj(&self.reps[x as usize])?)
    }

    pub fn conj(&self, g: u32, x: u32) -> u32 {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn all(&self) -> Subset {
        Subset::from_ids("all", self.len(), (0..self.len() as u32).collect())
    }

    pub fn subset(&self, name: &str, ids: Vec<u32>) -> Subset {
        Subset::from_ids(name, self.len(), ids)
    }

    /// Subgroup generated by the given ids.
    pub fn closure(&self, name: &str, gens: &[u32]) -> Subset {
        let mut seen = vec![false; self.len()];
        let mut out = vec![self.identity];
        seen[self.identity as usize] = true;
        let mut head = 0;
        while head < out.len() {
            let x = out[head];
            head += 1;
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    out.push(y);
                }
            }
        }
        self.subset(name, out)
    }

    pub fn is_subgroup(&self, s: &Subset) -> bool {
        s.contains(self.identity)
            && s.ids().iter().all(|&a| s.contains(self.inv(a)) && s.ids().iter().all(|&b| s.contains(self.mul(a, b))))
    }

    /// Whether g s g^-1 lies in s for every g in `by`; the first failing g otherwise.
    pub fn normalizer_witness(&self, s: &Subset, by: &Subset) -> Option<u32> {
        by.ids().iter().copied().find(|&g| s.ids().iter().any(|&x| !s.contains(self.conj(g, x))))
    }

    /// A generating set of s, taken greedily in id order.
    pub fn generating_set(&self, s: &Subset) -> Vec<u32> {
        let mut gens = Vec::new();
        let mut cur = self.closure("", &gens);
        for &x in s.ids() {
            if !cur.contains(x) {
                gens.push(x);
                cur = self.closure("", &gens);
            }
        }
        gens
    }

    /// {q : det(q) = +-1 mod 2^d(M)}.
    pub fn norm_one(&self) -> Subset {
        let dmod = mask(det_exponent(self.desc.m));
        let ids =
            (0..self.len() as u32).filter(|&n| self.det[n as usize] == 1 || self.det[n as usize] == dmod).collect();
        self.subset("norm_one", ids)
    }

    /// Image of F_{i/2}: flag 0, omega exponent 0, first i-1 digits zero.
    pub fn filtration(&self, i: u32) -> Result<Subset> {
        if i < 1 || i > self.desc.m {
            return Err(MoravaError::DepthOutOfRange(i));
        }
        let ids = (0..self.len() as u32)
            .filter(|&n| {
                let f = &self.forms[n as usize];
                f.flag == 0 && f.omega_exp == 0 && f.digits[..(i - 1) as usize].iter().all(|d| *d == 0)
            })
            .collect();
        Ok(self.subset(&format!("F({i})"), ids))
    }

    /// Image of a finite subgroup of G_2.
    pub fn image_of(&self, t: &subgroups::SubgroupTable) -> Result<Subset> {
        let ids = t
            .elements
            .iter()
            .map(|g| {
                if g.flag() == 1 && !self.desc.variant.has_galois() {
                    Err(MoravaError::VariantMismatch(format!("{} has Galois elements", t.name)))
                } else {
                    self.id_of(g)
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(self.subset(&t.name, ids))
    }

    /// Norm-one digit generators 1 + t(d) xi^i with i >= `from`.
    fn digit_generators(&self, from: u32) -> Vec<u32> {
        let m = self.desc.m;
        let mut out = Vec::new();
        for i in from..m {
            for d in 1..4u8 {
                let mut digits = vec![0; (m - 1) as usize];
                digits[(i - 1) as usize] = d;
                let g = self.peeler.reconstruct(&DigitForm { omega_exp: 0, digits, flag: 0 });
                if let Ok(id) = self.id_of(&g) {
                    out.push(id);
                }
            }
        }
        out
    }

    pub fn subgroup_image(&self, name: &str) -> Result<Subset> {
        if let Some(i) = name.strip_prefix("F(").and_then(|r| r.strip_suffix(')')) {
            let i: u32 = i.parse().map_err(|_| MoravaError::UnknownName(name.to_string()))?;
            return self.filtration(i);
        }
        let fgl = self.desc.fgl;
        match name {
            "K" => {
                let mut gens = self.filtration(3.min(self.desc.m))?.ids().to_vec();
                gens.push(self.named_id("alpha")?);
                Ok(self.closure("K", &gens))
            }
            "K1" => Ok(self.subgroup_image("K")?.intersect(&self.norm_one(), "K1")),
            "K1_low" => {
                let mut gens = vec![];
                for n in ["alpha", "alpha_i", "alpha_j", "alpha_k"] {
                    gens.push(self.named_id(n)?);
                }
                let norm = self.norm_one();
                gens.extend(self.digit_generators(3).into_iter().filter(|&g| norm.contains(g)));
                Ok(self.closure("K1_low", &gens))
            }
            "S1" => Ok(self.filtration(1)?.intersect(&self.norm_one(), "S1")),
            "G24" | "G48" | "G12" | "Q8" | "C6" | "C8" | "G24p" | "G48p" => {
                let t = subgroups::standard(name, fgl, self.prec.max(8))?;
                self.image_of(&t)
            }
            _ => Err(MoravaError::UnknownName(name.to_string())),
        }
    }

    /// Left coset representatives of h, first occurrence in id order.
    pub fn left_cosets(&self, h: &Subset) -> (Vec<u32>, Vec<u32>) {
        let mut coset_of = vec![ABSENT; self.len()];
        let mut reps = Vec::new();
        for x in 0..self.len() as u32 {
            if coset_of[x as usize] != ABSENT {
                continue;
            }
            let c = reps.len() as u32;
            reps.push(x);
            for &y in h.ids() {
                coset_of[self.mul(x, y) as usize] = c;
            }
        }
        (reps, coset_of)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn df(e: u8, digits: &[u8]) -> DigitForm {
        DigitForm { omega_exp: e, digits: digits.to_vec(), flag: 0 }
    }

    #[test]
    fn small_normal_forms() {
        for fgl in Fgl::ALL {
            let g = |n: &str| GElt::named(n, fgl, 16).unwrap();
            assert_eq!(normal_form(&g("omega"), 3).unwrap(), df(1, &[0, 0]));
            assert_eq!(normal_form(&g("-1"), 3).unwrap(), df(0, &[0, 1]));
            assert_eq!(normal_form(&g("alpha"), 3).unwrap(), df(0, &[0, 2]));
            assert_eq!(normal_form(&g("sigma"), 3).unwrap().flag, 1);
        }
    }

    #[test]
    fn digit_form_strings() {
        let f = DigitForm { omega_exp: 2, digits: vec![0, 1, 2, 3], flag: 1 };
        assert_eq!(f.to_string(), "w^2[0,1,z,z+1]*s");
        assert_eq!(f.to_string().parse::<DigitForm>().unwrap(), f);
        assert!("w^3[0]".parse::<DigitForm>().is_err());
        assert!("w^0[0,y]".parse::<DigitForm>().is_err());
    }

    #[test]
    fn sizes() {
        let fgl = Fgl::Honda;
        assert_eq!(QuotientGroup::build(3, Variant::S2, fgl).unwrap().len(), 48);
        assert_eq!(QuotientGroup::build(5, Variant::S2, fgl).unwrap().len(), 768);
        assert_eq!(QuotientGroup::build(5, Variant::PS2, fgl).unwrap().len(), 384);
        assert_eq!(QuotientGroup::build(5, Variant::PG2, fgl).unwrap().len(), 768);
        assert_eq!(QuotientGroup::build_norm_one(5, Variant::PS2, fgl).unwrap().len(), 192);
        assert_eq!(QuotientGroup::build_norm_one(5, Variant::PG2, fgl).unwrap().len(), 384);
        assert_eq!(QuotientGroup::build(2, Variant::PS2, fgl).unwrap().len(), 12);
        assert!(QuotientGroup::build(9, Variant::S2, fgl).is_err());
    }

    #[test]
    fn norm_one_examples() {
        let fgl = Fgl::Elliptic;
        let q2 = QuotientGroup::build(2, Variant::S2, fgl).unwrap();
        assert_eq!(q2.norm_one().len(), q2.len());
        let q = QuotientGroup::build(5, Variant::S2, fgl).unwrap();
        let n1 = q.norm_one();
        assert!(q.is_subgroup(&n1));
        assert!(n1.contains(q.named_id("alpha").unwrap()));
        assert!(!n1.contains(q.named_id("pi").unwrap()));
        // det(F_{4/2}) = 1 + 4Z_2 covers 5 = det(pi) + 2 mod 8 only up to sign, so at M = 4
        // every class meets the norm-one group.
        let q4 = QuotientGroup::build(4, Variant::S2, fgl).unwrap();
        assert_eq!(q4.norm_one().len(), q4.len());
    }

    #[test]
    fn k_images_at_depth_five() {
        for fgl in Fgl::ALL {
            let q = QuotientGroup::build(5, Variant::S2, fgl).unwrap();
            let k = q.subgroup_image("K").unwrap();
            assert_eq!(k.len(), 32);
            let minus = q.named_id("-1").unwrap();
            assert!(!k.contains(minus));
            let mut pm = k.ids().to_vec();
            pm.extend(k.ids().iter().map(|&x| q.mul(minus, x)));
            assert_eq!(q.subset("pmK", pm).ids(), q.filtration(2).unwrap().ids());
            let k1 = q.subgroup_image("K1").unwrap();
            assert_eq!(k1.len() * 24, q.norm_one().len());
            assert_eq!(q.subgroup_image("K1_low").unwrap().ids(), k1.ids());
        }
    }
}
