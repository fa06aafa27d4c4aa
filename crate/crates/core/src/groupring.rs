//! Galois-twisted group rings W_phi[Q] over finite quotients and the induced modules W↑_H.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{MoravaError, Result};
use crate::gtwo::GElt;
use crate::quotients::{Descriptor, DigitForm, QuotientGroup, Subset};
use crate::witt::{hex_mod, mask, WittApprox};

pub type Coeffs = BTreeMap<u32, WittApprox>;

fn insert_add(c: &mut Coeffs, k: u32, w: WittApprox) {
    if w.is_zero() {
        return;
    }
    let e = c.entry(k).or_insert(WittApprox::zero(w.prec()));
    *e = e.add_unchecked(&w);
    if e.is_zero() {
        c.remove(&k);
    }
}

fn same_quotient(a: &QuotientGroup, b: &QuotientGroup) -> Result<()> {
    if std::ptr::eq(a, b) || a.descriptor() == b.descriptor() {
        Ok(())
    } else {
        Err(MoravaError::VariantMismatch(format!("{} vs {}", a.descriptor(), b.descriptor())))
    }
}

/// sum_g c_g g with coefficients in W mod 2^N.
#[derive(Clone)]
pub struct RingElt {
    q: Arc<QuotientGroup>,
    prec: u32,
    coeffs: Coeffs,
}

impl PartialEq for RingElt {
    fn eq(&self, o: &Self) -> bool {
        self.q.descriptor() == o.q.descriptor() && self.prec == o.prec && self.coeffs == o.coeffs
    }
}

impl Eq for RingElt {}

impl fmt::Debug for RingElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RingElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (n, (id, c)) in self.coeffs.iter().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({}, {}) {}", hex_mod(c.a0(), self.prec), hex_mod(c.a1(), self.prec), self.q.form(*id))?;
        }
        Ok(())
    }
}

/// Serialized ring element: coefficients as [digit form, a0 hex, a1 hex].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingEltJson {
    pub quotient: Descriptor,
    #[serde(rename = "N")]
    pub prec: u32,
    pub coeffs: Vec<(String, String, String)>,
}

impl RingElt {
    pub fn zero(q: &Arc<QuotientGroup>, prec: u32) -> Self {
        RingElt { q: q.clone(), prec, coeffs: Coeffs::new() }
    }

    pub fn term(q: &Arc<QuotientGroup>, id: u32, w: WittApprox) -> Self {
        let mut c = Coeffs::new();
        insert_add(&mut c, id, w);
        RingElt { q: q.clone(), prec: w.prec(), coeffs: c }
    }

    pub fn group(q: &Arc<QuotientGroup>, id: u32, prec: u32) -> Self {
        Self::term(q, id, WittApprox::one(prec))
    }

    pub fn one(q: &Arc<QuotientGroup>, prec: u32) -> Self {
        Self::group(q, q.identity(), prec)
    }

    pub fn scalar(q: &Arc<QuotientGroup>, w: WittApprox) -> Self {
        Self::term(q, q.identity(), w)
    }

    pub fn from_int(q: &Arc<QuotientGroup>, c: i64, prec: u32) -> Self {
        Self::scalar(q, WittApprox::from_int(c, prec))
    }

    /// A named element of G_2 read in the quotient.
    pub fn named(q: &Arc<QuotientGroup>, name: &str, prec: u32) -> Result<Self> {
        Ok(Self::group(q, q.named_id(name)?, prec))
    }

    pub fn from_gelt(q: &Arc<QuotientGroup>, g: &GElt, prec: u32) -> Result<Self> {
        Ok(Self::group(q, q.id_of(g)?, prec))
    }

    pub fn sum_of(q: &Arc<QuotientGroup>, s: &Subset, prec: u32) -> Self {
        let one = WittApprox::one(prec);
        RingElt { q: q.clone(), prec, coeffs: s.ids().iter().map(|&i| (i, one)).collect() }
    }

    pub fn from_coeffs(
        q: &Arc<QuotientGroup>,
        prec: u32,
        terms: impl IntoIterator<Item = (u32, WittApprox)>,
    ) -> Result<Self> {
        let mut c = Coeffs::new();
        for (id, w) in terms {
            if w.prec() != prec {
                return Err(MoravaError::PrecisionMismatch(w.prec(), prec));
            }
            if id as usize >= q.len() {
                return Err(MoravaError::NotInGroundSet);
            }
            insert_add(&mut c, id, w);
        }
        Ok(RingElt { q: q.clone(), prec, coeffs: c })
    }

    pub fn random<R: Rng>(q: &Arc<QuotientGroup>, prec: u32, support: usize, rng: &mut R) -> Self {
        let terms = (0..support).map(|_| {
            let id = rng.gen_range(0..q.len() as u32);
            (id, WittApprox::new(rng.gen(), rng.gen(), prec))
        });
        Self::from_coeffs(q, prec, terms).expect("ids drawn from the ground set")
    }

    pub fn quotient(&self) -> &Arc<QuotientGroup> {
        &self.q
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn coeffs(&self) -> &Coeffs {
        &self.coeffs
    }

    pub fn coeff(&self, id: u32) -> WittApprox {
        self.coeffs.get(&id).copied().unwrap_or(WittApprox::zero(self.prec))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn check(&self, o: &Self) -> Result<()> {
        same_quotient(&self.q, &o.q)?;
        if self.prec != o.prec {
            return Err(MoravaError::PrecisionMismatch(self.prec, o.prec));
        }
        Ok(())
    }

    fn with_coeffs(&self, coeffs: Coeffs) -> Self {
        RingElt { q: self.q.clone(), prec: self.prec, coeffs }
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let mut c = self.coeffs.clone();
        for (k, w) in &o.coeffs {
            insert_add(&mut c, *k, *w);
        }
        Ok(self.with_coeffs(c))
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self> {
        self.try_add(&o.neg())
    }

    pub fn neg(&self) -> Self {
        self.with_coeffs(self.coeffs.iter().map(|(k, w)| (*k, w.neg())).collect())
    }

    /// (a g)(b h) = a sigma^phi(g)(b) gh.
    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let mut c = Coeffs::new();
        for (g, a) in &self.coeffs {
            let f = self.q.flag(*g);
            for (h, b) in &o.coeffs {
                insert_add(&mut c, self.q.mul(*g, *h), a.mul_unchecked(&b.frobenius_pow(f)));
            }
        }
        Ok(self.with_coeffs(c))
    }

    /// w x (scalar on the left).
    pub fn scale(&self, w: &WittApprox) -> Self {
        let w = w.with_prec(self.prec);
        let c = self.coeffs.iter().map(|(k, a)| (*k, w.mul_unchecked(a))).filter(|(_, a)| !a.is_zero()).collect();
        self.with_coeffs(c)
    }

    pub fn scale_int(&self, c: i64) -> Self {
        self.scale(&WittApprox::from_int(c, self.prec))
    }

    /// x w (scalar on the right): each coefficient picks up sigma^phi(g)(w).
    pub fn scale_right(&self, w: &WittApprox) -> Self {
        let w = w.with_prec(self.prec);
        let c = self
            .coeffs
            .iter()
            .map(|(k, a)| (*k, a.mul_unchecked(&w.frobenius_pow(self.q.flag(*k)))))
            .filter(|(_, a)| !a.is_zero())
            .collect();
        self.with_coeffs(c)
    }

    /// g x for a group id g.
    pub fn left_group(&self, g: u32) -> Self {
        let f = self.q.flag(g);
        self.with_coeffs(self.coeffs.iter().map(|(h, a)| (self.q.mul(g, *h), a.frobenius_pow(f))).collect())
    }

    /// x g for a group id g.
    pub fn right_group(&self, g: u32) -> Self {
        self.with_coeffs(self.coeffs.iter().map(|(h, a)| (self.q.mul(*h, g), *a)).collect())
    }

    /// g x g^-1 for g in the ground set.
    pub fn conj_id(&self, g: u32) -> Self {
        let f = self.q.flag(g);
        self.with_coeffs(self.coeffs.iter().map(|(h, a)| (self.q.conj(g, *h), a.frobenius_pow(f))).collect())
    }

    /// g x g^-1 for any g in G_2 normalizing the ground set (e.g. pi).
    pub fn conj_by(&self, g: &GElt) -> Result<Self> {
        let f = g.flag();
        let mut c = Coeffs::new();
        for (h, a) in &self.coeffs {
            insert_add(&mut c, self.q.conj_by(g, *h)?, a.frobenius_pow(f));
        }
        Ok(self.with_coeffs(c))
    }

    /// x^sigma: conjugation by the Galois element (1, 1).
    pub fn sigma(&self) -> Result<Self> {
        if !self.q.variant().has_galois() {
            return Err(MoravaError::VariantMismatch("x^sigma needs a Galois variant".into()));
        }
        let s = self.q.named_id("sigma")?;
        Ok(self.conj_id(s))
    }

    /// tr_sigma(x) = -(zeta x + zeta^sigma x^sigma).
    pub fn tr_sigma(&self) -> Result<Self> {
        let z = WittApprox::zeta(self.prec);
        let a = self.scale(&z);
        let b = self.sigma()?.scale(&z.frobenius());
        Ok(a.try_add(&b)?.neg())
    }

    /// x + omega x omega^-1 + omega^2 x omega^-2.
    pub fn tr_c3(&self) -> Result<Self> {
        let w = self.q.named_id("omega")?;
        let x1 = self.conj_id(w);
        let x2 = x1.conj_id(w);
        self.try_add(&x1)?.try_add(&x2)
    }

    pub fn augment(&self) -> WittApprox {
        self.coeffs.values().fold(WittApprox::zero(self.prec), |s, w| s.add_unchecked(w))
    }

    /// The anti-automorphism sum_g c_g g -> sum_g g^-1 c_g.
    pub fn anti(&self) -> Self {
        self.with_coeffs(self.coeffs.iter().map(|(g, a)| (self.q.inv(*g), a.frobenius_pow(self.q.flag(*g)))).collect())
    }

    pub fn reduce(&self, prec: u32) -> Result<Self> {
        let mut c = Coeffs::new();
        for (k, w) in &self.coeffs {
            insert_add(&mut c, *k, w.reduce(prec)?);
        }
        Ok(RingElt { q: self.q.clone(), prec, coeffs: c })
    }

    /// Coordinates (a0, a1) of each group element, interleaved, as residues mod 2^N (N <= 8).
    pub fn to_vector(&self) -> Vec<u8> {
        assert!(self.prec <= 8, "dense vectors hold residues mod 2^8 at most");
        let mut v = vec![0u8; 2 * self.q.len()];
        for (g, a) in &self.coeffs {
            v[2 * *g as usize] = a.a0() as u8;
            v[2 * *g as usize + 1] = a.a1() as u8;
        }
        v
    }

    pub fn from_vector(q: &Arc<QuotientGroup>, prec: u32, v: &[u8]) -> Result<Self> {
        if v.len() != 2 * q.len() {
            return Err(MoravaError::DimensionCap(v.len()));
        }
        let terms = (0..q.len()).map(|g| (g as u32, WittApprox::new(v[2 * g] as u64, v[2 * g + 1] as u64, prec)));
        Self::from_coeffs(q, prec, terms)
    }

    pub fn to_json(&self) -> RingEltJson {
        RingEltJson {
            quotient: self.q.descriptor(),
            prec: self.prec,
            coeffs: self
                .coeffs
                .iter()
                .map(|(g, a)| (self.q.form(*g).to_string(), format!("{:#x}", a.a0()), format!("{:#x}", a.a1())))
                .collect(),
        }
    }

    pub fn from_json(q: &Arc<QuotientGroup>, j: &RingEltJson) -> Result<Self> {
        if q.descriptor() != j.quotient {
            return Err(MoravaError::VariantMismatch(format!("{} vs {}", q.descriptor(), j.quotient)));
        }
        let hex = |s: &str| {
            u64::from_str_radix(s.trim_start_matches("0x"), 16)
                .map_err(|_| MoravaError::Parse(format!("bad hex `{s}`")))
        };
        let m = mask(j.prec);
        let mut terms = Vec::new();
        for (df, a0, a1) in &j.coeffs {
            let id = q.id_of_form(&df.parse::<DigitForm>()?)?;
            let (a0, a1) = (hex(a0)?, hex(a1)?);
            if a0 & !m != 0 || a1 & !m != 0 {
                return Err(MoravaError::Parse(format!("coefficient exceeds 2^{}", j.prec)));
            }
            terms.push((id, WittApprox::new(a0, a1, j.prec)));
        }
        Self::from_coeffs(q, j.prec, terms)
    }
}

macro_rules! ring_op {
    ($tr:ident, $m:ident, $f:ident) => {
        impl std::ops::$tr for &RingElt {
            type Output = RingElt;
            fn $m(self, rhs: Self) -> RingElt {
                self.$f(rhs).expect("mismatched ring elements")
            }
        }
        impl std::ops::$tr for RingElt {
            type Output = RingElt;
            fn $m(self, rhs: Self) -> RingElt {
                self.$f(&rhs).expect("mismatched ring elements")
            }
        }
    };
}

ring_op!(Add, add, try_add);
ring_op!(Sub, sub, try_sub);
ring_op!(Mul, mul, try_mul);

impl std::ops::Neg for RingElt {
    type Output = RingElt;
    fn neg(self) -> RingElt {
        RingElt::neg(&self)
    }
}

/// The left cosets xH of a subgroup, indexing a basis of W↑_H.
pub struct CosetModule {
    q: Arc<QuotientGroup>,
    h: Subset,
    reps: Vec<u32>,
    coset_of: Vec<u32>,
}

impl fmt::Debug for CosetModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "W↑_{}({} cosets)", self.h.name, self.reps.len())
    }
}

impl CosetModule {
    pub fn new(q: &Arc<QuotientGroup>, h: Subset) -> Result<Arc<Self>> {
        if !q.is_subgroup(&h) {
            return Err(MoravaError::NotASubgroup);
        }
        let (reps, coset_of) = q.left_cosets(&h);
        Ok(Arc::new(CosetModule { q: q.clone(), h, reps, coset_of }))
    }

    pub fn quotient(&self) -> &Arc<QuotientGroup> {
        &self.q
    }

    pub fn subgroup(&self) -> &Subset {
        &self.h
    }

    pub fn num_cosets(&self) -> usize {
        self.reps.len()
    }

    pub fn coset_of(&self, g: u32) -> u32 {
        self.coset_of[g as usize]
    }

    pub fn rep(&self, c: u32) -> u32 {
        self.reps[c as usize]
    }

    /// The generator [H] with coefficient 1.
    pub fn generator(self: &Arc<Self>, prec: u32) -> ModuleElt {
        let c = self.coset_of(self.q.identity());
        ModuleElt::term(self, c, WittApprox::one(prec))
    }

    /// The dual functional [g]^*(x) = x sum_{h in H} h g^-1 evaluated at x.
    pub fn dual(&self, g: u32, x: &RingElt) -> Result<RingElt> {
        same_quotient(&self.q, x.quotient())?;
        let gi = self.q.inv(g);
        let ids: Vec<u32> = self.h.ids().iter().map(|&h| self.q.mul(h, gi)).collect();
        let s = RingElt::sum_of(&self.q, &self.q.subset("", ids), x.prec());
        x.try_mul(&s)
    }
}

#[derive(Clone)]
pub struct ModuleElt {
    m: Arc<CosetModule>,
    prec: u32,
    coeffs: Coeffs,
}

impl PartialEq for ModuleElt {
    fn eq(&self, o: &Self) -> bool {
        Arc::ptr_eq(&self.m, &o.m) && self.prec == o.prec && self.coeffs == o.coeffs
    }
}

impl Eq for ModuleElt {}

impl fmt::Debug for ModuleElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (n, (c, a)) in self.coeffs.iter().enumerate() {
            if n > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{:?} [{}]", a, self.m.q.form(self.m.rep(*c)))?;
        }
        Ok(())
    }
}

impl ModuleElt {
    pub fn zero(m: &Arc<CosetModule>, prec: u32) -> Self {
        ModuleElt { m: m.clone(), prec, coeffs: Coeffs::new() }
    }

    pub fn term(m: &Arc<CosetModule>, coset: u32, w: WittApprox) -> Self {
        let mut c = Coeffs::new();
        insert_add(&mut c, coset, w);
        ModuleElt { m: m.clone(), prec: w.prec(), coeffs: c }
    }

    pub fn module(&self) -> &Arc<CosetModule> {
        &self.m
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn coeffs(&self) -> &Coeffs {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn check(&self, o: &Self) -> Result<()> {
        if !Arc::ptr_eq(&self.m, &o.m) {
            return Err(MoravaError::VariantMismatch("different coset modules".into()));
        }
        if self.prec != o.prec {
            return Err(MoravaError::PrecisionMismatch(self.prec, o.prec));
        }
        Ok(())
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        let mut c = self.coeffs.clone();
        for (k, w) in &o.coeffs {
            insert_add(&mut c, *k, *w);
        }
        Ok(ModuleElt { m: self.m.clone(), prec: self.prec, coeffs: c })
    }

    pub fn neg(&self) -> Self {
        ModuleElt {
            m: self.m.clone(),
            prec: self.prec,
            coeffs: self.coeffs.iter().map(|(k, w)| (*k, w.neg())).collect(),
        }
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self> {
        self.try_add(&o.neg())
    }

    pub fn augment(&self) -> WittApprox {
        self.coeffs.values().fold(WittApprox::zero(self.prec), |s, w| s.add_unchecked(w))
    }

    pub fn to_vector(&self) -> Vec<u8> {
        assert!(self.prec <= 8, "dense vectors hold residues mod 2^8 at most");
        let mut v = vec![0u8; 2 * self.m.num_cosets()];
        for (c, a) in &self.coeffs {
            v[2 * *c as usize] = a.a0() as u8;
            v[2 * *c as usize + 1] = a.a1() as u8;
        }
        v
    }
}

/// x . v with g (w [y]) = w^phi(g) [g y].
pub fn act(x: &RingElt, v: &ModuleElt) -> Result<ModuleElt> {
    same_quotient(x.quotient(), &v.m.q)?;
    if x.prec() != v.prec {
        return Err(MoravaError::PrecisionMismatch(x.prec(), v.prec));
    }
    let q = &v.m.q;
    let mut c = Coeffs::new();
    for (g, a) in x.coeffs() {
        let f = q.flag(*g);
        for (y, w) in &v.coeffs {
            let gy = q.mul(*g, v.m.rep(*y));
            insert_add(&mut c, v.m.coset_of(gy), a.mul_unchecked(&w.frobenius_pow(f)));
        }
    }
    Ok(ModuleElt { m: v.m.clone(), prec: v.prec, coeffs: c })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::endo::Fgl;
    use crate::quotients::Variant;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn ring(m: u32, v: Variant, norm_one: bool) -> Arc<QuotientGroup> {
        let d = Descriptor { variant: v, m, fgl: Fgl::Honda, norm_one };
        Arc::new(QuotientGroup::from_descriptor(d).unwrap())
    }

    #[test]
    fn twisted_product() {
        let q = ring(3, Variant::G2, false);
        let n = 4;
        let z = WittApprox::zeta(n);
        let s = q.named_id("sigma").unwrap();
        let lhs = RingElt::term(&q, s, z) * RingElt::scalar(&q, z);
        assert_eq!(lhs, RingElt::group(&q, s, n));
    }

    #[test]
    fn traces_of_identity() {
        let q = ring(4, Variant::PG2, true);
        let e = RingElt::one(&q, 4);
        assert_eq!(e.tr_sigma().unwrap(), e);
        assert_eq!(e.tr_c3().unwrap(), e.scale_int(3));
        let i = RingElt::named(&q, "i", 4).unwrap();
        let ijk = &(&i + &RingElt::named(&q, "j", 4).unwrap()) + &RingElt::named(&q, "k", 4).unwrap();
        assert_eq!(i.tr_c3().unwrap(), ijk);
    }

    #[test]
    fn sigma_needs_galois() {
        let q = ring(3, Variant::PS2, false);
        assert!(RingElt::one(&q, 3).tr_sigma().is_err());
    }

    #[test]
    fn json_round_trip() {
        let q = ring(4, Variant::PG2, true);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let x = RingElt::random(&q, 4, 10, &mut rng);
        let j = serde_json::to_string(&x.to_json()).unwrap();
        let back: RingEltJson = serde_json::from_str(&j).unwrap();
        assert_eq!(RingElt::from_json(&q, &back).unwrap(), x);
    }

    #[test]
    fn module_action() {
        let q = ring(4, Variant::PG2, true);
        let g48 = q.subgroup_image("G48").unwrap();
        let g12 = q.subgroup_image("G12").unwrap();
        let m = CosetModule::new(&q, g48).unwrap();
        let e0 = m.generator(3);
        for &t in g12.ids() {
            assert_eq!(act(&RingElt::group(&q, t, 3), &e0).unwrap(), e0);
        }
        let alpha = RingElt::named(&q, "alpha", 3).unwrap();
        let x = (RingElt::one(&q, 3) - alpha).tr_sigma().unwrap();
        assert!(act(&x, &e0).unwrap().augment().is_zero());
    }
}
