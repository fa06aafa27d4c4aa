//! Submodules of (Z/2^N)^D in Howell form, and the ideals of the finite group rings.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::error::{MoravaError, Result};
use crate::groupring::{CosetModule, RingElt};
use crate::quotients::{QuotientGroup, Subset};

pub const MAX_DIM: usize = 6144;
pub const MAX_PREC: u32 = 8;

type RowOp<'a> = Box<dyn Fn(&[u8]) -> Vec<u8> + 'a>;

fn inv_odd_u8(x: u8) -> u8 {
    // Newton: each step doubles the number of correct bits.
    let mut y = x;
    for _ in 0..3 {
        y = y.wrapping_mul(2u8.wrapping_sub(x.wrapping_mul(y)));
    }
    y
}

/// v -= f * row on the columns from `from` on.
#[inline]
fn axpy(v: &mut [u8], f: u8, row: &[u8], from: usize, m: u8) {
    for (a, b) in v[from..].iter_mut().zip(&row[from..]) {
        *a = a.wrapping_sub(f.wrapping_mul(*b)) & m;
    }
}

#[inline]
fn scale(v: &mut [u8], f: u8, m: u8) {
    for a in v.iter_mut() {
        *a = a.wrapping_mul(f) & m;
    }
}

/// A submodule of (Z/2^N)^D kept in Howell form: one row per pivot column, each pivot a
/// power of two, and 2^(N-k) r in the span of the later rows for a row r with pivot 2^k.
#[derive(Clone)]
pub struct Submodule {
    pub ambient: String,
    dim: usize,
    prec: u32,
    rows: Vec<Option<Box<[u8]>>>,
}

impl fmt::Debug for Submodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Submodule({}, dim {}, mod 2^{}, {} rows)", self.ambient, self.dim, self.prec, self.rank())
    }
}

impl Submodule {
    pub fn zero(ambient: &str, dim: usize, prec: u32) -> Result<Self> {
        if dim > MAX_DIM {
            return Err(MoravaError::DimensionCap(dim));
        }
        if prec == 0 || prec > MAX_PREC {
            return Err(MoravaError::InsufficientPrecision { needed: 1, have: prec });
        }
        Ok(Submodule { ambient: ambient.to_string(), dim, prec, rows: vec![None; dim] })
    }

    pub fn span(ambient: &str, dim: usize, prec: u32, gens: impl IntoIterator<Item = Vec<u8>>) -> Result<Self> {
        let mut s = Self::zero(ambient, dim, prec)?;
        for g in gens {
            s.insert(g)?;
        }
        Ok(s)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    fn mask(&self) -> u8 {
        (((1u16) << self.prec) - 1) as u8
    }

    pub fn rank(&self) -> usize {
        self.rows.iter().filter(|r| r.is_some()).count()
    }

    /// log_2 of the number of elements.
    pub fn log_size(&self) -> u32 {
        self.rows
            .iter()
            .flatten()
            .map(|r| {
                let c = r.iter().position(|x| *x != 0).expect("nonzero row");
                self.prec - r[c].trailing_zeros()
            })
            .sum()
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u8]> {
        self.rows.iter().flatten().map(|r| &r[..])
    }

    fn check_len(&self, v: &[u8]) -> Result<()> {
        if v.len() != self.dim {
            return Err(MoravaError::VariantMismatch(format!("vector of length {} in {}", v.len(), self.ambient)));
        }
        Ok(())
    }

    /// Adds v to the span; returns whether the span grew.
    pub fn insert(&mut self, v: Vec<u8>) -> Result<bool> {
        self.check_len(&v)?;
        let m = self.mask();
        let mut changed = false;
        let mut stack = vec![v];
        while let Some(mut v) = stack.pop() {
            for a in v.iter_mut() {
                *a &= m;
            }
            let mut c = 0;
            loop {
                while c < self.dim && v[c] == 0 {
                    c += 1;
                }
                if c == self.dim {
                    break;
                }
                let x = v[c];
                let k = x.trailing_zeros();
                if let Some(row) = &self.rows[c] {
                    let kr = row[c].trailing_zeros();
                    if k >= kr {
                        axpy(&mut v, x >> kr, row, c, m);
                        continue;
                    }
                }
                scale(&mut v, inv_odd_u8(x >> k), m);
                let shift = k;
                let mut ann = v.clone();
                scale(&mut ann, (1u16 << (self.prec - shift)) as u8, m);
                if let Some(old) = self.rows[c].replace(v.into_boxed_slice()) {
                    stack.push(old.into_vec());
                }
                if ann.iter().any(|a| *a != 0) {
                    stack.push(ann);
                }
                changed = true;
                break;
            }
        }
        Ok(changed)
    }

    /// The remainder of v after reduction; zero exactly for members.
    pub fn reduce(&self, v: &[u8]) -> Result<Vec<u8>> {
        self.check_len(v)?;
        let m = self.mask();
        let mut v: Vec<u8> = v.iter().map(|a| a & m).collect();
        for c in 0..self.dim {
            if v[c] == 0 {
                continue;
            }
            if let Some(row) = &self.rows[c] {
                let kr = row[c].trailing_zeros();
                if v[c].trailing_zeros() >= kr {
                    let f = v[c] >> kr;
                    axpy(&mut v, f, row, c, m);
                    continue;
                }
            }
            break;
        }
        Ok(v)
    }

    pub fn contains(&self, v: &[u8]) -> Result<bool> {
        Ok(self.reduce(v)?.iter().all(|a| *a == 0))
    }

    pub fn contains_all(&self, o: &Submodule) -> Result<bool> {
        for r in o.rows() {
            if !self.contains(r)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn is_subset_of(&self, o: &Submodule) -> Result<bool> {
        o.contains_all(self)
    }

    /// Howell form with entries above each pivot 2^k reduced into [0, 2^k).
    pub fn canonical(&self) -> Vec<(usize, Vec<u8>)> {
        let m = self.mask();
        let mut rows: Vec<(usize, Vec<u8>)> =
            self.rows.iter().enumerate().filter_map(|(c, r)| r.as_ref().map(|r| (c, r.to_vec()))).collect();
        for n in 0..rows.len() {
            let (c, k) = (rows[n].0, rows[n].1[rows[n].0].trailing_zeros());
            let pivot = rows[n].1.clone();
            for row in rows.iter_mut().take(n) {
                let f = row.1[c] >> k;
                if f != 0 {
                    axpy(&mut row.1, f, &pivot, c, m);
                }
            }
        }
        rows
    }

    pub fn same_span(&self, o: &Submodule) -> bool {
        self.dim == o.dim && self.prec == o.prec && self.canonical() == o.canonical()
    }

    pub fn sum(&self, o: &Submodule) -> Result<Submodule> {
        let mut s = self.clone();
        for r in o.rows() {
            s.insert(r.to_vec())?;
        }
        Ok(s)
    }

    pub fn scaled(&self, f: u8) -> Result<Submodule> {
        let m = self.mask();
        Submodule::span(
            &self.ambient,
            self.dim,
            self.prec,
            self.rows().map(|r| {
                let mut v = r.to_vec();
                scale(&mut v, f, m);
                v
            }),
        )
    }

    /// The span of a dense vector list closed under the given linear operators.
    pub fn closure<F>(ambient: &str, dim: usize, prec: u32, gens: Vec<Vec<u8>>, ops: &[F]) -> Result<Submodule>
    where
        F: Fn(&[u8]) -> Vec<u8>,
    {
        let mut s = Self::zero(ambient, dim, prec)?;
        let mut queue = gens;
        while let Some(v) = queue.pop() {
            if s.insert(v.clone())? {
                for op in ops {
                    queue.push(op(&v));
                }
            }
        }
        Ok(s)
    }
}

/// Kernel of the linear map whose i-th row is the image of the i-th basis vector.
pub fn kernel(images: &[Vec<u8>], target_dim: usize, prec: u32) -> Result<Submodule> {
    let n = images.len();
    let mut aug = Submodule::zero("augmented", target_dim + n, prec)?;
    for (i, img) in images.iter().enumerate() {
        if img.len() != target_dim {
            return Err(MoravaError::VariantMismatch("image of the wrong length".into()));
        }
        let mut v = img.clone();
        v.resize(target_dim + n, 0);
        v[target_dim + i] = 1;
        aug.insert(v)?;
    }
    let ker = aug.rows().filter(|r| r[..target_dim].iter().all(|a| *a == 0)).map(|r| r[target_dim..].to_vec());
    Submodule::span("kernel", n, prec, ker.collect::<Vec<_>>())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Sides {
    Left,
    Right,
    TwoSided,
}

// Dense coordinate helpers: slot 2g holds the 1-coefficient, 2g+1 the zeta-coefficient.

fn frob(a0: u8, a1: u8) -> (u8, u8) {
    (a0.wrapping_sub(a1), a1.wrapping_neg())
}

fn zeta_times(a0: u8, a1: u8) -> (u8, u8) {
    (a1.wrapping_neg(), a0.wrapping_sub(a1))
}

/// Ideals of W_phi[Q] as submodules of (Z/2^N)^(2|Q|).
pub struct RingIdeals {
    q: Arc<QuotientGroup>,
    prec: u32,
    gens: Vec<u32>,
    cache: Mutex<HashMap<String, Arc<Submodule>>>,
}

impl fmt::Debug for RingIdeals {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RingIdeals({:?}, mod 2^{})", self.q, self.prec)
    }
}

pub const IDEAL_NAMES: [&str; 8] = ["J", "I", "Itheta", "I4K", "I2K", "IK2", "Iphi", "Iaug(H)"];

impl RingIdeals {
    pub fn new(q: &Arc<QuotientGroup>, prec: u32) -> Result<Self> {
        let dim = 2 * q.len();
        if dim > MAX_DIM {
            return Err(MoravaError::DimensionCap(dim));
        }
        if prec == 0 || prec > MAX_PREC {
            return Err(MoravaError::InsufficientPrecision { needed: 1, have: prec });
        }
        let gens = q.generating_set(&q.all());
        Ok(RingIdeals { q: q.clone(), prec, gens, cache: Mutex::new(HashMap::new()) })
    }

    pub fn quotient(&self) -> &Arc<QuotientGroup> {
        &self.q
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn dim(&self) -> usize {
        2 * self.q.len()
    }

    fn mask(&self) -> u8 {
        (((1u16) << self.prec) - 1) as u8
    }

    fn ambient(&self) -> String {
        format!("{} mod 2^{}", self.q.descriptor(), self.prec)
    }

    pub fn vector(&self, x: &RingElt) -> Result<Vec<u8>> {
        if x.quotient().descriptor() != self.q.descriptor() {
            return Err(MoravaError::VariantMismatch("ring element from another quotient".into()));
        }
        Ok(x.reduce(self.prec)?.to_vector())
    }

    pub fn element(&self, v: &[u8]) -> Result<RingElt> {
        RingElt::from_vector(&self.q, self.prec, v)
    }

    pub fn contains(&self, s: &Submodule, x: &RingElt) -> Result<bool> {
        s.contains(&self.vector(x)?)
    }

    /// g v
    pub fn left_group(&self, g: u32, v: &[u8]) -> Vec<u8> {
        let f = self.q.flag(g);
        let m = self.mask();
        let mut out = vec![0u8; v.len()];
        for h in 0..self.q.len() {
            let (a0, a1) = (v[2 * h], v[2 * h + 1]);
            if a0 == 0 && a1 == 0 {
                continue;
            }
            let (b0, b1) = if f == 1 { frob(a0, a1) } else { (a0, a1) };
            let t = self.q.mul(g, h as u32) as usize;
            out[2 * t] = b0 & m;
            out[2 * t + 1] = b1 & m;
        }
        out
    }

    /// v g
    pub fn right_group(&self, v: &[u8], g: u32) -> Vec<u8> {
        let mut out = vec![0u8; v.len()];
        for h in 0..self.q.len() {
            if v[2 * h] == 0 && v[2 * h + 1] == 0 {
                continue;
            }
            let t = self.q.mul(h as u32, g) as usize;
            out[2 * t] = v[2 * h];
            out[2 * t + 1] = v[2 * h + 1];
        }
        out
    }

    pub fn left_zeta(&self, v: &[u8]) -> Vec<u8> {
        let m = self.mask();
        let mut out = vec![0u8; v.len()];
        for h in 0..self.q.len() {
            let (b0, b1) = zeta_times(v[2 * h], v[2 * h + 1]);
            out[2 * h] = b0 & m;
            out[2 * h + 1] = b1 & m;
        }
        out
    }

    /// v zeta: the coefficient of h is multiplied by sigma^phi(h)(zeta).
    pub fn right_zeta(&self, v: &[u8]) -> Vec<u8> {
        let m = self.mask();
        let mut out = vec![0u8; v.len()];
        for h in 0..self.q.len() {
            let (a0, a1) = (v[2 * h], v[2 * h + 1]);
            let (b0, b1) = if self.q.flag(h as u32) == 1 {
                // zeta^2 = -1 - zeta
                (a1.wrapping_sub(a0), a0.wrapping_neg())
            } else {
                zeta_times(a0, a1)
            };
            out[2 * h] = b0 & m;
            out[2 * h + 1] = b1 & m;
        }
        out
    }

    /// Smallest submodule containing the generators and closed under the requested
    /// multiplications by zeta and a generating set of the group.
    pub fn span(&self, gens: &[RingElt], sides: Sides) -> Result<Submodule> {
        let vs = gens.iter().map(|x| self.vector(x)).collect::<Result<Vec<_>>>()?;
        self.span_vectors(vs, sides)
    }

    pub fn span_vectors(&self, vs: Vec<Vec<u8>>, sides: Sides) -> Result<Submodule> {
        let mut ops: Vec<RowOp<'_>> = Vec::new();
        if sides != Sides::Right {
            ops.push(Box::new(|v| self.left_zeta(v)));
            for &g in &self.gens {
                ops.push(Box::new(move |v| self.left_group(g, v)));
            }
        }
        if sides != Sides::Left {
            ops.push(Box::new(|v| self.right_zeta(v)));
            for &g in &self.gens {
                ops.push(Box::new(move |v| self.right_group(v, g)));
            }
        }
        Submodule::closure(&self.ambient(), self.dim(), self.prec, vs, &ops)
    }

    fn cached(&self, key: &str, f: impl FnOnce() -> Result<Submodule>) -> Result<Arc<Submodule>> {
        if let Some(s) = self.cache.lock().expect("ideal cache").get(key) {
            return Ok(s.clone());
        }
        let s = Arc::new(f()?);
        self.cache.lock().expect("ideal cache").insert(key.to_string(), s.clone());
        Ok(s)
    }

    /// c (Z/2^N)^D, the ideal generated by the integer c.
    pub fn scalar_ideal(&self, c: u8) -> Result<Submodule> {
        let m = self.mask();
        let d = self.dim();
        Submodule::span(
            &self.ambient(),
            d,
            self.prec,
            (0..d).map(|i| {
                let mut v = vec![0u8; d];
                v[i] = c & m;
                v
            }),
        )
    }

    /// The augmentation ideal of a normal subgroup N: span of w g (e - n), n in a generating set.
    pub fn aug_normal(&self, n: &Subset) -> Result<Submodule> {
        if self.q.normalizer_witness(n, &self.q.subset("gens", self.gens.clone())).is_some() {
            return Err(MoravaError::NotASubgroup);
        }
        let ngens = self.q.generating_set(n);
        let m = self.mask();
        let d = self.dim();
        let mut s = Submodule::zero(&self.ambient(), d, self.prec)?;
        for g in 0..self.q.len() as u32 {
            for &x in &ngens {
                let gx = self.q.mul(g, x) as usize;
                for slot in 0..2 {
                    let mut v = vec![0u8; d];
                    v[2 * g as usize + slot] = 1;
                    v[2 * gx + slot] = m;
                    s.insert(v)?;
                }
            }
        }
        Ok(s)
    }

    /// The ideal generated by {e - h : h in H}, closed two-sidedly.
    pub fn aug_generic(&self, h: &Subset, sides: Sides) -> Result<Submodule> {
        let e = RingElt::one(&self.q, self.prec);
        let gens: Vec<RingElt> = h.ids().iter().map(|&x| &e - &RingElt::group(&self.q, x, self.prec)).collect();
        self.span(&gens, sides)
    }

    /// I(N) A = span{(e - n) a} for N normal and A a two-sided ideal.
    pub fn mul_aug_left(&self, n: &Subset, a: &Submodule) -> Result<Submodule> {
        self.mul_aug_left_with(&self.q.generating_set(n), a)
    }

    pub fn mul_aug_left_with(&self, ngens: &[u32], a: &Submodule) -> Result<Submodule> {
        let m = self.mask();
        let mut s = Submodule::zero(&self.ambient(), self.dim(), self.prec)?;
        for r in a.rows() {
            for &x in ngens {
                let mut v = r.to_vec();
                let xr = self.left_group(x, r);
                axpy(&mut v, 1, &xr, 0, m);
                s.insert(v)?;
            }
        }
        Ok(s)
    }

    /// A I(N) = span{a (e - n)}.
    pub fn mul_aug_right(&self, a: &Submodule, n: &Subset) -> Result<Submodule> {
        let m = self.mask();
        let ngens = self.q.generating_set(n);
        let mut s = Submodule::zero(&self.ambient(), self.dim(), self.prec)?;
        for r in a.rows() {
            for &x in &ngens {
                let mut v = r.to_vec();
                let rx = self.right_group(r, x);
                axpy(&mut v, 1, &rx, 0, m);
                s.insert(v)?;
            }
        }
        Ok(s)
    }

    fn sub_image(&self, name: &str) -> Result<Subset> {
        let s = self.q.subgroup_image(name)?;
        Ok(s.intersect(&self.q.all(), name))
    }

    /// I(PK^1)
    pub fn ik(&self) -> Result<Arc<Submodule>> {
        self.cached("IK", || self.aug_normal(&self.sub_image("K1")?))
    }

    /// I(PS^1)
    pub fn is(&self) -> Result<Arc<Submodule>> {
        self.cached("IS", || self.aug_normal(&self.sub_image("S1")?))
    }

    /// I(PK^1)^k
    pub fn ik_pow(&self, k: u32) -> Result<Arc<Submodule>> {
        if k <= 1 {
            return self.ik();
        }
        let prev = self.ik_pow(k - 1)?;
        let kk = self.sub_image("K1")?;
        self.cached(&format!("IK^{k}"), || self.mul_aug_left(&kk, &prev))
    }

    pub fn is2(&self) -> Result<Arc<Submodule>> {
        let s = self.sub_image("S1")?;
        let is = self.is()?;
        self.cached("IS^2", || self.mul_aug_left(&s, &is))
    }

    /// Named ideals; `Iaug(H)` takes any subgroup image name.
    pub fn standard(&self, name: &str) -> Result<Arc<Submodule>> {
        if let Some(h) = name.strip_prefix("Iaug(").and_then(|r| r.strip_suffix(')')) {
            let hs = self.sub_image(h)?;
            return self.cached(name, || {
                if self.q.normalizer_witness(&hs, &self.q.all()).is_none() {
                    self.aug_normal(&hs)
                } else {
                    self.aug_generic(&hs, Sides::TwoSided)
                }
            });
        }
        let k = self.sub_image("K1")?;
        let s = self.sub_image("S1")?;
        let sum = |parts: Vec<Submodule>| -> Result<Submodule> {
            let mut acc = Submodule::zero(&self.ambient(), self.dim(), self.prec)?;
            for p in parts {
                acc = acc.sum(&p)?;
            }
            Ok(acc)
        };
        match name {
            "J" => self.cached(name, || {
                let is = self.is()?;
                let ik = self.ik()?;
                sum(vec![self.scalar_ideal(2)?, self.mul_aug_left(&k, &is)?, self.mul_aug_left(&s, &ik)?])
            }),
            "I" => self.cached(name, || {
                let is2 = self.is2()?;
                sum(vec![
                    self.scalar_ideal(4)?,
                    is2.scaled(2)?,
                    self.ik()?.scaled(2)?,
                    (*self.ik_pow(2)?).clone(),
                    self.mul_aug_left(&k, &is2)?,
                    self.mul_aug_right(&is2, &k)?,
                ])
            }),
            "Itheta" => self.cached(name, || {
                sum(vec![
                    (*self.ik_pow(7)?).clone(),
                    self.ik_pow(3)?.scaled(2)?,
                    self.ik()?.scaled(4)?,
                    self.scalar_ideal(8)?,
                ])
            }),
            "I4K" => self.cached(name, || sum(vec![self.scalar_ideal(4)?, (*self.ik()?).clone()])),
            "I2K" => self.cached(name, || sum(vec![self.scalar_ideal(2)?, (*self.ik()?).clone()])),
            "IK2" => self.ik_pow(2),
            "Iphi" => self.cached(name, || {
                let is2 = self.is2()?;
                sum(vec![self.ik()?.scaled(4)?, self.mul_aug_right(&is2, &k)?.scaled(2)?, (*self.ik_pow(2)?).clone()])
            }),
            _ => Err(MoravaError::UnknownName(name.to_string())),
        }
    }

    /// Image of a ring submodule under x -> x [base] in a coset module.
    pub fn module_image(&self, s: &Submodule, m: &CosetModule, base: u32) -> Result<Submodule> {
        if m.quotient().descriptor() != self.q.descriptor() {
            return Err(MoravaError::VariantMismatch("coset module over another quotient".into()));
        }
        let y = m.rep(base);
        let target: Vec<usize> = (0..self.q.len() as u32).map(|g| m.coset_of(self.q.mul(g, y)) as usize).collect();
        Submodule::span(
            &format!("W↑_{} mod 2^{}", m.subgroup().name, self.prec),
            2 * m.num_cosets(),
            self.prec,
            s.rows().map(|r| module_vector(r, &target, 2 * m.num_cosets(), self.mask())).collect::<Vec<_>>(),
        )
    }
}

fn module_vector(r: &[u8], target: &[usize], dim: usize, m: u8) -> Vec<u8> {
    let mut v = vec![0u8; dim];
    for (g, &t) in target.iter().enumerate() {
        v[2 * t] = v[2 * t].wrapping_add(r[2 * g]) & m;
        v[2 * t + 1] = v[2 * t + 1].wrapping_add(r[2 * g + 1]) & m;
    }
    v
}

/// Dense coordinates of a coset-module element, reduced mod 2^prec.
pub fn module_coords(v: &crate::groupring::ModuleElt, prec: u32) -> Result<Vec<u8>> {
    let m = (((1u16) << prec) - 1) as u8;
    Ok(v.to_vector().into_iter().map(|a| a & m).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::endo::Fgl;
    use crate::quotients::{Descriptor, Variant};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn inverse_mod_256() {
        for x in (1..=255u8).step_by(2) {
            assert_eq!(x.wrapping_mul(inv_odd_u8(x)), 1);
        }
    }

    /// All Z/4-combinations of the generators, as a membership oracle.
    fn brute_span(gens: &[Vec<u8>]) -> std::collections::HashSet<Vec<u8>> {
        let mut out = std::collections::HashSet::new();
        let k = gens.len();
        for code in 0..4usize.pow(k as u32) {
            let mut v = vec![0u8; 4];
            for (n, g) in gens.iter().enumerate() {
                let c = ((code >> (2 * n)) & 3) as u8;
                for (a, b) in v.iter_mut().zip(g) {
                    *a = a.wrapping_add(c.wrapping_mul(*b)) & 3;
                }
            }
            out.insert(v);
        }
        out
    }

    #[test]
    fn howell_against_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let k = rng.gen_range(0..=3);
            let gens: Vec<Vec<u8>> = (0..k).map(|_| (0..4).map(|_| rng.gen_range(0..4)).collect()).collect();
            let s = Submodule::span("Z4^4", 4, 2, gens.clone()).unwrap();
            let brute = brute_span(&gens);
            assert_eq!(1usize << s.log_size(), brute.len());
            for code in 0..256u32 {
                let v: Vec<u8> = (0..4).map(|i| ((code >> (2 * i)) & 3) as u8).collect();
                assert_eq!(s.contains(&v).unwrap(), brute.contains(&v));
            }
        }
    }

    #[test]
    fn canonical_form_is_generator_independent() {
        let a = Submodule::span("t", 3, 3, vec![vec![2, 4, 0], vec![0, 2, 6]]).unwrap();
        let b = Submodule::span("t", 3, 3, vec![vec![2, 6, 6], vec![0, 6, 2], vec![4, 4, 4]]).unwrap();
        assert!(a.same_span(&b));
        assert!(!a.same_span(&Submodule::span("t", 3, 3, vec![vec![2, 4, 0]]).unwrap()));
    }

    #[test]
    fn kernel_of_sum_map() {
        let images: Vec<Vec<u8>> = (0..4).map(|_| vec![1]).collect();
        let k = kernel(&images, 1, 2).unwrap();
        assert_eq!(k.log_size(), 6);
        assert!(k.contains(&[1, 3, 0, 0]).unwrap());
        assert!(!k.contains(&[1, 0, 0, 0]).unwrap());
    }

    fn quotient(m: u32, v: Variant, norm_one: bool) -> Arc<QuotientGroup> {
        Arc::new(QuotientGroup::from_descriptor(Descriptor { variant: v, m, fgl: Fgl::Honda, norm_one }).unwrap())
    }

    #[test]
    fn spans_of_scalars() {
        let q = quotient(3, Variant::PS2, false);
        let r = RingIdeals::new(&q, 2).unwrap();
        assert_eq!(r.span(&[RingElt::zero(&q, 2)], Sides::TwoSided).unwrap().rank(), 0);
        let two = r.span(&[RingElt::from_int(&q, 2, 2)], Sides::TwoSided).unwrap();
        assert!(two.same_span(&r.scalar_ideal(2).unwrap()));
        let alpha = RingElt::named(&q, "alpha", 2).unwrap();
        assert!(r.contains(&two, &alpha.scale_int(2)).unwrap());
    }

    #[test]
    fn left_augmentation_span_is_coinvariant_kernel() {
        let q = quotient(3, Variant::G2, false);
        let r = RingIdeals::new(&q, 2).unwrap();
        let h = q.closure("H", &[q.named_id("omega").unwrap(), q.named_id("sigma").unwrap()]);
        let span = r.aug_generic(&h, Sides::Left).unwrap();
        let m = CosetModule::new(&q, h).unwrap();
        let images: Vec<Vec<u8>> = (0..r.dim())
            .map(|i| {
                let mut v = vec![0u8; r.dim()];
                v[i] = 1;
                module_vector(
                    &v,
                    &(0..q.len() as u32).map(|g| m.coset_of(g) as usize).collect::<Vec<_>>(),
                    2 * m.num_cosets(),
                    3,
                )
            })
            .collect();
        let ker = kernel(&images, 2 * m.num_cosets(), 2).unwrap();
        assert!(span.same_span(&ker));
    }

    #[test]
    fn normal_augmentation_matches_generic_closure() {
        let q = quotient(4, Variant::PG2, true);
        let r = RingIdeals::new(&q, 2).unwrap();
        let k = q.subgroup_image("K1").unwrap();
        let fast = r.aug_normal(&k).unwrap();
        let slow = r.aug_generic(&k, Sides::TwoSided).unwrap();
        assert!(fast.same_span(&slow));
        let again = r.span_vectors(fast.rows().map(|x| x.to_vec()).collect(), Sides::TwoSided).unwrap();
        assert!(again.same_span(&fast));
        // Products do not depend on the generating set of N.
        let is = r.is().unwrap();
        let a = r.mul_aug_left(&k, &is).unwrap();
        let b = r.mul_aug_left_with(k.ids(), &is).unwrap();
        assert!(a.same_span(&b));
    }
}
