//! The maximal order W<xi>/(xi w - w^sigma xi, xi^2 - 2u) of the division algebra D_2.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{MoravaError, Result};
use crate::witt::{inv_odd, val2_residue, WittApprox};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Fgl {
    Honda,
    Elliptic,
}

impl Fgl {
    pub const ALL: [Fgl; 2] = [Fgl::Honda, Fgl::Elliptic];

    /// The unit u with xi^2 = 2u.
    pub fn u(self) -> i64 {
        match self {
            Fgl::Honda => 1,
            Fgl::Elliptic => -1,
        }
    }

    /// epsilon in the formulas for i, j, k.
    pub fn eps(self, prec: u32) -> WittApprox {
        match self {
            Fgl::Honda => WittApprox::alpha(prec),
            Fgl::Elliptic => WittApprox::one(prec),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Fgl::Honda => "honda",
            Fgl::Elliptic => "elliptic",
        }
    }
}

impl std::str::FromStr for Fgl {
    type Err = MoravaError;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "honda" | "h" => Ok(Fgl::Honda),
            "elliptic" | "e" => Ok(Fgl::Elliptic),
            _ => Err(MoravaError::UnknownName(s.to_string())),
        }
    }
}

impl fmt::Display for Fgl {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// a + b*xi.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct EndoElt {
    a: WittApprox,
    b: WittApprox,
    fgl: Fgl,
}

impl fmt::Debug for EndoElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?} + {:?} xi; {}]", self.a, self.b, self.fgl)
    }
}

/// Filtration level i of x = 1 mod xi^i; `lower_bound` is set when truncation saturates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Level {
    pub level: u32,
    pub lower_bound: bool,
}

pub const STANDARD_NAMES: [&str; 10] = ["i", "j", "k", "omega", "alpha", "pi", "eps", "alpha_i", "alpha_j", "alpha_k"];

impl EndoElt {
    pub fn new(a: WittApprox, b: WittApprox, fgl: Fgl) -> Result<Self> {
        if a.prec() != b.prec() {
            return Err(MoravaError::PrecisionMismatch(a.prec(), b.prec()));
        }
        Ok(EndoElt { a, b, fgl })
    }

    pub(crate) fn from_parts(a: WittApprox, b: WittApprox, fgl: Fgl) -> Self {
        debug_assert_eq!(a.prec(), b.prec());
        EndoElt { a, b, fgl }
    }

    pub fn scalar(w: WittApprox, fgl: Fgl) -> Self {
        EndoElt { a: w, b: WittApprox::zero(w.prec()), fgl }
    }

    pub fn from_int(c: i64, fgl: Fgl, prec: u32) -> Self {
        Self::scalar(WittApprox::from_int(c, prec), fgl)
    }

    pub fn one(fgl: Fgl, prec: u32) -> Self {
        Self::from_int(1, fgl, prec)
    }

    pub fn xi(fgl: Fgl, prec: u32) -> Self {
        EndoElt { a: WittApprox::zero(prec), b: WittApprox::one(prec), fgl }
    }

    pub fn a(&self) -> WittApprox {
        self.a
    }

    pub fn b(&self) -> WittApprox {
        self.b
    }

    pub fn fgl(&self) -> Fgl {
        self.fgl
    }

    pub fn prec(&self) -> u32 {
        self.a.prec()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    fn check(&self, o: &Self) -> Result<()> {
        if self.fgl != o.fgl {
            return Err(MoravaError::TagMismatch);
        }
        if self.prec() != o.prec() {
            return Err(MoravaError::PrecisionMismatch(self.prec(), o.prec()));
        }
        Ok(())
    }

    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(self.mul_unchecked(o))
    }

    pub fn try_add(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(EndoElt { a: self.a.add_unchecked(&o.a), b: self.b.add_unchecked(&o.b), fgl: self.fgl })
    }

    pub fn try_sub(&self, o: &Self) -> Result<Self> {
        self.check(o)?;
        Ok(EndoElt { a: self.a.sub_unchecked(&o.a), b: self.b.sub_unchecked(&o.b), fgl: self.fgl })
    }

    /// (a1 + b1 xi)(a2 + b2 xi) = (a1 a2 + 2u b1 b2^s) + (a1 b2 + b1 a2^s) xi.
    #[inline]
    pub(crate) fn mul_unchecked(&self, o: &Self) -> Self {
        let two_u = (2 * self.fgl.u()) as u64;
        let a = self.a.mul_unchecked(&o.a).add_unchecked(&self.b.mul_unchecked(&o.b.frobenius()).scale(two_u));
        let b = self.a.mul_unchecked(&o.b).add_unchecked(&self.b.mul_unchecked(&o.a.frobenius()));
        EndoElt { a, b, fgl: self.fgl }
    }

    pub fn neg(&self) -> Self {
        EndoElt { a: self.a.neg(), b: self.b.neg(), fgl: self.fgl }
    }

    /// Left multiplication by a Witt scalar.
    pub fn scale(&self, w: &WittApprox) -> Self {
        EndoElt { a: w.mul_unchecked(&self.a), b: w.mul_unchecked(&self.b), fgl: self.fgl }
    }

    /// Conjugation by xi: a + b xi -> a^s + b^s xi.
    #[inline]
    pub fn frobenius(&self) -> Self {
        EndoElt { a: self.a.frobenius(), b: self.b.frobenius(), fgl: self.fgl }
    }

    pub fn frobenius_pow(&self, e: u8) -> Self {
        if e & 1 == 1 {
            self.frobenius()
        } else {
            *self
        }
    }

    /// a a^s - 2u b b^s as a full Witt element; its zeta part always vanishes.
    pub fn det_witt(&self) -> WittApprox {
        let two_u = (2 * self.fgl.u()) as u64;
        let aa = self.a.mul_unchecked(&self.a.frobenius());
        let bb = self.b.mul_unchecked(&self.b.frobenius());
        aa.sub_unchecked(&bb.scale(two_u))
    }

    pub fn det(&self) -> u64 {
        let d = self.det_witt();
        assert_eq!(d.a1(), 0, "determinant has a nonzero zeta part");
        d.a0()
    }

    pub fn is_unit(&self) -> bool {
        self.a.is_unit()
    }

    pub fn inv(&self) -> Result<Self> {
        let d = self.det();
        if d & 1 == 0 {
            return Err(MoravaError::NotAUnit);
        }
        let di = inv_odd(d);
        Ok(EndoElt { a: self.a.frobenius().scale(di), b: self.b.neg().scale(di), fgl: self.fgl })
    }

    pub(crate) fn inv_unchecked(&self) -> Self {
        self.inv().expect("unit")
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = *self;
        let mut acc = Self::one(self.fgl, self.prec());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            base = base.mul_unchecked(&base);
            e >>= 1;
        }
        acc
    }

    /// Largest i with x = 1 mod xi^i, as min(2 v(a-1), 2 v(b) + 1).
    pub fn filtration_level(&self) -> Result<Level> {
        if !self.is_unit() {
            return Err(MoravaError::NotAUnit);
        }
        let n = self.prec();
        let am1 = self.a.sub_unchecked(&WittApprox::one(n));
        let va = val2_residue(am1.a0(), n).min(val2_residue(am1.a1(), n));
        let vb = self.b.val2();
        let bound = (2 * va).min(2 * vb + 1);
        let cap = 2 * n - 1;
        Ok(Level { level: bound.min(cap), lower_bound: bound >= cap })
    }

    pub fn reduce(&self, prec: u32) -> Result<Self> {
        Ok(EndoElt { a: self.a.reduce(prec)?, b: self.b.reduce(prec)?, fgl: self.fgl })
    }

    /// Named elements: i = pi^-1(1 - eps xi), j = pi^-1(1 - omega^2 eps xi),
    /// k = pi^-1(1 - omega eps xi), alpha_t = t alpha t^-1 alpha^-1.
    pub fn standard(name: &str, fgl: Fgl, prec: u32) -> Result<Self> {
        if prec < 3 {
            return Err(MoravaError::InsufficientPrecision { needed: 3, have: prec });
        }
        let omega = WittApprox::zeta(prec);
        let pi_inv = WittApprox::pi(prec).inv()?;
        let eps = fgl.eps(prec);
        let one = WittApprox::one(prec);
        let quat = |c: WittApprox| EndoElt { a: pi_inv, b: pi_inv.mul_unchecked(&c).mul_unchecked(&eps).neg(), fgl };
        let commutator = |t: &str| -> Result<Self> {
            let t = Self::standard(t, fgl, prec)?;
            let a = Self::scalar(WittApprox::alpha(prec), fgl);
            Ok(t.mul_unchecked(&a).mul_unchecked(&t.inv()?).mul_unchecked(&a.inv()?))
        };
        match name {
            "i" => Ok(quat(one)),
            "j" => Ok(quat(omega.mul_unchecked(&omega))),
            "k" => Ok(quat(omega)),
            "omega" => Ok(Self::scalar(omega, fgl)),
            "alpha" => Ok(Self::scalar(WittApprox::alpha(prec), fgl)),
            "pi" => Ok(Self::scalar(WittApprox::pi(prec), fgl)),
            "eps" => Ok(Self::scalar(eps, fgl)),
            "alpha_i" => commutator("i"),
            "alpha_j" => commutator("j"),
            "alpha_k" => commutator("k"),
            _ => Err(MoravaError::UnknownName(name.to_string())),
        }
    }

    /// The isomorphism S_2(elliptic) -> S_2(Honda), a + b xi_E -> a + b alpha xi_H.
    pub fn iso_he(&self) -> Result<Self> {
        if self.fgl != Fgl::Elliptic {
            return Err(MoravaError::WrongTag);
        }
        let alpha = WittApprox::alpha(self.prec());
        Ok(EndoElt { a: self.a, b: self.b.mul_unchecked(&alpha), fgl: Fgl::Honda })
    }
}

impl std::ops::Mul for EndoElt {
    type Output = EndoElt;
    fn mul(self, rhs: Self) -> Self {
        self.try_mul(&rhs).expect("mismatched endomorphisms")
    }
}

impl std::ops::Add for EndoElt {
    type Output = EndoElt;
    fn add(self, rhs: Self) -> Self {
        self.try_add(&rhs).expect("mismatched endomorphisms")
    }
}

impl std::ops::Sub for EndoElt {
    type Output = EndoElt;
    fn sub(self, rhs: Self) -> Self {
        self.try_sub(&rhs).expect("mismatched endomorphisms")
    }
}

impl std::ops::Neg for EndoElt {
    type Output = EndoElt;
    fn neg(self) -> Self {
        EndoElt::neg(&self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn st(name: &str, fgl: Fgl) -> EndoElt {
        EndoElt::standard(name, fgl, 8).unwrap()
    }

    #[test]
    fn xi_relations() {
        for fgl in Fgl::ALL {
            let xi = EndoElt::xi(fgl, 8);
            let w = EndoElt::scalar(WittApprox::new(3, 5, 8), fgl);
            assert_eq!(xi * w, EndoElt::scalar(WittApprox::new(3, 5, 8).frobenius(), fgl) * xi);
            assert_eq!(xi * xi, EndoElt::from_int(2 * fgl.u(), fgl, 8));
            assert_eq!(xi.det(), (-2 * fgl.u()) as u64 & 0xff);
            assert_eq!(xi.inv(), Err(MoravaError::NotAUnit));
        }
    }

    #[test]
    fn quaternion_table() {
        for fgl in Fgl::ALL {
            let (i, j, k) = (st("i", fgl), st("j", fgl), st("k", fgl));
            let m1 = EndoElt::from_int(-1, fgl, 8);
            assert_eq!(i * i, m1);
            assert_eq!(j * j, m1);
            assert_eq!(k * k, m1);
            assert_eq!(i * j, k);
            assert_eq!(j * k, i);
            assert_eq!(k * i, j);
            assert_eq!(j * i, -k);
            assert_eq!(i.det(), 1);
            assert_eq!(i.inv().unwrap(), -i);
        }
    }

    #[test]
    fn omega_identities() {
        for fgl in Fgl::ALL {
            let (i, j, k, w) = (st("i", fgl), st("j", fgl), st("k", fgl), st("omega", fgl));
            let one = EndoElt::one(fgl, 8);
            // -2 omega = 1 + i + j + k
            assert_eq!(w * EndoElt::from_int(-2, fgl, 8), one + i + j + k);
            let wi = w.inv().unwrap();
            assert_eq!(w * i * wi, j);
            assert_eq!(w * j * wi, k);
            assert_eq!(w * k * wi, i);
            assert_eq!(w.pow(3), one);
        }
    }

    #[test]
    fn determinants() {
        for fgl in Fgl::ALL {
            assert_eq!(st("pi", fgl).det(), 3);
            assert_eq!(st("alpha", fgl).det(), 0xff);
        }
    }

    #[test]
    fn levels() {
        let fgl = Fgl::Honda;
        assert_eq!(EndoElt::from_int(-1, fgl, 8).filtration_level().unwrap().level, 2);
        assert_eq!(st("alpha", fgl).filtration_level().unwrap().level, 2);
        // 1 + xi^3 u = 1 + 2u' xi with u' a unit
        let x = EndoElt::new(WittApprox::one(8), WittApprox::new(2, 2, 8), fgl).unwrap();
        assert_eq!(x.filtration_level().unwrap(), Level { level: 3, lower_bound: false });
        let one = EndoElt::one(fgl, 8).filtration_level().unwrap();
        assert_eq!(one, Level { level: 15, lower_bound: true });
        assert_eq!(EndoElt::xi(fgl, 8).filtration_level(), Err(MoravaError::NotAUnit));
    }

    #[test]
    fn isomorphism_fixes_alpha() {
        let a = st("alpha", Fgl::Elliptic);
        assert_eq!(a.iso_he().unwrap(), st("alpha", Fgl::Honda));
        assert_eq!(EndoElt::one(Fgl::Elliptic, 8).iso_he().unwrap(), EndoElt::one(Fgl::Honda, 8));
        assert_eq!(st("i", Fgl::Honda).iso_he(), Err(MoravaError::WrongTag));
    }

    #[test]
    fn alpha_tau_definition() {
        for fgl in Fgl::ALL {
            let i = st("i", fgl);
            let a = st("alpha", fgl);
            let expect = i * a * i.inv().unwrap() * a.inv().unwrap();
            assert_eq!(st("alpha_i", fgl), expect);
            assert_eq!(st("alpha_i", fgl).det(), 1);
        }
    }
}
