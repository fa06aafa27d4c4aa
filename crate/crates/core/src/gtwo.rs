//! The extended group G_2 = D_2^x / <xi^2>, elements written u * xi^e.

use std::fmt;

use crate::endo::{EndoElt, Fgl};
use crate::error::{MoravaError, Result};
use crate::witt::{mask, WittApprox};

pub const DEFAULT_ORDER_CAP: u64 = 96;

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct GElt {
    u: EndoElt,
    e: u8,
}

impl fmt::Debug for GElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, {})", self.u, self.e)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Order {
    Finite(u64),
    Unbounded,
}

pub const STANDARD_NAMES: [&str; 4] = ["bracket_1pi", "bracket_jmk", "sigma", "pi0"];

impl GElt {
    pub fn new(u: EndoElt, e: u8) -> Result<Self> {
        if !u.is_unit() {
            return Err(MoravaError::NotAUnit);
        }
        Ok(GElt { u, e: e & 1 })
    }

    pub(crate) fn from_parts(u: EndoElt, e: u8) -> Self {
        GElt { u, e: e & 1 }
    }

    pub fn from_unit(u: EndoElt) -> Result<Self> {
        Self::new(u, 0)
    }

    pub fn identity(fgl: Fgl, prec: u32) -> Self {
        GElt { u: EndoElt::one(fgl, prec), e: 0 }
    }

    pub fn unit(&self) -> EndoElt {
        self.u
    }

    pub fn flag(&self) -> u8 {
        self.e
    }

    pub fn fgl(&self) -> Fgl {
        self.u.fgl()
    }

    pub fn prec(&self) -> u32 {
        self.u.prec()
    }

    pub fn is_identity(&self) -> bool {
        self.e == 0 && self.u.is_one()
    }

    /// (u1, e1)(u2, e2) = (u1 sigma^e1(u2), e1 + e2).
    pub fn try_mul(&self, o: &Self) -> Result<Self> {
        let u = self.u.try_mul(&o.u.frobenius_pow(self.e))?;
        Ok(GElt { u, e: self.e ^ o.e })
    }

    #[inline]
    pub(crate) fn mul_unchecked(&self, o: &Self) -> Self {
        GElt { u: self.u.mul_unchecked(&o.u.frobenius_pow(self.e)), e: self.e ^ o.e }
    }

    pub fn inv(&self) -> Self {
        let ui = self.u.inv_unchecked();
        GElt { u: ui.frobenius_pow(self.e), e: self.e }
    }

    pub fn neg(&self) -> Self {
        GElt { u: self.u.neg(), e: self.e }
    }

    pub fn conj(&self, x: &Self) -> Result<Self> {
        self.try_mul(x)?.try_mul(&self.inv())
    }

    pub fn pow(&self, mut n: u64) -> Self {
        let mut base = *self;
        let mut acc = GElt::identity(self.fgl(), self.prec());
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            base = base.mul_unchecked(&base);
            n >>= 1;
        }
        acc
    }

    /// Least n <= cap with x^n = 1 at the working precision.
    pub fn order(&self, cap: u64) -> Order {
        let mut acc = *self;
        for n in 1..=cap {
            if acc.is_identity() {
                return Order::Finite(n);
            }
            acc = acc.mul_unchecked(self);
        }
        Order::Unbounded
    }

    /// Order in G_2 / {+-1}.
    pub fn proj_order(&self, cap: u64) -> Order {
        let mut acc = *self;
        for n in 1..=cap {
            if acc.is_identity() || acc.neg().is_identity() {
                return Order::Finite(n);
            }
            acc = acc.mul_unchecked(self);
        }
        Order::Unbounded
    }

    pub fn proj_equal(&self, o: &Self) -> bool {
        self == o || self.neg() == *o
    }

    /// det(u) = +-1 mod 2^N.
    pub fn is_norm_one(&self) -> bool {
        let d = self.u.det();
        let m = mask(self.prec());
        d == 1 || d == m
    }

    /// Writes x = u xi with x = a + b xi, a even, b a unit: u = b + (a / 2u_G) xi.
    ///
    /// Halving costs one bit, so the result has precision N - 1.
    pub fn from_odd(x: &EndoElt) -> Result<Self> {
        let a = x.a();
        if a.a0() & 1 != 0 || a.a1() & 1 != 0 || !x.b().is_unit() {
            return Err(MoravaError::NotOddValuation);
        }
        let n = x.prec();
        if n < 2 {
            return Err(MoravaError::InsufficientPrecision { needed: 2, have: n });
        }
        let half = a.shr(1).scale(x.fgl().u() as u64);
        let u = EndoElt::from_parts(x.b().with_prec(n - 1), half.with_prec(n - 1), x.fgl());
        Ok(GElt { u, e: 1 })
    }

    /// bracket_1pi = [1+i], bracket_jmk = [j-k], sigma = (1, 1), pi0 = (pi, 0).
    pub fn standard(name: &str, fgl: Fgl, prec: u32) -> Result<Self> {
        if prec < 3 {
            return Err(MoravaError::InsufficientPrecision { needed: 3, have: prec });
        }
        match name {
            "bracket_1pi" => {
                let i = EndoElt::standard("i", fgl, prec + 1)?;
                Self::from_odd(&(EndoElt::one(fgl, prec + 1) + i))
            }
            "bracket_jmk" => {
                let j = EndoElt::standard("j", fgl, prec + 1)?;
                let k = EndoElt::standard("k", fgl, prec + 1)?;
                Self::from_odd(&(j - k))
            }
            "sigma" => Ok(GElt { u: EndoElt::one(fgl, prec), e: 1 }),
            "pi0" => Ok(GElt { u: EndoElt::standard("pi", fgl, prec)?, e: 0 }),
            _ => Err(MoravaError::UnknownName(name.to_string())),
        }
    }

    /// Any name from `endo::STANDARD_NAMES` (as a flag-0 element) or from `STANDARD_NAMES`.
    pub fn named(name: &str, fgl: Fgl, prec: u32) -> Result<Self> {
        match name {
            "e" | "1" => Ok(Self::identity(fgl, prec)),
            "sigma" | "bracket_1pi" | "bracket_jmk" | "pi0" => Self::standard(name, fgl, prec),
            "-1" => Ok(Self::identity(fgl, prec).neg()),
            _ => Self::from_unit(EndoElt::standard(name, fgl, prec)?),
        }
    }

    pub fn reduce(&self, prec: u32) -> Result<Self> {
        Ok(GElt { u: self.u.reduce(prec)?, e: self.e })
    }

    /// Coordinates as (a0, a1, b0, b1, e), used as a hashing key.
    pub fn key(&self) -> (u64, u64, u64, u64, u8) {
        (self.u.a().a0(), self.u.a().a1(), self.u.b().a0(), self.u.b().a1(), self.e)
    }

    /// Key of the class modulo {+-1}.
    pub fn proj_key(&self) -> (u64, u64, u64, u64, u8) {
        self.key().min(self.neg().key())
    }

    pub fn scalar(w: WittApprox, fgl: Fgl) -> Result<Self> {
        Self::from_unit(EndoElt::scalar(w, fgl))
    }
}

impl std::ops::Mul for GElt {
    type Output = GElt;
    fn mul(self, rhs: Self) -> Self {
        self.try_mul(&rhs).expect("mismatched group elements")
    }
}
