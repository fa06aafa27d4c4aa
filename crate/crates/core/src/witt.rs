//! Arithmetic in W(F_4) = Z_2[zeta]/(1 + zeta + zeta^2), truncated modulo 2^N.

use std::fmt;

use crate::error::{MoravaError, Result};

pub const MAX_PREC: u32 = 64;

#[inline]
pub fn mask(prec: u32) -> u64 {
    if prec >= 64 {
        u64::MAX
    } else {
        (1u64 << prec) - 1
    }
}

/// 2-adic valuation of a residue mod 2^prec; zero maps to `prec`.
#[inline]
pub fn val2_residue(x: u64, prec: u32) -> u32 {
    let x = x & mask(prec);
    if x == 0 {
        prec
    } else {
        x.trailing_zeros().min(prec)
    }
}

/// Inverse of an odd residue mod 2^64 by Newton iteration; reduce for lower precision.
#[inline]
pub fn inv_odd(x: u64) -> u64 {
    debug_assert!(x & 1 == 1);
    let mut y = x; // correct to 3 bits
    for _ in 0..5 {
        y = y.wrapping_mul(2u64.wrapping_sub(x.wrapping_mul(y)));
    }
    y
}

/// Signed representative in (-2^(prec-1), 2^(prec-1)].
pub fn signed(x: u64, prec: u32) -> i128 {
    let x = x & mask(prec);
    if prec >= 64 {
        return x as i64 as i128;
    }
    let half = 1u64 << (prec - 1);
    if x > half {
        x as i128 - (1i128 << prec)
    } else {
        x as i128
    }
}

pub fn hex_mod(x: u64, prec: u32) -> String {
    format!("0x{:x} mod 2^{}", x & mask(prec), prec)
}

#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct WittApprox {
    a0: u64,
    a1: u64,
    prec: u32,
}

impl fmt::Debug for WittApprox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + {}z mod 2^{})", signed(self.a0, self.prec), signed(self.a1, self.prec), self.prec)
    }
}

impl fmt::Display for WittApprox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "0x{:x} + 0x{:x}*zeta mod 2^{}", self.a0, self.a1, self.prec)
    }
}

/// Names accepted by [`WittApprox::constant`].
pub const CONSTANT_NAMES: [&str; 4] = ["zeta", "pi", "sqrt_m7", "alpha"];

impl WittApprox {
    /// Builds `a0 + a1*zeta` reduced mod 2^prec. Panics if `prec` is outside 1..=64.
    pub fn new(a0: u64, a1: u64, prec: u32) -> Self {
        assert!((1..=MAX_PREC).contains(&prec), "precision {prec} out of range");
        let m = mask(prec);
        WittApprox { a0: a0 & m, a1: a1 & m, prec }
    }

    pub fn from_i64(a0: i64, a1: i64, prec: u32) -> Self {
        Self::new(a0 as u64, a1 as u64, prec)
    }

    pub fn from_int(c: i64, prec: u32) -> Self {
        Self::from_i64(c, 0, prec)
    }

    pub fn zero(prec: u32) -> Self {
        Self::new(0, 0, prec)
    }

    pub fn one(prec: u32) -> Self {
        Self::new(1, 0, prec)
    }

    pub fn zeta(prec: u32) -> Self {
        Self::new(0, 1, prec)
    }

    #[inline]
    pub fn a0(&self) -> u64 {
        self.a0
    }

    #[inline]
    pub fn a1(&self) -> u64 {
        self.a1
    }

    #[inline]
    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn is_zero(&self) -> bool {
        self.a0 == 0 && self.a1 == 0
    }

    pub fn is_one(&self) -> bool {
        self.a0 == 1 && self.a1 == 0
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.prec != other.prec {
            return Err(MoravaError::PrecisionMismatch(self.prec, other.prec));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.sub_unchecked(other))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    #[inline]
    pub(crate) fn add_unchecked(&self, o: &Self) -> Self {
        let m = mask(self.prec);
        WittApprox { a0: self.a0.wrapping_add(o.a0) & m, a1: self.a1.wrapping_add(o.a1) & m, prec: self.prec }
    }

    #[inline]
    pub(crate) fn sub_unchecked(&self, o: &Self) -> Self {
        let m = mask(self.prec);
        WittApprox { a0: self.a0.wrapping_sub(o.a0) & m, a1: self.a1.wrapping_sub(o.a1) & m, prec: self.prec }
    }

    /// (a0 + a1 z)(b0 + b1 z) with z^2 = -1 - z.
    #[inline]
    pub(crate) fn mul_unchecked(&self, o: &Self) -> Self {
        let m = mask(self.prec);
        let p00 = self.a0.wrapping_mul(o.a0);
        let p11 = self.a1.wrapping_mul(o.a1);
        let cross = self.a0.wrapping_mul(o.a1).wrapping_add(self.a1.wrapping_mul(o.a0));
        WittApprox { a0: p00.wrapping_sub(p11) & m, a1: cross.wrapping_sub(p11) & m, prec: self.prec }
    }

    pub fn neg(&self) -> Self {
        let m = mask(self.prec);
        WittApprox { a0: self.a0.wrapping_neg() & m, a1: self.a1.wrapping_neg() & m, prec: self.prec }
    }

    pub fn scale(&self, c: u64) -> Self {
        let m = mask(self.prec);
        WittApprox { a0: self.a0.wrapping_mul(c) & m, a1: self.a1.wrapping_mul(c) & m, prec: self.prec }
    }

    /// Frobenius: zeta -> zeta^2, i.e. (a0, a1) -> (a0 - a1, -a1).
    #[inline]
    pub fn frobenius(&self) -> Self {
        let m = mask(self.prec);
        WittApprox { a0: self.a0.wrapping_sub(self.a1) & m, a1: self.a1.wrapping_neg() & m, prec: self.prec }
    }

    pub fn frobenius_pow(&self, e: u8) -> Self {
        if e & 1 == 1 {
            self.frobenius()
        } else {
            *self
        }
    }

    /// a0^2 - a0 a1 + a1^2, the rational part of x * sigma(x).
    pub fn norm(&self) -> u64 {
        let a = self.a0;
        let b = self.a1;
        a.wrapping_mul(a).wrapping_sub(a.wrapping_mul(b)).wrapping_add(b.wrapping_mul(b)) & mask(self.prec)
    }

    pub fn is_unit(&self) -> bool {
        self.norm() & 1 == 1
    }

    pub fn inv(&self) -> Result<Self> {
        let n = self.norm();
        if n & 1 == 0 {
            return Err(MoravaError::NotAUnit);
        }
        Ok(self.frobenius().scale(inv_odd(n)))
    }

    pub fn val2(&self) -> u32 {
        val2_residue(self.a0, self.prec).min(val2_residue(self.a1, self.prec))
    }

    /// Reduction to a lower precision.
    pub fn reduce(&self, prec: u32) -> Result<Self> {
        if prec > self.prec || prec == 0 {
            return Err(MoravaError::InsufficientPrecision { needed: prec, have: self.prec });
        }
        Ok(Self::new(self.a0, self.a1, prec))
    }

    /// Reinterprets the residues at another precision (lifting pads with zero bits).
    pub(crate) fn with_prec(&self, prec: u32) -> Self {
        Self::new(self.a0, self.a1, prec)
    }

    /// Exact division by 2^k; the top k bits of the result are unknown and set to zero.
    pub(crate) fn shr(&self, k: u32) -> Self {
        if k >= 64 {
            return Self::zero(self.prec);
        }
        Self::new(self.a0 >> k, self.a1 >> k, self.prec)
    }

    /// Reduction mod 2 as an element of F_4, encoded bit0 = 1-coefficient, bit1 = zeta-coefficient.
    pub fn residue_f4(&self) -> u8 {
        ((self.a0 & 1) | ((self.a1 & 1) << 1)) as u8
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = *self;
        let mut acc = Self::one(self.prec);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            base = base.mul_unchecked(&base);
            e >>= 1;
        }
        acc
    }

    pub fn sqrt_m7(prec: u32) -> Self {
        let s = sqrt_hensel((-7i64) as u64, 5, prec).expect("-7 is a square with root 5 mod 8");
        Self::new(s, 0, prec)
    }

    pub fn pi(prec: u32) -> Self {
        Self::new(1, 2, prec)
    }

    /// alpha = (1 - 2 zeta) / sqrt(-7).
    pub fn alpha(prec: u32) -> Self {
        let num = Self::from_i64(1, -2, prec);
        let s = Self::sqrt_m7(prec);
        num.mul_unchecked(&s.inv().expect("sqrt(-7) is odd"))
    }

    pub fn constant(name: &str, prec: u32) -> Result<Self> {
        if !(3..=MAX_PREC).contains(&prec) {
            return Err(MoravaError::InsufficientPrecision { needed: 3, have: prec });
        }
        match name {
            "zeta" => Ok(Self::zeta(prec)),
            "pi" => Ok(Self::pi(prec)),
            "sqrt_m7" => Ok(Self::sqrt_m7(prec)),
            "alpha" => Ok(Self::alpha(prec)),
            _ => Err(MoravaError::UnknownName(name.to_string())),
        }
    }

    /// Teichmuller lift of an F_4 digit (0, 1, zeta, zeta+1 -> 0, 1, omega, omega^2).
    pub fn teichmuller(digit: u8, prec: u32) -> Self {
        match digit & 3 {
            0 => Self::zero(prec),
            1 => Self::one(prec),
            2 => Self::zeta(prec),
            _ => Self::from_i64(-1, -1, prec),
        }
    }
}

/// The 2-adic square root of `t` congruent to `branch` mod 8, reduced mod 2^prec.
///
/// `t` is read as a 64-bit two's complement integer, so `-7i64 as u64` means -7.
/// Mod 2^prec alone there are two roots in each class mod 8; the one returned is the
/// reduction of the genuine 2-adic root, so results are coherent across precisions.
pub fn sqrt_hensel(t: u64, branch: u64, prec: u32) -> Result<u64> {
    if !(1..=MAX_PREC).contains(&prec) {
        return Err(MoravaError::InsufficientPrecision { needed: 1, have: prec });
    }
    if t & 7 != 1 {
        return Err(MoravaError::NoSquareRoot);
    }
    // s = b mod 8 forces s^2 = b^2 mod 16, which pins down the admissible classes.
    let b = branch & 7;
    if b & 1 == 0 || b.wrapping_mul(b).wrapping_sub(t) & 15 != 0 {
        return Err(MoravaError::BadBranch);
    }
    let t = t as i64 as i128 as u128;
    // s <- s - (s^2 - t) * h with h = 1/(2s); (s^2 - t) is even so halve it first.
    // Each step doubles the number of correct bits; 2^128 arithmetic leaves room above 64.
    let mut s = b as u128;
    for _ in 0..8 {
        let r = s.wrapping_mul(s).wrapping_sub(t);
        if r == 0 {
            break;
        }
        let h = inv_odd_128(s);
        s = s.wrapping_sub((r >> 1).wrapping_mul(h));
    }
    Ok((s as u64) & mask(prec))
}

fn inv_odd_128(x: u128) -> u128 {
    let mut y = x;
    for _ in 0..7 {
        y = y.wrapping_mul(2u128.wrapping_sub(x.wrapping_mul(y)));
    }
    y
}

impl std::ops::Add for WittApprox {
    type Output = WittApprox;
    fn add(self, rhs: Self) -> Self {
        self.try_add(&rhs).expect("precision mismatch")
    }
}

impl std::ops::Sub for WittApprox {
    type Output = WittApprox;
    fn sub(self, rhs: Self) -> Self {
        self.try_sub(&rhs).expect("precision mismatch")
    }
}

impl std::ops::Mul for WittApprox {
    type Output = WittApprox;
    fn mul(self, rhs: Self) -> Self {
        self.try_mul(&rhs).expect("precision mismatch")
    }
}

impl std::ops::Neg for WittApprox {
    type Output = WittApprox;
    fn neg(self) -> Self {
        WittApprox::neg(&self)
    }
}
