//! Exact arithmetic over `F_p` and the two local rings `F_p[e]/e^2`, `Z/p^2`.
//!
//! Every local ring here has maximal ideal generated by a distinguished
//! element `alpha` with `alpha^2 = 0`, so each element is written uniquely as
//! `a + alpha * b` with digits `a, b` in `0..p`. Elements are stored as the
//! canonical code `a + p * b`; for `Z/p^2` that code is the residue itself.

mod matrix;
mod smith;
mod solve;

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

pub use matrix::Matrix;
pub use smith::{smith_over_z, IntSmith};
pub use solve::{howell_solve, NormalForm, Solution};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RingKind {
    /// The prime field `F_p`.
    FieldFp,
    /// Dual numbers `F_p[e]/e^2`.
    FpEps,
    /// Integers modulo `p^2`.
    ZModP2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct RingSpec {
    pub kind: RingKind,
    pub p: u32,
}

pub fn is_prime(p: u32) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub fn make_ring(kind: RingKind, p: u32) -> Result<RingSpec> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    // keeps every product of two codes inside u32
    if p > 251 {
        return Err(Error::Invalid(format!("prime {p} too large")));
    }
    Ok(RingSpec { kind, p })
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            RingKind::FieldFp => write!(f, "F{}", self.p),
            RingKind::FpEps => write!(f, "F{}[e]", self.p),
            RingKind::ZModP2 => write!(f, "Z/{}", self.p * self.p),
        }
    }
}

impl RingSpec {
    pub fn field(p: u32) -> Result<Self> {
        make_ring(RingKind::FieldFp, p)
    }

    pub fn fp_eps(p: u32) -> Result<Self> {
        make_ring(RingKind::FpEps, p)
    }

    pub fn zp2(p: u32) -> Result<Self> {
        make_ring(RingKind::ZModP2, p)
    }

    pub fn is_field(&self) -> bool {
        self.kind == RingKind::FieldFp
    }

    /// The residue field `k = R/alpha`.
    pub fn residue_field(&self) -> RingSpec {
        RingSpec { kind: RingKind::FieldFp, p: self.p }
    }

    /// Number of elements.
    pub fn size(&self) -> u32 {
        if self.is_field() {
            self.p
        } else {
            self.p * self.p
        }
    }

    /// log_p of the size.
    pub fn length(&self) -> u32 {
        if self.is_field() {
            1
        } else {
            2
        }
    }

    pub fn zero(&self) -> u32 {
        0
    }

    pub fn one(&self) -> u32 {
        1
    }

    /// The generator of the maximal ideal; zero for the field.
    pub fn alpha(&self) -> u32 {
        if self.is_field() {
            0
        } else {
            self.p
        }
    }

    pub fn scalar(&self, code: u32) -> Scalar {
        Scalar { ring: *self, code: code % self.size() }
    }

    pub fn add(&self, x: u32, y: u32) -> u32 {
        let p = self.p;
        match self.kind {
            RingKind::FieldFp => (x + y) % p,
            RingKind::ZModP2 => (x + y) % (p * p),
            RingKind::FpEps => {
                let a = (x % p + y % p) % p;
                let b = (x / p + y / p) % p;
                a + p * b
            }
        }
    }

    pub fn neg(&self, x: u32) -> u32 {
        let p = self.p;
        match self.kind {
            RingKind::FieldFp => (p - x % p) % p,
            RingKind::ZModP2 => (p * p - x) % (p * p),
            RingKind::FpEps => {
                let a = (p - x % p) % p;
                let b = (p - x / p) % p;
                a + p * b
            }
        }
    }

    pub fn sub(&self, x: u32, y: u32) -> u32 {
        self.add(x, self.neg(y))
    }

    pub fn mul(&self, x: u32, y: u32) -> u32 {
        let p = self.p;
        match self.kind {
            RingKind::FieldFp => (x * y) % p,
            RingKind::ZModP2 => (x * y) % (p * p),
            RingKind::FpEps => {
                let (a, b) = (x % p, x / p);
                let (c, d) = (y % p, y / p);
                (a * c) % p + p * ((a * d + b * c) % p)
            }
        }
    }

    /// The residue map `q: R -> k`, as a code in `0..p`.
    pub fn residue(&self, x: u32) -> u32 {
        x % self.p
    }

    /// The `alpha`-digit `b` of `x = a + alpha * b`.
    pub fn alpha_digit(&self, x: u32) -> u32 {
        if self.is_field() {
            0
        } else {
            x / self.p
        }
    }

    pub fn is_unit(&self, x: u32) -> bool {
        self.residue(x) != 0
    }

    /// 0 for units, 1 for nonzero multiples of alpha, 2 for zero.
    pub fn valuation(&self, x: u32) -> u32 {
        if x == 0 {
            2
        } else if self.is_unit(x) {
            0
        } else {
            1
        }
    }

    pub fn inv(&self, x: u32) -> Option<u32> {
        if !self.is_unit(x) {
            return None;
        }
        let p = self.p;
        let a_inv = pow_mod(x % p, p - 2, p);
        match self.kind {
            RingKind::FieldFp => Some(a_inv),
            RingKind::FpEps => {
                // (a + e b)^-1 = a^-1 - e b a^-2
                let b = x / p;
                let t = (b * a_inv % p) * a_inv % p;
                Some(a_inv + p * ((p - t) % p))
            }
            RingKind::ZModP2 => {
                // one Newton step lifts the inverse mod p to mod p^2
                let m = p * p;
                let y = a_inv;
                let e = (2 + m - (x * y) % m) % m;
                Some(y * e % m)
            }
        }
    }

    /// Some `c` with `c * b = a`, if one exists.
    pub fn div_exact(&self, a: u32, b: u32) -> Option<u32> {
        match self.valuation(b) {
            0 => Some(self.mul(a, self.inv(b)?)),
            1 => {
                if self.valuation(a) == 0 {
                    return None;
                }
                let t = self.alpha_digit(a);
                let u = self.alpha_digit(b);
                Some(self.mul(t, pow_mod(u, self.p - 2, self.p)))
            }
            _ => (a == 0).then_some(0),
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = u32> {
        0..self.size()
    }

    pub fn check_same(&self, other: &RingSpec) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::RingMismatch(*self, *other))
        }
    }
}

fn pow_mod(mut b: u32, mut e: u32, m: u32) -> u32 {
    let mut r = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    r
}

/// A ring element in canonical form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Scalar {
    pub ring: RingSpec,
    pub code: u32,
}

impl Scalar {
    pub fn residue(&self) -> Scalar {
        let k = self.ring.residue_field();
        Scalar { ring: k, code: self.ring.residue(self.code) }
    }

    pub fn is_unit(&self) -> bool {
        self.ring.is_unit(self.code)
    }

    pub fn add(&self, o: &Scalar) -> Scalar {
        Scalar { ring: self.ring, code: self.ring.add(self.code, o.code) }
    }

    pub fn mul(&self, o: &Scalar) -> Scalar {
        Scalar { ring: self.ring, code: self.ring.mul(self.code, o.code) }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.ring.kind {
            RingKind::FpEps => {
                let (a, b) = (self.code % self.ring.p, self.code / self.ring.p);
                match (a, b) {
                    (a, 0) => write!(f, "{a}"),
                    (0, b) => write!(f, "{b}e"),
                    (a, b) => write!(f, "{a}+{b}e"),
                }
            }
            _ => write!(f, "{}", self.code),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_rings() -> Vec<RingSpec> {
        let mut v = vec![];
        for p in [2, 3, 5] {
            for kind in [RingKind::FieldFp, RingKind::FpEps, RingKind::ZModP2] {
                v.push(make_ring(kind, p).unwrap());
            }
        }
        v
    }

    #[test]
    fn make_ring_examples() {
        let z4 = make_ring(RingKind::ZModP2, 2).unwrap();
        assert_eq!(z4.size(), 4);
        assert_eq!(z4.alpha(), 2);
        let f3e = make_ring(RingKind::FpEps, 3).unwrap();
        assert_eq!(f3e.alpha(), 3);
        assert_eq!(f3e.scalar(f3e.alpha()).to_string(), "1e");
        assert_eq!(make_ring(RingKind::FieldFp, 4), Err(Error::NotPrime(4)));
        assert_eq!(make_ring(RingKind::ZModP2, 1), Err(Error::NotPrime(1)));
    }

    #[test]
    fn residue_examples() {
        let z4 = make_ring(RingKind::ZModP2, 2).unwrap();
        assert_eq!(z4.residue(2), 0);
        assert_eq!(z4.residue(3), 1);
        let f3e = make_ring(RingKind::FpEps, 3).unwrap();
        // 1 + e
        assert_eq!(f3e.residue(1 + 3), 1);
    }

    #[test]
    fn residue_is_ring_hom_and_alpha_squares_to_zero() {
        for r in all_rings() {
            let k = r.residue_field();
            assert_eq!(r.mul(r.alpha(), r.alpha()), 0);
            assert_eq!(r.residue(r.alpha()), 0);
            for x in r.elements() {
                assert_eq!(r.is_unit(x), r.residue(x) != 0);
                for y in r.elements() {
                    assert_eq!(r.residue(r.mul(x, y)), k.mul(r.residue(x), r.residue(y)));
                    assert_eq!(r.residue(r.add(x, y)), k.add(r.residue(x), r.residue(y)));
                }
            }
        }
    }

    #[test]
    fn ring_axioms_exhaustive() {
        for r in all_rings() {
            for x in r.elements() {
                assert_eq!(r.add(x, r.neg(x)), 0);
                if let Some(y) = r.inv(x) {
                    assert_eq!(r.mul(x, y), 1, "{r} inverse of {x}");
                }
                for y in r.elements() {
                    assert_eq!(r.mul(x, y), r.mul(y, x));
                    for z in r.elements() {
                        assert_eq!(r.mul(x, r.add(y, z)), r.add(r.mul(x, y), r.mul(x, z)));
                        assert_eq!(r.mul(x, r.mul(y, z)), r.mul(r.mul(x, y), z));
                    }
                }
            }
        }
    }

    #[test]
    fn div_exact_matches_enumeration() {
        for r in all_rings() {
            for a in r.elements() {
                for b in r.elements() {
                    let exists = r.elements().any(|c| r.mul(c, b) == a);
                    match r.div_exact(a, b) {
                        Some(c) => assert_eq!(r.mul(c, b), a),
                        None => assert!(!exists, "{r}: {a}/{b}"),
                    }
                }
            }
        }
    }
}
