//! Scalar arithmetic over the two supported principal ideal rings.
//!
//! Ring values are stored as [`BigInt`]. Over `Z/m` every value handed out by
//! this module is the canonical residue in `0..m`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

/// Base ring of a matrix or module.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", try_from = "RingRepr")]
pub enum Ring {
    #[serde(rename = "Z")]
    Integers,
    #[serde(rename = "Zmod")]
    IntegersMod {
        m: u64,
    },
}

#[derive(Deserialize)]
#[serde(tag = "kind")]
enum RingRepr {
    #[serde(rename = "Z")]
    Integers,
    #[serde(rename = "Zmod")]
    IntegersMod { m: u64 },
}

impl TryFrom<RingRepr> for Ring {
    type Error = crate::Error;

    fn try_from(r: RingRepr) -> crate::Result<Ring> {
        match r {
            RingRepr::Integers => Ok(Ring::Integers),
            RingRepr::IntegersMod { m } => Ring::zmod(m),
        }
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Integers => write!(f, "Z"),
            Ring::IntegersMod { m } => write!(f, "Zmod:{m}"),
        }
    }
}

impl std::str::FromStr for Ring {
    type Err = crate::Error;

    /// Parses `Z` or `Zmod:<m>`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s == "Z" {
            return Ok(Ring::Integers);
        }
        if let Some(rest) = s.strip_prefix("Zmod:") {
            let m: u64 = rest
                .parse()
                .map_err(|_| crate::Error::Invalid(format!("bad modulus in ring `{s}`")))?;
            return Ring::zmod(m);
        }
        Err(crate::Error::Invalid(format!("unknown ring `{s}` (expected Z or Zmod:<m>)")))
    }
}

/// Output of [`Ring::bezout`]: a determinant-one transform sending `(a, b)` to `(g, 0)`.
#[derive(Clone, Debug)]
pub struct Bezout {
    pub gcd: BigInt,
    pub s: BigInt,
    pub t: BigInt,
    pub u: BigInt,
    pub v: BigInt,
}

impl Ring {
    pub fn zmod(m: u64) -> crate::Result<Ring> {
        if m < 2 {
            return Err(crate::Error::Invalid(format!("modulus must be at least 2, got {m}")));
        }
        Ok(Ring::IntegersMod { m })
    }

    pub fn modulus(&self) -> Option<u64> {
        match self {
            Ring::Integers => None,
            Ring::IntegersMod { m } => Some(*m),
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Ring::IntegersMod { .. })
    }

    fn m_big(&self) -> Option<BigInt> {
        self.modulus().map(BigInt::from)
    }

    pub fn reduce(&self, x: BigInt) -> BigInt {
        match self {
            Ring::Integers => x,
            Ring::IntegersMod { m } => x.mod_floor(&BigInt::from(*m)),
        }
    }

    pub fn from_i64(&self, x: i64) -> BigInt {
        self.reduce(BigInt::from(x))
    }

    pub fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        self.reduce(a + b)
    }

    pub fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        self.reduce(a - b)
    }

    pub fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        self.reduce(a * b)
    }

    pub fn neg(&self, a: &BigInt) -> BigInt {
        self.reduce(-a)
    }

    pub fn is_zero(&self, a: &BigInt) -> bool {
        self.reduce(a.clone()).is_zero()
    }

    /// Pivot size: absolute value over `Z`, canonical residue over `Z/m`.
    pub fn size(&self, a: &BigInt) -> BigInt {
        match self {
            Ring::Integers => a.abs(),
            Ring::IntegersMod { .. } => self.reduce(a.clone()),
        }
    }

    pub fn is_unit(&self, a: &BigInt) -> bool {
        match self {
            Ring::Integers => a.abs().is_one(),
            Ring::IntegersMod { m } => self.reduce(a.clone()).gcd(&BigInt::from(*m)).is_one(),
        }
    }

    /// Returns `q` with `a * q = b`, if one exists.
    pub fn divide(&self, a: &BigInt, b: &BigInt) -> Option<BigInt> {
        match self {
            Ring::Integers => {
                if a.is_zero() {
                    return b.is_zero().then(BigInt::zero);
                }
                let (q, r) = b.div_rem(a);
                r.is_zero().then_some(q)
            }
            Ring::IntegersMod { .. } => {
                let m = self.m_big().unwrap();
                let a = self.reduce(a.clone());
                let b = self.reduce(b.clone());
                let e = a.extended_gcd(&m);
                if !(&b % &e.gcd).is_zero() {
                    return None;
                }
                Some(self.reduce(e.x * (b / e.gcd)))
            }
        }
    }

    pub fn divides(&self, a: &BigInt, b: &BigInt) -> bool {
        self.divide(a, b).is_some()
    }

    /// Determinant-one 2x2 transform `[[s, t], [u, v]]` with `s a + t b = g`,
    /// `u a + v b = 0`. At least one of `a`, `b` must be nonzero.
    pub fn bezout(&self, a: &BigInt, b: &BigInt) -> Bezout {
        let a = self.reduce(a.clone());
        let b = self.reduce(b.clone());
        let e = a.extended_gcd(&b);
        let g = e.gcd;
        debug_assert!(!g.is_zero());
        let u = -(&b / &g);
        let v = &a / &g;
        Bezout {
            gcd: self.reduce(g),
            s: self.reduce(e.x),
            t: self.reduce(e.y),
            u: self.reduce(u),
            v: self.reduce(v),
        }
    }

    /// Canonical generator of the ideal `(a)` together with a unit `w` such that
    /// `w * a` equals it. Over `Z` the generator is `|a|`; over `Z/m` it is
    /// `gcd(a, m)`, with the zero ideal represented by `0`.
    pub fn normalize(&self, a: &BigInt) -> (BigInt, BigInt) {
        match self {
            Ring::Integers => {
                if a.is_negative() {
                    (-a, -BigInt::one())
                } else {
                    (a.clone(), BigInt::one())
                }
            }
            Ring::IntegersMod { .. } => {
                let m = self.m_big().unwrap();
                let a = self.reduce(a.clone());
                if a.is_zero() {
                    return (BigInt::zero(), BigInt::one());
                }
                let g = a.gcd(&m);
                let a1 = &a / &g;
                let m1 = &m / &g;
                let base = if m1.is_one() {
                    BigInt::zero()
                } else {
                    a1.extended_gcd(&m1).x.mod_floor(&m1)
                };
                let mut w = base;
                while !w.gcd(&m).is_one() {
                    w += &m1;
                }
                debug_assert_eq!(self.mul(&w, &a), self.reduce(g.clone()));
                (self.reduce(g), self.reduce(w))
            }
        }
    }

    pub fn unit_inverse(&self, w: &BigInt) -> BigInt {
        match self {
            Ring::Integers => w.clone(),
            Ring::IntegersMod { .. } => {
                let m = self.m_big().unwrap();
                let e = self.reduce(w.clone()).extended_gcd(&m);
                debug_assert!(e.gcd.is_one());
                self.reduce(e.x)
            }
        }
    }

    /// Generator of the annihilator ideal `{x : a x = 0}`.
    pub fn annihilator(&self, a: &BigInt) -> BigInt {
        match self {
            Ring::Integers => {
                if a.is_zero() {
                    BigInt::one()
                } else {
                    BigInt::zero()
                }
            }
            Ring::IntegersMod { .. } => {
                let m = self.m_big().unwrap();
                let g = self.reduce(a.clone()).gcd(&m);
                self.reduce(&m / g)
            }
        }
    }

    /// Number of elements of `R/(d)`, or `None` when infinite.
    pub fn quotient_order(&self, d: &BigInt) -> Option<BigInt> {
        match self {
            Ring::Integers => (!d.is_zero()).then(|| d.abs()),
            Ring::IntegersMod { .. } => {
                let m = self.m_big().unwrap();
                Some(self.reduce(d.clone()).gcd(&m))
            }
        }
    }

    /// Reduction of a coordinate living in `R/(d)` to its canonical representative.
    pub fn reduce_mod(&self, x: &BigInt, d: &BigInt) -> BigInt {
        match self {
            Ring::Integers => {
                if d.is_zero() {
                    x.clone()
                } else {
                    x.mod_floor(&d.abs())
                }
            }
            Ring::IntegersMod { .. } => {
                let ord = self.quotient_order(d).unwrap();
                self.reduce(x.clone()).mod_floor(&ord)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn parse_and_display() {
        assert_eq!("Z".parse::<Ring>().unwrap(), Ring::Integers);
        assert_eq!("Zmod:4".parse::<Ring>().unwrap(), Ring::IntegersMod { m: 4 });
        assert!("Zmod:1".parse::<Ring>().is_err());
        assert!("Q".parse::<Ring>().is_err());
        assert_eq!(Ring::IntegersMod { m: 6 }.to_string(), "Zmod:6");
    }

    #[test]
    fn json_shape() {
        let r: Ring = serde_json::from_str(r#"{"kind":"Zmod","m":4}"#).unwrap();
        assert_eq!(r, Ring::IntegersMod { m: 4 });
        assert_eq!(serde_json::to_string(&Ring::Integers).unwrap(), r#"{"kind":"Z"}"#);
    }

    #[test]
    fn division_over_zmod() {
        let r = Ring::IntegersMod { m: 12 };
        let q = r.divide(&z(4), &z(8)).unwrap();
        assert_eq!(r.mul(&z(4), &q), z(8));
        assert!(r.divide(&z(4), &z(6)).is_none());
        let q = r.divide(&z(10), &z(4)).unwrap();
        assert_eq!(r.mul(&z(10), &q), z(4));
    }

    #[test]
    fn normalize_gives_divisor_of_modulus() {
        for m in 2..=12u64 {
            let r = Ring::IntegersMod { m };
            for a in 0..m as i64 {
                let (g, w) = r.normalize(&z(a));
                assert!(r.is_unit(&w));
                assert_eq!(r.mul(&w, &z(a)), g);
                if a != 0 {
                    assert_eq!((m as i64) % i64::try_from(&g).unwrap(), 0);
                }
            }
        }
    }

    #[test]
    fn bezout_has_unit_determinant() {
        for r in [Ring::Integers, Ring::IntegersMod { m: 8 }, Ring::IntegersMod { m: 9 }] {
            for a in -6i64..7 {
                for b in -6i64..7 {
                    let (a, b) = (r.from_i64(a), r.from_i64(b));
                    if r.is_zero(&a) && r.is_zero(&b) {
                        continue;
                    }
                    let t = r.bezout(&a, &b);
                    assert_eq!(r.add(&r.mul(&t.s, &a), &r.mul(&t.t, &b)), t.gcd);
                    assert!(r.is_zero(&r.add(&r.mul(&t.u, &a), &r.mul(&t.v, &b))));
                    let det = r.sub(&r.mul(&t.s, &t.v), &r.mul(&t.t, &t.u));
                    assert_eq!(det, r.from_i64(1));
                }
            }
        }
    }

    #[test]
    fn annihilators() {
        let r = Ring::IntegersMod { m: 4 };
        assert_eq!(r.annihilator(&z(2)), z(2));
        assert_eq!(r.annihilator(&z(0)), z(1));
        assert_eq!(r.annihilator(&z(3)), z(0));
        assert_eq!(Ring::Integers.annihilator(&z(0)), z(1));
        assert_eq!(Ring::Integers.annihilator(&z(5)), z(0));
    }
}
