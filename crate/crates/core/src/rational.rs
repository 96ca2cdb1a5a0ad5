//! Exact rationals with an inline fast path.
//!
//! A value is stored as `Small(num, den)` whenever both fit in `i64` (lowest
//! terms, `den > 0`), and as a `BigRational` otherwise, so the derived
//! equality and hash agree with mathematical equality. Small operands are
//! combined in `i128`, which cannot overflow for a single sum or product.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive};

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub(crate) enum Rat {
    Small(i64, i64),
    Big(BigRational),
}

impl Default for Rat {
    fn default() -> Self {
        Rat::Small(0, 1)
    }
}

impl Rat {
    pub fn zero() -> Self {
        Rat::Small(0, 1)
    }

    pub fn one() -> Self {
        Rat::Small(1, 1)
    }

    pub fn int(n: i64) -> Self {
        Rat::Small(n, 1)
    }

    /// `num/den`; panics if `den == 0`.
    pub fn frac(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Rat::from_i128(num as i128, den as i128)
    }

    fn from_i128(num: i128, den: i128) -> Self {
        let (mut n, mut d) = (num, den);
        if d < 0 {
            n = -n;
            d = -d;
        }
        let g = n.gcd(&d);
        if g > 1 {
            n /= g;
            d /= g;
        }
        match (i64::try_from(n), i64::try_from(d)) {
            (Ok(a), Ok(b)) => Rat::Small(a, b),
            _ => Rat::Big(BigRational::new_raw(BigInt::from(n), BigInt::from(d))),
        }
    }

    pub fn from_big(q: BigRational) -> Self {
        match (q.numer().to_i64(), q.denom().to_i64()) {
            (Some(a), Some(b)) => Rat::Small(a, b),
            _ => Rat::Big(q),
        }
    }

    pub fn to_big(&self) -> BigRational {
        match self {
            Rat::Small(a, b) => BigRational::new_raw(BigInt::from(*a), BigInt::from(*b)),
            Rat::Big(q) => q.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Rat::Small(0, _))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Rat::Small(1, 1))
    }

    pub fn signum(&self) -> Ordering {
        match self {
            Rat::Small(a, _) => a.cmp(&0),
            Rat::Big(q) => {
                if q.is_positive() {
                    Ordering::Greater
                } else if q.is_negative() {
                    Ordering::Less
                } else {
                    Ordering::Equal
                }
            }
        }
    }

    pub fn neg(&self) -> Self {
        match self {
            Rat::Small(a, b) => Rat::from_i128(-(*a as i128), *b as i128),
            Rat::Big(q) => Rat::from_big(-q.clone()),
        }
    }

    pub fn add(&self, o: &Rat) -> Rat {
        match (self, o) {
            (Rat::Small(0, _), _) => o.clone(),
            (_, Rat::Small(0, _)) => self.clone(),
            (Rat::Small(a, b), Rat::Small(c, d)) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                if b == d {
                    Rat::from_i128(a + c, b)
                } else {
                    Rat::from_i128(a * d + c * b, b * d)
                }
            }
            _ => Rat::from_big(self.to_big() + o.to_big()),
        }
    }

    pub fn sub(&self, o: &Rat) -> Rat {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Rat) -> Rat {
        match (self, o) {
            (Rat::Small(0, _), _) | (_, Rat::Small(0, _)) => Rat::zero(),
            (Rat::Small(1, 1), _) => o.clone(),
            (_, Rat::Small(1, 1)) => self.clone(),
            (Rat::Small(a, b), Rat::Small(c, d)) => {
                let (a, b, c, d) = (*a as i128, *b as i128, *c as i128, *d as i128);
                Rat::from_i128(a * c, b * d)
            }
            _ => Rat::from_big(self.to_big() * o.to_big()),
        }
    }

    /// `1/self`; `None` for zero.
    pub fn recip(&self) -> Option<Rat> {
        match self {
            Rat::Small(0, _) => None,
            Rat::Small(a, b) => Some(Rat::from_i128(*b as i128, *a as i128)),
            Rat::Big(q) => Some(Rat::from_big(q.recip())),
        }
    }

    pub fn div(&self, o: &Rat) -> Option<Rat> {
        o.recip().map(|r| self.mul(&r))
    }

    /// Numerator and denominator as decimal strings.
    pub fn parts(&self) -> (String, String) {
        match self {
            Rat::Small(a, b) => (a.to_string(), b.to_string()),
            Rat::Big(q) => (q.numer().to_string(), q.denom().to_string()),
        }
    }

    pub fn is_integer(&self) -> bool {
        match self {
            Rat::Small(_, b) => *b == 1,
            Rat::Big(q) => q.denom().is_one(),
        }
    }
}
