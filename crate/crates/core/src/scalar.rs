//! Exact Gaussian rationals `a + b·i` with `a, b ∈ ℚ`.
//!
//! Every coefficient handled by the toolkit lives here. Both parts are kept
//! in lowest terms with a positive denominator, so structural equality is
//! mathematical equality.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::ParseError;
use crate::rational::Rat;
use crate::text::split_top_level;

/// An element of ℚ(i).
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Scalar {
    re: Rat,
    im: Rat,
}

impl Scalar {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        Scalar {
            re: Rat::from_big(re),
            im: Rat::from_big(im),
        }
    }

    pub fn zero() -> Self {
        Scalar::default()
    }

    pub fn one() -> Self {
        Scalar::from_int(1)
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Scalar {
            re: Rat::zero(),
            im: Rat::one(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Scalar {
            re: Rat::int(n),
            im: Rat::zero(),
        }
    }

    /// `num/den` as a real scalar. Panics if `den == 0`.
    pub fn from_frac(num: i64, den: i64) -> Self {
        Scalar {
            re: Rat::frac(num, den),
            im: Rat::zero(),
        }
    }

    pub fn from_rational(re: BigRational) -> Self {
        Scalar {
            re: Rat::from_big(re),
            im: Rat::zero(),
        }
    }

    fn real(re: Rat) -> Self {
        Scalar { re, im: Rat::zero() }
    }

    pub fn re(&self) -> BigRational {
        self.re.to_big()
    }

    pub fn im(&self) -> BigRational {
        self.im.to_big()
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        Scalar {
            re: self.re.clone(),
            im: self.im.neg(),
        }
    }

    /// `|z|² = a² + b²`.
    pub fn norm_sqr(&self) -> BigRational {
        self.norm_sqr_rat().to_big()
    }

    fn norm_sqr_rat(&self) -> Rat {
        self.re.mul(&self.re).add(&self.im.mul(&self.im))
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.im.is_zero() {
            return self.re.recip().map(Scalar::real);
        }
        let n = self.norm_sqr_rat();
        Some(Scalar {
            re: self.re.div(&n)?,
            im: self.im.div(&n)?.neg(),
        })
    }

    /// Sign of a real scalar: -1, 0 or 1. `None` if the imaginary part is nonzero.
    pub fn real_sign(&self) -> Option<i32> {
        if !self.im.is_zero() {
            return None;
        }
        Some(self.re.signum() as i32)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Scalar::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// True when the literal needs parentheses to be used as a factor.
    pub(crate) fn is_compound(&self) -> bool {
        !self.re.is_zero() && !self.im.is_zero()
    }
}

fn fmt_rational(q: &Rat) -> String {
    let (n, d) = q.parts();
    if q.is_integer() {
        n
    } else {
        format!("{n}/{d}")
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let im_part = |im: &Rat| -> String {
            if im.is_one() {
                "i".to_string()
            } else if im.neg().is_one() {
                "-i".to_string()
            } else {
                format!("{}*i", fmt_rational(im))
            }
        };
        match (self.re.is_zero(), self.im.is_zero()) {
            (true, true) => write!(f, "0"),
            (false, true) => write!(f, "{}", fmt_rational(&self.re)),
            (true, false) => write!(f, "{}", im_part(&self.im)),
            (false, false) => {
                let im = im_part(&self.im);
                if im.starts_with('-') {
                    write!(f, "{}{}", fmt_rational(&self.re), im)
                } else {
                    write!(f, "{}+{}", fmt_rational(&self.re), im)
                }
            }
        }
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    let valid = |p: &str| !p.is_empty() && p.chars().all(|c| c.is_ascii_digit());
    match s.split_once('/') {
        Some((n, d)) => {
            let (n, d) = (n.trim(), d.trim());
            if !valid(n) || !valid(d) {
                return None;
            }
            let d: BigInt = d.parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n.parse().ok()?, d))
        }
        None => {
            if !valid(s) {
                return None;
            }
            Some(BigRational::from_integer(s.parse().ok()?))
        }
    }
}

/// Parses one unsigned summand: `p`, `p/q`, `i`, `p/q*i`, `p/q i`, `3i`, `(…)`.
fn parse_unsigned_term(s: &str) -> Option<Scalar> {
    let s = s.trim();
    if let Some(inner) = s.strip_prefix('(').and_then(|r| r.strip_suffix(')')) {
        return inner.parse().ok();
    }
    if s == "i" {
        return Some(Scalar::i());
    }
    if let Some(body) = s.strip_suffix('i') {
        let body = body.trim_end();
        let body = body.strip_suffix('*').unwrap_or(body).trim();
        let q = parse_rational(body)?;
        return Some(Scalar::new(BigRational::zero(), q));
    }
    parse_rational(s).map(Scalar::from_rational)
}

impl FromStr for Scalar {
    type Err = ParseError;

    /// Literal syntax: `p/q`, `p`, `p/q*i`, `i`, and signed sums like `1/2+3i`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || ParseError::new(0, format!("invalid scalar literal `{s}`"));
        let terms = split_top_level(s, &['+', '-']);
        if terms.is_empty() {
            return Err(bad());
        }
        let mut acc = Scalar::zero();
        for (negative, term) in terms {
            let v = parse_unsigned_term(term).ok_or_else(bad)?;
            if negative {
                acc -= v;
            } else {
                acc += v;
            }
        }
        Ok(acc)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl Zero for Scalar {
    fn zero() -> Self {
        Scalar::default()
    }
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
}

impl One for Scalar {
    fn one() -> Self {
        Scalar::from_int(1)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, o: &Scalar) -> Scalar {
        Scalar {
            re: self.re.add(&o.re),
            im: self.im.add(&o.im),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, o: &Scalar) -> Scalar {
        Scalar {
            re: self.re.sub(&o.re),
            im: self.im.sub(&o.im),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, o: &Scalar) -> Scalar {
        if self.im.is_zero() && o.im.is_zero() {
            return Scalar::real(self.re.mul(&o.re));
        }
        Scalar {
            re: self.re.mul(&o.re).sub(&self.im.mul(&o.im)),
            im: self.re.mul(&o.im).add(&self.im.mul(&o.re)),
        }
    }
}

impl<'a> Div<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    /// Panics on division by zero, like the integer types.
    fn div(self, o: &Scalar) -> Scalar {
        let inv = o.inv().expect("division by zero scalar");
        Mul::mul(self, &inv)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            re: self.re.neg(),
            im: self.im.neg(),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: Scalar) -> Scalar { (&self).$m(&o) }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, o: &Scalar) -> Scalar { (&self).$m(o) }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl AddAssign<Scalar> for Scalar {
    fn add_assign(&mut self, o: Scalar) {
        *self += &o;
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, o: &Scalar) {
        self.re = self.re.add(&o.re);
        if !o.im.is_zero() {
            self.im = self.im.add(&o.im);
        }
    }
}

impl SubAssign<Scalar> for Scalar {
    fn sub_assign(&mut self, o: Scalar) {
        self.re = self.re.sub(&o.re);
        if !o.im.is_zero() {
            self.im = self.im.sub(&o.im);
        }
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, o: &Scalar) {
        *self = &*self * o;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn s(x: &str) -> Scalar {
        x.parse().unwrap()
    }

    #[test]
    fn literal_forms() {
        assert_eq!(s("3"), Scalar::from_int(3));
        assert_eq!(s("-3/6"), Scalar::from_frac(-1, 2));
        assert_eq!(s("i"), Scalar::i());
        assert_eq!(s("1/2*i"), &Scalar::from_frac(1, 2) * &Scalar::i());
        assert_eq!(
            s("1/2+3i"),
            &Scalar::from_frac(1, 2) + &(&Scalar::from_int(3) * &Scalar::i())
        );
        assert_eq!(s("-i"), -Scalar::i());
        assert_eq!(s("(1+i)"), &Scalar::one() + &Scalar::i());
    }

    #[test]
    fn rejects_garbage() {
        for bad in ["", "1/0", "x", "1//2", "2j", "1+"] {
            assert!(bad.parse::<Scalar>().is_err(), "{bad} parsed");
        }
    }

    #[test]
    fn display_round_trips() {
        for lit in ["0", "7", "-2/3", "i", "-i", "5/4*i", "1-i", "-1/2+3*i"] {
            let v = s(lit);
            assert_eq!(s(&v.to_string()), v, "{lit}");
        }
    }

    #[test]
    fn i_squared_is_minus_one() {
        assert_eq!(&Scalar::i() * &Scalar::i(), Scalar::from_int(-1));
    }

    #[test]
    fn inverse_of_gaussian() {
        let z = s("3+4i");
        let w = z.inv().unwrap();
        assert_eq!(&z * &w, Scalar::one());
        assert_eq!(w, s("3/25-4/25*i"));
        assert!(Scalar::zero().inv().is_none());
    }
}
