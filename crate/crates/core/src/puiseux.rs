//! Puiseux polynomials in a parameter `t`: finite sums `Σ c·t^q` with `q ∈ ℚ`
//! and Gaussian-rational coefficients, plus their fractions.
//!
//! These carry contraction families `f_t`. Negative and fractional exponents
//! are allowed; exact division goes through Laurent polynomials in `t^(1/L)`
//! where `L` is the common denominator of the exponents involved.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::ring::Ring;
use crate::scalar::Scalar;

pub type Exponent = Ratio<i64>;

/// Outcome of `t → 0⁺` on a Puiseux expression.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Limit {
    Value(Scalar),
    Diverges,
}

/// A finite Puiseux polynomial. No zero coefficients are stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct PuiseuxPoly {
    terms: BTreeMap<Exponent, Scalar>,
}

impl PuiseuxPoly {
    pub fn zero() -> Self {
        PuiseuxPoly::default()
    }

    pub fn constant(c: Scalar) -> Self {
        PuiseuxPoly::monomial(c, Exponent::zero())
    }

    /// `c·t^q`.
    pub fn monomial(c: Scalar, q: Exponent) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(q, c);
        }
        PuiseuxPoly { terms }
    }

    /// The parameter `t` itself.
    pub fn t() -> Self {
        PuiseuxPoly::monomial(Scalar::one(), Exponent::one())
    }

    /// `t^q` with unit coefficient.
    pub fn t_pow(q: Exponent) -> Self {
        PuiseuxPoly::monomial(Scalar::one(), q)
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Exponent, Scalar)>) -> Self {
        let mut p = PuiseuxPoly::zero();
        for (q, c) in terms {
            p.add_term(q, &c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, q: &Exponent) -> Scalar {
        self.terms.get(q).cloned().unwrap_or_default()
    }

    /// Lowest-order term, `None` for zero.
    pub fn lowest_term(&self) -> Option<(&Exponent, &Scalar)> {
        self.terms.iter().next()
    }

    /// If the polynomial is a constant, returns it.
    pub fn as_constant(&self) -> Option<Scalar> {
        match self.terms.len() {
            0 => Some(Scalar::zero()),
            1 => self.terms.get(&Exponent::zero()).cloned(),
            _ => None,
        }
    }

    fn add_term(&mut self, q: Exponent, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(q).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&q);
        }
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return PuiseuxPoly::zero();
        }
        PuiseuxPoly {
            terms: self.terms.iter().map(|(q, v)| (*q, v * c)).collect(),
        }
    }

    /// Multiplies by `t^q`.
    pub fn shift(&self, q: Exponent) -> Self {
        PuiseuxPoly {
            terms: self.terms.iter().map(|(e, v)| (e + q, v.clone())).collect(),
        }
    }

    /// `lim_{t→0⁺}`: the constant coefficient when every exponent is
    /// nonnegative, otherwise divergence.
    pub fn limit_at_zero(&self) -> Limit {
        match self.lowest_term() {
            None => Limit::Value(Scalar::zero()),
            Some((q, _)) if q.is_negative() => Limit::Diverges,
            Some(_) => Limit::Value(self.coeff(&Exponent::zero())),
        }
    }

    /// Common denominator of all exponents.
    fn exponent_lcm(&self) -> i64 {
        self.terms.keys().fold(1i64, |acc, q| acc.lcm(q.denom()))
    }

    /// Dense coefficients in `s = t^(1/l)` after removing the lowest power;
    /// returns `(lowest integer exponent, coefficients)`.
    fn to_laurent(&self, l: i64) -> (i64, Vec<Scalar>) {
        let ints: Vec<(i64, &Scalar)> = self
            .terms
            .iter()
            .map(|(q, c)| ((q * l).to_integer(), c))
            .collect();
        let low = ints.first().map_or(0, |(k, _)| *k);
        let high = ints.last().map_or(0, |(k, _)| *k);
        let mut dense = vec![Scalar::zero(); (high - low + 1) as usize];
        for (k, c) in ints {
            dense[(k - low) as usize] = c.clone();
        }
        (low, dense)
    }
}

impl Ring for PuiseuxPoly {
    fn zero() -> Self {
        PuiseuxPoly::zero()
    }
    fn one() -> Self {
        PuiseuxPoly::constant(Scalar::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (q, c) in &other.terms {
            out.add_term(*q, c);
        }
        out
    }
    fn minus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (q, c) in &other.terms {
            out.add_term(*q, &-c);
        }
        out
    }
    fn times(&self, other: &Self) -> Self {
        let mut out = PuiseuxPoly::zero();
        for (qa, ca) in &self.terms {
            for (qb, cb) in &other.terms {
                out.add_term(qa + qb, &(ca * cb));
            }
        }
        out
    }
    fn negate(&self) -> Self {
        PuiseuxPoly {
            terms: self.terms.iter().map(|(q, c)| (*q, -c)).collect(),
        }
    }
    fn try_div(&self, other: &Self) -> Option<Self> {
        if other.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(PuiseuxPoly::zero());
        }
        if other.terms.len() == 1 {
            let (q, c) = other.lowest_term()?;
            let inv = c.inv()?;
            return Some(self.shift(-*q).scale(&inv));
        }
        let l = self.exponent_lcm().lcm(&other.exponent_lcm());
        let (low_a, mut num) = self.to_laurent(l);
        let (low_b, den) = other.to_laurent(l);
        if num.len() < den.len() {
            return None;
        }
        let lead_inv = den.last()?.inv()?;
        let mut quot = vec![Scalar::zero(); num.len() - den.len() + 1];
        for k in (0..quot.len()).rev() {
            let c = &num[k + den.len() - 1] * &lead_inv;
            if c.is_zero() {
                continue;
            }
            for (j, d) in den.iter().enumerate() {
                num[k + j] = &num[k + j] - &(&c * d);
            }
            quot[k] = c;
        }
        if num.iter().any(|c| !c.is_zero()) {
            return None;
        }
        let shift = low_a - low_b;
        Some(PuiseuxPoly::from_terms(
            quot.into_iter()
                .enumerate()
                .map(|(k, c)| (Exponent::new(k as i64 + shift, l), c)),
        ))
    }
}

fn fmt_exponent(q: &Exponent) -> String {
    if q.is_integer() && !q.is_negative() {
        q.to_integer().to_string()
    } else {
        format!("({q})")
    }
}

impl fmt::Display for PuiseuxPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (q, c)) in self.terms.iter().enumerate() {
            let (neg, mag) = match c.real_sign() {
                Some(-1) => (true, -c),
                _ => (false, c.clone()),
            };
            if idx > 0 {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            } else if neg {
                write!(f, "-")?;
            }
            let coef = if mag.is_compound() {
                format!("({mag})")
            } else {
                mag.to_string()
            };
            if q.is_zero() {
                write!(f, "{coef}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{coef}*")?;
                }
                if q.is_one() {
                    write!(f, "t")?;
                } else {
                    write!(f, "t^{}", fmt_exponent(q))?;
                }
            }
        }
        Ok(())
    }
}

/// A quotient `num / den` of Puiseux polynomials with `den ≠ 0`.
#[derive(Clone, Debug)]
pub struct PuiseuxFrac {
    pub num: PuiseuxPoly,
    pub den: PuiseuxPoly,
}

impl PuiseuxFrac {
    /// Panics if `den` is zero.
    pub fn new(num: PuiseuxPoly, den: PuiseuxPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        match num.try_div(&den) {
            Some(q) => PuiseuxFrac {
                num: q,
                den: Ring::one(),
            },
            None => PuiseuxFrac { num, den },
        }
    }

    pub fn from_poly(p: PuiseuxPoly) -> Self {
        PuiseuxFrac {
            num: p,
            den: Ring::one(),
        }
    }

    /// `lim_{t→0⁺} num/den`. Writing `den = c·t^q·(1 + o(1))`, the limit is the
    /// `t^q` coefficient of `num` over `c`, provided `num` has no lower terms.
    pub fn limit_at_zero(&self) -> Limit {
        let (q0, c0) = self.den.lowest_term().expect("nonzero denominator");
        match self.num.lowest_term() {
            None => Limit::Value(Scalar::zero()),
            Some((q, _)) if q < q0 => Limit::Diverges,
            Some(_) => Limit::Value(&self.num.coeff(q0) / c0),
        }
    }
}

impl PartialEq for PuiseuxFrac {
    fn eq(&self, other: &Self) -> bool {
        self.num.times(&other.den) == other.num.times(&self.den)
    }
}

impl Ring for PuiseuxFrac {
    fn zero() -> Self {
        PuiseuxFrac::from_poly(PuiseuxPoly::zero())
    }
    fn one() -> Self {
        PuiseuxFrac::from_poly(Ring::one())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn plus(&self, o: &Self) -> Self {
        if self.den == o.den {
            return PuiseuxFrac::new(self.num.plus(&o.num), self.den.clone());
        }
        PuiseuxFrac::new(
            self.num.times(&o.den).plus(&o.num.times(&self.den)),
            self.den.times(&o.den),
        )
    }
    fn minus(&self, o: &Self) -> Self {
        self.plus(&o.negate())
    }
    fn times(&self, o: &Self) -> Self {
        PuiseuxFrac::new(self.num.times(&o.num), self.den.times(&o.den))
    }
    fn negate(&self) -> Self {
        PuiseuxFrac {
            num: self.num.negate(),
            den: self.den.clone(),
        }
    }
    fn try_div(&self, o: &Self) -> Option<Self> {
        if o.is_zero() {
            return None;
        }
        Some(PuiseuxFrac::new(
            self.num.times(&o.den),
            self.den.times(&o.num),
        ))
    }
}

impl fmt::Display for PuiseuxFrac {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == Ring::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

/// Exact inverse of a matrix over Puiseux polynomials, as `adj(m)/det(m)`.
pub fn invert(m: &Matrix<PuiseuxPoly>) -> Result<Matrix<PuiseuxFrac>> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch {
            expected: m.rows(),
            got: m.cols(),
        });
    }
    let det = m.det();
    if det.is_zero() {
        return Err(Error::Singular);
    }
    let adj = m.adjugate();
    Ok(adj.map(|a| PuiseuxFrac::new(a.clone(), det.clone())))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Exponent {
        Exponent::new(n, d)
    }

    fn c(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn limits() {
        let t3 = PuiseuxPoly::t_pow(q(3, 1));
        assert_eq!(t3.limit_at_zero(), Limit::Value(Scalar::zero()));
        let five = PuiseuxPoly::constant(c(5)).plus(&PuiseuxPoly::monomial(c(0), q(1, 1)));
        assert_eq!(five.limit_at_zero(), Limit::Value(c(5)));
        let div = PuiseuxPoly::t_pow(q(-1, 1)).plus(&Ring::one());
        assert_eq!(div.limit_at_zero(), Limit::Diverges);
    }

    #[test]
    fn fraction_limit_uses_lowest_denominator_term() {
        // (t^2 + 3 t^3) / (2 t^2 - t^5) -> 1/2
        let num = PuiseuxPoly::from_terms([(q(2, 1), c(1)), (q(3, 1), c(3))]);
        let den = PuiseuxPoly::from_terms([(q(2, 1), c(2)), (q(5, 1), c(-1))]);
        let f = PuiseuxFrac { num, den };
        assert_eq!(f.limit_at_zero(), Limit::Value(Scalar::from_frac(1, 2)));
        // t / t^(3/2) diverges
        let g = PuiseuxFrac {
            num: PuiseuxPoly::t(),
            den: PuiseuxPoly::t_pow(q(3, 2)),
        };
        assert_eq!(g.limit_at_zero(), Limit::Diverges);
    }

    #[test]
    fn exact_division_with_fractional_exponents() {
        // (t^(1/2) + 1)(t - 2) / (t - 2)
        let a = PuiseuxPoly::from_terms([(q(1, 2), c(1)), (q(0, 1), c(1))]);
        let b = PuiseuxPoly::from_terms([(q(1, 1), c(1)), (q(0, 1), c(-2))]);
        let prod = a.times(&b);
        assert_eq!(prod.try_div(&b), Some(a.clone()));
        assert_eq!(prod.try_div(&a), Some(b.clone()));
        let t = PuiseuxPoly::t();
        assert_eq!(a.try_div(&b.plus(&t)), None);
    }

    #[test]
    fn diagonal_inverse() {
        let d = Matrix::from_rows(vec![
            vec![PuiseuxPoly::t(), PuiseuxPoly::zero(), PuiseuxPoly::zero()],
            vec![PuiseuxPoly::zero(), PuiseuxPoly::t_pow(q(2, 1)), PuiseuxPoly::zero()],
            vec![PuiseuxPoly::zero(), PuiseuxPoly::zero(), Ring::one()],
        ]);
        let inv = invert(&d).unwrap();
        assert_eq!(inv.get(0, 0).num, PuiseuxPoly::t_pow(q(-1, 1)));
        assert_eq!(inv.get(1, 1).num, PuiseuxPoly::t_pow(q(-2, 1)));
        assert_eq!(*inv.get(2, 2), PuiseuxFrac::one());
    }

    #[test]
    fn two_by_two_block_from_the_phi2_family() {
        // [[t, t], [1, t]]: det = t^2 - t, inverse = [[t, -t], [-1, t]] / (t^2 - t)
        let t = PuiseuxPoly::t();
        let one: PuiseuxPoly = Ring::one();
        let m = Matrix::from_rows(vec![vec![t.clone(), t.clone()], vec![one.clone(), t.clone()]]);
        let det = m.det();
        assert_eq!(det, t.times(&t).minus(&t));
        let inv = invert(&m).unwrap();
        let expect = |p: PuiseuxPoly| PuiseuxFrac {
            num: p,
            den: det.clone(),
        };
        assert_eq!(*inv.get(0, 0), expect(t.clone()));
        assert_eq!(*inv.get(0, 1), expect(t.negate()));
        assert_eq!(*inv.get(1, 0), expect(one.negate()));
        assert_eq!(*inv.get(1, 1), expect(t.clone()));
        let back = inv.mul(&m.map(|p| PuiseuxFrac::from_poly(p.clone()))).unwrap();
        assert_eq!(back, Matrix::identity(2));
    }

    #[test]
    fn equal_rows_are_singular() {
        let t = PuiseuxPoly::t();
        let m = Matrix::from_rows(vec![vec![t.clone(), Ring::one()], vec![t, Ring::one()]]);
        assert_eq!(invert(&m).unwrap_err(), Error::Singular);
    }

    #[test]
    fn display() {
        let p = PuiseuxPoly::from_terms([
            (q(3, 2), Scalar::i()),
            (q(0, 1), c(2)),
            (q(-1, 1), c(-1)),
        ]);
        assert_eq!(p.to_string(), "-t^(-1) + 2 + i*t^(3/2)");
    }
}
