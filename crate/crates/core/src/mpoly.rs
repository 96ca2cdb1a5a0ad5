//! Sparse multivariate polynomials over ℚ(i) in at most eight indeterminates.
//!
//! Used for the multiplication operator of a generic vector `x = Σ xᵢeᵢ`,
//! whose powers are ranked over the fraction field `ℚ(i)(x₁,…,xₙ)`.
//! Monomials are ordered lexicographically with `x₁ > x₂ > …`, which makes
//! exact division a plain leading-term reduction.

use std::collections::BTreeMap;
use std::fmt;

use crate::ring::Ring;
use crate::scalar::Scalar;

pub const MAX_VARS: usize = 8;

type Monomial = [u8; MAX_VARS];

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct MPoly {
    terms: BTreeMap<Monomial, Scalar>,
}

impl MPoly {
    pub fn constant(c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert([0; MAX_VARS], c);
        }
        MPoly { terms }
    }

    /// The indeterminate `x_{var+1}`.
    pub fn var(var: usize) -> Self {
        assert!(var < MAX_VARS, "at most {MAX_VARS} indeterminates");
        let mut m = [0; MAX_VARS];
        m[var] = 1;
        MPoly {
            terms: BTreeMap::from([(m, Scalar::one())]),
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return MPoly::default();
        }
        MPoly {
            terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect(),
        }
    }

    /// Evaluates at a point with `point.len()` coordinates.
    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (idx, &e) in m.iter().enumerate() {
                if e > 0 {
                    v = &v * &point[idx].pow(e as u32);
                }
            }
            acc += v;
        }
        acc
    }

    fn add_term(&mut self, m: Monomial, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_default();
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    fn leading(&self) -> Option<(&Monomial, &Scalar)> {
        self.terms.iter().next_back()
    }
}

fn mono_mul(a: &Monomial, b: &Monomial) -> Monomial {
    let mut out = [0u8; MAX_VARS];
    for k in 0..MAX_VARS {
        out[k] = a[k].checked_add(b[k]).expect("monomial degree overflow");
    }
    out
}

fn mono_div(a: &Monomial, b: &Monomial) -> Option<Monomial> {
    let mut out = [0u8; MAX_VARS];
    for k in 0..MAX_VARS {
        out[k] = a[k].checked_sub(b[k])?;
    }
    Some(out)
}

impl Ring for MPoly {
    fn zero() -> Self {
        MPoly::default()
    }
    fn one() -> Self {
        MPoly::constant(Scalar::one())
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
    fn minus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(*m, -c);
        }
        out
    }
    fn times(&self, other: &Self) -> Self {
        let mut out = MPoly::default();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(mono_mul(ma, mb), ca * cb);
            }
        }
        out
    }
    fn negate(&self) -> Self {
        MPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
    fn try_div(&self, other: &Self) -> Option<Self> {
        let (lm_d, lc_d) = other.leading()?;
        let lc_inv = lc_d.inv()?;
        let mut rem = self.clone();
        let mut quot = MPoly::default();
        while let Some((lm_r, lc_r)) = rem.leading() {
            let m = mono_div(lm_r, lm_d)?;
            let c = lc_r * &lc_inv;
            let step = MPoly {
                terms: BTreeMap::from([(m, c.clone())]),
            };
            rem = rem.minus(&step.times(other));
            quot.add_term(m, c);
        }
        Some(quot)
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| {
                let vars: Vec<String> = m
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(k, &e)| {
                        if e == 1 {
                            format!("x{}", k + 1)
                        } else {
                            format!("x{}^{}", k + 1, e)
                        }
                    })
                    .collect();
                if vars.is_empty() {
                    format!("({c})")
                } else {
                    format!("({c})*{}", vars.join("*"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::Matrix;

    fn x(k: usize) -> MPoly {
        MPoly::var(k)
    }

    #[test]
    fn exact_division() {
        let a = x(0).plus(&x(1)); // x1 + x2
        let b = x(0).minus(&x(2)).times(&x(1)); // (x1 - x3) x2
        let p = a.times(&b);
        assert_eq!(p.try_div(&a), Some(b.clone()));
        assert_eq!(p.try_div(&b), Some(a.clone()));
        assert_eq!(a.try_div(&b), None);
        assert_eq!(p.try_div(&MPoly::default()), None);
    }

    #[test]
    fn symbolic_rank_matches_generic_point() {
        // [[x1, x2], [x1 x2, x2^2]] has rank 1 identically
        let m = Matrix::from_rows(vec![
            vec![x(0), x(1)],
            vec![x(0).times(&x(1)), x(1).times(&x(1))],
        ]);
        assert_eq!(m.rank(), 1);
        let m2 = Matrix::from_rows(vec![vec![x(0), x(1)], vec![x(1), x(0)]]);
        assert_eq!(m2.rank(), 2);
        assert_eq!(m2.det(), x(0).times(&x(0)).minus(&x(1).times(&x(1))));
    }

    #[test]
    fn evaluation() {
        let p = x(0).times(&x(0)).plus(&x(1).scale(&Scalar::from_int(3)));
        let v = p.eval(&[Scalar::from_int(2), Scalar::from_int(5)]);
        assert_eq!(v, Scalar::from_int(19));
    }
}
