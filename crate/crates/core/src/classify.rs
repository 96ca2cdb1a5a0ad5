//! Isomorphism classes of nilpotent Jordan algebras of dimension ≤ 4 over ℂ,
//! and of dimension 3 over ℝ.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, ParseError, Result};
use crate::invariants::{
    central_series, char_sequence, char_sequence_at, format_seq, in_span, nilindex,
    sample_vectors,
};
use crate::matrix::Matrix;
use crate::scalar::Scalar;
use crate::tensor::{basis_vector, Field, StructureTensor, Vector};

/// An isomorphism class label such as `J4_5`, `J3_ab` or `R3_2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum ClassId {
    /// Complex class `J{dim}_{index}`.
    Complex { dim: u8, index: u8 },
    /// Complex abelian class `J{dim}_ab`.
    Abelian { dim: u8 },
    /// Real three-dimensional class `R3_{index}`.
    Real { index: u8 },
    /// Real three-dimensional abelian class `R3_ab`.
    RealAbelian,
}

impl ClassId {
    pub fn j(dim: u8, index: u8) -> ClassId {
        ClassId::Complex { dim, index }
    }

    pub fn j4(index: u8) -> ClassId {
        ClassId::Complex { dim: 4, index }
    }

    pub fn j3(index: u8) -> ClassId {
        ClassId::Complex { dim: 3, index }
    }

    pub fn abelian(dim: usize) -> ClassId {
        ClassId::Abelian { dim: dim as u8 }
    }

    pub fn r3(index: u8) -> ClassId {
        ClassId::Real { index }
    }

    pub fn dim(&self) -> usize {
        match *self {
            ClassId::Complex { dim, .. } | ClassId::Abelian { dim } => dim as usize,
            ClassId::Real { .. } | ClassId::RealAbelian => 3,
        }
    }

    pub fn is_abelian(&self) -> bool {
        matches!(self, ClassId::Abelian { .. } | ClassId::RealAbelian)
    }

    pub fn is_real(&self) -> bool {
        matches!(self, ClassId::Real { .. } | ClassId::RealAbelian)
    }

    /// Number of non-abelian complex classes in each dimension.
    fn complex_count(dim: u8) -> Option<u8> {
        match dim {
            1 => Some(0),
            2 => Some(1),
            3 => Some(3),
            4 => Some(12),
            _ => None,
        }
    }

    /// All complex classes of a dimension, abelian last.
    pub fn complex_classes(dim: usize) -> Vec<ClassId> {
        let d = dim as u8;
        let count = ClassId::complex_count(d).unwrap_or(0);
        let mut out: Vec<ClassId> = (1..=count).map(|i| ClassId::j(d, i)).collect();
        out.push(ClassId::abelian(dim));
        out
    }

    /// The real three-dimensional classes, abelian last.
    pub fn real_classes() -> Vec<ClassId> {
        let mut out: Vec<ClassId> = (1..=5).map(ClassId::r3).collect();
        out.push(ClassId::RealAbelian);
        out
    }

    pub fn label(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for ClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassId::Complex { dim, index } => write!(f, "J{dim}_{index}"),
            ClassId::Abelian { dim } => write!(f, "J{dim}_ab"),
            ClassId::Real { index } => write!(f, "R3_{index}"),
            ClassId::RealAbelian => write!(f, "R3_ab"),
        }
    }
}

impl FromStr for ClassId {
    type Err = ParseError;

    fn from_str(s: &str) -> std::result::Result<Self, ParseError> {
        let bad = || ParseError::new(0, format!("unknown class label `{s}`"));
        let s = s.trim();
        let (head, tail) = s.split_once('_').ok_or_else(bad)?;
        let (kind, dim) = head.split_at(1);
        let dim: u8 = dim.parse().map_err(|_| bad())?;
        match kind {
            "J" => {
                let count = ClassId::complex_count(dim).ok_or_else(bad)?;
                if tail == "ab" {
                    return Ok(ClassId::Abelian { dim });
                }
                let index: u8 = tail.parse().map_err(|_| bad())?;
                if index == 0 || index > count {
                    return Err(bad());
                }
                Ok(ClassId::Complex { dim, index })
            }
            "R" if dim == 3 => {
                if tail == "ab" {
                    return Ok(ClassId::RealAbelian);
                }
                let index: u8 = tail.parse().map_err(|_| bad())?;
                if !(1..=5).contains(&index) {
                    return Err(bad());
                }
                Ok(ClassId::Real { index })
            }
            _ => Err(bad()),
        }
    }
}

impl From<ClassId> for String {
    fn from(c: ClassId) -> String {
        c.to_string()
    }
}

impl TryFrom<String> for ClassId {
    type Error = ParseError;

    fn try_from(s: String) -> std::result::Result<Self, ParseError> {
        s.parse()
    }
}

/// Parameters of the reduced law with `s = (3,1)` and one-dimensional center:
/// `e1e1 = e2, e1e2 = e3, e2e4 = γe3, e4e4 = αe2 + βe3`.
#[derive(Clone, Debug, PartialEq)]
pub struct NormalForm31 {
    pub alpha: Scalar,
    pub beta: Scalar,
    pub gamma: Scalar,
    /// Columns are the basis realizing the form.
    pub basis: Matrix<Scalar>,
}

impl NormalForm31 {
    /// The class this normal form represents.
    pub fn class(&self) -> Result<ClassId> {
        let (a, b, g) = (&self.alpha, &self.beta, &self.gamma);
        let index = if !a.is_zero() {
            if !(a + &(g * g)).is_zero() {
                2
            } else if !b.is_zero() {
                3
            } else {
                4
            }
        } else if !g.is_zero() {
            5
        } else if !b.is_zero() {
            6
        } else {
            return Err(Error::Precondition(
                "normal form with α = β = γ = 0 has a two-dimensional center".into(),
            ));
        };
        Ok(ClassId::j4(index))
    }

    /// The reduced law with these parameters.
    pub fn law(alpha: &Scalar, beta: &Scalar, gamma: &Scalar) -> StructureTensor {
        StructureTensor::from_products(
            4,
            &[
                (1, 1, 2, Scalar::one()),
                (1, 2, 3, Scalar::one()),
                (2, 4, 3, gamma.clone()),
                (4, 4, 2, alpha.clone()),
                (4, 4, 3, beta.clone()),
            ],
        )
    }
}

/// Candidate characteristic vectors: the deterministic samples, then the
/// shifts `u + c·v` of pairs of samples.
fn candidate_vectors(n: usize) -> impl Iterator<Item = Vector> {
    let samples = sample_vectors(n);
    let shifts = [Scalar::one(), Scalar::from_int(-1), Scalar::from_int(2)];
    let base = samples.clone();
    let pairs = (0..samples.len()).flat_map(move |a| {
        let samples = samples.clone();
        let shifts = shifts.clone();
        (0..samples.len()).filter(move |&b| b != a).flat_map(move |b| {
            let (u, v) = (samples[a].clone(), samples[b].clone());
            shifts
                .clone()
                .into_iter()
                .map(move |c| u.iter().zip(&v).map(|(x, y)| x + &(&c * y)).collect())
        })
    });
    base.into_iter().chain(pairs)
}

/// Bases `(x, x², x·x², e4)` with `x` characteristic and `e4 ∈ ker L_x`.
fn characteristic_bases(phi: &StructureTensor) -> impl Iterator<Item = Matrix<Scalar>> + '_ {
    let n = phi.dim();
    candidate_vectors(n).filter_map(move |x| {
        if char_sequence_at(phi, &x).ok()? != [3, 1] {
            return None;
        }
        let e2 = phi.product_unchecked(&x, &x);
        let e3 = phi.product_unchecked(&x, &e2);
        let chain = Matrix::span_basis(&[x.clone(), e2.clone(), e3.clone()], n);
        if chain.len() < 3 {
            return None;
        }
        let kernel = phi.mult_operator(&x).ok()?.kernel();
        let e4 = kernel.into_iter().find(|v| !in_span(&chain, v))?;
        Some(Matrix::from_cols(&[x, e2, e3, e4]))
    })
}

fn require_31(phi: &StructureTensor) -> Result<()> {
    if phi.dim() != 4 {
        return Err(Error::NoCharBasis(format!(
            "dimension is {}, not 4",
            phi.dim()
        )));
    }
    let s = char_sequence(phi)?;
    if s != [3, 1] {
        return Err(Error::NoCharBasis(format!(
            "characteristic sequence is {}, not (3,1)",
            format_seq(&s)
        )));
    }
    Ok(())
}

/// A basis `e1, …, e4` with `e1e1 = e2, e1e2 = e3, e1e3 = e1e4 = 0`.
pub fn characteristic_basis(phi: &StructureTensor) -> Result<Matrix<Scalar>> {
    require_31(phi)?;
    characteristic_bases(phi)
        .next()
        .ok_or_else(|| Error::NoCharBasis("no sampled characteristic vector works".into()))
}

fn reduced_shape(psi: &StructureTensor) -> Option<(Scalar, Scalar, Scalar)> {
    let gamma = psi.get(1, 3, 2).clone();
    let alpha = psi.get(3, 3, 1).clone();
    let beta = psi.get(3, 3, 2).clone();
    let expected = NormalForm31::law(&alpha, &beta, &gamma);
    (psi == &expected).then_some((alpha, beta, gamma))
}

/// Reduces a law with `s = (3,1)` and one-dimensional center to the
/// three-parameter form.
pub fn normal_form_31(phi: &StructureTensor) -> Result<NormalForm31> {
    require_31(phi)?;
    for basis in characteristic_bases(phi) {
        let psi = phi.transform(&basis)?;
        if let Some((alpha, beta, gamma)) = reduced_shape(&psi) {
            return Ok(NormalForm31 {
                alpha,
                beta,
                gamma,
                basis,
            });
        }
    }
    Err(Error::NoCharBasis(
        "no sampled characteristic basis reaches the reduced form".into(),
    ))
}

/// A complement of `sub` spanned by standard basis vectors.
fn complement(sub: &[Vector], n: usize) -> Vec<Vector> {
    let mut acc = sub.to_vec();
    let mut out = Vec::new();
    for i in 0..n {
        let e = basis_vector(n, i);
        if !in_span(&acc, &e) {
            acc.push(e.clone());
            acc = Matrix::span_basis(&acc, n);
            out.push(e);
        }
    }
    out
}

/// Coordinates of `v ∈ span(basis)` in that basis.
fn coords_in(basis: &[Vector], v: &[Scalar]) -> Result<Vector> {
    let m = Matrix::from_cols(basis);
    let n = v.len();
    let k = basis.len();
    let aug = Matrix::from_fn(n, k + 1, |r, c| {
        if c < k {
            m.get(r, c).clone()
        } else {
            v[r].clone()
        }
    });
    let (red, pivots) = aug.rref();
    if pivots.contains(&k) {
        return Err(Error::Precondition("vector outside the subspace".into()));
    }
    let mut out = vec![Scalar::zero(); k];
    for (row, &p) in pivots.iter().enumerate() {
        out[p] = red.get(row, k).clone();
    }
    Ok(out)
}

/// Gram matrices of the product restricted to a complement `W` of `𝒞²`,
/// one per basis vector of `𝒞²`.
fn gram_matrices(phi: &StructureTensor) -> Result<(Vec<Vector>, Vec<Matrix<Scalar>>)> {
    let n = phi.dim();
    let series = central_series(phi);
    let c2 = series.get(1).cloned().unwrap_or_default();
    let w = complement(&c2, n);
    let m = w.len();
    let mut grams = vec![Matrix::<Scalar>::zeros(m, m); c2.len()];
    for a in 0..m {
        for b in 0..m {
            let p = phi.product_unchecked(&w[a], &w[b]);
            let c = coords_in(&c2, &p)?;
            for (g, v) in grams.iter_mut().zip(c) {
                g.set(a, b, v);
            }
        }
    }
    Ok((c2, grams))
}

/// Discriminant of the binary quadratic form `det(λG₁ + μG₂)` for the pencil
/// of forms of a law with `s = (2,2)`. It vanishes iff the pencil has a
/// repeated degenerate member, which separates `J4_8` from `J4_9`.
pub fn pencil_discriminant(phi: &StructureTensor) -> Result<Scalar> {
    let (c2, grams) = gram_matrices(phi)?;
    if c2.len() != 2 || grams[0].rows() != 2 {
        return Err(Error::Precondition(
            "pencil test needs dim 𝒞² = 2 in dimension 4".into(),
        ));
    }
    let (g1, g2) = (&grams[0], &grams[1]);
    let a = g1.det();
    let c = g2.det();
    let two = Scalar::from_int(2);
    let b = &(&(g1.get(0, 0) * g2.get(1, 1)) + &(g1.get(1, 1) * g2.get(0, 0)))
        - &(&two * &(g1.get(0, 1) * g2.get(0, 1)));
    Ok(&(&b * &b) - &(&Scalar::from_int(4) * &(&a * &c)))
}

fn check_input(phi: &StructureTensor) -> Result<usize> {
    let n = phi.dim();
    if !phi.is_jordan() {
        return Err(Error::NotJordan);
    }
    nilindex(phi)?;
    Ok(n)
}

/// Isomorphism class over ℂ.
pub fn classify(phi: &StructureTensor) -> Result<ClassId> {
    let n = phi.dim();
    if n > 4 {
        return Err(Error::UnsupportedDim(n));
    }
    check_input(phi)?;
    if phi.is_zero() {
        return Ok(ClassId::abelian(n));
    }
    let center_dim = crate::invariants::center(phi).len();
    let unexpected = |s: &[usize]| {
        Error::Precondition(format!(
            "unexpected invariants s={} center={center_dim}",
            format_seq(s)
        ))
    };
    match n {
        1 => Err(unexpected(&[1])),
        2 => Ok(ClassId::j(2, 1)),
        3 => {
            let s = char_sequence(phi)?;
            match (s.as_slice(), center_dim) {
                ([3], _) => Ok(ClassId::j3(1)),
                ([2, 1], 1) => Ok(ClassId::j3(2)),
                ([2, 1], 2) => Ok(ClassId::j3(3)),
                _ => Err(unexpected(&s)),
            }
        }
        _ => {
            let s = char_sequence(phi)?;
            match (s.as_slice(), center_dim) {
                ([4], _) => Ok(ClassId::j4(1)),
                ([3, 1], 2) => Ok(ClassId::j4(7)),
                ([3, 1], 1) => normal_form_31(phi)?.class(),
                ([2, 2], _) => {
                    if pencil_discriminant(phi)?.is_zero() {
                        Ok(ClassId::j4(9))
                    } else {
                        Ok(ClassId::j4(8))
                    }
                }
                ([2, 1, 1], 1) => Ok(ClassId::j4(10)),
                ([2, 1, 1], 2) => Ok(ClassId::j4(11)),
                ([2, 1, 1], 3) => Ok(ClassId::j4(12)),
                _ => Err(unexpected(&s)),
            }
        }
    }
}

/// Isomorphism class over ℝ for a law with rational coefficients.
///
/// In dimension 3 a non-abelian law with `s = (2,1)` is a quadratic form on
/// `V/𝒞²` with values in the line `𝒞²`; its class is decided by the sign of
/// the Gram determinant. Dimensions 1 and 2 carry no real phenomena and
/// return the complex label.
pub fn classify_real(phi: &StructureTensor) -> Result<ClassId> {
    let n = phi.dim();
    if phi.field() == Field::Gaussian {
        return Err(Error::Precondition(
            "real classification needs rational coefficients".into(),
        ));
    }
    if n >= 4 {
        return Err(Error::UnsupportedDim(n));
    }
    if n < 3 {
        return classify(phi);
    }
    check_input(phi)?;
    if phi.is_zero() {
        return Ok(ClassId::RealAbelian);
    }
    let s = char_sequence(phi)?;
    if s == [3] {
        return Ok(ClassId::r3(1));
    }
    let (c2, grams) = gram_matrices(phi)?;
    if c2.len() != 1 {
        return Err(Error::Precondition("expected dim 𝒞² = 1".into()));
    }
    match grams[0].det().real_sign() {
        Some(1) => Ok(ClassId::r3(2)),
        Some(-1) => Ok(ClassId::r3(5)),
        _ => Ok(ClassId::r3(3)),
    }
}

/// Whether `f` carries `φ` onto `ψ`, i.e. `transform(φ, f) = ψ`.
pub fn verify_isomorphism(
    phi: &StructureTensor,
    psi: &StructureTensor,
    f: &Matrix<Scalar>,
) -> Result<bool> {
    if phi.dim() != psi.dim() {
        return Err(Error::DimensionMismatch {
            expected: phi.dim(),
            got: psi.dim(),
        });
    }
    Ok(&phi.transform(f)? == psi)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(n: usize, p: &[(usize, usize, usize, i64)]) -> StructureTensor {
        StructureTensor::from_int_products(n, p)
    }

    #[test]
    fn labels_round_trip() {
        for dim in 1..=4 {
            for c in ClassId::complex_classes(dim) {
                assert_eq!(c.label().parse::<ClassId>().unwrap(), c);
            }
        }
        for c in ClassId::real_classes() {
            assert_eq!(c.label().parse::<ClassId>().unwrap(), c);
        }
        assert_eq!(ClassId::j4(5).to_string(), "J4_5");
        assert!("J4_13".parse::<ClassId>().is_err());
        assert!("R4_1".parse::<ClassId>().is_err());
        assert!("J3_0".parse::<ClassId>().is_err());
        assert!("K".parse::<ClassId>().is_err());
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify(&t(4, &[(1, 1, 2, 1), (1, 3, 4, 1)])), Ok(ClassId::j4(9)));
        let mut phi = StructureTensor::zero(3);
        phi.set(0, 0, 1, Scalar::one());
        phi.set(0, 2, 1, Scalar::from_frac(1, 2));
        phi.set(2, 2, 1, Scalar::one());
        assert_eq!(classify(&phi), Ok(ClassId::j3(2)));
        assert_eq!(classify(&StructureTensor::zero(4)), Ok(ClassId::abelian(4)));
        assert_eq!(classify(&t(2, &[(1, 1, 2, 1)])), Ok(ClassId::j(2, 1)));
    }

    #[test]
    fn classify_rejects_bad_input() {
        assert_eq!(classify(&StructureTensor::zero(5)), Err(Error::UnsupportedDim(5)));
        assert_eq!(
            classify(&t(2, &[(1, 1, 2, 1), (1, 2, 1, 1)])),
            Err(Error::NotJordan)
        );
        assert_eq!(classify(&t(1, &[(1, 1, 1, 1)])), Err(Error::NotNilpotent));
    }

    #[test]
    fn normal_form_of_canonical_law_uses_identity() {
        let phi5 = t(4, &[(1, 1, 2, 1), (1, 2, 3, 1), (2, 4, 3, 1)]);
        assert_eq!(characteristic_basis(&phi5).unwrap(), Matrix::identity(4));
        let nf = normal_form_31(&phi5).unwrap();
        assert_eq!(
            (nf.alpha, nf.beta, nf.gamma),
            (Scalar::zero(), Scalar::zero(), Scalar::one())
        );
    }

    #[test]
    fn characteristic_basis_rejects_other_sequences() {
        let phi8 = t(4, &[(1, 1, 2, 1), (3, 3, 4, 1)]);
        assert!(matches!(characteristic_basis(&phi8), Err(Error::NoCharBasis(_))));
    }

    #[test]
    fn normal_form_branches() {
        let s = Scalar::from_int;
        let cases = [
            ((1, 0, 0), 2),
            ((-1, -1, 1), 3),
            ((-1, 0, 1), 4),
            ((0, 0, 1), 5),
            ((0, 1, 0), 6),
            ((-4, 1, 2), 3),
            ((-4, 0, 2), 4),
            ((2, 3, 5), 2),
        ];
        for ((a, b, g), want) in cases {
            let phi = NormalForm31::law(&s(a), &s(b), &s(g));
            assert_eq!(classify(&phi), Ok(ClassId::j4(want)), "({a},{b},{g})");
        }
    }

    #[test]
    fn pencil_discriminant_examples() {
        assert!(!pencil_discriminant(&t(4, &[(1, 1, 2, 1), (3, 3, 4, 1)]))
            .unwrap()
            .is_zero());
        assert!(pencil_discriminant(&t(4, &[(1, 1, 2, 1), (1, 3, 4, 1)]))
            .unwrap()
            .is_zero());
    }

    #[test]
    fn real_classes() {
        assert_eq!(classify_real(&t(3, &[(1, 1, 2, 1), (1, 2, 3, 1)])), Ok(ClassId::r3(1)));
        assert_eq!(classify_real(&t(3, &[(1, 1, 2, 1), (3, 3, 2, 1)])), Ok(ClassId::r3(2)));
        assert_eq!(classify_real(&t(3, &[(1, 1, 2, 1)])), Ok(ClassId::r3(3)));
        assert_eq!(classify_real(&t(3, &[(1, 2, 3, 1)])), Ok(ClassId::r3(5)));
        assert_eq!(classify_real(&t(3, &[(1, 1, 2, 1), (3, 3, 2, -1)])), Ok(ClassId::r3(5)));
        assert_eq!(classify_real(&StructureTensor::zero(3)), Ok(ClassId::RealAbelian));
        assert_eq!(
            classify_real(&StructureTensor::zero(4)),
            Err(Error::UnsupportedDim(4))
        );
    }

    #[test]
    fn verify_isomorphism_examples() {
        let phi = t(3, &[(1, 1, 2, 1), (3, 3, 2, 4)]);
        let psi = t(3, &[(1, 1, 2, 1), (3, 3, 2, 1)]);
        let mut f = Matrix::<Scalar>::identity(3);
        assert_eq!(verify_isomorphism(&phi, &phi, &f), Ok(true));
        f.set(2, 2, Scalar::from_frac(1, 2));
        assert_eq!(verify_isomorphism(&phi, &psi, &f), Ok(true));
        let phi8 = t(4, &[(1, 1, 2, 1), (3, 3, 4, 1)]);
        let phi9 = t(4, &[(1, 1, 2, 1), (1, 3, 4, 1)]);
        assert_eq!(verify_isomorphism(&phi8, &phi9, &Matrix::identity(4)), Ok(false));
    }
}
