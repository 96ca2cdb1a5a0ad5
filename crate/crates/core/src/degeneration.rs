//! Contractions `φ = lim_{t→0} f_t⁻¹ φ₀(f_t ·, f_t ·)`, polynomial
//! deformations `φ_t = φ₀ + Σ tᵏ φ_k`, and a bounded search for contraction
//! witnesses.

use std::collections::HashMap;
use std::sync::Mutex;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::Serialize;

use crate::classify::{classify, ClassId};
use crate::error::{Error, Result};
use crate::invariants::{nilindex, profile, InvariantProfile};
use crate::matrix::Matrix;
use crate::puiseux::{Exponent, Limit, PuiseuxFrac, PuiseuxPoly};
use crate::ring::Ring;
use crate::scalar::Scalar;
use crate::tensor::{basis_vector, is_zero_vector, polarization_set, StructureTensor, Vector};

/// A one-parameter family `f_t`; column `i` holds `f_t(e_i)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ContractionFamily {
    matrix: Matrix<PuiseuxPoly>,
}

impl ContractionFamily {
    pub fn new(matrix: Matrix<PuiseuxPoly>) -> Self {
        assert!(matrix.is_square(), "family matrix must be square");
        ContractionFamily { matrix }
    }

    pub fn matrix(&self) -> &Matrix<PuiseuxPoly> {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    /// `diag(t^{w_1}, …, t^{w_n})`.
    pub fn diagonal(weights: &[Exponent]) -> Self {
        let n = weights.len();
        ContractionFamily::new(Matrix::from_fn(n, n, |r, c| {
            if r == c {
                PuiseuxPoly::t_pow(weights[c])
            } else {
                PuiseuxPoly::zero()
            }
        }))
    }

    /// `B · diag(t^{w_1}, …, t^{w_n})`: `f_t(e_i) = t^{w_i} B(e_i)`.
    pub fn from_basis_and_weights(b: &Matrix<Scalar>, weights: &[Exponent]) -> Self {
        let n = weights.len();
        ContractionFamily::new(Matrix::from_fn(n, n, |r, c| {
            PuiseuxPoly::monomial(b.get(r, c).clone(), weights[c])
        }))
    }
}

/// `x_i = t e_i`, contracting every nilpotent law onto the abelian one.
pub fn scaling_family(n: usize) -> ContractionFamily {
    ContractionFamily::diagonal(&vec![Ratio::from_integer(1); n])
}

/// The limit law of `φ₀` along `f`.
///
/// Every transported structure constant is `(adj(f_t)·φ₀(f_t e_i, f_t e_j))_k / det f_t`,
/// an exact quotient of Puiseux polynomials whose limit is read off the
/// lowest-order terms.
pub fn limit_of_family(phi0: &StructureTensor, f: &ContractionFamily) -> Result<StructureTensor> {
    let n = phi0.dim();
    if f.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: f.dim(),
        });
    }
    let m = f.matrix();
    let det = m.det();
    if det.is_zero() {
        return Err(Error::Singular);
    }
    let adj = m.adjugate();
    let mut out = if phi0.is_bilinear_flagged() {
        StructureTensor::zero_bilinear(n)
    } else {
        StructureTensor::zero(n)
    };
    let symmetric = !phi0.is_bilinear_flagged();
    for i in 0..n {
        let lo = if symmetric { i } else { 0 };
        for j in lo..n {
            // φ₀(f e_i, f e_j) with Puiseux coordinates
            let mut v = vec![PuiseuxPoly::zero(); n];
            for a in 0..n {
                let fa = m.get(a, i);
                if fa.is_zero() {
                    continue;
                }
                for b in 0..n {
                    let fb = m.get(b, j);
                    if fb.is_zero() {
                        continue;
                    }
                    let w = fa.times(fb);
                    for (k, vk) in v.iter_mut().enumerate() {
                        let c = phi0.get(a, b, k);
                        if !c.is_zero() {
                            *vk = vk.plus(&w.scale(c));
                        }
                    }
                }
            }
            let num = adj.apply(&v);
            for (k, p) in num.into_iter().enumerate() {
                if p.is_zero() {
                    continue;
                }
                match PuiseuxFrac::new(p, det.clone()).limit_at_zero() {
                    Limit::Diverges => return Err(Error::Diverges { i, j, k }),
                    Limit::Value(c) => {
                        if !c.is_zero() {
                            out.set(i, j, k, c);
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// The checked inequalities between the profiles of a contraction's endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Inequalities {
    /// `s(φ) ≤ s(φ₀)` lexicographically.
    pub char_seq: bool,
    /// `dim 𝒪(φ) < dim 𝒪(φ₀)`.
    pub orbit: bool,
    /// `dim Z(φ) ≥ dim Z(φ₀)`.
    pub center: bool,
}

impl Inequalities {
    /// Inequalities for a contraction `upper → lower`.
    pub fn between(upper: &InvariantProfile, lower: &InvariantProfile) -> Self {
        Inequalities {
            char_seq: lower.char_seq <= upper.char_seq,
            orbit: lower.dim_orbit < upper.dim_orbit,
            center: lower.dim_center >= upper.dim_center,
        }
    }

    pub fn all(&self) -> bool {
        self.char_seq && self.orbit && self.center
    }
}

/// A contraction between two classes together with its witness.
#[derive(Clone, Debug, PartialEq)]
pub struct ContractionEdge {
    pub source: ClassId,
    pub target: ClassId,
    pub witness: ContractionFamily,
    pub limit: StructureTensor,
    pub inequalities: Inequalities,
    pub verified: bool,
}

/// Verifies that `f` contracts `source` onto `target_class`.
pub fn verify_edge(
    source: &StructureTensor,
    target_class: ClassId,
    f: &ContractionFamily,
) -> Result<ContractionEdge> {
    let limit = limit_of_family(source, f)?;
    let actual = classify(&limit)?;
    if actual != target_class {
        return Err(Error::Misclassified {
            expected: target_class,
            actual,
        });
    }
    let source_class = classify(source)?;
    let inequalities = Inequalities::between(&profile(source)?, &profile(&limit)?);
    let verified = inequalities.all();
    Ok(ContractionEdge {
        source: source_class,
        target: actual,
        witness: f.clone(),
        limit,
        inequalities,
        verified,
    })
}

/// The higher-order terms `φ_1, …, φ_k` of `φ_t = φ₀ + Σ tⁱ φ_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct DeformationDirection {
    terms: Vec<StructureTensor>,
}

impl DeformationDirection {
    pub fn new(terms: Vec<StructureTensor>) -> Self {
        DeformationDirection { terms }
    }

    /// The linear direction `t·μ`.
    pub fn linear(mu: StructureTensor) -> Self {
        DeformationDirection { terms: vec![mu] }
    }

    pub fn terms(&self) -> &[StructureTensor] {
        &self.terms
    }

    pub fn degree(&self) -> usize {
        self.terms.len()
    }
}

/// `φ₀ + Σ tⁱ φ_i` at a concrete `t`.
pub fn specialize(
    phi0: &StructureTensor,
    d: &DeformationDirection,
    t: &Scalar,
) -> Result<StructureTensor> {
    let mut out = phi0.clone();
    let mut power = Scalar::one();
    for term in d.terms() {
        power = &power * t;
        out = out.add_scaled(term, &power)?;
    }
    Ok(out)
}

/// The values of `t` at which the class of a deformation is sampled.
pub fn deformation_samples() -> Vec<Scalar> {
    vec![
        Scalar::one(),
        Scalar::from_frac(1, 2),
        Scalar::from_int(2),
        Scalar::from_frac(1, 3),
        Scalar::from_int(3),
    ]
}

/// Outcome of checking a polynomial deformation.
#[derive(Clone, Debug, PartialEq)]
pub struct DeformationReport {
    pub base_class: ClassId,
    pub class_at_one: ClassId,
    /// Class at each sampled `t`.
    pub sampled: Vec<(Scalar, ClassId)>,
    /// Whether every sample lies in the class found at `t = 1`.
    pub uniform: bool,
    /// Reversed inequalities `s(φ_1) ≥ s(φ₀)`, etc.
    pub inequalities: Inequalities,
}

impl DeformationReport {
    /// Whether the family witnesses `class_at_one → base_class` as a contraction.
    pub fn is_deformation(&self) -> bool {
        self.uniform && self.class_at_one != self.base_class && self.inequalities.all()
    }
}

/// Coefficient of `t^deg` in the Jordan defect `J_t(x, y)` of `φ_t`, where
/// `laws[0] = φ₀` and `laws[i] = φ_i`.
fn defect_coefficient(laws: &[StructureTensor], x: &[Scalar], y: &[Scalar], deg: usize) -> Vector {
    let n = x.len();
    let k = laws.len() - 1;
    let mut acc = vec![Scalar::zero(); n];
    let squares: Vec<Vector> = laws.iter().map(|l| l.product_unchecked(x, x)).collect();
    let xy: Vec<Vector> = laws.iter().map(|l| l.product_unchecked(x, y)).collect();
    for a in 0..=k.min(deg) {
        for b in 0..=k.min(deg - a) {
            let c = deg - a - b;
            if c > k {
                continue;
            }
            // φ_a(φ_b(x,x), φ_c(x,y)) − φ_a(x, φ_b(φ_c(x,x), y))
            let lhs = laws[a].product_unchecked(&squares[b], &xy[c]);
            let inner = laws[b].product_unchecked(&squares[c], y);
            let rhs = laws[a].product_unchecked(x, &inner);
            for (o, (l, r)) in acc.iter_mut().zip(lhs.iter().zip(&rhs)) {
                *o += &(l - r);
            }
        }
    }
    acc
}

/// Checks that `φ_t` is Jordan as a polynomial identity in `t`, classifies
/// the specialisations and checks the reversed inequalities against `φ₀`.
pub fn verify_polynomial_deformation(
    phi0: &StructureTensor,
    d: &DeformationDirection,
) -> Result<DeformationReport> {
    let n = phi0.dim();
    if let Some(bad) = d.terms().iter().find(|t| t.dim() != n) {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: bad.dim(),
        });
    }
    if d.terms().iter().any(|t| !t.is_symmetric()) {
        return Err(Error::Precondition("deformation terms must be symmetric".into()));
    }
    let mut laws = vec![phi0.clone()];
    laws.extend(d.terms().iter().cloned());
    let top = 3 * d.degree();
    for x in polarization_set(n) {
        for m in 0..n {
            let y = basis_vector(n, m);
            for deg in 0..=top {
                if !is_zero_vector(&defect_coefficient(&laws, &x, &y, deg)) {
                    return Err(Error::NotJordanFamily { degree: deg });
                }
            }
        }
    }
    let base_class = classify(phi0)?;
    let mut sampled = Vec::new();
    for t in deformation_samples() {
        let law = specialize(phi0, d, &t)?;
        nilindex(&law)?;
        sampled.push((t, classify(&law)?));
    }
    let class_at_one = sampled[0].1;
    let uniform = sampled.iter().all(|(_, c)| *c == class_at_one);
    let at_one = specialize(phi0, d, &Scalar::one())?;
    let inequalities = Inequalities::between(&profile(&at_one)?, &profile(phi0)?);
    Ok(DeformationReport {
        base_class,
        class_at_one,
        sampled,
        uniform,
        inequalities,
    })
}

/// The exponent grid of the witness search, in search order.
pub fn exponent_grid() -> Vec<Exponent> {
    vec![
        Ratio::from_integer(0),
        Ratio::new(1, 2),
        Ratio::from_integer(1),
        Ratio::new(3, 2),
        Ratio::from_integer(2),
        Ratio::from_integer(3),
        Ratio::new(-1, 2),
    ]
}

/// Rational basis changes tried by the witness search: the identity, the
/// shears `e_i ↦ e_i ± e_j`, and `e_i ↦ e_i + e_j, e_j ↦ e_i − e_j`.
pub fn search_bases(n: usize) -> Vec<Matrix<Scalar>> {
    let mut out = vec![Matrix::identity(n)];
    for sign in [1, -1] {
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    let mut b = Matrix::identity(n);
                    b.set(j, i, Scalar::from_int(sign));
                    out.push(b);
                }
            }
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            let mut b = Matrix::identity(n);
            b.set(j, i, Scalar::one());
            b.set(i, j, Scalar::one());
            b.set(j, j, Scalar::from_int(-1));
            out.push(b);
        }
    }
    out
}

/// Number of candidates in the full search space for dimension `n`.
pub fn search_space_size(n: usize) -> usize {
    search_bases(n).len() * exponent_grid().len().pow(n as u32)
}

/// The limit of `ψ` along `diag(t^{w_i})`, or `None` if it diverges: the
/// constant `ψ_ij^k` is scaled by `t^{w_i + w_j − w_k}`.
fn diagonal_limit(psi: &StructureTensor, w: &[Exponent]) -> Option<StructureTensor> {
    let n = psi.dim();
    let mut out = StructureTensor::zero(n);
    for (i, j, k, c) in psi.nonzero_entries() {
        let e = w[i] + w[j] - w[k];
        if e < Ratio::from_integer(0) {
            return None;
        }
        if e == Ratio::from_integer(0) {
            out.set(i, j, k, c);
        }
    }
    Some(out)
}

fn weights_at(index: usize, n: usize, grid: &[Exponent]) -> Vec<Exponent> {
    let mut idx = index;
    let mut w = Vec::with_capacity(n);
    for _ in 0..n {
        w.push(grid[idx % grid.len()]);
        idx /= grid.len();
    }
    w
}

/// Searches families `B · diag(t^{w})` for a contraction of `source` onto
/// the class of `target`, examining at most `budget` candidates in a fixed
/// order and returning the first that `verify_edge` accepts.
///
/// Permutations and unit coefficients in front of the diagonal are not
/// enumerated: for monomial families the limit is a sublaw of `ψ = B·source`
/// selected by the weights, so reordering or rescaling basis vectors only
/// yields isomorphic limits.
pub fn search_witness(
    source: &StructureTensor,
    target: &StructureTensor,
    budget: usize,
) -> Result<ContractionFamily> {
    let n = source.dim();
    let source_class = classify(source)?;
    let target_class = classify(target)?;
    if source_class == target_class {
        return Err(Error::Precondition(format!(
            "source and target are both {source_class}"
        )));
    }
    let bases = search_bases(n);
    let transported: Vec<StructureTensor> = bases
        .iter()
        .map(|b| source.transform(b))
        .collect::<Result<_>>()?;
    let grid = exponent_grid();
    let per_base = grid.len().pow(n as u32);
    let total = (bases.len() * per_base).min(budget);
    let cache: Mutex<HashMap<StructureTensor, Option<ClassId>>> = Mutex::new(HashMap::new());
    let found = (0..total).into_par_iter().find_first(|&idx| {
        let (bi, wi) = (idx / per_base, idx % per_base);
        let w = weights_at(wi, n, &grid);
        let Some(limit) = diagonal_limit(&transported[bi], &w) else {
            return false;
        };
        let cached = cache.lock().expect("cache").get(&limit).copied();
        let class = match cached {
            Some(c) => c,
            None => {
                let c = classify(&limit).ok();
                cache.lock().expect("cache").insert(limit, c);
                c
            }
        };
        if class != Some(target_class) {
            return false;
        }
        let family = ContractionFamily::from_basis_and_weights(&bases[bi], &w);
        verify_edge(source, target_class, &family).is_ok_and(|e| e.verified)
    });
    match found {
        Some(idx) => {
            let (bi, wi) = (idx / per_base, idx % per_base);
            let w = weights_at(wi, n, &grid);
            Ok(ContractionFamily::from_basis_and_weights(&bases[bi], &w))
        }
        None => Err(Error::NotFound { budget: total }),
    }
}

/// Linear directions `μ` with a single product `μ(e_i, e_j) = e_k` such that
/// `φ₀ + tμ` is a Jordan deformation whose sampled class is uniformly
/// `target`. Returned in index order.
pub fn search_linear_deformations(
    phi0: &StructureTensor,
    target: ClassId,
) -> Vec<(DeformationDirection, DeformationReport)> {
    let n = phi0.dim();
    let mut candidates = Vec::new();
    for i in 0..n {
        for j in i..n {
            for k in 0..n {
                let mut mu = StructureTensor::zero(n);
                mu.set(i, j, k, Scalar::one());
                candidates.push(DeformationDirection::linear(mu));
            }
        }
    }
    candidates
        .into_par_iter()
        .filter_map(|d| {
            let report = verify_polynomial_deformation(phi0, &d).ok()?;
            (report.uniform && report.class_at_one == target && report.is_deformation())
                .then_some((d, report))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(n: usize, p: &[(usize, usize, usize, i64)]) -> StructureTensor {
        StructureTensor::from_int_products(n, p)
    }

    fn w(ws: &[(i64, i64)]) -> Vec<Exponent> {
        ws.iter().map(|&(p, q)| Ratio::new(p, q)).collect()
    }

    fn j3_1() -> StructureTensor {
        t(3, &[(1, 1, 2, 1), (1, 2, 3, 1)])
    }

    #[test]
    fn example_contraction_in_dimension_three() {
        let f = ContractionFamily::diagonal(&w(&[(1, 1), (2, 1), (0, 1)]));
        let lim = limit_of_family(&j3_1(), &f).unwrap();
        assert_eq!(lim, t(3, &[(1, 1, 2, 1)]));
        assert_eq!(classify(&lim), Ok(ClassId::j3(3)));
        let g = ContractionFamily::diagonal(&w(&[(1, 1), (0, 1), (1, 1)]));
        assert_eq!(classify(&limit_of_family(&j3_1(), &g).unwrap()), Ok(ClassId::j3(2)));
        let id = ContractionFamily::diagonal(&w(&[(0, 1), (0, 1), (0, 1)]));
        assert_eq!(limit_of_family(&j3_1(), &id).unwrap(), j3_1());
    }

    #[test]
    fn divergence_and_singularity() {
        let f = ContractionFamily::diagonal(&w(&[(0, 1), (1, 1), (0, 1)]));
        assert!(matches!(
            limit_of_family(&j3_1(), &f),
            Err(Error::Diverges { .. })
        ));
        let z = ContractionFamily::new(Matrix::zeros(3, 3));
        assert_eq!(limit_of_family(&j3_1(), &z), Err(Error::Singular));
    }

    #[test]
    fn scaling_contracts_to_abelian() {
        let phi10 = t(4, &[(1, 1, 2, 1), (3, 4, 2, 1)]);
        assert!(limit_of_family(&phi10, &scaling_family(4)).unwrap().is_zero());
        assert!(limit_of_family(&StructureTensor::zero(4), &scaling_family(4))
            .unwrap()
            .is_zero());
    }

    #[test]
    fn edge_verification() {
        let phi11 = t(4, &[(1, 1, 2, 1), (3, 3, 2, 1)]);
        let f = ContractionFamily::diagonal(&w(&[(0, 1), (0, 1), (1, 1), (0, 1)]));
        let e = verify_edge(&phi11, ClassId::j4(12), &f).unwrap();
        assert!(e.verified);
        assert_eq!(e.source, ClassId::j4(11));
        let err = verify_edge(&phi11, ClassId::j4(10), &f).unwrap_err();
        assert_eq!(
            err,
            Error::Misclassified {
                expected: ClassId::j4(10),
                actual: ClassId::j4(12)
            }
        );
    }

    #[test]
    fn trivial_deformation() {
        let r = verify_polynomial_deformation(&j3_1(), &DeformationDirection::linear(StructureTensor::zero(3)))
            .unwrap();
        assert_eq!(r.class_at_one, ClassId::j3(1));
        assert!(r.uniform);
        assert!(!r.is_deformation());
    }

    #[test]
    fn non_jordan_family_reports_degree() {
        // e1e1 = e2 deformed by t·(e1e2 = e1) breaks the identity at order t
        let base = t(2, &[(1, 1, 2, 1)]);
        let mu = t(2, &[(1, 2, 1, 1)]);
        let err = verify_polynomial_deformation(&base, &DeformationDirection::linear(mu)).unwrap_err();
        assert_eq!(err, Error::NotJordanFamily { degree: 1 });
    }

    #[test]
    fn search_finds_the_dimension_three_contractions() {
        let f = search_witness(&j3_1(), &t(3, &[(1, 1, 2, 1)]), usize::MAX).unwrap();
        assert!(verify_edge(&j3_1(), ClassId::j3(3), &f).unwrap().verified);
        assert_eq!(
            search_witness(&j3_1(), &j3_1(), 10),
            Err(Error::Precondition("source and target are both J3_1".into()))
        );
        assert_eq!(
            search_witness(&t(3, &[(1, 1, 2, 1)]), &j3_1(), usize::MAX),
            Err(Error::NotFound { budget: search_space_size(3) })
        );
    }

    #[test]
    fn search_space() {
        assert_eq!(search_bases(4).len(), 1 + 24 + 6);
        assert_eq!(search_space_size(4), 31 * 2401);
    }
}
