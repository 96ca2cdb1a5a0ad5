//! Isomorphism invariants: lower central series, nilindex, center,
//! characteristic sequence, derivations, coboundaries and orbit dimension.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::mpoly::MPoly;
use crate::ring::Ring;
use crate::scalar::Scalar;
use crate::tensor::{basis_vector, is_zero_vector, StructureTensor, Vector};

/// A subspace given by a row-reduced basis.
pub type Subspace = Vec<Vector>;

/// The invariants tabulated for each class.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct InvariantProfile {
    pub char_seq: Vec<usize>,
    pub nilindex: usize,
    pub dim_center: usize,
    pub dim_der: usize,
    pub dim_orbit: usize,
    pub associative: bool,
    pub dims_central_series: Vec<usize>,
}

pub fn format_seq(s: &[usize]) -> String {
    let parts: Vec<String> = s.iter().map(usize::to_string).collect();
    format!("({})", parts.join(","))
}

impl fmt::Display for InvariantProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "s={} orbit={} center={} nilindex={} der={} associative={} series={}",
            format_seq(&self.char_seq),
            self.dim_orbit,
            self.dim_center,
            self.nilindex,
            self.dim_der,
            self.associative,
            format_seq(&self.dims_central_series)
        )
    }
}

/// `𝒞¹ = V, 𝒞^{m+1} = φ(𝒞^m, V)`, until the chain stabilises. The last entry
/// is the zero space exactly when the law is nilpotent.
pub fn central_series(phi: &StructureTensor) -> Vec<Subspace> {
    let n = phi.dim();
    let mut series: Vec<Subspace> = vec![(0..n).map(|i| basis_vector(n, i)).collect()];
    loop {
        let last = series.last().expect("nonempty");
        if last.is_empty() {
            break;
        }
        let mut gens = Vec::new();
        for c in last {
            for j in 0..n {
                let v = phi.product_unchecked(c, &basis_vector(n, j));
                if !is_zero_vector(&v) {
                    gens.push(v);
                }
            }
        }
        let next = Matrix::span_basis(&gens, n);
        if next.len() == last.len() {
            break;
        }
        series.push(next);
    }
    series
}

pub fn central_series_dims(phi: &StructureTensor) -> Vec<usize> {
    central_series(phi).iter().map(Vec::len).collect()
}

/// Least `k` with `𝒞^k = 0`.
pub fn nilindex(phi: &StructureTensor) -> Result<usize> {
    let series = central_series(phi);
    if series.last().is_some_and(Vec::is_empty) {
        Ok(series.len())
    } else {
        Err(Error::NotNilpotent)
    }
}

/// `Z(φ) = {x : φ(x, y) = 0 ∀y}`.
pub fn center(phi: &StructureTensor) -> Subspace {
    let n = phi.dim();
    let m = Matrix::from_fn(n * n, n, |row, i| {
        let (j, k) = (row / n, row % n);
        phi.get(i, j, k).clone()
    });
    m.kernel()
}

/// `{x : φ(φ(x, y), z) = 0 ∀y, z}`, the second term of the upper central series.
pub fn second_center(phi: &StructureTensor) -> Subspace {
    let n = phi.dim();
    let mut rows = Vec::new();
    for j in 0..n {
        for k in 0..n {
            // column i holds the coordinates of (e_i e_j) e_k
            let cols: Vec<Vector> = (0..n)
                .map(|i| {
                    let p = phi.basis_product(i, j);
                    phi.product_unchecked(&p, &basis_vector(n, k))
                })
                .collect();
            for r in 0..n {
                rows.push(cols.iter().map(|c| c[r].clone()).collect::<Vec<_>>());
            }
        }
    }
    Matrix::from_rows(rows).kernel()
}

/// Jordan block sizes (descending) of a nilpotent operator from the ranks
/// `r_0 = n, r_1, …` of its powers; there are `r_{k−1} − r_k` blocks of size
/// at least `k`.
pub fn partition_from_ranks(ranks: &[usize]) -> Vec<usize> {
    let at_least: Vec<usize> = ranks.windows(2).map(|w| w[0] - w[1]).collect();
    let mut out = Vec::new();
    for k in (1..=at_least.len()).rev() {
        let exact = at_least[k - 1] - at_least.get(k).copied().unwrap_or(0);
        out.extend(std::iter::repeat_n(k, exact));
    }
    out
}

fn power_ranks<T: Ring>(l: &Matrix<T>) -> Result<Vec<usize>> {
    let n = l.rows();
    let mut ranks = vec![n];
    let mut p = Matrix::identity(n);
    for _ in 0..n {
        p = p.mul(l)?;
        let r = p.rank();
        ranks.push(r);
        if r == 0 {
            break;
        }
    }
    if *ranks.last().expect("nonempty") != 0 {
        return Err(Error::NotNilpotent);
    }
    Ok(ranks)
}

/// Jordan type of `L_x` for a concrete `x`.
pub fn char_sequence_at(phi: &StructureTensor, x: &[Scalar]) -> Result<Vec<usize>> {
    let l = phi.mult_operator(x)?;
    Ok(partition_from_ranks(&power_ranks(&l)?))
}

/// Jordan type of `L_x` for the generic vector `x = Σ xᵢeᵢ`, with ranks
/// taken over `ℚ(i)(x₁,…,xₙ)`.
pub fn generic_char_sequence(phi: &StructureTensor) -> Result<Vec<usize>> {
    let n = phi.dim();
    let l = Matrix::from_fn(n, n, |k, j| {
        let mut acc = MPoly::zero();
        for i in 0..n {
            let c = phi.get(i, j, k);
            if !c.is_zero() {
                acc = acc.plus(&MPoly::var(i).scale(c));
            }
        }
        acc
    });
    Ok(partition_from_ranks(&power_ranks(&l)?))
}

const SAMPLE_VALUES: [i64; 4] = [1, 2, 3, -1];

/// The deterministic sample vectors: the basis followed by 20 combinations
/// with coordinates in `{1, 2, 3, −1}`.
pub fn sample_vectors(n: usize) -> Vec<Vector> {
    let mut out: Vec<Vector> = (0..n).map(|i| basis_vector(n, i)).collect();
    for s in 0..20usize {
        // base-4 digits of an affine scramble of s; distinct for n ≥ 3
        let m = (s * 53 + 17) % 256;
        let v: Vector = (0..n)
            .map(|j| Scalar::from_int(SAMPLE_VALUES[((m >> (2 * (j % 4))) + j / 4) % 4]))
            .collect();
        out.push(v);
    }
    out
}

/// Whether `v` lies in the span of the row-reduced basis `sub`.
pub fn in_span(sub: &[Vector], v: &[Scalar]) -> bool {
    if is_zero_vector(v) {
        return true;
    }
    let mut rows = sub.to_vec();
    rows.push(v.to_vec());
    Matrix::span_basis(&rows, v.len()).len() == sub.len()
}

/// The characteristic sequence `s(φ)`: the generic Jordan type of `L_x`,
/// checked to dominate the type at every sample vector outside `𝒞²`.
pub fn char_sequence(phi: &StructureTensor) -> Result<Vec<usize>> {
    let n = phi.dim();
    if n == 0 {
        return Err(Error::Degenerate("dimension 0"));
    }
    let generic = generic_char_sequence(phi)?;
    let series = central_series(phi);
    let c2: &[Vector] = series.get(1).map_or(&[], Vec::as_slice);
    for x in sample_vectors(n) {
        if in_span(c2, &x) {
            continue;
        }
        let s = char_sequence_at(phi, &x)?;
        if s > generic {
            return Err(Error::GenericNotDominant {
                generic: generic.clone(),
                sample: s,
            });
        }
    }
    Ok(generic)
}

/// Whether `x` attains the characteristic sequence.
pub fn is_characteristic(phi: &StructureTensor, x: &[Scalar], s: &[usize]) -> bool {
    char_sequence_at(phi, x).is_ok_and(|v| v == s)
}

/// Dimension of `Der(φ)`, as the kernel of the linear system
/// `f(φ(e_i,e_j)) = φ(f e_i, e_j) + φ(e_i, f e_j)` in the `n²` entries of `f`.
pub fn derivation_dim(phi: &StructureTensor) -> usize {
    derivations(phi).len()
}

/// A basis of `Der(φ)`, each derivation flattened row-major (`f_ab` at `a·n + b`).
pub fn derivations(phi: &StructureTensor) -> Vec<Vector> {
    let n = phi.dim();
    let var = |a: usize, b: usize| a * n + b;
    let mut rows = Vec::new();
    for i in 0..n {
        for j in i..n {
            for k in 0..n {
                let mut row = vec![Scalar::zero(); n * n];
                for a in 0..n {
                    // f_ka · a_ij^a
                    let c = phi.get(i, j, a);
                    if !c.is_zero() {
                        row[var(k, a)] += c;
                    }
                    // − f_ai · a_aj^k
                    let c = phi.get(a, j, k);
                    if !c.is_zero() {
                        row[var(a, i)] -= c.clone();
                    }
                    // − f_aj · a_ia^k
                    let c = phi.get(i, a, k);
                    if !c.is_zero() {
                        row[var(a, j)] -= c.clone();
                    }
                }
                if !is_zero_vector(&row) {
                    rows.push(row);
                }
            }
        }
    }
    if rows.is_empty() {
        return (0..n * n).map(|p| basis_vector(n * n, p)).collect();
    }
    Matrix::from_rows(rows).kernel()
}

/// `δ_φ f(x, y) = φ(f x, y) + φ(x, f y) − f(φ(x, y))` as a law.
pub fn coboundary(phi: &StructureTensor, f: &Matrix<Scalar>) -> StructureTensor {
    let n = phi.dim();
    let mut out = StructureTensor::zero(n);
    for i in 0..n {
        let ei = basis_vector(n, i);
        let fi = f.apply(&ei);
        for j in i..n {
            let ej = basis_vector(n, j);
            let fj = f.apply(&ej);
            let a = phi.product_unchecked(&fi, &ej);
            let b = phi.product_unchecked(&ei, &fj);
            let c = f.apply(&phi.product_unchecked(&ei, &ej));
            for k in 0..n {
                let v = &(&a[k] + &b[k]) - &c[k];
                if !v.is_zero() {
                    out.set(i, j, k, v);
                }
            }
        }
    }
    out
}

/// Dimension of `{δ_φ f}`, the tangent space to the orbit, computed as the
/// rank of `f ↦ δ_φ f` on the elementary matrices.
pub fn coboundary_space_dim(phi: &StructureTensor) -> usize {
    let n = phi.dim();
    let mut images = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            let mut e = Matrix::<Scalar>::zeros(n, n);
            e.set(a, b, Scalar::one());
            let d = coboundary(phi, &e);
            let mut flat = Vec::new();
            for i in 0..n {
                for j in i..n {
                    flat.extend(d.basis_product(i, j));
                }
            }
            images.push(flat);
        }
    }
    Matrix::from_rows(images).rank()
}

/// `dim 𝒪(φ) = n² − dim Der(φ)`.
pub fn orbit_dim(phi: &StructureTensor) -> usize {
    let n = phi.dim();
    n * n - derivation_dim(phi)
}

/// All tabulated invariants of a nilpotent law.
pub fn profile(phi: &StructureTensor) -> Result<InvariantProfile> {
    let n = phi.dim();
    let dims = central_series_dims(phi);
    if dims.last() != Some(&0) {
        return Err(Error::NotNilpotent);
    }
    let nil = dims.len();
    let ((char_seq, dim_der), (dim_center, associative)) = rayon::join(
        || rayon::join(|| char_sequence(phi), || derivation_dim(phi)),
        || rayon::join(|| center(phi).len(), || phi.is_associative()),
    );
    Ok(InvariantProfile {
        char_seq: char_seq?,
        nilindex: nil,
        dim_center,
        dim_der,
        dim_orbit: n * n - dim_der,
        associative,
        dims_central_series: dims,
    })
}
