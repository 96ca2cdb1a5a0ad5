//! Structure tensors `a_ij^k` and the operations defined directly on them:
//! products, the Jordan identity, associativity, changes of basis and
//! multiplication operators.

use std::fmt;

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// Coordinates of a vector in the standard basis.
pub type Vector = Vec<Scalar>;

/// The coefficient field a law is declared over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Field {
    /// ℚ, modelling the real case.
    Rational,
    /// ℚ(i), modelling the complex case.
    Gaussian,
}

/// Largest dimension the dense representation is meant for.
pub const MAX_DIM: usize = 8;

/// A bilinear law on `kⁿ` given by its structure constants, stored densely.
///
/// Commutative laws keep `a_ij^k = a_ji^k`; the `bilinear` flag marks laws
/// (such as associative algebras fed to the squaring map) that are allowed to
/// be nonsymmetric.
#[derive(Clone, Debug)]
pub struct StructureTensor {
    n: usize,
    field: Field,
    symmetric: bool,
    a: Vec<Scalar>,
}

impl PartialEq for StructureTensor {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.a == other.a
    }
}

impl Eq for StructureTensor {}

impl std::hash::Hash for StructureTensor {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.n.hash(state);
        self.a.hash(state);
    }
}

pub fn basis_vector(n: usize, i: usize) -> Vector {
    let mut v = vec![Scalar::zero(); n];
    v[i] = Scalar::one();
    v
}

pub fn is_zero_vector(v: &[Scalar]) -> bool {
    v.iter().all(Scalar::is_zero)
}

impl StructureTensor {
    /// The zero (abelian) law of dimension `n`.
    pub fn zero(n: usize) -> Self {
        assert!((1..=MAX_DIM).contains(&n), "dimension {n} out of range");
        StructureTensor {
            n,
            field: Field::Rational,
            symmetric: true,
            a: vec![Scalar::zero(); n * n * n],
        }
    }

    /// An empty law that will not be symmetrised on assignment.
    pub fn zero_bilinear(n: usize) -> Self {
        StructureTensor {
            symmetric: false,
            ..StructureTensor::zero(n)
        }
    }

    /// Builds a commutative law from 1-based products `(i, j, k, c)` meaning
    /// `φ(e_i, e_j) += c·e_k`.
    pub fn from_products(n: usize, products: &[(usize, usize, usize, Scalar)]) -> Self {
        let mut t = StructureTensor::zero(n);
        for (i, j, k, c) in products {
            t.set(i - 1, j - 1, k - 1, c.clone());
        }
        t
    }

    /// Like [`from_products`](Self::from_products) with integer coefficients.
    pub fn from_int_products(n: usize, products: &[(usize, usize, usize, i64)]) -> Self {
        let p: Vec<_> = products
            .iter()
            .map(|&(i, j, k, c)| (i, j, k, Scalar::from_int(c)))
            .collect();
        StructureTensor::from_products(n, &p)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Whether the law is flagged as possibly nonsymmetric.
    pub fn is_bilinear_flagged(&self) -> bool {
        !self.symmetric
    }

    fn idx(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.n + j) * self.n + k
    }

    /// `a_ij^k`, 0-based.
    pub fn get(&self, i: usize, j: usize, k: usize) -> &Scalar {
        &self.a[self.idx(i, j, k)]
    }

    /// Sets `a_ij^k` (and `a_ji^k` for commutative laws), 0-based.
    pub fn set(&mut self, i: usize, j: usize, k: usize, c: Scalar) {
        if !c.is_real() {
            self.field = Field::Gaussian;
        }
        let p = self.idx(i, j, k);
        self.a[p] = c.clone();
        if self.symmetric {
            let q = self.idx(j, i, k);
            self.a[q] = c;
        }
    }

    pub(crate) fn set_field(&mut self, field: Field) {
        self.field = field;
    }

    fn refresh_field(&mut self) {
        self.field = if self.a.iter().all(Scalar::is_real) {
            Field::Rational
        } else {
            Field::Gaussian
        };
    }

    pub fn is_zero(&self) -> bool {
        self.a.iter().all(Scalar::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.n;
        (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| self.get(i, j, k) == self.get(j, i, k))))
    }

    /// `φ(e_i, e_j)` in coordinates, 0-based.
    pub fn basis_product(&self, i: usize, j: usize) -> Vector {
        (0..self.n).map(|k| self.get(i, j, k).clone()).collect()
    }

    fn check_len(&self, v: &[Scalar]) -> Result<()> {
        if v.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: v.len(),
            });
        }
        Ok(())
    }

    /// `φ(x, y) = Σ xᵢ yⱼ a_ij^k e_k`.
    pub fn product(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vector> {
        self.check_len(x)?;
        self.check_len(y)?;
        Ok(self.product_unchecked(x, y))
    }

    pub(crate) fn product_unchecked(&self, x: &[Scalar], y: &[Scalar]) -> Vector {
        let n = self.n;
        let mut out = vec![Scalar::zero(); n];
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let w = xi * yj;
                let base = self.idx(i, j, 0);
                for (k, o) in out.iter_mut().enumerate() {
                    let c = &self.a[base + k];
                    if !c.is_zero() {
                        *o += &w * c;
                    }
                }
            }
        }
        out
    }

    /// `φ(φ(x,x), φ(x,y)) − φ(x, φ(φ(x,x), y))`; zero iff the Jordan identity
    /// holds at `(x, y)`.
    pub fn jordan_defect(&self, x: &[Scalar], y: &[Scalar]) -> Result<Vector> {
        self.check_len(x)?;
        self.check_len(y)?;
        let xx = self.product_unchecked(x, x);
        let lhs = self.product_unchecked(&xx, &self.product_unchecked(x, y));
        let rhs = self.product_unchecked(x, &self.product_unchecked(&xx, y));
        Ok(lhs.iter().zip(&rhs).map(|(a, b)| a - b).collect())
    }

    /// Whether the law is commutative and satisfies the Jordan identity.
    ///
    /// The defect `J(x, y)` is cubic in `x` and linear in `y`. Over a field
    /// of characteristic 0 a cubic form vanishes iff its full polarization
    /// does, and the polarization is multilinear, so it suffices to evaluate
    /// it on basis triples `e_a, e_b, e_c` (`a ≤ b ≤ c`) and `y = e_m`:
    ///
    /// `Σ_{cyc} φ(φ(e_a,e_b), φ(e_c,y)) − φ(e_c, φ(φ(e_a,e_b), y))`.
    pub fn is_jordan(&self) -> bool {
        if !self.is_symmetric() {
            return false;
        }
        let n = self.n;
        let prods: Vec<Vec<Vector>> = (0..n)
            .map(|i| (0..n).map(|j| self.basis_product(i, j)).collect())
            .collect();
        for a in 0..n {
            for b in a..n {
                for c in b..n {
                    let triple = [(a, b, c), (b, c, a), (c, a, b)];
                    for m in 0..n {
                        let mut acc = vec![Scalar::zero(); n];
                        for &(p, q, k) in &triple {
                            let pq = &prods[p][q];
                            if is_zero_vector(pq) {
                                continue;
                            }
                            let lhs = self.product_unchecked(pq, &prods[k][m]);
                            let inner = self.product_unchecked(pq, &basis_vector(n, m));
                            let rhs = self.product_unchecked(&basis_vector(n, k), &inner);
                            for ((o, l), r) in acc.iter_mut().zip(&lhs).zip(&rhs) {
                                *o += &(l - r);
                            }
                        }
                        if !is_zero_vector(&acc) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// `φ(φ(e_i,e_j),e_k) = φ(e_i,φ(e_j,e_k))` for every basis triple.
    pub fn is_associative(&self) -> bool {
        let n = self.n;
        let basis: Vec<Vector> = (0..n).map(|i| basis_vector(n, i)).collect();
        let table: Vec<Vec<Vector>> = (0..n)
            .map(|i| (0..n).map(|j| self.basis_product(i, j)).collect())
            .collect();
        (0..n).all(|i| {
            (0..n).all(|j| {
                (0..n).all(|k| {
                    self.product_unchecked(&table[i][j], &basis[k])
                        == self.product_unchecked(&basis[i], &table[j][k])
                })
            })
        })
    }

    /// The law transported along `f`: `ψ(x, y) = f⁻¹(φ(f x, f y))`.
    /// Columns of `f` are the images `f(e_j)`.
    pub fn transform(&self, f: &Matrix<Scalar>) -> Result<StructureTensor> {
        if f.rows() != self.n || f.cols() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: f.rows(),
            });
        }
        let finv = f.inverse()?;
        let n = self.n;
        let images: Vec<Vector> = (0..n).map(|j| f.col(j)).collect();
        let mut out = StructureTensor {
            n,
            field: self.field,
            symmetric: self.symmetric,
            a: vec![Scalar::zero(); n * n * n],
        };
        for i in 0..n {
            let lo = if self.symmetric { i } else { 0 };
            for j in lo..n {
                let v = self.product_unchecked(&images[i], &images[j]);
                if is_zero_vector(&v) {
                    continue;
                }
                let w = finv.apply(&v);
                for (k, c) in w.into_iter().enumerate() {
                    if !c.is_zero() {
                        out.set(i, j, k, c);
                    }
                }
            }
        }
        out.refresh_field();
        if self.field == Field::Gaussian {
            out.field = Field::Gaussian;
        }
        Ok(out)
    }

    /// Matrix of `L_x = φ(x, ·)`; column `j` is `φ(x, e_j)`.
    pub fn mult_operator(&self, x: &[Scalar]) -> Result<Matrix<Scalar>> {
        self.check_len(x)?;
        let n = self.n;
        let cols: Vec<Vector> = (0..n)
            .map(|j| self.product_unchecked(x, &basis_vector(n, j)))
            .collect();
        Ok(Matrix::from_cols(&cols))
    }

    /// Nonzero structure constants `(i, j, k, c)` with `i ≤ j` for commutative
    /// laws, 0-based.
    pub fn nonzero_entries(&self) -> Vec<(usize, usize, usize, Scalar)> {
        let n = self.n;
        let mut out = Vec::new();
        for i in 0..n {
            let lo = if self.symmetric { i } else { 0 };
            for j in lo..n {
                for k in 0..n {
                    let c = self.get(i, j, k);
                    if !c.is_zero() {
                        out.push((i, j, k, c.clone()));
                    }
                }
            }
        }
        out
    }

    /// `½[β(x,y) + β(y,x)]` as a commutative law.
    pub fn symmetrized(&self) -> StructureTensor {
        let n = self.n;
        let half = Scalar::from_frac(1, 2);
        let mut out = StructureTensor::zero(n);
        for i in 0..n {
            for j in i..n {
                for k in 0..n {
                    let v = &(self.get(i, j, k) + self.get(j, i, k)) * &half;
                    if !v.is_zero() {
                        out.set(i, j, k, v);
                    }
                }
            }
        }
        out.refresh_field();
        out
    }

    /// Entrywise linear combination `self + c·other`.
    pub fn add_scaled(&self, other: &StructureTensor, c: &Scalar) -> Result<StructureTensor> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: other.n,
            });
        }
        let mut out = self.clone();
        for (o, b) in out.a.iter_mut().zip(&other.a) {
            if !b.is_zero() {
                *o += &(b * c);
            }
        }
        out.symmetric = self.symmetric && other.symmetric;
        out.refresh_field();
        Ok(out)
    }
}

/// The evaluation points used by [`StructureTensor::is_jordan`].
pub fn polarization_set(n: usize) -> Vec<Vector> {
    let coeffs = [
        Scalar::from_int(-1),
        Scalar::zero(),
        Scalar::one(),
        Scalar::from_int(2),
    ];
    let width = n.min(3);
    let mut seen = HashSet::new();
    let mut out: Vec<Vector> = Vec::new();
    for support in index_subsets(n, width) {
        for pick in cartesian_coeffs(coeffs.len(), width) {
            let mut x = vec![Scalar::zero(); n];
            for (slot, &idx) in support.iter().enumerate() {
                x[idx] = coeffs[pick[slot]].clone();
            }
            if !is_zero_vector(&x) && seen.insert(x.clone()) {
                out.push(x);
            }
        }
    }
    out
}

/// All `k`-element subsets of `0..n` in lexicographic order.
pub(crate) fn index_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// All index tuples in `0..base` of the given width, odometer order.
fn cartesian_coeffs(base: usize, width: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0usize; width];
    loop {
        out.push(cur.clone());
        let mut pos = 0;
        loop {
            if pos == width {
                return out;
            }
            cur[pos] += 1;
            if cur[pos] < base {
                break;
            }
            cur[pos] = 0;
            pos += 1;
        }
    }
}

impl fmt::Display for StructureTensor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::format::write_algebra(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(n: usize, i: usize) -> Vector {
        basis_vector(n, i - 1)
    }

    fn add(a: &[Scalar], b: &[Scalar]) -> Vector {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    /// φ1 of the 3-dimensional table: e1e1 = e2, e1e2 = e3.
    fn filiform3() -> StructureTensor {
        StructureTensor::from_int_products(3, &[(1, 1, 2, 1), (1, 2, 3, 1)])
    }

    #[test]
    fn product_examples() {
        let phi = filiform3();
        assert_eq!(phi.product(&e(3, 1), &e(3, 1)).unwrap(), e(3, 2));
        let zero = vec![Scalar::zero(); 3];
        assert_eq!(phi.product(&zero, &e(3, 2)).unwrap(), zero);
        // (e1 + e2)·e1 = e2 + e3
        let x = add(&e(3, 1), &e(3, 2));
        assert_eq!(phi.product(&x, &e(3, 1)).unwrap(), add(&e(3, 2), &e(3, 3)));
        assert!(matches!(
            phi.product(&e(2, 1), &e(3, 1)),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn jordan_defect_examples() {
        assert!(is_zero_vector(&filiform3().jordan_defect(&e(3, 1), &e(3, 2)).unwrap()));
        let ab = StructureTensor::zero(3);
        assert!(is_zero_vector(&ab.jordan_defect(&e(3, 1), &e(3, 3)).unwrap()));
        // e1e1 = e2, e1e2 = e1 in dimension 2: defect at (e1, e1) is -e2
        let bad = StructureTensor::from_int_products(2, &[(1, 1, 2, 1), (1, 2, 1, 1)]);
        let d = bad.jordan_defect(&e(2, 1), &e(2, 1)).unwrap();
        assert_eq!(d, vec![Scalar::zero(), Scalar::from_int(-1)]);
        assert!(!bad.is_jordan());
        assert!(filiform3().is_jordan());
        assert!(ab.is_jordan());
    }

    #[test]
    fn polarization_set_covers_the_grid() {
        // dimension 3: the whole {-1,0,1,2}^3 grid minus the origin
        assert_eq!(polarization_set(3).len(), 63);
        // dimension 4: four planes of 63 points, sharing lower-dimensional faces
        let p4 = polarization_set(4);
        assert!(p4.len() > 63 && p4.len() < 4 * 63);
    }

    #[test]
    fn mult_operator_examples() {
        let phi = filiform3();
        let l = phi.mult_operator(&e(3, 1)).unwrap();
        assert_eq!(l.col(0), e(3, 2));
        assert_eq!(l.col(1), e(3, 3));
        assert!(is_zero_vector(&l.col(2)));
        assert!(phi.mult_operator(&[Scalar::zero(), Scalar::zero(), Scalar::zero()])
            .unwrap()
            .is_zero());
        // φ8 of the 4-dimensional table, x = e1 + e3
        let phi8 = StructureTensor::from_int_products(4, &[(1, 1, 2, 1), (3, 3, 4, 1)]);
        let l8 = phi8.mult_operator(&add(&e(4, 1), &e(4, 3))).unwrap();
        assert_eq!(l8.col(0), e(4, 2));
        assert_eq!(l8.col(2), e(4, 4));
        assert_eq!(l8.rank(), 2);
    }

    #[test]
    fn transform_normalizes_a_square() {
        // e1e1 = e2, e3e3 = 4e2; scaling e3 by 1/2 gives e3e3 = e2
        let phi = StructureTensor::from_int_products(3, &[(1, 1, 2, 1), (3, 3, 2, 4)]);
        let mut f = Matrix::<Scalar>::identity(3);
        f.set(2, 2, Scalar::from_frac(1, 2));
        let psi = phi.transform(&f).unwrap();
        assert_eq!(
            psi,
            StructureTensor::from_int_products(3, &[(1, 1, 2, 1), (3, 3, 2, 1)])
        );
        assert_eq!(phi.transform(&Matrix::identity(3)).unwrap(), phi);
    }

    #[test]
    fn transform_of_the_hyperbolic_law() {
        // e1e2 = e3 in the basis E1 = e1+e2, E2 = 2e3, E3 = e1-e2
        let phi = StructureTensor::from_int_products(3, &[(1, 2, 3, 1)]);
        let f = Matrix::from_rows(vec![
            vec![Scalar::one(), Scalar::zero(), Scalar::one()],
            vec![Scalar::one(), Scalar::zero(), Scalar::from_int(-1)],
            vec![Scalar::zero(), Scalar::from_int(2), Scalar::zero()],
        ]);
        let psi = phi.transform(&f).unwrap();
        assert_eq!(
            psi,
            StructureTensor::from_int_products(3, &[(1, 1, 2, 1), (3, 3, 2, -1)])
        );
    }

    #[test]
    fn singular_transform_is_rejected() {
        let phi = filiform3();
        assert_eq!(
            phi.transform(&Matrix::zeros(3, 3)).unwrap_err(),
            Error::Singular
        );
    }

    #[test]
    fn associativity() {
        assert!(filiform3().is_associative());
        assert!(StructureTensor::zero(2).is_associative());
        // e1e2 = e3 alone is associative; adding e1e3 = e2 is not
        let p = StructureTensor::from_int_products(3, &[(1, 2, 3, 1), (1, 3, 2, 1)]);
        assert!(!p.is_associative());
    }
}
