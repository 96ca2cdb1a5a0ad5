#![allow(dead_code)]

use jordan_core::{Matrix, Scalar, StructureTensor};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn int_matrix(rows: &[&[i64]]) -> Matrix<Scalar> {
    Matrix::from_rows(
        rows.iter()
            .map(|r| r.iter().map(|&v| Scalar::from_int(v)).collect())
            .collect(),
    )
}

/// A random invertible matrix with entries `p/q`, `|p| ≤ 3`, `q ∈ {1, 2, 3}`.
pub fn random_invertible(rng: &mut ChaCha8Rng, n: usize) -> Matrix<Scalar> {
    loop {
        let m = Matrix::from_fn(n, n, |_, _| {
            Scalar::from_frac(rng.gen_range(-3..=3), rng.gen_range(1..=3))
        });
        if !m.det().is_zero() {
            return m;
        }
    }
}

/// Random strictly triangular symmetric laws (`e_i e_j` lands beyond `max(i, j)`)
/// that satisfy the Jordan identity.
pub fn random_jordan(rng: &mut ChaCha8Rng, n: usize) -> StructureTensor {
    loop {
        let mut t = StructureTensor::zero(n);
        for i in 0..n {
            for j in i..n {
                for k in j + 1..n {
                    if rng.gen_bool(0.3) {
                        let c = rng.gen_range(-2..=2);
                        if c != 0 {
                            t.set(i, j, k, Scalar::from_int(c));
                        }
                    }
                }
            }
        }
        if t.is_jordan() {
            return t;
        }
    }
}

/// Determinant by cofactor expansion along the first row.
pub fn cofactor_det(m: &[Vec<i64>]) -> i64 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut acc = 0;
    for c in 0..n {
        if m[0][c] == 0 {
            continue;
        }
        let minor: Vec<Vec<i64>> = m[1..]
            .iter()
            .map(|r| r.iter().enumerate().filter(|&(k, _)| k != c).map(|(_, &v)| v).collect())
            .collect();
        let sign = if c % 2 == 0 { 1 } else { -1 };
        acc += sign * m[0][c] * cofactor_det(&minor);
    }
    acc
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Rank as the size of the largest nonvanishing minor.
pub fn minor_rank(m: &[Vec<i64>]) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    for k in (1..=rows.min(cols)).rev() {
        for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let sub: Vec<Vec<i64>> = rs.iter().map(|&r| cs.iter().map(|&c| m[r][c]).collect()).collect();
                if cofactor_det(&sub) != 0 {
                    return k;
                }
            }
        }
    }
    0
}

/// A deterministic spread of 4×4 matrices with entries in {−1, 0, 1}: 600
/// matrices along a stride through all 3¹⁶, and 300 more with a repeated or
/// negated row.
pub fn ternary_matrices() -> Vec<Vec<Vec<i64>>> {
    let total: u64 = 3u64.pow(16);
    let decode = |mut code: u64| -> Vec<Vec<i64>> {
        let mut m = vec![vec![0i64; 4]; 4];
        for row in m.iter_mut() {
            for cell in row.iter_mut() {
                *cell = (code % 3) as i64 - 1;
                code /= 3;
            }
        }
        m
    };
    let mut out: Vec<Vec<Vec<i64>>> = (0..600u64).map(|i| decode((i * 71_761 + 13) % total)).collect();
    for i in 0..300u64 {
        let mut m = decode((i * 104_729 + 7) % total);
        let (src, dst) = ((i % 4) as usize, ((i / 4 + 1) % 4) as usize);
        if src != dst {
            let sign = if i % 2 == 0 { 1 } else { -1 };
            m[dst] = m[src].iter().map(|v| sign * v).collect();
        } else {
            m[dst] = vec![0; 4];
        }
        out.push(m);
    }
    out
}
