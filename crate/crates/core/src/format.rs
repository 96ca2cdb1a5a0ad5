//! Text formats for algebras, contraction families and deformation directions.
//!
//! Algebra files:
//!
//! ```text
//! dim 4
//! field Qi          # or Q
//! bilinear          # optional: do not symmetrise
//! e1*e1 = e2
//! e4*e4 = -e2 - 1/2*e3
//! ```
//!
//! Family files hold lines `f(ei) = c * t^(p/q) * ej + ...`; omitted images
//! fix the basis vector. Deformation files group product lines under
//! `deg K:` headers.

use std::collections::BTreeMap;

use num_rational::Ratio;
use num_traits::{Signed, Zero};

use crate::degeneration::{ContractionFamily, DeformationDirection};
use crate::error::ParseError;
use crate::matrix::Matrix;
use crate::puiseux::{Exponent, PuiseuxPoly};
use crate::ring::Ring;
use crate::scalar::Scalar;
use crate::tensor::{Field, StructureTensor};
use crate::text::{split_factors, split_top_level, strip_comment};

type PResult<T> = std::result::Result<T, ParseError>;

fn parse_basis_index(s: &str, n: Option<usize>) -> PResult<usize> {
    let s = s.trim();
    let idx = s
        .strip_prefix('e')
        .and_then(|d| d.parse::<usize>().ok())
        .ok_or_else(|| ParseError::new(0, format!("expected a basis vector like `e2`, found `{s}`")))?;
    if idx == 0 {
        return Err(ParseError::new(0, "basis vectors are numbered from e1"));
    }
    if let Some(n) = n {
        if idx > n {
            return Err(ParseError::new(0, format!("`{s}` exceeds dimension {n}")));
        }
    }
    Ok(idx - 1)
}

fn parse_dim(rest: &str) -> PResult<usize> {
    let n: usize = rest
        .trim()
        .parse()
        .map_err(|_| ParseError::new(0, format!("invalid dimension `{}`", rest.trim())))?;
    if !(1..=crate::tensor::MAX_DIM).contains(&n) {
        return Err(ParseError::new(
            0,
            format!("dimension must be between 1 and {}", crate::tensor::MAX_DIM),
        ));
    }
    Ok(n)
}

/// A linear combination `c1*ek + c2*em - ...` as `(index, coefficient)` pairs.
fn parse_combination(rhs: &str, n: usize) -> PResult<BTreeMap<usize, Scalar>> {
    let rhs = rhs.trim();
    let mut out: BTreeMap<usize, Scalar> = BTreeMap::new();
    if rhs == "0" {
        return Ok(out);
    }
    let terms = split_top_level(rhs, &['+', '-']);
    if terms.is_empty() {
        return Err(ParseError::new(0, "empty right-hand side"));
    }
    for (negative, term) in terms {
        if term.is_empty() {
            return Err(ParseError::new(0, format!("malformed sum `{rhs}`")));
        }
        let factors = split_factors(term);
        let (last, coeffs) = factors.split_last().expect("nonempty");
        let k = parse_basis_index(last, Some(n))?;
        let mut c = Scalar::one();
        for f in coeffs {
            let v: Scalar = f
                .parse()
                .map_err(|_| ParseError::new(0, format!("invalid coefficient `{f}`")))?;
            c = &c * &v;
        }
        if negative {
            c = -c;
        }
        let entry = out.entry(k).or_default();
        *entry += c;
    }
    out.retain(|_, v| !v.is_zero());
    Ok(out)
}

/// Splits `ei*ej` into 0-based indices.
fn parse_lhs_pair(lhs: &str, n: usize) -> PResult<(usize, usize)> {
    let parts = split_factors(lhs);
    if parts.len() != 2 {
        return Err(ParseError::new(0, format!("expected `ei*ej`, found `{}`", lhs.trim())));
    }
    Ok((parse_basis_index(parts[0], Some(n))?, parse_basis_index(parts[1], Some(n))?))
}

struct ProductTable {
    n: usize,
    bilinear: bool,
    entries: BTreeMap<(usize, usize), BTreeMap<usize, Scalar>>,
}

impl ProductTable {
    fn new(n: usize, bilinear: bool) -> Self {
        ProductTable {
            n,
            bilinear,
            entries: BTreeMap::new(),
        }
    }

    fn add_line(&mut self, line: &str) -> PResult<()> {
        let (lhs, rhs) = line
            .split_once('=')
            .ok_or_else(|| ParseError::new(0, format!("expected `ei*ej = ...`, found `{line}`")))?;
        let (mut i, mut j) = parse_lhs_pair(lhs, self.n)?;
        if !self.bilinear && i > j {
            std::mem::swap(&mut i, &mut j);
        }
        let value = parse_combination(rhs, self.n)?;
        if let Some(prev) = self.entries.get(&(i, j)) {
            if prev != &value {
                return Err(ParseError::new(
                    0,
                    format!("contradictory product for e{}*e{}", i + 1, j + 1),
                ));
            }
        }
        self.entries.insert((i, j), value);
        Ok(())
    }

    fn into_tensor(self) -> StructureTensor {
        let mut t = if self.bilinear {
            StructureTensor::zero_bilinear(self.n)
        } else {
            StructureTensor::zero(self.n)
        };
        for ((i, j), value) in self.entries {
            for (k, c) in value {
                t.set(i, j, k, c);
            }
        }
        t
    }
}

/// Parses an algebra file.
pub fn parse_algebra(text: &str) -> PResult<StructureTensor> {
    let mut n: Option<usize> = None;
    let mut field: Option<Field> = None;
    let mut bilinear = false;
    let mut table: Option<ProductTable> = None;
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        let at = |e: ParseError| e.at(lineno);
        if let Some(rest) = line.strip_prefix("dim ") {
            if n.is_some() {
                return Err(ParseError::new(lineno, "duplicate `dim` header"));
            }
            if table.is_some() {
                return Err(ParseError::new(lineno, "`dim` must precede the products"));
            }
            n = Some(parse_dim(rest).map_err(at)?);
            continue;
        }
        if let Some(rest) = line.strip_prefix("field ") {
            if table.is_some() {
                return Err(ParseError::new(lineno, "`field` must precede the products"));
            }
            field = Some(match rest.trim() {
                "Q" => Field::Rational,
                "Qi" => Field::Gaussian,
                other => {
                    return Err(ParseError::new(
                        lineno,
                        format!("unknown field `{other}` (expected Q or Qi)"),
                    ))
                }
            });
            continue;
        }
        if line == "bilinear" {
            if table.is_some() {
                return Err(ParseError::new(lineno, "`bilinear` must precede the products"));
            }
            bilinear = true;
            continue;
        }
        let dim = n.ok_or_else(|| ParseError::new(lineno, "missing `dim N` header"))?;
        let tab = table.get_or_insert_with(|| ProductTable::new(dim, bilinear));
        tab.add_line(line).map_err(at)?;
        if field == Some(Field::Rational) {
            if let Some(bad) = tab
                .entries
                .values()
                .flat_map(|m| m.values())
                .find(|c| !c.is_real())
            {
                return Err(ParseError::new(
                    lineno,
                    format!("coefficient {bad} is not rational but the field is Q"),
                ));
            }
        }
    }
    let dim = n.ok_or_else(|| ParseError::new(0, "missing `dim N` header"))?;
    let mut t = table
        .unwrap_or_else(|| ProductTable::new(dim, bilinear))
        .into_tensor();
    if field == Some(Field::Gaussian) {
        t.set_field(Field::Gaussian);
    }
    Ok(t)
}

fn field_name(f: Field) -> &'static str {
    match f {
        Field::Rational => "Q",
        Field::Gaussian => "Qi",
    }
}

fn coeff_prefix(c: &Scalar) -> String {
    if c.is_one() {
        String::new()
    } else if c.is_compound() {
        format!("({c})*")
    } else {
        format!("{c}*")
    }
}

fn write_combination(terms: &[(usize, Scalar)]) -> String {
    let mut out = String::new();
    for (idx, (k, c)) in terms.iter().enumerate() {
        let neg = if c.re().is_zero() {
            c.im().is_negative()
        } else {
            c.re().is_negative()
        };
        let mag = if neg { -c } else { c.clone() };
        let body = format!("{}e{}", coeff_prefix(&mag), k + 1);
        if idx == 0 {
            out.push_str(if neg { "-" } else { "" });
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&body);
    }
    out
}

/// Serialises a law in the algebra file format.
pub fn write_algebra(t: &StructureTensor) -> String {
    let mut out = format!("dim {}\nfield {}\n", t.dim(), field_name(t.field()));
    if t.is_bilinear_flagged() {
        out.push_str("bilinear\n");
    }
    let mut grouped: BTreeMap<(usize, usize), Vec<(usize, Scalar)>> = BTreeMap::new();
    for (i, j, k, c) in t.nonzero_entries() {
        grouped.entry((i, j)).or_default().push((k, c));
    }
    for ((i, j), terms) in grouped {
        out.push_str(&format!("e{}*e{} = {}\n", i + 1, j + 1, write_combination(&terms)));
    }
    out
}

fn parse_exponent(s: &str) -> PResult<Exponent> {
    let s = s.trim();
    let inner = s
        .strip_prefix('(')
        .and_then(|r| r.strip_suffix(')'))
        .unwrap_or(s)
        .trim();
    let bad = || ParseError::new(0, format!("invalid exponent `{s}`"));
    let (num, den) = match inner.split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (inner, "1"),
    };
    let p: i64 = num.parse().map_err(|_| bad())?;
    let q: i64 = den.parse().map_err(|_| bad())?;
    if q == 0 {
        return Err(bad());
    }
    Ok(Ratio::new(p, q))
}

/// One image line `c * t^(p/q) * ej + ...` as a column of Puiseux entries.
fn parse_image(rhs: &str, n: usize) -> PResult<Vec<PuiseuxPoly>> {
    let mut col = vec![PuiseuxPoly::zero(); n];
    let terms = split_top_level(rhs, &['+', '-']);
    if terms.is_empty() {
        return Err(ParseError::new(0, "empty image"));
    }
    for (negative, term) in terms {
        if term.is_empty() {
            return Err(ParseError::new(0, format!("malformed sum `{}`", rhs.trim())));
        }
        let factors = split_factors(term);
        let (last, rest) = factors.split_last().expect("nonempty");
        let k = parse_basis_index(last, Some(n))?;
        let mut c = Scalar::one();
        let mut q: Exponent = Ratio::from_integer(0);
        for f in rest {
            if *f == "t" {
                q += Ratio::from_integer(1);
            } else if let Some(e) = f.strip_prefix("t^") {
                q += parse_exponent(e)?;
            } else {
                let v: Scalar = f
                    .parse()
                    .map_err(|_| ParseError::new(0, format!("invalid factor `{f}`")))?;
                c = &c * &v;
            }
        }
        if negative {
            c = -c;
        }
        col[k] = col[k].plus(&PuiseuxPoly::monomial(c, q));
    }
    Ok(col)
}

/// Parses a family file for a law of dimension `n`.
pub fn parse_family(text: &str, n: usize) -> PResult<ContractionFamily> {
    let mut cols: Vec<Option<Vec<PuiseuxPoly>>> = vec![None; n];
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        let at = |e: ParseError| e.at(lineno);
        if let Some(rest) = line.strip_prefix("dim ") {
            let d = parse_dim(rest).map_err(at)?;
            if d != n {
                return Err(ParseError::new(
                    lineno,
                    format!("family has dimension {d} but the algebra has {n}"),
                ));
            }
            continue;
        }
        let (lhs, rhs) = line.split_once('=').ok_or_else(|| {
            ParseError::new(lineno, format!("expected `f(ei) = ...`, found `{line}`"))
        })?;
        let arg = lhs
            .trim()
            .strip_prefix("f(")
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| ParseError::new(lineno, format!("expected `f(ei)`, found `{}`", lhs.trim())))?;
        let i = parse_basis_index(arg, Some(n)).map_err(at)?;
        if cols[i].is_some() {
            return Err(ParseError::new(lineno, format!("image of e{} given twice", i + 1)));
        }
        cols[i] = Some(parse_image(rhs, n).map_err(at)?);
    }
    let matrix = Matrix::from_fn(n, n, |r, c| match &cols[c] {
        Some(col) => col[r].clone(),
        None if r == c => PuiseuxPoly::one(),
        None => PuiseuxPoly::zero(),
    });
    Ok(ContractionFamily::new(matrix))
}

fn write_exponent(q: &Exponent) -> String {
    if q.is_integer() {
        if *q.numer() == 1 {
            "t".to_string()
        } else {
            format!("t^{}", q.numer())
        }
    } else {
        format!("t^({}/{})", q.numer(), q.denom())
    }
}

/// Serialises a family; identity columns are omitted.
pub fn write_family(f: &ContractionFamily) -> String {
    let m = f.matrix();
    let n = m.rows();
    let mut out = String::new();
    for c in 0..n {
        let fixed = (0..n).all(|r| {
            let e = m.get(r, c);
            if r == c {
                *e == PuiseuxPoly::one()
            } else {
                e.is_zero()
            }
        });
        if fixed {
            continue;
        }
        let mut parts = Vec::new();
        for r in 0..n {
            for (q, coef) in m.get(r, c).terms() {
                let mut factors = Vec::new();
                if !coef.is_one() {
                    factors.push(if coef.is_compound() {
                        format!("({coef})")
                    } else {
                        coef.to_string()
                    });
                }
                if !q.is_zero() {
                    factors.push(write_exponent(q));
                }
                factors.push(format!("e{}", r + 1));
                parts.push(factors.join(" * "));
            }
        }
        let rhs = if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        };
        out.push_str(&format!("f(e{}) = {}\n", c + 1, rhs));
    }
    out
}

/// Parses a deformation file for a law of dimension `n`.
pub fn parse_deformation(text: &str, n: usize) -> PResult<DeformationDirection> {
    let mut blocks: BTreeMap<usize, ProductTable> = BTreeMap::new();
    let mut current: Option<usize> = None;
    for (idx, raw) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = strip_comment(raw);
        if line.is_empty() {
            continue;
        }
        let at = |e: ParseError| e.at(lineno);
        if let Some(rest) = line.strip_prefix("dim ") {
            let d = parse_dim(rest).map_err(at)?;
            if d != n {
                return Err(ParseError::new(
                    lineno,
                    format!("direction has dimension {d} but the algebra has {n}"),
                ));
            }
            continue;
        }
        if let Some(rest) = line.strip_prefix("deg ") {
            let k: usize = rest
                .trim()
                .strip_suffix(':')
                .and_then(|d| d.trim().parse().ok())
                .filter(|&k| k >= 1)
                .ok_or_else(|| ParseError::new(lineno, format!("expected `deg K:`, found `{line}`")))?;
            if blocks.contains_key(&k) {
                return Err(ParseError::new(lineno, format!("degree {k} given twice")));
            }
            blocks.insert(k, ProductTable::new(n, false));
            current = Some(k);
            continue;
        }
        let k = current.ok_or_else(|| ParseError::new(lineno, "product line before any `deg K:` header"))?;
        blocks
            .get_mut(&k)
            .expect("block exists")
            .add_line(line)
            .map_err(at)?;
    }
    let top = blocks.keys().next_back().copied().unwrap_or(0);
    let mut terms: Vec<StructureTensor> = vec![StructureTensor::zero(n); top];
    for (k, table) in blocks {
        terms[k - 1] = table.into_tensor();
    }
    Ok(DeformationDirection::new(terms))
}

/// Serialises a deformation direction.
pub fn write_deformation(d: &DeformationDirection) -> String {
    let mut out = String::new();
    for (k, t) in d.terms().iter().enumerate() {
        out.push_str(&format!("deg {}:\n", k + 1));
        let body = write_algebra(t);
        for line in body.lines().skip(2) {
            out.push_str(line);
            out.push('\n');
        }
    }
    out
}
