//! The registry of canonical laws: complex classes in dimensions 2–4, the
//! real three-dimensional classes, and the three-dimensional nilpotent
//! associative laws together with the squaring map onto Jordan laws.

use crate::classify::ClassId;
use crate::error::{Error, Result};
use crate::format::parse_algebra;
use crate::invariants::{profile, InvariantProfile};
use crate::scalar::Scalar;
use crate::tensor::StructureTensor;

macro_rules! algebra {
    ($name:literal) => {
        include_str!(concat!("../fixtures/algebras/", $name, ".alg"))
    };
}

fn load(text: &str) -> StructureTensor {
    parse_algebra(text).expect("shipped algebra fixture parses")
}

/// Source text of the canonical law of a class, if one is shipped.
pub fn canonical_text(class: ClassId) -> Option<&'static str> {
    let text = match class.to_string().as_str() {
        "J2_1" => algebra!("J2_1"),
        "J3_1" | "R3_1" => algebra!("J3_1"),
        "J3_2" | "R3_2" => algebra!("J3_2"),
        "J3_3" | "R3_3" => algebra!("J3_3"),
        "R3_4" => algebra!("R3_4"),
        "R3_5" => algebra!("R3_5"),
        "J4_1" => algebra!("J4_1"),
        "J4_2" => algebra!("J4_2"),
        "J4_3" => algebra!("J4_3"),
        "J4_4" => algebra!("J4_4"),
        "J4_5" => algebra!("J4_5"),
        "J4_6" => algebra!("J4_6"),
        "J4_7" => algebra!("J4_7"),
        "J4_8" => algebra!("J4_8"),
        "J4_9" => algebra!("J4_9"),
        "J4_10" => algebra!("J4_10"),
        "J4_11" => algebra!("J4_11"),
        "J4_12" => algebra!("J4_12"),
        _ => return None,
    };
    Some(text)
}

/// The canonical law of a class; abelian classes map to the zero law.
pub fn canonical(class: ClassId) -> StructureTensor {
    if class.is_abelian() {
        return StructureTensor::zero(class.dim());
    }
    load(canonical_text(class).expect("every non-abelian class has a fixture"))
}

/// A row of the classification tables as published.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub char_seq: Vec<usize>,
    pub orbit: usize,
    pub center: usize,
}

/// A registered class with its canonical law and invariants.
#[derive(Clone, Debug)]
pub struct AtlasEntry {
    pub class_id: ClassId,
    pub tensor: StructureTensor,
    /// Invariants as computed and independently derived.
    pub expected_profile: InvariantProfile,
    /// The published table row, when the class appears in a table.
    pub published: Option<TableRow>,
    /// Listed among the associative classes.
    pub associative_claimed: bool,
    /// Claimed to be rigid.
    pub rigid_claimed: bool,
}

impl AtlasEntry {
    /// Whether the published row disagrees with the computed invariants.
    pub fn published_discrepancy(&self) -> bool {
        self.published.as_ref().is_some_and(|row| {
            let p = &self.expected_profile;
            row.char_seq != p.char_seq || row.orbit != p.dim_orbit || row.center != p.dim_center
        })
    }

    /// Recomputes the profile and compares it with the expected one.
    pub fn check(&self) -> Result<bool> {
        Ok(profile(&self.tensor)? == self.expected_profile)
    }
}

struct Row {
    class: ClassId,
    s: &'static [usize],
    nilindex: usize,
    center: usize,
    der: usize,
    associative: bool,
    series: &'static [usize],
    published_orbit: Option<usize>,
    rigid: bool,
}

fn rows() -> Vec<Row> {
    let j3 = ClassId::j3;
    let j4 = ClassId::j4;
    let r = |class, s, nilindex, center, der, associative, series, published_orbit, rigid| Row {
        class,
        s,
        nilindex,
        center,
        der,
        associative,
        series,
        published_orbit,
        rigid,
    };
    vec![
        r(ClassId::j(2, 1), &[2], 3, 1, 2, true, &[2, 1, 0], None, false),
        r(j3(1), &[3], 4, 1, 3, true, &[3, 2, 1, 0], Some(7), true),
        r(j3(2), &[2, 1], 3, 1, 4, true, &[3, 1, 0], Some(6), false),
        r(j3(3), &[2, 1], 3, 2, 5, true, &[3, 1, 0], Some(4), false),
        r(j4(1), &[4], 5, 1, 4, true, &[4, 3, 2, 1, 0], Some(12), true),
        r(j4(2), &[3, 1], 4, 1, 3, false, &[4, 2, 1, 0], Some(13), true),
        r(j4(3), &[3, 1], 4, 1, 4, false, &[4, 2, 1, 0], Some(12), false),
        r(j4(4), &[3, 1], 4, 1, 5, false, &[4, 2, 1, 0], Some(11), false),
        r(j4(5), &[3, 1], 4, 1, 4, false, &[4, 2, 1, 0], Some(12), false),
        r(j4(6), &[3, 1], 4, 1, 5, true, &[4, 2, 1, 0], Some(11), false),
        r(j4(7), &[3, 1], 4, 2, 6, true, &[4, 2, 1, 0], Some(10), false),
        r(j4(8), &[2, 2], 3, 2, 6, true, &[4, 2, 0], Some(10), false),
        r(j4(9), &[2, 2], 3, 2, 7, true, &[4, 2, 0], Some(9), false),
        r(j4(10), &[2, 1, 1], 3, 1, 7, true, &[4, 1, 0], Some(9), false),
        r(j4(11), &[2, 1, 1], 3, 2, 8, true, &[4, 1, 0], Some(8), false),
        r(j4(12), &[2, 1, 1], 3, 3, 10, true, &[4, 1, 0], Some(6), false),
    ]
}

/// The non-abelian complex classes of dimensions 2, 3 and 4.
pub fn complex_entries() -> Vec<AtlasEntry> {
    rows()
        .into_iter()
        .map(|row| {
            let n = row.class.dim();
            let expected_profile = InvariantProfile {
                char_seq: row.s.to_vec(),
                nilindex: row.nilindex,
                dim_center: row.center,
                dim_der: row.der,
                dim_orbit: n * n - row.der,
                associative: row.associative,
                dims_central_series: row.series.to_vec(),
            };
            let published = row.published_orbit.map(|orbit| TableRow {
                char_seq: row.s.to_vec(),
                orbit,
                center: row.center,
            });
            // the associative classes of dimension 4 are listed as 1 and 6..12;
            // every Jordan law of dimension ≤ 3 is associative
            let associative_claimed = match row.class {
                ClassId::Complex { dim: 4, index } => index == 1 || index >= 6,
                _ => true,
            };
            AtlasEntry {
                class_id: row.class,
                tensor: canonical(row.class),
                expected_profile,
                published,
                associative_claimed,
                rigid_claimed: row.rigid,
            }
        })
        .collect()
}

/// The fifteen classes of the dimension-3 and dimension-4 tables.
pub fn table_entries() -> Vec<AtlasEntry> {
    complex_entries()
        .into_iter()
        .filter(|e| e.class_id.dim() >= 3)
        .collect()
}

pub fn entry(class: ClassId) -> Option<AtlasEntry> {
    complex_entries().into_iter().find(|e| e.class_id == class)
}

/// A real three-dimensional class with its law and any published orbit claim.
#[derive(Clone, Debug)]
pub struct RealEntry {
    pub class_id: ClassId,
    pub tensor: StructureTensor,
    pub published_orbit: Option<usize>,
}

/// The real classes `R3_1 … R3_5`, where `R3_4` is `e1e2 = e3` and `R3_5` is
/// `e1e1 = e2, e3e3 = −e2`.
pub fn real_entries() -> Vec<RealEntry> {
    (1..=5)
        .map(|i| {
            let class_id = ClassId::r3(i);
            RealEntry {
                class_id,
                tensor: canonical(class_id),
                published_orbit: match i {
                    4 => Some(5),
                    5 => Some(6),
                    _ => None,
                },
            }
        })
        .collect()
}

/// A three-dimensional nilpotent associative law.
#[derive(Clone, Debug)]
pub struct AssociativeLaw {
    pub name: String,
    pub tensor: StructureTensor,
}

/// `β₂^μ(e1,e1) = e2, β₂^μ(e1,e3) = e2, β₂^μ(e3,e3) = μe2`.
pub fn beta2(mu: &Scalar) -> StructureTensor {
    let mut t = StructureTensor::zero_bilinear(3);
    t.set(0, 0, 1, Scalar::one());
    t.set(0, 2, 1, Scalar::one());
    if !mu.is_zero() {
        t.set(2, 2, 1, mu.clone());
    }
    t
}

/// The values of `μ` at which the family `β₂^μ` is sampled.
pub fn beta2_samples() -> Vec<Scalar> {
    vec![
        Scalar::one(),
        Scalar::from_int(2),
        Scalar::from_int(-1),
        Scalar::from_frac(1, 4),
    ]
}

/// `β1`, the sampled `β2^μ`, `β3`, `β4`, `β5`.
pub fn associative_laws() -> Vec<AssociativeLaw> {
    let named = |name: &str, text: &str| AssociativeLaw {
        name: name.to_string(),
        tensor: load(text),
    };
    let mut out = vec![named("beta1", algebra!("beta1"))];
    for mu in beta2_samples() {
        out.push(AssociativeLaw {
            name: format!("beta2^{mu}"),
            tensor: beta2(&mu),
        });
    }
    out.push(named("beta3", algebra!("beta3")));
    out.push(named("beta4", algebra!("beta4")));
    out.push(named("beta5", algebra!("beta5")));
    out
}

/// `φ(x, y) = ½[β(x, y) + β(y, x)]` for an associative `β`.
pub fn squaring_map(beta: &StructureTensor) -> Result<StructureTensor> {
    if !beta.is_associative() {
        return Err(Error::NotAssociative);
    }
    Ok(beta.symmetrized())
}
