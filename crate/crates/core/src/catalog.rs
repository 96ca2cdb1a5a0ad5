//! The shipped contraction families and deformation directions, in literal
//! form as published and, where the literal form fails, in corrected form.

use num_rational::Ratio;

use crate::atlas::canonical;
use crate::classify::ClassId;
use crate::degeneration::{exponent_grid, verify_edge, ContractionFamily, DeformationDirection};
use crate::error::Error;
use crate::format::{parse_deformation, parse_family};
use crate::matrix::Matrix;
use crate::puiseux::{Exponent, PuiseuxPoly};
use crate::scalar::Scalar;
use crate::tensor::StructureTensor;

macro_rules! family {
    ($name:literal) => {
        include_str!(concat!("../fixtures/families/", $name, ".fam"))
    };
}

macro_rules! direction {
    ($name:literal) => {
        include_str!(concat!("../fixtures/deformations/", $name, ".def"))
    };
}

/// Whether a family is reproduced verbatim or repaired.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum FamilyKind {
    Literal,
    Corrected,
}

/// The documented outcome of verifying a family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum Expectation {
    /// Verifies onto the stated target.
    Verifies,
    /// Some structure constant diverges.
    Diverges,
    /// `det f_t ≡ 0`.
    Singular,
    /// Converges onto a different class.
    LandsIn(ClassId),
}

impl Expectation {
    pub fn is_erratum(&self) -> bool {
        *self != Expectation::Verifies
    }

    /// Whether a verification outcome matches this expectation.
    pub fn matches(&self, outcome: &Result<bool, Error>) -> bool {
        match (self, outcome) {
            (Expectation::Verifies, Ok(v)) => *v,
            (Expectation::Diverges, Err(Error::Diverges { .. })) => true,
            (Expectation::Singular, Err(Error::Singular)) => true,
            (Expectation::LandsIn(c), Err(Error::Misclassified { actual, .. })) => c == actual,
            _ => false,
        }
    }
}

/// A contraction family between two atlas classes.
#[derive(Clone, Debug)]
pub struct FamilySpec {
    pub name: &'static str,
    pub source: ClassId,
    pub target: ClassId,
    pub kind: FamilyKind,
    pub expectation: Expectation,
    /// Listed as an erratum from the outset rather than discovered.
    pub known_erratum: bool,
    pub text: &'static str,
}

impl FamilySpec {
    pub fn family(&self) -> ContractionFamily {
        parse_family(self.text, self.source.dim()).expect("shipped family fixture parses")
    }

    pub fn source_tensor(&self) -> StructureTensor {
        canonical(self.source)
    }

    /// `Ok(verified)` or the error raised by `verify_edge`.
    pub fn verify(&self) -> Result<bool, Error> {
        verify_edge(&self.source_tensor(), self.target, &self.family()).map(|e| e.verified)
    }
}

fn spec(
    name: &'static str,
    source: ClassId,
    target: ClassId,
    kind: FamilyKind,
    expectation: Expectation,
    text: &'static str,
) -> FamilySpec {
    FamilySpec {
        name,
        source,
        target,
        kind,
        expectation,
        known_erratum: false,
        text,
    }
}

/// The two dimension-3 families.
pub fn j3_families() -> Vec<FamilySpec> {
    use Expectation::Verifies;
    use FamilyKind::Literal;
    let j3 = ClassId::j3;
    vec![
        spec("j3_phi1_phi3", j3(1), j3(3), Literal, Verifies, family!("j3_phi1_phi3")),
        spec("j3_phi1_phi2", j3(1), j3(2), Literal, Verifies, family!("j3_phi1_phi2")),
    ]
}

/// The dimension-4 families, literal ones in publication order followed by
/// the corrections.
pub fn j4_families() -> Vec<FamilySpec> {
    use Expectation::*;
    use FamilyKind::*;
    let j = ClassId::j4;
    let mut out = vec![
        spec("phi1_phi7", j(1), j(7), Literal, Verifies, family!("phi1_phi7")),
        spec("phi1_phi9", j(1), j(9), Literal, Verifies, family!("phi1_phi9")),
        spec("phi1_phi10", j(1), j(10), Literal, Verifies, family!("phi1_phi10")),
        spec("phi9_phi11", j(9), j(11), Literal, Singular, family!("phi9_phi11")),
        spec("phi10_phi11", j(10), j(11), Literal, LandsIn(j(12)), family!("phi10_phi11")),
        spec("phi11_phi12", j(11), j(12), Literal, Verifies, family!("phi11_phi12")),
        spec("phi2_phi5", j(2), j(5), Literal, Verifies, family!("phi2_phi5")),
        spec("phi3_phi6", j(3), j(6), Literal, Diverges, family!("phi3_phi6")),
        spec("phi4_phi7", j(4), j(7), Literal, Verifies, family!("phi4_phi7")),
        spec("phi4_phi8", j(4), j(8), Literal, Singular, family!("phi4_phi8")),
        spec("phi4_phi10", j(4), j(10), Literal, LandsIn(j(11)), family!("phi4_phi10")),
        spec("phi6_phi7", j(6), j(7), Literal, Verifies, family!("phi6_phi7")),
        spec("phi6_phi8", j(6), j(8), Literal, Verifies, family!("phi6_phi8")),
        spec("phi6_phi10", j(6), j(10), Literal, Verifies, family!("phi6_phi10")),
        spec("phi7_phi9", j(7), j(9), Literal, Verifies, family!("phi7_phi9")),
        spec("phi8_phi9", j(8), j(9), Literal, Verifies, family!("phi8_phi9")),
        spec(
            "phi3_phi6.corrected",
            j(3),
            j(6),
            Corrected,
            Verifies,
            family!("phi3_phi6.corrected"),
        ),
        spec(
            "phi9_phi11.corrected",
            j(9),
            j(11),
            Corrected,
            Verifies,
            family!("phi9_phi11.corrected"),
        ),
        spec(
            "phi10_phi11.corrected",
            j(10),
            j(11),
            Corrected,
            Verifies,
            family!("phi10_phi11.corrected"),
        ),
    ];
    for s in &mut out {
        s.known_erratum = matches!(s.name, "phi3_phi6" | "phi4_phi8");
    }
    out
}

/// Families of `J4` for which no contraction onto the stated target exists.
pub fn unrealizable_j4_edges() -> Vec<(ClassId, ClassId)> {
    vec![(ClassId::j4(4), ClassId::j4(8)), (ClassId::j4(4), ClassId::j4(10))]
}

/// A real family applied to the first dimension-3 law, with the class it
/// is claimed to reach.
#[derive(Clone, Debug)]
pub struct RealFamilySpec {
    pub name: &'static str,
    pub claimed: ClassId,
    pub text: &'static str,
}

impl RealFamilySpec {
    pub fn family(&self) -> ContractionFamily {
        parse_family(self.text, 3).expect("shipped family fixture parses")
    }
}

pub fn real_families() -> Vec<RealFamilySpec> {
    vec![
        RealFamilySpec {
            name: "real_f",
            claimed: ClassId::r3(4),
            text: family!("real_f"),
        },
        RealFamilySpec {
            name: "real_g",
            claimed: ClassId::r3(5),
            text: family!("real_g"),
        },
    ]
}

/// A linear deformation `φ_base + tμ` with the class it is claimed to reach.
#[derive(Clone, Debug)]
pub struct DeformationSpec {
    pub name: &'static str,
    pub base: ClassId,
    pub claimed: ClassId,
    pub text: &'static str,
    /// Index of an earlier entry with the same base and direction.
    pub duplicate_of: Option<usize>,
}

impl DeformationSpec {
    pub fn direction(&self) -> DeformationDirection {
        parse_deformation(self.text, self.base.dim()).expect("shipped direction fixture parses")
    }

    pub fn base_tensor(&self) -> StructureTensor {
        canonical(self.base)
    }
}

/// The four listed linear deformations. The prose assigns the fourth entry
/// to the claim that `φ5` deforms `φ4`.
pub fn j4_deformations() -> Vec<DeformationSpec> {
    let j = ClassId::j4;
    let mut out = vec![
        DeformationSpec {
            name: "phi3+t*mu1",
            base: j(3),
            claimed: j(2),
            text: direction!("mu1"),
            duplicate_of: None,
        },
        DeformationSpec {
            name: "phi4+t*mu2",
            base: j(4),
            claimed: j(3),
            text: direction!("mu2"),
            duplicate_of: None,
        },
        DeformationSpec {
            name: "phi6+t*mu1",
            base: j(6),
            claimed: j(5),
            text: direction!("mu1"),
            duplicate_of: None,
        },
        DeformationSpec {
            name: "phi4+t*mu2",
            base: j(4),
            claimed: j(5),
            text: direction!("mu2"),
            duplicate_of: None,
        },
    ];
    for i in 0..out.len() {
        out[i].duplicate_of =
            (0..i).find(|&k| out[k].base == out[i].base && out[k].text == out[i].text);
    }
    out
}

/// Arrows of the published contraction diagram of `J4`; 13 is the abelian law.
pub fn diagram_arrows() -> Vec<(ClassId, ClassId)> {
    let node = |k: u8| if k == 13 { ClassId::abelian(4) } else { ClassId::j4(k) };
    [
        (2, 5),
        (2, 3),
        (5, 4),
        (5, 6),
        (3, 4),
        (3, 6),
        (1, 7),
        (1, 10),
        (6, 8),
        (6, 10),
        (6, 7),
        (4, 7),
        (4, 8),
        (4, 10),
        (7, 9),
        (8, 9),
        (9, 11),
        (10, 11),
        (11, 12),
        (12, 13),
    ]
    .into_iter()
    .map(|(a, b)| (node(a), node(b)))
    .collect()
}

/// The literal `φ3 → φ6` family with `f(e4) = c·t^q·e4`.
pub fn phi3_phi6_with_exponent(c: Scalar, q: Exponent) -> ContractionFamily {
    let weights = [Ratio::from_integer(1), Ratio::from_integer(2), Ratio::from_integer(3), q];
    ContractionFamily::new(Matrix::from_fn(4, 4, |r, col| {
        if r != col {
            PuiseuxPoly::zero()
        } else if col == 3 {
            PuiseuxPoly::monomial(c.clone(), weights[col])
        } else {
            PuiseuxPoly::t_pow(weights[col])
        }
    }))
}

/// Exponents of the search grid for which the `φ3 → φ6` family with
/// coefficient `i` verifies.
pub fn phi3_phi6_exponent_scan() -> Vec<Exponent> {
    let phi3 = canonical(ClassId::j4(3));
    exponent_grid()
        .into_iter()
        .filter(|q| {
            verify_edge(&phi3, ClassId::j4(6), &phi3_phi6_with_exponent(Scalar::i(), *q))
                .is_ok_and(|e| e.verified)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_parse() {
        for s in j3_families().iter().chain(&j4_families()) {
            assert_eq!(s.family().dim(), s.source.dim(), "{}", s.name);
        }
        for r in real_families() {
            assert_eq!(r.family().dim(), 3);
        }
        for d in j4_deformations() {
            assert_eq!(d.direction().degree(), 1);
        }
    }

    #[test]
    fn the_fourth_deformation_duplicates_the_second() {
        let d = j4_deformations();
        assert_eq!(d.iter().map(|x| x.duplicate_of).collect::<Vec<_>>(), [None, None, None, Some(1)]);
    }

    #[test]
    fn literal_exponent_is_one() {
        let lit = j4_families().into_iter().find(|s| s.name == "phi3_phi6").unwrap();
        assert_eq!(lit.family(), phi3_phi6_with_exponent(Scalar::i(), Ratio::from_integer(1)));
    }
}
