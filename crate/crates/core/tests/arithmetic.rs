mod support;

use jordan_core::puiseux::{invert, Exponent};
use jordan_core::{Matrix, PuiseuxFrac, PuiseuxPoly, Ring, Scalar};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn scalar() -> impl Strategy<Value = Scalar> {
    (-20i64..=20, 1i64..=9, -20i64..=20, 1i64..=9).prop_map(|(a, b, c, d)| {
        &Scalar::from_frac(a, b) + &(&Scalar::from_frac(c, d) * &Scalar::i())
    })
}

proptest! {
    #[test]
    fn addition_is_a_group(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&a + &Scalar::zero(), a.clone());
        prop_assert!((&a + &(-&a)).is_zero());
    }

    #[test]
    fn multiplication_is_a_field(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &Scalar::one(), a.clone());
        if let Some(inv) = a.inv() {
            prop_assert!((&a * &inv).is_one());
        } else {
            prop_assert!(a.is_zero());
        }
    }

    #[test]
    fn literals_round_trip(a in scalar()) {
        prop_assert_eq!(a.to_string().parse::<Scalar>().unwrap(), a);
    }
}

fn random_puiseux(rng: &mut ChaCha8Rng) -> PuiseuxPoly {
    let exps = [Exponent::new(0, 1), Exponent::new(1, 2), Exponent::new(1, 1), Exponent::new(2, 1)];
    let mut p = PuiseuxPoly::zero();
    for _ in 0..rng.gen_range(0..=2) {
        let c = Scalar::from_int(rng.gen_range(-2..=2));
        p = p.plus(&PuiseuxPoly::monomial(c, exps[rng.gen_range(0..exps.len())]));
    }
    p
}

#[test]
fn puiseux_inverse_on_random_matrices() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut done = 0;
    while done < 50 {
        let m = Matrix::from_fn(3, 3, |_, _| random_puiseux(&mut rng));
        if m.det().is_zero() {
            assert!(invert(&m).is_err());
            continue;
        }
        let inv = invert(&m).unwrap();
        let lifted = m.map(|p| PuiseuxFrac::from_poly(p.clone()));
        assert_eq!(lifted.mul(&inv).unwrap(), Matrix::identity(3));
        assert_eq!(inv.mul(&lifted).unwrap(), Matrix::identity(3));
        done += 1;
    }
}

#[test]
fn exact_inverse_and_kernel() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..30 {
        let m = support::random_invertible(&mut rng, 4);
        assert_eq!(m.mul(&m.inverse().unwrap()).unwrap(), Matrix::identity(4));
        assert!(m.kernel().is_empty());
    }
    let singular = support::int_matrix(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
    let ker = singular.kernel();
    assert_eq!(ker.len(), 1);
    assert!(singular.apply(&ker[0]).iter().all(Scalar::is_zero));
}
