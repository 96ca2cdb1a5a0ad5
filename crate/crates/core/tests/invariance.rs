mod support;

use jordan_core::atlas::{complex_entries, real_entries};
use jordan_core::classify::normal_form_31;
use jordan_core::{classify, classify_real, profile, ClassId};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

#[test]
fn profile_and_class_survive_basis_changes() {
    let failures: usize = complex_entries()
        .par_iter()
        .enumerate()
        .map(|(idx, e)| {
            let mut rng = ChaCha8Rng::seed_from_u64(1000 + idx as u64);
            let want = profile(&e.tensor).unwrap();
            (0..40)
                .filter(|_| {
                    let f = support::random_invertible(&mut rng, e.tensor.dim());
                    let moved = e.tensor.transform(&f).unwrap();
                    profile(&moved).as_ref() != Ok(&want) || classify(&moved) != Ok(e.class_id)
                })
                .count()
        })
        .sum();
    assert_eq!(failures, 0);
}

#[test]
fn normal_form_parameters_classify_consistently() {
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for index in 2..=6 {
        let e = complex_entries()
            .into_iter()
            .find(|e| e.class_id == ClassId::j4(index))
            .unwrap();
        for _ in 0..10 {
            let moved = e.tensor.transform(&support::random_invertible(&mut rng, 4)).unwrap();
            let nf = normal_form_31(&moved).unwrap();
            assert_eq!(nf.class(), Ok(e.class_id));
        }
    }
}

#[test]
fn real_class_survives_rational_basis_changes() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    for e in real_entries() {
        let want = classify_real(&e.tensor).unwrap();
        for _ in 0..20 {
            let moved = e.tensor.transform(&support::random_invertible(&mut rng, 3)).unwrap();
            assert_eq!(classify_real(&moved), Ok(want), "{}", e.class_id);
        }
    }
}
