use jordan_core::atlas::canonical;
use jordan_core::classify::verify_isomorphism;
use jordan_core::{classify, classify_real, ClassId, Matrix, Scalar};

#[test]
fn canonical_laws_classify_to_their_class() {
    let mut count = 0;
    for dim in 1..=4 {
        for c in ClassId::complex_classes(dim) {
            assert_eq!(classify(&canonical(c)), Ok(c), "{c}");
            count += 1;
        }
    }
    // J1_ab, J2_1, J2_ab, three of J3 plus J3_ab, twelve of J4 plus J4_ab
    assert_eq!(count, 20);
}

#[test]
fn real_canonical_laws_classify_to_their_class() {
    for c in ClassId::real_classes() {
        let want = if c == ClassId::r3(4) { ClassId::r3(5) } else { c };
        assert_eq!(classify_real(&canonical(c)), Ok(want), "{c}");
    }
}

#[test]
fn r3_4_and_r3_5_are_isomorphic_over_the_reals() {
    let int = |v: &[i64]| v.iter().map(|&x| Scalar::from_int(x)).collect::<Vec<_>>();
    let f = Matrix::from_cols(&[int(&[1, 0, 1]), int(&[1, 0, -1]), int(&[0, 2, 0])]);
    assert_eq!(
        verify_isomorphism(&canonical(ClassId::r3(5)), &canonical(ClassId::r3(4)), &f),
        Ok(true)
    );
}
