//! Class numbers h(-p) by forms enumeration against the character-sum
//! route, with the factorial congruence as a third witness.

use legmat_core::classnum::{
    class_number_result, h_by_character_sum, h_by_reduced_forms, mordell_check,
};
use legmat_core::field::is_odd_prime;
use legmat_core::Error;

#[test]
fn known_class_numbers() {
    let anchors = [
        (7u64, 1u64),
        (11, 1),
        (19, 1),
        (23, 3),
        (31, 3),
        (43, 1),
        (47, 5),
        (67, 1),
        (71, 7),
        (79, 5),
        (163, 1),
    ];
    for (p, h) in anchors {
        assert_eq!(h_by_reduced_forms(p).unwrap(), h, "p={p}");
        assert_eq!(h_by_character_sum(p).unwrap(), h, "p={p}");
    }
}

#[test]
fn both_routes_agree_with_the_congruence_to_163() {
    for p in (3..=163u64).filter(|&p| is_odd_prime(p) && p % 4 == 3 && p > 3) {
        let r = class_number_result(p).unwrap();
        assert_eq!(r.p, p);
        assert_eq!(r.h_forms, r.h_dirichlet, "p={p}");
        assert!(r.mordell_ok, "p={p}");
        assert!(mordell_check(p).unwrap());
        // class numbers of prime discriminant -p are odd
        assert_eq!(r.h_forms % 2, 1, "p={p}");
    }
}

#[test]
fn domain_errors() {
    assert!(matches!(h_by_reduced_forms(3), Err(Error::BadResidueClass { .. })));
    assert!(matches!(h_by_reduced_forms(13), Err(Error::BadResidueClass { .. })));
    assert!(matches!(h_by_reduced_forms(9), Err(Error::NotOddPrime(9))));
    assert!(matches!(class_number_result(15), Err(Error::NotOddPrime(15))));
    assert!(matches!(h_by_character_sum(5), Err(Error::BadResidueClass { .. })));
}

#[test]
fn result_serializes_with_plain_field_names() {
    let r = class_number_result(23).unwrap();
    let text = serde_json::to_string(&r).unwrap();
    assert!(text.contains("\"h_forms\":3"));
    assert!(text.contains("\"h_dirichlet\":3"));
    assert!(text.contains("\"mordell_ok\":true"));
}
