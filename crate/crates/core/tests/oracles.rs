mod common;

use genus2_pencils::curves::ClassQuery;
use genus2_pencils::numeric::{a_ceiling, search_general};
use genus2_pencils::SurfaceModel;

#[test]
fn genus_two_search_equals_brute_force() {
    common::search_matches_brute_force(2, 1, 3, false).unwrap();
    common::search_matches_brute_force(2, 1, 6, false).unwrap();
}

#[test]
fn genus_three_search_equals_brute_force_in_the_box() {
    common::search_matches_brute_force(3, 1, 4, false).unwrap();
    common::search_matches_brute_force(3, 1, 7, true).unwrap();
}

// Rows exist at a = a_ceiling(3): the box, not the arithmetic, ends this table.
#[test]
fn genus_three_table_reaches_the_a_ceiling() {
    let out = search_general(3, 1, 7).unwrap();
    assert!(out.ceiling_hit);
    assert!(out.types.iter().any(|t| t.a == a_ceiling(3)));
}

#[test]
fn class_enumeration_equals_box_search() {
    common::all_small_enumerations().unwrap();
}

#[test]
fn degree_one_del_pezzo_minus_one_classes_up_to_cubics() {
    let model = SurfaceModel::plane(8);
    let q = ClassQuery::minus_one(3).unwrap();
    let found = common::brute_force_classes(&model, &q);
    // e_i, l - e_i - e_j, 2l minus five points, 3l - 2e_i minus six more
    assert_eq!(found.len(), 8 + 28 + 56 + 8 * 7);
}
