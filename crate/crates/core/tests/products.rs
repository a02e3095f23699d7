use maninkit::cochain::Family;
use maninkit::free_operad::Orientation;
use maninkit::functors::{black, black_com, white, white_direct, WhiteMethod};
use maninkit::koszul::dual;
use maninkit::presentation::OperadPresentation;
use maninkit::recognize::{equivalent, match_zoo, renamed_like, transforms_between};
use maninkit::zoo;

fn z(key: &str) -> OperadPresentation {
    zoo::get(key).unwrap()
}

fn keys_matching(o: &OperadPresentation) -> Vec<String> {
    match_zoo(o, None).unwrap().0.into_iter().map(|m| m.key).collect()
}

#[test]
fn prelie_black_ass_is_dend_with_negated_opposite_succ() {
    let b = black(Family::PreLieRBlack, &z("ass")).unwrap();
    assert_eq!(b.signature.names(), ["m_prec", "m_succ"]);
    let (found, skipped) = match_zoo(&b, None).unwrap();
    assert!(skipped.is_empty());
    let dend = found.iter().find(|m| m.key == "dend").expect("dend");
    // l -> m_prec, r -> -m_succ^op is among the identifications
    assert!(dend.transforms.iter().any(|t| t.targets == [0, 1]
        && t.signs == [1, -1]
        && t.orientations == [Orientation::Id, Orientation::Op]));
}

#[test]
fn ass_black_of_dual_postcom_is_triass() {
    let b = black(Family::AssBlack, &dual(&z("postcom")).unwrap()).unwrap();
    let ts = transforms_between(&z("triass"), &b, false).unwrap();
    // with the normalized pairing no sign change is needed; negating every
    // generator is an automorphism of any quadratic presentation
    assert_eq!(ts.len(), 4);
    assert!(ts[0].is_identity());
    assert_eq!(ts[1].signs, [-1, -1, -1]);
    assert!(ts[2..].iter().all(|t| t.targets == [1, 0, 2] && t.orientations == [Orientation::Op; 3]));
}

#[test]
fn ass_black_of_leib_is_diass_by_renaming() {
    let b = black(Family::AssBlack, &z("leib")).unwrap();
    let renamed = renamed_like(&b, &z("diass").signature).unwrap();
    assert!(renamed.same_relations(&z("diass")));
}

#[test]
fn com_black_names_follow_the_source() {
    let b = black_com(&z("pois")).unwrap();
    assert_eq!(b.signature.names(), ["c_brace", "b_cast"]);
    assert_eq!(b.pqr(), (0, 1, 1));
}

#[test]
fn left_prelie_black_of_lie_is_left_prelie() {
    let left = black(Family::PreLieLBlack, &z("lie")).unwrap();
    assert!(!left.same_relations(&z("prelie")));
    assert!(equivalent(&z("prelie"), &left));
}

#[test]
fn white_products_around_the_square() {
    assert!(keys_matching(&white_direct(Family::PermWhite, &z("lie")).unwrap()).contains(&"leib".to_string()));
    assert!(keys_matching(&white_direct(Family::PermWhite, &z("ass")).unwrap()).contains(&"diass".to_string()));
    assert!(keys_matching(&white_direct(Family::LieWhite, &z("zinb")).unwrap()).contains(&"prelie".to_string()));
}

#[test]
fn both_white_methods_agree_on_poisson() {
    for family in [Family::AssWhite, Family::LieWhite, Family::PermWhite] {
        let d = white(family, &z("pois"), WhiteMethod::Direct).unwrap();
        let v = white(family, &z("pois"), WhiteMethod::ViaDual).unwrap();
        assert_eq!(d.signature.names(), v.signature.names());
        assert!(d.same_relations(&v), "{family:?}");
    }
}

#[test]
fn white_is_not_defined_for_black_families() {
    assert!(white_direct(Family::AssBlack, &z("ass")).is_err());
}

#[test]
fn free_operads_are_recognized_as_themselves() {
    let keys = keys_matching(&OperadPresentation::mag(1, 0, 0));
    assert!(keys.contains(&"mag_1_0_0".to_string()));
}
