use qpforge::catalog::{Catalog, LambdaChoice, CASES};
use qpforge::covering::{build_window, CoveringWindow};
use qpforge::error::Error;
use qpforge::potential::Potential;
use qpforge::qp::Qp;
use qpforge::quiver::Quiver;
use qpforge::scalar::Scalar;

fn window(case: &str, lambda: &LambdaChoice, w: usize) -> CoveringWindow {
    let qp = Catalog::embedded().case(case).unwrap().qp_at(lambda).unwrap();
    build_window(&qp, w).unwrap()
}

/// Number of levels spanned by the projectives of each case (computed, frozen).
const SPREAD: [(&str, i64); 4] = [("333", 1), ("2222", 1), ("442", 2), ("632", 1)];

#[test]
fn windows_are_acyclic_and_equivariant() {
    for (case, spread) in SPREAD {
        let cw = window(case, &LambdaChoice::default(), 3);
        let n = Catalog::embedded().case(case).unwrap().vertex_count();
        assert_eq!(cw.quiver().vertex_count(), 7 * n);
        assert!(cw.is_acyclic(), "{case}");
        assert!(cw.translation_equivariant(), "{case}");
        assert_eq!(cw.spread(), spread, "{case}");
        assert!(cw.push_down_check().unwrap().iter().all(|p| p.ok), "{case}");
    }
}

#[test]
fn labels_name_positions() {
    let cw = window("333", &LambdaChoice::default(), 2);
    let v = cw.vertex_by_label("5@-1").unwrap();
    assert_eq!(cw.position(v), (4, -1));
    assert_eq!(cw.quiver().label(v), "5@-1");
    assert!(cw.vertex_by_label("5@3").is_none());
}

#[test]
fn small_windows_are_rejected_for_push_down() {
    for case in ["333", "442"] {
        let cw = window(case, &LambdaChoice::default(), 0);
        assert!(matches!(cw.push_down_check(), Err(Error::WindowTooSmall(_))));
        let cw = window(case, &LambdaChoice::default(), 1);
        assert!(cw.push_down_check().unwrap().iter().all(|p| p.ok));
    }
}

#[test]
fn symbolic_and_specialised_windows_agree() {
    let sym = window("2222", &LambdaChoice::Symbolic, 3);
    for v in [2, 3, -1] {
        let cw = window("2222", &LambdaChoice::int(v), 3);
        assert_eq!(cw.cartan(), sym.cartan());
    }
}

#[test]
fn interior_levels() {
    let cw = window("632", &LambdaChoice::default(), 3);
    for p in cw.projectives() {
        assert_eq!(p.interior, p.level + cw.spread() <= 3);
    }
    for (i, p) in cw.projectives().iter().enumerate().filter(|(_, p)| p.interior) {
        assert!(cw.support_width(i) <= 2, "{p:?}");
    }
}

#[test]
fn grading_errors() {
    let q = Quiver::new(3, vec![("a", 0, 1), ("b", 1, 2), ("c", 2, 0)]).unwrap();
    let w = Potential::from_words(&q, &[(Scalar::one(), vec!["c", "b", "a"])]).unwrap();
    let ungraded = Qp { quiver: q.clone(), potential: w.clone(), degrees: None };
    assert!(matches!(CoveringWindow::build(&ungraded, 2), Err(Error::BadDegrees(_))));
    let two = Qp { quiver: q.clone(), potential: w.clone(), degrees: Some(vec![1, 1, 0]) };
    assert!(matches!(CoveringWindow::build(&two, 2), Err(Error::NotHomogeneous)));
    let big = Qp { quiver: q, potential: w, degrees: Some(vec![2, 0, 0]) };
    assert!(matches!(CoveringWindow::build(&big, 2), Err(Error::BadDegrees(_))));
}

#[test]
fn every_case_builds_at_the_default_window() {
    for c in CASES {
        let cw = window(c, &LambdaChoice::default(), 3);
        assert_eq!(cw.window(), 3);
    }
}
