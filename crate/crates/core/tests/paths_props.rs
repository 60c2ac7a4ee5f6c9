use std::sync::OnceLock;

use proptest::prelude::*;
use qpforge::catalog::{Catalog, LambdaChoice};
use qpforge::jacobian::PresentedAlgebra;
use qpforge::potential::{cyclic_derivative, substitute, FreeElement, Potential};
use qpforge::qp::Qp;
use qpforge::quiver::{Path, Quiver};
use qpforge::scalar::Scalar;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn case(name: &str) -> Qp {
    Catalog::embedded().case(name).unwrap().qp_at(&LambdaChoice::default()).unwrap()
}

fn algebras() -> &'static [(Qp, PresentedAlgebra)] {
    static CELL: OnceLock<Vec<(Qp, PresentedAlgebra)>> = OnceLock::new();
    CELL.get_or_init(|| {
        ["333", "2222"]
            .into_iter()
            .map(|c| {
                let qp = case(c);
                let a = qp.jacobian(12).unwrap();
                (qp, a)
            })
            .collect()
    })
}

fn coefficient(rng: &mut ChaCha8Rng) -> Scalar {
    let n = rng.gen_range(1..=5) * if rng.gen_bool(0.5) { 1 } else { -1 };
    Scalar::ratio(n, rng.gen_range(1..=3))
}

/// Random combination of up to three paths of length 1..=3 from `s` to `t`, or `None` if
/// there are no such paths.
fn element_between(q: &Quiver, s: usize, t: usize, rng: &mut ChaCha8Rng) -> Option<FreeElement> {
    let paths: Vec<Path> = (1..=3).flat_map(|l| q.paths_of_length(l)).filter(|p| p.source == s && p.target == t).collect();
    if paths.is_empty() {
        return None;
    }
    let mut e = FreeElement::zero();
    for _ in 0..rng.gen_range(1..=3) {
        e.add_term(paths.choose(rng).unwrap().clone(), coefficient(rng));
    }
    Some(e)
}

fn random_cycle(q: &Quiver, w: &Potential, rng: &mut ChaCha8Rng) -> Path {
    let terms: Vec<&Path> = w.terms().map(|(p, _)| p).collect();
    let base = terms.choose(rng).unwrap();
    q.rotate_cycle(base, rng.gen_range(0..base.len()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn cyclic_derivatives_ignore_rotation(seed in any::<u64>(), which in 0usize..2) {
        let (qp, _) = &algebras()[which];
        let q = &qp.quiver;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut e = FreeElement::zero();
        let mut rotated = FreeElement::zero();
        for _ in 0..rng.gen_range(1..=4) {
            let c = random_cycle(q, &qp.potential, &mut rng);
            let k = rng.gen_range(0..c.len());
            let coef = coefficient(&mut rng);
            rotated.add_term(q.rotate_cycle(&c, k), coef.clone());
            e.add_term(c, coef);
        }
        let w1 = Potential::from_element(q, &e).unwrap();
        let w2 = Potential::from_element(q, &rotated).unwrap();
        prop_assert_eq!(&w1, &w2);
        for a in 0..q.arrow_count() {
            let d1 = cyclic_derivative(q, &Potential::from_element(q, &e).unwrap(), a).unwrap();
            let d2 = cyclic_derivative(q, &w2, a).unwrap();
            prop_assert_eq!(d1, d2);
        }
    }

    #[test]
    fn substitution_composes(s1 in -3i64..=3, s2 in -3i64..=3, s3 in -3i64..=3, seed in any::<u64>()) {
        let q = Quiver::new(3, vec![("a", 0, 1), ("b", 1, 2), ("c", 2, 0)]).unwrap();
        let abca = FreeElement::from_path(q.path_from_arrows(vec![0, 1, 2, 0]).unwrap(), Scalar::one());
        let bcab = FreeElement::from_path(q.path_from_arrows(vec![1, 2, 0, 1]).unwrap(), Scalar::one());
        let a = FreeElement::from_path(q.arrow_path(0), Scalar::one());
        let b = FreeElement::from_path(q.arrow_path(1), Scalar::one());
        let phi = vec![Some(a.add(&abca.scale(&Scalar::int(s1)))), Some(b.add(&bcab.scale(&Scalar::int(s2)))), None];
        let psi = vec![Some(a.add(&abca.scale(&Scalar::int(s3)))), None, None];
        let l = 12;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut e = FreeElement::zero();
        for len in [3, 6, 9] {
            for start in 0..3 {
                if rng.gen_bool(0.5) {
                    let arrows: Vec<usize> = (0..len).map(|i| (start + i) % 3).collect();
                    e.add_term(q.path_from_arrows(arrows).unwrap(), coefficient(&mut rng));
                }
            }
        }
        let twice = substitute(&q, &substitute(&q, &e, &phi, l).unwrap(), &psi, l).unwrap();
        let composite: Vec<Option<FreeElement>> = (0..3)
            .map(|x| {
                let img = phi[x].clone().unwrap_or_else(|| FreeElement::from_path(q.arrow_path(x), Scalar::one()));
                Some(substitute(&q, &img, &psi, l).unwrap())
            })
            .collect();
        let once = substitute(&q, &e, &composite, l).unwrap();
        prop_assert_eq!(twice.terms().collect::<Vec<_>>(), once.terms().collect::<Vec<_>>());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn normal_forms_are_sound(seed in any::<u64>(), which in 0usize..2) {
        let (_, a) = &algebras()[which];
        let q = a.quiver();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let n = q.vertex_count();
        let (i, j, k) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
        let (Some(x), Some(y)) = (element_between(q, i, j, &mut rng), element_between(q, k, i, &mut rng)) else {
            return Ok(());
        };
        let nx = a.normal_form(&x);
        prop_assert_eq!(a.normal_form(&nx), nx.clone());
        prop_assert!(nx.terms().all(|(p, _)| a.basis_position(p).is_some()));
        // x * y, y applied first
        let direct = a.normal_form(&x.mul(&y));
        let reduced = a.normal_form(&nx.mul(&a.normal_form(&y)));
        prop_assert_eq!(direct, reduced);
        // relations vanish after multiplying on both sides by paths
        let r = a.relations().choose(&mut rng).unwrap();
        let (rs, rt) = {
            let (p, _) = r.terms().next().unwrap();
            (p.source, p.target)
        };
        let left = FreeElement::from_path(Path::trivial(rt), Scalar::one());
        let right = element_between(q, i, rs, &mut rng).unwrap_or_else(|| FreeElement::from_path(Path::trivial(rs), Scalar::one()));
        let block: FreeElement = FreeElement::from_terms(r.terms().filter(|(p, _)| p.source == rs && p.target == rt).map(|(p, c)| (p.clone(), c.clone())));
        prop_assert!(a.normal_form(&left.mul(&block).mul(&right)).is_zero());
    }
}

#[test]
fn rotation_least_representative() {
    let q = Quiver::new(3, vec![("a", 0, 1), ("b", 1, 2), ("c", 2, 0)]).unwrap();
    let w1 = Potential::from_words(&q, &[(Scalar::one(), vec!["c", "b", "a"])]).unwrap();
    let w2 = Potential::from_words(&q, &[(Scalar::one(), vec!["a", "c", "b"])]).unwrap();
    assert_eq!(w1, w2);
    assert_eq!(w1.terms().count(), 1);
}
