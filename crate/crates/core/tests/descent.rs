mod common;

use clause_cycles::descent::*;
use clause_cycles::normalize::{shift_and_strip, to_components, Component};
use clause_cycles::syntax::{parse_formula, Formula, Language, Term};
use common::{holds_n, random_exists_formula, z_holds};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn f(s: &str) -> Formula {
    parse_formula(s, &Language::default()).unwrap()
}

fn single(s: &str) -> Component {
    let cs = to_components(&f(s)).unwrap();
    assert_eq!(cs.len(), 1, "{s}");
    cs.into_iter().next().unwrap()
}

#[test]
fn linearizing_literals() {
    let (sys, negs) = linearize_component(&single("exists y. x = y + y")).unwrap();
    assert_eq!(sys.vars, ["x", "y"]);
    assert_eq!((sys.a.clone(), sys.b.clone()), (vec![vec![1, -2]], vec![0]));
    assert!(negs.is_empty());

    let (sys, _) = linearize_component(&single("exists y. s(x) = y")).unwrap();
    assert_eq!((sys.a, sys.b), (vec![vec![1, -1]], vec![-1]));

    let (sys, negs) = linearize_component(&single("exists y. x != s(y)")).unwrap();
    assert!(sys.a.is_empty());
    assert_eq!(negs, vec![NegConstraint { coeffs: vec![1, -1], constant: -1 }]);
    assert_eq!(negs[0].display(&sys.vars), "x - y - 1 != 0");

    let (sys, _) = linearize_component(&single("exists y. x + #3 = s(y + (y + x))")).unwrap();
    assert_eq!((sys.a, sys.b), (vec![vec![0, -2]], vec![-2]));

    let two = to_components(&f("x = y")).unwrap();
    assert!(matches!(linearize_component(&two[0]), Err(DescentError::FreeVariables(_))));
    let with_p = Component {
        free: vec!["x".into()],
        bound: vec![],
        literals: vec![clause_cycles::syntax::Literal::eq(Term::var("x"), Term::app("p", vec![Term::var("x")]))],
    };
    assert!(matches!(linearize_component(&with_p), Err(DescentError::NotLinear(_))));
}

fn system(vars: usize, a: Vec<Vec<i64>>, b: Vec<i64>) -> LinSystem {
    LinSystem { vars: (0..vars).map(|i| format!("x{i}")).collect(), a, b }
}

#[test]
fn integer_solutions_of_small_systems() {
    let s = solve_z(&system(2, vec![vec![1, -2]], vec![0])).unwrap();
    assert_eq!(s.particular, Some(vec![0, 0]));
    assert_eq!(s.basis, vec![vec![2, 1]]);

    let sys = system(2, vec![vec![1, -1]], vec![-1]);
    let s = solve_z(&sys).unwrap();
    let p = s.particular.unwrap();
    assert!(sys.satisfied_by(&p) && sys.satisfied_by(&[0, 1]));
    assert_eq!(s.basis, vec![vec![1, 1]]);

    let s = solve_z(&system(1, vec![vec![0]], vec![1])).unwrap();
    assert_eq!(s.particular, None);
    assert_eq!(s.basis, vec![vec![1]]);

    // 2x = 1 has no integer solution although it has a rational one.
    assert_eq!(solve_z(&system(1, vec![vec![2]], vec![1])).unwrap().particular, None);
    let s = solve_z(&system(3, vec![vec![2, 4, 6], vec![1, 1, 1]], vec![8, 3])).unwrap();
    assert!(s.particular.is_some());
    assert_eq!(s.basis.len(), 1);
}

/// Rank over ℚ by fraction-free elimination.
fn rank(a: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<i128>> = a.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, p);
        for i in 0..m.len() {
            if i != r && m[i][c] != 0 {
                let (a, b) = (m[r][c], m[i][c]);
                for j in 0..cols {
                    m[i][j] = m[i][j] * a - m[r][j] * b;
                }
            }
        }
        r += 1;
    }
    r
}

fn box_vectors(n: usize, k: i64) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for _ in 0..n {
        out = out.into_iter().flat_map(|v| (-k..=k).map(move |x| [v.clone(), vec![x]].concat())).collect();
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn integer_solutions_verify(
        (n, a, b) in (1usize..4, 1usize..4).prop_flat_map(|(n, m)| (
            Just(n),
            proptest::collection::vec(proptest::collection::vec(-4i64..=4, n), m),
            proptest::collection::vec(-6i64..=6, m),
        ))
    ) {
        let sys = system(n, a.clone(), b.clone());
        let s = solve_z(&sys).unwrap();
        if let Some(p) = &s.particular {
            prop_assert!(sys.satisfied_by(p));
        }
        for h in &s.basis {
            prop_assert!(sys.is_homogeneous_solution(h));
        }
        prop_assert_eq!(s.basis.len(), n - rank(&a));
        let vs = box_vectors(n, 5);
        if vs.iter().any(|v| sys.satisfied_by(v)) {
            prop_assert!(s.particular.is_some());
        }
        // Small homogeneous solutions are integer combinations of the basis.
        if !s.basis.is_empty() {
            for h in vs.iter().filter(|v| sys.is_homogeneous_solution(v)).take(10) {
                let cols = (0..n).map(|i| s.basis.iter().map(|bv| bv[i]).collect()).collect();
                let span = system(s.basis.len(), cols, h.clone());
                prop_assert!(solve_z(&span).unwrap().particular.is_some(), "{:?} not in the span of {:?}", h, s.basis);
            }
        }
    }
}

#[test]
fn solutions_in_n() {
    let values =
        |s: &str, bound| find_n_solutions(&single(s), bound).unwrap().iter().map(|s| s.value).collect::<Vec<_>>();
    assert_eq!(values("exists y. x = y + y", 6), [0, 2, 4, 6]);
    assert_eq!(values("exists y. x = s(y + y)", 5), [1, 3, 5]);
    let never = Component {
        free: vec!["x".into()],
        bound: vec![],
        literals: vec![clause_cycles::syntax::Literal::neq(Term::var("x"), Term::var("x"))],
    };
    assert!(find_n_solutions(&never, 30).unwrap().is_empty());
    let sols = find_n_solutions(&single("exists y. x = y + y"), 6).unwrap();
    assert_eq!(sols[2].vector, [4, 2]);
}

#[test]
fn solutions_in_n_agree_with_direct_evaluation() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let x = vec!["x".to_string()];
    let mut checked = 0;
    while checked < 150 {
        let phi = random_exists_formula(&mut rng, &x, false);
        let Ok(cs) = to_components(&phi) else { continue };
        for c in cs.iter().filter(|c| c.free.len() == 1) {
            let found: Vec<u64> = find_n_solutions_with(c, 12, 40).unwrap().iter().map(|s| s.value).collect();
            let direct: Vec<u64> = (0..=12).filter(|&d| holds_n(&c.to_formula(), &[("x".into(), d)])).collect();
            assert_eq!(found, direct, "{c}");
            checked += 1;
        }
    }
}

#[test]
fn descending_sequences() {
    let evens = single("exists y. x = y + y");
    let d = descending_sequence(&evens, &[0, 0], &[2, 1], 5).unwrap();
    assert_eq!(d.h0, [-2, -1]);
    assert_eq!(d.m0, 0);
    assert_eq!(d.sequence, [0, -2, -4, -6, -8]);
    for v in &d.vectors {
        assert!(z_holds(&evens, v));
    }

    let avoid = single("exists y. x = y + y & x + #4 != 0");
    let d = descending_sequence(&avoid, &[0, 0], &[2, 1], 4).unwrap();
    assert_eq!(d.m0, 3);
    assert_eq!(d.sequence, [-6, -8, -10, -12]);
    assert!(!d.holds_at(2));
    for m in d.m0..d.m0 + 50 {
        assert!(d.holds_at(m));
    }

    assert!(matches!(descending_sequence(&evens, &[2, 1], &[0, 0], 3), Err(DescentError::NotIncreasing)));
    assert!(matches!(descending_sequence(&evens, &[1, 0], &[2, 1], 3), Err(DescentError::NotASolution(_))));
}

#[test]
fn descent_for_formulas() {
    let parity = f("(exists y. x = y + y) | exists y. x = s(y + y)");
    let d = descent_for_formula(&parity, 6, 10).unwrap();
    assert_eq!(d.components.len(), 2);
    assert_eq!(d.index, 0);
    assert!(d.descent.sequence.windows(2).all(|w| w[0] > w[1]));
    for v in &d.descent.vectors {
        assert!(z_holds(&d.components[d.index], v));
    }

    assert!(matches!(
        descent_for_formula(&f("x = #3"), 20, 10),
        Err(DescentError::Insufficient { found: 1, needed: 2, .. })
    ));
    assert!(matches!(descent_for_formula(&f("x = y"), 20, 10), Err(DescentError::FreeVariables(_))));

    // An inductive formula after the shift that removes 0.
    let inductive = f("x = 0 | exists y. x = s(y)");
    let stripped = shift_and_strip(&inductive, &["x".to_string()]).unwrap();
    let d = descent_for_formula(&stripped.formula, 20, 10).unwrap();
    assert!(d.descent.sequence.windows(2).all(|w| w[0] > w[1]));
    assert!(d.descent.sequence.last().unwrap() < &0);
}

#[test]
fn random_components_descend() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let x = vec!["x".to_string()];
    let mut found = 0;
    for _ in 0..400 {
        let phi = random_exists_formula(&mut rng, &x, false);
        let Ok(cs) = to_components(&phi) else { continue };
        for c in cs.iter().filter(|c| c.occurring_free().len() == 1) {
            let sols = find_n_solutions(c, 20).unwrap();
            if sols.len() < 2 {
                continue;
            }
            let signed = |s: &NSolution| s.vector.iter().map(|v| *v as i64).collect::<Vec<_>>();
            let d = descending_sequence(c, &signed(&sols[0]), &signed(&sols[1]), 10).unwrap();
            assert!(d.sequence.windows(2).all(|w| w[0] > w[1]), "{c}");
            for m in d.m0..d.m0 + 50 {
                assert!(z_holds(c, &d.vector_at(m).unwrap()), "{c} at {m}");
            }
            found += 1;
        }
    }
    assert!(found >= 30, "only {found} components with two solutions");
}
