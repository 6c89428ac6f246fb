mod common;

use effect_algebra::rational::ratio;
use effect_algebra::{
    extreme_states, find_state, paper_fixture, restrict, sharp_subalgebra, smear_state,
    state_system, verify_state, FixtureName, Rational, State, StateSearch,
};

/// Rows rebuilt from the table: coefficients per element and right-hand side.
fn rows(e: &effect_algebra::EffectAlgebra) -> Vec<(Vec<i64>, i64)> {
    let mut out = Vec::new();
    for x in e.elements().filter(|&x| x != e.zero()) {
        for y in e.elements().filter(|&y| y >= x && y != e.zero()) {
            if let Some(z) = common::sum(e, x, y) {
                let mut c = vec![0; e.size()];
                c[z.index()] += 1;
                c[x.index()] -= 1;
                c[y.index()] -= 1;
                out.push((c, 0));
            }
        }
    }
    let mut zero = vec![0; e.size()];
    zero[e.zero().index()] = 1;
    out.push((zero, 0));
    let mut one = vec![0; e.size()];
    one[e.one().index()] = 1;
    out.push((one, 1));
    out
}

#[test]
fn example_4_4_certificate_checks_independently() {
    let e = paper_fixture(FixtureName::Example44);
    let StateSearch::None(none) = find_state(&e) else {
        panic!("Example 4.4 has no state");
    };
    let rows = rows(&e);
    let y = &none.certificate.row_multipliers;
    let w = &none.certificate.upper_multipliers;
    assert_eq!(y.len(), rows.len());
    let zero = ratio(0, 1);
    let mut coeffs = vec![zero.clone(); e.size()];
    let mut constant = zero.clone();
    for ((c, rhs), yr) in rows.iter().zip(y) {
        for (j, &cj) in c.iter().enumerate() {
            coeffs[j] += ratio(cj, 1) * yr;
        }
        constant += ratio(*rhs, 1) * yr;
    }
    for (j, wj) in w.iter().enumerate() {
        assert!(*wj >= zero);
        coeffs[j] += wj;
        constant += wj;
    }
    // Σ c_j v_j = K with c ≥ 0 and v ≥ 0 forces K ≥ 0.
    assert!(coeffs.iter().all(|c| *c >= zero));
    assert!(constant < zero);
    assert!(none.certificate.check(&none.system.system).is_ok());
}

#[test]
fn solver_states_pass_the_oracle() {
    for entry in common::corpus() {
        let e = &entry.algebra;
        let system = state_system(e);
        for s in extreme_states(e) {
            assert!(common::is_state(e, s.values()), "{}", entry.label);
            assert!(system.system.satisfied_by(s.values()));
        }
    }
}

#[test]
fn smearing_hsum_c2_c3() {
    let e = effect_algebra::horizontal_sum(&[
        effect_algebra::mv_chain(2).unwrap(),
        effect_algebra::mv_chain_with_generator(3, "b").unwrap(),
    ])
    .unwrap();
    let sub = sharp_subalgebra(&e).unwrap();
    assert_eq!(sub.algebra.size(), 2);
    let omega = State::new(&sub.algebra, vec![ratio(0, 1), ratio(1, 1)]).unwrap();
    let s = smear_state(&e, &sub, &omega).unwrap();
    let expected: Vec<Rational> = [(0, 1), (1, 2), (1, 3), (2, 3), (1, 1)]
        .map(|(p, q)| ratio(p, q))
        .to_vec();
    assert_eq!(e.names(), ["0", "a", "b", "2b", "1"]);
    assert_eq!(s.values(), expected);
    assert!(common::is_state(&e, s.values()));
}

#[test]
fn smearing_boolean_times_chain() {
    let e = effect_algebra::direct_product(
        &effect_algebra::boolean_algebra(1).unwrap(),
        &effect_algebra::mv_chain_with_generator(2, "c").unwrap(),
    )
    .unwrap();
    let sub = sharp_subalgebra(&e).unwrap();
    let values: Vec<Rational> = sub
        .algebra
        .names()
        .iter()
        .map(|n| match n.as_str() {
            "(0,0)" => ratio(0, 1),
            "(1,1)" => ratio(1, 1),
            _ => ratio(1, 2),
        })
        .collect();
    let omega = State::new(&sub.algebra, values).unwrap();
    let s = smear_state(&e, &sub, &omega).unwrap();
    assert_eq!(*s.value(e.id("(1,c)")), ratio(3, 4));
    assert_eq!(*s.value(e.id("(0,c)")), ratio(1, 4));
    assert_eq!(restrict(&sub, &s), omega);
    assert!(verify_state(&e, s.values()).is_valid());
}
