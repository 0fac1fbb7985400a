use invariance::catalog::{self, commuting_label, indicator, kraft_index};
use invariance::refutation::Step;
use invariance::*;

fn refutation_of(inst: &Instance) -> Derivation {
    let m = inst.monoid();
    match decide_general(&inst.data, &m, &inst.limits) {
        Verdict::NotRationalizable(Refutation::Derivation(d)) => {
            check_derivation(&d, &inst.data, &m).unwrap();
            d
        }
        other => panic!("expected a derivation, got {other:?}"),
    }
}

#[test]
fn stationarity_collapses_two_axioms() {
    let inst = catalog::stationarity();
    let d = refutation_of(&inst);
    let (x, y) = (inst.universe.id("x").unwrap(), inst.universe.id("y").unwrap());
    let mut axioms: Vec<ForbiddenPair> = d.axioms().cloned().collect();
    axioms.sort();
    assert_eq!(axioms, vec![ForbiddenPair::new([(x, y)], []), ForbiddenPair::new([(y, x)], [])]);
    assert_eq!(d.len(), 3);
    assert!(d.steps[2].result().is_empty());
    assert_eq!(sat::decide(&inst.data, &inst.monoid()).unwrap().as_bool(), Some(false));
}

#[test]
fn stationarity_closure_is_acyclic() {
    let inst = catalog::stationarity();
    assert!(find_cycle(&m_closure(&inst.data, &inst.monoid())).is_none());
}

#[test]
fn dated_rewards_predicts_strict_preference() {
    let inst = catalog::dated_rewards();
    let m = inst.monoid();
    assert_eq!(decide_general(&inst.data, &m, &inst.limits).as_bool(), Some(true));
    let f = forced_comparisons(&inst.data, &m, &inst.limits).unwrap();
    let (a0, b0) = (inst.universe.id("(a,0)").unwrap(), inst.universe.id("(b,0)").unwrap());
    assert!(f.strict.contains_key(&(a0, b0)));
    assert!(sat::forced(&inst.data, &m, (a0, b0), true).unwrap());
}

#[test]
fn dated_rewards_witness_cycle() {
    // (a,1) ≻ (b,2) ≽ (a,2) ≻ (b,1) ≽ (a,1) once (b,0) ≽ (a,0) is added
    let inst = catalog::dated_rewards();
    let id = |s: &str| inst.universe.id(s).unwrap();
    let mut data = inst.data.clone();
    data.weak.insert((id("(b,0)"), id("(a,0)")));
    let closure = m_closure(&data, &inst.monoid());
    assert!(closure.weak.contains(&(id("(b,2)"), id("(a,2)"))));
    assert!(closure.weak.contains(&(id("(b,1)"), id("(a,1)"))));
    let c = find_cycle(&closure).unwrap();
    assert!(c.verify(&closure));
    assert_eq!(sat::decide(&data, &inst.monoid()).unwrap().as_bool(), Some(false));
}

#[test]
fn noncommuting_reformulation_refuted() {
    let inst = catalog::abstract_noncommuting();
    let m = inst.monoid();
    assert!(matches!(decide_commutative(&inst.data, &m), Err(NotApplicable::NonCommutative)));
    assert_eq!(refutation_of(&inst).len(), 3);
    assert_eq!(sat::decide(&inst.data, &m).unwrap().as_bool(), Some(false));
}

#[test]
fn commuting_reformulation_has_four_cycle() {
    let inst = catalog::abstract_commuting();
    let m = inst.monoid();
    let closure = m_closure(&inst.data, &m);
    let id = |b: &str, i: char, j: char| inst.universe.id(&commuting_label(b, i, j)).unwrap();
    let cycle = [id("x", 'a', 'd'), id("y", 'b', 'd'), id("x", 'b', 'c'), id("y", 'a', 'c')];
    for k in 0..4 {
        assert!(closure.strict.contains(&(cycle[k], cycle[(k + 1) % 4])), "link {k}");
    }
    assert!(matches!(
        decide_commutative(&inst.data, &m),
        Ok(Verdict::NotRationalizable(Refutation::Cycle(_)))
    ));
}

#[test]
fn kraft_chain_in_closure() {
    let inst = catalog::kraft();
    let m = inst.monoid();
    assert!(m.is_closed());
    let closure = m_closure(&inst.data, &m);
    let chain = [indicator(&[1, 4]), indicator(&[2, 3, 5]), [1, 0, 0, 0, 2], [1, -1, 1, 1, 1]];
    for k in 0..4 {
        let (lo, hi) = (kraft_index(&chain[k]), kraft_index(&chain[(k + 1) % 4]));
        assert!(closure.strict.contains(&(hi, lo)), "link {k}");
    }
    assert!(matches!(
        decide_commutative(&inst.data, &m),
        Ok(Verdict::NotRationalizable(Refutation::Cycle(_)))
    ));
}

#[test]
fn ellsberg_three_step_derivation() {
    let inst = catalog::ellsberg();
    let d = refutation_of(&inst);
    assert_eq!(d.len(), 3);
    let (r, b) = (inst.universe.id("{r}").unwrap(), inst.universe.id("{b}").unwrap());
    let mut axioms: Vec<ForbiddenPair> = d.axioms().cloned().collect();
    axioms.sort();
    assert_eq!(axioms, vec![ForbiddenPair::new([(r, b)], []), ForbiddenPair::new([(b, r)], [])]);
    assert!(matches!(d.steps[2], Step::Collapse { .. }));
}

#[test]
fn instances_round_trip_through_json() {
    for inst in [catalog::stationarity(), catalog::dated_rewards(), catalog::abstract_commuting(), catalog::ellsberg()] {
        assert_eq!(Instance::parse(&inst.to_json()).unwrap(), inst);
    }
}
