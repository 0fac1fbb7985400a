use std::collections::{BTreeSet, VecDeque};

use invariance::closure::DenseClosure;
use invariance::refutation::{enumerate_broken_cycles, saturate_with, GapLink, GapPolicy, SaturationResult};
use invariance::transform::compose;
use invariance::*;
use proptest::prelude::*;

fn order_pair(n: usize) -> impl Strategy<Value = OrderPair> {
    proptest::collection::vec((0..n, 0..n, any::<bool>()), 0..2 * n).prop_map(move |edges| {
        let mut weak: Vec<Pair> = (0..n).map(|x| (x, x)).collect();
        let mut strict = Vec::new();
        for (x, y, s) in edges {
            weak.push((x, y));
            if s {
                strict.push((x, y));
            }
        }
        OrderPair::new(weak, strict)
    })
}

fn transform(n: usize) -> impl Strategy<Value = PartialTransform> {
    proptest::collection::vec(proptest::option::weighted(0.7, 0..n), n)
        .prop_map(move |images| PartialTransform::from_fn("t", n, |x| images[x]))
}

/// Reachability over states (node, used a strict edge).
fn path_oracle(p: &OrderPair, n: usize, from: Alt) -> (Vec<bool>, Vec<bool>) {
    let mut seen = vec![[false; 2]; n];
    let mut queue = VecDeque::new();
    for &(a, b) in &p.weak {
        if a == from {
            let s = p.strict.contains(&(a, b)) as usize;
            if !seen[b][s] {
                seen[b][s] = true;
                queue.push_back((b, s));
            }
        }
    }
    while let Some((v, s)) = queue.pop_front() {
        for &(a, b) in &p.weak {
            if a == v {
                let t = s.max(p.strict.contains(&(a, b)) as usize);
                if !seen[b][t] {
                    seen[b][t] = true;
                    queue.push_back((b, t));
                }
            }
        }
    }
    (seen.iter().map(|s| s[0] || s[1]).collect(), seen.iter().map(|s| s[1]).collect())
}

proptest! {
    #[test]
    fn closure_matches_path_search(p in order_pair(6)) {
        let c = DenseClosure::new(&p, 6);
        for x in 0..6 {
            let (weak, strict) = path_oracle(&p, 6, x);
            for y in 0..6 {
                prop_assert_eq!(c.weak.get(x, y), weak[y]);
                prop_assert_eq!(c.strict.get(x, y), strict[y]);
            }
        }
    }

    #[test]
    fn find_cycle_iff_strict_edge_returns(p in order_pair(6)) {
        let t = transitive_closure(&p);
        let expected = t.strict.iter().any(|&(a, b)| t.weak.contains(&(b, a)));
        match find_cycle(&p) {
            Some(w) => {
                prop_assert!(expected);
                prop_assert!(w.verify(&p));
            }
            None => prop_assert!(!expected),
        }
    }

    #[test]
    fn composition_is_associative(a in transform(5), b in transform(5), c in transform(5)) {
        prop_assert_eq!(compose(&a, &compose(&b, &c)), compose(&compose(&a, &b), &c));
    }

    #[test]
    fn regenerating_a_closed_monoid_is_idempotent(a in transform(4), b in transform(4)) {
        let m = Monoid::generate(&[a, b], 4, 1000);
        prop_assert!(m.is_closed());
        let again = Monoid::generate(m.elements(), 4, 1000);
        let set = |m: &Monoid| m.elements().iter().map(|t| (0..4).map(|x| t.apply(x)).collect::<Vec<_>>()).collect::<BTreeSet<_>>();
        prop_assert_eq!(set(&m), set(&again));
    }

    #[test]
    fn monoid_is_closed_under_composition(a in transform(4), b in transform(4)) {
        let m = Monoid::generate(&[a, b], 4, 1000);
        for f in m.elements() {
            for g in m.elements() {
                prop_assert!(m.position(&compose(f, g)).is_some());
            }
        }
    }
}

fn canonical(links: &[GapLink]) -> Vec<GapLink> {
    let k = (0..links.len()).min_by_key(|&i| links[i]).unwrap();
    links[k..].iter().chain(&links[..k]).copied().collect()
}

/// Every sequence of distinct links of length ≤ `max` closing up in the closure.
fn brute_cycles(data: &OrderPair, m: &Monoid, max: usize, policy: GapPolicy) -> BTreeSet<Vec<GapLink>> {
    let n = m.universe_len();
    let c = DenseClosure::new(data, n);
    let mut nodes = Vec::new();
    for (t, w) in m.active() {
        for x in w.domain() {
            for y in w.domain() {
                let related = data.weak.contains(&(x, y)) || data.weak.contains(&(y, x));
                if policy == GapPolicy::Any || !related {
                    nodes.push(GapLink { transform: t, x, y });
                }
            }
        }
    }
    let mut out = BTreeSet::new();
    let mut stack: Vec<Vec<GapLink>> = nodes.iter().map(|&l| vec![l]).collect();
    while let Some(seq) = stack.pop() {
        let ok = |a: &GapLink, b: &GapLink| c.weak.get(m.get(a.transform).apply(a.x).unwrap(), m.get(b.transform).apply(b.y).unwrap());
        if ok(seq.last().unwrap(), &seq[0]) {
            out.insert(canonical(&seq));
        }
        if seq.len() < max {
            for &l in &nodes {
                if !seq.contains(&l) && ok(seq.last().unwrap(), &l) {
                    let mut next = seq.clone();
                    next.push(l);
                    stack.push(next);
                }
            }
        }
    }
    out
}

#[test]
fn broken_cycles_match_brute_force() {
    let mut r = random::rng(11);
    for _ in 0..40 {
        let inst = random::general_instance(&mut r, 4, 6);
        let m = inst.monoid();
        for policy in [GapPolicy::Unrelated, GapPolicy::Any] {
            let set = enumerate_broken_cycles(&inst.data, &m, 3, policy, usize::MAX);
            assert!(set.complete);
            let got: BTreeSet<Vec<GapLink>> = set.cycles.iter().map(|c| c.links.clone()).collect();
            assert_eq!(got.len(), set.cycles.len(), "duplicates reported");
            assert_eq!(got, brute_cycles(&inst.data, &m, 3, policy));
        }
    }
}

#[test]
fn subsumption_does_not_change_verdicts() {
    let mut r = random::rng(12);
    let limits = Limits { max_clauses: 3_000, ..Limits::default() };
    let mut compared = 0;
    for _ in 0..30 {
        let inst = random::general_instance(&mut r, 4, 8);
        let m = inst.monoid();
        let with = saturate_with(&inst.data, &m, &limits, true);
        let without = saturate_with(&inst.data, &m, &limits, false);
        let refuted = |s: &SaturationResult| matches!(s, SaturationResult::Refuted(_));
        let exhausted = |s: &SaturationResult| matches!(s, SaturationResult::Exhausted(..));
        if !exhausted(&with) && !exhausted(&without) {
            assert_eq!(refuted(&with), refuted(&without));
            compared += 1;
        }
        if let SaturationResult::Refuted(d) = with {
            check_derivation(&d, &inst.data, &m).unwrap();
        }
    }
    assert!(compared >= 10, "only {compared} runs finished without subsumption");
}

#[test]
fn general_decision_agrees_with_sat() {
    let mut r = random::rng(13);
    for _ in 0..150 {
        let inst = random::general_instance(&mut r, 6, 12);
        let m = inst.monoid();
        let verdict = decide_general(&inst.data, &m, &inst.limits);
        let truth = sat::decide(&inst.data, &m).unwrap().as_bool();
        if let Some(b) = verdict.as_bool() {
            assert_eq!(Some(b), truth);
        }
        match verdict {
            Verdict::NotRationalizable(Refutation::Derivation(d)) => check_derivation(&d, &inst.data, &m).unwrap(),
            Verdict::Rationalizable(Certificate::Witness(p)) => p.check(&inst.data, &m).unwrap(),
            _ => {}
        }
    }
}

#[test]
fn sat_models_are_invariant_preferences() {
    let mut r = random::rng(14);
    for _ in 0..50 {
        let inst = random::general_instance(&mut r, 5, 8);
        let m = inst.monoid();
        let enc = sat::encode_phi(&inst.data, &m);
        for model in sat::enumerate_models(&enc.cnf, 50).models {
            sat::extract_preference(&enc.vars, &model).check(&inst.data, &m).unwrap();
        }
    }
}
