use invariance::price::*;
use invariance::random;
use num_traits::{One, Zero};
use proptest::prelude::*;

/// Every simple cycle of observation indices, smallest index first.
fn simple_cycles(k: usize) -> Vec<Vec<usize>> {
    fn extend(k: usize, path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if path.len() >= 2 {
            out.push(path.clone());
        }
        for j in path[0] + 1..k {
            if !path.contains(&j) {
                path.push(j);
                extend(k, path, out);
                path.pop();
            }
        }
    }
    let mut out = Vec::new();
    for s in 0..k {
        extend(k, &mut vec![s], &mut out);
    }
    out
}

fn sum_cycle(w: impl Fn(usize, usize) -> Q, c: &[usize]) -> Q {
    (0..c.len()).map(|i| w(c[i], c[(i + 1) % c.len()])).sum()
}

/// Weights written out directly from the displayed conditions.
fn quasilinear_oracle(ds: &PriceDataset) -> bool {
    let o = ds.observations();
    let l = ds.dim() - 1;
    let w = |i: usize, j: usize| {
        (0..l).map(|c| &o[i].price[c] / &o[i].price[l] * (&o[j].bundle[c] - &o[i].bundle[c])).sum::<Q>()
    };
    simple_cycles(ds.len()).iter().any(|c| sum_cycle(w, c) < Q::zero())
}

fn homothetic_oracle(ds: &PriceDataset) -> bool {
    let o = ds.observations();
    let w = |i: usize, j: usize| dot(&o[i].price, &o[j].bundle) / dot(&o[i].price, &o[i].bundle);
    simple_cycles(ds.len())
        .iter()
        .any(|c| (0..c.len()).map(|i| w(c[i], c[(i + 1) % c.len()])).product::<Q>() < Q::one())
}

fn translation_oracle(ds: &PriceDataset) -> bool {
    let o = ds.observations();
    let w = |i: usize, j: usize| {
        let norm: Q = o[i].price.iter().sum();
        (0..ds.dim()).map(|c| &o[i].price[c] / &norm * (&o[j].bundle[c] - &o[i].bundle[c])).sum::<Q>()
    };
    simple_cycles(ds.len()).iter().any(|c| sum_cycle(w, c) < Q::zero())
}

#[test]
fn cycle_counts() {
    // simple directed cycles in the complete digraph on 4 nodes: 6 + 8 + 6
    assert_eq!(simple_cycles(4).len(), 20);
}

#[test]
fn checks_agree_with_exhaustive_cycles() {
    let mut r = random::rng(10);
    let mut fails = [0; 3];
    for _ in 0..300 {
        let ds = random::price_dataset(&mut r, 6, 4);
        let checks = [
            (quasilinear_check(&ds), quasilinear_oracle(&ds), quasilinear_problem(&ds)),
            (homothetic_check(&ds).unwrap(), homothetic_oracle(&ds), homothetic_problem(&ds).unwrap()),
            (translation_check(&ds), translation_oracle(&ds), translation_problem(&ds)),
        ];
        for (i, (verdict, oracle, problem)) in checks.into_iter().enumerate() {
            assert_eq!(!verdict.passed(), oracle, "check {i} on {}", ds.to_csv());
            if let PriceVerdict::Fail(c) = verdict {
                assert!(problem.violates(&c));
                fails[i] += 1;
            }
        }
    }
    assert!(fails.iter().all(|&f| f > 10 && f < 290), "{fails:?}");
}

#[test]
fn model_data_passes() {
    let mut r = random::rng(20);
    for _ in 0..100 {
        let obs = 6;
        let dim = 2 + (r.next_u32() % 3) as usize;
        assert!(quasilinear_check(&random::quasilinear_model(&mut r, obs, dim, 4)).passed());
        assert!(homothetic_check(&random::cobb_douglas_model(&mut r, obs, dim)).unwrap().passed());
        assert!(translation_check(&random::translation_model(&mut r, obs, dim)).passed());
    }
}

use rand::RngCore;

fn permuted(ds: &PriceDataset, perm: &[usize]) -> PriceDataset {
    PriceDataset::new(perm.iter().map(|&i| ds.observations()[i].clone()).collect()).unwrap()
}

proptest! {
    #[test]
    fn verdicts_ignore_observation_order(seed in any::<u64>(), rot in 0usize..6) {
        let ds = random::price_dataset(&mut random::rng(seed), 6, 3);
        let k = ds.len();
        let perm: Vec<usize> = (0..k).map(|i| (i + rot) % k).rev().collect();
        let p = permuted(&ds, &perm);
        prop_assert_eq!(quasilinear_check(&ds).passed(), quasilinear_check(&p).passed());
        prop_assert_eq!(homothetic_check(&ds).unwrap().passed(), homothetic_check(&p).unwrap().passed());
        prop_assert_eq!(translation_check(&ds).passed(), translation_check(&p).passed());
    }

    #[test]
    fn homothetic_ignores_scaling(seed in any::<u64>(), k in 0usize..6, lam in 1i64..7, mu in 1i64..7) {
        let ds = random::price_dataset(&mut random::rng(seed), 6, 3);
        let k = k % ds.len();
        let mut obs = ds.observations().to_vec();
        obs[k].price.iter_mut().for_each(|p| *p *= q(lam, 1));
        obs[k].bundle.iter_mut().for_each(|x| *x *= q(mu, 1));
        let scaled = PriceDataset::new(obs).unwrap();
        prop_assert_eq!(homothetic_check(&ds).unwrap().passed(), homothetic_check(&scaled).unwrap().passed());
    }

    #[test]
    fn quasilinear_ignores_numeraire_quantities(seed in any::<u64>(), k in 0usize..6, c in 0i64..9) {
        let ds = random::price_dataset(&mut random::rng(seed), 6, 3);
        let k = k % ds.len();
        let mut obs = ds.observations().to_vec();
        let last = obs[k].bundle.len() - 1;
        obs[k].bundle[last] += q(c, 1);
        let shifted = PriceDataset::new(obs).unwrap();
        prop_assert_eq!(quasilinear_check(&ds), quasilinear_check(&shifted));
    }
}

/// On a finite grid with unit numeraire shifts, a refutation by the general
/// engine must be a quasilinear failure too.
#[test]
fn grid_refutation_implies_quasilinear_failure() {
    use invariance::{sat, Monoid, OrderPair, PartialTransform};
    let mut r = random::rng(30);
    let (gy, gt) = (4i64, 6i64);
    let mut refuted = 0;
    for _ in 0..150 {
        let k = 2 + (r.next_u32() % 3) as usize;
        let obs: Vec<Observation> = (0..k)
            .map(|_| Observation {
                price: vec![q(1 + (r.next_u32() % 4) as i64, 1), q(1, 1)],
                bundle: vec![q((r.next_u32() % gy as u32) as i64, 1), q((r.next_u32() % gt as u32) as i64, 1)],
            })
            .collect();
        let ds = PriceDataset::new(obs).unwrap();
        let id = |y: i64, t: i64| (y * gt + t) as usize;
        let n = (gy * gt) as usize;
        let (pair, universe) = revealed_pair(&ds);
        let coord = |b: usize| {
            let s = universe.label(b).trim_matches(|c| c == '(' || c == ')').to_string();
            let v: Vec<i64> = s.split(',').map(|x| x.parse().unwrap()).collect();
            id(v[0], v[1])
        };
        let lift = |set: &std::collections::BTreeSet<(usize, usize)>| {
            set.iter().map(|&(a, b)| (coord(a), coord(b))).collect::<Vec<_>>()
        };
        let mut weak = lift(&pair.weak);
        weak.extend((0..n).map(|x| (x, x)));
        let data = OrderPair::new(weak, lift(&pair.strict));
        let up = PartialTransform::from_fn("t+1", n, |x| ((x as i64 % gt) + 1 < gt).then_some(x + 1));
        let down = PartialTransform::from_fn("t-1", n, |x| (x as i64 % gt > 0).then(|| x - 1));
        let m = Monoid::generate(&[up, down], n, 1000);
        assert!(m.is_closed());
        if sat::decide(&data, &m).unwrap().as_bool() == Some(false) {
            refuted += 1;
            assert!(!quasilinear_check(&ds).passed(), "{}", ds.to_csv());
        }
    }
    assert!(refuted > 0);
}
