//! Seeded random instances and price datasets.

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::instance::Instance;
use crate::monoid::Monoid;
use crate::order_pair::OrderPair;
use crate::price::{q, Observation, PriceDataset, Q};
use crate::transform::PartialTransform;
use crate::universe::{Pair, Universe};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random data on n alternatives: each ordered pair is related with
/// probability `density`, and a related pair is strict with probability ½.
pub fn random_data<R: Rng>(rng: &mut R, n: usize, density: f64) -> OrderPair {
    let mut weak = Vec::new();
    let mut strict = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if x != y && rng.gen_bool(density) {
                weak.push((x, y));
                if rng.gen_bool(0.5) {
                    strict.push((x, y));
                }
            }
        }
    }
    weak.extend((0..n).map(|x| (x, x)));
    OrderPair::new(weak, strict)
}

/// A partial map defined on each point with probability `defined`.
pub fn random_transform<R: Rng>(rng: &mut R, name: &str, n: usize, defined: f64) -> PartialTransform {
    let images: Vec<Option<usize>> = (0..n).map(|_| rng.gen_bool(defined).then(|| rng.gen_range(0..n))).collect();
    PartialTransform::from_fn(name, n, |x| images[x])
}

fn instance(n: usize, gens: Vec<PartialTransform>, data: &OrderPair) -> Instance {
    Instance::new(Universe::numbered(n).expect("n ≥ 1"), gens, data).expect("random data is valid")
}

/// M = {id}, |X| ≤ `max_n`.
pub fn identity_instance<R: Rng>(rng: &mut R, max_n: usize) -> Instance {
    let n = rng.gen_range(1..=max_n);
    let density = rng.gen_range(0.05..0.4);
    instance(n, Vec::new(), &random_data(rng, n, density))
}

fn power(f: &PartialTransform, k: usize) -> PartialTransform {
    let mut out = PartialTransform::identity(f.universe_len());
    for _ in 0..k {
        out = out.then(f);
    }
    out
}

fn random_total<R: Rng>(rng: &mut R, n: usize) -> Vec<usize> {
    (0..n).map(|_| rng.gen_range(0..n)).collect()
}

/// Total, pairwise commuting generators: powers of one random map, or maps
/// acting on separate coordinates of a product a × b.
pub fn commuting_instance<R: Rng>(rng: &mut R, max_n: usize, max_gens: usize) -> Instance {
    let n = rng.gen_range(2..=max_n);
    let count = rng.gen_range(1..=max_gens);
    let factor = (2..n).find(|a| n % a == 0 && n / a >= 2);
    let gens: Vec<PartialTransform> = match factor {
        Some(a) if rng.gen_bool(0.5) => {
            let b = n / a;
            let (f, g) = (random_total(rng, a), random_total(rng, b));
            (0..count)
                .map(|i| {
                    let (i0, j0) = (rng.gen_range(0..3usize), rng.gen_range(0..3usize));
                    PartialTransform::from_fn(format!("g{i}"), n, |x| {
                        let (mut u, mut v) = (x / b, x % b);
                        for _ in 0..i0 {
                            u = f[u];
                        }
                        for _ in 0..j0 {
                            v = g[v];
                        }
                        Some(u * b + v)
                    })
                })
                .collect()
        }
        _ => {
            let f = random_total(rng, n);
            let base = PartialTransform::from_fn("f", n, |x| Some(f[x]));
            (0..count).map(|i| power(&base, rng.gen_range(1..=3)).with_name(format!("g{i}"))).collect()
        }
    };
    let density = rng.gen_range(0.05..0.35);
    instance(n, gens, &random_data(rng, n, density))
}

/// Arbitrary partial generators whose monoid closes within `max_m` elements.
pub fn general_instance<R: Rng>(rng: &mut R, max_n: usize, max_m: usize) -> Instance {
    loop {
        let n = rng.gen_range(2..=max_n);
        let count = rng.gen_range(1..=3);
        let defined = rng.gen_range(0.2..0.9);
        let gens: Vec<PartialTransform> =
            (0..count).map(|i| random_transform(rng, &format!("g{i}"), n, defined)).collect();
        let monoid = Monoid::generate(&gens, n, max_m);
        if !monoid.is_closed() {
            continue;
        }
        let density = rng.gen_range(0.05..0.35);
        return instance(n, gens, &random_data(rng, n, density));
    }
}

/// Data drawn from a random invariant-compatible instance: random generators,
/// then pairs sampled from a random weak order and kept only when the
/// result is rationalizable per `accept`.
pub fn rationalizable_instance<R: Rng>(
    rng: &mut R,
    max_n: usize,
    accept: impl Fn(&Instance) -> bool,
) -> Instance {
    loop {
        let n = rng.gen_range(2..=max_n);
        let count = rng.gen_range(0..=2);
        let defined = rng.gen_range(0.2..0.9);
        let gens: Vec<PartialTransform> =
            (0..count).map(|i| random_transform(rng, &format!("g{i}"), n, defined)).collect();
        let mut rank: Vec<usize> = (0..n).map(|_| rng.gen_range(0..n)).collect();
        rank.shuffle(rng);
        let mut weak: Vec<Pair> = (0..n).map(|x| (x, x)).collect();
        let mut strict = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if x != y && rank[x] >= rank[y] && rng.gen_bool(0.3) {
                    weak.push((x, y));
                    if rank[x] > rank[y] && rng.gen_bool(0.5) {
                        strict.push((x, y));
                    }
                }
            }
        }
        let inst = instance(n, gens, &OrderPair::new(weak, strict));
        if inst.monoid().is_closed() && accept(&inst) {
            return inst;
        }
    }
}

fn small_q<R: Rng>(rng: &mut R, lo: i64, hi: i64) -> Q {
    Q::from_integer(rng.gen_range(lo..=hi).into())
}

/// Integer prices in 1..=5 and quantities in 0..=5, no zero bundle.
pub fn price_dataset<R: Rng>(rng: &mut R, max_obs: usize, max_dim: usize) -> PriceDataset {
    let k = rng.gen_range(1..=max_obs);
    let l = rng.gen_range(1..=max_dim);
    let obs = (0..k)
        .map(|_| {
            let price = (0..l).map(|_| small_q(rng, 1, 5)).collect();
            let mut bundle: Vec<Q> = (0..l).map(|_| small_q(rng, 0, 5)).collect();
            if bundle.iter().all(|b| *b == q(0, 1)) {
                bundle[0] = q(1, 1);
            }
            Observation { price, bundle }
        })
        .collect();
    PriceDataset::new(obs).expect("valid by construction")
}

/// Demand of v(y) + t with v separable and concave on {0..grid}^(L−1),
/// and t absorbing the remaining income.
pub fn quasilinear_model<R: Rng>(rng: &mut R, obs: usize, dim: usize, grid: usize) -> PriceDataset {
    let goods = dim - 1;
    // marginal values, decreasing in the quantity
    let marginal: Vec<Vec<Q>> = (0..goods)
        .map(|_| {
            let mut m: Vec<i64> = (0..grid).map(|_| rng.gen_range(1..=12)).collect();
            m.sort_unstable_by(|a, b| b.cmp(a));
            m.into_iter().map(|v| q(v, 2)).collect()
        })
        .collect();
    let data = (0..obs)
        .map(|_| {
            let pt: Vec<Q> = (0..goods).map(|_| q(rng.gen_range(1..=12), 2)).collect();
            let scale = q(rng.gen_range(1..=4), 1);
            let y: Vec<Q> = (0..goods)
                .map(|c| {
                    let k = marginal[c].iter().take_while(|mv| **mv >= pt[c]).count();
                    Q::from_integer((k as i64).into())
                })
                .collect();
            let income = q((goods * grid) as i64 * 6 + 1, 1);
            let spent: Q = pt.iter().zip(&y).map(|(p, v)| p * v).sum();
            let mut bundle = y;
            bundle.push(income - spent);
            let mut price: Vec<Q> = pt.iter().map(|p| p * &scale).collect();
            price.push(scale);
            Observation { price, bundle }
        })
        .collect();
    PriceDataset::new(data).expect("valid by construction")
}

/// Cobb-Douglas demand x_c = a_c·m / p_c with rational shares.
pub fn cobb_douglas_model<R: Rng>(rng: &mut R, obs: usize, dim: usize) -> PriceDataset {
    let weights: Vec<i64> = (0..dim).map(|_| rng.gen_range(1..=5)).collect();
    let total: i64 = weights.iter().sum();
    let data = (0..obs)
        .map(|_| {
            let price: Vec<Q> = (0..dim).map(|_| q(rng.gen_range(1..=10), 2)).collect();
            let income = q(rng.gen_range(1..=20), 1);
            let bundle = (0..dim).map(|c| q(weights[c], total) * &income / &price[c]).collect();
            Observation { price, bundle }
        })
        .collect();
    PriceDataset::new(data).expect("valid by construction")
}

/// Demand of min_c(x_c + β_c), which satisfies U(x + α·1) = U(x) + α.
/// The optimum equalises x_c + β_c, so it is rational.
pub fn translation_model<R: Rng>(rng: &mut R, obs: usize, dim: usize) -> PriceDataset {
    let beta: Vec<Q> = (0..dim).map(|_| q(rng.gen_range(0..=6), 1)).collect();
    let data = (0..obs)
        .map(|_| {
            let price: Vec<Q> = (0..dim).map(|_| q(rng.gen_range(1..=10), 2)).collect();
            let norm: Q = price.iter().sum();
            let income = q(rng.gen_range(200..=400), 1);
            let pb: Q = price.iter().zip(&beta).map(|(p, b)| p * b).sum();
            let level = (income + pb) / norm;
            let bundle = beta.iter().map(|b| &level - b).collect();
            Observation { price, bundle }
        })
        .collect();
    PriceDataset::new(data).expect("valid by construction")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closure::{is_commutative, Commutativity};

    #[test]
    fn deterministic() {
        let a = general_instance(&mut rng(7), 6, 12);
        let b = general_instance(&mut rng(7), 6, 12);
        assert_eq!(a, b);
    }

    #[test]
    fn commuting_generators_commute() {
        let mut r = rng(1);
        for _ in 0..50 {
            let inst = commuting_instance(&mut r, 7, 3);
            let m = inst.monoid();
            assert!(m.is_closed() && m.all_total());
            assert_eq!(is_commutative(&m), Commutativity::Commutative);
        }
    }

    #[test]
    fn general_monoids_are_small() {
        let mut r = rng(2);
        for _ in 0..50 {
            let m = general_instance(&mut r, 6, 12).monoid();
            assert!(m.is_closed() && m.len() <= 12);
        }
    }
}
