use num_traits::{One, Zero};

use super::dataset::{dot, PriceDataset, PriceError, Q};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PriceVerdict {
    Pass,
    /// Observation indices k₀ → k₁ → … → k₀.
    Fail(Vec<usize>),
}

impl PriceVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, PriceVerdict::Pass)
    }
}

/// Edge weights on observation indices, combined by sum or by product.
pub struct CycleProblem {
    pub weights: Vec<Vec<Q>>,
    pub multiplicative: bool,
}

impl CycleProblem {
    fn unit(&self) -> Q {
        if self.multiplicative {
            Q::one()
        } else {
            Q::zero()
        }
    }

    fn combine(&self, a: &Q, b: &Q) -> Q {
        if self.multiplicative {
            a * b
        } else {
            a + b
        }
    }

    /// Sum or product of the weights around the cycle.
    pub fn cycle_value(&self, cycle: &[usize]) -> Q {
        let k = cycle.len();
        (0..k).fold(self.unit(), |acc, i| self.combine(&acc, &self.weights[cycle[i]][cycle[(i + 1) % k]]))
    }

    /// Strictly below the unit: sum < 0 or product < 1.
    pub fn violates(&self, cycle: &[usize]) -> bool {
        self.cycle_value(cycle) < self.unit()
    }

    /// Bellman–Ford from a virtual source joined to every node by the unit.
    pub fn find_violation(&self) -> Option<Vec<usize>> {
        let k = self.weights.len();
        let mut dist: Vec<Q> = vec![self.unit(); k];
        let mut pred: Vec<Option<usize>> = vec![None; k];
        let mut last = None;
        for _ in 0..=k {
            last = None;
            for i in 0..k {
                for j in 0..k {
                    if i == j {
                        continue;
                    }
                    let cand = self.combine(&dist[i], &self.weights[i][j]);
                    if cand < dist[j] {
                        dist[j] = cand;
                        pred[j] = Some(i);
                        last = Some(j);
                    }
                }
            }
            last?;
        }
        let mut v = last?;
        for _ in 0..k {
            v = pred[v].expect("relaxed nodes have predecessors");
        }
        let mut cycle = vec![v];
        let mut u = pred[v].unwrap();
        while u != v {
            cycle.push(u);
            u = pred[u].unwrap();
        }
        cycle.reverse();
        debug_assert!(self.violates(&cycle));
        Some(cycle)
    }

    fn verdict(&self) -> PriceVerdict {
        match self.find_violation() {
            Some(c) => PriceVerdict::Fail(c),
            None => PriceVerdict::Pass,
        }
    }
}

/// w(i→j) = p̃_i·(y_j − y_i), with prices rescaled so the last (numeraire) price is 1.
pub fn quasilinear_problem(ds: &PriceDataset) -> CycleProblem {
    let obs = ds.observations();
    let l = ds.dim() - 1;
    let weights = obs
        .iter()
        .map(|oi| {
            let scale = &oi.price[l];
            let pt: Vec<Q> = oi.price[..l].iter().map(|p| p / scale).collect();
            obs.iter()
                .map(|oj| {
                    let diff: Vec<Q> = (0..l).map(|c| &oj.bundle[c] - &oi.bundle[c]).collect();
                    dot(&pt, &diff)
                })
                .collect()
        })
        .collect();
    CycleProblem { weights, multiplicative: false }
}

/// w(i→j) = p_i·x_j with p_i rescaled so that p_i·x_i = 1.
pub fn homothetic_problem(ds: &PriceDataset) -> Result<CycleProblem, PriceError> {
    let obs = ds.observations();
    let mut weights = Vec::with_capacity(obs.len());
    for (i, oi) in obs.iter().enumerate() {
        let spent = dot(&oi.price, &oi.bundle);
        if spent.is_zero() {
            return Err(PriceError::ZeroExpenditure(i));
        }
        weights.push(obs.iter().map(|oj| dot(&oi.price, &oj.bundle) / &spent).collect());
    }
    Ok(CycleProblem { weights, multiplicative: true })
}

/// w(i→j) = (p_i/‖p_i‖₁)·(x_j − x_i).
pub fn translation_problem(ds: &PriceDataset) -> CycleProblem {
    let obs = ds.observations();
    let weights = obs
        .iter()
        .map(|oi| {
            let norm: Q = oi.price.iter().sum();
            let pn: Vec<Q> = oi.price.iter().map(|p| p / &norm).collect();
            obs.iter()
                .map(|oj| {
                    let diff: Vec<Q> = oj.bundle.iter().zip(&oi.bundle).map(|(a, b)| a - b).collect();
                    dot(&pn, &diff)
                })
                .collect()
        })
        .collect();
    CycleProblem { weights, multiplicative: false }
}

pub fn quasilinear_check(ds: &PriceDataset) -> PriceVerdict {
    quasilinear_problem(ds).verdict()
}

pub fn homothetic_check(ds: &PriceDataset) -> Result<PriceVerdict, PriceError> {
    Ok(homothetic_problem(ds)?.verdict())
}

pub fn translation_check(ds: &PriceDataset) -> PriceVerdict {
    translation_problem(ds).verdict()
}

/// Plain rationalizability: a cycle in the revealed preference.
pub fn garp_check(ds: &PriceDataset) -> PriceVerdict {
    let (pair, _) = super::dataset::revealed_pair(ds);
    match crate::closure::find_cycle(&pair) {
        None => PriceVerdict::Pass,
        Some(w) => {
            // bundle ids follow first occurrence, so map each back to that observation
            let obs = ds.observations();
            let mut first: Vec<usize> = Vec::new();
            for (k, o) in obs.iter().enumerate() {
                if !first.iter().any(|&f| obs[f].bundle == o.bundle) {
                    first.push(k);
                }
            }
            PriceVerdict::Fail(w.chain.iter().map(|&b| first[b]).collect())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::dataset::q;
    use super::*;

    #[test]
    fn single_observation_passes() {
        let ds = PriceDataset::from_integers(&[(vec![1, 2], vec![3, 4])]).unwrap();
        assert!(quasilinear_check(&ds).passed());
        assert!(homothetic_check(&ds).unwrap().passed());
        assert!(translation_check(&ds).passed());
        assert!(garp_check(&ds).passed());
    }

    #[test]
    fn quasilinear_two_cycle() {
        // p̃ = 2 then 1; y = 0 then 1: w(0→1) = 2, w(1→0) = -1 → sum 1, pass.
        // swap: p̃ = 1 then 2: w(0→1) = 1, w(1→0) = -2 → sum -1, fail.
        let pass = PriceDataset::from_integers(&[(vec![2, 1], vec![0, 5]), (vec![1, 1], vec![1, 5])]).unwrap();
        assert!(quasilinear_check(&pass).passed());
        let fail = PriceDataset::from_integers(&[(vec![1, 1], vec![0, 5]), (vec![2, 1], vec![1, 5])]).unwrap();
        let PriceVerdict::Fail(c) = quasilinear_check(&fail) else { panic!() };
        assert_eq!(c.len(), 2);
        assert!(quasilinear_problem(&fail).violates(&c));
    }

    #[test]
    fn homothetic_two_cycle() {
        // p1·x2 · p2·x1 after normalisation: (1/2)·(1/2) < 1
        let ds = PriceDataset::from_integers(&[(vec![2, 1], vec![1, 0]), (vec![1, 2], vec![0, 1])]).unwrap();
        let p = homothetic_problem(&ds).unwrap();
        assert_eq!(p.cycle_value(&[0, 1]), q(1, 4));
        assert!(!homothetic_check(&ds).unwrap().passed());
    }

    #[test]
    fn zero_bundle_rejected() {
        let ds = PriceDataset::from_integers(&[(vec![1, 1], vec![0, 0])]).unwrap();
        assert_eq!(homothetic_check(&ds), Err(PriceError::ZeroExpenditure(0)));
    }

    #[test]
    fn identical_bundles_translation_pass() {
        let ds = PriceDataset::from_integers(&[(vec![1, 3], vec![2, 2]), (vec![5, 1], vec![2, 2])]).unwrap();
        assert!(translation_check(&ds).passed());
    }

    #[test]
    fn boundary_zero_sum_passes() {
        // w(0→1) = 1, w(1→0) = -1
        let ds = PriceDataset::from_integers(&[(vec![1, 1], vec![0, 0]), (vec![1, 1], vec![1, 0])]).unwrap();
        assert_eq!(quasilinear_problem(&ds).cycle_value(&[0, 1]), q(0, 1));
        assert!(quasilinear_check(&ds).passed());
    }
}
