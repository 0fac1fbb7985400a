use std::collections::{HashMap, VecDeque};

use crate::transform::{compose, PartialTransform};

pub const DEFAULT_MONOID_CAP: usize = 10_000;

pub type TransformId = usize;

/// Composition closure of a set of generators, identity at index 0.
#[derive(Debug, Clone)]
pub struct Monoid {
    elements: Vec<PartialTransform>,
    generators: Vec<TransformId>,
    closed: bool,
    cap: usize,
}

impl Monoid {
    pub fn trivial(n: usize) -> Self {
        Monoid {
            elements: vec![PartialTransform::identity(n)],
            generators: Vec::new(),
            closed: true,
            cap: 1,
        }
    }

    /// Breadth-first closure under left multiplication by generators.
    ///
    /// Stops with `closed = false` as soon as one more element would exceed `cap`.
    pub fn generate(generators: &[PartialTransform], n: usize, cap: usize) -> Monoid {
        assert!(cap >= 1, "monoid cap must be positive");
        let mut elements = vec![PartialTransform::identity(n)];
        let mut seen: HashMap<PartialTransform, TransformId> = HashMap::new();
        seen.insert(elements[0].clone(), 0);
        let mut gen_ids = Vec::new();
        let mut closed = true;
        for g in generators {
            assert_eq!(g.universe_len(), n, "generator over a different universe");
            if let Some(&id) = seen.get(g) {
                if !gen_ids.contains(&id) {
                    gen_ids.push(id);
                }
                continue;
            }
            if elements.len() == cap {
                closed = false;
                break;
            }
            seen.insert(g.clone(), elements.len());
            gen_ids.push(elements.len());
            elements.push(g.clone());
        }
        let mut queue: VecDeque<TransformId> = (0..elements.len()).collect();
        'bfs: while closed {
            let Some(e) = queue.pop_front() else { break };
            for &g in &gen_ids {
                let c = compose(&elements[g], &elements[e]);
                if seen.contains_key(&c) {
                    continue;
                }
                if elements.len() == cap {
                    closed = false;
                    break 'bfs;
                }
                seen.insert(c.clone(), elements.len());
                queue.push_back(elements.len());
                elements.push(c);
            }
        }
        Monoid { elements, generators: gen_ids, closed, cap }
    }

    pub fn elements(&self) -> &[PartialTransform] {
        &self.elements
    }

    pub fn get(&self, id: TransformId) -> &PartialTransform {
        &self.elements[id]
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn generator_ids(&self) -> &[TransformId] {
        &self.generators
    }

    pub fn generators(&self) -> impl Iterator<Item = &PartialTransform> {
        self.generators.iter().map(|&g| &self.elements[g])
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn universe_len(&self) -> usize {
        self.elements[0].universe_len()
    }

    pub fn position(&self, t: &PartialTransform) -> Option<TransformId> {
        self.elements.iter().position(|e| e == t)
    }

    /// Elements with a non-empty domain.
    pub fn active(&self) -> impl Iterator<Item = (TransformId, &PartialTransform)> {
        self.elements.iter().enumerate().filter(|(_, e)| !e.is_vacuous())
    }

    pub fn all_total(&self) -> bool {
        self.elements.iter().all(PartialTransform::is_total)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn no_generators() {
        let m = Monoid::generate(&[], 4, 100);
        assert_eq!(m.len(), 1);
        assert!(m.is_closed());
        assert!(m.get(0).is_identity());
    }

    #[test]
    fn dated_reward_shifts() {
        // (a,0),(a,1),(a,2),(b,0),(b,1),(b,2)
        let shift = PartialTransform::from_pairs("+1", 6, [(0, 1), (1, 2), (3, 4), (4, 5)]).unwrap();
        let m = Monoid::generate(&[shift], 6, 100);
        assert!(m.is_closed());
        assert_eq!(m.len(), 4);
        let domains: Vec<usize> = m.elements().iter().map(|e| e.domain_len()).collect();
        assert_eq!(domains, vec![6, 4, 2, 0]);
    }

    #[test]
    fn cap_truncates() {
        let shift = PartialTransform::from_pairs("+1", 6, [(0, 1), (1, 2), (3, 4), (4, 5)]).unwrap();
        let m = Monoid::generate(&[shift], 6, 3);
        assert!(!m.is_closed());
        assert_eq!(m.len(), 3);
    }

    fn grid_translation(name: &str, dx: i32, dy: i32) -> PartialTransform {
        PartialTransform::from_fn(name, 9, |p| {
            let (x, y) = ((p % 3) as i32 + dx, (p / 3) as i32 + dy);
            ((0..3).contains(&x) && (0..3).contains(&y)).then(|| (y * 3 + x) as usize)
        })
    }

    // Independent closure: all words up to a length where no new maps appear.
    fn brute_closure(gens: &[PartialTransform], n: usize) -> HashSet<Vec<Option<usize>>> {
        let as_vec = |t: &PartialTransform| (0..n).map(|x| t.apply(x)).collect::<Vec<_>>();
        let mut all: HashSet<Vec<Option<usize>>> = HashSet::new();
        all.insert((0..n).map(Some).collect());
        loop {
            let mut next = all.clone();
            for f in &all {
                for g in gens {
                    let gv = as_vec(g);
                    next.insert(f.iter().map(|y| y.and_then(|y| gv[y])).collect());
                    next.insert(gv.iter().map(|y| y.and_then(|y| f[y])).collect());
                }
            }
            if next.len() == all.len() {
                return all;
            }
            all = next;
        }
    }

    #[test]
    fn grid_translations_match_brute_force() {
        let gens = [grid_translation("r", 1, 0), grid_translation("u", 0, 1)];
        let m = Monoid::generate(&gens, 9, 1000);
        assert!(m.is_closed());
        let oracle = brute_closure(&gens, 9);
        assert_eq!(m.len(), oracle.len());
        // shifts by (i,j) with i,j in 0..=2 give 9 distinct non-empty maps, plus the empty one
        assert_eq!(m.len(), 10);
    }
}
