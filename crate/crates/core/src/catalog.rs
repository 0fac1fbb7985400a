//! The worked examples, built as instances.

use crate::instance::Instance;
use crate::order_pair::OrderPair;
use crate::transform::PartialTransform;
use crate::universe::Universe;

fn build(labels: Vec<String>, gens: Vec<(String, Vec<(usize, usize)>)>, strict: Vec<(usize, usize)>) -> Instance {
    let universe = Universe::new(labels).expect("catalog labels are distinct");
    let n = universe.len();
    let gens = gens
        .into_iter()
        .map(|(name, pairs)| PartialTransform::from_pairs(name, n, pairs).expect("catalog maps are functions"))
        .collect();
    Instance::new(universe, gens, &OrderPair::new(strict.clone(), strict)).expect("catalog data is valid")
}

fn by_label(labels: &[String]) -> impl Fn(&str) -> usize + '_ {
    move |s| labels.iter().position(|l| l == s).unwrap_or_else(|| panic!("no label {s}"))
}

/// Streams `x`, `y` and their one-prize extensions; ω_z prepends z to `x`, `y`.
pub fn stationarity() -> Instance {
    let mut labels: Vec<String> = vec!["x".into(), "y".into()];
    for base in ["x", "y"] {
        for z in ["a", "b", "c", "d"] {
            labels.push(format!("{z}{base}"));
        }
    }
    let id = by_label(&labels);
    let gens = ["a", "b", "c", "d"]
        .iter()
        .map(|z| (z.to_string(), vec![(id("x"), id(&format!("{z}x"))), (id("y"), id(&format!("{z}y")))]))
        .collect();
    let strict = vec![(id("ax"), id("by")), (id("bx"), id("ay")), (id("cy"), id("dx")), (id("dy"), id("cx"))];
    build(labels.clone(), gens, strict)
}

/// Dated rewards (z, t) with t ∈ {0,1,2}; the shift delays by one period.
pub fn dated_rewards() -> Instance {
    let labels: Vec<String> = ["a", "b"].iter().flat_map(|z| (0..3).map(move |t| format!("({z},{t})"))).collect();
    let id = by_label(&labels);
    let shift = ["a", "b"]
        .iter()
        .flat_map(|z| (0..2).map(move |t| (format!("({z},{t})"), format!("({z},{})", t + 1))))
        .map(|(s, t)| (id(&s), id(&t)))
        .collect();
    let strict = vec![(id("(a,1)"), id("(b,2)")), (id("(a,2)"), id("(b,1)"))];
    build(labels.clone(), vec![("shift".into(), shift)], strict)
}

const PRIZES: [&str; 4] = ["a", "b", "c", "d"];

fn abstract_data(id: &dyn Fn(&str) -> usize, w: &dyn Fn(&str, &str) -> String) -> Vec<(usize, usize)> {
    vec![
        (id(&w("b", "x")), id(&w("a", "y"))),
        (id(&w("a", "x")), id(&w("b", "y"))),
        (id(&w("d", "y")), id(&w("c", "x"))),
        (id(&w("c", "y")), id(&w("d", "x"))),
    ]
}

/// Four prepend maps on words of length ≤ 2 over x and y.
pub fn abstract_noncommuting() -> Instance {
    let mut labels = Vec::new();
    for base in ["x", "y"] {
        labels.push(base.to_string());
        for p in PRIZES {
            labels.push(format!("{p}{base}"));
        }
        for p in PRIZES {
            for q in PRIZES {
                labels.push(format!("{p}{q}{base}"));
            }
        }
    }
    let id = by_label(&labels);
    let gens = PRIZES
        .iter()
        .map(|p| {
            let pairs = labels.iter().filter(|l| l.len() <= 2).map(|l| (id(l), id(&format!("{p}{l}")))).collect();
            (format!("w{p}"), pairs)
        })
        .collect();
    let strict = abstract_data(&id, &|p, b| format!("{p}{b}"));
    build(labels.clone(), gens, strict)
}

fn multiset_label(base: &str, ms: &[usize; 4]) -> String {
    let word: String = PRIZES.iter().zip(ms).flat_map(|(p, &k)| std::iter::repeat_n(*p, k)).collect();
    format!("{base}[{word}]")
}

/// The same data with ω_a … ω_d commuting: an alternative is a base point and
/// the multiset of prizes applied, of total degree ≤ 2.
pub fn abstract_commuting() -> Instance {
    let mut states = Vec::new();
    for base in ["x", "y"] {
        for a in 0..=2 {
            for b in 0..=2 - a {
                for c in 0..=2 - a - b {
                    for d in 0..=2 - a - b - c {
                        states.push((base, [a, b, c, d]));
                    }
                }
            }
        }
    }
    let labels: Vec<String> = states.iter().map(|(b, ms)| multiset_label(b, ms)).collect();
    let id = by_label(&labels);
    let gens = (0..4)
        .map(|i| {
            let pairs = states
                .iter()
                .filter(|(_, ms)| ms.iter().sum::<usize>() < 2)
                .map(|(b, ms)| {
                    let mut next = *ms;
                    next[i] += 1;
                    (id(&multiset_label(b, ms)), id(&multiset_label(b, &next)))
                })
                .collect();
            (format!("w{}", PRIZES[i]), pairs)
        })
        .collect();
    let single = |p: &str, b: &str| {
        let mut ms = [0; 4];
        ms[PRIZES.iter().position(|q| *q == p).unwrap()] = 1;
        multiset_label(b, &ms)
    };
    let strict = abstract_data(&id, &single);
    build(labels.clone(), gens, strict)
}

/// Label of ω_i∘ω_j(base) in the commuting reformulation.
pub fn commuting_label(base: &str, i: char, j: char) -> String {
    let mut ms = [0; 4];
    for p in [i, j] {
        ms[(p as u8 - b'a') as usize] += 1;
    }
    multiset_label(base, &ms)
}

pub const KRAFT_LOW: i64 = -2;
pub const KRAFT_HIGH: i64 = 3;

pub fn kraft_label(v: &[i64; 5]) -> String {
    format!("({})", v.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(","))
}

pub fn indicator(states: &[usize]) -> [i64; 5] {
    let mut v = [0; 5];
    for &s in states {
        v[s - 1] = 1;
    }
    v
}

/// Integer points of {−2..3}^5 with three partial translations, and the four
/// relations of the counterexample written as strict preferences.
pub fn kraft() -> Instance {
    let side = (KRAFT_HIGH - KRAFT_LOW + 1) as usize;
    let points: Vec<[i64; 5]> = (0..side.pow(5))
        .map(|mut k| {
            let mut v = [0; 5];
            for c in v.iter_mut().rev() {
                *c = KRAFT_LOW + (k % side) as i64;
                k /= side;
            }
            v
        })
        .collect();
    let index = |v: &[i64; 5]| -> Option<usize> {
        v.iter().try_fold(0usize, |acc, &c| (KRAFT_LOW..=KRAFT_HIGH).contains(&c).then(|| acc * side + (c - KRAFT_LOW) as usize))
    };
    let labels: Vec<String> = points.iter().map(kraft_label).collect();
    let shifts: [(&str, [i64; 5]); 3] =
        [("e5", [0, 0, 0, 0, 1]), ("g25", [1, -1, 0, 0, 1]), ("g24", [1, -1, 0, 1, 0])];
    let gens = shifts
        .iter()
        .map(|(name, g)| {
            let pairs = points
                .iter()
                .enumerate()
                .filter_map(|(i, p)| {
                    let q: [i64; 5] = std::array::from_fn(|c| p[c] + g[c]);
                    index(&q).map(|j| (i, j))
                })
                .collect();
            (name.to_string(), pairs)
        })
        .collect();
    let rel = |lo: &[usize], hi: &[usize]| (index(&indicator(hi)).unwrap(), index(&indicator(lo)).unwrap());
    let strict = vec![rel(&[1, 4], &[2, 3, 5]), rel(&[2, 3], &[1, 5]), rel(&[2, 5], &[3, 4]), rel(&[3, 5], &[2])];
    build(labels.clone(), gens, strict)
}

pub fn kraft_index(v: &[i64; 5]) -> usize {
    let side = (KRAFT_HIGH - KRAFT_LOW + 1) as usize;
    v.iter().fold(0, |acc, &c| acc * side + (c - KRAFT_LOW) as usize)
}

const COLOURS: [char; 3] = ['r', 'y', 'b'];

pub fn event_label(mask: usize) -> String {
    let inner: Vec<String> = (0..3).filter(|i| mask >> i & 1 == 1).map(|i| COLOURS[i].to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

/// Events over an urn of red, yellow and black; ω_A adds A to events disjoint from it.
pub fn ellsberg() -> Instance {
    let labels: Vec<String> = (0..8).map(event_label).collect();
    let gens = (1..8)
        .map(|a| {
            let pairs = (0..8usize).filter(|b| b & a == 0).map(|b| (b, b | a)).collect();
            (format!("add{}", event_label(a)), pairs)
        })
        .collect();
    let (r, y, b) = (1, 2, 4);
    let strict = vec![(r, b), (y | b, r | y)];
    build(labels.clone(), gens, strict)
}
