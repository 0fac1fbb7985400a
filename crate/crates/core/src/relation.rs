use crate::universe::{Alt, Pair};

/// Dense boolean n×n matrix, rows packed into u64 words.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    pub fn new(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        BitMatrix { n, words, bits: vec![0; n * words] }
    }

    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = Pair>) -> Self {
        let mut m = BitMatrix::new(n);
        for (x, y) in pairs {
            m.set(x, y);
        }
        m
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, x: Alt, y: Alt) -> bool {
        self.bits[x * self.words + y / 64] >> (y % 64) & 1 == 1
    }

    /// Returns true if the bit was newly set.
    #[inline]
    pub fn set(&mut self, x: Alt, y: Alt) -> bool {
        let w = &mut self.bits[x * self.words + y / 64];
        let mask = 1u64 << (y % 64);
        let fresh = *w & mask == 0;
        *w |= mask;
        fresh
    }

    #[inline]
    pub fn clear(&mut self, x: Alt, y: Alt) {
        self.bits[x * self.words + y / 64] &= !(1u64 << (y % 64));
    }

    pub fn row(&self, x: Alt) -> &[u64] {
        &self.bits[x * self.words..(x + 1) * self.words]
    }

    /// row[dst] |= row[src]; returns true on change.
    pub fn or_row(&mut self, dst: Alt, src: Alt) -> bool {
        let mut changed = false;
        for k in 0..self.words {
            let s = self.bits[src * self.words + k];
            let d = &mut self.bits[dst * self.words + k];
            if s & !*d != 0 {
                *d |= s;
                changed = true;
            }
        }
        changed
    }

    pub fn row_iter(&self, x: Alt) -> impl Iterator<Item = Alt> + '_ {
        self.row(x).iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(k * 64 + b)
            })
        })
    }

    pub fn pairs(&self) -> impl Iterator<Item = Pair> + '_ {
        (0..self.n).flat_map(move |x| self.row_iter(x).map(move |y| (x, y)))
    }

    pub fn count(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_subset(&self, other: &BitMatrix) -> bool {
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }

    pub fn union_with(&mut self, other: &BitMatrix) -> bool {
        let mut changed = false;
        for (a, b) in self.bits.iter_mut().zip(&other.bits) {
            if b & !*a != 0 {
                *a |= b;
                changed = true;
            }
        }
        changed
    }

    /// Warshall-style reachability closure (reflexive pairs are kept as given).
    pub fn transitive_closure(&mut self) {
        for k in 0..self.n {
            for i in 0..self.n {
                if i != k && self.get(i, k) {
                    self.or_row(i, k);
                }
            }
        }
    }
}
