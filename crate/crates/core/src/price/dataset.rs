use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::order_pair::OrderPair;
use crate::universe::Universe;

pub type Q = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PriceError {
    #[error("dataset has no observations")]
    Empty,
    #[error("observation {0}: dimension mismatch")]
    DimensionMismatch(usize),
    #[error("observation {0}: prices must be strictly positive")]
    NonPositivePrice(usize),
    #[error("observation {0}: quantities must be non-negative")]
    NegativeQuantity(usize),
    #[error("observation {0}: zero expenditure cannot be normalised")]
    ZeroExpenditure(usize),
    #[error("cannot parse number `{0}`")]
    BadNumber(String),
    #[error("csv: {0}")]
    Csv(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Observation {
    pub price: Vec<Q>,
    pub bundle: Vec<Q>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PriceDataset {
    observations: Vec<Observation>,
    dim: usize,
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn q(n: i64, d: i64) -> Q {
    Q::new(BigInt::from(n), BigInt::from(d))
}

/// Exact parse of `7`, `-3/4` or `1.25`.
pub fn parse_rational(s: &str) -> Result<Q, PriceError> {
    let s = s.trim();
    let bad = || PriceError::BadNumber(s.to_string());
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(Q::new(n, d));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let neg = int.starts_with('-');
        let int_digits = int.trim_start_matches(['-', '+']);
        let digits = format!("{}{}", if int_digits.is_empty() { "0" } else { int_digits }, frac);
        let mut n = BigInt::from_str(&digits).map_err(|_| bad())?;
        if neg {
            n = -n;
        }
        return Ok(Q::new(n, BigInt::from(10).pow(frac.len() as u32)));
    }
    BigInt::from_str(s).map(Q::from_integer).map_err(|_| bad())
}

impl PriceDataset {
    pub fn new(observations: Vec<Observation>) -> Result<Self, PriceError> {
        let dim = observations.first().ok_or(PriceError::Empty)?.price.len();
        for (k, o) in observations.iter().enumerate() {
            if dim == 0 || o.price.len() != dim || o.bundle.len() != dim {
                return Err(PriceError::DimensionMismatch(k));
            }
            if o.price.iter().any(|p| !p.is_positive()) {
                return Err(PriceError::NonPositivePrice(k));
            }
            if o.bundle.iter().any(Signed::is_negative) {
                return Err(PriceError::NegativeQuantity(k));
            }
        }
        Ok(PriceDataset { observations, dim })
    }

    pub fn from_integers(rows: &[(Vec<i64>, Vec<i64>)]) -> Result<Self, PriceError> {
        let conv = |v: &Vec<i64>| v.iter().map(|&a| Q::from_integer(a.into())).collect();
        PriceDataset::new(rows.iter().map(|(p, x)| Observation { price: conv(p), bundle: conv(x) }).collect())
    }

    /// Header row, then L price columns followed by L quantity columns.
    pub fn from_csv(text: &str) -> Result<Self, PriceError> {
        let mut reader = csv::ReaderBuilder::new().has_headers(true).trim(csv::Trim::All).from_reader(text.as_bytes());
        let width = reader.headers().map_err(|e| PriceError::Csv(e.to_string()))?.len();
        if width == 0 || width % 2 != 0 {
            return Err(PriceError::Csv(format!("expected an even number of columns, found {width}")));
        }
        let l = width / 2;
        let mut obs = Vec::new();
        for (k, rec) in reader.records().enumerate() {
            let rec = rec.map_err(|e| PriceError::Csv(e.to_string()))?;
            if rec.len() != width {
                return Err(PriceError::DimensionMismatch(k));
            }
            let vals = rec.iter().map(parse_rational).collect::<Result<Vec<_>, _>>()?;
            obs.push(Observation { price: vals[..l].to_vec(), bundle: vals[l..].to_vec() });
        }
        PriceDataset::new(obs)
    }

    pub fn to_csv(&self) -> String {
        let mut s: Vec<String> = (1..=self.dim).map(|i| format!("p{i}")).collect();
        s.extend((1..=self.dim).map(|i| format!("x{i}")));
        let mut out = s.join(",") + "\n";
        for o in &self.observations {
            let row: Vec<String> = o.price.iter().chain(&o.bundle).map(|v| v.to_string()).collect();
            out += &(row.join(",") + "\n");
        }
        out
    }

    pub fn observations(&self) -> &[Observation] {
        &self.observations
    }

    pub fn len(&self) -> usize {
        self.observations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.observations.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
}

/// Revealed preference over the distinct observed bundles.
pub fn revealed_pair(ds: &PriceDataset) -> (OrderPair, Universe) {
    let mut ids: BTreeMap<&[Q], usize> = BTreeMap::new();
    let mut bundles: Vec<&[Q]> = Vec::new();
    for o in ds.observations() {
        ids.entry(&o.bundle).or_insert_with(|| {
            bundles.push(&o.bundle);
            bundles.len() - 1
        });
    }
    let labels = bundles.iter().map(|b| {
        format!("({})", b.iter().map(ToString::to_string).collect::<Vec<_>>().join(","))
    });
    let universe = Universe::new(labels).expect("distinct bundles give distinct labels");
    let mut pair = OrderPair::empty();
    for x in 0..bundles.len() {
        pair.weak.insert((x, x));
    }
    for o in ds.observations() {
        let k = ids[&o.bundle[..]];
        let spent = dot(&o.price, &o.bundle);
        for (j, b) in bundles.iter().enumerate() {
            let cost = dot(&o.price, b);
            if spent >= cost {
                pair.weak.insert((k, j));
            }
            if spent > cost {
                pair.strict.insert((k, j));
            }
        }
    }
    (pair, universe)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_numbers() {
        assert_eq!(parse_rational("3").unwrap(), q(3, 1));
        assert_eq!(parse_rational("-3/4").unwrap(), q(-3, 4));
        assert_eq!(parse_rational("1.25").unwrap(), q(5, 4));
        assert_eq!(parse_rational("-0.5").unwrap(), q(-1, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1.").is_err());
    }

    #[test]
    fn csv_round_trip() {
        let ds = PriceDataset::from_csv("p1,p2,x1,x2\n1,2,3,1/2\n0.5,1,0,4\n").unwrap();
        assert_eq!(ds.len(), 2);
        assert_eq!(ds.observations()[1].price[0], q(1, 2));
        assert_eq!(PriceDataset::from_csv(&ds.to_csv()).unwrap(), ds);
        assert!(PriceDataset::from_csv("p1,x1,x2\n1,2,3\n").is_err());
        assert!(PriceDataset::from_csv("p1,x1\n0,2\n").is_err());
    }

    #[test]
    fn single_observation() {
        let ds = PriceDataset::from_integers(&[(vec![1, 1], vec![2, 3])]).unwrap();
        let (pair, u) = revealed_pair(&ds);
        assert_eq!(u.len(), 1);
        assert_eq!(pair, OrderPair::new([(0, 0)], []));
    }

    #[test]
    fn two_cycle_violation() {
        // p1·x1 = 2 > p1·x2 = 1 and p2·x2 = 2 > p2·x1 = 1
        let ds = PriceDataset::from_integers(&[(vec![2, 1], vec![1, 0]), (vec![1, 2], vec![0, 1])]).unwrap();
        let (pair, _) = revealed_pair(&ds);
        assert!(pair.strict.contains(&(0, 1)) && pair.strict.contains(&(1, 0)));
        assert!(crate::closure::find_cycle(&pair).is_some());
    }

    #[test]
    fn budget_boundary_is_weak_only() {
        let ds = PriceDataset::from_integers(&[(vec![1, 1], vec![1, 0]), (vec![1, 1], vec![0, 1])]).unwrap();
        let (pair, _) = revealed_pair(&ds);
        assert!(pair.weak.contains(&(0, 1)));
        assert!(!pair.strict.contains(&(0, 1)));
    }
}
