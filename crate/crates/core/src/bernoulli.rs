//! Bernoulli numbers of the first (`B_1 = -1/2`) and second (`B_1 = +1/2`) kind.
//!
//! Values come from the triangular system `sum_{j<=n} C(n,j) B_j / (n-j+1) = [n == 0]`,
//! i.e. the componentwise form of `B . H = id` where `H = (e^z - 1)/z`.
//! A process-wide table caches every value computed so far.

use std::fs;
use std::io::Write;
use std::path::Path;
use std::sync::{LazyLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exact::{binomial, format_rational, parse_rational, ratio, BigRational};

/// Grow-only table; index `k` holds the first-kind `B_k`.
#[derive(Debug)]
pub struct BernoulliTable {
    values: RwLock<Vec<BigRational>>,
}

impl Default for BernoulliTable {
    fn default() -> Self {
        Self::new()
    }
}

impl BernoulliTable {
    pub fn new() -> Self {
        BernoulliTable {
            values: RwLock::new(vec![BigRational::one()]),
        }
    }

    pub fn len(&self) -> usize {
        self.values.read().expect("bernoulli table poisoned").len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn get(&self, k: usize) -> BigRational {
        {
            let values = self.values.read().expect("bernoulli table poisoned");
            if let Some(v) = values.get(k) {
                return v.clone();
            }
        }
        let mut values = self.values.write().expect("bernoulli table poisoned");
        while values.len() <= k {
            let next = next_entry(&values);
            values.push(next);
        }
        values[k].clone()
    }

    /// First `n` entries, computing as needed.
    pub fn prefix(&self, n: usize) -> Vec<BigRational> {
        if n == 0 {
            return Vec::new();
        }
        self.get(n - 1);
        self.values.read().expect("bernoulli table poisoned")[..n].to_vec()
    }

    /// Appends entries loaded from disk. Entries already present must agree.
    fn absorb(&self, loaded: Vec<BigRational>) -> Result<()> {
        let mut values = self.values.write().expect("bernoulli table poisoned");
        for (k, v) in loaded.into_iter().enumerate() {
            match values.get(k) {
                Some(have) if *have != v => {
                    return Err(Error::Cache(format!("entry {k} disagrees with computed value")))
                }
                Some(_) => {}
                None => values.push(v),
            }
        }
        Ok(())
    }

    /// Reads a cache file of lines `"k num/den"`. The last entry is re-derived
    /// from the ones before it and must match.
    pub fn load_cache(&self, path: &Path) -> Result<usize> {
        let text = fs::read_to_string(path)?;
        let mut loaded = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once(char::is_whitespace)
                .ok_or_else(|| Error::Cache(format!("line {}: expected \"k num/den\"", lineno + 1)))?;
            let k: usize = k
                .parse()
                .map_err(|_| Error::Cache(format!("line {}: bad index {k:?}", lineno + 1)))?;
            if k != loaded.len() {
                return Err(Error::Cache(format!(
                    "line {}: expected index {}, found {k}",
                    lineno + 1,
                    loaded.len()
                )));
            }
            loaded.push(parse_rational(v)?);
        }
        if loaded.is_empty() {
            return Ok(0);
        }
        let last = loaded.len() - 1;
        if next_entry(&loaded[..last]) != loaded[last] {
            return Err(Error::Cache(format!("entry {last} fails re-derivation")));
        }
        let n = loaded.len();
        self.absorb(loaded)?;
        Ok(n)
    }

    /// Appends to the cache file every entry it does not hold yet.
    pub fn save_cache(&self, path: &Path) -> Result<()> {
        let existing = match fs::read_to_string(path) {
            Ok(text) => text.lines().filter(|l| !l.trim().is_empty()).count(),
            Err(e) if e.kind() == std::io::ErrorKind::NotFound => 0,
            Err(e) => return Err(e.into()),
        };
        let values = self.values.read().expect("bernoulli table poisoned");
        let mut file = fs::OpenOptions::new().create(true).append(true).open(path)?;
        for (k, v) in values.iter().enumerate().skip(existing) {
            writeln!(file, "{k} {}", format_rational(v))?;
        }
        Ok(())
    }
}

/// Solves row `n = prev.len()` of the triangular system for `B_n`.
fn next_entry(prev: &[BigRational]) -> BigRational {
    let n = prev.len() as i64;
    if n == 0 {
        return BigRational::one();
    }
    let mut acc = BigRational::zero();
    for (j, b) in prev.iter().enumerate() {
        if b.is_zero() {
            continue;
        }
        let j = j as i64;
        acc += b * BigRational::new(binomial(n, j), BigInt::from(n - j + 1));
    }
    // the diagonal coefficient C(n,n)/1 is 1
    -acc
}

static TABLE: LazyLock<BernoulliTable> = LazyLock::new(BernoulliTable::new);

pub fn table() -> &'static BernoulliTable {
    &TABLE
}

/// First-kind Bernoulli number.
pub fn bernoulli(k: usize) -> BigRational {
    TABLE.get(k)
}

/// Second-kind Bernoulli number `B+_k`.
pub fn bernoulli_second(k: usize) -> BigRational {
    if k == 1 {
        ratio(1, 2)
    } else {
        bernoulli(k)
    }
}

/// `beta+_k = B+_k / k`.
pub fn beta_plus(k: usize) -> Result<BigRational> {
    if k == 0 {
        return Err(Error::Domain("beta+_0 divides by zero".into()));
    }
    Ok(bernoulli_second(k) / BigRational::from_integer(BigInt::from(k)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    /// Akiyama–Tanigawa; yields the second-kind values.
    fn akiyama_tanigawa(n: usize) -> Vec<BigRational> {
        let mut out = Vec::with_capacity(n + 1);
        let mut a: Vec<BigRational> = Vec::new();
        for m in 0..=n {
            a.push(ratio(1, m as i64 + 1));
            for j in (1..=m).rev() {
                a[j - 1] = rat(j as i64) * (&a[j - 1] - &a[j]);
            }
            out.push(a[0].clone());
        }
        out
    }

    #[test]
    fn known_values() {
        assert_eq!(bernoulli(0), rat(1));
        assert_eq!(bernoulli(1), ratio(-1, 2));
        assert_eq!(bernoulli(12), ratio(-691, 2730));
        assert_eq!(bernoulli_second(1), ratio(1, 2));
        assert_eq!(bernoulli_second(2), ratio(1, 6));
        assert_eq!(bernoulli_second(7), rat(0));
        assert_eq!(beta_plus(1).unwrap(), ratio(1, 2));
        assert_eq!(beta_plus(2).unwrap(), ratio(1, 12));
        assert_eq!(beta_plus(3).unwrap(), rat(0));
        assert!(beta_plus(0).is_err());
    }

    #[test]
    fn matches_akiyama_tanigawa() {
        let at = akiyama_tanigawa(60);
        for (k, v) in at.iter().enumerate() {
            assert_eq!(&bernoulli_second(k), v, "B+_{k}");
        }
    }

    #[test]
    fn odd_values_vanish_and_even_alternate() {
        for k in 1..=15 {
            assert_eq!(bernoulli(2 * k + 1), rat(0));
        }
        for k in 1..=14 {
            assert!(bernoulli(2 * k) * bernoulli(2 * k + 2) < rat(0));
        }
    }

    #[test]
    fn defining_recurrence_holds() {
        for n in 0..=50i64 {
            let s = (0..=n).fold(BigRational::zero(), |acc, j| {
                acc + bernoulli(j as usize) * BigRational::new(binomial(n, j), BigInt::from(n - j + 1))
            });
            assert_eq!(s, if n == 0 { rat(1) } else { rat(0) });
        }
    }

    #[test]
    fn second_kind_is_sign_flip() {
        for k in 0..=50usize {
            let flipped = if k % 2 == 0 { bernoulli(k) } else { -bernoulli(k) };
            assert_eq!(bernoulli_second(k), flipped);
            // (-1)^k B_k = sum_j C(k,j) B_j
            let s = (0..=k).fold(BigRational::zero(), |acc, j| {
                acc + BigRational::from_integer(binomial(k as i64, j as i64)) * bernoulli(j)
            });
            assert_eq!(s, flipped);
        }
    }

    #[test]
    fn cache_roundtrip_and_validation() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bern.txt");
        let t = BernoulliTable::new();
        t.get(30);
        t.save_cache(&path).unwrap();
        t.get(40);
        t.save_cache(&path).unwrap();
        let text = fs::read_to_string(&path).unwrap();
        assert_eq!(text.lines().count(), 41);
        assert!(text.contains("12 -691/2730"));

        let fresh = BernoulliTable::new();
        assert_eq!(fresh.load_cache(&path).unwrap(), 41);
        assert_eq!(fresh.len(), 41);
        for k in 0..=40 {
            assert_eq!(fresh.get(k), bernoulli(k));
        }

        let corrupt = dir.path().join("bad.txt");
        fs::write(&corrupt, "0 1\n1 -1/2\n2 1/7\n").unwrap();
        assert!(BernoulliTable::new().load_cache(&corrupt).is_err());
        fs::write(&corrupt, "0 1\n2 1/6\n").unwrap();
        assert!(BernoulliTable::new().load_cache(&corrupt).is_err());
    }

    #[test]
    fn concurrent_extension_is_consistent() {
        let t = BernoulliTable::new();
        std::thread::scope(|s| {
            for i in 0..8 {
                let t = &t;
                s.spawn(move || {
                    for k in (0..60).rev().skip(i) {
                        t.get(k);
                    }
                });
            }
        });
        for k in 0..60 {
            assert_eq!(t.get(k), bernoulli(k));
        }
    }
}
