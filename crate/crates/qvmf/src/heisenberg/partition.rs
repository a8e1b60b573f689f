use std::fmt;
use std::str::FromStr;
use std::sync::{LazyLock, RwLock};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Weakly decreasing positive parts; the basis state `h(−n₁)…h(−n_k)𝟙`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn vacuum() -> Self {
        Self(Vec::new())
    }

    /// Sorts the parts; zero parts are rejected.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.contains(&0) {
            return Err(Error::InvalidArgument("partition parts must be positive".into()));
        }
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Ok(Self(parts))
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_vacuum(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn largest(&self) -> Option<u32> {
        self.0.first().copied()
    }

    pub fn multiplicity(&self, n: u32) -> usize {
        self.0.iter().filter(|&&p| p == n).count()
    }

    pub fn with_part(&self, n: u32) -> Self {
        let mut v = self.0.clone();
        let at = v.iter().position(|&p| p < n).unwrap_or(v.len());
        v.insert(at, n);
        Self(v)
    }

    /// Removes one copy of `n`, if present.
    pub fn without_part(&self, n: u32) -> Option<Self> {
        let at = self.0.iter().position(|&p| p == n)?;
        let mut v = self.0.clone();
        v.remove(at);
        Some(Self(v))
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;
    fn try_from(v: Vec<u32>) -> Result<Self> {
        Partition::new(v)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let mut i = 0;
        while i < self.0.len() {
            let n = self.0[i];
            let run = self.0[i..].iter().take_while(|&&p| p == n).count();
            write!(f, "h(-{n})")?;
            if run > 1 {
                write!(f, "^{run}")?;
            }
            i += run;
        }
        Ok(())
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Accepts `1` for the vacuum and products like `h(-3)h(-1)^2`, optionally with `*`.
    fn from_str(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace() && *c != '*').collect();
        if t == "1" || t.is_empty() {
            return Ok(Self::vacuum());
        }
        let bad = || Error::Parse(format!("bad Fock state {s:?}"));
        let mut parts = Vec::new();
        let mut rest = t.as_str();
        while !rest.is_empty() {
            rest = rest.strip_prefix("h(-").ok_or_else(bad)?;
            let close = rest.find(')').ok_or_else(bad)?;
            let n: u32 = rest[..close].parse().map_err(|_| bad())?;
            rest = &rest[close + 1..];
            let mut times = 1usize;
            if let Some(r) = rest.strip_prefix('^') {
                let end = r.find(|c: char| !c.is_ascii_digit()).unwrap_or(r.len());
                times = r[..end].parse().map_err(|_| bad())?;
                rest = &r[end..];
            }
            parts.extend(std::iter::repeat_n(n, times));
        }
        Partition::new(parts)
    }
}

fn gen_partitions(n: u32, max: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
    if n == 0 {
        out.push(Partition(prefix.clone()));
        return;
    }
    for p in (1..=max.min(n)).rev() {
        prefix.push(p);
        gen_partitions(n - p, p, prefix, out);
        prefix.pop();
    }
}

/// Partitions of `n` in increasing order.
pub fn partitions(n: u32) -> Vec<Partition> {
    let mut out = Vec::new();
    gen_partitions(n, n, &mut Vec::new(), &mut out);
    out.sort();
    out
}

static PARTITION_COUNTS: LazyLock<RwLock<Vec<u128>>> = LazyLock::new(|| RwLock::new(vec![1]));

/// `p(n)` via the pentagonal number recurrence.
pub fn partition_count(n: usize) -> u128 {
    if let Some(&p) = PARTITION_COUNTS.read().unwrap().get(n) {
        return p;
    }
    let mut t = PARTITION_COUNTS.write().unwrap();
    while t.len() <= n {
        let m = t.len() as i64;
        let mut acc: i128 = 0;
        for k in 1.. {
            let g1 = k * (3 * k - 1) / 2;
            if g1 > m {
                break;
            }
            let sign = if k % 2 == 1 { 1 } else { -1 };
            acc += sign * t[(m - g1) as usize] as i128;
            let g2 = k * (3 * k + 1) / 2;
            if g2 <= m {
                acc += sign * t[(m - g2) as usize] as i128;
            }
        }
        t.push(acc as u128);
    }
    t[n]
}
