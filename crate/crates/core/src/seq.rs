//! Finite-support count sequences indexed by `k >= 3`.
//!
//! A [`CountSequence`] is the common currency for p-vectors (faces by size),
//! v-vectors (vertices by valence) and the increments `q`, `w` of a
//! realization. Sequences are kept in canonical form: no index below 3 and no
//! zero entries, so derived `Eq` is semantic equality.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeqError {
    #[error("index {0} is below 3")]
    BadIndex(u32),
    #[error("cannot parse count sequence entry `{0}` (expected `k:count`)")]
    Syntax(String),
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CountSequence(BTreeMap<u32, u64>);

impl CountSequence {
    pub fn new() -> Self {
        Self::default()
    }

    /// The unit sequence `[k]`.
    pub fn unit(k: u32) -> Result<Self, SeqError> {
        Self::bracket(&[(1, k)])
    }

    /// `[a_1 x k_1, a_2 x k_2, ...]`: the sum of `a_i [k_i]`. Parts are `(count, k)`.
    pub fn bracket(parts: &[(u64, u32)]) -> Result<Self, SeqError> {
        let mut out = Self::new();
        for &(count, k) in parts {
            out.try_add_count(k, count)?;
        }
        Ok(out)
    }

    pub fn try_add_count(&mut self, k: u32, count: u64) -> Result<(), SeqError> {
        if k < 3 {
            return Err(SeqError::BadIndex(k));
        }
        if count > 0 {
            *self.0.entry(k).or_insert(0) += count;
        }
        Ok(())
    }

    pub fn get(&self, k: u32) -> u64 {
        self.0.get(&k).copied().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, u64)> + '_ {
        self.0.iter().map(|(&k, &c)| (k, c))
    }

    pub fn support(&self) -> impl Iterator<Item = u32> + '_ {
        self.0.keys().copied()
    }

    /// `sum_k a_k`.
    pub fn total(&self) -> u64 {
        self.0.values().sum()
    }

    /// `sum_k k * a_k`.
    pub fn weighted_sum(&self) -> u64 {
        self.iter().map(|(k, c)| k as u64 * c).sum()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in other.iter() {
            *out.0.entry(k).or_insert(0) += c;
        }
        out
    }

    pub fn scale(&self, c: u64) -> Self {
        if c == 0 {
            return Self::new();
        }
        Self(self.0.iter().map(|(&k, &v)| (k, v * c)).collect())
    }

    /// `self - other`, or `None` if some entry would become negative.
    pub fn checked_sub(&self, other: &Self) -> Option<Self> {
        let mut out = self.0.clone();
        for (k, c) in other.iter() {
            let cur = out.get(&k).copied().unwrap_or(0);
            let rest = cur.checked_sub(c)?;
            if rest == 0 {
                out.remove(&k);
            } else {
                out.insert(k, rest);
            }
        }
        Some(Self(out))
    }

    /// Drops the entry at `k`.
    pub fn without(&self, k: u32) -> Self {
        let mut out = self.clone();
        out.0.remove(&k);
        out
    }

    /// The factor `c` with `self = c * other`, checked over the union of both
    /// supports. `None` when no such factor exists or `other` is empty.
    pub fn proportional(&self, other: &Self) -> Option<Ratio<u64>> {
        if other.is_empty() {
            return None;
        }
        if self.0.keys().any(|k| !other.0.contains_key(k)) {
            return None;
        }
        let mut factor: Option<Ratio<u64>> = None;
        for (k, b) in other.iter() {
            let r = Ratio::new(self.get(k), b);
            match factor {
                None => factor = Some(r),
                Some(f) if f != r => return None,
                Some(_) => {}
            }
        }
        factor
    }

    /// Integer variant of [`proportional`](Self::proportional).
    pub fn integer_multiple_of(&self, other: &Self) -> Option<u64> {
        self.proportional(other)
            .filter(|r| r.is_integer())
            .map(|r| r.to_integer())
    }
}

impl fmt::Display for CountSequence {
    /// Canonical `k:count` list, ascending `k`, comma separated. Empty prints as `-`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("-");
        }
        let mut first = true;
        for (k, c) in self.iter() {
            if !first {
                f.write_str(",")?;
            }
            first = false;
            write!(f, "{k}:{c}")?;
        }
        Ok(())
    }
}

impl FromStr for CountSequence {
    type Err = SeqError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let mut out = Self::new();
        if s.is_empty() || s == "-" {
            return Ok(out);
        }
        for part in s.split(',') {
            let part = part.trim();
            let (k, c) = part
                .split_once(':')
                .ok_or_else(|| SeqError::Syntax(part.to_string()))?;
            let k: u32 = k.trim().parse().map_err(|_| SeqError::Syntax(part.to_string()))?;
            let c: u64 = c.trim().parse().map_err(|_| SeqError::Syntax(part.to_string()))?;
            out.try_add_count(k, c)?;
        }
        Ok(out)
    }
}

impl FromIterator<(u32, u64)> for CountSequence {
    /// Collects `(k, count)` pairs, summing duplicates.
    ///
    /// # Panics
    /// If some `k < 3`.
    fn from_iter<I: IntoIterator<Item = (u32, u64)>>(iter: I) -> Self {
        let mut out = Self::new();
        for (k, c) in iter {
            out.try_add_count(k, c).expect("count sequence index below 3");
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn seq(s: &str) -> CountSequence {
        s.parse().unwrap()
    }

    #[test]
    fn bracket_for_three_five_family() {
        let k = 1u32;
        let q = CountSequence::bracket(&[(3 * k as u64 + 1, 3), (1, 3 * k + 5)]).unwrap();
        assert_eq!(q, seq("3:4,8:1"));
    }

    #[test]
    fn bracket_rejects_small_index() {
        assert_eq!(CountSequence::bracket(&[(1, 2)]), Err(SeqError::BadIndex(2)));
        assert_eq!("2:1".parse::<CountSequence>(), Err(SeqError::BadIndex(2)));
    }

    #[test]
    fn add_and_scale() {
        assert_eq!(seq("3:4").add(&seq("3:1,5:1")), seq("3:5,5:1"));
        assert_eq!(seq("3:1,5:2").scale(3), seq("3:3,5:6"));
        assert!(seq("3:1").scale(0).is_empty());
    }

    #[test]
    fn zero_counts_are_not_stored() {
        let s = CountSequence::bracket(&[(0, 4), (2, 3)]).unwrap();
        assert_eq!(s.support().collect::<Vec<_>>(), vec![3]);
        assert_eq!(s.to_string(), "3:2");
    }

    #[test]
    fn proportional_factor() {
        let a = seq("3:128,5:128");
        let b = seq("3:1,5:1");
        assert_eq!(a.proportional(&b), Some(Ratio::from_integer(128)));
        assert_eq!(a.integer_multiple_of(&b), Some(128));
        assert_eq!(seq("3:1,5:2").proportional(&b), None);
        assert_eq!(seq("3:1,4:1").proportional(&b), None);
        assert_eq!(seq("3:1").proportional(&seq("3:2")), Some(Ratio::new(1, 2)));
        assert_eq!(seq("3:1").integer_multiple_of(&seq("3:2")), None);
        assert_eq!(CountSequence::new().proportional(&b), Some(Ratio::from_integer(0)));
        assert_eq!(b.proportional(&CountSequence::new()), None);
    }

    #[test]
    fn checked_sub() {
        assert_eq!(seq("3:5,5:1").checked_sub(&seq("3:5")), Some(seq("5:1")));
        assert_eq!(seq("3:1").checked_sub(&seq("3:2")), None);
    }

    #[test]
    fn display_parse() {
        let s = seq(" 5:2, 3:4 ");
        assert_eq!(s.to_string(), "3:4,5:2");
        assert_eq!(CountSequence::new().to_string(), "-");
        assert!("3-4".parse::<CountSequence>().is_err());
    }
}
