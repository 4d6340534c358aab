//! Permutations in one-line notation, their statistics, and the pattern
//! families `A:k`, `B:k`, `Am:k:m` and `mono:l`.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};

/// A permutation of `{1, ..., n}` in one-line notation. The empty
/// permutation (n = 0) is allowed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    entries: Vec<u32>,
}

impl Permutation {
    /// Validates that `entries` is a rearrangement of `1..=n`.
    pub fn new(entries: Vec<u32>) -> Result<Self> {
        let n = entries.len();
        let mut seen = vec![false; n];
        for &v in &entries {
            if v == 0 || v as usize > n {
                return Err(Error::InvalidPermutation(format!(
                    "entry {v} out of range 1..={n}"
                )));
            }
            if seen[v as usize - 1] {
                return Err(Error::InvalidPermutation(format!("duplicate entry {v}")));
            }
            seen[v as usize - 1] = true;
        }
        Ok(Permutation { entries })
    }

    pub fn empty() -> Self {
        Permutation { entries: Vec::new() }
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            entries: (1..=n as u32).collect(),
        }
    }

    pub fn decreasing(n: usize) -> Self {
        Permutation {
            entries: (1..=n as u32).rev().collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    /// Parses the text format: comma-separated values are always accepted;
    /// a bare digit string like `3752416` only for n <= 9.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(Permutation::empty());
        }
        if s.contains(',') {
            let mut entries = Vec::new();
            for piece in s.split(',') {
                let v: i64 = piece.trim().parse().map_err(|_| {
                    Error::InvalidPermutation(format!("cannot parse entry {piece:?}"))
                })?;
                if v <= 0 || v > u32::MAX as i64 {
                    return Err(Error::InvalidPermutation(format!("entry {v} not positive")));
                }
                entries.push(v as u32);
            }
            return Permutation::new(entries);
        }
        if s.chars().all(|c| c.is_ascii_digit()) {
            if s.len() > 9 {
                return Err(Error::InvalidPermutation(format!(
                    "bare digit string {s:?} only allowed for n <= 9; use commas"
                )));
            }
            let entries: Vec<u32> = s.chars().map(|c| c.to_digit(10).unwrap()).collect();
            return Permutation::new(entries);
        }
        Err(Error::InvalidPermutation(format!(
            "cannot parse permutation {s:?}"
        )))
    }

    /// Rank of each entry: the length of the longest increasing subsequence
    /// ending at that entry. O(n^2) dynamic program.
    pub fn rank_vector(&self) -> Vec<usize> {
        rank_profile(&self.entries)
    }

    /// Co-rank of each entry: the length of the longest increasing
    /// subsequence starting at that entry.
    pub fn corank_vector(&self) -> Vec<usize> {
        corank_profile(&self.entries)
    }

    /// Right-to-left maxima as 1-indexed `(position, value)` pairs, in
    /// position order.
    pub fn right_to_left_maxima(&self) -> Vec<(usize, u32)> {
        let mut out = Vec::new();
        let mut best = 0u32;
        for i in (0..self.entries.len()).rev() {
            if self.entries[i] > best {
                best = self.entries[i];
                out.push((i + 1, self.entries[i]));
            }
        }
        out.reverse();
        out
    }

    /// 1-indexed position of the rightmost descent, absent for increasing
    /// (or empty) permutations.
    pub fn rightmost_descent(&self) -> Option<usize> {
        (1..self.entries.len())
            .rev()
            .find(|&i| self.entries[i - 1] > self.entries[i])
    }

    /// Direct sum: a copy of `self` on `{1..l}` followed by `other` shifted
    /// up by `l`.
    pub fn direct_sum(&self, other: &Permutation) -> Permutation {
        let shift = self.entries.len() as u32;
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().map(|&v| v + shift));
        Permutation { entries }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for v in &self.entries {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
            first = false;
        }
        Ok(())
    }
}

/// The unique permutation order-isomorphic to a sequence of distinct
/// integers.
pub fn reduce_values(values: &[i64]) -> Result<Permutation> {
    let distinct: BTreeSet<i64> = values.iter().copied().collect();
    if distinct.len() != values.len() {
        return Err(Error::InvalidPermutation(
            "values must be distinct".to_string(),
        ));
    }
    let mut sorted: Vec<i64> = values.to_vec();
    sorted.sort_unstable();
    let entries = values
        .iter()
        .map(|v| sorted.binary_search(v).unwrap() as u32 + 1)
        .collect();
    Ok(Permutation { entries })
}

/// `reduce_values` for internal words of distinct `u32` values.
pub fn reduce_word(word: &[u32]) -> Vec<u32> {
    let mut sorted: Vec<u32> = word.to_vec();
    sorted.sort_unstable();
    word.iter()
        .map(|v| sorted.binary_search(v).unwrap() as u32 + 1)
        .collect()
}

/// Rank profile of a word of distinct values (O(n^2) DP).
pub fn rank_profile(word: &[u32]) -> Vec<usize> {
    let n = word.len();
    let mut rank = vec![0usize; n];
    for i in 0..n {
        let mut best = 0;
        for j in 0..i {
            if word[j] < word[i] && rank[j] > best {
                best = rank[j];
            }
        }
        rank[i] = best + 1;
    }
    rank
}

/// Co-rank profile of a word of distinct values (O(n^2) DP, right to left).
pub fn corank_profile(word: &[u32]) -> Vec<usize> {
    let n = word.len();
    let mut corank = vec![0usize; n];
    for i in (0..n).rev() {
        let mut best = 0;
        for j in i + 1..n {
            if word[j] > word[i] && corank[j] > best {
                best = corank[j];
            }
        }
        corank[i] = best + 1;
    }
    corank
}

/// Rank profile via patience sorting, O(n log n). Must agree with
/// `rank_profile`; the DP remains the default.
pub fn rank_profile_patience(word: &[u32]) -> Vec<usize> {
    let mut tails: Vec<u32> = Vec::new();
    let mut rank = Vec::with_capacity(word.len());
    for &v in word {
        let idx = tails.partition_point(|&t| t < v);
        if idx == tails.len() {
            tails.push(v);
        } else {
            tails[idx] = v;
        }
        rank.push(idx + 1);
    }
    rank
}

/// Length of the longest increasing subsequence (patience sorting).
pub fn lis_length_word(word: &[u32]) -> usize {
    let mut tails: Vec<u32> = Vec::new();
    for &v in word {
        let idx = tails.partition_point(|&t| t < v);
        if idx == tails.len() {
            tails.push(v);
        } else {
            tails[idx] = v;
        }
    }
    tails.len()
}

/// The symbolic tag of a pattern set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    A { k: usize },
    B { k: usize },
    Am { k: usize, m: usize },
    Mono { len: usize },
    Explicit,
}

/// A finite set of patterns with its symbolic descriptor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PatternSet {
    family: Family,
    patterns: Vec<Permutation>,
}

impl PatternSet {
    /// `A:k` — the k-1 patterns of length k with increasing length-(k-1)
    /// prefix and last entry below k. Requires k >= 3.
    pub fn a_family(k: usize) -> Result<Self> {
        if k < 3 {
            return Err(Error::InvalidParameter(format!("A:{k} requires k >= 3")));
        }
        let prefix: Vec<u32> = (1..k as u32).collect();
        Ok(PatternSet {
            family: Family::A { k },
            patterns: last_small_family(k, &prefix),
        })
    }

    /// `B:k` — increasing prefix with the first two entries swapped
    /// (prefix pattern 213...(k-1)). Requires k >= 4.
    pub fn b_family(k: usize) -> Result<Self> {
        if k < 4 {
            return Err(Error::InvalidParameter(format!("B:{k} requires k >= 4")));
        }
        let mut prefix: Vec<u32> = (1..k as u32).collect();
        prefix.swap(0, 1);
        Ok(PatternSet {
            family: Family::B { k },
            patterns: last_small_family(k, &prefix),
        })
    }

    /// `Am:k:m` — prefix pattern m(m-1)...21(m+1)...(k-1). Requires
    /// 1 < m < k-1.
    pub fn am_family(k: usize, m: usize) -> Result<Self> {
        if !(1 < m && m < k.saturating_sub(1)) {
            return Err(Error::InvalidParameter(format!(
                "Am:{k}:{m} requires 1 < m < k-1"
            )));
        }
        let mut prefix: Vec<u32> = (1..=m as u32).rev().collect();
        prefix.extend(m as u32 + 1..k as u32);
        Ok(PatternSet {
            family: Family::Am { k, m },
            patterns: last_small_family(k, &prefix),
        })
    }

    /// `mono:l` — the single increasing pattern 12...l.
    pub fn monotone(len: usize) -> Result<Self> {
        if len == 0 {
            return Err(Error::InvalidParameter("mono:0 is not a pattern".into()));
        }
        Ok(PatternSet {
            family: Family::Mono { len },
            patterns: vec![Permutation::identity(len)],
        })
    }

    /// An explicit nonempty set of patterns.
    pub fn explicit(mut patterns: Vec<Permutation>) -> Result<Self> {
        if patterns.is_empty() {
            return Err(Error::InvalidParameter(
                "explicit pattern set must be nonempty".into(),
            ));
        }
        if patterns.iter().any(|p| p.is_empty()) {
            return Err(Error::InvalidParameter(
                "the empty permutation is not a usable pattern".into(),
            ));
        }
        patterns.sort();
        patterns.dedup();
        Ok(PatternSet {
            family: Family::Explicit,
            patterns,
        })
    }

    /// Parses the descriptor grammar `A:<k>`, `B:<k>`, `Am:<k>:<m>`,
    /// `mono:<l>`, `set:<p1>;<p2>;...`.
    pub fn parse(descriptor: &str) -> Result<Self> {
        let s = descriptor.trim();
        let bad = || Error::InvalidDescriptor(s.to_string());
        if let Some(rest) = s.strip_prefix("set:") {
            let patterns = rest
                .split(';')
                .map(Permutation::parse)
                .collect::<Result<Vec<_>>>()?;
            return PatternSet::explicit(patterns);
        }
        let mut parts = s.split(':');
        let tag = parts.next().ok_or_else(bad)?;
        let mut num = || -> Result<usize> {
            parts
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(bad)
        };
        let set = match tag {
            "A" => PatternSet::a_family(num()?)?,
            "B" => PatternSet::b_family(num()?)?,
            "Am" => {
                let k = num()?;
                let m = num()?;
                PatternSet::am_family(k, m)?
            }
            "mono" => PatternSet::monotone(num()?)?,
            _ => return Err(bad()),
        };
        if parts.next().is_some() {
            return Err(bad());
        }
        Ok(set)
    }

    /// Canonical descriptor string; round-trips through `parse`.
    pub fn descriptor(&self) -> String {
        match &self.family {
            Family::A { k } => format!("A:{k}"),
            Family::B { k } => format!("B:{k}"),
            Family::Am { k, m } => format!("Am:{k}:{m}"),
            Family::Mono { len } => format!("mono:{len}"),
            Family::Explicit => {
                let parts: Vec<String> = self.patterns.iter().map(|p| p.to_string()).collect();
                format!("set:{}", parts.join(";"))
            }
        }
    }

    pub fn family(&self) -> &Family {
        &self.family
    }

    pub fn patterns(&self) -> &[Permutation] {
        &self.patterns
    }

    pub fn min_pattern_len(&self) -> usize {
        self.patterns.iter().map(|p| p.len()).min().unwrap_or(0)
    }
}

/// For each final entry v in 1..k, arrange {1..k} \ {v} by `prefix_pattern`
/// and append v.
fn last_small_family(k: usize, prefix_pattern: &[u32]) -> Vec<Permutation> {
    let mut out: Vec<Permutation> = (1..k as u32)
        .map(|v| {
            let rest: Vec<u32> = (1..=k as u32).filter(|&x| x != v).collect();
            let mut entries: Vec<u32> = prefix_pattern
                .iter()
                .map(|&t| rest[t as usize - 1])
                .collect();
            entries.push(v);
            Permutation::new(entries).expect("family construction yields valid permutations")
        })
        .collect();
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn perm(s: &str) -> Permutation {
        Permutation::parse(s).unwrap()
    }

    #[test]
    fn make_permutation_validates() {
        assert_eq!(perm("3752416").entries(), &[3, 7, 5, 2, 4, 1, 6]);
        assert_eq!(Permutation::parse("").unwrap().len(), 0);
        assert!(Permutation::new(vec![1, 1, 2]).is_err());
        assert!(Permutation::new(vec![1, 3]).is_err());
        assert!(Permutation::new(vec![0, 1]).is_err());
        assert!(Permutation::parse("1,2,-3").is_err());
    }

    #[test]
    fn bare_digits_limited_to_nine() {
        assert_eq!(perm("123456789").len(), 9);
        assert!(Permutation::parse("1234567891").is_err());
        assert_eq!(
            Permutation::parse("10,9,8,7,6,5,4,3,2,1").unwrap(),
            Permutation::decreasing(10)
        );
    }

    #[test]
    fn rank_vector_examples() {
        assert_eq!(perm("3752416").rank_vector(), vec![1, 2, 2, 1, 2, 1, 3]);
        assert_eq!(perm("2174536").rank_vector(), vec![1, 1, 2, 2, 3, 2, 4]);
        assert_eq!(Permutation::decreasing(5).rank_vector(), vec![1; 5]);
        assert_eq!(Permutation::identity(4).rank_vector(), vec![1, 2, 3, 4]);
    }

    #[test]
    fn corank_vector_examples() {
        assert_eq!(perm("3752416").corank_vector(), vec![3, 1, 2, 3, 2, 2, 1]);
        assert_eq!(Permutation::identity(4).corank_vector(), vec![4, 3, 2, 1]);
        assert_eq!(Permutation::decreasing(5).corank_vector(), vec![1; 5]);
    }

    #[test]
    fn right_to_left_maxima_examples() {
        assert_eq!(perm("3752416").right_to_left_maxima(), vec![(2, 7), (7, 6)]);
        assert_eq!(
            Permutation::decreasing(3).right_to_left_maxima(),
            vec![(1, 3), (2, 2), (3, 1)]
        );
        assert_eq!(Permutation::identity(4).right_to_left_maxima(), vec![(4, 4)]);
    }

    #[test]
    fn rightmost_descent_examples() {
        assert_eq!(perm("3752416").rightmost_descent(), Some(5));
        assert_eq!(perm("2174536").rightmost_descent(), Some(5));
        assert_eq!(Permutation::identity(6).rightmost_descent(), None);
        assert_eq!(Permutation::empty().rightmost_descent(), None);
    }

    #[test]
    fn pattern_families_match_reference_sets() {
        let a5: Vec<String> = PatternSet::a_family(5)
            .unwrap()
            .patterns()
            .iter()
            .map(|p| p.to_string().replace(',', ""))
            .collect();
        assert_eq!(a5, vec!["12354", "12453", "13452", "23451"]);

        let b5: Vec<String> = PatternSet::b_family(5)
            .unwrap()
            .patterns()
            .iter()
            .map(|p| p.to_string().replace(',', ""))
            .collect();
        assert_eq!(b5, vec!["21354", "21453", "31452", "32451"]);

        let am553: Vec<String> = PatternSet::am_family(5, 3)
            .unwrap()
            .patterns()
            .iter()
            .map(|p| p.to_string().replace(',', ""))
            .collect();
        assert_eq!(am553, vec!["32154", "42153", "43152", "43251"]);

        let a3: Vec<String> = PatternSet::a_family(3)
            .unwrap()
            .patterns()
            .iter()
            .map(|p| p.to_string().replace(',', ""))
            .collect();
        assert_eq!(a3, vec!["132", "231"]);
    }

    #[test]
    fn family_parameter_ranges() {
        assert!(PatternSet::a_family(2).is_err());
        assert!(PatternSet::b_family(3).is_err());
        assert!(PatternSet::am_family(5, 1).is_err());
        assert!(PatternSet::am_family(5, 4).is_err());
        assert!(PatternSet::monotone(0).is_err());
        assert!(PatternSet::explicit(vec![]).is_err());
    }

    #[test]
    fn family_sizes_and_last_entries() {
        for k in 3..=7 {
            let set = PatternSet::a_family(k).unwrap();
            assert_eq!(set.patterns().len(), k - 1);
            for p in set.patterns() {
                assert_eq!(p.len(), k);
                assert!((*p.entries().last().unwrap() as usize) < k);
            }
        }
        for k in 4..=7 {
            let set = PatternSet::b_family(k).unwrap();
            assert_eq!(set.patterns().len(), k - 1);
            for p in set.patterns() {
                assert!((*p.entries().last().unwrap() as usize) < k);
            }
        }
    }

    #[test]
    fn descriptor_round_trip() {
        for d in ["A:5", "B:4", "Am:5:3", "mono:4", "set:1,3,2;2,1,3"] {
            let set = PatternSet::parse(d).unwrap();
            assert_eq!(PatternSet::parse(&set.descriptor()).unwrap(), set);
        }
        assert!(PatternSet::parse("C:5").is_err());
        assert!(PatternSet::parse("A:x").is_err());
        assert!(PatternSet::parse("A:5:2").is_err());
    }

    #[test]
    fn direct_sum_examples() {
        assert_eq!(perm("21").direct_sum(&perm("12")), perm("2134"));
        assert_eq!(Permutation::empty().direct_sum(&perm("312")), perm("312"));
        assert_eq!(perm("321").direct_sum(&perm("1")), perm("3214"));
    }

    #[test]
    fn reduce_examples() {
        assert_eq!(reduce_values(&[3, 7, 2, 6]).unwrap(), perm("2413"));
        assert_eq!(reduce_values(&[5]).unwrap(), perm("1"));
        assert_eq!(reduce_values(&[9, 4, 1]).unwrap(), perm("321"));
        assert!(reduce_values(&[2, 2]).is_err());
    }

    /// Independent oracle: scan all 2^n index subsets for increasing
    /// subsequences.
    fn brute_rank_corank(word: &[u32]) -> (Vec<usize>, Vec<usize>) {
        let n = word.len();
        let mut rank = vec![1usize; n];
        let mut corank = vec![1usize; n];
        for mask in 1u32..(1 << n) {
            let idx: Vec<usize> = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
            let increasing = idx.windows(2).all(|w| word[w[0]] < word[w[1]]);
            if increasing {
                let len = idx.len();
                let first = idx[0];
                let last = *idx.last().unwrap();
                rank[last] = rank[last].max(len);
                corank[first] = corank[first].max(len);
            }
        }
        (rank, corank)
    }

    fn all_perms(n: usize) -> Vec<Vec<u32>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for rest in all_perms(n - 1) {
            for pos in 0..=rest.len() {
                let mut next = rest.clone();
                next.insert(pos, n as u32);
                out.push(next);
            }
        }
        out
    }

    #[test]
    fn rank_corank_match_subset_oracle_exhaustively() {
        for n in 0..=6 {
            for p in all_perms(n) {
                let (r, c) = brute_rank_corank(&p);
                assert_eq!(rank_profile(&p), r, "perm {p:?}");
                assert_eq!(corank_profile(&p), c, "perm {p:?}");
            }
        }
    }

    proptest! {
        #[test]
        fn patience_rank_agrees_with_dp(n in 0usize..40, seed in any::<u64>()) {
            let word = shuffled(n, seed);
            prop_assert_eq!(rank_profile_patience(&word), rank_profile(&word));
        }

        #[test]
        fn corank_one_iff_rl_maximum(n in 0usize..30, seed in any::<u64>()) {
            let p = Permutation::new(shuffled(n, seed)).unwrap();
            let coranks = p.corank_vector();
            let rl: Vec<usize> = p.right_to_left_maxima().iter().map(|&(i, _)| i).collect();
            let by_corank: Vec<usize> =
                (0..n).filter(|&i| coranks[i] == 1).map(|i| i + 1).collect();
            prop_assert_eq!(rl, by_corank);
        }

        #[test]
        fn max_rank_equals_max_corank_equals_lis(n in 1usize..30, seed in any::<u64>()) {
            let word = shuffled(n, seed);
            let lis = lis_length_word(&word);
            prop_assert_eq!(*rank_profile(&word).iter().max().unwrap(), lis);
            prop_assert_eq!(*corank_profile(&word).iter().max().unwrap(), lis);
        }

        #[test]
        fn reduce_fixes_permutations(n in 0usize..20, seed in any::<u64>()) {
            let p = Permutation::new(shuffled(n, seed)).unwrap();
            let values: Vec<i64> = p.entries().iter().map(|&v| v as i64).collect();
            prop_assert_eq!(reduce_values(&values).unwrap(), p);
        }
    }

    /// Cheap deterministic shuffle of 1..=n from a seed.
    fn shuffled(n: usize, seed: u64) -> Vec<u32> {
        let mut v: Vec<u32> = (1..=n as u32).collect();
        let mut state = seed | 1;
        for i in (1..n).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let j = (state >> 33) as usize % (i + 1);
            v.swap(i, j);
        }
        v
    }
}
