//! Pattern containment and avoidance, with fast paths for monotone patterns
//! and for the `A:k` family via the front/tail rank decomposition.

use crate::error::{Error, Result};
use crate::perm::{lis_length_word, rank_profile_patience, PatternSet, Permutation};

/// True iff some subsequence of `p` reduces to `q`.
pub fn contains(p: &Permutation, q: &Permutation) -> bool {
    contains_word(p.entries(), q.entries())
}

/// Containment on words of distinct values.
pub fn contains_word(word: &[u32], pattern: &[u32]) -> bool {
    if pattern.is_empty() {
        return true;
    }
    if pattern.len() > word.len() {
        return false;
    }
    if is_increasing(pattern) {
        return lis_length_word(word) >= pattern.len();
    }
    if is_decreasing(pattern) {
        let rev: Vec<u32> = word.iter().rev().copied().collect();
        return lis_length_word(&rev) >= pattern.len();
    }
    let mut chosen = Vec::with_capacity(pattern.len());
    embed(word, pattern, None, &mut chosen)
}

/// Does `word` contain `pattern` with the occurrence's last element pinned
/// at index `last` (0-indexed)? Used by the incremental enumeration pruner.
pub(crate) fn contains_word_ending_at(word: &[u32], pattern: &[u32], last: usize) -> bool {
    if pattern.is_empty() || pattern.len() > last + 1 {
        return false;
    }
    let mut chosen = Vec::with_capacity(pattern.len());
    embed(word, pattern, Some(last), &mut chosen)
}

fn is_increasing(w: &[u32]) -> bool {
    w.windows(2).all(|x| x[0] < x[1])
}

fn is_decreasing(w: &[u32]) -> bool {
    w.windows(2).all(|x| x[0] > x[1])
}

/// Positional backtracking with value-interval pruning. `chosen` holds the
/// values matched so far.
fn embed(
    word: &[u32],
    pattern: &[u32],
    pinned_last: Option<usize>,
    chosen: &mut Vec<(usize, u32)>,
) -> bool {
    let m = pattern.len();
    let t = chosen.len();
    if t == m {
        return true;
    }
    // Admissible value window for pattern[t], from the already-matched
    // entries.
    let mut lo = 0u32; // exclusive
    let mut hi = u32::MAX; // exclusive
    for (s, &(_, val)) in chosen.iter().enumerate() {
        if pattern[s] < pattern[t] {
            lo = lo.max(val);
        } else {
            hi = hi.min(val);
        }
    }
    let start = chosen.last().map_or(0, |&(p, _)| p + 1);
    if t == m - 1 {
        if let Some(pin) = pinned_last {
            return pin >= start && word[pin] > lo && word[pin] < hi;
        }
    }
    // Leave room for the remaining pattern entries.
    let end = match pinned_last {
        Some(pin) => pin.saturating_sub(m - 2 - t),
        None => word.len() - (m - 1 - t),
    };
    for pos in start..end {
        let v = word[pos];
        if v > lo && v < hi {
            chosen.push((pos, v));
            if embed(word, pattern, pinned_last, chosen) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

/// True iff `p` avoids every pattern in `set`.
pub fn avoids_all(p: &Permutation, set: &PatternSet) -> bool {
    set.patterns().iter().all(|q| !contains(p, q))
}

/// Length of the longest increasing subsequence of `p`.
pub fn lis_length(p: &Permutation) -> usize {
    lis_length_word(p.entries())
}

/// Avoidance of `A:k` in O(n log n): let j be the leftmost position of rank
/// k-1 (absent: avoids); `p` avoids iff the suffix from j is strictly
/// increasing. Validated exhaustively against `avoids_all` for n <= 9.
pub fn avoids_a_fast(p: &Permutation, k: usize) -> Result<bool> {
    if k < 3 {
        return Err(Error::InvalidParameter(format!(
            "A-family check requires k >= 3, got {k}"
        )));
    }
    Ok(a_fast_word(p.entries(), k))
}

pub(crate) fn a_fast_word(word: &[u32], k: usize) -> bool {
    let ranks = rank_profile_patience(word);
    match ranks.iter().position(|&r| r >= k - 1) {
        None => true,
        Some(j) => word[j..].windows(2).all(|w| w[0] < w[1]),
    }
}

/// The front/tail decomposition of an `A:k` avoider. `split` is 1-indexed;
/// `split = n + 1` means the tail is empty.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub split: usize,
    pub front: Vec<u32>,
    pub tail: Vec<u32>,
}

/// Splits an `A:k` avoider at its leftmost rank-(k-1) entry.
pub fn decompose_front_tail(p: &Permutation, k: usize) -> Result<Decomposition> {
    if !avoids_a_fast(p, k)? {
        return Err(Error::PreconditionViolated(format!(
            "permutation {p} contains a pattern of A:{k}"
        )));
    }
    let ranks = rank_profile_patience(p.entries());
    let split = ranks
        .iter()
        .position(|&r| r >= k - 1)
        .map_or(p.len() + 1, |j| j + 1);
    Ok(Decomposition {
        split,
        front: p.entries()[..split - 1].to_vec(),
        tail: p.entries()[split - 1..].to_vec(),
    })
}
