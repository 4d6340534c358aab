//! Exhaustive generation and counting of avoiders by prefix extension.
//!
//! A prefix is pruned as soon as the newly placed entry completes a
//! forbidden pattern. For `mono:l` and `A:k` the check reduces to the rank
//! of the new entry; for `A:k` a prefix that reaches rank k-1 additionally
//! forces the unique increasing completion, so whole subtrees collapse to a
//! single leaf.

use num::{BigUint, One};
use rayon::prelude::*;

use crate::cache::CountCache;
use crate::containment::contains_word_ending_at;
use crate::error::Result;
use crate::perm::{rank_profile, Family, PatternSet, Permutation};

/// A class descriptor together with |Av_n(S)| for n = 0..=N.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountSequence {
    pub descriptor: String,
    pub terms: Vec<BigUint>,
}

#[derive(Clone, Copy)]
enum Mode {
    /// Prune when the new entry reaches `limit`; with `forced_tail` the
    /// reaching entry instead forces an increasing completion (A-family).
    Ranked { limit: usize, forced_tail: bool },
    Generic,
}

impl Mode {
    fn for_set(set: &PatternSet) -> Mode {
        match set.family() {
            Family::Mono { len } => Mode::Ranked {
                limit: *len,
                forced_tail: false,
            },
            Family::A { k } => Mode::Ranked {
                limit: k - 1,
                forced_tail: true,
            },
            _ => Mode::Generic,
        }
    }
}

enum Step {
    Dead,
    Forced,
    Live,
}

/// Slow-path classification of appending `v` to `prefix` (used for seeding
/// the parallel split and for the streaming enumerator).
fn classify(mode: Mode, set: &PatternSet, prefix: &[u32], v: u32, scratch: &mut Vec<u32>) -> Step {
    match mode {
        Mode::Ranked { limit, forced_tail } => {
            let ranks = rank_profile(prefix);
            let r = 1 + prefix
                .iter()
                .zip(&ranks)
                .filter(|&(&w, _)| w < v)
                .map(|(_, &r)| r)
                .max()
                .unwrap_or(0);
            if r < limit {
                Step::Live
            } else if forced_tail && is_min_unused(prefix, v) {
                Step::Forced
            } else {
                Step::Dead
            }
        }
        Mode::Generic => {
            scratch.clear();
            scratch.extend_from_slice(prefix);
            scratch.push(v);
            let last = scratch.len() - 1;
            let dead = set
                .patterns()
                .iter()
                .any(|q| contains_word_ending_at(scratch, q.entries(), last));
            if dead {
                Step::Dead
            } else {
                Step::Live
            }
        }
    }
}

/// Is `v` smaller than every value not yet used by `prefix`?
fn is_min_unused(prefix: &[u32], v: u32) -> bool {
    (1..v).all(|w| prefix.contains(&w))
}

/// Counter with per-node O(n) value scan; ranks are tracked per value.
struct RankedCounter {
    n: usize,
    limit: usize,
    forced_tail: bool,
    used: Vec<bool>,
    rank_by_value: Vec<usize>,
    depth: usize,
}

impl RankedCounter {
    fn new(n: usize, limit: usize, forced_tail: bool) -> Self {
        RankedCounter {
            n,
            limit,
            forced_tail,
            used: vec![false; n],
            rank_by_value: vec![0; n],
            depth: 0,
        }
    }

    fn seed(&mut self, word: &[u32]) {
        let ranks = rank_profile(word);
        for (i, &v) in word.iter().enumerate() {
            self.used[v as usize - 1] = true;
            self.rank_by_value[v as usize - 1] = ranks[i];
        }
        self.depth = word.len();
    }

    fn count(&mut self) -> u128 {
        if self.depth == self.n {
            return 1;
        }
        let mut total = 0u128;
        let mut best_below = 0usize;
        let mut min_unused = true;
        for v in 0..self.n {
            if self.used[v] {
                if self.rank_by_value[v] > best_below {
                    best_below = self.rank_by_value[v];
                }
                continue;
            }
            let r = best_below + 1;
            if r >= self.limit {
                if self.forced_tail && min_unused {
                    total += 1;
                }
            } else {
                self.used[v] = true;
                self.rank_by_value[v] = r;
                self.depth += 1;
                total += self.count();
                self.depth -= 1;
                self.used[v] = false;
            }
            min_unused = false;
        }
        total
    }
}

struct GenericCounter<'a> {
    n: usize,
    set: &'a PatternSet,
    prefix: Vec<u32>,
    used: Vec<bool>,
}

impl<'a> GenericCounter<'a> {
    fn new(n: usize, set: &'a PatternSet) -> Self {
        GenericCounter {
            n,
            set,
            prefix: Vec::with_capacity(n),
            used: vec![false; n],
        }
    }

    fn seed(&mut self, word: &[u32]) {
        for &v in word {
            self.used[v as usize - 1] = true;
        }
        self.prefix.extend_from_slice(word);
    }

    fn count(&mut self) -> u128 {
        if self.prefix.len() == self.n {
            return 1;
        }
        let mut total = 0u128;
        for v in 1..=self.n as u32 {
            if self.used[v as usize - 1] {
                continue;
            }
            self.prefix.push(v);
            let last = self.prefix.len() - 1;
            let dead = self
                .set
                .patterns()
                .iter()
                .any(|q| contains_word_ending_at(&self.prefix, q.entries(), last));
            if !dead {
                self.used[v as usize - 1] = true;
                total += self.count();
                self.used[v as usize - 1] = false;
            }
            self.prefix.pop();
        }
        total
    }
}

fn count_from_seed(n: usize, set: &PatternSet, mode: Mode, seed: &[u32]) -> u128 {
    match mode {
        Mode::Ranked { limit, forced_tail } => {
            let mut c = RankedCounter::new(n, limit, forced_tail);
            c.seed(seed);
            c.count()
        }
        Mode::Generic => {
            let mut c = GenericCounter::new(n, set);
            c.seed(seed);
            c.count()
        }
    }
}

/// |Av_n(S)|. Splits the search space over the first two entries and counts
/// subtrees in parallel; the result is independent of the partitioning.
pub fn count_avoiders(n: usize, set: &PatternSet) -> BigUint {
    if n == 0 {
        return BigUint::one();
    }
    let mode = Mode::for_set(set);
    if n <= 9 {
        return BigUint::from(count_from_seed(n, set, mode, &[]));
    }
    let mut immediate = 0u128;
    let mut seeds: Vec<[u32; 2]> = Vec::new();
    let mut scratch = Vec::new();
    for v1 in 1..=n as u32 {
        match classify(mode, set, &[], v1, &mut scratch) {
            Step::Dead => {}
            Step::Forced => immediate += 1,
            Step::Live => {
                for v2 in 1..=n as u32 {
                    if v2 == v1 {
                        continue;
                    }
                    match classify(mode, set, &[v1], v2, &mut scratch) {
                        Step::Dead => {}
                        Step::Forced => immediate += 1,
                        Step::Live => seeds.push([v1, v2]),
                    }
                }
            }
        }
    }
    let sum: BigUint = seeds
        .par_iter()
        .map(|seed| BigUint::from(count_from_seed(n, set, mode, seed)))
        .sum();
    sum + BigUint::from(immediate)
}

/// Single-threaded variant; must agree with `count_avoiders` exactly.
pub fn count_avoiders_serial(n: usize, set: &PatternSet) -> BigUint {
    if n == 0 {
        return BigUint::one();
    }
    BigUint::from(count_from_seed(n, set, Mode::for_set(set), &[]))
}

/// Visits every permutation of length n avoiding `set`, each exactly once,
/// in lexicographic order.
pub fn for_each_avoider<F: FnMut(&[u32])>(n: usize, set: &PatternSet, mut f: F) {
    let mode = Mode::for_set(set);
    let mut prefix = Vec::with_capacity(n);
    let mut scratch = Vec::new();
    visit(n, set, mode, &mut prefix, &mut scratch, &mut f);
}

fn visit<F: FnMut(&[u32])>(
    n: usize,
    set: &PatternSet,
    mode: Mode,
    prefix: &mut Vec<u32>,
    scratch: &mut Vec<u32>,
    f: &mut F,
) {
    if prefix.len() == n {
        f(prefix);
        return;
    }
    for v in 1..=n as u32 {
        if prefix.contains(&v) {
            continue;
        }
        match classify(mode, set, prefix, v, scratch) {
            Step::Dead => {}
            Step::Forced => {
                // The unique completion: v followed by the unused values in
                // increasing order.
                let mut full = prefix.clone();
                full.push(v);
                for w in 1..=n as u32 {
                    if w != v && !prefix.contains(&w) {
                        full.push(w);
                    }
                }
                f(&full);
            }
            Step::Live => {
                prefix.push(v);
                visit(n, set, mode, prefix, scratch, f);
                prefix.pop();
            }
        }
    }
}

/// Materialized `for_each_avoider`; intended for small n.
pub fn enumerate_avoiders(n: usize, set: &PatternSet) -> Vec<Permutation> {
    let mut out = Vec::new();
    for_each_avoider(n, set, |word| {
        out.push(Permutation::new(word.to_vec()).expect("enumerated word is a permutation"));
    });
    out
}

/// Counts for n = 0..=n_max, reusing and extending `cache` when given.
pub fn count_sequence(
    set: &PatternSet,
    n_max: usize,
    cache: Option<&CountCache>,
) -> Result<CountSequence> {
    let descriptor = set.descriptor();
    let known = match cache {
        Some(c) => c.load(&descriptor)?,
        None => Default::default(),
    };
    let mut terms = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        match known.get(&(n as u64)) {
            Some(c) => terms.push(c.clone()),
            None => {
                let c = count_avoiders(n, set);
                if let Some(cache) = cache {
                    cache.append(&descriptor, n as u64, &c)?;
                }
                terms.push(c);
            }
        }
    }
    Ok(CountSequence { descriptor, terms })
}
