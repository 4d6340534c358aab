//! The co-rank-fixing bijection g (Av(12...l) -> Av(213...l), a
//! generalization of the Simion-Schmidt map) and the bijection h
//! (Av(A:k) -> Av(B:k)) built from it.

use std::collections::BTreeSet;

use crate::containment::{avoids_a_fast, avoids_all, contains_word};
use crate::enumerate::enumerate_avoiders;
use crate::error::{Error, Result};
use crate::perm::{corank_profile, lis_length_word, PatternSet, Permutation};

fn pattern_213(l: usize) -> Vec<u32> {
    let mut p: Vec<u32> = (1..=l as u32).collect();
    p.swap(0, 1);
    p
}

/// g on a word of distinct values avoiding 12...l: entries of co-rank
/// <= l-2 stay fixed; the remaining slots are filled right to left, each
/// receiving the largest unused removed value whose resulting co-rank is
/// at least l-1.
pub fn g_word(word: &[u32], l: usize) -> Result<Vec<u32>> {
    if l < 3 {
        return Err(Error::InvalidParameter(format!("g requires l >= 3, got {l}")));
    }
    if lis_length_word(word) >= l {
        return Err(Error::PreconditionViolated(format!(
            "g input must avoid the increasing pattern of length {l}"
        )));
    }
    let n = word.len();
    let coranks = corank_profile(word);
    let mut out: Vec<Option<u32>> = vec![None; n];
    let mut removed: Vec<u32> = Vec::new();
    for i in 0..n {
        if coranks[i] <= l - 2 {
            out[i] = Some(word[i]);
        } else {
            removed.push(word[i]);
        }
    }
    removed.sort_unstable();
    let mut removed_used = vec![false; removed.len()];
    // (value, co-rank) of the already-final suffix of the output; co-rank
    // depends only on the suffix, so filling right to left decides each
    // placement against complete information.
    let mut suffix: Vec<(u32, usize)> = Vec::with_capacity(n);
    for i in (0..n).rev() {
        let value = match out[i] {
            Some(v) => v,
            None => {
                let idx = (0..removed.len())
                    .rev()
                    .filter(|&idx| !removed_used[idx])
                    .find(|&idx| corank_against(&suffix, removed[idx]) >= l - 1)
                    .unwrap_or_else(|| {
                        panic!(
                            "g: no placeable value at position {} of {:?} with l={l}; \
                             greedy feasibility violated",
                            i + 1,
                            word
                        )
                    });
                removed_used[idx] = true;
                removed[idx]
            }
        };
        out[i] = Some(value);
        suffix.push((value, corank_against(&suffix, value)));
    }
    Ok(out.into_iter().map(|v| v.unwrap()).collect())
}

fn corank_against(suffix: &[(u32, usize)], v: u32) -> usize {
    1 + suffix
        .iter()
        .filter(|&&(w, _)| w > v)
        .map(|&(_, c)| c)
        .max()
        .unwrap_or(0)
}

/// Inverse of `g_word`: fixed entries stay; the removed values go into the
/// free slots left to right in decreasing order.
pub fn g_inverse_word(word: &[u32], l: usize) -> Result<Vec<u32>> {
    if l < 3 {
        return Err(Error::InvalidParameter(format!("g requires l >= 3, got {l}")));
    }
    if contains_word(word, &pattern_213(l)) {
        return Err(Error::PreconditionViolated(format!(
            "g-inverse input must avoid the pattern 213...{l}"
        )));
    }
    let n = word.len();
    let coranks = corank_profile(word);
    let mut removed: Vec<u32> = (0..n)
        .filter(|&i| coranks[i] > l - 2)
        .map(|i| word[i])
        .collect();
    removed.sort_unstable_by(|a, b| b.cmp(a));
    let mut next = removed.into_iter();
    let out = (0..n)
        .map(|i| {
            if coranks[i] <= l - 2 {
                word[i]
            } else {
                next.next().expect("as many removed values as free slots")
            }
        })
        .collect();
    Ok(out)
}

pub fn g_map(p: &Permutation, l: usize) -> Result<Permutation> {
    Ok(Permutation::new(g_word(p.entries(), l)?).expect("g produces a permutation"))
}

pub fn g_inverse(w: &Permutation, l: usize) -> Result<Permutation> {
    Ok(Permutation::new(g_inverse_word(w.entries(), l)?).expect("g-inverse produces a permutation"))
}

/// h: apply g with l = k-1 to the prefix ending at the rightmost descent
/// (the literal values, co-ranks taken within the prefix) and keep the
/// increasing suffix. Maps Av(A:k) onto Av(B:k).
pub fn h_map(p: &Permutation, k: usize) -> Result<Permutation> {
    if k < 4 {
        return Err(Error::InvalidParameter(format!("h requires k >= 4, got {k}")));
    }
    if !avoids_a_fast(p, k)? {
        return Err(Error::PreconditionViolated(format!(
            "h input must avoid A:{k}"
        )));
    }
    let Some(i) = p.rightmost_descent() else {
        return Ok(p.clone());
    };
    let prefix = &p.entries()[..i];
    // For a valid input the prefix up to the rightmost descent avoids
    // 12...(k-1); g_word aborts otherwise.
    let mut entries =
        g_word(prefix, k - 1).expect("prefix of an A-avoider avoids the increasing pattern");
    entries.extend_from_slice(&p.entries()[i..]);
    Ok(Permutation::new(entries).expect("h produces a permutation"))
}

/// Inverse of `h_map`.
pub fn h_inverse(w: &Permutation, k: usize) -> Result<Permutation> {
    if k < 4 {
        return Err(Error::InvalidParameter(format!("h requires k >= 4, got {k}")));
    }
    if !avoids_all(w, &PatternSet::b_family(k)?) {
        return Err(Error::PreconditionViolated(format!(
            "h-inverse input must avoid B:{k}"
        )));
    }
    let Some(i) = w.rightmost_descent() else {
        return Ok(w.clone());
    };
    let prefix = &w.entries()[..i];
    let mut entries = g_inverse_word(prefix, k - 1)?;
    entries.extend_from_slice(&w.entries()[i..]);
    Ok(Permutation::new(entries).expect("h-inverse produces a permutation"))
}

/// Result of an exhaustive bijectivity check at one length.
#[derive(Clone, Debug)]
pub struct BijectionCheck {
    pub n: usize,
    pub domain_size: usize,
    pub pass: bool,
    /// First few violation descriptions, if any.
    pub failures: Vec<String>,
}

fn note(failures: &mut Vec<String>, msg: String) {
    if failures.len() < 8 {
        failures.push(msg);
    }
}

/// Checks over all of Av_n(12...l): g is injective, its image is exactly
/// Av_n(213...l), g_inverse inverts it, and every entry of co-rank <= l-2
/// keeps its position and value.
pub fn check_g_exhaustive(l: usize, n: usize) -> Result<BijectionCheck> {
    if l < 3 {
        return Err(Error::InvalidParameter(format!("g requires l >= 3, got {l}")));
    }
    let domain = enumerate_avoiders(n, &PatternSet::monotone(l)?);
    let target_set = PatternSet::explicit(vec![Permutation::new(pattern_213(l)).unwrap()])?;
    let target: BTreeSet<Permutation> = enumerate_avoiders(n, &target_set).into_iter().collect();

    let mut failures = Vec::new();
    let mut images = BTreeSet::new();
    for p in &domain {
        let w = g_map(p, l)?;
        if !target.contains(&w) {
            note(&mut failures, format!("g({p}) = {w} is outside the target class"));
        }
        if !images.insert(w.clone()) {
            note(&mut failures, format!("image {w} produced twice"));
        }
        match g_inverse(&w, l) {
            Ok(back) if back == *p => {}
            Ok(back) => note(&mut failures, format!("g_inverse(g({p})) = {back}")),
            Err(e) => note(&mut failures, format!("g_inverse failed on {w}: {e}")),
        }
        let pc = p.corank_vector();
        let wc = w.corank_vector();
        for m in 1..=l - 2 {
            let fixed_p: Vec<(usize, u32)> = (0..n)
                .filter(|&i| pc[i] == m)
                .map(|i| (i + 1, p.entries()[i]))
                .collect();
            let fixed_w: Vec<(usize, u32)> = (0..n)
                .filter(|&i| wc[i] == m)
                .map(|i| (i + 1, w.entries()[i]))
                .collect();
            if fixed_p != fixed_w {
                note(
                    &mut failures,
                    format!("co-rank-{m} entries moved: {p} -> {w}"),
                );
            }
        }
    }
    if images != target {
        note(
            &mut failures,
            format!(
                "image has {} elements, target class has {}",
                images.len(),
                target.len()
            ),
        );
    }
    Ok(BijectionCheck {
        n,
        domain_size: domain.len(),
        pass: failures.is_empty(),
        failures,
    })
}

/// Checks over all of Av_n(A:k): h is a bijection onto Av_n(B:k), h_inverse
/// inverts it, the rightmost descent position is preserved, and the entry
/// at that position still exceeds its successor.
pub fn check_h_exhaustive(k: usize, n: usize) -> Result<BijectionCheck> {
    let domain = enumerate_avoiders(n, &PatternSet::a_family(k)?);
    let target: BTreeSet<Permutation> =
        enumerate_avoiders(n, &PatternSet::b_family(k)?).into_iter().collect();

    let mut failures = Vec::new();
    let mut images = BTreeSet::new();
    for p in &domain {
        let w = h_map(p, k)?;
        if !target.contains(&w) {
            note(&mut failures, format!("h({p}) = {w} is outside Av(B:{k})"));
        }
        if !images.insert(w.clone()) {
            note(&mut failures, format!("image {w} produced twice"));
        }
        if w.rightmost_descent() != p.rightmost_descent() {
            note(&mut failures, format!("rightmost descent moved: {p} -> {w}"));
        }
        if let Some(i) = p.rightmost_descent() {
            if w.entries()[i - 1] <= p.entries()[i] {
                note(
                    &mut failures,
                    format!("descent entry no longer exceeds successor: {p} -> {w}"),
                );
            }
        }
        match h_inverse(&w, k) {
            Ok(back) if back == *p => {}
            Ok(back) => note(&mut failures, format!("h_inverse(h({p})) = {back}")),
            Err(e) => note(&mut failures, format!("h_inverse failed on {w}: {e}")),
        }
    }
    if images != target {
        note(
            &mut failures,
            format!(
                "image has {} elements, Av_n(B:{k}) has {}",
                images.len(),
                target.len()
            ),
        );
    }
    Ok(BijectionCheck {
        n,
        domain_size: domain.len(),
        pass: failures.is_empty(),
        failures,
    })
}
