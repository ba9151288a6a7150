//! Counting routes for barred preferential arrangements.
//!
//! `J^k_n` counts barred preferential arrangements of an n-set with `k` bars;
//! `p^k_n` the variant with one free and `k` restricted sections; `p^r_j(n)`
//! the general variant with `r` restricted and `j` free sections. Every
//! closed form and recurrence is exposed as a separately testable route so
//! the verification harness can cross-check them cell by cell.
//!
//! Recurrence routes memoize into private tables guarded by an `RwLock`;
//! reads are concurrent, growth is serialized, and distinct routes never
//! share a table.

use std::collections::HashMap;
use std::sync::{LazyLock, RwLock};

use num_traits::{CheckedSub, One};

use crate::exact::{binomial, factorial, power, stirling2, Count};
use crate::profile::{ProfileError, RestrictionProfile, SectionKind};

static FUBINI: LazyLock<RwLock<Vec<Count>>> = LazyLock::new(|| RwLock::new(vec![Count::one()]));

/// Fubini number (ordered Bell number): preferential arrangements of an
/// n-set, `J^0_n = Σ_s {n brace s}·s!`.
pub fn fubini(n: u32) -> Count {
    let n = n as usize;
    {
        let table = FUBINI.read().unwrap();
        if let Some(value) = table.get(n) {
            return value.clone();
        }
    }
    let mut table = FUBINI.write().unwrap();
    while table.len() <= n {
        let m = table.len() as u32;
        let value: Count = (0..=m).map(|s| stirling2(m, s) * factorial(s)).sum();
        table.push(value);
    }
    table[n].clone()
}

/// `J^k_n` by the Stirling closed form `Σ_s {n brace s}·s!·C(k+s, s)`.
pub fn j_closed_form(n: u32, k: u32) -> Count {
    (0..=n)
        .map(|s| stirling2(n, s) * factorial(s) * binomial(k + s, s as i64))
        .sum()
}

static J_TABLE: LazyLock<RwLock<HashMap<(u32, u32), Count>>> =
    LazyLock::new(|| RwLock::new(HashMap::new()));

/// `J^k_n` by the bar-splitting recurrence
/// `J^k_n = Σ_s C(n,s)·J^0_s·J^{k-1}_{n-s}`, memoized across calls.
pub fn j_recurrence(n: u32, k: u32) -> Count {
    if k == 0 {
        return fubini(n);
    }
    {
        let table = J_TABLE.read().unwrap();
        if let Some(value) = table.get(&(k, n)) {
            return value.clone();
        }
    }
    let value: Count = (0..=n)
        .map(|s| binomial(n, s as i64) * fubini(s) * j_recurrence(n - s, k - 1))
        .sum();
    J_TABLE
        .write()
        .unwrap()
        .entry((k, n))
        .or_insert(value)
        .clone()
}

/// Weak compositions of `total` into `parts` nonnegative parts, in ascending
/// lexicographic order starting from `(0, …, 0, total)`.
pub struct WeakCompositions {
    next: Option<Vec<u32>>,
}

impl WeakCompositions {
    pub fn new(total: u32, parts: usize) -> Self {
        assert!(parts >= 1, "compositions need at least one part");
        let mut first = vec![0u32; parts];
        first[parts - 1] = total;
        Self { next: Some(first) }
    }
}

impl Iterator for WeakCompositions {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        let current = self.next.take()?;
        // Successor: find the rightmost position with a positive suffix sum,
        // move one unit onto it, and push the rest of the suffix to the end.
        let parts = current.len();
        let mut successor = None;
        let mut suffix: u32 = 0;
        for p in (0..parts - 1).rev() {
            suffix += current[p + 1];
            if suffix > 0 {
                let mut next = current[..=p].to_vec();
                next[p] += 1;
                next.resize(parts, 0);
                next[parts - 1] = suffix - 1;
                successor = Some(next);
                break;
            }
        }
        self.next = successor;
        Some(current)
    }
}

/// Multinomial coefficient `n! / (w_1!·…·w_m!)` for a composition of `n`.
fn multinomial(n: u32, parts: &[u32]) -> Count {
    debug_assert_eq!(parts.iter().sum::<u32>(), n);
    let mut value = factorial(n);
    for &w in parts {
        value /= factorial(w);
    }
    value
}

/// `J^k_n` by summing `n!/(w_1!…w_{k+1}!)·Π J^0_{w_i}` over all weak
/// compositions of `n` into `k+1` parts.
pub fn j_multinomial(n: u32, k: u32) -> Count {
    WeakCompositions::new(n, k as usize + 1)
        .map(|w| {
            let mut term = multinomial(n, &w);
            for &wi in &w {
                term *= fubini(wi);
            }
            term
        })
        .sum()
}

/// `p^r_j(n)` by the sectionwise convolution: sum over weak compositions of
/// `n` into `r+j` parts of the multinomial coefficient times `J^0_{w_i}` at
/// each free position. The value does not depend on which positions the
/// profile marks free.
pub fn p_multinomial(
    n: u32,
    r: u32,
    j: u32,
    profile: &RestrictionProfile,
) -> Result<Count, ProfileError> {
    profile.expect_counts(r, j)?;
    let kinds = profile.kinds();
    let total = WeakCompositions::new(n, kinds.len())
        .map(|w| {
            let mut term = multinomial(n, &w);
            for (i, &wi) in w.iter().enumerate() {
                if kinds[i] == SectionKind::Free {
                    term *= fubini(wi);
                }
            }
            term
        })
        .sum();
    Ok(total)
}

/// `p^k_n = Σ_s C(n,s)·J^0_s·k^{n-s}`: choose the free section's elements,
/// arrange them, and drop the rest one block per restricted section.
pub fn p_via_theorem4(n: u32, k: u32) -> Count {
    assert!(k >= 1, "the formula needs at least one restricted section");
    (0..=n)
        .map(|s| binomial(n, s as i64) * fubini(s) * power(k, n - s))
        .sum()
}

/// `p^{k+1}_n` as the binomial transform `Σ_s C(n,s)·p^k_s`, iterated from
/// the anchor row `p^0 = J^0`.
pub fn p_via_theorem5(n: u32, k: u32) -> Count {
    let mut row: Vec<Count> = (0..=n).map(fubini).collect();
    for _ in 0..=k {
        row = (0..=n)
            .map(|m| {
                (0..=m)
                    .map(|s| binomial(m, s as i64) * &row[s as usize])
                    .sum()
            })
            .collect();
    }
    row[n as usize].clone()
}

/// `p^k_n = k^n + Σ_{s=0}^{n-1} C(n,s)·k^s·J^0_{n-s}`, split by whether the
/// free section is empty.
pub fn p_via_lemma1(n: u32, k: u32) -> Count {
    assert!(n >= 1 && k >= 1, "the split needs n ≥ 1 and k ≥ 1");
    let tail: Count = (0..n)
        .map(|s| binomial(n, s as i64) * power(k, s) * fubini(n - s))
        .sum();
    power(k, n) + tail
}

type PTable = RwLock<HashMap<(u32, u32, u32), Count>>;

static P_TABLE_THM8: LazyLock<PTable> = LazyLock::new(|| RwLock::new(HashMap::new()));

/// `p^r_j(n)` by recursion on the number of restricted sections:
/// `p^r_j(n) = p^{r-1}_j(n) + Σ_{s=0}^{n-1} C(n,s)·p^{r-1}_j(s)`,
/// anchored at `p^0_j(n) = J^{j-1}_n`. Memoized across calls.
pub fn p_general_recurrence_thm8(n: u32, r: u32, j: u32) -> Count {
    assert!(j >= 1, "at least one free section is required");
    if r == 0 {
        return j_recurrence(n, j - 1);
    }
    {
        let table = P_TABLE_THM8.read().unwrap();
        if let Some(value) = table.get(&(r, j, n)) {
            return value.clone();
        }
    }
    let tail: Count = (0..n)
        .map(|s| binomial(n, s as i64) * p_general_recurrence_thm8(s, r - 1, j))
        .sum();
    let value = p_general_recurrence_thm8(n, r - 1, j) + tail;
    P_TABLE_THM8
        .write()
        .unwrap()
        .entry((r, j, n))
        .or_insert(value)
        .clone()
}

static P_TABLE_REC_J: LazyLock<PTable> = LazyLock::new(|| RwLock::new(HashMap::new()));

/// `p^r_j(n)` by recursion on the number of free sections:
/// `p^r_j(n) = p^r_{j-1}(n) + Σ_{s=0}^{n-1} C(n,s)·p^r_{j-1}(s)·J^0_{n-s}`,
/// anchored at the no-free-section column `p^r_0(n) = r^n`.
///
/// The summand uses `p^r_{j-1}(s)`, the count for the `s` elements placed
/// outside the nonempty free section, not a term constant in `s`; see the
/// `THM6_LITERAL` check for the alternative reading, which fails.
pub fn p_general_recurrence_thm6(n: u32, r: u32, j: u32) -> Count {
    assert!(j >= 1, "at least one free section is required");
    thm6_value(n, r, j)
}

fn thm6_value(n: u32, r: u32, j: u32) -> Count {
    if j == 0 {
        return power(r, n);
    }
    {
        let table = P_TABLE_REC_J.read().unwrap();
        if let Some(value) = table.get(&(r, j, n)) {
            return value.clone();
        }
    }
    let tail: Count = (0..n)
        .map(|s| binomial(n, s as i64) * thm6_value(s, r, j - 1) * fubini(n - s))
        .sum();
    let value = thm6_value(n, r, j - 1) + tail;
    P_TABLE_REC_J
        .write()
        .unwrap()
        .entry((r, j, n))
        .or_insert(value)
        .clone()
}

/// `p^r_j(n)` by iterating the bar-doubling step
/// `p^{r+1}_j(n) = 2·p^r_j(n) − p^r_{j-1}(n)` from the unrestricted column
/// `p^0_j(n) = J^{j-1}_n`, with `p^r_0(n) = r^n`.
pub fn p_via_theorem7(n: u32, r: u32, j: u32) -> Count {
    assert!(j >= 1, "at least one free section is required");
    theorem7_value(n, r, j)
}

fn theorem7_value(n: u32, r: u32, j: u32) -> Count {
    if j == 0 {
        return power(r, n);
    }
    if r == 0 {
        return j_recurrence(n, j - 1);
    }
    let doubled = theorem7_value(n, r - 1, j) * 2u32;
    let overlap = theorem7_value(n, r - 1, j - 1);
    doubled
        .checked_sub(&overlap)
        .expect("2·p^r_j(n) dominates p^r_{j-1}(n)")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::count;

    #[test]
    fn fubini_golden_sequence() {
        let expected = [1u64, 1, 3, 13, 75, 541];
        for (n, &want) in expected.iter().enumerate() {
            assert_eq!(fubini(n as u32), count(want));
        }
    }

    #[test]
    fn closed_form_small_values() {
        assert_eq!(j_closed_form(0, 3), count(1));
        assert_eq!(j_closed_form(2, 1), count(8));
        assert_eq!(j_closed_form(3, 1), count(44));
    }

    #[test]
    fn recurrence_small_values() {
        assert_eq!(j_recurrence(2, 1), j_closed_form(2, 1));
        assert_eq!(j_recurrence(4, 0), count(75));
        assert_eq!(j_recurrence(1, 2), count(3));
        // The empty arrangement is the single member of every n = 0 cell.
        for k in 0..=6 {
            assert_eq!(j_recurrence(0, k), count(1));
        }
    }

    #[test]
    fn weak_compositions_are_lexicographic_and_complete() {
        let all: Vec<Vec<u32>> = WeakCompositions::new(2, 3).collect();
        assert_eq!(
            all,
            vec![
                vec![0, 0, 2],
                vec![0, 1, 1],
                vec![0, 2, 0],
                vec![1, 0, 1],
                vec![1, 1, 0],
                vec![2, 0, 0],
            ]
        );
        // C(n + parts - 1, parts - 1) compositions in total.
        let n = 6u32;
        let parts = 4usize;
        let total = WeakCompositions::new(n, parts).count();
        assert_eq!(count(total as u64), binomial(n + parts as u32 - 1, parts as i64 - 1));
    }

    #[test]
    fn multinomial_route_matches_closed_form() {
        for n in 0..=6 {
            assert_eq!(j_multinomial(n, 0), fubini(n));
        }
        assert_eq!(j_multinomial(2, 1), count(8));
        assert_eq!(j_multinomial(3, 2), j_closed_form(3, 2));
    }

    #[test]
    fn p_multinomial_small_values() {
        let free = RestrictionProfile::all_free(1);
        for n in 0..=6 {
            assert_eq!(p_multinomial(n, 0, 1, &free).unwrap(), fubini(n));
        }
        let rf: RestrictionProfile = "R,F".parse().unwrap();
        assert_eq!(p_multinomial(2, 1, 1, &rf).unwrap(), count(6));
        let rfr: RestrictionProfile = "R,F,R".parse().unwrap();
        assert_eq!(p_multinomial(2, 2, 1, &rfr).unwrap(), count(11));
    }

    #[test]
    fn p_multinomial_rejects_mismatched_profile() {
        let rf: RestrictionProfile = "R,F".parse().unwrap();
        assert!(p_multinomial(3, 2, 1, &rf).is_err());
    }

    #[test]
    fn no_free_sections_collapse_to_plain_powers() {
        // Every element independently picks one of the r single-block
        // sections, so the convolution must reduce to r^n.
        for r in 1..=3u32 {
            let profile = RestrictionProfile::canonical(r, 0).unwrap();
            for n in 0..=6u32 {
                assert_eq!(p_multinomial(n, r, 0, &profile).unwrap(), power(r, n));
            }
        }
    }

    #[test]
    fn theorem4_small_values() {
        assert_eq!(p_via_theorem4(1, 1), count(2));
        assert_eq!(p_via_theorem4(3, 1), count(26));
        assert_eq!(p_via_theorem4(3, 2), count(51));
    }

    #[test]
    fn theorem5_small_values() {
        for k in 0..=4 {
            assert_eq!(p_via_theorem5(0, k), count(1));
        }
        assert_eq!(p_via_theorem5(2, 0), count(6));
        assert_eq!(p_via_theorem5(2, 0), p_via_theorem4(2, 1));
        assert_eq!(p_via_theorem5(3, 1), count(51));
        assert_eq!(p_via_theorem5(3, 1), p_via_theorem4(3, 2));
    }

    #[test]
    fn lemma1_small_values() {
        assert_eq!(p_via_lemma1(1, 2), count(3));
        assert_eq!(p_via_lemma1(2, 2), count(11));
        assert_eq!(p_via_lemma1(3, 1), p_via_theorem4(3, 1));
    }

    #[test]
    fn thm8_recurrence_values() {
        for n in 0..=6 {
            assert_eq!(p_general_recurrence_thm8(n, 0, 1), fubini(n));
        }
        assert_eq!(p_general_recurrence_thm8(2, 1, 1), count(6));
        // p^0_2(n) = J^1_n = 1, 2, 8:
        // p^1_2(2) = 8 + C(2,0)·1 + C(2,1)·2 = 13.
        assert_eq!(p_general_recurrence_thm8(2, 1, 2), count(13));
    }

    #[test]
    fn thm6_recurrence_values() {
        assert_eq!(p_general_recurrence_thm6(2, 1, 1), count(6));
        assert_eq!(p_general_recurrence_thm6(3, 2, 1), count(51));
        for n in 0..=8 {
            for r in 0..=3 {
                for j in 1..=3 {
                    assert_eq!(
                        p_general_recurrence_thm6(n, r, j),
                        p_general_recurrence_thm8(n, r, j),
                        "n={n} r={r} j={j}"
                    );
                }
            }
        }
    }

    #[test]
    fn theorem7_values() {
        for n in 0..=6u32 {
            let expected = fubini(n) * 2u32 - power(0, n);
            assert_eq!(p_via_theorem7(n, 1, 1), expected);
        }
        assert_eq!(p_via_theorem7(3, 1, 1), count(26));
        assert_eq!(p_via_theorem7(3, 2, 1), count(51));
    }

    #[test]
    fn memo_tables_support_parallel_cell_evaluation() {
        let handles: Vec<_> = (0..8u32)
            .map(|t| {
                std::thread::spawn(move || {
                    for n in 0..=8u32 {
                        let k = (n + t) % 4;
                        assert_eq!(j_recurrence(n, k), j_closed_form(n, k));
                        assert_eq!(
                            p_general_recurrence_thm8(n, k, 1 + t % 3),
                            p_general_recurrence_thm6(n, k, 1 + t % 3)
                        );
                    }
                })
            })
            .collect();
        for h in handles {
            h.join().unwrap();
        }
    }

    #[test]
    fn monotone_in_bars_and_restrictions() {
        for n in 1..=6 {
            for k in 0..4 {
                assert!(j_closed_form(n, k) < j_closed_form(n, k + 1));
            }
            for j in 1..=3 {
                for r in 0..4 {
                    assert!(
                        p_general_recurrence_thm8(n, r, j)
                            < p_general_recurrence_thm8(n, r + 1, j)
                    );
                }
            }
        }
    }
}
