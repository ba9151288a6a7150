//! Machine checks for every counting identity and conjecture in the catalog,
//! swept over configurable parameter ranges in exact arithmetic.
//!
//! Each identity pairs a route under test (`lhs`) with an independent
//! reference (`rhs`); sweeps walk cells in lexicographic parameter order and
//! stop at the first mismatch, so a reported counterexample is the smallest
//! one. Conjecture checks are range checks, not proofs.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::Signed;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::counting::{
    fubini, j_closed_form, j_multinomial, j_recurrence, p_general_recurrence_thm6,
    p_general_recurrence_thm8, p_multinomial, p_via_lemma1, p_via_theorem4, p_via_theorem5,
    p_via_theorem7,
};
use crate::egf::general_series;
use crate::enumerate::{
    enumerate_barred_with_ceiling, enumerate_restricted_with_ceiling, DEFAULT_CEILING,
};
use crate::exact::{binomial, power, Count, Rational};
use crate::profile::RestrictionProfile;

/// Largest `n` the exhaustive chain oracle accepts.
pub const CHAIN_ORACLE_MAX_N: u32 = 5;

/// The checkable identities. `THM6_LITERAL` is the as-stated reading of the
/// free-section recurrence whose summand does not depend on the selected
/// subset size; it is expected to fail and is reported informationally.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IdentityId {
    Thm1VsEnum,
    Thm2,
    Eq1,
    Thm3Egf,
    Eq2VsEnum,
    Eq4Egf,
    Thm4,
    Thm5,
    Lemma1,
    Lemma2,
    Conj1,
    Eq7VsEnum,
    Eq8Egf,
    Thm6,
    Thm6Literal,
    Thm7,
    Thm8,
    Conj2,
    ChainsK2,
}

impl IdentityId {
    /// Catalog order used by `verify all`.
    pub const ALL: [IdentityId; 19] = [
        IdentityId::Thm1VsEnum,
        IdentityId::Thm2,
        IdentityId::Eq1,
        IdentityId::Thm3Egf,
        IdentityId::Eq2VsEnum,
        IdentityId::Eq4Egf,
        IdentityId::Thm4,
        IdentityId::Thm5,
        IdentityId::Lemma1,
        IdentityId::Lemma2,
        IdentityId::Conj1,
        IdentityId::Eq7VsEnum,
        IdentityId::Eq8Egf,
        IdentityId::Thm6,
        IdentityId::Thm6Literal,
        IdentityId::Thm7,
        IdentityId::Thm8,
        IdentityId::Conj2,
        IdentityId::ChainsK2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IdentityId::Thm1VsEnum => "THM1_VS_ENUM",
            IdentityId::Thm2 => "THM2",
            IdentityId::Eq1 => "EQ1",
            IdentityId::Thm3Egf => "THM3_EGF",
            IdentityId::Eq2VsEnum => "EQ2_VS_ENUM",
            IdentityId::Eq4Egf => "EQ4_EGF",
            IdentityId::Thm4 => "THM4",
            IdentityId::Thm5 => "THM5",
            IdentityId::Lemma1 => "LEMMA1",
            IdentityId::Lemma2 => "LEMMA2",
            IdentityId::Conj1 => "CONJ1",
            IdentityId::Eq7VsEnum => "EQ7_VS_ENUM",
            IdentityId::Eq8Egf => "EQ8_EGF",
            IdentityId::Thm6 => "THM6",
            IdentityId::Thm6Literal => "THM6_LITERAL",
            IdentityId::Thm7 => "THM7",
            IdentityId::Thm8 => "THM8",
            IdentityId::Conj2 => "CONJ2",
            IdentityId::ChainsK2 => "CHAINS_K2",
        }
    }

    /// An informational check documents a known-bad statement; its FAIL does
    /// not gate exit status.
    pub fn informational(self) -> bool {
        matches!(self, IdentityId::Thm6Literal)
    }
}

impl fmt::Display for IdentityId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IdentityId {
    type Err = VerifyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        IdentityId::ALL
            .into_iter()
            .find(|id| id.name() == s)
            .ok_or_else(|| VerifyError::UnknownIdentity(s.to_string()))
    }
}

impl Serialize for IdentityId {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for IdentityId {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(D::Error::custom)
    }
}

/// Inclusive upper bounds for the sweep parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ranges {
    pub n_max: u32,
    pub k_max: u32,
    pub r_max: u32,
    pub j_max: u32,
}

impl Ranges {
    /// Desk-scale defaults used by `verify all`.
    pub fn desk_scale() -> Self {
        Ranges {
            n_max: 6,
            k_max: 3,
            r_max: 3,
            j_max: 3,
        }
    }
}

/// One verification request: an identity and the ranges to sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentitySpec {
    pub id: IdentityId,
    pub ranges: Ranges,
    pub ceiling: u64,
}

impl IdentitySpec {
    pub fn new(id: IdentityId, ranges: Ranges) -> Self {
        Self {
            id,
            ranges,
            ceiling: DEFAULT_CEILING,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
    #[error(
        "identity {id} over the requested range would enumerate {predicted} arrangements, \
         above the ceiling {ceiling}"
    )]
    EnumerationTooLarge {
        id: IdentityId,
        predicted: Count,
        ceiling: u64,
    },
    #[error(
        "chain oracle is exhaustive and limited to n ≤ {max}; n = {requested} predicts \
         {predicted} chains"
    )]
    ChainOracleTooLarge {
        requested: u32,
        max: u32,
        predicted: Count,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Status {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
}

mod count_as_decimal {
    use super::*;

    pub fn serialize<S: Serializer>(value: &Count, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&value.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(deserializer: D) -> Result<Count, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(D::Error::custom)
    }
}

/// Smallest violating cell of a failed sweep, with both sides' exact values
/// in decimal.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub params: BTreeMap<String, u32>,
    #[serde(with = "count_as_decimal")]
    pub lhs: Count,
    #[serde(with = "count_as_decimal")]
    pub rhs: Count,
}

/// Outcome of one identity sweep. `status` is FAIL exactly when a
/// counterexample is present.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub identity: IdentityId,
    pub status: Status,
    pub cells_checked: u64,
    pub counterexample: Option<Counterexample>,
    pub elapsed_ms: u64,
}

/// One sweep cell: ordered (name, value) parameters.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Cell {
    pub params: Vec<(&'static str, u32)>,
}

impl Cell {
    fn get(&self, name: &str) -> u32 {
        self.params
            .iter()
            .find(|(p, _)| *p == name)
            .map(|(_, v)| *v)
            .expect("cell parameter present")
    }
}

pub(crate) type Route = Box<dyn Fn(&Cell) -> Count>;

/// A planned sweep: cells in lexicographic order plus the two routes to
/// compare on each cell.
pub(crate) struct CheckPlan {
    pub cells: Vec<Cell>,
    pub lhs: Route,
    pub rhs: Route,
}

fn grid2(name_a: &'static str, max_a: u32, name_b: &'static str, max_b: u32) -> Vec<Cell> {
    grid2_from(name_a, 0, max_a, name_b, 0, max_b)
}

fn grid2_from(
    name_a: &'static str,
    min_a: u32,
    max_a: u32,
    name_b: &'static str,
    min_b: u32,
    max_b: u32,
) -> Vec<Cell> {
    let mut cells = Vec::new();
    for a in min_a..=max_a {
        for b in min_b..=max_b {
            cells.push(Cell {
                params: vec![(name_a, a), (name_b, b)],
            });
        }
    }
    cells
}

fn grid_nrj(ranges: &Ranges, n_min: u32, r_min: u32, j_min: u32) -> Vec<Cell> {
    let mut cells = Vec::new();
    for n in n_min..=ranges.n_max {
        for r in r_min..=ranges.r_max {
            for j in j_min..=ranges.j_max {
                cells.push(Cell {
                    params: vec![("n", n), ("r", r), ("j", j)],
                });
            }
        }
    }
    cells
}

/// `p^k_n` by the plain route: `J^0_n` for `k = 0`, otherwise the binomial
/// formula with `k^{n-s}`.
fn p_one_free(n: u32, k: u32) -> Count {
    if k == 0 {
        fubini(n)
    } else {
        p_via_theorem4(n, k)
    }
}

/// `p^k_n` by the definitional convolution over a canonical one-free profile.
fn p_one_free_reference(n: u32, k: u32) -> Count {
    let profile = RestrictionProfile::one_free(k);
    p_multinomial(n, k, 1, &profile).expect("canonical profile matches (k, 1)")
}

/// `p^r_j(n)` by the definitional convolution over a canonical profile.
fn p_general_reference(n: u32, r: u32, j: u32) -> Count {
    let profile = RestrictionProfile::canonical(r, j).expect("r + j ≥ 1");
    p_multinomial(n, r, j, &profile).expect("canonical profile matches (r, j)")
}

/// The as-stated free-section recurrence with the summand constant in `s`:
/// `p^r_{j-1}(n) + Σ_{s=0}^{n-1} C(n,s)·p^r_{j-1}(n)·J^0_{n-s}`, all inputs
/// taken from the restricted-section recurrence.
fn thm6_literal_value(n: u32, r: u32, j: u32) -> Count {
    let prev = |x: u32| {
        if j == 1 {
            power(r, x)
        } else {
            p_general_recurrence_thm8(x, r, j - 1)
        }
    };
    let tail: Count = (0..n)
        .map(|s| binomial(n, s as i64) * prev(n) * fubini(n - s))
        .sum();
    prev(n) + tail
}

fn enumeration_budget(
    id: IdentityId,
    cells: &[Cell],
    predicted: impl Fn(&Cell) -> Count,
    ceiling: u64,
) -> Result<(), VerifyError> {
    let total: Count = cells.iter().map(predicted).sum();
    if total > Count::from(ceiling) {
        return Err(VerifyError::EnumerationTooLarge {
            id,
            predicted: total,
            ceiling,
        });
    }
    Ok(())
}

/// Builds the cell grid and both routes for an identity. Enumeration-backed
/// identities are rejected up front when the predicted total stream length
/// exceeds the ceiling.
pub(crate) fn plan(spec: &IdentitySpec) -> Result<CheckPlan, VerifyError> {
    let ranges = spec.ranges;
    let ceiling = spec.ceiling;
    let plan = match spec.id {
        IdentityId::Thm1VsEnum => {
            let cells = grid2("n", ranges.n_max, "k", ranges.k_max);
            enumeration_budget(
                spec.id,
                &cells,
                |c| j_closed_form(c.get("n"), c.get("k")),
                ceiling,
            )?;
            CheckPlan {
                cells,
                lhs: Box::new(|c| j_closed_form(c.get("n"), c.get("k"))),
                rhs: Box::new(move |c| {
                    let stream = enumerate_barred_with_ceiling(c.get("n"), c.get("k"), ceiling)
                        .expect("budget checked up front");
                    Count::from(stream.count())
                }),
            }
        }
        IdentityId::Thm2 => CheckPlan {
            cells: grid2("n", ranges.n_max, "k", ranges.k_max),
            lhs: Box::new(|c| j_recurrence(c.get("n"), c.get("k"))),
            rhs: Box::new(|c| j_closed_form(c.get("n"), c.get("k"))),
        },
        IdentityId::Eq1 => CheckPlan {
            cells: grid2("n", ranges.n_max, "k", ranges.k_max),
            lhs: Box::new(|c| j_multinomial(c.get("n"), c.get("k"))),
            rhs: Box::new(|c| j_closed_form(c.get("n"), c.get("k"))),
        },
        IdentityId::Thm3Egf => {
            let sequences: Vec<Vec<Count>> = (0..=ranges.k_max)
                .map(|k| {
                    general_series(0, k + 1, ranges.n_max as usize)
                        .integer_sequence()
                        .expect("series of counts has integral n!-coefficients")
                })
                .collect();
            CheckPlan {
                cells: grid2("n", ranges.n_max, "k", ranges.k_max),
                lhs: Box::new(move |c| {
                    sequences[c.get("k") as usize][c.get("n") as usize].clone()
                }),
                rhs: Box::new(|c| j_closed_form(c.get("n"), c.get("k"))),
            }
        }
        IdentityId::Eq2VsEnum => {
            let cells = grid2("n", ranges.n_max, "k", ranges.k_max);
            enumeration_budget(
                spec.id,
                &cells,
                |c| p_one_free_reference(c.get("n"), c.get("k")),
                ceiling,
            )?;
            CheckPlan {
                cells,
                lhs: Box::new(|c| p_one_free_reference(c.get("n"), c.get("k"))),
                rhs: Box::new(move |c| {
                    let profile = RestrictionProfile::one_free(c.get("k"));
                    let stream = enumerate_restricted_with_ceiling(c.get("n"), &profile, ceiling)
                        .expect("budget checked up front");
                    Count::from(stream.count())
                }),
            }
        }
        IdentityId::Eq4Egf => {
            let sequences: Vec<Vec<Count>> = (0..=ranges.k_max)
                .map(|k| {
                    general_series(k, 1, ranges.n_max as usize)
                        .integer_sequence()
                        .expect("series of counts has integral n!-coefficients")
                })
                .collect();
            CheckPlan {
                cells: grid2("n", ranges.n_max, "k", ranges.k_max),
                lhs: Box::new(move |c| {
                    sequences[c.get("k") as usize][c.get("n") as usize].clone()
                }),
                rhs: Box::new(|c| p_one_free(c.get("n"), c.get("k"))),
            }
        }
        IdentityId::Thm4 => CheckPlan {
            cells: grid2("n", ranges.n_max, "k", ranges.k_max),
            lhs: Box::new(|c| p_one_free(c.get("n"), c.get("k"))),
            rhs: Box::new(|c| p_one_free_reference(c.get("n"), c.get("k"))),
        },
        IdentityId::Thm5 => CheckPlan {
            cells: grid2("n", ranges.n_max, "k", ranges.k_max),
            lhs: Box::new(|c| p_via_theorem5(c.get("n"), c.get("k"))),
            rhs: Box::new(|c| p_one_free(c.get("n"), c.get("k") + 1)),
        },
        IdentityId::Lemma1 => CheckPlan {
            cells: grid2_from("n", 1, ranges.n_max, "k", 1, ranges.k_max),
            lhs: Box::new(|c| p_via_lemma1(c.get("n"), c.get("k"))),
            rhs: Box::new(|c| p_one_free(c.get("n"), c.get("k"))),
        },
        IdentityId::Lemma2 => CheckPlan {
            cells: grid2("n", ranges.n_max, "k", ranges.k_max),
            lhs: Box::new(|c| p_general_recurrence_thm8(c.get("n"), c.get("k"), 1)),
            rhs: Box::new(|c| p_one_free(c.get("n"), c.get("k"))),
        },
        IdentityId::Conj1 => CheckPlan {
            cells: grid2("n", ranges.n_max, "k", ranges.k_max),
            lhs: Box::new(|c| conjecture1_exact(c.get("n"), c.get("k"))),
            rhs: Box::new(|c| p_one_free(c.get("n"), c.get("k"))),
        },
        IdentityId::Eq7VsEnum => {
            let cells = grid_nrj(&ranges, 0, 0, 1);
            enumeration_budget(
                spec.id,
                &cells,
                |c| p_general_reference(c.get("n"), c.get("r"), c.get("j")),
                ceiling,
            )?;
            CheckPlan {
                cells,
                lhs: Box::new(|c| p_general_reference(c.get("n"), c.get("r"), c.get("j"))),
                rhs: Box::new(move |c| {
                    let profile = RestrictionProfile::canonical(c.get("r"), c.get("j"))
                        .expect("r + j ≥ 1");
                    let stream = enumerate_restricted_with_ceiling(c.get("n"), &profile, ceiling)
                        .expect("budget checked up front");
                    Count::from(stream.count())
                }),
            }
        }
        IdentityId::Eq8Egf => {
            let mut sequences = BTreeMap::new();
            for r in 0..=ranges.r_max {
                for j in 1..=ranges.j_max {
                    sequences.insert(
                        (r, j),
                        general_series(r, j, ranges.n_max as usize)
                            .integer_sequence()
                            .expect("series of counts has integral n!-coefficients"),
                    );
                }
            }
            CheckPlan {
                cells: grid_nrj(&ranges, 0, 0, 1),
                lhs: Box::new(move |c| {
                    sequences[&(c.get("r"), c.get("j"))][c.get("n") as usize].clone()
                }),
                rhs: Box::new(|c| p_general_recurrence_thm8(c.get("n"), c.get("r"), c.get("j"))),
            }
        }
        IdentityId::Thm6 => CheckPlan {
            cells: grid_nrj(&ranges, 0, 0, 1),
            lhs: Box::new(|c| p_general_recurrence_thm6(c.get("n"), c.get("r"), c.get("j"))),
            rhs: Box::new(|c| p_general_recurrence_thm8(c.get("n"), c.get("r"), c.get("j"))),
        },
        IdentityId::Thm6Literal => CheckPlan {
            // The statement's own domain: n, r, j ≥ 1.
            cells: grid_nrj(&ranges, 1, 1, 1),
            lhs: Box::new(|c| thm6_literal_value(c.get("n"), c.get("r"), c.get("j"))),
            rhs: Box::new(|c| p_general_recurrence_thm8(c.get("n"), c.get("r"), c.get("j"))),
        },
        IdentityId::Thm7 => CheckPlan {
            cells: grid_nrj(&ranges, 0, 0, 1),
            lhs: Box::new(|c| p_via_theorem7(c.get("n"), c.get("r"), c.get("j"))),
            rhs: Box::new(|c| p_general_recurrence_thm8(c.get("n"), c.get("r"), c.get("j"))),
        },
        IdentityId::Thm8 => CheckPlan {
            cells: grid_nrj(&ranges, 0, 0, 1),
            lhs: Box::new(|c| p_general_recurrence_thm8(c.get("n"), c.get("r"), c.get("j"))),
            rhs: Box::new(|c| p_general_reference(c.get("n"), c.get("r"), c.get("j"))),
        },
        IdentityId::Conj2 => CheckPlan {
            cells: grid2("n", ranges.n_max, "r", ranges.r_max),
            lhs: Box::new(|c| p_one_free(c.get("n"), c.get("r"))),
            rhs: Box::new(|c| {
                let (n, r) = (c.get("n"), c.get("r"));
                let sum: Count = (1..=n)
                    .map(|s| binomial(n, s as i64) * p_one_free(n - s, r))
                    .sum();
                sum + power(r, n)
            }),
        },
        IdentityId::ChainsK2 => {
            if ranges.n_max > CHAIN_ORACLE_MAX_N {
                return Err(VerifyError::ChainOracleTooLarge {
                    requested: ranges.n_max,
                    max: CHAIN_ORACLE_MAX_N,
                    predicted: p_one_free(ranges.n_max, 2),
                });
            }
            let cells = (0..=ranges.n_max)
                .map(|n| Cell {
                    params: vec![("n", n)],
                })
                .collect();
            CheckPlan {
                cells,
                lhs: Box::new(|c| {
                    chains_in_power_set(c.get("n")).expect("range checked up front")
                }),
                rhs: Box::new(|c| p_one_free(c.get("n"), 2)),
            }
        }
    };
    Ok(plan)
}

/// Runs a planned sweep, stopping at the first mismatch.
pub(crate) fn execute(plan: &CheckPlan) -> (Status, u64, Option<Counterexample>) {
    let mut cells_checked = 0u64;
    for cell in &plan.cells {
        cells_checked += 1;
        let lhs = (plan.lhs)(cell);
        let rhs = (plan.rhs)(cell);
        if lhs != rhs {
            let params = cell
                .params
                .iter()
                .map(|(name, value)| (name.to_string(), *value))
                .collect();
            return (
                Status::Fail,
                cells_checked,
                Some(Counterexample { params, lhs, rhs }),
            );
        }
    }
    (Status::Pass, cells_checked, None)
}

/// Evaluates both sides of the named identity at every cell in range,
/// stopping at the first failure.
pub fn check_identity(spec: &IdentitySpec) -> Result<VerificationReport, VerifyError> {
    let started = Instant::now();
    let plan = plan(spec)?;
    let (status, cells_checked, counterexample) = execute(&plan);
    debug_assert_eq!(status == Status::Fail, counterexample.is_some());
    Ok(VerificationReport {
        identity: spec.id,
        status,
        cells_checked,
        counterexample,
        elapsed_ms: started.elapsed().as_millis() as u64,
    })
}

/// Exact value of `(1/2)·Σ_{s≥0} (k+s)^n / 2^s`. Expanding `(k+s)^n`
/// binomially and applying the geometric Stirling transform at `x = 1/2`
/// collapses the series to `Σ_t C(n,t)·k^{n-t}·J^0_t`, an integer.
pub fn conjecture1_exact(n: u32, k: u32) -> Count {
    (0..=n)
        .map(|t| binomial(n, t as i64) * power(k, n - t) * fubini(t))
        .sum()
}

fn series_term(n: u32, k: u32, s: u64) -> Rational {
    let numer = BigInt::from(Count::from(k as u64 + s).pow(n));
    let denom = BigInt::from(1u8) << s;
    Rational::new(numer, denom)
}

/// Exact-rational bracket `(lower, upper)` around the series value of
/// `(1/2)·Σ_{s≥0} (k+s)^n / 2^s`, with `upper - lower ≤ tolerance`.
///
/// The partial sum stops at an `N` where the term ratio satisfies
/// `(k+s+1)^n / (k+s)^n ≤ √2` for all `s ≥ N` (checked as the integer
/// inequality `(k+N+1)^{2n} ≤ 2·(k+N)^{2n}`; the ratio is decreasing in
/// `s`). Past that point terms at least halve every two steps, so the tail
/// is bounded by `2·(a_{N+1} + a_{N+2})` and the bracket width by
/// `a_{N+1} + a_{N+2}`, which is driven below the tolerance.
pub fn conjecture1_truncated(n: u32, k: u32, tolerance: &Rational) -> (Rational, Rational) {
    assert!(
        tolerance > &Rational::from(BigInt::from(0)),
        "tolerance must be positive"
    );
    let ratio_bounded = |s: u64| {
        let base = Count::from(k as u64 + s);
        let next = Count::from(k as u64 + s + 1);
        next.pow(2 * n) <= base.pow(2 * n) * 2u32
    };
    let mut partial = Rational::from(BigInt::from(0));
    let mut s = 0u64;
    loop {
        partial += series_term(n, k, s);
        if ratio_bounded(s) {
            let width = series_term(n, k, s + 1) + series_term(n, k, s + 2);
            if &width <= tolerance {
                let lower = partial / BigInt::from(2);
                let upper = &lower + &width;
                return (lower, upper);
            }
        }
        s += 1;
    }
}

/// The unique integer inside the closed interval, when exactly one exists.
pub fn bracketed_integer(lower: &Rational, upper: &Rational) -> Option<Count> {
    let lo = lower.ceil().to_integer();
    let hi = upper.floor().to_integer();
    if lo == hi && !lo.is_negative() {
        Some(lo.magnitude().clone())
    } else {
        None
    }
}

/// Checks `p^r_1(n) = Σ_{s=1}^{n} C(n,s)·p^r_1(n-s) + r^n` for all
/// `n ≤ n_max`, `r ≤ r_max`.
pub fn check_conjecture2(n_max: u32, r_max: u32) -> VerificationReport {
    let spec = IdentitySpec::new(
        IdentityId::Conj2,
        Ranges {
            n_max,
            k_max: 0,
            r_max,
            j_max: 0,
        },
    );
    check_identity(&spec).expect("conjecture 2 sweep needs no enumeration budget")
}

/// Counts nonempty chains (totally ordered by strict inclusion, length ≥ 1,
/// ∅ and the full set allowed as members) in the power set of `{1..n}` by
/// exhaustively walking every chain extension.
pub fn chains_in_power_set(n: u32) -> Result<Count, VerifyError> {
    if n > CHAIN_ORACLE_MAX_N {
        return Err(VerifyError::ChainOracleTooLarge {
            requested: n,
            max: CHAIN_ORACLE_MAX_N,
            predicted: p_one_free(n, 2),
        });
    }
    let subsets: Vec<u32> = (0..(1u32 << n)).collect();
    // Chains with minimum `mask`: one DFS node per chain.
    fn extensions(mask: u32, subsets: &[u32]) -> u64 {
        let mut total = 1;
        for &t in subsets {
            if t != mask && t & mask == mask {
                total += extensions(t, subsets);
            }
        }
        total
    }
    let total: u64 = subsets.iter().map(|&s| extensions(s, &subsets)).sum();
    Ok(Count::from(total))
}
