//! Exhaustive generation of barred preferential arrangements for small `n`:
//! the independent oracle against which every counting formula is checked.
//!
//! Streams are lazy and deterministic: section-assignment vectors are walked
//! in lexicographic order and, within each assignment, the per-section
//! arrangements in a fixed generation order. A hard ceiling on the predicted
//! count rejects requests that would enumerate forever.

use itertools::Itertools;
use num_traits::ToPrimitive;
use thiserror::Error;

use crate::counting::{j_closed_form, p_multinomial};
use crate::exact::Count;
use crate::profile::{ProfileError, RestrictionProfile, SectionKind};

/// Default ceiling on the number of arrangements a single request may yield.
pub const DEFAULT_CEILING: u64 = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EnumerateError {
    #[error("predicted count {predicted} exceeds the enumeration ceiling {ceiling}")]
    CeilingExceeded { predicted: Count, ceiling: u64 },
    #[error(transparent)]
    Profile(#[from] ProfileError),
}

/// Nonempty block of element labels, kept sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Block {
    members: Vec<u32>,
}

impl Block {
    pub fn new(mut members: Vec<u32>) -> Self {
        assert!(!members.is_empty(), "blocks are nonempty");
        members.sort_unstable();
        Self { members }
    }

    pub fn members(&self) -> &[u32] {
        &self.members
    }
}

/// One bar-delimited section: an ordered (possibly empty) list of blocks.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Section {
    blocks: Vec<Block>,
}

impl Section {
    pub fn new(blocks: Vec<Block>) -> Self {
        Self { blocks }
    }

    pub fn empty() -> Self {
        Self { blocks: Vec::new() }
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }
}

/// A barred preferential arrangement of `{1..n}`: at least one section, the
/// blocks jointly covering each element exactly once.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BarredArrangement {
    n: u32,
    sections: Vec<Section>,
}

impl BarredArrangement {
    pub fn new(n: u32, sections: Vec<Section>) -> Self {
        assert!(!sections.is_empty(), "arrangements have at least one section");
        Self { n, sections }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn sections(&self) -> &[Section] {
        &self.sections
    }

    pub fn bars(&self) -> usize {
        self.sections.len() - 1
    }

    /// Checks the structural invariants: every element of `{1..n}` appears in
    /// exactly one block, blocks are nonempty and sorted.
    pub fn validate(&self) -> Result<(), String> {
        let mut seen = vec![false; self.n as usize];
        for section in &self.sections {
            for block in section.blocks() {
                if block.members().is_empty() {
                    return Err("empty block".into());
                }
                if !block.members().windows(2).all(|w| w[0] < w[1]) {
                    return Err(format!("block {:?} not sorted strictly", block.members()));
                }
                for &label in block.members() {
                    if label == 0 || label > self.n {
                        return Err(format!("label {label} outside 1..={}", self.n));
                    }
                    if seen[label as usize - 1] {
                        return Err(format!("label {label} repeated"));
                    }
                    seen[label as usize - 1] = true;
                }
            }
        }
        if let Some(missing) = seen.iter().position(|&s| !s) {
            return Err(format!("label {} missing", missing + 1));
        }
        Ok(())
    }
}

/// Deterministic text form: blocks joined by one space within a section,
/// sections joined by `|`, empty sections rendered as nothing between
/// delimiters. Labels inside a block are concatenated digits; arrangements
/// with labels ≥ 10 fall back to comma-separated labels within each block.
pub fn canonical_text(arrangement: &BarredArrangement) -> String {
    let wide = arrangement.n >= 10;
    arrangement
        .sections
        .iter()
        .map(|section| {
            section
                .blocks()
                .iter()
                .map(|block| {
                    let labels: Vec<String> =
                        block.members().iter().map(|l| l.to_string()).collect();
                    labels.join(if wide { "," } else { "" })
                })
                .join(" ")
        })
        .join("|")
}

/// Unordered set partitions of `elements`, each partition a list of sorted
/// blocks, in a fixed recursive generation order.
fn set_partitions(elements: &[u32]) -> Vec<Vec<Block>> {
    match elements.split_first() {
        None => vec![Vec::new()],
        Some((&first, rest)) => {
            let mut out = Vec::new();
            for partition in set_partitions(rest) {
                // `first` is the smallest remaining label: new singleton
                // block first, then joining each existing block in turn.
                let mut with_singleton = Vec::with_capacity(partition.len() + 1);
                with_singleton.push(Block::new(vec![first]));
                with_singleton.extend(partition.iter().cloned());
                out.push(with_singleton);
                for i in 0..partition.len() {
                    let mut joined = partition.clone();
                    let mut members = joined[i].members().to_vec();
                    members.push(first);
                    joined[i] = Block::new(members);
                    out.push(joined);
                }
            }
            out
        }
    }
}

/// All preferential arrangements (ordered set partitions) of `elements`,
/// exactly once each: every unordered partition crossed with every ordering
/// of its blocks. The empty set yields exactly one empty section.
pub fn enumerate_ordered_set_partitions(elements: &[u32]) -> impl Iterator<Item = Section> {
    set_partitions(elements).into_iter().flat_map(|blocks| {
        let len = blocks.len();
        blocks.into_iter().permutations(len).map(Section::new)
    })
}

/// Lexicographic walk over all `sections^n` assignments of the `n` labels to
/// sections, as digit vectors.
struct SectionAssignments {
    next: Option<Vec<u32>>,
    base: u32,
}

impl SectionAssignments {
    fn new(n: u32, sections: u32) -> Self {
        debug_assert!(sections >= 1);
        Self {
            next: Some(vec![0; n as usize]),
            base: sections,
        }
    }
}

impl Iterator for SectionAssignments {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        let current = self.next.take()?;
        let mut successor = current.clone();
        let mut pos = successor.len();
        loop {
            if pos == 0 {
                break;
            }
            pos -= 1;
            successor[pos] += 1;
            if successor[pos] < self.base {
                self.next = Some(successor);
                break;
            }
            successor[pos] = 0;
        }
        Some(current)
    }
}

fn section_candidates(kind: SectionKind, elements: &[u32]) -> Vec<Section> {
    match kind {
        SectionKind::Free => enumerate_ordered_set_partitions(elements).collect(),
        SectionKind::Restricted => {
            if elements.is_empty() {
                vec![Section::empty()]
            } else {
                vec![Section::new(vec![Block::new(elements.to_vec())])]
            }
        }
    }
}

fn arrangements(
    n: u32,
    profile: RestrictionProfile,
) -> impl Iterator<Item = BarredArrangement> {
    let sections = profile.sections() as u32;
    SectionAssignments::new(n, sections).flat_map(move |assignment| {
        let mut per_section: Vec<Vec<u32>> = vec![Vec::new(); sections as usize];
        for (idx, &sec) in assignment.iter().enumerate() {
            per_section[sec as usize].push(idx as u32 + 1);
        }
        let candidates: Vec<Vec<Section>> = per_section
            .iter()
            .zip(profile.kinds())
            .map(|(elements, &kind)| section_candidates(kind, elements))
            .collect();
        candidates
            .into_iter()
            .map(|c| c.into_iter())
            .multi_cartesian_product()
            .map(move |sections| BarredArrangement::new(n, sections))
    })
}

fn check_ceiling(predicted: Count, ceiling: u64) -> Result<(), EnumerateError> {
    match predicted.to_u64() {
        Some(p) if p <= ceiling => Ok(()),
        _ => Err(EnumerateError::CeilingExceeded { predicted, ceiling }),
    }
}

/// Every barred preferential arrangement of `{1..n}` with `bars` bars,
/// exactly once, under the default ceiling.
pub fn enumerate_barred(
    n: u32,
    bars: u32,
) -> Result<impl Iterator<Item = BarredArrangement>, EnumerateError> {
    enumerate_barred_with_ceiling(n, bars, DEFAULT_CEILING)
}

pub fn enumerate_barred_with_ceiling(
    n: u32,
    bars: u32,
    ceiling: u64,
) -> Result<impl Iterator<Item = BarredArrangement>, EnumerateError> {
    check_ceiling(j_closed_form(n, bars), ceiling)?;
    Ok(arrangements(n, RestrictionProfile::all_free(bars as usize + 1)))
}

/// Every barred arrangement compatible with the profile: restricted sections
/// hold at most one block, free sections are unconstrained.
pub fn enumerate_restricted(
    n: u32,
    profile: &RestrictionProfile,
) -> Result<impl Iterator<Item = BarredArrangement>, EnumerateError> {
    enumerate_restricted_with_ceiling(n, profile, DEFAULT_CEILING)
}

pub fn enumerate_restricted_with_ceiling(
    n: u32,
    profile: &RestrictionProfile,
    ceiling: u64,
) -> Result<impl Iterator<Item = BarredArrangement>, EnumerateError> {
    let predicted = p_multinomial(
        n,
        profile.restricted_count(),
        profile.free_count(),
        profile,
    )?;
    check_ceiling(predicted, ceiling)?;
    Ok(arrangements(n, profile.clone()))
}

/// Unguarded stream for callers that bound their own consumption (for
/// example with a `take` limit); the predicted count is never computed.
pub fn enumerate_barred_unbounded(n: u32, bars: u32) -> impl Iterator<Item = BarredArrangement> {
    arrangements(n, RestrictionProfile::all_free(bars as usize + 1))
}

/// Unguarded restricted stream; see [`enumerate_barred_unbounded`].
pub fn enumerate_restricted_unbounded(
    n: u32,
    profile: &RestrictionProfile,
) -> impl Iterator<Item = BarredArrangement> {
    arrangements(n, profile.clone())
}
