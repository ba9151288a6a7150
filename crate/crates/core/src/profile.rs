//! Per-section free/restricted flags for restricted barred preferential
//! arrangements.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Whether a section may hold any preferential arrangement (`Free`)
/// or at most one block (`Restricted`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SectionKind {
    Free,
    Restricted,
}

/// Ordered per-section flags. Length is the number of sections (`bars + 1`);
/// `r` restricted and `j` free flags describe the counting family `p^r_j(n)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RestrictionProfile {
    flags: Vec<SectionKind>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProfileError {
    #[error("profile must have at least one section")]
    Empty,
    #[error(
        "profile has {actual_restricted} restricted / {actual_free} free sections, \
         expected r={expected_restricted}, j={expected_free}"
    )]
    CountMismatch {
        expected_restricted: u32,
        expected_free: u32,
        actual_restricted: u32,
        actual_free: u32,
    },
    #[error("unrecognized section flag `{0}`; expected `R` or `F`")]
    BadFlag(String),
}

impl RestrictionProfile {
    pub fn new(flags: Vec<SectionKind>) -> Result<Self, ProfileError> {
        if flags.is_empty() {
            return Err(ProfileError::Empty);
        }
        Ok(Self { flags })
    }

    /// `sections` free sections, no restriction active anywhere.
    pub fn all_free(sections: usize) -> Self {
        assert!(sections >= 1, "a profile needs at least one section");
        Self {
            flags: vec![SectionKind::Free; sections],
        }
    }

    /// Canonical profile with `restricted` restricted sections followed by
    /// `free` free sections.
    pub fn canonical(restricted: u32, free: u32) -> Result<Self, ProfileError> {
        let mut flags = vec![SectionKind::Restricted; restricted as usize];
        flags.extend(std::iter::repeat_n(SectionKind::Free, free as usize));
        Self::new(flags)
    }

    /// Canonical single-free-section profile: `restricted` restricted
    /// sections, then one free section.
    pub fn one_free(restricted: u32) -> Self {
        Self::canonical(restricted, 1).expect("one free section is always present")
    }

    pub fn sections(&self) -> usize {
        self.flags.len()
    }

    pub fn kinds(&self) -> &[SectionKind] {
        &self.flags
    }

    pub fn restricted_count(&self) -> u32 {
        self.flags
            .iter()
            .filter(|k| **k == SectionKind::Restricted)
            .count() as u32
    }

    pub fn free_count(&self) -> u32 {
        self.flags
            .iter()
            .filter(|k| **k == SectionKind::Free)
            .count() as u32
    }

    /// Rejects the profile unless it has exactly `restricted` restricted and
    /// `free` free flags.
    pub fn expect_counts(&self, restricted: u32, free: u32) -> Result<(), ProfileError> {
        let (r, j) = (self.restricted_count(), self.free_count());
        if r != restricted || j != free {
            return Err(ProfileError::CountMismatch {
                expected_restricted: restricted,
                expected_free: free,
                actual_restricted: r,
                actual_free: j,
            });
        }
        Ok(())
    }
}

impl FromStr for RestrictionProfile {
    type Err = ProfileError;

    /// Parses comma-separated flags, e.g. `R,F,R`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut flags = Vec::new();
        for token in s.split(',') {
            match token.trim() {
                "R" | "r" => flags.push(SectionKind::Restricted),
                "F" | "f" => flags.push(SectionKind::Free),
                other => return Err(ProfileError::BadFlag(other.to_string())),
            }
        }
        Self::new(flags)
    }
}

impl fmt::Display for RestrictionProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rendered: Vec<&str> = self
            .flags
            .iter()
            .map(|k| match k {
                SectionKind::Free => "F",
                SectionKind::Restricted => "R",
            })
            .collect();
        write!(f, "{}", rendered.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_display_round_trip() {
        let p: RestrictionProfile = "R,F,R".parse().unwrap();
        assert_eq!(p.sections(), 3);
        assert_eq!(p.restricted_count(), 2);
        assert_eq!(p.free_count(), 1);
        assert_eq!(p.to_string(), "R,F,R");
    }

    #[test]
    fn rejects_empty_and_bad_flags() {
        assert_eq!(RestrictionProfile::new(vec![]), Err(ProfileError::Empty));
        assert!(matches!(
            "R,x".parse::<RestrictionProfile>(),
            Err(ProfileError::BadFlag(_))
        ));
    }

    #[test]
    fn count_validation() {
        let p = RestrictionProfile::one_free(2);
        assert!(p.expect_counts(2, 1).is_ok());
        assert!(matches!(
            p.expect_counts(1, 2),
            Err(ProfileError::CountMismatch { .. })
        ));
    }

    #[test]
    fn canonical_layout() {
        let p = RestrictionProfile::canonical(1, 2).unwrap();
        assert_eq!(
            p.kinds(),
            &[SectionKind::Restricted, SectionKind::Free, SectionKind::Free]
        );
        assert!(RestrictionProfile::canonical(0, 0).is_err());
    }
}
