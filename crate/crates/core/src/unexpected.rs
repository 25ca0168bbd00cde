//! Unexpected curves from freeness data, and the matching failures of the
//! strong Lefschetz property (SLP) for powers of linear forms.
//!
//! For `d` dual points `Z` with a free line arrangement `A_Z` of exponents
//! `(d1, d − 1 − d1)`, unexpected curves exist iff `m(A_Z) ≤ d1 + 1 < d/2`,
//! and then exactly in degrees `d1 < u ≤ d − d1 − 2`.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UnexpectedReport {
    pub d: u32,
    pub d1: u32,
    pub max_mult: u32,
    pub admits: bool,
    pub degrees: BTreeSet<u32>,
}

pub fn unexpected_degrees(d: u32, d1: u32, max_mult: u32) -> UnexpectedReport {
    // d1 + 1 < d/2, kept in integers
    let admits = max_mult <= d1 + 1 && 2 * (d1 + 1) < d;
    let degrees = if admits { (d1 + 1..=d - d1 - 2).collect() } else { BTreeSet::new() };
    UnexpectedReport { d, d1, max_mult, admits, degrees }
}

/// Failure of multiplication by `L^range` in degree `degree`, stated with
/// the theorem's index `j` (an unexpected curve of degree `j + 1`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SlpFailure {
    pub range: u32,
    pub j: u32,
    pub degree: u32,
}

impl fmt::Display for SlpFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "fails the SLP in range {} and degree {} (j = {})", self.range, self.degree, self.j)
    }
}

pub fn slp_failures(report: &UnexpectedReport) -> Vec<SlpFailure> {
    report.degrees.iter().map(|&u| SlpFailure { range: 2, j: u - 1, degree: u - 2 }).collect()
}

impl fmt::Display for UnexpectedReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d = {}, d1 = {}, m(A_Z) = {}: ", self.d, self.d1, self.max_mult)?;
        if !self.admits {
            return write!(f, "no unexpected curves");
        }
        let degs: Vec<String> = self.degrees.iter().map(u32::to_string).collect();
        write!(f, "unexpected curves in degrees {{{}}}", degs.join(", "))
    }
}
