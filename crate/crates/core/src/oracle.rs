//! Brute-force enumeration used to certify the closed-form count and the
//! placement reconstruction.

use std::fmt;

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::circle::{CircleAngle, Degree};
use crate::count::count_sets;
use crate::error::Result;
use crate::orbit::{periodic_cycles, RotationNumber, RotationalOrbit, DEFAULT_BUDGET};
use crate::rotset::{enumerate_sets, validate_set, RotationalSet};

/// One periodic orbit of exact period `q`, spatially sorted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodicOrbit {
    pub points: Vec<CircleAngle>,
    pub rotation: Option<RotationNumber>,
}

/// Every orbit of exact period `q`, tagged with its rotation number when
/// rotational. Sorted by smallest point.
pub fn brute_force_orbits(d: Degree, q: u32) -> Result<Vec<PeriodicOrbit>> {
    brute_force_orbits_with_budget(d, q, DEFAULT_BUDGET)
}

pub fn brute_force_orbits_with_budget(d: Degree, q: u32, budget: u64) -> Result<Vec<PeriodicOrbit>> {
    Ok(periodic_cycles(d, q, budget)?
        .into_iter()
        .map(|c| PeriodicOrbit {
            points: c.angles(),
            rotation: c.rotation,
        })
        .collect())
}

/// All `k`-subsets of rotational orbits with rotation `rot` whose union
/// validates, sorted by point list.
pub fn brute_force_sets(d: Degree, rot: RotationNumber, k: usize) -> Result<Vec<RotationalSet>> {
    brute_force_sets_with_budget(d, rot, k, DEFAULT_BUDGET)
}

pub fn brute_force_sets_with_budget(
    d: Degree,
    rot: RotationNumber,
    k: usize,
    budget: u64,
) -> Result<Vec<RotationalSet>> {
    let orbits: Vec<RotationalOrbit> = brute_force_orbits_with_budget(d, rot.q(), budget)?
        .into_iter()
        .filter(|o| o.rotation == Some(rot))
        .map(|o| {
            RotationalOrbit::from_point(&o.points[0], d)
                .expect("swept points are periodic")
                .expect("tagged rotational")
        })
        .collect();
    let mut sets: Vec<RotationalSet> = orbits
        .iter()
        .cloned()
        .combinations(k)
        .par_bridge()
        .filter_map(|subset| validate_set(&subset).ok())
        .collect();
    sets.sort_by(|a, b| a.points().cmp(b.points()));
    Ok(sets)
}

/// Outcome for one `(d, p/q, k)` tuple.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TupleRecord {
    pub d: u32,
    pub p: u32,
    pub q: u32,
    pub k: u32,
    /// Closed-form count, as a decimal string.
    pub formula: String,
    pub brute_force: u64,
    pub enumerated: u64,
    /// Enumerated and brute-force sets agree as point sets.
    pub sets_match: bool,
    pub error: Option<String>,
}

impl TupleRecord {
    pub fn counts_agree(&self) -> bool {
        self.formula == self.brute_force.to_string() && self.brute_force == self.enumerated
    }

    pub fn green(&self) -> bool {
        self.error.is_none() && self.counts_agree() && self.sets_match
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub records: Vec<TupleRecord>,
    pub tuples: usize,
    pub mismatches: usize,
}

impl OracleReport {
    pub fn from_records(mut records: Vec<TupleRecord>) -> Self {
        records.sort_by_key(|r| (r.d, r.q, r.p, r.k));
        let mismatches = records.iter().filter(|r| !r.green()).count();
        OracleReport {
            tuples: records.len(),
            mismatches,
            records,
        }
    }

    /// Concatenates two reports.
    pub fn merge(self, other: OracleReport) -> Self {
        Self::from_records(self.records.into_iter().chain(other.records).collect())
    }

    pub fn green(&self) -> bool {
        self.mismatches == 0 && self.records.iter().all(TupleRecord::green)
    }

    pub fn offending(&self) -> impl Iterator<Item = &TupleRecord> {
        self.records.iter().filter(|r| !r.green())
    }

    /// For every `(d, q, k)`, all numerators `p` give the same counts.
    pub fn p_independent(&self) -> bool {
        self.records
            .iter()
            .chunk_by(|r| (r.d, r.q, r.k))
            .into_iter()
            .all(|(_, group)| group.map(|r| (&r.formula, r.brute_force, r.enumerated)).all_equal())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

impl fmt::Display for OracleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{:>3} {:>7} {:>3} {:>12} {:>12} {:>12} {:>6}",
            "d", "p/q", "k", "formula", "brute", "enumerated", "status"
        )?;
        for r in &self.records {
            writeln!(
                f,
                "{:>3} {:>7} {:>3} {:>12} {:>12} {:>12} {:>6}",
                r.d,
                format!("{}/{}", r.p, r.q),
                r.k,
                r.formula,
                r.brute_force,
                r.enumerated,
                if r.green() { "ok" } else { "FAIL" }
            )?;
            if let Some(e) = &r.error {
                writeln!(f, "    error: {e}")?;
            }
        }
        write!(
            f,
            "{} tuples, {} mismatches: {}",
            self.tuples,
            self.mismatches,
            if self.green() { "GREEN" } else { "RED" }
        )
    }
}

/// Compares formula, brute force and placement enumeration for a single tuple.
pub fn check_tuple(d: Degree, rot: RotationNumber, k: usize, budget: u64) -> Result<TupleRecord> {
    let formula = count_sets(d.get(), rot.q(), k as u32).to_string();
    let brute = brute_force_sets_with_budget(d, rot, k, budget)?;
    let mut record = TupleRecord {
        d: d.get(),
        p: rot.p(),
        q: rot.q(),
        k: k as u32,
        formula,
        brute_force: brute.len() as u64,
        enumerated: 0,
        sets_match: false,
        error: None,
    };
    match enumerate_sets(d, rot, k) {
        Ok(sets) => {
            record.enumerated = sets.len() as u64;
            record.sets_match = sets.iter().map(RotationalSet::points).eq(brute.iter().map(RotationalSet::points));
        }
        Err(e) => record.error = Some(e.to_string()),
    }
    Ok(record)
}

/// Full sweep over `2 <= d <= d_max`, `1 <= q <= q_max`, all `p` coprime to
/// `q`, and `1 <= k <= d - 1`.
pub fn cross_check(d_max: u32, q_max: u32) -> Result<OracleReport> {
    let pairs: Vec<(u32, u32)> = (2..=d_max).cartesian_product(1..=q_max).collect();
    cross_check_pairs(&pairs, DEFAULT_BUDGET)
}

/// Sweep over explicit `(d, q)` pairs.
pub fn cross_check_pairs(pairs: &[(u32, u32)], budget: u64) -> Result<OracleReport> {
    let mut tuples = Vec::new();
    for &(d, q) in pairs {
        let degree = Degree::new(d)?;
        for rot in RotationNumber::with_denominator(q) {
            for k in 1..d as usize {
                tuples.push((degree, rot, k));
            }
        }
    }
    let records = tuples
        .into_par_iter()
        .map(|(d, rot, k)| check_tuple(d, rot, k, budget))
        .collect::<Result<Vec<_>>>()?;
    Ok(OracleReport::from_records(records))
}
