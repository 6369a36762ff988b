//! Rotational sets: unions of `k` rotational orbits with a common rotation
//! number whose `q*k` points interleave into `q` groups of `k`.
//!
//! A rotational set is determined by where the `d - 2` free preimages of 0
//! sit relative to its points (the principal preimage and 0 itself are fixed).
//! [`GapPlacement`] records those positions as gap labels and
//! [`set_from_placement`] rebuilds the set from them; [`enumerate_placements`]
//! lists every admissible placement.

use std::collections::BTreeSet;
use std::fmt;

use itertools::Itertools;
use rayon::prelude::*;

use crate::circle::{CircleAngle, Degree, Itinerary};
use crate::error::{Error, Result, SetCondition};
use crate::orbit::{enumerate_rotational_orbits_with_budget, RotationNumber, RotationalOrbit, DEFAULT_BUDGET};

/// Gap labels of a set with `q` groups of `k` points.
///
/// Label `g` is the gap between spatial points `g` and `g + 1` (1-based),
/// with `0` the gap after angle 0 and `q*k` the gap before it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GapClassification {
    /// Labels inside a group, `g mod k != 0`.
    pub intra: Vec<usize>,
    /// Labels between groups, `g mod k == 0`.
    pub inter: Vec<usize>,
    /// Label of the gap holding the principal preimage, `(q - p) * k`.
    pub principal: usize,
}

pub fn gap_classes(rot: RotationNumber, k: usize) -> GapClassification {
    let q = rot.q() as usize;
    let p = rot.p() as usize;
    let n = q * k;
    let (intra, inter) = (0..=n).partition(|g| g % k != 0);
    GapClassification {
        intra,
        inter,
        principal: (q - p) * k,
    }
}

/// Multiset of gap labels for the `d - 2` free preimages of 0.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GapPlacement {
    degree: Degree,
    rotation: RotationNumber,
    k: usize,
    labels: Vec<usize>,
}

impl GapPlacement {
    pub fn new(degree: Degree, rotation: RotationNumber, k: usize, mut labels: Vec<usize>) -> Result<Self> {
        labels.sort_unstable();
        let placement = GapPlacement {
            degree,
            rotation,
            k,
            labels,
        };
        placement.check()?;
        Ok(placement)
    }

    fn check(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidPlacement(msg));
        let d = self.degree.get() as usize;
        let n = self.rotation.q() as usize * self.k;
        if self.k == 0 {
            return bad("k must be positive".into());
        }
        if self.labels.len() != d - 2 {
            return bad(format!("{} labels given, expected d - 2 = {}", self.labels.len(), d - 2));
        }
        if let Some(&g) = self.labels.iter().find(|&&g| g > n) {
            return bad(format!("label {g} exceeds q*k = {n}"));
        }
        let distinct = self.distinct_intra();
        if let Some(class) = (1..self.k).find(|c| !distinct.iter().any(|g| g % self.k == *c)) {
            return bad(format!("no preimage in congruence class {class} mod {}", self.k));
        }
        let l = l_bound(self.degree.get(), self.rotation.q(), self.k as u32) as usize;
        if distinct.len() + 1 < self.k || distinct.len() > l {
            return bad(format!("{} distinct intra-group labels, outside {}..={l}", distinct.len(), self.k - 1));
        }
        Ok(())
    }

    pub fn degree(&self) -> Degree {
        self.degree
    }

    pub fn rotation(&self) -> RotationNumber {
        self.rotation
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Sorted labels with multiplicity.
    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    /// Distinct labels lying inside groups.
    pub fn distinct_intra(&self) -> Vec<usize> {
        self.labels
            .iter()
            .copied()
            .filter(|g| g % self.k != 0)
            .dedup()
            .collect()
    }
}

fn l_bound(d: u32, q: u32, k: u32) -> u32 {
    crate::count::l_bound(d, q, k)
}

/// A validated rotational set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RotationalSet {
    degree: Degree,
    rotation: RotationNumber,
    points: Vec<CircleAngle>,
    /// Sorted by smallest point; orbit `m` owns spatial indices `m, m+k, ...`.
    orbits: Vec<RotationalOrbit>,
    placement: GapPlacement,
}

impl RotationalSet {
    pub fn degree(&self) -> Degree {
        self.degree
    }

    pub fn rotation(&self) -> RotationNumber {
        self.rotation
    }

    /// Number of orbits.
    pub fn k(&self) -> usize {
        self.orbits.len()
    }

    pub fn points(&self) -> &[CircleAngle] {
        &self.points
    }

    pub fn orbits(&self) -> &[RotationalOrbit] {
        &self.orbits
    }

    pub fn placement(&self) -> &GapPlacement {
        &self.placement
    }

    /// Group `i` (0-based): the `i`-th smallest point of every orbit.
    pub fn group(&self, i: usize) -> &[CircleAngle] {
        let k = self.k();
        &self.points[i * k..(i + 1) * k]
    }

    /// Spatial indices of each group, 0-based.
    pub fn group_indices(&self) -> Vec<Vec<usize>> {
        let k = self.k();
        (0..self.rotation.q() as usize)
            .map(|i| (i * k..(i + 1) * k).collect())
            .collect()
    }

    pub fn contains_orbit(&self, orbit: &RotationalOrbit) -> bool {
        self.orbits.iter().any(|o| o == orbit)
    }

    pub fn itineraries(&self) -> Vec<Itinerary> {
        self.orbits.iter().map(|o| o.itinerary().clone()).collect()
    }

    pub fn classify_gaps(&self) -> GapClassification {
        gap_classes(self.rotation, self.k())
    }
}

impl fmt::Display for RotationalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = self.orbits.iter().map(|o| o.itinerary().to_string()).join(", ");
        write!(f, "{{{names}}}")
    }
}

/// Checks the rotational-set conditions literally on the union of `orbits`.
pub fn validate_set(orbits: &[RotationalOrbit]) -> Result<RotationalSet> {
    let first = orbits.first().ok_or(Error::EmptySet)?;
    let degree = first.degree();
    let rotation = first.rotation();
    for o in &orbits[1..] {
        if o.degree() != degree {
            return Err(Error::DegreeMismatch(degree.get(), o.degree().get()));
        }
        if o.rotation() != rotation {
            return Err(Error::RotationMismatch(rotation.to_string(), o.rotation().to_string()));
        }
    }
    let mut orbits = orbits.to_vec();
    orbits.sort_by(|a, b| a.smallest().cmp(b.smallest()));

    let mut tagged: Vec<(&CircleAngle, usize)> = orbits
        .iter()
        .enumerate()
        .flat_map(|(id, o)| o.points().iter().map(move |x| (x, id)))
        .collect();
    tagged.sort();
    if let Some(i) = tagged.windows(2).position(|w| w[0].0 == w[1].0) {
        return Err(Error::NotRotationalSet {
            condition: SetCondition::DistinctOrbits,
            position: i + 1,
        });
    }
    let k = orbits.len();
    let n = tagged.len();
    let advance = rotation.p() as usize * k;
    let mut seen = vec![false; k];
    for i in 0..n {
        let image = tagged[i].0.sigma(degree);
        let target = tagged[(i + advance) % n].0;
        if &image != target {
            let condition = if tagged.binary_search_by(|(x, _)| (*x).cmp(&image)).is_ok() {
                SetCondition::Advance
            } else {
                SetCondition::Invariance
            };
            return Err(Error::NotRotationalSet {
                condition,
                position: i + 1,
            });
        }
        seen.iter_mut().for_each(|s| *s = false);
        for j in i..i + k {
            let id = tagged[j % n].1;
            if seen[id] {
                return Err(Error::NotRotationalSet {
                    condition: SetCondition::DistinctOrbits,
                    position: i + 1,
                });
            }
            seen[id] = true;
        }
    }
    let points: Vec<CircleAngle> = tagged.into_iter().map(|(x, _)| x.clone()).collect();
    let placement = placement_of(degree, rotation, &points, k)?;
    Ok(RotationalSet {
        degree,
        rotation,
        points,
        orbits,
        placement,
    })
}

/// Reads the free preimages of 0 off a validated point set. The smallest
/// preimage in the principal gap is treated as the principal one.
fn placement_of(degree: Degree, rotation: RotationNumber, points: &[CircleAngle], k: usize) -> Result<GapPlacement> {
    let d = degree.get();
    let mut labels: Vec<usize> = (1..d)
        .map(|j| {
            let y = CircleAngle::new(j as i64, d as u64).expect("d > 0");
            points.partition_point(|x| x < &y)
        })
        .collect();
    let principal = gap_classes(rotation, k).principal;
    let slot = labels
        .iter()
        .position(|&g| g == principal)
        .ok_or_else(|| Error::InvalidPlacement(format!("no preimage of 0 in the principal gap {principal}")))?;
    labels.remove(slot);
    GapPlacement::new(degree, rotation, k, labels)
}

pub fn classify_gaps(set: &RotationalSet) -> GapClassification {
    set.classify_gaps()
}

/// Rebuilds the rotational set whose free preimages of 0 sit at `placement`.
///
/// The digit of spatial point `t` (1-based) counts the non-zero preimages of
/// 0 below it: labels `< t` plus the principal preimage when its gap is `< t`.
pub fn set_from_placement(placement: &GapPlacement) -> Result<RotationalSet> {
    let inconsistent = |reason: String| Error::ReconstructionInconsistent {
        labels: placement.labels.clone(),
        reason,
    };
    let d = placement.degree;
    let rot = placement.rotation;
    let k = placement.k;
    let q = rot.q() as usize;
    let n = q * k;
    let principal = gap_classes(rot, k).principal;
    let digits: Vec<u32> = (1..=n)
        .map(|t| {
            let below = placement.labels.partition_point(|&g| g < t);
            (below + usize::from(principal < t)) as u32
        })
        .collect();
    let jump = rot.p() as usize * k;
    let mut orbits = Vec::with_capacity(k);
    for m in 0..k {
        let word: Vec<u32> = (0..q).map(|j| digits[(m + j * jump) % n]).collect();
        let itinerary = Itinerary::periodic(d, word).map_err(|e| inconsistent(e.to_string()))?;
        let orbit = RotationalOrbit::from_itinerary(&itinerary)
            .map_err(|e| inconsistent(e.to_string()))?
            .ok_or_else(|| inconsistent(format!("{itinerary} is not rotational")))?;
        if orbit.rotation() != rot || orbit.period() != q {
            return Err(inconsistent(format!(
                "{itinerary} has rotation {} and period {}",
                orbit.rotation(),
                orbit.period()
            )));
        }
        orbits.push(orbit);
    }
    let set = validate_set(&orbits).map_err(|e| inconsistent(e.to_string()))?;
    if set.placement != *placement {
        return Err(inconsistent(format!("rebuilt set has placement {:?}", set.placement.labels)));
    }
    Ok(set)
}

/// Every admissible placement for `k` orbits with rotation `rot` under the
/// degree-`d` map, in sorted label order.
///
/// For each `i` in `k-1..=l`: an `i`-subset of the intra-group labels that
/// meets every non-zero class mod `k`, plus a multiset of `d - 2 - i` labels
/// drawn from that subset and the inter-group labels.
pub fn enumerate_placements(d: Degree, rot: RotationNumber, k: usize) -> Vec<GapPlacement> {
    let dm = d.get() as usize;
    if k == 0 || k > dm - 1 {
        return Vec::new();
    }
    let gaps = gap_classes(rot, k);
    let l = l_bound(d.get(), rot.q(), k as u32) as usize;
    let mut out = Vec::new();
    for i in (k - 1)..=l {
        for chosen in gaps.intra.iter().copied().combinations(i) {
            if !(1..k).all(|c| chosen.iter().any(|g| g % k == c)) {
                continue;
            }
            let pool: Vec<usize> = chosen.iter().chain(&gaps.inter).copied().sorted().collect();
            for extra in pool.iter().copied().combinations_with_replacement(dm - 2 - i) {
                let mut labels: Vec<usize> = chosen.iter().chain(&extra).copied().collect();
                labels.sort_unstable();
                out.push(GapPlacement {
                    degree: d,
                    rotation: rot,
                    k,
                    labels,
                });
            }
        }
    }
    out.sort();
    out
}

/// Every rotational set of `k` orbits, sorted by point list.
pub fn enumerate_sets(d: Degree, rot: RotationNumber, k: usize) -> Result<Vec<RotationalSet>> {
    let placements = enumerate_placements(d, rot, k);
    let mut sets = placements
        .par_iter()
        .map(set_from_placement)
        .collect::<Result<Vec<_>>>()?;
    sets.sort_by(|a, b| a.points.cmp(&b.points));
    if let Some(w) = sets.windows(2).find(|w| w[0].points == w[1].points) {
        return Err(Error::ReconstructionInconsistent {
            labels: w[1].placement.labels.clone(),
            reason: format!("duplicate set {}", w[1]),
        });
    }
    Ok(sets)
}

/// Rotational sets with at least two orbits that contain `orbit`.
///
/// Grows unions one orbit at a time from valid sets only; a sub-union of a
/// rotational set is again rotational, so nothing is missed.
pub fn sets_containing(orbit: &RotationalOrbit, maximal_only: bool) -> Result<Vec<RotationalSet>> {
    sets_containing_with_budget(orbit, maximal_only, DEFAULT_BUDGET)
}

pub fn sets_containing_with_budget(
    orbit: &RotationalOrbit,
    maximal_only: bool,
    budget: u64,
) -> Result<Vec<RotationalSet>> {
    let others: Vec<RotationalOrbit> = enumerate_rotational_orbits_with_budget(orbit.degree(), orbit.rotation(), budget)?
        .into_iter()
        .filter(|o| o != orbit)
        .collect();
    let mut found: Vec<(Vec<usize>, RotationalSet)> = Vec::new();
    let mut frontier: Vec<Vec<usize>> = vec![Vec::new()];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for combo in &frontier {
            let start = combo.last().map_or(0, |&j| j + 1);
            for j in start..others.len() {
                let mut members = vec![orbit.clone()];
                members.extend(combo.iter().chain([&j]).map(|&c| others[c].clone()));
                if let Ok(set) = validate_set(&members) {
                    let mut grown = combo.clone();
                    grown.push(j);
                    found.push((grown.clone(), set));
                    next.push(grown);
                }
            }
        }
        frontier = next;
    }
    if maximal_only {
        let keys: Vec<BTreeSet<usize>> = found.iter().map(|(c, _)| c.iter().copied().collect()).collect();
        let mut keep = Vec::new();
        for (i, entry) in found.into_iter().enumerate() {
            let dominated = keys.iter().any(|other| other.len() > keys[i].len() && keys[i].is_subset(other));
            if !dominated {
                keep.push(entry);
            }
        }
        found = keep;
    }
    let mut sets: Vec<RotationalSet> = found.into_iter().map(|(_, s)| s).collect();
    sets.sort_by(|a, b| a.k().cmp(&b.k()).then_with(|| a.points.cmp(&b.points)));
    Ok(sets)
}
