//! Periodic orbits, rotation numbers and principal preimages.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;

use crate::circle::{CircleAngle, Degree, Itinerary};
use crate::error::{Error, Result};

/// Default cap on `d^q` for exhaustive sweeps over `m/(d^q - 1)`.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Rotation number `p/q` in lowest terms with `0 <= p < q`.
///
/// `0/1` is admitted and describes fixed points.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RotationNumber {
    p: u32,
    q: u32,
}

impl RotationNumber {
    /// Reduces `p` mod `q`, then requires `gcd(p, q) = 1`.
    pub fn new(p: u32, q: u32) -> Result<Self> {
        if q == 0 {
            return Err(Error::InvalidRotation(format!("{p}/0")));
        }
        let p = p % q;
        if p.gcd(&q) != 1 {
            return Err(Error::InvalidRotation(format!(
                "{p}/{q} is not in lowest terms"
            )));
        }
        Ok(RotationNumber { p, q })
    }

    pub fn fixed() -> Self {
        RotationNumber { p: 0, q: 1 }
    }

    pub fn p(self) -> u32 {
        self.p
    }

    pub fn q(self) -> u32 {
        self.q
    }

    /// All rotation numbers with the given denominator.
    pub fn with_denominator(q: u32) -> Vec<RotationNumber> {
        (0..q.max(1))
            .filter_map(|p| RotationNumber::new(p, q).ok())
            .collect()
    }
}

impl fmt::Display for RotationNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl FromStr for RotationNumber {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidRotation(format!("{s:?} is not of the form p/q"));
        let (p, q) = s.trim().split_once('/').ok_or_else(bad)?;
        let p: u32 = p.trim().parse().map_err(|_| bad())?;
        let q: u32 = q.trim().parse().map_err(|_| bad())?;
        RotationNumber::new(p, q)
    }
}

/// Forward orbit of a point, in temporal order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ForwardOrbit {
    /// Distinct points visited; the last `period` of them form the cycle.
    pub points: Vec<CircleAngle>,
    pub preperiod: usize,
    pub period: usize,
}

impl ForwardOrbit {
    pub fn cycle(&self) -> &[CircleAngle] {
        &self.points[self.preperiod..]
    }
}

pub fn orbit_of(x: &CircleAngle, d: Degree) -> ForwardOrbit {
    let mut index: HashMap<CircleAngle, usize> = HashMap::new();
    let mut points = Vec::new();
    let mut current = x.clone();
    loop {
        if let Some(&start) = index.get(&current) {
            let period = points.len() - start;
            return ForwardOrbit {
                points,
                preperiod: start,
                period,
            };
        }
        index.insert(current.clone(), points.len());
        let next = current.sigma(d);
        points.push(current);
        current = next;
    }
}

/// Rotation number of a single periodic orbit given as a point set, or
/// `None` when the map does not advance the spatial order uniformly.
pub fn rotation_number(points: &[CircleAngle], d: Degree) -> Result<Option<RotationNumber>> {
    let first = points.first().ok_or(Error::NotPeriodic)?;
    let orbit = orbit_of(first, d);
    if orbit.preperiod != 0 || orbit.period != points.len() {
        return Err(Error::NotPeriodic);
    }
    let mut sorted = points.to_vec();
    sorted.sort();
    sorted.dedup();
    let mut cycle = orbit.points;
    cycle.sort();
    if sorted != cycle {
        return Err(Error::NotPeriodic);
    }
    Ok(uniform_advance(&sorted, d))
}

fn uniform_advance(sorted: &[CircleAngle], d: Degree) -> Option<RotationNumber> {
    let q = sorted.len();
    let slot = |x: &CircleAngle| sorted.binary_search(x).expect("orbit is invariant");
    let p = slot(&sorted[0].sigma(d));
    let uniform = sorted
        .iter()
        .enumerate()
        .all(|(i, x)| slot(&x.sigma(d)) == (i + p) % q);
    let rotation = RotationNumber::new(p as u32, q as u32).ok()?;
    uniform.then_some(rotation)
}

/// A rotational periodic orbit: its points advance `p` spatial slots per
/// application of the map.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RotationalOrbit {
    degree: Degree,
    points: Vec<CircleAngle>,
    rotation: RotationNumber,
    itinerary: Itinerary,
}

impl RotationalOrbit {
    /// The orbit through `x`, if `x` is periodic and its orbit rotational.
    pub fn from_point(x: &CircleAngle, d: Degree) -> Result<Option<Self>> {
        let orbit = orbit_of(x, d);
        if orbit.preperiod != 0 {
            return Err(Error::NotPeriodic);
        }
        let mut points = orbit.points;
        points.sort();
        Ok(uniform_advance(&points, d).map(|rotation| Self::assemble(d, points, rotation)))
    }

    pub fn from_itinerary(w: &Itinerary) -> Result<Option<Self>> {
        if !w.is_periodic() {
            return Err(Error::NotPeriodic);
        }
        Self::from_point(&w.angle(), w.degree())
    }

    fn assemble(degree: Degree, points: Vec<CircleAngle>, rotation: RotationNumber) -> Self {
        let itinerary = points[0].itinerary(degree);
        RotationalOrbit {
            degree,
            points,
            rotation,
            itinerary,
        }
    }

    pub fn degree(&self) -> Degree {
        self.degree
    }

    /// Points in increasing spatial order.
    pub fn points(&self) -> &[CircleAngle] {
        &self.points
    }

    pub fn rotation(&self) -> RotationNumber {
        self.rotation
    }

    pub fn period(&self) -> usize {
        self.points.len()
    }

    pub fn itinerary(&self) -> &Itinerary {
        &self.itinerary
    }

    pub fn smallest(&self) -> &CircleAngle {
        &self.points[0]
    }

    /// Points in temporal order starting from the smallest one.
    pub fn temporal(&self) -> Vec<CircleAngle> {
        let q = self.period();
        let p = self.rotation.p() as usize;
        (0..q).map(|j| self.points[(j * p) % q].clone()).collect()
    }

    /// Itinerary read off the intervals while jumping `p` spatial slots per
    /// step from the smallest point.
    pub fn canonical_itinerary(&self) -> Itinerary {
        let digits = self
            .temporal()
            .iter()
            .map(|x| x.interval_index(self.degree))
            .collect();
        Itinerary::periodic(self.degree, digits).expect("digits of a periodic orbit")
    }

    /// The smallest preimage of 0 in the gap `(x_{q-p}, x_{q-p+1})`.
    pub fn principal_preimage(&self) -> Result<CircleAngle> {
        let q = self.period();
        if q == 1 {
            return Err(Error::NoPrincipal);
        }
        let p = self.rotation.p() as usize;
        let lo = &self.points[q - p - 1];
        let hi = &self.points[q - p];
        let d = self.degree.get();
        (1..d)
            .map(|j| CircleAngle::new(j as i64, d as u64).expect("d > 0"))
            .find(|y| lo < y && y < hi)
            .ok_or(Error::NoPrincipal)
    }
}

impl fmt::Display for RotationalOrbit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.itinerary)
    }
}

pub fn canonical_itinerary(orbit: &RotationalOrbit) -> Itinerary {
    orbit.canonical_itinerary()
}

pub fn principal_preimage(orbit: &RotationalOrbit) -> Result<CircleAngle> {
    orbit.principal_preimage()
}

/// One cycle of exact period `q` among the points `m/(d^q - 1)`, with its
/// numerators in increasing order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct PeriodicCycle {
    pub denominator: u64,
    pub members: Vec<u64>,
    pub rotation: Option<RotationNumber>,
}

impl PeriodicCycle {
    pub fn angles(&self) -> Vec<CircleAngle> {
        let den = BigUint::from(self.denominator);
        self.members
            .iter()
            .map(|&m| CircleAngle::reduced(BigUint::from(m), den.clone()))
            .collect()
    }
}

pub(crate) fn sweep_size(d: Degree, q: u32, budget: u64) -> Result<u64> {
    let needed = (d.get() as u128).checked_pow(q).unwrap_or(u128::MAX);
    if needed > budget as u128 {
        return Err(Error::BudgetExceeded {
            needed,
            limit: budget,
        });
    }
    Ok(needed as u64)
}

/// Every cycle of exact period `q`, found by sweeping all `m/(d^q - 1)` in
/// machine integers. Since every such point has period dividing `q`, the
/// sweep partitions the points into cycles.
pub(crate) fn periodic_cycles(d: Degree, q: u32, budget: u64) -> Result<Vec<PeriodicCycle>> {
    if q == 0 {
        return Ok(Vec::new());
    }
    let n = sweep_size(d, q, budget)? - 1;
    let dm = d.get() as u64;
    let mut visited = vec![false; n as usize];
    let mut cycles = Vec::new();
    for m in 0..n {
        if visited[m as usize] {
            continue;
        }
        let mut cycle = Vec::new();
        let mut c = m;
        loop {
            visited[c as usize] = true;
            cycle.push(c);
            c = c * dm % n;
            if c == m {
                break;
            }
        }
        if cycle.len() != q as usize {
            continue;
        }
        let mut members = cycle.clone();
        members.sort_unstable();
        let slot = |x: u64| members.binary_search(&x).expect("cycle is invariant");
        let p = slot(members[0] * dm % n);
        let uniform = members
            .iter()
            .enumerate()
            .all(|(i, &x)| slot(x * dm % n) == (i + p) % members.len());
        let rotation = if uniform {
            RotationNumber::new(p as u32, q).ok()
        } else {
            None
        };
        cycles.push(PeriodicCycle {
            denominator: n,
            members,
            rotation,
        });
    }
    cycles.sort_by_key(|c| c.members[0]);
    Ok(cycles)
}

/// All rotational orbits with rotation number `rot`, sorted by smallest point.
pub fn enumerate_rotational_orbits(d: Degree, rot: RotationNumber) -> Result<Vec<RotationalOrbit>> {
    enumerate_rotational_orbits_with_budget(d, rot, DEFAULT_BUDGET)
}

pub fn enumerate_rotational_orbits_with_budget(
    d: Degree,
    rot: RotationNumber,
    budget: u64,
) -> Result<Vec<RotationalOrbit>> {
    Ok(periodic_cycles(d, rot.q(), budget)?
        .into_iter()
        .filter(|c| c.rotation == Some(rot))
        .map(|c| RotationalOrbit::assemble(d, c.angles(), rot))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn deg(d: u32) -> Degree {
        Degree::new(d).unwrap()
    }

    fn ang(n: i64, m: u64) -> CircleAngle {
        CircleAngle::new(n, m).unwrap()
    }

    fn rot(p: u32, q: u32) -> RotationNumber {
        RotationNumber::new(p, q).unwrap()
    }

    fn orbit(w: &str, d: u32) -> RotationalOrbit {
        let w = Itinerary::parse(w, deg(d)).unwrap();
        RotationalOrbit::from_itinerary(&w).unwrap().unwrap()
    }

    #[test]
    fn rotation_number_canonical_form() {
        assert_eq!(rot(4, 3), rot(1, 3));
        assert!(RotationNumber::new(2, 4).is_err());
        assert!(RotationNumber::new(0, 2).is_err());
        assert!(RotationNumber::new(1, 0).is_err());
        assert_eq!(rot(0, 1), RotationNumber::fixed());
        assert_eq!("2/5".parse::<RotationNumber>().unwrap(), rot(2, 5));
        assert!("2-5".parse::<RotationNumber>().is_err());
        assert_eq!(RotationNumber::with_denominator(6), vec![rot(1, 6), rot(5, 6)]);
        assert_eq!(RotationNumber::with_denominator(1), vec![rot(0, 1)]);
    }

    #[test]
    fn orbit_of_examples() {
        let o = orbit_of(&ang(1, 7), deg(2));
        assert_eq!(o.points, vec![ang(1, 7), ang(2, 7), ang(4, 7)]);
        assert_eq!((o.period, o.preperiod), (3, 0));

        let o = orbit_of(&ang(1, 3), deg(3));
        assert_eq!(o.points, vec![ang(1, 3), CircleAngle::zero()]);
        assert_eq!((o.period, o.preperiod), (1, 1));
        assert_eq!(o.cycle(), &[CircleAngle::zero()]);

        let o = orbit_of(&CircleAngle::zero(), deg(4));
        assert_eq!((o.period, o.preperiod), (1, 0));
    }

    #[test]
    fn rotation_number_examples() {
        let d2 = deg(2);
        assert_eq!(
            rotation_number(&[ang(1, 7), ang(2, 7), ang(4, 7)], d2).unwrap(),
            Some(rot(1, 3))
        );
        assert_eq!(
            rotation_number(&[ang(1, 5), ang(2, 5), ang(3, 5), ang(4, 5)], d2).unwrap(),
            None
        );
        for d in 2..7u32 {
            for m in 0..(d - 1) {
                let x = ang(m as i64, (d - 1) as u64);
                assert_eq!(rotation_number(&[x], deg(d)).unwrap(), Some(RotationNumber::fixed()));
            }
        }
        assert!(matches!(rotation_number(&[ang(1, 3)], deg(3)), Err(Error::NotPeriodic)));
        // a strict subset of an orbit is not an orbit
        assert!(matches!(rotation_number(&[ang(1, 7), ang(2, 7)], d2), Err(Error::NotPeriodic)));
    }

    #[test]
    fn canonical_itinerary_examples() {
        let o = RotationalOrbit::from_point(&ang(15, 26), deg(3)).unwrap().unwrap();
        assert_eq!(o.points(), &[ang(5, 26), ang(15, 26), ang(19, 26)]);
        assert_eq!(o.canonical_itinerary().to_string(), "(012)");
        assert_eq!(o.itinerary().to_string(), "(012)");

        let o = RotationalOrbit::from_point(&ang(2, 7), deg(2)).unwrap().unwrap();
        assert_eq!(o.canonical_itinerary().to_string(), "(001)");

        let o = RotationalOrbit::from_point(&ang(1, 2), deg(3)).unwrap().unwrap();
        assert_eq!(o.canonical_itinerary().to_string(), "(1)");
        assert_eq!(o.rotation(), RotationNumber::fixed());
    }

    #[test]
    fn principal_preimage_examples() {
        let o = RotationalOrbit::from_point(&ang(1, 3), deg(2)).unwrap().unwrap();
        assert_eq!(o.rotation(), rot(1, 2));
        assert_eq!(o.principal_preimage().unwrap(), ang(1, 2));

        let o = orbit("(001)", 2);
        assert_eq!(o.principal_preimage().unwrap(), ang(1, 2));

        let o = orbit("(012)", 3);
        assert_eq!(o.principal_preimage().unwrap(), ang(2, 3));

        let o = orbit("(1)", 3);
        assert!(matches!(o.principal_preimage(), Err(Error::NoPrincipal)));
    }

    #[test]
    fn enumeration_examples() {
        let names = |d: u32, r: RotationNumber| -> Vec<String> {
            enumerate_rotational_orbits(deg(d), r)
                .unwrap()
                .iter()
                .map(|o| o.itinerary().to_string())
                .collect()
        };
        assert_eq!(names(2, rot(1, 3)), ["(001)"]);
        assert_eq!(names(2, rot(2, 3)), ["(011)"]);
        assert_eq!(names(3, rot(1, 2)), ["(01)", "(02)", "(12)"]);
        assert_eq!(names(3, rot(1, 3)), ["(001)", "(002)", "(012)", "(112)"]);
        let pts: Vec<Vec<CircleAngle>> = enumerate_rotational_orbits(deg(3), rot(1, 2))
            .unwrap()
            .into_iter()
            .map(|o| o.points().to_vec())
            .collect();
        assert_eq!(
            pts,
            vec![
                vec![ang(1, 8), ang(3, 8)],
                vec![ang(1, 4), ang(3, 4)],
                vec![ang(5, 8), ang(7, 8)]
            ]
        );
        assert_eq!(names(4, RotationNumber::fixed()), ["(0)", "(1)", "(2)"]);
    }

    #[test]
    fn temporal_order_jumps_by_p() {
        let o = enumerate_rotational_orbits(deg(3), rot(2, 5)).unwrap().remove(0);
        let mut x = o.smallest().clone();
        for expected in o.temporal() {
            assert_eq!(x, expected);
            x = x.sigma(deg(3));
        }
    }

    #[test]
    fn budget_is_enforced() {
        let err = enumerate_rotational_orbits_with_budget(deg(3), rot(1, 5), 100).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { needed: 243, limit: 100 }));
    }
}
