//! Finite laminations grown by pulling back rotational polygons.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use itertools::Itertools;

use crate::circle::{CircleAngle, Degree};
use crate::error::{Error, Result};
use crate::rotset::RotationalSet;

/// A chord of the unit circle, endpoints stored in increasing order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Leaf {
    a: CircleAngle,
    b: CircleAngle,
}

impl Leaf {
    pub fn new(x: CircleAngle, y: CircleAngle) -> Result<Self> {
        match x.cmp(&y) {
            std::cmp::Ordering::Less => Ok(Leaf { a: x, b: y }),
            std::cmp::Ordering::Greater => Ok(Leaf { a: y, b: x }),
            std::cmp::Ordering::Equal => Err(Error::InvalidAngle(format!("leaf endpoints coincide at {x}"))),
        }
    }

    pub fn endpoints(&self) -> (&CircleAngle, &CircleAngle) {
        (&self.a, &self.b)
    }

    /// Interleaved endpoints; leaves sharing an endpoint never cross.
    pub fn crosses(&self, other: &Leaf) -> bool {
        let (c, d) = (&other.a, &other.b);
        if c == &self.a || c == &self.b || d == &self.a || d == &self.b {
            return false;
        }
        let inside = |x: &CircleAngle| &self.a < x && x < &self.b;
        inside(c) != inside(d)
    }
}

impl fmt::Display for Leaf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}, {}}}", self.a, self.b)
    }
}

/// Convex polygon on at least two distinct circle points; a 2-gon is a leaf.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Polygon {
    vertices: Vec<CircleAngle>,
}

impl Polygon {
    pub fn new(mut vertices: Vec<CircleAngle>) -> Result<Self> {
        vertices.sort();
        if vertices.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidAngle("polygon vertices must be distinct".into()));
        }
        if vertices.len() < 2 {
            return Err(Error::InvalidAngle("a polygon needs at least two vertices".into()));
        }
        Ok(Polygon { vertices })
    }

    pub fn vertices(&self) -> &[CircleAngle] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    /// Chords between circularly consecutive vertices.
    pub fn leaves(&self) -> Vec<Leaf> {
        let n = self.vertices.len();
        if n == 2 {
            return vec![Leaf::new(self.vertices[0].clone(), self.vertices[1].clone()).expect("distinct")];
        }
        (0..n)
            .map(|i| Leaf::new(self.vertices[i].clone(), self.vertices[(i + 1) % n].clone()).expect("distinct"))
            .collect()
    }

    /// Vertex set of the image, sorted and deduplicated.
    pub fn image(&self, d: Degree) -> Vec<CircleAngle> {
        self.vertices.iter().map(|x| x.sigma(d)).sorted().dedup().collect()
    }
}

impl fmt::Display for Polygon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.vertices.iter().join(", "))
    }
}

/// The polygon spanned by a rotational set's points.
pub fn polygons_of(set: &RotationalSet) -> Result<Polygon> {
    Polygon::new(set.points().to_vec())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lamination {
    degree: Degree,
    polygons: Vec<Polygon>,
    step: u32,
}

impl Lamination {
    pub fn new(degree: Degree, polygons: Vec<Polygon>) -> Self {
        Self::at_step(degree, polygons, 0)
    }

    pub fn at_step(degree: Degree, mut polygons: Vec<Polygon>, step: u32) -> Self {
        polygons.sort();
        polygons.dedup();
        Lamination {
            degree,
            polygons,
            step,
        }
    }

    pub fn degree(&self) -> Degree {
        self.degree
    }

    pub fn polygons(&self) -> &[Polygon] {
        &self.polygons
    }

    /// Number of pullback steps applied since the seed.
    pub fn step(&self) -> u32 {
        self.step
    }

    pub fn leaves(&self) -> Vec<Leaf> {
        self.polygons.iter().flat_map(Polygon::leaves).sorted().dedup().collect()
    }

    /// Polygons whose image is neither a single point nor a polygon present.
    pub fn forward_invariance_failures(&self) -> Vec<&Polygon> {
        let present: BTreeSet<&[CircleAngle]> = self.polygons.iter().map(Polygon::vertices).collect();
        self.polygons
            .iter()
            .filter(|poly| {
                let image = poly.image(self.degree);
                image.len() > 1 && !present.contains(image.as_slice())
            })
            .collect()
    }

    pub fn is_forward_invariant(&self) -> bool {
        self.forward_invariance_failures().is_empty()
    }
}

/// Every pair of crossing leaves.
pub fn crossing_violations(lam: &Lamination) -> Vec<(Leaf, Leaf)> {
    let leaves = lam.leaves();
    let mut out = Vec::new();
    for (i, x) in leaves.iter().enumerate() {
        for y in &leaves[i + 1..] {
            if x.crosses(y) {
                out.push((x.clone(), y.clone()));
            }
        }
    }
    out
}

/// A partition of the `d*m` preimage positions into `d` blocks of `m`.
type Partition = Vec<Vec<usize>>;

/// Non-crossing partitions of `len` linearly ordered positions into blocks
/// of `m`, where consecutive block members are separated by a multiple of
/// `m` positions. Such a block carries each image label exactly once, in
/// cyclic order.
struct PartitionTable {
    m: usize,
    memo: HashMap<usize, Vec<Partition>>,
}

impl PartitionTable {
    fn new(m: usize) -> Self {
        PartitionTable { m, memo: HashMap::new() }
    }

    fn linear(&mut self, len: usize) -> Vec<Partition> {
        if len == 0 {
            return vec![Vec::new()];
        }
        if let Some(found) = self.memo.get(&len) {
            return found.clone();
        }
        let m = self.m;
        let spare = len / m - 1;
        let mut out = Vec::new();
        for skips in compositions(m - 1, spare) {
            // vertices of the block through position 0
            let mut vertices = vec![0];
            for &j in &skips {
                vertices.push(vertices.last().unwrap() + 1 + j * m);
            }
            let tail_start = vertices.last().unwrap() + 1;
            let mut pieces: Vec<Vec<Partition>> = Vec::new();
            for (t, &j) in skips.iter().enumerate() {
                let offset = vertices[t] + 1;
                pieces.push(shifted(self.linear(j * m), offset));
            }
            pieces.push(shifted(self.linear(len - tail_start), tail_start));
            for choice in pieces.iter().multi_cartesian_product() {
                let mut partition = vec![vertices.clone()];
                partition.extend(choice.into_iter().flatten().cloned());
                partition.sort();
                out.push(partition);
            }
        }
        out.sort();
        self.memo.insert(len, out.clone());
        out
    }
}

fn shifted(parts: Vec<Partition>, by: usize) -> Vec<Partition> {
    parts
        .into_iter()
        .map(|p| p.into_iter().map(|b| b.into_iter().map(|x| x + by).collect()).collect())
        .collect()
}

/// Tuples of `n` non-negative integers with sum at most `bound`.
fn compositions(n: usize, bound: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 0..=bound {
        for mut rest in compositions(n - 1, bound - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// The `d*m` preimages of a polygon's vertices in increasing order, each
/// tagged with the index of the vertex it maps to.
fn labelled_preimages(poly: &Polygon, d: Degree) -> Vec<(CircleAngle, usize)> {
    poly.vertices
        .iter()
        .enumerate()
        .flat_map(|(label, v)| v.preimages(d).into_iter().map(move |y| (y, label)))
        .sorted()
        .collect()
}

/// Applies `steps` rounds of replacing every polygon by its `d` preimage
/// polygons.
///
/// Among the non-crossing ways to group a polygon's preimages into `d`
/// polygons, the chosen one (a) keeps every already present polygon whose
/// vertices are all preimages, (b) crosses no leaf placed so far, and (c) is
/// the least in lexicographic block order among the rest.
pub fn pullback(lam: &Lamination, steps: u32) -> Result<Lamination> {
    if let Some(bad) = lam.forward_invariance_failures().first() {
        return Err(Error::PullbackObstruction {
            polygon: bad.to_string(),
            reason: "the seed lamination is not forward invariant".into(),
        });
    }
    let mut current = lam.clone();
    let mut tables: HashMap<usize, Vec<Partition>> = HashMap::new();
    for _ in 0..steps {
        current = pullback_step(&current, &mut tables)?;
    }
    Ok(current)
}

fn pullback_step(lam: &Lamination, tables: &mut HashMap<usize, Vec<Partition>>) -> Result<Lamination> {
    let d = lam.degree;
    let present: BTreeSet<&Polygon> = lam.polygons.iter().collect();
    let mut placed: Vec<Leaf> = lam.leaves();
    let mut next: BTreeSet<Polygon> = BTreeSet::new();

    for poly in &lam.polygons {
        let obstruction = |reason: String| Error::PullbackObstruction {
            polygon: poly.to_string(),
            reason,
        };
        let m = poly.len();
        let pre = labelled_preimages(poly, d);
        let n = pre.len();
        assert!(
            (0..n).all(|t| pre[(t + 1) % n].1 == (pre[t].1 + 1) % m),
            "preimage labels cycle through the image vertices"
        );
        let position: HashMap<&CircleAngle, usize> = pre.iter().enumerate().map(|(i, (y, _))| (y, i)).collect();

        // (a) present polygons built from these preimages must survive
        let required: Vec<Vec<usize>> = present
            .iter()
            .filter_map(|p| {
                p.vertices
                    .iter()
                    .map(|v| position.get(v).copied())
                    .collect::<Option<Vec<usize>>>()
            })
            .map(|mut block| {
                block.sort_unstable();
                block
            })
            .collect();

        // For each placed leaf, which preimage positions it touches or encloses.
        let masks: Vec<(Vec<bool>, Vec<bool>)> = placed
            .iter()
            .map(|leaf| {
                let on: Vec<bool> = pre.iter().map(|(y, _)| y == &leaf.a || y == &leaf.b).collect();
                let inside: Vec<bool> = pre.iter().map(|(y, _)| &leaf.a < y && y < &leaf.b).collect();
                (on, inside)
            })
            .collect();
        let crosses_placed = |a: usize, b: usize| {
            masks
                .iter()
                .any(|(on, inside)| !on[a] && !on[b] && inside[a] != inside[b])
        };
        let block_leaves = |block: &[usize]| -> Vec<(usize, usize)> {
            if block.len() == 2 {
                vec![(block[0], block[1])]
            } else {
                (0..block.len()).map(|i| (block[i], block[(i + 1) % block.len()])).collect()
            }
        };

        let candidates = tables
            .entry(m)
            .or_insert_with(|| PartitionTable::new(m).linear(d.get() as usize * m));
        let keeps_required: Vec<&Partition> = candidates
            .iter()
            .filter(|part| required.iter().all(|r| part.contains(r)))
            .collect();
        if keeps_required.is_empty() {
            return Err(obstruction(format!(
                "no preimage grouping keeps the {} polygons already present",
                required.len()
            )));
        }
        let chosen = keeps_required
            .into_iter()
            .find(|part| {
                part.iter()
                    .flat_map(|block| block_leaves(block))
                    .all(|(a, b)| !crosses_placed(a, b))
            })
            .ok_or_else(|| obstruction("every preimage grouping crosses a placed leaf".into()))?;

        for block in chosen {
            let poly = Polygon::new(block.iter().map(|&i| pre[i].0.clone()).collect())?;
            placed.extend(poly.leaves());
            next.insert(poly);
        }
    }

    let result = Lamination::at_step(d, next.into_iter().collect(), lam.step + 1);
    if let Some((x, y)) = crossing_violations(&result).into_iter().next() {
        return Err(Error::PullbackObstruction {
            polygon: x.to_string(),
            reason: format!("leaf crosses {y}"),
        });
    }
    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circle::Itinerary;
    use crate::orbit::RotationalOrbit;
    use crate::rotset::validate_set;

    fn deg(d: u32) -> Degree {
        Degree::new(d).unwrap()
    }

    fn ang(n: i64, m: u64) -> CircleAngle {
        CircleAngle::new(n, m).unwrap()
    }

    fn set(words: &[&str], d: u32) -> RotationalSet {
        let orbits: Vec<RotationalOrbit> = words
            .iter()
            .map(|w| {
                RotationalOrbit::from_itinerary(&Itinerary::parse(w, deg(d)).unwrap())
                    .unwrap()
                    .unwrap()
            })
            .collect();
        validate_set(&orbits).unwrap()
    }

    fn poly(points: &[(i64, u64)]) -> Polygon {
        Polygon::new(points.iter().map(|&(n, m)| ang(n, m)).collect()).unwrap()
    }

    fn triangle_seed() -> Lamination {
        Lamination::new(deg(3), vec![polygons_of(&set(&["(012)"], 3)).unwrap()])
    }

    #[test]
    fn polygons_of_examples() {
        assert_eq!(polygons_of(&set(&["(012)"], 3)).unwrap(), poly(&[(5, 26), (15, 26), (19, 26)]));
        let hexagon = polygons_of(&set(&["(012)", "(002)"], 3)).unwrap();
        assert_eq!(hexagon.len(), 6);
        assert_eq!(hexagon.image(deg(3)), hexagon.vertices());
        let leaf = polygons_of(&set(&["(01)"], 2)).unwrap();
        assert_eq!(leaf, poly(&[(1, 3), (2, 3)]));
        assert_eq!(leaf.leaves().len(), 1);
    }

    #[test]
    fn crossing_examples() {
        let lam = Lamination::new(deg(2), vec![poly(&[(0, 1), (1, 2)]), poly(&[(1, 4), (3, 4)])]);
        assert_eq!(crossing_violations(&lam).len(), 1);
        let lam = Lamination::new(deg(2), vec![poly(&[(0, 1), (1, 2)]), poly(&[(1, 2), (3, 4)])]);
        assert!(crossing_violations(&lam).is_empty());
        let lam = Lamination::new(deg(2), vec![poly(&[(0, 1), (1, 2)]), poly(&[(0, 1), (1, 4)])]);
        assert!(crossing_violations(&lam).is_empty());
    }

    #[test]
    fn partition_counts_are_fuss_catalan() {
        // d blocks of size m: C(dm, d) / ((m-1)d + 1)
        assert_eq!(PartitionTable::new(3).linear(9).len(), 12);
        assert_eq!(PartitionTable::new(2).linear(4).len(), 2);
        assert_eq!(PartitionTable::new(2).linear(6).len(), 5);
        assert_eq!(PartitionTable::new(6).linear(18).len(), 51);
        assert_eq!(PartitionTable::new(3).linear(18).len(), 1428);
    }

    #[test]
    fn one_step_from_the_triangle() {
        let lam = pullback(&triangle_seed(), 1).unwrap();
        let expected = vec![
            poly(&[(5, 78), (67, 78), (71, 78)]),
            poly(&[(19, 78), (31, 78), (41, 78)]),
            poly(&[(5, 26), (15, 26), (19, 26)]),
        ];
        assert_eq!(lam.polygons(), Lamination::new(deg(3), expected).polygons());
        assert_eq!(lam.step(), 1);
    }

    #[test]
    fn zero_steps_is_identity() {
        let seed = triangle_seed();
        assert_eq!(pullback(&seed, 0).unwrap(), seed);
    }

    #[test]
    fn triangle_counts_grow_as_powers_of_three() {
        let seed = triangle_seed();
        for n in 1..=3 {
            let lam = pullback(&seed, n).unwrap();
            assert_eq!(lam.polygons().len(), 3usize.pow(n));
            assert_eq!(lam.leaves().len(), 3 * 3usize.pow(n));
            assert!(crossing_violations(&lam).is_empty());
            assert!(lam.is_forward_invariant());
        }
    }

    #[test]
    fn new_vertices_map_to_old_ones() {
        let seed = triangle_seed();
        let one = pullback(&seed, 1).unwrap();
        let two = pullback(&seed, 2).unwrap();
        let old: BTreeSet<&CircleAngle> = one.polygons().iter().flat_map(|p| p.vertices()).collect();
        for v in two.polygons().iter().flat_map(|p| p.vertices()) {
            assert!(old.contains(&v.sigma(deg(3))));
        }
    }

    #[test]
    fn non_invariant_seed_is_rejected() {
        let lam = Lamination::new(deg(3), vec![poly(&[(1, 7), (2, 7)])]);
        assert!(matches!(pullback(&lam, 1), Err(Error::PullbackObstruction { .. })));
    }

    #[test]
    fn leaf_seed_pulls_back() {
        let lam = Lamination::new(deg(2), vec![polygons_of(&set(&["(01)"], 2)).unwrap()]);
        let out = pullback(&lam, 3).unwrap();
        assert_eq!(out.polygons().len(), 8);
        assert!(crossing_violations(&out).is_empty());
        assert!(out.is_forward_invariant());
    }
}
