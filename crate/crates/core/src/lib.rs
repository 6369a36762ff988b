//! Exact enumeration and counting of rotational orbits and rotational sets
//! of the angle `d`-tupling map `x -> d*x mod 1`, and pullback laminations
//! seeded by their polygons.
//!
//! All arithmetic on circle points is exact: angles are reduced fractions
//! with arbitrary-precision parts, and counts are big integers.
//!
//! ```
//! use rotset::{count_sets, enumerate_sets, Degree, RotationNumber};
//!
//! let d = Degree::new(3).unwrap();
//! let rot = RotationNumber::new(1, 3).unwrap();
//! let sets = enumerate_sets(d, rot, 2).unwrap();
//! assert_eq!(count_sets(3, 3, 2), sets.len().into());
//! ```

pub mod circle;
pub mod cli;
pub mod count;
pub mod emit;
pub mod error;
pub mod lamination;
pub mod oracle;
pub mod orbit;
pub mod rotset;

pub use circle::{angle_of, interval_index, itinerary_of, make_angle, preimages, sigma, CircleAngle, Degree, Itinerary};
pub use count::{binomial, count_gamma, count_sets, l_bound, CountQuery};
pub use error::{Error, Result, SetCondition};
pub use lamination::{crossing_violations, polygons_of, pullback, Lamination, Leaf, Polygon};
pub use oracle::{brute_force_orbits, brute_force_sets, cross_check, cross_check_pairs, OracleReport, TupleRecord};
pub use orbit::{
    canonical_itinerary, enumerate_rotational_orbits, orbit_of, principal_preimage, rotation_number, ForwardOrbit,
    RotationNumber, RotationalOrbit, DEFAULT_BUDGET,
};
pub use rotset::{
    classify_gaps, enumerate_placements, enumerate_sets, gap_classes, set_from_placement, sets_containing,
    validate_set, GapClassification, GapPlacement, RotationalSet,
};
