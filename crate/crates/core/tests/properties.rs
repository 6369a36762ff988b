use num_bigint::BigUint;
use proptest::prelude::*;

use rotset::{
    angle_of, brute_force_sets, count_gamma, count_sets, enumerate_placements, enumerate_rotational_orbits,
    enumerate_sets, interval_index, itinerary_of, preimages, set_from_placement, sigma, CircleAngle, Degree,
    Itinerary, RotationNumber,
};

fn deg(d: u32) -> Degree {
    Degree::new(d).unwrap()
}

/// (degree, angle) with a smallish denominator.
fn angle() -> impl Strategy<Value = (Degree, CircleAngle)> {
    (2u32..=12, 1u64..5000).prop_flat_map(|(d, den)| {
        (0..den).prop_map(move |num| (deg(d), CircleAngle::new(num as i64, den).unwrap()))
    })
}

/// Raw digit strings, not necessarily canonical.
fn itinerary() -> impl Strategy<Value = Itinerary> {
    (2u32..=12).prop_flat_map(|d| {
        (
            prop::collection::vec(0..d, 0..5),
            prop::collection::vec(0..d, 1..6),
        )
            .prop_filter_map("all-top period", move |(pre, per)| {
                Itinerary::new(deg(d), pre, per).ok()
            })
    })
}

fn rotation() -> impl Strategy<Value = RotationNumber> {
    (1u32..=4).prop_flat_map(|q| {
        let rots = RotationNumber::with_denominator(q);
        (0..rots.len()).prop_map(move |i| rots[i])
    })
}

/// i-subsets of q(k-1) intra gaps, gap g in class g mod (k-1), meeting
/// every class.
fn gamma_by_subsets(q: u32, k: u32, i: u32) -> u64 {
    if k == 1 {
        return u64::from(i == 0);
    }
    let classes = k - 1;
    let n = q * classes;
    (0u32..1 << n)
        .filter(|mask| mask.count_ones() == i)
        .filter(|mask| {
            let mut hit = 0u32;
            for g in 0..n {
                if mask >> g & 1 == 1 {
                    hit |= 1 << (g % classes);
                }
            }
            hit == (1 << classes) - 1
        })
        .count() as u64
}

proptest! {
    #[test]
    fn angle_of_inverts_itinerary_of((d, x) in angle()) {
        let w = itinerary_of(&x, d);
        prop_assert_eq!(angle_of(&w, d).unwrap(), x);
    }

    #[test]
    fn itinerary_of_inverts_angle_of(w in itinerary()) {
        let d = w.degree();
        prop_assert_eq!(itinerary_of(&angle_of(&w, d).unwrap(), d), w);
    }

    #[test]
    fn shift_commutes_with_sigma((d, x) in angle()) {
        prop_assert_eq!(itinerary_of(&sigma(&x, d), d), itinerary_of(&x, d).shift());
    }

    #[test]
    fn itinerary_text_round_trips(w in itinerary()) {
        prop_assert_eq!(Itinerary::parse(&w.to_string(), w.degree()).unwrap(), w);
    }

    #[test]
    fn preimages_are_d_sorted_roots((d, x) in angle()) {
        let pre = preimages(&x, d);
        prop_assert_eq!(pre.len(), d.get() as usize);
        prop_assert!(pre.windows(2).all(|w| w[0] < w[1]));
        for y in &pre {
            prop_assert_eq!(&sigma(y, d), &x);
        }
    }

    #[test]
    fn interval_index_is_first_digit((d, x) in angle()) {
        prop_assert_eq!(interval_index(&x, d), itinerary_of(&x, d).first_digit());
    }

    #[test]
    fn gamma_matches_subset_count(q in 1u32..=5, k in 1u32..=4, i in 0u32..=12) {
        prop_assume!(q * k <= 16);
        prop_assert_eq!(count_gamma(q, k, i), BigUint::from(gamma_by_subsets(q, k, i)));
    }

    #[test]
    fn count_is_independent_of_p(d in 2u32..=5, q in 1u32..=4, k in 1usize..=4) {
        prop_assume!(k < d as usize);
        let counts: Vec<usize> = RotationNumber::with_denominator(q)
            .into_iter()
            .map(|r| enumerate_sets(deg(d), r, k).unwrap().len())
            .collect();
        prop_assert!(counts.windows(2).all(|w| w[0] == w[1]));
        prop_assert_eq!(BigUint::from(counts[0]), count_sets(d, q, k as u32));
    }

    #[test]
    fn enumeration_matches_brute_force(d in 2u32..=4, rot in rotation(), k in 1usize..=3) {
        prop_assume!(k < d as usize);
        let fast: Vec<Vec<CircleAngle>> = enumerate_sets(deg(d), rot, k)
            .unwrap()
            .iter()
            .map(|s| s.points().to_vec())
            .collect();
        let slow: Vec<Vec<CircleAngle>> = brute_force_sets(deg(d), rot, k)
            .unwrap()
            .iter()
            .map(|s| s.points().to_vec())
            .collect();
        prop_assert_eq!(fast, slow);
    }

    #[test]
    fn groups_advance_intact(d in 2u32..=5, rot in rotation(), k in 1usize..=4) {
        prop_assume!(k < d as usize);
        let degree = deg(d);
        let q = rot.q() as usize;
        for set in enumerate_sets(degree, rot, k).unwrap() {
            for i in 0..q {
                let mut image: Vec<CircleAngle> = set.group(i).iter().map(|x| x.sigma(degree)).collect();
                image.sort();
                prop_assert_eq!(image.as_slice(), set.group((i + rot.p() as usize) % q));
            }
        }
    }

    #[test]
    fn placements_survive_reconstruction(d in 2u32..=5, rot in rotation(), k in 1usize..=4) {
        prop_assume!(k < d as usize);
        for placement in enumerate_placements(deg(d), rot, k) {
            let set = set_from_placement(&placement).unwrap();
            prop_assert_eq!(set.placement(), &placement);
            prop_assert_eq!(set.k(), k);
        }
    }

    #[test]
    fn rotational_orbits_are_canonical(d in 2u32..=5, rot in rotation()) {
        let degree = deg(d);
        let orbits = enumerate_rotational_orbits(degree, rot).unwrap();
        prop_assert_eq!(BigUint::from(orbits.len()), count_sets(d, rot.q(), 1));
        for o in orbits {
            prop_assert_eq!(&o.canonical_itinerary(), o.itinerary());
            prop_assert_eq!(o.period(), rot.q() as usize);
            let q = o.period();
            for (i, x) in o.points().iter().enumerate() {
                prop_assert_eq!(&x.sigma(degree), &o.points()[(i + rot.p() as usize) % q]);
            }
        }
    }
}
