//! Exact points of the circle `R/Z` and their base-`d` symbolic dynamics.
//!
//! Angles are measured in revolutions and stored as reduced fractions with
//! arbitrary-precision parts. The interval `I_j = [j/d, (j+1)/d)` visited by
//! a point is the leading digit of its base-`d` expansion, so itineraries and
//! expansions coincide.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Degree `d >= 2` of the map `x -> d*x mod 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Degree(u32);

impl Degree {
    pub fn new(d: u32) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidDegree(d as u64));
        }
        Ok(Degree(d))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    /// Number of fixed points of the map, `d - 1`.
    pub fn fixed_point_count(self) -> u32 {
        self.0 - 1
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A rational point of the circle in `[0, 1)`, always in lowest terms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CircleAngle {
    num: BigUint,
    den: BigUint,
}

impl CircleAngle {
    pub fn zero() -> Self {
        CircleAngle {
            num: BigUint::zero(),
            den: BigUint::one(),
        }
    }

    /// Reduced representative of `numerator/denominator mod 1`.
    pub fn new(numerator: i64, denominator: u64) -> Result<Self> {
        Self::from_big(BigInt::from(numerator), BigUint::from(denominator))
    }

    pub fn from_big(numerator: BigInt, denominator: BigUint) -> Result<Self> {
        if denominator.is_zero() {
            return Err(Error::InvalidAngle(format!("{numerator}/0 has a zero denominator")));
        }
        let den = BigInt::from_biguint(Sign::Plus, denominator.clone());
        let residue = numerator.mod_floor(&den);
        let residue = residue
            .to_biguint()
            .expect("floor modulus by a positive number is non-negative");
        Ok(Self::reduced(residue, denominator))
    }

    /// `num/den` with `num < den` not yet reduced.
    pub(crate) fn reduced(num: BigUint, den: BigUint) -> Self {
        debug_assert!(num < den);
        let g = num.gcd(&den);
        if g.is_one() {
            CircleAngle { num, den }
        } else if num.is_zero() {
            CircleAngle::zero()
        } else {
            CircleAngle {
                num: num / &g,
                den: den / g,
            }
        }
    }

    pub fn numerator(&self) -> &BigUint {
        &self.num
    }

    pub fn denominator(&self) -> &BigUint {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// One application of the `d`-tupling map.
    pub fn sigma(&self, d: Degree) -> CircleAngle {
        let num = (&self.num * d.get()) % &self.den;
        Self::reduced(num, self.den.clone())
    }

    /// The `d` preimages `(x + j)/d`, in increasing order.
    pub fn preimages(&self, d: Degree) -> Vec<CircleAngle> {
        let den = &self.den * d.get();
        (0..d.get())
            .map(|j| Self::reduced(&self.num + &self.den * j, den.clone()))
            .collect()
    }

    /// Index `j` of the interval `I_j` containing the point, i.e. `floor(d*x)`.
    pub fn interval_index(&self, d: Degree) -> u32 {
        ((&self.num * d.get()) / &self.den)
            .to_u32()
            .expect("floor(d*x) < d")
    }

    /// The base-`d` expansion of the point, as a canonical itinerary.
    pub fn itinerary(&self, d: Degree) -> Itinerary {
        // Iterate on numerators over the fixed denominator; the orbit is
        // eventually periodic since there are finitely many residues.
        let mut seen: HashMap<BigUint, usize> = HashMap::new();
        let mut digits = Vec::new();
        let mut state = self.num.clone();
        loop {
            if let Some(&start) = seen.get(&state) {
                let period = digits.split_off(start);
                return Itinerary {
                    degree: d,
                    preperiod: digits,
                    period,
                };
            }
            seen.insert(state.clone(), digits.len());
            let scaled = &state * d.get();
            let (digit, rest) = scaled.div_rem(&self.den);
            digits.push(digit.to_u32().expect("digit < d"));
            state = rest;
        }
    }

    /// Floating-point approximation, for rendering only.
    pub fn to_f64(&self) -> f64 {
        let bits = self.den.bits();
        if bits <= 1000 {
            if let (Some(n), Some(m)) = (self.num.to_f64(), self.den.to_f64()) {
                return n / m;
            }
        }
        let shift = bits.saturating_sub(64);
        let n = (&self.num >> shift).to_f64().unwrap_or(0.0);
        let m = (&self.den >> shift).to_f64().unwrap_or(1.0);
        n / m
    }

    /// True when `self` lies in the open counterclockwise arc from `a` to `b`.
    pub fn in_open_arc(&self, a: &CircleAngle, b: &CircleAngle) -> bool {
        match a.cmp(b) {
            Ordering::Less => a < self && self < b,
            Ordering::Greater => self > a || self < b,
            Ordering::Equal => self != a,
        }
    }
}

impl Ord for CircleAngle {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.den == other.den {
            return self.num.cmp(&other.num);
        }
        (&self.num * &other.den).cmp(&(&other.num * &self.den))
    }
}

impl PartialOrd for CircleAngle {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for CircleAngle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for CircleAngle {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidAngle(format!("{s:?} is not of the form num/den"));
        let (n, m) = match s.trim().split_once('/') {
            Some((n, m)) => (n.trim(), m.trim()),
            None => (s.trim(), "1"),
        };
        let n: BigInt = n.parse().map_err(|_| bad())?;
        let m: BigUint = m.parse().map_err(|_| bad())?;
        CircleAngle::from_big(n, m)
    }
}

/// An eventually periodic word over `{0, .., d-1}`: `preperiod` then
/// `period` repeated forever.
///
/// Words are kept canonical: the period is primitive and the preperiod does
/// not end in the period's last digit, so two itineraries are equal exactly
/// when they describe the same point.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Itinerary {
    degree: Degree,
    preperiod: Vec<u32>,
    period: Vec<u32>,
}

impl Itinerary {
    pub fn new(degree: Degree, preperiod: Vec<u32>, period: Vec<u32>) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::InvalidItinerary {
                text: format_word(degree, &preperiod, &period),
                reason: "the period is empty".into(),
            });
        }
        if let Some(&digit) = preperiod.iter().chain(&period).find(|&&x| x >= degree.get()) {
            return Err(Error::InvalidDigit {
                digit: digit as u64,
                degree: degree.get(),
            });
        }
        let max_digit = degree.get() - 1;
        if period.iter().all(|&x| x == max_digit) {
            return Err(Error::DegenerateExpansion { max_digit });
        }
        let mut word = Itinerary {
            degree,
            preperiod,
            period,
        };
        word.canonicalize();
        Ok(word)
    }

    pub fn periodic(degree: Degree, period: Vec<u32>) -> Result<Self> {
        Self::new(degree, Vec::new(), period)
    }

    fn canonicalize(&mut self) {
        let n = self.period.len();
        if let Some(r) = (1..n).find(|&r| n.is_multiple_of(r) && (r..n).all(|i| self.period[i] == self.period[i - r])) {
            self.period.truncate(r);
        }
        while let (Some(&a), Some(&b)) = (self.preperiod.last(), self.period.last()) {
            if a != b {
                break;
            }
            self.preperiod.pop();
            self.period.rotate_right(1);
        }
    }

    /// Parses `"1(0)"`, `"(012)"`, or comma-separated digits such as
    /// `"(0,11,3)"`. Comma form is required to write digits above 9.
    pub fn parse(text: &str, degree: Degree) -> Result<Self> {
        let malformed = |reason: &str| Error::InvalidItinerary {
            text: text.to_string(),
            reason: reason.to_string(),
        };
        let t = text.trim();
        let open = t.find('(').ok_or_else(|| malformed("missing '(' before the period"))?;
        let body = t[open + 1..]
            .strip_suffix(')')
            .ok_or_else(|| malformed("the period must end with ')'"))?;
        if body.contains(['(', ')']) {
            return Err(malformed("nested parentheses"));
        }
        let head = &t[..open];
        let comma_mode = degree.get() > 10 || t.contains(',');
        let digits = |s: &str| -> Result<Vec<u32>> {
            let s = s.trim().trim_end_matches(',');
            if s.is_empty() {
                return Ok(Vec::new());
            }
            if comma_mode {
                s.split(',')
                    .map(|piece| {
                        piece
                            .trim()
                            .parse::<u32>()
                            .map_err(|_| malformed("expected comma-separated decimal digits"))
                    })
                    .collect()
            } else {
                s.chars()
                    .map(|c| c.to_digit(10).ok_or_else(|| malformed("expected decimal digits")))
                    .collect()
            }
        };
        let preperiod = digits(head)?;
        let period = digits(body)?;
        Itinerary::new(degree, preperiod, period)
    }

    pub fn degree(&self) -> Degree {
        self.degree
    }

    pub fn preperiod(&self) -> &[u32] {
        &self.preperiod
    }

    pub fn period(&self) -> &[u32] {
        &self.period
    }

    pub fn is_periodic(&self) -> bool {
        self.preperiod.is_empty()
    }

    /// First digit of the word.
    pub fn first_digit(&self) -> u32 {
        self.preperiod.first().copied().unwrap_or(self.period[0])
    }

    /// The forgetful shift: drops the leading digit.
    pub fn shift(&self) -> Itinerary {
        let mut next = self.clone();
        if next.preperiod.is_empty() {
            next.period.rotate_left(1);
        } else {
            next.preperiod.remove(0);
        }
        next
    }

    /// The point with this expansion:
    /// `(int(u)*(d^q - 1) + int(v)) / (d^s * (d^q - 1)) mod 1`.
    pub fn angle(&self) -> CircleAngle {
        let d = BigUint::from(self.degree.get());
        let as_int = |w: &[u32]| w.iter().fold(BigUint::zero(), |acc, &x| acc * &d + x);
        let cycle = d.pow(self.period.len() as u32) - 1u32;
        let shift = d.pow(self.preperiod.len() as u32);
        let num = as_int(&self.preperiod) * &cycle + as_int(&self.period);
        let den = shift * cycle;
        // The periodic tail is never all (d-1)s, so the value is below 1.
        CircleAngle::reduced(num % &den, den)
    }
}

fn format_word(degree: Degree, preperiod: &[u32], period: &[u32]) -> String {
    let join = |w: &[u32]| -> String {
        if degree.get() > 10 {
            w.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
        } else {
            w.iter().map(u32::to_string).collect()
        }
    };
    format!("{}({})", join(preperiod), join(period))
}

impl fmt::Display for Itinerary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_word(self.degree, &self.preperiod, &self.period))
    }
}

/// `make_angle`: reduced `numerator/denominator mod 1`.
pub fn make_angle(numerator: i64, denominator: u64) -> Result<CircleAngle> {
    CircleAngle::new(numerator, denominator)
}

pub fn sigma(x: &CircleAngle, d: Degree) -> CircleAngle {
    x.sigma(d)
}

pub fn preimages(x: &CircleAngle, d: Degree) -> Vec<CircleAngle> {
    x.preimages(d)
}

pub fn interval_index(x: &CircleAngle, d: Degree) -> u32 {
    x.interval_index(d)
}

pub fn itinerary_of(x: &CircleAngle, d: Degree) -> Itinerary {
    x.itinerary(d)
}

/// Inverse of [`itinerary_of`]. Fails when `w` was written for another degree.
pub fn angle_of(w: &Itinerary, d: Degree) -> Result<CircleAngle> {
    if w.degree() != d {
        let digit = w
            .preperiod()
            .iter()
            .chain(w.period())
            .copied()
            .find(|&x| x >= d.get());
        if let Some(digit) = digit {
            return Err(Error::InvalidDigit {
                digit: digit as u64,
                degree: d.get(),
            });
        }
        let rebased = Itinerary::new(d, w.preperiod().to_vec(), w.period().to_vec())?;
        return Ok(rebased.angle());
    }
    Ok(w.angle())
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

    #[test]
    fn make_angle_reduces() {
        assert_eq!(ang(5, 26).to_string(), "5/26");
        assert_eq!(ang(27, 26), ang(1, 26));
        assert_eq!(ang(45, 78), ang(15, 26));
        assert_eq!(ang(-1, 3), ang(2, 3));
        assert_eq!(ang(4, 4), CircleAngle::zero());
        assert_eq!(CircleAngle::zero().to_string(), "0/1");
        assert!(matches!(CircleAngle::new(1, 0), Err(Error::InvalidAngle(_))));
    }

    #[test]
    fn degree_bounds() {
        assert!(Degree::new(1).is_err());
        assert!(Degree::new(0).is_err());
        assert_eq!(deg(2).fixed_point_count(), 1);
    }

    #[test]
    fn sigma_examples() {
        assert_eq!(CircleAngle::zero().sigma(deg(7)), CircleAngle::zero());
        assert_eq!(ang(1, 3).sigma(deg(2)), ang(2, 3));
        assert_eq!(ang(5, 26).sigma(deg(3)), ang(15, 26));
    }

    #[test]
    fn preimage_examples() {
        assert_eq!(
            CircleAngle::zero().preimages(deg(3)),
            vec![ang(0, 1), ang(1, 3), ang(2, 3)]
        );
        assert_eq!(ang(1, 2).preimages(deg(2)), vec![ang(1, 4), ang(3, 4)]);
        assert_eq!(
            ang(15, 26).preimages(deg(3)),
            vec![ang(5, 26), ang(41, 78), ang(67, 78)]
        );
    }

    #[test]
    fn interval_examples() {
        assert_eq!(CircleAngle::zero().interval_index(deg(5)), 0);
        assert_eq!(ang(1, 3).interval_index(deg(3)), 1);
        assert_eq!(ang(19, 26).interval_index(deg(3)), 2);
        assert_eq!(ang(2, 3).interval_index(deg(3)), 2);
    }

    #[test]
    fn itinerary_examples() {
        let w = ang(1, 3).itinerary(deg(3));
        assert_eq!(w.preperiod(), &[1]);
        assert_eq!(w.period(), &[0]);
        assert_eq!(w.to_string(), "1(0)");
        assert_eq!(ang(5, 26).itinerary(deg(3)).to_string(), "(012)");
        assert_eq!(ang(1, 3).itinerary(deg(2)).to_string(), "(01)");
        assert_eq!(ang(1, 7).itinerary(deg(2)).to_string(), "(001)");
    }

    #[test]
    fn angle_of_examples() {
        let d3 = deg(3);
        assert_eq!(Itinerary::parse("(012)", d3).unwrap().angle(), ang(5, 26));
        assert_eq!(Itinerary::parse("1(0)", d3).unwrap().angle(), ang(1, 3));
        assert_eq!(Itinerary::parse("(0)", deg(9)).unwrap().angle(), CircleAngle::zero());
        assert_eq!(Itinerary::parse("(1)", d3).unwrap().angle(), ang(1, 2));
    }

    #[test]
    fn canonical_form() {
        let d3 = deg(3);
        let w = Itinerary::parse("(0101)", d3).unwrap();
        assert_eq!(w.period(), &[0, 1]);
        // 1(01) and (10) are the same expansion 0.101010...
        let w = Itinerary::parse("1(01)", d3).unwrap();
        assert!(w.is_periodic());
        assert_eq!(w.to_string(), "(10)");
        let w = Itinerary::parse("21(0)", d3).unwrap();
        assert_eq!(w.to_string(), "21(0)");
        let w = Itinerary::parse("0(0)", d3).unwrap();
        assert_eq!(w.to_string(), "(0)");
    }

    #[test]
    fn parse_errors() {
        let d3 = deg(3);
        assert!(matches!(Itinerary::parse("(013)", d3), Err(Error::InvalidDigit { digit: 3, .. })));
        assert!(matches!(Itinerary::parse("012", d3), Err(Error::InvalidItinerary { .. })));
        assert!(matches!(Itinerary::parse("()", d3), Err(Error::InvalidItinerary { .. })));
        assert!(matches!(Itinerary::parse("(0a)", d3), Err(Error::InvalidItinerary { .. })));
        assert!(matches!(Itinerary::parse("0(2)", d3), Err(Error::DegenerateExpansion { .. })));
    }

    #[test]
    fn comma_syntax_for_large_degree() {
        let d12 = deg(12);
        let w = Itinerary::parse("(0,11,3)", d12).unwrap();
        assert_eq!(w.period(), &[0, 11, 3]);
        assert_eq!(w.to_string(), "(0,11,3)");
        let v = Itinerary::parse("5,1(0)", d12).unwrap();
        assert_eq!(v.preperiod(), &[5, 1]);
        assert_eq!(v.angle().itinerary(d12), v);
        // commas are also accepted in small bases
        assert_eq!(Itinerary::parse("(0,1,2)", deg(3)).unwrap().to_string(), "(012)");
    }

    #[test]
    fn angle_of_checks_degree() {
        let w = Itinerary::parse("(012)", deg(3)).unwrap();
        assert!(matches!(angle_of(&w, deg(2)), Err(Error::InvalidDigit { digit: 2, degree: 2 })));
        assert_eq!(angle_of(&w, deg(4)).unwrap(), ang(6, 63));
    }

    #[test]
    fn open_arcs_wrap() {
        let (a, b) = (ang(3, 4), ang(1, 4));
        assert!(CircleAngle::zero().in_open_arc(&a, &b));
        assert!(!ang(1, 2).in_open_arc(&a, &b));
        assert!(!a.in_open_arc(&a, &b));
        assert!(ang(1, 2).in_open_arc(&b, &a));
    }

    #[test]
    fn angle_text_round_trip() {
        for s in ["0/1", "5/26", "67/78"] {
            assert_eq!(s.parse::<CircleAngle>().unwrap().to_string(), s);
        }
        assert!("x/2".parse::<CircleAngle>().is_err());
        assert!("1/0".parse::<CircleAngle>().is_err());
    }
}
