//! JSON records for orbits, sets, laminations and oracle reports.
//!
//! Angles are written as exact `"num/den"` strings; spatial indices in
//! `groups` are 1-based.

use serde::de::{DeserializeOwned, Error as _};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::circle::{CircleAngle, Degree, Itinerary};
use crate::error::{Error, Result};
use crate::lamination::{Lamination, Polygon};
use crate::orbit::{RotationNumber, RotationalOrbit};
use crate::rotset::{validate_set, RotationalSet};

impl Serialize for CircleAngle {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for CircleAngle {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(D::Error::custom)
    }
}

impl Serialize for RotationNumber {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for RotationNumber {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        text.parse().map_err(D::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrbitRecord {
    pub degree: u32,
    pub rotation: RotationNumber,
    pub itinerary: String,
    pub points: Vec<CircleAngle>,
}

impl From<&RotationalOrbit> for OrbitRecord {
    fn from(o: &RotationalOrbit) -> Self {
        OrbitRecord {
            degree: o.degree().get(),
            rotation: o.rotation(),
            itinerary: o.itinerary().to_string(),
            points: o.points().to_vec(),
        }
    }
}

impl TryFrom<OrbitRecord> for RotationalOrbit {
    type Error = Error;

    fn try_from(r: OrbitRecord) -> Result<Self> {
        let degree = Degree::new(r.degree)?;
        let itinerary = Itinerary::parse(&r.itinerary, degree)?;
        let orbit = RotationalOrbit::from_itinerary(&itinerary)?
            .ok_or_else(|| Error::SchemaError(format!("{itinerary} is not a rotational orbit")))?;
        if orbit.rotation() != r.rotation {
            return Err(Error::SchemaError(format!(
                "{itinerary} has rotation {}, record says {}",
                orbit.rotation(),
                r.rotation
            )));
        }
        if orbit.points() != r.points.as_slice() {
            return Err(Error::SchemaError(format!("points do not match itinerary {itinerary}")));
        }
        Ok(orbit)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SetRecord {
    pub degree: u32,
    pub rotation: RotationNumber,
    pub k: usize,
    pub orbits: Vec<OrbitRecord>,
    /// 1-based spatial indices of each group.
    pub groups: Vec<Vec<usize>>,
    pub placement: Vec<usize>,
}

impl From<&RotationalSet> for SetRecord {
    fn from(s: &RotationalSet) -> Self {
        SetRecord {
            degree: s.degree().get(),
            rotation: s.rotation(),
            k: s.k(),
            orbits: s.orbits().iter().map(OrbitRecord::from).collect(),
            groups: s
                .group_indices()
                .into_iter()
                .map(|g| g.into_iter().map(|i| i + 1).collect())
                .collect(),
            placement: s.placement().labels().to_vec(),
        }
    }
}

impl TryFrom<SetRecord> for RotationalSet {
    type Error = Error;

    fn try_from(r: SetRecord) -> Result<Self> {
        let orbits = r
            .orbits
            .iter()
            .cloned()
            .map(RotationalOrbit::try_from)
            .collect::<Result<Vec<_>>>()?;
        let set = validate_set(&orbits)?;
        let rebuilt = SetRecord::from(&set);
        if rebuilt.degree != r.degree || rebuilt.rotation != r.rotation || rebuilt.k != r.k {
            return Err(Error::SchemaError("degree, rotation or k disagree with the orbits".into()));
        }
        if rebuilt.groups != r.groups {
            return Err(Error::SchemaError(format!("groups should be {:?}", rebuilt.groups)));
        }
        if rebuilt.placement != r.placement {
            return Err(Error::SchemaError(format!("placement should be {:?}", rebuilt.placement)));
        }
        Ok(set)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LaminationRecord {
    pub degree: u32,
    pub polygons: Vec<Vec<CircleAngle>>,
    pub step: u32,
}

impl From<&Lamination> for LaminationRecord {
    fn from(l: &Lamination) -> Self {
        LaminationRecord {
            degree: l.degree().get(),
            polygons: l.polygons().iter().map(|p| p.vertices().to_vec()).collect(),
            step: l.step(),
        }
    }
}

impl TryFrom<LaminationRecord> for Lamination {
    type Error = Error;

    fn try_from(r: LaminationRecord) -> Result<Self> {
        let degree = Degree::new(r.degree)?;
        let polygons = r
            .polygons
            .into_iter()
            .map(Polygon::new)
            .collect::<Result<Vec<_>>>()
            .map_err(|e| Error::SchemaError(e.to_string()))?;
        Ok(Lamination::at_step(degree, polygons, r.step))
    }
}

macro_rules! serde_via_record {
    ($ty:ty, $record:ty) => {
        impl Serialize for $ty {
            fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
                <$record>::from(self).serialize(s)
            }
        }

        impl<'de> Deserialize<'de> for $ty {
            fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
                let record = <$record>::deserialize(d)?;
                <$ty>::try_from(record).map_err(D::Error::custom)
            }
        }
    };
}

serde_via_record!(RotationalOrbit, OrbitRecord);
serde_via_record!(RotationalSet, SetRecord);
serde_via_record!(Lamination, LaminationRecord);

/// Pretty-printed JSON for any artifact (or list of artifacts).
pub fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("artifacts always serialize")
}

/// Parses an artifact. Malformed JSON is a [`Error::ParseError`] with its
/// location; well-formed JSON of the wrong shape is a [`Error::SchemaError`].
pub fn from_json<T: DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| {
        use serde_json::error::Category;
        match e.classify() {
            Category::Syntax | Category::Eof | Category::Io => Error::ParseError {
                line: e.line(),
                column: e.column(),
                message: e.to_string(),
            },
            Category::Data => Error::SchemaError(e.to_string()),
        }
    })
}
