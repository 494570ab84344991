use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::lattice::{int_vec, IntMatrix, IntVector};

use super::{BasedRootDatum, GaloisActionData};

/// A root datum with its Galois action; the unit of JSON exchange.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupDatum {
    pub datum: BasedRootDatum,
    pub galois: GaloisActionData,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGalois {
    order: usize,
    table: Vec<Vec<usize>>,
    matrices: Vec<Vec<Vec<i64>>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDatum {
    rank: usize,
    roots: Vec<Vec<i64>>,
    coroots: Vec<Vec<i64>>,
    simple: Vec<usize>,
    galois: RawGalois,
}

fn small(v: &[BigInt]) -> Result<Vec<i64>> {
    v.iter()
        .map(|x| x.to_i64().ok_or_else(|| Error::Parse(format!("entry {x} does not fit in 64 bits"))))
        .collect()
}

impl GroupDatum {
    pub fn new(datum: BasedRootDatum, galois: GaloisActionData) -> Result<Self> {
        datum.ensure_valid()?;
        galois.validate_for(&datum)?;
        Ok(GroupDatum { datum, galois })
    }

    fn to_raw(&self) -> Result<RawDatum> {
        let vecs = |vs: &[IntVector]| vs.iter().map(|v| small(v)).collect::<Result<Vec<_>>>();
        let matrices = self
            .galois
            .matrices()
            .iter()
            .map(|m| m.row_vecs().iter().map(|r| small(r)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Ok(RawDatum {
            rank: self.datum.rank(),
            roots: vecs(self.datum.roots())?,
            coroots: vecs(self.datum.coroots())?,
            simple: self.datum.simple_indices().to_vec(),
            galois: RawGalois { order: self.galois.order(), table: self.galois.table().to_vec(), matrices },
        })
    }

    fn from_raw(raw: RawDatum) -> Result<Self> {
        let n = raw.rank;
        let vecs = |vs: &[Vec<i64>]| vs.iter().map(|v| int_vec(v)).collect::<Vec<_>>();
        let datum = BasedRootDatum::new(n, vecs(&raw.roots), vecs(&raw.coroots), raw.simple)?;
        if raw.galois.order != raw.galois.table.len() {
            return Err(Error::Parse("galois order disagrees with table size".into()));
        }
        let matrices = raw
            .galois
            .matrices
            .iter()
            .map(|m| {
                if m.len() != n || m.iter().any(|r| r.len() != n) {
                    return Err(Error::DimensionMismatch { expected: n, found: m.len() });
                }
                Ok(IntMatrix::from_rows(&vecs(m), n))
            })
            .collect::<Result<Vec<_>>>()?;
        let galois = GaloisActionData::new(raw.galois.table, matrices)?;
        Self::new(datum, galois)
    }

    pub fn to_json_value(&self) -> Result<serde_json::Value> {
        serde_json::to_value(self.to_raw()?).map_err(|e| Error::Parse(e.to_string()))
    }

    pub fn to_json(&self) -> Result<String> {
        serde_json::to_string(&self.to_raw()?).map_err(|e| Error::Parse(e.to_string()))
    }

    /// Parses and validates.
    pub fn from_json(s: &str) -> Result<Self> {
        let raw: RawDatum = serde_json::from_str(s).map_err(|e| Error::Parse(e.to_string()))?;
        Self::from_raw(raw)
    }
}

impl Serialize for GroupDatum {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_raw().map_err(serde::ser::Error::custom)?.serialize(s)
    }
}

impl<'de> Deserialize<'de> for GroupDatum {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Self::from_raw(RawDatum::deserialize(d)?).map_err(serde::de::Error::custom)
    }
}
