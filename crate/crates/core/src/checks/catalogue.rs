use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// What kind of operands a check consumes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    /// Arbitrary square matrices.
    Free,
    /// A pair of positive semidefinite matrices.
    Psd,
    /// One sector matrix.
    Single,
    /// One sector matrix and a normalized positive linear map.
    LinearMap,
    /// Two sector matrices.
    Pair,
    /// A tuple of accretive matrices and a normalized positive multilinear map.
    Multi,
}

macro_rules! catalogue {
    ($($variant:ident => $name:literal, $family:ident, v: $v:literal, alpha: $a:literal;)*) => {
        #[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum CheckId {
            $($variant,)*
        }

        impl CheckId {
            pub const ALL: &'static [CheckId] = &[$(CheckId::$variant,)*];

            pub fn name(self) -> &'static str {
                match self {
                    $(CheckId::$variant => $name,)*
                }
            }

            pub fn family(self) -> Family {
                match self {
                    $(CheckId::$variant => Family::$family,)*
                }
            }

            /// Whether the check depends on the weight `v`.
            pub fn uses_v(self) -> bool {
                match self {
                    $(CheckId::$variant => $v,)*
                }
            }

            /// Whether the bound carries a `sec(α)` or `cos(α)` factor.
            pub fn uses_alpha(self) -> bool {
                match self {
                    $(CheckId::$variant => $a,)*
                }
            }
        }
    };
}

catalogue! {
    Ga1 => "GA1", Free, v: false, alpha: false;
    Ga2 => "GA2", Free, v: false, alpha: false;
    Ga3 => "GA3", Psd, v: false, alpha: false;
    Ga4 => "GA4", Psd, v: false, alpha: false;
    L11s => "L11S", Free, v: false, alpha: false;
    L11d => "L11D", Single, v: false, alpha: false;
    L12s => "L12S", Single, v: false, alpha: true;
    L12d => "L12D", Single, v: false, alpha: true;
    L13 => "L13", Single, v: false, alpha: true;
    Bk1 => "BK1", Psd, v: false, alpha: false;
    Az2 => "AZ2", Psd, v: false, alpha: false;
    Bk3 => "BK3", Psd, v: false, alpha: false;
    Lin151 => "LIN151", Free, v: false, alpha: false;
    Txl => "TXL", Pair, v: true, alpha: true;
    Txr => "TXR", Pair, v: true, alpha: true;
    Ref9 => "REF9", Pair, v: false, alpha: true;
    Ref7 => "REF7", Pair, v: true, alpha: true;
    Ref8 => "REF8", Pair, v: false, alpha: true;
    Nf1 => "NF1", Pair, v: true, alpha: true;
    Nf11 => "NF11", Pair, v: true, alpha: true;
    R1 => "R1", Pair, v: true, alpha: false;
    Svharm => "SVHARM", Pair, v: true, alpha: true;
    F6 => "F6", Pair, v: false, alpha: true;
    F7 => "F7", Pair, v: false, alpha: true;
    F90 => "F90", Pair, v: false, alpha: true;
    D2233 => "D2233", Pair, v: false, alpha: true;
    D2244 => "D2244", Pair, v: false, alpha: true;
    D2255 => "D2255", Pair, v: false, alpha: true;
    F10 => "F10", Pair, v: false, alpha: true;
    F212 => "F212", Pair, v: false, alpha: true;
    P22 => "P22", Pair, v: false, alpha: true;
    Detsup => "DETSUP", Psd, v: false, alpha: false;
    Sq => "SQ", Single, v: false, alpha: false;
    P31i => "P31I", Pair, v: true, alpha: true;
    P31ii => "P31II", Pair, v: true, alpha: false;
    P31iii => "P31III", LinearMap, v: false, alpha: true;
    Rim => "RIM", Pair, v: true, alpha: false;
    R7 => "R7", Pair, v: true, alpha: true;
    Fff => "FFF", LinearMap, v: false, alpha: false;
    Ffff => "FFFF", LinearMap, v: false, alpha: true;
    Choi => "CHOI", LinearMap, v: false, alpha: false;
    Choi2 => "CHOI2", LinearMap, v: false, alpha: false;
    Cor8 => "COR8", LinearMap, v: false, alpha: true;
    Mf12 => "MF12", Multi, v: false, alpha: false;
    Mf2 => "MF2", Multi, v: false, alpha: false;
    Mf4 => "MF4", Multi, v: false, alpha: false;
    Tmm => "TMM", Multi, v: false, alpha: false;
    Re1 => "RE1", Multi, v: false, alpha: false;
    Nat => "NAT", Pair, v: false, alpha: true;
}

impl fmt::Display for CheckId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CheckId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let want = s.trim();
        CheckId::ALL
            .iter()
            .copied()
            .find(|id| id.name().eq_ignore_ascii_case(want))
            .ok_or_else(|| Error::UnknownCheck(want.to_string()))
    }
}

impl Serialize for CheckId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.name())
    }
}

impl<'de> Deserialize<'de> for CheckId {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Parses `all` or a comma-separated list of IDs, keeping catalogue order
/// and dropping duplicates.
pub fn parse_ids(spec: &str) -> Result<Vec<CheckId>> {
    if spec.trim().eq_ignore_ascii_case("all") {
        return Ok(CheckId::ALL.to_vec());
    }
    let mut ids = spec
        .split(',')
        .filter(|s| !s.trim().is_empty())
        .map(str::parse)
        .collect::<Result<Vec<CheckId>>>()?;
    if ids.is_empty() {
        return Err(Error::invalid("empty check list"));
    }
    ids.sort();
    ids.dedup();
    Ok(ids)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        assert_eq!(CheckId::ALL.len(), 49);
        for &id in CheckId::ALL {
            assert_eq!(id.name().parse::<CheckId>().unwrap(), id);
        }
        assert!(matches!("XYZ".parse::<CheckId>(), Err(Error::UnknownCheck(_))));
    }

    #[test]
    fn id_lists() {
        assert_eq!(parse_ids("all").unwrap().len(), 49);
        assert_eq!(parse_ids("f6, GA3,F6").unwrap(), vec![CheckId::Ga3, CheckId::F6]);
        assert!(parse_ids("").is_err());
    }
}
