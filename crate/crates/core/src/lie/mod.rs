//! Contact-graded real simple Lie algebras in explicit bases.

pub mod algebra;
pub mod certificate;
pub mod chevalley;
pub mod classical;
pub mod json;
pub mod roots;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::linalg::LinalgError;

pub use algebra::{GradedLieAlgebra, Metadata};
pub use certificate::{certify_contact, special_subalgebra, ContactCertificate};
pub use chevalley::construct_split;
pub use classical::{construct_sl, construct_so, construct_so_star, construct_su};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Family {
    Sl,
    Su,
    So,
    SoStar,
    SplitG2,
    SplitF4,
    SplitE6,
    SplitE7,
    SplitE8,
}

impl Family {
    /// Type A families (SL, SU), where the grading has a two-dimensional center in degree zero.
    pub fn is_type_a(self) -> bool {
        matches!(self, Family::Sl | Family::Su)
    }

    pub fn is_split(self) -> bool {
        matches!(
            self,
            Family::SplitG2 | Family::SplitF4 | Family::SplitE6 | Family::SplitE7 | Family::SplitE8
        )
    }
}

#[derive(Debug, thiserror::Error)]
pub enum LieError {
    #[error("invalid parameters: {0}")]
    Parameter(String),
    #[error("axiom `{axiom}` fails at basis indices {witness:?}")]
    Certification { axiom: String, witness: Vec<usize> },
    #[error("internal consistency error: {0}")]
    Consistency(String),
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    #[error("malformed algebra document: {0}")]
    Document(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

/// A family together with its parameters, written `SL:2`, `SU:1,1`, `G2`, ...
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FamilySpec {
    pub family: Family,
    pub params: Vec<usize>,
}

impl FamilySpec {
    pub fn new(family: Family, params: &[usize]) -> Self {
        Self { family, params: params.to_vec() }
    }

    pub fn build(&self) -> Result<GradedLieAlgebra, LieError> {
        let p = &self.params;
        let want = |k: usize| {
            if p.len() == k {
                Ok(())
            } else {
                Err(LieError::Parameter(format!("{} expects {k} parameter(s)", self)))
            }
        };
        match self.family {
            Family::Sl => want(1).and_then(|_| construct_sl(p[0])),
            Family::Su => want(2).and_then(|_| construct_su(p[0], p[1])),
            Family::So => want(2).and_then(|_| construct_so(p[0], p[1])),
            Family::SoStar => want(1).and_then(|_| construct_so_star(p[0])),
            f => want(0).and_then(|_| construct_split(f)),
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self.family {
            Family::Sl => "SL",
            Family::Su => "SU",
            Family::So => "SO",
            Family::SoStar => "SO_STAR",
            Family::SplitG2 => "G2",
            Family::SplitF4 => "F4",
            Family::SplitE6 => "E6",
            Family::SplitE7 => "E7",
            Family::SplitE8 => "E8",
        };
        f.write_str(name)?;
        if !self.params.is_empty() {
            let ps: Vec<String> = self.params.iter().map(|x| x.to_string()).collect();
            write!(f, ":{}", ps.join(","))?;
        }
        Ok(())
    }
}

impl FromStr for FamilySpec {
    type Err = LieError;

    fn from_str(s: &str) -> Result<Self, LieError> {
        let (name, rest) = s.split_once(':').unwrap_or((s, ""));
        let family = match name.trim().to_ascii_uppercase().as_str() {
            "SL" => Family::Sl,
            "SU" => Family::Su,
            "SO" => Family::So,
            "SO_STAR" | "SOSTAR" | "SO*" => Family::SoStar,
            "G2" | "SPLIT_G2" => Family::SplitG2,
            "F4" | "SPLIT_F4" => Family::SplitF4,
            "E6" | "SPLIT_E6" => Family::SplitE6,
            "E7" | "SPLIT_E7" => Family::SplitE7,
            "E8" | "SPLIT_E8" => Family::SplitE8,
            _ => return Err(LieError::UnknownFamily(s.to_string())),
        };
        let params = if rest.trim().is_empty() {
            Vec::new()
        } else {
            rest.split(',')
                .map(|t| t.trim().parse::<usize>().map_err(|_| LieError::UnknownFamily(s.to_string())))
                .collect::<Result<Vec<_>, _>>()?
        };
        let spec = FamilySpec { family, params };
        let expected = match family {
            Family::Sl | Family::SoStar => 1,
            Family::Su | Family::So => 2,
            _ => 0,
        };
        if spec.params.len() != expected {
            return Err(LieError::UnknownFamily(s.to_string()));
        }
        Ok(spec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_labels_roundtrip() {
        for s in ["SL:2", "SU:1,1", "SO:3,0", "SO_STAR:2", "G2", "E8"] {
            let f: FamilySpec = s.parse().unwrap();
            assert_eq!(f.to_string(), s);
        }
        assert!("SL".parse::<FamilySpec>().is_err());
        assert!("B7".parse::<FamilySpec>().is_err());
        assert_eq!(serde_json::to_string(&Family::SoStar).unwrap(), "\"SO_STAR\"");
        assert_eq!(serde_json::to_string(&Family::SplitG2).unwrap(), "\"SPLIT_G2\"");
    }
}
