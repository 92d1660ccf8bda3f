use std::fmt;

use crate::error::{Error, Result};
use crate::grpmod::{FinGroup, Subgroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PlaceKind {
    Finite,
    Real,
    Complex,
}

impl fmt::Display for PlaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PlaceKind::Finite => "finite",
            PlaceKind::Real => "real",
            PlaceKind::Complex => "complex",
        })
    }
}

impl std::str::FromStr for PlaceKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "finite" => Ok(PlaceKind::Finite),
            "real" => Ok(PlaceKind::Real),
            "complex" => Ok(PlaceKind::Complex),
            other => Err(Error::Invalid(format!("unknown place kind `{other}`"))),
        }
    }
}

/// A place with its decomposition data.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PlaceSpec {
    pub name: String,
    pub kind: PlaceKind,
    /// Decomposition subgroup; for real places `⟨σ⟩`.
    pub decomposition: Subgroup,
    /// Image of complex conjugation (real places only).
    pub sigma: Option<usize>,
    /// Residue field size, for the square-class model.
    pub residue_size: Option<u64>,
}

impl PlaceSpec {
    pub fn finite(name: &str, decomposition: Subgroup, residue_size: Option<u64>) -> Self {
        PlaceSpec {
            name: name.to_string(),
            kind: PlaceKind::Finite,
            decomposition,
            sigma: None,
            residue_size,
        }
    }

    pub fn real(g: &FinGroup, name: &str, sigma: usize) -> Self {
        PlaceSpec {
            name: name.to_string(),
            kind: PlaceKind::Real,
            decomposition: Subgroup::generated(g, &[sigma]),
            sigma: Some(sigma),
            residue_size: None,
        }
    }

    pub fn complex(name: &str) -> Self {
        PlaceSpec {
            name: name.to_string(),
            kind: PlaceKind::Complex,
            decomposition: Subgroup::trivial(),
            sigma: None,
            residue_size: None,
        }
    }

    /// Checks the kind-specific invariants against `g`.
    pub fn validate(&self, g: &FinGroup) -> Result<()> {
        Subgroup::from_members(g, self.decomposition.members()).map_err(|e| {
            Error::NotSubgroup(format!("decomposition of place `{}`: {e}", self.name))
        })?;
        match self.kind {
            PlaceKind::Real => {
                let s = self.sigma.ok_or_else(|| {
                    Error::Invalid(format!("real place `{}` has no sigma", self.name))
                })?;
                if s >= g.order() || g.mul(s, s) != 0 {
                    return Err(Error::Invalid(format!(
                        "sigma of real place `{}` must be an element of order dividing 2",
                        self.name
                    )));
                }
                if self.decomposition != Subgroup::generated(g, &[s]) {
                    return Err(Error::Invalid(format!(
                        "decomposition of real place `{}` must be generated by sigma",
                        self.name
                    )));
                }
            }
            PlaceKind::Complex => {
                if !self.decomposition.is_trivial() {
                    return Err(Error::Invalid(format!(
                        "complex place `{}` must have trivial decomposition",
                        self.name
                    )));
                }
            }
            PlaceKind::Finite => {}
        }
        Ok(())
    }
}
