//! JSON instance files.
//!
//! ```json
//! {"dim": 2, "kind": "cone_gaps", "cone_generators": [[1,1],[3,1]],
//!  "gaps": [[1,1],[2,1]], "label": "small"}
//! ```
//!
//! `kind` selects which list is read: `gaps` for `cone_gaps`, `multset` for
//! `multset`, `antichain` for `downset` and `generators` for `generators`.
//! Unknown keys are rejected.

use serde::{Deserialize, Serialize};

use crate::cone::SimplicialCone;
use crate::error::{Error, Result};
use crate::semigroup::CSemigroup;
use crate::vector::IntVector;

pub const DEFAULT_K_MAX: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    ConeGaps,
    Multset,
    Downset,
    Generators,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Instance {
    pub dim: usize,
    pub kind: Kind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cone_generators: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gaps: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub multset: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub antichain: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<Vec<i64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k_max: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

fn vectors(name: &str, dim: usize, rows: &Option<Vec<Vec<i64>>>) -> Result<Vec<IntVector>> {
    let rows = rows
        .as_ref()
        .ok_or_else(|| Error::InvalidInstance(format!("missing \"{name}\"")))?;
    rows.iter()
        .map(|r| {
            if r.len() != dim {
                Err(Error::InvalidInstance(format!(
                    "\"{name}\" entry {r:?} has length {}, expected {dim}",
                    r.len()
                )))
            } else {
                Ok(IntVector::new(r.clone()))
            }
        })
        .collect()
}

impl Instance {
    pub fn from_json(text: &str) -> Result<Instance> {
        let inst: Instance = serde_json::from_str(text).map_err(|e| {
            let mut message = e.to_string();
            if let Some(at) = message.rfind(" at line ") {
                message.truncate(at);
            }
            Error::Schema {
                message,
                line: e.line(),
                column: e.column(),
            }
        })?;
        inst.validate()?;
        Ok(inst)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("instances serialize")
    }

    fn validate(&self) -> Result<()> {
        if self.dim == 0 {
            return Err(Error::InvalidInstance("dim must be at least 1".into()));
        }
        let (needed, others) = match self.kind {
            Kind::ConeGaps => ("gaps", [&self.multset, &self.antichain, &self.generators]),
            Kind::Multset => ("multset", [&self.gaps, &self.antichain, &self.generators]),
            Kind::Downset => ("antichain", [&self.gaps, &self.multset, &self.generators]),
            Kind::Generators => ("generators", [&self.gaps, &self.multset, &self.antichain]),
        };
        if others.iter().any(|o| o.is_some()) {
            return Err(Error::InvalidInstance(format!(
                "kind {:?} reads only \"{needed}\"",
                self.kind
            )));
        }
        if self.kind != Kind::Generators && self.cone_generators.is_none() {
            return Err(Error::InvalidInstance("missing \"cone_generators\"".into()));
        }
        if let Some(c) = &self.cone_generators {
            vectors("cone_generators", self.dim, &Some(c.clone()))?;
        }
        self.list()?;
        Ok(())
    }

    /// The list selected by `kind`.
    pub fn list(&self) -> Result<Vec<IntVector>> {
        match self.kind {
            Kind::ConeGaps => vectors("gaps", self.dim, &self.gaps),
            Kind::Multset => vectors("multset", self.dim, &self.multset),
            Kind::Downset => vectors("antichain", self.dim, &self.antichain),
            Kind::Generators => vectors("generators", self.dim, &self.generators),
        }
    }

    pub fn k_max(&self) -> usize {
        self.k_max.unwrap_or(DEFAULT_K_MAX)
    }

    pub fn cone(&self) -> Result<SimplicialCone> {
        match &self.cone_generators {
            Some(_) => SimplicialCone::from_generators(&vectors("cone_generators", self.dim, &self.cone_generators)?),
            None => SimplicialCone::from_generators(&self.list()?),
        }
    }

    /// The C-semigroup described by the file; `k_max` overrides the file's
    /// value for generator input.
    pub fn semigroup(&self, k_max: Option<usize>) -> Result<CSemigroup> {
        let list = self.list()?;
        match self.kind {
            Kind::ConeGaps => CSemigroup::from_cone_and_gaps(self.cone()?, list),
            Kind::Multset => CSemigroup::from_multset_ideal(self.cone()?, &list),
            Kind::Downset => CSemigroup::from_downset_complement(self.cone()?, &list),
            Kind::Generators => {
                let s = CSemigroup::from_generators(&list, k_max.unwrap_or(self.k_max()))?;
                if self.cone_generators.is_some() && self.cone()?.rays() != s.cone().rays() {
                    return Err(Error::InvalidInstance(
                        "cone_generators do not span the cone of the generators".into(),
                    ));
                }
                Ok(s)
            }
        }
    }

    /// Generators of the semigroup: the file's list for generator input,
    /// otherwise the minimal generators of the C-semigroup.
    pub fn generator_list(&self, k_max: Option<usize>) -> Result<Vec<IntVector>> {
        match self.kind {
            Kind::Generators => self.list(),
            _ => Ok(self.semigroup(k_max)?.minimal_generators().to_vec()),
        }
    }
}
