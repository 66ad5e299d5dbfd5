//! JSON group files.

use std::path::Path;

use polyad::{Automorphism, BinaryGroup, Budget, Error, HgData, NaryGroup};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Dense,
    Hg,
    Binary,
}

/// On-disk form of a group. Unknown keys are ignored so that command output
/// carrying extra fields can be read back.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupFile {
    pub arity: usize,
    pub order: usize,
    pub kind: Kind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

pub enum Loaded {
    Nary(NaryGroup),
    Binary(BinaryGroup),
}

/// Errors while reading a group file, split by exit code.
#[derive(Debug)]
pub enum LoadError {
    /// Unreadable or structurally malformed input.
    Malformed(String),
    /// Well-formed input whose data violates the group axioms.
    Invalid(Error),
}

impl GroupFile {
    pub fn dense(g: &NaryGroup, labels: Option<Vec<String>>) -> polyad::Result<Self> {
        Ok(GroupFile {
            arity: g.arity(),
            order: g.order(),
            kind: Kind::Dense,
            table: Some(g.table()?),
            group: None,
            phi: None,
            b: None,
            labels,
        })
    }

    pub fn hg(data: &HgData) -> Self {
        GroupFile {
            arity: data.arity(),
            order: data.group().order(),
            kind: Kind::Hg,
            table: None,
            group: Some(data.group().table().to_vec()),
            phi: Some(data.phi().as_slice().to_vec()),
            b: Some(data.b()),
            labels: None,
        }
    }

    pub fn binary(g: &BinaryGroup) -> Self {
        GroupFile {
            arity: 2,
            order: g.order(),
            kind: Kind::Binary,
            table: Some(g.table().to_vec()),
            group: None,
            phi: None,
            b: None,
            labels: None,
        }
    }

    pub fn parse(text: &str) -> Result<Self, LoadError> {
        serde_json::from_str(text).map_err(|e| LoadError::Malformed(e.to_string()))
    }

    pub fn read(path: &Path) -> Result<Self, LoadError> {
        let text =
            std::fs::read_to_string(path).map_err(|e| LoadError::Malformed(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    fn check_shape(&self) -> Result<(), LoadError> {
        let malformed = |msg: String| Err(LoadError::Malformed(msg));
        if self.order == 0 {
            return malformed("order must be positive".into());
        }
        if let Some(labels) = &self.labels {
            if labels.len() != self.order {
                return malformed(format!("{} labels for {} elements", labels.len(), self.order));
            }
        }
        let in_range = |v: &[usize], what: &str| match v.iter().find(|&&x| x >= self.order) {
            Some(x) => Err(LoadError::Malformed(format!("{what} entry {x} out of range"))),
            None => Ok(()),
        };
        let field = |v: &Option<Vec<usize>>, what: &str, len: usize| -> Result<(), LoadError> {
            match v {
                None => Err(LoadError::Malformed(format!("missing field `{what}`"))),
                Some(v) if v.len() != len => Err(LoadError::Malformed(format!(
                    "`{what}` has {} entries, expected {len}",
                    v.len()
                ))),
                Some(v) => in_range(v, what),
            }
        };
        match self.kind {
            Kind::Binary => {
                if self.arity != 2 {
                    return malformed("binary groups have arity 2".into());
                }
                field(&self.table, "table", self.order * self.order)
            }
            Kind::Dense => {
                if self.arity < 3 {
                    return malformed(format!("invalid arity {}", self.arity));
                }
                let len = u32::try_from(self.arity)
                    .ok()
                    .and_then(|a| self.order.checked_pow(a))
                    .ok_or_else(|| LoadError::Malformed("table too large".into()))?;
                field(&self.table, "table", len)
            }
            Kind::Hg => {
                if self.arity < 3 {
                    return malformed(format!("invalid arity {}", self.arity));
                }
                field(&self.group, "group", self.order * self.order)?;
                field(&self.phi, "phi", self.order)?;
                match self.b {
                    None => malformed("missing field `b`".into()),
                    Some(b) if b >= self.order => malformed(format!("b = {b} out of range")),
                    Some(_) => Ok(()),
                }
            }
        }
    }

    pub fn load(&self, budget: Budget) -> Result<Loaded, LoadError> {
        self.check_shape()?;
        let structural = |e: Error| match e {
            Error::TableLength { .. }
            | Error::TableTooLarge { .. }
            | Error::IndexOutOfRange { .. }
            | Error::InvalidArity(_) => LoadError::Malformed(e.to_string()),
            other => LoadError::Invalid(other),
        };
        match self.kind {
            Kind::Binary => {
                let table = self.table.clone().expect("checked");
                BinaryGroup::from_table(self.order, table)
                    .map(Loaded::Binary)
                    .map_err(structural)
            }
            Kind::Dense => {
                let table = self.table.clone().expect("checked");
                NaryGroup::from_table(self.order, self.arity, table)
                    .map(|g| Loaded::Nary(g.with_budget(budget)))
                    .map_err(structural)
            }
            Kind::Hg => {
                let group =
                    BinaryGroup::from_table(self.order, self.group.clone().expect("checked")).map_err(structural)?;
                let phi = Automorphism::new(&group, self.phi.clone().expect("checked")).map_err(structural)?;
                let data = HgData::new(group, phi, self.b.expect("checked"), self.arity).map_err(structural)?;
                Ok(Loaded::Nary(data.construct().with_budget(budget)))
            }
        }
    }
}
