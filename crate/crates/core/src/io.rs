//! JSON input files for actions and multicurves.
//!
//! Action file:
//! `{"group": {"type": "dihedral", "n": 5}, "signature": {"genus": 0, "cone_orders": [2,2,2,2,5]},
//!   "images": ["s", "r s", "r s", "r s", "r"]}`
//!
//! A table group is `{"type": "table", "order": K, "table": [[...]], "names": [...]}` with
//! 0-based, row-major products. Images list the cone generators first, then `a1, b1, a2, b2, ...`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::{GroupError, GroupTable};
use crate::multicurve::MulticurveSpec;
use crate::orbifold::{ActionError, OrbifoldSignature, SurfaceKernelAction};

#[derive(Debug, Error)]
pub enum InputError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Action(#[from] ActionError),
    #[error("declared order {declared} but the table has {rows} rows")]
    DeclaredOrder { declared: usize, rows: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum GroupInput {
    Dihedral {
        n: usize,
    },
    Table {
        order: usize,
        table: Vec<Vec<usize>>,
        names: Vec<String>,
    },
}

impl GroupInput {
    pub fn build(&self) -> Result<GroupTable, InputError> {
        match self {
            GroupInput::Dihedral { n } => Ok(GroupTable::dihedral(*n)?),
            GroupInput::Table { order, table, names } => {
                if *order != table.len() {
                    return Err(InputError::DeclaredOrder {
                        declared: *order,
                        rows: table.len(),
                    });
                }
                Ok(GroupTable::from_table(table.clone(), names.clone())?)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionInput {
    pub group: GroupInput,
    pub signature: OrbifoldSignature,
    pub images: Vec<String>,
}

impl ActionInput {
    pub fn build(&self) -> Result<SurfaceKernelAction, InputError> {
        let group = self.group.build()?;
        let names: Vec<&str> = self.images.iter().map(String::as_str).collect();
        Ok(SurfaceKernelAction::from_names(group, self.signature.clone(), &names)?)
    }
}

pub fn parse_action(text: &str) -> Result<SurfaceKernelAction, InputError> {
    serde_json::from_str::<ActionInput>(text)?.build()
}

pub fn parse_multicurve(text: &str) -> Result<MulticurveSpec, InputError> {
    Ok(serde_json::from_str(text)?)
}
