//! Reading JSON inputs and turning them into core types.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::sync::Arc;

use serde::de::DeserializeOwned;
use serde::Deserialize;

use dilworth::matroids::{CountFunction, Graph, LinearMatroid};
use dilworth::setfunc::{ShiftedSum, TableFunction};
use dilworth::{Matrix, MatrixJson, PrimeField, SetFunction, Subset};

use crate::CliError;

pub fn read_json<T: DeserializeOwned>(path: &Path, what: &str) -> Result<T, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{what}: cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::Input(format!("{what}: malformed JSON in {}: {e}", path.display())))
}

pub fn read_matrix(field: PrimeField, path: &Path, what: &str) -> Result<Matrix, CliError> {
    let json: MatrixJson = read_json(path, what)?;
    Matrix::from_json(field, &json).map_err(|e| CliError::Input(format!("{what}: {e}")))
}

/// Comma-separated element indices, checked against the ground size.
pub fn parse_subset(text: Option<&str>, ground: usize) -> Result<Subset, CliError> {
    let Some(text) = text else {
        return Ok(Subset::full(ground.min(64)));
    };
    let elems = text
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<usize>()
                .map_err(|_| CliError::Input(format!("subset: '{s}' is not an element index")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Subset::try_from_elems(&elems, ground).map_err(|e| CliError::Input(format!("subset: {e}")))
}

#[derive(Debug, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case", deny_unknown_fields)]
pub enum FunctionSpec {
    Count {
        k: usize,
        l: usize,
        graph: Graph,
    },
    Linear {
        matrix: MatrixJson,
    },
    Table {
        #[serde(default)]
        ground: Option<usize>,
        values: BTreeMap<String, i64>,
    },
    ShiftedSum {
        terms: Vec<Term>,
        #[serde(default)]
        shift: i64,
    },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Term {
    #[serde(default = "one")]
    pub coef: i64,
    pub function: FunctionSpec,
}

fn one() -> i64 {
    1
}

impl FunctionSpec {
    pub fn build(&self, field: PrimeField) -> Result<Arc<dyn SetFunction>, CliError> {
        let bad = |e: dilworth::Error| CliError::Input(format!("function: {e}"));
        Ok(match self {
            FunctionSpec::Count { k, l, graph } => {
                Arc::new(CountFunction::new(Arc::new(graph.clone()), *k, *l).map_err(bad)?)
            }
            FunctionSpec::Linear { matrix } => Arc::new(LinearMatroid::new(
                Matrix::from_json(field, matrix).map_err(bad)?,
            )),
            FunctionSpec::Table { ground, values } => {
                let pairs = values
                    .iter()
                    .map(|(k, v)| {
                        k.parse::<u64>().map(|mask| (mask, *v)).map_err(|_| {
                            CliError::Input(format!("function.values: key '{k}' is not a bitmask"))
                        })
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                let inferred = pairs
                    .iter()
                    .map(|(m, _)| 64 - m.leading_zeros() as usize)
                    .max()
                    .unwrap_or(0);
                Arc::new(
                    TableFunction::from_pairs(ground.unwrap_or(inferred), &pairs).map_err(bad)?,
                )
            }
            FunctionSpec::ShiftedSum { terms, shift } => {
                let built = terms
                    .iter()
                    .map(|t| t.function.build(field).map(|f| (t.coef, f)))
                    .collect::<Result<Vec<_>, _>>()?;
                Arc::new(ShiftedSum::new(built, *shift).map_err(bad)?)
            }
        })
    }
}
