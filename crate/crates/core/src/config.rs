use serde::Serialize;

use crate::error::{Error, Result};
use crate::oracle::{DEFAULT_GRAPH_CAP, DEFAULT_TREE_CAP, MAX_GRAPH_ORDER, MAX_TREE_ORDER};
use crate::witness::CATALOG_BUDGET;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub workers: usize,
    pub cap_graphs: usize,
    pub cap_trees: usize,
    /// Node budget for each containment search.
    pub containment_budget: u64,
    pub format: Format,
    pub out: Option<String>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            workers: 1,
            cap_graphs: DEFAULT_GRAPH_CAP,
            cap_trees: DEFAULT_TREE_CAP,
            containment_budget: CATALOG_BUDGET,
            format: Format::Json,
            out: None,
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<()> {
        if self.workers == 0 {
            return Err(Error::InvalidRange("worker count must be at least 1".into()));
        }
        if self.cap_graphs > MAX_GRAPH_ORDER {
            return Err(Error::InvalidRange(format!("graph cap {} above maximum {MAX_GRAPH_ORDER}", self.cap_graphs)));
        }
        if self.cap_trees > MAX_TREE_ORDER {
            return Err(Error::InvalidRange(format!("tree cap {} above maximum {MAX_TREE_ORDER}", self.cap_trees)));
        }
        if self.containment_budget == 0 {
            return Err(Error::InvalidRange("containment budget must be positive".into()));
        }
        Ok(())
    }
}
