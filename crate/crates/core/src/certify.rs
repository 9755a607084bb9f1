//! Two-sided certificates: an edge-count upper bound at `r` joined with a
//! verified colouring on `r - 1` vertices.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::ramsey::{ramsey_eval, upper_cert_21, Outcome, UpperCertificate};
use crate::trees::TreeSpec;
use crate::witness::{lower_witness_budget, VerifiedWitness};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum CertStatus {
    Complete,
    Partial,
}

#[derive(Debug, Clone, Serialize)]
pub struct Certificate {
    pub a: TreeSpec,
    pub b: TreeSpec,
    pub r: u64,
    pub status: CertStatus,
    pub citations: Vec<String>,
    pub upper: UpperCertificate,
    pub lower: Option<VerifiedWitness>,
    /// `upper`, `lower`, or both when the certificate is partial.
    pub failing: Vec<String>,
}

pub fn certify(a: &TreeSpec, b: &TreeSpec) -> Result<Certificate> {
    certify_budget(a, b, crate::witness::CATALOG_BUDGET)
}

pub fn certify_budget(a: &TreeSpec, b: &TreeSpec, budget: u64) -> Result<Certificate> {
    let eval = ramsey_eval(a, b)?;
    let r = match eval.outcome {
        Outcome::Exact { value } => value,
        other => {
            return Err(Error::NotCovered(format!(
                "{} vs {}: table gives {}",
                a.pretty(),
                b.pretty(),
                other.short()
            )))
        }
    };
    let upper = upper_cert_21(a, b, r)?;
    let lower = if r >= 2 {
        lower_witness_budget(a, b, (r - 1) as usize, Some(budget))?
    } else {
        None
    };
    let mut failing = Vec::new();
    if !upper.holds {
        failing.push("upper".to_string());
    }
    if lower.is_none() {
        failing.push("lower".to_string());
    }
    Ok(Certificate {
        a: a.clone(),
        b: b.clone(),
        r,
        status: if failing.is_empty() { CertStatus::Complete } else { CertStatus::Partial },
        citations: eval.citations,
        upper,
        lower,
        failing,
    })
}
