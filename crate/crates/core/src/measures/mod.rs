// SPDX-License-Identifier: Apache-2.0

//! Exact complexity measures with verifiable witnesses.
//!
//! Every measure with super-linear cost has an arity ceiling in [`Limits`];
//! asking for it above the ceiling yields [`Error::Skipped`], never an
//! approximation. When several witnesses are optimal the smallest one (by
//! integer mask, or lowest point index) is returned.

mod alternation;
mod block;
mod certificate;
mod degree;
mod dtree;
mod report;
mod sensitivity;

pub use alternation::{
    alternation, alternation_value, alternation_value_shifted, salt_values,
    shift_invariant_alternation, Chain, Salt,
};
pub use block::{
    block_sensitivity, block_sensitivity_at, block_values, minimal_sensitive_blocks, BlockFamily,
};
pub use certificate::{certificate, certificate_at, Certificate};
pub use degree::{modp_degree, real_degree, sparsity};
pub use dtree::{dt_depth, DecisionTree};
pub use report::{measure_report, Degree, MeasureReport, Measured};
pub use sensitivity::{sensitive_coords_at, sensitivity, sensitivity_at, Sensitivity};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Arity ceilings per measure.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct Limits {
    pub block_sensitivity: usize,
    pub certificate: usize,
    pub salt: usize,
    pub decision_tree: usize,
    pub and_matrix: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            block_sensitivity: 14,
            certificate: 12,
            salt: 15,
            decision_tree: 13,
            and_matrix: 13,
        }
    }
}

impl Limits {
    /// True if every ceiling is at most the default one.
    pub fn within_defaults(&self) -> bool {
        let d = Limits::default();
        self.block_sensitivity <= d.block_sensitivity
            && self.certificate <= d.certificate
            && self.salt <= d.salt
            && self.decision_tree <= d.decision_tree
            && self.and_matrix <= d.and_matrix
    }

    /// Sets one ceiling by its name (`bs`, `C`, `salt`, `DT`, `matrix`).
    pub fn set(&mut self, name: &str, value: usize) -> Result<()> {
        let slot = match name {
            "bs" | "block_sensitivity" => &mut self.block_sensitivity,
            "C" | "certificate" => &mut self.certificate,
            "salt" => &mut self.salt,
            "DT" | "dt" | "decision_tree" => &mut self.decision_tree,
            "matrix" | "and_matrix" => &mut self.and_matrix,
            _ => return Err(Error::InvalidParameter(format!("unknown ceiling {name:?}"))),
        };
        *slot = value;
        Ok(())
    }
}

pub fn ceiling(measure: &str, arity: usize, max: usize) -> Result<()> {
    if arity > max {
        Err(Error::Skipped {
            measure: measure.to_string(),
            reason: format!("arity {arity} exceeds ceiling {max}"),
        })
    } else {
        Ok(())
    }
}
