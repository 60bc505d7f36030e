//! Chromatic-plane decomposition of finite simple graphs.
//!
//! A graph is split into *planes*: each plane holds a connected vertex class
//! colored with at most `capacity` (default 4) plane-local colors. The
//! [`filling`] module builds such a decomposition greedily; [`minor`] and
//! [`coloring`] provide the exact oracles (`h(G)`, `χ(G)`) the [`harness`]
//! uses to test statements about decompositions.

pub mod chp;
pub mod clique;
pub mod coloring;
pub mod error;
pub mod filling;
pub mod graph;
pub mod harness;
pub mod minor;
#[cfg(feature = "reference")]
pub mod reference;
pub mod rng;

use serde::{Deserialize, Serialize};

pub use chp::{EdgeClassification, PlacementMode, PlaneAssignment};
pub use coloring::{chromatic_number, is_k_colorable, verify_coloring, Coloring, ColoringOutcome};
pub use error::{Error, Result};
pub use filling::{chromatic_fill, Decomposition, FillConfig, ResidualPolicy};
pub use graph::{Graph, IdMap, VertexSet};
pub use minor::{hadwiger_number, has_clique_minor, verify_minor_witness, MinorWitness};

/// Resource guards for the exponential oracles.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleLimits {
    /// Largest vertex count the clique-minor search accepts (at most 64).
    pub hadwiger_ceiling: usize,
    /// Search-node budget for one chromatic-number computation.
    pub chi_budget: u64,
}

impl Default for OracleLimits {
    fn default() -> Self {
        Self {
            hadwiger_ceiling: 16,
            chi_budget: 20_000_000,
        }
    }
}

impl OracleLimits {
    pub fn validate(&self) -> Result<()> {
        if self.hadwiger_ceiling == 0 || self.hadwiger_ceiling > 64 {
            return Err(Error::InvalidConfig(format!(
                "hadwiger ceiling must lie in 1..=64, got {}",
                self.hadwiger_ceiling
            )));
        }
        if self.chi_budget == 0 {
            return Err(Error::InvalidConfig("chi budget must be positive".into()));
        }
        Ok(())
    }
}
