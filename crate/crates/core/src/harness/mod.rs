//! Mechanical verdicts on statements about chromatic-plane decompositions.
//!
//! Every statement is tested, never assumed: a violation is an ordinary
//! result carrying a witness that can be re-checked on its own.
//!
//! | id    | statement under test                                                   |
//! |-------|------------------------------------------------------------------------|
//! | L1    | contracting every plane to its clique minor keeps `h(G)`               |
//! | C2.1  | edges from a vertex into one plane are all plane or all non-plane      |
//! | C2.2  | outside vertices touch every minor vertex of a plane (via completeness)|
//! | C2.3  | each placed vertex had a free color at its moment (via replay)         |
//! | C2.4  | minors of different planes are completely joined (via completeness)    |
//! | C2.5  | the graph of all plane minors is complete (via completeness)           |
//! | C2.6  | larger `h` implies larger `χ` across pairs of graphs                   |
//! | L3    | filling assigns every vertex                                           |
//! | C3.1  | placing a cut vertex/edge between two minor-rich sides splits residual |
//! | C3.2  | the next working set has the largest minor (via trace audit)           |
//! | C3.3  | contracted plane minors form a complete graph                          |
//! | T8    | `χ = 8` implies `h >= 8`, two planes, and a complete `K8` of minors     |
//! | FIG1  | in the 4+1 layout of `K5`, deleting any non-plane edge drops `h` to 4  |

mod claims;
mod fuzz;
mod report;

pub use claims::{
    check_c21, check_c23, check_c26, check_c31, check_c32, check_completeness, check_fig1,
    check_l1, check_l3, check_t8, fig1_layout, reverify, InstanceFacts,
};
pub use fuzz::{
    decomposition_verdicts, fuzz, fuzz_corpus, run_claims, Combo, CorpusEntry, ErrorRecord,
    FuzzConfig, ReportSet, Tally, ViolationRecord, ANY_COMBO,
};
pub use report::render_table;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::filling::Decomposition;
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ClaimId {
    #[serde(rename = "L1")]
    L1,
    #[serde(rename = "C2.1")]
    C2_1,
    #[serde(rename = "C2.2")]
    C2_2,
    #[serde(rename = "C2.3")]
    C2_3,
    #[serde(rename = "C2.4")]
    C2_4,
    #[serde(rename = "C2.5")]
    C2_5,
    #[serde(rename = "C2.6")]
    C2_6,
    #[serde(rename = "L3")]
    L3,
    #[serde(rename = "C3.1")]
    C3_1,
    #[serde(rename = "C3.2")]
    C3_2,
    #[serde(rename = "C3.3")]
    C3_3,
    #[serde(rename = "T8")]
    T8,
    #[serde(rename = "FIG1")]
    Fig1,
}

impl ClaimId {
    pub const ALL: [ClaimId; 13] = [
        ClaimId::L1,
        ClaimId::C2_1,
        ClaimId::C2_2,
        ClaimId::C2_3,
        ClaimId::C2_4,
        ClaimId::C2_5,
        ClaimId::C2_6,
        ClaimId::L3,
        ClaimId::C3_1,
        ClaimId::C3_2,
        ClaimId::C3_3,
        ClaimId::T8,
        ClaimId::Fig1,
    ];

    pub fn label(self) -> &'static str {
        match self {
            ClaimId::L1 => "L1",
            ClaimId::C2_1 => "C2.1",
            ClaimId::C2_2 => "C2.2",
            ClaimId::C2_3 => "C2.3",
            ClaimId::C2_4 => "C2.4",
            ClaimId::C2_5 => "C2.5",
            ClaimId::C2_6 => "C2.6",
            ClaimId::L3 => "L3",
            ClaimId::C3_1 => "C3.1",
            ClaimId::C3_2 => "C3.2",
            ClaimId::C3_3 => "C3.3",
            ClaimId::T8 => "T8",
            ClaimId::Fig1 => "FIG1",
        }
    }

    pub fn valid_labels() -> String {
        Self::ALL.map(ClaimId::label).join(", ")
    }
}

impl std::fmt::Display for ClaimId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.label())
    }
}

impl std::str::FromStr for ClaimId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Self::ALL
            .into_iter()
            .find(|c| c.label().eq_ignore_ascii_case(s))
            .ok_or_else(|| {
                Error::InvalidConfig(format!(
                    "unknown claim {s:?}; valid claims: {}",
                    Self::valid_labels()
                ))
            })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClaimStatus {
    Holds,
    Violated,
    Inconclusive,
}

/// Evidence attached to a violation: enough to re-run the check alone.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub graph: Graph,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub decomposition: Option<Decomposition>,
    /// Second graph of a pairwise comparison.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub partner: Option<Graph>,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClaimVerdict {
    pub claim: ClaimId,
    /// Sub-claim label (`"a"`..`"d"` for T8) or the check a claim is
    /// reported through (`"via-completeness"`).
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub sub: Option<String>,
    pub status: ClaimStatus,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub witness: Option<Witness>,
    pub instances: usize,
    pub detail: String,
}

impl ClaimVerdict {
    pub(crate) fn new(claim: ClaimId, status: ClaimStatus, detail: impl Into<String>) -> Self {
        Self {
            claim,
            sub: None,
            status,
            witness: None,
            instances: 1,
            detail: detail.into(),
        }
    }

    pub(crate) fn holds(claim: ClaimId, detail: impl Into<String>) -> Self {
        Self::new(claim, ClaimStatus::Holds, detail)
    }

    pub(crate) fn inconclusive(claim: ClaimId, detail: impl Into<String>) -> Self {
        Self::new(claim, ClaimStatus::Inconclusive, detail)
    }

    pub(crate) fn violated(claim: ClaimId, witness: Witness) -> Self {
        let detail = witness.detail.clone();
        Self {
            witness: Some(witness),
            ..Self::new(claim, ClaimStatus::Violated, detail)
        }
    }

    pub(crate) fn with_sub(mut self, sub: &str) -> Self {
        self.sub = Some(sub.to_string());
        self
    }

    /// `T8(a)`, `C2.2[via-completeness]`, or just the claim label.
    pub fn key(&self) -> String {
        match &self.sub {
            None => self.claim.label().to_string(),
            Some(s) if s.len() == 1 => format!("{}({s})", self.claim),
            Some(s) => format!("{}[{s}]", self.claim),
        }
    }
}
