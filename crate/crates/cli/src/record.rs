use kummer_torsion::torsion::full::{BoundReport, TorsionReport};
use kummer_torsion::torsion::qpart::QPartReport;
use kummer_torsion::torsion::two_torsion::TwoTorsionReport;
use serde::{Deserialize, Serialize};

use crate::input::CurveRecord;

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

/// The report fields other than the curve itself.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultFields {
    pub beta: String,
    pub exp_beta_bound: String,
    pub bound: BoundReport,
    pub two_torsion: TwoTorsionReport,
    pub parts: Vec<QPartReport>,
    pub invariants: Vec<String>,
    pub order: String,
    pub flags: Vec<String>,
}

/// One line of a results file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResultRecord {
    pub id: String,
    pub genus: usize,
    pub f: Vec<String>,
    pub engine_version: String,
    pub pack_checksum: Option<String>,
    pub wall_time_ms: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    #[serde(flatten)]
    pub result: Option<ResultFields>,
}

impl ResultRecord {
    pub fn new(
        curve: &CurveRecord,
        outcome: Result<TorsionReport, String>,
        pack_checksum: Option<String>,
        wall_time_ms: u64,
    ) -> Self {
        let (error, result) = match outcome {
            Ok(r) => (None, Some(ResultFields::from(r))),
            Err(e) => (Some(e), None),
        };
        ResultRecord {
            id: curve.id.clone(),
            genus: curve.genus,
            f: curve.f.clone(),
            engine_version: ENGINE_VERSION.to_string(),
            pack_checksum,
            wall_time_ms,
            error,
            result,
        }
    }

    /// The report this record was built from.
    pub fn report(&self) -> Option<TorsionReport> {
        let r = self.result.clone()?;
        Some(TorsionReport {
            genus: self.genus,
            f: self.f.clone(),
            beta: r.beta,
            exp_beta_bound: r.exp_beta_bound,
            bound: r.bound,
            two_torsion: r.two_torsion,
            parts: r.parts,
            invariants: r.invariants,
            order: r.order,
            flags: r.flags,
        })
    }

    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("records serialise")
    }

    pub fn from_line(line: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(line)
    }
}

impl From<TorsionReport> for ResultFields {
    fn from(r: TorsionReport) -> Self {
        ResultFields {
            beta: r.beta,
            exp_beta_bound: r.exp_beta_bound,
            bound: r.bound,
            two_torsion: r.two_torsion,
            parts: r.parts,
            invariants: r.invariants,
            order: r.order,
            flags: r.flags,
        }
    }
}
