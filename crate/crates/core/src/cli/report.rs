use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::hypercore::VertexSet;
use crate::oracle::AlphaMethod;
use crate::shearer::{Lemma4Report, PipelineOutcome, PipelineParams};

pub const REPORT_VERSION: &str = "report_v1";

/// JSON Schema for [`ReportV1`].
pub const REPORT_SCHEMA: &str = include_str!("../../schema/report_v1.schema.json");

/// The pipeline report emitted by `alpha --mode pipeline`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportV1 {
    pub version: String,
    pub params: PipelineParams,
    pub cleanup: CleanupSummary,
    pub witness: WitnessSummary,
    /// Absent when rejection sampling accepted too few sets.
    pub lemma4: Option<Lemma4Report>,
    pub conditions: ConditionSummary,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CleanupSummary {
    pub sampled: usize,
    pub kept: usize,
    pub triangles: usize,
    pub overlaps: usize,
    pub deleted_vertices: VertexSet,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessSummary {
    pub size: usize,
    pub vertices: VertexSet,
    pub method: AlphaMethod,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ConditionSummary {
    pub alpha: f64,
    pub threshold: f64,
    pub degenerate: bool,
    /// `None` where the ratio is not a finite number.
    pub ratios: BTreeMap<String, Option<f64>>,
}

impl ReportV1 {
    pub fn from_outcome(outcome: &PipelineOutcome) -> Self {
        let c = &outcome.conditions;
        ReportV1 {
            version: REPORT_VERSION.to_string(),
            params: outcome.params,
            cleanup: CleanupSummary {
                sampled: outcome.cleanup.sampled.len(),
                kept: outcome.cleanup.kept.len(),
                triangles: outcome.cleanup.triangles_found,
                overlaps: outcome.cleanup.overlap_pairs_found,
                deleted_vertices: outcome.cleanup.deleted.clone(),
            },
            witness: WitnessSummary {
                size: outcome.witness.alpha,
                vertices: outcome.witness.witness.clone(),
                method: outcome.witness.method,
            },
            lemma4: outcome.lemma4,
            conditions: ConditionSummary {
                alpha: c.alpha,
                threshold: c.threshold,
                degenerate: c.degenerate,
                ratios: c
                    .entries
                    .iter()
                    .map(|e| (e.name.clone(), e.ratio.is_finite().then_some(e.ratio)))
                    .collect(),
            },
        }
    }
}
