//! Problem instances and their JSON file format.

mod generators;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub use generators::{
    gen_alltypes_lb, gen_partition_lb, gen_random, gen_xos_tree_lb, random_constraint, AllTypesParams,
    ConstraintKind, PartitionLbParams, RandomFamily, RandomParams, TreeVariant,
};

use crate::constraints::{Constraint, ProbeConstraint};
use crate::error::{ProbeError, Result};
use crate::functions::{verify_class, Objective, SetFunction};
use crate::ground::GroundSet;

/// Current instance/report schema version.
pub const SCHEMA_VERSION: u32 = 1;
/// Ground sets up to this size are class-audited on construction in debug builds.
pub const AUDIT_LIMIT: usize = 10;

/// Free-form provenance attached to an instance.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    #[serde(default)]
    pub family: String,
    #[serde(default)]
    pub params: BTreeMap<String, serde_json::Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl Metadata {
    pub fn new(family: &str) -> Self {
        Metadata {
            family: family.to_string(),
            ..Default::default()
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<serde_json::Value>) -> Self {
        self.params.insert(key.to_string(), value.into());
        self
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }
}

/// Ground set, objective and probing constraint over the same elements.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "InstanceFile", into = "InstanceFile")]
pub struct Instance {
    ground: GroundSet,
    objective: Objective,
    constraint: Constraint,
    metadata: Metadata,
}

/// On-disk layout of an instance.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InstanceFile {
    pub version: u32,
    pub n: usize,
    pub probs: Vec<f64>,
    pub function: Objective,
    pub constraint: Constraint,
    #[serde(default)]
    pub metadata: Metadata,
}

impl TryFrom<InstanceFile> for Instance {
    type Error = ProbeError;

    fn try_from(file: InstanceFile) -> Result<Self> {
        if file.version != SCHEMA_VERSION {
            return Err(ProbeError::InvalidInstance(format!(
                "unsupported instance version {}",
                file.version
            )));
        }
        if file.probs.len() != file.n {
            return Err(ProbeError::InvalidInstance(format!(
                "n = {} but {} probabilities given",
                file.n,
                file.probs.len()
            )));
        }
        Instance::new(GroundSet::new(file.probs)?, file.function, file.constraint, file.metadata)
    }
}

impl From<Instance> for InstanceFile {
    fn from(inst: Instance) -> Self {
        InstanceFile {
            version: SCHEMA_VERSION,
            n: inst.ground.len(),
            probs: inst.ground.probs().to_vec(),
            function: inst.objective,
            constraint: inst.constraint,
            metadata: inst.metadata,
        }
    }
}

impl Instance {
    pub fn new(ground: GroundSet, objective: Objective, constraint: Constraint, metadata: Metadata) -> Result<Self> {
        objective.validate()?;
        constraint.validate()?;
        let n = ground.len();
        if objective.ground_size() != n {
            return Err(ProbeError::InvalidInstance(format!(
                "{} objective has {} elements, ground set has {n}",
                objective.type_name(),
                objective.ground_size()
            )));
        }
        if constraint.ground_size() != n {
            return Err(ProbeError::InvalidInstance(format!(
                "{} constraint has {} elements, ground set has {n}",
                constraint.type_name(),
                constraint.ground_size()
            )));
        }
        if let Objective::Table(t) = &objective {
            let negative = crate::ground::Subset::full(n).subsets().find(|&s| t.eval(s) < 0.0);
            if let Some(s) = negative {
                return Err(ProbeError::InvalidInstance(format!(
                    "objective is negative on {s:?}; top-level objectives must be non-negative"
                )));
            }
        }
        if cfg!(debug_assertions) && n <= AUDIT_LIMIT {
            if let Some(problem) = verify_class(&objective)? {
                return Err(ProbeError::InvalidInstance(format!("class audit failed: {problem}")));
            }
        }
        Ok(Instance {
            ground,
            objective,
            constraint,
            metadata,
        })
    }

    pub fn n(&self) -> usize {
        self.ground.len()
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn objective(&self) -> &Objective {
        &self.objective
    }

    pub fn constraint(&self) -> &Constraint {
        &self.constraint
    }

    pub fn metadata(&self) -> &Metadata {
        &self.metadata
    }

    /// Same instance with different activation probabilities.
    pub fn with_ground(&self, ground: GroundSet) -> Result<Self> {
        Instance::new(ground, self.objective.clone(), self.constraint.clone(), self.metadata.clone())
    }

    /// Short SHA-256 digest of the instance content (metadata excluded).
    pub fn digest(&self) -> String {
        let body = serde_json::json!({
            "probs": self.ground.probs(),
            "function": &self.objective,
            "constraint": &self.constraint,
        });
        let hash = Sha256::digest(body.to_string().as_bytes());
        hex::encode(&hash[..8])
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("instance serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| ProbeError::InvalidInstance(e.to_string()))
    }
}
