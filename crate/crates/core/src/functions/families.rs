use serde::{Deserialize, Serialize};

use super::{FunctionClass, SetFunction};
use crate::error::{ProbeError, Result};
use crate::ground::{Subset, MAX_GROUND};

fn invalid<T>(msg: String) -> Result<T> {
    Err(ProbeError::InvalidInstance(msg))
}

pub const TABLE_FUNCTION_LIMIT: usize = 16;

/// Explicit value for each of the `2^n` subsets, indexed by bit mask.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableFunction {
    n: usize,
    values: Vec<f64>,
    #[serde(default = "arbitrary")]
    class: FunctionClass,
}

fn arbitrary() -> FunctionClass {
    FunctionClass::Arbitrary
}

impl TableFunction {
    pub fn new(n: usize, values: Vec<f64>, class: FunctionClass) -> Result<Self> {
        let f = TableFunction { n, values, class };
        f.validate()?;
        Ok(f)
    }

    /// Tabulates any function on at most 16 elements.
    pub fn from_fn(n: usize, class: FunctionClass, f: impl Fn(Subset) -> f64) -> Result<Self> {
        if n > TABLE_FUNCTION_LIMIT {
            return invalid(format!("table function on {n} > {TABLE_FUNCTION_LIMIT} elements"));
        }
        let values = (0..1u32 << n).map(|b| f(Subset::from_bits(b))).collect();
        TableFunction::new(n, values, class)
    }

    pub(crate) fn validate(&self) -> Result<()> {
        if self.n > TABLE_FUNCTION_LIMIT {
            return invalid(format!("table function on {} > {TABLE_FUNCTION_LIMIT} elements", self.n));
        }
        if self.values.len() != 1 << self.n {
            return invalid(format!("table needs {} values, got {}", 1 << self.n, self.values.len()));
        }
        if self.values[0] != 0.0 {
            return invalid(format!("table value of the empty set is {}", self.values[0]));
        }
        if self.values.iter().any(|v| !v.is_finite()) {
            return invalid("table contains a non-finite value".into());
        }
        Ok(())
    }
}

impl SetFunction for TableFunction {
    fn ground_size(&self) -> usize {
        self.n
    }
    fn eval(&self, s: Subset) -> f64 {
        self.values[s.bits() as usize]
    }
    fn class(&self) -> FunctionClass {
        self.class
    }
}

/// Rank function of a partition matroid: `Σ_parts min(|S ∩ part|, capacity)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PartitionRank {
    /// Part label of each element.
    parts: Vec<usize>,
    /// Capacity of each part.
    capacities: Vec<usize>,
}

impl PartitionRank {
    pub fn new(parts: Vec<usize>, capacities: Vec<usize>) -> Result<Self> {
        let f = PartitionRank { parts, capacities };
        f.validate()?;
        Ok(f)
    }

    /// Every part has capacity 1: the number of parts hit by `S`.
    pub fn unit(parts: Vec<usize>) -> Result<Self> {
        let k = parts.iter().max().map_or(0, |m| m + 1);
        PartitionRank::new(parts, vec![1; k])
    }

    pub(crate) fn validate(&self) -> Result<()> {
        if self.parts.len() > MAX_GROUND {
            return invalid(format!("partition rank on {} elements", self.parts.len()));
        }
        if let Some(p) = self.parts.iter().find(|&&p| p >= self.capacities.len()) {
            return invalid(format!("part label {p} has no capacity"));
        }
        Ok(())
    }
}

impl SetFunction for PartitionRank {
    fn ground_size(&self) -> usize {
        self.parts.len()
    }

    fn eval(&self, s: Subset) -> f64 {
        let mut counts = vec![0usize; self.capacities.len()];
        for e in s {
            counts[self.parts[e]] += 1;
        }
        counts
            .iter()
            .zip(&self.capacities)
            .map(|(&c, &cap)| c.min(cap))
            .sum::<usize>() as f64
    }

    fn class(&self) -> FunctionClass {
        FunctionClass::MonotoneSubmodular
    }
}

/// Weighted cut function of an undirected graph on the ground set.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CutFunction {
    n: usize,
    edges: Vec<(usize, usize, f64)>,
}

impl CutFunction {
    pub fn new(n: usize, edges: Vec<(usize, usize, f64)>) -> Result<Self> {
        let f = CutFunction { n, edges };
        f.validate()?;
        Ok(f)
    }

    pub fn edges(&self) -> &[(usize, usize, f64)] {
        &self.edges
    }

    pub(crate) fn validate(&self) -> Result<()> {
        if self.n > MAX_GROUND {
            return invalid(format!("cut function on {} elements", self.n));
        }
        for &(u, v, w) in &self.edges {
            if u >= self.n || v >= self.n {
                return invalid(format!("edge ({u}, {v}) out of range"));
            }
            if u == v {
                return invalid(format!("self-loop at {u}"));
            }
            if !(w >= 0.0 && w.is_finite()) {
                return invalid(format!("edge weight {w} is negative or not finite"));
            }
        }
        Ok(())
    }
}

impl SetFunction for CutFunction {
    fn ground_size(&self) -> usize {
        self.n
    }

    fn eval(&self, s: Subset) -> f64 {
        self.edges
            .iter()
            .filter(|&&(u, v, _)| s.contains(u) != s.contains(v))
            .map(|e| e.2)
            .sum()
    }

    fn class(&self) -> FunctionClass {
        FunctionClass::Submodular
    }
}

/// `1` when `S` holds at least one element of every type, else `0`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AllTypesFunction {
    /// Type label of each element.
    types: Vec<usize>,
    num_types: usize,
}

impl AllTypesFunction {
    pub fn new(types: Vec<usize>, num_types: usize) -> Result<Self> {
        let f = AllTypesFunction { types, num_types };
        f.validate()?;
        Ok(f)
    }

    pub fn type_of(&self, e: usize) -> usize {
        self.types[e]
    }

    pub fn num_types(&self) -> usize {
        self.num_types
    }

    pub(crate) fn validate(&self) -> Result<()> {
        if self.types.len() > MAX_GROUND {
            return invalid(format!("all-types function on {} elements", self.types.len()));
        }
        if self.num_types == 0 {
            return invalid("all-types function needs at least one type".into());
        }
        if let Some(t) = self.types.iter().find(|&&t| t >= self.num_types) {
            return invalid(format!("type label {t} >= {}", self.num_types));
        }
        Ok(())
    }
}

impl SetFunction for AllTypesFunction {
    fn ground_size(&self) -> usize {
        self.types.len()
    }

    fn eval(&self, s: Subset) -> f64 {
        let mut seen = 0u64;
        for e in s {
            seen |= 1 << self.types[e];
        }
        if seen.count_ones() as usize == self.num_types {
            1.0
        } else {
            0.0
        }
    }

    fn class(&self) -> FunctionClass {
        FunctionClass::Arbitrary
    }
}
