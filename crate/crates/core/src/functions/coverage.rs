use serde::{Deserialize, Serialize};

use super::{FunctionClass, SetFunction};
use crate::error::{ProbeError, Result};
use crate::ground::{Subset, MAX_GROUND};

/// Weighted coverage: `f(S)` is the total weight of the items covered by `S`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "CoverageRepr", into = "CoverageRepr")]
pub struct CoverageFunction {
    weights: Vec<f64>,
    covers: Vec<Vec<usize>>,
    masks: Vec<Vec<u64>>,
}

#[derive(Serialize, Deserialize)]
struct CoverageRepr {
    /// Weight of each universe item.
    weights: Vec<f64>,
    /// Items covered by each ground element.
    covers: Vec<Vec<usize>>,
}

impl TryFrom<CoverageRepr> for CoverageFunction {
    type Error = ProbeError;
    fn try_from(r: CoverageRepr) -> Result<Self> {
        CoverageFunction::new(r.weights, r.covers)
    }
}

impl From<CoverageFunction> for CoverageRepr {
    fn from(f: CoverageFunction) -> Self {
        CoverageRepr {
            weights: f.weights,
            covers: f.covers,
        }
    }
}

impl CoverageFunction {
    pub fn new(weights: Vec<f64>, covers: Vec<Vec<usize>>) -> Result<Self> {
        if covers.len() > MAX_GROUND {
            return Err(ProbeError::InvalidInstance(format!(
                "coverage function on {} elements",
                covers.len()
            )));
        }
        if let Some(w) = weights.iter().find(|w| !(**w >= 0.0 && w.is_finite())) {
            return Err(ProbeError::InvalidInstance(format!("coverage weight {w} is not a finite non-negative number")));
        }
        let words = weights.len().div_ceil(64);
        let mut masks = Vec::with_capacity(covers.len());
        for items in &covers {
            let mut mask = vec![0u64; words];
            for &it in items {
                if it >= weights.len() {
                    return Err(ProbeError::InvalidInstance(format!(
                        "coverage item {it} out of range for {} items",
                        weights.len()
                    )));
                }
                mask[it / 64] |= 1 << (it % 64);
            }
            masks.push(mask);
        }
        Ok(CoverageFunction {
            weights,
            covers,
            masks,
        })
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn covers(&self) -> &[Vec<usize>] {
        &self.covers
    }

    pub(crate) fn validate(&self) -> Result<()> {
        CoverageFunction::new(self.weights.clone(), self.covers.clone()).map(|_| ())
    }
}

impl SetFunction for CoverageFunction {
    fn ground_size(&self) -> usize {
        self.covers.len()
    }

    fn eval(&self, s: Subset) -> f64 {
        let words = self.weights.len().div_ceil(64);
        let mut union = vec![0u64; words];
        for e in s {
            for (u, m) in union.iter_mut().zip(&self.masks[e]) {
                *u |= m;
            }
        }
        let mut total = 0.0;
        for (w, &bits) in union.iter().enumerate() {
            let mut rest = bits;
            while rest != 0 {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                total += self.weights[w * 64 + i];
            }
        }
        total
    }

    fn class(&self) -> FunctionClass {
        FunctionClass::MonotoneSubmodular
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_each_item_once() {
        let f = CoverageFunction::new(vec![1.0, 2.0, 4.0], vec![vec![0, 1], vec![1, 2]]).unwrap();
        assert_eq!(f.eval(Subset::EMPTY), 0.0);
        assert_eq!(f.eval(Subset::singleton(0)), 3.0);
        assert_eq!(f.eval(Subset::full(2)), 7.0);
    }

    #[test]
    fn wide_universe() {
        let weights = vec![1.0; 130];
        let f = CoverageFunction::new(weights, vec![(0..70).collect(), (60..130).collect()]).unwrap();
        assert_eq!(f.eval(Subset::full(2)), 130.0);
    }

    #[test]
    fn rejects_bad_items() {
        assert!(CoverageFunction::new(vec![1.0], vec![vec![1]]).is_err());
        assert!(CoverageFunction::new(vec![-1.0], vec![vec![0]]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let f = CoverageFunction::new(vec![1.0, 0.5], vec![vec![0], vec![0, 1]]).unwrap();
        let s = serde_json::to_string(&f).unwrap();
        assert!(s.contains("\"covers\""));
        let back: CoverageFunction = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
    }
}
