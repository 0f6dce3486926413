use serde::{Deserialize, Serialize};

/// Replay metadata for one verified instance.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct InstanceMeta {
    pub p: u64,
    pub d: usize,
    pub size: u64,
    pub seed: u64,
    pub generator: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct RhsTerm {
    pub name: String,
    pub value: f64,
}

/// One verified inequality instance: the exact left side, each right-side
/// term, and the fitted constant lhs / sum(rhs).
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct BoundCheckRecord {
    pub name: String,
    pub lhs: f64,
    pub rhs_terms: Vec<RhsTerm>,
    pub fitted_c: f64,
    pub instance: InstanceMeta,
}

impl BoundCheckRecord {
    pub fn new(
        name: impl Into<String>,
        lhs: f64,
        rhs_terms: Vec<(&str, f64)>,
        instance: InstanceMeta,
    ) -> BoundCheckRecord {
        let rhs_terms: Vec<RhsTerm> = rhs_terms
            .into_iter()
            .map(|(n, v)| RhsTerm {
                name: n.to_string(),
                value: v,
            })
            .collect();
        let total: f64 = rhs_terms.iter().map(|t| t.value).sum();
        BoundCheckRecord {
            name: name.into(),
            lhs,
            fitted_c: lhs / total,
            rhs_terms,
            instance,
        }
    }

    pub fn rhs_total(&self) -> f64 {
        self.rhs_terms.iter().map(|t| t.value).sum()
    }
}
