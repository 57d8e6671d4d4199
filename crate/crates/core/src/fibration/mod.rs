//! Fibrations of 3-valent GKM graphs over 2-valent ones and their
//! classification by `([k_1, …, k_n], η)`.

mod base;
mod build;
mod interior;
mod isomorphism;
mod total;

pub use base::{BaseData, BaseDataSummary};
pub use build::build_total;
pub use interior::{interior_by_k, interior_vertices};
pub use isomorphism::total_isomorphic;
pub use total::Fibration;

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::hash::{Hash, Hasher};

/// Whether lifted loops around the base close up (`η = 0`) or not (`η = 1`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Gluing {
    Product,
    Twisted,
}

/// Classification datum: nonzero `k_1, …, k_n` up to a global sign, and `η`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct KVector {
    ks: Vec<i64>,
    eta: u8,
}

impl KVector {
    pub fn new(ks: Vec<i64>, eta: u8) -> Result<Self> {
        if ks.is_empty() {
            return Err(Error::PreconditionUnmet("a K-vector needs at least one entry".into()));
        }
        if let Some(i) = ks.iter().position(|&k| k == 0) {
            return Err(Error::PreconditionUnmet(format!("k_{} is zero", i + 1)));
        }
        if eta > 1 {
            return Err(Error::PreconditionUnmet(format!("eta must be 0 or 1, got {eta}")));
        }
        Ok(KVector { ks, eta })
    }

    pub fn ks(&self) -> &[i64] {
        &self.ks
    }

    pub fn n(&self) -> usize {
        self.ks.len()
    }

    pub fn eta(&self) -> u8 {
        self.eta
    }

    pub fn gluing(&self) -> Gluing {
        if self.eta == 0 {
            Gluing::Product
        } else {
            Gluing::Twisted
        }
    }

    pub fn negated(&self) -> KVector {
        KVector { ks: self.ks.iter().map(|k| -k).collect(), eta: self.eta }
    }

    /// Representative with `k_1 > 0`.
    pub fn normalized(&self) -> KVector {
        if self.ks[0] < 0 {
            self.negated()
        } else {
            self.clone()
        }
    }
}

impl PartialEq for KVector {
    fn eq(&self, other: &Self) -> bool {
        self.eta == other.eta && (self.ks == other.ks || self.ks.iter().zip(&other.ks).all(|(a, b)| *a == -b))
            && self.ks.len() == other.ks.len()
    }
}

impl Eq for KVector {}

impl Hash for KVector {
    fn hash<H: Hasher>(&self, state: &mut H) {
        let n = self.normalized();
        n.ks.hash(state);
        n.eta.hash(state);
    }
}

/// Prints the representative with `k_1 > 0`.
impl fmt::Display for KVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ks: Vec<String> = self.normalized().ks.iter().map(|k| k.to_string()).collect();
        write!(f, "[{}] eta={}", ks.join(","), self.eta)
    }
}
