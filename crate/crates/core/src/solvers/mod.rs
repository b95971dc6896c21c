//! Exact feedback vertex/arc sets, covers of arc sets and the fractional
//! relaxation τ*.

mod bounds;
mod cover;
pub(crate) mod fas;
mod fractional;
mod fvs;
mod lp;
mod sub;

use thiserror::Error;

use crate::embed::CycleError;
use crate::machinery::PackingLimits;

pub use bounds::{gw_ratio, theorem_bound, GwRatio};
pub use cover::{cover_arcs_greedy, min_vertex_cover_of_arcs};
pub use fas::{min_feedback_arc_set, FasResult};
pub use fractional::{fractional_tau_star, min_weight_dicycle, FractionalFvs};
pub use fvs::{min_feedback_vertex_set, FvsResult};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SolverError {
    #[error("{what} exceeds guard {guard}")]
    GuardExceeded { what: &'static str, guard: u64 },
    #[error("minimum feedback arc set has size {fas} but the maximum packing has {packing}")]
    LYViolation { fas: usize, packing: usize },
    #[error("digirth {0} is below 4")]
    UnsupportedGirth(String),
    #[error("ratio undefined: τ* = 0")]
    Undefined,
    #[error(transparent)]
    Cycle(#[from] CycleError),
}

/// Desk-scale limits for the exact solvers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SolverLimits {
    pub max_n: usize,
    pub node_guard: u64,
    pub cycle_guard: usize,
}

impl Default for SolverLimits {
    fn default() -> Self {
        SolverLimits {
            max_n: 30,
            node_guard: 200_000,
            cycle_guard: 20_000,
        }
    }
}

impl SolverLimits {
    pub fn packing(&self) -> PackingLimits {
        PackingLimits {
            cycle_guard: self.cycle_guard,
            node_guard: self.node_guard,
        }
    }

    pub(crate) fn check_n(&self, n: usize) -> Result<(), SolverError> {
        if n > self.max_n {
            return Err(SolverError::GuardExceeded {
                what: "vertex count",
                guard: self.max_n as u64,
            });
        }
        Ok(())
    }
}
