//! Symmetric powers of finite free resolutions over polynomial rings.
//!
//! Given a resolution `F•` of a module `M` (as matrices over `k[x_1, ..., x_n]`), this crate
//! builds the complex `S_jF•`, checks that it is a minimal complex, decides the grade
//! conditions on determinantal ideals under which it resolves `S_j(M)`, and evaluates the
//! closed-form Betti numbers and bounds.

pub mod betti;
pub mod groebner;
pub mod matrix;
pub mod poly;
pub mod resolution;
pub mod swcheck;
pub mod sympow;

use serde::Serialize;

/// Resource guards shared by the expensive stages.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Limits {
    pub max_minor_count: u64,
    pub spair_budget: u64,
    pub rank_cap: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_minor_count: matrix::DEFAULT_MAX_MINOR_COUNT,
            spair_budget: groebner::DEFAULT_SPAIR_BUDGET,
            rank_cap: sympow::DEFAULT_RANK_CAP,
        }
    }
}

impl Limits {
    pub fn sw_config(&self, cache: Option<groebner::GroebnerCache>) -> swcheck::SwConfig {
        swcheck::SwConfig {
            groebner: groebner::GroebnerConfig { spair_budget: Some(self.spair_budget), cache },
            max_minor_count: Some(self.max_minor_count),
        }
    }

    pub fn assemble_options(&self, force: bool) -> sympow::AssembleOptions {
        sympow::AssembleOptions { force, rank_cap: Some(self.rank_cap) }
    }
}
