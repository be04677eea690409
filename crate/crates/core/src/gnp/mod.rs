// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.

//! Erdős–Rényi graphs: sampling, giant component and 2-core, cover bounds
//! and the dual branching parameter.

mod decompose;
mod estimate;
mod mu;
mod sample;

pub use decompose::{decompose, validate_decomposition, CyclicComponent, GnpDecomposition};
pub use estimate::{cov_gnp_estimate, gw_surrogate_cover, CovEstimate, SurrogateCover};
pub use mu::{solve_mu, MuSolution};
pub use sample::{sample_gnp, sample_gnp_p, GnpGraph};

use thiserror::Error;

use crate::packing::PackingError;
use crate::treekit::TreeError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GnpError {
    #[error("graph needs at least one vertex")]
    NoVertices,
    #[error("edge probability {0} outside [0, 1]")]
    InvalidProbability(f64),
    #[error("eps must exceed -1, got {0}")]
    InvalidEps(f64),
    #[error("eps must be positive, got {0}")]
    NonPositiveEps(f64),
    #[error("min_edges must be at least 3, got {0}")]
    MinEdgesTooSmall(u32),
    #[error("a Galton-Watson tree exceeded {0} vertices")]
    Oversize(u32),
    #[error("parse error: {0}")]
    Parse(String),
    #[error(transparent)]
    Tree(#[from] TreeError),
    #[error(transparent)]
    Packing(#[from] PackingError),
}
