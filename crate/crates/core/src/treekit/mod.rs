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

//! Labelled trees: representation, Prüfer codec, uniform samplers and
//! Galton–Watson trees.

mod gw;
pub mod prufer;
mod rooted;
mod sample;
mod tree;

pub use gw::{
    gw_size_pmf, sample_gw, sample_gw_conditioned, sample_gw_poisson, ConditionedGw, GwConfig,
    GwSample, OffspringLaw, Poisson, DEFAULT_MAX_ATTEMPTS, DEFAULT_SIZE_CAP,
};
pub(crate) use gw::grow_parents;
pub use prufer::{prufer_decode, prufer_encode, PruferCode};
pub use rooted::{tree_stats, RootedTree};
pub use sample::{sample_code_into, sample_uniform_rooted_tree, sample_uniform_tree};
pub use tree::{EmbeddedTree, Traversal, Tree, Vertex};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TreeError {
    #[error("a tree needs at least one vertex")]
    EmptyTree,
    #[error("need at least {min} vertices, got {t}")]
    TooSmall { t: u32, min: u32 },
    #[error("vertex {vertex} outside 1..={t}")]
    VertexOutOfRange { vertex: u32, t: u32 },
    #[error("not a tree: {0}")]
    NotATree(String),
    #[error("malformed Prüfer code: {0}")]
    MalformedCode(String),
    #[error("offspring mean must lie in (0, 1], got {0}")]
    InvalidMean(f64),
    #[error("size cap must be at least 1")]
    InvalidSizeCap,
    #[error("no tree of the requested size after {attempts} attempts")]
    RetryExhausted { attempts: u64 },
    #[error("parse error: {0}")]
    Parse(String),
}
