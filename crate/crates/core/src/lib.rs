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

//! Random-structure laboratory for path packings in sparse random graphs.
//!
//! - [`treekit`]: labelled trees, Prüfer codes, uniform and Galton–Watson samplers.
//! - [`packing`]: exact and greedy path packings, m-centred edges, path splitting.
//! - [`census`]: exact and Monte Carlo counts of centred (edge, tree) pairs.
//! - [`gnp`]: G(n,p) sampling, giant / 2-core decomposition and cover bounds.
//! - [`oracle`]: lazily revealed G(n,p) with query accounting and a DFS path finder.
//! - [`lab`]: deterministic experiment runner, statistics and output files.

pub mod census;
pub mod gnp;
pub mod lab;
pub mod oracle;
pub mod packing;
pub mod treekit;
