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

//! Cover bounds for a decomposed supercritical graph, and the Galton–Watson
//! surrogate for the forest hanging off the 2-core.
//!
//! All quantities count covered vertices.

use rand::Rng;
use serde::Serialize;

use super::{solve_mu, GnpDecomposition, GnpError};
use crate::packing::CoverSolver;
use crate::treekit::{grow_parents, Poisson, Tree, DEFAULT_SIZE_CAP};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CovEstimate {
    pub min_edges: u32,
    /// Small components: exact on trees; for components with a cycle, a
    /// spanning-tree cover below and the vertex count above.
    pub x_lower: u64,
    pub x_upper: u64,
    /// Cover of the hanging forest with threshold `floor(min_edges / 3)`.
    pub z: u64,
    /// `6 * |2-core| + 6 * z`.
    pub y_upper: u64,
    pub total_lower: u64,
    pub total_upper: u64,
    pub two_core_size: u64,
    /// Exact cover of the giant, available when the giant is a tree.
    pub giant_exact: Option<u64>,
}

/// Sandwiches the cover of the whole graph.
///
/// With a non-empty 2-core, `total_upper = x_upper + y_upper` and
/// `total_lower = x_lower + z`. A giant without a cycle is a tree, so its
/// cover is computed exactly and used for both totals instead.
pub fn cov_gnp_estimate(d: &GnpDecomposition, min_edges: u32) -> Result<CovEstimate, GnpError> {
    if min_edges < 3 {
        return Err(GnpError::MinEdgesTooSmall(min_edges));
    }
    let mut solver = CoverSolver::new();
    let mut cov = |tree: &Tree, l: u32| -> Result<u64, GnpError> {
        if tree.len() <= l {
            return Ok(0);
        }
        Ok(u64::from(solver.value(tree, l)?))
    };
    let mut x_lower = 0;
    let mut x_upper = 0;
    for t in &d.small_trees {
        let c = cov(&t.tree, min_edges)?;
        x_lower += c;
        x_upper += c;
    }
    for c in &d.small_cyclic {
        x_lower += cov(&c.spanning_tree.tree, min_edges)?;
        x_upper += u64::from(c.vertices());
    }
    let reduced = min_edges / 3;
    let mut z = 0;
    for t in &d.hanging_forest {
        z += cov(&t.tree, reduced)?;
    }
    let core = d.two_core.len() as u64;
    let y_upper = 6 * core + 6 * z;
    let giant_exact = if core == 0 {
        Some(cov(&d.hanging_forest[0].tree, min_edges)?)
    } else {
        None
    };
    let (total_lower, total_upper) = match giant_exact {
        Some(g) => (x_lower + g, x_upper + g),
        None => (x_lower + z, x_upper + y_upper),
    };
    Ok(CovEstimate {
        min_edges,
        x_lower,
        x_upper,
        z,
        y_upper,
        total_lower,
        total_upper,
        two_core_size: core,
        giant_exact,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SurrogateCover {
    pub mu: f64,
    pub trees: u64,
    pub total_vertices: u64,
    pub covered_vertices: u64,
    pub paths: u64,
    /// Covered vertices minus paths.
    pub edges_covered: u64,
}

/// Draws `ceil(2 eps^2 n)` independent Poisson(mu(eps)) Galton–Watson trees
/// and covers their union with paths of at least `floor(min_edges / 3)` edges.
pub fn gw_surrogate_cover<R: Rng + ?Sized>(
    eps: f64,
    n: u32,
    min_edges: u32,
    rng: &mut R,
) -> Result<SurrogateCover, GnpError> {
    if min_edges < 3 {
        return Err(GnpError::MinEdgesTooSmall(min_edges));
    }
    if n == 0 {
        return Err(GnpError::NoVertices);
    }
    let mu = solve_mu(eps)?.mu;
    let trees = (2.0 * eps * eps * f64::from(n)).ceil() as u64;
    let law = Poisson::new(mu);
    let reduced = min_edges / 3;
    let mut solver = CoverSolver::new();
    let mut parent = Vec::new();
    let mut out = SurrogateCover {
        mu,
        trees,
        total_vertices: 0,
        covered_vertices: 0,
        paths: 0,
        edges_covered: 0,
    };
    for _ in 0..trees {
        if !grow_parents(&law, DEFAULT_SIZE_CAP, rng, &mut parent) {
            return Err(GnpError::Oversize(DEFAULT_SIZE_CAP));
        }
        let size = parent.len() as u64 - 1;
        out.total_vertices += size;
        if size <= u64::from(reduced) {
            continue;
        }
        let tree = Tree::from_parents(&parent);
        let (value, paths) = solver.solve(&tree, reduced)?;
        out.covered_vertices += u64::from(value);
        out.paths += paths.len() as u64;
    }
    out.edges_covered = out.covered_vertices - out.paths;
    Ok(out)
}
