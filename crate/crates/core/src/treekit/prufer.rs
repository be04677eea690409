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

//! Prüfer codes.
//!
//! Decoding and encoding both use the linear-time scheme that keeps a pointer
//! to the smallest unused leaf: at each step the smallest current leaf is
//! removed and its neighbour is written to (or read from) the code. After the
//! last code entry the remaining leaf is joined to `t`. This ordering is
//! stable; exhaustive enumeration in the census relies on it.

use std::fmt;
use std::str::FromStr;

use super::{Tree, TreeError, Vertex};

/// A Prüfer code for a tree on `{1..t}`: `t - 2` entries in `1..=t`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PruferCode {
    t: u32,
    code: Vec<Vertex>,
}

impl PruferCode {
    pub fn new(t: u32, code: Vec<Vertex>) -> Result<Self, TreeError> {
        if t < 2 {
            return Err(TreeError::TooSmall { t, min: 2 });
        }
        if code.len() != t as usize - 2 {
            return Err(TreeError::MalformedCode(format!(
                "length {} for t = {t}, expected {}",
                code.len(),
                t - 2
            )));
        }
        if let Some(&bad) = code.iter().find(|&&x| x == 0 || x > t) {
            return Err(TreeError::MalformedCode(format!("entry {bad} outside 1..={t}")));
        }
        Ok(PruferCode { t, code })
    }

    pub fn t(&self) -> u32 {
        self.t
    }

    pub fn as_slice(&self) -> &[Vertex] {
        &self.code
    }

    pub fn into_inner(self) -> Vec<Vertex> {
        self.code
    }
}

/// Single comma-separated line; the empty line is the code for `t = 2`.
impl fmt::Display for PruferCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, x) in self.code.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        Ok(())
    }
}

impl FromStr for PruferCode {
    type Err = TreeError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let code: Vec<Vertex> = if s.is_empty() {
            Vec::new()
        } else {
            s.split(',')
                .map(|x| {
                    x.trim()
                        .parse()
                        .map_err(|_| TreeError::Parse(format!("bad code entry {x:?}")))
                })
                .collect::<Result<_, _>>()?
        };
        PruferCode::new(code.len() as u32 + 2, code)
    }
}

/// Reusable buffers for allocation-free decoding in hot loops.
#[derive(Clone, Debug, Default)]
pub struct DecodeScratch {
    /// `parent[v]` in the tree rooted at `t`; `parent[t] == 0`.
    pub parent: Vec<Vertex>,
    /// Leaf-removal order followed by `t`: children always precede parents.
    pub order: Vec<Vertex>,
    degree: Vec<u32>,
}

impl DecodeScratch {
    pub fn new() -> Self {
        Self::default()
    }
}

/// Decodes `code` (assumed well formed for `t`) into parent pointers rooted
/// at `t`. Works for every `t >= 1`; `t = 1` and `t = 2` need an empty code.
pub fn decode_into(t: u32, code: &[Vertex], scratch: &mut DecodeScratch) {
    let n = t as usize;
    scratch.parent.clear();
    scratch.parent.resize(n + 1, 0);
    scratch.order.clear();
    if n == 1 {
        scratch.order.push(1);
        return;
    }
    scratch.degree.clear();
    scratch.degree.resize(n + 1, 1);
    let degree = &mut scratch.degree;
    for &x in code {
        degree[x as usize] += 1;
    }
    let mut ptr = 1usize;
    while degree[ptr] != 1 {
        ptr += 1;
    }
    let mut leaf = ptr;
    for &x in code {
        let x = x as usize;
        scratch.parent[leaf] = x as Vertex;
        scratch.order.push(leaf as Vertex);
        degree[x] -= 1;
        if degree[x] == 1 && x < ptr {
            leaf = x;
        } else {
            ptr += 1;
            while degree[ptr] != 1 {
                ptr += 1;
            }
            leaf = ptr;
        }
    }
    scratch.parent[leaf] = t;
    scratch.order.push(leaf as Vertex);
    scratch.order.push(t);
}

pub fn prufer_decode(code: &PruferCode) -> Tree {
    let mut scratch = DecodeScratch::new();
    decode_into(code.t, &code.code, &mut scratch);
    Tree::from_parents(&scratch.parent)
}

pub fn prufer_encode(tree: &Tree) -> Result<PruferCode, TreeError> {
    let t = tree.len();
    if t < 2 {
        return Err(TreeError::TooSmall { t, min: 2 });
    }
    let n = t as usize;
    let parent = tree.bfs(t).parent;
    let mut degree: Vec<usize> = (0..=t).map(|v| if v == 0 { 0 } else { tree.degree(v) }).collect();
    let mut code = Vec::with_capacity(n - 2);
    let mut ptr = 1usize;
    while degree[ptr] != 1 {
        ptr += 1;
    }
    let mut leaf = ptr;
    for _ in 0..n - 2 {
        let x = parent[leaf] as usize;
        code.push(x as Vertex);
        degree[x] -= 1;
        if degree[x] == 1 && x < ptr {
            leaf = x;
        } else {
            ptr += 1;
            while degree[ptr] != 1 {
                ptr += 1;
            }
            leaf = ptr;
        }
    }
    Ok(PruferCode { t, code })
}

/// Iterates every code for `t` in odometer order (last entry fastest).
pub fn for_each_code(t: u32, mut f: impl FnMut(&[Vertex])) {
    let len = t.saturating_sub(2) as usize;
    let mut code = vec![1; len];
    loop {
        f(&code);
        let mut i = len;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if code[i] < t {
                code[i] += 1;
                break;
            }
            code[i] = 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn decode_small_cases() {
        let edge = prufer_decode(&PruferCode::new(2, vec![]).unwrap());
        assert_eq!(edge.edges(), vec![(1, 2)]);
        let star = prufer_decode(&PruferCode::new(4, vec![1, 1]).unwrap());
        assert_eq!(star.edges(), vec![(1, 2), (1, 3), (1, 4)]);
    }

    #[test]
    fn encode_small_cases() {
        let edge = Tree::from_edges(2, &[(1, 2)]).unwrap();
        assert!(prufer_encode(&edge).unwrap().as_slice().is_empty());
        let star = Tree::from_edges(4, &[(2, 1), (3, 1), (4, 1)]).unwrap();
        assert_eq!(prufer_encode(&star).unwrap().as_slice(), &[1, 1]);
        assert!(prufer_encode(&Tree::singleton()).is_err());
    }

    #[test]
    fn malformed_codes_rejected() {
        assert!(PruferCode::new(4, vec![1]).is_err());
        assert!(PruferCode::new(4, vec![1, 5]).is_err());
        assert!(PruferCode::new(4, vec![0, 1]).is_err());
        assert!(PruferCode::new(1, vec![]).is_err());
    }

    #[test]
    fn decode_order_puts_children_first() {
        let mut scratch = DecodeScratch::new();
        decode_into(6, &[4, 4, 6, 5], &mut scratch);
        let mut pos = [0usize; 7];
        for (i, &v) in scratch.order.iter().enumerate() {
            pos[v as usize] = i;
        }
        for v in 1..=6u32 {
            let p = scratch.parent[v as usize];
            if p != 0 {
                assert!(pos[v as usize] < pos[p as usize]);
            }
        }
        assert_eq!(scratch.parent[6], 0);
    }

    #[test]
    fn code_text_format() {
        let code = PruferCode::new(5, vec![3, 1, 3]).unwrap();
        assert_eq!(code.to_string(), "3,1,3");
        assert_eq!("3, 1,3".parse::<PruferCode>().unwrap(), code);
        assert_eq!("".parse::<PruferCode>().unwrap().t(), 2);
    }

    #[test]
    fn odometer_visits_all_codes() {
        let mut n = 0;
        for_each_code(5, |_| n += 1);
        assert_eq!(n, 125);
        let mut m = 0;
        for_each_code(2, |c| {
            assert!(c.is_empty());
            m += 1
        });
        assert_eq!(m, 1);
    }
}
