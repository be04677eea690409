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

//! Splitting a path at removed edges into long segments.

use super::PackingError;

/// Inclusive vertex range `start..=end` of the host path `v_1 .. v_n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Segment {
    pub start: u32,
    pub end: u32,
}

impl Segment {
    pub fn vertices(&self) -> u32 {
        self.end - self.start + 1
    }
}

const SLACK: f64 = 1e-9;

/// Cuts the path `v_1 .. v_n` at every removed edge (index `i` is the edge
/// `v_i v_{i+1}`) and keeps the maximal pieces with at least
/// `ceil(1 / (3 alpha))` vertices.
///
/// Requires `|removed| <= alpha * n` and `alpha >= 1 / n`. Under those
/// conditions the kept pieces cover at least `(1/3 - alpha) * n` vertices.
pub fn split_path(n_vertices: u32, removed: &[u32], alpha: f64) -> Result<Vec<Segment>, PackingError> {
    let n = f64::from(n_vertices);
    if n_vertices == 0 || !(alpha * n >= 1.0 - SLACK) {
        return Err(PackingError::AlphaTooSmall { alpha, min: 1.0 / n });
    }
    let mut cuts = removed.to_vec();
    cuts.sort_unstable();
    cuts.dedup();
    if cuts.len() as f64 > alpha * n + SLACK {
        return Err(PackingError::TooManyRemoved { removed: cuts.len(), bound: alpha * n });
    }
    if let Some(&bad) = cuts.iter().find(|&&i| i == 0 || i >= n_vertices) {
        return Err(PackingError::EdgeIndexOutOfRange { index: bad, n: n_vertices });
    }
    let min_len = ((1.0 / (3.0 * alpha)) - SLACK).ceil().max(1.0) as u32;
    let mut out = Vec::new();
    let mut start = 1;
    for end in cuts.into_iter().chain([n_vertices]) {
        let seg = Segment { start, end };
        if seg.vertices() >= min_len {
            out.push(seg);
        }
        start = end + 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(split_path(7, &[], 1.0 / 7.0).unwrap(), vec![Segment { start: 1, end: 7 }]);
        let s = split_path(9, &[4], 1.0 / 9.0).unwrap();
        assert_eq!(s, vec![Segment { start: 1, end: 4 }, Segment { start: 5, end: 9 }]);
        let removed: Vec<u32> = (1..=26).map(|i| i * 3).collect();
        assert!(matches!(
            split_path(100, &removed, 0.25),
            Err(PackingError::TooManyRemoved { removed: 26, .. })
        ));
        assert!(matches!(split_path(10, &[], 0.05), Err(PackingError::AlphaTooSmall { .. })));
        assert!(split_path(10, &[10], 0.5).is_err());
    }

    #[test]
    fn short_pieces_dropped() {
        // threshold ceil(1/(3*0.3)) = 2 vertices
        let s = split_path(10, &[1, 2, 5], 0.3).unwrap();
        assert_eq!(s, vec![Segment { start: 3, end: 5 }, Segment { start: 6, end: 10 }]);
    }
}
