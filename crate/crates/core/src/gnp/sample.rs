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

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use super::GnpError;
use crate::treekit::Vertex;

/// A graph on `{1..n}` with edges `(u, v)`, `u < v`, sorted.
#[derive(Clone, Debug, PartialEq)]
pub struct GnpGraph {
    pub n: u32,
    pub p: f64,
    /// `p * n - 1`; the supercriticality parameter when built from `eps`.
    pub eps: f64,
    pub edges: Vec<(Vertex, Vertex)>,
}

impl GnpGraph {
    /// Checks the invariants and sorts the edges.
    pub fn new(n: u32, p: f64, mut edges: Vec<(Vertex, Vertex)>) -> Result<Self, GnpError> {
        if n == 0 {
            return Err(GnpError::NoVertices);
        }
        if !(0.0..=1.0).contains(&p) {
            return Err(GnpError::InvalidProbability(p));
        }
        for e in edges.iter_mut() {
            if e.0 > e.1 {
                *e = (e.1, e.0);
            }
            if e.0 == 0 || e.1 > n || e.0 == e.1 {
                return Err(GnpError::Parse(format!("bad edge {} {}", e.0, e.1)));
            }
        }
        edges.sort_unstable();
        if edges.windows(2).any(|w| w[0] == w[1]) {
            return Err(GnpError::Parse("duplicate edge".into()));
        }
        Ok(GnpGraph { n, p, eps: p * f64::from(n) - 1.0, edges })
    }

    /// Neighbour lists in CSR form: `(offsets, targets)`, indexed by label.
    pub fn adjacency(&self) -> (Vec<usize>, Vec<Vertex>) {
        let n = self.n as usize;
        let mut offsets = vec![0usize; n + 2];
        for &(u, v) in &self.edges {
            offsets[u as usize + 1] += 1;
            offsets[v as usize + 1] += 1;
        }
        for i in 1..offsets.len() {
            offsets[i] += offsets[i - 1];
        }
        let mut fill = offsets.clone();
        let mut targets = vec![0; 2 * self.edges.len()];
        for &(u, v) in &self.edges {
            targets[fill[u as usize]] = v;
            fill[u as usize] += 1;
            targets[fill[v as usize]] = u;
            fill[v as usize] += 1;
        }
        (offsets, targets)
    }
}

/// Header `n <count> p <value>` followed by one `u v` edge per line.
impl fmt::Display for GnpGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n {} p {}", self.n, self.p)?;
        for (u, v) in &self.edges {
            writeln!(f, "{u} {v}")?;
        }
        Ok(())
    }
}

impl FromStr for GnpGraph {
    type Err = GnpError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |msg: &str| GnpError::Parse(msg.to_string());
        let mut lines = s.lines().filter(|l| !l.trim().is_empty());
        let header: Vec<&str> = lines.next().ok_or_else(|| bad("missing header"))?.split_whitespace().collect();
        let [tag_n, n, tag_p, p] = header[..] else {
            return Err(bad("header must be `n <count> p <value>`"));
        };
        if tag_n != "n" || tag_p != "p" {
            return Err(bad("header must be `n <count> p <value>`"));
        }
        let n: u32 = n.parse().map_err(|_| bad("bad vertex count"))?;
        let p: f64 = p.parse().map_err(|_| bad("bad probability"))?;
        let mut edges = Vec::new();
        for line in lines {
            let mut it = line.split_whitespace().map(str::parse::<u32>);
            match (it.next(), it.next(), it.next()) {
                (Some(Ok(u)), Some(Ok(v)), None) => edges.push((u, v)),
                _ => return Err(bad(&format!("bad edge line `{line}`"))),
            }
        }
        GnpGraph::new(n, p, edges)
    }
}

/// `G(n, p)` by geometric skipping over the pairs `(u, v)`, `u < v`, in
/// column order: the gap to the next present pair is geometric, so the cost
/// is proportional to the number of edges.
pub fn sample_gnp_p<R: Rng + ?Sized>(n: u32, p: f64, rng: &mut R) -> Result<GnpGraph, GnpError> {
    if n == 0 {
        return Err(GnpError::NoVertices);
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(GnpError::InvalidProbability(p));
    }
    let mut edges = Vec::new();
    if p >= 1.0 {
        for u in 1..=n {
            for v in u + 1..=n {
                edges.push((u, v));
            }
        }
    } else if p > 0.0 {
        let log_q = (1.0 - p).ln();
        let n = i64::from(n);
        // 0-based: current column v, row w < v
        let (mut v, mut w) = (1i64, -1i64);
        while v < n {
            let r: f64 = rng.random();
            w += 1 + ((1.0 - r).ln() / log_q).floor() as i64;
            while w >= v && v < n {
                w -= v;
                v += 1;
            }
            if v < n {
                edges.push((w as Vertex + 1, v as Vertex + 1));
            }
        }
        edges.sort_unstable();
    }
    Ok(GnpGraph { n, p, eps: p * f64::from(n) - 1.0, edges })
}

/// `G(n, (1 + eps) / n)`.
pub fn sample_gnp<R: Rng + ?Sized>(n: u32, eps: f64, rng: &mut R) -> Result<GnpGraph, GnpError> {
    if !(eps >= -1.0) {
        return Err(GnpError::InvalidEps(eps));
    }
    if n == 0 {
        return Err(GnpError::NoVertices);
    }
    let p = (1.0 + eps) / f64::from(n);
    let mut g = sample_gnp_p(n, p, rng)?;
    g.eps = eps;
    Ok(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn degenerate_probabilities() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        assert!(sample_gnp(50, -1.0, &mut rng).unwrap().edges.is_empty());
        assert_eq!(sample_gnp_p(2, 1.0, &mut rng).unwrap().edges, vec![(1, 2)]);
        assert_eq!(sample_gnp_p(5, 1.0, &mut rng).unwrap().edges.len(), 10);
        assert!(sample_gnp_p(5, 1.5, &mut rng).is_err());
        assert!(sample_gnp(5, -1.5, &mut rng).is_err());
        assert!(sample_gnp(1, 0.5, &mut rng).is_err());
    }

    #[test]
    fn edges_are_simple_and_sorted() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let g = sample_gnp_p(300, 0.05, &mut rng).unwrap();
        assert!(g.edges.windows(2).all(|w| w[0] < w[1]));
        assert!(g.edges.iter().all(|&(u, v)| 1 <= u && u < v && v <= 300));
    }

    #[test]
    fn text_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let g = sample_gnp(100, 0.5, &mut rng).unwrap();
        let back: GnpGraph = g.to_string().parse().unwrap();
        assert_eq!(back.edges, g.edges);
        assert_eq!(back.p, g.p);
        assert!("n 3 p 0.5\n1 1\n".parse::<GnpGraph>().is_err());
        assert!("t 3\n".parse::<GnpGraph>().is_err());
    }
}
