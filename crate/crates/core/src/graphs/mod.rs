//! Finite balls in regular graphs and brute-force circuit counts on them.

mod builders;
mod walks;
mod words;

pub use builders::{
    build_pkd_ball, build_square_lattice_ball, build_tessellation_ball, build_tree_ball, BuildOptions,
    DEFAULT_VERTEX_CAP,
};
pub use walks::{count_closed_walks, count_spiky_circuits, WalkCounts};
pub use words::{count_avoiding_words, surface_forbidden_factors, surface_involution};

use std::collections::VecDeque;
use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::error::{Error, Result};

/// What a ball was cut out of.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BallKind {
    Tree,
    Tessellation { m: u32 },
    Pkd { k: u32 },
    SquareLattice,
}

/// Rooted ball with paired directed edges (darts) in CSR layout.
///
/// Dart `e` runs from `source(e)` to `target(e)`; `reverse(e)` is the opposite dart.
#[derive(Clone, Debug)]
pub struct GraphBall {
    pub d: u32,
    pub kind: BallKind,
    /// Radius the ball was cut at.
    pub radius: u32,
    /// Every vertex at depth below this has all `d` neighbours present.
    pub complete_radius: u32,
    offsets: Vec<u32>,
    targets: Vec<u32>,
    reverse: Vec<u32>,
    layer: Vec<u32>,
}

impl GraphBall {
    /// Builds from symmetric adjacency lists rooted at vertex 0, keeping only vertices within `radius`.
    pub fn from_adjacency(adj: &[Vec<u32>], d: u32, kind: BallKind, radius: u32, complete_radius: u32) -> Result<Self> {
        let n = adj.len();
        let mut depth = vec![u32::MAX; n];
        let mut order = Vec::new();
        let mut queue = VecDeque::new();
        depth[0] = 0;
        queue.push_back(0u32);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            if depth[v as usize] == radius {
                continue;
            }
            for &w in &adj[v as usize] {
                if depth[w as usize] == u32::MAX {
                    depth[w as usize] = depth[v as usize] + 1;
                    queue.push_back(w);
                }
            }
        }
        // renumber in BFS order
        let mut new_id = vec![u32::MAX; n];
        for (i, &v) in order.iter().enumerate() {
            new_id[v as usize] = i as u32;
        }
        let mut offsets = Vec::with_capacity(order.len() + 1);
        let mut targets = Vec::new();
        offsets.push(0u32);
        let mut layer = Vec::with_capacity(order.len());
        for &v in &order {
            for &w in &adj[v as usize] {
                let nw = new_id[w as usize];
                if nw != u32::MAX {
                    targets.push(nw);
                }
            }
            offsets.push(targets.len() as u32);
            layer.push(depth[v as usize]);
        }
        let reverse = pair_darts(&offsets, &targets)?;
        Ok(GraphBall { d, kind, radius, complete_radius, offsets, targets, reverse, layer })
    }

    pub fn vertex_count(&self) -> usize {
        self.layer.len()
    }

    pub fn dart_count(&self) -> usize {
        self.targets.len()
    }

    pub fn degree(&self, v: u32) -> usize {
        (self.offsets[v as usize + 1] - self.offsets[v as usize]) as usize
    }

    /// Darts leaving `v`.
    pub fn darts(&self, v: u32) -> std::ops::Range<usize> {
        self.offsets[v as usize] as usize..self.offsets[v as usize + 1] as usize
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.targets[self.darts(v)]
    }

    pub fn target(&self, e: usize) -> u32 {
        self.targets[e]
    }

    pub fn source(&self, e: usize) -> u32 {
        self.targets[self.reverse[e] as usize]
    }

    pub fn reverse(&self, e: usize) -> usize {
        self.reverse[e] as usize
    }

    pub fn layer(&self, v: u32) -> u32 {
        self.layer[v as usize]
    }

    /// Number of vertices at each depth.
    pub fn layer_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0usize; self.radius as usize + 1];
        for &l in &self.layer {
            sizes[l as usize] += 1;
        }
        sizes
    }

    /// Checks the dart involution and the degree of every vertex inside the complete radius.
    pub fn check_invariants(&self) -> Result<()> {
        for e in 0..self.dart_count() {
            let r = self.reverse(e);
            if self.reverse(r) != e || self.target(r) != self.source(e) || r == e {
                return Err(Error::Construction(format!("dart {e} is not paired correctly")));
            }
        }
        for v in 0..self.vertex_count() as u32 {
            if self.layer(v) < self.complete_radius && self.degree(v) != self.d as usize {
                return Err(Error::Construction(format!(
                    "vertex {v} at depth {} has degree {}",
                    self.layer(v),
                    self.degree(v)
                )));
            }
        }
        Ok(())
    }

    /// Length of a shortest cycle through the root, if one lies inside the ball.
    pub fn root_girth(&self) -> Option<usize> {
        // BFS from the root tagging each vertex with the root-neighbour branch it came from
        let n = self.vertex_count();
        let mut dist = vec![u32::MAX; n];
        let mut branch = vec![u32::MAX; n];
        let mut queue = VecDeque::new();
        dist[0] = 0;
        for (i, &w) in self.neighbors(0).iter().enumerate() {
            if dist[w as usize] == u32::MAX {
                dist[w as usize] = 1;
                branch[w as usize] = i as u32;
                queue.push_back(w);
            } else {
                return Some(2);
            }
        }
        let mut best: Option<usize> = None;
        while let Some(v) = queue.pop_front() {
            for &w in self.neighbors(v) {
                if w == 0 {
                    continue;
                }
                if dist[w as usize] == u32::MAX {
                    dist[w as usize] = dist[v as usize] + 1;
                    branch[w as usize] = branch[v as usize];
                    queue.push_back(w);
                } else if branch[w as usize] != branch[v as usize] {
                    let len = (dist[v as usize] + dist[w as usize] + 1) as usize;
                    best = Some(best.map_or(len, |b| b.min(len)));
                }
            }
        }
        best
    }

    pub fn header_json(&self) -> Value {
        let m = match self.kind {
            BallKind::Tessellation { m } => Some(m),
            _ => None,
        };
        let kind = match self.kind {
            BallKind::Tree => "tree".to_string(),
            BallKind::Tessellation { .. } => "tessellation".to_string(),
            BallKind::Pkd { k } => format!("pkd(k={k})"),
            BallKind::SquareLattice => "square-lattice".to_string(),
        };
        json!({
            "kind": kind,
            "d": self.d,
            "m": m,
            "R": self.radius,
            "complete_radius": self.complete_radius,
            "vertex_count": self.vertex_count(),
            "layer_sizes": self.layer_sizes(),
        })
    }

    /// `# {json header}` followed by one `v: w1 w2 ...` line per vertex.
    pub fn to_adjacency_text(&self) -> String {
        let mut out = format!("# {}\n", self.header_json());
        for v in 0..self.vertex_count() as u32 {
            let _ = write!(out, "{v}:");
            for w in self.neighbors(v) {
                let _ = write!(out, " {w}");
            }
            out.push('\n');
        }
        out
    }
}

/// Pairs each dart `u→v` with a dart `v→u`, matching repeated edges by occurrence.
fn pair_darts(offsets: &[u32], targets: &[u32]) -> Result<Vec<u32>> {
    let n = offsets.len() - 1;
    let mut reverse = vec![u32::MAX; targets.len()];
    for u in 0..n {
        for e in offsets[u] as usize..offsets[u + 1] as usize {
            if reverse[e] != u32::MAX {
                continue;
            }
            let v = targets[e] as usize;
            let back = (offsets[v] as usize..offsets[v + 1] as usize)
                .find(|&f| targets[f] as usize == u && reverse[f] == u32::MAX && f != e)
                .ok_or_else(|| Error::Construction(format!("edge {u}-{v} has no reverse")))?;
            reverse[e] = back as u32;
            reverse[back] = e as u32;
        }
    }
    Ok(reverse)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn adjacency_export_round_trips_header() {
        let ball = build_tree_ball(3, 2, &BuildOptions::default()).unwrap();
        let text = ball.to_adjacency_text();
        let first = text.lines().next().unwrap();
        let header: Value = serde_json::from_str(first.trim_start_matches("# ")).unwrap();
        assert_eq!(header["vertex_count"], 10);
        assert_eq!(header["layer_sizes"], json!([1, 3, 6]));
        assert_eq!(text.lines().count(), 11);
        assert!(text.lines().nth(1).unwrap().starts_with("0: "));
    }

    #[test]
    fn asymmetric_adjacency_is_rejected() {
        let adj = vec![vec![1], vec![]];
        assert!(GraphBall::from_adjacency(&adj, 1, BallKind::Tree, 1, 0).is_err());
    }
}
