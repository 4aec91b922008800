//! Ball constructions: trees, `{m,d}` tessellations, Paschke graphs, the square lattice.

use std::collections::{HashMap, VecDeque};

use super::{BallKind, GraphBall};
use crate::error::{Error, Result};

pub const DEFAULT_VERTEX_CAP: u64 = 10_000_000;

#[derive(Clone, Debug)]
pub struct BuildOptions {
    /// Largest number of vertices a construction may create.
    pub vertex_cap: u64,
}

impl Default for BuildOptions {
    fn default() -> Self {
        BuildOptions { vertex_cap: DEFAULT_VERTEX_CAP }
    }
}

/// Rooted `d`-regular tree cut at depth `radius`.
pub fn build_tree_ball(d: u32, radius: u32, opts: &BuildOptions) -> Result<GraphBall> {
    if d < 2 || radius < 1 {
        return Err(Error::Domain(format!("tree ball needs d >= 2 and R >= 1 (got d={d}, R={radius})")));
    }
    // 1 + d Σ_{r<R} (d−1)^r, saturating
    let mut total: u64 = 1;
    let mut layer: u64 = d as u64;
    for _ in 0..radius {
        total = total.saturating_add(layer);
        layer = layer.saturating_mul(d as u64 - 1);
    }
    if total > opts.vertex_cap {
        return Err(Error::SizeLimit { estimate: total, cap: opts.vertex_cap });
    }
    let mut adj: Vec<Vec<u32>> = vec![Vec::new()];
    let mut frontier = vec![0u32];
    for depth in 0..radius {
        let mut next = Vec::new();
        for &v in &frontier {
            let children = if depth == 0 { d } else { d - 1 };
            for _ in 0..children {
                let w = adj.len() as u32;
                adj.push(vec![v]);
                adj[v as usize].push(w);
                next.push(w);
            }
        }
        frontier = next;
    }
    GraphBall::from_adjacency(&adj, d, BallKind::Tree, radius, radius)
}

/// `Z²` ball in the graph metric, built directly from coordinates.
pub fn build_square_lattice_ball(radius: u32) -> Result<GraphBall> {
    let r = radius as i64;
    let mut index = HashMap::new();
    let mut coords = vec![(0i64, 0i64)];
    index.insert((0i64, 0i64), 0u32);
    for x in -r..=r {
        for y in -r..=r {
            if x.abs() + y.abs() <= r && (x, y) != (0, 0) {
                index.insert((x, y), coords.len() as u32);
                coords.push((x, y));
            }
        }
    }
    let adj: Vec<Vec<u32>> = coords
        .iter()
        .map(|&(x, y)| {
            [(1, 0), (0, 1), (-1, 0), (0, -1)]
                .iter()
                .filter_map(|(dx, dy)| index.get(&(x + dx, y + dy)).copied())
                .collect()
        })
        .collect();
    GraphBall::from_adjacency(&adj, 4, BallKind::SquareLattice, radius, radius)
}

/// Partially built tessellation: a disk whose boundary vertices store their
/// neighbours as a rotation arc `[succ, ..., pred]`; complete vertices store all `d`.
struct Disk {
    d: usize,
    m: usize,
    nbrs: Vec<u32>,
    len: Vec<u8>,
    complete: Vec<bool>,
    cap: u64,
}

impl Disk {
    fn new(d: usize, m: usize, cap: u64) -> Self {
        Disk { d, m, nbrs: Vec::new(), len: Vec::new(), complete: Vec::new(), cap }
    }

    fn vertex_count(&self) -> usize {
        self.len.len()
    }

    fn add_vertex(&mut self) -> Result<u32> {
        let v = self.vertex_count();
        if v as u64 >= self.cap {
            return Err(Error::SizeLimit { estimate: v as u64 + 1, cap: self.cap });
        }
        self.nbrs.extend(std::iter::repeat_n(u32::MAX, self.d));
        self.len.push(0);
        self.complete.push(false);
        Ok(v as u32)
    }

    fn arc(&self, v: u32) -> &[u32] {
        let s = v as usize * self.d;
        &self.nbrs[s..s + self.len[v as usize] as usize]
    }

    fn succ(&self, v: u32) -> u32 {
        self.arc(v)[0]
    }

    fn pred(&self, v: u32) -> u32 {
        *self.arc(v).last().expect("boundary vertex has neighbours")
    }

    /// Faces still to be attached at boundary vertex `v`.
    fn missing(&self, v: u32) -> usize {
        self.d + 1 - self.len[v as usize] as usize
    }

    fn push_back(&mut self, v: u32, w: u32) -> Result<()> {
        let l = self.len[v as usize] as usize;
        if l >= self.d {
            return Err(Error::Construction(format!("vertex {v} would exceed degree {}", self.d)));
        }
        self.nbrs[v as usize * self.d + l] = w;
        self.len[v as usize] += 1;
        Ok(())
    }

    fn push_front(&mut self, v: u32, w: u32) -> Result<()> {
        let l = self.len[v as usize] as usize;
        if l >= self.d {
            return Err(Error::Construction(format!("vertex {v} would exceed degree {}", self.d)));
        }
        let s = v as usize * self.d;
        self.nbrs.copy_within(s..s + l, s + 1);
        self.nbrs[s] = w;
        self.len[v as usize] += 1;
        Ok(())
    }

    /// One `m`-gon around the root.
    fn seed(&mut self) -> Result<()> {
        let ids: Vec<u32> = (0..self.m).map(|_| self.add_vertex()).collect::<Result<_>>()?;
        for i in 0..self.m {
            let succ = ids[(i + 1) % self.m];
            let pred = ids[(i + self.m - 1) % self.m];
            self.push_back(ids[i], succ)?;
            self.push_back(ids[i], pred)?;
        }
        Ok(())
    }

    /// Attaches a face along the boundary edge `a → succ(a)`, absorbing neighbouring
    /// boundary vertices that need only this face.
    fn add_face_on_edge(&mut self, a: u32) -> Result<()> {
        let mut a = a;
        let mut b = self.succ(a);
        let mut run = 1usize;
        while self.missing(a) == 1 {
            self.complete[a as usize] = true;
            a = self.pred(a);
            run += 1;
            if a == b || run > self.m {
                return Err(Error::Construction("face run wraps the boundary".into()));
            }
        }
        while self.missing(b) == 1 {
            self.complete[b as usize] = true;
            b = self.succ(b);
            run += 1;
            if b == a || run > self.m {
                return Err(Error::Construction("face run wraps the boundary".into()));
            }
        }
        if run >= self.m {
            return Err(Error::Construction(format!("boundary run of {run} edges cannot close an {}-gon", self.m)));
        }
        let new_count = self.m - run - 1;
        if new_count == 0 {
            self.push_front(a, b)?;
            self.push_back(b, a)?;
        } else {
            let path: Vec<u32> = (0..new_count).map(|_| self.add_vertex()).collect::<Result<_>>()?;
            for (i, &p) in path.iter().enumerate() {
                let toward_b = if i == 0 { b } else { path[i - 1] };
                let toward_a = if i + 1 == new_count { a } else { path[i + 1] };
                self.push_back(p, toward_b)?;
                self.push_back(p, toward_a)?;
            }
            self.push_front(a, path[new_count - 1])?;
            self.push_back(b, path[0])?;
        }
        Ok(())
    }

    fn complete_vertex(&mut self, v: u32) -> Result<()> {
        while !self.complete[v as usize] {
            self.add_face_on_edge(v)?;
        }
        Ok(())
    }
}

/// Ball of radius `radius` in the 1-skeleton of the tessellation by `m`-gons, `d` at each vertex.
pub fn build_tessellation_ball(d: u32, m: u32, radius: u32, opts: &BuildOptions) -> Result<GraphBall> {
    let product = (d as i64 - 2) * (m as i64 - 2);
    if d < 3 || m < 3 || product < 4 {
        return Err(Error::NotATessellation { d, m, product });
    }
    if radius < 1 {
        return Err(Error::Domain("radius must be at least 1".into()));
    }
    let mut disk = Disk::new(d as usize, m as usize, opts.vertex_cap);
    disk.seed()?;

    // BFS in which each vertex is completed before its neighbours are read
    let mut depth: Vec<u32> = vec![u32::MAX; m as usize];
    depth[0] = 0;
    let mut queue = VecDeque::from([0u32]);
    let mut layer_sizes = vec![1u64];
    while let Some(v) = queue.pop_front() {
        let dv = depth[v as usize];
        if dv >= radius {
            continue;
        }
        disk.complete_vertex(v)?;
        if depth.len() < disk.vertex_count() {
            depth.resize(disk.vertex_count(), u32::MAX);
        }
        for &w in disk.arc(v).to_vec().iter() {
            if depth[w as usize] == u32::MAX {
                depth[w as usize] = dv + 1;
                if layer_sizes.len() <= dv as usize + 1 {
                    layer_sizes.push(0);
                    project_size(&layer_sizes, radius, opts.vertex_cap)?;
                }
                layer_sizes[dv as usize + 1] += 1;
                queue.push_back(w);
            }
        }
    }
    let adj: Vec<Vec<u32>> = (0..disk.vertex_count() as u32).map(|v| disk.arc(v).to_vec()).collect();
    let ball = GraphBall::from_adjacency(&adj, d, BallKind::Tessellation { m }, radius, radius)?;
    Ok(ball)
}

/// Aborts early when geometric extrapolation of the finished layers exceeds the cap.
fn project_size(layer_sizes: &[u64], radius: u32, cap: u64) -> Result<()> {
    let done = layer_sizes.len() - 1;
    if done < 2 {
        return Ok(());
    }
    let last = layer_sizes[done - 1] as f64;
    let prev = layer_sizes[done - 2].max(1) as f64;
    let ratio = (last / prev).max(1.0);
    let mut total: f64 = layer_sizes[..done].iter().sum::<u64>() as f64;
    let mut size = last;
    for _ in done..=radius as usize {
        size *= ratio;
        total += size;
        if total > cap as f64 {
            return Err(Error::SizeLimit { estimate: total.min(u64::MAX as f64) as u64, cap });
        }
    }
    Ok(())
}

/// Ball in Paschke's graph `P_{k,d}`, the Cayley graph of `Z/k * (Z/2)^{*(d−2)}`.
///
/// Vertices are normal forms: alternating syllables `a^j` (`1 ≤ j < k`) and involutions `s_i`.
pub fn build_pkd_ball(k: u32, d: u32, radius: u32, opts: &BuildOptions) -> Result<GraphBall> {
    if k < 3 || d < 3 {
        return Err(Error::Domain(format!("P_(k,d) needs k, d >= 3 (got k={k}, d={d})")));
    }
    // syllable codes: j in 1..k is a^j, k + i is s_i
    let neighbors = |w: &[u32]| -> Vec<Vec<u32>> {
        let mut out = Vec::with_capacity(d as usize);
        for step in [1u32, k - 1] {
            let mut x = w.to_vec();
            match x.last().copied() {
                Some(j) if j < k => {
                    let nj = (j + step) % k;
                    x.pop();
                    if nj != 0 {
                        x.push(nj);
                    }
                }
                _ => x.push(step),
            }
            out.push(x);
        }
        for i in 0..d - 2 {
            let s = k + i;
            let mut x = w.to_vec();
            if x.last() == Some(&s) {
                x.pop();
            } else {
                x.push(s);
            }
            out.push(x);
        }
        out
    };
    let mut ids: HashMap<Vec<u32>, u32> = HashMap::new();
    let mut words: Vec<Vec<u32>> = vec![Vec::new()];
    let mut depth = vec![0u32];
    ids.insert(Vec::new(), 0);
    let mut adj: Vec<Vec<u32>> = vec![Vec::new()];
    let mut v = 0usize;
    while v < words.len() {
        let w = words[v].clone();
        for x in neighbors(&w) {
            let id = match ids.get(&x) {
                Some(&id) => id,
                None => {
                    if depth[v] >= radius {
                        continue;
                    }
                    if words.len() as u64 >= opts.vertex_cap {
                        return Err(Error::SizeLimit { estimate: words.len() as u64 + 1, cap: opts.vertex_cap });
                    }
                    let id = words.len() as u32;
                    ids.insert(x.clone(), id);
                    words.push(x);
                    depth.push(depth[v] + 1);
                    adj.push(Vec::new());
                    id
                }
            };
            adj[v].push(id);
        }
        v += 1;
    }
    GraphBall::from_adjacency(&adj, d, BallKind::Pkd { k }, radius, radius)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts() -> BuildOptions {
        BuildOptions::default()
    }

    #[test]
    fn tree_sizes() {
        assert_eq!(build_tree_ball(3, 2, &opts()).unwrap().vertex_count(), 10);
        let b = build_tree_ball(8, 1, &opts()).unwrap();
        assert_eq!(b.vertex_count(), 9);
        assert_eq!(b.degree(0), 8);
        let path = build_tree_ball(2, 5, &opts()).unwrap();
        assert_eq!(path.vertex_count(), 11);
        path.check_invariants().unwrap();
        assert!(matches!(
            build_tree_ball(8, 12, &opts()),
            Err(Error::SizeLimit { .. })
        ));
    }

    #[test]
    fn tessellation_88_local_structure() {
        let b = build_tessellation_ball(8, 8, 1, &opts()).unwrap();
        assert_eq!(b.vertex_count(), 9);
        assert_eq!(b.degree(0), 8);
        for v in 1..9 {
            assert!(b.neighbors(v).iter().all(|&w| w == 0 || w >= 9));
        }
        let b4 = build_tessellation_ball(8, 8, 5, &opts()).unwrap();
        b4.check_invariants().unwrap();
        assert_eq!(b4.root_girth(), Some(8));
    }

    #[test]
    fn genus_two_growth_matches_cannon() {
        // (1+2x+2x²+2x³+x⁴)/(1−6x−6x²−6x³+x⁴)
        let num = [1i64, 2, 2, 2, 1];
        let den = [1i64, -6, -6, -6, 1];
        let mut s = vec![0i64; 6];
        for n in 0..6 {
            let mut v = if n < num.len() { num[n] } else { 0 };
            for j in 1..=n.min(4) {
                v -= den[j] * s[n - j];
            }
            s[n] = v;
        }
        assert_eq!(&s[..5], &[1, 8, 56, 392, 2736]);
        let b = build_tessellation_ball(8, 8, 5, &opts()).unwrap();
        let sizes: Vec<i64> = b.layer_sizes().iter().map(|&x| x as i64).collect();
        assert_eq!(sizes, s);
    }

    #[test]
    fn euclidean_tilings() {
        let sq = build_tessellation_ball(4, 4, 6, &opts()).unwrap();
        assert_eq!(sq.layer_sizes(), build_square_lattice_ball(6).unwrap().layer_sizes());
        assert_eq!(&sq.layer_sizes()[..4], &[1, 4, 8, 12]);
        let tri = build_tessellation_ball(6, 3, 5, &opts()).unwrap();
        assert_eq!(tri.layer_sizes(), vec![1, 6, 12, 18, 24, 30]);
        let hex = build_tessellation_ball(3, 6, 5, &opts()).unwrap();
        assert_eq!(hex.layer_sizes(), vec![1, 3, 6, 9, 12, 15]);
        for b in [&sq, &tri, &hex] {
            b.check_invariants().unwrap();
        }
        assert!(matches!(build_tessellation_ball(3, 5, 2, &opts()), Err(Error::NotATessellation { .. })));
    }

    #[test]
    fn girth_matches_face_length() {
        for (d, m) in [(3u32, 7u32), (4, 5), (5, 4), (4, 6)] {
            let b = build_tessellation_ball(d, m, m / 2 + 1, &opts()).unwrap();
            b.check_invariants().unwrap();
            assert_eq!(b.root_girth(), Some(m as usize), "({d},{m})");
        }
    }

    #[test]
    fn size_cap_is_enforced() {
        let small = BuildOptions { vertex_cap: 5_000 };
        assert!(matches!(build_tessellation_ball(8, 8, 7, &small), Err(Error::SizeLimit { .. })));
        assert!(matches!(build_pkd_ball(3, 4, 30, &small), Err(Error::SizeLimit { .. })));
    }

    #[test]
    fn pkd_structure() {
        let b = build_pkd_ball(3, 3, 6, &opts()).unwrap();
        b.check_invariants().unwrap();
        assert_eq!(b.root_girth(), Some(3));
        let b = build_pkd_ball(5, 4, 5, &opts()).unwrap();
        b.check_invariants().unwrap();
        assert_eq!(b.root_girth(), Some(5));
    }
}
