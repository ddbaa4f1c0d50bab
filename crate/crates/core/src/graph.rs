//! Finite simple undirected graphs with dense vertex ids `0..n`.

use std::collections::VecDeque;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    labels: Vec<Option<String>>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            labels: vec![None; n],
        }
    }

    /// Builds a graph from an edge list, rejecting self-loops, duplicates and
    /// out-of-range ids.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.n();
        for x in [u, v] {
            if x >= n {
                return Err(Error::VertexOutOfRange { vertex: x, n });
            }
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        match self.adj[u].binary_search(&v) {
            Ok(_) => Err(Error::DuplicateEdge(u.min(v), u.max(v))),
            Err(pos) => {
                self.adj[u].insert(pos, v);
                let pos = self.adj[v].binary_search(&u).unwrap_err();
                self.adj[v].insert(pos, u);
                Ok(())
            }
        }
    }

    pub fn set_label(&mut self, v: usize, label: impl Into<String>) -> Result<()> {
        let n = self.n();
        let slot = self
            .labels
            .get_mut(v)
            .ok_or(Error::VertexOutOfRange { vertex: v, n })?;
        *slot = Some(label.into());
        Ok(())
    }

    pub fn label(&self, v: usize) -> Option<&str> {
        self.labels.get(v).and_then(|l| l.as_deref())
    }

    /// Display name: the label when present, otherwise the id.
    pub fn name(&self, v: usize) -> String {
        self.label(v).map_or_else(|| v.to_string(), str::to_owned)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, nbrs)| nbrs.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Closed neighborhood N[v] in ascending order.
    pub fn closed_neighborhood(&self, v: usize) -> Vec<usize> {
        let mut out = self.adj[v].clone();
        let pos = out.binary_search(&v).unwrap_err();
        out.insert(pos, v);
        out
    }

    /// BFS distances from `src`; `None` for unreachable vertices.
    pub fn distances(&self, src: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n()];
        let mut queue = VecDeque::new();
        dist[src] = Some(0);
        queue.push_back(src);
        while let Some(u) = queue.pop_front() {
            let d = dist[u].unwrap();
            for &w in &self.adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(d + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    pub fn is_connected(&self) -> bool {
        self.n() > 0 && self.distances(0).iter().all(Option::is_some)
    }

    /// Whether the vertices with `mask[v] == true` induce a connected
    /// subgraph. The empty set counts as connected.
    pub fn induces_connected(&self, mask: &[bool]) -> bool {
        let Some(start) = mask.iter().position(|&b| b) else {
            return true;
        };
        let mut seen = vec![false; self.n()];
        let mut stack = vec![start];
        seen[start] = true;
        let mut reached = 1;
        while let Some(u) = stack.pop() {
            for &w in &self.adj[u] {
                if mask[w] && !seen[w] {
                    seen[w] = true;
                    reached += 1;
                    stack.push(w);
                }
            }
        }
        reached == mask.iter().filter(|&&b| b).count()
    }

    /// Eccentricity maximum; `None` when disconnected.
    pub fn diameter(&self) -> Option<usize> {
        let mut best = 0;
        for v in 0..self.n() {
            for d in self.distances(v) {
                best = best.max(d?);
            }
        }
        Some(best)
    }

    /// A proper 2-colouring if one exists.
    pub fn bipartition(&self) -> Option<Vec<u8>> {
        let mut color: Vec<Option<u8>> = vec![None; self.n()];
        for s in 0..self.n() {
            if color[s].is_some() {
                continue;
            }
            color[s] = Some(0);
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                let cu = color[u].unwrap();
                for &w in &self.adj[u] {
                    match color[w] {
                        None => {
                            color[w] = Some(1 - cu);
                            queue.push_back(w);
                        }
                        Some(cw) if cw == cu => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(color.into_iter().map(Option::unwrap).collect())
    }

    pub fn is_clique(&self, vertices: &[usize]) -> bool {
        vertices
            .iter()
            .enumerate()
            .all(|(i, &u)| vertices[i + 1..].iter().all(|&v| self.has_edge(u, v)))
    }

    pub fn is_independent(&self, vertices: &[usize]) -> bool {
        vertices
            .iter()
            .enumerate()
            .all(|(i, &u)| vertices[i + 1..].iter().all(|&v| !self.has_edge(u, v)))
    }

    // Named families.

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &edges).expect("path edges are simple")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "cycles need at least 3 vertices");
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edges(n, &edges).expect("cycle edges are simple")
    }

    pub fn complete(n: usize) -> Self {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v));
            }
        }
        Graph::from_edges(n, &edges).expect("clique edges are simple")
    }

    /// Star K_{1,leaves} with the center at id 0.
    pub fn star(leaves: usize) -> Self {
        let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        Graph::from_edges(leaves + 1, &edges).expect("star edges are simple")
    }

    pub fn complete_bipartite(a: usize, b: usize) -> Self {
        let mut edges = Vec::new();
        for u in 0..a {
            for v in a..a + b {
                edges.push((u, v));
            }
        }
        Graph::from_edges(a + b, &edges).expect("biclique edges are simple")
    }

    /// The five-vertex example graph with edges v1v2, v2v3, v3v4, v4v5, v5v1
    /// and v1v4 (ids 0..5, labelled `v1`..`v5`). {v2, v4} is a minimum
    /// dominating set.
    pub fn house_with_chord() -> Self {
        let mut g =
            Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 3)]).unwrap();
        for v in 0..5 {
            g.set_label(v, format!("v{}", v + 1)).unwrap();
        }
        g
    }

    /// Random connected graph: a random spanning tree plus each remaining
    /// pair independently with probability `p`.
    pub fn random_connected<R: Rng>(n: usize, p: f64, rng: &mut R) -> Self {
        let mut g = Graph::empty(n);
        for v in 1..n {
            let parent = rng.gen_range(0..v);
            g.add_edge(parent, v).unwrap();
        }
        for u in 0..n {
            for v in u + 1..n {
                if !g.has_edge(u, v) && rng.gen_bool(p) {
                    g.add_edge(u, v).unwrap();
                }
            }
        }
        g
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn adjacency_is_sorted_and_symmetric() {
        let g = Graph::from_edges(4, &[(3, 0), (0, 1), (2, 0)]).unwrap();
        assert_eq!(g.neighbors(0), &[1, 2, 3]);
        for (u, v) in g.edges() {
            assert!(g.has_edge(v, u));
        }
        assert_eq!(g.m(), 3);
    }

    #[test]
    fn rejects_bad_edges() {
        let mut g = Graph::empty(3);
        assert_eq!(g.add_edge(1, 1), Err(Error::SelfLoop(1)));
        g.add_edge(0, 1).unwrap();
        assert_eq!(g.add_edge(1, 0), Err(Error::DuplicateEdge(0, 1)));
        assert_eq!(
            g.add_edge(0, 3),
            Err(Error::VertexOutOfRange { vertex: 3, n: 3 })
        );
    }

    #[test]
    fn structure_queries() {
        assert!(Graph::cycle(6).bipartition().is_some());
        assert!(Graph::cycle(5).bipartition().is_none());
        assert_eq!(Graph::path(5).diameter(), Some(4));
        assert_eq!(Graph::empty(2).diameter(), None);
        let p4 = Graph::path(4);
        assert!(p4.induces_connected(&[false, true, true, false]));
        assert!(!p4.induces_connected(&[true, false, true, false]));
        assert!(Graph::complete(4).is_clique(&[0, 1, 2, 3]));
        assert!(Graph::star(3).is_independent(&[1, 2, 3]));
    }

    #[test]
    fn house_with_chord_shape() {
        let g = Graph::house_with_chord();
        assert_eq!((g.n(), g.m()), (5, 6));
        assert_eq!(g.label(1), Some("v2"));
        assert!(g.has_edge(0, 3));
    }
}
