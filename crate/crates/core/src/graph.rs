//! Small undirected multigraphs with loops, indexed by edge id.

use std::collections::VecDeque;

/// An undirected multigraph on vertices `0..vertex_count` whose edges are
/// identified by their position in `edges`. Loops are allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
}

/// The graph induced by a map: gons as vertices, rectangles as edges.
pub type InducedGraph = Graph;

/// A graph given independently of any embedding (search input).
pub type AbstractGraph = Graph;

impl Graph {
    /// Panics if an endpoint is out of range.
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize)>) -> Self {
        for &(a, b) in &edges {
            assert!(
                a < vertex_count && b < vertex_count,
                "edge ({a},{b}) out of range for {vertex_count} vertices"
            );
        }
        Self {
            vertex_count,
            edges,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn endpoints(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    pub fn is_loop(&self, e: usize) -> bool {
        let (a, b) = self.edges[e];
        a == b
    }

    pub fn loop_flags(&self) -> Vec<bool> {
        (0..self.edges.len()).map(|e| self.is_loop(e)).collect()
    }

    /// Degrees with loops counted twice.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertex_count];
        for &(a, b) in &self.edges {
            deg[a] += 1;
            deg[b] += 1;
        }
        deg
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d = self.degrees();
        d.sort_unstable();
        d
    }

    /// `(edge, other end)` for every edge end at each vertex, in edge order.
    /// A loop appears twice at its vertex.
    pub fn incidence(&self) -> Vec<Vec<(usize, usize)>> {
        let mut inc = vec![Vec::new(); self.vertex_count];
        for (e, &(a, b)) in self.edges.iter().enumerate() {
            inc[a].push((e, b));
            inc[b].push((e, a));
        }
        inc
    }

    pub fn is_connected(&self) -> bool {
        if self.vertex_count == 0 {
            return true;
        }
        self.component_labels().iter().all(|&c| c == 0)
    }

    pub fn component_labels(&self) -> Vec<usize> {
        let inc = self.incidence();
        let mut label = vec![usize::MAX; self.vertex_count];
        let mut next = 0;
        for s in 0..self.vertex_count {
            if label[s] != usize::MAX {
                continue;
            }
            label[s] = next;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &(_, w) in &inc[u] {
                    if label[w] == usize::MAX {
                        label[w] = next;
                        queue.push_back(w);
                    }
                }
            }
            next += 1;
        }
        label
    }

    /// Two-coloring if one exists. Any loop makes the graph non-bipartite.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let inc = self.incidence();
        let mut color: Vec<Option<bool>> = vec![None; self.vertex_count];
        for s in 0..self.vertex_count {
            if color[s].is_some() {
                continue;
            }
            color[s] = Some(false);
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                let cu = color[u].unwrap();
                for &(_, w) in &inc[u] {
                    match color[w] {
                        None => {
                            color[w] = Some(!cu);
                            queue.push_back(w);
                        }
                        Some(cw) if cw == cu => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(color.into_iter().map(Option::unwrap).collect())
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    /// Replaces edge `e` by a path of `counts[e] + 1` edges through fresh
    /// vertices. Returns the new graph and, for each new edge, the original
    /// edge it came from. The first piece of each subdivided edge keeps the
    /// original id; the remaining pieces are appended in order.
    pub fn subdivide(&self, counts: &[usize]) -> (Graph, Vec<usize>) {
        assert_eq!(counts.len(), self.edges.len());
        let mut vertex_count = self.vertex_count;
        let mut edges = self.edges.clone();
        let mut origin: Vec<usize> = (0..self.edges.len()).collect();
        for (e, &k) in counts.iter().enumerate() {
            if k == 0 {
                continue;
            }
            let (a, b) = self.edges[e];
            let mut prev = vertex_count;
            vertex_count += 1;
            edges[e] = (a, prev);
            for _ in 1..k {
                let next = vertex_count;
                vertex_count += 1;
                edges.push((prev, next));
                origin.push(e);
                prev = next;
            }
            edges.push((prev, b));
            origin.push(e);
        }
        (Graph::new(vertex_count, edges), origin)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_properties() {
        let g = Graph::new(3, vec![(0, 1), (1, 2), (2, 0)]);
        assert!(g.is_connected());
        assert!(!g.is_bipartite());
        assert_eq!(g.degrees(), vec![2, 2, 2]);
    }

    #[test]
    fn loops_and_components() {
        let g = Graph::new(3, vec![(0, 0), (1, 2)]);
        assert!(!g.is_connected());
        assert!(g.is_loop(0));
        assert_eq!(g.loop_flags(), vec![true, false]);
        assert_eq!(g.degrees(), vec![2, 1, 1]);
        assert!(!g.is_bipartite());
    }

    #[test]
    fn subdivision_keeps_degrees_and_adds_paths() {
        let g = Graph::new(2, vec![(0, 1), (0, 1)]);
        let (h, origin) = g.subdivide(&[2, 0]);
        assert_eq!(h.vertex_count(), 4);
        assert_eq!(h.edge_count(), 4);
        assert_eq!(origin, vec![0, 1, 0, 0]);
        assert_eq!(h.degree_sequence(), vec![2, 2, 2, 2]);
        assert!(h.is_connected());
        assert_eq!(h.edges(), &[(0, 2), (0, 1), (2, 3), (3, 1)]);
    }
}
