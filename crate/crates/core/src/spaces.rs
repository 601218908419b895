//! Bond and cycle spaces of the three graphs induced by a map.

use thiserror::Error;

use crate::gem::{FlagMap, GonKind};
use crate::gf2::{Gf2Subspace, Gf2Vec};
use crate::graph::InducedGraph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpaceError {
    #[error("graph is disconnected ({components} components)")]
    Disconnected { components: usize },
    #[error("vertex {vertex} out of range (graph has {count} vertices)")]
    VertexOutOfRange { vertex: usize, count: usize },
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}

/// `δ(W)`: the edges with exactly one end in `w`. Loops never cross.
pub fn bond_of(g: &InducedGraph, w: &[usize]) -> Result<Gf2Vec, SpaceError> {
    let mut inside = vec![false; g.vertex_count()];
    for &v in w {
        if v >= g.vertex_count() {
            return Err(SpaceError::VertexOutOfRange {
                vertex: v,
                count: g.vertex_count(),
            });
        }
        inside[v] = true;
    }
    let mut out = Gf2Vec::zeros(g.edge_count());
    for (e, &(a, b)) in g.edges().iter().enumerate() {
        if inside[a] != inside[b] {
            out.set(e, true);
        }
    }
    Ok(out)
}

fn require_connected(g: &InducedGraph) -> Result<(), SpaceError> {
    if g.is_connected() {
        return Ok(());
    }
    let components = g.component_labels().into_iter().max().map_or(0, |c| c + 1);
    Err(SpaceError::Disconnected { components })
}

/// Span of the single-vertex bonds.
pub fn bond_space(g: &InducedGraph) -> Result<Gf2Subspace, SpaceError> {
    require_connected(g)?;
    let mut s = Gf2Subspace::zero(g.edge_count());
    for v in 0..g.vertex_count() {
        s.insert(bond_of(g, &[v])?);
    }
    Ok(s)
}

/// Fundamental cycles of a depth-first spanning tree. Loops are their own
/// fundamental cycles.
pub fn fundamental_cycles(g: &InducedGraph) -> Result<Vec<Gf2Vec>, SpaceError> {
    require_connected(g)?;
    let m = g.edge_count();
    let n = g.vertex_count();
    if n == 0 {
        return Ok(Vec::new());
    }
    let inc = g.incidence();
    let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
    let mut depth = vec![usize::MAX; n];
    let mut tree_edge = vec![false; m];
    depth[0] = 0;
    let mut stack = vec![0];
    while let Some(u) = stack.pop() {
        for &(e, w) in &inc[u] {
            if depth[w] == usize::MAX {
                depth[w] = depth[u] + 1;
                parent[w] = Some((u, e));
                tree_edge[e] = true;
                stack.push(w);
            }
        }
    }

    let mut cycles = Vec::new();
    for (e, &(a, b)) in g.edges().iter().enumerate() {
        if tree_edge[e] {
            continue;
        }
        let mut c = Gf2Vec::singleton(m, e);
        let (mut x, mut y) = (a, b);
        while x != y {
            if depth[x] < depth[y] {
                std::mem::swap(&mut x, &mut y);
            }
            let (p, pe) = parent[x].expect("non-root vertex has a tree parent");
            c.toggle(pe);
            x = p;
        }
        cycles.push(c);
    }
    Ok(cycles)
}

/// Cycle space from a spanning tree, cross-checked against the orthogonal
/// complement of the bond space.
pub fn cycle_space(g: &InducedGraph) -> Result<Gf2Subspace, SpaceError> {
    let cycles = fundamental_cycles(g)?;
    let s = Gf2Subspace::span(g.edge_count(), &cycles)
        .map_err(|e| SpaceError::Inconsistent(e.to_string()))?;
    let expected = bond_space(g)?.orth_complement();
    if s != expected {
        return Err(SpaceError::Inconsistent(
            "fundamental cycles do not span the complement of the bond space".into(),
        ));
    }
    Ok(s)
}

/// The six spaces of a map. `v_*` belong to `G_M`, `f_*` to `G_D` and `z_*`
/// to `G_P`; `*_bond` is the bond space and `*_cycle` its complement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpaceBundle {
    pub m: usize,
    pub g_m: InducedGraph,
    pub g_d: InducedGraph,
    pub g_p: InducedGraph,
    pub v_bond: Gf2Subspace,
    pub v_cycle: Gf2Subspace,
    pub f_bond: Gf2Subspace,
    pub f_cycle: Gf2Subspace,
    pub z_bond: Gf2Subspace,
    pub z_cycle: Gf2Subspace,
}

impl SpaceBundle {
    pub fn graph(&self, kind: GonKind) -> &InducedGraph {
        match kind {
            GonKind::V => &self.g_m,
            GonKind::F => &self.g_d,
            GonKind::Z => &self.g_p,
        }
    }

    pub fn bond(&self, kind: GonKind) -> &Gf2Subspace {
        match kind {
            GonKind::V => &self.v_bond,
            GonKind::F => &self.f_bond,
            GonKind::Z => &self.z_bond,
        }
    }

    pub fn cycle(&self, kind: GonKind) -> &Gf2Subspace {
        match kind {
            GonKind::V => &self.v_cycle,
            GonKind::F => &self.f_cycle,
            GonKind::Z => &self.z_cycle,
        }
    }

    /// Dimensions in the order V, V⊥, F, F⊥, Z, Z⊥.
    pub fn dims(&self) -> [usize; 6] {
        [
            self.v_bond.dim(),
            self.v_cycle.dim(),
            self.f_bond.dim(),
            self.f_cycle.dim(),
            self.z_bond.dim(),
            self.z_cycle.dim(),
        ]
    }
}

fn graph_spaces(g: &InducedGraph) -> Result<(Gf2Subspace, Gf2Subspace), SpaceError> {
    let bond = bond_space(g)?;
    let cycle = cycle_space(g)?;
    let (n, m) = (g.vertex_count(), g.edge_count());
    if bond.dim() != n - 1 || cycle.dim() != m + 1 - n {
        return Err(SpaceError::Inconsistent(format!(
            "dimensions ({}, {}) for {n} vertices and {m} edges",
            bond.dim(),
            cycle.dim()
        )));
    }
    Ok((bond, cycle))
}

pub fn space_bundle(map: &FlagMap) -> Result<SpaceBundle, SpaceError> {
    let [g_m, g_d, g_p] = GonKind::ALL.map(|k| map.induced_graph(k));
    let (v_bond, v_cycle) = graph_spaces(&g_m)?;
    let (f_bond, f_cycle) = graph_spaces(&g_d)?;
    let (z_bond, z_cycle) = graph_spaces(&g_p)?;
    Ok(SpaceBundle {
        m: map.m(),
        g_m,
        g_d,
        g_p,
        v_bond,
        v_cycle,
        f_bond,
        f_cycle,
        z_bond,
        z_cycle,
    })
}
