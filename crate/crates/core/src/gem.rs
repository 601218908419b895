//! Graph-encoded maps.
//!
//! A map with `m` edges has `4m` flags. Flags `4e..4e+3` form the square of
//! edge `e`; the three ways of splitting those four flags into two pairs are
//! the pair classes
//!
//! ```text
//! A = {4e,4e+1} {4e+2,4e+3}
//! B = {4e+1,4e+2} {4e+3,4e}
//! C = {4e,4e+2} {4e+1,4e+3}
//! ```
//!
//! Each edge assigns one class to each role: short sides (`s`, the vertex
//! pairs), long sides (`l`, the face pairs) and diagonals (`d`, the zigzag
//! pairs). The canonical assignment is `s→A, l→B, d→C`. The remaining
//! perfect matching `alpha` joins flags of neighbouring squares. Operators in
//! the dual/phial/antimap family only relabel roles and never touch `alpha`.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, InducedGraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapError {
    #[error("invalid map: {0}")]
    Invalid(String),
    #[error("edge {edge} out of range (map has {m} edges)")]
    EdgeOutOfRange { edge: usize, m: usize },
    #[error("{kind}-gon {index} out of range (map has {count})")]
    GonOutOfRange {
        kind: GonKind,
        index: usize,
        count: usize,
    },
    #[error("bad role permutation {0:?}: expected a permutation of s, l, d")]
    BadPermutation(String),
}

/// One of the three splittings of a square's four flags into two pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PairClass {
    A,
    B,
    C,
}

impl PairClass {
    pub const ALL: [PairClass; 3] = [PairClass::A, PairClass::B, PairClass::C];

    /// Partner of local flag `i` (0..4) under this class.
    pub fn partner(self, i: usize) -> usize {
        match self {
            PairClass::A => i ^ 1,
            PairClass::B => 3 - i,
            PairClass::C => i ^ 2,
        }
    }

    fn of_pair(a: usize, b: usize) -> PairClass {
        PairClass::ALL
            .into_iter()
            .find(|c| c.partner(a) == b)
            .expect("distinct local flags form a pair of some class")
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Role {
    Short,
    Long,
    Diagonal,
}

impl Role {
    pub const ALL: [Role; 3] = [Role::Short, Role::Long, Role::Diagonal];

    fn index(self) -> usize {
        self as usize
    }

    fn symbol(self) -> char {
        match self {
            Role::Short => 's',
            Role::Long => 'l',
            Role::Diagonal => 'd',
        }
    }
}

/// Which gons to trace: vertices (short sides), faces (long sides) or
/// zigzags (diagonals).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GonKind {
    V,
    F,
    Z,
}

impl GonKind {
    pub const ALL: [GonKind; 3] = [GonKind::V, GonKind::F, GonKind::Z];

    pub fn role(self) -> Role {
        match self {
            GonKind::V => Role::Short,
            GonKind::F => Role::Long,
            GonKind::Z => Role::Diagonal,
        }
    }
}

impl fmt::Display for GonKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GonKind::V => "v",
            GonKind::F => "f",
            GonKind::Z => "z",
        })
    }
}

impl FromStr for GonKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "v" => Ok(GonKind::V),
            "f" => Ok(GonKind::F),
            "z" => Ok(GonKind::Z),
            _ => Err(format!("unknown gon kind {s:?} (expected v, f or z)")),
        }
    }
}

/// Pair class of each role, indexed by [`Role`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RoleAssignment(pub [PairClass; 3]);

impl RoleAssignment {
    pub const CANONICAL: RoleAssignment =
        RoleAssignment([PairClass::A, PairClass::B, PairClass::C]);

    pub fn class(self, role: Role) -> PairClass {
        self.0[role.index()]
    }

    pub fn is_bijective(self) -> bool {
        let [a, b, c] = self.0;
        a != b && b != c && a != c
    }

    pub fn permuted(self, pi: RolePerm) -> RoleAssignment {
        RoleAssignment(Role::ALL.map(|r| self.class(pi.source(r))))
    }
}

/// A permutation of the role symbols, written as in `M(R' : π)`: the word
/// `lsd` means the new short sides are the old long sides, the new long
/// sides the old short sides, and diagonals stay.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct RolePerm([Role; 3]);

impl RolePerm {
    pub const IDENTITY: RolePerm = RolePerm([Role::Short, Role::Long, Role::Diagonal]);
    pub const DUAL: RolePerm = RolePerm([Role::Long, Role::Short, Role::Diagonal]);
    pub const PHIAL: RolePerm = RolePerm([Role::Diagonal, Role::Long, Role::Short]);
    pub const ANTIMAP: RolePerm = RolePerm([Role::Short, Role::Diagonal, Role::Long]);
    pub const SWAP_SD: RolePerm = Self::PHIAL;

    /// Old role whose pairs take on `new_role`.
    pub fn source(self, new_role: Role) -> Role {
        self.0[new_role.index()]
    }

    /// All six permutations, identity first.
    pub fn all() -> [RolePerm; 6] {
        use Role::*;
        [
            RolePerm([Short, Long, Diagonal]),
            RolePerm([Long, Short, Diagonal]),
            RolePerm([Diagonal, Long, Short]),
            RolePerm([Short, Diagonal, Long]),
            RolePerm([Long, Diagonal, Short]),
            RolePerm([Diagonal, Short, Long]),
        ]
    }
}

impl FromStr for RolePerm {
    type Err = MapError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let roles: Vec<Role> = s
            .chars()
            .map(|c| match c {
                's' => Ok(Role::Short),
                'l' | 'ℓ' => Ok(Role::Long),
                'd' => Ok(Role::Diagonal),
                _ => Err(MapError::BadPermutation(s.to_string())),
            })
            .collect::<Result<_, _>>()?;
        match roles[..] {
            [a, b, c] if a != b && b != c && a != c => Ok(RolePerm([a, b, c])),
            _ => Err(MapError::BadPermutation(s.to_string())),
        }
    }
}

impl fmt::Display for RolePerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in self.0 {
            write!(f, "{}", r.symbol())?;
        }
        Ok(())
    }
}

/// Outcome of one structural check in a [`ValidationReport`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub checks: Vec<Check>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn failed(&self, name: &str) -> bool {
        self.checks.iter().any(|c| c.name == name && !c.passed)
    }

    fn summary(&self) -> String {
        self.failures()
            .map(|c| match &c.detail {
                Some(d) => format!("{}: {d}", c.name),
                None => c.name.to_string(),
            })
            .collect::<Vec<_>>()
            .join("; ")
    }
}

/// A combinatorial map stored as a flag involution plus per-edge roles.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FlagMap {
    alpha: Vec<usize>,
    roles: Vec<RoleAssignment>,
}

impl FlagMap {
    /// A map with canonical roles. Fails unless the result validates.
    pub fn new(alpha: Vec<usize>) -> Result<Self, MapError> {
        let roles = vec![RoleAssignment::CANONICAL; alpha.len() / 4];
        Self::with_roles(alpha, roles)
    }

    pub fn with_roles(alpha: Vec<usize>, roles: Vec<RoleAssignment>) -> Result<Self, MapError> {
        let map = Self::from_parts_unchecked(alpha, roles);
        let report = map.validate();
        if report.is_valid() {
            Ok(map)
        } else {
            Err(MapError::Invalid(report.summary()))
        }
    }

    /// Builds a map without checking it. Only [`FlagMap::validate`] is
    /// meaningful on an unchecked value; other methods may panic.
    pub fn from_parts_unchecked(alpha: Vec<usize>, roles: Vec<RoleAssignment>) -> Self {
        Self { alpha, roles }
    }

    /// Builds a map from `alpha` pairs, e.g. `[(1, 2), (3, 0)]`.
    pub fn from_pairs(m: usize, pairs: &[(usize, usize)]) -> Result<Self, MapError> {
        let mut alpha = vec![usize::MAX; 4 * m];
        for &(a, b) in pairs {
            if a >= 4 * m || b >= 4 * m {
                return Err(MapError::Invalid(format!(
                    "flag out of range in pair ({a},{b})"
                )));
            }
            if alpha[a] != usize::MAX || alpha[b] != usize::MAX {
                return Err(MapError::Invalid(format!(
                    "flag repeated in pair ({a},{b})"
                )));
            }
            alpha[a] = b;
            alpha[b] = a;
        }
        if alpha.contains(&usize::MAX) {
            return Err(MapError::Invalid("some flag is unmatched".into()));
        }
        Self::new(alpha)
    }

    pub fn validate(&self) -> ValidationReport {
        let n = self.alpha.len();
        let mut checks = Vec::new();
        let sized = n > 0 && n.is_multiple_of(4) && self.roles.len() == n / 4;
        checks.push(Check {
            name: "size",
            passed: sized,
            detail: (!sized)
                .then(|| format!("{n} flags with {} role assignments", self.roles.len())),
        });

        let bad_range = self.alpha.iter().position(|&y| y >= n);
        checks.push(Check {
            name: "in_range",
            passed: bad_range.is_none(),
            detail: bad_range.map(|x| format!("alpha({x}) = {} is not a flag", self.alpha[x])),
        });

        let fixed = self.alpha.iter().enumerate().find(|&(x, &y)| x == y);
        checks.push(Check {
            name: "fixed_point_free",
            passed: fixed.is_none(),
            detail: fixed.map(|(x, _)| format!("alpha({x}) = {x}")),
        });

        let non_inv = (bad_range.is_none())
            .then(|| (0..n).find(|&x| self.alpha[self.alpha[x]] != x))
            .flatten();
        checks.push(Check {
            name: "involution",
            passed: bad_range.is_none() && non_inv.is_none(),
            detail: non_inv
                .map(|x| format!("alpha(alpha({x})) = {} != {x}", self.alpha[self.alpha[x]])),
        });

        let bad_roles = self.roles.iter().position(|r| !r.is_bijective());
        checks.push(Check {
            name: "roles_bijective",
            passed: bad_roles.is_none(),
            detail: bad_roles.map(|e| format!("edge {e} repeats a pair class")),
        });

        let structural = checks.iter().all(|c| c.passed);
        let connected = structural && self.flag_graph_connected();
        checks.push(Check {
            name: "connected",
            passed: connected,
            detail: if !structural {
                Some("not evaluated".into())
            } else if !connected {
                Some("flag graph is disconnected".into())
            } else {
                None
            },
        });
        ValidationReport { checks }
    }

    fn flag_graph_connected(&self) -> bool {
        let n = self.alpha.len();
        let mut seen = vec![false; n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(x) = queue.pop_front() {
            for y in self.flag_neighbours(x) {
                if !seen[y] {
                    seen[y] = true;
                    count += 1;
                    queue.push_back(y);
                }
            }
        }
        count == n
    }

    /// Neighbours in the cubic flag graph (short, long, alpha).
    fn flag_neighbours(&self, x: usize) -> [usize; 3] {
        [
            self.partner(x, Role::Short),
            self.partner(x, Role::Long),
            self.alpha[x],
        ]
    }

    /// Number of edges (squares).
    pub fn m(&self) -> usize {
        self.roles.len()
    }

    pub fn flag_count(&self) -> usize {
        self.alpha.len()
    }

    pub fn alpha(&self, x: usize) -> usize {
        self.alpha[x]
    }

    pub fn alpha_slice(&self) -> &[usize] {
        &self.alpha
    }

    pub fn roles(&self) -> &[RoleAssignment] {
        &self.roles
    }

    pub fn is_canonical(&self) -> bool {
        self.roles.iter().all(|&r| r == RoleAssignment::CANONICAL)
    }

    /// Partner of flag `x` across the pair of the given role in its square.
    pub fn partner(&self, x: usize, role: Role) -> usize {
        let e = x / 4;
        let class = self.roles[e].class(role);
        4 * e + class.partner(x % 4)
    }

    /// The two pairs of `role` in square `e`, each as `(low, high)`.
    pub fn role_pairs(&self, e: usize, role: Role) -> [(usize, usize); 2] {
        let class = self.roles[e].class(role);
        let p0 = class.partner(0);
        let rest: Vec<usize> = (1..4).filter(|&i| i != p0).collect();
        [(4 * e, 4 * e + p0), (4 * e + rest[0], 4 * e + rest[1])]
    }

    pub fn gons(&self, kind: GonKind) -> GonDecomposition {
        let n = self.alpha.len();
        let role = kind.role();
        let mut gon_of = vec![usize::MAX; n];
        let mut gons = Vec::new();
        for start in 0..n {
            if gon_of[start] != usize::MAX {
                continue;
            }
            let idx = gons.len();
            let mut seq = Vec::new();
            let mut x = start;
            loop {
                let y = self.partner(x, role);
                gon_of[x] = idx;
                gon_of[y] = idx;
                seq.push(x);
                seq.push(y);
                x = self.alpha[y];
                if x == start {
                    break;
                }
            }
            gons.push(seq);
        }
        GonDecomposition { kind, gons, gon_of }
    }

    pub fn gon_count(&self, kind: GonKind) -> usize {
        self.gons(kind).len()
    }

    /// `(v, f, z)`.
    pub fn gon_counts(&self) -> (usize, usize, usize) {
        (
            self.gon_count(GonKind::V),
            self.gon_count(GonKind::F),
            self.gon_count(GonKind::Z),
        )
    }

    /// `M(R' : π)`: composes the role assignment of every edge in `rects`
    /// with `pi`.
    pub fn apply_permutation(&self, rects: &[usize], pi: RolePerm) -> Result<FlagMap, MapError> {
        let mut roles = self.roles.clone();
        for &e in rects {
            if e >= self.m() {
                return Err(MapError::EdgeOutOfRange {
                    edge: e,
                    m: self.m(),
                });
            }
            roles[e] = roles[e].permuted(pi);
        }
        Ok(FlagMap {
            alpha: self.alpha.clone(),
            roles,
        })
    }

    /// Applies `pi` to every edge.
    pub fn permute_all(&self, pi: RolePerm) -> FlagMap {
        FlagMap {
            alpha: self.alpha.clone(),
            roles: self.roles.iter().map(|r| r.permuted(pi)).collect(),
        }
    }

    pub fn dual(&self) -> FlagMap {
        self.permute_all(RolePerm::DUAL)
    }

    pub fn phial(&self) -> FlagMap {
        self.permute_all(RolePerm::PHIAL)
    }

    pub fn antimap(&self) -> FlagMap {
        self.permute_all(RolePerm::ANTIMAP)
    }

    /// The six maps `M, D, P, M~, D~, P~` in that order.
    pub fn omega(&self) -> [FlagMap; 6] {
        let d = self.dual();
        let p = self.phial();
        [
            self.clone(),
            d.clone(),
            p.clone(),
            self.antimap(),
            d.antimap(),
            p.antimap(),
        ]
    }

    /// Relabels flags inside each square so that every edge has canonical
    /// roles, conjugating `alpha` accordingly.
    pub fn normalize(&self) -> FlagMap {
        if self.is_canonical() {
            return self.clone();
        }
        let sigma: Vec<[usize; 4]> = self.roles.iter().map(|&r| canonicalizer(r)).collect();
        let relabel = |x: usize| 4 * (x / 4) + sigma[x / 4][x % 4];
        let mut alpha = vec![0; self.alpha.len()];
        for (x, &y) in self.alpha.iter().enumerate() {
            alpha[relabel(x)] = relabel(y);
        }
        FlagMap {
            alpha,
            roles: vec![RoleAssignment::CANONICAL; self.m()],
        }
    }

    /// Vertices are the gons of `kind`; edge `e` joins the gons holding the
    /// two `kind` pairs of square `e`.
    pub fn induced_graph(&self, kind: GonKind) -> InducedGraph {
        let gons = self.gons(kind);
        let edges = (0..self.m())
            .map(|e| {
                let [p, q] = self.role_pairs(e, kind.role());
                (gons.gon_of[p.0], gons.gon_of[q.0])
            })
            .collect();
        Graph::new(gons.len(), edges)
    }

    /// `(chi, xi)` with `chi = v - m + f` and `xi = 2 - chi`.
    pub fn euler_connectivity(&self) -> (i64, i64) {
        let v = self.gon_count(GonKind::V) as i64;
        let f = self.gon_count(GonKind::F) as i64;
        let chi = v - self.m() as i64 + f;
        (chi, 2 - chi)
    }

    /// True iff the cubic flag graph is bipartite.
    pub fn orientable(&self) -> bool {
        let n = self.alpha.len();
        let mut color = vec![u8::MAX; n];
        for s in 0..n {
            if color[s] != u8::MAX {
                continue;
            }
            color[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(x) = queue.pop_front() {
                for y in self.flag_neighbours(x) {
                    if color[y] == u8::MAX {
                        color[y] = 1 - color[x];
                        queue.push_back(y);
                    } else if color[y] == color[x] {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn loop_balance(&self, edge: usize) -> Result<LoopBalance, MapError> {
        if edge >= self.m() {
            return Err(MapError::EdgeOutOfRange { edge, m: self.m() });
        }
        Ok(self.balance_in(&self.gons(GonKind::V), edge))
    }

    pub fn loop_balances(&self) -> Vec<LoopBalance> {
        let gons = self.gons(GonKind::V);
        (0..self.m()).map(|e| self.balance_in(&gons, e)).collect()
    }

    /// Walking the v-gon, each short side of the loop is crossed from an
    /// entry flag to an exit flag. The loop is balanced when the second
    /// crossing enters at the long-side neighbour of the first exit, i.e.
    /// both crossings run the same way around the square, which makes the
    /// two parallel short sides point in opposite directions.
    fn balance_in(&self, gons: &GonDecomposition, edge: usize) -> LoopBalance {
        let [p, q] = self.role_pairs(edge, Role::Short);
        let g = gons.gon_of[p.0];
        if g != gons.gon_of[q.0] {
            return LoopBalance::NotALoop;
        }
        let crossings = gons.crossings(g, edge);
        let [(_, first_exit), (second_entry, _)] = crossings[..] else {
            unreachable!("a loop square is crossed exactly twice by its v-gon");
        };
        if second_entry == self.partner(first_exit, Role::Long) {
            LoopBalance::Balanced
        } else {
            LoopBalance::Unbalanced
        }
    }
}

/// Local flag permutation taking the given roles to canonical ones.
fn canonicalizer(roles: RoleAssignment) -> [usize; 4] {
    let mut best = None;
    permutations4(|sigma| {
        if best.is_some() {
            return;
        }
        let ok = Role::ALL.iter().all(|&r| {
            let class = roles.class(r);
            let (a, b) = (0, class.partner(0));
            PairClass::of_pair(sigma[a], sigma[b]) == RoleAssignment::CANONICAL.class(r)
        });
        if ok {
            best = Some(sigma);
        }
    });
    best.expect("every bijective role assignment is realised by a flag permutation")
}

fn permutations4(mut visit: impl FnMut([usize; 4])) {
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                if a == b || a == c || b == c {
                    continue;
                }
                visit([a, b, c, 6 - a - b - c]);
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LoopBalance {
    Balanced,
    Unbalanced,
    NotALoop,
}

impl fmt::Display for LoopBalance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LoopBalance::Balanced => "balanced",
            LoopBalance::Unbalanced => "unbalanced",
            LoopBalance::NotALoop => "not_a_loop",
        })
    }
}

/// The gons of one kind. Each gon lists its flags in traversal order,
/// starting at its smallest flag with a role step: `(g[0], g[1])` is a role
/// pair, `(g[1], g[2])` an alpha pair, and so on cyclically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GonDecomposition {
    pub kind: GonKind,
    pub gons: Vec<Vec<usize>>,
    pub gon_of: Vec<usize>,
}

impl GonDecomposition {
    pub fn len(&self) -> usize {
        self.gons.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gons.is_empty()
    }

    /// Role-pair crossings `(entry, exit)` of square `edge` within gon `g`,
    /// in traversal order.
    pub fn crossings(&self, g: usize, edge: usize) -> Vec<(usize, usize)> {
        self.gons[g]
            .chunks_exact(2)
            .filter(|c| c[0] / 4 == edge)
            .map(|c| (c[0], c[1]))
            .collect()
    }

    /// Squares crossed by gon `g` in traversal order, with entry flags.
    pub fn square_sequence(&self, g: usize) -> Vec<(usize, usize)> {
        self.gons[g]
            .chunks_exact(2)
            .map(|c| (c[0] / 4, c[0]))
            .collect()
    }

    /// The partition as sorted flag sets, sorted, for order-free comparison.
    pub fn partition(&self) -> Vec<Vec<usize>> {
        let mut parts: Vec<Vec<usize>> = self
            .gons
            .iter()
            .map(|g| {
                let mut s = g.clone();
                s.sort_unstable();
                s
            })
            .collect();
        parts.sort();
        parts
    }

    /// Gon lengths in decreasing order.
    pub fn size_profile(&self) -> Vec<usize> {
        let mut sizes: Vec<usize> = self.gons.iter().map(Vec::len).collect();
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        sizes
    }
}

/// Small reference maps used throughout the tests and docs.
pub mod samples {
    use super::FlagMap;

    /// One vertex with a single orientable loop on the sphere.
    pub fn sphere_loop() -> FlagMap {
        FlagMap::from_pairs(1, &[(1, 2), (3, 0)]).unwrap()
    }

    /// One vertex with a single twisted loop (projective plane).
    pub fn projective_loop() -> FlagMap {
        FlagMap::from_pairs(1, &[(0, 2), (1, 3)]).unwrap()
    }

    /// A single edge between two vertices.
    pub fn single_edge() -> FlagMap {
        FlagMap::from_pairs(1, &[(0, 1), (2, 3)]).unwrap()
    }
}
