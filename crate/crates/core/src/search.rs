//! Enumeration of small maps and search for embeddings with a single face
//! and a single zigzag.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::codec::RotationSystem;
use crate::gem::{FlagMap, GonKind};
use crate::graph::AbstractGraph;

/// Number of fixed-point-free involutions on `2k` points, `(2k-1)!!`.
pub fn matching_count(points: usize) -> u64 {
    assert!(points.is_multiple_of(2));
    (1..points as u64).step_by(2).product()
}

/// Decodes the `index`-th perfect matching of `0..n` in the order obtained
/// by repeatedly pairing the smallest free point with each later free point.
fn decode_matching(n: usize, mut index: u64) -> Vec<usize> {
    let mut free: Vec<usize> = (0..n).collect();
    let mut alpha = vec![0; n];
    while !free.is_empty() {
        let radix = (free.len() - 1) as u64;
        let sub = matching_count(free.len() - 2);
        let j = (index / sub) as usize;
        index %= sub;
        debug_assert!((j as u64) < radix);
        let x = free.remove(0);
        let y = free.remove(j);
        alpha[x] = y;
        alpha[y] = x;
    }
    alpha
}

/// Every valid map with `m` edges and canonical roles, in a fixed order.
/// With `dedup`, maps equal up to relabelling edges and applying the
/// role-preserving flag swaps inside each square are reported once.
pub fn enumerate_maps(m: usize, dedup: bool) -> impl Iterator<Item = FlagMap> {
    assert!(m >= 1, "maps have at least one edge");
    let n = 4 * m;
    let mut seen = HashSet::new();
    (0..matching_count(n)).filter_map(move |k| {
        let map = FlagMap::new(decode_matching(n, k)).ok()?;
        if dedup && !seen.insert(relabel_key(&map)) {
            return None;
        }
        Some(map)
    })
}

/// Flag permutations of one square that fix every pair class.
const KLEIN: [[usize; 4]; 4] = [[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]];

/// Smallest alpha over all edge relabellings and per-square Klein swaps.
fn relabel_key(map: &FlagMap) -> Vec<usize> {
    let m = map.m();
    let mut best: Option<Vec<usize>> = None;
    let mut perm: Vec<usize> = (0..m).collect();
    let mut klein = vec![0usize; m];
    loop {
        loop {
            let f = |x: usize| 4 * perm[x / 4] + KLEIN[klein[x / 4]][x % 4];
            let mut alpha = vec![0; 4 * m];
            for x in 0..4 * m {
                alpha[f(x)] = f(map.alpha(x));
            }
            if best.as_ref().is_none_or(|b| alpha < *b) {
                best = Some(alpha);
            }
            // odometer over Klein choices
            let mut i = 0;
            while i < m && klein[i] == 3 {
                klein[i] = 0;
                i += 1;
            }
            if i == m {
                break;
            }
            klein[i] += 1;
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    best.unwrap()
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("input graph is disconnected")]
    Disconnected,
    #[error("input graph has no edges")]
    NoEdges,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    /// Largest total number of subdivision vertices tried.
    pub max_subdivisions: usize,
    /// Largest number of candidate embeddings evaluated overall.
    pub max_candidates: u64,
    /// Wall-clock limit. Makes the outcome depend on machine speed.
    pub time_limit: Option<Duration>,
    /// Candidate spaces up to this size are searched exhaustively.
    pub exhaustive_threshold: u64,
    /// Local moves per random restart.
    pub restart_length: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Self {
            max_subdivisions: 0,
            max_candidates: 1_000_000,
            time_limit: None,
            exhaustive_threshold: 1_000_000,
            restart_length: 400,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchStatus {
    Found,
    /// Every candidate of every allowed subdivision was tried.
    Exhausted,
    /// Candidate or time budget ran out, or some space was only sampled.
    BudgetExceeded,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub status: SearchStatus,
    pub map: Option<FlagMap>,
    pub rotation: Option<RotationSystem>,
    /// The subdivided graph the found map embeds.
    pub graph: Option<AbstractGraph>,
    /// Subdivision vertices inserted on each input edge.
    pub subdivisions: Vec<usize>,
    pub candidates: u64,
    pub seed: u64,
}

/// Candidate embeddings of one graph: a rotation per vertex (first end
/// fixed) and a twist bit per edge.
struct CandidateSpace {
    /// Edge ends at each vertex in incidence order.
    ends: Vec<Vec<usize>>,
    m: usize,
    size: Option<u64>,
}

impl CandidateSpace {
    fn new(g: &AbstractGraph) -> Self {
        let ends: Vec<Vec<usize>> = g
            .incidence()
            .into_iter()
            .map(|inc| inc.into_iter().map(|(e, _)| e).collect())
            .collect();
        let mut size = 1u64
            .checked_shl(g.edge_count() as u32)
            .filter(|_| g.edge_count() < 64);
        for v in &ends {
            for k in 2..v.len() as u64 {
                size = size.and_then(|s| s.checked_mul(k));
            }
        }
        Self {
            ends,
            m: g.edge_count(),
            size,
        }
    }

    /// Decodes candidate `index`: twist bits first, then a Lehmer code for
    /// the tail of each vertex rotation.
    fn decode(&self, mut index: u64) -> RotationSystem {
        let mut twisted = vec![false; self.m];
        for t in twisted.iter_mut() {
            *t = index & 1 == 1;
            index >>= 1;
        }
        let rotations = self
            .ends
            .iter()
            .map(|ends| {
                let mut rest: Vec<usize> = ends[1..].to_vec();
                let mut rot = vec![ends[0]];
                while !rest.is_empty() {
                    let r = rest.len() as u64;
                    rot.push(rest.remove((index % r) as usize));
                    index /= r;
                }
                rot
            })
            .collect();
        RotationSystem::new(rotations, twisted).expect("decoded from a graph")
    }

    fn random(&self, rng: &mut ChaCha8Rng) -> RotationSystem {
        let rotations = self
            .ends
            .iter()
            .map(|ends| {
                let mut rot = ends.clone();
                rot[1..].shuffle(rng);
                rot
            })
            .collect();
        let twisted = (0..self.m).map(|_| rng.random_bool(0.5)).collect();
        RotationSystem::new(rotations, twisted).expect("shuffled from a graph")
    }
}

/// `f + z`; a target embedding scores 2.
fn score(rot: &RotationSystem) -> (usize, FlagMap) {
    let map = rot.to_map();
    let s = map.gon_count(GonKind::F) + map.gon_count(GonKind::Z);
    (s, map)
}

/// A random move: swap two entries of one rotation or toggle a twist.
fn perturb(rot: &RotationSystem, rng: &mut ChaCha8Rng) -> RotationSystem {
    let mut rotations = rot.rotations().to_vec();
    let mut twisted = rot.twisted().to_vec();
    let swappable: Vec<usize> = (0..rotations.len())
        .filter(|&v| rotations[v].len() >= 3)
        .collect();
    if swappable.is_empty() || rng.random_bool(0.5) {
        let e = rng.random_range(0..twisted.len());
        twisted[e] = !twisted[e];
    } else {
        let v = swappable[rng.random_range(0..swappable.len())];
        let k = rotations[v].len();
        let i = rng.random_range(1..k);
        let mut j = rng.random_range(1..k - 1);
        if j >= i {
            j += 1;
        }
        rotations[v].swap(i, j);
    }
    RotationSystem::new(rotations, twisted).expect("moves preserve the edge multiset")
}

struct Restart {
    /// Evaluations made before success, or all of them.
    steps: u64,
    found: Option<(RotationSystem, FlagMap)>,
}

fn run_restart(space: &CandidateSpace, rng: &mut ChaCha8Rng, length: u64) -> Restart {
    let mut current = space.random(rng);
    let (mut best, map) = score(&current);
    if best == 2 {
        return Restart {
            steps: 1,
            found: Some((current, map)),
        };
    }
    for step in 1..length {
        let next = perturb(&current, rng);
        let (s, map) = score(&next);
        if s == 2 {
            return Restart {
                steps: step + 1,
                found: Some((next, map)),
            };
        }
        if s <= best {
            best = s;
            current = next;
        }
    }
    Restart {
        steps: length,
        found: None,
    }
}

/// All ways to place `total` subdivision vertices on `edges` edges, in
/// lexicographic order of the count vectors.
fn distributions(edges: usize, total: usize) -> Vec<Vec<usize>> {
    fn go(i: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(cur.clone());
            return;
        }
        for k in (0..=left).rev() {
            cur[i] = k;
            go(i + 1, left - k, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    go(0, total, &mut vec![0; edges], &mut out);
    out
}

/// Restarts evaluated per parallel batch. Fixed so results do not depend on
/// the thread count.
const BATCH: u64 = 32;

/// Searches signed rotation systems of `g` and of its subdivisions, in
/// nondecreasing number of subdivision vertices, for a map with one face
/// and one zigzag.
pub fn search_embedding(
    g: &AbstractGraph,
    budget: &Budget,
    seed: u64,
) -> Result<SearchOutcome, SearchError> {
    if g.edge_count() == 0 {
        return Err(SearchError::NoEdges);
    }
    if !g.is_connected() {
        return Err(SearchError::Disconnected);
    }
    let started = Instant::now();
    let out_of_time = || budget.time_limit.is_some_and(|t| started.elapsed() >= t);
    let mut candidates = 0u64;
    let mut complete = true;
    let mut config_index = 0u64;

    for total in 0..=budget.max_subdivisions {
        for counts in distributions(g.edge_count(), total) {
            config_index += 1;
            if candidates >= budget.max_candidates || out_of_time() {
                return Ok(SearchOutcome {
                    status: SearchStatus::BudgetExceeded,
                    map: None,
                    rotation: None,
                    graph: None,
                    subdivisions: vec![0; g.edge_count()],
                    candidates,
                    seed,
                });
            }
            let (h, _) = g.subdivide(&counts);
            let space = CandidateSpace::new(&h);
            let remaining = budget.max_candidates - candidates;
            let found = match space.size {
                Some(size) if size <= budget.exhaustive_threshold => {
                    let limit = size.min(remaining);
                    if limit < size {
                        complete = false;
                    }
                    let hit = (0..limit).into_par_iter().find_first(|&i| {
                        let rot = space.decode(i);
                        score(&rot).0 == 2
                    });
                    match hit {
                        Some(i) => {
                            candidates += i + 1;
                            let rot = space.decode(i);
                            let map = rot.to_map();
                            Some((rot, map))
                        }
                        None => {
                            candidates += limit;
                            None
                        }
                    }
                }
                _ => {
                    complete = false;
                    random_phase(
                        &space,
                        budget,
                        seed,
                        config_index,
                        &mut candidates,
                        &out_of_time,
                    )
                }
            };
            if let Some((rot, map)) = found {
                debug_assert!(embedding_matches_graph(&rot, &map, &h));
                return Ok(SearchOutcome {
                    status: SearchStatus::Found,
                    map: Some(map),
                    rotation: Some(rot),
                    graph: Some(h),
                    subdivisions: counts,
                    candidates,
                    seed,
                });
            }
        }
    }
    Ok(SearchOutcome {
        status: if complete {
            SearchStatus::Exhausted
        } else {
            SearchStatus::BudgetExceeded
        },
        map: None,
        rotation: None,
        graph: None,
        subdivisions: vec![0; g.edge_count()],
        candidates,
        seed,
    })
}

/// Seeded random restarts with local moves. Restart `r` of configuration
/// `c` draws from its own ChaCha stream, so batches can run in parallel and
/// are merged in restart order.
fn random_phase(
    space: &CandidateSpace,
    budget: &Budget,
    seed: u64,
    config: u64,
    candidates: &mut u64,
    out_of_time: &dyn Fn() -> bool,
) -> Option<(RotationSystem, FlagMap)> {
    let mut restart = 0u64;
    while *candidates < budget.max_candidates && !out_of_time() {
        let results: Vec<Restart> = (restart..restart + BATCH)
            .into_par_iter()
            .map(|r| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream((config << 32) | r);
                run_restart(space, &mut rng, budget.restart_length)
            })
            .collect();
        restart += BATCH;
        for res in results {
            let remaining = budget.max_candidates - *candidates;
            if res.steps > remaining {
                *candidates = budget.max_candidates;
                return None;
            }
            *candidates += res.steps;
            if res.found.is_some() {
                return res.found;
            }
        }
    }
    None
}

/// Whether the v-gons of `map` realise `g` with the vertex numbering of
/// `rot`: edge `e` of `G_M` joins the gons of the ends of edge `e` of `g`.
pub fn embedding_matches_graph(rot: &RotationSystem, map: &FlagMap, g: &AbstractGraph) -> bool {
    let gons = map.gons(GonKind::V);
    let gm = map.induced_graph(GonKind::V);
    if gm.vertex_count() != g.vertex_count() || gm.edge_count() != g.edge_count() {
        return false;
    }
    let vmap: Vec<usize> = rot.vertex_flags().iter().map(|&x| gons.gon_of[x]).collect();
    let mut hit = vec![false; gm.vertex_count()];
    for &v in &vmap {
        if hit[v] {
            return false;
        }
        hit[v] = true;
    }
    g.edges().iter().enumerate().all(|(e, &(a, b))| {
        let (x, y) = gm.endpoints(e);
        (vmap[a], vmap[b]) == (x, y) || (vmap[a], vmap[b]) == (y, x)
    }) && gm.degree_sequence() == g.degree_sequence()
}
