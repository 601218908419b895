//! Shared generators and brute-force oracles for the integration tests.
//!
//! The oracles work on plain bitmasks and never call into the GF(2) or
//! space-building code they are used to check.

#![allow(dead_code)]

use std::collections::HashSet;

use mapcalc::{AbstractGraph, FlagMap, Gf2Subspace, Gf2Vec, Graph, SignedWord};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub const K33_WORD: &str = "1 8 5 6 9 4 5 7 3 4 -8 2 3 -9 1 2 -7 6";

pub fn data(name: &str) -> String {
    let path = format!("{}/tests/data/{name}", env!("CARGO_MANIFEST_DIR"));
    std::fs::read_to_string(path).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    use rand::SeedableRng;
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_word(rng: &mut ChaCha8Rng, m: usize) -> SignedWord {
    let mut order: Vec<usize> = (0..m).flat_map(|e| [e, e]).collect();
    order.shuffle(rng);
    let same: Vec<bool> = (0..m).map(|_| rng.random_bool(0.5)).collect();
    SignedWord::from_sequence(m, &order, &same).unwrap()
}

/// A uniformly random alpha, redrawn until the map is connected.
pub fn random_map(rng: &mut ChaCha8Rng, m: usize) -> FlagMap {
    loop {
        let mut flags: Vec<usize> = (0..4 * m).collect();
        flags.shuffle(rng);
        let mut alpha = vec![0; 4 * m];
        for p in flags.chunks(2) {
            alpha[p[0]] = p[1];
            alpha[p[1]] = p[0];
        }
        if let Ok(map) = FlagMap::new(alpha) {
            return map;
        }
    }
}

/// A random spanning tree on `n` vertices plus `extra` random simple edges.
pub fn random_connected_graph(rng: &mut ChaCha8Rng, n: usize, extra: usize) -> AbstractGraph {
    let mut edges: Vec<(usize, usize)> = (1..n).map(|v| (rng.random_range(0..v), v)).collect();
    let mut attempts = 0;
    while edges.len() < n - 1 + extra && attempts < 100 {
        attempts += 1;
        let a = rng.random_range(0..n);
        let b = rng.random_range(0..n);
        let (a, b) = (a.min(b), a.max(b));
        if a != b && !edges.contains(&(a, b)) {
            edges.push((a, b));
        }
    }
    Graph::new(n, edges)
}

pub fn mask(v: &Gf2Vec) -> u64 {
    v.ones().fold(0, |acc, i| acc | 1 << i)
}

pub fn vec_of(len: usize, mask: u64) -> Gf2Vec {
    Gf2Vec::from_indices(len, (0..len).filter(|i| mask >> i & 1 == 1)).unwrap()
}

/// Every XOR combination of the generators.
pub fn brute_span(gens: &[u64]) -> HashSet<u64> {
    let mut out = HashSet::from([0u64]);
    for &g in gens {
        let next: Vec<u64> = out.iter().map(|x| x ^ g).collect();
        out.extend(next);
    }
    out
}

/// Members of an implementation subspace, enumerated from its basis.
pub fn members(s: &Gf2Subspace) -> HashSet<u64> {
    brute_span(&s.basis().iter().map(mask).collect::<Vec<_>>())
}

/// All vectors orthogonal to every member of `set`.
pub fn brute_complement(len: usize, set: &HashSet<u64>) -> HashSet<u64> {
    (0..1u64 << len)
        .filter(|x| set.iter().all(|y| (x & y).count_ones() % 2 == 0))
        .collect()
}

/// `δ(W)` for every vertex subset `W`.
pub fn brute_bonds(g: &Graph) -> HashSet<u64> {
    let n = g.vertex_count();
    (0..1u64 << n)
        .map(|w| {
            g.edges()
                .iter()
                .enumerate()
                .filter(|&(_, &(a, b))| (w >> a & 1) != (w >> b & 1))
                .fold(0, |acc, (e, _)| acc | 1 << e)
        })
        .collect()
}

/// Edge sets in which every vertex has even degree.
pub fn brute_cycles(g: &Graph) -> HashSet<u64> {
    let m = g.edge_count();
    (0..1u64 << m)
        .filter(|&x| {
            let mut deg = vec![0usize; g.vertex_count()];
            for (e, &(a, b)) in g.edges().iter().enumerate() {
                if x >> e & 1 == 1 {
                    deg[a] += 1;
                    deg[b] += 1;
                }
            }
            deg.iter().all(|d| d % 2 == 0)
        })
        .collect()
}
