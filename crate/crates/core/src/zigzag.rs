//! Signed double-occurrence words and the operators they induce.
//!
//! Walking the single v-gon of a one-vertex map crosses every square twice.
//! The resulting cyclic word records, for each edge, whether the second
//! crossing runs in the same direction as the first (`+`) or the opposite
//! one (`-`). From a word we get the interlacement operator `i`, the diagonal
//! operator `kappa` (the same-direction edges) and `c = kappa + i`.

use std::fmt;

use thiserror::Error;

use crate::gem::{FlagMap, GonKind, LoopBalance, MapError};
use crate::gf2::{Gf2Vec, LinearOp};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("edge {edge} out of range (universe {m})")]
    EdgeOutOfRange { edge: usize, m: usize },
    #[error("edge {edge} occurs {count} times (expected 2)")]
    NotDoubleOccurrence { edge: usize, count: usize },
    #[error("first occurrence of edge {edge} is negative")]
    NegativeFirstOccurrence { edge: usize },
    #[error("map has {count} {kind}-gons (expected 1)")]
    GonCount { kind: GonKind, count: usize },
    #[error(transparent)]
    Map(#[from] MapError),
}

/// A cyclic word in which every edge `0..m` occurs twice.
///
/// The stored linearization always has a positive first occurrence, so the
/// sign of the second occurrence says whether both passages share a
/// direction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignedWord {
    m: usize,
    entries: Vec<(usize, bool)>,
}

impl SignedWord {
    /// `entries` are `(edge, positive)` pairs with 0-based edges.
    pub fn new(m: usize, entries: Vec<(usize, bool)>) -> Result<Self, WordError> {
        let mut count = vec![0usize; m];
        for &(e, positive) in &entries {
            if e >= m {
                return Err(WordError::EdgeOutOfRange { edge: e, m });
            }
            if count[e] == 0 && !positive {
                return Err(WordError::NegativeFirstOccurrence { edge: e });
            }
            count[e] += 1;
        }
        if let Some((edge, &c)) = count.iter().enumerate().find(|(_, &c)| c != 2) {
            return Err(WordError::NotDoubleOccurrence { edge, count: c });
        }
        Ok(Self { m, entries })
    }

    /// Builds a word from edge order and per-edge "same direction" bits,
    /// assigning signs so that first occurrences are positive.
    pub fn from_sequence(
        m: usize,
        edges: &[usize],
        same_direction: &[bool],
    ) -> Result<Self, WordError> {
        let mut seen = vec![false; m];
        let mut entries = Vec::with_capacity(edges.len());
        for &e in edges {
            if e >= m {
                return Err(WordError::EdgeOutOfRange { edge: e, m });
            }
            let positive = !seen[e] || same_direction[e];
            seen[e] = true;
            entries.push((e, positive));
        }
        Self::new(m, entries)
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn entries(&self) -> &[(usize, bool)] {
        &self.entries
    }

    fn positions(&self, x: usize) -> Result<(usize, usize), WordError> {
        if x >= self.m {
            return Err(WordError::EdgeOutOfRange { edge: x, m: self.m });
        }
        let mut it = self
            .entries
            .iter()
            .enumerate()
            .filter(|(_, &(e, _))| e == x)
            .map(|(i, _)| i);
        let p = it.next().expect("validated word");
        let q = it.next().expect("validated word");
        Ok((p, q))
    }

    /// Whether both occurrences of `x` run in the same direction.
    pub fn same_direction(&self, x: usize) -> Result<bool, WordError> {
        let (_, q) = self.positions(x)?;
        Ok(self.entries[q].1)
    }

    /// Edges occurring exactly once strictly between the two occurrences of
    /// `x`. Either arc of the cycle gives the same set.
    pub fn interlacement(&self, x: usize) -> Result<Gf2Vec, WordError> {
        let (p, q) = self.positions(x)?;
        let mut out = Gf2Vec::zeros(self.m);
        for &(e, _) in &self.entries[p + 1..q] {
            out.toggle(e);
        }
        Ok(out)
    }

    /// `{x}` if both passages agree in direction, else empty.
    pub fn kappa(&self, x: usize) -> Result<Gf2Vec, WordError> {
        let mut out = Gf2Vec::zeros(self.m);
        if self.same_direction(x)? {
            out.set(x, true);
        }
        Ok(out)
    }

    pub fn interlacement_operator(&self) -> LinearOp {
        let cols = (0..self.m)
            .map(|x| self.interlacement(x).expect("edge in range"))
            .collect();
        LinearOp::from_columns(cols).expect("square operator")
    }

    pub fn kappa_operator(&self) -> LinearOp {
        let cols = (0..self.m)
            .map(|x| self.kappa(x).expect("edge in range"))
            .collect();
        LinearOp::from_columns(cols).expect("square operator")
    }

    /// `c = kappa + i`, column by column.
    pub fn c_operator(&self) -> LinearOp {
        self.kappa_operator()
            .add(&self.interlacement_operator())
            .expect("same universe")
    }

    /// The word read from position `start`, optionally backwards, with signs
    /// recomputed so first occurrences are positive.
    pub fn rotated(&self, start: usize, reversed: bool) -> SignedWord {
        let n = self.entries.len();
        let same: Vec<bool> = (0..self.m)
            .map(|x| self.same_direction(x).expect("edge in range"))
            .collect();
        let order: Vec<usize> = (0..n)
            .map(|k| {
                if reversed {
                    self.entries[(start + n - k) % n].0
                } else {
                    self.entries[(start + k) % n].0
                }
            })
            .collect();
        SignedWord::from_sequence(self.m, &order, &same).expect("rotation of a valid word")
    }

    /// Lexicographically least rotation over both reading directions.
    pub fn canonical(&self) -> SignedWord {
        let n = self.entries.len();
        let mut best = self.clone();
        for reversed in [false, true] {
            for start in 0..n {
                let cand = self.rotated(start, reversed);
                if cand.key() < best.key() {
                    best = cand;
                }
            }
        }
        best
    }

    fn key(&self) -> Vec<(usize, bool)> {
        // `false` sorts before `true`; make `+` the smaller symbol
        self.entries.iter().map(|&(e, s)| (e, !s)).collect()
    }

    pub fn equivalent(&self, other: &SignedWord) -> bool {
        self.m == other.m && self.canonical() == other.canonical()
    }
}

/// 1-based ids with `-` for negative occurrences, e.g. `1 8 -8 1`.
impl fmt::Display for SignedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, &(e, positive)) in self.entries.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            if !positive {
                write!(f, "-")?;
            }
            write!(f, "{}", e + 1)?;
        }
        Ok(())
    }
}

/// The word of v-gon `which`, signed by loop balance. Fails unless that
/// v-gon crosses every square twice, i.e. unless the map has one vertex.
pub fn vertex_word(map: &FlagMap, which: usize) -> Result<SignedWord, WordError> {
    let gons = map.gons(GonKind::V);
    if which >= gons.len() {
        return Err(MapError::GonOutOfRange {
            kind: GonKind::V,
            index: which,
            count: gons.len(),
        }
        .into());
    }
    let squares: Vec<usize> = gons
        .square_sequence(which)
        .into_iter()
        .map(|(e, _)| e)
        .collect();
    let mut count = vec![0usize; map.m()];
    for &e in &squares {
        count[e] += 1;
    }
    if let Some((edge, &c)) = count.iter().enumerate().find(|(_, &c)| c != 2) {
        return Err(WordError::NotDoubleOccurrence { edge, count: c });
    }
    let same: Vec<bool> = map
        .loop_balances()
        .into_iter()
        .map(|b| b == LoopBalance::Balanced)
        .collect();
    SignedWord::from_sequence(map.m(), &squares, &same)
}

/// The word of the single zigzag: the vertex word of the phial.
pub fn zigzag_word(map: &FlagMap) -> Result<SignedWord, WordError> {
    let z = map.gon_count(GonKind::Z);
    if z != 1 {
        return Err(WordError::GonCount {
            kind: GonKind::Z,
            count: z,
        });
    }
    vertex_word(&map.phial(), 0)
}

/// Word of the single vertex of `P~`, the antimap of the phial.
pub fn ptilde_word(map: &FlagMap) -> Result<SignedWord, WordError> {
    let z = map.gon_count(GonKind::Z);
    if z != 1 {
        return Err(WordError::GonCount {
            kind: GonKind::Z,
            count: z,
        });
    }
    vertex_word(&map.phial().antimap(), 0)
}

/// Word of the single vertex of the dual, i.e. of the single face.
pub fn face_word(map: &FlagMap) -> Result<SignedWord, WordError> {
    let f = map.gon_count(GonKind::F);
    if f != 1 {
        return Err(WordError::GonCount {
            kind: GonKind::F,
            count: f,
        });
    }
    vertex_word(&map.dual(), 0)
}

/// The operators `c_P`, `c_P~` (single zigzag) and `c_D` (single face).
/// Absent operators are `None`; the gon counts explain why.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WordOperators {
    pub faces: usize,
    pub zigzags: usize,
    pub c_p: Option<LinearOp>,
    pub c_ptilde: Option<LinearOp>,
    pub c_d: Option<LinearOp>,
}

pub fn word_operators(map: &FlagMap) -> WordOperators {
    let (_, faces, zigzags) = map.gon_counts();
    let (c_p, c_ptilde) = match zigzag_word(map) {
        Ok(w) => {
            let c_p = w.c_operator();
            let c_ptilde = LinearOp::identity(map.m())
                .add(&c_p)
                .expect("same universe");
            (Some(c_p), Some(c_ptilde))
        }
        Err(_) => (None, None),
    };
    let c_d = face_word(map).ok().map(|w| w.c_operator());
    WordOperators {
        faces,
        zigzags,
        c_p,
        c_ptilde,
        c_d,
    }
}
