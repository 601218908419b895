//! Text formats and map constructions.
//!
//! * `.gem`: a header `gem m` followed by `2m` lines `a x y`, one per alpha
//!   pair over flags `0..4m`. Roles are always canonical.
//! * `.rot`: one line `v k: t1 t2 ...` per vertex listing 1-based edge ids in
//!   rotation order, plus an optional `twist: e1 e2 ...` line.
//! * `.szw`: a signed word of 1-based edge ids, e.g. `1 2 -1 2`.
//! * edge lists: a header `graph n` followed by lines `e u w` with 1-based
//!   vertex ids.
//!
//! Everything after `#` on a line is ignored.

use std::fmt::Write as _;

use thiserror::Error;

use crate::gem::{FlagMap, RoleAssignment};
use crate::graph::AbstractGraph;
use crate::zigzag::{SignedWord, WordError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodecError {
    /// `line` is 1-based; 0 when the problem is not tied to one line.
    #[error("{}{message}", at(*line))]
    Syntax { line: usize, message: String },
    #[error("{}invalid map: {reason}", at(*line))]
    Invalid { line: usize, reason: String },
    #[error(transparent)]
    Word(#[from] WordError),
}

fn at(line: usize) -> String {
    if line == 0 {
        String::new()
    } else {
        format!("line {line}: ")
    }
}

fn syntax(line: usize, message: impl Into<String>) -> CodecError {
    CodecError::Syntax {
        line,
        message: message.into(),
    }
}

/// Non-empty lines with comments stripped, paired with 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.split('#').next().unwrap_or("").trim();
        (!l.is_empty()).then_some((i + 1, l))
    })
}

fn parse_num(line: usize, tok: &str) -> Result<usize, CodecError> {
    tok.parse::<usize>().map_err(|_| {
        syntax(
            line,
            format!("expected a non-negative integer, found {tok:?}"),
        )
    })
}

/// `(line, x, y)`.
type GemPair = (usize, usize, usize);

/// Header size, header line and pairs of a `.gem` text, with flags range
/// checked.
fn gem_pairs(text: &str) -> Result<(usize, usize, Vec<GemPair>), CodecError> {
    let mut lines = content_lines(text);
    let (hline, header) = lines
        .next()
        .ok_or_else(|| syntax(1, "missing header `gem m`"))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    let m = match toks[..] {
        ["gem", m] => parse_num(hline, m)?,
        _ => {
            return Err(syntax(
                hline,
                format!("malformed header {header:?}, expected `gem m`"),
            ))
        }
    };
    if m == 0 {
        return Err(syntax(hline, "a map needs at least one edge"));
    }
    let n = 4 * m;
    let mut pairs = Vec::new();
    for (line, l) in lines {
        let toks: Vec<&str> = l.split_whitespace().collect();
        let (x, y) = match toks[..] {
            ["a", x, y] => (parse_num(line, x)?, parse_num(line, y)?),
            _ => return Err(syntax(line, format!("expected `a x y`, found {l:?}"))),
        };
        for f in [x, y] {
            if f >= n {
                return Err(syntax(line, format!("flag {f} out of range 0..{n}")));
            }
        }
        pairs.push((line, x, y));
    }
    Ok((m, hline, pairs))
}

pub fn parse_gem(text: &str) -> Result<FlagMap, CodecError> {
    let (m, hline, pairs) = gem_pairs(text)?;
    let mut alpha = vec![usize::MAX; 4 * m];
    for &(line, x, y) in &pairs {
        if x == y {
            return Err(syntax(
                line,
                format!("fixed point: flag {x} paired with itself"),
            ));
        }
        for f in [x, y] {
            if alpha[f] != usize::MAX {
                return Err(syntax(
                    line,
                    format!(
                        "flag {f} already paired with {}: not an involution",
                        alpha[f]
                    ),
                ));
            }
        }
        alpha[x] = y;
        alpha[y] = x;
    }
    let last = pairs.last().map_or(hline, |p| p.0);
    if pairs.len() != 2 * m {
        return Err(syntax(
            last,
            format!("expected {} pairs, found {}", 2 * m, pairs.len()),
        ));
    }
    FlagMap::new(alpha).map_err(|e| CodecError::Invalid {
        line: last,
        reason: e.to_string(),
    })
}

/// Reads a `.gem` text checking only its syntax, so that
/// [`FlagMap::validate`] can report what is wrong with it. Unpaired flags
/// are left out of range; later pairs overwrite earlier ones.
pub fn parse_gem_unchecked(text: &str) -> Result<FlagMap, CodecError> {
    let (m, _, pairs) = gem_pairs(text)?;
    let mut alpha = vec![usize::MAX; 4 * m];
    for (_, x, y) in pairs {
        alpha[x] = y;
        alpha[y] = x;
    }
    Ok(FlagMap::from_parts_unchecked(
        alpha,
        vec![RoleAssignment::CANONICAL; m],
    ))
}

/// Canonical text of `normalize(map)`: pairs sorted by their smaller flag.
pub fn write_gem(map: &FlagMap) -> String {
    let map = map.normalize();
    let mut out = format!("gem {}\n", map.m());
    for x in 0..map.flag_count() {
        let y = map.alpha(x);
        if x < y {
            writeln!(out, "a {x} {y}").unwrap();
        }
    }
    out
}

/// Parses 1-based signed ids separated by whitespace or commas. Brackets
/// are ignored and `−` is accepted as a minus sign.
pub fn parse_word(text: &str) -> Result<SignedWord, CodecError> {
    let mut raw: Vec<(usize, usize, bool)> = Vec::new();
    for (line, l) in content_lines(text) {
        let cleaned: String = l
            .chars()
            .map(|c| match c {
                '(' | ')' | '[' | ']' | ',' => ' ',
                '−' => '-',
                c => c,
            })
            .collect();
        for tok in cleaned.split_whitespace() {
            let (neg, digits) = match tok.strip_prefix('-') {
                Some(d) => (true, d),
                None => (false, tok.strip_prefix('+').unwrap_or(tok)),
            };
            let id = parse_num(line, digits)?;
            if id == 0 {
                return Err(syntax(line, "edge ids are 1-based"));
            }
            raw.push((line, id - 1, !neg));
        }
    }
    let m = raw.iter().map(|&(_, e, _)| e + 1).max().unwrap_or(0);
    if m == 0 {
        return Err(syntax(1, "empty word"));
    }
    let entries = raw.iter().map(|&(_, e, s)| (e, s)).collect();
    Ok(SignedWord::new(m, entries)?)
}

pub fn write_word(w: &SignedWord) -> String {
    format!("{w}\n")
}

/// The one-vertex map whose v-gon crosses the squares in word order.
///
/// The first occurrence of `e` crosses `4e → 4e+1`; the second crosses
/// `4e+2 → 4e+3` for `+` and `4e+3 → 4e+2` for `-`. Alpha joins each exit to
/// the next entry cyclically.
pub fn from_signed_word(w: &SignedWord) -> FlagMap {
    let m = w.m();
    let mut seen = vec![false; m];
    let crossings: Vec<(usize, usize)> = w
        .entries()
        .iter()
        .map(|&(e, positive)| {
            let first = !seen[e];
            seen[e] = true;
            match (first, positive) {
                (true, _) => (4 * e, 4 * e + 1),
                (false, true) => (4 * e + 2, 4 * e + 3),
                (false, false) => (4 * e + 3, 4 * e + 2),
            }
        })
        .collect();
    let mut alpha = vec![0; 4 * m];
    for (k, &(_, exit)) in crossings.iter().enumerate() {
        let (entry, _) = crossings[(k + 1) % crossings.len()];
        alpha[exit] = entry;
        alpha[entry] = exit;
    }
    FlagMap::new(alpha).expect("a double-occurrence word yields a connected map")
}

/// The map whose single zigzag reads `w`: the phial of the one-vertex map.
pub fn zigzag_map_from_word(w: &SignedWord) -> FlagMap {
    from_signed_word(w).phial()
}

/// A signed rotation system: the cyclic order of edge ends at each vertex
/// and a twist bit per edge. Edge ids are 0-based.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RotationSystem {
    rotations: Vec<Vec<usize>>,
    twisted: Vec<bool>,
}

impl RotationSystem {
    pub fn new(rotations: Vec<Vec<usize>>, twisted: Vec<bool>) -> Result<Self, CodecError> {
        let m = twisted.len();
        let mut count = vec![0usize; m];
        for (v, rot) in rotations.iter().enumerate() {
            if rot.is_empty() {
                return Err(syntax(0, format!("vertex {} has no edge ends", v + 1)));
            }
            for &e in rot {
                if e >= m {
                    return Err(syntax(0, format!("edge {} out of range 1..={m}", e + 1)));
                }
                count[e] += 1;
            }
        }
        if let Some((e, &c)) = count.iter().enumerate().find(|(_, &c)| c != 2) {
            return Err(syntax(
                0,
                format!("edge {} occurs {c} times (expected 2)", e + 1),
            ));
        }
        Ok(Self { rotations, twisted })
    }

    pub fn m(&self) -> usize {
        self.twisted.len()
    }

    pub fn rotations(&self) -> &[Vec<usize>] {
        &self.rotations
    }

    pub fn twisted(&self) -> &[bool] {
        &self.twisted
    }

    /// `(vertex, position, end)` for each edge end, where `end` is 0 for the
    /// first occurrence in vertex-then-position order and 1 for the second.
    fn ends(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.m()];
        self.rotations
            .iter()
            .map(|rot| {
                rot.iter()
                    .map(|&e| {
                        let end = usize::from(seen[e]);
                        seen[e] = true;
                        end
                    })
                    .collect()
            })
            .collect()
    }

    /// The underlying graph; edge `e` runs from the vertex of its first end
    /// to the vertex of its second.
    pub fn graph(&self) -> AbstractGraph {
        let mut ends = vec![(usize::MAX, usize::MAX); self.m()];
        for (v, rot) in self.rotations.iter().enumerate() {
            for &e in rot {
                if ends[e].0 == usize::MAX {
                    ends[e].0 = v;
                } else {
                    ends[e].1 = v;
                }
            }
        }
        AbstractGraph::new(self.rotations.len(), ends)
    }

    /// Builds the map. The first end of edge `e` is crossed `4e+1 → 4e`, the
    /// second `4e+3 → 4e+2`, or `4e+2 → 4e+3` when `e` is twisted. Alpha
    /// joins each exit to the entry of the next end around the vertex.
    pub fn to_map(&self) -> FlagMap {
        let ends = self.ends();
        let mut alpha = vec![0; 4 * self.m()];
        for (rot, rot_ends) in self.rotations.iter().zip(&ends) {
            let crossings: Vec<(usize, usize)> = rot
                .iter()
                .zip(rot_ends)
                .map(|(&e, &end)| match (end, self.twisted[e]) {
                    (0, _) => (4 * e + 1, 4 * e),
                    (_, false) => (4 * e + 3, 4 * e + 2),
                    (_, true) => (4 * e + 2, 4 * e + 3),
                })
                .collect();
            for (k, &(_, exit)) in crossings.iter().enumerate() {
                let (entry, _) = crossings[(k + 1) % crossings.len()];
                alpha[exit] = entry;
                alpha[entry] = exit;
            }
        }
        FlagMap::with_roles(alpha, vec![RoleAssignment::CANONICAL; self.m()])
            .expect("a connected rotation system yields a valid map")
    }

    /// A flag in the v-gon of each vertex of [`RotationSystem::to_map`].
    pub fn vertex_flags(&self) -> Vec<usize> {
        let ends = self.ends();
        self.rotations
            .iter()
            .zip(&ends)
            .map(|(rot, rot_ends)| {
                let e = rot[0];
                if rot_ends[0] == 0 {
                    4 * e + 1
                } else {
                    4 * e + 3
                }
            })
            .collect()
    }
}

/// Converts a rotation system to a map. Fails if the graph is disconnected.
pub fn embedding_to_map(rot: &RotationSystem) -> Result<FlagMap, CodecError> {
    if !rot.graph().is_connected() {
        return Err(CodecError::Invalid {
            line: 0,
            reason: "rotation system graph is disconnected".into(),
        });
    }
    Ok(rot.to_map())
}

pub fn parse_rotation(text: &str) -> Result<RotationSystem, CodecError> {
    let mut labels: Vec<usize> = Vec::new();
    let mut rotations: Vec<Vec<usize>> = Vec::new();
    let mut twists: Vec<(usize, usize)> = Vec::new();
    let mut first_line = None;
    for (line, l) in content_lines(text) {
        first_line.get_or_insert(line);
        if let Some(rest) = l.strip_prefix("twist:") {
            for tok in rest.split_whitespace() {
                twists.push((line, parse_num(line, tok)?));
            }
            continue;
        }
        let Some(rest) = l.strip_prefix('v') else {
            return Err(syntax(
                line,
                format!("expected `v k: ...` or `twist: ...`, found {l:?}"),
            ));
        };
        let Some((label, tokens)) = rest.split_once(':') else {
            return Err(syntax(line, "missing `:` after vertex label"));
        };
        let label = parse_num(line, label.trim())?;
        if labels.contains(&label) {
            return Err(syntax(line, format!("duplicate vertex {label}")));
        }
        let mut rot = Vec::new();
        for tok in tokens.split_whitespace() {
            let e = parse_num(line, tok)?;
            if e == 0 {
                return Err(syntax(line, "edge ids are 1-based"));
            }
            rot.push(e - 1);
        }
        if rot.is_empty() {
            return Err(syntax(line, format!("vertex {label} has no edge ends")));
        }
        labels.push(label);
        rotations.push(rot);
    }
    if rotations.is_empty() {
        return Err(syntax(first_line.unwrap_or(1), "no vertices"));
    }
    let m = rotations
        .iter()
        .flatten()
        .map(|&e| e + 1)
        .max()
        .unwrap_or(0);
    let mut twisted = vec![false; m];
    for (line, t) in twists {
        if t == 0 || t > m {
            return Err(syntax(line, format!("unknown twist edge {t}")));
        }
        twisted[t - 1] = true;
    }
    RotationSystem::new(rotations, twisted)
}

pub fn write_rotation(rot: &RotationSystem) -> String {
    let mut out = String::new();
    for (v, r) in rot.rotations().iter().enumerate() {
        write!(out, "v {}:", v + 1).unwrap();
        for e in r {
            write!(out, " {}", e + 1).unwrap();
        }
        out.push('\n');
    }
    let twists: Vec<String> = (0..rot.m())
        .filter(|&e| rot.twisted()[e])
        .map(|e| (e + 1).to_string())
        .collect();
    if !twists.is_empty() {
        writeln!(out, "twist: {}", twists.join(" ")).unwrap();
    }
    out
}

/// Parses an edge list (`graph n` + `e u w` lines) or, if the text looks
/// like a rotation file, the graph underlying it.
pub fn parse_graph(text: &str) -> Result<AbstractGraph, CodecError> {
    let first = content_lines(text).next();
    match first {
        Some((_, l)) if l.starts_with("graph") => {}
        Some(_) => return Ok(parse_rotation(text)?.graph()),
        None => return Err(syntax(1, "empty graph file")),
    }
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().unwrap();
    let n = match header.split_whitespace().collect::<Vec<_>>()[..] {
        ["graph", n] => parse_num(hline, n)?,
        _ => return Err(syntax(hline, "malformed header, expected `graph n`")),
    };
    let mut edges = Vec::new();
    for (line, l) in lines {
        let toks: Vec<&str> = l.split_whitespace().collect();
        let (u, w) = match toks[..] {
            ["e", u, w] => (parse_num(line, u)?, parse_num(line, w)?),
            _ => return Err(syntax(line, format!("expected `e u w`, found {l:?}"))),
        };
        for x in [u, w] {
            if x == 0 || x > n {
                return Err(syntax(line, format!("vertex {x} out of range 1..={n}")));
            }
        }
        edges.push((u - 1, w - 1));
    }
    if edges.is_empty() {
        return Err(syntax(hline, "graph has no edges"));
    }
    Ok(AbstractGraph::new(n, edges))
}

pub fn write_graph(g: &AbstractGraph) -> String {
    let mut out = format!("graph {}\n", g.vertex_count());
    for &(u, w) in g.edges() {
        writeln!(out, "e {} {}", u + 1, w + 1).unwrap();
    }
    out
}
