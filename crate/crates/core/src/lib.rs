//! Graph-encoded maps on closed surfaces: the dual/phial/antimap family,
//! GF(2) bond and cycle spaces of the induced graphs, and the linear
//! operators read off single-vertex, single-face and single-zigzag words.
//!
//! ```
//! use mapcalc::codec::{parse_word, zigzag_map_from_word};
//! use mapcalc::theorems::check_theorem3;
//!
//! let w = parse_word("1 8 5 6 9 4 5 7 3 4 -8 2 3 -9 1 2 -7 6").unwrap();
//! let map = zigzag_map_from_word(&w);
//! assert_eq!(map.gon_counts(), (6, 4, 1));
//! assert!(check_theorem3(&map).unwrap().iter().all(|r| r.holds));
//! ```

pub mod codec;
pub mod gem;
pub mod gf2;
pub mod graph;
pub mod search;
pub mod spaces;
pub mod theorems;
pub mod zigzag;

pub use codec::{CodecError, RotationSystem};
pub use gem::{
    FlagMap, GonDecomposition, GonKind, LoopBalance, MapError, RolePerm, ValidationReport,
};
pub use gf2::{Gf2Error, Gf2Subspace, Gf2Vec, LinearOp};
pub use graph::{AbstractGraph, Graph, InducedGraph};
pub use search::{Budget, SearchOutcome, SearchStatus};
pub use spaces::{SpaceBundle, SpaceError};
pub use theorems::{TheoremId, TheoremReport};
pub use zigzag::{SignedWord, WordError, WordOperators};
