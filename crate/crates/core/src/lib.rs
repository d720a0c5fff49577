//! Word-representable graphs and semi-transitive orientations.
//!
//! A graph is word-representable when some word over its vertices makes two
//! letters alternate exactly when the vertices are adjacent. Equivalently,
//! the graph has a semi-transitive orientation: an acyclic orientation with
//! no shortcut. This crate provides
//!
//! * labeled graphs, standard families, line graphs and Mycielski graphs
//!   ([`Graph`], [`generators`]), and embedding search ([`embedding`]);
//! * words, alternation and cyclic statements ([`words`]);
//! * orientations, shortcut detection and an exhaustive search that decides
//!   word-representability with a certificate ([`orientation`],
//!   [`shortcut`], [`search`]);
//! * the orientation D of the line graph of the Mycielski graph of an odd
//!   cycle and its structural checks ([`mu_line`]).
//!
//! ```
//! use wordrep::generators::{k4_prime, line_graph};
//! use wordrep::search::{decide_word_representable, SearchOptions};
//!
//! let g = line_graph(&k4_prime()).unwrap();
//! let cert = decide_word_representable(&g, &SearchOptions::default()).unwrap();
//! assert!(!cert.is_representable());
//! ```

pub mod bitset;
pub mod embedding;
pub mod generators;
pub mod graph;
pub mod io;
pub mod mu_line;
pub mod orientation;
pub mod search;
pub mod shortcut;
pub mod words;

pub use embedding::{are_isomorphic, find_embedding, Embedding, EmbeddingMode};
pub use graph::{Graph, GraphError};
pub use mu_line::{ClauseReport, EdgeLabel, LevelSets};
pub use orientation::{Orientation, OrientationError, PartialOrientation};
pub use search::{Certificate, SearchError, SearchOptions, Verdict};
pub use shortcut::{find_shortcut, is_semi_transitive, ShortcutWitness};
pub use words::{Statement, View, Word, WordError};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/graphs.md")]
    mod graphs {}
    #[doc = include_str!("../../../book/src/words.md")]
    mod words {}
    #[doc = include_str!("../../../book/src/orientations.md")]
    mod orientations {}
    #[doc = include_str!("../../../book/src/deciding.md")]
    mod deciding {}
    #[doc = include_str!("../../../book/src/mu_line.md")]
    mod mu_line {}
}
