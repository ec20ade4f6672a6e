//! Word problems in finitely presented groups.
//!
//! * [`word`]: free-group words.
//! * [`presentation`] and [`tietze`]: presentations, torsion, Tietze moves.
//! * [`spelling`]: Dehn's algorithm for torsion one-relator groups and
//!   surface groups of genus at least 2.
//! * [`magnus`]: the Magnus–Moldavanskii descent.
//! * [`oracle`]: bounded certificate searches that serve as ground truth.
//! * [`format`] and [`query`]: text syntax and the word-problem dispatcher.

pub mod format;
pub mod magnus;
pub mod oracle;
pub mod presentation;
pub mod query;
pub mod spelling;
pub mod tietze;
pub mod word;

pub use format::{format_presentation, parse_presentation, parse_word, ParseError};
pub use oracle::{Budget, Verdict};
pub use presentation::{classify_torsion, surface_presentation, Presentation, TorsionClassification};
pub use query::{wp, Answer, Method, QueryResult};
pub use spelling::{compile_dehn, dehn_reduce, is_trivial, DehnPresentation};
pub use word::{Letter, Word};
