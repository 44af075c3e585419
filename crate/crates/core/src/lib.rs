//! Script-driven generation of quiz question banks.
//!
//! Build a [`QuestionBank`], add single questions or let the generators
//! produce randomized variants from lists, key–answer pairs or token lists,
//! then [`close`](QuestionBank::close) it to write Moodle XML. Banks can be
//! previewed as a standalone HTML page and edited in bulk.

mod atomic;
pub mod error;
pub mod generators;
pub mod maintenance;
pub mod media;
pub mod model;
pub mod preview;
pub mod render;
pub mod stats;
pub mod xml;

pub use error::{QuizError, Result};
pub use generators::{
    blank_out, blank_out_html, count_distinct, count_unique, sample_distractors, ListPool,
    PairPool, TokenPool, BLANK_HTML, BLANK_TEXT, NO_DISTRACTORS,
};
pub use media::MediaAsset;
pub use model::{
    CategoryPath, Choice, ChoiceSet, Entry, MatchPair, MatchPairList, NumericalAnswerSet,
    Question, QuestionBank, QuestionBody, QuestionKind, ShortAnswerSet, WrongFractionRule,
};
pub use render::Render;

/// Writes `bytes` to `path` through a temporary file in the same directory.
pub fn write_atomic(path: &std::path::Path, bytes: &[u8]) -> Result<()> {
    atomic::write(path, bytes)
}
