//! Summary counts for a bank.

use std::collections::BTreeMap;
use std::fmt;

use crate::media::embedded_media_bytes;
use crate::model::{Entry, QuestionBank, QuestionKind};
use crate::xml::question_texts;

/// Per-question embedded media size above which a warning is raised.
pub const DEFAULT_MEDIA_LIMIT: usize = 10 * 1024 * 1024;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BankStats {
    pub questions: usize,
    pub per_kind: BTreeMap<QuestionKind, usize>,
    /// Categories in first-appearance order; questions before any marker
    /// are counted under the empty path.
    pub per_category: Vec<(String, usize)>,
    pub media_bytes: usize,
    pub warnings: Vec<String>,
}

pub fn bank_stats(bank: &QuestionBank, media_limit: usize) -> BankStats {
    let mut per_kind: BTreeMap<QuestionKind, usize> =
        QuestionKind::ALL.iter().map(|k| (*k, 0)).collect();
    let mut per_category: Vec<(String, usize)> = Vec::new();
    let mut current = String::new();
    let mut media_bytes = 0;
    let mut warnings: Vec<String> = bank.warnings().to_vec();
    let mut ordinal = 0;

    for entry in bank.entries() {
        match entry {
            Entry::Category(path) => current = path.as_str().to_owned(),
            Entry::Question(q) => {
                ordinal += 1;
                *per_kind.entry(q.kind()).or_default() += 1;
                match per_category.iter_mut().find(|(c, _)| *c == current) {
                    Some((_, n)) => *n += 1,
                    None => per_category.push((current.clone(), 1)),
                }
                let bytes: usize = question_texts(q).into_iter().map(embedded_media_bytes).sum();
                if bytes > media_limit {
                    warnings.push(format!(
                        "question {} embeds {bytes} bytes of media, above the {media_limit}-byte limit",
                        q.display_name(ordinal)
                    ));
                }
                media_bytes += bytes;
            }
        }
    }

    BankStats {
        questions: ordinal,
        per_kind,
        per_category,
        media_bytes,
        warnings,
    }
}

impl fmt::Display for BankStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "questions: {}", self.questions)?;
        for (kind, n) in &self.per_kind {
            writeln!(f, "  {}: {n}", kind.xml_type())?;
        }
        writeln!(f, "categories:")?;
        for (cat, n) in &self.per_category {
            let label = if cat.is_empty() { "(default)" } else { cat };
            writeln!(f, "  {label}: {n}")?;
        }
        writeln!(f, "media bytes: {}", self.media_bytes)?;
        writeln!(f, "warnings: {}", self.warnings.len())
    }
}
