//! Bank-wide bulk edits.

use regex::Regex;

use crate::error::{QuizError, Result};
use crate::model::{round_fraction, Question, QuestionBank, QuestionBody};

/// Mutable references to every text field that bulk replacement touches.
/// Numerical answers are not text and are left alone.
fn text_fields(q: &mut Question) -> Vec<&mut String> {
    let mut fields = vec![&mut q.name, &mut q.stem];
    match &mut q.body {
        QuestionBody::MultipleChoice(set) => fields.extend(set.choices.iter_mut().map(|c| &mut c.text)),
        QuestionBody::ShortAnswer(set) => fields.extend(set.answers.iter_mut()),
        QuestionBody::Matching(list) => {
            for pair in &mut list.pairs {
                fields.push(&mut pair.prompt);
                fields.push(&mut pair.answer);
            }
        }
        QuestionBody::Numerical(_) => {}
    }
    fields
}

/// Applies `edit` to every text field and returns the total count it reports.
/// If any edited question stops being valid the bank is left unchanged.
fn edit_texts<F>(bank: &mut QuestionBank, mut edit: F) -> Result<usize>
where
    F: FnMut(&str) -> Option<(String, usize)>,
{
    bank.ensure_open()?;
    let mut changes: Vec<(usize, Question)> = Vec::new();
    let mut total = 0;
    for (index, question) in bank.questions().enumerate() {
        let mut edited = question.clone();
        let mut count = 0;
        for field in text_fields(&mut edited) {
            if let Some((replaced, n)) = edit(field) {
                *field = replaced;
                count += n;
            }
        }
        if count > 0 {
            edited.validate().map_err(|e| {
                QuizError::validation(format!(
                    "replacement would break question {}: {e}",
                    edited.display_name(index + 1)
                ))
            })?;
            total += count;
            changes.push((index, edited));
        }
    }
    let mut changes = changes.into_iter().peekable();
    for (index, question) in bank.questions_mut().enumerate() {
        if changes.peek().is_some_and(|(i, _)| *i == index) {
            *question = changes.next().expect("peeked").1;
        }
    }
    Ok(total)
}

/// Replaces every literal, case-sensitive occurrence of `old` in names,
/// stems, choices, short answers and matching texts. Returns the number of
/// occurrences replaced.
pub fn replace_text(bank: &mut QuestionBank, old: &str, new: &str) -> Result<usize> {
    if old.is_empty() {
        return Err(QuizError::validation("text to replace is empty"));
    }
    edit_texts(bank, |field| {
        let n = field.matches(old).count();
        (n > 0).then(|| (field.replace(old, new), n))
    })
}

/// Regular-expression form of [`replace_text`]; `replacement` may use `$1`
/// style group references.
pub fn replace_pattern(bank: &mut QuestionBank, pattern: &Regex, replacement: &str) -> Result<usize> {
    edit_texts(bank, |field| {
        let n = pattern.find_iter(field).filter(|m| !m.is_empty()).count();
        (n > 0).then(|| (pattern.replace_all(field, replacement).into_owned(), n))
    })
}

/// Sets the grade of every wrong multiple-choice answer to `fraction`
/// (percent, in [-100, 0]). Correct choices keep +100. Returns the number of
/// questions whose fractions changed.
pub fn set_wrong_penalty(bank: &mut QuestionBank, fraction: f64) -> Result<usize> {
    if !(-100.0..=0.0).contains(&fraction) {
        return Err(QuizError::validation(format!(
            "penalty {fraction} is outside [-100, 0]"
        )));
    }
    bank.ensure_open()?;
    let fraction = round_fraction(fraction);
    let mut touched = 0;
    for question in bank.questions_mut() {
        if let QuestionBody::MultipleChoice(set) = &mut question.body {
            let mut changed = false;
            for choice in set.choices.iter_mut().filter(|c| !c.is_correct()) {
                if choice.fraction != fraction {
                    choice.fraction = fraction;
                    changed = true;
                }
            }
            touched += usize::from(changed);
        }
    }
    Ok(touched)
}

impl QuestionBank {
    /// See [`replace_text`].
    pub fn replace_text(&mut self, old: &str, new: &str) -> Result<usize> {
        replace_text(self, old, new)
    }

    /// See [`set_wrong_penalty`].
    pub fn set_wrong_penalty(&mut self, fraction: f64) -> Result<usize> {
        set_wrong_penalty(self, fraction)
    }
}
