//! Question types and the [`QuestionBank`] that collects them.

use std::collections::HashSet;
use std::path::{Path, PathBuf};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{QuizError, Result};
use crate::render::{normalized, IntoNumericAnswers, IntoTextAnswers, Render};

/// Environment variable holding the output path override for authoring scripts.
pub const OUT_ENV: &str = "QUIZGEN_OUT";
/// Environment variable holding the default RNG seed.
pub const SEED_ENV: &str = "QUIZGEN_SEED";

pub const DEFAULT_TOLERANCE: f64 = 0.01;

/// Rounds a grade fraction to the 5-decimal grid accepted by the LMS.
pub fn round_fraction(value: f64) -> f64 {
    let rounded = (value * 1e5).round() / 1e5;
    if rounded == 0.0 {
        0.0
    } else {
        rounded
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum QuestionKind {
    ShortAnswer,
    Numerical,
    MultipleChoice,
    Matching,
}

impl QuestionKind {
    pub const ALL: [QuestionKind; 4] = [
        QuestionKind::ShortAnswer,
        QuestionKind::Numerical,
        QuestionKind::MultipleChoice,
        QuestionKind::Matching,
    ];

    /// The `type` attribute value used in Moodle XML.
    pub fn xml_type(self) -> &'static str {
        match self {
            QuestionKind::ShortAnswer => "shortanswer",
            QuestionKind::Numerical => "numerical",
            QuestionKind::MultipleChoice => "multichoice",
            QuestionKind::Matching => "matching",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Choice {
    pub text: String,
    /// Percentage credit in [-100, 100].
    pub fraction: f64,
}

impl Choice {
    pub fn is_correct(&self) -> bool {
        self.fraction == 100.0
    }
}

/// Single-answer multiple-choice payload.
#[derive(Debug, Clone, PartialEq)]
pub struct ChoiceSet {
    pub choices: Vec<Choice>,
}

impl ChoiceSet {
    pub fn single_answer(&self) -> bool {
        true
    }

    pub fn correct(&self) -> Option<&Choice> {
        self.choices.iter().find(|c| c.is_correct())
    }

    pub fn wrong(&self) -> impl Iterator<Item = &Choice> {
        self.choices.iter().filter(|c| !c.is_correct())
    }

    fn validate(&self) -> Result<()> {
        if self.choices.len() < 2 {
            return Err(QuizError::validation(format!(
                "multiple-choice question needs at least 2 choices, got {}",
                self.choices.len()
            )));
        }
        let correct = self.choices.iter().filter(|c| c.is_correct()).count();
        if correct != 1 {
            return Err(QuizError::validation(format!(
                "multiple-choice question needs exactly one +100 choice, got {correct}"
            )));
        }
        for choice in &self.choices {
            if !(-100.0..=100.0).contains(&choice.fraction) {
                return Err(QuizError::validation(format!(
                    "choice fraction {} outside [-100, 100]",
                    choice.fraction
                )));
            }
        }
        if let Some(dup) = first_duplicate(self.choices.iter().map(|c| c.text.as_str())) {
            return Err(QuizError::validation(format!("duplicated choice {dup:?}")));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NumericalAnswerSet {
    pub answers: Vec<f64>,
    /// Absolute tolerance applied to every accepted answer.
    pub tolerance: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ShortAnswerSet {
    pub answers: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MatchPair {
    pub prompt: String,
    pub answer: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct MatchPairList {
    pub pairs: Vec<MatchPair>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum QuestionBody {
    ShortAnswer(ShortAnswerSet),
    Numerical(NumericalAnswerSet),
    MultipleChoice(ChoiceSet),
    Matching(MatchPairList),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Question {
    pub name: String,
    /// HTML, possibly with LaTeX between `\(` `\)` or `$$`.
    pub stem: String,
    pub body: QuestionBody,
}

impl Question {
    pub fn kind(&self) -> QuestionKind {
        match self.body {
            QuestionBody::ShortAnswer(_) => QuestionKind::ShortAnswer,
            QuestionBody::Numerical(_) => QuestionKind::Numerical,
            QuestionBody::MultipleChoice(_) => QuestionKind::MultipleChoice,
            QuestionBody::Matching(_) => QuestionKind::Matching,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.stem.trim().is_empty() {
            return Err(QuizError::validation("question text is empty"));
        }
        match &self.body {
            QuestionBody::ShortAnswer(set) => {
                if set.answers.is_empty() {
                    return Err(QuizError::validation("short-answer question has no answers"));
                }
                if let Some(dup) = first_duplicate(set.answers.iter().map(String::as_str)) {
                    return Err(QuizError::validation(format!("duplicated answer {dup:?}")));
                }
            }
            QuestionBody::Numerical(set) => {
                if set.answers.is_empty() {
                    return Err(QuizError::validation("numerical question has no answers"));
                }
                if let Some(bad) = set.answers.iter().find(|a| !a.is_finite()) {
                    return Err(QuizError::validation(format!("non-finite answer {bad}")));
                }
                if !(set.tolerance >= 0.0 && set.tolerance.is_finite()) {
                    return Err(QuizError::validation(format!(
                        "tolerance must be a finite non-negative number, got {}",
                        set.tolerance
                    )));
                }
            }
            QuestionBody::MultipleChoice(set) => set.validate()?,
            QuestionBody::Matching(list) => {
                if list.pairs.len() < 2 {
                    return Err(QuizError::validation(format!(
                        "matching question needs at least 2 pairs, got {}",
                        list.pairs.len()
                    )));
                }
                if let Some(dup) = first_duplicate(list.pairs.iter().map(|p| p.prompt.as_str())) {
                    return Err(QuizError::validation(format!("duplicated prompt {dup:?}")));
                }
            }
        }
        Ok(())
    }

    /// Display name, falling back to `Q<ordinal>` (1-based) when empty.
    pub fn display_name(&self, ordinal: usize) -> String {
        if self.name.trim().is_empty() {
            format!("Q{ordinal}")
        } else {
            self.name.clone()
        }
    }
}

/// Returns the first text whose normalized form repeats an earlier one.
pub(crate) fn first_duplicate<'a>(texts: impl IntoIterator<Item = &'a str>) -> Option<&'a str> {
    let mut seen = HashSet::new();
    texts.into_iter().find(|t| !seen.insert(normalized(t)))
}

/// Validated slash-separated category path. Empty means the LMS default.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct CategoryPath(String);

impl CategoryPath {
    pub fn new(path: &str) -> Result<Self> {
        if !path.is_empty() && path.split('/').any(|seg| seg.trim().is_empty()) {
            return Err(QuizError::validation(format!(
                "category path {path:?} contains an empty segment"
            )));
        }
        Ok(CategoryPath(path.to_owned()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn is_default(&self) -> bool {
        self.0.is_empty()
    }
}

/// A bank element in serialization order.
#[derive(Debug, Clone, PartialEq)]
pub enum Entry {
    Category(CategoryPath),
    Question(Question),
}

/// How wrong choices are graded when a multiple-choice question is added.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub enum WrongFractionRule {
    /// -100/(k-1) for k choices, so random guessing scores zero on average.
    #[default]
    Reciprocal,
    Fixed(f64),
}

impl WrongFractionRule {
    pub fn fraction(self, choice_count: usize) -> f64 {
        match self {
            WrongFractionRule::Reciprocal => {
                let others = choice_count.saturating_sub(1).max(1) as f64;
                round_fraction(-100.0 / others)
            }
            WrongFractionRule::Fixed(f) => round_fraction(f),
        }
    }
}

/// An ordered, categorized collection of questions, written to Moodle XML on
/// [`close`](QuestionBank::close).
///
/// A bank is single-writer. Clone it to get an immutable snapshot for
/// concurrent readers.
#[derive(Debug, Clone)]
pub struct QuestionBank {
    output_path: PathBuf,
    category: CategoryPath,
    entries: Vec<Entry>,
    wrong_fraction_rule: WrongFractionRule,
    seed: Option<u64>,
    rng: ChaCha8Rng,
    warnings: Vec<String>,
    echo_warnings: bool,
    closed: bool,
}

impl QuestionBank {
    /// Creates an empty bank. Without a seed the RNG is seeded from system
    /// entropy. The output path is only checked when the bank is closed.
    pub fn new(output_path: impl Into<PathBuf>, seed: Option<u64>) -> Self {
        let rng = match seed {
            Some(s) => ChaCha8Rng::seed_from_u64(s),
            None => ChaCha8Rng::from_entropy(),
        };
        QuestionBank {
            output_path: output_path.into(),
            category: CategoryPath::default(),
            entries: Vec::new(),
            wrong_fraction_rule: WrongFractionRule::default(),
            seed,
            rng,
            warnings: Vec::new(),
            echo_warnings: true,
            closed: false,
        }
    }

    /// Like [`new`](Self::new), but `QUIZGEN_OUT` overrides the output path
    /// and `QUIZGEN_SEED` supplies the seed. This is what `quizgen build`
    /// injects into authoring scripts.
    pub fn from_env(default_path: impl Into<PathBuf>) -> Result<Self> {
        let path = std::env::var_os(OUT_ENV)
            .filter(|v| !v.is_empty())
            .map(PathBuf::from)
            .unwrap_or_else(|| default_path.into());
        let seed = match std::env::var(SEED_ENV) {
            Ok(v) if !v.trim().is_empty() => Some(v.trim().parse::<u64>().map_err(|_| {
                QuizError::Config(format!("{SEED_ENV}={v:?} is not an unsigned integer"))
            })?),
            _ => None,
        };
        Ok(Self::new(path, seed))
    }

    pub fn output_path(&self) -> &Path {
        &self.output_path
    }

    pub fn set_output_path(&mut self, path: impl Into<PathBuf>) {
        self.output_path = path.into();
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    /// The bank's RNG. Scripts that draw their own random parameters from it
    /// stay reproducible under a fixed seed.
    pub fn rng(&mut self) -> &mut ChaCha8Rng {
        &mut self.rng
    }

    pub fn category(&self) -> &str {
        self.category.as_str()
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    pub(crate) fn entries_mut(&mut self) -> &mut Vec<Entry> {
        &mut self.entries
    }

    pub fn questions(&self) -> impl Iterator<Item = &Question> {
        self.entries.iter().filter_map(|e| match e {
            Entry::Question(q) => Some(q),
            Entry::Category(_) => None,
        })
    }

    pub(crate) fn questions_mut(&mut self) -> impl Iterator<Item = &mut Question> {
        self.entries.iter_mut().filter_map(|e| match e {
            Entry::Question(q) => Some(q),
            Entry::Category(_) => None,
        })
    }

    pub fn len(&self) -> usize {
        self.questions().count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn wrong_fraction_rule(&self) -> WrongFractionRule {
        self.wrong_fraction_rule
    }

    pub fn set_wrong_fraction_rule(&mut self, rule: WrongFractionRule) {
        self.wrong_fraction_rule = rule;
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    /// Controls whether warnings are also printed to standard error.
    pub fn set_echo_warnings(&mut self, echo: bool) {
        self.echo_warnings = echo;
    }

    pub(crate) fn warn(&mut self, message: impl Into<String>) {
        let message = message.into();
        if self.echo_warnings {
            eprintln!("WARN: {message}");
        }
        self.warnings.push(message);
    }

    pub(crate) fn ensure_open(&self) -> Result<()> {
        if self.closed {
            Err(QuizError::Closed)
        } else {
            Ok(())
        }
    }

    /// Starts a new category; questions added afterwards belong to it.
    pub fn set_category(&mut self, path: &str) -> Result<()> {
        self.ensure_open()?;
        let path = CategoryPath::new(path)?;
        self.category = path.clone();
        self.entries.push(Entry::Category(path));
        Ok(())
    }

    pub(crate) fn push_category_unchecked(&mut self, path: CategoryPath) {
        self.category = path.clone();
        self.entries.push(Entry::Category(path));
    }

    /// Appends a prebuilt question after validating it.
    pub fn push_question(&mut self, question: Question) -> Result<()> {
        self.ensure_open()?;
        question.validate()?;
        self.entries.push(Entry::Question(question));
        Ok(())
    }

    pub fn add_short_answer(
        &mut self,
        name: &str,
        question: &str,
        answers: impl IntoTextAnswers,
    ) -> Result<()> {
        self.push_question(Question {
            name: name.to_owned(),
            stem: question.to_owned(),
            body: QuestionBody::ShortAnswer(ShortAnswerSet {
                answers: answers.into_text_answers(),
            }),
        })
    }

    /// Adds a numerical question with the default tolerance of 0.01.
    pub fn add_numerical(
        &mut self,
        name: &str,
        question: &str,
        answers: impl IntoNumericAnswers,
    ) -> Result<()> {
        self.add_numerical_with_tolerance(name, question, answers, DEFAULT_TOLERANCE)
    }

    pub fn add_numerical_with_tolerance(
        &mut self,
        name: &str,
        question: &str,
        answers: impl IntoNumericAnswers,
        tolerance: f64,
    ) -> Result<()> {
        self.push_question(Question {
            name: name.to_owned(),
            stem: question.to_owned(),
            body: QuestionBody::Numerical(NumericalAnswerSet {
                answers: answers.into_numeric_answers(),
                tolerance,
            }),
        })
    }

    /// Adds a single-answer multiple-choice question. The first choice is the
    /// correct one.
    ///
    /// Duplicated choice texts do not raise an error: a warning is recorded,
    /// nothing is added and `Ok(false)` is returned.
    pub fn add_multiple_choice<T: Render>(
        &mut self,
        name: &str,
        question: &str,
        choices: impl IntoIterator<Item = T>,
    ) -> Result<bool> {
        self.ensure_open()?;
        let texts: Vec<String> = choices.into_iter().map(|c| c.render()).collect();
        if let Some(dup) = first_duplicate(texts.iter().map(String::as_str)) {
            let dup = dup.to_owned();
            self.warn(format!(
                "duplicated choice {dup:?} in {question:?}; question not added"
            ));
            return Ok(false);
        }
        let question = self.build_multiple_choice(name, question, texts);
        self.push_question(question)?;
        Ok(true)
    }

    pub(crate) fn build_multiple_choice(
        &self,
        name: &str,
        stem: &str,
        texts: Vec<String>,
    ) -> Question {
        let wrong = self.wrong_fraction_rule.fraction(texts.len());
        let choices = texts
            .into_iter()
            .enumerate()
            .map(|(i, text)| Choice {
                text,
                fraction: if i == 0 { 100.0 } else { wrong },
            })
            .collect();
        Question {
            name: name.to_owned(),
            stem: stem.to_owned(),
            body: QuestionBody::MultipleChoice(ChoiceSet { choices }),
        }
    }

    /// Adds a matching question; pairs keep their order and the LMS shuffles.
    pub fn add_matching<P: Render, M: Render>(
        &mut self,
        name: &str,
        question: &str,
        pairs: impl IntoIterator<Item = (P, M)>,
    ) -> Result<()> {
        let pairs = pairs
            .into_iter()
            .map(|(p, m)| MatchPair {
                prompt: p.render(),
                answer: m.render(),
            })
            .collect();
        self.push_question(Question {
            name: name.to_owned(),
            stem: question.to_owned(),
            body: QuestionBody::Matching(MatchPairList { pairs }),
        })
    }

    /// Writes the bank to its output path and freezes it. A second call only
    /// warns. An empty bank still produces a valid document.
    pub fn close(&mut self) -> Result<()> {
        if self.closed {
            self.warn("bank already closed; nothing written");
            return Ok(());
        }
        if self.is_empty() {
            self.warn(format!(
                "bank {} has no questions; writing an empty document",
                self.output_path.display()
            ));
        }
        let bytes = crate::xml::serialize_bank(self)?;
        crate::atomic::write(&self.output_path, &bytes)?;
        self.closed = true;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    fn bank() -> QuestionBank {
        let mut b = QuestionBank::new("out.xml", Some(1));
        b.set_echo_warnings(false);
        b
    }

    #[test]
    fn new_bank_is_empty() {
        let b = QuestionBank::new("out.xml", None);
        assert_eq!(b.len(), 0);
        assert_eq!(b.category(), "");
        assert_eq!(b.wrong_fraction_rule(), WrongFractionRule::Reciprocal);
    }

    #[test]
    fn seeded_banks_draw_identically() {
        let mut a = QuestionBank::new("out.xml", Some(42));
        let mut b = QuestionBank::new("out.xml", Some(42));
        let xs: Vec<u32> = (0..16).map(|_| a.rng().gen()).collect();
        let ys: Vec<u32> = (0..16).map(|_| b.rng().gen()).collect();
        assert_eq!(xs, ys);
    }

    #[test]
    fn categories() {
        let mut b = bank();
        b.set_category("Calculus/Derivatives").unwrap();
        assert_eq!(b.category(), "Calculus/Derivatives");
        b.set_category("").unwrap();
        assert_eq!(b.category(), "");
        assert!(matches!(b.set_category("A//B"), Err(QuizError::Validation(_))));
        assert!(b.set_category("/A").is_err());
        assert!(b.set_category("A/").is_err());
        assert_eq!(b.entries().len(), 2);
    }

    #[test]
    fn short_answer() {
        let mut b = bank();
        b.add_short_answer("", "Capital of France?", "Paris").unwrap();
        let primes: Vec<u32> = (100..1000)
            .filter(|n| (2..*n).take_while(|d| d * d <= *n).all(|d| n % d != 0))
            .collect();
        b.add_short_answer("", "Enter a 3-digit prime number:", primes.clone())
            .unwrap();
        assert_eq!(b.len(), 2);
        match &b.questions().nth(1).unwrap().body {
            QuestionBody::ShortAnswer(s) => assert_eq!(s.answers.len(), primes.len()),
            other => panic!("unexpected body {other:?}"),
        }
        assert!(b.add_short_answer("", "x", vec!["a", "a"]).is_err());
        assert!(b.add_short_answer("", "x", Vec::<String>::new()).is_err());
        assert_eq!(b.len(), 2);
    }

    #[test]
    fn numerical_quadratic_roots() {
        // 2x^2 + 4x - 30 = 0
        let (a, bq, c) = (2.0f64, 4.0f64, -30.0f64);
        let disc = (bq * bq - 4.0 * a * c).sqrt();
        let roots = [(-bq + disc) / (2.0 * a), (-bq - disc) / (2.0 * a)];
        for r in roots {
            assert!((a * r * r + bq * r + c).abs() < 1e-12);
        }
        assert_eq!(roots, [3.0, -5.0]);

        let mut b = bank();
        b.add_numerical("", r"Solve \(2x^2+4x-30=0\)", roots).unwrap();
        b.add_numerical("", "Compute 0+0", 0).unwrap();
        let qs: Vec<_> = b.questions().collect();
        match &qs[0].body {
            QuestionBody::Numerical(n) => {
                assert_eq!(n.answers, vec![3.0, -5.0]);
                assert_eq!(n.tolerance, 0.01);
            }
            other => panic!("unexpected body {other:?}"),
        }
        assert!(b
            .add_numerical_with_tolerance("", "x", 1.0, -1.0)
            .is_err());
        assert!(b.add_numerical("", "x", f64::NAN).is_err());
        assert!(b.add_numerical("", "x", vec![f64::INFINITY]).is_err());
        assert_eq!(b.len(), 2);
    }

    #[test]
    fn multiple_choice_fractions() {
        let mut b = bank();
        assert!(b
            .add_multiple_choice("", r"Select a solution for \(2x^2+4x-30=0\)", [3, 2, 4, 5])
            .unwrap());
        b.add_multiple_choice("", "two", ["yes", "no"]).unwrap();
        b.add_multiple_choice("", "three", ["a", "b", "c"]).unwrap();
        let fr: Vec<Vec<f64>> = b
            .questions()
            .map(|q| match &q.body {
                QuestionBody::MultipleChoice(s) => s.choices.iter().map(|c| c.fraction).collect(),
                _ => unreachable!(),
            })
            .collect();
        assert_eq!(fr[0], vec![100.0, -33.33333, -33.33333, -33.33333]);
        assert_eq!(fr[1], vec![100.0, -100.0]);
        assert_eq!(fr[2], vec![100.0, -50.0, -50.0]);
        match &b.questions().next().unwrap().body {
            QuestionBody::MultipleChoice(s) => assert_eq!(s.choices[0].text, "3"),
            _ => unreachable!(),
        };
    }

    #[test]
    fn duplicate_choices_warn_and_skip() {
        let mut b = bank();
        assert!(!b.add_multiple_choice("", "q", ["a", "a", "b", "c"]).unwrap());
        assert!(!b.add_multiple_choice("", "q", ["a", " a ", "b"]).unwrap());
        assert!(b.is_empty());
        assert_eq!(b.warnings().len(), 2);
        assert!(b.add_multiple_choice("", "q", ["only"]).is_err());
    }

    #[test]
    fn matching() {
        let mut b = bank();
        let pairs = [
            ("Flux", "W"),
            ("Intensity", "W/sr"),
            ("Irradiance", "W/m^2"),
            ("Radiance", "W/(sr*m^2)"),
        ];
        b.add_matching("", "Match magnitudes with units:", pairs).unwrap();
        match &b.questions().next().unwrap().body {
            QuestionBody::Matching(m) => {
                assert_eq!(m.pairs.len(), 4);
                assert_eq!(m.pairs[3].prompt, "Radiance");
            }
            _ => unreachable!(),
        }
        assert!(b.add_matching("", "q", [("a", "1")]).is_err());
        assert!(b.add_matching("", "q", [("a", "1"), ("a", "2")]).is_err());
        b.add_matching("", "q", [("a", "1"), ("b", "1")]).unwrap();
        assert_eq!(b.len(), 2);
    }

    #[test]
    fn empty_stem_rejected() {
        let mut b = bank();
        assert!(b.add_short_answer("", "  ", "x").is_err());
    }

    #[test]
    fn display_name_falls_back_to_ordinal() {
        let mut b = bank();
        b.add_short_answer("", "q", "a").unwrap();
        b.add_short_answer("Named", "q", "a").unwrap();
        let qs: Vec<_> = b.questions().collect();
        assert_eq!(qs[0].display_name(1), "Q1");
        assert_eq!(qs[1].display_name(2), "Named");
    }

    #[test]
    fn wrong_fraction_rule_override() {
        let mut b = bank();
        b.set_wrong_fraction_rule(WrongFractionRule::Fixed(0.0));
        b.add_multiple_choice("", "q", ["a", "b", "c", "d"]).unwrap();
        match &b.questions().next().unwrap().body {
            QuestionBody::MultipleChoice(s) => {
                assert!(s.wrong().all(|c| c.fraction == 0.0));
            }
            _ => unreachable!(),
        };
    }
}
