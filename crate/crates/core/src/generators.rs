//! Random multiple-choice generation from answer/distractor lists,
//! key–answer pairs, and token lists over a source text.
//!
//! Every generated question has one correct choice and three distractors.
//! Correct answers are consumed from a seeded shuffle, so the first `c`
//! questions of a call have pairwise different correct answers. Past `c`
//! the order repeats round-robin and distractor subsets are resampled until
//! the question differs from every question already emitted by the call.

use std::collections::HashSet;

use rand::seq::{index, SliceRandom};
use rand::Rng;

use crate::error::{QuizError, Result};
use crate::model::QuestionBank;
use crate::render::{escape_html, normalized, Render};

/// Distractors shown per generated question.
pub const DISTRACTORS_PER_QUESTION: usize = 3;

/// Resample attempts before falling back to enumeration.
pub const MAX_ATTEMPTS: usize = 100;

/// Blank marker for plain-text contexts.
pub const BLANK_TEXT: &str = "________";

/// Blank marker for HTML contexts.
pub const BLANK_HTML: &str =
    "<span class=\"quizgen-blank\" style=\"text-decoration: underline;\">________</span>";

/// Placeholder replaced by the key or the blanked text.
pub const PLACEHOLDER: &str = "%s";

/// Empty extra-distractor list.
pub const NO_DISTRACTORS: [&str; 0] = [];

/// Number of questions with pairwise different correct answers that `c`
/// correct items can produce.
pub fn count_unique(c: usize) -> usize {
    c
}

/// Number of pairwise distinct questions from `c` correct items and `d`
/// distractors: `c * C(d, 3)`.
pub fn count_distinct(c: usize, d: usize) -> Result<u64> {
    if d < DISTRACTORS_PER_QUESTION {
        return Err(QuizError::validation(format!(
            "need at least {DISTRACTORS_PER_QUESTION} distractors, got {d}"
        )));
    }
    Ok((c as u64).saturating_mul(binomial(d as u64, DISTRACTORS_PER_QUESTION as u64)))
}

/// `C(n, k)`, saturating at `u64::MAX`.
pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * u128::from(n - i) / u128::from(i + 1);
        if acc > u128::from(u64::MAX) {
            return u64::MAX;
        }
    }
    acc as u64
}

/// Renders and collapses items that compare equal after trimming, keeping
/// the first occurrence.
fn dedup_rendered<T: Render>(items: impl IntoIterator<Item = T>) -> Vec<String> {
    let mut seen = HashSet::new();
    items
        .into_iter()
        .map(|i| i.render())
        .filter(|s| seen.insert(normalized(s).to_owned()))
        .collect()
}

/// Draws `k` distinct items uniformly over the valid `k`-subsets of `pool`.
///
/// Items are compared by trimmed rendered text; repeats collapse to one
/// candidate and anything matching `exclude` is never drawn.
pub fn sample_distractors<T: Render, R: Rng + ?Sized>(
    pool: &[T],
    k: usize,
    exclude: &[&str],
    rng: &mut R,
) -> Result<Vec<String>> {
    let excluded: HashSet<&str> = exclude.iter().map(|s| normalized(s)).collect();
    let candidates: Vec<String> = dedup_rendered(pool.iter())
        .into_iter()
        .filter(|s| !excluded.contains(normalized(s)))
        .collect();
    draw(&candidates, k, rng)
}

fn draw<R: Rng + ?Sized>(candidates: &[String], k: usize, rng: &mut R) -> Result<Vec<String>> {
    if candidates.len() < k {
        return Err(QuizError::Sampling {
            needed: k,
            available: candidates.len(),
        });
    }
    Ok(index::sample(rng, candidates.len(), k)
        .into_iter()
        .map(|i| candidates[i].clone())
        .collect())
}

/// One correct answer together with the distractors it may be paired with.
#[derive(Debug, Clone, PartialEq)]
struct Slot {
    stem: String,
    correct: String,
    /// Deduplicated, never contains `correct`.
    pool: Vec<String>,
}

impl Slot {
    fn capacity(&self) -> u64 {
        binomial(self.pool.len() as u64, DISTRACTORS_PER_QUESTION as u64)
    }
}

/// Correct-answer list and distractor list.
#[derive(Debug, Clone, PartialEq)]
pub struct ListPool {
    correct: Vec<String>,
    distractors: Vec<String>,
}

impl ListPool {
    pub fn new<C: Render, D: Render>(
        correct: impl IntoIterator<Item = C>,
        distractors: impl IntoIterator<Item = D>,
    ) -> Result<Self> {
        let correct = dedup_rendered(correct);
        let distractors = dedup_rendered(distractors);
        if correct.is_empty() {
            return Err(QuizError::validation("correct-answer list is empty"));
        }
        if distractors.len() < DISTRACTORS_PER_QUESTION {
            return Err(QuizError::validation(format!(
                "need at least {DISTRACTORS_PER_QUESTION} distinct distractors, got {}",
                distractors.len()
            )));
        }
        let correct_set: HashSet<&str> = correct.iter().map(|s| normalized(s)).collect();
        if let Some(both) = distractors.iter().find(|d| correct_set.contains(normalized(d))) {
            return Err(QuizError::validation(format!(
                "{both:?} appears in both the correct and the distractor list"
            )));
        }
        Ok(ListPool {
            correct,
            distractors,
        })
    }

    pub fn correct(&self) -> &[String] {
        &self.correct
    }

    pub fn distractors(&self) -> &[String] {
        &self.distractors
    }

    pub fn unique_count(&self) -> usize {
        count_unique(self.correct.len())
    }

    pub fn distinct_count(&self) -> u64 {
        count_distinct(self.correct.len(), self.distractors.len()).unwrap_or(0)
    }

    fn slots(&self, stem: &str) -> Vec<Slot> {
        self.correct
            .iter()
            .map(|c| Slot {
                stem: stem.to_owned(),
                correct: c.clone(),
                pool: self.distractors.clone(),
            })
            .collect()
    }
}

/// Key–answer pairs plus additional distractors.
#[derive(Debug, Clone, PartialEq)]
pub struct PairPool {
    pairs: Vec<(String, String)>,
    extra_distractors: Vec<String>,
}

impl PairPool {
    pub fn new<K: Render, A: Render, D: Render>(
        pairs: impl IntoIterator<Item = (K, A)>,
        extra_distractors: impl IntoIterator<Item = D>,
    ) -> Result<Self> {
        let pairs: Vec<(String, String)> = pairs
            .into_iter()
            .map(|(k, a)| (k.render(), a.render()))
            .collect();
        if pairs.is_empty() {
            return Err(QuizError::validation("key-answer pair list is empty"));
        }
        Ok(PairPool {
            pairs,
            extra_distractors: extra_distractors.into_iter().map(|d| d.render()).collect(),
        })
    }

    pub fn pairs(&self) -> &[(String, String)] {
        &self.pairs
    }

    /// Distractor pool for pair `index`: the other answers and the extra
    /// distractors, minus anything string-equal to the pair's own answer.
    pub fn distractors_for(&self, index: usize) -> Vec<String> {
        let answer = normalized(&self.pairs[index].1);
        let others = self
            .pairs
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != index)
            .map(|(_, (_, a))| a.as_str());
        dedup_rendered(others.chain(self.extra_distractors.iter().map(String::as_str)))
            .into_iter()
            .filter(|d| normalized(d) != answer)
            .collect()
    }
}

/// Source text, tokens to blank out, and additional distractors.
#[derive(Debug, Clone, PartialEq)]
pub struct TokenPool {
    source: String,
    tokens: Vec<String>,
    extra_distractors: Vec<String>,
}

impl TokenPool {
    pub fn new<T: Render, D: Render>(
        source: &str,
        tokens: impl IntoIterator<Item = T>,
        extra_distractors: impl IntoIterator<Item = D>,
    ) -> Result<Self> {
        let tokens = dedup_rendered(tokens);
        if tokens.is_empty() {
            return Err(QuizError::validation("token list is empty"));
        }
        for token in &tokens {
            if token.is_empty() || !source.contains(token.as_str()) {
                return Err(QuizError::validation(format!(
                    "token {token:?} does not occur in the source text"
                )));
            }
        }
        Ok(TokenPool {
            source: source.to_owned(),
            tokens,
            extra_distractors: extra_distractors.into_iter().map(|d| d.render()).collect(),
        })
    }

    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }

    pub fn distractors_for(&self, index: usize) -> Vec<String> {
        let token = normalized(&self.tokens[index]);
        let others = self
            .tokens
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != index)
            .map(|(_, t)| t.as_str());
        dedup_rendered(others.chain(self.extra_distractors.iter().map(String::as_str)))
            .into_iter()
            .filter(|d| normalized(d) != token)
            .collect()
    }
}

/// Replaces every occurrence of `token` in `text` with `marker`, returning
/// the new text and the number of blanks.
pub fn blank_out(text: &str, token: &str, marker: &str) -> (String, usize) {
    if token.is_empty() {
        return (text.to_owned(), 0);
    }
    (text.replace(token, marker), text.matches(token).count())
}

/// HTML form of [`blank_out`]: the text is escaped and each occurrence of
/// `token` becomes [`BLANK_HTML`].
pub fn blank_out_html(text: &str, token: &str) -> (String, usize) {
    let segments: Vec<String> = text.split(token).map(escape_html).collect();
    let blanks = segments.len() - 1;
    (segments.join(BLANK_HTML), blanks)
}

fn check_pattern(pattern: &str) -> Result<()> {
    match pattern.matches(PLACEHOLDER).count() {
        1 => Ok(()),
        0 => Err(QuizError::validation(format!(
            "question pattern {pattern:?} lacks the {PLACEHOLDER} placeholder"
        ))),
        n => Err(QuizError::validation(format!(
            "question pattern {pattern:?} has {n} {PLACEHOLDER} placeholders, expected 1"
        ))),
    }
}

type QuestionKey = (String, String, Vec<String>);

fn question_key(slot: &Slot, distractors: &[String]) -> QuestionKey {
    let mut set: Vec<String> = distractors.iter().map(|d| normalized(d).to_owned()).collect();
    set.sort();
    (slot.stem.clone(), normalized(&slot.correct).to_owned(), set)
}

/// Picks uniformly among the 3-subsets of the slot pool not yet emitted.
fn unused_subset<R: Rng + ?Sized>(
    slot: &Slot,
    emitted: &HashSet<QuestionKey>,
    rng: &mut R,
) -> Option<Vec<String>> {
    let n = slot.pool.len();
    let mut unused = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                let subset = vec![
                    slot.pool[a].clone(),
                    slot.pool[b].clone(),
                    slot.pool[c].clone(),
                ];
                if !emitted.contains(&question_key(slot, &subset)) {
                    unused.push(subset);
                }
            }
        }
    }
    if unused.is_empty() {
        None
    } else {
        let pick = rng.gen_range(0..unused.len());
        Some(unused.swap_remove(pick))
    }
}

impl QuestionBank {
    /// Shared engine behind the three generators.
    fn generate(&mut self, name: &str, slots: Vec<Slot>, requested: Option<usize>) -> Result<usize> {
        self.ensure_open()?;
        let capacity: u64 = slots.iter().map(Slot::capacity).fold(0, u64::saturating_add);
        let target = requested.unwrap_or(slots.len());
        if target as u64 > capacity {
            return Err(QuizError::Capacity {
                requested: target,
                capacity: usize::try_from(capacity).unwrap_or(usize::MAX),
            });
        }

        let mut order: Vec<usize> = (0..slots.len()).collect();
        order.shuffle(self.rng());
        let mut used = vec![0u64; slots.len()];
        let mut emitted: HashSet<QuestionKey> = HashSet::new();
        let mut built = Vec::with_capacity(target);
        let mut cursor = 0;

        while built.len() < target {
            // next slot in shuffled order that still has unused subsets
            let n = order.len();
            let Some(pos) = (0..n)
                .map(|step| (cursor + step) % n)
                .find(|&pos| used[order[pos]] < slots[order[pos]].capacity())
            else {
                self.warn(format!(
                    "only {} of {target} distinct questions could be generated",
                    built.len()
                ));
                break;
            };
            let index = order[pos];
            cursor = (pos + 1) % n;
            let slot = &slots[index];

            let mut chosen = None;
            for _ in 0..MAX_ATTEMPTS {
                let candidate = draw(&slot.pool, DISTRACTORS_PER_QUESTION, self.rng())?;
                if !emitted.contains(&question_key(slot, &candidate)) {
                    chosen = Some(candidate);
                    break;
                }
            }
            if chosen.is_none() {
                chosen = unused_subset(slot, &emitted, self.rng());
            }
            let Some(distractors) = chosen else {
                used[index] = slot.capacity();
                self.warn(format!(
                    "no unused distractor set left for {:?}; question not added",
                    slot.correct
                ));
                continue;
            };

            used[index] += 1;
            emitted.insert(question_key(slot, &distractors));
            let mut texts = Vec::with_capacity(1 + distractors.len());
            texts.push(slot.correct.clone());
            texts.extend(distractors);
            if let Some(dup) = crate::model::first_duplicate(texts.iter().map(String::as_str)) {
                let dup = dup.to_owned();
                self.warn(format!("duplicated choice {dup:?}; question not added"));
                continue;
            }
            built.push(self.build_multiple_choice(name, &slot.stem, texts));
        }

        let added = built.len();
        for question in built {
            self.push_question(question)?;
        }
        Ok(added)
    }

    /// Adds questions made of one item from `correct` and three from
    /// `distractors`, all sharing the stem `question`.
    ///
    /// `num_questions = None` adds one question per correct item. Returns the
    /// number of questions added.
    pub fn add_multiple_choice_from_lists<C: Render, D: Render>(
        &mut self,
        title: &str,
        question: &str,
        correct: impl IntoIterator<Item = C>,
        distractors: impl IntoIterator<Item = D>,
        num_questions: Option<usize>,
    ) -> Result<usize> {
        self.ensure_open()?;
        let pool = ListPool::new(correct, distractors)?;
        self.generate(title, pool.slots(question), num_questions)
    }

    /// Adds questions whose stem is `pattern` with a key substituted for
    /// `%s`, and whose correct choice is the key's answer. Distractors come
    /// from the other answers and `extra_distractors`; none ever equals the
    /// correct answer. Keys left with fewer than three usable distractors are
    /// skipped with a warning.
    pub fn add_multiple_choice_from_pairs<K: Render, A: Render, D: Render>(
        &mut self,
        title: &str,
        pattern: &str,
        pairs: impl IntoIterator<Item = (K, A)>,
        extra_distractors: impl IntoIterator<Item = D>,
        num_questions: Option<usize>,
    ) -> Result<usize> {
        self.ensure_open()?;
        check_pattern(pattern)?;
        let pool = PairPool::new(pairs, extra_distractors)?;
        let mut slots = Vec::new();
        for (i, (key, answer)) in pool.pairs().iter().enumerate() {
            let distractors = pool.distractors_for(i);
            if distractors.len() < DISTRACTORS_PER_QUESTION {
                self.warn(format!(
                    "key {key:?} has only {} usable distractors; skipped",
                    distractors.len()
                ));
                continue;
            }
            slots.push(Slot {
                stem: pattern.replacen(PLACEHOLDER, key, 1),
                correct: answer.clone(),
                pool: distractors,
            });
        }
        if slots.is_empty() {
            return Err(QuizError::validation(
                "every key was skipped for lack of distractors",
            ));
        }
        self.generate(title, slots, num_questions)
    }

    /// Adds fill-in-the-blank questions. For each question one token is
    /// chosen, every occurrence of it in `source` is blanked, and the blanked
    /// (HTML-escaped) source replaces `%s` in `pattern`. Choices are the
    /// token and three of the other tokens or `extra_distractors`.
    pub fn add_complete_code<T: Render, D: Render>(
        &mut self,
        title: &str,
        pattern: &str,
        source: &str,
        tokens: impl IntoIterator<Item = T>,
        extra_distractors: impl IntoIterator<Item = D>,
        num_questions: Option<usize>,
    ) -> Result<usize> {
        self.ensure_open()?;
        check_pattern(pattern)?;
        let pool = TokenPool::new(source, tokens, extra_distractors)?;
        let mut slots = Vec::new();
        for (i, token) in pool.tokens().iter().enumerate() {
            let distractors = pool.distractors_for(i);
            if distractors.len() < DISTRACTORS_PER_QUESTION {
                return Err(QuizError::validation(format!(
                    "token {token:?} has only {} distractors, need {DISTRACTORS_PER_QUESTION}",
                    distractors.len()
                )));
            }
            let (blanked, _) = blank_out_html(source, token);
            slots.push(Slot {
                stem: pattern.replacen(PLACEHOLDER, &blanked, 1),
                correct: escape_html(token),
                pool: distractors.iter().map(|d| escape_html(d)).collect(),
            });
        }
        self.generate(title, slots, num_questions)
    }
}
