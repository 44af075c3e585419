//! Moodle XML import/export.
//!
//! The writer produces one fixed layout, so any document it emits parses back
//! to the same bank and re-serializes to the same bytes. Text nodes are
//! wrapped in CDATA; fractions are rounded to 5 decimals.

use std::fmt::Write as _;

use roxmltree::{Document, Node};

use crate::error::{QuizError, Result};
use crate::model::{
    round_fraction, CategoryPath, Choice, ChoiceSet, Entry, MatchPair, MatchPairList,
    NumericalAnswerSet, Question, QuestionBank, QuestionBody, ShortAnswerSet,
};
use crate::render::format_number;

/// Prefix Moodle uses for categories in the course context.
pub const COURSE_MARKER: &str = "$course$";

/// Wraps `text` in CDATA. `]]>` is split across two sections and carriage
/// returns leave the section as `&#13;` so XML line-end normalization cannot
/// alter them. Everything else, LaTeX included, passes through untouched.
pub fn escape_for_cdata(text: &str) -> String {
    let mut out = String::with_capacity(text.len() + 12);
    out.push_str("<![CDATA[");
    let mut rest = text;
    while let Some(pos) = rest.find([']', '\r']) {
        let (head, tail) = rest.split_at(pos);
        out.push_str(head);
        if let Some(after) = tail.strip_prefix("]]>") {
            out.push_str("]]]]><![CDATA[>");
            rest = after;
        } else if let Some(after) = tail.strip_prefix('\r') {
            out.push_str("]]>&#13;<![CDATA[");
            rest = after;
        } else {
            out.push(']');
            rest = &tail[1..];
        }
    }
    out.push_str(rest);
    out.push_str("]]>");
    out
}

fn format_fraction(value: f64) -> String {
    format_number(round_fraction(value))
}

fn is_xml_char(c: char) -> bool {
    matches!(c, '\t' | '\n' | '\r' | '\u{20}'..='\u{D7FF}' | '\u{E000}'..='\u{FFFD}' | '\u{10000}'..)
}

fn check_encodable(question: &Question, text: &str) -> Result<()> {
    match text.chars().find(|c| !is_xml_char(*c)) {
        None => Ok(()),
        Some(bad) => Err(QuizError::Encode {
            question: if question.name.is_empty() {
                question.stem.chars().take(40).collect()
            } else {
                question.name.clone()
            },
            reason: format!("character U+{:04X} is not allowed in XML", bad as u32),
        }),
    }
}

fn text_element(out: &mut String, indent: &str, tag: &str, format: Option<&str>, text: &str) {
    let attr = format.map(|f| format!(" format=\"{f}\"")).unwrap_or_default();
    let _ = write!(
        out,
        "{indent}<{tag}{attr}>\n{indent}  <text>{}</text>\n{indent}</{tag}>\n",
        escape_for_cdata(text)
    );
}

fn write_question(out: &mut String, q: &Question) -> Result<()> {
    for text in question_texts(q) {
        check_encodable(q, text)?;
    }
    let _ = writeln!(out, "  <question type=\"{}\">", q.kind().xml_type());
    text_element(out, "    ", "name", None, &q.name);
    text_element(out, "    ", "questiontext", Some("html"), &q.stem);
    out.push_str("    <defaultgrade>1</defaultgrade>\n");
    match &q.body {
        QuestionBody::MultipleChoice(set) => {
            out.push_str("    <single>true</single>\n");
            out.push_str("    <shuffleanswers>true</shuffleanswers>\n");
            out.push_str("    <answernumbering>abc</answernumbering>\n");
            for choice in &set.choices {
                let _ = writeln!(
                    out,
                    "    <answer fraction=\"{}\" format=\"html\">\n      <text>{}</text>\n    </answer>",
                    format_fraction(choice.fraction),
                    escape_for_cdata(&choice.text)
                );
            }
        }
        QuestionBody::Numerical(set) => {
            for answer in &set.answers {
                let _ = writeln!(
                    out,
                    "    <answer fraction=\"100\">\n      <text>{}</text>\n      <tolerance>{}</tolerance>\n    </answer>",
                    format_number(*answer),
                    format_number(set.tolerance)
                );
            }
        }
        QuestionBody::ShortAnswer(set) => {
            out.push_str("    <usecase>0</usecase>\n");
            for answer in &set.answers {
                let _ = writeln!(
                    out,
                    "    <answer fraction=\"100\" format=\"moodle_auto_format\">\n      <text>{}</text>\n    </answer>",
                    escape_for_cdata(answer)
                );
            }
        }
        QuestionBody::Matching(list) => {
            out.push_str("    <shuffleanswers>true</shuffleanswers>\n");
            for pair in &list.pairs {
                let _ = writeln!(
                    out,
                    "    <subquestion format=\"html\">\n      <text>{}</text>\n      <answer>\n        <text>{}</text>\n      </answer>\n    </subquestion>",
                    escape_for_cdata(&pair.prompt),
                    escape_for_cdata(&pair.answer)
                );
            }
        }
    }
    out.push_str("  </question>\n");
    Ok(())
}

/// Every free-text field of a question, in a fixed order.
pub(crate) fn question_texts(q: &Question) -> Vec<&str> {
    let mut texts = vec![q.name.as_str(), q.stem.as_str()];
    match &q.body {
        QuestionBody::MultipleChoice(set) => texts.extend(set.choices.iter().map(|c| c.text.as_str())),
        QuestionBody::ShortAnswer(set) => texts.extend(set.answers.iter().map(String::as_str)),
        QuestionBody::Matching(list) => {
            for pair in &list.pairs {
                texts.push(&pair.prompt);
                texts.push(&pair.answer);
            }
        }
        QuestionBody::Numerical(_) => {}
    }
    texts
}

fn category_text(path: &CategoryPath) -> String {
    if path.is_default() {
        COURSE_MARKER.to_owned()
    } else {
        format!("{COURSE_MARKER}/{}", path.as_str())
    }
}

/// Serializes the bank as a UTF-8 Moodle XML document.
pub fn serialize_bank(bank: &QuestionBank) -> Result<Vec<u8>> {
    let mut out = String::from("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<quiz>\n");
    for entry in bank.entries() {
        match entry {
            Entry::Category(path) => {
                let _ = write!(
                    out,
                    "  <question type=\"category\">\n    <category>\n      <text>{}</text>\n    </category>\n  </question>\n",
                    escape_for_cdata(&category_text(path))
                );
            }
            Entry::Question(q) => write_question(&mut out, q)?,
        }
    }
    out.push_str("</quiz>\n");
    Ok(out.into_bytes())
}

fn line_column(text: &[u8], offset: usize) -> (u32, u32) {
    let before = &text[..offset.min(text.len())];
    let line = before.iter().filter(|b| **b == b'\n').count() as u32 + 1;
    let line_start = before.iter().rposition(|b| *b == b'\n').map_or(0, |p| p + 1);
    let column = String::from_utf8_lossy(&before[line_start..]).chars().count() as u32 + 1;
    (line, column)
}

fn position(doc: &Document, node: Node) -> (u32, u32) {
    let pos = doc.text_pos_at(node.range().start);
    (pos.row, pos.col)
}

fn child<'a, 'i>(node: Node<'a, 'i>, name: &str) -> Option<Node<'a, 'i>> {
    node.children().find(|c| c.has_tag_name(name))
}

fn children<'a, 'i>(node: Node<'a, 'i>, name: &'a str) -> impl Iterator<Item = Node<'a, 'i>> + 'a {
    node.children().filter(move |c| c.has_tag_name(name))
}

/// Concatenated character data of the `<text>` child.
fn text_child(node: Node, what: &str) -> std::result::Result<String, String> {
    let text = child(node, "text").ok_or_else(|| format!("{what} has no <text> element"))?;
    Ok(text
        .descendants()
        .filter(|n| n.is_text())
        .filter_map(|n| n.text())
        .collect())
}

fn parse_number(text: &str, what: &str) -> std::result::Result<f64, String> {
    text.trim()
        .parse::<f64>()
        .map_err(|_| format!("{what} {text:?} is not a number"))
}

fn fraction_attr(node: Node) -> std::result::Result<f64, String> {
    let raw = node.attribute("fraction").unwrap_or("0");
    parse_number(raw, "fraction")
}

fn parse_question(node: Node, kind: &str) -> std::result::Result<Question, String> {
    let name = match child(node, "name") {
        Some(n) => text_child(n, "name")?,
        None => String::new(),
    };
    let stem = text_child(
        child(node, "questiontext").ok_or("missing <questiontext>")?,
        "questiontext",
    )?;
    let body = match kind {
        "multichoice" => {
            if let Some(single) = child(node, "single").and_then(|n| n.text()) {
                if matches!(single.trim(), "false" | "0") {
                    return Err("multiple-answer questions are not supported".into());
                }
            }
            let mut choices = Vec::new();
            for answer in children(node, "answer") {
                choices.push(Choice {
                    text: text_child(answer, "answer")?,
                    fraction: round_fraction(fraction_attr(answer)?),
                });
            }
            QuestionBody::MultipleChoice(ChoiceSet { choices })
        }
        "numerical" => {
            let mut answers = Vec::new();
            let mut tolerance: Option<f64> = None;
            for answer in children(node, "answer") {
                if fraction_attr(answer)? != 100.0 {
                    return Err("numerical answers with partial credit are not supported".into());
                }
                answers.push(parse_number(&text_child(answer, "answer")?, "answer")?);
                let tol = match child(answer, "tolerance").and_then(|t| t.text()) {
                    Some(t) => parse_number(t, "tolerance")?,
                    None => 0.0,
                };
                match tolerance {
                    None => tolerance = Some(tol),
                    Some(prev) if prev != tol => {
                        return Err("answers with differing tolerances are not supported".into())
                    }
                    Some(_) => {}
                }
            }
            QuestionBody::Numerical(NumericalAnswerSet {
                answers,
                tolerance: tolerance.unwrap_or(0.0),
            })
        }
        "shortanswer" => {
            let mut answers = Vec::new();
            for answer in children(node, "answer") {
                if fraction_attr(answer)? != 100.0 {
                    return Err("short answers with partial credit are not supported".into());
                }
                answers.push(text_child(answer, "answer")?);
            }
            QuestionBody::ShortAnswer(ShortAnswerSet { answers })
        }
        "matching" => {
            let mut pairs = Vec::new();
            for sub in children(node, "subquestion") {
                let prompt = text_child(sub, "subquestion")?;
                let answer = text_child(
                    child(sub, "answer").ok_or("subquestion has no <answer>")?,
                    "subquestion answer",
                )?;
                pairs.push(MatchPair { prompt, answer });
            }
            QuestionBody::Matching(MatchPairList { pairs })
        }
        other => return Err(format!("unsupported question type {other:?}")),
    };
    let question = Question { name, stem, body };
    question.validate().map_err(|e| e.to_string())?;
    Ok(question)
}

fn parse_category(node: Node) -> std::result::Result<CategoryPath, String> {
    let raw = text_child(
        child(node, "category").ok_or("category marker has no <category>")?,
        "category",
    )?;
    let raw = raw.trim();
    let path = if raw == COURSE_MARKER {
        ""
    } else {
        raw.strip_prefix(COURSE_MARKER)
            .and_then(|r| r.strip_prefix('/'))
            .unwrap_or(raw)
    };
    CategoryPath::new(path).map_err(|e| e.to_string())
}

/// Parses a Moodle XML document.
///
/// Malformed XML fails with its line and column. Questions of unsupported
/// types, or that violate a model invariant, are skipped and reported as
/// warnings on the returned bank (not echoed). The bank has no output path
/// and no seed.
pub fn parse_bank(bytes: &[u8]) -> Result<QuestionBank> {
    let text = std::str::from_utf8(bytes).map_err(|e| {
        let (line, column) = line_column(bytes, e.valid_up_to());
        QuizError::Parse {
            line,
            column,
            message: "input is not valid UTF-8".into(),
        }
    })?;
    let doc = Document::parse(text).map_err(|e| {
        let pos = e.pos();
        QuizError::Parse {
            line: pos.row,
            column: pos.col,
            message: e.to_string(),
        }
    })?;
    let root = doc.root_element();
    if !root.has_tag_name("quiz") {
        let (line, column) = position(&doc, root);
        return Err(QuizError::Parse {
            line,
            column,
            message: format!("root element is <{}>, expected <quiz>", root.tag_name().name()),
        });
    }

    let mut bank = QuestionBank::new("", None);
    bank.set_echo_warnings(false);
    for node in root.children().filter(Node::is_element) {
        let (line, _) = position(&doc, node);
        if !node.has_tag_name("question") {
            bank.warn(format!(
                "line {line}: ignoring unexpected <{}> element",
                node.tag_name().name()
            ));
            continue;
        }
        let kind = node.attribute("type").unwrap_or("");
        if kind == "category" {
            match parse_category(node) {
                Ok(path) => bank.push_category_unchecked(path),
                Err(msg) => bank.warn(format!("line {line}: skipped category: {msg}")),
            }
            continue;
        }
        match parse_question(node, kind) {
            Ok(q) => bank.entries_mut().push(Entry::Question(q)),
            Err(msg) => bank.warn(format!("line {line}: skipped {kind} question: {msg}")),
        }
    }
    bank.set_echo_warnings(true);
    Ok(bank)
}
