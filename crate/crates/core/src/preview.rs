//! Standalone HTML preview of a bank.
//!
//! The page follows a few instructor-facing conventions: question names are
//! visible, accepted numerical and short answers sit next to the input,
//! the correct choice of a multiple-choice question is listed first, and
//! matching drop-downs are preselected in subquestion order.

use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use crate::error::{QuizError, Result};
use crate::model::{Entry, Question, QuestionBank, QuestionBody};
use crate::render::{escape_html, format_number};

pub const MATHJAX_CDN: &str = "https://cdn.jsdelivr.net/npm/mathjax@3/es5/tex-chtml.js";

/// Set to skip launching a browser from [`preview`].
pub const NO_BROWSER_ENV: &str = "QUIZGEN_NO_BROWSER";

/// Where the LaTeX renderer comes from.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum MathScript {
    #[default]
    Cdn,
    /// Script source embedded in the page for fully offline use.
    Inline(String),
    None,
}

#[derive(Debug, Clone, Default)]
pub struct PreviewOptions {
    pub math: MathScript,
    pub title: Option<String>,
}

const STYLE: &str = r#"
body { font-family: "Segoe UI", Roboto, "Helvetica Neue", Arial, sans-serif; font-size: 0.95rem; color: #1d2125; background: #f8f9fa; margin: 0 auto; max-width: 60rem; padding: 1rem 2rem; }
h1 { font-size: 1.5rem; }
h2.category { font-size: 1.2rem; border-bottom: 1px solid #dee2e6; padding-bottom: .25rem; margin-top: 2rem; }
.que { display: flex; margin: 1rem 0; }
.que .info { flex: 0 0 8rem; background: #f8f9fa; border: 1px solid #cad0d7; border-radius: 2px; padding: .5rem; margin-right: 1rem; }
.que .info .qno { font-weight: bold; }
.que .info .qtype { font-size: .8rem; color: #6a737b; }
.que .content { flex: 1 1 auto; background: #e7f3f5; border: 1px solid #b8dce2; border-radius: 2px; padding: .75rem 1rem; }
.que .qname { font-weight: bold; color: #0f6cbf; margin-bottom: .5rem; }
.que .qtext { margin-bottom: 1rem; }
.que .qtext img { max-width: 100%; }
.choices { list-style: none; padding-left: 0; margin: 0; }
.choices li { padding: .2rem 0; }
.choices li.correct .choice-text { font-weight: bold; }
.fraction { color: #6a737b; font-size: .8rem; margin-left: .5rem; }
.answer-row input { width: 10rem; }
.accepted { margin-left: .5rem; font-weight: bold; color: #357a32; }
.tolerance { margin-left: .5rem; color: #6a737b; }
table.matching td { padding: .2rem .5rem; vertical-align: middle; }
.quizgen-blank { text-decoration: underline; }
.notice { font-style: italic; color: #6a737b; }
"#;

const MATHJAX_CONFIG: &str = r"<script>
window.MathJax = { tex: { inlineMath: [['\\(', '\\)']], displayMath: [['$$', '$$'], ['\\[', '\\]']] } };
</script>";

fn kind_label(q: &Question) -> &'static str {
    match q.body {
        QuestionBody::ShortAnswer(_) => "Short answer",
        QuestionBody::Numerical(_) => "Numerical",
        QuestionBody::MultipleChoice(_) => "Multiple choice",
        QuestionBody::Matching(_) => "Matching",
    }
}

fn render_body(out: &mut String, q: &Question) {
    match &q.body {
        QuestionBody::MultipleChoice(set) => {
            out.push_str("<ul class=\"choices\">\n");
            let ordered = set
                .choices
                .iter()
                .filter(|c| c.is_correct())
                .chain(set.choices.iter().filter(|c| !c.is_correct()));
            for choice in ordered {
                let (class, checked) = if choice.is_correct() {
                    ("choice correct", " checked")
                } else {
                    ("choice", "")
                };
                let _ = writeln!(
                    out,
                    "<li class=\"{class}\"><input type=\"radio\" disabled{checked}> <span class=\"choice-text\">{}</span><span class=\"fraction\">({}%)</span></li>",
                    choice.text,
                    format_number(choice.fraction)
                );
            }
            out.push_str("</ul>\n");
        }
        QuestionBody::Numerical(set) => {
            let accepted: Vec<String> = set.answers.iter().map(|a| format_number(*a)).collect();
            let _ = writeln!(
                out,
                "<div class=\"answer-row\">Answer: <input type=\"text\" disabled> <span class=\"accepted\">{}</span><span class=\"tolerance\">(&plusmn;{})</span></div>",
                accepted.join(" | "),
                format_number(set.tolerance)
            );
        }
        QuestionBody::ShortAnswer(set) => {
            let accepted: Vec<String> = set.answers.iter().map(|a| escape_html(a)).collect();
            let _ = writeln!(
                out,
                "<div class=\"answer-row\">Answer: <input type=\"text\" disabled> <span class=\"accepted\">{}</span></div>",
                accepted.join(" | ")
            );
        }
        QuestionBody::Matching(list) => {
            let mut options: Vec<&str> = Vec::new();
            for pair in &list.pairs {
                if !options.contains(&pair.answer.as_str()) {
                    options.push(&pair.answer);
                }
            }
            out.push_str("<table class=\"matching\">\n");
            for pair in &list.pairs {
                let _ = write!(
                    out,
                    "<tr><td class=\"prompt\">{}</td><td><select disabled>",
                    pair.prompt
                );
                for option in &options {
                    let selected = if *option == pair.answer { " selected" } else { "" };
                    let _ = write!(out, "<option{selected}>{}</option>", escape_html(option));
                }
                out.push_str("</select></td></tr>\n");
            }
            out.push_str("</table>\n");
        }
    }
}

fn render_question(out: &mut String, q: &Question, ordinal: usize) {
    let _ = writeln!(
        out,
        "<div class=\"que {}\" id=\"q{ordinal}\">",
        q.kind().xml_type()
    );
    let _ = writeln!(
        out,
        "<div class=\"info\"><div class=\"qno\">Question {ordinal}</div><div class=\"qtype\">{}</div></div>",
        kind_label(q)
    );
    out.push_str("<div class=\"content\">\n");
    let _ = writeln!(
        out,
        "<div class=\"qname\">{}</div>",
        escape_html(&q.display_name(ordinal))
    );
    let _ = writeln!(out, "<div class=\"qtext\">{}</div>", q.stem);
    render_body(out, q);
    out.push_str("</div>\n</div>\n");
}

/// Renders the whole preview page.
pub fn render_preview_html(bank: &QuestionBank, options: &PreviewOptions) -> String {
    let title = options.title.clone().unwrap_or_else(|| {
        match bank.output_path().file_name() {
            Some(name) => format!("Preview of {}", name.to_string_lossy()),
            None => "Question bank preview".to_owned(),
        }
    });
    let mut out = String::new();
    out.push_str("<!DOCTYPE html>\n<html lang=\"en\">\n<head>\n<meta charset=\"utf-8\">\n");
    let _ = writeln!(out, "<title>{}</title>", escape_html(&title));
    let _ = writeln!(out, "<style>{STYLE}</style>");
    match &options.math {
        MathScript::Cdn => {
            out.push_str(MATHJAX_CONFIG);
            let _ = writeln!(
                out,
                "\n<script id=\"MathJax-script\" async src=\"{MATHJAX_CDN}\"></script>"
            );
        }
        MathScript::Inline(source) => {
            out.push_str(MATHJAX_CONFIG);
            let _ = writeln!(
                out,
                "\n<script id=\"MathJax-script\">{}</script>",
                source.replace("</script", "<\\/script")
            );
        }
        MathScript::None => {}
    }
    out.push_str("</head>\n<body>\n");
    let _ = writeln!(out, "<h1>{}</h1>", escape_html(&title));
    let count = bank.len();
    let _ = writeln!(
        out,
        "<p class=\"summary\">{count} question{}</p>",
        if count == 1 { "" } else { "s" }
    );
    if count == 0 {
        out.push_str("<p class=\"notice\">No questions in this bank.</p>\n");
    }
    let mut ordinal = 0;
    for entry in bank.entries() {
        match entry {
            Entry::Category(path) => {
                let label = if path.is_default() {
                    "Default category"
                } else {
                    path.as_str()
                };
                let _ = writeln!(out, "<h2 class=\"category\">{}</h2>", escape_html(label));
            }
            Entry::Question(q) => {
                ordinal += 1;
                render_question(&mut out, q, ordinal);
            }
        }
    }
    out.push_str("</body>\n</html>\n");
    out
}

/// Writes the preview page to `output_path`.
pub fn render_preview(
    bank: &QuestionBank,
    output_path: &Path,
    options: &PreviewOptions,
) -> Result<PathBuf> {
    let html = render_preview_html(bank, options);
    crate::atomic::write(output_path, html.as_bytes())?;
    Ok(output_path.to_path_buf())
}

/// Writes the preview to a fresh temporary file and returns its path.
pub fn render_preview_to_temp(bank: &QuestionBank, options: &PreviewOptions) -> Result<PathBuf> {
    let html = render_preview_html(bank, options);
    let tmp_dir = std::env::temp_dir();
    let file = tempfile::Builder::new()
        .prefix("quizgen-preview-")
        .suffix(".html")
        .tempfile()
        .map_err(|e| QuizError::io(&tmp_dir, e))?;
    let (mut handle, path) = file.keep().map_err(|e| QuizError::io(&tmp_dir, e.error))?;
    handle
        .write_all(html.as_bytes())
        .map_err(|e| QuizError::io(&path, e))?;
    Ok(path)
}

/// Renders to a temporary file and hands the path to `open`. If opening
/// fails the path is printed instead.
pub fn preview_with<F>(bank: &QuestionBank, options: &PreviewOptions, open: F) -> Result<PathBuf>
where
    F: FnOnce(&Path) -> std::io::Result<()>,
{
    let path = render_preview_to_temp(bank, options)?;
    if let Err(e) = open(&path) {
        println!("preview written to {} (could not open a browser: {e})", path.display());
    }
    Ok(path)
}

/// Opens `path` with the platform's default handler.
pub fn open_in_browser(path: &Path) -> std::io::Result<()> {
    if std::env::var_os(NO_BROWSER_ENV).is_some() {
        return Err(std::io::Error::other(format!("{NO_BROWSER_ENV} is set")));
    }
    let mut command = if cfg!(target_os = "macos") {
        std::process::Command::new("open")
    } else if cfg!(windows) {
        let mut c = std::process::Command::new("cmd");
        c.args(["/C", "start", ""]);
        c
    } else {
        std::process::Command::new("xdg-open")
    };
    let status = command.arg(path).status()?;
    if status.success() {
        Ok(())
    } else {
        Err(std::io::Error::other(format!("browser launcher exited with {status}")))
    }
}

/// Renders the bank to a temporary HTML file and opens it in a browser.
pub fn preview(bank: &QuestionBank) -> Result<PathBuf> {
    preview_with(bank, &PreviewOptions::default(), open_in_browser)
}

impl QuestionBank {
    /// See [`preview`].
    pub fn preview(&self) -> Result<PathBuf> {
        preview(self)
    }
}
