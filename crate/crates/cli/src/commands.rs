use std::path::{Path, PathBuf};
use std::process::Command;

use anyhow::{anyhow, Context};
use quizgen::preview::{MathScript, PreviewOptions};
use quizgen::stats::bank_stats;
use quizgen::xml::{parse_bank, serialize_bank};
use quizgen::{maintenance, QuestionBank};

pub const USAGE: u8 = 1;
pub const RUNTIME: u8 = 2;

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub error: anyhow::Error,
}

impl Failure {
    fn usage(error: impl Into<anyhow::Error>) -> Self {
        Failure {
            code: USAGE,
            error: error.into(),
        }
    }

    fn runtime(error: impl Into<anyhow::Error>) -> Self {
        Failure {
            code: RUNTIME,
            error: error.into(),
        }
    }
}

fn warn_all(warnings: &[String]) {
    for w in warnings {
        eprintln!("WARN: {w}");
    }
}

fn load(path: &Path) -> Result<QuestionBank, Failure> {
    let bytes = std::fs::read(path)
        .with_context(|| format!("cannot read {}", path.display()))
        .map_err(Failure::runtime)?;
    let mut bank = parse_bank(&bytes)
        .with_context(|| format!("cannot parse {}", path.display()))
        .map_err(Failure::runtime)?;
    bank.set_output_path(path);
    Ok(bank)
}

pub fn build(
    script: &Path,
    seed: Option<u64>,
    out: Option<&Path>,
    args: &[String],
) -> Result<(), Failure> {
    if !script.exists() {
        return Err(Failure::usage(anyhow!(
            "script {} does not exist",
            script.display()
        )));
    }
    let mut command = Command::new(script);
    command.args(args);
    if let Some(seed) = seed {
        command.env(quizgen::model::SEED_ENV, seed.to_string());
    }
    if let Some(out) = out {
        command.env(quizgen::model::OUT_ENV, out);
    }
    let status = command
        .status()
        .with_context(|| format!("cannot run {}", script.display()))
        .map_err(Failure::runtime)?;
    if !status.success() {
        return Err(Failure::runtime(anyhow!(
            "script {} failed ({status})",
            script.display()
        )));
    }
    if let Some(out) = out {
        if !out.exists() {
            return Err(Failure::runtime(anyhow!(
                "script {} finished without writing {}",
                script.display(),
                out.display()
            )));
        }
    }
    Ok(())
}

pub fn stats(bank_path: &Path, media_limit: usize) -> Result<(), Failure> {
    let bank = load(bank_path)?;
    let stats = bank_stats(&bank, media_limit);
    print!("{stats}");
    warn_all(&stats.warnings);
    Ok(())
}

pub fn preview(
    bank_path: &Path,
    out: Option<&Path>,
    inline_math: Option<&Path>,
    no_math: bool,
) -> Result<(), Failure> {
    let math = match (inline_math, no_math) {
        (Some(script), _) => MathScript::Inline(
            std::fs::read_to_string(script)
                .with_context(|| format!("cannot read {}", script.display()))
                .map_err(Failure::usage)?,
        ),
        (None, true) => MathScript::None,
        (None, false) => MathScript::Cdn,
    };
    let bank = load(bank_path)?;
    warn_all(bank.warnings());
    let options = PreviewOptions { math, title: None };
    let written = match out {
        Some(path) => quizgen::preview::render_preview(&bank, path, &options),
        None => quizgen::preview::render_preview_to_temp(&bank, &options),
    }
    .map_err(Failure::runtime)?;
    println!("{}", written.display());
    Ok(())
}

pub enum Edit {
    Replace { old: String, new: String, regex: bool },
    Penalty(f64),
}

fn backup_path(path: &Path) -> PathBuf {
    let stamp = chrono::Local::now().format("%Y%m%d-%H%M%S");
    let name = path
        .file_name()
        .map(|n| n.to_string_lossy().into_owned())
        .unwrap_or_else(|| "bank.xml".into());
    let mut candidate = path.with_file_name(format!("{name}.{stamp}.bak"));
    let mut n = 1;
    while candidate.exists() {
        candidate = path.with_file_name(format!("{name}.{stamp}-{n}.bak"));
        n += 1;
    }
    candidate
}

pub fn maintain(
    bank_path: &Path,
    edit: Edit,
    out: Option<&Path>,
    backup: bool,
) -> Result<(), Failure> {
    let edit = match edit {
        Edit::Penalty(f) if !(-100.0..=0.0).contains(&f) => {
            return Err(Failure::usage(anyhow!("penalty {f} is outside [-100, 0]")))
        }
        Edit::Replace { ref old, .. } if old.is_empty() => {
            return Err(Failure::usage(anyhow!("text to replace is empty")))
        }
        other => other,
    };
    let pattern = match &edit {
        Edit::Replace {
            old, regex: true, ..
        } => Some(
            regex::Regex::new(old)
                .with_context(|| format!("invalid regular expression {old:?}"))
                .map_err(Failure::usage)?,
        ),
        _ => None,
    };

    let mut bank = load(bank_path)?;
    warn_all(bank.warnings());
    let count = match &edit {
        Edit::Replace { old, new, .. } => match &pattern {
            Some(re) => maintenance::replace_pattern(&mut bank, re, new),
            None => maintenance::replace_text(&mut bank, old, new),
        },
        Edit::Penalty(f) => maintenance::set_wrong_penalty(&mut bank, *f),
    }
    .map_err(Failure::runtime)?;

    let bytes = serialize_bank(&bank).map_err(Failure::runtime)?;
    let target = out.unwrap_or(bank_path);
    if out.is_none() && backup {
        let backup = backup_path(bank_path);
        std::fs::copy(bank_path, &backup)
            .with_context(|| format!("cannot write backup {}", backup.display()))
            .map_err(Failure::runtime)?;
        eprintln!("backup written to {}", backup.display());
    }
    quizgen::write_atomic(target, &bytes).map_err(Failure::runtime)?;
    println!("{count}");
    Ok(())
}
