//! Example authoring scripts.
//!
//! `quizgen-listings <name>` builds one example bank. The output path and the
//! seed can be injected through `QUIZGEN_OUT` and `QUIZGEN_SEED`, which is
//! what `quizgen build` does.

use std::process::ExitCode;

use quizgen::media::{embed_image, MediaAsset};
use quizgen::{QuestionBank, Result, NO_DISTRACTORS};
use rand::Rng;

/// Derivatives of a few trigonometric functions, as (f, f') in LaTeX.
fn derivatives() -> Result<QuestionBank> {
    let mut q = QuestionBank::from_env("listing1.xml")?;
    let pairs = [
        (r"\cos{\left(x^{2} \right)}", r"- 2 x \sin{\left(x^{2} \right)}"),
        (r"2 x \sin{\left(x \right)}", r"2 x \cos{\left(x \right)} + 2 \sin{\left(x \right)}"),
        (
            r"\sin{\left(x \right)} \cos{\left(x \right)}",
            r"- \sin^{2}{\left(x \right)} + \cos^{2}{\left(x \right)}",
        ),
        (
            r"2 \sin{\left(\cos{\left(x \right)} \right)}",
            r"- 2 \sin{\left(x \right)} \cos{\left(\cos{\left(x \right)} \right)}",
        ),
        (r"\sin{\left(2 x \right)}", r"2 \cos{\left(2 x \right)}"),
        (r"\tan{\left(2 x \right)}", r"2 \tan^{2}{\left(2 x \right)} + 2"),
    ];
    let pairs: Vec<(String, String)> = pairs
        .iter()
        .map(|(f, df)| (f.to_string(), format!(r"\({df}\)")))
        .collect();
    q.add_multiple_choice_from_pairs(
        "Derivatives",
        r"Select the derivative of \(%s\)",
        pairs,
        NO_DISTRACTORS,
        None,
    )?;
    Ok(q)
}

/// Single questions: a random quadratic equation and radiometry units.
fn single_questions() -> Result<QuestionBank> {
    let mut q = QuestionBank::from_env("listing3.xml")?;
    let (a, b, x): (i64, i64, i64) = {
        let rng = q.rng();
        (rng.gen_range(2..=6), rng.gen_range(1..=9), rng.gen_range(3..=8))
    };
    let c = -a * x * x - b * x;
    let other = (-b as f64 - ((b * b - 4 * a * c) as f64).sqrt()) / (2 * a) as f64;
    let mut distractors = Vec::new();
    for d in [x - 1, x + 1, x - 2, x + 2] {
        if d != x && d as f64 != other && !distractors.contains(&d) {
            distractors.push(d);
        }
    }
    q.add_numerical("", &format!(r"Solve \( {a}x^2+{b}x{c}=0 \)"), vec![x as f64, other])?;
    let mut choices = vec![x];
    choices.extend(distractors);
    q.add_multiple_choice("", &format!(r"Select a solution for \({a}x^2+{b}x{c}=0\)"), choices)?;
    q.add_matching(
        "",
        "Match magnitudes with units:",
        [
            ("Flux", "W"),
            ("Intensity", "W/sr"),
            ("Irradiance", "W/m^2"),
            ("Radiance", "W/(sr*m^2)"),
        ],
    )?;
    Ok(q)
}

/// Tasks that make sense in a vertex or a fragment shader.
fn shader_tasks() -> Result<QuestionBank> {
    let mut q = QuestionBank::from_env("listing4.xml")?;
    let only_vs = [
        "Write gl_Position.",
        "Write to an out variable with texture coordinates.",
        "Animate the geometry of the 3D model.",
        "Compute per-vertex lighting.",
    ];
    let only_fs = [
        "Call dFdx, dFdy functions.",
        "Execute discard.",
        "Write fragColor.",
        "Read gl_FragCoord.",
        "Write gl_FragDepth.",
        "Apply bump mapping.",
        "Apply normal mapping.",
    ];
    let both = ["Compute the light vector.", "Compute lighting."];
    let none = [
        "Write to gl_FragCoord.",
        "Create new primitives.",
        "Create new fragments.",
    ];
    let question = "Select the task that makes sense in a GLSL ";
    let cat = |a: &[&'static str], b: &[&'static str]| -> Vec<&'static str> {
        a.iter().chain(b).copied().collect()
    };
    q.add_multiple_choice_from_lists(
        "",
        &format!("{question}<b>Vertex Shader</b>:"),
        cat(&only_vs, &both),
        cat(&only_fs, &none),
        None,
    )?;
    q.add_multiple_choice_from_lists(
        "",
        &format!("{question}<b>Fragment Shader</b>:"),
        cat(&only_fs, &both),
        cat(&only_vs, &none),
        None,
    )?;
    Ok(q)
}

/// Terms of the rendering equation and what they mean.
fn rendering_equation() -> Result<QuestionBank> {
    let mut q = QuestionBank::from_env("listing5.xml")?;
    let lo = r"L_o(x, \omega_o, \lambda ,t)";
    let le = r"L_e(x, \omega_o, \lambda ,t)";
    let li = r"L_i(x, \omega_i, \lambda ,t)";
    let fr = r"f_r(x, \omega_i, \omega _o, \lambda,t)";
    let dot = r"(\omega_i \cdot n)";
    let equ = format!(r"$${lo} = {le}\ + \int_\Omega {fr}{li}{dot}d\omega_i$$");
    let question =
        format!(r"Kajiya's rendering equation can be written in the form {equ}. <p> What is \(%s\)?");
    let pairs = [
        (lo, "Exiting radiance."),
        (le, "Emitted radiance."),
        (li, "Incident radiance."),
        (fr, "Material's BRDF."),
        (dot, "Cosine of incident angle."),
        (r"\lambda", "Radiant energy wavelength."),
        (r"\Omega", "Unit hemisphere."),
    ];
    let distractors = [
        "Irradiance.",
        "Illuminance.",
        "Intensity.",
        "Incident direction.",
    ];
    q.add_multiple_choice_from_pairs("", &question, pairs, distractors, None)?;
    Ok(q)
}

fn primes_below(limit: u32) -> Vec<u32> {
    let mut sieve = vec![true; limit as usize];
    let mut primes = Vec::new();
    for n in 2..limit {
        if sieve[n as usize] {
            primes.push(n);
            let mut m = n * n;
            while m < limit {
                sieve[m as usize] = false;
                m += n;
            }
        }
    }
    primes
}

/// Three-digit primes with plausible (odd, not multiple of 5) distractors.
fn primes() -> Result<QuestionBank> {
    let mut q = QuestionBank::from_env("listing6.xml")?;
    let limit = 999;
    let primes = primes_below(limit);
    let three_digit = &primes[25..];
    let distractors: Vec<u32> = (100..limit)
        .filter(|n| n % 2 != 0 && n % 5 != 0 && !primes.contains(n))
        .collect();
    q.add_multiple_choice_from_lists(
        "",
        "Select the <b> prime </b> number:",
        three_digit,
        distractors,
        Some(5),
    )?;
    q.add_numerical("", "Enter a 3-digit prime number:", three_digit)?;
    Ok(q)
}

const VERTEX_SHADER: &str = "
    void main()
    {
        vec3 P = (modelViewMatrix * vec4(vertex, 1.0)).xyz;
        vec3 N = normalize(normalMatrix * normal);
        vec3 V = normalize(-P);
        vec3 L = normalize(lightPosition.xyz - P);
        frontColor = PhongLight(N , V , L);
        gl_Position = modelViewProjectionMatrix * vec4(vertex, 1.0);
    }
";

/// Fill in the missing matrix in a vertex shader.
fn complete_code() -> Result<QuestionBank> {
    let mut q = QuestionBank::from_env("listing7.xml")?;
    let tokens = ["modelViewMatrix", "modelViewProjectionMatrix", "normalMatrix"];
    let distractors = ["viewMatrix", "viewProjectionMatrix", "modelViewMatrixInverse"];
    q.add_complete_code(
        "",
        "Complete this vertex shader: <p> <pre>%s</pre>",
        VERTEX_SHADER,
        tokens,
        distractors,
        None,
    )?;
    Ok(q)
}

// 1x1 RGBA PNG, stand-in for a figure rendered by an external plotting tool.
const FIGURE_PNG: &[u8] = &[
    0x89, 0x50, 0x4E, 0x47, 0x0D, 0x0A, 0x1A, 0x0A, 0x00, 0x00, 0x00, 0x0D, 0x49, 0x48, 0x44, 0x52,
    0x00, 0x00, 0x00, 0x01, 0x00, 0x00, 0x00, 0x01, 0x08, 0x06, 0x00, 0x00, 0x00, 0x1F, 0x15, 0xC4,
    0x89, 0x00, 0x00, 0x00, 0x0D, 0x49, 0x44, 0x41, 0x54, 0x78, 0x9C, 0x63, 0xF8, 0xCF, 0xC0, 0xF0,
    0x1F, 0x00, 0x05, 0x00, 0x01, 0xFF, 0x89, 0x99, 0x3D, 0x1D, 0x00, 0x00, 0x00, 0x00, 0x49, 0x45,
    0x4E, 0x44, 0xAE, 0x42, 0x60, 0x82,
];

/// Questions with an embedded figure, organised in categories.
fn media() -> Result<QuestionBank> {
    let mut q = QuestionBank::from_env("media.xml")?;
    let img = embed_image(&MediaAsset::new(FIGURE_PNG, "image/png")?.with_alt("triangle"))?;
    q.set_category("Geometry/Barycentric")?;
    for _ in 0..3 {
        let (u, v) = {
            let rng = q.rng();
            (rng.gen_range(1..=4) as f64 / 10.0, rng.gen_range(1..=4) as f64 / 10.0)
        };
        let w = ((1.0 - u - v) * 10.0).round() / 10.0;
        q.add_numerical(
            "",
            &format!(
                "{img}<p>The point has barycentric coordinates \\(({u}, {v}, w)\\). Find \\(w\\).</p>"
            ),
            w,
        )?;
    }
    Ok(q)
}

type Script = fn() -> Result<QuestionBank>;

const LISTINGS: &[(&str, Script)] = &[
    ("listing1", derivatives),
    ("listing3", single_questions),
    ("listing4", shader_tasks),
    ("listing5", rendering_equation),
    ("listing6", primes),
    ("listing7", complete_code),
    ("media", media),
];

fn main() -> ExitCode {
    let names: Vec<&str> = LISTINGS.iter().map(|(n, _)| *n).collect();
    let Some(name) = std::env::args().nth(1) else {
        eprintln!("usage: quizgen-listings <{}>", names.join("|"));
        return ExitCode::from(1);
    };
    let Some((_, script)) = LISTINGS.iter().find(|(n, _)| *n == name) else {
        eprintln!("unknown listing {name:?}; expected one of {}", names.join(", "));
        return ExitCode::from(1);
    };
    match script().and_then(|mut bank| {
        bank.close()?;
        Ok(bank)
    }) {
        Ok(bank) => {
            println!("{} questions written to {}", bank.len(), bank.output_path().display());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
