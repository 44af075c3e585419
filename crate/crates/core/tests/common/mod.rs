#![allow(dead_code)]

use std::collections::HashSet;

use quizgen::media::{embed_image, MediaAsset};
use quizgen::{QuestionBank, QuestionBody};

pub fn bank(seed: u64) -> QuestionBank {
    let mut b = QuestionBank::new("fixture.xml", Some(seed));
    b.set_echo_warnings(false);
    b
}

pub const PNG_1X1: &[u8] = &[
    0x89, 0x50, 0x4E, 0x47, 0x0D, 0x0A, 0x1A, 0x0A, 0x00, 0x00, 0x00, 0x0D, 0x49, 0x48, 0x44, 0x52,
    0x00, 0x00, 0x00, 0x01, 0x00, 0x00, 0x00, 0x01, 0x08, 0x06, 0x00, 0x00, 0x00, 0x1F, 0x15, 0xC4,
    0x89, 0x00, 0x00, 0x00, 0x0D, 0x49, 0x44, 0x41, 0x54, 0x78, 0x9C, 0x63, 0xF8, 0xCF, 0xC0, 0xF0,
    0x1F, 0x00, 0x05, 0x00, 0x01, 0xFF, 0x89, 0x99, 0x3D, 0x1D, 0x00, 0x00, 0x00, 0x00, 0x49, 0x45,
    0x4E, 0x44, 0xAE, 0x42, 0x60, 0x82,
];

// Shader task lists: vertex-only, fragment-only, both, neither.
pub const ONLY_VS: [&str; 4] = [
    "Write gl_Position.",
    "Write to an out variable with texture coordinates.",
    "Animate the geometry of the 3D model.",
    "Compute per-vertex lighting.",
];
pub const ONLY_FS: [&str; 7] = [
    "Call dFdx, dFdy functions.",
    "Execute discard.",
    "Write fragColor.",
    "Read gl_FragCoord.",
    "Write gl_FragDepth.",
    "Apply bump mapping.",
    "Apply normal mapping.",
];
pub const BOTH: [&str; 2] = ["Compute the light vector.", "Compute lighting."];
pub const NONE: [&str; 3] = [
    "Write to gl_FragCoord.",
    "Create new primitives.",
    "Create new fragments.",
];

pub fn vertex_shader_pool() -> (Vec<&'static str>, Vec<&'static str>) {
    (
        ONLY_VS.iter().chain(&BOTH).copied().collect(),
        ONLY_FS.iter().chain(&NONE).copied().collect(),
    )
}

pub fn derivative_pairs() -> Vec<(&'static str, &'static str)> {
    vec![
        (r"\cos{\left(x^{2} \right)}", r"\(- 2 x \sin{\left(x^{2} \right)}\)"),
        (r"2 x \sin{\left(x \right)}", r"\(2 x \cos{\left(x \right)} + 2 \sin{\left(x \right)}\)"),
        (r"\sin{\left(x \right)} \cos{\left(x \right)}", r"\(- \sin^{2}{\left(x \right)} + \cos^{2}{\left(x \right)}\)"),
        (r"2 \sin{\left(\cos{\left(x \right)} \right)}", r"\(- 2 \sin{\left(x \right)} \cos{\left(\cos{\left(x \right)} \right)}\)"),
        (r"\sin{\left(2 x \right)}", r"\(2 \cos{\left(2 x \right)}\)"),
        (r"\tan{\left(2 x \right)}", r"\(2 \tan^{2}{\left(2 x \right)} + 2\)"),
    ]
}

pub fn kajiya_pairs() -> Vec<(&'static str, &'static str)> {
    vec![
        (r"L_o(x, \omega_o, \lambda ,t)", "Exiting radiance."),
        (r"L_e(x, \omega_o, \lambda ,t)", "Emitted radiance."),
        (r"L_i(x, \omega_i, \lambda ,t)", "Incident radiance."),
        (r"f_r(x, \omega_i, \omega _o, \lambda,t)", "Material's BRDF."),
        (r"(\omega_i \cdot n)", "Cosine of incident angle."),
        (r"\lambda", "Radiant energy wavelength."),
        (r"\Omega", "Unit hemisphere."),
    ]
}

pub const KAJIYA_EXTRA: [&str; 4] = [
    "Irradiance.",
    "Illuminance.",
    "Intensity.",
    "Incident direction.",
];

pub const KAJIYA_PATTERN: &str = r"Kajiya's rendering equation can be written in the form $$L_o = L_e + \int_\Omega f_r L_i (\omega_i \cdot n) d\omega_i$$. <p> What is \(%s\)?";

pub const VERTEX_SHADER: &str = "
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
pub const SHADER_TOKENS: [&str; 3] = ["modelViewMatrix", "modelViewProjectionMatrix", "normalMatrix"];
pub const SHADER_DISTRACTORS: [&str; 3] =
    ["viewMatrix", "viewProjectionMatrix", "modelViewMatrixInverse"];

/// A bank touching every kind, categories, LaTeX, CDATA hazards and an
/// embedded image.
pub fn corpus() -> QuestionBank {
    let mut b = bank(11);
    let img = embed_image(&MediaAsset::new(PNG_1X1, "image/png").unwrap().with_alt("dot")).unwrap();
    b.add_short_answer("capital", "Capital of France?", "Paris").unwrap();
    b.set_category("Calculus/Derivatives").unwrap();
    b.add_numerical("roots", r"Solve \( 2x^2+4x-30=0 \)", [3.0, -5.0]).unwrap();
    b.add_multiple_choice("", r"Select a solution for \(2x^2+4x-30=0\)", [3, 2, 4, 5])
        .unwrap();
    b.add_multiple_choice_from_pairs(
        "Derivatives",
        r"Select the derivative of \(%s\)",
        derivative_pairs(),
        quizgen::NO_DISTRACTORS,
        None,
    )
    .unwrap();
    b.set_category("Rendering").unwrap();
    b.add_matching(
        "units",
        "Match magnitudes with units:",
        [
            ("Flux", "W"),
            ("Intensity", "W/sr"),
            ("Irradiance", "W/m^2"),
            ("Radiance", "W/(sr*m^2)"),
        ],
    )
    .unwrap();
    b.add_numerical_with_tolerance("figure", &format!("{img}<p>Area of the pixel?</p>"), 1, 0.5)
        .unwrap();
    b.add_short_answer(
        "hazards",
        "Text with ]]> inside, a & b < c, and\r\nCRLF",
        vec!["x]]>y", "a&b"],
    )
    .unwrap();
    b.set_category("").unwrap();
    b.add_complete_code(
        "",
        "Complete this vertex shader: <p> <pre>%s</pre>",
        VERTEX_SHADER,
        SHADER_TOKENS,
        SHADER_DISTRACTORS,
        Some(2),
    )
    .unwrap();
    b.add_multiple_choice("two", "Yes or no?", ["yes", "no"]).unwrap();
    b
}

/// Choice texts (correct first) of every multiple-choice question.
pub fn mcq_choices(bank: &QuestionBank) -> Vec<(String, Vec<String>, Vec<f64>)> {
    bank.questions()
        .filter_map(|q| match &q.body {
            QuestionBody::MultipleChoice(s) => Some((
                q.stem.clone(),
                s.choices.iter().map(|c| c.text.clone()).collect(),
                s.choices.iter().map(|c| c.fraction).collect(),
            )),
            _ => None,
        })
        .collect()
}

/// Checks the generator invariants on the questions of one call and returns
/// a description of the first violation.
///
/// `unique_by_stem` selects how uniqueness is judged: by correct answer
/// (list generators) or by stem (pair and token generators).
pub fn check_generated(
    questions: &[(String, Vec<String>, Vec<f64>)],
    c: usize,
    unique_by_stem: bool,
) -> Result<(), String> {
    for (stem, choices, fractions) in questions {
        if choices.len() != 4 {
            return Err(format!("{} choices in {stem:?}", choices.len()));
        }
        let distinct: HashSet<&str> = choices.iter().map(|s| s.trim()).collect();
        if distinct.len() != 4 {
            return Err(format!("repeated choice in {choices:?}"));
        }
        if fractions.iter().filter(|f| **f == 100.0).count() != 1 || fractions[0] != 100.0 {
            return Err(format!("fractions {fractions:?}"));
        }
        if choices[1..].iter().any(|d| d.trim() == choices[0].trim()) {
            return Err(format!("distractor equals answer in {choices:?}"));
        }
    }
    let head = &questions[..questions.len().min(c)];
    let keys: HashSet<&str> = head
        .iter()
        .map(|(stem, choices, _)| if unique_by_stem { stem.as_str() } else { choices[0].as_str() })
        .collect();
    if keys.len() != head.len() {
        return Err(format!("first {} questions are not unique", head.len()));
    }
    let mut seen = HashSet::new();
    for (stem, choices, _) in questions {
        let mut set: Vec<&str> = choices[1..].iter().map(String::as_str).collect();
        set.sort();
        if !seen.insert((stem.as_str(), choices[0].as_str(), set)) {
            return Err(format!("duplicate question {choices:?}"));
        }
    }
    Ok(())
}
