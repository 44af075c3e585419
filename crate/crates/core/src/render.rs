//! Conversion of script values into the text that ends up in a question.
//!
//! Choices, keys and answers can be passed as strings, numbers or small
//! tuples. Each is rendered to a canonical text form so that comparisons and
//! serialization are deterministic.

/// A value that can be shown as question or choice text.
pub trait Render {
    fn render(&self) -> String;
}

impl Render for str {
    fn render(&self) -> String {
        self.to_owned()
    }
}

impl Render for String {
    fn render(&self) -> String {
        self.clone()
    }
}

impl Render for char {
    fn render(&self) -> String {
        self.to_string()
    }
}

impl Render for bool {
    fn render(&self) -> String {
        self.to_string()
    }
}

impl<T: Render + ?Sized> Render for &T {
    fn render(&self) -> String {
        (**self).render()
    }
}

macro_rules! render_display {
    ($($t:ty),*) => {
        $(impl Render for $t {
            fn render(&self) -> String {
                self.to_string()
            }
        })*
    };
}

render_display!(i8, i16, i32, i64, i128, isize, u8, u16, u32, u64, u128, usize);

impl Render for f64 {
    fn render(&self) -> String {
        format_number(*self)
    }
}

impl Render for f32 {
    fn render(&self) -> String {
        format_number(f64::from(*self))
    }
}

impl<A: Render, B: Render> Render for (A, B) {
    fn render(&self) -> String {
        format!("({}, {})", self.0.render(), self.1.render())
    }
}

impl<A: Render, B: Render, C: Render> Render for (A, B, C) {
    fn render(&self) -> String {
        format!(
            "({}, {}, {})",
            self.0.render(),
            self.1.render(),
            self.2.render()
        )
    }
}

/// Shortest text that parses back to the same `f64`. Integral values carry
/// no fractional part, and negative zero prints as `0`.
pub fn format_number(value: f64) -> String {
    if value == 0.0 {
        return "0".to_owned();
    }
    format!("{value}")
}

/// Key used for every duplicate and collision check on rendered text.
pub fn normalized(text: &str) -> &str {
    text.trim()
}

/// One or several text answers. Scalars become a single-element list.
pub trait IntoTextAnswers {
    fn into_text_answers(self) -> Vec<String>;
}

impl IntoTextAnswers for &str {
    fn into_text_answers(self) -> Vec<String> {
        vec![self.to_owned()]
    }
}

impl IntoTextAnswers for String {
    fn into_text_answers(self) -> Vec<String> {
        vec![self]
    }
}

impl IntoTextAnswers for &String {
    fn into_text_answers(self) -> Vec<String> {
        vec![self.clone()]
    }
}

impl<T: Render> IntoTextAnswers for Vec<T> {
    fn into_text_answers(self) -> Vec<String> {
        self.iter().map(Render::render).collect()
    }
}

impl<T: Render> IntoTextAnswers for &[T] {
    fn into_text_answers(self) -> Vec<String> {
        self.iter().map(Render::render).collect()
    }
}

impl<T: Render, const N: usize> IntoTextAnswers for [T; N] {
    fn into_text_answers(self) -> Vec<String> {
        self.iter().map(Render::render).collect()
    }
}

/// Numeric scalar accepted as a numerical answer.
pub trait Numeric: Copy {
    fn to_f64(self) -> f64;
}

macro_rules! numeric_as {
    ($($t:ty),*) => {
        $(impl Numeric for $t {
            fn to_f64(self) -> f64 {
                self as f64
            }
        })*
    };
}

numeric_as!(f64, f32, i8, i16, i32, i64, isize, u8, u16, u32, u64, usize);

/// One or several numeric answers. Scalars become a single-element list.
pub trait IntoNumericAnswers {
    fn into_numeric_answers(self) -> Vec<f64>;
}

impl<T: Numeric> IntoNumericAnswers for T {
    fn into_numeric_answers(self) -> Vec<f64> {
        vec![self.to_f64()]
    }
}

impl<T: Numeric> IntoNumericAnswers for Vec<T> {
    fn into_numeric_answers(self) -> Vec<f64> {
        self.into_iter().map(Numeric::to_f64).collect()
    }
}

impl<T: Numeric> IntoNumericAnswers for &[T] {
    fn into_numeric_answers(self) -> Vec<f64> {
        self.iter().map(|v| v.to_f64()).collect()
    }
}

impl<T: Numeric, const N: usize> IntoNumericAnswers for [T; N] {
    fn into_numeric_answers(self) -> Vec<f64> {
        self.iter().map(|v| v.to_f64()).collect()
    }
}

/// Escapes text for use inside HTML element content or attribute values.
pub fn escape_html(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for ch in text.chars() {
        match ch {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&#39;"),
            c => out.push(c),
        }
    }
    out
}
