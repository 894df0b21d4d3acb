//! JSON encodings. Rationals are `"p/q"` strings; forms are lists of
//! `[monomial, coeff]` pairs sorted by index tuple.

use serde_json::{json, Value};

use num_traits::Signed;
use stgeom::rational::to_string;
use stgeom::{Form, KForm, Matrix, Rational, Vector, WForm};

pub fn q(x: &Rational) -> Value {
    Value::String(to_string(x))
}

fn sorted_terms<S: stgeom::form::Coeff + std::fmt::Display>(
    f: &Form<S>,
    name: impl Fn(usize) -> String,
) -> Value {
    let mut terms: Vec<(Vec<usize>, String)> = f
        .terms()
        .map(|(m, c)| (m.indices().collect(), c.to_string()))
        .collect();
    terms.sort();
    Value::Array(
        terms
            .into_iter()
            .map(|(ix, c)| {
                let mono = if ix.is_empty() {
                    "1".to_string()
                } else {
                    ix.iter().map(|&i| name(i)).collect::<Vec<_>>().join("^")
                };
                json!([mono, c])
            })
            .collect(),
    )
}

pub fn form(f: &KForm) -> Value {
    sorted_terms(f, |i| format!("e{}", i + 1))
}

pub fn form_named(f: &KForm, name: impl Fn(usize) -> String) -> Value {
    sorted_terms(f, name)
}

/// Index 0 is `dr`, index `i` is `e{i}` of the base.
pub fn wform(w: &WForm) -> Value {
    sorted_terms(w.form(), lifted("dr"))
}

pub fn vector(v: &Vector) -> Value {
    Value::Array(v.0.iter().map(q).collect())
}

pub fn matrix(m: &Matrix) -> Value {
    Value::Array((0..m.dim()).map(|i| vector(&m.row(i))).collect())
}

pub fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Text form of `f` with basis 1-forms named by `name`.
pub fn form_text(f: &KForm, name: impl Fn(usize) -> String) -> String {
    let mut terms: Vec<(Vec<usize>, &Rational)> =
        f.terms().map(|(m, c)| (m.indices().collect(), c)).collect();
    terms.sort();
    let mut out = String::new();
    for (k, (ix, c)) in terms.into_iter().enumerate() {
        let mono = ix.iter().map(|&i| name(i)).collect::<Vec<_>>().join("^");
        let abs = to_string(&c.abs());
        out.push_str(match (k == 0, c.is_negative()) {
            (true, true) => "-",
            (true, false) => "",
            (false, true) => " - ",
            (false, false) => " + ",
        });
        match (mono.is_empty(), abs == "1") {
            (true, _) => out.push_str(&abs),
            (false, true) => out.push_str(&mono),
            (false, false) => out.push_str(&format!("{abs}*{mono}")),
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Names for forms on `ℝ ⊕ N`: index 0 is `first`, index `i` is `e{i}`.
pub fn lifted(first: &'static str) -> impl Fn(usize) -> String {
    move |i| if i == 0 { first.to_string() } else { format!("e{i}") }
}
