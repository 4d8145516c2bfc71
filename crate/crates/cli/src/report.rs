//! Reports are built once as a JSON tree and rendered either verbatim
//! (`--json`) or as indented text, so both carry the same numbers.
//! Indices are 1-based in both.

use jjcoh_core::linalg::format_rational;
use jjcoh_core::{Cochain, RatMatrix, Rational, SubspaceBasis};
use num_traits::Zero;
use serde_json::{json, Map, Value};

pub fn q(x: &Rational) -> Value {
    Value::String(format_rational(x))
}

/// Sparse vector: `[{index, name, coeff}]` over nonzero entries.
pub fn vector(v: &[Rational], names: &[String]) -> Value {
    Value::Array(
        v.iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(k, x)| json!({"index": k + 1, "name": names[k], "coeff": q(x)}))
            .collect(),
    )
}

/// Sparse cochain: `[{args, out, coeff}]`.
pub fn cochain(c: &Cochain) -> Value {
    Value::Array(
        c.support()
            .into_iter()
            .map(|(args, k, x)| {
                json!({
                    "args": args.iter().map(|i| i + 1).collect::<Vec<_>>(),
                    "out": k + 1,
                    "coeff": q(&x),
                })
            })
            .collect(),
    )
}

/// Sparse matrix: `[{row, col, coeff}]`.
pub fn matrix(m: &RatMatrix) -> Value {
    let mut out = Vec::new();
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            let x = m.get(r, c);
            if !x.is_zero() {
                out.push(json!({"row": r + 1, "col": c + 1, "coeff": q(x)}));
            }
        }
    }
    Value::Array(out)
}

/// Flattened `n×n` endomorphisms or forms (index `r·n + c`).
pub fn square_basis(b: &SubspaceBasis, n: usize) -> Value {
    Value::Array(
        b.vectors()
            .into_iter()
            .map(|v| matrix(&RatMatrix::new(n, n, v).expect("n·n entries")))
            .collect(),
    )
}

pub fn cochain_basis(b: &SubspaceBasis, p: usize, n: usize, m: usize) -> Value {
    Value::Array(
        b.vectors()
            .into_iter()
            .map(|v| cochain(&Cochain::new(p, n, m, v).expect("flat cochain")))
            .collect(),
    )
}

pub fn vector_basis(b: &SubspaceBasis, names: &[String]) -> Value {
    Value::Array(b.vectors().iter().map(|v| vector(v, names)).collect())
}

pub fn render(report: &Value, machine: bool) -> String {
    if machine {
        let mut s = serde_json::to_string_pretty(report).expect("serialisable");
        s.push('\n');
        s
    } else {
        let mut s = String::new();
        human(&mut s, report, 0);
        s
    }
}

const WIDTH: usize = 100;

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("none".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) if !s.contains('\n') => Some(s.clone()),
        _ => None,
    }
}

fn inline(v: &Value) -> Option<String> {
    let s = match v {
        Value::Array(xs) => {
            let parts = xs.iter().map(inline).collect::<Option<Vec<_>>>()?;
            format!("[{}]", parts.join(", "))
        }
        Value::Object(m) => {
            let parts = m
                .iter()
                .map(|(k, x)| inline(x).map(|s| format!("{k}={s}")))
                .collect::<Option<Vec<_>>>()?;
            format!("({})", parts.join(" "))
        }
        other => scalar(other)?,
    };
    (s.len() <= WIDTH).then_some(s)
}

fn human(out: &mut String, v: &Value, indent: usize) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(m) => object(out, m, indent),
        Value::Array(xs) => {
            for x in xs {
                match inline(x) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}-\n"));
                        human(out, x, indent + 1);
                    }
                }
            }
        }
        Value::String(s) => {
            for line in s.lines() {
                out.push_str(&format!("{pad}{line}\n"));
            }
        }
        other => out.push_str(&format!("{pad}{}\n", scalar(other).unwrap_or_default())),
    }
}

fn object(out: &mut String, m: &Map<String, Value>, indent: usize) {
    let pad = "  ".repeat(indent);
    for (k, x) in m {
        match inline(x) {
            Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
            None => {
                out.push_str(&format!("{pad}{k}:\n"));
                human(out, x, indent + 1);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use jjcoh_core::linalg::{int, rat};

    #[test]
    fn sparse_vectors_are_one_based() {
        let names = vec!["e1".to_string(), "e2".to_string()];
        assert_eq!(
            vector(&[int(0), rat(-1, 2)], &names),
            json!([{"index": 2, "name": "e2", "coeff": "-1/2"}])
        );
    }

    #[test]
    fn human_layout() {
        let v = json!({"a": 1, "b": [1, 2], "c": {"d": true}, "t": "x\ny"});
        assert_eq!(render(&v, false), "a: 1\nb: [1, 2]\nc: (d=true)\nt:\n  x\n  y\n");
    }
}
