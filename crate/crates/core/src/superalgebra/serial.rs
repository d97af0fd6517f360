//! Line-oriented text format for half twist algebras.
//!
//! ```text
//! dim 2
//! alpha 1 + 0*z + 0*z^2 + 0*z^3
//! R 1/2 + ...
//! label 0 1 0          # index, name, parity
//! C 0 0 0 <value>
//! B 0 0 <value>
//! Binv ... / lam ... / tau ... / star ...
//! ```
//!
//! Entries are written in sorted order so the output is reproducible.
//! Reading yields a custom algebra.

use std::fmt::Write as _;

use crate::cyclo::Cyclo;
use crate::error::{Error, Result};
use crate::tensor::Tensor;

use super::{custom_from_tensors, CustomData, HalfTwistAlgebra};

const KINDS: [(&str, usize); 6] = [
    ("C", 3),
    ("B", 2),
    ("Binv", 2),
    ("lam", 4),
    ("tau", 2),
    ("star", 2),
];

pub fn to_text(a: &HalfTwistAlgebra) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "# family {}", a.family());
    let _ = writeln!(out, "dim {}", a.dim());
    let _ = writeln!(out, "alpha {}", a.alpha());
    let _ = writeln!(out, "R {}", a.r());
    for (i, (l, p)) in a.labels().iter().zip(a.parity()).enumerate() {
        let _ = writeln!(out, "label {i} {l} {p}");
    }
    let tensors: [Option<&Tensor>; 6] = [
        Some(a.c()),
        Some(a.b()),
        Some(a.b_inv()),
        Some(a.lam()),
        Some(a.tau()),
        a.star(),
    ];
    for ((name, _), t) in KINDS.iter().zip(tensors) {
        let Some(t) = t else { continue };
        for (idx, v) in t.sorted_entries() {
            let idx: Vec<String> = idx.iter().map(ToString::to_string).collect();
            let _ = writeln!(out, "{name} {} {v}", idx.join(" "));
        }
    }
    out
}

pub fn from_text(text: &str) -> Result<HalfTwistAlgebra> {
    let mut dim: Option<usize> = None;
    let mut alpha = None;
    let mut r = None;
    let mut labels: Vec<Option<(String, u8)>> = Vec::new();
    let mut entries: Vec<(usize, usize, Vec<usize>, Cyclo)> = Vec::new();
    let mut has_star = false;

    for (ln, raw) in text.lines().enumerate() {
        let line_no = ln + 1;
        let line = raw.split('#').next().unwrap_or("").trim_end();
        let body = line.trim_start();
        if body.is_empty() {
            continue;
        }
        let col0 = line.len() - body.len() + 1;
        let (key, rest) = body.split_once(char::is_whitespace).unwrap_or((body, ""));
        let rest_col = col0 + key.len() + 1;
        let value = |s: &str, col: usize| -> Result<Cyclo> {
            s.trim().parse::<Cyclo>().map_err(|e| match e {
                Error::Parse { column, message, .. } => {
                    Error::parse(line_no, col + column - 1, message)
                }
                other => other,
            })
        };
        let uint = |s: &str| -> Result<usize> {
            s.parse::<usize>()
                .map_err(|_| Error::parse(line_no, col0, format!("bad integer '{s}'")))
        };
        match key {
            "dim" => {
                let d = uint(rest.trim())?;
                dim = Some(d);
                labels = vec![None; d];
            }
            "alpha" => alpha = Some(value(rest, rest_col)?),
            "R" => r = Some(value(rest, rest_col)?),
            "label" => {
                let d = dim.ok_or_else(|| Error::parse(line_no, col0, "label before dim"))?;
                let parts: Vec<&str> = rest.split_whitespace().collect();
                if parts.len() != 3 {
                    return Err(Error::parse(line_no, col0, "expected 'label <index> <name> <parity>'"));
                }
                let i = uint(parts[0])?;
                let p = uint(parts[2])?;
                if i >= d || p > 1 {
                    return Err(Error::parse(line_no, col0, "label index or parity out of range"));
                }
                labels[i] = Some((parts[1].to_string(), p as u8));
            }
            _ => {
                let Some(kind) = KINDS.iter().position(|(n, _)| *n == key) else {
                    return Err(Error::parse(line_no, col0, format!("unknown key '{key}'")));
                };
                let d = dim.ok_or_else(|| Error::parse(line_no, col0, "entry before dim"))?;
                let rank = KINDS[kind].1;
                let mut parts = rest.splitn(rank + 1, char::is_whitespace);
                let mut idx = Vec::with_capacity(rank);
                for _ in 0..rank {
                    let i = uint(parts.next().unwrap_or(""))?;
                    if i >= d {
                        return Err(Error::parse(line_no, col0, format!("index {i} out of range")));
                    }
                    idx.push(i);
                }
                let tail = parts.next().unwrap_or("");
                let tail_col = rest_col + rest.len() - tail.len();
                let v = value(tail, tail_col)?;
                has_star |= key == "star";
                entries.push((line_no, kind, idx, v));
            }
        }
    }

    let d = dim.ok_or_else(|| Error::parse(1, 1, "missing 'dim' line"))?;
    let r = r.ok_or_else(|| Error::parse(1, 1, "missing 'R' line"))?;
    let mut parity = Vec::with_capacity(d);
    let mut names = Vec::with_capacity(d);
    for (i, l) in labels.into_iter().enumerate() {
        let (name, p) = l.unwrap_or_else(|| (format!("e{i}"), 0));
        names.push(name);
        parity.push(p);
    }
    let mut tensors: Vec<Tensor> = KINDS.iter().map(|&(_, k)| Tensor::zeros(k, d)).collect();
    for (_, kind, idx, v) in entries {
        tensors[kind].set(&idx, v);
    }
    let star = tensors.pop().filter(|_| has_star);
    let tau = tensors.pop().expect("kind");
    let lam = tensors.pop().expect("kind");
    let b_inv = tensors.pop().expect("kind");
    let b = tensors.pop().expect("kind");
    let c = tensors.pop().expect("kind");
    custom_from_tensors(CustomData {
        parity,
        c,
        b,
        b_inv: Some(b_inv),
        lam,
        tau,
        r,
        alpha,
        star,
        labels: Some(names),
    })
}
