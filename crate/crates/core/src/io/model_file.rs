//! Line-oriented model files.
//!
//! ```text
//! kzero-model 1
//! g 2
//! unit 0
//! star_unit 2
//! basis e0 0 2
//! mul 1 1 2 2/1
//! fm 0/1 0/1 1/1
//! ```
//!
//! Records appear in that order. `basis` lines are numbered implicitly,
//! `mul` triples are sparse and sorted, `fm` has one dense row per basis
//! vector. Blank lines and `#` comments are ignored on input and never
//! written, so export is canonical.

use std::fmt::Write as _;

use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::exact::rational::{format_rational, parse_rational};
use crate::exact::{Matrix, Rational};
use crate::model::{BasisVector, Bidegree, ModelAlgebra};

pub const MODEL_HEADER: &str = "kzero-model 1";

pub fn write_model(m: &ModelAlgebra) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{MODEL_HEADER}");
    let _ = writeln!(out, "g {}", m.g());
    let _ = writeln!(out, "unit {}", m.unit_index());
    let _ = writeln!(out, "star_unit {}", m.star_unit_index());
    for b in m.basis() {
        let _ = writeln!(out, "basis {} {} {}", b.label, b.bidegree.p, b.bidegree.q);
    }
    let mut mul = m.mul_entries();
    mul.sort_by_key(|e| (e.0, e.1, e.2));
    for (i, j, k, c) in mul {
        let _ = writeln!(out, "mul {i} {j} {k} {}", format_rational(&c));
    }
    for r in 0..m.dim() {
        let row: Vec<String> = (0..m.dim())
            .map(|c| format_rational(m.fm().get(r, c)))
            .collect();
        let _ = writeln!(out, "fm {}", row.join(" "));
    }
    out
}

/// Hex SHA-256 of the canonical file form.
pub fn fingerprint(m: &ModelAlgebra) -> String {
    hex::encode(Sha256::digest(write_model(m).as_bytes()))
}

fn err(line: usize, field: &str, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        field: field.to_string(),
        message: message.into(),
    }
}

fn int_field(line: usize, field: &str, s: &str) -> Result<usize> {
    s.parse().map_err(|_| {
        err(
            line,
            field,
            format!("expected a non-negative integer, got `{s}`"),
        )
    })
}

fn rational_field(line: usize, field: &str, s: &str) -> Result<Rational> {
    parse_rational(s).map_err(|e| err(line, field, e.to_string()))
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Section {
    Header,
    G,
    Unit,
    StarUnit,
    Basis,
    Mul,
    Fm,
}

impl Section {
    fn of(key: &str) -> Option<Section> {
        Some(match key {
            "g" => Section::G,
            "unit" => Section::Unit,
            "star_unit" => Section::StarUnit,
            "basis" => Section::Basis,
            "mul" => Section::Mul,
            "fm" => Section::Fm,
            _ => return None,
        })
    }

    fn repeats(&self) -> bool {
        matches!(self, Section::Basis | Section::Mul | Section::Fm)
    }
}

/// Parses a model file. Errors carry the 1-based line and the record name.
/// The result is shape-checked only; run `validate` for the algebra laws.
pub fn read_model(text: &str) -> Result<ModelAlgebra> {
    let mut section = Section::Header;
    let mut seen_header = false;
    let (mut g, mut unit, mut star_unit) = (None, None, None);
    let mut basis: Vec<BasisVector> = Vec::new();
    let mut mul: Vec<(usize, usize, usize, Rational)> = Vec::new();
    let mut fm_rows: Vec<Vec<Rational>> = Vec::new();
    let mut last_line = 0;

    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        last_line = line;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if !seen_header {
            if content != MODEL_HEADER {
                return Err(err(line, "header", format!("expected `{MODEL_HEADER}`")));
            }
            seen_header = true;
            continue;
        }
        let mut parts = content.split_whitespace();
        let key = parts.next().unwrap_or_default();
        let args: Vec<&str> = parts.collect();
        let next = Section::of(key).ok_or_else(|| err(line, key, "unknown record"))?;
        if next < section || (next == section && !next.repeats()) {
            return Err(err(line, key, "record out of order or repeated"));
        }
        section = next;
        let arity = |k: usize| -> Result<()> {
            if args.len() == k {
                Ok(())
            } else {
                Err(err(
                    line,
                    key,
                    format!("expected {k} values, got {}", args.len()),
                ))
            }
        };
        match next {
            Section::Header => unreachable!(),
            Section::G => {
                arity(1)?;
                let v = int_field(line, "g", args[0])?;
                if v == 0 {
                    return Err(err(line, "g", "g must be at least 1"));
                }
                g = Some(v);
            }
            Section::Unit => {
                arity(1)?;
                unit = Some(int_field(line, "unit", args[0])?);
            }
            Section::StarUnit => {
                arity(1)?;
                star_unit = Some(int_field(line, "star_unit", args[0])?);
            }
            Section::Basis => {
                arity(3)?;
                let gv = g.ok_or_else(|| err(line, "g", "missing before basis"))?;
                let p = int_field(line, "basis.p", args[1])?;
                let q = int_field(line, "basis.q", args[2])?;
                if p > gv || q > gv {
                    return Err(err(
                        line,
                        "basis",
                        format!("bidegree ({p},{q}) outside 0..={gv}"),
                    ));
                }
                if basis.iter().any(|b| b.label == args[0]) {
                    return Err(err(
                        line,
                        "basis.label",
                        format!("duplicate label `{}`", args[0]),
                    ));
                }
                basis.push(BasisVector {
                    label: args[0].to_string(),
                    bidegree: Bidegree::new(p, q),
                });
            }
            Section::Mul => {
                arity(4)?;
                let d = basis.len();
                let mut idx = [0usize; 3];
                for (slot, (name, s)) in idx
                    .iter_mut()
                    .zip(["mul.i", "mul.j", "mul.k"].iter().zip(&args))
                {
                    *slot = int_field(line, name, s)?;
                    if *slot >= d {
                        return Err(err(line, name, format!("index {slot} out of range 0..{d}")));
                    }
                }
                let c = rational_field(line, "mul.c", args[3])?;
                mul.push((idx[0], idx[1], idx[2], c));
            }
            Section::Fm => {
                let d = basis.len();
                arity(d)?;
                let row = args
                    .iter()
                    .map(|s| rational_field(line, "fm", s))
                    .collect::<Result<Vec<_>>>()?;
                fm_rows.push(row);
            }
        }
    }

    let end = last_line.max(1);
    if !seen_header {
        return Err(err(end, "header", "empty model file"));
    }
    let g = g.ok_or_else(|| err(end, "g", "missing"))?;
    let unit = unit.ok_or_else(|| err(end, "unit", "missing"))?;
    let star_unit = star_unit.ok_or_else(|| err(end, "star_unit", "missing"))?;
    let d = basis.len();
    if d == 0 {
        return Err(err(end, "basis", "no basis vectors"));
    }
    if unit >= d || star_unit >= d {
        return Err(err(end, "unit", format!("unit indices must be below {d}")));
    }
    if fm_rows.len() != d {
        return Err(err(
            end,
            "fm",
            format!("expected {d} rows, got {}", fm_rows.len()),
        ));
    }
    let fm = Matrix::from_rows(d, fm_rows)?;
    ModelAlgebra::new(g, basis, mul, fm, unit, star_unit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Builder;

    #[test]
    fn export_import_export_is_identical() {
        for b in Builder::ALL {
            for g in b.min_g()..=3 {
                let m = b.build(g).unwrap();
                let text = write_model(&m);
                let back = read_model(&text).unwrap();
                assert_eq!(back, m);
                assert_eq!(write_model(&back), text);
            }
        }
    }

    #[test]
    fn theta_one_file() {
        let text = write_model(&Builder::Theta.build(1).unwrap());
        let expected = "kzero-model 1\ng 1\nunit 0\nstar_unit 1\nbasis e0 0 1\nbasis e1 1 0\n\
                        mul 0 0 0 1/1\nmul 0 1 1 1/1\nmul 1 0 1 1/1\nfm 0/1 1/1\nfm -1/1 0/1\n";
        assert_eq!(text, expected);
    }

    #[test]
    fn errors_name_line_and_field() {
        let good = write_model(&Builder::Theta.build(1).unwrap());
        let cases = [
            (good.replace("mul 0 1 1 1/1", "mul 0 1 1 1/0"), 8, "mul.c"),
            (good.replace("mul 0 1 1 1/1", "mul 0 5 1 1/1"), 8, "mul.j"),
            (good.replace("fm 0/1 1/1", "fm 0/1"), 10, "fm"),
            (good.replace("g 1", "g x"), 2, "g"),
            (good.replace("basis e1 1 0", "basis e1 1 4"), 6, "basis"),
            (good.replace("unit 0\n", "unit 0\nbogus 1\n"), 4, "bogus"),
            (good.replace(MODEL_HEADER, "nope"), 1, "header"),
        ];
        for (text, line, field) in cases {
            match read_model(&text) {
                Err(Error::Parse {
                    line: l, field: f, ..
                }) => {
                    assert_eq!((l, f.as_str()), (line, field), "{text}");
                }
                other => panic!("expected a parse error, got {other:?}"),
            }
        }
    }

    #[test]
    fn comments_and_blank_lines_are_ignored() {
        let m = Builder::Theta.build(2).unwrap();
        let text = write_model(&m).replace("g 2\n", "\n# dimension\ng 2  # trailing\n\n");
        assert_eq!(read_model(&text).unwrap(), m);
    }

    #[test]
    fn fingerprint_tracks_content() {
        let a = fingerprint(&Builder::Theta.build(2).unwrap());
        assert_eq!(a.len(), 64);
        assert_eq!(a, fingerprint(&Builder::Theta.build(2).unwrap()));
        assert_ne!(a, fingerprint(&Builder::Theta.build(3).unwrap()));
    }
}
