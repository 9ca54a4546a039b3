//! Text formats for modules and dimension vectors.
//!
//! ```text
//! module M over N3
//! sum P3 P3 S1 S3        # named string modules: P<v>, I<v>, S<v>, R(<arrow>)
//! string gamma           # a string module
//! trivial 2              # a simple module
//! dim 1 3                # explicit part: vertex dimensions ...
//! map gamma 1 0 0 ; 0 1 0 ; 0 0 0   # ... and matrices, rows separated by `;`
//! ```
//!
//! The explicit part (if any) comes first, followed by the named summands in
//! the order written; everything is combined by direct sum.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::ffla::{Matrix, PrimeField};
use crate::quiver::{BoundQuiver, DimVector};
use crate::rep::Representation;
use crate::strings::{
    injective_string, parse_letters, projective_string, radical_summand_string, string_equiv, string_module, validate_string,
    StringWord,
};

/// A named summand: `P3`, `I2`, `S1` or `R(alpha)`.
pub fn named_string(q: &BoundQuiver, name: &str) -> Result<StringWord> {
    if let Some(arrow) = name.strip_prefix("R(").and_then(|s| s.strip_suffix(')')) {
        let a = q.arrow_id(arrow).ok_or_else(|| Error::UnknownArrow(arrow.into()))?;
        return radical_summand_string(q, a);
    }
    let mut chars = name.chars();
    let kind = chars.next().ok_or_else(|| Error::UnknownVertex(name.into()))?;
    let vname = chars.as_str();
    let v = q.vertex_id(vname).ok_or_else(|| Error::UnknownVertex(vname.into()))?;
    match kind {
        'P' => projective_string(q, v),
        'I' => injective_string(q, v),
        'S' => Ok(StringWord::trivial(v)),
        _ => Err(Error::UnknownVertex(name.into())),
    }
}

/// Inverse of [`named_string`], preferring `P<v>`, then `S<v>`, `R(<a>)`,
/// `I<v>`; other strings are shown as the word in brackets.
pub fn string_label(q: &BoundQuiver, w: &StringWord) -> String {
    let n = q.vertex_count();
    let same = |x: Result<StringWord>| x.is_ok_and(|x| string_equiv(&x, w));
    if let Some(v) = (0..n).find(|&v| same(projective_string(q, v))) {
        return format!("P{}", q.vertex_name(v));
    }
    if let StringWord::Trivial { vertex, .. } = w {
        return format!("S{}", q.vertex_name(*vertex));
    }
    if let Some(a) = (0..q.arrow_count()).find(|&a| same(radical_summand_string(q, a))) {
        return format!("R({})", q.arrow_name(a));
    }
    if let Some(v) = (0..n).find(|&v| same(injective_string(q, v))) {
        return format!("I{}", q.vertex_name(v));
    }
    format!("[{}]", w.display(q))
}

fn at(line: usize) -> impl Fn(Error) -> Error {
    move |e| match e {
        Error::Parse { .. } => e,
        other => Error::Parse { line, msg: other.to_string() },
    }
}

/// Parses a module file over `q`; relations are verified.
pub fn parse_module(text: &str, q: &Arc<BoundQuiver>, field: PrimeField) -> Result<Representation> {
    let n = q.vertex_count();
    let mut dims = vec![0usize; n];
    let mut explicit = false;
    let mut map_lines: Vec<(usize, usize, Vec<Vec<i64>>)> = Vec::new();
    let mut summands: Vec<(usize, StringWord)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("");
        let toks: Vec<&str> = content.split_whitespace().collect();
        let Some((&head, rest)) = toks.split_first() else { continue };
        match head {
            "module" => {
                if rest.len() != 3 || rest[1] != "over" {
                    return Err(Error::Parse { line, msg: "expected `module <name> over <quiver>`".into() });
                }
                if let Some(qn) = q.name() {
                    if qn != rest[2] {
                        return Err(Error::Parse { line, msg: format!("module is over `{}`, quiver is `{qn}`", rest[2]) });
                    }
                }
            }
            "dim" => {
                let [v, d] = rest else {
                    return Err(Error::Parse { line, msg: "expected `dim <vertex> <n>`".into() });
                };
                let v = q.vertex_id(v).ok_or(Error::Unknown { line, kind: "vertex", name: (*v).into() })?;
                dims[v] = d.parse().map_err(|_| Error::Parse { line, msg: format!("bad dimension `{d}`") })?;
                explicit = true;
            }
            "map" => {
                let Some((&arrow, entries)) = rest.split_first() else {
                    return Err(Error::Parse { line, msg: "expected `map <arrow> <rows>`".into() });
                };
                let a = q.arrow_id(arrow).ok_or(Error::Unknown { line, kind: "arrow", name: arrow.into() })?;
                let joined = entries.join(" ");
                let rows = joined
                    .split(';')
                    .map(|r| {
                        r.split_whitespace()
                            .map(|x| x.parse::<i64>().map_err(|_| Error::Parse { line, msg: format!("bad entry `{x}`") }))
                            .collect::<Result<Vec<i64>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                let rows: Vec<Vec<i64>> = rows.into_iter().filter(|r| !r.is_empty()).collect();
                map_lines.push((line, a, rows));
                explicit = true;
            }
            "sum" => {
                for name in rest {
                    summands.push((line, named_string(q, name).map_err(at(line))?));
                }
            }
            "string" => {
                let letters = parse_letters(q, &rest.join(" ")).map_err(at(line))?;
                summands.push((line, validate_string(q, &letters).map_err(at(line))?));
            }
            "trivial" => {
                let [v] = rest else {
                    return Err(Error::Parse { line, msg: "expected `trivial <vertex>`".into() });
                };
                let v = q.vertex_id(v).ok_or(Error::Unknown { line, kind: "vertex", name: (*v).into() })?;
                summands.push((line, StringWord::trivial(v)));
            }
            _ => return Err(Error::Parse { line, msg: format!("unrecognized directive `{head}`") }),
        }
    }
    let mut result = Representation::zero(q.clone(), field);
    if explicit {
        let mut maps: Vec<Matrix> =
            q.arrows().iter().map(|a| Matrix::zeros(field, dims[a.target], dims[a.source])).collect();
        for (line, a, rows) in map_lines {
            let arr = q.arrow(a);
            let (r, c) = (dims[arr.target], dims[arr.source]);
            if rows.len() != r || rows.iter().any(|x| x.len() != c) {
                return Err(Error::Parse { line, msg: format!("matrix of `{}` must be {r}x{c}", arr.name) });
            }
            maps[a] = Matrix::from_rows(field, &rows, c);
        }
        result = Representation::new(q.clone(), field, dims, maps)?;
    }
    for (line, w) in summands {
        let m = string_module(q, &w, field).map_err(at(line))?;
        result = result.direct_sum(&m.rep)?;
    }
    Ok(result)
}

/// Emits a module file with explicit matrices; re-parses to an equal value.
pub fn module_to_text(name: &str, m: &Representation) -> String {
    let q = m.quiver();
    let mut s = format!("module {name} over {}\n", q.name().unwrap_or("Q"));
    for (v, &d) in m.dims().iter().enumerate() {
        s.push_str(&format!("dim {} {d}\n", q.vertex_name(v)));
    }
    for (a, mat) in m.maps().iter().enumerate() {
        if mat.rows() == 0 || mat.cols() == 0 || mat.is_zero() {
            continue;
        }
        let f = mat.field();
        let rows: Vec<String> = (0..mat.rows())
            .map(|r| mat.row(r).iter().map(|&x| f.to_i64(x).to_string()).collect::<Vec<_>>().join(" "))
            .collect();
        s.push_str(&format!("map {} {}\n", q.arrow_name(a), rows.join(" ; ")));
    }
    s
}

/// Parses `2,0,1` (all vertices in order) or `1=2,3=1` (by vertex name).
pub fn parse_dim_vector(text: &str, q: &BoundQuiver) -> Result<DimVector> {
    let bad = |msg: String| Error::Parse { line: 0, msg };
    let parts: Vec<&str> = text.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    let mut d = vec![0usize; q.vertex_count()];
    if parts.iter().any(|p| p.contains('=')) {
        for p in parts {
            let (v, k) = p.split_once('=').ok_or_else(|| bad(format!("expected `vertex=n`, got `{p}`")))?;
            let v = q.vertex_id(v.trim()).ok_or_else(|| Error::UnknownVertex(v.trim().into()))?;
            d[v] = k.trim().parse().map_err(|_| bad(format!("bad entry `{k}`")))?;
        }
    } else {
        if parts.len() != q.vertex_count() {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a quiver with {} vertices",
                parts.len(),
                q.vertex_count()
            )));
        }
        for (slot, p) in d.iter_mut().zip(parts) {
            *slot = p.parse().map_err(|_| bad(format!("bad entry `{p}`")))?;
        }
    }
    Ok(DimVector(d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::iso_probable;
    use crate::samples;

    fn f() -> PrimeField {
        PrimeField::new(101).unwrap()
    }

    #[test]
    fn sum_and_matrices_agree() {
        let q = Arc::new(samples::n3());
        let a = parse_module(samples::N3_MODULE, &q, f()).unwrap();
        let b = parse_module(samples::N3_MODULE_MATRICES, &q, f()).unwrap();
        assert_eq!(a.dims(), &[3, 0, 3]);
        assert!(iso_probable(&a, &b, 16, 0).unwrap().is_iso());
        let g = q.arrow_id("gamma").unwrap();
        assert_eq!(b.map(g).rank(), 2);
    }

    #[test]
    fn relation_violation_is_reported() {
        let q = Arc::new(samples::n3());
        let text = "module X over N3\ndim 1 1\ndim 2 1\ndim 3 1\nmap alpha 1\nmap beta 1\n";
        let e = parse_module(text, &q, f()).unwrap_err();
        assert_eq!(e, Error::RelationViolated { later: "beta".into(), earlier: "alpha".into() });
    }

    #[test]
    fn parse_errors_carry_lines() {
        let q = Arc::new(samples::n3());
        let e = parse_module("module X over N3\nsum P9\n", &q, f()).unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }), "{e}");
        let e = parse_module("module X over N3\ndim 1 2\nmap gamma 1 0\n", &q, f()).unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, .. }), "{e}");
        let e = parse_module("module X over CT5\n", &q, f()).unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, .. }));
    }

    #[test]
    fn module_round_trip() {
        let q = Arc::new(samples::ct5());
        for text in [samples::CT5_MODULE, samples::CT5_MODULE_SUM] {
            let m = parse_module(text, &q, f()).unwrap();
            let back = parse_module(&module_to_text("M", &m), &q, f()).unwrap();
            assert_eq!(back, m);
        }
    }

    #[test]
    fn dim_vectors() {
        let q = samples::n3();
        assert_eq!(parse_dim_vector("2,0,1", &q).unwrap().0, vec![2, 0, 1]);
        assert_eq!(parse_dim_vector("1=2, 3=1", &q).unwrap().0, vec![2, 0, 1]);
        assert!(parse_dim_vector("1,2", &q).is_err());
        assert!(parse_dim_vector("9=1", &q).is_err());
    }
}
