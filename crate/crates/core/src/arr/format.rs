//! Plain-text arrangement format.
//!
//! ```text
//! dim 3
//! 1 0 0
//! 1 -1 0 | 2
//! 1 1/2 0 = 3
//! ```
//!
//! Blank lines and `#` comments are ignored. A trailing `| k` gives a
//! multiplicity, a trailing `= c` an affine offset.

use std::collections::HashMap;

use super::{normalize_form, AffineArrangement, Arrangement, Form, Multiarrangement};
use crate::error::{Error, Result};
use crate::exact::{parse_scalar, Scalar};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParsedArrangement {
    Central(Arrangement),
    Multi(Multiarrangement),
    Affine(AffineArrangement),
}

impl ParsedArrangement {
    /// The central arrangement this file describes: affine input is coned,
    /// multiplicities are dropped.
    pub fn central(&self) -> Arrangement {
        match self {
            ParsedArrangement::Central(a) => a.clone(),
            ParsedArrangement::Multi(m) => m.base().clone(),
            ParsedArrangement::Affine(a) => a.cone(),
        }
    }

    pub fn multi(&self) -> Multiarrangement {
        match self {
            ParsedArrangement::Multi(m) => m.clone(),
            other => other.central().simple(),
        }
    }
}

enum Extra {
    None,
    Mult(u32),
    Offset(Scalar),
}

pub fn parse(text: &str) -> Result<ParsedArrangement> {
    let mut dim: Option<usize> = None;
    let mut rows: Vec<(usize, Form, Extra)> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line_no = lineno + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: &str| Error::Parse {
            line: line_no,
            msg: msg.to_string(),
        };
        let Some(d) = dim else {
            let rest = line
                .strip_prefix("dim")
                .ok_or_else(|| err("expected `dim <n>` header"))?;
            dim = Some(rest.trim().parse().map_err(|_| err("bad dimension"))?);
            continue;
        };
        let (coeff_part, extra) = if let Some((c, k)) = line.split_once('|') {
            let k: u32 = k.trim().parse().map_err(|_| err("bad multiplicity"))?;
            (c, Extra::Mult(k))
        } else if let Some((c, o)) = line.split_once('=') {
            let o = parse_scalar(o).ok_or_else(|| err("bad offset"))?;
            (c, Extra::Offset(o))
        } else {
            (line, Extra::None)
        };
        let coeffs: Vec<Scalar> = coeff_part
            .split_whitespace()
            .map(|t| parse_scalar(t).ok_or_else(|| err(&format!("bad rational `{t}`"))))
            .collect::<Result<_>>()?;
        if coeffs.len() != d {
            return Err(err(&format!(
                "expected {d} coefficients, found {}",
                coeffs.len()
            )));
        }
        if normalize_form(&coeffs).is_none() {
            return Err(err("zero form"));
        }
        rows.push((line_no, coeffs, extra));
    }
    let dim = dim.ok_or(Error::Parse {
        line: 1,
        msg: "missing `dim` header".into(),
    })?;
    let has_mult = rows.iter().any(|r| matches!(r.2, Extra::Mult(_)));
    let has_offset = rows.iter().any(|r| matches!(r.2, Extra::Offset(_)));
    if has_mult && has_offset {
        let line = rows
            .iter()
            .find(|r| matches!(r.2, Extra::Offset(_)))
            .map_or(1, |r| r.0);
        return Err(Error::Parse {
            line,
            msg: "cannot mix multiplicities and affine offsets".into(),
        });
    }

    if has_offset {
        let mut seen: HashMap<(Form, Scalar), usize> = HashMap::new();
        let mut hyps = Vec::new();
        for (line, f, e) in rows {
            let c = match e {
                Extra::Offset(c) => c,
                _ => Scalar::from_integer(0.into()),
            };
            // normalize through the constructor on a single hyperplane
            let single = AffineArrangement::new(dim, vec![(f.clone(), c.clone())])?;
            let key = single.hyperplanes()[0].clone();
            if seen.insert(key, line).is_some() {
                return Err(Error::DuplicateHyperplane { line });
            }
            hyps.push((f, c));
        }
        return Ok(ParsedArrangement::Affine(AffineArrangement::new(
            dim, hyps,
        )?));
    }

    let mut seen: HashMap<Form, usize> = HashMap::new();
    let mut forms = Vec::new();
    let mut mult = Vec::new();
    for (line, f, e) in rows {
        let n = normalize_form(&f).expect("checked nonzero");
        if seen.insert(n, line).is_some() {
            return Err(Error::DuplicateHyperplane { line });
        }
        forms.push(f);
        mult.push(match e {
            Extra::Mult(k) => k,
            _ => 1,
        });
    }
    let base = Arrangement::new(dim, forms)?;
    if has_mult {
        Ok(ParsedArrangement::Multi(Multiarrangement::new(base, mult)?))
    } else {
        Ok(ParsedArrangement::Central(base))
    }
}
