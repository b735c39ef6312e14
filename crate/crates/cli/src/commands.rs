use std::path::Path;

use arrfree::arr::{parse, Arrangement, FormsJson, ParsedArrangement};
use arrfree::exact::fmt_scalar;
use arrfree::freeness::{
    recursive_free, recursive_free_with, FreeOptions, FreenessReport, Verdict,
};
use arrfree::hilbert::{hilbformula_check, solomon_terao_chi, FreeHilbertData};
use arrfree::lattice::{build_lattice, char_poly, count_points_mod_p, reduced_char_poly};
use arrfree::logmod::{codim_restriction_image, rank2_multi_exponents};
use arrfree::weyl::{
    build_family, exponent_data, verify_er, FamilyKind, FamilySpec, RootSystemDesc,
};
use num_bigint::BigInt;
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::{Command, FamilyArgs, FamilyName, Format};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Input {
        path: String,
        source: arrfree::Error,
    },
    #[error(transparent)]
    Core(#[from] arrfree::Error),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok = 0,
    Fail = 2,
    Undetermined = 3,
}

pub struct Output {
    pub stdout: Option<String>,
    pub summary: String,
    pub status: Status,
}

fn json_out<T: Serialize>(v: &T, summary: String, status: Status) -> Result<Output, CliError> {
    // Value maps are ordered, so keys come out sorted
    let value = serde_json::to_value(v)?;
    Ok(Output {
        stdout: Some(serde_json::to_string_pretty(&value)? + "\n"),
        summary,
        status,
    })
}

fn load(path: &Path) -> Result<ParsedArrangement, CliError> {
    let p = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: p.clone(),
        source,
    })?;
    parse(&text).map_err(|source| CliError::Input { path: p, source })
}

fn check_hyperplane(a: &Arrangement, h: usize) -> Result<(), CliError> {
    if h >= a.len() {
        return Err(CliError::Usage(format!(
            "hyperplane {h} out of range for {} hyperplanes",
            a.len()
        )));
    }
    Ok(())
}

fn verdict_name(v: Verdict) -> &'static str {
    match v {
        Verdict::Free => "free",
        Verdict::NotFree => "not free",
        Verdict::Undetermined => "undetermined",
    }
}

fn verdict_status(v: Verdict) -> Status {
    match v {
        Verdict::Free => Status::Ok,
        Verdict::NotFree => Status::Fail,
        Verdict::Undetermined => Status::Undetermined,
    }
}

fn report_value(r: &FreenessReport) -> Result<Value, CliError> {
    let mut v = serde_json::to_value(r)?;
    if let (Some(c), Value::Object(map)) = (r.codim(), &mut v) {
        map.insert("codim".into(), json!(c));
    }
    Ok(v)
}

fn family_spec(args: &FamilyArgs) -> Result<FamilySpec, CliError> {
    let desc: RootSystemDesc = args.root_type.parse()?;
    Ok(match args.family {
        FamilyName::Weyl => FamilySpec::weyl(desc),
        FamilyName::Shi => FamilySpec::shi(desc, args.m),
        FamilyName::Catalan => FamilySpec::catalan(desc, args.m),
        FamilyName::Interval => match (args.p, args.q) {
            (Some(p), Some(q)) => FamilySpec {
                desc,
                kind: FamilyKind::Interval { p, q },
            },
            _ => {
                return Err(CliError::Usage(
                    "--family interval needs --p and --q".into(),
                ))
            }
        },
        FamilyName::Interp => {
            FamilySpec::interpolating(desc, args.ideal.clone().unwrap_or_default(), args.m)
        }
    })
}

pub fn run(cmd: Command) -> Result<Output, CliError> {
    match cmd {
        Command::Charpoly { file, prime } => {
            let a = load(&file)?.central();
            let chi = char_poly(&a);
            let mut v = json!({ "dim": a.dim(), "hyperplanes": a.len(), "chi": chi });
            if let Ok(chi0) = reduced_char_poly(&a) {
                v["chi0"] = json!(chi0);
            }
            let mut status = Status::Ok;
            if let Some(p) = prime {
                let count = count_points_mod_p(&a, p)?;
                let at_p = chi.eval(&BigInt::from(p));
                let agrees = at_p == BigInt::from(count);
                if !agrees {
                    status = Status::Fail;
                }
                v["count"] = json!({ "prime": p, "points": count, "chi_at_prime": at_p.to_string(), "agrees": agrees });
            }
            json_out(&v, format!("chi(t) = {chi}"), status)
        }
        Command::Lattice { file } => {
            let a = load(&file)?.central();
            let l = build_lattice(&a);
            json_out(
                &l.to_json(),
                format!("{} flats, rank {}", l.len(), l.rank()),
                Status::Ok,
            )
        }
        Command::Restrict { file, hyperplane } => {
            let a = load(&file)?.central();
            check_hyperplane(&a, hyperplane)?;
            let (m, sources) = a.restrict_with_sources(hyperplane);
            let v = json!({ "restriction": FormsJson::from(&m), "sources": sources });
            json_out(
                &v,
                format!("{} hyperplanes, |k| = {}", m.len(), m.total()),
                Status::Ok,
            )
        }
        Command::Exp2 { file } => {
            let (m, r) = load(&file)?.multi().essentialize();
            if r != 2 {
                return Err(CliError::Usage(format!("expected rank 2, got rank {r}")));
            }
            let e = rank2_multi_exponents(&m)?;
            json_out(&e, format!("exponents {:?}", e.exponents), Status::Ok)
        }
        Command::Free {
            file,
            hyperplane,
            hint,
        } => {
            let a = load(&file)?.central();
            if let Some(h) = hyperplane {
                check_hyperplane(&a, h)?;
            }
            let r = recursive_free_with(&a, &FreeOptions { hyperplane, hint })?;
            let summary = match (&r.exponents, r.codim()) {
                (Some(e), _) => format!("free, exponents {e:?}"),
                (None, Some(c)) => format!("{}, codim {c}", verdict_name(r.verdict)),
                (None, None) => verdict_name(r.verdict).to_string(),
            };
            json_out(&report_value(&r)?, summary, verdict_status(r.verdict))
        }
        Command::Codim { file, hyperplane } => {
            let a = load(&file)?.central();
            check_hyperplane(&a, hyperplane)?;
            let (a, r) = if a.rank() == a.dim() {
                (a.clone(), a.rank())
            } else {
                a.essentialize()
            };
            if r != 3 {
                return Err(CliError::Usage(format!("expected rank 3, got rank {r}")));
            }
            let report = codim_restriction_image(&a, hyperplane)?;
            let chi0 = reduced_char_poly(&a)?;
            let (d2, d3) = report.multi_exponents;
            let closed = chi0.eval(&BigInt::from(0)) - BigInt::from(d2 * d3);
            let agrees = closed == BigInt::from(report.codim);
            let mut v = serde_json::to_value(&report)?;
            v["chi0"] = json!(chi0);
            v["closed_form"] = json!(closed.to_string());
            v["agrees"] = json!(agrees);
            let status = if agrees { Status::Ok } else { Status::Fail };
            json_out(
                &v,
                format!("codim {} (closed form {closed})", report.codim),
                status,
            )
        }
        Command::StCheck { file } => {
            let a = load(&file)?.central();
            let r = recursive_free(&a)?;
            let chi = char_poly(&a);
            let Some(e) = r.exponents.clone() else {
                let v = json!({ "verdict": r.verdict, "chi": chi });
                return json_out(
                    &v,
                    format!("{}: no free exponents", verdict_name(r.verdict)),
                    verdict_status(r.verdict),
                );
            };
            let st = solomon_terao_chi(&FreeHilbertData::new(e.clone()))?;
            let agrees = st == chi;
            let v = json!({ "verdict": r.verdict, "exponents": e, "chi": chi, "solomon_terao": st, "agrees": agrees });
            let status = if agrees { Status::Ok } else { Status::Fail };
            json_out(&v, format!("limit {st}, agrees {agrees}"), status)
        }
        Command::HilbCheck {
            file,
            hyperplane,
            bound,
        } => {
            let a = load(&file)?.central();
            check_hyperplane(&a, hyperplane)?;
            let bound = bound.unwrap_or(a.len() as i64 + 5);
            let r = hilbformula_check(&a, hyperplane, bound)?;
            let bad = r.disagreements().count();
            let status = if r.agrees { Status::Ok } else { Status::Fail };
            json_out(
                &r,
                format!("{} coefficients, {bad} disagree", r.coefficients.len()),
                status,
            )
        }
        Command::Roots { root_type } => {
            let d: RootSystemDesc = root_type.parse()?;
            let ed = exponent_data(&d);
            let heights: Vec<i64> = (0..d.positive_roots.len()).map(|i| d.height(i)).collect();
            let v = json!({
                "type": d.to_string(),
                "positive_roots": d.positive_roots,
                "simple_roots": d.simple_roots,
                "simple_coords": d.simple_coords,
                "heights": heights,
                "exponents": ed.exponents,
                "coxeter_number": ed.coxeter_number,
            });
            json_out(
                &v,
                format!("{d}: {} positive roots", heights.len()),
                Status::Ok,
            )
        }
        Command::Family { family, format } => {
            let spec = family_spec(&family)?;
            let aff = build_family(&spec)?;
            let summary = format!("{spec}: {} hyperplanes", aff.len());
            match format {
                Format::Arr => Ok(Output {
                    stdout: Some(format!("# {spec}\n{}", aff.to_text())),
                    summary,
                    status: Status::Ok,
                }),
                Format::Json => {
                    let planes: Vec<Value> = aff
                        .hyperplanes()
                        .iter()
                        .map(|(f, c)| json!({ "form": f.iter().map(fmt_scalar).collect::<Vec<_>>(), "offset": fmt_scalar(c) }))
                        .collect();
                    let v = json!({
                        "family": spec.to_string(),
                        "dim": aff.dim(),
                        "hyperplanes": planes,
                        "cone": FormsJson::from(&aff.cone()),
                    });
                    json_out(&v, summary, Status::Ok)
                }
            }
        }
        Command::VerifyEr { family } => {
            let spec = family_spec(&family)?;
            let r = verify_er(&spec)?;
            let status = if r.pass { Status::Ok } else { Status::Fail };
            let verdict = match &r.exponents {
                Some(e) => format!("free, exponents {e:?}"),
                None => verdict_name(r.verdict).to_string(),
            };
            let summary = format!(
                "{}: {} ({verdict})",
                r.family,
                if r.pass { "PASS" } else { "FAIL" }
            );
            json_out(&r, summary, status)
        }
    }
}
