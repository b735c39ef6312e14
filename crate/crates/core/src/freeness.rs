//! Freeness decisions: the characteristic polynomial test for 3-arrangements,
//! local freeness along a hyperplane, the restriction-certificate test for
//! rank ≥ 4 and a recursive dispatcher over direct summands.

use rayon::prelude::*;
use serde::Serialize;

use crate::arr::Arrangement;
use crate::error::{Error, Result};
use crate::exact::UPolyT;
use crate::lattice::{build_lattice, char_poly};
use crate::logmod::{
    greedy_certificate, rank2_multi_exponents, saito_certificate, FreenessCertificate,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Free,
    NotFree,
    Undetermined,
}

impl Verdict {
    pub fn is_free(self) -> bool {
        self == Verdict::Free
    }
}

/// Why a verdict was reached.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Evidence {
    /// Every central arrangement of rank at most 2 is free.
    RankAtMostTwo {
        rank: usize,
        hyperplanes: usize,
    },
    /// `χ(A, t) = (t − 1)(t − d_2')(t − d_3')` for the restriction to `hyperplane`.
    CharPolyMatch {
        chi: UPolyT,
        hyperplane: usize,
        multi_exponents: (u64, u64),
    },
    /// `χ(A, t)` differs from the product predicted by the restriction.
    /// `codim` is `χ_0(A, 0) − d_2' d_3'` when the rank is 3.
    CharPolyMismatch {
        chi: UPolyT,
        expected: UPolyT,
        hyperplane: usize,
        multi_exponents: Vec<u64>,
        codim: Option<i64>,
    },
    SaitoCertificate {
        certificate: FreenessCertificate,
    },
    /// A free restricted multiarrangement together with local freeness
    /// along the same hyperplane.
    RestrictionCertificate {
        hyperplane: usize,
        certificate: FreenessCertificate,
        local: Box<LocalFreeness>,
    },
    /// A localization that is not free.
    LocalizationWitness {
        local: Box<LocalFreeness>,
    },
    /// No certificate was found; nothing was disproved.
    NoCertificate {
        hyperplanes_tried: Vec<usize>,
    },
    DirectSum {
        summands: Vec<SummandReport>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SummandReport {
    pub hyperplanes: Vec<usize>,
    pub report: FreenessReport,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FreenessReport {
    pub verdict: Verdict,
    /// Sorted; present exactly when the verdict is free.
    pub exponents: Option<Vec<u64>>,
    pub evidence: Evidence,
}

impl FreenessReport {
    fn free(mut exponents: Vec<u64>, evidence: Evidence) -> Self {
        exponents.sort_unstable();
        FreenessReport {
            verdict: Verdict::Free,
            exponents: Some(exponents),
            evidence,
        }
    }

    fn other(verdict: Verdict, evidence: Evidence) -> Self {
        FreenessReport {
            verdict,
            exponents: None,
            evidence,
        }
    }

    /// Codimension of the restriction image, when the evidence carries one.
    pub fn codim(&self) -> Option<i64> {
        match &self.evidence {
            Evidence::CharPolyMatch { .. } => Some(0),
            Evidence::CharPolyMismatch { codim, .. } => *codim,
            Evidence::DirectSum { summands } if summands.len() == 1 => summands[0].report.codim(),
            _ => None,
        }
    }
}

/// One localization `A_X` checked for freeness.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FlatCheck {
    pub hyperplanes: Vec<usize>,
    pub dim: usize,
    pub report: FreenessReport,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LocalFreeness {
    pub hyperplane: usize,
    pub verdict: Verdict,
    /// First non-free flat in sorted order.
    pub witness: Option<Vec<usize>>,
    pub flats: Vec<FlatCheck>,
}

/// Restriction hyperplane and expected restriction exponents for rank ≥ 4.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FreeOptions {
    pub hyperplane: Option<usize>,
    pub hint: Option<Vec<u64>>,
}

fn require_essential(a: &Arrangement, min_rank: usize) -> Result<()> {
    if a.rank() != a.dim() || a.dim() < min_rank {
        return Err(Error::InvalidInput(format!(
            "expected an essential arrangement of rank ≥ {min_rank}, got rank {} in dimension {}",
            a.rank(),
            a.dim()
        )));
    }
    Ok(())
}

/// `χ_0(A, 0) − d_2' d_3'` where `χ = (t − 1) χ_0`.
fn closed_form_codim(chi: &UPolyT, d2: u64, d3: u64) -> i64 {
    let chi0 = chi.div_linear(&1.into()).0;
    let c0 = i64::try_from(chi0.coeff(0)).expect("small coefficient");
    c0 - (d2 * d3) as i64
}

/// Decides freeness of an essential 3-arrangement through the first
/// hyperplane: free iff `χ(A, t) = (t − 1)(t − d_2')(t − d_3')`.
pub fn free3_test(a: &Arrangement) -> Result<FreenessReport> {
    free3_test_at(a, 0)
}

/// [`free3_test`] restricting to hyperplane `h`.
pub fn free3_test_at(a: &Arrangement, h: usize) -> Result<FreenessReport> {
    if a.dim() != 3 || a.rank() != 3 {
        return Err(Error::InvalidInput(
            "expected an essential 3-arrangement".into(),
        ));
    }
    if h >= a.len() {
        return Err(Error::InvalidInput(format!("hyperplane {h} out of range")));
    }
    let (d2, d3) = rank2_multi_exponents(&a.restrict(h))?.exponents;
    let chi = char_poly(a);
    let expected = UPolyT::from_roots([1, d2 as i64, d3 as i64]);
    if chi == expected {
        Ok(FreenessReport::free(
            vec![1, d2, d3],
            Evidence::CharPolyMatch {
                chi,
                hyperplane: h,
                multi_exponents: (d2, d3),
            },
        ))
    } else {
        let codim = closed_form_codim(&chi, d2, d3);
        Ok(FreenessReport::other(
            Verdict::NotFree,
            Evidence::CharPolyMismatch {
                chi,
                expected,
                hyperplane: h,
                multi_exponents: vec![d2, d3],
                codim: Some(codim),
            },
        ))
    }
}

/// Checks that `A_X` is free for every flat `X ⊆ H_h` other than the center.
pub fn locally_free_along(a: &Arrangement, h: usize) -> Result<LocalFreeness> {
    if h >= a.len() {
        return Err(Error::InvalidInput(format!("hyperplane {h} out of range")));
    }
    let lattice = build_lattice(a);
    let rank = a.rank();
    let mut targets: Vec<(Vec<usize>, usize)> = lattice
        .flats()
        .iter()
        .filter(|x| x.contains_hyperplane(h) && x.dim() >= 1 && x.rank() < rank)
        .map(|x| (x.hyperplane_indices(), x.dim()))
        .collect();
    targets.sort();
    let flats: Vec<FlatCheck> = targets
        .into_par_iter()
        .map(|(hyperplanes, dim)| {
            let local = a.subarrangement(&hyperplanes);
            let report = recursive_free(&local)?;
            Ok(FlatCheck {
                hyperplanes,
                dim,
                report,
            })
        })
        .collect::<Result<_>>()?;
    let witness = flats
        .iter()
        .find(|f| f.report.verdict == Verdict::NotFree)
        .map(|f| f.hyperplanes.clone());
    let verdict = if witness.is_some() {
        Verdict::NotFree
    } else if flats.iter().all(|f| f.report.verdict.is_free()) {
        Verdict::Free
    } else {
        Verdict::Undetermined
    };
    Ok(LocalFreeness {
        hyperplane: h,
        verdict,
        witness,
        flats,
    })
}

/// Freeness of an essential arrangement of rank ≥ 4 through hyperplane `h`:
/// a certificate for the restricted multiarrangement plus local freeness
/// along `H_h` proves freeness with exponents `(1, d_2', …, d_ℓ')`.
pub fn free_test(a: &Arrangement, h: usize, hint: Option<&[u64]>) -> Result<FreenessReport> {
    require_essential(a, 4)?;
    if h >= a.len() {
        return Err(Error::InvalidInput(format!("hyperplane {h} out of range")));
    }
    let restricted = a.restrict(h);
    let mut certificate = match hint {
        Some(degrees) => saito_certificate(&restricted, degrees)?,
        None => None,
    };
    if certificate.is_none() {
        certificate = greedy_certificate(&restricted)?;
    }
    let chi = char_poly(a);
    if let Some(cert) = &certificate {
        let mut degrees = cert.degrees.clone();
        degrees.sort_unstable();
        let expected =
            UPolyT::from_roots(std::iter::once(1).chain(degrees.iter().map(|&d| d as i64)));
        if chi != expected {
            return Ok(FreenessReport::other(
                Verdict::NotFree,
                Evidence::CharPolyMismatch {
                    chi,
                    expected,
                    hyperplane: h,
                    multi_exponents: degrees,
                    codim: None,
                },
            ));
        }
    }
    let local = locally_free_along(a, h)?;
    match (local.verdict, certificate) {
        (Verdict::NotFree, _) => Ok(FreenessReport::other(
            Verdict::NotFree,
            Evidence::LocalizationWitness {
                local: Box::new(local),
            },
        )),
        (Verdict::Free, Some(certificate)) => {
            let exponents = std::iter::once(1)
                .chain(certificate.degrees.iter().copied())
                .collect();
            Ok(FreenessReport::free(
                exponents,
                Evidence::RestrictionCertificate {
                    hyperplane: h,
                    certificate,
                    local: Box::new(local),
                },
            ))
        }
        _ => Ok(FreenessReport::other(
            Verdict::Undetermined,
            Evidence::NoCertificate {
                hyperplanes_tried: vec![h],
            },
        )),
    }
}

fn irreducible_free(a: &Arrangement, opts: &FreeOptions) -> Result<FreenessReport> {
    let r = a.dim();
    if r <= 2 {
        let exponents = if r == 1 {
            vec![1]
        } else {
            vec![1, a.len() as u64 - 1]
        };
        return Ok(FreenessReport::free(
            exponents,
            Evidence::RankAtMostTwo {
                rank: r,
                hyperplanes: a.len(),
            },
        ));
    }
    if r == 3 {
        return free3_test_at(a, opts.hyperplane.unwrap_or(0));
    }
    let order: Vec<usize> = match opts.hyperplane {
        Some(h) => std::iter::once(h)
            .chain((0..a.len()).filter(|&i| i != h))
            .collect(),
        None => (0..a.len()).collect(),
    };
    let mut tried = Vec::new();
    for h in order {
        let hint = if Some(h) == opts.hyperplane {
            opts.hint.as_deref()
        } else {
            None
        };
        let report = free_test(a, h, hint)?;
        if report.verdict != Verdict::Undetermined {
            return Ok(report);
        }
        tried.push(h);
    }
    Ok(FreenessReport::other(
        Verdict::Undetermined,
        Evidence::NoCertificate {
            hyperplanes_tried: tried,
        },
    ))
}

/// Essentializes, splits into irreducible summands and decides each by rank.
/// Non-essential directions contribute exponent 0.
pub fn recursive_free(a: &Arrangement) -> Result<FreenessReport> {
    recursive_free_with(a, &FreeOptions::default())
}

/// [`recursive_free`] with a preferred hyperplane and restriction hint,
/// used when the arrangement is irreducible.
pub fn recursive_free_with(a: &Arrangement, opts: &FreeOptions) -> Result<FreenessReport> {
    let (ess, r) = a.essentialize();
    let zeros = a.dim() - r;
    let summands = ess.decompose();
    let whole = summands.len() == 1;
    let mut reports = Vec::with_capacity(summands.len());
    for s in summands {
        let o = if whole {
            opts.clone()
        } else {
            FreeOptions::default()
        };
        reports.push(SummandReport {
            hyperplanes: s.indices,
            report: irreducible_free(&s.arrangement, &o)?,
        });
    }
    let verdict = if reports.iter().any(|s| s.report.verdict == Verdict::NotFree) {
        Verdict::NotFree
    } else if reports.iter().all(|s| s.report.verdict.is_free()) {
        Verdict::Free
    } else {
        Verdict::Undetermined
    };
    if whole && zeros == 0 {
        return Ok(reports.pop().expect("one summand").report);
    }
    let evidence = Evidence::DirectSum { summands: reports };
    if verdict.is_free() {
        let Evidence::DirectSum { summands } = &evidence else {
            unreachable!()
        };
        let mut exponents = vec![0; zeros];
        for s in summands {
            exponents.extend(
                s.report
                    .exponents
                    .as_ref()
                    .expect("free summand has exponents"),
            );
        }
        Ok(FreenessReport::free(exponents, evidence))
    } else {
        Ok(FreenessReport::other(verdict, evidence))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boolean_and_generic() {
        let r = free3_test(&Arrangement::boolean(3)).unwrap();
        assert_eq!(r.exponents, Some(vec![1, 1, 1]));
        let generic =
            Arrangement::from_i64(3, &[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1], &[1, 1, 1]]).unwrap();
        let r = free3_test(&generic).unwrap();
        assert_eq!(r.verdict, Verdict::NotFree);
        // χ0 = t² − 3t + 3, restriction exponents (1, 2)
        assert_eq!(r.codim(), Some(1));
    }

    #[test]
    fn direct_sums_merge_exponents() {
        let a = Arrangement::from_i64(
            4,
            &[
                &[1, 0, 0, 0],
                &[0, 1, 0, 0],
                &[0, 0, 1, 0],
                &[0, 0, 1, 1],
                &[0, 0, 0, 1],
            ],
        )
        .unwrap();
        let r = recursive_free(&a).unwrap();
        assert_eq!(r.exponents, Some(vec![1, 1, 1, 2]));
        let lineality = Arrangement::from_i64(3, &[&[1, 0, 0], &[0, 1, 0]]).unwrap();
        assert_eq!(
            recursive_free(&lineality).unwrap().exponents,
            Some(vec![0, 1, 1])
        );
    }

    #[test]
    fn boolean_rank_four() {
        let b = Arrangement::boolean(4);
        let l = locally_free_along(&b, 0).unwrap();
        assert_eq!(l.verdict, Verdict::Free);
        // flats inside x = 0 of dimension 1..3: 1 + 3 + 3
        assert_eq!(l.flats.len(), 7);
        for h in 0..4 {
            let r = free_test(&b, h, None).unwrap();
            assert_eq!(r.exponents, Some(vec![1, 1, 1, 1]));
        }
        assert!(free_test(&Arrangement::boolean(3), 0, None).is_err());
    }
}
