use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::{derivation_space, is_log_derivation, GradedBasis};
use crate::arr::Multiarrangement;
use crate::error::{Error, Result};
use crate::exact::{fmt_scalar, poly_determinant, scalar, MPoly, Matrix, Scalar};

const RETRIES: u64 = 5;
const COEFF_RANGE: i64 = 50;

/// Derivations `θ_1, …, θ_r` with `det(θ_i(z_j)) = c · Q(A, k)`, `c ≠ 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct FreenessCertificate {
    pub degrees: Vec<u64>,
    pub derivations: Vec<Vec<MPoly>>,
    pub c: Scalar,
}

#[derive(Serialize)]
struct CertificateJson<'a> {
    degrees: &'a [u64],
    derivations: Vec<Vec<String>>,
    c: String,
}

impl Serialize for FreenessCertificate {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        CertificateJson {
            degrees: &self.degrees,
            derivations: self
                .derivations
                .iter()
                .map(|t| t.iter().map(|p| p.to_string()).collect())
                .collect(),
            c: fmt_scalar(&self.c),
        }
        .serialize(s)
    }
}

/// Re-checks a certificate from scratch: every `θ_i` is logarithmic of the
/// stated degree and the determinant is a nonzero multiple of `Q(A, k)`.
pub fn verify_certificate(m: &Multiarrangement, cert: &FreenessCertificate) -> bool {
    let n = m.dim();
    if cert.derivations.len() != n || cert.degrees.len() != n {
        return false;
    }
    if cert.degrees.iter().sum::<u64>() != m.total() {
        return false;
    }
    for (t, &d) in cert.derivations.iter().zip(&cert.degrees) {
        if t.len() != n
            || t.iter()
                .any(|p| !p.is_zero() && p.total_degree() != Some(d as u32))
        {
            return false;
        }
        if !is_log_derivation(m, t) {
            return false;
        }
    }
    let det = poly_determinant(&cert.derivations, n);
    matches!(det.scalar_ratio(&m.defining_polynomial()), Some(c) if c == cert.c && !c.is_zero())
}

fn random_combination(basis: &GradedBasis, rng: &mut ChaCha8Rng, nvars: usize) -> Vec<MPoly> {
    let mut out = vec![MPoly::zero(nvars); nvars];
    for e in &basis.elements {
        let c = scalar(rng.gen_range(-COEFF_RANGE..=COEFF_RANGE));
        for (o, p) in out.iter_mut().zip(e) {
            *o = &*o + &p.scale(&c);
        }
    }
    out
}

fn random_point(rng: &mut ChaCha8Rng, n: usize) -> Vec<Scalar> {
    (0..n)
        .map(|_| scalar(rng.gen_range(-1000..=1000)))
        .collect()
}

fn rank_at(thetas: &[Vec<MPoly>], point: &[Scalar]) -> usize {
    let n = point.len();
    let rows = thetas
        .iter()
        .map(|t| t.iter().map(|p| p.eval(point)).collect())
        .collect();
    Matrix::from_rows(rows, n).rank()
}

/// Exact Saito test on a candidate basis.
fn saito_test(
    m: &Multiarrangement,
    degrees: &[u64],
    thetas: Vec<Vec<MPoly>>,
) -> Option<FreenessCertificate> {
    let n = m.dim();
    let det = poly_determinant(&thetas, n);
    if det.is_zero() {
        return None;
    }
    let c = det.scalar_ratio(&m.defining_polynomial())?;
    (!c.is_zero()).then(|| FreenessCertificate {
        degrees: degrees.to_vec(),
        derivations: thetas,
        c,
    })
}

fn require_essential(m: &Multiarrangement) -> Result<()> {
    if m.support().base().rank() != m.dim() {
        return Err(Error::InvalidInput(
            "multiarrangement is not essential".into(),
        ));
    }
    Ok(())
}

/// Looks for a basis of `D(A, k)` with the given degrees. `Ok(None)` means
/// no certificate was found, which does not prove non-freeness.
pub fn saito_certificate(
    m: &Multiarrangement,
    degrees: &[u64],
) -> Result<Option<FreenessCertificate>> {
    let got: u64 = degrees.iter().sum();
    if got != m.total() {
        return Err(Error::DegreeSumMismatch {
            expected: m.total(),
            got,
        });
    }
    if degrees.len() != m.dim() {
        return Err(Error::InvalidInput(format!(
            "{} degrees for a rank-{} multiarrangement",
            degrees.len(),
            m.dim()
        )));
    }
    require_essential(m)?;
    let mut sorted = degrees.to_vec();
    sorted.sort_unstable();
    let mut bases: Vec<GradedBasis> = Vec::new();
    for &d in &sorted {
        if bases.last().map(|b| b.degree) != Some(d as i64) {
            let b = derivation_space(m, d as i64);
            if b.dim() == 0 {
                return Ok(None);
            }
            bases.push(b);
        }
    }
    let seed = sorted
        .iter()
        .fold(0x5eed_u64, |acc, &d| acc.wrapping_mul(31).wrapping_add(d));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = m.dim();
    for _ in 0..RETRIES {
        let thetas: Vec<Vec<MPoly>> = sorted
            .iter()
            .map(|&d| {
                let b = bases.iter().find(|b| b.degree == d as i64).unwrap();
                random_combination(b, &mut rng, n)
            })
            .collect();
        let point = random_point(&mut rng, n);
        if rank_at(&thetas, &point) < n {
            continue;
        }
        if let Some(c) = saito_test(m, &sorted, thetas) {
            return Ok(Some(c));
        }
    }
    Ok(None)
}

/// Degree-by-degree search: at each degree, generic elements are added
/// while they stay independent at a random point, until `r` derivations
/// are collected or the degree sum exceeds `|k|`.
pub fn greedy_certificate(m: &Multiarrangement) -> Result<Option<FreenessCertificate>> {
    require_essential(m)?;
    let n = m.dim();
    let total = m.total();
    let mut rng = ChaCha8Rng::seed_from_u64(0x9eed1);
    for _ in 0..RETRIES {
        let point = random_point(&mut rng, n);
        let mut thetas: Vec<Vec<MPoly>> = Vec::new();
        let mut degrees: Vec<u64> = Vec::new();
        let mut d = 0u64;
        while thetas.len() < n && degrees.iter().sum::<u64>() + d <= total {
            let b = derivation_space(m, d as i64);
            if b.dim() > 0 {
                while thetas.len() < n {
                    let t = random_combination(&b, &mut rng, n);
                    thetas.push(t);
                    if rank_at(&thetas, &point) < thetas.len() {
                        thetas.pop();
                        break;
                    }
                    degrees.push(d);
                }
            }
            d += 1;
        }
        if thetas.len() == n && degrees.iter().sum::<u64>() == total {
            if let Some(c) = saito_test(m, &degrees, thetas) {
                return Ok(Some(c));
            }
        }
    }
    Ok(None)
}

/// Exponents `(d_1 ≤ d_2)` of a rank-2 multiarrangement with a certificate.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Rank2Exponents {
    pub exponents: (u64, u64),
    pub certificate: FreenessCertificate,
}

/// `d_1` is the least degree admitting a certificate at `(d, |k| − d)`.
pub fn rank2_multi_exponents(m: &Multiarrangement) -> Result<Rank2Exponents> {
    if m.dim() != 2 {
        return Err(Error::InvalidInput(format!(
            "expected rank 2, got dimension {}",
            m.dim()
        )));
    }
    require_essential(m)?;
    let total = m.total();
    let start = (0..=total / 2)
        .find(|&d| derivation_space(m, d as i64).dim() > 0)
        .unwrap_or(total / 2);
    for d in start..=total / 2 {
        if let Some(certificate) = saito_certificate(m, &[d, total - d])? {
            return Ok(Rank2Exponents {
                exponents: (d, total - d),
                certificate,
            });
        }
    }
    panic!("rank-2 multiarrangement without a certificate up to degree |k|");
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arr::Arrangement;

    fn a2() -> Arrangement {
        Arrangement::from_i64(2, &[&[1, 0], &[0, 1], &[1, -1]]).unwrap()
    }

    #[test]
    fn boolean_certificate() {
        let b = Arrangement::boolean(3).simple();
        let c = saito_certificate(&b, &[1, 1, 1]).unwrap().unwrap();
        assert!(verify_certificate(&b, &c));
        assert!(matches!(
            saito_certificate(&b, &[1, 1]),
            Err(Error::DegreeSumMismatch {
                expected: 3,
                got: 2
            })
        ));
    }

    #[test]
    fn rank2_cases() {
        let two = Arrangement::from_i64(2, &[&[1, 0], &[0, 1]])
            .unwrap()
            .simple();
        assert_eq!(rank2_multi_exponents(&two).unwrap().exponents, (1, 1));
        let r = rank2_multi_exponents(&Multiarrangement::constant(a2(), 3)).unwrap();
        assert_eq!(r.exponents, (4, 5));
        assert!(verify_certificate(
            &Multiarrangement::constant(a2(), 3),
            &r.certificate
        ));
        let r = rank2_multi_exponents(&Multiarrangement::constant(a2(), 2)).unwrap();
        assert_eq!(r.exponents, (3, 3));
    }

    #[test]
    fn greedy_finds_a2_exponents() {
        let c = greedy_certificate(&a2().simple()).unwrap().unwrap();
        assert_eq!(c.degrees, vec![1, 2]);
    }
}
