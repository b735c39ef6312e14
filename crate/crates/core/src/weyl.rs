//! Root systems of types A, B, C, D and G_2, their deformation families
//! `A(Φ⁺)^{[p,q]}` and `A(Φ⁺, Ψ, m)`, and a checker comparing the cones of
//! these families with the predicted exponents.
//!
//! Realizations: `A_ℓ` uses `e_i − e_j` in `ℚ^{ℓ+1}`; `B_ℓ` adds `e_i` to
//! `e_i ± e_j`; `C_ℓ` adds `2e_i`; `D_ℓ` is `e_i ± e_j`; `G_2` lives in the
//! plane `x_1 + x_2 + x_3 = 0` with simple roots `e_1 − e_2` and
//! `−2e_1 + e_2 + e_3`. Positive roots are sorted by height.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::arr::{AffineArrangement, Arrangement, CONE_INFINITY};
use crate::error::{Error, Result};
use crate::exact::{kernel_basis, scalar, Matrix, UPolyT};
use crate::freeness::{recursive_free_with, Evidence, FreeOptions, FreenessReport, Verdict};
use crate::lattice::{char_poly, reduced_char_poly};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum RootType {
    A,
    B,
    C,
    D,
    G,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RootSystemDesc {
    pub kind: RootType,
    pub rank: usize,
    pub positive_roots: Vec<Vec<i64>>,
    pub simple_roots: Vec<Vec<i64>>,
    /// Coordinates of each positive root in the simple roots.
    pub simple_coords: Vec<Vec<i64>>,
}

fn unit(n: usize, i: usize, c: i64) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = c;
    v
}

fn combo(n: usize, terms: &[(usize, i64)]) -> Vec<i64> {
    let mut v = vec![0; n];
    for &(i, c) in terms {
        v[i] += c;
    }
    v
}

fn pm_pairs(n: usize) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            out.push(combo(n, &[(i, 1), (j, -1)]));
            out.push(combo(n, &[(i, 1), (j, 1)]));
        }
    }
    out
}

fn chain_simple(n: usize, l: usize) -> Vec<Vec<i64>> {
    (0..l - 1)
        .map(|i| combo(n, &[(i, 1), (i + 1, -1)]))
        .collect()
}

/// Expresses `v` in the given independent vectors.
fn coordinates(basis: &[Vec<i64>], v: &[i64]) -> Option<Vec<i64>> {
    let n = v.len();
    let cols = basis.len() + 1;
    let rows = (0..n)
        .map(|r| {
            basis
                .iter()
                .map(|b| scalar(b[r]))
                .chain(std::iter::once(scalar(v[r])))
                .collect()
        })
        .collect();
    let ker = kernel_basis(&Matrix::from_rows(rows, cols));
    if ker.len() != 1 || num_traits::Zero::is_zero(&ker[0][basis.len()]) {
        return None;
    }
    let last = ker[0][basis.len()].clone();
    ker[0][..basis.len()]
        .iter()
        .map(|k| {
            let c = -k / &last;
            c.is_integer()
                .then(|| i64::try_from(c.to_integer()).ok())
                .flatten()
        })
        .collect()
}

impl RootSystemDesc {
    pub fn new(kind: RootType, rank: usize) -> Result<Self> {
        let l = rank;
        let bad = || Error::Unsupported(format!("{kind:?}{rank}"));
        let (roots, simple) = match kind {
            RootType::A if l >= 1 => {
                let n = l + 1;
                let mut roots = Vec::new();
                for i in 0..n {
                    for j in i + 1..n {
                        roots.push(combo(n, &[(i, 1), (j, -1)]));
                    }
                }
                (roots, chain_simple(n, n))
            }
            RootType::B if l >= 2 => {
                let mut roots = pm_pairs(l);
                roots.extend((0..l).map(|i| unit(l, i, 1)));
                let mut simple = chain_simple(l, l);
                simple.push(unit(l, l - 1, 1));
                (roots, simple)
            }
            RootType::C if l >= 2 => {
                let mut roots = pm_pairs(l);
                roots.extend((0..l).map(|i| unit(l, i, 2)));
                let mut simple = chain_simple(l, l);
                simple.push(unit(l, l - 1, 2));
                (roots, simple)
            }
            RootType::D if l >= 3 => {
                let mut simple = chain_simple(l, l);
                simple.push(combo(l, &[(l - 2, 1), (l - 1, 1)]));
                (pm_pairs(l), simple)
            }
            RootType::G if l == 2 => {
                let r = |a: i64, b: i64, c: i64| vec![a, b, c];
                let roots = vec![
                    r(1, -1, 0),
                    r(-2, 1, 1),
                    r(-1, 0, 1),
                    r(0, -1, 1),
                    r(1, -2, 1),
                    r(-1, -1, 2),
                ];
                (roots, vec![r(1, -1, 0), r(-2, 1, 1)])
            }
            _ => return Err(bad()),
        };
        let mut keyed: Vec<(Vec<i64>, Vec<i64>)> = roots
            .into_iter()
            .map(|v| {
                let c = coordinates(&simple, &v).expect("root in the span of the simple roots");
                assert!(
                    c.iter().all(|&x| x >= 0),
                    "positive root with a negative simple coordinate"
                );
                (c, v)
            })
            .collect();
        keyed.sort_by(|(a, _), (b, _)| {
            let (ha, hb): (i64, i64) = (a.iter().sum(), b.iter().sum());
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        let (simple_coords, positive_roots) = keyed.into_iter().unzip();
        let d = RootSystemDesc {
            kind,
            rank,
            positive_roots,
            simple_roots: simple,
            simple_coords,
        };
        debug_assert_eq!(d.positive_roots.len(), d.expected_count());
        Ok(d)
    }

    fn expected_count(&self) -> usize {
        let l = self.rank;
        match self.kind {
            RootType::A => l * (l + 1) / 2,
            RootType::B | RootType::C => l * l,
            RootType::D => l * (l - 1),
            RootType::G => 6,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.positive_roots[0].len()
    }

    pub fn height(&self, i: usize) -> i64 {
        self.simple_coords[i].iter().sum()
    }

    /// Central arrangement of all reflecting hyperplanes.
    pub fn weyl_arrangement(&self) -> Arrangement {
        self.subarrangement(&(0..self.positive_roots.len()).collect::<Vec<_>>())
    }

    /// Hyperplanes of the roots with the given indices, in ambient coordinates.
    pub fn subarrangement(&self, indices: &[usize]) -> Arrangement {
        let forms = indices
            .iter()
            .map(|&i| self.positive_roots[i].iter().map(|&c| scalar(c)).collect())
            .collect();
        Arrangement::new(self.ambient_dim(), forms)
            .expect("positive roots are pairwise independent")
    }
}

impl fmt::Display for RootSystemDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.kind, self.rank)
    }
}

impl FromStr for RootSystemDesc {
    type Err = Error;

    /// `A2`, `B3`, `G2`, …
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut chars = s.chars();
        let letter = chars
            .next()
            .ok_or_else(|| Error::InvalidInput("empty root system".into()))?;
        let rank: usize = chars
            .as_str()
            .parse()
            .map_err(|_| Error::InvalidInput(format!("bad root system {s:?}")))?;
        let kind = match letter.to_ascii_uppercase() {
            'A' => RootType::A,
            'B' => RootType::B,
            'C' => RootType::C,
            'D' => RootType::D,
            'G' => RootType::G,
            _ => return Err(Error::Unsupported(s.to_string())),
        };
        RootSystemDesc::new(kind, rank)
    }
}

/// Exponents `e_1 ≤ … ≤ e_ℓ` and Coxeter number `h`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExponentData {
    pub exponents: Vec<u64>,
    pub coxeter_number: u64,
}

pub fn positive_roots(d: &RootSystemDesc) -> &[Vec<i64>] {
    &d.positive_roots
}

/// Exponents read off the characteristic polynomial of the essentialized
/// Weyl arrangement.
pub fn exponent_data(d: &RootSystemDesc) -> ExponentData {
    let (ess, _) = d.weyl_arrangement().essentialize();
    let roots = char_poly(&ess)
        .split_roots()
        .expect("Weyl arrangement characteristic polynomial splits over the integers");
    let exponents: Vec<u64> = roots
        .iter()
        .map(|&r| u64::try_from(r).expect("nonnegative exponent"))
        .collect();
    let l = d.rank as u64;
    let coxeter_number = 2 * d.positive_roots.len() as u64 / l;
    for i in 0..exponents.len() {
        assert_eq!(
            exponents[i] + exponents[exponents.len() - 1 - i],
            coxeter_number,
            "exponent duality fails for {d}"
        );
    }
    ExponentData {
        exponents,
        coxeter_number,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum FamilyKind {
    /// `{H_{α,k} | α ∈ Φ⁺, p ≤ k ≤ q}`.
    Interval { p: i64, q: i64 },
    /// `A(Φ⁺)^{[1−m,m]} ∪ {H_{α,−m} | α ∈ Ψ}`.
    Interpolating { ideal: Vec<usize>, m: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FamilySpec {
    pub desc: RootSystemDesc,
    pub kind: FamilyKind,
}

impl FamilySpec {
    pub fn weyl(desc: RootSystemDesc) -> Self {
        FamilySpec {
            desc,
            kind: FamilyKind::Interval { p: 0, q: 0 },
        }
    }

    /// Extended Shi arrangement `[1 − m, m]`.
    pub fn shi(desc: RootSystemDesc, m: u64) -> Self {
        FamilySpec {
            desc,
            kind: FamilyKind::Interval {
                p: 1 - m as i64,
                q: m as i64,
            },
        }
    }

    /// Extended Catalan arrangement `[−m, m]`.
    pub fn catalan(desc: RootSystemDesc, m: u64) -> Self {
        FamilySpec {
            desc,
            kind: FamilyKind::Interval {
                p: -(m as i64),
                q: m as i64,
            },
        }
    }

    pub fn interpolating(desc: RootSystemDesc, ideal: Vec<usize>, m: u64) -> Self {
        let mut ideal = ideal;
        ideal.sort_unstable();
        ideal.dedup();
        FamilySpec {
            desc,
            kind: FamilyKind::Interpolating { ideal, m },
        }
    }

    /// `(m, is_catalan)` for the interval families covered by the
    /// predictions, `None` otherwise.
    fn shape(&self) -> Option<(u64, bool)> {
        match self.kind {
            FamilyKind::Interval { p, q } if p == -q && q >= 0 => Some((q as u64, true)),
            FamilyKind::Interval { p, q } if p == 1 - q && q >= 1 => Some((q as u64, false)),
            _ => None,
        }
    }
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            FamilyKind::Interval { p, q } => write!(f, "{} [{p},{q}]", self.desc),
            FamilyKind::Interpolating { ideal, m } => {
                write!(f, "{} ideal {ideal:?} m={m}", self.desc)
            }
        }
    }
}

/// Whether `Ψ` is closed under going down in the root order.
pub fn order_ideal_check(d: &RootSystemDesc, psi: &[usize]) -> bool {
    let n = d.positive_roots.len();
    if psi.iter().any(|&i| i >= n) {
        return false;
    }
    psi.iter().all(|&a| {
        (0..n).all(|b| {
            let below = d.simple_coords[a]
                .iter()
                .zip(&d.simple_coords[b])
                .all(|(x, y)| x >= y);
            !below || psi.contains(&b)
        })
    })
}

/// All order ideals, as sorted index lists, by brute force over subsets.
pub fn order_ideals(d: &RootSystemDesc) -> Result<Vec<Vec<usize>>> {
    let n = d.positive_roots.len();
    if n > 20 {
        return Err(Error::Unsupported(format!(
            "enumerating order ideals of {d}"
        )));
    }
    Ok((0u32..1 << n)
        .map(|mask| (0..n).filter(|&i| mask >> i & 1 == 1).collect::<Vec<_>>())
        .filter(|s| order_ideal_check(d, s))
        .collect())
}

/// The affine arrangement of a family, root-major and ascending in `k`.
pub fn build_family(f: &FamilySpec) -> Result<AffineArrangement> {
    let d = &f.desc;
    let mut planes: Vec<(usize, i64)> = Vec::new();
    match &f.kind {
        FamilyKind::Interval { p, q } => {
            if p > q {
                return Err(Error::InvalidInput(format!("empty interval [{p},{q}]")));
            }
            for i in 0..d.positive_roots.len() {
                planes.extend((*p..=*q).map(|k| (i, k)));
            }
        }
        FamilyKind::Interpolating { ideal, m } => {
            if !order_ideal_check(d, ideal) {
                return Err(Error::NotOrderIdeal);
            }
            let m = *m as i64;
            for i in 0..d.positive_roots.len() {
                if ideal.contains(&i) {
                    planes.push((i, -m));
                }
                planes.extend((1 - m..=m).map(|k| (i, k)));
            }
        }
    }
    let hyperplanes = planes
        .into_iter()
        .map(|(i, k)| {
            (
                d.positive_roots[i].iter().map(|&c| scalar(c)).collect(),
                scalar(k),
            )
        })
        .collect();
    AffineArrangement::new(d.ambient_dim(), hyperplanes)
}

/// `A(Ψ)` in the essential coordinates of the Weyl arrangement.
fn ideal_arrangement(d: &RootSystemDesc, ideal: &[usize]) -> Arrangement {
    let (ess, _) = d.weyl_arrangement().essentialize();
    ess.subarrangement(ideal)
}

/// Predicted exponents of the cone: `(1, e_i + mh)` for `[−m, m]`,
/// `(1, mh, …, mh)` for `[1 − m, m]` and `(1, e_i' + mh)` for the
/// interpolating family, where `e_i'` are the exponents of `A(Ψ)`.
pub fn expected_exponents(f: &FamilySpec) -> Result<Vec<u64>> {
    let ed = exponent_data(&f.desc);
    let h = ed.coxeter_number;
    let mut out = vec![1];
    match &f.kind {
        FamilyKind::Interpolating { ideal, m } => {
            if !order_ideal_check(&f.desc, ideal) {
                return Err(Error::NotOrderIdeal);
            }
            let sub = ideal_arrangement(&f.desc, ideal);
            let report = recursive_free_with(&sub, &FreeOptions::default())?;
            let Some(e) = report.exponents else {
                return Err(Error::NotCertifiedFree(format!(
                    "{} with ideal {ideal:?}",
                    f.desc
                )));
            };
            out.extend(e.iter().map(|&x| x + m * h));
        }
        FamilyKind::Interval { .. } => match f.shape() {
            Some((m, true)) => out.extend(ed.exponents.iter().map(|&e| e + m * h)),
            Some((m, false)) => out.extend(std::iter::repeat_n(m * h, f.desc.rank)),
            None => {
                return Err(Error::Unsupported(format!(
                    "no exponent prediction for {f}"
                )))
            }
        },
    }
    out.sort_unstable();
    Ok(out)
}

/// `χ(A(Φ⁺, Ψ, m), t)` and `χ(A(Ψ), t − mh)`, both in essential coordinates.
pub fn shifted_chi_pair(f: &FamilySpec) -> Result<(UPolyT, UPolyT)> {
    let FamilyKind::Interpolating { ideal, m } = &f.kind else {
        return Err(Error::InvalidInput(
            "expected an interpolating family".into(),
        ));
    };
    let h = exponent_data(&f.desc).coxeter_number as i64;
    let (cone, _) = build_family(f)?.cone().essentialize();
    let lhs = reduced_char_poly(&cone)?;
    let rhs = char_poly(&ideal_arrangement(&f.desc, ideal)).shift(-(*m as i64) * h);
    Ok((lhs, rhs))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ErReport {
    pub family: String,
    pub hyperplanes: usize,
    pub expected_exponents: Vec<u64>,
    pub chi: UPolyT,
    pub expected_chi: UPolyT,
    pub chi_matches: bool,
    pub restriction_exponents: Option<Vec<u64>>,
    pub restriction_matches: bool,
    pub verdict: Verdict,
    pub exponents: Option<Vec<u64>>,
    pub verdict_matches: bool,
    pub pass: bool,
    pub report: FreenessReport,
}

fn restriction_exponents(r: &FreenessReport) -> Option<Vec<u64>> {
    let mut e = match &r.evidence {
        Evidence::CharPolyMatch {
            hyperplane: CONE_INFINITY,
            multi_exponents: (a, b),
            ..
        } => vec![*a, *b],
        Evidence::CharPolyMismatch {
            hyperplane: CONE_INFINITY,
            multi_exponents,
            ..
        } => multi_exponents.clone(),
        Evidence::RestrictionCertificate {
            hyperplane: CONE_INFINITY,
            certificate,
            ..
        } => certificate.degrees.clone(),
        _ => return None,
    };
    e.sort_unstable();
    Some(e)
}

/// Cones the family and decides its freeness through `H_∞`, using the
/// predicted exponents as the restriction hint. Passes when `χ`, the
/// restriction exponents and the verdict all match the prediction.
pub fn verify_er(f: &FamilySpec) -> Result<ErReport> {
    let expected = expected_exponents(f)?;
    let (cone, _) = build_family(f)?.cone().essentialize();
    let chi = char_poly(&cone);
    let expected_chi = UPolyT::from_roots(expected.iter().map(|&e| e as i64));
    let opts = FreeOptions {
        hyperplane: Some(CONE_INFINITY),
        hint: Some(expected[1..].to_vec()),
    };
    let report = recursive_free_with(&cone, &opts)?;
    let restriction = restriction_exponents(&report);
    let restriction_matches = restriction.as_deref() == Some(&expected[1..]);
    let chi_matches = chi == expected_chi;
    let verdict_matches = report.verdict.is_free() && report.exponents.as_ref() == Some(&expected);
    Ok(ErReport {
        family: f.to_string(),
        hyperplanes: cone.len(),
        expected_exponents: expected,
        chi,
        expected_chi,
        chi_matches,
        restriction_exponents: restriction,
        restriction_matches,
        verdict: report.verdict,
        exponents: report.exponents.clone(),
        verdict_matches,
        pass: chi_matches && restriction_matches && verdict_matches,
        report,
    })
}
