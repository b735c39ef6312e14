use arrfree::arr::{Arrangement, Multiarrangement, CONE_INFINITY};
use arrfree::exact::modp::{rank_mod_p, PrimeField, M61};
use arrfree::exact::sparse::rank_of;
use arrfree::exact::{
    kernel_basis, limit_x_to_1, scalar, BiPoly, Matrix, RatFuncX, Scalar, SparseRow, UPolyT,
};
use arrfree::freeness::{free3_test, free3_test_at, locally_free_along, recursive_free, Verdict};
use arrfree::hilbert::{hilbert_series_free, solomon_terao_chi, FreeHilbertData};
use arrfree::lattice::{build_lattice, char_poly, count_points_mod_p, reduced_char_poly};
use arrfree::logmod::{
    derivation_dim, omega_dim, rank2_multi_exponents, restriction_image_dim, saito_certificate,
    verify_certificate,
};
use arrfree::weyl::{
    build_family, expected_exponents, exponent_data, order_ideal_check, order_ideals, FamilyKind,
    FamilySpec, RootSystemDesc,
};
use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use proptest::prelude::*;

fn arrangement(dim: usize, min: usize, max: usize) -> impl Strategy<Value = Arrangement> {
    prop::collection::vec(prop::collection::vec(-2i64..=2, dim), min..=max).prop_filter_map(
        "essential and without repeats",
        move |forms| {
            let refs: Vec<&[i64]> = forms.iter().map(|f| f.as_slice()).collect();
            Arrangement::from_i64(dim, &refs)
                .ok()
                .filter(|a| a.rank() == dim)
        },
    )
}

/// Subarrangements of B3, a source of free and non-free 3-arrangements alike.
fn b3_sub() -> impl Strategy<Value = Arrangement> {
    let b3 = "B3".parse::<RootSystemDesc>().unwrap().weyl_arrangement();
    prop::sample::subsequence((0..b3.len()).collect::<Vec<_>>(), 4..=9)
        .prop_map(move |idx| b3.subarrangement(&idx))
        .prop_filter("essential", |a| a.rank() == 3)
}

fn three_arrangement() -> impl Strategy<Value = Arrangement> {
    prop_oneof![arrangement(3, 3, 7), b3_sub()]
}

fn invertible(n: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(-2i64..=2, n * n).prop_filter_map("singular", move |v| {
        let rows: Vec<&[i64]> = v.chunks(n).collect();
        let m = Matrix::from_i64(&rows);
        m.determinant().filter(|d| !d.is_zero()).map(|_| m)
    })
}

fn small_types() -> impl Strategy<Value = RootSystemDesc> {
    prop::sample::select(vec!["A1", "A2", "B2", "G2", "A3", "B3", "C3", "D4"])
        .prop_map(|s| s.parse::<RootSystemDesc>().unwrap())
}

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        cases,
        failure_persistence: None,
        ..ProptestConfig::default()
    }
}

fn binomial(n: u64, k: u64) -> BigInt {
    (0..k).fold(BigInt::from(1), |acc, i| acc * (n - i) / (i + 1))
}

proptest! {
    #![proptest_config(config(48))]

    #[test]
    fn modular_rank_agrees_with_exact(
        rows in prop::collection::vec(prop::collection::vec(-4i64..=4, 6), 1..8)
    ) {
        let sparse: Vec<SparseRow> = rows
            .iter()
            .map(|r| r.iter().enumerate().filter(|(_, &c)| c != 0).map(|(j, &c)| (j, BigInt::from(c))).collect())
            .collect();
        let exact = rank_of(sparse.clone(), 6);
        prop_assert_eq!(rank_mod_p(&sparse, 6, &PrimeField::new(M61)), exact);
    }

    #[test]
    fn free_three_arrangements_factor(a in three_arrangement()) {
        let r = free3_test(&a).unwrap();
        let chi = char_poly(&a);
        if let Some(e) = &r.exponents {
            prop_assert_eq!(&chi, &UPolyT::from_roots(e.iter().map(|&x| x as i64)));
            let st = solomon_terao_chi(&FreeHilbertData::new(e.clone())).unwrap();
            prop_assert_eq!(st, chi);
        } else {
            prop_assert_eq!(r.verdict, Verdict::NotFree);
        }
    }

    #[test]
    fn free3_verdict_ignores_the_hyperplane(a in arrangement(3, 3, 6)) {
        let first = free3_test(&a).unwrap();
        for h in 1..a.len() {
            let r = free3_test_at(&a, h).unwrap();
            prop_assert_eq!(r.verdict, first.verdict);
            prop_assert_eq!(&r.exponents, &first.exponents);
        }
    }

    #[test]
    fn localizations_of_free_are_free(a in three_arrangement()) {
        if free3_test(&a).unwrap().verdict.is_free() {
            for h in 0..a.len() {
                prop_assert_eq!(locally_free_along(&a, h).unwrap().verdict, Verdict::Free);
            }
            let l = build_lattice(&a);
            for x in l.flats() {
                prop_assert!(recursive_free(&a.localize(x).unwrap()).unwrap().verdict.is_free());
            }
        }
    }

    #[test]
    fn certificates_imply_factorization(a in three_arrangement()) {
        let (d2, d3) = rank2_multi_exponents(&a.restrict(0)).unwrap().exponents;
        if let Some(c) = saito_certificate(&a.simple(), &[1, d2, d3]).unwrap() {
            prop_assert!(verify_certificate(&a.simple(), &c));
            prop_assert_eq!(char_poly(&a), UPolyT::from_roots([1, d2 as i64, d3 as i64]));
        }
    }

    #[test]
    fn free_restrictions_are_surjective(a in b3_sub()) {
        let r = free3_test(&a).unwrap();
        if let Some(e) = r.exponents {
            let m = a.restrict(0);
            let top = *e.iter().max().unwrap() as i64 + 2;
            for d in -(a.len() as i64 - 1)..=top {
                prop_assert_eq!(restriction_image_dim(&a, 0, 1, d), omega_dim(&m, 1, d), "degree {}", d);
            }
        }
    }

    #[test]
    fn outer_restriction_images_have_closed_forms(a in three_arrangement(), h in 0usize..3) {
        let n = a.len() as i64;
        for d in -n..=3 {
            let m0 = if d < 0 { 0 } else { d as usize + 1 };
            let m2 = if d < 1 - n { 0 } else { (d + n) as usize };
            prop_assert_eq!(restriction_image_dim(&a, h, 0, d), m0, "M^0 degree {}", d);
            prop_assert_eq!(restriction_image_dim(&a, h, 2, d), m2, "M^2 degree {}", d);
        }
    }

    #[test]
    fn graded_dimensions_ignore_coordinates(a in three_arrangement(), g in invertible(3)) {
        let b = a.transform(&g).unwrap();
        let (sa, sb) = (a.simple(), b.simple());
        for d in 0..=4 {
            prop_assert_eq!(derivation_dim(&sa, d), derivation_dim(&sb, d));
        }
        for d in -(a.len() as i64)..=0 {
            prop_assert_eq!(omega_dim(&sa, 1, d), omega_dim(&sb, 1, d));
        }
        prop_assert_eq!(free3_test(&a).unwrap().exponents, free3_test(&b).unwrap().exponents);
    }

    #[test]
    fn scaled_forms_give_the_same_arrangement(a in three_arrangement(), c in prop::collection::vec(1i64..=5, 9)) {
        let scaled: Vec<Vec<Scalar>> = a
            .forms()
            .iter()
            .zip(&c)
            .map(|(f, &k)| f.iter().map(|x| x * scalar(-k)).collect())
            .collect();
        let b = Arrangement::new(3, scaled).unwrap();
        prop_assert_eq!(&a, &b);
    }

    #[test]
    fn counting_matches_chi(a in (2usize..=4).prop_flat_map(|l| arrangement(l, l, 12))) {
        for p in [101u64, 103, 107] {
            if let Ok(n) = count_points_mod_p(&a, p) {
                prop_assert_eq!(char_poly(&a).eval(&BigInt::from(p)), BigInt::from(n));
            }
        }
    }

    #[test]
    fn lattice_shape(a in (2usize..=4).prop_flat_map(|l| arrangement(l, l, 8))) {
        let l = build_lattice(&a);
        for (i, x) in l.flats().iter().enumerate() {
            let mu = l.mobius(i);
            let sign = if x.rank() % 2 == 0 { 1 } else { -1 };
            prop_assert!(sign * mu > 0);
            prop_assert_eq!(a.localize_indices(x).unwrap(), x.hyperplane_indices());
        }
        let chi = char_poly(&a);
        prop_assert_eq!(chi.degree(), Some(a.dim()));
        prop_assert_eq!(chi.coeff(a.dim() - 1), BigInt::from(-(a.len() as i64)));
        prop_assert!(chi.eval(&BigInt::from(1)).is_zero());
    }

    #[test]
    fn restriction_counts_the_rest(a in three_arrangement(), h in 0usize..3) {
        prop_assert_eq!(a.restrict(h).total(), a.len() as u64 - 1);
    }

    #[test]
    fn direct_sums_multiply(a in arrangement(2, 2, 4), b in arrangement(3, 3, 5)) {
        let s = a.direct_sum(&b);
        prop_assert_eq!(char_poly(&s), &char_poly(&a) * &char_poly(&b));
        let parts = s.decompose();
        let ranks: usize = parts.iter().map(|p| p.arrangement.rank()).sum();
        let product = parts
            .iter()
            .fold(UPolyT::t_pow(s.dim() - ranks), |acc, p| &acc * &char_poly(&p.arrangement));
        prop_assert_eq!(char_poly(&s), product);
    }

    #[test]
    fn essentialize_keeps_the_lattice(
        a in arrangement(3, 3, 6),
        pad in 1usize..=2
    ) {
        let wide = a.direct_sum(&Arrangement::empty(pad));
        let (ess, r) = wide.essentialize();
        prop_assert_eq!(r, 3);
        prop_assert_eq!(ess.len(), wide.len());
        let (lw, le) = (build_lattice(&wide), build_lattice(&ess));
        prop_assert_eq!(lw.len(), le.len());
        for (i, x) in lw.flats().iter().enumerate() {
            let j = le.find(x.hyperplane_set()).unwrap();
            prop_assert_eq!(lw.mobius(i), le.mobius(j));
        }
    }

    #[test]
    fn kernel_complements_rank(rows in prop::collection::vec(prop::collection::vec(-3i64..=3, 5), 1..6)) {
        let refs: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
        let m = Matrix::from_i64(&refs);
        let k = kernel_basis(&m);
        prop_assert_eq!(k.len() + m.rank(), 5);
        for v in &k {
            prop_assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
        }
    }

    #[test]
    fn integer_roots_deflate(roots in prop::collection::vec(-6i64..=6, 0..5), c in 1i64..=4) {
        let rest = UPolyT::from_i64(&[c, 0, 1]);
        let p = &UPolyT::from_roots(roots.iter().copied()) * &rest;
        let mut want = roots.clone();
        want.sort_unstable();
        let found = p.integer_roots().unwrap();
        prop_assert_eq!(&found, &want);
        let q = p.div_exact(&UPolyT::from_roots(found)).unwrap();
        prop_assert!(q.integer_roots().unwrap().is_empty());
        prop_assert!(p.split_roots().is_none());
    }

    #[test]
    fn limit_matches_nearby_evaluation(
        coeffs in prop::collection::vec(prop::collection::vec(-5i64..=5, 3), 1..5),
        den in prop::sample::select(vec![1i64, 2, -3, 7])
    ) {
        // numerator scaled by the denominator
        let coeffs: Vec<Vec<i64>> = coeffs.iter().map(|c| c.iter().map(|x| x * den).collect()).collect();
        let num = BiPoly::new(coeffs.iter().map(|c| UPolyT::from_i64(c)).collect());
        let f = RatFuncX::new(num, BiPoly::constant(UPolyT::from_i64(&[den]))).unwrap();
        let lim = limit_x_to_1(&f).unwrap();
        let n = BigInt::from(1_000_000);
        let x = Scalar::new(&n - 1, n.clone());
        for j in 0..3 {
            let mut naive = Scalar::zero();
            let mut xk = scalar(1);
            let mut slack = 0i64;
            for (k, c) in coeffs.iter().enumerate() {
                naive += &xk * scalar(c[j]);
                xk = &xk * &x;
                slack += k as i64 * (c[j] / den).abs();
            }
            naive /= scalar(den);
            let gap = (naive - Scalar::from_integer(lim.coeff(j))).abs();
            prop_assert!(gap <= Scalar::new(BigInt::from(slack), n.clone()));
        }
    }

    #[test]
    fn rank_two_exponents_split_the_multiplicity(
        forms in prop::sample::subsequence(vec![vec![1i64, 0], vec![0, 1], vec![1, 1], vec![1, -1], vec![1, 2], vec![2, 1]], 2..=6),
        mult in prop::collection::vec(1u32..=3, 6)
    ) {
        let refs: Vec<&[i64]> = forms.iter().map(|f| f.as_slice()).collect();
        let base = Arrangement::from_i64(2, &refs).unwrap();
        let m = Multiarrangement::new(base, mult[..forms.len()].to_vec()).unwrap();
        let r = rank2_multi_exponents(&m).unwrap();
        let (d1, d2) = r.exponents;
        prop_assert!(d1 <= d2);
        prop_assert_eq!(d1 + d2, m.total());
        prop_assert!(verify_certificate(&m, &r.certificate));
    }

    #[test]
    fn free_hilbert_series_ends(e in prop::collection::vec(0u64..5, 1..4)) {
        let l = e.len() as u64;
        let h = FreeHilbertData::new(e.clone());
        // Ω^0 is the polynomial ring
        let (low, c) = hilbert_series_free(&h, 0).unwrap().laurent_coefficients(6).unwrap();
        for (i, v) in c.iter().enumerate() {
            let j = low + i as i64;
            let want = if j < 0 { BigInt::from(0) } else { binomial(j as u64 + l - 1, l - 1) };
            prop_assert_eq!(v, &want);
        }
        // Ω^ℓ is generated by one form of degree −Σ d_i
        let s: i64 = e.iter().sum::<u64>() as i64;
        let (low, c) = hilbert_series_free(&h, l as usize).unwrap().laurent_coefficients(6).unwrap();
        for (i, v) in c.iter().enumerate() {
            let j = low + i as i64 + s;
            let want = if j < 0 { BigInt::from(0) } else { binomial(j as u64 + l - 1, l - 1) };
            prop_assert_eq!(v, &want);
        }
    }
}

proptest! {
    #![proptest_config(config(16))]

    #[test]
    fn exponents_pair_up_to_the_coxeter_number(d in small_types()) {
        let ed = exponent_data(&d);
        let n = ed.exponents.len();
        prop_assert_eq!(n, d.rank);
        for i in 0..n {
            prop_assert_eq!(ed.exponents[i] + ed.exponents[n - 1 - i], ed.coxeter_number);
        }
        prop_assert_eq!(ed.exponents.iter().sum::<u64>(), d.positive_roots.len() as u64);
    }

    #[test]
    fn interpolation_reaches_both_ends(
        d in prop::sample::select(vec!["A1", "A2", "B2", "G2", "A3"]).prop_map(|s| s.parse::<RootSystemDesc>().unwrap()),
        m in 1u64..=2
    ) {
        let all: Vec<usize> = (0..d.positive_roots.len()).collect();
        let full = FamilySpec::interpolating(d.clone(), all, m);
        let empty = FamilySpec::interpolating(d.clone(), Vec::new(), m);
        let catalan = FamilySpec::catalan(d.clone(), m);
        let shi = FamilySpec::shi(d.clone(), m);
        prop_assert_eq!(expected_exponents(&full).unwrap(), expected_exponents(&catalan).unwrap());
        prop_assert_eq!(expected_exponents(&empty).unwrap(), expected_exponents(&shi).unwrap());
        prop_assert_eq!(char_poly(&build_family(&full).unwrap().cone()), char_poly(&build_family(&catalan).unwrap().cone()));
        prop_assert_eq!(char_poly(&build_family(&empty).unwrap().cone()), char_poly(&build_family(&shi).unwrap().cone()));
    }

    #[test]
    fn order_ideals_are_closed(
        d in prop::sample::select(vec!["A2", "B2", "G2", "A3"]).prop_map(|s| s.parse::<RootSystemDesc>().unwrap()),
        picks in prop::collection::vec(any::<prop::sample::Index>(), 2)
    ) {
        let ideals = order_ideals(&d).unwrap();
        prop_assert!(ideals.iter().all(|i| order_ideal_check(&d, i)));
        let a = picks[0].get(&ideals);
        let b = picks[1].get(&ideals);
        let meet: Vec<usize> = a.iter().copied().filter(|x| b.contains(x)).collect();
        let mut join: Vec<usize> = a.iter().chain(b).copied().collect();
        join.sort_unstable();
        join.dedup();
        prop_assert!(order_ideal_check(&d, &meet));
        prop_assert!(order_ideal_check(&d, &join));
    }
}

/// Every flat of a Shi or Catalan cone lying in `H_∞` localizes to the cone
/// of the same family over a root subsystem, whose affine characteristic
/// polynomial is the product over irreducible components.
#[test]
fn localizations_in_infinity_split_into_smaller_families() {
    let cases = [
        ("A2", 1),
        ("A2", 2),
        ("B2", 1),
        ("B2", 2),
        ("G2", 1),
        ("A3", 1),
        ("B3", 1),
    ];
    for (ty, m) in cases {
        let d: RootSystemDesc = ty.parse().unwrap();
        for f in [
            FamilySpec::shi(d.clone(), m),
            FamilySpec::catalan(d.clone(), m),
        ] {
            let FamilyKind::Interval { p, q } = f.kind else {
                unreachable!()
            };
            let width = (q - p + 1) as usize;
            let cone = build_family(&f).unwrap().cone();
            let l = build_lattice(&cone);
            for x in l.flats() {
                if !x.contains_hyperplane(CONE_INFINITY) || x.rank() == l.rank() {
                    continue;
                }
                let idx = cone.localize_indices(x).unwrap();
                let mut roots: Vec<usize> = idx
                    .iter()
                    .filter(|&&j| j != CONE_INFINITY)
                    .map(|&j| (j - 1) / width)
                    .collect();
                roots.dedup();
                assert_eq!(
                    idx.len(),
                    1 + width * roots.len(),
                    "{f} flat {:?}",
                    x.hyperplane_indices()
                );
                let mut want = UPolyT::one();
                let mut rank = 0;
                for part in d.subarrangement(&roots).decompose() {
                    let r = part.arrangement.rank();
                    let e = char_poly(&part.arrangement).split_roots().unwrap();
                    let h = 2 * part.arrangement.len() as i64 / r as i64;
                    let shifted: Vec<i64> = if q == m as i64 && p == -(m as i64) {
                        e.iter().map(|&x| x + m as i64 * h).collect()
                    } else {
                        vec![m as i64 * h; r]
                    };
                    want = &want * &UPolyT::from_roots(shifted);
                    rank += r;
                }
                let local = cone.localize(x).unwrap().essentialize().0;
                assert_eq!(local.rank(), rank + 1, "{f}");
                assert_eq!(
                    reduced_char_poly(&local).unwrap(),
                    want,
                    "{f} flat {:?}",
                    x.hyperplane_indices()
                );
            }
        }
    }
}
