use num_complex::Complex64;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use newstein_core::algebras::{build_extended, build_newstein, select_algebra};
use newstein_core::cohomology::{betti, CoefficientModule, Method};
use newstein_core::extensions::{classify, equivalent, ExtensionClass, ExtensionMatrix};
use newstein_core::group::{embed_in_extension, restrict_from_extension, ExtendedGroupElement, GroupElement};
use newstein_core::lie::{int, rat};
use newstein_core::oscillator::{evolve, spectrum, CVector, FockBasis, Propagator, RepParams, WaveFunction};
use newstein_core::verify::random_conjugate;
use newstein_core::{AlgebraElement, LieAlgebra};

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig { cases, ..ProptestConfig::default() }
}

fn element(g: &LieAlgebra, coeffs: &[(usize, i64)]) -> AlgebraElement {
    g.element(coeffs.iter().map(|&(i, c)| (i % g.dim(), int(c))))
}

fn sparse() -> impl Strategy<Value = Vec<(usize, i64)>> {
    prop::collection::vec((0usize..51, -3i64..=3), 1..5)
}

fn binom(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

proptest! {
    #![proptest_config(config(48))]

    #[test]
    fn bracket_is_antisymmetric_and_jacobi(x in sparse(), y in sparse(), z in sparse()) {
        let g = build_newstein();
        let (x, y, z) = (element(&g, &x), element(&g, &y), element(&g, &z));
        let xy = g.bracket(&x, &y).unwrap();
        let yx = g.bracket(&y, &x).unwrap();
        prop_assert!(xy.add(&yx).unwrap().is_zero());
        let cyc = g.bracket(&x, &g.bracket(&y, &z).unwrap()).unwrap()
            .add(&g.bracket(&y, &g.bracket(&z, &x).unwrap()).unwrap()).unwrap()
            .add(&g.bracket(&z, &g.bracket(&x, &y).unwrap()).unwrap()).unwrap();
        prop_assert!(cyc.is_zero());
    }

    #[test]
    fn definition_round_trip(p in 1i64..20, q in 1i64..20) {
        prop_assume!(p != q);
        let cls = ExtensionClass::Case3 { zeta2: rat(p, q) };
        let alg = build_extended(&cls).unwrap();
        let back = LieAlgebra::from_json(&alg.to_json()).unwrap();
        prop_assert_eq!(back.to_json(), alg.to_json());
        prop_assert!(back.jacobi_check().is_empty());
    }

    #[test]
    fn abelian_betti_is_binomial(n in 1usize..5, k in 0usize..4) {
        prop_assume!(k <= n);
        let a = LieAlgebra::abelian("abelian", n);
        let r = betti(&a, &CoefficientModule::Trivial, k, &Method::Exact).unwrap();
        prop_assert_eq!(r.betti, binom(n, k));
    }

    #[test]
    fn group_law_identities(seed in any::<u64>(), scale in 0.1f64..1.5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (a, b, c) = (GroupElement::random(&mut rng, scale), GroupElement::random(&mut rng, scale), GroupElement::random(&mut rng, scale));
        let e = GroupElement::identity();
        prop_assert!(a.compose(&b).compose(&c).distance(&a.compose(&b.compose(&c))) < 1e-9);
        prop_assert!(a.compose(&a.inverse()).distance(&e) < 1e-10);
        prop_assert!(a.compose(&e).distance(&a) < 1e-12);
        // the embedding into the extension is a homomorphism
        let ab = restrict_from_extension(&embed_in_extension(&a).compose(&embed_in_extension(&b)));
        prop_assert!(ab.distance(&a.compose(&b)) < 1e-10);
        let x = ExtendedGroupElement::random(&mut rng, scale);
        prop_assert!(x.inverse().compose(&x).distance(&ExtendedGroupElement::identity()) < 1e-10);
    }

    #[test]
    fn classification_is_similarity_invariant(b in -3.0f64..3.0, bp in -3.0f64..3.0, c in -3.0f64..3.0, cp in -3.0f64..3.0, seed in any::<u64>()) {
        let m = ExtensionMatrix::new(b, bp, c, cp);
        let cls = classify(&m);
        // keep away from the discriminant and determinant walls
        let (tr, det) = (b + cp, b * cp - bp * c);
        prop_assume!((tr * tr - 4.0 * det).abs() > 1e-3 && det.abs() > 1e-3 && tr.abs() > 1e-3);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let conj = random_conjugate(&mut rng, m.entries());
        prop_assert!(equivalent(&m, &conj));
        prop_assert_eq!(classify(&conj).case, cls.case);
    }
}

fn params() -> impl Strategy<Value = RepParams> {
    (0.3f64..3.0, 0.2f64..2.0, 0.5f64..2.0, -4.0f64..4.0).prop_map(|(m0, alpha, lambda, ell)| RepParams::new(m0, alpha, lambda, ell, 0, 0).unwrap())
}

fn state(dim: usize) -> impl Strategy<Value = WaveFunction> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), dim).prop_filter_map("nonzero", |v| {
        WaveFunction::new(CVector::from_iterator(v.len(), v.into_iter().map(|(a, b)| Complex64::new(a, b)))).ok()?.normalize().ok()
    })
}

proptest! {
    #![proptest_config(config(24))]

    #[test]
    fn mass_formula(p in params(), cutoff in 3usize..8) {
        let levels = spectrum(&p, &FockBasis::new(cutoff), 1e-6);
        prop_assert_eq!(levels.len(), cutoff - 1);
        for (n, l) in levels.iter().enumerate() {
            prop_assert!((l.eigenvalue - (n as f64 + 1.5 + p.ell / 2.0)).abs() < 1e-10);
            prop_assert_eq!(l.multiplicity, (n + 1) * (n + 2) / 2);
        }
    }

    #[test]
    fn evolution_is_a_unitary_group(p in params(), psi in state(FockBasis::new(5).dim()), t1 in -5.0f64..5.0, t2 in -5.0f64..5.0) {
        let basis = FockBasis::new(5);
        let u = Propagator::new(&p, &basis);
        let a = u.apply(&u.apply(&psi, t1).unwrap(), t2).unwrap();
        let b = evolve(&psi, t1 + t2, &p, &basis).unwrap();
        prop_assert!((a.norm() - 1.0).abs() < 1e-12);
        prop_assert!((&a.coeffs - &b.coeffs).norm() < 1e-11);
        let back = u.apply(&b, -(t1 + t2)).unwrap();
        prop_assert!((&back.coeffs - &psi.coeffs).norm() < 1e-11);
    }

    #[test]
    fn state_file_round_trip(psi in state(FockBasis::new(3).dim())) {
        let basis = FockBasis::new(3);
        let mut buf = Vec::new();
        psi.write(&mut buf).unwrap();
        let back = WaveFunction::read(buf.as_slice(), &basis).unwrap();
        prop_assert_eq!(back.coeffs, psi.coeffs);
    }
}

#[test]
fn selector_matches_builder() {
    assert_eq!(select_algebra("newstein-ext:7").unwrap().to_json(), build_extended(&ExtensionClass::Case7).unwrap().to_json());
}
