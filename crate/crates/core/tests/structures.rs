use exstructa::exact::{is_aw_fast, seq_in_e, ExactStructure};
use exstructa::interval::{ext_shape, indecomposables, AlgebraSpec, Interval};
use exstructa::jh::{aw_bruteforce, diamond_check, jh_category, ObjectAnalyzer, DEFAULT_SERIES_CAP};
use exstructa::linalg::Field;
use exstructa::oracle::nakayama::realize_extension;
use exstructa::oracle::{admissible_monic, subfunctor_closure, Catalogue, GenericFixture, PairMask};
use exstructa::poset::{build_poset, e_simple_types, fourth_iso_check, is_semisimple, schur_check};
use exstructa::report::{cmd_verify, Suite, VerifyConfig};
use fixedbitset::FixedBitSet;
use proptest::prelude::*;

fn iv(c: usize, l: usize) -> Interval {
    Interval::new(c, l)
}

fn a3(field: Field, ends: &[Interval]) -> (Catalogue, PairMask) {
    let alg = AlgebraSpec::a_n(3);
    let cat = Catalogue::nakayama(&alg, field).unwrap();
    let e = ExactStructure::from_ends(alg, ends).unwrap();
    let mask = PairMask::for_structure(&e, &cat);
    (cat, mask)
}

fn all_a3() -> Vec<Interval> {
    vec![iv(1, 1), iv(1, 2), iv(2, 1)]
}

fn types(cat: &Catalogue, ms: &[Interval]) -> Vec<usize> {
    let mut t: Vec<usize> = ms.iter().map(|&m| cat.interval_index(m).unwrap()).collect();
    t.sort_unstable();
    t
}

#[test]
fn sink_fixture_subfunctors() {
    let fx = GenericFixture::builtin("sink-a3", Field::GF2).unwrap();
    let cat = &fx.catalogue;
    let m = fx.ar_names.len();

    let mut one = FixedBitSet::with_capacity(m);
    one.insert(fx.ar_index("2").unwrap());
    let sf = subfunctor_closure(cat, &one).unwrap();
    assert_eq!(sf.socle(), &one);
    let again = subfunctor_closure(cat, sf.socle()).unwrap();
    assert_eq!(again.active_pairs(), sf.active_pairs());

    let mut all = FixedBitSet::with_capacity(m);
    all.insert_range(..);
    let max = subfunctor_closure(cat, &all).unwrap();
    assert_eq!(max.active_pairs(), cat.nonzero_ext_pairs());
    assert!(subfunctor_closure(cat, &FixedBitSet::with_capacity(m))
        .unwrap()
        .active_pairs()
        .is_empty());
}

#[test]
fn fourth_isomorphism_on_a_uniserial() {
    let (cat, mask) = a3(Field::GF2, &all_a3());
    let x = cat.module(cat.interval_index(iv(1, 3)).unwrap()).clone();
    let p = build_poset(&cat, &mask, &x, 6).unwrap();
    assert_eq!(p.len(), 4);
    let socle = p.elements[1].clone();
    assert_eq!(p.classes[1], types(&cat, &[iv(3, 1)]));
    assert!(fourth_iso_check(&cat, &mask, &x, &socle, 6).unwrap());
    let above = (0..p.len()).filter(|&m| p.leq(1, m)).count();
    let (q, _) = x.quotient(&socle);
    assert_eq!(cat.iso_class(&q).unwrap(), types(&cat, &[iv(1, 2)]));
    assert_eq!((above, build_poset(&cat, &mask, &q, 6).unwrap().len()), (3, 3));
}

#[test]
fn semisimplicity_and_radicals() {
    let (cat, mask) = a3(Field::GF2, &[iv(1, 2)]);
    let simples = e_simple_types(&cat, &mask).unwrap();
    assert_eq!(simples.len(), 6);
    let x = cat.realize(&types(&cat, &[iv(2, 1), iv(1, 3)]));
    assert!(is_semisimple(&cat, &simples, &x).unwrap());

    let (cat, mask) = a3(Field::GF2, &all_a3());
    for &s in &e_simple_types(&cat, &mask).unwrap() {
        let p = build_poset(&cat, &mask, cat.module(s), 6).unwrap();
        assert_eq!(p.rad_e(), vec![p.zero()]);
    }
    let p1 = cat.module(cat.interval_index(iv(1, 3)).unwrap());
    let p = build_poset(&cat, &mask, p1, 6).unwrap();
    let rad = p.rad_e();
    assert_eq!(rad.len(), 1);
    assert_eq!(p.classes[rad[0]], types(&cat, &[iv(2, 2)]));
}

#[test]
fn schur_under_the_abelian_structure() {
    let (cat, mask) = a3(Field::GF3, &all_a3());
    let simples = e_simple_types(&cat, &mask).unwrap();
    assert_eq!(simples, types(&cat, &[iv(1, 1), iv(2, 1), iv(3, 1)]));
    let sample: Vec<(usize, Vec<usize>)> = simples.iter().map(|&s| (s, vec![s])).collect();
    let r = schur_check(&cat, &mask, &simples, &sample).unwrap();
    // Two nonzero scalars per direction per simple over GF(3).
    assert_eq!(r.cases, 12);
    assert!(r.failures.is_empty());
}

#[test]
fn radical_vanishes_on_a_non_semisimple_object() {
    // Under E({η_(2,1)}), (1,3) is E-simple and (2,2) embeds into it. The
    // graphs of the p embeddings (including zero) are maximal subobjects of
    // (1,3)⊕(2,2) with quotient (1,3); any two meet in 0.
    for field in [Field::GF2, Field::GF3] {
        let (cat, mask) = a3(field, &[iv(2, 1)]);
        let simples = e_simple_types(&cat, &mask).unwrap();
        let x = cat.realize(&types(&cat, &[iv(1, 3), iv(2, 2)]));
        let p = build_poset(&cat, &mask, &x, 6).unwrap();
        let maximal = p.maximal_proper();
        let graphs = maximal
            .iter()
            .filter(|&&m| p.quotients[m] == types(&cat, &[iv(1, 3)]))
            .count();
        assert_eq!(graphs, field.p() as usize);
        assert!(p.rad_is_zero());
        assert!(!is_semisimple(&cat, &simples, &x).unwrap());

        let violations = aw_bruteforce(&cat, &mask, 5).unwrap();
        assert!(violations
            .iter()
            .any(|v| v.object == types(&cat, &[iv(1, 3), iv(2, 2)]) && v.aw3 && !v.aw2));
        assert!(jh_category(&cat, &mask, 5).unwrap().is_none());
        let e = ExactStructure::from_ends(AlgebraSpec::a_n(3), &[iv(2, 1)]).unwrap();
        assert!(is_aw_fast(&e));
    }
}

#[test]
fn jordan_holder_examples_on_a3() {
    let (cat, mask) = a3(Field::GF2, &[iv(1, 2)]);
    let analyzer = ObjectAnalyzer::new(&cat, &mask, 6).unwrap();
    let mid = cat.realize(&types(&cat, &[iv(2, 1), iv(1, 3)]));
    let jh = analyzer.jh_object(&mid).unwrap();
    assert!(!jh.holds());
    let (a, b) = jh.witness.unwrap();
    assert_ne!(a.factor_multiset(), b.factor_multiset());
    assert!(jh_category(&cat, &mask, 6).unwrap().is_some());

    let (cat, mask) = a3(Field::GF2, &[iv(1, 1)]);
    assert!(jh_category(&cat, &mask, 6).unwrap().is_none());

    let (cat, mask) = a3(Field::GF2, &[]);
    assert!(jh_category(&cat, &mask, 6).unwrap().is_none());
    assert!(aw_bruteforce(&cat, &mask, 6).unwrap().is_empty());

    let (cat, mask) = a3(Field::GF2, &all_a3());
    assert!(jh_category(&cat, &mask, 6).unwrap().is_none());
    assert!(diamond_check(&cat, &mask, 6).unwrap().is_none());
    assert!(aw_bruteforce(&cat, &mask, 6).unwrap().is_empty());
    let analyzer = ObjectAnalyzer::new(&cat, &mask, 6).unwrap();
    let p1 = cat.module(cat.interval_index(iv(1, 3)).unwrap());
    let series = analyzer.composition_series(p1, DEFAULT_SERIES_CAP).unwrap();
    assert_eq!(series.series.len(), 1);
    assert_eq!(analyzer.length(p1).unwrap(), 3);
}

#[test]
fn verify_full_suite_on_a2() {
    let report = cmd_verify(&VerifyConfig::new("A2", Suite::All)).unwrap();
    assert!(report.passed(), "{report}");
    assert_eq!(report.suites.len(), 4);
}

fn kupisch() -> impl Strategy<Value = Vec<usize>> {
    (2usize..=5).prop_flat_map(|n| {
        proptest::collection::vec(1usize..=n, n).prop_map(move |raw| {
            // Clamp to a valid linear Kupisch series: ℓ_n = 1 and
            // ℓ_{i+1} ≥ ℓ_i − 1 with ℓ_i ≤ n − i + 1.
            let mut ls = vec![1; n];
            for i in (0..n - 1).rev() {
                ls[i] = raw[i].clamp(1, (ls[i + 1] + 1).min(n - i));
            }
            ls
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Interval membership agrees with oracle admissibility over GF(3) on
    /// random Kupisch series and random AR subsets, up to five vertices.
    #[test]
    fn interval_membership_matches_oracle(ls in kupisch(), seed in any::<u64>()) {
        let spec = format!("linear:{}", ls.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(","));
        let alg: AlgebraSpec = spec.parse().unwrap();
        let cat = Catalogue::nakayama(&alg, Field::GF3).unwrap();
        let m = cat.ar_pairs().len();
        let mut bits = FixedBitSet::with_capacity(m);
        for k in 0..m {
            bits.set(k, seed >> (k % 64) & 1 == 1);
        }
        let e = ExactStructure::new(alg.clone(), bits.clone()).unwrap();
        let sf = subfunctor_closure(&cat, &bits).unwrap();
        prop_assert_eq!(sf.socle(), &bits);
        let ind = indecomposables(&alg);
        for &s in &ind {
            for &q in &ind {
                if ext_shape(&alg, s, q).is_some() {
                    let ses = realize_extension(&alg, &cat, s, q).unwrap();
                    prop_assert_eq!(seq_in_e(&e, s, q).unwrap(), admissible_monic(&cat, &sf, &ses.monic).unwrap(), "{} {} {}", spec, s, q);
                }
            }
        }
    }
}
