//! Acceptance run: one PASS/FAIL line per criterion.
//!
//! Every criterion is evaluated with the literal definitions and printed as
//! measured. Three criteria are red, and the test pins them down rather than
//! hiding them: the set of failing criteria must be exactly `EXPECTED_RED`.
//! Each red criterion must also fail for its one documented reason, and every
//! part that can hold must hold.
//!
//! The reason is always the same: an object `M ⊕ N` where `M` is E-simple
//! and `N` embeds into `M` in two ways (two graph copies of `N`). The two
//! copies are maximal subobjects meeting only in `0`, so the E-radical
//! vanishes although `N` is not E-simple. Direct sums of that kind occur in
//! structures that are Jordan–Hölder and have no non-split admissible
//! sequence with such a middle term.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use exstructa::exact::{counting_identity, is_aw_fast};
use exstructa::interval::linear_algebras;
use exstructa::jh::{census, diamond_check, CensusReport, ObjectAnalyzer};
use exstructa::linalg::Field;
use exstructa::oracle::axioms::validate_exact_axioms_many;
use exstructa::oracle::{Catalogue, PairMask};
use exstructa::poset::{build_poset, e_simple_types, fourth_iso_check, schur_check};
use exstructa::report::{classify, cmd_verify, Selected, Setting, Suite, VerifyConfig};

const EXPECTED_RED: [u32; 3] = [1, 3, 5];

struct Outcome {
    id: u32,
    name: &'static str,
    passed: bool,
    detail: String,
    elapsed: Duration,
}

fn run(id: u32, name: &'static str, f: impl FnOnce() -> (bool, String)) -> Outcome {
    let start = Instant::now();
    let (passed, detail) = f();
    let outcome = Outcome {
        id,
        name,
        passed,
        detail,
        elapsed: start.elapsed(),
    };
    println!(
        "[{}] {}. {} ({:.1}s): {}",
        if outcome.passed { "PASS" } else { "FAIL" },
        outcome.id,
        outcome.name,
        outcome.elapsed.as_secs_f64(),
        outcome.detail
    );
    outcome
}

fn setting(name: &str, field: Field) -> Setting {
    Setting::resolve(name, field).unwrap()
}

fn masks(structures: &[Selected]) -> Vec<PairMask> {
    structures.iter().map(|s| s.mask.clone()).collect()
}

fn types(cat: &Catalogue, names: &[&str]) -> Vec<usize> {
    let mut t: Vec<usize> = names.iter().map(|n| cat.index_of(n).unwrap()).collect();
    t.sort_unstable();
    t
}

fn names(cat: &Catalogue, t: &[usize]) -> BTreeSet<String> {
    t.iter().map(|&i| cat.name(i).to_string()).collect()
}

/// `B` as a set of AR sequence labels, e.g. `{1,2}`.
fn label_set(s: &Setting, sel: &Selected) -> String {
    s.describe_bits(&sel.bits)
}

// ---------------------------------------------------------------------------

fn criterion_1() -> (bool, String) {
    let s = setting("sink-a3", Field::GF2);
    let structures = s.all_structures().unwrap();
    assert_eq!(structures.len(), 8);
    let table = classify(&s, &structures, 6, Some(5)).unwrap();
    let axioms_ok = table.rows.iter().all(|r| r.axioms == Some(true));
    let jh: BTreeSet<String> = table.rows.iter().filter(|r| r.is_jh).map(|r| r.b_set.clone()).collect();
    let all_three: BTreeSet<String> = table
        .rows
        .iter()
        .filter(|r| r.is_aw_brute && r.is_jh && r.is_diamond)
        .map(|r| r.b_set.clone())
        .collect();
    let jh_expected: BTreeSet<String> = ["{}", "{2}", "{1,2}", "{3}", "{1,3}", "{1,2,3}"]
        .iter()
        .map(|x| x.to_string())
        .collect();

    let cat = s.catalogue();
    let c = census(cat, &masks(&structures), 6).unwrap();
    let e1 = &c.verdicts[1];
    let e23 = &c.verdicts[6];
    let p1p3 = types(cat, &["P1", "P3"]);
    let i2 = types(cat, &["I2"]);
    let e1_pattern = e1.aw_violations.iter().any(|v| v.object == p1p3 && !v.aw1 && v.aw2);
    let e23_pattern = e23.aw_violations.iter().any(|v| v.object == i2 && v.aw3 && !v.aw2);
    let e1_false = !e1.is_aw() && !e1.is_jh() && !e1.is_diamond();
    let e23_false = !e23.is_aw() && !e23.is_jh() && !e23.is_diamond();

    assert!(axioms_ok);
    assert_eq!(jh, jh_expected);
    assert!(e1_pattern && e23_pattern && e1_false && e23_false);
    // The red part: only the two extreme structures satisfy all three, and
    // each JH-only structure is AW-false through a direct sum containing `I2`,
    // whose two graph copies are maximal with zero intersection.
    let extremes: BTreeSet<String> = ["{}", "{1,2,3}"].iter().map(|x| x.to_string()).collect();
    assert_eq!(all_three, extremes);
    for (i, v) in c.verdicts.iter().enumerate() {
        if v.is_jh() && !v.is_aw() {
            let w = &v.aw_violations[0];
            assert!(
                w.aw3 && !w.aw2 && w.object.contains(&cat.index_of("I2").unwrap()),
                "structure {i}"
            );
        }
    }

    let passed = axioms_ok && jh == jh_expected && all_three == jh_expected && e1_pattern && e23_pattern;
    (
        passed,
        format!(
            "axioms 8/8; JH = {jh:?} (6/8); E(1), E(2,3) false with the expected witnesses; \
             AW = JH = diamond only on {all_three:?}: E(2), E(3), E(1,2), E(1,3) have \
             rad(S⊕I2) = {{0}} with I2 not E-simple"
        ),
    )
}

fn criterion_2() -> (bool, String) {
    let s = setting("source-a3", Field::GF2);
    let sel = s.from_hex("3").unwrap();
    assert_eq!(label_set(&s, &sel), "{AR1,AR2}");
    let cat = s.catalogue();
    let analyzer = ObjectAnalyzer::new(cat, &sel.mask, 6).unwrap();
    let p1 = cat.module(cat.index_of("P1").unwrap()).clone();
    let jh = analyzer.jh_object(&p1).unwrap();
    let factor_sets: BTreeSet<BTreeSet<String>> = jh.factor_sets.iter().map(|f| names(cat, f)).collect();
    let expected: BTreeSet<BTreeSet<String>> = [["S2", "I3"], ["S3", "I2"]]
        .iter()
        .map(|f| f.iter().map(|x| x.to_string()).collect())
        .collect();
    let diamond = diamond_check(cat, &sel.mask, 6).unwrap();
    let passed = !jh.holds() && factor_sets == expected && diamond.is_some();
    (
        passed,
        format!(
            "jh_object(P1) = {}, factor multisets {factor_sets:?}; diamond_check = {}",
            jh.holds(),
            diamond.is_none()
        ),
    )
}

struct SweepRow {
    algebra: String,
    hex: String,
    fast: bool,
    brute: bool,
    jh: bool,
    counting: bool,
}

fn sweep() -> Vec<(Setting, Vec<Selected>, CensusReport)> {
    let mut out = Vec::new();
    for n in 1..=4 {
        for alg in linear_algebras(n) {
            let s = setting(&alg.to_string(), Field::GF2);
            let structures = s.all_structures().unwrap();
            let c = census(s.catalogue(), &masks(&structures), 6).unwrap();
            out.push((s, structures, c));
        }
    }
    out
}

fn criterion_3(data: &[(Setting, Vec<Selected>, CensusReport)]) -> (bool, String) {
    let mut rows = Vec::new();
    for (s, structures, c) in data {
        for (sel, v) in structures.iter().zip(&c.verdicts) {
            let e = sel.exact.as_ref().unwrap();
            rows.push(SweepRow {
                algebra: s.label(),
                hex: e.hex(),
                fast: is_aw_fast(e),
                brute: v.is_aw(),
                jh: v.is_jh(),
                counting: counting_identity(e),
            });
            if v.is_jh() && !v.is_aw() {
                assert!(
                    v.aw_violations.iter().all(|w| w.aw3 && !w.aw2),
                    "{} {}",
                    s.label(),
                    e.hex()
                );
            }
        }
    }
    let count = |f: &dyn Fn(&SweepRow) -> bool| rows.iter().filter(|r| f(r)).count();
    let fast_jh = count(&|r| r.fast != r.jh);
    let fast_counting = count(&|r| r.fast != r.counting);
    let fast_brute = count(&|r| r.fast != r.brute);
    let brute_without_jh = count(&|r| r.brute && !r.jh);
    let example = rows
        .iter()
        .find(|r| r.fast != r.brute)
        .map(|r| format!("{} B={}", r.algebra, r.hex));

    assert_eq!(rows.len(), 192);
    assert_eq!(fast_jh, 0);
    assert_eq!(fast_counting, 0);
    assert_eq!(brute_without_jh, 0);
    assert_eq!(fast_brute, 49);
    assert!(rows.iter().filter(|r| r.fast != r.brute).all(|r| r.fast && !r.brute));

    (
        fast_brute == 0 && fast_jh == 0 && fast_counting == 0,
        format!(
            "{} structures over {} algebras; fast ⟺ JH ⟺ counting: 0 disagreements; \
             fast vs brute-force AW: {fast_brute} disagreements (all AW-false, JH-true; first {})",
            rows.len(),
            data.len(),
            example.unwrap_or_default()
        ),
    )
}

fn criterion_4() -> (bool, String) {
    let mut config = VerifyConfig::new("linear-upto:4", Suite::Eb);
    config.fields = vec![2, 3];
    let report = cmd_verify(&config).unwrap();
    let eb = &report.suites[0];
    (
        eb.passed(),
        format!(
            "{} sequence checks over GF(2) and GF(3); {}",
            eb.cases,
            eb.failure.clone().unwrap_or("0 disagreements".into())
        ),
    )
}

fn criterion_5() -> (bool, String) {
    let s = setting("A3", Field::GF2);
    let structures = s.all_structures().unwrap();
    let table = classify(&s, &structures, 6, None).unwrap();
    let jh_fail: Vec<&str> = table
        .rows
        .iter()
        .filter(|r| !r.is_jh)
        .map(|r| r.b_set.as_str())
        .collect();
    let aw_fail: Vec<&str> = table
        .rows
        .iter()
        .filter(|r| !r.is_aw_brute)
        .map(|r| r.b_set.as_str())
        .collect();
    let unique = table.rows.iter().find(|r| !r.is_jh).unwrap();
    let all_simple = unique.e_simple_count == 6;

    assert_eq!(jh_fail, ["{(1,2)}"]);
    assert!(all_simple);
    assert_eq!(aw_fail, ["{(1,2)}", "{(2,1)}", "{(1,1),(2,1)}"]);
    for r in table.rows.iter().filter(|r| r.is_jh && !r.is_aw_brute) {
        assert!(
            r.aw_witness.starts_with("(1,3)⊕(2,2): AW1=no AW2=no AW3=yes"),
            "{}",
            r.aw_witness
        );
    }

    (
        jh_fail.len() == 1 && aw_fail.len() == 1 && all_simple,
        format!(
            "JH on 7/8, unique failure {} with all 6 indecomposables E-simple; brute-force AW on {}/8: \
             {{(2,1)}} and {{(1,1),(2,1)}} have rad((1,3)⊕(2,2)) = {{0}} with (2,2) not E-simple",
            unique.b_set,
            8 - aw_fail.len()
        ),
    )
}

fn criterion_6() -> (bool, String) {
    let mut checked = 0;
    let mut cases = 0;
    let mut failures = Vec::new();
    for (name, field, cap) in [
        ("A3", Field::GF2, usize::MAX),
        ("A3", Field::GF3, usize::MAX),
        ("linear:2,2,1", Field::GF2, usize::MAX),
        ("cyclic:2,2", Field::GF2, usize::MAX),
        ("linear:3,3,2,1", Field::GF2, 6),
        ("sink-a3", Field::GF2, usize::MAX),
        ("source-a3", Field::GF2, usize::MAX),
    ] {
        let s = setting(name, field);
        let structures: Vec<Selected> = s.all_structures().unwrap().into_iter().take(cap).collect();
        for (sel, r) in structures
            .iter()
            .zip(validate_exact_axioms_many(s.catalogue(), &masks(&structures), 5).unwrap())
        {
            checked += 1;
            cases += r.total_cases();
            if !r.passed() {
                failures.push(format!("{name} B={}: {r}", label_set(&s, sel)));
            }
        }
    }
    (
        failures.is_empty(),
        format!(
            "{checked} (algebra, B) pairs, {cases} axiom instances at dimension ≤ 5; {} failures {failures:?}",
            failures.len()
        ),
    )
}

/// Small settings for the structural suites.
fn property_settings() -> Vec<(Setting, Vec<Selected>, CensusReport)> {
    [
        ("A3", Field::GF2),
        ("A3", Field::GF3),
        ("linear:2,2,1", Field::GF2),
        ("cyclic:2,2", Field::GF2),
        ("sink-a3", Field::GF2),
        ("source-a3", Field::GF2),
    ]
    .into_iter()
    .map(|(name, field)| {
        let s = setting(name, field);
        let structures = s.all_structures().unwrap();
        let c = census(s.catalogue(), &masks(&structures), 4).unwrap();
        (s, structures, c)
    })
    .collect()
}

#[derive(Default)]
struct Tally {
    cases: usize,
    failures: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn summary(&self) -> String {
        match self.failures.first() {
            None => format!("{} cases", self.cases),
            Some(f) => format!("{} cases, {} failures (first: {f})", self.cases, self.failures.len()),
        }
    }
}

fn criterion_7(
    small: &[(Setting, Vec<Selected>, CensusReport)],
    sweep: &[(Setting, Vec<Selected>, CensusReport)],
) -> (bool, String) {
    let mut fourth = Tally::default();
    let mut schur = Tally::default();
    let mut rad = Tally::default();
    let mut additivity = Tally::default();
    let mut monotone = Tally::default();
    let mut diamond = Tally::default();

    for (s, structures, c) in small {
        let cat = s.catalogue();
        for (sel, v) in structures.iter().zip(&c.verdicts) {
            let b = label_set(s, sel);
            let simples = e_simple_types(cat, &sel.mask).unwrap();
            let sample: Vec<(usize, Vec<usize>)> = simples
                .iter()
                .flat_map(|&t| {
                    c.objects
                        .iter()
                        .filter(|o| !o.is_empty() && o.len() <= 2)
                        .map(move |o| (t, o.clone()))
                })
                .collect();
            let r = schur_check(cat, &sel.mask, &simples, &sample).unwrap();
            schur.cases += r.cases;
            schur
                .failures
                .extend(r.failures.into_iter().map(|f| format!("{} B={b}: {f}", s.label())));

            for (i, obj) in c.objects.iter().enumerate() {
                let x = cat.realize(obj);
                if x.total_dim() > 4 {
                    continue;
                }
                let p = build_poset(cat, &sel.mask, &x, 4).unwrap();
                let what = |m: &str| format!("{} B={b} X={}: {m}", s.label(), cat.describe(obj));
                if x.total_dim() <= 3 {
                    for k in 1..p.top() {
                        fourth.check(fourth_iso_check(cat, &sel.mask, &x, &p.elements[k], 4).unwrap(), || {
                            what(&format!(
                                "fourth isomorphism fails above {}",
                                cat.describe(&p.classes[k])
                            ))
                        });
                    }
                }
                for r in p.rad_e().into_iter().filter(|&r| r != p.zero()) {
                    let (q, _) = x.quotient(&p.elements[r]);
                    let pq = build_poset(cat, &sel.mask, &q, 4).unwrap();
                    rad.check(pq.rad_is_zero(), || {
                        what(&format!("rad(X/{}) ≠ {{0}}", cat.describe(&p.classes[r])))
                    });
                }
                if v.is_jh() {
                    let len = |t: &[usize]| v.lengths[c.object_index(t).unwrap()].0;
                    for k in 0..p.len() {
                        additivity.check(len(obj) == len(&p.classes[k]) + len(&p.quotients[k]), || {
                            what(&format!("l(X) ≠ l({}) + l(X/it)", cat.describe(&p.classes[k])))
                        });
                    }
                    assert_eq!(v.lengths[i].0, v.lengths[i].1);
                }
            }
        }
    }

    for (s, structures, c) in small.iter().chain(sweep) {
        for (sel, v) in structures.iter().zip(&c.verdicts) {
            diamond.check(!v.is_diamond() || v.is_jh(), || {
                format!("{} B={}: diamond but not JH", s.label(), label_set(s, sel))
            });
        }
        for (a, va) in structures.iter().zip(&c.verdicts).filter(|(_, v)| v.is_jh()) {
            for (b, vb) in structures.iter().zip(&c.verdicts).filter(|(_, v)| v.is_jh()) {
                if a.bits == b.bits || !a.bits.is_subset(&b.bits) {
                    continue;
                }
                for (i, obj) in c.objects.iter().enumerate() {
                    monotone.check(va.lengths[i].0 <= vb.lengths[i].0, || {
                        format!(
                            "{} {} ⊆ {}: length of {} drops",
                            s.label(),
                            label_set(s, a),
                            label_set(s, b),
                            s.catalogue().describe(obj)
                        )
                    });
                }
            }
        }
    }

    let suites = [
        ("fourth_iso", &fourth),
        ("schur", &schur),
        ("rad(X/R)", &rad),
        ("length additivity", &additivity),
        ("length monotonicity", &monotone),
        ("diamond ⇒ JH", &diamond),
    ];
    let passed = suites.iter().all(|(_, t)| t.cases >= 100 && t.failures.is_empty());
    let detail = suites
        .iter()
        .map(|(n, t)| format!("{n}: {}", t.summary()))
        .collect::<Vec<_>>()
        .join("; ");
    (passed, detail)
}

fn main() {
    exstructa::report::init_threads().unwrap();
    let sweep_start = Instant::now();
    let data = sweep();
    let sweep_time = sweep_start.elapsed();
    let small = property_settings();

    let outcomes = [
        run(
            1,
            "sink fixture: axioms and AW = JH = diamond classification",
            criterion_1,
        ),
        run(2, "source fixture B = {AR1, AR2}: JH counterexample at P1", criterion_2),
        run(3, "Nakayama equivalence sweep, n ≤ 4, dimension ≤ 6, GF(2)", || {
            let (ok, detail) = criterion_3(&data);
            (ok, format!("{detail}; census {:.1}s", sweep_time.as_secs_f64()))
        }),
        run(4, "interval membership vs oracle over GF(2), GF(3)", criterion_4),
        run(5, "A3 table: 7 of 8 structures AW/JH", criterion_5),
        run(6, "exact-category axioms at dimension ≤ 5", criterion_6),
        run(7, "structural property suites", || criterion_7(&small, &data)),
    ];

    assert!(outcomes[0].elapsed < Duration::from_secs(30));
    assert!(sweep_time + outcomes[2].elapsed < Duration::from_secs(600));
    let red: Vec<u32> = outcomes.iter().filter(|o| !o.passed).map(|o| o.id).collect();
    let green = outcomes.len() - red.len();
    println!("{green}/{} criteria pass; red: {red:?}", outcomes.len());
    assert_eq!(red, EXPECTED_RED, "red criteria changed");
}
