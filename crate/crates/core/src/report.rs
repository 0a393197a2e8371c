//! Batch jobs behind the command line: classification tables, oracle
//! agreement suites and graph exports.

use std::fmt::{self, Write as _};
use std::path::{Path, PathBuf};

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{
    counting_identity, e_simples, enumerate_structures_capped, is_aw_fast, seq_in_e, ExactStructure,
    DEFAULT_STRUCTURE_CAP,
};
use crate::interval::{ar_sequences, ext_shape, indecomposables, linear_algebras, AlgebraSpec};
use crate::jh::{census, StructureVerdict};
use crate::linalg::Field;
use crate::oracle::axioms::validate_exact_axioms_many;
use crate::oracle::fixture::{GenericFixture, BUILTIN_FIXTURES};
use crate::oracle::nakayama::realize_extension;
use crate::oracle::ses::{admissible_monic, PairMask};
use crate::oracle::subfunctor::ExtPropagation;
use crate::oracle::Catalogue;
use crate::poset::build_poset;

pub const DEFAULT_DIM_BOUND: usize = 6;
pub const DEFAULT_AXIOM_BOUND: usize = 4;
pub const THREADS_ENV: &str = "EXSTRUCTA_THREADS";

/// Sizes the global thread pool from `EXSTRUCTA_THREADS` when it is set.
pub fn init_threads() -> Result<()> {
    let Ok(value) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = value
        .trim()
        .parse()
        .map_err(|_| Error::Config(format!("{THREADS_ENV} must be a positive integer, got `{value}`")))?;
    if n == 0 {
        return Err(Error::Config(format!("{THREADS_ENV} must be at least 1")));
    }
    // A pool that is already running (e.g. in tests) is left alone.
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

/// An algebra (or fixture) together with its oracle catalogue.
pub enum Setting {
    Nakayama { alg: AlgebraSpec, cat: Catalogue },
    Fixture(GenericFixture),
}

/// One exact structure, selected by its set `B` of AR sequences.
#[derive(Clone, Debug)]
pub struct Selected {
    pub bits: FixedBitSet,
    pub mask: PairMask,
    pub exact: Option<ExactStructure>,
}

impl Setting {
    /// `name` is a built-in fixture, a path to a fixture JSON file, or an
    /// algebra preset such as `A3`, `linear:3,2,1`, `cyclic:2,2`.
    pub fn resolve(name: &str, field: Field) -> Result<Self> {
        if BUILTIN_FIXTURES.contains(&name) {
            return Ok(Self::Fixture(GenericFixture::builtin(name, field)?));
        }
        if name.ends_with(".json") || Path::new(name).is_file() {
            return Ok(Self::Fixture(GenericFixture::load(Path::new(name), field)?));
        }
        let alg: AlgebraSpec = name.parse()?;
        let cat = Catalogue::nakayama(&alg, field)?;
        Ok(Self::Nakayama { alg, cat })
    }

    pub fn catalogue(&self) -> &Catalogue {
        match self {
            Self::Nakayama { cat, .. } => cat,
            Self::Fixture(f) => &f.catalogue,
        }
    }

    pub fn label(&self) -> String {
        match self {
            Self::Nakayama { alg, .. } => alg.to_string(),
            Self::Fixture(f) => f.name.clone(),
        }
    }

    /// One label per AR sequence, in bit order.
    pub fn ar_labels(&self) -> Vec<String> {
        match self {
            Self::Nakayama { alg, .. } => ar_sequences(alg).iter().map(|s| s.end.to_string()).collect(),
            Self::Fixture(f) => f.ar_names.clone(),
        }
    }

    pub fn select(&self, bits: FixedBitSet) -> Result<Selected> {
        let cat = self.catalogue();
        match self {
            Self::Nakayama { alg, .. } => {
                let e = ExactStructure::new(alg.clone(), bits.clone())?;
                Ok(Selected {
                    mask: PairMask::for_structure(&e, cat),
                    bits,
                    exact: Some(e),
                })
            }
            Self::Fixture(_) => {
                let sf = ExtPropagation::new(cat).closure(cat, &bits)?;
                if sf.socle() != &bits {
                    return Err(Error::Config(format!(
                        "no closed subfunctor has socle {}",
                        self.describe_bits(&bits)
                    )));
                }
                Ok(Selected {
                    mask: sf.active().clone(),
                    bits,
                    exact: None,
                })
            }
        }
    }

    /// Every structure, in increasing order of its code.
    pub fn all_structures(&self) -> Result<Vec<Selected>> {
        let m = self.ar_labels().len();
        if m > DEFAULT_STRUCTURE_CAP {
            return Err(Error::TooManyStructures {
                count: m,
                cap: DEFAULT_STRUCTURE_CAP,
            });
        }
        if let Self::Nakayama { alg, cat } = self {
            return Ok(enumerate_structures_capped(alg, DEFAULT_STRUCTURE_CAP)?
                .map(|e| Selected {
                    mask: PairMask::for_structure(&e, cat),
                    bits: e.bits().clone(),
                    exact: Some(e),
                })
                .collect());
        }
        let prop = ExtPropagation::new(self.catalogue());
        (0..1u64 << m)
            .map(|code| {
                let bits = code_bits(code, m);
                let sf = prop.closure(self.catalogue(), &bits)?;
                if sf.socle() != &bits {
                    return Err(Error::Config(format!(
                        "no closed subfunctor has socle {}",
                        self.describe_bits(&bits)
                    )));
                }
                Ok(Selected {
                    mask: sf.active().clone(),
                    bits,
                    exact: None,
                })
            })
            .collect()
    }

    pub fn from_hex(&self, hex: &str) -> Result<Selected> {
        self.select(hex_to_bits(hex, self.ar_labels().len())?)
    }

    /// `{…}` listing the AR sequences in `bits` by their labels.
    pub fn describe_bits(&self, bits: &FixedBitSet) -> String {
        let labels = self.ar_labels();
        let parts: Vec<&str> = bits.ones().map(|k| labels[k].as_str()).collect();
        format!("{{{}}}", parts.join(","))
    }
}

fn code_bits(code: u64, m: usize) -> FixedBitSet {
    let mut b = FixedBitSet::with_capacity(m);
    for k in 0..m {
        b.set(k, code >> k & 1 == 1);
    }
    b
}

/// Big-endian lowercase hex of `Σ 2^k` over the set bits.
pub fn bits_to_hex(bits: &FixedBitSet) -> String {
    let m = bits.len();
    (0..m.div_ceil(4).max(1))
        .rev()
        .map(|d| {
            let v = (0..4)
                .filter(|&bit| d * 4 + bit < m && bits.contains(d * 4 + bit))
                .fold(0u32, |acc, bit| acc | 1 << bit);
            char::from_digit(v, 16).expect("nibble")
        })
        .collect()
}

pub fn hex_to_bits(hex: &str, m: usize) -> Result<FixedBitSet> {
    let hex = hex.trim().trim_start_matches("0x");
    if hex.is_empty() {
        return Err(Error::Config("empty structure code".into()));
    }
    let mut b = FixedBitSet::with_capacity(m);
    for (pos, ch) in hex.chars().rev().enumerate() {
        let digit = ch
            .to_digit(16)
            .ok_or_else(|| Error::Config(format!("invalid hex digit `{ch}` in `{hex}`")))?;
        for bit in 0..4 {
            if digit >> bit & 1 == 1 {
                let k = pos * 4 + bit;
                if k >= m {
                    return Err(Error::StructureWidth {
                        expected: m,
                        got: k + 1,
                    });
                }
                b.insert(k);
            }
        }
    }
    Ok(b)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", untagged)]
pub enum StructureSelection {
    #[default]
    #[serde(skip)]
    All,
    List(Vec<String>),
}

impl StructureSelection {
    pub fn parse(s: &str) -> Self {
        if s.trim() == "all" {
            Self::All
        } else {
            Self::List(s.split(',').map(|h| h.trim().to_string()).collect())
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Check {
    /// Also validate the exact-category axioms for every structure.
    Axioms,
}

/// A classification job, as read from JSON or assembled from flags.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobConfig {
    pub algebra: String,
    #[serde(default = "default_field")]
    pub field: u32,
    #[serde(default = "default_dim_bound")]
    pub dim_bound: usize,
    #[serde(default, deserialize_with = "structures_from_json")]
    pub structures: StructureSelection,
    #[serde(default)]
    pub checks: Vec<Check>,
    #[serde(default = "default_axiom_bound")]
    pub axiom_bound: usize,
    #[serde(default)]
    pub output_dir: Option<PathBuf>,
}

fn default_field() -> u32 {
    2
}

fn default_dim_bound() -> usize {
    DEFAULT_DIM_BOUND
}

fn default_axiom_bound() -> usize {
    DEFAULT_AXIOM_BOUND
}

fn structures_from_json<'de, D: serde::Deserializer<'de>>(d: D) -> std::result::Result<StructureSelection, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Raw {
        Word(String),
        List(Vec<String>),
    }
    Ok(match Raw::deserialize(d)? {
        Raw::Word(w) => StructureSelection::parse(&w),
        Raw::List(l) => StructureSelection::List(l),
    })
}

impl JobConfig {
    pub fn new(algebra: impl Into<String>) -> Self {
        Self {
            algebra: algebra.into(),
            field: default_field(),
            dim_bound: DEFAULT_DIM_BOUND,
            structures: StructureSelection::All,
            checks: Vec::new(),
            axiom_bound: DEFAULT_AXIOM_BOUND,
            output_dir: None,
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text)?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        Field::new(self.field)?;
        if self.dim_bound == 0 {
            return Err(Error::Config("dim_bound must be positive".into()));
        }
        if let StructureSelection::List(l) = &self.structures {
            if l.is_empty() {
                return Err(Error::Config("structure selection is empty".into()));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationRow {
    /// Hex code of `B`.
    pub b: String,
    pub b_set: String,
    /// The combinatorial test; only defined for Nakayama algebras.
    pub is_aw_fast: Option<bool>,
    pub is_aw_brute: bool,
    pub is_jh: bool,
    pub is_diamond: bool,
    pub e_simple_count: usize,
    pub counting_identity_holds: bool,
    pub axioms: Option<bool>,
    pub aw_witness: String,
    pub jh_witness: String,
    pub diamond_witness: String,
}

impl ClassificationRow {
    /// Whether the row is consistent with the expected implications:
    /// fast = brute AW, AW ⇒ JH, diamond ⇒ JH, and for Nakayama algebras
    /// AW ⟺ JH; also that the axioms hold when they were checked.
    pub fn consistent(&self, nakayama: bool) -> bool {
        self.is_aw_fast.is_none_or(|f| f == self.is_aw_brute)
            && (!self.is_aw_brute || self.is_jh)
            && (!self.is_diamond || self.is_jh)
            && (!nakayama || self.is_aw_brute == self.is_jh)
            && self.axioms != Some(false)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ClassificationTable {
    pub algebra: String,
    pub field: u32,
    pub dim_bound: usize,
    pub nakayama: bool,
    pub rows: Vec<ClassificationRow>,
}

const COLUMNS: [&str; 12] = [
    "b",
    "b_set",
    "is_aw_fast",
    "is_aw_brute",
    "is_jh",
    "is_diamond",
    "e_simple_count",
    "counting_identity_holds",
    "axioms",
    "aw_witness",
    "jh_witness",
    "diamond_witness",
];

fn opt(b: Option<bool>) -> String {
    b.map(|v| v.to_string()).unwrap_or_else(|| "n/a".into())
}

impl ClassificationRow {
    fn cells(&self) -> [String; 12] {
        [
            self.b.clone(),
            self.b_set.clone(),
            opt(self.is_aw_fast),
            self.is_aw_brute.to_string(),
            self.is_jh.to_string(),
            self.is_diamond.to_string(),
            self.e_simple_count.to_string(),
            self.counting_identity_holds.to_string(),
            opt(self.axioms),
            self.aw_witness.clone(),
            self.jh_witness.clone(),
            self.diamond_witness.clone(),
        ]
    }
}

impl ClassificationTable {
    pub fn consistent(&self) -> bool {
        self.rows.iter().all(|r| r.consistent(self.nakayama))
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(COLUMNS).map_err(csv_error)?;
        for r in &self.rows {
            w.write_record(r.cells()).map_err(csv_error)?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Io(e.into_error()))?;
        Ok(String::from_utf8(bytes).expect("csv of utf-8 cells"))
    }

    pub fn to_markdown(&self) -> String {
        let mut out = String::new();
        writeln!(
            out,
            "Exact structures on {} over GF({}), checked on objects of dimension ≤ {}.\n",
            self.algebra, self.field, self.dim_bound
        )
        .unwrap();
        writeln!(out, "| {} |", COLUMNS.join(" | ")).unwrap();
        writeln!(out, "|{}", "---|".repeat(COLUMNS.len())).unwrap();
        for r in &self.rows {
            let cells: Vec<String> = r.cells().iter().map(|c| c.replace('|', "\\|")).collect();
            writeln!(out, "| {} |", cells.join(" | ")).unwrap();
        }
        out
    }

    /// Writes `classification.csv` and `classification.md` into `dir`.
    pub fn write(&self, dir: &Path) -> Result<()> {
        std::fs::create_dir_all(dir)?;
        std::fs::write(dir.join("classification.csv"), self.to_csv()?)?;
        std::fs::write(dir.join("classification.md"), self.to_markdown())?;
        Ok(())
    }
}

fn csv_error(e: csv::Error) -> Error {
    Error::Io(std::io::Error::other(e))
}

pub fn cmd_classify(config: &JobConfig) -> Result<ClassificationTable> {
    config.validate()?;
    let field = Field::new(config.field)?;
    let setting = Setting::resolve(&config.algebra, field)?;
    let selected = match &config.structures {
        StructureSelection::All => setting.all_structures()?,
        StructureSelection::List(l) => l.iter().map(|h| setting.from_hex(h)).collect::<Result<_>>()?,
    };
    let table = classify(
        &setting,
        &selected,
        config.dim_bound,
        config.checks.contains(&Check::Axioms).then_some(config.axiom_bound),
    )?;
    if let Some(dir) = &config.output_dir {
        table.write(dir)?;
    }
    Ok(ClassificationTable {
        field: config.field,
        ..table
    })
}

/// Classification rows for chosen structures of one setting.
pub fn classify(
    setting: &Setting,
    selected: &[Selected],
    dim_bound: usize,
    axiom_bound: Option<usize>,
) -> Result<ClassificationTable> {
    let cat = setting.catalogue();
    let masks: Vec<PairMask> = selected.iter().map(|s| s.mask.clone()).collect();
    let report = census(cat, &masks, dim_bound)?;
    let axioms = match axiom_bound {
        Some(b) => Some(validate_exact_axioms_many(cat, &masks, b)?),
        None => None,
    };
    let rows = selected
        .iter()
        .zip(&report.verdicts)
        .enumerate()
        .map(|(i, (s, v))| row(setting, s, v, axioms.as_ref().map(|a| a[i].passed())))
        .collect();
    Ok(ClassificationTable {
        algebra: setting.label(),
        field: cat.field().p() as u32,
        dim_bound,
        nakayama: matches!(setting, Setting::Nakayama { .. }),
        rows,
    })
}

fn row(setting: &Setting, s: &Selected, v: &StructureVerdict, axioms: Option<bool>) -> ClassificationRow {
    let cat = setting.catalogue();
    let names = |types: &[usize]| {
        format!(
            "{{{}}}",
            types.iter().map(|&t| cat.name(t)).collect::<Vec<_>>().join(",")
        )
    };
    ClassificationRow {
        b: bits_to_hex(&s.bits),
        b_set: setting.describe_bits(&s.bits),
        is_aw_fast: s.exact.as_ref().map(is_aw_fast),
        is_aw_brute: v.is_aw(),
        is_jh: v.is_jh(),
        is_diamond: v.is_diamond(),
        e_simple_count: v.e_simples.len(),
        counting_identity_holds: v.e_simples.len() + s.bits.count_ones(..) == cat.len(),
        axioms,
        aw_witness: v
            .aw_violations
            .first()
            .map(|w| {
                format!(
                    "{}: AW1={} AW2={} AW3={}",
                    cat.describe(&w.object),
                    yes_no(w.aw1),
                    yes_no(w.aw2),
                    yes_no(w.aw3)
                )
            })
            .unwrap_or_default(),
        jh_witness: v
            .jh_witness
            .as_ref()
            .map(|w| {
                format!(
                    "{}: {} vs {}",
                    cat.describe(&w.object),
                    names(&w.factors.0),
                    names(&w.factors.1)
                )
            })
            .unwrap_or_default(),
        diamond_witness: v
            .diamond_witness
            .as_ref()
            .map(|w| {
                format!(
                    "{}: A={} B={} Y={} A/Y={} B/Y={}",
                    cat.describe(&w.object),
                    cat.describe(&w.a),
                    cat.describe(&w.b),
                    cat.describe(&w.y),
                    cat.describe(&w.a_over_y),
                    cat.describe(&w.b_over_y)
                )
            })
            .unwrap_or_default(),
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    All,
    Axioms,
    Eb,
    Aw,
    Counting,
}

impl Suite {
    fn includes(self, other: Suite) -> bool {
        self == Suite::All || self == other
    }
}

impl std::str::FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "all" => Self::All,
            "axioms" => Self::Axioms,
            "eb" => Self::Eb,
            "aw" => Self::Aw,
            "counting" => Self::Counting,
            other => return Err(Error::Config(format!("unknown suite `{other}`"))),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyConfig {
    /// An algebra or fixture as for [`Setting::resolve`], or `linear-upto:N`
    /// for every linear Nakayama algebra with at most `N` vertices.
    pub algebra: String,
    pub suite: Suite,
    /// Fields for the Ext-membership suite; the census uses the first one.
    pub fields: Vec<u32>,
    pub dim_bound: usize,
    pub axiom_bound: usize,
}

impl VerifyConfig {
    pub fn new(algebra: impl Into<String>, suite: Suite) -> Self {
        Self {
            algebra: algebra.into(),
            suite,
            fields: vec![2, 3],
            dim_bound: DEFAULT_DIM_BOUND,
            axiom_bound: DEFAULT_AXIOM_BOUND,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SuiteResult {
    pub suite: String,
    pub cases: usize,
    pub failure: Option<String>,
}

impl SuiteResult {
    fn new(suite: &str) -> Self {
        Self {
            suite: suite.into(),
            ..Self::default()
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.failure.is_none() {
            self.failure = Some(what());
        }
    }

    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub suites: Vec<SuiteResult>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.suites.iter().all(SuiteResult::passed)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.suites {
            match &s.failure {
                None => writeln!(f, "PASS {} ({} cases)", s.suite, s.cases)?,
                Some(msg) => writeln!(f, "FAIL {} ({} cases): {msg}", s.suite, s.cases)?,
            }
        }
        Ok(())
    }
}

/// Algebras named by a verify target.
fn sweep(algebra: &str) -> Result<Option<Vec<AlgebraSpec>>> {
    let Some(n) = algebra.strip_prefix("linear-upto:") else {
        return Ok(None);
    };
    let n: usize = n
        .parse()
        .map_err(|_| Error::Config(format!("bad sweep size in `{algebra}`")))?;
    Ok(Some((1..=n).flat_map(linear_algebras).collect()))
}

pub fn cmd_verify(config: &VerifyConfig) -> Result<VerifyReport> {
    if config.fields.is_empty() {
        return Err(Error::Config("no fields given".into()));
    }
    let fields = config
        .fields
        .iter()
        .map(|&p| Field::new(p))
        .collect::<Result<Vec<_>>>()?;
    let mut suites: Vec<SuiteResult> = Vec::new();
    let mut suite = |name: &str| -> usize {
        suites.iter().position(|s| s.suite == name).unwrap_or_else(|| {
            suites.push(SuiteResult::new(name));
            suites.len() - 1
        })
    };
    let (axioms, eb, aw, counting) = (suite("axioms"), suite("eb"), suite("aw"), suite("counting"));
    let fixture =
        (sweep(&config.algebra)?.is_none() && config.algebra.parse::<AlgebraSpec>().is_err()).then(|| suite("fixture"));
    let mut report = VerifyReport { suites };
    let wanted = |s: Suite| config.suite.includes(s);

    if let Some(fx) = fixture {
        let setting = match Setting::resolve(&config.algebra, fields[0]) {
            Ok(s) => s,
            Err(e @ Error::Fixture(_)) => {
                report.suites[fx].check(false, || format!("fixture invariant violated: {e}"));
                report.suites.retain(|s| s.suite == "fixture");
                return Ok(report);
            }
            Err(e) => return Err(e),
        };
        report.suites[fx].check(true, String::new);
        report.suites.retain(|s| s.suite != "eb");
        let structures = setting.all_structures()?;
        verify_setting(
            &setting,
            &structures,
            config,
            &mut report,
            axioms,
            None,
            aw,
            counting,
            &wanted,
        )?;
    } else {
        let algebras = match sweep(&config.algebra)? {
            Some(list) => list,
            None => vec![config.algebra.parse()?],
        };
        for alg in &algebras {
            let setting = Setting::Nakayama {
                alg: alg.clone(),
                cat: Catalogue::nakayama(alg, fields[0])?,
            };
            let structures = setting.all_structures()?;
            verify_setting(
                &setting,
                &structures,
                config,
                &mut report,
                axioms,
                Some(eb),
                aw,
                counting,
                &wanted,
            )?;
            if wanted(Suite::Eb) {
                for &field in &fields[1..] {
                    let other = Setting::Nakayama {
                        alg: alg.clone(),
                        cat: Catalogue::nakayama(alg, field)?,
                    };
                    eb_suite(&other, &structures, &mut report.suites[eb])?;
                }
            }
        }
    }
    let keep = |name: &str| match name {
        "axioms" => wanted(Suite::Axioms),
        "eb" => wanted(Suite::Eb),
        "aw" => wanted(Suite::Aw),
        "counting" => wanted(Suite::Counting),
        _ => true,
    };
    report.suites.retain(|s| keep(&s.suite));
    Ok(report)
}

#[allow(clippy::too_many_arguments)]
fn verify_setting(
    setting: &Setting,
    structures: &[Selected],
    config: &VerifyConfig,
    report: &mut VerifyReport,
    axioms: usize,
    eb: Option<usize>,
    aw: usize,
    counting: usize,
    wanted: &dyn Fn(Suite) -> bool,
) -> Result<()> {
    let cat = setting.catalogue();
    let find = |report: &VerifyReport, name: &str| report.suites.iter().position(|s| s.suite == name);
    let label = setting.label();
    let masks: Vec<PairMask> = structures.iter().map(|s| s.mask.clone()).collect();
    if wanted(Suite::Axioms) {
        let i = find(report, "axioms").unwrap_or(axioms);
        for (s, r) in structures
            .iter()
            .zip(validate_exact_axioms_many(cat, &masks, config.axiom_bound)?)
        {
            report.suites[i].check(r.passed(), || {
                format!("{label} B={}: {r}", setting.describe_bits(&s.bits))
            });
        }
    }
    if let (Some(eb), true) = (eb, wanted(Suite::Eb)) {
        let i = find(report, "eb").unwrap_or(eb);
        eb_suite(setting, structures, &mut report.suites[i])?;
    }
    if wanted(Suite::Aw) || wanted(Suite::Counting) {
        let census = census(cat, &masks, config.dim_bound)?;
        let (ia, ic) = (
            find(report, "aw").unwrap_or(aw),
            find(report, "counting").unwrap_or(counting),
        );
        for (s, v) in structures.iter().zip(&census.verdicts) {
            let b = setting.describe_bits(&s.bits);
            if wanted(Suite::Aw) {
                let r = &mut report.suites[ia];
                if let Some(e) = &s.exact {
                    r.check(is_aw_fast(e) == v.is_aw(), || {
                        format!("{label} B={b}: fast AW test disagrees with brute force")
                    });
                    r.check(v.is_aw() == v.is_jh(), || {
                        format!("{label} B={b}: AW and JH verdicts differ")
                    });
                }
                r.check(!v.is_aw() || v.is_jh(), || format!("{label} B={b}: AW but not JH"));
                r.check(!v.is_diamond() || v.is_jh(), || {
                    format!("{label} B={b}: diamond but not JH")
                });
            }
            if wanted(Suite::Counting) {
                let r = &mut report.suites[ic];
                let brute = v.e_simples.len() + s.bits.count_ones(..) == cat.len();
                if let Some(e) = &s.exact {
                    r.check(e_simples(e).len() == v.e_simples.len(), || {
                        format!("{label} B={b}: interval E-simples differ from the oracle's")
                    });
                    r.check(counting_identity(e) == is_aw_fast(e), || {
                        format!("{label} B={b}: counting identity and fast AW test differ")
                    });
                }
                r.check(brute == v.is_jh(), || {
                    format!("{label} B={b}: counting identity and JH verdict differ")
                });
            }
        }
    }
    Ok(())
}

/// Interval membership against the oracle on realised basis extensions.
fn eb_suite(setting: &Setting, structures: &[Selected], result: &mut SuiteResult) -> Result<()> {
    let Setting::Nakayama { alg, cat } = setting else {
        return Ok(());
    };
    let prop = ExtPropagation::new(cat);
    let ind = indecomposables(alg);
    let mut sequences = Vec::new();
    for &s in &ind {
        for &q in &ind {
            if ext_shape(alg, s, q).is_some() {
                sequences.push((s, q, realize_extension(alg, cat, s, q)?));
            }
        }
    }
    for sel in structures {
        let e = sel
            .exact
            .as_ref()
            .expect("Nakayama structures carry their interval form");
        let sf = prop.closure(cat, &sel.bits)?;
        result.check(sf.socle() == &sel.bits, || {
            format!("{e:?}: closure has a different socle")
        });
        for (s, q, ses) in &sequences {
            let fast = seq_in_e(e, *s, *q)?;
            let oracle = admissible_monic(cat, &sf, &ses.monic)?;
            result.check(fast == oracle, || {
                format!(
                    "{e:?} over GF({}): {s} ↣ ? ↠ {q} is {fast} by intervals, {oracle} by the oracle",
                    cat.field().p()
                )
            });
        }
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GraphTarget {
    ArQuiver,
    Poset { object: String, structure: String },
}

/// DOT export of the AR quiver or of one subobject poset.
pub fn cmd_graph(algebra: &str, field: u32, dim_bound: usize, target: &GraphTarget) -> Result<String> {
    let setting = Setting::resolve(algebra, Field::new(field)?)?;
    match target {
        GraphTarget::ArQuiver => Ok(ar_quiver_dot(&setting)),
        GraphTarget::Poset { object, structure } => {
            let cat = setting.catalogue();
            let types = parse_object(cat, object)?;
            let sel = setting.from_hex(structure)?;
            let x = cat.realize(&types);
            let poset = build_poset(cat, &sel.mask, &x, dim_bound)?;
            Ok(poset.to_dot(
                cat,
                &format!("{} B={}", cat.describe(&types), setting.describe_bits(&sel.bits)),
            ))
        }
    }
}

/// Parses `M1+M2+…` (or `⊕`-separated) catalogue names into a sorted
/// multiset; `0` is the zero object.
pub fn parse_object(cat: &Catalogue, text: &str) -> Result<Vec<usize>> {
    let text = text.trim();
    if text == "0" {
        return Ok(Vec::new());
    }
    let mut types = text
        .split(['+', '⊕'])
        .map(|part| {
            let part = part.trim();
            cat.index_of(part).ok_or_else(|| {
                Error::Config(format!(
                    "`{part}` is not an indecomposable here; expected one of {}",
                    cat.names().join(" ")
                ))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    types.sort_unstable();
    Ok(types)
}

/// Nodes are the indecomposables; solid edges are irreducible maps, dotted
/// edges point from a non-projective `M` to `τM`.
pub fn ar_quiver_dot(setting: &Setting) -> String {
    let cat = setting.catalogue();
    let mut edges: Vec<(usize, usize)> = Vec::new();
    let mut tau: Vec<(usize, usize)> = Vec::new();
    match setting {
        Setting::Nakayama { alg, .. } => {
            let idx = |m| cat.interval_index(m).expect("interval in catalogue");
            for s in ar_sequences(alg) {
                let mut mids = vec![s.mid_top];
                mids.extend(s.mid_small);
                for m in mids {
                    edges.push((idx(s.sub), idx(m)));
                    edges.push((idx(m), idx(s.end)));
                }
                tau.push((idx(s.end), idx(s.sub)));
            }
            // The radical inclusion is the only irreducible map into a projective.
            for p in indecomposables(alg)
                .into_iter()
                .filter(|&m| alg.is_projective(m) && m.len > 1)
            {
                let rad = crate::interval::Interval::new(alg.shift(p.c, 1), p.len - 1);
                edges.push((idx(rad), idx(p)));
            }
        }
        Setting::Fixture(fx) => {
            for ses in &fx.ar_sequences {
                let sub = cat.iso_class(ses.sub()).expect("catalogue module")[0];
                let end = cat.iso_class(ses.quot()).expect("catalogue module")[0];
                for m in cat.iso_class(ses.mid()).expect("catalogue modules") {
                    edges.push((sub, m));
                    edges.push((m, end));
                }
                tau.push((end, sub));
            }
        }
    }
    edges.sort_unstable();
    edges.dedup();
    let mut out = String::new();
    writeln!(out, "digraph \"AR({})\" {{", setting.label()).unwrap();
    writeln!(out, "  rankdir=LR;").unwrap();
    for (i, name) in cat.names().iter().enumerate() {
        writeln!(out, "  n{i} [label=\"{name}\"];").unwrap();
    }
    for (a, b) in edges {
        writeln!(out, "  n{a} -> n{b};").unwrap();
    }
    for (a, b) in tau {
        writeln!(out, "  n{a} -> n{b} [style=dotted];").unwrap();
    }
    out.push_str("}\n");
    out
}
