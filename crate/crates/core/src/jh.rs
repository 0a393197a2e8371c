//! Composition series, the Jordan–Hölder and diamond properties, and the
//! brute-force Artin–Wedderburn test.
//!
//! Single objects are handled through their subobject posets. Whole
//! categories (every object up to a dimension bound) go through a census
//! that analyses each submodule once and then evaluates many structures.

use std::collections::hash_map::Entry;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::oracle::catalog::Catalogue;
use crate::oracle::rep::QuiverRep;
use crate::oracle::ses::{analyze_submodule, Admissibility, PairMask};
use crate::oracle::submodules::{contains, enumerate_submodules, intersection, relative, submodule_dim, Submodule};
use crate::poset::{build_poset, e_simple_types, SubobjectPoset};

pub const DEFAULT_SERIES_CAP: usize = 10_000;

/// `0 = X_0 < X_1 < … < X_n = X` as poset indices, with the iso class of
/// each E-simple factor `X_{i+1}/X_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompositionSeries {
    pub chain: Vec<usize>,
    pub factors: Vec<usize>,
}

impl CompositionSeries {
    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn factor_multiset(&self) -> Vec<usize> {
        let mut f = self.factors.clone();
        f.sort_unstable();
        f
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesList {
    pub series: Vec<CompositionSeries>,
    /// Set when the cap stopped the enumeration early.
    pub truncated: bool,
}

/// Verdict on one object; `factor_sets` lists every factor multiset that
/// occurs, so the object is Jordan–Hölder exactly when there is one.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ObjectJh {
    pub factor_sets: Vec<Vec<usize>>,
    /// Two series with different factor multisets, if any.
    pub witness: Option<(CompositionSeries, CompositionSeries)>,
}

impl ObjectJh {
    pub fn holds(&self) -> bool {
        self.factor_sets.len() <= 1
    }

    pub fn min_len(&self) -> usize {
        self.factor_sets.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn max_len(&self) -> usize {
        self.factor_sets.iter().map(Vec::len).max().unwrap_or(0)
    }
}

/// One exact structure on a catalogue, with its E-simples precomputed.
pub struct ObjectAnalyzer<'a, A> {
    cat: &'a Catalogue,
    adm: &'a A,
    simples: Vec<usize>,
    bound: usize,
}

impl<'a, A: Admissibility> ObjectAnalyzer<'a, A> {
    pub fn new(cat: &'a Catalogue, adm: &'a A, bound: usize) -> Result<Self> {
        let simples = e_simple_types(cat, adm)?;
        Ok(Self {
            cat,
            adm,
            simples,
            bound,
        })
    }

    pub fn simples(&self) -> &[usize] {
        &self.simples
    }

    pub fn poset(&self, x: &QuiverRep) -> Result<SubobjectPoset> {
        build_poset(self.cat, self.adm, x, self.bound)
    }

    /// `(y, t)` for every `y < z` whose quotient `z/y` is the E-simple `t`.
    fn steps(&self, p: &SubobjectPoset, quotients: &mut QuotientCache, z: usize) -> Result<Vec<(usize, usize)>> {
        let mut out = Vec::new();
        for y in p.below[z].ones().filter(|&y| y != z) {
            let q = quotients.get(self.cat, p, z, y)?;
            if let [t] = q[..] {
                if self.simples.contains(&t) {
                    out.push((y, t));
                }
            }
        }
        Ok(out)
    }

    /// Every composition series, in lexicographic order of the chain read
    /// from the top; at most `cap` of them.
    pub fn composition_series(&self, x: &QuiverRep, cap: usize) -> Result<SeriesList> {
        let p = self.poset(x)?;
        let mut quotients = QuotientCache::default();
        let mut steps = HashMap::new();
        let mut out = SeriesList {
            series: Vec::new(),
            truncated: false,
        };
        let mut chain = vec![p.top()];
        let mut factors = Vec::new();
        self.descend(&p, &mut quotients, &mut steps, &mut chain, &mut factors, cap, &mut out)?;
        Ok(out)
    }

    #[allow(clippy::too_many_arguments)]
    fn descend(
        &self,
        p: &SubobjectPoset,
        quotients: &mut QuotientCache,
        steps: &mut HashMap<usize, Vec<(usize, usize)>>,
        chain: &mut Vec<usize>,
        factors: &mut Vec<usize>,
        cap: usize,
        out: &mut SeriesList,
    ) -> Result<()> {
        let z = *chain.last().expect("chain starts at the top");
        if z == p.zero() {
            if out.series.len() == cap {
                out.truncated = true;
                return Ok(());
            }
            out.series.push(CompositionSeries {
                chain: chain.iter().rev().copied().collect(),
                factors: factors.iter().rev().copied().collect(),
            });
            return Ok(());
        }
        if let Entry::Vacant(slot) = steps.entry(z) {
            slot.insert(self.steps(p, quotients, z)?);
        }
        for (y, t) in steps[&z].clone().into_iter().rev() {
            if out.truncated {
                break;
            }
            chain.push(y);
            factors.push(t);
            self.descend(p, quotients, steps, chain, factors, cap, out)?;
            chain.pop();
            factors.pop();
        }
        Ok(())
    }

    /// Collects every factor multiset without listing series, keeping one
    /// series per multiset as a witness.
    pub fn jh_object(&self, x: &QuiverRep) -> Result<ObjectJh> {
        let p = self.poset(x)?;
        let mut quotients = QuotientCache::default();
        // For each element: factor multiset → (predecessor, factor).
        let mut table: Vec<BTreeMap<Vec<usize>, (usize, usize)>> = vec![BTreeMap::new(); p.len()];
        table[p.zero()].insert(Vec::new(), (usize::MAX, usize::MAX));
        for z in 1..p.len() {
            for (y, t) in self.steps(&p, &mut quotients, z)? {
                let below: Vec<Vec<usize>> = table[y].keys().cloned().collect();
                for mut f in below {
                    let pos = f.partition_point(|&u| u < t);
                    f.insert(pos, t);
                    table[z].entry(f).or_insert((y, t));
                }
            }
        }
        let top = p.top();
        let factor_sets: Vec<Vec<usize>> = table[top].keys().cloned().collect();
        let rebuild = |f: &Vec<usize>| {
            let mut chain = vec![top];
            let mut factors = Vec::new();
            let (mut z, mut f) = (top, f.clone());
            while z != p.zero() {
                let (y, t) = table[z][&f];
                let pos = f.iter().position(|&u| u == t).expect("factor recorded");
                f.remove(pos);
                chain.push(y);
                factors.push(t);
                z = y;
            }
            chain.reverse();
            factors.reverse();
            CompositionSeries { chain, factors }
        };
        let witness = (factor_sets.len() > 1).then(|| (rebuild(&factor_sets[0]), rebuild(&factor_sets[1])));
        Ok(ObjectJh { factor_sets, witness })
    }

    /// The common length of all composition series.
    pub fn length(&self, x: &QuiverRep) -> Result<usize> {
        let v = self.jh_object(x)?;
        if v.holds() {
            return Ok(v.min_len());
        }
        Err(Error::NotJordanHolder {
            min: v.min_len(),
            max: v.max_len(),
        })
    }

    pub fn is_semisimple(&self, x: &QuiverRep) -> Result<bool> {
        crate::poset::is_semisimple(self.cat, &self.simples, x)
    }
}

#[derive(Default)]
struct QuotientCache(HashMap<(usize, usize), Vec<usize>>);

impl QuotientCache {
    /// Iso class of `elements[z] / elements[y]`.
    fn get(&mut self, cat: &Catalogue, p: &SubobjectPoset, z: usize, y: usize) -> Result<Vec<usize>> {
        if let Some(c) = self.0.get(&(z, y)) {
            return Ok(c.clone());
        }
        let c = if z == p.top() {
            p.quotients[y].clone()
        } else {
            let zr = p.object.restrict(&p.elements[z]);
            cat.iso_class(&zr.quotient(&relative(&p.elements[z], &p.elements[y])).0)?
        };
        self.0.insert((z, y), c.clone());
        Ok(c)
    }
}

/// An object violating the equivalence of the three Artin–Wedderburn
/// conditions: every admissible subobject splits (AW1), every summand is
/// E-simple (AW2), the E-radical is zero (AW3).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AwViolation {
    pub object: Vec<usize>,
    pub aw1: bool,
    pub aw2: bool,
    pub aw3: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JhWitness {
    pub object: Vec<usize>,
    pub factors: (Vec<usize>, Vec<usize>),
}

/// Two maximal subobjects `A`, `B` of `object` and a maximal common
/// subobject `Y` for which the diamond condition fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiamondWitness {
    pub object: Vec<usize>,
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub y: Vec<usize>,
    pub a_over_y: Vec<usize>,
    pub b_over_y: Vec<usize>,
}

/// Everything the census learns about one structure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureVerdict {
    pub e_simples: Vec<usize>,
    /// Objects where AW1, AW2, AW3 disagree, in census order.
    pub aw_violations: Vec<AwViolation>,
    pub jh_witness: Option<JhWitness>,
    pub diamond_witness: Option<DiamondWitness>,
    /// `(min, max)` composition length of each census object.
    pub lengths: Vec<(usize, usize)>,
}

impl StructureVerdict {
    pub fn is_aw(&self) -> bool {
        self.aw_violations.is_empty()
    }

    pub fn is_jh(&self) -> bool {
        self.jh_witness.is_none()
    }

    pub fn is_diamond(&self) -> bool {
        self.diamond_witness.is_none()
    }
}

/// Verdicts for several structures over every object of total dimension at
/// most `bound`; `objects[0]` is the zero object.
#[derive(Clone, Debug)]
pub struct CensusReport {
    pub bound: usize,
    pub objects: Vec<Vec<usize>>,
    pub verdicts: Vec<StructureVerdict>,
}

impl CensusReport {
    pub fn object_index(&self, types: &[usize]) -> Option<usize> {
        self.objects.iter().position(|o| o == types)
    }
}

/// Structure-independent data for one submodule `U` of `X`.
struct SubRecord {
    sub: usize,
    quot: usize,
    /// Indices into the catalogue's nonzero Ext pairs.
    pairs: Vec<u16>,
}

struct ObjectData {
    subs: Vec<Submodule>,
    records: Vec<SubRecord>,
}

/// Per-structure state carried from one dimension layer to the next.
type FactorSets = BTreeSet<Vec<usize>>;

struct ObjectOutcome {
    aw: Option<AwViolation>,
    factor_sets: FactorSets,
    diamond: Option<DiamondWitness>,
}

/// Evaluates every structure in `structures` on all objects up to `bound`.
pub fn census(cat: &Catalogue, structures: &[PairMask], bound: usize) -> Result<CensusReport> {
    if let Some(t) = (0..cat.len()).find(|&t| cat.dim(t) > bound) {
        return Err(Error::DimensionBound { dim: cat.dim(t), bound });
    }
    let ext_pairs = cat.nonzero_ext_pairs();
    let pair_index: HashMap<(usize, usize), u16> = ext_pairs.iter().enumerate().map(|(i, &p)| (p, i as u16)).collect();
    let active: Vec<FixedBitSet> = structures
        .iter()
        .map(|m| {
            let mut bits = FixedBitSet::with_capacity(ext_pairs.len());
            for (i, &(q, s)) in ext_pairs.iter().enumerate() {
                bits.set(i, m.contains(q, s));
            }
            bits
        })
        .collect();

    let mut objects = vec![Vec::new()];
    objects.extend(cat.objects_up_to(bound));
    let ids: HashMap<Vec<usize>, usize> = objects.iter().enumerate().map(|(i, o)| (o.clone(), i)).collect();
    let dims: Vec<usize> = objects.iter().map(|o| o.iter().map(|&t| cat.dim(t)).sum()).collect();

    let analyse = |types: &Vec<usize>| -> Result<ObjectData> {
        let x = cat.realize(types);
        let subs = enumerate_submodules(&x, bound)?;
        let records = subs
            .iter()
            .map(|u| {
                let a = analyze_submodule(cat, &x, u)?;
                let mut pairs: Vec<u16> = a.nonzero_pairs().iter().map(|p| pair_index[p]).collect();
                pairs.sort_unstable();
                Ok(SubRecord {
                    sub: ids[&a.sub],
                    quot: ids[&a.quot],
                    pairs,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ObjectData { subs, records })
    };

    // E-simples first: a catalogue module is E-simple when no proper nonzero
    // submodule is admissible.
    let singles: Vec<(usize, ObjectData)> = (0..cat.len())
        .into_par_iter()
        .map(|t| Ok((t, analyse(&vec![t])?)))
        .collect::<Result<Vec<_>>>()?;
    let simple_flags: Vec<Vec<bool>> = active
        .iter()
        .map(|act| {
            let mut flags = vec![false; cat.len()];
            for (t, data) in &singles {
                let last = data.records.len() - 1;
                flags[*t] = !data.records[1..last]
                    .iter()
                    .any(|r| r.pairs.iter().all(|&p| act.contains(p as usize)));
            }
            flags
        })
        .collect();

    let ns = structures.len();
    let mut factor_sets: Vec<Vec<FactorSets>> = vec![vec![FactorSets::new(); objects.len()]; ns];
    for fs in &mut factor_sets {
        fs[0].insert(Vec::new());
    }
    let mut aw_violations = vec![Vec::new(); ns];
    let mut jh_witness: Vec<Option<JhWitness>> = vec![None; ns];
    let mut diamond_witness: Vec<Option<DiamondWitness>> = vec![None; ns];

    let mut start = 1;
    while start < objects.len() {
        let d = dims[start];
        let end = (start..objects.len()).find(|&i| dims[i] != d).unwrap_or(objects.len());
        let outcomes: Vec<Vec<ObjectOutcome>> = (start..end)
            .into_par_iter()
            .map(|oi| {
                let data = analyse(&objects[oi])?;
                let x = cat.realize(&objects[oi]);
                let lattice = Containment::new(&data.subs);
                let mut quotients = HashMap::new();
                // Structures that agree on this object's admissible subobjects
                // and on the E-simples share their AW and diamond verdicts.
                let mut shapes: HashMap<(FixedBitSet, &[bool]), ShapeOutcome> = HashMap::new();
                let mut out = Vec::with_capacity(ns);
                for s in 0..ns {
                    let mut adm = FixedBitSet::with_capacity(data.subs.len());
                    for (i, r) in data.records.iter().enumerate() {
                        adm.set(i, r.pairs.iter().all(|&p| active[s].contains(p as usize)));
                    }
                    let key = (adm, simple_flags[s].as_slice());
                    if !shapes.contains_key(&key) {
                        let shape =
                            evaluate_shape(cat, &objects, oi, &x, &data, &lattice, &key.0, key.1, &mut quotients)?;
                        shapes.insert(key.clone(), shape);
                    }
                    let shape = &shapes[&key];
                    let mut sets = FactorSets::new();
                    for &m in &shape.maximal {
                        let t = objects[data.records[m].quot][0];
                        for f in &factor_sets[s][data.records[m].sub] {
                            let mut f = f.clone();
                            let pos = f.partition_point(|&u| u < t);
                            f.insert(pos, t);
                            sets.insert(f);
                        }
                    }
                    out.push(ObjectOutcome {
                        aw: shape.aw.clone(),
                        factor_sets: sets,
                        diamond: shape.diamond.clone(),
                    });
                }
                Ok(out)
            })
            .collect::<Result<Vec<_>>>()?;
        for (oi, per_structure) in (start..end).zip(outcomes) {
            for (s, o) in per_structure.into_iter().enumerate() {
                if let Some(v) = o.aw {
                    aw_violations[s].push(v);
                }
                if jh_witness[s].is_none() && o.factor_sets.len() > 1 {
                    let mut it = o.factor_sets.iter();
                    jh_witness[s] = Some(JhWitness {
                        object: objects[oi].clone(),
                        factors: (it.next().unwrap().clone(), it.next().unwrap().clone()),
                    });
                }
                if diamond_witness[s].is_none() {
                    diamond_witness[s] = o.diamond;
                }
                factor_sets[s][oi] = o.factor_sets;
            }
        }
        start = end;
    }

    let verdicts = (0..ns)
        .map(|s| StructureVerdict {
            e_simples: (0..cat.len()).filter(|&t| simple_flags[s][t]).collect(),
            aw_violations: std::mem::take(&mut aw_violations[s]),
            jh_witness: jh_witness[s].take(),
            diamond_witness: diamond_witness[s].take(),
            lengths: factor_sets[s]
                .iter()
                .map(|f| {
                    let lens = f.iter().map(Vec::len);
                    (lens.clone().min().unwrap_or(0), lens.max().unwrap_or(0))
                })
                .collect(),
        })
        .collect();
    Ok(CensusReport {
        bound,
        objects,
        verdicts,
    })
}

/// Containment between the submodules of one object, as bit sets.
struct Containment {
    below: Vec<FixedBitSet>,
    above: Vec<FixedBitSet>,
    index: HashMap<Submodule, usize>,
}

impl Containment {
    fn new(subs: &[Submodule]) -> Self {
        let n = subs.len();
        let dims: Vec<usize> = subs.iter().map(|u| submodule_dim(u)).collect();
        let mut below = vec![FixedBitSet::with_capacity(n); n];
        let mut above = vec![FixedBitSet::with_capacity(n); n];
        for i in 0..n {
            for j in 0..n {
                if dims[j] <= dims[i] && contains(&subs[i], &subs[j]) {
                    below[i].insert(j);
                    above[j].insert(i);
                }
            }
        }
        let index = subs.iter().cloned().enumerate().map(|(i, u)| (u, i)).collect();
        Self { below, above, index }
    }

    /// Maximal members of `set`.
    fn maximal(&self, set: &FixedBitSet) -> Vec<usize> {
        set.ones()
            .filter(|&y| self.above[y].intersection(set).nth(1).is_none())
            .collect()
    }
}

/// The part of an object's verdict fixed by its admissible subobjects and
/// the E-simples.
struct ShapeOutcome {
    /// Admissible subobjects with E-simple quotient.
    maximal: Vec<usize>,
    aw: Option<AwViolation>,
    diamond: Option<DiamondWitness>,
}

#[allow(clippy::too_many_arguments)]
fn evaluate_shape(
    cat: &Catalogue,
    objects: &[Vec<usize>],
    oi: usize,
    x: &QuiverRep,
    data: &ObjectData,
    lattice: &Containment,
    admissible: &FixedBitSet,
    simple: &[bool],
    quotients: &mut HashMap<(usize, usize), Vec<usize>>,
) -> Result<ShapeOutcome> {
    let recs = &data.records;
    let top = recs.len() - 1;
    let single_simple = |obj: usize| matches!(objects[obj][..], [t] if simple[t]);
    let maximal: Vec<usize> = admissible
        .ones()
        .filter(|&i| i != top && single_simple(recs[i].quot))
        .collect();
    let below_in = |m: &Submodule| {
        let mut b = lattice.below[lattice.index[m]].clone();
        b.intersect_with(admissible);
        b
    };

    let aw1 = admissible.ones().all(|i| recs[i].pairs.is_empty());
    let aw2 = objects[oi].iter().all(|&t| simple[t]);
    let aw3 = match maximal.split_first() {
        None => true,
        Some((&first, rest)) => {
            let mut meet = data.subs[first].clone();
            for &m in rest {
                meet = intersection(&meet, &data.subs[m]);
            }
            below_in(&meet).ones().all(|i| i == 0)
        }
    };
    let aw = (!(aw1 == aw2 && aw2 == aw3)).then(|| AwViolation {
        object: objects[oi].clone(),
        aw1,
        aw2,
        aw3,
    });

    let mut diamond = None;
    'pairs: for (ai, &a) in maximal.iter().enumerate() {
        for &b in &maximal[ai + 1..] {
            let common = below_in(&intersection(&data.subs[a], &data.subs[b]));
            for y in lattice.maximal(&common) {
                let ay = quotient_class(cat, x, data, quotients, a, y)?;
                let by = quotient_class(cat, x, data, quotients, b, y)?;
                let ok = match (&ay[..], &by[..]) {
                    ([s], [t]) if simple[*s] && simple[*t] => {
                        let mut left = [objects[recs[a].quot][0], *s];
                        let mut right = [objects[recs[b].quot][0], *t];
                        left.sort_unstable();
                        right.sort_unstable();
                        left == right
                    }
                    _ => false,
                };
                if !ok {
                    diamond = Some(DiamondWitness {
                        object: objects[oi].clone(),
                        a: objects[recs[a].sub].clone(),
                        b: objects[recs[b].sub].clone(),
                        y: objects[recs[y].sub].clone(),
                        a_over_y: ay,
                        b_over_y: by,
                    });
                    break 'pairs;
                }
            }
        }
    }
    Ok(ShapeOutcome { maximal, aw, diamond })
}

fn quotient_class(
    cat: &Catalogue,
    x: &QuiverRep,
    data: &ObjectData,
    cache: &mut HashMap<(usize, usize), Vec<usize>>,
    a: usize,
    y: usize,
) -> Result<Vec<usize>> {
    if let Some(c) = cache.get(&(a, y)) {
        return Ok(c.clone());
    }
    let (big, small) = (&data.subs[a], &data.subs[y]);
    let c = if submodule_dim(small) == 0 {
        cat.iso_class(&x.restrict(big))?
    } else {
        cat.iso_class(&x.restrict(big).quotient(&relative(big, small)).0)?
    };
    cache.insert((a, y), c.clone());
    Ok(c)
}

/// Whether every object up to `bound` is Jordan–Hölder.
pub fn jh_category(cat: &Catalogue, adm: &impl Admissibility, bound: usize) -> Result<Option<JhWitness>> {
    Ok(single(cat, adm, bound)?.jh_witness)
}

pub fn diamond_check(cat: &Catalogue, adm: &impl Admissibility, bound: usize) -> Result<Option<DiamondWitness>> {
    Ok(single(cat, adm, bound)?.diamond_witness)
}

pub fn aw_bruteforce(cat: &Catalogue, adm: &impl Admissibility, bound: usize) -> Result<Vec<AwViolation>> {
    Ok(single(cat, adm, bound)?.aw_violations)
}

fn single(cat: &Catalogue, adm: &impl Admissibility, bound: usize) -> Result<StructureVerdict> {
    let mask = PairMask::from_admissibility(adm, cat.len());
    Ok(census(cat, std::slice::from_ref(&mask), bound)?.verdicts.remove(0))
}

impl fmt::Display for JhWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}: {:?} vs {:?}", self.object, self.factors.0, self.factors.1)
    }
}
