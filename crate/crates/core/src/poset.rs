//! The poset of admissible subobjects of a single object.

use std::fmt::Write as _;

use fixedbitset::FixedBitSet;

use crate::error::Result;
use crate::linalg::Matrix;
use crate::oracle::catalog::Catalogue;
use crate::oracle::rep::{hom_basis, QuiverRep, RepMorphism};
use crate::oracle::ses::{analyze_submodule, Admissibility};
use crate::oracle::submodules::{contains, coordinates, enumerate_submodules, submodule_dim, Submodule};

/// How `Y ≤ Z` is decided for admissible subobjects `Y ⊆ Z` of `X`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum PosetOrder {
    /// The inclusion `Y ↪ Z` must itself be an admissible monic.
    #[default]
    AdmissibleInclusion,
    /// Plain containment.
    Containment,
}

#[derive(Clone, Debug)]
pub struct SubobjectPoset {
    pub object: QuiverRep,
    /// Admissible submodules ordered by dimension; the first is `0`, the
    /// last is `X`.
    pub elements: Vec<Submodule>,
    /// Iso class of each element.
    pub classes: Vec<Vec<usize>>,
    /// Iso class of `X / element`.
    pub quotients: Vec<Vec<usize>>,
    /// `below[i]` holds every `j` with `elements[j] ≤ elements[i]`.
    pub below: Vec<FixedBitSet>,
    /// Cover relations: `covers[i]` lists the `j` with `j ⋖ i`.
    pub covers: Vec<Vec<usize>>,
}

pub fn build_poset(cat: &Catalogue, adm: &impl Admissibility, x: &QuiverRep, bound: usize) -> Result<SubobjectPoset> {
    build_poset_with(cat, adm, x, bound, PosetOrder::default())
}

pub fn build_poset_with(
    cat: &Catalogue,
    adm: &impl Admissibility,
    x: &QuiverRep,
    bound: usize,
    order: PosetOrder,
) -> Result<SubobjectPoset> {
    let mut elements = Vec::new();
    let mut classes = Vec::new();
    let mut quotients = Vec::new();
    for u in enumerate_submodules(x, bound)? {
        let a = analyze_submodule(cat, x, &u)?;
        if a.admissible_under(adm) {
            elements.push(u);
            classes.push(a.sub);
            quotients.push(a.quot);
        }
    }
    let n = elements.len();
    let mut below = vec![FixedBitSet::with_capacity(n); n];
    for i in 0..n {
        let zi = x.restrict(&elements[i]);
        let coords = coordinates(&elements[i]);
        for j in 0..n {
            if !contains(&elements[i], &elements[j]) {
                continue;
            }
            let related = match order {
                PosetOrder::Containment => true,
                PosetOrder::AdmissibleInclusion => {
                    i == j || {
                        let inner: Submodule = elements[j].iter().zip(&coords).map(|(u, r)| u.image(r)).collect();
                        analyze_submodule(cat, &zi, &inner)?.admissible_under(adm)
                    }
                }
            };
            if related {
                below[i].insert(j);
            }
        }
    }
    let covers = (0..n)
        .map(|i| {
            below[i]
                .ones()
                .filter(|&j| j != i && !below[i].ones().any(|k| k != i && k != j && below[k].contains(j)))
                .collect()
        })
        .collect();
    Ok(SubobjectPoset {
        object: x.clone(),
        elements,
        classes,
        quotients,
        below,
        covers,
    })
}

impl SubobjectPoset {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn zero(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.elements.len() - 1
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.below[b].contains(a)
    }

    pub fn index_of(&self, sub: &[crate::linalg::Subspace]) -> Option<usize> {
        self.elements.iter().position(|e| e.as_slice() == sub)
    }

    /// Maximal elements of the proper part `S_X`.
    pub fn maximal_proper(&self) -> Vec<usize> {
        if self.object.is_zero() {
            return Vec::new();
        }
        let top = self.top();
        let proper: Vec<usize> = (0..top).collect();
        maximal_among(self, &proper)
    }

    /// Maximal common lower bounds of `subs`; `{0}` for an empty family.
    pub fn int_x(&self, subs: &[usize]) -> Vec<usize> {
        if subs.is_empty() {
            return vec![self.zero()];
        }
        let lower: Vec<usize> = (0..self.len())
            .filter(|&e| subs.iter().all(|&s| self.leq(e, s)))
            .collect();
        maximal_among(self, &lower)
    }

    /// Minimal common upper bounds of `subs`.
    pub fn sum_x(&self, subs: &[usize]) -> Vec<usize> {
        let upper: Vec<usize> = (0..self.len())
            .filter(|&e| subs.iter().all(|&s| self.leq(s, e)))
            .collect();
        upper
            .iter()
            .copied()
            .filter(|&e| !upper.iter().any(|&f| f != e && self.leq(f, e)))
            .collect()
    }

    /// Generalised intersection of the maximal proper subobjects.
    pub fn rad_e(&self) -> Vec<usize> {
        self.int_x(&self.maximal_proper())
    }

    pub fn rad_is_zero(&self) -> bool {
        self.rad_e() == vec![self.zero()]
    }

    /// Hasse diagram in DOT: one node per element labelled by its iso class,
    /// one edge per cover relation.
    pub fn to_dot(&self, cat: &Catalogue, title: &str) -> String {
        let mut out = String::new();
        writeln!(out, "digraph \"{}\" {{", title.replace('"', "'")).unwrap();
        writeln!(out, "  rankdir=BT;").unwrap();
        for (i, c) in self.classes.iter().enumerate() {
            writeln!(out, "  n{i} [label=\"{}\"];", cat.describe(c)).unwrap();
        }
        for (i, cov) in self.covers.iter().enumerate() {
            for j in cov {
                writeln!(out, "  n{j} -> n{i};").unwrap();
            }
        }
        out.push_str("}\n");
        out
    }
}

fn maximal_among(p: &SubobjectPoset, set: &[usize]) -> Vec<usize> {
    set.iter()
        .copied()
        .filter(|&e| !set.iter().any(|&f| f != e && p.leq(e, f)))
        .collect()
}

/// Catalogue indices of the E-simple catalogue modules: those whose only
/// admissible subobjects are `0` and themselves.
pub fn e_simple_types(cat: &Catalogue, adm: &impl Admissibility) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for t in 0..cat.len() {
        let m = cat.module(t);
        let simple = enumerate_submodules(m, m.total_dim())?
            .iter()
            .filter(|u| {
                let d = submodule_dim(u);
                d != 0 && d != m.total_dim()
            })
            .try_fold(true, |acc, u| {
                Ok::<_, crate::Error>(acc && !analyze_submodule(cat, m, u)?.admissible_under(adm))
            })?;
        if simple {
            out.push(t);
        }
    }
    Ok(out)
}

/// Whether every summand of `x` is E-simple.
pub fn is_semisimple(cat: &Catalogue, simples: &[usize], x: &QuiverRep) -> Result<bool> {
    Ok(cat.iso_class(x)?.iter().all(|t| simples.contains(t)))
}

/// Checks that `M ↦ M/X'` is an order isomorphism from the admissible
/// subobjects above `X'` onto the admissible subobjects of `X/X'`.
pub fn fourth_iso_check(
    cat: &Catalogue,
    adm: &impl Admissibility,
    x: &QuiverRep,
    x_prime: &[crate::linalg::Subspace],
    bound: usize,
) -> Result<bool> {
    let px = build_poset(cat, adm, x, bound)?;
    let Some(base) = px.index_of(x_prime) else {
        return Ok(false);
    };
    let (quot, proj) = x.quotient(x_prime);
    let pq = build_poset(cat, adm, &quot, bound)?;
    let above: Vec<usize> = (0..px.len()).filter(|&m| px.leq(base, m)).collect();
    let mut image = Vec::with_capacity(above.len());
    for &m in &above {
        let img: Submodule = px.elements[m].iter().zip(&proj).map(|(u, q)| u.image(q)).collect();
        match pq.index_of(&img) {
            Some(k) => image.push(k),
            None => return Ok(false),
        }
    }
    let mut seen = image.clone();
    seen.sort_unstable();
    seen.dedup();
    if seen.len() != image.len() || seen.len() != pq.len() {
        return Ok(false);
    }
    for (a, &ia) in above.iter().zip(&image) {
        for (b, &ib) in above.iter().zip(&image) {
            if px.leq(*a, *b) != pq.leq(ia, ib) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SchurReport {
    pub cases: usize,
    pub failures: Vec<String>,
}

/// For E-simple `S` and objects `B`, every nonzero admissible `S → B` must be
/// an admissible monic and every nonzero admissible `B → S` an admissible
/// epic. A morphism is admissible when its kernel and image inclusions are.
pub fn schur_check(
    cat: &Catalogue,
    adm: &impl Admissibility,
    simples: &[usize],
    sample: &[(usize, Vec<usize>)],
) -> Result<SchurReport> {
    let mut report = SchurReport::default();
    for (s, b_types) in sample {
        if !simples.contains(s) {
            continue;
        }
        let s_rep = cat.module(*s);
        let b_rep = cat.realize(b_types);
        for (src, tgt, outgoing) in [(s_rep, &b_rep, true), (&b_rep, s_rep, false)] {
            for f in all_morphisms(src, tgt) {
                let f = RepMorphism::new(src.clone(), tgt.clone(), f)?;
                if f.is_zero() {
                    continue;
                }
                let ker_ok = analyze_submodule(cat, src, &f.kernel())?.admissible_under(adm);
                let im_ok = analyze_submodule(cat, tgt, &f.image())?.admissible_under(adm);
                if !(ker_ok && im_ok) {
                    continue;
                }
                report.cases += 1;
                let ok = if outgoing { f.is_injective() } else { f.is_surjective() };
                if !ok {
                    report.failures.push(format!(
                        "admissible map {} → {} is not {}",
                        cat.describe(&cat.iso_class(src)?),
                        cat.describe(&cat.iso_class(tgt)?),
                        if outgoing { "monic" } else { "epic" }
                    ));
                }
            }
        }
    }
    Ok(report)
}

/// Every morphism `x → y`, as all combinations of a Hom basis.
pub fn all_morphisms(x: &QuiverRep, y: &QuiverRep) -> Vec<Vec<Matrix>> {
    let basis = hom_basis(x, y);
    let field = x.field();
    let p = field.p() as usize;
    let total = p.pow(basis.len() as u32);
    (0..total)
        .map(|mut code| {
            let mut acc = x.zero_map_to(y);
            for b in &basis {
                let c = (code % p) as u8;
                code /= p;
                if c != 0 {
                    acc = acc.iter().zip(b).map(|(a, m)| a.add(&m.scale(c))).collect();
                }
            }
            acc
        })
        .collect()
}

/// Whether admissible-inclusion order and containment agree on the poset.
pub fn order_is_containment(p: &SubobjectPoset) -> bool {
    (0..p.len()).all(|i| (0..p.len()).all(|j| p.leq(j, i) == contains(&p.elements[i], &p.elements[j])))
}
