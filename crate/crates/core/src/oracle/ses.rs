//! Short exact sequences: splitting them into Ext components between
//! catalogue summands, and admissibility with respect to an exact structure.

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::exact::{seq_in_e, ExactStructure};
use crate::interval::ext_shape;
use crate::linalg::Subspace;
use crate::oracle::catalog::{flatten_blocks, Catalogue};
use crate::oracle::rep::{QuiverRep, RepMorphism, SesInstance, Splitting};

/// Decides which one-dimensional Ext components `(quot, sub)` between
/// catalogue modules are admissible.
pub trait Admissibility {
    fn admits_pair(&self, quot: usize, sub: usize) -> bool;
}

impl Admissibility for ExactStructure {
    /// Catalogue indices follow the lexicographic order of intervals.
    fn admits_pair(&self, quot: usize, sub: usize) -> bool {
        let ind = crate::interval::indecomposables(self.alg());
        let (q, s) = (ind[quot], ind[sub]);
        ext_shape(self.alg(), s, q).is_none() || seq_in_e(self, s, q).expect("nonzero extension")
    }
}

/// Admissible pairs tabulated as a bit matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PairMask {
    n: usize,
    bits: FixedBitSet,
}

impl PairMask {
    pub fn empty(n: usize) -> Self {
        Self {
            n,
            bits: FixedBitSet::with_capacity(n * n),
        }
    }

    pub fn from_admissibility(adm: &impl Admissibility, n: usize) -> Self {
        let mut m = Self::empty(n);
        for q in 0..n {
            for s in 0..n {
                if adm.admits_pair(q, s) {
                    m.insert(q, s);
                }
            }
        }
        m
    }

    /// Tabulates `E(B)` over the Nakayama catalogue `cat`.
    pub fn for_structure(e: &ExactStructure, cat: &Catalogue) -> Self {
        Self::from_admissibility(e, cat.len())
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn insert(&mut self, quot: usize, sub: usize) {
        self.bits.insert(quot * self.n + sub);
    }

    pub fn remove(&mut self, quot: usize, sub: usize) {
        self.bits.set(quot * self.n + sub, false);
    }

    pub fn contains(&self, quot: usize, sub: usize) -> bool {
        self.bits.contains(quot * self.n + sub)
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.bits.ones().map(|k| (k / self.n, k % self.n))
    }

    /// Pairs admitted by `self` among those with nonzero Ext in `cat`.
    pub fn restricted_to_ext(&self, cat: &Catalogue) -> Vec<(usize, usize)> {
        cat.nonzero_ext_pairs()
            .into_iter()
            .filter(|&(q, s)| self.contains(q, s))
            .collect()
    }
}

impl Admissibility for PairMask {
    fn admits_pair(&self, quot: usize, sub: usize) -> bool {
        self.contains(quot, sub)
    }
}

/// One component of a sequence between a summand of the quotient and a
/// summand of the subobject.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Component {
    pub quot_summand: usize,
    pub sub_summand: usize,
    pub quot_type: usize,
    pub sub_type: usize,
    pub nonzero: bool,
}

/// The iso classes of both end terms of `U ↣ X ↠ X/U` and its components.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SesAnalysis {
    pub sub: Vec<usize>,
    pub quot: Vec<usize>,
    pub components: Vec<Component>,
}

impl SesAnalysis {
    /// Distinct `(quot type, sub type)` pairs of the nonzero components.
    pub fn nonzero_pairs(&self) -> Vec<(usize, usize)> {
        let mut v: Vec<(usize, usize)> = self
            .components
            .iter()
            .filter(|c| c.nonzero)
            .map(|c| (c.quot_type, c.sub_type))
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn is_split(&self) -> bool {
        self.components.iter().all(|c| !c.nonzero)
    }

    pub fn admissible_under(&self, adm: &impl Admissibility) -> bool {
        self.components
            .iter()
            .filter(|c| c.nonzero)
            .all(|c| adm.admits_pair(c.quot_type, c.sub_type))
    }
}

/// Splits `sub ↣ x ↠ x/sub` into components. In the basis `basis(U) ⊕ K` of
/// each vertex space, `x_a = [[Y_a, C_a], [0, Z_a]]`; the component between
/// summands `Z_j` and `Y_i` is the cocycle `π_i C ι_j`.
pub fn analyze_submodule(cat: &Catalogue, x: &QuiverRep, sub: &[Subspace]) -> Result<SesAnalysis> {
    let quiver = cat.quiver();
    let split: Vec<Splitting> = sub.iter().map(Splitting::new).collect();
    let y = x.restrict(sub);
    let (z, _) = x.quotient(sub);
    let dy = cat.decompose(&y)?;
    let dz = cat.decompose(&z)?;
    let mut components = Vec::new();
    if !y.is_zero() && !z.is_zero() {
        let c: Vec<_> = quiver
            .arrows
            .iter()
            .zip(x.mats())
            .map(|(a, m)| split[a.tgt].r.mul(&m.mul(&split[a.src].k)))
            .collect();
        for (j, &qt) in dz.types.iter().enumerate() {
            for (i, &st) in dy.types.iter().enumerate() {
                let nonzero = cat.ext_nonzero(qt, st) && {
                    let blocks: Vec<_> = quiver
                        .arrows
                        .iter()
                        .enumerate()
                        .map(|(ai, a)| dy.proj[i][a.tgt].mul(&c[ai].mul(&dz.incl[j][a.src])))
                        .collect();
                    cat.is_nonzero_class(qt, st, &flatten_blocks(&blocks))
                };
                components.push(Component {
                    quot_summand: j,
                    sub_summand: i,
                    quot_type: qt,
                    sub_type: st,
                    nonzero,
                });
            }
        }
    }
    Ok(SesAnalysis {
        sub: dy.types,
        quot: dz.types,
        components,
    })
}

pub fn ses_components(cat: &Catalogue, ses: &SesInstance) -> Result<Vec<Component>> {
    Ok(analyze_submodule(cat, ses.mid(), &ses.monic.image())?.components)
}

pub fn admissible_monic(cat: &Catalogue, adm: &impl Admissibility, f: &RepMorphism) -> Result<bool> {
    if !f.is_injective() {
        return Err(Error::NotMonic);
    }
    Ok(analyze_submodule(cat, &f.target, &f.image())?.admissible_under(adm))
}

/// An epic is admissible exactly when its kernel inclusion is.
pub fn admissible_epic(cat: &Catalogue, adm: &impl Admissibility, g: &RepMorphism) -> Result<bool> {
    if !g.is_surjective() {
        return Err(Error::NotExact("map is not surjective".into()));
    }
    Ok(analyze_submodule(cat, &g.source, &g.kernel())?.admissible_under(adm))
}

pub fn admissible_submodule(
    cat: &Catalogue,
    adm: &impl Admissibility,
    x: &QuiverRep,
    sub: &[Subspace],
) -> Result<bool> {
    Ok(analyze_submodule(cat, x, sub)?.admissible_under(adm))
}
