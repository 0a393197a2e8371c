//! Sub-bifunctors of Ext¹ on a catalogue with one-dimensional components.
//!
//! A component `(q, s)` maps onto `(u, v)` when `h ∘ ξ ∘ g` is a nonzero class
//! for some `g: M_u → M_q`, `h: M_s → M_v`. The structure with socle `B` is
//! the largest set of components that is closed under these maps and omits
//! every Auslander–Reiten component outside `B`.

use fixedbitset::FixedBitSet;

use crate::error::{Error, Result};
use crate::oracle::catalog::{flatten_blocks, Catalogue, CocycleLayout};
use crate::oracle::rep::hom_basis;
use crate::oracle::ses::{Admissibility, PairMask};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subfunctor {
    active: PairMask,
    socle: FixedBitSet,
}

impl Subfunctor {
    pub fn active(&self) -> &PairMask {
        &self.active
    }

    /// The selected Auslander–Reiten sequences, by position in the catalogue.
    pub fn socle(&self) -> &FixedBitSet {
        &self.socle
    }

    pub fn active_pairs(&self) -> Vec<(usize, usize)> {
        self.active.pairs().collect()
    }
}

impl Admissibility for Subfunctor {
    fn admits_pair(&self, quot: usize, sub: usize) -> bool {
        self.active.contains(quot, sub)
    }
}

/// For every nonzero component, the components its class maps onto.
#[derive(Clone, Debug)]
pub struct ExtPropagation {
    n: usize,
    pairs: Vec<(usize, usize)>,
    reach: Vec<Vec<(usize, usize)>>,
}

impl ExtPropagation {
    pub fn new(cat: &Catalogue) -> Self {
        let n = cat.len();
        let quiver = cat.quiver();
        let pairs = cat.nonzero_ext_pairs();
        let mut homs = vec![vec![Vec::new(); n]; n];
        for (a, row) in homs.iter_mut().enumerate() {
            for (b, slot) in row.iter_mut().enumerate() {
                *slot = hom_basis(cat.module(a), cat.module(b));
            }
        }
        let reach = pairs
            .iter()
            .map(|&(q, s)| {
                let (mq, ms) = (cat.module(q), cat.module(s));
                let xi = cat.ext(q, s).basis.as_ref().expect("nonzero Ext has a basis class");
                let layout = CocycleLayout::new(quiver, mq, ms);
                let xi_blocks: Vec<_> = (0..quiver.arrows.len())
                    .map(|a| layout.block(quiver, mq, ms, xi, a))
                    .collect();
                pairs
                    .iter()
                    .copied()
                    .filter(|&(u, v)| {
                        homs[u][q].iter().any(|g| {
                            homs[s][v].iter().any(|h| {
                                let blocks: Vec<_> = quiver
                                    .arrows
                                    .iter()
                                    .enumerate()
                                    .map(|(ai, a)| h[a.tgt].mul(&xi_blocks[ai].mul(&g[a.src])))
                                    .collect();
                                cat.is_nonzero_class(u, v, &flatten_blocks(&blocks))
                            })
                        })
                    })
                    .collect()
            })
            .collect();
        Self { n, pairs, reach }
    }

    pub fn nonzero_pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// Components reached from `(quot, sub)`, including itself.
    pub fn reach(&self, quot: usize, sub: usize) -> &[(usize, usize)] {
        let k = self
            .pairs
            .iter()
            .position(|&p| p == (quot, sub))
            .expect("nonzero component");
        &self.reach[k]
    }

    /// Largest closed set of components whose Auslander–Reiten part is `b`.
    pub fn closure(&self, cat: &Catalogue, b: &FixedBitSet) -> Result<Subfunctor> {
        let ar = cat.ar_pairs();
        if b.len() != ar.len() {
            return Err(Error::StructureWidth {
                expected: ar.len(),
                got: b.len(),
            });
        }
        let mut active = PairMask::empty(self.n);
        for &(q, s) in &self.pairs {
            active.insert(q, s);
        }
        for (k, &(q, s)) in ar.iter().enumerate() {
            if !b.contains(k) {
                active.remove(q, s);
            }
        }
        loop {
            let drop: Vec<(usize, usize)> = self
                .pairs
                .iter()
                .zip(&self.reach)
                .filter(|(&(q, s), reach)| active.contains(q, s) && reach.iter().any(|&(u, v)| !active.contains(u, v)))
                .map(|(&p, _)| p)
                .collect();
            if drop.is_empty() {
                break;
            }
            for (q, s) in drop {
                active.remove(q, s);
            }
        }
        let mut socle = FixedBitSet::with_capacity(ar.len());
        for (k, &(q, s)) in ar.iter().enumerate() {
            socle.set(k, active.contains(q, s));
        }
        Ok(Subfunctor { active, socle })
    }
}

pub fn subfunctor_closure(cat: &Catalogue, b: &FixedBitSet) -> Result<Subfunctor> {
    ExtPropagation::new(cat).closure(cat, b)
}
