//! Concrete maps and extensions between interval representations.

use crate::error::{Error, Result};
use crate::interval::{ext_shape, hom_nonzero, AlgebraSpec, ExtCase, Interval};
use crate::linalg::Matrix;
use crate::oracle::catalog::Catalogue;
use crate::oracle::rep::{direct_sum, RepMorphism, SesInstance, VertexMaps};

/// The map `src → tgt` sending the `k`-th basis vector of `src` to the
/// `(j + k)`-th of `tgt`, where `src.c = tgt.c + j`; zero when Hom vanishes.
pub fn canonical_map(alg: &AlgebraSpec, cat: &Catalogue, src: Interval, tgt: Interval) -> VertexMaps {
    let field = cat.field();
    let (sr, tr) = (interval_rep(cat, src), interval_rep(cat, tgt));
    let mut maps: VertexMaps = sr.zero_map_to(tr);
    if !hom_nonzero(alg, src, tgt) {
        return maps;
    }
    let tgt_support: Vec<usize> = alg.support(tgt).collect();
    let j = tgt_support
        .iter()
        .position(|&v| v == src.c)
        .expect("a nonzero map hits the vertex of the source top");
    for (k, v) in alg.support(src).enumerate() {
        if j + k < tgt.len {
            maps[v - 1] = Matrix::identity(field, 1);
        }
    }
    maps
}

fn interval_rep(cat: &Catalogue, m: Interval) -> &crate::oracle::rep::QuiverRep {
    cat.module(cat.interval_index(m).expect("interval in catalogue"))
}

/// The basis extension `sub ↣ top (⊕ overlap) ↠ quot` as concrete maps.
pub fn realize_extension(alg: &AlgebraSpec, cat: &Catalogue, sub: Interval, quot: Interval) -> Result<SesInstance> {
    let shape = ext_shape(alg, sub, quot).ok_or(Error::NotAnExtension { sub, quot })?;
    let (sr, qr) = (interval_rep(cat, sub).clone(), interval_rep(cat, quot).clone());
    let top = shape.top;
    let (mid, monic, epic) = match (shape.case, shape.overlap) {
        (ExtCase::Indecomposable, _) | (_, None) => (
            interval_rep(cat, top).clone(),
            canonical_map(alg, cat, sub, top),
            canonical_map(alg, cat, top, quot),
        ),
        (ExtCase::TwoTerms, Some(ov)) => {
            let mid = direct_sum(&[interval_rep(cat, top), interval_rep(cat, ov)]);
            let a = canonical_map(alg, cat, sub, top);
            let b = canonical_map(alg, cat, sub, ov);
            let c = canonical_map(alg, cat, top, quot);
            let d = canonical_map(alg, cat, ov, quot);
            let monic = a.iter().zip(&b).map(|(x, y)| x.vstack(y)).collect();
            let epic = c.iter().zip(&d).map(|(x, y)| x.hstack(&y.neg())).collect();
            (mid, monic, epic)
        }
    };
    let f = RepMorphism::new(sr, mid.clone(), monic)?;
    let g = RepMorphism::new(mid, qr, epic)?;
    SesInstance::new(f, g)
}
