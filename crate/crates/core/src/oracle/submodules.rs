//! Exhaustive enumeration of submodules over a finite field.

use crate::error::{Error, Result};
use crate::linalg::{all_subspaces, Matrix, Subspace};
use crate::oracle::rep::QuiverRep;

pub const DEFAULT_SUBMODULE_BOUND: usize = 7;

/// A submodule given by one canonical subspace per vertex.
pub type Submodule = Vec<Subspace>;

/// Every arrow-stable family of vertex subspaces of `x`, ordered by total
/// dimension and then lexicographically by canonical bases.
pub fn enumerate_submodules(x: &QuiverRep, bound: usize) -> Result<Vec<Submodule>> {
    let dim = x.total_dim();
    if dim > bound {
        return Err(Error::DimensionBound { dim, bound });
    }
    let field = x.field();
    let nv = x.dims().len();
    let candidates: Vec<Vec<Subspace>> = x.dims().iter().map(|&d| all_subspaces(field, d)).collect();
    // Arrows are checked as soon as both endpoints are assigned.
    let arrows = &x.quiver().arrows;
    let checks: Vec<Vec<usize>> = (0..nv)
        .map(|v| {
            (0..arrows.len())
                .filter(|&a| arrows[a].src.max(arrows[a].tgt) == v)
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut cur: Vec<Subspace> = Vec::with_capacity(nv);
    fn rec(
        v: usize,
        x: &QuiverRep,
        candidates: &[Vec<Subspace>],
        checks: &[Vec<usize>],
        cur: &mut Vec<Subspace>,
        out: &mut Vec<Submodule>,
    ) {
        if v == candidates.len() {
            out.push(cur.clone());
            return;
        }
        let arrows = &x.quiver().arrows;
        for u in &candidates[v] {
            cur.push(u.clone());
            let ok = checks[v].iter().all(|&a| {
                let (s, t) = (arrows[a].src, arrows[a].tgt);
                cur[t].contains(&cur[s].image(&x.mats()[a]))
            });
            if ok {
                rec(v + 1, x, candidates, checks, cur, out);
            }
            cur.pop();
        }
    }
    rec(0, x, &candidates, &checks, &mut cur, &mut out);
    out.sort_by(|a, b| {
        let da: usize = a.iter().map(|u| u.dim()).sum();
        let db: usize = b.iter().map(|u| u.dim()).sum();
        da.cmp(&db).then_with(|| a.cmp(b))
    });
    Ok(out)
}

pub fn submodule_dim(sub: &[Subspace]) -> usize {
    sub.iter().map(|u| u.dim()).sum()
}

pub fn contains(big: &[Subspace], small: &[Subspace]) -> bool {
    big.iter().zip(small).all(|(b, s)| b.contains(s))
}

pub fn intersection(a: &[Subspace], b: &[Subspace]) -> Submodule {
    a.iter().zip(b).map(|(x, y)| x.intersection(y)).collect()
}

pub fn sum(a: &[Subspace], b: &[Subspace]) -> Submodule {
    a.iter().zip(b).map(|(x, y)| x.sum(y)).collect()
}

/// Per-vertex coordinate maps onto the reduced basis of each subspace; they
/// identify `big` with the representation `x.restrict(big)`.
pub fn coordinates(big: &[Subspace]) -> Vec<Matrix> {
    big.iter()
        .map(|u| {
            let b = u.basis_cols();
            b.hstack(&u.complement_cols())
                .inverse()
                .expect("basis and complement span")
                .row_block(0, b.cols())
        })
        .collect()
}

/// `small ⊆ big` as a submodule of `x.restrict(big)`.
pub fn relative(big: &[Subspace], small: &[Subspace]) -> Submodule {
    small.iter().zip(coordinates(big)).map(|(u, r)| u.image(&r)).collect()
}
