//! Bound quivers, their representations over GF(p), and morphisms.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::interval::{AlgebraSpec, Interval, Shape};
use crate::linalg::{Field, Matrix, Subspace};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub src: usize,
    pub tgt: usize,
}

/// A quiver with monomial relations. A relation is a path listed in the
/// order its arrows are traversed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BoundQuiver {
    pub vertices: Vec<String>,
    pub arrows: Vec<Arrow>,
    pub relations: Vec<Vec<usize>>,
}

impl BoundQuiver {
    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    /// The quiver `1 → 2 → … → n` (closed up for cyclic algebras) with the
    /// zero relations read off the Kupisch series.
    pub fn nakayama(alg: &AlgebraSpec) -> Self {
        let n = alg.n();
        let vertices = (1..=n).map(|v| v.to_string()).collect();
        let arrow_count = match alg.shape() {
            Shape::Linear => n - 1,
            Shape::Cyclic => n,
        };
        let arrows = (0..arrow_count)
            .map(|i| Arrow {
                name: format!("a{}", i + 1),
                src: i,
                tgt: (i + 1) % n,
            })
            .collect();
        let mut relations = Vec::new();
        for c in 1..=n {
            let l = alg.projective_len(c);
            let path: Vec<usize> = (0..l).map(|k| (c - 1 + k) % n).collect();
            if path.iter().all(|&a| a < arrow_count) {
                relations.push(path);
            }
        }
        Self {
            vertices,
            arrows,
            relations,
        }
    }
}

/// A representation: a vector space per vertex and a matrix per arrow, the
/// matrix of `a: s → t` being `dims[t] × dims[s]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuiverRep {
    quiver: Arc<BoundQuiver>,
    field: Field,
    dims: Vec<usize>,
    mats: Vec<Matrix>,
}

/// Per-vertex linear maps; the raw data of a morphism of representations.
pub type VertexMaps = Vec<Matrix>;

impl QuiverRep {
    pub fn new(quiver: Arc<BoundQuiver>, field: Field, dims: Vec<usize>, mats: Vec<Matrix>) -> Result<Self> {
        if dims.len() != quiver.num_vertices() || mats.len() != quiver.arrows.len() {
            return Err(Error::InvalidAlgebra("representation does not match its quiver".into()));
        }
        for (a, m) in quiver.arrows.iter().zip(&mats) {
            if m.shape() != (dims[a.tgt], dims[a.src]) || m.field() != field {
                return Err(Error::InvalidAlgebra(format!(
                    "matrix of arrow {} has shape {:?}, expected {:?}",
                    a.name,
                    m.shape(),
                    (dims[a.tgt], dims[a.src])
                )));
            }
        }
        let rep = Self {
            quiver,
            field,
            dims,
            mats,
        };
        if let Some(rel) = rep.quiver.relations.iter().find(|r| !rep.path_matrix(r).is_zero()) {
            let names: Vec<&str> = rel.iter().map(|&a| rep.quiver.arrows[a].name.as_str()).collect();
            return Err(Error::InvalidAlgebra(format!(
                "relation {} does not vanish",
                names.join("·")
            )));
        }
        Ok(rep)
    }

    pub fn zero(quiver: Arc<BoundQuiver>, field: Field) -> Self {
        let dims = vec![0; quiver.num_vertices()];
        let mats = quiver.arrows.iter().map(|_| Matrix::zeros(field, 0, 0)).collect();
        Self {
            quiver,
            field,
            dims,
            mats,
        }
    }

    pub fn quiver(&self) -> &Arc<BoundQuiver> {
        &self.quiver
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn mats(&self) -> &[Matrix] {
        &self.mats
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    /// Product of the arrow matrices along a path.
    pub fn path_matrix(&self, path: &[usize]) -> Matrix {
        let first = &self.quiver.arrows[path[0]];
        let mut acc = Matrix::identity(self.field, self.dims[first.src]);
        for &a in path {
            acc = self.mats[a].mul(&acc);
        }
        acc
    }

    pub fn direct_sum(&self, other: &QuiverRep) -> QuiverRep {
        direct_sum(&[self, other])
    }

    pub fn identity(&self) -> VertexMaps {
        self.dims.iter().map(|&d| Matrix::identity(self.field, d)).collect()
    }

    pub fn zero_map_to(&self, target: &QuiverRep) -> VertexMaps {
        self.dims
            .iter()
            .zip(&target.dims)
            .map(|(&s, &t)| Matrix::zeros(self.field, t, s))
            .collect()
    }

    /// The submodule restricted to its own reduced bases.
    pub fn restrict(&self, sub: &[Subspace]) -> QuiverRep {
        let split: Vec<Splitting> = sub.iter().map(Splitting::new).collect();
        let mats = self
            .quiver
            .arrows
            .iter()
            .zip(&self.mats)
            .map(|(a, m)| split[a.tgt].r.mul(&m.mul(&split[a.src].b)))
            .collect();
        QuiverRep {
            quiver: self.quiver.clone(),
            field: self.field,
            dims: sub.iter().map(|u| u.dim()).collect(),
            mats,
        }
    }

    /// The quotient by a submodule together with the projection onto it.
    pub fn quotient(&self, sub: &[Subspace]) -> (QuiverRep, VertexMaps) {
        let split: Vec<Splitting> = sub.iter().map(Splitting::new).collect();
        let mats = self
            .quiver
            .arrows
            .iter()
            .zip(&self.mats)
            .map(|(a, m)| split[a.tgt].q.mul(&m.mul(&split[a.src].k)))
            .collect();
        let rep = QuiverRep {
            quiver: self.quiver.clone(),
            field: self.field,
            dims: split.iter().map(|s| s.k.cols()).collect(),
            mats,
        };
        (rep, split.into_iter().map(|s| s.q).collect())
    }

    /// Image of the whole module under a morphism, as a submodule of `target`.
    pub fn image_in(&self, f: &[Matrix]) -> Vec<Subspace> {
        f.iter().map(Subspace::from_cols).collect()
    }

    /// Whether the family of subspaces is stable under every arrow.
    pub fn is_submodule(&self, sub: &[Subspace]) -> bool {
        self.quiver
            .arrows
            .iter()
            .zip(&self.mats)
            .all(|(a, m)| sub[a.tgt].contains(&sub[a.src].image(m)))
    }

    pub fn full_submodule(&self) -> Vec<Subspace> {
        self.dims.iter().map(|&d| Subspace::full(self.field, d)).collect()
    }

    pub fn zero_submodule(&self) -> Vec<Subspace> {
        self.dims.iter().map(|&d| Subspace::zero(self.field, d)).collect()
    }
}

/// A vertex space split as `basis(U) ⊕ span(unit vectors off the pivots)`,
/// with the rows of the inverse change of basis cut into the coordinate maps
/// `r` (onto U) and `q` (onto the complement).
pub(crate) struct Splitting {
    pub b: Matrix,
    pub k: Matrix,
    pub r: Matrix,
    pub q: Matrix,
}

impl Splitting {
    pub fn new(u: &Subspace) -> Self {
        let b = u.basis_cols();
        let k = u.complement_cols();
        let t = b.hstack(&k);
        let tinv = t.inverse().expect("basis and complement span the space");
        let r = tinv.row_block(0, b.cols());
        let q = tinv.row_block(b.cols(), t.rows());
        Self { b, k, r, q }
    }
}

pub fn direct_sum(parts: &[&QuiverRep]) -> QuiverRep {
    let first = parts.first().expect("direct sum of at least one module");
    let quiver = first.quiver.clone();
    let field = first.field;
    let nv = quiver.num_vertices();
    let dims: Vec<usize> = (0..nv).map(|v| parts.iter().map(|p| p.dims[v]).sum()).collect();
    let mats = quiver
        .arrows
        .iter()
        .enumerate()
        .map(|(ai, a)| {
            let mut m = Matrix::zeros(field, dims[a.tgt], dims[a.src]);
            let (mut r0, mut c0) = (0, 0);
            for p in parts {
                let pm = &p.mats[ai];
                for r in 0..pm.rows() {
                    for c in 0..pm.cols() {
                        m.set(r0 + r, c0 + c, pm.get(r, c));
                    }
                }
                r0 += p.dims[a.tgt];
                c0 += p.dims[a.src];
            }
            m
        })
        .collect();
    QuiverRep {
        quiver,
        field,
        dims,
        mats,
    }
}

/// The uniserial representation of an interval: one basis vector per
/// composition factor, arrows acting as shifts towards the socle.
pub fn interval_to_rep(alg: &AlgebraSpec, quiver: &Arc<BoundQuiver>, m: Interval, field: Field) -> QuiverRep {
    let n = alg.n();
    let mut pos = vec![None; n];
    for (k, v) in alg.support(m).enumerate() {
        pos[v - 1] = Some(k);
    }
    let dims: Vec<usize> = pos.iter().map(|p| usize::from(p.is_some())).collect();
    let mats = quiver
        .arrows
        .iter()
        .map(|a| {
            let mut mat = Matrix::zeros(field, dims[a.tgt], dims[a.src]);
            if let (Some(ks), Some(kt)) = (pos[a.src], pos[a.tgt]) {
                if kt == ks + 1 {
                    mat.set(0, 0, 1);
                }
            }
            mat
        })
        .collect();
    QuiverRep {
        quiver: quiver.clone(),
        field,
        dims,
        mats,
    }
}

/// Basis of `Hom(x, y)`, solving `y_a F_s = F_t x_a` for every arrow.
pub fn hom_basis(x: &QuiverRep, y: &QuiverRep) -> Vec<VertexMaps> {
    let (system, offsets, _) = hom_system(x, y);
    let kernel = system.kernel();
    (0..kernel.cols())
        .map(|j| unpack_maps(x, y, &offsets, |i| kernel.get(i, j)))
        .collect()
}

pub fn hom_dim(x: &QuiverRep, y: &QuiverRep) -> usize {
    let (system, _, unknowns) = hom_system(x, y);
    unknowns - system.rank()
}

fn hom_system(x: &QuiverRep, y: &QuiverRep) -> (Matrix, Vec<usize>, usize) {
    let field = x.field;
    let nv = x.dims.len();
    let mut offsets = Vec::with_capacity(nv + 1);
    let mut total = 0;
    for v in 0..nv {
        offsets.push(total);
        total += y.dims[v] * x.dims[v];
    }
    offsets.push(total);
    let eqs: usize = x.quiver.arrows.iter().map(|a| y.dims[a.tgt] * x.dims[a.src]).sum();
    let mut sys = Matrix::zeros(field, eqs, total);
    let mut row = 0;
    for (ai, a) in x.quiver.arrows.iter().enumerate() {
        let (s, t) = (a.src, a.tgt);
        let ya = &y.mats[ai];
        let xa = &x.mats[ai];
        for i in 0..y.dims[t] {
            for j in 0..x.dims[s] {
                // Σ_k ya[i,k] F_s[k,j]
                for k in 0..y.dims[s] {
                    let c = ya.get(i, k);
                    if c != 0 {
                        let col = offsets[s] + k * x.dims[s] + j;
                        sys.set(row, col, field.add(sys.get(row, col), c));
                    }
                }
                // − Σ_k F_t[i,k] xa[k,j]
                for k in 0..x.dims[t] {
                    let c = xa.get(k, j);
                    if c != 0 {
                        let col = offsets[t] + i * x.dims[t] + k;
                        sys.set(row, col, field.sub(sys.get(row, col), c));
                    }
                }
                row += 1;
            }
        }
    }
    (sys, offsets, total)
}

fn unpack_maps(x: &QuiverRep, y: &QuiverRep, offsets: &[usize], entry: impl Fn(usize) -> u8) -> VertexMaps {
    (0..x.dims.len())
        .map(|v| {
            let mut m = Matrix::zeros(x.field, y.dims[v], x.dims[v]);
            for r in 0..y.dims[v] {
                for c in 0..x.dims[v] {
                    m.set(r, c, entry(offsets[v] + r * x.dims[v] + c));
                }
            }
            m
        })
        .collect()
}

/// Vertexwise composite `g ∘ f`.
pub fn compose(g: &[Matrix], f: &[Matrix]) -> VertexMaps {
    g.iter().zip(f).map(|(a, b)| a.mul(b)).collect()
}

pub fn is_morphism(x: &QuiverRep, y: &QuiverRep, f: &[Matrix]) -> bool {
    f.len() == x.dims.len()
        && f.iter().enumerate().all(|(v, m)| m.shape() == (y.dims[v], x.dims[v]))
        && x.quiver
            .arrows
            .iter()
            .enumerate()
            .all(|(ai, a)| y.mats[ai].mul(&f[a.src]) == f[a.tgt].mul(&x.mats[ai]))
}

/// A morphism of representations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepMorphism {
    pub source: QuiverRep,
    pub target: QuiverRep,
    pub maps: VertexMaps,
}

impl RepMorphism {
    pub fn new(source: QuiverRep, target: QuiverRep, maps: VertexMaps) -> Result<Self> {
        if !is_morphism(&source, &target, &maps) {
            return Err(Error::NotExact("maps do not commute with the arrows".into()));
        }
        Ok(Self { source, target, maps })
    }

    pub fn is_injective(&self) -> bool {
        self.maps.iter().all(|m| m.rank() == m.cols())
    }

    pub fn is_surjective(&self) -> bool {
        self.maps.iter().all(|m| m.rank() == m.rows())
    }

    pub fn is_zero(&self) -> bool {
        self.maps.iter().all(|m| m.is_zero())
    }

    /// Image as a submodule of the target.
    pub fn image(&self) -> Vec<Subspace> {
        self.source.image_in(&self.maps)
    }

    /// Kernel as a submodule of the source.
    pub fn kernel(&self) -> Vec<Subspace> {
        self.maps.iter().map(|m| Subspace::from_cols(&m.kernel())).collect()
    }
}

/// A short exact sequence `sub ↣ mid ↠ quot`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SesInstance {
    pub monic: RepMorphism,
    pub epic: RepMorphism,
}

impl SesInstance {
    pub fn new(monic: RepMorphism, epic: RepMorphism) -> Result<Self> {
        if monic.target != epic.source {
            return Err(Error::NotExact("middle terms differ".into()));
        }
        if !monic.is_injective() {
            return Err(Error::NotMonic);
        }
        if !epic.is_surjective() {
            return Err(Error::NotExact("second map is not surjective".into()));
        }
        if monic.image() != epic.kernel() {
            return Err(Error::NotExact(
                "image of the monic differs from the kernel of the epic".into(),
            ));
        }
        Ok(Self { monic, epic })
    }

    pub fn sub(&self) -> &QuiverRep {
        &self.monic.source
    }

    pub fn mid(&self) -> &QuiverRep {
        &self.monic.target
    }

    pub fn quot(&self) -> &QuiverRep {
        &self.epic.target
    }

    /// Whether `epic` admits a section, found by solving for `s` with `g s = 1`
    /// inside `Hom(quot, mid)`.
    pub fn is_split(&self) -> bool {
        has_section(&self.epic)
    }

    pub fn direct_sum(&self, other: &SesInstance) -> SesInstance {
        let m = RepMorphism {
            source: self.sub().direct_sum(other.sub()),
            target: self.mid().direct_sum(other.mid()),
            maps: block_diag(&self.monic.maps, &other.monic.maps),
        };
        let e = RepMorphism {
            source: m.target.clone(),
            target: self.quot().direct_sum(other.quot()),
            maps: block_diag(&self.epic.maps, &other.epic.maps),
        };
        SesInstance { monic: m, epic: e }
    }
}

pub fn block_diag(f: &[Matrix], g: &[Matrix]) -> VertexMaps {
    f.iter()
        .zip(g)
        .map(|(a, b)| {
            let field = a.field();
            let top = a.hstack(&Matrix::zeros(field, a.rows(), b.cols()));
            let bottom = Matrix::zeros(field, b.rows(), a.cols()).hstack(b);
            top.vstack(&bottom)
        })
        .collect()
}

/// Whether `g: M → Z` has a right inverse among module maps: the linear map
/// `Hom(Z, M) → Hom(Z, Z)`, `s ↦ g s`, must hit the identity.
pub fn has_section(g: &RepMorphism) -> bool {
    let basis = hom_basis(&g.target, &g.source);
    let id = g.target.identity();
    let target = flatten(&id);
    let cols: Vec<Vec<u8>> = basis.iter().map(|s| flatten(&compose(&g.maps, s))).collect();
    in_span(g.target.field, &cols, &target)
}

pub(crate) fn flatten(maps: &[Matrix]) -> Vec<u8> {
    maps.iter().flat_map(|m| m.data().iter().copied()).collect()
}

pub(crate) fn in_span(field: Field, vectors: &[Vec<u8>], target: &[u8]) -> bool {
    if target.iter().all(|&x| x == 0) {
        return true;
    }
    if vectors.is_empty() {
        return false;
    }
    let len = target.len();
    let data: Vec<i64> = vectors.iter().flat_map(|v| v.iter().map(|&x| x as i64)).collect();
    let span = Subspace::from_rows(Matrix::from_rows(field, vectors.len(), len, &data));
    span.contains_vec(target)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a3_quiver() -> (AlgebraSpec, Arc<BoundQuiver>) {
        let alg = AlgebraSpec::a_n(3);
        let q = Arc::new(BoundQuiver::nakayama(&alg));
        (alg, q)
    }

    #[test]
    fn interval_reps() {
        let (alg, q) = a3_quiver();
        let p1 = interval_to_rep(&alg, &q, Interval::new(1, 3), Field::GF2);
        assert_eq!(p1.dims(), &[1, 1, 1]);
        assert!(p1.mats().iter().all(|m| m.get(0, 0) == 1));
        let m = interval_to_rep(&alg, &q, Interval::new(2, 2), Field::GF2);
        assert_eq!(m.dims(), &[0, 1, 1]);
        let cyc: AlgebraSpec = "cyclic:2,2".parse().unwrap();
        let cq = Arc::new(BoundQuiver::nakayama(&cyc));
        let r = interval_to_rep(&cyc, &cq, Interval::new(1, 2), Field::GF2);
        assert_eq!(r.dims(), &[1, 1]);
        assert!(QuiverRep::new(cq.clone(), Field::GF2, r.dims().to_vec(), r.mats().to_vec()).is_ok());
    }

    #[test]
    fn hom_examples() {
        let (alg, q) = a3_quiver();
        let rep = |c, l| interval_to_rep(&alg, &q, Interval::new(c, l), Field::GF2);
        assert!(hom_basis(&rep(1, 2), &rep(2, 1)).is_empty());
        assert_eq!(hom_dim(&rep(2, 2), &rep(2, 1)), 1);
        let x = rep(1, 2).direct_sum(&rep(3, 1));
        let id = x.identity();
        let basis = hom_basis(&x, &x);
        let cols: Vec<Vec<u8>> = basis.iter().map(|f| flatten(f)).collect();
        assert!(in_span(Field::GF2, &cols, &flatten(&id)));
        for f in &basis {
            assert!(is_morphism(&x, &x, f));
        }
        let a2 = AlgebraSpec::a_n(2);
        let q2 = Arc::new(BoundQuiver::nakayama(&a2));
        let s2 = interval_to_rep(&a2, &q2, Interval::new(2, 1), Field::GF3);
        let p1 = interval_to_rep(&a2, &q2, Interval::new(1, 2), Field::GF3);
        assert_eq!(hom_dim(&s2, &p1), 1);
    }

    #[test]
    fn restrict_and_quotient() {
        let (alg, q) = a3_quiver();
        let p1 = interval_to_rep(&alg, &q, Interval::new(1, 3), Field::GF3);
        let f = Field::GF3;
        let sub = vec![Subspace::zero(f, 1), Subspace::full(f, 1), Subspace::full(f, 1)];
        assert!(p1.is_submodule(&sub));
        let y = p1.restrict(&sub);
        assert_eq!(y, interval_to_rep(&alg, &q, Interval::new(2, 2), f));
        let (z, proj) = p1.quotient(&sub);
        assert_eq!(z, interval_to_rep(&alg, &q, Interval::new(1, 1), f));
        assert!(is_morphism(&p1, &z, &proj));
        let bad = vec![Subspace::full(f, 1), Subspace::zero(f, 1), Subspace::zero(f, 1)];
        assert!(!p1.is_submodule(&bad));
    }
}
