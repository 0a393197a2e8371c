//! A catalogue of indecomposable representations with the Hom/Ext data the
//! oracle needs: Krull–Schmidt decomposition, iso-class recognition and
//! one-dimensional Ext components.

use std::sync::Arc;

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::interval::{ar_sequences, indecomposables, AlgebraSpec, Interval};
use crate::linalg::{Field, Matrix, Subspace};
use crate::oracle::rep::{direct_sum, hom_basis, hom_dim, interval_to_rep, BoundQuiver, QuiverRep, VertexMaps};

/// Ext¹ between two catalogue modules, in cocycle coordinates: one block
/// `C_a: Z_src → Y_tgt` per arrow, flattened row-major arrow after arrow.
#[derive(Clone, Debug)]
pub struct ExtData {
    pub dim: usize,
    /// Coboundaries `Y_a φ_s − φ_t Z_a`.
    pub coboundaries: Subspace,
    /// A cocycle representing a nonzero class, when `dim > 0`.
    pub basis: Option<Vec<u8>>,
}

/// A module written as a direct sum of catalogue modules.
#[derive(Clone, Debug)]
pub struct Decomposition {
    /// Catalogue index of each summand, nondecreasing.
    pub types: Vec<usize>,
    /// Inclusion of each summand.
    pub incl: Vec<VertexMaps>,
    /// Projection onto each summand; `proj[i] ∘ incl[j] = δ_ij`.
    pub proj: Vec<VertexMaps>,
}

#[derive(Debug)]
pub struct Catalogue {
    quiver: Arc<BoundQuiver>,
    field: Field,
    names: Vec<String>,
    modules: Vec<QuiverRep>,
    intervals: Option<(AlgebraSpec, Vec<Interval>)>,
    hom_dims: Vec<Vec<usize>>,
    hom_inv: Vec<Vec<Ratio<i64>>>,
    ext: Vec<Vec<ExtData>>,
    /// `(end, sub)` catalogue indices of the Auslander–Reiten sequences.
    ar_pairs: Vec<(usize, usize)>,
}

impl Catalogue {
    /// Catalogue of interval modules, indexed in lexicographic order.
    pub fn nakayama(alg: &AlgebraSpec, field: Field) -> Result<Self> {
        let quiver = Arc::new(BoundQuiver::nakayama(alg));
        let ind = indecomposables(alg);
        let modules = ind.iter().map(|&m| interval_to_rep(alg, &quiver, m, field)).collect();
        let names = ind.iter().map(|m| m.to_string()).collect();
        let index = |m: Interval| ind.iter().position(|&x| x == m).expect("interval in catalogue");
        let ar_pairs = ar_sequences(alg).iter().map(|s| (index(s.end), index(s.sub))).collect();
        let mut cat = Self::build(quiver, field, names, modules, ar_pairs)?;
        cat.intervals = Some((alg.clone(), ind));
        Ok(cat)
    }

    pub(crate) fn build(
        quiver: Arc<BoundQuiver>,
        field: Field,
        names: Vec<String>,
        modules: Vec<QuiverRep>,
        ar_pairs: Vec<(usize, usize)>,
    ) -> Result<Self> {
        let n = modules.len();
        let hom_dims: Vec<Vec<usize>> = modules
            .iter()
            .map(|a| modules.iter().map(|b| hom_dim(a, b)).collect())
            .collect();
        for (i, name) in names.iter().enumerate() {
            if hom_dims[i][i] != 1 {
                return Err(Error::DecompositionFailed(format!(
                    "End({name}) has dimension {}; catalogue modules must be bricks",
                    hom_dims[i][i]
                )));
            }
        }
        let hom_inv = rational_inverse(&hom_dims)
            .ok_or_else(|| Error::DecompositionFailed("Hom-dimension matrix of the catalogue is singular".into()))?;
        let mut ext = Vec::with_capacity(n);
        for q in 0..n {
            let mut row = Vec::with_capacity(n);
            for s in 0..n {
                let data = ext_data(&quiver, &modules[q], &modules[s]);
                if data.dim > 1 {
                    return Err(Error::ExtNotMultiplicityFree {
                        quot: names[q].clone(),
                        sub: names[s].clone(),
                        dim: data.dim,
                    });
                }
                row.push(data);
            }
            ext.push(row);
        }
        Ok(Self {
            quiver,
            field,
            names,
            modules,
            intervals: None,
            hom_dims,
            hom_inv,
            ext,
            ar_pairs,
        })
    }

    pub fn quiver(&self) -> &Arc<BoundQuiver> {
        &self.quiver
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn len(&self) -> usize {
        self.modules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modules.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn module(&self, i: usize) -> &QuiverRep {
        &self.modules[i]
    }

    pub fn modules(&self) -> &[QuiverRep] {
        &self.modules
    }

    pub fn dim(&self, i: usize) -> usize {
        self.modules[i].total_dim()
    }

    /// The algebra and interval list when this is a Nakayama catalogue.
    pub fn intervals(&self) -> Option<&(AlgebraSpec, Vec<Interval>)> {
        self.intervals.as_ref()
    }

    pub fn interval_index(&self, m: Interval) -> Option<usize> {
        self.intervals.as_ref()?.1.iter().position(|&x| x == m)
    }

    pub fn hom_dims(&self) -> &[Vec<usize>] {
        &self.hom_dims
    }

    pub fn ext(&self, quot: usize, sub: usize) -> &ExtData {
        &self.ext[quot][sub]
    }

    pub fn ext_nonzero(&self, quot: usize, sub: usize) -> bool {
        self.ext[quot][sub].dim > 0
    }

    /// All `(quot, sub)` with nonzero Ext¹, in lexicographic order.
    pub fn nonzero_ext_pairs(&self) -> Vec<(usize, usize)> {
        (0..self.len())
            .flat_map(|q| (0..self.len()).map(move |s| (q, s)))
            .filter(|&(q, s)| self.ext_nonzero(q, s))
            .collect()
    }

    pub fn ar_pairs(&self) -> &[(usize, usize)] {
        &self.ar_pairs
    }

    /// Whether the cocycle `c` on `Ext¹(quot, sub)` represents a nonzero class.
    pub fn is_nonzero_class(&self, quot: usize, sub: usize, c: &[u8]) -> bool {
        let data = &self.ext[quot][sub];
        data.dim > 0 && !data.coboundaries.contains_vec(c)
    }

    /// Direct sum of catalogue modules (the zero module for an empty list).
    pub fn realize(&self, types: &[usize]) -> QuiverRep {
        if types.is_empty() {
            return QuiverRep::zero(self.quiver.clone(), self.field);
        }
        let parts: Vec<&QuiverRep> = types.iter().map(|&t| &self.modules[t]).collect();
        direct_sum(&parts)
    }

    /// Human-readable direct sum, `0` for the zero module.
    pub fn describe(&self, types: &[usize]) -> String {
        if types.is_empty() {
            return "0".into();
        }
        types
            .iter()
            .map(|&t| self.names[t].as_str())
            .collect::<Vec<_>>()
            .join("⊕")
    }

    /// Every multiset of catalogue modules (sorted index lists) of total
    /// dimension between 1 and `bound`, ordered by dimension and then
    /// lexicographically.
    pub fn objects_up_to(&self, bound: usize) -> Vec<Vec<usize>> {
        fn rec(cat: &Catalogue, start: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            for t in start..cat.len() {
                let d = cat.dim(t);
                if d <= left {
                    cur.push(t);
                    out.push(cur.clone());
                    rec(cat, t, left - d, cur, out);
                    cur.pop();
                }
            }
        }
        let mut out = Vec::new();
        rec(self, 0, bound, &mut Vec::new(), &mut out);
        out.sort_by(|a, b| {
            let da: usize = a.iter().map(|&t| self.dim(t)).sum();
            let db: usize = b.iter().map(|&t| self.dim(t)).sum();
            da.cmp(&db).then_with(|| a.cmp(b))
        });
        out
    }

    /// Multiset of catalogue indices (sorted) with `⊕ = x`, read off the
    /// dimensions of `Hom(M_i, x)`.
    pub fn iso_class(&self, x: &QuiverRep) -> Result<Vec<usize>> {
        let f: Vec<usize> = self.modules.iter().map(|m| hom_dim(m, x)).collect();
        self.solve_fingerprint(&f, x)
    }

    fn solve_fingerprint(&self, f: &[usize], x: &QuiverRep) -> Result<Vec<usize>> {
        let n = self.len();
        let mut out = Vec::new();
        let mut dims = vec![0; x.dims().len()];
        for i in 0..n {
            let v: Ratio<i64> = (0..n)
                .map(|j| self.hom_inv[i][j] * Ratio::from_integer(f[j] as i64))
                .sum();
            if !v.is_integer() || *v.numer() < 0 {
                return Err(Error::UnrecognizedModule);
            }
            let k = v.to_integer() as usize;
            for (d, md) in dims.iter_mut().zip(self.modules[i].dims()) {
                *d += k * md;
            }
            out.extend(std::iter::repeat_n(i, k));
        }
        if dims != x.dims() {
            return Err(Error::UnrecognizedModule);
        }
        Ok(out)
    }

    /// Explicit Krull–Schmidt decomposition. For each catalogue brick `M`,
    /// the pairing `Hom(M, x) × Hom(x, M) → End(M) = k` has rank equal to the
    /// multiplicity of `M`; maps `M → x` on a nondegenerate block of rows,
    /// stacked over all types, form an isomorphism `⊕ M → x`.
    pub fn decompose(&self, x: &QuiverRep) -> Result<Decomposition> {
        let field = self.field;
        let nv = x.dims().len();
        let mut types = Vec::new();
        let mut incl: Vec<VertexMaps> = Vec::new();
        for (t, m) in self.modules.iter().enumerate() {
            let into = hom_basis(m, x);
            if into.is_empty() {
                continue;
            }
            let out = hom_basis(x, m);
            if out.is_empty() {
                continue;
            }
            let v0 = m
                .dims()
                .iter()
                .position(|&d| d > 0)
                .expect("catalogue modules are nonzero");
            let mut pairing = Matrix::zeros(field, into.len(), out.len());
            for (i, g) in into.iter().enumerate() {
                for (j, h) in out.iter().enumerate() {
                    pairing.set(i, j, h[v0].mul(&g[v0]).get(0, 0));
                }
            }
            // Rows of `pairing` that are independent pick the summand inclusions.
            let rows = pairing.transpose().rref().1;
            for i in rows {
                types.push(t);
                incl.push(into[i].clone());
            }
        }
        let mut g_inv = Vec::with_capacity(nv);
        for v in 0..nv {
            let mut g = Matrix::zeros(field, x.dims()[v], 0);
            for f in &incl {
                g = g.hstack(&f[v]);
            }
            if g.rows() != g.cols() {
                return Err(Error::DecompositionFailed(format!(
                    "summands have dimension {} at vertex {} but the module has {}",
                    g.cols(),
                    self.quiver.vertices[v],
                    g.rows()
                )));
            }
            g_inv.push(g.inverse().ok_or_else(|| {
                Error::DecompositionFailed(format!(
                    "summand inclusions are dependent at vertex {}",
                    self.quiver.vertices[v]
                ))
            })?);
        }
        let mut proj = Vec::with_capacity(types.len());
        let mut offsets = vec![0; nv];
        for &t in &types {
            let m = &self.modules[t];
            proj.push(
                (0..nv)
                    .map(|v| {
                        let block = g_inv[v].row_block(offsets[v], offsets[v] + m.dims()[v]);
                        offsets[v] += m.dims()[v];
                        block
                    })
                    .collect(),
            );
        }
        Ok(Decomposition { types, incl, proj })
    }
}

/// Ext¹(z, y) for representations of a bound quiver with monomial relations.
pub(crate) fn ext_data(quiver: &BoundQuiver, z: &QuiverRep, y: &QuiverRep) -> ExtData {
    let field = z.field();
    let layout = CocycleLayout::new(quiver, z, y);
    let total = layout.total;
    // Cocycle condition: the off-diagonal block of every relation path vanishes.
    let mut constraints: Vec<Vec<u8>> = Vec::new();
    for rel in &quiver.relations {
        let cols: Vec<Vec<u8>> = (0..total)
            .map(|idx| {
                let mut c = vec![0u8; total];
                c[idx] = 1;
                relation_block(quiver, z, y, &layout, rel, &c).data().to_vec()
            })
            .collect();
        let rows = cols.first().map_or(0, |c| c.len());
        for r in 0..rows {
            constraints.push(cols.iter().map(|c| c[r]).collect());
        }
    }
    let cocycles = if constraints.is_empty() {
        Subspace::full(field, total)
    } else {
        let data: Vec<i64> = constraints.iter().flatten().map(|&x| x as i64).collect();
        let m = Matrix::from_rows(field, constraints.len(), total, &data);
        Subspace::from_cols(&m.kernel())
    };
    // Coboundaries from unit maps φ: z_v → y_v.
    let mut cob_rows: Vec<i64> = Vec::new();
    let mut cob_count = 0;
    for v in 0..z.dims().len() {
        for r in 0..y.dims()[v] {
            for c in 0..z.dims()[v] {
                let mut phi: Vec<Matrix> = z.zero_map_to(y);
                phi[v].set(r, c, 1);
                cob_rows.extend(coboundary(quiver, z, y, &phi).iter().map(|&x| x as i64));
                cob_count += 1;
            }
        }
    }
    let coboundaries = Subspace::from_rows(Matrix::from_rows(field, cob_count, total, &cob_rows));
    let dim = cocycles.dim() - coboundaries.dim();
    let basis = (dim > 0).then(|| {
        let rows = cocycles.basis_rows();
        (0..rows.rows())
            .map(|i| rows.row(i).to_vec())
            .find(|v| !coboundaries.contains_vec(v))
            .expect("a cocycle outside the coboundaries")
    });
    ExtData {
        dim,
        coboundaries,
        basis,
    }
}

pub(crate) struct CocycleLayout {
    pub offsets: Vec<usize>,
    pub total: usize,
}

impl CocycleLayout {
    pub fn new(quiver: &BoundQuiver, z: &QuiverRep, y: &QuiverRep) -> Self {
        let mut offsets = Vec::with_capacity(quiver.arrows.len());
        let mut total = 0;
        for a in &quiver.arrows {
            offsets.push(total);
            total += y.dims()[a.tgt] * z.dims()[a.src];
        }
        Self { offsets, total }
    }

    pub fn block(&self, quiver: &BoundQuiver, z: &QuiverRep, y: &QuiverRep, c: &[u8], a: usize) -> Matrix {
        let arrow = &quiver.arrows[a];
        let (rows, cols) = (y.dims()[arrow.tgt], z.dims()[arrow.src]);
        let start = self.offsets[a];
        let data: Vec<i64> = c[start..start + rows * cols].iter().map(|&x| x as i64).collect();
        Matrix::from_rows(z.field(), rows, cols, &data)
    }
}

/// Flattens per-arrow blocks into a cocycle vector.
pub(crate) fn flatten_blocks(blocks: &[Matrix]) -> Vec<u8> {
    blocks.iter().flat_map(|m| m.data().iter().copied()).collect()
}

fn relation_block(
    quiver: &BoundQuiver,
    z: &QuiverRep,
    y: &QuiverRep,
    layout: &CocycleLayout,
    rel: &[usize],
    c: &[u8],
) -> Matrix {
    // Running product of the block upper-triangular matrices [[Y, C], [0, Z]]:
    // track only the off-diagonal block together with the Z-part.
    let field = z.field();
    let start = quiver.arrows[rel[0]].src;
    let mut off = Matrix::zeros(field, y.dims()[start], z.dims()[start]);
    let mut zp = Matrix::identity(field, z.dims()[start]);
    for &a in rel {
        let ya = &y.mats()[a];
        let ca = layout.block(quiver, z, y, c, a);
        off = ya.mul(&off).add(&ca.mul(&zp));
        zp = z.mats()[a].mul(&zp);
    }
    off
}

/// `(δφ)_a = Y_a φ_s − φ_t Z_a`.
pub(crate) fn coboundary(quiver: &BoundQuiver, z: &QuiverRep, y: &QuiverRep, phi: &[Matrix]) -> Vec<u8> {
    let blocks: Vec<Matrix> = quiver
        .arrows
        .iter()
        .enumerate()
        .map(|(ai, a)| y.mats()[ai].mul(&phi[a.src]).sub(&phi[a.tgt].mul(&z.mats()[ai])))
        .collect();
    flatten_blocks(&blocks)
}

fn rational_inverse(m: &[Vec<usize>]) -> Option<Vec<Vec<Ratio<i64>>>> {
    let n = m.len();
    let mut a: Vec<Vec<Ratio<i64>>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<Ratio<i64>> = row.iter().map(|&x| Ratio::from_integer(x as i64)).collect();
            r.extend((0..n).map(|j| Ratio::from_integer(i64::from(i == j))));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| *a[r][col].numer() != 0)?;
        a.swap(col, piv);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x *= inv;
        }
        for r in 0..n {
            if r != col && *a[r][col].numer() != 0 {
                let factor = a[r][col];
                let pivot_row = a[col].clone();
                for (x, p) in a[r].iter_mut().zip(pivot_row) {
                    *x -= factor * p;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}
