//! Exhaustive check of the exact-category axioms on all objects up to a
//! total-dimension bound.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::Result;
use crate::linalg::{Matrix, Subspace};
use crate::oracle::catalog::Catalogue;
use crate::oracle::rep::{direct_sum, hom_basis, QuiverRep};
use crate::oracle::ses::{analyze_submodule, Admissibility, PairMask};
use crate::oracle::submodules::{contains, coordinates, enumerate_submodules, Submodule};

pub const DEFAULT_AXIOM_BOUND: usize = 5;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AxiomReport {
    /// Number of instances checked per axiom.
    pub cases: BTreeMap<&'static str, usize>,
    /// First violation found, if any.
    pub failure: Option<String>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }

    fn record(&mut self, axiom: &'static str, ok: bool, what: impl FnOnce() -> String) {
        if self.failure.is_some() {
            return;
        }
        *self.cases.entry(axiom).or_default() += 1;
        if !ok {
            self.failure = Some(format!("{axiom}: {}", what()));
        }
    }

    pub fn total_cases(&self) -> usize {
        self.cases.values().sum()
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.failure {
            None => write!(f, "pass")?,
            Some(msg) => write!(f, "FAIL {msg}")?,
        }
        let parts: Vec<String> = self.cases.iter().map(|(k, v)| format!("{k}={v}")).collect();
        write!(f, " ({})", parts.join(", "))
    }
}

pub fn validate_exact_axioms(cat: &Catalogue, adm: &impl Admissibility, dim_bound: usize) -> Result<AxiomReport> {
    let mask = PairMask::from_admissibility(adm, cat.len());
    Ok(validate_exact_axioms_many(cat, std::slice::from_ref(&mask), dim_bound)?.remove(0))
}

/// Checks several structures at once; the structure-independent Ext
/// analysis of every sequence is shared between them.
pub fn validate_exact_axioms_many(
    cat: &Catalogue,
    structures: &[PairMask],
    dim_bound: usize,
) -> Result<Vec<AxiomReport>> {
    let mut reports = vec![AxiomReport::default(); structures.len()];
    for types in cat.objects_up_to(dim_bound) {
        let x = cat.realize(&types);
        let name = cat.describe(&types);
        let subs = enumerate_submodules(&x, dim_bound)?;
        let analyses = subs
            .iter()
            .map(|u| analyze_submodule(cat, &x, u))
            .collect::<Result<Vec<_>>>()?;
        let full = subs.len() - 1;
        for (report, mask) in reports.iter_mut().zip(structures) {
            report.record("A0", analyses[full].admissible_under(mask), || {
                format!("identity of {name}")
            });
            report.record("A0op", analyses[0].admissible_under(mask), || {
                format!("zero subobject of {name}")
            });
        }

        for (mi, m) in subs.iter().enumerate() {
            let m_rep = x.restrict(m);
            let m_coords = coordinates(m);
            for (yi, y) in subs.iter().enumerate() {
                if yi == mi || !contains(m, y) {
                    continue;
                }
                // Y ↪ M inside M, and M/Y ↪ X/Y inside X/Y.
                let y_in_m: Submodule = y.iter().zip(&m_coords).map(|(u, r)| u.image(r)).collect();
                let inner = analyze_submodule(cat, &m_rep, &y_in_m)?;
                let (x_mod_y, proj) = x.quotient(y);
                let m_mod_y: Submodule = m.iter().zip(&proj).map(|(u, q)| u.image(q)).collect();
                let outer = analyze_submodule(cat, &x_mod_y, &m_mod_y)?;
                for (report, mask) in reports.iter_mut().zip(structures) {
                    let (y_adm, m_adm) = (analyses[yi].admissible_under(mask), analyses[mi].admissible_under(mask));
                    if inner.admissible_under(mask) && m_adm {
                        report.record("A1", y_adm, || {
                            format!(
                                "in {name}: {} ↣ {} ↣ X composes to a non-admissible monic",
                                cat.describe(&analyses[yi].sub),
                                cat.describe(&analyses[mi].sub)
                            )
                        });
                    }
                    if y_adm && outer.admissible_under(mask) {
                        report.record("A1op", m_adm, || {
                            format!(
                                "in {name}: epics onto {} and then {} compose to a non-admissible epic",
                                cat.describe(&analyses[yi].quot),
                                cat.describe(&analyses[mi].quot)
                            )
                        });
                    }
                }
            }
        }

        for (yi, y) in subs.iter().enumerate() {
            if !structures.iter().any(|m| analyses[yi].admissible_under(m)) {
                continue;
            }
            let y_rep = x.restrict(y);
            let incl: Vec<Matrix> = y.iter().map(|u| u.basis_cols()).collect();
            let (z_rep, proj) = x.quotient(y);
            for (ci, c) in cat.modules().iter().enumerate() {
                for g in hom_basis(&y_rep, c) {
                    let pushed = pushout_analysis(cat, &x, c, &incl, &g)?;
                    for (report, mask) in reports.iter_mut().zip(structures) {
                        if analyses[yi].admissible_under(mask) {
                            report.record("A2", pushed.admissible_under(mask), || {
                                format!(
                                    "pushout of {} ↣ {name} along a map to {}",
                                    cat.describe(&analyses[yi].sub),
                                    cat.name(ci)
                                )
                            });
                        }
                    }
                }
                for h in hom_basis(c, &z_rep) {
                    let pulled = pullback_analysis(cat, &x, c, &proj, &h)?;
                    for (report, mask) in reports.iter_mut().zip(structures) {
                        if analyses[yi].admissible_under(mask) {
                            report.record("A2op", pulled.admissible_under(mask), || {
                                format!(
                                    "pullback of {name} ↠ {} along a map from {}",
                                    cat.describe(&analyses[yi].quot),
                                    cat.name(ci)
                                )
                            });
                        }
                    }
                }
            }
        }
    }
    Ok(reports)
}

/// `C ↣ (X ⊕ C)/{(i y, −g y)}` for the inclusion `i: Y → X`.
fn pushout_analysis(
    cat: &Catalogue,
    x: &QuiverRep,
    c: &QuiverRep,
    incl: &[Matrix],
    g: &[Matrix],
) -> Result<crate::oracle::ses::SesAnalysis> {
    let sum = direct_sum(&[x, c]);
    let glue: Submodule = incl
        .iter()
        .zip(g)
        .map(|(i, gv)| Subspace::from_cols(&i.vstack(&gv.neg())))
        .collect();
    let (p, q) = sum.quotient(&glue);
    let c_in_p: Submodule = q
        .iter()
        .zip(c.dims().iter().zip(x.dims()))
        .map(|(qv, (&dc, &dx))| {
            let embed = Matrix::zeros(c.field(), dx, dc).vstack(&Matrix::identity(c.field(), dc));
            Subspace::from_cols(&qv.mul(&embed))
        })
        .collect();
    debug_assert!(c_in_p.iter().zip(c.dims()).all(|(u, &d)| u.dim() == d));
    analyze_submodule(cat, &p, &c_in_p)
}

/// `{(x, c) : p x = h c} ↠ C`, analysed through its kernel.
fn pullback_analysis(
    cat: &Catalogue,
    x: &QuiverRep,
    c: &QuiverRep,
    proj: &[Matrix],
    h: &[Matrix],
) -> Result<crate::oracle::ses::SesAnalysis> {
    let sum = direct_sum(&[x, c]);
    let pb: Submodule = proj
        .iter()
        .zip(h)
        .map(|(p, hv)| Subspace::from_cols(&p.hstack(&hv.neg()).kernel()))
        .collect();
    let p_rep = sum.restrict(&pb);
    let kernel: Submodule = pb
        .iter()
        .zip(x.dims())
        .map(|(u, &dx)| {
            let b = u.basis_cols();
            let to_c = b.row_block(dx, b.rows());
            Subspace::from_cols(&to_c.kernel())
        })
        .collect();
    analyze_submodule(cat, &p_rep, &kernel)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{enumerate_structures, ExactStructure};
    use crate::interval::AlgebraSpec;
    use crate::linalg::Field;

    #[test]
    fn split_and_maximal_structures_pass() {
        let alg = AlgebraSpec::a_n(3);
        let cat = Catalogue::nakayama(&alg, Field::GF2).unwrap();
        for e in [ExactStructure::split(alg.clone()), ExactStructure::maximal(alg.clone())] {
            let r = validate_exact_axioms(&cat, &e, 4).unwrap();
            assert!(r.passed(), "{r}");
            assert!(r.cases["A2"] > 0 && r.cases["A1"] > 0);
        }
    }

    #[test]
    fn non_closed_pair_set_fails() {
        use crate::interval::Interval;
        let alg = AlgebraSpec::a_n(3);
        let cat = Catalogue::nakayama(&alg, Field::GF2).unwrap();
        let mut mask = PairMask::empty(cat.len());
        let idx = |c, l| cat.interval_index(Interval::new(c, l)).unwrap();
        mask.insert(idx(1, 2), idx(3, 1));
        let r = validate_exact_axioms(&cat, &mask, 4).unwrap();
        assert!(!r.passed());
    }

    #[test]
    fn a2_structures_pass() {
        let alg = AlgebraSpec::a_n(2);
        let cat = Catalogue::nakayama(&alg, Field::GF3).unwrap();
        let masks: Vec<PairMask> = enumerate_structures(&alg)
            .unwrap()
            .map(|e| PairMask::for_structure(&e, &cat))
            .collect();
        for r in validate_exact_axioms_many(&cat, &masks, 4).unwrap() {
            assert!(r.passed(), "{r}");
        }
    }
}
