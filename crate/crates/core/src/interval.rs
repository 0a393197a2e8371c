//! Interval modules over Nakayama algebras.
//!
//! An indecomposable is stored as its top vertex and its length; the socle
//! vertex is derived. All Hom/Ext questions between intervals reduce to
//! arithmetic on the offset between top vertices.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Shape {
    Linear,
    Cyclic,
}

/// A Nakayama algebra given by its quiver shape and Kupisch series.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawAlgebra")]
pub struct AlgebraSpec {
    shape: Shape,
    kupisch: Vec<usize>,
}

#[derive(Deserialize)]
struct RawAlgebra {
    shape: Shape,
    kupisch: Vec<usize>,
}

impl TryFrom<RawAlgebra> for AlgebraSpec {
    type Error = Error;

    fn try_from(raw: RawAlgebra) -> Result<Self> {
        build_algebra(raw.shape, raw.kupisch.len(), &raw.kupisch)
    }
}

/// An indecomposable interval module: top vertex `c` (1-based) and length.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Interval {
    pub c: usize,
    pub len: usize,
}

impl Interval {
    pub const fn new(c: usize, len: usize) -> Self {
        Self { c, len }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.c, self.len)
    }
}

impl FromStr for Interval {
    type Err = Error;

    /// Parses `(c,l)` or `c,l`.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let (a, b) = inner
            .split_once(',')
            .ok_or_else(|| Error::Config(format!("expected an interval `(c,l)`, got `{s}`")))?;
        let parse = |t: &str| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| Error::Config(format!("bad interval component `{t}` in `{s}`")))
        };
        Ok(Interval::new(parse(a)?, parse(b)?))
    }
}

/// The Auslander–Reiten sequence `sub ↣ mid_top ⊕ mid_small ↠ end`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ArSeq {
    pub end: Interval,
    pub sub: Interval,
    pub mid_top: Interval,
    pub mid_small: Option<Interval>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ExtCase {
    Indecomposable,
    TwoTerms,
}

/// Middle term of the basis extension between two intervals.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ExtShape {
    pub case: ExtCase,
    pub top: Interval,
    pub overlap: Option<Interval>,
}

pub fn build_algebra(shape: Shape, n: usize, kupisch: &[usize]) -> Result<AlgebraSpec> {
    if n == 0 {
        return Err(Error::InvalidAlgebra("an algebra needs at least one vertex".into()));
    }
    if kupisch.len() != n {
        return Err(Error::InvalidAlgebra(format!(
            "kupisch series has {} entries for {n} vertices",
            kupisch.len()
        )));
    }
    for (i, &l) in kupisch.iter().enumerate() {
        let vertex = i + 1;
        if l == 0 {
            return Err(Error::KupischViolation { vertex });
        }
        match shape {
            Shape::Linear => {
                if l > n - i {
                    return Err(Error::KupischViolation { vertex });
                }
                if i + 1 < n && kupisch[i + 1] + 1 < l {
                    return Err(Error::KupischViolation { vertex: vertex + 1 });
                }
            }
            Shape::Cyclic => {
                if kupisch[(i + 1) % n] + 1 < l {
                    return Err(Error::KupischViolation {
                        vertex: (i + 1) % n + 1,
                    });
                }
                if l > n {
                    return Err(Error::WindingUnsupported { vertex, len: l, n });
                }
            }
        }
    }
    Ok(AlgebraSpec {
        shape,
        kupisch: kupisch.to_vec(),
    })
}

impl AlgebraSpec {
    pub fn shape(&self) -> Shape {
        self.shape
    }

    pub fn n(&self) -> usize {
        self.kupisch.len()
    }

    pub fn kupisch(&self) -> &[usize] {
        &self.kupisch
    }

    /// Length of the indecomposable projective at vertex `c` (1-based).
    pub fn projective_len(&self, c: usize) -> usize {
        self.kupisch[c - 1]
    }

    /// Hereditary linear `A_n`.
    pub fn a_n(n: usize) -> Self {
        let k: Vec<usize> = (1..=n).rev().collect();
        build_algebra(Shape::Linear, n, &k).expect("A_n is a valid Nakayama algebra")
    }

    pub fn is_valid(&self, m: Interval) -> bool {
        (1..=self.n()).contains(&m.c) && m.len >= 1 && m.len <= self.projective_len(m.c)
    }

    pub fn check(&self, m: Interval) -> Result<Interval> {
        if self.is_valid(m) {
            Ok(m)
        } else {
            Err(Error::InvalidInterval(m))
        }
    }

    pub fn is_projective(&self, m: Interval) -> bool {
        m.len == self.projective_len(m.c)
    }

    /// Vertex `c + k`, wrapped for cyclic quivers. Linear callers only ask for
    /// vertices inside the quiver.
    pub fn shift(&self, c: usize, k: usize) -> usize {
        (c - 1 + k) % self.n() + 1
    }

    pub fn socle(&self, m: Interval) -> usize {
        self.shift(m.c, m.len - 1)
    }

    /// The offset `a − b` of vertex `a` past vertex `b`: taken mod n for cyclic
    /// quivers, `None` when negative on a linear one.
    fn offset(&self, a: usize, b: usize) -> Option<usize> {
        match self.shape {
            Shape::Linear => a.checked_sub(b),
            Shape::Cyclic => Some((a + self.n() - b) % self.n()),
        }
    }

    /// Vertices visited by the interval from top to socle.
    pub fn support(&self, m: Interval) -> impl Iterator<Item = usize> + '_ {
        (0..m.len).map(move |k| self.shift(m.c, k))
    }

    /// Total number of indecomposables.
    pub fn num_indecomposables(&self) -> usize {
        self.kupisch.iter().sum()
    }
}

impl fmt::Display for AlgebraSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let shape = match self.shape {
            Shape::Linear => "linear",
            Shape::Cyclic => "cyclic",
        };
        let k: Vec<String> = self.kupisch.iter().map(|l| l.to_string()).collect();
        write!(f, "{shape}:{}", k.join(","))
    }
}

impl FromStr for AlgebraSpec {
    type Err = Error;

    /// Accepts `A<n>`, `linear:3,2,1` and `cyclic:2,2`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if let Some(n) = s.strip_prefix('A').or_else(|| s.strip_prefix('a')) {
            if let Ok(n) = n.parse::<usize>() {
                if n == 0 {
                    return Err(Error::InvalidAlgebra("A_0 has no vertices".into()));
                }
                return Ok(Self::a_n(n));
            }
        }
        let (shape, series) = s
            .split_once(':')
            .ok_or_else(|| Error::Config(format!("unknown algebra `{s}`")))?;
        let shape = match shape {
            "linear" => Shape::Linear,
            "cyclic" => Shape::Cyclic,
            other => return Err(Error::Config(format!("unknown quiver shape `{other}`"))),
        };
        let kupisch = series
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Config(format!("bad kupisch entry `{t}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        build_algebra(shape, kupisch.len(), &kupisch)
    }
}

/// Every admissible Kupisch series of a linear quiver with `n` vertices,
/// in lexicographic order.
pub fn linear_algebras(n: usize) -> Vec<AlgebraSpec> {
    fn rec(n: usize, i: usize, cur: &mut Vec<usize>, out: &mut Vec<AlgebraSpec>) {
        if i == n {
            if let Ok(a) = build_algebra(Shape::Linear, n, cur) {
                out.push(a);
            }
            return;
        }
        for l in 1..=(n - i) {
            if i > 0 && l + 1 < cur[i - 1] {
                continue;
            }
            cur.push(l);
            rec(n, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, 0, &mut Vec::new(), &mut out);
    out
}

pub fn indecomposables(alg: &AlgebraSpec) -> Vec<Interval> {
    (1..=alg.n())
        .flat_map(|c| (1..=alg.projective_len(c)).map(move |l| Interval::new(c, l)))
        .collect()
}

pub fn tau(alg: &AlgebraSpec, m: Interval) -> Result<Interval> {
    alg.check(m)?;
    if alg.is_projective(m) {
        return Err(Error::ProjectiveHasNoTau(m));
    }
    Ok(Interval::new(alg.shift(m.c, 1), m.len))
}

pub fn ar_sequence(alg: &AlgebraSpec, end: Interval) -> Result<ArSeq> {
    let sub = tau(alg, end)?;
    Ok(ArSeq {
        end,
        sub,
        mid_top: Interval::new(end.c, end.len + 1),
        mid_small: (end.len > 1).then(|| Interval::new(sub.c, end.len - 1)),
    })
}

pub fn ar_sequences(alg: &AlgebraSpec) -> Vec<ArSeq> {
    indecomposables(alg)
        .into_iter()
        .filter(|&m| !alg.is_projective(m))
        .map(|m| ar_sequence(alg, m).expect("non-projective has an AR sequence"))
        .collect()
}

pub fn hom_nonzero(alg: &AlgebraSpec, src: Interval, tgt: Interval) -> bool {
    match alg.offset(src.c, tgt.c) {
        Some(j) => j < tgt.len && tgt.len - j <= src.len,
        None => false,
    }
}

pub fn ext_shape(alg: &AlgebraSpec, sub: Interval, quot: Interval) -> Option<ExtShape> {
    let j = alg.offset(sub.c, quot.c)?;
    if j < 1 || j > quot.len || quot.len >= j + sub.len {
        return None;
    }
    let top = Interval::new(quot.c, j + sub.len);
    if !alg.is_valid(top) {
        return None;
    }
    if j == quot.len {
        Some(ExtShape {
            case: ExtCase::Indecomposable,
            top,
            overlap: None,
        })
    } else {
        Some(ExtShape {
            case: ExtCase::TwoTerms,
            top,
            overlap: Some(Interval::new(sub.c, quot.len - j)),
        })
    }
}

/// The submodule chain of `m` from `m` itself down to zero (`None`).
pub fn submodules_of(alg: &AlgebraSpec, m: Interval) -> Vec<Option<Interval>> {
    (0..=m.len)
        .map(|x| (x < m.len).then(|| Interval::new(alg.shift(m.c, x), m.len - x)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(c: usize, l: usize) -> Interval {
        Interval::new(c, l)
    }

    #[test]
    fn validation() {
        assert_eq!(
            indecomposables(&build_algebra(Shape::Linear, 2, &[2, 1]).unwrap()).len(),
            3
        );
        assert!(matches!(
            build_algebra(Shape::Linear, 2, &[1, 3]),
            Err(Error::KupischViolation { .. })
        ));
        assert!(matches!(
            build_algebra(Shape::Linear, 3, &[3, 1, 1]),
            Err(Error::KupischViolation { .. })
        ));
        assert!(matches!(
            build_algebra(Shape::Cyclic, 2, &[3, 2]),
            Err(Error::WindingUnsupported { .. })
        ));
        let c = build_algebra(Shape::Cyclic, 2, &[2, 2]).unwrap();
        assert_eq!(indecomposables(&c).len(), 4);
    }

    #[test]
    fn presets_parse() {
        assert_eq!("A3".parse::<AlgebraSpec>().unwrap(), AlgebraSpec::a_n(3));
        assert_eq!("linear:3,2,1".parse::<AlgebraSpec>().unwrap(), AlgebraSpec::a_n(3));
        assert_eq!("cyclic:2,2".parse::<AlgebraSpec>().unwrap().n(), 2);
        assert!("cyclic:3,3".parse::<AlgebraSpec>().is_err());
        assert_eq!("(2,1)".parse::<Interval>().unwrap(), iv(2, 1));
    }

    #[test]
    fn linear_algebra_counts() {
        // 1, 1, 2, 5, 14: Catalan numbers count linear Kupisch series.
        let counts: Vec<usize> = (1..=5).map(|n| linear_algebras(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 5, 14, 42]);
    }

    #[test]
    fn a3_orders_and_tau() {
        let a3 = AlgebraSpec::a_n(3);
        assert_eq!(
            indecomposables(&a3),
            vec![iv(1, 1), iv(1, 2), iv(1, 3), iv(2, 1), iv(2, 2), iv(3, 1)]
        );
        assert_eq!(tau(&a3, iv(1, 2)).unwrap(), iv(2, 2));
        assert!(matches!(tau(&a3, iv(1, 3)), Err(Error::ProjectiveHasNoTau(_))));
        let ends: Vec<Interval> = ar_sequences(&a3).iter().map(|s| s.end).collect();
        assert_eq!(ends, vec![iv(1, 1), iv(1, 2), iv(2, 1)]);
        let a2 = AlgebraSpec::a_n(2);
        assert_eq!(tau(&a2, iv(1, 1)).unwrap(), iv(2, 1));
    }

    #[test]
    fn hom_and_ext_examples() {
        let a3 = AlgebraSpec::a_n(3);
        assert!(hom_nonzero(&a3, iv(2, 2), iv(2, 1)));
        assert!(!hom_nonzero(&a3, iv(1, 2), iv(2, 1)));
        assert_eq!(
            ext_shape(&a3, iv(3, 1), iv(1, 2)),
            Some(ExtShape {
                case: ExtCase::Indecomposable,
                top: iv(1, 3),
                overlap: None
            })
        );
        assert_eq!(
            ext_shape(&a3, iv(2, 2), iv(1, 2)),
            Some(ExtShape {
                case: ExtCase::TwoTerms,
                top: iv(1, 3),
                overlap: Some(iv(2, 1))
            })
        );
        assert_eq!(ext_shape(&a3, iv(1, 2), iv(2, 2)), None);
    }

    #[test]
    fn submodule_chains() {
        let a3 = AlgebraSpec::a_n(3);
        assert_eq!(
            submodules_of(&a3, iv(1, 3)),
            vec![Some(iv(1, 3)), Some(iv(2, 2)), Some(iv(3, 1)), None]
        );
        let c = build_algebra(Shape::Cyclic, 2, &[2, 2]).unwrap();
        assert_eq!(submodules_of(&c, iv(1, 2)), vec![Some(iv(1, 2)), Some(iv(2, 1)), None]);
    }

    #[test]
    fn ar_sequences_are_extensions() {
        for n in 1..=5 {
            for alg in linear_algebras(n) {
                for s in ar_sequences(&alg) {
                    let e = ext_shape(&alg, s.sub, s.end).expect("AR sequence is nonsplit");
                    assert_eq!(e.top, s.mid_top);
                    assert_eq!(e.overlap, s.mid_small);
                    assert_eq!(s.sub.len + s.end.len, s.mid_top.len + s.mid_small.map_or(0, |m| m.len));
                }
                for m in indecomposables(&alg) {
                    for q in indecomposables(&alg).into_iter().filter(|&q| alg.is_projective(q)) {
                        assert!(ext_shape(&alg, m, q).is_none());
                    }
                    for i in 1..=n {
                        let s = iv(i, 1);
                        assert_eq!(hom_nonzero(&alg, s, m), alg.socle(m) == i);
                        assert_eq!(hom_nonzero(&alg, m, s), m.c == i);
                    }
                }
            }
        }
    }
}
