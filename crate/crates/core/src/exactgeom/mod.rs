//! Exact geometry of labeled point configurations: orientations, circuits and
//! sign-constrained affine functionals.

pub mod hull;
pub mod labels;
pub mod linalg;
pub mod lp;
mod rational;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{HypersubError, Result};
pub use labels::LabelSet;
use labels::{card, fmt_set, full_set, labels_of, subsets_of_size};
use linalg::{det, dot, kernel, rank, Matrix};
use lp::{LinearProgram, LpOutcome, Sense};
pub use rational::{ParseRationalError, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    Neg,
    Zero,
    Pos,
}

impl Sign {
    pub fn of(r: &Rational) -> Sign {
        match r.signum() {
            -1 => Sign::Neg,
            0 => Sign::Zero,
            _ => Sign::Pos,
        }
    }

    pub fn negate(self) -> Sign {
        match self {
            Sign::Neg => Sign::Pos,
            Sign::Zero => Sign::Zero,
            Sign::Pos => Sign::Neg,
        }
    }

    pub fn symbol(self) -> char {
        match self {
            Sign::Neg => '-',
            Sign::Zero => '0',
            Sign::Pos => '+',
        }
    }
}

/// Sign requirement for one label in a covector search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignConstraint {
    Pos,
    Neg,
    Zero,
    Free,
}

/// A sign vector indexed by labels `1..=n` (stored 0-based).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignVector {
    pub signs: Vec<Sign>,
}

impl SignVector {
    pub fn negate(&self) -> SignVector {
        SignVector {
            signs: self.signs.iter().map(|s| s.negate()).collect(),
        }
    }

    pub fn get(&self, label: usize) -> Sign {
        self.signs[label - 1]
    }

    pub fn restrict(&self, set: LabelSet) -> Vec<(usize, Sign)> {
        labels_of(set)
            .into_iter()
            .map(|l| (l, self.signs[l - 1]))
            .collect()
    }

    pub fn set_with(&self, sign: Sign) -> LabelSet {
        self.signs
            .iter()
            .enumerate()
            .filter(|(_, s)| **s == sign)
            .fold(0, |m, (i, _)| m | 1 << i)
    }
}

impl fmt::Display for SignVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.signs {
            write!(f, "{}", s.symbol())?;
        }
        Ok(())
    }
}

/// A signed circuit, normalized so that the smallest label of the support is positive.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Circuit {
    pub positive: LabelSet,
    pub negative: LabelSet,
}

impl Circuit {
    pub fn normalized(positive: LabelSet, negative: LabelSet) -> Circuit {
        let support = positive | negative;
        let low = support & support.wrapping_neg();
        if positive & low != 0 {
            Circuit { positive, negative }
        } else {
            Circuit {
                positive: negative,
                negative: positive,
            }
        }
    }

    pub fn support(&self) -> LabelSet {
        self.positive | self.negative
    }

    pub fn negated(&self) -> (LabelSet, LabelSet) {
        (self.negative, self.positive)
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "+{}-{}", fmt_set(self.positive), fmt_set(self.negative))
    }
}

/// An affine functional `x -> phi·x + c`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineFunctional {
    pub phi: Vec<Rational>,
    pub c: Rational,
}

impl AffineFunctional {
    pub fn eval(&self, x: &[Rational]) -> Rational {
        dot(&self.phi, x) + &self.c
    }
}

/// Finds an affine functional on `points` (all of one dimension) meeting the
/// sign constraints, maximizing a common slack `t <= 1`; `None` when no strict
/// solution exists.
pub fn affine_witness(points: &[Vec<Rational>], cons: &[SignConstraint]) -> Option<AffineFunctional> {
    let dim = points.first().map_or(0, |p| p.len());
    let strict = cons
        .iter()
        .any(|c| matches!(c, SignConstraint::Pos | SignConstraint::Neg));
    if !strict {
        return Some(AffineFunctional {
            phi: vec![Rational::zero(); dim],
            c: Rational::zero(),
        });
    }
    // variables: phi (dim), c, t
    let nv = dim + 2;
    let mut lp = LinearProgram::new(nv);
    lp.objective[nv - 1] = Rational::one();
    for (p, con) in points.iter().zip(cons) {
        let mut row: Vec<Rational> = p.clone();
        row.push(Rational::one());
        row.push(Rational::zero());
        match con {
            SignConstraint::Free => continue,
            SignConstraint::Zero => lp.add(row, Sense::Eq, Rational::zero()),
            SignConstraint::Pos => {
                row[nv - 1] = Rational::from_int(-1);
                lp.add(row, Sense::Ge, Rational::zero());
            }
            SignConstraint::Neg => {
                let mut r: Vec<Rational> = row.into_iter().map(|v| -v).collect();
                r[nv - 1] = Rational::from_int(-1);
                lp.add(r, Sense::Ge, Rational::zero());
            }
        }
    }
    let mut bound = vec![Rational::zero(); nv];
    bound[nv - 1] = Rational::one();
    lp.add(bound, Sense::Le, Rational::one());
    match lp.solve() {
        LpOutcome::Optimal { x, value } if value.is_positive() => Some(AffineFunctional {
            phi: x[..dim].to_vec(),
            c: x[dim].clone(),
        }),
        _ => None,
    }
}

/// Checks that `f` satisfies `cons` on `points` exactly.
pub fn satisfies(points: &[Vec<Rational>], cons: &[SignConstraint], f: &AffineFunctional) -> bool {
    points.iter().zip(cons).all(|(p, c)| {
        let v = f.eval(p);
        match c {
            SignConstraint::Free => true,
            SignConstraint::Zero => v.is_zero(),
            SignConstraint::Pos => v.is_positive(),
            SignConstraint::Neg => v.is_negative(),
        }
    })
}

/// A labeled configuration of `n` points spanning `R^d` affinely.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointConfiguration {
    pub dim: usize,
    pub points: Vec<Vec<Rational>>,
}

impl PointConfiguration {
    pub fn new(dim: usize, points: Vec<Vec<Rational>>) -> Result<Self> {
        let cfg = PointConfiguration { dim, points };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn from_ints(dim: usize, pts: &[&[i64]]) -> Result<Self> {
        Self::new(
            dim,
            pts.iter()
                .map(|p| p.iter().map(|&x| Rational::from_int(x)).collect())
                .collect(),
        )
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.points.len();
        if n > labels::MAX_LABELS {
            return Err(HypersubError::InvalidConfig(format!(
                "at most {} points supported",
                labels::MAX_LABELS
            )));
        }
        if let Some(p) = self.points.iter().find(|p| p.len() != self.dim) {
            return Err(HypersubError::InvalidConfig(format!(
                "point of length {} in dimension {}",
                p.len(),
                self.dim
            )));
        }
        if n < self.dim + 1 {
            return Err(HypersubError::InvalidConfig(format!(
                "{n} points cannot span dimension {}",
                self.dim
            )));
        }
        let m: Matrix = (0..n).map(|i| self.lifted(i + 1)).collect();
        if rank(&m) != self.dim + 1 {
            return Err(HypersubError::InvalidConfig(
                "points do not affinely span the ambient space".into(),
            ));
        }
        Ok(())
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let cfg: PointConfiguration =
            serde_json::from_str(s).map_err(|e| HypersubError::Parse(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("configuration serializes")
    }

    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn all(&self) -> LabelSet {
        full_set(self.n())
    }

    pub fn point(&self, label: usize) -> &[Rational] {
        &self.points[label - 1]
    }

    /// `(a_i, 1)`.
    pub fn lifted(&self, label: usize) -> Vec<Rational> {
        let mut v = self.points[label - 1].clone();
        v.push(Rational::one());
        v
    }

    pub fn check_label(&self, label: usize) -> Result<()> {
        if label == 0 || label > self.n() {
            Err(HypersubError::LabelOutOfRange {
                label,
                n: self.n(),
            })
        } else {
            Ok(())
        }
    }

    pub fn check_set(&self, s: LabelSet) -> Result<()> {
        if s & !self.all() != 0 {
            let bad = labels_of(s & !self.all())[0];
            return Err(HypersubError::LabelOutOfRange {
                label: bad,
                n: self.n(),
            });
        }
        Ok(())
    }

    /// Sign of the determinant of the homogenized matrix with rows `(1, a_l)`.
    pub fn orientation(&self, labels: &[usize]) -> Result<Sign> {
        if labels.len() != self.dim + 1 {
            return Err(HypersubError::InvalidConfig(format!(
                "orientation needs {} labels",
                self.dim + 1
            )));
        }
        for &l in labels {
            self.check_label(l)?;
        }
        let m: Matrix = labels
            .iter()
            .map(|&l| {
                let mut r = vec![Rational::one()];
                r.extend(self.points[l - 1].iter().cloned());
                r
            })
            .collect();
        Ok(Sign::of(&det(&m)))
    }

    /// Absolute determinant of the lifted vectors of a `(d+1)`-subset.
    pub fn lifted_abs_det(&self, s: LabelSet) -> Rational {
        let m: Matrix = labels_of(s).iter().map(|&l| self.lifted(l)).collect();
        det(&m).abs()
    }

    /// Rank of the lifted vectors of `s` (affine dimension plus one).
    pub fn lifted_rank(&self, s: LabelSet) -> usize {
        if s == 0 {
            return 0;
        }
        let m: Matrix = labels_of(s).iter().map(|&l| self.lifted(l)).collect();
        rank(&m)
    }

    pub fn is_independent(&self, s: LabelSet) -> bool {
        self.lifted_rank(s) == card(s)
    }

    pub fn is_spanning(&self, s: LabelSet) -> bool {
        self.lifted_rank(s) == self.dim + 1
    }

    /// All signed circuits, normalized, sorted.
    pub fn circuits(&self) -> Vec<Circuit> {
        let mut out = Vec::new();
        for size in 2..=(self.dim + 2).min(self.n()) {
            for s in subsets_of_size(self.all(), size) {
                let ls = labels_of(s);
                // columns are lifted points; matrix rows are coordinates
                let rows: Matrix = (0..=self.dim)
                    .map(|r| ls.iter().map(|&l| self.lifted(l)[r].clone()).collect())
                    .collect();
                if rank(&rows) != size - 1 {
                    continue;
                }
                let k = kernel(&rows, size);
                if k.len() != 1 {
                    continue;
                }
                let v = &k[0];
                if v.iter().any(|x| x.is_zero()) {
                    continue;
                }
                let (mut p, mut q) = (0u64, 0u64);
                for (i, &l) in ls.iter().enumerate() {
                    if v[i].is_positive() {
                        p |= 1 << (l - 1);
                    } else {
                        q |= 1 << (l - 1);
                    }
                }
                out.push(Circuit::normalized(p, q));
            }
        }
        out.sort();
        out
    }

    /// Affine functional with prescribed signs on the labels; `None` if infeasible.
    pub fn covector_witness(&self, cons: &[SignConstraint]) -> Result<Option<AffineFunctional>> {
        if cons.len() != self.n() {
            return Err(HypersubError::InvalidConfig(format!(
                "expected {} sign constraints, got {}",
                self.n(),
                cons.len()
            )));
        }
        Ok(affine_witness(&self.points, cons))
    }

    /// The sign vector of an affine functional on the configuration.
    pub fn sign_vector(&self, f: &AffineFunctional) -> SignVector {
        SignVector {
            signs: self.points.iter().map(|p| Sign::of(&f.eval(p))).collect(),
        }
    }

    /// Restriction to the labels in `j`, relabeled `1..=|j|` in increasing order.
    pub fn restrict(&self, j: LabelSet) -> Result<PointConfiguration> {
        self.check_set(j)?;
        PointConfiguration::new(
            self.dim,
            labels_of(j).iter().map(|&l| self.points[l - 1].clone()).collect(),
        )
    }

    /// Level-`k` point `Σ_{i∈B} a_i`.
    pub fn level_point(&self, b: LabelSet) -> Vec<Rational> {
        let mut s = vec![Rational::zero(); self.dim];
        for l in labels_of(b) {
            for (x, y) in s.iter_mut().zip(&self.points[l - 1]) {
                *x += y;
            }
        }
        s
    }

    /// Point `Σ_{i∈B} (a_i, 1)` of the zonotope.
    pub fn zonotope_point(&self, b: LabelSet) -> Vec<Rational> {
        let mut p = self.level_point(b);
        p.push(Rational::from(card(b)));
        p
    }
}

/// Relabels a set of the restricted configuration `A_J` back to original labels.
pub fn lift_labels(j: LabelSet, s: LabelSet) -> LabelSet {
    let ls = labels_of(j);
    labels_of(s).iter().fold(0, |m, &i| m | 1 << (ls[i - 1] - 1))
}

/// Expresses an original-label set inside `A_J` (labels `1..=|J|`).
pub fn restrict_labels(j: LabelSet, s: LabelSet) -> LabelSet {
    let ls = labels_of(j);
    ls.iter()
        .enumerate()
        .filter(|(_, &l)| s >> (l - 1) & 1 == 1)
        .fold(0, |m, (i, _)| m | 1 << i)
}

#[cfg(test)]
mod tests {
    use super::labels::set_of;
    use super::*;

    fn triangle() -> PointConfiguration {
        PointConfiguration::from_ints(2, &[&[0, 0], &[1, 0], &[0, 1]]).unwrap()
    }

    #[test]
    fn orientation_basics() {
        let t = triangle();
        assert_eq!(t.orientation(&[1, 2, 3]).unwrap(), Sign::Pos);
        assert_eq!(t.orientation(&[2, 1, 3]).unwrap(), Sign::Neg);
        assert_eq!(t.orientation(&[1, 1, 3]).unwrap(), Sign::Zero);
        assert!(t.orientation(&[1, 2, 4]).is_err());
    }

    #[test]
    fn independent_points_have_no_circuits() {
        assert!(triangle().circuits().is_empty());
    }

    #[test]
    fn rejects_degenerate_configs() {
        assert!(PointConfiguration::from_ints(2, &[&[0, 0], &[1, 1], &[2, 2]]).is_err());
        assert!(PointConfiguration::from_ints(2, &[&[0, 0], &[1, 1]]).is_err());
    }

    #[test]
    fn witness_free_and_spanning_zero() {
        let t = triangle();
        let w = t.covector_witness(&[SignConstraint::Free; 3]).unwrap().unwrap();
        assert!(w.phi.iter().all(|x| x.is_zero()) && w.c.is_zero());
        let sq = PointConfiguration::from_ints(2, &[&[0, 0], &[1, 0], &[0, 1], &[1, 1]]).unwrap();
        let cons = [
            SignConstraint::Zero,
            SignConstraint::Zero,
            SignConstraint::Zero,
            SignConstraint::Pos,
        ];
        assert!(sq.covector_witness(&cons).unwrap().is_none());
    }

    #[test]
    fn label_relabeling() {
        let j = set_of(&[2, 4, 5]);
        assert_eq!(restrict_labels(j, set_of(&[4, 5, 1])), set_of(&[2, 3]));
        assert_eq!(lift_labels(j, set_of(&[2, 3])), set_of(&[4, 5]));
    }
}
