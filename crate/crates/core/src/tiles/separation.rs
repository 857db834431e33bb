//! Separation of points and tiles via circuits, with covector witnesses.

use super::Tile;
use crate::error::{HypersubError, Result};
use crate::exactgeom::labels::{card, is_subset, labels_of};
use crate::exactgeom::linalg::{kernel, rank, Matrix};
use crate::exactgeom::lp::{LinearProgram, LpOutcome, Sense};
use crate::exactgeom::{
    satisfies, AffineFunctional, Circuit, LabelSet, PointConfiguration, Rational, SignConstraint,
    SignVector,
};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Separation {
    Separated {
        covector: SignVector,
        functional: AffineFunctional,
    },
    NotSeparated {
        circuit: Circuit,
    },
}

impl Separation {
    pub fn is_separated(&self) -> bool {
        matches!(self, Separation::Separated { .. })
    }
}

/// Circuits of a configuration, cached for repeated separation queries.
#[derive(Debug, Clone)]
pub struct SeparationOracle {
    pub n: usize,
    pub circuits: Vec<Circuit>,
}

fn forbidden(p: LabelSet, q: LabelSet, t1: &Tile, t2: &Tile) -> bool {
    let middle = (t1.y & t2.y) & !(t1.x | t2.x);
    is_subset(p, t1.y & !t2.x) && is_subset(q, t2.y & !t1.x) && !is_subset(p | q, middle)
}

/// Sign pattern a separating covector must have.
pub fn separation_constraints(n: usize, t1: &Tile, t2: &Tile) -> Vec<SignConstraint> {
    let pos = (t1.x & !t2.x) | (t1.y & !t2.y);
    let neg = (t2.x & !t1.x) | (t2.y & !t1.y);
    let zero = (t1.y & t2.y) & !(t1.x | t2.x);
    (0..n)
        .map(|i| {
            let b = 1u64 << i;
            if pos & b != 0 {
                SignConstraint::Pos
            } else if neg & b != 0 {
                SignConstraint::Neg
            } else if zero & b != 0 {
                SignConstraint::Zero
            } else {
                SignConstraint::Free
            }
        })
        .collect()
}

impl SeparationOracle {
    pub fn new(cfg: &PointConfiguration) -> Self {
        let mut circuits = cfg.circuits();
        // balanced circuits first, so certificates prefer crossing patterns
        circuits.sort_by_key(|c| {
            let (p, q) = (card(c.positive), card(c.negative));
            (p.abs_diff(q), c.support(), c.positive)
        });
        SeparationOracle { n: cfg.n(), circuits }
    }

    /// A circuit forbidden by the separation definition, oriented as found.
    pub fn forbidden_circuit(&self, t1: &Tile, t2: &Tile) -> Option<(LabelSet, LabelSet)> {
        for c in &self.circuits {
            for (p, q) in [(c.positive, c.negative), (c.negative, c.positive)] {
                if forbidden(p, q, t1, t2) {
                    return Some((p, q));
                }
            }
        }
        None
    }

    pub fn separated(&self, t1: &Tile, t2: &Tile) -> bool {
        self.forbidden_circuit(t1, t2).is_none()
    }

    pub fn points_separated(&self, b1: LabelSet, b2: LabelSet) -> bool {
        let (d1, d2) = (b1 & !b2, b2 & !b1);
        !self.circuits.iter().any(|c| {
            (is_subset(c.positive, d1) && is_subset(c.negative, d2))
                || (is_subset(c.negative, d1) && is_subset(c.positive, d2))
        })
    }

    pub fn tiles_separated(&self, cfg: &PointConfiguration, t1: &Tile, t2: &Tile) -> Result<Separation> {
        check_tile(cfg, t1)?;
        check_tile(cfg, t2)?;
        if let Some((p, q)) = self.forbidden_circuit(t1, t2) {
            return Ok(Separation::NotSeparated {
                circuit: Circuit::normalized(p, q),
            });
        }
        let cons = separation_constraints(cfg.n(), t1, t2);
        match cfg.covector_witness(&cons)? {
            Some(f) => Ok(Separation::Separated {
                covector: cfg.sign_vector(&f),
                functional: f,
            }),
            None => Err(HypersubError::Internal(format!(
                "no forbidden circuit for {t1} and {t2} but no separating covector"
            ))),
        }
    }
}

fn check_tile(cfg: &PointConfiguration, t: &Tile) -> Result<()> {
    cfg.check_set(t.y)?;
    if !is_subset(t.x, t.y) {
        return Err(HypersubError::InvalidTile(t.to_string()));
    }
    Ok(())
}

pub fn tiles_separated(cfg: &PointConfiguration, t1: &Tile, t2: &Tile) -> Result<Separation> {
    SeparationOracle::new(cfg).tiles_separated(cfg, t1, t2)
}

pub fn points_separated(cfg: &PointConfiguration, b1: LabelSet, b2: LabelSet) -> Result<bool> {
    cfg.check_set(b1 | b2)?;
    Ok(SeparationOracle::new(cfg).points_separated(b1, b2))
}

/// Checks a SEPARATED witness: the functional has the required signs.
pub fn verify_separated(cfg: &PointConfiguration, t1: &Tile, t2: &Tile, f: &AffineFunctional) -> bool {
    satisfies(&cfg.points, &separation_constraints(cfg.n(), t1, t2), f)
}

/// Whether `(p, q)` is a genuine signed circuit of `cfg`.
pub fn is_circuit(cfg: &PointConfiguration, p: LabelSet, q: LabelSet) -> bool {
    let support = p | q;
    if p & q != 0 || p == 0 || q == 0 {
        return false;
    }
    let ls = labels_of(support);
    let rows: Matrix = (0..=cfg.dim)
        .map(|r| ls.iter().map(|&l| cfg.lifted(l)[r].clone()).collect())
        .collect();
    if rank(&rows) != ls.len() - 1 {
        return false;
    }
    let k = kernel(&rows, ls.len());
    let v = &k[0];
    let sign_ok = |flip: bool| {
        ls.iter().enumerate().all(|(i, &l)| {
            let s = if flip { -v[i].signum() } else { v[i].signum() };
            let want = if p >> (l - 1) & 1 == 1 { 1 } else { -1 };
            s == want
        })
    };
    sign_ok(false) || sign_ok(true)
}

/// Checks a NOT_SEPARATED certificate: a genuine circuit in a forbidden position.
pub fn verify_not_separated(cfg: &PointConfiguration, t1: &Tile, t2: &Tile, c: &Circuit) -> bool {
    is_circuit(cfg, c.positive, c.negative)
        && (forbidden(c.positive, c.negative, t1, t2) || forbidden(c.negative, c.positive, t1, t2))
}

/// Geometric test that the zonotope images of two tiles meet in a common
/// labeled face (possibly empty).
pub fn tile_pair_meets_properly(cfg: &PointConfiguration, t1: &Tile, t2: &Tile) -> bool {
    let lo = t1.x | t2.x;
    let hi = t1.y & t2.y;
    if is_subset(lo, hi) {
        // shared vertex set [lo, hi] must be the minimizing face of t1 and the
        // maximizing face of t2 for some linear functional
        let cons = separation_constraints(cfg.n(), t1, t2);
        return crate::exactgeom::affine_witness(&cfg.points, &cons).is_some();
    }
    if card(t1.y) < card(t2.x) || card(t2.y) < card(t1.x) {
        return true;
    }
    strictly_separable(cfg, t1, t2)
}

/// LP: exists `h(z) = v·z + c` positive on all of `t1` and negative on all of `t2`.
fn strictly_separable(cfg: &PointConfiguration, t1: &Tile, t2: &Tile) -> bool {
    let d1 = cfg.dim + 1;
    let f1 = labels_of(t1.free());
    let f2 = labels_of(t2.free());
    // variables: v (d1), c, u (f1), s (f2), t
    let nv = d1 + 1 + f1.len() + f2.len() + 1;
    let ti = nv - 1;
    let mut lp = LinearProgram::new(nv);
    lp.objective[ti] = Rational::one();
    let vrow = |l: usize, scale: i64| -> Vec<Rational> {
        let mut r = vec![Rational::zero(); nv];
        for (j, x) in cfg.lifted(l).into_iter().enumerate() {
            r[j] = x * Rational::from_int(scale);
        }
        r
    };
    // min over t1: sum_{X1} v·ã + c + sum u >= t, u_i <= 0, u_i <= v·ã_i
    let mut row = vec![Rational::zero(); nv];
    for l in labels_of(t1.x) {
        for (j, x) in cfg.lifted(l).into_iter().enumerate() {
            row[j] += x;
        }
    }
    row[d1] = Rational::one();
    for (idx, &l) in f1.iter().enumerate() {
        let ui = d1 + 1 + idx;
        row[ui] = Rational::one();
        let mut a = vec![Rational::zero(); nv];
        a[ui] = Rational::one();
        lp.add(a, Sense::Le, Rational::zero());
        let mut b = vrow(l, -1);
        b[ui] = Rational::one();
        lp.add(b, Sense::Le, Rational::zero());
    }
    row[ti] = Rational::from_int(-1);
    lp.add(row, Sense::Ge, Rational::zero());
    // max over t2: sum_{X2} v·ã + c + sum s <= -t, s_i >= 0, s_i >= v·ã_i
    let mut row = vec![Rational::zero(); nv];
    for l in labels_of(t2.x) {
        for (j, x) in cfg.lifted(l).into_iter().enumerate() {
            row[j] += x;
        }
    }
    row[d1] = Rational::one();
    for (idx, &l) in f2.iter().enumerate() {
        let si = d1 + 1 + f1.len() + idx;
        row[si] = Rational::one();
        let mut a = vec![Rational::zero(); nv];
        a[si] = Rational::one();
        lp.add(a, Sense::Ge, Rational::zero());
        let mut b = vrow(l, -1);
        b[si] = Rational::one();
        lp.add(b, Sense::Ge, Rational::zero());
    }
    row[ti] = Rational::one();
    lp.add(row, Sense::Le, Rational::zero());
    let mut bound = vec![Rational::zero(); nv];
    bound[ti] = Rational::one();
    lp.add(bound, Sense::Le, Rational::one());
    matches!(lp.solve(), LpOutcome::Optimal { value, .. } if value.is_positive())
}
