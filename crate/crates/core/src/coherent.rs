//! Coherent tilings and subdivisions induced by weight vectors, the exact
//! coherence test with infeasibility certificates, and explicit witness weights.
//!
//! Sign convention: for a tile `[X,Y]` selected by `w` there is an affine `h`
//! with `w_i < h(a_i)` on `X`, `w_i = h(a_i)` on `Y\X` and `w_i > h(a_i)` off `Y`.

use std::collections::BTreeSet;
use std::fmt;

use rand::Rng;

use crate::error::{HypersubError, Result};
use crate::exactgeom::labels::{full_set, is_subset, labels_of, subsets_of_size};
use crate::exactgeom::linalg::{dot, solve, Matrix};
use crate::exactgeom::lp::{LinearProgram, LpOutcome, Sense};
use crate::exactgeom::{LabelSet, PointConfiguration, Rational};
use crate::tiles::{
    slice, validate_subdivision, HypersimplicialSubdivision, Separation, SeparationOracle, Tile,
    ZonotopalTiling,
};

/// Heights `w_1..w_n`, indexed by `label - 1`.
pub type WeightVector = Vec<Rational>;

fn check_weights(cfg: &PointConfiguration, w: &[Rational]) -> Result<()> {
    if w.len() != cfg.n() {
        return Err(HypersubError::InvalidConfig(format!(
            "weight vector has {} entries, configuration has {} points",
            w.len(),
            cfg.n()
        )));
    }
    Ok(())
}

pub fn weights_from_ints(w: &[i64]) -> WeightVector {
    w.iter().map(|&x| Rational::from_int(x)).collect()
}

/// Parses `1,0,-1/2,...`.
pub fn parse_weights(s: &str) -> Result<WeightVector> {
    s.split(',')
        .map(|p| {
            p.trim()
                .parse::<Rational>()
                .map_err(|e| HypersubError::Parse(e.to_string()))
        })
        .collect()
}

pub fn format_weights(w: &[Rational]) -> String {
    w.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// Lifted coordinates `(a_i, 1)` as the rows of a matrix, restricted to `labels`.
fn lifted_rows(cfg: &PointConfiguration, labels: &[usize]) -> Matrix {
    labels.iter().map(|&l| cfg.lifted(l)).collect()
}

/// The coherent zonotopal tiling `S(Z(A), w)`, as its maximal tiles.
pub fn coherent_tiling(cfg: &PointConfiguration, w: &[Rational]) -> Result<ZonotopalTiling> {
    check_weights(cfg, w)?;
    let n = cfg.n();
    let mut tiles: BTreeSet<Tile> = BTreeSet::new();
    for b in subsets_of_size(cfg.all(), cfg.dim + 1) {
        if tiles.iter().any(|t| is_subset(b, t.free())) {
            continue;
        }
        let ls = labels_of(b);
        let rows = lifted_rows(cfg, &ls);
        let rhs: Vec<Rational> = ls.iter().map(|&l| w[l - 1].clone()).collect();
        let Some(u) = solve(&rows, &rhs) else { continue };
        let (mut x, mut y) = (0u64, 0u64);
        for i in 1..=n {
            let h = dot(&u, &cfg.lifted(i));
            match w[i - 1].cmp(&h) {
                std::cmp::Ordering::Less => {
                    x |= 1 << (i - 1);
                    y |= 1 << (i - 1);
                }
                std::cmp::Ordering::Equal => y |= 1 << (i - 1),
                std::cmp::Ordering::Greater => {}
            }
        }
        tiles.insert(Tile { x, y });
    }
    Ok(ZonotopalTiling::new(tiles))
}

/// `S(A^(k), w)`, the slice of the coherent tiling.
pub fn coherent_subdivision(cfg: &PointConfiguration, k: usize, w: &[Rational]) -> Result<HypersimplicialSubdivision> {
    crate::tiles::check_level(cfg.n(), k)?;
    slice(&coherent_tiling(cfg, w)?, cfg.n(), k)
}

/// The regular subdivision of `A` induced by `w`.
pub fn regular_subdivision(cfg: &PointConfiguration, w: &[Rational]) -> Result<HypersimplicialSubdivision> {
    coherent_subdivision(cfg, 1, w)
}

/// Weight selecting `t`: `-1` on `X`, `0` on `Y\X`, `+1` off `Y`.
pub fn tile_selector_weight(cfg: &PointConfiguration, t: &Tile) -> Result<WeightVector> {
    cfg.check_set(t.y)?;
    Ok((1..=cfg.n())
        .map(|i| {
            let b = 1u64 << (i - 1);
            if t.x & b != 0 {
                Rational::from_int(-1)
            } else if t.y & b != 0 {
                Rational::zero()
            } else {
                Rational::one()
            }
        })
        .collect())
}

/// Rejection-samples integer weights in `[-10^6, 10^6]` until the coherent
/// tiling is fine.
pub fn sample_generic_weight<R: Rng>(cfg: &PointConfiguration, rng: &mut R) -> WeightVector {
    loop {
        let w: WeightVector = (0..cfg.n())
            .map(|_| Rational::from_int(rng.gen_range(-1_000_000..=1_000_000)))
            .collect();
        if coherent_tiling(cfg, &w).map(|t| t.is_fine(cfg)).unwrap_or(false) {
            return w;
        }
    }
}

/// Cell `t` of `S(Z(A), w)` (possibly lower-dimensional): some affine `h`
/// puts `X` strictly above `w`, `Y\X` on it and the rest strictly below.
pub fn is_cell_of_weight(cfg: &PointConfiguration, w: &[Rational], t: &Tile) -> Result<bool> {
    check_weights(cfg, w)?;
    cfg.check_set(t.y)?;
    Ok(joint_cells_lp(cfg, &[(t.x, t.free())], Some(w)).is_some())
}

/// Whether `c` is a (possibly lower-dimensional) cell of the regular
/// subdivision `S(A, w)`.
pub fn is_regular_cell(cfg: &PointConfiguration, w: &[Rational], c: LabelSet) -> Result<bool> {
    is_cell_of_weight(cfg, w, &Tile { x: 0, y: c })
}

/// Joint LP over `w` and one affine `h` per constraint `(below, on)`: `w < h` on
/// `below`, `w = h` on `on`, `w > h` elsewhere. Strict rows share a slack
/// `t <= 1` that is maximized; returns `w` when `t > 0`. With `fixed`, `w` is
/// pinned to the given values.
pub fn joint_cells_lp(
    cfg: &PointConfiguration,
    specs: &[(LabelSet, LabelSet)],
    fixed: Option<&[Rational]>,
) -> Option<WeightVector> {
    let n = cfg.n();
    let d1 = cfg.dim + 1;
    let nv = n + d1 * specs.len() + 1;
    let ti = nv - 1;
    let mut lp = LinearProgram::new(nv);
    lp.objective[ti] = Rational::one();
    if let Some(w) = fixed {
        for (i, wi) in w.iter().enumerate() {
            let mut r = vec![Rational::zero(); nv];
            r[i] = Rational::one();
            lp.add(r, Sense::Eq, wi.clone());
        }
    }
    for (s, &(below, on)) in specs.iter().enumerate() {
        let h0 = n + d1 * s;
        for i in 1..=n {
            let b = 1u64 << (i - 1);
            // row = h(a_i) - w_i
            let mut r = vec![Rational::zero(); nv];
            for (j, x) in cfg.lifted(i).into_iter().enumerate() {
                r[h0 + j] = x;
            }
            r[i - 1] = Rational::from_int(-1);
            if on & b != 0 {
                lp.add(r, Sense::Eq, Rational::zero());
            } else {
                if below & b == 0 {
                    r = r.into_iter().map(|v| -v).collect();
                }
                r[ti] = Rational::from_int(-1);
                lp.add(r, Sense::Ge, Rational::zero());
            }
        }
    }
    let mut bound = vec![Rational::zero(); nv];
    bound[ti] = Rational::one();
    lp.add(bound, Sense::Le, Rational::one());
    match lp.solve() {
        LpOutcome::Optimal { x, value } if value.is_positive() || value.is_zero() && !has_strict(n, specs) => {
            Some(x[..n].to_vec())
        }
        _ => None,
    }
}

fn has_strict(n: usize, specs: &[(LabelSet, LabelSet)]) -> bool {
    specs.iter().any(|&(_, on)| on != full_set(n))
}

/// One linear condition on `w` contributed by a full cell: `form·w > 0`
/// when `strict`, `form·w = 0` otherwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoherenceRow {
    pub cell: Tile,
    pub label: usize,
    pub form: Vec<Rational>,
    pub strict: bool,
}

impl fmt::Display for CoherenceRow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, c) in self.form.iter().enumerate() {
            if !c.is_zero() {
                terms.push(format!("{}*w{}", c, i + 1));
            }
        }
        let body = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
        write!(
            f,
            "{} {} 0   (cell {}, label {})",
            body,
            if self.strict { ">" } else { "=" },
            self.cell,
            self.label
        )
    }
}

/// Conditions on `w` for the full-dimensional tile `t` to be selected, with
/// `h` eliminated through an affine basis `β ⊆ Y\X`:
/// `h(a_j) = Σ_b λ_{jb} w_b` where `ã_j = Σ_b λ_{jb} ã_b`.
pub fn cell_rows(cfg: &PointConfiguration, t: &Tile) -> Result<Vec<CoherenceRow>> {
    let n = cfg.n();
    let mut basis: Vec<usize> = Vec::new();
    for l in labels_of(t.free()) {
        let mut cand = basis.clone();
        cand.push(l);
        if cfg.lifted_rank(cand.iter().fold(0, |m, &i| m | 1 << (i - 1))) == cand.len() {
            basis = cand;
        }
    }
    if basis.len() != cfg.dim + 1 {
        return Err(HypersubError::InvalidTile(format!("{t} is not full-dimensional")));
    }
    // columns ã_b for b in basis
    let cols = lifted_rows(cfg, &basis);
    let m: Matrix = (0..=cfg.dim)
        .map(|r| cols.iter().map(|c| c[r].clone()).collect())
        .collect();
    let mut out = Vec::new();
    for j in 1..=n {
        if basis.contains(&j) {
            continue;
        }
        let lam = solve(&m, &cfg.lifted(j)).ok_or_else(|| HypersubError::Internal("singular basis".into()))?;
        // form = h(a_j) - w_j
        let mut form = vec![Rational::zero(); n];
        for (b, l) in basis.iter().zip(lam) {
            form[b - 1] = l;
        }
        form[j - 1] = Rational::from_int(-1);
        let bit = 1u64 << (j - 1);
        let strict = t.free() & bit == 0;
        if t.y & bit == 0 {
            form = form.into_iter().map(|v| -v).collect();
        }
        out.push(CoherenceRow {
            cell: *t,
            label: j,
            form,
            strict,
        });
    }
    Ok(out)
}

/// A nonnegative combination of strict rows plus any combination of
/// equality rows that vanishes identically: `0 > 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub terms: Vec<(Rational, CoherenceRow)>,
}

impl Certificate {
    /// Exact check of the certificate.
    pub fn verify(&self, n: usize) -> bool {
        let mut sum = vec![Rational::zero(); n];
        let mut strict_mass = Rational::zero();
        for (y, row) in &self.terms {
            if row.strict {
                if y.is_negative() {
                    return false;
                }
                strict_mass += y;
            }
            if row.form.len() != n {
                return false;
            }
            for (s, f) in sum.iter_mut().zip(&row.form) {
                *s += &(y * f);
            }
        }
        strict_mass.is_positive() && sum.iter().all(|s| s.is_zero())
    }

    /// Cells whose rows appear with nonzero multiplier.
    pub fn cells(&self) -> BTreeSet<Tile> {
        self.terms.iter().map(|(_, r)| r.cell).collect()
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (y, row) in &self.terms {
            writeln!(f, "  {y} x [{row}]")?;
        }
        write!(f, "  sum: 0 > 0")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Coherence {
    Coherent(WeightVector),
    Incoherent(Certificate),
}

impl Coherence {
    pub fn is_coherent(&self) -> bool {
        matches!(self, Coherence::Coherent(_))
    }
}

fn rows_lp(n: usize, rows: &[CoherenceRow], extra: Option<&[Rational]>) -> LpOutcome {
    let nv = n + 1;
    let mut lp = LinearProgram::new(nv);
    lp.objective[n] = Rational::one();
    for r in rows {
        let mut c = r.form.clone();
        if r.strict {
            c.push(Rational::from_int(-1));
            lp.add(c, Sense::Ge, Rational::zero());
        } else {
            c.push(Rational::zero());
            lp.add(c, Sense::Eq, Rational::zero());
        }
    }
    if let Some(g) = extra {
        let mut c: Vec<Rational> = g.iter().map(|v| -v).collect();
        c.push(Rational::zero());
        lp.add(c, Sense::Ge, Rational::zero());
    }
    let mut bound = vec![Rational::zero(); nv];
    bound[n] = Rational::one();
    lp.add(bound, Sense::Le, Rational::one());
    lp.solve()
}

fn farkas(n: usize, rows: &[CoherenceRow]) -> Result<Certificate> {
    let m = rows.len();
    let mut lp = LinearProgram::new(m);
    for (i, r) in rows.iter().enumerate() {
        lp.free[i] = !r.strict;
    }
    for i in 0..n {
        let c: Vec<Rational> = rows.iter().map(|r| r.form[i].clone()).collect();
        lp.add(c, Sense::Eq, Rational::zero());
    }
    let norm: Vec<Rational> = rows
        .iter()
        .map(|r| if r.strict { Rational::one() } else { Rational::zero() })
        .collect();
    lp.add(norm, Sense::Eq, Rational::one());
    match lp.solve() {
        LpOutcome::Optimal { x, .. } => {
            let terms = x
                .into_iter()
                .zip(rows)
                .filter(|(y, _)| !y.is_zero())
                .map(|(y, r)| (y, r.clone()))
                .collect();
            let cert = Certificate { terms };
            if cert.verify(n) {
                Ok(cert)
            } else {
                Err(HypersubError::Internal("invalid infeasibility certificate".into()))
            }
        }
        _ => Err(HypersubError::Internal(
            "coherence LP has zero slack but no certificate".into(),
        )),
    }
}

/// Coherence of a family of full-dimensional tiles: a `w` selecting all of
/// them, or a certificate that none exists. No validity check is made.
pub fn coherence_of_tiles(cfg: &PointConfiguration, tiles: &[Tile]) -> Result<Coherence> {
    let n = cfg.n();
    let mut rows = Vec::new();
    for t in tiles {
        rows.extend(cell_rows(cfg, t)?);
    }
    if !rows.iter().any(|r| r.strict) {
        // every tile is [∅,[n]]: any affine w
        return Ok(Coherence::Coherent(vec![Rational::zero(); n]));
    }
    match rows_lp(n, &rows, None) {
        LpOutcome::Optimal { x, value } if value.is_positive() => Ok(Coherence::Coherent(x[..n].to_vec())),
        LpOutcome::Optimal { .. } => Ok(Coherence::Incoherent(farkas(n, &rows)?)),
        _ => Err(HypersubError::Internal("coherence LP not optimal".into())),
    }
}

/// Whether the conditions of the given full tiles force `form·w > 0`.
pub fn tiles_imply(cfg: &PointConfiguration, tiles: &[Tile], form: &[Rational]) -> Result<bool> {
    let mut rows = Vec::new();
    for t in tiles {
        rows.extend(cell_rows(cfg, t)?);
    }
    Ok(match rows_lp(cfg.n(), &rows, Some(form)) {
        LpOutcome::Optimal { value, .. } => !value.is_positive(),
        _ => true,
    })
}

/// Tile `[X,Y]` whose level-`k` slice is the given cell: meet and join of its
/// level vertices.
pub fn normalize_cell(t: &Tile, k: usize) -> Tile {
    let v = t.level_vertices(k);
    Tile {
        x: v.iter().fold(t.y, |m, &b| m & b),
        y: v.iter().fold(0, |m, &b| m | b),
    }
}

/// Coherence of a validated hypersimplicial subdivision.
pub fn is_coherent(cfg: &PointConfiguration, sub: &HypersimplicialSubdivision) -> Result<Coherence> {
    let bad = validate_subdivision(cfg, sub.k, &sub.cells)?;
    if let Some(v) = bad.first() {
        return Err(HypersubError::InvalidSubdivision(v.to_string()));
    }
    let cells: Vec<Tile> = sub
        .maximal_cells(cfg)
        .iter()
        .map(|t| normalize_cell(t, sub.k))
        .collect();
    let res = coherence_of_tiles(cfg, &cells)?;
    if let Coherence::Coherent(w) = &res {
        if !coherent_subdivision(cfg, sub.k, w)?.same_as(&sub.normalized(cfg), cfg) {
            return Err(HypersubError::Internal(format!(
                "witness {} does not reproduce the subdivision",
                format_weights(w)
            )));
        }
    }
    Ok(res)
}

/// Coherence of a zonotopal tiling given by its maximal tiles.
pub fn is_coherent_tiling(cfg: &PointConfiguration, tiling: &ZonotopalTiling) -> Result<Coherence> {
    let bad = crate::tiles::validate_tiling(cfg, &tiling.tiles)?;
    if let Some(v) = bad.first() {
        return Err(HypersubError::InvalidSubdivision(v.to_string()));
    }
    let full: Vec<Tile> = tiling
        .tiles
        .iter()
        .copied()
        .filter(|t| cfg.is_spanning(t.free()))
        .collect();
    let res = coherence_of_tiles(cfg, &full)?;
    if let Coherence::Coherent(w) = &res {
        let got = coherent_tiling(cfg, w)?;
        if full.iter().any(|t| !got.contains(t)) {
            return Err(HypersubError::Internal(format!(
                "witness {} does not reproduce the tiling",
                format_weights(w)
            )));
        }
    }
    Ok(res)
}

fn separating_values(cfg: &PointConfiguration, t1: &Tile, t2: &Tile) -> Result<(Vec<Rational>, Rational)> {
    match SeparationOracle::new(cfg).tiles_separated(cfg, t1, t2)? {
        Separation::NotSeparated { circuit } => Err(HypersubError::NotSeparated(circuit)),
        Separation::Separated { functional, .. } => {
            let v: Vec<Rational> = cfg.points.iter().map(|p| functional.eval(p)).collect();
            let max = v.iter().map(|x| x.abs()).max().unwrap_or_else(Rational::zero);
            let big = Rational::one() + Rational::from_int(2) * max;
            Ok((v, big))
        }
    }
}

/// Weight whose coherent tiling uses both tiles, built from a separating
/// covector `v` with `N = 1 + 2·max|v·ã_i|`.
pub fn separation_witness_w(cfg: &PointConfiguration, t1: &Tile, t2: &Tile) -> Result<WeightVector> {
    let (v, big) = separating_values(cfg, t1, t2)?;
    let two = Rational::from_int(2);
    Ok((1..=cfg.n())
        .map(|i| {
            let b = 1u64 << (i - 1);
            let vi = &v[i - 1];
            let row = if t1.x & b != 0 { 0 } else if t1.y & b != 0 { 1 } else { 2 };
            let col = if t2.x & b != 0 { 0 } else if t2.y & b != 0 { 1 } else { 2 };
            match (row, col) {
                (0, 0) => -big.clone(),
                (0, 1) | (2, 1) => -(&two * vi),
                (0, 2) | (2, 0) => -vi.clone(),
                (1, _) => Rational::zero(),
                _ => big.clone(),
            }
        })
        .collect())
}

/// Weight whose regular subdivision has `Y1\X2` and `Y2\X1` as cells, built
/// from the same covector.
pub fn cells_witness_w(cfg: &PointConfiguration, t1: &Tile, t2: &Tile) -> Result<WeightVector> {
    let (v, big) = separating_values(cfg, t1, t2)?;
    Ok((1..=cfg.n())
        .map(|i| {
            let b = 1u64 << (i - 1);
            let vi = &v[i - 1];
            let row = if t1.x & b != 0 { 0 } else if t1.y & b != 0 { 1 } else { 2 };
            let col = if t2.x & b != 0 { 0 } else if t2.y & b != 0 { 1 } else { 2 };
            match (row, col) {
                (0, 0) | (2, 2) => big.clone(),
                (1, 0) | (2, 0) | (2, 1) => -vi.clone(),
                _ => Rational::zero(),
            }
        })
        .collect())
}

/// Whether some coherent tiling uses both tiles (joint LP over `w`, `h1`, `h2`).
pub fn coherent_tiling_with_both(cfg: &PointConfiguration, t1: &Tile, t2: &Tile) -> Option<WeightVector> {
    joint_cells_lp(cfg, &[(t1.x, t1.free()), (t2.x, t2.free())], None)
}

/// Whether some coherent subdivision of `A` has `Y1\X2` and `Y2\X1` as cells.
pub fn coherent_subdivision_with_cells(cfg: &PointConfiguration, t1: &Tile, t2: &Tile) -> Option<WeightVector> {
    joint_cells_lp(cfg, &[(0, t1.y & !t2.x), (0, t2.y & !t1.x)], None)
}

/// Three evaluations of the separation theorem for a tile pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparationEvidence {
    /// Circuit scan.
    pub separated: bool,
    /// Joint LP for a coherent tiling with both tiles.
    pub coherent_tiling: bool,
    /// Joint LP for a coherent subdivision with both cells.
    pub coherent_cells: bool,
    /// Constructive weights re-validated, when separated.
    pub witnesses_ok: Option<bool>,
}

impl SeparationEvidence {
    pub fn consistent(&self) -> bool {
        self.separated == self.coherent_tiling
            && self.separated == self.coherent_cells
            && self.witnesses_ok.unwrap_or(true)
    }
}

/// Whether a (possibly lower-dimensional) tile is a face of some tile of
/// the tiling.
pub fn tiling_has_cell(cfg: &PointConfiguration, tiling: &ZonotopalTiling, t: &Tile) -> bool {
    tiling.contains(t) || tiling.tiles.iter().any(|s| crate::tiles::tile_is_face_of(cfg, t, s))
}

pub fn separation_evidence(cfg: &PointConfiguration, oracle: &SeparationOracle, t1: &Tile, t2: &Tile) -> Result<SeparationEvidence> {
    let separated = oracle.separated(t1, t2);
    let coherent_tiling_lp = coherent_tiling_with_both(cfg, t1, t2).is_some();
    let coherent_cells = coherent_subdivision_with_cells(cfg, t1, t2).is_some();
    let witnesses_ok = if separated {
        let w3 = separation_witness_w(cfg, t1, t2)?;
        let tiling = coherent_tiling(cfg, &w3)?;
        let ok3 = tiling_has_cell(cfg, &tiling, t1) && tiling_has_cell(cfg, &tiling, t2);
        let w5 = cells_witness_w(cfg, t1, t2)?;
        let ok5 = is_regular_cell(cfg, &w5, t1.y & !t2.x)? && is_regular_cell(cfg, &w5, t2.y & !t1.x)?;
        Some(ok3 && ok5)
    } else {
        None
    };
    Ok(SeparationEvidence {
        separated,
        coherent_tiling: coherent_tiling_lp,
        coherent_cells,
        witnesses_ok,
    })
}
