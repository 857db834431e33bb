//! Cyclic configurations and the non-separated constructions on them.

use crate::cli::fixtures::{planar5, planar5_hypertriangulation};
use crate::error::{HypersubError, Result};
use crate::exactgeom::labels::{all_subsets, card, full_set, labels_of, subsets_of_size};
use crate::exactgeom::{lift_labels, Circuit, PointConfiguration, Rational};
use crate::tiles::{
    check_level, complement, slice, tile_is_face_of, tiles_separated, validate_subdivision, HypersimplicialSubdivision,
    Separation, SeparationOracle, Tile, ZonotopalTiling,
};

/// Points `(t_i, t_i^2, ..., t_i^d)` on the moment curve, `t_i = i` by default.
pub fn cyclic(n: usize, d: usize, t: Option<&[Rational]>) -> Result<PointConfiguration> {
    if d == 0 || n <= d {
        return Err(HypersubError::InvalidConfig(format!("cyclic({n},{d}) needs n > d >= 1")));
    }
    let ts: Vec<Rational> = match t {
        Some(t) => t.to_vec(),
        None => (1..=n).map(Rational::from).collect(),
    };
    if ts.len() != n || ts.windows(2).any(|p| p[0] >= p[1]) {
        return Err(HypersubError::InvalidConfig(
            "curve parameters must be strictly increasing".into(),
        ));
    }
    let points = ts
        .iter()
        .map(|x| {
            let mut p = Vec::with_capacity(d);
            let mut acc = x.clone();
            for _ in 0..d {
                p.push(acc.clone());
                acc = &acc * x;
            }
            p
        })
        .collect();
    let cfg = PointConfiguration::new(d, points)?;
    for c in cfg.circuits() {
        let ls = labels_of(c.support());
        let alternating = ls.len() == d + 2
            && ls.windows(2).all(|p| {
                let a = c.positive >> (p[0] - 1) & 1;
                let b = c.positive >> (p[1] - 1) & 1;
                a != b
            });
        if !alternating {
            return Err(HypersubError::Internal(format!(
                "cyclic({n},{d}) has a non-alternating circuit {c} of size {}",
                card(c.support())
            )));
        }
    }
    Ok(cfg)
}

/// A subdivision with a certified pair of non-separated maximal cells.
#[derive(Debug, Clone)]
pub struct NonSeparatedExample {
    pub config: PointConfiguration,
    pub subdivision: HypersimplicialSubdivision,
    pub pair: (Tile, Tile),
    pub circuit: Circuit,
}

/// All pairs of maximal cells that are not separated, with a circuit each.
pub fn non_separated_pairs(cfg: &PointConfiguration, sub: &HypersimplicialSubdivision) -> Result<Vec<(Tile, Tile, Circuit)>> {
    let cells = sub.maximal_cells(cfg);
    let oracle = SeparationOracle::new(cfg);
    let mut out = Vec::new();
    for (i, a) in cells.iter().enumerate() {
        for b in &cells[i + 1..] {
            if let Separation::NotSeparated { circuit } = oracle.tiles_separated(cfg, a, b)? {
                out.push((*a, *b, circuit));
            }
        }
    }
    Ok(out)
}

fn certify(config: PointConfiguration, subdivision: HypersimplicialSubdivision, pair: (Tile, Tile)) -> Result<NonSeparatedExample> {
    let bad = validate_subdivision(&config, subdivision.k, &subdivision.cells)?;
    if let Some(v) = bad.first() {
        return Err(HypersubError::InvalidSubdivision(v.to_string()));
    }
    match tiles_separated(&config, &pair.0, &pair.1)? {
        Separation::NotSeparated { circuit } => Ok(NonSeparatedExample {
            config,
            subdivision,
            pair,
            circuit,
        }),
        Separation::Separated { .. } => Err(HypersubError::Internal(format!("{} and {} are separated", pair.0, pair.1))),
    }
}

/// Four points on a line at level 2: `{[1,123],[1,134],[4,124],[4,234]}`.
pub fn postnikov_example() -> Result<NonSeparatedExample> {
    let cfg = cyclic(4, 1, None)?;
    let sub = HypersimplicialSubdivision::new(
        2,
        [Tile::of(&[1], &[1, 2, 3]), Tile::of(&[1], &[1, 3, 4]), Tile::of(&[4], &[1, 2, 4]), Tile::of(&[4], &[2, 3, 4])],
    );
    certify(cfg, sub, (Tile::of(&[1], &[1, 2, 3]), Tile::of(&[4], &[2, 3, 4])))
}

/// Level-2 hypertriangulation of five planar points with `[2,2345]` and
/// `[4,1234]` not separated.
pub fn planar_example() -> Result<NonSeparatedExample> {
    certify(
        planar5(),
        planar5_hypertriangulation(),
        (Tile::of(&[2], &[2, 3, 4, 5]), Tile::of(&[4], &[1, 2, 3, 4])),
    )
}

/// Tile of the `n = d+3` notation: `a` and `b` are dropped from `[n]` unless
/// barred, barred labels go into `X`.
pub fn bar_tile(n: usize, a: usize, a_bar: bool, b: usize, b_bar: bool) -> Result<Tile> {
    if !(1 <= a && a < b && b <= n) {
        return Err(HypersubError::LabelOutOfRange { label: b.max(a), n });
    }
    let full = full_set(n);
    let (ba, bb) = (1u64 << (a - 1), 1u64 << (b - 1));
    let mut x = 0;
    let mut y = full & !ba & !bb;
    if a_bar {
        x |= ba;
        y |= ba;
    }
    if b_bar {
        x |= bb;
        y |= bb;
    }
    Ok(Tile { x, y })
}

fn n_for(d: usize) -> Result<usize> {
    if d % 2 == 0 || d == 0 {
        return Err(HypersubError::Unsupported(format!("the construction needs odd d, got {d}")));
    }
    Ok(d + 3)
}

/// The coherent fine tiling of `C(d+3, d)` built from label parities, `d` odd.
pub fn s0(d: usize) -> Result<ZonotopalTiling> {
    let n = n_for(d)?;
    let mut tiles = Vec::new();
    for a in 1..=n {
        for b in a + 1..=n {
            let (ao, bo) = (a % 2 == 1, b % 2 == 1);
            let t = match (ao, bo) {
                (true, true) => bar_tile(n, a, true, b, false),
                (true, false) => bar_tile(n, a, true, b, true),
                (false, true) => bar_tile(n, a, false, b, false),
                (false, false) => bar_tile(n, a, false, b, true),
            }?;
            tiles.push(t);
        }
    }
    Ok(ZonotopalTiling::new(tiles))
}

/// Removed and inserted tiles of one flip.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flip {
    pub remove: Vec<Tile>,
    pub insert: Vec<Tile>,
}

/// Flips at label 1 and at label `n = d+3`.
pub fn flips(d: usize) -> Result<(Flip, Flip)> {
    let n = n_for(d)?;
    let mut f1 = Flip {
        remove: Vec::new(),
        insert: Vec::new(),
    };
    for b in 2..=n {
        let odd = b % 2 == 1;
        f1.remove.push(bar_tile(n, 1, true, b, !odd)?);
        f1.insert.push(bar_tile(n, 1, true, b, odd)?);
    }
    let mut f2 = Flip {
        remove: Vec::new(),
        insert: Vec::new(),
    };
    for a in 1..n {
        let odd = a % 2 == 1;
        f2.remove.push(bar_tile(n, a, odd, n, true)?);
        f2.insert.push(bar_tile(n, a, !odd, n, true)?);
    }
    Ok((f1, f2))
}

/// Both flips applied to the level-`k` slice of [`s0`] on `C(d+3, d)`, `2 <= k <= d+1`.
pub fn flipped_slice(d: usize, k: usize) -> Result<NonSeparatedExample> {
    let n = n_for(d)?;
    if !(2..=d + 1).contains(&k) {
        return Err(HypersubError::LevelOutOfRange { k, n });
    }
    let cfg = cyclic(n, d, None)?;
    let base = slice(&s0(d)?, n, k)?;
    let mut cells: Vec<Tile> = base.covering_cells();
    let (f1, f2) = flips(d)?;
    for f in [&f1, &f2] {
        cells.retain(|t| !f.remove.contains(t));
        for t in &f.insert {
            if t.covers(k) && !cells.contains(t) {
                cells.push(*t);
            }
        }
    }
    let sub = HypersimplicialSubdivision::new(k, cells);
    let pair = (bar_tile(n, 1, true, 2, false)?, bar_tile(n, n - 1, false, n, true)?);
    certify(cfg, sub, pair)
}

/// Subdivisions of `A` at levels `k` and `k+1` extending a non-separated
/// level-`k` subdivision of `A \ i`.
#[derive(Debug, Clone)]
pub struct Propagated {
    pub lower: HypersimplicialSubdivision,
    pub upper: HypersimplicialSubdivision,
    /// A non-separated pair of `lower` and of `upper`; `None` when the input
    /// had no such pair.
    pub lower_pair: Option<(Tile, Tile, Circuit)>,
    pub upper_pair: Option<(Tile, Tile, Circuit)>,
}

/// Level-`k` extension: the lifted cells of `sub` plus the band `[X, Y ∪ i]`
/// over the faces `[X,Y]` of `Z(A \ i)` visible from `i`.
fn extend_level(cfg: &PointConfiguration, i: usize, sub: &HypersimplicialSubdivision) -> Result<HypersimplicialSubdivision> {
    let n = cfg.n();
    let bit = 1u64 << (i - 1);
    let j = full_set(n) & !bit;
    let k = sub.k;
    let oracle = SeparationOracle::new(cfg);
    let whole = Tile { x: 0, y: j };
    let mut cells: Vec<Tile> = sub
        .cells
        .iter()
        .map(|t| Tile {
            x: lift_labels(j, t.x),
            y: lift_labels(j, t.y),
        })
        .collect();
    for f in subsets_of_size(j, cfg.dim) {
        if !cfg.is_independent(f | bit) {
            continue;
        }
        for x in all_subsets(j & !f) {
            let t = Tile { x, y: x | f | bit };
            if t.covers(k) && oracle.separated(&t, &whole) && tile_is_face_of(cfg, &Tile { x, y: x | f }, &whole) {
                cells.push(t);
            }
        }
    }
    let out = HypersimplicialSubdivision::new(k, cells);
    let bad = validate_subdivision(cfg, k, &out.cells)?;
    if let Some(v) = bad.first() {
        return Err(HypersubError::Internal(format!("extension at level {k} is invalid: {v}")));
    }
    Ok(out)
}

fn check_general_position(cfg: &PointConfiguration) -> Result<()> {
    for f in subsets_of_size(cfg.all(), cfg.dim + 1) {
        if !cfg.is_independent(f) {
            return Err(HypersubError::InvalidConfig(format!(
                "points {} are not in general position",
                labels_of(f).iter().map(|l| l.to_string()).collect::<Vec<_>>().join(",")
            )));
        }
    }
    Ok(())
}

/// Extends a level-`k` subdivision of `A \ i` to `A` at levels `k` and `k+1`.
pub fn propagate(cfg: &PointConfiguration, i: usize, sub: &HypersimplicialSubdivision) -> Result<Propagated> {
    let n = cfg.n();
    if i == 0 || i > n {
        return Err(HypersubError::LabelOutOfRange { label: i, n });
    }
    check_general_position(cfg)?;
    let k = sub.k;
    check_level(n - 1, k)?;
    let j = full_set(n) & !(1u64 << (i - 1));
    let del = cfg.restrict(j)?;
    let bad = validate_subdivision(&del, k, &sub.cells)?;
    if let Some(v) = bad.first() {
        return Err(HypersubError::InvalidSubdivision(v.to_string()));
    }
    let separated = non_separated_pairs(&del, sub)?.is_empty();
    let lower = extend_level(cfg, i, sub)?;
    let upper = complement(&extend_level(cfg, i, &complement(sub, n - 1))?, n);
    let pair = |s: &HypersimplicialSubdivision| -> Result<Option<(Tile, Tile, Circuit)>> {
        if separated {
            return Ok(None);
        }
        Ok(non_separated_pairs(cfg, s)?.into_iter().next())
    };
    Ok(Propagated {
        lower_pair: pair(&lower)?,
        upper_pair: pair(&upper)?,
        lower,
        upper,
    })
}

/// Validates `sub` and certifies its first non-separated pair of maximal cells.
pub fn certify_example(config: PointConfiguration, subdivision: HypersimplicialSubdivision) -> Result<NonSeparatedExample> {
    let bad = validate_subdivision(&config, subdivision.k, &subdivision.cells)?;
    if let Some(v) = bad.first() {
        return Err(HypersubError::InvalidSubdivision(v.to_string()));
    }
    let pairs = non_separated_pairs(&config, &subdivision)?;
    let (a, b, _) = pairs
        .first()
        .ok_or_else(|| HypersubError::Internal("all maximal cells are separated".into()))?;
    certify(config, subdivision, (*a, *b))
}

/// Non-separated subdivisions of `cyclic(n, 1)` for `k = 2, ..., n-2`,
/// propagated from the four-point example by adding the last point.
pub fn propagate_chain(n: usize) -> Result<Vec<HypersimplicialSubdivision>> {
    if n < 4 {
        return Err(HypersubError::InvalidConfig(format!("the chain starts at n = 4, got {n}")));
    }
    let mut level = vec![postnikov_example()?.subdivision];
    for m in 5..=n {
        let cfg = cyclic(m, 1, None)?;
        let mut next: Vec<HypersimplicialSubdivision> = Vec::new();
        for s in &level {
            let p = propagate(&cfg, m, s)?;
            for t in [p.lower, p.upper] {
                if !next.iter().any(|x| x.k == t.k) {
                    next.push(t);
                }
            }
        }
        next.sort_by_key(|s| s.k);
        level = next;
    }
    Ok(level)
}
