//! Half-level subdivisions of convex polygons: the maps U and D, upper
//! holes, coarsest fibre elements and maximal common refinements.

use std::collections::BTreeSet;

use crate::error::{HypersubError, Result};
use crate::exactgeom::hull::facets;
use crate::exactgeom::labels::{card, fmt_set, labels_of, set_of, subsets_of_size};
use crate::exactgeom::{LabelSet, PointConfiguration};
use crate::tiles::{
    check_level, tile_is_face_of, validate_subdivision, validate_tiling, HypersimplicialSubdivision, SeparationOracle,
    Tile, ZonotopalTiling,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Plus,
    Minus,
}

/// Tiles `[X,Y]` with `|X| < k` and `|Y| > k+1`, sitting between levels `k` and `k+1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfLevelSubdivision {
    pub k: usize,
    pub tiles: Vec<Tile>,
}

impl HalfLevelSubdivision {
    pub fn new(k: usize, tiles: impl IntoIterator<Item = Tile>) -> Self {
        let set: BTreeSet<Tile> = tiles.into_iter().collect();
        HalfLevelSubdivision {
            k,
            tiles: set.into_iter().collect(),
        }
    }

    /// Every tile of `self` lies in a tile of `other`.
    pub fn refines(&self, other: &HalfLevelSubdivision) -> bool {
        self.tiles
            .iter()
            .all(|t| other.tiles.iter().any(|u| t.is_subtile_of(u)))
    }
}

/// Labels of a convex polygon in counterclockwise boundary order, starting at the smallest.
pub fn polygon_order(cfg: &PointConfiguration) -> Result<Vec<usize>> {
    let n = cfg.n();
    if cfg.dim != 2 {
        return Err(HypersubError::Unsupported(format!(
            "half-level operations need a planar configuration, got dimension {}",
            cfg.dim
        )));
    }
    let fs = facets(&cfg.points);
    if fs.len() != n || fs.iter().any(|f| f.members.len() != 2) {
        return Err(HypersubError::Unsupported(
            "half-level operations need points in convex general position".into(),
        ));
    }
    let mut next = vec![usize::MAX; n];
    for f in &fs {
        let (a, b) = (f.members[0], f.members[1]);
        // outward normal: going a -> b keeps the interior on the left
        let (pa, pb) = (&cfg.points[a], &cfg.points[b]);
        let cross = &(&pb[0] - &pa[0]) * &f.normal[1] - &(&pb[1] - &pa[1]) * &f.normal[0];
        if cross.is_positive() {
            next[b] = a;
        } else {
            next[a] = b;
        }
    }
    let mut order = vec![0usize];
    while order.len() < n {
        let cur = next[*order.last().unwrap()];
        if cur == usize::MAX || order.contains(&cur) {
            return Err(HypersubError::Internal("polygon boundary is not a cycle".into()));
        }
        order.push(cur);
    }
    Ok(order.into_iter().map(|i| i + 1).collect())
}

fn require_polygon(cfg: &PointConfiguration) -> Result<()> {
    polygon_order(cfg).map(|_| ())
}

/// `S^+` (`|Y| > k+1`) or `S^-` (`|X| < k-1`) of a level-`k` subdivision.
pub fn plus_minus(cfg: &PointConfiguration, sub: &HypersimplicialSubdivision, side: Side) -> Result<Vec<Tile>> {
    require_polygon(cfg)?;
    let k = sub.k;
    Ok(sub
        .cells
        .iter()
        .copied()
        .filter(|t| match side {
            Side::Plus => card(t.y) > k + 1,
            Side::Minus => card(t.x) + 1 < k,
        })
        .collect())
}

/// `U(S) = S^+` for a subdivision at level `k`, a half-level object at `k + 1/2`.
pub fn up_map(cfg: &PointConfiguration, sub: &HypersimplicialSubdivision) -> Result<HalfLevelSubdivision> {
    check_level(cfg.n(), sub.k)?;
    if sub.k + 1 >= cfg.n() {
        return Err(HypersubError::LevelOutOfRange { k: sub.k + 1, n: cfg.n() });
    }
    Ok(HalfLevelSubdivision::new(sub.k, plus_minus(cfg, sub, Side::Plus)?))
}

/// `D(S) = S^-` for a subdivision at level `k+1`, a half-level object at `k + 1/2`.
pub fn down_map(cfg: &PointConfiguration, sub: &HypersimplicialSubdivision) -> Result<HalfLevelSubdivision> {
    check_level(cfg.n(), sub.k)?;
    if sub.k < 2 {
        return Err(HypersubError::LevelOutOfRange { k: sub.k - 1, n: cfg.n() });
    }
    Ok(HalfLevelSubdivision::new(sub.k - 1, plus_minus(cfg, sub, Side::Minus)?))
}

/// The half-level object `S^(k+1/2)` of a zonotopal tiling.
pub fn tiling_half_level(tiling: &ZonotopalTiling, k: usize) -> HalfLevelSubdivision {
    HalfLevelSubdivision::new(
        k,
        tiling
            .tiles
            .iter()
            .copied()
            .filter(|t| card(t.x) < k && card(t.y) > k + 1),
    )
}

/// Size-`size` vertices of the tiles: points `B` in a tile that are faces of it.
pub fn vertices_of(oracle: &SeparationOracle, tiles: &[Tile], size: usize) -> BTreeSet<LabelSet> {
    let mut out = BTreeSet::new();
    for t in tiles {
        for b in t.level_vertices(size) {
            if oracle.separated(&Tile::point(b), t) {
                out.insert(b);
            }
        }
    }
    out
}

/// `up_S(X) = X ∪ {i : X∪i ∈ vertices^(k+1)(S)}`, checked to be separated from every tile of `S`.
pub fn upper_hole(cfg: &PointConfiguration, s: &HalfLevelSubdivision, x: LabelSet) -> Result<LabelSet> {
    require_polygon(cfg)?;
    let oracle = SeparationOracle::new(cfg);
    upper_hole_with(&oracle, s, x, &vertices_of(&oracle, &s.tiles, s.k))
}

fn upper_hole_with(
    oracle: &SeparationOracle,
    s: &HalfLevelSubdivision,
    x: LabelSet,
    lower: &BTreeSet<LabelSet>,
) -> Result<LabelSet> {
    if !lower.contains(&x) {
        return Err(HypersubError::InvalidTile(format!(
            "{} is not a vertex of size {} of the half-level subdivision",
            fmt_set(x),
            s.k
        )));
    }
    let upper = vertices_of(oracle, &s.tiles, s.k + 1);
    let up = (0..oracle.n)
        .map(|i| 1u64 << i)
        .filter(|&b| x & b == 0 && upper.contains(&(x | b)))
        .fold(x, |m, b| m | b);
    let t = Tile { x, y: up };
    if let Some(bad) = s.tiles.iter().find(|u| !oracle.separated(&t, u)) {
        return Err(HypersubError::Internal(format!("upper hole {t} is not separated from {bad}")));
    }
    Ok(up)
}

/// The coarsest level-`(k+1)` subdivision in `D^(-1)(S)`:
/// `S ∪ {[X, up_S(X)]}` over the size-`k` vertices `X`, edges included.
pub fn coarsest_fiber(cfg: &PointConfiguration, s: &HalfLevelSubdivision) -> Result<HypersimplicialSubdivision> {
    require_polygon(cfg)?;
    let oracle = SeparationOracle::new(cfg);
    let k = s.k;
    let lower = vertices_of(&oracle, &s.tiles, k);
    let mut cells: Vec<Tile> = s.tiles.clone();
    for &x in &lower {
        let up = upper_hole_with(&oracle, s, x, &lower)?;
        if card(up) >= k + 2 {
            cells.push(Tile { x, y: up });
        }
    }
    let out = HypersimplicialSubdivision::new(k + 1, cells);
    check_fiber_member(cfg, s, &out)?;
    Ok(out)
}

fn check_fiber_member(cfg: &PointConfiguration, s: &HalfLevelSubdivision, t: &HypersimplicialSubdivision) -> Result<()> {
    if let Some(v) = validate_subdivision(cfg, t.k, &t.cells)?.first() {
        return Err(HypersubError::Internal(format!("constructed subdivision is invalid: {v}")));
    }
    if down_map(cfg, t)? != *s {
        return Err(HypersubError::Internal("constructed subdivision leaves the fibre".into()));
    }
    Ok(())
}

/// Whether the level-`(k+1)` edge `[X, X∪ab]` is a face of some cell of `t`.
fn is_edge_of(cfg: &PointConfiguration, t: &HypersimplicialSubdivision, e: &Tile) -> bool {
    t.cells.iter().any(|c| tile_is_face_of(cfg, e, c))
}

/// Splits a convex polygon (labels in boundary order) along non-crossing diagonals.
fn split_polygon(region: Vec<usize>, diagonals: &[(usize, usize)]) -> Vec<Vec<usize>> {
    let m = region.len();
    for &(a, b) in diagonals {
        let (Some(i), Some(j)) = (region.iter().position(|&v| v == a), region.iter().position(|&v| v == b)) else {
            continue;
        };
        let (i, j) = (i.min(j), i.max(j));
        if j - i < 2 || (i == 0 && j == m - 1) {
            continue;
        }
        let inner: Vec<usize> = region[i..=j].to_vec();
        let outer: Vec<usize> = region[j..].iter().chain(&region[..=i]).copied().collect();
        let mut out = split_polygon(inner, diagonals);
        out.extend(split_polygon(outer, diagonals));
        return out;
    }
    vec![region]
}

/// The unique coarsest element of `D^(-1)(S)` refining `T`, for `S` refining `D(T)`.
pub fn max_common_refinement(
    cfg: &PointConfiguration,
    s: &HalfLevelSubdivision,
    t: &HypersimplicialSubdivision,
) -> Result<HypersimplicialSubdivision> {
    let order = polygon_order(cfg)?;
    let k = s.k;
    if t.k != k + 1 {
        return Err(HypersubError::LevelOutOfRange { k: t.k, n: cfg.n() });
    }
    if !s.refines(&down_map(cfg, t)?) {
        return Err(HypersubError::InvalidSubdivision(
            "the half-level subdivision does not refine D(T)".into(),
        ));
    }
    let oracle = SeparationOracle::new(cfg);
    let lower = vertices_of(&oracle, &s.tiles, k);
    let mut cells: Vec<Tile> = s.tiles.clone();
    for &x in &lower {
        let up = upper_hole_with(&oracle, s, x, &lower)?;
        let free = up & !x;
        let ring: Vec<usize> = order.iter().copied().filter(|&l| free >> (l - 1) & 1 == 1).collect();
        if ring.len() < 3 {
            if ring.len() == 2 {
                cells.push(Tile { x, y: up });
            }
            continue;
        }
        let diagonals: Vec<(usize, usize)> = subsets_of_size(free, 2)
            .into_iter()
            .filter(|&p| is_edge_of(cfg, t, &Tile { x, y: x | p }))
            .map(|p| {
                let l = labels_of(p);
                (l[0], l[1])
            })
            .collect();
        for region in split_polygon(ring, &diagonals) {
            cells.push(Tile {
                x,
                y: x | set_of(&region),
            });
        }
    }
    let out = HypersimplicialSubdivision::new(k + 1, cells);
    check_fiber_member(cfg, s, &out)?;
    if !t.is_refined_by(&out, cfg) {
        return Err(HypersubError::Internal("constructed subdivision does not refine T".into()));
    }
    Ok(out)
}

/// A zonotopal tiling slicing to `sub` at its level, assembled from the cells
/// of `sub` and the tiles of one of `fine_tilings` outside them.
pub fn lift_to_tiling(
    cfg: &PointConfiguration,
    sub: &HypersimplicialSubdivision,
    fine_tilings: &[ZonotopalTiling],
) -> Result<Option<ZonotopalTiling>> {
    let cells = sub.maximal_cells(cfg);
    let target = sub.normalized(cfg);
    for f in fine_tilings {
        let sliced = crate::tiles::slice(f, cfg.n(), sub.k)?.normalized(cfg);
        if !target.is_refined_by(&sliced, cfg) {
            continue;
        }
        let mut tiles = cells.clone();
        tiles.extend(f.tiles.iter().copied().filter(|t| !cells.iter().any(|c| t.is_subtile_of(c))));
        if !validate_tiling(cfg, &tiles)?.is_empty() {
            continue;
        }
        let tiling = ZonotopalTiling::new(tiles);
        if crate::tiles::slice(&tiling, cfg.n(), sub.k)?.normalized(cfg) == target {
            return Ok(Some(tiling));
        }
    }
    Ok(None)
}
