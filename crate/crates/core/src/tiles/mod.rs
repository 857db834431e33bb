//! Tiles `[X,Y]`, sliced cells, tilings and hypersimplicial subdivisions.

mod separation;
mod validate;

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{HypersubError, Result};
use crate::exactgeom::labels::{
    all_subsets, card, compact, full_set, is_subset, labels_of, parse_set, set_of, subsets_of_size,
};
use crate::exactgeom::{LabelSet, PointConfiguration};

pub use separation::{
    points_separated, tile_pair_meets_properly, tiles_separated, verify_not_separated,
    verify_separated, Separation, SeparationOracle,
};
pub use validate::{
    cell_is_full_dimensional, cell_volume, cells_meet_properly, labeled_sets_meet_properly, level_volume, tile_is_face_of, tile_volume, validate_subdivision,
    validate_tiling, zonotope_volume, Violation,
};

/// An interval `[X,Y]` of the subset lattice.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tile {
    pub x: LabelSet,
    pub y: LabelSet,
}

impl Tile {
    pub fn new(x: LabelSet, y: LabelSet) -> Result<Tile> {
        if !is_subset(x, y) {
            return Err(HypersubError::InvalidTile(format!(
                "X = {} is not contained in Y = {}",
                compact(x),
                compact(y)
            )));
        }
        Ok(Tile { x, y })
    }

    /// Builds a tile from label lists; panics if `X ⊄ Y`.
    pub fn of(x: &[usize], y: &[usize]) -> Tile {
        Tile::new(set_of(x), set_of(y)).expect("X must be a subset of Y")
    }

    /// Builds a tile from compact strings such as `("1", "1236")`.
    pub fn parse_compact(x: &str, y: &str) -> Result<Tile> {
        let xs = parse_set(x).ok_or_else(|| HypersubError::InvalidTile(x.to_string()))?;
        let ys = parse_set(y).ok_or_else(|| HypersubError::InvalidTile(y.to_string()))?;
        Tile::new(xs, ys)
    }

    /// Parses the literal `X:Y` with comma separated labels, `-` for an empty set.
    pub fn parse_literal(s: &str) -> Result<Tile> {
        let (x, y) = s
            .split_once(':')
            .ok_or_else(|| HypersubError::InvalidTile(format!("expected X:Y, got {s:?}")))?;
        let parse = |t: &str| -> Result<LabelSet> {
            let t = t.trim();
            if t == "-" || t.is_empty() {
                return Ok(0);
            }
            let mut m = 0;
            for p in t.split(',') {
                let l: usize = p
                    .trim()
                    .parse()
                    .map_err(|_| HypersubError::InvalidTile(format!("bad label {p:?}")))?;
                if l == 0 || l > 63 {
                    return Err(HypersubError::InvalidTile(format!("bad label {l}")));
                }
                m |= 1 << (l - 1);
            }
            Ok(m)
        };
        Tile::new(parse(x)?, parse(y)?)
    }

    pub fn point(b: LabelSet) -> Tile {
        Tile { x: b, y: b }
    }

    /// `Y \ X`.
    pub fn free(&self) -> LabelSet {
        self.y & !self.x
    }

    pub fn dim(&self) -> usize {
        card(self.free())
    }

    pub fn is_fine(&self, cfg: &PointConfiguration) -> bool {
        cfg.is_independent(self.free())
    }

    /// `|X| < k < |Y|`.
    pub fn covers(&self, k: usize) -> bool {
        card(self.x) < k && k < card(self.y)
    }

    pub fn contains_point(&self, b: LabelSet) -> bool {
        is_subset(self.x, b) && is_subset(b, self.y)
    }

    pub fn is_subtile_of(&self, other: &Tile) -> bool {
        is_subset(other.x, self.x) && is_subset(self.y, other.y)
    }

    /// Vertices `B` with `X ⊆ B ⊆ Y` and `|B| = k`, sorted.
    pub fn level_vertices(&self, k: usize) -> Vec<LabelSet> {
        let cx = card(self.x);
        if k < cx || k > card(self.y) {
            return Vec::new();
        }
        let mut v: Vec<LabelSet> = subsets_of_size(self.free(), k - cx)
            .into_iter()
            .map(|s| s | self.x)
            .collect();
        v.sort_unstable();
        v
    }

    /// All vertices of the tile, sorted.
    pub fn vertices(&self) -> Vec<LabelSet> {
        let mut v: Vec<LabelSet> = all_subsets(self.free()).into_iter().map(|s| s | self.x).collect();
        v.sort_unstable();
        v
    }

    /// `[[n]\Y, [n]\X]`.
    pub fn complement(&self, n: usize) -> Tile {
        let f = full_set(n);
        Tile {
            x: f & !self.y,
            y: f & !self.x,
        }
    }

    /// Literal form `X:Y`, the inverse of [`Tile::parse_literal`].
    pub fn literal(&self) -> String {
        let fmt = |s: LabelSet| {
            if s == 0 {
                "-".to_string()
            } else {
                labels_of(s)
                    .iter()
                    .map(|l| l.to_string())
                    .collect::<Vec<_>>()
                    .join(",")
            }
        };
        format!("{}:{}", fmt(self.x), fmt(self.y))
    }
}

impl fmt::Display for Tile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", compact(self.x), compact(self.y))
    }
}

/// JSON form of a tile: `{"X": [..], "Y": [..]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TileJson {
    #[serde(rename = "X")]
    pub x: Vec<usize>,
    #[serde(rename = "Y")]
    pub y: Vec<usize>,
}

impl From<&Tile> for TileJson {
    fn from(t: &Tile) -> Self {
        TileJson {
            x: labels_of(t.x),
            y: labels_of(t.y),
        }
    }
}

impl TileJson {
    pub fn to_tile(&self) -> Result<Tile> {
        for &l in self.x.iter().chain(&self.y) {
            if l == 0 || l > 63 {
                return Err(HypersubError::InvalidTile(format!("bad label {l}")));
            }
        }
        Tile::new(set_of(&self.x), set_of(&self.y))
    }
}

/// File form shared by tilings (no `k`) and subdivisions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellsJson {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub k: Option<usize>,
    pub cells: Vec<TileJson>,
}

/// A collection of maximal tiles of a zonotopal tiling.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ZonotopalTiling {
    pub tiles: Vec<Tile>,
}

impl ZonotopalTiling {
    pub fn new(tiles: impl IntoIterator<Item = Tile>) -> Self {
        let set: BTreeSet<Tile> = tiles.into_iter().collect();
        ZonotopalTiling {
            tiles: set.into_iter().collect(),
        }
    }

    pub fn trivial(n: usize) -> Self {
        ZonotopalTiling::new([Tile {
            x: 0,
            y: full_set(n),
        }])
    }

    pub fn contains(&self, t: &Tile) -> bool {
        self.tiles.binary_search(t).is_ok()
    }

    /// Whether `t` is a face of some tile of the tiling.
    pub fn has_face(&self, t: &Tile) -> bool {
        self.tiles.iter().any(|s| t.is_subtile_of(s))
    }

    pub fn is_fine(&self, cfg: &PointConfiguration) -> bool {
        self.tiles.iter().all(|t| t.is_fine(cfg))
    }

    /// All vertices (points) of the tiling.
    pub fn vertex_set(&self) -> BTreeSet<LabelSet> {
        self.tiles.iter().flat_map(|t| t.vertices()).collect()
    }

    pub fn to_json(&self) -> CellsJson {
        CellsJson {
            k: None,
            cells: self.tiles.iter().map(TileJson::from).collect(),
        }
    }

    pub fn from_json(j: &CellsJson) -> Result<Self> {
        Ok(ZonotopalTiling::new(
            j.cells.iter().map(|c| c.to_tile()).collect::<Result<Vec<_>>>()?,
        ))
    }
}

/// A hypersimplicial subdivision of level `k`, given by its cells `[X,Y]^(k)`.
/// Cells may include lower-dimensional members; comparisons use
/// [`HypersimplicialSubdivision::maximal_cells`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HypersimplicialSubdivision {
    pub k: usize,
    pub cells: Vec<Tile>,
}

impl HypersimplicialSubdivision {
    pub fn new(k: usize, cells: impl IntoIterator<Item = Tile>) -> Self {
        let set: BTreeSet<Tile> = cells.into_iter().collect();
        HypersimplicialSubdivision {
            k,
            cells: set.into_iter().collect(),
        }
    }

    pub fn trivial(n: usize, k: usize) -> Self {
        HypersimplicialSubdivision::new(
            k,
            [Tile {
                x: 0,
                y: full_set(n),
            }],
        )
    }

    /// Cells whose image is full-dimensional.
    pub fn maximal_cells(&self, cfg: &PointConfiguration) -> Vec<Tile> {
        self.cells
            .iter()
            .copied()
            .filter(|t| cell_is_full_dimensional(cfg, self.k, t))
            .collect()
    }

    /// Covering cells (`|X| < k < |Y|`) only, dropping singletons.
    pub fn covering_cells(&self) -> Vec<Tile> {
        self.cells.iter().copied().filter(|t| t.covers(self.k)).collect()
    }

    /// Same level and same full-dimensional cells.
    pub fn same_as(&self, other: &Self, cfg: &PointConfiguration) -> bool {
        self.k == other.k && self.maximal_cells(cfg) == other.maximal_cells(cfg)
    }

    pub fn is_fine(&self, cfg: &PointConfiguration) -> bool {
        self.maximal_cells(cfg).iter().all(|t| t.is_fine(cfg))
    }

    /// The subdivision restricted to its full-dimensional cells.
    pub fn normalized(&self, cfg: &PointConfiguration) -> Self {
        HypersimplicialSubdivision::new(self.k, self.maximal_cells(cfg))
    }

    pub fn to_json(&self) -> CellsJson {
        CellsJson {
            k: Some(self.k),
            cells: self.cells.iter().map(TileJson::from).collect(),
        }
    }

    pub fn from_json(j: &CellsJson) -> Result<Self> {
        let k = j
            .k
            .ok_or_else(|| HypersubError::Parse("subdivision file needs \"k\"".into()))?;
        Ok(HypersimplicialSubdivision::new(
            k,
            j.cells.iter().map(|c| c.to_tile()).collect::<Result<Vec<_>>>()?,
        ))
    }

    /// Labeled vertex set of a cell at this level.
    pub fn cell_vertices(&self, t: &Tile) -> Vec<LabelSet> {
        t.level_vertices(self.k)
    }

    /// Whether `other` refines `self`: every full cell of `other` lies in a cell of `self`.
    pub fn is_refined_by(&self, other: &Self, cfg: &PointConfiguration) -> bool {
        let mine = self.maximal_cells(cfg);
        other
            .maximal_cells(cfg)
            .iter()
            .all(|c| mine.iter().any(|m| c.is_subtile_of(m)))
    }
}

pub fn check_level(n: usize, k: usize) -> Result<()> {
    if k == 0 || k >= n {
        Err(HypersubError::LevelOutOfRange { k, n })
    } else {
        Ok(())
    }
}

/// Slices a tiling at level `k`: covering tiles plus the level-`k` vertices
/// not contained in a covering tile.
pub fn slice(tiling: &ZonotopalTiling, n: usize, k: usize) -> Result<HypersimplicialSubdivision> {
    check_level(n, k)?;
    let covering: Vec<Tile> = tiling.tiles.iter().copied().filter(|t| t.covers(k)).collect();
    let mut cells = covering.clone();
    let mut seen = BTreeSet::new();
    for t in &tiling.tiles {
        for b in t.level_vertices(k) {
            if seen.insert(b) && !covering.iter().any(|c| c.contains_point(b)) {
                cells.push(Tile::point(b));
            }
        }
    }
    Ok(HypersimplicialSubdivision::new(k, cells))
}

/// `[X,Y]^(k) -> [[n]\Y, [n]\X]^(n-k)`.
pub fn complement(sub: &HypersimplicialSubdivision, n: usize) -> HypersimplicialSubdivision {
    HypersimplicialSubdivision::new(n - sub.k, sub.cells.iter().map(|t| t.complement(n)))
}

pub fn complement_tiling(t: &ZonotopalTiling, n: usize) -> ZonotopalTiling {
    ZonotopalTiling::new(t.tiles.iter().map(|s| s.complement(n)))
}
