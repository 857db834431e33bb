//! Exact geometric validation of subdivisions and tilings.

use std::fmt;

use super::separation::tile_pair_meets_properly;
use super::{check_level, Tile};
use crate::error::Result;
use crate::exactgeom::hull::{affine_rank, volume};
use crate::exactgeom::labels::{card, subsets_of_size};
use crate::exactgeom::{affine_witness, LabelSet, PointConfiguration, Rational, SignConstraint};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    /// The cell does not lie at the requested level.
    OffLevel(Tile),
    /// A cell that is neither full-dimensional nor a face of a full cell.
    NotFullDimensional(Tile),
    VolumeMismatch { expected: Rational, found: Rational },
    ImproperIntersection(Tile, Tile),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::OffLevel(t) => write!(f, "cell {t} does not meet the level"),
            Violation::NotFullDimensional(t) => write!(f, "cell {t} is not full-dimensional"),
            Violation::VolumeMismatch { expected, found } => {
                write!(f, "volume mismatch: cells sum to {found}, expected {expected}")
            }
            Violation::ImproperIntersection(a, b) => {
                write!(f, "cells {a} and {b} do not meet in a common face")
            }
        }
    }
}

fn level_pts(cfg: &PointConfiguration, vs: &[LabelSet]) -> Vec<Vec<Rational>> {
    vs.iter().map(|&b| cfg.level_point(b)).collect()
}

pub fn cell_is_full_dimensional(cfg: &PointConfiguration, k: usize, t: &Tile) -> bool {
    t.covers(k) && cfg.is_spanning(t.free())
}

/// d-volume of the image of `[X,Y]^(k)`.
pub fn cell_volume(cfg: &PointConfiguration, k: usize, t: &Tile) -> Rational {
    if !cell_is_full_dimensional(cfg, k, t) {
        return Rational::zero();
    }
    volume(&level_pts(cfg, &t.level_vertices(k)))
}

/// d-volume of `conv(A^(k))`.
pub fn level_volume(cfg: &PointConfiguration, k: usize) -> Rational {
    let pts: Vec<Vec<Rational>> = subsets_of_size(cfg.all(), k)
        .into_iter()
        .map(|b| cfg.level_point(b))
        .collect();
    if affine_rank(&pts) != cfg.dim + 1 {
        return Rational::zero();
    }
    volume(&pts)
}

fn bbox_disjoint(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> bool {
    let dim = a.first().map_or(0, |p| p.len());
    (0..dim).any(|c| {
        let amax = a.iter().map(|p| &p[c]).max().unwrap();
        let amin = a.iter().map(|p| &p[c]).min().unwrap();
        let bmax = b.iter().map(|p| &p[c]).max().unwrap();
        let bmin = b.iter().map(|p| &p[c]).min().unwrap();
        amax < bmin || bmax < amin
    })
}

/// Whether two labeled point sets meet in a common face: some affine
/// functional vanishes on the shared labels and has opposite strict signs on
/// the remaining labels of each.
pub fn labeled_sets_meet_properly(
    cfg_points: &dyn Fn(LabelSet) -> Vec<Rational>,
    v1: &[LabelSet],
    v2: &[LabelSet],
) -> bool {
    let p1: Vec<Vec<Rational>> = v1.iter().map(|&b| cfg_points(b)).collect();
    let p2: Vec<Vec<Rational>> = v2.iter().map(|&b| cfg_points(b)).collect();
    if bbox_disjoint(&p1, &p2) {
        return true;
    }
    let mut pts = Vec::new();
    let mut cons = Vec::new();
    for (b, p) in v1.iter().zip(p1) {
        pts.push(p);
        cons.push(if v2.binary_search(b).is_ok() {
            SignConstraint::Zero
        } else {
            SignConstraint::Pos
        });
    }
    for (b, p) in v2.iter().zip(p2) {
        if v1.binary_search(b).is_ok() {
            continue;
        }
        pts.push(p);
        cons.push(SignConstraint::Neg);
    }
    affine_witness(&pts, &cons).is_some()
}

/// Whether the images of two level-`k` cells meet in a common labeled face.
pub fn cells_meet_properly(cfg: &PointConfiguration, k: usize, t1: &Tile, t2: &Tile) -> bool {
    let v1 = t1.level_vertices(k);
    let v2 = t2.level_vertices(k);
    labeled_sets_meet_properly(&|b| cfg.level_point(b), &v1, &v2)
}

/// Whether `face` (a labeled set inside `cell`) is a face of the image of `cell`.
fn is_face_of(points: &dyn Fn(LabelSet) -> Vec<Rational>, face: &[LabelSet], cell: &[LabelSet]) -> bool {
    if !face.iter().all(|b| cell.binary_search(b).is_ok()) {
        return false;
    }
    let pts: Vec<Vec<Rational>> = cell.iter().map(|&b| points(b)).collect();
    let cons: Vec<SignConstraint> = cell
        .iter()
        .map(|b| {
            if face.binary_search(b).is_ok() {
                SignConstraint::Zero
            } else {
                SignConstraint::Pos
            }
        })
        .collect();
    affine_witness(&pts, &cons).is_some()
}

/// Checks (a) full-dimensionality of maximal cells, (b) the exact volume
/// identity and (c) pairwise intersection in common faces. An empty result
/// means the cells form a subdivision of `conv(A^(k))`.
pub fn validate_subdivision(cfg: &PointConfiguration, k: usize, cells: &[Tile]) -> Result<Vec<Violation>> {
    check_level(cfg.n(), k)?;
    let mut out = Vec::new();
    for t in cells {
        cfg.check_set(t.y)?;
        if card(t.x) > k || card(t.y) < k {
            out.push(Violation::OffLevel(*t));
        }
    }
    let full: Vec<Tile> = cells
        .iter()
        .copied()
        .filter(|t| cell_is_full_dimensional(cfg, k, t))
        .collect();
    let fullv: Vec<Vec<LabelSet>> = full.iter().map(|t| t.level_vertices(k)).collect();
    let pts = |b: LabelSet| cfg.level_point(b);
    for t in cells {
        if card(t.x) > k || card(t.y) < k || cell_is_full_dimensional(cfg, k, t) {
            continue;
        }
        let v = t.level_vertices(k);
        let inside: Vec<&Vec<LabelSet>> = fullv
            .iter()
            .filter(|c| v.iter().all(|b| c.binary_search(b).is_ok()))
            .collect();
        if v.len() == 1 && inside.is_empty() {
            continue;
        }
        if !inside.iter().any(|c| is_face_of(&pts, &v, c)) {
            out.push(Violation::NotFullDimensional(*t));
        }
    }
    let expected = level_volume(cfg, k);
    let found: Rational = full.iter().map(|t| cell_volume(cfg, k, t)).sum();
    if expected != found {
        out.push(Violation::VolumeMismatch { expected, found });
    }
    for i in 0..full.len() {
        for j in i + 1..full.len() {
            if !labeled_sets_meet_properly(&pts, &fullv[i], &fullv[j]) {
                out.push(Violation::ImproperIntersection(full[i], full[j]));
            }
        }
    }
    Ok(out)
}

/// (d+1)-volume of the sub-zonotope `X + Z(Y\X)`.
pub fn tile_volume(cfg: &PointConfiguration, t: &Tile) -> Rational {
    subsets_of_size(t.free(), cfg.dim + 1)
        .into_iter()
        .map(|b| cfg.lifted_abs_det(b))
        .sum()
}

/// (d+1)-volume of `Z(A)`.
pub fn zonotope_volume(cfg: &PointConfiguration) -> Rational {
    tile_volume(
        cfg,
        &Tile {
            x: 0,
            y: cfg.all(),
        },
    )
}

/// Whether `face` is a face of the zonotope tile `tile`: a linear functional
/// on `Y\X` negative on `X'\X`, zero on `Y'\X'`, positive on `Y\Y'`.
pub fn tile_is_face_of(cfg: &PointConfiguration, face: &Tile, tile: &Tile) -> bool {
    if !face.is_subtile_of(tile) {
        return false;
    }
    let cons: Vec<SignConstraint> = (0..cfg.n())
        .map(|i| {
            let b = 1u64 << i;
            if tile.free() & b == 0 {
                SignConstraint::Free
            } else if face.x & b != 0 {
                SignConstraint::Neg
            } else if face.y & b != 0 {
                SignConstraint::Zero
            } else {
                SignConstraint::Pos
            }
        })
        .collect();
    linear_witness(cfg, &cons)
}

/// Linear (not affine) functional on the lifted points with the given signs.
fn linear_witness(cfg: &PointConfiguration, cons: &[SignConstraint]) -> bool {
    let pts: Vec<Vec<Rational>> = (1..=cfg.n()).map(|l| cfg.lifted(l)).collect();
    let mut p2 = pts.clone();
    let mut c2 = cons.to_vec();
    // pin the constant term: the origin must evaluate to zero
    p2.push(vec![Rational::zero(); cfg.dim + 1]);
    c2.push(SignConstraint::Zero);
    affine_witness(&p2, &c2).is_some()
}

/// Checks that the tiles cover `Z(A)` exactly (volume identity) and meet
/// pairwise in common faces.
pub fn validate_tiling(cfg: &PointConfiguration, tiles: &[Tile]) -> Result<Vec<Violation>> {
    let mut out = Vec::new();
    for t in tiles {
        cfg.check_set(t.y)?;
    }
    let full: Vec<Tile> = tiles
        .iter()
        .copied()
        .filter(|t| cfg.is_spanning(t.free()))
        .collect();
    for t in tiles {
        if cfg.is_spanning(t.free()) {
            continue;
        }
        let ok = full.iter().any(|f| tile_is_face_of(cfg, t, f));
        if !ok && !(t.x == t.y && full.iter().all(|f| !f.contains_point(t.x))) {
            out.push(Violation::NotFullDimensional(*t));
        }
    }
    let expected = zonotope_volume(cfg);
    let found: Rational = full.iter().map(|t| tile_volume(cfg, t)).sum();
    if expected != found {
        out.push(Violation::VolumeMismatch { expected, found });
    }
    for i in 0..full.len() {
        for j in i + 1..full.len() {
            if !tile_pair_meets_properly(cfg, &full[i], &full[j]) {
                out.push(Violation::ImproperIntersection(full[i], full[j]));
            }
        }
    }
    Ok(out)
}
