//! Exhaustive enumeration of hypersimplicial subdivisions, Baues posets,
//! maximal separated collections and hypercatalan numbers.

mod catalan;
mod collections;

use std::collections::HashMap;

use crate::error::{HypersubError, Result};
use crate::exactgeom::hull::{facets, volume};
use crate::exactgeom::labels::{all_subsets, card, subsets_of_size};
use crate::exactgeom::linalg::dot;
use crate::exactgeom::{LabelSet, PointConfiguration, Rational};
use crate::tiles::{check_level, labeled_sets_meet_properly, level_volume, HypersimplicialSubdivision, Tile};

pub use catalan::{
    catalan, catalan_bounds_report, diagonal_degrees, hypercatalan2, polygon_triangulations, star,
    star_contribution, triangulation_contribution, zigzag, zigzag_contribution, CatalanBounds,
    Triangulation,
};
pub use collections::{independent_subset_count, maximal_separated_collections, SeparatedCollection};

/// Default hard cap on enumerated elements.
pub const DEFAULT_CAP: usize = 1_000_000;

/// Level point indices as a bitset.
type Bits = u128;

#[derive(Debug, Clone)]
struct Candidate {
    tile: Tile,
    /// Interior (non-boundary) facets, as level point bitsets.
    open_facets: Vec<Bits>,
    /// Hyperplanes `normal·x <= offset` bounding the cell image.
    halfspaces: Vec<(Vec<Rational>, Rational)>,
}

/// Precomputed cells of one level and their pairwise compatibility.
pub struct CellSearch {
    k: usize,
    level: Vec<LabelSet>,
    cands: Vec<Candidate>,
    compat: Vec<Vec<u64>>,
    by_facet: HashMap<Bits, Vec<usize>>,
    start: Vec<usize>,
    total: Rational,
    volumes: Vec<Rational>,
}

fn bit_of(level: &[LabelSet], b: LabelSet) -> Bits {
    1u128 << level.binary_search(&b).expect("level point")
}

impl CellSearch {
    /// Sets up a search over the covering tiles accepted by `keep`.
    pub fn new(cfg: &PointConfiguration, k: usize, keep: impl Fn(&Tile) -> bool) -> Result<CellSearch> {
        check_level(cfg.n(), k)?;
        let level = subsets_of_size(cfg.all(), k);
        if level.len() > 128 {
            return Err(HypersubError::Unsupported(format!(
                "{} level points exceed the 128-point search limit",
                level.len()
            )));
        }
        let level_pts: Vec<Vec<Rational>> = level.iter().map(|&b| cfg.level_point(b)).collect();
        let mut tiles = Vec::new();
        for f in all_subsets(cfg.all()) {
            if !cfg.is_spanning(f) {
                continue;
            }
            for x in all_subsets(cfg.all() & !f) {
                let t = Tile { x, y: x | f };
                if t.covers(k) && keep(&t) {
                    tiles.push(t);
                }
            }
        }
        tiles.sort();
        let mut cands = Vec::new();
        let mut volumes = Vec::new();
        for t in tiles {
            let verts = t.level_vertices(k);
            let pts: Vec<Vec<Rational>> = verts.iter().map(|&b| cfg.level_point(b)).collect();
            let mut open_facets = Vec::new();
            let mut halfspaces = Vec::new();
            for f in facets(&pts) {
                let boundary = level_pts.iter().all(|p| dot(&f.normal, p) <= f.offset);
                let bits = f.members.iter().fold(0, |m, &i| m | bit_of(&level, verts[i]));
                if !boundary {
                    open_facets.push(bits);
                }
                halfspaces.push((f.normal, f.offset));
            }
            volumes.push(volume(&pts));
            cands.push(Candidate {
                tile: t,
                open_facets,
                halfspaces,
            });
        }
        let m = cands.len();
        let words = m.div_ceil(64);
        let mut compat = vec![vec![0u64; words]; m];
        let verts: Vec<Vec<LabelSet>> = cands.iter().map(|c| c.tile.level_vertices(k)).collect();
        let points = |b: LabelSet| cfg.level_point(b);
        for i in 0..m {
            for j in i + 1..m {
                if labeled_sets_meet_properly(&points, &verts[i], &verts[j]) {
                    compat[i][j / 64] |= 1 << (j % 64);
                    compat[j][i / 64] |= 1 << (i % 64);
                }
            }
        }
        let mut by_facet: HashMap<Bits, Vec<usize>> = HashMap::new();
        for (i, c) in cands.iter().enumerate() {
            for &f in &c.open_facets {
                by_facet.entry(f).or_default().push(i);
            }
        }
        let p = generic_interior_point(cfg, &level_pts, &cands);
        let start = cands
            .iter()
            .enumerate()
            .filter(|(_, c)| c.halfspaces.iter().all(|(a, b)| dot(a, &p) < *b))
            .map(|(i, _)| i)
            .collect();
        Ok(CellSearch {
            k,
            level,
            cands,
            compat,
            by_facet,
            start,
            total: level_volume(cfg, k),
            volumes,
        })
    }

    pub fn candidate_count(&self) -> usize {
        self.cands.len()
    }

    /// Runs the frontier search, calling `found` with the chosen candidate
    /// indices of each complete subdivision.
    pub fn run(&self, cap: usize, found: &mut dyn FnMut(&[usize])) -> Result<usize> {
        let mut count = 0usize;
        for &s in &self.start {
            let mut chosen = vec![s];
            let allowed = self.compat[s].clone();
            self.extend(&mut chosen, allowed, cap, &mut count, found)?;
        }
        Ok(count)
    }

    fn extend(
        &self,
        chosen: &mut Vec<usize>,
        allowed: Vec<u64>,
        cap: usize,
        count: &mut usize,
        found: &mut dyn FnMut(&[usize]),
    ) -> Result<()> {
        // open facets: interior facets of chosen cells not shared by another chosen cell
        let mut tally: HashMap<Bits, u32> = HashMap::new();
        for &c in chosen.iter() {
            for &f in &self.cands[c].open_facets {
                *tally.entry(f).or_default() += 1;
            }
        }
        let open = tally
            .iter()
            .filter(|(_, &v)| v == 1)
            .map(|(&f, _)| f)
            .min_by_key(|&f| self.facet_key(f));
        let Some(facet) = open else {
            let vol: Rational = chosen.iter().map(|&c| self.volumes[c].clone()).sum();
            if vol != self.total {
                return Err(HypersubError::Internal(format!(
                    "closed cell complex of volume {vol}, expected {}",
                    self.total
                )));
            }
            *count += 1;
            if *count > cap {
                return Err(HypersubError::CapExceeded(cap));
            }
            let mut sorted = chosen.clone();
            sorted.sort_unstable();
            found(&sorted);
            return Ok(());
        };
        let Some(options) = self.by_facet.get(&facet) else {
            return Ok(());
        };
        for &o in options {
            if allowed[o / 64] >> (o % 64) & 1 == 0 {
                continue;
            }
            let next: Vec<u64> = allowed.iter().zip(&self.compat[o]).map(|(a, b)| a & b).collect();
            chosen.push(o);
            self.extend(chosen, next, cap, count, found)?;
            chosen.pop();
        }
        Ok(())
    }

    /// Sorted level labels of a facet, for lexicographic frontier order.
    fn facet_key(&self, f: Bits) -> Vec<LabelSet> {
        (0..self.level.len())
            .filter(|i| f >> i & 1 == 1)
            .map(|i| self.level[i])
            .collect()
    }

    pub fn subdivision(&self, idx: &[usize]) -> HypersimplicialSubdivision {
        HypersimplicialSubdivision::new(self.k, idx.iter().map(|&i| self.cands[i].tile))
    }
}

/// Centroid of the level points nudged by `(δ, δ², ...)` until it avoids
/// every candidate facet hyperplane while staying inside the level polytope.
fn generic_interior_point(cfg: &PointConfiguration, level_pts: &[Vec<Rational>], cands: &[Candidate]) -> Vec<Rational> {
    let d = cfg.dim;
    let mut centroid = vec![Rational::zero(); d];
    for p in level_pts {
        for (c, x) in centroid.iter_mut().zip(p) {
            *c += x;
        }
    }
    let cnt = Rational::from(level_pts.len());
    let centroid: Vec<Rational> = centroid.into_iter().map(|c| c / &cnt).collect();
    let outer = facets(level_pts);
    let mut delta = Rational::new(1, 7);
    loop {
        let mut p = centroid.clone();
        let mut step = delta.clone();
        for x in p.iter_mut() {
            *x += &step;
            step = &step * &delta;
        }
        let clear = cands
            .iter()
            .all(|c| c.halfspaces.iter().all(|(a, b)| dot(a, &p) != *b));
        if clear && outer.iter().all(|f| dot(&f.normal, &p) < f.offset) {
            return p;
        }
        delta = &delta / &Rational::from_int(11);
    }
}

/// All hypertriangulations of `A^(k)`, in canonical order.
pub fn enumerate_fine(cfg: &PointConfiguration, k: usize, cap: usize) -> Result<Vec<HypersimplicialSubdivision>> {
    let d1 = cfg.dim + 1;
    let search = CellSearch::new(cfg, k, |t| card(t.free()) == d1)?;
    let mut out = Vec::new();
    search.run(cap, &mut |idx| out.push(search.subdivision(idx)))?;
    out.sort();
    Ok(out)
}

pub fn count_fine(cfg: &PointConfiguration, k: usize, cap: usize) -> Result<usize> {
    let d1 = cfg.dim + 1;
    let search = CellSearch::new(cfg, k, |t| card(t.free()) == d1)?;
    search.run(cap, &mut |_| {})
}

/// All hypersimplicial subdivisions of `A^(k)` including the trivial one.
pub fn enumerate_all(cfg: &PointConfiguration, k: usize, cap: usize) -> Result<Vec<HypersimplicialSubdivision>> {
    let search = CellSearch::new(cfg, k, |_| true)?;
    let mut out = Vec::new();
    search.run(cap, &mut |idx| out.push(search.subdivision(idx)))?;
    out.sort();
    Ok(out)
}

/// Hypersimplicial subdivisions ordered by refinement, trivial excluded.
#[derive(Debug, Clone)]
pub struct BauesPoset {
    pub k: usize,
    pub elements: Vec<HypersimplicialSubdivision>,
    /// `below[i]`: elements strictly refining element `i`.
    pub below: Vec<Vec<usize>>,
}

impl BauesPoset {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Minimal elements (nothing refines them).
    pub fn minimal(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.below[i].is_empty()).collect()
    }

    /// Elements with no element above them.
    pub fn maximal(&self) -> Vec<usize> {
        let mut has_above = vec![false; self.len()];
        for b in &self.below {
            for &j in b {
                has_above[j] = true;
            }
        }
        (0..self.len()).filter(|&i| !has_above[i]).collect()
    }
}

pub fn enumerate_baues(cfg: &PointConfiguration, k: usize, cap: usize) -> Result<BauesPoset> {
    let all = enumerate_all(cfg, k, cap.saturating_add(1))?;
    let trivial = HypersimplicialSubdivision::trivial(cfg.n(), k);
    let elements: Vec<HypersimplicialSubdivision> = all.into_iter().filter(|s| *s != trivial).collect();
    if elements.len() > cap {
        return Err(HypersubError::CapExceeded(cap));
    }
    let m = elements.len();
    let mut below = vec![Vec::new(); m];
    for i in 0..m {
        for j in 0..m {
            if i != j && refines(&elements[j], &elements[i]) {
                below[i].push(j);
            }
        }
    }
    Ok(BauesPoset { k, elements, below })
}

/// Every cell of `fine` lies in a cell of `coarse`.
fn refines(fine: &HypersimplicialSubdivision, coarse: &HypersimplicialSubdivision) -> bool {
    fine.cells
        .iter()
        .all(|c| coarse.cells.iter().any(|d| c.is_subtile_of(d)))
}

/// Euler characteristic of the order complex: `Σ_j (-1)^(j-1) · #(j-element chains)`.
pub fn euler_characteristic(p: &BauesPoset) -> i64 {
    let m = p.len();
    // topological order: fewer cells below first (refinements have more cells)
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by_key(|&i| std::cmp::Reverse(p.elements[i].cells.len()));
    let mut chains = vec![1i64; m];
    let mut chi = 0i64;
    let mut sign = 1i64;
    loop {
        let total: i64 = chains.iter().sum();
        if total == 0 {
            break;
        }
        chi += sign * total;
        sign = -sign;
        let mut next = vec![0i64; m];
        for &i in &order {
            next[i] = p.below[i].iter().map(|&j| chains[j]).sum();
        }
        chains = next;
    }
    chi
}
