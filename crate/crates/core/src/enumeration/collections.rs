//! Maximal separated collections of subsets and their fine zonotopal tilings.

use crate::error::{HypersubError, Result};
use crate::exactgeom::labels::{all_subsets, subsets_of_size};
use crate::exactgeom::{LabelSet, PointConfiguration};
use crate::tiles::{validate_tiling, SeparationOracle, Tile, ZonotopalTiling};

/// A maximal pairwise separated family together with the fine tiling it spans.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparatedCollection {
    pub sets: Vec<LabelSet>,
    pub tiling: ZonotopalTiling,
}

/// Number of affinely independent subsets, the empty set included.
pub fn independent_subset_count(cfg: &PointConfiguration) -> usize {
    all_subsets(cfg.all())
        .into_iter()
        .filter(|&s| cfg.is_independent(s))
        .count()
}

/// All pairwise separated families of size `m`, each with its fine tiling.
pub fn maximal_separated_collections(cfg: &PointConfiguration, cap: usize) -> Result<Vec<SeparatedCollection>> {
    let n = cfg.n();
    if n > 6 {
        return Err(HypersubError::Unsupported(format!(
            "separated collections are limited to n <= 6, got {n}"
        )));
    }
    let m = independent_subset_count(cfg);
    let oracle = SeparationOracle::new(cfg);
    let subsets = all_subsets(cfg.all());
    let v = subsets.len();
    let mut adj = vec![0u64; v];
    for i in 0..v {
        for j in i + 1..v {
            if oracle.points_separated(subsets[i], subsets[j]) {
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
            }
        }
    }
    let all_bits = if v == 64 { u64::MAX } else { (1u64 << v) - 1 };
    let mut cliques = Vec::new();
    bron_kerbosch(&adj, 0, all_bits, 0, m, cap, &mut cliques)?;
    let fine_tiles = full_fine_tiles(cfg);
    let mut out = Vec::with_capacity(cliques.len());
    for c in cliques {
        let mut sets: Vec<LabelSet> = (0..v).filter(|i| c >> i & 1 == 1).map(|i| subsets[i]).collect();
        sets.sort_unstable();
        let tiling = tiling_of(cfg, &sets, &fine_tiles)?;
        out.push(SeparatedCollection { sets, tiling });
    }
    out.sort_by(|a, b| a.sets.cmp(&b.sets));
    Ok(out)
}

fn bron_kerbosch(
    adj: &[u64],
    r: u64,
    p: u64,
    x: u64,
    m: usize,
    cap: usize,
    out: &mut Vec<u64>,
) -> Result<()> {
    let size = r.count_ones() as usize;
    if size > m {
        return Err(HypersubError::Internal(format!(
            "separated family of size {size} exceeds {m}"
        )));
    }
    if p == 0 {
        if x == 0 && size == m {
            out.push(r);
            if out.len() > cap {
                return Err(HypersubError::CapExceeded(cap));
            }
        }
        return Ok(());
    }
    if size + (p.count_ones() as usize) < m {
        return Ok(());
    }
    let pivot = (p | x)
        .iter_bits()
        .max_by_key(|&u| (p & adj[u]).count_ones())
        .expect("nonempty");
    let (mut p, mut x) = (p, x);
    for u in (p & !adj[pivot]).iter_bits() {
        bron_kerbosch(adj, r | 1 << u, p & adj[u], x & adj[u], m, cap, out)?;
        p &= !(1 << u);
        x |= 1 << u;
    }
    Ok(())
}

trait IterBits {
    fn iter_bits(self) -> impl Iterator<Item = usize>;
}

impl IterBits for u64 {
    fn iter_bits(self) -> impl Iterator<Item = usize> {
        (0..64).filter(move |i| self >> i & 1 == 1)
    }
}

fn full_fine_tiles(cfg: &PointConfiguration) -> Vec<Tile> {
    let mut out = Vec::new();
    for f in subsets_of_size(cfg.all(), cfg.dim + 1) {
        if !cfg.is_independent(f) {
            continue;
        }
        for x in all_subsets(cfg.all() & !f) {
            out.push(Tile { x, y: x | f });
        }
    }
    out
}

fn tiling_of(cfg: &PointConfiguration, sets: &[LabelSet], fine_tiles: &[Tile]) -> Result<ZonotopalTiling> {
    let tiles: Vec<Tile> = fine_tiles
        .iter()
        .copied()
        .filter(|t| t.vertices().iter().all(|b| sets.binary_search(b).is_ok()))
        .collect();
    let violations = validate_tiling(cfg, &tiles)?;
    if let Some(v) = violations.first() {
        return Err(HypersubError::Internal(format!(
            "collection of {} sets does not span a tiling: {v}",
            sets.len()
        )));
    }
    Ok(ZonotopalTiling::new(tiles))
}
