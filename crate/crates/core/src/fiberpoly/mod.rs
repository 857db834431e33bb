//! GKZ vectors, hypersecondary polytopes and sampled normal-fan comparisons.

mod sampling;

use std::collections::{BTreeMap, BTreeSet};

use crate::coherent::{is_coherent, Coherence};
use crate::enumeration::enumerate_fine;
use crate::error::{HypersubError, Result};
use crate::exactgeom::hull::{affine_rank, facets, intrinsic_coordinates};
use crate::exactgeom::labels::{card, labels_of};
use crate::exactgeom::{PointConfiguration, Rational};
use crate::tiles::{cell_volume, level_volume, HypersimplicialSubdivision};

pub use sampling::{
    deletion_equivalence_sample, normal_equivalence_sample, type1_check, type1_sample, EquivalenceReport,
    Type1Violation,
};

pub type GkzVector = Vec<Rational>;

/// `Σ_F vol(F)/vol(A^(k)) · c(F)` over the full-dimensional cells of a fine subdivision.
pub fn gkz(cfg: &PointConfiguration, sub: &HypersimplicialSubdivision) -> Result<GkzVector> {
    let n = cfg.n();
    let k = sub.k;
    let cells = sub.maximal_cells(cfg);
    if !cells.iter().all(|t| t.is_fine(cfg)) {
        return Err(HypersubError::InvalidSubdivision("GKZ vectors need a fine subdivision".into()));
    }
    let total = level_volume(cfg, k);
    let mut out = vec![Rational::zero(); n];
    for t in &cells {
        let verts = t.level_vertices(k);
        let weight = cell_volume(cfg, k, t) / &total / Rational::from(verts.len());
        for v in verts {
            for l in labels_of(v) {
                out[l - 1] += &weight;
            }
        }
    }
    Ok(out)
}

/// Vertices and facets of a polytope given by exact points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolytopeSkeleton {
    pub dim: usize,
    pub vertices: Vec<GkzVector>,
    /// Vertex indices of each facet.
    pub facets: Vec<Vec<usize>>,
}

impl PolytopeSkeleton {
    /// Convex hull of `points` inside their affine hull; only extreme points are kept.
    pub fn hull(points: &[GkzVector]) -> PolytopeSkeleton {
        let uniq: Vec<GkzVector> = points.iter().cloned().collect::<BTreeSet<_>>().into_iter().collect();
        if uniq.len() <= 1 {
            return PolytopeSkeleton {
                dim: 0,
                vertices: uniq,
                facets: Vec::new(),
            };
        }
        let dim = affine_rank(&uniq) - 1;
        let (_, coords) = intrinsic_coordinates(&uniq);
        let raw: Vec<Vec<usize>> = facets(&coords).into_iter().map(|f| f.members).collect();
        let extreme: Vec<usize> = (0..uniq.len())
            .filter(|&i| {
                let mut meet: Option<BTreeSet<usize>> = None;
                for f in raw.iter().filter(|f| f.contains(&i)) {
                    let s: BTreeSet<usize> = f.iter().copied().collect();
                    meet = Some(match meet {
                        None => s,
                        Some(m) => m.intersection(&s).copied().collect(),
                    });
                }
                meet.is_some_and(|m| m.len() == 1)
            })
            .collect();
        let index: BTreeMap<usize, usize> = extreme.iter().enumerate().map(|(a, &b)| (b, a)).collect();
        let mut fs: Vec<Vec<usize>> = raw
            .iter()
            .map(|f| f.iter().filter_map(|i| index.get(i).copied()).collect())
            .collect();
        fs.sort();
        PolytopeSkeleton {
            dim,
            vertices: extreme.iter().map(|&i| uniq[i].clone()).collect(),
            facets: fs,
        }
    }

    /// `f_0, ..., f_{dim-1}`.
    pub fn f_vector(&self) -> Vec<usize> {
        if self.dim == 0 {
            return vec![self.vertices.len()];
        }
        let mut faces: BTreeSet<Vec<usize>> = self.facets.iter().cloned().collect();
        let mut frontier: Vec<Vec<usize>> = faces.iter().cloned().collect();
        while let Some(f) = frontier.pop() {
            for g in &self.facets {
                let meet: Vec<usize> = f.iter().filter(|i| g.binary_search(i).is_ok()).copied().collect();
                if !meet.is_empty() && faces.insert(meet.clone()) {
                    frontier.push(meet);
                }
            }
        }
        for i in 0..self.vertices.len() {
            faces.insert(vec![i]);
        }
        let mut f = vec![0usize; self.dim];
        for face in faces {
            let pts: Vec<GkzVector> = face.iter().map(|&i| self.vertices[i].clone()).collect();
            let d = affine_rank(&pts) - 1;
            if d < self.dim {
                f[d] += 1;
            }
        }
        f
    }

    /// Number of facets by vertex count.
    pub fn facet_census(&self) -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for f in &self.facets {
            *m.entry(f.len()).or_insert(0) += 1;
        }
        m
    }
}

/// A hypersecondary polytope with the coherent fine subdivision behind each vertex.
#[derive(Debug, Clone)]
pub struct Hypersecondary {
    pub k: usize,
    pub skeleton: PolytopeSkeleton,
    pub vertex_subdivisions: Vec<HypersimplicialSubdivision>,
    /// Every fine subdivision with its GKZ vector and coherence.
    pub fine: Vec<(HypersimplicialSubdivision, GkzVector, bool)>,
}

pub fn hypersecondary(cfg: &PointConfiguration, k: usize, cap: usize) -> Result<Hypersecondary> {
    if cfg.n() > 7 {
        return Err(HypersubError::Unsupported("hypersecondary polytopes need n <= 7".into()));
    }
    let mut fine = Vec::new();
    for s in enumerate_fine(cfg, k, cap)? {
        let g = gkz(cfg, &s)?;
        let coherent = matches!(is_coherent(cfg, &s)?, Coherence::Coherent(_));
        fine.push((s, g, coherent));
    }
    let pts: Vec<GkzVector> = fine.iter().filter(|f| f.2).map(|f| f.1.clone()).collect();
    let skeleton = PolytopeSkeleton::hull(&pts);
    let vertex_subdivisions = skeleton
        .vertices
        .iter()
        .map(|v| {
            fine.iter()
                .find(|f| f.2 && f.1 == *v)
                .map(|f| f.0.clone())
                .expect("vertex from a coherent subdivision")
        })
        .collect();
    Ok(Hypersecondary {
        k,
        skeleton,
        vertex_subdivisions,
        fine,
    })
}

/// Unordered pairs of distinct fine subdivisions sharing a GKZ vector.
pub fn gkz_collision_report(
    cfg: &PointConfiguration,
    k: usize,
    cap: usize,
) -> Result<Vec<(HypersimplicialSubdivision, HypersimplicialSubdivision)>> {
    let subs = enumerate_fine(cfg, k, cap)?;
    let mut by: BTreeMap<GkzVector, Vec<usize>> = BTreeMap::new();
    for (i, s) in subs.iter().enumerate() {
        by.entry(gkz(cfg, s)?).or_default().push(i);
    }
    let mut out = Vec::new();
    for group in by.values() {
        for (a, &i) in group.iter().enumerate() {
            for &j in &group[a + 1..] {
                out.push((subs[i].clone(), subs[j].clone()));
            }
        }
    }
    Ok(out)
}

/// Expected intrinsic dimension `n - d - 1` of a hypersecondary polytope.
pub fn expected_dimension(cfg: &PointConfiguration) -> usize {
    card(cfg.all()) - cfg.dim - 1
}
