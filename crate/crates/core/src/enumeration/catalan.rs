//! Polygon triangulations and the level-2 hypercatalan numbers.

use crate::error::{HypersubError, Result};

/// A triangulation of the labeled `n`-gon as sorted label triples.
pub type Triangulation = Vec<[usize; 3]>;

/// The `m`-th Catalan number.
pub fn catalan(m: usize) -> u128 {
    let mut c: u128 = 1;
    for i in 0..m as u128 {
        c = c * 2 * (2 * i + 1) / (i + 2);
    }
    c
}

/// All triangulations of the convex `n`-gon with vertices `1..=n`.
pub fn polygon_triangulations(n: usize) -> Result<Vec<Triangulation>> {
    if n < 3 {
        return Err(HypersubError::InvalidConfig(format!("polygon needs n >= 3, got {n}")));
    }
    Ok(triangulate(&(1..=n).collect::<Vec<_>>()))
}

fn triangulate(poly: &[usize]) -> Vec<Triangulation> {
    let m = poly.len();
    if m < 3 {
        return vec![Vec::new()];
    }
    let (a, b) = (poly[0], poly[m - 1]);
    let mut out = Vec::new();
    for j in 1..m - 1 {
        let left = triangulate(&poly[..=j]);
        let right = triangulate(&poly[j..]);
        for l in &left {
            for r in &right {
                let mut t = Vec::with_capacity(m - 2);
                let mut tri = [a, poly[j], b];
                tri.sort_unstable();
                t.push(tri);
                t.extend_from_slice(l);
                t.extend_from_slice(r);
                t.sort_unstable();
                out.push(t);
            }
        }
    }
    out
}

/// Number of diagonals at each vertex `1..=n`.
pub fn diagonal_degrees(t: &Triangulation, n: usize) -> Vec<usize> {
    let mut deg = vec![0usize; n + 1];
    let mut edges = std::collections::BTreeSet::new();
    for tri in t {
        for (u, v) in [(tri[0], tri[1]), (tri[0], tri[2]), (tri[1], tri[2])] {
            let side = v - u == 1 || (u == 1 && v == n);
            if !side && edges.insert((u, v)) {
                deg[u] += 1;
                deg[v] += 1;
            }
        }
    }
    deg.remove(0);
    deg
}

/// `Π_i C_{deg(i)}` for a triangulation of the `n`-gon.
pub fn triangulation_contribution(t: &Triangulation, n: usize) -> u128 {
    diagonal_degrees(t, n).into_iter().map(catalan).product()
}

/// Level-2 hypercatalan number of the `n`-gon.
pub fn hypercatalan2(n: usize) -> Result<u128> {
    Ok(polygon_triangulations(n)?
        .iter()
        .map(|t| triangulation_contribution(t, n))
        .sum())
}

/// Zigzag triangulation of the `n`-gon: diagonals alternate between the two sides.
pub fn zigzag(n: usize) -> Triangulation {
    let (mut lo, mut hi) = (1usize, n);
    let mut t = Vec::new();
    let mut from_lo = true;
    while hi - lo >= 2 {
        let tri = if from_lo {
            lo += 1;
            [lo - 1, lo, hi]
        } else {
            hi -= 1;
            [lo, hi, hi + 1]
        };
        t.push(tri);
        from_lo = !from_lo;
    }
    t.sort_unstable();
    t
}

/// Star triangulation of the `n`-gon: all diagonals through vertex 1.
pub fn star(n: usize) -> Triangulation {
    (2..n).map(|i| [1, i, i + 1]).collect()
}

pub fn zigzag_contribution(n: usize) -> u128 {
    triangulation_contribution(&zigzag(n), n)
}

pub fn star_contribution(n: usize) -> u128 {
    triangulation_contribution(&star(n), n)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalanBounds {
    pub n: usize,
    pub min: u128,
    pub max: u128,
    pub lower: u128,
    /// `max <= 2^(2.5n-7)`, checked as `max^2 <= 2^(5n-14)`.
    pub upper_ok: bool,
    pub lower_ok: bool,
}

impl CatalanBounds {
    pub fn holds(&self) -> bool {
        self.lower_ok && self.upper_ok
    }
}

/// Extremes of `Π C_deg` over all triangulations of the `(n+2)`-gon.
pub fn catalan_bounds_report(n: usize) -> Result<CatalanBounds> {
    if n < 4 {
        return Err(HypersubError::InvalidConfig(format!("bounds need n >= 4, got {n}")));
    }
    let tris = polygon_triangulations(n + 2)?;
    let contribs: Vec<u128> = tris.iter().map(|t| triangulation_contribution(t, n + 2)).collect();
    let min = *contribs.iter().min().expect("nonempty");
    let max = *contribs.iter().max().expect("nonempty");
    let lower = 1u128 << (n - 2);
    let upper_ok = max
        .checked_mul(max)
        .is_some_and(|sq| (5 * n - 14) >= 128 || sq <= 1u128 << (5 * n - 14));
    Ok(CatalanBounds {
        n,
        min,
        max,
        lower,
        upper_ok,
        lower_ok: lower <= min,
    })
}
