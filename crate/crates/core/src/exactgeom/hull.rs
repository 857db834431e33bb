//! Facets and volumes of convex hulls of small exact point sets.

use super::linalg::{dot, kernel, rank, rref, Matrix};
use super::Rational;

/// A facet `normal·x <= offset` of a full-dimensional hull, with the indices
/// of the input points lying on it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Facet {
    pub normal: Vec<Rational>,
    pub offset: Rational,
    pub members: Vec<usize>,
}

/// Affine rank of a point set (dimension of its affine hull plus one).
pub fn affine_rank(points: &[Vec<Rational>]) -> usize {
    if points.is_empty() {
        return 0;
    }
    let m: Matrix = points
        .iter()
        .map(|p| {
            let mut r = p.clone();
            r.push(Rational::one());
            r
        })
        .collect();
    rank(&m)
}

fn combinations(n: usize, k: usize, f: &mut dyn FnMut(&[usize])) {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, f: &mut dyn FnMut(&[usize])) {
        if cur.len() == k {
            f(cur);
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, f);
            cur.pop();
        }
    }
    let mut cur = Vec::with_capacity(k);
    rec(0, n, k, &mut cur, f);
}

/// All facets of the convex hull of `points`, which must be full-dimensional
/// in their ambient space.
pub fn facets(points: &[Vec<Rational>]) -> Vec<Facet> {
    let m = points.first().map_or(0, |p| p.len());
    if m == 0 || points.is_empty() {
        return Vec::new();
    }
    if m == 1 {
        let min = points.iter().map(|p| &p[0]).min().unwrap().clone();
        let max = points.iter().map(|p| &p[0]).max().unwrap().clone();
        let lo: Vec<usize> = (0..points.len()).filter(|&i| points[i][0] == min).collect();
        let hi: Vec<usize> = (0..points.len()).filter(|&i| points[i][0] == max).collect();
        return vec![
            Facet {
                normal: vec![Rational::from_int(-1)],
                offset: -min,
                members: lo,
            },
            Facet {
                normal: vec![Rational::one()],
                offset: max,
                members: hi,
            },
        ];
    }
    let mut found: Vec<Facet> = Vec::new();
    combinations(points.len(), m, &mut |idx| {
        if found
            .iter()
            .any(|f| idx.iter().all(|i| f.members.binary_search(i).is_ok()))
        {
            return;
        }
        let rows: Matrix = idx
            .iter()
            .map(|&i| {
                let mut r = points[i].clone();
                r.push(Rational::one());
                r
            })
            .collect();
        let k = kernel(&rows, m + 1);
        if k.len() != 1 {
            return;
        }
        let mut normal = k[0][..m].to_vec();
        let mut offset = -&k[0][m];
        let (mut pos, mut neg) = (false, false);
        let mut members = Vec::new();
        for (j, p) in points.iter().enumerate() {
            let v = dot(&normal, p) - &offset;
            match v.signum() {
                1 => pos = true,
                -1 => neg = true,
                _ => members.push(j),
            }
            if pos && neg {
                return;
            }
        }
        if pos {
            normal = normal.into_iter().map(|x| -x).collect();
            offset = -offset;
        }
        found.push(Facet {
            normal,
            offset,
            members,
        });
    });
    found.sort_by(|a, b| a.members.cmp(&b.members));
    found
}

/// Exact `m`-dimensional volume of the hull of full-dimensional `points` in `R^m`.
pub fn volume(points: &[Vec<Rational>]) -> Rational {
    let m = points.first().map_or(0, |p| p.len());
    if m == 0 {
        return Rational::one();
    }
    if m == 1 {
        let min = points.iter().map(|p| &p[0]).min().unwrap();
        let max = points.iter().map(|p| &p[0]).max().unwrap();
        return max - min;
    }
    let apex = &points[0];
    let mut total = Rational::zero();
    for f in facets(points) {
        let h = (dot(&f.normal, apex) - &f.offset).abs();
        if h.is_zero() {
            continue;
        }
        let j = f.normal.iter().position(|x| !x.is_zero()).unwrap();
        let proj: Vec<Vec<Rational>> = f
            .members
            .iter()
            .map(|&i| {
                points[i]
                    .iter()
                    .enumerate()
                    .filter(|(c, _)| *c != j)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let sub = volume(&proj);
        total += &(&h * &sub) / &f.normal[j].abs();
    }
    total / Rational::from(m)
}

/// Coordinates of `points` in an affine chart of their affine hull: the
/// pivot coordinates of the differences to the first point. The map is an
/// affine isomorphism onto a full-dimensional set.
pub fn intrinsic_coordinates(points: &[Vec<Rational>]) -> (Vec<usize>, Vec<Vec<Rational>>) {
    if points.is_empty() {
        return (Vec::new(), Vec::new());
    }
    let base = &points[0];
    let diffs: Matrix = points
        .iter()
        .map(|p| p.iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    let (_, pivots) = rref(&diffs);
    let coords = points
        .iter()
        .map(|p| pivots.iter().map(|&c| p[c].clone()).collect())
        .collect();
    (pivots, coords)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(v: &[&[i64]]) -> Vec<Vec<Rational>> {
        v.iter()
            .map(|p| p.iter().map(|&x| Rational::from_int(x)).collect())
            .collect()
    }

    #[test]
    fn square_with_interior_point() {
        let p = pts(&[&[0, 0], &[2, 0], &[2, 2], &[0, 2], &[1, 1], &[1, 0]]);
        let f = facets(&p);
        assert_eq!(f.len(), 4);
        assert!(f.iter().any(|x| x.members == vec![0, 1, 5]));
        assert_eq!(volume(&p), Rational::from_int(4));
    }

    #[test]
    fn simplex_volumes() {
        let tri = pts(&[&[0, 0], &[3, 0], &[0, 2]]);
        assert_eq!(volume(&tri), Rational::from_int(3));
        let tet = pts(&[&[0, 0, 0], &[1, 0, 0], &[0, 1, 0], &[0, 0, 1]]);
        assert_eq!(volume(&tet), Rational::new(1, 6));
        let cube: Vec<Vec<Rational>> = (0..8)
            .map(|i| (0..3).map(|b| Rational::from_int((i >> b) & 1)).collect())
            .collect();
        assert_eq!(volume(&cube), Rational::one());
        assert_eq!(facets(&cube).len(), 6);
    }

    #[test]
    fn intrinsic_chart() {
        let p = pts(&[&[1, 1, 1], &[2, 1, 0], &[1, 2, 0]]);
        let (piv, c) = intrinsic_coordinates(&p);
        assert_eq!(piv.len(), 2);
        assert_eq!(affine_rank(&c), 3);
    }
}
