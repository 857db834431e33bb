//! SVG pictures of planar hypersimplicial subdivisions.

use std::fmt::Write;

use crate::error::{HypersubError, Result};
use crate::exactgeom::labels::{card, labels_of};
use crate::exactgeom::{PointConfiguration, Rational};
use crate::tiles::HypersimplicialSubdivision;

const SCALE: f64 = 40.0;
const MARGIN: f64 = 30.0;

fn cross(o: &[Rational], a: &[Rational], b: &[Rational]) -> Rational {
    &(&(&a[0] - &o[0]) * &(&b[1] - &o[1])) - &(&(&a[1] - &o[1]) * &(&b[0] - &o[0]))
}

/// Vertices of the convex hull in counter-clockwise order.
fn convex_hull(mut pts: Vec<Vec<Rational>>) -> Vec<Vec<Rational>> {
    pts.sort();
    pts.dedup();
    if pts.len() < 3 {
        return pts;
    }
    let mut lower: Vec<Vec<Rational>> = Vec::new();
    for p in &pts {
        while lower.len() >= 2 && !cross(&lower[lower.len() - 2], &lower[lower.len() - 1], p).is_positive() {
            lower.pop();
        }
        lower.push(p.clone());
    }
    let mut upper: Vec<Vec<Rational>> = Vec::new();
    for p in pts.iter().rev() {
        while upper.len() >= 2 && !cross(&upper[upper.len() - 2], &upper[upper.len() - 1], p).is_positive() {
            upper.pop();
        }
        upper.push(p.clone());
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

fn gray(level: usize, top: usize) -> String {
    let v = 0x55 + (0xff - 0x55) * level.min(top) / top.max(1);
    format!("#{v:02x}{v:02x}{v:02x}")
}

/// SVG drawing of a level-`k` subdivision of a planar configuration: cells
/// shaded by `|X|` (darkest for `X = ∅`), level points labelled by their subsets.
pub fn render_svg(cfg: &PointConfiguration, sub: &HypersimplicialSubdivision) -> Result<String> {
    if cfg.dim != 2 {
        return Err(HypersubError::Unsupported(format!("rendering needs d = 2, got d = {}", cfg.dim)));
    }
    let k = sub.k;
    let cells = sub.maximal_cells(cfg);
    let mut points: Vec<(u64, Vec<Rational>)> = Vec::new();
    for t in &cells {
        for b in t.level_vertices(k) {
            if !points.iter().any(|p| p.0 == b) {
                points.push((b, cfg.level_point(b)));
            }
        }
    }
    points.sort_by_key(|p| p.0);
    let lo = |i: usize| points.iter().map(|p| p.1[i].floor()).min().unwrap_or_default();
    let hi = |i: usize| points.iter().map(|p| p.1[i].ceil()).max().unwrap_or_default();
    let (x0, x1, y0, y1) = (lo(0), hi(0), lo(1), hi(1));
    let f = |v: &num_bigint::BigInt| Rational::from_bigints(v.clone(), 1.into()).to_f64();
    let width = (f(&x1) - f(&x0)) * SCALE + 2.0 * MARGIN;
    let height = (f(&y1) - f(&y0)) * SCALE + 2.0 * MARGIN;
    let px = |p: &[Rational]| {
        (
            (p[0].to_f64() - f(&x0)) * SCALE + MARGIN,
            (f(&y1) - p[1].to_f64()) * SCALE + MARGIN,
        )
    };
    let mut out = String::new();
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width:.1}\" height=\"{height:.1}\" viewBox=\"0 0 {width:.1} {height:.1}\">"
    );
    let top = k.saturating_sub(1);
    for t in &cells {
        let hull = convex_hull(t.level_vertices(k).iter().map(|&b| cfg.level_point(b)).collect());
        let path: Vec<String> = hull
            .iter()
            .map(|p| {
                let (x, y) = px(p);
                format!("{x:.2},{y:.2}")
            })
            .collect();
        let _ = writeln!(
            out,
            "  <polygon points=\"{}\" fill=\"{}\" stroke=\"black\" stroke-width=\"1\"><title>{t}</title></polygon>",
            path.join(" "),
            gray(card(t.x), top)
        );
    }
    for (b, p) in &points {
        let (x, y) = px(p);
        let name: String = labels_of(*b).iter().map(|l| l.to_string()).collect::<Vec<_>>().join(",");
        let _ = writeln!(out, "  <circle cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"3\" fill=\"black\"/>");
        let _ = writeln!(
            out,
            "  <text x=\"{:.2}\" y=\"{:.2}\" font-size=\"11\" font-family=\"sans-serif\">{name}</text>",
            x + 4.0,
            y - 4.0
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}
