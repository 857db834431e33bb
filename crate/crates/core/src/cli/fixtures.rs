//! Named example configurations with their bundled subdivisions.

use crate::counterexamples::cyclic;
use crate::error::{HypersubError, Result};
use crate::exactgeom::PointConfiguration;
use crate::tiles::{HypersimplicialSubdivision, Tile};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone)]
pub struct Fixture {
    pub name: String,
    pub config: PointConfiguration,
    pub subdivisions: Vec<(String, HypersimplicialSubdivision)>,
}

pub const NAMES: [&str; 6] = ["hexagon", "hexagon-perturbed", "pentagon", "square", "planar5", "cyclic-n-d"];

fn cells(list: &[(&str, &str)]) -> Vec<Tile> {
    list.iter()
        .map(|(x, y)| Tile::parse_compact(x, y).expect("fixture cell"))
        .collect()
}

/// Hexagon with the three long diagonals concurrent at the origin.
pub fn hexagon() -> PointConfiguration {
    PointConfiguration::from_ints(2, &[&[2, 0], &[1, 2], &[-1, 2], &[-2, 0], &[-1, -2], &[1, -2]]).unwrap()
}

/// Hexagon with vertex 1 moved off the diagonal through the origin.
pub fn hexagon_perturbed() -> PointConfiguration {
    PointConfiguration::from_ints(2, &[&[2, 1], &[1, 2], &[-1, 2], &[-2, 0], &[-1, -2], &[1, -2]]).unwrap()
}

/// Convex `n`-gon with vertices `(i, i^2)`, labeled in cyclic order.
pub fn polygon(n: usize) -> PointConfiguration {
    cyclic(n, 2, None).expect("polygon needs n >= 3")
}

pub fn square() -> PointConfiguration {
    PointConfiguration::from_ints(2, &[&[0, 0], &[1, 0], &[1, 1], &[0, 1]]).unwrap()
}

pub fn planar5() -> PointConfiguration {
    PointConfiguration::from_ints(2, &[&[1, 2], &[0, 4], &[4, 4], &[4, 0], &[0, 0]]).unwrap()
}

/// The non-coherent level-2 subdivision of the hexagon.
pub fn hexagon_noncoherent() -> HypersimplicialSubdivision {
    HypersimplicialSubdivision::new(
        2,
        cells(&[
            ("", "123"),
            ("", "135"),
            ("", "156"),
            ("", "345"),
            ("1", "1236"),
            ("1", "1356"),
            ("3", "1235"),
            ("3", "2345"),
            ("5", "1345"),
            ("5", "1456"),
        ]),
    )
}

/// The non-separated level-2 hypertriangulation of `planar5`.
pub fn planar5_hypertriangulation() -> HypersimplicialSubdivision {
    HypersimplicialSubdivision::new(
        2,
        cells(&[
            ("", "234"),
            ("", "245"),
            ("2", "1235"),
            ("2", "2345"),
            ("4", "1234"),
            ("4", "1245"),
            ("4", "1345"),
            ("5", "1245"),
        ]),
    )
}

/// Looks up a fixture by name; `cyclic-n-d` is parametric.
pub fn fixture(name: &str) -> Result<Fixture> {
    let mk = |config: PointConfiguration, subs: Vec<(&str, HypersimplicialSubdivision)>| Fixture {
        name: name.to_string(),
        config,
        subdivisions: subs.into_iter().map(|(s, d)| (s.to_string(), d)).collect(),
    };
    Ok(match name {
        "hexagon" => mk(hexagon(), vec![("noncoherent", hexagon_noncoherent())]),
        "hexagon-perturbed" => mk(hexagon_perturbed(), vec![]),
        "pentagon" => mk(polygon(5), vec![]),
        "square" => mk(square(), vec![]),
        "planar5" => mk(planar5(), vec![("hypertriangulation", planar5_hypertriangulation())]),
        _ => {
            let parts: Vec<&str> = name.split('-').collect();
            match parts.as_slice() {
                ["cyclic", n, d] => {
                    let n: usize = n.parse().map_err(|_| HypersubError::Parse(format!("bad fixture {name}")))?;
                    let d: usize = d.parse().map_err(|_| HypersubError::Parse(format!("bad fixture {name}")))?;
                    mk(cyclic(n, d, None)?, vec![])
                }
                ["polygon", n] => {
                    let n: usize = n.parse().map_err(|_| HypersubError::Parse(format!("bad fixture {name}")))?;
                    if n < 3 {
                        return Err(HypersubError::InvalidConfig("polygon needs n >= 3".into()));
                    }
                    mk(polygon(n), vec![])
                }
                _ => return Err(HypersubError::Parse(format!("unknown fixture {name:?}"))),
            }
        }
    })
}
