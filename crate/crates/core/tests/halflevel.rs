use hypersub_core::cli::fixtures::{hexagon, planar5, polygon};
use hypersub_core::coherent::{coherent_tiling, sample_generic_weight};
use hypersub_core::enumeration::{enumerate_all, enumerate_baues, maximal_separated_collections, DEFAULT_CAP};
use hypersub_core::exactgeom::labels::parse_set;
use hypersub_core::halflevel::*;
use hypersub_core::tiles::{slice, validate_subdivision, HypersimplicialSubdivision, Tile};
use hypersub_core::HypersubError;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn tiles(list: &[(&str, &str)]) -> Vec<Tile> {
    list.iter().map(|(x, y)| Tile::parse_compact(x, y).unwrap()).collect()
}

fn set(s: &str) -> u64 {
    parse_set(s).unwrap()
}

fn example_t() -> HypersimplicialSubdivision {
    HypersimplicialSubdivision::new(
        2,
        tiles(&[
            ("", "124"),
            ("", "234"),
            ("", "1456"),
            ("1", "1246"),
            ("2", "1234"),
            ("4", "1245"),
            ("4", "2345"),
        ]),
    )
}

fn example_s() -> HypersimplicialSubdivision {
    HypersimplicialSubdivision::new(1, tiles(&[("", "124"), ("", "234"), ("", "145"), ("", "156")]))
}

#[test]
fn polygon_order_is_cyclic() {
    assert_eq!(polygon_order(&hexagon()).unwrap(), vec![1, 2, 3, 4, 5, 6]);
    assert_eq!(polygon_order(&polygon(7)).unwrap().len(), 7);
    assert!(matches!(polygon_order(&planar5()), Err(HypersubError::Unsupported(_))));
    let c = hypersub_core::counterexamples::cyclic(5, 3, None).unwrap();
    assert!(polygon_order(&c).is_err());
}

#[test]
fn example_t_down_map() {
    let cfg = hexagon();
    let t = example_t();
    assert!(validate_subdivision(&cfg, 2, &t.cells).unwrap().is_empty());
    let d = down_map(&cfg, &t).unwrap();
    assert_eq!(d.k, 1);
    assert_eq!(d, HalfLevelSubdivision::new(1, tiles(&[("", "124"), ("", "234"), ("", "1456")])));
    assert_eq!(plus_minus(&cfg, &t, Side::Minus).unwrap().len(), 3);
}

#[test]
fn example_s_up_map_and_holes() {
    let cfg = hexagon();
    let s = example_s();
    assert!(validate_subdivision(&cfg, 1, &s.cells).unwrap().is_empty());
    let u = up_map(&cfg, &s).unwrap();
    assert_eq!(u.tiles, s.cells);
    assert_eq!(upper_hole(&cfg, &u, set("1")).unwrap(), set("12456"));
    assert_eq!(upper_hole(&cfg, &u, set("2")).unwrap(), set("1234"));
    assert_eq!(upper_hole(&cfg, &u, set("3")).unwrap(), set("234"));
    assert_eq!(upper_hole(&cfg, &u, set("4")).unwrap(), set("12345"));
    assert_eq!(upper_hole(&cfg, &u, set("6")).unwrap(), set("156"));
    // the cell [5,1456] of the coarsest fibre element needs 4 in the hole of 5
    assert_eq!(upper_hole(&cfg, &u, set("5")).unwrap(), set("1456"));
    assert!(upper_hole(&cfg, &u, set("12")).is_err());
}

#[test]
fn trivial_subdivision_sides() {
    let cfg = hexagon();
    let triv = HypersimplicialSubdivision::trivial(6, 3);
    assert_eq!(plus_minus(&cfg, &triv, Side::Plus).unwrap(), tiles(&[("", "123456")]));
    assert_eq!(plus_minus(&cfg, &triv, Side::Minus).unwrap(), tiles(&[("", "123456")]));
    assert!(plus_minus(&planar5(), &HypersimplicialSubdivision::trivial(5, 2), Side::Plus).is_err());
}

#[test]
fn example_s_coarsest_fiber() {
    let cfg = hexagon();
    let u = up_map(&cfg, &example_s()).unwrap();
    let hat = coarsest_fiber(&cfg, &u).unwrap();
    let expect = tiles(&[
        ("", "124"),
        ("", "234"),
        ("", "145"),
        ("", "156"),
        ("1", "12456"),
        ("2", "1234"),
        ("4", "12345"),
        ("5", "1456"),
    ]);
    let mut maximal = hat.maximal_cells(&cfg);
    maximal.sort();
    let mut e = expect.clone();
    e.sort();
    assert_eq!(maximal, e);
    for edge in tiles(&[("3", "234"), ("6", "156")]) {
        assert!(hat.cells.contains(&edge));
        assert!(!maximal.contains(&edge));
    }
    assert_eq!(down_map(&cfg, &hat).unwrap(), u);
}

fn level2_hexagon() -> Vec<HypersimplicialSubdivision> {
    let cfg = hexagon();
    enumerate_all(&cfg, 2, DEFAULT_CAP)
        .unwrap()
        .into_iter()
        .filter(|s| *s != HypersimplicialSubdivision::trivial(6, 2))
        .collect()
}

#[test]
fn example_tprime_unique_refinement() {
    let cfg = hexagon();
    let s = up_map(&cfg, &example_s()).unwrap();
    let t = example_t();
    assert!(s.refines(&down_map(&cfg, &t).unwrap()));
    let tp = max_common_refinement(&cfg, &s, &t).unwrap();
    let all = level2_hexagon();
    let fibre: Vec<&HypersimplicialSubdivision> = all
        .iter()
        .filter(|x| down_map(&cfg, x).unwrap() == s && t.is_refined_by(x, &cfg))
        .collect();
    assert!(fibre.iter().any(|x| x.same_as(&tp, &cfg)));
    assert!(fibre.iter().all(|x| tp.is_refined_by(x, &cfg)));
    // the only element of the fibre below T
    assert_eq!(fibre.len(), 1);
    // frozen from the exhaustive fibre search above
    let names: Vec<String> = tp.maximal_cells(&cfg).iter().map(|c| c.to_string()).collect();
    assert_eq!(
        names,
        [
            "[∅,124]", "[∅,234]", "[∅,145]", "[∅,156]", "[1,1246]", "[1,1456]", "[2,1234]", "[4,1245]", "[4,2345]",
            "[5,1456]",
        ]
    );
}

#[test]
fn coarsest_of_down_image_does_not_refine_s_hat() {
    let cfg = hexagon();
    let s = up_map(&cfg, &example_s()).unwrap();
    let s_hat = coarsest_fiber(&cfg, &s).unwrap();
    let dt_hat = coarsest_fiber(&cfg, &down_map(&cfg, &example_t()).unwrap()).unwrap();
    assert!(!s_hat.is_refined_by(&dt_hat, &cfg));
}

#[test]
fn refinement_of_a_fibre_element_is_itself() {
    let cfg = hexagon();
    let s = up_map(&cfg, &example_s()).unwrap();
    let hat = coarsest_fiber(&cfg, &s).unwrap();
    let again = max_common_refinement(&cfg, &s, &hat).unwrap();
    assert!(again.same_as(&hat, &cfg));
    let bad = HalfLevelSubdivision::new(1, tiles(&[("", "123456")]));
    assert!(max_common_refinement(&cfg, &bad, &example_t()).is_err());
}

#[test]
fn fibre_maxima_by_exhaustive_search() {
    let cfg = hexagon();
    let all = level2_hexagon();
    let images: Vec<HalfLevelSubdivision> = all.iter().map(|x| down_map(&cfg, x).unwrap()).collect();
    let distinct: std::collections::BTreeSet<&HalfLevelSubdivision> = images.iter().collect();
    for s in distinct {
        let hat = coarsest_fiber(&cfg, s).unwrap();
        let members: Vec<&HypersimplicialSubdivision> =
            all.iter().zip(&images).filter(|(_, i)| *i == s).map(|(x, _)| x).collect();
        assert!(members.iter().any(|x| x.same_as(&hat, &cfg)));
        assert!(members.iter().all(|x| hat.is_refined_by(x, &cfg)));
    }
}

#[test]
fn tilings_commute_between_levels() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for n in 4..=7 {
        let cfg = polygon(n);
        let samples = if n == 7 { 10 } else { 25 };
        for _ in 0..samples {
            let w = sample_generic_weight(&cfg, &mut rng);
            let tiling = coherent_tiling(&cfg, &w).unwrap();
            for k in 1..n - 1 {
                let lo = slice(&tiling, n, k).unwrap();
                let hi = slice(&tiling, n, k + 1).unwrap();
                let u = up_map(&cfg, &lo).unwrap();
                assert_eq!(u, tiling_half_level(&tiling, k));
                assert_eq!(u, down_map(&cfg, &hi).unwrap(), "n={n} k={k}");
            }
        }
    }
}

#[test]
fn maps_preserve_order() {
    let cfg = hexagon();
    for k in 1..=3 {
        let p = enumerate_baues(&cfg, k, DEFAULT_CAP).unwrap();
        for (i, below) in p.below.iter().enumerate() {
            for &j in below {
                let (fine, coarse) = (&p.elements[j], &p.elements[i]);
                if k + 1 < 6 {
                    assert!(up_map(&cfg, fine).unwrap().refines(&up_map(&cfg, coarse).unwrap()));
                }
                if k >= 2 {
                    assert!(down_map(&cfg, fine).unwrap().refines(&down_map(&cfg, coarse).unwrap()));
                }
            }
        }
    }
}

#[test]
fn hexagon_level2_subdivisions_lift() {
    let cfg = hexagon();
    let fine: Vec<_> = maximal_separated_collections(&cfg, 1000)
        .unwrap()
        .into_iter()
        .map(|c| c.tiling)
        .collect();
    let mut missing = Vec::new();
    for s in level2_hexagon() {
        if lift_to_tiling(&cfg, &s, &fine).unwrap().is_none() {
            missing.push(s);
        }
    }
    assert!(missing.is_empty(), "{} subdivisions without a lift", missing.len());
}
