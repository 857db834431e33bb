use hypersub_core::cli::fixtures::{hexagon, polygon, square};
use hypersub_core::coherent::{coherent_subdivision, is_coherent, sample_generic_weight, Coherence};
use hypersub_core::enumeration::*;
use hypersub_core::exactgeom::labels::card;
use hypersub_core::exactgeom::PointConfiguration;
use hypersub_core::tiles::{complement, validate_subdivision, HypersimplicialSubdivision};
use hypersub_core::HypersubError;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn triangle() -> PointConfiguration {
    PointConfiguration::from_ints(2, &[&[0, 0], &[1, 0], &[0, 1]]).unwrap()
}

#[test]
fn hypercatalan_table() {
    let v: Vec<u128> = (3..=10).map(|n| hypercatalan2(n).unwrap()).collect();
    assert_eq!(v, vec![1, 2, 10, 70, 574, 5176, 49656, 497640]);
    assert!(hypercatalan2(2).is_err());
}

#[test]
fn hexagon_contribution_classes() {
    // 2 zigzag-free "triangle" classes contribute 8, 6 zigzags 4, 6 stars 5
    let tris = polygon_triangulations(6).unwrap();
    let mut counts = std::collections::BTreeMap::new();
    for t in &tris {
        *counts.entry(triangulation_contribution(t, 6)).or_insert(0) += 1;
    }
    assert_eq!(counts.into_iter().collect::<Vec<_>>(), vec![(4, 6), (5, 6), (8, 2)]);
}

#[test]
fn catalan_bounds() {
    let r = catalan_bounds_report(4).unwrap();
    assert_eq!((r.min, r.max, r.lower), (4, 8, 4));
    assert!(r.holds());
    for n in 4..=10 {
        let r = catalan_bounds_report(n).unwrap();
        assert!(r.holds(), "n={n}");
        assert_eq!(zigzag_contribution(n + 2), 1 << (n - 2), "zigzag n={n}");
        assert_eq!(r.min, 1 << (n - 2));
        assert_eq!(star_contribution(n + 2), catalan(n - 1));
    }
    assert!(catalan_bounds_report(3).is_err());
}

#[test]
fn fine_counts_match_hypercatalan() {
    for n in 3..=6 {
        let cfg = polygon(n);
        let subs = enumerate_fine(&cfg, 2.min(n - 1), DEFAULT_CAP).unwrap();
        let expect = hypercatalan2(n).unwrap() as usize;
        assert_eq!(subs.len(), expect, "n={n}");
        for s in &subs {
            assert!(validate_subdivision(&cfg, s.k, &s.cells).unwrap().is_empty());
        }
    }
}

#[test]
fn simplex_has_one_hypertriangulation() {
    let cfg = triangle();
    for k in 1..3 {
        assert_eq!(enumerate_fine(&cfg, k, 10).unwrap().len(), 1);
    }
}

#[test]
fn cap_and_level_errors() {
    let cfg = polygon(5);
    assert!(matches!(enumerate_fine(&cfg, 2, 3), Err(HypersubError::CapExceeded(3))));
    assert!(enumerate_fine(&cfg, 0, 10).is_err());
    assert!(enumerate_fine(&cfg, 5, 10).is_err());
}

#[test]
fn hexagon_level_symmetry_and_coherent_members() {
    let cfg = hexagon();
    let fine2 = enumerate_fine(&cfg, 2, DEFAULT_CAP).unwrap();
    assert_eq!(fine2.len(), 70);
    let fine4 = enumerate_fine(&cfg, 4, DEFAULT_CAP).unwrap();
    let mut mirrored: Vec<HypersimplicialSubdivision> = fine4.iter().map(|s| complement(s, 6)).collect();
    mirrored.sort();
    assert_eq!(mirrored, fine2);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..5 {
        let w = sample_generic_weight(&cfg, &mut rng);
        let s = coherent_subdivision(&cfg, 2, &w).unwrap().normalized(&cfg);
        assert!(fine2.contains(&s));
    }
    let noncoherent = fine2
        .iter()
        .filter(|s| matches!(is_coherent(&cfg, s).unwrap(), Coherence::Incoherent(_)))
        .count();
    assert_eq!(noncoherent, 4);
}

#[test]
fn pentagon_baues_is_a_circle() {
    let p = enumerate_baues(&polygon(5), 1, DEFAULT_CAP).unwrap();
    assert_eq!(p.len(), 10);
    assert_eq!(p.minimal().len(), 5);
    assert_eq!(euler_characteristic(&p), 0);
}

#[test]
fn hexagon_k1_baues_is_a_sphere() {
    let p = enumerate_baues(&hexagon(), 1, DEFAULT_CAP).unwrap();
    assert_eq!(p.len(), 44);
    assert_eq!(p.minimal().len(), 14);
    assert_eq!(euler_characteristic(&p), 2);
}

#[test]
fn single_element_poset() {
    let p = BauesPoset {
        k: 1,
        elements: vec![HypersimplicialSubdivision::trivial(3, 1)],
        below: vec![vec![]],
    };
    assert_eq!(euler_characteristic(&p), 1);
}

#[test]
fn separated_collection_counts() {
    let tri = triangle();
    assert_eq!(independent_subset_count(&tri), 8);
    let c = maximal_separated_collections(&tri, 10).unwrap();
    assert_eq!(c.len(), 1);
    assert_eq!(c[0].sets.len(), 8);
    assert_eq!(maximal_separated_collections(&square(), 100).unwrap().len(), 2);
    assert_eq!(maximal_separated_collections(&polygon(4), 100).unwrap().len(), 2);
    assert_eq!(maximal_separated_collections(&polygon(5), 100).unwrap().len(), 10);
    let hex = maximal_separated_collections(&hexagon(), 1000).unwrap();
    assert_eq!(hex.len(), 148);
    let m = independent_subset_count(&hexagon());
    assert_eq!(m, 42);
    for c in &hex {
        assert!(c.tiling.is_fine(&hexagon()));
        assert_eq!(c.tiling.tiles.iter().filter(|t| card(t.free()) == 3).count(), 20);
    }
}

#[test]
fn heptagon_fine_count() {
    assert_eq!(count_fine(&polygon(7), 2, DEFAULT_CAP).unwrap(), 574);
}

#[test]
fn hexagon_k2_baues_is_a_sphere() {
    let cfg = hexagon();
    let p = enumerate_baues(&cfg, 2, DEFAULT_CAP).unwrap();
    let minimal = p.minimal();
    assert_eq!(minimal.len(), 70);
    assert!(minimal.iter().all(|&i| p.elements[i].is_fine(&cfg)));
    assert_eq!(euler_characteristic(&p), 2);
}
