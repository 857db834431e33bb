use hypersub_core::cli::fixtures::{hexagon, hexagon_noncoherent, planar5, planar5_hypertriangulation, polygon};
use hypersub_core::counterexamples::cyclic;
use hypersub_core::exactgeom::labels::{all_subsets, card, labels_of, set_of, subsets_of_size};
use hypersub_core::exactgeom::{Sign, SignConstraint};
use hypersub_core::tiles::{
    points_separated, slice, tile_is_face_of, tiles_separated, validate_subdivision, validate_tiling, verify_not_separated,
    verify_separated, HypersimplicialSubdivision, Separation, SeparationOracle, Tile, Violation,
    ZonotopalTiling,
};
use hypersub_core::{Circuit, PointConfiguration};

/// Alternating circuits of a cyclic configuration over all (d+2)-chains.
fn alternating_pattern(n: usize, d: usize) -> Vec<Circuit> {
    let mut out: Vec<Circuit> = subsets_of_size((1u64 << n) - 1, d + 2)
        .into_iter()
        .map(|s| {
            let ls = labels_of(s);
            let pos = ls.iter().step_by(2).fold(0, |m, &l| m | 1 << (l - 1));
            Circuit::normalized(pos, s & !pos)
        })
        .collect();
    out.sort();
    out
}

fn all_tiles(n: usize) -> Vec<Tile> {
    let mut v = Vec::new();
    for y in all_subsets((1u64 << n) - 1) {
        for x in all_subsets(y) {
            v.push(Tile { x, y });
        }
    }
    v
}

#[test]
fn orientation_examples() {
    let tri = PointConfiguration::from_ints(2, &[&[0, 0], &[1, 0], &[0, 1]]).unwrap();
    assert_eq!(tri.orientation(&[1, 2, 3]).unwrap(), Sign::Pos);
    assert_eq!(tri.orientation(&[2, 1, 3]).unwrap(), Sign::Neg);
    assert_eq!(tri.orientation(&[1, 1, 3]).unwrap(), Sign::Zero);
    assert!(tri.orientation(&[1, 2, 4]).is_err());
    let c63 = cyclic(6, 3, None).unwrap();
    assert_eq!(c63.orientation(&[1, 2, 3, 4]).unwrap(), Sign::Pos);
    assert!(tri.circuits().is_empty());
}

#[test]
fn cyclic_circuits_alternate() {
    for d in 1..=5 {
        for n in d + 1..=8 {
            let cfg = cyclic(n, d, None).unwrap();
            assert_eq!(cfg.circuits(), alternating_pattern(n, d), "C({n},{d})");
        }
    }
    let c41 = cyclic(4, 1, None).unwrap();
    assert!(c41.circuits().contains(&Circuit::normalized(set_of(&[1, 3]), set_of(&[2]))));
}

#[test]
fn planar5_has_crossing_circuit() {
    let c = planar5().circuits();
    assert!(c.contains(&Circuit::normalized(set_of(&[1, 4]), set_of(&[3, 5]))));
}

#[test]
fn covector_witness_examples() {
    let cfg = hexagon();
    let mut cons = vec![SignConstraint::Zero, SignConstraint::Zero];
    cons.extend([SignConstraint::Neg; 4]);
    let f = cfg.covector_witness(&cons).unwrap().expect("edge 12 supports the hexagon");
    let sv = cfg.sign_vector(&f);
    assert_eq!(sv.to_string(), "00----");
    let mut cons = vec![SignConstraint::Zero; 3];
    cons.extend([SignConstraint::Pos; 3]);
    assert!(cfg.covector_witness(&cons).unwrap().is_none());
    let f = cfg.covector_witness(&[SignConstraint::Free; 6]).unwrap().unwrap();
    assert!(f.c.is_zero() && f.phi.iter().all(|x| x.is_zero()));
}

/// Circuits are orthogonal to covectors: no covector is >= 0 on C+ and <= 0
/// on C- with a strict sign on the support.
#[test]
fn circuit_covector_orthogonality() {
    for cfg in [hexagon(), planar5(), cyclic(7, 2, None).unwrap()] {
        let n = cfg.n();
        let circuits = cfg.circuits();
        let mut covectors = 0;
        for code in 0..3usize.pow(n as u32) {
            let mut c = code;
            let cons: Vec<SignConstraint> = (0..n)
                .map(|_| {
                    let s = [SignConstraint::Neg, SignConstraint::Zero, SignConstraint::Pos][c % 3];
                    c /= 3;
                    s
                })
                .collect();
            let Some(f) = cfg.covector_witness(&cons).unwrap() else { continue };
            covectors += 1;
            let sv = cfg.sign_vector(&f);
            for circ in &circuits {
                for (p, q) in [(circ.positive, circ.negative), (circ.negative, circ.positive)] {
                    let nonneg = labels_of(p).iter().all(|&l| sv.get(l) != Sign::Neg);
                    let nonpos = labels_of(q).iter().all(|&l| sv.get(l) != Sign::Pos);
                    let strict = labels_of(p | q).iter().any(|&l| sv.get(l) != Sign::Zero);
                    assert!(!(nonneg && nonpos && strict), "covector {sv} vs circuit {circ}");
                }
            }
        }
        assert!(covectors > 1);
    }
}

#[test]
fn planar_example_separation() {
    let cfg = planar5();
    let t = Tile::of(&[2], &[2, 3, 4, 5]);
    for other in [Tile::of(&[4], &[1, 2, 3, 4]), Tile::of(&[4], &[1, 2, 4, 5])] {
        match tiles_separated(&cfg, &t, &other).unwrap() {
            Separation::NotSeparated { circuit } => {
                assert_eq!(circuit, Circuit::normalized(set_of(&[1, 4]), set_of(&[3, 5])));
                assert!(verify_not_separated(&cfg, &t, &other, &circuit));
            }
            s => panic!("expected NOT_SEPARATED, got {s:?}"),
        }
    }
    let s = tiles_separated(&cfg, &t, &t).unwrap();
    let Separation::Separated { functional, .. } = s else { panic!() };
    assert!(verify_separated(&cfg, &t, &t, &functional));
}

#[test]
fn points_separated_examples() {
    let cfg = hexagon();
    assert!(!points_separated(&cfg, set_of(&[1, 3]), set_of(&[2, 4])).unwrap());
    assert!(points_separated(&cfg, set_of(&[1, 2]), set_of(&[2, 3])).unwrap());
    assert!(points_separated(&cfg, set_of(&[1, 2, 5]), set_of(&[1, 2, 5])).unwrap());
}

#[test]
fn full_tile_vs_faces_of_the_zonotope() {
    let cfg = hexagon();
    let full = Tile { x: 0, y: cfg.all() };
    for t in all_tiles(6) {
        let sep = tiles_separated(&cfg, &full, &t).unwrap().is_separated();
        // face of Z(A): a linear functional negative on X, zero on Y\X, positive off Y
        let cons: Vec<SignConstraint> = (0..6)
            .map(|i| {
                let b = 1u64 << i;
                if t.x & b != 0 {
                    SignConstraint::Neg
                } else if t.y & b != 0 {
                    SignConstraint::Zero
                } else {
                    SignConstraint::Pos
                }
            })
            .collect();
        let mut pts: Vec<Vec<_>> = (1..=6).map(|l| cfg.lifted(l)).collect();
        let mut c2 = cons.clone();
        pts.push(vec![hypersub_core::Rational::zero(); 3]);
        c2.push(SignConstraint::Zero);
        let face = hypersub_core::exactgeom::affine_witness(&pts, &c2).is_some();
        assert_eq!(sep, face, "{t}");
    }
}

#[test]
fn separation_is_symmetric_and_monotone() {
    for cfg in [hexagon(), planar5()] {
        let n = cfg.n();
        let oracle = SeparationOracle::new(&cfg);
        let tiles = all_tiles(n);
        // subtiles in the sense of faces of the zonotope tile
        let faces: Vec<Vec<Tile>> = tiles
            .iter()
            .map(|t| {
                all_subsets(t.free())
                    .into_iter()
                    .flat_map(|y| all_subsets(y).into_iter().map(move |x| (x, y)))
                    .map(|(x, y)| Tile { x: t.x | x, y: t.x | y })
                    .filter(|f| f != t && tile_is_face_of(&cfg, f, t))
                    .collect()
            })
            .collect();
        for (t1, f1) in tiles.iter().zip(&faces) {
            if t1.is_fine(&cfg) {
                assert_eq!(f1.len(), 3usize.pow(card(t1.free()) as u32) - 1);
            }
            for t2 in &tiles {
                let s = oracle.separated(t1, t2);
                assert_eq!(s, oracle.separated(t2, t1));
                if s {
                    for f in f1 {
                        assert!(oracle.separated(f, t2), "{f} vs {t2} under {t1}");
                    }
                }
            }
        }
    }
}

#[test]
fn circuit_scan_agrees_with_covectors() {
    for cfg in [planar5(), polygon(5), cyclic(5, 3, None).unwrap()] {
        let oracle = SeparationOracle::new(&cfg);
        let tiles = all_tiles(cfg.n());
        for (i, t1) in tiles.iter().enumerate() {
            for t2 in &tiles[i..] {
                match oracle.tiles_separated(&cfg, t1, t2).unwrap() {
                    Separation::Separated { functional, .. } => {
                        assert!(verify_separated(&cfg, t1, t2, &functional))
                    }
                    Separation::NotSeparated { circuit } => {
                        assert!(verify_not_separated(&cfg, t1, t2, &circuit))
                    }
                }
            }
        }
    }
}

#[test]
fn fine_tiles_separate_iff_vertices_do() {
    for cfg in [hexagon(), planar5()] {
        let oracle = SeparationOracle::new(&cfg);
        let tiles = all_tiles(cfg.n());
        for t1 in &tiles {
            for t2 in &tiles {
                let verts = t1
                    .vertices()
                    .iter()
                    .all(|&a| t2.vertices().iter().all(|&b| oracle.points_separated(a, b)));
                let sep = oracle.separated(t1, t2);
                if verts {
                    assert!(sep, "{t1} {t2}");
                }
                if t1.is_fine(&cfg) && t2.is_fine(&cfg) {
                    assert_eq!(sep, verts, "{t1} {t2}");
                }
            }
        }
    }
}

#[test]
fn dependent_pairs_refine_to_fine_pairs() {
    let cfg = planar5();
    let oracle = SeparationOracle::new(&cfg);
    let tiles = all_tiles(5);
    for k in 1..5 {
        let covering: Vec<&Tile> = tiles.iter().filter(|t| t.covers(k)).collect();
        for t1 in &covering {
            for t2 in &covering {
                if oracle.separated(t1, t2) || (t1.is_fine(&cfg) && t2.is_fine(&cfg)) {
                    continue;
                }
                let found = covering.iter().any(|s1| {
                    s1.is_subtile_of(t1)
                        && s1.is_fine(&cfg)
                        && covering.iter().any(|s2| {
                            s2.is_subtile_of(t2) && s2.is_fine(&cfg) && !oracle.separated(s1, s2)
                        })
                });
                assert!(found, "{t1} {t2} at level {k}");
            }
        }
    }
}

#[test]
fn validation_of_known_subdivisions() {
    let cfg = hexagon();
    let s = hexagon_noncoherent();
    assert!(validate_subdivision(&cfg, 2, &s.cells).unwrap().is_empty());
    let missing: Vec<Tile> = s.cells.iter().copied().filter(|t| *t != Tile::of(&[5], &[1, 4, 5, 6])).collect();
    let v = validate_subdivision(&cfg, 2, &missing).unwrap();
    assert!(matches!(v.as_slice(), [Violation::VolumeMismatch { .. }]), "{v:?}");
    let mut overlap = s.cells.clone();
    overlap.push(Tile::of(&[], &[1, 2, 4]));
    let v = validate_subdivision(&cfg, 2, &overlap).unwrap();
    assert!(v.iter().any(|x| matches!(x, Violation::ImproperIntersection(..))));
    for k in 1..6 {
        let t = HypersimplicialSubdivision::trivial(6, k);
        assert!(validate_subdivision(&cfg, k, &t.cells).unwrap().is_empty());
    }
    let p = planar5_hypertriangulation();
    assert!(validate_subdivision(&planar5(), 2, &p.cells).unwrap().is_empty());
    assert!(validate_subdivision(&cfg, 6, &s.cells).is_err());
}

#[test]
fn validation_of_tilings() {
    let cfg = hexagon();
    assert!(validate_tiling(&cfg, &ZonotopalTiling::trivial(6).tiles).unwrap().is_empty());
    let bad = [Tile::of(&[], &[1, 2, 3, 4]), Tile::of(&[], &[2, 3, 4, 5])];
    let v = validate_tiling(&cfg, &bad).unwrap();
    assert!(v.iter().any(|x| matches!(x, Violation::VolumeMismatch { .. })));
    assert!(v.iter().any(|x| matches!(x, Violation::ImproperIntersection(..))));
}

#[test]
fn slicing_and_complements() {
    let cfg = hexagon();
    let w = hypersub_core::coherent::weights_from_ints(&[5, -3, 8, 1, -7, 2]);
    let tiling = hypersub_core::coherent::coherent_tiling(&cfg, &w).unwrap();
    for k in 1..6 {
        let s = slice(&tiling, 6, k).unwrap();
        assert!(validate_subdivision(&cfg, k, &s.cells).unwrap().is_empty());
        let c = hypersub_core::tiles::complement(&s, 6);
        assert_eq!(c.k, 6 - k);
        assert!(validate_subdivision(&cfg, 6 - k, &c.cells).unwrap().is_empty());
        assert_eq!(hypersub_core::tiles::complement(&c, 6), s);
    }
    assert!(slice(&tiling, 6, 0).is_err());
    assert_eq!(card(tiling.tiles[0].free()), 3);
}
