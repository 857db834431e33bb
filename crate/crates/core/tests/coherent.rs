use std::collections::BTreeSet;

use hypersub_core::cli::fixtures::{hexagon, hexagon_noncoherent, hexagon_perturbed, planar5, polygon};
use hypersub_core::coherent::{
    coherence_of_tiles, coherent_subdivision, coherent_tiling, is_coherent, is_coherent_tiling,
    regular_subdivision, sample_generic_weight, separation_witness_w, tile_selector_weight,
    tiling_has_cell,
    tiles_imply, weights_from_ints, Coherence,
};
use hypersub_core::counterexamples::cyclic;
use hypersub_core::exactgeom::labels::{card, set_of, subsets_of_size};
use hypersub_core::tiles::{validate_subdivision, validate_tiling, Tile};
use hypersub_core::{HypersimplicialSubdivision, HypersubError, PointConfiguration, Rational};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn int_coords(cfg: &PointConfiguration, b: u64) -> (i128, i128) {
    let p = cfg.level_point(b);
    let f = |r: &Rational| r.to_string().parse::<i128>().unwrap();
    (f(&p[0]), f(&p[1]))
}

fn det3(m: [[i128; 3]; 3]) -> i128 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

fn det4(r: [[i128; 4]; 4]) -> i128 {
    let mut s = 0;
    for c in 0..4 {
        let minor: Vec<[i128; 3]> = (1..4)
            .map(|i| {
                let v: Vec<i128> = (0..4).filter(|&j| j != c).map(|j| r[i][j]).collect();
                [v[0], v[1], v[2]]
            })
            .collect();
        let d = det3([minor[0], minor[1], minor[2]]);
        s += if c % 2 == 0 { r[0][c] * d } else { -r[0][c] * d };
    }
    s
}

/// Lower facets of the lifted level-`k` configuration of a planar integer
/// configuration with integer heights `w_B = Σ w_i`, as sets of level labels.
fn lower_envelope_oracle(cfg: &PointConfiguration, k: usize, w: &[i64]) -> BTreeSet<Vec<u64>> {
    let labels = subsets_of_size(cfg.all(), k);
    let pts: Vec<[i128; 3]> = labels
        .iter()
        .map(|&b| {
            let (x, y) = int_coords(cfg, b);
            let h: i128 = (0..cfg.n()).filter(|i| b >> i & 1 == 1).map(|i| w[i] as i128).sum();
            [x, y, h]
        })
        .collect();
    let row = |p: [i128; 3]| [p[0], p[1], p[2], 1];
    let mut out = BTreeSet::new();
    let m = pts.len();
    for a in 0..m {
        for b in a + 1..m {
            for c in b + 1..m {
                let (p, q, r) = (pts[a], pts[b], pts[c]);
                let o2 = det3([[p[0], p[1], 1], [q[0], q[1], 1], [r[0], r[1], 1]]);
                if o2 == 0 {
                    continue;
                }
                let up = [p[0], p[1], p[2] + 1];
                let g = det4([row(p), row(q), row(r), row(up)]).signum();
                let mut on = Vec::new();
                let mut ok = true;
                for (i, s) in pts.iter().enumerate() {
                    let f = det4([row(p), row(q), row(r), row(*s)]).signum() * g;
                    if f < 0 {
                        ok = false;
                        break;
                    }
                    if f == 0 {
                        on.push(labels[i]);
                    }
                }
                if ok {
                    on.sort_unstable();
                    out.insert(on);
                }
            }
        }
    }
    out
}

fn cells_as_labels(cfg: &PointConfiguration, s: &HypersimplicialSubdivision) -> BTreeSet<Vec<u64>> {
    s.maximal_cells(cfg).iter().map(|t| t.level_vertices(s.k)).collect()
}

#[test]
fn affine_weights_give_trivial_tiling() {
    let cfg = hexagon();
    let w: Vec<Rational> = (1..=6).map(|i| {
        let p = cfg.point(i);
        &(&p[0] * &Rational::from_int(3)) - &p[1] + Rational::from_int(7)
    }).collect();
    let t = coherent_tiling(&cfg, &w).unwrap();
    assert_eq!(t.tiles, vec![Tile { x: 0, y: cfg.all() }]);
    for k in 1..6 {
        let s = coherent_subdivision(&cfg, k, &w).unwrap();
        assert!(s.same_as(&HypersimplicialSubdivision::trivial(6, k), &cfg));
    }
}

#[test]
fn pushing_one_hexagon_vertex() {
    let cfg = hexagon();
    let w = [1, 0, 0, 0, 0, 0];
    let wr = weights_from_ints(&w);
    let tiling = coherent_tiling(&cfg, &wr).unwrap();
    assert!(validate_tiling(&cfg, &tiling.tiles).unwrap().is_empty());
    let reg = regular_subdivision(&cfg, &wr).unwrap();
    let expect: BTreeSet<Vec<u64>> = [set_of(&[2, 3, 4, 5, 6]), set_of(&[1, 2, 6])]
        .iter()
        .map(|&y| Tile { x: 0, y }.level_vertices(1))
        .collect();
    assert_eq!(cells_as_labels(&cfg, &reg), expect);
    for k in 1..6 {
        let s = coherent_subdivision(&cfg, k, &wr).unwrap();
        assert_eq!(cells_as_labels(&cfg, &s), lower_envelope_oracle(&cfg, k, &w), "k={k}");
    }
    // frozen after agreeing with the envelope oracle at every level
    let tiles: Vec<String> = tiling.tiles.iter().map(|t| t.to_string()).collect();
    assert_eq!(
        tiles,
        [
            "[∅,126]", "[∅,23456]", "[2,1236]", "[23,12346]", "[234,123456]", "[6,1256]",
            "[26,12356]", "[236,123456]", "[56,12456]", "[256,123456]", "[456,123456]",
        ]
    );
}

#[test]
fn regular_subdivision_matches_lower_envelope() {
    let cfg = hexagon();
    let w = [0, 1, 1, 0, 1, 1];
    let reg = regular_subdivision(&cfg, &weights_from_ints(&w)).unwrap();
    assert_eq!(cells_as_labels(&cfg, &reg), lower_envelope_oracle(&cfg, 1, &w));
    assert_eq!(reg.maximal_cells(&cfg).len(), 2);
}

#[test]
fn slices_commute_with_level_envelopes() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for cfg in [hexagon(), hexagon_perturbed(), polygon(5), planar5(), polygon(7)] {
        for _ in 0..40 {
            let w: Vec<i64> = (0..cfg.n()).map(|_| rand::Rng::gen_range(&mut rng, -50..=50)).collect();
            let wr = weights_from_ints(&w);
            for k in 1..cfg.n() {
                let s = coherent_subdivision(&cfg, k, &wr).unwrap();
                assert_eq!(cells_as_labels(&cfg, &s), lower_envelope_oracle(&cfg, k, &w), "w={w:?} k={k}");
            }
        }
    }
}

#[test]
fn coherent_tilings_are_valid_and_one_piece() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for cfg in [hexagon(), cyclic(6, 3, None).unwrap(), cyclic(5, 1, None).unwrap()] {
        for _ in 0..10 {
            let w = sample_generic_weight(&cfg, &mut rng);
            let t = coherent_tiling(&cfg, &w).unwrap();
            assert!(t.is_fine(&cfg));
            assert!(validate_tiling(&cfg, &t.tiles).unwrap().is_empty());
            let frees: BTreeSet<u64> = t.tiles.iter().map(|t| t.free()).collect();
            assert_eq!(frees.len(), t.tiles.len());
            assert!(is_coherent_tiling(&cfg, &t).unwrap().is_coherent());
        }
    }
}

#[test]
fn selector_weights_select_their_tile() {
    let cfg = hexagon();
    let t = Tile::of(&[1], &[1, 2, 3]);
    let w = tile_selector_weight(&cfg, &t).unwrap();
    assert_eq!(w, weights_from_ints(&[-1, 0, 0, 1, 1, 1]));
    assert!(tiling_has_cell(&cfg, &coherent_tiling(&cfg, &w).unwrap(), &t));
    let line = cyclic(4, 1, None).unwrap();
    let w = tile_selector_weight(&line, &t).unwrap();
    assert!(tiling_has_cell(&line, &coherent_tiling(&line, &w).unwrap(), &t));
    let w = tile_selector_weight(&cfg, &Tile { x: 0, y: cfg.all() }).unwrap();
    assert!(w.iter().all(|x| x.is_zero()));
}

#[test]
fn separation_witness_on_planar_example() {
    let cfg = planar5();
    let (t1, t2) = (Tile::of(&[], &[2, 3, 4]), Tile::of(&[], &[2, 4, 5]));
    let w = separation_witness_w(&cfg, &t1, &t2).unwrap();
    let tiling = coherent_tiling(&cfg, &w).unwrap();
    assert!(tiling.contains(&t1) && tiling.contains(&t2));
    let err = separation_witness_w(&cfg, &Tile::of(&[2], &[2, 3, 4, 5]), &Tile::of(&[4], &[1, 2, 3, 4]));
    match err {
        Err(HypersubError::NotSeparated(c)) => {
            assert_eq!((c.positive, c.negative), (set_of(&[1, 4]), set_of(&[3, 5])));
        }
        other => panic!("expected a circuit, got {other:?}"),
    }
}

#[test]
fn noncoherent_hexagon_subdivision() {
    let cfg = hexagon();
    let s = hexagon_noncoherent();
    assert!(validate_subdivision(&cfg, 2, &s.cells).unwrap().is_empty());
    let Coherence::Incoherent(cert) = is_coherent(&cfg, &s).unwrap() else {
        panic!("subdivision reported coherent");
    };
    assert!(cert.verify(6));
    let w = |c: &[i64]| weights_from_ints(c);
    let cell = |x: &str, y: &str| Tile::parse_compact(x, y).unwrap();
    // each pair of cells around the three edges forces one inequality of the cycle
    assert!(tiles_imply(&cfg, &[cell("1", "1236"), cell("1", "1356")], &w(&[0, 1, -1, 0, 1, -1])).unwrap());
    assert!(tiles_imply(&cfg, &[cell("3", "1235"), cell("3", "2345")], &w(&[1, -1, 0, 1, -1, 0])).unwrap());
    assert!(tiles_imply(&cfg, &[cell("5", "1345"), cell("5", "1456")], &w(&[-1, 0, 1, -1, 0, 1])).unwrap());
    assert!(!tiles_imply(&cfg, &[cell("1", "1236"), cell("1", "1356")], &w(&[0, -1, 1, 0, -1, 1])).unwrap());
    let six: Vec<Tile> = [("1", "1236"), ("1", "1356"), ("3", "1235"), ("3", "2345"), ("5", "1345"), ("5", "1456")]
        .iter()
        .map(|(x, y)| cell(x, y))
        .collect();
    assert!(!coherence_of_tiles(&cfg, &six).unwrap().is_coherent());
    assert!(coherence_of_tiles(&cfg, &six[..4]).unwrap().is_coherent());
}

#[test]
fn trivial_and_example_s_are_coherent() {
    let cfg = hexagon();
    let triv = HypersimplicialSubdivision::trivial(6, 2);
    assert_eq!(is_coherent(&cfg, &triv).unwrap(), Coherence::Coherent(vec![Rational::zero(); 6]));
    let s = HypersimplicialSubdivision::new(
        1,
        [(&[1, 2, 4][..]), &[2, 3, 4], &[1, 4, 5], &[1, 5, 6]].iter().map(|y| Tile::of(&[], y)),
    );
    let Coherence::Coherent(w) = is_coherent(&cfg, &s).unwrap() else { panic!() };
    assert!(regular_subdivision(&cfg, &w).unwrap().same_as(&s, &cfg));
}

#[test]
fn coherence_round_trip_on_sampled_weights() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for cfg in [hexagon(), polygon(5), cyclic(6, 3, None).unwrap()] {
        for _ in 0..8 {
            let w = sample_generic_weight(&cfg, &mut rng);
            for k in 1..cfg.n() {
                let s = coherent_subdivision(&cfg, k, &w).unwrap();
                let Coherence::Coherent(w2) = is_coherent(&cfg, &s).unwrap() else { panic!() };
                assert!(coherent_subdivision(&cfg, k, &w2).unwrap().same_as(&s, &cfg));
                assert!(s.maximal_cells(&cfg).iter().all(|t| card(t.free()) == cfg.dim + 1));
            }
        }
    }
}
