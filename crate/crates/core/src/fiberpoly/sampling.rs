//! Weight-space partition comparisons standing in for normal-fan equivalence.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coherent::{coherent_subdivision, coherent_tiling, format_weights, regular_subdivision, sample_generic_weight, WeightVector};
use crate::error::{HypersubError, Result};
use crate::exactgeom::labels::{all_subsets, card, full_set, labels_of, subsets_of_size};
use crate::exactgeom::{restrict_labels, PointConfiguration, Rational};
use crate::tiles::{check_level, HypersimplicialSubdivision, Tile};

/// Outcome of comparing two weight-space partitions on sampled pairs.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EquivalenceReport {
    pub samples: usize,
    /// Pairs inducing equal subdivisions on the left-hand side.
    pub equal_pairs: usize,
    pub violations: Vec<String>,
}

impl EquivalenceReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

fn normal(cfg: &PointConfiguration, k: usize, w: &[Rational]) -> Result<HypersimplicialSubdivision> {
    Ok(coherent_subdivision(cfg, k, w)?.normalized(cfg))
}

fn restrict_weight(j: u64, w: &[Rational]) -> WeightVector {
    (0..w.len()).filter(|i| j >> i & 1 == 1).map(|i| w[i].clone()).collect()
}

/// A generic weight and a partner: either independent or a perturbation at a random scale.
fn weight_pair(cfg: &PointConfiguration, rng: &mut ChaCha8Rng) -> (WeightVector, WeightVector) {
    let w1 = sample_generic_weight(cfg, rng);
    let w2 = match rng.gen_range(0..4) {
        0 => sample_generic_weight(cfg, rng),
        r => {
            let scale = Rational::from_int([0, 10, 10_000, 200_000][r]);
            w1.iter()
                .map(|x| x + &(&scale * &Rational::from_int(rng.gen_range(-10..=10))))
                .collect()
        }
    };
    (w1, w2)
}

fn run_pairs(
    cfg: &PointConfiguration,
    samples: usize,
    seed: u64,
    mut check: impl FnMut(&WeightVector, &WeightVector, &mut EquivalenceReport) -> Result<()>,
) -> Result<EquivalenceReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = EquivalenceReport::default();
    for _ in 0..samples {
        let (w1, w2) = weight_pair(cfg, &mut rng);
        check(&w1, &w2, &mut report)?;
        report.samples += 1;
    }
    Ok(report)
}

fn note(report: &mut EquivalenceReport, what: &str, w1: &[Rational], w2: &[Rational]) {
    report
        .violations
        .push(format!("{what}: w1 = ({}), w2 = ({})", format_weights(w1), format_weights(w2)));
}

/// Level-`k` partition against the common refinement of the regular
/// subdivisions of all `s`-subsets, `s = max(n-k+1, d+2)`; also checks that
/// equal coherent tilings give equal level-`k` slices.
pub fn normal_equivalence_sample(cfg: &PointConfiguration, k: usize, samples: usize, seed: u64) -> Result<EquivalenceReport> {
    let n = cfg.n();
    let d = cfg.dim;
    check_level(n, k)?;
    if k > d + 1 {
        return Err(HypersubError::LevelOutOfRange { k, n });
    }
    if samples == 0 {
        return Err(HypersubError::InvalidConfig("need at least one sample".into()));
    }
    let s = (n - k + 1).max(d + 2);
    let parts: Vec<(u64, PointConfiguration)> = subsets_of_size(cfg.all(), s)
        .into_iter()
        .map(|j| cfg.restrict(j).map(|c| (j, c)))
        .collect::<Result<_>>()?;
    run_pairs(cfg, samples, seed, |w1, w2, report| {
        let lhs = normal(cfg, k, w1)? == normal(cfg, k, w2)?;
        let mut rhs = true;
        for (j, sub) in &parts {
            let a = regular_subdivision(sub, &restrict_weight(*j, w1))?.normalized(sub);
            let b = regular_subdivision(sub, &restrict_weight(*j, w2))?.normalized(sub);
            if a != b {
                rhs = false;
                break;
            }
        }
        if lhs {
            report.equal_pairs += 1;
        }
        if lhs != rhs {
            note(report, &format!("level {k} equal = {lhs}, {s}-subsets equal = {rhs}"), w1, w2);
        }
        if coherent_tiling(cfg, w1)? == coherent_tiling(cfg, w2)? && !lhs {
            note(report, "equal tilings with different slices", w1, w2);
        }
        Ok(())
    })
}

/// Level `k+1` partition against the deletions at level `k`, with the full
/// level `k` added when `with_level` is set.
pub fn deletion_equivalence_sample(
    cfg: &PointConfiguration,
    k: usize,
    with_level: bool,
    samples: usize,
    seed: u64,
) -> Result<EquivalenceReport> {
    let n = cfg.n();
    check_level(n, k + 1)?;
    check_level(n - 1, k)?;
    let all = full_set(n);
    let dels: Vec<(u64, PointConfiguration)> = (0..n)
        .map(|i| all & !(1 << i))
        .map(|j| cfg.restrict(j).map(|c| (j, c)))
        .collect::<Result<_>>()?;
    run_pairs(cfg, samples, seed, |w1, w2, report| {
        let lhs = normal(cfg, k + 1, w1)? == normal(cfg, k + 1, w2)?;
        let mut rhs = !with_level || normal(cfg, k, w1)? == normal(cfg, k, w2)?;
        for (j, sub) in &dels {
            if !rhs {
                break;
            }
            rhs = normal(sub, k, &restrict_weight(*j, w1))? == normal(sub, k, &restrict_weight(*j, w2))?;
        }
        if lhs {
            report.equal_pairs += 1;
        }
        if lhs != rhs {
            note(report, &format!("level {} equal = {lhs}, deletions equal = {rhs}", k + 1), w1, w2);
        }
        Ok(())
    })
}

/// A tile where the conditions of the level-raising criterion disagree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Type1Violation {
    pub tile: Tile,
    /// Truth values of conditions (1) to (5); the last two only when checked.
    pub conditions: Vec<bool>,
}

/// Evaluates the five level-raising conditions for every tile `[X,Y]` with
/// `Y\X` a basis and `[X,Y]^(k+1)` covering level `k+1`. Conditions (1) to (3)
/// are compared when `X` is nonempty, (4) and (5) when `k > 1` and `|X| >= 2`.
pub fn type1_check(cfg: &PointConfiguration, k: usize, w: &[Rational]) -> Result<(usize, Vec<Type1Violation>)> {
    let n = cfg.n();
    check_level(n, k + 1)?;
    check_level(n - 1, k)?;
    let all = full_set(n);
    let upper = normal(cfg, k + 1, w)?;
    let lower = normal(cfg, k, w)?;
    let dels: Vec<HypersimplicialSubdivision> = (0..n)
        .map(|i| {
            let j = all & !(1 << i);
            normal(&cfg.restrict(j)?, k, &restrict_weight(j, w))
        })
        .collect::<Result<_>>()?;
    let d1 = cfg.dim + 1;
    let mut checked = 0;
    let mut bad = Vec::new();
    for f in subsets_of_size(all, d1) {
        if !cfg.is_independent(f) {
            continue;
        }
        for x in all_subsets(all & !f) {
            let t = Tile { x, y: x | f };
            if x == 0 || card(x) > k || card(t.y) < k + 2 {
                continue;
            }
            let c1 = upper.cells.contains(&t);
            let per: Vec<(bool, bool)> = labels_of(x)
                .into_iter()
                .map(|l| {
                    let bit = 1u64 << (l - 1);
                    let j = all & !bit;
                    let u = Tile { x: x & !bit, y: t.y & !bit };
                    let ru = Tile {
                        x: restrict_labels(j, u.x),
                        y: restrict_labels(j, u.y),
                    };
                    (dels[l - 1].cells.contains(&ru), lower.cells.contains(&u))
                })
                .collect();
            let c2 = per.iter().any(|&(a, b)| a && !b);
            let c3 = per.iter().all(|&(a, b)| a && !b);
            let mut conds = vec![c1, c2, c3];
            if k > 1 && card(x) >= 2 {
                let in_del = per.iter().filter(|p| p.0).count();
                conds.push(in_del >= 2);
                conds.push(in_del == per.len());
            }
            checked += 1;
            if conds.iter().any(|&c| c != c1) {
                bad.push(Type1Violation { tile: t, conditions: conds });
            }
        }
    }
    Ok((checked, bad))
}

/// Runs [`type1_check`] on seeded generic weights; returns tiles checked and violations.
pub fn type1_sample(cfg: &PointConfiguration, k: usize, samples: usize, seed: u64) -> Result<(usize, Vec<Type1Violation>)> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checked = 0;
    let mut bad = Vec::new();
    for _ in 0..samples {
        let w = sample_generic_weight(cfg, &mut rng);
        let (c, b) = type1_check(cfg, k, &w)?;
        checked += c;
        bad.extend(b);
    }
    Ok((checked, bad))
}
