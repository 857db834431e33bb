use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use hypersub_core::cli::fixtures::SCHEMA_VERSION;
use hypersub_core::cli::{fixture, render_svg};
use hypersub_core::coherent::{
    coherent_tiling, format_weights, is_coherent, parse_weights, sample_generic_weight, Coherence,
    WeightVector,
};
use hypersub_core::counterexamples::{self as cx, NonSeparatedExample};
use hypersub_core::enumeration::{
    enumerate_all, enumerate_baues, enumerate_fine, euler_characteristic, hypercatalan2, maximal_separated_collections,
    DEFAULT_CAP,
};
use hypersub_core::exactgeom::labels::fmt_set;
use hypersub_core::fiberpoly::{gkz, hypersecondary, normal_equivalence_sample};
use hypersub_core::halflevel::{
    coarsest_fiber, down_map, max_common_refinement, plus_minus, up_map, HalfLevelSubdivision, Side,
};
use hypersub_core::tiles::{
    slice, tiles_separated, CellsJson, HypersimplicialSubdivision, Separation, Tile, TileJson, ZonotopalTiling,
};
use hypersub_core::{HypersubError, PointConfiguration};

#[derive(Parser)]
#[command(name = "hypersub", about = "Hypersimplicial subdivisions, zonotopal tilings and tile separation")]
#[command(version = SCHEMA_VERSION)]
struct Cli {
    /// Seed for randomized commands.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Enumeration cap.
    #[arg(long, global = true, default_value_t = DEFAULT_CAP)]
    cap: usize,
    /// Write the result to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Emit JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Signed circuits of a configuration.
    Circuits { config: String },
    /// Separation verdict for two tiles given as `X:Y`.
    Separated {
        config: String,
        #[arg(long)]
        tile1: String,
        #[arg(long)]
        tile2: String,
    },
    /// Coherent zonotopal tiling for a weight vector (random when omitted).
    Tiling {
        config: String,
        #[arg(long)]
        weights: Option<String>,
    },
    /// Level-k slice of a tiling file or of the coherent tiling of a weight vector.
    Slice {
        config: String,
        #[arg(long)]
        k: usize,
        #[arg(long, conflicts_with = "weights")]
        tiling: Option<PathBuf>,
        #[arg(long)]
        weights: Option<String>,
    },
    /// Coherence verdict with a witness or an infeasibility certificate.
    Coherence {
        config: String,
        /// Subdivision file or the name of a bundled subdivision.
        #[arg(long)]
        subdivision: String,
    },
    /// All (or all fine) subdivisions at level k.
    Enumerate {
        config: String,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        fine: bool,
        /// Print only the count.
        #[arg(long)]
        count: bool,
    },
    /// Maximal separated collections of a polygon.
    SeparatedCollections {
        config: String,
        #[arg(long)]
        count: bool,
    },
    /// GKZ vector of a fine subdivision.
    Gkz {
        config: String,
        #[arg(long)]
        subdivision: String,
    },
    /// Vertices, f-vector and facet census of the level-k hypersecondary polytope.
    Hypersecondary {
        config: String,
        #[arg(long)]
        k: usize,
    },
    /// Sampled comparison of the level-k partition with the subset partitions.
    NormalEquiv {
        config: String,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    /// Euler characteristic of the Baues poset at level k.
    BauesEuler {
        config: String,
        #[arg(long)]
        k: usize,
    },
    /// Number of hypertriangulations of the second hypersimplicial level of an n-gon.
    Hypercatalan {
        #[arg(long)]
        n: usize,
    },
    /// Non-separated constructions.
    Counterexample {
        #[arg(value_enum)]
        which: Which,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long, default_value = "postnikov")]
        base: String,
        #[arg(long)]
        target_n: Option<usize>,
    },
    /// Half-level map of a polygon subdivision.
    Halflevel {
        config: String,
        #[arg(long)]
        subdivision: String,
        #[arg(long, value_enum, default_value = "up")]
        map: HalfMap,
        /// Also print the coarsest subdivision one level up with this image.
        #[arg(long)]
        coarsest: bool,
    },
    /// Maximal common refinement in the fibre of a half-level subdivision below a subdivision.
    Maxrefine {
        config: String,
        /// Half-level subdivision file (`{"k": .., "cells": ..}`).
        #[arg(long)]
        half: PathBuf,
        #[arg(long)]
        subdivision: String,
    },
    /// SVG picture of a planar subdivision.
    Render {
        config: String,
        #[arg(long)]
        subdivision: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Which {
    Postnikov,
    Planar,
    S0,
    Flipped,
    Propagate,
}

#[derive(Clone, Copy, ValueEnum)]
enum HalfMap {
    Up,
    Down,
    Plus,
    Minus,
}

fn load_config(s: &str) -> Result<PointConfiguration> {
    let p = Path::new(s);
    if p.is_file() {
        let text = fs::read_to_string(p).with_context(|| format!("reading {s}"))?;
        return Ok(PointConfiguration::from_json(&text)?);
    }
    Ok(fixture(s)?.config)
}

fn read_cells(path: &Path) -> Result<CellsJson> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| HypersubError::Parse(format!("{}: {e}", path.display())).into())
}

fn load_subdivision(config: &str, s: &str) -> Result<HypersimplicialSubdivision> {
    let p = Path::new(s);
    if p.is_file() {
        return Ok(HypersimplicialSubdivision::from_json(&read_cells(p)?)?);
    }
    if !Path::new(config).is_file() {
        if let Some((_, sub)) = fixture(config)?.subdivisions.into_iter().find(|(n, _)| n == s) {
            return Ok(sub);
        }
    }
    Err(HypersubError::Parse(format!("no subdivision file or bundled subdivision named {s:?}")).into())
}

fn cells_json(cells: &[Tile]) -> Value {
    json!(cells.iter().map(TileJson::from).collect::<Vec<_>>())
}

fn sub_json(sub: &HypersimplicialSubdivision) -> Value {
    serde_json::to_value(sub.to_json()).expect("cells serialize")
}

fn sub_text(cfg: &PointConfiguration, sub: &HypersimplicialSubdivision) -> String {
    let cells: Vec<String> = sub.maximal_cells(cfg).iter().map(|t| t.to_string()).collect();
    format!("level {}: {}", sub.k, cells.join(" "))
}

fn weights_or_random(cfg: &PointConfiguration, w: &Option<String>, seed: u64) -> Result<WeightVector> {
    match w {
        Some(s) => {
            let w = parse_weights(s)?;
            if w.len() != cfg.n() {
                bail!(HypersubError::InvalidConfig(format!("{} weights for {} points", w.len(), cfg.n())));
            }
            Ok(w)
        }
        None => Ok(sample_generic_weight(cfg, &mut ChaCha8Rng::seed_from_u64(seed))),
    }
}

/// A command result: human-readable text and its JSON form.
struct Output {
    text: String,
    json: Value,
}

fn out(text: impl Into<String>, json: Value) -> Result<Output> {
    Ok(Output { text: text.into(), json })
}

fn example_output(e: &NonSeparatedExample, label: &str) -> Result<Output> {
    let verdict = is_coherent(&e.config, &e.subdivision)?;
    let coherent = verdict.is_coherent();
    let text = format!(
        "{label}\n{}\ncertificate: NOT_SEPARATED {} {} circuit={}\ncoherence: {}",
        sub_text(&e.config, &e.subdivision),
        e.pair.0,
        e.pair.1,
        e.circuit,
        if coherent { "COHERENT" } else { "INCOHERENT" }
    );
    out(
        text,
        json!({
            "example": label,
            "config": serde_json::to_value(&e.config)?,
            "subdivision": sub_json(&e.subdivision),
            "pair": [TileJson::from(&e.pair.0), TileJson::from(&e.pair.1)],
            "circuit": e.circuit.to_string(),
            "coherent": coherent,
        }),
    )
}

fn coherence_output(cfg: &PointConfiguration, c: &Coherence) -> Result<Output> {
    match c {
        Coherence::Coherent(w) => out(
            format!("COHERENT w=({})", format_weights(w)),
            json!({"coherent": true, "weights": w.iter().map(|x| x.to_string()).collect::<Vec<_>>()}),
        ),
        Coherence::Incoherent(cert) => {
            if !cert.verify(cfg.n()) {
                bail!(HypersubError::Internal("infeasibility certificate failed to verify".into()));
            }
            out(
                format!("INCOHERENT\n{cert}"),
                json!({
                    "coherent": false,
                    "certificate": cert.terms.iter().map(|(y, r)| json!({"multiplier": y.to_string(), "row": r.to_string()})).collect::<Vec<_>>(),
                }),
            )
        }
    }
}

fn run(cli: &Cli) -> Result<Output> {
    match &cli.cmd {
        Cmd::Circuits { config } => {
            let cfg = load_config(config)?;
            let cs = cfg.circuits();
            let lines: Vec<String> = cs.iter().map(|c| c.to_string()).collect();
            out(lines.join("\n"), json!(lines))
        }
        Cmd::Separated { config, tile1, tile2 } => {
            let cfg = load_config(config)?;
            let (a, b) = (Tile::parse_literal(tile1)?, Tile::parse_literal(tile2)?);
            match tiles_separated(&cfg, &a, &b)? {
                Separation::Separated { covector, functional } => out(
                    format!("SEPARATED covector={covector}"),
                    json!({"separated": true, "covector": covector.to_string(), "functional": serde_json::to_value(functional)?}),
                ),
                Separation::NotSeparated { circuit } => out(
                    format!("NOT_SEPARATED circuit={circuit}"),
                    json!({"separated": false, "circuit": {"positive": fmt_set(circuit.positive), "negative": fmt_set(circuit.negative)}}),
                ),
            }
        }
        Cmd::Tiling { config, weights } => {
            let cfg = load_config(config)?;
            let w = weights_or_random(&cfg, weights, cli.seed)?;
            let t = coherent_tiling(&cfg, &w)?;
            let names: Vec<String> = t.tiles.iter().map(|x| x.to_string()).collect();
            out(
                format!("w=({})\n{}", format_weights(&w), names.join(" ")),
                serde_json::to_value(t.to_json())?,
            )
        }
        Cmd::Slice { config, k, tiling, weights } => {
            let cfg = load_config(config)?;
            let t = match tiling {
                Some(p) => ZonotopalTiling::from_json(&read_cells(p)?)?,
                None => coherent_tiling(&cfg, &weights_or_random(&cfg, weights, cli.seed)?)?,
            };
            let s = slice(&t, cfg.n(), *k)?;
            out(sub_text(&cfg, &s), sub_json(&s))
        }
        Cmd::Coherence { config, subdivision } => {
            let cfg = load_config(config)?;
            let s = load_subdivision(config, subdivision)?;
            coherence_output(&cfg, &is_coherent(&cfg, &s)?)
        }
        Cmd::Enumerate { config, k, fine, count } => {
            let cfg = load_config(config)?;
            let subs = if *fine { enumerate_fine(&cfg, *k, cli.cap)? } else { enumerate_all(&cfg, *k, cli.cap)? };
            if *count {
                return out(subs.len().to_string(), json!(subs.len()));
            }
            let text: Vec<String> = subs.iter().map(|s| sub_text(&cfg, s)).collect();
            out(text.join("\n"), json!(subs.iter().map(sub_json).collect::<Vec<_>>()))
        }
        Cmd::SeparatedCollections { config, count } => {
            let cfg = load_config(config)?;
            let cs = maximal_separated_collections(&cfg, cli.cap)?;
            if *count {
                return out(cs.len().to_string(), json!(cs.len()));
            }
            let text: Vec<String> = cs
                .iter()
                .map(|c| c.sets.iter().map(|&s| fmt_set(s)).collect::<Vec<_>>().join(" "))
                .collect();
            out(
                text.join("\n"),
                json!(cs.iter().map(|c| json!({"sets": c.sets.iter().map(|&s| fmt_set(s)).collect::<Vec<_>>(), "tiling": serde_json::to_value(c.tiling.to_json()).unwrap()})).collect::<Vec<_>>()),
            )
        }
        Cmd::Gkz { config, subdivision } => {
            let cfg = load_config(config)?;
            let g = gkz(&cfg, &load_subdivision(config, subdivision)?)?;
            let v: Vec<String> = g.iter().map(|x| x.to_string()).collect();
            out(format!("({})", v.join(", ")), json!(v))
        }
        Cmd::Hypersecondary { config, k } => {
            let cfg = load_config(config)?;
            let h = hypersecondary(&cfg, *k, cli.cap)?;
            let f = h.skeleton.f_vector();
            let census = h.skeleton.facet_census();
            let noncoherent = h.fine.iter().filter(|x| !x.2).count();
            let census_text: Vec<String> = census.iter().map(|(a, b)| format!("{b}x{a}")).collect();
            out(
                format!(
                    "dim {}\nvertices {}\nfacets {}\nf-vector {:?}\nfacet census {}\nfine {} (noncoherent {noncoherent})",
                    h.skeleton.dim,
                    h.skeleton.vertices.len(),
                    h.skeleton.facets.len(),
                    f,
                    census_text.join(" "),
                    h.fine.len()
                ),
                json!({
                    "dim": h.skeleton.dim,
                    "vertices": h.skeleton.vertices.iter().map(|v| v.iter().map(|x| x.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>(),
                    "facets": h.skeleton.facets,
                    "f_vector": f,
                    "facet_census": census.iter().map(|(a, b)| (a.to_string(), json!(*b))).collect::<serde_json::Map<_, _>>(),
                    "fine": h.fine.len(),
                    "noncoherent": noncoherent,
                }),
            )
        }
        Cmd::NormalEquiv { config, k, samples } => {
            let cfg = load_config(config)?;
            let r = normal_equivalence_sample(&cfg, *k, *samples, cli.seed)?;
            let mut text = format!("samples {} equal {} violations {}", r.samples, r.equal_pairs, r.violations.len());
            for v in &r.violations {
                text.push_str(&format!("\n  {v}"));
            }
            out(text, json!({"samples": r.samples, "equal_pairs": r.equal_pairs, "violations": r.violations}))
        }
        Cmd::BauesEuler { config, k } => {
            let cfg = load_config(config)?;
            let p = enumerate_baues(&cfg, *k, cli.cap)?;
            let chi = euler_characteristic(&p);
            out(
                format!("elements {} minimal {} euler {chi}", p.len(), p.minimal().len()),
                json!({"elements": p.len(), "minimal": p.minimal().len(), "euler": chi}),
            )
        }
        Cmd::Hypercatalan { n } => {
            let v = hypercatalan2(*n)?;
            out(v.to_string(), json!(v.to_string()))
        }
        Cmd::Counterexample { which, d, k, base, target_n } => counterexample(*which, *d, *k, base, *target_n),
        Cmd::Halflevel { config, subdivision, map, coarsest } => {
            let cfg = load_config(config)?;
            let s = load_subdivision(config, subdivision)?;
            let h = match map {
                HalfMap::Up => up_map(&cfg, &s)?,
                HalfMap::Down => down_map(&cfg, &s)?,
                HalfMap::Plus => HalfLevelSubdivision::new(s.k, plus_minus(&cfg, &s, Side::Plus)?),
                HalfMap::Minus => HalfLevelSubdivision::new(s.k, plus_minus(&cfg, &s, Side::Minus)?),
            };
            let names: Vec<String> = h.tiles.iter().map(|t| t.to_string()).collect();
            let mut text = format!("half level {}: {}", h.k, names.join(" "));
            let mut j = json!({"k": h.k, "cells": cells_json(&h.tiles)});
            if *coarsest {
                let c = coarsest_fiber(&cfg, &h)?;
                text.push_str(&format!("\ncoarsest {}", sub_text(&cfg, &c)));
                j["coarsest"] = sub_json(&c);
            }
            out(text, j)
        }
        Cmd::Maxrefine { config, half, subdivision } => {
            let cfg = load_config(config)?;
            let cj = read_cells(half)?;
            let hk = cj.k.ok_or_else(|| HypersubError::Parse("half-level file needs k".into()))?;
            let tiles = cj.cells.iter().map(|c| c.to_tile()).collect::<std::result::Result<Vec<_>, _>>()?;
            let h = HalfLevelSubdivision::new(hk, tiles);
            let t = load_subdivision(config, subdivision)?;
            let r = max_common_refinement(&cfg, &h, &t)?;
            out(sub_text(&cfg, &r), sub_json(&r))
        }
        Cmd::Render { config, subdivision } => {
            let cfg = load_config(config)?;
            let s = load_subdivision(config, subdivision)?;
            let svg = render_svg(&cfg, &s)?;
            out(svg.clone(), json!({"svg": svg}))
        }
    }
}

fn need(v: Option<usize>, name: &str) -> Result<usize> {
    v.ok_or_else(|| anyhow!(Usage(format!("--{name} is required"))))
}

fn counterexample(which: Which, d: Option<usize>, k: Option<usize>, base: &str, target_n: Option<usize>) -> Result<Output> {
    match which {
        Which::Postnikov => example_output(&cx::postnikov_example()?, "postnikov"),
        Which::Planar => example_output(&cx::planar_example()?, "planar"),
        Which::S0 => {
            let d = need(d, "d")?;
            let t = cx::s0(d)?;
            let names: Vec<String> = t.tiles.iter().map(|x| x.to_string()).collect();
            out(format!("{} tiles\n{}", t.tiles.len(), names.join(" ")), serde_json::to_value(t.to_json())?)
        }
        Which::Flipped => example_output(&cx::flipped_slice(need(d, "d")?, need(k, "k")?)?, "flipped"),
        Which::Propagate => {
            if base != "postnikov" {
                bail!(Usage(format!("unknown propagation base {base:?}; only postnikov is available")));
            }
            let target = need(target_n, "target-n")?;
            let k = need(k, "k")?;
            let chain = cx::propagate_chain(target)?;
            let sub = chain
                .into_iter()
                .find(|s| s.k == k)
                .ok_or_else(|| HypersubError::LevelOutOfRange { k, n: target })?;
            let e = cx::certify_example(cx::cyclic(target, 1, None)?, sub)?;
            example_output(&e, "propagate")
        }
    }
}

#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn error_kind(e: &anyhow::Error) -> &'static str {
    match e.downcast_ref::<HypersubError>() {
        Some(HypersubError::InvalidConfig(_)) => "invalid_config",
        Some(HypersubError::LabelOutOfRange { .. }) => "label_out_of_range",
        Some(HypersubError::InvalidTile(_)) => "invalid_tile",
        Some(HypersubError::LevelOutOfRange { .. }) => "level_out_of_range",
        Some(HypersubError::CapExceeded(_)) => "cap_exceeded",
        Some(HypersubError::NotSeparated(_)) => "not_separated",
        Some(HypersubError::InvalidSubdivision(_)) => "invalid_subdivision",
        Some(HypersubError::Unsupported(_)) => "unsupported",
        Some(HypersubError::Parse(_)) => "parse",
        Some(HypersubError::Internal(_)) => "internal",
        None if e.downcast_ref::<Usage>().is_some() => "usage",
        None => "io",
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|o| {
        let mut body = if cli.json { serde_json::to_string_pretty(&o.json)? } else { o.text };
        if !body.ends_with('\n') {
            body.push('\n');
        }
        match &cli.out {
            Some(p) => fs::write(p, body).with_context(|| format!("writing {}", p.display()))?,
            None => print!("{body}"),
        }
        Ok(())
    });
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let kind = error_kind(&e);
            if cli.json {
                eprintln!("{}", json!({"error": kind, "message": format!("{e:#}")}));
            } else {
                eprintln!("error: {e:#}");
            }
            ExitCode::from(if kind == "usage" { 2 } else { 1 })
        }
    }
}
