//! `kronord` — exact computations with lattices over the Kronecker order
//! `A = O[X,Y]/(X², Y²)`.
//!
//! Subcommands wrap the core engine: Heller lattices and their reductions,
//! syzygy (translate) orbits with isomorphism certificates, almost split
//! sequences, verified windows of the stable Auslander–Reiten component of
//! the Heller lattices, tree-class infeasibility certificates, and string/
//! band decomposition of modules over the residue field.
//!
//! Exit codes: 0 on success, 1 when a computation or verification fails,
//! 2 on usage errors (bad flags, unparseable labels or files).

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use kronord_core::ars::{almost_split, iso_test, split_lattice, AlmostSplitSeq};
use kronord_core::heller::{heller_label, tau_iterate};
use kronord_core::linalg::KMatrix;
use kronord_core::modk::{decompose, Decomposition, ModK, ModLabel};
use kronord_core::order::Lattice;
use kronord_core::quiver::{
    build_band_component, build_component, emit_dot, emit_json, tree_class_ledger,
    verify_za_infinity, ComponentWindow, TreeShape,
};
use kronord_core::{Config, Dvr, Error};

#[derive(Parser)]
#[command(
    name = "kronord",
    version,
    about = "Exact Auslander–Reiten computations for lattices over the Kronecker order",
    long_about = "Exact computations with lattices over the Kronecker order A = O[X,Y]/(X^2,Y^2), \
                  where O is a discrete valuation ring with odd residue characteristic p: Heller \
                  lattices, syzygy orbits, almost split sequences, verified component windows of \
                  the stable Auslander-Reiten quiver, and tree-class infeasibility certificates. \
                  All results are certified by exact arithmetic over Z localized at p."
)]
struct Cli {
    #[command(flatten)]
    opts: GlobalOpts,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct GlobalOpts {
    /// Residue characteristic (an odd prime; default 3)
    #[arg(long, global = true)]
    p: Option<u64>,
    /// Initial epsilon-adic lifting precision (default 20)
    #[arg(long, global = true)]
    precision: Option<u32>,
    /// Precision ceiling for lifting retries (default 60)
    #[arg(long, global = true)]
    precision_max: Option<u32>,
    /// Random samples per isomorphism test (default 32)
    #[arg(long, global = true)]
    iso_samples: Option<u32>,
    /// RNG seed; all commands are deterministic given the seed (default 0)
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output format (default text; dot applies to quiver windows only)
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Worker threads for window expansion (default 1)
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// TOML config file; command-line flags override its values
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Text,
    Json,
    Dot,
}

/// Optional values accepted in a `--config` TOML file. Flags win.
#[derive(Deserialize, Default)]
#[serde(default, deny_unknown_fields)]
struct FileConfig {
    p: Option<u64>,
    precision: Option<u32>,
    precision_max: Option<u32>,
    iso_samples: Option<u32>,
    seed: Option<u64>,
    jobs: Option<usize>,
    format: Option<Format>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Heller lattice of an indecomposable module over the residue field
    Heller {
        /// Module label: H:m, V:n, B:lambda:n or Binf:n
        label: String,
    },
    /// Iterate the translate (syzygy) and certify the orbit
    Tau {
        /// Module label (starts from its Heller lattice) or lattice JSON file
        input: String,
        /// Number of iterations
        #[arg(short, long, default_value_t = 1)]
        n: usize,
    },
    /// Almost split sequence ending at a lattice, with split middle
    Ars {
        /// Module label (starts from its Heller lattice) or lattice JSON file
        input: String,
    },
    /// Materialize and verify a window of the Heller component
    Quiver {
        /// Leftmost boundary column
        #[arg(allow_negative_numbers = true)]
        n_min: i64,
        /// Rightmost boundary column
        #[arg(allow_negative_numbers = true)]
        n_max: i64,
        /// Number of rows to materialize
        #[arg(long, default_value_t = 3)]
        depth: usize,
        /// Seed with a band Heller lattice (B:lambda:n or Binf:n) instead of
        /// the boundary row; requires --experimental
        #[arg(long)]
        band: Option<String>,
        /// Allow expansion of unverified band-seeded components
        #[arg(long)]
        experimental: bool,
    },
    /// Infeasibility certificate for a Euclidean tree class (E6, E7, E8)
    Treeclass { shape: String },
    /// Decompose a module over the residue field given as a JSON file
    Decompose { file: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Parse(_) | Error::InvalidConfig(_) | Error::ProjectiveInput(_) => 2,
                _ => 1,
            })
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    let (cfg, format) = resolve_config(&cli.opts)?;
    let dvr = cfg.dvr()?;
    match cli.cmd {
        Cmd::Heller { label } => cmd_heller(&dvr, format, &label),
        Cmd::Tau { input, n } => cmd_tau(&dvr, &cfg, format, &input, n),
        Cmd::Ars { input } => cmd_ars(&dvr, &cfg, format, &input),
        Cmd::Quiver {
            n_min,
            n_max,
            depth,
            band,
            experimental,
        } => cmd_quiver(&dvr, &cfg, format, n_min, n_max, depth, band.as_deref(), experimental),
        Cmd::Treeclass { shape } => cmd_treeclass(format, &shape),
        Cmd::Decompose { file } => cmd_decompose(&cfg, format, &file),
    }
}

fn resolve_config(opts: &GlobalOpts) -> Result<(Config, Format), Error> {
    let mut cfg = Config::default();
    let mut format = Format::Text;
    if let Some(path) = &opts.config {
        let text = fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("config {}: {e}", path.display())))?;
        let file: FileConfig = toml::from_str(&text)
            .map_err(|e| Error::Parse(format!("config {}: {e}", path.display())))?;
        if let Some(p) = file.p {
            cfg.p = p;
        }
        if let Some(v) = file.precision {
            cfg.precision = v;
        }
        if let Some(v) = file.precision_max {
            cfg.precision_max = v;
        }
        if let Some(v) = file.iso_samples {
            cfg.iso_samples = v;
        }
        if let Some(v) = file.seed {
            cfg.seed = v;
        }
        if let Some(v) = file.jobs {
            cfg.jobs = v;
        }
        if let Some(v) = file.format {
            format = v;
        }
    }
    if let Some(p) = opts.p {
        cfg.p = p;
    }
    if let Some(v) = opts.precision {
        cfg.precision = v;
    }
    if let Some(v) = opts.precision_max {
        cfg.precision_max = v;
    }
    if let Some(v) = opts.iso_samples {
        cfg.iso_samples = v;
    }
    if let Some(v) = opts.seed {
        cfg.seed = v;
    }
    if let Some(v) = opts.jobs {
        cfg.jobs = v;
    }
    if let Some(v) = opts.format {
        format = v;
    }
    cfg.validate()?;
    Ok((cfg, format))
}

fn no_dot(format: Format) -> Result<(), Error> {
    if format == Format::Dot {
        return Err(Error::InvalidConfig(
            "dot output is only available for quiver windows".into(),
        ));
    }
    Ok(())
}

/// Accepts a module label (routing through its Heller lattice) or a lattice
/// JSON file; file contents are revalidated against the `A`-module axioms.
fn load_lattice(dvr: &Dvr, input: &str) -> Result<Lattice, Error> {
    if let Ok(label) = input.parse::<ModLabel>() {
        return heller_label(dvr, &label);
    }
    let path = Path::new(input);
    if path.exists() {
        let text = fs::read_to_string(path).map_err(|e| Error::Parse(format!("{input}: {e}")))?;
        let raw: Lattice =
            serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{input}: {e}")))?;
        return Lattice::new(raw.name.clone(), dvr, raw.act_x().clone(), raw.act_y().clone());
    }
    Err(Error::Parse(format!(
        "{input:?} is neither a module label (H:m, V:n, B:lambda:n, Binf:n) nor a lattice JSON file"
    )))
}

#[derive(Serialize)]
struct HellerReport {
    lattice: Lattice,
    reduction: Decomposition,
}

fn cmd_heller(dvr: &Dvr, format: Format, label: &str) -> Result<ExitCode, Error> {
    no_dot(format)?;
    let label: ModLabel = label.parse()?;
    let lat = heller_label(dvr, &label)?;
    let reduction = decompose(&lat.tensor_k(dvr)?)?;
    match format {
        Format::Json => {
            let report = HellerReport { lattice: lat, reduction };
            println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
        }
        _ => {
            println!("{} : rank {} lattice", lat.name, lat.rank());
            println!("reduction mod eps: {reduction}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

/// What the syzygy orbit of a seed is expected to look like, when the seed
/// is a Heller lattice we can name.
enum Orbit {
    /// Boundary chain: step k lands on the Heller lattice of `start - k`.
    ZChain(i64),
    /// Genuine fixed point (Binf:n, B:0:n): every step returns the seed.
    Fixed(ModLabel),
    /// Mirror pair (B:lambda:n, lambda != -lambda): odd steps land on the
    /// mirrored parameter, even steps return home.
    Mirror(ModLabel, ModLabel),
    /// Arbitrary lattice input: report, but claim nothing.
    Unknown,
}

fn orbit_for(input: &str, p: u64) -> Orbit {
    match input.parse::<ModLabel>() {
        Ok(ModLabel::Horizontal { m }) => Orbit::ZChain(m as i64),
        Ok(ModLabel::Vertical { n }) => Orbit::ZChain(-(n as i64)),
        Ok(ModLabel::BandInf { n }) => Orbit::Fixed(ModLabel::BandInf { n }),
        Ok(ModLabel::Band { lambda, n }) => {
            let mirror = (p - lambda % p) % p;
            if mirror == lambda {
                Orbit::Fixed(ModLabel::Band { lambda, n })
            } else {
                Orbit::Mirror(ModLabel::Band { lambda, n }, ModLabel::Band { lambda: mirror, n })
            }
        }
        _ => Orbit::Unknown,
    }
}

fn z_label(index: i64) -> ModLabel {
    if index >= 0 {
        ModLabel::Horizontal { m: index as usize }
    } else {
        ModLabel::Vertical { n: (-index) as usize }
    }
}

#[derive(Serialize)]
struct TauStep {
    index: usize,
    name: String,
    rank: usize,
    reduction: Decomposition,
    /// Expected iso-class of this step, when the orbit shape is known.
    target: Option<String>,
    /// Whether an exact unit-determinant intertwiner to the target was found.
    certified: Option<bool>,
}

#[derive(Serialize)]
struct TauReport {
    p: u64,
    steps: Vec<TauStep>,
}

fn cmd_tau(dvr: &Dvr, cfg: &Config, format: Format, input: &str, n: usize) -> Result<ExitCode, Error> {
    no_dot(format)?;
    let seed = load_lattice(dvr, input)?;
    let chain = tau_iterate(dvr, &seed, n)?;
    let orbit = orbit_for(input, cfg.p);

    let mut steps = Vec::new();
    let mut all_certified = true;
    for (k, lat) in chain.iter().enumerate() {
        let reduction = decompose(&lat.tensor_k(dvr)?)?;
        let target_label = match (&orbit, k) {
            (_, 0) => None,
            (Orbit::ZChain(start), k) => Some(z_label(start - k as i64)),
            (Orbit::Fixed(l), _) => Some(l.clone()),
            (Orbit::Mirror(home, away), k) => Some(if k % 2 == 0 { home.clone() } else { away.clone() }),
            (Orbit::Unknown, _) => None,
        };
        let (target, certified) = match target_label {
            None => (None, None),
            Some(tl) => {
                let target_lat = heller_label(dvr, &tl)?;
                let ok = iso_test(dvr, cfg, lat, &target_lat)?.is_some();
                all_certified &= ok;
                (Some(format!("heller({tl})")), Some(ok))
            }
        };
        steps.push(TauStep {
            index: k,
            name: lat.name.clone(),
            rank: lat.rank(),
            reduction,
            target,
            certified,
        });
    }

    match format {
        Format::Json => {
            let report = TauReport { p: cfg.p, steps };
            println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
        }
        _ => {
            for s in &steps {
                let cert = match (s.target.as_deref(), s.certified) {
                    (Some(t), Some(true)) => format!(" ≅ {t} (certified: unit-determinant intertwiner)"),
                    (Some(t), _) => format!(" — NOT certified isomorphic to {t}"),
                    (None, _) => String::new(),
                };
                println!(
                    "tau^{}: {} (rank {}), reduction {}{}",
                    s.index, s.name, s.rank, s.reduction, cert
                );
            }
            if let Orbit::Fixed(l) = &orbit {
                if n > 0 && all_certified {
                    println!("fixed point certificate: tau heller({l}) ≅ heller({l})");
                }
            }
            if let Orbit::Mirror(home, away) = &orbit {
                if n > 0 && all_certified {
                    println!(
                        "period-2 certificate: tau heller({home}) ≅ heller({away}); tau^2 returns home"
                    );
                }
            }
        }
    }
    Ok(if all_certified { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

#[derive(Serialize)]
struct SummandReport {
    name: String,
    rank: usize,
    projective: bool,
    reduction: Decomposition,
}

#[derive(Serialize)]
struct ArsReport {
    sequence: AlmostSplitSeq,
    verified: bool,
    middle_summands: Vec<SummandReport>,
}

fn cmd_ars(dvr: &Dvr, cfg: &Config, format: Format, input: &str) -> Result<ExitCode, Error> {
    no_dot(format)?;
    let lat = load_lattice(dvr, input)?;
    let seq = almost_split(dvr, cfg, &lat)?;
    let verified = seq.verify(dvr);
    let split = split_lattice(dvr, cfg, &seq.middle)?;
    let mut middle_summands = Vec::new();
    for s in &split.summands {
        middle_summands.push(SummandReport {
            name: s.name.clone(),
            rank: s.rank(),
            projective: s.is_projective(dvr),
            reduction: decompose(&s.tensor_k(dvr)?)?,
        });
    }
    match format {
        Format::Json => {
            let report = ArsReport { sequence: seq, verified, middle_summands };
            println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
        }
        _ => {
            println!(
                "almost split sequence: 0 -> {} -> {} -> {} -> 0",
                seq.tail.name, seq.middle.name, seq.head.name
            );
            println!(
                "ranks: tail {}, middle {}, head {}",
                seq.tail.rank(),
                seq.middle.rank(),
                seq.head.rank()
            );
            println!("middle summands:");
            for s in &middle_summands {
                println!(
                    "  - {} (rank {}{}), reduction {}",
                    s.name,
                    s.rank,
                    if s.projective { ", projective" } else { "" },
                    s.reduction
                );
            }
            println!("verification: {}", if verified { "pass" } else { "FAIL" });
        }
    }
    Ok(if verified { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn window_text(w: &ComponentWindow) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "component window: columns {}..{}, depth {}\n",
        w.n_min, w.n_max, w.depth
    ));
    let mut ids: Vec<usize> = (0..w.vertices.len()).collect();
    ids.sort_by_key(|&i| (w.vertices[i].coord.0, w.vertices[i].coord.1, i));
    out.push_str("vertices:\n");
    for id in ids {
        let v = &w.vertices[id];
        out.push_str(&format!(
            "  ({},{})\t{}\trank={}\td'={}{}\n",
            v.coord.0,
            v.coord.1,
            v.lattice.name,
            v.rank,
            v.dprime,
            if v.frontier { "\t[frontier]" } else { "" }
        ));
    }
    out.push_str("arrows:\n");
    for e in &w.edges {
        out.push_str(&format!(
            "  {} -> {}{}\n",
            w.vertices[e.src].lattice.name,
            w.vertices[e.dst].lattice.name,
            if e.valuation == (1, 1) {
                String::new()
            } else {
                format!("  ({},{})", e.valuation.0, e.valuation.1)
            }
        ));
    }
    out.push_str("translates:\n");
    for (a, b) in &w.tau_edges {
        out.push_str(&format!(
            "  tau {} = {}\n",
            w.vertices[*a].lattice.name, w.vertices[*b].lattice.name
        ));
    }
    if !w.projectives.is_empty() {
        out.push_str("projective middle summands:\n");
        for (v, m) in &w.projectives {
            out.push_str(&format!(
                "  at {}: multiplicity {}\n",
                w.vertices[*v].lattice.name, m
            ));
        }
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn cmd_quiver(
    dvr: &Dvr,
    cfg: &Config,
    format: Format,
    n_min: i64,
    n_max: i64,
    depth: usize,
    band: Option<&str>,
    experimental: bool,
) -> Result<ExitCode, Error> {
    if let Some(band) = band {
        let label: ModLabel = band.parse()?;
        let w = build_band_component(dvr, cfg, &label, depth, experimental)?;
        match format {
            Format::Dot => print!("{}", emit_dot(&w)),
            Format::Json => println!("{}", emit_json(&w)),
            Format::Text => print!("{}", window_text(&w)),
        }
        eprintln!("experimental band-seeded window: no template verification performed");
        return Ok(ExitCode::SUCCESS);
    }
    let w = build_component(dvr, cfg, n_min, n_max, depth)?;
    let report = verify_za_infinity(&w);
    match format {
        Format::Dot => print!("{}", emit_dot(&w)),
        Format::Json => println!("{}", emit_json(&w)),
        Format::Text => print!("{}", window_text(&w)),
    }
    eprint!("{report}");
    Ok(if report.all_passed() { ExitCode::SUCCESS } else { ExitCode::FAILURE })
}

fn cmd_treeclass(format: Format, shape: &str) -> Result<ExitCode, Error> {
    no_dot(format)?;
    let shape: TreeShape = shape.parse()?;
    let proof = tree_class_ledger(shape);
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&proof).expect("proof serializes")),
        _ => print!("{proof}"),
    }
    Ok(ExitCode::SUCCESS)
}

/// On-disk schema for a module over the residue field: `dim`, `actX`, `actY`
/// with integer entries taken mod p.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ModKFile {
    dim: usize,
    #[serde(rename = "actX")]
    act_x: Vec<Vec<i64>>,
    #[serde(rename = "actY")]
    act_y: Vec<Vec<i64>>,
}

fn kmatrix_from_rows(rows: &[Vec<i64>], dim: usize, p: u64, what: &str) -> Result<KMatrix, Error> {
    if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
        return Err(Error::Parse(format!("{what} must be a {dim}x{dim} matrix")));
    }
    Ok(KMatrix::from_fn(dim, dim, p, |i, j| {
        rows[i][j].rem_euclid(p as i64) as u64
    }))
}

fn cmd_decompose(cfg: &Config, format: Format, file: &Path) -> Result<ExitCode, Error> {
    no_dot(format)?;
    let text =
        fs::read_to_string(file).map_err(|e| Error::Parse(format!("{}: {e}", file.display())))?;
    let raw: ModKFile = serde_json::from_str(&text)
        .map_err(|e| Error::Parse(format!("{}: {e}", file.display())))?;
    let x = kmatrix_from_rows(&raw.act_x, raw.dim, cfg.p, "actX")?;
    let y = kmatrix_from_rows(&raw.act_y, raw.dim, cfg.p, "actY")?;
    let name = file
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "module".into());
    let m = ModK::new(name, x, y)
        .map_err(|e| Error::Parse(format!("{}: not a module over A tensor kappa: {e}", file.display())))?;
    let dec = decompose(&m)?;
    match format {
        Format::Json => println!("{}", serde_json::to_string_pretty(&dec).expect("decomposition serializes")),
        _ => {
            println!("dimension {} over F_{}", m.dim(), cfg.p);
            println!("decomposition: {dec}");
            println!("stable (non-projective) summands: {}", dec.stable_count());
        }
    }
    Ok(ExitCode::SUCCESS)
}
