//! Command-line front end for `molqubit`.
//!
//! Each subcommand renders its whole output into a `String` before anything
//! is written, so a failed run never leaves a half-written CSV behind.

pub mod config;

use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand};
use molqubit::{
    classify_scan, default_n_max, lattice_hamiltonian, stark_map, units, Classification, EncodingSpec,
    Geometry, InteractionKind, DEFAULT_TOL,
};
use nalgebra::Vector3;
use thiserror::Error;

use crate::config::{MoleculeConfig, Unit};

pub const EXIT_USAGE: u8 = 2;
pub const EXIT_CONVERGENCE: u8 = 3;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("config: {0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] molqubit::Error),
    #[error("cannot write output: {0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Core(molqubit::Error::ConvergenceFailure { .. }) => ExitCode::from(EXIT_CONVERGENCE),
            _ => ExitCode::from(EXIT_USAGE),
        }
    }
}

/// Field-dressed rotational qubits: Stark maps, multipole elements, XXZ
/// couplings and encoding classes.
#[derive(Debug, Parser)]
#[command(name = "molqubit", version)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Energies of all levels up to a label along an eta grid (CSV).
    StarkMap {
        #[command(flatten)]
        common: Common,
        /// Highest adiabatic label included.
        #[arg(long, default_value_t = 2)]
        label_max: u32,
    },
    /// Matrix elements of one encoding along an eta grid (CSV).
    Elements {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        encoding: EncodingArgs,
    },
    /// XXZ couplings and class of one encoding along an eta grid (CSV).
    Couplings {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        encoding: EncodingArgs,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Classification report for one encoding at one field.
    Classify {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        encoding: EncodingArgs,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
    },
    /// Dense many-spin XXZ Hamiltonian for pinned molecules (CSV rows).
    Lattice {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        encoding: EncodingArgs,
        /// Molecule positions as `x,y,z;x,y,z;...` in reduced length units.
        #[arg(long, allow_hyphen_values = true)]
        positions: String,
        /// Quantization (field) axis.
        #[arg(long, default_value = "0,0,1", allow_hyphen_values = true)]
        axis: String,
    },
    /// Reduced field eta = dE/B_e from laboratory units.
    ConvertField {
        #[arg(long)]
        config: Option<PathBuf>,
        /// Dipole moment in debye (defaults to the config value).
        #[arg(long)]
        dipole_debye: Option<f64>,
        /// Rotational constant in MHz (defaults to the config value).
        #[arg(long)]
        be_mhz: Option<f64>,
        /// Field strength in kV/cm.
        #[arg(long)]
        field_kv_cm: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
pub struct Common {
    /// Molecule configuration file.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Single field value.
    #[arg(long, conflicts_with = "eta_range")]
    pub eta: Option<f64>,
    /// Field grid as MIN:MAX:N.
    #[arg(long)]
    pub eta_range: Option<EtaRange>,
    /// Rotational basis cutoff.
    #[arg(long)]
    pub nmax: Option<u32>,
    /// Output file (default stdout).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EncodingArgs {
    /// Qubit states as `N,M_N[,spin]:N,M_N[,spin]` (up:down).
    #[arg(long, allow_hyphen_values = true)]
    pub encoding: String,
    #[arg(long, default_value = "dipole")]
    pub kind: String,
}

/// Evenly spaced grid `MIN:MAX:N`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EtaRange {
    pub min: f64,
    pub max: f64,
    pub points: usize,
}

impl EtaRange {
    pub fn grid(&self) -> Vec<f64> {
        let last = self.points - 1;
        (0..self.points)
            .map(|k| {
                if k == last {
                    self.max
                } else {
                    self.min + (self.max - self.min) * k as f64 / last as f64
                }
            })
            .collect()
    }

    /// Default grid for figure-style scans of each interaction.
    pub fn default_for(kind: InteractionKind) -> Self {
        match kind {
            InteractionKind::Dipole => EtaRange { min: 0.0, max: 6.0, points: 121 },
            InteractionKind::Quadrupole => EtaRange { min: 0.0, max: 10.0, points: 201 },
        }
    }
}

impl FromStr for EtaRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let [min, max, n] = parts.as_slice() else {
            return Err(format!("expected MIN:MAX:N, got {s:?}"));
        };
        let min: f64 = min.trim().parse().map_err(|_| format!("bad MIN in {s:?}"))?;
        let max: f64 = max.trim().parse().map_err(|_| format!("bad MAX in {s:?}"))?;
        let points: usize = n.trim().parse().map_err(|_| format!("bad N in {s:?}"))?;
        if !(min >= 0.0 && min < max && max.is_finite()) {
            return Err(format!("need 0 <= MIN < MAX, got {s:?}"));
        }
        if points < 2 {
            return Err(format!("need N >= 2, got {s:?}"));
        }
        Ok(EtaRange { min, max, points })
    }
}

/// Fixed-point with 12 decimals; negative zero prints as zero.
pub fn fmt_num(x: f64) -> String {
    let s = format!("{x:.12}");
    match s.strip_prefix('-') {
        Some(rest) if rest.bytes().all(|b| b == b'0' || b == b'.') => rest.to_string(),
        _ => s,
    }
}

fn load_config(path: &Option<PathBuf>) -> Result<MoleculeConfig, CliError> {
    match path {
        Some(p) => MoleculeConfig::load(p),
        None => Ok(MoleculeConfig::default()),
    }
}

fn grid(common: &Common, fallback: EtaRange) -> Result<Vec<f64>, CliError> {
    match (common.eta, common.eta_range) {
        (Some(eta), _) => {
            if eta < 0.0 || !eta.is_finite() {
                return Err(CliError::Usage(format!("--eta {eta} must be non-negative")));
            }
            Ok(vec![eta])
        }
        (None, Some(range)) => Ok(range.grid()),
        (None, None) => Ok(fallback.grid()),
    }
}

struct Encoding {
    spec: EncodingSpec,
    kind: InteractionKind,
    n_max: u32,
}

fn resolve_encoding(args: &EncodingArgs, common: &Common, cfg: &MoleculeConfig) -> Result<Encoding, CliError> {
    let spec: EncodingSpec = args.encoding.parse()?;
    let kind: InteractionKind = args.kind.parse()?;
    let moment = match kind {
        InteractionKind::Dipole => cfg.d,
        InteractionKind::Quadrupole => cfg.q,
    };
    if moment.value == 0.0 {
        return Err(CliError::Config(format!("molecule {:?} has no {kind} moment", cfg.name)));
    }
    let n_max = common.nmax.or(cfg.n_max).unwrap_or_else(|| spec.default_n_max());
    Ok(Encoding { spec, kind, n_max })
}

fn scan(enc: &Encoding, etas: &[f64], tol: f64) -> Result<Vec<Classification>, CliError> {
    Ok(classify_scan(&enc.spec, enc.kind, etas, tol, Some(enc.n_max))?)
}

pub fn run_stark_map(common: &Common, label_max: u32) -> Result<String, CliError> {
    let cfg = load_config(&common.config)?;
    let etas = grid(common, EtaRange::default_for(InteractionKind::Dipole))?;
    let n_max = common
        .nmax
        .or(cfg.n_max)
        .unwrap_or_else(|| default_n_max(label_max, label_max as i32));
    let mut out = String::from("eta,N_label,M_N,energy_Be\n");
    for level in stark_map(&etas, label_max, n_max)? {
        writeln!(out, "{},{},{},{}", fmt_num(level.eta), level.label, level.m, fmt_num(level.energy)).unwrap();
    }
    Ok(out)
}

pub fn run_elements(common: &Common, args: &EncodingArgs) -> Result<String, CliError> {
    let cfg = load_config(&common.config)?;
    let enc = resolve_encoding(args, common, &cfg)?;
    let etas = grid(common, EtaRange::default_for(enc.kind))?;
    let mut out = String::from("eta,diag_up,diag_down,trans_0,trans_p1,trans_m1,trans_p2,trans_m2\n");
    for row in scan(&enc, &etas, DEFAULT_TOL)? {
        let e = &row.elements;
        let cols = [row.eta, e.diag_up, e.diag_down, e.trans_0, e.trans_p1, e.trans_m1, e.trans_p2, e.trans_m2];
        out.push_str(&cols.map(fmt_num).join(","));
        out.push('\n');
    }
    Ok(out)
}

pub fn run_couplings(common: &Common, args: &EncodingArgs, tol: f64) -> Result<String, CliError> {
    let cfg = load_config(&common.config)?;
    let enc = resolve_encoding(args, common, &cfg)?;
    let etas = grid(common, EtaRange::default_for(enc.kind))?;
    let mut out = String::from("eta,J_z,J_perp,W,V,class\n");
    for row in scan(&enc, &etas, tol)? {
        let c = &row.couplings;
        let cols = [row.eta, c.j_z, c.j_perp, c.w, c.v].map(fmt_num).join(",");
        writeln!(out, "{cols},{}", row.class.code()).unwrap();
    }
    Ok(out)
}

pub fn run_classify(common: &Common, args: &EncodingArgs, tol: f64) -> Result<String, CliError> {
    let cfg = load_config(&common.config)?;
    let enc = resolve_encoding(args, common, &cfg)?;
    if common.eta_range.is_some() {
        return Err(CliError::Usage("classify takes a single --eta".into()));
    }
    let eta = grid(common, EtaRange { min: 0.0, max: 0.0, points: 1 })?[0];
    let row = scan(&enc, &[eta], tol)?.pop().expect("one grid point");
    let (e, c, class) = (&row.elements, &row.couplings, row.class);
    let (moment, coupling_unit) = match enc.kind {
        InteractionKind::Dipole => ("d", "d^2/R^3"),
        InteractionKind::Quadrupole => ("q", "q^2/R^5"),
    };

    let mut out = String::new();
    writeln!(out, "molecule:    {}", cfg.name).unwrap();
    writeln!(out, "encoding:    {} (up:down)", enc.spec).unwrap();
    writeln!(out, "interaction: {}", enc.kind).unwrap();
    writeln!(out, "eta:         {}", fmt_num(eta)).unwrap();
    writeln!(out, "N_max:       {}", enc.n_max).unwrap();
    writeln!(out, "tolerance:   {tol:e}").unwrap();
    writeln!(out).unwrap();
    writeln!(out, "matrix elements (units of {moment}):").unwrap();
    for (name, v) in [
        ("diag_up", e.diag_up),
        ("diag_down", e.diag_down),
        ("trans_0", e.trans_0),
        ("trans_p1", e.trans_p1),
        ("trans_m1", e.trans_m1),
        ("trans_p2", e.trans_p2),
        ("trans_m2", e.trans_m2),
    ] {
        writeln!(out, "  {name:<10} {:>16}", fmt_num(v)).unwrap();
    }
    writeln!(out, "couplings (units of {coupling_unit}, geometry factored out):").unwrap();
    for (name, v) in [("J_z", c.j_z), ("J_perp", c.j_perp), ("W", c.w), ("V", c.v)] {
        writeln!(out, "  {name:<10} {:>16}", fmt_num(v)).unwrap();
    }
    writeln!(out).unwrap();
    writeln!(out, "Z = {}  (|J_z| > tol: {})", class.z as u8, class.z).unwrap();
    writeln!(out, "X = {}  (|J_perp| > tol: {})", class.x as u8, class.x).unwrap();
    writeln!(out, "class: {class}").unwrap();
    writeln!(out, "table row: {} ({}): {}", class.code(), class.name(), class.condition()).unwrap();
    writeln!(out).unwrap();
    writeln!(out, "[classification]").unwrap();
    let stanza = [
        ("molecule", cfg.name.clone()),
        ("encoding", enc.spec.to_string()),
        ("kind", enc.kind.to_string()),
        ("eta", fmt_num(eta)),
        ("n_max", enc.n_max.to_string()),
        ("diag_up", fmt_num(e.diag_up)),
        ("diag_down", fmt_num(e.diag_down)),
        ("trans_0", fmt_num(e.trans_0)),
        ("trans_p1", fmt_num(e.trans_p1)),
        ("trans_m1", fmt_num(e.trans_m1)),
        ("trans_p2", fmt_num(e.trans_p2)),
        ("trans_m2", fmt_num(e.trans_m2)),
        ("J_z", fmt_num(c.j_z)),
        ("J_perp", fmt_num(c.j_perp)),
        ("W", fmt_num(c.w)),
        ("V", fmt_num(c.v)),
        ("Z", (class.z as u8).to_string()),
        ("X", (class.x as u8).to_string()),
        ("class", class.code().to_string()),
        ("name", class.name().to_string()),
    ];
    for (k, v) in stanza {
        writeln!(out, "{k} = {v}").unwrap();
    }
    Ok(out)
}

fn parse_vector(s: &str) -> Result<Vector3<f64>, CliError> {
    let v: Vec<f64> = s
        .split(',')
        .map(|x| x.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::Usage(format!("bad vector {s:?}, expected x,y,z")))?;
    match v.as_slice() {
        [x, y, z] => Ok(Vector3::new(*x, *y, *z)),
        _ => Err(CliError::Usage(format!("bad vector {s:?}, expected x,y,z"))),
    }
}

pub fn run_lattice(common: &Common, args: &EncodingArgs, positions: &str, axis: &str) -> Result<String, CliError> {
    let cfg = load_config(&common.config)?;
    let enc = resolve_encoding(args, common, &cfg)?;
    if common.eta_range.is_some() {
        return Err(CliError::Usage("lattice takes a single --eta".into()));
    }
    let eta = grid(common, EtaRange { min: 0.0, max: 0.0, points: 1 })?[0];
    let positions = positions
        .split(';')
        .filter(|p| !p.trim().is_empty())
        .map(parse_vector)
        .collect::<Result<Vec<_>, _>>()?;
    let geom = Geometry::new(positions, parse_vector(axis)?)?;
    let row = scan(&enc, &[eta], DEFAULT_TOL)?.pop().expect("one grid point");
    let h = lattice_hamiltonian(&geom, &row.couplings)?;
    let mut out = String::new();
    for r in h.matrix.row_iter() {
        out.push_str(&r.iter().map(|&x| fmt_num(x)).collect::<Vec<_>>().join(","));
        out.push('\n');
    }
    Ok(out)
}

pub fn run_convert_field(
    config: &Option<PathBuf>,
    dipole_debye: Option<f64>,
    be_mhz: Option<f64>,
    field_kv_cm: f64,
) -> Result<String, CliError> {
    let cfg = config.as_ref().map(|p| MoleculeConfig::load(p)).transpose()?;
    let from_cfg = |pick: fn(&MoleculeConfig) -> config::Quantity, unit: Unit| {
        cfg.as_ref().map(pick).filter(|q| q.unit == unit).map(|q| q.value)
    };
    let d = dipole_debye
        .or_else(|| from_cfg(|c| c.d, Unit::Debye))
        .ok_or_else(|| CliError::Usage("need --dipole-debye or a config with d in debye".into()))?;
    let b = be_mhz
        .or_else(|| from_cfg(|c| c.b_e, Unit::Megahertz))
        .ok_or_else(|| CliError::Usage("need --be-mhz or a config with B_e in MHz".into()))?;
    let eta = units::convert_field(d, b, field_kv_cm)?;
    Ok(format!("eta\n{}\n", fmt_num(eta)))
}

/// Output destination of a parsed command line.
pub fn output_path(cli: &Cli) -> Option<&PathBuf> {
    match &cli.command {
        Command::StarkMap { common, .. }
        | Command::Elements { common, .. }
        | Command::Couplings { common, .. }
        | Command::Classify { common, .. }
        | Command::Lattice { common, .. } => common.out.as_ref(),
        Command::ConvertField { out, .. } => out.as_ref(),
    }
}

pub fn run(cli: &Cli) -> Result<String, CliError> {
    match &cli.command {
        Command::StarkMap { common, label_max } => run_stark_map(common, *label_max),
        Command::Elements { common, encoding } => run_elements(common, encoding),
        Command::Couplings { common, encoding, tol } => run_couplings(common, encoding, *tol),
        Command::Classify { common, encoding, tol } => run_classify(common, encoding, *tol),
        Command::Lattice { common, encoding, positions, axis } => run_lattice(common, encoding, positions, axis),
        Command::ConvertField { config, dipole_debye, be_mhz, field_kv_cm, .. } => {
            run_convert_field(config, *dipole_debye, *be_mhz, *field_kv_cm)
        }
    }
}
