//! Molecule configuration files.
//!
//! One `key = value` per line, `#` starts a comment. Recognised keys:
//!
//! ```text
//! name  = KRb
//! B_e   = 1113.95 MHz      # or a bare number / "reduced"
//! d     = 0.574 debye      # or a bare number / "reduced"
//! q     = 1 reduced
//! n_max = 12
//! ```

use std::fmt;
use std::path::Path;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Unit {
    Reduced,
    Megahertz,
    Debye,
}

impl fmt::Display for Unit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Unit::Reduced => "reduced",
            Unit::Megahertz => "MHz",
            Unit::Debye => "debye",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quantity {
    pub value: f64,
    pub unit: Unit,
}

impl Quantity {
    pub const fn reduced(value: f64) -> Self {
        Self { value, unit: Unit::Reduced }
    }
}

impl fmt::Display for Quantity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.value, self.unit)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MoleculeConfig {
    pub name: String,
    pub b_e: Quantity,
    pub d: Quantity,
    pub q: Quantity,
    pub n_max: Option<u32>,
}

impl Default for MoleculeConfig {
    /// The reduced-unit molecule `d = q = B_e = 1`.
    fn default() -> Self {
        Self {
            name: "reduced".into(),
            b_e: Quantity::reduced(1.0),
            d: Quantity::reduced(1.0),
            q: Quantity::reduced(1.0),
            n_max: None,
        }
    }
}

fn parse_quantity(key: &str, raw: &str, allowed: &[Unit]) -> Result<Quantity, CliError> {
    let mut parts = raw.split_whitespace();
    let number = parts.next().ok_or_else(|| CliError::Config(format!("{key}: missing value")))?;
    let value: f64 = number
        .parse()
        .map_err(|_| CliError::Config(format!("{key}: {number:?} is not a number")))?;
    let unit = match parts.next().map(str::to_ascii_lowercase).as_deref() {
        None | Some("reduced") => Unit::Reduced,
        Some("mhz") => Unit::Megahertz,
        Some("debye") | Some("d") => Unit::Debye,
        Some(other) => return Err(CliError::Config(format!("{key}: unknown unit {other:?}"))),
    };
    if parts.next().is_some() {
        return Err(CliError::Config(format!("{key}: trailing text in {raw:?}")));
    }
    if !allowed.contains(&unit) {
        return Err(CliError::Config(format!("{key}: unit {unit} not allowed here")));
    }
    if !value.is_finite() {
        return Err(CliError::Config(format!("{key}: value must be finite")));
    }
    Ok(Quantity { value, unit })
}

impl MoleculeConfig {
    pub fn parse(text: &str) -> Result<Self, CliError> {
        let mut cfg = MoleculeConfig::default();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| CliError::Config(format!("line {}: expected key = value", lineno + 1)))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "name" => cfg.name = value.to_string(),
                "B_e" | "b_e" => cfg.b_e = parse_quantity(key, value, &[Unit::Reduced, Unit::Megahertz])?,
                "d" => cfg.d = parse_quantity(key, value, &[Unit::Reduced, Unit::Debye])?,
                "q" => cfg.q = parse_quantity(key, value, &[Unit::Reduced])?,
                "n_max" | "nmax" => {
                    cfg.n_max = Some(value.parse().map_err(|_| {
                        CliError::Config(format!("{key}: {value:?} is not a non-negative integer"))
                    })?)
                }
                other => return Err(CliError::Config(format!("line {}: unknown key {other:?}", lineno + 1))),
            }
        }
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn validate(&self) -> Result<(), CliError> {
        if self.b_e.value <= 0.0 || !self.b_e.value.is_finite() {
            return Err(CliError::Config("B_e must be positive".into()));
        }
        if self.d.value < 0.0 || self.q.value < 0.0 {
            return Err(CliError::Config("moments d and q must be non-negative".into()));
        }
        if self.d.value == 0.0 && self.q.value == 0.0 {
            return Err(CliError::Config("at least one of d and q must be positive".into()));
        }
        Ok(())
    }
}
