//! Four-way classification of qubit encodings by their effective coupling,
//! and scans of the classification across field strength.

use std::fmt;
use std::str::FromStr;

use crate::couplings::{xxz, XxzCouplings};
use crate::error::{Error, Result};
use crate::multipole::{encoding_elements, InteractionKind, MultipoleElements};
use crate::rotor::{default_n_max, dressed_scan, DressedKet, SpinTag};

/// Threshold on |J_z| and |J_perp| in reduced units.
pub const DEFAULT_TOL: f64 = 1e-9;

/// Ordered pair of dressed states spanning the effective spin-1/2.
#[derive(Debug, Clone, PartialEq)]
pub struct QubitEncoding {
    pub up: DressedKet,
    pub down: DressedKet,
}

impl QubitEncoding {
    pub fn new(up: DressedKet, down: DressedKet) -> Result<Self> {
        if up.eta != down.eta {
            return Err(Error::MismatchedField { bra: up.eta, ket: down.eta });
        }
        if up.label == down.label && up.m == down.m && up.spin == down.spin {
            return Err(Error::InvalidArgument(format!(
                "qubit states must differ, both are N~={} M_N={}",
                up.label, up.m
            )));
        }
        Ok(Self { up, down })
    }

    pub fn eta(&self) -> f64 {
        self.up.eta
    }
}

/// The (Z, X) pair: Z marks a nonzero Ising coupling, X a nonzero exchange.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct EncodingClass {
    pub z: bool,
    pub x: bool,
}

impl EncodingClass {
    pub const INTERACTIONLESS: Self = Self { z: false, x: false };
    pub const SPIN_EXCHANGE: Self = Self { z: false, x: true };
    pub const ISING: Self = Self { z: true, x: false };
    pub const XXZ: Self = Self { z: true, x: true };

    pub fn name(&self) -> &'static str {
        match (self.z, self.x) {
            (false, false) => "interactionless",
            (false, true) => "spin-exchange",
            (true, false) => "Ising",
            (true, true) => "XXZ",
        }
    }

    /// `Z/X` code such as `1/0`.
    pub fn code(&self) -> &'static str {
        match (self.z, self.x) {
            (false, false) => "0/0",
            (false, true) => "0/1",
            (true, false) => "1/0",
            (true, true) => "1/1",
        }
    }

    /// Element conditions that characterise the class.
    pub fn condition(&self) -> &'static str {
        match (self.z, self.x) {
            (false, false) => "diag_up = diag_down, transitions = 0",
            (false, true) => "diag_up = diag_down, transitions != 0",
            (true, false) => "diag_up != diag_down, transitions = 0",
            (true, true) => "diag_up != diag_down, transitions != 0",
        }
    }
}

impl fmt::Display for EncodingClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}", self.code(), self.name())
    }
}

fn check_tol(tol: f64) -> Result<()> {
    if tol <= 0.0 || !tol.is_finite() {
        return Err(Error::InvalidArgument(format!("tolerance {tol} must be positive")));
    }
    Ok(())
}

/// Values exactly at the threshold count as zero.
pub fn classify(c: &XxzCouplings, tol: f64) -> Result<EncodingClass> {
    check_tol(tol)?;
    Ok(EncodingClass { z: c.j_z.abs() > tol, x: c.j_perp.abs() > tol })
}

/// Classification read off the matrix elements directly, without forming
/// the couplings: compare the diagonal difference and each group of
/// transition elements (p = 0, ±1, ±2) against the threshold.
///
/// Agrees with [`classify`] when at most one transition group is nonzero,
/// which holds for states of definite `M_N`.
pub fn diagram_class(elems: &MultipoleElements, tol: f64) -> Result<EncodingClass> {
    check_tol(tol)?;
    let z = (elems.diag_up - elems.diag_down).abs() > tol.sqrt();
    let weights: [f64; 3] = match elems.kind {
        InteractionKind::Dipole => [2.0, 1.0, 0.0],
        InteractionKind::Quadrupole => [12.0, 8.0, 2.0],
    };
    let groups = [
        elems.trans_0.powi(2),
        elems.trans_p1.powi(2) + elems.trans_m1.powi(2),
        elems.trans_p2.powi(2) + elems.trans_m2.powi(2),
    ];
    let x = groups.iter().zip(weights).any(|(g, w)| w * g > tol);
    Ok(EncodingClass { z, x })
}

/// Quantum numbers of one qubit state: `Ñ`, `M_N` and an optional spin tag.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct StateSpec {
    pub label: u32,
    pub m: i32,
    pub spin: Option<SpinTag>,
}

impl StateSpec {
    pub fn new(label: u32, m: i32, spin: Option<SpinTag>) -> Result<Self> {
        if m.unsigned_abs() > label {
            return Err(Error::InvalidArgument(format!("|M_N| = {} exceeds N~ = {label}", m.abs())));
        }
        Ok(Self { label, m, spin })
    }
}

impl FromStr for StateSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("bad state spec {s:?}, expected N,M_N[,spin]"));
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if !(2..=3).contains(&parts.len()) {
            return Err(bad());
        }
        let label = parts[0].parse().map_err(|_| bad())?;
        let m = parts[1].parse().map_err(|_| bad())?;
        let spin = match parts.get(2) {
            Some(&"") => return Err(bad()),
            Some(tag) => Some(SpinTag::new(*tag)),
            None => None,
        };
        StateSpec::new(label, m, spin)
    }
}

impl fmt::Display for StateSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", self.label, self.m)?;
        if let Some(spin) = &self.spin {
            write!(f, ",{spin}")?;
        }
        Ok(())
    }
}

/// `up:down` pair of state specs, e.g. `0,0:2,-1` or `0,0,A:0,0,B`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct EncodingSpec {
    pub up: StateSpec,
    pub down: StateSpec,
}

impl EncodingSpec {
    pub fn new(up: StateSpec, down: StateSpec) -> Result<Self> {
        if up == down {
            return Err(Error::InvalidArgument(format!("qubit states must differ, both are {up}")));
        }
        Ok(Self { up, down })
    }

    /// Shared basis cutoff for both states.
    pub fn default_n_max(&self) -> u32 {
        let label = self.up.label.max(self.down.label);
        let m = self.up.m.abs().max(self.down.m.abs());
        default_n_max(label, m)
    }

    /// Dressed encodings along an ascending field grid.
    pub fn dress(&self, etas: &[f64], n_max: u32) -> Result<Vec<QubitEncoding>> {
        let ups = dressed_scan(self.up.label, self.up.m, etas, n_max)?;
        let downs = dressed_scan(self.down.label, self.down.m, etas, n_max)?;
        ups.into_iter()
            .zip(downs)
            .map(|(u, d)| {
                QubitEncoding::new(u.with_spin(self.up.spin.clone()), d.with_spin(self.down.spin.clone()))
            })
            .collect()
    }
}

impl FromStr for EncodingSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (up, down) = s
            .split_once(':')
            .ok_or_else(|| Error::InvalidArgument(format!("bad encoding spec {s:?}, expected UP:DOWN")))?;
        EncodingSpec::new(up.parse()?, down.parse()?)
    }
}

impl fmt::Display for EncodingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.up, self.down)
    }
}

/// Classification of one encoding at one field, with the elements and
/// couplings it was derived from.
#[derive(Debug, Clone, PartialEq)]
pub struct Classification {
    pub eta: f64,
    pub class: EncodingClass,
    pub couplings: XxzCouplings,
    pub elements: MultipoleElements,
}

/// Classifies every point of an ascending grid. `n_max = None` uses
/// [`EncodingSpec::default_n_max`].
pub fn classify_scan(
    spec: &EncodingSpec,
    kind: InteractionKind,
    etas: &[f64],
    tol: f64,
    n_max: Option<u32>,
) -> Result<Vec<Classification>> {
    check_tol(tol)?;
    let n_max = n_max.unwrap_or_else(|| spec.default_n_max());
    spec.dress(etas, n_max)?
        .iter()
        .map(|enc| {
            let elements = encoding_elements(enc, kind)?;
            let couplings = xxz(&elements);
            Ok(Classification { eta: enc.eta(), class: classify(&couplings, tol)?, couplings, elements })
        })
        .collect()
}

pub fn classify_encoding(
    spec: &EncodingSpec,
    kind: InteractionKind,
    eta: f64,
    tol: f64,
    n_max: Option<u32>,
) -> Result<Classification> {
    let mut out = classify_scan(spec, kind, &[eta], tol, n_max)?;
    Ok(out.pop().expect("one grid point"))
}

/// Maximal run of grid points sharing one class.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassInterval {
    pub eta_start: f64,
    pub eta_end: f64,
    pub class: EncodingClass,
}

/// Splits a grid into maximal intervals of constant class; neighbouring
/// intervals always differ. A crossover right at the first point gives a
/// single-point interval.
pub fn crossover_scan(
    spec: &EncodingSpec,
    kind: InteractionKind,
    etas: &[f64],
    tol: f64,
    n_max: Option<u32>,
) -> Result<Vec<ClassInterval>> {
    let mut intervals: Vec<ClassInterval> = Vec::new();
    for row in classify_scan(spec, kind, etas, tol, n_max)? {
        match intervals.last_mut() {
            Some(last) if last.class == row.class => last.eta_end = row.eta,
            _ => intervals.push(ClassInterval { eta_start: row.eta, eta_end: row.eta, class: row.class }),
        }
    }
    Ok(intervals)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn couplings(j_z: f64, j_perp: f64) -> XxzCouplings {
        XxzCouplings::new(InteractionKind::Dipole, j_z, j_perp, 0.0, 0.0)
    }

    #[test]
    fn class_examples() {
        assert_eq!(classify(&couplings(0.0, 0.0), DEFAULT_TOL).unwrap(), EncodingClass::INTERACTIONLESS);
        assert_eq!(classify(&couplings(0.0, 2.0 / 3.0), DEFAULT_TOL).unwrap(), EncodingClass::SPIN_EXCHANGE);
        assert_eq!(classify(&couplings(1.0 / 3.0, 0.0), DEFAULT_TOL).unwrap(), EncodingClass::ISING);
        assert_eq!(classify(&couplings(0.1, -0.2), DEFAULT_TOL).unwrap(), EncodingClass::XXZ);
    }

    #[test]
    fn threshold_is_strict() {
        assert_eq!(classify(&couplings(1e-3, 1e-3), 1e-3).unwrap(), EncodingClass::INTERACTIONLESS);
        assert!(classify(&couplings(0.0, 0.0), 0.0).is_err());
        assert!(classify(&couplings(0.0, 0.0), -1.0).is_err());
    }

    #[test]
    fn names_and_codes() {
        assert_eq!(EncodingClass::XXZ.to_string(), "1/1 XXZ");
        assert_eq!(EncodingClass::SPIN_EXCHANGE.to_string(), "0/1 spin-exchange");
        assert_eq!(EncodingClass::ISING.code(), "1/0");
        assert_eq!(EncodingClass::INTERACTIONLESS.name(), "interactionless");
    }

    #[test]
    fn spec_grammar() {
        let spec: EncodingSpec = "0,0:2,-1".parse().unwrap();
        assert_eq!(spec.up, StateSpec::new(0, 0, None).unwrap());
        assert_eq!(spec.down, StateSpec::new(2, -1, None).unwrap());
        assert_eq!(spec.to_string(), "0,0:2,-1");

        let spec: EncodingSpec = "0,0,A : 0,0,B".parse().unwrap();
        assert_eq!(spec.up.spin, Some(SpinTag::new("A")));
        assert_eq!(spec.to_string(), "0,0,A:0,0,B");

        for bad in ["0,0", "0,0:0,0", "0,0:1,2", "0:1", "a,0:1,0", "0,0:1,0,", "0,0:1,0,A,B"] {
            assert!(bad.parse::<EncodingSpec>().is_err(), "{bad}");
        }
    }

    #[test]
    fn encoding_states_must_share_field() {
        let spec: EncodingSpec = "0,0:1,0".parse().unwrap();
        let a = spec.dress(&[0.5], 9).unwrap().pop().unwrap();
        let b = spec.dress(&[1.0], 9).unwrap().pop().unwrap();
        assert!(QubitEncoding::new(a.up, b.down).is_err());
    }

    #[test]
    fn adjacent_encoding_crosses_over_at_zero_field() {
        let spec: EncodingSpec = "0,0:1,0".parse().unwrap();
        let grid: Vec<f64> = (0..=10).map(|k| 0.5 * k as f64).collect();
        let intervals = crossover_scan(&spec, InteractionKind::Dipole, &grid, DEFAULT_TOL, None).unwrap();
        assert_eq!(
            intervals,
            vec![
                ClassInterval { eta_start: 0.0, eta_end: 0.0, class: EncodingClass::SPIN_EXCHANGE },
                ClassInterval { eta_start: 0.5, eta_end: 5.0, class: EncodingClass::XXZ },
            ]
        );
    }
}
