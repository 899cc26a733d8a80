//! Dipole and quadrupole matrix elements in the bare `|N M_N>` basis and
//! between dressed states.
//!
//! Spherical components follow
//! `<N' M'|T^k_p|N M> = (-1)^M' sqrt((2N'+1)(2N+1)) (N' k N; -M' p M) (N' k N; 0 0 0)`
//! in units of the permanent moment, multiplied by a Kronecker delta on the
//! nuclear-spin tags. All elements are real under the phase convention of
//! [`crate::rotor`].

use std::fmt;
use std::str::FromStr;

use crate::angmom::wigner_3j;
use crate::classifier::QubitEncoding;
use crate::error::{Error, Result};
use crate::rotor::{DressedKet, RotationalKet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InteractionKind {
    Dipole,
    Quadrupole,
}

impl InteractionKind {
    /// Tensor rank of the interacting moment.
    pub fn rank(self) -> u32 {
        match self {
            InteractionKind::Dipole => 1,
            InteractionKind::Quadrupole => 2,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            InteractionKind::Dipole => "dipole",
            InteractionKind::Quadrupole => "quadrupole",
        }
    }
}

impl fmt::Display for InteractionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for InteractionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "dipole" => Ok(InteractionKind::Dipole),
            "quadrupole" => Ok(InteractionKind::Quadrupole),
            other => Err(Error::InvalidArgument(format!(
                "unknown interaction kind {other:?} (expected dipole or quadrupole)"
            ))),
        }
    }
}

fn rank_element(rank: u32, n_bra: u32, m_bra: i32, p: i32, n_ket: u32, m_ket: i32) -> f64 {
    if m_ket + p != m_bra {
        return 0.0;
    }
    let reduced = wigner_3j(n_bra, rank, n_ket, 0, 0, 0);
    if reduced == 0.0 {
        return 0.0;
    }
    let angular = wigner_3j(n_bra, rank, n_ket, -m_bra, p, m_ket);
    let phase = if m_bra.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
    phase * (((2 * n_bra + 1) * (2 * n_ket + 1)) as f64).sqrt() * angular * reduced
}

fn bare_element(rank: u32, bra: &RotationalKet, p: i32, ket: &RotationalKet) -> f64 {
    if bra.spin != ket.spin {
        return 0.0;
    }
    rank_element(rank, bra.n, bra.m, p, ket.n, ket.m)
}

/// `<bra| d_p |ket>` in units of the permanent dipole moment.
pub fn dipole_element_bare(bra: &RotationalKet, p: i32, ket: &RotationalKet) -> f64 {
    bare_element(1, bra, p, ket)
}

/// `<bra| q_p |ket>` in units of the permanent quadrupole moment.
pub fn quadrupole_element_bare(bra: &RotationalKet, p: i32, ket: &RotationalKet) -> f64 {
    bare_element(2, bra, p, ket)
}

/// `<bra| T_p |ket>` between dressed states computed at the same field.
pub fn dressed_element(bra: &DressedKet, kind: InteractionKind, p: i32, ket: &DressedKet) -> Result<f64> {
    if bra.eta != ket.eta {
        return Err(Error::MismatchedField { bra: bra.eta, ket: ket.eta });
    }
    if bra.spin != ket.spin || ket.m + p != bra.m {
        return Ok(0.0);
    }
    let rank = kind.rank();
    let mut total = 0.0;
    for (i, &cb) in bra.coeffs.iter().enumerate() {
        if cb == 0.0 {
            continue;
        }
        let n_bra = bra.n_min() + i as u32;
        let lo = n_bra.saturating_sub(rank).max(ket.n_min());
        let hi = (n_bra + rank).min(ket.n_max());
        for n_ket in lo..=hi {
            let ck = ket.coeff(n_ket);
            if ck == 0.0 {
                continue;
            }
            total += cb * ck * rank_element(rank, n_bra, bra.m, p, n_ket, ket.m);
        }
    }
    Ok(total)
}

/// Diagonal and transition elements of one qubit encoding.
///
/// `diag_up = <up|T_0|up>`, `diag_down = <down|T_0|down>`,
/// `trans_p = <up|T_p|down>`. The rank-2 fields stay zero for dipoles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MultipoleElements {
    pub kind: InteractionKind,
    pub diag_up: f64,
    pub diag_down: f64,
    pub trans_0: f64,
    pub trans_p1: f64,
    pub trans_m1: f64,
    pub trans_p2: f64,
    pub trans_m2: f64,
}

impl MultipoleElements {
    pub fn zero(kind: InteractionKind) -> Self {
        Self {
            kind,
            diag_up: 0.0,
            diag_down: 0.0,
            trans_0: 0.0,
            trans_p1: 0.0,
            trans_m1: 0.0,
            trans_p2: 0.0,
            trans_m2: 0.0,
        }
    }

    /// Transition element for spherical component `p`.
    pub fn transition(&self, p: i32) -> f64 {
        match p {
            0 => self.trans_0,
            1 => self.trans_p1,
            -1 => self.trans_m1,
            2 => self.trans_p2,
            -2 => self.trans_m2,
            _ => 0.0,
        }
    }

    /// The same encoding with `|up>` and `|down>` exchanged.
    ///
    /// Uses `<down|T_p|up> = (-1)^p <up|T_-p|down>` for real elements.
    pub fn swapped(&self) -> Self {
        Self {
            kind: self.kind,
            diag_up: self.diag_down,
            diag_down: self.diag_up,
            trans_0: self.trans_0,
            trans_p1: -self.trans_m1,
            trans_m1: -self.trans_p1,
            trans_p2: self.trans_m2,
            trans_m2: self.trans_p2,
        }
    }

    pub fn check_kind(&self, expected: InteractionKind) -> Result<()> {
        if self.kind != expected {
            return Err(Error::KindMismatch { expected, found: self.kind });
        }
        Ok(())
    }
}

/// Fills every element of an encoding for the given interaction.
pub fn encoding_elements(enc: &QubitEncoding, kind: InteractionKind) -> Result<MultipoleElements> {
    let (up, down) = (&enc.up, &enc.down);
    let mut out = MultipoleElements::zero(kind);
    out.diag_up = dressed_element(up, kind, 0, up)?;
    out.diag_down = dressed_element(down, kind, 0, down)?;
    out.trans_0 = dressed_element(up, kind, 0, down)?;
    out.trans_p1 = dressed_element(up, kind, 1, down)?;
    out.trans_m1 = dressed_element(up, kind, -1, down)?;
    if kind == InteractionKind::Quadrupole {
        out.trans_p2 = dressed_element(up, kind, 2, down)?;
        out.trans_m2 = dressed_element(up, kind, -2, down)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rotor::{dressed_state, SpinTag};
    use approx::assert_abs_diff_eq;

    fn ket(n: u32, m: i32) -> RotationalKet {
        RotationalKet::new(n, m).unwrap()
    }

    #[test]
    fn dipole_bare_values() {
        assert_abs_diff_eq!(dipole_element_bare(&ket(0, 0), 0, &ket(1, 0)), 1.0 / 3f64.sqrt(), epsilon = 1e-14);
        assert_abs_diff_eq!(dipole_element_bare(&ket(1, 0), 0, &ket(2, 0)), 2.0 / 15f64.sqrt(), epsilon = 1e-14);
        assert_eq!(dipole_element_bare(&ket(0, 0), 0, &ket(2, 0)), 0.0);
        assert_eq!(dipole_element_bare(&ket(1, 0), 0, &ket(1, 0)), 0.0);
        assert_eq!(dipole_element_bare(&ket(0, 0), 1, &ket(1, 0)), 0.0);
    }

    #[test]
    fn spin_tags_must_match() {
        let a = ket(0, 0).with_spin(SpinTag::new("M"));
        let b = ket(1, 0).with_spin(SpinTag::new("M'"));
        assert_eq!(dipole_element_bare(&a, 0, &b), 0.0);
        let b_same = ket(1, 0).with_spin(SpinTag::new("M"));
        assert_abs_diff_eq!(dipole_element_bare(&a, 0, &b_same), 1.0 / 3f64.sqrt(), epsilon = 1e-14);
    }

    #[test]
    fn quadrupole_bare_values() {
        assert_abs_diff_eq!(quadrupole_element_bare(&ket(0, 0), 0, &ket(2, 0)), 1.0 / 5f64.sqrt(), epsilon = 1e-14);
        assert_abs_diff_eq!(quadrupole_element_bare(&ket(2, 0), 0, &ket(2, 0)), 2.0 / 7.0, epsilon = 1e-14);
        assert_eq!(quadrupole_element_bare(&ket(0, 0), 0, &ket(0, 0)), 0.0);
        assert_eq!(quadrupole_element_bare(&ket(1, 0), 0, &ket(2, 0)), 0.0);
        assert_eq!(quadrupole_element_bare(&ket(0, 0), 0, &ket(3, 0)), 0.0);
        // <0 0|q_p|2 -p> = (-1)^p / sqrt(5)
        for p in -2..=2 {
            let sign = if p % 2 == 0 { 1.0 } else { -1.0 };
            assert_abs_diff_eq!(quadrupole_element_bare(&ket(0, 0), p, &ket(2, -p)), sign / 5f64.sqrt(), epsilon = 1e-14);
        }
    }

    #[test]
    fn dressed_matches_bare_at_zero_field() {
        let g = dressed_state(0, 0, 0.0, 8).unwrap();
        let two = dressed_state(2, 0, 0.0, 8).unwrap();
        assert_eq!(dressed_element(&g, InteractionKind::Dipole, 0, &g).unwrap(), 0.0);
        assert_eq!(dressed_element(&g, InteractionKind::Dipole, 0, &two).unwrap(), 0.0);
        assert_abs_diff_eq!(
            dressed_element(&g, InteractionKind::Quadrupole, 0, &two).unwrap(),
            1.0 / 5f64.sqrt(),
            epsilon = 1e-14
        );
    }

    #[test]
    fn first_order_induced_dipole() {
        let eta = 0.1;
        let g = dressed_state(0, 0, eta, 8).unwrap();
        let d = dressed_element(&g, InteractionKind::Dipole, 0, &g).unwrap();
        assert_abs_diff_eq!(d, eta / 3.0, epsilon = 1e-4);
    }

    #[test]
    fn mismatched_fields() {
        let a = dressed_state(0, 0, 0.5, 8).unwrap();
        let b = dressed_state(1, 0, 1.0, 8).unwrap();
        assert!(matches!(
            dressed_element(&a, InteractionKind::Dipole, 0, &b),
            Err(Error::MismatchedField { .. })
        ));
    }

    #[test]
    fn kind_parsing() {
        assert_eq!("Dipole".parse::<InteractionKind>().unwrap(), InteractionKind::Dipole);
        assert_eq!("quadrupole".parse::<InteractionKind>().unwrap(), InteractionKind::Quadrupole);
        assert!("octupole".parse::<InteractionKind>().is_err());
    }
}
