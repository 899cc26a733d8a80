//! XXZ coupling constants from single-molecule matrix elements.
//!
//! Couplings are pure molecular factors (units `d^2/R^3` or `q^2/R^5` with
//! the geometric factor split off, see [`geometric_prefactor`]).

use crate::error::{Error, Result};
use crate::multipole::{InteractionKind, MultipoleElements};

/// Coefficients of `J_perp/2 (S+S- + h.c.) + J_z SzSz + W (1 Sz + Sz 1) + V 1 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct XxzCouplings {
    pub kind: InteractionKind,
    pub j_z: f64,
    pub j_perp: f64,
    pub w: f64,
    pub v: f64,
}

impl XxzCouplings {
    pub fn new(kind: InteractionKind, j_z: f64, j_perp: f64, w: f64, v: f64) -> Self {
        Self { kind, j_z, j_perp, w, v }
    }
}

fn diagonal_sector(kind: InteractionKind, up: f64, down: f64, j_perp: f64) -> XxzCouplings {
    XxzCouplings {
        kind,
        j_z: (up - down).powi(2),
        j_perp,
        w: (up * up - down * down) / 2.0,
        v: (up + down).powi(2) / 4.0,
    }
}

pub fn xxz_dipole(elems: &MultipoleElements) -> Result<XxzCouplings> {
    elems.check_kind(InteractionKind::Dipole)?;
    let j_perp = 2.0 * elems.trans_0.powi(2) - elems.trans_p1.powi(2) - elems.trans_m1.powi(2);
    Ok(diagonal_sector(InteractionKind::Dipole, elems.diag_up, elems.diag_down, j_perp))
}

/// Quadrupole couplings; the exchange term weighs the `p = 0, ±1, ±2`
/// transition elements by 6, -4 and +1.
pub fn xxz_quadrupole(elems: &MultipoleElements) -> Result<XxzCouplings> {
    elems.check_kind(InteractionKind::Quadrupole)?;
    let j_perp = 2.0
        * (6.0 * elems.trans_0.powi(2) - 4.0 * (elems.trans_p1.powi(2) + elems.trans_m1.powi(2))
            + (elems.trans_p2.powi(2) + elems.trans_m2.powi(2)));
    Ok(diagonal_sector(InteractionKind::Quadrupole, elems.diag_up, elems.diag_down, j_perp))
}

/// Dispatches on `elems.kind`.
pub fn xxz(elems: &MultipoleElements) -> XxzCouplings {
    match elems.kind {
        InteractionKind::Dipole => xxz_dipole(elems),
        InteractionKind::Quadrupole => xxz_quadrupole(elems),
    }
    .expect("kind matches by construction")
}

/// Angular and radial factor multiplying the couplings for a pair at
/// distance `r` whose axis makes angle `theta` with the quantization axis.
pub fn geometric_prefactor(kind: InteractionKind, theta: f64, r: f64) -> Result<f64> {
    if r <= 0.0 || !r.is_finite() {
        return Err(Error::InvalidArgument(format!("pair distance R = {r} must be positive")));
    }
    let c2 = theta.cos().powi(2);
    Ok(angular_factor(kind, c2) / r.powi(2 * kind.rank() as i32 + 1))
}

pub(crate) fn angular_factor(kind: InteractionKind, cos2: f64) -> f64 {
    match kind {
        InteractionKind::Dipole => 1.0 - 3.0 * cos2,
        InteractionKind::Quadrupole => 0.375 * (35.0 / 3.0 * cos2 * cos2 - 10.0 * cos2 + 1.0),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::FRAC_PI_2;

    fn dipole(f: impl FnOnce(&mut MultipoleElements)) -> MultipoleElements {
        let mut e = MultipoleElements::zero(InteractionKind::Dipole);
        f(&mut e);
        e
    }

    fn quad(f: impl FnOnce(&mut MultipoleElements)) -> MultipoleElements {
        let mut e = MultipoleElements::zero(InteractionKind::Quadrupole);
        f(&mut e);
        e
    }

    #[test]
    fn dipole_examples() {
        let c = xxz_dipole(&MultipoleElements::zero(InteractionKind::Dipole)).unwrap();
        assert_eq!((c.j_z, c.j_perp, c.w, c.v), (0.0, 0.0, 0.0, 0.0));

        let c = xxz_dipole(&dipole(|e| e.diag_up = 1.0 / 3f64.sqrt())).unwrap();
        assert_abs_diff_eq!(c.j_z, 1.0 / 3.0, epsilon = 1e-15);
        assert_eq!(c.j_perp, 0.0);
        assert_abs_diff_eq!(c.w, 1.0 / 6.0, epsilon = 1e-15);
        assert_abs_diff_eq!(c.v, 1.0 / 12.0, epsilon = 1e-15);

        let c = xxz_dipole(&dipole(|e| e.trans_0 = 1.0 / 3f64.sqrt())).unwrap();
        assert_abs_diff_eq!(c.j_perp, 2.0 / 3.0, epsilon = 1e-15);
        assert_eq!((c.j_z, c.w, c.v), (0.0, 0.0, 0.0));
    }

    #[test]
    fn quadrupole_zero_field_examples() {
        let s5 = 1.0 / 5f64.sqrt();
        let c = xxz_quadrupole(&quad(|e| {
            e.trans_0 = s5;
            e.diag_down = 2.0 / 7.0;
        }))
        .unwrap();
        assert_abs_diff_eq!(c.j_perp, 2.4, epsilon = 1e-14);
        assert_abs_diff_eq!(c.j_z, 4.0 / 49.0, epsilon = 1e-15);

        let c = xxz_quadrupole(&quad(|e| e.trans_m1 = -s5)).unwrap();
        assert_abs_diff_eq!(c.j_perp, -1.6, epsilon = 1e-14);

        let c = xxz_quadrupole(&quad(|e| e.trans_p2 = s5)).unwrap();
        assert_abs_diff_eq!(c.j_perp, 0.4, epsilon = 1e-14);
    }

    #[test]
    fn kind_mismatch() {
        let q = MultipoleElements::zero(InteractionKind::Quadrupole);
        assert!(matches!(xxz_dipole(&q), Err(Error::KindMismatch { .. })));
        let d = MultipoleElements::zero(InteractionKind::Dipole);
        assert!(matches!(xxz_quadrupole(&d), Err(Error::KindMismatch { .. })));
    }

    #[test]
    fn prefactors() {
        let magic = (1.0 / 3f64.sqrt()).acos();
        assert_abs_diff_eq!(geometric_prefactor(InteractionKind::Dipole, magic, 1.0).unwrap(), 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(geometric_prefactor(InteractionKind::Dipole, FRAC_PI_2, 2.0).unwrap(), 0.125, epsilon = 1e-15);
        assert_abs_diff_eq!(geometric_prefactor(InteractionKind::Quadrupole, 0.0, 1.0).unwrap(), 1.0, epsilon = 1e-14);
        assert!(geometric_prefactor(InteractionKind::Dipole, 0.0, 0.0).is_err());
        assert!(geometric_prefactor(InteractionKind::Quadrupole, 0.0, -1.0).is_err());
    }

    #[test]
    fn quadrupole_to_dipole_ratio_scales_as_inverse_square() {
        let theta = FRAC_PI_2;
        let r = 500.0;
        let ratio = geometric_prefactor(InteractionKind::Quadrupole, theta, r).unwrap()
            / geometric_prefactor(InteractionKind::Dipole, theta, r).unwrap();
        // angular factors at theta = pi/2 are 3/8 and 1
        assert_abs_diff_eq!(ratio * r * r, 0.375, epsilon = 1e-12);
    }
}
