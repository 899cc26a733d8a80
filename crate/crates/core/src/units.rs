//! Conversion from laboratory units to the reduced field `eta = dE/B_e`.

use crate::error::{Error, Result};

const SPEED_OF_LIGHT: f64 = 299_792_458.0; // m/s, exact
const PLANCK: f64 = 6.626_070_15e-34; // J s, exact

/// One debye in C m (`1e-21 / c`).
pub const DEBYE: f64 = 1e-21 / SPEED_OF_LIGHT;

/// `(1 D)(1 kV/cm) / h` expressed in MHz.
pub const MHZ_PER_DEBYE_KV_CM: f64 = DEBYE * 1e5 / PLANCK / 1e6;

/// Reduced field for a dipole `d` (debye), rotational constant `B_e` (MHz)
/// and field strength `E` (kV/cm).
pub fn convert_field(d_debye: f64, b_e_mhz: f64, e_kv_cm: f64) -> Result<f64> {
    if b_e_mhz <= 0.0 || !b_e_mhz.is_finite() {
        return Err(Error::InvalidArgument(format!("B_e = {b_e_mhz} MHz must be positive")));
    }
    if d_debye < 0.0 || !d_debye.is_finite() {
        return Err(Error::InvalidArgument(format!("dipole moment {d_debye} D must be non-negative")));
    }
    if !e_kv_cm.is_finite() {
        return Err(Error::InvalidArgument(format!("field {e_kv_cm} kV/cm is not finite")));
    }
    Ok(MHZ_PER_DEBYE_KV_CM * d_debye * e_kv_cm / b_e_mhz)
}
