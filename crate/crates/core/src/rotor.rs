//! Rigid rotor in a dc electric field.
//!
//! The Hamiltonian `N^2 - eta d_0` (energies in units of B_e, field as
//! `eta = dE/B_e`) conserves `M_N`, so each `M_N` block is solved on its own
//! in the basis `N = |M_N| ..= N_max`. Eigenstates are labelled by the
//! zero-field level they connect to: states are followed from `eta = 0` in
//! steps of at most [`RAMP_STEP`] and matched by maximum overlap.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::multipole::dipole_element_bare;

/// Largest tolerated weight `|c_{N_max}|^2` of a requested dressed state.
pub const CONVERGENCE_THRESHOLD: f64 = 1e-10;

/// Rotational levels added above the highest requested one by [`default_n_max`].
pub const BASIS_MARGIN: u32 = 8;

/// Largest field step used when following states adiabatically.
pub const RAMP_STEP: f64 = 0.05;

/// Opaque label for the collective nuclear-spin projection of a state.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpinTag(pub String);

impl SpinTag {
    pub fn new(label: impl Into<String>) -> Self {
        SpinTag(label.into())
    }
}

impl std::fmt::Display for SpinTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

/// Bare rotor state `|N M_N>` with an optional nuclear-spin tag.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RotationalKet {
    pub n: u32,
    pub m: i32,
    pub spin: Option<SpinTag>,
}

impl RotationalKet {
    pub fn new(n: u32, m: i32) -> Result<Self> {
        if m.unsigned_abs() > n {
            return Err(Error::InvalidArgument(format!("|M_N| = {} exceeds N = {n}", m.abs())));
        }
        Ok(Self { n, m, spin: None })
    }

    pub fn with_spin(mut self, spin: SpinTag) -> Self {
        self.spin = Some(spin);
        self
    }
}

/// Field-dressed (pendular) state `|Ñ M_N> = sum_N c_N |N M_N>`.
#[derive(Debug, Clone, PartialEq)]
pub struct DressedKet {
    /// Adiabatic label Ñ, the zero-field rotational level.
    pub label: u32,
    pub m: i32,
    pub eta: f64,
    /// Energy in units of B_e.
    pub energy: f64,
    /// Coefficients for `N = |M_N| ..= N_max`.
    pub coeffs: Vec<f64>,
    pub spin: Option<SpinTag>,
}

impl DressedKet {
    pub fn n_min(&self) -> u32 {
        self.m.unsigned_abs()
    }

    pub fn n_max(&self) -> u32 {
        self.n_min() + self.coeffs.len() as u32 - 1
    }

    /// Coefficient `c_N`, zero outside the basis.
    pub fn coeff(&self, n: u32) -> f64 {
        n.checked_sub(self.n_min())
            .and_then(|i| self.coeffs.get(i as usize))
            .copied()
            .unwrap_or(0.0)
    }

    /// Weight `|c_{N_max}|^2` on the last basis state.
    pub fn tail_weight(&self) -> f64 {
        let last = *self.coeffs.last().expect("dressed state has at least one coefficient");
        last * last
    }

    pub fn check_converged(&self) -> Result<()> {
        let weight = self.tail_weight();
        if weight >= CONVERGENCE_THRESHOLD {
            return Err(Error::ConvergenceFailure {
                label: self.label,
                m: self.m,
                eta: self.eta,
                n_max: self.n_max(),
                weight,
                threshold: CONVERGENCE_THRESHOLD,
            });
        }
        Ok(())
    }

    pub fn with_spin(mut self, spin: Option<SpinTag>) -> Self {
        self.spin = spin;
        self
    }

    /// Overlap of the rotational parts, ignoring spin tags.
    pub fn overlap(&self, other: &DressedKet) -> f64 {
        if self.m != other.m {
            return 0.0;
        }
        self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a * b).sum()
    }
}

/// Basis cutoff used when the caller does not choose one.
pub fn default_n_max(label_max: u32, m: i32) -> u32 {
    label_max.max(m.unsigned_abs()) + BASIS_MARGIN
}

fn validate(m: i32, eta: f64, n_max: u32) -> Result<()> {
    if n_max < m.unsigned_abs() {
        return Err(Error::InvalidArgument(format!(
            "N_max = {n_max} is below |M_N| = {}",
            m.unsigned_abs()
        )));
    }
    if eta < 0.0 || !eta.is_finite() {
        return Err(Error::InvalidArgument(format!("field eta = {eta} must be finite and non-negative")));
    }
    Ok(())
}

/// Stark Hamiltonian restricted to one `M_N` block, in units of B_e.
pub fn build_stark_block(m: i32, eta: f64, n_max: u32) -> Result<DMatrix<f64>> {
    validate(m, eta, n_max)?;
    let n_min = m.unsigned_abs();
    let dim = (n_max - n_min + 1) as usize;
    let mut h = DMatrix::zeros(dim, dim);
    for i in 0..dim {
        let n = n_min + i as u32;
        h[(i, i)] = (n * (n + 1)) as f64;
        if i + 1 < dim && eta != 0.0 {
            let bra = RotationalKet { n, m, spin: None };
            let ket = RotationalKet { n: n + 1, m, spin: None };
            let coupling = -eta * dipole_element_bare(&bra, 0, &ket);
            h[(i, i + 1)] = coupling;
            h[(i + 1, i)] = coupling;
        }
    }
    Ok(h)
}

// Eigenpairs sorted by ascending energy.
fn diagonalize(m: i32, eta: f64, n_max: u32) -> Result<Vec<(f64, DVector<f64>)>> {
    let h = build_stark_block(m, eta, n_max)?;
    let dim = h.nrows();
    if eta == 0.0 {
        return Ok((0..dim)
            .map(|i| {
                let mut v = DVector::zeros(dim);
                v[i] = 1.0;
                (h[(i, i)], v)
            })
            .collect());
    }
    let eig = h.symmetric_eigen();
    let mut pairs: Vec<(f64, DVector<f64>)> = eig
        .eigenvalues
        .iter()
        .zip(eig.eigenvectors.column_iter())
        .map(|(&e, v)| (e, v.into_owned()))
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok(pairs)
}

fn fix_phase(v: &mut DVector<f64>) {
    let mut pivot = 0;
    for (i, c) in v.iter().enumerate() {
        if c.abs() > v[pivot].abs() {
            pivot = i;
        }
    }
    if v[pivot] < 0.0 {
        v.neg_mut();
    }
}

// Greedy maximum-overlap matching. Returns, for each tracked state, the
// index of the eigenvector that continues it.
fn match_states(previous: &[DVector<f64>], current: &[(f64, DVector<f64>)]) -> Vec<usize> {
    let mut pairs: Vec<(f64, usize, usize)> = Vec::with_capacity(previous.len() * current.len());
    for (i, p) in previous.iter().enumerate() {
        for (j, (_, c)) in current.iter().enumerate() {
            pairs.push((p.dot(c).abs(), i, j));
        }
    }
    pairs.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)).then(a.2.cmp(&b.2)));

    let mut assignment = vec![usize::MAX; previous.len()];
    let mut taken = vec![false; current.len()];
    let mut remaining = previous.len();
    for (_, i, j) in pairs {
        if remaining == 0 {
            break;
        }
        if assignment[i] == usize::MAX && !taken[j] {
            assignment[i] = j;
            taken[j] = true;
            remaining -= 1;
        }
    }
    assignment
}

/// Points at which the block is actually diagonalized: zero, the requested
/// values, and enough intermediate points to keep steps within [`RAMP_STEP`].
fn ramp_points(etas: &[f64]) -> Vec<(f64, Option<usize>)> {
    let mut points = vec![(0.0, None)];
    for (k, &eta) in etas.iter().enumerate() {
        let start = points.last().expect("ramp starts at zero").0;
        let span = eta - start;
        let steps = (span / RAMP_STEP).ceil() as usize;
        for s in 1..steps {
            points.push((start + span * s as f64 / steps as f64, None));
        }
        if eta == start {
            // duplicate grid value or eta = 0 itself
            if let Some(last) = points.last_mut() {
                if last.1.is_none() {
                    last.1 = Some(k);
                    continue;
                }
            }
        }
        points.push((eta, Some(k)));
    }
    points
}

/// Follows every state of the `M_N` block along an ascending field grid.
///
/// Returns, for each grid value, the dressed states of the block ordered by
/// label (`Ñ = |M_N|, |M_N|+1, ..., N_max`). No convergence check is made.
pub fn track_block(etas: &[f64], m: i32, n_max: u32) -> Result<Vec<Vec<DressedKet>>> {
    validate(m, 0.0, n_max)?;
    for &eta in etas {
        validate(m, eta, n_max)?;
    }
    if etas.windows(2).any(|w| w[1] < w[0]) {
        return Err(Error::InvalidArgument("field grid must be sorted ascending".into()));
    }

    let n_min = m.unsigned_abs();
    let mut out: Vec<Vec<DressedKet>> = vec![Vec::new(); etas.len()];
    let mut tracked: Vec<DVector<f64>> = Vec::new();

    for (eta, slot) in ramp_points(etas) {
        let eigen = diagonalize(m, eta, n_max)?;
        let mut energies = Vec::with_capacity(eigen.len());
        if tracked.is_empty() {
            // at zero field the ascending order is the N order
            for (e, v) in eigen {
                energies.push(e);
                tracked.push(v);
            }
        } else {
            let assignment = match_states(&tracked, &eigen);
            for (label_idx, &j) in assignment.iter().enumerate() {
                tracked[label_idx] = eigen[j].1.clone();
            }
            energies.extend(assignment.iter().map(|&j| eigen[j].0));
        }
        for v in tracked.iter_mut() {
            fix_phase(v);
        }

        if let Some(k) = slot {
            out[k] = tracked
                .iter()
                .zip(&energies)
                .enumerate()
                .map(|(i, (v, &energy))| DressedKet {
                    label: n_min + i as u32,
                    m,
                    eta,
                    energy,
                    coeffs: v.iter().copied().collect(),
                    spin: None,
                })
                .collect();
        }
    }
    Ok(out)
}

/// All dressed states of the `M_N` block at one field, ordered by label.
/// States are not checked for convergence; see [`DressedKet::check_converged`].
pub fn dressed_states(eta: f64, m: i32, n_max: u32) -> Result<Vec<DressedKet>> {
    let mut grid = track_block(&[eta], m, n_max)?;
    Ok(grid.pop().expect("one grid point"))
}

/// The dressed state `|Ñ M_N>` at one field, checked for basis convergence.
pub fn dressed_state(label: u32, m: i32, eta: f64, n_max: u32) -> Result<DressedKet> {
    dressed_scan(label, m, &[eta], n_max).map(|mut v| v.pop().expect("one grid point"))
}

/// One labelled state followed along an ascending grid, checked for
/// convergence at every point.
pub fn dressed_scan(label: u32, m: i32, etas: &[f64], n_max: u32) -> Result<Vec<DressedKet>> {
    if label < m.unsigned_abs() || label > n_max {
        return Err(Error::InvalidArgument(format!(
            "no state N~={label} with M_N={m} in a basis truncated at N_max={n_max}"
        )));
    }
    let idx = (label - m.unsigned_abs()) as usize;
    track_block(etas, m, n_max)?
        .into_iter()
        .map(|mut states| {
            let state = states.swap_remove(idx);
            state.check_converged()?;
            Ok(state)
        })
        .collect()
}

/// One point of a Stark map.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StarkLevel {
    pub eta: f64,
    pub label: u32,
    pub m: i32,
    /// Energy in units of B_e.
    pub energy: f64,
}

/// Energies of every `|Ñ M_N>` with `Ñ <= label_max` along a field grid,
/// sorted by `(eta, Ñ, M_N)`.
pub fn stark_map(etas: &[f64], label_max: u32, n_max: u32) -> Result<Vec<StarkLevel>> {
    if n_max < label_max {
        return Err(Error::InvalidArgument(format!(
            "N_max = {n_max} is below the highest requested level {label_max}"
        )));
    }
    let lm = label_max as i32;
    let mut blocks = Vec::with_capacity((2 * lm + 1) as usize);
    for m in -lm..=lm {
        blocks.push((m, track_block(etas, m, n_max)?));
    }

    let mut levels = Vec::new();
    for (k, &eta) in etas.iter().enumerate() {
        for label in 0..=label_max {
            for (m, grid) in &blocks {
                if m.unsigned_abs() > label {
                    continue;
                }
                let state = &grid[k][(label - m.unsigned_abs()) as usize];
                state.check_converged()?;
                levels.push(StarkLevel { eta, label, m: *m, energy: state.energy });
            }
        }
    }
    Ok(levels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    #[test]
    fn zero_field_block_is_diagonal() {
        let h = build_stark_block(0, 0.0, 2).unwrap();
        assert_eq!(h, DMatrix::from_diagonal(&DVector::from_vec(vec![0.0, 2.0, 6.0])));
    }

    #[test]
    fn two_level_block() {
        let h = build_stark_block(0, 1.0, 1).unwrap();
        let c = -1.0 / 3f64.sqrt();
        assert_abs_diff_eq!(h[(0, 0)], 0.0);
        assert_abs_diff_eq!(h[(1, 1)], 2.0);
        assert_abs_diff_eq!(h[(0, 1)], c, epsilon = 1e-15);
        assert_abs_diff_eq!(h[(1, 0)], c, epsilon = 1e-15);
    }

    #[test]
    fn single_state_block() {
        let h = build_stark_block(2, 5.0, 2).unwrap();
        assert_eq!(h.shape(), (1, 1));
        assert_eq!(h[(0, 0)], 6.0);
    }

    #[test]
    fn invalid_block_arguments() {
        assert!(matches!(build_stark_block(3, 1.0, 2), Err(Error::InvalidArgument(_))));
        assert!(matches!(build_stark_block(0, -0.1, 2), Err(Error::InvalidArgument(_))));
        assert!(matches!(build_stark_block(0, f64::NAN, 2), Err(Error::InvalidArgument(_))));
        assert!(RotationalKet::new(1, 2).is_err());
    }

    #[test]
    fn zero_field_states_are_bare() {
        let states = dressed_states(0.0, 0, 8).unwrap();
        let s = &states[2];
        assert_eq!(s.label, 2);
        assert_eq!(s.energy, 6.0);
        for n in 0..=8 {
            assert_eq!(s.coeff(n), if n == 2 { 1.0 } else { 0.0 });
        }
    }

    #[test]
    fn ramp_hits_requested_points_exactly() {
        let pts = ramp_points(&[0.0, 0.12, 0.12, 1.0]);
        let hits: Vec<(f64, usize)> = pts.iter().filter_map(|(e, k)| k.map(|k| (*e, k))).collect();
        assert_eq!(hits, vec![(0.0, 0), (0.12, 1), (0.12, 2), (1.0, 3)]);
        for w in pts.windows(2) {
            assert!(w[1].0 - w[0].0 <= RAMP_STEP + 1e-15);
        }
    }

    #[test]
    fn labels_follow_energy_order_within_a_block() {
        // distinct eigenvalues of an irreducible tridiagonal block never cross
        for &eta in &[0.3, 2.0, 7.5] {
            let states = dressed_states(eta, 1, 12).unwrap();
            for w in states.windows(2) {
                assert!(w[0].energy < w[1].energy);
                assert_eq!(w[1].label, w[0].label + 1);
            }
        }
    }

    #[test]
    fn phase_convention() {
        for s in dressed_states(3.0, 0, 10).unwrap() {
            let pivot = s.coeffs.iter().copied().fold(0.0f64, |a, c| if c.abs() > a.abs() { c } else { a });
            assert!(pivot > 0.0);
        }
    }

    #[test]
    fn unconverged_request_is_reported() {
        let err = dressed_state(2, 0, 40.0, 4).unwrap_err();
        assert!(matches!(err, Error::ConvergenceFailure { label: 2, m: 0, n_max: 4, .. }));
    }

    #[test]
    fn label_out_of_basis() {
        assert!(dressed_state(1, 2, 0.0, 8).is_err());
        assert!(dressed_state(9, 0, 0.0, 8).is_err());
    }

    #[test]
    fn unsorted_grid_rejected() {
        assert!(track_block(&[1.0, 0.5], 0, 6).is_err());
    }
}
