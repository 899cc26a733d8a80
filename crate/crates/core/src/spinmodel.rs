//! Explicit spin-model matrices.
//!
//! Two-molecule matrices use the basis `(↑↑, ↑↓, ↓↑, ↓↓)`. For `n` spins the
//! basis index has site 0 as its most significant bit, with `↑` as bit 0
//! and `S_z|↑> = +1/2`. Only the secular part of the interaction, which
//! conserves total `S_z`, is represented.

use nalgebra::{DMatrix, Matrix4, Vector3};

use crate::couplings::{angular_factor, geometric_prefactor, XxzCouplings};
use crate::error::{Error, Result};
use crate::multipole::{InteractionKind, MultipoleElements};

/// Largest number of spins assembled as a dense matrix.
pub const MAX_SPINS: usize = 14;

// <ab|A B|cd> = <a|A|c><b|B|d>, with <down|T_p|up> taken from the swapped
// element set so that the exchange entry is built from both orderings.
fn project(elems: &MultipoleElements, weights: &[(i32, f64)]) -> Matrix4<f64> {
    let back = elems.swapped();
    let w0 = weights.iter().find(|(p, _)| *p == 0).map_or(0.0, |w| w.1);
    let (up, down) = (elems.diag_up, elems.diag_down);

    let mut exchange = 0.0;
    for &(p, w) in weights {
        // T_p on molecule i, T_-p on molecule j
        exchange += w * elems.transition(p) * back.transition(-p);
    }

    let mut h = Matrix4::zeros();
    h[(0, 0)] = w0 * up * up;
    h[(1, 1)] = w0 * up * down;
    h[(2, 2)] = w0 * down * up;
    h[(3, 3)] = w0 * down * down;
    h[(1, 2)] = exchange;
    h[(2, 1)] = exchange;
    h
}

/// Secular dipole-dipole operator `d_0 d_0 + (d_1 d_-1 + d_-1 d_1)/2`
/// projected onto the two-qubit space (geometry factored out).
pub fn oracle_project_dipole(elems: &MultipoleElements) -> Result<Matrix4<f64>> {
    elems.check_kind(InteractionKind::Dipole)?;
    Ok(project(elems, &[(0, 1.0), (1, 0.5), (-1, 0.5)]))
}

/// Secular quadrupole-quadrupole operator
/// `6 q_0 q_0 + 4 (q_1 q_-1 + q_-1 q_1) + (q_2 q_-2 + q_-2 q_2)` projected
/// onto the two-qubit space (geometry factored out).
pub fn oracle_project_quadrupole(elems: &MultipoleElements) -> Result<Matrix4<f64>> {
    elems.check_kind(InteractionKind::Quadrupole)?;
    Ok(project(elems, &[(0, 6.0), (1, 4.0), (-1, 4.0), (2, 1.0), (-2, 1.0)]))
}

/// Reads `J_z, J_perp, W, V` off a projected pair matrix.
pub fn couplings_from_projection(kind: InteractionKind, h: &Matrix4<f64>) -> XxzCouplings {
    XxzCouplings {
        kind,
        j_z: h[(0, 0)] - h[(1, 1)] - h[(2, 2)] + h[(3, 3)],
        j_perp: 2.0 * h[(1, 2)],
        w: (h[(0, 0)] - h[(3, 3)]) / 2.0,
        v: (h[(0, 0)] + h[(1, 1)] + h[(2, 2)] + h[(3, 3)]) / 4.0,
    }
}

/// The bracketed XXZ operator without the geometric factor.
pub fn xxz_pair_matrix(c: &XxzCouplings) -> Matrix4<f64> {
    let mut h = Matrix4::zeros();
    let sz = [0.5, 0.5, -0.5, -0.5];
    let sz_j = [0.5, -0.5, 0.5, -0.5];
    for s in 0..4 {
        h[(s, s)] = c.j_z * sz[s] * sz_j[s] + c.w * (sz[s] + sz_j[s]) + c.v;
    }
    h[(1, 2)] = c.j_perp / 2.0;
    h[(2, 1)] = c.j_perp / 2.0;
    h
}

pub fn pair_hamiltonian(c: &XxzCouplings, theta: f64, r: f64) -> Result<Matrix4<f64>> {
    Ok(xxz_pair_matrix(c) * geometric_prefactor(c.kind, theta, r)?)
}

/// Molecule positions and the field (quantization) axis.
#[derive(Debug, Clone, PartialEq)]
pub struct Geometry {
    positions: Vec<Vector3<f64>>,
    axis: Vector3<f64>,
}

impl Geometry {
    pub fn new(positions: Vec<Vector3<f64>>, axis: Vector3<f64>) -> Result<Self> {
        let norm = axis.norm();
        if norm <= 0.0 || !norm.is_finite() {
            return Err(Error::InvalidArgument("quantization axis must be a nonzero vector".into()));
        }
        for (i, a) in positions.iter().enumerate() {
            if a.iter().any(|x| !x.is_finite()) {
                return Err(Error::InvalidArgument(format!("position {i} is not finite")));
            }
            for (j, b) in positions.iter().enumerate().skip(i + 1) {
                if (a - b).norm() == 0.0 {
                    return Err(Error::InvalidArgument(format!("molecules {i} and {j} coincide")));
                }
            }
        }
        Ok(Self { positions, axis: axis / norm })
    }

    /// Evenly spaced chain along `direction`.
    pub fn chain(n: usize, spacing: f64, direction: Vector3<f64>, axis: Vector3<f64>) -> Result<Self> {
        let dir = direction.try_normalize(0.0).ok_or_else(|| {
            Error::InvalidArgument("chain direction must be a nonzero vector".into())
        })?;
        Self::new((0..n).map(|k| dir * (spacing * k as f64)).collect(), axis)
    }

    pub fn positions(&self) -> &[Vector3<f64>] {
        &self.positions
    }

    pub fn axis(&self) -> &Vector3<f64> {
        &self.axis
    }

    pub fn n_spins(&self) -> usize {
        self.positions.len()
    }

    /// Distance and `cos^2` of the angle to the axis for the pair `(i, j)`.
    pub fn pair(&self, i: usize, j: usize) -> (f64, f64) {
        let sep = self.positions[j] - self.positions[i];
        let r = sep.norm();
        let cos = sep.dot(&self.axis) / r;
        (r, cos * cos)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpinHamiltonian {
    pub n_spins: usize,
    pub matrix: DMatrix<f64>,
    pub kind: InteractionKind,
}

fn sz(state: usize, site: usize, n: usize) -> f64 {
    if (state >> (n - 1 - site)) & 1 == 0 {
        0.5
    } else {
        -0.5
    }
}

impl SpinHamiltonian {
    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// Diagonal of total `S_z` in the computational basis.
    pub fn total_sz(&self) -> Vec<f64> {
        (0..self.dim()).map(|s| (0..self.n_spins).map(|i| sz(s, i, self.n_spins)).sum()).collect()
    }

    /// Frobenius norm of `[H, sum_i S_z^i]`.
    pub fn magnetization_commutator_norm(&self) -> f64 {
        let mz = self.total_sz();
        let mut sum = 0.0;
        for ((a, b), h) in self.matrix.iter().enumerate().map(|(k, h)| ((k % self.dim(), k / self.dim()), h)) {
            let c = h * (mz[b] - mz[a]);
            sum += c * c;
        }
        sum.sqrt()
    }

    pub fn is_symmetric(&self) -> bool {
        self.matrix == self.matrix.transpose()
    }

    pub fn is_diagonal(&self) -> bool {
        self.matrix.iter().enumerate().all(|(k, &h)| h == 0.0 || k % self.dim() == k / self.dim())
    }
}

/// Sum of pair terms over all `i < j`, each scaled by its geometric factor.
pub fn lattice_hamiltonian(geom: &Geometry, c: &XxzCouplings) -> Result<SpinHamiltonian> {
    let n = geom.n_spins();
    if n > MAX_SPINS {
        return Err(Error::SizeLimit(n));
    }
    if n == 0 {
        return Err(Error::InvalidArgument("geometry has no molecules".into()));
    }
    let dim = 1usize << n;
    let mut h = DMatrix::zeros(dim, dim);
    for i in 0..n {
        for j in (i + 1)..n {
            let (r, cos2) = geom.pair(i, j);
            let f = angular_factor(c.kind, cos2) / r.powi(2 * c.kind.rank() as i32 + 1);
            if f == 0.0 {
                continue;
            }
            let flip = (1usize << (n - 1 - i)) | (1usize << (n - 1 - j));
            for s in 0..dim {
                let (zi, zj) = (sz(s, i, n), sz(s, j, n));
                h[(s, s)] += f * (c.j_z * zi * zj + c.w * (zi + zj) + c.v);
                if zi != zj && c.j_perp != 0.0 {
                    h[(s ^ flip, s)] += f * c.j_perp / 2.0;
                }
            }
        }
    }
    Ok(SpinHamiltonian { n_spins: n, matrix: h, kind: c.kind })
}
