//! Covariance-matrix algebra for the two-mode output field.
//!
//! Quadrature ordering is (q−, p−, q₊, p₊) with the convention
//! V_αβ = ⟨R_α R_β + R_β R_α⟩ − 2⟨R_α⟩⟨R_β⟩, so the vacuum is the identity.
//! Every state produced by the pipeline is in standard form: diagonal blocks
//! n·I and m·I with off-diagonal block diag(r, −r), captured by the
//! (n, m, r) triple.

use crate::circuit::ModePair;
use crate::error::{Error, Result};
use serde::Serialize;

/// Symplectic eigenvalues below 1 − PHYSICALITY_TOL flag the state as
/// perturbatively unphysical.
pub const PHYSICALITY_TOL: f64 = 1e-9;

/// The (n, m, r) triple of a standard-form two-mode covariance matrix.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StandardForm {
    pub n: f64,
    pub m: f64,
    pub r: f64,
}

impl StandardForm {
    pub fn new(n: f64, m: f64, r: f64) -> Self {
        StandardForm { n, m, r }
    }

    pub fn vacuum() -> Self {
        StandardForm { n: 1.0, m: 1.0, r: 0.0 }
    }

    /// det V = (nm − r²)²; the argument nm − r² is the quantity every
    /// closed-form correlator is built from.
    pub fn det_arg(&self) -> f64 {
        self.n * self.m - self.r * self.r
    }

    pub fn is_valid(&self) -> bool {
        self.n >= 1.0 && self.m >= 1.0 && self.r >= 0.0 && self.det_arg() > 0.0
    }

    /// Expand to the full 4×4 matrix.
    pub fn to_matrix(&self) -> CovMatrix4 {
        let (n, m, r) = (self.n, self.m, self.r);
        CovMatrix4 {
            entries: [
                [n, 0.0, r, 0.0],
                [0.0, n, 0.0, -r],
                [r, 0.0, m, 0.0],
                [0.0, -r, 0.0, m],
            ],
        }
    }
}

/// Full 4×4 real symmetric covariance matrix in (q−, p−, q₊, p₊) order.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CovMatrix4 {
    pub entries: [[f64; 4]; 4],
}

impl CovMatrix4 {
    pub fn determinant(&self) -> f64 {
        det4(&self.entries)
    }
}

fn det4(a: &[[f64; 4]; 4]) -> f64 {
    let mut m = *a;
    let mut det = 1.0;
    for col in 0..4 {
        let mut pivot = col;
        for row in col + 1..4 {
            if m[row][col].abs() > m[pivot][col].abs() {
                pivot = row;
            }
        }
        if m[pivot][col] == 0.0 {
            return 0.0;
        }
        if pivot != col {
            m.swap(pivot, col);
            det = -det;
        }
        det *= m[col][col];
        for row in col + 1..4 {
            let factor = m[row][col] / m[col][col];
            for k in col..4 {
                m[row][k] -= factor * m[col][k];
            }
        }
    }
    det
}

/// Physicality diagnostics from the symplectic spectrum of a standard-form
/// state. The perturbative Bogolyubov map yields ν_min < 1 at any f > 0;
/// that is reported, not rejected.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SymplecticDiagnostics {
    pub nu_min: f64,
    pub nu_max: f64,
    pub physical: bool,
}

/// Input quasi-vacuum: n = 2n₋ᵗʰ + 1, m = 2n₊ᵗʰ + 1, r = 0.
pub fn input_covariance(pair: &ModePair) -> StandardForm {
    StandardForm::new(2.0 * pair.n_minus + 1.0, 2.0 * pair.n_plus + 1.0, 0.0)
}

/// Output DCE state: a two-mode squeezed thermal state with squeezing
/// parameter 2f,
///   n = (2n₋+1) + f²(2n₊+1),
///   m = (2n₊+1) + f²(2n₋+1),
///   r = 2f(n₊ + n₋ + 1).
pub fn output_covariance(pair: &ModePair) -> StandardForm {
    let a = 2.0 * pair.n_minus + 1.0;
    let b = 2.0 * pair.n_plus + 1.0;
    let f = pair.f;
    StandardForm::new(a + f * f * b, b + f * f * a, 2.0 * f * (pair.n_plus + pair.n_minus + 1.0))
}

/// Pure-loss channel on the minus mode, closed form:
/// n' = ηn + (1 − η), m' = m, r' = √η r.
pub fn apply_loss_minus(state: &StandardForm, eta: f64) -> Result<StandardForm> {
    if !(0.0..=1.0).contains(&eta) {
        return Err(Error::domain(format!("eta must lie in [0, 1], got {eta}")));
    }
    // grouping keeps eta = 1 an exact identity
    Ok(StandardForm::new(
        eta * state.n + (1.0 - eta),
        state.m,
        eta.sqrt() * state.r,
    ))
}

/// Same channel by explicit construction: adjoin a vacuum ancilla,
/// V' = I₂ ⊕ V, apply the beam splitter B_s ⊕ I₂ on the (ancilla, minus)
/// pair and trace out the ancilla. Cross-check for `apply_loss_minus`.
pub fn apply_loss_minus_via_ancilla(state: &StandardForm, eta: f64) -> Result<StandardForm> {
    if !(0.0..=1.0).contains(&eta) {
        return Err(Error::domain(format!("eta must lie in [0, 1], got {eta}")));
    }
    // V' in ordering (q_a, p_a, q-, p-, q+, p+)
    let mut v = [[0.0f64; 6]; 6];
    v[0][0] = 1.0;
    v[1][1] = 1.0;
    let full = state.to_matrix().entries;
    for i in 0..4 {
        for j in 0..4 {
            v[i + 2][j + 2] = full[i][j];
        }
    }
    // S = B_s ⊕ I₂ with B_s mixing (ancilla, minus)
    let (c, s) = (eta.sqrt(), (1.0 - eta).sqrt());
    let mut bs = [[0.0f64; 6]; 6];
    for k in 0..2 {
        bs[k][k] = c;
        bs[k][k + 2] = -s;
        bs[k + 2][k] = s;
        bs[k + 2][k + 2] = c;
    }
    bs[4][4] = 1.0;
    bs[5][5] = 1.0;
    // S V' S^T
    let mut sv = [[0.0f64; 6]; 6];
    for i in 0..6 {
        for j in 0..6 {
            let mut acc = 0.0;
            for k in 0..6 {
                acc += bs[i][k] * v[k][j];
            }
            sv[i][j] = acc;
        }
    }
    let mut out = [[0.0f64; 6]; 6];
    for i in 0..6 {
        for j in 0..6 {
            let mut acc = 0.0;
            for k in 0..6 {
                acc += sv[i][k] * bs[j][k];
            }
            out[i][j] = acc;
        }
    }
    // trace out the ancilla: keep rows/cols 2..6
    Ok(StandardForm::new(out[2][2], out[4][4], out[2][4]))
}

/// Normalized Wigner function W(X) = exp(−Xᵀ V⁻¹ X) / (π² √det V) at a
/// phase-space point (q−, p−, q₊, p₊). The inverse uses the closed-form
/// block structure of the standard form.
pub fn wigner(state: &StandardForm, x: [f64; 4]) -> Result<f64> {
    let d = state.det_arg();
    if d <= 0.0 {
        return Err(Error::domain(format!(
            "singular covariance matrix: nm - r^2 = {d}"
        )));
    }
    let (n, m, r) = (state.n, state.m, state.r);
    let [qm, pm, qp, pp] = x;
    // V^{-1} splits into a q block [[m,-r],[-r,n]]/d and a p block
    // [[m,r],[r,n]]/d
    let quad_q = (m * qm * qm - 2.0 * r * qm * qp + n * qp * qp) / d;
    let quad_p = (m * pm * pm + 2.0 * r * pm * pp + n * pp * pp) / d;
    Ok((-(quad_q + quad_p)).exp() / (std::f64::consts::PI.powi(2) * d))
}

/// Symplectic spectrum of a standard-form state via the pairwise formula
/// ν = {√((n−r)(m−r)), √((n+r)(m+r))}. A negative product (r > min(n, m))
/// is reported as unphysical with ν_min = 0.
pub fn symplectic_eigenvalues(state: &StandardForm) -> SymplecticDiagnostics {
    let lo = (state.n - state.r) * (state.m - state.r);
    let hi = (state.n + state.r) * (state.m + state.r);
    if state.r > state.n.min(state.m) {
        // pairwise product turns negative (or meaningless): report as
        // maximally unphysical
        return SymplecticDiagnostics {
            nu_min: 0.0,
            nu_max: hi.max(0.0).sqrt(),
            physical: false,
        };
    }
    let nu_min = lo.sqrt();
    let nu_max = hi.sqrt();
    SymplecticDiagnostics {
        nu_min,
        nu_max,
        physical: nu_min >= 1.0 - PHYSICALITY_TOL,
    }
}
