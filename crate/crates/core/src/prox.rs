//! Proximal maps used by the primal-dual solvers.

use num_complex::Complex64;

use crate::quantizer::ConsistencySet;

/// Projection onto `{c : |c_i| ≤ λ}`, the prox of the conjugate of `λ‖·‖₁`.
/// Coefficients outside the ball keep their phase.
pub fn clip_complex(c: &mut [Complex64], lambda: f64) {
    for v in c {
        let r = libm::hypot(v.re, v.im);
        if r > lambda {
            *v *= lambda / r;
        }
    }
}

/// Prox of `σ ι_Γ*` via the Moreau decomposition: `p ← p − σ proj_Γ(p/σ)`.
pub fn box_conjugate_prox(p: &mut [f64], set: &ConsistencySet, sigma: f64) {
    for ((v, lo), hi) in p.iter_mut().zip(set.lower()).zip(set.upper()) {
        let projected = (*v / sigma).max(*lo).min(*hi);
        *v -= sigma * projected;
    }
}
