use std::f64::consts::PI;

use crate::error::{Error, Result};

pub const MAX_HERMITE_ORDER: usize = 256;

/// Gauss–Hermite rule for ∫ e^{−x²} f(x) dx.
///
/// Alongside the weights `wᵢ` the rule stores `wᵢ e^{xᵢ²}`, computed without
/// forming the (possibly underflowing) product, so that integrands can be
/// passed bare.
#[derive(Debug, Clone, PartialEq)]
pub struct GaussHermiteRule {
    nodes: Vec<f64>,
    weights: Vec<f64>,
    bare_weights: Vec<f64>,
}

impl GaussHermiteRule {
    pub fn order(&self) -> usize {
        self.nodes.len()
    }

    /// Nodes in increasing order.
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// `wᵢ e^{xᵢ²}`: weights for integrating a bare f(x) over the real line.
    pub fn bare_weights(&self) -> &[f64] {
        &self.bare_weights
    }

    /// Σ wᵢ f(xᵢ) ≈ ∫ e^{−x²} f(x) dx.
    pub fn integrate(&self, f: impl Fn(f64) -> f64) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&x, &w)| w * f(x)).sum()
    }
}

/// Orthonormal Hermite functions ψ_{n}(x), ψ_{n−1}(x) by upward recurrence.
fn hermite_functions(n: usize, x: f64) -> (f64, f64) {
    let mut prev = 0.0;
    let mut cur = PI.powf(-0.25) * (-0.5 * x * x).exp();
    for j in 1..=n {
        let jf = j as f64;
        let next = x * (2.0 / jf).sqrt() * cur - ((jf - 1.0) / jf).sqrt() * prev;
        prev = cur;
        cur = next;
    }
    (cur, prev)
}

/// Builds the n-point rule (1 ≤ n ≤ 256) by Newton iteration on the Hermite
/// recurrence, starting from the usual asymptotic guesses for the largest
/// roots and extrapolating inwards.
pub fn gauss_hermite(n: usize) -> Result<GaussHermiteRule> {
    if n == 0 || n > MAX_HERMITE_ORDER {
        return Err(Error::invalid(
            "order",
            format!("Gauss-Hermite order must be in 1..={MAX_HERMITE_ORDER}, got {n}"),
        ));
    }
    let nf = n as f64;
    let half = n.div_ceil(2);
    // descending positive roots (plus the zero root for odd n)
    let mut roots = vec![0.0; half];
    for i in 0..half {
        let mut z = match i {
            0 => (2.0 * nf + 1.0).sqrt() - 1.85575 * (2.0 * nf + 1.0).powf(-1.0 / 6.0),
            1 => roots[0] - 1.14 * nf.powf(0.426) / roots[0],
            2 => 1.86 * roots[1] - 0.86 * roots[0],
            3 => 1.91 * roots[2] - 0.91 * roots[1],
            _ => 2.0 * roots[i - 1] - roots[i - 2],
        };
        if n % 2 == 1 && i == half - 1 {
            z = 0.0;
        }
        for _ in 0..100 {
            let (psi_n, psi_nm1) = hermite_functions(n, z);
            let dpsi = (2.0 * nf).sqrt() * psi_nm1 - z * psi_n;
            let step = psi_n / dpsi;
            z -= step;
            if step.abs() <= 1e-14 * z.abs().max(1.0) {
                break;
            }
        }
        roots[i] = z;
    }

    let mut nodes = Vec::with_capacity(n);
    nodes.extend(roots.iter().map(|r| -r));
    let mirrored = if n % 2 == 1 { &roots[..half - 1] } else { &roots[..] };
    nodes.extend(mirrored.iter().rev());
    if n % 2 == 1 {
        nodes[half - 1] = 0.0;
    }

    // w e^{x²} = 1 / (n ψ_{n−1}(x)²)
    let bare_weights: Vec<f64> = nodes
        .iter()
        .map(|&x| {
            let (_, psi_nm1) = hermite_functions(n, x);
            1.0 / (nf * psi_nm1 * psi_nm1)
        })
        .collect();
    // symmetrise away last-bit asymmetries
    let mut bare = bare_weights.clone();
    for i in 0..n / 2 {
        let avg = 0.5 * (bare_weights[i] + bare_weights[n - 1 - i]);
        bare[i] = avg;
        bare[n - 1 - i] = avg;
    }
    let weights = nodes.iter().zip(&bare).map(|(&x, &b)| b * (-x * x).exp()).collect();
    Ok(GaussHermiteRule {
        nodes,
        weights,
        bare_weights: bare,
    })
}
