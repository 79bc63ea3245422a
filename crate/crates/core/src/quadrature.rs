//! Deterministic tensor-product quadrature over 1–4 dimensional phase
//! spaces.
//!
//! Node evaluation is spread across the rayon pool one slice of the first
//! axis at a time. Each slice is reduced by pairwise summation and the slice
//! totals are reduced the same way in index order, so the result does not
//! depend on the number of worker threads.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::specfun::{gauss_hermite, MAX_HERMITE_ORDER};

pub const MAX_DIMS: usize = 4;

/// One axis of a Gauss–Hermite tensor rule, mapped as `z = center + scale·u`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HermiteAxis {
    pub order: usize,
    pub center: f64,
    pub scale: f64,
}

/// One axis of a midpoint rule on `[lower, upper]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoxAxis {
    pub lower: f64,
    pub upper: f64,
    pub nodes: usize,
}

impl BoxAxis {
    pub fn new(lower: f64, upper: f64, nodes: usize) -> Self {
        BoxAxis { lower, upper, nodes }
    }

    pub fn spacing(&self) -> f64 {
        (self.upper - self.lower) / self.nodes as f64
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum QuadratureScheme {
    /// Gauss–Hermite on every axis; the e^{−u²} weight is divided out, so
    /// integrands are passed bare.
    TensorHermite(Vec<HermiteAxis>),
    /// Composite midpoint rule on a box.
    UniformBox(Vec<BoxAxis>),
}

impl QuadratureScheme {
    pub fn hermite_axes(axes: Vec<HermiteAxis>) -> Result<Self> {
        check_dims(axes.len())?;
        for a in &axes {
            if a.order == 0 || a.order > MAX_HERMITE_ORDER {
                return Err(Error::invalid(
                    "order",
                    format!("Hermite order must be in 1..={MAX_HERMITE_ORDER}, got {}", a.order),
                ));
            }
            if !(a.scale > 0.0 && a.scale.is_finite() && a.center.is_finite()) {
                return Err(Error::invalid(
                    "scale",
                    format!("need finite center and positive scale, got {a:?}"),
                ));
            }
        }
        Ok(QuadratureScheme::TensorHermite(axes))
    }

    /// Same order, unit-free `scale` and per-axis centre on every axis.
    pub fn hermite(order: usize, centers: &[f64], scale: f64) -> Result<Self> {
        Self::hermite_axes(
            centers
                .iter()
                .map(|&center| HermiteAxis { order, center, scale })
                .collect(),
        )
    }

    pub fn box_axes(axes: Vec<BoxAxis>) -> Result<Self> {
        check_dims(axes.len())?;
        for a in &axes {
            if a.nodes == 0 {
                return Err(Error::invalid("nodes", "box axes need at least one node"));
            }
            if !(a.lower < a.upper && a.lower.is_finite() && a.upper.is_finite()) {
                return Err(Error::invalid(
                    "bounds",
                    format!("need finite lower < upper, got [{}, {}]", a.lower, a.upper),
                ));
            }
        }
        Ok(QuadratureScheme::UniformBox(axes))
    }

    /// The cube `[−half_width, half_width]^dims` with `nodes` per axis.
    pub fn centered_box(dims: usize, half_width: f64, nodes: usize) -> Result<Self> {
        Self::box_axes(vec![BoxAxis::new(-half_width, half_width, nodes); dims])
    }

    pub fn dims(&self) -> usize {
        match self {
            QuadratureScheme::TensorHermite(a) => a.len(),
            QuadratureScheme::UniformBox(a) => a.len(),
        }
    }

    pub fn node_count(&self) -> usize {
        match self {
            QuadratureScheme::TensorHermite(a) => a.iter().map(|a| a.order).product(),
            QuadratureScheme::UniformBox(a) => a.iter().map(|a| a.nodes).product(),
        }
    }

    /// Largest per-axis order or node count.
    pub fn max_order(&self) -> usize {
        match self {
            QuadratureScheme::TensorHermite(a) => a.iter().map(|a| a.order).max().unwrap_or(0),
            QuadratureScheme::UniformBox(a) => a.iter().map(|a| a.nodes).max().unwrap_or(0),
        }
    }

    /// Doubles every order (halves every box spacing), clipped at `cap`.
    /// `None` once every axis already sits at the cap.
    pub fn refined(&self, cap: usize) -> Option<Self> {
        match self {
            QuadratureScheme::TensorHermite(axes) => {
                if axes.iter().all(|a| a.order >= cap) {
                    return None;
                }
                Some(QuadratureScheme::TensorHermite(
                    axes.iter()
                        .map(|a| HermiteAxis {
                            order: (2 * a.order).min(cap),
                            ..*a
                        })
                        .collect(),
                ))
            }
            QuadratureScheme::UniformBox(axes) => {
                if axes.iter().all(|a| a.nodes >= cap) {
                    return None;
                }
                Some(QuadratureScheme::UniformBox(
                    axes.iter()
                        .map(|a| BoxAxis {
                            nodes: (2 * a.nodes).min(cap),
                            ..*a
                        })
                        .collect(),
                ))
            }
        }
    }

    /// Reorders the axes: new axis `i` is old axis `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        match self {
            QuadratureScheme::TensorHermite(a) => QuadratureScheme::TensorHermite(perm.iter().map(|&i| a[i]).collect()),
            QuadratureScheme::UniformBox(a) => QuadratureScheme::UniformBox(perm.iter().map(|&i| a[i]).collect()),
        }
    }

    /// Per-axis node coordinates and weights.
    fn axis_rules(&self) -> Result<Vec<(Vec<f64>, Vec<f64>)>> {
        match self {
            QuadratureScheme::TensorHermite(axes) => axes
                .iter()
                .map(|a| {
                    let rule = gauss_hermite(a.order)?;
                    let coords = rule.nodes().iter().map(|u| a.center + a.scale * u).collect();
                    let weights = rule.bare_weights().iter().map(|w| a.scale * w).collect();
                    Ok((coords, weights))
                })
                .collect(),
            QuadratureScheme::UniformBox(axes) => Ok(axes
                .iter()
                .map(|a| {
                    let h = a.spacing();
                    let coords = (0..a.nodes).map(|i| a.lower + (i as f64 + 0.5) * h).collect();
                    (coords, vec![h; a.nodes])
                })
                .collect()),
        }
    }
}

fn check_dims(dims: usize) -> Result<()> {
    if (1..=MAX_DIMS).contains(&dims) {
        Ok(())
    } else {
        Err(Error::invalid(
            "dims",
            format!("quadrature supports 1..={MAX_DIMS} dimensions, got {dims}"),
        ))
    }
}

/// Pairwise (cascade) summation in a fixed order.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    const BLOCK: usize = 32;
    if values.len() <= BLOCK {
        let mut s = 0.0;
        for v in values {
            s += v;
        }
        s
    } else {
        let mid = values.len() / 2;
        pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
    }
}

/// Weighted node values of one first-axis slice, summed pairwise.
fn slice_sum<F>(f: &F, rules: &[(Vec<f64>, Vec<f64>)], i0: usize) -> Result<f64>
where
    F: Fn(&[f64]) -> Result<f64>,
{
    let dims = rules.len();
    let mut point = [0.0; MAX_DIMS];
    point[0] = rules[0].0[i0];
    let w0 = rules[0].1[i0];
    if dims == 1 {
        let v = f(&point[..1])?;
        return finite_or_err(v, &point[..1]).map(|v| w0 * v);
    }
    let inner: usize = rules[1..].iter().map(|r| r.0.len()).product();
    let mut terms = Vec::with_capacity(inner);
    let mut idx = [0usize; MAX_DIMS];
    loop {
        let mut w = w0;
        for d in 1..dims {
            point[d] = rules[d].0[idx[d]];
            w *= rules[d].1[idx[d]];
        }
        let v = f(&point[..dims])?;
        terms.push(w * finite_or_err(v, &point[..dims])?);
        // odometer over axes 1..dims, last axis fastest
        let mut d = dims - 1;
        loop {
            idx[d] += 1;
            if idx[d] < rules[d].0.len() {
                break;
            }
            idx[d] = 0;
            if d == 1 {
                return Ok(pairwise_sum(&terms));
            }
            d -= 1;
        }
    }
}

fn finite_or_err(v: f64, node: &[f64]) -> Result<f64> {
    if v.is_finite() {
        Ok(v)
    } else {
        Err(Error::NonFinite {
            value: v,
            node: node.to_vec(),
        })
    }
}

/// Tensor-product estimate of ∫ f over the scheme's domain.
pub fn integrate<F>(f: F, dims: usize, scheme: &QuadratureScheme) -> Result<f64>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    try_integrate(|z| Ok(f(z)), dims, scheme)
}

/// [`integrate`] for integrands that can fail; the first failing node in
/// index order is reported.
pub fn try_integrate<F>(f: F, dims: usize, scheme: &QuadratureScheme) -> Result<f64>
where
    F: Fn(&[f64]) -> Result<f64> + Sync,
{
    if dims != scheme.dims() {
        return Err(Error::invalid(
            "dims",
            format!("integrand has {dims} dimensions, scheme has {}", scheme.dims()),
        ));
    }
    let rules = scheme.axis_rules()?;
    let slices: Vec<Result<f64>> = (0..rules[0].0.len())
        .into_par_iter()
        .map(|i0| slice_sum(&f, &rules, i0))
        .collect();
    let slices: Vec<f64> = slices.into_iter().collect::<Result<_>>()?;
    Ok(pairwise_sum(&slices))
}

/// Outcome of [`refine_until`].
#[derive(Debug, Clone, PartialEq)]
pub struct Refinement {
    pub value: f64,
    /// Relative change between the last two estimates.
    pub achieved_tol: f64,
    pub converged: bool,
    /// The finest scheme evaluated.
    pub scheme: QuadratureScheme,
}

/// Doubles the resolution until successive estimates agree to `rel_tol`,
/// stopping at per-axis order [`MAX_HERMITE_ORDER`].
pub fn refine_until<F>(f: F, dims: usize, scheme: &QuadratureScheme, rel_tol: f64) -> Result<Refinement>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    refine_until_capped(f, dims, scheme, rel_tol, MAX_HERMITE_ORDER)
}

pub fn refine_until_capped<F>(
    f: F,
    dims: usize,
    scheme: &QuadratureScheme,
    rel_tol: f64,
    cap: usize,
) -> Result<Refinement>
where
    F: Fn(&[f64]) -> f64 + Sync,
{
    if !(rel_tol > 1e-14) {
        return Err(Error::invalid("rel_tol", format!("must exceed 1e-14, got {rel_tol}")));
    }
    let mut current = scheme.clone();
    let mut value = integrate(&f, dims, &current)?;
    let mut achieved = f64::INFINITY;
    while let Some(next) = current.refined(cap) {
        let next_value = integrate(&f, dims, &next)?;
        achieved = (next_value - value).abs() / next_value.abs().max(f64::MIN_POSITIVE);
        current = next;
        value = next_value;
        if achieved <= rel_tol {
            return Ok(Refinement {
                value,
                achieved_tol: achieved,
                converged: true,
                scheme: current,
            });
        }
    }
    Ok(Refinement {
        value,
        achieved_tol: achieved,
        converged: false,
        scheme: current,
    })
}
