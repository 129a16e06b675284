//! Scalar building blocks: the Gaussian membership function and the softplus
//! width reparameterization.

use crate::error::{Error, Result};

/// Lower bound added to every derived width so a membership function can never collapse.
pub const SIGMA_MIN: f64 = 1e-3;

/// `exp(-(x - center)^2 / (2 sigma^2))`, in `(0, 1]` and exactly 1 at the center.
pub fn gaussian_membership(x: f64, center: f64, sigma: f64) -> Result<f64> {
    if !(x.is_finite() && center.is_finite() && sigma.is_finite()) {
        return Err(Error::NonFiniteInput(format!(
            "gaussian_membership(x={x}, center={center}, sigma={sigma})"
        )));
    }
    if sigma <= 0.0 {
        return Err(Error::Config(format!(
            "sigma must be positive, got {sigma}"
        )));
    }
    Ok(log_gaussian_unchecked(x, center, sigma).exp())
}

/// Log of the Gaussian membership. Always finite for finite arguments, which
/// is what lets the inference path stay stable when memberships underflow.
#[inline]
pub(crate) fn log_gaussian_unchecked(x: f64, center: f64, sigma: f64) -> f64 {
    let diff = x - center;
    -(diff * diff) / (2.0 * sigma * sigma)
}

/// Numerically stable `ln(1 + e^x)`.
#[inline]
pub fn softplus(x: f64) -> f64 {
    x.max(0.0) + (-x.abs()).exp().ln_1p()
}

/// Inverse of [`softplus`] for `y > 0`: `ln(e^y - 1)`.
#[inline]
pub fn softplus_inverse(y: f64) -> f64 {
    debug_assert!(y > 0.0);
    y + (-(-y).exp_m1()).ln()
}

/// Derivative of softplus.
#[inline]
pub(crate) fn logistic(x: f64) -> f64 {
    if x >= 0.0 {
        1.0 / (1.0 + (-x).exp())
    } else {
        let e = x.exp();
        e / (1.0 + e)
    }
}

/// Width derived from an unconstrained raw parameter.
#[inline]
pub fn sigma_from_param(rho: f64) -> f64 {
    SIGMA_MIN + softplus(rho)
}

/// Raw parameter that yields `sigma`. Requires `sigma > SIGMA_MIN`.
pub fn param_from_sigma(sigma: f64) -> Result<f64> {
    if !(sigma.is_finite() && sigma > SIGMA_MIN) {
        return Err(Error::Config(format!(
            "sigma must exceed {SIGMA_MIN}, got {sigma}"
        )));
    }
    Ok(softplus_inverse(sigma - SIGMA_MIN))
}
