//! Real powers with the branch rules shared by both surface families.

use crate::error::{Error, Result};

pub fn is_integer(x: f64) -> bool {
    x.is_finite() && x.fract() == 0.0
}

/// Rejects the exponents whose antiderivatives become logarithmic.
pub fn check_exponent(m: f64) -> Result<()> {
    if !m.is_finite() {
        return Err(Error::InvalidArgument(format!("m = {m} is not finite")));
    }
    if m == -1.0 || m == 0.0 || m == 1.0 {
        return Err(Error::ExcludedExponent { m });
    }
    Ok(())
}

/// `x^p` restricted to real values. Integer exponents accept any sign of
/// `x`; fractional exponents need `x > 0`.
pub fn real_pow(x: f64, p: f64) -> Result<f64> {
    if is_integer(p) {
        if x == 0.0 && p < 0.0 {
            return Err(Error::SingularPoint(format!("0^{p} is a pole")));
        }
        if p.abs() <= i32::MAX as f64 {
            return Ok(x.powi(p as i32));
        }
        return Ok(x.powf(p));
    }
    if x < 0.0 {
        return Err(Error::BranchDomain(format!(
            "base {x} < 0 with fractional exponent {p} has no real value"
        )));
    }
    if x == 0.0 && p < 0.0 {
        return Err(Error::BranchDomain(format!(
            "base 0 with negative fractional exponent {p}"
        )));
    }
    Ok(x.powf(p))
}
