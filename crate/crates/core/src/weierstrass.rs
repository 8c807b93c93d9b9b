//! Spacelike maximal surfaces from holomorphic Weierstrass data.
//!
//! For data (F, G) the immersion is `Re ∫ (F(1+G²), iF(1-G²), 2FG) dζ`.
//! Only monomial data `F = C ζ^p`, `G = ζ` is supported; the Bour surface of
//! value m is `C = 1`, `p = m - 2`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::lorentz::Vec3L;
use crate::powers::{check_exponent, is_integer, real_pow};
use crate::quadrature;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeierstrassData {
    pub coeff: Complex64,
    pub exponent: f64,
}

impl WeierstrassData {
    pub fn new(coeff: Complex64, exponent: f64) -> Result<Self> {
        if coeff == Complex64::new(0.0, 0.0) || !coeff.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "Weierstrass coefficient must be finite and nonzero, got {coeff}"
            )));
        }
        if !exponent.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "exponent {exponent} is not finite"
            )));
        }
        Ok(WeierstrassData { coeff, exponent })
    }

    /// Data (ζ^{m-2}, ζ) of the Bour surface of value m.
    pub fn bour(m: f64) -> Result<Self> {
        check_exponent(m)?;
        WeierstrassData::new(Complex64::new(1.0, 0.0), m - 2.0)
    }

    /// The Bour value this exponent corresponds to.
    pub fn m(&self) -> f64 {
        self.exponent + 2.0
    }
}

/// ζ = r·e^{iθ}. θ is a winding parameter and is not reduced, so fractional
/// powers follow the sheet selected by θ.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComplexParam {
    pub r: f64,
    pub theta: f64,
}

impl ComplexParam {
    pub fn new(r: f64, theta: f64) -> Result<Self> {
        if !(r >= 0.0) || !r.is_finite() || !theta.is_finite() {
            return Err(Error::InvalidArgument(format!(
                "polar parameter needs finite r >= 0 and finite theta, got ({r}, {theta})"
            )));
        }
        Ok(ComplexParam { r, theta })
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::from_polar(self.r, self.theta)
    }

    /// `ζ^p` on the sheet fixed by θ.
    fn pow(self, p: f64) -> Result<Complex64> {
        if self.r == 0.0 {
            if p < 0.0 {
                return if is_integer(p) {
                    Err(Error::SingularPoint(format!("ζ^{p} has a pole at ζ = 0")))
                } else {
                    Err(Error::BranchDomain(format!(
                        "ζ^{p} is not defined at ζ = 0"
                    )))
                };
            }
            return Ok(if p == 0.0 {
                Complex64::new(1.0, 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            });
        }
        Ok(Complex64::from_polar(self.r.powf(p), p * self.theta))
    }
}

/// The three components `(F(1+G²), iF(1-G²), 2FG)` at ζ.
pub fn integrand(data: &WeierstrassData, zeta: ComplexParam) -> Result<[Complex64; 3]> {
    let f = data.coeff * zeta.pow(data.exponent)?;
    let g = zeta.to_complex();
    let g2 = g * g;
    let one = Complex64::new(1.0, 0.0);
    Ok([f * (one + g2), Complex64::i() * f * (one - g2), f * g * 2.0])
}

/// Termwise antiderivative of the monomial integrand, real part taken.
///
/// Valid for any coefficient; the Bour closed form is the `C = 1` case.
pub fn antiderivative(data: &WeierstrassData, zeta: ComplexParam) -> Result<Vec3L> {
    let p = data.exponent;
    check_exponent(p + 2.0)?;
    let lo = zeta.pow(p + 1.0)? / (p + 1.0);
    let mid = zeta.pow(p + 2.0)? / (p + 2.0);
    let hi = zeta.pow(p + 3.0)? / (p + 3.0);
    let c = data.coeff;
    Vec3L::try_new(
        (c * (lo + hi)).re,
        (Complex64::i() * c * (lo - hi)).re,
        (c * mid * 2.0).re,
    )
}

/// Bour's maximal surface of value m in polar form.
///
/// Negative `r` is evaluated with real integer powers when m is an
/// integer; fractional m needs `r > 0`.
pub fn bour_closed_form(m: f64, r: f64, theta: f64) -> Result<Vec3L> {
    check_exponent(m)?;
    if !is_integer(m) && r <= 0.0 {
        return Err(Error::BranchDomain(format!(
            "fractional m = {m} needs r > 0, got r = {r}"
        )));
    }
    let a = real_pow(r, m - 1.0)? / (m - 1.0);
    let b = real_pow(r, m + 1.0)? / (m + 1.0);
    let c = 2.0 * real_pow(r, m)? / m;
    let lo = (m - 1.0) * theta;
    let hi = (m + 1.0) * theta;
    Vec3L::try_new(
        a * lo.cos() + b * hi.cos(),
        -a * lo.sin() + b * hi.sin(),
        c * (m * theta).cos(),
    )
}

/// Base point for the integration constant: near the origin when the
/// integral from 0 converges, on the unit circle otherwise.
pub fn default_base(exponent: f64) -> ComplexParam {
    if exponent > -1.0 {
        ComplexParam {
            r: 1e-6,
            theta: 0.0,
        }
    } else {
        ComplexParam { r: 1.0, theta: 0.0 }
    }
}

const ORIGIN_TOL: f64 = 1e-12;

/// Numerical `Re ∫_base^ζ` along a radial segment at `base.theta` followed by
/// a circular arc at radius `zeta.r`, each leg with `steps` Gauss-Legendre
/// panels.
pub fn integrate_numeric(
    data: &WeierstrassData,
    zeta: ComplexParam,
    base: ComplexParam,
    steps: usize,
) -> Result<Vec3L> {
    if steps < 8 {
        return Err(Error::InvalidArgument(format!(
            "steps must be >= 8, got {steps}"
        )));
    }
    if zeta == base {
        return Ok(Vec3L::ZERO);
    }
    if data.exponent < 0.0 && base.r.min(zeta.r) <= ORIGIN_TOL {
        return Err(Error::PathThroughSingularity { tol: ORIGIN_TOL });
    }

    type Acc = [Complex64; 3];
    #[derive(Clone, Copy, Default)]
    struct Sum(Acc);
    impl std::ops::Add for Sum {
        type Output = Sum;
        fn add(self, o: Sum) -> Sum {
            Sum([self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2]])
        }
    }
    impl std::ops::Mul<f64> for Sum {
        type Output = Sum;
        fn mul(self, k: f64) -> Sum {
            Sum([self.0[0] * k, self.0[1] * k, self.0[2] * k])
        }
    }

    let mut failure = None;
    let mut eval = |r: f64, theta: f64, dz: Complex64| -> Sum {
        match integrand(data, ComplexParam { r, theta }) {
            Ok(v) => Sum([v[0] * dz, v[1] * dz, v[2] * dz]),
            Err(e) => {
                failure.get_or_insert(e);
                Sum::default()
            }
        }
    };

    let radial_dir = Complex64::from_polar(1.0, base.theta);
    let radial = quadrature::integrate(base.r, zeta.r, steps, |rho| {
        eval(rho, base.theta, radial_dir)
    });
    let arc = if zeta.theta != base.theta && zeta.r > 0.0 {
        quadrature::integrate(base.theta, zeta.theta, steps, |phi| {
            eval(
                zeta.r,
                phi,
                Complex64::i() * Complex64::from_polar(zeta.r, phi),
            )
        })
    } else {
        Sum::default()
    };
    if let Some(e) = failure {
        return Err(e);
    }
    let total = radial + arc;
    Vec3L::try_new(total.0[0].re, total.0[1].re, total.0[2].re)
}

/// Cartesian Bour surface of value 3, with ζ = u + iv.
pub fn b3_cartesian(u: f64, v: f64) -> Vec3L {
    let (u2, v2) = (u * u, v * v);
    Vec3L::new(
        u2 * u2 / 4.0 + v2 * v2 / 4.0 - 1.5 * u2 * v2 + u2 / 2.0 - v2 / 2.0,
        u2 * u * v - u * v2 * v - u * v,
        2.0 / 3.0 * u2 * u - 2.0 * u * v2,
    )
}
