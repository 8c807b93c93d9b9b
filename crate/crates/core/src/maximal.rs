//! Closed-form geometry of the spacelike Bour family.

use crate::catalog::{BourParams, Chart, Family, Interval, Rational};
use crate::error::{Error, Result};
use crate::forms::{FirstForm, FormSample, SecondForm};
use crate::lorentz::{CausalCharacter, Vec3L};
use crate::powers::{check_exponent, is_integer, real_pow};

const SINGULAR_EPS: f64 = 1e-12;

/// True on the loci r ∈ {0, ±1} where the induced metric degenerates.
pub fn is_singular_radius(r: f64) -> bool {
    r.abs() < SINGULAR_EPS || (r.abs() - 1.0).abs() < SINGULAR_EPS
}

fn check_radius(m: f64, r: f64) -> Result<()> {
    check_exponent(m)?;
    if !is_integer(m) && r <= 0.0 {
        return Err(Error::BranchDomain(format!(
            "fractional m = {m} needs r > 0, got r = {r}"
        )));
    }
    Ok(())
}

/// Returns (E, F, G) and whether `r` lies on a singular locus. Values are
/// still returned on the locus as long as they are finite.
pub fn first_form(m: f64, r: f64) -> Result<(FirstForm, bool)> {
    check_radius(m, r)?;
    let w = (1.0 - r * r).powi(2);
    let e = real_pow(r, 2.0 * m - 4.0)? * w;
    let g = real_pow(r, 2.0 * m - 2.0)? * w;
    Ok((FirstForm { e, f: 0.0, g }, is_singular_radius(r)))
}

/// Closed-form det I = [r^{2m-3}(1-r²)²]².
pub fn det_first_form(m: f64, r: f64) -> Result<f64> {
    check_radius(m, r)?;
    Ok((real_pow(r, 2.0 * m - 3.0)? * (1.0 - r * r).powi(2)).powi(2))
}

/// Unit timelike normal (1/(r²-1))·(2r cosθ, 2r sinθ, r²+1).
pub fn gauss_map(r: f64, theta: f64) -> Result<Vec3L> {
    let d = r * r - 1.0;
    if d.abs() < SINGULAR_EPS {
        return Err(Error::SingularPoint(format!(
            "Gauss map undefined at r = {r}"
        )));
    }
    Vec3L::try_new(
        2.0 * r * theta.cos() / d,
        2.0 * r * theta.sin() / d,
        (r * r + 1.0) / d,
    )
}

pub fn second_form(m: f64, r: f64, theta: f64) -> Result<(SecondForm, bool)> {
    check_radius(m, r)?;
    let (c, s) = ((m * theta).cos(), (m * theta).sin());
    let l = 2.0 * real_pow(r, m - 2.0)? * c;
    let mm = -2.0 * real_pow(r, m - 1.0)? * s;
    let n = -2.0 * real_pow(r, m)? * c;
    Ok((SecondForm { l, m: mm, n }, is_singular_radius(r)))
}

/// Closed-form det II = -4 r^{2m-2}.
pub fn det_second_form(m: f64, r: f64) -> Result<f64> {
    check_radius(m, r)?;
    Ok(-4.0 * real_pow(r, 2.0 * m - 2.0)?)
}

/// (K, H) with K = (2r^{2-m}/(1-r²)²)² and H = 0.
pub fn curvatures(m: f64, r: f64) -> Result<(f64, f64)> {
    check_radius(m, r)?;
    if is_singular_radius(r) {
        return Err(Error::SingularPoint(format!(
            "curvature undefined at r = {r}"
        )));
    }
    let k = (2.0 * real_pow(r, 2.0 - m)? / (1.0 - r * r).powi(2)).powi(2);
    Ok((k, 0.0))
}

/// Everything above at one point, for comparison against the oracle.
pub fn closed_form_sample(m: f64, r: f64, theta: f64) -> Result<FormSample> {
    let (first, _) = first_form(m, r)?;
    let (second, _) = second_form(m, r, theta)?;
    let gauss = gauss_map(r, theta)?;
    let (k, h) = curvatures(m, r)?;
    Ok(FormSample {
        first,
        second,
        gauss,
        k,
        h,
        character: CausalCharacter::Spacelike,
    })
}

/// Closed forms of the Cartesian B₃ chart (ζ = u + iv).
///
/// The curvature uses the factor (1 - u² - v²)⁴; the oracle rejects the
/// variant with (1 + u² + v²)⁴.
pub fn b3_cartesian_sample(u: f64, v: f64) -> Result<FormSample> {
    let rho = u * u + v * v;
    let w = rho - 1.0;
    if rho < SINGULAR_EPS || w.abs() < SINGULAR_EPS {
        return Err(Error::SingularPoint(format!(
            "Cartesian B3 is singular at ({u}, {v})"
        )));
    }
    let e = rho * w * w;
    let first = FirstForm { e, f: 0.0, g: e };
    let second = SecondForm {
        l: 2.0 * u,
        m: -2.0 * v,
        n: -2.0 * u,
    };
    let gauss = Vec3L::try_new(2.0 * u / w, 2.0 * v / w, (rho + 1.0) / w)?;
    let k = b3_cartesian_k(u, v);
    Ok(FormSample {
        first,
        second,
        gauss,
        k,
        h: 0.0,
        character: CausalCharacter::Spacelike,
    })
}

/// K = 4 / ((u²+v²)(1-u²-v²)⁴).
pub fn b3_cartesian_k(u: f64, v: f64) -> f64 {
    let rho = u * u + v * v;
    4.0 / (rho * (1.0 - rho).powi(4))
}

/// The misprinted variant 4 / ((u²+v²)(1+u²+v²)⁴), kept for the report.
pub fn b3_cartesian_k_printed(u: f64, v: f64) -> f64 {
    let rho = u * u + v * v;
    4.0 / (rho * (1.0 + rho).powi(4))
}

fn entry(
    label: &str,
    m: Rational,
    r: (f64, f64),
    theta: (f64, f64),
    figures: &[u32],
) -> BourParams {
    BourParams::new(
        label,
        Family::Spacelike,
        Chart::Polar,
        m,
        Interval::new(r.0, r.1),
        Interval::new(theta.0, theta.1),
        figures,
    )
}

/// The spacelike catalog: ten polar examples plus the Cartesian B₃ chart.
pub fn catalog() -> Vec<BourParams> {
    use std::f64::consts::PI;
    let r = Rational::new;
    vec![
        entry("B_3", r(3, 1), (-1.0, 1.0), (0.0, PI), &[1, 2]),
        BourParams::new(
            "B_3-cartesian",
            Family::Spacelike,
            Chart::Cartesian,
            r(3, 1),
            Interval::new(-1.0, 1.0),
            Interval::new(-1.0, 1.0),
            &[3, 4],
        ),
        entry("Enneper", r(2, 1), (-1.0, 1.0), (0.0, PI), &[5]),
        entry("Enneper-wide", r(2, 1), (-3.0, 3.0), (0.0, PI), &[6]),
        entry("B_1/2", r(1, 2), (-1.0, 1.0), (-2.0 * PI, 2.0 * PI), &[7]),
        entry(
            "B_3/2-wide",
            r(3, 2),
            (-3.0, 3.0),
            (-2.0 * PI, 2.0 * PI),
            &[8],
        ),
        entry("B_3/2", r(3, 2), (-1.0, 1.0), (-2.0 * PI, 2.0 * PI), &[9]),
        entry("B_2/3", r(2, 3), (-1.0, 1.0), (-3.0 * PI, 3.0 * PI), &[10]),
        entry("B_4/3", r(4, 3), (-2.0, 2.0), (-3.0 * PI, 3.0 * PI), &[11]),
        entry("B_5/2", r(5, 2), (-1.0, 1.0), (-2.0 * PI, 2.0 * PI), &[12]),
        entry("B_4", r(4, 1), (-1.0, 1.0), (0.0, 2.0 * PI), &[13]),
    ]
}
