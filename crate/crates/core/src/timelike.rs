//! Timelike minimal surfaces from null-coordinate data.
//!
//! A timelike minimal surface is `x(u, v) = Ω(u) + Ψ(v)` with Ω, Ψ null
//! curves. For monomial data `(f, g) = (u^p, u)`, `(𝔣, 𝔤) = (v^q, v)` both
//! legs integrate in closed form; the Bour surface of value m is p = q = m-2.
//! All inner products here use the (-,+,+) signature.

use std::f64::consts::PI;

use crate::catalog::{BourParams, Chart, Family, Interval, Rational};
use crate::error::{Error, Result};
use crate::forms::{FirstForm, FormSample, SecondForm};
use crate::lorentz::{inner, CausalCharacter, Signature, Vec3L};
use crate::powers::{check_exponent, is_integer, real_pow};

const SIG: Signature = Signature::Mpp;
const SINGULAR_EPS: f64 = 1e-12;

/// Exponents of `f(u) = u^f_exp` and `𝔣(v) = v^frak_f_exp`; both `g` and
/// `𝔤` are the identity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NullData {
    pub f_exp: f64,
    pub frak_f_exp: f64,
}

impl NullData {
    pub fn bour(m: f64) -> Result<Self> {
        check_exponent(m)?;
        Ok(NullData {
            f_exp: m - 2.0,
            frak_f_exp: m - 2.0,
        })
    }

    pub fn m(&self) -> f64 {
        self.f_exp + 2.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NullCoords {
    pub u: f64,
    pub v: f64,
}

/// `u = r cosθ`, `v = r sinθ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimelikePolar {
    pub r: f64,
    pub theta: f64,
}

impl TimelikePolar {
    pub fn new(r: f64, theta: f64) -> Self {
        TimelikePolar { r, theta }
    }

    pub fn to_null(self) -> NullCoords {
        NullCoords {
            u: self.r * self.theta.cos(),
            v: self.r * self.theta.sin(),
        }
    }
}

fn check_leg(exp: f64, x: f64, name: &str) -> Result<f64> {
    let m = exp + 2.0;
    check_exponent(m)?;
    if !is_integer(m) && x <= 0.0 {
        return Err(Error::BranchDomain(format!(
            "fractional m = {m} needs {name} > 0, got {name} = {x}"
        )));
    }
    Ok(m)
}

/// The u-leg Ω(u) = ∫ (-f(1+g²), f(1-g²), 2fg) du.
pub fn omega(data: &NullData, u: f64) -> Result<Vec3L> {
    let m = check_leg(data.f_exp, u, "u")?;
    let a = real_pow(u, m - 1.0)? / (m - 1.0);
    let b = real_pow(u, m + 1.0)? / (m + 1.0);
    let c = 2.0 * real_pow(u, m)? / m;
    Vec3L::try_new(-a - b, a - b, c)
}

/// The v-leg Ψ(v) = ∫ (𝔣(1+𝔤²), 𝔣(1-𝔤²), 2𝔣𝔤) dv.
pub fn psi(data: &NullData, v: f64) -> Result<Vec3L> {
    let m = check_leg(data.frak_f_exp, v, "v")?;
    let a = real_pow(v, m - 1.0)? / (m - 1.0);
    let b = real_pow(v, m + 1.0)? / (m + 1.0);
    let c = 2.0 * real_pow(v, m)? / m;
    Vec3L::try_new(a + b, a - b, c)
}

pub fn magid_immersion(data: &NullData, p: NullCoords) -> Result<Vec3L> {
    Ok(omega(data, p.u)? + psi(data, p.v)?)
}

/// The conjugate surface Ω(u) - Ψ(v).
pub fn conjugate_immersion(data: &NullData, p: NullCoords) -> Result<Vec3L> {
    Ok(omega(data, p.u)? - psi(data, p.v)?)
}

/// φ(u) = Ω'(u).
pub fn phi(data: &NullData, u: f64) -> Result<Vec3L> {
    check_leg(data.f_exp, u, "u")?;
    let f = real_pow(u, data.f_exp)?;
    Vec3L::try_new(-f * (1.0 + u * u), f * (1.0 - u * u), 2.0 * f * u)
}

/// μ(v) = Ψ'(v).
pub fn mu(data: &NullData, v: f64) -> Result<Vec3L> {
    check_leg(data.frak_f_exp, v, "v")?;
    let f = real_pow(v, data.frak_f_exp)?;
    Vec3L::try_new(f * (1.0 + v * v), f * (1.0 - v * v), 2.0 * f * v)
}

/// ⟨φ(u), φ(u)⟩, identically zero for a null curve.
pub fn null_residual(data: &NullData, u: f64) -> Result<f64> {
    let p = phi(data, u)?;
    Ok(inner(p, p, SIG))
}

/// ⟨μ(v), μ(v)⟩.
pub fn null_residual_v(data: &NullData, v: f64) -> Result<f64> {
    let q = mu(data, v)?;
    Ok(inner(q, q, SIG))
}

struct Trig {
    s: f64,
    c: f64,
    sc: f64,
}

fn polar_trig(m: f64, pt: TimelikePolar) -> Result<Trig> {
    check_exponent(m)?;
    let (s, c) = pt.theta.sin_cos();
    if !is_integer(m) && (pt.r <= 0.0 || s <= 0.0 || c <= 0.0) {
        return Err(Error::BranchDomain(format!(
            "fractional m = {m} needs r > 0 and theta in the open first quadrant, got ({}, {})",
            pt.r, pt.theta
        )));
    }
    Ok(Trig { s, c, sc: s * c })
}

fn polar_singular(m: f64, pt: TimelikePolar, t: &Trig) -> bool {
    pt.r.abs() < SINGULAR_EPS
        || (m != 2.0 && t.sc.abs() < SINGULAR_EPS)
        || (1.0 + pt.r * pt.r * t.sc).abs() < SINGULAR_EPS
}

/// (E, F, G) in the polar chart plus a flag for the degenerate loci.
pub fn timelike_first_form(m: f64, pt: TimelikePolar) -> Result<(FirstForm, bool)> {
    let t = polar_trig(m, pt)?;
    let r = pt.r;
    let w2 = (1.0 + r * r * t.sc).powi(2);
    let e = 4.0 * real_pow(r, 2.0 * m - 4.0)? * real_pow(t.sc, m - 1.0)? * w2;
    let f =
        2.0 * real_pow(r, 2.0 * m - 3.0)? * real_pow(t.sc, m - 2.0)? * w2 * (2.0 * pt.theta).cos();
    let g = -4.0 * real_pow(r, 2.0 * m - 2.0)? * real_pow(t.sc, m - 1.0)? * w2;
    Ok((FirstForm { e, f, g }, polar_singular(m, pt, &t)))
}

/// Closed-form det I = -[2 r^{2m-3} (sc)^{m-2} (1+r² sc)²]².
pub fn timelike_det_first_form(m: f64, pt: TimelikePolar) -> Result<f64> {
    let t = polar_trig(m, pt)?;
    let r = pt.r;
    let w2 = (1.0 + r * r * t.sc).powi(2);
    Ok(-(2.0 * real_pow(r, 2.0 * m - 3.0)? * real_pow(t.sc, m - 2.0)? * w2).powi(2))
}

/// Unit spacelike normal (1/(1+r² sc))·(r(c-s), r(c+s), r² sc - 1).
pub fn timelike_gauss_map(r: f64, theta: f64) -> Result<Vec3L> {
    let (s, c) = theta.sin_cos();
    let w = 1.0 + r * r * s * c;
    if w.abs() < SINGULAR_EPS {
        return Err(Error::SingularPoint(format!(
            "Gauss map undefined where 1 + r² sinθ cosθ = 0 (r = {r}, θ = {theta})"
        )));
    }
    Vec3L::try_new(r * (c - s) / w, r * (c + s) / w, (r * r * s * c - 1.0) / w)
}

pub fn timelike_second_form(m: f64, pt: TimelikePolar) -> Result<(SecondForm, bool)> {
    let t = polar_trig(m, pt)?;
    let r = pt.r;
    let (s, c) = (t.s, t.c);
    let l = -2.0 * real_pow(r, m - 2.0)? * (real_pow(s, m)? + real_pow(c, m)?);
    let mm = 2.0 * real_pow(r, m - 1.0)? * (s * real_pow(c, m - 1.0)? - c * real_pow(s, m - 1.0)?);
    let n =
        -2.0 * real_pow(r, m)? * (s * s * real_pow(c, m - 2.0)? + c * c * real_pow(s, m - 2.0)?);
    Ok((SecondForm { l, m: mm, n }, polar_singular(m, pt, &t)))
}

/// det II as printed alongside the polar second form: -4 r^{2m-2} (sc)^{m-2}.
///
/// The printed L, M, N give L·N - M² = +4 r^{2m-2} (sc)^{m-2}; this value
/// is kept only so reports can show the discrepancy.
pub fn timelike_det_ii_printed(m: f64, pt: TimelikePolar) -> Result<f64> {
    let t = polar_trig(m, pt)?;
    Ok(-4.0 * real_pow(pt.r, 2.0 * m - 2.0)? * real_pow(t.sc, m - 2.0)?)
}

/// det II = L·N - M² = 4 r^{2m-2} (sc)^{m-2}.
pub fn timelike_det_second_form(m: f64, pt: TimelikePolar) -> Result<f64> {
    Ok(-timelike_det_ii_printed(m, pt)?)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TimelikeCurvatures {
    /// det II / det I.
    pub k: f64,
    pub h: f64,
    /// (sc)^{2-m} (r^{2-m}/(1+r² sc)²)², the positive polar formula.
    pub k_printed: f64,
    pub agrees: bool,
}

pub fn timelike_curvatures(m: f64, pt: TimelikePolar) -> Result<TimelikeCurvatures> {
    let t = polar_trig(m, pt)?;
    if polar_singular(m, pt, &t) {
        return Err(Error::SingularPoint(format!(
            "timelike B_{m} is degenerate at (r, θ) = ({}, {})",
            pt.r, pt.theta
        )));
    }
    let w = 1.0 + pt.r * pt.r * t.sc;
    let k_printed = real_pow(t.sc, 2.0 - m)? * (real_pow(pt.r, 2.0 - m)? / (w * w)).powi(2);
    let k = -k_printed;
    Ok(TimelikeCurvatures {
        k,
        h: 0.0,
        k_printed,
        agrees: (k - k_printed).abs() <= 1e-9 * k.abs(),
    })
}

pub fn closed_form_sample(m: f64, pt: TimelikePolar) -> Result<FormSample> {
    let (first, _) = timelike_first_form(m, pt)?;
    let (second, _) = timelike_second_form(m, pt)?;
    let gauss = timelike_gauss_map(pt.r, pt.theta)?;
    let curv = timelike_curvatures(m, pt)?;
    Ok(FormSample {
        first,
        second,
        gauss,
        k: curv.k,
        h: curv.h,
        character: CausalCharacter::Timelike,
    })
}

/// Closed forms in the null chart (u, v) for any m:
/// E = G = 0, F = 2(uv)^{m-2}(1+uv)², L = -2u^{m-2}, M = 0, N = -2v^{m-2}.
pub fn cartesian_sample(m: f64, u: f64, v: f64) -> Result<FormSample> {
    check_exponent(m)?;
    if !is_integer(m) && (u <= 0.0 || v <= 0.0) {
        return Err(Error::BranchDomain(format!(
            "fractional m = {m} needs u, v > 0"
        )));
    }
    let w = 1.0 + u * v;
    if w.abs() < SINGULAR_EPS || (m != 2.0 && (u * v).abs() < SINGULAR_EPS) {
        return Err(Error::SingularPoint(format!(
            "timelike null chart is degenerate at ({u}, {v})"
        )));
    }
    let uv = u * v;
    let first = FirstForm {
        e: 0.0,
        f: 2.0 * real_pow(uv, m - 2.0)? * w * w,
        g: 0.0,
    };
    let second = SecondForm {
        l: -2.0 * real_pow(u, m - 2.0)?,
        m: 0.0,
        n: -2.0 * real_pow(v, m - 2.0)?,
    };
    let gauss = Vec3L::try_new((u - v) / w, (u + v) / w, (uv - 1.0) / w)?;
    let k = cartesian_k(m, u, v)?;
    Ok(FormSample {
        first,
        second,
        gauss,
        k,
        h: 0.0,
        character: CausalCharacter::Timelike,
    })
}

/// K = -(uv)^{2-m} / (1+uv)⁴.
pub fn cartesian_k(m: f64, u: f64, v: f64) -> Result<f64> {
    Ok(-real_pow(u * v, 2.0 - m)? / (1.0 + u * v).powi(4))
}

/// The polar coordinate functions written with powers of cosθ and sinθ.
pub fn polar_display(m: f64, r: f64, theta: f64) -> Result<Vec3L> {
    check_exponent(m)?;
    let (s, c) = theta.sin_cos();
    if !is_integer(m) && (r <= 0.0 || s <= 0.0 || c <= 0.0) {
        return Err(Error::BranchDomain(format!(
            "fractional m = {m} needs r > 0 and θ in (0, π/2)"
        )));
    }
    let p = |x: f64, e: f64| real_pow(x, e);
    let lo = p(r, m - 1.0)? / (m - 1.0);
    let hi = p(r, m + 1.0)? / (m + 1.0);
    Vec3L::try_new(
        -lo * (p(c, m - 1.0)? - p(s, m - 1.0)?) - hi * (p(c, m + 1.0)? - p(s, m + 1.0)?),
        lo * (p(c, m - 1.0)? + p(s, m - 1.0)?) - hi * (p(c, m + 1.0)? + p(s, m + 1.0)?),
        2.0 * p(r, m)? / m * (p(c, m)? + p(s, m)?),
    )
}

/// Timelike B₃ in the polar form with the cos 2θ first coordinate.
pub fn b3_timelike_polar(r: f64, theta: f64) -> Vec3L {
    let (s, c) = theta.sin_cos();
    let (r2, r4) = (r * r, r.powi(4));
    Vec3L::new(
        -(r2 / 2.0 + r4 / 4.0) * (2.0 * theta).cos(),
        r2 / 2.0 - r4 / 4.0 * (c.powi(4) + s.powi(4)),
        2.0 * r * r2 / 3.0 * (c.powi(3) + s.powi(3)),
    )
}

/// Timelike B₃ in null coordinates.
pub fn b3_timelike_cartesian(u: f64, v: f64) -> Vec3L {
    let (u2, v2) = (u * u, v * v);
    Vec3L::new(
        -(u2 - v2) / 2.0 - (u2 * u2 - v2 * v2) / 4.0,
        (u2 + v2) / 2.0 - (u2 * u2 + v2 * v2) / 4.0,
        2.0 / 3.0 * (u2 * u + v2 * v),
    )
}

fn entry(label: &str, m: i64, r: (f64, f64), theta: (f64, f64), figure: u32) -> BourParams {
    BourParams::new(
        label,
        Family::Timelike,
        Chart::Polar,
        Rational::new(m, 1),
        Interval::new(r.0, r.1),
        Interval::new(theta.0, theta.1),
        &[figure],
    )
}

pub fn timelike_catalog() -> Vec<BourParams> {
    vec![
        entry("T_3", 3, (-1.0, 1.0), (0.0, PI), 14),
        entry("T_2", 2, (-2.0, 2.0), (-PI / 2.0, PI / 2.0), 16),
        entry("T_2-wide", 2, (-3.0, 3.0), (-PI / 2.0, PI / 2.0), 17),
        entry("T_4", 4, (-1.0, 1.0), (0.0, PI), 18),
        entry("T_4-quadrant", 4, (-2.0, 2.0), (0.0, PI / 2.0), 19),
        entry("T_5", 5, (-0.003, 0.003), (0.0, PI), 20),
    ]
}

/// Timelike B₃ on the null chart u, v ∈ [-1, 1].
pub fn timelike_b3_cartesian_params() -> BourParams {
    BourParams::new(
        "T_3-cartesian",
        Family::Timelike,
        Chart::Cartesian,
        Rational::new(3, 1),
        Interval::new(-1.0, 1.0),
        Interval::new(-1.0, 1.0),
        &[15],
    )
}
