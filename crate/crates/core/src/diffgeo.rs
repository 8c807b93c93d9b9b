//! Finite-difference oracle for fundamental forms and curvatures.
//!
//! The patch is an opaque map, so the same code checks closed forms,
//! quadrature-based surfaces and anything else with a parameter box.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::Interval;
use crate::error::{Error, Result};
use crate::forms::{FirstForm, FormSample, SecondForm};
use crate::lorentz::{inner, lorentz_cross, CausalCharacter, Signature, Vec3L};

pub type PointMap = Arc<dyn Fn(f64, f64) -> Result<Vec3L> + Send + Sync>;
type Indicator = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;

/// A curve `g(s, t) = 0` where the parametrization degenerates. Points with
/// `|g| < band` are excluded from scans.
#[derive(Clone)]
pub struct Locus {
    pub description: String,
    pub band: f64,
    /// The map itself is smooth across the curve and only the metric
    /// degenerates, so stencils need not shrink near it.
    pub smooth_map: bool,
    indicator: Indicator,
}

impl Locus {
    pub fn new(
        description: &str,
        band: f64,
        g: impl Fn(f64, f64) -> f64 + Send + Sync + 'static,
    ) -> Self {
        Locus {
            description: description.to_string(),
            band,
            smooth_map: false,
            indicator: Arc::new(g),
        }
    }

    pub fn smooth(mut self) -> Self {
        self.smooth_map = true;
        self
    }

    pub fn value(&self, s: f64, t: f64) -> f64 {
        (self.indicator)(s, t)
    }

    /// Linearized distance to the locus along each parameter axis.
    fn axis_distances(&self, s: f64, t: f64) -> (f64, f64) {
        let g = self.value(s, t);
        let ds = 1e-7 * (1.0 + s.abs());
        let dt = 1e-7 * (1.0 + t.abs());
        let gs = (self.value(s + ds, t) - self.value(s - ds, t)) / (2.0 * ds);
        let gt = (self.value(s, t + dt) - self.value(s, t - dt)) / (2.0 * dt);
        let dist = |d: f64| {
            if d == 0.0 {
                f64::INFINITY
            } else {
                g.abs() / d.abs()
            }
        };
        (dist(gs), dist(gt))
    }
}

impl fmt::Debug for Locus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Locus({:?}, band {})", self.description, self.band)
    }
}

#[derive(Clone)]
pub struct SurfacePatch {
    pub label: String,
    pub s_range: Interval,
    pub t_range: Interval,
    pub sig: Signature,
    pub loci: Vec<Locus>,
    /// Where `eval` may be called; contains the sampled ranges.
    pub window: (Interval, Interval),
    eval: PointMap,
}

impl fmt::Debug for SurfacePatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SurfacePatch")
            .field("label", &self.label)
            .field("s_range", &self.s_range)
            .field("t_range", &self.t_range)
            .field("sig", &self.sig)
            .field("loci", &self.loci)
            .field("window", &self.window)
            .finish()
    }
}

impl SurfacePatch {
    pub fn new(
        label: &str,
        eval: impl Fn(f64, f64) -> Result<Vec3L> + Send + Sync + 'static,
        s_range: Interval,
        t_range: Interval,
        sig: Signature,
    ) -> Self {
        Self::from_arc(label, Arc::new(eval), s_range, t_range, sig)
    }

    pub fn from_arc(
        label: &str,
        eval: PointMap,
        s_range: Interval,
        t_range: Interval,
        sig: Signature,
    ) -> Self {
        SurfacePatch {
            label: label.to_string(),
            s_range,
            t_range,
            sig,
            loci: Vec::new(),
            window: (s_range, t_range),
            eval,
        }
    }

    /// Lets stencils reach `margin` past each end of the sampled ranges,
    /// for maps defined beyond them.
    pub fn with_margin(mut self, margin: f64) -> Self {
        let grow = |i: Interval| Interval::new(i.lo - margin, i.hi + margin);
        self.window = (grow(self.s_range), grow(self.t_range));
        self
    }

    pub fn with_locus(mut self, locus: Locus) -> Self {
        self.loci.push(locus);
        self
    }

    pub fn eval(&self, s: f64, t: f64) -> Result<Vec3L> {
        (self.eval)(s, t)
    }

    /// The first locus whose exclusion band contains (s, t).
    pub fn banned_by(&self, s: f64, t: f64) -> Option<&Locus> {
        self.loci.iter().find(|l| l.value(s, t).abs() < l.band)
    }

    /// Bit i is set when locus i's indicator is positive. Points with the
    /// same key lie on the same side of every singular curve.
    pub fn sign_class(&self, s: f64, t: f64) -> u64 {
        self.loci.iter().enumerate().fold(0, |acc, (i, l)| {
            if l.value(s, t) > 0.0 {
                acc | 1 << i
            } else {
                acc
            }
        })
    }

    fn inside(&self, s: f64, t: f64) -> bool {
        self.window.0.contains(s) && self.window.1.contains(t)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OracleConfig {
    /// Step of the second-order Jacobian, and of every stencil when
    /// `stencil_fraction` is zero.
    pub step: f64,
    /// Local step as a fraction of the distance to the nearest singular
    /// locus (or of the domain width, capped at 0.5).
    pub stencil_fraction: f64,
    /// Relative threshold on |det I| / (|x_s|² |x_t|²).
    pub degeneracy_tol: f64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            step: 1e-5,
            stencil_fraction: 0.03,
            degeneracy_tol: 1e-10,
        }
    }
}

impl OracleConfig {
    /// Every stencil uses the fixed step `h`.
    pub fn fixed(step: f64) -> Self {
        OracleConfig {
            step,
            stencil_fraction: 0.0,
            ..Default::default()
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.step > 0.0 && self.step.is_finite()) {
            return Err(Error::InvalidArgument(format!(
                "step must be positive, got {}",
                self.step
            )));
        }
        if !(self.degeneracy_tol > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "degeneracy tolerance must be positive, got {}",
                self.degeneracy_tol
            )));
        }
        if !(0.0..=0.1).contains(&self.stencil_fraction) {
            return Err(Error::InvalidArgument(format!(
                "stencil fraction must lie in [0, 0.1], got {}",
                self.stencil_fraction
            )));
        }
        Ok(())
    }
}

/// Central differences with step `cfg.step`, second order.
pub fn jacobian(
    patch: &SurfacePatch,
    s: f64,
    t: f64,
    cfg: &OracleConfig,
) -> Result<(Vec3L, Vec3L)> {
    let h = cfg.step;
    if !patch.inside(s - h, t - h) || !patch.inside(s + h, t + h) {
        return Err(Error::DomainEdge { s, t });
    }
    let xs = (patch.eval(s + h, t)? - patch.eval(s - h, t)?) * (0.5 / h);
    let xt = (patch.eval(s, t + h)? - patch.eval(s, t - h)?) * (0.5 / h);
    Ok((xs, xt))
}

const REACH: usize = 4;
const D1: [f64; 9] = [
    1.0 / 280.0,
    -4.0 / 105.0,
    1.0 / 5.0,
    -4.0 / 5.0,
    0.0,
    4.0 / 5.0,
    -1.0 / 5.0,
    4.0 / 105.0,
    -1.0 / 280.0,
];
const D2: [f64; 9] = [
    -1.0 / 560.0,
    8.0 / 315.0,
    -1.0 / 5.0,
    8.0 / 5.0,
    -205.0 / 72.0,
    8.0 / 5.0,
    -1.0 / 5.0,
    8.0 / 315.0,
    -1.0 / 560.0,
];

/// Stencil steps (h_s, h_t) at (s, t).
fn local_steps(patch: &SurfacePatch, s: f64, t: f64, cfg: &OracleConfig) -> Result<(f64, f64)> {
    let (ws, wt) = patch.window;
    let edge_s = (s - ws.lo).min(ws.hi - s);
    let edge_t = (t - wt.lo).min(wt.hi - t);
    let reach = REACH as f64;
    let (hs, ht) = if cfg.stencil_fraction == 0.0 {
        (cfg.step, cfg.step)
    } else {
        let (mut ds, mut dt) = (
            patch.s_range.width().min(0.5),
            patch.t_range.width().min(0.5),
        );
        for l in patch.loci.iter().filter(|l| !l.smooth_map) {
            let (a, b) = l.axis_distances(s, t);
            ds = ds.min(a);
            dt = dt.min(b);
        }
        let f = cfg.stencil_fraction;
        ((f * ds).min(edge_s / reach), (f * dt).min(edge_t / reach))
    };
    if !(hs > 0.0 && ht > 0.0) || reach * hs > edge_s || reach * ht > edge_t {
        return Err(Error::DomainEdge { s, t });
    }
    Ok((hs, ht))
}

/// Partial derivatives x_s, x_t, x_ss, x_st, x_tt by eighth-order
/// central stencils.
pub fn derivatives(patch: &SurfacePatch, s: f64, t: f64, cfg: &OracleConfig) -> Result<[Vec3L; 5]> {
    let (hs, ht) = local_steps(patch, s, t, cfg)?;
    let n = 2 * REACH + 1;
    let centre = patch.eval(s, t)?;
    let mut grid = vec![Vec3L::ZERO; n * n];
    for i in 0..n {
        for j in 0..n {
            if i == REACH && j == REACH {
                continue;
            }
            let ps = s + (i as f64 - REACH as f64) * hs;
            let pt = t + (j as f64 - REACH as f64) * ht;
            grid[i * n + j] = patch.eval(ps, pt)? - centre;
        }
    }
    let (mut xs, mut xt, mut xss, mut xtt, mut xst) = (
        Vec3L::ZERO,
        Vec3L::ZERO,
        Vec3L::ZERO,
        Vec3L::ZERO,
        Vec3L::ZERO,
    );
    for k in 0..n {
        let along_s = grid[k * n + REACH];
        let along_t = grid[REACH * n + k];
        xs = xs + along_s * D1[k];
        xss = xss + along_s * D2[k];
        xt = xt + along_t * D1[k];
        xtt = xtt + along_t * D2[k];
    }
    for i in 0..n {
        if D1[i] == 0.0 {
            continue;
        }
        let mut row = Vec3L::ZERO;
        for j in 0..n {
            if D1[j] != 0.0 {
                row = row + grid[i * n + j] * D1[j];
            }
        }
        xst = xst + row * D1[i];
    }
    Ok([
        xs * (1.0 / hs),
        xt * (1.0 / ht),
        xss * (1.0 / (hs * hs)),
        xst * (1.0 / (hs * ht)),
        xtt * (1.0 / (ht * ht)),
    ])
}

/// Numeric E, F, G, normal, L, M, N, K and H at one point.
///
/// The normal is the normalized Lorentzian cross product x_s × x_t, so it
/// follows the (s, t) orientation of the patch.
pub fn fundamental_forms(
    patch: &SurfacePatch,
    s: f64,
    t: f64,
    cfg: &OracleConfig,
) -> Result<FormSample> {
    let [xs, xt, xss, xst, xtt] = derivatives(patch, s, t, cfg)?;
    let sig = patch.sig;
    let first = FirstForm {
        e: inner(xs, xs, sig),
        f: inner(xs, xt, sig),
        g: inner(xt, xt, sig),
    };
    let det = first.det();
    let scale = xs.dot_euclid(&xs) * xt.dot_euclid(&xt);
    if !(det.abs() > cfg.degeneracy_tol * scale) {
        return Err(Error::DegenerateNormal {
            norm: det.abs(),
            tol: cfg.degeneracy_tol * scale,
        });
    }
    let n = lorentz_cross(xs, xt, sig);
    let q = inner(n, n, sig);
    if !(q.abs() > 0.0) {
        return Err(Error::DegenerateNormal {
            norm: q.abs(),
            tol: 0.0,
        });
    }
    let e = n * (1.0 / q.abs().sqrt());
    let second = SecondForm {
        l: inner(xss, e, sig),
        m: inner(xst, e, sig),
        n: inner(xtt, e, sig),
    };
    let character = if det > 0.0 {
        CausalCharacter::Spacelike
    } else {
        CausalCharacter::Timelike
    };
    let mut sample = FormSample {
        first,
        second,
        gauss: e.finite()?,
        k: 0.0,
        h: 0.0,
        character,
    };
    let (k, h) = curvatures_numeric(&sample, sig)?;
    sample.k = k;
    sample.h = h;
    Ok(sample)
}

/// K = ε det II / det I and H = ε (EN - 2FM + GL) / (2 det I), ε = ⟨e, e⟩.
///
/// For a spacelike patch ε = -1; for a timelike one ε = +1.
pub fn curvatures_numeric(sample: &FormSample, sig: Signature) -> Result<(f64, f64)> {
    let det = sample.det_i();
    if !(det.abs() > 0.0 && det.is_finite()) {
        return Err(Error::DegenerateNormal {
            norm: det.abs(),
            tol: 0.0,
        });
    }
    let eps = inner(sample.gauss, sample.gauss, sig).signum();
    let (ff, sf) = (sample.first, sample.second);
    let k = eps * sf.det() / det;
    let h = eps * (ff.e * sf.n - 2.0 * ff.f * sf.m + ff.g * sf.l) / (2.0 * det);
    Ok((k, h))
}

/// Closed-form comparison data for a scan.
pub type Reference<'a> = &'a (dyn Fn(f64, f64) -> Result<FormSample> + Sync);

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Located {
    pub value: f64,
    pub s: f64,
    pub t: f64,
}

impl Located {
    fn bump(slot: &mut Option<Located>, value: f64, s: f64, t: f64) {
        if slot.is_none_or(|l| value > l.value) {
            *slot = Some(Located { value, s, t });
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanReport {
    pub label: String,
    pub signature: &'static str,
    pub grid: (usize, usize),
    pub total: usize,
    pub flagged: usize,
    pub failed: usize,
    pub ok: usize,
    /// Failure counts by error kind.
    pub failures: BTreeMap<String, usize>,
    pub det_i_positive: usize,
    pub det_i_negative: usize,
    pub max_abs_h: Option<Located>,
    /// max |H| / sqrt|K|, a scale-free measure of minimality.
    pub max_rel_h: Option<Located>,
    pub k_range: Option<(f64, f64)>,
    pub reference_points: usize,
    pub max_k_rel_residual: Option<Located>,
    pub max_first_form_residual: Option<Located>,
    pub max_second_form_residual: Option<Located>,
    pub max_oracle_norm_residual: Option<f64>,
    pub max_closed_norm_residual: Option<f64>,
    pub sign_classes: usize,
    pub max_gauss_residual: Option<Located>,
    pub orientation_flips: usize,
}

impl ScanReport {
    pub fn det_sign_uniform(&self) -> bool {
        self.ok > 0 && (self.det_i_positive == 0 || self.det_i_negative == 0)
    }

    pub fn h_max(&self) -> f64 {
        self.max_abs_h.map_or(f64::NAN, |l| l.value)
    }

    pub fn k_residual(&self) -> f64 {
        self.max_k_rel_residual.map_or(f64::NAN, |l| l.value)
    }
}

enum Outcome {
    Flagged,
    Failed(&'static str),
    Ok {
        sample: FormSample,
        class: u64,
        reference: Option<FormSample>,
    },
}

/// Cell-centred nodes of an interval.
pub fn cell_centres(i: Interval, n: usize) -> Vec<f64> {
    (0..n)
        .map(|k| i.lo + i.width() * (k as f64 + 0.5) / n as f64)
        .collect()
}

fn rel(a: f64, b: f64, scale: f64) -> f64 {
    if scale == 0.0 {
        (a - b).abs()
    } else {
        (a - b).abs() / scale
    }
}

/// Runs the oracle on an `ns × nt` cell-centred grid, skipping singular
/// bands. Per-point failures are counted, never returned.
pub fn scan(
    patch: &SurfacePatch,
    grid: (usize, usize),
    cfg: &OracleConfig,
    reference: Option<Reference>,
) -> ScanReport {
    let (ns, nt) = grid;
    let ss = cell_centres(patch.s_range, ns);
    let ts = cell_centres(patch.t_range, nt);
    let outcomes: Vec<Outcome> = (0..ns * nt)
        .into_par_iter()
        .map(|idx| {
            let (s, t) = (ss[idx / nt], ts[idx % nt]);
            if patch.banned_by(s, t).is_some() {
                return Outcome::Flagged;
            }
            match fundamental_forms(patch, s, t, cfg) {
                Err(e) => Outcome::Failed(e.kind()),
                Ok(sample) => Outcome::Ok {
                    sample,
                    class: patch.sign_class(s, t),
                    reference: reference.and_then(|f| f(s, t).ok()),
                },
            }
        })
        .collect();

    let mut r = ScanReport {
        label: patch.label.clone(),
        signature: patch.sig.name(),
        grid,
        total: ns * nt,
        flagged: 0,
        failed: 0,
        ok: 0,
        failures: BTreeMap::new(),
        det_i_positive: 0,
        det_i_negative: 0,
        max_abs_h: None,
        max_rel_h: None,
        k_range: None,
        reference_points: 0,
        max_k_rel_residual: None,
        max_first_form_residual: None,
        max_second_form_residual: None,
        max_oracle_norm_residual: None,
        max_closed_norm_residual: None,
        sign_classes: 0,
        max_gauss_residual: None,
        orientation_flips: 0,
    };
    let mut class_sign: BTreeMap<u64, f64> = BTreeMap::new();
    for (idx, out) in outcomes.iter().enumerate() {
        let (s, t) = (ss[idx / nt], ts[idx % nt]);
        let (sample, class, refs) = match out {
            Outcome::Flagged => {
                r.flagged += 1;
                continue;
            }
            Outcome::Failed(kind) => {
                r.failed += 1;
                *r.failures.entry(kind.to_string()).or_default() += 1;
                continue;
            }
            Outcome::Ok {
                sample,
                class,
                reference,
            } => (sample, *class, reference),
        };
        r.ok += 1;
        if sample.det_i() > 0.0 {
            r.det_i_positive += 1;
        } else {
            r.det_i_negative += 1;
        }
        Located::bump(&mut r.max_abs_h, sample.h.abs(), s, t);
        let root_k = sample.k.abs().sqrt();
        Located::bump(
            &mut r.max_rel_h,
            if root_k > 0.0 {
                sample.h.abs() / root_k
            } else {
                sample.h.abs()
            },
            s,
            t,
        );
        r.k_range = Some(match r.k_range {
            None => (sample.k, sample.k),
            Some((lo, hi)) => (lo.min(sample.k), hi.max(sample.k)),
        });
        let expected = if sample.character == CausalCharacter::Spacelike {
            -1.0
        } else {
            1.0
        };
        let on = (inner(sample.gauss, sample.gauss, patch.sig) - expected).abs();
        r.max_oracle_norm_residual =
            Some(r.max_oracle_norm_residual.map_or(on, |x: f64| x.max(on)));

        let Some(cf) = refs else { continue };
        r.reference_points += 1;
        Located::bump(
            &mut r.max_k_rel_residual,
            rel(sample.k, cf.k, cf.k.abs()),
            s,
            t,
        );
        let cn = (inner(cf.gauss, cf.gauss, patch.sig) - expected).abs();
        r.max_closed_norm_residual =
            Some(r.max_closed_norm_residual.map_or(cn, |x: f64| x.max(cn)));

        let sign = *class_sign.entry(class).or_insert_with(|| {
            if sample.gauss.dot_euclid(&cf.gauss) >= 0.0 {
                1.0
            } else {
                -1.0
            }
        });
        Located::bump(
            &mut r.max_gauss_residual,
            (sample.gauss * sign).max_abs_diff(&cf.gauss),
            s,
            t,
        );

        let (a, b) = (sample.first, cf.first);
        let scale = b.e.abs().max(b.f.abs()).max(b.g.abs());
        let res1 = rel(a.e, b.e, scale)
            .max(rel(a.f, b.f, scale))
            .max(rel(a.g, b.g, scale));
        Located::bump(&mut r.max_first_form_residual, res1, s, t);
        let (a, b) = (sample.second, cf.second);
        let a = if sign < 0.0 { a.flipped() } else { a };
        let scale = b.l.abs().max(b.m.abs()).max(b.n.abs());
        let res2 = rel(a.l, b.l, scale)
            .max(rel(a.m, b.m, scale))
            .max(rel(a.n, b.n, scale));
        Located::bump(&mut r.max_second_form_residual, res2, s, t);
    }
    r.sign_classes = class_sign.len();

    let normal_at = |idx: usize| match &outcomes[idx] {
        Outcome::Ok { sample, class, .. } => Some((sample.gauss, *class)),
        _ => None,
    };
    for i in 0..ns {
        for j in 0..nt {
            let Some((e0, c0)) = normal_at(i * nt + j) else {
                continue;
            };
            let mut check = |other: usize| {
                if let Some((e1, c1)) = normal_at(other) {
                    if c0 == c1 && e0.dot_euclid(&e1) <= 0.0 {
                        r.orientation_flips += 1;
                    }
                }
            };
            if i + 1 < ns {
                check((i + 1) * nt + j);
            }
            if j + 1 < nt {
                check(i * nt + j + 1);
            }
        }
    }
    r
}
