//! Catalog entries for both families and their evaluators.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;

use crate::diffgeo::{Locus, SurfacePatch};
use crate::error::{Error, Result};
use crate::format::{fmt_angle, fmt_g9};
use crate::forms::FormSample;
use crate::lorentz::{Signature, Vec3L};
use crate::powers::{check_exponent, is_integer};
use crate::timelike::{NullCoords, NullData, TimelikePolar};
use crate::{maximal, timelike, weierstrass};

/// Integer-m maps are defined everywhere, so stencils may step this far
/// outside the catalog domain.
const EVAL_MARGIN: f64 = 0.1;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Spacelike,
    Timelike,
}

impl Family {
    pub fn signature(self) -> Signature {
        match self {
            Family::Spacelike => Signature::Ppm,
            Family::Timelike => Signature::Mpp,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::Spacelike => "spacelike",
            Family::Timelike => "timelike",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Polar (r, θ) or Cartesian (ζ = u + iv, resp. null coordinates u, v).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Chart {
    Polar,
    Cartesian,
}

impl Chart {
    pub fn name(self) -> &'static str {
        match self {
            Chart::Polar => "polar",
            Chart::Cartesian => "cartesian",
        }
    }

    pub fn axis_names(self) -> (&'static str, &'static str) {
        match self {
            Chart::Polar => ("r", "θ"),
            Chart::Cartesian => ("u", "v"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Interval {
    pub lo: f64,
    pub hi: f64,
}

impl Interval {
    pub const fn new(lo: f64, hi: f64) -> Self {
        Interval { lo, hi }
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn max_abs(&self) -> f64 {
        self.lo.abs().max(self.hi.abs())
    }
}

/// An exact rational value of m.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rational {
    num: i64,
    den: i64,
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

impl Rational {
    /// Panics on a zero denominator.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        let g = gcd(num, den).max(1);
        let s = if den < 0 { -1 } else { 1 };
        Rational {
            num: s * num / g,
            den: s * den / g,
        }
    }

    pub fn num(&self) -> i64 {
        self.num
    }

    pub fn den(&self) -> i64 {
        self.den
    }

    pub fn value(&self) -> f64 {
        self.num as f64 / self.den as f64
    }

    pub fn is_integer(&self) -> bool {
        self.den == 1
    }

    pub fn sub_int(&self, k: i64) -> Rational {
        Rational::new(self.num - k * self.den, self.den)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `3`, `-2`, `1/2`, `2.5`.
    fn from_str(text: &str) -> Result<Self> {
        let bad =
            || Error::InvalidArgument(format!("cannot read m = {text:?} as a number or fraction"));
        let t = text.trim();
        if let Some((a, b)) = t.split_once('/') {
            let num: i64 = a.trim().parse().map_err(|_| bad())?;
            let den: i64 = b.trim().parse().map_err(|_| bad())?;
            if den == 0 {
                return Err(bad());
            }
            return Ok(Rational::new(num, den));
        }
        if let Ok(n) = t.parse::<i64>() {
            return Ok(Rational::new(n, 1));
        }
        let (int, frac) = t.split_once('.').ok_or_else(bad)?;
        if frac.is_empty() || frac.len() > 9 || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let neg = int.starts_with('-');
        let whole: i64 = match int.trim_start_matches(['-', '+']) {
            "" => 0,
            w => w.parse().map_err(|_| bad())?,
        };
        let den = 10i64.pow(frac.len() as u32);
        let num = whole * den + frac.parse::<i64>().map_err(|_| bad())?;
        Ok(Rational::new(if neg { -num } else { num }, den))
    }
}

/// One parameter axis after branch clipping. An open end is never sampled.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Axis {
    pub lo: f64,
    pub hi: f64,
    pub open_lo: bool,
    pub open_hi: bool,
}

impl Axis {
    fn closed(i: Interval) -> Self {
        Axis {
            lo: i.lo,
            hi: i.hi,
            open_lo: false,
            open_hi: false,
        }
    }

    pub fn interval(&self) -> Interval {
        Interval::new(self.lo, self.hi)
    }

    /// `n` uniform nodes; open ends are shifted off by one spacing.
    pub fn nodes(&self, n: usize) -> Vec<f64> {
        let w = self.hi - self.lo;
        let (offset, div) = match (self.open_lo, self.open_hi) {
            (false, false) => (0.0, n.saturating_sub(1).max(1) as f64),
            (true, false) => (1.0, n as f64),
            (false, true) => (0.0, n as f64),
            (true, true) => (1.0, (n + 1) as f64),
        };
        (0..n)
            .map(|k| self.lo + w * (k as f64 + offset) / div)
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Realizable {
    pub s: Axis,
    pub t: Axis,
    /// Human-readable note when the catalog domain had to be clipped.
    pub clipped: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BourParams {
    pub label: String,
    pub family: Family,
    pub chart: Chart,
    pub m: Rational,
    /// First parameter range: r in the polar chart, u otherwise.
    pub r_range: Interval,
    /// Second parameter range: θ in the polar chart, v otherwise.
    pub theta_range: Interval,
    pub figures: Vec<u32>,
}

impl BourParams {
    pub fn new(
        label: &str,
        family: Family,
        chart: Chart,
        m: Rational,
        r_range: Interval,
        theta_range: Interval,
        figures: &[u32],
    ) -> Self {
        BourParams {
            label: label.to_string(),
            family,
            chart,
            m,
            r_range,
            theta_range,
            figures: figures.to_vec(),
        }
    }

    /// An entry outside the catalog with the default domain for its chart.
    pub fn ad_hoc(family: Family, m: Rational, chart: Chart) -> Result<Self> {
        check_exponent(m.value())?;
        if family == Family::Spacelike && chart == Chart::Cartesian && m != Rational::new(3, 1) {
            return Err(Error::InvalidArgument(format!(
                "the Cartesian chart is available for spacelike m = 3 only, got m = {m}"
            )));
        }
        let (r, t) = match chart {
            Chart::Polar => (
                Interval::new(-1.0, 1.0),
                Interval::new(0.0, std::f64::consts::PI),
            ),
            Chart::Cartesian => (Interval::new(-1.0, 1.0), Interval::new(-1.0, 1.0)),
        };
        let prefix = if family == Family::Spacelike {
            "B"
        } else {
            "T"
        };
        let suffix = if chart == Chart::Cartesian {
            "-cartesian"
        } else {
            ""
        };
        Ok(BourParams::new(
            &format!("{prefix}_{m}{suffix}"),
            family,
            chart,
            m,
            r,
            t,
            &[],
        ))
    }

    pub fn signature(&self) -> Signature {
        self.family.signature()
    }

    fn mv(&self) -> f64 {
        self.m.value()
    }

    /// The representation data as text: (𝔉, 𝒢) for spacelike entries and
    /// (f, g), (𝔣, 𝔤) for timelike ones.
    pub fn data_text(&self) -> String {
        let p = self.m.sub_int(2);
        let power = |var: &str| {
            if p.num() == 0 {
                "1".to_string()
            } else if p == Rational::new(1, 1) {
                var.to_string()
            } else if p.is_integer() && p.num() > 0 {
                format!("{var}^{p}")
            } else {
                format!("{var}^{{{p}}}")
            }
        };
        match self.family {
            Family::Spacelike => format!("({}, ζ)", power("ζ")),
            Family::Timelike => format!("({}, u), ({}, v)", power("u"), power("v")),
        }
    }

    pub fn domain_text(&self) -> String {
        let (a, b) = self.chart.axis_names();
        let second = match self.chart {
            Chart::Polar => format!(
                "[{}, {}]",
                fmt_angle(self.theta_range.lo),
                fmt_angle(self.theta_range.hi)
            ),
            Chart::Cartesian => format!(
                "[{}, {}]",
                fmt_g9(self.theta_range.lo),
                fmt_g9(self.theta_range.hi)
            ),
        };
        format!(
            "{a} ∈ [{}, {}], {b} ∈ {second}",
            fmt_g9(self.r_range.lo),
            fmt_g9(self.r_range.hi)
        )
    }

    /// The part of the catalog domain on which every evaluator is real.
    ///
    /// Fractional m needs r > 0 (and, for timelike entries, both null
    /// coordinates positive); the domain is clipped accordingly.
    pub fn realizable(&self) -> Result<Realizable> {
        let s = Axis::closed(self.r_range);
        let t = Axis::closed(self.theta_range);
        if is_integer(self.mv()) {
            return Ok(Realizable {
                s,
                t,
                clipped: None,
            });
        }
        let (a, b) = self.chart.axis_names();
        let empty = || {
            Error::EmptyRealizableDomain(format!(
                "{} with fractional m = {} has no points with positive {}",
                self.label, self.m, a
            ))
        };
        if self.r_range.hi <= 0.0 {
            return Err(empty());
        }
        let clip_pos = |ax: Axis| -> Axis {
            if ax.lo <= 0.0 {
                Axis {
                    lo: 0.0,
                    hi: ax.hi,
                    open_lo: true,
                    open_hi: ax.open_hi,
                }
            } else {
                ax
            }
        };
        let s2 = clip_pos(s);
        let t2 = match (self.family, self.chart) {
            (Family::Spacelike, _) => t,
            (Family::Timelike, Chart::Cartesian) => {
                if self.theta_range.hi <= 0.0 {
                    return Err(empty());
                }
                clip_pos(t)
            }
            (Family::Timelike, Chart::Polar) => {
                let half = std::f64::consts::FRAC_PI_2;
                let lo = t.lo.max(0.0);
                let hi = t.hi.min(half);
                if lo >= hi {
                    return Err(empty());
                }
                Axis {
                    lo,
                    hi,
                    open_lo: lo == 0.0,
                    open_hi: hi == half,
                }
            }
        };
        let mut note = Vec::new();
        if s2 != s {
            note.push(format!(
                "{a} clipped to ({}, {}]",
                fmt_g9(s2.lo),
                fmt_g9(s2.hi)
            ));
        }
        if t2 != t {
            let (l, r) = (
                if t2.open_lo { "(" } else { "[" },
                if t2.open_hi { ")" } else { "]" },
            );
            note.push(format!(
                "{b} clipped to {l}{}, {}{r}",
                fmt_angle(t2.lo),
                fmt_angle(t2.hi)
            ));
        }
        let clipped = if note.is_empty() {
            None
        } else {
            Some(note.join("; "))
        };
        Ok(Realizable {
            s: s2,
            t: t2,
            clipped,
        })
    }

    fn null_data(&self) -> Result<NullData> {
        NullData::bour(self.mv())
    }

    fn check_cartesian(&self) -> Result<()> {
        if self.family == Family::Spacelike
            && self.chart == Chart::Cartesian
            && self.m != Rational::new(3, 1)
        {
            return Err(Error::InvalidArgument(
                "spacelike Cartesian chart is defined for m = 3 only".into(),
            ));
        }
        Ok(())
    }

    pub fn position(&self, s: f64, t: f64) -> Result<Vec3L> {
        self.check_cartesian()?;
        match (self.family, self.chart) {
            (Family::Spacelike, Chart::Polar) => weierstrass::bour_closed_form(self.mv(), s, t),
            (Family::Spacelike, Chart::Cartesian) => Ok(weierstrass::b3_cartesian(s, t)),
            (Family::Timelike, Chart::Polar) => {
                timelike::magid_immersion(&self.null_data()?, TimelikePolar::new(s, t).to_null())
            }
            (Family::Timelike, Chart::Cartesian) => {
                timelike::magid_immersion(&self.null_data()?, NullCoords { u: s, v: t })
            }
        }
    }

    /// Ω - Ψ for timelike entries.
    pub fn conjugate_position(&self, s: f64, t: f64) -> Result<Vec3L> {
        let p = match (self.family, self.chart) {
            (Family::Timelike, Chart::Polar) => TimelikePolar::new(s, t).to_null(),
            (Family::Timelike, Chart::Cartesian) => NullCoords { u: s, v: t },
            _ => {
                return Err(Error::InvalidArgument(
                    "conjugate surfaces are defined for the timelike family".into(),
                ))
            }
        };
        timelike::conjugate_immersion(&self.null_data()?, p)
    }

    /// Closed-form fundamental forms, Gauss map and curvatures.
    pub fn closed_form(&self, s: f64, t: f64) -> Result<FormSample> {
        self.check_cartesian()?;
        let m = self.mv();
        match (self.family, self.chart) {
            (Family::Spacelike, Chart::Polar) => maximal::closed_form_sample(m, s, t),
            (Family::Spacelike, Chart::Cartesian) => maximal::b3_cartesian_sample(s, t),
            (Family::Timelike, Chart::Polar) => {
                timelike::closed_form_sample(m, TimelikePolar::new(s, t))
            }
            (Family::Timelike, Chart::Cartesian) => timelike::cartesian_sample(m, s, t),
        }
    }

    /// Closed-form Gaussian curvature alone.
    pub fn closed_k(&self, s: f64, t: f64) -> Result<f64> {
        self.check_cartesian()?;
        let m = self.mv();
        let k = match (self.family, self.chart) {
            (Family::Spacelike, Chart::Polar) => maximal::curvatures(m, s)?.0,
            (Family::Spacelike, Chart::Cartesian) => {
                maximal::b3_cartesian_sample(s, t)?;
                maximal::b3_cartesian_k(s, t)
            }
            (Family::Timelike, Chart::Polar) => {
                timelike::timelike_curvatures(m, TimelikePolar::new(s, t))?.k
            }
            (Family::Timelike, Chart::Cartesian) => timelike::cartesian_sample(m, s, t)?.k,
        };
        if !k.is_finite() {
            return Err(Error::SingularPoint(format!(
                "curvature is not finite at ({s}, {t})"
            )));
        }
        Ok(k)
    }

    /// Curves on which the chart degenerates, with the exclusion band
    /// used by the oracle.
    pub fn singular_loci(&self) -> Vec<Locus> {
        let m = self.mv();
        let reach = match self.chart {
            Chart::Polar => self.r_range.max_abs(),
            Chart::Cartesian => self.r_range.max_abs().max(self.theta_range.max_abs()),
        };
        // integer m >= 2 gives a polynomial map in the chart
        let poly = is_integer(m) && m >= 2.0;
        let at_origin = |l: Locus| if poly { l.smooth() } else { l };
        match (self.family, self.chart) {
            (Family::Spacelike, Chart::Polar) => vec![
                at_origin(Locus::new("r = 0", 0.05, |s, _| s)),
                Locus::new("r = 1", 0.05, |s, _| s - 1.0).smooth(),
                Locus::new("r = -1", 0.05, |s, _| s + 1.0).smooth(),
            ],
            (Family::Spacelike, Chart::Cartesian) => vec![
                Locus::new("u² + v² = 0", 0.05, |u, v| u.hypot(v)).smooth(),
                Locus::new("u² + v² = 1", 0.05, |u, v| u.hypot(v) - 1.0).smooth(),
            ],
            (Family::Timelike, Chart::Polar) => {
                let mut loci = vec![at_origin(Locus::new("r = 0", 0.05 * reach, |s, _| s))];
                if m != 2.0 {
                    loci.push(at_origin(Locus::new("sin θ cos θ = 0", 1e-3, |_, t| {
                        t.sin() * t.cos()
                    })));
                }
                loci.push(
                    Locus::new("1 + r² sin θ cos θ = 0", 1e-3, |r, t| {
                        1.0 + r * r * t.sin() * t.cos()
                    })
                    .smooth(),
                );
                loci
            }
            (Family::Timelike, Chart::Cartesian) => {
                let mut loci = Vec::new();
                if m != 2.0 {
                    loci.push(at_origin(Locus::new("u = 0", 0.05 * reach, |u, _| u)));
                    loci.push(at_origin(Locus::new("v = 0", 0.05 * reach, |_, v| v)));
                }
                loci.push(Locus::new("1 + uv = 0", 1e-3, |u, v| 1.0 + u * v).smooth());
                loci
            }
        }
    }

    /// Loci where the surface itself is singular. At m = 2 the origin is
    /// only a polar-chart artefact and is left out.
    pub fn geometric_loci(&self) -> Vec<Locus> {
        let mut loci = self.singular_loci();
        if self.m == Rational::new(2, 1) {
            loci.retain(|l| l.description != "r = 0" && l.description != "u² + v² = 0");
        }
        loci
    }

    fn make_patch(&self, label: String, conjugate: bool) -> Result<SurfacePatch> {
        let dom = self.realizable()?;
        let me = self.clone();
        let eval: Arc<dyn Fn(f64, f64) -> Result<Vec3L> + Send + Sync> = if conjugate {
            Arc::new(move |s, t| me.conjugate_position(s, t))
        } else {
            Arc::new(move |s, t| me.position(s, t))
        };
        let mut patch = SurfacePatch::from_arc(
            &label,
            eval,
            dom.s.interval(),
            dom.t.interval(),
            self.signature(),
        );
        for locus in self.singular_loci() {
            patch = patch.with_locus(locus);
        }
        if is_integer(self.mv()) {
            patch = patch.with_margin(EVAL_MARGIN);
        }
        Ok(patch)
    }

    /// The entry as an opaque patch over its realizable domain.
    pub fn patch(&self) -> Result<SurfacePatch> {
        self.make_patch(self.label.clone(), false)
    }

    pub fn conjugate_patch(&self) -> Result<SurfacePatch> {
        if self.family != Family::Timelike {
            return Err(Error::InvalidArgument(
                "conjugate surfaces are defined for the timelike family".into(),
            ));
        }
        self.make_patch(format!("{}-conjugate", self.label), true)
    }
}

/// The seventeen catalogued surfaces, spacelike first.
pub fn all() -> Vec<BourParams> {
    let mut v = maximal::catalog();
    v.extend(timelike::timelike_catalog());
    v
}

/// Surfaces addressable by figure number: the catalog plus the null-chart
/// timelike B₃.
pub fn figure_sources() -> Vec<BourParams> {
    let mut v = all();
    v.push(timelike::timelike_b3_cartesian_params());
    v
}

pub fn by_figure(n: u32) -> Option<BourParams> {
    figure_sources()
        .into_iter()
        .find(|e| e.figures.contains(&n))
}

pub fn by_label(label: &str) -> Option<BourParams> {
    figure_sources()
        .into_iter()
        .find(|e| e.label.eq_ignore_ascii_case(label))
}

/// Resolves a family plus an m that is either a label or a number.
///
/// Numbers pick the first catalog entry with that m and chart, or an
/// ad-hoc entry on the default domain.
pub fn resolve(family: Family, m: &str, cartesian: bool) -> Result<BourParams> {
    if let Some(e) = by_label(m) {
        if e.family != family {
            return Err(Error::InvalidArgument(format!(
                "{} is a {} surface",
                e.label, e.family
            )));
        }
        return Ok(e);
    }
    let m: Rational = m.parse()?;
    check_exponent(m.value())?;
    let chart = if cartesian {
        Chart::Cartesian
    } else {
        Chart::Polar
    };
    if let Some(e) = figure_sources()
        .into_iter()
        .find(|e| e.family == family && e.m == m && e.chart == chart)
    {
        return Ok(e);
    }
    BourParams::ad_hoc(family, m, chart)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_parsing() {
        assert_eq!("3".parse::<Rational>().unwrap(), Rational::new(3, 1));
        assert_eq!("1/2".parse::<Rational>().unwrap(), Rational::new(1, 2));
        assert_eq!("4/6".parse::<Rational>().unwrap(), Rational::new(2, 3));
        assert_eq!("2.5".parse::<Rational>().unwrap(), Rational::new(5, 2));
        assert_eq!("-0.5".parse::<Rational>().unwrap(), Rational::new(-1, 2));
        assert_eq!("-2".parse::<Rational>().unwrap(), Rational::new(-2, 1));
        assert!("x".parse::<Rational>().is_err());
        assert!("1/0".parse::<Rational>().is_err());
        assert_eq!(Rational::new(3, -2).to_string(), "-3/2");
        assert_eq!(Rational::new(6, 3).to_string(), "2");
    }

    #[test]
    fn catalog_size_and_labels() {
        let cat = all();
        assert_eq!(cat.len(), 17);
        assert_eq!(
            cat.iter().filter(|e| e.family == Family::Spacelike).count(),
            11
        );
        let mut labels: Vec<_> = cat.iter().map(|e| e.label.clone()).collect();
        labels.sort();
        labels.dedup();
        assert_eq!(labels.len(), 17);
    }

    #[test]
    fn every_figure_has_a_source() {
        for n in 1..=20 {
            assert!(by_figure(n).is_some(), "figure {n}");
        }
        assert!(by_figure(21).is_none());
        assert_eq!(by_figure(5).unwrap().label, "Enneper");
        let f20 = by_figure(20).unwrap();
        assert_eq!(f20.r_range, Interval::new(-0.003, 0.003));
        assert_eq!(f20.family, Family::Timelike);
    }

    #[test]
    fn data_text_forms() {
        let t = resolve(Family::Timelike, "3", false).unwrap();
        assert_eq!(t.data_text(), "(u, u), (v, v)");
        let b = resolve(Family::Spacelike, "3", false).unwrap();
        assert_eq!(b.data_text(), "(ζ, ζ)");
        assert_eq!(b.domain_text(), "r ∈ [-1, 1], θ ∈ [0, π]");
        let c = resolve(Family::Spacelike, "3", true).unwrap();
        assert_eq!(c.label, "B_3-cartesian");
        assert_eq!(c.domain_text(), "u ∈ [-1, 1], v ∈ [-1, 1]");
    }

    #[test]
    fn resolve_by_label_and_number() {
        assert_eq!(
            resolve(Family::Spacelike, "B_3/2-wide", false)
                .unwrap()
                .r_range,
            Interval::new(-3.0, 3.0)
        );
        assert_eq!(
            resolve(Family::Spacelike, "0.5", false).unwrap().label,
            "B_1/2"
        );
        assert!(matches!(
            resolve(Family::Spacelike, "1", false),
            Err(Error::ExcludedExponent { .. })
        ));
        assert!(matches!(
            resolve(Family::Timelike, "0", false),
            Err(Error::ExcludedExponent { .. })
        ));
        assert!(matches!(
            resolve(Family::Timelike, "Enneper", false),
            Err(Error::InvalidArgument(_))
        ));
        let adhoc = resolve(Family::Spacelike, "7", false).unwrap();
        assert_eq!(adhoc.label, "B_7");
        assert!(resolve(Family::Spacelike, "4", true).is_err());
        assert_eq!(
            resolve(Family::Timelike, "3", true).unwrap().figures,
            vec![15]
        );
    }

    #[test]
    fn fractional_domain_is_clipped() {
        let half = resolve(Family::Spacelike, "1/2", false).unwrap();
        let d = half.realizable().unwrap();
        assert!(d.clipped.is_some());
        let r = d.s.nodes(4);
        assert_eq!(r, vec![0.25, 0.5, 0.75, 1.0]);
        for &x in &r {
            assert!(half.position(x, 0.3).is_ok());
        }
        let b3 = resolve(Family::Spacelike, "3", false).unwrap();
        let d = b3.realizable().unwrap();
        assert!(d.clipped.is_none());
        assert_eq!(d.s.nodes(3), vec![-1.0, 0.0, 1.0]);

        let mut neg = half.clone();
        neg.r_range = Interval::new(-1.0, 0.0);
        assert!(matches!(
            neg.realizable(),
            Err(Error::EmptyRealizableDomain(_))
        ));

        let t = BourParams::ad_hoc(Family::Timelike, Rational::new(5, 2), Chart::Polar).unwrap();
        let d = t.realizable().unwrap();
        assert!(d.t.open_lo && d.t.open_hi);
        for &s in &d.s.nodes(5) {
            for &th in &d.t.nodes(5) {
                assert!(t.position(s, th).is_ok());
                assert!(t.closed_form(s, th).is_ok());
            }
        }
    }

    #[test]
    fn position_matches_closed_form_evaluators() {
        let b3 = resolve(Family::Spacelike, "3", false).unwrap();
        let p = b3.position(1.0, 0.0).unwrap();
        assert!(p.max_abs_diff(&Vec3L::new(0.75, 0.0, 2.0 / 3.0)) < 1e-15);
        let t3c = resolve(Family::Timelike, "3", true).unwrap();
        let p = t3c.position(1.0, 1.0).unwrap();
        assert!(p.max_abs_diff(&Vec3L::new(0.0, 0.5, 4.0 / 3.0)) < 1e-15);
        assert!(
            t3c.conjugate_position(1.0, 1.0)
                .unwrap()
                .max_abs_diff(&Vec3L::new(-1.5, 0.0, 0.0))
                < 1e-15
        );
        assert!(b3.conjugate_position(0.5, 0.5).is_err());
    }

    #[test]
    fn closed_k_examples() {
        let b3 = resolve(Family::Spacelike, "3", false).unwrap();
        assert!((b3.closed_k(0.5, 0.0).unwrap() - 50.567_901_234_567_9).abs() < 1e-9);
        assert!(matches!(
            b3.closed_k(1.0, 0.0),
            Err(Error::SingularPoint(_))
        ));
        let t3c = resolve(Family::Timelike, "3", true).unwrap();
        assert_eq!(t3c.closed_k(1.0, 1.0).unwrap(), -0.0625);
    }
}
