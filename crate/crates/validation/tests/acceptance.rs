//! End-to-end acceptance run. Prints one line per criterion and exits
//! non-zero when any criterion fails.

use std::fs;
use std::path::Path;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use bour_core::catalog::{self, BourParams, Chart, Family};
use bour_core::diffgeo::{fundamental_forms, scan, OracleConfig, ScanReport};
use bour_core::format::fmt_g9;
use bour_core::timelike::{null_residual, null_residual_v, NullData, TimelikePolar};
use bour_core::weierstrass::{
    bour_closed_form, default_base, integrate_numeric, ComplexParam, WeierstrassData,
};
use bour_core::{maximal, timelike};

const GRID: (usize, usize) = (64, 64);
const H_TOL: f64 = 1e-6;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

/// Runs the command line in-process; returns the exit code and stdout.
fn run(args: &[&str]) -> (i32, Vec<u8>) {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = bour_cli::run(
        std::iter::once("bour").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    (code, out)
}

fn scan_entry(e: &BourParams, cfg: &OracleConfig) -> ScanReport {
    let reference = |s: f64, t: f64| e.closed_form(s, t);
    scan(
        &e.patch().expect("catalog patch"),
        GRID,
        cfg,
        Some(&reference),
    )
}

fn maximality(scans: &[(BourParams, ScanReport)], secs: f64) -> Outcome {
    let bad: Vec<String> = scans
        .iter()
        .filter(|(_, r)| r.ok == 0 || r.h_max() >= H_TOL)
        .map(|(e, r)| {
            let rel = r.max_rel_h.map_or(f64::NAN, |l| l.value);
            format!(
                "{} max|H| {} (max|H|/sqrt|K| {})",
                e.label,
                fmt_g9(r.h_max()),
                fmt_g9(rel)
            )
        })
        .collect();
    let worst_ok = scans
        .iter()
        .filter(|(_, r)| r.h_max() < H_TOL)
        .map(|(_, r)| r.h_max())
        .fold(0.0, f64::max);
    let detail = format!(
        "{}/{} surfaces below {}, largest passing max|H| {}, {:.1} s{}{}",
        scans.len() - bad.len(),
        scans.len(),
        fmt_g9(H_TOL),
        fmt_g9(worst_ok),
        secs,
        if bad.is_empty() { "" } else { "; failing: " },
        bad.join(", ")
    );
    outcome(bad.is_empty() && secs < 60.0, detail)
}

fn causal(scans: &[(BourParams, ScanReport)]) -> Outcome {
    let mut bad = Vec::new();
    let mut cells = 0;
    for (e, r) in scans {
        let good = match e.family {
            Family::Spacelike => r.det_i_positive,
            Family::Timelike => r.det_i_negative,
        };
        cells += r.total - r.flagged;
        if r.ok == 0 || good != r.total - r.flagged {
            bad.push(format!("{} {}/{}", e.label, good, r.total - r.flagged));
        }
    }
    outcome(
        bad.is_empty(),
        format!("{cells} non-flagged cells checked{}", list(&bad)),
    )
}

fn list(bad: &[String]) -> String {
    if bad.is_empty() {
        String::new()
    } else {
        format!("; failing: {}", bad.join(", "))
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs()
}

fn anchors(cfg: &OracleConfig) -> Outcome {
    let b3 = catalog::by_label("B_3").unwrap();
    let k_closed = maximal::curvatures(3.0, 0.5).unwrap().0;
    let k_oracle = fundamental_forms(&b3.patch().unwrap(), 0.5, 0.7, cfg)
        .unwrap()
        .k;
    let t3 = catalog::by_label("T_3-cartesian").unwrap();
    let kt_closed = timelike::cartesian_k(3.0, 1.0, 1.0).unwrap();
    let kt_oracle = fundamental_forms(&t3.patch().unwrap(), 1.0, 1.0, cfg)
        .unwrap()
        .k;
    let checks = [
        rel(k_closed, 50.5679012) < 1e-6,
        rel(k_oracle, 50.5679012) < 1e-4,
        rel(kt_closed, -0.0625) < 1e-6,
        rel(kt_oracle, -0.0625) < 1e-4,
    ];
    outcome(
        checks.iter().all(|c| *c),
        format!(
            "spacelike B_3 K(0.5) closed {} oracle {}; timelike B_3 K(1, 1) closed {} oracle {}",
            fmt_g9(k_closed),
            fmt_g9(k_oracle),
            fmt_g9(kt_closed),
            fmt_g9(kt_oracle)
        ),
    )
}

fn quadrature(rng: &mut ChaCha8Rng) -> Outcome {
    let mut worst = 0.0f64;
    let mut errors = Vec::new();
    for m in [2.0, 3.0, 4.0] {
        let data = WeierstrassData::bour(m).unwrap();
        let base = default_base(data.exponent);
        let at_base = bour_closed_form(m, base.r, base.theta).unwrap();
        for _ in 0..50 {
            let r = rng.gen_range(0.05..1.5);
            let theta = rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI);
            let z = ComplexParam::new(r, theta).unwrap();
            match integrate_numeric(&data, z, base, 256) {
                Ok(p) => {
                    let want = bour_closed_form(m, r, theta).unwrap() - at_base;
                    worst = worst.max(p.max_abs_diff(&want));
                }
                Err(e) => errors.push(format!("m = {m} at ({r}, {theta}): {e}")),
            }
        }
    }
    outcome(
        errors.is_empty() && worst < 1e-7,
        format!(
            "150 points, max componentwise error {}{}",
            fmt_g9(worst),
            list(&errors)
        ),
    )
}

fn null_curves(rng: &mut ChaCha8Rng) -> Outcome {
    let mut worst = 0.0f64;
    let mut errors = Vec::new();
    let entries: Vec<BourParams> = catalog::figure_sources()
        .into_iter()
        .filter(|e| e.family == Family::Timelike)
        .collect();
    for e in &entries {
        let data = NullData::bour(e.m.value()).unwrap();
        for _ in 0..100 {
            let s = rng.gen_range(e.r_range.lo..=e.r_range.hi);
            let t = rng.gen_range(e.theta_range.lo..=e.theta_range.hi);
            let (u, v) = match e.chart {
                Chart::Polar => {
                    let p = TimelikePolar::new(s, t).to_null();
                    (p.u, p.v)
                }
                Chart::Cartesian => (s, t),
            };
            match (null_residual(&data, u), null_residual_v(&data, v)) {
                (Ok(a), Ok(b)) => worst = worst.max(a.abs()).max(b.abs()),
                (Err(err), _) | (_, Err(err)) => errors.push(format!("{}: {err}", e.label)),
            }
        }
    }
    outcome(
        errors.is_empty() && worst < 1e-12,
        format!(
            "{} surfaces x 100 points, max |<φ,φ>|, |<μ,μ>| {}{}",
            entries.len(),
            fmt_g9(worst),
            list(&errors)
        ),
    )
}

fn gauss(scans: &[(BourParams, ScanReport)]) -> Outcome {
    let (mut norm, mut closed, mut comp) = (0.0f64, 0.0f64, 0.0f64);
    let mut bad = Vec::new();
    for (e, r) in scans {
        let (Some(a), Some(b), Some(c)) = (
            r.max_oracle_norm_residual,
            r.max_closed_norm_residual,
            r.max_gauss_residual,
        ) else {
            bad.push(format!("{} has no samples", e.label));
            continue;
        };
        norm = norm.max(a);
        closed = closed.max(b);
        comp = comp.max(c.value);
        if a >= 1e-9 || b >= 1e-9 || c.value >= 1e-5 {
            bad.push(format!(
                "{} ({}, {}, {})",
                e.label,
                fmt_g9(a),
                fmt_g9(b),
                fmt_g9(c.value)
            ));
        }
    }
    outcome(
        bad.is_empty(),
        format!(
            "max |<e,e> ∓ 1| oracle {} closed form {}, max componentwise Gauss map difference {}{}",
            fmt_g9(norm),
            fmt_g9(closed),
            fmt_g9(comp),
            list(&bad)
        ),
    )
}

fn conjugate(cfg: &OracleConfig) -> Outcome {
    let t3 = catalog::by_label("T_3").unwrap();
    let r = scan(&t3.conjugate_patch().unwrap(), GRID, cfg, None);
    let det_ok = r.det_i_positive == 0 && r.det_i_negative == r.total - r.flagged;
    outcome(
        r.ok > 0 && r.h_max() < H_TOL && det_ok,
        format!(
            "{} points, max|H| {}, det I < 0 on all {}",
            r.ok,
            fmt_g9(r.h_max()),
            r.det_i_negative
        ),
    )
}

fn residual_after(text: &str, key: &str, topic: &str) -> Option<f64> {
    let block = text.split("  topic: ").find(|b| b.starts_with(topic))?;
    let line = block.lines().find(|l| l.trim_start().starts_with(key))?;
    line.rsplit(": ").next()?.trim().parse().ok()
}

fn figure_files(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut v: Vec<(String, Vec<u8>)> = fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (
                e.file_name().to_string_lossy().into_owned(),
                fs::read(e.path()).unwrap(),
            )
        })
        .collect();
    v.sort();
    v
}

fn write_figures(dir: &Path) -> Result<(), String> {
    for n in 1..=20 {
        let (code, _) = run(&["figure", &n.to_string(), "--out", dir.to_str().unwrap()]);
        if code != 0 {
            return Err(format!("figure {n} exited {code}"));
        }
    }
    Ok(())
}

fn check_obj(name: &str, bytes: &[u8]) -> Result<(), String> {
    let text = std::str::from_utf8(bytes).map_err(|e| format!("{name}: {e}"))?;
    let mut verts = 0;
    let mut faces = 0;
    for l in text.lines() {
        if let Some(rest) = l.strip_prefix("v ") {
            verts += 1;
            for x in rest.split_whitespace() {
                let x: f64 = x
                    .parse()
                    .map_err(|_| format!("{name}: bad coordinate {x:?}"))?;
                if !x.is_finite() {
                    return Err(format!("{name}: non-finite vertex"));
                }
            }
        } else if l.starts_with("f ") {
            faces += 1;
        }
    }
    if verts == 0 || faces == 0 {
        return Err(format!("{name}: {verts} vertices, {faces} faces"));
    }
    Ok(())
}

fn adjudication_and_figures(figs: &Path) -> Outcome {
    let (_, out) = run(&[
        "verify",
        "--family",
        "spacelike",
        "--m",
        "3",
        "--grid",
        "32x32",
    ]);
    let text = String::from_utf8_lossy(&out);
    let cart = "spacelike Cartesian B_3";
    let sign = "timelike polar B_3";
    let mut problems = Vec::new();
    if !text.contains("confirmed: K = 4/((u²+v²)(1-u²-v²)⁴)") {
        problems.push("Cartesian denominator not resolved to (1-u²-v²)⁴".to_string());
    }
    if !text.contains("confirmed: K = -1/(uv(1+uv)⁴)") {
        problems.push("timelike polar sign not resolved to the null-chart K".to_string());
    }
    let r = [
        residual_after(&text, "confirmed max relative residual", cart),
        residual_after(&text, "rejected max relative residual", cart),
        residual_after(&text, "confirmed max relative residual", sign),
        residual_after(&text, "rejected max relative residual", sign),
    ];
    match r {
        [Some(a), Some(b), Some(c), Some(d)] => {
            if !(a < 1e-6 && c < 1e-6 && b > 0.1 && d > 0.1) {
                problems.push(format!(
                    "residuals {a} {b} {c} {d} do not separate the candidates"
                ));
            }
        }
        _ => problems.push("residual lines missing".to_string()),
    }

    match write_figures(figs) {
        Err(e) => problems.push(e),
        Ok(()) => {
            let files = figure_files(figs);
            for n in 1..=20 {
                let obj = format!("fig{n:02}.obj");
                match files.iter().find(|(f, _)| *f == obj) {
                    Some((f, b)) => {
                        if let Err(e) = check_obj(f, b) {
                            problems.push(e);
                        }
                    }
                    None => problems.push(format!("{obj} missing")),
                }
                if !files.iter().any(|(f, _)| *f == format!("fig{n:02}.json")) {
                    problems.push(format!("fig{n:02}.json missing"));
                }
            }
            for f in [
                "fig02-xy.svg",
                "fig02-xz.svg",
                "fig02-yz.svg",
                "fig04-xy.svg",
                "fig04-xz.svg",
                "fig04-yz.svg",
            ] {
                if !files.iter().any(|(g, _)| g == f) {
                    problems.push(format!("{f} missing"));
                }
            }
        }
    }
    outcome(
        problems.is_empty(),
        format!(
            "report confirms (1-u²-v²)⁴ and the null-chart sign (residuals {}); 20 figures written{}",
            r.iter().map(|x| x.map_or("?".to_string(), fmt_g9)).collect::<Vec<_>>().join(", "),
            list(&problems)
        ),
    )
}

fn determinism(tmp: &Path, figs_a: &Path) -> Outcome {
    let mut diffs = Vec::new();
    for args in [
        vec![
            "verify", "--family", "timelike", "--m", "4", "--grid", "32x48",
        ],
        vec!["verify", "--all", "--grid", "24x24"],
        vec!["list"],
    ] {
        let (a, b) = (run(&args), run(&args));
        if a != b {
            diffs.push(args.join(" "));
        }
    }
    for (fmt, plane) in [("obj", "xy"), ("csv", "xy"), ("svg", "xz")] {
        let outs: Vec<Vec<u8>> = ["a", "b"]
            .iter()
            .map(|tag| {
                let path = tmp.join(format!("mesh-{tag}.{fmt}"));
                let (code, _) = run(&[
                    "mesh",
                    "--family",
                    "spacelike",
                    "--m",
                    "3/2",
                    "--format",
                    fmt,
                    "--plane",
                    plane,
                    "--grid",
                    "40x60",
                    "--out",
                    path.to_str().unwrap(),
                ]);
                assert_eq!(code, 0, "mesh {fmt} failed");
                fs::read(path).unwrap()
            })
            .collect();
        if outs[0] != outs[1] {
            diffs.push(format!("mesh --format {fmt}"));
        }
    }
    let figs_b = tmp.join("figures-b");
    match write_figures(&figs_b) {
        Err(e) => diffs.push(e),
        Ok(()) => {
            if figure_files(figs_a) != figure_files(&figs_b) {
                diffs.push("figure outputs".to_string());
            }
        }
    }
    outcome(
        diffs.is_empty(),
        format!(
            "verify, list, mesh (obj, csv, svg) and all figures repeated{}",
            list(&diffs)
        ),
    )
}

fn main() {
    let cfg = OracleConfig::default();
    let tmp = tempfile::tempdir().unwrap();
    let figs = tmp.path().join("figures-a");
    let mut rng = ChaCha8Rng::seed_from_u64(0x0b0e_2024);

    let t0 = Instant::now();
    let scans: Vec<(BourParams, ScanReport)> = catalog::all()
        .into_iter()
        .map(|e| {
            let r = scan_entry(&e, &cfg);
            (e, r)
        })
        .collect();
    let secs = t0.elapsed().as_secs_f64();

    let results = [
        ("maximality and minimality", maximality(&scans, secs)),
        ("causal character", causal(&scans)),
        ("curvature anchors", anchors(&cfg)),
        ("Weierstrass quadrature", quadrature(&mut rng)),
        ("null curves", null_curves(&mut rng)),
        ("Gauss map", gauss(&scans)),
        ("conjugate minimality", conjugate(&cfg)),
        (
            "formula adjudication and figures",
            adjudication_and_figures(&figs),
        ),
        ("determinism", determinism(tmp.path(), &figs)),
    ];

    let mut failed = 0;
    for (i, (name, o)) in results.iter().enumerate() {
        println!(
            "criterion {} {}: {}: {}",
            i + 1,
            if o.pass { "PASS" } else { "FAIL" },
            name,
            o.detail
        );
        failed += usize::from(!o.pass);
    }
    println!(
        "acceptance: {}/{} criteria passed",
        results.len() - failed,
        results.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
