//! Number formatting with nine significant digits.

use std::f64::consts::PI;

fn decimal_exponent(x: f64) -> i32 {
    let s = format!("{:.8e}", x);
    s.rsplit('e')
        .next()
        .and_then(|e| e.parse().ok())
        .unwrap_or(0)
}

/// Nine significant digits, trailing zeros kept: `0.750000000`.
///
/// Values with a decimal exponent outside [-5, 9) use scientific notation.
/// Zero (of either sign) prints as `0.000000000`.
pub fn fmt_sig9(x: f64) -> String {
    if x == 0.0 {
        return "0.000000000".to_string();
    }
    if !x.is_finite() {
        return "nan".to_string();
    }
    let exp = decimal_exponent(x);
    if (-5..9).contains(&exp) {
        format!("{:.*}", (8 - exp) as usize, x)
    } else {
        format!("{:.8e}", x)
    }
}

/// Like `%.9g`: nine significant digits with trailing zeros dropped.
pub fn fmt_g9(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if x.is_nan() {
        return "nan".to_string();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.to_string();
    }
    let s = fmt_sig9(x);
    match s.split_once('e') {
        Some((mant, exp)) => format!("{}e{}", trim_zeros(mant), exp),
        None => trim_zeros(&s).to_string(),
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

pub fn fmt_vec(v: [f64; 3]) -> String {
    format!("({}, {}, {})", fmt_g9(v[0]), fmt_g9(v[1]), fmt_g9(v[2]))
}

/// Angles that are multiples of π/2 print symbolically.
pub fn fmt_angle(x: f64) -> String {
    let halves = 2.0 * x / PI;
    let n = halves.round();
    if (halves - n).abs() > 1e-12 {
        return fmt_g9(x);
    }
    let n = n as i64;
    if n == 0 {
        return "0".to_string();
    }
    if n % 2 == 0 {
        match n / 2 {
            1 => "π".to_string(),
            -1 => "-π".to_string(),
            k => format!("{k}π"),
        }
    } else {
        match n {
            1 => "π/2".to_string(),
            -1 => "-π/2".to_string(),
            k => format!("{k}π/2"),
        }
    }
}
