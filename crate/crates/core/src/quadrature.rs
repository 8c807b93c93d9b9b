//! Composite 8-point Gauss-Legendre rule.

/// Nodes on [-1, 1], symmetric pairs listed once (positive half).
const NODES: [f64; 4] = [
    0.183_434_642_495_649_8,
    0.525_532_409_916_329,
    0.796_666_477_413_626_7,
    0.960_289_856_497_536_3,
];

const WEIGHTS: [f64; 4] = [
    0.362_683_783_378_362,
    0.313_706_645_877_887_3,
    0.222_381_034_453_374_5,
    0.101_228_536_290_376_3,
];

/// Integrates `f` over `[a, b]` using `panels` equal panels.
///
/// Works for any accumulator that supports addition and scaling, so the
/// Weierstrass integrand (three complex components) goes through as one call.
pub fn integrate<T, F>(a: f64, b: f64, panels: usize, mut f: F) -> T
where
    T: Copy + Default + std::ops::Add<Output = T> + std::ops::Mul<f64, Output = T>,
    F: FnMut(f64) -> T,
{
    let panels = panels.max(1);
    let width = (b - a) / panels as f64;
    let half = 0.5 * width;
    let mut total = T::default();
    for k in 0..panels {
        let mid = a + (k as f64 + 0.5) * width;
        let mut panel = T::default();
        for (x, w) in NODES.iter().zip(WEIGHTS.iter()) {
            panel = panel + (f(mid - half * x) + f(mid + half * x)) * *w;
        }
        total = total + panel * half;
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_sum_to_two() {
        let s: f64 = WEIGHTS.iter().sum::<f64>() * 2.0;
        assert!((s - 2.0).abs() < 1e-15);
    }

    #[test]
    fn exact_for_degree_fifteen() {
        // integral of x^15 + x^14 over [0, 1] = 1/16 + 1/15
        let v: f64 = integrate(0.0, 1.0, 1, |x| x.powi(15) + x.powi(14));
        assert!((v - (1.0 / 16.0 + 1.0 / 15.0)).abs() < 1e-15);
    }

    #[test]
    fn composite_converges_on_smooth_functions() {
        let v: f64 = integrate(0.0, std::f64::consts::PI, 16, f64::sin);
        assert!((v - 2.0).abs() < 1e-14);
        let v: f64 = integrate(1.0, 3.0, 4, |x| x.ln());
        let exact = 3.0 * 3f64.ln() - 3.0 + 1.0;
        assert!((v - exact).abs() < 1e-13);
    }

    #[test]
    fn reversed_interval_flips_sign() {
        let a: f64 = integrate(0.0, 2.0, 3, |x| x * x);
        let b: f64 = integrate(2.0, 0.0, 3, |x| x * x);
        assert!((a + b).abs() < 1e-15);
    }
}
