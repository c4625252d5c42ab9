//! Small scalar helpers shared by the flow and chart code.

/// Largest exponent accepted before a path is declared past the numeric horizon.
pub const EXP_HORIZON: f64 = 700.0;

/// acosh that stays accurate near 1 and does not overflow for huge arguments.
/// Returns NaN below 1, like `f64::acosh`.
pub fn acosh(u: f64) -> f64 {
    if u < 1.0 || u.is_nan() {
        f64::NAN
    } else if u < 2.0 {
        2.0 * ((u - 1.0) / 2.0).sqrt().asinh()
    } else if u < 2.68e8 {
        u.acosh()
    } else {
        u.ln() + std::f64::consts::LN_2
    }
}

/// Half-length of a hyperbolic element from its trace: acosh(t/2).
pub fn half_length(trace: f64) -> f64 {
    let t = trace.abs();
    if t < 2.0 || t.is_nan() {
        f64::NAN
    } else if t < 4.0 {
        2.0 * ((t - 2.0) / 4.0).sqrt().asinh()
    } else {
        acosh(t / 2.0)
    }
}

/// Relative difference with a floor of 1 on the scale.
pub fn rel_diff(a: f64, b: f64) -> f64 {
    (a - b).abs() / a.abs().max(b.abs()).max(1.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn acosh_matches_std_in_the_middle() {
        for u in [1.5, 2.0, 3.0, 10.0, 1e5] {
            assert!((acosh(u) - u.acosh()).abs() < 1e-14 * u.acosh().max(1.0));
        }
    }

    #[test]
    fn acosh_near_one_keeps_digits() {
        let u = 1.0 + 1e-12;
        let d: f64 = u - 1.0;
        let exact = (2.0 * d).sqrt() * (1.0 - d / 12.0);
        assert!((acosh(u) - exact).abs() < 1e-20);
    }

    #[test]
    fn acosh_large_arguments() {
        assert!((acosh(1e300) - (2e300f64.ln())).abs() < 1e-12);
        assert!(acosh(f64::MAX).is_finite());
        assert!(acosh(0.5).is_nan());
    }

    #[test]
    fn half_length_of_three() {
        assert!((half_length(3.0) - 1.5f64.acosh()).abs() < 1e-15);
        assert!(half_length(-3.0) > 0.0);
        assert!(half_length(1.0).is_nan());
    }
}
