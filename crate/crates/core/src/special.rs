//! Gamma-function helpers.

#[allow(unused_imports)] // float methods come from std when it is linked
use num_traits::Float;
/// `Γ(s)`.
pub fn gamma(s: f64) -> f64 {
    libm::tgamma(s)
}

/// `e^x Γ(s, x)` for `s > 0`, `x >= 0`: the upper incomplete gamma function
/// scaled so that it stays representable for large `x`.
pub fn upper_gamma_scaled(s: f64, x: f64) -> f64 {
    debug_assert!(s > 0.0 && x >= 0.0);
    if x == 0.0 {
        return gamma(s);
    }
    if x < s + 1.0 {
        // Γ(s, x) = Γ(s) − γ(s, x), γ(s, x) = x^s e^{-x} Σ x^n / (s (s+1) … (s+n)).
        let mut term = 1.0 / s;
        let mut sum = term;
        for n in 1..500 {
            term *= x / (s + n as f64);
            sum += term;
            if term.abs() < sum.abs() * 1e-17 {
                break;
            }
        }
        x.exp() * gamma(s) - x.powf(s) * sum
    } else {
        // Modified Lentz on the continued fraction for Γ(s, x) e^x x^{-s}.
        let tiny = 1e-300;
        let mut b = x + 1.0 - s;
        let mut c = 1.0 / tiny;
        let mut d = 1.0 / b;
        let mut h = d;
        for i in 1..500 {
            let an = -(i as f64) * (i as f64 - s);
            b += 2.0;
            d = an * d + b;
            if d.abs() < tiny {
                d = tiny;
            }
            c = b + an / c;
            if c.abs() < tiny {
                c = tiny;
            }
            d = 1.0 / d;
            let delta = d * c;
            h *= delta;
            if (delta - 1.0).abs() < 1e-16 {
                break;
            }
        }
        x.powf(s) * h
    }
}
