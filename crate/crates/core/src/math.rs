//! Small numeric helpers shared by the channel and DE code.

use statrs::function::erf::erfc;
use statrs::function::factorial::ln_binomial;

/// Gaussian tail `Q(x) = P(N(0,1) > x)`; `Q(+inf) = 0`, `Q(-inf) = 1`.
#[inline]
pub fn q_function(x: f64) -> f64 {
    if x == f64::INFINITY {
        0.0
    } else if x == f64::NEG_INFINITY {
        1.0
    } else {
        0.5 * erfc(x / std::f64::consts::SQRT_2)
    }
}

/// Standard normal CDF.
#[inline]
pub fn phi_cdf(x: f64) -> f64 {
    q_function(-x)
}

/// Standard normal density.
#[inline]
pub fn phi_pdf(x: f64) -> f64 {
    if x.is_infinite() {
        0.0
    } else {
        (-0.5 * x * x).exp() / (2.0 * std::f64::consts::PI).sqrt()
    }
}

/// `ln C(n, k)`.
#[inline]
pub fn ln_choose(n: u64, k: u64) -> f64 {
    ln_binomial(n, k)
}

pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

pub fn linear_to_db(x: f64) -> f64 {
    10.0 * x.log10()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn q_reference_values() {
        assert_relative_eq!(q_function(0.0), 0.5, epsilon = 1e-15);
        assert_relative_eq!(q_function(1.0), 0.158_655_253_931_457_05, max_relative = 1e-9);
        assert_relative_eq!(q_function(5.0), 2.866_515_718_791_939e-7, max_relative = 1e-9);
        assert_eq!(q_function(f64::INFINITY), 0.0);
        assert_eq!(q_function(f64::NEG_INFINITY), 1.0);
        assert_relative_eq!(q_function(-1.0) + q_function(1.0), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn ln_choose_small() {
        assert_relative_eq!(ln_choose(14, 2).exp(), 91.0, max_relative = 1e-12);
        assert_eq!(ln_choose(5, 0), 0.0);
    }
}
