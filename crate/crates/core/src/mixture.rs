//! Gaussian-mixture laws of channel LLRs.

use serde::{Deserialize, Serialize};

use crate::channel::ChannelModel;
use crate::math::{phi_pdf, q_function};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussianComponent {
    pub weight: f64,
    pub mean: f64,
    /// Zero gives a point mass at `mean`.
    pub std: f64,
}

/// Finite mixture of Gaussians (point masses allowed).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaussianMixture {
    pub components: Vec<GaussianComponent>,
}

/// Standardized interval integrals `(∫φ, ∫zφ, ∫z²φ)` over `[za, zb]`.
fn standard_moments(za: f64, zb: f64) -> (f64, f64, f64) {
    let m0 = if za > 0.0 {
        q_function(za) - q_function(zb)
    } else {
        q_function(-zb) - q_function(-za)
    };
    let zphi = |z: f64| if z.is_infinite() { 0.0 } else { z * phi_pdf(z) };
    let m1 = phi_pdf(za) - phi_pdf(zb);
    let m2 = m0 - (zphi(zb) - zphi(za));
    (m0, m1, m2)
}

impl GaussianMixture {
    pub fn standard_normal() -> Self {
        Self {
            components: vec![GaussianComponent {
                weight: 1.0,
                mean: 0.0,
                std: 1.0,
            }],
        }
    }

    pub fn total_weight(&self) -> f64 {
        self.components.iter().map(|c| c.weight).sum()
    }

    /// Density; point masses are ignored.
    pub fn pdf(&self, x: f64) -> f64 {
        self.components
            .iter()
            .filter(|c| c.std > 0.0)
            .map(|c| c.weight * phi_pdf((x - c.mean) / c.std) / c.std)
            .sum()
    }

    /// `(P, E[X; cell], E[X^2; cell])` over the cell `(a, b]`.
    pub fn moments(&self, a: f64, b: f64) -> (f64, f64, f64) {
        let (mut p, mut e1, mut e2) = (0.0, 0.0, 0.0);
        for c in &self.components {
            if c.std == 0.0 {
                if a < c.mean && c.mean <= b {
                    p += c.weight;
                    e1 += c.weight * c.mean;
                    e2 += c.weight * c.mean * c.mean;
                }
                continue;
            }
            let (m0, m1, m2) = standard_moments((a - c.mean) / c.std, (b - c.mean) / c.std);
            let (mu, s) = (c.mean, c.std);
            p += c.weight * m0;
            e1 += c.weight * (mu * m0 + s * m1);
            e2 += c.weight * (mu * mu * m0 + 2.0 * mu * s * m1 + s * s * m2);
        }
        (p, e1, e2)
    }

    pub fn mass(&self, a: f64, b: f64) -> f64 {
        self.moments(a, b).0
    }

    /// A range holding all but a negligible tail.
    pub fn effective_support(&self) -> f64 {
        self.components
            .iter()
            .map(|c| c.mean.abs() + 6.0 * c.std)
            .fold(0.0, f64::max)
    }
}

/// LLR law conditioned on a transmitted zero, after symmetrization:
/// `sum_j w_j N(mu_j, sigma_j^2)` with `sigma_j^2 = 2 mu_j`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MixtureLlrModel {
    pub components: Vec<GaussianComponent>,
    /// Hard-decision error probability `sum_j w_j Q(mu_j / sigma_j)`.
    pub p_ch: f64,
}

/// `ceil(log2(x))` for `x >= 1`.
fn ceil_log2(x: usize) -> u32 {
    x.next_power_of_two().trailing_zeros()
}

impl MixtureLlrModel {
    /// Weights `w_j = 2(2^{m - ceil(log2(j+1))} - 1)/(m M)` for `j < M/2`.
    pub fn ask_weights(m: u32) -> Vec<f64> {
        let size = 1usize << m;
        (0..size / 2)
            .map(|j| {
                let e = m - ceil_log2(j + 1);
                2.0 * ((1u64 << e) as f64 - 1.0) / (m as f64 * size as f64)
            })
            .collect()
    }

    pub fn for_channel(channel: &ChannelModel) -> Self {
        let sigma = channel.sigma();
        let s2 = sigma * sigma;
        let components: Vec<GaussianComponent> = match channel {
            ChannelModel::BiAwgn { .. } => vec![GaussianComponent {
                weight: 1.0,
                mean: 2.0 / s2,
                std: 2.0 / sigma,
            }],
            ChannelModel::BicmAsk { constellation, .. } => {
                let d = constellation.delta();
                Self::ask_weights(constellation.m())
                    .into_iter()
                    .enumerate()
                    .map(|(j, w)| {
                        let r = (j + 1) as f64;
                        GaussianComponent {
                            weight: w,
                            mean: 2.0 * d * d * r * r / s2,
                            std: 2.0 * d * r / sigma,
                        }
                    })
                    .collect()
            }
        };
        let p_ch = components.iter().map(|c| c.weight * q_function(c.mean / c.std)).sum();
        Self { components, p_ch }
    }

    /// Mean LLR magnitude `sum_j w_j mu_j`.
    pub fn mean_llr(&self) -> f64 {
        self.components.iter().map(|c| c.weight * c.mean).sum()
    }

    /// The law given a transmitted zero.
    pub fn conditional(&self) -> GaussianMixture {
        GaussianMixture {
            components: self.components.clone(),
        }
    }

    /// Unconditional two-sided law: equal mix of the bit-0 and bit-1 laws.
    pub fn symmetric(&self) -> GaussianMixture {
        let mut components = Vec::with_capacity(2 * self.components.len());
        for c in &self.components {
            for sign in [-1.0, 1.0] {
                components.push(GaussianComponent {
                    weight: 0.5 * c.weight,
                    mean: sign * c.mean,
                    std: c.std,
                });
            }
        }
        GaussianMixture { components }
    }
}

/// The mixture LLR law of `channel`.
pub fn mixture_model(channel: &ChannelModel) -> MixtureLlrModel {
    MixtureLlrModel::for_channel(channel)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{LlrMethod, Modulation};
    use approx::assert_relative_eq;

    #[test]
    fn weights_sum_to_one() {
        assert_eq!(MixtureLlrModel::ask_weights(2), vec![0.75, 0.25]);
        for m in 1..=4 {
            assert_relative_eq!(MixtureLlrModel::ask_weights(m).iter().sum::<f64>(), 1.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn components_are_consistent() {
        let ch = ChannelModel::new(Modulation::Ask { m: 3 }, 0.13, LlrMethod::MaxLog).unwrap();
        let d = crate::channel::AskConstellation::new(3).unwrap().delta();
        for (j, c) in mixture_model(&ch).components.iter().enumerate() {
            assert_relative_eq!(c.std * c.std, 2.0 * c.mean, max_relative = 1e-12);
            assert_relative_eq!(c.mean / c.std, d * (j + 1) as f64 / 0.13, max_relative = 1e-12);
        }
    }

    #[test]
    fn bi_awgn_pch_tends_to_half() {
        let ch = ChannelModel::new(Modulation::BiAwgn, 1e6, LlrMethod::Exact).unwrap();
        assert!((mixture_model(&ch).p_ch - 0.5).abs() < 1e-6);
    }

    #[test]
    fn interval_moments_of_standard_normal() {
        let g = GaussianMixture::standard_normal();
        let (p, e1, e2) = g.moments(f64::NEG_INFINITY, f64::INFINITY);
        assert_relative_eq!(p, 1.0, epsilon = 1e-15);
        assert!(e1.abs() < 1e-15);
        assert_relative_eq!(e2, 1.0, epsilon = 1e-15);
        let (_, half, _) = g.moments(0.0, f64::INFINITY);
        assert_relative_eq!(half, 1.0 / (2.0 * std::f64::consts::PI).sqrt(), max_relative = 1e-12);
    }
}
