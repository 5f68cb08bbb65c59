//! Closed-form angle predictions for random regular ensembles.
//!
//! For (D+1)-regular graphs with i.i.d. edge weights of mean `E[J]` and
//! second moment `E[J²]`, the leading large-D order of the depth-1
//! expectation collapses into one of three shapes, selected by how the
//! closed-neighborhood (`a·D^λ`) and shared-neighborhood (`b·D^μ`) edge
//! counts scale. Each shape fixes the optimal rescaled angle
//! `γ* = α*/√D` in closed form.

use crate::error::{Error, Result};

/// Moment and structure parameters of a random regular ensemble.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentSummary {
    /// Mean edge weight `E[J]`.
    pub ej: f64,
    /// Second moment `E[J²]`; must be positive and at least `ej²`.
    pub ej2: f64,
    /// Degree parameter `D` of the (D+1)-regular ensemble.
    pub d: f64,
    /// Scale of the closed-neighborhood term, `a·D^λ` edges.
    pub a: f64,
    /// Scale of the shared-neighborhood term, `b·D^μ` edges.
    pub b: f64,
    /// Exponent λ of the closed-neighborhood scaling, in `[0, 1]`.
    pub lambda: f64,
    /// Exponent μ of the shared-neighborhood scaling, in `[0, 1]`.
    pub mu: f64,
}

/// Which leading-order shape the parameters select.
#[derive(Debug, Clone, Copy, PartialEq)]
enum CostShape {
    /// Single-frequency term `∝ α·sin 4β·e^{−2α²E[J²]}`.
    Sine,
    /// Hyperbolic term `∝ sin²2β·e^{−4θ₁α²E[J²]}·sinh(4θ₂α²E[J]²)`.
    Sinh { theta1: f64, theta2: f64 },
    /// Power-suppressed quadratic term `∝ α²·D^{μ−1}`.
    Quadratic,
}

fn validate(m: &MomentSummary) -> Result<()> {
    for (name, v) in [
        ("ej", m.ej),
        ("ej2", m.ej2),
        ("d", m.d),
        ("a", m.a),
        ("b", m.b),
        ("lambda", m.lambda),
        ("mu", m.mu),
    ] {
        if !v.is_finite() {
            return Err(Error::Input(format!("moment parameter {name} is not finite")));
        }
    }
    if m.ej2 <= 0.0 {
        return Err(Error::Input(format!("second moment must be positive, got {}", m.ej2)));
    }
    if m.ej2 < m.ej * m.ej - 1e-12 * (1.0 + m.ej * m.ej) {
        return Err(Error::Input(format!(
            "second moment {} is below the squared mean {}",
            m.ej2,
            m.ej * m.ej
        )));
    }
    if m.d <= 0.0 {
        return Err(Error::Input(format!("degree parameter must be positive, got {}", m.d)));
    }
    if m.a < 0.0 || m.b < 0.0 {
        return Err(Error::Input("structure scales a, b must be nonnegative".into()));
    }
    if !(0.0..=1.0).contains(&m.lambda) || !(0.0..=1.0).contains(&m.mu) {
        return Err(Error::Input("exponents lambda, mu must lie in [0, 1]".into()));
    }
    Ok(())
}

fn classify(m: &MomentSummary) -> Result<CostShape> {
    validate(m)?;
    if m.lambda == 0.5 || m.mu == 0.5 {
        return Err(Error::UnsupportedCase(
            "the λ = ½ / μ = ½ boundary has no closed-form optimum".into(),
        ));
    }
    if m.b == 0.0 && m.a == 1.0 && m.lambda == 1.0 {
        return Ok(CostShape::Sine);
    }
    if m.a == 0.0 && m.b == 1.0 && m.mu == 1.0 {
        return Ok(CostShape::Sinh { theta1: 1.0, theta2: 1.0 });
    }
    if m.a > 0.0 && m.b > 0.0 {
        if m.mu == 1.0 && m.lambda == 1.0 {
            return Ok(CostShape::Sinh { theta1: 1.0, theta2: m.b });
        }
        if m.mu == 1.0 && m.lambda < 1.0 {
            return Ok(CostShape::Sinh { theta1: m.b, theta2: m.b });
        }
        if m.lambda == 1.0 && m.mu > 0.5 && m.mu < 1.0 {
            return Ok(CostShape::Quadratic);
        }
        if m.lambda == 1.0 && m.mu < 0.5 {
            return Ok(CostShape::Sine);
        }
    }
    Err(Error::UnsupportedCase(
        "structure parameters match no closed-form leading order".into(),
    ))
}

/// `η(θ) = 1/√(θ·D·E[J²])`.
fn eta(theta: f64, m: &MomentSummary) -> f64 {
    1.0 / (theta * m.d * m.ej2).sqrt()
}

/// `ζ(θ₁, θ₂) = √(ln((θ₁E[J²] + θ₂E[J]²)/(θ₁E[J²] − θ₂E[J]²)) / (8θ₂·D·E[J]²))`.
fn zeta(theta1: f64, theta2: f64, m: &MomentSummary) -> Result<f64> {
    let ej_sq = m.ej * m.ej;
    let denominator = theta1 * m.ej2 - theta2 * ej_sq;
    if denominator <= 0.0 {
        return Err(Error::Domain(format!(
            "ζ log argument requires θ₁E[J²] > θ₂E[J]², got {} ≤ {}",
            theta1 * m.ej2,
            theta2 * ej_sq
        )));
    }
    let log_arg = (theta1 * m.ej2 + theta2 * ej_sq) / denominator;
    Ok((log_arg.ln() / (8.0 * theta2 * m.d * ej_sq)).sqrt())
}

/// Closed-form optimal γ for a classified ensemble.
///
/// Zero-mean weights collapse every shape onto the single-frequency one,
/// whose optimum is `η(4)` regardless of the neighborhood structure.
///
/// # Examples
///
/// ```
/// use qaoa1::optimize::{predicted_gamma_star, MomentSummary};
///
/// // Triangle-free ±1 ensemble at D = 64: γ* = 1/(2√64) = 1/16.
/// let m = MomentSummary { ej: 0.0, ej2: 1.0, d: 64.0, a: 1.0, b: 0.0, lambda: 1.0, mu: 0.0 };
/// assert_eq!(predicted_gamma_star(&m).unwrap(), 1.0 / 16.0);
/// ```
pub fn predicted_gamma_star(m: &MomentSummary) -> Result<f64> {
    let shape = classify(m)?;
    if m.ej == 0.0 {
        return Ok(eta(4.0, m));
    }
    match shape {
        CostShape::Sine => Ok(eta(4.0, m)),
        CostShape::Sinh { theta1, theta2 } => zeta(theta1, theta2, m),
        CostShape::Quadratic => Ok(eta(2.0 * m.a, m)),
    }
}

/// Leading-order expected cost at rescaled angle `α = γ√D` and mixing
/// angle β (the O(·) remainders are dropped).
pub fn scaled_expected_cost(alpha: f64, beta: f64, m: &MomentSummary) -> Result<f64> {
    if !alpha.is_finite() || !beta.is_finite() {
        return Err(Error::Input("angles must be finite".into()));
    }
    let shape = classify(m)?;
    let s2 = (2.0 * beta).sin();
    let s4 = (4.0 * beta).sin();
    let a2 = alpha * alpha;
    if m.ej == 0.0 {
        return Ok(2.0 * alpha * s4 * m.ej2 * (-2.0 * a2 * m.ej2).exp() / m.d.sqrt());
    }
    Ok(match shape {
        CostShape::Sine => 2.0 * alpha * s4 * m.ej2 * (-2.0 * a2 * m.ej2).exp() / m.d.sqrt(),
        CostShape::Sinh { theta1, theta2 } => {
            s2 * s2
                * m.ej
                * (-4.0 * theta1 * a2 * m.ej2).exp()
                * (4.0 * theta2 * a2 * m.ej * m.ej).sinh()
        }
        CostShape::Quadratic => {
            4.0 * m.b * a2 * s2 * s2 * m.ej.powi(3) * (-4.0 * m.a * a2 * m.ej2).exp()
                * m.d.powf(m.mu - 1.0)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sine_case(d: f64, ej: f64, ej2: f64) -> MomentSummary {
        MomentSummary { ej, ej2, d, a: 1.0, b: 0.0, lambda: 1.0, mu: 0.0 }
    }

    #[test]
    fn eta_pins() {
        // b = 0, a = λ = 1, D = 4, E[J²] = 1: η(4) = 1/√16.
        let m = sine_case(4.0, 0.5, 1.0);
        assert_eq!(predicted_gamma_star(&m).unwrap(), 0.25);

        // Zero-mean ±1 weights, D = 64: γ* = 1/16.
        let m = sine_case(64.0, 0.0, 1.0);
        assert_eq!(predicted_gamma_star(&m).unwrap(), 1.0 / 16.0);
    }

    #[test]
    fn zeta_pin() {
        let m = MomentSummary {
            ej: 1.0,
            ej2: 2.0,
            d: 100.0,
            a: 0.0,
            b: 1.0,
            lambda: 0.0,
            mu: 1.0,
        };
        let expected = (3.0f64.ln() / 800.0).sqrt();
        assert!((predicted_gamma_star(&m).unwrap() - expected).abs() < 1e-15);
    }

    #[test]
    fn quadratic_case_uses_eta_2a() {
        let m = MomentSummary {
            ej: 1.0,
            ej2: 2.0,
            d: 50.0,
            a: 3.0,
            b: 1.0,
            lambda: 1.0,
            mu: 0.75,
        };
        assert_eq!(predicted_gamma_star(&m).unwrap(), 1.0 / (6.0f64 * 50.0 * 2.0).sqrt());
    }

    #[test]
    fn boundaries_and_mismatches_are_rejected() {
        let mut m = sine_case(10.0, 0.0, 1.0);
        m.lambda = 0.5;
        assert!(matches!(predicted_gamma_star(&m), Err(Error::UnsupportedCase(_))));

        let mut m = MomentSummary {
            ej: 1.0,
            ej2: 2.0,
            d: 10.0,
            a: 1.0,
            b: 1.0,
            lambda: 1.0,
            mu: 0.5,
        };
        assert!(matches!(predicted_gamma_star(&m), Err(Error::UnsupportedCase(_))));
        m.mu = 0.9;
        m.a = 0.0;
        m.b = 0.5; // matches no tabulated case
        assert!(matches!(predicted_gamma_star(&m), Err(Error::UnsupportedCase(_))));

        // Nonpositive log argument: θ₁E[J²] = θ₂E[J]² exactly.
        let m = MomentSummary {
            ej: std::f64::consts::SQRT_2,
            ej2: 2.0,
            d: 10.0,
            a: 0.0,
            b: 1.0,
            lambda: 0.0,
            mu: 1.0,
        };
        assert!(matches!(predicted_gamma_star(&m), Err(Error::Domain(_))));

        // Structural validation.
        let mut m = sine_case(10.0, 2.0, 1.0); // ej² > ej2
        assert!(matches!(predicted_gamma_star(&m), Err(Error::Input(_))));
        m = sine_case(0.0, 0.0, 1.0); // d = 0
        assert!(matches!(predicted_gamma_star(&m), Err(Error::Input(_))));
    }

    #[test]
    fn cost_vanishes_at_alpha_zero() {
        let beta = 3.0 * std::f64::consts::FRAC_PI_8;
        let cases = [
            sine_case(16.0, 0.0, 1.0),
            MomentSummary { ej: 1.0, ej2: 2.0, d: 100.0, a: 0.0, b: 1.0, lambda: 0.0, mu: 1.0 },
            MomentSummary { ej: 1.0, ej2: 2.0, d: 50.0, a: 3.0, b: 1.0, lambda: 1.0, mu: 0.75 },
        ];
        for m in cases {
            assert_eq!(scaled_expected_cost(0.0, beta, &m).unwrap(), 0.0);
        }
    }

    #[test]
    fn sine_case_alpha_star_is_inverse_double_root_second_moment() {
        // At β = 3π/8 the single-frequency cost is −2α·E[J²]e^{−2α²E[J²]}/√D,
        // minimized at α* = 1/(2√E[J²]). Golden-section search over (0, 3].
        let beta = 3.0 * std::f64::consts::FRAC_PI_8;
        for ej2 in [1.0, 2.0, 0.5] {
            let m = sine_case(16.0, 0.0, ej2);
            let f = |alpha: f64| scaled_expected_cost(alpha, beta, &m).unwrap();
            let (mut lo, mut hi) = (1e-9, 3.0);
            let phi = (5.0f64.sqrt() - 1.0) / 2.0;
            for _ in 0..120 {
                let mid1 = hi - phi * (hi - lo);
                let mid2 = lo + phi * (hi - lo);
                if f(mid1) < f(mid2) {
                    hi = mid2;
                } else {
                    lo = mid1;
                }
            }
            let alpha_star = 0.5 * (lo + hi);
            assert!(
                (alpha_star - 0.5 / ej2.sqrt()).abs() < 1e-6,
                "ej2 = {ej2}: α* = {alpha_star}"
            );
        }
    }

    #[test]
    fn sine_case_is_unimodal_around_alpha_star() {
        let beta = 3.0 * std::f64::consts::FRAC_PI_8;
        let m = sine_case(16.0, 0.0, 1.0);
        let alpha_star = 0.5;
        let mut previous = None;
        for k in 1..=1000 {
            let alpha = 3.0 * k as f64 / 1000.0;
            let value = scaled_expected_cost(alpha, beta, &m).unwrap();
            if let Some((prev_alpha, prev_value)) = previous {
                if alpha <= alpha_star {
                    assert!(value < prev_value, "not decreasing at α = {prev_alpha}");
                } else if prev_alpha >= alpha_star {
                    assert!(value > prev_value, "not increasing at α = {prev_alpha}");
                }
            }
            previous = Some((alpha, value));
        }
    }
}
