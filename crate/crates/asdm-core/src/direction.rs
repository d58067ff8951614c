//! Descent directions normalized against the inequality
//! `<g, s> + eps ||s||^v <= 0`.
//!
//! The raw antigradient p = -g is kept whenever it already satisfies the
//! inequality. Otherwise it is rescaled to s = p / (eps ||p||^{v-2}), which
//! is the choice t = ||g||^2 in s = t p / (eps ||p||^v); the rescaled
//! direction lands on or inside the boundary and is never longer than p.
//! For v = 2 every admissible endpoint x + s lies in the closed ball of
//! radius ||g|| / (2 eps) centered at x - g / (2 eps); the rescaled
//! direction sits exactly on that sphere.

use crate::error::AsdmError;
use crate::point::Point;

/// A normalized direction and how it was produced.
#[derive(Clone, Debug)]
pub struct DirectionChoice {
    pub s: Point,
    /// The raw antigradient p = -g the construction started from.
    pub p: Point,
    pub was_rescaled: bool,
    /// The scale t applied in the rescaled branch (t = ||g||^2); 1 when the
    /// raw antigradient was kept.
    pub t_scale: f64,
}

/// True when `<g, s> + eps ||s||^v <= 0`. The boundary counts as normalized.
pub fn is_eps_normalized(g: &Point, s: &Point, eps: f64, v: f64) -> bool {
    assert!(eps > 0.0, "eps must be positive");
    assert!(v >= 2.0, "v must be at least 2");
    assert!(
        s.as_slice().iter().any(|&c| c != 0.0),
        "the zero direction is never a descent direction"
    );
    g.dot(s) + eps * s.norm_pow(v) <= 0.0
}

/// Builds the eps-normalized steepest-descent direction at gradient `g`.
///
/// Errors with [`AsdmError::ZeroGradient`] when `g = 0` (the caller is at a
/// stationary point and must stop) and with [`AsdmError::DirectionInvariant`]
/// if the constructed direction ever failed its own inequality, which the
/// algebra rules out for every v >= 2 but is asserted anyway.
pub fn normalize(g: &Point, eps: f64, v: f64) -> Result<DirectionChoice, AsdmError> {
    assert!(eps > 0.0, "eps must be positive");
    assert!(v >= 2.0, "v must be at least 2");
    if !g.is_finite() {
        return Err(AsdmError::NonFiniteGradient { at: g.to_vec() });
    }
    let g_sq = g.dot(g);
    if g_sq == 0.0 {
        return Err(AsdmError::ZeroGradient);
    }
    let p = g.neg();
    let choice = if g.dot(&p) + eps * p.norm_pow(v) <= 0.0 {
        DirectionChoice {
            s: p.clone(),
            p,
            was_rescaled: false,
            t_scale: 1.0,
        }
    } else {
        // s = p / (eps ||p||^{v-2}); for v = 2 a single division per
        // component keeps s bitwise equal to -g / eps.
        let s = if v == 2.0 {
            p.div_scalar(eps)
        } else {
            p.div_scalar(eps * p.norm().powf(v - 2.0))
        };
        DirectionChoice {
            s,
            p,
            was_rescaled: true,
            t_scale: g_sq,
        }
    };
    let residual = g.dot(&choice.s) + eps * choice.s.norm_pow(v);
    let slack = 1e-12 * (1.0 + g_sq);
    if residual > slack {
        return Err(AsdmError::DirectionInvariant { residual, slack });
    }
    Ok(choice)
}
