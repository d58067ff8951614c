//! Shipped test problems with certified smoothness metadata.
//!
//! Every solver-suite member is C^{1,1} on R^n, so its defect certificate is
//! mu = L / 2 with v = 2. The `cubic` fixture is deliberately not
//! pseudo-convex and carries no certificate; it exists for certifier tests.

use crate::error::AsdmError;
use crate::objective::{ObjectiveMetadata, ObjectiveSpec};
use crate::point::Point;

/// A registered problem: objective plus the data harnesses need to run and
/// audit it reproducibly.
pub struct Fixture {
    pub id: &'static str,
    pub objective: ObjectiveSpec,
    pub default_start: Point,
    /// Half-width of the axis-aligned sampling box centered on the default
    /// start, used by certifier scans and random-start sweeps.
    pub sampling_half_width: f64,
    /// A known pseudo-convexity violation pair, for fixtures that have one.
    /// Violations of the cubic sit exactly on its stationary point, a
    /// measure-zero set random sampling cannot hit.
    pub pseudoconvexity_probe: Option<(Point, Point)>,
}

/// Optional per-problem knobs read from run configs.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct FixtureOptions {
    pub dim: Option<usize>,
    pub spectrum: Option<Vec<f64>>,
}

/// Problems eligible for solver sweeps (all smooth, bounded below, with
/// known optimum).
pub const SOLVER_SUITE: &[&str] = &["quad1d", "steepquad", "quadnd", "lse", "fractional-ball"];

/// Every registered id, including certifier-only fixtures.
pub const ALL_FIXTURES: &[&str] = &[
    "quad1d",
    "steepquad",
    "quadnd",
    "lse",
    "fractional-ball",
    "cubic",
];

pub fn fixture(id: &str) -> Result<Fixture, AsdmError> {
    fixture_with(id, &FixtureOptions::default())
}

pub fn fixture_with(id: &str, opts: &FixtureOptions) -> Result<Fixture, AsdmError> {
    match id {
        "quad1d" => {
            reject_options(id, opts)?;
            Ok(quad1d())
        }
        "steepquad" => {
            reject_options(id, opts)?;
            Ok(steepquad())
        }
        "quadnd" => quadnd(opts),
        "lse" => {
            reject_spectrum(id, opts)?;
            lse(opts.dim.unwrap_or(2))
        }
        "fractional-ball" => {
            reject_spectrum(id, opts)?;
            fractional_ball(opts.dim.unwrap_or(2))
        }
        "cubic" => {
            reject_options(id, opts)?;
            Ok(cubic())
        }
        other => Err(AsdmError::UnknownProblem(other.to_string())),
    }
}

fn reject_options(id: &str, opts: &FixtureOptions) -> Result<(), AsdmError> {
    if *opts != FixtureOptions::default() {
        return Err(AsdmError::InvalidParameter {
            name: "dim/spectrum",
            value: f64::NAN,
            requirement: match id {
                "quad1d" => "quad1d is fixed at dimension 1 and takes no options",
                "steepquad" => "steepquad is fixed at dimension 1 and takes no options",
                _ => "this problem takes no options",
            },
        });
    }
    Ok(())
}

fn reject_spectrum(id: &str, opts: &FixtureOptions) -> Result<(), AsdmError> {
    if opts.spectrum.is_some() {
        return Err(AsdmError::InvalidParameter {
            name: "spectrum",
            value: f64::NAN,
            requirement: match id {
                "lse" => "lse takes no spectrum",
                _ => "fractional-ball takes no spectrum",
            },
        });
    }
    if opts.dim == Some(0) {
        return Err(AsdmError::InvalidParameter {
            name: "dim",
            value: 0.0,
            requirement: "dim >= 1",
        });
    }
    Ok(())
}

/// f(x) = x^2 / 2 on R. L = 1.
fn quad1d() -> Fixture {
    let objective = ObjectiveSpec::new(
        1,
        |x: &Point| 0.5 * x[0] * x[0],
        |x: &Point| x.clone(),
    )
    .with_metadata(ObjectiveMetadata {
        lipschitz_grad: Some(1.0),
        mu: Some(0.5),
        v_exponent: 2.0,
        f_star: Some(0.0),
        minimizers: vec![Point::new(vec![0.0])],
    });
    Fixture {
        id: "quad1d",
        objective,
        default_start: Point::new(vec![1.0]),
        sampling_half_width: 2.0,
        pseudoconvexity_probe: None,
    }
}

/// f(x) = 50 x^2 on R. L = 100; forces visible backtracking and epsilon
/// growth when started at eps = 1.
fn steepquad() -> Fixture {
    let objective = ObjectiveSpec::new(
        1,
        |x: &Point| 50.0 * x[0] * x[0],
        |x: &Point| Point::new(vec![100.0 * x[0]]),
    )
    .with_metadata(ObjectiveMetadata {
        lipschitz_grad: Some(100.0),
        mu: Some(50.0),
        v_exponent: 2.0,
        f_star: Some(0.0),
        minimizers: vec![Point::new(vec![0.0])],
    });
    Fixture {
        id: "steepquad",
        objective,
        default_start: Point::new(vec![1.0]),
        sampling_half_width: 2.0,
        pseudoconvexity_probe: None,
    }
}

/// f(x) = x'Ax / 2 - b'x with A diagonal. The spectrum comes from the run
/// config (default 1, 10, 100); b = A * ones, so the minimizer is the all
/// ones vector and f_star = -trace(A) / 2.
fn quadnd(opts: &FixtureOptions) -> Result<Fixture, AsdmError> {
    let spectrum: Vec<f64> = match (&opts.spectrum, opts.dim) {
        (Some(s), dim) => {
            if let Some(d) = dim {
                if d != s.len() {
                    return Err(AsdmError::InvalidParameter {
                        name: "dim",
                        value: d as f64,
                        requirement: "dim must match the spectrum length",
                    });
                }
            }
            s.clone()
        }
        (None, Some(d)) if d >= 1 => {
            // Log-spaced eigenvalues from 1 to 100.
            (0..d)
                .map(|j| {
                    if d == 1 {
                        1.0
                    } else {
                        10f64.powf(2.0 * j as f64 / (d - 1) as f64)
                    }
                })
                .collect()
        }
        (None, Some(_)) => {
            return Err(AsdmError::InvalidParameter {
                name: "dim",
                value: 0.0,
                requirement: "dim >= 1",
            })
        }
        (None, None) => vec![1.0, 10.0, 100.0],
    };
    if spectrum.is_empty() {
        return Err(AsdmError::InvalidParameter {
            name: "spectrum",
            value: 0.0,
            requirement: "spectrum must be nonempty",
        });
    }
    for &lam in &spectrum {
        if !(lam > 0.0 && lam.is_finite()) {
            return Err(AsdmError::InvalidParameter {
                name: "spectrum",
                value: lam,
                requirement: "every eigenvalue must be positive and finite",
            });
        }
    }
    let dim = spectrum.len();
    let l = spectrum.iter().cloned().fold(0.0f64, f64::max);
    let f_star = -0.5 * spectrum.iter().sum::<f64>();
    let minimizer = Point::new(vec![1.0; dim]);
    let a_val = spectrum.clone();
    let a_grad = spectrum.clone();
    let objective = ObjectiveSpec::new(
        dim,
        move |x: &Point| {
            let mut acc = 0.0;
            for (i, &lam) in a_val.iter().enumerate() {
                // b_i = lam (A times the ones vector).
                acc += 0.5 * lam * x[i] * x[i] - lam * x[i];
            }
            acc
        },
        move |x: &Point| {
            Point::new(
                a_grad
                    .iter()
                    .enumerate()
                    .map(|(i, &lam)| lam * x[i] - lam)
                    .collect(),
            )
        },
    )
    .with_metadata(ObjectiveMetadata {
        lipschitz_grad: Some(l),
        mu: Some(l / 2.0),
        v_exponent: 2.0,
        f_star: Some(f_star),
        minimizers: vec![minimizer],
    });
    Ok(Fixture {
        id: "quadnd",
        objective,
        default_start: Point::zeros(dim),
        sampling_half_width: 2.0,
        pseudoconvexity_probe: None,
    })
}

/// Smooth max of the 2n affine functions +-x_i:
/// f(x) = log sum_i (e^{x_i} + e^{-x_i}). Minimum at the origin with
/// f_star = log(2n); the Hessian is dominated by the softmax weights, so
/// L = 1 is a valid (conservative) Lipschitz constant.
fn lse(dim: usize) -> Result<Fixture, AsdmError> {
    let objective = ObjectiveSpec::new(
        dim,
        |x: &Point| {
            let m = x.as_slice().iter().fold(0.0f64, |acc, c| acc.max(c.abs()));
            let sum: f64 = x
                .as_slice()
                .iter()
                .map(|c| (c - m).exp() + (-c - m).exp())
                .sum();
            m + sum.ln()
        },
        |x: &Point| {
            let m = x.as_slice().iter().fold(0.0f64, |acc, c| acc.max(c.abs()));
            let sum: f64 = x
                .as_slice()
                .iter()
                .map(|c| (c - m).exp() + (-c - m).exp())
                .sum();
            Point::new(
                x.as_slice()
                    .iter()
                    .map(|c| ((c - m).exp() - (-c - m).exp()) / sum)
                    .collect(),
            )
        },
    )
    .with_metadata(ObjectiveMetadata {
        lipschitz_grad: Some(1.0),
        mu: Some(0.5),
        v_exponent: 2.0,
        f_star: Some((2.0 * dim as f64).ln()),
        minimizers: vec![Point::zeros(dim)],
    });
    let start = Point::new(
        (0..dim)
            .map(|j| {
                let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                sign * (1.0 + 0.5 * j as f64)
            })
            .collect(),
    );
    Ok(Fixture {
        id: "lse",
        objective,
        default_start: start,
        sampling_half_width: 3.0,
        pseudoconvexity_probe: None,
    })
}

/// f(x) = r^2 / (1 + r^2) with r = ||x - c||. Pseudo-convex on all of R^n
/// but not convex; C^{1,1} with L = 2 (the Hessian norm peaks at the
/// center). Minimum 0 at c.
fn fractional_ball(dim: usize) -> Result<Fixture, AsdmError> {
    let center: Vec<f64> = (0..dim).map(|j| if j % 2 == 0 { 1.0 } else { -1.0 }).collect();
    let c_val = Point::new(center.clone());
    let c_grad = c_val.clone();
    let minimizer = c_val.clone();
    let objective = ObjectiveSpec::new(
        dim,
        move |x: &Point| {
            let r2 = x.sub(&c_val).norm_pow(2.0);
            r2 / (1.0 + r2)
        },
        move |x: &Point| {
            let d = x.sub(&c_grad);
            let denom = 1.0 + d.norm_pow(2.0);
            d.scale(2.0 / (denom * denom))
        },
    )
    .with_metadata(ObjectiveMetadata {
        lipschitz_grad: Some(2.0),
        mu: Some(1.0),
        v_exponent: 2.0,
        f_star: Some(0.0),
        minimizers: vec![minimizer],
    });
    let start = Point::new(
        center
            .iter()
            .enumerate()
            .map(|(j, c)| c + 0.8 * if j % 2 == 0 { 1.0 } else { -1.0 })
            .collect(),
    );
    Ok(Fixture {
        id: "fractional-ball",
        objective,
        default_start: start,
        sampling_half_width: 2.0,
        pseudoconvexity_probe: None,
    })
}

/// f(x) = x^3 on R. Not pseudo-convex: its stationary point is not a
/// minimizer. Certifier tests only; carries no certificate metadata.
fn cubic() -> Fixture {
    let objective = ObjectiveSpec::new(
        1,
        |x: &Point| x[0] * x[0] * x[0],
        |x: &Point| Point::new(vec![3.0 * x[0] * x[0]]),
    );
    Fixture {
        id: "cubic",
        objective,
        default_start: Point::new(vec![1.0]),
        sampling_half_width: 2.0,
        pseudoconvexity_probe: Some((Point::new(vec![0.0]), Point::new(vec![-1.0]))),
    }
}
