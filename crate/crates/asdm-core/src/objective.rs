//! Objective function contracts: values, gradients, smoothness metadata, and
//! per-run evaluation counting.
//!
//! An [`ObjectiveSpec`] bundles a value function, its gradient, and whatever
//! certificates are known about the function (gradient Lipschitz constant,
//! a concavity-defect modulus `mu` paired with the exponent `v` it certifies,
//! the optimal value, known minimizers). Value and gradient functions must be
//! pure: same input, same output, no observable side effects. Evaluation
//! counters live in [`CountingObjective`] wrappers owned by a single run,
//! never in shared globals.

use std::cell::Cell;

use crate::error::AsdmError;
use crate::point::Point;

/// Facts known about an objective. Everything is optional; audits that need
/// a missing field are skipped and reported as such.
#[derive(Clone, Debug, Default)]
pub struct ObjectiveMetadata {
    /// Lipschitz constant of the gradient, if the function is C^{1,1}.
    pub lipschitz_grad: Option<f64>,
    /// Concavity-defect modulus: together with `v_exponent` it certifies
    /// f(ax + (1-a)y) >= a f(x) + (1-a) f(y) - a(1-a) mu ||x - y||^v.
    pub mu: Option<f64>,
    /// The exponent `v` that `mu` certifies. Meaningless when `mu` is None.
    pub v_exponent: f64,
    /// Optimal value, when known.
    pub f_star: Option<f64>,
    /// Known minimizers, possibly empty.
    pub minimizers: Vec<Point>,
}

impl ObjectiveMetadata {
    pub fn none() -> Self {
        ObjectiveMetadata {
            v_exponent: 2.0,
            ..Default::default()
        }
    }
}

/// Anything that can produce values and gradients.
pub trait Objective {
    fn dimension(&self) -> usize;
    /// Raw value; may be non-finite outside the domain.
    fn value(&self, x: &Point) -> f64;
    /// Raw gradient; components may be non-finite outside the domain.
    fn gradient(&self, x: &Point) -> Point;
}

type ValueFn = Box<dyn Fn(&Point) -> f64 + Send + Sync>;
type GradientFn = Box<dyn Fn(&Point) -> Point + Send + Sync>;

/// A smooth objective on R^n given by explicit value and gradient closures.
pub struct ObjectiveSpec {
    dimension: usize,
    value_fn: ValueFn,
    gradient_fn: GradientFn,
    pub metadata: ObjectiveMetadata,
}

impl ObjectiveSpec {
    pub fn new<V, G>(dimension: usize, value_fn: V, gradient_fn: G) -> Self
    where
        V: Fn(&Point) -> f64 + Send + Sync + 'static,
        G: Fn(&Point) -> Point + Send + Sync + 'static,
    {
        ObjectiveSpec {
            dimension,
            value_fn: Box::new(value_fn),
            gradient_fn: Box::new(gradient_fn),
            metadata: ObjectiveMetadata::none(),
        }
    }

    pub fn with_metadata(mut self, metadata: ObjectiveMetadata) -> Self {
        self.metadata = metadata;
        self
    }
}

impl Objective for ObjectiveSpec {
    fn dimension(&self) -> usize {
        self.dimension
    }

    fn value(&self, x: &Point) -> f64 {
        debug_assert_eq!(x.dim(), self.dimension);
        (self.value_fn)(x)
    }

    fn gradient(&self, x: &Point) -> Point {
        debug_assert_eq!(x.dim(), self.dimension);
        (self.gradient_fn)(x)
    }
}

/// Borrow of an objective that counts evaluations. One wrapper per run.
pub struct CountingObjective<'a> {
    inner: &'a ObjectiveSpec,
    fevals: Cell<u64>,
    gevals: Cell<u64>,
}

impl<'a> CountingObjective<'a> {
    pub fn new(inner: &'a ObjectiveSpec) -> Self {
        CountingObjective {
            inner,
            fevals: Cell::new(0),
            gevals: Cell::new(0),
        }
    }

    pub fn fevals(&self) -> u64 {
        self.fevals.get()
    }

    pub fn gevals(&self) -> u64 {
        self.gevals.get()
    }
}

impl Objective for CountingObjective<'_> {
    fn dimension(&self) -> usize {
        self.inner.dimension()
    }

    fn value(&self, x: &Point) -> f64 {
        self.fevals.set(self.fevals.get() + 1);
        self.inner.value(x)
    }

    fn gradient(&self, x: &Point) -> Point {
        self.gevals.set(self.gevals.get() + 1);
        self.inner.gradient(x)
    }
}

/// Checked evaluation: errors on dimension mismatch or a non-finite value.
pub fn evaluate(obj: &impl Objective, x: &Point) -> Result<f64, AsdmError> {
    if x.dim() != obj.dimension() {
        return Err(AsdmError::DimensionMismatch {
            expected: obj.dimension(),
            got: x.dim(),
        });
    }
    let f = obj.value(x);
    if !f.is_finite() {
        return Err(AsdmError::NonFiniteValue { at: x.to_vec() });
    }
    Ok(f)
}

/// Checked gradient: errors on dimension mismatch or non-finite components.
pub fn gradient(obj: &impl Objective, x: &Point) -> Result<Point, AsdmError> {
    if x.dim() != obj.dimension() {
        return Err(AsdmError::DimensionMismatch {
            expected: obj.dimension(),
            got: x.dim(),
        });
    }
    let g = obj.gradient(x);
    if !g.is_finite() {
        return Err(AsdmError::NonFiniteGradient { at: x.to_vec() });
    }
    Ok(g)
}

/// Compares the analytic gradient against central finite differences with
/// stencil width `h` and returns the worst per-coordinate relative error
/// `|g_i - fd_i| / max(1, |fd_i|)`.
pub fn check_gradient(obj: &impl Objective, x: &Point, h: f64) -> f64 {
    assert!(h > 0.0 && h.is_finite(), "stencil width must be positive");
    let g = obj.gradient(x);
    let mut worst = 0.0f64;
    for i in 0..x.dim() {
        let mut plus = x.to_vec();
        let mut minus = x.to_vec();
        plus[i] += h;
        minus[i] -= h;
        let fd = (obj.value(&Point::new(plus)) - obj.value(&Point::new(minus))) / (2.0 * h);
        let err = (g[i] - fd).abs() / fd.abs().max(1.0);
        worst = worst.max(err);
    }
    worst
}
