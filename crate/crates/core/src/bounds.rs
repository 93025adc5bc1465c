//! Exact rational bound evaluators parameterized by the degree cap.

use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::Serialize;

pub type Q = Ratio<i64>;

pub fn q(n: i64, d: i64) -> Q {
    Q::new(n, d)
}

pub fn qi(n: usize) -> Q {
    Q::from_integer(n as i64)
}

/// Rational rendered as `[numerator, denominator]` for reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Frac(pub i64, pub i64);

impl From<Q> for Frac {
    fn from(x: Q) -> Self {
        Frac(*x.numer(), *x.denom())
    }
}

impl Frac {
    pub fn to_f64(self) -> f64 {
        self.0 as f64 / self.1 as f64
    }
}

/// Degree cap together with the two coefficients used by the bounds:
/// `t_special = Δ/(⌊Δ²/4⌋+Δ)` governs the special-graph value and the
/// connected-graph bounds, while `t` (equal to `t_special` except `4/9` at
/// Δ = 5) governs the component-counting bound.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundParams {
    pub delta: usize,
    pub t: Q,
    pub t_special: Q,
}

impl BoundParams {
    /// Panics for `delta < 4`; callers validate user input first.
    pub fn new(delta: usize) -> Self {
        assert!(delta >= 4, "bounds are defined for delta >= 4");
        let d = delta as i64;
        let t_special = q(d, d * d / 4 + d);
        let t = if delta == 5 { q(4, 9) } else { t_special };
        BoundParams { delta, t, t_special }
    }

    /// Multiplies both coefficients by `factor`; used for negative controls.
    pub fn scaled(self, factor: Q) -> Self {
        BoundParams {
            t: self.t * factor,
            t_special: self.t_special * factor,
            ..self
        }
    }

    /// `(1 - t_special)(n - 1) + 1`, the value of `i` on special graphs.
    pub fn special_value(&self, n: usize) -> Q {
        if n == 0 {
            return Q::zero();
        }
        (Q::one() - self.t_special) * qi(n - 1) + Q::one()
    }

    /// Bound for connected graphs of maximum degree at most Δ.
    pub fn connected_bound(&self, n: usize) -> Q {
        let base = self.special_value(n);
        if self.delta == 5 {
            base.max(q(5, 9) * qi(n))
        } else {
            base
        }
    }

    /// Bound for connected graphs that are not special.
    pub fn nonspecial_bound(&self, n: usize) -> Q {
        if self.delta == 5 {
            q(5, 9) * qi(n)
        } else {
            (Q::one() - self.t_special) * qi(n)
        }
    }

    /// `(1 - t)|V| + t·n_special`.
    pub fn component_bound(&self, n: usize, n_special: usize) -> Q {
        (Q::one() - self.t) * qi(n) + self.t * qi(n_special)
    }

    /// `⌊Δ²/4⌋/Δ`, the selection threshold for the neighborhood-removal step.
    pub fn selection_threshold(&self) -> Q {
        let d = self.delta as i64;
        q(d * d / 4, d)
    }
}

/// `(1 - Δ/⌊(Δ+2)²/4⌋)·n` for graphs without isolated vertices.
pub fn corollary_bound(delta: usize, n: usize) -> Q {
    let d = delta as i64;
    (Q::one() - q(d, (d + 2) * (d + 2) / 4)) * qi(n)
}

/// `⌊(Δ+2)²/4⌋`, the order of the two extremal H-graphs.
pub fn corollary_order(delta: usize) -> usize {
    (delta + 2) * (delta + 2) / 4
}
