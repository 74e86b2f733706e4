//! The scaling function b(t) and its first two time derivatives.

use alloc::vec::Vec;

#[cfg(not(feature = "std"))]
use num_traits::Float;

use crate::bangbang::BangBangPlan;
use crate::error::{Error, Result};

/// Number of uniform intervals on which positivity of b is checked.
pub const VALIDATION_INTERVALS: usize = 10_000;

/// b, ḃ and b̈ at one instant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Kinematics {
    pub b: f64,
    pub bdot: f64,
    pub bddot: f64,
}

/// Value, first and second derivative of `sum coeffs[j] * s^j`.
pub(crate) fn horner3(coeffs: &[f64], s: f64) -> [f64; 3] {
    let (mut p, mut dp, mut ddp) = (0.0, 0.0, 0.0);
    for &c in coeffs.iter().rev() {
        ddp = ddp * s + 2.0 * dp;
        dp = dp * s + p;
        p = p * s + c;
    }
    [p, dp, ddp]
}

/// Polynomial in the reduced time `s = t / tf`, coefficients in powers of `s`.
#[derive(Debug, Clone, PartialEq)]
pub struct ScaledPolynomial {
    coeffs: Vec<f64>,
    tf: f64,
}

impl ScaledPolynomial {
    pub fn new(coeffs: Vec<f64>, tf: f64) -> Self {
        Self { coeffs, tf }
    }

    pub fn coeffs(&self) -> &[f64] {
        &self.coeffs
    }

    pub fn tf(&self) -> f64 {
        self.tf
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    /// p, dp/dt and d²p/dt² at physical time `t`.
    pub fn eval(&self, t: f64) -> [f64; 3] {
        let [p, dp, ddp] = horner3(&self.coeffs, t / self.tf);
        [p, dp / self.tf, ddp / (self.tf * self.tf)]
    }
}

/// Sample of an integrated trajectory. `bddot_left`/`bddot_right` differ only
/// where the driving frequency jumps.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Node {
    pub t: f64,
    pub b: f64,
    pub bdot: f64,
    pub bddot_left: f64,
    pub bddot_right: f64,
}

/// Tabulated b(t) with quintic Hermite interpolation between nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct NumericLaw {
    nodes: Vec<Node>,
}

impl NumericLaw {
    pub fn new(nodes: Vec<Node>) -> Result<Self> {
        if nodes.len() < 2 {
            return Err(Error::InvalidArgument("numeric scaling law needs at least two nodes"));
        }
        if nodes.windows(2).any(|w| !(w[1].t > w[0].t)) {
            return Err(Error::InvalidArgument("numeric time grid must be strictly increasing"));
        }
        Ok(Self { nodes })
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    fn eval(&self, t: f64) -> Kinematics {
        let n = &self.nodes;
        // interval [i, i+1] containing t, clamped to the table
        let i = match n.partition_point(|node| node.t <= t) {
            0 => 0,
            k if k >= n.len() => n.len() - 2,
            k => k - 1,
        };
        let (l, r) = (n[i], n[i + 1]);
        let h = r.t - l.t;
        let (v0, v1) = (h * l.bdot, h * r.bdot);
        let (a0, a1) = (h * h * l.bddot_right, h * h * r.bddot_left);
        let dp = r.b - l.b;
        let coeffs = [
            l.b,
            v0,
            0.5 * a0,
            10.0 * dp - 6.0 * v0 - 4.0 * v1 - 1.5 * a0 + 0.5 * a1,
            -15.0 * dp + 8.0 * v0 + 7.0 * v1 + 1.5 * a0 - a1,
            6.0 * dp - 3.0 * v0 - 3.0 * v1 - 0.5 * a0 + 0.5 * a1,
        ];
        let [b, db, ddb] = horner3(&coeffs, (t - l.t) / h);
        Kinematics { b, bdot: db / h, bddot: ddb / (h * h) }
    }
}

/// An evaluable scaling function on a finite time window.
#[derive(Debug, Clone, PartialEq)]
pub enum ScalingLaw {
    /// b(t) = p(t / tf).
    Polynomial(ScaledPolynomial),
    /// b(t) = exp(p(t / tf)).
    ExpPolynomial(ScaledPolynomial),
    /// Closed-form three-jump trajectory.
    BangBang(BangBangPlan),
    /// Output of the Ermakov integrator.
    Numeric(NumericLaw),
}

impl ScalingLaw {
    pub fn kinematics(&self, t: f64) -> Kinematics {
        match self {
            ScalingLaw::Polynomial(p) => {
                let [b, bdot, bddot] = p.eval(t);
                Kinematics { b, bdot, bddot }
            }
            ScalingLaw::ExpPolynomial(p) => {
                let [q, dq, ddq] = p.eval(t);
                let b = q.exp();
                Kinematics { b, bdot: b * dq, bddot: b * (ddq + dq * dq) }
            }
            ScalingLaw::BangBang(plan) => plan.kinematics(t),
            ScalingLaw::Numeric(law) => law.eval(t),
        }
    }

    pub fn b(&self, t: f64) -> f64 {
        self.kinematics(t).b
    }

    pub fn bdot(&self, t: f64) -> f64 {
        self.kinematics(t).bdot
    }

    pub fn bddot(&self, t: f64) -> f64 {
        self.kinematics(t).bddot
    }

    /// Start of the window on which the law is defined.
    pub fn start(&self) -> f64 {
        match self {
            ScalingLaw::Numeric(law) => law.nodes[0].t,
            _ => 0.0,
        }
    }

    /// End of the window, `tf` for designed laws.
    pub fn end(&self) -> f64 {
        match self {
            ScalingLaw::Polynomial(p) | ScalingLaw::ExpPolynomial(p) => p.tf,
            ScalingLaw::BangBang(plan) => plan.tf(),
            ScalingLaw::Numeric(law) => law.nodes[law.nodes.len() - 1].t,
        }
    }

    /// Checks b > 0 on the validation grid (uniform, endpoints included).
    pub fn validate(&self) -> Result<()> {
        let (a, z) = (self.start(), self.end());
        for i in 0..=VALIDATION_INTERVALS {
            let t = a + (z - a) * i as f64 / VALIDATION_INTERVALS as f64;
            let b = self.b(t);
            if !(b > 0.0 && b.is_finite()) {
                return Err(Error::PositivityViolated { t, b });
            }
        }
        Ok(())
    }

    /// Smallest b on the validation grid.
    pub fn min_b(&self) -> f64 {
        let (a, z) = (self.start(), self.end());
        (0..=VALIDATION_INTERVALS)
            .map(|i| self.b(a + (z - a) * i as f64 / VALIDATION_INTERVALS as f64))
            .fold(f64::INFINITY, f64::min)
    }
}
