//! Rössler system integration and threshold-crossing detection.

use crate::error::{Error, Result};
use crate::spectral;

/// Coordinates beyond this magnitude count as divergence.
const DIVERGENCE_BOUND: f64 = 1e6;

/// Rössler parameters plus the crossing threshold on x.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RosslerParams {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub threshold_x: f64,
}

impl Default for RosslerParams {
    fn default() -> Self {
        Self {
            a: 0.15,
            b: 0.20,
            c: 10.0,
            threshold_x: 7.0,
        }
    }
}

/// Fixed-step integration settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IntegrationSettings {
    pub initial: [f64; 3],
    pub dt: f64,
    pub t_end: f64,
    pub transient: f64,
}

impl Default for IntegrationSettings {
    fn default() -> Self {
        Self {
            initial: [1.0, 1.0, 1.0],
            dt: 0.01,
            t_end: 5200.0,
            transient: 200.0,
        }
    }
}

/// A trajectory sampled on a uniform time grid.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    t: Vec<f64>,
    x: Vec<f64>,
    y: Vec<f64>,
    z: Vec<f64>,
    dt: f64,
}

impl Trajectory {
    /// Builds a trajectory from components, validating lengths and finiteness.
    pub fn from_components(
        t: Vec<f64>,
        x: Vec<f64>,
        y: Vec<f64>,
        z: Vec<f64>,
        dt: f64,
    ) -> Result<Self> {
        if t.len() != x.len() || t.len() != y.len() || t.len() != z.len() {
            return Err(Error::InvalidParameter(
                "trajectory components must have equal lengths".into(),
            ));
        }
        if !dt.is_finite() || dt <= 0.0 {
            return Err(Error::InvalidParameter("dt must be > 0".into()));
        }
        if x.iter().chain(&y).chain(&z).any(|v| !v.is_finite()) {
            return Err(Error::Domain(
                "trajectory contains non-finite values".into(),
            ));
        }
        Ok(Self { t, x, y, z, dt })
    }

    pub fn t(&self) -> &[f64] {
        &self.t
    }

    pub fn x(&self) -> &[f64] {
        &self.x
    }

    pub fn y(&self) -> &[f64] {
        &self.y
    }

    pub fn z(&self) -> &[f64] {
        &self.z
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }

    pub fn time_span(&self) -> f64 {
        match (self.t.first(), self.t.last()) {
            (Some(a), Some(b)) => b - a,
            _ => 0.0,
        }
    }
}

/// Right-hand side of the Rössler system.
pub fn rossler_derivative(state: [f64; 3], params: &RosslerParams) -> [f64; 3] {
    let [x, y, z] = state;
    [-(y + z), x + params.a * y, params.b + x * z - params.c * z]
}

/// One classical fourth-order Runge-Kutta step.
pub fn rk4_step<F>(f: &F, t: f64, state: [f64; 3], dt: f64) -> [f64; 3]
where
    F: Fn(f64, [f64; 3]) -> [f64; 3],
{
    let add =
        |s: [f64; 3], k: [f64; 3], h: f64| [s[0] + h * k[0], s[1] + h * k[1], s[2] + h * k[2]];
    let k1 = f(t, state);
    let k2 = f(t + dt / 2.0, add(state, k1, dt / 2.0));
    let k3 = f(t + dt / 2.0, add(state, k2, dt / 2.0));
    let k4 = f(t + dt, add(state, k3, dt));
    [
        state[0] + dt / 6.0 * (k1[0] + 2.0 * k2[0] + 2.0 * k3[0] + k4[0]),
        state[1] + dt / 6.0 * (k1[1] + 2.0 * k2[1] + 2.0 * k3[1] + k4[1]),
        state[2] + dt / 6.0 * (k1[2] + 2.0 * k2[2] + 2.0 * k3[2] + k4[2]),
    ]
}

/// Integrates the Rössler system with fixed-step RK4, discarding the
/// transient; the returned grid starts at t = transient.
pub fn integrate(params: &RosslerParams, settings: &IntegrationSettings) -> Result<Trajectory> {
    let IntegrationSettings {
        initial,
        dt,
        t_end,
        transient,
    } = *settings;
    if !dt.is_finite() || dt <= 0.0 {
        return Err(Error::InvalidParameter("dt must be > 0".into()));
    }
    if transient < 0.0 {
        return Err(Error::InvalidParameter("transient must be >= 0".into()));
    }
    if t_end <= transient {
        return Err(Error::DegenerateHorizon {
            start: transient,
            end: t_end,
        });
    }

    let f = |t: f64, s: [f64; 3]| {
        let _ = t;
        rossler_derivative(s, params)
    };
    let total_steps = (t_end / dt).round() as usize;
    // First recorded index: smallest i with i*dt >= transient (fp-tolerant).
    let first = ((transient / dt) - 1e-9).ceil() as usize;
    if first >= total_steps {
        return Err(Error::DegenerateHorizon {
            start: transient,
            end: t_end,
        });
    }

    let mut state = initial;
    let mut t_vec = Vec::with_capacity(total_steps - first + 1);
    let mut x = Vec::with_capacity(t_vec.capacity());
    let mut y = Vec::with_capacity(t_vec.capacity());
    let mut z = Vec::with_capacity(t_vec.capacity());
    for i in 0..=total_steps {
        let t = i as f64 * dt;
        if state
            .iter()
            .any(|v| !v.is_finite() || v.abs() > DIVERGENCE_BOUND)
        {
            return Err(Error::Divergence { t });
        }
        if i >= first {
            t_vec.push(t);
            x.push(state[0]);
            y.push(state[1]);
            z.push(state[2]);
        }
        if i < total_steps {
            state = rk4_step(&f, t, state, dt);
        }
    }
    Trajectory::from_components(t_vec, x, y, z, dt)
}

/// Linearly interpolated times where x passes `threshold` from below
/// (x_i < threshold <= x_{i+1}).
pub fn upward_crossings(traj: &Trajectory, threshold: f64) -> Vec<f64> {
    let mut out = Vec::new();
    for i in 0..traj.len().saturating_sub(1) {
        let (a, b) = (traj.x[i], traj.x[i + 1]);
        if a < threshold && threshold <= b {
            let frac = (threshold - a) / (b - a);
            out.push(traj.t[i] + frac * traj.dt);
        }
    }
    out
}

/// Fundamental period of x(t): inverse frequency of the dominant spectral
/// peak of the mean-removed, windowed series (zero bin excluded).
///
/// The series is truncated to the largest power-of-two sample count so the
/// transform stays cheap on long runs.
pub fn fundamental_period(traj: &Trajectory) -> Result<f64> {
    if traj.is_empty() {
        return Err(Error::NoPeak);
    }
    let n = traj.x.len();
    let pow2 = 1usize << (usize::BITS - 1 - n.leading_zeros());
    spectral::dominant_period(&traj.x[..pow2], traj.dt)
}
