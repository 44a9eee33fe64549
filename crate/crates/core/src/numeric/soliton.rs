//! Bosonic desk-scale checks: the half-line soliton generated by the spatial
//! transformation, and momentum conservation under the bosonic t3 flow.

use std::f64::consts::PI;

use num_complex::Complex;
use rustfft::FftPlanner;
use serde::{Deserialize, Serialize};

use crate::atom::{Atom, Field};
use crate::backlund::T3_PHIM_BOSONIC;
use crate::formula::ex;

use super::{EvalAssignment, ExteriorValue, NumericError, Result};

/// Weights of the `m`-th derivative at `x0` on the nodes `xs`.
pub fn fd_weights(x0: f64, xs: &[f64], m: usize) -> Vec<f64> {
    let n = xs.len();
    let mut c = vec![vec![0.0; m + 1]; n];
    c[0][0] = 1.0;
    let mut c1 = 1.0;
    let mut c4 = xs[0] - x0;
    for i in 1..n {
        let mn = i.min(m);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = xs[i] - x0;
        for j in 0..i {
            let c3 = xs[i] - xs[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[i][k] = c1 * (k as f64 * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                }
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for k in (1..=mn).rev() {
                c[j][k] = (c4 * c[j][k] - k as f64 * c[j][k - 1]) / c3;
            }
            c[j][0] *= c4 / c3;
        }
        c1 = c2;
    }
    c.into_iter().map(|row| row[m]).collect()
}

/// Centred stencil on `2 half + 1` points of spacing `h`.
#[derive(Clone, Debug)]
pub struct Stencil {
    pub half: usize,
    pub order: usize,
    weights: Vec<f64>,
}

impl Stencil {
    pub fn central(order: usize, half: usize, h: f64) -> Stencil {
        let xs: Vec<f64> = (0..=2 * half).map(|k| (k as f64 - half as f64) * h).collect();
        Stencil { half, order, weights: fd_weights(0.0, &xs, order) }
    }

    /// Nominal accuracy of a centred stencil: `2 half + 2 - 2 ceil(order / 2)`.
    pub fn accuracy(&self) -> usize {
        2 * self.half + 2 - 2 * self.order.div_ceil(2)
    }

    /// Derivative at `samples[i]`; needs `half` points on each side.
    pub fn apply(&self, samples: &[f64], i: usize) -> f64 {
        self.apply_strided(samples, i, 1)
    }

    /// Same, using every `stride`-th sample.
    pub fn apply_strided(&self, samples: &[f64], i: usize, stride: usize) -> f64 {
        let first = i - self.half * stride;
        self.weights.iter().enumerate().map(|(k, w)| w * samples[first + k * stride]).sum()
    }

    pub fn at(&self, f: impl Fn(f64) -> f64, x: f64, h: f64) -> f64 {
        self.weights.iter().enumerate().map(|(k, w)| w * f(x + (k as f64 - self.half as f64) * h)).sum()
    }
}

/// Observed order `log2(err(h) / err(h/2))` of a stencil on `f` with exact derivative `df`.
pub fn observed_order(order: usize, half: usize, f: impl Fn(f64) -> f64, df: f64, x: f64, h: f64) -> f64 {
    let err = |h: f64| (Stencil::central(order, half, h).at(&f, x, h) - df).abs();
    (err(h) / err(h / 2.0)).log2()
}

/// Uniform grid on `[start, end]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub start: f64,
    pub end: f64,
    pub points: usize,
}

impl Grid {
    pub fn spacing(&self) -> f64 {
        (self.end - self.start) / (self.points - 1) as f64
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        let h = self.spacing();
        (0..self.points).map(move |k| self.start + k as f64 * h)
    }
}

/// Half-line soliton of `phi' = (4/w^2) sinh(phi)` moving with the t3 flow,
/// normalised so that `phi(0, 0) = 1/2`.
#[derive(Clone, Copy, Debug)]
pub struct Soliton {
    pub omega: f64,
}

impl Soliton {
    pub fn rate(&self) -> f64 {
        4.0 / (self.omega * self.omega)
    }

    pub fn value(&self, x: f64, t: f64) -> f64 {
        let k = self.rate();
        let x0 = -(0.25f64.tanh().ln()) / k;
        let xi = x + k * k * t / 4.0;
        2.0 * (k * (xi - x0)).exp().atanh()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BtResidual {
    /// `max |d_x phim - (4/w^2) sinh(phip)|`.
    pub spatial: f64,
    /// `max |4 d_t3 phim - T(phip)|` for the bosonic t3 transformation `T`.
    pub temporal: f64,
}

const HALF: usize = 5;

/// Residuals of the bosonic transformation for `phi1 = profile`, `phi2 = 0`,
/// with derivatives from finite differences.
pub fn bt_residual_for(profile: impl Fn(f64, f64) -> f64, omega: f64, grid: Grid, t_samples: &[f64]) -> Result<BtResidual> {
    let h = grid.spacing();
    let ht = 2e-3;
    let d: Vec<Stencil> = (1..=3).map(|m| Stencil::central(m, HALF, h)).collect();
    let coarse = Stencil::central(1, HALF, 2.0 * h);
    let dt = Stencil::central(1, HALF, ht);
    let target = ex(T3_PHIM_BOSONIC);
    let xs: Vec<f64> = grid.nodes().collect();
    let mut res = BtResidual { spatial: 0.0, temporal: 0.0 };
    for &t in t_samples {
        let phi: Vec<f64> = xs.iter().map(|&x| profile(x, t)).collect();
        for i in 2 * HALF..xs.len() - 2 * HALF {
            let jets: Vec<f64> = d.iter().map(|s| s.apply(&phi, i)).collect();
            let estimate = (coarse.apply_strided(&phi, i, 2) - jets[0]).abs();
            if estimate > 1e-7 {
                return Err(NumericError::GridTooCoarse(estimate));
            }
            res.spatial = res.spatial.max((jets[0] - 4.0 / (omega * omega) * phi[i].sinh()).abs());
            let mut asg = EvalAssignment::<f64>::random(0, 0);
            asg.omega = omega;
            asg.set(Atom::jet(Field::PhiP, 0), ExteriorValue::real(0, phi[i]));
            for (k, v) in jets.iter().enumerate() {
                asg.set(Atom::jet(Field::PhiP, k as u8 + 1), ExteriorValue::real(0, *v));
            }
            let rhs = asg.eval(&target)?.body().re;
            let phim_t = dt.at(|s| profile(xs[i], s), t, ht);
            res.temporal = res.temporal.max((4.0 * phim_t - rhs).abs());
        }
    }
    Ok(res)
}

/// [`bt_residual_for`] with the soliton of parameter `omega`.
pub fn soliton_bt_residual(omega: f64, grid: Grid, t_samples: &[f64]) -> Result<BtResidual> {
    let s = Soliton { omega };
    bt_residual_for(|x, t| s.value(x, t), omega, grid, t_samples)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Drift {
    pub initial: f64,
    pub max_relative: f64,
}

/// Evolves `u = phi_x` under `u_t = u_xxx/4 - 3/2 u^2 u_x` on a periodic box
/// with a pseudo-spectral integrating-factor RK4 scheme and tracks the
/// discrete momentum `sum u^2 dx`.
pub fn momentum_drift(u0: impl Fn(f64) -> f64, length: f64, points: usize, dt: f64, steps: usize) -> Drift {
    let mut planner = FftPlanner::<f64>::new();
    let fwd = planner.plan_fft_forward(points);
    let inv = planner.plan_fft_inverse(points);
    let dx = length / points as f64;
    let wave: Vec<f64> = (0..points)
        .map(|j| {
            let j = if j <= points / 2 { j as f64 } else { j as f64 - points as f64 };
            2.0 * PI * j / length
        })
        .collect();
    let cutoff = 2.0 * PI * (points as f64 / 3.0) / length;
    let lin: Vec<Complex<f64>> = wave.iter().map(|k| Complex::new(0.0, -k * k * k / 4.0)).collect();
    let norm = 1.0 / points as f64;
    let to_real = |spec: &[Complex<f64>]| -> Vec<f64> {
        let mut b = spec.to_vec();
        inv.process(&mut b);
        b.iter().map(|c| c.re * norm).collect()
    };
    let to_spec = |real: &[f64]| -> Vec<Complex<f64>> {
        let mut b: Vec<Complex<f64>> = real.iter().map(|r| Complex::new(*r, 0.0)).collect();
        fwd.process(&mut b);
        b
    };
    let nonlinear = |spec: &[Complex<f64>]| -> Vec<Complex<f64>> {
        let u = to_real(spec);
        let cube: Vec<f64> = u.iter().map(|v| v * v * v).collect();
        to_spec(&cube)
            .iter()
            .zip(&wave)
            .map(|(c, k)| if k.abs() < cutoff { c * Complex::new(0.0, -0.5 * k) } else { Complex::new(0.0, 0.0) })
            .collect()
    };
    let momentum = |spec: &[Complex<f64>]| to_real(spec).iter().map(|v| v * v).sum::<f64>() * dx;
    let xs: Vec<f64> = (0..points).map(|j| -length / 2.0 + j as f64 * dx).collect();
    let mut u = to_spec(&xs.iter().map(|&x| u0(x)).collect::<Vec<_>>());
    let initial = momentum(&u);
    let half: Vec<Complex<f64>> = lin.iter().map(|l| (l * dt / 2.0).exp()).collect();
    let mut max_relative: f64 = 0.0;
    let axpy = |a: &[Complex<f64>], b: &[Complex<f64>], s: f64| -> Vec<Complex<f64>> {
        a.iter().zip(b).map(|(x, y)| x + y * s).collect()
    };
    let mulv = |a: &[Complex<f64>], b: &[Complex<f64>]| -> Vec<Complex<f64>> { a.iter().zip(b).map(|(x, y)| x * y).collect() };
    for _ in 0..steps {
        let k1 = nonlinear(&u);
        let uh = mulv(&u, &half);
        let k2 = nonlinear(&axpy(&uh, &mulv(&k1, &half), dt / 2.0));
        let k3 = nonlinear(&axpy(&uh, &k2, dt / 2.0));
        let k4 = nonlinear(&axpy(&mulv(&uh, &half), &mulv(&k3, &half), dt));
        let full = mulv(&uh, &half);
        let mid: Vec<Complex<f64>> = k2.iter().zip(&k3).map(|(a, b)| a + b).collect();
        u = full
            .iter()
            .zip(mulv(&mulv(&k1, &half), &half))
            .zip(mulv(&mid, &half))
            .zip(&k4)
            .map(|(((f, a), m), d)| f + (a + m * 2.0 + d) * (dt / 6.0))
            .collect();
        max_relative = max_relative.max(((momentum(&u) - initial) / initial).abs());
    }
    Drift { initial, max_relative }
}
