//! Adaptive Dormand-Prince 5(4) integration of `y' = f(t, y)` on complex
//! state vectors, with dense output only at the requested times.

use num_complex::Complex64;

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug)]
pub struct OdeOptions {
    pub rtol: f64,
    pub atol: f64,
    pub max_steps: usize,
}

impl Default for OdeOptions {
    fn default() -> Self {
        OdeOptions {
            rtol: 1e-10,
            atol: 1e-12,
            max_steps: 1_000_000,
        }
    }
}

const C: [f64; 7] = [0.0, 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const A: [[f64; 6]; 7] = [
    [0.0; 6],
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0, 0.0, 0.0],
    [9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0, 0.0],
    [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0],
];
/// Fifth-order weights (equal to the last row of `A`).
const B5: [f64; 7] = [35.0 / 384.0, 0.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0, 0.0];
const B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

/// Integrate from `t_out[0]` with `y(t_out[0]) = y0`, returning the state at
/// every time in `t_out` (which must be increasing). `f` may fail, which
/// aborts the integration.
pub fn integrate<F>(f: F, y0: &[Complex64], t_out: &[f64], opts: OdeOptions) -> Result<Vec<Vec<Complex64>>>
where
    F: Fn(f64, &[Complex64]) -> Result<Vec<Complex64>>,
{
    let Some(&t0) = t_out.first() else {
        return Ok(Vec::new());
    };
    let n = y0.len();
    let mut out = vec![y0.to_vec()];
    let mut t = t0;
    let mut y = y0.to_vec();
    let span = t_out.last().map_or(0.0, |&tl| tl - t0);
    let mut h = (span / 100.0).max(1e-6).min(span.max(1e-6));
    let mut k = vec![vec![Complex64::default(); n]; 7];
    let mut steps = 0usize;
    k[0] = f(t, &y)?;
    for &target in &t_out[1..] {
        while t < target {
            steps += 1;
            if steps > opts.max_steps {
                return Err(Error::StepFailure { t });
            }
            let last = t + h >= target;
            let step = if last { target - t } else { h };
            let mut stage = vec![Complex64::default(); n];
            for s in 1..7 {
                for i in 0..n {
                    let mut acc = y[i];
                    for (j, kj) in k.iter().enumerate().take(s) {
                        acc += kj[i] * (A[s][j] * step);
                    }
                    stage[i] = acc;
                }
                k[s] = f(t + C[s] * step, &stage)?;
            }
            // stage now holds the fifth-order solution (FSAL row)
            let mut err = 0.0f64;
            for i in 0..n {
                let mut e = Complex64::default();
                for s in 0..7 {
                    e += k[s][i] * ((B5[s] - B4[s]) * step);
                }
                let scale = opts.atol + opts.rtol * y[i].norm().max(stage[i].norm());
                err = err.max(e.norm() / scale);
            }
            if !err.is_finite() {
                return Err(Error::StepFailure { t });
            }
            if err <= 1.0 {
                t = if last { target } else { t + step };
                y = stage;
                k[0] = k[6].clone();
            }
            let factor = if err == 0.0 { 5.0 } else { (0.9 * err.powf(-0.2)).clamp(0.2, 5.0) };
            let proposed = step * factor;
            if err > 1.0 || !last {
                h = proposed;
            } else {
                h = h.max(proposed);
            }
            if h < 1e-14 * t.abs().max(1.0) {
                return Err(Error::StepFailure { t });
            }
        }
        out.push(y.clone());
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exponential_and_oscillator() {
        let ts: Vec<f64> = (0..=10).map(|i| i as f64 * 0.1).collect();
        let one = [Complex64::new(1.0, 0.0)];
        let y = integrate(|_, y| Ok(vec![y[0]]), &one, &ts, OdeOptions::default()).unwrap();
        for (t, v) in ts.iter().zip(&y) {
            assert!((v[0].re - t.exp()).abs() < 1e-9);
        }
        let i = Complex64::new(0.0, 1.0);
        let y = integrate(|_, y| Ok(vec![i * y[0]]), &one, &ts, OdeOptions::default()).unwrap();
        for (t, v) in ts.iter().zip(&y) {
            assert!((v[0] - Complex64::from_polar(1.0, *t)).norm() < 1e-9);
        }
    }

    #[test]
    fn blow_up_fails_cleanly() {
        // y' = y^2 from y(0) = 1 blows up at t = 1
        let one = [Complex64::new(1.0, 0.0)];
        let r = integrate(|_, y| Ok(vec![y[0] * y[0]]), &one, &[0.0, 2.0], OdeOptions::default());
        assert!(matches!(r, Err(Error::StepFailure { .. })));
    }
}
