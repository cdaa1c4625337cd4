//! Damped Gauss-Newton (Levenberg-Marquardt) for small dense problems.

use nalgebra::{DMatrix, DVector};

pub trait Problem {
    fn n_params(&self) -> usize;
    fn residuals(&self, x: &[f64], out: &mut Vec<f64>);

    /// Jacobian of the residuals; forward differences unless overridden.
    fn jacobian(&self, x: &[f64], r: &[f64], jac: &mut DMatrix<f64>) {
        let n = x.len();
        let mut xp = x.to_vec();
        let mut rp = Vec::with_capacity(r.len());
        *jac = DMatrix::zeros(r.len(), n);
        for j in 0..n {
            let h = 1e-8 * x[j].abs().max(1.0);
            xp[j] = x[j] + h;
            self.residuals(&xp, &mut rp);
            for i in 0..r.len() {
                jac[(i, j)] = (rp[i] - r[i]) / h;
            }
            xp[j] = x[j];
        }
    }
}

#[derive(Clone, Debug)]
pub struct LmOptions {
    pub max_iter: usize,
    /// Stop once the largest residual falls below this.
    pub target: f64,
}

impl Default for LmOptions {
    fn default() -> Self {
        LmOptions {
            max_iter: 200,
            target: 1e-13,
        }
    }
}

#[derive(Clone, Debug)]
pub struct LmResult {
    pub x: Vec<f64>,
    pub max_residual: f64,
    pub iterations: usize,
}

fn max_abs(r: &[f64]) -> f64 {
    r.iter().fold(0.0, |m, v| m.max(v.abs()))
}

pub fn levenberg_marquardt<P: Problem>(p: &P, x0: &[f64], opts: &LmOptions) -> LmResult {
    let mut x = x0.to_vec();
    let mut r = Vec::new();
    p.residuals(&x, &mut r);
    let mut cost: f64 = r.iter().map(|v| v * v).sum();
    let mut lambda = 1e-3;
    let mut jac = DMatrix::zeros(0, 0);
    let mut trial = Vec::new();
    let mut it = 0;
    while it < opts.max_iter && max_abs(&r) > opts.target {
        it += 1;
        p.jacobian(&x, &r, &mut jac);
        let jt = jac.transpose();
        let jtj = &jt * &jac;
        let g = &jt * DVector::from_column_slice(&r);
        let mut improved = false;
        for _ in 0..12 {
            let mut a = jtj.clone();
            for i in 0..a.nrows() {
                a[(i, i)] += lambda * (jtj[(i, i)] + 1e-12);
            }
            let Some(step) = a.cholesky().map(|c| c.solve(&(-&g))) else {
                lambda *= 10.0;
                continue;
            };
            let xt: Vec<f64> = x.iter().zip(step.iter()).map(|(a, b)| a + b).collect();
            p.residuals(&xt, &mut trial);
            let c: f64 = trial.iter().map(|v| v * v).sum();
            if c < cost {
                x = xt;
                std::mem::swap(&mut r, &mut trial);
                let rel = (cost - c) / cost.max(1e-300);
                cost = c;
                lambda = (lambda / 10.0).max(1e-12);
                improved = rel > 1e-14 || max_abs(&r) <= opts.target;
                break;
            }
            lambda *= 10.0;
        }
        if !improved {
            break;
        }
    }
    LmResult {
        max_residual: max_abs(&r),
        x,
        iterations: it,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    struct Rosen;
    impl Problem for Rosen {
        fn n_params(&self) -> usize {
            2
        }
        fn residuals(&self, x: &[f64], out: &mut Vec<f64>) {
            out.clear();
            out.push(10.0 * (x[1] - x[0] * x[0]));
            out.push(1.0 - x[0]);
        }
    }

    #[test]
    fn rosenbrock() {
        let r = levenberg_marquardt(&Rosen, &[-1.2, 1.0], &LmOptions::default());
        assert!(r.max_residual < 1e-10);
        assert!((r.x[0] - 1.0).abs() < 1e-8 && (r.x[1] - 1.0).abs() < 1e-8);
    }
}
