//! Roots of unity, integer-relation recognition of cyclotomic numbers and
//! the Galois action on them.

use crate::abelian::{reduce_mod, Q};
use crate::error::{Error, Result};
use crate::quadratic::{squarefree_part, QuadIrr};
use num_complex::Complex64;
use num_integer::Integer;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// `exp(2πi k/n)`.
pub fn zeta(n: i64, k: i64) -> Complex64 {
    let x = 2.0 * PI * (k.rem_euclid(n) as f64) / n as f64;
    Complex64::new(x.cos(), x.sin())
}

/// Phase of `z` in turns, in `[0,1)`.
pub fn turns_of(z: Complex64) -> f64 {
    let t = z.arg() / (2.0 * PI);
    if t < 0.0 {
        t + 1.0
    } else {
        t
    }
}

/// Smallest-order root of unity `exp(2πi t)` within `tol` radians of the phase of `z`.
pub fn snap_root(z: Complex64, max_order: i64, tol: f64) -> Option<Q> {
    let t = turns_of(z);
    for n in 1..=max_order {
        let k = (t * n as f64).round();
        if (t - k / n as f64).abs() * 2.0 * PI < tol {
            return Some(reduce_mod(Q::new(k as i64, n), 1));
        }
    }
    None
}

/// Geodesic distance between two phases (radians).
pub fn phase_dist(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(2.0 * PI);
    d.min(2.0 * PI - d)
}

pub fn euler_phi(n: i64) -> i64 {
    (1..=n).filter(|k| k.gcd(&n) == 1).count() as i64
}

/// Lenstra-Lenstra-Lovász reduction of the rows of `b` (δ = 0.99).
pub fn lll(b: &mut [Vec<f64>]) {
    let m = b.len();
    if m < 2 {
        return;
    }
    let dot = |x: &[f64], y: &[f64]| x.iter().zip(y).map(|(a, b)| a * b).sum::<f64>();
    let gso = |b: &[Vec<f64>]| {
        let mut bs: Vec<Vec<f64>> = Vec::with_capacity(m);
        let mut mu = vec![vec![0.0; m]; m];
        let mut nrm = vec![0.0; m];
        for i in 0..m {
            let mut v = b[i].clone();
            for j in 0..i {
                mu[i][j] = dot(&b[i], &bs[j]) / nrm[j];
                for (vk, bk) in v.iter_mut().zip(&bs[j]) {
                    *vk -= mu[i][j] * bk;
                }
            }
            nrm[i] = dot(&v, &v).max(1e-300);
            bs.push(v);
        }
        (mu, nrm)
    };
    let (mut mu, mut nrm) = gso(b);
    let mut k = 1;
    let mut guard = 0;
    while k < m && guard < 100_000 {
        guard += 1;
        for j in (0..k).rev() {
            let q = mu[k][j].round();
            if q != 0.0 {
                let bj = b[j].clone();
                for (x, y) in b[k].iter_mut().zip(&bj) {
                    *x -= q * y;
                }
                for l in 0..=j {
                    mu[k][l] -= q * if l == j { 1.0 } else { mu[j][l] };
                }
            }
        }
        if nrm[k] >= (0.99 - mu[k][k - 1] * mu[k][k - 1]) * nrm[k - 1] {
            k += 1;
        } else {
            b.swap(k, k - 1);
            let (m2, n2) = gso(b);
            mu = m2;
            nrm = n2;
            k = (k - 1).max(1);
        }
    }
}

/// Find integers `c` (last entry nonzero) with `Σ c_i v_i ≈ 0` for the given
/// real vectors, coefficients bounded by `bound`.
pub fn integer_relation(vecs: &[Vec<f64>], scale: f64, bound: i64) -> Option<Vec<i64>> {
    let m = vecs.len();
    let c = vecs[0].len();
    let mut rows: Vec<Vec<f64>> = (0..m)
        .map(|i| {
            let mut r = vec![0.0; m + c];
            r[i] = 1.0;
            for k in 0..c {
                r[m + k] = scale * vecs[i][k];
            }
            r
        })
        .collect();
    lll(&mut rows);
    let mut best: Option<(f64, Vec<i64>)> = None;
    for r in &rows {
        let coeffs: Vec<i64> = r[..m].iter().map(|x| x.round() as i64).collect();
        if coeffs[m - 1] == 0 || coeffs.iter().any(|x| x.abs() > bound) {
            continue;
        }
        let resid: f64 = (0..c)
            .map(|k| {
                (0..m)
                    .map(|i| coeffs[i] as f64 * vecs[i][k])
                    .sum::<f64>()
                    .abs()
            })
            .fold(0.0, f64::max);
        let norm: f64 = coeffs.iter().map(|x| (x * x) as f64).sum();
        if best.as_ref().is_none_or(|(n, _)| norm < *n) && resid * scale < 1.0 {
            best = Some((norm, coeffs));
        }
    }
    best.map(|(_, mut c)| {
        if c[m - 1] > 0 {
            for x in c.iter_mut() {
                *x = -*x;
            }
        }
        c
    })
}

/// A number `Σ_j coeffs[j] ζ_N^j / den` with its float shadow.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExactValue {
    pub conductor: i64,
    pub coeffs: Vec<i64>,
    pub den: i64,
    pub value: Complex64,
}

impl ExactValue {
    pub fn eval(&self) -> Complex64 {
        self.galois(1)
    }

    /// Image under `ζ_N ↦ ζ_N^k`.
    pub fn galois(&self, k: i64) -> Complex64 {
        let n = self.conductor;
        let s: Complex64 = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(j, &c)| zeta(n, j as i64 * k) * c as f64)
            .sum();
        s / self.den as f64
    }
}

/// Recognize `z` as an element of `Q(ζ_N)` with coefficients bounded by `bound`.
pub fn exactify(z: Complex64, n: i64, bound: i64) -> Result<ExactValue> {
    let n = n.max(1);
    let phi = euler_phi(n);
    let tol = 1e-8 * z.norm().max(1.0);
    let scale = 1e9 / z.norm().max(1.0);
    let accept = |coeffs: Vec<i64>, den: i64| -> Option<ExactValue> {
        let v = ExactValue {
            conductor: n,
            coeffs,
            den,
            value: z,
        };
        ((v.eval() - z).norm() <= tol).then_some(v)
    };
    if z.norm() < tol {
        return Ok(ExactValue {
            conductor: n,
            coeffs: vec![0; n as usize],
            den: 1,
            value: z,
        });
    }
    if z.im.abs() <= tol {
        // real subfield basis 1, 2cos(2πj/N)
        let rdim = (phi / 2).max(1);
        let mut vecs: Vec<Vec<f64>> = vec![vec![1.0]];
        for j in 1..rdim {
            vecs.push(vec![2.0 * (2.0 * PI * j as f64 / n as f64).cos()]);
        }
        vecs.push(vec![z.re]);
        if let Some(c) = integer_relation(&vecs, scale, bound) {
            let den = -c[rdim as usize];
            let mut coeffs = vec![0i64; n as usize];
            coeffs[0] += c[0];
            for j in 1..rdim as usize {
                coeffs[j] += c[j];
                coeffs[(n as usize - j) % n as usize] += c[j];
            }
            if let Some(v) = accept(coeffs, den) {
                return Ok(v);
            }
        }
    }
    let mut vecs: Vec<Vec<f64>> = (0..phi)
        .map(|j| {
            let w = zeta(n, j);
            vec![w.re, w.im]
        })
        .collect();
    vecs.push(vec![z.re, z.im]);
    if let Some(c) = integer_relation(&vecs, scale, bound) {
        let den = -c[phi as usize];
        let mut coeffs = vec![0i64; n as usize];
        coeffs[..phi as usize].copy_from_slice(&c[..phi as usize]);
        if let Some(v) = accept(coeffs, den) {
            return Ok(v);
        }
    }
    Err(Error::Infeasible(format!(
        "no cyclotomic fit of {z} in conductor {n} with bound {bound}"
    )))
}

/// Recognize a real number as `p + q√m` with `m ≤ max_m` square-free.
pub fn recognize_quadratic(x: f64, max_m: i64) -> Option<QuadIrr> {
    let scale = 1e9 / x.abs().max(1.0);
    let try_with = |m: i64| -> Option<QuadIrr> {
        let vecs = if m == 1 {
            vec![vec![1.0], vec![x]]
        } else {
            vec![vec![1.0], vec![(m as f64).sqrt()], vec![x]]
        };
        let c = integer_relation(&vecs, scale, 100_000)?;
        let den = -*c.last().unwrap();
        let v = if m == 1 {
            QuadIrr::rational(Q::new(c[0], den))
        } else {
            QuadIrr::new(Q::new(c[0], den), Q::new(c[1], den), m)
        };
        ((v.to_f64() - x).abs() < 1e-8 * x.abs().max(1.0)).then_some(v)
    };
    if let Some(v) = try_with(1) {
        return Some(v);
    }
    (2..=max_m)
        .filter(|&m| squarefree_part(m).0 == 1)
        .find_map(try_with)
}
