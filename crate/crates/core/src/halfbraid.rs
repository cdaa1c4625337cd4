//! Half-braiding triples `(ξ, τ, ω)` labeling the `d`-dimensional simple
//! objects of the center.

use crate::abelian::{cis_turn, Group, GroupSpec, Q};
use crate::cyclo::{phase_dist, snap_root, turns_of};
use crate::error::Result;
use crate::lm::{levenberg_marquardt, LmOptions, Problem};
use crate::neargroup::{NearGroupData, SolverOptions};
use crate::tol;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HalfBraidingTriple {
    /// index of `τ` in the group enumeration
    pub tau: usize,
    pub omega: Complex64,
    /// `ω = exp(2πi omega_turns)` when snapped
    pub omega_turns: Option<Q>,
    pub xi: Vec<Complex64>,
}

impl HalfBraidingTriple {
    pub fn xi_phases(&self) -> Vec<f64> {
        self.xi.iter().map(|z| z.arg()).collect()
    }
}

pub fn expected_count(spec: &GroupSpec) -> usize {
    let n = spec.order();
    n * (n + 3) / 2
}

struct Ctx<'a> {
    g: Group,
    n: usize,
    b: &'a [Complex64],
    a: Vec<Complex64>,
    c: Complex64,
    d: f64,
}

impl<'a> Ctx<'a> {
    fn new(data: &'a NearGroupData) -> Self {
        Ctx {
            g: Group::new(&data.group),
            n: data.n(),
            b: &data.b,
            a: data.a.values(),
            c: data.c(),
            d: data.dim(),
        }
    }

    /// Residuals of the four triple equations; the symmetry relation is
    /// included only when `with_symmetry` is set.
    fn residuals(
        &self,
        tau: usize,
        omega: Complex64,
        xi: &[Complex64],
        with_symmetry: bool,
        out: &mut Vec<f64>,
    ) {
        out.clear();
        let (n, g, b) = (self.n, &self.g, self.b);
        let rn = (n as f64).sqrt();
        let c = self.c;
        let c2 = c * c;
        let c3 = c2 * c;
        let w2c3a = omega * omega * c3 * self.a[tau];
        let mut push = |z: Complex64| {
            out.push(z.re);
            out.push(z.im);
        };
        let s: Complex64 = xi.iter().sum();
        push(s - (w2c3a * rn - n as f64 / self.d));
        for x in 0..n {
            let mut s = Complex64::new(0.0, 0.0);
            for k in 0..n {
                s += b[g.add(x, k)] * xi[k];
            }
            push(c.conj() * s - (w2c3a * xi[g.add(x, tau)].conj() - rn / self.d));
        }
        if with_symmetry {
            let c4 = c2 * c2;
            for x in 0..n {
                let y = g.sub(tau, x);
                push(xi[y] - omega * c4 * self.a[x] * self.a[y] * xi[x].conj());
            }
        }
        let c2i = c2.conj();
        for x in 0..n {
            for y in x..n {
                let mut s = Complex64::new(0.0, 0.0);
                for k in 0..n {
                    s += xi[k] * b[g.sub(k, x)] * b[g.sub(k, y)];
                }
                let rhs =
                    c2i * b[g.sub(g.add(x, y), tau)] * xi[x] * xi[y] * self.a[g.sub(x, y)].conj()
                        - c2 / self.d;
                push(s - rhs);
            }
        }
    }
}

struct TauProblem<'a> {
    ctx: &'a Ctx<'a>,
    tau: usize,
    reps: Vec<usize>,
    fixed: Vec<usize>,
    signs: Vec<bool>,
}

impl TauProblem<'_> {
    fn unpack(&self, x: &[f64]) -> (Complex64, Vec<Complex64>) {
        let ctx = self.ctx;
        let omega = Complex64::from_polar(1.0, x[0]);
        let c2 = ctx.c * ctx.c;
        let c4 = c2 * c2;
        let mut xi = vec![Complex64::new(1.0, 0.0); ctx.n];
        for (k, &g) in self.reps.iter().enumerate() {
            let v = Complex64::from_polar(1.0, x[k + 1]);
            let h = ctx.g.sub(self.tau, g);
            xi[g] = v;
            xi[h] = omega * c4 * ctx.a[g] * ctx.a[h] * v.conj();
        }
        let half = Complex64::from_polar(1.0, x[0] / 2.0);
        for (&g, &s) in self.fixed.iter().zip(&self.signs) {
            let v = half * c2 * ctx.a[g];
            xi[g] = if s { -v } else { v };
        }
        (omega, xi)
    }
}

impl Problem for TauProblem<'_> {
    fn n_params(&self) -> usize {
        1 + self.reps.len()
    }
    fn residuals(&self, x: &[f64], out: &mut Vec<f64>) {
        let (omega, xi) = self.unpack(x);
        self.ctx.residuals(self.tau, omega, &xi, false, out);
    }
}

fn same_triple(s: &HalfBraidingTriple, t: &HalfBraidingTriple, tol: f64) -> bool {
    s.tau == t.tau
        && phase_dist(s.omega.arg(), t.omega.arg()) < tol
        && s.xi
            .iter()
            .zip(&t.xi)
            .all(|(a, b)| phase_dist(a.arg(), b.arg()) < tol)
}

fn search_tau(
    ctx: &Ctx,
    tau: usize,
    starts: usize,
    rng: &mut ChaCha8Rng,
    opts: &SolverOptions,
    found: &mut Vec<HalfBraidingTriple>,
) {
    let g = &ctx.g;
    let reps: Vec<usize> = (0..ctx.n).filter(|&x| x < g.sub(tau, x)).collect();
    let fixed: Vec<usize> = (0..ctx.n).filter(|&x| x == g.sub(tau, x)).collect();
    let lm = LmOptions {
        max_iter: opts.max_iterations,
        target: 1e-14,
    };
    for _ in 0..starts {
        let x0: Vec<f64> = (0..=reps.len()).map(|_| rng.gen_range(-PI..PI)).collect();
        let signs: Vec<bool> = fixed.iter().map(|_| rng.gen()).collect();
        let prob = TauProblem {
            ctx,
            tau,
            reps: reps.clone(),
            fixed: fixed.clone(),
            signs,
        };
        let res = levenberg_marquardt(&prob, &x0, &lm);
        if res.max_residual > opts.residual_tol {
            continue;
        }
        let (omega, xi) = prob.unpack(&res.x);
        let omega_turns = snap_root(omega, tol::SNAP_MAX_ORDER, tol::SNAP);
        let t = HalfBraidingTriple {
            tau,
            omega,
            omega_turns,
            xi,
        };
        if !found.iter().any(|f| same_triple(f, &t, opts.dedupe_tol)) {
            found.push(t);
        }
    }
}

/// All triples found by multi-start search, in canonical order. The start
/// budget doubles (up to 16 times the base) while the count falls short of
/// `n(n+3)/2`.
pub fn solve_triples(
    data: &NearGroupData,
    opts: &SolverOptions,
) -> Result<Vec<HalfBraidingTriple>> {
    opts.validate()?;
    let ctx = Ctx::new(data);
    let expected = expected_count(&data.group);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.rng_seed);
    let base = opts.starts(ctx.n);
    let mut found: Vec<HalfBraidingTriple> = Vec::new();
    let mut budget = base;
    let mut spent = 0;
    while spent < 16 * base {
        for tau in 0..ctx.n {
            search_tau(&ctx, tau, budget, &mut rng, opts, &mut found);
        }
        spent += budget;
        if found.len() >= expected {
            break;
        }
        budget = (budget * 2).min(16 * base - spent);
        if budget == 0 {
            break;
        }
    }
    found.retain(|t| triple_residual(data, t) <= opts.residual_tol);
    found.sort_by(|s, t| {
        s.tau
            .cmp(&t.tau)
            .then(turns_of(s.omega).total_cmp(&turns_of(t.omega)))
            .then_with(|| {
                let (p, q) = (s.xi_phases(), t.xi_phases());
                p.partial_cmp(&q).unwrap_or(std::cmp::Ordering::Equal)
            })
    });
    Ok(found)
}

/// Max residual over every instance of the triple equations.
pub fn triple_residual(data: &NearGroupData, t: &HalfBraidingTriple) -> f64 {
    let ctx = Ctx::new(data);
    let mut r = Vec::new();
    ctx.residuals(t.tau, t.omega, &t.xi, true, &mut r);
    let unit =
        t.xi.iter()
            .map(|z| (z.norm() - 1.0).abs())
            .fold((t.omega.norm() - 1.0).abs(), f64::max);
    r.chunks(2).map(|p| p[0].hypot(p[1])).fold(unit, f64::max)
}

/// Snapped `ω` as a unit complex number, falling back to the float value.
pub fn omega_value(t: &HalfBraidingTriple) -> Complex64 {
    t.omega_turns.map(cis_turn).unwrap_or(t.omega)
}
