//! Structure equations of near-group categories `G+n`: quadratic-form and
//! `c` feasibility, the multi-start solve for `b`, and equivalence under
//! automorphisms of `G`.

use crate::abelian::{
    cis_pi, cis_turn, gauss_sum, quadratic_forms_for, reduce_mod, Bicharacter, Group, GroupSpec,
    QuadraticForm, Q,
};
use crate::cyclo::{phase_dist, snap_root};
use crate::error::{Error, Result};
use crate::lm::{levenberg_marquardt, LmOptions, Problem};
use crate::quadratic::QuadIrr;
use crate::tol;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct NearGroupData {
    pub group: GroupSpec,
    pub bichar: Bicharacter,
    pub a: QuadraticForm,
    /// `c = exp(2πi c_turns)`.
    pub c_turns: Q,
    pub b: Vec<Complex64>,
    pub d: QuadIrr,
}

impl NearGroupData {
    pub fn n(&self) -> usize {
        self.group.order()
    }

    pub fn dim(&self) -> f64 {
        self.d.to_f64()
    }

    pub fn c(&self) -> Complex64 {
        cis_turn(self.c_turns)
    }

    /// `arg(√n·b(x))` for every element, in `(-π, π]`; entry 0 is `arg b(0) = π`.
    pub fn b_phases(&self) -> Vec<f64> {
        self.b
            .iter()
            .map(|z| {
                let t = z.arg();
                if t <= -PI + 1e-12 {
                    t + 2.0 * PI
                } else {
                    t
                }
            })
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct SolverOptions {
    pub residual_tol: f64,
    pub dedupe_tol: f64,
    /// Starts per solve; `None` means `64·n`.
    pub multistart_count: Option<usize>,
    pub rng_seed: u64,
    pub max_iterations: usize,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            residual_tol: tol::CONSTRUCT,
            dedupe_tol: tol::DEDUPE,
            multistart_count: None,
            rng_seed: 0,
            max_iterations: 200,
        }
    }
}

impl SolverOptions {
    pub fn starts(&self, n: usize) -> usize {
        self.multistart_count.unwrap_or(64 * n).max(1)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.residual_tol > 0.0 && self.dedupe_tol > 0.0) {
            return Err(Error::InvalidInput("tolerances must be positive".into()));
        }
        Ok(())
    }
}

/// Quadratic forms with `|Σ a| = √n`, each paired with the three cube roots
/// `c` of `(Σ a / √n)^{-1}`; `c` is returned in turns.
pub fn feasible_pairs(spec: &GroupSpec, bichar: &Bicharacter) -> Result<Vec<(QuadraticForm, Q)>> {
    if &bichar.group != spec {
        return Err(Error::InvalidInput(
            "bicharacter is for a different group".into(),
        ));
    }
    if !bichar.is_nondegenerate() {
        return Err(Error::InvalidInput("bicharacter is degenerate".into()));
    }
    let rn = (spec.order() as f64).sqrt();
    let mut out = Vec::new();
    for a in quadratic_forms_for(bichar) {
        let g = gauss_sum(&a);
        if (g.norm() - rn).abs() > 1e-9 {
            continue;
        }
        let Some(s) = snap_root(g / rn, tol::SNAP_MAX_ORDER, 1e-9) else {
            continue;
        };
        // c^{-3} = exp(2πi s)
        let mut cs: Vec<Q> = (0..3)
            .map(|j| reduce_mod(-(s + Q::from_integer(j)) / 3, 1))
            .collect();
        cs.sort();
        for c in cs {
            out.push((a.clone(), c));
        }
    }
    Ok(out)
}

/// Free-parameter layout shared by the solver and residual evaluation.
struct Layout {
    group: Group,
    n: usize,
    d: f64,
    pair: Vec<Vec<Complex64>>,
    a: Vec<Complex64>,
    a_phase: Vec<Q>,
    c: Complex64,
    /// representatives `x < -x` carrying a free phase
    reps: Vec<usize>,
    /// nonzero elements with `2x = 0`
    involutions: Vec<usize>,
}

impl Layout {
    fn new(spec: &GroupSpec, bichar: &Bicharacter, a: &QuadraticForm, c_turns: Q) -> Self {
        let group = Group::new(spec);
        let n = group.order();
        let tt = bichar.turn_table();
        let pair = tt
            .iter()
            .map(|row| row.iter().map(|&t| cis_turn(t)).collect())
            .collect();
        let reps = (1..n).filter(|&x| x < group.neg(x)).collect();
        let involutions = (1..n).filter(|&x| x == group.neg(x)).collect();
        Layout {
            n,
            d: QuadIrr::neargroup_dim(n as i64).to_f64(),
            pair,
            a: a.values(),
            a_phase: a.phases.clone(),
            c: cis_turn(c_turns),
            reps,
            involutions,
            group,
        }
    }

    fn b_from(&self, phases: &[f64], signs: &[bool]) -> Vec<Complex64> {
        let rn = (self.n as f64).sqrt();
        let mut b = vec![Complex64::new(0.0, 0.0); self.n];
        b[0] = Complex64::new(-1.0 / self.d, 0.0);
        for (&x, &p) in self.reps.iter().zip(phases) {
            let v = Complex64::from_polar(1.0 / rn, p);
            b[x] = v;
            b[self.group.neg(x)] = (self.a[x] * v).conj();
        }
        for (&x, &s) in self.involutions.iter().zip(signs) {
            let v = cis_pi(-self.a_phase[x] / 2) / rn;
            b[x] = if s { -v } else { v };
        }
        b
    }

    /// Stacked real/imaginary residuals of the `b` equations.
    fn eq_residuals(&self, b: &[Complex64], out: &mut Vec<f64>) {
        out.clear();
        let n = self.n;
        let g = &self.group;
        let rn = (n as f64).sqrt();
        let mut push = |z: Complex64| {
            out.push(z.re);
            out.push(z.im);
        };
        for x in 0..n {
            let mut s = Complex64::new(0.0, 0.0);
            for y in 0..n {
                s += self.pair[x][y].conj() * b[y];
            }
            push(s - self.c * b[x].conj() * rn);
        }
        for y in 1..n {
            let mut s = Complex64::new(0.0, 0.0);
            for x in 0..n {
                s += b[g.add(x, y)] * b[x].conj();
            }
            push(s + 1.0 / self.d);
        }
        let k = self.c / (self.d * rn);
        for y in 0..n {
            for z in y..n {
                let mut s = Complex64::new(0.0, 0.0);
                for x in 0..n {
                    s += b[g.add(x, y)] * b[g.add(x, z)] * b[x].conj();
                }
                push(s - self.pair[y][z].conj() * b[y] * b[z] + k);
            }
        }
    }
}

struct BProblem<'a> {
    lay: &'a Layout,
    signs: Vec<bool>,
}

impl Problem for BProblem<'_> {
    fn n_params(&self) -> usize {
        self.lay.reps.len()
    }
    fn residuals(&self, x: &[f64], out: &mut Vec<f64>) {
        let b = self.lay.b_from(x, &self.signs);
        self.lay.eq_residuals(&b, out);
    }
}

/// Multi-start search for all `b` solving the structure equations for fixed `(a, c)`.
pub fn solve_b(
    spec: &GroupSpec,
    bichar: &Bicharacter,
    a: &QuadraticForm,
    c_turns: Q,
    opts: &SolverOptions,
) -> Result<Vec<NearGroupData>> {
    opts.validate()?;
    let lay = Layout::new(spec, bichar, a, c_turns);
    let n = lay.n;
    let d = QuadIrr::neargroup_dim(n as i64);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.rng_seed);
    let lm = LmOptions {
        max_iter: opts.max_iterations,
        target: 1e-14,
    };
    let mut found: Vec<NearGroupData> = Vec::new();
    let starts = if lay.reps.is_empty() {
        1usize << lay.involutions.len()
    } else {
        opts.starts(n)
    };
    for s in 0..starts {
        let x0: Vec<f64> = (0..lay.reps.len())
            .map(|_| rng.gen_range(-PI..PI))
            .collect();
        let signs: Vec<bool> = if lay.reps.is_empty() {
            (0..lay.involutions.len())
                .map(|k| (s >> k) & 1 == 1)
                .collect()
        } else {
            (0..lay.involutions.len()).map(|_| rng.gen()).collect()
        };
        let prob = BProblem { lay: &lay, signs };
        let res = levenberg_marquardt(&prob, &x0, &lm);
        if res.max_residual > opts.residual_tol {
            continue;
        }
        let b = lay.b_from(&res.x, &prob.signs);
        let cand = NearGroupData {
            group: spec.clone(),
            bichar: bichar.clone(),
            a: a.clone(),
            c_turns,
            b,
            d,
        };
        if residual(&cand) > opts.residual_tol {
            continue;
        }
        let dup = found
            .iter()
            .any(|f| b_distance(&f.b, &cand.b) < opts.dedupe_tol);
        if !dup {
            found.push(cand);
        }
    }
    found.sort_by(|x, y| {
        x.b_phases()
            .partial_cmp(&y.b_phases())
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    Ok(found)
}

/// Solve for every feasible `(a, c)`; returns pairs with their solutions.
pub fn solve_all(
    spec: &GroupSpec,
    bichar: &Bicharacter,
    opts: &SolverOptions,
) -> Result<Vec<NearGroupData>> {
    let mut out = Vec::new();
    for (a, c) in feasible_pairs(spec, bichar)? {
        out.extend(solve_b(spec, bichar, &a, c, opts)?);
    }
    Ok(out)
}

/// Max geodesic phase distance between two `b` vectors.
pub fn b_distance(b1: &[Complex64], b2: &[Complex64]) -> f64 {
    b1.iter()
        .zip(b2)
        .map(|(x, y)| phase_dist(x.arg(), y.arg()))
        .fold(0.0, f64::max)
}

/// Max deviation over every instance of the structure equations.
pub fn residual(data: &NearGroupData) -> f64 {
    let lay = Layout::new(&data.group, &data.bichar, &data.a, data.c_turns);
    let n = lay.n;
    let g = &lay.group;
    let b = &data.b;
    let rn = (n as f64).sqrt();
    let mut worst: f64 = 0.0;
    let mut upd = |z: Complex64| worst = worst.max(z.norm());
    upd(lay.a[0] - 1.0);
    for x in 0..n {
        upd(lay.a[x] - lay.a[g.neg(x)]);
        upd(lay.a[x] * b[g.neg(x)] - b[x].conj());
        for y in 0..n {
            upd(lay.a[g.add(x, y)] * lay.pair[x][y] - lay.a[x] * lay.a[y]);
        }
    }
    let gs: Complex64 = lay.a.iter().sum();
    upd(gs - rn * (lay.c * lay.c * lay.c).conj());
    upd(b[0] + 1.0 / lay.d);
    let mut r = Vec::new();
    lay.eq_residuals(b, &mut r);
    for v in r {
        upd(Complex64::new(v, 0.0));
    }
    // norm identity: sum of |b|^2 equals 1 - 1/d
    let s: f64 = b.iter().map(|z| z.norm_sqr()).sum();
    upd(Complex64::new(s - 1.0 + 1.0 / lay.d, 0.0));
    worst
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct AutClass {
    /// indices into the input list; the first is the representative
    pub members: Vec<usize>,
    /// automorphisms (element permutations) `ψ` with `b_rep(x) = b_m(ψx)`, per member
    pub witnesses: Vec<Vec<Vec<usize>>>,
}

fn equivalent_under(s1: &NearGroupData, s2: &NearGroupData, psi: &[usize], tol: f64) -> bool {
    if s1.c_turns != s2.c_turns {
        return false;
    }
    let t1 = s1.bichar.turn_table();
    let t2 = s2.bichar.turn_table();
    let n = psi.len();
    for x in 0..n {
        if reduce_mod(s1.a.phases[x] - s2.a.phases[psi[x]], 2) != Q::from_integer(0) {
            return false;
        }
        if (s1.b[x] - s2.b[psi[x]]).norm() > tol {
            return false;
        }
        for y in 0..n {
            if t1[x][y] != t2[psi[x]][psi[y]] {
                return false;
            }
        }
    }
    true
}

/// Group solutions into classes related by automorphisms of `G`.
pub fn dedupe_up_to_aut(solutions: &[NearGroupData], tol: f64) -> Vec<AutClass> {
    let mut classes: Vec<AutClass> = Vec::new();
    if solutions.is_empty() {
        return classes;
    }
    let auts = Group::new(&solutions[0].group).automorphisms();
    for (i, s) in solutions.iter().enumerate() {
        let mut placed = false;
        for cl in classes.iter_mut() {
            let rep = &solutions[cl.members[0]];
            if rep.group != s.group {
                continue;
            }
            let w: Vec<Vec<usize>> = auts
                .iter()
                .filter(|p| equivalent_under(rep, s, p, tol))
                .cloned()
                .collect();
            if !w.is_empty() {
                cl.members.push(i);
                cl.witnesses.push(w);
                placed = true;
                break;
            }
        }
        if !placed {
            let id: Vec<usize> = (0..s.n()).collect();
            classes.push(AutClass {
                members: vec![i],
                witnesses: vec![vec![id]],
            });
        }
    }
    classes
}
