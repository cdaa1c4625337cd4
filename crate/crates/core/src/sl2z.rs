//! A small catalog of congruence representations of `SL(2,ℤ)` of levels 4
//! and 5, decomposition types by `t`-spectrum and numerical intertwiner
//! search.

use crate::abelian::{cis_turn, reduce_mod, Q};
use crate::error::{Error, Result};
use crate::lm::{levenberg_marquardt, LmOptions, Problem};
use crate::modular::{verify_modular, CMat, ModularData};
use nalgebra::DMatrix;
use num_complex::Complex64;
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::fmt;

#[derive(Clone, Debug)]
pub struct RepSpec {
    pub name: String,
    pub level: i64,
    pub dim: usize,
    pub s: CMat,
    /// eigenvalues of `t` as turns
    pub t_turns: Vec<Q>,
}

impl RepSpec {
    pub fn t(&self) -> Vec<Complex64> {
        self.t_turns.iter().map(|&q| cis_turn(q)).collect()
    }

    pub fn t_matrix(&self) -> CMat {
        CMat::from_diagonal(&nalgebra::DVector::from_vec(self.t()))
    }
}

fn re(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// `ρ₀` (trivial), `ρ₁` (level 5, dim 3), `ρ₂` (level 4, dim 3), `ρ₃`
/// (level 4, dim 2), `ρ₄`, `ρ₅` (level 4, dim 1).
pub fn catalog() -> Vec<RepSpec> {
    let r2 = 2f64.sqrt();
    let r3 = 3f64.sqrt();
    let r5 = 5f64.sqrt();
    let c1 = 2.0 * (2.0 * PI / 5.0).cos();
    let c3 = 2.0 * (6.0 * PI / 5.0).cos();
    let i = Complex64::i();
    let mk = |name: &str, level, s: CMat, t: Vec<Q>| RepSpec {
        name: name.into(),
        level,
        dim: t.len(),
        s,
        t_turns: t,
    };
    vec![
        mk(
            "rho0",
            1,
            CMat::from_element(1, 1, re(1.0)),
            vec![Q::from_integer(0)],
        ),
        mk(
            "rho1",
            5,
            CMat::from_row_slice(
                3,
                3,
                &[1.0, r2, r2, r2, c1, c3, r2, c3, c1].map(|x| re(-x / r5)),
            ),
            vec![Q::from_integer(0), Q::new(2, 5), Q::new(3, 5)],
        ),
        mk(
            "rho2",
            4,
            CMat::from_row_slice(
                3,
                3,
                &[-1.0, 1.0, r2, 1.0, -1.0, r2, r2, r2, 0.0].map(|x| re(x / 2.0)),
            ),
            vec![Q::new(1, 4), Q::new(3, 4), Q::from_integer(0)],
        ),
        mk(
            "rho3",
            4,
            CMat::from_row_slice(2, 2, &[i / 2.0, i * r3 / 2.0, i * r3 / 2.0, -i / 2.0]),
            vec![Q::new(1, 4), Q::new(3, 4)],
        ),
        mk("rho4", 4, CMat::from_element(1, 1, -i), vec![Q::new(1, 4)]),
        mk("rho5", 4, CMat::from_element(1, 1, i), vec![Q::new(3, 4)]),
    ]
}

/// Multiset of catalog entries, by name.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DecompositionType {
    pub parts: BTreeMap<String, usize>,
}

impl DecompositionType {
    pub fn from_parts(parts: &[(&str, usize)]) -> Self {
        DecompositionType {
            parts: parts
                .iter()
                .filter(|p| p.1 > 0)
                .map(|&(n, k)| (n.to_string(), k))
                .collect(),
        }
    }

    fn components<'a>(&self, cat: &'a [RepSpec]) -> Result<Vec<&'a RepSpec>> {
        let mut out = Vec::new();
        for (name, &k) in &self.parts {
            let r = cat
                .iter()
                .find(|r| &r.name == name)
                .ok_or_else(|| Error::InvalidInput(format!("{name} not in catalog")))?;
            out.extend(std::iter::repeat_n(r, k));
        }
        Ok(out)
    }

    pub fn dim(&self, cat: &[RepSpec]) -> Result<usize> {
        Ok(self.components(cat)?.iter().map(|r| r.dim).sum())
    }
}

impl fmt::Display for DecompositionType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self
            .parts
            .iter()
            .map(|(n, &k)| if k == 1 { n.clone() } else { format!("{k}{n}") })
            .collect();
        write!(f, "{}", s.join("+"))
    }
}

/// `(S/√D, T)`.
pub fn projective_rep(md: &ModularData) -> (CMat, Vec<Complex64>) {
    (md.normalized_s(), md.t.clone())
}

fn spectrum(turns: &[Q]) -> BTreeMap<Q, usize> {
    let mut m = BTreeMap::new();
    for &t in turns {
        *m.entry(reduce_mod(t, 1)).or_insert(0) += 1;
    }
    m
}

/// Every multiset over the catalog whose `t`-spectrum equals the spectrum of `T`.
pub fn candidate_decompositions(
    md: &ModularData,
    cat: &[RepSpec],
) -> Result<Vec<DecompositionType>> {
    let n = md
        .t_order()
        .ok_or_else(|| Error::Unsupported("T has no finite order".into()))?;
    let covered = cat.iter().fold(1i64, |acc, r| acc.lcm(&r.level));
    if covered % n != 0 {
        return Err(Error::Unsupported(format!(
            "T order {n} is not covered by catalog levels (lcm {covered})"
        )));
    }
    let target = spectrum(&md.t_turns.iter().map(|t| t.unwrap()).collect::<Vec<_>>());
    let specs: Vec<BTreeMap<Q, usize>> = cat.iter().map(|r| spectrum(&r.t_turns)).collect();
    let mut out = Vec::new();
    let mut mult = vec![0usize; cat.len()];
    search(0, &specs, &target, &mut mult, cat, &mut out);
    out.sort();
    Ok(out)
}

fn search(
    k: usize,
    specs: &[BTreeMap<Q, usize>],
    left: &BTreeMap<Q, usize>,
    mult: &mut Vec<usize>,
    cat: &[RepSpec],
    out: &mut Vec<DecompositionType>,
) {
    if left.values().all(|&c| c == 0) {
        out.push(DecompositionType {
            parts: cat
                .iter()
                .zip(mult.iter())
                .filter(|(_, &m)| m > 0)
                .map(|(r, &m)| (r.name.clone(), m))
                .collect(),
        });
        return;
    }
    if k == specs.len() {
        return;
    }
    let mut rest = left.clone();
    let mut m = 0;
    loop {
        search(k + 1, specs, &rest, mult, cat, out);
        let fits = specs[k]
            .iter()
            .all(|(t, &c)| rest.get(t).copied().unwrap_or(0) >= c);
        if !fits {
            break;
        }
        for (t, &c) in &specs[k] {
            *rest.get_mut(t).unwrap() -= c;
        }
        m += 1;
        mult[k] = m;
    }
    mult[k] = 0;
}

/// False when the components split into two nonempty groups with disjoint
/// `t`-spectra; such a representation cannot come from modular data.
pub fn spectrally_connected(ty: &DecompositionType, cat: &[RepSpec]) -> Result<bool> {
    let comps = ty.components(cat)?;
    let k = comps.len();
    if k <= 1 {
        return Ok(true);
    }
    let sp: Vec<BTreeMap<Q, usize>> = comps.iter().map(|r| spectrum(&r.t_turns)).collect();
    let mut seen = vec![false; k];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for j in 0..k {
            if !seen[j] && sp[i].keys().any(|t| sp[j].contains_key(t)) {
                seen[j] = true;
                stack.push(j);
            }
        }
    }
    Ok(seen.into_iter().all(|b| b))
}

/// Intertwiner found by [`verify_decomposition`].
#[derive(Clone, Debug)]
pub struct DecompositionFit {
    pub residual: f64,
    /// real orthogonal, `ρ(s) = λ U ρ̃(s) Uᵀ` in the label order of the data
    pub u: DMatrix<f64>,
    pub lambda: Complex64,
    /// block-diagonal `ρ̃(s)` and `ρ̃(t)` in the component order
    pub rho_s: CMat,
    pub rho_t: Vec<Complex64>,
}

#[derive(Clone, Debug)]
pub struct IntertwinerOptions {
    pub starts: usize,
    pub seed: u64,
    pub tol: f64,
}

impl Default for IntertwinerOptions {
    fn default() -> Self {
        IntertwinerOptions {
            starts: 200,
            seed: 0,
            tol: 1e-8,
        }
    }
}

struct Blocks {
    /// label indices of the data per eigenvalue
    md_idx: Vec<Vec<usize>>,
    /// basis indices of the direct sum per eigenvalue
    rho_idx: Vec<Vec<usize>>,
}

struct FitProblem<'a> {
    target: &'a CMat,
    rho_s: &'a CMat,
    blocks: &'a Blocks,
    signs: Vec<Vec<f64>>,
}

fn cayley(a: &[f64], m: usize) -> DMatrix<f64> {
    let mut k = DMatrix::<f64>::zeros(m, m);
    let mut p = 0;
    for i in 0..m {
        for j in i + 1..m {
            k[(i, j)] = a[p];
            k[(j, i)] = -a[p];
            p += 1;
        }
    }
    let id = DMatrix::<f64>::identity(m, m);
    let inv = (&id + &k).try_inverse().unwrap_or_else(|| id.clone());
    (&id - &k) * inv
}

impl FitProblem<'_> {
    fn build(&self, x: &[f64]) -> (DMatrix<f64>, Complex64) {
        let r = self.target.nrows();
        let mut u = DMatrix::<f64>::zeros(r, r);
        let mut p = 1;
        for (b, (mi, ri)) in self
            .blocks
            .md_idx
            .iter()
            .zip(&self.blocks.rho_idx)
            .enumerate()
        {
            let m = mi.len();
            let np = m * (m - 1) / 2;
            let q = cayley(&x[p..p + np], m);
            p += np;
            for a in 0..m {
                for c in 0..m {
                    u[(mi[a], ri[c])] = self.signs[b][a] * q[(a, c)];
                }
            }
        }
        (u, Complex64::from_polar(1.0, x[0]))
    }
}

impl Problem for FitProblem<'_> {
    fn n_params(&self) -> usize {
        1 + self
            .blocks
            .md_idx
            .iter()
            .map(|b| b.len() * (b.len() - 1) / 2)
            .sum::<usize>()
    }
    fn residuals(&self, x: &[f64], out: &mut Vec<f64>) {
        out.clear();
        let (u, lambda) = self.build(x);
        let uc = u.map(re);
        let m = &uc * self.rho_s * uc.transpose() * lambda;
        for (a, b) in m.iter().zip(self.target.iter()) {
            out.push(a.re - b.re);
            out.push(a.im - b.im);
        }
    }
}

/// Scalar `μ` with `(μs·t)³ = (μs)²`; `μ = 1` for linear entries.
pub fn linear_normalization(r: &RepSpec) -> Complex64 {
    let t = r.t_matrix();
    let s2 = &r.s * &r.s;
    let q = (&r.s * &t).pow(3) * s2.try_inverse().expect("s is unitary");
    Complex64::new(1.0, 0.0) / q[(0, 0)]
}

/// Direct sum `⊕ρᵢ` in component order, each summand rescaled by
/// [`linear_normalization`] so that the sum is a linear representation.
pub fn direct_sum(ty: &DecompositionType, cat: &[RepSpec]) -> Result<(CMat, Vec<Q>)> {
    let comps = ty.components(cat)?;
    let r: usize = comps.iter().map(|c| c.dim).sum();
    let mut s = CMat::zeros(r, r);
    let mut t = Vec::with_capacity(r);
    let mut off = 0;
    for c in comps {
        let mu = linear_normalization(c);
        s.view_mut((off, off), (c.dim, c.dim))
            .copy_from(&(&c.s * mu));
        t.extend(c.t_turns.iter().map(|&q| reduce_mod(q, 1)));
        off += c.dim;
    }
    Ok((s, t))
}

/// Search for a real orthogonal `U`, block diagonal on the eigenspaces of
/// `T`, with `S/√D = λ U ρ̃(s) Uᵀ`. Fails with `Infeasible` when no start
/// reaches `opts.tol`.
pub fn verify_decomposition(
    md: &ModularData,
    ty: &DecompositionType,
    cat: &[RepSpec],
    opts: &IntertwinerOptions,
) -> Result<DecompositionFit> {
    let rep = verify_modular(md, 1e-8);
    if !rep.pass {
        return Err(Error::Verification(rep.failures.join("; ")));
    }
    let (target, _) = projective_rep(md);
    let (rho_s, rho_t) = direct_sum(ty, cat)?;
    let r = md.rank();
    if rho_t.len() != r {
        return Err(Error::InvalidInput(format!(
            "type {ty} has dimension {}, rank is {r}",
            rho_t.len()
        )));
    }
    let md_t: Vec<Q> = md
        .t_turns
        .iter()
        .map(|t| {
            t.map(|q| reduce_mod(q, 1))
                .ok_or_else(|| Error::Unsupported("unsnapped twist".into()))
        })
        .collect::<Result<_>>()?;
    if spectrum(&md_t) != spectrum(&rho_t) {
        return Err(Error::InvalidInput(format!(
            "type {ty} has a different t-spectrum"
        )));
    }
    let keys: Vec<Q> = spectrum(&md_t).into_keys().collect();
    let blocks = Blocks {
        md_idx: keys
            .iter()
            .map(|k| (0..r).filter(|&i| md_t[i] == *k).collect())
            .collect(),
        rho_idx: keys
            .iter()
            .map(|k| (0..r).filter(|&i| rho_t[i] == *k).collect())
            .collect(),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let lm = LmOptions {
        max_iter: 300,
        target: 1e-14,
    };
    let mut best: Option<(f64, DMatrix<f64>, Complex64)> = None;
    for _ in 0..opts.starts {
        let signs: Vec<Vec<f64>> = blocks
            .md_idx
            .iter()
            .map(|b| {
                b.iter()
                    .map(|_| if rng.gen::<bool>() { 1.0 } else { -1.0 })
                    .collect()
            })
            .collect();
        let prob = FitProblem {
            target: &target,
            rho_s: &rho_s,
            blocks: &blocks,
            signs,
        };
        let x0: Vec<f64> = (0..prob.n_params())
            .map(|k| {
                if k == 0 {
                    rng.gen_range(-PI..PI)
                } else {
                    rng.gen_range(-2.0..2.0)
                }
            })
            .collect();
        let res = levenberg_marquardt(&prob, &x0, &lm);
        let (u, lambda) = prob.build(&res.x);
        let uc = u.map(re);
        let resid = (&uc * &rho_s * uc.transpose() * lambda - &target)
            .iter()
            .fold(0f64, |a, z| a.max(z.norm()));
        if best.as_ref().is_none_or(|b| resid < b.0) {
            best = Some((resid, u, lambda));
        }
        if resid <= opts.tol {
            break;
        }
    }
    let (residual, u, lambda) = best.expect("at least one start");
    if residual > opts.tol {
        return Err(Error::Infeasible(format!(
            "no intertwiner for {ty}: best residual {residual:.3e} after {} starts",
            opts.starts
        )));
    }
    Ok(DecompositionFit {
        residual,
        u,
        lambda,
        rho_s,
        rho_t: rho_t.iter().map(|&q| cis_turn(q)).collect(),
    })
}

/// Largest difference of traces `tr ρ(w)` between the data and the fitted
/// direct sum over `count` random words of length at most `max_len`.
pub fn word_trace_check(
    md: &ModularData,
    fit: &DecompositionFit,
    count: usize,
    max_len: usize,
    seed: u64,
) -> f64 {
    let (s, t) = projective_rep(md);
    let t = CMat::from_diagonal(&nalgebra::DVector::from_vec(t));
    let s2 = &fit.rho_s * fit.lambda;
    let t2 = CMat::from_diagonal(&nalgebra::DVector::from_vec(fit.rho_t.clone()));
    let r = md.rank();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0f64;
    for _ in 0..count {
        let len = rng.gen_range(1..=max_len);
        let mut a = CMat::identity(r, r);
        let mut b = CMat::identity(r, r);
        for _ in 0..len {
            if rng.gen::<bool>() {
                a *= &s;
                b *= &s2;
            } else {
                a *= &t;
                b *= &t2;
            }
        }
        worst = worst.max((a.trace() - b.trace()).norm());
    }
    worst
}
