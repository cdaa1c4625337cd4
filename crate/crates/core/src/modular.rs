//! Modular data and the generic operations on it: axiom checks, Verlinde
//! fusion, balancing, Galois action and subcategory detection.

use crate::abelian::{cis_turn, reduce_mod, Q};
use crate::cyclo::{exactify, snap_root, ExactValue};
use crate::error::{Error, Result};
use crate::quadratic::QuadIrr;
use crate::tol;
use nalgebra::DMatrix;
use num_complex::Complex64;
use num_integer::Integer;
use serde::{Deserialize, Serialize};
use std::collections::HashMap;

pub type CMat = DMatrix<Complex64>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SimpleLabel {
    A(usize),
    B(usize),
    C(usize, usize),
    D(usize),
    Named(String),
}

impl SimpleLabel {
    pub fn name(&self) -> String {
        match self {
            SimpleLabel::A(g) => format!("A{g}"),
            SimpleLabel::B(h) => format!("B{h}"),
            SimpleLabel::C(k, l) => format!("C{k},{l}"),
            SimpleLabel::D(j) => format!("D{j}"),
            SimpleLabel::Named(s) => s.clone(),
        }
    }
}

/// Labeled simple objects with dimensions, unnormalized `S` (unit first,
/// `S[0][0] = 1`) and diagonal `T`.
#[derive(Clone, Debug)]
pub struct ModularData {
    pub name: String,
    pub labels: Vec<SimpleLabel>,
    pub dims: Vec<f64>,
    pub dims_exact: Vec<Option<QuadIrr>>,
    pub s: CMat,
    pub t: Vec<Complex64>,
    /// `T[i] = exp(2πi t_turns[i])` when known exactly
    pub t_turns: Vec<Option<Q>>,
}

impl ModularData {
    /// Build from `S` and `T`; dims are read off the unit row.
    pub fn from_st(
        name: &str,
        labels: Vec<SimpleLabel>,
        s: CMat,
        t: Vec<Complex64>,
    ) -> Result<Self> {
        let r = labels.len();
        if s.nrows() != r || s.ncols() != r || t.len() != r {
            return Err(Error::InvalidInput(format!(
                "shape mismatch: {r} labels, S {}x{}, T {}",
                s.nrows(),
                s.ncols(),
                t.len()
            )));
        }
        let dims = (0..r).map(|i| s[(0, i)].re).collect();
        let t_turns = t
            .iter()
            .map(|&z| snap_root(z, tol::MAX_T_ORDER, 1e-9))
            .collect();
        Ok(ModularData {
            name: name.to_string(),
            labels,
            dims,
            dims_exact: vec![None; r],
            s,
            t,
            t_turns,
        })
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn label_names(&self) -> Vec<String> {
        self.labels.iter().map(|l| l.name()).collect()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.labels.iter().position(|l| l.name() == name)
    }

    pub fn global_dim(&self) -> f64 {
        (0..self.rank()).map(|i| self.s[(0, i)].norm_sqr()).sum()
    }

    pub fn normalized_s(&self) -> CMat {
        &self.s / Complex64::new(self.global_dim().sqrt(), 0.0)
    }

    /// Restriction to a subset of labels, in the given order.
    pub fn restrict(&self, idx: &[usize], name: &str) -> ModularData {
        let k = idx.len();
        ModularData {
            name: name.to_string(),
            labels: idx.iter().map(|&i| self.labels[i].clone()).collect(),
            dims: idx.iter().map(|&i| self.dims[i]).collect(),
            dims_exact: idx.iter().map(|&i| self.dims_exact[i]).collect(),
            s: CMat::from_fn(k, k, |a, b| self.s[(idx[a], idx[b])]),
            t: idx.iter().map(|&i| self.t[i]).collect(),
            t_turns: idx.iter().map(|&i| self.t_turns[i]).collect(),
        }
    }

    /// Relabel by a permutation: new label `i` is old label `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> ModularData {
        self.restrict(perm, &self.name)
    }

    /// Order of `T` when every entry is a root of unity of order ≤ 10⁴.
    pub fn t_order(&self) -> Option<i64> {
        let mut n = 1i64;
        for t in &self.t_turns {
            n = n.lcm(t.as_ref()?.denom());
        }
        (n <= tol::MAX_T_ORDER).then_some(n)
    }

    pub fn invertibles(&self) -> Vec<usize> {
        (0..self.rank())
            .filter(|&i| (self.dims[i].abs() - 1.0).abs() < 1e-8)
            .collect()
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct VerifyReport {
    pub pass: bool,
    pub symmetry: f64,
    pub unitarity: f64,
    pub t_order: Option<i64>,
    pub unit_normalization: f64,
    pub conjugation: Vec<usize>,
    pub s_squared: f64,
    pub modular_relation: f64,
    /// `((sT)^3) = λ s²` phase
    pub lambda: (f64, f64),
    pub failures: Vec<String>,
}

fn max_abs(m: &CMat) -> f64 {
    m.iter().fold(0.0, |a, z| a.max(z.norm()))
}

pub fn verify_modular(md: &ModularData, tol: f64) -> VerifyReport {
    let r = md.rank();
    let s = md.normalized_s();
    let symmetry = max_abs(&(&s - s.transpose()));
    let unitarity = max_abs(&(&s * s.adjoint() - CMat::identity(r, r)));
    let unit_normalization = (md.s[(0, 0)] - 1.0).norm().max((md.t[0] - 1.0).norm());
    let s2 = &s * &s;
    let conjugation: Vec<usize> = (0..r)
        .map(|i| {
            (0..r)
                .max_by(|&a, &b| s2[(i, a)].norm().total_cmp(&s2[(i, b)].norm()))
                .unwrap_or(0)
        })
        .collect();
    let cmat = CMat::from_fn(r, r, |i, j| {
        Complex64::new(if conjugation[i] == j { 1.0 } else { 0.0 }, 0.0)
    });
    let s_squared = max_abs(&(&s2 - &cmat));
    let mut st = s.clone();
    for j in 0..r {
        for i in 0..r {
            st[(i, j)] *= md.t[j];
        }
    }
    let st3 = &st * &st * &st;
    let num: Complex64 = s2.iter().zip(st3.iter()).map(|(a, b)| a.conj() * b).sum();
    let den: f64 = s2.iter().map(|a| a.norm_sqr()).sum();
    let lambda = num / den;
    let modular_relation = max_abs(&(&st3 - &s2 * lambda)).max((lambda.norm() - 1.0).abs());
    let t_order = md.t_order();
    let mut failures = Vec::new();
    for (name, v) in [
        ("symmetry", symmetry),
        ("unitarity", unitarity),
        ("unit normalization", unit_normalization),
        ("S^2 = conjugation", s_squared),
        ("(sT)^3 = lambda s^2", modular_relation),
    ] {
        if v.is_nan() || v > tol {
            failures.push(format!("{name}: residual {v:.3e} > {tol:.1e}"));
        }
    }
    let mut seen = vec![false; r];
    if conjugation
        .iter()
        .any(|&c| std::mem::replace(&mut seen[c], true))
    {
        failures.push("charge conjugation is not a permutation".into());
    }
    if t_order.is_none() {
        failures.push("T is not of finite order <= 10000".into());
    }
    VerifyReport {
        pass: failures.is_empty(),
        symmetry,
        unitarity,
        t_order,
        unit_normalization,
        conjugation,
        s_squared,
        modular_relation,
        lambda: (lambda.re, lambda.im),
        failures,
    }
}

/// Fusion coefficients `N[i][j][k]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FusionTensor {
    pub rank: usize,
    pub data: Vec<i64>,
}

impl FusionTensor {
    pub fn get(&self, i: usize, j: usize, k: usize) -> i64 {
        self.data[(i * self.rank + j) * self.rank + k]
    }

    /// `dual[i]` is the unique `j` with `N[i][j][0] = 1`.
    pub fn duals(&self) -> Vec<usize> {
        (0..self.rank)
            .map(|i| {
                (0..self.rank)
                    .find(|&j| self.get(i, j, 0) == 1)
                    .unwrap_or(i)
            })
            .collect()
    }

    /// Associativity `Σ_m N_ij^m N_mk^l = Σ_m N_jk^m N_im^l`.
    pub fn is_associative(&self) -> bool {
        let r = self.rank;
        for i in 0..r {
            for j in 0..r {
                for k in 0..r {
                    for l in 0..r {
                        let a: i64 = (0..r).map(|m| self.get(i, j, m) * self.get(m, k, l)).sum();
                        let b: i64 = (0..r).map(|m| self.get(j, k, m) * self.get(i, m, l)).sum();
                        if a != b {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

/// Matrix `M[j][k] = N_{i,j}^k` from the Verlinde formula, unrounded.
pub fn verlinde_row_raw(md: &ModularData, i: usize) -> CMat {
    let s = md.normalized_s();
    let r = md.rank();
    let mut w = s.clone();
    for m in 0..r {
        let f = s[(i, m)] / s[(0, m)];
        for j in 0..r {
            w[(j, m)] *= f;
        }
    }
    &w * s.adjoint()
}

fn round_row(raw: &CMat, i: usize, tol: f64) -> Result<DMatrix<i64>> {
    let r = raw.nrows();
    let mut out = DMatrix::zeros(r, r);
    let mut worst = (0.0, 0, 0);
    for j in 0..r {
        for k in 0..r {
            let z = raw[(j, k)];
            let n = z.re.round();
            let e = (z - n).norm();
            if e > worst.0 || n < 0.0 && e <= tol {
                if n < 0.0 {
                    return Err(Error::Verification(format!(
                        "Verlinde coefficient N[{i}][{j}][{k}] = {z} is negative"
                    )));
                }
                worst = (e, j, k);
            }
            out[(j, k)] = n as i64;
        }
    }
    if worst.0 > tol {
        return Err(Error::Verification(format!(
            "Verlinde coefficient N[{i}][{}][{}] off an integer by {:.3e}",
            worst.1, worst.2, worst.0
        )));
    }
    Ok(out)
}

/// Row `N[i][·][·]` rounded to integers.
pub fn verlinde_row(md: &ModularData, i: usize, tol: f64) -> Result<DMatrix<i64>> {
    round_row(&verlinde_row_raw(md, i), i, tol)
}

pub fn verlinde_fusion(md: &ModularData, tol: f64) -> Result<FusionTensor> {
    let r = md.rank();
    let mut data = vec![0i64; r * r * r];
    for i in 0..r {
        let row = verlinde_row(md, i, tol)?;
        for j in 0..r {
            for k in 0..r {
                data[(i * r + j) * r + k] = row[(j, k)];
            }
        }
    }
    Ok(FusionTensor { rank: r, data })
}

/// Largest deviation of `θ_X θ_Y S_XY = Σ_Z N_{X*,Y}^Z θ_Z d_Z`, divided by `√dim`.
pub fn balancing_check(md: &ModularData, fusion: &FusionTensor) -> f64 {
    let r = md.rank();
    let dual = fusion.duals();
    let mut worst: f64 = 0.0;
    for x in 0..r {
        for y in 0..r {
            let lhs = md.t[x] * md.t[y] * md.s[(x, y)];
            let rhs: Complex64 = (0..r)
                .map(|z| md.t[z] * md.dims[z] * fusion.get(dual[x], y, z) as f64)
                .sum();
            worst = worst.max((lhs - rhs).norm());
        }
    }
    worst / md.global_dim().sqrt()
}

/// Label permutation induced by fusing with the invertible `g`.
pub fn invertible_perm(md: &ModularData, g: usize) -> Result<Vec<usize>> {
    let row = verlinde_row(md, g, tol::INTEGER)?;
    let r = md.rank();
    let mut perm = vec![usize::MAX; r];
    let mut seen = vec![false; r];
    for x in 0..r {
        let ys: Vec<usize> = (0..r).filter(|&y| row[(x, y)] != 0).collect();
        if ys.len() != 1 || row[(x, ys[0])] != 1 || seen[ys[0]] {
            return Err(Error::Verification(format!(
                "fusion with label {g} is not a permutation at label {x}"
            )));
        }
        seen[ys[0]] = true;
        perm[x] = ys[0];
    }
    Ok(perm)
}

pub fn invertible_action(
    md: &ModularData,
    fusion: &FusionTensor,
    g: usize,
    x: usize,
) -> Result<usize> {
    let r = md.rank();
    let ys: Vec<usize> = (0..r).filter(|&y| fusion.get(g, x, y) != 0).collect();
    match ys.as_slice() {
        [y] if fusion.get(g, x, *y) == 1 => Ok(*y),
        _ => Err(Error::Verification(format!(
            "label {g} does not act as a permutation on label {x}"
        ))),
    }
}

/// Labels braiding trivially with every label of `subset`.
pub fn centralizer(md: &ModularData, subset: &[usize]) -> Vec<usize> {
    let scale = md.global_dim().sqrt();
    (0..md.rank())
        .filter(|&x| {
            subset
                .iter()
                .all(|&g| (md.s[(g, x)] - md.dims[g] * md.dims[x]).norm() < 1e-7 * scale)
        })
        .collect()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TannakianSubgroup {
    pub labels: Vec<usize>,
    /// invariant factors of the abstract group
    pub group_type: Vec<i64>,
}

/// Invariant factors of a finite abelian group from its element orders.
pub fn abelian_type(orders: &[i64]) -> Vec<i64> {
    let n = orders.len() as i64;
    let mut per_prime: Vec<Vec<i64>> = Vec::new();
    let mut m = n;
    let mut p = 2;
    while m > 1 {
        if m % p != 0 {
            p += 1;
            continue;
        }
        while m % p == 0 {
            m /= p;
        }
        // s[k] = log_p #{x : x^(p^k) = 1}
        let mut s = vec![0u32];
        loop {
            let pk = p.pow(s.len() as u32);
            let mut c = orders.iter().filter(|&&o| pk % o == 0).count() as i64;
            let mut l = 0;
            while c > 1 {
                c /= p;
                l += 1;
            }
            if l == *s.last().unwrap() {
                break;
            }
            s.push(l);
        }
        // factors of exponent exactly k: (s_k − s_{k−1}) − (s_{k+1} − s_k)
        let mut exps = Vec::new();
        for k in 1..s.len() {
            let ge = s[k] - s[k - 1];
            let ge_next = if k + 1 < s.len() { s[k + 1] - s[k] } else { 0 };
            for _ in 0..(ge - ge_next) {
                exps.push(p.pow(k as u32));
            }
        }
        exps.sort_unstable_by(|a, b| b.cmp(a));
        per_prime.push(exps);
        p += 1;
    }
    let len = per_prime.iter().map(|v| v.len()).max().unwrap_or(0);
    let mut out: Vec<i64> = (0..len)
        .map(|i| {
            per_prime
                .iter()
                .map(|v| v.get(i).copied().unwrap_or(1))
                .product()
        })
        .collect();
    out.sort_unstable();
    out
}

/// Subgroups of invertibles consisting of bosons with trivial mutual braiding.
pub fn find_tannakian_subgroups(md: &ModularData) -> Result<Vec<TannakianSubgroup>> {
    let inv = md.invertibles();
    let mut perms: HashMap<usize, Vec<usize>> = HashMap::new();
    for &g in &inv {
        perms.insert(g, invertible_perm(md, g)?);
    }
    let trivial = |g: usize, h: usize| (md.s[(g, h)] - md.dims[g] * md.dims[h]).norm() < 1e-7;
    let bosons: Vec<usize> = inv
        .iter()
        .copied()
        .filter(|&g| (md.t[g] - 1.0).norm() < 1e-7 && trivial(g, g))
        .collect();
    let close = |set: &mut Vec<usize>| {
        let mut i = 0;
        while i < set.len() {
            let snapshot = set.clone();
            for &h in &snapshot {
                let prod = perms[&set[i]][h];
                if !set.contains(&prod) {
                    set.push(prod);
                }
            }
            i += 1;
        }
        set.sort_unstable();
    };
    let mut found: Vec<Vec<usize>> = vec![vec![0]];
    let mut frontier = vec![vec![0usize]];
    while let Some(k) = frontier.pop() {
        for &b in &bosons {
            if k.contains(&b) || !k.iter().all(|&x| trivial(b, x)) {
                continue;
            }
            let mut set = k.clone();
            set.push(b);
            close(&mut set);
            let ok = set.iter().all(|g| bosons.contains(g))
                && set.iter().all(|&x| set.iter().all(|&y| trivial(x, y)));
            if ok && !found.contains(&set) {
                found.push(set.clone());
                frontier.push(set);
            }
        }
    }
    found.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    Ok(found
        .into_iter()
        .map(|labels| {
            let orders: Vec<i64> = labels
                .iter()
                .map(|&g| {
                    let mut k = 1;
                    let mut x = g;
                    while x != 0 {
                        x = perms[&g][x];
                        k += 1;
                    }
                    k
                })
                .collect();
            TannakianSubgroup {
                group_type: abelian_type(&orders),
                labels,
            }
        })
        .collect())
}

/// Restriction to the dimension-one labels.
pub fn pointed_part(md: &ModularData) -> ModularData {
    md.restrict(&md.invertibles(), &format!("{} pointed part", md.name))
}

/// `Σ d²` exactly when every dimension has an exact form.
pub fn global_dim_exact(md: &ModularData) -> Option<QuadIrr> {
    let mut acc = QuadIrr::int(0);
    for d in &md.dims_exact {
        let d = (*d)?;
        acc = acc.checked_add(&d.checked_mul(&d).ok()?).ok()?;
    }
    Some(acc)
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GaloisElement {
    pub conductor: i64,
    pub exponent: i64,
    /// `perm[y] = σ̂(y)`
    pub perm: Vec<usize>,
}

/// Exactify every distinct value once.
pub(crate) struct ExactCache {
    n: i64,
    bound: i64,
    map: HashMap<(i64, i64), ExactValue>,
}

impl ExactCache {
    pub(crate) fn new(n: i64, bound: i64) -> Self {
        ExactCache {
            n,
            bound,
            map: HashMap::new(),
        }
    }

    pub(crate) fn get(&mut self, z: Complex64) -> Result<&ExactValue> {
        let key = ((z.re * 1e7).round() as i64, (z.im * 1e7).round() as i64);
        if !self.map.contains_key(&key) {
            let v = exactify(z, self.n, self.bound)?;
            self.map.insert(key, v);
        }
        Ok(&self.map[&key])
    }
}

/// Galois action `ζ_N ↦ ζ_N^k` with `N` the order of `T`: the induced label
/// permutation and the conjugated data `(σ(S), σ(T))`.
pub fn galois_action(md: &ModularData, k: i64) -> Result<(GaloisElement, ModularData)> {
    let n = md
        .t_order()
        .ok_or_else(|| Error::Unsupported("T has no finite order".into()))?;
    if k.gcd(&n) != 1 {
        return Err(Error::InvalidInput(format!(
            "exponent {k} not coprime to {n}"
        )));
    }
    let r = md.rank();
    let bound = (md.global_dim().ceil() as i64).max(64) * 8;
    let mut cache = ExactCache::new(n, bound);
    let mut ratio = CMat::zeros(r, r);
    let mut conj_ratio = CMat::zeros(r, r);
    for y in 0..r {
        for x in 0..r {
            let v = md.s[(x, y)] / md.s[(0, y)];
            ratio[(x, y)] = v;
            conj_ratio[(x, y)] = cache.get(v)?.galois(k);
        }
    }
    let mut perm = vec![usize::MAX; r];
    let mut unmatched = Vec::new();
    for y in 0..r {
        let hit = (0..r).find(|&z| {
            (0..r).all(|x| {
                (ratio[(x, z)] - conj_ratio[(x, y)]).norm() < 1e-6 * (1.0 + ratio[(x, z)].norm())
            })
        });
        match hit {
            Some(z) => perm[y] = z,
            None => unmatched.push(y),
        }
    }
    let mut seen = vec![false; r];
    if !unmatched.is_empty() || perm.iter().any(|&p| std::mem::replace(&mut seen[p], true)) {
        return Err(Error::Verification(format!(
            "data not Galois stable under k={k}; unmatched columns {unmatched:?}"
        )));
    }
    let mut s = CMat::zeros(r, r);
    for x in 0..r {
        for y in x..r {
            let v = cache.get(md.s[(x, y)])?.galois(k);
            s[(x, y)] = v;
            s[(y, x)] = v;
        }
    }
    let t_turns: Vec<Option<Q>> = md
        .t_turns
        .iter()
        .map(|t| t.map(|q| reduce_mod(q * k, 1)))
        .collect();
    let t = t_turns.iter().map(|q| cis_turn(q.unwrap())).collect();
    let conj = ModularData {
        name: format!("{} conjugated by {k} mod {n}", md.name),
        labels: md.labels.clone(),
        dims: (0..r).map(|i| s[(0, i)].re).collect(),
        dims_exact: vec![None; r],
        s,
        t,
        t_turns,
    };
    Ok((
        GaloisElement {
            conductor: n,
            exponent: k,
            perm,
        },
        conj,
    ))
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;

    pub(crate) fn fibonacci() -> ModularData {
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        let s = CMat::from_row_slice(2, 2, &[1.0, phi, phi, -1.0].map(|x| Complex64::new(x, 0.0)));
        let t = vec![Complex64::new(1.0, 0.0), cis_turn(Q::new(2, 5))];
        ModularData::from_st(
            "fib",
            vec![
                SimpleLabel::Named("1".into()),
                SimpleLabel::Named("x".into()),
            ],
            s,
            t,
        )
        .unwrap()
    }

    #[test]
    fn fibonacci_checks() {
        let md = fibonacci();
        let rep = verify_modular(&md, 1e-10);
        assert!(rep.pass, "{:?}", rep.failures);
        assert_eq!(rep.t_order, Some(5));
        let f = verlinde_fusion(&md, 1e-6).unwrap();
        assert_eq!(f.get(1, 1, 0), 1);
        assert_eq!(f.get(1, 1, 1), 1);
        assert!(balancing_check(&md, &f) < 1e-12);
        assert_eq!(find_tannakian_subgroups(&md).unwrap().len(), 1);
        assert_eq!(centralizer(&md, &[0]), vec![0, 1]);
    }

    #[test]
    fn mutation_breaks_unitarity() {
        let mut md = fibonacci();
        md.s[(0, 1)] = Complex64::new(md.s[(0, 1)].re, 0.3);
        let rep = verify_modular(&md, 1e-8);
        assert!(rep.unitarity > 1e-3);
    }

    #[test]
    fn group_types() {
        let orders_z2z4 = [1, 2, 4, 4, 2, 2, 4, 4];
        assert_eq!(abelian_type(&orders_z2z4), vec![2, 4]);
        assert_eq!(abelian_type(&[1, 2]), vec![2]);
        assert_eq!(abelian_type(&[1, 3, 3, 2, 6, 6]), vec![6]);
        assert_eq!(abelian_type(&[1]), Vec::<i64>::new());
    }

    #[test]
    fn galois_on_fibonacci() {
        let md = fibonacci();
        let (g, conj) = galois_action(&md, 2).unwrap();
        assert_eq!(g.perm, vec![1, 0]);
        assert!((conj.s[(0, 1)].re - (1.0 - 5f64.sqrt()) / 2.0).abs() < 1e-9);
        let (id, _) = galois_action(&md, 1).unwrap();
        assert_eq!(id.perm, vec![0, 1]);
    }
}
