//! Condensation by a Tannakian subgroup of invertibles and factorization of
//! pointed modular subcategories.

use crate::abelian::Q;
use crate::error::{Error, Result};
use crate::lm::{levenberg_marquardt, LmOptions, Problem};
use crate::modular::{
    balancing_check, centralizer, invertible_perm, verify_modular, verlinde_fusion, CMat,
    ModularData, SimpleLabel, TannakianSubgroup,
};
use crate::tol;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Orbit {
    pub members: Vec<usize>,
    /// elements of the subgroup fixing the orbit representative
    pub stabilizer: Vec<usize>,
    pub split: usize,
}

#[derive(Clone, Debug)]
pub struct CondensationResult {
    pub parent: String,
    pub subgroup: TannakianSubgroup,
    pub centralizer: Vec<usize>,
    pub orbits: Vec<Orbit>,
    pub condensed: ModularData,
    /// `(orbit index, split part)` per condensed label
    pub provenance: Vec<(usize, usize)>,
    /// every candidate that passed all filters; `condensed` is the first
    pub survivors: Vec<ModularData>,
    pub unresolved: Vec<String>,
}

/// Permutations induced by each subgroup element.
fn subgroup_perms(md: &ModularData, h: &[usize]) -> Result<Vec<Vec<usize>>> {
    h.iter().map(|&g| invertible_perm(md, g)).collect()
}

pub fn orbit_decomposition(md: &ModularData, h: &[usize], centr: &[usize]) -> Result<Vec<Orbit>> {
    let perms = subgroup_perms(md, h)?;
    let mut seen = vec![false; md.rank()];
    let mut out = Vec::new();
    for &x in centr {
        if seen[x] {
            continue;
        }
        let mut members: Vec<usize> = perms.iter().map(|p| p[x]).collect();
        members.sort_unstable();
        members.dedup();
        for &m in &members {
            seen[m] = true;
        }
        let stabilizer: Vec<usize> = h
            .iter()
            .zip(&perms)
            .filter(|(_, p)| p[x] == x)
            .map(|(&g, _)| g)
            .collect();
        out.push(Orbit {
            split: stabilizer.len(),
            members,
            stabilizer,
        });
    }
    Ok(out)
}

/// Condensed-label layout: mean part of `S` and the sign pattern of the
/// unknown split corrections.
#[derive(Clone, Debug)]
struct Layout {
    mean: CMat,
    t: Vec<Complex64>,
    /// per label: fixed-orbit slot and sign, or None for free labels
    sign: Vec<Option<(usize, f64)>>,
    /// unordered slot pairs carrying an unknown correction
    pairs: Vec<(usize, usize)>,
}

impl Layout {
    fn assemble(&self, f: &[Complex64]) -> CMat {
        let mut s = self.mean.clone();
        let r = s.nrows();
        for i in 0..r {
            for j in 0..r {
                if let (Some((a, ea)), Some((b, eb))) = (self.sign[i], self.sign[j]) {
                    if let Some(p) = self.pairs.iter().position(|&q| q == (a.min(b), a.max(b))) {
                        s[(i, j)] += f[p] * (ea * eb);
                    }
                }
            }
        }
        s
    }

    fn restrict(&self, idx: &[usize]) -> Layout {
        let k = idx.len();
        let sign: Vec<Option<(usize, f64)>> = idx.iter().map(|&i| self.sign[i]).collect();
        let slots: Vec<usize> = sign.iter().flatten().map(|s| s.0).collect();
        Layout {
            mean: CMat::from_fn(k, k, |a, b| self.mean[(idx[a], idx[b])]),
            t: idx.iter().map(|&i| self.t[i]).collect(),
            pairs: self
                .pairs
                .iter()
                .copied()
                .filter(|(a, b)| slots.contains(a) && slots.contains(b))
                .collect(),
            sign,
        }
    }
}

struct SplitProblem<'a> {
    lay: &'a Layout,
    dim: f64,
}

impl SplitProblem<'_> {
    fn unpack(&self, x: &[f64]) -> (Vec<Complex64>, Complex64) {
        let f = x
            .chunks(2)
            .take(self.lay.pairs.len())
            .map(|c| Complex64::new(c[0], c[1]))
            .collect();
        (f, Complex64::from_polar(1.0, *x.last().unwrap()))
    }
}

impl Problem for SplitProblem<'_> {
    fn n_params(&self) -> usize {
        2 * self.lay.pairs.len() + 1
    }
    fn residuals(&self, x: &[f64], out: &mut Vec<f64>) {
        out.clear();
        let (f, lambda) = self.unpack(x);
        let s = self.lay.assemble(&f) / Complex64::new(self.dim.sqrt(), 0.0);
        let r = s.nrows();
        let u = &s * s.adjoint();
        let mut st = s.clone();
        for j in 0..r {
            for i in 0..r {
                st[(i, j)] *= self.lay.t[j];
            }
        }
        let m = &st * &st * &st - &s * &s * lambda;
        for i in 0..r {
            for j in 0..r {
                let e = u[(i, j)] - if i == j { 1.0 } else { 0.0 };
                out.extend([e.re, e.im, m[(i, j)].re, m[(i, j)].im]);
            }
        }
    }
}

fn to_md(lay: &Layout, f: &[Complex64], labels: &[SimpleLabel], name: &str) -> Result<ModularData> {
    let s = lay.assemble(f);
    let mut md = ModularData::from_st(name, labels.to_vec(), s, lay.t.clone())?;
    md.t = lay.t.clone();
    Ok(md)
}

/// Same up to swapping the two parts of any split orbit.
fn gauge_equal(lay: &Layout, f: &[Complex64], g: &[Complex64], tol: f64) -> bool {
    let slots: Vec<usize> = {
        let mut v: Vec<usize> = lay.pairs.iter().flat_map(|&(a, b)| [a, b]).collect();
        v.sort_unstable();
        v.dedup();
        v
    };
    let k = slots.len();
    (0..(1u64 << k)).any(|mask| {
        let sg = |a: usize| {
            let i = slots.iter().position(|&s| s == a).unwrap();
            if (mask >> i) & 1 == 1 {
                -1.0
            } else {
                1.0
            }
        };
        lay.pairs
            .iter()
            .enumerate()
            .all(|(p, &(a, b))| (f[p] * (sg(a) * sg(b)) - g[p]).norm() < tol)
    })
}

/// Multi-start solve for the split corrections; returns candidates passing
/// unitarity, the modular relation, Verlinde integrality and balancing.
fn solve_split(
    lay: &Layout,
    labels: &[SimpleLabel],
    dim: f64,
    seed: u64,
    starts: usize,
) -> Result<Vec<(Vec<Complex64>, ModularData)>> {
    if lay.pairs.is_empty() {
        let md = to_md(lay, &[], labels, "condensed")?;
        return Ok(vec![(vec![], md)]);
    }
    let prob = SplitProblem { lay, dim };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let scale = dim.sqrt() / 2.0;
    let opts = LmOptions {
        max_iter: 300,
        target: 1e-13,
    };
    let mut out: Vec<(Vec<Complex64>, ModularData)> = Vec::new();
    for _ in 0..starts {
        let mut x0: Vec<f64> = (0..2 * lay.pairs.len())
            .map(|_| rng.gen_range(-scale..scale))
            .collect();
        x0.push(rng.gen_range(-PI..PI));
        let res = levenberg_marquardt(&prob, &x0, &opts);
        if res.max_residual > 1e-9 {
            continue;
        }
        let (f, _) = prob.unpack(&res.x);
        if out
            .iter()
            .any(|(g, _)| gauge_equal(lay, &f, g, 1e-6 * scale))
        {
            continue;
        }
        let md = to_md(lay, &f, labels, "condensed")?;
        if !verify_modular(&md, tol::VERIFY).pass {
            continue;
        }
        let Ok(fusion) = verlinde_fusion(&md, tol::INTEGER) else {
            continue;
        };
        if balancing_check(&md, &fusion) > tol::VERIFY {
            continue;
        }
        out.push((f, md));
    }
    out.sort_by(|a, b| {
        let ka: Vec<(f64, f64)> = a.0.iter().map(|z| (z.re, z.im)).collect();
        let kb: Vec<(f64, f64)> = b.0.iter().map(|z| (z.re, z.im)).collect();
        ka.partial_cmp(&kb).unwrap_or(std::cmp::Ordering::Equal)
    });
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct CondenseOptions {
    pub seed: u64,
    pub starts: usize,
}

impl Default for CondenseOptions {
    fn default() -> Self {
        CondenseOptions {
            seed: 0,
            starts: 64,
        }
    }
}

pub fn condense(
    md: &ModularData,
    h: &TannakianSubgroup,
    opts: &CondenseOptions,
) -> Result<CondensationResult> {
    let hl = &h.labels;
    let order = hl.len();
    let centr = centralizer(md, hl);
    let orbits = orbit_decomposition(md, hl, &centr)?;
    if let Some(o) = orbits.iter().find(|o| o.split > 2) {
        return Err(Error::Unsupported(format!(
            "stabilizer of order {} at label {}",
            o.split,
            md.labels[o.members[0]].name()
        )));
    }
    // condensed labels
    let mut labels = Vec::new();
    let mut provenance = Vec::new();
    let mut sign = Vec::new();
    let mut fixed_elem = Vec::new();
    for (oi, o) in orbits.iter().enumerate() {
        let rep = md.labels[o.members[0]].name();
        if o.split == 1 {
            labels.push(SimpleLabel::Named(format!("F({rep})")));
            provenance.push((oi, 0));
            sign.push(None);
        } else {
            let slot = fixed_elem.len();
            fixed_elem.push(*o.stabilizer.iter().find(|&&g| g != 0).unwrap());
            for p in 0..2 {
                labels.push(SimpleLabel::Named(format!("({rep})_{}", p + 1)));
                provenance.push((oi, p));
                sign.push(Some((slot, if p == 0 { 1.0 } else { -1.0 })));
            }
        }
    }
    let r = labels.len();
    let rep_of = |i: usize| orbits[provenance[i].0].members[0];
    let split_of = |i: usize| orbits[provenance[i].0].split as f64;
    let mean = CMat::from_fn(r, r, |i, j| {
        md.s[(rep_of(i), rep_of(j))] / (split_of(i) * split_of(j))
    });
    let t: Vec<Complex64> = (0..r).map(|i| md.t[rep_of(i)]).collect();
    let mut pairs = Vec::new();
    for a in 0..fixed_elem.len() {
        for b in a..fixed_elem.len() {
            if fixed_elem[a] == fixed_elem[b] {
                pairs.push((a, b));
            }
        }
    }
    let lay = Layout {
        mean,
        t,
        sign,
        pairs,
    };
    let dim_target = md.global_dim() / (order * order) as f64;

    let mut unresolved = Vec::new();
    let candidates = match factor_layout(md, &orbits, &provenance, &lay) {
        Some((pidx, didx, build)) => {
            let sub = lay.restrict(&didx);
            let dlabels: Vec<SimpleLabel> = didx.iter().map(|&i| labels[i].clone()).collect();
            let dd = dim_target / pidx.len() as f64;
            let subs = solve_split(&sub, &dlabels, dd, opts.seed, opts.starts)?;
            let mut out = Vec::new();
            for (_, dmd) in subs {
                let s = build(&lay.mean, &dmd.s);
                let mut full = ModularData::from_st("condensed", labels.clone(), s, lay.t.clone())?;
                full.t = lay.t.clone();
                if verify_modular(&full, tol::VERIFY).pass {
                    out.push(full);
                }
            }
            out
        }
        None => solve_split(&lay, &labels, dim_target, opts.seed, opts.starts)?
            .into_iter()
            .map(|(_, m)| m)
            .collect(),
    };
    if candidates.is_empty() {
        return Err(Error::Verification(
            "no condensed S-matrix satisfies the modular constraints".into(),
        ));
    }
    if candidates.len() > 1 {
        unresolved.push(format!(
            "{} inequivalent condensed S-matrices survive",
            candidates.len()
        ));
    }
    let mut survivors = Vec::new();
    for mut c in candidates {
        c.name = format!("{} condensed by {:?}", md.name, h.group_type);
        c.t_turns = (0..r).map(|i| md.t_turns[rep_of(i)]).collect();
        c.dims_exact = (0..r)
            .map(|i| {
                md.dims_exact[rep_of(i)]
                    .map(|d| d.scale(Q::new(1, orbits[provenance[i].0].split as i64)))
            })
            .collect();
        let gd = c.global_dim();
        if (gd - dim_target).abs() > 1e-6 * md.global_dim() {
            return Err(Error::Verification(format!(
                "condensed global dimension {gd} differs from {dim_target}"
            )));
        }
        survivors.push(c);
    }
    Ok(CondensationResult {
        parent: md.name.clone(),
        subgroup: h.clone(),
        centralizer: centr,
        orbits,
        condensed: survivors[0].clone(),
        provenance,
        survivors,
        unresolved,
    })
}

type Builder = Box<dyn Fn(&CMat, &CMat) -> CMat>;

/// When the free invertible condensed labels form a modular pointed part,
/// return (pointed labels, complement labels, assembler of the full `S`
/// from the complement's `S`).
fn factor_layout(
    md: &ModularData,
    orbits: &[Orbit],
    provenance: &[(usize, usize)],
    lay: &Layout,
) -> Option<(Vec<usize>, Vec<usize>, Builder)> {
    let r = lay.mean.nrows();
    let dims: Vec<f64> = (0..r).map(|i| lay.mean[(0, i)].re).collect();
    let pidx: Vec<usize> = (0..r)
        .filter(|&i| lay.sign[i].is_none() && (dims[i] - 1.0).abs() < 1e-8)
        .collect();
    let p = pidx.len();
    if p < 2 {
        return None;
    }
    let sp = CMat::from_fn(p, p, |a, b| lay.mean[(pidx[a], pidx[b])]);
    let gram = &sp * sp.adjoint() - CMat::identity(p, p) * Complex64::new(p as f64, 0.0);
    if gram.iter().any(|z| z.norm() > 1e-8) {
        return None;
    }
    let didx: Vec<usize> = (0..r)
        .filter(|&x| {
            pidx.iter()
                .all(|&g| (lay.mean[(g, x)] - dims[x]).norm() < 1e-7)
        })
        .collect();
    if didx.len() * p != r {
        return None;
    }
    // orbit containing each parent label
    let mut orbit_of = vec![usize::MAX; md.rank()];
    for (oi, o) in orbits.iter().enumerate() {
        for &m in &o.members {
            orbit_of[m] = oi;
        }
    }
    // decompose every condensed label as g ⊗ y
    let mut decomp = vec![(usize::MAX, usize::MAX); r];
    for (ga, &g) in pidx.iter().enumerate() {
        let gp = invertible_perm(md, orbits[provenance[g].0].members[0]).ok()?;
        for (ya, &y) in didx.iter().enumerate() {
            let target = orbit_of[gp[orbits[provenance[y].0].members[0]]];
            let part = provenance[y].1;
            let z = (0..r).find(|&z| provenance[z] == (target, part))?;
            if decomp[z].0 != usize::MAX {
                return None;
            }
            decomp[z] = (ga, ya);
        }
    }
    if decomp.iter().any(|d| d.0 == usize::MAX) {
        return None;
    }
    let pcl = pidx.clone();
    let build: Builder = Box::new(move |mean: &CMat, sd: &CMat| {
        let sp = CMat::from_fn(p, p, |a, b| mean[(pcl[a], pcl[b])]);
        CMat::from_fn(r, r, |i, j| {
            let (gi, yi) = decomp[i];
            let (gj, yj) = decomp[j];
            sp[(gi, gj)] * sd[(yi, yj)]
        })
    });
    Some((pidx, didx, build))
}

/// Split modular data into its pointed part and the centralizer of that part
/// when the pointed part is modular and `S` factors as an outer product.
pub fn factor_pointed(md: &ModularData) -> Result<Option<(ModularData, ModularData)>> {
    let pidx = md.invertibles();
    let p = pidx.len();
    if p < 2 {
        return Ok(None);
    }
    let sp = CMat::from_fn(p, p, |a, b| md.s[(pidx[a], pidx[b])]);
    let gram = &sp * sp.adjoint() - CMat::identity(p, p) * Complex64::new(p as f64, 0.0);
    if gram.iter().any(|z| z.norm() > 1e-7) {
        return Ok(None);
    }
    let didx = centralizer(md, &pidx);
    if didx.len() * p != md.rank() {
        return Ok(None);
    }
    let perms: Vec<Vec<usize>> = pidx
        .iter()
        .map(|&g| invertible_perm(md, g))
        .collect::<Result<_>>()?;
    let scale = md.global_dim().sqrt();
    for (a, &g) in pidx.iter().enumerate() {
        for (b, &h) in pidx.iter().enumerate() {
            for &y in &didx {
                for &z in &didx {
                    let v = md.s[(perms[a][y], perms[b][z])];
                    if (v - md.s[(g, h)] * md.s[(y, z)]).norm() > 1e-7 * scale {
                        return Ok(None);
                    }
                }
            }
        }
    }
    let pointed = md.restrict(&pidx, &format!("{} pointed factor", md.name));
    let comp = md.restrict(&didx, &format!("{} complement", md.name));
    Ok(Some((pointed, comp)))
}
