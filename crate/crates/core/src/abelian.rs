//! Finite abelian groups as products of cyclic factors, bicharacters and
//! quadratic forms with exact rational phases.

use crate::error::{Error, Result};
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

pub type Q = Ratio<i64>;

/// Reduce a rational modulo `m` into `[0, m)`.
pub fn reduce_mod(q: Q, m: i64) -> Q {
    let m = Q::from_integer(m);
    let f = (q / m).floor();
    q - f * m
}

/// `exp(πi r)`.
pub fn cis_pi(r: Q) -> Complex64 {
    let r = reduce_mod(r, 2);
    let x = PI * (*r.numer() as f64) / (*r.denom() as f64);
    Complex64::new(x.cos(), x.sin())
}

/// `exp(2πi t)`.
pub fn cis_turn(t: Q) -> Complex64 {
    cis_pi(t * 2)
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GroupSpec {
    pub factors: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GroupElement {
    pub residues: Vec<i64>,
}

impl GroupSpec {
    pub fn new(factors: Vec<i64>) -> Result<Self> {
        if factors.is_empty() {
            return Ok(GroupSpec { factors: vec![1] });
        }
        if factors.iter().any(|&f| f < 1) {
            return Err(Error::InvalidInput(format!(
                "cyclic factors must be positive, got {factors:?}"
            )));
        }
        let n: i64 = factors.iter().product();
        if n > 4096 {
            return Err(Error::InvalidInput(format!("group order {n} too large")));
        }
        Ok(GroupSpec { factors })
    }

    pub fn cyclic(n: i64) -> Self {
        GroupSpec { factors: vec![n] }
    }

    pub fn order(&self) -> usize {
        self.factors.iter().product::<i64>() as usize
    }

    /// Least common multiple of the factors.
    pub fn exponent(&self) -> i64 {
        self.factors.iter().fold(1, |a, &b| a.lcm(&b))
    }

    /// Element with the given lexicographic index (last factor fastest).
    pub fn element(&self, mut idx: usize) -> GroupElement {
        let mut residues = vec![0; self.factors.len()];
        for (r, &f) in residues.iter_mut().zip(&self.factors).rev() {
            *r = (idx % f as usize) as i64;
            idx /= f as usize;
        }
        GroupElement { residues }
    }

    pub fn index(&self, e: &GroupElement) -> usize {
        let mut idx = 0usize;
        for (&r, &f) in e.residues.iter().zip(&self.factors) {
            idx = idx * f as usize + r.rem_euclid(f) as usize;
        }
        idx
    }

    pub fn elements(&self) -> Vec<GroupElement> {
        (0..self.order()).map(|i| self.element(i)).collect()
    }

    pub fn check(&self, e: &GroupElement) -> Result<()> {
        if e.residues.len() != self.factors.len() {
            return Err(Error::InvalidInput(format!(
                "element {:?} has wrong length for group {:?}",
                e.residues, self.factors
            )));
        }
        Ok(())
    }
}

/// Group with cached addition and negation tables over element indices.
#[derive(Clone, Debug)]
pub struct Group {
    pub spec: GroupSpec,
    pub elems: Vec<GroupElement>,
    add: Vec<usize>,
    neg: Vec<usize>,
}

impl Group {
    pub fn new(spec: &GroupSpec) -> Self {
        let n = spec.order();
        let elems = spec.elements();
        let mut add = vec![0; n * n];
        let mut neg = vec![0; n];
        for i in 0..n {
            for j in 0..n {
                let r: Vec<i64> = elems[i]
                    .residues
                    .iter()
                    .zip(&elems[j].residues)
                    .zip(&spec.factors)
                    .map(|((a, b), f)| (a + b) % f)
                    .collect();
                add[i * n + j] = spec.index(&GroupElement { residues: r });
            }
            let r: Vec<i64> = elems[i]
                .residues
                .iter()
                .zip(&spec.factors)
                .map(|(a, f)| (f - a) % f)
                .collect();
            neg[i] = spec.index(&GroupElement { residues: r });
        }
        Group {
            spec: spec.clone(),
            elems,
            add,
            neg,
        }
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    #[inline]
    pub fn add(&self, i: usize, j: usize) -> usize {
        self.add[i * self.elems.len() + j]
    }

    #[inline]
    pub fn neg(&self, i: usize) -> usize {
        self.neg[i]
    }

    #[inline]
    pub fn sub(&self, i: usize, j: usize) -> usize {
        self.add(i, self.neg[j])
    }

    /// Order of the element with index `i`.
    pub fn element_order(&self, i: usize) -> usize {
        let mut k = 1;
        let mut x = i;
        while x != 0 {
            x = self.add(x, i);
            k += 1;
        }
        k
    }

    /// All automorphisms as permutations of element indices.
    pub fn automorphisms(&self) -> Vec<Vec<usize>> {
        let r = self.spec.factors.len();
        let n = self.order();
        let gens: Vec<usize> = (0..r)
            .map(|k| {
                let mut res = vec![0; r];
                res[k] = 1 % self.spec.factors[k];
                self.spec.index(&GroupElement { residues: res })
            })
            .collect();
        // candidate images per generator: orders dividing the factor
        let choices: Vec<Vec<usize>> = (0..r)
            .map(|k| {
                (0..n)
                    .filter(|&g| {
                        (self.spec.factors[k] as usize).is_multiple_of(self.element_order(g))
                    })
                    .collect()
            })
            .collect();
        let _ = gens;
        let mut out = Vec::new();
        let mut pick = vec![0usize; r];
        loop {
            let images: Vec<usize> = (0..r).map(|k| choices[k][pick[k]]).collect();
            let perm: Vec<usize> = (0..n)
                .map(|x| {
                    let mut acc = 0;
                    for (k, &c) in self.elems[x].residues.iter().enumerate() {
                        for _ in 0..c {
                            acc = self.add(acc, images[k]);
                        }
                    }
                    acc
                })
                .collect();
            let mut seen = vec![false; n];
            if perm.iter().all(|&p| !std::mem::replace(&mut seen[p], true)) {
                out.push(perm);
            }
            let mut k = 0;
            loop {
                if k == r {
                    return out;
                }
                pick[k] += 1;
                if pick[k] < choices[k].len() {
                    break;
                }
                pick[k] = 0;
                k += 1;
            }
        }
    }
}

pub fn enumerate_elements(spec: &GroupSpec) -> Vec<GroupElement> {
    spec.elements()
}

/// Symmetric bicharacter `<x,y> = exp(2πi Σ e_ij x_i y_j)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bicharacter {
    pub group: GroupSpec,
    pub exponents: Vec<Vec<Q>>,
}

impl Bicharacter {
    pub fn new(group: GroupSpec, exponents: Vec<Vec<Q>>) -> Result<Self> {
        let r = group.factors.len();
        if exponents.len() != r || exponents.iter().any(|row| row.len() != r) {
            return Err(Error::InvalidInput(format!(
                "exponent matrix must be {r}x{r}"
            )));
        }
        for i in 0..r {
            for j in 0..r {
                let e = exponents[i][j];
                let ni = Q::from_integer(group.factors[i]);
                let nj = Q::from_integer(group.factors[j]);
                if !(e * ni).is_integer() || !(e * nj).is_integer() {
                    return Err(Error::InvalidInput(format!(
                        "exponent ({i},{j}) = {e} not well defined modulo the factor orders"
                    )));
                }
                if !(e - exponents[j][i]).is_integer() {
                    return Err(Error::InvalidInput(format!(
                        "exponent matrix not symmetric at ({i},{j})"
                    )));
                }
            }
        }
        let exponents = exponents
            .into_iter()
            .map(|row| row.into_iter().map(|e| reduce_mod(e, 1)).collect())
            .collect();
        Ok(Bicharacter { group, exponents })
    }

    /// Cyclic pairing `exp(2πi m xy / n)` on `Z/n`.
    pub fn cyclic(n: i64, m: i64) -> Self {
        Bicharacter::new(GroupSpec::cyclic(n), vec![vec![Q::new(m, n)]])
            .expect("cyclic pairing is well defined")
    }

    /// Pairing value as turns in `[0,1)`.
    pub fn turns(&self, x: &GroupElement, y: &GroupElement) -> Q {
        let mut t = Q::from_integer(0);
        for (i, xi) in x.residues.iter().enumerate() {
            for (j, yj) in y.residues.iter().enumerate() {
                t += self.exponents[i][j] * (xi * yj);
            }
        }
        reduce_mod(t, 1)
    }

    pub fn eval(&self, x: &GroupElement, y: &GroupElement) -> Result<Complex64> {
        self.group.check(x)?;
        self.group.check(y)?;
        Ok(cis_turn(self.turns(x, y)))
    }

    /// Table of pairing turns over element indices.
    pub fn turn_table(&self) -> Vec<Vec<Q>> {
        let el = self.group.elements();
        el.iter()
            .map(|x| el.iter().map(|y| self.turns(x, y)).collect())
            .collect()
    }

    pub fn is_nondegenerate(&self) -> bool {
        let t = self.turn_table();
        let zero = Q::from_integer(0);
        (1..t.len()).all(|x| t[x].iter().any(|&v| v != zero))
    }
}

pub fn pairing_eval(b: &Bicharacter, x: &GroupElement, y: &GroupElement) -> Result<Complex64> {
    b.eval(x, y)
}

/// Quadratic form `a(x) = exp(πi r(x))`, with `r` stored modulo 2.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadraticForm {
    pub phases: Vec<Q>,
}

impl QuadraticForm {
    pub fn eval(&self, i: usize) -> Complex64 {
        cis_pi(self.phases[i])
    }

    pub fn values(&self) -> Vec<Complex64> {
        (0..self.phases.len()).map(|i| self.eval(i)).collect()
    }

    /// Exact check of `a(0)=1`, `a(-x)=a(x)` and `a(x+y)<x,y> = a(x)a(y)`.
    pub fn satisfies(&self, b: &Bicharacter) -> bool {
        let g = Group::new(&b.group);
        let n = g.order();
        if self.phases.len() != n || !reduce_mod(self.phases[0], 2).is_integer() {
            return false;
        }
        if reduce_mod(self.phases[0], 2) != Q::from_integer(0) {
            return false;
        }
        let t = b.turn_table();
        for x in 0..n {
            if reduce_mod(self.phases[x] - self.phases[g.neg(x)], 2) != Q::from_integer(0) {
                return false;
            }
            for y in 0..n {
                let lhs = self.phases[g.add(x, y)] + t[x][y] * 2;
                let rhs = self.phases[x] + self.phases[y];
                if reduce_mod(lhs - rhs, 2) != Q::from_integer(0) {
                    return false;
                }
            }
        }
        true
    }
}

/// All quadratic forms refining `b` with phase denominators dividing
/// `2·exponent(G)`.
pub fn quadratic_forms_for(b: &Bicharacter) -> Vec<QuadraticForm> {
    let g = Group::new(&b.group);
    let n = g.order();
    let r = b.group.factors.len();
    let den = 2 * b.group.exponent();
    let t = b.turn_table();
    let gens: Vec<usize> = (0..r)
        .map(|k| {
            let mut res = vec![0; r];
            res[k] = 1 % b.group.factors[k];
            b.group.index(&GroupElement { residues: res })
        })
        .collect();
    let steps = 2 * den;
    let mut out = Vec::new();
    let mut pick = vec![0i64; r];
    loop {
        let gen_r: Vec<Q> = pick.iter().map(|&k| Q::new(k, den)).collect();
        // propagate a(x+e) = a(x) a(e) conj<x,e> along lexicographic order
        let mut ph: Vec<Option<Q>> = vec![None; n];
        ph[0] = Some(Q::from_integer(0));
        let mut ok = true;
        for x in 0..n {
            let Some(px) = ph[x] else {
                continue;
            };
            for k in 0..r {
                let e = gens[k];
                let y = g.add(x, e);
                let v = reduce_mod(px + gen_r[k] - t[x][e] * 2, 2);
                match ph[y] {
                    None => ph[y] = Some(v),
                    Some(w) if w != v => {
                        ok = false;
                    }
                    _ => {}
                }
            }
        }
        if ok && ph.iter().all(|p| p.is_some()) {
            let q = QuadraticForm {
                phases: ph.into_iter().map(|p| p.unwrap()).collect(),
            };
            if q.satisfies(b) {
                out.push(q);
            }
        }
        let mut k = 0;
        loop {
            if k == r {
                return out;
            }
            pick[k] += 1;
            if pick[k] < steps {
                break;
            }
            pick[k] = 0;
            k += 1;
        }
    }
}

pub fn gauss_sum(a: &QuadraticForm) -> Complex64 {
    a.values().iter().sum()
}
