//! Modular data of the Drinfeld center of a near-group category.

use crate::abelian::{reduce_mod, Group, Q};
use crate::error::{Error, Result};
use crate::halfbraid::{expected_count, omega_value, HalfBraidingTriple};
use crate::modular::{CMat, ModularData, SimpleLabel};
use crate::neargroup::NearGroupData;
use crate::quadratic::QuadIrr;
use num_complex::Complex64;
use num_traits::Zero;

/// Assemble `S` and `T` of the center. Label order: `A` block, `B` block,
/// `C(k,l)` with `k<l` lexicographically, then `D` in triple order.
pub fn build_center(data: &NearGroupData, triples: &[HalfBraidingTriple]) -> Result<ModularData> {
    let n = data.n();
    if triples.len() != expected_count(&data.group) {
        return Err(Error::InvalidInput(format!(
            "{} triples given, {} required",
            triples.len(),
            expected_count(&data.group)
        )));
    }
    let g = Group::new(&data.group);
    let tt = data.bichar.turn_table();
    let pr: Vec<Vec<Complex64>> = tt
        .iter()
        .map(|row| row.iter().map(|&t| crate::abelian::cis_turn(t)).collect())
        .collect();
    let a = data.a.values();
    let c = data.c();
    let c6 = c.powi(6);
    let df = data.dim();
    let dq = data.d;

    let mut labels = Vec::new();
    let mut dims_exact = Vec::new();
    let mut t_turns: Vec<Option<Q>> = Vec::new();
    for x in 0..n {
        labels.push(SimpleLabel::A(x));
        dims_exact.push(QuadIrr::int(1));
        t_turns.push(Some(tt[x][x]));
    }
    for x in 0..n {
        labels.push(SimpleLabel::B(x));
        dims_exact.push(dq + QuadIrr::int(1));
        t_turns.push(Some(tt[x][x]));
    }
    for k in 0..n {
        for l in k + 1..n {
            labels.push(SimpleLabel::C(k, l));
            dims_exact.push(dq + QuadIrr::int(2));
            t_turns.push(Some(tt[k][l]));
        }
    }
    for (j, tr) in triples.iter().enumerate() {
        labels.push(SimpleLabel::D(j));
        dims_exact.push(dq);
        t_turns.push(tr.omega_turns);
    }
    let r = labels.len();
    let t: Vec<Complex64> = (0..r)
        .map(|i| match (&labels[i], t_turns[i]) {
            (SimpleLabel::D(j), None) => triples[*j].omega,
            (_, Some(q)) => crate::abelian::cis_turn(q),
            _ => unreachable!(),
        })
        .collect();

    let entry = |x: &SimpleLabel, y: &SimpleLabel| -> Complex64 {
        use SimpleLabel::*;
        match (x, y) {
            (A(p), A(q)) | (B(p), B(q)) => pr[*p][*q].powi(-2),
            (A(p), B(q)) | (B(p), A(q)) => pr[*p][*q].powi(-2) * (df + 1.0),
            (A(p), C(k, l)) | (B(p), C(k, l)) | (C(k, l), A(p)) | (C(k, l), B(p)) => {
                pr[*p][g.add(*k, *l)].conj() * (df + 2.0)
            }
            (A(p), D(j)) | (D(j), A(p)) => pr[*p][triples[*j].tau] * df,
            (B(p), D(j)) | (D(j), B(p)) => -pr[*p][triples[*j].tau] * df,
            (C(k, l), C(k2, l2)) => {
                ((pr[*k][*k2] * pr[*l][*l2]).conj() + (pr[*k][*l2] * pr[*l][*k2]).conj())
                    * (df + 2.0)
            }
            (C(..), D(_)) | (D(_), C(..)) => Complex64::zero(),
            (D(i), D(j)) => {
                let (s1, s2) = (&triples[*i], &triples[*j]);
                let (w1, w2) = (omega_value(s1), omega_value(s2));
                let (t1, t2) = (s1.tau, s2.tau);
                let t12 = g.add(t1, t2);
                let first: Complex64 = (0..n).map(|h| pr[g.add(t12, h)][h]).sum();
                let delta = g.sub(t1, t2);
                let mut second = Complex64::zero();
                for u in 0..n {
                    let mut inner = Complex64::zero();
                    for h in 0..n {
                        inner += s1.xi[h] * s2.xi[g.add(h, u)];
                    }
                    second += (inner * pr[g.add(delta, u)][u]).conj();
                }
                w1 * w2 * (first + second * c6 * a[t1] * a[t2] * (df / n as f64))
            }
            _ => unreachable!(),
        }
    };
    let mut s = CMat::zeros(r, r);
    for i in 0..r {
        for j in i..r {
            let v = entry(&labels[i], &labels[j]);
            s[(i, j)] = v;
            s[(j, i)] = v;
        }
    }
    Ok(ModularData {
        name: format!("center of near-group {:?}+{n}", data.group.factors),
        dims: dims_exact.iter().map(|d| d.to_f64()).collect(),
        dims_exact: dims_exact.into_iter().map(Some).collect(),
        labels,
        s,
        t,
        t_turns: t_turns
            .into_iter()
            .map(|q| q.map(|q| reduce_mod(q, 1)))
            .collect(),
    })
}
