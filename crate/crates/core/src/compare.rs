//! Matching modular data up to relabeling and Galois conjugation.

use crate::error::{Error, Result};
use crate::modular::{galois_action, ModularData};
use num_complex::Complex64;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatchReport {
    pub matched: bool,
    /// `permutation[i]` is the candidate label sent to reference label `i`
    pub permutation: Vec<usize>,
    /// `(conductor, exponent)` of `ζ_N ↦ ζ_N^k`; `None` for the identity
    pub galois: Option<(i64, i64)>,
    pub max_deviation: f64,
    pub diagnostics: Vec<String>,
}

impl MatchReport {
    /// `Err(Mismatch)` unless matched.
    pub fn into_result(self) -> Result<MatchReport> {
        if self.matched {
            Ok(self)
        } else {
            Err(Error::Mismatch(self.diagnostics.join("; ")))
        }
    }
}

fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol * b.norm().max(1.0)
}

fn sorted_abs_row(md: &ModularData, i: usize) -> Vec<f64> {
    let mut v: Vec<f64> = (0..md.rank()).map(|j| md.s[(i, j)].norm()).collect();
    v.sort_by(f64::total_cmp);
    v
}

struct Search<'a> {
    cand: &'a ModularData,
    refd: &'a ModularData,
    tol: f64,
    options: Vec<Vec<usize>>,
    order: Vec<usize>,
    assign: Vec<usize>,
    used: Vec<bool>,
}

impl Search<'_> {
    fn consistent(&self, i: usize, c: usize, depth: usize) -> bool {
        if !close(self.cand.s[(c, c)], self.refd.s[(i, i)], self.tol) {
            return false;
        }
        self.order[..depth].iter().all(|&j| {
            let cj = self.assign[j];
            close(self.cand.s[(c, cj)], self.refd.s[(i, j)], self.tol)
        })
    }

    fn run(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let i = self.order[depth];
        for k in 0..self.options[i].len() {
            let c = self.options[i][k];
            if self.used[c] || !self.consistent(i, c, depth) {
                continue;
            }
            self.used[c] = true;
            self.assign[i] = c;
            if self.run(depth + 1) {
                return true;
            }
            self.used[c] = false;
        }
        false
    }
}

/// Find a label permutation taking `cand` onto `refd` exactly (within
/// `tol`, relative for large entries).
fn match_labels(cand: &ModularData, refd: &ModularData, tol: f64) -> (Option<Vec<usize>>, String) {
    let r = refd.rank();
    let rows_c: Vec<Vec<f64>> = (0..r).map(|i| sorted_abs_row(cand, i)).collect();
    let rows_r: Vec<Vec<f64>> = (0..r).map(|i| sorted_abs_row(refd, i)).collect();
    let options: Vec<Vec<usize>> = (0..r)
        .map(|i| {
            (0..r)
                .filter(|&c| {
                    close(cand.t[c], refd.t[i], tol)
                        && (cand.dims[c] - refd.dims[i]).abs() <= tol * refd.dims[i].abs().max(1.0)
                        && rows_c[c]
                            .iter()
                            .zip(&rows_r[i])
                            .all(|(a, b)| (a - b).abs() <= tol * b.max(1.0))
                })
                .collect()
        })
        .collect();
    if let Some(i) = (0..r).find(|&i| options[i].is_empty()) {
        return (
            None,
            format!(
                "reference label {} (dim {:.6}, twist {:.6}) has no candidate with equal invariants",
                refd.labels[i].name(),
                refd.dims[i],
                refd.t[i].arg() / (2.0 * std::f64::consts::PI)
            ),
        );
    }
    let mut order: Vec<usize> = (0..r).collect();
    order.sort_by_key(|&i| (options[i].len(), i));
    let mut s = Search {
        cand,
        refd,
        tol,
        options,
        order,
        assign: vec![usize::MAX; r],
        used: vec![false; r],
    };
    if s.run(0) {
        (Some(s.assign), String::new())
    } else {
        let sizes: Vec<usize> = s.options.iter().map(|o| o.len()).collect();
        (
            None,
            format!("invariant buckets align (sizes {sizes:?}) but no consistent permutation"),
        )
    }
}

fn deviation(cand: &ModularData, refd: &ModularData, perm: &[usize]) -> f64 {
    let r = refd.rank();
    let mut worst = 0f64;
    for i in 0..r {
        worst = worst.max((cand.t[perm[i]] - refd.t[i]).norm());
        for j in 0..r {
            worst = worst.max((cand.s[(perm[i], perm[j])] - refd.s[(i, j)]).norm());
        }
    }
    worst
}

/// Search Galois exponents (when allowed) and label permutations for an
/// exact match of `(S, T)`. The identity exponent is tried first.
pub fn compare_modular_data(
    cand: &ModularData,
    refd: &ModularData,
    allow_galois: bool,
    tol: f64,
) -> Result<MatchReport> {
    if cand.rank() != refd.rank() {
        return Err(Error::Mismatch(format!(
            "rank mismatch: {} vs {}",
            cand.rank(),
            refd.rank()
        )));
    }
    let mut diagnostics = Vec::new();
    let (perm, why) = match_labels(cand, refd, tol);
    if let Some(p) = perm {
        return Ok(MatchReport {
            matched: true,
            max_deviation: deviation(cand, refd, &p),
            permutation: p,
            galois: None,
            diagnostics,
        });
    }
    diagnostics.push(format!("identity: {why}"));
    if allow_galois {
        match cand.t_order() {
            None => {
                diagnostics.push("candidate T has no finite order; Galois search skipped".into())
            }
            Some(n) => {
                for k in 2..n {
                    if k.gcd(&n) != 1 {
                        continue;
                    }
                    let conj = match galois_action(cand, k) {
                        Ok((_, c)) => c,
                        Err(e) => {
                            diagnostics.push(format!("k={k}: {e}"));
                            continue;
                        }
                    };
                    let (perm, why) = match_labels(&conj, refd, tol);
                    if let Some(p) = perm {
                        return Ok(MatchReport {
                            matched: true,
                            max_deviation: deviation(&conj, refd, &p),
                            permutation: p,
                            galois: Some((n, k)),
                            diagnostics,
                        });
                    }
                    diagnostics.push(format!("k={k}: {why}"));
                }
            }
        }
    }
    Ok(MatchReport {
        matched: false,
        permutation: Vec::new(),
        galois: None,
        max_deviation: f64::INFINITY,
        diagnostics,
    })
}
