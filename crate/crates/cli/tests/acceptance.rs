//! Acceptance suite. Prints one PASS/FAIL line per criterion followed by
//! its individual checks, and exits nonzero when any criterion fails.
//! Independent oracles (Fibonacci product ring, affine Weyl fusion for sl3,
//! brute-force label bijections) live in this file.

use nearcenter::abelian::{quadratic_forms_for, reduce_mod, Bicharacter, GroupSpec, Q};
use nearcenter::compare::compare_modular_data;
use nearcenter::cyclo::phase_dist;
use nearcenter::halfbraid::HalfBraidingTriple;
use nearcenter::modular::{
    balancing_check, centralizer, find_tannakian_subgroups, global_dim_exact, invertible_perm,
    pointed_part, verify_modular, verlinde_fusion, FusionTensor, ModularData, SimpleLabel,
};
use nearcenter::neargroup::{feasible_pairs, residual, solve_b, NearGroupData, SolverOptions};
use nearcenter::pipeline::{run_pipeline, PipelineConfig, PipelineOutcome};
use nearcenter::quadratic::QuadIrr;
use nearcenter::reference;
use nearcenter::sl2z::{
    candidate_decompositions, catalog, spectrally_connected, verify_decomposition,
    word_trace_check, DecompositionType, IntertwinerOptions,
};
use num_complex::Complex64;
use proptest::test_runner::{Config, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::time::{Duration, Instant};

/// Residual accepted from the near-group solver.
const SOLVE_TOL: f64 = 1e-10;
/// Dimension agreement for the Fibonacci center.
const DIM_TOL: f64 = 1e-9;
/// Modular axioms and exact dimensions.
const VERIFY_TOL: f64 = 1e-8;
/// Distance from an integer in Verlinde rounding.
const INTEGER_TOL: f64 = 1e-6;
/// Agreement with printed phases (six significant digits).
const PHASE_TOL: f64 = 1e-4;
/// Agreement of matrices with printed modular data.
const MATCH_TOL: f64 = 1e-6;
/// Relative agreement of global dimensions.
const GLOBAL_DIM_TOL: f64 = 1e-6;
/// Residual accepted for an SL(2,Z) intertwiner.
const INTERTWINER_TOL: f64 = 1e-8;

struct Check {
    name: String,
    pass: bool,
    detail: String,
}

#[derive(Default)]
struct Report {
    checks: Vec<Check>,
}

impl Report {
    fn check(&mut self, name: &str, pass: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            pass,
            detail: detail.into(),
        });
    }

    fn runtime(&mut self, started: Instant, limit: Duration) {
        let el = started.elapsed();
        self.check(
            "runtime",
            el < limit,
            format!("{:.1}s (limit {}s)", el.as_secs_f64(), limit.as_secs()),
        );
    }
}

fn label_index(md: &ModularData, l: &SimpleLabel) -> usize {
    md.labels
        .iter()
        .position(|x| x == l)
        .expect("label present")
}

fn max_phase_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| phase_dist(*x, *y))
        .fold(0.0, f64::max)
}

/// Maximum bipartite matching; `adj[i]` lists the right vertices allowed for `i`.
fn bipartite_matching(adj: &[Vec<usize>], right: usize) -> Vec<Option<usize>> {
    fn augment(
        i: usize,
        adj: &[Vec<usize>],
        seen: &mut [bool],
        owner: &mut [Option<usize>],
    ) -> bool {
        for &j in &adj[i] {
            if seen[j] {
                continue;
            }
            seen[j] = true;
            if owner[j].is_none_or(|k| augment(k, adj, seen, owner)) {
                owner[j] = Some(i);
                return true;
            }
        }
        false
    }
    let mut owner = vec![None; right];
    for i in 0..adj.len() {
        augment(i, adj, &mut vec![false; right], &mut owner);
    }
    let mut out = vec![None; adj.len()];
    for (j, o) in owner.iter().enumerate() {
        if let Some(i) = o {
            out[*i] = Some(j);
        }
    }
    out
}

/// Fusion ring isomorphism by exhaustive search over bijections fixing the
/// unit; `oracle[a][b][c]` is indexed by oracle labels.
fn ring_bijection(f: &FusionTensor, oracle: &[Vec<Vec<i64>>]) -> Option<Vec<usize>> {
    let r = oracle.len();
    if f.rank != r {
        return None;
    }
    fn rec(
        k: usize,
        perm: &mut Vec<usize>,
        used: &mut [bool],
        f: &FusionTensor,
        o: &[Vec<Vec<i64>>],
    ) -> bool {
        let r = o.len();
        if k == r {
            return true;
        }
        for c in 1..r {
            if used[c] {
                continue;
            }
            perm.push(c);
            used[c] = true;
            let ok = (0..=k).all(|a| {
                (0..=k).all(|b| (0..=k).all(|x| f.get(perm[a], perm[b], perm[x]) == o[a][b][x]))
            });
            if ok && rec(k + 1, perm, used, f, o) {
                return true;
            }
            perm.pop();
            used[c] = false;
        }
        false
    }
    let mut perm = vec![0];
    let mut used = vec![false; r];
    used[0] = true;
    if rec(1, &mut perm, &mut used, f, oracle) {
        // the incremental check only covers labels placed so far; confirm all
        let all = (0..r).all(|a| {
            (0..r).all(|b| (0..r).all(|c| f.get(perm[a], perm[b], perm[c]) == oracle[a][b][c]))
        });
        all.then_some(perm)
    } else {
        None
    }
}

/// Fibonacci fusion squared: labels `(a, b)` with `a, b ∈ {1, τ}`, index `2a+b`.
fn fibonacci_squared_oracle() -> Vec<Vec<Vec<i64>>> {
    let fib = |a: usize, b: usize, c: usize| -> i64 {
        match (a, b) {
            (0, x) | (x, 0) => (x == c) as i64,
            _ => 1,
        }
    };
    (0..4)
        .map(|x| {
            (0..4)
                .map(|y| {
                    (0..4)
                        .map(|z| fib(x / 2, y / 2, z / 2) * fib(x % 2, y % 2, z % 2))
                        .collect()
                })
                .collect()
        })
        .collect()
}

/// `sl₃` fusion at level `k` by the affine Weyl reflection of the
/// Brauer-Klimyk sum; weights are Dynkin labels `(a, b)`.
fn sl3_fusion(k: i64, l: (i64, i64), m: (i64, i64)) -> BTreeMap<(i64, i64), i64> {
    // weights of the irreducible (a, b) from Gelfand-Tsetlin patterns
    let weights = |(a, b): (i64, i64)| -> Vec<(i64, i64)> {
        let (t1, t2, t3) = (a + b, b, 0);
        let mut w = Vec::new();
        for m1 in t2..=t1 {
            for m2 in t3..=t2 {
                for m0 in m2..=m1 {
                    let (r1, r2, r3) = (m0, m1 + m2, t1 + t2 + t3);
                    let (e1, e2, e3) = (r1, r2 - r1, r3 - r2);
                    w.push((e1 - e2, e2 - e3));
                }
            }
        }
        w
    };
    let big = k + 3;
    let mut out = BTreeMap::new();
    for (w1, w2) in weights(m) {
        let (mut x, mut y) = (l.0 + w1 + 1, l.1 + w2 + 1);
        let mut sign = 1;
        let mut on_wall = false;
        for _ in 0..64 {
            if x == 0 || y == 0 || x + y == big {
                on_wall = true;
                break;
            }
            if x < 0 {
                (x, y) = (-x, x + y);
            } else if y < 0 {
                (x, y) = (x + y, -y);
            } else if x + y > big {
                (x, y) = (big - y, big - x);
            } else {
                break;
            }
            sign = -sign;
        }
        if !on_wall {
            *out.entry((x - 1, y - 1)).or_insert(0) += sign;
        }
    }
    out.retain(|_, v| *v != 0);
    out
}

fn near_group_triple_k(t: &HalfBraidingTriple) -> Option<i64> {
    t.omega_turns.map(|q| {
        let k = q * 96;
        assert!(k.is_integer());
        k.to_integer().rem_euclid(48)
    })
}

struct Shared {
    z8: PipelineOutcome,
    z8_seconds: f64,
    z4z4: PipelineOutcome,
    z4z4_seconds: f64,
    /// table row (0-based) to triple index of the `ℤ/8` center
    z8_w_map: Option<Vec<usize>>,
}

fn run_preset(name: &str) -> (PipelineOutcome, f64) {
    let cfg = PipelineConfig::preset(name).expect("preset");
    let t0 = Instant::now();
    let (rep, oc) = run_pipeline(&cfg, None).expect("pipeline report");
    for s in &rep.stages {
        eprintln!("  [{name}] {} {:?} {}", s.stage, s.status, s.detail);
    }
    (oc, t0.elapsed().as_secs_f64())
}

fn criterion_1() -> Report {
    let mut r = Report::default();
    let t0 = Instant::now();
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let oracle = fibonacci_squared_oracle();
    let mut runner = TestRunner::new(Config {
        cases: 8,
        failure_persistence: None,
        ..Config::default()
    });
    let last = std::cell::RefCell::new(String::new());
    let res = runner.run(&(0u64..u64::MAX), |seed| {
        let mut cfg = PipelineConfig::preset("trivial-group").unwrap();
        cfg.seed = seed;
        let (_, oc) = run_pipeline(&cfg, None).unwrap();
        let data = oc
            .data
            .as_ref()
            .ok_or_else(|| proptest::test_runner::TestCaseError::fail("no solution"))?;
        let res = residual(data);
        proptest::prop_assert!(res <= SOLVE_TOL, "residual {res:e}");
        let md = oc.center.as_ref().unwrap();
        proptest::prop_assert_eq!(md.rank(), 4);
        let mut dims = md.dims.clone();
        dims.sort_by(f64::total_cmp);
        let want = [1.0, phi, phi, phi * phi];
        for (a, b) in dims.iter().zip(want) {
            proptest::prop_assert!((a - b).abs() <= DIM_TOL, "dims {dims:?}");
        }
        let rep = verify_modular(md, VERIFY_TOL);
        proptest::prop_assert!(rep.pass, "{:?}", rep.failures);
        let f = verlinde_fusion(md, INTEGER_TOL).unwrap();
        proptest::prop_assert!(balancing_check(md, &f) <= VERIFY_TOL);
        let perm = ring_bijection(&f, &oracle);
        proptest::prop_assert!(perm.is_some(), "fusion ring differs from Fibonacci squared");
        *last.borrow_mut() = format!(
            "seed {seed}: residual {res:.1e}, dims {dims:.6?}, bijection {:?}",
            perm.unwrap()
        );
        Ok(())
    });
    r.check(
        "8 random seeds: residual, rank 4, dims, modularity, Verlinde = Fib x Fib",
        res.is_ok(),
        match res {
            Ok(()) => last.into_inner(),
            Err(e) => e.to_string(),
        },
    );
    r.runtime(t0, Duration::from_secs(5));
    r
}

fn criterion_2() -> Report {
    let mut r = Report::default();
    let t0 = Instant::now();
    let spec = GroupSpec::cyclic(8);
    let opts = SolverOptions::default();
    let rows = reference::z8_b_phase_rows();
    let mut cache: BTreeMap<(i64, Q), Vec<NearGroupData>> = BTreeMap::new();
    for row in &rows {
        let sols = cache.entry((row.m, row.c_turns)).or_insert_with(|| {
            let b = Bicharacter::cyclic(8, row.m);
            let mut out = Vec::new();
            for (a, c) in feasible_pairs(&spec, &b).unwrap() {
                if c == row.c_turns {
                    out.extend(solve_b(&spec, &b, &a, c, &opts).unwrap());
                }
            }
            out
        });
        let best = sols
            .iter()
            .map(|s| {
                let ph: Vec<f64> = (1..=4).map(|x| s.b[x].arg()).collect();
                (max_phase_dist(&ph, &row.j), residual(s))
            })
            .min_by(|a, b| a.0.total_cmp(&b.0));
        let (dev, res) = best.unwrap_or((f64::INFINITY, f64::INFINITY));
        r.check(
            &format!(
                "{} (m={}, c={} turns) recovered",
                row.id, row.m, row.c_turns
            ),
            dev <= PHASE_TOL && res <= SOLVE_TOL,
            format!(
                "{} solutions, phase deviation {dev:.2e}, residual {res:.1e}",
                sols.len()
            ),
        );
    }
    r.runtime(t0, Duration::from_secs(120));
    r
}

fn z8_w_map(z8: &PipelineOutcome) -> (Option<Vec<usize>>, String) {
    let refs = reference::z8_triples_reference();
    let ours = &z8.triples;
    let adj: Vec<Vec<usize>> = refs
        .iter()
        .map(|(k, tau, xi)| {
            (0..ours.len())
                .filter(|&j| {
                    let t = &ours[j];
                    near_group_triple_k(t) == Some(*k)
                        && t.tau == *tau
                        && max_phase_dist(&t.xi_phases(), xi) <= PHASE_TOL
                })
                .collect()
        })
        .collect();
    let m = bipartite_matching(&adj, ours.len());
    let unmatched: Vec<usize> = (0..refs.len())
        .filter(|&i| m[i].is_none())
        .map(|i| i + 1)
        .collect();
    if unmatched.is_empty() {
        (
            Some(m.into_iter().map(Option::unwrap).collect()),
            String::new(),
        )
    } else {
        (None, format!("unmatched table rows {unmatched:?}"))
    }
}

fn criterion_3(sh: &Shared) -> Report {
    let mut r = Report::default();
    let n = sh.z8.triples.len();
    r.check("exactly 44 triples", n == 44, format!("{n} triples"));
    let snapped = sh
        .z8
        .triples
        .iter()
        .filter(|t| t.omega_turns.is_some())
        .count();
    r.check(
        "every omega snapped to a root of unity",
        snapped == n,
        format!("{snapped} of {n}"),
    );
    let detail = match &sh.z8_w_map {
        Some(_) => "all 44 rows matched one-to-one on (omega^2 exponent, tau, xi)".to_string(),
        None => z8_w_map(&sh.z8).1,
    };
    r.check(
        "content match against the 44 printed rows",
        sh.z8_w_map.is_some(),
        detail,
    );
    let twists = reference::z8_w_twists_reference();
    if let (Some(map), Some(md)) = (&sh.z8_w_map, &sh.z8.center) {
        let worst = map
            .iter()
            .enumerate()
            .map(|(i, &j)| {
                let x = label_index(md, &SimpleLabel::D(j));
                (md.t[x] - nearcenter::abelian::cis_pi(twists[i])).norm()
            })
            .fold(0.0, f64::max);
        r.check(
            "twists of matched labels equal the printed T-list",
            worst <= MATCH_TOL,
            format!("max deviation {worst:.1e}"),
        );
    }
    r.check(
        "runtime of the full Z/8 pipeline",
        sh.z8_seconds < 600.0,
        format!("{:.1}s (limit 600s)", sh.z8_seconds),
    );
    r
}

fn criterion_4(sh: &Shared) -> Report {
    let mut r = Report::default();
    let Some(md) = &sh.z8.center else {
        r.check("center built", false, "no center");
        return r;
    };
    r.check("rank 88", md.rank() == 88, format!("rank {}", md.rank()));
    let classes = [
        ("1", QuadIrr::int(1), 8),
        ("5+sqrt24", QuadIrr::chi(24, 5), 8),
        (
            "2(3+sqrt6)",
            QuadIrr::chi(6, 3).scale(Q::from_integer(2)),
            28,
        ),
        ("4+sqrt24", QuadIrr::chi(24, 4), 44),
    ];
    for (name, d, want) in classes {
        let exact = md.dims_exact.iter().filter(|e| **e == Some(d)).count();
        let float = md
            .dims
            .iter()
            .filter(|x| (**x - d.to_f64()).abs() <= VERIFY_TOL)
            .count();
        r.check(
            &format!("dimension {name} occurs {want} times"),
            exact == want && float == want,
            format!("exact {exact}, numeric {float}"),
        );
    }
    let rep = verify_modular(md, VERIFY_TOL);
    r.check(
        "modular axioms",
        rep.pass,
        format!(
            "unitarity {:.1e}, S^2 {:.1e}, (ST)^3 {:.1e}",
            rep.unitarity, rep.s_squared, rep.modular_relation
        ),
    );
    match verlinde_fusion(md, INTEGER_TOL) {
        Ok(f) => {
            let bal = balancing_check(md, &f);
            r.check(
                "Verlinde integrality",
                true,
                format!("balancing residual {bal:.1e}"),
            );
        }
        Err(e) => r.check("Verlinde integrality", false, e.to_string()),
    }
    let worst = (0..8usize)
        .map(|g| {
            let x = label_index(md, &SimpleLabel::A(g));
            let want = nearcenter::abelian::cis_pi(Q::new(-((g * g) as i64), 4));
            (md.t[x] - want).norm()
        })
        .fold(0.0, f64::max);
    r.check(
        "T on invertibles is exp(-pi i g^2/4)",
        worst <= VERIFY_TOL,
        format!("max deviation {worst:.1e}"),
    );
    r
}

fn criterion_5(sh: &Shared) -> Report {
    let mut r = Report::default();
    let (Some(md), Some(cond)) = (&sh.z8.center, &sh.z8.condensation) else {
        r.check(
            "center and condensation built",
            false,
            "missing stage output",
        );
        return r;
    };
    let a = |g: usize| label_index(md, &SimpleLabel::A(g));
    let subs = find_tannakian_subgroups(md).unwrap();
    let subs: Vec<_> = subs.into_iter().filter(|h| h.labels.len() > 1).collect();
    let mut found: Vec<Vec<usize>> = subs.iter().map(|h| h.labels.clone()).collect();
    found.iter_mut().for_each(|v| v.sort());
    let mut want = vec![a(0), a(4)];
    want.sort();
    r.check(
        "the only nontrivial Tannakian subgroup is {X0, X4}",
        found == vec![want.clone()],
        format!(
            "found {:?}",
            subs.iter()
                .map(|h| h
                    .labels
                    .iter()
                    .map(|&i| md.labels[i].name())
                    .collect::<Vec<_>>())
                .collect::<Vec<_>>()
        ),
    );
    let perm = invertible_perm(md, a(4)).unwrap();
    let cent = centralizer(md, &want);
    let in_cent = |x: usize| cent.contains(&x);
    let mut bad = Vec::new();
    for g in 0..8usize {
        for (l, l2) in [
            (SimpleLabel::A(g), SimpleLabel::A((g + 4) % 8)),
            (SimpleLabel::B(g), SimpleLabel::B((g + 4) % 8)),
        ] {
            let x = label_index(md, &l);
            if perm[x] != label_index(md, &l2) || !in_cent(x) {
                bad.push(l.name());
            }
        }
    }
    for k in 0..8i64 {
        for l in k + 1..8 {
            let x = label_index(md, &SimpleLabel::C(k as usize, l as usize));
            let (k2, l2) = reference::z8_boson_on_pair(k, l);
            let y = label_index(md, &SimpleLabel::C(k2 as usize, l2 as usize));
            if perm[x] != y || in_cent(x) != ((k + l) % 2 == 0) {
                bad.push(md.labels[x].name());
            }
        }
    }
    r.check(
        "boson action and centralizer on X, Y, Z rows",
        bad.is_empty(),
        format!("mismatches {bad:?}"),
    );
    match &sh.z8_w_map {
        None => r.check(
            "boson action on W rows",
            false,
            "W labels not identified (criterion 3)",
        ),
        Some(map) => {
            let d = |i: usize| label_index(md, &SimpleLabel::D(map[i - 1]));
            let mut bad = Vec::new();
            for (i, j, c) in reference::z8_boson_on_w() {
                if perm[d(i)] != d(j)
                    || perm[d(j)] != d(i)
                    || in_cent(d(i)) != c
                    || in_cent(d(j)) != c
                {
                    bad.push(format!("W{i}"));
                }
            }
            r.check(
                "boson action and centralizer on W rows",
                bad.is_empty(),
                format!("mismatches {bad:?}"),
            );
        }
    }
    let c = &cond.condensed;
    r.check(
        "condensed rank 36",
        c.rank() == 36,
        format!("rank {}", c.rank()),
    );
    let key = |d: f64, t: Q| ((d * 1e6).round() as i64, reduce_mod(t, 1));
    let mut ours: Vec<_> = (0..c.rank())
        .map(|i| key(c.dims[i], c.t_turns[i].unwrap_or(Q::from_integer(-1))))
        .collect();
    let table = reference::z8_condensed_reference();
    let mut printed: Vec<_> = table.iter().map(|(_, d, t)| key(d.to_f64(), *t)).collect();
    ours.sort();
    printed.sort();
    let mut extra = ours.clone();
    let mut missing = Vec::new();
    for p in &printed {
        if let Some(i) = extra.iter().position(|o| o == p) {
            extra.remove(i);
        } else {
            missing.push(*p);
        }
    }
    let names: Vec<&str> = table
        .iter()
        .filter(|(_, d, t)| missing.contains(&key(d.to_f64(), *t)))
        .map(|(n, _, _)| *n)
        .collect();
    r.check(
        "dimension and twist multiset equals the printed table",
        missing.is_empty() && extra.is_empty(),
        if missing.is_empty() {
            String::new()
        } else {
            format!(
                "printed {names:?} with (dim*1e6, twist) {missing:?}; computed instead {extra:?}"
            )
        },
    );
    let exact_ok = c.dims_exact.iter().all(|d| d.is_some());
    r.check("condensed dimensions recognized exactly", exact_ok, "");
    let ratio = md.global_dim() / c.global_dim();
    r.check(
        "global dimension is parent/4",
        (ratio - 4.0).abs() <= 4.0 * GLOBAL_DIM_TOL,
        format!("ratio {ratio:.9}"),
    );
    r
}

fn criterion_6(sh: &Shared) -> Report {
    let mut r = Report::default();
    let Some((pt, comp)) = &sh.z8.factors else {
        r.check("factorization", false, "no factors");
        return r;
    };
    let cyclic4 = pt.rank() == 4
        && pt.dims.iter().all(|d| (d - 1.0).abs() < VERIFY_TOL)
        && (0..4).any(|g| {
            let p = invertible_perm(pt, g).unwrap();
            let mut x = 0;
            let mut order = 0;
            loop {
                x = p[x];
                order += 1;
                if x == 0 {
                    break;
                }
            }
            order == 4
        });
    let rep = verify_modular(pt, VERIFY_TOL);
    r.check(
        "pointed Z/4 modular factor",
        cyclic4 && rep.pass,
        format!("rank {}, modular {}", pt.rank(), rep.pass),
    );
    r.check(
        "complement rank 9",
        comp.rank() == 9,
        format!("rank {}", comp.rank()),
    );
    let printed = reference::rank9_printed_reference();
    let lit = compare_modular_data(comp, &printed, false, MATCH_TOL).unwrap();
    let prep = verify_modular(&printed, VERIFY_TOL);
    r.check(
        "complement equals the printed rank-9 matrices",
        lit.matched,
        if lit.matched {
            format!("max deviation {:.1e}", lit.max_deviation)
        } else {
            format!(
                "no relabeling matches; the printed S itself fails unitarity by {:.2} and (ST)^3 by {:.2}",
                prep.unitarity, prep.modular_relation
            )
        },
    );
    // the printed matrix with the diagonal and off-diagonal entries of the
    // (C2,6) pair exchanged
    let mut fixed = printed.clone();
    let (a, b) = (
        fixed.index_of("(C2,6)_1").unwrap(),
        fixed.index_of("(C2,6)_2").unwrap(),
    );
    let (saa, sab) = (fixed.s[(a, a)], fixed.s[(a, b)]);
    fixed.s[(a, a)] = sab;
    fixed.s[(b, b)] = sab;
    fixed.s[(a, b)] = saa;
    fixed.s[(b, a)] = saa;
    let frep = verify_modular(&fixed, VERIFY_TOL);
    let swapped = compare_modular_data(comp, &fixed, false, MATCH_TOL).unwrap();
    r.check(
        "diagnostic: complement equals the printed matrices with the (C2,6) entries exchanged",
        swapped.matched && frep.pass,
        format!(
            "corrected matrix modular {}, max deviation {:.1e}",
            frep.pass, swapped.max_deviation
        ),
    );
    let g2 = reference::g2_level4_reference();
    let m = compare_modular_data(comp, &g2, true, MATCH_TOL).unwrap();
    let witness_ok = m.galois.is_some_and(|(n, k)| (k + 1) % n == 0);
    r.check(
        "matches g2 level 4 via zeta_24 -> zeta_24^-1",
        m.matched && witness_ok,
        format!(
            "galois {:?}, max deviation {:.1e}",
            m.galois, m.max_deviation
        ),
    );
    r
}

fn criterion_7() -> Report {
    let mut r = Report::default();
    let t0 = Instant::now();
    let spec = GroupSpec::new(vec![4, 4]).unwrap();
    let z = Q::from_integer(0);
    let b = Bicharacter::new(
        spec.clone(),
        vec![vec![Q::new(1, 4), z], vec![z, Q::new(-1, 4)]],
    )
    .unwrap();
    let forms = quadratic_forms_for(&b);
    let refs = reference::z4z4_forms_reference();
    let ids: Vec<Option<usize>> = forms
        .iter()
        .map(|f| refs.iter().position(|a| a.phases == f.phases))
        .collect();
    r.check(
        "four quadratic forms, equal to a1..a4",
        forms.len() == 4 && ids.iter().all(|i| i.is_some()),
        format!(
            "{} forms, identified as {:?}",
            forms.len(),
            ids.iter().map(|i| i.map(|k| k + 1)).collect::<Vec<_>>()
        ),
    );
    let opts = SolverOptions::default();
    let mut per_form: BTreeMap<usize, Vec<NearGroupData>> = BTreeMap::new();
    for (a, c) in feasible_pairs(&spec, &b).unwrap() {
        let id = refs.iter().position(|x| x.phases == a.phases).unwrap();
        per_form
            .entry(id)
            .or_default()
            .extend(solve_b(&spec, &b, &a, c, &opts).unwrap());
    }
    let counts: Vec<(usize, usize)> = (0..4)
        .map(|i| (i + 1, per_form.get(&i).map_or(0, |v| v.len())))
        .collect();
    let only_a1 = counts.iter().all(|&(i, n)| (i == 1) == (n > 0));
    // a3 = a1 after (g1, g2) -> (g1+2g2, g2+2g1), which preserves the pairing
    let psi = |i: usize| -> usize {
        let (g1, g2) = (i / 4, i % 4);
        ((g1 + 2 * g2) % 4) * 4 + (g2 + 2 * g1) % 4
    };
    let a1 = per_form.get(&0).cloned().unwrap_or_default();
    let a3 = per_form.get(&2).cloned().unwrap_or_default();
    let a3_images = a3
        .iter()
        .filter(|s| {
            a1.iter()
                .any(|t| (0..16).all(|x| (s.b[x] - t.b[psi(x)]).norm() < 1e-8))
        })
        .count();
    r.check(
        "only a1 admits solutions",
        only_a1,
        format!(
            "solutions per form {counts:?}; {a3_images} of {} a3 solutions are images of a1 solutions under (g1+2g2, g2+2g1)",
            a3.len()
        ),
    );
    let c_ok = a1.iter().all(|s| s.c_turns == z);
    r.check(
        "exactly 4 solutions for a1, all with c = 1",
        a1.len() == 4 && c_ok,
        format!("{} solutions", a1.len()),
    );
    let rows = reference::z4z4_b_phase_rows();
    let cols: Vec<usize> = reference::Z4Z4_PHASE_ELEMENTS
        .iter()
        .map(|&(g1, g2)| (g1 * 4 + g2) as usize)
        .collect();
    let adj: Vec<Vec<usize>> = rows
        .iter()
        .map(|row| {
            (0..a1.len())
                .filter(|&k| {
                    let ph: Vec<f64> = cols.iter().map(|&x| a1[k].b[x].arg()).collect();
                    max_phase_dist(&ph, row) <= PHASE_TOL
                })
                .collect()
        })
        .collect();
    let m = bipartite_matching(&adj, a1.len());
    r.check(
        "solutions match the four printed rows",
        m.iter().all(|x| x.is_some()),
        format!("row to solution {m:?}"),
    );
    let classes = nearcenter::neargroup::dedupe_up_to_aut(&a1, nearcenter::tol::DEDUPE);
    r.check(
        "one class up to automorphisms",
        classes.len() == 1,
        format!("{} class(es)", classes.len()),
    );
    if m.iter().all(|x| x.is_some()) {
        let sol = |row: usize| &a1[m[row].unwrap()];
        let psis = reference::z4z4_psi_reference();
        let mut links = Vec::new();
        for (k, p) in psis.iter().enumerate() {
            let target = sol(k + 1);
            let ok = (0..16).all(|x| {
                (sol(0).b[x] - target.b[p[x]]).norm() < 1e-8
                    || (target.b[x] - sol(0).b[p[x]]).norm() < 1e-8
            });
            links.push((k + 1, k + 2, ok));
        }
        r.check(
            "psi_k carries J1 to J_{k+1}",
            links.iter().all(|l| l.2),
            format!("(psi, J, ok) {links:?}"),
        );
    }
    r.runtime(t0, Duration::from_secs(1800));
    r
}

fn criterion_8(sh: &Shared) -> Report {
    let mut r = Report::default();
    r.check(
        "152 triples",
        sh.z4z4.triples.len() == 152,
        format!("{}", sh.z4z4.triples.len()),
    );
    let Some(md) = &sh.z4z4.center else {
        r.check("center built", false, "no center");
        return r;
    };
    r.check("rank 304", md.rank() == 304, format!("rank {}", md.rank()));
    let pt = pointed_part(md);
    let idx: Vec<usize> = (0..16)
        .map(|g| label_index(&pt, &SimpleLabel::A(g)))
        .collect();
    let i4 = |e: i64| nearcenter::cyclo::zeta(4, e);
    let mut t_dev = 0f64;
    let mut s_dev = 0f64;
    let mut s_dev_sq = 0f64;
    for g in 0..16usize {
        let (g1, g2) = ((g / 4) as i64, (g % 4) as i64);
        t_dev = t_dev.max((pt.t[idx[g]] - i4(g1 * g1 - g2 * g2)).norm());
        for h in 0..16usize {
            let (h1, h2) = ((h / 4) as i64, (h % 4) as i64);
            let e = g1 * h1 - g2 * h2;
            s_dev = s_dev.max((pt.s[(idx[g], idx[h])] - i4(e)).norm());
            s_dev_sq = s_dev_sq.max((pt.s[(idx[g], idx[h])] - i4(-2 * e)).norm());
        }
    }
    let t_exact = (0..16usize).all(|g| {
        let (g1, g2) = ((g / 4) as i64, (g % 4) as i64);
        pt.t_turns[idx[g]] == Some(reduce_mod(Q::new(g1 * g1 - g2 * g2, 4), 1))
    });
    r.check(
        "pointed T equals i^(g1^2 - g2^2) exactly",
        t_exact,
        format!("max deviation {t_dev:.1e}"),
    );
    r.check(
        "pointed S equals i^(g1h1 - g2h2)",
        s_dev <= MATCH_TOL,
        format!("max deviation {s_dev:.2}; deviation from i^(-2(g1h1 - g2h2)) is {s_dev_sq:.1e}"),
    );
    let want = QuadIrr::new(Q::from_integer(46080), Q::from_integer(20480), 5);
    let exact = global_dim_exact(md);
    let rel = (md.global_dim() - want.to_f64()).abs() / want.to_f64();
    r.check(
        "global dimension (160+64 sqrt5)^2",
        exact == Some(want) && rel <= GLOBAL_DIM_TOL,
        format!(
            "exact {:?}, relative deviation {rel:.1e}",
            exact.map(|e| e.to_string())
        ),
    );
    r.check(
        "runtime of the full Z/4xZ/4 pipeline",
        sh.z4z4_seconds < 1800.0,
        format!("{:.1}s (limit 1800s)", sh.z4z4_seconds),
    );
    r
}

fn criterion_9(sh: &Shared) -> Report {
    let mut r = Report::default();
    let (Some(md), Some(cond)) = (&sh.z4z4.center, &sh.z4z4.condensation) else {
        r.check(
            "center and condensation built",
            false,
            "missing stage output",
        );
        return r;
    };
    r.check(
        "Tannakian subgroup of type Z/2 x Z/4",
        cond.subgroup.group_type == vec![2, 4],
        format!("type {:?}", cond.subgroup.group_type),
    );
    r.check(
        "centralizer rank 44",
        cond.centralizer.len() == 44,
        format!("{}", cond.centralizer.len()),
    );
    let (ys, zs) = reference::z4z4_centralizer_reference();
    let mut pairs: Vec<(usize, usize)> = md
        .labels
        .iter()
        .filter_map(|l| match l {
            SimpleLabel::C(k, l) => Some((*k, *l)),
            _ => None,
        })
        .collect();
    pairs.sort();
    let mut missing = Vec::new();
    for y in ys {
        if !cond
            .centralizer
            .contains(&label_index(md, &SimpleLabel::B(y - 1)))
        {
            missing.push(format!("Y{y}"));
        }
    }
    for z in zs {
        let (k, l) = pairs[z - 1];
        if !cond
            .centralizer
            .contains(&label_index(md, &SimpleLabel::C(k, l)))
        {
            missing.push(format!("Z{z}"));
        }
    }
    r.check(
        "centralizer contains the printed labels",
        missing.is_empty(),
        format!("missing {missing:?}"),
    );
    let c = &cond.condensed;
    r.check(
        "condensed rank 10",
        c.rank() == 10,
        format!("rank {}", c.rank()),
    );
    let refd = reference::rank10_reference();
    let m = compare_modular_data(c, &refd, false, MATCH_TOL).unwrap();
    r.check(
        "(S, T) equal the printed rank-10 data",
        m.matched,
        format!("max deviation {:.1e} {:?}", m.max_deviation, m.diagnostics),
    );
    if m.matched {
        let s = Complex64::new(-1.0, 2.0) * (5.0 + 20f64.sqrt());
        let blocks = (0..10)
            .filter(|&i| {
                (c.s[(i, i)] - s).norm() < MATCH_TOL || (c.s[(i, i)] - s.conj()).norm() < MATCH_TOL
            })
            .count();
        r.check(
            "four diagonal (-1 +- 2i)(5+sqrt20) entries",
            blocks == 4,
            format!("{blocks}"),
        );
    }
    let want = 80.0 * (2.0 + 5f64.sqrt()).powi(2);
    let rel = (c.global_dim() - want).abs() / want;
    r.check(
        "global dimension 80(2+sqrt5)^2",
        rel <= GLOBAL_DIM_TOL,
        format!("relative deviation {rel:.1e}"),
    );
    r
}

fn criterion_10(sh: &Shared) -> Report {
    let mut r = Report::default();
    let Some(cond) = &sh.z4z4.condensation else {
        r.check("condensation built", false, "missing stage output");
        return r;
    };
    let md = &cond.condensed;
    let cat = catalog();
    let cands = match candidate_decompositions(md, &cat) {
        Ok(c) => c,
        Err(e) => {
            r.check("candidate decompositions", false, e.to_string());
            return r;
        }
    };
    let shortlist = [
        vec![("rho1", 1), ("rho2", 2), ("rho0", 1)],
        vec![("rho1", 1), ("rho2", 1), ("rho3", 1), ("rho0", 2)],
        vec![
            ("rho1", 1),
            ("rho2", 1),
            ("rho4", 1),
            ("rho5", 1),
            ("rho0", 2),
        ],
        vec![("rho1", 1), ("rho3", 2), ("rho0", 3)],
        vec![
            ("rho1", 1),
            ("rho3", 1),
            ("rho4", 1),
            ("rho5", 1),
            ("rho0", 3),
        ],
        vec![("rho1", 1), ("rho4", 2), ("rho5", 2), ("rho0", 3)],
    ];
    let mut want: Vec<DecompositionType> = shortlist
        .iter()
        .map(|p| DecompositionType::from_parts(p))
        .collect();
    want.sort();
    r.check(
        "spectrum search returns the six-type shortlist",
        cands == want,
        cands
            .iter()
            .map(|t| t.to_string())
            .collect::<Vec<_>>()
            .join(", "),
    );
    let connected: Vec<&DecompositionType> = cands
        .iter()
        .filter(|t| spectrally_connected(t, &cat).unwrap())
        .collect();
    r.check(
        "three survive the connected-spectrum filter",
        connected.len() == 3
            && connected.iter().all(|t| {
                want[..3].contains(t)
                    || shortlist[..3]
                        .iter()
                        .any(|p| DecompositionType::from_parts(p) == **t)
            }),
        connected
            .iter()
            .map(|t| t.to_string())
            .collect::<Vec<_>>()
            .join(", "),
    );
    let opts = IntertwinerOptions {
        tol: INTERTWINER_TOL,
        ..IntertwinerOptions::default()
    };
    let accept = DecompositionType::from_parts(&shortlist[2]);
    match verify_decomposition(md, &accept, &cat, &opts) {
        Ok(fit) => {
            let tr = word_trace_check(md, &fit, 50, 6, 7);
            r.check(
                &format!("{accept} accepted"),
                fit.residual <= INTERTWINER_TOL,
                format!(
                    "residual {:.1e}, word-trace deviation {tr:.1e}",
                    fit.residual
                ),
            );
        }
        Err(e) => r.check(&format!("{accept} accepted"), false, e.to_string()),
    }
    for parts in [&shortlist[1], &shortlist[0]] {
        let ty = DecompositionType::from_parts(parts);
        let res = verify_decomposition(md, &ty, &cat, &opts);
        r.check(
            &format!("{ty} rejected"),
            matches!(res, Err(nearcenter::Error::Infeasible(_))),
            match res {
                Ok(f) => format!("unexpected fit, residual {:.1e}", f.residual),
                Err(e) => e.to_string(),
            },
        );
    }
    r
}

fn criterion_11() -> Report {
    let mut r = Report::default();
    let adj = reference::SL3_LEVEL5_ADJOINT_LABELS;
    let mut oracle = vec![vec![vec![0i64; 7]; 7]; 7];
    let mut closed = true;
    for (a, &la) in adj.iter().enumerate() {
        for (b, &lb) in adj.iter().enumerate() {
            for (w, n) in sl3_fusion(5, la, lb) {
                match adj.iter().position(|&x| x == w) {
                    Some(c) => oracle[a][b][c] = n,
                    None => closed = false,
                }
            }
        }
    }
    let oracle_dim: i64 = oracle[3][3].iter().sum();
    r.check(
        "oracle: the seven labels close under level-5 fusion",
        closed && oracle.iter().flatten().flatten().all(|&n| n >= 0),
        format!("(1,1) x (1,1) has {oracle_dim} summands"),
    );
    let mut runner = TestRunner::new(Config {
        cases: 6,
        failure_persistence: None,
        ..Config::default()
    });
    let last = std::cell::RefCell::new(String::new());
    let res = runner.run(&(0u64..u64::MAX), |seed| {
        let mut cfg = PipelineConfig::preset("z4-example").unwrap();
        cfg.seed = seed;
        let (rep, oc) = run_pipeline(&cfg, None).unwrap();
        proptest::prop_assert_eq!(rep.exit_code(), 0, "{:?}", rep.stages);
        let center = oc.center.as_ref().unwrap();
        proptest::prop_assert_eq!(center.rank(), 28);
        let cond = oc.condensation.as_ref().unwrap();
        proptest::prop_assert_eq!(cond.subgroup.labels.len(), 2);
        proptest::prop_assert_eq!(cond.condensed.rank(), 14);
        let (pt, comp) = oc.factors.as_ref().unwrap();
        proptest::prop_assert_eq!(pt.rank(), 2);
        proptest::prop_assert!(verify_modular(pt, VERIFY_TOL).pass);
        proptest::prop_assert_eq!(comp.rank(), 7);
        let f = verlinde_fusion(comp, INTEGER_TOL).unwrap();
        let perm = ring_bijection(&f, &oracle);
        proptest::prop_assert!(
            perm.is_some(),
            "complement fusion ring differs from the sl3 level-5 adjoint ring"
        );
        *last.borrow_mut() = format!(
            "seed {seed}: Tannakian subgroups {}, bijection oracle->complement {:?}",
            find_tannakian_subgroups(center).unwrap().len(),
            perm.unwrap()
        );
        Ok(())
    });
    r.check(
        "6 random seeds: rank 28, Z/2 condensation to rank 14, pointed rank 2, complement ring = sl3 level 5 adjoint",
        res.is_ok(),
        match res {
            Ok(()) => last.into_inner(),
            Err(e) => e.to_string(),
        },
    );
    r
}

fn criterion_12() -> Report {
    let mut r = Report::default();
    let base = reference::rank10_reference();
    let rep = verify_modular(&base, VERIFY_TOL);
    let f0 = verlinde_fusion(&base, INTEGER_TOL).unwrap();
    let b0 = balancing_check(&base, &f0);
    r.check(
        "unmutated data passes",
        rep.pass && b0 <= VERIFY_TOL,
        format!("balancing {b0:.1e}"),
    );
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let n = base.rank();
    for k in 0..10 {
        let mut md = base.clone();
        let what = if rng.gen_bool(0.7) {
            let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
            let mag = rng.gen_range(0.05..0.5) * md.s[(i, j)].norm().max(1.0);
            let dz = Complex64::from_polar(mag, rng.gen_range(-PI..PI));
            md.s[(i, j)] += dz;
            format!("S[{i}][{j}] += {dz:.3}")
        } else {
            let i = rng.gen_range(1..n);
            let a = rng.gen_range(0.1..PI) * if rng.gen() { 1.0 } else { -1.0 };
            md.t[i] *= Complex64::from_polar(1.0, a);
            md.t_turns[i] = None;
            format!("T[{i}] *= exp({a:.3} i)")
        };
        let rep = verify_modular(&md, VERIFY_TOL);
        let unit = rep.unitarity > VERIFY_TOL;
        let (verl, bal) = match verlinde_fusion(&md, INTEGER_TOL) {
            Err(_) => (true, false),
            Ok(f) => (false, balancing_check(&md, &f) > VERIFY_TOL),
        };
        let caught: Vec<&str> = [(unit, "unitarity"), (verl, "Verlinde"), (bal, "balancing")]
            .iter()
            .filter(|x| x.0)
            .map(|x| x.1)
            .collect();
        r.check(
            &format!("mutation {}: {what}", k + 1),
            !caught.is_empty(),
            format!("caught by {caught:?}"),
        );
    }
    r
}

fn main() {
    let t0 = Instant::now();
    let mut results: Vec<(usize, &str, Report)> = Vec::new();
    results.push((1, "trivial group pipeline", criterion_1()));
    results.push((2, "Z/8+8 solver rows", criterion_2()));
    let (z8, z8_seconds) = run_preset("z8-j81-full");
    let (z8_w_map, _) = z8_w_map(&z8);
    let (z4z4, z4z4_seconds) = run_preset("z4z4-full");
    let sh = Shared {
        z8,
        z8_seconds,
        z4z4,
        z4z4_seconds,
        z8_w_map,
    };
    results.push((3, "Z/8+8 half-braidings", criterion_3(&sh)));
    results.push((4, "Z/8+8 center", criterion_4(&sh)));
    results.push((5, "Z/8 condensation", criterion_5(&sh)));
    results.push((6, "Z/8 factorization and g2 match", criterion_6(&sh)));
    results.push((7, "Z/4xZ/4+16 solver", criterion_7()));
    results.push((8, "Z/4xZ/4 center", criterion_8(&sh)));
    results.push((9, "Z/4xZ/4 condensation", criterion_9(&sh)));
    results.push((10, "SL(2,Z) decomposition", criterion_10(&sh)));
    results.push((11, "Z/4+4 example and sl3 level 5", criterion_11()));
    results.push((12, "mutation suite", criterion_12()));
    results.sort_by_key(|x| x.0);
    println!();
    let mut failed = 0;
    for (id, title, rep) in &results {
        let pass = rep.checks.iter().all(|c| c.pass);
        if !pass {
            failed += 1;
        }
        println!(
            "criterion {id:>2} {}: {title}",
            if pass { "PASS" } else { "FAIL" }
        );
        for c in &rep.checks {
            let d = if c.detail.is_empty() {
                String::new()
            } else {
                format!(" ({})", c.detail)
            };
            println!("    {} {}{d}", if c.pass { "ok  " } else { "FAIL" }, c.name);
        }
    }
    println!(
        "\nacceptance: {} of {} criteria pass ({:.0}s)",
        results.len() - failed,
        results.len(),
        t0.elapsed().as_secs_f64()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
