//! End-to-end runs: solve, triples, center, verify, condense, factor and
//! compare, with every intermediate written to an output directory.

use crate::abelian::{reduce_mod, Bicharacter, GroupSpec, Q};
use crate::center::build_center;
use crate::compare::{compare_modular_data, MatchReport};
use crate::condense::{condense, factor_pointed, CondensationResult, CondenseOptions};
use crate::cyclo::phase_dist;
use crate::error::{Error, Result};
use crate::halfbraid::{expected_count, solve_triples, HalfBraidingTriple};
use crate::io::{write_json_atomic, write_modular_data};
use crate::modular::{
    balancing_check, find_tannakian_subgroups, verify_modular, verlinde_fusion, ModularData,
    VerifyReport,
};
use crate::neargroup::{feasible_pairs, solve_b, NearGroupData, SolverOptions};
use crate::reference;
use crate::tol;
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};
use std::time::Instant;

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CondenseStage {
    /// order of the Tannakian subgroup to condense by
    pub subgroup_order: usize,
    #[serde(default)]
    pub group_type: Option<Vec<i64>>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum CompareTarget {
    Center,
    Condensed,
    Complement,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CompareStage {
    pub reference: String,
    pub target: CompareTarget,
    pub allow_galois: bool,
    pub tol: f64,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PipelineConfig {
    pub name: String,
    pub group: Vec<i64>,
    /// pairing exponents between generators, in turns
    pub bichar: Vec<Vec<Q>>,
    /// quadratic form phases (units of `π`); every feasible form when absent
    #[serde(default)]
    pub form: Option<Vec<Q>>,
    #[serde(default)]
    pub c_turns: Option<Q>,
    /// `(element index, phase of b)` used to pick among several solutions
    #[serde(default)]
    pub b_hint: Vec<(usize, f64)>,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub multistart: Option<usize>,
    pub residual_tol: f64,
    pub verify_tol: f64,
    /// Verlinde and balancing checks are skipped above this rank
    pub verlinde_max_rank: usize,
    #[serde(default)]
    pub condense: Option<CondenseStage>,
    #[serde(default)]
    pub factor: bool,
    #[serde(default)]
    pub compare: Option<CompareStage>,
}

impl PipelineConfig {
    fn base(name: &str, group: Vec<i64>, bichar: Vec<Vec<Q>>) -> Self {
        PipelineConfig {
            name: name.into(),
            group,
            bichar,
            form: None,
            c_turns: None,
            b_hint: Vec::new(),
            seed: 0,
            multistart: None,
            residual_tol: tol::CONSTRUCT,
            verify_tol: tol::VERIFY,
            verlinde_max_rank: 128,
            condense: None,
            factor: false,
            compare: None,
        }
    }

    pub fn preset_names() -> &'static [&'static str] {
        &["trivial-group", "z8-j81-full", "z4z4-full", "z4-example"]
    }

    pub fn preset(name: &str) -> Result<Self> {
        let z = Q::from_integer(0);
        match name {
            "trivial-group" => Ok(Self::base(name, vec![1], vec![vec![z]])),
            "z8-j81-full" => {
                let mut c = Self::base(name, vec![8], vec![vec![Q::new(-1, 8)]]);
                c.form = Some((0..8).map(|x| reduce_mod(Q::new(x * x, 8), 2)).collect());
                c.c_turns = Some(Q::new(23, 24));
                let row = &reference::z8_b_phase_rows()[0];
                c.b_hint = (1..=4).zip(row.j).collect();
                c.condense = Some(CondenseStage {
                    subgroup_order: 2,
                    group_type: None,
                });
                c.factor = true;
                c.compare = Some(CompareStage {
                    reference: "g2-level4".into(),
                    target: CompareTarget::Complement,
                    allow_galois: true,
                    tol: 1e-6,
                });
                Ok(c)
            }
            "z4z4-full" => {
                let mut c = Self::base(
                    name,
                    vec![4, 4],
                    vec![vec![Q::new(1, 4), z], vec![z, Q::new(-1, 4)]],
                );
                c.form = Some(reference::z4z4_forms_reference()[0].phases.clone());
                c.c_turns = Some(z);
                let row = reference::z4z4_b_phase_rows()[0];
                c.b_hint = reference::Z4Z4_PHASE_ELEMENTS
                    .iter()
                    .zip(row)
                    .map(|(&(g1, g2), j)| ((g1 * 4 + g2) as usize, j))
                    .collect();
                c.verlinde_max_rank = 100;
                c.condense = Some(CondenseStage {
                    subgroup_order: 8,
                    group_type: Some(vec![2, 4]),
                });
                c.compare = Some(CompareStage {
                    reference: "rank10".into(),
                    target: CompareTarget::Condensed,
                    allow_galois: false,
                    tol: 1e-6,
                });
                Ok(c)
            }
            "z4-example" => {
                let mut c = Self::base(name, vec![4], vec![vec![Q::new(1, 4)]]);
                c.c_turns = Some(Q::new(3, 8));
                c.condense = Some(CondenseStage {
                    subgroup_order: 2,
                    group_type: None,
                });
                c.factor = true;
                Ok(c)
            }
            _ => Err(Error::InvalidInput(format!(
                "unknown preset {name:?}; known: {}",
                Self::preset_names().join(", ")
            ))),
        }
    }

    pub fn solver_options(&self) -> SolverOptions {
        SolverOptions {
            residual_tol: self.residual_tol,
            multistart_count: self.multistart,
            rng_seed: self.seed,
            ..SolverOptions::default()
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum StageStatus {
    Ok,
    Failed,
    Skipped,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct StageReport {
    pub stage: String,
    pub status: StageStatus,
    pub detail: String,
    pub seconds: f64,
    /// exit code of the failure, 0 otherwise
    pub code: i32,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PipelineReport {
    pub config: PipelineConfig,
    pub stages: Vec<StageReport>,
}

impl PipelineReport {
    /// First nonzero failure code, or 0.
    pub fn exit_code(&self) -> i32 {
        self.stages
            .iter()
            .map(|s| s.code)
            .find(|&c| c != 0)
            .unwrap_or(0)
    }
}

/// Everything a run produced, in memory.
#[derive(Default)]
pub struct PipelineOutcome {
    pub solutions: Vec<NearGroupData>,
    pub data: Option<NearGroupData>,
    pub triples: Vec<HalfBraidingTriple>,
    pub center: Option<ModularData>,
    pub verify: Option<VerifyReport>,
    pub condensation: Option<CondensationResult>,
    pub factors: Option<(ModularData, ModularData)>,
    pub matched: Option<MatchReport>,
}

/// Pick the solution closest to the hint phases.
pub fn select_solution(solutions: &[NearGroupData], hint: &[(usize, f64)]) -> Option<usize> {
    let score = |s: &NearGroupData| -> f64 {
        hint.iter()
            .map(|&(x, j)| phase_dist(s.b[x].arg(), j))
            .fold(0.0, f64::max)
    };
    (0..solutions.len()).min_by(|&a, &b| score(&solutions[a]).total_cmp(&score(&solutions[b])))
}

pub fn solve_stage(cfg: &PipelineConfig) -> Result<Vec<NearGroupData>> {
    let spec = GroupSpec::new(cfg.group.clone())?;
    let bichar = Bicharacter::new(spec.clone(), cfg.bichar.clone())?;
    let opts = cfg.solver_options();
    let mut pairs = feasible_pairs(&spec, &bichar)?;
    if let Some(f) = &cfg.form {
        let want: Vec<Q> = f.iter().map(|&x| reduce_mod(x, 2)).collect();
        pairs.retain(|(a, _)| a.phases == want);
    }
    if let Some(c) = cfg.c_turns {
        let c = reduce_mod(c, 1);
        pairs.retain(|(_, ct)| *ct == c);
    }
    if pairs.is_empty() {
        return Err(Error::Infeasible(
            "no quadratic form and c satisfy the Gauss sum condition".into(),
        ));
    }
    let mut out = Vec::new();
    for (a, c) in &pairs {
        out.extend(solve_b(&spec, &bichar, a, *c, &opts)?);
    }
    if out.is_empty() {
        return Err(Error::Infeasible(format!(
            "no solution for b over {} feasible pairs",
            pairs.len()
        )));
    }
    Ok(out)
}

struct Runner<'a> {
    out: Option<&'a Path>,
    stages: Vec<StageReport>,
    failed: bool,
}

impl Runner<'_> {
    fn path(&self, name: &str) -> Option<PathBuf> {
        self.out.map(|d| d.join(name))
    }

    fn stage<T>(&mut self, name: &str, f: impl FnOnce() -> Result<(T, String)>) -> Option<T> {
        if self.failed {
            self.stages.push(StageReport {
                stage: name.into(),
                status: StageStatus::Skipped,
                detail: "an earlier stage failed".into(),
                seconds: 0.0,
                code: 0,
            });
            return None;
        }
        let t0 = Instant::now();
        let res = f();
        let seconds = t0.elapsed().as_secs_f64();
        match res {
            Ok((v, detail)) => {
                self.stages.push(StageReport {
                    stage: name.into(),
                    status: StageStatus::Ok,
                    detail,
                    seconds,
                    code: 0,
                });
                Some(v)
            }
            Err(e) => {
                self.failed = true;
                self.stages.push(StageReport {
                    stage: name.into(),
                    status: StageStatus::Failed,
                    detail: e.to_string(),
                    seconds,
                    code: e.exit_code(),
                });
                None
            }
        }
    }

    fn skip(&mut self, name: &str, why: &str) {
        self.stages.push(StageReport {
            stage: name.into(),
            status: StageStatus::Skipped,
            detail: why.into(),
            seconds: 0.0,
            code: 0,
        });
    }
}

/// Run every configured stage. Stage failures are recorded in the report
/// and skip the remaining stages; only I/O on the report itself errors.
pub fn run_pipeline(
    cfg: &PipelineConfig,
    out: Option<&Path>,
) -> Result<(PipelineReport, PipelineOutcome)> {
    let mut run = Runner {
        out,
        stages: Vec::new(),
        failed: false,
    };
    let mut oc = PipelineOutcome::default();
    if let Some(d) = out {
        std::fs::create_dir_all(d)?;
        write_json_atomic(&d.join("config.json"), cfg)?;
    }

    let sols = run.stage("solve", || {
        let sols = solve_stage(cfg)?;
        let pick = select_solution(&sols, &cfg.b_hint).expect("nonempty");
        Ok(((sols, pick), String::new()))
    });
    if let Some((sols, pick)) = sols {
        if let Some(p) = run.path("neargroup.json") {
            write_json_atomic(&p, &sols[pick])?;
            write_json_atomic(&run.path("neargroup_all.json").unwrap(), &sols)?;
        }
        let n = sols.len();
        oc.data = Some(sols[pick].clone());
        oc.solutions = sols;
        run.stages.last_mut().unwrap().detail = format!("{n} solutions; using #{pick}");
    }

    let opts = cfg.solver_options();
    if let Some(triples) = run.stage("triples", || {
        let data = oc.data.as_ref().unwrap();
        let t = solve_triples(data, &opts)?;
        let want = expected_count(&data.group);
        if t.len() != want {
            return Err(Error::Shortfall {
                found: t.len(),
                expected: want,
                detail: "half-braiding triples".into(),
            });
        }
        let msg = format!("{} triples", t.len());
        Ok((t, msg))
    }) {
        if let Some(p) = run.path("triples.json") {
            write_json_atomic(&p, &triples)?;
        }
        oc.triples = triples;
    }

    if let Some(center) = run.stage("center", || {
        let md = build_center(oc.data.as_ref().unwrap(), &oc.triples)?;
        let msg = format!("rank {}", md.rank());
        Ok((md, msg))
    }) {
        if let Some(p) = run.path("center.json") {
            write_modular_data(&p, &center)?;
        }
        oc.center = Some(center);
    }

    if let Some(rep) = run.stage("verify", || {
        let md = oc.center.as_ref().unwrap();
        let rep = verify_modular(md, cfg.verify_tol);
        if !rep.pass {
            return Err(Error::Verification(rep.failures.join("; ")));
        }
        let mut detail = format!("unitarity {:.2e}, T order {:?}", rep.unitarity, rep.t_order);
        if md.rank() <= cfg.verlinde_max_rank {
            let f = verlinde_fusion(md, tol::INTEGER)?;
            let bal = balancing_check(md, &f);
            if bal > cfg.verify_tol {
                return Err(Error::Verification(format!("balancing residual {bal:.3e}")));
            }
            detail.push_str(&format!(", Verlinde integral, balancing {bal:.2e}"));
        } else {
            detail.push_str(", Verlinde skipped for rank");
        }
        Ok((rep, detail))
    }) {
        if let Some(p) = run.path("verify.json") {
            write_json_atomic(&p, &rep)?;
        }
        oc.verify = Some(rep);
    }

    match &cfg.condense {
        None => run.skip("condense", "not configured"),
        Some(cs) => {
            if let Some(res) = run.stage("condense", || {
                let md = oc.center.as_ref().unwrap();
                let subs = find_tannakian_subgroups(md)?;
                let h = subs
                    .into_iter()
                    .find(|h| {
                        h.labels.len() == cs.subgroup_order
                            && cs.group_type.as_ref().is_none_or(|t| *t == h.group_type)
                    })
                    .ok_or_else(|| {
                        Error::Infeasible(format!(
                            "no Tannakian subgroup of order {}",
                            cs.subgroup_order
                        ))
                    })?;
                let res = condense(
                    md,
                    &h,
                    &CondenseOptions {
                        seed: cfg.seed,
                        ..CondenseOptions::default()
                    },
                )?;
                let msg = format!(
                    "centralizer rank {}, condensed rank {}, {} survivor(s)",
                    res.centralizer.len(),
                    res.condensed.rank(),
                    res.survivors.len()
                );
                Ok((res, msg))
            }) {
                if let Some(p) = run.path("condensed.json") {
                    write_modular_data(&p, &res.condensed)?;
                }
                oc.condensation = Some(res);
            }
        }
    }

    if !cfg.factor {
        run.skip("factor", "not configured");
    } else if oc.condensation.is_none() && !run.failed {
        run.skip("factor", "nothing condensed");
    } else if let Some(f) = run.stage("factor", || {
        let md = &oc.condensation.as_ref().unwrap().condensed;
        let f = factor_pointed(md)?
            .ok_or_else(|| Error::Infeasible("no modular pointed factor".into()))?;
        let msg = format!(
            "pointed rank {}, complement rank {}",
            f.0.rank(),
            f.1.rank()
        );
        Ok((f, msg))
    }) {
        if let Some(p) = run.path("pointed.json") {
            write_modular_data(&p, &f.0)?;
            write_modular_data(&run.path("complement.json").unwrap(), &f.1)?;
        }
        oc.factors = Some(f);
    }

    match &cfg.compare {
        None => run.skip("compare", "not configured"),
        Some(cs) => {
            if let Some(rep) = run.stage("compare", || {
                let cand = match cs.target {
                    CompareTarget::Center => oc.center.as_ref(),
                    CompareTarget::Condensed => oc.condensation.as_ref().map(|c| &c.condensed),
                    CompareTarget::Complement => oc.factors.as_ref().map(|f| &f.1),
                }
                .ok_or_else(|| {
                    Error::InvalidInput(format!("{:?} stage produced nothing", cs.target))
                })?;
                let refd = reference::by_name(&cs.reference)?;
                let rep =
                    compare_modular_data(cand, &refd, cs.allow_galois, cs.tol)?.into_result()?;
                let msg = format!("matched {} with Galois {:?}", cs.reference, rep.galois);
                Ok((rep, msg))
            }) {
                if let Some(p) = run.path("compare.json") {
                    write_json_atomic(&p, &rep)?;
                }
                oc.matched = Some(rep);
            }
        }
    }

    let report = PipelineReport {
        config: cfg.clone(),
        stages: run.stages,
    };
    if let Some(d) = out {
        write_json_atomic(&d.join("report.json"), &report)?;
    }
    Ok((report, oc))
}
