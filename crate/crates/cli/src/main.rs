//! Command line front end: each stage reads and writes JSON files.

use clap::{Args, Parser, Subcommand};
use nearcenter::abelian::{Bicharacter, GroupSpec, Q};
use nearcenter::center::build_center;
use nearcenter::compare::compare_modular_data;
use nearcenter::condense::{condense, factor_pointed, CondenseOptions};
use nearcenter::halfbraid::{expected_count, solve_triples, HalfBraidingTriple};
use nearcenter::io::{
    parse_fraction, read_json, read_modular_data, write_json_atomic, write_modular_data,
};
use nearcenter::modular::{
    balancing_check, find_tannakian_subgroups, verify_modular, verlinde_fusion, ModularData,
};
use nearcenter::neargroup::{feasible_pairs, solve_b, NearGroupData, SolverOptions};
use nearcenter::pipeline::{run_pipeline, PipelineConfig, StageStatus};
use nearcenter::sl2z::{
    candidate_decompositions, catalog, spectrally_connected, verify_decomposition,
    IntertwinerOptions,
};
use nearcenter::{reference, tol, Error, Result};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "nearcenter",
    version,
    about = "Near-group centers, modular data and condensation"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct Common {
    /// RNG seed for multistart searches
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// residual tolerance (stage default when absent)
    #[arg(long)]
    tol: Option<f64>,
    /// output directory
    #[arg(long, default_value = "out")]
    out: PathBuf,
}

#[derive(Args, Clone)]
struct MdInput {
    /// modular data JSON file
    #[arg(long, conflicts_with = "reference")]
    input: Option<PathBuf>,
    /// embedded reference: rank10, rank9-printed, g2-level4
    #[arg(long = "ref")]
    reference: Option<String>,
}

impl MdInput {
    fn load(&self) -> Result<ModularData> {
        match (&self.input, &self.reference) {
            (Some(p), _) => read_modular_data(p),
            (None, Some(r)) => reference::by_name(r),
            (None, None) => Err(Error::InvalidInput("pass --input or --ref".into())),
        }
    }
}

#[derive(Subcommand)]
enum Cmd {
    /// Solve for every near-group structure on a group and pairing
    Solve {
        /// cyclic factor orders, e.g. 4,4
        #[arg(long, value_delimiter = ',', required = true)]
        group: Vec<i64>,
        /// JSON matrix of pairing exponents in turns, e.g. [["-1/8"]]
        #[arg(long)]
        bichar: PathBuf,
        /// keep only this c, in turns
        #[arg(long)]
        c: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Solve the half-braiding equations of one near-group solution
    Triples {
        /// near-group solution JSON
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Assemble the modular data of the center
    Center {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        triples: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Check modular data axioms, Verlinde integrality and balancing
    Verify {
        #[command(flatten)]
        md: MdInput,
        #[command(flatten)]
        common: Common,
    },
    /// Condense by a Tannakian subgroup of the given order
    Condense {
        #[command(flatten)]
        md: MdInput,
        #[arg(long)]
        order: usize,
        #[command(flatten)]
        common: Common,
    },
    /// Split off the pointed modular factor
    Factor {
        #[command(flatten)]
        md: MdInput,
        #[command(flatten)]
        common: Common,
    },
    /// Match `--input` against the embedded reference `--ref`
    Compare {
        #[arg(long)]
        input: PathBuf,
        #[arg(long = "ref")]
        reference: String,
        /// also search Galois conjugates
        #[arg(long)]
        galois: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Decompose the SL(2,Z) representation over the built-in catalog
    Decompose {
        #[command(flatten)]
        md: MdInput,
        #[command(flatten)]
        common: Common,
    },
    /// Run every stage from a preset or config file
    Pipeline {
        #[arg(long, conflicts_with = "config")]
        preset: Option<String>,
        #[arg(long)]
        config: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
}

fn solver_options(c: &Common) -> SolverOptions {
    SolverOptions {
        residual_tol: c.tol.unwrap_or(tol::CONSTRUCT),
        rng_seed: c.seed,
        ..SolverOptions::default()
    }
}

fn read_bichar(group: &GroupSpec, path: &Path) -> Result<Bicharacter> {
    let raw: Vec<Vec<String>> = read_json(path)?;
    let ex = raw
        .iter()
        .map(|row| {
            row.iter()
                .map(|s| parse_fraction(s))
                .collect::<Result<Vec<Q>>>()
        })
        .collect::<Result<_>>()?;
    Bicharacter::new(group.clone(), ex)
}

fn print_json<T: serde::Serialize>(v: &T) -> Result<()> {
    println!("{}", serde_json::to_string_pretty(v)?);
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.cmd {
        Cmd::Solve {
            group,
            bichar,
            c,
            common,
        } => {
            let spec = GroupSpec::new(group)?;
            let b = read_bichar(&spec, &bichar)?;
            let want = c.as_deref().map(parse_fraction).transpose()?;
            let opts = solver_options(&common);
            let mut sols = Vec::new();
            for (a, ct) in feasible_pairs(&spec, &b)? {
                if want.is_some_and(|w| nearcenter::abelian::reduce_mod(w, 1) != ct) {
                    continue;
                }
                sols.extend(solve_b(&spec, &b, &a, ct, &opts)?);
            }
            if sols.is_empty() {
                return Err(Error::Infeasible("no near-group solution".into()));
            }
            for (i, s) in sols.iter().enumerate() {
                write_json_atomic(&common.out.join(format!("neargroup_{i}.json")), s)?;
            }
            println!(
                "{} solution(s) written to {}",
                sols.len(),
                common.out.display()
            );
        }
        Cmd::Triples { input, common } => {
            let data: NearGroupData = read_json(&input)?;
            let t = solve_triples(&data, &solver_options(&common))?;
            write_json_atomic(&common.out.join("triples.json"), &t)?;
            let want = expected_count(&data.group);
            println!("{} of {want} triples", t.len());
            if t.len() != want {
                return Err(Error::Shortfall {
                    found: t.len(),
                    expected: want,
                    detail: "half-braiding triples".into(),
                });
            }
        }
        Cmd::Center {
            input,
            triples,
            common,
        } => {
            let data: NearGroupData = read_json(&input)?;
            let t: Vec<HalfBraidingTriple> = read_json(&triples)?;
            let md = build_center(&data, &t)?;
            write_modular_data(&common.out.join("center.json"), &md)?;
            println!("center of rank {}", md.rank());
        }
        Cmd::Verify { md, common } => {
            let md = md.load()?;
            let tol = common.tol.unwrap_or(tol::VERIFY);
            let rep = verify_modular(&md, tol);
            print_json(&rep)?;
            if !rep.pass {
                return Err(Error::Verification(rep.failures.join("; ")));
            }
            let f = verlinde_fusion(&md, tol::INTEGER)?;
            let bal = balancing_check(&md, &f);
            println!("Verlinde integral; balancing residual {bal:.3e}");
            if bal > tol {
                return Err(Error::Verification(format!("balancing residual {bal:.3e}")));
            }
        }
        Cmd::Condense { md, order, common } => {
            let md = md.load()?;
            let h = find_tannakian_subgroups(&md)?
                .into_iter()
                .find(|h| h.labels.len() == order)
                .ok_or_else(|| {
                    Error::Infeasible(format!("no Tannakian subgroup of order {order}"))
                })?;
            let res = condense(
                &md,
                &h,
                &CondenseOptions {
                    seed: common.seed,
                    ..CondenseOptions::default()
                },
            )?;
            write_modular_data(&common.out.join("condensed.json"), &res.condensed)?;
            println!(
                "subgroup {:?} of type {:?}; centralizer rank {}; condensed rank {}",
                h.labels,
                h.group_type,
                res.centralizer.len(),
                res.condensed.rank()
            );
            for u in &res.unresolved {
                println!("unresolved: {u}");
            }
        }
        Cmd::Factor { md, common } => {
            let md = md.load()?;
            let (p, c) = factor_pointed(&md)?
                .ok_or_else(|| Error::Infeasible("no modular pointed factor".into()))?;
            write_modular_data(&common.out.join("pointed.json"), &p)?;
            write_modular_data(&common.out.join("complement.json"), &c)?;
            println!("pointed rank {}, complement rank {}", p.rank(), c.rank());
        }
        Cmd::Compare {
            input,
            reference: r,
            galois,
            common,
        } => {
            let cand = read_modular_data(&input)?;
            let refd = reference::by_name(&r)?;
            let rep = compare_modular_data(&cand, &refd, galois, common.tol.unwrap_or(1e-6))?;
            print_json(&rep)?;
            rep.into_result()?;
        }
        Cmd::Decompose { md, common } => {
            let md = md.load()?;
            let cat = catalog();
            let opts = IntertwinerOptions {
                seed: common.seed,
                tol: common.tol.unwrap_or(1e-8),
                ..IntertwinerOptions::default()
            };
            let mut accepted = 0;
            for ty in candidate_decompositions(&md, &cat)? {
                if !spectrally_connected(&ty, &cat)? {
                    println!("{ty}: excluded (splits into parts with disjoint t-spectra)");
                    continue;
                }
                match verify_decomposition(&md, &ty, &cat, &opts) {
                    Ok(fit) => {
                        accepted += 1;
                        println!("{ty}: accepted, residual {:.3e}", fit.residual);
                    }
                    Err(Error::Infeasible(why)) => println!("{ty}: rejected, {why}"),
                    Err(e) => return Err(e),
                }
            }
            if accepted == 0 {
                return Err(Error::Infeasible("no decomposition accepted".into()));
            }
        }
        Cmd::Pipeline {
            preset,
            config,
            common,
        } => {
            let mut cfg = match (preset, config) {
                (Some(p), _) => PipelineConfig::preset(&p)?,
                (None, Some(c)) => read_json(&c)?,
                (None, None) => {
                    return Err(Error::InvalidInput("pass --preset or --config".into()))
                }
            };
            cfg.seed = common.seed;
            if let Some(t) = common.tol {
                cfg.residual_tol = t;
            }
            let (rep, _) = run_pipeline(&cfg, Some(&common.out))?;
            for s in &rep.stages {
                let tag = match s.status {
                    StageStatus::Ok => "ok",
                    StageStatus::Failed => "FAILED",
                    StageStatus::Skipped => "skipped",
                };
                println!(
                    "{:<9} {:<8} {:>7.2}s  {}",
                    s.stage, tag, s.seconds, s.detail
                );
            }
            let code = rep.exit_code();
            if code != 0 {
                std::process::exit(code);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
