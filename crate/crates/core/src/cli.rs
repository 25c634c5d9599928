//! Command-line front end. Every command prints one JSON report
//! `{command, result, provenance, exit_code}`; failures print
//! `{command, error, exit_code}`.
//!
//! Exit codes: 0 success, 1 mathematical check failed, 2 input or
//! precondition error, 3 capability limit, 4 internal error.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use crate::arc::{
    contact_membership, empirical_val, jet_codim_monomial, sample_arc_indexed, ArcOrder,
    ContactMode, Decision, Order,
};
use crate::error::{Error, Result};
use crate::fixtures::golden_rows;
use crate::io::{self, ArcInput, Int};
use crate::lattice::{dual_cone, hilbert_basis, relint_contains, Cone, DualVector, LatticeVector};
use crate::mather::{
    criterion_smooth, criterion_toric, mather_bruteforce_oracle, mather_discrepancy,
    CriterionReport,
};
use crate::poly::{LaurentPolynomial, Rational};
use crate::toric::{val_eval, val_quotient, ToricValuation};
use crate::tower::oracle::prune_conditions;
use crate::tower::{
    determination_oracle, extract_generating_conditions, relative_canonical_order, val_e,
    DivisorialValuation, GeneratingConditions, OracleBudget, OracleVerdict,
};

#[derive(Parser, Debug)]
#[command(
    name = "divisorial",
    version,
    about = "Divisorial valuations, toric discrepancies and arcs"
)]
pub struct Cli {
    /// Recompute every worked example and print a pass/fail table.
    #[arg(long = "paper-examples")]
    pub golden: bool,

    /// With --paper-examples: emit the JSON report instead of the table.
    #[arg(long)]
    pub json: bool,

    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Cones and their dual semigroups.
    #[command(subcommand)]
    Cone(ConeCmd),
    /// Toric valuations.
    #[command(subcommand)]
    Val(ValCmd),
    /// Mather discrepancy of a toric valuation.
    Mather(MatherArgs),
    /// Toric-valuation criteria.
    #[command(subcommand)]
    Criterion(CriterionCmd),
    /// Blow-up towers and divisorial valuations.
    #[command(subcommand)]
    Tower(TowerCmd),
    /// Arcs and contact loci.
    #[command(subcommand)]
    Arc(ArcCmd),
}

#[derive(Subcommand, Debug)]
pub enum ConeCmd {
    /// Primitive rays of the dual cone.
    Dual {
        #[arg(long)]
        cone: PathBuf,
    },
    /// Hilbert basis of the dual semigroup.
    Hilbert {
        #[arg(long)]
        cone: PathBuf,
    },
    /// Whether a lies in the relative interior.
    Relint {
        #[arg(long)]
        cone: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum ValCmd {
    /// val_a(f), or val_a(f / den).
    Eval {
        /// Defaults to the positive orthant.
        #[arg(long)]
        cone: Option<PathBuf>,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long)]
        poly: PathBuf,
        #[arg(long)]
        den: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
pub struct MatherArgs {
    #[arg(long)]
    cone: PathBuf,
    #[arg(long, allow_hyphen_values = true)]
    a: String,
    /// Also run the exhaustive search with this pairing bound and compare.
    #[arg(long)]
    verify: Option<i64>,
}

#[derive(Subcommand, Debug)]
pub enum CriterionCmd {
    /// Smooth case on C^n: values v(x_i), k_v + q(v), weights a.
    Smooth {
        #[arg(long)]
        vals: String,
        #[arg(long)]
        kq: String,
        #[arg(long)]
        weights: String,
    },
    /// Toric case: values on the Hilbert basis (in its sorted order).
    Toric {
        #[arg(long)]
        cone: PathBuf,
        #[arg(long)]
        vals: String,
        #[arg(long)]
        kq: String,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
    },
}

#[derive(Subcommand, Debug)]
pub enum TowerCmd {
    /// q · val_E(f).
    Eval {
        #[arg(long)]
        tower: PathBuf,
        #[arg(long)]
        poly: PathBuf,
    },
    /// Relative canonical order and codimension.
    Canonical {
        #[arg(long)]
        tower: PathBuf,
    },
    /// Generating conditions, optionally pruned.
    Conditions {
        #[arg(long)]
        tower: PathBuf,
        #[arg(long)]
        prune: bool,
        #[command(flatten)]
        budget: BudgetArgs,
    },
    /// Search for valuations that meet the conditions but undercut the tower.
    Oracle {
        #[arg(long)]
        conditions: PathBuf,
        #[arg(long)]
        tower: PathBuf,
        /// Polynomial list file; defaults to the conditions and coordinates.
        #[arg(long)]
        probes: Option<PathBuf>,
        #[command(flatten)]
        budget: BudgetArgs,
    },
}

#[derive(Args, Debug)]
pub struct BudgetArgs {
    #[arg(long, default_value_t = 5)]
    depth: usize,
    /// Comma-separated centre coordinates.
    #[arg(long, default_value = "-2,-1,0,1,2", allow_hyphen_values = true)]
    grid: String,
    #[arg(long, default_value_t = 6)]
    max_weight: i64,
    #[arg(long, default_value_t = 3)]
    max_q: i64,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ModeArg {
    Exact,
    AtLeast,
}

#[derive(Subcommand, Debug)]
pub enum ArcCmd {
    /// Sample an arc of W(val_a).
    Sample {
        #[arg(long)]
        cone: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long)]
        truncation: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 0)]
        index: u64,
    },
    /// Order of f along an arc.
    Ord {
        #[arg(long)]
        arc: PathBuf,
        #[arg(long)]
        poly: PathBuf,
    },
    /// Contact-locus membership for the ideal of a polynomial list.
    Contact {
        #[arg(long)]
        arc: PathBuf,
        #[arg(long)]
        gens: PathBuf,
        #[arg(long)]
        m: i64,
        #[arg(long, value_enum, default_value = "exact")]
        mode: ModeArg,
    },
    /// Minimum order of f over sampled arcs, compared with val_a(f).
    EmpiricalVal {
        #[arg(long)]
        cone: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long)]
        poly: PathBuf,
        #[arg(long, default_value_t = 50)]
        samples: u64,
        #[arg(long)]
        truncation: Option<usize>,
        #[arg(long)]
        seed: u64,
    },
    /// Codimension of {ord x_i >= a_i} in the m-jets of C^n.
    JetCodim {
        #[arg(long)]
        a: String,
        #[arg(long)]
        m: i64,
    },
}

/// What a process run produces.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

struct Done {
    result: Value,
    code: i32,
}

fn ok(result: Value) -> Result<Done> {
    Ok(Done { result, code: 0 })
}

fn checked(result: Value, success: bool) -> Result<Done> {
    Ok(Done {
        result,
        code: if success { 0 } else { 1 },
    })
}

/// Parses `args` (without the program name) and runs the command.
pub fn run_args<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let args: Vec<String> = args.into_iter().map(Into::into).collect();
    let echo = args.join(" ");
    let cli = match Cli::try_parse_from(std::iter::once("divisorial".to_string()).chain(args)) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            return Outcome {
                stdout: e.render().to_string(),
                code,
            };
        }
    };
    run(&cli, &echo)
}

pub fn run(cli: &Cli, echo: &str) -> Outcome {
    if cli.golden {
        return golden(cli.json, echo);
    }
    let Some(command) = &cli.command else {
        return Outcome {
            stdout: "no command given; try --help\n".into(),
            code: 2,
        };
    };
    match dispatch(command) {
        Ok(done) => Outcome {
            stdout: io::canonical(&json!({
                "command": echo,
                "result": done.result,
                "provenance": Value::Null,
                "exit_code": done.code,
            })),
            code: done.code,
        },
        Err(e) => {
            let code = e.exit_code();
            Outcome {
                stdout: io::canonical(&json!({
                    "command": echo,
                    "error": {"kind": e.kind(), "message": e.to_string()},
                    "exit_code": code,
                })),
                code,
            }
        }
    }
}

fn golden(as_json: bool, echo: &str) -> Outcome {
    let rows = golden_rows();
    let all = rows.iter().all(|r| r.pass());
    let code = if all { 0 } else { 1 };
    let stdout = if as_json {
        let result: Vec<Value> = rows
            .iter()
            .map(|r| {
                json!({
                    "name": r.name,
                    "expected": r.expected,
                    "computed": r.computed,
                    "pass": r.pass(),
                })
            })
            .collect();
        let provenance: Vec<&str> = rows.iter().map(|r| r.anchor.as_str()).collect();
        io::canonical(&json!({
            "command": echo,
            "result": result,
            "provenance": provenance,
            "exit_code": code,
        }))
    } else {
        let width = rows
            .iter()
            .map(|r| r.name.chars().count())
            .max()
            .unwrap_or(0);
        let mut s = String::new();
        for r in &rows {
            let pad = width - r.name.chars().count();
            s.push_str(&format!(
                "{} {}{}  expected {:<20} computed {}\n",
                if r.pass() { "PASS" } else { "FAIL" },
                r.name,
                " ".repeat(pad),
                r.expected,
                r.computed
            ));
        }
        let passed = rows.iter().filter(|r| r.pass()).count();
        s.push_str(&format!("{passed}/{} passed\n", rows.len()));
        s
    };
    Outcome { stdout, code }
}

fn read(path: &Path) -> Result<String> {
    io::read_file(path)
}

fn vector(field: &str, s: &str) -> Result<LatticeVector> {
    Ok(LatticeVector::new(io::parse_int_list(field, s)?))
}

fn one_int(field: &str, s: &str) -> Result<BigInt> {
    match io::parse_int_list(field, s)?.as_slice() {
        [x] => Ok(x.clone()),
        _ => Err(Error::parse(field, "expected a single integer")),
    }
}

fn dual_list(v: &[DualVector]) -> Value {
    serde_json::to_value(v.iter().map(|u| io_ints(u.coords())).collect::<Vec<_>>())
        .expect("serializable")
}

fn io_ints(v: &[BigInt]) -> Vec<Int> {
    v.iter().cloned().map(Int).collect()
}

fn big(x: &BigInt) -> Value {
    serde_json::to_value(Int(x.clone())).expect("serializable")
}

fn order_json(o: Order) -> Value {
    match o {
        Order::Known(k) => json!({"kind": "known", "value": k}),
        Order::AtLeast(k) => json!({"kind": "at-least", "value": k}),
    }
}

fn criterion_json(r: &CriterionReport) -> Value {
    json!({
        "cond_values": r.cond_values,
        "cond_codim": r.cond_codim,
        "concluded": r.concluded,
        "q": r.q.as_ref().map(big),
        "weights": r.weights.as_ref().map(|w| io_ints(w.coords())),
        "equality_witness": r.equality_witness.iter().map(|w| json!({
            "relation": w.relation,
            "lhs": big(&w.lhs),
            "rhs": big(&w.rhs),
            "holds": w.holds,
        })).collect::<Vec<_>>(),
    })
}

fn budget(b: &BudgetArgs) -> Result<OracleBudget> {
    let grid = b
        .grid
        .split(',')
        .map(io::parse_rational)
        .collect::<Result<Vec<Rational>>>()?;
    Ok(OracleBudget {
        depth: b.depth,
        grid,
        max_weight: b.max_weight,
        max_q: b.max_q,
    }
    .extend_grid(&[]))
}

fn conditions_display(c: &GeneratingConditions, names: &[String]) -> Vec<String> {
    c.conditions
        .iter()
        .map(|(f, v)| format!("v({}) = {v}", f.display_with(names)))
        .collect()
}

fn parse_poly_list(text: &str) -> Result<Vec<LaurentPolynomial>> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::parse("polys", e))?;
    // A conditions file doubles as a polynomial list.
    if v.get("conditions").is_some() {
        return Ok(io::parse_conditions(text)?.polys().cloned().collect());
    }
    io::parse_poly_list(text)
}

fn dispatch(cmd: &Command) -> Result<Done> {
    match cmd {
        Command::Cone(c) => cone_cmd(c),
        Command::Val(ValCmd::Eval { cone, a, poly, den }) => {
            let a = vector("a", a)?;
            let cone = match cone {
                Some(p) => io::parse_cone(&read(p)?)?,
                None => Cone::orthant(a.rank()),
            };
            let v = ToricValuation::new(cone, a)?;
            let f = io::parse_poly(&read(poly)?)?;
            let value = match den {
                Some(d) => val_quotient(&v, &f, &io::parse_poly(&read(d)?)?)?,
                None => val_eval(&v, &f)?,
            };
            ok(json!({"value": big(&value), "q": big(v.q())}))
        }
        Command::Mather(m) => {
            let c = io::parse_cone(&read(&m.cone)?)?;
            let a = vector("a", &m.a)?;
            let r = mather_discrepancy(&c, &a)?;
            let mut result = json!({
                "q": big(&r.q),
                "k": big(&r.k_mather),
                "codim": big(&r.codim),
                "argmin": dual_list(&r.argmin_subset),
            });
            let mut success = true;
            if let Some(bound) = m.verify {
                let b = mather_bruteforce_oracle(&c, &a, bound)?;
                success = b.codim == r.codim && b.q == r.q;
                result["verify"] =
                    json!({"bound": bound, "codim": big(&b.codim), "agrees": success});
            }
            checked(result, success)
        }
        Command::Criterion(CriterionCmd::Smooth { vals, kq, weights }) => {
            let vals: Vec<(usize, BigInt)> = io::parse_int_list("vals", vals)?
                .into_iter()
                .enumerate()
                .collect();
            let r = criterion_smooth(
                &vals,
                &one_int("kq", kq)?,
                &io::parse_int_list("weights", weights)?,
            )?;
            checked(criterion_json(&r), r.concluded)
        }
        Command::Criterion(CriterionCmd::Toric { cone, vals, kq, a }) => {
            let c = io::parse_cone(&read(cone)?)?;
            let basis = hilbert_basis(&c)?;
            let values = io::parse_int_list("vals", vals)?;
            if values.len() != basis.len() {
                return Err(Error::parse(
                    "vals",
                    format!("{} values for {} basis elements", values.len(), basis.len()),
                ));
            }
            let pairs: Vec<(DualVector, BigInt)> = basis.iter().cloned().zip(values).collect();
            let r = criterion_toric(&c, &basis, &pairs, &one_int("kq", kq)?, &vector("a", a)?)?;
            let mut result = criterion_json(&r);
            result["basis"] = dual_list(&basis.elements);
            checked(result, r.concluded)
        }
        Command::Tower(t) => tower_cmd(t),
        Command::Arc(a) => arc_cmd(a),
    }
}

fn cone_cmd(cmd: &ConeCmd) -> Result<Done> {
    match cmd {
        ConeCmd::Dual { cone } => {
            let c = io::parse_cone(&read(cone)?)?;
            ok(json!({"dual_rays": dual_list(&dual_cone(&c))}))
        }
        ConeCmd::Hilbert { cone } => {
            let c = io::parse_cone(&read(cone)?)?;
            let b = hilbert_basis(&c)?;
            ok(serde_json::to_value(io::basis_json(&b)).expect("serializable"))
        }
        ConeCmd::Relint { cone, a } => {
            let c = io::parse_cone(&read(cone)?)?;
            ok(json!({"relint": relint_contains(&c, &vector("a", a)?)?}))
        }
    }
}

fn load_tower(p: &Path) -> Result<DivisorialValuation> {
    io::parse_tower(&read(p)?)
}

fn tower_cmd(cmd: &TowerCmd) -> Result<Done> {
    match cmd {
        TowerCmd::Eval { tower, poly } => {
            let v = load_tower(tower)?;
            let f = io::parse_poly(&read(poly)?)?;
            ok(json!({"value": big(&val_e(&v, &f)?)}))
        }
        TowerCmd::Canonical { tower } => {
            let v = load_tower(tower)?;
            let ord = relative_canonical_order(&v.tower)?;
            ok(json!({
                "relative_canonical_order": ord,
                "q": big(&v.q),
                "k": big(&v.canonical_order()?),
                "codim": big(&v.codimension()?),
            }))
        }
        TowerCmd::Conditions {
            tower,
            prune,
            budget: b,
        } => {
            let v = load_tower(tower)?;
            let names = v.tower.names().to_vec();
            let raw = extract_generating_conditions(&v)?;
            let mut result = json!({
                "raw": io::conditions_json(&raw),
                "raw_display": conditions_display(&raw, &names),
            });
            if *prune {
                let pruned = prune_conditions(&raw, &v, &budget(b)?)?;
                result["pruned_display"] = json!(conditions_display(&pruned, &names));
                result["pruned"] =
                    serde_json::to_value(io::conditions_json(&pruned)).expect("serializable");
            }
            ok(result)
        }
        TowerCmd::Oracle {
            conditions,
            tower,
            probes,
            budget: b,
        } => {
            let v = load_tower(tower)?;
            let conds = io::parse_conditions(&read(conditions)?)?;
            let probes = match probes {
                Some(p) => parse_poly_list(&read(p)?)?,
                None => {
                    let mut ps: Vec<LaurentPolynomial> = conds.polys().cloned().collect();
                    for i in 0..v.rank() {
                        let x = LaurentPolynomial::variable(v.rank(), i);
                        if !ps.contains(&x) {
                            ps.push(x);
                        }
                    }
                    ps
                }
            };
            let r = determination_oracle(&conds, &v, &probes, &budget(b)?)?;
            let names = v.tower.names().to_vec();
            let result = json!({
                "verdict": r.verdict.to_string(),
                "examined": r.examined,
                "qualifying": r.qualifying,
                "probes": probes.iter().zip(&r.probes).map(|(f, s)| json!({
                    "probe": f.display_with(&names).to_string(),
                    "target": s.target,
                    "min_qualifying": s.min_qualifying,
                })).collect::<Vec<_>>(),
                "violations": r.violations.iter().map(|x| json!({
                    "candidate": x.candidate,
                    "probe": probes[x.probe].display_with(&names).to_string(),
                    "candidate_value": x.candidate_value,
                    "target_value": x.target_value,
                })).collect::<Vec<_>>(),
            });
            checked(result, r.verdict == OracleVerdict::NoViolationWithinBudget)
        }
    }
}

fn arc_cmd(cmd: &ArcCmd) -> Result<Done> {
    match cmd {
        ArcCmd::Sample {
            cone,
            a,
            truncation,
            seed,
            index,
        } => {
            let c = io::parse_cone(&read(cone)?)?;
            let g = sample_arc_indexed(&c, &vector("a", a)?, *truncation, *seed, *index)?;
            ok(io::arc_json(&ArcInput::Toric(g)))
        }
        ArcCmd::Ord { arc, poly } => {
            let g = io::parse_arc(&read(arc)?)?;
            let f = io::parse_poly(&read(poly)?)?;
            let o = match &g {
                ArcInput::Toric(g) => g.ord(&f)?,
                ArcInput::Coordinate(g) => g.ord(&f)?,
            };
            ok(json!({"order": order_json(o)}))
        }
        ArcCmd::Contact { arc, gens, m, mode } => {
            let g = io::parse_arc(&read(arc)?)?;
            let gens = parse_poly_list(&read(gens)?)?;
            let mode = match mode {
                ModeArg::Exact => ContactMode::Exact,
                ModeArg::AtLeast => ContactMode::AtLeast,
            };
            let d = match &g {
                ArcInput::Toric(g) => contact_membership(g, &gens, *m, mode)?,
                ArcInput::Coordinate(g) => contact_membership(g, &gens, *m, mode)?,
            };
            checked(json!({"member": d.to_string()}), d == Decision::True)
        }
        ArcCmd::EmpiricalVal {
            cone,
            a,
            poly,
            samples,
            truncation,
            seed,
        } => {
            let c = io::parse_cone(&read(cone)?)?;
            let a = vector("a", a)?;
            let f = io::parse_poly(&read(poly)?)?;
            let emp = empirical_val(&c, &a, &f, *samples, *truncation, *seed)?;
            let exact = val_eval(&ToricValuation::new(c, a)?, &f)?;
            checked(
                json!({"empirical": big(&emp), "val": big(&exact), "agrees": emp == exact}),
                emp == exact,
            )
        }
        ArcCmd::JetCodim { a, m } => {
            let a = io::parse_i64_list("a", a)?;
            ok(json!({"codim": jet_codim_monomial(&a, *m)?}))
        }
    }
}
