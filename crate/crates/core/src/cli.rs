//! Command-line front end. Every command prints one JSON document on
//! standard output; diagnostics go to standard error.
//!
//! Exit codes: `0` success, `1` parse or input error, `2` budget exceeded,
//! `3` verification failure.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::{json, Map, Value};

use crate::assigning::{certify, induced, Assigning};
use crate::cycles::{enumerate_bonds, enumerate_cycles, LinearOrder};
use crate::error::{Error, Result};
use crate::group::{
    coboundary, count_colorings, count_tensions, cycle_sum, AbelianGroup, EdgeFunction,
};
use crate::multigraph::{EdgeId, EdgeSet, MultiGraph};
use crate::polynomial::{
    assigning_polynomial, broken_coefficients, cycle_assigning_polynomial, unsigned_coefficients,
    IntPolynomial, Method,
};
use crate::Budget;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 1;
pub const EXIT_BUDGET: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

/// Largest group order tried when certifying an assigning read from a file.
const CERTIFY_MAX_ORDER: u64 = 4;
const CERTIFY_MAX_ITERATIONS: u64 = 1_000_000;

#[derive(Debug, Parser)]
#[command(
    name = "cyclepoly",
    version,
    about = "Cycle-assigning polynomials of multigraphs"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    #[command(flatten)]
    pub options: Options,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// List every cycle with its traversal signs.
    Cycles,
    /// List every bond.
    Bonds,
    /// Print the assigning induced by `--f` over `--group`.
    Induced,
    /// Print P(G,α;k).
    Poly,
    /// Print τ(G,α;k).
    Tau,
    /// Brute-force coloring and tension counts for `--f` over `--group`.
    Count,
    /// Cross-check every method and oracle on the instance.
    Verify,
}

#[derive(Debug, Clone, Args)]
pub struct Options {
    /// Graph file (`vertices n` / `edge id tail head`).
    #[arg(long, global = true)]
    pub graph: Option<PathBuf>,

    /// Finite abelian group, e.g. `Z5` or `Z2x2`.
    #[arg(long, global = true)]
    pub group: Option<String>,

    /// Edge-function file (`f id r1 r2 ...`).
    #[arg(long, global = true)]
    pub f: Option<PathBuf>,

    /// Assigning file (`cycle id id ... = 0|1`).
    #[arg(long, global = true)]
    pub assigning: Option<PathBuf>,

    /// One of subgraph, delcon, broken, bond, decompose.
    #[arg(long, global = true, default_value = "subgraph")]
    pub method: Method,

    /// Linear order on the edges, e.g. `e5,e2,e0,...`.
    #[arg(long, global = true)]
    pub order: Option<String>,

    /// Evaluate the polynomial at this integer.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub eval: Option<BigInt>,

    /// Iteration limit for brute-force enumeration.
    #[arg(long, global = true)]
    pub budget: Option<u64>,

    /// Accepted for compatibility; output is always JSON.
    #[arg(long, global = true)]
    pub json: bool,
}

/// A fully loaded job.
#[derive(Debug, Clone)]
pub struct Job {
    pub command: Command,
    pub graph: MultiGraph,
    pub group: Option<AbelianGroup>,
    pub f: Option<EdgeFunction>,
    pub assigning: Option<Assigning>,
    pub method: Method,
    pub order: LinearOrder,
    pub eval: Option<BigInt>,
    pub budget: Budget,
}

#[derive(Debug)]
pub struct Outcome {
    pub output: Value,
    pub exit_code: i32,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

impl Job {
    pub fn load(cli: &Cli) -> Result<Job> {
        let o = &cli.options;
        let graph_path = o
            .graph
            .as_ref()
            .ok_or_else(|| Error::invalid("--graph is required"))?;
        let graph: MultiGraph = read(graph_path)?.parse()?;
        let group = o
            .group
            .as_deref()
            .map(str::parse::<AbelianGroup>)
            .transpose()?;
        let f = match (&o.f, &group) {
            (Some(path), Some(group)) => {
                let f = EdgeFunction::parse(&read(path)?, group)?;
                f.check_total(&graph)?;
                Some(f)
            }
            (Some(_), None) => return Err(Error::invalid("--f requires --group")),
            (None, _) => None,
        };
        if f.is_some() && o.assigning.is_some() {
            return Err(Error::invalid("--f and --assigning are mutually exclusive"));
        }
        let assigning = o
            .assigning
            .as_ref()
            .map(|p| Assigning::parse(&read(p)?, &graph))
            .transpose()?;
        let order = match &o.order {
            Some(text) => LinearOrder::parse(&graph, text)?,
            None => LinearOrder::increasing(&graph),
        };
        let mut budget = Budget::default();
        if let Some(n) = o.budget {
            budget.max_iterations = n;
        }
        let needs_f = matches!(cli.command, Command::Induced | Command::Count);
        if needs_f && f.is_none() {
            return Err(Error::invalid("this command requires --group and --f"));
        }
        Ok(Job {
            command: cli.command,
            graph,
            group,
            f,
            assigning,
            method: o.method,
            order,
            eval: o.eval.clone(),
            budget,
        })
    }

    /// The assigning in force: from `--f`, from `--assigning`, or `α ≡ 0`.
    fn resolve_assigning(&self) -> Result<Assigning> {
        if let (Some(group), Some(f)) = (&self.group, &self.f) {
            return induced(&self.graph, group, f);
        }
        if let Some(a) = &self.assigning {
            let mut a = a.clone();
            if !a.is_known_admissible() {
                let probe = Budget {
                    max_iterations: CERTIFY_MAX_ITERATIONS.min(self.budget.max_iterations),
                    ..self.budget
                };
                match certify(&self.graph, &mut a, CERTIFY_MAX_ORDER, &probe) {
                    Ok(_) | Err(Error::BudgetExceeded { .. }) => {}
                    Err(e) => return Err(e),
                }
            }
            return Ok(a);
        }
        Ok(Assigning::zero(&self.graph))
    }
}

fn ids_json(set: &EdgeSet) -> Value {
    Value::Array(set.iter().map(|e| json!(e.0)).collect())
}

fn big(n: &BigInt) -> Value {
    Value::String(n.to_string())
}

fn assigning_json(a: &Assigning) -> Value {
    Value::Array(
        a.values()
            .iter()
            .map(|(c, &v)| json!({"cycle": ids_json(c), "value": u8::from(v)}))
            .collect(),
    )
}

fn admissibility_warning(a: &Assigning, method: Method) -> Option<String> {
    (method.needs_admissible() && !a.is_known_admissible()).then(|| {
        format!(
            "assigning is not known to be admissible; the {method} method assumes it is and may disagree with subgraph"
        )
    })
}

fn polynomial_json(p: &IntPolynomial, eval: Option<&BigInt>) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("polynomial".into(), p.to_json());
    m.insert("display".into(), Value::String(p.to_string()));
    if let Some(k) = eval {
        m.insert(
            "evaluation".into(),
            json!({"k": big(k), "value": big(&p.evaluate(k))}),
        );
    }
    m
}

pub fn run(job: &Job) -> Result<Outcome> {
    let g = &job.graph;
    let ok = |output| {
        Ok(Outcome {
            output,
            exit_code: EXIT_OK,
        })
    };
    match job.command {
        Command::Cycles => {
            let cycles: Vec<Value> = enumerate_cycles(g)
                .iter()
                .map(|c| {
                    let signs: Vec<Value> = c.signs().map(|(_, s)| json!(s)).collect();
                    json!({"edges": ids_json(c.edges()), "signs": signs})
                })
                .collect();
            ok(json!({"count": cycles.len(), "cycles": cycles}))
        }
        Command::Bonds => {
            let bonds: Vec<Value> = enumerate_bonds(g)
                .iter()
                .map(|b| ids_json(&b.edges))
                .collect();
            ok(json!({"bonds": bonds, "count": bonds.len()}))
        }
        Command::Induced => {
            let a = job.resolve_assigning()?;
            ok(json!({
                "assigning": assigning_json(&a),
                "group": job.group.as_ref().map(ToString::to_string),
            }))
        }
        Command::Poly | Command::Tau => {
            let a = job.resolve_assigning()?;
            let p = if job.command == Command::Poly {
                cycle_assigning_polynomial(g, &a, job.method, &job.order, &job.budget)?
            } else {
                assigning_polynomial(g, &a, job.method, &job.order, &job.budget)?
            };
            let mut m = polynomial_json(&p, job.eval.as_ref());
            m.insert("method".into(), json!(job.method.name()));
            m.insert(
                "quantity".into(),
                json!(if job.command == Command::Poly {
                    "P"
                } else {
                    "tau"
                }),
            );
            if job.command == Command::Poly {
                let w: Vec<Value> = unsigned_coefficients(g, &p).iter().map(big).collect();
                m.insert("unsigned_coefficients".into(), Value::Array(w));
            }
            if let Some(w) = admissibility_warning(&a, job.method) {
                m.insert("warning".into(), Value::String(w));
            }
            ok(Value::Object(m))
        }
        Command::Count => {
            let (group, f) = (
                job.group.as_ref().expect("checked in load"),
                job.f.as_ref().expect("checked in load"),
            );
            let colorings = count_colorings(g, group, f, &job.budget)?;
            let tensions = count_tensions(g, group, f, &job.budget)?;
            ok(json!({
                "colorings": colorings,
                "components": g.component_count(),
                "group": group.to_string(),
                "order": group.order(),
                "tensions": tensions,
            }))
        }
        Command::Verify => verify(job),
    }
}

struct Checks(Vec<Value>);

impl Checks {
    fn record(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        let status = if passed { "pass" } else { "fail" };
        self.0
            .push(json!({"name": name, "status": status, "detail": detail.into()}));
    }

    fn skip(&mut self, name: &str, reason: impl Into<String>) {
        self.0
            .push(json!({"name": name, "status": "skipped", "detail": reason.into()}));
    }

    fn all_passed(&self) -> bool {
        self.0.iter().all(|c| c["status"] != "fail")
    }
}

/// A few deterministic orders: increasing, decreasing, the user's, and
/// cyclic rotations of the increasing order.
fn probe_orders(job: &Job) -> Result<Vec<LinearOrder>> {
    let g = &job.graph;
    let ids: Vec<EdgeId> = g.edge_ids().collect();
    let mut seqs = vec![ids.clone(), ids.iter().rev().copied().collect()];
    for shift in 1..ids.len().min(4) {
        let mut s = ids.clone();
        s.rotate_left(shift);
        seqs.push(s);
    }
    let mut orders = vec![job.order.clone()];
    for s in seqs {
        orders.push(LinearOrder::new(g, s)?);
    }
    Ok(orders)
}

fn verify(job: &Job) -> Result<Outcome> {
    let g = &job.graph;
    let a = job.resolve_assigning()?;
    let admissible = a.is_known_admissible();
    let c = g.component_count() as u32;
    let mut checks = Checks(Vec::new());
    let mut extra = Map::new();

    let reference = cycle_assigning_polynomial(g, &a, Method::Subgraph, &job.order, &job.budget)?;
    let tau = assigning_polynomial(g, &a, Method::Subgraph, &job.order, &job.budget)?;
    checks.record(
        "p_equals_k_pow_c_times_tau",
        reference == tau.shift_up(c),
        format!("P = {reference}, tau = {tau}"),
    );

    for method in [
        Method::Delcon,
        Method::Decompose,
        Method::Broken,
        Method::Bond,
    ] {
        let name = format!("{method}_matches_subgraph");
        if method.needs_admissible() && !admissible {
            checks.skip(&name, "assigning not known to be admissible");
            continue;
        }
        let p = cycle_assigning_polynomial(g, &a, method, &job.order, &job.budget)?;
        checks.record(&name, p == reference, format!("{method}: {p}"));
    }

    let loop_zero = g
        .edges()
        .iter()
        .filter(|e| e.is_loop())
        .map(|e| a.value(&EdgeSet::from([e.id])))
        .collect::<Result<Vec<bool>>>()?
        .contains(&false);
    if loop_zero {
        checks.record(
            "degree_law",
            tau.is_zero(),
            "a loop is valued 0, so tau must vanish",
        );
    } else {
        let expected = (g.num_vertices() - g.component_count()) as u32;
        checks.record(
            "degree_law",
            tau.degree() == Some(expected),
            format!("deg tau = {:?}, expected {expected}", tau.degree()),
        );
    }

    if admissible {
        let w = broken_coefficients(g, &a, &job.order, &job.budget)?;
        let mut same = true;
        for ord in probe_orders(job)? {
            same &= broken_coefficients(g, &a, &ord, &job.budget)? == w;
        }
        checks.record("order_independence", same, format!("w = {w:?}"));

        let at_minus_one = reference.evaluate_i64(-1)
            * if g.num_vertices().is_multiple_of(2) {
                1
            } else {
                -1
            };
        let total: u64 = w.iter().sum();
        checks.record(
            "evaluation_at_minus_one",
            at_minus_one == BigInt::from(total),
            format!("(-1)^|V| P(-1) = {at_minus_one}, sum of w_i = {total}"),
        );

        let signed = unsigned_coefficients(g, &reference);
        if loop_zero {
            checks.record(
                "coefficient_law",
                reference.is_zero(),
                "a loop is valued 0, so P must vanish",
            );
        } else {
            let r = g.full_rank();
            let zero = BigInt::from(0);
            let law = signed[0] == BigInt::from(1)
                && signed
                    .iter()
                    .enumerate()
                    .all(|(i, wi)| if i <= r { *wi > zero } else { *wi == zero });
            checks.record("coefficient_law", law, format!("w = {signed:?}"));
        }

        let chromatic = broken_coefficients(g, &Assigning::zero(g), &job.order, &job.budget)?;
        let monotone = chromatic.iter().zip(&w).all(|(x, y)| x <= y);
        checks.record(
            "monotone_over_zero_assigning",
            monotone,
            format!("w(0) = {chromatic:?}, w(alpha) = {w:?}"),
        );
    } else {
        for name in [
            "order_independence",
            "evaluation_at_minus_one",
            "coefficient_law",
            "monotone_over_zero_assigning",
        ] {
            checks.skip(name, "assigning not known to be admissible");
        }
    }

    if let (Some(group), Some(f)) = (&job.group, &job.f) {
        let k = BigInt::from(group.order());
        let colorings = count_colorings(g, group, f, &job.budget)?;
        let tensions = count_tensions(g, group, f, &job.budget)?;
        let p_at = reference.evaluate(&k);
        let tau_at = tau.evaluate(&k);
        checks.record(
            "counts_colorings",
            p_at == BigInt::from(colorings),
            format!("P({k}) = {p_at}, colorings = {colorings}"),
        );
        checks.record(
            "counts_tensions",
            tau_at == BigInt::from(tensions),
            format!("tau({k}) = {tau_at}, tensions = {tensions}"),
        );
        let product = BigInt::from(group.order()).pow(c) * tensions;
        checks.record(
            "colorings_equal_order_pow_c_times_tensions",
            product == BigInt::from(colorings),
            format!("{}^{c} * {tensions} = {product}", group.order()),
        );

        let cycles = enumerate_cycles(g);
        let mut zero_sums = true;
        for i in 0..group.order().min(8) {
            let coloring: Vec<_> = g
                .vertices()
                .map(|v| group.element_at((i + v.0 as u64) % group.order()))
                .collect();
            let t = coboundary(g, group, &coloring)?;
            for cyc in &cycles {
                zero_sums &= cycle_sum(g, &t, cyc)? == group.zero();
            }
        }
        checks.record(
            "coboundaries_have_zero_cycle_sums",
            zero_sums,
            "sampled colorings",
        );
        extra.insert("count".into(), json!(colorings));
        extra.insert("tensions".into(), json!(tensions));
    } else {
        for name in [
            "counts_colorings",
            "counts_tensions",
            "colorings_equal_order_pow_c_times_tensions",
        ] {
            checks.skip(name, "needs --group and --f");
        }
    }

    let passed = checks.all_passed();
    extra.insert("checks".into(), Value::Array(checks.0));
    extra.insert("passed".into(), json!(passed));
    extra.insert("polynomial".into(), reference.to_json());
    Ok(Outcome {
        output: Value::Object(extra),
        exit_code: if passed { EXIT_OK } else { EXIT_VERIFY },
    })
}

pub fn exit_code_for(e: &Error) -> i32 {
    match e {
        Error::BudgetExceeded { .. } => EXIT_BUDGET,
        _ => EXIT_INPUT,
    }
}

/// Parses `args`, runs the job, writes JSON to `out` and diagnostics to
/// `err`, and returns the exit code.
pub fn main_with_args<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let _ = write!(
                if e.use_stderr() {
                    err as &mut dyn Write
                } else {
                    out as &mut dyn Write
                },
                "{e}"
            );
            return code;
        }
    };
    let result = Job::load(&cli).and_then(|job| run(&job));
    match result {
        Ok(outcome) => {
            let text =
                serde_json::to_string_pretty(&outcome.output).expect("JSON values serialize");
            let _ = writeln!(out, "{text}");
            if outcome.exit_code == EXIT_VERIFY {
                let _ = writeln!(err, "verification failed");
            }
            outcome.exit_code
        }
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code_for(&e)
        }
    }
}
