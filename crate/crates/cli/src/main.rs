mod graph_spec;

use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use occupancy_core::bounds::{
    self, breakpoints, cubic_bound, format_float, log_partition_bound, scan_check, tf_bound, BoundModel, CheckTag,
};
use occupancy_core::graph::{generate, naive_cubic_tf_corpus, write_graph6, FamilySpec, Graph};
use occupancy_core::hardcore::rational::{format_pq, parse_rational, to_f64, Rational};
use occupancy_core::hardcore::{
    independence_polynomial, local_graph_polynomials, neighborly_residual, occupancy_fraction, vertex_probabilities,
    y_polynomials,
};
use occupancy_core::lp::{
    build_lp_cubic, build_lp_general, build_lp_trianglefree, check_complementary_slackness, dual_of, simplex_solve,
    LpProblem,
};

use graph_spec::load_graphs;

#[derive(Parser)]
#[command(
    name = "occupancy",
    version,
    about = "Hard-core occupancy fractions, LP bounds and graph scans"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum LpModel {
    General,
    Tfree,
    Cubic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Model {
    Tfree,
    Cubic,
}

impl From<Model> for BoundModel {
    fn from(m: Model) -> Self {
        match m {
            Model::Tfree => BoundModel::Tfree,
            Model::Cubic => BoundModel::Cubic,
        }
    }
}

fn rational_arg(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn check_arg(s: &str) -> Result<CheckTag, String> {
    s.parse().map_err(|e: bounds::BoundsError| e.to_string())
}

#[derive(Subcommand)]
enum Command {
    /// Independence polynomial coefficients.
    Indpoly {
        #[arg(long)]
        graph: String,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Occupancy fraction, optionally with per-vertex probabilities.
    Occupancy {
        #[arg(long)]
        graph: String,
        #[arg(long = "lambda", alias = "lambdas", value_parser = rational_arg, value_delimiter = ',', required = true)]
        lambdas: Vec<Rational>,
        #[arg(long)]
        vertices: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Law of the number of uncovered neighbors.
    Ydist {
        #[arg(long)]
        graph: String,
        #[arg(long = "lambda", alias = "lambdas", value_parser = rational_arg, value_delimiter = ',', required = true)]
        lambdas: Vec<Rational>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Law of the local graph on uncovered neighbors.
    Hdist {
        #[arg(long)]
        graph: String,
        #[arg(long = "lambda", alias = "lambdas", value_parser = rational_arg, value_delimiter = ',', required = true)]
        lambdas: Vec<Rational>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Build and solve one of the occupancy linear programs.
    Lp {
        #[arg(long, value_enum)]
        model: LpModel,
        #[arg(long, default_value_t = 3)]
        d: usize,
        #[arg(long, value_parser = rational_arg)]
        lambda: Rational,
        /// Also emit the dual program.
        #[arg(long)]
        dual: bool,
        /// Verify the simplex pair by complementary slackness.
        #[arg(long)]
        certify: bool,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Closed-form optimum of the triangle-free or cubic program.
    Bound {
        #[arg(long, value_enum)]
        model: Model,
        #[arg(long, default_value_t = 3)]
        d: usize,
        #[arg(long = "lambda", alias = "lambdas", value_parser = rational_arg, value_delimiter = ',', required = true)]
        lambdas: Vec<Rational>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Per-vertex lower bound on the log partition function.
    Integrate {
        #[arg(long, value_enum)]
        model: Model,
        #[arg(long, default_value_t = 3)]
        d: usize,
        #[arg(long, value_parser = rational_arg)]
        lambda_max: Rational,
        #[arg(long, default_value_t = bounds::DEFAULT_TOL)]
        tol: f64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Check the bounds on every graph of a list at every fugacity.
    Scan {
        #[arg(long)]
        input: String,
        #[arg(long, value_parser = rational_arg, value_delimiter = ',', required = true)]
        lambdas: Vec<Rational>,
        #[arg(long, value_parser = check_arg, value_delimiter = ',')]
        checks: Vec<CheckTag>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Emit graphs of a family in graph6, one per line.
    Gen {
        /// k, e, c, p, kdd, gp, t3, or cubic-tf (all connected cubic
        /// triangle-free graphs of the given order).
        #[arg(long)]
        family: String,
        #[arg(long, default_value = "")]
        params: String,
    },
}

enum CliError {
    /// Bad arguments, unreadable input, or an unmet precondition.
    Usage(String),
    /// The command ran but a check failed.
    Failed(String),
}

type CliResult = Result<(), CliError>;

fn usage<E: ToString>(e: E) -> CliError {
    CliError::Usage(e.to_string())
}

/// Float rounded to 12 significant digits.
fn float(x: f64) -> Value {
    format_float(x).parse::<f64>().map(Value::from).unwrap_or(Value::Null)
}

fn pq(r: &Rational) -> Value {
    Value::String(format_pq(r))
}

struct Out {
    json: BufWriter<io::Stdout>,
    csv: Option<csv::Writer<io::Stdout>>,
}

impl Out {
    fn new(format: Format, header: &[&str]) -> Result<Self, CliError> {
        let csv = match format {
            Format::Json => None,
            Format::Csv => {
                let mut w = csv::Writer::from_writer(io::stdout());
                w.write_record(header).map_err(usage)?;
                Some(w)
            }
        };
        Ok(Out {
            json: BufWriter::new(io::stdout()),
            csv,
        })
    }

    fn json_only() -> Self {
        Out {
            json: BufWriter::new(io::stdout()),
            csv: None,
        }
    }

    fn is_csv(&self) -> bool {
        self.csv.is_some()
    }

    fn json(&mut self, v: &Value) -> CliResult {
        writeln!(self.json, "{v}").map_err(usage)
    }

    fn row<I: IntoIterator<Item = String>>(&mut self, fields: I) -> CliResult {
        let w = self.csv.as_mut().expect("csv output");
        w.write_record(fields.into_iter().collect::<Vec<_>>()).map_err(usage)
    }

    fn finish(mut self) -> CliResult {
        self.json.flush().map_err(usage)?;
        if let Some(mut w) = self.csv.take() {
            w.flush().map_err(usage)?;
        }
        Ok(())
    }
}

fn with_graph(mut v: Value, g6: &str, multi: bool) -> Value {
    if multi {
        if let Value::Object(map) = &mut v {
            let mut out = Map::new();
            out.insert("graph".into(), Value::String(g6.to_string()));
            out.extend(std::mem::take(map));
            return Value::Object(out);
        }
    }
    v
}

fn cmd_indpoly(graph: &str, format: Format) -> CliResult {
    let graphs = load_graphs(graph).map_err(CliError::Usage)?;
    let multi = graphs.len() > 1;
    let mut out = Out::new(format, &["graph", "k", "coefficient"])?;
    for g in &graphs {
        let p = independence_polynomial(g);
        let g6 = write_graph6(g);
        if out.is_csv() {
            for (k, c) in p.coeffs().iter().enumerate() {
                out.row([g6.clone(), k.to_string(), c.to_string()])?;
            }
        } else {
            let v = serde_json::to_value(&p).map_err(usage)?;
            out.json(&with_graph(v, &g6, multi))?;
        }
    }
    out.finish()
}

fn cmd_occupancy(graph: &str, lambdas: &[Rational], vertices: bool, format: Format) -> CliResult {
    let graphs = load_graphs(graph).map_err(CliError::Usage)?;
    let mut out = Out::new(format, &["graph", "n", "lambda", "alpha", "alpha_float"])?;
    for g in &graphs {
        let g6 = write_graph6(g);
        for l in lambdas {
            let alpha = occupancy_fraction(g, l).map_err(usage)?;
            if out.is_csv() {
                out.row([
                    g6.clone(),
                    g.n().to_string(),
                    format_pq(l),
                    format_pq(&alpha),
                    format_float(to_f64(&alpha)),
                ])?;
                continue;
            }
            let mut v = json!({
                "graph": g6,
                "n": g.n(),
                "lambda": pq(l),
                "alpha": pq(&alpha),
                "alpha_float": float(to_f64(&alpha)),
            });
            if vertices {
                let report = vertex_probabilities(g, l).map_err(usage)?;
                v["p"] = json!(report.p.iter().map(format_pq).collect::<Vec<_>>());
                v["q"] = json!(report.q.iter().map(format_pq).collect::<Vec<_>>());
            }
            out.json(&v)?;
        }
    }
    out.finish()
}

fn cmd_ydist(graph: &str, lambdas: &[Rational], format: Format) -> CliResult {
    let graphs = load_graphs(graph).map_err(CliError::Usage)?;
    let mut out = Out::new(format, &["graph", "lambda", "i", "probability", "probability_float"])?;
    for g in &graphs {
        let g6 = write_graph6(g);
        let polys = y_polynomials(g).map_err(usage)?;
        for l in lambdas {
            let dist = polys.at(l).map_err(usage)?;
            if out.is_csv() {
                for (i, p) in dist.y.iter().enumerate() {
                    out.row([
                        g6.clone(),
                        format_pq(l),
                        i.to_string(),
                        format_pq(p),
                        format_float(to_f64(p)),
                    ])?;
                }
                continue;
            }
            out.json(&json!({
                "graph": g6,
                "d": dist.d,
                "lambda": pq(l),
                "y": dist.y.iter().map(format_pq).collect::<Vec<_>>(),
                "mean": pq(&dist.mean()),
                "identity_residual": pq(&dist.identity_residual()),
            }))?;
        }
    }
    out.finish()
}

fn cmd_hdist(graph: &str, lambdas: &[Rational], format: Format) -> CliResult {
    let graphs = load_graphs(graph).map_err(CliError::Usage)?;
    let mut out = Out::new(
        format,
        &["graph", "lambda", "local_graph", "order", "edges", "probability"],
    )?;
    for g in &graphs {
        let g6 = write_graph6(g);
        let polys = local_graph_polynomials(g).map_err(usage)?;
        for l in lambdas {
            let dist = polys.at(l).map_err(usage)?;
            if out.is_csv() {
                for (key, p) in &dist.entries {
                    let h = key.to_graph();
                    out.row([
                        g6.clone(),
                        format_pq(l),
                        write_graph6(&h),
                        h.n().to_string(),
                        h.edge_count().to_string(),
                        format_pq(p),
                    ])?;
                }
                continue;
            }
            let residual = neighborly_residual(&dist, dist.d, l).map_err(usage)?;
            let mut v = serde_json::to_value(&dist).map_err(usage)?;
            v["graph"] = Value::String(g6.clone());
            v["neighborly_residual"] = pq(&residual);
            out.json(&v)?;
        }
    }
    out.finish()
}

fn build_lp(model: LpModel, d: usize, lambda: &Rational) -> Result<LpProblem, CliError> {
    match model {
        LpModel::General => build_lp_general(d, lambda).map_err(usage),
        LpModel::Tfree => build_lp_trianglefree(d, lambda).map_err(usage),
        LpModel::Cubic => {
            if d != 3 {
                return Err(CliError::Usage(format!("cubic model needs --d 3, got {d}")));
            }
            build_lp_cubic(lambda, &bounds::t3_polynomial()).map_err(usage)
        }
    }
}

fn cmd_lp(model: LpModel, d: usize, lambda: &Rational, dual: bool, certify: bool, format: Format) -> CliResult {
    let problem = build_lp(model, d, lambda)?;
    let solution = simplex_solve(&problem).map_err(usage)?;
    let mut failure = None;
    let report = if certify && solution.is_optimal() {
        let r = check_complementary_slackness(&problem, &solution.primal, &solution.dual).map_err(usage)?;
        if !r.is_certified() {
            failure = Some("complementary slackness fails".to_string());
        }
        Some(r)
    } else {
        if certify {
            failure = Some(format!("no optimum to certify: {:?}", solution.status));
        }
        None
    };
    let closed_form = match (model, &solution.objective) {
        (LpModel::Tfree, Some(_)) => Some(tf_bound(d, lambda).map_err(usage)?.s),
        (LpModel::Cubic, Some(_)) => Some(cubic_bound(lambda).map_err(usage)?.dual_objective()),
        _ => None,
    };
    if certify {
        if let (Some(cf), Some(obj)) = (&closed_form, &solution.objective) {
            if cf != obj {
                failure.get_or_insert_with(|| "simplex optimum differs from the closed form".into());
            }
        }
    }

    if format == Format::Csv {
        let mut out = Out::new(format, &["kind", "label", "value"])?;
        if let Some(obj) = &solution.objective {
            out.row(["objective".into(), String::new(), format_pq(obj)])?;
        }
        for (label, v) in solution.variables.iter().zip(&solution.primal) {
            out.row(["primal".into(), label.clone(), format_pq(v)])?;
        }
        for (label, v) in solution.row_labels.iter().zip(&solution.dual) {
            out.row(["dual".into(), label.clone(), format_pq(v)])?;
        }
        out.finish()?;
    } else {
        let mut v = json!({
            "model": format!("{model:?}").to_lowercase(),
            "d": d,
            "lambda": pq(lambda),
            "problem": problem,
            "solution": solution,
            "objective_float": solution.objective.as_ref().map(|o| float(to_f64(o))),
        });
        if let Some(cf) = &closed_form {
            v["closed_form_objective"] = pq(cf);
        }
        if dual {
            v["dual_problem"] = serde_json::to_value(dual_of(&problem).map_err(usage)?).map_err(usage)?;
        }
        if let Some(r) = &report {
            v["certificate"] = json!({
                "certified": r.is_certified(),
                "primal_objective": pq(&r.primal_objective),
                "dual_objective": pq(&r.dual_objective),
                "pairs": r,
            });
        }
        let mut out = Out::json_only();
        out.json(&v)?;
        out.finish()?;
    }
    match failure {
        Some(msg) => Err(CliError::Failed(msg)),
        None => Ok(()),
    }
}

fn cmd_bound(model: Model, d: usize, lambdas: &[Rational], format: Format) -> CliResult {
    if model == Model::Cubic && d != 3 {
        return Err(CliError::Usage(format!("cubic model needs --d 3, got {d}")));
    }
    let mut out = Out::new(format, &["model", "d", "lambda", "alpha_bound", "alpha_bound_float"])?;
    let mut violations = Vec::new();
    for l in lambdas {
        let (alpha, mut v, bad) = match model {
            Model::Tfree => {
                let b = tf_bound(d, l).map_err(usage)?;
                let v = json!({
                    "branch": b.branch,
                    "breakpoints": breakpoints(d).into_iter().map(float).collect::<Vec<_>>(),
                    "primal": b.primal().iter().map(format_pq).collect::<Vec<_>>(),
                    "dual": {"S": pq(&b.s), "M": pq(&b.m), "A": pq(&b.a)},
                    "objective": pq(&b.primal_objective()),
                });
                (b.y0.clone(), v, b.invariant_violations())
            }
            Model::Cubic => {
                let b = cubic_bound(l).map_err(usage)?;
                let v = json!({
                    "Lambda": pq(&b.big_lambda),
                    "primal": b.y.iter().map(format_pq).collect::<Vec<_>>(),
                    "dual": {"S": pq(&b.s), "M": pq(&b.m), "A": pq(&b.a), "B": pq(&b.b)},
                    "objective": pq(&b.dual_objective()),
                });
                (b.y[0].clone(), v, b.invariant_violations())
            }
        };
        violations.extend(bad.into_iter().map(|m| format!("λ = {}: {m}", format_pq(l))));
        if out.is_csv() {
            out.row([
                BoundModel::from(model).to_string(),
                d.to_string(),
                format_pq(l),
                format_pq(&alpha),
                format_float(to_f64(&alpha)),
            ])?;
            continue;
        }
        let mut head = json!({
            "model": BoundModel::from(model).to_string(),
            "d": d,
            "lambda": pq(l),
            "alpha_bound": pq(&alpha),
            "alpha_bound_float": float(to_f64(&alpha)),
        });
        head.as_object_mut()
            .expect("object")
            .extend(std::mem::take(v.as_object_mut().expect("object")));
        out.json(&head)?;
    }
    out.finish()?;
    if violations.is_empty() {
        Ok(())
    } else {
        Err(CliError::Failed(violations.join("; ")))
    }
}

fn cmd_integrate(model: Model, d: usize, lambda_max: &Rational, tol: f64, format: Format) -> CliResult {
    let lmax = to_f64(lambda_max);
    let log_bound = log_partition_bound(model.into(), d, lmax, tol).map_err(usage)?;
    let mut out = Out::new(format, &["model", "d", "lambda_max", "tol", "log_bound", "bound"])?;
    let name = BoundModel::from(model).to_string();
    if out.is_csv() {
        out.row([
            name,
            d.to_string(),
            format_pq(lambda_max),
            format!("{tol:e}"),
            format_float(log_bound),
            format_float(log_bound.exp()),
        ])?;
    } else {
        out.json(&json!({
            "model": name,
            "d": d,
            "lambda_max": pq(lambda_max),
            "tol": tol,
            "log_bound": float(log_bound),
            "bound": float(log_bound.exp()),
        }))?;
    }
    out.finish()
}

fn cmd_scan(input: &str, lambdas: &[Rational], checks: &[CheckTag], jobs: usize, format: Format) -> CliResult {
    let graphs = load_graphs(input).map_err(CliError::Usage)?;
    let checks: Vec<CheckTag> = if checks.is_empty() {
        CheckTag::ALL.to_vec()
    } else {
        checks.to_vec()
    };
    let report = scan_check(&graphs, lambdas, &checks, jobs).map_err(usage)?;
    let mut out = Out::new(
        format,
        &[
            "graph_index",
            "graph6",
            "n",
            "d",
            "lambda",
            "check",
            "pass",
            "lhs",
            "rhs",
        ],
    )?;
    for r in &report.records {
        if out.is_csv() {
            out.row([
                r.graph_index.to_string(),
                r.graph6.clone(),
                r.n.to_string(),
                r.d.to_string(),
                format_pq(&r.lambda),
                r.check.to_string(),
                r.pass.to_string(),
                r.lhs.clone(),
                r.rhs.clone(),
            ])?;
        } else {
            out.json(&serde_json::to_value(r).map_err(usage)?)?;
        }
    }
    out.finish()?;
    for f in &report.failures {
        eprintln!("graph {} ({}): {}", f.graph_index, f.graph6, f.message);
    }
    let failed = report.failed_records().count();
    eprintln!(
        "{} graphs, {} checks, {} failed, {} graphs skipped",
        graphs.len(),
        report.records.len(),
        failed,
        report.failures.len()
    );
    if !report.failures.is_empty() {
        return Err(CliError::Usage(format!(
            "{} graphs failed preconditions",
            report.failures.len()
        )));
    }
    if failed > 0 {
        return Err(CliError::Failed(format!("{failed} checks failed")));
    }
    Ok(())
}

fn cmd_gen(family: &str, params: &str) -> CliResult {
    let graphs: Vec<Graph> = if family == "cubic-tf" {
        let n: usize = params
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("cubic-tf needs an order, got {params:?}")))?;
        naive_cubic_tf_corpus(n).map_err(usage)?
    } else {
        let text = if params.is_empty() {
            family.to_string()
        } else {
            format!("{family}:{params}")
        };
        let spec: FamilySpec = text.parse().map_err(usage)?;
        vec![generate(&spec).map_err(usage)?]
    };
    let mut w = BufWriter::new(io::stdout());
    for g in &graphs {
        writeln!(w, "{}", write_graph6(g)).map_err(usage)?;
    }
    w.flush().map_err(usage)
}

fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Indpoly { graph, format } => cmd_indpoly(&graph, format),
        Command::Occupancy {
            graph,
            lambdas,
            vertices,
            format,
        } => cmd_occupancy(&graph, &lambdas, vertices, format),
        Command::Ydist { graph, lambdas, format } => cmd_ydist(&graph, &lambdas, format),
        Command::Hdist { graph, lambdas, format } => cmd_hdist(&graph, &lambdas, format),
        Command::Lp {
            model,
            d,
            lambda,
            dual,
            certify,
            format,
        } => cmd_lp(model, d, &lambda, dual, certify, format),
        Command::Bound {
            model,
            d,
            lambdas,
            format,
        } => cmd_bound(model, d, &lambdas, format),
        Command::Integrate {
            model,
            d,
            lambda_max,
            tol,
            format,
        } => cmd_integrate(model, d, &lambda_max, tol, format),
        Command::Scan {
            input,
            lambdas,
            checks,
            jobs,
            format,
        } => cmd_scan(&input, &lambdas, &checks, jobs, format),
        Command::Gen { family, params } => cmd_gen(&family, &params),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Failed(msg)) => {
            eprintln!("check failed: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
