use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde_json::{json, Value};

use qpforge::catalog::{Catalog, LambdaChoice, CASES};
use qpforge::covering::CoveringWindow;
use qpforge::format::{parse_qp, write_qp};
use qpforge::forms::FormData;
use qpforge::jacobian::{PresentedAlgebra, DEFAULT_L_MAX};
use qpforge::linalg::Matrix;
use qpforge::mutation::{fingerprint, mutate};
use qpforge::potential::FreeElement;
use qpforge::qp::Qp;
use qpforge::quiver::Quiver;
use qpforge::report::{Origin, Report, Status};
use qpforge::verify::{covering_report, verify_case, VerifyOptions};

#[derive(Parser)]
#[command(name = "qpforge", version, about = "Quivers with potentials, Jacobian algebras and their coverings")]
struct Cli {
    /// Data directory replacing the embedded catalog (default: $QPFORGE_DATA).
    #[arg(long, global = true)]
    data: Option<PathBuf>,
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for parallel work.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Input {
    /// One of 333, 2222, 442, 632.
    #[arg(long, group = "source")]
    case: Option<String>,
    /// A subalgebra figure such as f1 or t333a.
    #[arg(long, group = "source")]
    figure: Option<String>,
    /// A .qp file.
    #[arg(long, group = "source")]
    input: Option<PathBuf>,
    /// Value of lambda for the (2,2,2,2) family: an integer, p/q or `symbolic`.
    #[arg(long, default_value = "2")]
    lambda: String,
}

#[derive(Subcommand)]
enum Command {
    /// Print the quiver, potential or relations, and grading.
    Show(Input),
    /// Jacobian dimension, Cartan matrix, Euler form data and radical.
    Invariants(Input),
    /// Apply a sequence of mutations.
    Mutate {
        #[command(flatten)]
        input: Input,
        /// Vertices numbered from 1, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        seq: Vec<usize>,
        /// Write the final QP here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Build a covering window and check the push-down.
    Cover {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 3)]
        window: usize,
    },
    /// Run the verification suite for one case or all of them.
    Verify {
        #[arg(long, conflicts_with = "all", required_unless_present = "all")]
        case: Option<String>,
        #[arg(long)]
        all: bool,
        #[arg(long, default_value = "2")]
        lambda: String,
        #[arg(long, default_value_t = 3)]
        window: usize,
        /// Random mutation sequences per case.
        #[arg(long, default_value_t = 100)]
        trials: usize,
        #[arg(long, default_value_t = 5)]
        depth: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// What a command reads: a QP (possibly graded) or a quiver with relations.
enum Loaded {
    Qp { name: String, qp: Qp, published: Option<Vec<Vec<i64>>> },
    Relations { name: String, quiver: Quiver, relations: Vec<FreeElement> },
}

impl Loaded {
    fn name(&self) -> &str {
        match self {
            Loaded::Qp { name, .. } | Loaded::Relations { name, .. } => name,
        }
    }

    fn quiver(&self) -> &Quiver {
        match self {
            Loaded::Qp { qp, .. } => &qp.quiver,
            Loaded::Relations { quiver, .. } => quiver,
        }
    }

    fn algebra(&self) -> Result<PresentedAlgebra> {
        Ok(match self {
            Loaded::Qp { qp, .. } => qp.jacobian(DEFAULT_L_MAX)?,
            Loaded::Relations { quiver, relations, .. } => {
                PresentedAlgebra::compute(quiver.clone(), relations.clone(), DEFAULT_L_MAX)?
            }
        })
    }

    fn qp(&self) -> Result<&Qp> {
        match self {
            Loaded::Qp { qp, .. } => Ok(qp),
            Loaded::Relations { name, .. } => bail!("{name} is given by relations, not by a potential"),
        }
    }
}

fn load(cat: &Catalog, input: &Input) -> Result<Loaded> {
    let lambda = LambdaChoice::parse(&input.lambda)?;
    if let Some(case) = &input.case {
        let rec = cat.case(case)?;
        return Ok(Loaded::Qp { name: case.clone(), qp: rec.qp_at(&lambda)?, published: Some(rec.projectives) });
    }
    if let Some(id) = &input.figure {
        let fig = cat.figure(id)?;
        let relations = lambda.apply_relations(&fig.relations)?;
        return Ok(Loaded::Relations { name: id.clone(), quiver: fig.quiver, relations });
    }
    let path = input.input.as_ref().ok_or_else(|| anyhow!("one of --case, --figure or --input is required"))?;
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let file = parse_qp(&text).with_context(|| path.display().to_string())?;
    let name = if file.name.is_empty() { path.display().to_string() } else { file.name.clone() };
    if !file.relations.is_empty() {
        let relations = lambda.apply_relations(&file.relations)?;
        return Ok(Loaded::Relations { name, quiver: file.quiver, relations });
    }
    let qp = lambda.apply_qp(&file.qp())?;
    let published = if file.projectives.is_empty() {
        None
    } else {
        let mut rows = vec![Vec::new(); file.quiver.vertex_count()];
        for (v, d) in &file.projectives {
            rows[*v] = d.clone();
        }
        Some(rows)
    };
    Ok(Loaded::Qp { name, qp, published })
}

fn vector(v: &[i64]) -> String {
    format!("({})", v.iter().map(i64::to_string).collect::<Vec<_>>().join(","))
}

fn matrix_text(m: &[Vec<i64>]) -> String {
    let width = m.iter().flatten().map(|x| x.to_string().len()).max().unwrap_or(1);
    m.iter()
        .map(|row| format!("  {}", row.iter().map(|x| format!("{x:>width$}")).collect::<Vec<_>>().join(" ")))
        .collect::<Vec<_>>()
        .join("\n")
}

fn cmd_show(cat: &Catalog, input: &Input, as_json: bool) -> Result<bool> {
    let loaded = load(cat, input)?;
    let q = loaded.quiver();
    let arrows: Vec<Value> = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let degree = match &loaded {
                Loaded::Qp { qp, .. } => qp.degrees.as_ref().map(|d| d[i]),
                _ => None,
            };
            json!({"name": a.name, "source": q.label(a.source), "target": q.label(a.target), "degree": degree})
        })
        .collect();
    let (kind, terms): (&str, Vec<String>) = match &loaded {
        Loaded::Qp { qp, .. } => ("potential", qp.potential.terms().map(|(p, c)| FreeElement::from_path(p.clone(), c.clone()).display(q)).collect()),
        Loaded::Relations { relations, .. } => ("relations", relations.iter().map(|r| r.display(q)).collect()),
    };
    if as_json {
        let out = json!({
            "name": loaded.name(),
            "vertices": q.labels(),
            "arrows": arrows,
            kind: terms,
        });
        println!("{}", serde_json::to_string_pretty(&out)?);
        return Ok(true);
    }
    println!("{}: {} vertices, {} arrows, {} {}", loaded.name(), q.vertex_count(), q.arrow_count(), terms.len(), if kind == "potential" { "potential terms" } else { "relations" });
    println!("vertices: {}", q.labels().join(" "));
    println!("arrows:");
    for a in &arrows {
        let deg = a["degree"].as_i64().map(|d| format!("  deg {d}")).unwrap_or_default();
        println!("  {}: {} -> {}{deg}", a["name"].as_str().unwrap(), a["source"].as_str().unwrap(), a["target"].as_str().unwrap());
    }
    println!("{kind}:");
    for t in &terms {
        println!("  {t}");
    }
    Ok(true)
}

fn cmd_invariants(cat: &Catalog, input: &Input, as_json: bool) -> Result<bool> {
    let loaded = load(cat, input)?;
    let a = loaded.algebra()?;
    let cartan = a.projective_dim_vectors();
    let det = Matrix::from_int(&cartan).determinant();
    let mut report = Report::new(format!("invariants of {}", loaded.name()));
    if let Loaded::Qp { published: Some(rows), .. } = &loaded {
        report.compare("projectives match the published table", rows, &cartan, Origin::Published);
    }
    let mut out = json!({
        "name": loaded.name(),
        "lambda": input.lambda,
        "dimension": a.dimension(),
        "cartan": cartan,
        "determinant": det.to_string(),
    });
    let mut text = vec![
        format!("{}: Jacobian dimension {}", loaded.name(), a.dimension()),
        format!("Cartan matrix (rows are projectives):\n{}", matrix_text(&cartan)),
        format!("det = {det}"),
    ];
    match FormData::new(&cartan) {
        Ok(fd) => {
            out["coxeter"] = json!(fd.coxeter_matrix());
            out["non_negative"] = json!(fd.is_non_negative());
            out["corank"] = json!(fd.corank());
            out["radical"] = json!(fd.radical_basis());
            text.push(format!("Coxeter matrix:\n{}", matrix_text(fd.coxeter_matrix())));
            text.push(format!("form non-negative: {}, corank {}", fd.is_non_negative(), fd.corank()));
            for r in fd.radical_basis() {
                text.push(format!("radical vector {}", vector(r)));
            }
            if fd.corank() == 1 {
                match fd.radical_generator() {
                    Ok(h) => {
                        text.push(format!("h = {}", vector(&h)));
                        out["h"] = json!(h);
                    }
                    Err(e) => report.error("radical generator", e),
                }
            }
        }
        Err(e) => {
            text.push(format!("no Euler form: {e}"));
            report.skip("Euler form", e.to_string());
        }
    }
    let ok = report.all_pass();
    if as_json {
        out["report"] = serde_json::to_value(&report)?;
        println!("{}", serde_json::to_string_pretty(&out)?);
    } else {
        println!("{}", text.join("\n"));
        if !report.checks.is_empty() {
            print!("{}", report.render());
        }
    }
    Ok(ok)
}

fn fingerprint_json(qp: &Qp) -> Result<Value> {
    Ok(serde_json::to_value(fingerprint(qp)?)?)
}

fn cmd_mutate(cat: &Catalog, input: &Input, seq: &[usize], out: Option<&PathBuf>, as_json: bool) -> Result<bool> {
    let loaded = load(cat, input)?;
    let qp = loaded.qp()?;
    let n = qp.quiver.vertex_count();
    if let Some(&k) = seq.iter().find(|&&k| k == 0 || k > n) {
        bail!("vertex {k} in --seq is outside 1..={n}");
    }
    let start = fingerprint(qp)?;
    let mut steps = vec![json!({"step": 0, "fingerprint": fingerprint_json(qp)?})];
    let mut cur = qp.clone();
    for (i, &k) in seq.iter().enumerate() {
        cur = mutate(&cur, k - 1).with_context(|| format!("mutation at vertex {k} (step {})", i + 1))?;
        steps.push(json!({"step": i + 1, "vertex": k, "fingerprint": fingerprint_json(&cur)?}));
    }
    let matches = fingerprint(&cur)?.matches(&start)?;
    if let Some(path) = out {
        std::fs::write(path, write_qp(&format!("{}-mutated", loaded.name()), &cur)?)
            .with_context(|| format!("writing {}", path.display()))?;
    }
    if as_json {
        let v = json!({"name": loaded.name(), "sequence": seq, "steps": steps, "matches_input": matches});
        println!("{}", serde_json::to_string_pretty(&v)?);
    } else {
        for s in &steps {
            let f = &s["fingerprint"];
            let head = match s["vertex"].as_u64() {
                Some(k) => format!("mu{k}"),
                None => "input".into(),
            };
            println!("{head}: {} vertices, {} arrows, Jacobian dimension {}", f["vertices"], f["arrows"], f["jacobian_dimension"]);
        }
        println!("fingerprint {} the input's", if matches { "equals" } else { "differs from" });
        println!("{}", cur.potential.display(&cur.quiver));
    }
    Ok(true)
}

fn cmd_cover(cat: &Catalog, input: &Input, window: usize, as_json: bool) -> Result<bool> {
    let loaded = load(cat, input)?;
    let qp = loaded.qp()?;
    let cw = CoveringWindow::build(qp, window)?;
    let mut report = covering_report(qp, window);
    if let Loaded::Qp { published: Some(rows), .. } = &loaded {
        report.compare("base projectives match the published table", rows, &cw.base().projective_dim_vectors(), Origin::Published);
    }
    let ok = report.all_pass();
    let stats = json!({
        "name": loaded.name(),
        "window": window,
        "vertices": cw.quiver().vertex_count(),
        "arrows": cw.quiver().arrow_count(),
        "dimension": cw.algebra().dimension(),
        "dropped_relations": cw.dropped_relations(),
        "spread": cw.spread(),
        "acyclic": cw.is_acyclic(),
    });
    if as_json {
        let mut v = stats;
        v["report"] = serde_json::to_value(&report)?;
        println!("{}", serde_json::to_string_pretty(&v)?);
    } else {
        println!(
            "{}: window [-{window},{window}], {} vertices, {} arrows, dimension {}, spread {}",
            loaded.name(),
            stats["vertices"],
            stats["arrows"],
            stats["dimension"],
            stats["spread"]
        );
        print!("{}", report.render());
    }
    Ok(ok)
}

fn cmd_verify(cat: &Catalog, cases: Vec<String>, opts: VerifyOptions, as_json: bool) -> Result<bool> {
    for c in &cases {
        cat.case(c)?;
    }
    let reports: Vec<Report> = cases.par_iter().map(|c| verify_case(cat, c, &opts)).collect();
    let mut top = Report::new("verify");
    for r in reports {
        top.section(r);
    }
    let ok = top.all_pass();
    if as_json {
        println!("{}", top.to_json());
    } else {
        for s in &top.sections {
            let status = if s.all_pass() { "PASS" } else { "FAIL" };
            println!("{status} {}: {} checks pass, {} fail", s.title, s.count(Status::Pass), s.count(Status::Fail));
            for f in s.failures() {
                println!("  {f}");
            }
        }
    }
    Ok(ok)
}

fn run(cli: Cli) -> Result<bool> {
    if let Some(j) = cli.jobs {
        rayon::ThreadPoolBuilder::new().num_threads(j).build_global()?;
    }
    let cat = match &cli.data {
        Some(d) => Catalog::from_dir(d),
        None => Catalog::from_env(),
    };
    match &cli.command {
        Command::Show(input) => cmd_show(&cat, input, cli.json),
        Command::Invariants(input) => cmd_invariants(&cat, input, cli.json),
        Command::Mutate { input, seq, out } => cmd_mutate(&cat, input, seq, out.as_ref(), cli.json),
        Command::Cover { input, window } => cmd_cover(&cat, input, *window, cli.json),
        Command::Verify { case, all, lambda, window, trials, depth, seed } => {
            let lambda = LambdaChoice::parse(lambda)?;
            let cases = if *all { CASES.iter().map(|c| c.to_string()).collect() } else { vec![case.clone().unwrap()] };
            let opts = VerifyOptions { lambda, window: *window, trials: *trials, depth: *depth, seed: *seed };
            cmd_verify(&cat, cases, opts, cli.json)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
