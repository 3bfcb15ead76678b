//! `qp`: classify graph homomorphisms, build pushouts and unions, verify the pullback
//! theorems, evaluate algebra elements, and run the randomized property suites.

mod certificate;

use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use certificate::{Certificate, Verdict};
use qp_core::expr::{eval, parse_expr, ExprAlgebra, LeavittAlgebra, PathAlgebra};
use qp_core::field::Field;
use qp_core::graph::Graph;
use qp_core::leavitt::{verify_leavitt_pullback, LeavittHom};
use qp_core::morphism::{is_admissible, GraphHom};
use qp_core::path_algebra::{pa_pullback, verify_path_pullback};
use qp_core::pushout::{check_theorem_preconditions, graph_pushout, path_pushout_compare, union_pushout};
use qp_core::{io, suites, Error};

#[derive(Parser)]
#[command(name = "qp", version, about = "Pushouts of graphs and pullbacks of their path and Leavitt path algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a homomorphism and test admissibility.
    Classify { hom: PathBuf },
    /// Build the pushout of two homomorphisms out of a shared domain.
    Pushout {
        f: PathBuf,
        g: PathBuf,
        /// Compare path sets up to this length.
        #[arg(long)]
        check_h: Option<usize>,
        /// Write the pushout graph and its canonical maps here.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Union of two graphs with compatible overlap, with admissibility of the inclusions.
    Union {
        left: PathBuf,
        right: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Check that a pushout square is sent to a pullback of algebras.
    Verify(VerifyArgs),
    /// Evaluate an element literal in a path or Leavitt path algebra.
    Eval {
        expr: String,
        /// Graph file holding the algebra's graph.
        #[arg(long, conflicts_with = "hom", required_unless_present = "hom")]
        graph: Option<PathBuf>,
        /// Evaluate in the codomain of this homomorphism and print the pullback as well.
        #[arg(long)]
        hom: Option<PathBuf>,
        #[arg(long)]
        leavitt: bool,
        #[arg(long, default_value = "q")]
        field: Field,
    },
    /// Run a seeded randomized property suite.
    Proptest {
        #[arg(long)]
        suite: String,
        #[arg(long, env = "QP_SEED", default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        cases: usize,
        /// Print the summary as JSON.
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, conflicts_with = "leavitt", required_unless_present = "leavitt")]
    path: bool,
    #[arg(long)]
    leavitt: bool,
    f: PathBuf,
    g: PathBuf,
    #[arg(long, default_value_t = 4)]
    max_degree: usize,
    #[arg(long, default_value = "q")]
    field: Field,
}

enum Failure {
    Parse(PathBuf, Error),
    Refused(String, String),
    Usage(String),
}

const EXIT_FAIL: u8 = 1;
const EXIT_PARSE: u8 = 2;
const EXIT_REFUSED: u8 = 3;

fn refusal(e: Error) -> Failure {
    let flag = match &e {
        Error::Precondition { flag, detail } => return Failure::Refused(flag.clone(), detail.clone()),
        Error::InvalidHom(_) => "valid_hom",
        Error::InvalidGraph(_) => "valid_graph",
        Error::DomainMismatch(_) => "shared_domain",
        Error::TailedGraph(_) => "tail_free",
        Error::NotInjective(_) => "injective",
        Error::IncompatibleOverlap(_) => "compatible_overlap",
        Error::NotAdmissibleCategory(_) => "admissible_category",
        Error::UnknownSuite(_) | Error::BadScalar(_) | Error::Parse { .. } => return Failure::Usage(e.to_string()),
        _ => "internal",
    };
    Failure::Refused(flag.to_string(), e.to_string())
}

fn load_hom(path: &Path) -> Result<GraphHom, Failure> {
    let h = io::load_hom(path).map_err(|e| Failure::Parse(path.to_path_buf(), e))?;
    let report = h.validate();
    if !report.is_ok() {
        return Err(Failure::Refused("valid_hom".into(), format!("{}: {report}", path.display())));
    }
    Ok(h)
}

fn load_graph(path: &Path) -> Result<Graph, Failure> {
    io::load_graph(path).map_err(|e| Failure::Parse(path.to_path_buf(), e))
}

fn write_output(path: &Path, value: &serde_json::Value) -> Result<(), Failure> {
    std::fs::write(path, io::to_canonical_string(value))
        .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))
}

fn classify(cert: &mut Certificate, hom: &Path) -> Result<(), Failure> {
    cert.input(hom);
    let h = load_hom(hom)?;
    cert.check("classification", h.classify());
    let adm = if h.is_injective() { Some(is_admissible(&h).map_err(refusal)?) } else { None };
    cert.check("admissibility", adm);
    Ok(())
}

fn pushout(cert: &mut Certificate, f: &Path, g: &Path, check_h: Option<usize>, output: Option<&Path>) -> Result<(), Failure> {
    cert.input(f);
    cert.input(g);
    cert.param("check_h", check_h);
    let (f, g) = (load_hom(f)?, load_hom(g)?);
    let push = graph_pushout(&f, &g).map_err(refusal)?;
    cert.check("preconditions", check_theorem_preconditions(&f, &g).map_err(refusal)?);
    cert.check(
        "pushout_graph",
        json!({"vertices": push.graph().vertex_count(), "edges": push.graph().edge_count()}),
    );
    cert.check("iota_E", push.iota_e().classify());
    cert.check("iota_F", push.iota_f().classify());
    if let Some(n) = check_h {
        cert.check("h", path_pushout_compare(&f, &g, n).map_err(refusal)?);
    }
    let doc = io::pushout_to_value(&push);
    match output {
        Some(out) => write_output(out, &doc)?,
        None => cert.check("pushout", doc),
    }
    Ok(())
}

fn union(cert: &mut Certificate, left: &Path, right: &Path, output: Option<&Path>) -> Result<(), Failure> {
    cert.input(left);
    cert.input(right);
    let (l, r) = (Arc::new(load_graph(left)?), Arc::new(load_graph(right)?));
    let u = union_pushout(&l, &r).map_err(refusal)?;
    let mut strongly = true;
    for (key, h) in [
        ("cap_to_left", &u.cap_to_left),
        ("cap_to_right", &u.cap_to_right),
        ("left_to_cup", &u.left_to_cup),
        ("right_to_cup", &u.right_to_cup),
    ] {
        let adm = is_admissible(h).map_err(refusal)?;
        if key.starts_with("cap") {
            strongly &= adm.strongly;
        } else if strongly && !adm.strongly {
            cert.verdict = Verdict::Fail;
        }
        cert.check(key, adm);
    }
    let doc = io::graph_to_value(&u.union);
    match output {
        Some(out) => write_output(out, &doc)?,
        None => cert.check("union", doc),
    }
    Ok(())
}

fn verify(cert: &mut Certificate, args: &VerifyArgs) -> Result<(), Failure> {
    cert.input(&args.f);
    cert.input(&args.g);
    cert.param("theorem", if args.leavitt { "leavitt" } else { "path" });
    cert.param("max_degree", args.max_degree);
    cert.param("field", args.field.to_string());
    let (f, g) = (load_hom(&args.f)?, load_hom(&args.g)?);
    let passed = if args.leavitt {
        let r = verify_leavitt_pullback(&f, &g, args.max_degree, args.field).map_err(refusal)?;
        cert.check("report", &r);
        r.passed
    } else {
        let r = verify_path_pullback(&f, &g, args.max_degree, args.field).map_err(refusal)?;
        cert.check("report", &r);
        r.passed
    };
    if !passed {
        cert.verdict = Verdict::Fail;
    }
    Ok(())
}

fn eval_in<A: ExprAlgebra>(alg: &A, src: &str) -> Result<A::Elem, Failure> {
    let e = parse_expr(src).map_err(|e| Failure::Parse(PathBuf::from("<expr>"), e))?;
    eval(alg, &e).map_err(|e| match e {
        Error::Parse { .. } => Failure::Parse(PathBuf::from("<expr>"), e),
        other => Failure::Usage(other.to_string()),
    })
}

fn run_eval(expr: &str, graph: Option<&Path>, hom: Option<&Path>, leavitt: bool, field: Field) -> Result<String, Failure> {
    let (graph, hom) = match (graph, hom) {
        (Some(g), _) => (Arc::new(load_graph(g)?), None),
        (None, Some(h)) => {
            let h = load_hom(h)?;
            (h.codomain().clone(), Some(h))
        }
        (None, None) => return Err(Failure::Usage("eval needs --graph or --hom".into())),
    };
    let mut out = String::new();
    if leavitt {
        let alg = LeavittAlgebra { graph, field };
        let x = eval_in(&alg, expr)?;
        out.push_str(&format!("{x}\n"));
        if let Some(h) = hom {
            let lh = LeavittHom::new(h).map_err(refusal)?;
            out.push_str(&format!("pullback: {}\n", lh.pullback(&x).map_err(refusal)?));
        }
    } else {
        let alg = PathAlgebra { graph, field };
        let x = eval_in(&alg, expr)?;
        out.push_str(&format!("{x}\n"));
        if let Some(h) = hom {
            out.push_str(&format!("pullback: {}\n", pa_pullback(&h, &x).map_err(refusal)?));
        }
    }
    Ok(out)
}

fn report(result: Result<(), Failure>, cert: &mut Certificate) -> ExitCode {
    match result {
        Ok(()) => {
            print!("{}", cert.render());
            match cert.verdict {
                Verdict::Pass => ExitCode::SUCCESS,
                _ => ExitCode::from(EXIT_FAIL),
            }
        }
        Err(Failure::Refused(flag, detail)) => {
            cert.verdict = Verdict::Refused;
            cert.check("refused", json!({"flag": flag, "detail": detail}));
            print!("{}", cert.render());
            eprintln!("qp: precondition {flag} refused: {detail}");
            ExitCode::from(EXIT_REFUSED)
        }
        Err(other) => fail(other),
    }
}

fn fail(f: Failure) -> ExitCode {
    match f {
        Failure::Parse(path, Error::Parse { line, column, message }) => {
            eprintln!("qp: {}:{line}:{column}: {message}", path.display());
            ExitCode::from(EXIT_PARSE)
        }
        Failure::Parse(path, e) => {
            eprintln!("qp: {}: {e}", path.display());
            ExitCode::from(EXIT_PARSE)
        }
        Failure::Usage(msg) => {
            eprintln!("qp: {msg}");
            ExitCode::from(EXIT_PARSE)
        }
        Failure::Refused(flag, detail) => {
            eprintln!("qp: precondition {flag} refused: {detail}");
            ExitCode::from(EXIT_REFUSED)
        }
    }
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let cli = Cli::parse();
    let mut cert = Certificate::new(&args);
    match cli.command {
        Command::Classify { hom } => {
            let r = classify(&mut cert, &hom);
            report(r, &mut cert)
        }
        Command::Pushout { f, g, check_h, output } => {
            let r = pushout(&mut cert, &f, &g, check_h, output.as_deref());
            report(r, &mut cert)
        }
        Command::Union { left, right, output } => {
            let r = union(&mut cert, &left, &right, output.as_deref());
            report(r, &mut cert)
        }
        Command::Verify(v) => {
            let r = verify(&mut cert, &v);
            report(r, &mut cert)
        }
        Command::Eval { expr, graph, hom, leavitt, field } => {
            match run_eval(&expr, graph.as_deref(), hom.as_deref(), leavitt, field) {
                Ok(text) => {
                    print!("{text}");
                    ExitCode::SUCCESS
                }
                Err(f) => fail(f),
            }
        }
        Command::Proptest { suite, seed, cases, json } => match suites::run_suite(&suite, seed, cases) {
            Ok(summary) => {
                if json {
                    print!("{}", io::to_canonical_string(&serde_json::to_value(&summary).expect("serializable")));
                } else {
                    print!("{summary}");
                }
                if summary.ok() {
                    ExitCode::SUCCESS
                } else {
                    ExitCode::from(EXIT_FAIL)
                }
            }
            Err(e) => fail(refusal(e)),
        },
    }
}
