use std::fmt::Write as _;
use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use weil_core::cograph::{cotree_decompose, kappa, GraphError};
use weil_core::genexpr::{decompose_traced, IllTyped};
use weil_core::morphism::MorphismError;
use weil_core::syntax::{
    format_morphism, parse_genexpr, parse_graph, parse_morphism, parse_object, ParseError, SyntaxError,
};
use weil_core::verify::{enumerate_hom, verify_all, VerifyError};
use weil_core::{decompose, Cotree, GenExpr, Morphism, Rig, WeilObject};

#[derive(Parser)]
#[command(
    name = "weil",
    version,
    about = "Exact computations in the category of Weil algebras built from W = k[x]/x^2"
)]
struct Cli {
    /// Coefficient rig.
    #[arg(long, global = true, default_value = "bool2", value_parser = parse_rig)]
    rig: Rig,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Dot,
    Lines,
}

#[derive(Subcommand)]
enum Command {
    /// Parse an object, morphism or expression and print its canonical form.
    Parse { input: String },
    /// Check that a morphism respects the relations, or that an expression is well typed.
    Validate { input: String },
    /// Print `g ∘ f`.
    Compose { g: String, f: String },
    /// Decompose a morphism into the generating maps.
    Decompose {
        input: String,
        /// Re-evaluate the expression and compare with the input.
        #[arg(long)]
        check: bool,
        /// Print every decomposition step.
        #[arg(long)]
        trace: bool,
    },
    /// Evaluate an expression to a morphism.
    Evaluate { input: String },
    /// The graph κ(G_A) whose maps classify morphisms out of A.
    Kappa { input: String },
    /// Recognize a graph (`n: 1-2 2-3 ...`) as a cograph and print its cotree.
    Cotree { input: String },
    /// Enumerate all bool2 morphisms A -> B.
    Hom { source: String, target: String },
    /// Run the axiom and universality checks.
    Verify {
        /// Largest object size in the sweeps.
        #[arg(long, default_value_t = 3)]
        max_vertices: usize,
        /// Random instances per coherence check.
        #[arg(long, default_value_t = 200)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Graphviz output: the graph of an object (or its κ), or a morphism's circles.
    Dot {
        input: String,
        #[arg(long)]
        kappa: bool,
    },
}

fn parse_rig(s: &str) -> Result<Rig, String> {
    s.parse().map_err(|e| format!("{e}"))
}

#[derive(Debug)]
enum Failure {
    Syntax(String),
    Invalid(String),
    Check(String),
    TooLarge(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Syntax(_) => 1,
            Failure::Invalid(_) => 2,
            Failure::Check(_) => 3,
            Failure::TooLarge(_) => 4,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Syntax(m) | Failure::Invalid(m) | Failure::Check(m) | Failure::TooLarge(m) => m,
        }
    }
}

impl From<SyntaxError> for Failure {
    fn from(e: SyntaxError) -> Self {
        Failure::Syntax(format!("syntax error: {e}"))
    }
}

impl From<ParseError> for Failure {
    fn from(e: ParseError) -> Self {
        match e {
            ParseError::Syntax(e) => e.into(),
            ParseError::Invalid(e) => e.into(),
        }
    }
}

impl From<MorphismError> for Failure {
    fn from(e: MorphismError) -> Self {
        Failure::Invalid(format!("invalid morphism: {e}"))
    }
}

impl From<IllTyped> for Failure {
    fn from(e: IllTyped) -> Self {
        Failure::Invalid(e.to_string())
    }
}

impl From<GraphError> for Failure {
    fn from(e: GraphError) -> Self {
        match e {
            GraphError::NotACograph(p) => {
                let p = p.map(|v| (v + 1).to_string()).join("-");
                Failure::Invalid(format!("not a cograph: induced path {p}"))
            }
            GraphError::TooLarge(_) => Failure::TooLarge(e.to_string()),
        }
    }
}

impl From<VerifyError> for Failure {
    fn from(e: VerifyError) -> Self {
        match e {
            VerifyError::TooLarge { .. } => Failure::TooLarge(e.to_string()),
            VerifyError::Morphism(e) => e.into(),
            other => Failure::Check(other.to_string()),
        }
    }
}

/// A file's contents if `arg` names one, otherwise `arg` itself.
fn read_input(arg: &str) -> Result<String, Failure> {
    let path = Path::new(arg);
    if path.is_file() {
        std::fs::read_to_string(path).map_err(|e| Failure::Syntax(format!("{arg}: {e}")))
    } else {
        Ok(arg.to_string())
    }
}

fn morphism(arg: &str, rig: Rig) -> Result<(String, Morphism), Failure> {
    Ok(parse_morphism(&read_input(arg)?, rig)?)
}

fn object(arg: &str) -> Result<Cotree, Failure> {
    Ok(parse_object(&read_input(arg)?)?)
}

enum Parsed {
    Object(Cotree),
    Morphism(String, Box<Morphism>),
    Expr(GenExpr),
}

const EXPR_HEADS: [&str; 11] = [
    "id", "eps", "eta", "plus", "l", "c", "ghat", "proj", "tensor", "comp", "pair",
];

fn parse_any(arg: &str, rig: Rig) -> Result<Parsed, Failure> {
    let text = read_input(arg)?;
    let body: String = text
        .lines()
        .filter(|l| !l.trim_start().starts_with('#'))
        .collect::<Vec<_>>()
        .join("\n");
    let head: String = body
        .trim_start()
        .chars()
        .take_while(|c| c.is_ascii_alphabetic())
        .collect();
    if body.contains("->") {
        let (name, f) = parse_morphism(&text, rig)?;
        Ok(Parsed::Morphism(name, Box::new(f)))
    } else if EXPR_HEADS.contains(&head.as_str()) {
        Ok(Parsed::Expr(parse_genexpr(&text)?))
    } else {
        Ok(Parsed::Object(parse_object(&text)?))
    }
}

fn describe_object(t: &Cotree, format: Format) -> String {
    let a = WeilObject::new(t.clone());
    if format == Format::Dot {
        return a.graph().to_dot(None);
    }
    let edges: Vec<String> = a
        .graph()
        .edges()
        .iter()
        .map(|(u, v)| format!("{}-{}", u + 1, v + 1))
        .collect();
    format!(
        "object {t}\nvertices {}\nedges {}\nalgebra {}\n",
        a.n(),
        if edges.is_empty() {
            "none".to_string()
        } else {
            edges.join(" ")
        },
        a.presentation()
    )
}

fn run(cli: &Cli) -> Result<String, Failure> {
    let rig = cli.rig;
    let mut out = String::new();
    match &cli.command {
        Command::Parse { input } => match parse_any(input, rig)? {
            Parsed::Object(t) => out = describe_object(&t, cli.format),
            Parsed::Morphism(name, f) => writeln!(out, "{}", format_morphism(&name, &f)).unwrap(),
            Parsed::Expr(e) => writeln!(out, "{e}").unwrap(),
        },
        Command::Validate { input } => match parse_any(input, rig)? {
            Parsed::Object(t) => writeln!(out, "valid object {t}").unwrap(),
            Parsed::Morphism(name, f) => writeln!(
                out,
                "valid morphism {name} : {} -> {}",
                f.source.cotree(),
                f.target.cotree()
            )
            .unwrap(),
            Parsed::Expr(e) => {
                let (s, t) = e.infer()?;
                writeln!(out, "valid expression : {} -> {}", s.cotree(), t.cotree()).unwrap();
            }
        },
        Command::Compose { g, f } => {
            let (gn, g) = morphism(g, rig)?;
            let (fn_, f) = morphism(f, rig)?;
            let h = g.compose(&f)?;
            writeln!(out, "{}", format_morphism(&format!("{gn}_{fn_}"), &h)).unwrap();
        }
        Command::Decompose { input, check, trace } => {
            let (_, f) = morphism(input, rig)?;
            let e = if *trace {
                let (e, t) = decompose_traced(&f);
                for s in &t.steps {
                    writeln!(out, "{}{} {}", "  ".repeat(s.depth), s.tag, s.morphism).unwrap();
                }
                e
            } else {
                decompose(&f)
            };
            writeln!(out, "{e}").unwrap();
            if *check {
                let g = e.evaluate(rig)?;
                if g != f {
                    return Err(Failure::Check(format!("{out}check FAILED\nexpected {f}\nfound    {g}")));
                }
                writeln!(out, "check OK").unwrap();
            }
        }
        Command::Evaluate { input } => {
            let e = parse_genexpr(&read_input(input)?)?;
            let f = e.evaluate(rig)?;
            writeln!(out, "{}", format_morphism("e", &f)).unwrap();
        }
        Command::Kappa { input } => {
            let a = WeilObject::new(object(input)?);
            let k = kappa(a.graph())?;
            match cli.format {
                Format::Dot => out = k.to_dot(),
                Format::Lines => k.labels.iter().for_each(|l| writeln!(out, "{l}").unwrap()),
                Format::Text => {
                    writeln!(
                        out,
                        "kappa of {} : {} vertices, {} edges",
                        a.cotree(),
                        k.graph.n(),
                        k.graph.edge_count()
                    )
                    .unwrap();
                    for (i, l) in k.labels.iter().enumerate() {
                        writeln!(out, "{} {l}", i + 1).unwrap();
                    }
                    for (u, v) in k.graph.edges() {
                        writeln!(out, "{}-{}", u + 1, v + 1).unwrap();
                    }
                }
            }
        }
        Command::Cotree { input } => {
            let g = parse_graph(&read_input(input)?)?;
            let (t, perm) = cotree_decompose(&g)?;
            writeln!(out, "{t}").unwrap();
            if cli.format == Format::Text {
                let perm: Vec<String> = perm.iter().map(|v| (v + 1).to_string()).collect();
                writeln!(out, "leaves {}", perm.join(" ")).unwrap();
            }
        }
        Command::Hom { source, target } => {
            let h = enumerate_hom(&object(source)?, &object(target)?)?;
            if cli.format == Format::Text {
                writeln!(out, "{}", h.len()).unwrap();
            }
            for (i, f) in h.morphisms.iter().enumerate() {
                writeln!(out, "{}", format_morphism(&format!("f{}", i + 1), f)).unwrap();
            }
        }
        Command::Verify {
            max_vertices,
            samples,
            seed,
        } => {
            let report = verify_all(*max_vertices, *samples, *seed)?;
            out.push_str(&report.lines());
            if cli.format == Format::Text {
                let failed = report.failures().count();
                writeln!(out, "{} checks, {} failed", report.results.len(), failed).unwrap();
            }
            if !report.passed() {
                return Err(Failure::Check(out));
            }
        }
        Command::Dot {
            input,
            kappa: want_kappa,
        } => match parse_any(input, rig)? {
            Parsed::Object(t) => {
                let a = WeilObject::new(t);
                out = if *want_kappa {
                    kappa(a.graph())?.to_dot()
                } else {
                    a.graph().to_dot(None)
                };
            }
            Parsed::Morphism(_, f) => out = f.circles_dot(),
            Parsed::Expr(e) => out = e.evaluate(rig)?.circles_dot(),
        },
    }
    Ok(out)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Check(out)) => {
            print!("{out}");
            if !out.ends_with('\n') {
                println!();
            }
            ExitCode::from(3)
        }
        Err(e) => {
            eprintln!("error: {}", e.message());
            ExitCode::from(e.code())
        }
    }
}
