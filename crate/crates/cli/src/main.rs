use clap::{Args, Parser, Subcommand};
use mincuba::biangle::gauss_cubature_biangle;
use mincuba::composed::composed_rule;
use mincuba::oracle::{certify, BiangleOracle, MomentSource, SquareOracle};
use mincuba::squaremin::{minimal_rule_even, minimal_rule_odd, moller_bound};
use mincuba::{CubatureRule2D, Domain, Execution, Gamma, Weight1D, WeightSpec};
use std::path::PathBuf;
use std::process::ExitCode;

mod rulefile;
mod svg;

use rulefile::{Family, Format, Meta, RuleFile};

const EXIT_ARGS: u8 = 1;
const EXIT_BUILD: u8 = 2;
const EXIT_VERIFY: u8 = 3;
const EXIT_UNVERIFIABLE: u8 = 4;

/// Gauss and minimal cubature rules on the parabolic biangle and the square.
#[derive(Parser)]
#[command(name = "mincuba", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print Möller's lower bound n(n+1)/2 + floor(n/2).
    Bound {
        #[arg(long)]
        n: usize,
    },
    /// Construct a rule and write its nodes and weights.
    Build {
        #[arg(value_enum)]
        family: Family,
        #[command(flatten)]
        params: Params,
        /// Output file (standard output if omitted).
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Check the exactness of a rule file against the reference moments.
    Verify {
        file: PathBuf,
        /// Highest total degree tested (default: the declared degree).
        #[arg(long)]
        max_degree: Option<usize>,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
        /// Write the JSON exactness report here.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Family of a CSV file, which carries no metadata.
        #[arg(long, value_enum)]
        family: Option<Family>,
        #[command(flatten)]
        params: Params,
    },
    /// Draw the nodes as an SVG scatter plot.
    Plot {
        file: PathBuf,
        #[arg(long)]
        svg: PathBuf,
        #[arg(long, default_value_t = 600)]
        size: u32,
        /// Domain of a CSV file.
        #[arg(long, value_enum, default_value = "square")]
        domain: PlotDomain,
    },
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum PlotDomain {
    Square,
    Biangle,
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum WeightKind {
    Jacobi,
    Chebyshev,
    Legendre,
}

#[derive(Args)]
struct Params {
    #[arg(long, value_enum, default_value = "jacobi")]
    weight: WeightKind,
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    beta: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    gamma: Option<f64>,
    #[arg(long)]
    ell: Option<usize>,
    /// Biangle order.
    #[arg(long)]
    n: Option<usize>,
    /// Square and composed order.
    #[arg(long)]
    m: Option<usize>,
}

struct Fail(u8, String);

impl Params {
    fn meta(&self, family: Family) -> Result<Meta, Fail> {
        let bad = |msg: String| Fail(EXIT_ARGS, msg);
        let (alpha, beta) = match (self.weight, self.alpha, self.beta) {
            (WeightKind::Jacobi, a, b) => (a.unwrap_or(-0.5), b.unwrap_or(-0.5)),
            (WeightKind::Chebyshev, None, None) => (-0.5, -0.5),
            (WeightKind::Legendre, None, None) => (0.0, 0.0),
            _ => return Err(bad("--alpha/--beta only apply to --weight jacobi".into())),
        };
        if !(alpha > -1.0 && beta > -1.0) {
            return Err(bad(format!("alpha and beta must exceed -1, got {alpha}, {beta}")));
        }
        let gamma = match family {
            Family::Composed => match self.gamma {
                None => -0.5,
                Some(g) if g == -0.5 => g,
                Some(g) => return Err(bad(format!("composed rules exist for gamma = -0.5 only, got {g}"))),
            },
            _ => self.gamma.unwrap_or(-0.5),
        };
        Gamma::from_value(gamma).map_err(|_| bad(format!("gamma must be -0.5 or 0.5, got {gamma}")))?;
        let ell = match family {
            Family::Composed => {
                let l = self.ell.unwrap_or(1);
                if l == 0 {
                    return Err(bad("ell must be at least 1".into()));
                }
                Some(l)
            }
            _ if self.ell.is_some() => return Err(bad("--ell only applies to composed rules".into())),
            _ => None,
        };
        let param = match family {
            Family::Biangle if self.m.is_some() => return Err(bad("biangle rules take --n".into())),
            Family::Biangle => self.n,
            _ if self.n.is_some() => return Err(bad(format!("{family:?} rules take --m"))),
            _ => self.m,
        }
        .ok_or_else(|| bad("missing rule order (--n or --m)".into()))?;
        Ok(Meta { family, alpha, beta, gamma, ell, param })
    }
}

fn construct(meta: &Meta) -> mincuba::Result<CubatureRule2D> {
    let w = Weight1D::jacobi(meta.alpha, meta.beta)?;
    let g = Gamma::from_value(meta.gamma)?;
    match meta.family {
        Family::Biangle => gauss_cubature_biangle(&w, meta.param, g),
        Family::SquareEven => minimal_rule_even(&WeightSpec::square(w, g), meta.param),
        Family::SquareOdd => minimal_rule_odd(meta.alpha, meta.beta, g, meta.param),
        Family::Composed => composed_rule(&w, meta.ell.unwrap_or(1), meta.param),
    }
}

fn write(path: &Option<PathBuf>, text: &str) -> Result<(), Fail> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Fail(EXIT_ARGS, format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<(), Fail> {
    match cli.cmd {
        Cmd::Bound { n } => {
            if n < 1 {
                return Err(Fail(EXIT_ARGS, "n must be at least 1".into()));
            }
            println!("{}", moller_bound(n));
        }
        Cmd::Build { family, params, out, format } => {
            let meta = params.meta(family)?;
            let rule = construct(&meta).map_err(|e| Fail(EXIT_BUILD, format!("construction failed: {e}")))?;
            let text = RuleFile::from_rule(meta, &rule).encode(format).map_err(|e| Fail(EXIT_BUILD, e))?;
            write(&out, &text)?;
        }
        Cmd::Verify { file, max_degree, tol, report, family, params } => {
            let rf = RuleFile::read(&file).map_err(|e| Fail(EXIT_ARGS, e))?;
            let meta = match (rf.meta, family) {
                (Some(m), _) => m,
                (None, Some(f)) => params.meta(f)?,
                (None, None) => {
                    return Err(Fail(EXIT_UNVERIFIABLE, "unverifiable: a CSV file needs --family and its parameters".into()))
                }
            };
            let rule = meta.rule(&rf.nodes).map_err(|e| Fail(EXIT_ARGS, e))?;
            let source: Box<dyn MomentSource> = match meta.family {
                Family::Biangle => Box::new(BiangleOracle::new(rule.spec().weight.clone(), rule.spec().gamma)),
                _ => Box::new(
                    SquareOracle::new(rule.spec(), Execution::default()).map_err(|e| Fail(EXIT_UNVERIFIABLE, format!("unverifiable: {e}")))?,
                ),
            };
            let max_degree = max_degree.unwrap_or(rule.degree());
            let rep = certify(&rule, source.as_ref(), max_degree, tol).map_err(|e| Fail(EXIT_UNVERIFIABLE, format!("unverifiable: {e}")))?;
            if let Some(p) = report {
                let text = serde_json::to_string_pretty(&rep).map_err(|e| Fail(EXIT_ARGS, e.to_string()))? + "\n";
                write(&Some(p), &text)?;
            }
            println!(
                "certified degree {} (declared {}, tested up to {}, worst relative error {:.2e}, {} failures)",
                rep.certified_degree,
                rule.degree(),
                max_degree,
                rep.worst_rel_error,
                rep.failures.len()
            );
            if !rep.certifies(rule.degree()) {
                return Err(Fail(EXIT_VERIFY, format!("rule is not exact to its declared degree {}", rule.degree())));
            }
        }
        Cmd::Plot { file, svg, size, domain } => {
            let rf = RuleFile::read(&file).map_err(|e| Fail(EXIT_ARGS, e))?;
            let domain = match (rf.meta, domain) {
                (Some(m), _) if m.family == Family::Biangle => Domain::Biangle,
                (Some(_), _) => Domain::Square,
                (None, PlotDomain::Square) => Domain::Square,
                (None, PlotDomain::Biangle) => Domain::Biangle,
            };
            if size < 16 {
                return Err(Fail(EXIT_ARGS, "size must be at least 16".into()));
            }
            write(&Some(svg), &svg::render(domain, &rf.nodes, size))?;
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(EXIT_ARGS) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Fail(code, msg)) => {
            eprintln!("mincuba: {msg}");
            ExitCode::from(code)
        }
    }
}
