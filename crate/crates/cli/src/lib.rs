//! Argument parsing and command dispatch for the `wittlab` binary.

use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use wittlab::automorphisms::{normalize_word, parse_automorphism, parse_word, verify_automorphism};
use wittlab::cohomology::compute_h2_window;
use wittlab::derivations::compute_der_space;
use wittlab::suite::{run_suite, Suite, DEFAULT_SEED};
use wittlab::{bracket, AlgebraKind, Element, Error, ReportDocument, ResultEntry, Target, Window};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "wittlab",
    version,
    about = "Exact verification for W, W~ and W(2,2)"
)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Algebra: w, wtilde or w22.
    #[arg(long, global = true, value_parser = parse_algebra)]
    pub algebra: Option<AlgebraKind>,
    /// Window bound N: indices |m| <= N.
    #[arg(long, global = true, env = "WITTLAB_WINDOW", default_value_t = 6)]
    pub window: i64,
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for randomized sweeps.
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a verification suite.
    Verify {
        #[arg(value_enum)]
        suite: SuiteArg,
    },
    /// Windowed second cohomology of W in one degree.
    H2 {
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        degree: i64,
    },
    /// Derivations of one degree modulo inner derivations.
    Der {
        #[arg(long, default_value_t = 0, allow_hyphen_values = true)]
        degree: i64,
        #[arg(long, value_enum, default_value_t = TargetArg::Algebra)]
        target: TargetArg,
    },
    /// Automorphism group operations.
    Aut {
        #[command(subcommand)]
        op: AutOp,
    },
    /// Evaluate a bracket of two elements.
    Bracket {
        #[arg(allow_hyphen_values = true)]
        x: String,
        #[arg(allow_hyphen_values = true)]
        y: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum AutOp {
    /// Apply an automorphism to an element.
    Apply {
        f: String,
        element: String,
    },
    /// Normal form of f ∘ g (g applied first).
    Compose {
        f: String,
        g: String,
    },
    Invert {
        f: String,
    },
    /// Normal form of a generator word such as "pi(-1) z(3,2)".
    NormalForm {
        word: String,
    },
    /// Check that the map preserves brackets on the window.
    Verify {
        f: String,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum SuiteArg {
    Jacobi,
    Cocycles,
    Derivations,
    Automorphisms,
    All,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::Jacobi => Suite::Jacobi,
            SuiteArg::Cocycles => Suite::Cocycles,
            SuiteArg::Derivations => Suite::Derivations,
            SuiteArg::Automorphisms => Suite::Automorphisms,
            SuiteArg::All => Suite::All,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum TargetArg {
    Algebra,
    I,
}

fn parse_algebra(s: &str) -> Result<AlgebraKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Outcome of a command: the report plus free-form text blocks for human output.
pub struct Outcome {
    pub report: ReportDocument,
    pub blocks: Vec<String>,
}

/// Runs a parsed command. `Err` means the input was unusable (exit 2).
pub fn execute(cli: &Cli) -> Result<Outcome, Error> {
    let start = Instant::now();
    let g = &cli.global;
    let algebra = g.algebra.unwrap_or(AlgebraKind::W);
    let window = Window::new(g.window)?;
    let mut blocks = Vec::new();
    let mut report = match &cli.command {
        Command::Verify { suite } => {
            let suite = Suite::from(*suite);
            let jacobi = match suite {
                Suite::Jacobi | Suite::All => g.algebra,
                _ => None,
            };
            let tag = g.algebra.map_or("all", |a| a.tag());
            let mut doc = ReportDocument::new(format!("verify {}", suite.name()), tag, g.window);
            doc.results = run_suite(suite, jacobi, window, g.seed)?;
            doc
        }
        Command::H2 { degree } => {
            let r = compute_h2_window(algebra, window, *degree)?;
            let mut doc = ReportDocument::new("h2", algebra.tag(), g.window);
            doc.push(ResultEntry::info("unknowns", r.unknowns.to_string()));
            doc.push(ResultEntry::info("equations", r.equations.to_string()));
            doc.push(ResultEntry::info("cocycle_dim", r.cocycle_dim.to_string()));
            doc.push(ResultEntry::info(
                "coboundary_dim",
                r.coboundary_dim.to_string(),
            ));
            let expected = if *degree == 0 { 2 } else { 0 };
            let source = if *degree == 0 {
                "H²(W,C) = Cα ⊕ Cβ"
            } else {
                "graded blocks off degree 0"
            };
            doc.push(ResultEntry::new(
                "h2_dim",
                format!("{expected}: {source}"),
                r.h2_dim.to_string(),
                r.h2_dim == expected,
            ));
            for (i, form) in r.basis.iter().enumerate() {
                doc.push(ResultEntry::info(format!("basis[{i}]"), form.to_text()));
                blocks.push(form.to_text());
            }
            doc
        }
        Command::Der { degree, target } => {
            let target = match target {
                TargetArg::Algebra => Target::AlgebraValued,
                TargetArg::I => Target::IValued,
            };
            let r = compute_der_space(algebra, target, *degree, window)?;
            let mut doc = ReportDocument::new("der", algebra.tag(), g.window);
            doc.push(ResultEntry::info("unknowns", r.unknowns.to_string()));
            doc.push(ResultEntry::info("equations", r.equations.to_string()));
            doc.push(ResultEntry::info(
                "derivation_dim",
                r.derivation_dim.to_string(),
            ));
            doc.push(ResultEntry::info("inner_dim", r.inner_dim.to_string()));
            let claim = match (algebra, *degree) {
                (AlgebraKind::W, 0) => Some((1, "H¹(W,W) = CD")),
                (AlgebraKind::WTilde, 0) => Some((1, "H¹(W~,W~) ≅ H¹(W,W)")),
                (AlgebraKind::W, _) => Some((0, "Der(W,W) = Inn ⊕ CD")),
                _ => None,
            };
            doc.push(match claim {
                Some((expected, source)) => ResultEntry::new(
                    "outer_dim",
                    format!("{expected}: {source}"),
                    r.outer_dim.to_string(),
                    r.outer_dim == expected,
                ),
                None => ResultEntry::info("outer_dim", r.outer_dim.to_string()),
            });
            for (i, m) in r.outer_basis.iter().enumerate() {
                doc.push(ResultEntry::info(format!("outer_basis[{i}]"), m.to_text()));
                blocks.push(m.to_text());
            }
            doc
        }
        Command::Aut { op } => {
            let mut doc;
            match op {
                AutOp::Apply { f, element } => {
                    let nf = parse_automorphism(f)?;
                    let x = Element::parse(element, AlgebraKind::W)?;
                    doc = ReportDocument::new("aut apply", "w", g.window);
                    doc.push(ResultEntry::info(
                        "image",
                        nf.apply(&x)?.to_text(AlgebraKind::W),
                    ));
                }
                AutOp::Compose { f, g: second } => {
                    let nf = parse_automorphism(f)?.compose(&parse_automorphism(second)?);
                    doc = ReportDocument::new("aut compose", "w", g.window);
                    doc.push(ResultEntry::info("normal_form", nf.to_string()));
                }
                AutOp::Invert { f } => {
                    let nf = parse_automorphism(f)?.inverse();
                    doc = ReportDocument::new("aut invert", "w", g.window);
                    doc.push(ResultEntry::info("normal_form", nf.to_string()));
                }
                AutOp::NormalForm { word } => {
                    let nf = normalize_word(&parse_word(word)?)?;
                    doc = ReportDocument::new("aut normal-form", "w", g.window);
                    doc.push(ResultEntry::info("normal_form", nf.to_string()));
                }
                AutOp::Verify { f } => {
                    let nf = parse_automorphism(f)?;
                    let r = verify_automorphism(&nf, algebra, window)?;
                    doc = ReportDocument::new("aut verify", algebra.tag(), g.window);
                    doc.push(ResultEntry::info(
                        "pairs_checked",
                        r.check.pairs_checked.to_string(),
                    ));
                    doc.push(ResultEntry::info(
                        "pairs_skipped",
                        r.check.skipped.to_string(),
                    ));
                    if algebra != AlgebraKind::W {
                        let computed = match &r.lift {
                            Some(l) => l
                                .central_images
                                .iter()
                                .map(|(c, img)| {
                                    format!("{} -> {}", c.to_text(algebra), img.to_text(algebra))
                                })
                                .collect::<Vec<_>>()
                                .join(", "),
                            None => "no admissible central assignment".into(),
                        };
                        doc.push(ResultEntry::new(
                            "central_lift",
                            "some central assignment works",
                            computed,
                            r.lift.is_some(),
                        ));
                    }
                    let computed = match r.check.violations.first() {
                        None => "0 violations".to_string(),
                        Some(v) => format!(
                            "{} violations, first at ({}, {}): {}",
                            r.check.violations.len(),
                            v.x.to_text(algebra),
                            v.y.to_text(algebra),
                            v.defect.to_text(algebra)
                        ),
                    };
                    doc.push(ResultEntry::new(
                        "bracket_preserved",
                        "0 violations",
                        computed,
                        r.check.passed(),
                    ));
                }
            }
            doc
        }
        Command::Bracket { x, y } => {
            let x = Element::parse(x, algebra)?;
            let y = Element::parse(y, algebra)?;
            let mut doc = ReportDocument::new("bracket", algebra.tag(), g.window);
            doc.push(ResultEntry::info(
                "bracket",
                bracket(&x, &y, algebra)?.to_text(algebra),
            ));
            doc
        }
    };
    report.elapsed_ms = start.elapsed().as_millis() as u64;
    Ok(Outcome { report, blocks })
}

/// Human-readable rendering.
pub fn render_text(outcome: &Outcome) -> String {
    let doc = &outcome.report;
    let mut out = format!("{} [{} N={}]\n", doc.command, doc.algebra, doc.window);
    for r in &doc.results {
        if r.name.starts_with("basis[") || r.name.starts_with("outer_basis[") {
            continue;
        }
        if r.expected == "-" {
            out.push_str(&format!("  {}: {}\n", r.name, r.computed));
        } else {
            out.push_str(&format!(
                "  [{}] {}: {} (expected {})\n",
                r.status.as_str(),
                r.name,
                r.computed,
                r.expected
            ));
        }
    }
    for b in &outcome.blocks {
        out.push('\n');
        out.push_str(b);
        if !b.ends_with('\n') {
            out.push('\n');
        }
    }
    out
}

pub fn exit_code(doc: &ReportDocument) -> i32 {
    if doc.passed() {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}
