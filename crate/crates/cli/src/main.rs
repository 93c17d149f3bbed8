use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use cohspec::algebra::WAlgebra;
use cohspec::scheme::{counit_check, is_affine, WeakScheme};
use cohspec::sheaves::{shf_is_zero, zar_faithfulness_sweep};
use cohspec::site::{descent_check, is_cover, topology_axiom_check};
use cohspec::spectrum::spec0;
use cohspec::{catalog, doc, dot, Error, Limits, TopologyTag};

#[derive(Parser)]
#[command(name = "cohspec", version, about = "Spectra, sites and weak schemes of finite and monomial algebras")]
struct Cli {
    #[command(subcommand)]
    verb: Verb,
    /// Write the artifact here instead of standard output.
    #[arg(long, short = 'o', global = true)]
    output: Option<PathBuf>,
    #[command(flatten)]
    guards: Guards,
}

/// Size guards; raise one when a command exits with code 3.
#[derive(Args)]
struct Guards {
    #[arg(long, global = true)]
    max_lower_sets: Option<usize>,
    #[arg(long, global = true)]
    max_lattice: Option<usize>,
    #[arg(long, global = true)]
    max_ideals: Option<usize>,
    #[arg(long, global = true)]
    max_classes: Option<usize>,
    #[arg(long, global = true)]
    max_equalizer: Option<usize>,
    #[arg(long, global = true)]
    pool_degree: Option<u32>,
}

impl Guards {
    fn limits(&self) -> Limits {
        let d = Limits::default();
        Limits {
            lower_sets: self.max_lower_sets.unwrap_or(d.lower_sets),
            lattice: self.max_lattice.unwrap_or(d.lattice),
            ideals: self.max_ideals.unwrap_or(d.ideals),
            classes: self.max_classes.unwrap_or(d.classes),
            equalizer: self.max_equalizer.unwrap_or(d.equalizer),
            pool_degree: self.pool_degree.unwrap_or(d.pool_degree),
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Out {
    #[value(alias = "text-doc")]
    Text,
    Dot,
}

#[derive(Subcommand)]
enum Verb {
    /// The point spectrum of an algebra.
    Spec {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long, default_value = "zar")]
        topology: TopologyTag,
        #[arg(long, value_enum, default_value = "text")]
        out: Out,
    },
    /// Whether a family of elements covers the algebra.
    CoverCheck {
        #[arg(long)]
        algebra: PathBuf,
        /// Comma-separated element names.
        #[arg(long, allow_hyphen_values = true)]
        elements: String,
        #[arg(long, default_value = "zar")]
        topology: TopologyTag,
    },
    /// Exactness of the descent fork for a family.
    Descent {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        elements: String,
    },
    /// Glues two affine charts along an isomorphism of basic opens.
    Glue {
        #[arg(long)]
        glue: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        out: Out,
    },
    /// Global sections, with the counit check for an algebra.
    Gamma {
        #[command(flatten)]
        input: SchemeInput,
    },
    /// Whether a scheme is isomorphic to the spectrum of its global sections.
    Affine {
        #[command(flatten)]
        input: SchemeInput,
    },
    /// The Stone round trip of a lattice.
    Duality {
        #[arg(long)]
        lattice: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        out: Out,
    },
    /// Whether the sheaf of a module vanishes.
    Vanish {
        #[arg(long)]
        algebra: PathBuf,
        #[arg(long)]
        module: PathBuf,
        #[arg(long, default_value = "zar")]
        topology: TopologyTag,
    },
    /// The faithfulness sweep over a catalog.
    Sweep {
        #[arg(long, default_value = "finite")]
        catalog: String,
        #[arg(long, default_value = "zar")]
        topology: TopologyTag,
        #[arg(long, default_value_t = 2)]
        max_family: usize,
    },
    /// Site axioms over a catalog.
    Axioms {
        #[arg(long, default_value = "rings:12")]
        catalog: String,
        #[arg(long, default_value = "zar")]
        topology: TopologyTag,
        #[arg(long, default_value_t = 2)]
        max_family: usize,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct SchemeInput {
    /// An algebra document, read as its spectrum.
    #[arg(long)]
    algebra: Option<PathBuf>,
    #[arg(long)]
    scheme: Option<PathBuf>,
    #[arg(long)]
    glue: Option<PathBuf>,
    /// Topology for `--algebra`.
    #[arg(long, default_value = "zar")]
    topology: TopologyTag,
}

enum Fail {
    Input(String),
    Guard(String),
}

impl From<Error> for Fail {
    fn from(e: Error) -> Self {
        if e.is_size_guard() {
            Fail::Guard(e.to_string())
        } else {
            Fail::Input(e.to_string())
        }
    }
}

/// The artifact to emit and the verdict behind the exit code.
struct Outcome {
    text: String,
    verdict: bool,
}

fn read(path: &Path) -> Result<String, Fail> {
    fs::read_to_string(path).map_err(|e| Fail::Input(format!("{}: {e}", path.display())))
}

fn algebra(path: &Path) -> Result<WAlgebra, Fail> {
    doc::load_algebra(&read(path)?).map_err(|e| Fail::from(e).located(path))
}

impl Fail {
    fn located(self, path: &Path) -> Self {
        match self {
            Fail::Input(m) => Fail::Input(format!("{}: {m}", path.display())),
            g => g,
        }
    }
}

fn catalog_named(name: &str) -> Result<Vec<catalog::Entry>, Fail> {
    catalog::named(name).ok_or_else(|| {
        Fail::Input(format!(
            "unknown catalog {name:?}; expected rings[:n], monoids, monomials[:k], lattices[:n] or finite[:n]"
        ))
    })
}

fn scheme(input: &SchemeInput, limits: &Limits) -> Result<(WeakScheme, Option<WAlgebra>), Fail> {
    if let Some(p) = &input.algebra {
        let a = algebra(p)?;
        let s = cohspec::scheme::spec_scheme(&a, input.topology, limits)?;
        return Ok((s.scheme, Some(a)));
    }
    if let Some(p) = &input.scheme {
        return Ok((doc::load_scheme(&read(p)?).map_err(|e| Fail::from(e).located(p))?, None));
    }
    let p = input.glue.as_ref().expect("one input is required");
    Ok((doc::load_glue(&read(p)?, limits).map_err(|e| Fail::from(e).located(p))?.scheme, None))
}

fn run(verb: &Verb, limits: &Limits) -> Result<Outcome, Fail> {
    let done = |text: String| Outcome { text, verdict: true };
    Ok(match verb {
        Verb::Spec { algebra: p, topology, out } => {
            let s = spec0(&algebra(p)?, *topology, limits)?;
            match out {
                Out::Text => done(doc::emit_space(&s.space)),
                Out::Dot => done(dot::space_dot(&s.space, &format!("Spec {}", stem(p)))),
            }
        }
        Verb::CoverCheck { algebra: p, elements, topology } => {
            let a = algebra(p)?;
            let fam = doc::parse_elements(&a, elements)?;
            let verdict = is_cover(&a, &fam, *topology, limits)?;
            let names = doc::element_names(&a, &fam).join(", ");
            let word = if verdict { "covers" } else { "does not cover" };
            Outcome {
                text: format!("{{{names}}} {word} under {topology}\n"),
                verdict,
            }
        }
        Verb::Descent { algebra: p, elements } => {
            let a = algebra(p)?;
            let report = descent_check(&a, &doc::parse_elements(&a, elements)?, limits)?;
            Outcome {
                verdict: report.exact(),
                text: doc::render(&report),
            }
        }
        Verb::Glue { glue: p, out } => {
            let g = doc::load_glue(&read(p)?, limits).map_err(|e| Fail::from(e).located(p))?;
            match out {
                Out::Text => done(doc::emit_scheme(&g.scheme)),
                Out::Dot => done(dot::scheme_dot(&g.scheme, &stem(p))),
            }
        }
        Verb::Gamma { input } => match &input.algebra {
            Some(p) => {
                let w = counit_check(&algebra(p)?, input.topology, limits)?;
                Outcome {
                    text: doc::emit_algebra(&w.gamma),
                    verdict: w.iso,
                }
            }
            None => done(doc::emit_algebra(scheme(input, limits)?.0.global_sections())),
        },
        Verb::Affine { input } => {
            let report = is_affine(&scheme(input, limits)?.0, limits)?;
            Outcome {
                verdict: report.affine,
                text: doc::render(&report),
            }
        }
        Verb::Duality { lattice, out } => {
            let l = doc::load_lattice(&read(lattice)?).map_err(|e| Fail::from(e).located(lattice))?;
            let (_, space) = cohspec::lattice::stone_roundtrip(&l, limits.lattice)?;
            match out {
                Out::Text => done(doc::emit_space(&space)),
                Out::Dot => done(dot::space_dot(&space, &format!("pt {}", stem(lattice)))),
            }
        }
        Verb::Vanish { algebra: p, module, topology } => {
            let a = algebra(p)?;
            let r = a
                .as_finite()
                .ok_or_else(|| Fail::Input("module sheaves need a finite algebra".into()))?;
            let m = doc::load_module(&read(module)?, r).map_err(|e| Fail::from(e).located(module))?;
            let report = shf_is_zero(r, &m, *topology, limits)?;
            Outcome {
                verdict: report.zero,
                text: doc::render(&report),
            }
        }
        Verb::Sweep { catalog, topology, max_family } => {
            let report = zar_faithfulness_sweep(&catalog_named(catalog)?, *topology, *max_family, limits)?;
            Outcome {
                verdict: report.holds(),
                text: doc::render(&report),
            }
        }
        Verb::Axioms { catalog, topology, max_family } => {
            let sample: Vec<WAlgebra> = catalog_named(catalog)?.into_iter().map(|e| e.algebra).collect();
            let report = topology_axiom_check(&sample, *topology, *max_family, limits)?;
            Outcome {
                verdict: report.passed(),
                text: doc::render(&report),
            }
        }
    })
}

fn stem(p: &Path) -> String {
    p.file_stem().map_or_else(|| "input".into(), |s| s.to_string_lossy().into_owned())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = run(&cli.verb, &cli.guards.limits()).and_then(|o| {
        match &cli.output {
            Some(path) => fs::write(path, &o.text).map_err(|e| Fail::Input(format!("{}: {e}", path.display())))?,
            None => print!("{}", o.text),
        }
        Ok(o.verdict)
    });
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Fail::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Fail::Guard(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}
