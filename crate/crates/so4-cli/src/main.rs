use std::fmt::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use so4_geom::canon::{self, Ambient, CanonicalForms};
use so4_geom::claims;
use so4_geom::datasets::{self, Params};
use so4_geom::quaternionic::{self, build_product};
use so4_geom::riemann::curvature;
use so4_geom::torsion::{self, TorsionFamily};
use so4_geom::{Form, Matrix, Scalar};

use so4_cli::input::{load, parse_param, CliError, Target};
use so4_cli::report::StructureReport;

#[derive(Parser)]
#[command(
    name = "so4",
    version,
    about = "Exact checks of SO(4)- and Sp(2)Sp(1)-structures on Lie algebras"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Machine,
}

#[derive(Args)]
struct Input {
    /// `builtin:NAME`, a builtin name, or a structure-equation file
    target: String,
    /// adapted coframe: one row per line, rows are covectors in the file's coordinates
    #[arg(long)]
    coframe: Option<PathBuf>,
    /// family parameter, e.g. `--param a=1/2`
    #[arg(long = "param", value_parser = parse_param)]
    params: Vec<(String, Scalar)>,
}

impl Input {
    fn load(&self) -> Result<Target, CliError> {
        load(&self.target, &self.params, self.coframe.as_deref())
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Requirement {
    Harmonic,
    Flat,
    Einstein,
    Invariant,
    InW,
    Hkt,
    Hyperkaehler,
}

#[derive(Clone, Copy, ValueEnum)]
enum AmbientArg {
    Gl,
    So,
}

#[derive(Subcommand)]
enum Command {
    /// Full structure report
    Verify {
        #[command(flatten)]
        input: Input,
        /// exit 1 unless this property holds (repeatable)
        #[arg(long = "require", value_enum)]
        require: Vec<Requirement>,
    },
    /// Betti numbers of the Chevalley–Eilenberg complex
    Betti {
        #[command(flatten)]
        input: Input,
    },
    /// Exterior derivative of a form in the adapted coframe, e.g. `so4 d n1 '12-34'`
    D {
        #[command(flatten)]
        input: Input,
        form: String,
    },
    /// Stabilizer of canonical forms (alpha, beta, Omega, ...) or literal forms
    Stabilizer {
        forms: Vec<String>,
        #[arg(long, value_enum, default_value_t = AmbientArg::Gl)]
        ambient: AmbientArg,
        /// dimension for literal forms
        #[arg(long, default_value_t = 7)]
        dim: usize,
    },
    /// Intrinsic torsion of the SO(4)-structure
    Torsion {
        #[command(flatten)]
        input: Input,
    },
    /// Exact Ricci tensor
    Ricci {
        #[command(flatten)]
        input: Input,
        /// use the 8-dimensional product with a line
        #[arg(long)]
        product: bool,
    },
    /// dα and dβ; exit 1 unless both vanish
    Harmonic {
        #[command(flatten)]
        input: Input,
    },
    /// Structure equations of a builtin family, or `invariant` with p, q, r
    Family {
        name: String,
        #[arg(long = "param", value_parser = parse_param)]
        params: Vec<(String, Scalar)>,
    },
    /// The product R ⊕ g with Ω and σ_s
    Product {
        #[command(flatten)]
        input: Input,
    },
    /// I₁dσ₁ = I₂dσ₂ = I₃dσ₃ on the product; exit 1 if not
    Hkt {
        #[command(flatten)]
        input: Input,
    },
    /// EH and KH components of the product's intrinsic torsion
    Eh {
        #[command(flatten)]
        input: Input,
    },
    /// Closed directions in the infinitesimal so(8)-orbit of Ω
    OrbitDim {
        #[command(flatten)]
        input: Input,
    },
    /// Evaluate every acceptance criterion
    ReproducePaper {
        /// run only criteria with this tag or number
        #[arg(long)]
        filter: Option<String>,
    },
}

/// Key/value output shared by both formats.
struct Out {
    format: Format,
    text: String,
}

impl Out {
    fn new(format: Format) -> Self {
        Out {
            format,
            text: String::new(),
        }
    }

    fn header(&mut self, target: &Target) {
        self.kv("target", &target.name);
        if let Some(o) = target.origin {
            self.kv("source", o);
        }
    }

    fn kv(&mut self, key: &str, value: impl std::fmt::Display) {
        match self.format {
            Format::Machine => writeln!(self.text, "{key} = {value}"),
            Format::Human => writeln!(self.text, "{key:<16} {value}"),
        }
        .unwrap();
    }

    fn matrix(&mut self, key: &str, m: &Matrix) {
        match self.format {
            Format::Machine => {
                for i in 0..m.rows() {
                    let row: Vec<String> = (0..m.cols()).map(|j| m[(i, j)].to_string()).collect();
                    self.kv(&format!("{key}.row{}", i + 1), row.join(", "));
                }
            }
            Format::Human => {
                writeln!(self.text, "{key}:\n{m}").unwrap();
            }
        }
    }
}

fn product_of(target: &Target) -> Result<quaternionic::ProductStructure, CliError> {
    Ok(build_product(&target.algebra, target.coframe.as_ref())?)
}

fn run(cli: Cli) -> Result<String, CliError> {
    let mut out = Out::new(cli.format);
    match cli.command {
        Command::Verify { input, require } => {
            let target = input.load()?;
            let report = StructureReport::build(&target)?;
            out.text = match cli.format {
                Format::Machine => report.to_machine(),
                Format::Human => report.to_human(),
            };
            let mut failed = Vec::new();
            for r in require {
                let t = report.torsion.as_ref();
                let q = report.quaternionic.as_ref();
                let (name, ok) = match r {
                    Requirement::Harmonic => ("harmonic", report.harmonic == Some(true)),
                    Requirement::Flat => ("flat", report.flat),
                    Requirement::Einstein => ("einstein", report.einstein),
                    Requirement::Invariant => ("invariant", t.is_some_and(|t| t.invariant)),
                    Requirement::InW => ("in-w", t.is_some_and(|t| t.in_w)),
                    Requirement::Hkt => ("hkt", q.is_some_and(|q| q.hkt)),
                    Requirement::Hyperkaehler => ("hyperkaehler", q.is_some_and(|q| q.hyperkaehler)),
                };
                if !ok {
                    failed.push(name);
                }
            }
            if !failed.is_empty() {
                print!("{}", out.text);
                return Err(CliError::Failed(format!(
                    "{} does not satisfy: {}",
                    target.name,
                    failed.join(", ")
                )));
            }
        }
        Command::Betti { input } => {
            let target = input.load()?;
            out.header(&target);
            let betti = target.algebra.betti_numbers()?;
            for (k, b) in betti.iter().enumerate() {
                out.kv(&format!("b{k}"), b);
            }
        }
        Command::D { input, form } => {
            let target = input.load()?;
            let g = target.adapted()?;
            let f = Form::parse(g.dim(), &form).map_err(|e| CliError::Parse(e.to_string()))?;
            out.header(&target);
            out.kv("form", &f);
            out.kv("d", g.d(&f));
        }
        Command::Stabilizer { forms, ambient, dim } => {
            if forms.is_empty() {
                return Err(CliError::Parse("name at least one form".into()));
            }
            let canonical = CanonicalForms::new();
            let parsed = forms
                .iter()
                .map(|name| match canonical.by_name(name) {
                    Ok(f) => Ok(f.clone()),
                    Err(_) => Form::parse(dim, name).map_err(|e| CliError::Parse(format!("{name}: {e}"))),
                })
                .collect::<Result<Vec<_>, _>>()?;
            if parsed.iter().any(|f| f.dim() != parsed[0].dim()) {
                return Err(CliError::Parse("forms live in different dimensions".into()));
            }
            let ambient = match ambient {
                AmbientArg::Gl => Ambient::Gl,
                AmbientArg::So => Ambient::So,
            };
            let stab = canon::stabilizer(&parsed, ambient);
            out.kv("forms", forms.join(", "));
            out.kv("dim", stab.dim());
            out.kv("closed", stab.is_closed());
            out.kv("skew", stab.is_skew());
            if parsed[0].dim() == 7 {
                out.kv("equals_so4", stab.same_span(&canon::so4()));
            }
        }
        Command::Torsion { input } => {
            let target = input.load()?;
            let g = target.adapted()?;
            let t = torsion::intrinsic_torsion(&g)?;
            out.header(&target);
            for (i, c) in t.xi.comps.iter().enumerate() {
                out.kv(&format!("xi{}", i + 1), c);
            }
            out.kv("in_w", t.in_w);
            out.kv("invariant", t.invariant());
            if let Some((l, m)) = &t.lambda_mu {
                out.kv("lambda", l);
                out.kv("mu", m);
            }
        }
        Command::Ricci { input, product } => {
            let target = input.load()?;
            let g = if product {
                product_of(&target)?.g8
            } else {
                target.adapted()?
            };
            let c = curvature(&g)?;
            out.header(&target);
            out.matrix("ric", &c.ric);
            out.kv("scal", &c.scal);
            out.kv("einstein", c.is_einstein());
            out.kv("flat", c.is_flat());
        }
        Command::Harmonic { input } => {
            let target = input.load()?;
            let h = torsion::harmonic_check(&target.algebra, target.coframe.as_ref())?;
            out.header(&target);
            out.kv("dalpha", &h.dalpha);
            out.kv("dbeta", &h.dbeta);
            out.kv("harmonic", h.harmonic());
            if !h.harmonic() {
                print!("{}", out.text);
                return Err(CliError::Failed(format!("{} is not harmonic", target.name)));
            }
        }
        Command::Family { name, params } => {
            let g = if name == "invariant" {
                let map: Params = params.into_iter().collect();
                if let Some(bad) = map.keys().find(|k| !["p", "q", "r"].contains(&k.as_str())) {
                    return Err(CliError::Parse(format!("unknown parameter `{bad}`")));
                }
                let get = |k: &str| map.get(k).cloned().unwrap_or_else(Scalar::zero);
                torsion::build_invariant_family(&get("p"), &get("q"), &get("r"))?
            } else {
                if datasets::origin(&name).is_none() {
                    return Err(CliError::Parse(format!("unknown family `{name}`")));
                }
                load(&format!("builtin:{name}"), &params, None)?.algebra
            };
            out.kv("label", g.label());
            if let Some(o) = datasets::origin(&name) {
                out.kv("source", o);
            }
            for (i, f) in g.differentials().iter().enumerate() {
                out.kv(&format!("de{}", i + 1), f);
            }
            out.kv("jacobi", g.check_jacobi());
            if TorsionFamily::parse(&name).is_some() || name == "invariant" {
                let (a, c) = torsion::invariant_torsion_decompose(&g)?;
                out.kv("theta1", &a);
                out.kv("theta2", &c);
            }
        }
        Command::Product { input } => {
            let target = input.load()?;
            let ps = product_of(&target)?;
            out.header(&target);
            for (i, f) in ps.g8.differentials().iter().enumerate() {
                out.kv(&format!("de{}", i + 1), f);
            }
            out.kv("dOmega", ps.d_omega());
            for (s, f) in ps.d_sigma().iter().enumerate() {
                out.kv(&format!("dsigma{}", s + 1), f);
            }
            out.kv("hyperkaehler", quaternionic::hyperkaehler_check(&ps));
            out.kv(
                "sigma_ideal_differential",
                quaternionic::sigma_ideal_is_differential(&ps),
            );
        }
        Command::Hkt { input } => {
            let target = input.load()?;
            let ps = product_of(&target)?;
            let hkt = quaternionic::hkt_check(&ps);
            out.header(&target);
            out.kv("hkt", hkt);
            if !hkt {
                print!("{}", out.text);
                return Err(CliError::Failed(format!("{} is not HKT", target.name)));
            }
        }
        Command::Eh { input } => {
            let target = input.load()?;
            let eh = quaternionic::eh_component(&product_of(&target)?)?;
            out.header(&target);
            match &eh.coef {
                Some(c) => out.kv("eh_coef", c),
                None => out.kv("eh_part", &eh.eh_part),
            }
            out.kv("remainder_zero", eh.remainder.is_zero());
            out.kv("kh_zero", eh.kh_part.is_zero());
            out.kv("es3h_zero", eh.es3h_part.is_zero());
            out.kv("remainder_in_kh", eh.remainder_in_kh());
        }
        Command::OrbitDim { input } => {
            let target = input.load()?;
            let n = quaternionic::infinitesimal_closed_dim(&product_of(&target)?)?;
            out.header(&target);
            out.kv("orbit_dim", n);
        }
        Command::ReproducePaper { filter } => {
            if let Some(f) = &filter {
                if !claims::CRITERIA.iter().any(|c| claims::matches(c, Some(f))) {
                    return Err(CliError::Parse(format!("no criterion matches `{f}`")));
                }
            }
            let reports = claims::run(filter.as_deref());
            for r in &reports {
                for c in &r.checks {
                    let verdict = if c.pass { "PASS" } else { "FAIL" };
                    match cli.format {
                        Format::Machine => {
                            writeln!(out.text, "{}.{} = {verdict} ; {}", r.tag, c.name, c.detail).unwrap()
                        }
                        Format::Human => writeln!(
                            out.text,
                            "{verdict}  [{:>2} {}] {}: {}",
                            r.number, r.tag, c.name, c.detail
                        )
                        .unwrap(),
                    }
                }
            }
            let passed = reports.iter().filter(|r| r.pass()).count();
            writeln!(out.text, "criteria passed: {passed}/{}", reports.len()).unwrap();
            if let Some((r, c)) = reports.iter().find_map(|r| r.first_failure().map(|c| (r, c))) {
                print!("{}", out.text);
                return Err(CliError::Failed(format!(
                    "criterion {} [{}] `{}`: {}",
                    r.number, r.tag, c.name, c.detail
                )));
            }
        }
    }
    Ok(out.text)
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
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("so4: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
