//! Command-line front end. [`run`] is the whole interface; the binary only
//! wires SIGINT to the cancellation token.

use std::fmt::Display;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use crate::cancel::CancelToken;
use crate::degree::{self, DegreeResult, Provenance};
use crate::enumerative;
use crate::error::Error;
use crate::etale::EtaleAlgebra;
use crate::gw::GWElement;
use crate::linalg::Matrix;
use crate::poly::{PolyMap, Polynomial, Ring};
use crate::scalar::{Field, Scalar};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;
pub const EXIT_CANCELLED: i32 = 130;

#[derive(Parser, Debug)]
#[command(
    name = "a1deg",
    version,
    about = "Grothendieck-Witt valued degrees of polynomial maps"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Common {
    /// q, r, c or fp:<p>
    #[arg(long, default_value = "q")]
    field: String,
    /// Print a JSON object instead of the class.
    #[arg(long)]
    json: bool,
}

#[derive(Args, Debug)]
struct SystemArgs {
    /// Comma separated variable names.
    #[arg(long)]
    vars: String,
    /// Components separated by `;`.
    #[arg(long)]
    system: String,
}

#[derive(Args, Debug)]
struct ExtensionArgs {
    /// Modulus of an étale extension `k[t]/(m)` for points with irrational coordinates.
    #[arg(long)]
    modulus: Option<String>,
    /// Variable of the modulus.
    #[arg(long, default_value = "t")]
    ext_var: String,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Canonical diagonal form of a GW element such as "<2> + 3<-1> + H".
    GwSimplify {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        a: String,
    },
    /// Decide whether two GW elements are equal.
    GwEq {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Sum of two GW elements
    GwAdd {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Product of two GW elements
    GwMul {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Bézout form of f/g for a univariate system "f; g".
    Bezout {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        sys: SystemArgs,
    },
    /// EKL class at a rational zero.
    Ekl {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        sys: SystemArgs,
        /// Comma separated coordinates.
        #[arg(long)]
        point: String,
    },
    /// Local degree at a simple zero with coordinates in k[t]/(m).
    LocalDegreeEtale {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        sys: SystemArgs,
        #[command(flatten)]
        ext: ExtensionArgs,
        /// Coordinates as polynomials in the extension variable.
        #[arg(long)]
        point: String,
    },
    /// Scheja-Storch class of a system with finitely many zeros.
    GlobalDegree {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        sys: SystemArgs,
    },
    /// A¹-Milnor number of a hypersurface singularity at the origin.
    Milnor {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        vars: String,
        #[arg(long)]
        poly: String,
    },
    /// Type of a nondegenerate singular point.
    NodeType {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        vars: String,
        #[arg(long)]
        poly: String,
        #[command(flatten)]
        ext: ExtensionArgs,
        #[arg(long)]
        point: String,
    },
    /// Trace form Tr⟨a⟩ of k[t]/(m).
    TraceForm {
        #[command(flatten)]
        common: Common,
        #[command(flatten)]
        ext: ExtensionArgs,
        /// The scaling element a, a polynomial in the extension variable.
        #[arg(long, default_value = "1")]
        element: String,
    },
    /// Enriched count of lines meeting four lines in P³.
    FourLines {
        #[command(flatten)]
        common: Common,
        /// JSON file with four {"span": [[..], [..]]} entries.
        #[arg(long)]
        lines: PathBuf,
        /// File with a 4×4 matrix applied to the input first.
        #[arg(long)]
        basis_change: Option<PathBuf>,
    },
    /// Enriched count of the 27 lines on a smooth cubic surface.
    CubicLines {
        #[command(flatten)]
        common: Common,
        /// Homogeneous cubic in x0, x1, x2, x3.
        #[arg(long, conflicts_with = "file")]
        poly: Option<String>,
        /// File containing the cubic.
        #[arg(long)]
        file: Option<PathBuf>,
        #[arg(long)]
        basis_change: Option<PathBuf>,
    },
}

/// A failure with the exit code it maps to.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn input(message: impl Display) -> Failure {
        Failure {
            code: EXIT_INPUT,
            message: message.to_string(),
        }
    }

    /// Attaches the offending text and a caret when the error has a position.
    fn in_text(err: Error, what: &str, text: &str) -> Failure {
        match &err {
            Error::Syntax { pos, .. } | Error::UnknownVariable { pos, .. } => {
                let col = text.get(..*pos).map_or(*pos, |p| p.chars().count());
                Failure::input(format!("{what}: {err}\n  {text}\n  {}^", " ".repeat(col)))
            }
            _ => Failure::from(err),
        }
    }
}

impl From<Error> for Failure {
    fn from(err: Error) -> Failure {
        let code = if err.is_input_error() {
            EXIT_INPUT
        } else {
            match err {
                Error::Cancelled => EXIT_CANCELLED,
                Error::Internal(_) => EXIT_INTERNAL,
                _ => EXIT_PRECONDITION,
            }
        };
        let message = if code == EXIT_PRECONDITION {
            format!("precondition violated: {err}")
        } else {
            err.to_string()
        };
        Failure { code, message }
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

enum Output {
    Class(DegreeResult),
    Equality {
        equal: bool,
        a: GWElement,
        b: GWElement,
    },
}

/// Runs one invocation with a fresh cancellation token.
pub fn run<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    run_with(argv, out, err, &CancelToken::new())
}

/// Like [`run`], observing `cancel`.
pub fn run_with<I, S>(
    argv: I,
    out: &mut dyn Write,
    err: &mut dyn Write,
    cancel: &CancelToken,
) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if code == EXIT_OK { out } else { err };
            let _ = write!(sink, "{text}");
            return code;
        }
    };
    let json_mode = common(&cli.command).json;
    match execute(&cli.command, cancel) {
        Ok(output) => {
            let _ = writeln!(out, "{}", render(&output, json_mode));
            EXIT_OK
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn common(cmd: &Command) -> &Common {
    match cmd {
        Command::GwSimplify { common, .. }
        | Command::GwEq { common, .. }
        | Command::GwAdd { common, .. }
        | Command::GwMul { common, .. }
        | Command::Bezout { common, .. }
        | Command::Ekl { common, .. }
        | Command::LocalDegreeEtale { common, .. }
        | Command::GlobalDegree { common, .. }
        | Command::Milnor { common, .. }
        | Command::NodeType { common, .. }
        | Command::TraceForm { common, .. }
        | Command::FourLines { common, .. }
        | Command::CubicLines { common, .. } => common,
    }
}

fn render(output: &Output, json_mode: bool) -> String {
    match (output, json_mode) {
        (Output::Class(r), false) => r.class.to_string(),
        (Output::Class(r), true) => json!({
            "class": r.class.to_json(),
            "pretty": r.class.to_string(),
            "provenance": r.provenance.to_string(),
        })
        .to_string(),
        (Output::Equality { equal, .. }, false) => {
            if *equal { "equal" } else { "not equal" }.to_string()
        }
        (Output::Equality { equal, a, b }, true) => json!({
            "equal": equal,
            "a": a.to_json(),
            "b": b.to_json(),
            "provenance": Provenance::Arithmetic.to_string(),
        })
        .to_string(),
    }
}

fn class(class: GWElement, provenance: Provenance) -> Output {
    Output::Class(DegreeResult {
        class: class.simplify(),
        provenance,
    })
}

fn execute(cmd: &Command, cancel: &CancelToken) -> CliResult<Output> {
    let field = Field::parse(&common(cmd).field).map_err(Failure::from)?;
    match cmd {
        Command::GwSimplify { a, .. } => {
            Ok(class(gw_arg(a, "--a", field)?, Provenance::Arithmetic))
        }
        Command::GwEq { a, b, .. } => {
            let (a, b) = (gw_arg(a, "--a", field)?, gw_arg(b, "--b", field)?);
            let equal = a.gw_eq(&b)?;
            Ok(Output::Equality { equal, a, b })
        }
        Command::GwAdd { a, b, .. } => {
            let sum = gw_arg(a, "--a", field)?.add(&gw_arg(b, "--b", field)?)?;
            Ok(class(sum, Provenance::Arithmetic))
        }
        Command::GwMul { a, b, .. } => {
            let prod = gw_arg(a, "--a", field)?.mul(&gw_arg(b, "--b", field)?)?;
            Ok(class(prod, Provenance::Arithmetic))
        }
        Command::Bezout { sys, .. } => {
            let map = system(field, sys)?;
            if map.ring().nvars() != 1 || map.len() != 2 {
                return Err(Failure::input(
                    "bezout needs one variable and a system \"f; g\"",
                ));
            }
            let form = degree::bezout_form(&map.components()[0], &map.components()[1])?;
            Ok(class(form.gw, Provenance::Bezout))
        }
        Command::Ekl { sys, point, .. } => {
            let map = system(field, sys)?;
            let p = rational_point(field, point)?;
            Ok(class(
                degree::ekl_class_with(&map, &p, cancel)?.gw,
                Provenance::Ekl,
            ))
        }
        Command::LocalDegreeEtale {
            sys, ext, point, ..
        } => {
            let map = system(field, sys)?;
            let alg = extension(field, ext)?;
            let p = extension_point(&alg, &ext.ext_var, point)?;
            Ok(class(
                degree::local_degree_etale(&map, &alg, &p)?,
                Provenance::TraceJacobian,
            ))
        }
        Command::GlobalDegree { sys, .. } => {
            let map = system(field, sys)?;
            let ss = degree::scheja_storch_form_with(&map, cancel)?;
            Ok(class(ss.gw, Provenance::SchejaStorch))
        }
        Command::Milnor { vars, poly, .. } => {
            let f = polynomial(field, vars, poly, "--poly")?;
            Ok(class(
                enumerative::milnor_number_with(&f, cancel)?.gw,
                Provenance::Ekl,
            ))
        }
        Command::NodeType {
            vars,
            poly,
            ext,
            point,
            ..
        } => {
            let f = polynomial(field, vars, poly, "--poly")?;
            let gw = match &ext.modulus {
                None => enumerative::node_type(&f, &rational_point(field, point)?)?,
                Some(_) => {
                    let alg = extension(field, ext)?;
                    let p = extension_point(&alg, &ext.ext_var, point)?;
                    enumerative::node_type_ext(&f, &alg, &p)?
                }
            };
            Ok(class(gw, Provenance::Hessian))
        }
        Command::TraceForm { ext, element, .. } => {
            let alg = extension(field, ext)?;
            let ring = Ring::new(field, &[ext.ext_var.as_str()])?;
            let a = Polynomial::parse(element, &ring)
                .map_err(|e| Failure::in_text(e, "--element", element))?;
            let a = alg.element_from_polynomial(&a)?;
            Ok(class(alg.trace_form(&a)?, Provenance::TraceForm))
        }
        Command::FourLines {
            lines,
            basis_change,
            ..
        } => {
            let value: Value = serde_json::from_str(&read_file(lines)?)
                .map_err(|e| Failure::input(format!("{}: {e}", lines.display())))?;
            let mut lines = enumerative::lines_from_json(field, &value)?;
            if let Some(path) = basis_change {
                let m = matrix_file(field, path)?;
                lines = lines
                    .iter()
                    .map(|l| l.transform(&m))
                    .collect::<Result<_, _>>()?;
            }
            let ss = enumerative::four_lines_count_with(&lines, cancel)?;
            Ok(class(ss.gw, Provenance::SchejaStorch))
        }
        Command::CubicLines {
            poly,
            file,
            basis_change,
            ..
        } => {
            let text = match (poly, file) {
                (Some(p), _) => p.clone(),
                (None, Some(path)) => read_file(path)?.trim().to_string(),
                (None, None) => return Err(Failure::input("cubic-lines needs --poly or --file")),
            };
            let mut f = polynomial(field, "x0,x1,x2,x3", &text, "cubic")?;
            if let Some(path) = basis_change {
                f = enumerative::transform_cubic(&f, &matrix_file(field, path)?)?;
            }
            let ss = enumerative::cubic_lines_count_with(&f, cancel)?;
            Ok(class(ss.gw, Provenance::SchejaStorch))
        }
    }
}

fn gw_arg(text: &str, what: &str, field: Field) -> CliResult<GWElement> {
    GWElement::parse(text, field).map_err(|e| Failure::in_text(e, what, text))
}

fn ring(field: Field, vars: &str) -> CliResult<Arc<Ring>> {
    Ring::from_var_list(field, vars).map_err(|e| Failure::in_text(e, "--vars", vars))
}

fn system(field: Field, sys: &SystemArgs) -> CliResult<PolyMap> {
    let r = ring(field, &sys.vars)?;
    PolyMap::parse(&sys.system, &r).map_err(|e| Failure::in_text(e, "--system", &sys.system))
}

fn polynomial(field: Field, vars: &str, text: &str, what: &str) -> CliResult<Polynomial> {
    let r = ring(field, vars)?;
    Polynomial::parse(text, &r).map_err(|e| Failure::in_text(e, what, text))
}

fn rational_point(field: Field, text: &str) -> CliResult<Vec<Scalar>> {
    text.split(',')
        .map(|c| {
            field
                .parse_scalar(c.trim())
                .map_err(|e| Failure::input(format!("--point: {e}")))
        })
        .collect()
}

fn extension(field: Field, ext: &ExtensionArgs) -> CliResult<EtaleAlgebra> {
    let modulus = ext
        .modulus
        .as_deref()
        .ok_or_else(|| Failure::input("--modulus is required"))?;
    EtaleAlgebra::parse(field, &ext.ext_var, modulus)
        .map_err(|e| Failure::in_text(e, "--modulus", modulus))
}

fn extension_point(alg: &EtaleAlgebra, var: &str, text: &str) -> CliResult<Vec<Vec<Scalar>>> {
    let ring = Ring::new(alg.field(), &[var])?;
    text.split(',')
        .map(|c| {
            let p = Polynomial::parse(c, &ring).map_err(|e| Failure::in_text(e, "--point", c))?;
            Ok(alg.element_from_polynomial(&p)?)
        })
        .collect()
}

fn read_file(path: &Path) -> CliResult<String> {
    std::fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

/// A 4×4 matrix, either as a JSON array of rows or as whitespace separated rows.
fn matrix_file(field: Field, path: &Path) -> CliResult<Matrix> {
    let text = read_file(path)?;
    let bad = |msg: String| Failure::input(format!("{}: {msg}", path.display()));
    let rows: Vec<Vec<String>> = if text.trim_start().starts_with('[') {
        let value: Vec<Vec<Value>> = serde_json::from_str(&text).map_err(|e| bad(e.to_string()))?;
        value
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|v| match v {
                        Value::String(s) => s,
                        other => other.to_string(),
                    })
                    .collect()
            })
            .collect()
    } else {
        text.lines()
            .filter(|l| !l.trim().is_empty())
            .map(|l| l.split_whitespace().map(str::to_string).collect())
            .collect()
    };
    if rows.len() != 4 || rows.iter().any(|r| r.len() != 4) {
        return Err(bad("expected a 4×4 matrix".into()));
    }
    let entries = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|c| field.parse_scalar(c))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| bad(e.to_string()))?;
    let m = Matrix::from_rows(field, entries);
    if m.det().is_zero() {
        return Err(bad("the basis change is singular".into()));
    }
    Ok(m)
}
