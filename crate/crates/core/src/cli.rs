//! Command-line front end.
//!
//! Exit codes: 0 success, 1 invariant failure, 2 usage or input error.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::config::{AngleUnit, Meta, OutputFormat, RunConfig};
use crate::error::Error;
use crate::fermi::angle_tuples;
use crate::fermion::{build_algebra, fock_state, vacuum};
use crate::linalg::ComplexMatrix;
use crate::operators::NamedOperator;
use crate::rotation::{sphere_quadrature, EulerAngles};
use crate::star::StarProduct;
use crate::tomography::{
    modes_of, projection_bitstring, projections_of_index, reconstruct, tomogram_with_tolerance,
    GridSymbol, ModePoint, OperatorSymbol, Symbol, TomoGrid, DENSITY_TOLERANCE,
};
use crate::verify::{self, Suite};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVARIANT: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "fermitomo",
    version,
    about = "Spin-tomographic representation of fermion systems"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct ConfigArgs {
    /// Number of fermionic modes (1..=10).
    #[arg(long, default_value_t = 2)]
    pub modes: usize,
    /// Spherical polynomial degree the quadrature grid integrates exactly.
    #[arg(long = "degree", default_value_t = 2)]
    pub quadrature_degree: usize,
    #[arg(long, default_value_t = 1e-10)]
    pub tolerance: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "json")]
    pub format: OutputFormat,
    /// Unit of angles given with --angles and written to output files.
    #[arg(long = "angle-unit", value_enum, default_value = "radians")]
    pub angle_unit: AngleUnit,
    /// Write the result here instead of stdout.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

impl ConfigArgs {
    fn run_config(&self) -> RunConfig {
        RunConfig {
            modes: self.modes,
            quadrature_degree: self.quadrature_degree,
            tolerance: self.tolerance,
            seed: self.seed,
            output_format: self.format,
            angle_unit: self.angle_unit,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Dump annihilation/creation matrices and check the anticommutation relations.
    Algebra {
        #[command(flatten)]
        config: ConfigArgs,
    },
    /// Run the invariant suites and emit a pass/fail report.
    Verify {
        #[command(flatten)]
        config: ConfigArgs,
        /// Restrict to these suites (repeatable).
        #[arg(long = "suite")]
        suites: Vec<String>,
    },
    /// Tomogram of a state: `vac`, `fock:i,j,...`, or a JSON matrix file.
    Tomogram {
        #[command(flatten)]
        config: ConfigArgs,
        #[arg(long)]
        state: String,
        /// One measurement setting per flag, `theta,psi;theta,psi;...` (or `phi,theta,psi` per mode).
        #[arg(long = "angles", allow_hyphen_values = true)]
        angles: Vec<String>,
    },
    /// Matrix-derived symbol of an operator, next to its closed form when one exists.
    Symbol {
        #[command(flatten)]
        config: ConfigArgs,
        #[arg(long)]
        op: String,
        #[arg(long = "angles", allow_hyphen_values = true)]
        angles: Vec<String>,
    },
    /// Star product of two operators' symbols on the quadrature grid.
    Star {
        #[command(flatten)]
        config: ConfigArgs,
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        /// Compare against the symbol of the matrix product.
        #[arg(long)]
        check_oracle: bool,
        /// Rebuild the product operator from the composed symbol.
        #[arg(long)]
        reconstruct: bool,
        /// Permit star products above the default mode limit.
        #[arg(long)]
        allow_large: bool,
    },
    /// Rebuild an operator from its symbol.
    Reconstruct {
        #[command(flatten)]
        config: ConfigArgs,
        /// Operator whose symbol is sampled on the grid.
        #[arg(long, conflicts_with = "symbol")]
        op: Option<String>,
        /// Symbol values in grid order, as written by `star` or `symbol` in CSV form.
        #[arg(long)]
        symbol: Option<PathBuf>,
        /// Operator to compare the reconstruction against.
        #[arg(long)]
        reference: Option<String>,
    },
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Invariant(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

type CliResult<T> = Result<T, CliError>;

/// Parses `std::env::args` and runs; returns the process exit code.
pub fn main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    run(cli)
}

pub fn run(cli: Cli) -> i32 {
    let result = match cli.command {
        Command::Algebra { config } => cmd_algebra(&config),
        Command::Verify { config, suites } => cmd_verify(&config, &suites),
        Command::Tomogram {
            config,
            state,
            angles,
        } => cmd_tomogram(&config, &state, &angles),
        Command::Symbol { config, op, angles } => cmd_symbol(&config, &op, &angles),
        Command::Star {
            config,
            left,
            right,
            check_oracle,
            reconstruct,
            allow_large,
        } => cmd_star(
            &config,
            &left,
            &right,
            check_oracle,
            reconstruct,
            allow_large,
        ),
        Command::Reconstruct {
            config,
            op,
            symbol,
            reference,
        } => cmd_reconstruct(
            &config,
            op.as_deref(),
            symbol.as_deref(),
            reference.as_deref(),
        ),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(CliError::Invariant(msg)) => {
            eprintln!("invariant failure: {msg}");
            EXIT_INVARIANT
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
    }
}

fn validated(args: &ConfigArgs) -> CliResult<RunConfig> {
    let cfg = args.run_config();
    cfg.validate()?;
    Ok(cfg)
}

fn emit(args: &ConfigArgs, body: &str) -> CliResult<()> {
    match &args.output {
        Some(path) => fs::write(path, body)?,
        None => std::io::stdout().lock().write_all(body.as_bytes())?,
    }
    Ok(())
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn csv_preamble(meta: &Meta, modes: usize, value_columns: &[&str]) -> String {
    let mut out = format!("# {}\n", serde_json::to_string(meta).expect("serializable"));
    let mut header: Vec<String> = (1..=modes)
        .flat_map(|k| [format!("theta_{k}"), format!("psi_{k}")])
        .collect();
    header.push("m_bits".into());
    header.extend(value_columns.iter().map(|s| s.to_string()));
    out.push_str(&header.join(","));
    out.push('\n');
    out
}

fn angle_cells(point: &[ModePoint], unit: AngleUnit) -> Vec<String> {
    point
        .iter()
        .flat_map(|p| {
            [
                unit.from_radians(p.dir.theta()).to_string(),
                unit.from_radians(p.dir.psi()).to_string(),
            ]
        })
        .collect()
}

fn angle_pairs(point: &[ModePoint], unit: AngleUnit) -> Value {
    Value::Array(
        point
            .iter()
            .map(|p| {
                json!([
                    unit.from_radians(p.dir.theta()),
                    unit.from_radians(p.dir.psi())
                ])
            })
            .collect(),
    )
}

fn m_bits(point: &[ModePoint]) -> String {
    point
        .iter()
        .map(|p| if p.m.bit() == 0 { '0' } else { '1' })
        .collect()
}

fn complex_json(z: Complex64) -> Value {
    json!([z.re, z.im])
}

/// `theta,psi;theta,psi` or `phi,theta,psi;...`, one group per mode.
pub fn parse_angles(
    source: &str,
    modes: usize,
    unit: AngleUnit,
) -> Result<Vec<EulerAngles>, Error> {
    let groups: Vec<&str> = source
        .split(';')
        .map(str::trim)
        .filter(|g| !g.is_empty())
        .collect();
    if groups.len() != modes {
        return Err(Error::ModeCountMismatch {
            expected: modes,
            got: groups.len(),
        });
    }
    groups
        .into_iter()
        .map(|g| {
            let nums = g
                .split(',')
                .map(|x| {
                    x.trim()
                        .parse::<f64>()
                        .map(|v| unit.to_radians(v))
                        .map_err(|_| Error::InvalidConfig(format!("bad angle {x:?} in {g:?}")))
                })
                .collect::<Result<Vec<_>, _>>()?;
            match nums[..] {
                [theta, psi] => EulerAngles::new(0.0, theta, psi),
                [phi, theta, psi] => EulerAngles::new(phi, theta, psi),
                _ => Err(Error::InvalidConfig(format!(
                    "expected 2 or 3 angles per mode, got {g:?}"
                ))),
            }
        })
        .collect()
}

fn angle_settings(cfg: &RunConfig, specs: &[String]) -> Result<Vec<Vec<EulerAngles>>, Error> {
    if specs.is_empty() {
        Ok(angle_tuples(
            cfg.modes,
            &sphere_quadrature(cfg.quadrature_degree)?,
        ))
    } else {
        specs
            .iter()
            .map(|s| parse_angles(s, cfg.modes, cfg.angle_unit))
            .collect()
    }
}

/// Every projection tuple at every angle setting, settings outermost.
fn points_for(settings: &[Vec<EulerAngles>], modes: usize) -> Vec<Vec<ModePoint>> {
    settings
        .iter()
        .flat_map(|angles| {
            (0..1usize << modes).map(move |b| {
                projections_of_index(b, modes)
                    .into_iter()
                    .zip(angles)
                    .map(|(m, a)| ModePoint::new(m, a.direction()))
                    .collect()
            })
        })
        .collect()
}

fn read_matrix(path: &Path) -> CliResult<ComplexMatrix> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

fn expect_dim(m: &ComplexMatrix, modes: usize, what: &str) -> CliResult<()> {
    let dim = 1usize << modes;
    if m.shape() != (dim, dim) {
        return Err(CliError::Usage(format!(
            "{what} is {}x{}, expected {dim}x{dim} for {modes} modes",
            m.rows(),
            m.cols()
        )));
    }
    Ok(())
}

/// A named built-in or a JSON matrix file.
fn load_operator(source: &str, modes: usize) -> CliResult<(ComplexMatrix, Option<NamedOperator>)> {
    match source.parse::<NamedOperator>() {
        Ok(named) => Ok((named.matrix(modes)?, Some(named))),
        Err(_) if Path::new(source).exists() => {
            let m = read_matrix(Path::new(source))?;
            expect_dim(&m, modes, source)?;
            Ok((m, None))
        }
        Err(e) => Err(e.into()),
    }
}

/// `vac`, `fock:i,j,...`, or a JSON file holding a density matrix or a column state vector.
fn load_state(source: &str, modes: usize) -> CliResult<ComplexMatrix> {
    if source == "vac" {
        return Ok(vacuum(modes)?.density());
    }
    if let Some(list) = source.strip_prefix("fock:") {
        let idx = list
            .split(',')
            .filter(|s| !s.trim().is_empty())
            .map(|s| {
                s.trim()
                    .parse::<usize>()
                    .map_err(|_| CliError::Usage(format!("bad mode index {s:?}")))
            })
            .collect::<CliResult<Vec<_>>>()?;
        let state = fock_state(&build_algebra(modes)?, &idx)?;
        if state.is_zero() {
            return Err(CliError::Usage(format!(
                "{source} is the zero vector (repeated mode); it has no tomogram"
            )));
        }
        return Ok(state.density());
    }
    let m = read_matrix(Path::new(source))?;
    if m.cols() == 1 {
        let v = m.as_slice();
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(CliError::Usage("state vector is zero".into()));
        }
        let v: Vec<_> = v.iter().map(|z| z / norm).collect();
        let rho = ComplexMatrix::outer(&v, &v);
        expect_dim(&rho, modes, source)?;
        Ok(rho)
    } else {
        expect_dim(&m, modes, source)?;
        Ok(m)
    }
}

fn cmd_algebra(args: &ConfigArgs) -> CliResult<()> {
    let cfg = validated(args)?;
    let alg = build_algebra(cfg.modes)?;
    let report = alg.anticommutation_report();
    let max = report.max_residual();
    let body = json!({
        "meta": cfg.meta(),
        "modes": cfg.modes,
        "annihilators": alg.annihilators(),
        "creators": alg.creators(),
        "max_residual": max,
        "residuals": report.entries,
    });
    emit(args, &to_json(&body))?;
    let table = report.table();
    if args.output.is_some() {
        print!("{table}");
    } else {
        eprint!("{table}");
    }
    if max >= cfg.tolerance {
        return Err(CliError::Invariant(format!(
            "anticommutator residual {max:e} is not below tolerance {:e}",
            cfg.tolerance
        )));
    }
    Ok(())
}

fn cmd_verify(args: &ConfigArgs, suite_names: &[String]) -> CliResult<()> {
    let cfg = validated(args)?;
    let suites = suite_names
        .iter()
        .map(|s| s.parse::<Suite>())
        .collect::<Result<Vec<_>, _>>()?;
    let report = verify::run(&cfg, &suites)?;
    emit(args, &to_json(&report))?;
    if let Some(first) = report.first_failure {
        let r = report
            .suites
            .iter()
            .find(|r| r.suite == first)
            .expect("listed");
        return Err(CliError::Invariant(format!(
            "suite {first}: max deviation {:e} exceeds {:e}",
            r.max_deviation, r.threshold
        )));
    }
    Ok(())
}

fn cmd_tomogram(args: &ConfigArgs, state: &str, angle_specs: &[String]) -> CliResult<()> {
    let cfg = validated(args)?;
    let rho = load_state(state, cfg.modes)?;
    let settings = angle_settings(&cfg, angle_specs)?;
    let tol = DENSITY_TOLERANCE.max(cfg.tolerance);
    let tomograms = settings
        .iter()
        .map(|a| tomogram_with_tolerance(&rho, a, tol))
        .collect::<Result<Vec<_>, _>>()?;
    let unit = cfg.angle_unit;
    let body = match cfg.output_format {
        OutputFormat::Json => {
            let points: Vec<Value> = tomograms
                .iter()
                .map(|t| {
                    let angles: Vec<Value> = t
                        .angles
                        .iter()
                        .map(|a| json!([unit.from_radians(a.theta()), unit.from_radians(a.psi())]))
                        .collect();
                    let probs: Map<String, Value> =
                        t.labelled().map(|(k, p)| (k, json!(p))).collect();
                    json!({ "angles": angles, "probs": probs })
                })
                .collect();
            to_json(&json!({ "meta": cfg.meta(), "modes": cfg.modes, "points": points }))
        }
        OutputFormat::Csv => {
            let mut out = csv_preamble(&cfg.meta(), cfg.modes, &["value"]);
            for t in &tomograms {
                let angles: Vec<String> = t
                    .angles
                    .iter()
                    .flat_map(|a| {
                        [
                            unit.from_radians(a.theta()).to_string(),
                            unit.from_radians(a.psi()).to_string(),
                        ]
                    })
                    .collect();
                for (b, p) in t.probabilities.iter().enumerate() {
                    out.push_str(&format!(
                        "{},{},{}\n",
                        angles.join(","),
                        projection_bitstring(b, cfg.modes),
                        p
                    ));
                }
            }
            out
        }
    };
    emit(args, &body)
}

fn cmd_symbol(args: &ConfigArgs, op: &str, angle_specs: &[String]) -> CliResult<()> {
    let cfg = validated(args)?;
    let (matrix, named) = load_operator(op, cfg.modes)?;
    let matrix_symbol = OperatorSymbol::new(matrix)?;
    let closed = named.map(|n| n.closed_form(cfg.modes)).transpose()?;
    let points: Vec<Vec<ModePoint>> = if angle_specs.is_empty() {
        let grid = TomoGrid::with_degree(cfg.modes, cfg.quadrature_degree)?;
        (0..grid.len()).map(|i| grid.point(i).to_vec()).collect()
    } else {
        points_for(&angle_settings(&cfg, angle_specs)?, cfg.modes)
    };
    let mut rows = Vec::with_capacity(points.len());
    let mut max_dev: Option<f64> = closed.as_ref().map(|_| 0.0);
    for p in &points {
        let m = matrix_symbol.eval(p)?;
        let c = closed.as_ref().map(|c| c.eval(p)).transpose()?;
        if let (Some(c), Some(d)) = (c, max_dev.as_mut()) {
            *d = d.max((m - c).norm());
        }
        rows.push((p, m, c));
    }
    let unit = cfg.angle_unit;
    let body = match cfg.output_format {
        OutputFormat::Json => {
            let pts: Vec<Value> = rows
                .iter()
                .map(|(p, m, c)| {
                    json!({
                        "angles": angle_pairs(p, unit),
                        "m_bits": m_bits(p),
                        "matrix": complex_json(*m),
                        "closed_form": c.map(complex_json),
                    })
                })
                .collect();
            to_json(&json!({
                "meta": cfg.meta(),
                "op": op,
                "modes": cfg.modes,
                "max_deviation": max_dev,
                "points": pts,
            }))
        }
        OutputFormat::Csv => {
            let mut out = csv_preamble(
                &cfg.meta(),
                cfg.modes,
                &["matrix_re", "matrix_im", "closed_re", "closed_im"],
            );
            for (p, m, c) in &rows {
                let (cr, ci) = c.map_or((String::new(), String::new()), |c| {
                    (c.re.to_string(), c.im.to_string())
                });
                out.push_str(&format!(
                    "{},{},{},{},{},{}\n",
                    angle_cells(p, unit).join(","),
                    m_bits(p),
                    m.re,
                    m.im,
                    cr,
                    ci
                ));
            }
            out
        }
    };
    emit(args, &body)?;
    if let Some(d) = max_dev {
        eprintln!("max deviation closed form vs matrix: {d:e}");
        if d > cfg.tolerance {
            return Err(CliError::Invariant(format!(
                "closed-form and matrix symbols differ by {d:e}"
            )));
        }
    }
    Ok(())
}

fn symbol_rows_json(sym: &GridSymbol, unit: AngleUnit) -> Vec<Value> {
    let grid = sym.grid();
    (0..grid.len())
        .map(|i| {
            let p = grid.point(i);
            json!({
                "angles": angle_pairs(p, unit),
                "m_bits": m_bits(p),
                "value": complex_json(sym.values()[i]),
            })
        })
        .collect()
}

fn symbol_rows_csv(sym: &GridSymbol, meta: &Meta, unit: AngleUnit) -> String {
    let grid = sym.grid();
    let mut out = csv_preamble(meta, grid.modes(), &["re", "im"]);
    for (i, v) in sym.values().iter().enumerate() {
        let p = grid.point(i);
        out.push_str(&format!(
            "{},{},{},{}\n",
            angle_cells(p, unit).join(","),
            m_bits(p),
            v.re,
            v.im
        ));
    }
    out
}

fn cmd_star(
    args: &ConfigArgs,
    left: &str,
    right: &str,
    check_oracle: bool,
    rebuild: bool,
    allow_large: bool,
) -> CliResult<()> {
    let cfg = validated(args)?;
    let (a, _) = load_operator(left, cfg.modes)?;
    let (b, _) = load_operator(right, cfg.modes)?;
    let grid = TomoGrid::with_degree(cfg.modes, cfg.quadrature_degree)?;
    let mut evaluator = StarProduct::new(&grid);
    if allow_large {
        evaluator = evaluator.allow_large();
    }
    let composed = evaluator.compose(
        &OperatorSymbol::new(a.clone())?,
        &OperatorSymbol::new(b.clone())?,
    )?;
    let product = a.matmul(&b)?;
    let oracle = if check_oracle {
        Some(composed.max_deviation(&OperatorSymbol::new(product.clone())?)?)
    } else {
        None
    };
    let rebuilt = if rebuild {
        let m = reconstruct(&composed, &grid)?;
        let dev = m.max_abs_diff(&product)?;
        Some((m, dev))
    } else {
        None
    };
    let body = match cfg.output_format {
        OutputFormat::Json => to_json(&json!({
            "meta": cfg.meta(),
            "left": left,
            "right": right,
            "modes": cfg.modes,
            "oracle_deviation": oracle,
            "reconstructed": rebuilt.as_ref().map(|(m, _)| m),
            "reconstruction_deviation": rebuilt.as_ref().map(|(_, d)| d),
            "points": symbol_rows_json(&composed, cfg.angle_unit),
        })),
        OutputFormat::Csv => symbol_rows_csv(&composed, &cfg.meta(), cfg.angle_unit),
    };
    emit(args, &body)?;
    for (label, dev) in [
        ("oracle", oracle),
        ("reconstruction", rebuilt.map(|(_, d)| d)),
    ] {
        if let Some(d) = dev {
            eprintln!("{label} deviation: {d:e}");
            if d > cfg.tolerance {
                return Err(CliError::Invariant(format!(
                    "{label} deviation {d:e} exceeds {:e}",
                    cfg.tolerance
                )));
            }
        }
    }
    Ok(())
}

/// Reads symbol values written by `star` (`re,im`) or `symbol` (`matrix_re,matrix_im`) in grid order.
fn read_symbol_csv(path: &Path, grid: &TomoGrid, unit: AngleUnit) -> CliResult<GridSymbol> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    let mut lines = text
        .lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty());
    let header: Vec<&str> = lines
        .next()
        .ok_or_else(|| CliError::Usage("empty symbol file".into()))?
        .split(',')
        .collect();
    let col = |names: &[&str]| header.iter().position(|h| names.contains(h));
    let (re_col, im_col) = match (col(&["re", "matrix_re"]), col(&["im", "matrix_im"])) {
        (Some(r), Some(i)) => (r, i),
        _ => return Err(CliError::Usage("symbol file needs re/im columns".into())),
    };
    let modes = grid.modes();
    let mut values = Vec::with_capacity(grid.len());
    for (i, line) in lines.enumerate() {
        if i >= grid.len() {
            return Err(CliError::Usage(format!(
                "more than {} symbol rows",
                grid.len()
            )));
        }
        let cells: Vec<&str> = line.split(',').collect();
        let num = |k: usize| -> CliResult<f64> {
            cells
                .get(k)
                .and_then(|c| c.trim().parse().ok())
                .ok_or_else(|| {
                    CliError::Usage(format!("row {}: bad value in column {}", i + 1, k + 1))
                })
        };
        let point = grid.point(i);
        for (k, p) in point.iter().enumerate() {
            let theta = unit.to_radians(num(2 * k)?);
            let psi = unit.to_radians(num(2 * k + 1)?);
            if (theta - p.dir.theta()).abs() > 1e-9 || (psi - p.dir.psi()).abs() > 1e-9 {
                return Err(CliError::Usage(format!(
                    "row {}: angles do not match the degree-{} grid",
                    i + 1,
                    grid.degree()
                )));
            }
        }
        if cells.get(2 * modes).map(|s| s.trim()) != Some(m_bits(point).as_str()) {
            return Err(CliError::Usage(format!(
                "row {}: projection bits out of grid order",
                i + 1
            )));
        }
        values.push(Complex64::new(num(re_col)?, num(im_col)?));
    }
    Ok(GridSymbol::new(grid.clone(), values)?)
}

fn cmd_reconstruct(
    args: &ConfigArgs,
    op: Option<&str>,
    symbol_file: Option<&Path>,
    reference: Option<&str>,
) -> CliResult<()> {
    let cfg = validated(args)?;
    let grid = TomoGrid::with_degree(cfg.modes, cfg.quadrature_degree)?;
    let sym: GridSymbol = match (op, symbol_file) {
        (Some(op), None) => {
            let (m, _) = load_operator(op, cfg.modes)?;
            GridSymbol::sample(&OperatorSymbol::new(m)?, &grid)?
        }
        (None, Some(path)) => read_symbol_csv(path, &grid, cfg.angle_unit)?,
        _ => {
            return Err(CliError::Usage(
                "give exactly one of --op or --symbol".into(),
            ))
        }
    };
    let rebuilt = reconstruct(&sym, &grid)?;
    let reference_matrix = match reference.or(op) {
        Some(r) => Some(load_operator(r, cfg.modes)?.0),
        None => None,
    };
    let deviation = reference_matrix
        .as_ref()
        .map(|r| rebuilt.max_abs_diff(r))
        .transpose()?;
    let body = to_json(&json!({
        "meta": cfg.meta(),
        "modes": modes_of(&rebuilt)?,
        "operator": rebuilt,
        "reference": reference.or(op),
        "reference_deviation": deviation,
    }));
    emit(args, &body)?;
    if let Some(d) = deviation {
        eprintln!("max deviation from reference: {d:e}");
        if d > cfg.tolerance {
            return Err(CliError::Invariant(format!(
                "reconstruction deviates by {d:e}"
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_angle_groups() {
        let a = parse_angles("0.5,1.0; 0.1,0.2,0.3", 2, AngleUnit::Radians).unwrap();
        assert_eq!(a[0].phi(), 0.0);
        assert_eq!(a[1].theta(), 0.2);
        let d = parse_angles("90,180", 1, AngleUnit::Degrees).unwrap();
        assert!((d[0].theta() - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
        assert!(parse_angles("0.5,1.0", 2, AngleUnit::Radians).is_err());
        assert!(parse_angles("0.5", 1, AngleUnit::Radians).is_err());
        assert!(parse_angles("4.0,0.0", 1, AngleUnit::Radians).is_err());
        assert!(parse_angles("x,0.0", 1, AngleUnit::Radians).is_err());
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
