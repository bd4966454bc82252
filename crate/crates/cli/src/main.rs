use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use trotter_depth::bounds::{
    bound_all, bound_method, grid_linear, grid_log, sweep_curves, AllBounds, CurveSpec,
    CurveSweep, Method, SweepMetric, SweepVar,
};
use trotter_depth::models::{build_with, Accounting, BuildOptions};
use trotter_depth::report::{
    bound_record, bounds_csv, decomposition_report, overlap_csv, spectrum_csv, sweep_csv, to_json,
    BoundRecord, Format,
};
use trotter_depth::spectra::{lattice_spectrum, overlap_run, OverlapSetup, SectorFilter};
use trotter_depth::verify::{self, VerifyOptions};
use trotter_depth::{Boundary, Dimension, Error, LatticeSpec, Model, ModelParams, SimParams};

/// Pauli decompositions and Trotter step-count bounds for Hubbard and t-J lattices.
#[derive(Parser, Debug)]
#[command(name = "trotter-depth", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Per-site Pauli decomposition.
    Decompose(DecomposeArgs),
    /// Commutator and 1-norm Trotter bounds.
    Bound(BoundArgs),
    /// Bounds over a parameter grid, one column per curve.
    Sweep(SweepArgs),
    /// Exact spectrum in a particle-number sector.
    Spectrum(SpectrumArgs),
    /// Run the self-check suite.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
struct LatticeArgs {
    #[arg(long, default_value = "hubbard")]
    model: Model,
    /// Columns (sites of a chain).
    #[arg(long, default_value_t = 4)]
    nx: usize,
    /// Rows; defaults to `nx` in 2D.
    #[arg(long)]
    ny: Option<usize>,
    #[arg(long = "dim")]
    dim: Option<Dimension>,
    #[arg(long, default_value = "obc")]
    boundary: Boundary,
}

impl LatticeArgs {
    fn lattice(&self, default_dim: Dimension) -> Result<LatticeSpec, Error> {
        match self.dim.unwrap_or(default_dim) {
            Dimension::One => LatticeSpec::chain(self.nx, self.boundary),
            Dimension::Two => LatticeSpec::rect(self.nx, self.ny.unwrap_or(self.nx), self.boundary),
        }
    }
}

#[derive(Args, Debug)]
struct ParamArgs {
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    t: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    u: f64,
    #[arg(long, allow_negative_numbers = true, conflicts_with = "derive_j")]
    j: Option<f64>,
    /// Use `J = 4 t^2 / U`.
    #[arg(long)]
    derive_j: bool,
}

impl ParamArgs {
    fn params(&self) -> Result<ModelParams, Error> {
        let p = if self.derive_j {
            ModelParams::derived(self.t, self.u)?
        } else {
            ModelParams::new(self.t, self.u, self.j.unwrap_or(1.0))
        };
        p.validate()?;
        Ok(p)
    }
}

#[derive(Args, Debug)]
struct OutputArgs {
    #[arg(long, default_value = "csv")]
    format: Format,
    /// Write here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

impl OutputArgs {
    fn emit(&self, text: &str) -> Result<(), Error> {
        match &self.output {
            Some(path) => fs::write(path, text).map_err(|e| Error::Output(format!("{}: {e}", path.display()))),
            None => {
                print!("{text}");
                Ok(())
            }
        }
    }
}

fn parse_accounting(s: &str) -> Result<Accounting, String> {
    match s {
        "literal" => Ok(Accounting::Literal),
        "complete" => Ok(Accounting::Complete),
        other => Err(format!("unknown accounting `{other}` (literal | complete)")),
    }
}

#[derive(Args, Debug)]
struct DecomposeArgs {
    #[command(flatten)]
    lattice: LatticeArgs,
    #[arg(long, default_value = "literal", value_parser = parse_accounting)]
    accounting: Accounting,
    /// Multiply vertical hops by (-1)^nx.
    #[arg(long)]
    alternating_sign: bool,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Clone, Copy, Debug)]
enum MethodChoice {
    One(Method),
    All,
}

fn parse_method(s: &str) -> Result<MethodChoice, String> {
    if s == "all" {
        return Ok(MethodChoice::All);
    }
    s.parse().map(MethodChoice::One).map_err(|e: Error| e.to_string())
}

#[derive(Args, Debug)]
struct BoundArgs {
    #[command(flatten)]
    lattice: LatticeArgs,
    #[command(flatten)]
    params: ParamArgs,
    #[arg(long, default_value_t = 1.0)]
    tau: f64,
    #[arg(long, default_value_t = 1.0)]
    epsilon: f64,
    /// brute | expanded | nearest | closed | one-norm | all
    #[arg(long, default_value = "closed", value_parser = parse_method)]
    method: MethodChoice,
    /// Boundary treatment of the brute-force sum on open lattices.
    #[arg(long, default_value = "complete", value_parser = parse_accounting)]
    accounting: Accounting,
    #[command(flatten)]
    output: OutputArgs,
}

fn parse_curve_shape(s: &str) -> Result<(Dimension, Boundary), String> {
    let (d, b) = s.split_once('-').ok_or_else(|| format!("curve `{s}` is not DIM-BOUNDARY, e.g. 2d-obc"))?;
    Ok((d.parse().map_err(|e: Error| e.to_string())?, b.parse().map_err(|e: Error| e.to_string())?))
}

#[derive(Clone, Copy, Debug)]
enum MetricChoice {
    Bound,
    Omega,
}

fn parse_metric(s: &str) -> Result<MetricChoice, String> {
    match s {
        "bound" => Ok(MetricChoice::Bound),
        "omega" => Ok(MetricChoice::Omega),
        other => Err(format!("unknown metric `{other}` (bound | omega)")),
    }
}

#[derive(Args, Debug)]
struct SweepArgs {
    #[arg(long, value_delimiter = ',', default_value = "hubbard")]
    models: Vec<Model>,
    /// Lattice kinds, e.g. `1d-obc,2d-pbc`.
    #[arg(long, value_delimiter = ',', default_value = "2d-obc", value_parser = parse_curve_shape)]
    curves: Vec<(Dimension, Boundary)>,
    /// Number of sites when not sweeping N.
    #[arg(long, default_value_t = 36)]
    sites: usize,
    /// t | U | J | U/t | N
    #[arg(long)]
    vary: SweepVar,
    #[arg(long, allow_negative_numbers = true, required_unless_present = "values")]
    from: Option<f64>,
    #[arg(long, allow_negative_numbers = true, required_unless_present = "values")]
    to: Option<f64>,
    #[arg(long, default_value_t = 11)]
    steps: usize,
    /// Logarithmic spacing.
    #[arg(long)]
    log: bool,
    /// Explicit grid, overrides --from/--to.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    values: Option<Vec<f64>>,
    #[command(flatten)]
    params: ParamArgs,
    /// When sweeping t, keep U = ratio * t.
    #[arg(long)]
    u_over_t: Option<f64>,
    /// bound | omega
    #[arg(long, default_value = "bound", value_parser = parse_metric)]
    metric: MetricChoice,
    #[arg(long, default_value = "closed")]
    method: Method,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct SpectrumArgs {
    #[command(flatten)]
    lattice: LatticeArgs,
    #[command(flatten)]
    params: ParamArgs,
    /// Particle-number sector.
    #[arg(long)]
    particles: Option<usize>,
    /// Drop states with a doubly occupied site.
    #[arg(long)]
    no_double: bool,
    #[arg(long)]
    alternating_sign: bool,
    /// Compare the Hubbard low band with the t-J spectrum on an open chain
    /// of `--nx` sites (J = 4t^2/U).
    #[arg(long)]
    overlap: bool,
    /// Keep doubly occupied states in the t-J spectrum of `--overlap`.
    #[arg(long)]
    keep_double: bool,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    /// Skip the exact-diagonalization checks.
    #[arg(long)]
    quick: bool,
    /// Directory with table1_hubbard.txt / table2_tj.txt replacing the built-in tables.
    #[arg(long)]
    fixtures: Option<PathBuf>,
    /// Run only these checks.
    #[arg(long, value_delimiter = ',')]
    only: Option<Vec<String>>,
    #[arg(long)]
    json: bool,
}

#[derive(Serialize)]
struct BoundsOutput {
    bounds: Vec<BoundRecord>,
    disagreement: Option<String>,
}

fn decompose(a: &DecomposeArgs) -> Result<ExitCode, Error> {
    let lattice = a.lattice.lattice(Dimension::Two)?;
    let model = a.lattice.model;
    let groups = build_with(
        model,
        &lattice,
        BuildOptions {
            accounting: a.accounting,
            alternating_vertical_sign: a.alternating_sign,
        },
    )?;
    let report = decomposition_report(model, &lattice, a.accounting, &groups);
    a.output.emit(&match a.output.format {
        Format::Csv => report.to_csv()?,
        Format::Json => to_json(&report)?,
    })?;
    Ok(ExitCode::SUCCESS)
}

fn bound(a: &BoundArgs) -> Result<ExitCode, Error> {
    let lattice = a.lattice.lattice(Dimension::Two)?;
    let params = a.params.params()?;
    let sim = SimParams::new(a.tau, a.epsilon)?;
    let AllBounds {
        results,
        disagreement,
    } = match a.method {
        MethodChoice::All => bound_all(a.lattice.model, &lattice, a.accounting, sim)?,
        MethodChoice::One(m) => AllBounds {
            results: vec![bound_method(a.lattice.model, &lattice, m, a.accounting, sim)?],
            disagreement: None,
        },
    };
    let out = BoundsOutput {
        bounds: results.iter().map(|r| bound_record(r, &params)).collect(),
        disagreement,
    };
    a.output.emit(&match a.output.format {
        Format::Csv => bounds_csv(&out.bounds)?,
        Format::Json => to_json(&out)?,
    })?;
    if let Some(d) = &out.disagreement {
        eprintln!("methods disagree: {d}");
        return Ok(ExitCode::from(1));
    }
    Ok(ExitCode::SUCCESS)
}

fn sweep(a: &SweepArgs) -> Result<ExitCode, Error> {
    let values = match (&a.values, a.from, a.to) {
        (Some(v), _, _) => v.clone(),
        (None, Some(from), Some(to)) if a.log => grid_log(from, to, a.steps)?,
        (None, Some(from), Some(to)) => grid_linear(from, to, a.steps)?,
        _ => return Err(Error::InvalidGrid("give --values or --from and --to".into())),
    };
    let curves = a
        .models
        .iter()
        .flat_map(|&model| {
            a.curves.iter().map(move |&(dimension, boundary)| CurveSpec {
                model,
                dimension,
                boundary,
            })
        })
        .collect();
    let table = sweep_curves(&CurveSweep {
        curves,
        sites: a.sites,
        vary: a.vary,
        values,
        fixed: a.params.params()?,
        u_over_t: a.u_over_t,
        derive_j: a.params.derive_j,
        metric: match a.metric {
            MetricChoice::Bound => SweepMetric::Bound(a.method),
            MetricChoice::Omega => SweepMetric::Omega,
        },
    })?;
    a.output.emit(&match a.output.format {
        Format::Csv => sweep_csv(&table)?,
        Format::Json => to_json(&table)?,
    })?;
    Ok(ExitCode::SUCCESS)
}

fn spectrum(a: &SpectrumArgs) -> Result<ExitCode, Error> {
    if a.overlap {
        let run = overlap_run(OverlapSetup {
            n_sites: a.lattice.nx,
            particles: a.particles.unwrap_or(a.lattice.nx),
            t: a.params.t,
            u: a.params.u,
            exclude_double_occupancy: !a.keep_double,
        })?;
        a.output.emit(&match a.output.format {
            Format::Csv => overlap_csv(&run)?,
            Format::Json => to_json(&run)?,
        })?;
        return Ok(ExitCode::SUCCESS);
    }
    let lattice = a.lattice.lattice(Dimension::One)?;
    let filter = SectorFilter {
        particle_number: a.particles,
        exclude_double_occupancy: a.no_double,
    };
    let options = BuildOptions {
        accounting: Accounting::Literal,
        alternating_vertical_sign: a.alternating_sign,
    };
    let levels = lattice_spectrum(a.lattice.model, &lattice, options, &a.params.params()?, filter)?;
    a.output.emit(&match a.output.format {
        Format::Csv => spectrum_csv(&levels)?,
        Format::Json => to_json(&levels)?,
    })?;
    Ok(ExitCode::SUCCESS)
}

fn run_verify(a: &VerifyArgs) -> Result<ExitCode, Error> {
    let options = VerifyOptions {
        quick: a.quick,
        fixtures: a.fixtures.clone(),
    };
    let report = match &a.only {
        None => verify::run(&options),
        Some(names) => verify::VerifyReport {
            checks: names
                .iter()
                .map(|n| {
                    verify::run_check(n, &options)
                        .ok_or_else(|| Error::InvalidParams(format!("unknown check `{n}`")))
                })
                .collect::<Result<_, _>>()?,
        },
    };
    if a.json {
        print!("{}", to_json(&report)?);
    } else {
        print!("{}", report.render());
    }
    Ok(if report.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::InvalidLattice(_) | Error::InvalidParams(_) | Error::InvalidGrid(_) => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    let result = match &cli.command {
        Command::Decompose(a) => decompose(a),
        Command::Bound(a) => bound(a),
        Command::Sweep(a) => sweep(a),
        Command::Spectrum(a) => spectrum(a),
        Command::Verify(a) => run_verify(a),
    };
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
