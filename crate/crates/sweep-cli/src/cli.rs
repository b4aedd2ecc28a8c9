use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use topoinv_bz::{BandField, BzGrid, FrameField};
use topoinv_entspec::EntanglementField;
use topoinv_invariants::{chern_report, path_for, spin_chern, winding_number, ChernReport};
use topoinv_models::{spectral_gap, Model, ModelKind};
use topoinv_observables::{svector_fields, PartitionKind, Subsystem, SubsystemPartition};

use crate::{
    check_grid, default_partition, export_csv, export_heatmap, format_float, parse_partition, run_sweep, thread_count,
    CliError, ModelParams, Quantity, SweepConfig,
};

#[derive(Parser, Debug)]
#[command(name = "topoinv", version, about = "Chern numbers and subsystem winding numbers of 4-band models")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Chern number in all representations plus subsystem windings at one point
    Chern(PointArgs),
    /// Run a parameter sweep from a config file
    Sweep(SweepArgs),
    /// Dump the subsystem vector field s(p)
    Svector(FieldArgs),
    /// Dump the subsystem entanglement spectrum
    Entspec(FieldArgs),
    /// Check that the three Chern representations agree
    Validate(PointArgs),
}

#[derive(Args, Debug)]
struct PointArgs {
    /// kane-mele or staggered-sc
    #[arg(long)]
    model: String,
    /// Hopping amplitude
    #[arg(long, allow_hyphen_values = true)]
    t: Option<f64>,
    /// Kane-Mele staggered potential
    #[arg(long, allow_hyphen_values = true)]
    lv: Option<f64>,
    /// Kane-Mele spin-orbit coupling
    #[arg(long, allow_hyphen_values = true)]
    lso: Option<f64>,
    /// Kane-Mele Rashba coupling
    #[arg(long, allow_hyphen_values = true)]
    lr: Option<f64>,
    /// Superconductor chemical potential
    #[arg(long, allow_hyphen_values = true)]
    mu: Option<f64>,
    /// Superconductor sublattice staggering
    #[arg(long, allow_hyphen_values = true)]
    delta: Option<f64>,
    /// Superconductor pairing amplitude
    #[arg(long, allow_hyphen_values = true)]
    pair: Option<f64>,
    /// Brillouin-zone grid size per direction
    #[arg(long, default_value_t = 128)]
    grid: usize,
    /// spin, sublattice or a0,a1:b0,b1 (default: spin for kane-mele, sublattice otherwise)
    #[arg(long)]
    partition: Option<String>,
}

#[derive(Args, Debug)]
struct FieldArgs {
    #[command(flatten)]
    point: PointArgs,
    /// Which subsystem to dump
    #[arg(long, value_enum, default_value_t = Which::A)]
    subsystem: Which,
    /// Output file (default: standard output)
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, ValueEnum)]
enum Which {
    A,
    B,
}

#[derive(Args, Debug)]
struct SweepArgs {
    /// Sweep configuration file
    config: PathBuf,
    /// CSV output file
    #[arg(long, short)]
    output: PathBuf,
    /// Quantity to render as a heatmap (repeatable)
    #[arg(long = "heatmap")]
    heatmaps: Vec<String>,
    /// Directory for heatmaps, written as <quantity>.ppm
    #[arg(long, default_value = ".")]
    heatmap_dir: PathBuf,
}

struct Point {
    model: Model,
    grid: BzGrid,
    partition: SubsystemPartition,
}

impl PointArgs {
    fn resolve(&self) -> Result<Point, CliError> {
        let kind: ModelKind = self.model.parse().map_err(CliError::Config)?;
        let mut params = ModelParams::defaults(kind);
        let given = [
            ("t", self.t),
            ("lv", self.lv),
            ("lso", self.lso),
            ("lr", self.lr),
            ("mu", self.mu),
            ("delta", self.delta),
            ("pair", self.pair),
        ];
        for (name, value) in given {
            if let Some(v) = value {
                params.set(name, v).map_err(|_| CliError::Config(format!("--{name} does not apply to {kind}")))?;
            }
        }
        let model = params.model();
        model.validate()?;
        let partition = match &self.partition {
            Some(p) => parse_partition(p)?,
            None => default_partition(kind),
        };
        Ok(Point { model, grid: check_grid(kind, self.grid, self.grid)?, partition })
    }
}

fn labels(p: &SubsystemPartition) -> [&'static str; 2] {
    [p.label(Subsystem::A), p.label(Subsystem::B)]
}

fn print_report(out: &mut impl Write, r: &ChernReport) -> io::Result<()> {
    writeln!(out, "chern_flux      {}", r.flux_form)?;
    writeln!(out, "chern_projector {:.6}", r.projector_form)?;
    writeln!(out, "chern_boundary  {:.6}", r.boundary.chern())?;
    writeln!(out, "boundary_links  {:.6}", r.berry_boundary_form)?;
    writeln!(out, "agreement       {}", if r.agreement { "yes" } else { "no" })
}

fn report_for(bands: &BandField) -> Result<ChernReport, CliError> {
    Ok(chern_report(&FrameField::from_bands(bands, 2)?)?)
}

fn cmd_chern(args: &PointArgs, out: &mut impl Write) -> Result<(), CliError> {
    let point = args.resolve()?;
    let bands = BandField::compute(&point.model, point.grid);
    let io = |e| CliError::Io { path: "<stdout>".into(), source: e };
    writeln!(out, "model           {}", point.model.kind()).map_err(io)?;
    writeln!(out, "grid            {}x{}", point.grid.nx(), point.grid.ny()).map_err(io)?;
    writeln!(out, "spectral_gap    {:.6}", spectral_gap(&point.model, point.grid)).map_err(io)?;
    let report = report_for(&bands)?;
    print_report(out, &report).map_err(io)?;

    let [fa, fb] = svector_fields(&bands, &point.partition, path_for(point.model.kind()))?;
    let [la, lb] = labels(&point.partition);
    let wa = winding_number(&fa)?;
    let wb = winding_number(&fb)?;
    writeln!(out, "nu_{la:<12} {} (residual {:.2e})", wa.value, wa.residual).map_err(io)?;
    writeln!(out, "nu_{lb:<12} {} (residual {:.2e})", wb.value, wb.residual).map_err(io)?;
    writeln!(out, "nu_a+nu_b       {}", wa.value + wb.value).map_err(io)?;
    if point.partition.kind() == PartitionKind::Spin {
        writeln!(out, "nu_s            {}", spin_chern(&wa, &wb)?).map_err(io)?;
    } else {
        for w in [&wa, &wb] {
            if !w.is_reliable() {
                return Err(topoinv_bz::Error::Unreliable { residual: w.residual }.into());
            }
        }
    }
    Ok(())
}

fn cmd_validate(args: &PointArgs, out: &mut impl Write) -> Result<(), CliError> {
    let point = args.resolve()?;
    let bands = BandField::compute(&point.model, point.grid);
    let report = report_for(&bands)?;
    let io = |e| CliError::Io { path: "<stdout>".into(), source: e };
    print_report(out, &report).map_err(io)?;
    if !report.agreement {
        let worst = (report.projector_form - report.flux_form as f64)
            .abs()
            .max((report.berry_boundary_form - report.flux_form as f64).abs());
        return Err(topoinv_bz::Error::Unreliable { residual: worst }.into());
    }
    Ok(())
}

fn open_output(path: &Option<PathBuf>) -> Result<Box<dyn Write>, CliError> {
    match path {
        None => Ok(Box::new(BufWriter::new(io::stdout().lock()))),
        Some(p) => {
            let f = File::create(p).map_err(|source| CliError::Io { path: p.clone(), source })?;
            Ok(Box::new(BufWriter::new(f)))
        }
    }
}

fn io_at(path: &Option<PathBuf>) -> impl Fn(io::Error) -> CliError + '_ {
    move |source| CliError::Io { path: path.clone().unwrap_or_else(|| "<stdout>".into()), source }
}

fn cmd_svector(args: &FieldArgs) -> Result<(), CliError> {
    let point = args.point.resolve()?;
    let bands = BandField::compute(&point.model, point.grid);
    let [fa, fb] = svector_fields(&bands, &point.partition, path_for(point.model.kind()))?;
    let field = match args.subsystem {
        Which::A => fa,
        Which::B => fb,
    };
    let mut out = open_output(&args.output)?;
    let io = io_at(&args.output);
    writeln!(out, "j,k,px,py,sx,sy,sz,norm,occupation").map_err(&io)?;
    for (idx, s) in field.raw().iter().enumerate() {
        let l = point.grid.loc(idx);
        let p = point.grid.point_at(idx);
        let cols = [p.px(), p.py(), s.x, s.y, s.z, field.norms()[idx], field.occupation()[idx]];
        let cols: Vec<String> = cols.into_iter().map(format_float).collect();
        writeln!(out, "{},{},{}", l.j, l.k, cols.join(",")).map_err(&io)?;
    }
    out.flush().map_err(&io)
}

fn cmd_entspec(args: &FieldArgs) -> Result<(), CliError> {
    let point = args.point.resolve()?;
    let bands = BandField::compute(&point.model, point.grid);
    let path = path_for(point.model.kind());
    let [fa, fb] = svector_fields(&bands, &point.partition, path)?;
    let field = match args.subsystem {
        Which::A => fa,
        Which::B => fb,
    };
    let ent = EntanglementField::new(&field, path)?;
    let mut out = open_output(&args.output)?;
    let io = io_at(&args.output);
    writeln!(out, "j,k,px,py,lambda_plus,lambda_minus,eps_plus,eps_minus").map_err(&io)?;
    for (idx, l) in ent.levels().iter().enumerate() {
        let loc = point.grid.loc(idx);
        let p = point.grid.point_at(idx);
        let cols = [p.px(), p.py(), l.lambda_plus, l.lambda_minus, l.eps_plus, l.eps_minus];
        let cols: Vec<String> = cols.into_iter().map(format_float).collect();
        writeln!(out, "{},{},{}", loc.j, loc.k, cols.join(",")).map_err(&io)?;
    }
    out.flush().map_err(&io)?;
    eprintln!("ent_gap_insulator {}", format_float(ent.gap_insulator()));
    eprintln!("ent_gap_sc {}", format_float(ent.gap_sc()));
    Ok(())
}

fn cmd_sweep(args: &SweepArgs) -> Result<(), CliError> {
    let config = SweepConfig::from_file(&args.config)?;
    let quantities: Vec<Quantity> = args.heatmaps.iter().map(|q| q.parse()).collect::<Result<_, _>>()?;
    for q in &quantities {
        if !config.outputs.contains(q) {
            return Err(CliError::Config(format!("heatmap quantity '{q}' is not among the configured outputs")));
        }
    }
    let pd = run_sweep(&config)?;
    export_csv(&pd, &args.output)?;
    for q in quantities {
        export_heatmap(&pd, q, &args.heatmap_dir.join(format!("{q}.ppm")))?;
    }
    let failed = pd.cells.iter().filter(|c| c.failure.is_some()).count();
    eprintln!("{} cells, {failed} with failures", pd.cells.len());
    Ok(())
}

fn run(cli: Cli) -> Result<(), CliError> {
    let threads = thread_count()?;
    // a second call in the same process keeps the first pool
    let _ = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global();
    let stdout = io::stdout();
    match &cli.command {
        Command::Chern(a) => cmd_chern(a, &mut stdout.lock()),
        Command::Validate(a) => cmd_validate(a, &mut stdout.lock()),
        Command::Svector(a) => cmd_svector(a),
        Command::Entspec(a) => cmd_entspec(a),
        Command::Sweep(a) => cmd_sweep(a),
    }
}

/// Runs the command line and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
        }
    };
    match run(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
