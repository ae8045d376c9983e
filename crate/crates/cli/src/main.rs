mod output;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use fermion_entanglement::bcs::{critical_temperature, self_consistent_concurrence, bcs_thermal_concurrence, BcsPoint};
use fermion_entanglement::eta::{eta_concurrence, odlro_correlator, EtaNumberState};
use fermion_entanglement::figures::{self, Fig2Options, Fig3Options, Fig4Options, Fig5Options};
use fermion_entanglement::free_fermion::{
    eigenstate_correlator, eigenstate_concurrence, eigenstate_energy, ground_state_concurrence_infinite,
    ground_state_correlator_infinite, thermal_concurrence, thermal_correlators, threshold_temperature,
    EigenstateSpec, ModelParams, THRESHOLD_RESOLUTION,
};
use fermion_entanglement::verify::{run_checks, Suite};

use output::{Format, Records, Value};

const EXIT_FLAGS: u8 = 2;
const EXIT_DOMAIN: u8 = 3;
const EXIT_VERIFY: u8 = 4;
const EXIT_IO: u8 = 5;

/// Pairwise entanglement of fermionic lattice models.
#[derive(Parser, Debug)]
#[command(name = "fermcon", version)]
struct Cli {
    /// Write to this file instead of standard output
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Output format (verify prints plain text unless json is requested)
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Nearest-neighbour concurrence of a momentum eigenstate on a ring
    Eigenstate(EigenstateArgs),
    /// Ground-state concurrence on the infinite lattice at filling n
    Ground {
        #[arg(long)]
        n: f64,
    },
    /// Thermal nearest-neighbour concurrence, or its threshold temperature
    Thermal(ThermalArgs),
    /// Concurrence of the BCS pair state
    Bcs(BcsArgs),
    /// η-pairing number state: pair correlator and concurrence
    Eta {
        #[arg(long = "L")]
        sites: usize,
        #[arg(long = "N")]
        pairs: usize,
    },
    /// Data behind a figure (1-5) or table1
    Figure(FigureArgs),
    /// Compare closed forms with the Fock-space oracle
    Verify {
        /// all, eigenstate, thermal, eta, bcs or operators
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long = "max-L", default_value_t = 6)]
        max_sites: usize,
    },
}

#[derive(Args, Debug)]
struct EigenstateArgs {
    #[arg(long = "L")]
    sites: usize,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    t: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    mu: f64,
    /// Occupied modes k in 1..=L, comma separated
    #[arg(long, value_delimiter = ',', conflicts_with = "particles", required_unless_present = "particles")]
    modes: Vec<usize>,
    /// Fill the N lowest modes instead
    #[arg(long = "N")]
    particles: Option<usize>,
}

#[derive(Args, Debug)]
struct ThermalArgs {
    #[arg(long = "L", default_value_t = 2)]
    sites: usize,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    t: f64,
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    mu: f64,
    #[arg(long = "T", required_unless_present = "threshold")]
    temperature: Option<f64>,
    /// Locate the temperature where the concurrence vanishes
    #[arg(long)]
    threshold: bool,
    #[arg(long = "T-lo", default_value_t = 0.01)]
    t_lo: f64,
    #[arg(long = "T-hi", default_value_t = 5.0)]
    t_hi: f64,
}

#[derive(Args, Debug)]
struct BcsArgs {
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    epsilon: f64,
    #[arg(long = "T")]
    temperature: f64,
    /// Use this |Δ| instead of the self-consistent gap
    #[arg(long)]
    delta: Option<f64>,
}

#[derive(Args, Debug)]
struct FigureArgs {
    /// 1, 2, 3, 4, 5 or table1
    #[arg(long)]
    id: String,
    /// Grid intervals
    #[arg(long)]
    steps: Option<usize>,
    /// Intervals of the mean-number grid (figure 2)
    #[arg(long = "n-steps")]
    n_steps: Option<usize>,
    #[arg(long = "T-max")]
    t_max: Option<f64>,
    #[arg(long = "L")]
    sites: Option<usize>,
    #[arg(long, allow_negative_numbers = true)]
    t: Option<f64>,
    /// Chemical potentials (figure 3), comma separated
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true)]
    mu: Vec<f64>,
    #[arg(long, allow_negative_numbers = true)]
    epsilon: Option<f64>,
    #[arg(long = "delta-max")]
    delta_max: Option<f64>,
    /// Temperature for table1
    #[arg(long = "T")]
    temperature: Option<f64>,
}

enum Failure {
    Domain(String),
    Verification(String),
}

impl From<fermion_entanglement::Error> for Failure {
    fn from(e: fermion_entanglement::Error) -> Self {
        Failure::Domain(e.to_string())
    }
}

type Outcome = Result<String, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            let rendered = e.to_string();
            eprintln!("{}", rendered.lines().next().unwrap_or("error: invalid arguments"));
            return ExitCode::from(EXIT_FLAGS);
        }
    };
    let (text, failure) = match execute(&cli) {
        Ok(text) => (text, None),
        // the report is still written when checks fail
        Err(Failure::Verification(text)) => (text, Some(EXIT_VERIFY)),
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(EXIT_DOMAIN);
        }
    };
    if let Err(msg) = emit(cli.output.as_ref(), &text) {
        eprintln!("error: {msg}");
        return ExitCode::from(EXIT_IO);
    }
    match failure {
        Some(code) => {
            eprintln!("error: verification failed");
            ExitCode::from(code)
        }
        None => ExitCode::SUCCESS,
    }
}

fn emit(path: Option<&PathBuf>, text: &str) -> Result<(), String> {
    match path {
        Some(path) => std::fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| format!("cannot write to standard output: {e}"))
        }
    }
}

fn execute(cli: &Cli) -> Outcome {
    let format = cli.format.unwrap_or(Format::Csv);
    let records = match &cli.command {
        Command::Eigenstate(args) => eigenstate(args)?,
        Command::Ground { n } => {
            let mut r = Records::new(&["n", "z", "C"]);
            r.push(vec![
                Value::Num(*n),
                Value::Num(ground_state_correlator_infinite(*n)?),
                Value::Num(ground_state_concurrence_infinite(*n)?.value()),
            ]);
            r
        }
        Command::Thermal(args) => thermal(args)?,
        Command::Bcs(args) => bcs(args)?,
        Command::Eta { sites, pairs } => {
            let state = EtaNumberState::new(*sites, *pairs)?;
            let mut r = Records::new(&["L", "N", "odlro", "concurrence"]);
            r.push(vec![
                Value::Int(*sites as i64),
                Value::Int(*pairs as i64),
                Value::Num(odlro_correlator(&state)?),
                Value::Num(eta_concurrence(&state)?.value()),
            ]);
            r
        }
        Command::Figure(args) => Records::from_table(&figure(args)?),
        Command::Verify { suite, max_sites } => return verify(suite, *max_sites, cli.format),
    };
    Ok(records.render(format))
}

fn eigenstate(args: &EigenstateArgs) -> Result<Records, Failure> {
    let params = ModelParams::new(args.sites, args.t, args.mu, f64::INFINITY)?;
    let spec = match args.particles {
        Some(n) => EigenstateSpec::ground_state(&params, n)?,
        None => EigenstateSpec::new(args.sites, &args.modes)?,
    };
    let corr = eigenstate_correlator(&params, &spec)?;
    let rdm = corr.rdm()?;
    let mut r = Records::new(&["L", "N", "n", "z_abs", "u", "v", "C", "energy"]);
    r.push(vec![
        Value::Int(args.sites as i64),
        Value::Int(spec.particles() as i64),
        Value::Num(spec.filling()),
        Value::Num(corr.s.norm()),
        Value::Num(rdm.u()),
        Value::Num(rdm.v()),
        Value::Num(eigenstate_concurrence(&params, &spec)?.value()),
        Value::Num(eigenstate_energy(&params, &spec)),
    ]);
    Ok(r)
}

fn thermal(args: &ThermalArgs) -> Result<Records, Failure> {
    if args.threshold {
        let params = ModelParams::at_temperature(args.sites, args.t, args.mu, args.t_lo)?;
        let t_star = threshold_temperature(&params, args.t_lo, args.t_hi, THRESHOLD_RESOLUTION)?;
        let mut r = Records::new(&["L", "t", "mu", "T_threshold"]);
        r.push(vec![Value::Int(args.sites as i64), Value::Num(args.t), Value::Num(args.mu), Value::Num(t_star)]);
        return Ok(r);
    }
    let temperature = args.temperature.expect("clap requires --T without --threshold");
    let params = ModelParams::at_temperature(args.sites, args.t, args.mu, temperature)?;
    let corr = thermal_correlators(&params);
    let mut r = Records::new(&["L", "t", "mu", "T", "N_mean", "z_abs", "C"]);
    r.push(vec![
        Value::Int(args.sites as i64),
        Value::Num(args.t),
        Value::Num(args.mu),
        Value::Num(temperature),
        Value::Num(corr.n_mean * args.sites as f64),
        Value::Num(corr.s.norm()),
        Value::Num(thermal_concurrence(&params)?.value()),
    ]);
    Ok(r)
}

fn bcs(args: &BcsArgs) -> Result<Records, Failure> {
    let (delta, c) = match args.delta {
        Some(delta) => {
            let point = BcsPoint::new(args.epsilon, delta, 0.0, 1.0 / args.temperature)?;
            (delta, bcs_thermal_concurrence(&point))
        }
        None => self_consistent_concurrence(args.epsilon, args.temperature)?,
    };
    let mut r = Records::new(&["epsilon", "T", "Delta", "C", "T_c"]);
    r.push(vec![
        Value::Num(args.epsilon),
        Value::Num(args.temperature),
        Value::Num(delta),
        Value::Num(c.value()),
        Value::Num(critical_temperature(args.epsilon)),
    ]);
    Ok(r)
}

fn figure(args: &FigureArgs) -> Result<figures::Table, Failure> {
    let table = match args.id.as_str() {
        "1" | "fig1" => figures::fig1(args.steps.unwrap_or(200))?,
        "2" | "fig2" => {
            let d = Fig2Options::default();
            figures::fig2(&Fig2Options {
                hopping: args.t.unwrap_or(d.hopping),
                t_max: args.t_max.unwrap_or(d.t_max),
                steps: args.steps.unwrap_or(d.steps),
                n_steps: args.n_steps.unwrap_or(d.n_steps),
            })?
        }
        "3" | "fig3" => {
            let d = Fig3Options::default();
            figures::fig3(&Fig3Options {
                sites: args.sites.unwrap_or(d.sites),
                hopping: args.t.unwrap_or(d.hopping),
                mus: if args.mu.is_empty() { d.mus } else { args.mu.clone() },
                t_max: args.t_max.unwrap_or(d.t_max),
                steps: args.steps.unwrap_or(d.steps),
            })?
        }
        "4" | "fig4" => {
            let d = Fig4Options::default();
            figures::fig4(&Fig4Options {
                epsilon: args.epsilon.unwrap_or(d.epsilon),
                t_max: args.t_max.unwrap_or(d.t_max),
                steps: args.steps.unwrap_or(d.steps),
            })?
        }
        "5" | "fig5" => {
            let d = Fig5Options::default();
            figures::fig5(&Fig5Options {
                epsilon: args.epsilon.unwrap_or(d.epsilon),
                delta_max: args.delta_max.or(d.delta_max),
                steps: args.steps.unwrap_or(d.steps),
            })?
        }
        "table1" => figures::table1(args.t.unwrap_or(1.0), args.temperature.unwrap_or(1.0))?,
        other => return Err(Failure::Domain(format!("unknown figure id '{other}'"))),
    };
    Ok(table)
}

fn verify(suite: &str, max_sites: usize, format: Option<Format>) -> Outcome {
    let suite: Suite = suite.parse()?;
    let results = run_checks(suite, max_sites)?;
    let passed = results.iter().filter(|r| r.passed()).count();
    let text = if format == Some(Format::Json) {
        let mut out = String::new();
        for r in &results {
            out.push_str(&format!(
                "{{\"name\":\"{}\",\"passed\":{},\"checked\":{},\"max_dev\":{},\"tol\":{}}}\n",
                r.name,
                r.passed(),
                r.checked,
                json_number(r.max_deviation),
                json_number(r.tolerance)
            ));
        }
        out.push_str(&format!("{{\"passed\":{passed},\"total\":{}}}\n", results.len()));
        out
    } else {
        let mut out: String = results.iter().map(|r| format!("{r}\n")).collect();
        out.push_str(&format!("passed {passed}/{}\n", results.len()));
        out
    };
    if passed == results.len() {
        Ok(text)
    } else {
        Err(Failure::Verification(text))
    }
}

fn json_number(x: f64) -> String {
    if x.is_finite() {
        output::format_number(x)
    } else {
        "null".into()
    }
}
