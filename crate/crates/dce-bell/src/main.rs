//! Command-line interface: point evaluation, sweeps, contour extraction,
//! figure presets and the oracle self-check.
//!
//! Exit codes: 0 success, 2 configuration/validation error, 3 numerical
//! error (quadrature non-convergence, bracket failure), 4 I/O error.
//! Diagnostics go to stderr; data only to the chosen output.

use clap::{Args, Parser, Subcommand};
use dce_bell::error::Error;
use dce_bell::gaussian::{
    apply_loss_minus, apply_loss_minus_via_ancilla, symplectic_eigenvalues,
};
use dce_bell::output::{
    contour_table, format_float, sweep_table, warnings_str, write_csv, write_table,
    Field, OutputFormat, Table,
};
use dce_bell::pseudospin::{
    correlator_xx, correlator_xx_arcsin, correlator_xx_marginal_quadrature,
    correlator_xx_quadrature, correlator_zz, correlator_zz_quadrature, DEFAULT_QUAD_TOL,
};
use dce_bell::sweep::{
    contour_b2, figure_preset, grid_sweep, Axis, AxisParam, FigureId, SweepSpec,
    DEFAULT_CONTOUR_TOL,
};
use dce_bell::units::{to_angular_frequency, to_kelvin, FrequencyUnit, TemperatureUnit};
use dce_bell::{bell_with_loss, derive_mode_pair, CircuitParams};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::{json, Value};
use std::collections::HashMap;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "dce-bell", version, about = "Bell-CHSH violation by DCE photon pairs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate the Bell pipeline at a single parameter point.
    Point {
        #[command(flatten)]
        params: ParamArgs,
        #[command(flatten)]
        io: IoArgs,
    },
    /// Dense grid sweep over one or two axes.
    Sweep {
        #[command(flatten)]
        params: ParamArgs,
        /// Axis spec name:min:max:count (name in epsilon, temperature,
        /// detuning_frac, eta; temperature in mK)
        #[arg(long)]
        axis1: String,
        #[arg(long)]
        axis2: Option<String>,
        #[command(flatten)]
        io: IoArgs,
    },
    /// Extract the B = 2 contour over a two-axis window.
    Contour {
        #[command(flatten)]
        params: ParamArgs,
        #[arg(long)]
        axis1: String,
        #[arg(long)]
        axis2: String,
        /// Contour tolerance in b
        #[arg(long)]
        tol_contour: Option<f64>,
        #[command(flatten)]
        io: IoArgs,
    },
    /// Run a preset sweep reproducing one of the reference figures.
    Figure {
        /// fig1..fig7
        fig_id: String,
        #[command(flatten)]
        io: IoArgs,
    },
    /// Cross-check closed-form correlators and the loss channel against
    /// their quadrature/construction oracles.
    OracleCheck {
        /// Number of randomized states
        #[arg(long, default_value_t = 100)]
        draws: usize,
        /// Relative tolerance for the xx comparison
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
        /// Quadrature tolerance override
        #[arg(long)]
        tol_quad: Option<f64>,
    },
}

/// Circuit parameters in the experiment-friendly units the captions use.
#[derive(Args, Debug, Clone)]
struct ParamArgs {
    /// Drive angular frequency in GHz-angular (value × 1e9 rad/s)
    #[arg(long, conflicts_with = "omega_d_rads")]
    omega_d_ghz: Option<f64>,
    /// Drive angular frequency in rad/s
    #[arg(long)]
    omega_d_rads: Option<f64>,
    /// Drive amplitude ε
    #[arg(long)]
    epsilon: Option<f64>,
    /// Detuning as a fraction of the drive frequency, δω/ωd
    #[arg(long)]
    detuning_frac: Option<f64>,
    /// Temperature in mK
    #[arg(long)]
    temp_mk: Option<f64>,
    /// Speed of light in the waveguide (m/s)
    #[arg(long)]
    v: Option<f64>,
    /// Static effective length in mm
    #[arg(long)]
    l0_eff_mm: Option<f64>,
    /// Transmission efficiency of the loss channel on the minus mode
    #[arg(long)]
    eta: Option<f64>,
    /// Flat key = value config file; command-line flags override it
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
struct IoArgs {
    /// csv or json
    #[arg(long, default_value = "json")]
    format: String,
    /// Output path; stdout when omitted
    #[arg(long)]
    out: Option<PathBuf>,
    /// Relative tolerance for quadrature diagnostics
    #[arg(long)]
    tol_quad: Option<f64>,
}

struct Resolved {
    params: CircuitParams,
    eta: Option<f64>,
    detuning_frac: f64,
}

fn read_config_file(path: &PathBuf) -> Result<HashMap<String, String>, Error> {
    let text = std::fs::read_to_string(path)?;
    let mut map = HashMap::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let (key, value) = line.split_once('=').ok_or_else(|| {
            Error::config(format!(
                "{}:{}: expected 'key = value', got '{raw}'",
                path.display(),
                lineno + 1
            ))
        })?;
        map.insert(key.trim().to_string(), value.trim().to_string());
    }
    Ok(map)
}

fn file_value(map: &HashMap<String, String>, key: &str) -> Result<Option<f64>, Error> {
    match map.get(key) {
        None => Ok(None),
        Some(s) => s
            .parse::<f64>()
            .map(Some)
            .map_err(|_| Error::config(format!("config key '{key}': invalid number '{s}'"))),
    }
}

impl ParamArgs {
    /// Resolve flags > config file > caption defaults into SI parameters.
    fn resolve(&self) -> Result<Resolved, Error> {
        let file = match &self.config {
            Some(path) => read_config_file(path)?,
            None => HashMap::new(),
        };
        let pick = |flag: Option<f64>, key: &str| -> Result<Option<f64>, Error> {
            Ok(flag.or(file_value(&file, key)?))
        };
        let omega_d = match (
            pick(self.omega_d_ghz, "omega-d-ghz")?,
            pick(self.omega_d_rads, "omega-d-rads")?,
        ) {
            (Some(_), Some(_)) => {
                return Err(Error::config("omega-d-ghz and omega-d-rads are mutually exclusive"))
            }
            (Some(ghz), None) => to_angular_frequency(ghz, FrequencyUnit::GhzAngular)?,
            (None, Some(rads)) => to_angular_frequency(rads, FrequencyUnit::RadPerS)?,
            (None, None) => 20.0 * std::f64::consts::PI * 1e9,
        };
        let epsilon = pick(self.epsilon, "epsilon")?.unwrap_or(0.6);
        let detuning_frac = pick(self.detuning_frac, "detuning-frac")?.unwrap_or(0.0);
        let temp_mk = pick(self.temp_mk, "temp-mk")?.unwrap_or(15.0);
        let v = pick(self.v, "v")?.unwrap_or(1.2e8);
        let l0_eff_mm = pick(self.l0_eff_mm, "l0-eff-mm")?.unwrap_or(0.5);
        let eta = pick(self.eta, "eta")?;
        let params = CircuitParams {
            omega_d,
            epsilon,
            delta_omega: detuning_frac * omega_d,
            v,
            l0_eff: l0_eff_mm * 1e-3,
            temperature: to_kelvin(temp_mk, TemperatureUnit::Millikelvin)?,
        };
        params.validate().map_err(|e| Error::config(e.to_string()))?;
        if let Some(eta) = eta {
            if !(0.0..=1.0).contains(&eta) {
                return Err(Error::config(format!("eta must lie in [0, 1], got {eta}")));
            }
        }
        Ok(Resolved { params, eta, detuning_frac })
    }
}

fn params_meta(r: &Resolved) -> Value {
    json!({
        "omega_d_rads": r.params.omega_d,
        "epsilon": r.params.epsilon,
        "delta_omega_rads": r.params.delta_omega,
        "detuning_frac": r.detuning_frac,
        "v_m_per_s": r.params.v,
        "l0_eff_m": r.params.l0_eff,
        "temperature_K": r.params.temperature,
        "eta": r.eta,
    })
}

fn parse_axis(spec: &str) -> Result<Axis, Error> {
    let parts: Vec<&str> = spec.split(':').collect();
    if parts.len() != 4 {
        return Err(Error::config(format!(
            "axis spec must be name:min:max:count, got '{spec}'"
        )));
    }
    let param = AxisParam::parse(parts[0])?;
    let parse_f = |s: &str| {
        s.parse::<f64>()
            .map_err(|_| Error::config(format!("axis spec '{spec}': invalid number '{s}'")))
    };
    let mut min = parse_f(parts[1])?;
    let mut max = parse_f(parts[2])?;
    let count = parts[3]
        .parse::<usize>()
        .map_err(|_| Error::config(format!("axis spec '{spec}': invalid count '{}'", parts[3])))?;
    if param == AxisParam::Temperature {
        // the CLI speaks mK, the engine kelvin
        min *= 1e-3;
        max *= 1e-3;
    }
    Axis::linspace(param, min, max, count)
}

fn parse_format(s: &str) -> Result<OutputFormat, Error> {
    match s {
        "csv" => Ok(OutputFormat::Csv),
        "json" => Ok(OutputFormat::Json),
        other => Err(Error::config(format!("unknown format '{other}' (csv or json)"))),
    }
}

fn open_output(out: &Option<PathBuf>) -> Result<Box<dyn Write>, Error> {
    match out {
        Some(path) => Ok(Box::new(std::fs::File::create(path)?)),
        None => Ok(Box::new(std::io::stdout().lock())),
    }
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Domain(_) | Error::Config(_) => 2,
        Error::Convergence { .. } | Error::Bracket(_) => 3,
        Error::Io(_) | Error::Serialize(_) => 4,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help/version are not errors
            use clap::error::ErrorKind;
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Point { params, io } => cmd_point(&params, &io),
        Command::Sweep { params, axis1, axis2, io } => cmd_sweep(&params, &axis1, axis2.as_deref(), &io),
        Command::Contour { params, axis1, axis2, tol_contour, io } => {
            cmd_contour(&params, &axis1, &axis2, tol_contour, &io)
        }
        Command::Figure { fig_id, io } => cmd_figure(&fig_id, &io),
        Command::OracleCheck { draws, tol, tol_quad } => cmd_oracle_check(draws, tol, tol_quad),
    }
}

fn cmd_point(params: &ParamArgs, io: &IoArgs) -> Result<(), Error> {
    let format = parse_format(&io.format)?;
    let resolved = params.resolve()?;
    let pair = derive_mode_pair(&resolved.params)?;
    let eta = resolved.eta.unwrap_or(1.0);
    let outcome = bell_with_loss(&resolved.params, eta)?;
    let state = apply_loss_minus(
        &dce_bell::output_covariance(&pair),
        eta,
    )?;
    let diag = symplectic_eigenvalues(&state);
    let v_eff = dce_bell::circuit::effective_mirror_velocity(&resolved.params)?;
    let v_eff_scaled = dce_bell::circuit::effective_mirror_velocity_scaled(&resolved.params)?;

    let columns = [
        "omega_plus_rads",
        "omega_minus_rads",
        "n_plus",
        "n_minus",
        "f",
        "v_eff_m_per_s",
        "v_eff_scaled_m_per_s",
        "cm_n",
        "cm_m",
        "cm_r",
        "nu_min",
        "nu_max",
        "xx",
        "zz",
        "theta_b_opt",
        "b_value",
        "violates",
        "warnings",
    ];
    let record = vec![
        Field::Float(pair.omega_plus),
        Field::Float(pair.omega_minus),
        Field::Float(pair.n_plus),
        Field::Float(pair.n_minus),
        Field::Float(pair.f),
        Field::Float(v_eff),
        Field::Float(v_eff_scaled),
        Field::Float(state.n),
        Field::Float(state.m),
        Field::Float(state.r),
        Field::Float(diag.nu_min),
        Field::Float(diag.nu_max),
        Field::Float(outcome.xx),
        Field::Float(outcome.zz),
        Field::Float(outcome.theta_b_opt),
        Field::Float(outcome.b_value),
        Field::Bool(outcome.violates),
        Field::Str(warnings_str(&outcome.warnings)),
    ];
    let table = Table {
        columns: columns.iter().map(|s| s.to_string()).collect(),
        records: vec![record],
    };
    let meta = json!({
        "command": "point",
        "version": dce_bell::VERSION,
        "params": params_meta(&resolved),
    });
    let mut out = open_output(&io.out)?;
    match format {
        OutputFormat::Csv => write_csv(&table, &mut out)?,
        OutputFormat::Json => {
            // a single point reads better as one flat object
            let mut obj = serde_json::Map::new();
            for (col, field) in table.columns.iter().zip(&table.records[0]) {
                let v = match field {
                    Field::Float(x) => json!(x),
                    Field::Bool(b) => json!(b),
                    Field::Int(i) => json!(i),
                    Field::Str(s) => json!(s),
                };
                obj.insert(col.clone(), v);
            }
            let doc = json!({ "meta": meta, "result": Value::Object(obj) });
            writeln!(out, "{}", serde_json::to_string_pretty(&doc)?)?;
        }
    }
    Ok(())
}

fn build_spec(resolved: &Resolved, axis1: &str, axis2: Option<&str>) -> Result<SweepSpec, Error> {
    let axis1 = parse_axis(axis1)?;
    let axis2 = axis2.map(parse_axis).transpose()?;
    let spec = SweepSpec {
        base: resolved.params,
        loss_eta: resolved.eta,
        axis1,
        axis2,
    };
    spec.validate()?;
    Ok(spec)
}

fn sweep_meta(command: &str, resolved: &Resolved, spec: &SweepSpec) -> Value {
    json!({
        "command": command,
        "version": dce_bell::VERSION,
        "params": params_meta(resolved),
        "axis1": { "param": spec.axis1.param.column_name(), "count": spec.axis1.values.len() },
        "axis2": spec.axis2.as_ref().map(|a| json!({
            "param": a.param.column_name(),
            "count": a.values.len(),
        })),
    })
}

fn cmd_sweep(params: &ParamArgs, axis1: &str, axis2: Option<&str>, io: &IoArgs) -> Result<(), Error> {
    let format = parse_format(&io.format)?;
    let resolved = params.resolve()?;
    let spec = build_spec(&resolved, axis1, axis2)?;
    let rows = grid_sweep(&spec)?;
    let table = sweep_table(&spec, &rows);
    let meta = sweep_meta("sweep", &resolved, &spec);
    let mut out = open_output(&io.out)?;
    write_table(&table, format, meta, &mut out)
}

fn cmd_contour(
    params: &ParamArgs,
    axis1: &str,
    axis2: &str,
    tol_contour: Option<f64>,
    io: &IoArgs,
) -> Result<(), Error> {
    let format = parse_format(&io.format)?;
    let resolved = params.resolve()?;
    let spec = build_spec(&resolved, axis1, Some(axis2))?;
    let tol = tol_contour.unwrap_or(DEFAULT_CONTOUR_TOL);
    let contour = contour_b2(&spec, tol)?;
    let table = contour_table(&spec, &contour);
    let mut meta = sweep_meta("contour", &resolved, &spec);
    meta["contour_tol"] = json!(tol);
    meta["level"] = json!(contour.level);
    let mut out = open_output(&io.out)?;
    write_table(&table, format, meta, &mut out)
}

fn cmd_figure(fig_id: &str, io: &IoArgs) -> Result<(), Error> {
    let format = parse_format(&io.format)?;
    let fig = FigureId::parse(fig_id)?;
    let spec = figure_preset(fig);
    let rows = grid_sweep(&spec)?;
    let table = sweep_table(&spec, &rows);
    let resolved = Resolved {
        params: spec.base,
        eta: spec.loss_eta,
        detuning_frac: spec.base.delta_omega / spec.base.omega_d,
    };
    let mut meta = sweep_meta("figure", &resolved, &spec);
    meta["preset"] = json!(fig.name());
    let mut out = open_output(&io.out)?;
    write_table(&table, format, meta, &mut out)
}

fn cmd_oracle_check(draws: usize, tol: f64, tol_quad: Option<f64>) -> Result<(), Error> {
    if draws == 0 {
        return Err(Error::config("draws must be >= 1"));
    }
    if !(tol > 0.0) {
        return Err(Error::config(format!("tol must be > 0, got {tol}")));
    }
    let quad_tol = tol_quad.unwrap_or(DEFAULT_QUAD_TOL);
    let mut rng = StdRng::seed_from_u64(0xdce_be11);
    let mut max_rel_dev_xx: f64 = 0.0;
    let mut max_rel_dev_xx_arcsin: f64 = 0.0;
    let mut max_abs_dev_zz: f64 = 0.0;
    let mut max_abs_dev_loss: f64 = 0.0;
    for _ in 0..draws {
        let n = 1.0 + rng.gen::<f64>();
        let m = 1.0 + rng.gen::<f64>();
        let rho: f64 = 0.95 * rng.gen::<f64>();
        let state = dce_bell::StandardForm::new(n, m, rho * (n * m).sqrt());

        let xx_c = correlator_xx(&state)?;
        let xx_q = correlator_xx_quadrature(&state, quad_tol)?;
        max_rel_dev_xx = max_rel_dev_xx.max((xx_q - xx_c).abs() / xx_c.abs().max(1.0));

        let xa_c = correlator_xx_arcsin(&state)?;
        let xa_q = correlator_xx_marginal_quadrature(&state, quad_tol)?;
        max_rel_dev_xx_arcsin =
            max_rel_dev_xx_arcsin.max((xa_q - xa_c).abs() / xa_c.abs().max(1.0));

        let zz_c = correlator_zz(&state)?;
        let zz_q = correlator_zz_quadrature(&state)?;
        max_abs_dev_zz = max_abs_dev_zz.max((zz_q - zz_c).abs());

        let eta: f64 = rng.gen::<f64>();
        let closed = apply_loss_minus(&state, eta)?;
        let built = apply_loss_minus_via_ancilla(&state, eta)?;
        for (a, b) in [(closed.n, built.n), (closed.m, built.m), (closed.r, built.r)] {
            max_abs_dev_loss = max_abs_dev_loss.max((a - b).abs());
        }
    }
    println!(
        "draws={draws} max_rel_dev_xx={} max_rel_dev_xx_arcsin={} max_abs_dev_zz={} max_abs_dev_loss={}",
        format_float(max_rel_dev_xx),
        format_float(max_rel_dev_xx_arcsin),
        format_float(max_abs_dev_zz),
        format_float(max_abs_dev_loss),
    );
    let ok = max_rel_dev_xx <= tol
        && max_rel_dev_xx_arcsin <= tol
        && max_abs_dev_zz <= 1e-12
        && max_abs_dev_loss <= 1e-12;
    if ok {
        Ok(())
    } else {
        Err(Error::Convergence { last_estimate: max_rel_dev_xx })
    }
}
