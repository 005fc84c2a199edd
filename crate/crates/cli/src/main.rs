use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;

use econkit::ardl::{coefficient_table, fit_ardl, ArdlSpec};
use econkit::factor::{loadings_table, pca_table, pca_with, proxies, standardize, SelectionRule};
use econkit::format::{sig_str, text_table};
use econkit::ingest::{align_panel, read_series, validate_panel, AlignedPanel, DatasetConfig, SourceRole};
use econkit::numerics::DenseMatrix;
use econkit::pipeline::{emit_report, run_pipeline, simulate_dataset, PipelineConfig, ReportFormat, Scenario};
use econkit::series::{describe_values, first_difference, log_returns};
use econkit::stattests::{
    adf_table, adf_test, correlation_matrix, correlation_table, granger_table, granger_test_values, johansen_table,
    johansen_test, multicollinearity_screen, white_table, white_test, DeterministicSpec, JohansenDeterministic,
    LagSelection,
};
use econkit::theory::{
    capm_beta, capm_expected_return, ia_inflation, perpetuity_value, present_value, stock_price_fx_sensitivity,
    CapmInputs, CashflowSchedule, IaCurveInputs, IsLmIaPartials,
};
use econkit::volatility::{garch_fit, garch_volatility, monthly_volatility};
use econkit::{Error, ErrorClass, Result, TradingSeries};

const DEFAULT_SEED: u64 = 20_240_401;

#[derive(Parser)]
#[command(name = "econkit", version, about = "Stock, bond and exchange-rate time-series econometrics")]
struct Cli {
    /// Configuration file: a pipeline config for `pipeline`, a dataset
    /// description for `ingest`.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output file, or directory for `pipeline` and `simulate`.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// text, csv or json.
    #[arg(long, global = true, default_value = "text", value_parser = parse_format)]
    format: ReportFormat,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

fn parse_format(s: &str) -> std::result::Result<ReportFormat, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn list(s: &str) -> Vec<String> {
    s.split(',').map(|x| x.trim().to_string()).filter(|x| !x.is_empty()).collect()
}

#[derive(Subcommand)]
enum Command {
    /// Read and align the dataset named by --config; --out writes the panel CSV.
    Ingest,
    /// Descriptive statistics of panel columns.
    Describe {
        #[arg(long)]
        panel: PathBuf,
        /// Comma-separated columns; all when omitted.
        #[arg(long)]
        columns: Option<String>,
    },
    /// Daily log returns of a price column.
    Returns {
        #[arg(long)]
        panel: PathBuf,
        #[arg(long, default_value = "YIELD-SOURCE-PRICE")]
        column: String,
    },
    /// Within-month standard deviation of daily log returns.
    Mvol {
        #[arg(long)]
        panel: PathBuf,
        #[arg(long, default_value = "YIELD-SOURCE-PRICE")]
        column: String,
    },
    /// GARCH(1,1) fit on the log returns of a price column.
    Garch {
        #[arg(long)]
        panel: PathBuf,
        #[arg(long, default_value = "YIELD-SOURCE-PRICE")]
        column: String,
        /// The column already holds returns.
        #[arg(long)]
        returns: bool,
    },
    /// Augmented Dickey-Fuller unit-root test.
    Adf {
        #[arg(long)]
        panel: PathBuf,
        #[arg(long)]
        column: String,
        /// n, c or ct.
        #[arg(long, default_value = "ct")]
        spec: String,
        /// Fixed augmentation lags; AIC selection when omitted.
        #[arg(long)]
        lags: Option<usize>,
        /// Test the first difference as well.
        #[arg(long)]
        difference: bool,
    },
    /// Correlation matrix and multicollinearity screen.
    Corr {
        #[arg(long)]
        panel: PathBuf,
        #[arg(long)]
        columns: String,
        #[arg(long, default_value_t = 0.6)]
        threshold: f64,
    },
    /// Principal components of standardized columns.
    Pca {
        #[arg(long)]
        panel: PathBuf,
        #[arg(long)]
        columns: String,
        /// kaiser, cumulative or both.
        #[arg(long, default_value = "both")]
        rule: String,
        #[arg(long, default_value_t = 0.70)]
        tau: f64,
    },
    /// OLS / ARDL regression.
    Regress {
        #[arg(long)]
        panel: PathBuf,
        #[arg(long)]
        dependent: String,
        #[arg(long)]
        regressors: String,
        #[arg(long, default_value_t = 0)]
        endog_lags: usize,
        #[arg(long, default_value_t = 0)]
        exog_lags: usize,
        #[arg(long)]
        trend: bool,
    },
    /// Johansen cointegration rank test.
    Johansen {
        #[arg(long)]
        panel: PathBuf,
        #[arg(long)]
        columns: String,
        #[arg(long, default_value_t = 1)]
        var_lags: usize,
        /// none or constant.
        #[arg(long, default_value = "constant")]
        det: String,
    },
    /// Granger causality F test.
    Granger {
        #[arg(long)]
        panel: PathBuf,
        #[arg(long)]
        cause: String,
        #[arg(long)]
        effect: String,
        #[arg(long, default_value_t = 1)]
        lags: usize,
    },
    /// White heteroskedasticity test on the residuals of an OLS fit.
    White {
        #[arg(long)]
        panel: PathBuf,
        #[arg(long)]
        dependent: String,
        #[arg(long)]
        regressors: String,
        #[arg(long)]
        no_cross_terms: bool,
    },
    /// Closed-form valuation and macro calculators.
    Theory {
        #[command(subcommand)]
        calc: TheoryCommand,
    },
    /// Run the whole analysis described by --config.
    Pipeline,
    /// Write a synthetic dataset and its description into --out.
    Simulate {
        /// cointegrated, independent or paper-like.
        #[arg(long, default_value = "paper-like")]
        scenario: String,
        #[arg(long, default_value_t = 3000)]
        n: usize,
    },
}

#[derive(Subcommand)]
enum TheoryCommand {
    /// Present value of dividends plus a terminal value.
    Pv {
        #[arg(long)]
        dividends: String,
        #[arg(long, default_value_t = 0.0)]
        terminal: f64,
        #[arg(long)]
        rate: f64,
    },
    /// Constant perpetuity D / r.
    Perpetuity {
        #[arg(long)]
        dividend: f64,
        #[arg(long)]
        rate: f64,
    },
    /// CAPM beta and expected return.
    Capm {
        #[arg(long)]
        sigma_i: f64,
        #[arg(long)]
        sigma_m: f64,
        #[arg(long)]
        rho: f64,
        #[arg(long)]
        risk_free: f64,
        #[arg(long)]
        market: f64,
    },
    /// Inflation from the inflation-adjustment curve.
    Ia {
        #[arg(long)]
        core: f64,
        #[arg(long)]
        lambda: f64,
        #[arg(long)]
        output: f64,
        #[arg(long)]
        natural: f64,
    },
    /// dS/dq in the IS-LM-IA system.
    FxSensitivity {
        #[arg(long)]
        phi_s: f64,
        #[arg(long)]
        phi_y: f64,
        #[arg(long)]
        phi_q: f64,
        #[arg(long)]
        l_s: f64,
        #[arg(long)]
        l_y: f64,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e.class() {
                ErrorClass::Usage => 1,
                ErrorClass::Data => 2,
                ErrorClass::Numerical => 3,
            })
        }
    }
}

/// Writes to --out when given, otherwise to stdout.
fn output(cli: &Cli, text: &str) -> Result<()> {
    match &cli.out {
        Some(path) => std::fs::write(path, text).map_err(|e| Error::Io {
            path: path.display().to_string(),
            source: e,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit<T: Serialize>(cli: &Cli, value: &T, text: impl FnOnce() -> String) -> Result<()> {
    match cli.format {
        ReportFormat::Text => output(cli, &text()),
        ReportFormat::Json => output(cli, &(serde_json::to_string_pretty(value)? + "\n")),
        ReportFormat::Csv => Err(Error::Config(
            "csv output is available for series commands and the pipeline; use text or json".into(),
        )),
    }
}

fn series_csv(s: &TradingSeries, header: &str) -> String {
    let mut out = format!("date,{header}\n");
    for (d, v) in s.dates().iter().zip(s.values()) {
        out.push_str(&format!("{d},{}\n", sig_str(*v)));
    }
    out
}

fn emit_series(cli: &Cli, s: &TradingSeries, header: &str, text: impl FnOnce() -> String) -> Result<()> {
    match cli.format {
        ReportFormat::Csv => output(cli, &series_csv(s, header)),
        _ => emit(cli, s, text),
    }
}

fn require_config(cli: &Cli) -> Result<&Path> {
    cli.config
        .as_deref()
        .ok_or_else(|| Error::Config("this command needs --config".into()))
}

fn refs(v: &[String]) -> Vec<&str> {
    v.iter().map(String::as_str).collect()
}

fn returns_of(panel: &AlignedPanel, column: &str) -> Result<TradingSeries> {
    log_returns(&panel.series(column)?)
}

fn run(cli: &Cli) -> Result<()> {
    match &cli.command {
        Command::Ingest => {
            let ds = DatasetConfig::load(require_config(cli)?)?;
            let mut raw = Vec::new();
            for role in SourceRole::ALL {
                raw.push((role.as_str().to_string(), read_series(ds.spec(role)?)?));
            }
            let panel = align_panel(&raw, &ds.align_options())?;
            let report = validate_panel(&panel);
            if let Some(path) = &cli.out {
                panel.write_csv(path)?;
            }
            let mut text = format!(
                "{} aligned observations, {} to {}\n",
                panel.len(),
                panel.dates()[0],
                panel.dates()[panel.len() - 1]
            );
            for issue in &report.issues {
                text.push_str(&format!("warning: {}\n", issue.message));
            }
            match cli.format {
                ReportFormat::Json => println!("{}", serde_json::to_string_pretty(&report)?),
                _ => print!("{text}"),
            }
            Ok(())
        }
        Command::Describe { panel, columns } => {
            let p = AlignedPanel::read_csv(panel)?;
            let cols = match columns {
                Some(c) => list(c),
                None => p.roles().map(String::from).collect(),
            };
            let mut rows = Vec::new();
            for c in &cols {
                rows.push((c.clone(), describe_values(p.column(c)?)?));
            }
            emit(cli, &rows, || {
                let body: Vec<Vec<String>> = rows
                    .iter()
                    .map(|(c, s)| {
                        let mut r = vec![c.clone(), s.n.to_string()];
                        r.extend([s.mean, s.sd, s.skewness, s.kurtosis_raw(), s.min, s.max].map(|x| format!("{x:.4}")));
                        r
                    })
                    .collect();
                text_table(&["Variable", "Obs", "Mean", "Std. Dev.", "Skewness", "Kurtosis", "Min", "Max"], &body)
            })
        }
        Command::Returns { panel, column } => {
            let r = returns_of(&AlignedPanel::read_csv(panel)?, column)?;
            emit_series(cli, &r, "YIELD", || series_csv(&r, "YIELD"))
        }
        Command::Mvol { panel, column } => {
            let m = monthly_volatility(&returns_of(&AlignedPanel::read_csv(panel)?, column)?)?;
            let series = m
                .series
                .clone()
                .ok_or_else(|| Error::InsufficientData {
                    what: "monthly volatility (months with two or more returns)".into(),
                    needed: 1,
                    got: 0,
                })?;
            emit_series(cli, &series, "monthly_volatility", || {
                let mut t = series_csv(&series, "monthly_volatility");
                for s in &m.skipped {
                    t.push_str(&format!("# skipped {}-{:02}: {} return(s)\n", s.year, s.month, s.observations));
                }
                t
            })
        }
        Command::Garch { panel, column, returns } => {
            let p = AlignedPanel::read_csv(panel)?;
            let r = if *returns { p.series(column)? } else { returns_of(&p, column)? };
            let fit = garch_fit(&r)?;
            if cli.format == ReportFormat::Csv {
                return output(cli, &series_csv(&garch_volatility(&fit)?, "VOL"));
            }
            emit(cli, &fit, || {
                let p = &fit.params;
                let mut t = text_table(
                    &["Parameter", "Estimate"],
                    &[
                        vec!["mu".into(), sig_str(p.mu)],
                        vec!["omega".into(), sig_str(p.omega)],
                        vec!["alpha".into(), format!("{:.4}", p.alpha)],
                        vec!["beta".into(), format!("{:.4}", p.beta)],
                        vec!["log-likelihood".into(), format!("{:.2}", fit.log_likelihood)],
                        vec!["converged".into(), fit.converged.to_string()],
                    ],
                );
                for w in &fit.warnings {
                    t.push_str(&format!("warning: {w}\n"));
                }
                t
            })
        }
        Command::Adf {
            panel,
            column,
            spec,
            lags,
            difference,
        } => {
            let spec: DeterministicSpec = spec.parse()?;
            let lags = lags.map_or(LagSelection::Auto, LagSelection::Fixed);
            let s = AlignedPanel::read_csv(panel)?.series(column)?;
            let mut rows = vec![(column.clone(), adf_test(&s, spec, lags)?)];
            if *difference {
                rows.push((format!("D({column})"), adf_test(&first_difference(&s)?, spec, lags)?));
            }
            emit(cli, &rows, || adf_table(&rows))
        }
        Command::Corr {
            panel,
            columns,
            threshold,
        } => {
            let cols = list(columns);
            let m = correlation_matrix(&AlignedPanel::read_csv(panel)?, &refs(&cols))?;
            let flagged = multicollinearity_screen(&m, *threshold)?;
            emit(cli, &(&m, &flagged), || {
                let mut t = correlation_table(&m);
                for f in &flagged {
                    t.push_str(&format!("flagged: {} / {} r = {:.3}\n", f.first, f.second, f.correlation));
                }
                t
            })
        }
        Command::Pca {
            panel,
            columns,
            rule,
            tau,
        } => {
            let rule: SelectionRule = rule.parse()?;
            let cols = list(columns);
            let z = standardize(&AlignedPanel::read_csv(panel)?, &refs(&cols))?;
            let res = pca_with(&z, rule, *tau)?;
            emit(cli, &res, || {
                let mut t = pca_table(&res);
                t.push('\n');
                t.push_str(&loadings_table(&res, res.selected_k.max(1)));
                t.push_str(&format!("retained {} component(s)\n", res.selected_k));
                for p in proxies(&res, res.selected_k) {
                    t.push_str(&format!("warning: {} is effectively {} alone\n", p.component, p.variable));
                }
                t
            })
        }
        Command::Regress {
            panel,
            dependent,
            regressors,
            endog_lags,
            exog_lags,
            trend,
        } => {
            let mut spec = ArdlSpec::new(*endog_lags);
            spec.include_trend = *trend;
            for r in list(regressors) {
                spec = spec.with_exog(r, *exog_lags);
            }
            let fit = fit_ardl(&AlignedPanel::read_csv(panel)?, dependent, &spec)?;
            emit(cli, &fit, || coefficient_table(&fit))
        }
        Command::Johansen {
            panel,
            columns,
            var_lags,
            det,
        } => {
            let det: JohansenDeterministic = det.parse()?;
            let cols = list(columns);
            let res = johansen_test(&AlignedPanel::read_csv(panel)?, &refs(&cols), *var_lags, det)?;
            emit(cli, &res, || {
                format!("{}selected rank: {}\n", johansen_table(&res), res.selected_rank)
            })
        }
        Command::Granger {
            panel,
            cause,
            effect,
            lags,
        } => {
            let p = AlignedPanel::read_csv(panel)?;
            let g = granger_test_values(p.column(cause)?, p.column(effect)?, *lags, cause, effect)?;
            let rows = vec![g];
            emit(cli, &rows[0], || granger_table(&rows))
        }
        Command::White {
            panel,
            dependent,
            regressors,
            no_cross_terms,
        } => {
            let p = AlignedPanel::read_csv(panel)?;
            let regs = list(regressors);
            let mut spec = ArdlSpec::new(0);
            for r in &regs {
                spec = spec.with_exog(r.clone(), 0);
            }
            let fit = fit_ardl(&p, dependent, &spec)?;
            let cols = regs.iter().map(|r| p.column(r)).collect::<Result<Vec<_>>>()?;
            let w = white_test(&fit.ols.residuals, &DenseMatrix::from_columns(&cols)?, !no_cross_terms)?;
            emit(cli, &w, || white_table(&w))
        }
        Command::Theory { calc } => run_theory(cli, calc),
        Command::Pipeline => {
            let mut cfg = PipelineConfig::load(require_config(cli)?)?;
            if let Some(out) = &cli.out {
                cfg.output_dir = out.clone();
            }
            if let Some(seed) = cli.seed {
                cfg.seed = seed;
            }
            let bundle = run_pipeline(&cfg)?;
            let files = emit_report(&bundle, cli.format, &cfg.output_dir)?;
            for w in &bundle.warnings {
                eprintln!("warning: {w}");
            }
            for f in files {
                println!("{}", f.display());
            }
            Ok(())
        }
        Command::Simulate { scenario, n } => {
            let scenario: Scenario = scenario.parse()?;
            let out = cli
                .out
                .as_deref()
                .ok_or_else(|| Error::Config("simulate needs --out <dir>".into()))?;
            let ds = simulate_dataset(out, cli.seed.unwrap_or(DEFAULT_SEED), *n, scenario)?;
            println!("{}", ds.dataset_config.display());
            Ok(())
        }
    }
}

#[derive(Serialize)]
struct Value<'a> {
    quantity: &'a str,
    value: f64,
}

fn run_theory(cli: &Cli, calc: &TheoryCommand) -> Result<()> {
    let values: Vec<Value> = match calc {
        TheoryCommand::Pv {
            dividends,
            terminal,
            rate,
        } => {
            let dividends = list(dividends)
                .iter()
                .map(|d| d.parse().map_err(|_| Error::Parameter(format!("invalid dividend `{d}`"))))
                .collect::<Result<Vec<f64>>>()?;
            let s = CashflowSchedule {
                dividends,
                terminal_value: *terminal,
                discount_rate: *rate,
            };
            vec![Value {
                quantity: "present_value",
                value: present_value(&s)?,
            }]
        }
        TheoryCommand::Perpetuity { dividend, rate } => vec![Value {
            quantity: "perpetuity_value",
            value: perpetuity_value(*dividend, *rate)?,
        }],
        TheoryCommand::Capm {
            sigma_i,
            sigma_m,
            rho,
            risk_free,
            market,
        } => {
            let c = CapmInputs {
                sigma_i: *sigma_i,
                sigma_m: *sigma_m,
                rho_im: *rho,
                risk_free: *risk_free,
                expected_market: *market,
            };
            let beta = capm_beta(&c)?;
            vec![
                Value {
                    quantity: "beta",
                    value: beta,
                },
                Value {
                    quantity: "expected_return",
                    value: capm_expected_return(beta, &c)?,
                },
            ]
        }
        TheoryCommand::Ia {
            core,
            lambda,
            output,
            natural,
        } => vec![Value {
            quantity: "inflation",
            value: ia_inflation(&IaCurveInputs {
                core_inflation: *core,
                lambda: *lambda,
                output: *output,
                natural_output: *natural,
            })?,
        }],
        TheoryCommand::FxSensitivity {
            phi_s,
            phi_y,
            phi_q,
            l_s,
            l_y,
        } => vec![Value {
            quantity: "dS/dq",
            value: stock_price_fx_sensitivity(&IsLmIaPartials {
                phi_s: *phi_s,
                phi_y: *phi_y,
                phi_q: *phi_q,
                l_s: *l_s,
                l_y: *l_y,
            })?,
        }],
    };
    emit(cli, &values, || {
        values
            .iter()
            .map(|v| format!("{} = {}\n", v.quantity, sig_str(v.value)))
            .collect()
    })
}
