//! reduction-scope: classify reduction types of CM abelian varieties,
//! products of elliptic curves, and Fermat hypersurfaces at primes, and
//! compute the matching Chebotarev densities.
//!
//! Exit codes: 0 success, 1 reproduction checks failed, 2 configuration or
//! usage error, 3 excluded prime, 4 internal consistency violation.

mod cache;
mod config;
mod output;
mod repro;

use std::fmt;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use reduction_core::cm::{
    classify_by_splitting, classify_with_inert_count, refine_with_galois_rule,
};
use reduction_core::density::{gtr_density, ordinary_density, summarize, GroupClassTable};
use reduction_core::elliptic::{
    ap, classify_product_surface, common_supersingular_with_workers, is_supersingular,
    supersingular_search_with_workers, EllipticCurveQ,
};
use reduction_core::error::Error as CoreError;
use reduction_core::fermat::{classify_fermat, fermat_densities, FermatSpec};
use reduction_core::numfield::{classify_split, inert_count_over_p, splitting_pattern};
use reduction_core::polygons::{hodge_polygon, lies_above, newton_polygon};

use config::{RunConfig, ScanField};
use output::{
    parse_i64_list, parse_u64_list, parse_valuations, polygon_segments_json, rows_to_csv,
};

#[derive(Debug)]
pub enum CliError {
    Core(CoreError),
    Config(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Core(e) => write!(f, "{e}"),
            CliError::Config(msg) => write!(f, "{msg}"),
        }
    }
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(CoreError::ExcludedPrime(_)) => 3,
            CliError::Core(CoreError::Consistency(_))
            | CliError::Core(CoreError::InvalidPolygon(_)) => 4,
            _ => 2,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Core(CoreError::ExcludedPrime(_)) => "excluded-prime",
            CliError::Core(CoreError::Consistency(_)) => "consistency",
            CliError::Core(CoreError::InvalidPolygon(_)) => "invalid-polygon",
            CliError::Core(_) => "domain",
            CliError::Config(_) => "config",
        }
    }
}

#[derive(Parser)]
#[command(name = "reduction-scope", version, about)]
struct Cli {
    /// Emit the result as JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

/// Field selection: inline polynomial flags or a config lookup.
#[derive(Args, Debug)]
struct FieldArgs {
    /// Defining polynomial, integer coefficients, constant term first.
    #[arg(long, conflicts_with = "field", allow_hyphen_values = true)]
    poly: Option<String>,
    /// Totally real subfield polynomial (same format).
    #[arg(long, requires = "poly", allow_hyphen_values = true)]
    k0: Option<String>,
    /// Field is galois over Q.
    #[arg(long, requires = "poly")]
    galois: bool,
    /// Opt-in rule: galois + equal residue degrees refine to non-Hodge-Witt.
    #[arg(long, requires = "poly")]
    galois_rule: bool,
    /// Config file with [[field]] entries.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Label of a field in the config file.
    #[arg(long, requires = "config")]
    field: Option<String>,
}

impl FieldArgs {
    fn resolve(&self) -> Result<(ScanField, Option<RunConfig>), CliError> {
        if let Some(poly) = &self.poly {
            let field = config::FieldConfig {
                label: "field".into(),
                poly: parse_i64_list(poly)?,
                k0_poly: self.k0.as_deref().map(parse_i64_list).transpose()?,
                galois: self.galois,
                galois_non_hodge_witt_rule: self.galois_rule,
                group: None,
            }
            .to_scan_field()?;
            let run_config = self.config.as_deref().map(RunConfig::load).transpose()?;
            return Ok((field, run_config));
        }
        let config_path = self
            .config
            .as_deref()
            .ok_or_else(|| CliError::Config("provide --poly or --config with --field".into()))?;
        let run_config = RunConfig::load(config_path)?;
        let label = self
            .field
            .as_deref()
            .ok_or_else(|| CliError::Config("--config requires --field <label> here".into()))?;
        let field = run_config.field(label)?.to_scan_field()?;
        Ok((field, Some(run_config)))
    }
}

/// A curve given either as a literal "a1,a2,a3,a4,a6" tuple or as the
/// label of a [[curve]] entry in the config file.
fn resolve_curve(text: &str, config: Option<&PathBuf>) -> Result<EllipticCurveQ, CliError> {
    if let Ok(coeffs) = parse_i64_list(text) {
        if coeffs.len() != 5 {
            return Err(CliError::Config(format!(
                "expected 5 Weierstrass coefficients a1,a2,a3,a4,a6, got {}",
                coeffs.len()
            )));
        }
        return EllipticCurveQ::from_coeffs(coeffs.try_into().unwrap()).map_err(CliError::Core);
    }
    match config {
        Some(path) => RunConfig::load(path)?.curve(text)?.to_curve(),
        None => Err(CliError::Config(format!(
            "{text:?} is not a coefficient tuple; curve labels need --config"
        ))),
    }
}

#[derive(Subcommand)]
enum Command {
    /// Residue field degree sequence and split class of p in a field.
    Split {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        prime: u64,
    },
    /// Reduction-type verdict of a CM abelian variety with the given field.
    CmClassify {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        prime: u64,
    },
    /// Scan primes up to a bound; writes CSV rows and a summary JSON.
    Scan {
        #[command(flatten)]
        field: FieldArgs,
        #[arg(long)]
        bound: Option<u64>,
        #[arg(long)]
        workers: Option<usize>,
        /// Output directory for {label}.csv and {label}.summary.json.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Skip the scan cache.
        #[arg(long)]
        no_cache: bool,
    },
    /// Theoretical densities from a group class table.
    Density {
        /// Built-in table name (C2, C4, V4, D4, S3, S4) or a name from the
        /// config's [[group]] entries.
        #[arg(long, conflicts_with = "group_file")]
        group: Option<String>,
        /// TOML file with a single group table.
        #[arg(long)]
        group_file: Option<PathBuf>,
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Trace of Frobenius of an elliptic curve at a good prime.
    EcAp {
        /// Weierstrass coefficients "a1,a2,a3,a4,a6" or a config label.
        #[arg(long, allow_hyphen_values = true)]
        curve: String,
        #[arg(long)]
        prime: u64,
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Supersingular primes of a curve up to a bound.
    SsSearch {
        #[arg(long, allow_hyphen_values = true)]
        curve: String,
        #[arg(long)]
        bound: u64,
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Primes where both curves are supersingular.
    SsCommon {
        #[arg(long, allow_hyphen_values = true)]
        curve1: String,
        #[arg(long, allow_hyphen_values = true)]
        curve2: String,
        #[arg(long)]
        bound: u64,
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Reduction type of the product surface E1 x E2 at p.
    Product {
        #[arg(long, allow_hyphen_values = true)]
        curve1: String,
        #[arg(long, allow_hyphen_values = true)]
        curve2: String,
        #[arg(long)]
        prime: u64,
        #[arg(long)]
        config: Option<PathBuf>,
    },
    /// Fermat hypersurface verdict at a prime, or its densities.
    Fermat {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        m: u32,
        #[arg(long, conflicts_with = "densities")]
        prime: Option<u64>,
        #[arg(long)]
        densities: bool,
    },
    /// Newton/Hodge polygons from valuations or Hodge numbers.
    Polygon {
        /// Coefficient valuations "0,inf,1" (rationals and inf allowed).
        #[arg(long)]
        newton: Option<String>,
        /// Hodge numbers "1,20,1".
        #[arg(long)]
        hodge: Option<String>,
    },
    /// Re-run a bundled example; exits 0 iff its checks pass.
    Repro {
        /// One of: zeta5, d4-field, e-times-eprime, fermat-2-7, j0-37.
        name: String,
        #[arg(long)]
        bound: Option<u64>,
        #[arg(long)]
        workers: Option<usize>,
    },
}

fn default_workers(requested: Option<usize>, config: Option<&RunConfig>) -> usize {
    requested
        .or(config.and_then(|c| c.workers))
        .unwrap_or_else(|| {
            std::thread::available_parallelism()
                .map(|n| n.get())
                .unwrap_or(1)
        })
        .max(1)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!(
                "error code={} kind={} msg={:?}",
                e.exit_code(),
                e.kind(),
                e.to_string()
            );
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode, CliError> {
    match &cli.command {
        Command::Split { field, prime } => {
            let (scan_field, _) = field.resolve()?;
            let pattern = splitting_pattern(&scan_field.field, *prime).map_err(CliError::Core)?;
            let class =
                classify_split(&pattern, scan_field.field.degree()).map_err(CliError::Core)?;
            if cli.json {
                println!(
                    "{}",
                    json!({
                        "label": scan_field.label,
                        "poly": scan_field.field.defining_poly(),
                        "p": prime,
                        "ramified": pattern.ramified,
                        "degrees": pattern.degrees,
                        "split_class": class.to_string(),
                    })
                );
            } else {
                let degrees = pattern
                    .degrees
                    .iter()
                    .map(|d| d.to_string())
                    .collect::<Vec<_>>()
                    .join(",");
                println!(
                    "{} at p={}: degrees ({}) class {}",
                    scan_field.label, prime, degrees, class
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::CmClassify { field, prime } => {
            let (scan_field, _) = field.resolve()?;
            let pattern = splitting_pattern(&scan_field.field, *prime).map_err(CliError::Core)?;
            let class =
                classify_split(&pattern, scan_field.field.degree()).map_err(CliError::Core)?;
            let inert = match &scan_field.k0 {
                Some(k0) => {
                    let pattern_k0 = splitting_pattern(k0, *prime).map_err(CliError::Core)?;
                    Some(inert_count_over_p(&pattern, &pattern_k0).map_err(CliError::Core)?)
                }
                None => None,
            };
            let mut verdict = match inert {
                Some(i) => classify_with_inert_count(class, i).map_err(CliError::Core)?,
                None => classify_by_splitting(class).map_err(CliError::Core)?,
            };
            if scan_field.galois && scan_field.galois_non_hodge_witt_rule {
                verdict = refine_with_galois_rule(verdict, &pattern.degrees);
            }
            if cli.json {
                println!(
                    "{}",
                    json!({
                        "label": scan_field.label,
                        "p": prime,
                        "degrees": pattern.degrees,
                        "split_class": class.to_string(),
                        "inert_count": inert,
                        "reduction_type": verdict.to_string(),
                    })
                );
            } else {
                println!(
                    "{} at p={}: class {} -> reduction {}",
                    scan_field.label, prime, class, verdict
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Scan {
            field,
            bound,
            workers,
            out,
            no_cache,
        } => {
            let (scan_field, run_config) = field.resolve()?;
            let bound = bound
                .or(run_config.as_ref().and_then(|c| c.bound))
                .ok_or_else(|| CliError::Config("scan needs --bound or config bound".into()))?;
            if bound < 2 {
                return Err(CliError::Config(format!("bound {bound} must be >= 2")));
            }
            let workers = default_workers(*workers, run_config.as_ref());
            let cache_dir = if *no_cache {
                None
            } else {
                Some(cache::cache_dir(
                    run_config.as_ref().and_then(|c| c.cache_dir.as_deref()),
                ))
            };
            let rows = cache::scan_with_cache(&scan_field, bound, workers, cache_dir.as_deref())?;
            let report = summarize(&rows, 2, bound);

            let out_dir = out
                .clone()
                .or(run_config.as_ref().and_then(|c| c.output_dir.clone()))
                .unwrap_or_else(|| PathBuf::from("."));
            std::fs::create_dir_all(&out_dir)
                .map_err(|e| CliError::Config(format!("cannot create {}: {e}", out_dir.display())))?;
            let csv_path = out_dir.join(format!("{}.csv", scan_field.label));
            let summary_path = out_dir.join(format!("{}.summary.json", scan_field.label));
            std::fs::write(&csv_path, rows_to_csv(&rows))
                .map_err(|e| CliError::Config(format!("cannot write CSV: {e}")))?;
            let summary = serde_json::to_string_pretty(&report).unwrap() + "\n";
            std::fs::write(&summary_path, summary)
                .map_err(|e| CliError::Config(format!("cannot write summary: {e}")))?;

            if cli.json {
                println!("{}", serde_json::to_string(&report).unwrap());
            } else {
                println!(
                    "scanned {} primes up to {} ({} excluded)",
                    report.scanned,
                    bound,
                    report.excluded.len()
                );
                println!(
                    "completely-split {}  almost-not-completely {}  other {}",
                    report.completely_split.fraction,
                    report.almost_not_completely.fraction,
                    report.other.fraction
                );
                println!(
                    "artifacts: {} and {}",
                    csv_path.display(),
                    summary_path.display()
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Density {
            group,
            group_file,
            config,
        } => {
            let table = match (group, group_file) {
                (Some(name), None) => match config {
                    Some(path) => RunConfig::load(path)?.group(name)?,
                    None => GroupClassTable::builtin(name).ok_or_else(|| {
                        CliError::Config(format!(
                            "unknown built-in group {name:?}; available: {:?}",
                            GroupClassTable::builtin_names()
                        ))
                    })?,
                },
                (None, Some(path)) => {
                    let text = std::fs::read_to_string(path).map_err(|e| {
                        CliError::Config(format!("cannot read {}: {e}", path.display()))
                    })?;
                    let parsed: config::GroupConfig = toml::from_str(&text)
                        .map_err(|e| CliError::Config(format!("malformed group file: {e}")))?;
                    parsed.to_table()?
                }
                _ => {
                    return Err(CliError::Config(
                        "provide exactly one of --group or --group-file".into(),
                    ))
                }
            };
            let hw = gtr_density(&table).map_err(CliError::Core)?;
            let ord = ordinary_density(&table).map_err(CliError::Core)?;
            if cli.json {
                println!(
                    "{}",
                    json!({
                        "group": table.name,
                        "degree": table.degree_n,
                        "order": table.order,
                        "hodge_witt_density": hw.to_string(),
                        "ordinary_density": ord.to_string(),
                        "hodge_witt_decimal": *hw.numer() as f64 / *hw.denom() as f64,
                        "ordinary_decimal": *ord.numer() as f64 / *ord.denom() as f64,
                    })
                );
            } else {
                println!(
                    "group {} (order {}, degree {}): hw={} ord={}",
                    table.name.as_deref().unwrap_or("?"),
                    table.order,
                    table.degree_n,
                    hw,
                    ord
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::EcAp {
            curve,
            prime,
            config,
        } => {
            let e = resolve_curve(curve, config.as_ref())?;
            let a_p = ap(&e, *prime).map_err(CliError::Core)?;
            let ss = a_p == 0;
            if cli.json {
                println!(
                    "{}",
                    json!({
                        "curve": e.coeffs(),
                        "p": prime,
                        "ap": a_p,
                        "supersingular": ss,
                    })
                );
            } else {
                println!(
                    "a_{prime} = {a_p} ({})",
                    if ss { "supersingular" } else { "ordinary" }
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::SsSearch {
            curve,
            bound,
            workers,
            config,
        } => {
            let e = resolve_curve(curve, config.as_ref())?;
            let workers = default_workers(*workers, None);
            let outcome = supersingular_search_with_workers(&e, *bound, workers);
            if cli.json {
                println!(
                    "{}",
                    json!({
                        "curve": e.coeffs(),
                        "bound": bound,
                        "primes": outcome.primes,
                        "skipped": outcome.skipped,
                    })
                );
            } else {
                println!(
                    "supersingular primes <= {}: {:?} (skipped: {:?})",
                    bound, outcome.primes, outcome.skipped
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::SsCommon {
            curve1,
            curve2,
            bound,
            workers,
            config,
        } => {
            let e1 = resolve_curve(curve1, config.as_ref())?;
            let e2 = resolve_curve(curve2, config.as_ref())?;
            let workers = default_workers(*workers, None);
            let outcome = common_supersingular_with_workers(&e1, &e2, *bound, workers);
            if cli.json {
                println!(
                    "{}",
                    json!({
                        "curve1": e1.coeffs(),
                        "curve2": e2.coeffs(),
                        "bound": bound,
                        "primes": outcome.primes,
                        "skipped": outcome.skipped,
                    })
                );
            } else {
                println!(
                    "common supersingular primes <= {}: {:?} (skipped: {:?})",
                    bound, outcome.primes, outcome.skipped
                );
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Product {
            curve1,
            curve2,
            prime,
            config,
        } => {
            let e1 = resolve_curve(curve1, config.as_ref())?;
            let e2 = resolve_curve(curve2, config.as_ref())?;
            let verdict = classify_product_surface(&e1, &e2, *prime).map_err(CliError::Core)?;
            let ss1 = is_supersingular(&e1, *prime).map_err(CliError::Core)?;
            let ss2 = is_supersingular(&e2, *prime).map_err(CliError::Core)?;
            if cli.json {
                println!(
                    "{}",
                    json!({
                        "curve1": e1.coeffs(),
                        "curve2": e2.coeffs(),
                        "p": prime,
                        "curve1_ordinary": !ss1,
                        "curve2_ordinary": !ss2,
                        "reduction_type": verdict.to_string(),
                    })
                );
            } else {
                println!("E1 x E2 at p={prime}: {verdict}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Fermat {
            n,
            m,
            prime,
            densities,
        } => {
            let spec = FermatSpec::new(*n, *m).map_err(CliError::Core)?;
            if *densities {
                let d = fermat_densities(spec).map_err(CliError::Core)?;
                let ord = d.ord.map(|r| r.to_string());
                if cli.json {
                    println!(
                        "{}",
                        json!({
                            "n": n,
                            "m": m,
                            "ordinary_density": ord,
                            "hodge_witt_density": d.hw.to_string(),
                            "non_hodge_witt_density": d.nonhw.to_string(),
                        })
                    );
                } else {
                    println!(
                        "F_({n},{m}) densities: ord={} hw={} non-hw={}",
                        ord.as_deref().unwrap_or("unknown"),
                        d.hw,
                        d.nonhw
                    );
                }
                return Ok(ExitCode::SUCCESS);
            }
            let p = prime
                .ok_or_else(|| CliError::Config("fermat needs --prime or --densities".into()))?;
            let (ordinary, reduction) = classify_fermat(spec, p).map_err(CliError::Core)?;
            if cli.json {
                println!(
                    "{}",
                    json!({
                        "n": n,
                        "m": m,
                        "p": p,
                        "ordinary": ordinary,
                        "reduction_type": reduction.to_string(),
                    })
                );
            } else {
                let ord = match ordinary {
                    Some(true) => "ordinary",
                    Some(false) => "not ordinary",
                    None => "ordinarity unknown",
                };
                println!("F_({n},{m}) at p={p}: {reduction} ({ord})");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Polygon { newton, hodge } => {
            let newton_poly = newton
                .as_deref()
                .map(|text| {
                    let vals = parse_valuations(text)?;
                    newton_polygon(&vals).map_err(CliError::Core)
                })
                .transpose()?;
            let hodge_poly = hodge
                .as_deref()
                .map(|text| {
                    let numbers = parse_u64_list(text)?;
                    hodge_polygon(&numbers).map_err(CliError::Core)
                })
                .transpose()?;
            if newton_poly.is_none() && hodge_poly.is_none() {
                return Err(CliError::Config(
                    "provide --newton valuations and/or --hodge numbers".into(),
                ));
            }
            let comparison = match (&newton_poly, &hodge_poly) {
                (Some(n), Some(h)) => Some(lies_above(n, h).map_err(CliError::Core)?),
                _ => None,
            };
            if cli.json {
                println!(
                    "{}",
                    json!({
                        "newton": newton_poly.as_ref().map(polygon_segments_json),
                        "hodge": hodge_poly.as_ref().map(polygon_segments_json),
                        "above": comparison.map(|c| c.0),
                        "same_endpoints": comparison.map(|c| c.1),
                    })
                );
            } else {
                let render = |p: &reduction_core::Polygon| {
                    p.segments()
                        .iter()
                        .map(|(s, m)| format!("{s} x{m}"))
                        .collect::<Vec<_>>()
                        .join(", ")
                };
                if let Some(n) = &newton_poly {
                    println!("newton: {}", render(n));
                }
                if let Some(h) = &hodge_poly {
                    println!("hodge:  {}", render(h));
                }
                if let Some((above, same)) = comparison {
                    println!("newton lies above hodge: {above}; same endpoints: {same}");
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Repro {
            name,
            bound,
            workers,
        } => {
            let workers = default_workers(*workers, None);
            let outcome = repro::run(name, *bound, workers)?;
            if cli.json {
                println!("{}", serde_json::to_string(&outcome).unwrap());
            } else {
                for check in &outcome.checks {
                    println!(
                        "[{}] {} ({})",
                        if check.pass { "PASS" } else { "FAIL" },
                        check.name,
                        check.detail
                    );
                }
                println!(
                    "repro {}: {}",
                    outcome.example,
                    if outcome.pass { "PASS" } else { "FAIL" }
                );
            }
            Ok(if outcome.pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::FAILURE
            })
        }
    }
}
