use std::fs;
use std::io::Write as _;
use std::path::Path;

use anyhow::anyhow;
use gradfuzz::benchmark::{emit_report, run_benchmark_on, GfConfig, Overrides, DEFAULT_FOLDS};
use gradfuzz::data::{
    builtin_keys, builtin_spec, builtin_specs, dataset_to_csv, fetch_dataset, load_csv, minmax_fit,
    DatasetSpec, FetchSource, FetchStatus,
};
use gradfuzz::explain::{
    export_rules, resolve_feature_names, trace, LinguisticVocabulary, LOGITS_NOTE,
};
use gradfuzz::fuzzy::{init_classifier, ModelShape};
use gradfuzz::training::{random_gradcheck, train_model_with_progress, GradcheckSizes};
use gradfuzz::{Error, FuzzyClassifier};

use crate::cli::{Format, HyperArgs};

pub const EXIT_OK: u8 = 0;
pub const EXIT_USAGE: u8 = 1;
pub const EXIT_DATA: u8 = 2;
pub const EXIT_BAND: u8 = 3;

/// Largest relative error `gradcheck` accepts.
pub const GRADCHECK_TOLERANCE: f64 = 1e-4;

#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub error: anyhow::Error,
}

impl Failure {
    pub fn usage(msg: impl Into<String>) -> Self {
        Self {
            code: EXIT_USAGE,
            error: anyhow!(msg.into()),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Config(_) | Error::UnknownDataset(_) => EXIT_USAGE,
            _ => EXIT_DATA,
        };
        Self {
            code,
            error: e.into(),
        }
    }
}

type CmdResult = Result<u8, Failure>;

fn select_datasets(selector: &str) -> Result<Vec<DatasetSpec>, Failure> {
    if selector == "all" {
        return Ok(builtin_specs());
    }
    builtin_spec(selector).map(|s| vec![s]).map_err(|_| {
        Failure::usage(format!(
            "unknown dataset `{selector}`; expected one of: {}, all",
            builtin_keys().join(", ")
        ))
    })
}

fn overrides(hyper: &HyperArgs, seed: u64) -> Overrides {
    Overrides {
        mfs_per_input: hyper.mfs,
        num_rules: hyper.rules,
        epochs: hyper.epochs,
        lr: hyper.lr,
        seed: Some(seed),
    }
}

pub fn fetch(selector: &str, data_dir: &Path) -> CmdResult {
    let specs = select_datasets(selector)?;
    let source = FetchSource::from_env();
    let mut failed = 0;
    for spec in &specs {
        match fetch_dataset(spec, data_dir, &source) {
            Ok(FetchStatus::AlreadyPresent(p)) => {
                println!("{}: already present ({})", spec.key, p.display())
            }
            Ok(FetchStatus::Downloaded(p)) => {
                println!("{}: downloaded and verified ({})", spec.key, p.display())
            }
            Err(e) => {
                eprintln!("{}: {e}", spec.key);
                failed += 1;
            }
        }
    }
    if failed > 0 {
        return Err(Failure {
            code: EXIT_DATA,
            error: anyhow!("{failed} of {} datasets failed", specs.len()),
        });
    }
    Ok(EXIT_OK)
}

pub fn train(
    selector: &str,
    hyper: &HyperArgs,
    seed: u64,
    data_dir: &Path,
    out: &Path,
    loss_curve: Option<&Path>,
) -> CmdResult {
    let spec = builtin_spec(selector)
        .map_err(|_| Failure::usage(format!("unknown dataset `{selector}`")))?;
    let config = overrides(hyper, seed).resolve(&spec);
    config.validate()?;

    let dataset = load_csv(&spec, data_dir)?;
    let scaler = minmax_fit(&dataset.x, dataset.num_features)?;
    let x = scaler.transform(&dataset.x)?;
    let shape = ModelShape::new(
        dataset.num_features,
        dataset.num_classes(),
        config.mfs_per_input,
        config.num_rules,
    );
    let model = init_classifier(shape, seed)?;
    let mut cfg = config.train_config();
    cfg.log_every = 50;
    let (model, record) = train_model_with_progress(model, &x, &dataset.y, &cfg, |epoch, loss| {
        eprintln!("epoch {epoch:>4}  loss {loss:.6}");
    })?;
    let model = model.with_names(dataset.feature_names.clone(), dataset.class_names.clone())?;

    model.save(out)?;
    if let Some(path) = loss_curve {
        record.write_loss_curve(path)?;
    }
    println!(
        "{}: {} rules, {} MFs per input, {} epochs; final loss {:.6}, train accuracy {:.4}, {:.3} s",
        spec.key,
        config.num_rules,
        config.mfs_per_input,
        record.epochs_run,
        record.final_loss(),
        record.final_train_accuracy,
        record.wall_clock_seconds
    );
    println!("model written to {}", out.display());
    Ok(EXIT_OK)
}

pub fn benchmark(
    selector: &str,
    hyper: &HyperArgs,
    seed: u64,
    data_dir: &Path,
    report_dir: &Path,
) -> CmdResult {
    let specs = select_datasets(selector)?;
    let ov = overrides(hyper, seed);
    let configs: Vec<GfConfig> = specs.iter().map(|s| ov.resolve(s)).collect();
    for c in &configs {
        c.validate()?;
    }
    debug_assert!(configs.iter().all(|c| c.folds == DEFAULT_FOLDS));
    // Load everything up front so a missing file fails before any training.
    let datasets = specs
        .iter()
        .map(|s| load_csv(s, data_dir))
        .collect::<gradfuzz::Result<Vec<_>>>()?;

    let mut reports = Vec::with_capacity(specs.len());
    for ((spec, config), dataset) in specs.iter().zip(&configs).zip(&datasets) {
        let report = run_benchmark_on(dataset, spec, config)?;
        let gf = report
            .comparison
            .as_ref()
            .map(|c| c.gf_delta().delta_mean)
            .unwrap_or(f64::NAN);
        println!(
            "{:<14} mean {:7.3}  min {:7.3}  max {:7.3}  delta {:+7.3}  mean train {:.3} s  {}",
            spec.key,
            report.summary.mean,
            report.summary.min,
            report.summary.max,
            gf,
            report.mean_train_seconds,
            if report.passes() { "PASS" } else { "FAIL" }
        );
        reports.push(report);
    }
    for path in emit_report(&reports, report_dir)? {
        println!("wrote {}", path.display());
    }
    Ok(if reports.iter().all(|r| r.passes()) {
        EXIT_OK
    } else {
        EXIT_BAND
    })
}

fn parse_row(text: &str) -> Result<Vec<f64>, Failure> {
    text.split(',')
        .map(|v| {
            v.trim()
                .parse::<f64>()
                .map_err(|_| Failure::usage(format!("`{v}` in --input is not a number")))
        })
        .collect()
}

pub fn explain(model_path: &Path, input: Option<&str>, k: usize, format: Format) -> CmdResult {
    if k == 0 {
        return Err(Failure::usage("--k must be at least 1"));
    }
    let row = input.map(parse_row).transpose()?;
    let model = FuzzyClassifier::load(model_path)?;
    let mut stdout = std::io::stdout().lock();
    let written = match row {
        None => {
            let vocab = LinguisticVocabulary::from_model(&model);
            let rules = export_rules(&model, &vocab, &resolve_feature_names(&model))?;
            match format {
                Format::Text => {
                    eprintln!("note: {LOGITS_NOTE}");
                    write!(stdout, "{rules}")
                }
                Format::Json => {
                    let doc = serde_json::json!({
                        "rules": rules.lines().collect::<Vec<_>>(),
                        "note": LOGITS_NOTE,
                    });
                    writeln!(
                        stdout,
                        "{}",
                        serde_json::to_string_pretty(&doc).map_err(Error::from)?
                    )
                }
            }
        }
        Some(x) => {
            let t = trace(&model, &x, k)?;
            match format {
                Format::Text => write!(stdout, "{}", t.to_text()),
                Format::Json => writeln!(stdout, "{}", t.to_json()?),
            }
        }
    };
    written.map_err(|e| Failure {
        code: EXIT_DATA,
        error: e.into(),
    })?;
    Ok(EXIT_OK)
}

pub fn gradcheck(seed: u64, h: f64, sizes: GradcheckSizes) -> CmdResult {
    let report = random_gradcheck(seed, sizes, h)?;
    let max = report.max_rel_error();
    println!("cases: {}", report.cases.len());
    println!("step h: {h:e}");
    println!("max relative error: {max:.6e}");
    if let Some(case) = report.worst_case() {
        let s = case.shape;
        if let Some(p) = &case.worst {
            println!(
                "worst: D={} C={} M={} R={} batch={} at {} (analytic {:.6e}, numeric {:.6e})",
                s.num_inputs,
                s.num_classes,
                s.mfs_per_input,
                s.num_rules,
                case.batch,
                p.location,
                p.analytic,
                p.numeric
            );
        }
    }
    Ok(if max <= GRADCHECK_TOLERANCE {
        println!("PASS (tolerance {GRADCHECK_TOLERANCE:e})");
        EXIT_OK
    } else {
        println!("FAIL (tolerance {GRADCHECK_TOLERANCE:e})");
        EXIT_BAND
    })
}

pub fn dump(selector: &str, data_dir: &Path, out: Option<&Path>) -> CmdResult {
    let spec = builtin_spec(selector)
        .map_err(|_| Failure::usage(format!("unknown dataset `{selector}`")))?;
    let dataset = load_csv(&spec, data_dir)?;
    let scaler = minmax_fit(&dataset.x, dataset.num_features)?;
    let csv = dataset_to_csv(
        &dataset.feature_names,
        &scaler.transform(&dataset.x)?,
        &dataset.y,
    );
    match out {
        Some(path) => fs::write(path, csv).map_err(|e| Error::Io {
            path: path.to_path_buf(),
            source: e,
        })?,
        None => print!("{csv}"),
    }
    Ok(EXIT_OK)
}
