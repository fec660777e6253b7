use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::anyhow;
use provkernel::baselines::{eh_gram, vh_gram, wl_gram};
use provkernel::kernel::{
    build_universe, feature_sidecar, featurize, gram, hamming_distance, retrieve_instances, write_float_gram_csv,
    FeatureName, GramMatrix,
};
use provkernel::mlpipe::{balance_undersample, compare_reports, repeated_kfold, CvConfig, CvReport, SvmParams};
use provkernel::model::{load_dataset, save_dataset_dir};
use provkernel::pgsim::{generate_dataset, SimMode, SimParams};
use provkernel::{infer_types, Dataset, Exec, LabelMode, PType};
use serde_json::json;

use crate::args::{
    Command, CompareArgs, DistanceArgs, ExplainArgs, FeaturizeArgs, GramArgs, KernelArg, ModeArg, SimulateArgs,
    TypesArgs, XvalArgs,
};
use crate::output::{json_line, json_pretty, write_dir, Artifacts};
use crate::{data, CliError};

pub fn run(cmd: Command) -> Result<(), CliError> {
    match cmd {
        Command::Types(a) => types(a),
        Command::Featurize(a) => featurize_cmd(a),
        Command::Gram(a) => gram_cmd(a),
        Command::Simulate(a) => simulate(a),
        Command::Xval(a) => xval(a),
        Command::Compare(a) => compare(a),
        Command::Explain(a) => explain(a),
        Command::Distance(a) => distance(a),
    }
}

fn load(path: &Path) -> Result<Dataset, CliError> {
    let ds = load_dataset(path).map_err(data)?;
    log::info!("loaded {} graphs from {}", ds.len(), path.display());
    Ok(ds)
}

fn types(a: TypesArgs) -> Result<(), CliError> {
    let (h, mode) = a.method.resolve()?;
    let ds = load(&a.data)?;
    let ta = infer_types(ds.family(), h, mode);
    let mut out = Artifacts::default();
    out.add(a.out.as_deref(), |w| {
        for (graph, node, depth, ty) in ta.iter() {
            json_line(w, &json!({"graph": graph, "node": node, "depth": depth, "type": ty}))?;
        }
        Ok(())
    });
    out.commit()
}

fn featurize_cmd(a: FeaturizeArgs) -> Result<(), CliError> {
    let (h, mode) = a.method.resolve()?;
    let ds = load(&a.data)?;
    let ta = infer_types(ds.family(), h, mode);
    let universe = build_universe(&ta);
    let fm = featurize(&ta, &universe).map_err(data)?;
    let names_out = a.names_out.clone().unwrap_or_else(|| sidecar_path(&a.out));
    let mut out = Artifacts::default();
    out.add(Some(&a.out), |w| fm.write_csv(&universe, w))
        .add(Some(&names_out), |w| json_pretty(w, &feature_sidecar(&universe)));
    out.commit()
}

fn sidecar_path(csv: &Path) -> PathBuf {
    csv.with_extension("features.json")
}

struct KernelRun {
    gram: GramMatrix,
    seconds: f64,
    method: String,
}

fn mode_tag(mode: LabelMode) -> char {
    match mode {
        LabelMode::Generic => 'G',
        LabelMode::Application => 'A',
    }
}

/// Builds the requested Gram matrix, timing everything from type
/// inference to the finished matrix.
fn compute_kernel(ds: &Dataset, kernel: KernelArg, h: usize, mode: LabelMode) -> Result<KernelRun, CliError> {
    let fam = ds.family();
    let start = Instant::now();
    let (gram, method) = match kernel {
        KernelArg::Pk => {
            let ta = infer_types(fam, h, mode);
            let universe = build_universe(&ta);
            let fm = featurize(&ta, &universe).map_err(data)?;
            (gram(&fm, h).map_err(data)?, format!("{}{h}", mode_tag(mode)))
        }
        KernelArg::Vh => (vh_gram(fam, mode).map_err(data)?, format!("VH-{}", mode_tag(mode))),
        KernelArg::Eh => (eh_gram(fam).map_err(data)?, "EH".to_string()),
        KernelArg::Wl => (wl_gram(fam, h, mode).map_err(data)?, format!("WL{h}-{}", mode_tag(mode))),
    };
    Ok(KernelRun { gram, seconds: start.elapsed().as_secs_f64(), method })
}

fn gram_cmd(a: GramArgs) -> Result<(), CliError> {
    let (h, mode) = a.method.resolve()?;
    let ds = load(&a.data)?;
    let run = compute_kernel(&ds, a.kernel, h, mode)?;
    eprintln!("featurize_seconds={:.6} method={}", run.seconds, run.method);
    let normalized = if a.normalize { Some(run.gram.normalized().map_err(data)?) } else { None };
    let mut out = Artifacts::default();
    out.add(a.out.as_deref(), |w| match &normalized {
        Some(k) => write_float_gram_csv(run.gram.ids(), k, w),
        None => run.gram.write_csv(w),
    });
    if let Some(t) = &a.timing_out {
        out.add(Some(t), |w| json_pretty(w, &json!({"featurize_seconds": run.seconds, "method": run.method})));
    }
    out.commit()
}

fn simulate(a: SimulateArgs) -> Result<(), CliError> {
    let mode = match a.mode {
        ModeArg::Targeting => SimMode::Targeting,
        ModeArg::Disposal => SimMode::Disposal,
    };
    let params = SimParams {
        n_pokemons: a.pokemons,
        n_pokestops: a.pokestops,
        n_players: a.players,
        max_storage: a.max_storage,
        grid: (a.width, a.height),
        max_ticks: a.ticks,
        ..SimParams::new(mode, a.seed)
    };
    params.validate().map_err(|e| CliError::Usage(e.to_string()))?;
    if a.sims == 0 {
        return Err(CliError::Usage("--sims must be at least 1".into()));
    }
    let ds = generate_dataset(&params, a.sims, Exec::Parallel).map_err(data)?;
    write_dir(&a.out, |dir| save_dataset_dir(&ds, dir).map_err(crate::internal))?;
    eprintln!("wrote {} graphs to {}", ds.len(), a.out.display());
    Ok(())
}

fn xval(a: XvalArgs) -> Result<(), CliError> {
    let (h, mode) = a.method.resolve()?;
    if !(a.c >= 0.0 && a.c.is_finite()) {
        return Err(CliError::Usage(format!("--c must be a non-negative number, got {}", a.c)));
    }
    let mut ds = load(&a.data)?;
    if a.balance {
        ds = balance_undersample(&ds, a.seed).map_err(data)?;
    }
    let run = compute_kernel(&ds, a.kernel, h, mode)?;
    let k = if a.normalize { run.gram.normalized().map_err(data)? } else { run.gram.to_array() };
    let cfg = CvConfig { k: a.k, repeats: a.repeats, seed: a.seed, svm: SvmParams { c: a.c, ..SvmParams::default() } };
    let mut report = repeated_kfold(ds.labels(), &k, &cfg, Exec::Parallel).map_err(data)?;
    report.featurize_seconds = run.seconds;
    report.method = Some(run.method);
    eprintln!("mean accuracy {:.4} (95% CI {:.4}..{:.4})", report.mean, report.ci95[0], report.ci95[1]);
    let mut out = Artifacts::default();
    out.add(a.out.as_deref(), |w| json_pretty(w, &report));
    out.commit()
}

fn read_report(path: &Path) -> Result<CvReport, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| data(anyhow!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| data(anyhow!("{}: {e}", path.display())))
}

fn compare(a: CompareArgs) -> Result<(), CliError> {
    let (ra, rb) = (read_report(&a.a)?, read_report(&a.b)?);
    let cmp = compare_reports(&ra, &rb).map_err(data)?;
    let mut out = Artifacts::default();
    out.add(a.out.as_deref(), |w| json_pretty(w, &cmp));
    out.commit()
}

fn parse_feature(name: &str) -> Result<FeatureName, CliError> {
    name.parse().map_err(|_| CliError::Usage(format!("`{name}` is not a feature name (FA<d>_<i> or FG<d>_<i>)")))
}

/// Resolves a feature name against the dataset's universe at its depth.
fn feature_type(ds: &Dataset, name: &str) -> Result<(FeatureName, PType, provkernel::TypeAssignment), CliError> {
    let f = parse_feature(name)?;
    let ta = infer_types(ds.family(), f.depth, f.mode);
    let universe = build_universe(&ta);
    let ty = universe.lookup(name).map_err(data)?.clone();
    Ok((f, ty, ta))
}

fn explain(a: ExplainArgs) -> Result<(), CliError> {
    let f = parse_feature(&a.feature)?;
    // Only flags given explicitly are checked against the feature name.
    let (h, mode) = a.method.resolve()?;
    let h_given = a.method.h.is_some() || a.method.method.is_some();
    let mode_given = a.method.labels.is_some() || a.method.method.is_some();
    if (h_given && h < f.depth) || (mode_given && mode != f.mode) {
        return Err(CliError::Usage(format!("{} needs {} labels and h >= {}", a.feature, f.mode.as_str(), f.depth)));
    }
    let ds = load(&a.data)?;
    let (f, ty, ta) = feature_type(&ds, &a.feature)?;
    let hits = retrieve_instances(&ta, &ty);
    let instances: Vec<_> = hits.iter().map(|(g, n)| json!({"graph": g, "node": n})).collect();
    let report = json!({
        "feature": a.feature,
        "depth": f.depth,
        "labels": f.mode.as_str(),
        "type": ty,
        "definition": ty.to_string(),
        "count": hits.len(),
        "instances": instances,
    });
    let mut out = Artifacts::default();
    out.add(a.out.as_deref(), |w: &mut dyn Write| json_pretty(w, &report));
    out.commit()
}

fn resolve_type(arg: &str, ds: Option<&Dataset>) -> Result<PType, CliError> {
    let trimmed = arg.trim();
    if trimmed.starts_with('[') || trimmed == "null" {
        return serde_json::from_str(trimmed).map_err(|e| CliError::Usage(format!("invalid type `{arg}`: {e}")));
    }
    let ds = ds.ok_or_else(|| CliError::Usage(format!("resolving feature `{arg}` needs --data")))?;
    Ok(feature_type(ds, trimmed)?.1)
}

fn distance(a: DistanceArgs) -> Result<(), CliError> {
    let ds = a.data.as_deref().map(load).transpose()?;
    let ta = resolve_type(&a.a, ds.as_ref())?;
    let tb = resolve_type(&a.b, ds.as_ref())?;
    let d = hamming_distance(&ta, &tb).map_err(data)?;
    let report = json!({"typeA": ta, "typeB": tb, "distance": d});
    let mut out = Artifacts::default();
    out.add(a.out.as_deref(), |w| json_pretty(w, &report));
    out.commit()
}
