use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use provkernel::LabelMode;

use crate::CliError;

#[derive(Parser, Debug)]
#[command(name = "provkernel", version, about = "Provenance types and provenance graph kernels")]
pub struct Cli {
    /// Worker threads for data-parallel steps (default: all cores).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Log progress to stderr.
    #[arg(short, long, global = true)]
    pub verbose: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Dump the inferred type of every node at every depth (JSON lines).
    Types(TypesArgs),
    /// Write the feature matrix as CSV plus a JSON sidecar of type definitions.
    Featurize(FeaturizeArgs),
    /// Write a Gram matrix as CSV.
    Gram(GramArgs),
    /// Run the Pokémon Go simulator and write a dataset directory.
    Simulate(SimulateArgs),
    /// Repeated k-fold cross-validation of an SVM on a kernel.
    Xval(XvalArgs),
    /// Compare two cross-validation reports with a rank-sum test.
    Compare(CompareArgs),
    /// Show the type behind a feature name and the nodes that have it.
    Explain(ExplainArgs),
    /// Normalised Hamming distance between two types.
    Distance(DistanceArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum LabelsArg {
    #[value(alias = "g")]
    Generic,
    #[value(alias = "application", alias = "a")]
    App,
}

impl From<LabelsArg> for LabelMode {
    fn from(l: LabelsArg) -> Self {
        match l {
            LabelsArg::Generic => LabelMode::Generic,
            LabelsArg::App => LabelMode::Application,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KernelArg {
    Pk,
    Vh,
    Eh,
    Wl,
}

/// Depth and label mode, given directly or as a method id such as `A3`.
#[derive(Args, Debug, Clone)]
pub struct MethodArgs {
    /// Depth h (0 to 5).
    #[arg(long, value_parser = clap::value_parser!(u8).range(0..=5))]
    pub h: Option<u8>,
    /// Node labels used: generic only, or generic plus application labels.
    #[arg(long, value_enum)]
    pub labels: Option<LabelsArg>,
    /// Shorthand for --labels/--h: G0..G5 (generic) or A0..A5 (application).
    #[arg(long)]
    pub method: Option<String>,
}

impl MethodArgs {
    /// Resolves to (h, mode); defaults are h = 3 and generic labels.
    pub fn resolve(&self) -> Result<(usize, LabelMode), CliError> {
        let mut h = self.h.map(usize::from);
        let mut labels = self.labels;
        if let Some(m) = &self.method {
            let bad = || CliError::Usage(format!("invalid --method `{m}` (expected G0..G5 or A0..A5)"));
            let mut chars = m.chars();
            let mode = match chars.next() {
                Some('G' | 'g') => LabelsArg::Generic,
                Some('A' | 'a') => LabelsArg::App,
                _ => return Err(bad()),
            };
            let depth: usize = chars.as_str().parse().map_err(|_| bad())?;
            if depth > 5 {
                return Err(bad());
            }
            if h.is_some_and(|x| x != depth) || labels.is_some_and(|l| l != mode) {
                return Err(CliError::Usage(format!("--method {m} conflicts with --h/--labels")));
            }
            h = Some(depth);
            labels = Some(mode);
        }
        Ok((h.unwrap_or(3), labels.unwrap_or(LabelsArg::Generic).into()))
    }
}

#[derive(Args, Debug)]
pub struct TypesArgs {
    /// Dataset directory, manifest, .jsonl file or PROV-JSON document.
    #[arg(long)]
    pub data: PathBuf,
    #[command(flatten)]
    pub method: MethodArgs,
    /// Output file (default: stdout).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct FeaturizeArgs {
    #[arg(long)]
    pub data: PathBuf,
    #[command(flatten)]
    pub method: MethodArgs,
    /// Feature CSV path.
    #[arg(long)]
    pub out: PathBuf,
    /// Sidecar path (default: <out without extension>.features.json).
    #[arg(long)]
    pub names_out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct GramArgs {
    #[arg(long)]
    pub data: PathBuf,
    #[arg(long, value_enum, default_value = "pk")]
    pub kernel: KernelArg,
    #[command(flatten)]
    pub method: MethodArgs,
    /// Cosine-normalise the matrix (cells become floats).
    #[arg(long)]
    pub normalize: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write the featurisation time as JSON to this file.
    #[arg(long)]
    pub timing_out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Targeting,
    Disposal,
}

#[derive(Args, Debug)]
pub struct SimulateArgs {
    #[arg(long, value_enum)]
    pub mode: ModeArg,
    /// Number of simulations; seeds are seed, seed+1, …
    #[arg(long, default_value_t = 40)]
    pub sims: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output dataset directory.
    #[arg(long)]
    pub out: PathBuf,
    #[arg(long, default_value_t = 30)]
    pub players: usize,
    #[arg(long, default_value_t = 100)]
    pub pokemons: usize,
    #[arg(long, default_value_t = 20)]
    pub pokestops: usize,
    #[arg(long, default_value_t = 20)]
    pub max_storage: usize,
    #[arg(long, default_value_t = 500)]
    pub ticks: u32,
    #[arg(long, default_value_t = 50)]
    pub width: u32,
    #[arg(long, default_value_t = 50)]
    pub height: u32,
}

#[derive(Args, Debug)]
pub struct XvalArgs {
    #[arg(long)]
    pub data: PathBuf,
    #[arg(long, value_enum, default_value = "pk")]
    pub kernel: KernelArg,
    #[command(flatten)]
    pub method: MethodArgs,
    #[arg(long)]
    pub normalize: bool,
    /// Undersample majority classes before cross-validation.
    #[arg(long)]
    pub balance: bool,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// SVM regularisation.
    #[arg(long = "c", default_value_t = 1.0)]
    pub c: f64,
    #[arg(long, default_value_t = 10)]
    pub k: usize,
    #[arg(long, default_value_t = 10)]
    pub repeats: usize,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct CompareArgs {
    /// First report (method A).
    #[arg(long)]
    pub a: PathBuf,
    /// Second report (method B).
    #[arg(long)]
    pub b: PathBuf,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ExplainArgs {
    #[arg(long)]
    pub data: PathBuf,
    #[command(flatten)]
    pub method: MethodArgs,
    /// Feature name such as FA2_0; its prefix fixes the label mode.
    #[arg(long)]
    pub feature: String,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct DistanceArgs {
    /// A type as JSON layers (e.g. '[["use"],["ent"]]') or a feature name.
    #[arg(long)]
    pub a: String,
    #[arg(long)]
    pub b: String,
    /// Dataset used to resolve feature names.
    #[arg(long)]
    pub data: Option<PathBuf>,
    #[command(flatten)]
    pub method: MethodArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
}
