//! Command-line front end. The `ledgermap` binary only calls [`run`].

use std::fs::{self, File};
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::augment::{
    build_augmented, read_records, read_samples, write_records, write_samples, Polarity,
};
use crate::catalog::Catalog;
use crate::coa::{parse_coa, write_matrix_tsv};
use crate::embed::{
    train_cosine_regression, train_mnrl, Embedder, EmbeddingModel, ExternalEmbeddings, LossKind,
    TrainConfig, Vocabulary, DEFAULT_DIM,
};
use crate::eval::{comparison_table, histogram_diff, EvalReport};
use crate::experiment::{
    evaluate_provider, run_sweep, split_records, ModelSpec, SplitBy, SweepConfig,
};
use crate::manifest::ManifestBuilder;
use crate::mapper::{build_indexes, map_records, write_predictions};
use crate::synth::{generate_suite, SynthConfig};

#[derive(Debug, Parser)]
#[command(
    name = "ledgermap",
    version,
    about = "Map custom ledger descriptions onto standard charts of accounts"
)]
pub struct Cli {
    /// Seed for every random choice of the command.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, default_value = ".")]
    pub out_dir: PathBuf,
    #[arg(long, short, global = true)]
    pub quiet: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a COA file and print its size and diameter.
    Validate {
        #[arg(long)]
        coa: PathBuf,
    },
    /// Write the distance and similarity matrices of a COA as TSV.
    Distances {
        #[arg(long)]
        coa: PathBuf,
    },
    /// Generate synthetic COAs and noisy mapping records.
    Synth(SynthArgs),
    /// Build the augmented training set.
    Augment {
        #[arg(long, required = true, num_args = 1..)]
        coa: Vec<PathBuf>,
        #[arg(long)]
        records: PathBuf,
        #[arg(long, default_value_t = 20)]
        k: usize,
        #[arg(long, default_value = "augmented.tsv")]
        output: String,
    },
    /// Train an embedding model on an augmented dataset file.
    Train(TrainArgs),
    /// Rank standard accounts for each record description.
    Map {
        #[command(flatten)]
        provider: ProviderArgs,
        #[arg(long)]
        records: PathBuf,
        #[arg(long)]
        top_k: Option<usize>,
        #[arg(long, default_value = "predictions.tsv")]
        output: String,
    },
    /// Score a provider on labelled records.
    Evaluate {
        #[command(flatten)]
        provider: ProviderArgs,
        #[arg(long)]
        records: PathBuf,
        #[arg(long)]
        model_id: Option<String>,
        #[arg(long)]
        dataset_id: Option<String>,
        #[arg(long, default_value = "report.json")]
        output: String,
    },
    /// Difference of the misprediction-distance histograms of two reports.
    Compare {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long, default_value = "histogram_diff.tsv")]
        output: String,
    },
    /// Train and evaluate one topology model per K on a shared split.
    Sweep(SweepArgs),
}

#[derive(Debug, Args)]
pub struct SynthArgs {
    #[arg(long, default_value_t = 150)]
    pub vertices: usize,
    #[arg(long, default_value_t = 6)]
    pub max_children: usize,
    #[arg(long, default_value_t = 3)]
    pub max_depth: usize,
    #[arg(long, default_value_t = 6)]
    pub configs: usize,
    #[arg(long, default_value_t = 4)]
    pub records_per_vertex: usize,
    #[arg(long, default_value_t = 0.3)]
    pub synonym_p: f64,
    #[arg(long, default_value_t = 0.2)]
    pub drop_p: f64,
    #[arg(long, default_value_t = 0.1)]
    pub abbrev_p: f64,
    #[arg(long, default_value_t = 0.9)]
    pub train_fraction: f64,
    #[arg(long, default_value = "record")]
    pub split_by: SplitBy,
}

#[derive(Debug, Args)]
pub struct TrainOpts {
    #[arg(long, default_value_t = 1)]
    pub epochs: usize,
    #[arg(long, default_value_t = 64)]
    pub batch_size: usize,
    #[arg(long, default_value_t = 1e-2)]
    pub lr: f64,
    #[arg(long, default_value_t = 0.05)]
    pub warmup: f64,
    #[arg(long, default_value_t = 20.0)]
    pub scale: f64,
    #[arg(long, default_value_t = DEFAULT_DIM)]
    pub dim: usize,
    #[arg(long, default_value_t = 0)]
    pub model_seed: u64,
}

impl TrainOpts {
    fn config(&self, loss: LossKind, seed: u64) -> TrainConfig {
        TrainConfig {
            epochs: self.epochs,
            batch_size: self.batch_size,
            learning_rate: self.lr,
            warmup_fraction: self.warmup,
            mnrl_scale: self.scale,
            loss,
            seed,
            ..Default::default()
        }
    }
}

#[derive(Debug, Args)]
pub struct TrainArgs {
    #[arg(long)]
    pub data: PathBuf,
    #[arg(long, default_value = "cosine")]
    pub loss: LossKind,
    #[command(flatten)]
    pub opts: TrainOpts,
    #[arg(long, default_value = "model.json")]
    pub output: String,
}

#[derive(Debug, Args)]
pub struct ProviderArgs {
    #[arg(long, required = true, num_args = 1..)]
    pub coa: Vec<PathBuf>,
    /// Trained model checkpoint.
    #[arg(long, conflicts_with = "vectors", required_unless_present = "vectors")]
    pub model: Option<PathBuf>,
    /// Precomputed embedding-vector file.
    #[arg(long)]
    pub vectors: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[arg(long, required = true, num_args = 1..)]
    pub coa: Vec<PathBuf>,
    #[arg(long)]
    pub records: PathBuf,
    #[arg(long, value_delimiter = ',', default_value = "5,10,15,20")]
    pub k: Vec<usize>,
    #[arg(long, default_value_t = 0.9)]
    pub train_fraction: f64,
    #[arg(long, default_value = "record")]
    pub split_by: SplitBy,
    #[command(flatten)]
    pub opts: TrainOpts,
    /// Also train the in-batch ranking baseline for this many epochs.
    #[arg(long)]
    pub baseline_epochs: Option<usize>,
}

enum Provider {
    Model(EmbeddingModel),
    Vectors(ExternalEmbeddings),
}

impl Provider {
    fn load(args: &ProviderArgs) -> anyhow::Result<(Self, PathBuf)> {
        if let Some(p) = &args.model {
            let model = EmbeddingModel::load(BufReader::new(open(p)?))
                .with_context(|| format!("loading model {}", p.display()))?;
            Ok((Provider::Model(model), p.clone()))
        } else if let Some(p) = &args.vectors {
            let vectors =
                ExternalEmbeddings::read(BufReader::new(open(p)?), &p.display().to_string())
                    .with_context(|| format!("loading vectors {}", p.display()))?;
            Ok((Provider::Vectors(vectors), p.clone()))
        } else {
            bail!("one of --model or --vectors is required")
        }
    }

    fn as_embedder(&self) -> &dyn Embedder {
        match self {
            Provider::Model(m) => m,
            Provider::Vectors(v) => v,
        }
    }
}

fn open(path: &Path) -> anyhow::Result<File> {
    File::open(path).with_context(|| format!("opening {}", path.display()))
}

fn create(path: &Path) -> anyhow::Result<BufWriter<File>> {
    Ok(BufWriter::new(
        File::create(path).with_context(|| format!("creating {}", path.display()))?,
    ))
}

fn stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "unnamed".into())
}

fn load_catalog(paths: &[PathBuf]) -> anyhow::Result<Catalog> {
    let mut catalog = Catalog::new();
    for p in paths {
        let tree =
            parse_coa(BufReader::new(open(p)?)).with_context(|| format!("coa {}", p.display()))?;
        catalog.insert(tree)?;
    }
    Ok(catalog)
}

fn load_records(
    path: &Path,
    catalog: &Catalog,
) -> anyhow::Result<Vec<crate::augment::MappingRecord>> {
    Ok(read_records(
        BufReader::new(open(path)?),
        catalog,
        &path.display().to_string(),
    )?)
}

/// Parses `argv` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e:#}");
            1
        }
    }
}

pub fn execute(cli: &Cli) -> anyhow::Result<()> {
    fs::create_dir_all(&cli.out_dir)
        .with_context(|| format!("creating {}", cli.out_dir.display()))?;
    let out = |name: &str| cli.out_dir.join(name);
    let say = |msg: String| {
        if !cli.quiet {
            println!("{msg}");
        }
    };

    match &cli.command {
        Command::Validate { coa } => {
            let mut m = ManifestBuilder::new("validate", json!({ "coa": coa }));
            m.input(coa);
            let tree = parse_coa(BufReader::new(open(coa)?))
                .with_context(|| format!("coa {}", coa.display()))?;
            // validation output is the one line every caller wants, even when quiet
            println!(
                "config {}: n={} diameter={}",
                tree.config_id(),
                tree.len(),
                tree.diameter()
            );
            m.finish(&cli.out_dir)?;
        }

        Command::Distances { coa } => {
            let mut m = ManifestBuilder::new("distances", json!({ "coa": coa }));
            m.input(coa);
            let catalog = load_catalog(std::slice::from_ref(coa))?;
            let (id, entry) = catalog.iter().next().expect("one tree loaded");
            let d_path = out(&format!("{id}.distances.tsv"));
            let s_path = out(&format!("{id}.similarity.tsv"));
            let mut w = create(&d_path)?;
            write_matrix_tsv(&entry.tree, entry.distances.as_slice(), &mut w)?;
            w.flush()?;
            let mut w = create(&s_path)?;
            write_matrix_tsv(&entry.tree, entry.similarity.as_slice(), &mut w)?;
            w.flush()?;
            m.output(&d_path).output(&s_path);
            say(format!(
                "wrote {} and {}",
                d_path.display(),
                s_path.display()
            ));
            m.finish(&cli.out_dir)?;
        }

        Command::Synth(a) => {
            let cfg = SynthConfig {
                n_vertices: a.vertices,
                max_children: a.max_children,
                max_depth: a.max_depth,
                synonym_p: a.synonym_p,
                drop_p: a.drop_p,
                abbreviation_p: a.abbrev_p,
                records_per_vertex: a.records_per_vertex,
                seed: cli.seed,
                ..Default::default()
            };
            let mut m = ManifestBuilder::new(
                "synth",
                json!({
                    "vertices": a.vertices, "max_children": a.max_children, "max_depth": a.max_depth,
                    "configs": a.configs,
                    "records_per_vertex": a.records_per_vertex, "synonym_p": a.synonym_p,
                    "drop_p": a.drop_p, "abbrev_p": a.abbrev_p,
                    "train_fraction": a.train_fraction, "split_by": a.split_by,
                }),
            );
            m.seed("seed", cli.seed);
            let (trees, records) = generate_suite(&cfg, a.configs)?;
            for t in &trees {
                let p = out(&format!("coa_{}.json", t.config_id()));
                let mut w = create(&p)?;
                t.write_json(&mut w)?;
                w.flush()?;
                m.output(&p);
            }
            let catalog = Catalog::from_trees(trees)?;
            let (train, test) = split_records(&records, a.train_fraction, cli.seed, a.split_by)?;
            for (name, recs) in [
                ("records.tsv", &records),
                ("train.tsv", &train),
                ("test.tsv", &test),
            ] {
                let p = out(name);
                let mut w = create(&p)?;
                write_records(recs, &catalog, &mut w)?;
                w.flush()?;
                m.output(&p);
            }
            say(format!(
                "{} configs, {} records ({} train / {} test)",
                catalog.len(),
                records.len(),
                train.len(),
                test.len()
            ));
            m.finish(&cli.out_dir)?;
        }

        Command::Augment {
            coa,
            records,
            k,
            output,
        } => {
            let mut m =
                ManifestBuilder::new("augment", json!({ "coa": coa, "records": records, "k": k }));
            coa.iter().for_each(|c| {
                m.input(c);
            });
            m.input(records).seed("seed", cli.seed);
            let catalog = load_catalog(coa)?;
            let recs = load_records(records, &catalog)?;
            let data = build_augmented(&recs, &catalog, *k, cli.seed)?;
            let p = out(output);
            let mut w = create(&p)?;
            write_samples(&data.samples, &mut w)?;
            w.flush()?;
            m.output(&p);
            say(format!(
                "{} samples ({} positive, {} negative)",
                data.len(),
                data.positives().len(),
                data.negatives().len()
            ));
            m.finish(&cli.out_dir)?;
        }

        Command::Train(a) => {
            let cfg = a.opts.config(a.loss, cli.seed);
            let mut m = ManifestBuilder::new(
                "train",
                json!({ "data": a.data, "train": cfg, "dim": a.opts.dim }),
            );
            m.input(&a.data)
                .seed("seed", cli.seed)
                .seed("model_seed", a.opts.model_seed);
            let samples = read_samples(
                BufReader::new(open(&a.data)?),
                &a.data.display().to_string(),
            )?;
            let texts = samples
                .iter()
                .flat_map(|s| [s.description.as_str(), s.label.as_str()]);
            let vocab = match a.loss {
                LossKind::CosineRegression => Vocabulary::from_texts(texts),
                LossKind::MultipleNegativesRanking => Vocabulary::from_texts(
                    samples
                        .iter()
                        .filter(|s| s.polarity == Polarity::Positive)
                        .flat_map(|s| [s.description.as_str(), s.label.as_str()]),
                ),
            };
            let mut model = EmbeddingModel::new(vocab, a.opts.dim, a.opts.model_seed)?;
            let report = match a.loss {
                LossKind::CosineRegression => train_cosine_regression(&mut model, &samples, &cfg)?,
                LossKind::MultipleNegativesRanking => train_mnrl(&mut model, &samples, &cfg)?,
            };
            let p = out(&a.output);
            let mut w = create(&p)?;
            model.save(&mut w)?;
            w.flush()?;
            let trace = out(&format!("{}.losses.tsv", stem(&p)));
            let mut w = create(&trace)?;
            for (i, l) in report.batch_losses.iter().enumerate() {
                writeln!(w, "{i}\t{l}")?;
            }
            w.flush()?;
            m.output(&p).output(&trace);
            say(format!(
                "{} batches, first loss {:.6}, final-epoch mean {:.6}",
                report.batch_losses.len(),
                report.batch_losses[0],
                report.final_epoch_mean()
            ));
            m.finish(&cli.out_dir)?;
        }

        Command::Map {
            provider,
            records,
            top_k,
            output,
        } => {
            let mut m = ManifestBuilder::new("map", json!({ "records": records, "top_k": top_k }));
            let catalog = load_catalog(&provider.coa)?;
            let (prov, src) = Provider::load(provider)?;
            provider.coa.iter().for_each(|c| {
                m.input(c);
            });
            m.input(&src).input(records);
            let recs = load_records(records, &catalog)?;
            let indexes = build_indexes(prov.as_embedder(), &catalog)?;
            let preds = map_records(&indexes, prov.as_embedder(), &recs, *top_k)?;
            let p = out(output);
            let mut w = create(&p)?;
            write_predictions(&preds, &catalog, &mut w)?;
            w.flush()?;
            m.output(&p);
            say(format!("mapped {} descriptions", preds.len()));
            m.finish(&cli.out_dir)?;
        }

        Command::Evaluate {
            provider,
            records,
            model_id,
            dataset_id,
            output,
        } => {
            let mut m = ManifestBuilder::new("evaluate", json!({ "records": records }));
            let catalog = load_catalog(&provider.coa)?;
            let (prov, src) = Provider::load(provider)?;
            provider.coa.iter().for_each(|c| {
                m.input(c);
            });
            m.input(&src).input(records);
            let recs = load_records(records, &catalog)?;
            let model_id = model_id.clone().unwrap_or_else(|| stem(&src));
            let dataset_id = dataset_id.clone().unwrap_or_else(|| stem(records));
            let report =
                evaluate_provider(prov.as_embedder(), &catalog, &recs, &model_id, &dataset_id)?;
            let p = out(output);
            let mut w = create(&p)?;
            report.write_json(&mut w)?;
            w.flush()?;
            m.output(&p);
            say(report.to_string());
            m.finish(&cli.out_dir)?;
        }

        Command::Compare { a, b, output } => {
            let mut m = ManifestBuilder::new("compare", json!({ "a": a, "b": b }));
            m.input(a).input(b);
            let ra = EvalReport::read_json(BufReader::new(open(a)?))?;
            let rb = EvalReport::read_json(BufReader::new(open(b)?))?;
            let diff = histogram_diff(&ra.md_histogram, &rb.md_histogram)?;
            let p = out(output);
            let mut w = create(&p)?;
            writeln!(w, "distance\t{}\t{}\tdifference", ra.model_id, rb.model_id)?;
            for (d, delta) in &diff {
                let ca = ra.md_histogram.get(d).copied().unwrap_or(0);
                let cb = rb.md_histogram.get(d).copied().unwrap_or(0);
                writeln!(w, "{d}\t{ca}\t{cb}\t{delta:+}")?;
            }
            w.flush()?;
            m.output(&p);
            say(comparison_table(&[ra, rb]));
            for (d, delta) in &diff {
                say(format!("MD {d:>3}: {delta:+}"));
            }
            m.finish(&cli.out_dir)?;
        }

        Command::Sweep(a) => {
            let topology = a.opts.config(LossKind::CosineRegression, cli.seed);
            let baseline = a.baseline_epochs.map(|epochs| TrainConfig {
                epochs,
                ..a.opts.config(LossKind::MultipleNegativesRanking, cli.seed)
            });
            let cfg = SweepConfig {
                ks: a.k.clone(),
                train_fraction: a.train_fraction,
                split_by: a.split_by,
                seed: cli.seed,
                model: ModelSpec {
                    dim: a.opts.dim,
                    seed: a.opts.model_seed,
                },
                topology,
                baseline,
            };
            let mut m = ManifestBuilder::new("sweep", serde_json::to_value(&cfg)?);
            a.coa.iter().for_each(|c| {
                m.input(c);
            });
            m.input(&a.records)
                .seed("seed", cli.seed)
                .seed("model_seed", a.opts.model_seed);
            let catalog = load_catalog(&a.coa)?;
            let recs = load_records(&a.records, &catalog)?;
            let result = run_sweep(&recs, &catalog, &cfg, &stem(&a.records))?;
            for r in result.reports.iter().chain(result.baseline.iter()) {
                let p = out(&format!("report_{}.json", r.model_id.replace('@', "_k")));
                let mut w = create(&p)?;
                r.write_json(&mut w)?;
                w.flush()?;
                m.output(&p);
            }
            let mut all = result.reports.clone();
            all.extend(result.baseline.clone());
            let table = comparison_table(&all);
            let p = out("sweep.txt");
            fs::write(&p, &table).with_context(|| format!("writing {}", p.display()))?;
            m.output(&p);
            say(table);
            say(format!(
                "accuracy monotone in K: {}",
                if result.accuracy_monotone() {
                    "yes"
                } else {
                    "no"
                }
            ));
            m.finish(&cli.out_dir)?;
        }
    }
    Ok(())
}
