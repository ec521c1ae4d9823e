//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Runs without the libtest harness so every line prints even when an
//! earlier criterion fails; the process exits non-zero if any fails.
//!
//! ```bash
//! cargo test --release -p ledgermap --test acceptance
//! ```

mod common;

use std::collections::BTreeMap;
use std::panic::{self, AssertUnwindSafe};
use std::path::Path;
use std::time::{Duration, Instant};

use common::{median, random_document, FloydWarshall};
use ledgermap::augment::{build_augmented, write_samples, MappingRecord, Polarity};
use ledgermap::coa::{distance_matrix, similarity_matrix, CoaDocument, CoaNode};
use ledgermap::embed::loss::{cosine_regression, multiple_negatives_ranking, EncodedPair};
use ledgermap::embed::{
    Embedder, EmbeddingModel, ExternalEmbeddings, LossKind, TrainConfig, Vocabulary,
};
use ledgermap::eval::{evaluate, histogram_diff, EvalReport, Histogram};
use ledgermap::experiment::{
    evaluate_provider, split_records, train_baseline, train_topology, ModelSpec, SplitBy,
};
use ledgermap::mapper::{
    build_index, build_indexes, map_description, map_records, Candidate, Prediction,
};
use ledgermap::synth::{generate_coa, generate_records, generate_suite, SynthConfig};
use ledgermap::{cli, Catalog, CoaTree, VertexId};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within_time(started: Instant, limit: Duration) -> Result<Duration, String> {
    let took = started.elapsed();
    ensure(took < limit, || format!("took {took:.1?}, limit {limit:?}"))?;
    Ok(took)
}

/// 1. Distance and similarity matrices against Floyd-Warshall.
fn distances_match_oracle() -> Outcome {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst = 0.0f64;
    for t in 0..100 {
        let n = rng.gen_range(2..=50);
        let doc = random_document(&mut rng, n, &format!("t{t}"));
        let oracle = FloydWarshall::new(&doc);
        let tree = CoaTree::from_document(doc.clone()).map_err(|e| e.to_string())?;
        let d = distance_matrix(&tree);
        let s = similarity_matrix(&d).map_err(|e| e.to_string())?;
        ensure(u64::from(d.max()) == oracle.max(), || {
            format!("tree {t}: max(D) differs")
        })?;
        for a in &doc.nodes {
            let va = tree.vertex_by_external(&a.id).map_err(|e| e.to_string())?;
            for b in &doc.nodes {
                let vb = tree.vertex_by_external(&b.id).map_err(|e| e.to_string())?;
                let want = oracle.d(&a.id, &b.id);
                ensure(u64::from(d.get(va, vb)) == want, || {
                    format!(
                        "tree {t}: d({}, {}) = {} but oracle says {want}",
                        a.id,
                        b.id,
                        d.get(va, vb)
                    )
                })?;
                worst = worst.max((s.get(va, vb) - oracle.similarity(&a.id, &b.id)).abs());
            }
        }
    }
    ensure(worst <= 1e-12, || {
        format!("similarity error {worst:e} > 1e-12")
    })?;
    let took = within_time(started, Duration::from_secs(10))?;
    Ok(format!(
        "100 trees, max similarity error {worst:e}, {took:.2?}"
    ))
}

/// 2. Augmentation contract on 1,000 records.
fn augmentation_contract() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let docs: Vec<CoaDocument> = (0..5)
        .map(|c| {
            let n = rng.gen_range(25..=60);
            random_document(&mut rng, n, &format!("c{c}"))
        })
        .collect();
    let oracles: BTreeMap<String, FloydWarshall> = docs
        .iter()
        .map(|d| (d.config_id.clone(), FloydWarshall::new(d)))
        .collect();
    let trees: Vec<CoaTree> = docs
        .iter()
        .map(|d| CoaTree::from_document(d.clone()))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    let catalog = Catalog::from_trees(trees).map_err(|e| e.to_string())?;
    let records: Vec<MappingRecord> = (0..1000)
        .map(|i| {
            let doc = &docs[rng.gen_range(0..docs.len())];
            let v = VertexId::from_index(rng.gen_range(0..doc.nodes.len()));
            MappingRecord::new(format!("custom text {i}"), doc.config_id.clone(), v)
        })
        .collect();

    for k in [5, 10, 15, 20] {
        let data = build_augmented(&records, &catalog, k, 99).map_err(|e| e.to_string())?;
        ensure(data.positives().len() == records.len(), || {
            format!("K={k}: |D+| != #records")
        })?;
        ensure(data.negatives().len() == k * data.positives().len(), || {
            format!(
                "K={k}: |D-| = {} but K|D+| = {}",
                data.negatives().len(),
                k * records.len()
            )
        })?;
        for (i, r) in records.iter().enumerate() {
            let tree = catalog.tree(&r.config_id).map_err(|e| e.to_string())?;
            let oracle = &oracles[&r.config_id];
            let truth_label = tree.label(r.true_vertex).map_err(|e| e.to_string())?;
            let truth_ext = tree.external_id(r.true_vertex).map_err(|e| e.to_string())?;
            let group = data.group(i);
            ensure(
                group[0].polarity == Polarity::Positive && group[0].label == truth_label,
                || format!("record {i}: group does not start with its positive"),
            )?;
            for s in &group[1..] {
                ensure(s.polarity == Polarity::Negative, || {
                    format!("record {i}: group holds a positive")
                })?;
                ensure(s.label != truth_label, || {
                    format!("K={k}, record {i}: negative equals the true label")
                })?;
                let v = tree
                    .vertex_by_label(&s.label)
                    .ok_or_else(|| format!("unknown label {}", s.label))?;
                let ext = tree.external_id(v).map_err(|e| e.to_string())?;
                let want = oracle.similarity(truth_ext, ext);
                ensure(s.target == want, || {
                    format!("K={k}, record {i}: target {} != oracle {want}", s.target)
                })?;
            }
        }
        let render = |seed| -> Result<Vec<u8>, String> {
            let data = build_augmented(&records, &catalog, k, seed).map_err(|e| e.to_string())?;
            let mut buf = Vec::new();
            write_samples(&data.samples, &mut buf).map_err(|e| e.to_string())?;
            Ok(buf)
        };
        ensure(render(7)? == render(7)?, || {
            format!("K={k}: same seed gave different bytes")
        })?;
    }
    Ok("K in {5,10,15,20}: sizes, exclusion, exact targets, byte-identical reruns".into())
}

/// Largest relative error between analytic and central-difference gradients.
fn gradient_error(
    loss: &dyn Fn(&EmbeddingModel, Option<&mut [f64]>) -> f64,
    model: &mut EmbeddingModel,
) -> f64 {
    let h = 1e-5;
    let mut analytic = vec![0.0; model.table().len()];
    loss(model, Some(&mut analytic));
    let mut worst = 0.0f64;
    for (i, &a) in analytic.iter().enumerate() {
        let orig = model.table()[i];
        model.table_mut()[i] = orig + h;
        let up = loss(model, None);
        model.table_mut()[i] = orig - h;
        let down = loss(model, None);
        model.table_mut()[i] = orig;
        let numeric = (up - down) / (2.0 * h);
        let scale = a.abs().max(numeric.abs());
        // both vanish: the parameter does not touch the loss
        let err = if scale < 1e-10 {
            0.0
        } else {
            (a - numeric).abs() / scale
        };
        worst = worst.max(err);
    }
    worst
}

/// 3. Analytic gradients of both losses against finite differences.
fn gradients_match_finite_differences() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let vocab = Vocabulary::from_texts(["cash rent fuel wages"]);
    ensure(vocab.len() == 5, || {
        format!("vocabulary has {} tokens", vocab.len())
    })?;
    let texts = [
        "cash",
        "rent fuel",
        "wages cash",
        "fuel",
        "rent wages cash",
        "unseen rent",
    ];
    let mut worst = (0.0f64, 0.0f64);
    for _ in 0..20 {
        let table: Vec<f64> = (0..5 * 4).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let mut model =
            EmbeddingModel::from_table(vocab.clone(), 4, table).map_err(|e| e.to_string())?;
        let batch: Vec<EncodedPair> = (0..4)
            .map(|_| {
                let a = texts.choose(&mut rng).unwrap();
                let b = texts.choose(&mut rng).unwrap();
                EncodedPair::new(&model, a, b, rng.gen_range(0.0..1.0))
            })
            .collect();
        let reg = gradient_error(&|m, g| cosine_regression(m, &batch, g), &mut model);
        let rank = gradient_error(
            &|m, g| multiple_negatives_ranking(m, &batch, 20.0, g),
            &mut model,
        );
        worst = (worst.0.max(reg), worst.1.max(rank));
    }
    ensure(worst.0 <= 1e-4 && worst.1 <= 1e-4, || {
        format!(
            "relative error regression {:e}, ranking {:e} > 1e-4",
            worst.0, worst.1
        )
    })?;
    Ok(format!(
        "20 points, max relative error regression {:e}, ranking {:e}",
        worst.0, worst.1
    ))
}

/// 4. Noise-free records map back onto their own labels.
fn identity_sanity() -> Outcome {
    let started = Instant::now();
    let cfg = SynthConfig {
        n_vertices: 100,
        records_per_vertex: 1,
        seed: 4,
        ..Default::default()
    }
    .noiseless();
    let tree = generate_coa(&cfg, "id").map_err(|e| e.to_string())?;
    let records = generate_records(&tree, &cfg).map_err(|e| e.to_string())?;
    let catalog = Catalog::from_trees([tree]).map_err(|e| e.to_string())?;
    let train = TrainConfig {
        epochs: 5,
        seed: 4,
        loss: LossKind::CosineRegression,
        ..Default::default()
    };
    let (model, trace) = train_topology(
        &records,
        &catalog,
        5,
        4,
        ModelSpec { dim: 64, seed: 4 },
        &train,
    )
    .map_err(|e| e.to_string())?;
    let report = evaluate_provider(&model, &catalog, &records, "identity", "noiseless")
        .map_err(|e| e.to_string())?;
    ensure(report.accuracy >= 0.99 && report.mrr >= 0.99, || {
        format!("{report}")
    })?;
    let took = within_time(started, Duration::from_secs(60))?;
    Ok(format!(
        "Acc {:.4}, MRR {:.4}, final loss {:.2e}, {took:.2?}",
        report.accuracy,
        report.mrr,
        trace.final_epoch_mean()
    ))
}

fn candidate(v: usize, score: f64) -> Candidate {
    Candidate {
        vertex: VertexId::from_index(v),
        label: format!("l{v}"),
        score,
    }
}

/// Full ranking of a tree's vertices in random order.
fn random_prediction<R: Rng>(
    rng: &mut R,
    config: &str,
    n: usize,
    hit: bool,
    truth: usize,
) -> Prediction {
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    if hit {
        let at = order.iter().position(|&v| v == truth).unwrap();
        order.swap(0, at);
    }
    Prediction {
        description: "q".into(),
        config_id: config.into(),
        candidates: order
            .iter()
            .enumerate()
            .map(|(r, &v)| candidate(v, 1.0 - r as f64 / n as f64))
            .collect(),
    }
}

/// Brute-force metrics: (acc, mrr, mmd, mod, histogram).
fn oracle_metrics(
    preds: &[Prediction],
    truths: &[VertexId],
    oracles: &BTreeMap<String, (FloydWarshall, CoaDocument)>,
) -> (f64, f64, Option<f64>, f64, Histogram) {
    let n = preds.len() as f64;
    let mut hits = 0.0;
    let mut rr = 0.0;
    let mut mds = Vec::new();
    for (p, t) in preds.iter().zip(truths) {
        let (fw, doc) = &oracles[&p.config_id];
        // synthetic fixtures use vertex i for document node i
        let top = p.candidates[0].vertex.index();
        let md = fw.d(&doc.nodes[top].id, &doc.nodes[t.index()].id);
        if md == 0 {
            hits += 1.0;
        }
        let rank = p.candidates.iter().position(|c| c.vertex == *t).unwrap() + 1;
        rr += 1.0 / rank as f64;
        mds.push(md);
    }
    let wrong: Vec<u64> = mds.iter().copied().filter(|&d| d > 0).collect();
    let mmd = (!wrong.is_empty()).then(|| wrong.iter().sum::<u64>() as f64 / wrong.len() as f64);
    let mod_ = mds.iter().sum::<u64>() as f64 / n;
    let mut hist = Histogram::new();
    for d in mds {
        *hist.entry(d as u32).or_insert(0) += 1;
    }
    (hits / n, rr / n, mmd, mod_, hist)
}

fn path_tree(n: usize, config: &str) -> CoaDocument {
    CoaDocument {
        config_id: config.into(),
        nodes: (0..n)
            .map(|i| CoaNode {
                id: (i + 1).to_string(),
                parent: (i > 0).then(|| i.to_string()),
                label: format!("l{i}"),
            })
            .collect(),
    }
}

/// Checks MOD = MMD * n_mis / n without rounding: both must be the
/// correctly rounded quotients of one shared integer numerator.
fn identity_exact(r: &EvalReport) -> Result<(), String> {
    let s: u64 = r.md_histogram.iter().map(|(&d, &c)| u64::from(d) * c).sum();
    ensure(r.mod_ == s as f64 / r.n_instances as f64, || {
        format!("MOD {} != {s}/{}", r.mod_, r.n_instances)
    })?;
    match r.mmd {
        None => ensure(r.n_mispredictions == 0 && s == 0, || {
            "MMD absent with mispredictions".into()
        }),
        Some(m) => {
            ensure(m == s as f64 / r.n_mispredictions as f64, || {
                format!("MMD {m} != {s}/{}", r.n_mispredictions)
            })?;
            let product = m * r.n_mispredictions as f64 / r.n_instances as f64;
            ensure(
                (product - r.mod_).abs() <= 4.0 * f64::EPSILON * r.mod_.max(1.0),
                || format!("MMD*nmis/n = {product} vs MOD {}", r.mod_),
            )
        }
    }
}

/// 5. Metric suite against brute-force recomputation.
fn metric_oracles() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for f in 0..100 {
        let mut docs = Vec::new();
        for c in 0..rng.gen_range(1..=3) {
            let n = rng.gen_range(2..=30);
            let mut doc = random_document(&mut rng, n, &format!("f{c}"));
            // keep vertex i at node i so the oracle can index by position
            let tree = CoaTree::from_document(doc.clone()).map_err(|e| e.to_string())?;
            doc = tree.to_document();
            docs.push(doc);
        }
        let oracles: BTreeMap<String, (FloydWarshall, CoaDocument)> = docs
            .iter()
            .map(|d| (d.config_id.clone(), (FloydWarshall::new(d), d.clone())))
            .collect();
        let catalog = Catalog::from_trees(
            docs.iter()
                .map(|d| CoaTree::from_document(d.clone()).unwrap()),
        )
        .map_err(|e| e.to_string())?;
        let hit_rate: f64 = rng.gen_range(0.0..1.0);
        let mut preds = Vec::new();
        let mut truths = Vec::new();
        for _ in 0..rng.gen_range(1..=40) {
            let doc = &docs[rng.gen_range(0..docs.len())];
            let t = rng.gen_range(0..doc.nodes.len());
            let hit = rng.gen_bool(hit_rate);
            preds.push(random_prediction(
                &mut rng,
                &doc.config_id,
                doc.nodes.len(),
                hit,
                t,
            ));
            truths.push(VertexId::from_index(t));
        }
        let r = evaluate(&preds, &truths, &catalog, "m", "d").map_err(|e| e.to_string())?;
        let (acc, mrr, mmd, mod_, hist) = oracle_metrics(&preds, &truths, &oracles);
        let close = |a: f64, b: f64| (a - b).abs() <= 1e-12;
        ensure(close(r.accuracy, acc), || {
            format!("fixture {f}: accuracy {} vs {acc}", r.accuracy)
        })?;
        ensure(close(r.mrr, mrr), || {
            format!("fixture {f}: MRR {} vs {mrr}", r.mrr)
        })?;
        ensure(close(r.mod_, mod_), || {
            format!("fixture {f}: MOD {} vs {mod_}", r.mod_)
        })?;
        ensure(
            match (r.mmd, mmd) {
                (Some(a), Some(b)) => close(a, b),
                (None, None) => true,
                _ => false,
            },
            || format!("fixture {f}: MMD {:?} vs {mmd:?}", r.mmd),
        )?;
        ensure(r.md_histogram == hist, || {
            format!("fixture {f}: histogram differs")
        })?;
        identity_exact(&r).map_err(|e| format!("fixture {f}: {e}"))?;

        // difference against a second random histogram over as many instances
        let mut other = Histogram::new();
        for _ in 0..preds.len() {
            *other.entry(rng.gen_range(0..8)).or_insert(0) += 1;
        }
        let diff = histogram_diff(&r.md_histogram, &other).map_err(|e| e.to_string())?;
        for d in hist.keys().chain(other.keys()) {
            let want = *hist.get(d).unwrap_or(&0) as i64 - *other.get(d).unwrap_or(&0) as i64;
            ensure(diff.get(d).copied().unwrap_or(0) == want, || {
                format!("fixture {f}: diff at {d}")
            })?;
        }
        ensure(diff.values().sum::<i64>() == 0, || {
            format!("fixture {f}: diff does not sum to 0")
        })?;
    }

    // worked fixture: two correct, two off by 2 and 4 edges
    let doc = path_tree(5, "p");
    let catalog = Catalog::from_trees([CoaTree::from_document(doc).map_err(|e| e.to_string())?])
        .map_err(|e| e.to_string())?;
    let top = |v: usize| Prediction {
        description: "q".into(),
        config_id: "p".into(),
        candidates: (0..5)
            .map(|i| (i + v) % 5)
            .map(|i| candidate(i, 0.0))
            .collect(),
    };
    let preds = [top(0), top(0), top(2), top(4)];
    let truths = [VertexId::from_index(0); 4];
    let r = evaluate(&preds, &truths, &catalog, "worked", "fixture").map_err(|e| e.to_string())?;
    ensure(r.mmd == Some(3.0) && r.mod_ == 1.5, || {
        format!("worked fixture gave MMD {:?}, MOD {}", r.mmd, r.mod_)
    })?;
    identity_exact(&r)?;
    Ok(
        "100 fixtures within 1e-12, shared-numerator identity, worked fixture MMD 3.0 / MOD 1.5"
            .into(),
    )
}

/// 6. Topology-aware model vs. the ranking baseline, medians over 5 seeds.
fn topology_trend() -> Outcome {
    let started = Instant::now();
    let k = 20;
    let (mut topo, mut base) = (Vec::new(), Vec::new());
    for seed in 0..5u64 {
        let synth = SynthConfig {
            n_vertices: 150,
            seed,
            ..Default::default()
        };
        let (trees, records) = generate_suite(&synth, 6).map_err(|e| e.to_string())?;
        let catalog = Catalog::from_trees(trees).map_err(|e| e.to_string())?;
        let (train, test) =
            split_records(&records, 0.9, seed, SplitBy::Record).map_err(|e| e.to_string())?;
        let spec = ModelSpec { dim: 64, seed };
        let cfg = TrainConfig {
            seed,
            ..Default::default()
        };
        let (m, _) =
            train_topology(&train, &catalog, k, seed, spec, &cfg).map_err(|e| e.to_string())?;
        topo.push(
            evaluate_provider(&m, &catalog, &test, "topology@20", "synthetic")
                .map_err(|e| e.to_string())?,
        );
        let (m, _) = train_baseline(&train, &catalog, spec, &cfg).map_err(|e| e.to_string())?;
        base.push(
            evaluate_provider(&m, &catalog, &test, "mnrl-baseline", "synthetic")
                .map_err(|e| e.to_string())?,
        );
    }
    let med = |rs: &[EvalReport], f: fn(&EvalReport) -> f64| median(rs.iter().map(f).collect());
    let (t_mod, b_mod) = (med(&topo, |r| r.mod_), med(&base, |r| r.mod_));
    let (t_acc, b_acc) = (
        100.0 * med(&topo, |r| r.accuracy),
        100.0 * med(&base, |r| r.accuracy),
    );
    let summary = format!("MOD {t_mod:.3} vs {b_mod:.3}, Acc {t_acc:.2} vs {b_acc:.2}");
    ensure(t_mod <= b_mod, || {
        format!("topology MOD above baseline: {summary}")
    })?;
    ensure(t_acc >= b_acc - 2.0, || {
        format!("accuracy gap over 2 points: {summary}")
    })?;
    let took = within_time(started, Duration::from_secs(600))?;
    Ok(format!("{summary}, {took:.1?}"))
}

fn run_cli(args: &[&str]) -> Result<(), String> {
    let argv = std::iter::once("ledgermap").chain(args.iter().copied());
    match cli::run(argv) {
        0 => Ok(()),
        code => Err(format!("`{}` exited with {code}", args.join(" "))),
    }
}

/// 7. `sweep` over four K values writes four reports and a table.
fn sweep_harness() -> Outcome {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let out = dir.path().to_str().ok_or("non-UTF-8 temp path")?;
    run_cli(&[
        "synth",
        "--vertices",
        "40",
        "--configs",
        "2",
        "--seed",
        "7",
        "--out-dir",
        out,
        "--quiet",
    ])?;
    let coa1 = format!("{out}/coa_cfg1.json");
    let coa2 = format!("{out}/coa_cfg2.json");
    let records = format!("{out}/records.tsv");
    run_cli(&[
        "sweep",
        "--coa",
        &coa1,
        &coa2,
        "--records",
        &records,
        "--k",
        "5,10,15,20",
        "--out-dir",
        out,
        "--quiet",
    ])?;
    let mut reports = Vec::new();
    for k in [5, 10, 15, 20] {
        let path = Path::new(out).join(format!("report_topology_k{k}.json"));
        let file = std::fs::File::open(&path).map_err(|e| format!("{}: {e}", path.display()))?;
        let r = EvalReport::read_json(file).map_err(|e| e.to_string())?;
        let total: u64 = r.md_histogram.values().sum();
        ensure(r.model_id == format!("topology@{k}"), || {
            format!("model id {}", r.model_id)
        })?;
        ensure(
            (0.0..=1.0).contains(&r.accuracy) && r.mrr > 0.0 && r.mrr <= 1.0 && r.mrr >= r.accuracy,
            || format!("K={k}: Acc {} MRR {}", r.accuracy, r.mrr),
        )?;
        ensure(total == r.n_instances && r.mod_ >= 0.0, || {
            format!("K={k}: histogram total {total}")
        })?;
        ensure(r.mmd.is_some() == (r.n_mispredictions > 0), || {
            format!("K={k}: MMD presence")
        })?;
        reports.push(r);
    }
    let table =
        std::fs::read_to_string(Path::new(out).join("sweep.txt")).map_err(|e| e.to_string())?;
    ensure(table.lines().count() == 5, || {
        format!("table has {} lines", table.lines().count())
    })?;
    let monotone = reports.windows(2).all(|w| w[1].accuracy >= w[0].accuracy);
    let accs: Vec<String> = reports
        .iter()
        .map(|r| format!("{:.2}", 100.0 * r.accuracy))
        .collect();
    Ok(format!(
        "4 reports + table; Acc by K [{}], monotone: {monotone} (not asserted)",
        accs.join(", ")
    ))
}

/// 8. A query whose vector equals one label's vector ranks it first at 1.0.
fn external_vectors_exact() -> Outcome {
    let file = "dim 3\n\
                cash\t0.1 0.7 -0.3\n\
                rent expense\t0.9 0.05 0.2\n\
                fuel\t-0.4 0.3 0.8\n\
                petty cash box\t0.1 0.7 -0.3\n";
    let vectors = ExternalEmbeddings::read(file.as_bytes(), "inline").map_err(|e| e.to_string())?;
    let doc = CoaDocument {
        config_id: "x".into(),
        nodes: vec![
            CoaNode {
                id: "1".into(),
                parent: None,
                label: "rent expense".into(),
            },
            CoaNode {
                id: "2".into(),
                parent: Some("1".into()),
                label: "fuel".into(),
            },
            CoaNode {
                id: "3".into(),
                parent: Some("1".into()),
                label: "cash".into(),
            },
        ],
    };
    let tree = CoaTree::from_document(doc).map_err(|e| e.to_string())?;
    let index = build_index(&vectors, &tree).map_err(|e| e.to_string())?;
    let p = map_description(&index, &vectors, "petty cash box", 3).map_err(|e| e.to_string())?;
    ensure(p.top().label == "cash" && p.top().score == 1.0, || {
        format!("top is {} at {:e}", p.top().label, p.top().score)
    })?;
    // same result through the batch path
    let catalog = Catalog::from_trees([tree]).map_err(|e| e.to_string())?;
    let indexes = build_indexes(&vectors, &catalog).map_err(|e| e.to_string())?;
    let rec = MappingRecord::new("petty cash box", "x", VertexId::from_index(2));
    let batch = map_records(&indexes, &vectors, &[rec], None).map_err(|e| e.to_string())?;
    ensure(batch[0] == p, || "batch mapping disagrees".into())?;
    ensure(vectors.dim() == 3, || "dimension".into())?;
    Ok("query ranks its twin label first with score exactly 1.0".into())
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("distance/similarity oracle", distances_match_oracle),
        ("augmentation contract", augmentation_contract),
        ("gradient check", gradients_match_finite_differences),
        ("identity sanity", identity_sanity),
        ("metric oracle suite", metric_oracles),
        ("topology trend", topology_trend),
        ("K-sweep harness", sweep_harness),
        ("external-embedding path", external_vectors_exact),
    ];
    // keep panic messages out of the summary lines
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            Err(e
                .downcast_ref::<String>()
                .cloned()
                .unwrap_or_else(|| "panicked".into()))
        });
        match outcome {
            Ok(detail) => println!("PASS  {}. {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL  {}. {name}: {why}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
