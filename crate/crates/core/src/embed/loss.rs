//! Batch losses and their analytic gradients with respect to the token table.
//!
//! Gradients are accumulated into a dense buffer laid out like
//! [`EmbeddingModel::table`].

use super::{cosine, EmbeddingModel};

/// A (description, label) pair already mapped to token ids.
#[derive(Debug, Clone, PartialEq)]
pub struct EncodedPair {
    pub anchor: Vec<usize>,
    pub other: Vec<usize>,
    pub target: f64,
}

impl EncodedPair {
    pub fn new(model: &EmbeddingModel, anchor: &str, other: &str, target: f64) -> Self {
        EncodedPair {
            anchor: model.encode(anchor),
            other: model.encode(other),
            target,
        }
    }
}

/// Cosine of `a` and `b` with its partial derivatives.
///
/// At a zero vector the cosine is defined as 0 and both partials are 0.
fn cosine_with_grad(a: &[f64], b: &[f64]) -> (f64, Vec<f64>, Vec<f64>) {
    let c = cosine(a, b);
    let na = a.iter().map(|x| x * x).sum::<f64>().sqrt();
    let nb = b.iter().map(|x| x * x).sum::<f64>().sqrt();
    if na == 0.0 || nb == 0.0 {
        return (0.0, vec![0.0; a.len()], vec![0.0; b.len()]);
    }
    let da = a
        .iter()
        .zip(b)
        .map(|(x, y)| y / (na * nb) - c * x / (na * na))
        .collect();
    let db = a
        .iter()
        .zip(b)
        .map(|(x, y)| x / (na * nb) - c * y / (nb * nb))
        .collect();
    (c, da, db)
}

/// Spreads a gradient on a pooled vector back over its token rows.
fn backprop_pool(grad: &mut [f64], dim: usize, ids: &[usize], g: &[f64], weight: f64) {
    if ids.is_empty() {
        return;
    }
    let w = weight / ids.len() as f64;
    for &id in ids {
        let row = &mut grad[id * dim..(id + 1) * dim];
        for (r, x) in row.iter_mut().zip(g) {
            *r += w * x;
        }
    }
}

/// Mean of `(cos(anchor, other) - target)^2` over the batch.
pub fn cosine_regression(
    model: &EmbeddingModel,
    batch: &[EncodedPair],
    mut grad: Option<&mut [f64]>,
) -> f64 {
    if batch.is_empty() {
        return 0.0;
    }
    let dim = model.dim();
    let scale = 1.0 / batch.len() as f64;
    let mut total = 0.0;
    for pair in batch {
        let a = model.pool(&pair.anchor);
        let b = model.pool(&pair.other);
        let (c, da, db) = cosine_with_grad(&a, &b);
        let residual = c - pair.target;
        total += residual * residual;
        if let Some(g) = grad.as_deref_mut() {
            let w = 2.0 * residual * scale;
            backprop_pool(g, dim, &pair.anchor, &da, w);
            backprop_pool(g, dim, &pair.other, &db, w);
        }
    }
    total * scale
}

/// Multiple-negatives ranking loss with in-batch negatives.
///
/// Row `i` of the score matrix is `scale * cos(anchor_i, other_j)` over all
/// `j`; the loss is the mean cross-entropy with `j = i` as the correct class.
/// Targets are ignored.
pub fn multiple_negatives_ranking(
    model: &EmbeddingModel,
    batch: &[EncodedPair],
    scale: f64,
    grad: Option<&mut [f64]>,
) -> f64 {
    let n = batch.len();
    if n == 0 {
        return 0.0;
    }
    let dim = model.dim();
    let anchors: Vec<Vec<f64>> = batch.iter().map(|p| model.pool(&p.anchor)).collect();
    let others: Vec<Vec<f64>> = batch.iter().map(|p| model.pool(&p.other)).collect();
    let mut total = 0.0;
    let mut d_anchor = vec![vec![0.0; dim]; n];
    let mut d_other = vec![vec![0.0; dim]; n];

    for i in 0..n {
        let parts: Vec<(f64, Vec<f64>, Vec<f64>)> = others
            .iter()
            .map(|o| cosine_with_grad(&anchors[i], o))
            .collect();
        let scores: Vec<f64> = parts.iter().map(|p| scale * p.0).collect();
        let max = scores.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let sum: f64 = scores.iter().map(|s| (s - max).exp()).sum();
        let lse = max + sum.ln();
        total += lse - scores[i];

        if grad.is_some() {
            for (j, (_, da, db)) in parts.iter().enumerate() {
                let p = (scores[j] - lse).exp();
                let dl = (p - if i == j { 1.0 } else { 0.0 }) * scale / n as f64;
                for k in 0..dim {
                    d_anchor[i][k] += dl * da[k];
                    d_other[j][k] += dl * db[k];
                }
            }
        }
    }

    if let Some(g) = grad {
        for (i, pair) in batch.iter().enumerate() {
            backprop_pool(g, dim, &pair.anchor, &d_anchor[i], 1.0);
            backprop_pool(g, dim, &pair.other, &d_other[i], 1.0);
        }
    }
    total / n as f64
}
