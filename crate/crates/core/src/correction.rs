//! The two polarity-correction stages.
//!
//! **Training-set correction** scores every training sentence with the
//! sentence-level classifier and moves sentences whose prediction
//! contradicts their document label into the pool of the predicted
//! class. Sentences are moved, not copied, so the pools stay disjoint
//! and conserve the input count.
//!
//! **Consistency filtering** partitions a document's per-sentence
//! verdicts into maximal runs of identical predicted polarity and keeps
//! only runs of at least `min_run_len` sentences; shorter runs are
//! outliers and are dropped. With `min_run_len = 1` the filter is the
//! identity. A document in which no run qualifies falls back to a
//! configurable policy so it never comes out empty.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::corpus::{Polarity, ReviewDocument, Sentence};
use crate::error::{Error, Result};
use crate::naive::{NaiveSentenceModel, SentencePolarity};
use crate::textproc::Token;

/// Ordered per-sentence verdicts for one document.
pub type PolaritySequence = Vec<SentencePolarity>;

/// Policy for documents where no run reaches the minimum length.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Fallback {
    /// Keep every sentence.
    KeepAll,
    /// Keep all runs of the majority polarity (ties keep positive).
    KeepMajorityRuns,
}

impl fmt::Display for Fallback {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Fallback::KeepAll => "keep-all",
            Fallback::KeepMajorityRuns => "keep-majority-runs",
        })
    }
}

impl FromStr for Fallback {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "keep-all" | "keepall" => Ok(Fallback::KeepAll),
            "keep-majority-runs" | "keepmajorityruns" => Ok(Fallback::KeepMajorityRuns),
            other => Err(Error::Config(format!("unknown fallback policy: {other:?}"))),
        }
    }
}

/// Settings shared by both correction stages.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrectionConfig {
    /// Minimum length of a same-polarity run for its sentences to be
    /// kept; 1 makes the consistency filter the identity.
    pub min_run_len: usize,
    /// Tokens tagged after a negation word, in [1, 3].
    pub negation_window: usize,
    /// Apply training-set correction before the consistency stage.
    pub trainset_correction: bool,
    /// Retrain the sentence classifier on the corrected pools before
    /// correcting documents.
    pub retrain_after_trainset_correction: bool,
    pub fallback: Fallback,
}

impl Default for CorrectionConfig {
    fn default() -> Self {
        CorrectionConfig {
            min_run_len: 2,
            negation_window: 3,
            trainset_correction: true,
            retrain_after_trainset_correction: true,
            fallback: Fallback::KeepAll,
        }
    }
}

impl CorrectionConfig {
    pub fn validate(&self) -> Result<()> {
        if self.min_run_len < 1 {
            return Err(Error::Config(
                "minimum run length must be at least 1".into(),
            ));
        }
        if !(1..=3).contains(&self.negation_window) {
            return Err(Error::Config(format!(
                "negation window must be in [1,3], got {}",
                self.negation_window
            )));
        }
        Ok(())
    }
}

/// One maximal run of identical predicted polarity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PolarityRun {
    /// Sentence index where the run starts.
    pub start: usize,
    pub len: usize,
    pub polarity: Polarity,
}

/// Partition produced by the consistency filter.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConsistencyResult {
    pub kept: Vec<usize>,
    pub removed_outliers: Vec<usize>,
    pub runs: Vec<PolarityRun>,
}

/// Partitions the verdict sequence into maximal same-polarity runs,
/// keeping runs of at least `min_run_len` sentences. When no run
/// qualifies the fallback decides; an empty sequence yields an empty
/// result.
pub fn filter_consistent(
    seq: &[SentencePolarity],
    min_run_len: usize,
    fallback: Fallback,
) -> ConsistencyResult {
    let min_run_len = min_run_len.max(1);
    let mut runs: Vec<PolarityRun> = Vec::new();
    for verdict in seq {
        match runs.last_mut() {
            Some(run) if run.polarity == verdict.predicted => run.len += 1,
            _ => runs.push(PolarityRun {
                start: verdict.index,
                len: 1,
                polarity: verdict.predicted,
            }),
        }
    }

    let mut kept = Vec::new();
    let mut removed = Vec::new();
    let any_qualifies = runs.iter().any(|r| r.len >= min_run_len);
    if any_qualifies {
        let mut pos = 0;
        for run in &runs {
            let indices = seq[pos..pos + run.len].iter().map(|v| v.index);
            if run.len >= min_run_len {
                kept.extend(indices);
            } else {
                removed.extend(indices);
            }
            pos += run.len;
        }
    } else {
        match fallback {
            Fallback::KeepAll => kept.extend(seq.iter().map(|v| v.index)),
            Fallback::KeepMajorityRuns => {
                let n_pos = seq
                    .iter()
                    .filter(|v| v.predicted == Polarity::Positive)
                    .count();
                let majority = if n_pos * 2 >= seq.len() {
                    Polarity::Positive
                } else {
                    Polarity::Negative
                };
                for v in seq {
                    if v.predicted == majority {
                        kept.push(v.index);
                    } else {
                        removed.push(v.index);
                    }
                }
            }
        }
    }
    ConsistencyResult {
        kept,
        removed_outliers: removed,
        runs,
    }
}

/// Training sentences re-pooled by predicted polarity. Borrowed token
/// slices keep the pools cheap to build.
#[derive(Debug)]
pub struct CorrectedPools<'a> {
    pub positive: Vec<&'a [Token]>,
    pub negative: Vec<&'a [Token]>,
    /// Positive-labeled sentences that moved to the negative pool.
    pub moved_to_negative: usize,
    /// Negative-labeled sentences that moved to the positive pool.
    pub moved_to_positive: usize,
}

impl<'a> CorrectedPools<'a> {
    /// The pools as labeled sentence pairs, positives first, for
    /// retraining the sentence classifier.
    pub fn labeled(&self) -> Vec<(&'a [Token], Polarity)> {
        self.positive
            .iter()
            .map(|t| (*t, Polarity::Positive))
            .chain(self.negative.iter().map(|t| (*t, Polarity::Negative)))
            .collect()
    }
}

/// Scores each training sentence and moves those whose prediction
/// contradicts the document label into the predicted class's pool.
/// Every input sentence lands in exactly one pool; an empty output pool
/// is an error because retraining on it is undefined.
pub fn correct_training_set<'a>(
    sentences: &[(&'a [Token], Polarity)],
    model: &NaiveSentenceModel,
) -> Result<CorrectedPools<'a>> {
    let mut pools = CorrectedPools {
        positive: Vec::new(),
        negative: Vec::new(),
        moved_to_negative: 0,
        moved_to_positive: 0,
    };
    for (tokens, label) in sentences {
        let predicted = model.score_sentence(0, tokens).predicted;
        if predicted != *label {
            match predicted {
                Polarity::Positive => pools.moved_to_positive += 1,
                Polarity::Negative => pools.moved_to_negative += 1,
            }
        }
        match predicted {
            Polarity::Positive => pools.positive.push(tokens),
            Polarity::Negative => pools.negative.push(tokens),
        }
    }
    if pools.positive.is_empty() {
        return Err(Error::EmptyPool(Polarity::Positive.to_string()));
    }
    if pools.negative.is_empty() {
        return Err(Error::EmptyPool(Polarity::Negative.to_string()));
    }
    Ok(pools)
}

/// A consistency-filtered document plus the verdicts and partition that
/// produced it.
#[derive(Debug, Clone)]
pub struct CorrectedDocument {
    pub document: ReviewDocument,
    pub verdicts: PolaritySequence,
    pub result: ConsistencyResult,
}

impl CorrectedDocument {
    /// One trace record for the per-document correction trace JSONL.
    pub fn trace(&self, min_run_len: usize) -> CorrectionTrace {
        CorrectionTrace {
            id: self.document.id.clone(),
            theta: min_run_len,
            sentences: self.verdicts.clone(),
            kept: self.result.kept.clone(),
            removed: self.result.removed_outliers.clone(),
        }
    }
}

/// Serialized per-document correction trace.
#[derive(Debug, Clone, Serialize)]
pub struct CorrectionTrace {
    pub id: String,
    pub theta: usize,
    pub sentences: Vec<SentencePolarity>,
    pub kept: Vec<usize>,
    pub removed: Vec<usize>,
}

/// Scores every sentence of a tokenized document, filters inconsistent
/// runs, and returns the document rebuilt from the kept sentences in
/// their original order. Label and id are preserved; kept sentences are
/// re-indexed contiguously.
pub fn correct_document(
    doc: &ReviewDocument,
    model: &NaiveSentenceModel,
    cfg: &CorrectionConfig,
) -> CorrectedDocument {
    let verdicts: PolaritySequence = doc
        .sentences
        .iter()
        .map(|s| model.score_sentence(s.index, &s.tokens))
        .collect();
    let result = filter_consistent(&verdicts, cfg.min_run_len, cfg.fallback);
    let sentences: Vec<Sentence> = doc
        .sentences
        .iter()
        .filter(|s| result.kept.contains(&s.index))
        .enumerate()
        .map(|(index, s)| Sentence {
            index,
            text: s.text.clone(),
            tokens: s.tokens.clone(),
        })
        .collect();
    let document = ReviewDocument {
        id: doc.id.clone(),
        domain: doc.domain.clone(),
        label: doc.label,
        raw_text: doc.raw_text.clone(),
        sentences,
    };
    CorrectedDocument {
        document,
        verdicts,
        result,
    }
}
