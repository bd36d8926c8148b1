//! The count-based sentence-level polarity classifier used by both
//! correction stages.
//!
//! A multinomial model over unigram token occurrences with Laplace
//! smoothing. A sentence is scored per class with the joint log
//! probability `log2 P(S|C) + log2 P(C)` and assigned the argmax class;
//! ties go to positive. Base-2 logarithms keep the reported scores on
//! the same scale as the class formula the pipeline documents.

use std::fs;
use std::path::Path;
use std::sync::Arc;

use serde::Serialize;

use crate::corpus::Polarity;
use crate::error::{Error, Result};
use crate::textproc::{Token, Vocabulary};

const CLASSES: [Polarity; 2] = [Polarity::Positive, Polarity::Negative];

fn class_slot(polarity: Polarity) -> usize {
    match polarity {
        Polarity::Positive => 0,
        Polarity::Negative => 1,
    }
}

/// Per-sentence polarity verdict with both class scores.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SentencePolarity {
    pub index: usize,
    pub predicted: Polarity,
    /// log2 joint probability of the positive class.
    pub score_pos: f64,
    /// log2 joint probability of the negative class.
    pub score_neg: f64,
}

/// Fitted sentence-level model: per-class term counts, total token mass,
/// and class priors over a shared vocabulary.
#[derive(Debug, Clone)]
pub struct NaiveSentenceModel {
    vocab: Arc<Vocabulary>,
    alpha: f64,
    priors: [f64; 2],
    counts: [Vec<u64>; 2],
    mass: [u64; 2],
}

impl NaiveSentenceModel {
    /// Fits the model on labeled sentences. Counts accumulate unigram
    /// occurrences of in-vocabulary terms per class; priors are class
    /// sentence-count fractions. Errors when a class has no sentences
    /// or the smoothing parameter is not positive.
    pub fn fit(
        sentences: &[(&[Token], Polarity)],
        vocab: Arc<Vocabulary>,
        alpha: f64,
    ) -> Result<Self> {
        if !(alpha > 0.0) {
            return Err(Error::Config(format!(
                "smoothing alpha must be positive, got {alpha}"
            )));
        }
        let mut counts = [vec![0u64; vocab.len()], vec![0u64; vocab.len()]];
        let mut mass = [0u64; 2];
        let mut n_sentences = [0u64; 2];
        for (tokens, label) in sentences {
            let slot = class_slot(*label);
            n_sentences[slot] += 1;
            for token in *tokens {
                if let Some(index) = vocab.index_of(&token.feature_form()) {
                    counts[slot][index] += 1;
                    mass[slot] += 1;
                }
            }
        }
        for class in CLASSES {
            if n_sentences[class_slot(class)] == 0 {
                return Err(Error::EmptyClass(class.to_string()));
            }
        }
        let total = (n_sentences[0] + n_sentences[1]) as f64;
        let priors = [
            n_sentences[0] as f64 / total,
            n_sentences[1] as f64 / total,
        ];
        Ok(NaiveSentenceModel {
            vocab,
            alpha,
            priors,
            counts,
            mass,
        })
    }

    pub fn vocab(&self) -> &Arc<Vocabulary> {
        &self.vocab
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn prior(&self, class: Polarity) -> f64 {
        self.priors[class_slot(class)]
    }

    pub fn term_count(&self, class: Polarity, index: usize) -> u64 {
        self.counts[class_slot(class)][index]
    }

    pub fn class_mass(&self, class: Polarity) -> u64 {
        self.mass[class_slot(class)]
    }

    /// Smoothed conditional `P(term | class)`.
    pub fn term_prob(&self, class: Polarity, index: usize) -> f64 {
        let slot = class_slot(class);
        (self.counts[slot][index] as f64 + self.alpha)
            / (self.mass[slot] as f64 + self.alpha * self.vocab.len() as f64)
    }

    /// Scores a sentence with the joint log probability of each class
    /// and picks the argmax; a tie predicts positive. Out-of-vocabulary
    /// tokens are skipped, so an empty or all-unknown sentence reduces
    /// to the log priors.
    pub fn score_sentence(&self, index: usize, tokens: &[Token]) -> SentencePolarity {
        let mut scores = [self.priors[0].log2(), self.priors[1].log2()];
        for token in tokens {
            if let Some(term) = self.vocab.index_of(&token.feature_form()) {
                for class in CLASSES {
                    scores[class_slot(class)] += self.term_prob(class, term).log2();
                }
            }
        }
        let predicted = if scores[0] >= scores[1] {
            Polarity::Positive
        } else {
            Polarity::Negative
        };
        SentencePolarity {
            index,
            predicted,
            score_pos: scores[0],
            score_neg: scores[1],
        }
    }

    /// Writes the versioned text format: header, priors, then per-class
    /// sparse count rows. The vocabulary is stored separately.
    pub fn write_to(&self, path: &Path) -> Result<()> {
        fs::write(path, self.render()).map_err(|e| Error::io(path, e))
    }

    pub fn render(&self) -> String {
        let mut out = format!("naive v1 alpha={} |V|={}\n", self.alpha, self.vocab.len());
        out.push_str(&format!("priors {} {}\n", self.priors[0], self.priors[1]));
        for class in CLASSES {
            let slot = class_slot(class);
            let nonzero: Vec<(usize, u64)> = self.counts[slot]
                .iter()
                .enumerate()
                .filter(|&(_, &c)| c > 0)
                .map(|(i, &c)| (i, c))
                .collect();
            out.push_str(&format!(
                "class {} mass={} entries={}\n",
                class,
                self.mass[slot],
                nonzero.len()
            ));
            for (i, c) in nonzero {
                out.push_str(&format!("{i} {c}\n"));
            }
        }
        out
    }

    /// Reads a model written by [`NaiveSentenceModel::write_to`]. The
    /// caller supplies the vocabulary the counts are indexed against.
    pub fn read_from(path: &Path, vocab: Arc<Vocabulary>) -> Result<Self> {
        let content = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&content, vocab).map_err(|detail| Error::parse("naive model", path, detail))
    }

    pub fn parse(content: &str, vocab: Arc<Vocabulary>) -> std::result::Result<Self, String> {
        let mut lines = content.lines();
        let header = lines.next().ok_or("empty file")?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        let (alpha, size) = match fields.as_slice() {
            ["naive", "v1", alpha, size] => {
                let alpha: f64 = alpha
                    .strip_prefix("alpha=")
                    .ok_or("missing alpha field")?
                    .parse()
                    .map_err(|_| "bad alpha value")?;
                let size: usize = size
                    .strip_prefix("|V|=")
                    .ok_or("missing |V| field")?
                    .parse()
                    .map_err(|_| "bad |V| value")?;
                (alpha, size)
            }
            _ => return Err("bad header, expected 'naive v1 alpha=<..> |V|=<..>'".into()),
        };
        if size != vocab.len() {
            return Err(format!(
                "vocabulary size mismatch: file has {size}, vocabulary has {}",
                vocab.len()
            ));
        }
        let priors_line = lines.next().ok_or("missing priors line")?;
        let p: Vec<&str> = priors_line.split_whitespace().collect();
        let priors = match p.as_slice() {
            ["priors", pos, neg] => [
                pos.parse().map_err(|_| "bad positive prior")?,
                neg.parse().map_err(|_| "bad negative prior")?,
            ],
            _ => return Err("bad priors line".into()),
        };

        let mut counts = [vec![0u64; size], vec![0u64; size]];
        let mut mass = [0u64; 2];
        for class in CLASSES {
            let slot = class_slot(class);
            let header = lines.next().ok_or("missing class header")?;
            let f: Vec<&str> = header.split_whitespace().collect();
            let entries = match f.as_slice() {
                ["class", name, m, e] if *name == class.as_str() => {
                    mass[slot] = m
                        .strip_prefix("mass=")
                        .ok_or("missing mass")?
                        .parse()
                        .map_err(|_| "bad mass")?;
                    e.strip_prefix("entries=")
                        .ok_or("missing entries")?
                        .parse::<usize>()
                        .map_err(|_| "bad entries")?
                }
                _ => return Err(format!("bad class header for {class}")),
            };
            for _ in 0..entries {
                let row = lines.next().ok_or("missing count row")?;
                let (i, c) = row.split_once(' ').ok_or("bad count row")?;
                let i: usize = i.parse().map_err(|_| "bad term index")?;
                if i >= size {
                    return Err(format!("term index {i} out of range"));
                }
                counts[slot][i] = c.parse().map_err(|_| "bad count")?;
            }
        }
        Ok(NaiveSentenceModel {
            vocab,
            alpha,
            priors,
            counts,
            mass,
        })
    }
}
