//! Review-level sentiment classification with polarity correction.
//!
//! The pipeline ingests labeled product reviews, segments them into
//! sentences, and classifies each review as positive or negative. Two
//! correction stages sit between ingestion and the document-level
//! learners:
//!
//! 1. **Training-set correction** ([`correction::correct_training_set`]):
//!    a count-based sentence classifier scored by joint log probability
//!    re-pools training sentences whose predicted polarity contradicts
//!    their document label.
//! 2. **Consistency filtering** ([`correction::filter_consistent`]):
//!    sentences whose predicted polarity forms a run shorter than a
//!    minimum run length are dropped from both training and test
//!    documents before the document model sees them.
//!
//! Document-level learners ([`learn`]) are a multinomial naive Bayes
//! classifier and an SMO-trained support vector machine over unigram,
//! bigram, or bag-of-words features. [`eval`] runs the corrected /
//! uncorrected / baseline grid over a deterministic stratified split and
//! renders CSV, JSON, and text-table reports.

pub mod corpus;
pub mod correction;
pub mod error;
pub mod eval;
pub mod learn;
pub mod naive;
pub mod synth;
pub mod textproc;

mod util;

pub use error::{Error, Result};
