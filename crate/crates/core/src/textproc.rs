//! Tokenization, negation tagging, and feature extraction.
//!
//! Tokens are lowercased and split on non-alphanumeric characters,
//! keeping internal apostrophes; `*n't` contractions split into stem
//! plus `n't`. Punctuation never becomes a token, so vocabularies are
//! word-based. A token marked as negated contributes its `NOT_` form to
//! every feature scheme, which keeps plain and negated occurrences as
//! distinct vocabulary entries.

use std::borrow::Cow;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::corpus::ReviewDocument;
use crate::error::{Error, Result};

/// Words that open a negation window.
pub const NEGATION_WORDS: &[&str] = &[
    "not", "n't", "no", "never", "cannot", "neither", "nor", "without",
];

/// One word-level token.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Token {
    /// Lowercased surface form; non-empty, no whitespace.
    pub surface: String,
    /// Set when the token falls inside a negation window.
    pub negated: bool,
}

impl Token {
    pub fn plain(surface: impl Into<String>) -> Self {
        Token {
            surface: surface.into(),
            negated: false,
        }
    }

    /// The vocabulary form: `NOT_<surface>` when negated, the surface
    /// itself otherwise.
    pub fn feature_form(&self) -> Cow<'_, str> {
        if self.negated {
            Cow::Owned(format!("NOT_{}", self.surface))
        } else {
            Cow::Borrowed(&self.surface)
        }
    }
}

/// Lowercases and splits text into tokens. Empty or whitespace-only
/// input yields an empty list.
pub fn tokenize(text: &str) -> Vec<Token> {
    let lower = text.to_lowercase();
    let chars: Vec<char> = lower.chars().collect();
    let mut raw: Vec<String> = Vec::new();
    let mut current = String::new();
    for (i, &c) in chars.iter().enumerate() {
        if c.is_alphanumeric() {
            current.push(c);
        } else if c == '\''
            && !current.is_empty()
            && chars.get(i + 1).is_some_and(|n| n.is_alphanumeric())
        {
            current.push(c);
        } else if !current.is_empty() {
            raw.push(std::mem::take(&mut current));
        }
    }
    if !current.is_empty() {
        raw.push(current);
    }

    let mut tokens = Vec::with_capacity(raw.len());
    for word in raw {
        if word.len() > 3 && word.ends_with("n't") {
            tokens.push(Token::plain(&word[..word.len() - 3]));
            tokens.push(Token::plain("n't"));
        } else {
            tokens.push(Token::plain(word));
        }
    }
    tokens
}

fn is_negation_word(surface: &str) -> bool {
    NEGATION_WORDS.contains(&surface)
}

fn is_clause_punctuation(surface: &str) -> bool {
    matches!(surface, "," | ";" | ":" | "." | "!" | "?")
}

/// Marks up to `window` tokens after each negation word as negated.
/// Tagging stops early at another negation word or at clause
/// punctuation (when punctuation tokens are retained by the caller);
/// the negation word itself is never tagged, and overlapping windows
/// simply re-mark. `window` must lie in [1, 3].
pub fn tag_negation(mut tokens: Vec<Token>, window: usize) -> Result<Vec<Token>> {
    if !(1..=3).contains(&window) {
        return Err(Error::Config(format!(
            "negation window must be in [1,3], got {window}"
        )));
    }
    for i in 0..tokens.len() {
        if !is_negation_word(&tokens[i].surface) {
            continue;
        }
        let mut tagged = 0;
        for j in i + 1..tokens.len() {
            if tagged == window
                || is_negation_word(&tokens[j].surface)
                || is_clause_punctuation(&tokens[j].surface)
            {
                break;
            }
            tokens[j].negated = true;
            tagged += 1;
        }
    }
    Ok(tokens)
}

/// Feature extraction scheme shared by vocabulary and vectorizer.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FeatureScheme {
    /// Presence (0/1) of each distinct token form.
    Unigram,
    /// Presence of each adjacent token-form pair within a sentence.
    Bigram,
    /// Occurrence count of each token form.
    BagOfWords,
}

impl FeatureScheme {
    pub fn as_str(self) -> &'static str {
        match self {
            FeatureScheme::Unigram => "unigram",
            FeatureScheme::Bigram => "bigram",
            FeatureScheme::BagOfWords => "bows",
        }
    }

    /// Label used in report rows, e.g. `SVM-BOWS-cor`.
    pub fn row_label(self) -> &'static str {
        match self {
            FeatureScheme::Unigram => "Unigram",
            FeatureScheme::Bigram => "Bigram",
            FeatureScheme::BagOfWords => "BOWS",
        }
    }
}

impl fmt::Display for FeatureScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FeatureScheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "unigram" => Ok(FeatureScheme::Unigram),
            "bigram" => Ok(FeatureScheme::Bigram),
            "bows" | "bagofwords" | "bag-of-words" => Ok(FeatureScheme::BagOfWords),
            other => Err(Error::Config(format!("unknown feature scheme: {other:?}"))),
        }
    }
}

/// A frozen term-to-index map. Indices are assigned in lexicographic
/// term order, so fitting is deterministic. Unknown terms at transform
/// time map to no feature.
#[derive(Debug, Clone)]
pub struct Vocabulary {
    scheme: FeatureScheme,
    term_to_index: HashMap<String, usize>,
    terms: Vec<String>,
}

impl Vocabulary {
    /// Fits a vocabulary over all feature forms occurring at least
    /// `min_count` times in the collection. An empty collection yields
    /// an empty vocabulary.
    pub fn fit<I>(units: I, scheme: FeatureScheme, min_count: usize) -> Result<Self>
    where
        I: IntoIterator,
        I::Item: AsRef<[Token]>,
    {
        if min_count < 1 {
            return Err(Error::Config(format!(
                "min_count must be at least 1, got {min_count}"
            )));
        }
        let mut counts: BTreeMap<String, usize> = BTreeMap::new();
        let mut forms = Vec::new();
        for unit in units {
            forms.clear();
            unit_terms(unit.as_ref(), scheme, &mut forms);
            for form in forms.drain(..) {
                *counts.entry(form).or_insert(0) += 1;
            }
        }
        let terms: Vec<String> = counts
            .into_iter()
            .filter(|(_, c)| *c >= min_count)
            .map(|(t, _)| t)
            .collect();
        let term_to_index = terms
            .iter()
            .enumerate()
            .map(|(i, t)| (t.clone(), i))
            .collect();
        Ok(Vocabulary {
            scheme,
            term_to_index,
            terms,
        })
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scheme(&self) -> FeatureScheme {
        self.scheme
    }

    pub fn index_of(&self, term: &str) -> Option<usize> {
        self.term_to_index.get(term).copied()
    }

    pub fn term(&self, index: usize) -> Option<&str> {
        self.terms.get(index).map(String::as_str)
    }

    /// Writes the versioned plain-text format: a `vocab v1` header
    /// followed by one `term<TAB>index` line per entry.
    pub fn write_to(&self, path: &Path) -> Result<()> {
        fs::write(path, self.render()).map_err(|e| Error::io(path, e))
    }

    pub fn render(&self) -> String {
        let mut out = format!("vocab v1 {} {}\n", self.scheme, self.terms.len());
        for (i, term) in self.terms.iter().enumerate() {
            out.push_str(term);
            out.push('\t');
            out.push_str(&i.to_string());
            out.push('\n');
        }
        out
    }

    pub fn read_from(path: &Path) -> Result<Self> {
        let content = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&content).map_err(|detail| Error::parse("vocab", path, detail))
    }

    pub fn parse(content: &str) -> std::result::Result<Self, String> {
        let mut lines = content.lines();
        let header = lines.next().ok_or("empty file")?;
        let fields: Vec<&str> = header.split_whitespace().collect();
        match fields.as_slice() {
            ["vocab", "v1", scheme, size] => {
                let scheme: FeatureScheme =
                    scheme.parse().map_err(|e: Error| e.to_string())?;
                let size: usize = size.parse().map_err(|_| "bad size field")?;
                let mut terms = Vec::with_capacity(size);
                for line in lines {
                    if line.is_empty() {
                        continue;
                    }
                    let (term, index) = line.split_once('\t').ok_or("missing tab")?;
                    let index: usize = index.parse().map_err(|_| "bad index")?;
                    if index != terms.len() {
                        return Err(format!("index {index} out of order"));
                    }
                    terms.push(term.to_string());
                }
                if terms.len() != size {
                    return Err(format!("expected {size} entries, found {}", terms.len()));
                }
                let term_to_index = terms
                    .iter()
                    .enumerate()
                    .map(|(i, t)| (t.clone(), i))
                    .collect();
                Ok(Vocabulary {
                    scheme,
                    term_to_index,
                    terms,
                })
            }
            _ => Err("bad header, expected 'vocab v1 <scheme> <size>'".into()),
        }
    }
}

/// Term-indexed sparse feature values: indices strictly increasing,
/// values strictly positive.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct SparseFeatureVector {
    entries: Vec<(usize, f64)>,
}

impl SparseFeatureVector {
    pub fn from_map(map: BTreeMap<usize, f64>) -> Self {
        SparseFeatureVector {
            entries: map.into_iter().filter(|&(_, v)| v > 0.0).collect(),
        }
    }

    /// Entries must be sorted by strictly increasing index with positive
    /// values; intended for tests and deserialization.
    pub fn from_entries(entries: Vec<(usize, f64)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(entries.iter().all(|&(_, v)| v > 0.0));
        SparseFeatureVector { entries }
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, f64)> + '_ {
        self.entries.iter().copied()
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn max_index(&self) -> Option<usize> {
        self.entries.last().map(|&(i, _)| i)
    }

    pub fn value_sum(&self) -> f64 {
        self.entries.iter().map(|&(_, v)| v).sum()
    }

    pub fn dot(&self, other: &SparseFeatureVector) -> f64 {
        let mut sum = 0.0;
        let (mut a, mut b) = (0, 0);
        while a < self.entries.len() && b < other.entries.len() {
            let (ia, va) = self.entries[a];
            let (ib, vb) = other.entries[b];
            match ia.cmp(&ib) {
                std::cmp::Ordering::Less => a += 1,
                std::cmp::Ordering::Greater => b += 1,
                std::cmp::Ordering::Equal => {
                    sum += va * vb;
                    a += 1;
                    b += 1;
                }
            }
        }
        sum
    }

    pub fn norm_sq(&self) -> f64 {
        self.entries.iter().map(|&(_, v)| v * v).sum()
    }
}

/// Collects the feature forms of one unit (sentence or whole document)
/// under the given scheme.
fn unit_terms(tokens: &[Token], scheme: FeatureScheme, out: &mut Vec<String>) {
    match scheme {
        FeatureScheme::Unigram | FeatureScheme::BagOfWords => {
            out.extend(tokens.iter().map(|t| t.feature_form().into_owned()));
        }
        FeatureScheme::Bigram => {
            out.extend(
                tokens
                    .windows(2)
                    .map(|w| format!("{}_{}", w[0].feature_form(), w[1].feature_form())),
            );
        }
    }
}

/// Vectorizes a group of token units against a fitted vocabulary. Each
/// unit is a sentence; bigrams never cross unit boundaries. Unknown
/// terms contribute nothing.
pub fn vectorize(units: &[&[Token]], vocab: &Vocabulary) -> SparseFeatureVector {
    let mut acc: BTreeMap<usize, f64> = BTreeMap::new();
    let mut forms = Vec::new();
    for unit in units {
        forms.clear();
        unit_terms(unit, vocab.scheme, &mut forms);
        for form in forms.drain(..) {
            if let Some(index) = vocab.index_of(&form) {
                match vocab.scheme {
                    FeatureScheme::BagOfWords => *acc.entry(index).or_insert(0.0) += 1.0,
                    FeatureScheme::Unigram | FeatureScheme::Bigram => {
                        acc.entry(index).or_insert(1.0);
                    }
                }
            }
        }
    }
    SparseFeatureVector::from_map(acc)
}

/// Single-unit convenience over [`vectorize`].
pub fn vectorize_tokens(tokens: &[Token], vocab: &Vocabulary) -> SparseFeatureVector {
    vectorize(&[tokens], vocab)
}

/// Tokenizes every sentence of a segmented document, tagging negation
/// when a window is given.
pub fn tokenize_document(doc: &mut ReviewDocument, negation_window: Option<usize>) -> Result<()> {
    for sentence in &mut doc.sentences {
        let tokens = tokenize(&sentence.text);
        sentence.tokens = match negation_window {
            Some(window) => tag_negation(tokens, window)?,
            None => tokens,
        };
    }
    Ok(())
}

/// The per-sentence token units of a document.
pub fn sentence_units(doc: &ReviewDocument) -> Vec<&[Token]> {
    doc.sentences.iter().map(|s| s.tokens.as_slice()).collect()
}
