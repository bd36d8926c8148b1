//! Corpus ingestion: review parsing, sentence segmentation, and
//! deterministic train/test splits.
//!
//! Two input layouts are supported: the multi-domain review dumps
//! (pseudo-XML `<review>` blocks, one `positive.review` /
//! `negative.review` file per domain) and the internal canonical JSONL
//! format (`{"id", "domain", "label", "text"}`, one document per line).
//! The pseudo-XML files are not well-formed XML — unescaped ampersands
//! occur in the real data — so parsing is a tolerant line scanner keyed
//! on the `<review>` and `<review_text>` tags rather than a strict XML
//! parser.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::io::Write;
use std::path::Path;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::textproc::Token;
use crate::util::fnv1a_64;

/// Binary sentiment orientation. There is no neutral class anywhere in
/// the pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Polarity {
    Positive,
    Negative,
}

impl Polarity {
    pub fn flipped(self) -> Self {
        match self {
            Polarity::Positive => Polarity::Negative,
            Polarity::Negative => Polarity::Positive,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Polarity::Positive => "positive",
            Polarity::Negative => "negative",
        }
    }
}

impl fmt::Display for Polarity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Polarity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "positive" | "pos" => Ok(Polarity::Positive),
            "negative" | "neg" => Ok(Polarity::Negative),
            other => Err(Error::Config(format!("unknown polarity label: {other:?}"))),
        }
    }
}

/// Product domain of a review.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Domain {
    Beauty,
    Books,
    Kitchen,
    Software,
    Other(String),
}

impl Domain {
    pub fn as_str(&self) -> &str {
        match self {
            Domain::Beauty => "beauty",
            Domain::Books => "books",
            Domain::Kitchen => "kitchen",
            Domain::Software => "software",
            Domain::Other(name) => name,
        }
    }
}

impl fmt::Display for Domain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Domain {
    type Err = std::convert::Infallible;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Ok(match s.to_ascii_lowercase().as_str() {
            "beauty" => Domain::Beauty,
            "books" => Domain::Books,
            "kitchen" => Domain::Kitchen,
            "software" => Domain::Software,
            _ => Domain::Other(s.to_string()),
        })
    }
}

impl Serialize for Domain {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for Domain {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        Ok(s.parse().expect("domain parsing is infallible"))
    }
}

/// One sentence of a review. `tokens` is empty until the document is
/// tokenized.
#[derive(Debug, Clone, PartialEq)]
pub struct Sentence {
    /// 0-based position within the document; contiguous per document.
    pub index: usize,
    pub text: String,
    pub tokens: Vec<Token>,
}

/// One labeled product review.
#[derive(Debug, Clone, PartialEq)]
pub struct ReviewDocument {
    pub id: String,
    pub domain: Domain,
    pub label: Polarity,
    pub raw_text: String,
    pub sentences: Vec<Sentence>,
}

impl ReviewDocument {
    pub fn new(id: String, domain: Domain, label: Polarity, raw_text: String) -> Self {
        ReviewDocument {
            id,
            domain,
            label,
            raw_text,
            sentences: Vec::new(),
        }
    }
}

/// A stratified train/test partition of a corpus.
#[derive(Debug, Clone)]
pub struct DatasetSplit {
    pub train: Vec<ReviewDocument>,
    pub test: Vec<ReviewDocument>,
    pub seed: u64,
    pub ratio: f64,
}

/// Input layout accepted by [`parse_review_records`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReviewFormat {
    /// Pseudo-XML `<review>` blocks with a `<review_text>` element.
    Blitzer,
    /// One JSON object per line with at least a `text` field.
    Jsonl,
}

/// Result of parsing one input file.
#[derive(Debug, Default)]
pub struct ParseOutcome {
    pub documents: Vec<ReviewDocument>,
    /// Malformed records skipped with a counted warning.
    pub skipped: usize,
    /// Invalid UTF-8 sequences replaced with U+FFFD.
    pub replaced_utf8: usize,
}

/// Raw record of the canonical JSONL corpus format. `domain` and `label`
/// fall back to the ingest arguments when absent.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct JsonlRecord {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub id: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub domain: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub text: String,
}

/// Parses one review file into documents. Sentences are left empty;
/// segmentation is a separate step. Malformed records are skipped and
/// counted, an unreadable file is a hard error naming the path.
pub fn parse_review_records(
    path: &Path,
    domain: &Domain,
    label: Polarity,
    format: ReviewFormat,
) -> Result<ParseOutcome> {
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    let (content, replaced_utf8) = decode_utf8_lossy_counted(&bytes);
    let mut outcome = match format {
        ReviewFormat::Blitzer => parse_blitzer(&content, domain, label),
        ReviewFormat::Jsonl => parse_jsonl(&content, domain, label),
    };
    outcome.replaced_utf8 = replaced_utf8;
    Ok(outcome)
}

/// Reads the raw records of a JSONL file without resolving defaults.
/// Lines that fail to parse are dropped silently; use
/// [`parse_review_records`] when skip counts matter.
pub fn read_jsonl_records(path: &Path) -> Result<Vec<JsonlRecord>> {
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    let (content, _) = decode_utf8_lossy_counted(&bytes);
    Ok(content
        .lines()
        .filter(|l| !l.trim().is_empty())
        .filter_map(|l| serde_json::from_str(l).ok())
        .collect())
}

/// Writes documents in the canonical JSONL format.
pub fn write_corpus_jsonl(docs: &[ReviewDocument], path: &Path) -> Result<()> {
    let mut out = Vec::new();
    for doc in docs {
        let record = JsonlRecord {
            id: Some(doc.id.clone()),
            domain: Some(doc.domain.to_string()),
            label: Some(doc.label.to_string()),
            text: doc.raw_text.clone(),
        };
        serde_json::to_writer(&mut out, &record).expect("record serialization cannot fail");
        out.push(b'\n');
    }
    let mut file = fs::File::create(path).map_err(|e| Error::io(path, e))?;
    file.write_all(&out).map_err(|e| Error::io(path, e))
}

fn parse_blitzer(content: &str, domain: &Domain, label: Polarity) -> ParseOutcome {
    let mut outcome = ParseOutcome::default();
    let mut in_review = false;
    let mut in_text = false;
    let mut text_lines: Vec<String> = Vec::new();
    let mut text: Option<String> = None;

    let mut finish = |text: &mut Option<String>, outcome: &mut ParseOutcome| {
        match text.take() {
            Some(t) if !t.trim().is_empty() => {
                let raw = decode_entities(t.trim());
                let id = format!("{}-{}-{}", domain, label, outcome.documents.len());
                outcome
                    .documents
                    .push(ReviewDocument::new(id, domain.clone(), label, raw));
            }
            _ => outcome.skipped += 1,
        }
    };

    for line in content.lines() {
        if !in_review {
            if line.contains("<review>") {
                in_review = true;
                in_text = false;
                text = None;
                text_lines.clear();
            }
            continue;
        }
        if in_text {
            if let Some(pos) = line.find("</review_text>") {
                text_lines.push(line[..pos].to_string());
                text = Some(text_lines.join("\n"));
                text_lines.clear();
                in_text = false;
            } else {
                text_lines.push(line.to_string());
            }
            continue;
        }
        if let Some(pos) = line.find("<review_text>") {
            let rest = &line[pos + "<review_text>".len()..];
            if let Some(end) = rest.find("</review_text>") {
                text = Some(rest[..end].to_string());
            } else {
                text_lines.clear();
                if !rest.trim().is_empty() {
                    text_lines.push(rest.to_string());
                }
                in_text = true;
            }
        } else if line.contains("</review>") {
            finish(&mut text, &mut outcome);
            in_review = false;
        } else if line.contains("<review>") {
            // Unterminated previous record; count it and start over.
            finish(&mut text, &mut outcome);
            in_text = false;
            text_lines.clear();
        }
    }
    if in_review {
        finish(&mut text, &mut outcome);
    }
    outcome
}

fn parse_jsonl(content: &str, domain: &Domain, label: Polarity) -> ParseOutcome {
    let mut outcome = ParseOutcome::default();
    for line in content.lines() {
        if line.trim().is_empty() {
            continue;
        }
        let record: JsonlRecord = match serde_json::from_str(line) {
            Ok(r) => r,
            Err(_) => {
                outcome.skipped += 1;
                continue;
            }
        };
        if record.text.trim().is_empty() {
            outcome.skipped += 1;
            continue;
        }
        let rec_domain = record
            .domain
            .as_deref()
            .map(|d| d.parse().expect("infallible"))
            .unwrap_or_else(|| domain.clone());
        let rec_label = match record.label.as_deref() {
            Some(l) => match l.parse() {
                Ok(p) => p,
                Err(_) => {
                    outcome.skipped += 1;
                    continue;
                }
            },
            None => label,
        };
        let id = record
            .id
            .unwrap_or_else(|| format!("{}-{}-{}", rec_domain, rec_label, outcome.documents.len()));
        outcome
            .documents
            .push(ReviewDocument::new(id, rec_domain, rec_label, record.text));
    }
    outcome
}

/// Decodes the four XML entities that occur in the review dumps. `&amp;`
/// is decoded last so that doubly escaped input is not over-decoded.
fn decode_entities(s: &str) -> String {
    s.replace("&lt;", "<")
        .replace("&gt;", ">")
        .replace("&quot;", "\"")
        .replace("&amp;", "&")
}

/// Replaces invalid UTF-8 sequences with U+FFFD, counting replacements.
fn decode_utf8_lossy_counted(bytes: &[u8]) -> (String, usize) {
    let mut out = String::with_capacity(bytes.len());
    let mut replaced = 0;
    let mut rest = bytes;
    loop {
        match std::str::from_utf8(rest) {
            Ok(s) => {
                out.push_str(s);
                break;
            }
            Err(e) => {
                let (valid, after) = rest.split_at(e.valid_up_to());
                out.push_str(std::str::from_utf8(valid).expect("prefix is valid"));
                out.push('\u{FFFD}');
                replaced += 1;
                let skip = e.error_len().unwrap_or(after.len());
                rest = &after[skip..];
            }
        }
    }
    (out, replaced)
}

const ABBREVIATIONS: &[&str] = &["mr.", "mrs.", "dr.", "st.", "vs.", "e.g.", "i.e.", "etc."];

/// Splits text into sentences. Boundaries sit after `.`, `!`, or `?`
/// followed by whitespace and a capital letter; end of text always
/// closes the last sentence. A fixed abbreviation list and decimal
/// numbers are guarded. Text with no terminator is a single sentence.
pub fn segment_text(text: &str) -> Vec<String> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let n = chars.len();
    let mut cuts: Vec<usize> = Vec::new();

    for i in 0..n {
        let (off, c) = chars[i];
        if c != '.' && c != '!' && c != '?' {
            continue;
        }
        if c == '.' {
            let prev_digit = i > 0 && chars[i - 1].1.is_ascii_digit();
            let next_digit = i + 1 < n && chars[i + 1].1.is_ascii_digit();
            if prev_digit && next_digit {
                continue;
            }
            if ends_with_abbreviation(&chars, i) {
                continue;
            }
        }
        let mut j = i + 1;
        while j < n && chars[j].1.is_whitespace() {
            j += 1;
        }
        if j == n {
            continue; // end of text; the tail slice closes the sentence
        }
        if j > i + 1 && chars[j].1.is_uppercase() {
            cuts.push(off + c.len_utf8());
        }
    }

    let mut sentences = Vec::new();
    let mut start = 0;
    for &cut in &cuts {
        let s = text[start..cut].trim();
        if !s.is_empty() {
            sentences.push(s.to_string());
        }
        start = cut;
    }
    let tail = text[start..].trim();
    if !tail.is_empty() {
        sentences.push(tail.to_string());
    }
    sentences
}

/// True when the word ending at the `.` at `chars[dot]` is one of the
/// guarded abbreviations.
fn ends_with_abbreviation(chars: &[(usize, char)], dot: usize) -> bool {
    let mut form: Vec<char> = vec!['.'];
    let mut i = dot;
    while i > 0 {
        let c = chars[i - 1].1;
        if c.is_alphabetic() || c == '.' {
            form.push(c);
            i -= 1;
            if form.len() > 12 {
                return false;
            }
        } else {
            break;
        }
    }
    let word: String = form.iter().rev().collect::<String>().to_ascii_lowercase();
    ABBREVIATIONS.iter().any(|a| *a == word)
}

/// Populates `doc.sentences` from `doc.raw_text`. Never alters,
/// reorders, or duplicates non-whitespace characters.
pub fn segment_sentences(mut doc: ReviewDocument) -> ReviewDocument {
    doc.sentences = segment_text(&doc.raw_text)
        .into_iter()
        .enumerate()
        .map(|(index, text)| Sentence {
            index,
            text,
            tokens: Vec::new(),
        })
        .collect();
    doc
}

/// Splits a corpus into train and test sets, stratified per
/// (domain, label) cell. Deterministic given (corpus order, seed); the
/// per-cell train fraction equals `ratio` within one document.
pub fn split_dataset(corpus: Vec<ReviewDocument>, ratio: f64, seed: u64) -> Result<DatasetSplit> {
    if !(ratio > 0.0 && ratio < 1.0) {
        return Err(Error::Config(format!(
            "split ratio must be in (0,1), got {ratio}"
        )));
    }
    if corpus.is_empty() {
        return Err(Error::Config("cannot split an empty corpus".into()));
    }

    let mut cells: BTreeMap<(String, Polarity), Vec<usize>> = BTreeMap::new();
    for (i, doc) in corpus.iter().enumerate() {
        cells
            .entry((doc.domain.to_string(), doc.label))
            .or_default()
            .push(i);
    }

    let mut train_idx = Vec::new();
    let mut test_idx = Vec::new();
    for ((domain, label), indices) in &cells {
        if indices.len() < 2 {
            return Err(Error::CannotStratify {
                domain: domain.clone(),
                label: label.to_string(),
                count: indices.len(),
            });
        }
        let cell_key = format!("{domain}|{label}");
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ fnv1a_64(cell_key.as_bytes()));
        let mut order = indices.clone();
        order.shuffle(&mut rng);
        let n = order.len();
        let k = ((ratio * n as f64).round() as usize).clamp(1, n - 1);
        train_idx.extend_from_slice(&order[..k]);
        test_idx.extend_from_slice(&order[k..]);
    }
    train_idx.sort_unstable();
    test_idx.sort_unstable();

    let mut slots: Vec<Option<ReviewDocument>> = corpus.into_iter().map(Some).collect();
    let take = |slots: &mut Vec<Option<ReviewDocument>>, idx: &[usize]| {
        idx.iter()
            .map(|&i| slots[i].take().expect("index taken once"))
            .collect::<Vec<_>>()
    };
    Ok(DatasetSplit {
        train: take(&mut slots, &train_idx),
        test: take(&mut slots, &test_idx),
        seed,
        ratio,
    })
}
