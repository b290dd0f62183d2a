use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::path::ModulePath;
use crate::search::chunk::CodeChunk;
use crate::search::tokenize::tokenize;

pub const DEFAULT_K1: f64 = 1.5;
pub const DEFAULT_B: f64 = 0.75;
pub const DEFAULT_TOP_N: usize = 8;
pub const PREAMBLE_SIZE: usize = 10;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchResult {
    pub file: ModulePath,
    pub score: f64,
}

#[derive(Clone, Debug)]
pub struct SearchIndex {
    chunks: Vec<CodeChunk>,
    tf: Vec<HashMap<String, u32>>,
    term_df: HashMap<String, usize>,
    avg_length: f64,
    pub k1: f64,
    pub b: f64,
}

impl SearchIndex {
    pub fn build(chunks: Vec<CodeChunk>) -> Self {
        Self::with_params(chunks, DEFAULT_K1, DEFAULT_B)
    }

    pub fn with_params(chunks: Vec<CodeChunk>, k1: f64, b: f64) -> Self {
        let mut tf = Vec::with_capacity(chunks.len());
        let mut term_df: HashMap<String, usize> = HashMap::new();
        let mut total = 0usize;
        for c in &chunks {
            let mut counts: HashMap<String, u32> = HashMap::new();
            for t in &c.tokens {
                *counts.entry(t.clone()).or_default() += 1;
            }
            for t in counts.keys() {
                *term_df.entry(t.clone()).or_default() += 1;
            }
            total += c.length();
            tf.push(counts);
        }
        let avg_length = if chunks.is_empty() {
            0.0
        } else {
            total as f64 / chunks.len() as f64
        };
        SearchIndex {
            chunks,
            tf,
            term_df,
            avg_length,
            k1,
            b,
        }
    }

    pub fn chunks(&self) -> &[CodeChunk] {
        &self.chunks
    }

    pub fn doc_count(&self) -> usize {
        self.chunks.len()
    }

    pub fn avg_length(&self) -> f64 {
        self.avg_length
    }

    pub fn df(&self, term: &str) -> usize {
        self.term_df.get(term).copied().unwrap_or(0)
    }

    pub fn term_df(&self) -> &HashMap<String, usize> {
        &self.term_df
    }

    pub fn idf(&self, term: &str) -> f64 {
        let n = self.doc_count() as f64;
        let df = self.df(term) as f64;
        (1.0 + (n - df + 0.5) / (df + 0.5)).ln()
    }

    /// Okapi BM25 of chunk `idx` against already tokenized terms. Repeated
    /// query terms count once per occurrence.
    pub fn bm25_score(&self, query_terms: &[String], idx: usize) -> f64 {
        let counts = &self.tf[idx];
        let len = self.chunks[idx].length() as f64;
        let norm = self.k1 * (1.0 - self.b + self.b * len / self.avg_length);
        query_terms
            .iter()
            .map(|t| match counts.get(t) {
                Some(&tf) => {
                    let tf = tf as f64;
                    self.idf(t) * (tf * (self.k1 + 1.0)) / (tf + norm)
                }
                None => 0.0,
            })
            .sum()
    }

    /// Files ranked by their best chunk; zero scores are dropped and ties go
    /// to the lexicographically smaller path.
    pub fn search(&self, query: &str, top_n: usize) -> Vec<SearchResult> {
        let terms = tokenize(query);
        if terms.is_empty() {
            return Vec::new();
        }
        let mut best: BTreeMap<&ModulePath, f64> = BTreeMap::new();
        for (i, c) in self.chunks.iter().enumerate() {
            let s = self.bm25_score(&terms, i);
            let e = best.entry(&c.file).or_insert(0.0);
            if s > *e {
                *e = s;
            }
        }
        let mut out: Vec<SearchResult> = best
            .into_iter()
            .filter(|(_, s)| *s > 0.0)
            .map(|(f, score)| SearchResult { file: f.clone(), score })
            .collect();
        out.sort_by(|a, b| b.score.total_cmp(&a.score).then_with(|| a.file.cmp(&b.file)));
        out.truncate(top_n);
        out
    }
}

pub fn render_results(results: &[SearchResult]) -> String {
    if results.is_empty() {
        return "(no matches)".to_string();
    }
    results
        .iter()
        .enumerate()
        .map(|(i, r)| format!("{}. {} (score: {:.3})", i + 1, r.file, r.score))
        .collect::<Vec<_>>()
        .join("\n")
}

/// Header plus the first ten ranked files, ready to prepend to a prompt.
pub fn render_bm25_preamble(results: &[SearchResult]) -> String {
    let top = &results[..results.len().min(PREAMBLE_SIZE)];
    format!("## Relevant files (BM25)\n{}", render_results(top))
}
