//! Chunking, tokenization and BM25 ranking.

mod bm25;
mod chunk;
mod tokenize;

pub use bm25::{
    render_bm25_preamble, render_results, SearchIndex, SearchResult, DEFAULT_B, DEFAULT_K1, DEFAULT_TOP_N,
    PREAMBLE_SIZE,
};
pub use chunk::{chunk_repository, ChunkKind, CodeChunk, SourceFile, MODULE_SYMBOL};
pub use tokenize::tokenize;
