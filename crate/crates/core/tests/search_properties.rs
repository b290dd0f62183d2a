use codenav_core::search::{tokenize, ChunkKind, CodeChunk, SearchIndex};
use codenav_core::ModulePath;
use proptest::prelude::*;

const VOCAB: &[&str] = &[
    "user", "email", "password", "token", "article", "slug", "comment", "tag", "repo", "login",
];

fn gen_chunks() -> impl Strategy<Value = Vec<CodeChunk>> {
    let chunk = (0usize..6, proptest::collection::vec(0..VOCAB.len(), 1..20)).prop_map(|(f, words)| CodeChunk {
        file: ModulePath::new(format!("app/f{f}.py")).unwrap(),
        symbol: "sym".into(),
        kind: ChunkKind::Function,
        tokens: words.into_iter().map(|w| VOCAB[w].to_string()).collect(),
    });
    proptest::collection::vec(chunk, 1..25)
}

fn gen_query() -> impl Strategy<Value = Vec<&'static str>> {
    proptest::collection::vec(proptest::sample::select(VOCAB.to_vec()), 1..4)
}

proptest! {
    #[test]
    fn ranking_is_sorted_positive_and_bounded(chunks in gen_chunks(), q in gen_query(), top_n in 1usize..8) {
        let idx = SearchIndex::build(chunks);
        let res = idx.search(&q.join(" "), top_n);
        prop_assert!(res.len() <= top_n);
        for w in res.windows(2) {
            prop_assert!(w[0].score > w[1].score || (w[0].score == w[1].score && w[0].file < w[1].file));
        }
        prop_assert!(res.iter().all(|r| r.score > 0.0));
    }

    #[test]
    fn file_score_is_best_chunk(chunks in gen_chunks(), q in gen_query()) {
        let idx = SearchIndex::build(chunks.clone());
        let terms = tokenize(&q.join(" "));
        for r in idx.search(&q.join(" "), usize::MAX) {
            let best = chunks.iter().enumerate()
                .filter(|(_, c)| c.file == r.file)
                .map(|(i, _)| idx.bm25_score(&terms, i))
                .fold(0.0f64, f64::max);
            prop_assert_eq!(r.score, best);
        }
    }

    #[test]
    fn unknown_terms_do_not_move_scores(chunks in gen_chunks(), q in gen_query()) {
        let idx = SearchIndex::build(chunks);
        let base = idx.search(&q.join(" "), usize::MAX);
        let padded = idx.search(&format!("{} xylophone", q.join(" ")), usize::MAX);
        prop_assert_eq!(base, padded);
    }

    #[test]
    fn tokens_are_normalized(text in "[A-Za-z0-9_ .()]{0,60}") {
        for t in tokenize(&text) {
            prop_assert!(t.len() >= 2);
            prop_assert!(t.chars().all(|c| c.is_ascii_lowercase() || c.is_ascii_digit()));
        }
    }
}
