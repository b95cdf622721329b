//! Building the experiment from user-supplied text.
//!
//! Documents and queries arrive as plain UTF-8 text. Tokenization is
//! deliberately minimal and fully specified (lowercase, then maximal runs
//! of Unicode letters and digits) so that identical inputs produce
//! identical vocabularies everywhere. The vocabulary is formed from the
//! unique terms of the documents and their queries, ranked by descending
//! corpus frequency with lexicographic tie-breaking, which maps real text
//! onto the same rank-indexed types the synthetic pipeline uses.

use std::collections::HashMap;
use std::sync::Arc;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::analysis::{analytic_error_probability, AveragingMode, ErrorEstimate};
use crate::coding::{decode, encode, transmit};
use crate::features::{
    apply_stop_mask, term_frequency, FeatureVector, MaskedGaussianModel, StopWordSet,
};
use crate::retrieval::{idf, retrieve, Corpus};
use crate::seed;
use crate::simulation::{analytic_repetitions, CurveRow, ExperimentConfig, Method, SweepReport};
use crate::vocab::TermCounts;
use crate::Error;

/// Split text into normalized tokens: lowercase first, then take maximal
/// runs of alphanumeric characters. Everything else separates.
pub fn tokenize(text: &str) -> Vec<String> {
    text.to_lowercase()
        .split(|c: char| !c.is_alphanumeric())
        .filter(|t| !t.is_empty())
        .map(str::to_owned)
        .collect()
}

/// [`tokenize`] over raw bytes, rejecting invalid UTF-8 with the byte offset
/// of the first bad sequence.
pub fn tokenize_bytes(bytes: &[u8]) -> Result<Vec<String>, Error> {
    let text = std::str::from_utf8(bytes).map_err(|e| Error::InvalidUtf8 {
        offset: e.valid_up_to(),
    })?;
    Ok(tokenize(text))
}

/// Stop-word selection for ingested corpora.
#[derive(Clone, Debug)]
pub enum StopPolicy {
    /// The `k` most frequent corpus terms.
    TopK(u32),
    /// An explicit term list; terms absent from the vocabulary are ignored.
    Terms(Vec<String>),
}

/// A real-text experiment: vocabulary, document corpus, fixed queries,
/// empirical term probabilities, and the stop-word set.
#[derive(Clone, Debug)]
pub struct RealCorpusBundle {
    terms: Vec<String>,
    ranks: HashMap<String, u32>,
    corpus: Corpus,
    queries: Vec<TermCounts>,
    probabilities: Arc<[f64]>,
    stop: StopWordSet,
}

/// Build a bundle from document and query texts.
///
/// The vocabulary covers every unique term of both; ranks are ordered by
/// descending document-corpus frequency (ties lexicographic), and the
/// empirical probability of a term is its corpus frequency over the total
/// corpus token count. Terms that appear only in queries carry probability
/// zero.
pub fn build_real_bundle(
    documents: &[String],
    queries: &[String],
    policy: &StopPolicy,
) -> Result<RealCorpusBundle, Error> {
    if documents.is_empty() {
        return Err(Error::EmptyCorpus);
    }
    if queries.is_empty() {
        return Err(Error::InvalidConfig(
            "at least one query is required".into(),
        ));
    }
    let doc_tokens: Vec<Vec<String>> = documents.iter().map(|d| tokenize(d)).collect();
    for (index, tokens) in doc_tokens.iter().enumerate() {
        if tokens.is_empty() {
            return Err(Error::EmptyDocument { index });
        }
    }
    let query_tokens: Vec<Vec<String>> = queries.iter().map(|q| tokenize(q)).collect();
    for (index, tokens) in query_tokens.iter().enumerate() {
        if tokens.is_empty() {
            return Err(Error::EmptyQuery { index });
        }
    }

    let mut corpus_freq: HashMap<&str, u64> = HashMap::new();
    let mut total_tokens = 0u64;
    for tokens in &doc_tokens {
        for t in tokens {
            *corpus_freq.entry(t).or_insert(0) += 1;
            total_tokens += 1;
        }
    }
    let mut terms: Vec<&str> = corpus_freq.keys().copied().collect();
    for tokens in &query_tokens {
        for t in tokens {
            if !corpus_freq.contains_key(t.as_str()) {
                corpus_freq.insert(t, 0);
                terms.push(t);
            }
        }
    }
    terms.sort_unstable_by(|a, b| corpus_freq[b].cmp(&corpus_freq[a]).then_with(|| a.cmp(b)));

    let terms: Vec<String> = terms.into_iter().map(str::to_owned).collect();
    let dimension = terms.len() as u32;
    let ranks: HashMap<String, u32> = terms
        .iter()
        .enumerate()
        .map(|(i, t)| (t.clone(), i as u32 + 1))
        .collect();
    let probabilities: Vec<f64> = terms
        .iter()
        .map(|t| corpus_freq[t.as_str()] as f64 / total_tokens as f64)
        .collect();

    let to_counts = |tokens: &[String]| -> TermCounts {
        let mut counts: HashMap<u32, u32> = HashMap::new();
        for t in tokens {
            *counts.entry(ranks[t]).or_insert(0) += 1;
        }
        TermCounts::from_entries(dimension, counts).expect("tokenized text is nonempty")
    };
    let docs: Vec<FeatureVector> = doc_tokens
        .iter()
        .map(|tokens| term_frequency(&to_counts(tokens)))
        .collect();
    let corpus = Corpus::new(dimension, docs)?;
    let queries: Vec<TermCounts> = query_tokens.iter().map(|t| to_counts(t)).collect();

    let stop = match policy {
        StopPolicy::TopK(k) => {
            if *k > dimension {
                return Err(Error::StopSetTooLarge {
                    requested: *k,
                    dimension,
                });
            }
            StopWordSet::new(dimension, 1..=*k)?
        }
        StopPolicy::Terms(list) => {
            let indices = list
                .iter()
                .flat_map(|line| tokenize(line))
                .filter_map(|t| ranks.get(&t).copied());
            StopWordSet::new(dimension, indices)?
        }
    };

    Ok(RealCorpusBundle {
        terms,
        ranks,
        corpus,
        queries,
        probabilities: probabilities.into(),
        stop,
    })
}

impl RealCorpusBundle {
    pub fn vocabulary_size(&self) -> u32 {
        self.terms.len() as u32
    }

    /// Term string at `rank` (1-based).
    pub fn term(&self, rank: u32) -> &str {
        &self.terms[rank as usize - 1]
    }

    /// Rank of a (normalized) term, if present.
    pub fn rank(&self, term: &str) -> Option<u32> {
        self.ranks.get(term).copied()
    }

    pub fn corpus(&self) -> &Corpus {
        &self.corpus
    }

    pub fn queries(&self) -> &[TermCounts] {
        &self.queries
    }

    /// Empirical term probabilities in rank order; they sum to 1.
    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    pub fn stop(&self) -> &StopWordSet {
        &self.stop
    }
}

/// Run the channel experiment on a bundle's fixed queries.
///
/// Only the channel is random: each query is masked and encoded once per
/// rate, then transmitted `config.trials` times per grid point. Rows average
/// the per-query error rates; the standard error combines the per-query
/// binomial standard errors. Analytic rows (method `analytic-empirical`)
/// feed the Gaussian model with the bundle's empirical probabilities and
/// each query's own length, and require exactly two documents.
pub fn run_real_experiment(
    bundle: &RealCorpusBundle,
    config: &ExperimentConfig,
) -> Result<SweepReport, Error> {
    if bundle.corpus.len() < 2 {
        return Err(Error::InvalidConfig(
            "the real-data experiment needs at least two documents".into(),
        ));
    }
    if config.trials == 0 {
        return Err(Error::InvalidConfig("trials must be at least 1".into()));
    }
    if config.rates.is_empty() || config.epsilons.is_empty() {
        return Err(Error::InvalidConfig(
            "rate and epsilon grids must not be empty".into(),
        ));
    }
    for &r in &config.rates {
        if !r.is_finite() || r <= 0.0 || r > 1.0 {
            return Err(Error::InvalidConfig(format!("rate {r} outside (0, 1]")));
        }
    }
    for &e in &config.epsilons {
        if !e.is_finite() || !(0.0..=1.0).contains(&e) {
            return Err(Error::InvalidConfig(format!("epsilon {e} outside [0, 1]")));
        }
    }
    if config.analytic && bundle.corpus.len() != 2 {
        return Err(Error::InvalidConfig(
            "analytic rows require exactly 2 documents".into(),
        ));
    }

    let xi = idf(&bundle.corpus);
    let masked_queries: Vec<FeatureVector> = bundle
        .queries
        .iter()
        .map(|q| apply_stop_mask(&term_frequency(q), &bundle.stop))
        .collect();
    let truths: Vec<usize> = masked_queries
        .iter()
        .map(|q| retrieve(q, &bundle.corpus, &xi).winner())
        .collect();

    let mut report = SweepReport::default();
    let trial_root = seed::child(config.master_seed, seed::stream::TRIALS);
    for (rate_ix, &rate) in config.rates.iter().enumerate() {
        let streams: Vec<_> = masked_queries
            .iter()
            .map(|q| encode(q, rate))
            .collect::<Result<_, _>>()?;
        for (eps_ix, &epsilon) in config.epsilons.iter().enumerate() {
            let label = seed::point_label(rate_ix, eps_ix);
            let point_seed = seed::child(trial_root, label);
            let mut mean_acc = 0.0;
            let mut var_acc = 0.0;
            let mut ties_total = 0u64;
            for (q_ix, stream) in streams.iter().enumerate() {
                let query_seed = seed::child(point_seed, q_ix as u64);
                let per_trial: Vec<(bool, bool)> = (0..config.trials)
                    .into_par_iter()
                    .map(|t| {
                        let mut rng =
                            ChaCha8Rng::seed_from_u64(seed::child(query_seed, u64::from(t)));
                        let pattern =
                            transmit(stream, epsilon, &mut rng).expect("epsilon validated above");
                        let received = retrieve(&decode(stream, &pattern), &bundle.corpus, &xi);
                        let tie = received.tie();
                        let error = received.winner() != truths[q_ix];
                        (error, tie)
                    })
                    .collect();
                let mut errors = 0u64;
                let mut ties = 0u64;
                for &(error, tie) in &per_trial {
                    ties += u64::from(tie);
                    errors += u64::from(error && !tie);
                }
                let p = errors as f64 / config.trials as f64;
                mean_acc += p;
                var_acc += p * (1.0 - p) / config.trials as f64;
                ties_total += ties;
            }
            let q_count = streams.len() as f64;
            report.curve.push(CurveRow {
                epsilon,
                rate,
                method: Method::MonteCarlo,
                error_prob: mean_acc / q_count,
                stderr: var_acc.sqrt() / q_count,
                samples: u64::from(config.trials) * streams.len() as u64,
                ties: ties_total,
                seed: config.master_seed,
            });
        }
    }

    if config.analytic {
        let doc1 = bundle.corpus.document(0);
        let doc2 = bundle.corpus.document(1);
        let analysis_root = seed::child(config.master_seed, seed::stream::ANALYSIS);
        for (rate_ix, &rate) in config.rates.iter().enumerate() {
            let repetitions = analytic_repetitions(rate);
            for (eps_ix, &epsilon) in config.epsilons.iter().enumerate() {
                let label = seed::point_label(rate_ix, eps_ix);
                let mut rng = ChaCha8Rng::seed_from_u64(seed::child(analysis_root, label));
                // The estimate depends on the query only through its length;
                // cache per distinct length.
                let mut by_len: HashMap<u32, ErrorEstimate> = HashMap::new();
                let mut mean_acc = 0.0;
                let mut var_acc = 0.0;
                let mut patterns = 0u64;
                let mut failed = None;
                for query in &bundle.queries {
                    let estimate = match by_len.entry(query.total()) {
                        std::collections::hash_map::Entry::Occupied(e) => *e.get(),
                        std::collections::hash_map::Entry::Vacant(slot) => {
                            let model = MaskedGaussianModel::from_probabilities(
                                Arc::clone(&bundle.probabilities),
                                query.total(),
                                &bundle.stop,
                            )?;
                            match analytic_error_probability(
                                doc1,
                                doc2,
                                &xi,
                                &model,
                                epsilon,
                                repetitions,
                                config.pattern_budget,
                                &mut rng,
                            ) {
                                Ok(est) => *slot.insert(est),
                                Err(e) => {
                                    failed = Some(e);
                                    break;
                                }
                            }
                        }
                    };
                    mean_acc += estimate.probability;
                    var_acc += estimate.stderr * estimate.stderr;
                    patterns = patterns.max(match estimate.mode {
                        AveragingMode::Exhaustive { patterns } => patterns,
                        AveragingMode::Sampled { budget } => budget,
                    });
                    report.analytic_modes.push((rate, epsilon, estimate.mode));
                }
                match failed {
                    Some(e) => report.failures.push(format!(
                        "analytic-empirical rate={rate} epsilon={epsilon}: {e}"
                    )),
                    None => {
                        let q_count = bundle.queries.len() as f64;
                        report.curve.push(CurveRow {
                            epsilon,
                            rate,
                            method: Method::AnalyticEmpirical,
                            error_prob: mean_acc / q_count,
                            stderr: var_acc.sqrt() / q_count,
                            samples: patterns,
                            ties: 0,
                            seed: config.master_seed,
                        });
                    }
                }
            }
        }
    }
    report.curve.sort();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn tokenize_rule_instances() {
        assert_eq!(
            tokenize("The cat, the CAT!"),
            vec!["the", "cat", "the", "cat"]
        );
        assert_eq!(tokenize(""), Vec::<String>::new());
        assert_eq!(tokenize("a1-b2"), vec!["a1", "b2"]);
        assert_eq!(tokenize("  \t\n "), Vec::<String>::new());
        assert_eq!(tokenize("Καλημέρα κόσμε"), vec!["καλημέρα", "κόσμε"]);
    }

    #[test]
    fn tokenize_bytes_reports_the_offset() {
        assert_eq!(tokenize_bytes(b"plain ascii").unwrap().len(), 2);
        let bad = [b'o', b'k', 0xFF, b'x'];
        match tokenize_bytes(&bad) {
            Err(Error::InvalidUtf8 { offset }) => assert_eq!(offset, 2),
            other => panic!("expected Utf8 error, got {other:?}"),
        }
    }

    #[test]
    fn bundle_hand_construction() {
        // docs ["a b a", "b c"], queries ["a c"]: frequency a=2, b=2, c=1;
        // the a/b tie breaks lexicographically.
        let docs = vec!["a b a".to_string(), "b c".to_string()];
        let queries = vec!["a c".to_string()];
        let bundle = build_real_bundle(&docs, &queries, &StopPolicy::TopK(0)).unwrap();
        assert_eq!(bundle.vocabulary_size(), 3);
        assert_eq!(bundle.term(1), "a");
        assert_eq!(bundle.term(2), "b");
        assert_eq!(bundle.term(3), "c");
        assert_eq!(bundle.rank("c"), Some(3));
        assert_eq!(bundle.rank("zzz"), None);
        let d1 = bundle.corpus().document(0);
        assert!((d1.get(1) - 2.0 / 3.0).abs() < 1e-15);
        assert!((d1.get(2) - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(bundle.stop().size(), 0);
        let total: f64 = bundle.probabilities().iter().sum();
        assert!((total - 1.0).abs() < 1e-12);
        // 5 corpus tokens: a=2, b=2, c=1.
        assert!((bundle.probabilities()[0] - 0.4).abs() < 1e-15);
        assert!((bundle.probabilities()[2] - 0.2).abs() < 1e-15);
    }

    #[test]
    fn query_only_terms_join_the_vocabulary_with_zero_mass() {
        let docs = vec!["alpha beta".to_string()];
        let queries = vec!["gamma alpha".to_string()];
        let bundle = build_real_bundle(&docs, &queries, &StopPolicy::TopK(0)).unwrap();
        assert_eq!(bundle.vocabulary_size(), 3);
        let rank = bundle.rank("gamma").unwrap();
        assert_eq!(bundle.probabilities()[rank as usize - 1], 0.0);
        let total: f64 = bundle.probabilities().iter().sum();
        assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn bundle_rejects_empty_inputs() {
        let docs = vec!["real words".to_string(), "!!!".to_string()];
        let queries = vec!["fine".to_string()];
        assert!(matches!(
            build_real_bundle(&docs, &queries, &StopPolicy::TopK(0)),
            Err(Error::EmptyDocument { index: 1 })
        ));
        let docs = vec!["real words".to_string()];
        let queries = vec!["...".to_string()];
        assert!(matches!(
            build_real_bundle(&docs, &queries, &StopPolicy::TopK(0)),
            Err(Error::EmptyQuery { index: 0 })
        ));
        assert!(build_real_bundle(&[], &queries, &StopPolicy::TopK(0)).is_err());
    }

    #[test]
    fn stop_policies_map_to_ranks() {
        let docs = vec![
            "the the the quick fox".to_string(),
            "the lazy dog".to_string(),
        ];
        let queries = vec!["quick dog".to_string()];
        let top = build_real_bundle(&docs, &queries, &StopPolicy::TopK(1)).unwrap();
        assert!(top.stop().contains(top.rank("the").unwrap()));
        let listed = build_real_bundle(
            &docs,
            &queries,
            &StopPolicy::Terms(vec!["The".into(), "unknown".into()]),
        )
        .unwrap();
        assert_eq!(listed.stop().size(), 1);
        assert!(listed.stop().contains(listed.rank("the").unwrap()));
    }

    fn tiny_config() -> ExperimentConfig {
        ExperimentConfig {
            rates: vec![1.0, 0.5],
            epsilons: vec![0.0, 0.5, 1.0],
            trials: 60,
            pattern_budget: 1000,
            master_seed: 5,
            analytic: true,
            ..ExperimentConfig::default()
        }
    }

    fn fixture_bundle() -> RealCorpusBundle {
        let docs = vec![
            "Sailing boats use wind pressure on the sails to move across water. \
             A keel keeps the boat from drifting sideways and the rudder steers."
                .to_string(),
            "Bread baking begins with flour, water, salt, and yeast. The dough \
             ferments, rises, and bakes in a hot oven until the crust browns."
                .to_string(),
        ];
        let queries = vec![
            "how does a sail catch the wind".to_string(),
            "what keeps a boat from drifting".to_string(),
            "how long should dough rise".to_string(),
            "baking bread in a hot oven".to_string(),
        ];
        build_real_bundle(&docs, &queries, &StopPolicy::TopK(2)).unwrap()
    }

    #[test]
    fn real_experiment_zero_epsilon_is_error_free() {
        let bundle = fixture_bundle();
        let report = run_real_experiment(&bundle, &tiny_config()).unwrap();
        assert!(report.failures.is_empty());
        for row in report.curve.method_rows(Method::MonteCarlo) {
            if row.epsilon == 0.0 {
                assert_eq!(row.error_prob, 0.0, "rate {}", row.rate);
            }
            assert_eq!(row.samples, 60 * 4);
        }
        // Analytic-empirical rows exist for each grid point.
        assert_eq!(
            report.curve.method_rows(Method::AnalyticEmpirical).count(),
            6
        );
    }

    #[test]
    fn identical_documents_tie_every_trial() {
        let docs = vec!["same words here".to_string(), "same words here".to_string()];
        let queries = vec!["words".to_string()];
        let bundle = build_real_bundle(&docs, &queries, &StopPolicy::TopK(0)).unwrap();
        let mut cfg = tiny_config();
        cfg.analytic = false;
        cfg.epsilons = vec![0.4];
        cfg.rates = vec![1.0];
        let report = run_real_experiment(&bundle, &cfg).unwrap();
        let row = report.curve.rows()[0];
        assert_eq!(row.error_prob, 0.0);
        assert_eq!(row.ties, 60);
    }

    #[test]
    fn real_experiment_is_deterministic() {
        let bundle = fixture_bundle();
        let cfg = tiny_config();
        let a = run_real_experiment(&bundle, &cfg).unwrap();
        let b = run_real_experiment(&bundle, &cfg).unwrap();
        assert_eq!(a.curve.rows(), b.curve.rows());
    }

    proptest! {
        #[test]
        fn tokenization_is_idempotent(text in "\\PC{0,120}") {
            let once = tokenize(&text);
            let rejoined = once.join(" ");
            prop_assert_eq!(tokenize(&rejoined), once);
        }
    }

    #[test]
    fn vocabulary_mapping_is_bijective() {
        let bundle = fixture_bundle();
        for rank in 1..=bundle.vocabulary_size() {
            let term = bundle.term(rank).to_owned();
            assert_eq!(bundle.rank(&term), Some(rank));
        }
        for doc in bundle.corpus().documents() {
            assert!((doc.sum() - 1.0).abs() < 1e-12);
        }
    }
}
