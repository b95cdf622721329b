//! Run the channel experiment on real text: two bundled documents and ten
//! queries, tokenized and ranked into an empirical vocabulary.
//!
//! Run with: `cargo run --release --example real_corpus`

use erasure_retrieval::ingest::{build_real_bundle, run_real_experiment, StopPolicy};
use erasure_retrieval::simulation::{ExperimentConfig, Method};

fn main() -> Result<(), erasure_retrieval::Error> {
    let docs = vec![
        include_str!("../tests/fixtures/doc_sailing.txt").to_string(),
        include_str!("../tests/fixtures/doc_baking.txt").to_string(),
    ];
    let queries: Vec<String> = include_str!("../tests/fixtures/queries.txt")
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(str::to_owned)
        .collect();

    let bundle = build_real_bundle(&docs, &queries, &StopPolicy::TopK(10))?;
    println!(
        "vocabulary: {} terms from {} documents and {} queries",
        bundle.vocabulary_size(),
        bundle.corpus().len(),
        bundle.queries().len()
    );
    println!("most frequent terms (masked as stop words):");
    for rank in 1..=5 {
        println!(
            "  rank {rank}: {:?} (p = {:.4})",
            bundle.term(rank),
            bundle.probabilities()[rank as usize - 1]
        );
    }

    let config = ExperimentConfig {
        rates: vec![1.0, 0.5],
        epsilons: (0..=10).map(|i| i as f64 / 10.0).collect(),
        trials: 500,
        pattern_budget: 20_000,
        master_seed: 99,
        analytic: true,
        ..ExperimentConfig::default()
    };
    let report = run_real_experiment(&bundle, &config)?;

    println!("\nchannel-only Monte Carlo over the fixed queries:");
    println!("  epsilon   R=1 error     R=1/2 error");
    for &epsilon in &config.epsilons {
        let pick = |rate: f64| {
            report
                .curve
                .method_rows(Method::MonteCarlo)
                .find(|r| r.rate == rate && r.epsilon == epsilon)
                .map(|r| r.error_prob)
                .unwrap_or(f64::NAN)
        };
        println!(
            "  {epsilon:>6.2}   {:>9.4}   {:>11.4}",
            pick(1.0),
            pick(0.5)
        );
    }
    Ok(())
}
