//! The central cross-validation: Monte Carlo error rates against the
//! pattern-averaged Gaussian formula, on one synthetic corpus.
//!
//! Run with: `cargo run --release --example theory_vs_simulation`

use erasure_retrieval::simulation::{sweep, ExperimentConfig, Method, StopPolicy};

fn main() -> Result<(), erasure_retrieval::Error> {
    let config = ExperimentConfig {
        vocab_size: 2000,
        alpha: 1.0,
        query_len: 50,
        stop: StopPolicy::TopRanks(10),
        documents: 2,
        doc_len: 500,
        rates: vec![1.0, 0.5],
        epsilons: (1..=9).map(|i| i as f64 / 10.0).collect(),
        trials: 1000,
        pattern_budget: 50_000,
        master_seed: 2024,
        analytic: true,
        ..ExperimentConfig::default()
    };
    eprintln!(
        "sweeping {} grid points with {} trials each...",
        config.rates.len() * config.epsilons.len(),
        config.trials
    );
    let report = sweep(&config)?;

    for &rate in &config.rates {
        println!(
            "\nrate R = {rate} (analytic repetitions r = {}):",
            (1.0 / rate).round()
        );
        println!("  epsilon   montecarlo (stderr)      analytic (stderr)      |gap|");
        for &epsilon in &config.epsilons {
            let find = |method: Method| {
                report
                    .curve
                    .method_rows(method)
                    .find(|r| r.rate == rate && r.epsilon == epsilon)
                    .expect("row exists")
            };
            let mc = find(Method::MonteCarlo);
            let an = find(Method::Analytic);
            println!(
                "  {epsilon:>6.2}   {:>8.4} ({:.4})     {:>8.4} ({:.4})     {:.4}",
                mc.error_prob,
                mc.stderr,
                an.error_prob,
                an.stderr,
                (mc.error_prob - an.error_prob).abs()
            );
        }
    }
    Ok(())
}
