//! Build a Zipf vocabulary, sample queries from it, and compare empirical
//! term counts with the exact multinomial moments.
//!
//! Run with: `cargo run --example zipf_queries`

use erasure_retrieval::vocab::{build_vocabulary, moments, sample_term_counts};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<(), erasure_retrieval::Error> {
    let vocab = build_vocabulary(1000, 1.0)?;
    println!(
        "vocabulary: {} terms, alpha = {}",
        vocab.size(),
        vocab.alpha()
    );
    println!("top-5 probabilities:");
    for rank in 1..=5 {
        println!("  rank {rank}: p = {:.5}", vocab.prob(rank));
    }

    let query_len = 50;
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let counts = sample_term_counts(&vocab, query_len, &mut rng)?;
    println!(
        "\none sampled query ({} draws, {} distinct terms):",
        counts.total(),
        counts.entries().len()
    );
    for &(rank, count) in counts.entries().iter().take(8) {
        println!("  rank {rank}: {count}x");
    }

    // Empirical means over many queries against l * p_i.
    let trials = 20_000;
    let mut sums = [0u64; 5];
    for _ in 0..trials {
        let c = sample_term_counts(&vocab, query_len, &mut rng)?;
        for rank in 1..=5u32 {
            sums[rank as usize - 1] += u64::from(c.count(rank));
        }
    }
    let m = moments(&vocab, query_len)?;
    println!("\nempirical vs exact mean count over {trials} queries:");
    for rank in 1..=5u32 {
        let empirical = sums[rank as usize - 1] as f64 / trials as f64;
        println!(
            "  rank {rank}: {empirical:.4} vs {:.4} (sd {:.4})",
            m.mean_at(rank),
            m.covariance_at(rank, rank).sqrt()
        );
    }
    Ok(())
}
