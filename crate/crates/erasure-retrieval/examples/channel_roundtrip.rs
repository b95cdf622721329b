//! Push one query through the full transmit path: term frequencies, stop
//! masking, importance-weighted repetition encoding, the erasure channel,
//! and decoding.
//!
//! Run with: `cargo run --example channel_roundtrip`

use erasure_retrieval::coding::{decode, encode, pattern_probability, transmit};
use erasure_retrieval::features::{apply_stop_mask, term_frequency, top_rank_stop_set};
use erasure_retrieval::vocab::{build_vocabulary, sample_term_counts};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<(), erasure_retrieval::Error> {
    let vocab = build_vocabulary(500, 1.0)?;
    let stop = top_rank_stop_set(&vocab, 5)?;
    let mut rng = ChaCha8Rng::seed_from_u64(7);

    let counts = sample_term_counts(&vocab, 30, &mut rng)?;
    let sent = apply_stop_mask(&term_frequency(&counts), &stop);
    println!(
        "query: 30 draws, {} distinct terms, {} after masking the top {}",
        counts.entries().len(),
        sent.len(),
        stop.size()
    );

    let rate = 0.5;
    let stream = encode(&sent, rate)?;
    println!(
        "encoded {} symbols at nominal rate {rate} (realized {:.3}):",
        stream.len(),
        stream.realized_rate()
    );
    for symbol in stream.symbols().iter().take(6) {
        println!(
            "  (rank {:>3}, weight {:.4}) sent {} time(s)",
            symbol.index, symbol.value, symbol.repetitions
        );
    }

    let epsilon = 0.6;
    let pattern = transmit(&stream, epsilon, &mut rng)?;
    println!(
        "\nchannel at epsilon = {epsilon}: {} of {} symbols survived ({} fully erased)",
        pattern.survivor_count(),
        stream.len(),
        pattern.erased_count()
    );
    println!(
        "this exact outcome had probability {:.3e}",
        pattern_probability(&stream, &pattern, epsilon)
    );

    let received = decode(&stream, &pattern);
    let lost_mass: f64 = sent.sum() - received.sum();
    println!(
        "decoded vector keeps {} of {} entries; {:.4} of the weight was lost",
        received.len(),
        sent.len(),
        lost_mass
    );
    Ok(())
}
