//! TF-IDF retrieval against a two-document corpus, with and without
//! channel erasures.
//!
//! Run with: `cargo run --example retrieve_two_docs`

use erasure_retrieval::coding::{decode, encode, transmit};
use erasure_retrieval::features::{apply_stop_mask, term_frequency, top_rank_stop_set};
use erasure_retrieval::retrieval::{idf, retrieve, Corpus};
use erasure_retrieval::vocab::{build_vocabulary, sample_document_counts, sample_term_counts};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<(), erasure_retrieval::Error> {
    let vocab = build_vocabulary(2000, 1.0)?;
    let stop = top_rank_stop_set(&vocab, 10)?;
    let mut rng = ChaCha8Rng::seed_from_u64(11);

    let docs = vec![
        term_frequency(&sample_document_counts(&vocab, 500, &mut rng)?),
        term_frequency(&sample_document_counts(&vocab, 500, &mut rng)?),
    ];
    let corpus = Corpus::new(vocab.size(), docs)?;
    let xi = idf(&corpus);
    println!(
        "corpus: {} documents, {} and {} distinct terms",
        corpus.len(),
        corpus.document(0).len(),
        corpus.document(1).len()
    );

    let mut flips = 0;
    let trials = 20;
    for t in 0..trials {
        let counts = sample_term_counts(&vocab, 50, &mut rng)?;
        let sent = apply_stop_mask(&term_frequency(&counts), &stop);
        let truth = retrieve(&sent, &corpus, &xi);

        let stream = encode(&sent, 0.5)?;
        let pattern = transmit(&stream, 0.7, &mut rng)?;
        let received = retrieve(&decode(&stream, &pattern), &corpus, &xi);

        let flipped = truth.winner() != received.winner();
        flips += u32::from(flipped);
        if t < 5 {
            println!(
                "query {t}: clean scores ({:.5}, {:.5}) -> doc {}; after channel -> doc {}{}",
                truth.scores()[0],
                truth.scores()[1],
                truth.winner(),
                received.winner(),
                if flipped { "  [decision flipped]" } else { "" }
            );
        }
    }
    println!("\n{flips} of {trials} decisions flipped at epsilon = 0.7, rate = 0.5");
    Ok(())
}
