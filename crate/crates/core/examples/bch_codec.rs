//! Encode a message with the (255,231,3) BCH code, flip up to four bits
//! and bounded-distance decode.
//!
//! Run with `cargo run --release --example bch_codec`.

use pc_fec::bch::{BchCode, DecodeOutcome};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> pc_fec::error::Result<()> {
    let code = BchCode::new(8, 3)?;
    println!(
        "BCH({}, {}, t={})  d_min={}  generator=0x{:x}",
        code.n(),
        code.k(),
        code.t(),
        code.d_min(),
        code.generator()
    );
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let message: Vec<u8> = (0..code.k()).map(|_| rng.random_range(0..2)).collect();
    let codeword = code.encode(&message)?;
    assert!(code.is_codeword(&codeword));
    for weight in 0..=4 {
        let mut received = codeword.clone();
        let flips = sample(&mut rng, code.n(), weight).into_vec();
        for &p in &flips {
            received[p] ^= 1;
        }
        let verdict = match code.bdd_decode(&received)? {
            DecodeOutcome::Corrected { codeword: c, flips } if c == codeword => format!("corrected ({flips} flips)"),
            DecodeOutcome::Corrected { flips, .. } => format!("miscorrected ({flips} flips)"),
            DecodeOutcome::Failure => "failure".to_string(),
        };
        println!("{weight} errors at {flips:?}: {verdict}");
    }
    Ok(())
}
