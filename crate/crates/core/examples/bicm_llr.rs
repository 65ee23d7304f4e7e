//! Bit LLRs of Gray-labelled 4-ASK (16-QAM per dimension), exact against
//! max-log, and the hard-decision error probability of the mixture law
//! against a simulated one. The mixture law is tight near the operating
//! points; at low SNR it overstates the error rate of 8-ASK.
//!
//! Run with `cargo run --release --example bicm_llr`.

use pc_fec::channel::{ChannelModel, LlrMethod, Modulation};
use pc_fec::mixture::MixtureLlrModel;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn main() -> pc_fec::error::Result<()> {
    let ch = ChannelModel::from_ebn0(Modulation::Ask { m: 2 }, 7.5, 0.82, LlrMethod::Exact)?;
    println!("sigma {:.4}", ch.sigma());
    println!("     y    exact[0] maxlog[0]   exact[1] maxlog[1]");
    for i in -6..=6 {
        let y = i as f64 * 0.25;
        let (e, m) = (ch.exact_llr(y), ch.maxlog_llr(y));
        println!("{y:6.2} {:10.3} {:9.3} {:10.3} {:9.3}", e[0], m[0], e[1], m[1]);
    }
    for (m, ebn0) in [(1, 4.0), (2, 7.5), (3, 11.0)] {
        let ch = ChannelModel::from_ebn0(Modulation::Ask { m }, ebn0, 0.82, LlrMethod::MaxLog)?;
        let model = MixtureLlrModel::for_channel(&ch);
        let mut rng = ChaCha8Rng::seed_from_u64(m as u64);
        let bits = 600_000;
        let mut tx = vec![0u8; bits];
        rng.fill(&mut tx[..]);
        for b in &mut tx {
            *b &= 1;
        }
        let mut llrs = vec![0.0; bits];
        ch.transmit(&tx, &mut rng, &mut llrs)?;
        let errors = tx.iter().zip(&llrs).filter(|(b, l)| (**l < 0.0) != (**b == 1)).count();
        println!(
            "{}-ASK at {ebn0} dB: p_ch formula {:.5e}, simulated {:.5e}",
            1 << m,
            model.p_ch,
            errors as f64 / bits as f64
        );
    }
    Ok(())
}
