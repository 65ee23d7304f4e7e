//! BDD transition probabilities of the (15,7,2) code: exact enumeration
//! against a Monte Carlo estimate.
//!
//! Run with `cargo run --release --example transition_table`.

use pc_fec::bch::BchCode;
use pc_fec::de::TransitionTable;

fn main() -> pc_fec::error::Result<()> {
    let code = BchCode::new(4, 2)?;
    let exact = TransitionTable::exhaustive(&code)?;
    let mc = TransitionTable::monte_carlo(&code, 100_000, 5);
    println!("  i      p_e      p_c    p_eps      q_e      q_c    q_eps  max|z|");
    for (e, m) in exact.entries.iter().zip(&mc.entries).take(8) {
        let z = e
            .values()
            .iter()
            .zip(m.values())
            .zip(m.standard_errors())
            .map(|((a, b), se)| if se > 0.0 { (a - b).abs() / se } else { 0.0 })
            .fold(0.0, f64::max);
        let v = e.values();
        println!(
            "{:3} {:8.5} {:8.5} {:8.5} {:8.5} {:8.5} {:8.5} {:7.2}",
            e.i, v[0], v[1], v[2], v[3], v[4], v[5], z
        );
    }
    Ok(())
}
