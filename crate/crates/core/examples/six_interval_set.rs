//! Switching the halving map off on `[2/7, 1)` makes the orbit construction close up after
//! finitely many steps, producing an exact six-interval wavelet set.

use wavesets::gallery;
use wavesets::scb::{combine, ScbOptions};
use wavesets::{verify_wavelet_set, wavelet_set_from_isomorphism};

fn main() -> wavesets::Result<()> {
    let u = gallery::contraction_by_half();
    let v = gallery::halving_switched();
    let (h, trace) = combine(&u, &v, &ScbOptions::default())?;
    println!("depth {}, residual empty: {}", trace.depth, trace.residual.is_empty());
    for p in h.map.pieces() {
        println!("  [{}, {}) -> 2^{} x + {}", p.dom().lo(), p.dom().hi(), p.exponent(), p.offset());
    }

    let w = wavelet_set_from_isomorphism(&h.map)?;
    println!("{}", w.pi_units());
    println!("tiles: {}", verify_wavelet_set(&w)?.ok);
    assert_eq!(w, gallery::six_interval());
    Ok(())
}
