//! Combines the contraction `u` with the halving map `x/2`. The orbit construction never
//! terminates exactly, so the resulting wavelet set is built from a finite prefix of the
//! exceptional intervals `[z_n, x_{n+1})`.

use wavesets::gallery::{self, halving_a, halving_wavelet_set, halving_x, halving_z};
use wavesets::rational::{pow2, to_f64};
use wavesets::scb::{combine, ScbOptions};
use wavesets::unit_map::lift;
use wavesets::verify_wavelet_set;

fn main() -> wavesets::Result<()> {
    for n in 1..=4 {
        println!("z_{n} = {:<12} x_{} = {}", halving_z(n).to_string(), n + 1, halving_x(n + 1));
    }

    let opts = ScbOptions::with_tol(pow2(-30));
    let (h, trace) = combine(&gallery::contraction_by_half(), &gallery::halving(), &opts)?;
    println!(
        "depth {} residual {:.3e} resolved {} pieces",
        trace.depth,
        to_f64(&trace.residual.measure()),
        h.map.pieces().len()
    );

    let w = lift(&h.map, &h.map.domain())?;
    let cert = verify_wavelet_set(&w)?;
    println!("wavelet set with {} intervals, tiling defect {:.3e}", w.interval_count(), to_f64(&cert.defect()));

    let reference = halving_wavelet_set(&halving_a(12));
    let gap = reference.pi_units().symdiff(w.pi_units()).measure();
    println!("differs from the 12-term closed form on measure {:.3e}", to_f64(&gap));
    Ok(())
}
