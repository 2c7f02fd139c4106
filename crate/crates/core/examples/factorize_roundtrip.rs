//! Splits induced isomorphisms into a WI1 factor and a WI2 factor and recombines them.

use wavesets::gallery;
use wavesets::rational::to_f64;
use wavesets::scb::{combine, default_tol, factorize, ScbOptions};
use wavesets::{disagreement_set, induced_isomorphism};

fn main() -> wavesets::Result<()> {
    let tol = default_tol();
    for name in ["S8", "journe", "six_interval", "littlewood_paley"] {
        let w = gallery::get(name)?.wavelet_set().cloned().expect("set entry");
        let h = induced_isomorphism(&w)?;
        let f = factorize(&h, &tol)?;
        let (back, _) = combine(&f.u, &f.v.map, &ScbOptions::with_tol(tol.clone()))?;
        let diff = disagreement_set(&back.map, &h).measure();
        println!(
            "{name:<17} u: {} pieces  v: {} pieces  contracting part {}  recombined error {:.3e}",
            f.u.pieces().len(),
            f.v.map.pieces().len(),
            f.d1,
            to_f64(&diff)
        );
    }
    Ok(())
}
