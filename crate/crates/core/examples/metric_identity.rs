//! The distance between two wavelet sets computed directly in frequency and through the
//! interval maps of their induced isomorphisms.

use wavesets::gallery;
use wavesets::homotopy::metric_via_isomorphisms;
use wavesets::{induced_isomorphism, metric_d};

fn main() -> wavesets::Result<()> {
    let names = ["littlewood_paley", "journe", "S8", "six_interval"];
    for (i, a) in names.iter().enumerate() {
        for b in &names[i + 1..] {
            let wa = gallery::get(a)?.wavelet_set().cloned().expect("set entry");
            let wb = gallery::get(b)?.wavelet_set().cloned().expect("set entry");
            let direct = metric_d(&wa, &wb)?;
            let via = metric_via_isomorphisms(&induced_isomorphism(&wa)?, &induced_isomorphism(&wb)?)?;
            println!("d({a}, {b}) = {direct:.9}  via isomorphisms {via:.9}");
        }
    }
    Ok(())
}
