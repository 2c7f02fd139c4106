//! Checks the translation and dilation tilings of the gallery sets and of a set that fails.

use wavesets::gallery;
use wavesets::{verify_wavelet_set, FreqSet, Interval, IntervalSet, Rational};

fn main() -> wavesets::Result<()> {
    for entry in gallery::list() {
        if let Some(w) = entry.wavelet_set() {
            let cert = verify_wavelet_set(w)?;
            println!("{:<18} {} intervals  ok={}", entry.name, w.interval_count(), cert.ok);
        }
    }

    // [π, 3π) covers every translation class but misses the negative dilation classes.
    let one = Rational::from_integer(1.into());
    let three = Rational::from_integer(3.into());
    let bad = FreqSet::new(IntervalSet::single(Interval::new(one, three)?));
    let cert = verify_wavelet_set(&bad)?;
    println!(
        "[π,3π): ok={} translation defect {} dilation defect {}",
        cert.ok, cert.translation_defect, cert.dilation_defect
    );
    if let Some(w) = &cert.dilation_witness {
        println!("  dilation classes missed or doubled: {}", w.pi_units());
    }
    Ok(())
}
