//! Induced isomorphisms of the gallery sets, their classification, and the round trip back
//! to the wavelet set.

use wavesets::gallery;
use wavesets::{induced_isomorphism, wavelet_set_from_isomorphism};

fn main() -> wavesets::Result<()> {
    for name in ["littlewood_paley", "journe", "S8", "six_interval"] {
        let w = gallery::get(name)?.wavelet_set().cloned().expect("set entry");
        let h = induced_isomorphism(&w)?;
        let c = h.classify();
        println!("{name}: {} pieces, WI={} WI1={} WI2={}", h.pieces().len(), c.in_wi, c.in_wi1, c.in_wi2);
        for p in h.pieces() {
            println!("  [{}, {}) -> 2^{} x + {}", p.dom().lo(), p.dom().hi(), p.exponent(), p.offset());
        }
        assert_eq!(wavelet_set_from_isomorphism(&h)?, w);
    }
    Ok(())
}
