//! Samples the continuous path of wavelet sets from the Journé set to `[-2π,-π) ∪ [π,2π)`.

use wavesets::gallery;
use wavesets::homotopy::WaveletPath;
use wavesets::rational::{rat, to_f64};
use wavesets::scb::default_tol;
use wavesets::{littlewood_paley, metric_d};

fn main() -> wavesets::Result<()> {
    let start = gallery::journe();
    let path = WaveletPath::new(&start, &default_tol())?;
    let end = littlewood_paley();
    println!("{:>5} {:>9} {:>11} {:>9} {:>9}", "t", "intervals", "defect", "d(W,W0)", "d(W,E)");
    let mut prev: Option<wavesets::FreqSet> = None;
    for k in 0..=8 {
        let t = rat(k, 8);
        let p = path.at(&t)?;
        println!(
            "{:>5} {:>9} {:>11.3e} {:>9.4} {:>9.4}",
            t.to_string(),
            p.w_t.interval_count(),
            to_f64(&p.certificate.defect()),
            metric_d(&p.w_t, &start)?,
            metric_d(&p.w_t, &end)?
        );
        if let Some(q) = &prev {
            println!("{:>5} step distance {:.4}", "", metric_d(q, &p.w_t)?);
        }
        prev = Some(p.w_t);
    }
    Ok(())
}
