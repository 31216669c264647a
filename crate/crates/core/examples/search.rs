//! Multistart search for totally geodesic hyperplanes.
//!
//! cargo run --release --example search -- nonhomo 64

use tghyper::catalog::lookup_spec;
use tghyper::tg::{search_tg_hyperplanes, SearchConfig};

fn main() -> tghyper::Result<()> {
    let mut args = std::env::args().skip(1);
    let spec = args.next().unwrap_or_else(|| "sl2:a=1,b=1".into());
    let seeds = args.next().and_then(|s| s.parse().ok()).unwrap_or(64);
    let m = lookup_spec(&spec)?.require_algebra()?.clone();
    let cfg = SearchConfig {
        seeds,
        ..SearchConfig::default()
    };
    let r = search_tg_hyperplanes(&m, &cfg);
    println!("{spec}: {} of {seeds} starts converged", r.passing_starts);
    if r.continuum_detected {
        println!("continuum of solutions detected");
    }
    for (n, res) in r.normals.iter().zip(&r.residuals) {
        println!("  normal {n:.6?}  residual {res:e}");
    }
    Ok(())
}
