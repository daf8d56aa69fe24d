//! Moments of the normalized position sums against the arcsine law on
//! [-√2, √2], whose even moments are C(2n, n) / 2^n.
//!
//! ```bash
//! cargo run -p monotone-fock --example arcsine_law
//! ```

use monotone_fock::clt_harness::{arcsine_moment, arcsine_moment_exact, position_sum_moment};
use monotone_fock::discrete_fock::OrderFlag;

fn main() {
    let grids = [8u32, 32, 128, 512];
    println!("   m        N=8       N=32      N=128      N=512      limit   exact");
    for m in 0..=8u32 {
        print!("  {m:>2} ");
        for &n_grid in &grids {
            let value = position_sum_moment(m, n_grid, OrderFlag::Monotone).unwrap();
            print!("  {value:>8.5}");
        }
        println!(
            "   {:>8.5}   {}",
            arcsine_moment(m),
            arcsine_moment_exact(m)
        );
    }

    // the anti-monotone sums have the same constant-function moments
    let mono = position_sum_moment(6, 128, OrderFlag::Monotone).unwrap();
    let anti = position_sum_moment(6, 128, OrderFlag::AntiMonotone).unwrap();
    println!("\nm=6 at N=128, monotone vs anti-monotone: {mono} vs {anti}");
}
