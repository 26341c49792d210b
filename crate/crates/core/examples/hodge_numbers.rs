//! Hodge tables of smooth tropical hypersurfaces built from alcoved heights.
//!
//! Usage: `cargo run --release --example hodge_numbers -- [N] [d]`
//! (defaults: plane curves of degree 1..=4 and the quadric surface).

use std::time::Instant;

use tropical_homology::homology::hodge_table;
use tropical_homology::hypersurface::{build_hypersurface, is_smooth, HeightFunction};

fn report(n: usize, d: u32) -> Result<(), Box<dyn std::error::Error>> {
    let t = Instant::now();
    let a = HeightFunction::alcoved(n, d)?;
    assert!(is_smooth(&a), "alcoved heights are unimodular");
    let x = build_hypersurface(&a)?;
    let built = t.elapsed();
    let h = hodge_table(&x)?;
    println!(
        "N = {n}, d = {d}: {} faces, built in {built:.2?}, total {:.2?}",
        x.len(),
        t.elapsed()
    );
    print!("{}", h.to_text());
    println!("E = {}\n", h.e_polynomial());
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<u32> = std::env::args().skip(1).map(|s| s.parse()).collect::<Result<_, _>>()?;
    match args.as_slice() {
        [n, d] => report(*n as usize, *d)?,
        _ => {
            for d in 1..=4 {
                report(2, d)?;
            }
            report(3, 2)?;
        }
    }
    Ok(())
}
