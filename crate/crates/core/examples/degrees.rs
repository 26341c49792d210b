//! Tropical degrees by stable intersection with a generic linear space.

use tropical_homology::exact::q;
use tropical_homology::hypersurface::{build_hypersurface, degree, HeightFunction};
use tropical_homology::matroid::{bergman_complex, Matroid};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for n in [2, 3] {
        for d in 1..=3 {
            let x = build_hypersurface(&HeightFunction::alcoved(n, d)?)?;
            let ds: Vec<u64> = (0..5).map(|s| degree(&x, s)).collect::<Result<_, _>>()?;
            println!("smooth V_a, N = {n}, d = {d}: degree over seeds 0..5 = {ds:?}");
        }
    }
    // coarse heights: weighted edges still add up to d
    let flat = build_hypersurface(&HeightFunction::constant(2, 3, q(0))?)?;
    println!("a = 0, N = 2, d = 3: degree {}", degree(&flat, 0)?);
    for (r, m) in [(2, 4), (3, 4), (2, 5)] {
        let y = bergman_complex(&Matroid::uniform(r, m)?)?;
        println!("closure of the U({r},{m}) Bergman fan: degree {}", degree(&y, 0)?);
    }
    Ok(())
}
