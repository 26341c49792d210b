//! Coefficient spaces at the apex of Bergman fans against Orlik-Solomon
//! Betti numbers.

use tropical_homology::cosheaf::fan_coefficient_space;
use tropical_homology::matroid::{bergman_fan, os_betti, Matroid};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let k4 = Matroid::graphic(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])?;
    let cases = [
        ("U(2,3)", Matroid::uniform(2, 3)?),
        ("U(3,4)", Matroid::uniform(3, 4)?),
        ("U(3,5)", Matroid::uniform(3, 5)?),
        ("free(3)", Matroid::free(3)?),
        ("K4", k4),
    ];
    for (name, m) in &cases {
        let b = os_betti(m)?;
        let fan = bergman_fan(m)?;
        let f: Vec<usize> = (0..b.len()).map(|p| fan_coefficient_space(&fan, p).dim()).collect();
        println!("{name:8} flats {:3}  os_betti {b:?}  dim F_p {f:?}", m.flats().len());
    }
    Ok(())
}
