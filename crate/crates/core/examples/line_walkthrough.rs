//! The tropical line in TP^2, step by step: faces, coefficient spaces,
//! cellular chain groups and the resulting table.

use tropical_homology::cosheaf::coefficient_space;
use tropical_homology::exact::q;
use tropical_homology::homology::{chain_complex, hodge_table};
use tropical_homology::tropgeo::fan_linear_space;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let x = fan_linear_space(&[q(0), q(0)], 1)?;
    println!("{} faces in TP^{}", x.len(), x.n());
    for (i, f) in x.faces().iter().enumerate() {
        let dims: Vec<usize> = (0..=x.n()).map(|p| coefficient_space(&x, i, p).dim()).collect();
        println!(
            "  face {i}: dim {}, sedentarity {:?}, rays {:?}, dim F_p for p = 0..: {dims:?}",
            f.dim(),
            f.sedentarity().to_vec(),
            f.rays().iter().map(|r| r.to_vec()).collect::<Vec<_>>(),
        );
    }
    for p in 0..=x.dim() {
        let c = chain_complex(&x, p)?;
        let dims: Vec<usize> = (0..c.len()).map(|q| c.chain_dim(q)).collect();
        println!(
            "p = {p}: chain dims {dims:?}, ranks of boundaries {:?}",
            c.boundary_ranks()
        );
    }
    let h = hodge_table(&x)?;
    print!("{}", h.to_text());
    println!("E = {}", h.e_polynomial());
    Ok(())
}
