//! Kernel values and Gram matrices for the four supported kernels.

use pyroclass::kernels::{gram, RowMatrix};
use pyroclass::KernelSpec;

fn main() -> pyroclass::Result<()> {
    let data = [0.0, 0.0, 1.0, 0.0, 0.0, 1.0, 1.0, 1.0];
    let x = RowMatrix::new(&data, 2)?;
    let kernels = [
        KernelSpec::Linear,
        KernelSpec::Polynomial { offset: 1.0, degree: 2 },
        KernelSpec::gaussian_from_sigma(1.0)?,
        KernelSpec::Sigmoid { alpha: 0.5, beta: -1.0 },
    ];
    for k in kernels {
        let g = gram(&k, x)?;
        println!("{k}");
        for i in 0..x.n_rows() {
            let row: Vec<String> = g.row(i).iter().map(|v| format!("{v:8.4}")).collect();
            println!("  {}", row.join(" "));
        }
    }
    Ok(())
}
