//! Exact beta of the g25 Table 2 structure at t = 0.

use hexstable::conditions::{beta_matrix, hermitian_psd};
use hexstable::liealg::lookup;
use hexstable::stable::almost_complex;

fn main() {
    let entry = lookup("g25").unwrap();
    let g = entry.algebra().unwrap();
    let ex = entry.su3_example.as_ref().unwrap();
    let t = almost_complex(&ex.rho).unwrap();
    let c = t.complex_coframe();
    let d_hat = g.differential(t.hat());
    let b = beta_matrix(&d_hat, &c).unwrap();
    println!("greedy indices: {:?}", c.indices);
    for m in 0..3 {
        for n in 0..3 {
            println!("beta[{m}][{n}] = {}", b.get(m, n));
        }
    }
    println!("minors: {:?}", b.principal_minors().map(|x| x.to_string()));
    println!("psd: {:?}", hermitian_psd(&b));
    println!("lambda = {}", t.lambda());
}
