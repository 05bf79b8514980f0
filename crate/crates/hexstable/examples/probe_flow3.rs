//! Greedy-coframe beta eigenvalues along the g6 flow, plus nu0 monitor.

use hexstable::conditions::beta_matrix;
use hexstable::flow::{flow_integrate, hermitian3_eigenvalues, initial_from_su3};
use hexstable::liealg::lookup;
use hexstable::stable::almost_complex;
use num::complex::Complex64;

fn main() {
    let entry = lookup("g6").unwrap();
    let g = entry.algebra().unwrap();
    let init = initial_from_su3(entry.su3_example.as_ref().unwrap());
    let trace = flow_integrate(&g, init, 0.1, 1e-3);
    for (i, s) in trace.states.iter().enumerate().step_by(25) {
        let triple = almost_complex(&s.rho).unwrap();
        let coframe = triple.complex_coframe();
        let d_hat = g.differential(triple.hat());
        let b = beta_matrix(&d_hat, &coframe).unwrap();
        let mut m = [[Complex64::new(0.0, 0.0); 3]; 3];
        for r in 0..3 {
            for c in 0..3 {
                m[r][c] = *b.get(r, c);
            }
        }
        let eigs = hermitian3_eigenvalues(&m);
        let h1 = s.rho.coefficient(0b000111);
        let h2 = s.rho.coefficient(0b100011);
        let sv = (-h2 * h2 + h1 + h2).sqrt();
        let mut pred = [sv, sv, (1.0 - 2.0 * h2) * sv];
        pred.sort_by(f64::total_cmp);
        println!(
            "t={:.3} greedy idx={:?} eigs={:?} pred={:?} nu0={:.6}",
            s.t, coframe.indices, eigs, pred, trace.monitors[i].nu0
        );
    }
}
