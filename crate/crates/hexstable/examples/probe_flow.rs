//! Scratch probe: beta eigenvalues along the g6 and g25 flows vs the
//! printed scalar ODE oracles.

use hexstable::flow::{flow_integrate, initial_from_su3};
use hexstable::liealg::lookup;

fn rk4_scalar<F: Fn(f64, &[f64; 4]) -> [f64; 4]>(f: F, y0: [f64; 4], t_end: f64, dt: f64) -> Vec<(f64, [f64; 4])> {
    let mut out = vec![(0.0, y0)];
    let mut t = 0.0;
    let mut y = y0;
    while t + 1e-12 < t_end {
        let h = dt.min(t_end - t);
        let k1 = f(t, &y);
        let add = |y: &[f64;4], k: &[f64;4], c: f64| -> [f64;4] { std::array::from_fn(|i| y[i] + c*k[i]) };
        let k2 = f(t + h/2.0, &add(&y, &k1, h/2.0));
        let k3 = f(t + h/2.0, &add(&y, &k2, h/2.0));
        let k4 = f(t + h, &add(&y, &k3, h));
        y = std::array::from_fn(|i| y[i] + h/6.0*(k1[i] + 2.0*k2[i] + 2.0*k3[i] + k4[i]));
        t += h;
        out.push((t, y));
    }
    out
}

fn main() {
    // g6: (f1, f2, h1, h2), printed system
    let g6_ode = |_t: f64, y: &[f64; 4]| -> [f64; 4] {
        let (f1, f2, h1, h2) = (y[0], y[1], y[2], y[3]);
        let _ = h1;
        [
            (2.0 * h2 - 1.0) / (2.0 * f1.powi(3) * f2),
            -(2.0 * f1 + f2 * (2.0 * h2 - 1.0)) / (2.0 * f1.powi(4) * f2),
            -2.0 * f1,
            -f2,
        ]
    };
    let oracle6 = rk4_scalar(g6_ode, [1.0, 1.0, 1.0, 0.0], 0.1, 1e-3);

    let entry = lookup("g6").unwrap();
    let g = entry.algebra().unwrap();
    let trace = flow_integrate(&g, initial_from_su3(entry.su3_example.as_ref().unwrap()), 0.1, 1e-3);
    println!("g6 aborted={:?} warnings={:?}", trace.aborted, trace.warnings);
    for (i, m) in trace.monitors.iter().enumerate().step_by(25) {
        let (t, y) = oracle6[i];
        let s = (-y[3] * y[3] + y[2] + y[3]).sqrt();
        let l3 = (1.0 - 2.0 * y[3]) * s;
        let mut pred = [s, s, l3];
        pred.sort_by(f64::total_cmp);
        println!(
            "g6 t={:.3} eigs={:?} pred={:?} omega_coeffs f1(t)={:.6} f2(t)={:.6} | om13={:.6} om15={:.6} om24={:.6} om36={:.6} rho123={:.6} rho126={:.6}",
            t, m.beta_eigs, pred, y[0], y[1],
            trace.states[i].omega.coefficient(0b000101),
            trace.states[i].omega.coefficient(0b010001),
            trace.states[i].omega.coefficient(0b001010),
            trace.states[i].omega.coefficient(0b100100),
            trace.states[i].rho.coefficient(0b000111),
            trace.states[i].rho.coefficient(0b100011),
        );
    }

    // g25: (a1, a2, b1, b2)
    let g25_ode = |_t: f64, y: &[f64; 4]| -> [f64; 4] {
        let (a1, a2, _b1, b2) = (y[0], y[1], y[2], y[3]);
        [
            -(2.0 * a2 * a2 * b2 + 1.0) / (2.0 * a1 * a2),
            (2.0 * a2 * a2 * b2 - 1.0) / (2.0 * a1 * a1),
            -1.0 / a2,
            a2,
        ]
    };
    let oracle25 = rk4_scalar(g25_ode, [1.0, 1.0, 1.0, 0.0], 0.1, 1e-3);
    let entry = lookup("g25").unwrap();
    let g = entry.algebra().unwrap();
    let trace = flow_integrate(&g, initial_from_su3(entry.su3_example.as_ref().unwrap()), 0.1, 1e-3);
    println!("g25 aborted={:?} warnings={:?}", trace.aborted, trace.warnings);
    for (i, m) in trace.monitors.iter().enumerate().step_by(25) {
        let (t, y) = oracle25[i];
        let s = (-y[3] * y[3] + y[2] + y[3]).sqrt();
        let l3 = (1.0 - 2.0 * y[3]) * s;
        let mut pred = [s, s, l3];
        pred.sort_by(f64::total_cmp);
        println!(
            "g25 t={:.3} eigs={:?} pred={:?} | om13={:.6} exp -a1={:.6} | om45={:.6} exp 1/a2={:.6} | om26={:.6} exp a2={:.6} | rho124={:.6} exp b1={:.6} | rho125={:.6} exp b2={:.6}",
            t, m.beta_eigs, pred,
            trace.states[i].omega.coefficient(0b000101), -y[0],
            trace.states[i].omega.coefficient(0b011000), 1.0/y[1],
            trace.states[i].omega.coefficient(0b100010), y[1],
            trace.states[i].rho.coefficient(0b001011), y[2],
            trace.states[i].rho.coefficient(0b010011), y[3],
        );
    }
}
