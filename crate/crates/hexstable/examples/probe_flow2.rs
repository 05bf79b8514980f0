//! Scratch probe: beta(d rho_hat(t)) eigenvalues in the FIXED coframe
//! that is metric-unitary at t = 0, against the printed scalar ODEs.

use hexstable::flow::{flow_integrate, initial_from_su3, UnitaryCoframe};
use hexstable::liealg::lookup;
use hexstable::stable::almost_complex;

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

fn run(name: &str, ode: impl Fn(f64, &[f64; 4]) -> [f64; 4], y0: [f64; 4]) {
    let entry = lookup(name).unwrap();
    let g = entry.algebra().unwrap();
    let init = initial_from_su3(entry.su3_example.as_ref().unwrap());
    let t0 = almost_complex(&init.rho).unwrap();
    let fixed = UnitaryCoframe::new(&t0, &init.omega).unwrap();
    let trace = flow_integrate(&g, init, 0.1, 1e-3);
    let oracle = rk4_scalar(ode, y0, 0.1, 1e-3);
    for (i, s) in trace.states.iter().enumerate().step_by(25) {
        let (t, y) = oracle[i];
        let triple = almost_complex(&s.rho).unwrap();
        let d_hat = g.differential(triple.hat());
        let eigs = fixed.beta_eigenvalues(&d_hat).unwrap();
        let sq = -y[3] * y[3] + y[2] + y[3];
        let sv = if sq >= 0.0 { sq.sqrt() } else { f64::NAN };
        let l3 = (1.0 - 2.0 * y[3]) * sv;
        let mut pred = [sv, sv, l3];
        pred.sort_by(f64::total_cmp);
        println!("{name} t={t:.3} fixed-frame eigs={eigs:?} pred={pred:?}");
    }
}

fn main() {
    run("g6", |_t, y| {
        let (f1, f2, _h1, h2) = (y[0], y[1], y[2], y[3]);
        [
            (2.0 * h2 - 1.0) / (2.0 * f1.powi(3) * f2),
            -(2.0 * f1 + f2 * (2.0 * h2 - 1.0)) / (2.0 * f1.powi(4) * f2),
            -2.0 * f1,
            -f2,
        ]
    }, [1.0, 1.0, 1.0, 0.0]);
    run("g25", |_t, y| {
        let (a1, a2, _b1, b2) = (y[0], y[1], y[2], y[3]);
        [
            -(2.0 * a2 * a2 * b2 + 1.0) / (2.0 * a1 * a2),
            (2.0 * a2 * a2 * b2 - 1.0) / (2.0 * a1 * a1),
            -1.0 / a2,
            a2,
        ]
    }, [1.0, 1.0, 1.0, 0.0]);
}
