//! Hitchin flow integrator for invariant structures on a fixed Lie
//! algebra, float mode:
//!
//! ```text
//! d/dt rho(t)        = d omega(t)
//! d/dt (omega ∧ omega) = -2 d rho_hat(t)   (as  d/dt omega = L^{-1}(-d rho_hat))
//! ```
//!
//! Classical fixed-step RK4; `rho_hat` is recomputed from fresh `K` at
//! every stage. Monitors record definiteness, the torsion scalar `nu_0`,
//! half-flat residuals and the beta spectrum in a metric-unitary coframe,
//! where it is coframe-independent.

use crate::exterior::{lefschetz_solve, ExteriorForm};
use crate::liealg::LieAlgebra;
use crate::linalg::Mat;

use crate::stable::{almost_complex, DefiniteTriple};

const LAMBDA_TOL: f64 = 1e-9;
const VOLUME_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FlowError {
    #[error("degenerate state at t = {t}: lambda = {lambda}, omega^3 = {volume}")]
    DegenerateState { t: f64, lambda: f64, volume: f64 },
}

/// State of the flow at one time.
#[derive(Debug, Clone)]
pub struct FlowState {
    pub t: f64,
    pub omega: ExteriorForm<f64>,
    pub rho: ExteriorForm<f64>,
}

impl FlowState {
    pub fn new(t: f64, omega: ExteriorForm<f64>, rho: ExteriorForm<f64>) -> Self {
        assert_eq!(omega.degree(), 2);
        assert_eq!(rho.degree(), 3);
        FlowState { t, omega, rho }
    }
}

/// Per-sample monitor values.
#[derive(Debug, Clone)]
pub struct MonitorRecord {
    pub t: f64,
    pub lambda: f64,
    pub nu0: f64,
    /// Coefficient of `omega^3` on the reference volume.
    pub vol_ratio: f64,
    pub res_drho: f64,
    pub res_domega2: f64,
    /// Principal minors of beta(d rho_hat) in the greedy coframe.
    pub beta_minors: [f64; 7],
    /// Eigenvalues of beta(d rho_hat) in the greedy coframe, ascending.
    pub beta_eigs: [f64; 3],
    /// Sup-norm of `d rho_hat - nu_0 omega^2` (zero for double
    /// structures).
    pub double_residual: f64,
}

/// Integration result: all visited states with their monitors.
#[derive(Debug, Clone)]
pub struct FlowTrace {
    pub states: Vec<FlowState>,
    pub monitors: Vec<MonitorRecord>,
    pub aborted: Option<FlowError>,
    pub warnings: Vec<String>,
}

impl FlowTrace {
    /// CSV export: `t,nu0,lambda,vol_ratio,res_drho,res_domega2,beta_min_eig`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("t,nu0,lambda,vol_ratio,res_drho,res_domega2,beta_min_eig\n");
        for m in &self.monitors {
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                m.t, m.nu0, m.lambda, m.vol_ratio, m.res_drho, m.res_domega2, m.beta_eigs[0]
            ));
        }
        out
    }
}

fn float_triple(rho: &ExteriorForm<f64>, t: f64, volume: f64) -> Result<DefiniteTriple<f64>, FlowError> {
    let lam = crate::stable::lambda(rho);
    if !(lam < -LAMBDA_TOL) {
        return Err(FlowError::DegenerateState { t, lambda: lam, volume });
    }
    almost_complex(rho).map_err(|_| FlowError::DegenerateState { t, lambda: lam, volume })
}

/// Right-hand side of the flow system.
pub fn flow_rhs(
    g: &LieAlgebra,
    state: &FlowState,
) -> Result<(ExteriorForm<f64>, ExteriorForm<f64>), FlowError> {
    let omega3 = state
        .omega
        .wedge(&state.omega)
        .and_then(|o2| o2.wedge(&state.omega))
        .map_err(|_| FlowError::DegenerateState { t: state.t, lambda: 0.0, volume: 0.0 })?;
    let volume = omega3.top_coefficient();
    if volume.abs() <= VOLUME_TOL {
        return Err(FlowError::DegenerateState {
            t: state.t,
            lambda: crate::stable::lambda(&state.rho),
            volume,
        });
    }
    let triple = float_triple(&state.rho, state.t, volume)?;
    let d_hat = g.differential(triple.hat());
    let d_omega_dt = lefschetz_solve(&state.omega, &d_hat.neg())
        .map_err(|_| FlowError::DegenerateState { t: state.t, lambda: *triple.lambda(), volume })?;
    let d_rho_dt = g.differential(&state.omega);
    Ok((d_omega_dt, d_rho_dt))
}

/// Monitor a single state.
pub fn flow_monitors(g: &LieAlgebra, state: &FlowState) -> Result<MonitorRecord, FlowError> {
    let omega2 = state.omega.wedge(&state.omega).expect("degree 4");
    let omega3 = omega2.wedge(&state.omega).expect("degree 6");
    let vol_ratio = omega3.top_coefficient();
    let triple = float_triple(&state.rho, state.t, vol_ratio)?;
    let d_hat = g.differential(triple.hat());
    let nu0 = if vol_ratio.abs() > VOLUME_TOL {
        d_hat.wedge(&state.omega).expect("degree 6").top_coefficient() / vol_ratio
    } else {
        f64::NAN
    };
    let res_drho = g.differential(&state.rho).sup_norm();
    let res_domega2 = g.differential(&omega2).sup_norm();
    let coframe = triple.complex_coframe();
    let beta = crate::conditions::beta_matrix(&d_hat, &coframe)
        .map_err(|_| FlowError::DegenerateState { t: state.t, lambda: *triple.lambda(), volume: vol_ratio })?;
    let beta_minors = beta.principal_minors();
    let beta_eigs = {
        let mut m = [[num::complex::Complex64::new(0.0, 0.0); 3]; 3];
        for r in 0..3 {
            for c in 0..3 {
                m[r][c] = *beta.get(r, c);
            }
        }
        hermitian3_eigenvalues(&m)
    };
    let double_residual = d_hat.sub(&omega2.scale(&nu0)).sup_norm();
    Ok(MonitorRecord {
        t: state.t,
        lambda: *triple.lambda(),
        nu0,
        vol_ratio,
        res_drho,
        res_domega2,
        beta_minors,
        beta_eigs,
        double_residual,
    })
}

/// A coframe of (1,0)-forms that is unitary for the metric
/// `g = omega(., J.)` of a given structure. Beta matrices expressed here
/// transform by unitary congruence under coframe changes, so their
/// spectra are well-defined.
#[derive(Debug, Clone)]
pub struct UnitaryCoframe {
    xi: [ExteriorForm<num::complex::Complex64>; 3],
}

impl UnitaryCoframe {
    /// Gram–Schmidt a J-adapted, g-orthonormal covector basis.
    pub fn new(triple: &DefiniteTriple<f64>, omega: &ExteriorForm<f64>) -> Option<Self> {
        use num::complex::Complex64;
        let j = triple.j();
        let mut gmat = Mat::<f64>::zeros(6, 6);
        for i in 0..6u8 {
            for k in 0..6u8 {
                let ei: [f64; 6] =
                    std::array::from_fn(|m| if m == i as usize { 1.0 } else { 0.0 });
                let ek: [f64; 6] =
                    std::array::from_fn(|m| if m == k as usize { 1.0 } else { 0.0 });
                let jek = j.apply(&ek);
                let val = omega.evaluate(&[ei, jek]);
                gmat.set(i as usize, k as usize, val);
            }
        }
        // symmetrize against drift
        let gsym = Mat::from_fn(6, 6, |i, k| 0.5 * (gmat.get(i, k) + gmat.get(k, i)));
        let ginv = gsym.inverse()?;
        let dot = |a: &[f64; 6], b: &[f64; 6]| -> f64 {
            let mut acc = 0.0;
            for i in 0..6 {
                for k in 0..6 {
                    acc += a[i] * ginv.get(i, k) * b[k];
                }
            }
            acc
        };
        // J acts on covector coordinates by J^t
        let jt = |a: &[f64; 6]| -> [f64; 6] {
            std::array::from_fn(|m| (0..6).map(|k| a[k] * j.get(k, m)).sum())
        };
        let mut chosen: Vec<[f64; 6]> = Vec::new();
        let mut k_idx = 0u8;
        while chosen.len() < 6 && k_idx < 6 {
            let mut cand: [f64; 6] =
                std::array::from_fn(|m| if m == k_idx as usize { 1.0 } else { 0.0 });
            for c in &chosen {
                let proj = dot(&cand, c);
                for m in 0..6 {
                    cand[m] -= proj * c[m];
                }
            }
            let norm2 = dot(&cand, &cand);
            if norm2 > 1e-10 {
                let inv = 1.0 / norm2.sqrt();
                for v in cand.iter_mut() {
                    *v *= inv;
                }
                let jcand = jt(&cand);
                chosen.push(cand);
                chosen.push(jcand);
            }
            k_idx += 1;
        }
        if chosen.len() < 6 {
            return None;
        }
        let xi: [ExteriorForm<Complex64>; 3] = std::array::from_fn(|m| {
            let a = &chosen[2 * m];
            let ja = jt(a);
            let mut f = ExteriorForm::zero(1);
            for i in 0..6 {
                f.add_term(1u8 << i, Complex64::new(a[i], -ja[i]));
            }
            f
        });
        Some(UnitaryCoframe { xi })
    }

    pub fn xi(&self, m: usize) -> &ExteriorForm<num::complex::Complex64> {
        &self.xi[m]
    }

    pub fn xi_bar(&self, m: usize) -> ExteriorForm<num::complex::Complex64> {
        self.xi[m].map_scalars(|c| c.conj())
    }

    pub fn tau(&self) -> ExteriorForm<num::complex::Complex64> {
        use num::complex::Complex64;
        let half_i = Complex64::new(0.0, 0.5);
        let mut vol: ExteriorForm<Complex64> = ExteriorForm::zero(0);
        vol.add_term(0, half_i * half_i * half_i);
        for m in 0..3 {
            vol = vol
                .wedge(&self.xi[m])
                .and_then(|v| v.wedge(&self.xi_bar(m)))
                .expect("degree 6");
        }
        vol
    }

    /// Beta matrix of a real 4-form in this coframe.
    pub fn beta(&self, gamma: &ExteriorForm<f64>) -> Option<[[num::complex::Complex64; 3]; 3]> {
        use num::complex::Complex64;
        let tau_top = self.tau().top_coefficient();
        if tau_top.norm() < 1e-12 {
            return None;
        }
        let gamma_c = gamma.map_scalars(|c| Complex64::new(*c, 0.0));
        let half_i = Complex64::new(0.0, 0.5);
        let mut beta = [[Complex64::new(0.0, 0.0); 3]; 3];
        for m in 0..3 {
            for n in 0..3 {
                let six = gamma_c
                    .wedge(&self.xi[m])
                    .and_then(|f| f.wedge(&self.xi_bar(n)))
                    .expect("degree 6");
                beta[m][n] = six.top_coefficient() * half_i / tau_top;
            }
        }
        Some(beta)
    }

    /// Ascending eigenvalues of `beta(gamma)`.
    pub fn beta_eigenvalues(&self, gamma: &ExteriorForm<f64>) -> Option<[f64; 3]> {
        let beta = self.beta(gamma)?;
        Some(hermitian3_eigenvalues(&beta))
    }
}

/// Eigenvalues of a Hermitian 3x3 matrix through the real symmetric 6x6
/// embedding `[[Re, -Im], [Im, Re]]` (each eigenvalue appears twice).
pub fn hermitian3_eigenvalues(beta: &[[num::complex::Complex64; 3]; 3]) -> [f64; 3] {
    let mut h = nalgebra::SMatrix::<f64, 6, 6>::zeros();
    for m in 0..3 {
        for n in 0..3 {
            h[(m, n)] = beta[m][n].re;
            h[(m + 3, n + 3)] = beta[m][n].re;
            h[(m + 3, n)] = beta[m][n].im;
            h[(m, n + 3)] = -beta[m][n].im;
        }
    }
    let mut eig: Vec<f64> = h.symmetric_eigen().eigenvalues.iter().copied().collect();
    eig.sort_by(f64::total_cmp);
    [eig[0], eig[2], eig[4]]
}

/// Eigenvalues of beta(gamma) in a coframe unitary for the metric
/// `g = omega(., J.)`.
pub fn unitary_beta_eigenvalues(
    triple: &DefiniteTriple<f64>,
    omega: &ExteriorForm<f64>,
    gamma: &ExteriorForm<f64>,
) -> Option<[f64; 3]> {
    UnitaryCoframe::new(triple, omega)?.beta_eigenvalues(gamma)
}

/// Integrate with classical RK4 at fixed step `dt`, sampling monitors at
/// every step. A degenerate state aborts cleanly, returning the partial
/// trace.
pub fn flow_integrate(
    g: &LieAlgebra,
    initial: FlowState,
    t_end: f64,
    dt: f64,
) -> FlowTrace {
    assert!(dt > 0.0, "dt must be positive");
    assert!(t_end >= initial.t);
    let mut warnings = Vec::new();
    if g.differential(&initial.rho).sup_norm() > 1e-9 {
        warnings.push("initial rho is not closed".to_string());
    }
    let omega2 = initial.omega.wedge(&initial.omega).expect("degree 4");
    if g.differential(&omega2).sup_norm() > 1e-9 {
        warnings.push("initial structure is not half-flat (d(omega^2) != 0)".to_string());
    }

    let mut states = Vec::new();
    let mut monitors = Vec::new();
    let mut aborted = None;

    let mut state = initial;
    loop {
        match flow_monitors(g, &state) {
            Ok(m) => monitors.push(m),
            Err(e) => {
                aborted = Some(e);
                break;
            }
        }
        states.push(state.clone());
        let remaining = t_end - state.t;
        if remaining <= 1e-12 {
            break;
        }
        let h = dt.min(remaining);
        match rk4_step(g, &state, h) {
            Ok(next) => state = next,
            Err(e) => {
                aborted = Some(e);
                break;
            }
        }
    }
    FlowTrace { states, monitors, aborted, warnings }
}

fn rk4_step(g: &LieAlgebra, state: &FlowState, h: f64) -> Result<FlowState, FlowError> {
    let advance = |s: &FlowState, domega: &ExteriorForm<f64>, drho: &ExteriorForm<f64>, c: f64| {
        FlowState {
            t: s.t + c,
            omega: s.omega.add(&domega.scale(&c)),
            rho: s.rho.add(&drho.scale(&c)),
        }
    };
    let (k1w, k1r) = flow_rhs(g, state)?;
    let mid1 = advance(state, &k1w, &k1r, h / 2.0);
    let (k2w, k2r) = flow_rhs(g, &mid1)?;
    let mid2 = advance(state, &k2w, &k2r, h / 2.0);
    let (k3w, k3r) = flow_rhs(g, &mid2)?;
    let end = advance(state, &k3w, &k3r, h);
    let (k4w, k4r) = flow_rhs(g, &end)?;
    let sixth = h / 6.0;
    let omega = state
        .omega
        .add(&k1w.scale(&sixth))
        .add(&k2w.scale(&(2.0 * sixth)))
        .add(&k3w.scale(&(2.0 * sixth)))
        .add(&k4w.scale(&sixth));
    let rho = state
        .rho
        .add(&k1r.scale(&sixth))
        .add(&k2r.scale(&(2.0 * sixth)))
        .add(&k3r.scale(&(2.0 * sixth)))
        .add(&k4r.scale(&sixth));
    Ok(FlowState { t: state.t + h, omega, rho })
}

/// Catalog SU(3) example as a float initial state.
pub fn initial_from_su3(ex: &crate::liealg::Su3Example) -> FlowState {
    FlowState::new(
        0.0,
        ex.omega.map_scalars(|c| c.to_f64()),
        ex.rho.map_scalars(|c| c.to_f64()),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::lookup;
    use crate::scalars::QuadScalar;

    fn e(idx: &[u8]) -> ExteriorForm<f64> {
        ExteriorForm::monomial(idx, 1.0)
    }

    fn g24_initial() -> (LieAlgebra, FlowState) {
        let entry = lookup("g24").unwrap();
        let g = entry.algebra().unwrap();
        let state = initial_from_su3(entry.su3_example.as_ref().unwrap());
        (g, state)
    }

    /// Closed-form g24 solution.
    fn g24_exact(t: f64) -> (ExteriorForm<f64>, ExteriorForm<f64>) {
        let f = (1.0 - 2.5 * t).powf(0.2);
        let omega0 = e(&[1, 6]).neg().add(&e(&[2, 5])).sub(&e(&[3, 4]));
        let omega = omega0.scale(&f);
        let rho = e(&[1, 2, 3])
            .scale(&-(1.0 - 2.5 * t).powf(1.2))
            .add(&e(&[1, 4, 5]))
            .add(&e(&[2, 4, 6]))
            .add(&e(&[3, 5, 6]));
        (omega, rho)
    }

    #[test]
    fn rhs_matches_double_structure_on_g24() {
        let (g, state) = g24_initial();
        let (domega, drho) = flow_rhs(&g, &state).unwrap();
        // d omega/dt = -nu0 * omega with nu0 = 1/2 at t = 0
        let expected = state.omega.scale(&-0.5);
        assert!(domega.sub(&expected).sup_norm() < 1e-12);
        assert!(drho.sub(&g.differential(&state.omega)).sup_norm() == 0.0);
        let m = flow_monitors(&g, &state).unwrap();
        assert!((m.nu0 - 0.5).abs() < 1e-12);
        assert!(m.double_residual < 1e-12);
    }

    #[test]
    fn rhs_matches_printed_ode_on_g25() {
        let entry = lookup("g25").unwrap();
        let g = entry.algebra().unwrap();
        let state = initial_from_su3(entry.su3_example.as_ref().unwrap());
        let (domega, drho) = flow_rhs(&g, &state).unwrap();
        // at t=0: a1=a2=b1=1, b2=0:
        //   da1 = -1/2, da2 = -1/2, d(1/a2) = 1/2, db1 = -1, db2 = 1
        let expected_domega = e(&[1, 3])
            .scale(&0.5)
            .add(&e(&[4, 5]).scale(&0.5))
            .sub(&e(&[2, 6]).scale(&0.5));
        assert!(domega.sub(&expected_domega).sup_norm() < 1e-12);
        let expected_drho = e(&[1, 2, 4])
            .neg()
            .add(&e(&[1, 2, 5]))
            .sub(&e(&[2, 3, 4]));
        assert!(drho.sub(&expected_drho).sup_norm() < 1e-12);
    }

    #[test]
    fn fixed_point_on_abelian() {
        let g = LieAlgebra::abelian("ab");
        let omega = e(&[1, 2]).add(&e(&[3, 4])).add(&e(&[5, 6]));
        let rho = e(&[1, 3, 5])
            .sub(&e(&[1, 4, 6]))
            .sub(&e(&[2, 3, 6]))
            .sub(&e(&[2, 4, 5]));
        let state = FlowState::new(0.0, omega.clone(), rho.clone());
        let trace = flow_integrate(&g, state, 0.05, 1e-3);
        assert!(trace.aborted.is_none());
        let last = trace.states.last().unwrap();
        assert!(last.omega.sub(&omega).sup_norm() < 1e-14);
        assert!(last.rho.sub(&rho).sup_norm() < 1e-14);
    }

    #[test]
    fn g24_short_regression() {
        let (g, state) = g24_initial();
        let trace = flow_integrate(&g, state, 0.1, 1e-3);
        assert!(trace.aborted.is_none(), "{:?}", trace.aborted);
        assert!(trace.warnings.is_empty(), "{:?}", trace.warnings);
        let mut max_err: f64 = 0.0;
        for s in &trace.states {
            let (omega, rho) = g24_exact(s.t);
            max_err = max_err.max(s.omega.sub(&omega).sup_norm());
            max_err = max_err.max(s.rho.sub(&rho).sup_norm());
        }
        assert!(max_err < 1e-8, "max closed-form deviation {max_err}");
        // nu0(t) = 1/(2-5t)
        for m in &trace.monitors {
            assert!((m.nu0 - 1.0 / (2.0 - 5.0 * m.t)).abs() < 1e-8);
            assert!(m.res_drho < 1e-9);
            assert!(m.res_domega2 < 1e-9);
            assert!(m.double_residual < 1e-8);
        }
        // volume decreasing while nu0 > 0 (here the orientation has
        // omega^3 negative on the reference volume, so |vol| decreases)
        let vols: Vec<f64> = trace.monitors.iter().map(|m| m.vol_ratio.abs()).collect();
        for w in vols.windows(2) {
            assert!(w[1] < w[0]);
        }
    }

    #[test]
    fn degenerate_abort_is_clean() {
        let (g, state) = g24_initial();
        let trace = flow_integrate(&g, state, 0.6, 2e-3);
        assert!(trace.aborted.is_some());
        let last_t = trace.states.last().unwrap().t;
        assert!(last_t > 0.3 && last_t < 0.45, "aborted at t = {last_t}");
    }

    #[test]
    fn csv_shape() {
        let (g, state) = g24_initial();
        let trace = flow_integrate(&g, state, 0.01, 1e-3);
        let csv = trace.to_csv();
        let mut lines = csv.lines();
        assert_eq!(
            lines.next().unwrap(),
            "t,nu0,lambda,vol_ratio,res_drho,res_domega2,beta_min_eig"
        );
        assert_eq!(csv.lines().count(), trace.monitors.len() + 1);
    }

    #[test]
    fn unitary_eigs_of_model_omega_squared() {
        let rho0 = e(&[1, 3, 5])
            .sub(&e(&[1, 4, 6]))
            .sub(&e(&[2, 3, 6]))
            .sub(&e(&[2, 4, 5]));
        let omega0 = e(&[1, 2]).add(&e(&[3, 4])).add(&e(&[5, 6]));
        let t = almost_complex(&rho0).unwrap();
        let gamma = omega0.wedge(&omega0).unwrap();
        let eigs = unitary_beta_eigenvalues(&t, &omega0, &gamma).unwrap();
        for v in eigs {
            assert!((v - 2.0).abs() < 1e-10, "eigs {eigs:?}");
        }
    }

    #[test]
    fn quad_scalar_initial_matches_float() {
        // spot-check the conversion helper
        let entry = lookup("g24").unwrap();
        let ex = entry.su3_example.as_ref().unwrap();
        let state = initial_from_su3(ex);
        assert_eq!(
            state.omega.coefficient(0b100001),
            ex.omega.coefficient(0b100001).to_f64()
        );
        let _ = QuadScalar::from_int(0);
    }
}
