//! Verification suites over the built-in catalog: table regressions,
//! identity checks, obstruction sweeps, flow regressions, property
//! batteries and non-existence sampling. Each suite reports one
//! pass/fail item per checked fact.

use crate::conditions::{
    beta_matrix, classify, g66_vanishes_for_all_closed, hermitian_psd, j_e6_in_derived,
    mean_convex_outcome, taming_check, torsion_scalars, HermitianForm3, MeanConvexOutcome,
};
use crate::exterior::ExteriorForm;
use crate::flow::{flow_integrate, initial_from_su3};
use crate::liealg::{catalog, lookup, Family, LieAlgebra};
use crate::sampling::FormSampler;
use crate::scalars::{rat, ComplexScalar, QuadComplex, QuadScalar, Rational, Scalar};
use crate::stable::almost_complex;

/// One checked fact.
#[derive(Debug, Clone)]
pub struct SuiteItem {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

/// Result of a whole suite run.
#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub suite: String,
    pub items: Vec<SuiteItem>,
}

impl SuiteReport {
    fn new(suite: &str) -> Self {
        SuiteReport { suite: suite.to_string(), items: Vec::new() }
    }

    fn check(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.items.push(SuiteItem { name: name.into(), pass, detail: detail.into() });
    }

    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.pass)
    }

    pub fn counts(&self) -> (usize, usize) {
        let pass = self.items.iter().filter(|i| i.pass).count();
        (pass, self.items.len())
    }

    pub fn summary(&self) -> String {
        let (pass, total) = self.counts();
        format!("suite {}: {}/{} checks passed", self.suite, pass, total)
    }
}

/// Default seeds, one per randomized suite.
pub const SEED_LAMBDA: u64 = 0x5EED_0004;
pub const SEED_OBSTRUCTIONS: u64 = 0x5EED_0005;
pub const SEED_PROPERTIES: u64 = 0x5EED_0008;
pub const SEED_SEARCH: u64 = 0x5EED_0009;

/// Criterion 1: every Table 2 pair verifies exactly and the half-flat
/// column is reproduced.
pub fn suite_table2() -> SuiteReport {
    let mut report = SuiteReport::new("table2");
    let mut listed = 0usize;
    let mut half_flat_count = 0usize;
    for entry in catalog().entries() {
        let Some(ex) = &entry.su3_example else { continue };
        listed += 1;
        let g = match entry.algebra() {
            Ok(g) => g,
            Err(e) => {
                report.check(entry.name(), false, format!("instantiation failed: {e}"));
                continue;
            }
        };
        match classify(&g, &ex.omega, &ex.rho) {
            Ok(rep) => {
                let lambda_neg = rep.lambda.sign() < 0;
                let ok = rep.closed && lambda_neg && rep.mean_convex && rep.half_flat == ex.half_flat;
                if rep.half_flat {
                    half_flat_count += 1;
                }
                report.check(
                    entry.name(),
                    ok,
                    format!(
                        "closed={} lambda={} mean_convex={} half_flat={} (table says {}) normalization_ratio={}",
                        rep.closed,
                        rep.lambda,
                        rep.mean_convex,
                        rep.half_flat,
                        ex.half_flat,
                        rep.normalization_ratio
                            .as_ref()
                            .map(|r| r.to_string())
                            .unwrap_or_else(|| "n/a".into()),
                    ),
                );
            }
            Err(e) => report.check(entry.name(), false, format!("classification failed: {e}")),
        }
    }
    report.check("table2/row-count", listed == 28, format!("{listed} rows (expect 28)"));
    report.check(
        "table2/half-flat-count",
        half_flat_count == 16,
        format!("{half_flat_count} half-flat rows (expect 16)"),
    );
    report
}

/// Criterion 2: the nine tamed pairs (and extra in-range parameter
/// samples) verify exactly.
pub fn suite_table3() -> SuiteReport {
    let mut report = SuiteReport::new("table3");
    let mut pairs = 0usize;
    for entry in catalog().entries() {
        let Some(tamed) = &entry.tamed_example else { continue };
        pairs += 1;
        let mut param_sets: Vec<Vec<(String, Rational)>> = vec![tamed.params.clone()];
        // in-range extra samples for entries whose pair is not pinned to
        // one parameter value
        if entry.name() == "A5,17(a,-a,1)+R" {
            param_sets.push(vec![("a".into(), rat(2, 1))]);
            param_sets.push(vec![("a".into(), rat(1, 2))]);
        }
        for params in param_sets {
            let label = if params.is_empty() {
                entry.name().to_string()
            } else {
                let vals: Vec<String> =
                    params.iter().map(|(n, v)| format!("{n}={v}")).collect();
                format!("{}[{}]", entry.name(), vals.join(","))
            };
            let g = match entry.algebra_with(&params) {
                Ok(g) => g,
                Err(e) => {
                    report.check(label, false, format!("instantiation failed: {e}"));
                    continue;
                }
            };
            let closed = g.differential(&tamed.rho).is_zero();
            let lambda = crate::stable::lambda(&tamed.rho);
            match taming_check(&g, &tamed.rho, &tamed.omega) {
                Ok(rep) => {
                    let ok = closed
                        && lambda.sign() < 0
                        && rep.symplectic
                        && rep.tames
                        && rep.d_omega11_nonzero;
                    report.check(
                        label,
                        ok,
                        format!(
                            "closed={} lambda={} symplectic={} tames={} d_omega11_nonzero={}",
                            closed, lambda, rep.symplectic, rep.tames, rep.d_omega11_nonzero
                        ),
                    );
                }
                Err(e) => report.check(label, false, format!("taming check failed: {e}")),
            }
        }
    }
    report.check("table3/pair-count", pairs == 9, format!("{pairs} tamed pairs (expect 9)"));
    report
}

/// Criterion 3: first Betti numbers of all 34 nilpotent algebras, plus
/// the b2 spot checks.
pub fn suite_betti() -> SuiteReport {
    let mut report = SuiteReport::new("betti");
    for entry in catalog().entries() {
        if entry.family != Family::Nilpotent {
            continue;
        }
        let expect = entry.b1.expect("nilpotent entries carry b1");
        let g = entry.algebra().expect("constant templates instantiate");
        let (b1, b2) = g.betti();
        report.check(
            format!("b1({})", entry.name()),
            b1 == expect,
            format!("computed {b1}, table says {expect} (b2 = {b2})"),
        );
    }
    for (name, expect_b2) in [("g25", 6usize), ("g27", 7usize)] {
        let g = lookup(name).unwrap().algebra().unwrap();
        let (_, b2) = g.betti();
        report.check(
            format!("b2({name})"),
            b2 == expect_b2,
            format!("computed {b2}, expect {expect_b2}"),
        );
    }
    report
}

fn coeff(rho: &ExteriorForm<QuadScalar>, indices: &[u8]) -> QuadScalar {
    let mut mask = 0u8;
    for &i in indices {
        mask |= 1 << (i - 1);
    }
    rho.coefficient(mask)
}

/// The closed-form quartic invariant of a generic closed 3-form on g1.
fn lambda_poly_g1(rho: &ExteriorForm<QuadScalar>) -> QuadScalar {
    let p = |idx: &[u8]| coeff(rho, idx);
    let (p126, p135, p145, p146, p235, p236, p245) = (
        p(&[1, 2, 6]),
        p(&[1, 3, 5]),
        p(&[1, 4, 5]),
        p(&[1, 4, 6]),
        p(&[2, 3, 5]),
        p(&[2, 3, 6]),
        p(&[2, 4, 5]),
    );
    let two = QuadScalar::from_int(2);
    let four = QuadScalar::from_int(4);
    let head = p145
        .add(&two.mul(&p235))
        .mul(&p146)
        .add(&p145.mul(&p236))
        .add(&p245.mul(&p245));
    let tail = p126.sub(&p145.mul(&p235)).add(&p135.mul(&p245));
    head.mul(&head).add(&four.mul(&p146).mul(&p236).mul(&tail))
}

/// The closed-form quartic invariant of a generic closed 3-form on g2.
fn lambda_poly_g2(rho: &ExteriorForm<QuadScalar>) -> QuadScalar {
    let p = |idx: &[u8]| coeff(rho, idx);
    let (p125, p135, p145, p146, p235, p236, p245) = (
        p(&[1, 2, 5]),
        p(&[1, 3, 5]),
        p(&[1, 4, 5]),
        p(&[1, 4, 6]),
        p(&[2, 3, 5]),
        p(&[2, 3, 6]),
        p(&[2, 4, 5]),
    );
    let two = QuadScalar::from_int(2);
    let four = QuadScalar::from_int(4);
    let head = p245
        .mul(&p245)
        .add(&p145.mul(&p236))
        .add(&two.mul(&p146).mul(&p235));
    let tail = p145
        .mul(&p235)
        .neg()
        .add(&p135.mul(&p245))
        .add(&p125.mul(&p146));
    head.mul(&head).add(&four.mul(&p146).mul(&p236).mul(&tail))
}

/// Criterion 4: lambda agrees with the printed closed-form polynomials.
pub fn suite_lambda_identities(seed: u64) -> SuiteReport {
    let mut report = SuiteReport::new("lambda-identities");
    for (name, poly) in [
        ("g1", lambda_poly_g1 as fn(&ExteriorForm<QuadScalar>) -> QuadScalar),
        ("g2", lambda_poly_g2),
    ] {
        let g = lookup(name).unwrap().algebra().unwrap();
        let mut sampler = FormSampler::closed(&g, 3, seed);
        let mut fails = 0usize;
        for _ in 0..100 {
            let rho = sampler.sample();
            if crate::stable::lambda(&rho) != poly(&rho) {
                fails += 1;
            }
        }
        report.check(
            format!("lambda-polynomial({name})"),
            fails == 0,
            format!("{fails}/100 mismatches"),
        );
    }
    // exact forms: lambda(d eta) = -4 p56^4 on g18/g28, p56^4 on g5/g20
    for (name, negative) in [("g18", true), ("g28", true), ("g5", false), ("g20", false)] {
        let g = lookup(name).unwrap().algebra().unwrap();
        let mut sampler = FormSampler::unconstrained(2, seed ^ 0xA5A5);
        let mut fails = 0usize;
        for _ in 0..100 {
            let eta = sampler.sample();
            let rho = g.differential(&eta);
            let p56 = coeff(&eta, &[5, 6]);
            let p4 = p56.mul(&p56).mul(&p56).mul(&p56);
            let expect = if negative {
                p4.mul(&QuadScalar::from_int(-4))
            } else {
                p4
            };
            if crate::stable::lambda(&rho) != expect {
                fails += 1;
            }
        }
        let formula = if negative { "-4 p56^4" } else { "p56^4" };
        report.check(
            format!("lambda-exact({name})"),
            fails == 0,
            format!("{fails}/100 mismatches against {formula}"),
        );
    }
    report
}

/// Criterion 5: taming obstruction sweep over the nilpotent catalog.
pub fn suite_obstructions(seed: u64) -> SuiteReport {
    let mut report = SuiteReport::new("obstructions");
    let je6_list = [
        "g3", "g4", "g5", "g6", "g7", "g8", "g9", "g10", "g13", "g18", "g19", "g20", "g28",
        "g29", "g30",
    ];
    for name in je6_list {
        let g = lookup(name).unwrap().algebra().unwrap();
        let mut sampler = FormSampler::closed(&g, 3, seed);
        let mut ok = 0usize;
        let mut produced = 0usize;
        for _ in 0..100 {
            let Some((_, triple)) = sampler.sample_definite(1000) else { break };
            produced += 1;
            if j_e6_in_derived(&g, &triple) {
                ok += 1;
            }
        }
        report.check(
            format!("Je6-in-derived({name})"),
            produced == 100 && ok == produced,
            format!("{ok}/{produced} samples obstructed (want 100/100)"),
        );
    }
    for name in ["g11", "g12", "g21", "g22", "g27"] {
        let g = lookup(name).unwrap().algebra().unwrap();
        let mut sampler = FormSampler::closed(&g, 3, seed ^ 0x66);
        let mut ok = 0usize;
        let mut produced = 0usize;
        for _ in 0..100 {
            let Some((_, triple)) = sampler.sample_definite(1000) else { break };
            produced += 1;
            if g66_vanishes_for_all_closed(&g, &triple) {
                ok += 1;
            }
        }
        report.check(
            format!("g66-vanishes({name})"),
            produced == 100 && ok == produced,
            format!("{ok}/{produced} samples with g66 = 0 (want 100/100)"),
        );
    }
    report
}

/// Fixed-step RK4 for a scalar system, used as an independent oracle.
fn rk4_scalar<const N: usize>(
    f: impl Fn(f64, &[f64; N]) -> [f64; N],
    y0: [f64; N],
    t_end: f64,
    dt: f64,
) -> Vec<(f64, [f64; N])> {
    let mut out = vec![(0.0, y0)];
    let mut t = 0.0;
    let mut y = y0;
    while t + 1e-12 < t_end {
        let h = dt.min(t_end - t);
        let add = |y: &[f64; N], k: &[f64; N], c: f64| -> [f64; N] {
            std::array::from_fn(|i| y[i] + c * k[i])
        };
        let k1 = f(t, &y);
        let k2 = f(t + h / 2.0, &add(&y, &k1, h / 2.0));
        let k3 = f(t + h / 2.0, &add(&y, &k2, h / 2.0));
        let k4 = f(t + h, &add(&y, &k3, h));
        y = std::array::from_fn(|i| {
            y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i])
        });
        t += h;
        out.push((t, y));
    }
    out
}

fn g24_exact(t: f64) -> (ExteriorForm<f64>, ExteriorForm<f64>) {
    let e = |idx: &[u8]| ExteriorForm::monomial(idx, 1.0);
    let f = (1.0 - 2.5 * t).powf(0.2);
    let omega = e(&[1, 6]).neg().add(&e(&[2, 5])).sub(&e(&[3, 4])).scale(&f);
    let rho = e(&[1, 2, 3])
        .scale(&-(1.0 - 2.5 * t).powf(1.2))
        .add(&e(&[1, 4, 5]))
        .add(&e(&[2, 4, 6]))
        .add(&e(&[3, 5, 6]));
    (omega, rho)
}

fn g24_flow_error(dt: f64, t_end: f64) -> (f64, f64) {
    let entry = lookup("g24").unwrap();
    let g = entry.algebra().unwrap();
    let trace = flow_integrate(&g, initial_from_su3(entry.su3_example.as_ref().unwrap()), t_end, dt);
    assert!(trace.aborted.is_none(), "g24 flow aborted: {:?}", trace.aborted);
    let mut form_err: f64 = 0.0;
    let mut nu0_err: f64 = 0.0;
    for (s, m) in trace.states.iter().zip(&trace.monitors) {
        let (omega, rho) = g24_exact(s.t);
        form_err = form_err.max(s.omega.sub(&omega).sup_norm());
        form_err = form_err.max(s.rho.sub(&rho).sup_norm());
        nu0_err = nu0_err.max((m.nu0 - 1.0 / (2.0 - 5.0 * s.t)).abs());
    }
    (form_err, nu0_err)
}

/// Criterion 6: g24 flow regression against the closed-form solution,
/// with an RK4 order check.
pub fn suite_flow_g24() -> SuiteReport {
    let mut report = SuiteReport::new("flow-g24");
    let (err_full, nu0_full) = g24_flow_error(1e-3, 0.3);
    report.check(
        "g24/closed-form(dt=1e-3)",
        err_full <= 1e-6,
        format!("sup-norm error {err_full:.3e} (tolerance 1e-6)"),
    );
    report.check(
        "g24/nu0(dt=1e-3)",
        nu0_full <= 1e-6,
        format!("max |nu0 - 1/(2-5t)| = {nu0_full:.3e} (tolerance 1e-6)"),
    );
    let (err_half, _) = g24_flow_error(5e-4, 0.3);
    let ratio = err_full / err_half;
    report.check(
        "g24/rk4-order",
        (8.0..=32.0).contains(&ratio),
        format!("error ratio on halving dt: {ratio:.2} (expect ~16, accept 8..32)"),
    );
    // volume decreasing while nu0 > 0
    let entry = lookup("g24").unwrap();
    let g = entry.algebra().unwrap();
    let trace = flow_integrate(&g, initial_from_su3(entry.su3_example.as_ref().unwrap()), 0.3, 1e-3);
    let monotone = trace
        .monitors
        .windows(2)
        .all(|w| w[0].nu0 <= 0.0 || w[1].vol_ratio.abs() < w[0].vol_ratio.abs());
    report.check(
        "g24/volume-decreasing",
        monotone,
        "|omega^3| strictly decreasing while nu0 > 0".to_string(),
    );
    // double structure preserved along the run
    let double_ok = trace.monitors.iter().all(|m| m.double_residual <= 1e-8);
    report.check(
        "g24/double-preserved",
        double_ok,
        "max |d rho_hat - nu0 omega^2| <= 1e-8 at every step".to_string(),
    );
    report
}

/// Criterion 7: g6 eigenvalue formulas and mean-convexity preservation on
/// the g6/g25 runs, with independently integrated scalar oracles.
pub fn suite_flow_g6_g25() -> SuiteReport {
    let mut report = SuiteReport::new("flow-g6-g25");

    // g6 oracle: (f1, f2, h1, h2)
    let g6_ode = |_t: f64, y: &[f64; 4]| -> [f64; 4] {
        let (f1, f2, h2) = (y[0], y[1], y[3]);
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
    let trace6 = flow_integrate(&g, initial_from_su3(entry.su3_example.as_ref().unwrap()), 0.1, 1e-3);
    report.check(
        "g6/completes",
        trace6.aborted.is_none() && trace6.states.len() == oracle6.len(),
        format!("{} states", trace6.states.len()),
    );
    let mut eig_err: f64 = 0.0;
    let mut min_eig: f64 = f64::INFINITY;
    for (m, (_, y)) in trace6.monitors.iter().zip(&oracle6) {
        let s = (-y[3] * y[3] + y[2] + y[3]).sqrt();
        let mut pred = [s, s, (1.0 - 2.0 * y[3]) * s];
        pred.sort_by(f64::total_cmp);
        for k in 0..3 {
            eig_err = eig_err.max((m.beta_eigs[k] - pred[k]).abs());
            min_eig = min_eig.min(m.beta_eigs[k]);
        }
    }
    report.check(
        "g6/beta-eigenvalue-formulas",
        eig_err <= 1e-5,
        format!("max |monitor - formula| = {eig_err:.3e} (tolerance 1e-5)"),
    );
    report.check(
        "g6/mean-convexity-preserved",
        min_eig >= -1e-9,
        format!("min eigenvalue {min_eig:.3e} (>= -1e-9)"),
    );

    // g25 oracle: (a1, a2, b1, b2); the paper prints the flow family but
    // no eigenvalue formulas for this example (see the decisions ledger).
    let g25_ode = |_t: f64, y: &[f64; 4]| -> [f64; 4] {
        let (a1, a2, b2) = (y[0], y[1], y[3]);
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
    let trace25 = flow_integrate(&g, initial_from_su3(entry.su3_example.as_ref().unwrap()), 0.1, 1e-3);
    report.check(
        "g25/completes",
        trace25.aborted.is_none() && trace25.states.len() == oracle25.len(),
        format!("{} states", trace25.states.len()),
    );
    let mut family_err: f64 = 0.0;
    let mut min_eig25: f64 = f64::INFINITY;
    let e = |idx: &[u8]| ExteriorForm::monomial(idx, 1.0);
    for ((s, m), (_, y)) in trace25.states.iter().zip(&trace25.monitors).zip(&oracle25) {
        let (a1, a2, b1, b2) = (y[0], y[1], y[2], y[3]);
        let omega = e(&[1, 3]).scale(&-a1).add(&e(&[4, 5]).scale(&(1.0 / a2))).add(&e(&[2, 6]).scale(&a2));
        let rho = e(&[1, 5, 6])
            .add(&e(&[1, 2, 4]).scale(&b1))
            .sub(&e(&[2, 3, 5]))
            .sub(&e(&[3, 4, 6]))
            .add(&e(&[1, 2, 5]).sub(&e(&[2, 3, 4])).scale(&b2));
        family_err = family_err.max(s.omega.sub(&omega).sup_norm());
        family_err = family_err.max(s.rho.sub(&rho).sup_norm());
        for k in 0..3 {
            min_eig25 = min_eig25.min(m.beta_eigs[k]);
        }
    }
    report.check(
        "g25/printed-ode-family",
        family_err <= 1e-6,
        format!("sup-norm deviation from the scalar oracle {family_err:.3e} (tolerance 1e-6)"),
    );
    report.check(
        "g25/mean-convexity-preserved",
        min_eig25 >= -1e-9,
        format!("min eigenvalue {min_eig25:.3e} (>= -1e-9)"),
    );
    // normalization constraints of the printed systems hold along both
    // oracles: sqrt(b1 - b2^2) = a1 and sqrt(-h2^2+h1+h2) = f1^2 f2
    let g25_norm = oracle25
        .iter()
        .map(|(_, y)| ((y[2] - y[3] * y[3]).sqrt() - y[0]).abs())
        .fold(0.0f64, f64::max);
    report.check(
        "g25/normalization-constraint",
        g25_norm <= 1e-9,
        format!("max |sqrt(b1-b2^2) - a1| = {g25_norm:.3e}"),
    );
    report
}

/// Criteria 6 + 7 together (the `flows` suite of the CLI).
pub fn suite_flows() -> SuiteReport {
    let mut report = SuiteReport::new("flows");
    for sub in [suite_flow_g24(), suite_flow_g6_g25()] {
        report.items.extend(sub.items);
    }
    report
}

fn random_psd_hermitian(
    rng: &mut rand_chacha::ChaCha8Rng,
    strict: bool,
) -> HermitianForm3<QuadComplex> {
    use rand::Rng;
    // A = M* M (+ Id), entries small Gaussian integers
    let mut m: [[QuadComplex; 3]; 3] = std::array::from_fn(|_| {
        std::array::from_fn(|_| {
            QuadComplex::new(
                QuadScalar::from_int(rng.random_range(-2..3)),
                QuadScalar::from_int(rng.random_range(-2..3)),
            )
        })
    });
    if strict {
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = row[i].add(&QuadComplex::from_real(QuadScalar::from_int(3)));
        }
    }
    let mut a = HermitianForm3::zero();
    for i in 0..3 {
        for j in 0..3 {
            let mut acc = QuadComplex::zero();
            for k in 0..3 {
                acc = acc.add(&m[k][i].conj().mul(&m[k][j]));
            }
            a.set(i, j, acc);
        }
    }
    a
}

/// Real 2-form `(i/2) sum A_{jk} xi^j ∧ conj(xi^k)` for Hermitian `A`.
fn form_of_hermitian(
    coframe: &crate::stable::ComplexCoframe<QuadScalar>,
    a: &HermitianForm3<QuadComplex>,
) -> ExteriorForm<QuadScalar> {
    let half_i = QuadComplex::imaginary_unit().div(&QuadComplex::from_i64(2));
    let mut out: ExteriorForm<QuadComplex> = ExteriorForm::zero(2);
    for j in 0..3 {
        for k in 0..3 {
            let w = coframe.xi(j).wedge(&coframe.xi_bar(k)).expect("degree 2");
            out = out.add(&w.scale(&a.get(j, k).mul(&half_i)));
        }
    }
    let imag = out.map_scalars(|c| c.im());
    assert!(imag.is_zero(), "Hermitian coefficient matrix gives a real form");
    out.map_scalars(|c| c.re())
}

/// Criterion 8: exact property batteries, 500 seeded trials each.
pub fn suite_properties(seed: u64) -> SuiteReport {
    use rand::SeedableRng;
    let mut report = SuiteReport::new("properties");
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);

    // K^2 = lambda Id on arbitrary 3-forms
    {
        let mut sampler = FormSampler::unconstrained(3, seed ^ 1).with_range(-3, 3);
        let mut fails = 0;
        for _ in 0..500 {
            let rho = sampler.sample();
            let k = crate::stable::k_endomorphism(&rho);
            let lam = crate::stable::lambda(&rho);
            let expect = crate::exterior::Endomorphism6::identity().scale(&lam);
            if k.compose(&k) != expect {
                fails += 1;
            }
        }
        report.check("K^2=lambda*Id", fails == 0, format!("{fails}/500 failures"));
    }

    // J_{s rho} = J_rho and lambda(s rho) = s^4 lambda(rho)
    {
        let mut sampler = FormSampler::unconstrained(3, seed ^ 2).with_range(-3, 3);
        let mut fails = 0;
        let mut done = 0;
        while done < 500 {
            let rho = sampler.sample();
            let Ok(t) = almost_complex(&rho) else { continue };
            done += 1;
            let s = [rat(2, 1), rat(-1, 1), rat(1, 3), rat(5, 2)][done % 4].clone();
            let s4 = (&s * &s) * (&s * &s);
            let scaled = rho.scale(&QuadScalar::from_rat(s));
            let ts = almost_complex(&scaled).expect("scaling preserves definiteness");
            if ts.j() != t.j()
                || ts.lambda() != &t.lambda().mul(&QuadScalar::from_rat(s4))
            {
                fails += 1;
            }
        }
        report.check("J-scale-invariance", fails == 0, format!("{fails}/500 failures"));
    }

    // hat(hat(rho)) = -rho on definite forms
    {
        let mut sampler = FormSampler::unconstrained(3, seed ^ 3).with_range(-3, 3);
        let mut fails = 0;
        let mut done = 0;
        while done < 500 {
            let rho = sampler.sample();
            let Ok(t) = almost_complex(&rho) else { continue };
            done += 1;
            let Ok(t2) = almost_complex(t.hat()) else {
                fails += 1;
                continue;
            };
            if t2.hat() != &rho.neg() {
                fails += 1;
            }
        }
        report.check("hat-involution", fails == 0, format!("{fails}/500 failures"));
    }

    // d rho_hat is J-invariant (type (2,2)) for closed definite rho
    {
        let algebras = ["g24", "g18", "g6", "g25", "g28"];
        let mut fails = 0;
        let mut done = 0;
        let mut samplers: Vec<(LieAlgebra, FormSampler)> = algebras
            .iter()
            .map(|n| {
                let g = lookup(n).unwrap().algebra().unwrap();
                let s = FormSampler::closed(&g, 3, seed ^ 4);
                (g, s)
            })
            .collect();
        while done < 500 {
            let idx = done % samplers.len();
            let (g, sampler) = &mut samplers[idx];
            let Some((_, t)) = sampler.sample_definite(500) else { continue };
            done += 1;
            let d_hat = g.differential(t.hat());
            if t.j_pullback(&d_hat) != d_hat {
                fails += 1;
            }
        }
        report.check("d-hat-type-(2,2)", fails == 0, format!("{fails}/500 failures"));
    }

    // beta PSD verdict is independent of the coframe choice
    {
        let algebras = ["g24", "g18", "g6", "g25", "g28"];
        let mut fails = 0;
        let mut done = 0;
        let mut samplers: Vec<(LieAlgebra, FormSampler)> = algebras
            .iter()
            .map(|n| {
                let g = lookup(n).unwrap().algebra().unwrap();
                let s = FormSampler::closed(&g, 3, seed ^ 5);
                (g, s)
            })
            .collect();
        while done < 500 {
            let idx = done % samplers.len();
            let (g, sampler) = &mut samplers[idx];
            let Some((_, t)) = sampler.sample_definite(500) else { continue };
            done += 1;
            let greedy = t.complex_coframe();
            let Some(other) = t.coframe_skipping(&[greedy.indices[0]]) else {
                fails += 1;
                continue;
            };
            let d_hat = g.differential(t.hat());
            let v1 = hermitian_psd(&beta_matrix(&d_hat, &greedy).unwrap());
            let v2 = hermitian_psd(&beta_matrix(&d_hat, &other).unwrap());
            if v1 != v2 {
                fails += 1;
            }
        }
        report.check("beta-coframe-independence", fails == 0, format!("{fails}/500 failures"));
    }

    // products of semi-positive (1,1)-forms give PSD beta
    {
        let rho0 = ExteriorForm::monomial(&[1, 3, 5], QuadScalar::from_int(1))
            .sub(&ExteriorForm::monomial(&[1, 4, 6], QuadScalar::from_int(1)))
            .sub(&ExteriorForm::monomial(&[2, 3, 6], QuadScalar::from_int(1)))
            .sub(&ExteriorForm::monomial(&[2, 4, 5], QuadScalar::from_int(1)));
        let t = almost_complex(&rho0).unwrap();
        let coframe = t.complex_coframe();
        let mut fails = 0;
        for _ in 0..500 {
            let a1 = form_of_hermitian(&coframe, &random_psd_hermitian(&mut rng, false));
            let a2 = form_of_hermitian(&coframe, &random_psd_hermitian(&mut rng, false));
            let gamma = a1.wedge(&a2).expect("degree 4");
            let beta = beta_matrix(&gamma, &coframe).unwrap();
            if !hermitian_psd(&beta).semi_positive {
                fails += 1;
            }
        }
        report.check("product-semi-positivity", fails == 0, format!("{fails}/500 failures"));
    }

    // mean convex samples have nu0 > 0 against every positive (1,1) omega,
    // and Tr(theta) = 3 nu0 exactly
    {
        let mut fails = 0;
        let mut done = 0;
        let g18 = lookup("g18").unwrap().algebra().unwrap();
        let g28 = lookup("g28").unwrap().algebra().unwrap();
        let mut eta_sampler = FormSampler::unconstrained(2, seed ^ 6);
        while done < 500 {
            let g = if done % 2 == 0 { &g18 } else { &g28 };
            let eta = eta_sampler.sample();
            let p56 = coeff(&eta, &[5, 6]);
            if Scalar::is_zero(&p56) {
                continue;
            }
            // orient the exact form so it is mean convex (p56 < 0)
            let rho = if p56.sign() < 0 {
                g.differential(&eta)
            } else {
                g.differential(&eta).neg()
            };
            let outcome = mean_convex_outcome(g, &rho);
            let MeanConvexOutcome::Witness { .. } = outcome else {
                fails += 1;
                done += 1;
                continue;
            };
            done += 1;
            let t = almost_complex(&rho).unwrap();
            let coframe = t.complex_coframe();
            let omega = form_of_hermitian(&coframe, &random_psd_hermitian(&mut rng, true));
            let Ok(torsion) = torsion_scalars(g, &omega, &t) else {
                fails += 1;
                continue;
            };
            if torsion.nu0.sign() <= 0 {
                fails += 1;
                continue;
            }
            // Tr(theta) = 3 nu0: 3 theta ∧ omega^2 = Tr(theta) omega^3
            let omega2 = omega.wedge(&omega).unwrap();
            let omega3 = omega2.wedge(&omega).unwrap();
            let tr = torsion
                .theta
                .wedge(&omega2)
                .unwrap()
                .scale(&QuadScalar::from_int(3))
                .volume_ratio(&omega3)
                .unwrap();
            if tr != torsion.nu0.mul(&QuadScalar::from_int(3)) {
                fails += 1;
            }
        }
        report.check("mean-convex-nu0-positive", fails == 0, format!("{fails}/500 failures"));
    }

    report
}

/// Criterion 9: statistical non-existence evidence on the excluded
/// algebras; every sample must carry an exact failing certificate.
pub fn suite_nonexistence(seed: u64) -> SuiteReport {
    let mut report = SuiteReport::new("nonexistence");
    for name in ["g1", "g2", "g4", "g9", "g12"] {
        let g = lookup(name).unwrap().algebra().unwrap();
        let mut sampler = FormSampler::closed(&g, 3, seed);
        let mut witnesses = 0usize;
        let mut tally: std::collections::BTreeMap<String, usize> = Default::default();
        for _ in 0..1000 {
            let rho = sampler.sample();
            let outcome = mean_convex_outcome(&g, &rho);
            if outcome.is_witness() {
                witnesses += 1;
            }
            let key = match &outcome {
                MeanConvexOutcome::NegativeMinor { index, .. } => {
                    format!("negative_minor[{index}]")
                }
                other => other.label(),
            };
            *tally.entry(key).or_default() += 1;
        }
        let detail: Vec<String> = tally.iter().map(|(k, v)| format!("{k}:{v}")).collect();
        report.check(
            format!("no-witnesses({name})"),
            witnesses == 0,
            format!(
                "STATISTICAL EVIDENCE ONLY — {witnesses}/1000 witnesses; certificates {{{}}}",
                detail.join(", ")
            ),
        );
    }
    report
}

/// Run a suite by CLI name.
pub fn run_suite(name: &str, seed: Option<u64>) -> Option<SuiteReport> {
    match name {
        "table2" => Some(suite_table2()),
        "table3" => Some(suite_table3()),
        "betti" => Some(suite_betti()),
        "lambda-identities" => Some(suite_lambda_identities(seed.unwrap_or(SEED_LAMBDA))),
        "obstructions" => Some(suite_obstructions(seed.unwrap_or(SEED_OBSTRUCTIONS))),
        "flows" => Some(suite_flows()),
        "properties" => Some(suite_properties(seed.unwrap_or(SEED_PROPERTIES))),
        "nonexistence" => Some(suite_nonexistence(seed.unwrap_or(SEED_SEARCH))),
        _ => None,
    }
}

/// All suite names accepted by [`run_suite`].
pub const SUITE_NAMES: [&str; 8] = [
    "table2",
    "table3",
    "betti",
    "lambda-identities",
    "obstructions",
    "flows",
    "properties",
    "nonexistence",
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_all_run() {
        // light smoke check for dispatch; the heavy suites run in the
        // acceptance target
        assert!(run_suite("betti", None).is_some());
        assert!(run_suite("nope", None).is_none());
    }

    #[test]
    fn betti_suite_passes() {
        let rep = suite_betti();
        assert!(rep.passed(), "{:#?}", rep.items.iter().filter(|i| !i.pass).collect::<Vec<_>>());
        assert_eq!(rep.items.len(), 36);
    }
}
