//! Stable 3-forms and their induced almost complex structures.
//!
//! For a 3-form `rho` on the 6-space, `K(v) = A((i_v rho) ∧ rho)` (with the
//! canonical identification through the reference volume `e^{123456}`)
//! satisfies `K^2 = lambda * Id` with `lambda = Tr(K^2)/6`. When
//! `lambda < 0` the normalized endomorphism `J = -K / sqrt(-lambda)` is an
//! almost complex structure and `rho_hat = rho(J., J., J.)` completes
//! `rho + i*rho_hat` to a (3,0)-form.

use crate::exterior::{wedge_sign, Endomorphism6, ExteriorForm, TOP_MASK};
use crate::linalg::{intersect_spans, Mat};
use crate::scalars::{ComplexScalar, RealScalar, Scalar, ScalarError};
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum StableError {
    #[error("3-form is not stable (lambda = 0)")]
    NotStable,
    #[error("3-form is stable but not definite (lambda > 0)")]
    NotDefinite,
    #[error("scalar tower: {0}")]
    Scalar(#[from] ScalarError),
}

/// `K` with the reference volume trivialized away: column `j` holds the
/// vector `w` with `alpha ∧ (i_{e_j} rho) ∧ rho = alpha(w) e^{123456}`.
pub fn k_endomorphism<S: RealScalar>(rho: &ExteriorForm<S>) -> Endomorphism6<S> {
    assert_eq!(rho.degree(), 3);
    let mut k = Endomorphism6::zeros();
    for j in 1..=6u8 {
        let phi = rho
            .contract_basis(j)
            .wedge(rho)
            .expect("(i_v rho) ∧ rho has degree 5");
        for i in 1..=6u8 {
            let bit = 1u8 << (i - 1);
            let complement = TOP_MASK & !bit;
            let sign = wedge_sign(bit, complement);
            let mut c = phi.coefficient(complement);
            if sign < 0 {
                c = c.neg();
            }
            k.set(i as usize - 1, j as usize - 1, c);
        }
    }
    k
}

/// Hitchin's quartic invariant `lambda(rho) = Tr(K^2)/6`.
pub fn lambda<S: RealScalar>(rho: &ExteriorForm<S>) -> S {
    let k = k_endomorphism(rho);
    k.compose(&k).trace().div(&S::from_i64(6))
}

/// A definite 3-form bundled with its induced structure.
#[derive(Debug, Clone)]
pub struct DefiniteTriple<S: RealScalar> {
    rho: ExteriorForm<S>,
    k: Endomorphism6<S>,
    lambda: S,
    j: Endomorphism6<S>,
    rho_hat: ExteriorForm<S>,
}

/// Build the [`DefiniteTriple`] of a definite 3-form.
pub fn almost_complex<S: RealScalar>(rho: &ExteriorForm<S>) -> Result<DefiniteTriple<S>, StableError> {
    assert_eq!(rho.degree(), 3);
    let k = k_endomorphism(rho);
    let lam = k.compose(&k).trace().div(&S::from_i64(6));
    match lam.sign() {
        0 => return Err(StableError::NotStable),
        1 => return Err(StableError::NotDefinite),
        _ => {}
    }
    let s = lam.neg().sqrt()?;
    // The new radicand must live in the same quadratic field as rho.
    for (_, c) in rho.terms() {
        if !s.field_compatible(c) {
            return Err(StableError::Scalar(ScalarError::NestedRadical));
        }
    }
    let j = k.scale(&S::one().neg().div(&s));
    let rho_hat = rho.pullback(&j);
    let triple = DefiniteTriple { rho: rho.clone(), k, lambda: lam, j, rho_hat };
    debug_assert!(triple.j_squared_is_minus_id());
    Ok(triple)
}

impl<S: RealScalar> DefiniteTriple<S> {
    pub fn rho(&self) -> &ExteriorForm<S> {
        &self.rho
    }

    pub fn k(&self) -> &Endomorphism6<S> {
        &self.k
    }

    pub fn lambda(&self) -> &S {
        &self.lambda
    }

    pub fn j(&self) -> &Endomorphism6<S> {
        &self.j
    }

    /// `rho_hat = J rho`, the imaginary part of the (3,0)-form.
    pub fn hat(&self) -> &ExteriorForm<S> {
        &self.rho_hat
    }

    fn j_squared_is_minus_id(&self) -> bool {
        let j2 = self.j.compose(&self.j);
        let minus_id = Endomorphism6::identity().scale(&S::one().neg());
        (0..6).all(|i| {
            (0..6).all(|jx| {
                j2.get(i, jx)
                    .sub(minus_id.get(i, jx))
                    .magnitude()
                    <= 1e-9 * (1.0 + self.j.get(i, jx).magnitude().powi(2))
            })
        })
    }

    /// Pullback action of `J` on covectors: `(J^* e^k)(v) = e^k(J v)`.
    pub fn j_pullback(&self, a: &ExteriorForm<S>) -> ExteriorForm<S> {
        a.pullback(&self.j)
    }

    /// Greedy (1,0)-coframe: smallest indices `k1 < k2 < k3` with
    /// `zeta^k = e^k - i J^* e^k` linearly independent.
    pub fn complex_coframe(&self) -> ComplexCoframe<S> {
        self.coframe_skipping(&[])
            .expect("an almost complex structure always admits a coframe")
    }

    /// Greedy coframe avoiding the given first indices; used to probe
    /// coframe independence of downstream verdicts.
    pub fn coframe_skipping(&self, skip: &[u8]) -> Option<ComplexCoframe<S>> {
        let zetas: Vec<ExteriorForm<S::Complex>> = (1..=6u8).map(|k| self.zeta(k)).collect();
        let mut chosen: Vec<u8> = Vec::new();
        let mut rows: Vec<Vec<S::Complex>> = Vec::new();
        for k in 1..=6u8 {
            if chosen.len() == 3 {
                break;
            }
            if skip.contains(&k) {
                continue;
            }
            let row: Vec<S::Complex> = zetas[k as usize - 1].to_coeff_vec();
            let mut candidate = rows.clone();
            candidate.push(row.clone());
            if Mat::from_rows(candidate).rank() == rows.len() + 1 {
                rows.push(row);
                chosen.push(k);
            }
        }
        if chosen.len() < 3 {
            return None;
        }
        let xi: [ExteriorForm<S::Complex>; 3] =
            std::array::from_fn(|i| zetas[chosen[i] as usize - 1].clone());
        ComplexCoframe::new(xi, [chosen[0], chosen[1], chosen[2]])
    }

    /// `zeta^k = e^k - i J^* e^k` as a complex 1-form.
    pub fn zeta(&self, k: u8) -> ExteriorForm<S::Complex> {
        let i_unit = S::Complex::imaginary_unit();
        let mut out = ExteriorForm::zero(1);
        for m in 1..=6u8 {
            let mut c = if m == k { S::Complex::one() } else { S::Complex::zero() };
            let jkm = self.j.get(k as usize - 1, m as usize - 1);
            c = c.sub(&i_unit.mul(&jkm.complexify()));
            out.add_term(1u8 << (m - 1), c);
        }
        out
    }

    /// Decompose `a` into its `(p,q)`-components with respect to `J`.
    pub fn type_components(
        &self,
        coframe: &ComplexCoframe<S>,
        a: &ExteriorForm<S>,
    ) -> BTreeMap<(u8, u8), ExteriorForm<S::Complex>> {
        let ac = a.map_scalars(|c| c.complexify());
        let in_xi = ac.pullback(&coframe.to_xi);
        let mut buckets: BTreeMap<(u8, u8), ExteriorForm<S::Complex>> = BTreeMap::new();
        for (mask, c) in in_xi.terms() {
            let p = (mask & 0b000111).count_ones() as u8;
            let q = (mask & 0b111000).count_ones() as u8;
            let entry = buckets
                .entry((p, q))
                .or_insert_with(|| ExteriorForm::zero(a.degree()));
            entry.add_term(mask, c.clone());
        }
        buckets
            .into_iter()
            .map(|(pq, piece)| (pq, piece.pullback(&coframe.from_xi)))
            .collect()
    }

    /// Is `a` purely of type `(p,q)`?
    pub fn is_pure_type(&self, coframe: &ComplexCoframe<S>, a: &ExteriorForm<S>, p: u8, q: u8) -> bool {
        self.type_components(coframe, a)
            .into_iter()
            .all(|((pp, qq), piece)| (pp == p && qq == q) || piece.is_zero())
    }

    /// Dimensions of `U_j = V_j ∩ J^* V_j` for the flag
    /// `V_j = span(e^1..e^j)`.
    pub fn u_filtration(&self) -> Vec<usize> {
        let flag: Vec<Vec<Vec<S>>> = (1..=6)
            .map(|j| {
                (0..j)
                    .map(|i| {
                        (0..6)
                            .map(|m| if m == i { S::one() } else { S::zero() })
                            .collect()
                    })
                    .collect()
            })
            .collect();
        self.u_filtration_with(&flag)
    }

    /// Dimensions of `U_j = V_j ∩ J^* V_j` for a custom flag of covector
    /// subspaces (each given by a basis of coordinate vectors).
    pub fn u_filtration_with(&self, flag: &[Vec<Vec<S>>]) -> Vec<usize> {
        // Covector coordinates transform by J^t under pullback.
        flag.iter()
            .map(|v_basis| {
                let jv: Vec<Vec<S>> = v_basis
                    .iter()
                    .map(|alpha| {
                        (0..6)
                            .map(|m| {
                                let mut acc = S::zero();
                                for k in 0..6 {
                                    acc = acc.add(&alpha[k].mul(self.j.get(k, m)));
                                }
                                acc
                            })
                            .collect()
                    })
                    .collect();
                intersect_spans(v_basis, &jv).len()
            })
            .collect()
    }
}

/// A basis `(xi^1, xi^2, xi^3)` of (1,0)-forms extracted from the zeta
/// generators, with cached change-of-basis matrices.
#[derive(Debug, Clone)]
pub struct ComplexCoframe<S: RealScalar> {
    xi: [ExteriorForm<S::Complex>; 3],
    pub indices: [u8; 3],
    /// Substitution `e -> xi` basis (rows of `from_xi` inverted).
    to_xi: Endomorphism6<S::Complex>,
    /// Row `r` holds the coordinates of the `r`-th coframe element
    /// (xi^1, xi^2, xi^3, conj xi^1, conj xi^2, conj xi^3) in the e-basis.
    from_xi: Endomorphism6<S::Complex>,
}

impl<S: RealScalar> ComplexCoframe<S> {
    fn new(xi: [ExteriorForm<S::Complex>; 3], indices: [u8; 3]) -> Option<Self> {
        let mut from_xi = Endomorphism6::zeros();
        for r in 0..3 {
            let coords = xi[r].to_coeff_vec();
            let conj: Vec<S::Complex> = coords.iter().map(ComplexScalar::conj).collect();
            for m in 0..6 {
                from_xi.set(r, m, coords[m].clone());
                from_xi.set(r + 3, m, conj[m].clone());
            }
        }
        let to_xi_mat = from_xi.to_mat().inverse()?;
        let mut to_xi = Endomorphism6::zeros();
        for i in 0..6 {
            for r in 0..6 {
                to_xi.set(i, r, to_xi_mat.get(i, r).clone());
            }
        }
        Some(ComplexCoframe { xi, indices, to_xi, from_xi })
    }

    pub fn xi(&self, m: usize) -> &ExteriorForm<S::Complex> {
        &self.xi[m]
    }

    /// Substitution matrix taking e-basis coefficients into the coframe
    /// monomial basis (for use with [`ExteriorForm::pullback`]).
    pub fn to_xi(&self) -> &Endomorphism6<S::Complex> {
        &self.to_xi
    }

    /// Inverse substitution: coframe monomials back to the e-basis.
    pub fn from_xi(&self) -> &Endomorphism6<S::Complex> {
        &self.from_xi
    }

    pub fn xi_bar(&self, m: usize) -> ExteriorForm<S::Complex> {
        self.xi[m].map_scalars(ComplexScalar::conj)
    }

    /// `xi^1 ∧ conj(xi^1) ∧ ... ∧ xi^3 ∧ conj(xi^3)` scaled by `(i/2)^3`:
    /// the canonical orientation volume of the coframe.
    pub fn tau(&self) -> ExteriorForm<S::Complex> {
        let half_i = S::Complex::imaginary_unit().div(&S::Complex::from_i64(2));
        let mut vol = ExteriorForm::zero(0);
        vol.add_term(0, half_i.mul(&half_i).mul(&half_i));
        for m in 0..3 {
            vol = vol
                .wedge(&self.xi[m])
                .and_then(|v| v.wedge(&self.xi_bar(m)))
                .expect("coframe volume has degree 6");
        }
        vol
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::lookup;
    use crate::scalars::{rat, QuadScalar};

    type F = ExteriorForm<QuadScalar>;

    fn qs(n: i64) -> QuadScalar {
        QuadScalar::from_int(n)
    }

    fn e(idx: &[u8]) -> F {
        F::monomial(idx, qs(1))
    }

    /// The adapted-basis model structure.
    fn rho0() -> F {
        e(&[1, 3, 5])
            .sub(&e(&[1, 4, 6]))
            .sub(&e(&[2, 3, 6]))
            .sub(&e(&[2, 4, 5]))
    }

    fn rho0_hat() -> F {
        e(&[1, 3, 6])
            .add(&e(&[1, 4, 5]))
            .add(&e(&[2, 3, 5]))
            .sub(&e(&[2, 4, 6]))
    }

    fn omega0() -> F {
        e(&[1, 2]).add(&e(&[3, 4])).add(&e(&[5, 6]))
    }

    #[test]
    fn k_endomorphism_examples() {
        // (i_v rho) ∧ rho has a repeated factor for decomposable rho
        let k = k_endomorphism(&e(&[1, 2, 3]));
        assert_eq!(k, Endomorphism6::zeros());
        let k0 = k_endomorphism(&rho0());
        let k0_sq = k0.compose(&k0);
        assert_eq!(k0_sq, Endomorphism6::identity().scale(&qs(-4)));
        // K is quadratic in rho
        let k2 = k_endomorphism(&rho0().scale(&qs(2)));
        assert_eq!(k2, k0.scale(&qs(4)));
    }

    #[test]
    fn k_defining_identity_bruteforce() {
        // alpha ∧ (i_{e_j} rho) ∧ rho = alpha(K e_j) * e^{123456} for all
        // basis covectors alpha; checked directly from the definition.
        let rho = rho0().add(&e(&[1, 2, 3]).scale(&qs(2))).sub(&e(&[4, 5, 6]));
        let k = k_endomorphism(&rho);
        for j in 1..=6u8 {
            let phi = rho.contract_basis(j).wedge(&rho).unwrap();
            for i in 1..=6u8 {
                let lhs = e(&[i]).wedge(&phi).unwrap().top_coefficient();
                assert_eq!(&lhs, k.get(i as usize - 1, j as usize - 1));
            }
        }
    }

    #[test]
    fn lambda_examples() {
        assert_eq!(lambda(&rho0()), qs(-4));
        let g18 = lookup("g18").unwrap().algebra().unwrap();
        let d_eta = g18.differential(&e(&[5, 6]));
        assert_eq!(lambda(&d_eta), qs(-4));
        let g5 = lookup("g5").unwrap().algebra().unwrap();
        let d_eta5 = g5.differential(&e(&[5, 6]));
        assert_eq!(lambda(&d_eta5), qs(1));
        // scaling: lambda(s rho) = s^4 lambda(rho)
        assert_eq!(lambda(&rho0().scale(&qs(3))), qs(-4 * 81));
    }

    #[test]
    fn almost_complex_examples() {
        let t = almost_complex(&rho0()).unwrap();
        assert_eq!(t.hat(), &rho0_hat());
        assert_eq!(t.lambda(), &qs(-4));
        // J is scale-invariant
        for s in [rat(2, 1), rat(-1, 1), rat(1, 3)] {
            let ts = almost_complex(&rho0().scale(&QuadScalar::from_rat(s))).unwrap();
            assert_eq!(ts.j(), t.j());
        }
        assert!(matches!(
            almost_complex(&e(&[1, 2, 3])),
            Err(StableError::NotStable)
        ));
        let g5 = lookup("g5").unwrap().algebra().unwrap();
        let d_eta5 = g5.differential(&e(&[5, 6]));
        assert!(matches!(almost_complex(&d_eta5), Err(StableError::NotDefinite)));
    }

    #[test]
    fn hat_involution_and_volume() {
        let t = almost_complex(&rho0()).unwrap();
        let hat_hat = almost_complex(t.hat()).unwrap().hat().clone();
        assert_eq!(hat_hat, rho0().neg());
        let vol = rho0().wedge(t.hat()).unwrap();
        assert_eq!(vol, ExteriorForm::volume().scale(&qs(4)));
        // consistency with (2/3) omega^3 = 4 e^{123456}
        let w3 = omega0().wedge(&omega0()).unwrap().wedge(&omega0()).unwrap();
        assert_eq!(w3.scale(&QuadScalar::from_rat(rat(2, 3))), vol);
    }

    #[test]
    fn pullback_by_j_gives_hat() {
        // the printed adapted pair pins the sign convention
        let t = almost_complex(&rho0()).unwrap();
        assert_eq!(t.j_pullback(&rho0()), rho0_hat());
    }

    #[test]
    fn coframe_examples() {
        let t = almost_complex(&rho0()).unwrap();
        let c = t.complex_coframe();
        assert_eq!(c.indices, [1, 3, 5]);
        // xi^1 ∧ xi^2 ∧ xi^3 ∧ conjugates is non-zero
        let tau = c.tau();
        assert!(!tau.is_zero());
        let g18 = lookup("g18").unwrap().algebra().unwrap();
        let t18 = almost_complex(&g18.differential(&e(&[5, 6]))).unwrap();
        assert_eq!(t18.complex_coframe().indices, [1, 3, 5]);
    }

    #[test]
    fn type_components_examples() {
        use crate::scalars::{ComplexScalar, QuadComplex, RealScalar};
        let t = almost_complex(&rho0()).unwrap();
        let c = t.complex_coframe();
        assert!(t.is_pure_type(&c, &omega0(), 1, 1));
        // rho0 splits as (3,0) + (0,3); rho0 + i rho0_hat is pure (3,0)
        let comps = t.type_components(&c, &rho0());
        assert!(comps.keys().all(|&(p, q)| (p, q) == (3, 0) || (p, q) == (0, 3)));
        let psi = rho0()
            .map_scalars(RealScalar::complexify)
            .add(
                &t.hat()
                    .map_scalars(RealScalar::complexify)
                    .scale(&QuadComplex::imaginary_unit()),
            );
        let psi_in_xi = psi.pullback(&c.to_xi);
        let pure_30 = psi_in_xi.terms().all(|(m, _)| m == 0b000111);
        assert!(pure_30);
        // components sum to the input
        let mut sum: ExteriorForm<QuadComplex> = ExteriorForm::zero(3);
        for piece in comps.values() {
            sum = sum.add(piece);
        }
        assert_eq!(sum, rho0().map_scalars(RealScalar::complexify));
    }

    #[test]
    fn u_filtration_examples() {
        let t = almost_complex(&rho0()).unwrap();
        let dims = t.u_filtration();
        assert_eq!(dims[5], 6);
        assert_eq!(dims[4], 4);
        for (j, d) in dims.iter().enumerate() {
            assert!(d % 2 == 0, "U_{} has odd dimension {}", j + 1, d);
            if j > 0 {
                assert!(dims[j] >= dims[j - 1]);
            }
        }
        // catalog anchors
        let g21 = lookup("g21").unwrap();
        let ex = g21.su3_example.as_ref().unwrap();
        let t21 = almost_complex(&ex.rho).unwrap();
        assert_eq!(t21.u_filtration()[1], 2);
        let g11 = lookup("g11").unwrap();
        let ex11 = g11.su3_example.as_ref().unwrap();
        let t11 = almost_complex(&ex11.rho).unwrap();
        let dims11 = t11.u_filtration();
        assert_eq!(dims11[2], dims11[3]);
    }

    #[test]
    fn random_k_squared_identity() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(31);
        let mut checked = 0;
        while checked < 100 {
            let mut rho = F::zero(3);
            for m in crate::exterior::masks_of_degree(3) {
                rho.add_term(m, qs(rng.random_range(-3..4)));
            }
            let lam = lambda(&rho);
            if Scalar::is_zero(&lam) {
                continue;
            }
            let k = k_endomorphism(&rho);
            let k2 = k.compose(&k);
            assert_eq!(k2, Endomorphism6::identity().scale(&lam));
            checked += 1;
        }
    }
}
