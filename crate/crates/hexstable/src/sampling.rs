//! Deterministic, seeded sampling of invariant forms on a fixed algebra.
//!
//! Samples draw small integer coefficients on the exact closed-form basis,
//! keeping quadratic-field arithmetic fast and runs reproducible.

use crate::exterior::ExteriorForm;
use crate::liealg::LieAlgebra;
use crate::scalars::QuadScalar;
use crate::stable::{almost_complex, DefiniteTriple};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Draws random rational combinations from the closed-form basis of a
/// fixed degree.
pub struct FormSampler {
    rng: ChaCha8Rng,
    basis: Vec<ExteriorForm<QuadScalar>>,
    degree: u8,
    lo: i64,
    hi: i64,
}

impl FormSampler {
    /// Sampler over the closed `degree`-forms of `g`.
    pub fn closed(g: &LieAlgebra, degree: u8, seed: u64) -> Self {
        FormSampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            basis: g.closed_form_basis(degree),
            degree,
            lo: -5,
            hi: 5,
        }
    }

    /// Sampler over all `degree`-forms (no closedness constraint).
    pub fn unconstrained(degree: u8, seed: u64) -> Self {
        let basis = crate::exterior::masks_of_degree(degree)
            .into_iter()
            .map(|m| {
                let mut f = ExteriorForm::zero(degree);
                f.add_term(m, QuadScalar::from_int(1));
                f
            })
            .collect();
        FormSampler { rng: ChaCha8Rng::seed_from_u64(seed), basis, degree, lo: -5, hi: 5 }
    }

    pub fn with_range(mut self, lo: i64, hi: i64) -> Self {
        assert!(lo < hi);
        self.lo = lo;
        self.hi = hi;
        self
    }

    pub fn basis_len(&self) -> usize {
        self.basis.len()
    }

    /// Next nonzero sample.
    pub fn sample(&mut self) -> ExteriorForm<QuadScalar> {
        loop {
            let mut f = ExteriorForm::zero(self.degree);
            for b in &self.basis {
                let c = self.rng.random_range(self.lo..=self.hi);
                if c != 0 {
                    f = f.add(&b.scale(&QuadScalar::from_int(c)));
                }
            }
            if !f.is_zero() {
                return f;
            }
        }
    }

    /// Next closed *definite* 3-form together with its induced structure.
    /// Samples failing `lambda < 0` (or leaving the quadratic field) are
    /// rejected; gives up after `max_tries` rejections.
    pub fn sample_definite(
        &mut self,
        max_tries: usize,
    ) -> Option<(ExteriorForm<QuadScalar>, DefiniteTriple<QuadScalar>)> {
        assert_eq!(self.degree, 3);
        for _ in 0..max_tries {
            let rho = self.sample();
            if let Ok(triple) = almost_complex(&rho) {
                return Some((rho, triple));
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::liealg::lookup;

    #[test]
    fn samples_are_closed_and_deterministic() {
        let g = lookup("g24").unwrap().algebra().unwrap();
        let mut s1 = FormSampler::closed(&g, 3, 99);
        let mut s2 = FormSampler::closed(&g, 3, 99);
        for _ in 0..20 {
            let a = s1.sample();
            let b = s2.sample();
            assert_eq!(a, b);
            assert!(g.differential(&a).is_zero());
        }
    }

    #[test]
    fn definite_sampling_works() {
        let g = lookup("g24").unwrap().algebra().unwrap();
        let mut s = FormSampler::closed(&g, 3, 7);
        let (rho, triple) = s.sample_definite(200).expect("definite samples exist on g24");
        assert!(g.differential(&rho).is_zero());
        assert_eq!(triple.lambda().sign(), -1);
    }
}
