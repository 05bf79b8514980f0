//! Lie algebras from structure equations: the Chevalley–Eilenberg
//! differential, sanity checks, subalgebra data, Betti numbers, closed-form
//! bases, and the built-in catalog.
//!
//! Structure constants are stored as the 2-forms `de^1..de^6` directly, so
//! the bracket sign convention never enters any computation here: center,
//! derived subalgebra and the lower central series are all phrased through
//! `d` alone.

mod catalog;
mod parser;

pub use catalog::{catalog, lookup, CatalogEntry, Family, Su3Example, TamedExample};
pub use parser::{parse_file, parse_form, ParsedFile};

use crate::exterior::{mask_indices, masks_of_degree, ExteriorForm};
use crate::linalg::{span_basis, Mat};
use crate::scalars::{QuadScalar, Rational, Scalar};
use num::traits::Zero;
use std::fmt;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LieError {
    #[error("parse error at line {line}, column {col}: {msg}")]
    Parse { line: usize, col: usize, msg: String },
    #[error("unknown algebra `{0}`")]
    UnknownAlgebra(String),
    #[error("unknown parameter `{0}`")]
    UnknownParam(String),
    #[error("missing value for parameter `{0}`")]
    MissingParam(String),
    #[error("parameter `{name}` = {value} outside its admissible range")]
    ParamOutOfRange { name: String, value: Rational },
    #[error("duplicate definition of `{0}`")]
    DuplicateDefinition(String),
    #[error("structure equations fail the Jacobi identity (d^2 e{0} != 0)")]
    JacobiFails(u8),
}

/// Admissible range of a named rational parameter.
#[derive(Debug, Clone, PartialEq)]
pub enum ParamRange {
    Any,
    /// Interval with optional bounds; the flag marks an inclusive bound.
    Interval {
        lo: Option<(Rational, bool)>,
        hi: Option<(Rational, bool)>,
    },
    Discrete(Vec<Rational>),
}

impl ParamRange {
    pub fn admits(&self, v: &Rational) -> bool {
        match self {
            ParamRange::Any => true,
            ParamRange::Interval { lo, hi } => {
                if let Some((l, incl)) = lo {
                    if v < l || (v == l && !incl) {
                        return false;
                    }
                }
                if let Some((h, incl)) = hi {
                    if v > h || (v == h && !incl) {
                        return false;
                    }
                }
                true
            }
            ParamRange::Discrete(vs) => vs.contains(v),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ParamSpec {
    pub name: String,
    pub range: ParamRange,
}

/// A coefficient in a structure-equation template: a rational constant or
/// a rational multiple of a named parameter.
#[derive(Debug, Clone, PartialEq)]
pub enum CoeffExpr {
    Rat(Rational),
    Param { name: String, scale: Rational },
}

impl CoeffExpr {
    fn eval(&self, params: &[(String, Rational)]) -> Result<Rational, LieError> {
        match self {
            CoeffExpr::Rat(r) => Ok(r.clone()),
            CoeffExpr::Param { name, scale } => params
                .iter()
                .find(|(n, _)| n == name)
                .map(|(_, v)| scale * v)
                .ok_or_else(|| LieError::MissingParam(name.clone())),
        }
    }
}

/// Structure equations with parameters left symbolic.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraTemplate {
    pub name: String,
    pub params: Vec<ParamSpec>,
    /// Terms of `de^i`: (coefficient, sorted 2-index mask).
    entries: [Vec<(CoeffExpr, u8)>; 6],
}

impl AlgebraTemplate {
    pub fn new(name: impl Into<String>, params: Vec<ParamSpec>, entries: [Vec<(CoeffExpr, u8)>; 6]) -> Self {
        AlgebraTemplate { name: name.into(), params, entries }
    }

    pub fn is_constant(&self) -> bool {
        self.params.is_empty()
    }

    /// Substitute parameter values, enforcing admissible ranges.
    pub fn instantiate(&self, values: &[(String, Rational)]) -> Result<LieAlgebra, LieError> {
        for (name, _) in values {
            if !self.params.iter().any(|p| &p.name == name) {
                return Err(LieError::UnknownParam(name.clone()));
            }
        }
        for spec in &self.params {
            let value = values
                .iter()
                .find(|(n, _)| n == &spec.name)
                .map(|(_, v)| v.clone())
                .ok_or_else(|| LieError::MissingParam(spec.name.clone()))?;
            if !spec.range.admits(&value) {
                return Err(LieError::ParamOutOfRange { name: spec.name.clone(), value });
            }
        }
        let mut d_basis: [ExteriorForm<QuadScalar>; 6] =
            std::array::from_fn(|_| ExteriorForm::zero(2));
        for (i, terms) in self.entries.iter().enumerate() {
            for (coeff, mask) in terms {
                let c = coeff.eval(values)?;
                d_basis[i].add_term(*mask, QuadScalar::from_rat(c));
            }
        }
        let name = if values.is_empty() {
            self.name.clone()
        } else {
            let vals: Vec<String> = values.iter().map(|(n, v)| format!("{n}={v}")).collect();
            format!("{}[{}]", self.name, vals.join(","))
        };
        Ok(LieAlgebra { name, d_basis })
    }
}

impl AlgebraTemplate {
    /// Grammar-safe identifier form of the name (catalog keys may contain
    /// punctuation that the file grammar does not admit).
    pub fn ident_name(&self) -> String {
        let mut s: String = self
            .name
            .chars()
            .map(|c| if c.is_alphanumeric() || c == '_' { c } else { '_' })
            .collect();
        if s.chars().next().is_none_or(|c| c.is_ascii_digit()) {
            s.insert(0, 'g');
        }
        s
    }
}

impl fmt::Display for AlgebraTemplate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "algebra {}", self.ident_name())?;
        if !self.params.is_empty() {
            let names: Vec<&str> = self.params.iter().map(|p| p.name.as_str()).collect();
            write!(f, "({})", names.join(","))?;
        }
        write!(f, " = (")?;
        for (i, terms) in self.entries.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            if terms.is_empty() {
                write!(f, "0")?;
            } else {
                let mut first = true;
                for (coeff, mask) in terms {
                    let label: String =
                        mask_indices(*mask).iter().map(|d| char::from(b'0' + d)).collect();
                    let piece = match coeff {
                        CoeffExpr::Rat(r) => {
                            if *r == Rational::from_integer(1.into()) {
                                format!("e{label}")
                            } else if *r == Rational::from_integer((-1).into()) {
                                format!("-e{label}")
                            } else {
                                format!("{r}*e{label}")
                            }
                        }
                        CoeffExpr::Param { name, scale } => {
                            if *scale == Rational::from_integer(1.into()) {
                                format!("{name}*e{label}")
                            } else if *scale == Rational::from_integer((-1).into()) {
                                format!("-{name}*e{label}")
                            } else {
                                format!("{scale}*{name}*e{label}")
                            }
                        }
                    };
                    if first {
                        write!(f, "{piece}")?;
                        first = false;
                    } else if let Some(stripped) = piece.strip_prefix('-') {
                        write!(f, "-{stripped}")?;
                    } else {
                        write!(f, "+{piece}")?;
                    }
                }
            }
        }
        write!(f, ")")
    }
}

/// Sanity verdict: Jacobi identity and unimodularity.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Sanity {
    pub jacobi: bool,
    pub unimodular: bool,
}

/// A 6-dimensional Lie algebra given by the 2-forms `de^1..de^6`.
#[derive(Debug, Clone, PartialEq)]
pub struct LieAlgebra {
    name: String,
    d_basis: [ExteriorForm<QuadScalar>; 6],
}

impl LieAlgebra {
    pub fn from_d_basis(name: impl Into<String>, d_basis: [ExteriorForm<QuadScalar>; 6]) -> Self {
        LieAlgebra { name: name.into(), d_basis }
    }

    pub fn abelian(name: impl Into<String>) -> Self {
        LieAlgebra {
            name: name.into(),
            d_basis: std::array::from_fn(|_| ExteriorForm::zero(2)),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// The stored 2-form `de^i` (`i` 1-based).
    pub fn d_of_basis(&self, i: u8) -> &ExteriorForm<QuadScalar> {
        &self.d_basis[i as usize - 1]
    }

    fn d_basis_in<S: Scalar>(&self) -> [ExteriorForm<S>; 6] {
        std::array::from_fn(|i| {
            self.d_basis[i].map_scalars(|c| {
                S::from_rational(c.as_rational().expect("structure constants are rational"))
            })
        })
    }

    /// Chevalley–Eilenberg differential, extended as an antiderivation.
    pub fn differential<S: Scalar>(&self, a: &ExteriorForm<S>) -> ExteriorForm<S> {
        assert!(a.degree() <= 5, "differential of a top-degree form");
        let d_basis = self.d_basis_in::<S>();
        self.differential_with(&d_basis, a)
    }

    fn differential_with<S: Scalar>(
        &self,
        d_basis: &[ExteriorForm<S>; 6],
        a: &ExteriorForm<S>,
    ) -> ExteriorForm<S> {
        let mut out = ExteriorForm::zero(a.degree() + 1);
        for (m, c) in a.terms() {
            let idxs = mask_indices(m);
            for (pos, &i) in idxs.iter().enumerate() {
                let d_ei = &d_basis[i as usize - 1];
                if d_ei.is_zero() {
                    continue;
                }
                let rest_mask = m & !(1u8 << (i - 1));
                let mut rest = ExteriorForm::zero(a.degree() - 1);
                rest.add_term(rest_mask, S::one());
                let piece = d_ei.wedge(&rest).expect("degree bounded by 6");
                let signed = if pos % 2 == 0 { c.clone() } else { c.neg() };
                out = out.add(&piece.scale(&signed));
            }
        }
        out
    }

    /// Matrix of `d: Λ^k -> Λ^{k+1}` in the canonical monomial bases.
    pub fn d_matrix(&self, k: u8) -> Mat<QuadScalar> {
        let src = masks_of_degree(k);
        let dst = masks_of_degree(k + 1);
        let d_basis = self.d_basis_in::<QuadScalar>();
        let mut images = Vec::with_capacity(src.len());
        for &m in &src {
            let mut mono = ExteriorForm::zero(k);
            mono.add_term(m, QuadScalar::from_int(1));
            images.push(self.differential_with(&d_basis, &mono));
        }
        Mat::from_fn(dst.len(), src.len(), |r, c| images[c].coefficient(dst[r]))
    }

    /// Jacobi (`d^2 = 0` on 1-forms) and unimodularity.
    pub fn sanity(&self) -> Sanity {
        let jacobi = (1..=6u8).all(|i| self.differential(self.d_of_basis(i)).is_zero());
        // Unimodularity: sum_j de^j(e_i, e_j) = 0 for every i; the overall
        // bracket sign convention drops out of this linear condition.
        let unimodular = (1..=6u8).all(|i| {
            let mut acc = QuadScalar::from_int(0);
            for j in 1..=6u8 {
                if i == j {
                    continue;
                }
                let contracted = self.d_of_basis(j).contract_basis(i);
                acc = acc.add(&contracted.coefficient(1u8 << (j - 1)));
            }
            Scalar::is_zero(&acc)
        });
        Sanity { jacobi, unimodular }
    }

    /// Basis of the center `{x : i_x(de^k) = 0 for all k}`.
    pub fn center(&self) -> Vec<Vec<QuadScalar>> {
        let mut rows = Vec::new();
        for k in 1..=6u8 {
            for m in 1..=6u8 {
                let row: Vec<QuadScalar> = (1..=6u8)
                    .map(|s| self.d_of_basis(k).contract_basis(s).coefficient(1u8 << (m - 1)))
                    .collect();
                if row.iter().all(Scalar::is_zero) {
                    continue;
                }
                rows.push(row);
            }
        }
        if rows.is_empty() {
            return unit_vectors();
        }
        Mat::from_rows(rows).kernel_basis()
    }

    /// Basis of the derived subalgebra `[g,g]`, the annihilator of the
    /// closed 1-forms.
    pub fn derived_subalgebra(&self) -> Vec<Vec<QuadScalar>> {
        let closed = self.closed_form_basis(1);
        if closed.is_empty() {
            return unit_vectors();
        }
        let rows: Vec<Vec<QuadScalar>> = closed
            .iter()
            .map(|alpha| (1..=6u8).map(|i| alpha.coefficient(1u8 << (i - 1))).collect())
            .collect();
        Mat::from_rows(rows).kernel_basis()
    }

    /// Coordinates of `[e_i, v]` up to a global sign convention.
    fn bracket_with_basis(&self, i: u8, v: &[QuadScalar]) -> Vec<QuadScalar> {
        (1..=6u8)
            .map(|k| {
                let contracted = self.d_of_basis(k).contract_basis(i);
                let mut acc = QuadScalar::from_int(0);
                for (j, vj) in v.iter().enumerate() {
                    if vj.is_zero() {
                        continue;
                    }
                    acc = acc.add(&contracted.coefficient(1u8 << j).mul(vj));
                }
                acc.neg()
            })
            .collect()
    }

    /// Dimensions of the proper lower central series terms
    /// `[g,g] ⊇ [g,[g,g]] ⊇ …` until stabilization (a final `0` marks a
    /// nilpotent algebra).
    pub fn lower_central_series(&self) -> Vec<usize> {
        let mut dims = Vec::new();
        let mut current = unit_vectors();
        loop {
            let mut images = Vec::new();
            for i in 1..=6u8 {
                for v in &current {
                    let w = self.bracket_with_basis(i, v);
                    if !w.iter().all(Scalar::is_zero) {
                        images.push(w);
                    }
                }
            }
            let next = span_basis(&images);
            let dim = next.len();
            if dims.last() == Some(&dim) {
                break;
            }
            dims.push(dim);
            if dim == 0 {
                break;
            }
            current = next;
        }
        dims
    }

    /// Standard nilpotency class: smallest `c` with `g^c = 0`, `None` for
    /// a non-nilpotent algebra.
    pub fn nilpotency_class(&self) -> Option<usize> {
        let dims = self.lower_central_series();
        if dims.last() == Some(&0) {
            Some(dims.len())
        } else {
            None
        }
    }

    /// First and second Betti numbers, by exact rank computation.
    pub fn betti(&self) -> (usize, usize) {
        let rank1 = self.d_matrix(1).rank();
        let rank2 = self.d_matrix(2).rank();
        let b1 = 6 - rank1;
        let b2 = (15 - rank2) - rank1;
        (b1, b2)
    }

    /// Exact rational basis of the closed `k`-forms.
    pub fn closed_form_basis(&self, k: u8) -> Vec<ExteriorForm<QuadScalar>> {
        self.d_matrix(k)
            .kernel_basis()
            .into_iter()
            .map(|coeffs| ExteriorForm::from_coeff_vec(k, &coeffs))
            .collect()
    }
}

impl fmt::Display for LieAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "algebra {} = (", self.name)?;
        for i in 1..=6u8 {
            if i > 1 {
                write!(f, ",")?;
            }
            let d = self.d_of_basis(i);
            if d.is_zero() {
                write!(f, "0")?;
            } else {
                write!(f, "{}", format!("{d}").replace(' ', ""))?;
            }
        }
        write!(f, ")")
    }
}

fn unit_vectors() -> Vec<Vec<QuadScalar>> {
    (0..6)
        .map(|i| {
            (0..6)
                .map(|j| if i == j { QuadScalar::from_int(1) } else { QuadScalar::from_int(0) })
                .collect()
        })
        .collect()
}

/// Shared radicand of a family of forms, if consistent.
pub fn common_radicand<'a>(
    forms: impl IntoIterator<Item = &'a ExteriorForm<QuadScalar>>,
) -> Result<num::BigInt, crate::scalars::ScalarError> {
    let mut d = num::BigInt::zero();
    for f in forms {
        for (_, c) in f.terms() {
            let cd = c.radicand();
            if cd.is_zero() {
                continue;
            }
            if d.is_zero() {
                d = cd.clone();
            } else if &d != cd {
                return Err(crate::scalars::ScalarError::MixedRadicands(d, cd.clone()));
            }
        }
    }
    Ok(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rat;

    fn qs(n: i64) -> QuadScalar {
        QuadScalar::from_int(n)
    }

    fn e(idx: &[u8]) -> ExteriorForm<QuadScalar> {
        ExteriorForm::monomial(idx, qs(1))
    }

    fn g24() -> LieAlgebra {
        lookup("g24").unwrap().algebra().unwrap()
    }

    #[test]
    fn differential_examples() {
        let g = g24();
        assert_eq!(g.differential(&e(&[4])), e(&[1, 2]));
        // d(e56) = de5 ∧ e6 − e5 ∧ de6 = e136 − e235
        let d56 = g.differential(&e(&[5, 6]));
        assert_eq!(d56, e(&[1, 3, 6]).sub(&e(&[2, 3, 5])));
        let g18 = lookup("g18").unwrap().algebra().unwrap();
        let d56 = g18.differential(&e(&[5, 6]));
        let expected = e(&[1, 3, 6])
            .sub(&e(&[2, 4, 6]))
            .sub(&e(&[1, 4, 5]))
            .sub(&e(&[2, 3, 5]));
        assert_eq!(d56, expected);
    }

    #[test]
    fn antiderivation_property() {
        use rand::rngs::StdRng;
        use rand::{Rng, SeedableRng};
        let mut rng = StdRng::seed_from_u64(23);
        for name in ["g24", "g18", "g6", "g27"] {
            let g = lookup(name).unwrap().algebra().unwrap();
            for _ in 0..125 {
                let da = rng.random_range(1..3u8);
                let db = rng.random_range(1..=(4 - da));
                let mut a = ExteriorForm::zero(da);
                let mut b = ExteriorForm::zero(db);
                for m in masks_of_degree(da) {
                    a.add_term(m, qs(rng.random_range(-3..4)));
                }
                for m in masks_of_degree(db) {
                    b.add_term(m, qs(rng.random_range(-3..4)));
                }
                let lhs = g.differential(&a.wedge(&b).unwrap());
                let mut rhs = g.differential(&a).wedge(&b).unwrap();
                let second = a.wedge(&g.differential(&b)).unwrap();
                rhs = if da % 2 == 0 { rhs.add(&second) } else { rhs.sub(&second) };
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn sanity_examples() {
        assert_eq!(g24().sanity(), Sanity { jacobi: true, unimodular: true });
        // custom non-Lie structure: d^2 e1 = d(e45) = e235 ≠ 0
        let mut d: [ExteriorForm<QuadScalar>; 6] = std::array::from_fn(|_| ExteriorForm::zero(2));
        d[0] = e(&[4, 5]);
        d[3] = e(&[2, 3]);
        let bad = LieAlgebra::from_d_basis("bad", d);
        assert!(!bad.sanity().jacobi);
        let ee = lookup("e(1,1)+e(1,1)").unwrap().algebra().unwrap();
        assert_eq!(ee.sanity(), Sanity { jacobi: true, unimodular: true });
    }

    #[test]
    fn center_examples() {
        let c = g24().center();
        assert_eq!(c.len(), 3);
        for v in &c {
            assert!(v[0].is_zero() && v[1].is_zero() && v[2].is_zero());
        }
        let abelian = LieAlgebra::abelian("ab");
        assert_eq!(abelian.center().len(), 6);
        let g3 = lookup("g3").unwrap().algebra().unwrap();
        let c3 = g3.center();
        assert_eq!(c3.len(), 1);
        assert!(!c3[0][5].is_zero());
    }

    #[test]
    fn derived_examples() {
        let d = g24().derived_subalgebra();
        assert_eq!(d.len(), 3);
        assert!(LieAlgebra::abelian("ab").derived_subalgebra().is_empty());
        let g33 = lookup("g33").unwrap().algebra().unwrap();
        let d33 = g33.derived_subalgebra();
        assert_eq!(d33.len(), 1);
        assert!(!d33[0][5].is_zero());
    }

    #[test]
    fn lower_central_series_examples() {
        let g27 = lookup("g27").unwrap().algebra().unwrap();
        assert_eq!(g27.nilpotency_class(), Some(3));
        assert_eq!(g24().nilpotency_class(), Some(2));
        assert_eq!(LieAlgebra::abelian("ab").lower_central_series(), vec![0]);
        // a solvable, non-nilpotent catalog entry
        let ee = lookup("e(1,1)+e(1,1)").unwrap().algebra().unwrap();
        assert_eq!(ee.nilpotency_class(), None);
    }

    #[test]
    fn betti_examples() {
        assert_eq!(g24().betti().0, 3);
        let g25 = lookup("g25").unwrap().algebra().unwrap();
        let g27 = lookup("g27").unwrap().algebra().unwrap();
        assert_eq!(g25.betti(), (4, 6));
        assert_eq!(g27.betti().1, 7);
        assert_eq!(LieAlgebra::abelian("ab").betti(), (6, 15));
    }

    #[test]
    fn closed_form_basis_examples() {
        assert_eq!(LieAlgebra::abelian("ab").closed_form_basis(3).len(), 20);
        let basis1 = g24().closed_form_basis(1);
        assert_eq!(basis1.len(), 3);
        for f in &basis1 {
            assert!(g24().differential(f).is_zero());
        }
        let g18 = lookup("g18").unwrap().algebra().unwrap();
        let b3 = g18.closed_form_basis(3);
        let d3 = g18.d_matrix(3);
        assert_eq!(b3.len(), 20 - d3.rank());
        for f in &b3 {
            assert!(g18.differential(f).is_zero());
        }
    }

    #[test]
    fn param_ranges() {
        let entry = lookup("A5,7(-1,b,-b)+R").unwrap();
        assert!(entry
            .template
            .instantiate(&[("b".into(), rat(-1, 1))])
            .is_ok());
        assert!(matches!(
            entry.template.instantiate(&[("b".into(), rat(1, 2))]),
            Err(LieError::ParamOutOfRange { .. })
        ));
        assert!(matches!(
            entry.template.instantiate(&[]),
            Err(LieError::MissingParam(_))
        ));
        assert!(matches!(
            entry.template.instantiate(&[("z".into(), rat(1, 1))]),
            Err(LieError::UnknownParam(_))
        ));
    }
}
