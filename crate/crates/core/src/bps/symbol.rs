//! Exact principal symbols of the deformation complex at a covector.

use serde::Serialize;

use crate::clifford::{interior, wedge, CliffordElement, FormEndomorphism};
use crate::gaussian::Gaussian;
use crate::{Error, Result};

/// Ranks of the symbol maps at one covector, per su(2) direction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymbolReport {
    pub xi: Vec<String>,
    pub composite_is_zero: bool,
    pub rank_sigma1: usize,
    pub rank_sigma2: usize,
    /// Rank of `ξ⌟` on three-forms.
    pub rank_interior_top: usize,
    /// `dim(Λ¹ ⊕ Λ³) − rank σ₂`.
    pub kernel_sigma2: usize,
}

impl SymbolReport {
    /// Injective first map, injective `ξ⌟` on top forms, vanishing composite,
    /// and kernel of the second map equal to the image of the first.
    pub fn exact(&self) -> bool {
        self.composite_is_zero && self.rank_sigma1 == 1 && self.rank_interior_top == 1 && self.kernel_sigma2 == self.rank_sigma1
    }
}

/// `σ(D₁)(ξ) = −i ξ∧` on Λ⁰.
pub fn sigma1(xi: &CliffordElement) -> Result<FormEndomorphism> {
    let minus_i = -Gaussian::i();
    FormEndomorphism::from_fn(3, &[0], &[1, 3], |x| Ok(wedge(xi, x)?.scale(minus_i)))
}

/// `σ(D₂)(ξ)(a, φ) = i ξ∧a − i ξ⌟φ` from Λ¹ ⊕ Λ³ to Λ².
pub fn sigma2(xi: &CliffordElement) -> Result<FormEndomorphism> {
    let i = Gaussian::i();
    FormEndomorphism::from_fn(3, &[1, 3], &[2], |x| {
        let one = wedge(xi, &x.grade_part(1))?.scale(i);
        let three = interior(xi, &x.grade_part(3))?.scale(-i);
        Ok(&one + &three)
    })
}

/// Checks the symbol sequence `Λ⁰ → Λ¹ ⊕ Λ³ → Λ²` at `ξ` in exact arithmetic.
pub fn symbol_exactness(xi: &[i64]) -> Result<SymbolReport> {
    if xi.len() != 3 {
        return Err(Error::DimensionMismatch { left: xi.len(), right: 3 });
    }
    if xi.iter().all(|&c| c == 0) {
        return Err(Error::ZeroCovector);
    }
    let coeffs: Vec<Gaussian> = xi.iter().map(|&c| Gaussian::from_int(c)).collect();
    let v = CliffordElement::vector(&coeffs);
    let s1 = sigma1(&v)?;
    let s2 = sigma2(&v)?;
    let composite = s2.compose(&s1);
    let top = FormEndomorphism::from_fn(3, &[3], &[2], |x| interior(&v, x))?;
    let rank_sigma2 = s2.rank();
    Ok(SymbolReport {
        xi: xi.iter().map(|c| c.to_string()).collect(),
        composite_is_zero: composite.is_zero(),
        rank_sigma1: s1.rank(),
        rank_sigma2,
        rank_interior_top: top.rank(),
        kernel_sigma2: 4 - rank_sigma2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coordinate_covector() {
        let r = symbol_exactness(&[1, 0, 0]).unwrap();
        assert!(r.composite_is_zero);
        assert_eq!((r.rank_sigma1, r.rank_sigma2, r.rank_interior_top, r.kernel_sigma2), (1, 3, 1, 1));
        assert!(r.exact());
    }

    #[test]
    fn zero_and_malformed_covectors() {
        assert!(matches!(symbol_exactness(&[0, 0, 0]), Err(Error::ZeroCovector)));
        assert!(matches!(symbol_exactness(&[1, 2]), Err(Error::DimensionMismatch { .. })));
    }
}
