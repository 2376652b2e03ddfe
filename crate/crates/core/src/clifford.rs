//! Exact Clifford and exterior algebra over R^n with Gaussian-rational
//! coefficients.
//!
//! Conventions:
//!
//! * Generators `e_0, ..., e_{n-1}` are orthonormal and square to `-1`
//!   (`v v = -|v|^2`). Left Clifford multiplication by a vector is then
//!   `v . x = v ^ x - v _| x`.
//! * `e_0` plays the role of the unit normal at the boundary; `e_1..e_{n-1}`
//!   are tangential.
//! * Basis blades are ordered by grade, then lexicographically by index list.
//!   Every [`FormEndomorphism`] matrix and CSV dump uses this order.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};

use crate::gaussian::{self, Gaussian};
use crate::{Error, Result};

/// Largest supported dimension; endomorphisms are dense `2^n x 2^n`.
pub const MAX_DIM: usize = 12;

/// A basis blade `e_I` encoded as a bit mask over `{0, .., n-1}`.
pub type Blade = u32;

pub fn grade_of(blade: Blade) -> usize {
    blade.count_ones() as usize
}

pub fn indices_of(blade: Blade) -> Vec<usize> {
    (0..32).filter(|i| blade & (1 << i) != 0).collect()
}

pub fn blade_label(blade: Blade) -> String {
    if blade == 0 {
        return "1".to_string();
    }
    let idx = indices_of(blade);
    if idx.iter().all(|&i| i < 10) {
        idx.iter().fold(String::from("e"), |mut s, i| {
            let _ = write!(s, "{i}");
            s
        })
    } else {
        let parts: Vec<String> = idx.iter().map(|i| i.to_string()).collect();
        format!("e{}", parts.join("."))
    }
}

/// Sign from reordering the juxtaposition `e_a e_b` into increasing order.
fn reorder_sign(a: Blade, b: Blade) -> i64 {
    let mut swaps = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        swaps += (a >> (j + 1)).count_ones();
        rest &= rest - 1;
    }
    if swaps.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// `(sign, blade)` of the Clifford product of two basis blades.
pub fn blade_product(a: Blade, b: Blade) -> (i64, Blade) {
    let mut sign = reorder_sign(a, b);
    // each repeated generator squares to -1
    if (a & b).count_ones() % 2 == 1 {
        sign = -sign;
    }
    (sign, a ^ b)
}

/// Basis blades of `Lambda^* R^n` in grade-then-lexicographic order.
pub fn graded_basis(n: usize) -> Vec<Blade> {
    let mut blades: Vec<Blade> = (0..(1u32 << n)).collect();
    blades.sort_by(|&a, &b| {
        grade_of(a)
            .cmp(&grade_of(b))
            .then_with(|| indices_of(a).cmp(&indices_of(b)))
    });
    blades
}

fn check_dim(n: usize) -> Result<()> {
    if n == 0 || n > MAX_DIM {
        return Err(Error::out_of_range("n", n as i64, format!("1..={MAX_DIM}")));
    }
    Ok(())
}

/// A multivector with exact coefficients. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct CliffordElement {
    dim: usize,
    terms: BTreeMap<Blade, Gaussian>,
}

impl std::fmt::Debug for CliffordElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{self}")
    }
}

impl std::fmt::Display for CliffordElement {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut blades: Vec<Blade> = self.terms.keys().copied().collect();
        blades.sort_by_key(|&b| (grade_of(b), indices_of(b)));
        let parts: Vec<String> = blades
            .iter()
            .map(|b| format!("({}){}", self.terms[b], blade_label(*b)))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl CliffordElement {
    pub fn zero(dim: usize) -> Self {
        Self {
            dim,
            terms: BTreeMap::new(),
        }
    }

    pub fn scalar(dim: usize, c: Gaussian) -> Self {
        Self::from_blade(dim, 0, c)
    }

    pub fn from_blade(dim: usize, blade: Blade, c: Gaussian) -> Self {
        debug_assert!(blade < (1u32 << dim));
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(blade, c);
        }
        Self { dim, terms }
    }

    /// `e_I` for a strictly increasing index list.
    pub fn basis(dim: usize, indices: &[usize]) -> Result<Self> {
        check_dim(dim)?;
        let mut blade = 0;
        for (pos, &i) in indices.iter().enumerate() {
            if i >= dim {
                return Err(Error::out_of_range("index", i as i64, format!("0..{dim}")));
            }
            if pos > 0 && indices[pos - 1] >= i {
                return Err(Error::out_of_range(
                    "index",
                    i as i64,
                    "strictly increasing multi-index",
                ));
            }
            blade |= 1 << i;
        }
        Ok(Self::from_blade(dim, blade, Gaussian::one()))
    }

    /// The grade-1 element `sum_i c_i e_i`.
    pub fn vector(coeffs: &[Gaussian]) -> Self {
        let dim = coeffs.len();
        let terms = coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (1u32 << i, *c))
            .collect();
        Self { dim, terms }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, blade: Blade) -> Gaussian {
        self.terms.get(&blade).copied().unwrap_or_else(Gaussian::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (Blade, Gaussian)> + '_ {
        self.terms.iter().map(|(b, c)| (*b, *c))
    }

    /// Distinct grades present, ascending.
    pub fn grades(&self) -> Vec<usize> {
        let mut g: Vec<usize> = self.terms.keys().map(|&b| grade_of(b)).collect();
        g.sort_unstable();
        g.dedup();
        g
    }

    pub fn grade_part(&self, k: usize) -> Self {
        Self {
            dim: self.dim,
            terms: self
                .terms
                .iter()
                .filter(|(b, _)| grade_of(**b) == k)
                .map(|(b, c)| (*b, *c))
                .collect(),
        }
    }

    pub fn scale(&self, c: Gaussian) -> Self {
        let mut out = Self::zero(self.dim);
        for (b, v) in self.terms() {
            out.accumulate(b, v * c);
        }
        out
    }

    fn accumulate(&mut self, blade: Blade, c: Gaussian) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(blade).or_insert_with(Gaussian::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&blade);
        }
    }

    /// Squared Euclidean norm of a grade-1 element.
    pub fn vector_norm_sqr(&self) -> Gaussian {
        self.terms().fold(Gaussian::zero(), |acc, (_, c)| acc + c * c)
    }

    fn require_covector(&self) -> Result<()> {
        let grades = self.grades();
        if grades.iter().any(|&g| g != 1) {
            return Err(Error::NotCovector { grades });
        }
        if self.is_zero() {
            return Err(Error::ZeroCovector);
        }
        Ok(())
    }
}

impl Add for &CliffordElement {
    type Output = CliffordElement;
    fn add(self, o: &CliffordElement) -> CliffordElement {
        assert_eq!(self.dim, o.dim, "dimension mismatch in addition");
        let mut out = self.clone();
        for (b, c) in o.terms() {
            out.accumulate(b, c);
        }
        out
    }
}

impl Sub for &CliffordElement {
    type Output = CliffordElement;
    fn sub(self, o: &CliffordElement) -> CliffordElement {
        self + &(-o)
    }
}

impl Neg for &CliffordElement {
    type Output = CliffordElement;
    fn neg(self) -> CliffordElement {
        self.scale(-Gaussian::one())
    }
}

fn same_dim(a: &CliffordElement, b: &CliffordElement) -> Result<()> {
    if a.dim != b.dim {
        return Err(Error::DimensionMismatch {
            left: a.dim,
            right: b.dim,
        });
    }
    Ok(())
}

/// Exterior product.
pub fn wedge(a: &CliffordElement, b: &CliffordElement) -> Result<CliffordElement> {
    same_dim(a, b)?;
    let mut out = CliffordElement::zero(a.dim);
    for (ba, ca) in a.terms() {
        for (bb, cb) in b.terms() {
            if ba & bb == 0 {
                let s = reorder_sign(ba, bb);
                out.accumulate(ba | bb, ca * cb * Gaussian::from_int(s));
            }
        }
    }
    Ok(out)
}

/// Clifford product with `e_i e_i = -1`.
pub fn clifford_product(a: &CliffordElement, b: &CliffordElement) -> Result<CliffordElement> {
    same_dim(a, b)?;
    let mut out = CliffordElement::zero(a.dim);
    for (ba, ca) in a.terms() {
        for (bb, cb) in b.terms() {
            let (s, blade) = blade_product(ba, bb);
            out.accumulate(blade, ca * cb * Gaussian::from_int(s));
        }
    }
    Ok(out)
}

/// Interior product `v _| a` of a grade-1 element `v` into `a`.
pub fn interior(v: &CliffordElement, a: &CliffordElement) -> Result<CliffordElement> {
    same_dim(v, a)?;
    if v.grades().iter().any(|&g| g != 1) {
        return Err(Error::NotCovector { grades: v.grades() });
    }
    let mut out = CliffordElement::zero(a.dim);
    for (bv, cv) in v.terms() {
        let i = bv.trailing_zeros();
        for (ba, ca) in a.terms() {
            if ba & bv != 0 {
                let position = (ba & ((1u32 << i) - 1)).count_ones();
                let s = if position.is_multiple_of(2) { 1 } else { -1 };
                out.accumulate(ba & !bv, cv * ca * Gaussian::from_int(s));
            }
        }
    }
    Ok(out)
}

/// Hodge star on a homogeneous element: `e_I ^ *e_I = e_0 ... e_{n-1}`.
pub fn hodge_star(a: &CliffordElement, n: usize) -> Result<CliffordElement> {
    if a.dim != n {
        return Err(Error::DimensionMismatch { left: a.dim, right: n });
    }
    let grades = a.grades();
    if grades.len() > 1 {
        return Err(Error::NotHomogeneous { grades });
    }
    Ok(hodge_star_unchecked(a))
}

fn hodge_star_unchecked(a: &CliffordElement) -> CliffordElement {
    let full: Blade = (1u32 << a.dim) - 1;
    let mut out = CliffordElement::zero(a.dim);
    for (b, c) in a.terms() {
        let comp = full & !b;
        out.accumulate(comp, c * Gaussian::from_int(reorder_sign(b, comp)));
    }
    out
}

/// The sign operator `tau = i^{k(k-1) + 2nk + [(n+1)/2]}` on `Lambda^k`.
///
/// For odd `n` this is `+-1` when `n = 3 mod 4` and `+-i` when `n = 1 mod 4`.
pub fn tau(k: usize, n: usize) -> Result<Gaussian> {
    check_dim(n)?;
    if k > n {
        return Err(Error::out_of_range("k", k as i64, format!("0..={n}")));
    }
    let (k, n) = (k as i64, n as i64);
    let value = Gaussian::i_pow(k * (k - 1) + 2 * n * k + (n + 1) / 2);
    // k(k-1) + 2nk is even, so tau is real exactly when [(n+1)/2] is even
    debug_assert_eq!(value.is_real(), ((n + 1) / 2) % 2 == 0);
    Ok(value)
}

/// `tau` applied grade by grade.
fn apply_tau(a: &CliffordElement) -> CliffordElement {
    let n = a.dim;
    let mut out = CliffordElement::zero(n);
    for (b, c) in a.terms() {
        let t = tau(grade_of(b), n).expect("grade within range");
        out.accumulate(b, c * t);
    }
    out
}

/// Normalized Clifford volume element `i^{[(n+1)/2]} e_0 e_1 ... e_{n-1}`.
pub fn volume_element(n: usize) -> Result<CliffordElement> {
    check_dim(n)?;
    let omega = CliffordElement::from_blade(
        n,
        (1u32 << n) - 1,
        Gaussian::i_pow(n.div_ceil(2) as i64),
    );
    let sq = clifford_product(&omega, &omega)?;
    assert_eq!(sq, CliffordElement::scalar(n, Gaussian::one()), "omega_C^2 != 1");
    Ok(omega)
}

fn odd_grades(n: usize) -> Vec<usize> {
    (0..=n).filter(|k| k % 2 == 1).collect()
}

/// A linear map on `Lambda^* R^n` stored as a dense matrix in the graded
/// basis order, with declared domain and codomain grades.
#[derive(Clone, PartialEq, Eq)]
pub struct FormEndomorphism {
    dim: usize,
    basis: Vec<Blade>,
    matrix: Vec<Vec<Gaussian>>,
    domain_grades: Vec<usize>,
    codomain_grades: Vec<usize>,
}

impl std::fmt::Debug for FormEndomorphism {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.to_csv())
    }
}

impl FormEndomorphism {
    /// Tabulates `f` on the basis blades of `domain_grades`. Fails if an image
    /// has components outside `codomain_grades`.
    pub fn from_fn<F>(
        dim: usize,
        domain_grades: &[usize],
        codomain_grades: &[usize],
        f: F,
    ) -> Result<Self>
    where
        F: Fn(&CliffordElement) -> Result<CliffordElement>,
    {
        check_dim(dim)?;
        let basis = graded_basis(dim);
        let size = basis.len();
        let position: BTreeMap<Blade, usize> =
            basis.iter().enumerate().map(|(i, &b)| (b, i)).collect();
        let mut matrix = vec![vec![Gaussian::zero(); size]; size];
        for (col, &b) in basis.iter().enumerate() {
            if !domain_grades.contains(&grade_of(b)) {
                continue;
            }
            let image = f(&CliffordElement::from_blade(dim, b, Gaussian::one()))?;
            for (ib, c) in image.terms() {
                if !codomain_grades.contains(&grade_of(ib)) {
                    return Err(Error::IdentityViolation {
                        basis: blade_label(b),
                        detail: format!(
                            "image component {} outside codomain grades {:?}",
                            blade_label(ib),
                            codomain_grades
                        ),
                    });
                }
                matrix[position[&ib]][col] = c;
            }
        }
        Ok(Self {
            dim,
            basis,
            matrix,
            domain_grades: domain_grades.to_vec(),
            codomain_grades: codomain_grades.to_vec(),
        })
    }

    pub fn identity(dim: usize, grades: &[usize]) -> Result<Self> {
        Self::from_fn(dim, grades, grades, |x| Ok(x.clone()))
    }

    /// Left Clifford multiplication by `elem`, restricted to `grades`.
    pub fn left_multiplication(
        elem: &CliffordElement,
        domain_grades: &[usize],
        codomain_grades: &[usize],
    ) -> Result<Self> {
        Self::from_fn(elem.dim, domain_grades, codomain_grades, |x| {
            clifford_product(elem, x)
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn domain_grades(&self) -> &[usize] {
        &self.domain_grades
    }

    pub fn codomain_grades(&self) -> &[usize] {
        &self.codomain_grades
    }

    pub fn entry(&self, row: Blade, col: Blade) -> Gaussian {
        let r = self.basis.iter().position(|&b| b == row).expect("row blade");
        let c = self.basis.iter().position(|&b| b == col).expect("col blade");
        self.matrix[r][c]
    }

    pub fn apply(&self, x: &CliffordElement) -> CliffordElement {
        assert_eq!(x.dim, self.dim);
        let mut out = CliffordElement::zero(self.dim);
        for (col, &b) in self.basis.iter().enumerate() {
            let c = x.coefficient(b);
            if c.is_zero() || !self.domain_grades.contains(&grade_of(b)) {
                continue;
            }
            for (row, &rb) in self.basis.iter().enumerate() {
                out.accumulate(rb, self.matrix[row][col] * c);
            }
        }
        out
    }

    /// `self o other`.
    pub fn compose(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let size = self.basis.len();
        let mut matrix = vec![vec![Gaussian::zero(); size]; size];
        for (i, row) in matrix.iter_mut().enumerate() {
            for (j, out) in row.iter_mut().enumerate() {
                let mut acc = Gaussian::zero();
                for k in 0..size {
                    let a = self.matrix[i][k];
                    if !a.is_zero() {
                        acc += a * other.matrix[k][j];
                    }
                }
                *out = acc;
            }
        }
        Self {
            dim: self.dim,
            basis: self.basis.clone(),
            matrix,
            domain_grades: other.domain_grades.clone(),
            codomain_grades: self.codomain_grades.clone(),
        }
    }

    pub fn plus(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a + b)
    }

    pub fn minus(&self, other: &Self) -> Self {
        self.zip(other, |a, b| a - b)
    }

    fn zip(&self, other: &Self, f: impl Fn(Gaussian, Gaussian) -> Gaussian) -> Self {
        assert_eq!(self.dim, other.dim);
        let matrix = self
            .matrix
            .iter()
            .zip(&other.matrix)
            .map(|(r1, r2)| r1.iter().zip(r2).map(|(a, b)| f(*a, *b)).collect())
            .collect();
        let union = |a: &[usize], b: &[usize]| {
            let mut g: Vec<usize> = a.iter().chain(b).copied().collect();
            g.sort_unstable();
            g.dedup();
            g
        };
        Self {
            dim: self.dim,
            basis: self.basis.clone(),
            matrix,
            domain_grades: union(&self.domain_grades, &other.domain_grades),
            codomain_grades: union(&self.codomain_grades, &other.codomain_grades),
        }
    }

    pub fn scale(&self, c: Gaussian) -> Self {
        let mut out = self.clone();
        out.matrix
            .iter_mut()
            .flatten()
            .for_each(|v| *v = *v * c);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.iter().flatten().all(|v| v.is_zero())
    }

    fn rows_of(&self, grades: &[usize]) -> Vec<usize> {
        (0..self.basis.len())
            .filter(|&i| grades.contains(&grade_of(self.basis[i])))
            .collect()
    }

    /// The `codomain x domain` block as a dense matrix.
    pub fn block(&self) -> Vec<Vec<Gaussian>> {
        let rows = self.rows_of(&self.codomain_grades);
        let cols = self.rows_of(&self.domain_grades);
        rows.iter()
            .map(|&r| cols.iter().map(|&c| self.matrix[r][c]).collect())
            .collect()
    }

    pub fn rank(&self) -> usize {
        gaussian::rank(&self.block())
    }

    /// Row-major CSV of the declared block; the header row carries the
    /// domain blade labels and each row starts with its codomain label.
    pub fn to_csv(&self) -> String {
        let rows = self.rows_of(&self.codomain_grades);
        let cols = self.rows_of(&self.domain_grades);
        let mut out = String::from("row");
        for &c in &cols {
            let _ = write!(out, ",{}", blade_label(self.basis[c]));
        }
        out.push('\n');
        for &r in &rows {
            out.push_str(&blade_label(self.basis[r]));
            for &c in &cols {
                let _ = write!(out, ",{}", self.matrix[r][c]);
            }
            out.push('\n');
        }
        out
    }
}

/// Clifford symbol of the odd signature operator, `*tau(xi ^ . - xi _| .)`,
/// on odd forms. Cross-checked against left multiplication by `omega_C xi`.
pub fn odd_signature_symbol(xi: &CliffordElement, n: usize) -> Result<FormEndomorphism> {
    if xi.dim != n {
        return Err(Error::DimensionMismatch { left: xi.dim, right: n });
    }
    xi.require_covector()?;
    let odd = odd_grades(n);
    let via_star = FormEndomorphism::from_fn(n, &odd, &odd, |x| {
        let y = &wedge(xi, x)? - &interior(xi, x)?;
        let mut out = CliffordElement::zero(n);
        for k in y.grades() {
            out = &out + &hodge_star_unchecked(&apply_tau(&y.grade_part(k)));
        }
        Ok(out)
    })?;
    let omega_xi = clifford_product(&volume_element(n)?, xi)?;
    let via_volume = FormEndomorphism::left_multiplication(&omega_xi, &odd, &odd)?;
    if via_star != via_volume {
        return Err(Error::IdentityViolation {
            basis: format!("xi = {xi}"),
            detail: "*tau(xi^ - xi_|) differs from omega_C xi".into(),
        });
    }
    Ok(via_star)
}

/// Induced boundary Clifford action `cl_d(e_j) = -e_j e_0 .` on odd forms.
pub fn induced_boundary_action(j: usize, n: usize) -> Result<FormEndomorphism> {
    check_dim(n)?;
    if n < 2 || j == 0 || j >= n {
        return Err(Error::out_of_range("j", j as i64, format!("1..={}", n.saturating_sub(1))));
    }
    let ej0 = CliffordElement::from_blade(n, (1 << j) | 1, Gaussian::one());
    // e_j e_0 = -e_0 e_j = -e_{0j}
    let minus_ej_e0 = clifford_product(
        &CliffordElement::from_blade(n, 1 << j, -Gaussian::one()),
        &CliffordElement::from_blade(n, 1, Gaussian::one()),
    )?;
    debug_assert_eq!(minus_ej_e0, ej0);
    let odd = odd_grades(n);
    FormEndomorphism::left_multiplication(&minus_ej_e0, &odd, &odd)
}

/// The identification `Lambda^odd R^n ~ Lambda^* R^{n-1}` at the boundary:
/// `e_0 e_I <-> e_I` for `|I|` even and `e_J <-> e_J` for `|J|` odd, with
/// tangential indices `1..n-1` relabelled to `0..n-2`.
pub struct BoundaryIdentification {
    n: usize,
}

impl BoundaryIdentification {
    pub fn new(n: usize) -> Result<Self> {
        check_dim(n)?;
        if n < 2 {
            return Err(Error::out_of_range("n", n as i64, format!("2..={MAX_DIM}")));
        }
        Ok(Self { n })
    }

    pub fn boundary_dim(&self) -> usize {
        self.n - 1
    }

    /// Boundary blade for an odd blade of `R^n`.
    pub fn to_boundary_blade(&self, blade: Blade) -> Blade {
        debug_assert!(grade_of(blade) % 2 == 1);
        blade >> 1
    }

    pub fn from_boundary_blade(&self, blade: Blade) -> Blade {
        if grade_of(blade).is_multiple_of(2) {
            (blade << 1) | 1
        } else {
            blade << 1
        }
    }

    /// Transports an endomorphism of `Lambda^odd R^n` to `Lambda^* R^{n-1}`.
    pub fn transport(&self, endo: &FormEndomorphism) -> Result<FormEndomorphism> {
        let m = self.boundary_dim();
        let all: Vec<usize> = (0..=m).collect();
        FormEndomorphism::from_fn(m, &all, &all, |x| {
            let mut lifted = CliffordElement::zero(self.n);
            for (b, c) in x.terms() {
                lifted.accumulate(self.from_boundary_blade(b), c);
            }
            let image = endo.apply(&lifted);
            let mut out = CliffordElement::zero(m);
            for (b, c) in image.terms() {
                if grade_of(b).is_multiple_of(2) {
                    return Err(Error::IdentityViolation {
                        basis: blade_label(b),
                        detail: "image leaves the odd forms".into(),
                    });
                }
                out.accumulate(self.to_boundary_blade(b), c);
            }
            Ok(out)
        })
    }
}

/// Left Clifford multiplication by `e_j` on all of `Lambda^* R^m`, i.e. the
/// standard action `e_j ^ . - e_j _| .` on forms.
pub fn boundary_clifford_action(j: usize, m: usize) -> Result<FormEndomorphism> {
    check_dim(m)?;
    if j >= m {
        return Err(Error::out_of_range("j", j as i64, format!("0..{m}")));
    }
    let e = CliffordElement::from_blade(m, 1 << j, Gaussian::one());
    let all: Vec<usize> = (0..=m).collect();
    FormEndomorphism::from_fn(m, &all, &all, |x| Ok(&wedge(&e, x)? - &interior(&e, x)?))
}

/// The zeroth-order term of the induced boundary operator: `k` on odd
/// `Lambda^k`, `m - k` on even `Lambda^k`.
pub fn n_operator(k: usize, m: usize) -> Result<usize> {
    if k > m {
        return Err(Error::out_of_range("k", k as i64, format!("0..={m}")));
    }
    Ok(if k % 2 == 1 { k } else { m - k })
}

/// The derivation of `Lambda^* R^n` induced by the rotation generator in the
/// `(e_0, e_i)` plane, acting on covectors by `e_i -> -e_0`, `e_0 -> e_i`.
pub fn connection_generator(i: usize, n: usize) -> Result<FormEndomorphism> {
    check_dim(n)?;
    if i == 0 || i >= n {
        return Err(Error::out_of_range("i", i as i64, format!("1..={}", n - 1)));
    }
    let on_vector = |k: usize| -> CliffordElement {
        if k == i {
            CliffordElement::from_blade(n, 1, -Gaussian::one())
        } else if k == 0 {
            CliffordElement::from_blade(n, 1 << i, Gaussian::one())
        } else {
            CliffordElement::zero(n)
        }
    };
    let all: Vec<usize> = (0..=n).collect();
    FormEndomorphism::from_fn(n, &all, &all, |x| {
        let mut out = CliffordElement::zero(n);
        for (b, c) in x.terms() {
            let idx = indices_of(b);
            for p in 0..idx.len() {
                let mut term = CliffordElement::scalar(n, c);
                for (q, &k) in idx.iter().enumerate() {
                    let factor = if q == p {
                        on_vector(k)
                    } else {
                        CliffordElement::from_blade(n, 1 << k, Gaussian::one())
                    };
                    term = wedge(&term, &factor)?;
                }
                out = &out + &term;
            }
        }
        Ok(out)
    })
}

#[derive(Debug, Clone)]
pub struct CorrectionRow {
    /// Odd blade of `R^n`.
    pub blade: String,
    /// The corresponding boundary form.
    pub boundary_blade: String,
    pub boundary_degree: usize,
    /// Diagonal coefficient of `sum_i cl_d(e_i) E_0i`.
    pub computed: Gaussian,
    pub expected: i64,
    pub off_diagonal_zero: bool,
}

impl CorrectionRow {
    pub fn passed(&self) -> bool {
        self.off_diagonal_zero && self.computed == Gaussian::from_int(self.expected)
    }
}

#[derive(Debug, Clone)]
pub struct CorrectionReport {
    pub n: usize,
    pub rows: Vec<CorrectionRow>,
}

impl CorrectionReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(CorrectionRow::passed)
    }

    /// The first failing basis element, as an error.
    pub fn ensure(&self) -> Result<()> {
        match self.rows.iter().find(|r| !r.passed()) {
            None => Ok(()),
            Some(r) => Err(Error::IdentityViolation {
                basis: r.blade.clone(),
                detail: format!("got {} expected {}", r.computed, r.expected),
            }),
        }
    }
}

/// Assembles `sum_i cl_d(e_i) o E_0i` on `Lambda^odd R^n` and compares it with
/// `-N` on the boundary forms.
pub fn verify_connection_correction(n: usize) -> Result<CorrectionReport> {
    check_dim(n)?;
    if n.is_multiple_of(2) {
        return Err(Error::EvenDimension(n));
    }
    let odd = odd_grades(n);
    let mut total = FormEndomorphism::from_fn(n, &odd, &odd, |_| Ok(CliffordElement::zero(n)))?;
    for i in 1..n {
        let term = induced_boundary_action(i, n)?.compose(&connection_generator(i, n)?);
        total = total.plus(&term);
    }
    let ident = BoundaryIdentification::new(n)?;
    let boundary = ident.transport(&total)?;
    let m = n - 1;
    let mut rows = Vec::new();
    for b in graded_basis(n).into_iter().filter(|b| grade_of(*b) % 2 == 1) {
        let bb = ident.to_boundary_blade(b);
        let image = boundary.apply(&CliffordElement::from_blade(m, bb, Gaussian::one()));
        let degree = grade_of(bb);
        rows.push(CorrectionRow {
            blade: blade_label(b),
            boundary_blade: blade_label(bb),
            boundary_degree: degree,
            computed: image.coefficient(bb),
            expected: -(n_operator(degree, m)? as i64),
            off_diagonal_zero: image.terms().all(|(ib, _)| ib == bb),
        });
    }
    Ok(CorrectionReport { n, rows })
}

#[derive(Debug, Clone)]
pub struct IdentityCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl IdentityCheck {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            passed,
            detail: detail.into(),
        }
    }
}

/// Checks `cl(xi) cl(eta) + cl(eta) cl(xi) = -2 <xi, eta>` for the odd
/// signature symbol.
pub fn check_anticommutation(xi: &CliffordElement, eta: &CliffordElement) -> Result<bool> {
    let n = xi.dim;
    let a = odd_signature_symbol(xi, n)?;
    let b = odd_signature_symbol(eta, n)?;
    let inner = xi
        .terms()
        .fold(Gaussian::zero(), |acc, (bl, c)| acc + c * eta.coefficient(bl));
    let odd = odd_grades(n);
    let rhs = FormEndomorphism::identity(n, &odd)?.scale(Gaussian::from_int(-2) * inner);
    Ok(a.compose(&b).plus(&b.compose(&a)) == rhs)
}

/// The algebraic identities behind the boundary reduction of the odd
/// signature operator, checked exactly for odd `n`.
pub fn identity_suite(n: usize) -> Result<Vec<IdentityCheck>> {
    check_dim(n)?;
    if n.is_multiple_of(2) {
        return Err(Error::EvenDimension(n));
    }
    let m = n - 1;
    let odd = odd_grades(n);
    let all: Vec<usize> = (0..=n).collect();
    let one = Gaussian::one();
    let mut checks = Vec::new();

    let omega = volume_element(n)?;
    let sq = clifford_product(&omega, &omega)?;
    checks.push(IdentityCheck::new(
        "omega_C^2 = 1",
        sq == CliffordElement::scalar(n, one),
        format!("omega_C = {omega}, omega_C^2 = {sq}"),
    ));

    let taus: Vec<Gaussian> = (0..=n).map(|k| tau(k, n)).collect::<Result<_>>()?;
    let expect_real = n % 4 == 3;
    checks.push(IdentityCheck::new(
        if expect_real { "tau = +-1 on every grade" } else { "tau = +-i on every grade" },
        taus.iter().all(|t| {
            let unit = *t == one || *t == -one || *t == Gaussian::i() || *t == -Gaussian::i();
            unit && t.is_real() == expect_real
        }),
        format!("{taus:?}"),
    ));

    let star_tau = FormEndomorphism::from_fn(n, &all, &all, |x| {
        Ok(hodge_star_unchecked(&apply_tau(x)))
    })?;
    let omega_left = FormEndomorphism::left_multiplication(&omega, &all, &all)?;
    checks.push(IdentityCheck::new(
        "omega_C . = * tau .",
        star_tau == omega_left,
        "all basis forms",
    ));

    let mut dual_ok = true;
    let mut square_ok = true;
    for i in 0..n {
        let e = CliffordElement::from_blade(n, 1 << i, one);
        match odd_signature_symbol(&e, n) {
            Ok(cl) => {
                let id = FormEndomorphism::identity(n, &odd)?;
                square_ok &= cl.compose(&cl) == id.scale(-one);
            }
            Err(_) => dual_ok = false,
        }
    }
    checks.push(IdentityCheck::new(
        "cl_odd(e) = *tau(e^ - e_|) = omega_C e",
        dual_ok,
        "basis covectors",
    ));
    checks.push(IdentityCheck::new("cl_odd(e)^2 = -1", square_ok, "basis covectors"));

    let mut anti_ok = true;
    for i in 0..n {
        for j in 0..n {
            let a = CliffordElement::from_blade(n, 1 << i, one);
            let b = CliffordElement::from_blade(n, 1 << j, one);
            anti_ok &= check_anticommutation(&a, &b)?;
        }
    }
    checks.push(IdentityCheck::new(
        "cl_odd anticommutation",
        anti_ok,
        "basis covector pairs",
    ));

    // i cl_odd(e_0) transported to the boundary is omega_C of the boundary
    let ident = BoundaryIdentification::new(n)?;
    let e0 = CliffordElement::from_blade(n, 1, one);
    let grading = ident.transport(&odd_signature_symbol(&e0, n)?.scale(Gaussian::i()))?;
    let boundary_all: Vec<usize> = (0..=m).collect();
    let boundary_omega =
        FormEndomorphism::left_multiplication(&volume_element(m)?, &boundary_all, &boundary_all)?;
    let id_m = FormEndomorphism::identity(m, &boundary_all)?;
    let half = Gaussian::ratio(1, 2);
    let plus_rank = id_m.plus(&grading).scale(half).rank();
    let minus_rank = id_m.minus(&grading).scale(half).rank();
    let half_dim = 1usize << (m - 1);
    checks.push(IdentityCheck::new(
        "i cl_odd(e_0) = boundary signature grading",
        grading == boundary_omega && plus_rank == half_dim && minus_rank == half_dim,
        format!("ranks of +-1 eigenprojections: {plus_rank}, {minus_rank} (expected {half_dim})"),
    ));

    let mut rules_ok = true;
    let mut standard_ok = true;
    let mut square_boundary_ok = true;
    for j in 1..n {
        let cl = induced_boundary_action(j, n)?;
        let ej = CliffordElement::from_blade(n, 1 << j, one);
        for b in graded_basis(n) {
            if b & 1 == 1 && grade_of(b) % 2 == 1 {
                // e_0 e_I -> e_j e_I
                let e_i = CliffordElement::from_blade(n, b & !1, one);
                let x = CliffordElement::from_blade(n, b, one);
                rules_ok &= cl.apply(&x) == clifford_product(&ej, &e_i)?;
            } else if b & 1 == 0 && grade_of(b) % 2 == 1 {
                // e_J -> e_0 (e_j e_J)
                let x = CliffordElement::from_blade(n, b, one);
                rules_ok &= cl.apply(&x) == clifford_product(&e0, &clifford_product(&ej, &x)?)?;
            }
        }
        standard_ok &= ident.transport(&cl)? == boundary_clifford_action(j - 1, m)?;
        square_boundary_ok &= cl.compose(&cl) == FormEndomorphism::identity(n, &odd)?.scale(-one);
    }
    checks.push(IdentityCheck::new(
        "cl_d(e_j) e_0 e_I = e_j e_I, cl_d(e_j) e_J = e_0 (e_j e_J)",
        rules_ok,
        "all odd basis forms",
    ));
    checks.push(IdentityCheck::new(
        "cl_d(e_j) = standard Clifford action on boundary forms",
        standard_ok,
        format!("all {} boundary basis forms", 1usize << m),
    ));
    checks.push(IdentityCheck::new("cl_d(e_j)^2 = -1", square_boundary_ok, ""));

    let report = verify_connection_correction(n)?;
    let detail = match report.ensure() {
        Ok(()) => format!("{} odd basis forms", report.rows.len()),
        Err(e) => e.to_string(),
    };
    checks.push(IdentityCheck::new(
        "sum_i cl_d(e_i) E_0i = -N",
        report.passed(),
        detail,
    ));
    Ok(checks)
}
