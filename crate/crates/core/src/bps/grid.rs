//! Uniform grids on `[−R, R]³` and su(2)-valued lattice fields.
//!
//! Every centered difference invalidates one more layer of sites next to the
//! faces. Fields carry that `margin`, and norms only look at valid sites.

use super::su2::{self, Su, ZERO};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid {
    pub n: usize,
    pub half_width: f64,
}

impl Grid {
    pub fn new(half_width: f64, n: usize) -> Result<Self> {
        if !(half_width > 0.0 && half_width.is_finite()) {
            return Err(Error::out_of_range("R", half_width, "(0, inf)"));
        }
        if n < 3 {
            return Err(Error::GridTooCoarse(format!("{n} points per axis")));
        }
        Ok(Self { n, half_width })
    }

    pub fn h(&self) -> f64 {
        2.0 * self.half_width / (self.n - 1) as f64
    }

    pub fn len(&self) -> usize {
        self.n * self.n * self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn index(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.n + j) * self.n + k
    }

    #[inline]
    pub fn ijk(&self, site: usize) -> [usize; 3] {
        let n = self.n;
        [site / (n * n), (site / n) % n, site % n]
    }

    /// Offset between neighbours along `axis`.
    #[inline]
    pub fn stride(&self, axis: usize) -> usize {
        [self.n * self.n, self.n, 1][axis]
    }

    #[inline]
    pub fn coord(&self, i: usize) -> f64 {
        -self.half_width + i as f64 * self.h()
    }

    #[inline]
    pub fn point(&self, site: usize) -> [f64; 3] {
        let [i, j, k] = self.ijk(site);
        [self.coord(i), self.coord(j), self.coord(k)]
    }

    /// Whether all indices of `site` are at least `margin` away from a face.
    #[inline]
    pub fn inside(&self, site: usize, margin: usize) -> bool {
        self.ijk(site).iter().all(|&i| i >= margin && i + margin < self.n)
    }

    pub fn same_as(&self, other: &Grid) -> Result<()> {
        if self != other {
            return Err(Error::GridMismatch(format!(
                "{}^3 on [-{}, {}] vs {}^3 on [-{}, {}]",
                self.n, self.half_width, self.half_width, other.n, other.half_width, other.half_width
            )));
        }
        Ok(())
    }
}

/// `comps` su(2) values per site.
#[derive(Clone, Debug, PartialEq)]
pub struct Field {
    grid: Grid,
    comps: usize,
    margin: usize,
    data: Vec<Su>,
}

impl Field {
    pub fn zeros(grid: Grid, comps: usize) -> Self {
        Self { grid, comps, margin: 0, data: vec![ZERO; grid.len() * comps] }
    }

    /// Samples `f(x, component)` at every site.
    pub fn from_fn(grid: Grid, comps: usize, f: impl Fn([f64; 3], usize) -> Su) -> Self {
        let mut out = Self::zeros(grid, comps);
        for site in 0..grid.len() {
            let x = grid.point(site);
            for c in 0..comps {
                out.data[site * comps + c] = f(x, c);
            }
        }
        out
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn comps(&self) -> usize {
        self.comps
    }

    pub fn margin(&self) -> usize {
        self.margin
    }

    pub fn with_margin(mut self, margin: usize) -> Self {
        self.margin = margin;
        self
    }

    #[inline]
    pub fn get(&self, site: usize, c: usize) -> Su {
        self.data[site * self.comps + c]
    }

    #[inline]
    pub fn set(&mut self, site: usize, c: usize, v: Su) {
        self.data[site * self.comps + c] = v;
    }

    /// Builds a field of the same grid from a per-site rule.
    pub fn generate(grid: Grid, comps: usize, margin: usize, f: impl Fn(usize, usize) -> Su) -> Self {
        let mut out = Self::zeros(grid, comps);
        out.margin = margin;
        for site in 0..grid.len() {
            if grid.inside(site, margin) {
                for c in 0..comps {
                    out.data[site * comps + c] = f(site, c);
                }
            }
        }
        out
    }

    pub fn component(&self, c: usize) -> Field {
        Field::generate(self.grid, 1, self.margin, |s, _| self.get(s, c))
    }

    pub fn zip(&self, other: &Field, f: impl Fn(Su, Su) -> Su) -> Result<Field> {
        self.grid.same_as(&other.grid)?;
        if self.comps != other.comps {
            return Err(Error::GridMismatch(format!("{} vs {} components", self.comps, other.comps)));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f(*a, *b)).collect();
        Ok(Field { grid: self.grid, comps: self.comps, margin: self.margin.max(other.margin), data })
    }

    pub fn plus(&self, other: &Field) -> Result<Field> {
        self.zip(other, su2::add)
    }

    pub fn minus(&self, other: &Field) -> Result<Field> {
        self.zip(other, su2::sub)
    }

    pub fn scaled(&self, s: f64) -> Field {
        Field::generate(self.grid, self.comps, self.margin, |site, c| su2::scale(s, self.get(site, c)))
    }

    /// Centered difference of component `c` along `axis`.
    pub fn partial(&self, c: usize, axis: usize) -> Field {
        let g = self.grid;
        let stride = g.stride(axis);
        let inv = 1.0 / (2.0 * g.h());
        Field::generate(g, 1, self.margin + 1, |s, _| su2::scale(inv, su2::sub(self.get(s + stride, c), self.get(s - stride, c))))
    }

    /// Compact second difference of component `c` along `axis`.
    pub fn second_partial(&self, c: usize, axis: usize) -> Field {
        let g = self.grid;
        let stride = g.stride(axis);
        let inv = 1.0 / (g.h() * g.h());
        Field::generate(g, 1, self.margin + 1, |s, _| {
            let v = su2::add(self.get(s + stride, c), self.get(s - stride, c));
            su2::scale(inv, su2::sub(v, su2::scale(2.0, self.get(s, c))))
        })
    }

    /// Max over valid sites of the Euclidean norm of all components together.
    pub fn max_norm(&self) -> Result<f64> {
        let g = self.grid;
        if g.n < 2 * self.margin + 3 {
            return Err(Error::GridTooCoarse(format!(
                "{} points per axis leave fewer than 3 valid after {} layers",
                g.n, self.margin
            )));
        }
        let mut best = 0.0f64;
        for site in 0..g.len() {
            if g.inside(site, self.margin) {
                let sq: f64 = (0..self.comps).map(|c| su2::dot(self.get(site, c), self.get(site, c))).sum();
                best = best.max(sq.sqrt());
            }
        }
        Ok(best)
    }

    /// Discrete L² pairing `h³ Σ ⟨u, v⟩` over sites valid for both fields.
    pub fn inner(&self, other: &Field) -> Result<f64> {
        self.grid.same_as(&other.grid)?;
        if self.comps != other.comps {
            return Err(Error::GridMismatch(format!("{} vs {} components", self.comps, other.comps)));
        }
        let margin = self.margin.max(other.margin);
        let mut total = 0.0;
        for site in (0..self.grid.len()).filter(|&s| self.grid.inside(s, margin)) {
            for c in 0..self.comps {
                total += su2::dot(self.get(site, c), other.get(site, c));
            }
        }
        Ok(total * self.grid.h().powi(3))
    }

    /// Copy with components of `other` appended after this field's.
    pub fn stack(&self, other: &Field) -> Result<Field> {
        self.grid.same_as(&other.grid)?;
        let comps = self.comps + other.comps;
        let margin = self.margin.max(other.margin);
        Ok(Field::generate(self.grid, comps, margin, |s, c| {
            if c < self.comps {
                self.get(s, c)
            } else {
                other.get(s, c - self.comps)
            }
        }))
    }
}
