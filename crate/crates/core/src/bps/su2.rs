//! The Lie algebra su(2) in the basis `T_a = −(i/2) σ_a`.
//!
//! With this basis `[T_a, T_b] = ε_abc T_c`, so the bracket is the cross
//! product of coefficient vectors, and `−2 tr(XY)` is the Euclidean dot
//! product. `ad(Φ)` has eigenvalues `0, ±i|Φ|`.

pub type Su = [f64; 3];

pub const ZERO: Su = [0.0; 3];

#[inline]
pub fn bracket(u: Su, v: Su) -> Su {
    [u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]]
}

#[inline]
pub fn dot(u: Su, v: Su) -> f64 {
    u[0] * v[0] + u[1] * v[1] + u[2] * v[2]
}

#[inline]
pub fn norm(u: Su) -> f64 {
    dot(u, u).sqrt()
}

#[inline]
pub fn add(u: Su, v: Su) -> Su {
    [u[0] + v[0], u[1] + v[1], u[2] + v[2]]
}

#[inline]
pub fn sub(u: Su, v: Su) -> Su {
    [u[0] - v[0], u[1] - v[1], u[2] - v[2]]
}

#[inline]
pub fn scale(s: f64, u: Su) -> Su {
    [s * u[0], s * u[1], s * u[2]]
}
