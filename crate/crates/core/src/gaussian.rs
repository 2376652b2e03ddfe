//! Exact Gaussian rationals `p + q i` with `p, q` in Q.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub};

use num_rational::Rational64;
use num_traits::{One, Signed, Zero};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Gaussian {
    pub re: Rational64,
    pub im: Rational64,
}

impl Gaussian {
    pub fn new(re: Rational64, im: Rational64) -> Self {
        Self { re, im }
    }

    pub fn from_int(n: i64) -> Self {
        Self::new(Rational64::from_integer(n), Rational64::zero())
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Self::new(Rational64::new(num, den), Rational64::zero())
    }

    pub fn i() -> Self {
        Self::new(Rational64::zero(), Rational64::one())
    }

    /// `i^k` for any integer `k`.
    pub fn i_pow(k: i64) -> Self {
        match k.rem_euclid(4) {
            0 => Self::one(),
            1 => Self::i(),
            2 => -Self::one(),
            _ => -Self::i(),
        }
    }

    pub fn conj(self) -> Self {
        Self::new(self.re, -self.im)
    }

    pub fn norm_sqr(self) -> Rational64 {
        self.re * self.re + self.im * self.im
    }

    pub fn is_real(self) -> bool {
        self.im.is_zero()
    }

    pub fn to_f64_pair(self) -> (f64, f64) {
        let f = |r: Rational64| *r.numer() as f64 / *r.denom() as f64;
        (f(self.re), f(self.im))
    }
}

impl Zero for Gaussian {
    fn zero() -> Self {
        Self::new(Rational64::zero(), Rational64::zero())
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
}

impl One for Gaussian {
    fn one() -> Self {
        Self::from_int(1)
    }
}

impl Add for Gaussian {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.re + o.re, self.im + o.im)
    }
}

impl AddAssign for Gaussian {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl Sub for Gaussian {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.re - o.re, self.im - o.im)
    }
}

impl Neg for Gaussian {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.re, -self.im)
    }
}

impl Mul for Gaussian {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Self::new(
            self.re * o.re - self.im * o.im,
            self.re * o.im + self.im * o.re,
        )
    }
}

impl Div for Gaussian {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        let d = o.norm_sqr();
        assert!(!d.is_zero(), "division by zero Gaussian rational");
        let n = self * o.conj();
        Self::new(n.re / d, n.im / d)
    }
}

impl fmt::Debug for Gaussian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Gaussian {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", self.re),
            (true, false) if self.im == Rational64::one() => write!(f, "i"),
            (true, false) if self.im == -Rational64::one() => write!(f, "-i"),
            (true, false) => write!(f, "{}i", self.im),
            (false, false) => {
                let sign = if self.im.is_negative() { '-' } else { '+' };
                write!(f, "{}{}{}i", self.re, sign, self.im.abs())
            }
        }
    }
}

/// Exact rank of a dense matrix by Gaussian elimination over Q(i).
pub fn rank(rows: &[Vec<Gaussian>]) -> usize {
    let mut m: Vec<Vec<Gaussian>> = rows.to_vec();
    let nrows = m.len();
    if nrows == 0 {
        return 0;
    }
    let ncols = m[0].len();
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..nrows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let p = m[rank][col];
        for r in 0..nrows {
            if r != rank && !m[r][col].is_zero() {
                let factor = m[r][col] / p;
                for c in col..ncols {
                    let sub = factor * m[rank][c];
                    m[r][c] = m[r][c] - sub;
                }
            }
        }
        rank += 1;
        if rank == nrows {
            break;
        }
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn i_squared_is_minus_one() {
        assert_eq!(Gaussian::i() * Gaussian::i(), -Gaussian::one());
        assert_eq!(Gaussian::i_pow(7), -Gaussian::i());
        assert_eq!(Gaussian::i_pow(-1), -Gaussian::i());
    }

    #[test]
    fn division_inverts_multiplication() {
        let a = Gaussian::new(Rational64::new(3, 2), Rational64::new(-1, 5));
        let b = Gaussian::new(Rational64::new(-2, 7), Rational64::new(4, 3));
        assert_eq!((a * b) / b, a);
    }

    #[test]
    fn rank_of_small_matrices() {
        let g = Gaussian::from_int;
        assert_eq!(rank(&[vec![g(1), g(2)], vec![g(2), g(4)]]), 1);
        assert_eq!(rank(&[vec![g(1), g(0)], vec![g(0), Gaussian::i()]]), 2);
        assert_eq!(rank(&[vec![g(0), g(0)]]), 0);
    }

    #[test]
    fn display() {
        assert_eq!(Gaussian::new(Rational64::new(1, 2), Rational64::from_integer(-3)).to_string(), "1/2-3i");
        assert_eq!(Gaussian::i().to_string(), "i");
        assert_eq!(Gaussian::from_int(-2).to_string(), "-2");
    }
}
