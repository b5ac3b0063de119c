//! Integer helpers for exponent arithmetic on roots of unity.
//!
//! Fractional exponents such as `1/(8uM)` modulo `N` are evaluated as modular
//! inverses; every exponent is reduced modulo the root order before it reaches
//! floating point, so phases stay exact for `MN` in the thousands.

use num_complex::Complex64;
use std::f64::consts::TAU;

pub fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Extended Euclid: returns `(g, x, y)` with `a*x + b*y = g`.
pub fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
        (g, y, x - a.div_euclid(b) * y)
    }
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn mod_inv(a: i64, m: i64) -> Option<i64> {
    if m == 1 {
        return Some(0);
    }
    let (g, x, _) = ext_gcd(a.rem_euclid(m), m);
    if g != 1 {
        return None;
    }
    Some(x.rem_euclid(m))
}

/// `xi_order^exponent` with `xi_order = exp(+j 2 pi / order)`.
#[inline]
pub fn root(order: i64, exponent: i64) -> Complex64 {
    let e = exponent.rem_euclid(order);
    Complex64::from_polar(1.0, TAU * e as f64 / order as f64)
}

/// Lookup table of the powers of `exp(+j 2 pi / order)`.
#[derive(Debug, Clone)]
pub struct RootTable {
    order: i64,
    table: Vec<Complex64>,
}

impl RootTable {
    pub fn new(order: usize) -> Self {
        let order = order.max(1) as i64;
        let table = (0..order).map(|e| root(order, e)).collect();
        Self { order, table }
    }

    #[inline]
    pub fn get(&self, exponent: i64) -> Complex64 {
        self.table[exponent.rem_euclid(self.order) as usize]
    }

    pub fn order(&self) -> usize {
        self.order as usize
    }
}
