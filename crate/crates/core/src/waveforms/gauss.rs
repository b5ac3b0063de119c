use crate::arith::{gcd, RootTable};
use crate::error::{Error, Result};

/// `|sum_{p<N} xi_N^{a p^2}|`, which equals `sqrt(N)` for odd `N` and `a`
/// coprime to `N`.
pub fn gauss_sum_magnitude(n: usize, a: i64) -> Result<f64> {
    if n.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!(
            "Gauss sum needs odd N, got {n}"
        )));
    }
    if gcd(a, n as i64) != 1 {
        return Err(Error::InvalidParameter(format!(
            "a={a} is not coprime to N={n}"
        )));
    }
    let nn = n as i64;
    let roots = RootTable::new(n);
    let sum: num_complex::Complex64 = (0..nn)
        .map(|p| roots.get(a.rem_euclid(nn) * (p * p % nn)))
        .sum();
    Ok(sum.norm())
}
