//! Float helpers that work without `std`.

#[allow(unused_imports)]
pub(crate) use num_traits::Float;

#[allow(unused_imports)]
pub(crate) use core::f64::consts::{FRAC_1_SQRT_2, PI, TAU};

use num_complex::Complex64;

#[inline]
pub(crate) fn cis(theta: f64) -> Complex64 {
    Complex64::new(theta.cos(), theta.sin())
}

#[inline]
pub(crate) fn is_power_of_two(n: usize) -> bool {
    n != 0 && n & (n - 1) == 0
}

/// Kahan-compensated sum in a fixed order.
pub(crate) fn stable_sum(values: impl Iterator<Item = f64>) -> f64 {
    let mut sum = 0.0;
    let mut carry = 0.0;
    for v in values {
        let y = v - carry;
        let t = sum + y;
        carry = (t - sum) - y;
        sum = t;
    }
    sum
}
