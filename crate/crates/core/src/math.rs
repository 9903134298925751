//! Thin wrappers over `libm` so every transcendental goes through the same
//! implementation on every platform.

#[inline]
pub(crate) fn powf(x: f64, y: f64) -> f64 {
    libm::pow(x, y)
}

#[inline]
pub(crate) fn powi(x: f64, n: usize) -> f64 {
    let mut acc = 1.0;
    for _ in 0..n {
        acc *= x;
    }
    acc
}

#[inline]
pub(crate) fn sqrt(x: f64) -> f64 {
    libm::sqrt(x)
}

#[inline]
pub(crate) fn ln(x: f64) -> f64 {
    libm::log(x)
}

#[cfg(test)]
#[inline]
pub(crate) fn abs(x: f64) -> f64 {
    libm::fabs(x)
}

/// `|z|` without going through `num_complex`'s std-only `norm`.
#[inline]
pub(crate) fn cabs(z: num_complex::Complex64) -> f64 {
    libm::hypot(z.re, z.im)
}
