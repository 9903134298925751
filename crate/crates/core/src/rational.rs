//! Exact complex-rational scalars.

use num_bigint::BigInt;
use num_complex::{Complex, Complex64};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

/// `p/q + i·r/s` with arbitrary-precision integers.
pub type CRational = Complex<BigRational>;

pub fn ratio(numer: i64, denom: i64) -> BigRational {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

/// The real number `numer/denom`.
pub fn real(numer: i64, denom: i64) -> CRational {
    Complex::new(ratio(numer, denom), BigRational::zero())
}

pub fn int(value: i64) -> CRational {
    real(value, 1)
}

/// The imaginary unit.
pub fn imag_unit() -> CRational {
    Complex::new(BigRational::zero(), ratio(1, 1))
}

pub fn from_rational(re: BigRational) -> CRational {
    Complex::new(re, BigRational::zero())
}

pub fn rational_to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

pub fn to_c64(q: &CRational) -> Complex64 {
    Complex64::new(rational_to_f64(&q.re), rational_to_f64(&q.im))
}

pub fn is_real(q: &CRational) -> bool {
    q.im.is_zero()
}
