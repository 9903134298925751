//! Small dense complex matrices stored row-major in a flat `Vec`.

use alloc::vec::Vec;
use num_complex::Complex64;

use crate::math::cabs;
use crate::Error;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

/// LU factorisation with partial pivoting, in place. Returns the pivot
/// permutation and its parity, or `Singular` on an exactly zero pivot.
fn lu_in_place(a: &mut [Complex64], n: usize) -> Result<(Vec<usize>, bool), Error> {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut odd = false;
    for k in 0..n {
        let mut pivot = k;
        let mut best = cabs(a[k * n + k]);
        for i in (k + 1)..n {
            let v = cabs(a[i * n + k]);
            if v > best {
                best = v;
                pivot = i;
            }
        }
        if best == 0.0 {
            return Err(Error::Singular);
        }
        if pivot != k {
            for j in 0..n {
                a.swap(k * n + j, pivot * n + j);
            }
            perm.swap(k, pivot);
            odd = !odd;
        }
        let d = a[k * n + k];
        for i in (k + 1)..n {
            let factor = a[i * n + k] / d;
            a[i * n + k] = factor;
            for j in (k + 1)..n {
                let t = a[k * n + j];
                a[i * n + j] -= factor * t;
            }
        }
    }
    Ok((perm, odd))
}

pub(crate) fn determinant(a: &[Complex64], n: usize) -> Complex64 {
    let mut lu = a.to_vec();
    match lu_in_place(&mut lu, n) {
        Ok((_, odd)) => {
            let mut det = if odd { -ONE } else { ONE };
            for k in 0..n {
                det *= lu[k * n + k];
            }
            det
        }
        Err(_) => ZERO,
    }
}

pub(crate) fn inverse(a: &[Complex64], n: usize) -> Result<Vec<Complex64>, Error> {
    let mut lu = a.to_vec();
    let (perm, _) = lu_in_place(&mut lu, n)?;
    let mut inv = alloc::vec![ZERO; n * n];
    for col in 0..n {
        // Solve L U x = P e_col.
        let mut x: Vec<Complex64> = (0..n)
            .map(|i| if perm[i] == col { ONE } else { ZERO })
            .collect();
        for i in 0..n {
            for j in 0..i {
                let t = lu[i * n + j] * x[j];
                x[i] -= t;
            }
        }
        for i in (0..n).rev() {
            for j in (i + 1)..n {
                let t = lu[i * n + j] * x[j];
                x[i] -= t;
            }
            x[i] /= lu[i * n + i];
        }
        for i in 0..n {
            inv[i * n + col] = x[i];
        }
    }
    Ok(inv)
}

/// Cholesky test for a Hermitian matrix: true iff every pivot is positive.
pub(crate) fn is_positive_definite(a: &[Complex64], n: usize) -> bool {
    let mut l = alloc::vec![ZERO; n * n];
    for j in 0..n {
        let mut d = a[j * n + j].re;
        for k in 0..j {
            d -= l[j * n + k].norm_sqr();
        }
        if !(d > 0.0) {
            return false;
        }
        let d = crate::math::sqrt(d);
        l[j * n + j] = Complex64::new(d, 0.0);
        for i in (j + 1)..n {
            let mut s = a[i * n + j];
            for k in 0..j {
                s -= l[i * n + k] * l[j * n + k].conj();
            }
            l[i * n + j] = s / d;
        }
    }
    true
}

pub(crate) fn max_abs_diff(a: &[Complex64], b: &[Complex64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| cabs(*x - *y))
        .fold(0.0, f64::max)
}

pub(crate) fn max_hermitian_defect(a: &[Complex64], n: usize) -> f64 {
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in 0..n {
            worst = worst.max(cabs(a[i * n + j] - a[j * n + i].conj()));
        }
    }
    worst
}

pub(crate) fn matmul(a: &[Complex64], b: &[Complex64], n: usize) -> Vec<Complex64> {
    let mut c = alloc::vec![ZERO; n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            for j in 0..n {
                c[i * n + j] += aik * b[k * n + j];
            }
        }
    }
    c
}
