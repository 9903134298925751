use genosc_core::geometry::{metric_at, radial_profile, sample_points, OscillatorParams};
use genosc_core::observables::{structure_bracket, AlgebraElement};
use genosc_core::quantize::{binomial, dirac_residual, monomial_basis, quantize};
use genosc_core::rational::{int, ratio, real, CRational};
use num_complex::Complex;
use proptest::prelude::*;

fn small_rational() -> impl Strategy<Value = CRational> {
    (-4i64..=4, 1i64..=3, -4i64..=4, 1i64..=3)
        .prop_map(|(a, b, c, d)| Complex::new(ratio(a, b), ratio(c, d)))
}

fn element(m: usize) -> impl Strategy<Value = AlgebraElement> {
    (
        proptest::collection::vec(small_rational(), m * m),
        small_rational(),
    )
        .prop_map(move |(coeff, c)| AlgebraElement::from_parts(m, coeff, c).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn determinant_is_one(seed in any::<u64>(), m in 1usize..=6, a_idx in 0usize..4) {
        let a = [0.0, 0.5, 1.0, 2.0][a_idx];
        let params = OscillatorParams::new(m, a).unwrap();
        for p in sample_points(&params, 4, seed, 0.1).unwrap() {
            let md = metric_at(&params, &p).unwrap();
            prop_assert!((md.det_g - 1.0).abs() <= 1e-10, "det = {}", md.det_g);
            prop_assert!(md.is_positive_definite());
            prop_assert!(md.inverse_discrepancy <= 1e-8);
            let prof = radial_profile(&params, p.r()).unwrap();
            prop_assert!((prof.s - p.r() * prof.u_prime).abs() <= 4.0 * f64::EPSILON * prof.s);
        }
    }

    #[test]
    fn quantization_is_linear(e1 in element(2), e2 in element(2), c1 in small_rational(), c2 in small_rational(), l in 0u32..4) {
        let combo = e1.scale(&c1).add(&e2.scale(&c2)).unwrap();
        let lhs = quantize(&combo, l).unwrap();
        let rhs = quantize(&e1, l).unwrap().scaled(&c1)
            .plus(&quantize(&e2, l).unwrap().scaled(&c2)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn dirac_holds_for_general_elements(e1 in element(3), e2 in element(3), l in 0u32..3) {
        prop_assert!(dirac_residual(&e1, &e2, l).unwrap().is_zero());
    }

    #[test]
    fn jacobi_for_random_m4_elements(e1 in element(4), e2 in element(4), e3 in element(4)) {
        let j = structure_bracket(&structure_bracket(&e1, &e2).unwrap(), &e3).unwrap()
            .add(&structure_bracket(&structure_bracket(&e2, &e3).unwrap(), &e1).unwrap()).unwrap()
            .add(&structure_bracket(&structure_bracket(&e3, &e1).unwrap(), &e2).unwrap()).unwrap();
        prop_assert!(j.is_zero());
    }
}

#[test]
fn basis_size_matches_brute_force_count() {
    for m in 1..=4usize {
        for l in 0..=5u32 {
            // Brute force: count exponent vectors in [0, l]^m with sum l.
            let mut count = 0usize;
            let total = (l as usize + 1).pow(m as u32);
            for code in 0..total {
                let mut rest = code;
                let mut sum = 0usize;
                for _ in 0..m {
                    sum += rest % (l as usize + 1);
                    rest /= l as usize + 1;
                }
                if sum == l as usize {
                    count += 1;
                }
            }
            let basis = monomial_basis(m, l).unwrap();
            assert_eq!(basis.dim(), count);
            assert_eq!(
                basis.dim() as u64,
                binomial(u64::from(l) + m as u64 - 1, m as u64 - 1)
            );
            let mut sorted = basis.indices().to_vec();
            sorted.dedup();
            assert_eq!(sorted.len(), basis.dim());
        }
    }
}

#[test]
fn quantized_operators_preserve_degree_and_trace() {
    for m in 1..=3usize {
        for l in 0..=4u32 {
            let basis = monomial_basis(m, l).unwrap();
            for alpha in 0..m {
                for beta in 0..m {
                    let op = quantize(&AlgebraElement::basis(m, alpha, beta).unwrap(), l).unwrap();
                    assert_eq!(op.hbar_power().unwrap_or(1), 1);
                    for (_, row, col, _) in op.entries() {
                        let (a, b) = (&basis.indices()[row], &basis.indices()[col]);
                        assert_eq!(a.degree(), b.degree());
                    }
                    // Trace: Σ_k (k_α + ½) when α = β, otherwise zero.
                    let expected = if alpha == beta {
                        basis.indices().iter().fold(real(0, 1), |acc, k| {
                            acc + int(i64::from(k.get(alpha))) + real(1, 2)
                        })
                    } else {
                        real(0, 1)
                    };
                    let trace = op.trace().remove(&1).unwrap_or_else(|| real(0, 1));
                    assert_eq!(trace, expected);
                }
            }
        }
    }
}

#[test]
fn exact_jacobi_and_antisymmetry_exhaustive() {
    for m in 1..=3usize {
        let basis: Vec<AlgebraElement> = (0..m * m)
            .map(|k| AlgebraElement::basis(m, k / m, k % m).unwrap())
            .collect();
        for x in &basis {
            for y in &basis {
                let xy = structure_bracket(x, y).unwrap();
                let yx = structure_bracket(y, x).unwrap();
                assert!(xy.add(&yx).unwrap().is_zero());
                for z in &basis {
                    let j = structure_bracket(&xy, z)
                        .unwrap()
                        .add(&structure_bracket(&structure_bracket(y, z).unwrap(), x).unwrap())
                        .unwrap()
                        .add(&structure_bracket(&structure_bracket(z, x).unwrap(), y).unwrap())
                        .unwrap();
                    assert!(j.is_zero());
                }
            }
        }
    }
}
