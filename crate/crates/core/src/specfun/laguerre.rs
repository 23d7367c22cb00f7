//! Laguerre polynomials `L_n` and the half-line number-operator
//! eigenfunctions `chi_n(y) = exp(-y/2) L_n(y)`.

/// `L_n(y)` by the three-term recurrence
/// `(k+1) L_{k+1} = (2k+1-y) L_k - k L_{k-1}`.
pub fn laguerre(n: usize, y: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = 1.0 - y;
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 - y) * cur - kf * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// `L_n(y) - 1` without cancellation for small `y`.
///
/// With `D_k = L_k - 1` the recurrence becomes
/// `(k+1) D_{k+1} = (2k+1-y) D_k - k D_{k-1} - y`.
pub fn laguerre_minus_one(n: usize, y: f64) -> f64 {
    if n == 0 {
        return 0.0;
    }
    let mut prev = 0.0;
    let mut cur = -y;
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 - y) * cur - kf * prev - y) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// `chi_n(y) = exp(-y/2) L_n(y)`; `chi_n(0) = 1` exactly.
pub fn chi(n: usize, y: f64) -> f64 {
    (-0.5 * y).exp() * laguerre(n, y)
}

/// `chi_n(y) - 1`, accurate when `y` is tiny.
pub fn chi_minus_one(n: usize, y: f64) -> f64 {
    (-0.5 * y).exp_m1() * laguerre(n, y) + laguerre_minus_one(n, y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn low_orders_are_exact() {
        assert_eq!(laguerre(0, 3.7), 1.0);
        assert_eq!(laguerre(1, 2.0), -1.0);
        for n in 0..12 {
            assert_eq!(chi(n, 0.0), 1.0);
        }
        assert_eq!(chi(7, 0.0), 1.0);
        assert!((chi(0, 2.0) - (-1.0f64).exp()).abs() < 1e-16);
    }

    #[test]
    fn explicit_small_values() {
        // L_5(1) = -7/15, L_3(3/2) = -11/16 exactly
        assert!((laguerre(5, 1.0) + 7.0 / 15.0).abs() < 1e-15);
        assert!((chi(3, 1.5) + 11.0 / 16.0 * (-0.75f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn minus_one_forms_are_accurate_near_zero() {
        for n in [1usize, 2, 5, 9] {
            let y = 1e-9;
            // L_n(y) - 1 = -n y + n(n-1)/4 y^2 + ...
            let nf = n as f64;
            let want = -nf * y + nf * (nf - 1.0) / 4.0 * y * y;
            assert!((laguerre_minus_one(n, y) - want).abs() < 1e-12 * want.abs());
            let want_chi = -(nf + 0.5) * y;
            assert!((chi_minus_one(n, y) - want_chi).abs() < 1e-8 * want_chi.abs());
        }
        for n in 0..20 {
            for y in [0.3, 2.0, 7.5] {
                assert!((laguerre_minus_one(n, y) - (laguerre(n, y) - 1.0)).abs() < 1e-12);
                assert!((chi_minus_one(n, y) - (chi(n, y) - 1.0)).abs() < 1e-12);
            }
        }
    }

    proptest! {
        #[test]
        fn three_term_recurrence_holds(n in 1usize..50, y in 0.0f64..50.0) {
            let lhs = (n as f64 + 1.0) * laguerre(n + 1, y);
            let rhs = (2.0 * n as f64 + 1.0 - y) * laguerre(n, y) - n as f64 * laguerre(n - 1, y);
            let scale = lhs.abs().max(rhs.abs()).max(1.0);
            prop_assert!((lhs - rhs).abs() <= 1e-10 * scale);
        }

        #[test]
        fn chi_envelope(n in 0usize..=200, y in 0.0f64..400.0) {
            prop_assert!(chi(n, y).abs() <= 1.0 + 1e-9);
        }
    }
}
