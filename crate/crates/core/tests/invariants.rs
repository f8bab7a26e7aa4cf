use proptest::prelude::*;

use sspread::harness::{hermitian, unitary, SplitMix64};
use sspread::ineq::{check_key, check_zhan};
use sspread::linalg::direct_sum;
use sspread::major::{submajorizes_seq, dec_rearrange};
use sspread::spectra::{spread_plus_of, Mode};
use sspread::HermMatrix;

fn close(a: &[f64], b: &[f64], tol: f64) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() <= tol)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn spread_is_unitarily_invariant(seed in any::<u64>(), d in 1usize..7) {
        let mut r = SplitMix64::new(seed);
        let a = hermitian(&mut r, d);
        let u = unitary(&mut r, d);
        let b = a.conjugate_by(&u);
        for mode in [Mode::Matrix, Mode::Compact] {
            let x = spread_plus_of(&a, mode).unwrap();
            let y = spread_plus_of(&b, mode).unwrap();
            prop_assert!(close(x.values(), y.values(), 1e-9 * (1.0 + x.values()[0])));
        }
    }

    #[test]
    fn spread_ignores_translation(seed in any::<u64>(), d in 1usize..7, c in -5.0f64..5.0) {
        let mut r = SplitMix64::new(seed);
        let a = hermitian(&mut r, d);
        let x = spread_plus_of(&a, Mode::Matrix).unwrap();
        let y = spread_plus_of(&a.shift(c), Mode::Matrix).unwrap();
        prop_assert!(close(x.values(), y.values(), 1e-9 * (1.0 + x.values()[0] + c.abs())));
    }

    #[test]
    fn compact_spread_sees_zero_padding(seed in any::<u64>(), d in 1usize..6) {
        let mut r = SplitMix64::new(seed);
        let a = hermitian(&mut r, d);
        let padded = direct_sum(&a, &HermMatrix::zeros(d));
        let x = spread_plus_of(&a, Mode::Compact).unwrap();
        let y = spread_plus_of(&padded, Mode::Compact).unwrap();
        let mut xv = x.values().to_vec();
        xv.resize(2 * d, 0.0);
        prop_assert!(close(&xv, y.values(), 1e-9 * (1.0 + xv[0])));
        // Matrix mode of A ⊕ 0 agrees with the compact spread of A.
        let z = spread_plus_of(&padded, Mode::Matrix).unwrap();
        prop_assert!(close(&xv, z.values(), 1e-9 * (1.0 + xv[0])));
    }

    #[test]
    fn matrix_spread_is_dominated_by_compact(seed in any::<u64>(), d in 1usize..7) {
        let mut r = SplitMix64::new(seed);
        let a = hermitian(&mut r, d);
        let m = spread_plus_of(&a, Mode::Matrix).unwrap();
        let c = spread_plus_of(&a, Mode::Compact).unwrap();
        prop_assert!(submajorizes_seq(&m, &c).unwrap().holds);
        prop_assert_eq!(dec_rearrange(m.values()), m.values().to_vec());
    }

    #[test]
    fn key_and_zhan_hold(seed in any::<u64>(), d in 2usize..7) {
        let mut r = SplitMix64::new(seed);
        let a = hermitian(&mut r, d);
        let b = hermitian(&mut r, d);
        let split = 1 + (seed as usize) % (d - 1);
        prop_assert!(check_key(&a, split, Mode::Compact).unwrap().holds);
        prop_assert!(check_zhan(&a, &b, Mode::Compact).unwrap().holds);
        prop_assert!(check_zhan(&a, &b, Mode::Matrix).unwrap().holds);
    }
}
