use aflaz::par::theta_report_par;
use aflaz::FftDoppler;
use aflaz_core::{af_surface, af_surface_with, theta_report, LazSpec, Sequence, SequenceSet};
use proptest::prelude::*;

fn seq(phases: &[f64]) -> Sequence {
    Sequence::from_phases(phases).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn fft_matches_direct(ph in prop::collection::vec(-3.2f64..3.2, 1..48), ph2 in prop::collection::vec(-3.2f64..3.2, 48)) {
        let n = ph.len();
        let x = seq(&ph);
        let y = seq(&ph2[..n]);
        let laz = LazSpec::global(n);
        let direct = af_surface(&x, &y, laz).unwrap();
        let fft = af_surface_with(&x, &y, laz, &FftDoppler::new(n)).unwrap();
        for ((t, v, a), (_, _, b)) in direct.iter().zip(fft.iter()) {
            prop_assert!((a - b).abs() <= 1e-9 * a.max(b).max(1.0), "({t},{v}): {a} vs {b}");
        }
    }

    #[test]
    fn parallel_theta_matches_serial(
        ph in prop::collection::vec(-3.2f64..3.2, 3 * 12),
        zx in 1usize..=12,
        zy in 1usize..=12,
    ) {
        let set = SequenceSet::new(ph.chunks(12).map(seq).collect()).unwrap();
        let laz = LazSpec::new(zx, zy).unwrap();
        let a = theta_report(&set, laz).unwrap();
        let b = theta_report_par(&set, laz, &FftDoppler::new(12)).unwrap();
        prop_assert!((a.theta_max_sq - b.theta_max_sq).abs() <= 1e-9 * a.theta_max_sq.max(1.0));
        prop_assert!((a.theta_a_sq - b.theta_a_sq).abs() <= 1e-9 * a.theta_a_sq.max(1.0));
        let (ca, cb) = (a.theta_c_sq.unwrap(), b.theta_c_sq.unwrap());
        prop_assert!((ca - cb).abs() <= 1e-9 * ca.max(1.0));
    }
}
