mod common;

use proptest::prelude::*;
use qjsd_core::divergences::{qjsd_distance, JensenFn};
use qjsd_core::qubit::{
    bloch_to_density, centered_kernel_check, density_to_bloch, ft_trace_closed, jensen_closed, kernel_matrix,
    kernel_matrix_generic, mds_embed, mid_eigenvalues, BlochVector, PointSet, Verdict,
};
use qjsd_core::spectral::{trace_fn, DensityMatrix};

fn bloch() -> impl Strategy<Value = BlochVector> {
    prop::array::uniform3(-1.0f64..1.0).prop_map(|r| {
        let n = (r[0] * r[0] + r[1] * r[1] + r[2] * r[2]).sqrt();
        let s = if n > 1.0 { 1.0 / n } else { 1.0 };
        BlochVector::new([r[0] * s, r[1] * s, r[2] * s]).unwrap()
    })
}

fn bloch_set(max: usize) -> impl Strategy<Value = Vec<BlochVector>> {
    prop::collection::vec(bloch(), 2..=max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn bloch_roundtrip(r in bloch()) {
        let rho = bloch_to_density(&r).unwrap();
        prop_assert!((rho.trace() - 1.0).abs() <= 1e-15);
        let back = density_to_bloch(&rho).unwrap();
        for (x, y) in r.components().iter().zip(back.components()) {
            prop_assert!((x - y).abs() <= 1e-12);
        }
    }

    #[test]
    fn midpoint_spectrum_matches_solver(r in bloch(), s in bloch()) {
        let mid = bloch_to_density(&r).unwrap().mix(0.5, &bloch_to_density(&s).unwrap()).unwrap();
        let (lo, hi) = mid_eigenvalues(&r, &s);
        prop_assert!((mid.eigenvalues()[0] - lo).abs() <= 1e-12);
        prop_assert!((mid.eigenvalues()[1] - hi).abs() <= 1e-12);
    }

    #[test]
    fn ft_closed_form_matches_spectral_trace(r in bloch(), t in 0.01f64..100.0) {
        let rho = bloch_to_density(&r).unwrap();
        let direct = trace_fn(&rho, |x| t * t * t / (t + x)).unwrap();
        let closed = ft_trace_closed(t, r.norm());
        prop_assert!((direct - closed).abs() <= 1e-12 * closed.abs().max(1.0));
    }

    #[test]
    fn closed_kernels_match_generic(
        pts in bloch_set(8),
        f in prop::sample::select(vec![JensenFn::Eta, JensenFn::Square, JensenFn::Ft(0.1), JensenFn::Ft(1.0), JensenFn::Ft(10.0)]),
    ) {
        let ps = PointSet::Bloch(pts);
        let k = kernel_matrix(&ps, &f).unwrap();
        let g = kernel_matrix_generic(&ps, &f).unwrap();
        let scale = g.iter().flatten().fold(1.0f64, |s, v| s.max(v.abs()));
        for (a, b) in k.iter().flatten().zip(g.iter().flatten()) {
            prop_assert!((a - b).abs() <= 1e-11 * scale, "{f}: {a} vs {b}");
        }
    }

    #[test]
    fn embedding_reproduces_qjsd_distances(pts in bloch_set(12)) {
        let ps = PointSet::Bloch(pts.clone());
        let report = centered_kernel_check(&kernel_matrix(&ps, &JensenFn::Eta).unwrap()).unwrap();
        prop_assert_eq!(report.verdict, Verdict::NegativeDefinite);
        let emb = mds_embed(&report).unwrap();
        prop_assert!(emb.dimension() < pts.len());
        let dens: Vec<DensityMatrix> = ps.densities().unwrap();
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                let d: f64 = emb.coordinates[i].iter().zip(&emb.coordinates[j]).map(|(a, b)| (a - b) * (a - b)).sum::<f64>().sqrt();
                let want = qjsd_distance(&dens[i], &dens[j]).unwrap();
                prop_assert!((d - want).abs() <= 1e-8, "{d} vs {want}");
            }
        }
    }

    #[test]
    fn zero_sum_quadratic_form_is_nonpositive(
        pts in bloch_set(10),
        raw in prop::collection::vec(-1.0f64..1.0, 10),
        t in prop::sample::select(vec![0.1, 1.0, 10.0]),
    ) {
        let m = pts.len();
        let mean = raw[..m].iter().sum::<f64>() / m as f64;
        let c: Vec<f64> = raw[..m].iter().map(|x| x - mean).collect();
        for f in [JensenFn::Eta, JensenFn::Ft(t)] {
            let mut q = 0.0;
            for i in 0..m {
                for j in 0..m {
                    q += c[i] * c[j] * jensen_closed(&f, &pts[i], &pts[j]).unwrap();
                }
            }
            let scale = if let JensenFn::Ft(t) = f { t.max(1.0) } else { 1.0 };
            prop_assert!(q <= 1e-10 * scale, "{f}: {q}");
        }
    }
}
