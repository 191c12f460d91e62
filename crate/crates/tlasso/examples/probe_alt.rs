// Scratch probe: noncentrality of the standardized statistic under a known
// alternative (removed before release).
use tlasso::estimator::PrecisionSet;
use tlasso::inference::{regression_fit, test_statistics, variance_correction_oracle};
use tlasso::linalg::SymMatrix;
use tlasso::metrics::SupportMatrix;
use tlasso::simulate::{sample_tensor_normal, GroundTruth, RngStream};

fn main() {
    // Mode-0 truth: identity with a single (0,1) edge of chosen partial
    // correlation; modes 1,2 identity.
    for partial in [0.1, 0.165, 0.2, 0.3] {
        let m1 = 6usize;
        let mut omega0 = SymMatrix::identity(m1);
        omega0.set_sym(0, 1, -partial); // negative edge, positive residual cov
        let omegas = vec![
            omega0.scale(1.0 / omega0.frob_norm()),
            SymMatrix::identity(5).scale(1.0 / 5.0f64.sqrt()),
            SymMatrix::identity(5).scale(1.0 / 5.0f64.sqrt()),
        ];
        let sigmas: Vec<SymMatrix> = omegas.iter().map(|o| o.inverse().unwrap()).collect();
        let supports: Vec<SupportMatrix> = omegas
            .iter()
            .map(|o| SupportMatrix::from_sym(o, 1e-8))
            .collect();
        let sparsity: Vec<usize> = supports.iter().map(|s| s.count() - s.dim()).collect();
        let truth = GroundTruth {
            omegas: PrecisionSet::from_mats(omegas),
            sigmas,
            supports,
            sparsity,
        };
        let n = 50;
        let mut vals = Vec::new();
        for rep in 0..60 {
            let mut rng = RngStream::new(99, rep).rng();
            let samples = sample_tensor_normal(&truth, n, &mut rng).unwrap();
            let fit = regression_fit(&samples, truth.omegas.mat(0), 0).unwrap();
            let varcorr = variance_correction_oracle(&truth.sigmas, 0).unwrap();
            let (_, tau_std) = test_statistics(&fit, varcorr, n).unwrap();
            vals.push(tau_std.get(0, 1));
        }
        let mean = vals.iter().sum::<f64>() / vals.len() as f64;
        let sd = (vals.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / 59.0).sqrt();
        println!(
            "partial {partial:.3}: noncentrality mean {mean:7.2} sd {sd:.2}  (ratio mean/partial {:.1})",
            mean / partial
        );
    }
}
