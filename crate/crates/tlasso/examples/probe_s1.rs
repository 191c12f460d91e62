// Scratch probe for the s1 pipeline numbers (removed before release).
use tlasso::estimator::{fit, TlassoConfig};
use tlasso::inference::{kron_fdp_estimate, recover_support};
use tlasso::metrics;
use tlasso::simulate::{make_truth, sample_tensor_normal, GraphKind, RngStream};
use tlasso::stats::ks_test_standard_normal;

fn main() {
    let dims = vec![10usize, 10, 10];
    let n = 50;
    let reps = 100;
    let v = 0.05;
    let mut fdps = Vec::new();
    let mut powers = Vec::new();
    let mut taus = Vec::new();
    let mut tnrs = Vec::new();
    let mut tprs = Vec::new();
    let mut track = Vec::new();
    let mut per_mode_fdp = Vec::new();
    for rep in 0..reps {
        let mut rng = RngStream::new(7, rep).rng();
        let truth = make_truth(GraphKind::NearestNeighbor, &dims, &mut rng).unwrap();
        let samples = sample_tensor_normal(&truth, n, &mut rng).unwrap();
        let (est, _) = fit(&samples, &TlassoConfig::default()).unwrap();
        let reports: Vec<_> = (0..3)
            .map(|k| recover_support(&samples, &est, k, v, None).unwrap())
            .collect();
        let kron = kron_fdp_estimate(&reports, v, &dims, Some(&truth)).unwrap();
        let realized = kron.realized.unwrap();
        fdps.push(realized.fdp);
        powers.push(realized.power);
        taus.push(kron.tau);
        // Kron-level TPR/TNR of the rejection supports.
        let rej: Vec<_> = reports.iter().map(|r| r.rejected.clone()).collect();
        let (tpr, tnr) = metrics::selection_rates(&rej, &truth.supports).unwrap();
        tprs.push(tpr);
        tnrs.push(tnr);
        track.push(reports[0].tau_std.get(0, 5));
        let (f, _) = metrics::fdp_power(&reports[0].rejected, &truth.supports[0]).unwrap();
        per_mode_fdp.push(f);
    }
    let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
    println!("reps             : {reps}");
    println!("kron FDP mean    : {:.4} (paper full-scale: 0.067)", mean(&fdps));
    println!("kron tau mean    : {:.4} (paper limit: 0.099)", mean(&taus));
    println!("kron power mean  : {:.4} (paper: 1.00)", mean(&powers));
    println!("kron TPR mean    : {:.4}", mean(&tprs));
    println!("kron TNR mean    : {:.4} (paper table: 0.935)", mean(&tnrs));
    println!("mode-0 FDP mean  : {:.4}", mean(&per_mode_fdp));
    let ks = ks_test_standard_normal(&track).unwrap();
    println!(
        "track tau_std    : mean {:.3} sd {:.3} KS D {:.3} p {:.3}",
        mean(&track),
        (track.iter().map(|t| (t - mean(&track)).powi(2)).sum::<f64>() / (reps as f64 - 1.0))
            .sqrt(),
        ks.statistic,
        ks.p_value
    );
}
