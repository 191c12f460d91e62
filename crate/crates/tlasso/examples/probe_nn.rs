// Scratch probe for sim2 power diagnostics (removed before release).
use tlasso::estimator::{fit, TlassoConfig};
use tlasso::inference::{kron_fdp_estimate, recover_support};
use tlasso::simulate::{make_truth, sample_tensor_normal, GraphKind, RngStream};

fn main() {
    let dims = vec![10usize, 10, 10];
    let n = 50;
    let reps = 80;
    let v = 0.05;
    let mut power_data = Vec::new();
    let mut power_oracle = Vec::new();
    let mut missed_magnitudes: Vec<f64> = Vec::new();
    let mut fdp_acc: Vec<f64> = Vec::new();
    let mut edge_counts = Vec::new();
    for rep in 0..reps {
        let mut rng = RngStream::new(7, rep).rng();
        let truth = make_truth(GraphKind::NearestNeighbor, &dims, &mut rng).unwrap();
        let samples = sample_tensor_normal(&truth, n, &mut rng).unwrap();
        let (est, _) = fit(&samples, &TlassoConfig::default()).unwrap();
        let data_reports: Vec<_> = (0..3)
            .map(|k| recover_support(&samples, &est, k, v, None).unwrap())
            .collect();
        let oracle_reports: Vec<_> = (0..3)
            .map(|k| recover_support(&samples, &est, k, v, Some(&truth)).unwrap())
            .collect();
        let kd = kron_fdp_estimate(&data_reports, v, &dims, Some(&truth)).unwrap();
        let ko = kron_fdp_estimate(&oracle_reports, v, &dims, Some(&truth)).unwrap();
        let kdr = kd.realized.unwrap();
        power_data.push(kdr.power);
        power_oracle.push(ko.realized.unwrap().power);
        missed_magnitudes.push(-1.0); // sentinel separator unused
        missed_magnitudes.pop();
        fdp_acc.push(kdr.fdp);
        for k in 0..3 {
            edge_counts.push(truth.supports[k].upper_pairs().len());
            for (i, j) in truth.supports[k].upper_pairs() {
                if !data_reports[k].rejected.get(i, j) {
                    let omega = truth.omegas.mat(k);
                    let partial = omega.get(i, j).abs()
                        / (omega.get(i, i) * omega.get(j, j)).sqrt();
                    missed_magnitudes.push(partial);
                }
            }
        }
    }
    let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
    println!("data power   : {:.4}", mean(&power_data));
    println!("data fdp     : {:.4}", mean(&fdp_acc));
    println!("oracle power : {:.4}", mean(&power_oracle));
    println!(
        "edges/mode   : {:.1}",
        edge_counts.iter().sum::<usize>() as f64 / edge_counts.len() as f64
    );
    missed_magnitudes.sort_by(|a, b| a.partial_cmp(b).unwrap());
    println!("missed edges : {} total", missed_magnitudes.len());
    if !missed_magnitudes.is_empty() {
        println!(
            "missed |partial| quartiles: {:.3} {:.3} {:.3}",
            missed_magnitudes[missed_magnitudes.len() / 4],
            missed_magnitudes[missed_magnitudes.len() / 2],
            missed_magnitudes[3 * missed_magnitudes.len() / 4]
        );
    }
}
