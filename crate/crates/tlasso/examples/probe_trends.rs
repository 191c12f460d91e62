// Scratch probe for cross-scenario error trends and baseline orderings
// (removed before release).
use tlasso::estimator::{fit, fit_direct_glasso, fit_pmle, tuning_lambda, PmleConfig, TlassoConfig};
use tlasso::metrics::{self, SupportMatrix};
use tlasso::simulate::{make_truth, sample_tensor_normal, GraphKind, RngStream};

fn scenario(n: usize, dims: &[usize], reps: u64, seed: u64) -> (f64, f64, f64) {
    let mut frob = 0.0;
    let mut maxn = 0.0;
    let mut kron = 0.0;
    for rep in 0..reps {
        let mut rng = RngStream::new(seed, rep).rng();
        let truth = make_truth(GraphKind::Triangle, dims, &mut rng).unwrap();
        let samples = sample_tensor_normal(&truth, n, &mut rng).unwrap();
        let (est, _) = fit(&samples, &TlassoConfig::default()).unwrap();
        let (f, x) = metrics::mode_errors(&est, &truth.omegas).unwrap();
        frob += f;
        maxn += x;
        kron += metrics::kron_error(&est, &truth.omegas).unwrap();
    }
    (
        frob / reps as f64,
        maxn / reps as f64,
        kron / reps as f64,
    )
}

fn main() {
    let reps = 40;
    let s1 = scenario(50, &[10, 10, 10], reps, 31);
    let s2 = scenario(80, &[10, 10, 10], reps, 31);
    let s3 = scenario(50, &[10, 10, 20], reps, 31);
    println!("s1: frob {:.4} max {:.4} kron {:.6}", s1.0, s1.1, s1.2);
    println!("s2: frob {:.4} max {:.4} kron {:.6}", s2.0, s2.1, s2.2);
    println!("s3: frob {:.4} max {:.4} kron {:.6}", s3.0, s3.1, s3.2);
    println!(
        "s1->s2 frob decrease: {}, max decrease: {}",
        s2.0 < s1.0,
        s2.1 < s1.1
    );
    println!(
        "s1->s3 frob increase: {}, max decrease: {}",
        s3.0 > s1.0,
        s3.1 < s1.1
    );

    // P-MLE vs Tlasso Kronecker error ordering at reduced scale.
    let mut tl = 0.0;
    let mut pm = 0.0;
    for rep in 0..25u64 {
        let mut rng = RngStream::new(41, rep).rng();
        let truth = make_truth(GraphKind::Triangle, &[10, 10, 10], &mut rng).unwrap();
        let samples = sample_tensor_normal(&truth, 50, &mut rng).unwrap();
        let (a, _) = fit(&samples, &TlassoConfig::default()).unwrap();
        let (b, _) = fit_pmle(&samples, &PmleConfig::default()).unwrap();
        tl += metrics::kron_error(&a, &truth.omegas).unwrap();
        pm += metrics::kron_error(&b, &truth.omegas).unwrap();
    }
    println!("tlasso kron err {:.6} vs pmle {:.6} (pmle >= tlasso: {})", tl / 25.0, pm / 25.0, pm >= tl);

    // Direct Glasso support recovery at dims (4,4,4).
    let dims = [4usize, 4, 4];
    let mut tl_tpr = 0.0;
    let mut gl_tpr = 0.0;
    for rep in 0..15u64 {
        let mut rng = RngStream::new(51, rep).rng();
        let truth = make_truth(GraphKind::Triangle, &dims, &mut rng).unwrap();
        let samples = sample_tensor_normal(&truth, 50, &mut rng).unwrap();
        let (est, _) = fit(&samples, &TlassoConfig::default()).unwrap();
        let est_support: Vec<SupportMatrix> = est
            .mats()
            .iter()
            .map(|m| SupportMatrix::from_sym(m, 0.0))
            .collect();
        let (tpr, _) = metrics::selection_rates(&est_support, &truth.supports).unwrap();
        tl_tpr += tpr;

        let m: usize = dims.iter().product();
        // Scale-aware grid: multiples of mean-variance · sqrt(log m / n).
        let mean_diag: f64 = {
            let mut acc = 0.0;
            for s in &samples { for (i, v) in s.data().iter().enumerate() { let _ = i; acc += v * v; } }
            acc / (samples.len() * m) as f64
        };
        let rate = ((m as f64).ln() / 50.0).sqrt();
        let mut best = (0.0, -1.0, 0.0);
        for c in [0.25, 0.5, 1.0, 2.0] {
            let lambda = c * mean_diag * rate;
            let direct = fit_direct_glasso(&samples, lambda).unwrap();
            let dense = SupportMatrix::from_sym(&direct.omega, 0.0);
            let (tpr_d, tnr_d) = metrics::selection_rates_dense(&dense, &truth.supports).unwrap();
            if tpr_d + tnr_d > best.1 + best.2 { best = (lambda, tpr_d, tnr_d); }
        }
        gl_tpr += best.1;
        if rep == 0 {
            println!("direct glasso best lambda {:.3} tpr {:.3} tnr {:.3}", best.0, best.1, best.2);
        }
    }
    println!(
        "tlasso TPR {:.3} vs direct glasso TPR {:.3} (glasso strictly below: {})",
        tl_tpr / 15.0,
        gl_tpr / 15.0,
        gl_tpr < tl_tpr
    );
    let _ = tuning_lambda(0, 50, &dims, 20.0).unwrap();
}
