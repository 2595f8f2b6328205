use nccoulomb::fuzzy::Params;
use nccoulomb::radial::{commutative_radial, radial_closed_form, Sign};

/// Largest deviation between the NC radial sequence and the ordinary regular
/// solution at `r = lambda n` over `lambda n <= r_max`.
fn max_gap(j: u32, energy: f64, alpha: f64, lambda: f64, r_max: f64) -> f64 {
    let n_max = (r_max / lambda).floor() as usize;
    let r = radial_closed_form(j, energy, &Params::new(lambda, alpha), n_max, Sign::Plus).unwrap();
    (0..=n_max)
        .map(|n| (r.get(n) - commutative_radial(j, energy, alpha, lambda * n as f64).unwrap()).norm())
        .fold(0.0, f64::max)
}

#[test]
fn radial_sequences_approach_ordinary_solution_linearly() {
    for &(j, energy, alpha) in &[(0u32, 0.5, 1.0), (1, 1.2, -0.7), (2, -0.3, 1.5)] {
        let lambdas = [0.04, 0.02, 0.01, 0.005];
        let gaps: Vec<f64> = lambdas.iter().map(|&l| max_gap(j, energy, alpha, l, 4.0)).collect();
        println!("j={j} E={energy}: {gaps:?}");
        for w in gaps.windows(2) {
            let order = (w[0] / w[1]).log2();
            assert!((0.8..=1.3).contains(&order), "j={j}: order {order} from {gaps:?}");
        }
    }
}
