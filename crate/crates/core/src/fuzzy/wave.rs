use num_complex::Complex64;

use super::fock::TruncatedFock;
use super::ladder::{build_ladder, Ladder};
use super::operator::{OperatorMatrix, WaveOperator};
use super::Params;
use crate::error::{Error, Result};
use crate::radial::RadialSeq;

fn factorial(n: usize) -> f64 {
    (1..=n).map(|x| x as f64).product()
}

/// `k (k-1) ... (k-m+1)`
fn falling(k: usize, m: usize) -> f64 {
    ((k + 1 - m)..=k).map(|x| x as f64).product()
}

/// `Psi_jm = lambda^j sum (a1^+)^m1 (a2^+)^m2 / (m1! m2!) R(rho) a1^n1 (-a2)^n2 / (n1! n2!)`
/// with `m1 + m2 = n1 + n2 = j` and `m1 - n1 = m`.
///
/// Matrix elements are computed directly: the annihilators lower a ket on level
/// `n` to level `n - j`, where the radial factor contributes `R(n - j)`, and the
/// creators restore level `n`. No truncation is involved.
pub fn build_psi_jm(j: u32, m: i32, radial: &RadialSeq, space: TruncatedFock, params: &Params) -> Result<WaveOperator> {
    if m.unsigned_abs() > j {
        return Err(Error::Precondition(format!("|m| = {} exceeds j = {j}", m.abs())));
    }
    let ju = j as usize;
    let n_max = space.n_max();
    if n_max >= ju && radial.values.len() < n_max - ju + 1 {
        return Err(Error::Precondition(format!(
            "radial sequence has {} values, level {} needs {}",
            radial.values.len(),
            n_max,
            n_max - ju + 1
        )));
    }
    let prefactor = params.lambda.powi(j as i32);
    let mut triplets = Vec::new();
    for m1 in 0..=ju {
        let n1 = m1 as i64 - m as i64;
        let n2 = ju as i64 - n1;
        if n1 < 0 || n2 < 0 {
            continue;
        }
        let (n1, n2, m2) = (n1 as usize, n2 as usize, ju - m1);
        let sign = if n2 % 2 == 0 { 1.0 } else { -1.0 };
        let coeff = prefactor * sign / (factorial(m1) * factorial(m2) * factorial(n1) * factorial(n2));
        for n in ju..=n_max {
            let r = radial.values[n - ju];
            if r == Complex64::new(0.0, 0.0) {
                continue;
            }
            for ket in space.level_range(n) {
                let (k1, k2) = space.state(ket);
                if k1 < n1 || k2 < n2 {
                    continue;
                }
                let (l1, l2) = (k1 - n1, k2 - n2);
                let amp = (falling(k1, n1) * falling(k2, n2) * falling(l1 + m1, m1) * falling(l2 + m2, m2)).sqrt();
                let bra = space.index(l1 + m1, l2 + m2).expect("level preserved");
                triplets.push((bra, ket, r * (coeff * amp)));
            }
        }
    }
    Ok(WaveOperator::labelled(
        OperatorMatrix::from_triplets(space, triplets),
        j,
        m,
    ))
}

/// `sum_a [a^+_a, [a_a, Psi]]`, polluted on the top two levels.
pub fn double_commutator(psi: &WaveOperator, ladder: &Ladder) -> OperatorMatrix {
    let mut total = OperatorMatrix::zeros(psi.space());
    for (a, a_dag) in [(&ladder.a1, &ladder.a1_dag), (&ladder.a2, &ladder.a2_dag)] {
        total = total.add(&a_dag.commutator(&a.commutator(&psi.op)));
    }
    total.with_pollution(2)
}

/// `Delta_lambda Psi = -(1/(lambda^2 (N+1))) [a^+_a, [a_a, Psi]]`.
pub fn laplacian_apply(psi: &WaveOperator, params: &Params) -> WaveOperator {
    let ladder = build_ladder(psi.space());
    let lam2 = params.lambda * params.lambda;
    let op = double_commutator(psi, &ladder).left_level_scale(|n| Complex64::new(-1.0 / (lam2 * (n + 1) as f64), 0.0));
    WaveOperator { op, labels: psi.labels }
}

/// `H Psi = (1/(2 lambda r)) [a^+_a, [a_a, Psi]] + V(r) Psi` with
/// `V = -q/r + q0` in units hbar = m = 1.
pub fn hamiltonian_apply(psi: &WaveOperator, params: &Params) -> WaveOperator {
    hamiltonian_apply_with(psi, params, &build_ladder(psi.space()))
}

pub fn hamiltonian_apply_with(psi: &WaveOperator, params: &Params, ladder: &Ladder) -> WaveOperator {
    let lam = params.lambda;
    let kinetic = double_commutator(psi, ladder).left_level_scale(|n| Complex64::new(1.0 / (2.0 * lam * lam * (n + 1) as f64), 0.0));
    let potential = psi
        .op
        .left_level_scale(|n| Complex64::new(params.q0 - params.alpha / (lam * (n + 1) as f64), 0.0));
    WaveOperator {
        op: kinetic.add(&potential),
        labels: psi.labels,
    }
}

/// Weighted Hilbert–Schmidt norm together with the share of its top level.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HsNorm {
    pub value: f64,
    pub last_level: f64,
}

/// `4 pi lambda^3 Tr[(N+1) Psi^+ Psi]` over the truncated space.
pub fn hs_norm_sq(psi: &WaveOperator, params: &Params) -> HsNorm {
    let n_max = psi.space().n_max();
    let value = hs_norm_sq_up_to(&psi.op, params, n_max);
    let below = if n_max == 0 { 0.0 } else { hs_norm_sq_up_to(&psi.op, params, n_max - 1) };
    HsNorm {
        value,
        last_level: value - below,
    }
}

/// The same trace restricted to kets on levels `<= max_level`.
pub fn hs_norm_sq_up_to(op: &OperatorMatrix, params: &Params, max_level: usize) -> f64 {
    let scale = 4.0 * std::f64::consts::PI * params.lambda.powi(3);
    scale * op.weighted_column_norm_sq(max_level, |n| (n + 1) as f64)
}

/// `||H Psi - E Psi|| / ||Psi||` in the weighted norm on unpolluted levels.
pub fn eigen_residual(psi: &WaveOperator, energy: f64, params: &Params, ladder: &Ladder) -> f64 {
    let h = hamiltonian_apply_with(psi, params, ladder);
    let diff = h.op.sub(&psi.op.scale(Complex64::new(energy, 0.0)));
    let top = diff.trusted_max_level().unwrap_or(0);
    (hs_norm_sq_up_to(&diff, params, top) / hs_norm_sq_up_to(&psi.op, params, top)).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fuzzy::ladder::{angular_momentum_apply, angular_momentum_squared_apply, coordinates};
    use crate::fuzzy::normal::{laplace_potential, NormalPolynomial};

    fn params() -> Params {
        Params::new(0.3, 1.0)
    }

    fn poly_radial(j: u32, n_max: usize, lam: f64) -> RadialSeq {
        NormalPolynomial::from_real(&[0.7, -1.3, 0.4, 0.05]).to_radial(j, n_max, lam)
    }

    #[test]
    fn scalar_identity() {
        let space = TruncatedFock::new(6);
        let psi = build_psi_jm(0, 0, &RadialSeq::from_real(0, vec![1.0; 7]), space, &params()).unwrap();
        assert_eq!(psi.op, OperatorMatrix::identity(space));
        assert!(psi.is_level_diagonal());
    }

    #[test]
    fn rejects_bad_m() {
        let space = TruncatedFock::new(4);
        let r = RadialSeq::from_real(1, vec![1.0; 5]);
        assert!(matches!(build_psi_jm(1, 2, &r, space, &params()), Err(Error::Precondition(_))));
    }

    #[test]
    fn vanishes_below_level_j() {
        let space = TruncatedFock::new(8);
        let p = params();
        for j in 0..4u32 {
            for m in -(j as i32)..=(j as i32) {
                let psi = build_psi_jm(j, m, &poly_radial(j, 8, p.lambda), space, &p).unwrap();
                if j > 0 {
                    assert_eq!(psi.op.max_abs_up_to(j as usize - 1), 0.0);
                }
                assert!(psi.is_level_diagonal());
            }
        }
    }

    #[test]
    fn top_component_matches_ladder_product() {
        let space = TruncatedFock::new(7);
        let p = params();
        let radial = poly_radial(1, 7, p.lambda);
        let psi = build_psi_jm(1, 1, &radial, space, &p).unwrap();
        let l = build_ladder(space);
        let r_diag = OperatorMatrix::level_diagonal(space, |n| radial.get(n));
        let expect = l
            .a1_dag
            .mul(&r_diag)
            .mul(&l.a2)
            .scale(Complex64::new(-p.lambda, 0.0));
        assert!(psi.op.max_abs_diff_trusted(&expect) < 1e-14);
    }

    #[test]
    fn angular_eigenvalues() {
        let space = TruncatedFock::new(9);
        let p = params();
        for j in 0..=3u32 {
            for m in -(j as i32)..=(j as i32) {
                let psi = build_psi_jm(j, m, &poly_radial(j, 9, p.lambda), space, &p).unwrap();
                let scale = psi.op.max_abs_up_to(9);
                let l3 = angular_momentum_apply(&psi, 3);
                assert!(l3.op.sub(&psi.op.scale(Complex64::new(m as f64, 0.0))).max_abs_up_to(9) < 1e-12 * scale);
                let l2 = angular_momentum_squared_apply(&psi);
                let jj = (j * (j + 1)) as f64;
                assert!(l2.op.sub(&psi.op.scale(Complex64::new(jj, 0.0))).max_abs_up_to(9) < 1e-12 * scale);
            }
        }
    }

    #[test]
    fn laplacian_examples() {
        let space = TruncatedFock::new(10);
        let p = params();
        let one = build_psi_jm(0, 0, &RadialSeq::from_real(0, vec![1.0; 11]), space, &p).unwrap();
        assert!(laplacian_apply(&one, &p).op.max_abs_up_to(8) < 1e-14);

        // R = rho gives Delta Psi = 2/r.
        let rho = NormalPolynomial::from_real(&[0.0, 1.0]).to_radial(0, 10, p.lambda);
        let psi = build_psi_jm(0, 0, &rho, space, &p).unwrap();
        let lap = laplacian_apply(&psi, &p);
        let expect = OperatorMatrix::level_diagonal(space, |n| Complex64::new(2.0 / (p.lambda * (n + 1) as f64), 0.0));
        assert!(lap.op.max_abs_diff_trusted(&expect) < 1e-13);

        let v = laplace_potential(space, &p);
        let psi_v = build_psi_jm(0, 0, &v, space, &p).unwrap();
        // Harmonic away from the origin; level 0 carries the point source q/lambda^3.
        let source = OperatorMatrix::level_diagonal(space, |n| {
            Complex64::new(if n == 0 { p.alpha / p.lambda.powi(3) } else { 0.0 }, 0.0)
        });
        assert!(laplacian_apply(&psi_v, &p).op.sub(&source).max_abs_up_to(8) < 1e-12);
    }

    #[test]
    fn double_commutator_formula() {
        let n_max = 10;
        let space = TruncatedFock::new(n_max);
        let p = params();
        let ladder = build_ladder(space);
        let poly = NormalPolynomial::from_real(&[0.7, -1.3, 0.4, 0.05]);
        for j in 0..=2u32 {
            for m in -(j as i32)..=(j as i32) {
                let psi = build_psi_jm(j, m, &poly.to_radial(j, n_max, p.lambda), space, &p).unwrap();
                let lhs = double_commutator(&psi, &ladder);
                let image = poly.double_commutator_image(j, p.lambda).to_radial(j, n_max, p.lambda);
                let rhs = build_psi_jm(j, m, &image, space, &p).unwrap();
                let scale = rhs.op.max_abs_up_to(n_max - 2).max(1e-300);
                assert!(lhs.max_abs_diff_trusted(&rhs.op) < 1e-12 * scale, "j={j} m={m}");
            }
        }
    }

    #[test]
    fn radius_formula() {
        let n_max = 10;
        let space = TruncatedFock::new(n_max);
        let p = params();
        let r = coordinates(space, &p).r;
        let poly = NormalPolynomial::from_real(&[0.2, 0.9, -0.3]);
        for j in 0..=2u32 {
            let psi = build_psi_jm(j, 0, &poly.to_radial(j, n_max, p.lambda), space, &p).unwrap();
            let image = poly.radius_image(j, p.lambda).to_radial(j, n_max, p.lambda);
            let rhs = build_psi_jm(j, 0, &image, space, &p).unwrap();
            let scale = rhs.op.max_abs_up_to(n_max);
            assert!(r.mul(&psi.op).sub(&rhs.op).max_abs_up_to(n_max) < 1e-12 * scale);
        }
    }

    #[test]
    fn hs_norm_examples() {
        let space = TruncatedFock::new(5);
        let p = params();
        let zero = WaveOperator::new(OperatorMatrix::zeros(space));
        assert_eq!(hs_norm_sq(&zero, &p).value, 0.0);
        let mut delta = vec![0.0; 6];
        delta[0] = 1.0;
        let psi = build_psi_jm(0, 0, &RadialSeq::from_real(0, delta), space, &p).unwrap();
        let norm = hs_norm_sq(&psi, &p);
        assert!((norm.value - 4.0 * std::f64::consts::PI * p.lambda.powi(3)).abs() < 1e-15);
        assert_eq!(norm.last_level, 0.0);
    }
}
