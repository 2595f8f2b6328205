use num_complex::Complex64;

use super::fock::TruncatedFock;
use super::operator::{OperatorMatrix, WaveOperator};
use super::Params;

/// Mode label of a ladder operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    One,
    Two,
}

#[derive(Debug, Clone)]
pub struct Ladder {
    pub a1: OperatorMatrix,
    pub a2: OperatorMatrix,
    pub a1_dag: OperatorMatrix,
    pub a2_dag: OperatorMatrix,
    pub number: OperatorMatrix,
}

impl Ladder {
    pub fn annihilator(&self, mode: Mode) -> &OperatorMatrix {
        match mode {
            Mode::One => &self.a1,
            Mode::Two => &self.a2,
        }
    }

    pub fn creator(&self, mode: Mode) -> &OperatorMatrix {
        match mode {
            Mode::One => &self.a1_dag,
            Mode::Two => &self.a2_dag,
        }
    }
}

fn annihilator(space: TruncatedFock, mode: Mode) -> OperatorMatrix {
    let triplets = (0..space.dim()).filter_map(|i| {
        let (n1, n2) = space.state(i);
        match mode {
            Mode::One if n1 > 0 => Some((space.index(n1 - 1, n2)?, i, Complex64::new((n1 as f64).sqrt(), 0.0))),
            Mode::Two if n2 > 0 => Some((space.index(n1, n2 - 1)?, i, Complex64::new((n2 as f64).sqrt(), 0.0))),
            _ => None,
        }
    });
    OperatorMatrix::from_triplets(space, triplets.collect::<Vec<_>>()).with_pollution(1)
}

fn creator(space: TruncatedFock, mode: Mode) -> OperatorMatrix {
    // Kets on the top level would leave the space; their images are dropped.
    let triplets = (0..space.dim()).filter_map(|i| {
        let (n1, n2) = space.state(i);
        match mode {
            Mode::One => Some((space.index(n1 + 1, n2)?, i, Complex64::new(((n1 + 1) as f64).sqrt(), 0.0))),
            Mode::Two => Some((space.index(n1, n2 + 1)?, i, Complex64::new(((n2 + 1) as f64).sqrt(), 0.0))),
        }
    });
    OperatorMatrix::from_triplets(space, triplets.collect::<Vec<_>>()).with_pollution(1)
}

/// Ladder operators and the number operator on a truncated space.
pub fn build_ladder(space: TruncatedFock) -> Ladder {
    Ladder {
        a1: annihilator(space, Mode::One),
        a2: annihilator(space, Mode::Two),
        a1_dag: creator(space, Mode::One),
        a2_dag: creator(space, Mode::Two),
        number: OperatorMatrix::level_diagonal(space, |n| Complex64::new(n as f64, 0.0)),
    }
}

/// `J_k = (1/2) a^+ sigma_k a`; exact on every level since they preserve it.
pub fn angular_generators(space: TruncatedFock) -> [OperatorMatrix; 3] {
    let half = Complex64::new(0.5, 0.0);
    let mut j1 = Vec::new();
    let mut j2 = Vec::new();
    let mut j3 = Vec::new();
    for i in 0..space.dim() {
        let (n1, n2) = space.state(i);
        j3.push((i, i, half * (n1 as f64 - n2 as f64)));
        if n2 > 0 {
            // a1^+ a2 |n1, n2> = sqrt((n1+1) n2) |n1+1, n2-1>
            let t = space.index(n1 + 1, n2 - 1).expect("same level");
            let amp = ((n1 + 1) as f64 * n2 as f64).sqrt();
            j1.push((t, i, half * amp));
            j2.push((t, i, Complex64::new(0.0, -0.5) * amp));
        }
        if n1 > 0 {
            let t = space.index(n1 - 1, n2 + 1).expect("same level");
            let amp = (n1 as f64 * (n2 + 1) as f64).sqrt();
            j1.push((t, i, half * amp));
            j2.push((t, i, Complex64::new(0.0, 0.5) * amp));
        }
    }
    [
        OperatorMatrix::from_triplets(space, j1),
        OperatorMatrix::from_triplets(space, j2),
        OperatorMatrix::from_triplets(space, j3),
    ]
}

#[derive(Debug, Clone)]
pub struct Coordinates {
    pub x: [OperatorMatrix; 3],
    pub r: OperatorMatrix,
}

/// `x_k = lambda a^+ sigma_k a` and `r = lambda (N + 1)`.
pub fn coordinates(space: TruncatedFock, params: &Params) -> Coordinates {
    let two_lambda = Complex64::new(2.0 * params.lambda, 0.0);
    let x = angular_generators(space).map(|j| j.scale(two_lambda));
    let r = OperatorMatrix::level_diagonal(space, |n| Complex64::new(params.lambda * (n + 1) as f64, 0.0));
    Coordinates { x, r }
}

/// `L_k Psi = (1/2)[a^+ sigma_k a, Psi]`, `axis` in `1..=3`.
pub fn angular_momentum_apply(psi: &WaveOperator, axis: usize) -> WaveOperator {
    assert!((1..=3).contains(&axis), "axis must be 1, 2 or 3");
    let generator = &angular_generators(psi.space())[axis - 1];
    WaveOperator {
        op: generator.commutator(&psi.op),
        labels: psi.labels,
    }
}

/// `L^2 Psi = sum_k L_k L_k Psi`.
pub fn angular_momentum_squared_apply(psi: &WaveOperator) -> WaveOperator {
    let generators = angular_generators(psi.space());
    let mut total = OperatorMatrix::zeros(psi.space());
    for g in &generators {
        let once = g.commutator(&psi.op);
        total = total.add(&g.commutator(&once));
    }
    WaveOperator {
        op: total,
        labels: psi.labels,
    }
}

fn power(op: &OperatorMatrix, k: usize) -> OperatorMatrix {
    let mut acc = OperatorMatrix::identity(op.space());
    for _ in 0..k {
        acc = op.mul(&acc);
    }
    acc
}

/// `:N^k: = sum_i C(k,i) (a1^+)^i (a2^+)^(k-i) a1^i a2^(k-i)` assembled from
/// ladder matrices. Annihilators act first, so no truncation occurs.
pub fn normal_number_power_matrix(ladder: &Ladder, k: usize) -> OperatorMatrix {
    let space = ladder.number.space();
    let mut total = OperatorMatrix::zeros(space);
    let mut binom = 1.0;
    for i in 0..=k {
        let annihilate = power(&ladder.a1, i).mul(&power(&ladder.a2, k - i));
        let create = power(&ladder.a1_dag, i).mul(&power(&ladder.a2_dag, k - i));
        total = total.add(&create.mul(&annihilate).scale(Complex64::new(binom, 0.0)));
        binom = binom * (k - i) as f64 / (i + 1) as f64;
    }
    total.with_pollution(0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params() -> Params {
        Params::new(0.3, 1.0)
    }

    #[test]
    fn ladder_actions() {
        let space = TruncatedFock::new(5);
        let l = build_ladder(space);
        let one_zero = space.index(1, 0).unwrap();
        let vac = space.index(0, 0).unwrap();
        assert_eq!(l.a1.get(vac, one_zero), Complex64::new(1.0, 0.0));
        for i in 0..space.dim() {
            let (n1, n2) = space.state(i);
            assert_eq!(l.number.get(i, i).re, (n1 + n2) as f64);
        }
    }

    #[test]
    fn canonical_commutators_on_trusted_levels() {
        let space = TruncatedFock::new(6);
        let l = build_ladder(space);
        let id = OperatorMatrix::identity(space);
        let zero = OperatorMatrix::zeros(space);
        for (a, a_dag) in [(&l.a1, &l.a1_dag), (&l.a2, &l.a2_dag)] {
            let c = a.commutator(a_dag);
            assert!(c.sub(&id).max_abs_up_to(space.n_max() - 1) < 1e-14);
        }
        assert!(l.a1.commutator(&l.a2_dag).sub(&zero).max_abs_up_to(space.n_max() - 1) < 1e-14);
    }

    #[test]
    fn coordinate_algebra() {
        let space = TruncatedFock::new(8);
        let p = params();
        let xs = coordinates(space, &p);
        let lam = p.lambda;
        let comm = xs.x[0].commutator(&xs.x[1]);
        let rhs = xs.x[2].scale(Complex64::new(0.0, 2.0 * lam));
        assert!(comm.sub(&rhs).max_abs_up_to(space.n_max() - 1) < 1e-13);

        let mut sum_sq = OperatorMatrix::zeros(space);
        for x in &xs.x {
            sum_sq = sum_sq.add(&x.mul(x));
        }
        let lhs = xs.r.mul(&xs.r).sub(&sum_sq);
        let expect = OperatorMatrix::identity(space).scale(Complex64::new(lam * lam, 0.0));
        assert!(lhs.sub(&expect).max_abs_up_to(space.n_max() - 1) < 1e-13);
    }

    #[test]
    fn x3_level_one_eigenvalues() {
        let space = TruncatedFock::new(3);
        let p = params();
        let xs = coordinates(space, &p);
        let b = xs.x[2].block(1, 1);
        // 2x2 Hermitian block: eigenvalues from trace and determinant.
        let tr = (b[0][0] + b[1][1]).re;
        let det = (b[0][0] * b[1][1] - b[0][1] * b[1][0]).re;
        let disc = (tr * tr - 4.0 * det).sqrt();
        let mut ev = [(tr - disc) / 2.0, (tr + disc) / 2.0];
        ev.sort_by(f64::total_cmp);
        assert!((ev[0] + p.lambda).abs() < 1e-15 && (ev[1] - p.lambda).abs() < 1e-15);
    }

    #[test]
    fn angular_algebra_as_superoperators() {
        let space = TruncatedFock::new(6);
        let g = angular_generators(space);
        // [J1, J2] = i J3 holds exactly since all J preserve levels.
        let c = g[0].commutator(&g[1]);
        assert!(c.sub(&g[2].scale(Complex64::new(0.0, 1.0))).max_abs_up_to(6) < 1e-14);
    }

    #[test]
    fn normal_power_from_ladders() {
        let space = TruncatedFock::new(4);
        let l = build_ladder(space);
        let n2 = normal_number_power_matrix(&l, 2);
        for i in space.level_range(3) {
            assert!((n2.get(i, i).re - 6.0).abs() < 1e-12);
        }
        let n4 = normal_number_power_matrix(&l, 4);
        assert!(n4.max_abs_up_to(3) < 1e-12);
        let n0 = normal_number_power_matrix(&l, 0);
        assert!(n0.sub(&OperatorMatrix::identity(space)).max_abs_up_to(4) < 1e-15);
    }
}
