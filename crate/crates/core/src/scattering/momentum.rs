use num_complex::Complex64;
use serde::Serialize;

use crate::fuzzy::Params;

/// Which side of the cut `(0, 1/lambda)` a momentum sits on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Edge {
    /// `E` in `(0, 1/lambda^2]`.
    Upper,
    /// `E` in `(1/lambda^2, 2/lambda^2)`.
    Lower,
    OffCut,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Momentum {
    pub p: Complex64,
    pub edge: Edge,
}

// Relative size of the E + i eps offset that picks the physical sheet.
const SHEET_EPS: f64 = 1e-10;

/// `p = sqrt(2E(1 - lambda^2 E/2))` on the physical sheet.
///
/// For real `E` the square-root argument is real and its sign alone is
/// ambiguous; the branch is taken from `E + i eps`, `eps = 1e-10 * 2/lambda^2`,
/// which moves the argument off the axis by `2 eps (1 - lambda^2 E)`. Complex
/// `E` uses the principal root, mapping the upper half plane to `Re p > 0`.
pub fn p_of_e(energy: Complex64, params: &Params) -> Momentum {
    let lam2 = params.lambda * params.lambda;
    let q = 2.0 * energy * (1.0 - 0.5 * lam2 * energy);
    if energy.im != 0.0 {
        return Momentum { p: q.sqrt(), edge: Edge::OffCut };
    }
    let e = energy.re;
    let q = q.re;
    let eps = SHEET_EPS * 2.0 / lam2;
    let shifted = 2.0 * Complex64::new(e, eps) * (1.0 - 0.5 * lam2 * Complex64::new(e, eps));
    let p = if q >= 0.0 {
        Complex64::new(q.sqrt(), 0.0)
    } else {
        Complex64::new(0.0, shifted.im.signum() * (-q).sqrt())
    };
    let edge = if e > 0.0 && e * lam2 <= 1.0 {
        Edge::Upper
    } else if e * lam2 > 1.0 && e * lam2 < 2.0 {
        Edge::Lower
    } else {
        Edge::OffCut
    };
    Momentum { p, edge }
}

/// `E = (1 +- i sqrt(lambda^2 p^2 - 1)) / lambda^2`, the sign chosen so that
/// [`p_of_e`] maps the result back to `p`.
///
/// The principal root is used for `p > 1/lambda` and the upper edge; the
/// lower edge and the branch-II pole axis `p = -i|p|` take the other sign.
pub fn e_of_p(momentum: Momentum, params: &Params) -> Complex64 {
    let lam = params.lambda;
    let root = Complex64::i() * (lam * lam * momentum.p * momentum.p - 1.0).sqrt();
    let candidates = [(1.0 + root) / (lam * lam), (1.0 - root) / (lam * lam)];
    let score = |e: Complex64| {
        let back = p_of_e(e, params);
        let edge_miss = matches!(momentum.edge, Edge::Upper | Edge::Lower) && back.edge != momentum.edge;
        (edge_miss, (back.p - momentum.p).norm())
    };
    let (s0, s1) = (score(candidates[0]), score(candidates[1]));
    if (s1.0, s1.1) < (s0.0, s0.1) {
        candidates[1]
    } else {
        candidates[0]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn real(x: f64) -> Complex64 {
        Complex64::new(x, 0.0)
    }

    #[test]
    fn endpoints_and_edges() {
        let p = Params::new(0.5, 1.0);
        let mid = p_of_e(real(4.0), &p);
        assert!((mid.p - real(2.0)).norm() < 1e-15);
        assert_eq!(mid.edge, Edge::Upper);
        let small = p_of_e(real(1e-8), &p);
        assert!((small.p.re - (2e-8f64).sqrt()).abs() < 1e-12 && small.edge == Edge::Upper);
        for eps in [0.01, 1.0, 3.5] {
            let lo = p_of_e(real(eps), &p);
            let hi = p_of_e(real(8.0 - eps), &p);
            assert!((lo.p - hi.p).norm() < 1e-13);
            assert_eq!((lo.edge, hi.edge), (Edge::Upper, Edge::Lower));
            assert!(lo.p.im == 0.0 && lo.p.re > 0.0 && lo.p.re < 2.0);
        }
    }

    #[test]
    fn sheet_prescription_matches_analytic_rules() {
        // Below zero: p on the positive imaginary axis; above 2/lambda^2: negative.
        let p = Params::new(0.5, 1.0);
        assert!(p_of_e(real(-1.0), &p).p.im > 0.0);
        assert!(p_of_e(real(9.0), &p).p.im < 0.0);
        // Limit from the upper half plane agrees with the real-axis branch.
        for e in [-3.0, 0.7, 4.5, 7.9, 12.0] {
            let on = p_of_e(real(e), &p).p;
            let near = p_of_e(Complex64::new(e, 1e-9), &p).p;
            assert!((on - near).norm() < 1e-6, "E={e}: {on} vs {near}");
        }
    }

    #[test]
    fn inverse_map() {
        let p = Params::new(0.5, 1.0);
        let e = e_of_p(Momentum { p: real(2.0), edge: Edge::Upper }, &p);
        assert!((e - real(4.0)).norm() < 1e-14);
        for (edge, want) in [(Edge::Upper, 0.5), (Edge::Lower, 7.5)] {
            let m = p_of_e(real(want), &p);
            assert_eq!(m.edge, edge);
            assert!((e_of_p(m, &p) - real(want)).norm() < 1e-13);
        }
    }

    #[test]
    fn round_trip_off_cut() {
        let params = Params::new(0.7, 1.0);
        for a in 1..=8 {
            for b in -6..=6 {
                let p = Complex64::new(0.3 * a as f64, 0.25 * b as f64 + 0.01);
                let m = Momentum { p, edge: Edge::OffCut };
                let back = p_of_e(e_of_p(m, &params), &params).p;
                assert!((back - p).norm() < 1e-13 * p.norm().max(1.0), "{p} -> {back}");
            }
        }
    }
}
