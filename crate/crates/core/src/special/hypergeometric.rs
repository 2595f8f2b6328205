use super::{ensure_finite, nonpositive_integer, sum_series, ComplexValue};
use crate::error::{Error, Result};

/// Order at which a series with a non-positive integer numerator parameter
/// terminates, or `None` for a genuinely infinite series.
fn termination_order(params: &[ComplexValue]) -> Option<u64> {
    params.iter().filter_map(|p| nonpositive_integer(*p)).min()
}

fn check_denominator(c: ComplexValue, terminates_at: Option<u64>, name: &str) -> Result<()> {
    if let Some(m) = nonpositive_integer(c) {
        // (c)_k vanishes for k > m; harmless only when the series stops first.
        match terminates_at {
            Some(n) if n <= m => Ok(()),
            _ => Err(Error::Pole(format!("{name}: denominator parameter c = -{m}"))),
        }
    } else {
        Ok(())
    }
}

/// Gauss hypergeometric function `F(a, b; c; z)`.
///
/// When `a` or `b` is a non-positive integer `-N` the polynomial of degree `N`
/// is summed exactly; otherwise the power series is summed for `|z| < 1`.
pub fn gauss_2f1(a: ComplexValue, b: ComplexValue, c: ComplexValue, z: ComplexValue) -> Result<ComplexValue> {
    gauss_2f1_with_terms(a, b, c, z).map(|(v, _)| v)
}

/// Same as [`gauss_2f1`], also reporting how many terms were summed.
pub fn gauss_2f1_with_terms(
    a: ComplexValue,
    b: ComplexValue,
    c: ComplexValue,
    z: ComplexValue,
) -> Result<(ComplexValue, usize)> {
    for (v, name) in [(a, "a"), (b, "b"), (c, "c"), (z, "z")] {
        ensure_finite(v, &format!("gauss_2f1 parameter {name}"))?;
    }
    let stop = termination_order(&[a, b]);
    check_denominator(c, stop, "gauss_2f1")?;

    if let Some(n) = stop {
        let mut term = ComplexValue::new(1.0, 0.0);
        let mut sum = term;
        for m in 0..n {
            let mf = m as f64;
            term *= (a + mf) * (b + mf) / ((c + mf) * (mf + 1.0)) * z;
            sum += term;
        }
        return Ok((ensure_finite(sum, "gauss_2f1")?, n as usize + 1));
    }

    if z.norm() >= 1.0 {
        return Err(Error::Divergence {
            terms: 0,
            context: format!("gauss_2f1 with |z| = {} >= 1 and no termination", z.norm()),
        });
    }
    let mut count = 1;
    let value = sum_series(
        ComplexValue::new(1.0, 0.0),
        |m| {
            count += 1;
            let mf = m as f64;
            (a + mf) * (b + mf) / ((c + mf) * (mf + 1.0)) * z
        },
        "gauss_2f1",
    )?;
    Ok((value, count))
}

/// Kummer confluent hypergeometric function `phi(a; c; z)`.
pub fn kummer_1f1(a: ComplexValue, c: ComplexValue, z: ComplexValue) -> Result<ComplexValue> {
    for (v, name) in [(a, "a"), (c, "c"), (z, "z")] {
        ensure_finite(v, &format!("kummer_1f1 parameter {name}"))?;
    }
    let stop = termination_order(&[a]);
    check_denominator(c, stop, "kummer_1f1")?;

    if let Some(n) = stop {
        let mut term = ComplexValue::new(1.0, 0.0);
        let mut sum = term;
        for m in 0..n {
            let mf = m as f64;
            term *= (a + mf) / ((c + mf) * (mf + 1.0)) * z;
            sum += term;
        }
        return ensure_finite(sum, "kummer_1f1");
    }
    sum_series(
        ComplexValue::new(1.0, 0.0),
        |m| {
            let mf = m as f64;
            (a + mf) / ((c + mf) * (mf + 1.0)) * z
        },
        "kummer_1f1",
    )
}

/// Truncated asymptotic series together with the size of the first omitted
/// term, the natural error scale of an asymptotic expansion.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AsymptoticSum {
    pub value: ComplexValue,
    pub error_estimate: f64,
}

/// Tricomi function `psi(a, c; z) ~ sum_m (-1)^m (a)_m (a-c+1)_m / m! z^(-a-m)`
/// with `terms` terms kept.
pub fn tricomi_psi_asymptotic(
    a: ComplexValue,
    c: ComplexValue,
    z: ComplexValue,
    terms: usize,
) -> Result<AsymptoticSum> {
    if terms == 0 {
        return Err(Error::Precondition("tricomi_psi_asymptotic needs terms >= 1".into()));
    }
    for (v, name) in [(a, "a"), (c, "c"), (z, "z")] {
        ensure_finite(v, &format!("tricomi_psi_asymptotic parameter {name}"))?;
    }
    let b = a - c + 1.0;
    let mut term = z.powc(-a);
    let mut value = ComplexValue::new(0.0, 0.0);
    for m in 0..terms {
        value += term;
        let mf = m as f64;
        term *= -(a + mf) * (b + mf) / ((mf + 1.0) * z);
    }
    Ok(AsymptoticSum {
        value: ensure_finite(value, "tricomi_psi_asymptotic")?,
        error_estimate: term.norm(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(x: f64) -> ComplexValue {
        ComplexValue::new(x, 0.0)
    }

    /// Plain forward summation with no shortcuts, used as the oracle.
    fn naive_2f1(a: f64, b: f64, c: f64, z: f64, terms: usize) -> f64 {
        let mut sum = 0.0;
        let mut term = 1.0;
        for m in 0..terms {
            sum += term;
            let mf = m as f64;
            term *= (a + mf) * (b + mf) / ((c + mf) * (mf + 1.0)) * z;
        }
        sum
    }

    #[test]
    fn gauss_examples() {
        let z = ComplexValue::new(0.3, -0.4);
        assert_eq!(gauss_2f1(r(1.3), r(0.0), r(2.2), z).unwrap(), r(1.0));

        let v = gauss_2f1(r(1.0), r(1.0), r(2.0), r(0.5)).unwrap();
        let oracle = naive_2f1(1.0, 1.0, 2.0, 0.5, 200);
        assert!((v.re - oracle).abs() < 1e-12);
        assert!((v.re - 1.3862943611198906).abs() < 1e-12);

        let b = ComplexValue::new(0.7, 0.2);
        let c = ComplexValue::new(2.5, -1.0);
        let v = gauss_2f1(r(-1.0), b, c, z).unwrap();
        assert!((v - (1.0 - b * z / c)).norm() < 1e-15);
    }

    #[test]
    fn termination_counts_terms() {
        for n in 0..12u32 {
            let (_, terms) =
                gauss_2f1_with_terms(r(0.37), r(-(n as f64)), r(2.0), r(5.0)).unwrap();
            assert_eq!(terms, n as usize + 1);
        }
    }

    #[test]
    fn terminating_is_polynomial_of_degree_n() {
        // Degree-N polynomial: the (N+1)-th finite difference on a unit grid vanishes.
        let n = 5;
        let vals: Vec<f64> = (0..=n + 1)
            .map(|k| gauss_2f1(r(1.7), r(-(n as f64)), r(3.0), r(k as f64)).unwrap().re)
            .collect();
        let mut diff = vals.clone();
        for _ in 0..=n {
            diff = diff.windows(2).map(|w| w[1] - w[0]).collect();
        }
        let scale = vals.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        assert!(diff[0].abs() < 1e-10 * scale);
    }

    #[test]
    fn divergence_and_poles() {
        assert!(matches!(
            gauss_2f1(r(0.5), r(0.5), r(1.5), r(1.2)),
            Err(Error::Divergence { .. })
        ));
        assert!(matches!(gauss_2f1(r(0.5), r(0.5), r(-2.0), r(0.2)), Err(Error::Pole(_))));
        // c = -3 is fine when b = -2 stops the series first.
        assert!(gauss_2f1(r(0.5), r(-2.0), r(-3.0), r(0.2)).is_ok());
        assert!(matches!(gauss_2f1(r(0.5), r(-4.0), r(-3.0), r(0.2)), Err(Error::Pole(_))));
    }

    #[test]
    fn euler_identity() {
        for &(a, b, c) in &[(0.3, 1.2, 2.1), (1.5, -0.4, 3.3), (2.0, 0.5, 1.25)] {
            for &x in &[-0.45, -0.2, 0.1, 0.3, 0.45] {
                let lhs = gauss_2f1(r(a), r(b), r(c), r(x)).unwrap();
                let rhs = r(1.0 - x).powf(-b)
                    * gauss_2f1(r(c - a), r(b), r(c), r(x / (x - 1.0))).unwrap();
                assert!((lhs - rhs).norm() < 1e-12 * lhs.norm(), "a={a} b={b} c={c} x={x}");
            }
        }
    }

    #[test]
    fn kummer_examples() {
        assert_eq!(kummer_1f1(r(0.4), r(1.7), r(0.0)).unwrap(), r(1.0));
        let x = ComplexValue::new(0.8, 0.3);
        let v = kummer_1f1(r(-1.0), r(2.0), x).unwrap();
        assert!((v - (1.0 - x / 2.0)).norm() < 1e-15);
        let e = kummer_1f1(r(1.0), r(1.0), r(1.0)).unwrap();
        assert!((e.re - std::f64::consts::E).abs() < 1e-14);
    }

    #[test]
    fn kummer_transformation_grid() {
        for &a in &[-2.5, 0.3, 1.0, 2.7] {
            for &c in &[0.5, 2.0, 3.5] {
                for &z in &[-3.0, -0.7, 0.4, 2.2, 4.0] {
                    let lhs = kummer_1f1(r(a), r(c), r(z)).unwrap();
                    let rhs = r(z).exp() * kummer_1f1(r(c - a), r(c), r(-z)).unwrap();
                    assert!((lhs - rhs).norm() < 1e-12 * lhs.norm().max(1.0), "a={a} c={c} z={z}");
                }
            }
        }
    }

    #[test]
    fn tricomi_first_term_and_exact_case() {
        let a = ComplexValue::new(0.6, 0.2);
        let z = r(40.0);
        let one = tricomi_psi_asymptotic(a, r(1.9), z, 1).unwrap();
        assert!((one.value - z.powc(-a)).norm() < 1e-16);

        // a = c - 1 kills every correction: psi(a, a+1; z) = z^-a.
        let s = tricomi_psi_asymptotic(r(1.0), r(2.0), r(50.0), 8).unwrap();
        assert!((s.value.re - 0.02).abs() < 1e-17);
        assert_eq!(s.error_estimate, 0.0);
    }

    /// Romberg integration of U(a, c, z) = 1/Gamma(a) int_0^inf e^{-zt} t^{a-1} (1+t)^{c-a-1} dt
    /// for a = 1 after substituting u = z t.
    fn tricomi_quadrature_a1(c: f64, z: f64) -> f64 {
        let f = |u: f64| (-u).exp() * (1.0 + u / z).powf(c - 2.0) / z;
        let (lo, hi) = (0.0, 60.0);
        let levels = 18;
        let mut table = vec![vec![0.0; levels]; levels];
        let mut h = hi - lo;
        table[0][0] = 0.5 * h * (f(lo) + f(hi));
        for i in 1..levels {
            h *= 0.5;
            let count = 1usize << (i - 1);
            let mid: f64 = (0..count).map(|k| f(lo + (2 * k + 1) as f64 * h)).sum();
            table[i][0] = 0.5 * table[i - 1][0] + h * mid;
            for j in 1..=i {
                let p = 4f64.powi(j as i32);
                table[i][j] = table[i][j - 1] + (table[i][j - 1] - table[i - 1][j - 1]) / (p - 1.0);
            }
        }
        table[levels - 1][levels - 1]
    }

    #[test]
    fn tricomi_against_quadrature() {
        for &(c, z) in &[(2.5, 50.0), (0.5, 30.0), (3.2, 80.0)] {
            let s = tricomi_psi_asymptotic(r(1.0), r(c), r(z), 8).unwrap();
            let q = tricomi_quadrature_a1(c, z);
            assert!(
                (s.value.re - q).abs() <= s.error_estimate + 1e-14,
                "c={c} z={z}: asym {} quad {q} est {}",
                s.value.re,
                s.error_estimate
            );
        }
    }
}
