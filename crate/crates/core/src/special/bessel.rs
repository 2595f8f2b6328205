use super::gamma::log_gamma;
use super::{ensure_finite, nonpositive_integer, ComplexValue, MAX_SERIES_TERMS, SERIES_EPS};
use crate::error::{Error, Result};

fn reciprocal_gamma(x: ComplexValue) -> Result<ComplexValue> {
    if nonpositive_integer(x).is_some() {
        Ok(ComplexValue::new(0.0, 0.0))
    } else {
        Ok((-log_gamma(x)?).exp())
    }
}

/// Bessel function of the first kind `J_nu(z)` from its power series,
/// principal branch for `(z/2)^nu`.
pub fn bessel_j(nu: ComplexValue, z: ComplexValue) -> Result<ComplexValue> {
    ensure_finite(nu, "bessel_j order")?;
    ensure_finite(z, "bessel_j argument")?;
    let zero = ComplexValue::new(0.0, 0.0);
    if z == zero {
        if nu == zero {
            return Ok(ComplexValue::new(1.0, 0.0));
        }
        if nu.re > 0.0 || nonpositive_integer(nu).is_some() {
            // J_{-n}(0) = (-1)^n J_n(0) = 0 for n >= 1.
            return Ok(zero);
        }
        return Err(Error::Pole(format!("bessel_j({nu}, 0) is singular")));
    }

    let half = z / 2.0;
    let prefactor = half.powc(nu);
    let q = -half * half;

    // term_m = q^m / m! / Gamma(m + nu + 1)
    let mut rg = reciprocal_gamma(nu + 1.0)?;
    let mut power = ComplexValue::new(1.0, 0.0);
    let mut sum = zero;
    let mut small_run = 0;
    for m in 0..MAX_SERIES_TERMS {
        let term = power * rg;
        sum += term;
        if m as f64 > half.norm() && sum != zero && term.norm() <= SERIES_EPS * sum.norm() {
            small_run += 1;
            if small_run >= 2 {
                return ensure_finite(prefactor * sum, "bessel_j");
            }
        } else {
            small_run = 0;
        }
        let mf = m as f64;
        power *= q / (mf + 1.0);
        let next_arg = nu + mf + 2.0;
        rg = if rg == zero {
            reciprocal_gamma(next_arg)?
        } else {
            rg / (nu + mf + 1.0)
        };
    }
    Err(Error::Divergence {
        terms: MAX_SERIES_TERMS,
        context: "bessel_j".into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(x: f64) -> ComplexValue {
        ComplexValue::new(x, 0.0)
    }

    #[test]
    fn values_at_origin() {
        assert_eq!(bessel_j(r(0.0), r(0.0)).unwrap(), r(1.0));
        assert_eq!(bessel_j(r(1.0), r(0.0)).unwrap(), r(0.0));
        assert!(matches!(bessel_j(r(-0.5), r(0.0)), Err(Error::Pole(_))));
    }

    #[test]
    fn first_zero_of_j0_by_bisection() {
        let f = |x: f64| bessel_j(r(0.0), r(x)).unwrap().re;
        let (mut lo, mut hi) = (2.0, 3.0);
        assert!(f(lo) > 0.0 && f(hi) < 0.0);
        for _ in 0..60 {
            let mid = 0.5 * (lo + hi);
            if f(mid) > 0.0 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        assert!((lo - 2.404_825_557_695_773).abs() < 1e-12);
        assert!(f(2.4048256).abs() < 1e-7);
    }

    #[test]
    fn half_integer_closed_form() {
        // J_{1/2}(x) = sqrt(2 / (pi x)) sin x
        for &x in &[0.3, 1.7, 6.5] {
            let v = bessel_j(r(0.5), r(x)).unwrap();
            let expect = (2.0 / (std::f64::consts::PI * x)).sqrt() * x.sin();
            assert!((v.re - expect).abs() < 1e-14);
        }
    }

    #[test]
    fn negative_integer_order_symmetry() {
        for n in 1..5 {
            for &x in &[0.4, 2.2, 5.1] {
                let neg = bessel_j(r(-(n as f64)), r(x)).unwrap();
                let pos = bessel_j(r(n as f64), r(x)).unwrap();
                let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
                assert!((neg - sign * pos).norm() < 1e-14, "n={n} x={x}");
            }
        }
    }
}
