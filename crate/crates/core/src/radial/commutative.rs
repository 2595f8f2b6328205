use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::special::kummer_1f1;

/// Ordinary-QM regular solution `e^{ikr} phi(j+1 - i alpha/k, 2j+2, -2ikr)`
/// with `k = sqrt(2E)` on the principal branch; `R(0) = 1`.
pub fn commutative_radial(j: u32, energy: f64, alpha: f64, r: f64) -> Result<Complex64> {
    if energy == 0.0 {
        return Err(Error::Precondition("commutative_radial needs E != 0".into()));
    }
    let k = Complex64::new(2.0 * energy, 0.0).sqrt();
    let i = Complex64::i();
    let a = j as f64 + 1.0 - i * alpha / k;
    let value = (i * k * r).exp() * kummer_1f1(a, Complex64::new(2.0 * j as f64 + 2.0, 0.0), -2.0 * i * k * r)?;
    Ok(value)
}

/// Hydrogen-like bound state `e^{-alpha r/n} phi(j+1-n, 2j+2, 2 alpha r/n)`,
/// the previous formula at `k = i alpha/n`.
pub fn commutative_bound_state(n: u32, j: u32, alpha: f64, r: f64) -> Result<f64> {
    if n < j + 1 {
        return Err(Error::Precondition(format!("principal number {n} must exceed j = {j}")));
    }
    let x = 2.0 * alpha * r / n as f64;
    let a = Complex64::new(j as f64 + 1.0 - n as f64, 0.0);
    let phi = kummer_1f1(a, Complex64::new(2.0 * j as f64 + 2.0, 0.0), Complex64::new(x, 0.0))?;
    Ok((-0.5 * x).exp() * phi.re)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn value_at_origin() {
        assert_eq!(commutative_radial(2, 0.7, 1.3, 0.0).unwrap(), Complex64::new(1.0, 0.0));
    }

    #[test]
    fn real_for_real_inputs() {
        for &(j, e, a, r) in &[(0, 0.5, 1.0, 2.0), (1, 1.7, -0.6, 3.5), (3, 0.2, 2.0, 4.0)] {
            let v = commutative_radial(j, e, a, r).unwrap();
            assert!(v.im.abs() < 1e-12 * v.norm().max(1e-3), "{v}");
        }
    }

    #[test]
    fn bound_state_is_pole_continuation() {
        let alpha = 1.2;
        for n in 1..=3u32 {
            for j in 0..n {
                let e = -alpha * alpha / (2.0 * (n * n) as f64);
                for &r in &[0.3, 1.0, 2.5] {
                    let via_k = commutative_radial(j, e, alpha, r).unwrap();
                    let direct = commutative_bound_state(n, j, alpha, r).unwrap();
                    assert!((via_k.re - direct).abs() < 1e-12 && via_k.im.abs() < 1e-12);
                }
            }
        }
        // 1s: e^{-alpha r}
        let v = commutative_bound_state(1, 0, 1.0, 0.8).unwrap();
        assert!((v - (-0.8f64).exp()).abs() < 1e-15);
    }
}
