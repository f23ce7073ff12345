use num_complex::Complex;

use super::charpoly::{horner, to_real};
use super::{CharPoly, LinalgError, Spectrum};
use crate::scalar::Real;

const MAX_SWEEPS: usize = 500;

/// All roots of the characteristic polynomial by Aberth–Ehrlich iteration on
/// each square-free factor, repeated by multiplicity.
pub fn poly_roots<T: Real>(p: &CharPoly) -> Result<Spectrum<T>, LinalgError> {
    let mut roots = Vec::with_capacity(p.degree());
    let mut residuals = Vec::with_capacity(p.degree());
    for factor in p.squarefree_factors() {
        let coeffs: Vec<T> = to_real(&factor.poly);
        for z in aberth(&coeffs)? {
            let res = relative_residual(&coeffs, z);
            for _ in 0..factor.multiplicity {
                roots.push(z);
                residuals.push(res);
            }
        }
    }
    Ok(Spectrum::from_parts(roots, residuals))
}

/// `|f(z)| / Σ |f_k| |z|^k`.
pub fn relative_residual<T: Real>(coeffs: &[T], z: Complex<T>) -> T {
    let num = horner(coeffs, z).norm();
    let r = z.norm();
    let den = coeffs.iter().rev().fold(T::zero(), |acc, &c| acc * r + c.abs());
    if den == T::zero() {
        num
    } else {
        num / den
    }
}

fn derivative<T: Real>(coeffs: &[T]) -> Vec<T> {
    coeffs.iter().enumerate().skip(1).map(|(k, &c)| c * T::from_usize_lossy(k)).collect()
}

/// Simultaneous root iteration for a polynomial with simple roots.
/// `coeffs` is ascending with a non-zero leading entry.
fn aberth<T: Real>(coeffs: &[T]) -> Result<Vec<Complex<T>>, LinalgError> {
    let deg = coeffs.len() - 1;
    let zero = T::zero();
    let lead = coeffs[deg];
    let monic: Vec<T> = coeffs.iter().map(|&c| c / lead).collect();
    if deg == 1 {
        return Ok(vec![Complex::new(-monic[0], zero)]);
    }
    let dmonic = derivative(&monic);

    // Start on a circle around the centroid, radius from the Fujiwara bound.
    let degt = T::from_usize_lossy(deg);
    let center = -monic[deg - 1] / degt;
    let radius = (0..deg)
        .map(|k| {
            let c = monic[k].abs();
            if k == 0 {
                (c / T::c(2.0)).powf(T::one() / degt)
            } else {
                c.powf(T::one() / T::from_usize_lossy(deg - k))
            }
        })
        .fold(zero, T::max)
        * T::c(2.0);
    let radius = radius.max(T::one());
    let mut z: Vec<Complex<T>> = (0..deg)
        .map(|k| {
            let angle = T::TAU() * T::from_usize_lossy(k) / degt + T::c(0.4);
            Complex::new(center, zero) + Complex::from_polar(radius, angle)
        })
        .collect();

    // A root is frozen once its residual is at the rounding level of Horner's rule.
    let floor = T::epsilon() * T::from_usize_lossy(4 * deg);
    let mut done = vec![false; deg];
    for _ in 0..MAX_SWEEPS {
        for k in 0..deg {
            if done[k] {
                continue;
            }
            if relative_residual(&monic, z[k]) <= floor {
                done[k] = true;
                continue;
            }
            let ratio = horner(&monic, z[k]) / horner(&dmonic, z[k]);
            let repulsion = (0..deg)
                .filter(|&j| j != k)
                .fold(Complex::new(zero, zero), |acc, j| acc + (z[k] - z[j]).inv());
            let mut step = ratio / (Complex::new(T::one(), zero) - ratio * repulsion);
            if !step.re.is_finite() || !step.im.is_finite() {
                step = ratio;
            }
            if step.re.is_finite() && step.im.is_finite() {
                z[k] = z[k] - step;
            }
        }
        if done.iter().all(|&d| d) {
            return Ok(polish(&monic, &dmonic, z));
        }
    }
    Err(LinalgError::NoConvergence { iterations: MAX_SWEEPS })
}

/// A couple of Newton steps, then conjugate symmetrization.
fn polish<T: Real>(monic: &[T], dmonic: &[T], mut z: Vec<Complex<T>>) -> Vec<Complex<T>> {
    for zk in z.iter_mut() {
        for _ in 0..2 {
            let df = horner(dmonic, *zk);
            if df.norm() == T::zero() {
                break;
            }
            let next = *zk - horner(monic, *zk) / df;
            if relative_residual(monic, next) <= relative_residual(monic, *zk) {
                *zk = next;
            }
        }
    }
    z
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn poly(v: &[i64]) -> CharPoly {
        CharPoly::from_monic(v.iter().map(|&x| BigInt::from(x)).collect()).unwrap()
    }

    #[test]
    fn loop_c3_roots() {
        let s = poly_roots::<f64>(&poly(&[-1, 1, -2, 1])).unwrap();
        let ev = s.eigenvalues();
        assert!((ev[0].re - 1.7549).abs() < 5e-5 && ev[0].im == 0.0);
        assert!((ev[1].re - 0.1226).abs() < 5e-5 && (ev[1].im - 0.7449).abs() < 5e-5);
        assert_eq!(ev[2], ev[1].conj());
        assert!(s.max_residual() <= 1e-9);
    }

    #[test]
    fn repeated_root() {
        // (λ - 1)^6
        let s = poly_roots::<f64>(&poly(&[1, -6, 15, -20, 15, -6, 1])).unwrap();
        assert_eq!(s.len(), 6);
        assert!(s.eigenvalues().iter().all(|&z| z == Complex::new(1.0, 0.0)));
    }

    #[test]
    fn golden_ratio() {
        let s = poly_roots::<f64>(&poly(&[-1, -1, 1])).unwrap();
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!((s.eigenvalues()[0].re - phi).abs() < 1e-15);
        assert!((s.eigenvalues()[1].re - (1.0 - phi)).abs() < 1e-15);
    }

    #[test]
    fn roots_of_unity() {
        // λ^8 - 1
        let s = poly_roots::<f64>(&poly(&[-1, 0, 0, 0, 0, 0, 0, 0, 1])).unwrap();
        for z in s.eigenvalues() {
            assert!((z.norm() - 1.0).abs() < 1e-14);
        }
        assert!(s.is_conjugate_closed(0.0));
    }

    #[test]
    fn degree_one_and_zero_roots() {
        let s = poly_roots::<f64>(&poly(&[0, 1])).unwrap();
        assert_eq!(s.eigenvalues(), &[Complex::new(0.0, 0.0)]);
        let s = poly_roots::<f64>(&poly(&[0, 0, -4, 0, 1])).unwrap();
        let re: Vec<f64> = s.eigenvalues().iter().map(|z| z.re).collect();
        assert_eq!(re, vec![2.0, 0.0, 0.0, -2.0]);
    }
}
