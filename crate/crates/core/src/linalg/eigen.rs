use num_complex::Complex;

use super::{LinalgError, Matrix, Spectrum};
use crate::scalar::Real;

/// Eigenvalues by Householder reduction to Hessenberg form followed by the
/// Francis double-shift QR iteration. Residuals are backward errors from one
/// round of inverse iteration.
pub fn eigenvalues<T: Real>(mat: &Matrix<T>) -> Result<Spectrum<T>, LinalgError> {
    let raw = raw_eigenvalues(mat)?;
    Ok(Spectrum::from_raw(mat, raw))
}

/// Like [`eigenvalues`], then replaces each cluster of a repeated eigenvalue
/// by its mean. `profile` lists root multiplicities (as from
/// [`super::CharPoly::multiplicity_profile`]).
///
/// QR scatters a `k`-fold defective eigenvalue over a circle of radius about
/// `ε^{1/k}`; the scatter is symmetric, so the mean is accurate to roughly
/// machine precision.
pub fn eigenvalues_with_profile<T: Real>(mat: &Matrix<T>, profile: &[usize]) -> Result<Spectrum<T>, LinalgError> {
    let mut raw = raw_eigenvalues(mat)?;
    polish_clusters(&mut raw, profile);
    Ok(Spectrum::from_raw(mat, raw))
}

pub(crate) fn raw_eigenvalues<T: Real>(mat: &Matrix<T>) -> Result<Vec<Complex<T>>, LinalgError> {
    if !mat.is_finite() {
        return Err(LinalgError::NonFinite);
    }
    let mut h = mat.clone();
    hessenberg(&mut h);
    hqr(&mut h)
}

/// Groups multiple roots and averages each group. Higher multiplicities are
/// claimed first; each takes the tightest `k`-subset of what is left.
pub(crate) fn polish_clusters<T: Real>(vals: &mut [Complex<T>], profile: &[usize]) {
    let mut mults: Vec<usize> = profile.iter().copied().filter(|&k| k >= 2).collect();
    mults.sort_unstable_by(|a, b| b.cmp(a));
    let mut free = vec![true; vals.len()];
    for k in mults {
        let mut best: Option<(T, Vec<usize>)> = None;
        for seed in (0..vals.len()).filter(|&i| free[i]) {
            let mut near: Vec<usize> = (0..vals.len()).filter(|&i| free[i]).collect();
            if near.len() < k {
                return;
            }
            near.sort_by(|&a, &b| {
                let da = (vals[a] - vals[seed]).norm();
                let db = (vals[b] - vals[seed]).norm();
                da.partial_cmp(&db).expect("finite eigenvalues")
            });
            near.truncate(k);
            let spread = (vals[near[k - 1]] - vals[seed]).norm();
            if best.as_ref().is_none_or(|(s, _)| spread < *s) {
                best = Some((spread, near));
            }
        }
        let Some((_, group)) = best else { return };
        let kt = T::from_usize_lossy(k);
        let mean = group.iter().fold(Complex::new(T::zero(), T::zero()), |acc, &i| acc + vals[i]) / kt;
        for &i in &group {
            vals[i] = mean;
            free[i] = false;
        }
    }
}

/// Householder reduction to upper Hessenberg form, in place.
fn hessenberg<T: Real>(h: &mut Matrix<T>) {
    let n = h.order();
    if n < 3 {
        return;
    }
    let high = n - 1;
    let mut ort = vec![T::zero(); n];
    for m in 1..high {
        let scale = (m..=high).map(|i| h[(i, m - 1)].abs()).sum::<T>();
        if scale == T::zero() {
            continue;
        }
        let mut hh = T::zero();
        for i in (m..=high).rev() {
            ort[i] = h[(i, m - 1)] / scale;
            hh = hh + ort[i] * ort[i];
        }
        let mut g = hh.sqrt();
        if ort[m] > T::zero() {
            g = -g;
        }
        hh = hh - ort[m] * g;
        ort[m] = ort[m] - g;
        for j in m..n {
            let f = (m..=high).rev().map(|i| ort[i] * h[(i, j)]).sum::<T>() / hh;
            for i in m..=high {
                h[(i, j)] = h[(i, j)] - f * ort[i];
            }
        }
        for i in 0..=high {
            let f = (m..=high).rev().map(|j| ort[j] * h[(i, j)]).sum::<T>() / hh;
            for j in m..=high {
                h[(i, j)] = h[(i, j)] - f * ort[j];
            }
        }
        ort[m] = scale * ort[m];
        h[(m, m - 1)] = scale * g;
    }
    for i in 2..n {
        for j in 0..i - 1 {
            h[(i, j)] = T::zero();
        }
    }
}

/// Francis double-shift QR on an upper Hessenberg matrix (eigenvalues only).
fn hqr<T: Real>(hm: &mut Matrix<T>) -> Result<Vec<Complex<T>>, LinalgError> {
    let nn = hm.order() as isize;
    let cap = 100 * hm.order();
    let zero = T::zero();
    let two = T::c(2.0);
    let eps = T::epsilon();

    macro_rules! h {
        ($i:expr, $j:expr) => {
            hm[(($i) as usize, ($j) as usize)]
        };
    }

    let mut d = vec![zero; nn as usize];
    let mut e = vec![zero; nn as usize];
    let mut norm = zero;
    for i in 0..nn {
        for j in (i - 1).max(0)..nn {
            norm = norm + h!(i, j).abs();
        }
    }

    let mut n = nn - 1;
    let mut exshift = zero;
    let (mut p, mut q, mut r) = (zero, zero, zero);
    let (mut s, mut z);
    let (mut w, mut x, mut y);
    let mut iter = 0;
    let mut total = 0;

    while n >= 0 {
        let mut l = n;
        while l > 0 {
            s = h!(l - 1, l - 1).abs() + h!(l, l).abs();
            if s == zero {
                s = norm;
            }
            if h!(l, l - 1) == zero || h!(l, l - 1).abs() < eps * s {
                break;
            }
            l -= 1;
        }

        if l == n {
            h!(n, n) = h!(n, n) + exshift;
            d[n as usize] = h!(n, n);
            e[n as usize] = zero;
            n -= 1;
            iter = 0;
        } else if l == n - 1 {
            w = h!(n, n - 1) * h!(n - 1, n);
            p = (h!(n - 1, n - 1) - h!(n, n)) / two;
            q = p * p + w;
            z = q.abs().sqrt();
            h!(n, n) = h!(n, n) + exshift;
            h!(n - 1, n - 1) = h!(n - 1, n - 1) + exshift;
            x = h!(n, n);
            let (a, b) = ((n - 1) as usize, n as usize);
            if q >= zero {
                z = if p >= zero { p + z } else { p - z };
                d[a] = x + z;
                d[b] = d[a];
                if z != zero {
                    d[b] = x - w / z;
                }
                e[a] = zero;
                e[b] = zero;
            } else {
                d[a] = x + p;
                d[b] = x + p;
                e[a] = z;
                e[b] = -z;
            }
            n -= 2;
            iter = 0;
        } else {
            x = h!(n, n);
            y = h!(n - 1, n - 1);
            w = h!(n, n - 1) * h!(n - 1, n);

            if iter == 10 {
                exshift = exshift + x;
                for i in 0..=n {
                    h!(i, i) = h!(i, i) - x;
                }
                s = h!(n, n - 1).abs() + h!(n - 1, n - 2).abs();
                x = T::c(0.75) * s;
                y = x;
                w = T::c(-0.4375) * s * s;
            }
            if iter == 30 {
                s = (y - x) / two;
                s = s * s + w;
                if s > zero {
                    s = s.sqrt();
                    if y < x {
                        s = -s;
                    }
                    s = x - w / ((y - x) / two + s);
                    for i in 0..=n {
                        h!(i, i) = h!(i, i) - s;
                    }
                    exshift = exshift + s;
                    x = T::c(0.964);
                    y = x;
                    w = x;
                }
            }

            iter += 1;
            total += 1;
            if total > cap {
                return Err(LinalgError::NoConvergence { iterations: total });
            }

            let mut m = n - 2;
            while m >= l {
                z = h!(m, m);
                r = x - z;
                s = y - z;
                p = (r * s - w) / h!(m + 1, m) + h!(m, m + 1);
                q = h!(m + 1, m + 1) - z - r - s;
                r = h!(m + 2, m + 1);
                s = p.abs() + q.abs() + r.abs();
                p = p / s;
                q = q / s;
                r = r / s;
                if m == l {
                    break;
                }
                let lhs = h!(m, m - 1).abs() * (q.abs() + r.abs());
                let rhs = eps * (p.abs() * (h!(m - 1, m - 1).abs() + z.abs() + h!(m + 1, m + 1).abs()));
                if lhs < rhs {
                    break;
                }
                m -= 1;
            }

            for i in m + 2..=n {
                h!(i, i - 2) = zero;
                if i > m + 2 {
                    h!(i, i - 3) = zero;
                }
            }

            let mut k = m;
            while k < n {
                let notlast = k != n - 1;
                if k != m {
                    p = h!(k, k - 1);
                    q = h!(k + 1, k - 1);
                    r = if notlast { h!(k + 2, k - 1) } else { zero };
                    x = p.abs() + q.abs() + r.abs();
                    if x == zero {
                        k += 1;
                        continue;
                    }
                    p = p / x;
                    q = q / x;
                    r = r / x;
                }
                s = (p * p + q * q + r * r).sqrt();
                if p < zero {
                    s = -s;
                }
                if s != zero {
                    if k != m {
                        h!(k, k - 1) = -s * x;
                    } else if l != m {
                        h!(k, k - 1) = -h!(k, k - 1);
                    }
                    p = p + s;
                    x = p / s;
                    y = q / s;
                    z = r / s;
                    q = q / p;
                    r = r / p;

                    for j in k..nn {
                        p = h!(k, j) + q * h!(k + 1, j);
                        if notlast {
                            p = p + r * h!(k + 2, j);
                            h!(k + 2, j) = h!(k + 2, j) - p * z;
                        }
                        h!(k, j) = h!(k, j) - p * x;
                        h!(k + 1, j) = h!(k + 1, j) - p * y;
                    }
                    for i in 0..=n.min(k + 3) {
                        p = x * h!(i, k) + y * h!(i, k + 1);
                        if notlast {
                            p = p + z * h!(i, k + 2);
                            h!(i, k + 2) = h!(i, k + 2) - p * r;
                        }
                        h!(i, k) = h!(i, k) - p;
                        h!(i, k + 1) = h!(i, k + 1) - p * q;
                    }
                }
                k += 1;
            }
        }
    }
    Ok(d.into_iter().zip(e).map(|(re, im)| Complex::new(re, im)).collect())
}

/// Backward error `‖(A − λI)x‖ / (‖A‖_F ‖x‖)` for an approximate eigenvector
/// `x` from two steps of inverse iteration.
pub fn backward_error<T: Real>(mat: &Matrix<T>, lambda: Complex<T>) -> T {
    let n = mat.order();
    let norm = mat.frobenius_norm();
    if norm == T::zero() {
        return lambda.norm();
    }
    let shifted = |i: usize, j: usize| {
        let a = Complex::new(mat[(i, j)], T::zero());
        if i == j {
            a - lambda
        } else {
            a
        }
    };
    let mut lu: Vec<Complex<T>> = (0..n * n).map(|k| shifted(k / n, k % n)).collect();
    let mut perm: Vec<usize> = (0..n).collect();
    let tiny = T::epsilon() * norm;
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&a, &b| lu[a * n + col].norm().partial_cmp(&lu[b * n + col].norm()).expect("finite"))
            .expect("non-empty range");
        if pivot != col {
            for j in 0..n {
                lu.swap(col * n + j, pivot * n + j);
            }
            perm.swap(col, pivot);
        }
        if lu[col * n + col].norm() < tiny {
            lu[col * n + col] = Complex::new(tiny, T::zero());
        }
        let diag = lu[col * n + col];
        for i in col + 1..n {
            let f = lu[i * n + col] / diag;
            lu[i * n + col] = f;
            for j in col + 1..n {
                let u = lu[col * n + j];
                lu[i * n + j] = lu[i * n + j] - f * u;
            }
        }
    }
    let solve = |rhs: &[Complex<T>]| -> Vec<Complex<T>> {
        let mut y: Vec<Complex<T>> = perm.iter().map(|&p| rhs[p]).collect();
        for i in 0..n {
            for j in 0..i {
                let l = lu[i * n + j];
                y[i] = y[i] - l * y[j];
            }
        }
        for i in (0..n).rev() {
            for j in i + 1..n {
                let u = lu[i * n + j];
                y[i] = y[i] - u * y[j];
            }
            y[i] = y[i] / lu[i * n + i];
        }
        let scale = y.iter().map(|c| c.norm()).fold(T::zero(), T::max);
        y.iter().map(|&c| c / scale).collect()
    };
    let start: Vec<Complex<T>> =
        (0..n).map(|i| Complex::new(T::one() + T::from_usize_lossy(i) / T::from_usize_lossy(n + 1), T::zero())).collect();
    let x = solve(&solve(&start));
    let mut num = T::zero();
    let mut den = T::zero();
    for i in 0..n {
        let mut acc = Complex::new(T::zero(), T::zero());
        for j in 0..n {
            acc = acc + shifted(i, j) * x[j];
        }
        num = num + acc.norm_sqr();
        den = den + x[i].norm_sqr();
    }
    (num / den).sqrt() / norm
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, Digraph, Family};
    use crate::linalg::{adjacency, char_poly_exact};

    fn close(a: Complex<f64>, re: f64, im: f64, tol: f64) -> bool {
        (a.re - re).abs() < tol && (a.im - im).abs() < tol
    }

    #[test]
    fn golden_ratio_pair() {
        let k2p = Digraph::new(2, &[(0, 1), (1, 0)], &[0]).unwrap();
        let s = eigenvalues::<f64>(&adjacency(&k2p)).unwrap();
        let phi = (1.0 + 5f64.sqrt()) / 2.0;
        assert!(close(s.eigenvalues()[0], phi, 0.0, 1e-14));
        assert!(close(s.eigenvalues()[1], 1.0 - phi, 0.0, 1e-14));
    }

    #[test]
    fn loop_c3_spectrum() {
        let d = Digraph::new(3, &[(0, 2), (2, 1), (1, 0)], &[0, 2]).unwrap();
        let s = eigenvalues::<f64>(&adjacency(&d)).unwrap();
        let ev = s.eigenvalues();
        assert!(close(ev[0], 1.7549, 0.0, 5e-5));
        assert!(close(ev[1], 0.1226, 0.7449, 5e-5));
        assert!(close(ev[2], 0.1226, -0.7449, 5e-5));
        assert_eq!(ev[1], ev[2].conj());
        assert!(s.max_residual() < 1e-10);
    }

    #[test]
    fn all_ones_matrix() {
        for n in 1..=7 {
            let j = Matrix::from_fn(n, |_, _| 1.0f64);
            let s = eigenvalues(&j).unwrap();
            assert!((s.eigenvalues()[0].re - n as f64).abs() < 1e-12);
            for z in &s.eigenvalues()[1..] {
                assert!(z.norm() < 1e-12, "n={n}: {z}");
            }
        }
    }

    #[test]
    fn directed_cycle_roots_of_unity() {
        let c = generate(&Family::DirectedCycle { n: 7, loops: vec![] }).unwrap();
        let s = eigenvalues::<f64>(&adjacency(&c)).unwrap();
        for z in s.eigenvalues() {
            assert!((z.norm() - 1.0).abs() < 1e-12);
            assert!((z.powu(7) - Complex::new(1.0, 0.0)).norm() < 1e-10);
        }
    }

    #[test]
    fn defective_eigenvalue_is_recovered_by_cluster_polish() {
        // Single Jordan block: path with loops everywhere.
        let d = Digraph::new(5, &[(0, 1), (1, 2), (2, 3), (3, 4)], &[0, 1, 2, 3, 4]).unwrap();
        let a = adjacency::<f64>(&d);
        let profile = char_poly_exact(&adjacency(&d)).multiplicity_profile();
        assert_eq!(profile, vec![5]);
        let s = eigenvalues_with_profile(&a, &profile).unwrap();
        for z in s.eigenvalues() {
            assert!(close(*z, 1.0, 0.0, 1e-13), "{z}");
        }
        // The nilpotent case is triangular and exact already.
        let d = Digraph::new(4, &[(0, 1), (1, 2), (2, 3)], &[]).unwrap();
        let s = eigenvalues::<f64>(&adjacency(&d)).unwrap();
        assert!(s.eigenvalues().iter().all(|z| z.norm() == 0.0));
    }

    #[test]
    fn zero_matrix() {
        for n in 1..6 {
            let s = eigenvalues::<f64>(&Matrix::zeros(n)).unwrap();
            assert!(s.eigenvalues().iter().all(|z| z.norm() == 0.0));
        }
    }

    #[test]
    fn non_finite_rejected() {
        let m = Matrix::from_fn(2, |i, _| if i == 0 { f64::NAN } else { 1.0 });
        assert!(matches!(eigenvalues(&m), Err(LinalgError::NonFinite)));
    }

    #[test]
    fn single_precision() {
        let k2p = Digraph::new(2, &[(0, 1), (1, 0)], &[0]).unwrap();
        let s = eigenvalues::<f32>(&adjacency(&k2p)).unwrap();
        assert!((s.eigenvalues()[0].re - 1.618034).abs() < 1e-5);
    }

    #[test]
    fn residual_of_exact_and_wrong_eigenvalues() {
        let a = adjacency::<f64>(&generate(&Family::Complete { n: 4, loops: vec![] }).unwrap());
        assert!(backward_error(&a, Complex::new(3.0, 0.0)) < 1e-14);
        assert!(backward_error(&a, Complex::new(-1.0, 0.0)) < 1e-14);
        assert!(backward_error(&a, Complex::new(0.5, 0.0)) > 1e-3);
    }
}
