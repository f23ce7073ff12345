use std::cmp::Ordering;

use num_complex::Complex;
use serde::{Serialize, Serializer};

use super::eigen::backward_error;
use super::Matrix;
use crate::scalar::Real;

/// Eigenvalues in canonical order (real part descending, then imaginary part
/// descending) with a backward-error estimate for each.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum<T> {
    eigenvalues: Vec<Complex<T>>,
    residuals: Vec<T>,
}

impl<T: Real> Spectrum<T> {
    /// Symmetrizes conjugate pairs, sorts, and computes residuals against `mat`.
    pub(crate) fn from_raw(mat: &Matrix<T>, mut vals: Vec<Complex<T>>) -> Self {
        let tol = pairing_tolerance(&vals);
        symmetrize_conjugates(&mut vals, tol);
        vals.sort_by(canonical_cmp);
        let residuals = vals.iter().map(|&z| backward_error(mat, z)).collect();
        Spectrum { eigenvalues: vals, residuals }
    }

    /// From precomputed residuals; pairs are symmetrized and both lists are
    /// put in canonical order together.
    pub fn from_parts(mut vals: Vec<Complex<T>>, residuals: Vec<T>) -> Self {
        assert_eq!(vals.len(), residuals.len(), "one residual per eigenvalue");
        let tol = pairing_tolerance(&vals);
        symmetrize_conjugates(&mut vals, tol);
        let mut both: Vec<(Complex<T>, T)> = vals.into_iter().zip(residuals).collect();
        both.sort_by(|a, b| canonical_cmp(&a.0, &b.0));
        let (eigenvalues, residuals) = both.into_iter().unzip();
        Spectrum { eigenvalues, residuals }
    }

    pub fn eigenvalues(&self) -> &[Complex<T>] {
        &self.eigenvalues
    }

    pub fn residuals(&self) -> &[T] {
        &self.residuals
    }

    pub fn len(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.eigenvalues.is_empty()
    }

    pub fn max_residual(&self) -> T {
        self.residuals.iter().copied().fold(T::zero(), T::max)
    }

    pub fn spectral_radius(&self) -> T {
        self.eigenvalues.iter().map(|z| z.norm()).fold(T::zero(), T::max)
    }

    pub fn sum(&self) -> Complex<T> {
        self.eigenvalues.iter().fold(Complex::new(T::zero(), T::zero()), |acc, &z| acc + z)
    }

    /// `Σ λ_i^k`.
    pub fn power_sum(&self, k: u32) -> Complex<T> {
        self.eigenvalues.iter().fold(Complex::new(T::zero(), T::zero()), |acc, &z| acc + z.powu(k))
    }

    pub fn real_parts(&self) -> impl Iterator<Item = T> + '_ {
        self.eigenvalues.iter().map(|z| z.re)
    }

    /// Every non-real eigenvalue has a distinct partner within `tol` of its
    /// conjugate.
    pub fn is_conjugate_closed(&self, tol: T) -> bool {
        let mut used = vec![false; self.len()];
        for (i, &z) in self.eigenvalues.iter().enumerate() {
            if used[i] || z.im == T::zero() {
                continue;
            }
            used[i] = true;
            let partner = (0..self.len()).find(|&j| !used[j] && (self.eigenvalues[j] - z.conj()).norm() <= tol);
            match partner {
                Some(j) => used[j] = true,
                None => return false,
            }
        }
        true
    }

    /// Smallest `δ` such that the two multisets can be matched one-to-one
    /// with every pair within `δ`. `None` if the lengths differ.
    pub fn matching_distance(&self, other: &Spectrum<T>) -> Option<T> {
        multiset_distance(&self.eigenvalues, &other.eigenvalues)
    }

    /// Eigenvalues within `tol` of an integer, as `(index, integer)`. A
    /// diagnostic only: stored values are never snapped.
    pub fn near_integers(&self, tol: T) -> Vec<(usize, i64)> {
        self.eigenvalues
            .iter()
            .enumerate()
            .filter_map(|(i, z)| {
                let r = z.re.round();
                ((z - Complex::new(r, T::zero())).norm() <= tol).then(|| (i, r.to_i64().expect("small integer")))
            })
            .collect()
    }

    pub fn map_values(&self, f: impl Fn(Complex<T>) -> Complex<T>) -> Spectrum<T> {
        Spectrum::from_parts(self.eigenvalues.iter().map(|&z| f(z)).collect(), self.residuals.clone())
    }
}

impl<T: Real + Serialize> Serialize for Spectrum<T> {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let pairs: Vec<[T; 2]> = self.eigenvalues.iter().map(|z| [z.re, z.im]).collect();
        pairs.serialize(s)
    }
}

pub fn canonical_cmp<T: Real>(a: &Complex<T>, b: &Complex<T>) -> Ordering {
    b.re.partial_cmp(&a.re)
        .expect("finite eigenvalue")
        .then_with(|| b.im.partial_cmp(&a.im).expect("finite eigenvalue"))
}

fn pairing_tolerance<T: Real>(vals: &[Complex<T>]) -> T {
    let scale = vals.iter().map(|z| z.norm()).fold(T::one(), T::max);
    T::solver_tolerance().sqrt() * scale
}

/// Makes each near-conjugate pair exactly conjugate and snaps an unpaired
/// value with a tiny imaginary part to the real axis.
pub(crate) fn symmetrize_conjugates<T: Real>(vals: &mut [Complex<T>], tol: T) {
    let n = vals.len();
    let mut done = vec![false; n];
    for i in 0..n {
        if done[i] || vals[i].im <= T::zero() {
            continue;
        }
        let target = vals[i].conj();
        let partner = (0..n)
            .filter(|&j| !done[j] && j != i && vals[j].im < T::zero())
            .min_by(|&a, &b| {
                (vals[a] - target).norm().partial_cmp(&(vals[b] - target).norm()).expect("finite")
            });
        if let Some(j) = partner.filter(|&j| (vals[j] - target).norm() <= tol) {
            let two = T::c(2.0);
            let re = (vals[i].re + vals[j].re) / two;
            let im = (vals[i].im - vals[j].im) / two;
            vals[i] = Complex::new(re, im);
            vals[j] = Complex::new(re, -im);
            done[i] = true;
            done[j] = true;
        }
    }
    for (z, d) in vals.iter_mut().zip(&done) {
        if !d && z.im != T::zero() && z.im.abs() <= tol {
            z.im = T::zero();
        }
    }
}

/// Bottleneck matching distance between two multisets of complex numbers.
pub fn multiset_distance<T: Real>(a: &[Complex<T>], b: &[Complex<T>]) -> Option<T> {
    if a.len() != b.len() {
        return None;
    }
    if a.is_empty() {
        return Some(T::zero());
    }
    let mut cands: Vec<T> = a.iter().flat_map(|&x| b.iter().map(move |&y| (x - y).norm())).collect();
    cands.sort_by(|x, y| x.partial_cmp(y).expect("finite"));
    cands.dedup();
    let (mut lo, mut hi) = (0, cands.len() - 1);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if perfect_matching(a, b, cands[mid]) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Some(cands[lo])
}

fn perfect_matching<T: Real>(a: &[Complex<T>], b: &[Complex<T>], delta: T) -> bool {
    fn augment<T: Real>(
        i: usize,
        a: &[Complex<T>],
        b: &[Complex<T>],
        delta: T,
        seen: &mut [bool],
        owner: &mut [Option<usize>],
    ) -> bool {
        for j in 0..b.len() {
            if seen[j] || (a[i] - b[j]).norm() > delta {
                continue;
            }
            seen[j] = true;
            if owner[j].is_none_or(|k| augment(k, a, b, delta, seen, owner)) {
                owner[j] = Some(i);
                return true;
            }
        }
        false
    }
    let mut owner = vec![None; b.len()];
    (0..a.len()).all(|i| augment(i, a, b, delta, &mut vec![false; b.len()], &mut owner))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex<f64> {
        Complex::new(re, im)
    }

    #[test]
    fn canonical_order() {
        let s = Spectrum::from_parts(vec![c(0.0, -1.0), c(2.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0)], vec![0.0; 4]);
        assert_eq!(s.eigenvalues(), &[c(2.0, 0.0), c(0.0, 1.0), c(0.0, -1.0), c(-1.0, 0.0)]);
    }

    #[test]
    fn near_pairs_become_exact() {
        let s = Spectrum::from_parts(vec![c(0.5, 1.0 + 1e-12), c(0.5 + 2e-12, -1.0), c(3.0, 1e-13)], vec![0.0; 3]);
        assert_eq!(s.eigenvalues()[1], s.eigenvalues()[2].conj());
        assert_eq!(s.eigenvalues()[0], c(3.0, 0.0));
        assert!(s.is_conjugate_closed(0.0));
    }

    #[test]
    fn lonely_complex_value_is_not_closed() {
        let s = Spectrum::from_parts(vec![c(0.0, 1.0), c(1.0, 0.0)], vec![0.0; 2]);
        assert!(!s.is_conjugate_closed(1e-8));
    }

    #[test]
    fn bottleneck_matching() {
        let a = [c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0)];
        let b = [c(1.0, 1e-9), c(0.0, -2e-9), c(1.0, 0.0)];
        assert!((multiset_distance(&a, &b).unwrap() - 2e-9).abs() < 1e-20);
        // Greedy nearest-neighbour would fail here; the matching must not.
        let a = [c(0.0, 0.0), c(1.0, 0.0)];
        let b = [c(0.6, 0.0), c(1.7, 0.0)];
        assert!((multiset_distance(&a, &b).unwrap() - 0.7).abs() < 1e-15);
        assert_eq!(multiset_distance(&a, &b[..1]), None);
    }

    #[test]
    fn near_integer_diagnostic() {
        let s = Spectrum::from_parts(vec![c(2.0 + 1e-10, 0.0), c(0.5, 0.0), c(-1.0, 0.0)], vec![0.0; 3]);
        assert_eq!(s.near_integers(1e-8), vec![(0, 2), (2, -1)]);
        assert_eq!(s.eigenvalues()[0].re, 2.0 + 1e-10);
    }
}
