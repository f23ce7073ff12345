use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{CheckedAdd, CheckedMul, CheckedSub, One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use super::{LinalgError, Matrix};
use crate::graph::Digraph;
use crate::scalar::Real;

/// Largest order accepted by [`linear_subdigraph_charpoly`].
pub const LINEAR_SUBDIGRAPH_MAX_N: usize = 8;

/// Monic integer characteristic polynomial.
///
/// `coeffs[k]` is the coefficient of `λ^k` for `k < n`; the leading `λ^n`
/// coefficient is an implicit 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CharPoly {
    coeffs: Vec<BigInt>,
}

/// One factor of a square-free decomposition: `poly` (primitive, ascending,
/// positive leading coefficient) raised to `multiplicity`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquarefreeFactor {
    pub multiplicity: usize,
    pub poly: Vec<BigInt>,
}

impl CharPoly {
    /// From the non-leading coefficients `[a_0, …, a_{n-1}]`.
    pub fn from_lower(coeffs: Vec<BigInt>) -> Self {
        CharPoly { coeffs }
    }

    /// From all `n + 1` ascending coefficients; the last must be 1.
    pub fn from_monic(mut coeffs: Vec<BigInt>) -> Option<Self> {
        if coeffs.last().is_some_and(|c| c.is_one()) {
            coeffs.pop();
            Some(CharPoly { coeffs })
        } else {
            None
        }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len()
    }

    /// Coefficient of `λ^k`; zero above the degree.
    pub fn coefficient(&self, k: usize) -> BigInt {
        match k.cmp(&self.degree()) {
            std::cmp::Ordering::Less => self.coeffs[k].clone(),
            std::cmp::Ordering::Equal => BigInt::one(),
            std::cmp::Ordering::Greater => BigInt::zero(),
        }
    }

    pub fn lower_coefficients(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// All `n + 1` coefficients, ascending, including the leading 1.
    pub fn coefficients(&self) -> Vec<BigInt> {
        let mut out = self.coeffs.clone();
        out.push(BigInt::one());
        out
    }

    /// Coefficients as `i64`, ascending with the leading 1. `None` on overflow.
    pub fn coefficients_i64(&self) -> Option<Vec<i64>> {
        self.coefficients().iter().map(ToPrimitive::to_i64).collect()
    }

    pub fn eval<T: Real>(&self, z: Complex<T>) -> Complex<T> {
        horner(&to_real(&self.coefficients()), z)
    }

    /// Yun's square-free decomposition over the rationals.
    pub fn squarefree_factors(&self) -> Vec<SquarefreeFactor> {
        let f: Vec<BigRational> = self.coefficients().into_iter().map(BigRational::from_integer).collect();
        let df = derivative(&f);
        let b = gcd(&f, &df);
        let mut c = divide_exact(&f, &b);
        let mut d = sub(&divide_exact(&df, &b), &derivative(&c));
        let mut out = Vec::new();
        let mut i = 1;
        while degree(&c) > 0 {
            let a = gcd(&c, &d);
            c = divide_exact(&c, &a);
            d = sub(&divide_exact(&d, &a), &derivative(&c));
            if degree(&a) > 0 {
                out.push(SquarefreeFactor { multiplicity: i, poly: primitive(&a) });
            }
            i += 1;
        }
        out
    }

    /// Multiplicities of the distinct roots, one entry per root, descending.
    pub fn multiplicity_profile(&self) -> Vec<usize> {
        let mut profile: Vec<usize> = self
            .squarefree_factors()
            .iter()
            .flat_map(|f| std::iter::repeat_n(f.multiplicity, f.poly.len() - 1))
            .collect();
        profile.sort_unstable_by(|a, b| b.cmp(a));
        profile
    }
}

/// Ascending coefficients including the leading 1. Values outside the `i64`
/// range are written as decimal strings.
impl Serialize for CharPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let values: Vec<serde_json::Value> = self
            .coefficients()
            .iter()
            .map(|c| match c.to_i64() {
                Some(v) => v.into(),
                None => c.to_string().into(),
            })
            .collect();
        values.serialize(s)
    }
}

impl fmt::Display for CharPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.degree();
        write!(f, "{}", power("λ", n))?;
        for k in (0..n).rev() {
            let c = &self.coeffs[k];
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { '-' } else { '+' };
            let mag = c.abs();
            if k == 0 {
                write!(f, " {sign} {mag}")?;
            } else if mag.is_one() {
                write!(f, " {sign} {}", power("λ", k))?;
            } else {
                write!(f, " {sign} {mag}{}", power("λ", k))?;
            }
        }
        Ok(())
    }
}

fn power(var: &str, k: usize) -> String {
    match k {
        0 => "1".into(),
        1 => var.into(),
        _ => format!("{var}^{k}"),
    }
}

pub(crate) fn to_real<T: Real>(coeffs: &[BigInt]) -> Vec<T> {
    coeffs.iter().map(|c| T::c(c.to_f64().expect("finite coefficient"))).collect()
}

/// Horner evaluation of an ascending real polynomial at a complex point.
pub(crate) fn horner<T: Real>(coeffs: &[T], z: Complex<T>) -> Complex<T> {
    coeffs.iter().rev().fold(Complex::new(T::zero(), T::zero()), |acc, &c| acc * z + c)
}

/// Exact characteristic polynomial by Faddeev–LeVerrier.
///
/// Runs in `i128` with checked arithmetic and restarts with big integers if
/// anything overflows.
pub fn char_poly_exact(mat: &Matrix<i64>) -> CharPoly {
    let coeffs = match faddeev(&mat.map(|&x| x as i128)) {
        Some(c) => c.into_iter().map(BigInt::from).collect(),
        None => faddeev(&mat.map(|&x| BigInt::from(x))).expect("big integers do not overflow"),
    };
    CharPoly { coeffs }
}

trait ExactInt: Clone + Zero + One + CheckedAdd + CheckedSub + CheckedMul + fmt::Debug {
    fn from_usize(k: usize) -> Self;
    fn checked_div_rem(&self, k: &Self) -> Option<(Self, Self)>;
}

impl ExactInt for i128 {
    fn from_usize(k: usize) -> Self {
        k as i128
    }

    fn checked_div_rem(&self, k: &Self) -> Option<(Self, Self)> {
        Some((self.checked_div(*k)?, self.checked_rem(*k)?))
    }
}

impl ExactInt for BigInt {
    fn from_usize(k: usize) -> Self {
        BigInt::from(k)
    }

    fn checked_div_rem(&self, k: &Self) -> Option<(Self, Self)> {
        Some((self / k, self % k))
    }
}

fn mat_mul<T: ExactInt>(a: &Matrix<T>, b: &Matrix<T>) -> Option<Matrix<T>> {
    let n = a.order();
    let mut out: Matrix<T> = Matrix::zeros(n);
    for i in 0..n {
        for k in 0..n {
            let aik = &a[(i, k)];
            if aik.is_zero() {
                continue;
            }
            for j in 0..n {
                let term = aik.checked_mul(&b[(k, j)])?;
                out[(i, j)] = out[(i, j)].checked_add(&term)?;
            }
        }
    }
    Some(out)
}

/// `M_k = A M_{k-1} + c_{n-k+1} I`, `c_{n-k} = -tr(A M_k) / k`.
fn faddeev<T: ExactInt>(a: &Matrix<T>) -> Option<Vec<T>> {
    let n = a.order();
    let mut coeffs = vec![T::zero(); n];
    let mut am: Matrix<T> = Matrix::zeros(n);
    let mut c = T::one();
    for k in 1..=n {
        let mut m: Matrix<T> = am;
        for i in 0..n {
            m[(i, i)] = m[(i, i)].checked_add(&c)?;
        }
        am = mat_mul(a, &m)?;
        let mut tr = T::zero();
        for i in 0..n {
            tr = tr.checked_add(&am[(i, i)])?;
        }
        let (q, r) = tr.checked_div_rem(&T::from_usize(k))?;
        assert!(r.is_zero(), "Faddeev-LeVerrier division by {k} is not exact: trace {tr:?}");
        c = T::zero().checked_sub(&q)?;
        coeffs[n - k] = c.clone();
    }
    Some(coeffs)
}

/// Characteristic polynomial from linear sub-digraphs: the coefficient of
/// `λ^{n-i}` is `Σ (-1)^{p(L)}` over the spanning sets `L` of `p(L)`
/// vertex-disjoint cycles covering `i` vertices. Loops count as 1-cycles.
pub fn linear_subdigraph_charpoly(d: &Digraph) -> Result<CharPoly, LinalgError> {
    let n = d.order();
    if n > LINEAR_SUBDIGRAPH_MAX_N {
        return Err(LinalgError::SizeLimit { n, max: LINEAR_SUBDIGRAPH_MAX_N });
    }
    // Each cycle as a vertex bitmask; cycles are enumerated from their
    // smallest vertex so every cycle is found exactly once.
    let mut cycles: Vec<u32> = d.loops().iter().map(|&v| 1 << v).collect();
    for start in 0..n {
        let mut path = vec![start];
        collect_cycles(d, start, &mut path, 1 << start, &mut cycles);
    }
    let mut coeffs = vec![0i64; n + 1];
    let mut chosen = 0usize;
    count_linear(&cycles, 0, 0, &mut chosen, &mut coeffs);
    let mut lower: Vec<BigInt> = vec![BigInt::zero(); n];
    for (covered, &c) in coeffs.iter().enumerate().skip(1) {
        lower[n - covered] = BigInt::from(c);
    }
    Ok(CharPoly { coeffs: lower })
}

fn collect_cycles(d: &Digraph, start: usize, path: &mut Vec<usize>, used: u32, out: &mut Vec<u32>) {
    let v = *path.last().expect("path starts non-empty");
    for w in d.out_neighbors(v) {
        if w == v {
            continue;
        }
        if w == start && path.len() >= 2 {
            out.push(used);
        } else if w > start && used & (1 << w) == 0 {
            path.push(w);
            collect_cycles(d, start, path, used | (1 << w), out);
            path.pop();
        }
    }
}

fn count_linear(cycles: &[u32], from: usize, covered: u32, chosen: &mut usize, coeffs: &mut [i64]) {
    for (idx, &c) in cycles.iter().enumerate().skip(from) {
        if covered & c != 0 {
            continue;
        }
        let next = covered | c;
        *chosen += 1;
        let sign = if chosen.is_multiple_of(2) { 1 } else { -1 };
        coeffs[next.count_ones() as usize] += sign;
        count_linear(cycles, idx + 1, next, chosen, coeffs);
        *chosen -= 1;
    }
}

// Dense polynomial arithmetic over Q, ascending coefficients.

fn trim(mut p: Vec<BigRational>) -> Vec<BigRational> {
    while p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

/// Degree, with the zero polynomial reported as 0.
fn degree(p: &[BigRational]) -> usize {
    p.len().saturating_sub(1)
}

fn derivative(p: &[BigRational]) -> Vec<BigRational> {
    trim(p.iter().enumerate().skip(1).map(|(k, c)| c * BigRational::from_integer(BigInt::from(k))).collect())
}

fn sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let len = a.len().max(b.len());
    let zero = BigRational::zero();
    trim((0..len).map(|k| a.get(k).unwrap_or(&zero) - b.get(k).unwrap_or(&zero)).collect())
}

fn div_rem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let b = trim(b.to_vec());
    assert!(!b.is_empty(), "polynomial division by zero");
    let mut rem = trim(a.to_vec());
    if rem.len() < b.len() {
        return (Vec::new(), rem);
    }
    let lead = b.last().expect("non-empty").clone();
    let mut quot = vec![BigRational::zero(); rem.len() - b.len() + 1];
    while rem.len() >= b.len() && !rem.is_empty() {
        let shift = rem.len() - b.len();
        let factor = rem.last().expect("non-empty") / &lead;
        for (k, bk) in b.iter().enumerate() {
            rem[shift + k] = &rem[shift + k] - &factor * bk;
        }
        quot[shift] = factor;
        rem.pop();
        rem = trim(rem);
    }
    (trim(quot), rem)
}

fn divide_exact(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let (q, r) = div_rem(a, b);
    debug_assert!(r.is_empty(), "inexact polynomial division");
    q
}

/// Monic greatest common divisor.
fn gcd(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut x = trim(a.to_vec());
    let mut y = trim(b.to_vec());
    while !y.is_empty() {
        let (_, r) = div_rem(&x, &y);
        x = y;
        y = r;
    }
    match x.last().cloned() {
        Some(lead) => x.iter().map(|c| c / &lead).collect(),
        None => x,
    }
}

fn primitive(p: &[BigRational]) -> Vec<BigInt> {
    use num_integer::Integer;
    let lcm = p.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p.iter().map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let sign = if ints.last().is_some_and(Signed::is_negative) { -BigInt::one() } else { BigInt::one() };
    ints.iter().map(|c| c / &g * &sign).collect()
}
