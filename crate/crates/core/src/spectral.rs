//! Energy, spectral radius and the spectral identities of loop-digraphs.

use std::cell::OnceCell;

use num_complex::Complex;
use serde::Serialize;
use thiserror::Error;

use crate::graph::{Digraph, GraphStats};
use crate::linalg::{
    adjacency, backward_error, char_poly_exact, eigenvalues, eigenvalues_with_profile, poly_roots, CharPoly,
    LinalgError, Spectrum,
};
use crate::scalar::Real;
use crate::scc::{strong_components, SccPartition};
use crate::tol;

/// Largest order for which QR output is polished with the exact multiplicity
/// profile.
pub const PROFILE_POLISH_MAX_N: usize = 64;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SpectralError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("digraph is not regular")]
    NotRegular,
    #[error("no eigenvalue of modulus {rho} is real and non-negative")]
    PerronViolated { rho: f64 },
}

/// A digraph with its spectral data computed on demand and cached.
///
/// Checkers that need the same spectrum, complement or strong components
/// share one context so each is computed once.
pub struct GraphContext<T: Real> {
    graph: Digraph,
    stats: GraphStats,
    charpoly: OnceCell<CharPoly>,
    spectrum: OnceCell<Spectrum<T>>,
    oracle: OnceCell<Spectrum<T>>,
    complement: OnceCell<Box<GraphContext<T>>>,
    components: OnceCell<(SccPartition, Vec<GraphContext<T>>)>,
}

fn cached<V, E>(cell: &OnceCell<V>, compute: impl FnOnce() -> Result<V, E>) -> Result<&V, E> {
    if let Some(v) = cell.get() {
        return Ok(v);
    }
    let v = compute()?;
    Ok(cell.get_or_init(|| v))
}

impl<T: Real> GraphContext<T> {
    pub fn new(d: &Digraph) -> Self {
        GraphContext {
            stats: d.stats(),
            graph: d.clone(),
            charpoly: OnceCell::new(),
            spectrum: OnceCell::new(),
            oracle: OnceCell::new(),
            complement: OnceCell::new(),
            components: OnceCell::new(),
        }
    }

    pub fn graph(&self) -> &Digraph {
        &self.graph
    }

    pub fn stats(&self) -> GraphStats {
        self.stats
    }

    pub fn order(&self) -> usize {
        self.stats.n
    }

    /// `σ/n`.
    pub fn center(&self) -> T {
        T::from_usize_lossy(self.stats.sigma) / T::from_usize_lossy(self.stats.n)
    }

    pub fn charpoly(&self) -> &CharPoly {
        self.charpoly.get_or_init(|| char_poly_exact(&adjacency(&self.graph)))
    }

    /// QR spectrum, polished with the exact multiplicity profile for small orders.
    pub fn spectrum(&self) -> Result<&Spectrum<T>, LinalgError> {
        cached(&self.spectrum, || {
            let a = adjacency::<T>(&self.graph);
            if self.order() <= PROFILE_POLISH_MAX_N {
                eigenvalues_with_profile(&a, &self.charpoly().multiplicity_profile())
            } else {
                eigenvalues(&a)
            }
        })
    }

    /// Roots of the exact characteristic polynomial.
    pub fn oracle_spectrum(&self) -> Result<&Spectrum<T>, LinalgError> {
        cached(&self.oracle, || poly_roots(self.charpoly()))
    }

    pub fn energy(&self) -> Result<T, LinalgError> {
        Ok(energy_about(self.spectrum()?, self.center()))
    }

    /// Energy from the root-finder spectrum.
    pub fn oracle_energy(&self) -> Result<T, LinalgError> {
        Ok(energy_about(self.oracle_spectrum()?, self.center()))
    }

    pub fn rho(&self) -> Result<T, LinalgError> {
        Ok(self.spectrum()?.spectral_radius())
    }

    pub fn complement(&self) -> &GraphContext<T> {
        self.complement.get_or_init(|| Box::new(GraphContext::new(&self.graph.complement())))
    }

    pub fn scc(&self) -> &SccPartition {
        &self.component_data().0
    }

    /// One context per strong component, in [`SccPartition`] order.
    pub fn components(&self) -> &[GraphContext<T>] {
        &self.component_data().1
    }

    fn component_data(&self) -> &(SccPartition, Vec<GraphContext<T>>) {
        self.components.get_or_init(|| {
            let scc = strong_components(&self.graph);
            let parts = scc.subgraphs(&self.graph).iter().map(GraphContext::new).collect();
            (scc, parts)
        })
    }
}

/// `Σ |Re λ_i − center|`.
pub fn energy_about<T: Real>(spectrum: &Spectrum<T>, center: T) -> T {
    spectrum.real_parts().map(|x| (x - center).abs()).sum()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EnergyReport<T> {
    pub energy: T,
    pub rho: T,
    /// `σ/n`.
    pub center: T,
    /// `|Re λ_i − σ/n|`, in canonical spectrum order.
    pub deviations: Vec<T>,
}

pub fn energy<T: Real>(d: &Digraph) -> Result<EnergyReport<T>, SpectralError> {
    energy_report(&GraphContext::new(d))
}

pub fn energy_report<T: Real>(ctx: &GraphContext<T>) -> Result<EnergyReport<T>, SpectralError> {
    let spectrum = ctx.spectrum()?;
    let center = ctx.center();
    let deviations: Vec<T> = spectrum.real_parts().map(|x| (x - center).abs()).collect();
    Ok(EnergyReport { energy: deviations.iter().copied().sum(), rho: spectral_radius_of(spectrum)?, center, deviations })
}

/// `2 Σ_{Re λ > σ/n} (Re λ − σ/n)`.
pub fn energy_positive_part<T: Real>(d: &Digraph) -> Result<T, SpectralError> {
    positive_part(&GraphContext::new(d))
}

pub fn positive_part<T: Real>(ctx: &GraphContext<T>) -> Result<T, SpectralError> {
    let center = ctx.center();
    let above: T = ctx.spectrum()?.real_parts().filter(|&x| x > center).map(|x| x - center).sum();
    Ok(T::c(2.0) * above)
}

pub fn spectral_radius<T: Real>(d: &Digraph) -> Result<T, SpectralError> {
    spectral_radius_of(GraphContext::<T>::new(d).spectrum()?)
}

/// `max |λ_i|`, checking that a real non-negative eigenvalue attains it as a
/// non-negative matrix requires.
pub fn spectral_radius_of<T: Real>(spectrum: &Spectrum<T>) -> Result<T, SpectralError> {
    let rho = spectrum.spectral_radius();
    let slack = T::c(tol::SPECTRUM_MATCH) * rho.max(T::one());
    let perron = spectrum
        .eigenvalues()
        .iter()
        .any(|z| z.im.abs() <= slack && z.re >= -slack && (z.norm() - rho).abs() <= slack);
    if perron {
        Ok(rho)
    } else {
        Err(SpectralError::PerronViolated { rho: rho.to_f64().unwrap_or(f64::NAN) })
    }
}

/// Residuals of `Σλ = σ`, `Σλ² = c₂ + σ` and `Σ(Re² − Im²) = c₂ + σ`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TraceIdentities {
    pub sum_error: f64,
    pub sumsq_error: f64,
    pub real_form_error: f64,
    pub tolerance: f64,
    pub sum_ok: bool,
    pub sumsq_ok: bool,
}

impl TraceIdentities {
    pub fn holds(&self) -> bool {
        self.sum_ok && self.sumsq_ok
    }
}

pub fn trace_identities<T: Real>(d: &Digraph) -> Result<TraceIdentities, SpectralError> {
    trace_identities_of(&GraphContext::<T>::new(d))
}

pub fn trace_identities_of<T: Real>(ctx: &GraphContext<T>) -> Result<TraceIdentities, SpectralError> {
    let s = ctx.spectrum()?;
    let st = ctx.stats();
    let sigma = st.sigma as f64;
    let target = (st.c2 + st.sigma) as f64;
    let to = |z: Complex<T>| Complex::new(z.re.to_f64().expect("finite"), z.im.to_f64().expect("finite"));
    let sum = to(s.sum());
    let sumsq = to(s.power_sum(2));
    let real_form: f64 = s.eigenvalues().iter().map(|z| to(*z)).map(|z| z.re * z.re - z.im * z.im).sum();
    let tolerance = tol::TRACE_PER_VERTEX * (st.n as f64).max(1.0);
    let sum_error = (sum - Complex::new(sigma, 0.0)).norm();
    let sumsq_error = (sumsq - Complex::new(target, 0.0)).norm();
    let real_form_error = (real_form - target).abs();
    Ok(TraceIdentities {
        sum_error,
        sumsq_error,
        real_form_error,
        tolerance,
        sum_ok: sum_error <= tolerance,
        sumsq_ok: sumsq_error <= tolerance && real_form_error <= tolerance,
    })
}

/// For an `r`-regular digraph: `{n − r − δ_σ, −δ_σ − λ_2, …}` from the
/// spectrum `{r, λ_2, …}`, with residuals measured against the complement.
pub fn complement_spectrum_regular<T: Real>(d: &Digraph) -> Result<Spectrum<T>, SpectralError> {
    complement_spectrum_map(&GraphContext::new(d))
}

pub fn complement_spectrum_map<T: Real>(ctx: &GraphContext<T>) -> Result<Spectrum<T>, SpectralError> {
    let r = ctx.graph().regularity().ok_or(SpectralError::NotRegular)?;
    let st = ctx.stats();
    let delta = T::from_usize_lossy(usize::from(st.sigma == 0));
    let rt = T::from_usize_lossy(r);
    let spectrum = ctx.spectrum()?;
    let perron = spectrum
        .eigenvalues()
        .iter()
        .enumerate()
        .min_by(|a, b| (*a.1 - rt).norm().partial_cmp(&(*b.1 - rt).norm()).expect("finite"))
        .map(|(i, _)| i)
        .expect("non-empty spectrum");
    let mapped: Vec<Complex<T>> = spectrum
        .eigenvalues()
        .iter()
        .enumerate()
        .map(|(i, &z)| {
            if i == perron {
                Complex::new(T::from_usize_lossy(st.n) - rt - delta, T::zero())
            } else {
                -z - delta
            }
        })
        .collect();
    let comp = adjacency::<T>(ctx.complement().graph());
    let residuals = mapped.iter().map(|&z| backward_error(&comp, z)).collect();
    Ok(Spectrum::from_parts(mapped, residuals))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EnergySumBranch {
    /// `n/2 ≤ σ ≤ n`.
    ManyLoops,
    /// `0 ≤ σ < n/2`.
    FewLoops,
}

/// Sizes of the threshold classes of the real parts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct ThresholdSets {
    pub s1: usize,
    pub s2_pos: usize,
    pub s2_nonpos: usize,
    pub s3_pos: usize,
    pub s3_nonpos: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegularEnergySum<T> {
    pub branch: EnergySumBranch,
    pub r: usize,
    pub sets: ThresholdSets,
    pub closed_form: T,
    /// `E(D) + E(D̄)` computed from both spectra.
    pub direct: T,
}

impl<T: Real> RegularEnergySum<T> {
    pub fn agrees(&self, tolerance: f64) -> bool {
        let cf = self.closed_form.to_f64().expect("finite");
        let direct = self.direct.to_f64().expect("finite");
        tol::relative_equal(cf, direct, tolerance)
    }
}

pub fn regular_energy_sum<T: Real>(d: &Digraph) -> Result<RegularEnergySum<T>, SpectralError> {
    regular_energy_sum_of(&GraphContext::new(d))
}

/// Closed form for `E(D) + E(D̄)` of a regular digraph. The classes are made
/// disjoint by testing `S₁` first (they overlap at zero when `σ = 0`).
pub fn regular_energy_sum_of<T: Real>(ctx: &GraphContext<T>) -> Result<RegularEnergySum<T>, SpectralError> {
    let r = ctx.graph().regularity().ok_or(SpectralError::NotRegular)?;
    let st = ctx.stats();
    let (n, sigma) = (st.n as f64, st.sigma as f64);
    let c = sigma / n;
    let shift = (n - sigma) / n;
    let branch = if st.sigma >= 1 && 2 * st.sigma >= st.n { EnergySumBranch::ManyLoops } else { EnergySumBranch::FewLoops };

    let mut sets = ThresholdSets::default();
    let (mut sum_s1, mut sum_s2_nonpos, mut sum_s3, mut sum_s3_nonpos) = (0.0, 0.0, 0.0, 0.0);
    for x in ctx.spectrum()?.real_parts() {
        let x = x.to_f64().expect("finite");
        let nonpos = tol::at_most(x + shift, 0.0);
        if tol::at_least(x, c) {
            sets.s1 += 1;
            sum_s1 += x.abs();
        } else if tol::at_most(x, -c) {
            sum_s3 += x.abs();
            if nonpos {
                sets.s3_nonpos += 1;
                sum_s3_nonpos += x.abs();
            } else {
                sets.s3_pos += 1;
            }
        } else if nonpos {
            sets.s2_nonpos += 1;
            sum_s2_nonpos += x.abs();
        } else {
            sets.s2_pos += 1;
        }
    }

    let base = 2.0 * (n - r as f64 - 1.0);
    let s1 = sets.s1 as f64;
    let closed_form = match branch {
        EnergySumBranch::ManyLoops => {
            let s2n = sets.s2_nonpos as f64;
            let s3 = (sets.s3_pos + sets.s3_nonpos) as f64;
            base + 2.0 * (sum_s1 + sum_s2_nonpos + sum_s3) + 2.0 * c * (s2n + s3 - s1 + 1.0) - 2.0 * (s2n + s3)
        }
        EnergySumBranch::FewLoops => {
            let s3n = sets.s3_nonpos as f64;
            base + 2.0 * (sum_s1 + sum_s3_nonpos) + 2.0 * c * (s3n - s1 + 1.0) - 2.0 * s3n
        }
    };
    let direct = ctx.energy()? + ctx.complement().energy()?;
    Ok(RegularEnergySum { branch, r, sets, closed_form: T::c(closed_form), direct })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ZeroEnergy {
    /// `E ≤ 10⁻⁷`.
    pub energy_zero: bool,
    /// Acyclic with `σ ∈ {0, n}`.
    pub structural: bool,
}

impl ZeroEnergy {
    pub fn consistent(&self) -> bool {
        self.energy_zero == self.structural
    }
}

pub fn zero_energy_check<T: Real>(d: &Digraph) -> Result<ZeroEnergy, SpectralError> {
    zero_energy_of(&GraphContext::<T>::new(d))
}

pub fn zero_energy_of<T: Real>(ctx: &GraphContext<T>) -> Result<ZeroEnergy, SpectralError> {
    let d = ctx.graph();
    let e = ctx.energy()?.to_f64().expect("finite");
    let sigma = d.loop_count();
    Ok(ZeroEnergy {
        energy_zero: e <= tol::ZERO_ENERGY,
        structural: d.is_acyclic() && (sigma == 0 || sigma == d.order()),
    })
}
