//! Certificates for the energy and spectral-radius inequalities.
//!
//! Every certificate is oriented as `lhs ≤ rhs` and carries `slack = rhs − lhs`.
//! `c₂` always counts ordered pairs, so each digon contributes 2.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Digraph;
use crate::linalg::{LinalgError, Spectrum};
use crate::scalar::Real;
use crate::scc::prune_non_cycle_arcs;
use crate::spectral::{energy_about, GraphContext};
use crate::tol;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BoundsError {
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("{bound} needs order at least 2")]
    OrderTooSmall { bound: BoundId },
    #[error("unknown bound id {0:?}")]
    UnknownBound(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundId {
    /// `E ≤ √(n/2 · (m + c₂ + 2σ − 2σ²/n))`.
    Mcclelland,
    /// `(c₂ + σ)/n ≤ ρ`.
    RhoLower,
    /// `2c₂/n ≤ E`.
    EnergyLowerC2,
    /// `ρ ≤ σ/n + √(σ²/n² − σ²/n + (n−1)(m + c₂ + 2σ)/(2n))`.
    RhoUpper,
    /// `|E − Σ E(D_i)| ≤ 2σ` over strong components.
    ComponentGap,
    /// `1 − δ_σ + (c₂ + c̄₂)/n ≤ ρ + ρ̄`.
    ComplementRhoLower,
    /// `ρ + ρ̄ ≤ 1 − δ_σ + √((n−1)² − 4σ(n−σ)/n² + 4σ(n−σ)/n + (n−1)(c₂ + c̄₂)/n)`.
    ComplementRhoUpper,
    /// `E + Ē ≤ √(n(n² − n + c₂ + c̄₂ + 4σ − 4σ²/n))`.
    ComplementEnergySum,
    /// `Σ |λ_i|² ≤ m + σ`.
    PowerSumModulus,
    /// `Σ Re(λ_i)² ≤ (m + c₂ + 2σ)/2`.
    PowerSumReal,
    /// `Σ Im(λ_i)² ≤ (m − c₂)/2`.
    PowerSumImag,
}

impl BoundId {
    pub const ALL: [BoundId; 11] = [
        BoundId::Mcclelland,
        BoundId::RhoLower,
        BoundId::EnergyLowerC2,
        BoundId::RhoUpper,
        BoundId::ComponentGap,
        BoundId::ComplementRhoLower,
        BoundId::ComplementRhoUpper,
        BoundId::ComplementEnergySum,
        BoundId::PowerSumModulus,
        BoundId::PowerSumReal,
        BoundId::PowerSumImag,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BoundId::Mcclelland => "mcclelland",
            BoundId::RhoLower => "rho_lower",
            BoundId::EnergyLowerC2 => "energy_lower_c2",
            BoundId::RhoUpper => "rho_upper",
            BoundId::ComponentGap => "component_gap",
            BoundId::ComplementRhoLower => "complement_rho_lower",
            BoundId::ComplementRhoUpper => "complement_rho_upper",
            BoundId::ComplementEnergySum => "complement_energy_sum",
            BoundId::PowerSumModulus => "power_sum_modulus",
            BoundId::PowerSumReal => "power_sum_real",
            BoundId::PowerSumImag => "power_sum_imag",
        }
    }

    pub fn min_order(self) -> usize {
        match self {
            BoundId::RhoUpper => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for BoundId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BoundId {
    type Err = BoundsError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        BoundId::ALL.into_iter().find(|b| b.name() == s).ok_or_else(|| BoundsError::UnknownBound(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundOptions {
    /// Relative equality tolerance.
    pub equality_tol: f64,
}

impl Default for BoundOptions {
    fn default() -> Self {
        BoundOptions { equality_tol: tol::EQUALITY }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundCertificate {
    pub bound_id: BoundId,
    pub lhs: f64,
    pub rhs: f64,
    /// `rhs − lhs`.
    pub slack: f64,
    pub holds: bool,
    pub equality: bool,
    /// Values were recomputed from the roots of the exact characteristic
    /// polynomial because the slack was close to the tolerance.
    pub reverified: bool,
    /// Structural equality case, when the bound has one.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    /// The equality flag agrees with the structural characterization.
    pub structure_consistent: bool,
}

impl BoundCertificate {
    /// `holds` and the equality flag agrees with the structure.
    pub fn ok(&self) -> bool {
        self.holds && self.structure_consistent
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Source {
    Qr,
    Oracle,
}

fn spectrum<T: Real>(ctx: &GraphContext<T>, src: Source) -> Result<&Spectrum<T>, LinalgError> {
    match src {
        Source::Qr => ctx.spectrum(),
        Source::Oracle => ctx.oracle_spectrum(),
    }
}

fn f<T: Real>(x: T) -> f64 {
    x.to_f64().expect("finite")
}

fn energy<T: Real>(ctx: &GraphContext<T>, src: Source) -> Result<f64, LinalgError> {
    Ok(f(energy_about(spectrum(ctx, src)?, ctx.center())))
}

fn rho<T: Real>(ctx: &GraphContext<T>, src: Source) -> Result<f64, LinalgError> {
    Ok(f(spectrum(ctx, src)?.spectral_radius()))
}

struct Counts {
    n: f64,
    m: f64,
    sigma: f64,
    c2: f64,
    delta: f64,
}

fn counts<T: Real>(ctx: &GraphContext<T>) -> Counts {
    let st = ctx.stats();
    Counts {
        n: st.n as f64,
        m: st.m as f64,
        sigma: st.sigma as f64,
        c2: st.c2 as f64,
        delta: if st.sigma == 0 { 1.0 } else { 0.0 },
    }
}

/// `(lhs, rhs)` for one bound from the chosen spectrum source.
fn sides<T: Real>(id: BoundId, ctx: &GraphContext<T>, src: Source) -> Result<(f64, f64), BoundsError> {
    let Counts { n, m, sigma, c2, delta } = counts(ctx);
    if ctx.order() < id.min_order() {
        return Err(BoundsError::OrderTooSmall { bound: id });
    }
    let comp = || ctx.complement();
    let c2_bar = || comp().stats().c2 as f64;
    Ok(match id {
        BoundId::Mcclelland => (energy(ctx, src)?, (0.5 * n * (m + c2 + 2.0 * sigma - 2.0 * sigma * sigma / n)).sqrt()),
        BoundId::RhoLower => ((c2 + sigma) / n, rho(ctx, src)?),
        BoundId::EnergyLowerC2 => (2.0 * c2 / n, energy(ctx, src)?),
        BoundId::RhoUpper => {
            let inner = sigma * sigma / (n * n) - sigma * sigma / n + (n - 1.0) * (m + c2 + 2.0 * sigma) / (2.0 * n);
            (rho(ctx, src)?, sigma / n + inner.sqrt())
        }
        BoundId::ComponentGap => {
            let parts = ctx.components().iter().map(|p| energy(p, src)).sum::<Result<f64, _>>()?;
            ((energy(ctx, src)? - parts).abs(), 2.0 * sigma)
        }
        BoundId::ComplementRhoLower => (1.0 - delta + (c2 + c2_bar()) / n, rho(ctx, src)? + rho(comp(), src)?),
        BoundId::ComplementRhoUpper => {
            let mixed = 4.0 * sigma * (n - sigma);
            let inner = (n - 1.0).powi(2) - mixed / (n * n) + mixed / n + (n - 1.0) * (c2 + c2_bar()) / n;
            (rho(ctx, src)? + rho(comp(), src)?, 1.0 - delta + inner.sqrt())
        }
        BoundId::ComplementEnergySum => {
            let inner = n * (n * n - n + c2 + c2_bar() + 4.0 * sigma - 4.0 * sigma * sigma / n);
            (energy(ctx, src)? + energy(comp(), src)?, inner.sqrt())
        }
        BoundId::PowerSumModulus => {
            let s = spectrum(ctx, src)?;
            (s.eigenvalues().iter().map(|z| f(z.norm_sqr())).sum(), m + sigma)
        }
        BoundId::PowerSumReal => {
            let s = spectrum(ctx, src)?;
            (s.eigenvalues().iter().map(|z| f(z.re * z.re)).sum(), (m + c2 + 2.0 * sigma) / 2.0)
        }
        BoundId::PowerSumImag => {
            let s = spectrum(ctx, src)?;
            (s.eigenvalues().iter().map(|z| f(z.im * z.im)).sum(), (m - c2) / 2.0)
        }
    })
}

/// Evaluates one bound, re-verifying with the root-finder spectrum when the
/// slack is within ten tolerances of zero.
pub fn certify<T: Real>(id: BoundId, ctx: &GraphContext<T>, opts: &BoundOptions) -> Result<BoundCertificate, BoundsError> {
    let (mut lhs, mut rhs) = sides(id, ctx, Source::Qr)?;
    let band = |rhs: f64| opts.equality_tol * rhs.abs().max(1.0);
    let mut reverified = false;
    if (rhs - lhs).abs() <= 10.0 * band(rhs) {
        (lhs, rhs) = sides(id, ctx, Source::Oracle)?;
        reverified = true;
    }
    let slack = rhs - lhs;
    let holds = slack >= -band(rhs);
    let equality = slack.abs() <= band(rhs);
    let (witness, structure_consistent) = structure(id, ctx, equality);
    Ok(BoundCertificate { bound_id: id, lhs, rhs, slack, holds, equality, reverified, witness, structure_consistent })
}

/// All bounds that apply at this order, in [`BoundId::ALL`] order.
pub fn all_bounds<T: Real>(ctx: &GraphContext<T>, opts: &BoundOptions) -> Result<Vec<BoundCertificate>, BoundsError> {
    BoundId::ALL
        .into_iter()
        .filter(|id| ctx.order() >= id.min_order())
        .map(|id| certify(id, ctx, opts))
        .collect()
}

fn structure<T: Real>(id: BoundId, ctx: &GraphContext<T>, equality: bool) -> (Option<String>, bool) {
    let d = ctx.graph();
    match id {
        BoundId::Mcclelland => {
            let family = mcclelland_equality_family(d);
            let note = match (family, equality) {
                (Some(f), _) => Some(f.to_string()),
                (None, true) => Some("equality, family unrecognized".to_string()),
                (None, false) => None,
            };
            (note, family.is_some() == equality)
        }
        BoundId::RhoLower => {
            let structural = rho_lower_structure(d);
            let note = structural.map(|k| format!("pruned digraph symmetric, {k}-regular"));
            (note, structural.is_some() == equality)
        }
        BoundId::EnergyLowerC2 => {
            let family = corollary_family(d);
            let note = match (&family, equality) {
                (Some(f), _) => Some(format!("known family {f}")),
                (None, true) => Some("equality, family unrecognized".to_string()),
                (None, false) => None,
            };
            let consistent = (family.is_none() || equality) && (!equality || rho_lower_structure(d).is_some());
            (note, consistent)
        }
        BoundId::RhoUpper => {
            let known = rho_upper_family(d);
            let note = match (known, equality) {
                (true, _) => Some("known family".to_string()),
                (false, true) => Some("equality, family unrecognized".to_string()),
                (false, false) => None,
            };
            (note, !known || equality)
        }
        _ => (None, true),
    }
}

/// The equality cases of the McClelland-type bound. The zero-energy case
/// `n K̃₁` arises alongside `n ↔K₁`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum McClellandFamily {
    /// `n ↔K₁`.
    IsolatedLoopless,
    /// `n K̃₁`.
    IsolatedLooped,
    /// `n/2 ↔K₂`.
    Digons,
    /// `n/2 ↔K₁ ∪ n/2 K̃₁`.
    HalfLoopedIsolated,
    /// `n/2 ↔K₂⁺`.
    DigonsOneLoop,
    /// `n/2 K̃₂`.
    DigonsFullLoops,
}

impl fmt::Display for McClellandFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            McClellandFamily::IsolatedLoopless => "n·↔K₁",
            McClellandFamily::IsolatedLooped => "n·K̃₁",
            McClellandFamily::Digons => "n/2·↔K₂",
            McClellandFamily::HalfLoopedIsolated => "n/2·↔K₁ ∪ n/2·K̃₁",
            McClellandFamily::DigonsOneLoop => "n/2·↔K₂⁺",
            McClellandFamily::DigonsFullLoops => "n/2·K̃₂",
        })
    }
}

/// Matches `d` itself: any arc outside the listed components makes the
/// inequality strict, so no pruning happens here.
pub fn mcclelland_equality_family(d: &Digraph) -> Option<McClellandFamily> {
    let n = d.order();
    let sigma = d.loop_count();
    if d.size() == 0 {
        return match sigma {
            0 => Some(McClellandFamily::IsolatedLoopless),
            s if s == n => Some(McClellandFamily::IsolatedLooped),
            s if 2 * s == n => Some(McClellandFamily::HalfLoopedIsolated),
            _ => None,
        };
    }
    // Perfect matching of digons.
    let deg = d.degrees();
    if !d.is_symmetric() {
        return None;
    }
    let arc_degree = |v: usize| deg.out_deg[v] - usize::from(d.has_loop(v));
    if (0..n).any(|v| arc_degree(v) != 1) {
        return None;
    }
    let loops_per_digon: Vec<usize> = d
        .arcs()
        .iter()
        .filter(|&&(u, v)| u < v)
        .map(|&(u, v)| usize::from(d.has_loop(u)) + usize::from(d.has_loop(v)))
        .collect();
    match loops_per_digon.as_slice() {
        l if l.iter().all(|&x| x == 0) => Some(McClellandFamily::Digons),
        l if l.iter().all(|&x| x == 1) => Some(McClellandFamily::DigonsOneLoop),
        l if l.iter().all(|&x| x == 2) => Some(McClellandFamily::DigonsFullLoops),
        _ => None,
    }
}

/// `Some(k)` when the digraph minus its non-cycle arcs is symmetric with
/// every out-degree (loops included) equal to `k = (c₂ + σ)/n`. Equivalently
/// its loop-graph has degree `k + 1` on looped vertices and `k` elsewhere.
pub fn rho_lower_structure(d: &Digraph) -> Option<usize> {
    let p = prune_non_cycle_arcs(d);
    let st = p.stats();
    if !p.is_symmetric() || !(st.c2 + st.sigma).is_multiple_of(st.n) {
        return None;
    }
    let k = (st.c2 + st.sigma) / st.n;
    let regular = p.regularity() == Some(k);
    if cfg!(debug_assertions) {
        let g = p.as_loop_graph().expect("symmetric");
        let pattern = g.degrees().iter().enumerate().all(|(v, &dg)| dg == k + usize::from(p.has_loop(v)));
        debug_assert_eq!(regular, pattern, "regularity and bidegree pattern disagree");
    }
    regular.then_some(k)
}

/// Complete multipartite with equal parts, with no loops or all loops.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CorollaryFamily {
    pub parts: usize,
    pub part_size: usize,
    pub looped: bool,
}

impl fmt::Display for CorollaryFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = if self.looped { "K̃" } else { "↔K" };
        write!(f, "{k}_{{{}×{}}}", self.parts, self.part_size)
    }
}

/// Recognizes the listed equality cases of `E ≥ 2c₂/n` after pruning
/// non-cycle arcs.
pub fn corollary_family(d: &Digraph) -> Option<CorollaryFamily> {
    let p = prune_non_cycle_arcs(d);
    let n = p.order();
    let sigma = p.loop_count();
    if !p.is_symmetric() || (sigma != 0 && sigma != n) {
        return None;
    }
    let mut part_of = vec![usize::MAX; n];
    let mut sizes = Vec::new();
    for v in 0..n {
        if part_of[v] != usize::MAX {
            continue;
        }
        let part: Vec<usize> = (0..n).filter(|&u| u == v || !p.has(v, u)).collect();
        for &u in &part {
            if part_of[u] != usize::MAX {
                return None;
            }
            part_of[u] = sizes.len();
        }
        sizes.push(part.len());
    }
    let complete_multipartite =
        (0..n).all(|u| (0..n).all(|v| u == v || p.has(u, v) == (part_of[u] != part_of[v])));
    let equal = sizes.iter().all(|&s| s == sizes[0]);
    (complete_multipartite && equal).then_some(CorollaryFamily {
        parts: sizes.len(),
        part_size: sizes[0],
        looped: sigma == n && n > 0,
    })
}

/// `↔K_n` or `K̃_n`.
pub fn rho_upper_family(d: &Digraph) -> bool {
    let n = d.order();
    let complete = d.size() == n * (n - 1);
    complete && (d.loop_count() == 0 || d.loop_count() == n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, Family};

    fn cert(id: BoundId, d: &Digraph) -> BoundCertificate {
        certify(id, &GraphContext::<f64>::new(d), &BoundOptions::default()).unwrap()
    }

    fn k2p() -> Digraph {
        Digraph::new(2, &[(0, 1), (1, 0)], &[0]).unwrap()
    }

    fn loop_c3() -> Digraph {
        Digraph::new(3, &[(0, 2), (2, 1), (1, 0)], &[0, 2]).unwrap()
    }

    fn full(n: usize) -> Digraph {
        generate(&Family::Complete { n, loops: (0..n).collect() }).unwrap()
    }

    fn complete(n: usize) -> Digraph {
        generate(&Family::Complete { n, loops: vec![] }).unwrap()
    }

    fn k32_looped() -> Digraph {
        generate(&Family::CompleteBipartite { a: 3, b: 2, loops: vec![0, 1, 2] }).unwrap()
    }

    #[test]
    fn mcclelland_examples() {
        let c = cert(BoundId::Mcclelland, &full(2));
        assert!(c.equality && c.structure_consistent);
        assert!((c.rhs - 2.0).abs() < 1e-12);
        let c = cert(BoundId::Mcclelland, &k2p());
        assert!(c.equality && (c.rhs - 5f64.sqrt()).abs() < 1e-12);
        assert_eq!(c.witness.as_deref(), Some("n/2·↔K₂⁺"));
        let c = cert(BoundId::Mcclelland, &loop_c3());
        assert!(c.holds && !c.equality && c.structure_consistent);
        assert!((c.rhs - 6.5f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn mcclelland_families() {
        let two_k2 = Digraph::disjoint_union(&[complete(2), complete(2)]).unwrap();
        assert_eq!(mcclelland_equality_family(&two_k2), Some(McClellandFamily::Digons));
        let two_k2p = Digraph::disjoint_union(&[k2p(), k2p()]).unwrap();
        assert_eq!(mcclelland_equality_family(&two_k2p), Some(McClellandFamily::DigonsOneLoop));
        assert_eq!(mcclelland_equality_family(&loop_c3()), None);
        let half = Digraph::new(4, &[], &[1, 3]).unwrap();
        assert_eq!(mcclelland_equality_family(&half), Some(McClellandFamily::HalfLoopedIsolated));
        let mixed = Digraph::disjoint_union(&[complete(2), full(2)]).unwrap();
        assert_eq!(mcclelland_equality_family(&mixed), None);
        assert!(!cert(BoundId::Mcclelland, &mixed).equality);
        let with_tail = Digraph::new(3, &[(0, 1), (1, 0), (1, 2)], &[]).unwrap();
        assert_eq!(mcclelland_equality_family(&with_tail), None);
    }

    #[test]
    fn rho_lower_examples() {
        let c = cert(BoundId::RhoLower, &k2p());
        assert!(c.holds && !c.equality && (c.lhs - 1.5).abs() < 1e-15);
        let c = cert(BoundId::RhoLower, &complete(2));
        assert!(c.equality && c.structure_consistent);
        let c3 = generate(&Family::DirectedCycle { n: 3, loops: vec![] }).unwrap();
        let c = cert(BoundId::RhoLower, &c3);
        assert!(c.holds && c.lhs == 0.0 && !c.equality);
    }

    #[test]
    fn energy_lower_examples() {
        let c = cert(BoundId::EnergyLowerC2, &complete(3));
        assert!(c.equality && c.structure_consistent && (c.lhs - 4.0).abs() < 1e-15);
        assert_eq!(c.witness.as_deref(), Some("known family ↔K_{3×1}"));
        let c = cert(BoundId::EnergyLowerC2, &full(3));
        assert!(c.equality && c.structure_consistent);
        let c = cert(BoundId::EnergyLowerC2, &loop_c3());
        assert!(c.holds && c.lhs == 0.0);
        let k22 = generate(&Family::CompleteBipartite { a: 2, b: 2, loops: vec![] }).unwrap();
        assert!(cert(BoundId::EnergyLowerC2, &k22).equality);
    }

    #[test]
    fn rho_upper_examples() {
        let c = cert(BoundId::RhoUpper, &complete(3));
        assert!(c.equality && (c.rhs - 2.0).abs() < 1e-12);
        let c = cert(BoundId::RhoUpper, &full(2));
        assert!(c.equality && (c.rhs - 2.0).abs() < 1e-12);
        let c = cert(BoundId::RhoUpper, &loop_c3());
        assert!(c.holds && !c.equality);
        assert!((c.rhs - (2.0 / 3.0 + (13f64 / 9.0).sqrt())).abs() < 1e-12);
        let one = Digraph::new(1, &[], &[]).unwrap();
        assert!(matches!(
            certify(BoundId::RhoUpper, &GraphContext::<f64>::new(&one), &BoundOptions::default()),
            Err(BoundsError::OrderTooSmall { .. })
        ));
    }

    #[test]
    fn component_gap_examples() {
        let two_component = Digraph::disjoint_union(&[k2p(), loop_c3()]).unwrap();
        let c = cert(BoundId::ComponentGap, &two_component);
        assert!((c.lhs - 0.0667).abs() < 1e-4 && c.rhs == 6.0 && c.holds);
        let path = Digraph::new(3, &[(0, 1), (1, 2)], &[]).unwrap();
        let c = cert(BoundId::ComponentGap, &path);
        assert!(c.equality && c.lhs.abs() < 1e-12);
    }

    #[test]
    fn complement_examples() {
        let c = cert(BoundId::ComplementRhoLower, &k32_looped());
        assert!(c.equality && (c.lhs - 5.0).abs() < 1e-12);
        let c = cert(BoundId::ComplementEnergySum, &k32_looped());
        assert!((c.lhs - 12.8).abs() < 1e-9 && (c.rhs - 224f64.sqrt()).abs() < 1e-9);
        let c3 = generate(&Family::DirectedCycle { n: 3, loops: vec![] }).unwrap();
        let c = cert(BoundId::ComplementRhoLower, &c3);
        assert!(c.holds && (c.rhs - 2.0).abs() < 1e-12);
        let c = cert(BoundId::ComplementEnergySum, &full(2));
        assert!((c.lhs - 2.0).abs() < 1e-12 && (c.rhs - 8f64.sqrt()).abs() < 1e-12);
        let one = Digraph::new(1, &[], &[]).unwrap();
        assert!(cert(BoundId::ComplementEnergySum, &one).equality);
    }

    #[test]
    fn power_sum_examples() {
        let c = cert(BoundId::PowerSumModulus, &loop_c3());
        assert!(c.holds && (c.lhs - 4.219).abs() < 1e-3 && c.rhs == 5.0);
        let c = cert(BoundId::PowerSumModulus, &complete(2));
        assert!(c.equality);
        let empty = Digraph::new(3, &[], &[]).unwrap();
        for id in [BoundId::PowerSumModulus, BoundId::PowerSumReal, BoundId::PowerSumImag] {
            assert!(cert(id, &empty).equality);
        }
    }

    #[test]
    fn bound_ids_round_trip() {
        for id in BoundId::ALL {
            assert_eq!(id.name().parse::<BoundId>().unwrap(), id);
            assert_eq!(serde_json::to_string(&id).unwrap(), format!("\"{}\"", id.name()));
        }
        assert!("nope".parse::<BoundId>().is_err());
    }

    #[test]
    fn corollary_recognizer() {
        assert_eq!(corollary_family(&complete(4)), Some(CorollaryFamily { parts: 4, part_size: 1, looped: false }));
        let k222 = generate(&Family::CompleteMultipartite { parts: vec![2, 2, 2], loops: (0..6).collect() }).unwrap();
        assert_eq!(corollary_family(&k222), Some(CorollaryFamily { parts: 3, part_size: 2, looped: true }));
        let k12 = generate(&Family::CompleteBipartite { a: 1, b: 2, loops: vec![] }).unwrap();
        assert_eq!(corollary_family(&k12), None);
        assert_eq!(corollary_family(&k2p()), None);
    }
}
