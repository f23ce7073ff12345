//! Exhaustive and seeded random generation of loop-digraphs, and the theorem
//! sweep that runs every checker over them.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicBool, Ordering};
use std::time::Instant;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bounds::{certify, BoundId, BoundOptions, BoundsError};
use crate::decomposition::{ab_remark_check, analyze_context, necessary_condition, sufficient_condition, Applicability};
use crate::graph::{Digraph, GraphError};
use crate::linalg::{linear_subdigraph_charpoly, LINEAR_SUBDIGRAPH_MAX_N};
use crate::scc::prune_non_cycle_arcs;
use crate::spectral::{
    complement_spectrum_map, positive_part, regular_energy_sum_of, trace_identities_of, zero_energy_of, GraphContext,
    SpectralError,
};
use crate::tol;

/// Largest order for exhaustive enumeration.
pub const EXHAUSTIVE_MAX_N: usize = 5;
/// Largest exhaustive order without opting in.
pub const EXHAUSTIVE_DEFAULT_MAX_N: usize = 4;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EnumerateError {
    #[error("exhaustive enumeration supports n ≤ {max}, got {n}")]
    SizeLimit { n: usize, max: usize },
    #[error("probability {0} outside [0, 1]")]
    BadProbability(f64),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("unknown theorem {0:?}")]
    UnknownTheorem(String),
}

fn pattern_count(n: usize) -> u64 {
    1u64 << (n * n)
}

/// The digraph whose adjacency bit `i·n + j` is `a_ij`; diagonal bits are loops.
pub fn graph_at(n: usize, index: u64) -> Result<Digraph, EnumerateError> {
    if n > EXHAUSTIVE_MAX_N {
        return Err(EnumerateError::SizeLimit { n, max: EXHAUSTIVE_MAX_N });
    }
    Ok(Digraph::from_pattern(n, |i, j| index >> (i * n + j) & 1 == 1)?)
}

/// Every adjacency pattern on `n` vertices, in bit-pattern order.
pub fn iterate_all(n: usize) -> Result<impl Iterator<Item = Digraph>, EnumerateError> {
    if n > EXHAUSTIVE_MAX_N {
        return Err(EnumerateError::SizeLimit { n, max: EXHAUSTIVE_MAX_N });
    }
    graph_at(n, 0)?;
    Ok((0..pattern_count(n)).map(move |i| graph_at(n, i).expect("checked order")))
}

/// Independent Bernoulli arcs and loops from a ChaCha stream seeded by `seed`.
pub fn random_digraph(n: usize, arc_prob: f64, loop_prob: f64, seed: u64) -> Result<Digraph, EnumerateError> {
    for p in [arc_prob, loop_prob] {
        if !(0.0..=1.0).contains(&p) {
            return Err(EnumerateError::BadProbability(p));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bits: Vec<bool> =
        (0..n * n).map(|k| rng.random_bool(if k / n == k % n { loop_prob } else { arc_prob })).collect();
    Ok(Digraph::from_pattern(n, |i, j| bits[i * n + j])?)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Theorem {
    Mcclelland,
    RhoLower,
    EnergyLowerC2,
    RhoUpper,
    ComponentGap,
    ComplementRhoLower,
    ComplementRhoUpper,
    ComplementEnergySum,
    PowerSumModulus,
    PowerSumReal,
    PowerSumImag,
    /// Equality in the McClelland-type bound exactly on the listed families.
    McclellandEquality,
    /// Equality in `ρ ≥ (c₂ + σ)/n` exactly on the regular symmetric pruned graphs.
    RhoLowerEquality,
    /// Listed families attain `E = 2c₂/n`, and equality forces `ρ`-lower equality structure.
    EnergyLowerC2Equality,
    /// `↔K_n` and `K̃_n` attain the `ρ` upper bound.
    RhoUpperEquality,
    SufficientCondition,
    NecessaryCondition,
    AbRemark,
    TraceIdentities,
    PositivePart,
    LoopInvariance,
    CharpolyCoefficients,
    CharpolyInvariance,
    ComponentCharpolys,
    ZeroEnergy,
    ComplementInvolution,
    RegularRadius,
    RegularComplement,
    RegularEnergySum,
    OracleEquivalence,
}

impl Theorem {
    pub const ALL: [Theorem; 30] = [
        Theorem::Mcclelland,
        Theorem::RhoLower,
        Theorem::EnergyLowerC2,
        Theorem::RhoUpper,
        Theorem::ComponentGap,
        Theorem::ComplementRhoLower,
        Theorem::ComplementRhoUpper,
        Theorem::ComplementEnergySum,
        Theorem::PowerSumModulus,
        Theorem::PowerSumReal,
        Theorem::PowerSumImag,
        Theorem::McclellandEquality,
        Theorem::RhoLowerEquality,
        Theorem::EnergyLowerC2Equality,
        Theorem::RhoUpperEquality,
        Theorem::SufficientCondition,
        Theorem::NecessaryCondition,
        Theorem::AbRemark,
        Theorem::TraceIdentities,
        Theorem::PositivePart,
        Theorem::LoopInvariance,
        Theorem::CharpolyCoefficients,
        Theorem::CharpolyInvariance,
        Theorem::ComponentCharpolys,
        Theorem::ZeroEnergy,
        Theorem::ComplementInvolution,
        Theorem::RegularRadius,
        Theorem::RegularComplement,
        Theorem::RegularEnergySum,
        Theorem::OracleEquivalence,
    ];

    pub fn bound(self) -> Option<BoundId> {
        Some(match self {
            Theorem::Mcclelland => BoundId::Mcclelland,
            Theorem::RhoLower => BoundId::RhoLower,
            Theorem::EnergyLowerC2 => BoundId::EnergyLowerC2,
            Theorem::RhoUpper => BoundId::RhoUpper,
            Theorem::ComponentGap => BoundId::ComponentGap,
            Theorem::ComplementRhoLower => BoundId::ComplementRhoLower,
            Theorem::ComplementRhoUpper => BoundId::ComplementRhoUpper,
            Theorem::ComplementEnergySum => BoundId::ComplementEnergySum,
            Theorem::PowerSumModulus => BoundId::PowerSumModulus,
            Theorem::PowerSumReal => BoundId::PowerSumReal,
            Theorem::PowerSumImag => BoundId::PowerSumImag,
            _ => return None,
        })
    }

    /// The bound whose equality structure this theorem checks.
    pub fn equality_of(self) -> Option<BoundId> {
        Some(match self {
            Theorem::McclellandEquality => BoundId::Mcclelland,
            Theorem::RhoLowerEquality => BoundId::RhoLower,
            Theorem::EnergyLowerC2Equality => BoundId::EnergyLowerC2,
            Theorem::RhoUpperEquality => BoundId::RhoUpper,
            _ => return None,
        })
    }

    pub fn name(self) -> String {
        serde_json::to_value(self).ok().and_then(|v| v.as_str().map(str::to_string)).expect("unit variant")
    }

    /// `"all"` or a comma-separated list of names.
    pub fn parse_list(s: &str) -> Result<Vec<Theorem>, EnumerateError> {
        if s.trim() == "all" {
            return Ok(Theorem::ALL.to_vec());
        }
        let mut out: Vec<Theorem> = s.split(',').map(|t| t.trim().parse()).collect::<Result<_, _>>()?;
        out.sort();
        out.dedup();
        Ok(out)
    }
}

impl fmt::Display for Theorem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for Theorem {
    type Err = EnumerateError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Theorem::ALL.into_iter().find(|t| t.name() == s).ok_or_else(|| EnumerateError::UnknownTheorem(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "mode")]
pub enum SweepMode {
    Exhaustive,
    /// Sample `i` uses seed `seed + i`.
    Sampled { samples: u64, seed: u64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepConfig {
    pub n: usize,
    pub theorems: Vec<Theorem>,
    pub mode: SweepMode,
    pub jobs: usize,
    pub arc_prob: f64,
    pub loop_prob: f64,
    pub bound_options: BoundOptions,
    /// Permits exhaustive `n = 5`.
    pub allow_large: bool,
    /// Stop all workers at the first counterexample.
    pub stop_on_counterexample: bool,
}

impl SweepConfig {
    pub fn exhaustive(n: usize) -> Self {
        SweepConfig {
            n,
            theorems: Theorem::ALL.to_vec(),
            mode: SweepMode::Exhaustive,
            jobs: 1,
            arc_prob: 0.5,
            loop_prob: 0.5,
            bound_options: BoundOptions::default(),
            allow_large: false,
            stop_on_counterexample: true,
        }
    }

    pub fn sampled(n: usize, samples: u64, seed: u64) -> Self {
        SweepConfig { mode: SweepMode::Sampled { samples, seed }, ..Self::exhaustive(n) }
    }

    pub fn with_theorems(mut self, theorems: &[Theorem]) -> Self {
        self.theorems = theorems.to_vec();
        self
    }

    fn graph(&self, index: u64) -> Result<Digraph, EnumerateError> {
        match self.mode {
            SweepMode::Exhaustive => graph_at(self.n, index),
            SweepMode::Sampled { seed, .. } => {
                random_digraph(self.n, self.arc_prob, self.loop_prob, seed.wrapping_add(index))
            }
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    pub pass: u64,
    pub fail: u64,
    pub na: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CensusEntry {
    /// Sorted `(out, in, loop)` degree triples and the characteristic polynomial.
    pub signature: String,
    pub graph: Digraph,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    /// Labeled graphs sharing the signature.
    pub labeled: u64,
    #[serde(skip)]
    first_index: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Census {
    /// Labeled graphs attaining equality.
    pub labeled: u64,
    pub classes: Vec<CensusEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub theorem: Theorem,
    pub index: u64,
    pub graph: Digraph,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub n: usize,
    #[serde(flatten)]
    pub mode: SweepMode,
    pub graphs_checked: u64,
    pub checks: BTreeMap<Theorem, Tally>,
    pub equality_census: BTreeMap<Theorem, Census>,
    pub counterexamples: Vec<Counterexample>,
    /// Solver failures; these are tool defects rather than theorem violations.
    pub numerical_errors: Vec<Counterexample>,
    pub aborted: bool,
    pub regular_graphs: u64,
    /// Applicable decompositions with every component ratio above `σ/n`.
    pub l_equals_k: u64,
    pub wall_time: f64,
}

impl SweepReport {
    pub fn clean(&self) -> bool {
        self.counterexamples.is_empty() && self.numerical_errors.is_empty() && !self.aborted
    }

    /// Report JSON without the timing field.
    pub fn deterministic_json(&self) -> serde_json::Value {
        let mut v = serde_json::to_value(self).expect("serializable");
        v.as_object_mut().expect("object").remove("wall_time");
        v
    }
}

enum Outcome {
    Pass,
    Equality(Option<String>),
    Fail(String),
    Numerical(String),
    NotApplicable,
}

#[derive(Default)]
struct Partial {
    checked: u64,
    tallies: BTreeMap<Theorem, Tally>,
    census: BTreeMap<Theorem, (u64, BTreeMap<String, CensusEntry>)>,
    counterexamples: Vec<Counterexample>,
    numerical: Vec<Counterexample>,
    regular: u64,
    l_equals_k: u64,
}

impl Partial {
    fn merge(&mut self, other: Partial) {
        self.checked += other.checked;
        for (t, x) in other.tallies {
            let e = self.tallies.entry(t).or_default();
            e.pass += x.pass;
            e.fail += x.fail;
            e.na += x.na;
        }
        for (t, (count, classes)) in other.census {
            let e = self.census.entry(t).or_default();
            e.0 += count;
            for (sig, entry) in classes {
                match e.1.get_mut(&sig) {
                    Some(mine) => {
                        mine.labeled += entry.labeled;
                        if entry.first_index < mine.first_index {
                            mine.graph = entry.graph;
                            mine.family = entry.family;
                            mine.first_index = entry.first_index;
                        }
                    }
                    None => {
                        e.1.insert(sig, entry);
                    }
                }
            }
        }
        self.counterexamples.extend(other.counterexamples);
        self.numerical.extend(other.numerical);
        self.regular += other.regular;
        self.l_equals_k += other.l_equals_k;
    }
}

fn signature(ctx: &GraphContext<f64>) -> String {
    let d = ctx.graph();
    let deg = d.degrees();
    let mut triples: Vec<(usize, usize, bool)> =
        (0..d.order()).map(|v| (deg.out_deg[v], deg.in_deg[v], d.has_loop(v))).collect();
    triples.sort();
    let degs: Vec<String> = triples.iter().map(|&(o, i, l)| format!("{o}/{i}{}", if l { "L" } else { "" })).collect();
    let cp: Vec<String> = ctx.charpoly().coefficients().iter().map(BigInt::to_string).collect();
    format!("[{}] [{}]", degs.join(" "), cp.join(" "))
}

fn poly_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn numerical(e: impl fmt::Display) -> Outcome {
    Outcome::Numerical(e.to_string())
}

fn spectral_outcome(e: SpectralError) -> Outcome {
    match e {
        SpectralError::NotRegular => Outcome::NotApplicable,
        other => numerical(other),
    }
}

fn check_bound(id: BoundId, ctx: &GraphContext<f64>, opts: &BoundOptions) -> Outcome {
    match certify(id, ctx, opts) {
        Err(BoundsError::OrderTooSmall { .. }) => Outcome::NotApplicable,
        Err(e) => numerical(e),
        Ok(c) if !c.holds => Outcome::Fail(format!("lhs {} > rhs {} (slack {:e})", c.lhs, c.rhs, c.slack)),
        Ok(c) if c.equality => Outcome::Equality(c.witness),
        Ok(_) => Outcome::Pass,
    }
}

fn check_equality_structure(id: BoundId, ctx: &GraphContext<f64>, opts: &BoundOptions) -> Outcome {
    match certify(id, ctx, opts) {
        Err(BoundsError::OrderTooSmall { .. }) => Outcome::NotApplicable,
        Err(e) => numerical(e),
        Ok(c) => pass_if(c.structure_consistent, || {
            format!(
                "equality flag {} disagrees with structure ({}); lhs {} rhs {} slack {:e}",
                c.equality,
                c.witness.as_deref().unwrap_or("no family"),
                c.lhs,
                c.rhs,
                c.slack
            )
        }),
    }
}

fn pass_if(ok: bool, detail: impl FnOnce() -> String) -> Outcome {
    if ok {
        Outcome::Pass
    } else {
        Outcome::Fail(detail())
    }
}

fn check_graph(
    d: &Digraph,
    index: u64,
    config: &SweepConfig,
    part: &mut Partial,
) {
    let ctx = GraphContext::<f64>::new(d);
    let st = ctx.stats();
    let n = st.n;
    let regular = d.regularity();
    part.checked += 1;
    if regular.is_some() {
        part.regular += 1;
    }
    let analysis = std::cell::OnceCell::new();
    let analysis = || analysis.get_or_init(|| analyze_context(&ctx));
    let mut counted_l = false;

    for &theorem in &config.theorems {
        let outcome = if let Some(id) = theorem.bound() {
            check_bound(id, &ctx, &config.bound_options)
        } else if let Some(id) = theorem.equality_of() {
            check_equality_structure(id, &ctx, &config.bound_options)
        } else {
            match theorem {
                Theorem::SufficientCondition | Theorem::NecessaryCondition | Theorem::AbRemark => match analysis() {
                    Err(e) => numerical(e),
                    Ok(a) if a.applicability() != Applicability::Applicable => Outcome::NotApplicable,
                    Ok(a) => {
                        if !counted_l && a.l == a.k {
                            part.l_equals_k += 1;
                            counted_l = true;
                        }
                        match theorem {
                            Theorem::SufficientCondition => {
                                let r = sufficient_condition(a);
                                pass_if(r.holds(), || format!("{r:?}"))
                            }
                            Theorem::NecessaryCondition => {
                                let r = necessary_condition(a);
                                pass_if(r.holds(), || format!("{r:?}"))
                            }
                            _ => pass_if(ab_remark_check(a) && a.sets_nested(), || {
                                format!("A-form {} vs B-form {}, nested {}", a.a_form(), a.b_form(), a.sets_nested())
                            }),
                        }
                    }
                },
                Theorem::TraceIdentities => match trace_identities_of(&ctx) {
                    Ok(t) => pass_if(t.holds(), || format!("{t:?}")),
                    Err(e) => numerical(e),
                },
                Theorem::PositivePart => match (ctx.energy(), positive_part(&ctx)) {
                    (Ok(e), Ok(p)) => pass_if((e - p).abs() <= tol::TRACE_PER_VERTEX * n as f64, || {
                        format!("energy {e} vs positive part {p}")
                    }),
                    (Err(e), _) => numerical(e),
                    (_, Err(e)) => numerical(e),
                },
                Theorem::LoopInvariance => {
                    if st.sigma != n {
                        Outcome::NotApplicable
                    } else {
                        let bare = GraphContext::<f64>::new(&d.loopless());
                        match (ctx.energy(), bare.energy()) {
                            (Ok(a), Ok(b)) => pass_if((a - b).abs() <= tol::TRACE_PER_VERTEX * n as f64, || {
                                format!("E(D_S) {a} vs E(D) {b}")
                            }),
                            (Err(e), _) | (_, Err(e)) => numerical(e),
                        }
                    }
                }
                Theorem::CharpolyCoefficients => {
                    let cp = ctx.charpoly();
                    let top = cp.coefficient(n - 1) == BigInt::from(-(st.sigma as i64));
                    let second = n < 2 || {
                        let twice = (st.sigma * st.sigma) as i64 - st.sigma as i64 - st.c2 as i64;
                        cp.coefficient(n - 2) * 2 == BigInt::from(twice)
                    };
                    pass_if(top && second, || format!("charpoly {cp}"))
                }
                Theorem::CharpolyInvariance => {
                    let pruned = GraphContext::<f64>::new(&prune_non_cycle_arcs(d));
                    pass_if(pruned.charpoly() == ctx.charpoly(), || {
                        format!("{} after pruning vs {}", pruned.charpoly(), ctx.charpoly())
                    })
                }
                Theorem::ComponentCharpolys => {
                    let product = ctx
                        .components()
                        .iter()
                        .fold(vec![BigInt::from(1)], |acc, c| poly_mul(&acc, &c.charpoly().coefficients()));
                    pass_if(product == ctx.charpoly().coefficients(), || {
                        format!("component product {product:?} vs {}", ctx.charpoly())
                    })
                }
                Theorem::ZeroEnergy => match zero_energy_of(&ctx) {
                    Ok(z) => pass_if(z.consistent(), || format!("{z:?}")),
                    Err(e) => numerical(e),
                },
                Theorem::ComplementInvolution => {
                    let back = d.complement().complement();
                    let expected = if st.sigma == n { d.loopless() } else { d.clone() };
                    pass_if(back == expected, || "double complement differs".to_string())
                }
                Theorem::RegularRadius => match (regular, ctx.rho()) {
                    (None, _) => Outcome::NotApplicable,
                    (Some(r), Ok(rho)) => pass_if((rho - r as f64).abs() <= tol::EXACT_MATCH * (r as f64).max(1.0), || {
                        format!("ρ {rho} vs r {r}")
                    }),
                    (Some(_), Err(e)) => numerical(e),
                },
                Theorem::RegularComplement => match complement_spectrum_map(&ctx) {
                    Err(e) => spectral_outcome(e),
                    Ok(mapped) => match ctx.complement().spectrum() {
                        Err(e) => numerical(e),
                        Ok(direct) => {
                            let dist = mapped.matching_distance(direct).unwrap_or(f64::INFINITY);
                            pass_if(dist <= tol::SPECTRUM_MATCH, || format!("mapped vs direct distance {dist:e}"))
                        }
                    },
                },
                Theorem::RegularEnergySum => match regular_energy_sum_of(&ctx) {
                    Err(e) => spectral_outcome(e),
                    Ok(r) => pass_if(r.agrees(tol::EQUALITY), || {
                        format!("closed form {} vs direct {}", r.closed_form, r.direct)
                    }),
                },
                Theorem::OracleEquivalence => match (ctx.spectrum(), ctx.oracle_spectrum()) {
                    (Ok(a), Ok(b)) => {
                        let dist = a.matching_distance(b).unwrap_or(f64::INFINITY);
                        let exact = n > LINEAR_SUBDIGRAPH_MAX_N
                            || linear_subdigraph_charpoly(d).map(|p| &p == ctx.charpoly()).unwrap_or(false);
                        pass_if(dist <= tol::SPECTRUM_MATCH && exact, || {
                            format!("QR vs roots distance {dist:e}, charpoly routes agree {exact}")
                        })
                    }
                    (Err(e), _) | (_, Err(e)) => numerical(e),
                },
                _ => unreachable!("bound theorems handled above"),
            }
        };

        let tally = part.tallies.entry(theorem).or_default();
        match outcome {
            Outcome::Pass => tally.pass += 1,
            Outcome::Equality(family) => {
                tally.pass += 1;
                let (count, classes) = part.census.entry(theorem).or_default();
                *count += 1;
                let sig = signature(&ctx);
                classes
                    .entry(sig.clone())
                    .and_modify(|e| e.labeled += 1)
                    .or_insert(CensusEntry { signature: sig, graph: d.clone(), family, labeled: 1, first_index: index });
            }
            Outcome::NotApplicable => tally.na += 1,
            Outcome::Fail(detail) => {
                tally.fail += 1;
                part.counterexamples.push(Counterexample { theorem, index, graph: d.clone(), detail });
            }
            Outcome::Numerical(detail) => {
                tally.fail += 1;
                part.numerical.push(Counterexample { theorem, index, graph: d.clone(), detail });
            }
        }
    }
}

fn total_graphs(config: &SweepConfig) -> Result<u64, EnumerateError> {
    match config.mode {
        SweepMode::Exhaustive => {
            let max = if config.allow_large { EXHAUSTIVE_MAX_N } else { EXHAUSTIVE_DEFAULT_MAX_N };
            if config.n > max || config.n == 0 {
                return Err(EnumerateError::SizeLimit { n: config.n, max });
            }
            Ok(pattern_count(config.n))
        }
        SweepMode::Sampled { samples, .. } => {
            if config.n == 0 {
                return Err(GraphError::NoVertices.into());
            }
            for p in [config.arc_prob, config.loop_prob] {
                if !(0.0..=1.0).contains(&p) {
                    return Err(EnumerateError::BadProbability(p));
                }
            }
            Ok(samples)
        }
    }
}

fn run_range(config: &SweepConfig, range: std::ops::Range<u64>, abort: &AtomicBool) -> Partial {
    let mut part = Partial::default();
    for index in range {
        if abort.load(Ordering::Relaxed) {
            break;
        }
        let d = config.graph(index).expect("validated configuration");
        check_graph(&d, index, config, &mut part);
        if config.stop_on_counterexample && !part.counterexamples.is_empty() {
            abort.store(true, Ordering::Relaxed);
        }
    }
    part
}

/// Runs the selected checkers on every generated graph. The index range is
/// split into contiguous chunks, one per worker, merged in order.
pub fn sweep(config: &SweepConfig) -> Result<SweepReport, EnumerateError> {
    let total = total_graphs(config)?;
    let start = Instant::now();
    let abort = AtomicBool::new(false);
    let jobs = config.jobs.max(1) as u64;
    let chunk = total.div_ceil(jobs).max(1);
    let ranges: Vec<_> = (0..jobs).map(|j| (j * chunk).min(total)..((j + 1) * chunk).min(total)).collect();

    let parts: Vec<Partial> = if jobs == 1 {
        vec![run_range(config, 0..total, &abort)]
    } else {
        std::thread::scope(|s| {
            let handles: Vec<_> =
                ranges.into_iter().map(|r| s.spawn(|| run_range(config, r, &abort))).collect();
            handles.into_iter().map(|h| h.join().expect("sweep worker panicked")).collect()
        })
    };
    let mut merged = Partial::default();
    for p in parts {
        merged.merge(p);
    }
    let mut checks: BTreeMap<Theorem, Tally> = config.theorems.iter().map(|&t| (t, Tally::default())).collect();
    checks.extend(merged.tallies);
    merged.counterexamples.sort_by_key(|c| (c.index, c.theorem));
    merged.numerical.sort_by_key(|c| (c.index, c.theorem));
    let equality_census = merged
        .census
        .into_iter()
        .map(|(t, (labeled, classes))| {
            let mut classes: Vec<CensusEntry> = classes.into_values().collect();
            classes.sort_by_key(|c| c.first_index);
            (t, Census { labeled, classes })
        })
        .collect();
    Ok(SweepReport {
        n: config.n,
        mode: config.mode,
        graphs_checked: merged.checked,
        checks,
        equality_census,
        aborted: merged.checked < total,
        counterexamples: merged.counterexamples,
        numerical_errors: merged.numerical,
        regular_graphs: merged.regular,
        l_equals_k: merged.l_equals_k,
        wall_time: start.elapsed().as_secs_f64(),
    })
}
