//! Energy of a loop-digraph against the energies of its strong components.

use num_rational::Rational64;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::graph::Digraph;
use crate::linalg::{LinalgError, Spectrum};
use crate::scalar::Real;
use crate::spectral::GraphContext;
use crate::tol;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComponentSummary<T: Real> {
    /// Position in the strong-component partition (sinks first).
    pub scc_index: usize,
    pub vertices: Vec<usize>,
    pub order: usize,
    pub loops: usize,
    #[serde(serialize_with = "ser_ratio")]
    pub ratio: Rational64,
    pub spectrum: Spectrum<T>,
    pub energy: T,
    /// Eigenvalue indices with `Re λ > σ/n`.
    pub a_set: Vec<usize>,
    /// Eigenvalue indices with `Re λ > σ_i/n_i`.
    pub b_set: Vec<usize>,
}

/// Per-component data, components sorted by `σ_i/n_i` descending (stable in
/// partition order) so the first `l` are exactly those above `σ/n`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ComponentAnalysis<T: Real> {
    pub n: usize,
    pub sigma: usize,
    #[serde(serialize_with = "ser_ratio")]
    pub center: Rational64,
    pub components: Vec<ComponentSummary<T>>,
    pub total_energy: T,
    pub sum_component_energy: T,
    pub k: usize,
    pub l: usize,
}

fn ser_ratio<S: Serializer>(r: &Rational64, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_f64(ratio_f64(*r))
}

fn ratio_f64(r: Rational64) -> f64 {
    r.to_f64().expect("small ratio")
}

impl<T: Real> ComponentAnalysis<T> {
    /// `σ_i/n_i − σ/n` per component.
    pub fn weights(&self) -> Vec<Rational64> {
        self.components.iter().map(|c| c.ratio - self.center).collect()
    }

    /// `Σ_{i≤l} (σ_i/n_i − σ/n)|A_i| − Σ_{i>l} (σ/n − σ_i/n_i)|A_i|`.
    pub fn a_form(&self) -> Rational64 {
        self.form(|c| c.a_set.len())
    }

    /// As [`Self::a_form`] with `|B_i|`.
    pub fn b_form(&self) -> Rational64 {
        self.form(|c| c.b_set.len())
    }

    fn form(&self, size: impl Fn(&ComponentSummary<T>) -> usize) -> Rational64 {
        self.components
            .iter()
            .zip(self.weights())
            .map(|(c, w)| w * Rational64::from_integer(size(c) as i64))
            .fold(Rational64::zero(), |acc, x| acc + x)
    }

    /// `E(D) − Σ E(D_i)`.
    pub fn energy_gap(&self) -> f64 {
        (self.total_energy - self.sum_component_energy).to_f64().expect("finite")
    }

    pub fn applicability(&self) -> Applicability {
        if self.k == 1 {
            Applicability::SingleComponent
        } else if self.l == 0 {
            Applicability::Degenerate
        } else {
            Applicability::Applicable
        }
    }

    /// `B_i ⊆ A_i` for `i ≤ l` and `A_i ⊆ B_i` for `i > l`.
    pub fn sets_nested(&self) -> bool {
        self.components.iter().enumerate().all(|(i, c)| {
            let (inner, outer) = if i < self.l { (&c.b_set, &c.a_set) } else { (&c.a_set, &c.b_set) };
            inner.iter().all(|j| outer.contains(j))
        })
    }
}

pub fn analyze<T: Real>(d: &Digraph) -> Result<ComponentAnalysis<T>, LinalgError> {
    analyze_context(&GraphContext::new(d))
}

pub fn analyze_context<T: Real>(ctx: &GraphContext<T>) -> Result<ComponentAnalysis<T>, LinalgError> {
    let st = ctx.stats();
    let center = Rational64::new(st.sigma as i64, st.n as i64);
    let center_f = ratio_f64(center);
    let mut components = Vec::with_capacity(ctx.components().len());
    for (idx, part) in ctx.components().iter().enumerate() {
        let pst = part.stats();
        let ratio = Rational64::new(pst.sigma as i64, pst.n as i64);
        let ratio_f = ratio_f64(ratio);
        let spectrum = part.spectrum()?.clone();
        let re: Vec<f64> = spectrum.real_parts().map(|x| x.to_f64().expect("finite")).collect();
        let above = |t: f64| (0..re.len()).filter(|&j| tol::strictly_above(re[j], t)).collect::<Vec<_>>();
        components.push(ComponentSummary {
            scc_index: idx,
            vertices: ctx.scc().components[idx].clone(),
            order: pst.n,
            loops: pst.sigma,
            ratio,
            energy: part.energy()?,
            a_set: above(center_f),
            b_set: above(ratio_f),
            spectrum,
        });
    }
    components.sort_by_key(|c| std::cmp::Reverse(c.ratio));
    let l = components.iter().filter(|c| c.ratio > center).count();
    let sum_component_energy = components.iter().map(|c| c.energy).sum();
    Ok(ComponentAnalysis {
        n: st.n,
        sigma: st.sigma,
        center,
        k: components.len(),
        l,
        components,
        total_energy: ctx.energy()?,
        sum_component_energy,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Applicability {
    Applicable,
    /// Every component has `σ_i/n_i = σ/n`, so no valid `l` exists.
    Degenerate,
    /// `k = 1`.
    SingleComponent,
}

/// One evaluation of an implication `P ⇒ Q` with its strict companion
/// `P strict ⇒ Q strict`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ImplicationRecord {
    pub status: Applicability,
    pub antecedent_holds: bool,
    pub antecedent_strict: bool,
    pub consequent_holds: bool,
    pub consequent_strict: bool,
    pub implication_ok: bool,
    pub strictness_ok: bool,
    /// `Σ (σ_i/n_i − σ/n)|A_i|` (or `|B_i|`), the set-size side.
    pub set_form: f64,
    /// `E(D) − Σ E(D_i)`.
    pub energy_gap: f64,
}

impl ImplicationRecord {
    pub fn holds(&self) -> bool {
        self.status != Applicability::Applicable || (self.implication_ok && self.strictness_ok)
    }

    fn build(status: Applicability, p: (bool, bool), q: (bool, bool), set_form: f64, energy_gap: f64) -> Self {
        let applicable = status == Applicability::Applicable;
        ImplicationRecord {
            status,
            antecedent_holds: p.0,
            antecedent_strict: p.1,
            consequent_holds: q.0,
            consequent_strict: q.1,
            implication_ok: !applicable || !p.0 || q.0,
            strictness_ok: !applicable || !p.1 || q.1,
            set_form,
            energy_gap,
        }
    }
}

/// `(gap ≤ 0, gap < 0)` for the energy side, with the equality tolerance.
fn energy_side<T: Real>(a: &ComponentAnalysis<T>) -> (bool, bool) {
    let gap = a.energy_gap();
    let band = tol::EQUALITY * a.sum_component_energy.to_f64().expect("finite").max(1.0);
    (gap <= band, gap < -band)
}

fn set_side(form: Rational64) -> (bool, bool) {
    (!form.is_positive(), form.is_negative())
}

/// `Σ w_i|A_i| ≤ 0 ⇒ E(D) ≤ Σ E(D_i)`, strict to strict.
pub fn sufficient_condition<T: Real>(a: &ComponentAnalysis<T>) -> ImplicationRecord {
    let form = a.a_form();
    ImplicationRecord::build(a.applicability(), set_side(form), energy_side(a), ratio_f64(form), a.energy_gap())
}

/// `E(D) ≤ Σ E(D_i) ⇒ Σ w_i|B_i| ≤ 0`, strict to strict.
pub fn necessary_condition<T: Real>(a: &ComponentAnalysis<T>) -> ImplicationRecord {
    let form = a.b_form();
    ImplicationRecord::build(a.applicability(), energy_side(a), set_side(form), ratio_f64(form), a.energy_gap())
}

/// The A-form is never below the B-form.
pub fn ab_remark_check<T: Real>(a: &ComponentAnalysis<T>) -> bool {
    a.a_form() >= a.b_form()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, Family};

    fn two_component() -> Digraph {
        let k2p = Digraph::new(2, &[(0, 1), (1, 0)], &[0]).unwrap();
        let c3 = Digraph::new(3, &[(0, 2), (2, 1), (1, 0)], &[0, 2]).unwrap();
        Digraph::disjoint_union(&[k2p, c3]).unwrap()
    }

    #[test]
    fn two_component_analysis() {
        let a = analyze::<f64>(&two_component()).unwrap();
        assert_eq!((a.k, a.l), (2, 1));
        assert_eq!(a.components[0].ratio, Rational64::new(2, 3));
        assert_eq!(a.components[1].ratio, Rational64::new(1, 2));
        assert!((a.components[1].energy - 5f64.sqrt()).abs() < 1e-12);
        assert!((a.components[0].energy - 2.1764).abs() < 5e-5);
        assert!((a.sum_component_energy - 4.4125).abs() < 5e-5);
        assert!((a.total_energy - 4.3458).abs() < 5e-5);
        // Center 3/5: only 1.7549 clears it in the cycle, only φ in K₂⁺.
        assert_eq!(a.components[0].a_set.len(), 1);
        assert_eq!(a.components[1].a_set.len(), 1);
        assert!(a.sets_nested());

        let suff = sufficient_condition(&a);
        assert_eq!(suff.status, Applicability::Applicable);
        assert!(suff.holds());
        let nec = necessary_condition(&a);
        assert!(nec.antecedent_strict && nec.consequent_strict && nec.holds());
        assert!(ab_remark_check(&a));
    }

    #[test]
    fn single_component() {
        let d = generate(&Family::DirectedCycle { n: 4, loops: vec![1] }).unwrap();
        let a = analyze::<f64>(&d).unwrap();
        assert_eq!(a.k, 1);
        assert!((a.total_energy - a.sum_component_energy).abs() < 1e-12);
        assert_eq!(sufficient_condition(&a).status, Applicability::SingleComponent);
        assert_eq!(necessary_condition(&a).status, Applicability::SingleComponent);
    }

    #[test]
    fn degenerate_partition() {
        let full2 = generate(&Family::Complete { n: 2, loops: vec![0, 1] }).unwrap();
        let d = Digraph::disjoint_union(&[full2.clone(), full2]).unwrap();
        let a = analyze::<f64>(&d).unwrap();
        assert_eq!((a.k, a.l), (2, 0));
        assert_eq!(sufficient_condition(&a).status, Applicability::Degenerate);
        assert!(sufficient_condition(&a).holds());
    }

    #[test]
    fn loopless_components_are_additive() {
        let k2 = generate(&Family::Complete { n: 2, loops: vec![] }).unwrap();
        let d = Digraph::disjoint_union(&[k2.clone(), k2]).unwrap();
        let a = analyze::<f64>(&d).unwrap();
        assert!((a.total_energy - 4.0).abs() < 1e-12);
        assert!((a.sum_component_energy - 4.0).abs() < 1e-12);
        assert_eq!(a.applicability(), Applicability::Degenerate);
        assert!(ab_remark_check(&a));
    }

    #[test]
    fn non_cycle_arcs_do_not_matter() {
        let mut arcs: Vec<_> = two_component().arcs().to_vec();
        arcs.push((0, 3));
        let d = Digraph::new(5, &arcs, two_component().loops()).unwrap();
        let a = analyze::<f64>(&d).unwrap();
        assert_eq!(a.k, 2);
        assert!((a.total_energy - 4.3458).abs() < 5e-5);
    }
}
