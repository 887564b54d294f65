//! Level-by-level gauge reduction of a Maurer-Cartan element onto a fixed
//! Maurer-Cartan representative.
//!
//! Write `u = v + δ` with `δ ∈ L^{≥r}`. For a degree-0 `g ∈ L^{≥s}`,
//!
//! ```text
//! g·u = v + δ − φ(ad_g)(d_v g) + (e^{ad_g} − 1)δ,    φ(t) = (e^t − 1)/t,
//! ```
//!
//! so once `d_v g ≡ δ_r` holds on lengths `s..r`, every nonlinear term sits
//! in `L^{≥r+s}` and `g·u − v ∈ L^{≥r+1}`. Each step is therefore one exact
//! linear solve. The window `[1, r]` is complete: any gauge raising the
//! level restricts to a solution of it.

use num_traits::One;

use crate::cdgl::{solve_leading_budget, Cdgl, Derivation, DEFAULT_UNKNOWN_BUDGET};
use crate::contraction::Contraction;
use crate::error::{CdglError, Result};
use crate::lie::{Context, LieElement};
use crate::rational::Rational;
use crate::series::{bch_product, gauge, GaugeElement};

/// One gauge factor together with the level it cleared.
#[derive(Clone, Debug, PartialEq)]
pub struct ReductionStep {
    /// `u − v` had this filtration level before the step.
    pub level: usize,
    pub factor: LieElement,
}

/// Solves one reduction step at a time against a fixed representative.
pub struct Reducer<'a> {
    cdgl: &'a Cdgl,
    target: LieElement,
    op: Derivation,
    contraction: Option<&'a Contraction>,
    /// Smallest bracket length allowed in a gauge factor.
    pub min_length: usize,
    pub budget: usize,
}

impl<'a> Reducer<'a> {
    /// `target` must be Maurer-Cartan; the linear operator is `d_target`.
    pub fn new(cdgl: &'a Cdgl, target: &LieElement, contraction: Option<&'a Contraction>) -> Result<Self> {
        if !cdgl.is_mc(target)? {
            return Err(CdglError::NotMaurerCartan);
        }
        let op = if target.is_zero() { cdgl.derivation().clone() } else { cdgl.derivation().plus_ad(target)? };
        Ok(Reducer { cdgl, target: target.clone(), op, contraction, min_length: 1, budget: DEFAULT_UNKNOWN_BUDGET })
    }

    pub fn target(&self) -> &LieElement {
        &self.target
    }

    /// Level of `u − target`; `N + 1` when they agree.
    pub fn level(&self, u: &LieElement) -> usize {
        (u - &self.target).filtration_level()
    }

    /// One step: returns `g·u` and the factor `g`.
    pub fn step(&self, u: &LieElement) -> Result<(LieElement, ReductionStep)> {
        let n = self.cdgl.ctx().truncation();
        let r = self.level(u);
        if r > n {
            return Ok((u.clone(), ReductionStep { level: r, factor: LieElement::zero(self.cdgl.ctx()) }));
        }
        let lead = (u - &self.target).length_component(r);
        let factor = self
            .contraction
            .and_then(|c| c.primitive(&self.op, &lead))
            .or_else(|| {
                (self.min_length.max(1)..=r).rev().find_map(|lo| solve_leading_budget(&self.op, &lead, 0, lo, self.budget))
            })
            .ok_or_else(|| CdglError::ReductionStuck { level: r, detail: format!("no gauge factor clears {lead}") })?;
        let next = gauge(&factor, u, self.cdgl)?;
        if self.level(&next) <= r {
            return Err(CdglError::ReductionStuck { level: r, detail: "gauge factor did not raise the level".into() });
        }
        Ok((next, ReductionStep { level: r, factor }))
    }

    /// Steps until `u` equals the target modulo the truncation.
    pub fn run(&self, u: &LieElement) -> Result<Vec<ReductionStep>> {
        let n = self.cdgl.ctx().truncation();
        let mut cur = u.clone();
        let mut steps = Vec::new();
        while self.level(&cur) <= n {
            let (next, step) = self.step(&cur)?;
            steps.push(step);
            cur = next;
        }
        Ok(steps)
    }
}

/// One reduction step of `u` towards the Maurer-Cartan element `target`,
/// where `u − target ∈ L^{≥r}`.
pub fn reduce_step(cdgl: &Cdgl, u: &LieElement, target: &LieElement, r: usize) -> Result<(LieElement, ReductionStep)> {
    let reducer = Reducer::new(cdgl, target, None)?;
    let level = reducer.level(u);
    if level < r {
        return Err(CdglError::ReductionStuck { level, detail: format!("difference is below the requested level {r}") });
    }
    reducer.step(u)
}

/// The single gauge element of a reduction: factors applied first sit
/// rightmost in the BCH product.
pub fn compose_reduction(ctx: &Context, steps: &[ReductionStep]) -> Result<GaugeElement> {
    if steps.windows(2).any(|w| w[1].level <= w[0].level) {
        return Err(CdglError::NonIncreasingLevels);
    }
    let factors: Vec<LieElement> = steps.iter().rev().map(|s| s.factor.clone()).filter(|f| !f.is_zero()).collect();
    if factors.is_empty() {
        return GaugeElement::new(LieElement::zero(ctx));
    }
    GaugeElement::new(bch_product(&factors)?)
}

/// `gauge(g, u) − target`, which a verified witness makes zero.
pub fn witness_defect(cdgl: &Cdgl, g: &GaugeElement, u: &LieElement, target: &LieElement) -> Result<LieElement> {
    let mut out = g.act(u, cdgl)?;
    out.add_scaled(&-Rational::one(), target);
    Ok(out)
}
