//! Paths of order `r` between Maurer-Cartan elements.
//!
//! A path is a dgl map from the interval `L(a,b,x)`. It is recorded here by
//! its gauge word `g = −φ(x)`, which satisfies `gauge(g, φ(a)) = φ(b)`; the
//! order is a lower bound on the bracket length of `g`.

use crate::cdgl::{Cdgl, Morphism};
use crate::error::{CdglError, Result};
use crate::lie::LieElement;
use crate::series::{bch_product, gauge};
use crate::simplicial::interval::cylinder_iso;

use super::reduce::Reducer;

#[derive(Clone, Debug, PartialEq)]
pub struct OrderRPath {
    pub source: LieElement,
    pub target: LieElement,
    pub word: LieElement,
    pub order: usize,
}

impl OrderRPath {
    /// Checks `gauge(word, source) = target` and that `word ∈ L^{≥order}`.
    pub fn verify(&self, cdgl: &Cdgl) -> Result<()> {
        if self.word.filtration_level() < self.order {
            return Err(CdglError::Verification(format!(
                "path word has level {} < {}",
                self.word.filtration_level(),
                self.order
            )));
        }
        if gauge(&self.word, &self.source, cdgl)? != self.target {
            return Err(CdglError::Verification("path word does not carry source to target".into()));
        }
        Ok(())
    }
}

/// The path `f∘ψ` from a Maurer-Cartan `u`, where `f` sends the cylinder
/// generators `a, c, y` to `u, −dz, −z`. For `z ∈ L^{≥r}` its endpoint is
/// `u − (dz)_r` up to `L^{≥r+1}`.
pub fn lemma_path(cdgl: &Cdgl, u: &LieElement, z: &LieElement, r: usize) -> Result<OrderRPath> {
    if !cdgl.is_mc(u)? {
        return Err(CdglError::NotMaurerCartan);
    }
    z.check_degree(0)?;
    if z.filtration_level() < r {
        return Err(CdglError::Verification(format!("z has level {} < {r}", z.filtration_level())));
    }
    let cyl = cylinder_iso(cdgl.ctx().truncation())?;
    let f = Morphism::new(cyl.cylinder.ctx(), cdgl.ctx(), vec![u.clone(), -&cdgl.apply_d(z), -z])?;
    let res = f.chain_map_residues(&cyl.cylinder, cdgl);
    if !res.is_empty() {
        return Err(CdglError::Verification("f is not a dgl map".into()));
    }
    let phi = cyl.forward.then(&f)?;
    let path = OrderRPath { source: phi.image(0).clone(), target: phi.image(1).clone(), word: -phi.image(2), order: r };
    path.verify(cdgl)?;
    Ok(path)
}

/// Concatenates consecutive paths of strictly increasing order into one
/// path of the first order; the word is the BCH product, latest leftmost.
pub fn compose_paths(cdgl: &Cdgl, paths: &[OrderRPath]) -> Result<OrderRPath> {
    let first = paths.first().ok_or(CdglError::EmptyProduct)?;
    for w in paths.windows(2) {
        if w[1].order <= w[0].order {
            return Err(CdglError::NonIncreasingLevels);
        }
        if w[0].target != w[1].source {
            return Err(CdglError::Verification("paths are not consecutive".into()));
        }
    }
    let words: Vec<LieElement> = paths.iter().rev().map(|p| p.word.clone()).collect();
    let path = OrderRPath {
        source: first.source.clone(),
        target: paths.last().unwrap().target.clone(),
        word: bch_product(&words)?,
        order: first.order,
    };
    path.verify(cdgl)?;
    Ok(path)
}

/// A path of order `r` from `u` to `v`, found by reducing `u` onto `v` with
/// gauge factors of bracket length at least `r`; `None` if `u − v` is below
/// level `r` or no such factors exist.
pub fn order_r_path(cdgl: &Cdgl, u: &LieElement, v: &LieElement, r: usize) -> Result<Option<OrderRPath>> {
    if !cdgl.is_mc(u)? {
        return Err(CdglError::NotMaurerCartan);
    }
    let mut reducer = Reducer::new(cdgl, v, None)?;
    reducer.min_length = r;
    if reducer.level(u) < r {
        return Ok(None);
    }
    let steps = match reducer.run(u) {
        Ok(s) => s,
        Err(CdglError::ReductionStuck { .. }) => return Ok(None),
        Err(e) => return Err(e),
    };
    let factors: Vec<LieElement> = steps.iter().rev().map(|s| s.factor.clone()).filter(|f| !f.is_zero()).collect();
    let word = if factors.is_empty() { LieElement::zero(cdgl.ctx()) } else { bch_product(&factors)? };
    let path = OrderRPath { source: u.clone(), target: v.clone(), word, order: r };
    path.verify(cdgl)?;
    Ok(Some(path))
}
