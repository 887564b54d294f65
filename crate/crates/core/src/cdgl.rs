//! Differentials as degree −1 derivations, the Maurer-Cartan predicate,
//! perturbed differentials, dgl morphisms, and the exact linear solvers
//! used by model building and classification.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{CdglError, Result};
use crate::lie::basis::{monomials_with_content, LieMonomial};
use crate::lie::element::{add_term, same_context, tensor_product, word_degree};
use crate::lie::word::sorted_content;
use crate::lie::{basis, Context, LieElement, TensorMap, Word};
use crate::linalg;
use crate::rational::Rational;

/// Anything that acts as a differential on elements of one context.
pub trait Differential {
    fn ctx(&self) -> &Context;
    fn apply(&self, u: &LieElement) -> LieElement;
}

/// A derivation of the free Lie algebra, determined by its values on
/// generators and extended by the graded Leibniz rule.
#[derive(Clone, Debug)]
pub struct Derivation {
    ctx: Context,
    degree: i32,
    images: Vec<LieElement>,
    // image terms of each generator, shortest words first
    by_length: Arc<Vec<Vec<(Word, Rational)>>>,
}

impl Derivation {
    /// `images[letter]` is the value on that generator; each must have
    /// degree `deg(letter) + degree` (or be zero).
    pub fn new(ctx: &Context, degree: i32, images: Vec<LieElement>) -> Result<Self> {
        if images.len() != ctx.len() {
            return Err(CdglError::Verification(format!(
                "derivation needs {} generator images, got {}",
                ctx.len(),
                images.len()
            )));
        }
        for (l, img) in images.iter().enumerate() {
            if !same_context(img.ctx(), ctx) {
                return Err(CdglError::ContextMismatch);
            }
            img.check_degree(ctx.degree(l as u16) + degree)?;
        }
        Ok(Self::assemble(ctx, degree, images))
    }

    fn assemble(ctx: &Context, degree: i32, images: Vec<LieElement>) -> Self {
        let by_length = images
            .iter()
            .map(|img| {
                let mut terms: Vec<(Word, Rational)> = img.tensor_terms().iter().map(|(w, c)| (w.clone(), c.clone())).collect();
                terms.sort_by_key(|(w, _)| w.len());
                terms
            })
            .collect();
        Derivation { ctx: ctx.clone(), degree, images, by_length: Arc::new(by_length) }
    }

    pub fn zero(ctx: &Context, degree: i32) -> Self {
        Self::assemble(ctx, degree, vec![LieElement::zero(ctx); ctx.len()])
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn image(&self, letter: u16) -> &LieElement {
        &self.images[letter as usize]
    }

    pub fn images(&self) -> &[LieElement] {
        &self.images
    }

    pub(crate) fn apply_map(&self, terms: &TensorMap) -> TensorMap {
        let n = self.ctx.truncation();
        let mut out = TensorMap::new();
        for (w, c) in terms {
            let mut prefix_deg = 0i32;
            for i in 0..w.len() {
                let odd = (self.degree * prefix_deg) % 2 != 0;
                let rest = w.len() - 1;
                for (piece, pc) in self.by_length[w[i] as usize].iter().take_while(|(p, _)| rest + p.len() <= n) {
                    let mut nw: Word = Word::with_capacity(rest + piece.len());
                    nw.extend_from_slice(&w[..i]);
                    nw.extend_from_slice(piece);
                    nw.extend_from_slice(&w[i + 1..]);
                    let v = c * pc;
                    add_term(&mut out, nw, &if odd { -v } else { v });
                }
                prefix_deg += self.ctx.degree(w[i]);
            }
        }
        out
    }

    /// `self + ad_a` where `a` has degree `self.degree`.
    pub fn plus_ad(&self, a: &LieElement) -> Result<Derivation> {
        if !same_context(a.ctx(), &self.ctx) {
            return Err(CdglError::ContextMismatch);
        }
        a.check_degree(self.degree)?;
        let images = (0..self.ctx.len())
            .map(|l| {
                let g = LieElement::generator(&self.ctx, l as u16);
                &self.images[l] + &a.bracket_unchecked(&g)
            })
            .collect();
        Ok(Self::assemble(&self.ctx, self.degree, images))
    }

    /// Keeps only the bracket-length-preserving part of each generator image.
    pub fn linear_part(&self) -> Derivation {
        let images = self.images.iter().map(|e| e.length_component(1)).collect();
        Self::assemble(&self.ctx, self.degree, images)
    }

    /// Residues `D(D(g))` that are nonzero, per generator.
    pub fn square_residues(&self) -> Vec<(u16, LieElement)> {
        (0..self.ctx.len() as u16)
            .filter_map(|l| {
                let r = self.apply(&self.images[l as usize]);
                (!r.is_zero()).then_some((l, r))
            })
            .collect()
    }
}

impl Differential for Derivation {
    fn ctx(&self) -> &Context {
        &self.ctx
    }

    fn apply(&self, u: &LieElement) -> LieElement {
        assert!(same_context(u.ctx(), &self.ctx), "context mismatch");
        LieElement::from_tensor(&self.ctx, self.apply_map(u.tensor_terms()))
    }
}

/// Report of `d∘d` on generators.
#[derive(Clone, Debug)]
pub struct DSquaredReport {
    pub residues: Vec<(String, LieElement)>,
}

impl DSquaredReport {
    pub fn is_clean(&self) -> bool {
        self.residues.is_empty()
    }
}

/// A truncated complete dgl: free graded Lie algebra plus a differential.
#[derive(Clone, Debug)]
pub struct Cdgl {
    d: Derivation,
}

impl Cdgl {
    /// Builds the dgl and checks `d∘d ≡ 0` on every generator.
    pub fn new(ctx: &Context, table: Vec<LieElement>) -> Result<Self> {
        let c = Self::new_unchecked(ctx, table)?;
        let rep = c.check_d_squared();
        if !rep.is_clean() {
            let names: Vec<_> = rep.residues.iter().map(|(l, _)| l.clone()).collect();
            return Err(CdglError::DSquaredNonzero(names.join(", ")));
        }
        Ok(c)
    }

    /// Builds without the `d∘d` check (intermediate solver states).
    pub fn new_unchecked(ctx: &Context, table: Vec<LieElement>) -> Result<Self> {
        Ok(Cdgl { d: Derivation::new(ctx, -1, table)? })
    }

    /// Table given by labels; unlisted generators have zero differential.
    pub fn from_labels(ctx: &Context, table: &[(&str, LieElement)]) -> Result<Self> {
        let mut images = vec![LieElement::zero(ctx); ctx.len()];
        for (lab, e) in table {
            let l = ctx.letter(lab).ok_or_else(|| CdglError::UnknownGenerator(lab.to_string()))?;
            images[l as usize] = e.clone();
        }
        Self::new(ctx, images)
    }

    pub fn ctx(&self) -> &Context {
        &self.d.ctx
    }

    pub fn derivation(&self) -> &Derivation {
        &self.d
    }

    pub fn differential_of(&self, letter: u16) -> &LieElement {
        self.d.image(letter)
    }

    pub fn apply_d(&self, u: &LieElement) -> LieElement {
        self.d.apply(u)
    }

    pub fn check_d_squared(&self) -> DSquaredReport {
        let residues = self.d.square_residues().into_iter().map(|(l, r)| (self.ctx().label(l).to_string(), r)).collect();
        DSquaredReport { residues }
    }

    /// `du + ½[u,u] ≡ 0`.
    pub fn is_mc(&self, u: &LieElement) -> Result<bool> {
        if !u.same_context(&LieElement::zero(self.ctx())) {
            return Err(CdglError::ContextMismatch);
        }
        u.check_degree(-1)?;
        Ok(self.mc_curvature(u).is_zero())
    }

    /// `du + ½[u,u]`
    pub fn mc_curvature(&self, u: &LieElement) -> LieElement {
        let mut r = self.apply_d(u);
        r.add_scaled(&Rational::new(1, 2), &u.bracket_unchecked(u));
        r
    }

    /// The perturbed differential `d_a = d + ad_a` for a Maurer-Cartan `a`.
    pub fn perturb(&self, a: &LieElement) -> Result<PerturbedDifferential> {
        if !self.is_mc(a)? {
            return Err(CdglError::NotMaurerCartan);
        }
        let da = self.d.plus_ad(a)?;
        let res = da.square_residues();
        if !res.is_empty() {
            return Err(CdglError::Verification("d_a squared is nonzero".into()));
        }
        Ok(PerturbedDifferential { base: a.clone(), d: da })
    }

    /// Dimension of homology of the length-preserving part of `d` on the
    /// (degree, length) block.
    pub fn homology_block(&self, degree: i32, length: usize) -> usize {
        homology_block(&self.d.linear_part(), degree, length)
    }
}

impl Differential for Cdgl {
    fn ctx(&self) -> &Context {
        self.d.ctx()
    }
    fn apply(&self, u: &LieElement) -> LieElement {
        self.d.apply(u)
    }
}

/// `d_a = d + ad_a`.
#[derive(Clone, Debug)]
pub struct PerturbedDifferential {
    pub base: LieElement,
    pub d: Derivation,
}

impl Differential for PerturbedDifferential {
    fn ctx(&self) -> &Context {
        self.d.ctx()
    }
    fn apply(&self, u: &LieElement) -> LieElement {
        self.d.apply(u)
    }
}

/// dim ker / im of a length-preserving derivation on the (degree, length)
/// block of the free Lie algebra.
pub fn homology_block(op: &Derivation, degree: i32, length: usize) -> usize {
    let ctx = op.ctx().clone();
    let cols = |deg: i32| -> Vec<TensorMap> {
        basis(&ctx, deg, length)
            .iter()
            .map(|m| {
                let mut img = op.apply_map(m.expand(&ctx).tensor_terms());
                img.retain(|w, _| w.len() == length);
                img
            })
            .collect()
    };
    let here = cols(degree);
    let from = cols(degree - op.degree());
    here.len() - linalg::rank(&here) - linalg::rank(&from)
}

/// Content-level bookkeeping for the leading-block solver: for each
/// generator, the letter contents of the words in its image.
struct Pieces(Vec<Vec<Word>>);

impl Pieces {
    fn of(op: &Derivation) -> Self {
        Pieces(
            op.images()
                .iter()
                .map(|img| {
                    let s: BTreeSet<Word> = img.tensor_terms().keys().map(|w| sorted_content(w)).collect();
                    s.into_iter().collect()
                })
                .collect(),
        )
    }
}

fn multiset_minus(c: &[u16], p: &[u16]) -> Option<Word> {
    let mut out = Word::new();
    let mut j = 0;
    for &x in c {
        if j < p.len() && p[j] == x {
            j += 1;
        } else {
            out.push(x);
        }
    }
    (j == p.len()).then_some(out)
}

/// Default cap on unknowns considered by one leading-block solve.
pub const DEFAULT_UNKNOWN_BUDGET: usize = 20_000;

/// Finds `z` of the given degree, supported on bracket lengths `lo..=m`,
/// with `op(z) ≡ target` on lengths `lo..=m`, where `m` is the (single)
/// bracket length of `target`. Lengths below `lo` are untouched by `op`
/// since derivations never shorten words. Returns `None` when no such `z`
/// exists within the explored unknown space.
pub fn solve_leading(op: &Derivation, target: &LieElement, degree: i32, lo: usize) -> Option<LieElement> {
    solve_leading_budget(op, target, degree, lo, DEFAULT_UNKNOWN_BUDGET)
}

pub fn solve_leading_budget(op: &Derivation, target: &LieElement, degree: i32, lo: usize, budget: usize) -> Option<LieElement> {
    let ctx = op.ctx().clone();
    if target.is_zero() {
        return Some(LieElement::zero(&ctx));
    }
    let m = target.filtration_level();
    if target.max_length() != m || lo > m || lo == 0 {
        return None;
    }
    let pieces = Pieces::of(op);
    let mut seen_contents: BTreeSet<Word> = BTreeSet::new();
    let mut frontier: BTreeSet<Word> = target.tensor_terms().keys().map(|w| sorted_content(w)).collect();
    let mut unknowns: Vec<LieMonomial> = Vec::new();
    let mut columns: Vec<TensorMap> = Vec::new();
    let mut expanded_rows: BTreeSet<Word> = BTreeSet::new();

    let rhs: TensorMap = target.tensor_terms().clone();
    loop {
        // preimage contents of the frontier
        let mut fresh: BTreeSet<Word> = BTreeSet::new();
        for c in &frontier {
            for (g, ps) in pieces.0.iter().enumerate() {
                for p in ps {
                    let Some(mut rest) = multiset_minus(c, p) else { continue };
                    let len = rest.len() + 1;
                    if len < lo || len > m {
                        continue;
                    }
                    rest.push(g as u16);
                    rest.sort_unstable();
                    if word_degree(&ctx, &rest) == degree && !seen_contents.contains(&rest) {
                        fresh.insert(rest);
                    }
                }
            }
        }
        if fresh.is_empty() {
            return None;
        }
        let mut new_rows: BTreeSet<Word> = BTreeSet::new();
        for content in &fresh {
            seen_contents.insert(content.clone());
            for mono in monomials_with_content(&ctx, content) {
                let mut img = op.apply_map(mono.expand(&ctx).tensor_terms());
                img.retain(|w, _| w.len() >= lo && w.len() <= m);
                for w in img.keys() {
                    let sc = sorted_content(w);
                    if !expanded_rows.contains(&sc) {
                        new_rows.insert(sc);
                    }
                }
                unknowns.push(mono);
                columns.push(img);
            }
        }
        if unknowns.len() > budget {
            return None;
        }
        if let Some(x) = linalg::solve(&columns, &rhs) {
            let mut z = LieElement::zero(&ctx);
            for (mono, c) in unknowns.iter().zip(&x) {
                if !c.is_zero() {
                    z.add_scaled(c, &mono.expand(&ctx));
                }
            }
            return Some(z);
        }
        expanded_rows.extend(frontier.iter().cloned());
        frontier = new_rows;
        frontier.retain(|c| !expanded_rows.contains(c));
        if frontier.is_empty() {
            return None;
        }
    }
}

/// Finds `w` with `d(w) ≡ target` in the target's leading block, trying
/// windows `[m, m]`, `[m-1, m]`, ... down to `[lo_min, m]`.
pub fn solve_boundary(op: &Derivation, target: &LieElement, lo_min: usize) -> Option<LieElement> {
    if target.is_zero() {
        return Some(LieElement::zero(op.ctx()));
    }
    let deg = target.degree()? - op.degree();
    let m = target.filtration_level();
    (lo_min.max(1)..=m).rev().find_map(|lo| solve_leading(op, target, deg, lo))
}

/// A morphism of free Lie algebras given by generator images.
#[derive(Clone, Debug)]
pub struct Morphism {
    source: Context,
    target: Context,
    images: Vec<LieElement>,
}

impl Morphism {
    pub fn new(source: &Context, target: &Context, images: Vec<LieElement>) -> Result<Self> {
        if images.len() != source.len() {
            return Err(CdglError::Verification("morphism needs one image per generator".into()));
        }
        for (l, img) in images.iter().enumerate() {
            if !same_context(img.ctx(), target) {
                return Err(CdglError::ContextMismatch);
            }
            img.check_degree(source.degree(l as u16))?;
        }
        Ok(Morphism { source: source.clone(), target: target.clone(), images })
    }

    pub fn source(&self) -> &Context {
        &self.source
    }

    pub fn target(&self) -> &Context {
        &self.target
    }

    pub fn image(&self, letter: u16) -> &LieElement {
        &self.images[letter as usize]
    }

    pub fn apply(&self, u: &LieElement) -> LieElement {
        assert!(same_context(u.ctx(), &self.source), "context mismatch");
        let n = self.target.truncation();
        // memoized products of prefixes
        let mut cache: HashMap<Word, TensorMap> = HashMap::new();
        let mut unit = TensorMap::new();
        unit.insert(Word::new(), Rational::one());
        cache.insert(Word::new(), unit);
        let mut out = TensorMap::new();
        for (w, c) in u.tensor_terms() {
            for i in 1..=w.len() {
                let key: Word = w[..i].into();
                if cache.contains_key(&key) {
                    continue;
                }
                let prev = &cache[&Word::from(&w[..i - 1])];
                let next = tensor_product(prev, self.images[w[i - 1] as usize].tensor_terms(), n);
                cache.insert(key, next);
            }
            for (v, e) in &cache[w] {
                add_term(&mut out, v.clone(), &(c * e));
            }
        }
        LieElement::from_tensor(&self.target, out)
    }

    /// `g ∘ self`
    pub fn then(&self, g: &Morphism) -> Result<Morphism> {
        if !same_context(&self.target, &g.source) {
            return Err(CdglError::ContextMismatch);
        }
        let images = self.images.iter().map(|e| g.apply(e)).collect();
        Morphism::new(&self.source, &g.target, images)
    }

    /// Generators where `d_target ∘ f ≠ f ∘ d_source`.
    pub fn chain_map_residues(&self, d_source: &dyn Differential, d_target: &dyn Differential) -> Vec<(String, LieElement)> {
        (0..self.source.len() as u16)
            .filter_map(|l| {
                let g = LieElement::generator(&self.source, l);
                let lhs = d_target.apply(&self.images[l as usize]);
                let rhs = self.apply(&d_source.apply(&g));
                let r = &lhs - &rhs;
                (!r.is_zero()).then(|| (self.source.label(l).to_string(), r))
            })
            .collect()
    }

    /// Generators where `self` is not the identity (same alphabet required).
    pub fn identity_residues(&self) -> Vec<(String, LieElement)> {
        (0..self.source.len() as u16)
            .filter_map(|l| {
                let g = LieElement::from_label(&self.target, self.source.label(l)).ok()?;
                let r = &self.images[l as usize] - &g;
                (!r.is_zero()).then(|| (self.source.label(l).to_string(), r))
            })
            .collect()
    }
}

/// Collects `(label, element)` pairs into a per-letter table.
pub fn table_from_map(ctx: &Context, map: &BTreeMap<u16, LieElement>) -> Vec<LieElement> {
    (0..ctx.len() as u16).map(|l| map.get(&l).cloned().unwrap_or_else(|| LieElement::zero(ctx))).collect()
}
