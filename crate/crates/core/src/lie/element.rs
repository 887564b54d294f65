//! Lie elements, stored through their image in the truncated tensor algebra.
//!
//! The embedding of the free graded Lie algebra into its enveloping tensor
//! algebra is injective, so the tensor image is itself a canonical normal
//! form. Brackets become graded commutators of words. The super-Lyndon
//! coordinates are recovered on demand by [`LieElement::basis_terms`].

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Zero};

use super::basis::LieMonomial;
use super::context::Context;
use super::word::{is_lyndon, lyndon_square_root, Word};
use crate::error::{CdglError, Result};
use crate::rational::Rational;

pub type TensorMap = BTreeMap<Word, Rational>;

#[derive(Clone)]
pub struct LieElement {
    ctx: Context,
    terms: TensorMap,
}

pub(crate) fn add_term(map: &mut TensorMap, w: Word, c: &Rational) {
    if c.is_zero() {
        return;
    }
    match map.entry(w) {
        std::collections::btree_map::Entry::Vacant(e) => {
            e.insert(c.clone());
        }
        std::collections::btree_map::Entry::Occupied(mut e) => {
            let v = e.get_mut();
            *v += c;
            if v.is_zero() {
                e.remove();
            }
        }
    }
}

pub(crate) fn word_degree(ctx: &Context, w: &[u16]) -> i32 {
    w.iter().map(|&l| ctx.degree(l)).sum()
}

/// Concatenation product in the tensor algebra, dropping words longer than `max_len`.
pub(crate) fn tensor_product(a: &TensorMap, b: &TensorMap, max_len: usize) -> TensorMap {
    let mut out = TensorMap::new();
    for (p, cp) in a {
        for (q, cq) in b {
            if p.len() + q.len() > max_len {
                continue;
            }
            let mut w = p.clone();
            w.extend_from_slice(q);
            add_term(&mut out, w, &(cp * cq));
        }
    }
    out
}

pub(crate) fn same_context(a: &Context, b: &Context) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl LieElement {
    pub fn zero(ctx: &Context) -> Self {
        LieElement { ctx: ctx.clone(), terms: TensorMap::new() }
    }

    pub fn generator(ctx: &Context, letter: u16) -> Self {
        let mut terms = TensorMap::new();
        terms.insert(Word::from_slice(&[letter]), Rational::one());
        LieElement { ctx: ctx.clone(), terms }
    }

    pub fn from_label(ctx: &Context, label: &str) -> Result<Self> {
        let l = ctx.letter(label).ok_or_else(|| CdglError::UnknownGenerator(label.to_string()))?;
        Ok(Self::generator(ctx, l))
    }

    /// Wraps a tensor-algebra map that is known to be a Lie element.
    pub(crate) fn from_tensor(ctx: &Context, mut terms: TensorMap) -> Self {
        let n = ctx.truncation();
        terms.retain(|w, c| w.len() <= n && !c.is_zero());
        LieElement { ctx: ctx.clone(), terms }
    }

    pub fn ctx(&self) -> &Context {
        &self.ctx
    }

    pub fn tensor_terms(&self) -> &TensorMap {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn same_context(&self, other: &LieElement) -> bool {
        same_context(&self.ctx, &other.ctx)
    }

    fn check_ctx(&self, other: &LieElement) -> Result<()> {
        if self.same_context(other) {
            Ok(())
        } else {
            Err(CdglError::ContextMismatch)
        }
    }

    /// Degree if nonzero and homogeneous.
    pub fn degree(&self) -> Option<i32> {
        let mut it = self.terms.keys().map(|w| word_degree(&self.ctx, w));
        let d = it.next()?;
        it.all(|e| e == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.degree().is_some()
    }

    /// Accepts zero or a homogeneous element of degree `expected`.
    pub fn check_degree(&self, expected: i32) -> Result<()> {
        if self.is_zero() || self.degree() == Some(expected) {
            return Ok(());
        }
        let found = match self.degree() {
            Some(d) => d.to_string(),
            None => "inhomogeneous".to_string(),
        };
        Err(CdglError::WrongDegree { expected, found })
    }

    /// Minimal bracket length among nonzero terms; `N + 1` for zero.
    pub fn filtration_level(&self) -> usize {
        self.terms.keys().map(|w| w.len()).min().unwrap_or(self.ctx.truncation() + 1)
    }

    pub fn max_length(&self) -> usize {
        self.terms.keys().map(|w| w.len()).max().unwrap_or(0)
    }

    /// Terms of bracket length in `lo..=hi`.
    pub fn lengths(&self, lo: usize, hi: usize) -> Self {
        let terms =
            self.terms.iter().filter(|(w, _)| (lo..=hi).contains(&w.len())).map(|(w, c)| (w.clone(), c.clone())).collect();
        LieElement { ctx: self.ctx.clone(), terms }
    }

    pub fn length_component(&self, r: usize) -> Self {
        self.lengths(r, r)
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ctx);
        }
        let terms = self.terms.iter().map(|(w, v)| (w.clone(), v * c)).collect();
        LieElement { ctx: self.ctx.clone(), terms }
    }

    /// `self += c * other`
    pub fn add_scaled(&mut self, c: &Rational, other: &LieElement) {
        assert!(self.same_context(other), "context mismatch");
        for (w, v) in &other.terms {
            add_term(&mut self.terms, w.clone(), &(c * v));
        }
    }

    /// Graded bracket `[u, v] = uv - (-1)^{|u||v|} vu`, truncated.
    pub fn bracket(&self, other: &LieElement) -> Result<LieElement> {
        self.check_ctx(other)?;
        Ok(self.bracket_unchecked(other))
    }

    pub(crate) fn bracket_unchecked(&self, other: &LieElement) -> LieElement {
        let n = self.ctx.truncation();
        let mut out = TensorMap::new();
        let ldeg: Vec<(i32, usize)> = self.terms.keys().map(|w| (word_degree(&self.ctx, w), w.len())).collect();
        let rdeg: Vec<(i32, usize)> = other.terms.keys().map(|w| (word_degree(&self.ctx, w), w.len())).collect();
        for ((p, cp), &(dp, lp)) in self.terms.iter().zip(&ldeg) {
            for ((q, cq), &(dq, lq)) in other.terms.iter().zip(&rdeg) {
                if lp + lq > n {
                    continue;
                }
                let c = cp * cq;
                let mut pq = p.clone();
                pq.extend_from_slice(q);
                add_term(&mut out, pq, &c);
                let mut qp = q.clone();
                qp.extend_from_slice(p);
                if (dp * dq) % 2 != 0 {
                    add_term(&mut out, qp, &c);
                } else {
                    add_term(&mut out, qp, &-&c);
                }
            }
        }
        LieElement { ctx: self.ctx.clone(), terms: out }
    }

    /// Moves the element into a context with the same alphabet and a
    /// different truncation, dropping words that no longer fit.
    pub fn retruncate(&self, ctx: &Context) -> Result<LieElement> {
        if ctx.generators() != self.ctx.generators() {
            return Err(CdglError::ContextMismatch);
        }
        Ok(LieElement::from_tensor(ctx, self.terms.clone()))
    }

    /// Renames letters through `letter_map` (old letter -> new letter in `ctx`).
    pub fn relabel(&self, ctx: &Context, letter_map: &[u16]) -> LieElement {
        let mut out = TensorMap::new();
        for (w, c) in &self.terms {
            let nw: Word = w.iter().map(|&l| letter_map[l as usize]).collect();
            add_term(&mut out, nw, c);
        }
        LieElement::from_tensor(ctx, out)
    }

    /// Coordinates in the super-Lyndon basis, ordered by monomial order.
    ///
    /// Every word in the expansion of a bracketed Lyndon word `w` is
    /// lexicographically at least `w`, with `w` itself appearing once; the
    /// self-bracket of an odd Lyndon `u` has leading word `uu` with
    /// coefficient 2. Peeling off the least word therefore terminates.
    pub fn basis_terms(&self) -> Vec<(LieMonomial, Rational)> {
        let mut rem = self.terms.clone();
        let mut out = Vec::new();
        while let Some((w, c)) = rem.first_key_value() {
            let (w, c) = (w.clone(), c.clone());
            let (mono, coeff) = if is_lyndon(&w) {
                (LieMonomial::lyndon(w), c)
            } else if let Some(u) = lyndon_square_root(&w).filter(|u| word_degree(&self.ctx, u) % 2 != 0) {
                (LieMonomial::square(u.into()), &c / &Rational::from_integer(2))
            } else {
                panic!("tensor map is not a Lie element (leading word {w:?})");
            };
            let exp = mono.expand(&self.ctx);
            for (v, e) in exp.terms.iter() {
                add_term(&mut rem, v.clone(), &-(&coeff * e));
            }
            out.push((mono, coeff));
        }
        let ctx = &self.ctx;
        out.sort_by_key(|t| t.0.order_key(ctx));
        out
    }

    /// Rebuilds an element from basis coordinates.
    pub fn from_basis(ctx: &Context, terms: &[(LieMonomial, Rational)]) -> LieElement {
        let mut e = LieElement::zero(ctx);
        for (m, c) in terms {
            e.add_scaled(c, &m.expand(ctx));
        }
        e
    }
}

impl PartialEq for LieElement {
    fn eq(&self, other: &Self) -> bool {
        self.same_context(other) && self.terms == other.terms
    }
}
impl Eq for LieElement {}

impl fmt::Debug for LieElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LieElement({self})")
    }
}

impl Add for &LieElement {
    type Output = LieElement;
    fn add(self, o: &LieElement) -> LieElement {
        let mut r = self.clone();
        r.add_scaled(&Rational::one(), o);
        r
    }
}

impl Sub for &LieElement {
    type Output = LieElement;
    fn sub(self, o: &LieElement) -> LieElement {
        let mut r = self.clone();
        r.add_scaled(&-Rational::one(), o);
        r
    }
}

impl Neg for &LieElement {
    type Output = LieElement;
    fn neg(self) -> LieElement {
        self.scaled(&-Rational::one())
    }
}

impl Add for LieElement {
    type Output = LieElement;
    fn add(self, o: LieElement) -> LieElement {
        &self + &o
    }
}

impl Sub for LieElement {
    type Output = LieElement;
    fn sub(self, o: LieElement) -> LieElement {
        &self - &o
    }
}

impl Neg for LieElement {
    type Output = LieElement;
    fn neg(self) -> LieElement {
        -&self
    }
}
