//! Super-Lyndon basis of the free graded Lie algebra in characteristic 0:
//! standard bracketings of Lyndon words, plus `[P_u, P_u]` for Lyndon words
//! `u` of odd degree.

use std::cmp::Ordering;

use super::context::Context;
use super::element::{word_degree, LieElement};
use super::word::{contents, lyndon_words_with_content, standard_factorization, Word};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MonomialKind {
    Lyndon,
    Square,
}

/// A canonical basis word.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LieMonomial {
    /// The Lyndon word (for a square, the word being squared).
    pub word: Word,
    pub kind: MonomialKind,
}

impl LieMonomial {
    pub fn lyndon(word: Word) -> Self {
        LieMonomial { word, kind: MonomialKind::Lyndon }
    }

    pub fn square(word: Word) -> Self {
        LieMonomial { word, kind: MonomialKind::Square }
    }

    /// Number of generator occurrences.
    pub fn length(&self) -> usize {
        match self.kind {
            MonomialKind::Lyndon => self.word.len(),
            MonomialKind::Square => 2 * self.word.len(),
        }
    }

    pub fn degree(&self, ctx: &Context) -> i32 {
        let d = word_degree(ctx, &self.word);
        match self.kind {
            MonomialKind::Lyndon => d,
            MonomialKind::Square => 2 * d,
        }
    }

    /// Leading (least) word of the tensor expansion.
    pub fn leading_word(&self) -> Word {
        match self.kind {
            MonomialKind::Lyndon => self.word.clone(),
            MonomialKind::Square => {
                let mut w = self.word.clone();
                w.extend_from_slice(&self.word);
                w
            }
        }
    }

    /// Ordering used for output: length, then degree, then lexicographic.
    pub fn order_key(&self, ctx: &Context) -> (usize, i32, Word, MonomialKind) {
        (self.length(), self.degree(ctx), self.leading_word(), self.kind.clone())
    }

    pub fn cmp_in(&self, other: &Self, ctx: &Context) -> Ordering {
        self.order_key(ctx).cmp(&other.order_key(ctx))
    }

    /// The Lie element this monomial denotes.
    pub fn expand(&self, ctx: &Context) -> LieElement {
        match self.kind {
            MonomialKind::Lyndon => bracketed(ctx, &self.word),
            MonomialKind::Square => {
                let p = bracketed(ctx, &self.word);
                p.bracket_unchecked(&p)
            }
        }
    }

    /// Bracket notation, e.g. `[a,[a,b]]`.
    pub fn render(&self, ctx: &Context) -> String {
        match self.kind {
            MonomialKind::Lyndon => render_word(ctx, &self.word),
            MonomialKind::Square => {
                let p = render_word(ctx, &self.word);
                format!("[{p},{p}]")
            }
        }
    }
}

fn bracketed(ctx: &Context, w: &[u16]) -> LieElement {
    if w.len() == 1 {
        return LieElement::generator(ctx, w[0]);
    }
    let (u, v) = standard_factorization(w);
    bracketed(ctx, u).bracket_unchecked(&bracketed(ctx, v))
}

fn render_word(ctx: &Context, w: &[u16]) -> String {
    if w.len() == 1 {
        return ctx.label(w[0]).to_string();
    }
    let (u, v) = standard_factorization(w);
    format!("[{},{}]", render_word(ctx, u), render_word(ctx, v))
}

/// Basis monomials with the given sorted letter content.
pub fn monomials_with_content(ctx: &Context, content: &[u16]) -> Vec<LieMonomial> {
    let mut out: Vec<LieMonomial> = lyndon_words_with_content(content).into_iter().map(LieMonomial::lyndon).collect();
    let n = content.len();
    if n.is_multiple_of(2) && n > 0 {
        // content must be two copies of a half-content
        let half: Word = content.iter().step_by(2).copied().collect();
        let doubled = content.chunks(2).all(|c| c[0] == c[1]);
        if doubled && word_degree(ctx, &half) % 2 != 0 {
            out.extend(lyndon_words_with_content(&half).into_iter().map(LieMonomial::square));
        }
    }
    out
}

/// All basis monomials of the given degree and bracket length, in monomial
/// order. Length 0 yields an empty list.
pub fn basis(ctx: &Context, degree: i32, length: usize) -> Vec<LieMonomial> {
    let mut out = Vec::new();
    for c in contents(ctx.len() as u16, length) {
        if word_degree(ctx, &c) != degree {
            continue;
        }
        out.extend(monomials_with_content(ctx, &c));
    }
    out.sort_by(|a, b| a.cmp_in(b, ctx));
    out
}
