//! The operator `θ = −ad_a − d₁` on the ideal generated by the loop
//! generators of a decomposed graph model.
//!
//! In coordinates `L(a, c_k)` with `dc_k = −[a, c_k]`, the `E`-degree counts
//! letters other than `a`; `d₁` is the part of `d` preserving it. The ideal
//! `E_{≥1}` is free on `a^r⊠c = ad_a^r(c)`, and `θ` sends `a^r⊠c` to `0` for
//! even `r` and to `−a^{r+1}⊠c` for odd `r`.

use num_traits::One;

use crate::cdgl::{Derivation, Differential};
use crate::error::{CdglError, Result};
use crate::lie::{basis, make_algebra, Context, Generator, LieElement, TensorMap};
use crate::linalg;
use crate::rational::Rational;
use crate::simplicial::GraphDecomposition;

/// Letters of `word` other than the distinguished one.
pub fn e_degree(word: &[u16], distinguished: u16) -> usize {
    word.iter().filter(|&&l| l != distinguished).count()
}

fn e_component(u: &LieElement, distinguished: u16, e: usize) -> LieElement {
    let mut out = LieElement::zero(u.ctx());
    for (w, c) in u.tensor_terms() {
        if e_degree(w, distinguished) == e {
            let mut t = TensorMap::new();
            t.insert(w.clone(), c.clone());
            out.add_scaled(&Rational::one(), &LieElement::from_tensor(u.ctx(), t));
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct ThetaComplex {
    ctx: Context,
    theta: Derivation,
    loops: usize,
}

impl ThetaComplex {
    /// `θ` on the subalgebra generated by `a` and the loop generators.
    pub fn new(dec: &GraphDecomposition) -> Result<Self> {
        let dctx = dec.ctx();
        let loop_letters = dec.loop_letters();
        let mut gens = vec![Generator::new(0, -1, "a")];
        for (i, &l) in loop_letters.iter().enumerate() {
            gens.push(Generator::new(1 + i as u32, dctx.degree(l), dctx.label(l)));
        }
        let ctx = make_algebra(gens, dctx.truncation())?;
        // letter map decomposed → θ context; u, v letters must not occur
        let mut map = vec![u16::MAX; dctx.len()];
        map[0] = 0;
        for (i, &l) in loop_letters.iter().enumerate() {
            map[l as usize] = 1 + i as u16;
        }
        let a = LieElement::generator(&ctx, 0);
        let mut images = Vec::with_capacity(ctx.len());
        for (src, letter) in std::iter::once(0u16).chain(loop_letters.iter().copied()).enumerate() {
            let d = dec.decomposed.differential_of(letter);
            if d.tensor_terms().keys().flatten().any(|&l| map[l as usize] == u16::MAX) {
                return Err(CdglError::Verification("loop differential leaves the loop subalgebra".into()));
            }
            let d = d.relabel(&ctx, &map);
            let g = LieElement::generator(&ctx, src as u16);
            let d1 = e_component(&d, 0, usize::from(src != 0));
            images.push(-&(&a.bracket(&g)? + &d1));
        }
        let theta = Derivation::new(&ctx, -1, images)?;
        Ok(ThetaComplex { ctx, theta, loops: loop_letters.len() })
    }

    pub fn ctx(&self) -> &Context {
        &self.ctx
    }

    pub fn theta(&self) -> &Derivation {
        &self.theta
    }

    pub fn apply(&self, u: &LieElement) -> LieElement {
        self.theta.apply(u)
    }

    /// `a^r⊠c_k = ad_a^r(c_k)`.
    pub fn ad_power(&self, r: usize, k: usize) -> LieElement {
        let a = LieElement::generator(&self.ctx, 0);
        let mut out = LieElement::generator(&self.ctx, 1 + k as u16);
        for _ in 0..r {
            out = a.bracket(&out).expect("same context");
        }
        out
    }

    /// `(r, k)` where `θ(a^r⊠c_k)` differs from the table value.
    pub fn table_mismatches(&self) -> Vec<(usize, usize)> {
        let n = self.ctx.truncation();
        let mut out = Vec::new();
        for k in 0..self.loops {
            for r in 0..n {
                let expected = if r % 2 == 0 { LieElement::zero(&self.ctx) } else { -&self.ad_power(r + 1, k) };
                if self.apply(&self.ad_power(r, k)) != expected {
                    out.push((r, k));
                }
            }
        }
        out
    }

    /// Generators and ad-power elements on which `θ²` does not vanish.
    pub fn square_defects(&self) -> Vec<String> {
        let mut out: Vec<String> = self.theta.square_residues().into_iter().map(|(l, _)| self.ctx.label(l).to_string()).collect();
        for k in 0..self.loops {
            for r in 0..self.ctx.truncation() {
                if !self.apply(&self.apply(&self.ad_power(r, k))).is_zero() {
                    out.push(format!("a^{r}⊠c{k}"));
                }
            }
        }
        out
    }

    fn columns(&self, degree: i32, length: usize) -> (usize, Vec<TensorMap>) {
        let monos: Vec<_> = basis(&self.ctx, degree, length).into_iter().filter(|m| e_degree(&m.word, 0) >= 1).collect();
        let cols = monos.iter().map(|m| self.apply(&m.expand(&self.ctx)).tensor_terms().clone()).collect();
        (monos.len(), cols)
    }

    /// `dim H_{−1}(E_{≥1}, θ)` at each bracket length `2..N−1`, where the
    /// truncation does not interfere.
    pub fn homology_minus_one(&self) -> Vec<(usize, usize)> {
        let n = self.ctx.truncation();
        (2..n)
            .map(|len| {
                let (dim, cols) = self.columns(-1, len);
                let cycles = dim - linalg::rank(&cols);
                let (_, up) = self.columns(0, len - 1);
                (len, cycles - linalg::rank(&up))
            })
            .collect()
    }
}
