//! Contractions of the generator complex and their tensor extension.
//!
//! The linear part `d₁` of a differential is a differential on the
//! generator space `V`. Splitting each `V_n = B_n ⊕ H_n ⊕ C_n` (boundaries,
//! chosen homology representatives, a complement of the cycles) gives a
//! homotopy `h` with `d₁h + hd₁ = 1 − σ`, where `σ` projects onto `H`. The
//! tensor extension
//!
//! ```text
//! 𝓗(v₁…v_m) = Σ_j ± σ(v₁)…σ(v_{j−1}) h(v_j) v_{j+1}…v_m
//! ```
//!
//! satisfies `d₁𝓗 + 𝓗d₁ = 1 − σ^{⊗m}`, and the Dynkin map commutes with
//! `d₁`. So a `d₁`-cycle `t` of length `m` with `σ^{⊗m}(t) = 0` has the Lie
//! primitive `ρ(𝓗t)/m`, found without any elimination over the free Lie
//! algebra.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::cdgl::{Derivation, Differential};
use crate::error::{CdglError, Result};
use crate::lie::element::add_term;
use crate::lie::{Context, LieElement, TensorMap, Word};
use crate::linalg;
use crate::rational::Rational;

type Vector = BTreeMap<u16, Rational>;

/// Homotopy data for the linear part of a degree −1 derivation.
#[derive(Clone, Debug)]
pub struct Contraction {
    ctx: Context,
    h: Vec<Vec<(u16, Rational)>>,
    sigma: Vec<Vec<(u16, Rational)>>,
    homology: BTreeMap<i32, usize>,
}

fn basis_vector(l: u16) -> Vector {
    BTreeMap::from([(l, Rational::one())])
}

fn linear_image(op: &Derivation, l: u16) -> Vector {
    op.image(l).length_component(1).tensor_terms().iter().map(|(w, c)| (w[0], c.clone())).collect()
}

impl Contraction {
    pub fn new(op: &Derivation) -> Result<Self> {
        if op.degree() != -1 {
            return Err(CdglError::Verification("contraction needs a degree −1 derivation".into()));
        }
        let ctx = op.ctx().clone();
        let lin = op.linear_part();
        if !lin.square_residues().iter().all(|(_, r)| r.length_component(1).is_zero()) {
            return Err(CdglError::DSquaredNonzero("linear part".into()));
        }
        let mut by_degree: BTreeMap<i32, Vec<u16>> = BTreeMap::new();
        for l in 0..ctx.len() as u16 {
            by_degree.entry(ctx.degree(l)).or_default().push(l);
        }
        let images: Vec<Vector> = (0..ctx.len() as u16).map(|l| linear_image(op, l)).collect();

        // pivots[n]: generators of degree n whose images span d₁(V_n)
        let mut pivots: BTreeMap<i32, Vec<u16>> = BTreeMap::new();
        for (&n, gens) in &by_degree {
            let mut cols: Vec<Vector> = Vec::new();
            let mut chosen = Vec::new();
            for &g in gens {
                if images[g as usize].is_empty() {
                    continue;
                }
                cols.push(images[g as usize].clone());
                if linalg::rank(&cols) == cols.len() {
                    chosen.push(g);
                } else {
                    cols.pop();
                }
            }
            pivots.insert(n, chosen);
        }

        let mut h = vec![Vec::new(); ctx.len()];
        let mut sigma = vec![Vec::new(); ctx.len()];
        let mut homology = BTreeMap::new();
        for (&n, gens) in &by_degree {
            let empty = Vec::new();
            let up = pivots.get(&(n + 1)).unwrap_or(&empty);
            let own = &pivots[&n];
            let boundaries: Vec<Vector> = up.iter().map(|&w| images[w as usize].clone()).collect();
            let own_cols: Vec<Vector> = own.iter().map(|&p| images[p as usize].clone()).collect();
            // cycles e_g − Σ x_p e_p for non-pivot g, kept when independent
            let mut basis = boundaries.clone();
            let mut reps: Vec<Vector> = Vec::new();
            for &g in gens.iter().filter(|g| !own.contains(g)) {
                let x = linalg::solve(&own_cols, &images[g as usize])
                    .ok_or_else(|| CdglError::Verification("pivot columns do not span the image".into()))?;
                let mut k = basis_vector(g);
                for (p, c) in own.iter().zip(&x) {
                    if !c.is_zero() {
                        k.insert(*p, -c);
                    }
                }
                basis.push(k.clone());
                if linalg::rank(&basis) == basis.len() {
                    reps.push(k);
                } else {
                    basis.pop();
                }
            }
            homology.insert(n, reps.len());
            basis.extend(own.iter().map(|&p| basis_vector(p)));
            if basis.len() != gens.len() {
                return Err(CdglError::Verification(format!("linear part is not a complex in degree {n}")));
            }
            let nb = boundaries.len();
            for &g in gens {
                let x = linalg::solve(&basis, &basis_vector(g))
                    .ok_or_else(|| CdglError::Verification("splitting basis is singular".into()))?;
                h[g as usize] = up.iter().zip(&x[..nb]).filter(|(_, c)| !c.is_zero()).map(|(&w, c)| (w, c.clone())).collect();
                let mut s = Vector::new();
                for (k, c) in reps.iter().zip(&x[nb..nb + reps.len()]) {
                    for (l, v) in k {
                        let e = s.entry(*l).or_insert_with(Rational::zero);
                        *e += &(c * v);
                    }
                }
                s.retain(|_, c| !c.is_zero());
                sigma[g as usize] = s.into_iter().collect();
            }
        }
        Ok(Contraction { ctx, h, sigma, homology })
    }

    /// Dimension of `H(V, d₁)` per degree.
    pub fn homology_ranks(&self) -> &BTreeMap<i32, usize> {
        &self.homology
    }

    /// `h` on a generator, as a linear combination of generators.
    pub fn homotopy_of(&self, letter: u16) -> LieElement {
        let mut t = TensorMap::new();
        for (l, c) in &self.h[letter as usize] {
            add_term(&mut t, Word::from_slice(&[*l]), c);
        }
        LieElement::from_tensor(&self.ctx, t)
    }

    fn tensor_homotopy(&self, terms: &TensorMap) -> TensorMap {
        let mut out = TensorMap::new();
        for (w, c) in terms {
            let mut prefixes: Vec<(Word, Rational)> = vec![(Word::new(), c.clone())];
            let mut prefix_deg = 0i32;
            for j in 0..w.len() {
                let sign = Rational::sign(prefix_deg % 2 != 0);
                for (pre, pc) in &prefixes {
                    for (hl, hc) in &self.h[w[j] as usize] {
                        let mut nw = pre.clone();
                        nw.push(*hl);
                        nw.extend_from_slice(&w[j + 1..]);
                        add_term(&mut out, nw, &(&(pc * hc) * &sign));
                    }
                }
                let s = &self.sigma[w[j] as usize];
                if s.is_empty() {
                    break;
                }
                prefixes = prefixes
                    .iter()
                    .flat_map(|(pre, pc)| {
                        s.iter().map(move |(l, sc)| {
                            let mut nw = pre.clone();
                            nw.push(*l);
                            (nw, pc * sc)
                        })
                    })
                    .collect();
                prefix_deg += self.ctx.degree(w[j]);
            }
        }
        out
    }

    /// A length-`m` Lie element `z` with `d₁z = target`, for a `d₁`-cycle
    /// target of pure length `m`; `None` when the target is not exact.
    pub fn primitive(&self, op: &Derivation, target: &LieElement) -> Option<LieElement> {
        if target.is_zero() {
            return Some(LieElement::zero(&self.ctx));
        }
        let m = target.filtration_level();
        if target.max_length() != m {
            return None;
        }
        let lifted = self.tensor_homotopy(target.tensor_terms());
        let z = dynkin_tensor(&self.ctx, &lifted);
        let check = op.apply(&z).length_component(m);
        (check == *target).then_some(z)
    }
}

/// Dynkin map `w ↦ [..[w₁,w₂],..,w_n]/n` computed on tensor words.
pub(crate) fn dynkin_tensor(ctx: &Context, terms: &TensorMap) -> LieElement {
    let mut out = TensorMap::new();
    for (w, c) in terms {
        let mut acc: Vec<(Word, i64)> = vec![(Word::from_slice(&w[..1]), 1)];
        let mut deg = ctx.degree(w[0]);
        for &l in &w[1..] {
            let ld = ctx.degree(l);
            let swap = if (deg * ld) % 2 != 0 { 1 } else { -1 };
            let mut next = Vec::with_capacity(acc.len() * 2);
            for (aw, ac) in &acc {
                let mut right = aw.clone();
                right.push(l);
                next.push((right, *ac));
                let mut left = Word::with_capacity(aw.len() + 1);
                left.push(l);
                left.extend_from_slice(aw);
                next.push((left, swap * ac));
            }
            acc = next;
            deg += ld;
        }
        let scale = c / &Rational::from(w.len() as i64);
        for (aw, ac) in acc {
            add_term(&mut out, aw, &(&scale * &Rational::from(ac)));
        }
    }
    LieElement::from_tensor(ctx, out)
}
