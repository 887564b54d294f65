//! Seeded random elements, for fuzzing and property checks.

use rand::seq::SliceRandom;
use rand::Rng;

use super::basis::{basis, LieMonomial};
use super::context::Context;
use super::element::LieElement;
use crate::rational::Rational;

/// A sum of `terms` distinct basis monomials of the given degree and bracket
/// length at most `max_len`, with coefficients drawn from `±1, ±2, ±1/2`.
pub fn random_element<R: Rng + ?Sized>(ctx: &Context, degree: i32, max_len: usize, terms: usize, rng: &mut R) -> LieElement {
    let pool: Vec<LieMonomial> = (1..=max_len.min(ctx.truncation())).flat_map(|len| basis(ctx, degree, len)).collect();
    let coeffs =
        [Rational::from(1), Rational::from(-1), Rational::from(2), Rational::from(-2), Rational::new(1, 2), Rational::new(-1, 2)];
    let picked: Vec<(LieMonomial, Rational)> =
        pool.choose_multiple(rng, terms.min(pool.len())).map(|m| (m.clone(), coeffs.choose(rng).unwrap().clone())).collect();
    LieElement::from_basis(ctx, &picked)
}
