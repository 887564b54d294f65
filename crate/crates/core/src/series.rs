//! Truncated series calculus in the pronilpotent setting: Bernoulli numbers,
//! the three ad-series, Baker-Campbell-Hausdorff products and the gauge
//! action of degree-0 elements on Maurer-Cartan elements.

use std::sync::RwLock;

use num_traits::{One, Zero};

use crate::cdgl::Differential;
use crate::error::{CdglError, Result};
use crate::lie::element::{add_term, tensor_product};
use crate::lie::{LieElement, TensorMap, Word};
use crate::rational::Rational;

static BERNOULLI: RwLock<Vec<Rational>> = RwLock::new(Vec::new());

fn binomial_row(n: usize) -> Vec<Rational> {
    let mut row = vec![Rational::one()];
    for k in 1..=n {
        let prev = row[k - 1].clone();
        row.push(&(&prev * &Rational::from((n + 1 - k) as i64)) / &Rational::from(k as i64));
    }
    row
}

/// `B_n` with `B_1 = −1/2`, from `Σ_{k≤n} C(n+1,k) B_k = 0`.
pub fn bernoulli(n: usize) -> Rational {
    if let Some(b) = BERNOULLI.read().unwrap().get(n) {
        return b.clone();
    }
    let mut table = BERNOULLI.write().unwrap();
    if table.is_empty() {
        table.push(Rational::one());
    }
    while table.len() <= n {
        let m = table.len();
        let c = binomial_row(m + 1);
        let mut s = Rational::zero();
        for (k, b) in table.iter().enumerate() {
            s += &(&c[k] * b);
        }
        table.push(-(&s / &Rational::from((m + 1) as i64)));
    }
    table[n].clone()
}

pub fn factorial(n: usize) -> Rational {
    (1..=n as i64).fold(Rational::one(), |acc, k| &acc * &Rational::from(k))
}

/// The power series in `ad_x` used by the gauge action and the interval
/// differential.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AdSeries {
    /// `e^{ad}` = Σ ad^n / n!
    Exp,
    /// `(e^{ad} − 1)/ad` = Σ ad^n / (n+1)!
    ExpMinusOneOverAd,
    /// `ad/(e^{ad} − 1)` = Σ B_n ad^n / n!
    AdOverExpMinusOne,
}

impl AdSeries {
    pub fn coefficient(self, n: usize) -> Rational {
        match self {
            AdSeries::Exp => factorial(n).recip(),
            AdSeries::ExpMinusOneOverAd => factorial(n + 1).recip(),
            AdSeries::AdOverExpMinusOne => &bernoulli(n) / &factorial(n),
        }
    }
}

fn check_gauge(x: &LieElement) -> Result<()> {
    x.check_degree(0)
}

/// `Σ_n c_n ad_x^n (target)`, truncated. `x` must have degree 0.
pub fn ad_series(kind: AdSeries, x: &LieElement, target: &LieElement) -> Result<LieElement> {
    check_gauge(x)?;
    if !x.same_context(target) {
        return Err(CdglError::ContextMismatch);
    }
    let mut out = target.clone();
    let mut term = target.clone();
    let mut n = 0;
    loop {
        term = x.bracket_unchecked(&term);
        n += 1;
        if term.is_zero() {
            break;
        }
        out.add_scaled(&kind.coefficient(n), &term);
    }
    Ok(out)
}

fn unit() -> TensorMap {
    let mut m = TensorMap::new();
    m.insert(Word::new(), Rational::one());
    m
}

/// `exp(X)` in the truncated tensor algebra for `X` without constant term.
fn tensor_exp(x: &TensorMap, n: usize) -> TensorMap {
    let mut out = unit();
    let mut power = unit();
    for k in 1..=n {
        power = tensor_product(&power, x, n);
        if power.is_empty() {
            break;
        }
        let inv = factorial(k).recip();
        for (w, c) in &power {
            add_term(&mut out, w.clone(), &(c * &inv));
        }
    }
    out
}

/// `log(1 + Z)` for `Z` without constant term.
fn tensor_log1p(z: &TensorMap, n: usize) -> TensorMap {
    let mut out = TensorMap::new();
    let mut power = unit();
    for k in 1..=n {
        power = tensor_product(&power, z, n);
        if power.is_empty() {
            break;
        }
        let c = Rational::new(if k % 2 == 1 { 1 } else { -1 }, k as i64);
        for (w, v) in &power {
            add_term(&mut out, w.clone(), &(v * &c));
        }
    }
    out
}

/// Baker-Campbell-Hausdorff product `log(e^x e^y)`, truncated.
pub fn bch(x: &LieElement, y: &LieElement) -> Result<LieElement> {
    check_gauge(x)?;
    check_gauge(y)?;
    if !x.same_context(y) {
        return Err(CdglError::ContextMismatch);
    }
    if y.is_zero() {
        return Ok(x.clone());
    }
    if x.is_zero() {
        return Ok(y.clone());
    }
    let n = x.ctx().truncation();
    let mut prod = tensor_product(&tensor_exp(x.tensor_terms(), n), &tensor_exp(y.tensor_terms(), n), n);
    prod.remove(&Word::new());
    Ok(LieElement::from_tensor(x.ctx(), tensor_log1p(&prod, n)))
}

/// Left fold of [`bch`]: `((f_0 * f_1) * f_2) * ...`.
pub fn bch_product(factors: &[LieElement]) -> Result<LieElement> {
    let (first, rest) = factors.split_first().ok_or(CdglError::EmptyProduct)?;
    check_gauge(first)?;
    rest.iter().try_fold(first.clone(), |acc, f| bch(&acc, f))
}

/// Dynkin map on tensor words: `w_1…w_n ↦ [..[w_1,w_2],..,w_n]`, divided
/// by `n` on each length-`n` component. A projection onto Lie elements.
pub fn dynkin_projection(u: &LieElement) -> LieElement {
    let ctx = u.ctx();
    let mut out = LieElement::zero(ctx);
    for (w, c) in u.tensor_terms() {
        let mut acc = LieElement::generator(ctx, w[0]);
        for &l in &w[1..] {
            acc = acc.bracket_unchecked(&LieElement::generator(ctx, l));
        }
        out.add_scaled(&(c / &Rational::from(w.len() as i64)), &acc);
    }
    out
}

/// Gauge action `x·z = e^{ad_x}(z) − ((e^{ad_x} − 1)/ad_x)(dx)`.
pub fn gauge(x: &LieElement, z: &LieElement, d: &dyn Differential) -> Result<LieElement> {
    check_gauge(x)?;
    z.check_degree(-1)?;
    if !x.same_context(z) || !crate::lie::element::same_context(x.ctx(), d.ctx()) {
        return Err(CdglError::ContextMismatch);
    }
    let mut out = ad_series(AdSeries::Exp, x, z)?;
    let dx = d.apply(x);
    out.add_scaled(&-Rational::one(), &ad_series(AdSeries::ExpMinusOneOverAd, x, &dx)?);
    Ok(out)
}

/// A degree-0 element, i.e. a member of the gauge group `(L_0, BCH)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaugeElement(LieElement);

impl GaugeElement {
    pub fn new(value: LieElement) -> Result<Self> {
        check_gauge(&value)?;
        Ok(GaugeElement(value))
    }

    pub fn value(&self) -> &LieElement {
        &self.0
    }

    pub fn into_inner(self) -> LieElement {
        self.0
    }

    pub fn compose(&self, other: &GaugeElement) -> GaugeElement {
        GaugeElement(bch(&self.0, &other.0).expect("degree-0 operands"))
    }

    pub fn inverse(&self) -> GaugeElement {
        GaugeElement(-&self.0)
    }

    pub fn act(&self, z: &LieElement, d: &dyn Differential) -> Result<LieElement> {
        gauge(&self.0, z, d)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bernoulli_values() {
        assert_eq!(bernoulli(0), Rational::one());
        assert_eq!(bernoulli(1), Rational::new(-1, 2));
        assert_eq!(bernoulli(2), Rational::new(1, 6));
        assert_eq!(bernoulli(3), Rational::zero());
        assert_eq!(bernoulli(4), Rational::new(-1, 30));
    }

    #[test]
    fn bernoulli_recurrence_and_odd_vanishing() {
        for n in 1..=20 {
            let c = binomial_row(n + 1);
            let s = (0..=n).fold(Rational::zero(), |acc, k| &acc + &(&c[k] * &bernoulli(k)));
            assert!(s.is_zero(), "recurrence fails at {n}");
        }
        for k in 1..=9 {
            assert!(bernoulli(2 * k + 1).is_zero());
        }
        assert_eq!(bernoulli(20), Rational::new(-174611, 330));
    }
}
