//! The Lawrence-Sullivan interval and its cylinder presentation.

use num_traits::One;

use crate::cdgl::{Cdgl, Morphism};
use crate::error::{CdglError, Result};
use crate::lie::{make_algebra, Context, Generator, LieElement};
use crate::rational::Rational;
use crate::series::{ad_series, AdSeries};

/// `−½[a,a]`
pub fn mc_generator_differential(a: &LieElement) -> LieElement {
    a.bracket_unchecked(a).scaled(&Rational::new(-1, 2))
}

/// `[x,b] + ad_x/(e^{ad_x} − 1)(b − a)`: the differential making `x` a
/// path between the Maurer-Cartan elements `a` and `b`.
pub fn interval_differential(a: &LieElement, b: &LieElement, x: &LieElement) -> Result<LieElement> {
    let mut out = x.bracket(b)?;
    out.add_scaled(&Rational::one(), &ad_series(AdSeries::AdOverExpMinusOne, x, &(b - a))?);
    Ok(out)
}

/// The interval cdgl on `a, b` (degree −1) and `x` (degree 0).
#[derive(Clone, Debug)]
pub struct LsInterval {
    pub cdgl: Cdgl,
}

impl LsInterval {
    pub fn ctx(&self) -> &Context {
        self.cdgl.ctx()
    }

    pub fn a(&self) -> LieElement {
        LieElement::generator(self.ctx(), 0)
    }

    pub fn b(&self) -> LieElement {
        LieElement::generator(self.ctx(), 1)
    }

    pub fn x(&self) -> LieElement {
        LieElement::generator(self.ctx(), 2)
    }
}

pub fn interval_context(truncation: usize) -> Result<Context> {
    make_algebra(vec![Generator::new(0, -1, "a"), Generator::new(1, -1, "b"), Generator::new(2, 0, "x")], truncation)
}

/// Builds the interval truncated at `truncation`; `d∘d` is verified.
pub fn ls_interval(truncation: usize) -> Result<LsInterval> {
    let ctx = interval_context(truncation)?;
    let a = LieElement::generator(&ctx, 0);
    let b = LieElement::generator(&ctx, 1);
    let x = LieElement::generator(&ctx, 2);
    let dx = interval_differential(&a, &b, &x)?;
    let cdgl = Cdgl::new(&ctx, vec![mc_generator_differential(&a), mc_generator_differential(&b), dx])?;
    Ok(LsInterval { cdgl })
}

/// `ψ: (L(a,b,x), d) → (L(a,c,y), d)` with `da = −½[a,a]`, `dy = c`, `dc = 0`,
/// together with its inverse.
#[derive(Clone, Debug)]
pub struct CylinderIso {
    pub interval: LsInterval,
    pub cylinder: Cdgl,
    pub forward: Morphism,
    pub inverse: Morphism,
}

/// `e^{ad_{−y}}(a) + ((e^{ad_{−y}} − 1)/ad_{−y})(c)`
pub fn cylinder_endpoint(a: &LieElement, c: &LieElement, y: &LieElement) -> Result<LieElement> {
    let ny = -y;
    let mut out = ad_series(AdSeries::Exp, &ny, a)?;
    out.add_scaled(&Rational::one(), &ad_series(AdSeries::ExpMinusOneOverAd, &ny, c)?);
    Ok(out)
}

pub fn cylinder_iso(truncation: usize) -> Result<CylinderIso> {
    let interval = ls_interval(truncation)?;
    let ctx = make_algebra(vec![Generator::new(0, -1, "a"), Generator::new(1, -1, "c"), Generator::new(2, 0, "y")], truncation)?;
    let a = LieElement::generator(&ctx, 0);
    let c = LieElement::generator(&ctx, 1);
    let y = LieElement::generator(&ctx, 2);
    let cylinder = Cdgl::new(&ctx, vec![mc_generator_differential(&a), LieElement::zero(&ctx), c.clone()])?;
    let forward = Morphism::new(interval.ctx(), &ctx, vec![a.clone(), cylinder_endpoint(&a, &c, &y)?, y.clone()])?;
    let inverse = Morphism::new(&ctx, interval.ctx(), vec![interval.a(), interval.cdgl.apply_d(&interval.x()), interval.x()])?;
    let res = forward.chain_map_residues(&interval.cdgl, &cylinder);
    if !res.is_empty() {
        return Err(CdglError::Verification(format!(
            "cylinder map is not a chain map on {:?}",
            res.iter().map(|r| &r.0).collect::<Vec<_>>()
        )));
    }
    Ok(CylinderIso { interval, cylinder, forward, inverse })
}
