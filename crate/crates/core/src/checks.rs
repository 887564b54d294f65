//! Named self-check suites shared by the command line and the tests.

use serde::Serialize;

use crate::error::Result;
use crate::lie::{make_algebra, Generator, LieElement};
use crate::series::{bch, dynkin_projection};
use crate::simplicial::{cylinder_iso, ls_interval, Model};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub check: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "String::is_empty")]
    pub detail: String,
}

impl CheckResult {
    fn new(check: &str, failures: Vec<String>) -> Self {
        CheckResult { check: check.to_string(), pass: failures.is_empty(), detail: failures.join("; ") }
    }
}

fn labels(r: &[(String, LieElement)]) -> Vec<String> {
    r.iter().map(|(l, e)| format!("{l}: {e}")).collect()
}

/// `d∘d = 0` on the interval and its edge linear part `b − a`.
pub fn ls_interval_checks(truncation: usize) -> Result<Vec<CheckResult>> {
    let i = ls_interval(truncation)?;
    let lin = i.cdgl.apply_d(&i.x()).length_component(1);
    let expected = &i.b() - &i.a();
    let lin_fail = if lin == expected { vec![] } else { vec![format!("linear part of dx is {lin}")] };
    Ok(vec![
        CheckResult::new("ls-interval d-squared", labels(&i.cdgl.check_d_squared().residues)),
        CheckResult::new("ls-interval linear part", lin_fail),
    ])
}

/// Chain-map and inverse identities of the cylinder isomorphism.
pub fn cylinder_iso_checks(truncation: usize) -> Result<Vec<CheckResult>> {
    let c = cylinder_iso(truncation)?;
    let back_and_forth = c.forward.then(&c.inverse)?.identity_residues();
    let forth_and_back = c.inverse.then(&c.forward)?.identity_residues();
    let endpoint = c.forward.image(1);
    let mc = if c.cylinder.is_mc(endpoint)? { vec![] } else { vec!["psi(b) is not Maurer-Cartan".to_string()] };
    Ok(vec![
        CheckResult::new("cylinder-iso chain map", labels(&c.forward.chain_map_residues(&c.interval.cdgl, &c.cylinder))),
        CheckResult::new("cylinder-iso inverse chain map", labels(&c.inverse.chain_map_residues(&c.cylinder, &c.interval.cdgl))),
        CheckResult::new("cylinder-iso inverse", labels(&[back_and_forth, forth_and_back].concat())),
        CheckResult::new("cylinder-iso endpoint", mc),
    ])
}

/// Group laws of the BCH product on three degree-0 generators.
pub fn bch_law_checks(truncation: usize) -> Result<Vec<CheckResult>> {
    let ctx = make_algebra(vec![Generator::new(0, 0, "x"), Generator::new(1, 0, "y"), Generator::new(2, 0, "z")], truncation)?;
    let [x, y, z] = [0u16, 1, 2].map(|l| LieElement::generator(&ctx, l));
    let zero = LieElement::zero(&ctx);
    let left = bch(&bch(&x, &y)?, &z)?;
    let right = bch(&x, &bch(&y, &z)?)?;
    let diff = |a: &LieElement, b: &LieElement, what: &str| if a == b { vec![] } else { vec![format!("{what}: {}", a - b)] };
    let xy = bch(&x, &y)?;
    Ok(vec![
        CheckResult::new("bch associativity", diff(&left, &right, "(xy)z - x(yz)")),
        CheckResult::new("bch identity", [diff(&bch(&x, &zero)?, &x, "x*0"), diff(&bch(&zero, &x)?, &x, "0*x")].concat()),
        CheckResult::new(
            "bch inverse",
            [diff(&bch(&x, &-&x)?, &zero, "x*(-x)"), diff(&bch(&-&xy, &xy)?, &zero, "(-xy)*xy")].concat(),
        ),
        CheckResult::new("bch is a Lie series", diff(&dynkin_projection(&xy), &xy, "dynkin(xy)")),
    ])
}

/// `d∘d = 0`, boundary linear parts and face closure of a model.
pub fn model_checks(model: &Model) -> Vec<CheckResult> {
    let lin: Vec<String> = model.linear_part_mismatches().iter().map(|s| format!("{s:?}")).collect();
    let faces = if model.faces_closed() { vec![] } else { vec!["a differential leaves the faces of its simplex".to_string()] };
    vec![
        CheckResult::new("model d-squared", labels(&model.d_squared().residues)),
        CheckResult::new("model linear part", lin),
        CheckResult::new("model faces", faces),
    ]
}
