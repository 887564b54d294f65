use std::collections::BTreeMap;

use cdgl_core::cdgl::Cdgl;
use cdgl_core::lie::random::random_element;
use cdgl_core::lie::text::parse_element;
use cdgl_core::lie::{make_algebra, Context, Generator, LieElement};
use cdgl_core::series::{ad_series, bch, bch_product, bernoulli, gauge, AdSeries, GaugeElement};
use cdgl_core::simplicial::{build_model, ls_interval, SimplicialComplex};
use cdgl_core::Rational;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn q(p: i64, d: i64) -> Rational {
    Rational::new(p, d)
}

fn even(labels: &[&str], n: usize) -> Context {
    let gens = labels.iter().enumerate().map(|(i, l)| Generator::new(i as u32, 0, *l)).collect();
    make_algebra(gens, n).unwrap()
}

fn el(c: &Context, text: &str) -> LieElement {
    parse_element(c, text).unwrap()
}

/// Akiyama–Tanigawa: yields B_n with B_1 = +1/2.
fn akiyama_tanigawa(n: usize) -> Rational {
    let mut a: Vec<Rational> = Vec::new();
    for m in 0..=n {
        a.push(q(1, m as i64 + 1));
        for j in (1..=m).rev() {
            a[j - 1] = &Rational::from(j as i64) * &(&a[j - 1] - &a[j]);
        }
    }
    a[0].clone()
}

#[test]
fn bernoulli_values() {
    assert_eq!(bernoulli(0), q(1, 1));
    assert_eq!(bernoulli(1), q(-1, 2));
    assert_eq!(bernoulli(2), q(1, 6));
    assert_eq!(bernoulli(3), q(0, 1));
    assert_eq!(bernoulli(4), q(-1, 30));
    for n in 2..=30 {
        assert_eq!(bernoulli(n), akiyama_tanigawa(n), "B_{n}");
    }
    assert_eq!(akiyama_tanigawa(1), q(1, 2));
}

#[test]
fn bernoulli_recurrence() {
    for n in 1..=20usize {
        let mut sum = Rational::from(0);
        let mut binom = Rational::from(1);
        for k in 0..=n {
            sum += &(&binom * &bernoulli(k));
            binom = &(&binom * &Rational::from((n + 1 - k) as i64)) / &Rational::from(k as i64 + 1);
        }
        assert_eq!(sum, Rational::from(0), "n = {n}");
    }
    for k in 1..=9 {
        assert_eq!(bernoulli(2 * k + 1), Rational::from(0));
    }
}

#[test]
fn ad_series_examples() {
    let c = even(&["x", "t"], 3);
    let (x, t) = (el(&c, "x"), el(&c, "t"));
    assert_eq!(ad_series(AdSeries::Exp, &LieElement::zero(&c), &t).unwrap(), t);
    assert!(ad_series(AdSeries::ExpMinusOneOverAd, &x, &LieElement::zero(&c)).unwrap().is_zero());
    let todd = ad_series(AdSeries::AdOverExpMinusOne, &x, &t).unwrap();
    assert_eq!(todd, el(&c, "t - 1/2*[x,t] + 1/12*[x,[x,t]]"));
    let odd = parse_element(&c, "[t,t]").unwrap();
    assert!(odd.is_zero());
}

#[test]
fn bch_examples() {
    let c = even(&["x", "y"], 5);
    let (x, y) = (el(&c, "x"), el(&c, "y"));
    assert_eq!(bch(&x, &LieElement::zero(&c)).unwrap(), x);
    assert!(bch(&x, &-&x).unwrap().is_zero());
    // classical expansion through length 4
    let expected = el(&c, "x + y + 1/2*[x,y] + 1/12*[x,[x,y]] - 1/12*[y,[x,y]] - 1/24*[y,[x,[x,y]]]");
    assert_eq!(bch(&x, &y).unwrap().lengths(1, 4), expected);
}

type Tensor = BTreeMap<Vec<u16>, Rational>;

fn t_mul(a: &Tensor, b: &Tensor, n: usize) -> Tensor {
    let mut out = Tensor::new();
    for (u, p) in a {
        for (v, r) in b {
            if u.len() + v.len() <= n {
                let e = out.entry([u.clone(), v.clone()].concat()).or_insert_with(|| Rational::from(0));
                *e += &(p * r);
            }
        }
    }
    out.retain(|_, c| *c != Rational::from(0));
    out
}

fn t_series(a: &Tensor, n: usize, coeff: impl Fn(usize) -> Rational) -> Tensor {
    let mut out = Tensor::new();
    let mut power = Tensor::from([(Vec::new(), Rational::from(1))]);
    for k in 0..=n {
        for (w, c) in &power {
            let e = out.entry(w.clone()).or_insert_with(|| Rational::from(0));
            *e += &(c * &coeff(k));
        }
        power = t_mul(&power, a, n);
    }
    out.retain(|_, c| *c != Rational::from(0));
    out
}

#[test]
fn bch_matches_tensor_log_of_product() {
    let n = 6;
    let c = even(&["x", "y"], n);
    let gx = Tensor::from([(vec![0u16], Rational::from(1))]);
    let gy = Tensor::from([(vec![1u16], Rational::from(1))]);
    let fact = |k: usize| (1..=k as i64).fold(Rational::from(1), |f, i| &f * &Rational::from(i));
    let ex = t_series(&gx, n, |k| fact(k).recip());
    let ey = t_series(&gy, n, |k| fact(k).recip());
    let mut p = t_mul(&ex, &ey, n);
    p.remove(&Vec::new());
    let log = t_series(&p, n, |k| if k == 0 { Rational::from(0) } else { q(if k % 2 == 1 { 1 } else { -1 }, k as i64) });
    let ours = bch(&el(&c, "x"), &el(&c, "y")).unwrap();
    let ours: Tensor = ours.tensor_terms().iter().map(|(w, c)| (w.to_vec(), c.clone())).collect();
    assert_eq!(ours, log);
}

#[test]
fn bch_product_examples() {
    let c = even(&["x", "y", "z"], 4);
    let x = el(&c, "x");
    assert_eq!(bch_product(std::slice::from_ref(&x)).unwrap(), x);
    let zero = LieElement::zero(&c);
    assert_eq!(bch_product(&[x.clone(), zero.clone(), zero]).unwrap(), x);
    assert!(bch_product(&[]).is_err());
    // factors of levels 1..N+1: the last one is already truncated away
    let factors = [el(&c, "x"), el(&c, "[x,y]"), el(&c, "[z,[x,y]]"), el(&c, "[x,[x,[y,z]]]"), LieElement::zero(&c)];
    assert_eq!(bch_product(&factors).unwrap(), bch_product(&factors[..4]).unwrap());
}

#[test]
fn gauge_examples() {
    let ctx = make_algebra(vec![Generator::new(0, 0, "x"), Generator::new(1, -1, "z")], 2).unwrap();
    let flat = Cdgl::new(&ctx, vec![LieElement::zero(&ctx), LieElement::zero(&ctx)]).unwrap();
    let (x, z) = (el(&ctx, "x"), el(&ctx, "z"));
    assert_eq!(gauge(&x, &z, &flat).unwrap(), el(&ctx, "z + [x,z]"));
    assert_eq!(gauge(&LieElement::zero(&ctx), &z, &flat).unwrap(), z);
    assert!(gauge(&z, &z, &flat).is_err());
}

#[test]
fn interval_orientation() {
    for n in 1..=7 {
        let ls = ls_interval(n).unwrap();
        assert_eq!(gauge(&ls.x(), &ls.b(), &ls.cdgl).unwrap(), ls.a(), "N = {n}");
        assert_eq!(gauge(&-&ls.x(), &ls.a(), &ls.cdgl).unwrap(), ls.b(), "N = {n}");
    }
}

#[test]
fn ad_series_are_inverse() {
    let c = even(&["x", "y", "t"], 6);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..20 {
        let x = random_element(&c, 0, 3, 3, &mut rng);
        let t = random_element(&c, 0, 3, 3, &mut rng);
        let there = ad_series(AdSeries::ExpMinusOneOverAd, &x, &t).unwrap();
        assert_eq!(ad_series(AdSeries::AdOverExpMinusOne, &x, &there).unwrap(), t);
    }
}

fn triangle_boundary(n: usize) -> cdgl_core::simplicial::Model {
    let x = SimplicialComplex::from_json(r#"{"vertices":[0,1,2],"facets":[[0,1],[0,2],[1,2]]}"#).unwrap();
    build_model(&x, n).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(25))]

    #[test]
    fn group_action_law_on_interval(seed in any::<u64>(), n in 2usize..=5) {
        let ls = ls_interval(n).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_element(ls.ctx(), 0, 3, 3, &mut rng);
        let y = random_element(ls.ctx(), 0, 3, 3, &mut rng);
        let z = gauge(&random_element(ls.ctx(), 0, 2, 2, &mut rng), &ls.a(), &ls.cdgl).unwrap();
        let lhs = gauge(&bch(&x, &y).unwrap(), &z, &ls.cdgl).unwrap();
        let rhs = gauge(&x, &gauge(&y, &z, &ls.cdgl).unwrap(), &ls.cdgl).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn group_action_law_on_a_model(seed in any::<u64>()) {
        let model = triangle_boundary(4);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = GaugeElement::new(random_element(model.ctx(), 0, 3, 3, &mut rng)).unwrap();
        let y = GaugeElement::new(random_element(model.ctx(), 0, 3, 3, &mut rng)).unwrap();
        let z = model.generator(&[1]).unwrap();
        let lhs = x.compose(&y).act(&z, &model.cdgl).unwrap();
        let rhs = x.act(&y.act(&z, &model.cdgl).unwrap(), &model.cdgl).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert!(x.compose(&x.inverse()).value().is_zero());
    }

    #[test]
    fn bch_is_associative(seed in any::<u64>()) {
        let c = even(&["x", "y", "w"], 5);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_element(&c, 0, 2, 3, &mut rng);
        let y = random_element(&c, 0, 2, 3, &mut rng);
        let w = random_element(&c, 0, 2, 3, &mut rng);
        let left = bch(&bch(&x, &y).unwrap(), &w).unwrap();
        let right = bch(&x, &bch(&y, &w).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn gauge_preserves_maurer_cartan(seed in any::<u64>()) {
        let ls = ls_interval(5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_element(ls.ctx(), 0, 4, 4, &mut rng);
        for z in [ls.a(), ls.b()] {
            prop_assert!(ls.cdgl.is_mc(&gauge(&x, &z, &ls.cdgl).unwrap()).unwrap());
        }
    }
}

#[test]
fn bch_associativity_on_generators() {
    let c = even(&["x", "y", "w"], 5);
    let (x, y, w) = (el(&c, "x"), el(&c, "y"), el(&c, "w"));
    let left = bch(&bch(&x, &y).unwrap(), &w).unwrap();
    let right = bch(&x, &bch(&y, &w).unwrap()).unwrap();
    assert_eq!(left, right);
}
