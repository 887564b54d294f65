//! End-to-end acceptance run: one PASS/FAIL line per criterion, exit status
//! nonzero if any criterion fails. Runs without the libtest harness so the
//! report is always printed.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use cdgl_core::classify::{
    compose_paths, lemma_path, order_r_path, pi0_classes, Classifier, ClassifyOptions, OrderRPath, ThetaComplex,
};
use cdgl_core::lie::random::random_element;
use cdgl_core::lie::text::parse_element;
use cdgl_core::lie::{make_algebra, Generator, LieElement};
use cdgl_core::series::{bch, gauge};
use cdgl_core::simplicial::{
    build_model, build_simplex_model, cylinder_iso, graph_decomposition, ls_interval, Model, SimplicialComplex,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, u64);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn model(x: &SimplicialComplex, n: usize) -> Result<Model, String> {
    build_model(x, n).map_err(|e| e.to_string())
}

fn entry(name: &str) -> SimplicialComplex {
    common::corpus().into_iter().find(|(n, _)| *n == name).expect("corpus entry").1
}

fn ls_soundness() -> Outcome {
    let ls = ls_interval(8).map_err(|e| e.to_string())?;
    let report = ls.cdgl.check_d_squared();
    ensure(report.is_clean(), || format!("residues on {:?}", report.residues.iter().map(|r| &r.0).collect::<Vec<_>>()))?;
    Ok("d∘d = 0 on a, b, x at N=8".into())
}

fn cylinder() -> Outcome {
    let cyl = cylinder_iso(8).map_err(|e| e.to_string())?;
    let residues = cyl.forward.chain_map_residues(&cyl.interval.cdgl, &cyl.cylinder);
    ensure(residues.is_empty(), || format!("ψd ≠ dψ on {:?}", residues.iter().map(|r| &r.0).collect::<Vec<_>>()))?;
    let back = cyl.forward.then(&cyl.inverse).map_err(|e| e.to_string())?.identity_residues();
    ensure(back.is_empty(), || "ψ⁻¹ψ ≠ id".into())?;
    Ok("ψ∘d = d∘ψ on a, b, x at N=8".into())
}

fn bch_laws() -> Outcome {
    let three = |n| make_algebra(vec![Generator::new(0, 0, "x"), Generator::new(1, 0, "y"), Generator::new(2, 0, "z")], n);
    let c = three(5).map_err(|e| e.to_string())?;
    let [x, y, z] = ["x", "y", "z"].map(|l| parse_element(&c, l).unwrap());
    let left = bch(&bch(&x, &y).unwrap(), &z).unwrap();
    let right = bch(&x, &bch(&y, &z).unwrap()).unwrap();
    ensure(left == right, || "associativity fails at N=5".into())?;

    let c = three(7).map_err(|e| e.to_string())?;
    let zero = LieElement::zero(&c);
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..10 {
        let x = random_element(&c, 0, 4, 4, &mut rng);
        ensure(bch(&x, &zero).unwrap() == x && bch(&zero, &x).unwrap() == x, || format!("identity fails on {x}"))?;
        ensure(bch(&x, &-&x).unwrap().is_zero() && bch(&-&x, &x).unwrap().is_zero(), || format!("inverse fails on {x}"))?;
    }
    Ok("associativity at N=5, identity and inverse at N=7".into())
}

fn gauge_law() -> Outcome {
    let m = model(&SimplicialComplex::simplex_boundary(2), 4)?;
    let z = m.vertex(0).unwrap();
    for seed in 0..20 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = random_element(m.ctx(), 0, 3, 4, &mut rng);
        let y = random_element(m.ctx(), 0, 3, 4, &mut rng);
        let lhs = gauge(&bch(&x, &y).unwrap(), &z, &m.cdgl).unwrap();
        let rhs = gauge(&x, &gauge(&y, &z, &m.cdgl).unwrap(), &m.cdgl).unwrap();
        ensure(lhs == rhs, || format!("seed {seed}: action law fails"))?;
    }
    Ok("20 seeded trials on ∂Δ² at N=4".into())
}

fn main_theorem() -> Outcome {
    let mut at_four = Duration::ZERO;
    for n in 3..=5 {
        let start = Instant::now();
        for (name, x) in common::corpus() {
            let m = model(&x, n)?;
            let report = pi0_classes(&m).map_err(|e| format!("{name} N={n}: {e}"))?;
            ensure(report.matches_components(), || {
                format!("{name} N={n}: {} classes for {} components", report.count(), report.components)
            })?;
            for (label, class) in &report.entries {
                let u = parse_element(m.ctx(), label).map_err(|e| e.to_string())?;
                let image = class.witness.act(&u, &m.cdgl).map_err(|e| e.to_string())?;
                ensure(image == class.representative, || format!("{name} N={n}: witness for {label} fails"))?;
            }
        }
        if n == 4 {
            at_four = start.elapsed();
        }
    }
    ensure(at_four < Duration::from_secs(600), || format!("corpus at N=4 took {at_four:?}"))?;
    Ok(format!("12 complexes at N=3,4,5; N=4 corpus in {at_four:.1?}"))
}

fn fuzz() -> Outcome {
    let n = 4;
    let mut cases = 0;
    for (name, x) in common::corpus() {
        let m = model(&x, n)?;
        let cl = Classifier::new(&m, &ClassifyOptions::default()).map_err(|e| e.to_string())?;
        let mut seeds = vec![LieElement::zero(m.ctx())];
        seeds.extend(x.vertices().iter().map(|&v| m.vertex(v).unwrap()));
        let expected: Vec<_> =
            seeds.iter().map(|s| cl.classify(s).map(|c| c.verdict)).collect::<Result<_, _>>().map_err(|e| e.to_string())?;
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for i in 0..100 {
            let k = i % seeds.len();
            let g = random_element(m.ctx(), 0, 3, 4, &mut rng);
            let u = gauge(&g, &seeds[k], &m.cdgl).unwrap();
            let got = cl.classify(&u).map_err(|e| format!("{name} case {i}: {e}"))?;
            ensure(got.verdict == expected[k], || format!("{name} case {i}: verdict changed"))?;
            ensure(got.witness.act(&u, &m.cdgl).unwrap() == got.representative, || format!("{name} case {i}: witness fails"))?;
            cases += 1;
        }
    }
    Ok(format!("{cases} perturbations at N=4"))
}

fn lemma_paths() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    let corpus = common::corpus();
    let n = 4;
    for i in 0..20 {
        let (name, x) = &corpus[i % corpus.len()];
        let m = model(x, n)?;
        let r = 1 + i % 3;
        // v is a Maurer-Cartan element; u = (−z)·v so that u = v + w with
        // dz = w + t, w ∈ L^{≥r}, t ∈ L^{≥r+1}
        let base = match x.vertices().first() {
            Some(&v0) => m.vertex(v0).unwrap(),
            None => LieElement::zero(m.ctx()),
        };
        let v = gauge(&random_element(m.ctx(), 0, 2, 2, &mut rng), &base, &m.cdgl).unwrap();
        let z = random_element(m.ctx(), 0, n, 3, &mut rng).lengths(r, n);
        let u = gauge(&-&z, &v, &m.cdgl).unwrap();
        let w = &u - &v;
        ensure(w.filtration_level() >= r, || format!("{name}: w below level {r}"))?;
        let t = &m.cdgl.apply_d(&z) - &w;
        ensure(t.filtration_level() > r, || format!("{name}: t below level {}", r + 1))?;

        let lemma = lemma_path(&m.cdgl, &u, &z, r).map_err(|e| format!("{name}: {e}"))?;
        ensure((&lemma.target - &v).filtration_level() > r, || format!("{name} r={r}: lemma target off"))?;
        let path =
            order_r_path(&m.cdgl, &u, &v, r).map_err(|e| e.to_string())?.ok_or_else(|| format!("{name} r={r}: no path"))?;
        ensure(path.word.filtration_level() >= r, || format!("{name} r={r}: word below order"))?;
        ensure((&path.target - &v).filtration_level() > r, || format!("{name} r={r}: target off"))?;
        path.verify(&m.cdgl).map_err(|e| e.to_string())?;
    }
    Ok("20 instances, r = 1..3, N=4".into())
}

fn path_composition() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let n = 5;
    let mut chains = 0;
    for name in ["three-vertex circle", "triangle", "two disjoint segments"] {
        let m = model(&entry(name), n)?;
        for n0 in [1, 2] {
            let z = m.vertex(1).unwrap();
            let ys: Vec<LieElement> = (n0..=n).map(|r| random_element(m.ctx(), 0, n, 3, &mut rng).lengths(r, n)).collect();
            // u_{N+1} = z and u_r = y_r · u_{r+1}
            let mut us = vec![z.clone()];
            for y in ys.iter().rev() {
                us.push(gauge(y, us.last().unwrap(), &m.cdgl).unwrap());
            }
            us.reverse();
            let paths: Vec<OrderRPath> = (0..ys.len())
                .map(|i| OrderRPath { source: us[i].clone(), target: us[i + 1].clone(), word: -&ys[i], order: n0 + i })
                .collect();
            let total = compose_paths(&m.cdgl, &paths).map_err(|e| format!("{name}: {e}"))?;
            total.verify(&m.cdgl).map_err(|e| format!("{name}: {e}"))?;
            ensure(total.target == z && total.order == n0, || format!("{name} n0={n0}: composite is wrong"))?;
            ensure(total.word.filtration_level() >= n0, || format!("{name} n0={n0}: word below order"))?;
            chains += 1;
        }
    }
    Ok(format!("{chains} chains composed and verified at N=5"))
}

fn theta() -> Outcome {
    let mut checked = Vec::new();
    for name in ["one-vertex circle", "three-vertex circle", "theta graph"] {
        let m = model(&entry(name), 6)?;
        let dec = graph_decomposition(&m, None).map_err(|e| e.to_string())?;
        let th = ThetaComplex::new(&dec).map_err(|e| e.to_string())?;
        ensure(th.table_mismatches().is_empty(), || format!("{name}: table mismatch"))?;
        ensure(th.square_defects().is_empty(), || format!("{name}: θ² ≠ 0"))?;
        let h = th.homology_minus_one();
        ensure(h.iter().all(|&(_, d)| d == 0), || format!("{name}: H₋₁ = {h:?}"))?;
        checked.push(name);
    }
    Ok(format!("θ² = 0 and H₋₁ = 0 on {} at N=6", checked.join(", ")))
}

fn decomposition_identities(m: &Model, label: &str) -> Result<(), String> {
    let dec = graph_decomposition(m, None).map_err(|e| format!("{label}: {e}"))?;
    let problems = dec.verify(m);
    ensure(problems.is_empty(), || format!("{label}: {problems:?}"))?;
    let d = &dec.decomposed;
    let ctx = d.ctx();
    let a = LieElement::generator(ctx, 0);
    for (u, v) in dec.pair_letters() {
        let (u, v) = (LieElement::generator(ctx, u), LieElement::generator(ctx, v));
        ensure(d.apply_d(&u).is_zero() && d.apply_d(&v) == u, || format!("{label}: du = 0, dv = u fails"))?;
    }
    for c in dec.loop_letters() {
        let c = LieElement::generator(ctx, c);
        ensure(d.apply_d(&c) == -a.bracket(&c).unwrap(), || format!("{label}: dc = −[a,c] fails"))?;
    }
    Ok(())
}

fn decompositions() -> Outcome {
    let mut count = 0;
    for (name, x) in common::graphs() {
        for n in 3..=5 {
            // disconnected entries decompose one component at a time
            for comp in x.components() {
                let part = x.induced(&comp);
                decomposition_identities(&model(&part, n)?, &format!("{name} N={n} component {comp:?}"))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} component decompositions at N=3..5"))
}

fn simplex_models() -> Outcome {
    let start = Instant::now();
    for k in 0..=3 {
        for n in 1..=5 {
            let m = build_simplex_model(k, n).map_err(|e| format!("Δ^{k} N={n}: {e}"))?;
            ensure(m.d_squared().is_clean(), || format!("Δ^{k} N={n}: d∘d ≠ 0"))?;
            let bad = m.linear_part_mismatches();
            ensure(bad.is_empty(), || format!("Δ^{k} N={n}: linear part differs on {bad:?}"))?;
        }
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(300), || format!("took {t:?}"))?;
    Ok(format!("Δ⁰..Δ³ at N=1..5 in {t:.1?}"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("LS interval soundness", ls_soundness, 30),
        ("cylinder isomorphism", cylinder, 30),
        ("BCH group laws", bch_laws, 600),
        ("gauge action law", gauge_law, 600),
        ("main theorem on the corpus", main_theorem, 1800),
        ("gauge-invariance fuzz", fuzz, 600),
        ("order-r paths", lemma_paths, 600),
        ("path composition", path_composition, 600),
        ("theta complex", theta, 600),
        ("graph decomposition", decompositions, 600),
        ("model builder", simplex_models, 300),
    ];
    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let t = start.elapsed();
        let outcome = match outcome {
            Ok(_) if t > Duration::from_secs(*limit) => Err(format!("over the {limit} s limit")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{t:.2?}]", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} [{t:.2?}]", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
