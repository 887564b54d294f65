mod common;

use cdgl_core::classify::{compose_paths, lemma_path, order_r_path, OrderRPath, ThetaComplex};
use cdgl_core::lie::random::random_element;
use cdgl_core::lie::LieElement;
use cdgl_core::series::gauge;
use cdgl_core::simplicial::{build_model, graph_decomposition};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn lemma_path_lands_one_level_up() {
    let mut rng = ChaCha8Rng::seed_from_u64(13);
    for (name, x) in common::corpus().into_iter().take(10) {
        let m = build_model(&x, 4).unwrap();
        for r in 1..=3 {
            let v0 = x.vertices()[0];
            let u = gauge(&random_element(m.ctx(), 0, 2, 2, &mut rng), &m.vertex(v0).unwrap(), &m.cdgl).unwrap();
            let z = random_element(m.ctx(), 0, 4, 3, &mut rng).lengths(r, 4);
            let dz = m.cdgl.apply_d(&z);
            let w = dz.length_component(r);
            let v = &u - &w;
            let path = lemma_path(&m.cdgl, &u, &z, r).unwrap();
            assert_eq!(path.word, z);
            assert!((&path.target - &v).filtration_level() > r, "{name} r={r}");
        }
    }
}

#[test]
fn sequences_of_paths_compose() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let x = common::corpus().into_iter().find(|(n, _)| *n == "three-vertex circle").unwrap().1;
    let m = build_model(&x, 5).unwrap();
    let z = m.vertex(1).unwrap();
    let n0 = 1;
    let ys: Vec<LieElement> = (n0..=5).map(|r| random_element(m.ctx(), 0, 5, 3, &mut rng).lengths(r, 5)).collect();
    // u_6 = z, u_r = y_r · u_{r+1}
    let mut us = vec![z.clone()];
    for y in ys.iter().rev() {
        let next = gauge(y, us.last().unwrap(), &m.cdgl).unwrap();
        us.push(next);
    }
    us.reverse();
    let paths: Vec<OrderRPath> = (0..ys.len())
        .map(|i| OrderRPath { source: us[i].clone(), target: us[i + 1].clone(), word: -&ys[i], order: n0 + i })
        .collect();
    let total = compose_paths(&m.cdgl, &paths).unwrap();
    assert_eq!(total.target, z);
    assert!(total.word.filtration_level() >= n0);
    let direct = order_r_path(&m.cdgl, &us[0], &z, 1).unwrap().unwrap();
    direct.verify(&m.cdgl).unwrap();
}

#[test]
fn theta_tables_hold_on_loops() {
    for name in ["one-vertex circle", "three-vertex circle", "theta graph"] {
        let x = common::corpus().into_iter().find(|(n, _)| *n == name).unwrap().1;
        let m = build_model(&x, 6).unwrap();
        let dec = graph_decomposition(&m, None).unwrap();
        let th = ThetaComplex::new(&dec).unwrap();
        assert!(th.table_mismatches().is_empty(), "{name}");
        assert!(th.square_defects().is_empty(), "{name}");
        assert!(th.homology_minus_one().iter().all(|&(_, h)| h == 0), "{name}: {:?}", th.homology_minus_one());
    }
}

#[test]
fn graph_decompositions_hold() {
    for (name, x) in common::graphs() {
        if x.components().len() != 1 {
            continue;
        }
        for n in 3..=5 {
            let m = build_model(&x, n).unwrap();
            let dec = graph_decomposition(&m, None).unwrap();
            assert!(dec.verify(&m).is_empty(), "{name}");
            assert_eq!(dec.pair_letters().len(), x.vertices().len() - 1);
            assert_eq!(dec.loop_letters().len(), x.edges().count() + 1 - x.vertices().len());
        }
    }
}
