//! Explicit decomposition of the model of a connected graph.
//!
//! With a base vertex `a` and a BFS spanning tree, each other vertex `v`
//! gets the path gauge `p_v` (BCH product of the tree edges from the base),
//! and each non-tree edge the loop gauge `c_k`. The algebra
//! `L' = L(a, a_v, p_v, c_k)` maps isomorphically onto the model; pasting the
//! cylinder isomorphisms on each `(a, a_v, p_v)` interval gives coordinates
//! `(a, u_v, v_v, c_k)` with `du = 0`, `dv = u`, `dc = −[a,c]`.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_traits::One;

use super::interval::{cylinder_endpoint, interval_differential, mc_generator_differential};
use super::model::Model;
use crate::cdgl::{Cdgl, Morphism};
use crate::error::{CdglError, Result};
use crate::lie::element::same_context;
use crate::lie::{make_algebra, Context, Generator, LieElement, TensorMap};
use crate::linalg;
use crate::rational::Rational;
use crate::series::bch_product;

#[derive(Clone, Debug)]
pub struct GraphDecomposition {
    pub base: u32,
    pub tree_edges: Vec<(u32, u32)>,
    pub loop_edges: Vec<(u32, u32)>,
    /// `p_v` in the raw model, for each non-base vertex.
    pub path_gauges: BTreeMap<u32, LieElement>,
    /// `c_k` in the raw model, keyed by non-tree edge.
    pub loop_gauges: BTreeMap<(u32, u32), LieElement>,
    /// `L(a, a_v, p_v, c_k)` with interval and loop differentials.
    pub intermediate: Cdgl,
    /// `f: L' → L_X`
    pub f: Morphism,
    /// `f⁻¹: L_X → L'`
    pub f_inv: Morphism,
    /// `L(a, u_v, v_v, c_k)`
    pub decomposed: Cdgl,
    /// decomposed → raw model
    pub to_raw: Morphism,
    /// raw model → decomposed
    pub from_raw: Morphism,
}

fn step_gauge(model: &Model, p: u32, q: u32) -> LieElement {
    let (lo, hi) = if p <= q { (p, q) } else { (q, p) };
    let e = model.generator(&[lo, hi]).expect("edge in complex");
    // e gauges a_hi to a_lo; the step factor gauges a_q to a_p
    if p <= q {
        e
    } else {
        -&e
    }
}

/// BFS tree from `base` over sorted neighbors: returns parent map.
pub fn bfs_tree(model: &Model, base: u32) -> BTreeMap<u32, u32> {
    let adj = model.complex.adjacency();
    let mut parent = BTreeMap::new();
    let mut seen = BTreeSet::from([base]);
    let mut q = VecDeque::from([base]);
    while let Some(x) = q.pop_front() {
        for &y in &adj[&x] {
            if seen.insert(y) {
                parent.insert(y, x);
                q.push_back(y);
            }
        }
    }
    parent
}

/// Vertices from `base` to `v` along the tree.
pub fn tree_path(parent: &BTreeMap<u32, u32>, base: u32, v: u32) -> Vec<u32> {
    let mut path = vec![v];
    let mut cur = v;
    while cur != base {
        cur = parent[&cur];
        path.push(cur);
    }
    path.reverse();
    path
}

/// BCH product of the step factors along a vertex walk; it gauges the
/// walk's last vertex generator to the first.
pub fn walk_gauge(model: &Model, walk: &[u32]) -> Result<LieElement> {
    let factors: Vec<LieElement> = walk.windows(2).map(|w| step_gauge(model, w[0], w[1])).collect();
    if factors.is_empty() {
        return Ok(LieElement::zero(model.ctx()));
    }
    bch_product(&factors)
}

fn residue_names(r: &[(String, LieElement)]) -> String {
    r.iter().map(|(l, _)| l.as_str()).collect::<Vec<_>>().join(", ")
}

/// Inverts a morphism that is bijective on indecomposables, by iterating
/// `φ ← φ + Lin⁻¹(g − f(φ(g)))` until the residue vanishes.
fn invert(f: &Morphism) -> Result<Morphism> {
    let src = f.source().clone();
    let tgt = f.target().clone();
    // linear parts as columns indexed by target letters
    let columns: Vec<TensorMap> = (0..src.len() as u16).map(|l| f.image(l).length_component(1).tensor_terms().clone()).collect();
    let mut lin_images = Vec::with_capacity(tgt.len());
    for t in 0..tgt.len() as u16 {
        let rhs = LieElement::generator(&tgt, t).tensor_terms().clone();
        let x = linalg::solve(&columns, &rhs).ok_or_else(|| CdglError::Verification("linear part is not invertible".into()))?;
        let mut e = LieElement::zero(&src);
        for (l, c) in x.iter().enumerate() {
            e.add_scaled(c, &LieElement::generator(&src, l as u16));
        }
        lin_images.push(e);
    }
    let lin = Morphism::new(&tgt, &src, lin_images.clone())?;
    let mut images = lin_images;
    for t in 0..tgt.len() as u16 {
        let g = LieElement::generator(&tgt, t);
        for _ in 0..=tgt.truncation() {
            let r = &g - &f.apply(&images[t as usize]);
            if r.is_zero() {
                break;
            }
            let corr = lin.apply(&r);
            images[t as usize].add_scaled(&Rational::one(), &corr);
        }
    }
    Morphism::new(&tgt, &src, images)
}

/// Decomposes the model of a connected complex of dimension ≤ 1.
pub fn graph_decomposition(model: &Model, base: Option<u32>) -> Result<GraphDecomposition> {
    let cx = &model.complex;
    if cx.dimension() > 1 {
        return Err(CdglError::InvalidComplex("graph decomposition needs dimension ≤ 1".into()));
    }
    let comps = cx.components();
    if comps.len() != 1 {
        return Err(CdglError::InvalidComplex("graph decomposition needs a connected complex".into()));
    }
    let base = base.unwrap_or(cx.vertices()[0]);
    if !cx.vertices().contains(&base) {
        return Err(CdglError::InvalidComplex(format!("unknown base vertex {base}")));
    }
    let n = model.truncation();
    let parent = bfs_tree(model, base);
    let mut tree_edges: Vec<(u32, u32)> = parent.iter().map(|(&c, &p)| (c.min(p), c.max(p))).collect();
    tree_edges.sort_unstable();
    let tree_set: BTreeSet<(u32, u32)> = tree_edges.iter().copied().collect();
    let loop_edges: Vec<(u32, u32)> = cx.edges().map(|e| (e[0], e[1])).filter(|e| !tree_set.contains(e)).collect();
    let others: Vec<u32> = cx.vertices().iter().copied().filter(|&v| v != base).collect();

    let mut path_gauges = BTreeMap::new();
    for &v in &others {
        path_gauges.insert(v, walk_gauge(model, &tree_path(&parent, base, v))?);
    }
    let mut loop_gauges = BTreeMap::new();
    for &(i, j) in &loop_edges {
        let mut walk = tree_path(&parent, base, i);
        let mut back = tree_path(&parent, base, j);
        back.reverse();
        walk.extend(back);
        loop_gauges.insert((i, j), walk_gauge(model, &walk)?);
    }

    // L' = L(a, a_v, p_v, c_k)
    let mut gens = vec![Generator::new(0, -1, "a")];
    for &v in &others {
        gens.push(Generator::new(gens.len() as u32, -1, format!("a{v}")));
    }
    for &v in &others {
        gens.push(Generator::new(gens.len() as u32, 0, format!("p{v}")));
    }
    for &(i, j) in &loop_edges {
        gens.push(Generator::new(gens.len() as u32, 0, format!("c{i}_{j}")));
    }
    let lctx = make_algebra(gens, n)?;
    let k = others.len();
    let g = |l: usize| LieElement::generator(&lctx, l as u16);
    let a = g(0);
    let mut ltable = vec![mc_generator_differential(&a)];
    for i in 0..k {
        ltable.push(mc_generator_differential(&g(1 + i)));
    }
    for i in 0..k {
        ltable.push(interval_differential(&a, &g(1 + i), &g(1 + k + i))?);
    }
    for c in 0..loop_edges.len() {
        ltable.push(a.bracket_unchecked(&g(1 + 2 * k + c)).scaled(&-Rational::one()));
    }
    let intermediate = Cdgl::new(&lctx, ltable)?;

    let mut fimg = vec![model.vertex(base).unwrap()];
    fimg.extend(others.iter().map(|&v| model.vertex(v).unwrap()));
    fimg.extend(others.iter().map(|v| path_gauges[v].clone()));
    fimg.extend(loop_edges.iter().map(|e| loop_gauges[e].clone()));
    let f = Morphism::new(&lctx, model.ctx(), fimg)?;
    let res = f.chain_map_residues(&intermediate, &model.cdgl);
    if !res.is_empty() {
        return Err(CdglError::Verification(format!("f is not a chain map on {}", residue_names(&res))));
    }
    let f_inv = invert(&f)?;

    // D = L(a, u_v, v_v, c_k)
    let mut dgens = vec![Generator::new(0, -1, "a")];
    for &v in &others {
        dgens.push(Generator::new(dgens.len() as u32, -1, format!("u{v}")));
    }
    for &v in &others {
        dgens.push(Generator::new(dgens.len() as u32, 0, format!("v{v}")));
    }
    for &(i, j) in &loop_edges {
        dgens.push(Generator::new(dgens.len() as u32, 0, format!("c{i}_{j}")));
    }
    let dctx = make_algebra(dgens, n)?;
    let h = |l: usize| LieElement::generator(&dctx, l as u16);
    let da = h(0);
    let mut dtable = vec![mc_generator_differential(&da)];
    dtable.extend((0..k).map(|_| LieElement::zero(&dctx)));
    dtable.extend((0..k).map(|i| h(1 + i)));
    dtable.extend((0..loop_edges.len()).map(|c| da.bracket_unchecked(&h(1 + 2 * k + c)).scaled(&-Rational::one())));
    let decomposed = Cdgl::new(&dctx, dtable)?;

    // Ψ: L' → D and its inverse
    let mut psi = vec![da.clone()];
    for i in 0..k {
        psi.push(cylinder_endpoint(&da, &h(1 + i), &h(1 + k + i))?);
    }
    psi.extend((0..k).map(|i| h(1 + k + i)));
    psi.extend((0..loop_edges.len()).map(|c| h(1 + 2 * k + c)));
    let psi = Morphism::new(&lctx, &dctx, psi)?;
    let mut psi_inv = vec![a.clone()];
    psi_inv.extend((0..k).map(|i| intermediate.apply_d(&g(1 + k + i))));
    psi_inv.extend((0..k).map(|i| g(1 + k + i)));
    psi_inv.extend((0..loop_edges.len()).map(|c| g(1 + 2 * k + c)));
    let psi_inv = Morphism::new(&dctx, &lctx, psi_inv)?;

    let to_raw = psi_inv.then(&f)?;
    let from_raw = f_inv.then(&psi)?;
    let dec = GraphDecomposition {
        base,
        tree_edges,
        loop_edges,
        path_gauges,
        loop_gauges,
        intermediate,
        f,
        f_inv,
        decomposed,
        to_raw,
        from_raw,
    };
    let problems = dec.verify(model);
    if !problems.is_empty() {
        return Err(CdglError::Verification(problems.join("; ")));
    }
    Ok(dec)
}

impl GraphDecomposition {
    /// All isomorphism and chain-map identities; empty when everything holds.
    pub fn verify(&self, model: &Model) -> Vec<String> {
        let mut out = Vec::new();
        let mut check = |what: &str, r: Vec<(String, LieElement)>| {
            if !r.is_empty() {
                out.push(format!("{what}: {}", residue_names(&r)));
            }
        };
        check("f chain map", self.f.chain_map_residues(&self.intermediate, &model.cdgl));
        check("f_inv chain map", self.f_inv.chain_map_residues(&model.cdgl, &self.intermediate));
        check("f_inv∘f", self.f.then(&self.f_inv).map(|m| m.identity_residues()).unwrap_or_default());
        check("f∘f_inv", self.f_inv.then(&self.f).map(|m| m.identity_residues()).unwrap_or_default());
        check("to_raw chain map", self.to_raw.chain_map_residues(&self.decomposed, &model.cdgl));
        check("from_raw chain map", self.from_raw.chain_map_residues(&model.cdgl, &self.decomposed));
        check("from_raw∘to_raw", self.to_raw.then(&self.from_raw).map(|m| m.identity_residues()).unwrap_or_default());
        check("to_raw∘from_raw", self.from_raw.then(&self.to_raw).map(|m| m.identity_residues()).unwrap_or_default());
        debug_assert!(same_context(self.to_raw.target(), model.ctx()));
        out
    }

    pub fn ctx(&self) -> &Context {
        self.decomposed.ctx()
    }

    /// Degree-0 loop generators `c_k` of the decomposed algebra.
    pub fn loop_letters(&self) -> Vec<u16> {
        let k = self.path_gauges.len();
        (0..self.loop_edges.len()).map(|c| (1 + 2 * k + c) as u16).collect()
    }

    /// `(u_v, v_v)` letter pairs of the decomposed algebra.
    pub fn pair_letters(&self) -> Vec<(u16, u16)> {
        let k = self.path_gauges.len();
        (0..k).map(|i| ((1 + i) as u16, (1 + k + i) as u16)).collect()
    }
}
