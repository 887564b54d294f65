//! Gauge classification of Maurer-Cartan elements in the model of a
//! complex: every class is either that of `0` or that of a vertex
//! generator, one class per connected component.

mod paths;
mod reduce;
mod theta;

pub use paths::{compose_paths, lemma_path, order_r_path, OrderRPath};
pub use reduce::{compose_reduction, reduce_step, witness_defect, Reducer, ReductionStep};
pub use theta::{e_degree, ThetaComplex};

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::cdgl::DEFAULT_UNKNOWN_BUDGET;
use crate::contraction::Contraction;
use crate::error::{CdglError, Result};
use crate::lie::LieElement;
use crate::rational::Rational;
use crate::series::GaugeElement;
use crate::simplicial::graph::{bfs_tree, tree_path, walk_gauge};
use crate::simplicial::{graph_decomposition, GraphDecomposition, Model};

/// Vertex coefficients of the linear part, with their per-component sums.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LambdaSignature {
    pub coefficients: BTreeMap<u32, Rational>,
    /// Indexed like `SimplicialComplex::components`.
    pub component_sums: Vec<Rational>,
}

impl LambdaSignature {
    /// The component whose coefficients sum to 1, if any.
    pub fn component(&self) -> Option<usize> {
        self.component_sums.iter().position(|s| s.is_one())
    }

    /// Vertices with a nonzero coefficient.
    pub fn support(&self) -> Vec<u32> {
        self.coefficients.iter().filter(|(_, c)| !c.is_zero()).map(|(&v, _)| v).collect()
    }
}

/// Reads the linear part of `u` on vertex generators and checks the
/// pattern forced by the Maurer-Cartan equation: each component sums to 0
/// or 1, and at most one sums to 1.
pub fn lambda_signature(model: &Model, u: &LieElement) -> Result<LambdaSignature> {
    if !model.cdgl.is_mc(u)? {
        return Err(CdglError::NotMaurerCartan);
    }
    let lin = u.length_component(1);
    let mut coefficients = BTreeMap::new();
    for &v in model.complex.vertices() {
        let l = model.letter(&[v]).expect("vertex generator");
        let c = lin.tensor_terms().get(&[l][..]).cloned().unwrap_or_else(Rational::zero);
        coefficients.insert(v, c);
    }
    let component_sums: Vec<Rational> = model
        .complex
        .components()
        .iter()
        .map(|comp| comp.iter().fold(Rational::zero(), |acc, v| &acc + &coefficients[v]))
        .collect();
    let ones = component_sums.iter().filter(|s| s.is_one()).count();
    if component_sums.iter().any(|s| !s.is_zero() && !s.is_one()) || ones > 1 {
        let sums: Vec<String> = component_sums.iter().map(|s| s.to_string()).collect();
        return Err(CdglError::LambdaPattern(format!("component sums [{}]", sums.join(", "))));
    }
    Ok(LambdaSignature { coefficients, component_sums })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Zero,
    #[serde(untagged)]
    Component {
        component: usize,
    },
}

/// A classified element with its certificate `gauge(witness, u) = representative`.
#[derive(Clone, Debug)]
pub struct McClass {
    pub verdict: Verdict,
    pub witness: GaugeElement,
    /// `0` or the base vertex generator of the component.
    pub representative: LieElement,
    pub steps: Vec<ReductionStep>,
}

/// Gauge `g` with `gauge(g, a_base) = a_v`: the BCH inverse of the tree-path
/// product that carries `a_v` back to `a_base`.
pub fn vertex_witness(model: &Model, v: u32, base: u32) -> Result<GaugeElement> {
    let cv = model.complex.component_of(v).ok_or_else(|| CdglError::UnknownGenerator(v.to_string()))?;
    let cb = model.complex.component_of(base).ok_or_else(|| CdglError::UnknownGenerator(base.to_string()))?;
    if cv != cb {
        return Err(CdglError::DifferentComponents(v, base));
    }
    let parent = bfs_tree(model, base);
    let path = tree_path(&parent, base, v);
    let g = GaugeElement::new(-&walk_gauge(model, &path)?)?;
    let got = g.act(&model.vertex(base).unwrap(), &model.cdgl)?;
    if got != model.vertex(v).unwrap() {
        return Err(CdglError::Verification(format!("tree-path witness from {base} to {v} failed")));
    }
    Ok(g)
}

/// Classification options.
#[derive(Clone, Debug)]
pub struct ClassifyOptions {
    /// Preferred base vertex for its component (otherwise the least vertex).
    pub base_vertex: Option<u32>,
    /// Cap on unknowns in one elimination.
    pub budget: usize,
    /// Use graph-decomposition coordinates on connected 1-dimensional complexes.
    pub decomposition: bool,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions { base_vertex: None, budget: DEFAULT_UNKNOWN_BUDGET, decomposition: true }
    }
}

/// Per-model state reused across classifications.
pub struct Classifier<'m> {
    model: &'m Model,
    bases: Vec<u32>,
    contraction: Contraction,
    decomposition: Option<(GraphDecomposition, Contraction)>,
    budget: usize,
}

impl<'m> Classifier<'m> {
    pub fn new(model: &'m Model, options: &ClassifyOptions) -> Result<Self> {
        let comps = model.complex.components();
        if let Some(b) = options.base_vertex {
            if !model.complex.vertices().contains(&b) {
                return Err(CdglError::InvalidComplex(format!("unknown base vertex {b}")));
            }
        }
        let bases = comps
            .iter()
            .map(|c| match options.base_vertex {
                Some(b) if c.contains(&b) => b,
                _ => c[0],
            })
            .collect::<Vec<_>>();
        let contraction = Contraction::new(model.cdgl.derivation())?;
        let decomposition = if options.decomposition && comps.len() == 1 && model.complex.dimension() <= 1 {
            let dec = graph_decomposition(model, Some(bases[0]))?;
            let c = Contraction::new(dec.decomposed.derivation())?;
            Some((dec, c))
        } else {
            None
        };
        Ok(Classifier { model, bases, contraction, decomposition, budget: options.budget })
    }

    pub fn model(&self) -> &Model {
        self.model
    }

    pub fn base(&self, component: usize) -> u32 {
        self.bases[component]
    }

    pub fn uses_decomposition(&self) -> bool {
        self.decomposition.is_some()
    }

    fn representative(&self, verdict: Verdict) -> LieElement {
        match verdict {
            Verdict::Zero => LieElement::zero(self.model.ctx()),
            Verdict::Component { component } => self.model.vertex(self.bases[component]).unwrap(),
        }
    }

    pub fn classify(&self, u: &LieElement) -> Result<McClass> {
        let sig = lambda_signature(self.model, u)?;
        let verdict = match sig.component() {
            None => Verdict::Zero,
            Some(component) => Verdict::Component { component },
        };
        let representative = self.representative(verdict);
        let ctx = self.model.ctx();

        // a bare vertex generator: the tree-path witness
        if let Verdict::Component { component } = verdict {
            if let [v] = sig.support()[..] {
                if *u == self.model.vertex(v).unwrap() {
                    let g = vertex_witness(self.model, v, self.bases[component])?.inverse();
                    return self.certify(u, verdict, representative, g, Vec::new());
                }
            }
        }

        let (witness, steps) = match &self.decomposition {
            Some((dec, c)) => {
                let u_dec = dec.from_raw.apply(u);
                let rep_dec = dec.from_raw.apply(&representative);
                let mut reducer = Reducer::new(&dec.decomposed, &rep_dec, Some(c))?;
                reducer.budget = self.budget;
                let steps = reducer.run(&u_dec)?;
                let w = compose_reduction(dec.ctx(), &steps)?;
                (GaugeElement::new(dec.to_raw.apply(w.value()))?, steps)
            }
            None => {
                let mut reducer = Reducer::new(&self.model.cdgl, &representative, Some(&self.contraction))?;
                reducer.budget = self.budget;
                let steps = reducer.run(u)?;
                (compose_reduction(ctx, &steps)?, steps)
            }
        };
        self.certify(u, verdict, representative, witness, steps)
    }

    fn certify(
        &self,
        u: &LieElement,
        verdict: Verdict,
        representative: LieElement,
        witness: GaugeElement,
        steps: Vec<ReductionStep>,
    ) -> Result<McClass> {
        let defect = witness_defect(&self.model.cdgl, &witness, u, &representative)?;
        if !defect.is_zero() {
            return Err(CdglError::Verification(format!("witness leaves defect {defect}")));
        }
        Ok(McClass { verdict, witness, representative, steps })
    }

    /// Classifies `0` and every vertex generator.
    pub fn pi0_classes(&self) -> Result<Pi0Report> {
        let mut inputs = vec![("0".to_string(), LieElement::zero(self.model.ctx()))];
        for &v in self.model.complex.vertices() {
            let l = self.model.letter(&[v]).unwrap();
            inputs.push((self.model.ctx().label(l).to_string(), self.model.vertex(v).unwrap()));
        }
        let mut entries = Vec::new();
        let mut classes: BTreeMap<Verdict, Vec<String>> = BTreeMap::new();
        for (label, u) in inputs {
            let class = self.classify(&u)?;
            classes.entry(class.verdict).or_default().push(label.clone());
            entries.push((label, class));
        }
        Ok(Pi0Report { components: self.model.complex.components().len(), classes, entries })
    }
}

/// Classes of `0` and the vertex generators.
#[derive(Clone, Debug)]
pub struct Pi0Report {
    pub components: usize,
    /// Verdict to the inputs landing there.
    pub classes: BTreeMap<Verdict, Vec<String>>,
    pub entries: Vec<(String, McClass)>,
}

impl Pi0Report {
    pub fn count(&self) -> usize {
        self.classes.len()
    }

    /// The count agrees with the components of the complex plus a basepoint.
    pub fn matches_components(&self) -> bool {
        self.count() == self.components + 1
    }
}

pub fn classify(model: &Model, u: &LieElement) -> Result<McClass> {
    Classifier::new(model, &ClassifyOptions::default())?.classify(u)
}

pub fn pi0_classes(model: &Model) -> Result<Pi0Report> {
    Classifier::new(model, &ClassifyOptions::default())?.pi0_classes()
}

/// Classification report in the JSON-lines schema.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ClassReport {
    pub input: String,
    pub verdict: Verdict,
    pub witness: String,
    pub truncation: usize,
    pub verified: bool,
}

impl ClassReport {
    pub fn new(input: &LieElement, class: &McClass) -> Self {
        ClassReport {
            input: input.to_string(),
            verdict: class.verdict,
            witness: class.witness.value().to_string(),
            truncation: input.ctx().truncation(),
            verified: true,
        }
    }
}
