//! Lie models of finite simplicial complexes.
//!
//! One generator `s_S` of degree `dim S − 1` per simplex. Vertices are
//! Maurer-Cartan, edges carry the interval differential, and for higher
//! simplices the differential is the transport of a cycle solved once on the
//! standard simplex whose linear part is the desuspended boundary
//! `Σ_i (−1)^i s_{S∖s_i}`.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use num_traits::One;
use serde::{Deserialize, Serialize};

use super::complex::SimplicialComplex;
use super::interval::{interval_differential, mc_generator_differential};
use crate::cdgl::{solve_leading, Cdgl, DSquaredReport, Derivation, Differential};
use crate::contraction::Contraction;
use crate::error::{CdglError, Result};
use crate::lie::text::parse_element;
use crate::lie::{make_algebra, Context, Generator, LieElement};
use crate::rational::Rational;

pub fn simplex_label(s: &[u32]) -> String {
    let parts: Vec<String> = s.iter().map(|v| v.to_string()).collect();
    format!("s{}", parts.join("_"))
}

fn simplex_context(simplices: &[Vec<u32>], truncation: usize) -> Result<Context> {
    let gens =
        simplices.iter().enumerate().map(|(i, s)| Generator::new(i as u32, s.len() as i32 - 2, simplex_label(s))).collect();
    make_algebra(gens, truncation)
}

/// Desuspended simplicial boundary of `s_S`.
fn boundary(ctx: &Context, letters: &BTreeMap<Vec<u32>, u16>, s: &[u32]) -> LieElement {
    let mut out = LieElement::zero(ctx);
    if s.len() < 2 {
        return out;
    }
    for i in 0..s.len() {
        let face: Vec<u32> = s.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &v)| v).collect();
        let sign = Rational::sign(i % 2 == 1);
        out.add_scaled(&sign, &LieElement::generator(ctx, letters[&face]));
    }
    out
}

type StandardCache = Mutex<HashMap<(usize, usize), Arc<(Context, LieElement)>>>;

fn standard_cache() -> &'static StandardCache {
    static CACHE: std::sync::OnceLock<StandardCache> = std::sync::OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn letters_of(simplices: &[Vec<u32>]) -> BTreeMap<Vec<u32>, u16> {
    simplices.iter().enumerate().map(|(i, s)| (s.clone(), i as u16)).collect()
}

/// Differential of `s_S` expressed in `ctx`.
fn simplex_differential(ctx: &Context, letters: &BTreeMap<Vec<u32>, u16>, s: &[u32]) -> Result<LieElement> {
    let g = LieElement::generator(ctx, letters[s]);
    match s.len() {
        1 => Ok(mc_generator_differential(&g)),
        2 => {
            let a = LieElement::generator(ctx, letters[&vec![s[0]]]);
            let b = LieElement::generator(ctx, letters[&vec![s[1]]]);
            interval_differential(&a, &b, &g)
        }
        n => {
            let std = standard_top_image(n - 1, ctx.truncation())?;
            let (sctx, omega) = (&std.0, &std.1);
            let std_simplices = SimplicialComplex::simplex(n - 1).simplices().to_vec();
            let map: Vec<u16> = std_simplices
                .iter()
                .map(|t| {
                    let img: Vec<u32> = t.iter().map(|&i| s[i as usize]).collect();
                    letters[&img]
                })
                .collect();
            debug_assert_eq!(map.len(), sctx.len());
            Ok(omega.relabel(ctx, &map))
        }
    }
}

/// Solves for the differential of the top generator of the standard
/// `k`-simplex (`k ≥ 2`), order by order in bracket length.
fn standard_top_image(k: usize, truncation: usize) -> Result<Arc<(Context, LieElement)>> {
    if let Some(hit) = standard_cache().lock().unwrap().get(&(k, truncation)) {
        return Ok(hit.clone());
    }
    let cx = SimplicialComplex::simplex(k);
    let simplices = cx.simplices().to_vec();
    let ctx = simplex_context(&simplices, truncation)?;
    let letters = letters_of(&simplices);
    let top = simplices.last().unwrap().clone();
    let mut images = Vec::with_capacity(simplices.len());
    for s in &simplices[..simplices.len() - 1] {
        images.push(simplex_differential(&ctx, &letters, s)?);
    }
    let top_letter = letters[&top];
    let degree = k as i32 - 2;

    // the top generator may appear in its own differential, so the
    // derivation is rebuilt with `top ↦ Ω` after every correction
    let mut omega = boundary(&ctx, &letters, &top);
    let mut contraction: Option<Contraction> = None;
    let mut last_level = 0;
    loop {
        let mut table = images.clone();
        table.push(omega.clone());
        let op = Derivation::new(&ctx, -1, table)?;
        let residue = op.apply(&omega);
        if residue.is_zero() {
            break;
        }
        let m = residue.filtration_level();
        let target = residue.length_component(m).scaled(&-Rational::one());
        let homotopy = match &contraction {
            Some(c) => c,
            None => contraction.insert(Contraction::new(&op)?),
        };
        let fix = homotopy
            .primitive(&op, &target)
            .or_else(|| (2..=m).rev().find_map(|lo| solve_leading(&op, &target, degree, lo)))
            .ok_or_else(|| CdglError::Unsolvable(format!("simplex {k}: no correction at bracket length {m}")))?;
        omega.add_scaled(&Rational::one(), &fix);
        if m <= last_level {
            return Err(CdglError::Verification(format!("simplex {k}: correction did not raise level {m}")));
        }
        last_level = m;
    }
    debug_assert_eq!(top_letter as usize, images.len());
    let entry = Arc::new((ctx, omega));
    standard_cache().lock().unwrap().insert((k, truncation), entry.clone());
    Ok(entry)
}

/// The Lie model of a complex, truncated at `N`.
#[derive(Clone, Debug)]
pub struct Model {
    pub complex: SimplicialComplex,
    pub cdgl: Cdgl,
    letters: BTreeMap<Vec<u32>, u16>,
}

impl Model {
    pub fn ctx(&self) -> &Context {
        self.cdgl.ctx()
    }

    pub fn truncation(&self) -> usize {
        self.ctx().truncation()
    }

    pub fn letter(&self, simplex: &[u32]) -> Option<u16> {
        self.letters.get(simplex).copied()
    }

    pub fn generator(&self, simplex: &[u32]) -> Option<LieElement> {
        self.letter(simplex).map(|l| LieElement::generator(self.ctx(), l))
    }

    /// The Maurer-Cartan generator of a vertex.
    pub fn vertex(&self, v: u32) -> Option<LieElement> {
        self.generator(&[v])
    }

    pub fn simplex_of_letter(&self, letter: u16) -> &[u32] {
        &self.complex.simplices()[letter as usize]
    }

    /// Desuspended simplicial boundary of a generator (zero for vertices).
    pub fn boundary_of(&self, simplex: &[u32]) -> LieElement {
        boundary(self.ctx(), &self.letters, simplex)
    }

    /// Simplices whose differential's linear part differs from the boundary.
    pub fn linear_part_mismatches(&self) -> Vec<Vec<u32>> {
        self.complex
            .simplices()
            .iter()
            .filter(|s| {
                let d = self.cdgl.differential_of(self.letters[*s]).length_component(1);
                d != self.boundary_of(s)
            })
            .cloned()
            .collect()
    }

    pub fn d_squared(&self) -> DSquaredReport {
        self.cdgl.check_d_squared()
    }

    pub fn to_document(&self) -> ModelDocument {
        let generators = self
            .complex
            .simplices()
            .iter()
            .map(|s| ModelGenerator { id: simplex_label(s), degree: s.len() as i32 - 2, simplex: s.clone() })
            .collect();
        let differential = self
            .complex
            .simplices()
            .iter()
            .map(|s| (simplex_label(s), self.cdgl.differential_of(self.letters[s]).to_string()))
            .collect();
        ModelDocument { truncation: self.truncation(), generators, differential, d_squared: None }
    }
}

/// Model of the full `n`-simplex.
pub fn build_simplex_model(n: usize, truncation: usize) -> Result<Model> {
    build_model(&SimplicialComplex::simplex(n), truncation)
}

/// Model of `X`: one generator per simplex, differentials per simplex type.
pub fn build_model(x: &SimplicialComplex, truncation: usize) -> Result<Model> {
    let simplices = x.simplices().to_vec();
    let ctx = simplex_context(&simplices, truncation)?;
    let letters = letters_of(&simplices);
    let table = simplices.iter().map(|s| simplex_differential(&ctx, &letters, s)).collect::<Result<Vec<_>>>()?;
    let cdgl = Cdgl::new(&ctx, table)?;
    Ok(Model { complex: x.clone(), cdgl, letters })
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ModelGenerator {
    pub id: String,
    pub degree: i32,
    pub simplex: Vec<u32>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct DSquaredSummary {
    pub clean: bool,
    pub residues: BTreeMap<String, String>,
}

impl From<&DSquaredReport> for DSquaredSummary {
    fn from(r: &DSquaredReport) -> Self {
        DSquaredSummary { clean: r.is_clean(), residues: r.residues.iter().map(|(l, e)| (l.clone(), e.to_string())).collect() }
    }
}

/// `{"truncation":N, "generators":[{"id","degree","simplex"}…], "differential":{"id": "<element text>"…}}`
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct ModelDocument {
    pub truncation: usize,
    pub generators: Vec<ModelGenerator>,
    pub differential: BTreeMap<String, String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub d_squared: Option<DSquaredSummary>,
}

impl ModelDocument {
    /// Rebuilds the dgl without the `d∘d` check, so callers can inspect the
    /// report of a corrupted file.
    pub fn to_cdgl(&self) -> Result<Cdgl> {
        let gens = self.generators.iter().enumerate().map(|(i, g)| Generator::new(i as u32, g.degree, g.id.clone())).collect();
        let ctx = make_algebra(gens, self.truncation)?;
        let mut table = vec![LieElement::zero(&ctx); ctx.len()];
        for (id, text) in &self.differential {
            let l = ctx.letter(id).ok_or_else(|| CdglError::UnknownGenerator(id.clone()))?;
            table[l as usize] = parse_element(&ctx, text)?;
        }
        Cdgl::new_unchecked(&ctx, table)
    }
}

impl ModelDocument {
    /// Rebuilds the complex from the generator simplices and the model from
    /// the stored differential, again without checking `d∘d`.
    pub fn to_model(&self) -> Result<Model> {
        let mut vertices = Vec::new();
        let mut facets = Vec::new();
        let mut loops = Vec::new();
        for g in &self.generators {
            if g.simplex.is_empty() || g.degree != g.simplex.len() as i32 - 2 {
                return Err(CdglError::InvalidComplex(format!(
                    "generator {} has degree {} for simplex {:?}",
                    g.id, g.degree, g.simplex
                )));
            }
            if g.id != simplex_label(&g.simplex) {
                return Err(CdglError::InvalidComplex(format!(
                    "generator {} should be named {}",
                    g.id,
                    simplex_label(&g.simplex)
                )));
            }
            match g.simplex[..] {
                [v] => vertices.push(v),
                [v, w] if v == w => loops.push(v),
                _ => facets.push(g.simplex.clone()),
            }
        }
        let complex = SimplicialComplex::new(vertices, facets)?.with_loops(&loops)?;
        if complex.simplices().len() != self.generators.len() {
            return Err(CdglError::InvalidComplex("generators are not closed under faces".into()));
        }
        let simplices = complex.simplices().to_vec();
        let ctx = simplex_context(&simplices, self.truncation)?;
        let letters = letters_of(&simplices);
        let mut table = vec![LieElement::zero(&ctx); ctx.len()];
        for (id, text) in &self.differential {
            let l = ctx.letter(id).ok_or_else(|| CdglError::UnknownGenerator(id.clone()))?;
            table[l as usize] = parse_element(&ctx, text)?;
        }
        Ok(Model { complex, cdgl: Cdgl::new_unchecked(&ctx, table)?, letters })
    }
}

impl Model {
    /// Check that every generator image lies in the subalgebra generated by
    /// the simplex and its faces.
    pub fn faces_closed(&self) -> bool {
        self.complex.simplices().iter().all(|s| {
            let img = self.cdgl.differential_of(self.letters[s]);
            img.tensor_terms().keys().flatten().all(|&l| {
                let t = self.simplex_of_letter(l);
                t.iter().all(|v| s.contains(v)) && t.len() <= s.len()
            })
        })
    }
}
