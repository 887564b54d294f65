use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{CdglError, Result};

/// Upper bound on the alphabet; letters are stored as `u16`.
pub const MAX_GENERATORS: usize = 4096;

/// A free generator of the graded Lie algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Generator {
    pub id: u32,
    pub degree: i32,
    pub label: String,
}

impl Generator {
    pub fn new(id: u32, degree: i32, label: impl Into<String>) -> Self {
        Generator { id, degree, label: label.into() }
    }
}

/// Fixed alphabet and truncation order shared by all elements computed
/// together. Letters are positions in `generators`, which is sorted by id.
#[derive(Debug, PartialEq, Eq)]
pub struct AlgebraContext {
    generators: Vec<Generator>,
    truncation: usize,
    by_label: BTreeMap<String, u16>,
}

pub type Context = Arc<AlgebraContext>;

/// Builds a context over `generators` truncated modulo `L^[truncation + 1]`.
pub fn make_algebra(mut generators: Vec<Generator>, truncation: usize) -> Result<Context> {
    if truncation < 1 {
        return Err(CdglError::ZeroTruncation);
    }
    if generators.len() > MAX_GENERATORS {
        return Err(CdglError::TooManyGenerators(generators.len(), MAX_GENERATORS));
    }
    generators.sort_by_key(|g| g.id);
    for w in generators.windows(2) {
        if w[0].id == w[1].id {
            return Err(CdglError::DuplicateGenerator(w[0].id));
        }
    }
    let mut by_label = BTreeMap::new();
    for (i, g) in generators.iter().enumerate() {
        if by_label.insert(g.label.clone(), i as u16).is_some() {
            return Err(CdglError::DuplicateLabel(g.label.clone()));
        }
    }
    Ok(Arc::new(AlgebraContext { generators, truncation, by_label }))
}

impl AlgebraContext {
    pub fn truncation(&self) -> usize {
        self.truncation
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn generator(&self, letter: u16) -> &Generator {
        &self.generators[letter as usize]
    }

    pub fn degree(&self, letter: u16) -> i32 {
        self.generators[letter as usize].degree
    }

    pub fn label(&self, letter: u16) -> &str {
        &self.generators[letter as usize].label
    }

    pub fn letter(&self, label: &str) -> Option<u16> {
        self.by_label.get(label).copied()
    }

    pub fn letter_of_id(&self, id: u32) -> Option<u16> {
        self.generators.binary_search_by_key(&id, |g| g.id).ok().map(|i| i as u16)
    }

    /// Same alphabet, different truncation order.
    pub fn with_truncation(&self, truncation: usize) -> Result<Context> {
        make_algebra(self.generators.clone(), truncation)
    }
}
