use std::collections::{BTreeMap, VecDeque};

use serde::Serialize;

use crate::algebra::Permutation;
use crate::error::{Error, Result};

/// Reserved label of the identity generator.
pub const IDENTITY_LABEL: &str = "e";

/// A finite point set with named generator permutations.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ActionSpec {
    pub points: usize,
    pub generators: BTreeMap<String, Permutation>,
    /// Human-readable description of where the action comes from.
    pub origin: String,
    /// Caveats attached by builders (e.g. inapplicable theorem hypotheses).
    pub notes: Vec<String>,
    /// Optional external labels for points, e.g. 1-indexed names.
    pub point_labels: Option<Vec<String>>,
}

impl ActionSpec {
    pub fn new(points: usize, origin: impl Into<String>) -> Self {
        Self {
            points,
            generators: BTreeMap::new(),
            origin: origin.into(),
            notes: Vec::new(),
            point_labels: None,
        }
    }

    pub fn with_identity(mut self) -> Self {
        self.generators
            .insert(IDENTITY_LABEL.to_string(), Permutation::identity(self.points));
        self
    }

    pub fn with_generator(mut self, label: impl Into<String>, perm: Permutation) -> Self {
        self.generators.insert(label.into(), perm);
        self
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }
}

/// An [`ActionSpec`] that contains the identity, is closed under inverses and
/// acts transitively. Generators are indexed in label order.
#[derive(Clone, Debug)]
pub struct ValidatedAction {
    spec: ActionSpec,
    labels: Vec<String>,
    perms: Vec<Permutation>,
    inverse: Vec<usize>,
    identity: usize,
}

/// Checks identity membership, inverse closure and transitivity.
pub fn genset_validate(spec: ActionSpec) -> Result<ValidatedAction> {
    for (label, p) in &spec.generators {
        if p.degree() != spec.points {
            return Err(Error::DegreeMismatch {
                label: label.clone(),
                expected: spec.points,
                got: p.degree(),
            });
        }
    }
    let labels: Vec<String> = spec.generators.keys().cloned().collect();
    let perms: Vec<Permutation> = spec.generators.values().cloned().collect();

    let identity = labels
        .iter()
        .position(|l| l == IDENTITY_LABEL)
        .filter(|&i| perms[i].is_identity())
        .ok_or(Error::MissingIdentity)?;

    let mut inverse = Vec::with_capacity(perms.len());
    for (i, p) in perms.iter().enumerate() {
        let inv = p.inverse();
        let j = if perms[i] == inv {
            Some(i)
        } else {
            perms.iter().position(|r| *r == inv)
        };
        inverse.push(j.ok_or_else(|| Error::NotInverseClosed(labels[i].clone()))?);
    }

    if spec.points == 0 {
        return Err(Error::OutOfRange("action on zero points".into()));
    }
    let mut seen = vec![false; spec.points];
    let mut queue = VecDeque::from([0usize]);
    seen[0] = true;
    while let Some(v) = queue.pop_front() {
        for p in &perms {
            let w = p.apply(v);
            if !seen[w] {
                seen[w] = true;
                queue.push_back(w);
            }
        }
    }
    if let Some(unreached) = seen.iter().position(|&s| !s) {
        return Err(Error::NotTransitive(unreached));
    }

    Ok(ValidatedAction {
        spec,
        labels,
        perms,
        inverse,
        identity,
    })
}

impl ValidatedAction {
    pub fn spec(&self) -> &ActionSpec {
        &self.spec
    }

    pub fn points(&self) -> usize {
        self.spec.points
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.perms
    }

    /// Index of the generator inverse to generator `i`.
    pub fn inverse_of(&self, i: usize) -> usize {
        self.inverse[i]
    }

    pub fn inverse_label(&self, label: &str) -> Option<&str> {
        let i = self.labels.iter().position(|l| l == label)?;
        Some(&self.labels[self.inverse[i]])
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn generator(&self, label: &str) -> Option<&Permutation> {
        self.spec.generators.get(label)
    }
}
