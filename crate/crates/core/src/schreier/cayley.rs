use std::collections::{HashMap, VecDeque};

use crate::algebra::{genset_validate, ActionSpec, Permutation, ValidatedAction, IDENTITY_LABEL};
use crate::config::{Configuration, Lineage, EMPTY_ORIGIN};
use crate::error::{Error, Result};

/// A finite permutation group materialized by BFS closure of its generators.
///
/// Element 0 is the identity; elements are listed in BFS order from it,
/// expanding generators in label order. The Cayley graph has arcs
/// `g → s∘g`.
#[derive(Clone, Debug)]
pub struct CayleyGroup {
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
    /// Generator labels and the element each one denotes.
    generators: Vec<(String, usize)>,
    origin: String,
}

impl CayleyGroup {
    /// Closes the generators of `action` under composition. Fails with
    /// [`Error::GroupTooLarge`] once more than `cap` elements are found.
    pub fn close(action: &ValidatedAction, cap: usize) -> Result<Self> {
        let id = Permutation::identity(action.points());
        let mut elements = vec![id.clone()];
        let mut index = HashMap::from([(id, 0usize)]);
        let mut queue = VecDeque::from([0usize]);
        while let Some(gi) = queue.pop_front() {
            for s in action.generators() {
                let h = s.compose(&elements[gi]);
                if !index.contains_key(&h) {
                    if elements.len() >= cap {
                        return Err(Error::GroupTooLarge { cap });
                    }
                    index.insert(h.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(h);
                }
            }
        }
        let generators = action
            .labels()
            .iter()
            .zip(action.generators())
            .map(|(l, p)| (l.clone(), index[p]))
            .collect();
        Ok(Self {
            elements,
            index,
            generators,
            origin: action.spec().origin.clone(),
        })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn element(&self, i: usize) -> &Permutation {
        &self.elements[i]
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn generators(&self) -> &[(String, usize)] {
        &self.generators
    }

    /// Index of `a ∘ b`.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.index[&self.elements[a].compose(&self.elements[b])]
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.index[&self.elements[a].inverse()]
    }

    /// Word-length distances from the identity in `Cay(G, S)`.
    pub fn distances_from_identity(&self) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.order()];
        dist[0] = 0;
        let mut queue = VecDeque::from([0usize]);
        while let Some(g) = queue.pop_front() {
            for &(_, s) in &self.generators {
                let h = self.mul(s, g);
                if dist[h] == usize::MAX {
                    dist[h] = dist[g] + 1;
                    queue.push_back(h);
                }
            }
        }
        dist
    }

    /// The ball `S^r` of radius `r` around the identity, in element order.
    pub fn ball(&self, r: usize) -> Vec<usize> {
        self.distances_from_identity()
            .iter()
            .enumerate()
            .filter(|(_, &d)| d <= r)
            .map(|(i, _)| i)
            .collect()
    }

    /// The regular action `g ↦ s∘g` on element indices, with the same labels.
    pub fn regular_action(&self) -> ValidatedAction {
        let n = self.order();
        let mut spec = ActionSpec::new(n, format!("regular action of <{}>", self.origin));
        for (label, s) in &self.generators {
            let images = (0..n).map(|g| self.mul(*s, g) as u32).collect();
            spec = spec.with_generator(label.clone(), Permutation::new(images).expect("bijection"));
        }
        genset_validate(spec).expect("regular action of a generated group is valid")
    }

    /// Right multiplication `g ↦ g∘h` as a permutation of element indices.
    pub fn right_multiplication(&self, h: usize) -> Permutation {
        let images = (0..self.order()).map(|g| self.mul(g, h) as u32).collect();
        Permutation::new(images).expect("right multiplication is a bijection")
    }

    /// Configuration on `G` coloring `(g1, g2)` by the ratio `g2∘g1⁻¹` when it
    /// is one of `members`, and by `∅` otherwise. Colors are numbered `∅`
    /// first (when present), then `members` in the given order.
    pub fn ratio_config(&self, members: &[(String, usize)]) -> Configuration {
        let n = self.order();
        let mut member_color: HashMap<usize, u32> = HashMap::new();
        let any_missing = members.len() < n;
        let offset = u32::from(any_missing);
        for (i, (_, g)) in members.iter().enumerate() {
            member_color.insert(*g, i as u32 + offset);
        }
        let inverses: Vec<Permutation> = self.elements.iter().map(|g| g.inverse()).collect();
        let mut cells = vec![0u32; n * n];
        for g1 in 0..n {
            for g2 in 0..n {
                let ratio = self.index[&self.elements[g2].compose(&inverses[g1])];
                cells[g1 * n + g2] = member_color.get(&ratio).copied().unwrap_or(0);
            }
        }
        let mut lineage = Vec::with_capacity(members.len() + 1);
        if any_missing {
            lineage.push(Lineage {
                origin: EMPTY_ORIGIN.to_string(),
                empty_lineage: true,
                parent: None,
            });
        }
        lineage.extend(members.iter().map(|(label, _)| Lineage {
            origin: label.clone(),
            empty_lineage: false,
            parent: None,
        }));
        Configuration::from_cells(n, cells, lineage, 0)
            .expect("ratio colorings satisfy conditions (i) and (ii)")
    }

    /// The configuration `X_C` of `Cay(G, S)`. Generator labels denoting the
    /// same element share one color, labelled by joining them with `=`.
    pub fn configuration(&self) -> Configuration {
        let mut by_element: Vec<(usize, Vec<&str>)> = Vec::new();
        for (label, g) in &self.generators {
            match by_element.iter_mut().find(|(e, _)| e == g) {
                Some((_, labels)) => labels.push(label),
                None => by_element.push((*g, vec![label])),
            }
        }
        let members: Vec<(String, usize)> = by_element
            .into_iter()
            .map(|(g, labels)| (labels.join("="), g))
            .collect();
        self.ratio_config(&members)
    }

    /// The configuration of `Cay(G, S^r)`; ball elements are labelled by
    /// index, the identity by `e`.
    pub fn ball_config(&self, r: usize) -> Configuration {
        let members: Vec<(String, usize)> = self
            .ball(r)
            .into_iter()
            .map(|g| {
                let label = if g == 0 { IDENTITY_LABEL.to_string() } else { format!("g{g}") };
                (label, g)
            })
            .collect();
        self.ratio_config(&members)
    }
}

/// Builds `X_C` for the group generated by a validated generator set.
pub fn cayley_config(action: &ValidatedAction, cap: usize) -> Result<Configuration> {
    Ok(CayleyGroup::close(action, cap)?.configuration())
}
