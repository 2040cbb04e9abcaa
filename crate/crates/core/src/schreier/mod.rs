//! Configurations built from Schreier and Cayley graphs, and the standard
//! example actions.

mod builders;
mod cayley;

pub use builders::{
    cycle_cayley, heptagon_pair, sl_tuples, sym_adjacent, sym_cayley, GeneratorChoice,
    SlInstance, HEPTAGON_INDEX_NOTE, Q2_NOTE,
};
pub use cayley::{cayley_config, CayleyGroup};

use std::collections::BTreeMap;

use crate::algebra::ValidatedAction;
use crate::config::{Configuration, Lineage, EMPTY_ORIGIN};

/// The configuration `X_S` of `Sch(V, S)`: the pair `(v1, v2)` is colored by
/// the set of generators sending `v1` to `v2`.
///
/// Color ids follow the lexicographic order of generator-index sets
/// (generators sorted by label), so `∅` is color 0 whenever it occurs.
pub fn schreier_config(action: &ValidatedAction) -> Configuration {
    let m = action.points();
    let mut subsets: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (gi, g) in action.generators().iter().enumerate() {
        for v in 0..m {
            subsets.entry((v, g.apply(v))).or_default().push(gi);
        }
    }
    let has_empty = subsets.len() < m * m;

    let mut distinct: Vec<&Vec<usize>> = subsets.values().collect();
    distinct.sort();
    distinct.dedup();
    let offset = usize::from(has_empty);
    let ids: BTreeMap<&Vec<usize>, u32> = distinct
        .iter()
        .enumerate()
        .map(|(i, s)| (*s, (i + offset) as u32))
        .collect();

    let mut cells = vec![0u32; m * m];
    for ((v, w), s) in &subsets {
        cells[v * m + w] = ids[s];
    }

    let mut lineage = Vec::with_capacity(distinct.len() + offset);
    if has_empty {
        lineage.push(Lineage {
            origin: EMPTY_ORIGIN.to_string(),
            empty_lineage: true,
            parent: None,
        });
    }
    for s in &distinct {
        let names: Vec<&str> = s.iter().map(|&i| action.labels()[i].as_str()).collect();
        lineage.push(Lineage {
            origin: format!("{{{}}}", names.join(",")),
            empty_lineage: false,
            parent: None,
        });
    }
    Configuration::from_cells(m, cells, lineage, 0)
        .expect("Schreier colorings satisfy conditions (i) and (ii)")
}
