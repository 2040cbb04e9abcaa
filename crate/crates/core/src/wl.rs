//! The two-dimensional Weisfeiler-Leman refinement.
//!
//! One step recolors every pair `(v1, v2)` by its old color together with,
//! for each pair of colors `(c1, c2)`, the number of `w` with
//! `c(v1, w) = c1` and `c(w, v2) = c2`. Signatures are kept sparse (only
//! nonzero counts) and renumbered densely in lexicographic order, so only
//! the partition of `Γ²` is carried forward and ids are canonical.

use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::config::{Configuration, Lineage};
use crate::error::{Error, Result};

/// Old color followed by the sorted list of `((c1 << 32) | c2, count)`.
type Signature = (u32, Vec<(u64, u32)>);

const ROW_CHUNK: usize = 16;

/// Performs one refinement step. The returned flag is `true` iff the new
/// partition strictly refines the old one.
pub fn wl_step(config: &Configuration) -> Result<(Configuration, bool)> {
    config
        .check()
        .map_err(|v| Error::InvalidConfiguration(v.to_string()))?;
    let m = config.vertex_count();
    let cells = config.cells();
    let mut transposed = vec![0u32; m * m];
    for v in 0..m {
        for w in 0..m {
            transposed[w * m + v] = cells[v * m + w];
        }
    }

    // Signatures are computed in parallel per block of rows and interned
    // sequentially; final ids only depend on the sorted set of signatures.
    let mut interned: HashMap<Signature, u32> = HashMap::new();
    let mut keys: Vec<Signature> = Vec::new();
    let mut provisional = vec![0u32; m * m];
    for (block, out) in provisional.chunks_mut(ROW_CHUNK * m.max(1)).enumerate() {
        let first_row = block * ROW_CHUNK;
        let rows = out.len() / m.max(1);
        let sigs: Vec<Signature> = (first_row..first_row + rows)
            .into_par_iter()
            .flat_map_iter(|v1| {
                let row = &cells[v1 * m..(v1 + 1) * m];
                let transposed = &transposed;
                let mut buf = Vec::with_capacity(m);
                (0..m).map(move |v2| {
                    let col = &transposed[v2 * m..(v2 + 1) * m];
                    buf.clear();
                    buf.extend(row.iter().zip(col).map(|(&a, &b)| ((a as u64) << 32) | b as u64));
                    buf.sort_unstable();
                    let mut counts: Vec<(u64, u32)> = Vec::new();
                    for &key in &buf {
                        match counts.last_mut() {
                            Some((k, n)) if *k == key => *n += 1,
                            _ => counts.push((key, 1)),
                        }
                    }
                    (row[v2], counts)
                })
            })
            .collect();
        for (slot, sig) in out.iter_mut().zip(sigs) {
            let next = keys.len() as u32;
            *slot = *interned.entry(sig).or_insert_with_key(|k| {
                keys.push(k.clone());
                next
            });
        }
    }
    drop(interned);

    let mut order: Vec<u32> = (0..keys.len() as u32).collect();
    order.sort_unstable_by(|&a, &b| keys[a as usize].cmp(&keys[b as usize]));
    let mut rank = vec![0u32; keys.len()];
    for (new_id, &tmp) in order.iter().enumerate() {
        rank[tmp as usize] = new_id as u32;
    }
    let new_cells: Vec<u32> = provisional.iter().map(|&t| rank[t as usize]).collect();

    let table = config.table();
    let lineage = order
        .iter()
        .map(|&tmp| {
            let parent = keys[tmp as usize].0;
            let info = table.get(parent);
            Lineage {
                origin: info.origin.clone(),
                empty_lineage: info.empty_lineage,
                parent: Some(parent),
            }
        })
        .collect::<Vec<_>>();
    let refined = lineage.len() > config.color_count();
    let next = Configuration::from_cells(m, new_cells, lineage, config.iteration() + 1)?;
    Ok((next, refined))
}

/// Options for [`wl_run`].
#[derive(Clone, Copy, Debug)]
pub struct WlOptions {
    /// Maximum number of steps; defaults to `m²`.
    pub max_iter: Option<usize>,
    /// Keep every intermediate snapshot. When off, only the initial and final
    /// configurations are retained.
    pub keep_history: bool,
}

impl Default for WlOptions {
    fn default() -> Self {
        Self {
            max_iter: None,
            keep_history: true,
        }
    }
}

/// Result of running the refinement to its fixpoint.
#[derive(Clone, Debug)]
pub struct WlTrace {
    snapshots: Vec<Configuration>,
    retained_all: bool,
    class_counts: Vec<usize>,
    wl_count: usize,
}

/// Summary of a trace suitable for reports.
#[derive(Clone, Debug, Serialize)]
pub struct TraceSummary {
    pub wl_count: usize,
    pub class_counts: Vec<usize>,
}

/// Iterates [`wl_step`] until a step no longer refines the partition.
///
/// Snapshot `h` is the configuration after `h` refining steps; the final
/// non-refining step is not stored, so there are `wl_count + 1` snapshots.
pub fn wl_run(config: &Configuration, opts: WlOptions) -> Result<WlTrace> {
    let m = config.vertex_count();
    let max_iter = opts.max_iter.unwrap_or((m * m).max(1));
    let mut snapshots = vec![config.clone()];
    let mut class_counts = vec![config.color_count()];
    let mut current = config.clone();
    let mut wl_count = 0;
    loop {
        let (next, refined) = wl_step(&current)?;
        class_counts.push(next.color_count());
        if !refined {
            break;
        }
        wl_count += 1;
        if wl_count > max_iter {
            return Err(Error::IterationCapExceeded(max_iter));
        }
        if opts.keep_history {
            snapshots.push(next.clone());
        }
        current = next;
    }
    if !opts.keep_history && wl_count > 0 {
        snapshots.push(current);
    }
    Ok(WlTrace {
        snapshots,
        retained_all: opts.keep_history,
        class_counts,
        wl_count,
    })
}

impl WlTrace {
    /// Number of steps that strictly refined the partition.
    pub fn wl_count(&self) -> usize {
        self.wl_count
    }

    /// Class counts per iteration `0..=wl_count`, followed by the count after
    /// the final non-refining step (equal to the one before it).
    pub fn class_counts(&self) -> &[usize] {
        &self.class_counts
    }

    pub fn initial(&self) -> &Configuration {
        &self.snapshots[0]
    }

    pub fn last(&self) -> &Configuration {
        self.snapshots.last().expect("at least one snapshot")
    }

    pub fn vertex_count(&self) -> usize {
        self.initial().vertex_count()
    }

    /// Configuration after `h` refining steps.
    pub fn snapshot(&self, h: usize) -> Result<&Configuration> {
        if h > self.wl_count {
            return Err(Error::OutOfRange(format!(
                "iteration {h} (trace has {} refining steps)",
                self.wl_count
            )));
        }
        if self.retained_all {
            Ok(&self.snapshots[h])
        } else if h == 0 {
            Ok(self.initial())
        } else if h == self.wl_count {
            Ok(self.last())
        } else {
            Err(Error::SnapshotDropped(h))
        }
    }

    /// Retained snapshots with their iteration index.
    pub fn snapshots(&self) -> impl Iterator<Item = (usize, &Configuration)> {
        self.snapshots.iter().map(|c| (c.iteration(), c))
    }

    pub fn summary(&self) -> TraceSummary {
        TraceSummary {
            wl_count: self.wl_count,
            class_counts: self.class_counts.clone(),
        }
    }
}

/// Color of `(v1, v2)` after `h` refining steps.
pub fn color_at(trace: &WlTrace, h: usize, v1: usize, v2: usize) -> Result<u32> {
    let config = trace.snapshot(h)?;
    let m = config.vertex_count();
    if v1 >= m || v2 >= m {
        return Err(Error::OutOfRange(format!("pair ({v1}, {v2}) for {m} vertices")));
    }
    Ok(config.color(v1, v2))
}

/// Whether two colorings induce the same partition of `Γ²`, i.e. color ids
/// correspond bijectively on every cell.
pub fn partition_equal(a: &Configuration, b: &Configuration) -> Result<bool> {
    if a.vertex_count() != b.vertex_count() {
        return Err(Error::SizeMismatch(a.vertex_count(), b.vertex_count()));
    }
    Ok(cells_partition_equal(a.cells(), b.cells()))
}

/// Whether the partition induced by `fine` refines the one induced by
/// `coarse`.
pub fn refines(fine: &Configuration, coarse: &Configuration) -> Result<bool> {
    if fine.vertex_count() != coarse.vertex_count() {
        return Err(Error::SizeMismatch(fine.vertex_count(), coarse.vertex_count()));
    }
    let mut image: HashMap<u32, u32> = HashMap::new();
    Ok(fine
        .cells()
        .iter()
        .zip(coarse.cells())
        .all(|(&f, &c)| *image.entry(f).or_insert(c) == c))
}

pub(crate) fn cells_partition_equal(a: &[u32], b: &[u32]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut forward: HashMap<u32, u32> = HashMap::new();
    let mut backward: HashMap<u32, u32> = HashMap::new();
    a.iter().zip(b).all(|(&x, &y)| {
        *forward.entry(x).or_insert(y) == y && *backward.entry(y).or_insert(x) == x
    })
}
