//! Structural queries on configurations: nonempty colors and the graph
//! `Γ_X`, distances, coherence certificates, walk constants and automorphism
//! checks.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::algebra::{Permutation, ValidatedAction};
use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::wl::WlTrace;

pub use crate::config::{check_configuration, ConfigViolation};

/// Edge colors `c` such that every vertex has at most one `w` with
/// `c(v, w) = c`.
pub fn nonempty_colors(config: &Configuration) -> BTreeSet<u32> {
    let m = config.vertex_count();
    let n = config.color_count();
    let mut violated = vec![false; n];
    let mut last_row = vec![usize::MAX; n];
    for v in 0..m {
        for &c in config.row(v) {
            let c = c as usize;
            if last_row[c] == v {
                violated[c] = true;
            }
            last_row[c] = v;
        }
    }
    config
        .table()
        .iter()
        .filter(|(c, info)| !info.is_vertex && !violated[*c as usize])
        .map(|(c, _)| c)
        .collect()
}

/// Edge colors that are not nonempty.
pub fn empty_colors(config: &Configuration) -> BTreeSet<u32> {
    let nonempty = nonempty_colors(config);
    config
        .table()
        .iter()
        .filter(|(c, info)| !info.is_vertex && !nonempty.contains(c))
        .map(|(c, _)| c)
        .collect()
}

/// A directed graph on `0..m` with colored arcs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaGraph {
    m: usize,
    out: Vec<Vec<(usize, u32)>>,
}

impl GammaGraph {
    fn from_arcs(config: &Configuration, keep: impl Fn(u32) -> bool) -> Self {
        let m = config.vertex_count();
        let out = (0..m)
            .map(|v| {
                config
                    .row(v)
                    .iter()
                    .enumerate()
                    .filter(|&(w, &c)| w != v && keep(c))
                    .map(|(w, &c)| (w, c))
                    .collect()
            })
            .collect();
        Self { m, out }
    }

    pub fn vertex_count(&self) -> usize {
        self.m
    }

    pub fn arcs(&self) -> impl Iterator<Item = (usize, usize, u32)> + '_ {
        self.out
            .iter()
            .enumerate()
            .flat_map(|(v, ws)| ws.iter().map(move |&(w, c)| (v, w, c)))
    }

    pub fn arc_count(&self) -> usize {
        self.out.iter().map(Vec::len).sum()
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.out[v].iter().map(|&(w, _)| w)
    }

    pub fn distances(&self) -> DistanceTable {
        let m = self.m;
        let dist: Vec<Vec<u32>> = (0..m)
            .into_par_iter()
            .map(|s| {
                let mut d = vec![u32::MAX; m];
                d[s] = 0;
                let mut queue = VecDeque::from([s]);
                while let Some(v) = queue.pop_front() {
                    for w in self.neighbors(v) {
                        if d[w] == u32::MAX {
                            d[w] = d[v] + 1;
                            queue.push_back(w);
                        }
                    }
                }
                d
            })
            .collect();
        DistanceTable {
            m,
            dist: dist.concat(),
        }
    }
}

/// The graph `Γ_X` of pairs with a nonempty color.
pub fn gamma_graph(config: &Configuration) -> GammaGraph {
    let nonempty = nonempty_colors(config);
    GammaGraph::from_arcs(config, |c| nonempty.contains(&c))
}

/// The graph of pairs whose color does not descend from `∅`. On a freshly
/// built Schreier or Cayley configuration this is the generator graph.
pub fn generator_graph(config: &Configuration) -> GammaGraph {
    let table = config.table();
    GammaGraph::from_arcs(config, |c| !table.get(c).empty_lineage)
}

/// Distances in `Sch(V, S)` itself.
pub fn schreier_distances(action: &ValidatedAction) -> DistanceTable {
    let m = action.points();
    let out = (0..m)
        .map(|v| {
            let mut ws: Vec<(usize, u32)> = action
                .generators()
                .iter()
                .map(|g| (g.apply(v), 0))
                .filter(|&(w, _)| w != v)
                .collect();
            ws.sort_unstable();
            ws.dedup();
            ws
        })
        .collect();
    GammaGraph { m, out }.distances()
}

/// All-pairs BFS distances; `u32::MAX` marks unreachable pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistanceTable {
    m: usize,
    dist: Vec<u32>,
}

impl DistanceTable {
    pub fn vertex_count(&self) -> usize {
        self.m
    }

    pub fn get(&self, v: usize, w: usize) -> Option<usize> {
        let d = self.dist[v * self.m + w];
        (d != u32::MAX).then_some(d as usize)
    }

    fn first_unreachable(&self) -> Option<(usize, usize)> {
        self.dist
            .iter()
            .position(|&d| d == u32::MAX)
            .map(|i| (i / self.m, i % self.m))
    }

    /// Largest distance; fails if some pair is unreachable.
    pub fn diameter(&self) -> Result<usize> {
        if let Some((from, to)) = self.first_unreachable() {
            return Err(Error::Disconnected { from, to });
        }
        Ok(self.dist.iter().copied().max().unwrap_or(0) as usize)
    }

    /// Vertices at distance equal to the diameter from `v`.
    pub fn antipodes(&self, v: usize) -> Result<Vec<usize>> {
        let diam = self.diameter()? as u32;
        Ok((0..self.m)
            .filter(|&w| self.dist[v * self.m + w] == diam)
            .collect())
    }

    /// Whether every vertex has exactly one vertex at maximal distance.
    pub fn antipode_unique(&self) -> Result<bool> {
        let diam = self.diameter()? as u32;
        Ok((0..self.m).all(|v| {
            self.dist[v * self.m..(v + 1) * self.m]
                .iter()
                .filter(|&&d| d == diam)
                .count()
                == 1
        }))
    }

    /// Number of vertices at maximal distance, per vertex.
    pub fn antipode_counts(&self) -> Result<Vec<usize>> {
        let diam = self.diameter()? as u32;
        Ok((0..self.m)
            .map(|v| {
                self.dist[v * self.m..(v + 1) * self.m]
                    .iter()
                    .filter(|&&d| d == diam)
                    .count()
            })
            .collect())
    }
}

/// Diameter of `Γ_X`.
pub fn diameter(g: &GammaGraph) -> Result<usize> {
    g.distances().diameter()
}

pub fn antipode_unique(g: &GammaGraph) -> Result<bool> {
    g.distances().antipode_unique()
}

/// Triple-count constants `γ(c0, c1, c2)` of a coherent configuration.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoherenceCertificate {
    /// `(c0, c1) → [(c2, γ)]`, nonzero entries only, sorted by `c2`.
    gamma: BTreeMap<(u32, u32), Vec<(u32, u64)>>,
    colors: usize,
}

/// Two pairs of color `c0` with different counts for `(c1, c2)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoherenceViolation {
    pub c0: u32,
    pub c1: u32,
    pub c2: u32,
    pub pair_a: (usize, usize),
    pub pair_b: (usize, usize),
    pub count_a: u64,
    pub count_b: u64,
}

/// Sorted `(c1, c2)` keys over all `w`, for the pair `(v1, v2)`.
fn triple_counts(config: &Configuration, v1: usize, v2: usize) -> Vec<((u32, u32), u64)> {
    let m = config.vertex_count();
    let mut keys: Vec<(u32, u32)> = (0..m)
        .map(|w| (config.color(v1, w), config.color(w, v2)))
        .collect();
    keys.sort_unstable();
    let mut out: Vec<((u32, u32), u64)> = Vec::new();
    for k in keys {
        match out.last_mut() {
            Some((last, n)) if *last == k => *n += 1,
            _ => out.push((k, 1)),
        }
    }
    out
}

fn first_difference(
    a: &[((u32, u32), u64)],
    b: &[((u32, u32), u64)],
) -> Option<((u32, u32), u64, u64)> {
    let (mut i, mut j) = (0, 0);
    loop {
        match (a.get(i), b.get(j)) {
            (None, None) => return None,
            (Some(&(k, n)), None) => return Some((k, n, 0)),
            (None, Some(&(k, n))) => return Some((k, 0, n)),
            (Some(&(ka, na)), Some(&(kb, nb))) => {
                if ka == kb {
                    if na != nb {
                        return Some((ka, na, nb));
                    }
                    i += 1;
                    j += 1;
                } else if ka < kb {
                    return Some((ka, na, 0));
                } else {
                    return Some((kb, 0, nb));
                }
            }
        }
    }
}

/// Exhaustively verifies condition (iii): for every pair of color `c0` the
/// triple counts agree with those of the first pair of that color.
pub fn check_coherent(config: &Configuration) -> std::result::Result<CoherenceCertificate, CoherenceViolation> {
    let m = config.vertex_count();
    let mut reps: Vec<Option<(usize, usize)>> = vec![None; config.color_count()];
    for v1 in 0..m {
        for v2 in 0..m {
            let c = config.color(v1, v2) as usize;
            if reps[c].is_none() {
                reps[c] = Some((v1, v2));
            }
        }
    }
    let rep_counts: Vec<Vec<((u32, u32), u64)>> = reps
        .par_iter()
        .map(|r| {
            let (v1, v2) = r.expect("dense color ids");
            triple_counts(config, v1, v2)
        })
        .collect();

    let violation = (0..m).into_par_iter().find_map_first(|v1| {
        (0..m).find_map(|v2| {
            let c0 = config.color(v1, v2);
            let rep = reps[c0 as usize].expect("dense color ids");
            if rep == (v1, v2) {
                return None;
            }
            let counts = triple_counts(config, v1, v2);
            first_difference(&rep_counts[c0 as usize], &counts).map(|((c1, c2), a, b)| {
                CoherenceViolation {
                    c0,
                    c1,
                    c2,
                    pair_a: rep,
                    pair_b: (v1, v2),
                    count_a: a,
                    count_b: b,
                }
            })
        })
    });
    if let Some(v) = violation {
        return Err(v);
    }

    let mut gamma: BTreeMap<(u32, u32), Vec<(u32, u64)>> = BTreeMap::new();
    for (c0, counts) in rep_counts.iter().enumerate() {
        for &((c1, c2), n) in counts {
            gamma.entry((c0 as u32, c1)).or_default().push((c2, n));
        }
    }
    Ok(CoherenceCertificate {
        gamma,
        colors: config.color_count(),
    })
}

impl CoherenceCertificate {
    pub fn color_count(&self) -> usize {
        self.colors
    }

    pub fn gamma(&self, c0: u32, c1: u32, c2: u32) -> u64 {
        self.gamma
            .get(&(c0, c1))
            .and_then(|row| row.binary_search_by_key(&c2, |&(c, _)| c).ok().map(|i| row[i].1))
            .unwrap_or(0)
    }

    /// All nonzero `(c0, c1, c2, γ)` in lexicographic order.
    pub fn triples(&self) -> impl Iterator<Item = (u32, u32, u32, u64)> + '_ {
        self.gamma
            .iter()
            .flat_map(|(&(c0, c1), row)| row.iter().map(move |&(c2, n)| (c0, c1, c2, n)))
    }

    pub fn triple_count(&self) -> usize {
        self.gamma.values().map(Vec::len).sum()
    }

    /// SHA-256 over the sorted nonzero triples, hex encoded.
    pub fn digest(&self) -> String {
        let mut h = Sha256::new();
        h.update((self.colors as u64).to_le_bytes());
        for (c0, c1, c2, n) in self.triples() {
            h.update(c0.to_le_bytes());
            h.update(c1.to_le_bytes());
            h.update(c2.to_le_bytes());
            h.update(n.to_le_bytes());
        }
        h.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }

    /// One step of the walk recurrence: given counts indexed by the color of
    /// the pair closing the walk so far, extend by the color `next`.
    fn extend(&self, current: &BTreeMap<u32, u64>, next: u32) -> BTreeMap<u32, u64> {
        let mut out = BTreeMap::new();
        for (&c, &n) in current {
            if let Some(row) = self.gamma.get(&(c, next)) {
                for &(c2, g) in row {
                    *out.entry(c2).or_insert(0) += n * g;
                }
            }
        }
        out
    }

    /// The walk constant `γ(c0, c1, ..., ck)` by the recurrence
    /// `γ(c0, c1..c_{j}, c_{j+1}) = Σ_{c'} γ(c0, c1..c_{j-1}, c') γ(c', c_j, c_{j+1})`.
    pub fn walk_constant(&self, base: u32, seq: &[u32]) -> u64 {
        let Some((&last, inner)) = seq.split_last() else {
            return 0;
        };
        let mut current = BTreeMap::from([(base, 1u64)]);
        for &c in inner {
            current = self.extend(&current, c);
            if current.is_empty() {
                return 0;
            }
        }
        current.get(&last).copied().unwrap_or(0)
    }

    /// Every nonzero walk constant with sequences of length exactly `k ≥ 1`,
    /// keyed by `(c0, [c1..ck])`.
    pub fn all_walk_constants(&self, k: usize) -> BTreeMap<(u32, Vec<u32>), u64> {
        assert!(k >= 1, "walk sequences are nonempty");
        let mut out = BTreeMap::new();
        let mut inner_colors: BTreeMap<u32, BTreeSet<u32>> = BTreeMap::new();
        for &(c, c1) in self.gamma.keys() {
            inner_colors.entry(c).or_default().insert(c1);
        }
        for base in 0..self.colors as u32 {
            let start = BTreeMap::from([(base, 1u64)]);
            let mut prefix = Vec::with_capacity(k);
            self.walk_dfs(base, &start, k, &inner_colors, &mut prefix, &mut out);
        }
        out
    }

    fn walk_dfs(
        &self,
        base: u32,
        current: &BTreeMap<u32, u64>,
        k: usize,
        inner_colors: &BTreeMap<u32, BTreeSet<u32>>,
        prefix: &mut Vec<u32>,
        out: &mut BTreeMap<(u32, Vec<u32>), u64>,
    ) {
        if prefix.len() == k - 1 {
            for (&last, &n) in current {
                let mut seq = prefix.clone();
                seq.push(last);
                out.insert((base, seq), n);
            }
            return;
        }
        let candidates: BTreeSet<u32> = current
            .keys()
            .filter_map(|c| inner_colors.get(c))
            .flatten()
            .copied()
            .collect();
        for c in candidates {
            let next = self.extend(current, c);
            if next.is_empty() {
                continue;
            }
            prefix.push(c);
            self.walk_dfs(base, &next, k, inner_colors, prefix, out);
            prefix.pop();
        }
    }
}

/// Number of walks `v1 = w0, w1, ..., w_{k-1}, w_k = v2` with
/// `c(w_{i-1}, w_i) = seq[i-1]`, counted directly on the color matrix.
pub fn walk_count_direct(config: &Configuration, v1: usize, v2: usize, seq: &[u32]) -> u64 {
    let m = config.vertex_count();
    let Some((&last, inner)) = seq.split_last() else {
        return 0;
    };
    let mut current = vec![0u64; m];
    current[v1] = 1;
    for &c in inner {
        let mut next = vec![0u64; m];
        for (x, &n) in current.iter().enumerate() {
            if n == 0 {
                continue;
            }
            for (y, &cy) in config.row(x).iter().enumerate() {
                if cy == c {
                    next[y] += n;
                }
            }
        }
        current = next;
    }
    (0..m)
        .filter(|&x| config.color(x, v2) == last)
        .map(|x| current[x])
        .sum()
}

/// Walk constant for base color `base` and color sequence `seq` (length at
/// least 2) on a coherent configuration, computed by the recurrence and
/// checked against a direct count from the first pair of color `base`.
pub fn walk_constants(config: &Configuration, base: u32, seq: &[u32]) -> Result<u64> {
    if seq.len() < 2 {
        return Err(Error::OutOfRange(format!("walk sequence of length {}", seq.len())));
    }
    if base as usize >= config.color_count() {
        return Err(Error::NoPairOfColor(base));
    }
    let cert = check_coherent(config).map_err(|_| Error::NotCoherent)?;
    let m = config.vertex_count();
    let (v1, v2) = (0..m * m)
        .map(|i| (i / m, i % m))
        .find(|&(a, b)| config.color(a, b) == base)
        .ok_or(Error::NoPairOfColor(base))?;
    let recurrence = cert.walk_constant(base, seq);
    let direct = walk_count_direct(config, v1, v2, seq);
    if recurrence != direct {
        return Err(Error::WalkMismatch {
            base,
            recurrence,
            direct,
        });
    }
    Ok(recurrence)
}

/// First cell whose color `phi` does not preserve, if any.
pub fn automorphism_violation(config: &Configuration, phi: &Permutation) -> Option<(usize, usize)> {
    let m = config.vertex_count();
    (0..m).into_par_iter().find_map_first(|v1| {
        let p1 = phi.apply(v1);
        (0..m)
            .find(|&v2| config.color(v1, v2) != config.color(p1, phi.apply(v2)))
            .map(|v2| (v1, v2))
    })
}

/// Outcome of [`verify_automorphism`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum AutomorphismCheck {
    Pass,
    Fail { iteration: usize, pair: (usize, usize) },
}

/// Checks that `phi` preserves the coloring of every retained snapshot.
pub fn verify_automorphism(trace: &WlTrace, phi: &Permutation) -> Result<AutomorphismCheck> {
    if phi.degree() != trace.vertex_count() {
        return Err(Error::DegreeMismatch {
            label: "phi".into(),
            expected: trace.vertex_count(),
            got: phi.degree(),
        });
    }
    for (h, config) in trace.snapshots() {
        if let Some(pair) = automorphism_violation(config, phi) {
            return Ok(AutomorphismCheck::Fail { iteration: h, pair });
        }
    }
    Ok(AutomorphismCheck::Pass)
}

/// Tally of color usage, handy for reports.
pub fn color_histogram(config: &Configuration) -> HashMap<u32, usize> {
    let mut h = HashMap::new();
    for &c in config.cells() {
        *h.entry(c).or_insert(0) += 1;
    }
    h
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schreier::{cayley_config, cycle_cayley, heptagon_pair, schreier_config, sym_cayley};
    use crate::wl::{wl_run, WlOptions};

    fn cycle(n: usize) -> Configuration {
        cayley_config(&cycle_cayley(n, None).unwrap(), 5000).unwrap()
    }

    #[test]
    fn cycle_six_nonempty_colors() {
        let cfg = cycle(6);
        let plus = cfg.table().by_origin("+1").unwrap();
        let minus = cfg.table().by_origin("-1").unwrap();
        let empty = cfg.table().by_origin("∅").unwrap();
        let ne = nonempty_colors(&cfg);
        assert_eq!(ne, BTreeSet::from([plus, minus]));
        assert!(!ne.contains(&empty));
        assert_eq!(empty_colors(&cfg), BTreeSet::from([empty]));
        assert_eq!(diameter(&gamma_graph(&cfg)).unwrap(), 3);
    }

    #[test]
    fn empty_color_is_nonempty_when_one_vertex_is_missed() {
        // Z/4Z with {0, ±1} misses only g + 2 from each g.
        let cfg = cycle(4);
        let empty = cfg.table().by_origin("∅").unwrap();
        assert!(nonempty_colors(&cfg).contains(&empty));
        assert_eq!(diameter(&gamma_graph(&cfg)).unwrap(), 1);
        assert_eq!(diameter(&generator_graph(&cfg)).unwrap(), 2);
    }

    #[test]
    fn heptagon_nonempty_and_diameter() {
        let cfg = schreier_config(&heptagon_pair());
        let empty = cfg.table().by_origin("∅").unwrap();
        let ne = nonempty_colors(&cfg);
        for (c, info) in cfg.table().iter() {
            if !info.is_vertex {
                assert_eq!(ne.contains(&c), c != empty, "{}", info.origin);
            }
        }
        assert_eq!(diameter(&gamma_graph(&cfg)).unwrap(), 4);
    }

    #[test]
    fn antipodes() {
        assert!(antipode_unique(&gamma_graph(&cycle(8))).unwrap());
        assert!(!antipode_unique(&gamma_graph(&cycle(7))).unwrap());
        let sym3 = cayley_config(&sym_cayley(3).unwrap(), 5000).unwrap();
        let g = gamma_graph(&sym3);
        assert_eq!(diameter(&g).unwrap(), 3);
        assert!(antipode_unique(&g).unwrap());
        let t = gamma_graph(&cycle(7)).distances();
        assert_eq!(t.antipodes(0).unwrap().len(), 2);
        assert!(t.antipodes(0).unwrap().iter().all(|&w| t.get(0, w) == Some(3)));
    }

    #[test]
    fn disconnected_gamma_graph() {
        // Two vertices, the only edge color is used twice from... none: the
        // off-diagonal color is nonempty, so build three vertices where the
        // edge color repeats in a row.
        let cfg = Configuration::from_raw(3, &[0, 1, 1, 1, 0, 1, 1, 1, 0]).unwrap();
        let g = gamma_graph(&cfg);
        assert_eq!(g.arc_count(), 0);
        assert!(matches!(diameter(&g), Err(Error::Disconnected { .. })));
    }

    #[test]
    fn cycle_five_is_not_coherent() {
        let cfg = cycle(5);
        let v = check_coherent(&cfg).unwrap_err();
        let empty = cfg.table().by_origin("∅").unwrap();
        assert_eq!(v.c0, empty);
        // (0, 2) has a two-step +1 walk, (0, 3) does not.
        let plus = cfg.table().by_origin("+1").unwrap();
        let g_a = cfg_triple(&cfg, v.pair_a, plus, plus);
        let g_b = cfg_triple(&cfg, v.pair_b, plus, plus);
        assert_ne!(g_a, g_b);
    }

    fn cfg_triple(cfg: &Configuration, (v1, v2): (usize, usize), c1: u32, c2: u32) -> usize {
        (0..cfg.vertex_count())
            .filter(|&w| cfg.color(v1, w) == c1 && cfg.color(w, v2) == c2)
            .count()
    }

    #[test]
    fn full_group_is_coherent_at_start() {
        let s3 = sym_cayley(3).unwrap();
        let group = crate::schreier::CayleyGroup::close(&s3, 100).unwrap();
        let members: Vec<(String, usize)> = (0..6).map(|g| (format!("g{g}"), g)).collect();
        let cfg = group.ratio_config(&members);
        let cert = check_coherent(&cfg).unwrap();
        // regular scheme: γ(c0, c1, c2) is 1 exactly when c2 ∘ c1 = c0
        assert_eq!(cert.triple_count(), 36);
    }

    #[test]
    fn triangle_walk_back_and_forth() {
        let cfg = cycle(3);
        let e = cfg.table().by_origin("e").unwrap();
        let plus = cfg.table().by_origin("+1").unwrap();
        let minus = cfg.table().by_origin("-1").unwrap();
        assert_eq!(walk_constants(&cfg, e, &[plus, minus]).unwrap(), 1);
        assert_eq!(walk_constants(&cfg, e, &[plus, plus]).unwrap(), 0);
        assert_eq!(walk_constants(&cfg, e, &[plus, plus, plus]).unwrap(), 1);
    }

    #[test]
    fn walk_constants_errors() {
        let cfg = cycle(5);
        assert_eq!(walk_constants(&cfg, 0, &[1, 2]), Err(Error::NotCoherent));
        let c3 = cycle(3);
        assert_eq!(walk_constants(&c3, 9, &[1, 2]), Err(Error::NoPairOfColor(9)));
        assert!(walk_constants(&c3, 0, &[1]).is_err());
    }

    #[test]
    fn heptagon_walk_constants_match_direct_counts() {
        let trace = wl_run(&schreier_config(&heptagon_pair()), WlOptions::default()).unwrap();
        let last = trace.last();
        let cert = check_coherent(last).unwrap();
        let all = cert.all_walk_constants(3);
        let m = last.vertex_count();
        for v1 in 0..m {
            for v2 in 0..m {
                let base = last.color(v1, v2);
                for ((b, seq), &n) in all.range((base, vec![])..(base + 1, vec![])) {
                    assert_eq!(*b, base);
                    assert_eq!(walk_count_direct(last, v1, v2, seq), n);
                }
            }
        }
    }

    #[test]
    fn automorphisms_of_cycle() {
        let action = cycle_cayley(8, None).unwrap();
        let group = crate::schreier::CayleyGroup::close(&action, 100).unwrap();
        let trace = wl_run(&group.configuration(), WlOptions::default()).unwrap();
        let shift = group.right_multiplication(group.index_of(&action.generator("+1").unwrap().pow(3)).unwrap());
        assert_eq!(verify_automorphism(&trace, &shift).unwrap(), AutomorphismCheck::Pass);
        let bad = Permutation::identity(5);
        assert!(verify_automorphism(&trace, &bad).is_err());
    }

    #[test]
    fn heptagon_transposition_is_not_an_automorphism() {
        let trace = wl_run(&schreier_config(&heptagon_pair()), WlOptions::default()).unwrap();
        let phi = Permutation::from_cycles(14, &[&[0, 2]]).unwrap();
        assert!(matches!(
            verify_automorphism(&trace, &phi).unwrap(),
            AutomorphismCheck::Fail { iteration: 0, .. }
        ));
    }
}
