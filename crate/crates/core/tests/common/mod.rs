//! Shared corpus and independent oracles for the integration tests.
#![allow(dead_code)]

use std::collections::HashMap;

use wl_schreier::experiment::{build, Built, Instance, InstanceSpec};
use wl_schreier::Configuration;

pub struct Case {
    pub name: String,
    pub spec: InstanceSpec,
}

fn case(name: impl Into<String>, instance: Instance) -> Case {
    Case {
        name: name.into(),
        spec: InstanceSpec::new(instance),
    }
}

pub fn sl(n: usize, q: u64, k: usize) -> Instance {
    Instance::SlTuples {
        n,
        q,
        k,
        modulus: None,
        matrices: None,
    }
}

pub fn sym_cayley(n: usize) -> Instance {
    Instance::CayleyOf {
        symmetric: Some(n),
        points: None,
        generators: None,
    }
}

pub fn cycle(n: usize) -> Instance {
    Instance::Cycle { n, steps: None }
}

/// Every instance family exercised by the suites.
pub fn corpus() -> Vec<Case> {
    let mut out = Vec::new();
    for n in 5..=9 {
        out.push(case(format!("sym_adjacent({n})"), Instance::SymAdjacent { n }));
    }
    out.push(case("heptagon_pair", Instance::HeptagonPair));
    for n in 3..=64 {
        out.push(case(format!("cycle({n})"), cycle(n)));
    }
    out.push(case(
        "cycle(12, ±1 ±5)",
        Instance::Cycle {
            n: 12,
            steps: Some(vec![1, 5]),
        },
    ));
    out.push(case("cayley Sym(3)", sym_cayley(3)));
    out.push(case("cayley Sym(4)", sym_cayley(4)));
    for (q, k) in [(2, 1), (3, 1), (3, 2), (4, 1), (5, 1), (7, 1)] {
        out.push(case(format!("SL_2(F_{q}) k={k}"), sl(2, q, k)));
    }
    out
}

pub fn built(case: &Case) -> Built {
    build(&case.spec).unwrap_or_else(|e| panic!("{}: {e}", case.name))
}

/// Whether two cell vectors induce the same partition, decided by building
/// the class map in both directions.
pub fn same_partition(a: &[u32], b: &[u32]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut fwd: HashMap<u32, u32> = HashMap::new();
    let mut back: HashMap<u32, u32> = HashMap::new();
    a.iter().zip(b).all(|(&x, &y)| {
        *fwd.entry(x).or_insert(y) == y && *back.entry(y).or_insert(x) == x
    })
}

fn class_count(cells: &[u32]) -> usize {
    let mut seen: Vec<u32> = cells.to_vec();
    seen.sort_unstable();
    seen.dedup();
    seen.len()
}

/// One refinement step straight from the definition: a pair's new class is
/// its old color together with the multiset of `(c(v1, w), c(w, v2))` over
/// all `w`, kept as the full sorted list of `m` color pairs.
pub fn naive_step(m: usize, cells: &[u32]) -> Vec<u32> {
    let mut classes: HashMap<(u32, Vec<(u32, u32)>), u32> = HashMap::new();
    let mut out = vec![0u32; m * m];
    for v1 in 0..m {
        for v2 in 0..m {
            let mut triples: Vec<(u32, u32)> =
                (0..m).map(|w| (cells[v1 * m + w], cells[w * m + v2])).collect();
            triples.sort();
            let next = classes.len() as u32;
            out[v1 * m + v2] = *classes.entry((cells[v1 * m + v2], triples)).or_insert(next);
        }
    }
    out
}

/// All partitions visited by the naive refinement, starting with the input,
/// up to and including the first stable one.
pub fn naive_run(config: &Configuration) -> Vec<Vec<u32>> {
    let m = config.vertex_count();
    let mut out = vec![config.cells().to_vec()];
    loop {
        let last = out.last().unwrap();
        let next = naive_step(m, last);
        if class_count(&next) == class_count(last) {
            return out;
        }
        out.push(next);
    }
}

/// Counts, for each end vertex and color sequence, the walks of exactly
/// `k` steps starting at `v1`, by enumerating every vertex sequence.
pub fn enumerate_walks(config: &Configuration, v1: usize, k: usize) -> HashMap<(usize, Vec<u32>), u64> {
    fn go(
        config: &Configuration,
        at: usize,
        left: usize,
        seq: &mut Vec<u32>,
        out: &mut HashMap<(usize, Vec<u32>), u64>,
    ) {
        if left == 0 {
            *out.entry((at, seq.clone())).or_insert(0) += 1;
            return;
        }
        for w in 0..config.vertex_count() {
            seq.push(config.color(at, w));
            go(config, w, left - 1, seq, out);
            seq.pop();
        }
    }
    let mut out = HashMap::new();
    go(config, v1, k, &mut Vec::with_capacity(k), &mut out);
    out
}

/// `count` evenly spaced indices from `0..n`.
pub fn spread(n: usize, count: usize) -> Vec<usize> {
    (0..count).map(|i| (i * n) / count).collect()
}
