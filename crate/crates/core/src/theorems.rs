//! Checks of the iteration-count bounds against computed traces.
//!
//! Bound comparisons are exact: `a ≤ log₂ d + b` is decided as an integer
//! inequality between powers of two and `d`, so powers of two never fail
//! by rounding. The floating point `lhs`/`rhs` fields are informational.

use serde::Serialize;

use crate::algebra::{perm_from_matrix, smallest_prime_divisor, FqMatrix, Permutation};
use crate::analysis::{automorphism_violation, DistanceTable};
use crate::config::Configuration;
use crate::error::{Error, Result};
use crate::schreier::{CayleyGroup, SlInstance};
use crate::wl::{cells_partition_equal, WlTrace};

/// Which statement a [`BoundReport`] checks.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TheoremId {
    /// `WL ≤ log₂ diam + 3`.
    Upper,
    /// `WL ≥ log₂ diam − log₂(p − 1) − 3` for `SL_n(F_q)` actions.
    LowerSl,
    /// `WL ≥ log₂ diam − log₂(|⟨φ⟩| − 1) − 3` given a fixed-point-free `φ`.
    LowerGeneral,
    /// `WL = ⌈log₂(diam − 1)⌉` or `⌈log₂ diam⌉` on Cayley configurations.
    CayleyExact,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct BoundInputs {
    pub diameter: usize,
    pub wl_count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub antipode_unique: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub theorem: TheoremId,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
    pub inputs: BoundInputs,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

/// `⌈log₂ t⌉`, taken as 0 for `t ≤ 1`.
pub fn ceil_log2(t: usize) -> u32 {
    if t <= 1 {
        0
    } else {
        usize::BITS - (t - 1).leading_zeros()
    }
}

fn require_diameter(diam: usize) -> Result<()> {
    if diam == 0 {
        return Err(Error::OutOfRange("diameter 0".into()));
    }
    Ok(())
}

/// `2^e` as `u128`, saturating; exponents here are tiny in practice.
fn pow2(e: usize) -> u128 {
    if e >= 127 {
        u128::MAX
    } else {
        1u128 << e
    }
}

/// Decides `wl ≥ log₂ d − log₂ r − 3` as `2^(wl+3)·r ≥ d`.
fn lower_holds(wl: usize, diam: usize, r: u64) -> bool {
    pow2(wl + 3).saturating_mul(r as u128) >= diam as u128
}

/// The upper bound in its general form over `Γ_X`.
pub fn verify_upper(wl_count: usize, diam: usize) -> Result<BoundReport> {
    require_diameter(diam)?;
    let holds = wl_count <= 3 || pow2(wl_count - 3) <= diam as u128;
    Ok(BoundReport {
        theorem: TheoremId::Upper,
        lhs: wl_count as f64,
        rhs: (diam as f64).log2() + 3.0,
        holds,
        inputs: BoundInputs {
            diameter: diam,
            wl_count,
            ..Default::default()
        },
        notes: Vec::new(),
    })
}

/// Lower bound for `SL_n(F_q)` actions, `p` the smallest prime dividing
/// `q − 1`.
pub fn verify_lower_sl(wl_count: usize, diam: usize, q: u64) -> Result<BoundReport> {
    if q <= 2 {
        return Err(Error::InapplicableQ(q));
    }
    require_diameter(diam)?;
    let p = smallest_prime_divisor(q - 1)?;
    Ok(BoundReport {
        theorem: TheoremId::LowerSl,
        lhs: wl_count as f64,
        rhs: (diam as f64).log2() - ((p - 1) as f64).log2() - 3.0,
        holds: lower_holds(wl_count, diam, p - 1),
        inputs: BoundInputs {
            diameter: diam,
            wl_count,
            p: Some(p),
            ..Default::default()
        },
        notes: Vec::new(),
    })
}

/// A validated automorphism of a configuration whose nontrivial powers move
/// every point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AutomorphismWitness {
    phi: Permutation,
    order: usize,
    fixed_point_free_powers: bool,
    provenance: String,
}

impl AutomorphismWitness {
    /// Checks that `phi` preserves `config`, has order at least 2 and that no
    /// power `φ^i` with `1 ≤ i < order` fixes a point.
    pub fn validate(phi: Permutation, provenance: impl Into<String>, config: &Configuration) -> Result<Self> {
        let m = config.vertex_count();
        if phi.degree() != m {
            return Err(Error::DegreeMismatch {
                label: "phi".into(),
                expected: m,
                got: phi.degree(),
            });
        }
        if let Some((v1, v2)) = automorphism_violation(config, &phi) {
            return Err(Error::NotAutomorphism(v1, v2));
        }
        let order = phi.order();
        if order < 2 {
            return Err(Error::HasFixedPoint { power: 1, point: 0 });
        }
        let mut power = phi.clone();
        for i in 1..order {
            if let Some(point) = power.fixed_points().next() {
                return Err(Error::HasFixedPoint { power: i, point });
            }
            power = phi.compose(&power);
        }
        Ok(Self {
            phi,
            order,
            fixed_point_free_powers: true,
            provenance: provenance.into(),
        })
    }

    pub fn phi(&self) -> &Permutation {
        &self.phi
    }

    /// `|⟨φ⟩|`.
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn fixed_point_free_powers(&self) -> bool {
        self.fixed_point_free_powers
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }
}

/// Scalars `h ∉ {0, 1}` acting by `(v_1..v_k) ↦ (hv_1..hv_k)`. They commute
/// with every generator, hence preserve the Schreier configuration. When
/// `k = n` the points form a single determinant orbit and only `hⁿ = 1`
/// keeps it invariant.
pub fn scalar_witnesses(inst: &SlInstance) -> Result<Vec<AutomorphismWitness>> {
    let field = &inst.field;
    let config = crate::schreier::schreier_config(&inst.action);
    let mut out = Vec::new();
    for h in field.elements().skip(1) {
        if h == field.one() {
            continue;
        }
        if inst.k == inst.n {
            let hn = (0..inst.n).fold(field.one(), |acc, _| field.mul(acc, h));
            if hn != field.one() {
                continue;
            }
        }
        let phi = perm_from_matrix(&FqMatrix::scalar(field, inst.n, h), &inst.tuples)?;
        out.push(AutomorphismWitness::validate(phi, format!("scalar {h}"), &config)?);
    }
    Ok(out)
}

/// Right multiplication by `h`, an automorphism of every Cayley
/// configuration of the group.
pub fn right_mult_witness(group: &CayleyGroup, h: usize) -> Result<AutomorphismWitness> {
    let config = group.configuration();
    AutomorphismWitness::validate(group.right_multiplication(h), format!("right-mult {h}"), &config)
}

/// The first element (in the group's element order) of smallest nontrivial
/// order, as a right-multiplication witness.
pub fn minimal_right_mult_witness(group: &CayleyGroup) -> Result<AutomorphismWitness> {
    let h = (1..group.order())
        .min_by_key(|&g| group.element(g).order())
        .ok_or(Error::NoWitness)?;
    right_mult_witness(group, h)
}

/// Lower bound from a fixed-point-free automorphism, using the smallest
/// order among the supplied witnesses.
pub fn verify_lower_general(
    wl_count: usize,
    diam: usize,
    witnesses: &[AutomorphismWitness],
) -> Result<BoundReport> {
    require_diameter(diam)?;
    let best = witnesses
        .iter()
        .min_by_key(|w| w.order)
        .ok_or(Error::NoWitness)?;
    let r = (best.order - 1) as u64;
    Ok(BoundReport {
        theorem: TheoremId::LowerGeneral,
        lhs: wl_count as f64,
        rhs: (diam as f64).log2() - (r as f64).log2() - 3.0,
        holds: lower_holds(wl_count, diam, r),
        inputs: BoundInputs {
            diameter: diam,
            wl_count,
            order: Some(best.order),
            ..Default::default()
        },
        notes: vec![
            format!("witness-relative: minimal order over {} supplied witness(es)", witnesses.len()),
            format!("witness {}", best.provenance),
        ],
    })
}

/// The branch value predicted for a Cayley configuration.
pub fn cayley_prediction(diam: usize, unique: bool) -> u32 {
    if unique {
        ceil_log2(diam.saturating_sub(1))
    } else {
        ceil_log2(diam)
    }
}

/// Exact iteration count on a Cayley configuration, branching on whether
/// every vertex has a unique antipode.
pub fn cayley_exact(wl_count: usize, diam: usize, unique: bool) -> Result<BoundReport> {
    require_diameter(diam)?;
    let predicted = cayley_prediction(diam, unique);
    let mut notes = Vec::new();
    if unique && diam == 1 {
        notes.push("diameter 1 with unique antipodes: ⌈log₂ 0⌉ taken as 0".to_string());
    }
    Ok(BoundReport {
        theorem: TheoremId::CayleyExact,
        lhs: wl_count as f64,
        rhs: predicted as f64,
        holds: wl_count == predicted as usize,
        inputs: BoundInputs {
            diameter: diam,
            wl_count,
            antipode_unique: Some(unique),
            ..Default::default()
        },
        notes,
    })
}

/// Outcome of a partition comparison with a witness on failure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum PartitionCheck {
    Pass,
    /// Two pairs that are grouped together by one side and apart by the other.
    Fail {
        pair_a: (usize, usize),
        pair_b: (usize, usize),
    },
}

fn partition_witness(m: usize, a: &[u32], b: &[u32]) -> PartitionCheck {
    if cells_partition_equal(a, b) {
        return PartitionCheck::Pass;
    }
    let mut first_a = std::collections::HashMap::new();
    let mut first_b = std::collections::HashMap::new();
    for (i, (&x, &y)) in a.iter().zip(b).enumerate() {
        let ia = *first_a.entry(x).or_insert(i);
        let ib = *first_b.entry(y).or_insert(i);
        if ia != ib {
            let j = ia.min(ib);
            return PartitionCheck::Fail {
                pair_a: (j / m, j % m),
                pair_b: (i / m, i % m),
            };
        }
    }
    unreachable!("partitions differ but no witness found")
}

/// Compares snapshot `k` of the trace of `Cay(G, S)` with the initial
/// configuration of `Cay(G, S^{2^k})`.
pub fn bartholdi_check(group: &CayleyGroup, trace: &WlTrace, k: usize) -> Result<PartitionCheck> {
    let snapshot = trace.snapshot(k)?;
    if snapshot.vertex_count() != group.order() {
        return Err(Error::SizeMismatch(snapshot.vertex_count(), group.order()));
    }
    let radius = 1usize.checked_shl(k as u32).unwrap_or(usize::MAX);
    let ball = group.ball_config(radius);
    Ok(partition_witness(group.order(), snapshot.cells(), ball.cells()))
}

/// A violation of the far-pairs property: at iteration `iteration`, two
/// pairs further apart than `2^iteration` carry different colors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FarPairViolation {
    pub iteration: usize,
    pub pair_a: (usize, usize),
    pub pair_b: (usize, usize),
}

/// Checks that at every retained iteration `k`, all pairs at distance
/// greater than `2^k` share one color.
pub fn far_pairs_share_color(trace: &WlTrace, dist: &DistanceTable) -> Option<FarPairViolation> {
    let m = trace.vertex_count();
    for (k, config) in trace.snapshots() {
        let limit = 1usize.checked_shl(k as u32).unwrap_or(usize::MAX);
        let mut seen: Option<((usize, usize), u32)> = None;
        for v1 in 0..m {
            for v2 in 0..m {
                if dist.get(v1, v2).map_or(true, |d| d > limit) {
                    let c = config.color(v1, v2);
                    match seen {
                        None => seen = Some(((v1, v2), c)),
                        Some((first, c0)) if c0 != c => {
                            return Some(FarPairViolation {
                                iteration: k,
                                pair_a: first,
                                pair_b: (v1, v2),
                            })
                        }
                        _ => {}
                    }
                }
            }
        }
    }
    None
}

/// A violation of the orbit property for an automorphism `φ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrbitViolation {
    pub iteration: usize,
    pub v: usize,
    pub w: usize,
    pub power: usize,
}

/// Checks that `c^k(v, φ^i(w))` does not depend on `i` whenever every
/// `d(v, φ^i(w))` exceeds `2^k`, at every retained iteration.
pub fn orbit_colors_agree(
    trace: &WlTrace,
    witness: &AutomorphismWitness,
    dist: &DistanceTable,
) -> Option<OrbitViolation> {
    let m = trace.vertex_count();
    let powers: Vec<Permutation> = (0..witness.order)
        .scan(Permutation::identity(m), |p, _| {
            let cur = p.clone();
            *p = witness.phi.compose(p);
            Some(cur)
        })
        .collect();
    for (k, config) in trace.snapshots() {
        let limit = 1usize.checked_shl(k as u32).unwrap_or(usize::MAX);
        for v in 0..m {
            for w in 0..m {
                let far = powers
                    .iter()
                    .all(|p| dist.get(v, p.apply(w)).map_or(true, |d| d > limit));
                if !far {
                    continue;
                }
                let c = config.color(v, w);
                if let Some(i) = powers.iter().position(|p| config.color(v, p.apply(w)) != c) {
                    return Some(OrbitViolation {
                        iteration: k,
                        v,
                        w,
                        power: i,
                    });
                }
            }
        }
    }
    None
}
