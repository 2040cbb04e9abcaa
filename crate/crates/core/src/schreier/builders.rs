use std::collections::VecDeque;

use crate::algebra::{
    genset_validate, perm_from_matrix, transvection_generators, tuples_enumerate, ActionSpec,
    Field, FqMatrix, Permutation, TupleSet, ValidatedAction, IDENTITY_LABEL,
};
use crate::error::{Error, Result};

pub const Q2_NOTE: &str = "q=2: lower bound theorem inapplicable";
pub const HEPTAGON_INDEX_NOTE: &str =
    "points are stored 0-indexed; the published labels are index + 1";

fn require_n(n: usize, min: usize) -> Result<()> {
    if n < min {
        return Err(Error::OutOfRange(format!("n = {n}, need n >= {min}")));
    }
    Ok(())
}

/// `Sym(n)` acting on `Z/nZ` through the `n` cyclically adjacent
/// transpositions `(i i+1)` (indices mod `n`) and the identity.
pub fn sym_adjacent(n: usize) -> Result<ValidatedAction> {
    require_n(n, 3)?;
    let mut spec = ActionSpec::new(n, format!("Sym({n}) on Z/{n}Z, cyclic adjacent transpositions"))
        .with_identity();
    for i in 0..n {
        let j = (i + 1) % n;
        let t = Permutation::from_cycles(n, &[&[i as u32, j as u32]])?;
        spec = spec.with_generator(format!("({i} {j})"), t);
    }
    genset_validate(spec)
}

/// `Sym(n)` on `n` points generated by the non-cyclic adjacent
/// transpositions `(i i+1)`, `i < n - 1`; meant for Cayley configurations.
pub fn sym_cayley(n: usize) -> Result<ValidatedAction> {
    require_n(n, 2)?;
    let mut spec =
        ActionSpec::new(n, format!("Sym({n}), adjacent transpositions")).with_identity();
    for i in 0..n - 1 {
        let t = Permutation::from_cycles(n, &[&[i as u32, i as u32 + 1]])?;
        spec = spec.with_generator(format!("({i} {})", i + 1), t);
    }
    genset_validate(spec)
}

/// Regular action of `Z/nZ` by translations. `steps` defaults to `[1]`; each
/// step `s` contributes the labels `+s` and `-s` (translations by `s` and
/// `-s`). Steps that vanish mod `n` are dropped.
pub fn cycle_cayley(n: usize, steps: Option<&[i64]>) -> Result<ValidatedAction> {
    require_n(n, 3)?;
    let steps = steps.unwrap_or(&[1]);
    let mut spec = ActionSpec::new(n, format!("Z/{n}Z")).with_identity();
    for &s in steps {
        let a = s.unsigned_abs();
        if a % n as u64 == 0 {
            continue;
        }
        for (label, shift) in [(format!("+{a}"), a as i64), (format!("-{a}"), -(a as i64))] {
            let images = (0..n as i64)
                .map(|x| (x + shift).rem_euclid(n as i64) as u32)
                .collect();
            spec = spec.with_generator(label, Permutation::new(images)?);
        }
    }
    genset_validate(spec)
}

/// The 14-point action with `S = {e, σ^±1, τ^±1}`: σ rotates two disjoint
/// heptagons, τ links them.
pub fn heptagon_pair() -> ValidatedAction {
    // 1-indexed cycles, shifted to 0-indexed below.
    let sigma: [&[u32]; 2] = [&[1, 2, 3, 4, 5, 6, 7], &[8, 9, 10, 11, 12, 13, 14]];
    let tau: [&[u32]; 6] = [&[1, 8, 9, 2], &[3, 10], &[4, 11], &[5, 12], &[6, 13], &[7, 14]];
    let shift = |cycles: &[&[u32]]| -> Permutation {
        let owned: Vec<Vec<u32>> = cycles.iter().map(|c| c.iter().map(|x| x - 1).collect()).collect();
        let refs: Vec<&[u32]> = owned.iter().map(|c| c.as_slice()).collect();
        Permutation::from_cycles(14, &refs).expect("valid cycles")
    };
    let s = shift(&sigma);
    let t = shift(&tau);
    let mut spec = ActionSpec::new(14, "heptagon pair: two 7-cycles linked by tau")
        .with_identity()
        .with_generator("sigma", s.clone())
        .with_generator("sigma^-1", s.inverse())
        .with_generator("tau", t.clone())
        .with_generator("tau^-1", t.inverse())
        .with_note(HEPTAGON_INDEX_NOTE);
    spec.point_labels = Some((1..=14).map(|i| i.to_string()).collect());
    genset_validate(spec).expect("heptagon pair action is valid")
}

/// Generating set used for `SL_n(F_q)` actions.
#[derive(Clone, Debug)]
pub enum GeneratorChoice {
    /// `e` and `E_ij(±a)` for `a` in an additive basis of `F_q`.
    Transvections,
    /// Explicit labelled matrices of determinant 1. The identity and missing
    /// inverses (labelled `<label>^-1`) are added.
    Matrices(Vec<(String, FqMatrix)>),
}

impl GeneratorChoice {
    pub fn describe(&self) -> &'static str {
        match self {
            Self::Transvections => "identity and transvections E_ij(±a), a in an additive basis",
            Self::Matrices(_) => "explicit matrices, closed under inverses",
        }
    }
}

/// An `SL_n(F_q)` action on linearly independent `k`-tuples together with
/// the data needed to derive scalar automorphisms.
#[derive(Clone, Debug)]
pub struct SlInstance {
    pub action: ValidatedAction,
    pub tuples: TupleSet,
    pub field: Field,
    pub n: usize,
    pub k: usize,
    pub generators: Vec<(String, FqMatrix)>,
}

impl SlInstance {
    pub fn q(&self) -> u64 {
        self.field.order() as u64
    }
}

fn closed_generators(field: &Field, n: usize, choice: &GeneratorChoice) -> Result<Vec<(String, FqMatrix)>> {
    match choice {
        GeneratorChoice::Transvections => Ok(transvection_generators(field, n)),
        GeneratorChoice::Matrices(list) => {
            let mut out: Vec<(String, FqMatrix)> = Vec::new();
            for (label, mat) in list {
                if mat.dim() != n {
                    return Err(Error::DimensionMismatch { expected: n, got: mat.dim() });
                }
                let det = mat.determinant();
                if det != 1 {
                    return Err(Error::NotSpecialLinear { det });
                }
                out.push((label.clone(), mat.clone()));
            }
            if !out.iter().any(|(l, _)| l == IDENTITY_LABEL) {
                out.push((IDENTITY_LABEL.to_string(), FqMatrix::identity(field, n)));
            }
            let mut extra = Vec::new();
            for (label, mat) in &out {
                let inv = mat.inverse().expect("determinant 1");
                if !out.iter().chain(&extra).any(|(_, m)| *m == inv) {
                    extra.push((format!("{label}^-1"), inv));
                }
            }
            out.extend(extra);
            Ok(out)
        }
    }
}

/// `SL_n(F_q)` acting on linearly independent `k`-tuples of `F_q^n` by
/// `A(v_1..v_k) = (Av_1..Av_k)`.
///
/// For `k = n` the tuples split into `q - 1` orbits by determinant; the
/// action is restricted to the orbit of the standard basis. `q = 2` is
/// accepted and flagged.
pub fn sl_tuples(
    n: usize,
    field: &Field,
    k: usize,
    choice: &GeneratorChoice,
    cap: usize,
) -> Result<SlInstance> {
    require_n(n, 2)?;
    let q = field.order();
    let mut tuples = tuples_enumerate(field, n, k, cap)?;
    let generators = closed_generators(field, n, choice)?;
    let mut perms = generators
        .iter()
        .map(|(_, m)| perm_from_matrix(m, &tuples))
        .collect::<Result<Vec<_>>>()?;

    let mut notes = Vec::new();
    if k == n {
        let basis: Vec<Vec<u32>> = (0..n)
            .map(|i| (0..n).map(|j| u32::from(i == j)).collect())
            .collect();
        let start = tuples.index_of_vectors(&basis).expect("standard basis is independent");
        let mut seen = vec![false; tuples.len()];
        seen[start] = true;
        let mut queue = VecDeque::from([start]);
        while let Some(v) = queue.pop_front() {
            for p in &perms {
                let w = p.apply(v);
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        let orbit: Vec<usize> = (0..tuples.len()).filter(|&i| seen[i]).collect();
        if orbit.len() < tuples.len() {
            tuples = tuples.restrict(&orbit);
            perms = generators
                .iter()
                .map(|(_, m)| perm_from_matrix(m, &tuples))
                .collect::<Result<Vec<_>>>()?;
            notes.push(format!(
                "k = n: restricted to the orbit of the standard basis ({} of {} tuples)",
                orbit.len(),
                seen.len()
            ));
        }
    }
    if q == 2 {
        notes.push(Q2_NOTE.to_string());
    }

    let mut spec = ActionSpec::new(
        tuples.len(),
        format!("SL_{n}(F_{q}) on independent {k}-tuples, {}", choice.describe()),
    );
    for ((label, _), p) in generators.iter().zip(perms) {
        spec = spec.with_generator(label.clone(), p);
    }
    spec.notes = notes;
    Ok(SlInstance {
        action: genset_validate(spec)?,
        tuples,
        field: field.clone(),
        n,
        k,
        generators,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sym_adjacent_five() {
        let a = sym_adjacent(5).unwrap();
        assert_eq!(a.points(), 5);
        assert_eq!(a.labels().len(), 6);
        assert!(sym_adjacent(2).is_err());
    }

    #[test]
    fn heptagon_cycle_notation() {
        let h = heptagon_pair();
        assert_eq!(h.points(), 14);
        let sigma = h.generator("sigma").unwrap();
        let tau = h.generator("tau").unwrap();
        // 1-indexed labels: tau(1) = 8, sigma(8) = 9
        assert_eq!(sigma.compose(tau).apply(0), 8);
        // 5 -> 12 -> 5 under tau
        assert_eq!(tau.apply(4), 11);
        assert_eq!(tau.apply(11), 4);
        assert_eq!(h.inverse_label("tau"), Some("tau^-1"));
    }

    #[test]
    fn sl2_f3_on_vectors() {
        let f = Field::prime(3).unwrap();
        let inst = sl_tuples(2, &f, 1, &GeneratorChoice::Transvections, 5000).unwrap();
        assert_eq!(inst.action.points(), 8);
        assert!(inst.action.spec().notes.is_empty());
        let f5 = Field::prime(5).unwrap();
        let inst = sl_tuples(2, &f5, 1, &GeneratorChoice::Transvections, 5000).unwrap();
        assert_eq!(inst.action.points(), 24);
    }

    #[test]
    fn q2_is_flagged() {
        let f = Field::prime(2).unwrap();
        let inst = sl_tuples(2, &f, 1, &GeneratorChoice::Transvections, 5000).unwrap();
        assert_eq!(inst.action.points(), 3);
        assert!(inst.action.spec().notes.iter().any(|n| n == Q2_NOTE));
    }

    #[test]
    fn full_rank_tuples_restrict_to_one_orbit() {
        let f = Field::prime(3).unwrap();
        let inst = sl_tuples(2, &f, 2, &GeneratorChoice::Transvections, 5000).unwrap();
        // |SL_2(F_3)| = 24 acting regularly on determinant-1 bases
        assert_eq!(inst.action.points(), 24);
        assert_eq!(inst.action.spec().notes.len(), 1);
    }

    #[test]
    fn explicit_matrices_get_inverses() {
        let f = Field::prime(5).unwrap();
        let a = FqMatrix::from_rows(&f, &[vec![1, 1], vec![0, 1]]).unwrap();
        let b = FqMatrix::from_rows(&f, &[vec![1, 0], vec![1, 1]]).unwrap();
        let choice = GeneratorChoice::Matrices(vec![("a".into(), a), ("b".into(), b)]);
        let inst = sl_tuples(2, &f, 1, &choice, 5000).unwrap();
        assert_eq!(inst.action.labels(), &["a", "a^-1", "b", "b^-1", "e"]);
        let bad = FqMatrix::scalar(&f, 2, 2);
        let choice = GeneratorChoice::Matrices(vec![("h".into(), bad)]);
        assert_eq!(
            sl_tuples(2, &f, 1, &choice, 5000).unwrap_err(),
            Error::NotSpecialLinear { det: 4 }
        );
    }

    #[test]
    fn cycle_steps() {
        let c = cycle_cayley(8, None).unwrap();
        assert_eq!(c.labels(), &["+1", "-1", "e"]);
        let c = cycle_cayley(3, Some(&[1, 2])).unwrap();
        assert_eq!(c.labels().len(), 5);
    }
}
