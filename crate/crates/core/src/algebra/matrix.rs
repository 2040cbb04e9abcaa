//! Matrices over `F_q` and their action on linearly independent tuples.

use crate::algebra::{Field, Permutation};
use crate::error::{Error, Result};

/// An `n × n` matrix over a finite field, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FqMatrix {
    field: Field,
    n: usize,
    entries: Vec<u32>,
}

impl FqMatrix {
    pub fn new(field: &Field, n: usize, entries: Vec<u32>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                got: entries.len(),
            });
        }
        for &e in &entries {
            field.element(e as u64)?;
        }
        Ok(Self {
            field: field.clone(),
            n,
            entries,
        })
    }

    pub fn from_rows(field: &Field, rows: &[Vec<u32>]) -> Result<Self> {
        let n = rows.len();
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: bad.len(),
            });
        }
        Self::new(field, n, rows.concat())
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        Self::scalar(field, n, 1)
    }

    pub fn scalar(field: &Field, n: usize, h: u32) -> Self {
        let mut entries = vec![0; n * n];
        for i in 0..n {
            entries[i * n + i] = h;
        }
        Self {
            field: field.clone(),
            n,
            entries,
        }
    }

    /// Elementary transvection `E_ij(a)`: the identity plus `a` at `(i, j)`,
    /// `i != j`, 0-indexed.
    pub fn transvection(field: &Field, n: usize, i: usize, j: usize, a: u32) -> Self {
        assert!(i != j && i < n && j < n, "transvection needs distinct in-range indices");
        let mut m = Self::identity(field, n);
        m.entries[i * n + j] = a;
        m
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.n + j]
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.n, other.n);
        let f = &self.field;
        let n = self.n;
        let mut entries = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = 0;
                for l in 0..n {
                    acc = f.add(acc, f.mul(self.get(i, l), other.get(l, j)));
                }
                entries[i * n + j] = acc;
            }
        }
        Self {
            field: f.clone(),
            n,
            entries,
        }
    }

    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        let f = &self.field;
        (0..self.n)
            .map(|i| {
                (0..self.n).fold(0, |acc, j| f.add(acc, f.mul(self.get(i, j), v[j])))
            })
            .collect()
    }

    pub fn determinant(&self) -> u32 {
        let f = &self.field;
        let n = self.n;
        let mut a = self.entries.clone();
        let mut det = 1;
        for col in 0..n {
            let Some(pivot) = (col..n).find(|&r| a[r * n + col] != 0) else {
                return 0;
            };
            if pivot != col {
                for j in 0..n {
                    a.swap(pivot * n + j, col * n + j);
                }
                det = f.neg(det);
            }
            let pv = a[col * n + col];
            det = f.mul(det, pv);
            let pinv = f.inv(pv).expect("nonzero pivot");
            for r in col + 1..n {
                let factor = f.mul(a[r * n + col], pinv);
                if factor != 0 {
                    for j in col..n {
                        a[r * n + j] = f.sub(a[r * n + j], f.mul(factor, a[col * n + j]));
                    }
                }
            }
        }
        det
    }

    pub fn is_special_linear(&self) -> bool {
        self.determinant() == 1
    }

    /// Inverse by Gauss-Jordan elimination; `None` if singular.
    pub fn inverse(&self) -> Option<Self> {
        let f = &self.field;
        let n = self.n;
        let mut a = self.entries.clone();
        let mut b = Self::identity(f, n).entries;
        for col in 0..n {
            let pivot = (col..n).find(|&r| a[r * n + col] != 0)?;
            for j in 0..n {
                a.swap(pivot * n + j, col * n + j);
                b.swap(pivot * n + j, col * n + j);
            }
            let pinv = f.inv(a[col * n + col])?;
            for j in 0..n {
                a[col * n + j] = f.mul(a[col * n + j], pinv);
                b[col * n + j] = f.mul(b[col * n + j], pinv);
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = a[r * n + col];
                if factor != 0 {
                    for j in 0..n {
                        a[r * n + j] = f.sub(a[r * n + j], f.mul(factor, a[col * n + j]));
                        b[r * n + j] = f.sub(b[r * n + j], f.mul(factor, b[col * n + j]));
                    }
                }
            }
        }
        Some(Self {
            field: f.clone(),
            n,
            entries: b,
        })
    }
}

/// The standard symmetric generating set of `SL_n(F_q)`: the identity `e`
/// and the elementary transvections `E_ij(±a)`, `i != j`, for `a` running
/// over the additive basis `1, x, .., x^(d-1)` of `F_q` over `F_p`. Labels
/// are 1-indexed (`E12(+1)`, `E21(-x)`, `E13(+x^2)`); in characteristic 2
/// each `±` pair collapses to a single self-inverse `E12(x)`.
pub fn transvection_generators(field: &Field, n: usize) -> Vec<(String, FqMatrix)> {
    let mut out = vec![("e".to_string(), FqMatrix::identity(field, n))];
    let char_two = field.characteristic() == 2;
    for t in 0..field.degree() {
        let a = field.characteristic().pow(t);
        let name = match t {
            0 => "1".to_string(),
            1 => "x".to_string(),
            _ => format!("x^{t}"),
        };
        for i in 0..n {
            for j in 0..n {
                if i == j {
                    continue;
                }
                if char_two {
                    out.push((
                        format!("E{}{}({name})", i + 1, j + 1),
                        FqMatrix::transvection(field, n, i, j, a),
                    ));
                } else {
                    out.push((
                        format!("E{}{}(+{name})", i + 1, j + 1),
                        FqMatrix::transvection(field, n, i, j, a),
                    ));
                    out.push((
                        format!("E{}{}(-{name})", i + 1, j + 1),
                        FqMatrix::transvection(field, n, i, j, field.neg(a)),
                    ));
                }
            }
        }
    }
    out
}

/// Lexicographically sorted list of linearly independent `k`-tuples of
/// vectors in `F_q^n`.
///
/// A vector is stored as its index in `0..q^n` (first coordinate most
/// significant), so lexicographic order on index tuples is lexicographic
/// order on coordinates.
#[derive(Clone, Debug)]
pub struct TupleSet {
    field: Field,
    n: usize,
    k: usize,
    points: Vec<Vec<u32>>,
}

/// Number of linearly independent `k`-tuples in `F_q^n`:
/// `∏_{i<k} (q^n − q^i)`.
pub fn independent_tuple_count(q: u64, n: usize, k: usize) -> u128 {
    let qn = (q as u128).saturating_pow(n as u32);
    (0..k as u32).fold(1u128, |acc, i| {
        acc.saturating_mul(qn - (q as u128).saturating_pow(i))
    })
}

/// Enumerates all linearly independent `k`-tuples of `F_q^n` in
/// lexicographic order. Fails with [`Error::SizeCap`] before enumerating if
/// the count exceeds `cap`.
pub fn tuples_enumerate(field: &Field, n: usize, k: usize, cap: usize) -> Result<TupleSet> {
    if n == 0 || k == 0 || k > n {
        return Err(Error::OutOfRange(format!("tuple length k = {k} for n = {n}")));
    }
    let q = field.order() as u64;
    let needed = independent_tuple_count(q, n, k);
    if needed > cap as u128 {
        return Err(Error::SizeCap { needed, cap });
    }
    let space = (q as u128).pow(n as u32) as usize;
    let coords: Vec<Vec<u32>> = (0..space).map(|i| index_to_vector(i as u32, q as u32, n)).collect();

    let mut points = Vec::with_capacity(needed as usize);
    let mut prefix = Vec::with_capacity(k);
    extend_tuples(field, &coords, n, k, &mut prefix, &mut points);
    debug_assert_eq!(points.len() as u128, needed);
    Ok(TupleSet {
        field: field.clone(),
        n,
        k,
        points,
    })
}

fn extend_tuples(
    field: &Field,
    coords: &[Vec<u32>],
    n: usize,
    k: usize,
    prefix: &mut Vec<u32>,
    out: &mut Vec<Vec<u32>>,
) {
    if prefix.len() == k {
        out.push(prefix.clone());
        return;
    }
    let q = field.order();
    // Mark the span of the current prefix.
    let mut in_span = vec![false; coords.len()];
    let mut combos = vec![vec![0u32; n]];
    for &v in prefix.iter() {
        let mut next = Vec::with_capacity(combos.len() * q as usize);
        for c in &combos {
            for a in field.elements() {
                next.push(
                    c.iter()
                        .zip(&coords[v as usize])
                        .map(|(&x, &y)| field.add(x, field.mul(a, y)))
                        .collect(),
                );
            }
        }
        combos = next;
    }
    for c in &combos {
        in_span[vector_to_index(c, q) as usize] = true;
    }
    for v in 0..coords.len() as u32 {
        if !in_span[v as usize] {
            prefix.push(v);
            extend_tuples(field, coords, n, k, prefix, out);
            prefix.pop();
        }
    }
}

fn index_to_vector(mut i: u32, q: u32, n: usize) -> Vec<u32> {
    let mut v = vec![0; n];
    for slot in v.iter_mut().rev() {
        *slot = i % q;
        i /= q;
    }
    v
}

fn vector_to_index(v: &[u32], q: u32) -> u32 {
    v.iter().fold(0, |acc, &x| acc * q + x)
}

impl TupleSet {
    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn tuple_len(&self) -> usize {
        self.k
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Vector indices of the tuple at `idx`.
    pub fn point(&self, idx: usize) -> &[u32] {
        &self.points[idx]
    }

    /// Coordinates of the vectors of the tuple at `idx`.
    pub fn vectors(&self, idx: usize) -> Vec<Vec<u32>> {
        let q = self.field.order();
        self.points[idx]
            .iter()
            .map(|&v| index_to_vector(v, q, self.n))
            .collect()
    }

    pub fn index_of_vectors(&self, vectors: &[Vec<u32>]) -> Option<usize> {
        let q = self.field.order();
        let key: Vec<u32> = vectors.iter().map(|v| vector_to_index(v, q)).collect();
        self.points.binary_search(&key).ok()
    }

    /// Keeps only the listed points, preserving order.
    pub fn restrict(&self, keep: &[usize]) -> Self {
        let mut keep = keep.to_vec();
        keep.sort_unstable();
        keep.dedup();
        Self {
            field: self.field.clone(),
            n: self.n,
            k: self.k,
            points: keep.iter().map(|&i| self.points[i].clone()).collect(),
        }
    }
}

/// The permutation of tuple indices induced by `(v_1..v_k) ↦ (Av_1..Av_k)`.
pub fn perm_from_matrix(mat: &FqMatrix, points: &TupleSet) -> Result<Permutation> {
    if mat.dim() != points.dim() {
        return Err(Error::DimensionMismatch {
            expected: points.dim(),
            got: mat.dim(),
        });
    }
    let mut images = Vec::with_capacity(points.len());
    for idx in 0..points.len() {
        let image: Vec<Vec<u32>> = points.vectors(idx).iter().map(|v| mat.apply(v)).collect();
        let target = points.index_of_vectors(&image).ok_or(Error::NotClosed(idx))?;
        images.push(target as u32);
    }
    Permutation::new(images)
}
