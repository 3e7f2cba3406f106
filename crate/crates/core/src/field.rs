//! Exact arithmetic over a prime field F_q, vectors in F_q^n and n x n matrices.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Residue in `[0, q)`.
pub type Scalar = u32;

/// Index of a vertex of F_q^n under positional base-q encoding
/// (coordinate 0 least significant).
pub type VertexId = usize;

/// The prime field F_q with a precomputed inverse table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeField {
    q: u32,
    inverses: Vec<u32>,
}

pub fn is_prime(m: u64) -> bool {
    if m < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeField {
    pub fn new(q: u32) -> Result<Self> {
        if !is_prime(q as u64) {
            return Err(Error::InvalidParameter(format!("q = {q} is not prime")));
        }
        let mut inverses = vec![0; q as usize];
        for a in 1..q {
            // Fermat: a^(q-2)
            inverses[a as usize] = pow_mod(a, q - 2, q);
        }
        Ok(Self { q, inverses })
    }

    #[inline]
    pub fn order(&self) -> u32 {
        self.q
    }

    #[inline]
    pub fn add(&self, a: Scalar, b: Scalar) -> Scalar {
        let s = a + b;
        if s >= self.q {
            s - self.q
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: Scalar, b: Scalar) -> Scalar {
        if a >= b {
            a - b
        } else {
            a + self.q - b
        }
    }

    #[inline]
    pub fn neg(&self, a: Scalar) -> Scalar {
        if a == 0 {
            0
        } else {
            self.q - a
        }
    }

    #[inline]
    pub fn mul(&self, a: Scalar, b: Scalar) -> Scalar {
        ((a as u64 * b as u64) % self.q as u64) as u32
    }

    /// Multiplicative inverse; `None` for zero.
    #[inline]
    pub fn inv(&self, a: Scalar) -> Option<Scalar> {
        if a == 0 {
            None
        } else {
            Some(self.inverses[a as usize])
        }
    }

    pub fn pow(&self, a: Scalar, e: u64) -> Scalar {
        pow_mod(a, e as u32, self.q)
    }

    /// Smallest positive primitive root mod q.
    pub fn primitive_root(&self) -> Scalar {
        if self.q == 2 {
            return 1;
        }
        let order = self.q - 1;
        let mut factors = Vec::new();
        let mut m = order;
        let mut d = 2;
        while d * d <= m {
            if m % d == 0 {
                factors.push(d);
                while m % d == 0 {
                    m /= d;
                }
            }
            d += 1;
        }
        if m > 1 {
            factors.push(m);
        }
        (2..self.q)
            .find(|&g| factors.iter().all(|&p| pow_mod(g, order / p, self.q) != 1))
            .expect("every prime field has a primitive root")
    }

    /// Nonzero elements 1..q in increasing order.
    pub fn units(&self) -> impl Iterator<Item = Scalar> {
        1..self.q
    }
}

fn pow_mod(base: u32, mut e: u32, q: u32) -> u32 {
    let q = q as u64;
    let mut acc = 1u64 % q;
    let mut b = base as u64 % q;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % q;
        }
        b = b * b % q;
        e >>= 1;
    }
    acc as u32
}

/// Element of F_q^n.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct FieldVector(pub Vec<Scalar>);

impl FieldVector {
    pub fn zero(n: usize) -> Self {
        Self(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        Self(v)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn coords(&self) -> &[Scalar] {
        &self.0
    }

    pub fn add(&self, f: &PrimeField, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(&a, &b)| f.add(a, b)).collect())
    }

    pub fn sub(&self, f: &PrimeField, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(&a, &b)| f.sub(a, b)).collect())
    }

    pub fn scale(&self, f: &PrimeField, lambda: Scalar) -> Self {
        Self(self.0.iter().map(|&a| f.mul(a, lambda)).collect())
    }

    pub fn dot(&self, f: &PrimeField, other: &Self) -> Scalar {
        self.0
            .iter()
            .zip(&other.0)
            .fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
    }
}

/// The vector space F_q^n together with its vertex indexing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Space {
    field: PrimeField,
    n: usize,
    size: usize,
}

impl Space {
    pub fn new(q: u32, n: usize) -> Result<Self> {
        let field = PrimeField::new(q)?;
        if n == 0 {
            return Err(Error::InvalidParameter("n must be positive".into()));
        }
        let size = (q as usize)
            .checked_pow(n as u32)
            .filter(|&s| s <= u32::MAX as usize)
            .ok_or_else(|| Error::InvalidParameter(format!("q^n = {q}^{n} too large")))?;
        Ok(Self { field, n, size })
    }

    #[inline]
    pub fn field(&self) -> &PrimeField {
        &self.field
    }

    #[inline]
    pub fn q(&self) -> u32 {
        self.field.q
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    /// Number of vectors, q^n.
    #[inline]
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn encode(&self, v: &FieldVector) -> Result<VertexId> {
        if v.len() != self.n {
            return Err(Error::InvalidParameter(format!(
                "vector has length {}, expected {}",
                v.len(),
                self.n
            )));
        }
        let q = self.q();
        let mut idx = 0usize;
        for &c in v.0.iter().rev() {
            if c >= q {
                return Err(Error::InvalidParameter(format!("coordinate {c} not below q = {q}")));
            }
            idx = idx * q as usize + c as usize;
        }
        Ok(idx)
    }

    pub fn decode(&self, i: VertexId) -> Result<FieldVector> {
        if i >= self.size {
            return Err(Error::VertexOutOfRange { index: i, size: self.size });
        }
        Ok(self.decode_unchecked(i))
    }

    pub(crate) fn decode_unchecked(&self, mut i: VertexId) -> FieldVector {
        let q = self.q() as usize;
        let mut coords = Vec::with_capacity(self.n);
        for _ in 0..self.n {
            coords.push((i % q) as u32);
            i /= q;
        }
        FieldVector(coords)
    }

    pub(crate) fn encode_unchecked(&self, v: &[Scalar]) -> VertexId {
        let q = self.q() as usize;
        v.iter().rev().fold(0, |acc, &c| acc * q + c as usize)
    }

    /// Index of `a + b`.
    pub fn add_idx(&self, mut a: VertexId, mut b: VertexId) -> VertexId {
        let q = self.q() as usize;
        let (mut out, mut place) = (0, 1);
        for _ in 0..self.n {
            let mut d = a % q + b % q;
            if d >= q {
                d -= q;
            }
            out += d * place;
            place *= q;
            a /= q;
            b /= q;
        }
        out
    }

    /// Index of `a - b`.
    pub fn sub_idx(&self, mut a: VertexId, mut b: VertexId) -> VertexId {
        let q = self.q() as usize;
        let (mut out, mut place) = (0, 1);
        for _ in 0..self.n {
            let d = (a % q + q - b % q) % q;
            out += d * place;
            place *= q;
            a /= q;
            b /= q;
        }
        out
    }

    /// Index of `lambda * a`.
    pub fn scale_idx(&self, mut a: VertexId, lambda: Scalar) -> VertexId {
        let q = self.q() as usize;
        let (mut out, mut place) = (0, 1);
        for _ in 0..self.n {
            out += (a % q * lambda as usize % q) * place;
            place *= q;
            a /= q;
        }
        out
    }

    /// Last coordinate of the vector with index `a`.
    #[inline]
    pub fn last_coord(&self, a: VertexId) -> Scalar {
        (a / (self.size / self.q() as usize)) as Scalar
    }

    /// Vertices of the hyperplane H_0 = {x : x_{n-1} = 0}, which are exactly the indices below q^{n-1}.
    pub fn h0_indices(&self) -> std::ops::Range<VertexId> {
        0..self.size / self.q() as usize
    }
}

/// Square matrix over F_q, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Vec<Scalar>>", into = "Vec<Vec<Scalar>>")]
pub struct Matrix {
    n: usize,
    entries: Vec<Scalar>,
}

impl TryFrom<Vec<Vec<Scalar>>> for Matrix {
    type Error = Error;

    fn try_from(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        Matrix::from_rows(rows)
    }
}

impl From<Matrix> for Vec<Vec<Scalar>> {
    fn from(m: Matrix) -> Self {
        m.rows()
    }
}

impl Matrix {
    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidParameter("matrix must be square".into()));
        }
        Ok(Self { n, entries: rows.into_iter().flatten().collect() })
    }

    pub fn zero(n: usize) -> Self {
        Self { n, entries: vec![0; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, 1)
    }

    pub fn scalar(n: usize, lambda: Scalar) -> Self {
        let mut m = Self::zero(n);
        for i in 0..n {
            m.entries[i * n + i] = lambda;
        }
        m
    }

    pub fn diag(d: &[Scalar]) -> Self {
        let mut m = Self::zero(d.len());
        for (i, &x) in d.iter().enumerate() {
            m.entries[i * d.len() + i] = x;
        }
        m
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Scalar {
        self.entries[r * self.n + c]
    }

    pub fn rows(&self) -> Vec<Vec<Scalar>> {
        self.entries.chunks(self.n.max(1)).map(|r| r.to_vec()).take(self.n).collect()
    }

    /// `Some(lambda)` when the matrix is lambda * I.
    pub fn as_scalar(&self) -> Option<Scalar> {
        let lambda = self.entries.first().copied()?;
        let is_scalar = (0..self.n)
            .all(|r| (0..self.n).all(|c| self.get(r, c) == if r == c { lambda } else { 0 }));
        is_scalar.then_some(lambda)
    }

    pub fn apply(&self, f: &PrimeField, v: &FieldVector) -> FieldVector {
        FieldVector(
            self.entries
                .chunks(self.n)
                .map(|row| row.iter().zip(&v.0).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b))))
                .collect(),
        )
    }

    pub fn mul(&self, f: &PrimeField, other: &Matrix) -> Matrix {
        let n = self.n;
        let mut out = Matrix::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let e = &mut out.entries[i * n + j];
                    *e = f.add(*e, f.mul(a, other.get(k, j)));
                }
            }
        }
        out
    }

    pub fn sub(&self, f: &PrimeField, other: &Matrix) -> Matrix {
        Matrix {
            n: self.n,
            entries: self.entries.iter().zip(&other.entries).map(|(&a, &b)| f.sub(a, b)).collect(),
        }
    }

    pub fn rank(&self, f: &PrimeField) -> usize {
        let mut rows = self.rows();
        row_reduce(f, &mut rows, self.n).len()
    }

    pub fn is_invertible(&self, f: &PrimeField) -> bool {
        self.rank(f) == self.n
    }

    /// Basis of the right null space {v : M v = 0}.
    pub fn kernel(&self, f: &PrimeField) -> Vec<FieldVector> {
        nullspace(f, &self.rows(), self.n)
    }

    pub fn inverse(&self, f: &PrimeField) -> Result<Matrix> {
        let n = self.n;
        // Gauss-Jordan on [M | I]
        let mut aug: Vec<Vec<Scalar>> = (0..n)
            .map(|i| {
                let mut row = self.entries[i * n..(i + 1) * n].to_vec();
                row.extend((0..n).map(|j| u32::from(i == j)));
                row
            })
            .collect();
        for col in 0..n {
            let pivot = (col..n).find(|&r| aug[r][col] != 0).ok_or(Error::SingularMatrix)?;
            aug.swap(col, pivot);
            let inv = f.inv(aug[col][col]).expect("pivot is nonzero");
            for x in aug[col].iter_mut() {
                *x = f.mul(*x, inv);
            }
            for r in 0..n {
                if r != col && aug[r][col] != 0 {
                    let factor = aug[r][col];
                    for c in 0..2 * n {
                        let t = f.mul(factor, aug[col][c]);
                        aug[r][c] = f.sub(aug[r][c], t);
                    }
                }
            }
        }
        Ok(Matrix { n, entries: aug.into_iter().flat_map(|r| r[n..].to_vec()).collect() })
    }
}

/// Reduced row echelon form in place; returns the pivot columns. Rows past the rank are dropped.
pub(crate) fn row_reduce(f: &PrimeField, rows: &mut Vec<Vec<Scalar>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| rows[i][col] != 0) else {
            continue;
        };
        rows.swap(r, p);
        let inv = f.inv(rows[r][col]).expect("pivot is nonzero");
        for x in rows[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        for i in 0..rows.len() {
            if i != r && rows[i][col] != 0 {
                let factor = rows[i][col];
                for c in col..ncols {
                    let t = f.mul(factor, rows[r][c]);
                    rows[i][c] = f.sub(rows[i][c], t);
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    rows.truncate(r);
    pivots
}

/// Null space basis of an arbitrary `rows.len() x ncols` system.
pub(crate) fn nullspace(f: &PrimeField, rows: &[Vec<Scalar>], ncols: usize) -> Vec<FieldVector> {
    let mut rref = rows.to_vec();
    let pivots = row_reduce(f, &mut rref, ncols);
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0; ncols];
            v[fc] = 1;
            for (row, &pc) in rref.iter().zip(&pivots) {
                v[pc] = f.neg(row[fc]);
            }
            FieldVector(v)
        })
        .collect()
}

/// Rank of a list of vectors.
pub fn span_rank(f: &PrimeField, vectors: &[FieldVector], n: usize) -> usize {
    let mut rows: Vec<Vec<Scalar>> = vectors.iter().map(|v| v.0.clone()).collect();
    row_reduce(f, &mut rows, n).len()
}

/// Number of 1-dimensional subspaces of a d-dimensional space over F_q: (q^d - 1)/(q - 1).
pub fn gaussian_binomial_1(d: u32, q: u32) -> u128 {
    (0..d).map(|i| (q as u128).pow(i)).sum()
}

/// |GL(n, q)| = prod_{i<n} (q^n - q^i).
pub fn gl_order(q: u32, n: u32) -> num_bigint::BigUint {
    use num_bigint::BigUint;
    let qn = BigUint::from(q).pow(n);
    (0..n).fold(BigUint::from(1u32), |acc, i| acc * (&qn - BigUint::from(q).pow(i)))
}

/// Invertible n x n matrices over F_q in lexicographic order of their row-major entries.
pub struct GeneralLinear<'a> {
    field: &'a PrimeField,
    n: usize,
    counter: Vec<Scalar>,
    done: bool,
}

pub fn enumerate_gl(field: &PrimeField, n: usize, budget: u64) -> Result<GeneralLinear<'_>> {
    let total = (field.order() as u128).checked_pow((n * n) as u32);
    match total {
        Some(t) if t <= budget as u128 => {}
        _ => {
            return Err(Error::BudgetExceeded(format!(
                "enumerating {}^{} matrices exceeds budget {budget}",
                field.order(),
                n * n
            )))
        }
    }
    Ok(GeneralLinear { field, n, counter: vec![0; n * n], done: false })
}

impl Iterator for GeneralLinear<'_> {
    type Item = Matrix;

    fn next(&mut self) -> Option<Matrix> {
        let q = self.field.order();
        while !self.done {
            let m = Matrix { n: self.n, entries: self.counter.clone() };
            // odometer, last entry fastest
            let mut i = self.counter.len();
            loop {
                if i == 0 {
                    self.done = true;
                    break;
                }
                i -= 1;
                self.counter[i] += 1;
                if self.counter[i] < q {
                    break;
                }
                self.counter[i] = 0;
            }
            if m.is_invertible(self.field) {
                return Some(m);
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> PrimeField {
        PrimeField::new(3).unwrap()
    }

    #[test]
    fn encode_examples() {
        let s = Space::new(3, 2).unwrap();
        assert_eq!(s.encode(&FieldVector(vec![0, 0])).unwrap(), 0);
        assert_eq!(s.encode(&FieldVector(vec![1, 2])).unwrap(), 7);
        let s5 = Space::new(5, 3).unwrap();
        assert_eq!(s5.decode(124).unwrap(), FieldVector(vec![4, 4, 4]));
        assert!(matches!(s5.decode(125), Err(Error::VertexOutOfRange { .. })));
    }

    #[test]
    fn round_trip_small_spaces() {
        for q in [2, 3, 5] {
            for n in 1..=4 {
                let s = Space::new(q, n).unwrap();
                for i in 0..s.size() {
                    assert_eq!(s.encode(&s.decode(i).unwrap()).unwrap(), i);
                }
            }
        }
    }

    #[test]
    fn rejects_composite_modulus() {
        assert!(PrimeField::new(9).is_err());
        assert!(PrimeField::new(1).is_err());
    }

    #[test]
    fn index_arithmetic_matches_vectors() {
        let s = Space::new(5, 3).unwrap();
        let f = s.field().clone();
        for a in (0..s.size()).step_by(7) {
            for b in (0..s.size()).step_by(11) {
                let (va, vb) = (s.decode(a).unwrap(), s.decode(b).unwrap());
                assert_eq!(s.add_idx(a, b), s.encode(&va.add(&f, &vb)).unwrap());
                assert_eq!(s.sub_idx(a, b), s.encode(&va.sub(&f, &vb)).unwrap());
            }
            assert_eq!(s.scale_idx(a, 3), s.encode(&s.decode(a).unwrap().scale(&f, 3)).unwrap());
        }
    }

    #[test]
    fn matrix_examples() {
        let f = f3();
        let v = FieldVector(vec![1, 1]);
        assert_eq!(Matrix::identity(2).apply(&f, &v), v);
        let d = Matrix::diag(&[2, 1]);
        assert_eq!(d.apply(&f, &v), FieldVector(vec![2, 1]));
        assert_eq!(d.inverse(&f).unwrap(), Matrix::diag(&[2, 1]));
        assert_eq!(d.mul(&f, &d.inverse(&f).unwrap()), Matrix::identity(2));
        assert!(matches!(Matrix::zero(2).inverse(&f), Err(Error::SingularMatrix)));
    }

    #[test]
    fn kernel_examples() {
        let f = f3();
        assert_eq!(Matrix::zero(3).kernel(&f).len(), 3);
        let m = Matrix::diag(&[2, 1]).sub(&f, &Matrix::identity(2));
        assert_eq!(m.kernel(&f), vec![FieldVector(vec![0, 1])]);
        assert_eq!(m.rank(&f), 1);
        assert!(Matrix::diag(&[2, 1]).kernel(&f).is_empty());
        assert_eq!(Matrix::diag(&[2, 1]).rank(&f), 2);
    }

    #[test]
    fn gaussian_binomial_examples() {
        assert_eq!(gaussian_binomial_1(0, 7), 0);
        assert_eq!(gaussian_binomial_1(2, 3), 4);
        assert_eq!(gaussian_binomial_1(1, 11), 1);
    }

    #[test]
    fn gl_counts() {
        let f2 = PrimeField::new(2).unwrap();
        assert_eq!(enumerate_gl(&f2, 1, 1 << 20).unwrap().count(), 1);
        let f = f3();
        assert_eq!(enumerate_gl(&f, 2, 1 << 20).unwrap().count(), 48);
        assert_eq!(enumerate_gl(&f, 3, 1 << 20).unwrap().count(), 11232);
        assert_eq!(gl_order(3, 3), 11232u32.into());
        assert!(matches!(enumerate_gl(&f, 3, 1000), Err(Error::BudgetExceeded(_))));
    }

    #[test]
    fn primitive_roots() {
        for (q, g) in [(3, 2), (5, 2), (7, 3), (11, 2), (13, 2), (17, 3), (23, 5)] {
            assert_eq!(PrimeField::new(q).unwrap().primitive_root(), g);
        }
    }

    #[test]
    fn matrix_json_is_row_major() {
        let m = Matrix::from_rows(vec![vec![1, 2], vec![0, 1]]).unwrap();
        assert_eq!(serde_json::to_string(&m).unwrap(), "[[1,2],[0,1]]");
        let back: Matrix = serde_json::from_str("[[1,2],[0,1]]").unwrap();
        assert_eq!(back, m);
    }
}
