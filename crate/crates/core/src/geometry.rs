//! Lines through the origin of F_q^n, directions determined by point sets,
//! and recognition of affine hyperplanes.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{nullspace, span_rank, FieldVector, PrimeField, Scalar, Space, VertexId};

/// Canonical representative of a line through the origin: the last nonzero
/// coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ProjPoint(FieldVector);

impl ProjPoint {
    pub fn new(f: &PrimeField, v: &FieldVector) -> Result<Self> {
        let last = v
            .0
            .iter()
            .rev()
            .copied()
            .find(|&c| c != 0)
            .ok_or_else(|| Error::InvalidParameter("zero vector spans no line".into()))?;
        let inv = f.inv(last).expect("nonzero");
        Ok(Self(v.scale(f, inv)))
    }

    /// Accepts `v` only if it is already canonical.
    pub fn from_canonical(f: &PrimeField, v: FieldVector) -> Result<Self> {
        let p = Self::new(f, &v)?;
        if p.0 != v {
            return Err(Error::InvalidParameter(format!("{:?} is not a canonical line representative", v.0)));
        }
        Ok(p)
    }

    pub fn rep(&self) -> &FieldVector {
        &self.0
    }

    /// Whether the line meets H_0 only at the origin.
    pub fn avoids_h0(&self) -> bool {
        self.0 .0.last().is_some_and(|&c| c != 0)
    }
}

/// Canonical projective index of a nonzero vertex index.
pub(crate) fn canonical_index(space: &Space, v: VertexId) -> VertexId {
    let coords = space.decode_unchecked(v);
    let last = coords.0.iter().rev().copied().find(|&c| c != 0).expect("nonzero vector");
    space.scale_idx(v, space.field().inv(last).expect("nonzero"))
}

/// The nonzero points `{lambda * rep : lambda != 0}` of a line.
pub fn line_points(f: &PrimeField, p: &ProjPoint) -> Vec<FieldVector> {
    f.units().map(|l| p.0.scale(f, l)).collect()
}

/// The `q^{n-1}` lines meeting H_0 only at the origin, sorted lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LineUniverse {
    pub q: u32,
    pub n: usize,
    pub lines: Vec<ProjPoint>,
}

impl LineUniverse {
    pub fn new(space: &Space) -> Result<Self> {
        let (q, n) = (space.q(), space.dim());
        if n < 2 {
            return Err(Error::InvalidParameter("line universe needs n >= 2".into()));
        }
        let count = space.size() / q as usize;
        let lines = (0..count)
            .map(|i| {
                // coordinate 0 most significant gives lexicographic order
                let mut coords = vec![0; n];
                let mut rest = i;
                for c in coords[..n - 1].iter_mut().rev() {
                    *c = (rest % q as usize) as Scalar;
                    rest /= q as usize;
                }
                coords[n - 1] = 1;
                ProjPoint(FieldVector(coords))
            })
            .collect();
        Ok(Self { q, n, lines })
    }

    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }

    /// Position of a line in the canonical order, if it belongs to the universe.
    pub fn position(&self, p: &ProjPoint) -> Option<usize> {
        let c = &p.0 .0;
        if c.len() != self.n || c[self.n - 1] != 1 || c.iter().any(|&x| x >= self.q) {
            return None;
        }
        Some(c[..self.n - 1].iter().fold(0, |acc, &x| acc * self.q as usize + x as usize))
    }
}

/// A subset of F_q^n, kept as sorted vertex indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct PointSet(Vec<VertexId>);

impl PointSet {
    pub fn new(members: impl IntoIterator<Item = VertexId>) -> Self {
        let mut v: Vec<_> = members.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Self(v)
    }

    pub fn from_vectors(space: &Space, vs: &[FieldVector]) -> Result<Self> {
        Ok(Self::new(vs.iter().map(|v| space.encode(v)).collect::<Result<Vec<_>>>()?))
    }

    pub fn members(&self) -> &[VertexId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn to_vectors(&self, space: &Space) -> Vec<FieldVector> {
        self.0.iter().map(|&i| space.decode_unchecked(i)).collect()
    }
}

/// Canonical direction of `u - v`.
pub fn direction(f: &PrimeField, u: &FieldVector, v: &FieldVector) -> Result<ProjPoint> {
    if u == v {
        return Err(Error::InvalidParameter("direction of a point with itself".into()));
    }
    ProjPoint::new(f, &u.sub(f, v))
}

/// Directions determined by `points`, as canonical vertex indices.
pub(crate) fn direction_indices(space: &Space, points: &[VertexId]) -> BTreeSet<VertexId> {
    let mut out = BTreeSet::new();
    for (i, &u) in points.iter().enumerate() {
        for &v in &points[i + 1..] {
            out.insert(canonical_index(space, space.sub_idx(u, v)));
        }
    }
    out
}

/// All directions `direction(u, v)` for distinct `u, v` in `points` (full pair scan).
pub fn directions_determined(space: &Space, points: &PointSet) -> Result<BTreeSet<ProjPoint>> {
    if points.len() < 2 {
        return Err(Error::InvalidParameter("a point set needs at least two points to determine directions".into()));
    }
    Ok(direction_indices(space, points.members())
        .into_iter()
        .map(|i| ProjPoint(space.decode_unchecked(i)))
        .collect())
}

/// Upper bound on the number of directions a hyperplane-like set may
/// determine: `(q+3)/2 * q^{n-2} + q^{n-3} + ... + q`.
pub fn direction_threshold(q: u32, n: usize) -> Result<u128> {
    if q % 2 == 0 || !crate::field::is_prime(q as u64) {
        return Err(Error::InvalidParameter(format!("q = {q} must be an odd prime")));
    }
    if n < 3 {
        return Err(Error::InvalidParameter("direction threshold needs n >= 3".into()));
    }
    let q = q as u128;
    let head = (q + 3) / 2 * q.pow(n as u32 - 2);
    let tail: u128 = (1..=n as u32 - 3).map(|i| q.pow(i)).sum();
    Ok(head + tail)
}

/// Number of affine lines meeting `points` in at least two points.
pub fn affine_lines_meeting(space: &Space, points: &PointSet) -> u128 {
    let f = space.field();
    let mut total = 0u128;
    for d in direction_indices(space, points.members()) {
        // points on a common line in direction d share the same coset of span(d)
        let dv = space.decode_unchecked(d);
        let pivot = dv.0.iter().rposition(|&c| c != 0).expect("nonzero");
        let mut counts: HashMap<VertexId, u32> = HashMap::new();
        for &u in points.members() {
            // reduce u to the coset representative with zero pivot coordinate
            let uv = space.decode_unchecked(u);
            let t = uv.0[pivot];
            let key = space.encode_unchecked(&uv.sub(f, &dv.scale(f, t)).0);
            *counts.entry(key).or_default() += 1;
        }
        total += counts.values().filter(|&&c| c >= 2).count() as u128;
    }
    total
}

/// An affine hyperplane `{x : normal . x = offset}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AffineHyperplane {
    pub normal: ProjPoint,
    pub offset: Scalar,
}

/// Recognizes `points` as an affine hyperplane.
///
/// Requires `|C| = q^{n-1}`; translating by the smallest member, the
/// differences must span an `(n-1)`-dimensional subspace `W`, and then `C`
/// equals the coset `c0 + W` by counting.
pub fn is_affine_hyperplane(space: &Space, points: &PointSet) -> Option<AffineHyperplane> {
    let f = space.field();
    let n = space.dim();
    if points.len() != space.size() / space.q() as usize || points.is_empty() {
        return None;
    }
    let base = space.decode_unchecked(points.members()[0]);
    let diffs: Vec<FieldVector> = points.members()[1..]
        .iter()
        .map(|&u| space.decode_unchecked(u).sub(f, &base))
        .collect();
    if span_rank(f, &diffs, n) != n - 1 {
        return None;
    }
    let rows: Vec<Vec<Scalar>> = diffs.iter().map(|d| d.0.clone()).collect();
    let kernel = nullspace(f, &rows, n);
    debug_assert_eq!(kernel.len(), 1);
    let normal = ProjPoint::new(f, &kernel[0]).ok()?;
    let offset = normal.0.dot(f, &base);
    Some(AffineHyperplane { normal, offset })
}

/// The `q` parallel hyperplanes `{x : normal . x = c}`, indexed by `c`.
pub fn hyperplane_partition(space: &Space, normal: &ProjPoint) -> Vec<PointSet> {
    let f = space.field();
    let mut classes = vec![Vec::new(); space.q() as usize];
    for i in 0..space.size() {
        classes[normal.0.dot(f, &space.decode_unchecked(i)) as usize].push(i);
    }
    classes.into_iter().map(PointSet).collect()
}

pub(crate) fn check_partition(space: &Space, classes: &[PointSet]) -> Result<()> {
    let mut seen = vec![false; space.size()];
    for c in classes {
        for &v in c.members() {
            if v >= space.size() {
                return Err(Error::VertexOutOfRange { index: v, size: space.size() });
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::NotAPartition(format!("vertex {v} appears twice")));
            }
        }
    }
    if let Some(v) = seen.iter().position(|&s| !s) {
        return Err(Error::NotAPartition(format!("vertex {v} is uncovered")));
    }
    Ok(())
}

/// Shared normal direction when every class is an affine hyperplane with the same normal.
pub fn common_hyperplane_partition(space: &Space, classes: &[PointSet]) -> Result<Option<ProjPoint>> {
    check_partition(space, classes)?;
    let mut normal: Option<ProjPoint> = None;
    for c in classes.iter().filter(|c| !c.is_empty()) {
        let Some(h) = is_affine_hyperplane(space, c) else {
            return Ok(None);
        };
        match &normal {
            None => normal = Some(h.normal),
            Some(prev) if *prev != h.normal => return Ok(None),
            Some(_) => {}
        }
    }
    Ok(normal)
}
