//! Permutations of the vertex set, stabilizer chains, and the affine group
//! `K = F_q^n x| F_q^*` of maps `x -> lambda * x + b`.

use std::collections::{HashSet, VecDeque};

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldVector, Scalar, Space, VertexId};
use crate::geometry::{check_partition, PointSet};

/// Point images: `images[i]` is the image of point `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Self { images: (0..degree as u32).collect() }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let mut seen = vec![false; images.len()];
        for &i in &images {
            match seen.get_mut(i as usize) {
                Some(s) if !*s => *s = true,
                _ => return Err(Error::InvalidParameter("images do not form a bijection".into())),
            }
        }
        Ok(Self { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        Self { images }
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x] as usize
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// `self` first, then `other`: `x -> other(self(x))`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation { images: self.images.iter().map(|&i| other.images[i as usize]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    pub fn first_moved(&self) -> Option<usize> {
        self.images.iter().enumerate().position(|(i, &j)| i as u32 != j)
    }

    /// Whether every class is mapped onto itself.
    pub fn fixes_classes(&self, class_of: &[u32]) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| class_of[i] == class_of[j as usize])
    }
}

#[derive(Clone, Debug)]
struct Level {
    base: usize,
    // indices into `strong` of generators fixing all earlier base points
    gens: Vec<usize>,
    orbit: Vec<usize>,
    transversal: Vec<Option<Permutation>>,
    inverse_transversal: Vec<Option<Permutation>>,
    checked: HashSet<(usize, usize)>,
}

impl Level {
    fn new(base: usize, degree: usize) -> Self {
        let mut transversal = vec![None; degree];
        transversal[base] = Some(Permutation::identity(degree));
        let inverse_transversal = transversal.clone();
        Self { base, gens: Vec::new(), orbit: vec![base], transversal, inverse_transversal, checked: HashSet::new() }
    }
}

/// A permutation group held as a base and strong generating set.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    strong: Vec<Permutation>,
    levels: Vec<Level>,
}

#[derive(Serialize)]
struct PermGroupJson<'a> {
    generators: &'a [Permutation],
    order: String,
}

impl PermGroup {
    pub fn trivial(degree: usize) -> Self {
        Self { degree, generators: Vec::new(), strong: Vec::new(), levels: Vec::new() }
    }

    /// Schreier-Sims closure of `gens`.
    pub fn new(degree: usize, gens: &[Permutation]) -> Result<Self> {
        Self::with_base(degree, &[], gens)
    }

    /// Like [`PermGroup::new`] but the base starts with `base_prefix`.
    pub fn with_base(degree: usize, base_prefix: &[usize], gens: &[Permutation]) -> Result<Self> {
        let mut g = Self::trivial(degree);
        for &b in base_prefix {
            if b >= degree {
                return Err(Error::VertexOutOfRange { index: b, size: degree });
            }
            g.levels.push(Level::new(b, degree));
        }
        for p in gens {
            g.add_generator(p.clone())?;
        }
        Ok(g)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn strong_generators(&self) -> &[Permutation] {
        &self.strong
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base).collect()
    }

    /// Orbit of the `i`-th base point under the pointwise stabilizer of the earlier ones.
    pub fn level_orbit(&self, i: usize) -> &[usize] {
        &self.levels[i].orbit
    }

    pub(crate) fn level_contains(&self, i: usize, point: usize) -> bool {
        self.levels[i].transversal[point].is_some()
    }

    pub fn order(&self) -> BigUint {
        self.levels.iter().fold(BigUint::from(1u32), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    pub fn is_trivial(&self) -> bool {
        self.strong.is_empty()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        p.degree() == self.degree && self.sift(p.clone(), 0).0.is_identity()
    }

    /// Adds a generator and restores the stabilizer chain.
    /// Returns whether the group grew.
    pub fn add_generator(&mut self, p: Permutation) -> Result<bool> {
        if p.degree() != self.degree {
            return Err(Error::InvalidParameter(format!(
                "permutation of degree {} in group of degree {}",
                p.degree(),
                self.degree
            )));
        }
        if self.contains(&p) {
            return Ok(false);
        }
        self.generators.push(p.clone());
        self.add_strong(p);
        self.complete();
        Ok(true)
    }

    fn sift(&self, mut h: Permutation, start: usize) -> (Permutation, usize) {
        for (l, level) in self.levels.iter().enumerate().skip(start) {
            let beta = h.apply(level.base);
            match &level.inverse_transversal[beta] {
                Some(uinv) => h = h.then(uinv),
                None => return (h, l),
            }
        }
        let depth = self.levels.len();
        (h, depth)
    }

    fn add_strong(&mut self, g: Permutation) {
        debug_assert!(!g.is_identity());
        if self.levels.iter().all(|l| g.apply(l.base) == l.base) {
            let b = g.first_moved().expect("non-identity");
            self.levels.push(Level::new(b, self.degree));
        }
        let idx = self.strong.len();
        self.strong.push(g);
        for i in 0..self.levels.len() {
            if i > 0 {
                let prev = self.levels[i - 1].base;
                if self.strong[idx].apply(prev) != prev {
                    break;
                }
            }
            self.levels[i].gens.push(idx);
            self.extend_orbit(i);
        }
    }

    fn extend_orbit(&mut self, i: usize) {
        let level = &mut self.levels[i];
        let mut queue: VecDeque<usize> = level.orbit.iter().copied().collect();
        while let Some(gamma) = queue.pop_front() {
            for &s in &level.gens {
                let sg = &self.strong[s];
                let image = sg.apply(gamma);
                if level.transversal[image].is_none() {
                    let u = level.transversal[gamma].as_ref().expect("orbit point").then(sg);
                    level.inverse_transversal[image] = Some(u.inverse());
                    level.transversal[image] = Some(u);
                    level.orbit.push(image);
                    queue.push_back(image);
                }
            }
        }
    }

    fn complete(&mut self) {
        let mut i = self.levels.len() as isize - 1;
        while i >= 0 {
            let li = i as usize;
            let mut found = None;
            let mut pos = 0;
            'scan: while pos < self.levels[li].orbit.len() {
                let beta = self.levels[li].orbit[pos];
                for gi in 0..self.levels[li].gens.len() {
                    let s = self.levels[li].gens[gi];
                    if self.levels[li].checked.contains(&(beta, s)) {
                        continue;
                    }
                    let level = &self.levels[li];
                    let sg = &self.strong[s];
                    let target = sg.apply(beta);
                    let schreier = level.transversal[beta]
                        .as_ref()
                        .expect("orbit point")
                        .then(sg)
                        .then(level.inverse_transversal[target].as_ref().expect("orbit closed"));
                    let (h, drop) = self.sift(schreier, li + 1);
                    if h.is_identity() {
                        self.levels[li].checked.insert((beta, s));
                    } else {
                        found = Some((h, drop));
                        break 'scan;
                    }
                }
                pos += 1;
            }
            match found {
                Some((h, drop)) => {
                    self.add_strong(h);
                    i = drop.min(self.levels.len() - 1) as isize;
                }
                None => i -= 1,
            }
        }
    }

    /// Enumerates all elements (small groups only).
    pub fn elements(&self) -> Vec<Permutation> {
        let mut acc = vec![Permutation::identity(self.degree)];
        for level in self.levels.iter().rev() {
            let mut next = Vec::with_capacity(acc.len() * level.orbit.len());
            for &beta in &level.orbit {
                let u = level.transversal[beta].as_ref().expect("orbit point");
                for a in &acc {
                    // a (deeper levels) first, then u
                    next.push(a.then(u));
                }
            }
            acc = next;
        }
        acc
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(&PermGroupJson { generators: &self.generators, order: self.order().to_string() })?)
    }

    /// Orbit of `point` under the strong generators assigned to level `i`
    /// (all of `strong` when `i` is past the last level is not meaningful; returns `{point}`).
    fn stabilizer_orbit(&self, i: usize, point: usize) -> Vec<usize> {
        let Some(level) = self.levels.get(i) else {
            return vec![point];
        };
        let mut seen = vec![false; self.degree];
        seen[point] = true;
        let mut out = vec![point];
        let mut k = 0;
        while k < out.len() {
            let x = out[k];
            for &s in &level.gens {
                let y = self.strong[s].apply(x);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                }
            }
            k += 1;
        }
        out
    }
}

/// `x -> scale * x + shift`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineElement {
    pub scale: Scalar,
    pub shift: FieldVector,
}

impl AffineElement {
    pub fn new(scale: Scalar, shift: FieldVector) -> Self {
        Self { scale, shift }
    }

    /// `self` after `other`: `(l1, b1) . (l2, b2) = (l1 l2, l1 b2 + b1)`.
    pub fn compose(&self, space: &Space, other: &AffineElement) -> AffineElement {
        let f = space.field();
        AffineElement {
            scale: f.mul(self.scale, other.scale),
            shift: other.shift.scale(f, self.scale).add(f, &self.shift),
        }
    }

    pub fn to_perm(&self, space: &Space) -> Result<Permutation> {
        if self.scale == 0 || self.scale >= space.q() {
            return Err(Error::InvalidParameter(format!("scale {} is not a unit", self.scale)));
        }
        let b = space.encode(&self.shift)?;
        Ok(Permutation::from_images_unchecked(
            (0..space.size()).map(|x| space.add_idx(space.scale_idx(x, self.scale), b) as u32).collect(),
        ))
    }
}

pub fn translation(space: &Space, w: VertexId) -> Permutation {
    Permutation::from_images_unchecked((0..space.size()).map(|x| space.add_idx(x, w) as u32).collect())
}

pub fn scalar_map(space: &Space, lambda: Scalar) -> Permutation {
    Permutation::from_images_unchecked((0..space.size()).map(|x| space.scale_idx(x, lambda) as u32).collect())
}

/// Generators of K: the n coordinate translations and `x -> g x` for the smallest primitive root g.
pub fn k_generators(space: &Space) -> Vec<Permutation> {
    let n = space.dim();
    let mut gens: Vec<Permutation> = (0..n)
        .map(|i| translation(space, space.encode_unchecked(&FieldVector::unit(n, i).0)))
        .collect();
    let g = space.field().primitive_root();
    if g != 1 {
        gens.push(scalar_map(space, g));
    }
    gens
}

/// `K = F_q^n x| F_q^*` acting on the vertices.
pub fn build_k(space: &Space) -> Result<PermGroup> {
    if space.q() == 2 {
        return Err(Error::InvalidParameter("q must be an odd prime".into()));
    }
    PermGroup::new(space.size(), &k_generators(space))
}

/// All `q^n (q-1)` elements of K as affine maps, scale-major.
pub fn k_elements(space: &Space) -> Vec<AffineElement> {
    space
        .field()
        .units()
        .flat_map(|l| (0..space.size()).map(move |b| (l, b)))
        .map(|(l, b)| AffineElement::new(l, space.decode_unchecked(b)))
        .collect()
}

pub(crate) fn class_index(degree: usize, classes: &[PointSet]) -> Vec<u32> {
    let mut class_of = vec![0u32; degree];
    for (c, cls) in classes.iter().enumerate() {
        for &v in cls.members() {
            class_of[v] = c as u32;
        }
    }
    class_of
}

/// `{phi in group : phi(C) = C for every class C}` by backtracking over the
/// stabilizer chain, pruning on class membership of base images.
pub fn fixing_subgroup_of_partition(group: &PermGroup, classes: &[PointSet]) -> Result<PermGroup> {
    let degree = group.degree();
    let mut seen = vec![false; degree];
    for c in classes {
        for &v in c.members() {
            if v >= degree {
                return Err(Error::VertexOutOfRange { index: v, size: degree });
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::NotAPartition(format!("vertex {v} appears twice")));
            }
        }
    }
    if let Some(v) = seen.iter().position(|&s| !s) {
        return Err(Error::NotAPartition(format!("vertex {v} is uncovered")));
    }
    let class_of = class_index(degree, classes);
    fixing_subgroup_by_index(group, &class_of)
}

pub(crate) fn fixing_subgroup_by_index(group: &PermGroup, class_of: &[u32]) -> Result<PermGroup> {
    let base = group.base();
    let mut found = PermGroup::with_base(group.degree(), &base, &[])?;

    fn search(group: &PermGroup, j: usize, partial: &Permutation, class_of: &[u32]) -> Option<Permutation> {
        if j == group.levels.len() {
            return partial.fixes_classes(class_of).then(|| partial.clone());
        }
        let level = &group.levels[j];
        for &gamma in &level.orbit {
            let u = level.transversal[gamma].as_ref().expect("orbit point");
            let next = u.then(partial);
            if class_of[next.apply(level.base)] != class_of[level.base] {
                continue;
            }
            if let Some(x) = search(group, j + 1, &next, class_of) {
                return Some(x);
            }
        }
        None
    }

    for i in (0..base.len()).rev() {
        let b = base[i];
        let mut failed = vec![false; group.degree()];
        let orbit = group.levels[i].orbit.clone();
        for beta in orbit {
            if beta == b || class_of[beta] != class_of[b] || failed[beta] || found.level_contains(i, beta) {
                continue;
            }
            let start = group.levels[i].transversal[beta].clone().expect("orbit point");
            match search(group, i + 1, &start, class_of) {
                Some(x) => {
                    found.add_generator(x)?;
                }
                None => {
                    for y in found.stabilizer_orbit(i + 1, beta) {
                        failed[y] = true;
                    }
                }
            }
        }
    }
    Ok(found)
}

/// Checks the partition and returns the class index of every vertex.
pub fn partition_index(space: &Space, classes: &[PointSet]) -> Result<Vec<u32>> {
    check_partition(space, classes)?;
    Ok(class_index(space.size(), classes))
}
