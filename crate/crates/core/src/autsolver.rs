//! Automorphism groups of `Cay(F_q^n, S)` by individualization-refinement,
//! comparison with K, and the fixed-line / orbit statistics of linear maps.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use num_bigint::BigUint;
use serde::Serialize;

use crate::cayley::{CayleyGraph, ConnectionSet};
use crate::error::{Error, Result};
use crate::field::{enumerate_gl, gaussian_binomial_1, nullspace, FieldVector, Matrix, Scalar, Space};
use crate::geometry::{LineUniverse, ProjPoint};
use crate::groups::{k_generators, PermGroup, Permutation};

/// Ordered partition of the vertex set. Cells are contiguous runs of
/// `elements`, identified by their start position.
#[derive(Clone, Debug)]
pub struct RefinementPartition {
    elements: Vec<usize>,
    // start position of the cell containing each position
    cell_start: Vec<usize>,
    // end (exclusive) of the cell starting at each start position
    cell_end: Vec<usize>,
    position: Vec<usize>,
    trace: u64,
}

impl RefinementPartition {
    fn unit(nv: usize) -> Self {
        Self {
            elements: (0..nv).collect(),
            cell_start: vec![0; nv],
            cell_end: {
                let mut e = vec![0; nv];
                if nv > 0 {
                    e[0] = nv;
                }
                e
            },
            position: (0..nv).collect(),
            trace: 0,
        }
    }

    pub fn is_discrete(&self) -> bool {
        (0..self.elements.len()).all(|p| self.cell_end[self.cell_start[p]] == self.cell_start[p] + 1)
    }

    fn cell_starts(&self) -> Vec<usize> {
        let mut out = Vec::new();
        let mut p = 0;
        while p < self.elements.len() {
            out.push(p);
            p = self.cell_end[p];
        }
        out
    }

    fn cell(&self, start: usize) -> &[usize] {
        &self.elements[start..self.cell_end[start]]
    }

    /// First smallest non-singleton cell.
    fn target_cell(&self) -> Option<usize> {
        self.cell_starts()
            .into_iter()
            .filter(|&s| self.cell_end[s] - s > 1)
            .min_by_key(|&s| (self.cell_end[s] - s, s))
    }

    fn set_cell(&mut self, start: usize, end: usize) {
        self.cell_end[start] = end;
        for p in start..end {
            self.cell_start[p] = start;
        }
    }

    /// Equitable refinement. Fragments are ordered by neighbour count, so the
    /// resulting cell structure and trace are isomorphism invariant.
    fn refine(&mut self, adj: &[Vec<usize>], mut queue: Vec<usize>) {
        let nv = self.elements.len();
        let mut in_queue = vec![false; nv];
        for &s in &queue {
            in_queue[s] = true;
        }
        let mut counts = vec![0u32; nv];
        let mut hasher = DefaultHasher::new();
        self.trace.hash(&mut hasher);
        let mut head = 0;
        while head < queue.len() {
            let w = queue[head];
            head += 1;
            in_queue[w] = false;
            let splitter: Vec<usize> = self.cell(w).to_vec();
            for &x in &splitter {
                for &y in &adj[x] {
                    counts[y] += 1;
                }
            }
            let mut start = 0;
            while start < nv {
                let end = self.cell_end[start];
                if end - start > 1 {
                    let c0 = counts[self.elements[start]];
                    if self.elements[start..end].iter().any(|&v| counts[v] != c0) {
                        self.elements[start..end].sort_unstable_by_key(|&v| (counts[v], v));
                        let was_queued = in_queue[start];
                        let mut frags = Vec::new();
                        let mut a = start;
                        while a < end {
                            let c = counts[self.elements[a]];
                            let mut b = a + 1;
                            while b < end && counts[self.elements[b]] == c {
                                b += 1;
                            }
                            frags.push((a, b, c));
                            a = b;
                        }
                        (w, start, frags.len()).hash(&mut hasher);
                        for &(a, b, c) in &frags {
                            (b - a, c).hash(&mut hasher);
                            self.set_cell(a, b);
                            for p in a..b {
                                self.position[self.elements[p]] = p;
                            }
                        }
                        // Hopcroft: skip one largest fragment unless the cell was already pending
                        let largest = frags
                            .iter()
                            .enumerate()
                            .max_by_key(|(i, &(a, b, _))| (b - a, std::cmp::Reverse(*i)))
                            .map(|(i, _)| i)
                            .expect("nonempty");
                        for (i, &(a, _, _)) in frags.iter().enumerate() {
                            if (was_queued || i != largest) && !in_queue[a] {
                                in_queue[a] = true;
                                queue.push(a);
                            }
                        }
                    }
                }
                start = end;
            }
            for &x in &splitter {
                for &y in &adj[x] {
                    counts[y] = 0;
                }
            }
        }
        self.cell_starts().len().hash(&mut hasher);
        self.trace = hasher.finish();
    }

    fn individualize(&self, adj: &[Vec<usize>], v: usize) -> Self {
        let mut next = self.clone();
        let p = next.position[v];
        let start = next.cell_start[p];
        let end = next.cell_end[start];
        next.elements.swap(start, p);
        next.position[next.elements[p]] = p;
        next.position[v] = start;
        next.elements[start + 1..end].sort_unstable();
        for q in start + 1..end {
            next.position[next.elements[q]] = q;
        }
        next.set_cell(start, start + 1);
        next.set_cell(start + 1, end);
        let mut h = DefaultHasher::new();
        (self.trace, start).hash(&mut h);
        next.trace = h.finish();
        next.refine(adj, vec![start]);
        next
    }
}

/// Result of an automorphism group computation.
#[derive(Clone, Debug)]
pub struct AutResult {
    pub group: PermGroup,
    /// False when the node budget ran out; `group` is then a subgroup of Aut.
    pub complete: bool,
    pub nodes: u64,
}

pub fn is_automorphism(g: &CayleyGraph, p: &Permutation) -> bool {
    let space = g.space();
    p.degree() == g.vertex_count()
        && (0..g.vertex_count()).all(|u| {
            g.connection().elements().iter().all(|&s| g.adjacent(p.apply(u), p.apply(space.add_idx(u, s))))
        })
}

struct Search<'a> {
    graph: &'a CayleyGraph,
    adj: Vec<Vec<usize>>,
    path: Vec<RefinementPartition>,
    targets: Vec<usize>,
    nodes: u64,
    budget: u64,
}

impl Search<'_> {
    fn child(&mut self, node: &RefinementPartition, v: usize) -> Option<RefinementPartition> {
        if self.nodes >= self.budget {
            return None;
        }
        self.nodes += 1;
        Some(node.individualize(&self.adj, v))
    }

    /// Looks for a leaf below `node` (at `depth`) equivalent to the first leaf.
    /// `Err(())` means the budget ran out.
    fn find_leaf(&mut self, node: &RefinementPartition, depth: usize) -> Result<Option<Permutation>, ()> {
        if node.trace != self.path[depth].trace {
            return Ok(None);
        }
        if depth + 1 == self.path.len() {
            let first = &self.path[depth];
            let mut images = vec![0u32; first.elements.len()];
            for (p, &v) in first.elements.iter().enumerate() {
                images[v] = node.elements[p] as u32;
            }
            let perm = Permutation::from_images(images).expect("leaves are orderings");
            return Ok(is_automorphism(self.graph, &perm).then_some(perm));
        }
        let cell: Vec<usize> = node.cell(self.targets[depth]).to_vec();
        for u in cell {
            let Some(c) = self.child(node, u) else {
                return Err(());
            };
            if let Some(p) = self.find_leaf(&c, depth + 1)? {
                return Ok(Some(p));
            }
        }
        Ok(None)
    }
}

/// Full automorphism group via individualization-refinement with K supplied
/// as a known subgroup. `budget_nodes` caps the number of search-tree nodes.
pub fn automorphism_group(g: &CayleyGraph, budget_nodes: u64) -> Result<AutResult> {
    let nv = g.vertex_count();
    let mut search = Search {
        graph: g,
        adj: g.adjacency_lists(),
        path: Vec::new(),
        targets: Vec::new(),
        nodes: 0,
        budget: budget_nodes.max(1),
    };
    let mut root = RefinementPartition::unit(nv);
    let starts = root.cell_starts();
    root.refine(&search.adj, starts);
    let mut base = Vec::new();
    let mut node = root;
    loop {
        let Some(t) = node.target_cell() else {
            search.path.push(node);
            break;
        };
        let v = *node.cell(t).iter().min().expect("nonempty cell");
        base.push(v);
        search.targets.push(t);
        let next = node.individualize(&search.adj, v);
        search.nodes += 1;
        search.path.push(node);
        node = next;
    }

    let known: Vec<Permutation> = k_generators(g.space()).into_iter().filter(|p| is_automorphism(g, p)).collect();
    if known.len() != k_generators(g.space()).len() {
        return Err(Error::Invariant("a generator of K is not an automorphism".into()));
    }
    let mut group = PermGroup::with_base(nv, &base, &known)?;

    let mut complete = true;
    'levels: for d in (0..base.len()).rev() {
        let node = search.path[d].clone();
        let cell: Vec<usize> = node.cell(search.targets[d]).to_vec();
        let mut failed = vec![false; nv];
        for w in cell {
            if w == base[d] || failed[w] || group.level_contains(d, w) {
                continue;
            }
            let Some(c) = search.child(&node, w) else {
                complete = false;
                break 'levels;
            };
            match search.find_leaf(&c, d + 1) {
                Ok(Some(p)) => {
                    group.add_generator(p)?;
                }
                Ok(None) => {
                    for y in stabilizer_orbit(&group, d + 1, w) {
                        failed[y] = true;
                    }
                }
                Err(()) => {
                    complete = false;
                    break 'levels;
                }
            }
        }
    }
    Ok(AutResult { group, complete, nodes: search.nodes })
}

/// Orbit of `point` under the pointwise stabilizer of the first `level` base points.
fn stabilizer_orbit(group: &PermGroup, level: usize, point: usize) -> Vec<usize> {
    let base = group.base();
    let gens: Vec<&Permutation> = group
        .strong_generators()
        .iter()
        .filter(|s| base[..level.min(base.len())].iter().all(|&b| s.apply(b) == b))
        .collect();
    let mut seen = vec![false; group.degree()];
    seen[point] = true;
    let mut out = vec![point];
    let mut k = 0;
    while k < out.len() {
        for s in &gens {
            let y = s.apply(out[k]);
            if !seen[y] {
                seen[y] = true;
                out.push(y);
            }
        }
        k += 1;
    }
    out
}

/// Filters all `(q^n)!` permutations for edge preservation. At most 9 vertices.
pub fn brute_force_aut(g: &CayleyGraph) -> Result<(PermGroup, u64)> {
    let nv = g.vertex_count();
    if nv > 9 {
        return Err(Error::BudgetExceeded(format!("brute force over {nv}! permutations")));
    }
    let adj: Vec<Vec<bool>> = (0..nv).map(|u| (0..nv).map(|v| g.adjacent(u, v)).collect()).collect();
    let mut group = PermGroup::trivial(nv);
    let mut count = 0u64;
    let mut perm: Vec<u32> = (0..nv as u32).collect();
    loop {
        let preserves = (0..nv).all(|u| (u + 1..nv).all(|v| adj[u][v] == adj[perm[u] as usize][perm[v] as usize]));
        if preserves {
            count += 1;
            let p = Permutation::from_images(perm.clone())?;
            group.add_generator(p)?;
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    Ok((group, count))
}

fn next_permutation(a: &mut [u32]) -> bool {
    let Some(i) = (1..a.len()).rev().find(|&i| a[i - 1] < a[i]) else {
        return false;
    };
    let j = (i..a.len()).rev().find(|&j| a[j] > a[i - 1]).expect("exists");
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// Whether the group is exactly K: order `q^n (q-1)` and every K generator is a member.
pub fn equals_k(aut: &AutResult, space: &Space) -> Result<bool> {
    if !aut.complete {
        return Err(Error::BudgetExceeded("automorphism search incomplete".into()));
    }
    let k_order = BigUint::from(space.size()) * BigUint::from(space.q() - 1);
    Ok(aut.group.order() == k_order && k_generators(space).iter().all(|k| aut.group.contains(k)))
}

/// The permutation of the vertices induced by a linear map.
pub fn matrix_perm(space: &Space, m: &Matrix) -> Permutation {
    let f = space.field();
    Permutation::from_images_unchecked(
        (0..space.size())
            .map(|x| space.encode_unchecked(&m.apply(f, &space.decode_unchecked(x)).0) as u32)
            .collect(),
    )
}

fn maps_s_to_s(conn: &ConnectionSet, universe: &LineUniverse, phi: &Matrix) -> bool {
    let f = conn.space().field();
    conn.chosen_lines().iter().all(|l| {
        let image = ProjPoint::new(f, &phi.apply(f, l.rep())).expect("invertible map");
        universe.position(&image).is_some() && conn.chosen_lines().binary_search(&image).is_ok()
    })
}

/// All `phi` in GL(n, q) with `phi(S) = S`.
pub fn linear_automorphisms_fixing_s(conn: &ConnectionSet, budget: u64) -> Result<Vec<Matrix>> {
    let space = conn.space();
    let universe = LineUniverse::new(space)?;
    Ok(enumerate_gl(space.field(), space.dim(), budget)?
        .filter(|phi| maps_s_to_s(conn, &universe, phi))
        .collect())
}

/// Lines of the universe fixed by `phi`, by scanning.
pub fn fixed_lines_scan(space: &Space, phi: &Matrix, universe: &LineUniverse) -> Result<u64> {
    let f = space.field();
    if !phi.is_invertible(f) {
        return Err(Error::SingularMatrix);
    }
    Ok(universe
        .lines
        .iter()
        .filter(|l| ProjPoint::new(f, &phi.apply(f, l.rep())).expect("invertible") == **l)
        .count() as u64)
}

/// Lines of the universe fixed by `phi`, from eigenspace dimensions:
/// the sum over eigenvalues of `[dim E]_q - [dim (E meet H_0)]_q`.
pub fn fixed_lines_eigen(space: &Space, phi: &Matrix) -> Result<u64> {
    let f = space.field();
    let n = space.dim();
    if !phi.is_invertible(f) {
        return Err(Error::SingularMatrix);
    }
    let mut total = 0u128;
    for lambda in f.units() {
        let shifted = phi.sub(f, &Matrix::scalar(n, lambda));
        let dim_e = shifted.kernel(f).len() as u32;
        if dim_e == 0 {
            continue;
        }
        let mut rows = shifted.rows();
        rows.push(FieldVector::unit(n, n - 1).0);
        let dim_e_h0 = nullspace(f, &rows, n).len() as u32;
        total += gaussian_binomial_1(dim_e, space.q()) - gaussian_binomial_1(dim_e_h0, space.q());
    }
    Ok(total as u64)
}

fn cycle_count(images: &[usize]) -> u64 {
    let mut seen = vec![false; images.len()];
    let mut cycles = 0;
    for s in 0..images.len() {
        if seen[s] {
            continue;
        }
        cycles += 1;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = images[x];
        }
    }
    cycles
}

/// Number of orbits of `phi` on the line universe, or `None` when `phi` does not preserve it.
pub fn orbit_count_on_lines(space: &Space, phi: &Matrix, universe: &LineUniverse) -> Result<Option<u64>> {
    let f = space.field();
    if !phi.is_invertible(f) {
        return Err(Error::SingularMatrix);
    }
    let mut images = Vec::with_capacity(universe.len());
    for l in &universe.lines {
        let image = ProjPoint::new(f, &phi.apply(f, l.rep())).expect("invertible");
        match universe.position(&image) {
            Some(p) => images.push(p),
            None => return Ok(None),
        }
    }
    Ok(Some(cycle_count(&images)))
}

/// Number of orbits of `phi` on all `(q^n - 1)/(q - 1)` lines through the origin.
pub fn orbit_count_on_all_lines(space: &Space, phi: &Matrix) -> Result<u64> {
    let f = space.field();
    if !phi.is_invertible(f) {
        return Err(Error::SingularMatrix);
    }
    let lines: Vec<usize> = (1..space.size())
        .filter(|&i| crate::geometry::canonical_index(space, i) == i)
        .collect();
    let pos: std::collections::HashMap<usize, usize> = lines.iter().enumerate().map(|(p, &i)| (i, p)).collect();
    let images: Vec<usize> = lines
        .iter()
        .map(|&i| {
            let image = space.encode_unchecked(&phi.apply(f, &space.decode_unchecked(i)).0);
            pos[&crate::geometry::canonical_index(space, image)]
        })
        .collect();
    Ok(cycle_count(&images))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Dichotomy {
    /// Aut equals K.
    #[serde(rename = "i")]
    EqualsK,
    /// Some automorphism outside K normalizes the translations.
    #[serde(rename = "ii")]
    Normalizing,
    #[serde(rename = "violated")]
    Violated,
}

#[derive(Clone, Debug, Serialize)]
pub struct DichotomyReport {
    pub verdict: Dichotomy,
    pub witness: Option<Matrix>,
}

/// Either Aut = K, or a non-scalar linear map preserving S exists (its
/// permutation lies in Aut \ K and normalizes the translation group).
pub fn dichotomy_check(g: &CayleyGraph, aut: &AutResult, gl_budget: u64) -> Result<DichotomyReport> {
    let space = g.space();
    if equals_k(aut, space)? {
        return Ok(DichotomyReport { verdict: Dichotomy::EqualsK, witness: None });
    }
    let universe = LineUniverse::new(space)?;
    let witness = enumerate_gl(space.field(), space.dim(), gl_budget)?
        .find(|phi| phi.as_scalar().is_none() && maps_s_to_s(g.connection(), &universe, phi));
    match witness {
        Some(phi) => {
            let p = matrix_perm(space, &phi);
            if !aut.group.contains(&p) || !is_automorphism(g, &p) {
                return Err(Error::Invariant("linear witness is not in the computed group".into()));
            }
            Ok(DichotomyReport { verdict: Dichotomy::Normalizing, witness: Some(phi) })
        }
        None => Ok(DichotomyReport { verdict: Dichotomy::Violated, witness: None }),
    }
}

/// Machine-readable solver output.
#[derive(Clone, Debug, Serialize)]
pub struct SolverReport {
    pub order: String,
    pub generators: Vec<Permutation>,
    #[serde(rename = "equals_K")]
    pub equals_k: Option<bool>,
    pub dichotomy: Option<Dichotomy>,
    pub witness: Option<Matrix>,
    pub complete: bool,
    pub nodes: u64,
}

pub fn solver_report(g: &CayleyGraph, budget_nodes: u64, gl_budget: u64) -> Result<(AutResult, SolverReport)> {
    let aut = automorphism_group(g, budget_nodes)?;
    let (equals, dichotomy, witness) = if aut.complete {
        let equals = equals_k(&aut, g.space())?;
        match dichotomy_check(g, &aut, gl_budget) {
            Ok(d) => (Some(equals), Some(d.verdict), d.witness),
            Err(Error::BudgetExceeded(_)) => (Some(equals), None, None),
            Err(e) => return Err(e),
        }
    } else {
        (None, None, None)
    };
    let report = SolverReport {
        order: aut.group.order().to_string(),
        generators: aut.group.generators().to_vec(),
        equals_k: equals,
        dichotomy,
        witness,
        complete: aut.complete,
        nodes: aut.nodes,
    };
    Ok((aut, report))
}

/// Scalar `lambda` as a field element check helper for callers building matrices.
pub fn scalar_matrices(space: &Space) -> Vec<Matrix> {
    space.field().units().map(|l: Scalar| Matrix::scalar(space.dim(), l)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::groups::build_k;

    fn graph(lines: &[&[u32]]) -> CayleyGraph {
        let s = Space::new(3, 2).unwrap();
        let ls: Vec<_> = lines
            .iter()
            .map(|c| ProjPoint::from_canonical(s.field(), FieldVector(c.to_vec())).unwrap())
            .collect();
        CayleyGraph::new(ConnectionSet::from_lines(&s, &ls).unwrap())
    }

    #[test]
    fn aut_examples() {
        let edgeless = automorphism_group(&graph(&[]), 1_000_000).unwrap();
        assert!(edgeless.complete);
        assert_eq!(edgeless.group.order(), 362880u32.into());
        let triangles = automorphism_group(&graph(&[&[0, 1]]), 1_000_000).unwrap();
        assert_eq!(triangles.group.order(), 1296u32.into());
        let k333 = automorphism_group(&graph(&[&[0, 1], &[1, 1], &[2, 1]]), 1_000_000).unwrap();
        assert_eq!(k333.group.order(), 1296u32.into());
        assert!(!equals_k(&k333, &Space::new(3, 2).unwrap()).unwrap());
    }

    #[test]
    fn budget_exhaustion_is_flagged() {
        let aut = automorphism_group(&graph(&[&[0, 1]]), 2).unwrap();
        assert!(!aut.complete);
        assert!(equals_k(&aut, &Space::new(3, 2).unwrap()).is_err());
    }

    #[test]
    fn equals_k_for_k_itself() {
        let s = Space::new(3, 2).unwrap();
        let aut = AutResult { group: build_k(&s).unwrap(), complete: true, nodes: 0 };
        assert!(equals_k(&aut, &s).unwrap());
    }

    #[test]
    fn fixed_line_examples() {
        let s = Space::new(3, 2).unwrap();
        let u = LineUniverse::new(&s).unwrap();
        let d = Matrix::diag(&[2, 1]);
        assert_eq!(fixed_lines_scan(&s, &d, &u).unwrap(), 1);
        assert_eq!(fixed_lines_eigen(&s, &d).unwrap(), 1);
        assert_eq!(fixed_lines_scan(&s, &Matrix::scalar(2, 2), &u).unwrap(), 3);
        // companion matrix of x^2 + 1, irreducible over F_3
        let rot = Matrix::from_rows(vec![vec![0, 2], vec![1, 0]]).unwrap();
        assert_eq!(fixed_lines_scan(&s, &rot, &u).unwrap(), 0);
        assert_eq!(fixed_lines_eigen(&s, &rot).unwrap(), 0);
        assert!(fixed_lines_eigen(&s, &Matrix::zero(2)).is_err());
    }

    #[test]
    fn orbit_count_examples() {
        let s = Space::new(3, 2).unwrap();
        let u = LineUniverse::new(&s).unwrap();
        assert_eq!(orbit_count_on_lines(&s, &Matrix::identity(2), &u).unwrap(), Some(3));
        // diag(2,1): (0,1) fixed, (1,1) -> (2,1) -> (1,1)
        assert_eq!(orbit_count_on_lines(&s, &Matrix::diag(&[2, 1]), &u).unwrap(), Some(2));
        // swapping coordinates sends (0,1) into H_0
        let swap = Matrix::from_rows(vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(orbit_count_on_lines(&s, &swap, &u).unwrap(), None);
        assert_eq!(orbit_count_on_all_lines(&s, &swap).unwrap(), 3);
    }

    #[test]
    fn linear_automorphisms_include_scalars() {
        let s = Space::new(3, 2).unwrap();
        let g = graph(&[&[0, 1]]);
        let lin = linear_automorphisms_fixing_s(g.connection(), 1 << 20).unwrap();
        for m in scalar_matrices(&s) {
            assert!(lin.contains(&m));
        }
        // brute force: matrices with phi(0,1) in span{(0,1)}
        let f = PrimeField::new(3).unwrap();
        let expected = enumerate_gl(&f, 2, 1 << 20)
            .unwrap()
            .filter(|m| m.get(0, 1) == 0)
            .count();
        assert_eq!(lin.len(), expected);
    }

    #[test]
    fn dichotomy_examples() {
        let g = graph(&[&[0, 1], &[1, 1], &[2, 1]]);
        let aut = automorphism_group(&g, 1_000_000).unwrap();
        let d = dichotomy_check(&g, &aut, 1 << 20).unwrap();
        assert_eq!(d.verdict, Dichotomy::Normalizing);
        assert!(d.witness.unwrap().as_scalar().is_none());
        let empty = graph(&[]);
        let aut = automorphism_group(&empty, 1_000_000).unwrap();
        assert_eq!(dichotomy_check(&empty, &aut, 1 << 20).unwrap().verdict, Dichotomy::Normalizing);
    }

    #[test]
    fn next_permutation_counts() {
        let mut a = [0u32, 1, 2, 3];
        let mut n = 1;
        while next_permutation(&mut a) {
            n += 1;
        }
        assert_eq!(n, 24);
    }
}
