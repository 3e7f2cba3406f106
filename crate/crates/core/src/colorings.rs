//! Proper colorings of `Cay(F_q^n, S)`: the coset coloring, line cliques,
//! exact chromatic number search and exhaustive enumeration of proper
//! partitions at tiny scale.

use serde::{Deserialize, Serialize};

use crate::cayley::CayleyGraph;
use crate::error::{Error, Result};
use crate::field::{FieldVector, VertexId};
use crate::geometry::{PointSet, ProjPoint};

/// A total vertex coloring with colors in `[0, num_colors)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Coloring {
    num_colors: usize,
    class_of: Vec<u32>,
}

#[derive(Serialize, Deserialize)]
struct ColoringJson {
    num_colors: usize,
    classes: Vec<Vec<VertexId>>,
}

impl Coloring {
    pub fn new(num_colors: usize, class_of: Vec<u32>) -> Result<Self> {
        if let Some(&c) = class_of.iter().find(|&&c| c as usize >= num_colors) {
            return Err(Error::InvalidParameter(format!("color {c} outside [0, {num_colors})")));
        }
        Ok(Self { num_colors, class_of })
    }

    /// Builds a coloring from a list of classes; every vertex in `0..vertex_count` must appear once.
    pub fn from_classes(vertex_count: usize, classes: &[Vec<VertexId>]) -> Result<Self> {
        let mut class_of = vec![u32::MAX; vertex_count];
        for (c, members) in classes.iter().enumerate() {
            for &v in members {
                let slot = class_of
                    .get_mut(v)
                    .ok_or(Error::VertexOutOfRange { index: v, size: vertex_count })?;
                if *slot != u32::MAX {
                    return Err(Error::NotAPartition(format!("vertex {v} colored twice")));
                }
                *slot = c as u32;
            }
        }
        if let Some(v) = class_of.iter().position(|&c| c == u32::MAX) {
            return Err(Error::NotAPartition(format!("vertex {v} is uncolored")));
        }
        Ok(Self { num_colors: classes.len(), class_of })
    }

    pub fn num_colors(&self) -> usize {
        self.num_colors
    }

    #[inline]
    pub fn color(&self, v: VertexId) -> u32 {
        self.class_of[v]
    }

    pub fn vertex_count(&self) -> usize {
        self.class_of.len()
    }

    /// Classes indexed by color (possibly empty).
    pub fn classes(&self) -> Vec<PointSet> {
        let mut out = vec![Vec::new(); self.num_colors];
        for (v, &c) in self.class_of.iter().enumerate() {
            out[c as usize].push(v);
        }
        out.into_iter().map(PointSet::new).collect()
    }

    /// Nonempty classes ordered by smallest member.
    pub fn sorted_classes(&self) -> Vec<PointSet> {
        let mut cs: Vec<_> = self.classes().into_iter().filter(|c| !c.is_empty()).collect();
        cs.sort_by_key(|c| c.members()[0]);
        cs
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        self.sorted_classes().iter().map(PointSet::len).collect()
    }

    pub fn to_json(&self) -> Result<String> {
        let j = ColoringJson {
            num_colors: self.num_colors,
            classes: self.sorted_classes().iter().map(|c| c.members().to_vec()).collect(),
        };
        Ok(serde_json::to_string(&j)?)
    }

    pub fn from_json(s: &str, vertex_count: usize) -> Result<Self> {
        let j: ColoringJson = serde_json::from_str(s)?;
        let mut c = Self::from_classes(vertex_count, &j.classes)?;
        if j.num_colors < c.num_colors {
            return Err(Error::InvalidParameter("num_colors smaller than the number of classes".into()));
        }
        c.num_colors = j.num_colors;
        Ok(c)
    }
}

/// The coloring by cosets `C_lambda = H_0 + lambda * v` for `v` in `S`.
pub fn coset_coloring(g: &CayleyGraph, v: &FieldVector) -> Result<Coloring> {
    let space = g.space();
    let vi = space.encode(v)?;
    if !g.connection().contains(vi) {
        return Err(Error::InvalidParameter(format!("{:?} is not in S", v.0)));
    }
    let f = space.field();
    let inv = f.inv(space.last_coord(vi)).expect("S avoids H_0");
    let class_of = (0..g.vertex_count()).map(|x| f.mul(space.last_coord(x), inv)).collect();
    Coloring::new(space.q() as usize, class_of)
}

/// No monochromatic edge. Each edge is scanned once via the cutoff `s < -s`.
pub fn is_proper(g: &CayleyGraph, c: &Coloring) -> Result<bool> {
    if c.vertex_count() != g.vertex_count() {
        return Err(Error::InvalidParameter(format!(
            "coloring covers {} vertices, graph has {}",
            c.vertex_count(),
            g.vertex_count()
        )));
    }
    let space = g.space();
    let half: Vec<VertexId> = g
        .connection()
        .elements()
        .iter()
        .copied()
        .filter(|&s| s < space.sub_idx(0, s))
        .collect();
    Ok((0..g.vertex_count()).all(|u| half.iter().all(|&s| c.color(u) != c.color(space.add_idx(u, s)))))
}

/// The q-clique `{lambda * rep + w : lambda in F_q}` for a chosen line and `w` in H_0.
pub fn line_clique(g: &CayleyGraph, line: &ProjPoint, w: &FieldVector) -> Result<PointSet> {
    if !g.connection().chosen_lines().contains(line) {
        return Err(Error::InvalidParameter(format!("line {:?} is not in S", line.rep().0)));
    }
    let space = g.space();
    let wi = space.encode(w)?;
    if space.last_coord(wi) != 0 {
        return Err(Error::InvalidParameter(format!("{:?} is not in H_0", w.0)));
    }
    let base = space.encode(line.rep())?;
    Ok(PointSet::new((0..space.q()).map(|l| space.add_idx(space.scale_idx(base, l), wi))))
}

/// Outcome of a chromatic number computation.
#[derive(Clone, Debug)]
pub struct ChromaticOutcome {
    pub lower: usize,
    pub upper: usize,
    /// Coloring with `upper` colors.
    pub witness: Coloring,
    /// Clique certifying `lower`, when one was used.
    pub clique: Option<PointSet>,
    /// Whether `lower == upper` was established.
    pub proved: bool,
    pub nodes: u64,
}

impl ChromaticOutcome {
    pub fn exact(&self) -> Option<usize> {
        self.proved.then_some(self.upper)
    }
}

/// Exact chromatic number: a line clique bounds from below and the coset
/// coloring from above. Falls back to DSATUR branch and bound when the
/// bounds differ.
pub fn exact_chromatic_number(g: &CayleyGraph, budget_nodes: u64) -> Result<ChromaticOutcome> {
    let conn = g.connection();
    let Some(line) = conn.chosen_lines().first() else {
        let witness = Coloring::new(1, vec![0; g.vertex_count()])?;
        return Ok(ChromaticOutcome { lower: 1, upper: 1, witness, clique: None, proved: true, nodes: 0 });
    };
    let n = g.space().dim();
    let clique = line_clique(g, line, &FieldVector::zero(n))?;
    let witness = coset_coloring(g, line.rep())?;
    let (lower, upper) = (clique.len(), witness.num_colors());
    if lower == upper {
        return Ok(ChromaticOutcome { lower, upper, witness, clique: Some(clique), proved: true, nodes: 0 });
    }
    let mut out = dsatur_chromatic_number(g, lower, budget_nodes)?;
    out.clique = Some(clique);
    Ok(out)
}

struct Dsatur<'a> {
    adj: &'a [Vec<VertexId>],
    color: Vec<Option<u32>>,
    // neighbor_colors[v][c]: neighbours of v currently colored c
    neighbor_colors: Vec<Vec<u32>>,
    best: usize,
    best_coloring: Vec<u32>,
    lower: usize,
    nodes: u64,
    budget: u64,
    exhausted: bool,
}

impl Dsatur<'_> {
    fn saturation(&self, v: VertexId) -> usize {
        self.neighbor_colors[v].iter().filter(|&&k| k > 0).count()
    }

    fn pick(&self) -> Option<VertexId> {
        // max saturation, then max degree, then smallest id
        (0..self.adj.len())
            .filter(|&v| self.color[v].is_none())
            .max_by(|&a, &b| {
                (self.saturation(a), self.adj[a].len())
                    .cmp(&(self.saturation(b), self.adj[b].len()))
                    .then(b.cmp(&a))
            })
    }

    fn set(&mut self, v: VertexId, c: Option<u32>) {
        if let Some(old) = self.color[v] {
            for &u in &self.adj[v] {
                self.neighbor_colors[u][old as usize] -= 1;
            }
        }
        self.color[v] = c;
        if let Some(new) = c {
            for &u in &self.adj[v] {
                self.neighbor_colors[u][new as usize] += 1;
            }
        }
    }

    fn search(&mut self, used: usize) {
        if self.best <= self.lower || self.exhausted {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            self.exhausted = true;
            return;
        }
        let Some(v) = self.pick() else {
            if used < self.best {
                self.best = used;
                self.best_coloring = self.color.iter().map(|c| c.expect("all colored")).collect();
            }
            return;
        };
        for c in 0..=used {
            // a coloring must beat the best one found so far
            if c + 1 >= self.best {
                break;
            }
            if self.neighbor_colors[v][c] > 0 {
                continue;
            }
            self.set(v, Some(c as u32));
            self.search(used.max(c + 1));
            self.set(v, None);
            if self.best <= self.lower || self.exhausted {
                return;
            }
        }
    }
}

/// DSATUR branch and bound, stopping once a coloring with `lower` colors is found.
pub fn dsatur_chromatic_number(g: &CayleyGraph, lower: usize, budget_nodes: u64) -> Result<ChromaticOutcome> {
    let adj = g.adjacency_lists();
    let nv = adj.len();
    let mut s = Dsatur {
        adj: &adj,
        color: vec![None; nv],
        neighbor_colors: vec![vec![0; nv + 1]; nv],
        best: nv + 1,
        best_coloring: (0..nv as u32).collect(),
        lower: lower.max(1),
        nodes: 0,
        budget: budget_nodes,
        exhausted: false,
    };
    s.search(0);
    let upper = s.best.min(nv);
    let proved = !s.exhausted;
    let lower = if proved { upper } else { lower.max(1) };
    let witness = Coloring::new(upper, s.best_coloring.clone())?;
    Ok(ChromaticOutcome { lower, upper, witness, clique: None, proved, nodes: s.nodes })
}

/// Every partition of the vertices into at most `q` independent sets, each
/// yielded once up to relabeling: vertex 0 is in class 0 and new classes open
/// in first-use order. Fails once more than `limit` partitions exist.
pub fn enumerate_proper_q_colorings(g: &CayleyGraph, limit: usize) -> Result<Vec<Coloring>> {
    let q = g.space().q() as usize;
    let nv = g.vertex_count();
    let adj = g.adjacency_lists();
    let mut out = Vec::new();
    let mut class_of = vec![0u32; nv];
    // earlier neighbours only: vertices are colored in id order
    let earlier: Vec<Vec<VertexId>> = adj.iter().enumerate().map(|(v, ns)| ns.iter().copied().filter(|&u| u < v).collect()).collect();

    fn rec(
        v: usize,
        used: usize,
        q: usize,
        earlier: &[Vec<VertexId>],
        class_of: &mut [u32],
        out: &mut Vec<Coloring>,
        limit: usize,
    ) -> bool {
        if v == class_of.len() {
            if out.len() == limit {
                return false;
            }
            out.push(Coloring { num_colors: q, class_of: class_of.to_vec() });
            return true;
        }
        for c in 0..(used + 1).min(q) {
            if earlier[v].iter().any(|&u| class_of[u] as usize == c) {
                continue;
            }
            class_of[v] = c as u32;
            if !rec(v + 1, used.max(c + 1), q, earlier, class_of, out, limit) {
                return false;
            }
        }
        true
    }

    if nv == 0 {
        return Ok(out);
    }
    if !rec(0, 0, q, &earlier, &mut class_of, &mut out, limit) {
        return Err(Error::BudgetExceeded(format!("more than {limit} proper partitions")));
    }
    Ok(out)
}

/// Moves vertex 0 into a new singleton class.
pub fn plus_zero_recolor(c: &Coloring) -> Coloring {
    let mut class_of = c.class_of.clone();
    class_of[0] = c.num_colors as u32;
    Coloring { num_colors: c.num_colors + 1, class_of }
}
