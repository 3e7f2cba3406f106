//! The random connection set `S` (a union of punctured lines avoiding H_0)
//! and the Cayley graph `Cay(F_q^n, S)`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{FieldVector, Space, VertexId};
use crate::geometry::{LineUniverse, ProjPoint};

/// RNG stream for a given master seed and trial index. Trial 0 is the plain seeded stream.
pub fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

/// `S = (union of chosen lines) \ {0}` with an O(1) membership bitmap.
#[derive(Clone, Debug)]
pub struct ConnectionSet {
    space: Space,
    chosen_lines: Vec<ProjPoint>,
    members: Vec<bool>,
    elements: Vec<VertexId>,
}

#[derive(Serialize, Deserialize)]
struct ConnectionSetJson {
    q: u32,
    n: usize,
    lines: Vec<ProjPoint>,
}

impl ConnectionSet {
    /// Builds `S` from explicit lines, each of which must avoid H_0.
    pub fn from_lines(space: &Space, lines: &[ProjPoint]) -> Result<Self> {
        let universe = LineUniverse::new(space)?;
        let mut taken = vec![false; universe.len()];
        for p in lines {
            let pos = universe.position(p).ok_or_else(|| {
                Error::InvalidParameter(format!("line {:?} is not a canonical line avoiding H_0", p.rep().0))
            })?;
            if std::mem::replace(&mut taken[pos], true) {
                return Err(Error::InvalidParameter(format!("duplicate line {:?}", p.rep().0)));
            }
        }
        Ok(Self::from_mask(space, &universe, &taken))
    }

    fn from_mask(space: &Space, universe: &LineUniverse, taken: &[bool]) -> Self {
        let mut members = vec![false; space.size()];
        let mut chosen_lines = Vec::new();
        for (p, _) in universe.lines.iter().zip(taken).filter(|(_, &t)| t) {
            let base = space.encode_unchecked(p.rep().coords());
            for l in space.field().units() {
                members[space.scale_idx(base, l)] = true;
            }
            chosen_lines.push(p.clone());
        }
        let elements = members.iter().enumerate().filter(|(_, &m)| m).map(|(i, _)| i).collect();
        Self { space: space.clone(), chosen_lines, members, elements }
    }

    /// Includes each line of the universe independently with probability `p`,
    /// deciding lines in the universe's canonical order.
    pub fn sample<R: Rng>(space: &Space, p: f64, rng: &mut R) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidParameter(format!("probability {p} outside [0, 1]")));
        }
        if space.q() == 2 {
            return Err(Error::InvalidParameter("q must be an odd prime".into()));
        }
        let universe = LineUniverse::new(space)?;
        let taken: Vec<bool> = universe.lines.iter().map(|_| rng.gen_bool(p)).collect();
        Ok(Self::from_mask(space, &universe, &taken))
    }

    pub fn sample_seeded(space: &Space, p: f64, seed: u64) -> Result<Self> {
        Self::sample(space, p, &mut trial_rng(seed, 0))
    }

    pub fn space(&self) -> &Space {
        &self.space
    }

    pub fn chosen_lines(&self) -> &[ProjPoint] {
        &self.chosen_lines
    }

    /// Elements of S as sorted vertex indices.
    pub fn elements(&self) -> &[VertexId] {
        &self.elements
    }

    #[inline]
    pub fn contains(&self, v: VertexId) -> bool {
        self.members[v]
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn to_json(&self) -> Result<String> {
        let j = ConnectionSetJson { q: self.space.q(), n: self.space.dim(), lines: self.chosen_lines.clone() };
        Ok(serde_json::to_string(&j)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let j: ConnectionSetJson = serde_json::from_str(s)?;
        let space = Space::new(j.q, j.n)?;
        if j.q == 2 {
            return Err(Error::InvalidParameter("q must be an odd prime".into()));
        }
        let f = space.field();
        let lines = j
            .lines
            .into_iter()
            .map(|p| ProjPoint::from_canonical(f, p.rep().clone()))
            .collect::<Result<Vec<_>>>()?;
        Self::from_lines(&space, &lines)
    }
}

/// `Cay(F_q^n, S)`: `u ~ v` iff `u - v` is in `S`.
#[derive(Clone, Debug)]
pub struct CayleyGraph {
    conn: ConnectionSet,
}

impl CayleyGraph {
    pub fn new(conn: ConnectionSet) -> Self {
        Self { conn }
    }

    pub fn connection(&self) -> &ConnectionSet {
        &self.conn
    }

    pub fn space(&self) -> &Space {
        &self.conn.space
    }

    pub fn vertex_count(&self) -> usize {
        self.conn.space.size()
    }

    pub fn degree(&self) -> usize {
        self.conn.len()
    }

    pub fn edge_count(&self) -> usize {
        self.vertex_count() * self.degree() / 2
    }

    #[inline]
    pub(crate) fn adjacent(&self, u: VertexId, v: VertexId) -> bool {
        self.conn.members[self.conn.space.sub_idx(u, v)]
    }

    fn check(&self, v: VertexId) -> Result<()> {
        if v >= self.vertex_count() {
            return Err(Error::VertexOutOfRange { index: v, size: self.vertex_count() });
        }
        Ok(())
    }

    pub fn is_edge(&self, u: VertexId, v: VertexId) -> Result<bool> {
        self.check(u)?;
        self.check(v)?;
        Ok(self.adjacent(u, v))
    }

    /// `{v + s : s in S}`, sorted.
    pub fn neighbors(&self, v: VertexId) -> Result<Vec<VertexId>> {
        self.check(v)?;
        let mut out: Vec<_> = self.conn.elements.iter().map(|&s| self.conn.space.add_idx(v, s)).collect();
        out.sort_unstable();
        Ok(out)
    }

    /// Adjacency lists for every vertex.
    pub(crate) fn adjacency_lists(&self) -> Vec<Vec<VertexId>> {
        (0..self.vertex_count())
            .map(|v| self.neighbors(v).expect("in range"))
            .collect()
    }

    /// Edges `(u, v)` with `u < v`, in increasing lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        (0..self.vertex_count()).flat_map(move |u| {
            self.neighbors(u).expect("in range").into_iter().filter(move |&v| v > u).map(move |v| (u, v))
        })
    }

    pub fn vector(&self, v: VertexId) -> FieldVector {
        self.conn.space.decode_unchecked(v)
    }
}
