//! Distinguishing colorings: class-fixing automorphisms, the exhaustive
//! `chi_D > q` check at tiny scale, and the `q + 1` certificate.

use serde::Serialize;

use crate::autsolver::AutResult;
use crate::cayley::CayleyGraph;
use crate::colorings::{coset_coloring, enumerate_proper_q_colorings, is_proper, plus_zero_recolor, Coloring};
use crate::error::{Error, Result};
use crate::field::{Space, VertexId};
use crate::geometry::{
    affine_lines_meeting, direction_indices, direction_threshold, is_affine_hyperplane, AffineHyperplane, PointSet,
    ProjPoint,
};
use crate::groups::{fixing_subgroup_by_index, k_elements, scalar_map, translation, PermGroup, Permutation};

#[derive(Clone, Debug, Serialize)]
pub struct DistinguishingReport {
    pub distinguishing: bool,
    /// Order of the subgroup fixing every color class, as a decimal string.
    pub fixing_order: String,
    pub witness: Option<Permutation>,
}

/// Checks whether any non-identity element of `group` fixes every class of `c`.
///
/// Witnesses are searched among translations, then scalar maps, then affine
/// maps, and only then among generators of the fixing subgroup.
pub fn is_distinguishing(space: &Space, c: &Coloring, group: &PermGroup) -> Result<DistinguishingReport> {
    if c.vertex_count() != group.degree() || group.degree() != space.size() {
        return Err(Error::InvalidParameter("coloring, group and space disagree on the vertex count".into()));
    }
    let class_of: Vec<u32> = (0..c.vertex_count()).map(|v| c.color(v)).collect();
    let fixing = fixing_subgroup_by_index(group, &class_of)?;
    if fixing.is_trivial() {
        return Ok(DistinguishingReport { distinguishing: true, fixing_order: "1".into(), witness: None });
    }
    let fixes = |p: &Permutation| p.fixes_classes(&class_of) && group.contains(p);
    let witness = (1..space.size())
        .map(|w| translation(space, w))
        .find(|p| fixes(p))
        .or_else(|| space.field().units().skip(1).map(|l| scalar_map(space, l)).find(|p| fixes(p)))
        .or_else(|| {
            k_elements(space)
                .into_iter()
                .filter_map(|a| a.to_perm(space).ok())
                .find(|p| !p.is_identity() && fixes(p))
        })
        .or_else(|| fixing.generators().iter().find(|p| !p.is_identity()).cloned())
        .or_else(|| fixing.strong_generators().iter().find(|p| !p.is_identity()).cloned());
    Ok(DistinguishingReport { distinguishing: false, fixing_order: fixing.order().to_string(), witness })
}

fn require_complete(aut: &AutResult) -> Result<()> {
    if aut.complete {
        Ok(())
    } else {
        Err(Error::BudgetExceeded("automorphism group is incomplete".into()))
    }
}

/// `is_distinguishing` against a computed automorphism group, which must be complete.
pub fn distinguishing_report(g: &CayleyGraph, c: &Coloring, aut: &AutResult) -> Result<DistinguishingReport> {
    require_complete(aut)?;
    is_distinguishing(g.space(), c, &aut.group)
}

/// Result of the exhaustive check over proper q-partitions.
#[derive(Clone, Debug)]
pub struct ExhaustiveVerdict {
    /// True iff every proper q-partition is fixed by a non-identity automorphism.
    pub exceeds_q: bool,
    pub partitions: Vec<(Coloring, Option<Permutation>)>,
}

/// Decides `chi_D > q` by enumerating all proper partitions into at most q classes.
pub fn chi_d_exceeds_q_small(g: &CayleyGraph, aut: &AutResult, limit: usize) -> Result<ExhaustiveVerdict> {
    require_complete(aut)?;
    if g.connection().is_empty() {
        return Err(Error::InvalidParameter("S is empty, so the chromatic number is 1".into()));
    }
    let mut partitions = Vec::new();
    for c in enumerate_proper_q_colorings(g, limit)? {
        let report = is_distinguishing(g.space(), &c, &aut.group)?;
        partitions.push((c, report.witness));
    }
    let exceeds_q = partitions.iter().all(|(_, w)| w.is_some());
    Ok(ExhaustiveVerdict { exceeds_q, partitions })
}

/// The coset coloring with vertex 0 moved to its own class, when it is proper
/// and distinguishing for the full group. Certifies `chi_D <= q + 1`.
pub fn chi_d_upper_certificate(g: &CayleyGraph, aut: &AutResult) -> Result<Option<Coloring>> {
    require_complete(aut)?;
    let Some(line) = g.connection().chosen_lines().first() else {
        return Ok(None);
    };
    let c = plus_zero_recolor(&coset_coloring(g, line.rep())?);
    if !is_proper(g, &c)? {
        return Ok(None);
    }
    let report = is_distinguishing(g.space(), &c, &aut.group)?;
    Ok(report.distinguishing.then_some(c))
}

/// Structure of one color class of a proper q-coloring.
#[derive(Clone, Debug, Serialize)]
pub struct ClassAnalysis {
    pub size: usize,
    pub hyperplane: Option<AffineHyperplane>,
    pub directions: usize,
    pub direction_threshold: Option<u128>,
    /// `directions <= direction_threshold`, when the threshold is defined.
    pub within_threshold: Option<bool>,
    /// No direction determined by the class lies on a line of S.
    pub avoids_s: bool,
    /// Number of affine lines meeting the class.
    pub lines_meeting: u128,
    /// `lines_meeting + |S|` compared with `1 + q + ... + q^{n-1}`.
    pub lines_meeting_plus_s: u128,
    pub projective_count: u128,
}

/// Per-class hyperplane and direction analysis for a proper q-coloring.
pub fn hyperplane_class_analysis(g: &CayleyGraph, c: &Coloring) -> Result<Vec<ClassAnalysis>> {
    let space = g.space();
    let q = space.q();
    if c.num_colors() != q as usize {
        return Err(Error::InvalidParameter(format!("expected {q} colors, got {}", c.num_colors())));
    }
    if !is_proper(g, c)? {
        return Err(Error::InvalidParameter("coloring is not proper".into()));
    }
    let threshold = direction_threshold(q, space.dim()).ok();
    let mut s_lines = vec![false; space.size()];
    for l in g.connection().chosen_lines() {
        s_lines[space.encode(l.rep())?] = true;
    }
    let projective_count: u128 = (0..space.dim() as u32).map(|i| (q as u128).pow(i)).sum();
    Ok(c
        .classes()
        .iter()
        .map(|cls| {
            let dirs = direction_indices(space, cls.members());
            let directions = dirs.len();
            let lines_meeting = affine_lines_meeting(space, cls);
            ClassAnalysis {
                size: cls.len(),
                hyperplane: is_affine_hyperplane(space, cls),
                directions,
                direction_threshold: threshold,
                within_threshold: threshold.map(|t| directions as u128 <= t),
                avoids_s: dirs.iter().all(|&d| !s_lines[d]),
                lines_meeting,
                lines_meeting_plus_s: lines_meeting + g.connection().len() as u128,
                projective_count,
            }
        })
        .collect())
}

/// For classes forming the cosets of one linear hyperplane, the translation by
/// the smallest nonzero vector of that hyperplane. It fixes every class and is
/// an automorphism of every Cayley graph on the space.
pub fn translation_witness(space: &Space, classes: &[PointSet]) -> Result<Option<Permutation>> {
    let Some(normal) = crate::geometry::common_hyperplane_partition(space, classes)? else {
        return Ok(None);
    };
    let f = space.field();
    let w: Option<VertexId> =
        (1..space.size()).find(|&w| normal.rep().dot(f, &space.decode_unchecked(w)) == 0);
    let Some(w) = w else {
        return Ok(None);
    };
    let t = translation(space, w);
    let class_of = crate::groups::partition_index(space, classes)?;
    Ok(t.fixes_classes(&class_of).then_some(t))
}

/// Hyperplane normal of a linear hyperplane partition, exposed for reports.
pub fn partition_normal(space: &Space, classes: &[PointSet]) -> Result<Option<ProjPoint>> {
    crate::geometry::common_hyperplane_partition(space, classes)
}
