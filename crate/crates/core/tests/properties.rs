use std::collections::HashSet;

use cayley_lines::autsolver::{automorphism_group, dichotomy_check, equals_k, is_automorphism, Dichotomy};
use cayley_lines::bounds::{binomial_half_tail_exact, binomial_half_tail_log, monte_carlo_pipeline, Budgets};
use cayley_lines::colorings::{coset_coloring, enumerate_proper_q_colorings, is_proper, plus_zero_recolor};
use cayley_lines::distinguishing::is_distinguishing;
use cayley_lines::field::span_rank;
use cayley_lines::geometry::{
    common_hyperplane_partition, direction, directions_determined, is_affine_hyperplane, line_points,
};
use cayley_lines::groups::{build_k, fixing_subgroup_of_partition, k_elements};
use cayley_lines::*;
use proptest::prelude::*;

fn prime() -> impl Strategy<Value = u32> {
    prop::sample::select(vec![2u32, 3, 5, 7, 11, 13])
}

fn odd_space() -> impl Strategy<Value = Space> {
    prop::sample::select(vec![(3u32, 2usize), (3, 3), (5, 2), (5, 3)]).prop_map(|(q, n)| Space::new(q, n).unwrap())
}

fn vector(q: u32, n: usize) -> impl Strategy<Value = FieldVector> {
    prop::collection::vec(0..q, n).prop_map(FieldVector)
}

/// Closure of the generators under composition, by breadth-first search.
fn closure(degree: usize, gens: &[Permutation]) -> HashSet<Permutation> {
    let mut seen: HashSet<Permutation> = HashSet::new();
    let mut frontier = vec![Permutation::identity(degree)];
    seen.insert(Permutation::identity(degree));
    while let Some(p) = frontier.pop() {
        for g in gens {
            let next = p.then(g);
            if seen.insert(next.clone()) {
                frontier.push(next);
            }
        }
    }
    seen
}

fn random_perm(degree: usize) -> impl Strategy<Value = Permutation> {
    Just((0..degree as u32).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_images(v).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(q in prime(), a in 0u32..13, b in 0u32..13, c in 0u32..13) {
        let f = PrimeField::new(q).unwrap();
        let (a, b, c) = (a % q, b % q, c % q);
        prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), 0);
        prop_assert_eq!(f.sub(a, b), f.add(a, f.neg(b)));
        match f.inv(a) {
            Some(i) => prop_assert_eq!(f.mul(a, i), 1),
            None => prop_assert_eq!(a, 0),
        }
    }

    #[test]
    fn encode_decode_round_trip(space in odd_space(), i in 0usize..125) {
        let i = i % space.size();
        let v = space.decode(i).unwrap();
        prop_assert_eq!(space.encode(&v).unwrap(), i);
    }

    #[test]
    fn index_arithmetic_matches_vectors(space in odd_space(), a in 0usize..125, b in 0usize..125, l in 1u32..5) {
        let (a, b) = (a % space.size(), b % space.size());
        let f = space.field();
        let l = l % space.q();
        let (va, vb) = (space.decode(a).unwrap(), space.decode(b).unwrap());
        prop_assert_eq!(space.add_idx(a, b), space.encode(&va.add(f, &vb)).unwrap());
        prop_assert_eq!(space.sub_idx(a, b), space.encode(&va.sub(f, &vb)).unwrap());
        prop_assert_eq!(space.scale_idx(a, l), space.encode(&va.scale(f, l)).unwrap());
    }

    #[test]
    fn matrix_inverse_and_kernel(q in prop::sample::select(vec![3u32, 5, 7]), entries in prop::collection::vec(0u32..7, 9)) {
        let f = PrimeField::new(q).unwrap();
        let rows: Vec<Vec<u32>> = entries.chunks(3).map(|r| r.iter().map(|x| x % q).collect()).collect();
        let m = Matrix::from_rows(rows).unwrap();
        let kernel = m.kernel(&f);
        prop_assert_eq!(m.rank(&f) + kernel.len(), 3);
        for k in &kernel {
            prop_assert!(m.apply(&f, k).is_zero());
        }
        match m.inverse(&f) {
            Ok(inv) => {
                prop_assert!(m.is_invertible(&f));
                prop_assert_eq!(m.mul(&f, &inv), Matrix::identity(3));
                prop_assert_eq!(inv.mul(&f, &m), Matrix::identity(3));
            }
            Err(_) => prop_assert!(!m.is_invertible(&f)),
        }
    }

    #[test]
    fn direction_symmetry_and_translation(space in odd_space(), a in 0usize..125, b in 0usize..125, w in 0usize..125) {
        let (a, b, w) = (a % space.size(), b % space.size(), w % space.size());
        prop_assume!(a != b);
        let f = space.field();
        let (u, v, t) = (space.decode(a).unwrap(), space.decode(b).unwrap(), space.decode(w).unwrap());
        let d = direction(f, &u, &v).unwrap();
        prop_assert_eq!(&d, &direction(f, &v, &u).unwrap());
        prop_assert_eq!(&d, &direction(f, &u.add(f, &t), &v.add(f, &t)).unwrap());
    }

    #[test]
    fn affine_hyperplanes_are_recognized(space in odd_space(), normal in vector(5, 3), offset in 0u32..5) {
        let n = space.dim();
        let q = space.q();
        let f = space.field();
        let normal = FieldVector(normal.0[..n].iter().map(|x| x % q).collect());
        prop_assume!(!normal.is_zero());
        let offset = offset % q;
        let members: Vec<usize> = (0..space.size())
            .filter(|&i| normal.dot(f, &space.decode(i).unwrap()) == offset)
            .collect();
        let set = PointSet::new(members);
        let h = is_affine_hyperplane(&space, &set).expect("hyperplane");
        let canon = ProjPoint::new(f, &normal).unwrap();
        prop_assert_eq!(&h.normal, &canon);
        // offsets agree up to the scaling used to canonicalize the normal
        let l = (0..q).find(|&l| normal.scale(f, l) == *canon.rep()).unwrap();
        prop_assert_eq!(h.offset, f.mul(offset, l));
        let expected = ((q as usize).pow(n as u32 - 1) - 1) / (q as usize - 1);
        prop_assert_eq!(directions_determined(&space, &set).unwrap().len(), expected);
    }

    #[test]
    fn connection_set_invariants(space in odd_space(), seed in any::<u64>()) {
        let f = space.field();
        let s = ConnectionSet::sample_seeded(&space, 0.5, seed).unwrap();
        prop_assert!(!s.contains(0));
        prop_assert_eq!(s.len(), (space.q() as usize - 1) * s.chosen_lines().len());
        for &x in s.elements() {
            prop_assert!(s.contains(space.sub_idx(0, x)));
            prop_assert!(space.last_coord(x) != 0);
            for l in f.units() {
                prop_assert!(s.contains(space.scale_idx(x, l)));
            }
        }
        let mut sorted = s.chosen_lines().to_vec();
        sorted.sort();
        prop_assert_eq!(sorted.as_slice(), s.chosen_lines());
    }

    #[test]
    fn adjacency_invariance(space in odd_space(), seed in any::<u64>(), u in 0usize..125, v in 0usize..125, w in 0usize..125, l in 1u32..5) {
        let (u, v, w) = (u % space.size(), v % space.size(), w % space.size());
        let l = 1 + (l - 1) % (space.q() - 1);
        let g = CayleyGraph::new(ConnectionSet::sample_seeded(&space, 0.5, seed).unwrap());
        let e = g.is_edge(u, v).unwrap();
        prop_assert_eq!(e, g.is_edge(v, u).unwrap());
        prop_assert_eq!(e, g.is_edge(space.add_idx(u, w), space.add_idx(v, w)).unwrap());
        prop_assert_eq!(e, g.is_edge(space.scale_idx(u, l), space.scale_idx(v, l)).unwrap());
        prop_assert_eq!(g.neighbors(u).unwrap().len(), g.degree());
    }

    #[test]
    fn coset_colorings_are_proper_hyperplane_partitions(space in odd_space(), seed in any::<u64>()) {
        let g = CayleyGraph::new(ConnectionSet::sample_seeded(&space, 0.5, seed).unwrap());
        prop_assume!(!g.connection().is_empty());
        let n = space.dim();
        for &s in g.connection().elements() {
            let c = coset_coloring(&g, &space.decode(s).unwrap()).unwrap();
            prop_assert!(is_proper(&g, &c).unwrap());
            let normal = common_hyperplane_partition(&space, &c.classes()).unwrap();
            let normal = normal.unwrap();
            prop_assert_eq!(normal.rep(), &FieldVector::unit(n, n - 1));
            let r = plus_zero_recolor(&c);
            prop_assert!(is_proper(&g, &r).unwrap());
            let mut sizes = r.class_sizes();
            sizes.sort_unstable();
            let h = space.size() / space.q() as usize;
            let mut expected = vec![1, h - 1];
            expected.extend(std::iter::repeat_n(h, space.q() as usize - 1));
            prop_assert_eq!(sizes, expected);
        }
    }

    #[test]
    fn schreier_sims_matches_closure(gens in prop::collection::vec(random_perm(6), 0..3)) {
        let g = PermGroup::new(6, &gens).unwrap();
        let all = closure(6, &gens);
        prop_assert_eq!(g.order(), all.len().into());
        let elems: HashSet<Permutation> = g.elements().into_iter().collect();
        prop_assert_eq!(&elems, &all);
        for p in closure(6, &[full_cycle(6)]) {
            prop_assert_eq!(g.contains(&p), all.contains(&p));
        }
    }

    #[test]
    fn affine_composition_law(space in odd_space(), l1 in 1u32..5, l2 in 1u32..5, b1 in 0usize..125, b2 in 0usize..125) {
        let q = space.q();
        let (l1, l2) = (1 + (l1 - 1) % (q - 1), 1 + (l2 - 1) % (q - 1));
        let a = AffineElement::new(l1, space.decode(b1 % space.size()).unwrap());
        let b = AffineElement::new(l2, space.decode(b2 % space.size()).unwrap());
        let composed = a.compose(&space, &b).to_perm(&space).unwrap();
        prop_assert_eq!(composed, b.to_perm(&space).unwrap().then(&a.to_perm(&space).unwrap()));
    }

    #[test]
    fn fixing_subgroup_matches_filter(space in prop::sample::select(vec![(3u32, 2usize), (5, 2), (3, 3)]).prop_map(|(q, n)| Space::new(q, n).unwrap()), labels in prop::collection::vec(0u32..3, 27)) {
        let k = build_k(&space).unwrap();
        let class_of: Vec<u32> = labels[..space.size()].to_vec();
        let classes: Vec<PointSet> = (0..3)
            .map(|c| PointSet::new((0..space.size()).filter(|&v| class_of[v] == c)))
            .filter(|c| !c.is_empty())
            .collect();
        let sub = fixing_subgroup_of_partition(&k, &classes).unwrap();
        let filtered: HashSet<Permutation> =
            k.elements().into_iter().filter(|p| p.fixes_classes(&class_of)).collect();
        prop_assert_eq!(sub.order(), filtered.len().into());
        for p in &filtered {
            prop_assert!(sub.contains(p));
        }
        let c = Coloring::new(3, class_of.clone()).unwrap();
        let report = is_distinguishing(&space, &c, &k).unwrap();
        prop_assert_eq!(report.distinguishing, filtered.len() == 1);
        if let Some(w) = report.witness {
            prop_assert!(!w.is_identity() && filtered.contains(&w));
        }
    }

    #[test]
    fn binomial_tails_agree(trials in 1u64..2048, frac in 0.0f64..1.0) {
        let k = (trials as f64 * frac) as u64;
        let a = binomial_half_tail_exact(trials, Some(k));
        let b = binomial_half_tail_log(trials, Some(k));
        prop_assert!(((a.log2 - b.log2) * std::f64::consts::LN_2).abs() < 1e-9);
    }
}

fn full_cycle(degree: usize) -> Permutation {
    Permutation::from_images((0..degree as u32).map(|i| (i + 1) % degree as u32).collect()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn automorphism_groups_contain_k(space in odd_space(), seed in any::<u64>()) {
        let g = CayleyGraph::new(ConnectionSet::sample_seeded(&space, 0.5, seed).unwrap());
        let aut = automorphism_group(&g, 1_000_000).unwrap();
        prop_assert!(aut.complete);
        for p in aut.group.generators() {
            prop_assert!(is_automorphism(&g, p));
        }
        for a in k_elements(&space) {
            prop_assert!(aut.group.contains(&a.to_perm(&space).unwrap()));
        }
        let k_order = num_bigint::BigUint::from(space.size() * (space.q() as usize - 1));
        prop_assert_eq!(aut.group.order() % k_order, 0u32.into());
        let d = dichotomy_check(&g, &aut, 1 << 22).unwrap();
        prop_assert!(d.verdict != Dichotomy::Violated);
        prop_assert_eq!(d.verdict == Dichotomy::EqualsK, equals_k(&aut, &space).unwrap());
    }

    #[test]
    fn proper_three_colorings_have_hyperplane_sized_classes(mask in 1u32..8) {
        let space = Space::new(3, 2).unwrap();
        let u = LineUniverse::new(&space).unwrap();
        let lines: Vec<ProjPoint> = u.lines.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, l)| l.clone()).collect();
        let g = CayleyGraph::new(ConnectionSet::from_lines(&space, &lines).unwrap());
        for c in enumerate_proper_q_colorings(&g, 100_000).unwrap() {
            prop_assert!(is_proper(&g, &c).unwrap());
            prop_assert_eq!(c.class_sizes(), vec![3, 3, 3]);
            for cls in c.classes() {
                let dirs = directions_determined(&space, &cls).unwrap();
                for l in &lines {
                    prop_assert!(!dirs.contains(l));
                }
            }
        }
    }
}

#[test]
fn line_points_partition_the_complement_of_h0() {
    for (q, n) in [(3u32, 2usize), (3, 3), (5, 3), (7, 2)] {
        let space = Space::new(q, n).unwrap();
        let f = space.field();
        let mut seen = vec![false; space.size()];
        for l in &LineUniverse::new(&space).unwrap().lines {
            let pts = line_points(f, l);
            assert_eq!(pts.len(), q as usize - 1);
            for p in pts {
                let i = space.encode(&p).unwrap();
                assert!(!seen[i]);
                seen[i] = true;
            }
        }
        let covered = seen.iter().filter(|&&s| s).count();
        assert_eq!(covered, space.size() - space.size() / q as usize);
        assert!((0..space.size()).all(|i| seen[i] == (space.last_coord(i) != 0)));
    }
}

#[test]
fn span_rank_of_standard_basis() {
    let f = PrimeField::new(5).unwrap();
    let basis: Vec<FieldVector> = (0..4).map(|i| FieldVector::unit(4, i)).collect();
    assert_eq!(span_rank(&f, &basis, 4), 4);
}

#[test]
fn monte_carlo_is_replay_deterministic() {
    let budgets = Budgets { nodes: 1_000_000, enumeration: 1 << 20 };
    let a = monte_carlo_pipeline(5, 3, 0.5, 6, 11, budgets, 1, false).unwrap();
    let b = monte_carlo_pipeline(5, 3, 0.5, 6, 11, budgets, 3, false).unwrap();
    assert_eq!(a.records, b.records);
    // a single trial replays on its own
    let one = cayley_lines::bounds::run_trial(&Space::new(5, 3).unwrap(), 0.5, 11, 4, budgets, false).unwrap();
    assert_eq!(one, a.records[4]);
}
