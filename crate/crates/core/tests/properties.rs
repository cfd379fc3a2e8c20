use std::collections::HashSet;
use std::sync::OnceLock;

use nilq::bqg::{build_complex, homology, smith_normal_form, SparseMatrix};
use nilq::colimit::{build_presentation, todd_coxeter, EnumerationState};
use nilq::constructions::{embed_gl_in_sym, gl_symplectic_sequence, GeneralLinear, Matrix};
use nilq::group::MapTable;
use nilq::perm::{Perm, PermGroup};
use nilq::symplectic::{check_symplectic, find_symplectic, Certification, SearchOutcome};
use nilq::{build, Elem, FiniteGroup, GroupOps, GroupSpec};
use proptest::prelude::*;

const SPECS: &[&str] = &[
    "cyclic:1",
    "cyclic:7",
    "product:(cyclic:2),(cyclic:4)",
    "sym:3",
    "dihedral:8",
    "quaternion",
    "dihedral:10",
    "alt:4",
    "extraspecial:2:2",
    "sym:4",
];

fn groups() -> &'static [FiniteGroup] {
    static CELL: OnceLock<Vec<FiniteGroup>> = OnceLock::new();
    CELL.get_or_init(|| {
        SPECS
            .iter()
            .map(|s| build(&s.parse::<GroupSpec>().unwrap()).unwrap())
            .collect()
    })
}

fn elem(g: &FiniteGroup, raw: usize) -> Elem {
    g.check(raw % g.order()).unwrap()
}

fn config(cases: u32) -> ProptestConfig {
    ProptestConfig {
        failure_persistence: None,
        ..ProptestConfig::with_cases(cases)
    }
}

proptest! {
    #![proptest_config(config(48))]

    #[test]
    fn inverse_and_identity_laws(gi in 0..SPECS.len(), raw in any::<usize>()) {
        let g = &groups()[gi];
        let x = elem(g, raw);
        prop_assert!(g.mul(g.inverse(x), x).is_identity());
        prop_assert_eq!(g.mul(Elem::IDENTITY, x), x);
    }

    #[test]
    fn closure_is_idempotent(gi in 0..SPECS.len(), raws in prop::collection::vec(any::<usize>(), 0..4)) {
        let g = &groups()[gi];
        let xs: Vec<Elem> = raws.iter().map(|&r| elem(g, r)).collect();
        let h = g.closure(&xs).unwrap();
        let again = g.closure(h.members()).unwrap();
        prop_assert_eq!(h.members(), again.members());
    }

    #[test]
    fn derived_subgroup_is_normal(gi in 0..SPECS.len(), raw in any::<usize>()) {
        let g = &groups()[gi];
        let d = g.derived_subgroup(&g.whole());
        let x = elem(g, raw);
        for &m in d.members() {
            prop_assert!(d.contains(g.mul(g.mul(x, m), g.inverse(x))));
        }
    }

    #[test]
    fn class_one_iff_abelian(gi in 0..SPECS.len(), raws in prop::collection::vec(any::<usize>(), 1..3)) {
        let g = &groups()[gi];
        let xs: Vec<Elem> = raws.iter().map(|&r| elem(g, r)).collect();
        let h = g.closure(&xs).unwrap();
        let abelian = h.members().iter().all(|&a| h.members().iter().all(|&b| g.commutes(a, b)));
        if !h.is_trivial() {
            prop_assert_eq!(g.nilpotency_class(&h) == Some(1), abelian);
        }
        let series = g.lower_central_series(&h);
        for w in series.windows(2) {
            prop_assert!(w[1].is_subset_of(&w[0]));
        }
    }

    #[test]
    fn inner_automorphisms_are_nilq_maps(gi in 0..SPECS.len(), raw in any::<usize>(), q in 2usize..4) {
        let g = &groups()[gi];
        let x = elem(g, raw);
        let xi = g.inverse(x);
        let map = MapTable::from_fn(g, g, |e| g.mul(g.mul(x, e), xi));
        prop_assert!(map.is_homomorphism(g, g).unwrap());
        prop_assert!(map.is_nilq_map(g, g, q).unwrap().holds);
    }

    #[test]
    fn passing_at_larger_q_implies_passing_at_smaller(
        gi in 0..SPECS.len(),
        raw in any::<usize>(),
        slot in any::<usize>(),
        target in any::<usize>(),
    ) {
        // An automorphism with one image disturbed; it may or may not survive.
        let g = &groups()[gi];
        let x = elem(g, raw);
        let xi = g.inverse(x);
        let mut images: Vec<Elem> = g.elements().map(|e| g.mul(g.mul(x, e), xi)).collect();
        let n = images.len();
        images[slot % n] = elem(g, target);
        let map = MapTable::new(n, n, images);
        let at3 = map.is_nilq_map(g, g, 3).unwrap().holds;
        let at2 = map.is_nilq_map(g, g, 2).unwrap().holds;
        prop_assert!(!at3 || at2);
    }

    #[test]
    fn swapping_halves_inverts_the_commutator(gi in 0..SPECS.len(), a in any::<usize>(), b in any::<usize>()) {
        let g = &groups()[gi];
        let (x, y) = (elem(g, a), elem(g, b));
        if x.is_identity() || y.is_identity() {
            return Ok(());
        }
        if let Certification::Valid(seq) = check_symplectic(g, &[x, y]).unwrap() {
            let swapped = check_symplectic(g, &[y, x]).unwrap().valid().expect("swap certifies");
            prop_assert_eq!(swapped.c, g.inverse(seq.c));
        }
    }

    #[test]
    fn found_sequences_recertify(gi in 0..SPECS.len(), r in 1usize..3) {
        let g = &groups()[gi];
        match find_symplectic(g, r, 200_000).unwrap() {
            SearchOutcome::Found { sequence, .. } => {
                let again = check_symplectic(g, &sequence.elements).unwrap().valid().expect("recertifies");
                prop_assert!(again.nontrivial);
                prop_assert_eq!(again.c, sequence.c);
                // With a single pair nothing forces c to be central.
                if r >= 2 {
                    for &e in &sequence.elements {
                        prop_assert!(g.commutes(sequence.c, e));
                    }
                }
            }
            SearchOutcome::ExhaustedNone { .. } | SearchOutcome::NotFoundWithinBudget { .. } => {}
        }
    }

    #[test]
    fn linear_sequence_survives_larger_symmetric_groups(k in 16usize..25) {
        let action = embed_gl_in_sym(4, 2).unwrap();
        let perms: Vec<Perm> = gl_symplectic_sequence(4, 2)
            .unwrap()
            .iter()
            .map(|m| action.image(m).extend(k))
            .collect();
        let n = k as u32;
        let sym = PermGroup::new(k, vec![
            Perm::from_images((0..n).map(|x| if x < 2 { 1 - x } else { x }).collect()).unwrap(),
            Perm::from_images((0..n).map(|x| (x + 1) % n).collect()).unwrap(),
        ]).unwrap();
        for p in &perms {
            prop_assert!(sym.contains(p));
        }
        let seq = check_symplectic(&sym, &perms).unwrap().valid().expect("certifies");
        prop_assert_eq!(seq.r, 2);
        prop_assert!(seq.nontrivial);
        prop_assert!(seq.c.images()[16..].iter().enumerate().all(|(i, &v)| v as usize == i + 16));
    }

    #[test]
    fn linear_action_is_multiplicative(word_a in prop::collection::vec((1usize..4, 1usize..4), 0..6),
                                       word_b in prop::collection::vec((1usize..4, 1usize..4), 0..6)) {
        let gl = GeneralLinear { n: 3, p: 3 };
        let action = embed_gl_in_sym(3, 3).unwrap();
        let build_word = |w: &[(usize, usize)]| {
            w.iter().filter(|(i, j)| i != j).fold(gl.identity(), |acc, &(i, j)| {
                gl.op(&acc, &nilq::constructions::elementary_matrix(3, 3, i, j).unwrap())
            })
        };
        let a: Matrix = build_word(&word_a);
        let b: Matrix = build_word(&word_b);
        prop_assert_eq!(action.image(&gl.op(&a, &b)), action.image(&a).compose(&action.image(&b)));
    }

    #[test]
    fn smith_form_matches_determinantal_divisors(entries in prop::collection::vec(-6i64..7, 9)) {
        let m = SparseMatrix::from_triplets(3, 3, (0..9).map(|k| (k / 3, k % 3, entries[k])));
        let r = smith_normal_form(&m);
        let a = |i: usize, j: usize| entries[3 * i + j];
        let gcd = |x: i64, y: i64| num_integer::Integer::gcd(&x, &y);
        let d1 = entries.iter().fold(0, |acc, &v| gcd(acc, v));
        let mut d2 = 0;
        for (r0, r1) in [(0, 1), (0, 2), (1, 2)] {
            for (c0, c1) in [(0, 1), (0, 2), (1, 2)] {
                d2 = gcd(d2, a(r0, c0) * a(r1, c1) - a(r0, c1) * a(r1, c0));
            }
        }
        let det = a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1))
            - a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0))
            + a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
        let rank = [d1, d2, det].iter().filter(|&&d| d != 0).count();
        prop_assert_eq!(r.rank, rank);
        // Invariant factors: d1, d2 / d1, det / d2, dropping units.
        let mut expected: Vec<i64> = Vec::new();
        let divisors = [1, d1, d2, det.abs()];
        for k in 1..=rank {
            expected.push(divisors[k] / divisors[k - 1]);
        }
        expected.retain(|&d| d != 1);
        let got: Vec<i64> = r.torsion.iter().map(|d| i64::try_from(d).unwrap()).collect();
        prop_assert_eq!(got.clone(), expected);
        for w in got.windows(2) {
            prop_assert_eq!(w[1] % w[0], 0);
        }
    }
}

proptest! {
    #![proptest_config(config(8))]

    #[test]
    fn boundaries_compose_to_zero(gi in 0..SPECS.len() - 1, q in 2usize..4) {
        let g = &groups()[gi];
        let c = build_complex(g, q, 3, 200_000).unwrap();
        for n in 2..c.boundaries.len() {
            prop_assert!(c.boundaries[n - 1].mul(&c.boundaries[n]).is_zero());
        }
        let h0 = homology(g, q, 0, 200_000).unwrap();
        prop_assert_eq!((h0.rank, h0.torsion.len()), (1, 0));
    }

    #[test]
    fn simplices_grow_with_q(gi in 0..SPECS.len() - 1) {
        let g = &groups()[gi];
        let small = build_complex(g, 2, 3, 200_000).unwrap();
        let large = build_complex(g, 3, 3, 200_000).unwrap();
        for (a, b) in small.bases.iter().zip(&large.bases) {
            let b: HashSet<_> = b.iter().collect();
            prop_assert!(a.iter().all(|s| b.contains(s)));
        }
    }

    #[test]
    fn enumeration_is_deterministic(gi in 0..SPECS.len() - 1, q in 2usize..4) {
        let g = &groups()[gi];
        let p = build_presentation(g, q).unwrap();
        let a = todd_coxeter(&p, 50_000).unwrap();
        let b = todd_coxeter(&p, 50_000).unwrap();
        prop_assert_eq!(a.state(), b.state());
        prop_assert_eq!(a.coset_count(), b.coset_count());
        prop_assert_eq!(a.total_defined(), b.total_defined());
        if a.is_closed() {
            prop_assert!(a.relators_hold(&p));
            prop_assert_eq!(a.representatives().unwrap(), b.representatives().unwrap());
        }
    }
}

#[test]
fn abelian_complexes_contain_every_tuple() {
    for s in ["cyclic:5", "product:(cyclic:2),(cyclic:4)"] {
        let g = build(&s.parse::<GroupSpec>().unwrap()).unwrap();
        let c = build_complex(&g, 2, 3, 200_000).unwrap();
        let counts: Vec<usize> = (0..4).map(|n| (g.order() - 1).pow(n as u32)).collect();
        assert_eq!(c.simplex_counts(), counts, "{s}");
    }
}

#[test]
fn surjection_chain_on_closed_enumerations() {
    for s in ["cyclic:6", "product:(cyclic:2),(cyclic:4)", "extraspecial:2:2"] {
        let g = build(&s.parse::<GroupSpec>().unwrap()).unwrap();
        let mut previous: Option<(usize, HashSet<_>)> = None;
        for q in 2..5 {
            let p = build_presentation(&g, q).unwrap();
            let t = todd_coxeter(&p, 100_000).unwrap();
            assert_eq!(t.state(), EnumerationState::Closed, "{s} q={q}");
            let relators: HashSet<_> = p.relators.iter().cloned().collect();
            if let Some((count, rels)) = &previous {
                assert!(*count >= t.coset_count(), "{s} q={q}");
                assert!(rels.is_subset(&relators), "{s} q={q}");
            }
            assert!(t.coset_count() >= g.order());
            previous = Some((t.coset_count(), relators));
        }
    }
}
