//! Values checked against brute-force oracles that do not go through the
//! library's group machinery.

use nilq::bqg::{h1_consistency, hom_count, homology};
use nilq::colimit::{build_presentation, d2, d2_antidiagonal_generation};
use nilq::constructions::{gl_element, gl_symplectic_sequence};
use nilq::{build, FiniteGroup, GroupSpec};

fn spec(s: &str) -> FiniteGroup {
    build(&s.parse::<GroupSpec>().unwrap()).unwrap()
}

/// Unit quaternions ±1, ±i, ±j, ±k as integer 4-vectors.
fn quaternion_units() -> Vec<[i32; 4]> {
    let mut out = Vec::new();
    for axis in 0..4 {
        for sign in [1, -1] {
            let mut q = [0; 4];
            q[axis] = sign;
            out.push(q);
        }
    }
    out
}

fn hamilton(a: [i32; 4], b: [i32; 4]) -> [i32; 4] {
    let [a0, a1, a2, a3] = a;
    let [b0, b1, b2, b3] = b;
    [
        a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
        a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
        a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
        a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
    ]
}

#[test]
fn quaternion_commuting_tuples() {
    let q = quaternion_units();
    let commute = |x: [i32; 4], y: [i32; 4]| hamilton(x, y) == hamilton(y, x);
    let pairs = q
        .iter()
        .flat_map(|&x| q.iter().map(move |&y| (x, y)))
        .filter(|&(x, y)| commute(x, y))
        .count();
    let mut triples = 0u128;
    for &x in &q {
        for &y in &q {
            for &z in &q {
                if commute(x, y) && commute(x, z) && commute(y, z) {
                    triples += 1;
                }
            }
        }
    }
    assert_eq!(pairs, 40);
    let g = spec("quaternion");
    assert_eq!(hom_count(&g, 2, 2, 1_000_000).unwrap(), pairs as u128);
    assert_eq!(hom_count(&g, 3, 2, 1_000_000).unwrap(), triples);
    // Central x: 2 * (2 * 8 + 6 * 4); noncentral x: 6 * 4 * 4.
    assert_eq!(triples, 176);
}

/// Permutations of {0,1,2} as image arrays; composition applies the right factor first.
fn s3() -> Vec<[usize; 3]> {
    let mut v = Vec::new();
    for a in 0..3 {
        for b in 0..3 {
            for c in 0..3 {
                if a != b && b != c && a != c {
                    v.push([a, b, c]);
                }
            }
        }
    }
    v
}

fn compose(x: [usize; 3], y: [usize; 3]) -> [usize; 3] {
    [x[y[0]], x[y[1]], x[y[2]]]
}

fn is_even(x: [usize; 3]) -> bool {
    let inversions = (0..3)
        .flat_map(|i| (i + 1..3).map(move |j| (i, j)))
        .filter(|&(i, j)| x[i] > x[j])
        .count();
    inversions % 2 == 0
}

#[test]
fn sym3_counts() {
    let s = s3();
    let id = [0, 1, 2];
    let commuting = s
        .iter()
        .flat_map(|&x| s.iter().map(move |&y| (x, y)))
        .filter(|&(x, y)| compose(x, y) == compose(y, x));
    let all: Vec<_> = commuting.collect();
    assert_eq!(all.len(), 18);
    let nonidentity = all.iter().filter(|(x, y)| *x != id && *y != id).count();
    assert_eq!(nonidentity, 7);
    // xy lies in the derived subgroup A3 exactly when it is even.
    let d2_brute = s
        .iter()
        .flat_map(|&x| s.iter().map(move |&y| (x, y)))
        .filter(|&(x, y)| is_even(compose(x, y)))
        .count();
    assert_eq!(d2_brute, 18);

    let g = spec("sym:3");
    assert_eq!(hom_count(&g, 2, 2, 1_000).unwrap(), 18);
    assert_eq!(build_presentation(&g, 2).unwrap().relators.len(), nonidentity);
    assert_eq!(d2(&g).order, d2_brute);
}

/// 4x4 matrices over F_2 as 16-bit masks, bit `4 i + j` for entry (i, j).
fn mat_mul_f2(a: u16, b: u16) -> u16 {
    let mut out = 0u16;
    for i in 0..4 {
        for j in 0..4 {
            let mut s = 0;
            for k in 0..4 {
                s ^= ((a >> (4 * i + k)) & 1) & ((b >> (4 * k + j)) & 1);
            }
            out |= s << (4 * i + j);
        }
    }
    out
}

fn elementary(i: usize, j: usize) -> u16 {
    0b1000_0100_0010_0001 | 1 << (4 * (i - 1) + (j - 1))
}

#[test]
fn gl_sequence_closure_and_group_order() {
    let gens = [elementary(1, 2), elementary(1, 3), elementary(2, 4), elementary(3, 4)];
    let identity = 0b1000_0100_0010_0001u16;
    let mut seen = std::collections::HashSet::from([identity]);
    let mut frontier = vec![identity];
    while let Some(x) = frontier.pop() {
        for &g in &gens {
            let y = mat_mul_f2(x, g);
            if seen.insert(y) {
                frontier.push(y);
            }
        }
    }
    assert_eq!(seen.len(), 32);

    let gl = spec("gl:4:2");
    assert_eq!(gl.order(), (0..4).map(|i| 16 - (1usize << i)).product::<usize>());
    let ids: Vec<_> = gl_symplectic_sequence(4, 2)
        .unwrap()
        .iter()
        .map(|m| gl_element(&gl, m).unwrap())
        .collect();
    assert_eq!(gl.closure(&ids).unwrap().order(), seen.len());
}

const SUITE: &[&str] = &[
    "cyclic:1",
    "cyclic:6",
    "cyclic:12",
    "product:(cyclic:2),(cyclic:2)",
    "product:(cyclic:2),(cyclic:6)",
    "sym:3",
    "dihedral:8",
    "quaternion",
    "dihedral:12",
    "alt:4",
    "extraspecial:2:2",
    "product:(sym:3),(cyclic:3)",
];

#[test]
fn d2_properties_over_the_suite() {
    for s in SUITE {
        let g = spec(s);
        let d = d2(&g);
        let brute = g
            .elements()
            .flat_map(|x| g.elements().map(move |y| (x, y)))
            .filter(|&(x, y)| {
                // Membership in [G, G] recomputed from all commutators.
                let comms: Vec<_> = g
                    .elements()
                    .flat_map(|a| g.elements().map(move |b| (a, b)))
                    .map(|(a, b)| g.commutator(a, b))
                    .collect();
                g.closure(&comms).unwrap().contains(g.mul(x, y))
            })
            .count();
        assert_eq!(d.order, brute, "{s}");
        assert_eq!(d.order, g.order() * d.derived.order(), "{s}");
        assert!(d2_antidiagonal_generation(&g).unwrap(), "{s}");
        assert_eq!(d.projection_kernel().unwrap(), d.derived.members(), "{s}");
    }
}

#[test]
fn commuting_pairs_equal_classes_times_order() {
    for s in SUITE {
        let g = spec(s);
        let brute = g
            .elements()
            .flat_map(|x| g.elements().map(move |y| (x, y)))
            .filter(|&(x, y)| g.mul(x, y) == g.mul(y, x))
            .count() as u128;
        assert_eq!(hom_count(&g, 2, 2, 10_000_000).unwrap(), brute, "{s}");
        assert_eq!(brute, (g.conjugacy_classes().len() * g.order()) as u128, "{s}");
    }
}

#[test]
fn first_homology_against_hand_reductions() {
    // S3: three Z/2 and one Z/3 glued only at the identity.
    let s3 = homology(&spec("sym:3"), 2, 1, 100_000).unwrap();
    assert_eq!((s3.rank, s3.primary_decomposition()), (0, vec![2, 2, 2, 3]));
    // Q8: three Z/4 amalgamated over the common Z/2 abelianize to Z/4 + Z/2 + Z/2.
    let q8 = homology(&spec("quaternion"), 2, 1, 100_000).unwrap();
    assert_eq!((q8.rank, q8.primary_decomposition()), (0, vec![2, 2, 4]));
    for s in ["cyclic:6", "sym:3", "dihedral:8", "quaternion", "extraspecial:2:2"] {
        assert!(h1_consistency(&spec(s), 200_000).unwrap().agrees(), "{s}");
    }
}

#[test]
fn second_homology_of_small_abelian_groups() {
    assert!(homology(&spec("cyclic:2"), 2, 2, 100_000).unwrap().is_trivial());
    let v4 = homology(&spec("product:(cyclic:2),(cyclic:2)"), 2, 2, 100_000).unwrap();
    assert_eq!((v4.rank, v4.torsion_u64()), (0, vec![2]));
    assert_eq!(homology(&spec("cyclic:5"), 2, 0, 100).unwrap().to_string(), "Z");
}

#[test]
fn extraspecial_d2_orders() {
    for (s, expected) in [("extraspecial:2:2", 64usize), ("extraspecial:3:2", 729)] {
        let g = spec(s);
        let z = g.center(&g.whole());
        let brute = g
            .elements()
            .flat_map(|x| g.elements().map(move |y| (x, y)))
            .filter(|&(x, y)| z.contains(g.mul(x, y)))
            .count();
        assert_eq!(brute, expected);
        assert_eq!(d2(&g).order, expected);
    }
}
