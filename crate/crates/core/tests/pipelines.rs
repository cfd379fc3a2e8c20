//! End-to-end runs on the extraspecial and general linear examples.

use std::time::Instant;

use nilq::colimit::{
    build_presentation, colimit_d2_verify, epsilon_kernel, lemma_suite, omega_check, sequence_image_in_n2,
    todd_coxeter, Outcome, SequenceColimit,
};
use nilq::constructions::{embed_gl_in_sym, extraspecial_symplectic_basis, gl_element, gl_symplectic_sequence};
use nilq::perm::PermGroup;
use nilq::symplectic::{check_symplectic, find_symplectic, structure_report, SearchOutcome};
use nilq::{build, FiniteGroup, GroupSpec};

fn spec(s: &str) -> FiniteGroup {
    build(&s.parse::<GroupSpec>().unwrap()).unwrap()
}

#[test]
fn extraspecial_3_2_colimit_has_order_729() {
    let start = Instant::now();
    let g = spec("extraspecial:3:2");
    let basis = extraspecial_symplectic_basis(&g).unwrap();
    let seq = check_symplectic(&g, &basis).unwrap().valid().unwrap();
    let sc = SequenceColimit::new(&g, &seq, 1_000_000).unwrap();
    let rep = colimit_d2_verify(&g, &sc).unwrap();
    assert_eq!(rep.outcome, Outcome::Pass);
    assert_eq!(rep.enumeration.coset_count, 729);
    assert_eq!(rep.d2_order, 243 * 3);
    assert_eq!(rep.epsilon_bar_bijective, Some(true));
    let lemmas = lemma_suite(&sc, 7).unwrap();
    assert!(lemmas.all_pass(), "{lemmas:?}");
    assert_eq!(lemmas.k_order, 3);
    let kernel = epsilon_kernel(&sc.subgroup, &sc.table, Some(lemmas.k_order)).unwrap();
    assert_eq!(kernel.kernel_order, 3);
    assert!(omega_check(&sc.subgroup, &sc.presentation, &sc.table, -1)
        .unwrap()
        .holds());
    eprintln!("extraspecial:3:2 pipeline took {:?}", start.elapsed());
}

#[test]
fn gl42_sequence_subgroup() {
    let start = Instant::now();
    let g = spec("gl:4:2");
    let mats = gl_symplectic_sequence(4, 2).unwrap();
    let ids: Vec<_> = mats.iter().map(|m| gl_element(&g, m).unwrap()).collect();
    let seq = check_symplectic(&g, &ids).unwrap().valid().unwrap();
    let report = structure_report(&g, &seq).unwrap();
    assert_eq!(report.subgroup_order, 32);
    assert!(report.derived_is_generated_by_c && report.c_central);
    assert_eq!(report.bilinear, Some(true));

    let action = embed_gl_in_sym(4, 2).unwrap();
    let perms: Vec<_> = mats.iter().map(|m| action.image(m)).collect();
    assert!(perms.iter().all(|p| p.is_even()));
    let sym16 = PermGroup::new(16, vec![]).unwrap();
    assert!(check_symplectic(&sym16, &perms).unwrap().valid().unwrap().nontrivial);

    let sc = SequenceColimit::new(&g, &seq, 1_000_000).unwrap();
    let rep = colimit_d2_verify(&g, &sc).unwrap();
    assert_eq!(rep.outcome, Outcome::Pass);
    assert_eq!((rep.enumeration.coset_count, rep.d2_order), (64, 64));
    assert!(rep.d2_embeds);
    let image = sequence_image_in_n2(&sc).unwrap();
    assert!(image.symplectic && image.nontrivial);
    let kernel = epsilon_kernel(&sc.subgroup, &sc.table, None).unwrap();
    assert_eq!(kernel.kernel_order, 2);
    eprintln!("gl:4:2 pipeline took {:?}", start.elapsed());
}

#[test]
fn search_finds_sequences_in_the_gl_subgroup() {
    let g = spec("gl:3:2");
    // GL(3, 2) is too small for the transvection sequence; it has no rank-two sequence either.
    assert!(matches!(
        find_symplectic(&g, 2, 10_000_000).unwrap(),
        SearchOutcome::ExhaustedNone { .. }
    ));
    let e = spec("extraspecial:2:2");
    let t = todd_coxeter(&build_presentation(&e, 3).unwrap(), 10_000).unwrap();
    assert_eq!(t.coset_count(), 32);
}
