use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use anyhow::{anyhow, bail, Context, Result};
use nilq::bqg::{build_complex, hom_count, homology_of, presentation_abelianization, AbelianGroup};
use nilq::colimit::{
    build_presentation, colimit_d2_verify, conjecture_probe, d2, d2_antidiagonal_generation, epsilon_kernel,
    kpi1_verdict, lemma_suite, sequence_image_in_n2, todd_coxeter, Agreement, Certificate, EnumerationState,
    EnumerationSummary, Outcome, SequenceColimit, Verdict,
};
use nilq::constructions::{build_ambient, embed_gl_in_sym, gl_element, gl_symplectic_sequence, Ambient};
use nilq::group::{Backing, CAYLEY_LIMIT};
use nilq::perm::Perm;
use nilq::symplectic::{
    check_symplectic, find_symplectic, structure_report, Certification, SearchOutcome, SymplecticSequence,
};
use nilq::{build, Elem, FiniteGroup, GroupSpec};

use crate::report::*;

fn parse_spec(spec: &str) -> Result<GroupSpec> {
    spec.parse::<GroupSpec>()
        .with_context(|| format!("invalid group spec `{spec}`"))
}

fn ambient(spec: &str) -> Result<(GroupSpec, Ambient)> {
    let parsed = parse_spec(spec)?;
    let amb = build_ambient(&parsed).with_context(|| format!("cannot build `{spec}`"))?;
    Ok((parsed, amb))
}

fn enumerated(spec: &str, what: &str) -> Result<FiniteGroup> {
    match ambient(spec)?.1 {
        Ambient::Enumerated(g) => Ok(g),
        Ambient::Chain(_) => {
            bail!("{what} needs an enumerated group; `{spec}` is only available as a stabilizer chain")
        }
    }
}

fn finite_section(spec: &str, g: &FiniteGroup) -> GroupSection {
    let whole = g.whole();
    GroupSection {
        spec: spec.to_string(),
        order: Some(g.order() as u128),
        abelian: g.is_abelian(),
        representation: "enumerated".into(),
        conjugacy_classes: Some(g.conjugacy_classes().len()),
        nilpotency_class: g.nilpotency_class(&whole),
        derived_order: Some(g.derived_subgroup(&whole).order()),
        center_order: Some(g.center(&whole).order()),
    }
}

fn group_section(spec: &str, amb: &Ambient) -> GroupSection {
    match amb {
        Ambient::Enumerated(g) => finite_section(spec, g),
        Ambient::Chain(p) => GroupSection {
            spec: spec.to_string(),
            order: p.order(),
            abelian: p.is_abelian(),
            representation: "stabilizer_chain".into(),
            conjugacy_classes: None,
            nilpotency_class: None,
            derived_order: None,
            center_order: None,
        },
    }
}

fn d2_section(g: &FiniteGroup, of: &str) -> Result<D2Section> {
    let d = d2(g);
    let small = g.order() <= CAYLEY_LIMIT;
    Ok(D2Section {
        of: of.into(),
        order: d.order,
        derived_order: d.derived.order(),
        antidiagonal_generation: if small {
            Some(d2_antidiagonal_generation(g)?)
        } else {
            None
        },
        projection_kernel_is_derived: d.projection_kernel().map(|k| k == d.derived.members()),
    })
}

fn enumeration_section(e: &EnumerationSummary) -> EnumerationSection {
    EnumerationSection {
        state: match e.state {
            EnumerationState::Closed => EnumerationStateKind::Closed,
            EnumerationState::LimitExceeded => EnumerationStateKind::LimitExceeded,
        },
        coset_count: e.coset_count,
        high_water: e.high_water,
        total_defined: e.total_defined,
        limit: e.limit,
    }
}

fn ids_section(g: &FiniteGroup, seq: &SymplecticSequence) -> SequenceSection {
    SequenceSection {
        r: seq.r,
        ids: Some(seq.elements.iter().map(|e| e.index()).collect()),
        names: seq.elements.iter().map(|&e| g.element_name(e)).collect(),
        commutator_id: Some(seq.c.index()),
        commutator: g.element_name(seq.c),
        nontrivial: seq.nontrivial,
        even_permutations: match g.backing() {
            Backing::Permutation { .. } => Some(
                seq.elements
                    .iter()
                    .all(|&e| Perm::from_images(g.key(e).to_vec()).is_ok_and(|p| p.is_even())),
            ),
            _ => None,
        },
    }
}

fn perm_section(seq: &SymplecticSequence<Perm>) -> SequenceSection {
    SequenceSection {
        r: seq.r,
        ids: None,
        names: seq.elements.iter().map(|p| p.to_string()).collect(),
        commutator_id: None,
        commutator: seq.c.to_string(),
        nontrivial: seq.nontrivial,
        even_permutations: Some(seq.elements.iter().all(|p| p.is_even())),
    }
}

fn structure_section(g: &FiniteGroup, seq: &SymplecticSequence) -> Result<StructureSection> {
    let s = structure_report(g, seq)?;
    Ok(StructureSection {
        subgroup_order: s.subgroup_order,
        derived_generated_by_commutator: s.derived_is_generated_by_c,
        commutator_central: s.c_central,
        bilinear: s.bilinear,
        commutator_order: s.c_order,
    })
}

/// The transvection sequence of GL(4, 2) placed in the ambient group.
enum Seeded {
    Ids(Vec<Elem>),
    Perms(Vec<Perm>),
}

fn seeded_perms(degree: usize) -> Result<Vec<Perm>> {
    if degree < 16 {
        bail!("--seed-gl needs a permutation group on at least 16 points, this one acts on {degree}");
    }
    let action = embed_gl_in_sym(4, 2)?;
    Ok(gl_symplectic_sequence(4, 2)?
        .iter()
        .map(|m| action.image(m).extend(degree))
        .collect())
}

fn seeded(amb: &Ambient) -> Result<Seeded> {
    match amb {
        Ambient::Chain(p) => {
            let perms = seeded_perms(p.degree())?;
            if let Some(bad) = perms.iter().find(|x| !p.contains(x)) {
                bail!("seeded element {bad} is not in the group");
            }
            Ok(Seeded::Perms(perms))
        }
        Ambient::Enumerated(g) => match g.backing() {
            Backing::Permutation {
                linear: Some((n, p)), ..
            } => {
                let mats = gl_symplectic_sequence(*n, *p)?;
                Ok(Seeded::Ids(
                    mats.iter().map(|m| gl_element(g, m)).collect::<nilq::Result<_>>()?,
                ))
            }
            Backing::Permutation { degree, linear: None } => {
                let ids = seeded_perms(*degree)?
                    .iter()
                    .map(|x| {
                        g.find(x.images())
                            .ok_or_else(|| anyhow!("seeded element {x} is not in the group"))
                    })
                    .collect::<Result<_>>()?;
                Ok(Seeded::Ids(ids))
            }
            _ => bail!("--seed-gl applies to general linear and permutation groups"),
        },
    }
}

pub fn info(spec: &str) -> Result<AnalysisReport> {
    let (_, amb) = ambient(spec)?;
    let mut report = AnalysisReport::new("info", group_section(spec, &amb));
    if let Ambient::Enumerated(g) = &amb {
        report.d2 = Some(d2_section(g, "group")?);
    }
    Ok(report)
}

pub fn symplectic_check(spec: &str, ids: &[usize], cycles: &[String], seed_gl: bool) -> Result<AnalysisReport> {
    let (_, amb) = ambient(spec)?;
    let mut report = AnalysisReport::new("symplectic check", group_section(spec, &amb));
    let given = [!ids.is_empty(), !cycles.is_empty(), seed_gl]
        .iter()
        .filter(|&&b| b)
        .count();
    if given != 1 {
        bail!("give exactly one of --ids, --cycles or --seed-gl");
    }
    let mode = if seed_gl { "seeded" } else { "check" };
    let section = |outcome, sequence, violation, structure| SymplecticSection {
        mode: mode.into(),
        r: None,
        budget: None,
        expanded: None,
        outcome,
        sequence,
        violation,
        structure,
    };
    report.symplectic = Some(match &amb {
        Ambient::Enumerated(g) => {
            let elems: Vec<Elem> = if seed_gl {
                match seeded(&amb)? {
                    Seeded::Ids(ids) => ids,
                    Seeded::Perms(_) => unreachable!("enumerated ambients seed by id"),
                }
            } else if !ids.is_empty() {
                ids.iter().map(|&i| g.check(i)).collect::<nilq::Result<_>>()?
            } else {
                let degree = match g.backing() {
                    Backing::Permutation { degree, .. } => *degree,
                    _ => bail!("--cycles applies to permutation groups"),
                };
                cycles
                    .iter()
                    .map(|c| {
                        let p = Perm::parse_cycles(c, degree)?;
                        g.find(p.images()).ok_or_else(|| anyhow!("{p} is not in the group"))
                    })
                    .collect::<Result<_>>()?
            };
            match check_symplectic(g, &elems)? {
                Certification::Valid(seq) => {
                    let structure = Some(structure_section(g, &seq)?);
                    section(SymplecticOutcome::Valid, Some(ids_section(g, &seq)), None, structure)
                }
                Certification::Invalid(v) => section(SymplecticOutcome::Invalid, None, Some(v.to_string()), None),
            }
        }
        Ambient::Chain(p) => {
            if !ids.is_empty() {
                bail!("--ids needs an enumerated group; use --cycles");
            }
            let perms = if seed_gl {
                match seeded(&amb)? {
                    Seeded::Perms(perms) => perms,
                    Seeded::Ids(_) => unreachable!("chain ambients seed by permutation"),
                }
            } else {
                let perms = cycles
                    .iter()
                    .map(|c| Perm::parse_cycles(c, p.degree()))
                    .collect::<nilq::Result<Vec<_>>>()?;
                if let Some(bad) = perms.iter().find(|x| !p.contains(x)) {
                    bail!("{bad} is not in the group");
                }
                perms
            };
            match check_symplectic(p, &perms)? {
                Certification::Valid(seq) => section(SymplecticOutcome::Valid, Some(perm_section(&seq)), None, None),
                Certification::Invalid(v) => section(SymplecticOutcome::Invalid, None, Some(v.to_string()), None),
            }
        }
    });
    Ok(report)
}

pub fn symplectic_find(spec: &str, r: usize, budget: u64, seed_gl: bool) -> Result<AnalysisReport> {
    let (_, amb) = ambient(spec)?;
    if seed_gl {
        if r != 2 {
            bail!("the seeded sequence has r = 2");
        }
        let mut report = symplectic_check(spec, &[], &[], true)?;
        report.command = "symplectic find".into();
        if let Some(s) = report.symplectic.as_mut() {
            s.r = Some(2);
            s.outcome = match s.outcome {
                SymplecticOutcome::Valid => SymplecticOutcome::Found,
                other => other,
            };
        }
        return Ok(report);
    }
    let g = match &amb {
        Ambient::Enumerated(g) => g,
        Ambient::Chain(_) => bail!("search needs an enumerated group; for large symmetric groups pass --seed-gl"),
    };
    let mut report = AnalysisReport::new("symplectic find", group_section(spec, &amb));
    report.symplectic = Some(search_section(g, r, budget, &find_symplectic(g, r, budget)?)?);
    Ok(report)
}

fn search_section(g: &FiniteGroup, r: usize, budget: u64, outcome: &SearchOutcome) -> Result<SymplecticSection> {
    let (outcome, expanded, sequence, structure) = match outcome {
        SearchOutcome::Found { sequence, expanded } => (
            SymplecticOutcome::Found,
            *expanded,
            Some(ids_section(g, sequence)),
            Some(structure_section(g, sequence)?),
        ),
        SearchOutcome::ExhaustedNone { expanded } => (SymplecticOutcome::ExhaustedNone, *expanded, None, None),
        SearchOutcome::NotFoundWithinBudget { expanded } => {
            (SymplecticOutcome::NotFoundWithinBudget, *expanded, None, None)
        }
    };
    Ok(SymplecticSection {
        mode: "find".into(),
        r: Some(r),
        budget: Some(budget),
        expanded: Some(expanded),
        outcome,
        sequence,
        violation: None,
        structure,
    })
}

fn n2_section(g: &FiniteGroup, q: usize, of: &str, limit: usize) -> Result<N2Section> {
    let p = build_presentation(g, q)?;
    let t = todd_coxeter(&p, limit)?;
    let kernel = if t.is_closed() {
        Some(epsilon_kernel(g, &t, None)?)
    } else {
        None
    };
    Ok(N2Section {
        q,
        of: of.into(),
        presented_order: g.order(),
        relators: p.relators.len(),
        enumeration: enumeration_section(&EnumerationSummary::from(&t)),
        kernel_order: kernel.as_ref().map(|k| k.kernel_order),
        torsion_free: kernel.as_ref().map(|k| k.torsion_free),
        k_order: None,
    })
}

pub fn n2(spec: &str, q: usize, limit: usize) -> Result<AnalysisReport> {
    let g = enumerated(spec, "coset enumeration")?;
    let mut report = AnalysisReport::new("n2", finite_section(spec, &g));
    report.n2 = Some(n2_section(&g, q, "group", limit)?);
    Ok(report)
}

/// Colimit, D2 comparison, lemmas and kernel for a certified sequence in `g`.
fn analyse_sequence(
    report: &mut AnalysisReport,
    g: &FiniteGroup,
    seq: &SymplecticSequence,
    limit: usize,
    seed: u64,
) -> Result<()> {
    let sc = SequenceColimit::new(g, seq, limit)?;
    report.d2 = Some(d2_section(&sc.subgroup, "sequence_subgroup")?);
    let check = colimit_d2_verify(g, &sc)?;
    let mut n2 = N2Section {
        q: 2,
        of: "sequence_subgroup".into(),
        presented_order: sc.subgroup.order(),
        relators: sc.presentation.relators.len(),
        enumeration: enumeration_section(&check.enumeration),
        kernel_order: None,
        torsion_free: None,
        k_order: None,
    };
    let mut image_symplectic = None;
    if sc.table.is_closed() {
        let lemmas = lemma_suite(&sc, seed)?;
        let kernel = epsilon_kernel(&sc.subgroup, &sc.table, Some(lemmas.k_order))?;
        n2.kernel_order = Some(kernel.kernel_order);
        n2.torsion_free = Some(kernel.torsion_free);
        n2.k_order = kernel.k_order;
        let image = sequence_image_in_n2(&sc)?;
        image_symplectic = Some(image.symplectic && image.nontrivial);
        let checks = BTreeMap::from([
            ("k_equal".to_string(), lemmas.k_equal),
            ("k_power".to_string(), lemmas.k_power),
            ("merge".to_string(), lemmas.merge),
            ("exponent_law".to_string(), lemmas.exponent_law),
            ("k_central".to_string(), lemmas.k_central),
            ("kernel_is_k".to_string(), lemmas.kernel_is_k),
        ]);
        report.lemmas = Some(LemmaSection {
            seed: lemmas.seed,
            merge_pairs_checked: lemmas.merge_pairs_checked,
            merge_exhaustive: lemmas.merge_exhaustive,
            exponent_bound: lemmas.exponent_bound,
            k_order: lemmas.k_order,
            commutator_order: lemmas.c_order,
            checks,
        });
    }
    report.n2 = Some(n2);
    report.colimit_check = Some(ColimitCheckSection {
        subgroup_order: check.subgroup_order,
        d2_order: check.d2_order,
        outcome: match check.outcome {
            Outcome::Pass => OutcomeKind::Pass,
            Outcome::Fail => OutcomeKind::Fail,
            Outcome::Inconclusive => OutcomeKind::Inconclusive,
        },
        epsilon_bar_bijective: check.epsilon_bar_bijective,
        factorization_holds: check.factorization_holds,
        d2_embeds: check.d2_embeds,
        image_symplectic,
    });
    Ok(())
}

fn sequence_certificate(sequence: SequenceSection) -> VerdictSection {
    VerdictSection {
        verdict: VerdictKind::NotKPi1,
        certificate: CertificateSection {
            kind: "symplectic_sequence".into(),
            sequence: Some(sequence),
            torsion_word: None,
            torsion_order: None,
            kernel_order: None,
        },
    }
}

fn plain_certificate(verdict: VerdictKind, kind: &str) -> VerdictSection {
    VerdictSection {
        verdict,
        certificate: CertificateSection {
            kind: kind.into(),
            sequence: None,
            torsion_word: None,
            torsion_order: None,
            kernel_order: None,
        },
    }
}

pub fn verdict(spec: &str, budget: u64, limit: usize, seed: u64, seed_gl: bool) -> Result<AnalysisReport> {
    let (_, amb) = ambient(spec)?;
    let mut report = AnalysisReport::new("verdict", group_section(spec, &amb));
    if amb.is_abelian() {
        report.verdict = Some(plain_certificate(VerdictKind::KPi1, "abelian"));
        if let Ambient::Enumerated(g) = &amb {
            report.n2 = Some(n2_section(g, 2, "group", limit)?);
        }
        return Ok(report);
    }
    match &amb {
        Ambient::Chain(_) if !seed_gl => {
            // No search in stabilizer-chain ambients.
            report.verdict = Some(plain_certificate(VerdictKind::Inconclusive, "none"));
        }
        Ambient::Chain(_) => {
            let Seeded::Perms(perms) = seeded(&amb)? else {
                unreachable!("chain ambients seed by permutation")
            };
            let Ambient::Chain(p) = &amb else { unreachable!() };
            let seq = check_symplectic(p, &perms)?
                .valid()
                .filter(|s| s.nontrivial)
                .ok_or_else(|| anyhow!("seeded sequence does not certify"))?;
            report.symplectic = Some(SymplecticSection {
                mode: "seeded".into(),
                r: Some(seq.r),
                budget: None,
                expanded: None,
                outcome: SymplecticOutcome::Valid,
                sequence: Some(perm_section(&seq)),
                violation: None,
                structure: None,
            });
            report.verdict = Some(sequence_certificate(perm_section(&seq)));
            let s = build(&GroupSpec::Perm(perms.clone()))?;
            let ids: Vec<Elem> = perms
                .iter()
                .map(|x| {
                    s.find(x.images())
                        .ok_or_else(|| anyhow!("{x} missing from its own closure"))
                })
                .collect::<Result<_>>()?;
            let local = check_symplectic(&s, &ids)?.valid().expect("certified above");
            analyse_sequence(&mut report, &s, &local, limit, seed)?;
        }
        Ambient::Enumerated(g) if seed_gl => {
            let Seeded::Ids(ids) = seeded(&amb)? else {
                unreachable!("enumerated ambients seed by id")
            };
            let seq = check_symplectic(g, &ids)?
                .valid()
                .filter(|s| s.nontrivial)
                .ok_or_else(|| anyhow!("seeded sequence does not certify"))?;
            report.symplectic = Some(SymplecticSection {
                mode: "seeded".into(),
                r: Some(seq.r),
                budget: None,
                expanded: None,
                outcome: SymplecticOutcome::Valid,
                sequence: Some(ids_section(g, &seq)),
                violation: None,
                structure: Some(structure_section(g, &seq)?),
            });
            report.verdict = Some(sequence_certificate(ids_section(g, &seq)));
            analyse_sequence(&mut report, g, &seq, limit, seed)?;
        }
        Ambient::Enumerated(g) => {
            let v = kpi1_verdict(g, budget, limit)?;
            if let Some(search) = &v.search {
                report.symplectic = Some(search_section(g, 2, budget, search)?);
            }
            if let Some(e) = &v.enumeration {
                let p = build_presentation(g, 2)?;
                let closed = e.state == EnumerationState::Closed;
                report.n2 = Some(N2Section {
                    q: 2,
                    of: "group".into(),
                    presented_order: g.order(),
                    relators: p.relators.len(),
                    enumeration: enumeration_section(e),
                    kernel_order: closed.then(|| e.coset_count / g.order()),
                    torsion_free: closed.then(|| e.coset_count == g.order()),
                    k_order: None,
                });
            }
            report.verdict = Some(match (&v.verdict, &v.certificate) {
                (Verdict::NotKPi1, Certificate::Sequence(seq)) => sequence_certificate(ids_section(g, seq)),
                (
                    Verdict::NotKPi1,
                    Certificate::Torsion {
                        word,
                        order,
                        kernel_order,
                    },
                ) => VerdictSection {
                    verdict: VerdictKind::NotKPi1,
                    certificate: CertificateSection {
                        kind: "kernel_torsion".into(),
                        sequence: None,
                        torsion_word: Some(word.to_string()),
                        torsion_order: Some(*order),
                        kernel_order: Some(*kernel_order),
                    },
                },
                (Verdict::KPi1, _) => plain_certificate(VerdictKind::KPi1, "abelian"),
                _ => plain_certificate(VerdictKind::Inconclusive, "none"),
            });
            if let Certificate::Sequence(seq) = &v.certificate {
                analyse_sequence(&mut report, g, seq, limit, seed)?;
            }
        }
    }
    Ok(report)
}

fn homology_entry(degree: usize, h: &AbelianGroup) -> HomologyGroupEntry {
    HomologyGroupEntry {
        degree,
        rank: h.rank,
        torsion: h.torsion.iter().map(|d| d.to_string()).collect(),
        display: h.to_string(),
    }
}

pub fn homology(spec: &str, q: usize, dim: usize, budget: usize, dump: Option<&Path>) -> Result<AnalysisReport> {
    if dim > 2 {
        bail!("homology is computed up to degree 2, got --dim {dim}");
    }
    let g = enumerated(spec, "homology")?;
    let complex = build_complex(&g, q, dim + 1, budget)?;
    if let Some(dir) = dump {
        fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
        for (n, m) in complex.boundaries.iter().enumerate().skip(1) {
            let path = dir.join(format!("boundary_{n}.txt"));
            fs::write(&path, m.dump()).with_context(|| format!("cannot write {}", path.display()))?;
        }
    }
    let groups: Vec<AbelianGroup> = (0..=dim)
        .map(|k| homology_of(&complex, k))
        .collect::<nilq::Result<_>>()?;
    let (h1_from_presentation, h1_agrees) = if q == 2 && dim >= 1 {
        let h1 = presentation_abelianization(&g)?;
        let agrees = h1 == groups[1];
        (Some(h1.to_string()), Some(agrees))
    } else {
        (None, None)
    };
    let mut report = AnalysisReport::new("homology", finite_section(spec, &g));
    report.homology = Some(HomologySection {
        q,
        dim,
        simplex_counts: complex.simplex_counts(),
        groups: groups.iter().enumerate().map(|(k, h)| homology_entry(k, h)).collect(),
        h1_from_presentation,
        h1_agrees,
    });
    Ok(report)
}

pub fn hom_count_cmd(spec: &str, n: usize, q: usize, budget: u64) -> Result<AnalysisReport> {
    let g = enumerated(spec, "tuple counting")?;
    let count = hom_count(&g, n, q, budget)?;
    let mut report = AnalysisReport::new("hom-count", finite_section(spec, &g));
    report.hom_count = Some(HomCountSection { n, q, count });
    Ok(report)
}

pub fn conjecture(spec: &str, q: usize, limit: usize) -> Result<AnalysisReport> {
    let g = enumerated(spec, "coset enumeration")?;
    let probe = conjecture_probe(&g, q, limit)?;
    let mut report = AnalysisReport::new("conjecture", finite_section(spec, &g));
    report.conjecture = Some(ConjectureSection {
        q,
        nilpotency_class: probe.nilpotency_class,
        predicts_isomorphism: probe.predicts_isomorphism,
        observed_isomorphism: probe.observed_isomorphism,
        agreement: match probe.agreement {
            Agreement::Agree => "agree",
            Agreement::Disagree => "disagree",
            Agreement::Inconclusive => "inconclusive",
        }
        .into(),
        enumeration: enumeration_section(&probe.enumeration),
    });
    Ok(report)
}
