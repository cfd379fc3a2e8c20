//! Plain-text rendering of reports.

use std::fmt::Write;

use crate::report::*;

fn opt<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "-".to_string(), |x| x.to_string())
}

fn sequence_lines(out: &mut String, indent: &str, s: &SequenceSection) {
    let _ = writeln!(out, "{indent}r = {}, nontrivial = {}", s.r, s.nontrivial);
    for (k, name) in s.names.iter().enumerate() {
        match &s.ids {
            Some(ids) => {
                let _ = writeln!(out, "{indent}g{} = #{} {}", k + 1, ids[k], name);
            }
            None => {
                let _ = writeln!(out, "{indent}g{} = {}", k + 1, name);
            }
        }
    }
    let id = s.commutator_id.map(|i| format!("#{i} ")).unwrap_or_default();
    let _ = writeln!(out, "{indent}c = {id}{}", s.commutator);
    if let Some(even) = s.even_permutations {
        let _ = writeln!(out, "{indent}even permutations: {even}");
    }
}

fn enumeration_line(e: &EnumerationSection) -> String {
    match e.state {
        EnumerationStateKind::Closed => format!(
            "closed with {} cosets (high water {}, {} defined)",
            e.coset_count, e.high_water, e.total_defined
        ),
        EnumerationStateKind::LimitExceeded => format!(
            "limit of {} cosets exceeded (high water {}, {} defined, {} live)",
            e.limit, e.high_water, e.total_defined, e.coset_count
        ),
    }
}

pub fn render(r: &AnalysisReport) -> String {
    let mut out = String::new();
    let g = &r.group;
    let _ = writeln!(
        out,
        "group {}: order {}, {}",
        g.spec,
        opt(&g.order),
        if g.abelian { "abelian" } else { "nonabelian" }
    );
    if g.representation != "enumerated" {
        let _ = writeln!(out, "  held as a stabilizer chain");
    }
    if r.command == "info" {
        let _ = writeln!(out, "  conjugacy classes {}", opt(&g.conjugacy_classes));
        let _ = writeln!(out, "  nilpotency class {}", opt(&g.nilpotency_class));
        let _ = writeln!(out, "  derived subgroup order {}", opt(&g.derived_order));
        let _ = writeln!(out, "  center order {}", opt(&g.center_order));
    }
    if let Some(s) = &r.symplectic {
        let outcome = serde_json::to_value(s.outcome)
            .ok()
            .and_then(|v| v.as_str().map(str::to_owned))
            .unwrap_or_default();
        let _ = write!(out, "symplectic ({}): {outcome}", s.mode);
        if let Some(e) = s.expanded {
            let _ = write!(out, " after {e} placements");
        }
        let _ = writeln!(out);
        if let Some(seq) = &s.sequence {
            sequence_lines(&mut out, "  ", seq);
        }
        if let Some(v) = &s.violation {
            let _ = writeln!(out, "  violation: {v}");
        }
        if let Some(st) = &s.structure {
            let _ = writeln!(
                out,
                "  subgroup order {}, derived = <c>: {}, c central: {}, bilinear: {}, |c| = {}",
                st.subgroup_order,
                st.derived_generated_by_commutator,
                st.commutator_central,
                opt(&st.bilinear),
                st.commutator_order
            );
        }
    }
    if let Some(d) = &r.d2 {
        let _ = writeln!(
            out,
            "D2 of {}: order {} (derived order {}), antidiagonal generation {}, ker pi1 = 1 x [G,G]: {}",
            d.of,
            d.order,
            d.derived_order,
            opt(&d.antidiagonal_generation),
            opt(&d.projection_kernel_is_derived)
        );
    }
    if let Some(n) = &r.n2 {
        let _ = writeln!(
            out,
            "N{} of {} (order {}, {} relators): {}",
            n.q,
            n.of,
            n.presented_order,
            n.relators,
            enumeration_line(&n.enumeration)
        );
        if let Some(k) = n.kernel_order {
            let _ = writeln!(
                out,
                "  kernel order {k}, torsion free {}, |k| = {}",
                opt(&n.torsion_free),
                opt(&n.k_order)
            );
        }
    }
    if let Some(t) = &r.colimit_check {
        let outcome = match t.outcome {
            OutcomeKind::Pass => "PASS",
            OutcomeKind::Fail => "FAIL",
            OutcomeKind::Inconclusive => "INCONCLUSIVE",
        };
        let _ = writeln!(
            out,
            "colimit vs D2: {outcome} (|S| = {}, |D2(S)| = {}, bijective {}, factorization {}, D2 embeds {}, image symplectic {})",
            t.subgroup_order,
            t.d2_order,
            opt(&t.epsilon_bar_bijective),
            opt(&t.factorization_holds),
            t.d2_embeds,
            opt(&t.image_symplectic)
        );
    }
    if let Some(l) = &r.lemmas {
        let _ = writeln!(
            out,
            "lemmas (seed {}, {} merge pairs{}, exponents up to {}):",
            l.seed,
            l.merge_pairs_checked,
            if l.merge_exhaustive {
                ", exhaustive"
            } else {
                ", sampled"
            },
            l.exponent_bound
        );
        for (name, ok) in &l.checks {
            let _ = writeln!(out, "  {name}: {}", if *ok { "pass" } else { "FAIL" });
        }
    }
    if let Some(h) = &r.homology {
        let counts: Vec<String> = h.simplex_counts.iter().map(|c| c.to_string()).collect();
        let _ = writeln!(
            out,
            "homology of B({}, G), simplices per degree [{}]",
            h.q,
            counts.join(", ")
        );
        for e in &h.groups {
            let _ = writeln!(out, "  H{} = {}", e.degree, e.display);
        }
        if let Some(p) = &h.h1_from_presentation {
            let _ = writeln!(out, "  H1 from the presentation = {p}, agrees: {}", opt(&h.h1_agrees));
        }
    }
    if let Some(h) = &r.hom_count {
        let _ = writeln!(out, "tuples of length {} generating class < {}: {}", h.n, h.q, h.count);
    }
    if let Some(c) = &r.conjecture {
        let _ = writeln!(
            out,
            "N{} probe: class {}, predicts isomorphism {}, {}; observed {}, {}",
            c.q,
            opt(&c.nilpotency_class),
            c.predicts_isomorphism,
            enumeration_line(&c.enumeration),
            opt(&c.observed_isomorphism),
            c.agreement
        );
    }
    if let Some(v) = &r.verdict {
        let _ = writeln!(out, "verdict: {} ({})", v.verdict.label(), v.certificate.kind);
        if let Some(w) = &v.certificate.torsion_word {
            let _ = writeln!(
                out,
                "  kernel element {w} of order {}, kernel order {}",
                opt(&v.certificate.torsion_order),
                opt(&v.certificate.kernel_order)
            );
        }
    }
    out
}
