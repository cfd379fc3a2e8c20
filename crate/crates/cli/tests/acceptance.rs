//! The ten acceptance criteria, run against the built binary where a CLI
//! command exists and against the library otherwise. Prints one PASS/FAIL
//! line per criterion; run with `--nocapture` to see them.

use std::collections::HashSet;
use std::process::Command;
use std::time::{Duration, Instant};

use nilq::colimit::{colimit_d2_verify, lemma_suite, Outcome, SequenceColimit};
use nilq::constructions::{embed_gl_in_sym, extraspecial_symplectic_basis, gl_element, gl_symplectic_sequence};
use nilq::perm::{Perm, PermGroup};
use nilq::symplectic::check_symplectic;
use nilq::{build, Elem, FiniteGroup, GroupSpec};
use nilq_cli::report::{EnumerationStateKind, OutcomeKind, SymplecticOutcome, VerdictKind};
use nilq_cli::{parse_report, AnalysisReport};

type Check = Result<(), String>;
type Criterion = (&'static str, fn(&mut Runs) -> Check);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

/// Every CLI invocation with its stdout, for the determinism replay.
#[derive(Default)]
struct Runs {
    log: Vec<(Vec<String>, String, Option<i32>)>,
}

impl Runs {
    fn cli(&mut self, args: &[&str]) -> Result<(AnalysisReport, Option<i32>), String> {
        let (stdout, code) = invoke(args)?;
        let report = parse_report(&stdout).map_err(|e| format!("`{}`: unparsable report: {e}", args.join(" ")))?;
        self.log
            .push((args.iter().map(|s| s.to_string()).collect(), stdout, code));
        Ok((report, code))
    }
}

fn invoke(args: &[&str]) -> Result<(String, Option<i32>), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_nilq"))
        .arg("--json")
        .args(args)
        .output()
        .map_err(|e| format!("cannot run nilq: {e}"))?;
    let stdout = String::from_utf8(out.stdout).map_err(|e| e.to_string())?;
    Ok((stdout, out.status.code()))
}

fn group(s: &str) -> FiniteGroup {
    build(&s.parse::<GroupSpec>().unwrap()).unwrap()
}

/// `[G, G]` by closing the set of all commutators under multiplication.
fn derived_by_brute_force(g: &FiniteGroup) -> HashSet<Elem> {
    let mut set: HashSet<Elem> = g
        .elements()
        .flat_map(|a| g.elements().map(move |b| g.commutator(a, b)))
        .collect();
    loop {
        let products: Vec<Elem> = set
            .iter()
            .flat_map(|&a| set.iter().map(move |&b| g.mul(a, b)))
            .collect();
        let before = set.len();
        set.extend(products);
        if set.len() == before {
            return set;
        }
    }
}

fn d2_by_brute_force(g: &FiniteGroup) -> usize {
    let derived = derived_by_brute_force(g);
    g.elements()
        .flat_map(|x| g.elements().map(move |y| (x, y)))
        .filter(|&(x, y)| derived.contains(&g.mul(x, y)))
        .count()
}

fn within(start: Instant, limit: Duration, what: &str) -> Check {
    let took = start.elapsed();
    ensure!(took < limit, "{what} took {took:?}, limit {limit:?}");
    Ok(())
}

fn criterion_1(runs: &mut Runs) -> Check {
    for (p, limit) in [(2usize, 10u64), (3, 120)] {
        let spec = format!("extraspecial:{p}:2");
        let start = Instant::now();
        let (r, code) = runs.cli(&["verdict", &spec])?;
        within(start, Duration::from_secs(limit), &spec)?;
        ensure!(code == Some(0), "{spec}: exit {code:?}");
        let seq = r
            .symplectic
            .as_ref()
            .and_then(|s| s.sequence.as_ref())
            .ok_or("no sequence")?;
        ensure!(seq.nontrivial && seq.r == 2, "{spec}: sequence {seq:?}");
        let n2 = r.n2.as_ref().ok_or("no n2 section")?;
        let expected = p.pow(5) * p;
        ensure!(
            n2.enumeration.state == EnumerationStateKind::Closed,
            "{spec}: enumeration open"
        );
        ensure!(
            n2.enumeration.coset_count == expected,
            "{spec}: |N2| = {}",
            n2.enumeration.coset_count
        );
        let brute = d2_by_brute_force(&group(&spec));
        ensure!(brute == expected, "{spec}: brute-force |D2| = {brute}");
        let t = r.colimit_check.as_ref().ok_or("no colimit section")?;
        ensure!(t.d2_order == brute && t.outcome == OutcomeKind::Pass, "{spec}: {t:?}");
        ensure!(n2.kernel_order == Some(p), "{spec}: kernel order {:?}", n2.kernel_order);
        let lemmas = r.lemmas.as_ref().ok_or("no lemma section")?;
        ensure!(
            lemmas.checks["kernel_is_k"] && lemmas.k_order == p,
            "{spec}: k order {}",
            lemmas.k_order
        );
        let v = r.verdict.as_ref().ok_or("no verdict")?;
        ensure!(v.verdict == VerdictKind::NotKPi1, "{spec}: verdict {:?}", v.verdict);
    }
    Ok(())
}

fn criterion_2(runs: &mut Runs) -> Check {
    let start = Instant::now();
    let gl = group("gl:4:2");
    let mats = gl_symplectic_sequence(4, 2).map_err(|e| e.to_string())?;
    let ids: Vec<Elem> = mats.iter().map(|m| gl_element(&gl, m).unwrap()).collect();
    let seq = check_symplectic(&gl, &ids)
        .unwrap()
        .valid()
        .ok_or("transvections do not certify in gl(4,2)")?;
    ensure!(seq.nontrivial, "trivial commutator in gl(4,2)");

    let action = embed_gl_in_sym(4, 2).map_err(|e| e.to_string())?;
    let perms: Vec<Perm> = mats.iter().map(|m| action.image(m)).collect();
    ensure!(perms.iter().all(|x| x.is_even()), "odd permutation in the image");
    let n = 16u32;
    let sym16 = PermGroup::new(
        16,
        vec![
            Perm::from_images((0..n).map(|x| if x < 2 { 1 - x } else { x }).collect()).unwrap(),
            Perm::from_images((0..n).map(|x| (x + 1) % n).collect()).unwrap(),
        ],
    )
    .unwrap();
    ensure!(sym16.order() == Some((1..=16u128).product()), "sym(16) chain order");
    ensure!(perms.iter().all(|x| sym16.contains(x)), "image outside sym(16)");
    let image = check_symplectic(&sym16, &perms)
        .unwrap()
        .valid()
        .ok_or("image does not certify")?;
    ensure!(image.nontrivial, "image commutator trivial");

    let sc = SequenceColimit::new(&gl, &seq, 1_000_000).map_err(|e| e.to_string())?;
    let t = colimit_d2_verify(&gl, &sc).map_err(|e| e.to_string())?;
    ensure!(t.subgroup_order == 32, "|S| = {}", t.subgroup_order);
    ensure!(
        t.outcome == Outcome::Pass && t.enumeration.coset_count == 64 && t.d2_order == 64,
        "{t:?}"
    );

    for spec in ["gl:4:2", "sym:16"] {
        let (r, code) = runs.cli(&["verdict", spec, "--seed-gl"])?;
        ensure!(code == Some(0), "{spec}: exit {code:?}");
        let t = r.colimit_check.as_ref().ok_or("no colimit section")?;
        ensure!(
            t.outcome == OutcomeKind::Pass && t.d2_order == 64 && t.subgroup_order == 32,
            "{spec}: {t:?}"
        );
        let n2 = r.n2.as_ref().ok_or("no n2 section")?;
        ensure!(
            n2.enumeration.coset_count == 64,
            "{spec}: |N2(S)| = {}",
            n2.enumeration.coset_count
        );
        ensure!(
            r.verdict.as_ref().map(|v| v.verdict) == Some(VerdictKind::NotKPi1),
            "{spec}: verdict"
        );
    }
    let (r, _) = runs.cli(&["symplectic", "find", "sym:16", "--r", "2", "--seed-gl"])?;
    let s = r.symplectic.ok_or("no symplectic section")?;
    ensure!(
        s.outcome == SymplecticOutcome::Found,
        "sym:16 seeded search: {:?}",
        s.outcome
    );
    ensure!(
        s.sequence.and_then(|q| q.even_permutations) == Some(true),
        "seeded sequence parity"
    );
    within(start, Duration::from_secs(30), "gl pipeline")
}

fn criterion_3(runs: &mut Runs) -> Check {
    let mut specs: Vec<String> = (1..=16).map(|n| format!("cyclic:{n}")).collect();
    specs.extend(
        [
            "product:(cyclic:2),(cyclic:2)",
            "product:(cyclic:2),(cyclic:4)",
            "product:(cyclic:3),(cyclic:3)",
            "product:(cyclic:4),(cyclic:4)",
            "product:(product:(cyclic:2),(cyclic:2)),(cyclic:2)",
        ]
        .map(String::from),
    );
    for spec in &specs {
        let (r, code) = runs.cli(&["verdict", spec])?;
        ensure!(code == Some(0), "{spec}: exit {code:?}");
        let n2 = r.n2.as_ref().ok_or_else(|| format!("{spec}: no n2 section"))?;
        let order = r.group.order.unwrap() as usize;
        ensure!(
            n2.enumeration.state == EnumerationStateKind::Closed && n2.enumeration.coset_count == order,
            "{spec}: {:?}",
            n2.enumeration
        );
        ensure!(
            r.verdict.as_ref().map(|v| v.verdict) == Some(VerdictKind::KPi1),
            "{spec}: verdict"
        );
    }
    Ok(())
}

fn criterion_4(runs: &mut Runs) -> Check {
    let start = Instant::now();
    let g = group("extraspecial:2:2");
    let basis = extraspecial_symplectic_basis(&g).map_err(|e| e.to_string())?;
    let seq = check_symplectic(&g, &basis)
        .unwrap()
        .valid()
        .ok_or("basis does not certify")?;
    let sc = SequenceColimit::new(&g, &seq, 1_000_000).map_err(|e| e.to_string())?;
    let l = lemma_suite(&sc, 0).map_err(|e| e.to_string())?;
    ensure!(
        l.k_equal && l.k_power && l.merge && l.exponent_law && l.k_central,
        "{l:?}"
    );
    ensure!(
        l.merge_exhaustive && l.merge_pairs_checked >= 64,
        "merge pairs {}",
        l.merge_pairs_checked
    );
    ensure!(
        l.exponent_bound >= 1 && l.c_order == 2,
        "exponent range {}",
        l.exponent_bound
    );
    let (r, _) = runs.cli(&["verdict", "extraspecial:2:2"])?;
    let lemmas = r.lemmas.ok_or("no lemma section")?;
    ensure!(lemmas.checks.values().all(|&b| b), "{:?}", lemmas.checks);
    within(start, Duration::from_secs(5), "lemma suite")
}

const SUITE: &[&str] = &[
    "cyclic:6",
    "cyclic:12",
    "product:(cyclic:2),(cyclic:2)",
    "product:(cyclic:3),(cyclic:3)",
    "sym:3",
    "dihedral:8",
    "quaternion",
    "extraspecial:2:2",
    "dihedral:12",
    "alt:4",
];

fn criterion_5(runs: &mut Runs) -> Check {
    for spec in SUITE {
        let g = group(spec);
        let derived = derived_by_brute_force(&g).len();
        let brute = d2_by_brute_force(&g);
        let (r, _) = runs.cli(&["info", spec])?;
        let d = r.d2.ok_or("no d2 section")?;
        ensure!(
            d.order == brute && brute == g.order() * derived,
            "{spec}: {} vs {brute}",
            d.order
        );
        ensure!(d.antidiagonal_generation == Some(true), "{spec}: antidiagonal");
        ensure!(
            d.projection_kernel_is_derived == Some(true),
            "{spec}: projection kernel"
        );
    }
    Ok(())
}

fn quaternion_oracle() -> u128 {
    // Unit quaternions as integer 4-vectors, multiplied by the Hamilton rule.
    let units: Vec<[i32; 4]> = (0..8)
        .map(|k| {
            let mut q = [0; 4];
            q[k / 2] = if k % 2 == 0 { 1 } else { -1 };
            q
        })
        .collect();
    let mul = |a: [i32; 4], b: [i32; 4]| {
        [
            a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
            a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
            a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
            a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0],
        ]
    };
    let commute = |a, b| mul(a, b) == mul(b, a);
    let mut count = 0;
    for &x in &units {
        for &y in &units {
            for &z in &units {
                count += u128::from(commute(x, y) && commute(x, z) && commute(y, z));
            }
        }
    }
    count
}

fn criterion_6(runs: &mut Runs) -> Check {
    for spec in SUITE {
        let g = group(spec);
        let brute = g
            .elements()
            .flat_map(|x| g.elements().map(move |y| (x, y)))
            .filter(|&(x, y)| g.mul(x, y) == g.mul(y, x))
            .count() as u128;
        let (r, _) = runs.cli(&["hom-count", spec, "--n", "2"])?;
        let count = r.hom_count.ok_or("no hom-count section")?.count;
        let classes = r.group.conjugacy_classes.unwrap() as u128 * r.group.order.unwrap();
        ensure!(
            count == brute && brute == classes,
            "{spec}: {count}, brute {brute}, classes x order {classes}"
        );
    }
    let (r, _) = runs.cli(&["hom-count", "quaternion", "--n", "3"])?;
    let count = r.hom_count.ok_or("no hom-count section")?.count;
    let oracle = quaternion_oracle();
    ensure!(count == oracle, "Hom(Z^3, Q8) = {count}, oracle {oracle}");
    Ok(())
}

fn prime_powers(torsion: &[String]) -> Vec<u64> {
    let mut out = Vec::new();
    for d in torsion {
        let mut n: u64 = d.parse().unwrap();
        let mut p = 2;
        while n > 1 {
            let mut q = 1;
            while n.is_multiple_of(p) {
                n /= p;
                q *= p;
            }
            if q > 1 {
                out.push(q);
            }
            p += 1;
        }
    }
    out.sort_unstable();
    out
}

fn criterion_7(runs: &mut Runs) -> Check {
    let start = Instant::now();
    for spec in ["cyclic:6", "sym:3", "dihedral:8", "quaternion", "extraspecial:2:2"] {
        let (r, _) = runs.cli(&["homology", spec, "--dim", "1"])?;
        let h = r.homology.ok_or("no homology section")?;
        ensure!(
            h.h1_agrees == Some(true),
            "{spec}: H1 {} vs {:?}",
            h.groups[1].display,
            h.h1_from_presentation
        );
        let expected: Option<Vec<u64>> = match spec {
            "quaternion" => Some(vec![2, 2, 4]),
            "sym:3" => Some(vec![2, 2, 2, 3]),
            _ => None,
        };
        if let Some(expected) = expected {
            let got = prime_powers(&h.groups[1].torsion);
            ensure!(
                h.groups[1].rank == 0 && got == expected,
                "{spec}: H1 primary parts {got:?}"
            );
        }
    }
    within(start, Duration::from_secs(60), "H1 checks")
}

fn criterion_8(runs: &mut Runs) -> Check {
    let (r, code) = runs.cli(&["n2", "sym:3", "--limit", "100000"])?;
    ensure!(code == Some(2), "exit {code:?}");
    let n2 = r.n2.ok_or("no n2 section")?;
    ensure!(
        n2.enumeration.state == EnumerationStateKind::LimitExceeded,
        "state {:?}",
        n2.enumeration.state
    );
    ensure!(
        n2.enumeration.high_water > 0 && n2.enumeration.limit == 100_000,
        "{:?}",
        n2.enumeration
    );
    Ok(())
}

fn criterion_9(runs: &mut Runs) -> Check {
    for (spec, q) in [("quaternion", "3"), ("dihedral:8", "3")] {
        let (r, _) = runs.cli(&["conjecture", spec, "--q", q])?;
        let c = r.conjecture.ok_or("no conjecture section")?;
        ensure!(
            c.agreement == "agree" && c.enumeration.coset_count == 8,
            "{spec}: {c:?}"
        );
    }
    let (r, _) = runs.cli(&["conjecture", "extraspecial:2:2", "--q", "2"])?;
    let c = r.conjecture.ok_or("no conjecture section")?;
    ensure!(c.agreement == "agree" && c.nilpotency_class == Some(2), "{c:?}");
    ensure!(
        c.observed_isomorphism == Some(false) && c.enumeration.coset_count > 32,
        "{c:?}"
    );
    Ok(())
}

fn criterion_10(runs: &Runs) -> Check {
    ensure!(!runs.log.is_empty(), "nothing to replay");
    for (args, stdout, code) in &runs.log {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let (again, code2) = invoke(&args)?;
        ensure!(
            &again == stdout && code2 == *code,
            "`{}` differs between runs",
            args.join(" ")
        );
    }
    Ok(())
}

#[test]
fn acceptance() {
    let mut runs = Runs::default();
    let criteria: [Criterion; 9] = [
        ("extraspecial verification", criterion_1),
        ("linear and symmetric pipeline", criterion_2),
        ("abelian controls", criterion_3),
        ("lemma suite", criterion_4),
        ("D2 properties", criterion_5),
        ("tuple counts", criterion_6),
        ("H1 consistency", criterion_7),
        ("non-closure robustness", criterion_8),
        ("conjecture probe", criterion_9),
    ];
    let mut failed = Vec::new();
    for (k, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = f(&mut runs);
        report_line(k + 1, name, &result, start.elapsed());
        if result.is_err() {
            failed.push(k + 1);
        }
    }
    let start = Instant::now();
    let result = criterion_10(&runs);
    report_line(10, "determinism", &result, start.elapsed());
    if result.is_err() {
        failed.push(10);
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}

fn report_line(k: usize, name: &str, result: &Check, took: Duration) {
    match result {
        Ok(()) => println!("criterion {k:>2} {name}: PASS ({took:.2?})"),
        Err(e) => println!("criterion {k:>2} {name}: FAIL ({e})"),
    }
}
