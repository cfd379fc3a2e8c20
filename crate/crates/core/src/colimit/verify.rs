//! Checks of the colimit structure: the isomorphism onto `D_2(S)` for the
//! subgroup `S` generated by a symplectic sequence, the relations among the
//! central elements `k_i`, the power maps, the kernel of `ε`, and the
//! resulting K(π,1) verdict.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{build_presentation, d2, todd_coxeter, CosetTable, EnumerationState, Presentation, Word};
use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup};
use crate::symplectic::{find_symplectic, SearchOutcome, SymplecticSequence};

/// Subgroups `<g_i, g_{i+r}>` up to this order get the exhaustive merge check.
pub const MERGE_EXHAUSTIVE_LIMIT: usize = 256;
/// Number of sampled pairs per rank-one subgroup above that order.
pub const MERGE_SAMPLES: usize = 4096;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationSummary {
    pub state: EnumerationState,
    pub coset_count: usize,
    pub high_water: usize,
    pub total_defined: u64,
    pub limit: usize,
}

impl From<&CosetTable> for EnumerationSummary {
    fn from(t: &CosetTable) -> Self {
        EnumerationSummary {
            state: t.state(),
            coset_count: t.coset_count(),
            high_water: t.high_water(),
            total_defined: t.total_defined(),
            limit: t.limit(),
        }
    }
}

/// Maps cosets to values along a homomorphism given on letters. Returns
/// `None` if some table entry disagrees, i.e. the map is not well defined.
pub fn coset_map<T: Clone + PartialEq>(
    table: &CosetTable,
    identity: T,
    step: impl Fn(&T, i32) -> T,
) -> Result<Option<Vec<T>>> {
    let reps = table.representatives()?;
    let images: Vec<T> = reps
        .iter()
        .map(|w| w.letters().iter().fold(identity.clone(), |acc, &l| step(&acc, l)))
        .collect();
    let gens = (table.columns() / 2) as i32;
    for c in 0..table.coset_count() {
        for k in 1..=gens {
            for l in [k, -k] {
                let d = table.act(c as u32, l) as usize;
                if images[d] != step(&images[c], l) {
                    return Ok(None);
                }
            }
        }
    }
    Ok(Some(images))
}

/// `ε` on cosets: `(g) ↦ g`.
pub fn epsilon_images(group: &FiniteGroup, table: &CosetTable) -> Result<Option<Vec<Elem>>> {
    coset_map(table, Elem::IDENTITY, |&x, l| {
        let g = Elem(l.unsigned_abs());
        group.mul(x, if l > 0 { g } else { group.inverse(g) })
    })
}

/// The subgroup `S` generated by a sequence, re-enumerated, with its colimit table.
pub struct SequenceColimit {
    pub subgroup: FiniteGroup,
    /// Id in `subgroup` -> id in the ambient group.
    pub embedding: Vec<Elem>,
    /// The sequence in `subgroup` ids.
    pub sequence: SymplecticSequence,
    pub presentation: Presentation,
    pub table: CosetTable,
}

impl SequenceColimit {
    pub fn new(group: &FiniteGroup, seq: &SymplecticSequence, limit: usize) -> Result<Self> {
        let s = group.closure(&seq.elements)?;
        let (subgroup, embedding) = group.induced(&s)?;
        let local =
            |e: Elem| -> Elem { Elem(embedding.iter().position(|&x| x == e).expect("sequence lies in S") as u32) };
        let sequence = SymplecticSequence {
            elements: seq.elements.iter().map(|&e| local(e)).collect(),
            r: seq.r,
            c: local(seq.c),
            nontrivial: seq.nontrivial,
        };
        let presentation = build_presentation(&subgroup, 2)?;
        let table = todd_coxeter(&presentation, limit)?;
        Ok(SequenceColimit {
            subgroup,
            embedding,
            sequence,
            presentation,
            table,
        })
    }

    fn g(&self, i: usize) -> Elem {
        self.sequence.elements[i]
    }

    /// `k_i = (g_i g_{i+r})^-1 (g_i)(g_{i+r})` for 0-based `i`.
    pub fn k_word(&self, i: usize) -> Word {
        let s = &self.subgroup;
        let (a, b) = (self.g(i), self.g(i + self.sequence.r));
        Word::product([&Word::letter(s.mul(a, b)).inverse(), &Word::letter(a), &Word::letter(b)])
    }

    fn same(&self, a: &Word, b: &Word) -> Result<bool> {
        Ok(self.table.trace(a)? == self.table.trace(b)?)
    }

    /// Order of the element represented by `w` in the closed table.
    pub fn word_order(&self, w: &Word) -> Result<usize> {
        let start = self.table.trace(w)?;
        let mut c = start;
        for m in 1..=self.table.coset_count() {
            if c == 0 {
                return Ok(m);
            }
            c = self.table.trace_from(c, w)?;
        }
        unreachable!("element orders divide the group order")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ColimitD2Report {
    pub subgroup_order: usize,
    pub d2_order: usize,
    pub enumeration: EnumerationSummary,
    pub outcome: Outcome,
    /// `(g) ↦ (g, g^-1)` is a well-defined bijection of cosets onto `D_2(S)`.
    pub epsilon_bar_bijective: Option<bool>,
    /// First coordinate of `ε̄` agrees with `ε` on every coset.
    pub factorization_holds: Option<bool>,
    /// `D_2(S) ⊆ D_2(G)` inside `G × G`.
    pub d2_embeds: bool,
}

pub fn colimit_d2_verify(group: &FiniteGroup, sc: &SequenceColimit) -> Result<ColimitD2Report> {
    if !sc.sequence.nontrivial || sc.sequence.r < 2 {
        return Err(Error::InvalidParameter(
            "needs a nontrivial symplectic sequence with r >= 2".into(),
        ));
    }
    let s = &sc.subgroup;
    let d2s = d2(s);
    let d2g = d2(group);
    let d2_embeds = match &d2s.members {
        Some(m) => m
            .iter()
            .all(|&(x, y)| d2g.contains(group, sc.embedding[x.index()], sc.embedding[y.index()])),
        None => d2s
            .derived
            .members()
            .iter()
            .all(|&d| d2g.derived.contains(sc.embedding[d.index()])),
    };
    let enumeration = EnumerationSummary::from(&sc.table);
    if !sc.table.is_closed() {
        return Ok(ColimitD2Report {
            subgroup_order: s.order(),
            d2_order: d2s.order,
            enumeration,
            outcome: Outcome::Inconclusive,
            epsilon_bar_bijective: None,
            factorization_holds: None,
            d2_embeds,
        });
    }
    let eps_bar = coset_map(&sc.table, (Elem::IDENTITY, Elem::IDENTITY), |&(x, y), l| {
        let g = Elem(l.unsigned_abs());
        let gi = s.inverse(g);
        if l > 0 {
            (s.mul(x, g), s.mul(y, gi))
        } else {
            (s.mul(x, gi), s.mul(y, g))
        }
    })?;
    let eps = epsilon_images(s, &sc.table)?;
    let (bijective, factorization) = match (&eps_bar, &eps) {
        (Some(pairs), Some(eps)) => {
            let distinct: BTreeSet<(Elem, Elem)> = pairs.iter().copied().collect();
            let onto = distinct.len() == pairs.len()
                && pairs.len() == d2s.order
                && pairs.iter().all(|&(x, y)| d2s.contains(s, x, y));
            let factor = pairs.iter().zip(eps).all(|(&(x, _), &e)| x == e);
            (onto, factor)
        }
        _ => (false, false),
    };
    let outcome = if sc.table.coset_count() == d2s.order {
        Outcome::Pass
    } else {
        Outcome::Fail
    };
    Ok(ColimitD2Report {
        subgroup_order: s.order(),
        d2_order: d2s.order,
        enumeration,
        outcome,
        epsilon_bar_bijective: Some(bijective),
        factorization_holds: Some(factorization),
        d2_embeds,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaReport {
    /// `k_i = k_j` for all `i, j`.
    pub k_equal: bool,
    /// `k^m = (g_i^m g_{i+r})^-1 (g_i^m)(g_{i+r})` for `1 ≤ m ≤ |c|`.
    pub k_power: bool,
    /// `(x)(y)(xy)^-1 = k^α` where `[x, y] = c^α`, over `x, y ∈ <g_i, g_{i+r}>`.
    pub merge: bool,
    pub merge_pairs_checked: usize,
    pub merge_exhaustive: bool,
    pub seed: u64,
    /// `[(g_i^a g_{i+r}^b), (g_i^c g_{i+r}^d)] = [(g_j), (g_{j+r})]^(ad-bc)`
    /// for exponents in `-e..=e`.
    pub exponent_law: bool,
    pub exponent_bound: i64,
    /// `k` commutes with every generator.
    pub k_central: bool,
    /// The kernel of `ε` is `<k>`.
    pub kernel_is_k: bool,
    pub k_order: usize,
    pub c_order: usize,
}

impl LemmaReport {
    pub fn all_pass(&self) -> bool {
        self.k_equal && self.k_power && self.merge && self.exponent_law && self.k_central && self.kernel_is_k
    }
}

pub fn lemma_suite(sc: &SequenceColimit, seed: u64) -> Result<LemmaReport> {
    if !sc.table.is_closed() {
        return Err(Error::TableNotClosed);
    }
    let s = &sc.subgroup;
    let r = sc.sequence.r;
    let c = sc.sequence.c;
    let c_order = s.order_of(c);
    let k = sc.k_word(0);

    let mut k_equal = true;
    for i in 1..r {
        k_equal &= sc.same(&sc.k_word(i), &k)?;
    }

    let mut k_power = true;
    for i in 0..r {
        let (gi, gir) = (sc.g(i), sc.g(i + r));
        for m in 1..=c_order {
            let gm = s.power(gi, m as i64);
            let rhs = Word::product([
                &Word::letter(s.mul(gm, gir)).inverse(),
                &Word::letter(gm),
                &Word::letter(gir),
            ]);
            k_power &= sc.same(&k.pow(m as i64), &rhs)?;
        }
    }

    // α with [x, y] = c^α, if any.
    let c_powers: Vec<Elem> = (0..c_order).map(|a| s.power(c, a as i64)).collect();
    let alpha = |x: Elem, y: Elem| c_powers.iter().position(|&p| p == s.commutator(x, y));
    let mut merge = true;
    let mut merge_pairs_checked = 0;
    let mut merge_exhaustive = true;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..r {
        let pair = s.closure(&[sc.g(i), sc.g(i + r)])?;
        let m = pair.members();
        let pairs: Vec<(Elem, Elem)> = if m.len() <= MERGE_EXHAUSTIVE_LIMIT {
            m.iter().flat_map(|&x| m.iter().map(move |&y| (x, y))).collect()
        } else {
            merge_exhaustive = false;
            (0..MERGE_SAMPLES)
                .map(|_| (m[rng.gen_range(0..m.len())], m[rng.gen_range(0..m.len())]))
                .collect()
        };
        for (x, y) in pairs {
            merge_pairs_checked += 1;
            let lhs = Word::product([&Word::letter(x), &Word::letter(y), &Word::letter(s.mul(x, y)).inverse()]);
            merge &= match alpha(x, y) {
                Some(a) => sc.same(&lhs, &k.pow(a as i64))?,
                None => false,
            };
        }
    }

    let e = c_order as i64;
    let mut exponent_law = true;
    for i in 0..r {
        let (gi, gir) = (sc.g(i), sc.g(i + r));
        let elem = |a: i64, b: i64| Word::letter(s.mul(s.power(gi, a), s.power(gir, b)));
        for j in 0..r {
            let base = Word::commutator(&Word::letter(sc.g(j)), &Word::letter(sc.g(j + r)));
            let base_coset = |n: i64| sc.table.trace(&base.pow(n));
            for a in -e..=e {
                for b in -e..=e {
                    let left = elem(a, b);
                    for cc in -e..=e {
                        for d in -e..=e {
                            let comm = Word::commutator(&left, &elem(cc, d));
                            exponent_law &= sc.table.trace(&comm)? == base_coset(a * d - b * cc)?;
                        }
                    }
                }
            }
        }
    }

    let mut k_central = true;
    for g in s.elements().skip(1) {
        let w = Word::letter(g);
        k_central &= sc.same(&k.concat(&w), &w.concat(&k))?;
    }

    let k_order = sc.word_order(&k)?;
    let eps = epsilon_images(s, &sc.table)?
        .ok_or_else(|| Error::InvalidParameter("ε is not well defined on the table".into()))?;
    let kernel: BTreeSet<u32> = (0..eps.len() as u32)
        .filter(|&x| eps[x as usize].is_identity())
        .collect();
    let k_cosets: BTreeSet<u32> = (0..k_order)
        .map(|m| sc.table.trace(&k.pow(m as i64)))
        .collect::<Result<_>>()?;
    let kernel_is_k = kernel == k_cosets && k_order == c_order;

    Ok(LemmaReport {
        k_equal,
        k_power,
        merge,
        merge_pairs_checked,
        merge_exhaustive,
        seed,
        exponent_law,
        exponent_bound: e,
        k_central,
        kernel_is_k,
        k_order,
        c_order,
    })
}

/// Whether `{(g_i)}` is again a symplectic sequence in the colimit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SequenceImageReport {
    pub symplectic: bool,
    pub nontrivial: bool,
}

pub fn sequence_image_in_n2(sc: &SequenceColimit) -> Result<SequenceImageReport> {
    let r = sc.sequence.r;
    let letters: Vec<Word> = sc.sequence.elements.iter().map(|&g| Word::letter(g)).collect();
    let comm = |i: usize, j: usize| sc.table.trace(&Word::commutator(&letters[i], &letters[j]));
    let c = comm(0, r)?;
    let mut symplectic = true;
    for i in 0..2 * r {
        for j in i + 1..2 * r {
            let x = comm(i, j)?;
            symplectic &= if j == i + r { x == c } else { x == 0 };
        }
    }
    Ok(SequenceImageReport {
        symplectic,
        nontrivial: c != 0,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OmegaReport {
    pub n: i64,
    /// Every relator maps to a word trivial in the colimit.
    pub well_defined: bool,
    /// For `n = -1`: the induced map on cosets is a bijection squaring to the identity.
    pub involutive_bijection: Option<bool>,
}

impl OmegaReport {
    pub fn holds(&self) -> bool {
        self.well_defined && self.involutive_bijection.unwrap_or(true)
    }
}

/// The power map `(g) ↦ (g^n)` on the colimit presented by `p` with closed table `t`.
pub fn omega_check(group: &FiniteGroup, p: &Presentation, t: &CosetTable, n: i64) -> Result<OmegaReport> {
    if !t.is_closed() {
        return Err(Error::TableNotClosed);
    }
    let omega = |w: &Word| w.substitute(|k| Word::letter(group.power(Elem(k), n)));
    let mut well_defined = true;
    for r in &p.relators {
        well_defined &= t.trace(&omega(r))? == 0;
    }
    let involutive_bijection = if n == -1 && well_defined {
        let reps = t.representatives()?;
        let image: Vec<u32> = reps.iter().map(|w| t.trace(&omega(w))).collect::<Result<_>>()?;
        let distinct: BTreeSet<u32> = image.iter().copied().collect();
        let squares = reps
            .iter()
            .enumerate()
            .map(|(c, w)| Ok(t.trace(&omega(&omega(w)))? == c as u32))
            .collect::<Result<Vec<bool>>>()?;
        Some(distinct.len() == image.len() && squares.into_iter().all(|b| b))
    } else {
        None
    };
    Ok(OmegaReport {
        n,
        well_defined,
        involutive_bijection,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KernelReport {
    pub n2_order: usize,
    pub kernel_order: usize,
    pub torsion_free: bool,
    pub k_order: Option<usize>,
}

pub fn epsilon_kernel(group: &FiniteGroup, t: &CosetTable, k_order: Option<usize>) -> Result<KernelReport> {
    if !t.is_closed() {
        return Err(Error::TableNotClosed);
    }
    let kernel_order = t.coset_count() / group.order();
    Ok(KernelReport {
        n2_order: t.coset_count(),
        kernel_order,
        torsion_free: kernel_order == 1,
        k_order,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    NotKPi1,
    KPi1,
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certificate {
    Abelian,
    Sequence(SymplecticSequence),
    /// A nontrivial element of `ker ε`, as a word, with its order.
    Torsion {
        word: Word,
        order: usize,
        kernel_order: usize,
    },
    None,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerdictReport {
    pub verdict: Verdict,
    pub certificate: Certificate,
    pub search: Option<SearchOutcome>,
    pub enumeration: Option<EnumerationSummary>,
}

pub fn kpi1_verdict(group: &FiniteGroup, search_budget: u64, coset_limit: usize) -> Result<VerdictReport> {
    if group.is_abelian() {
        return Ok(VerdictReport {
            verdict: Verdict::KPi1,
            certificate: Certificate::Abelian,
            search: None,
            enumeration: None,
        });
    }
    let search = find_symplectic(group, 2, search_budget)?;
    if let SearchOutcome::Found { sequence, .. } = &search {
        return Ok(VerdictReport {
            verdict: Verdict::NotKPi1,
            certificate: Certificate::Sequence(sequence.clone()),
            search: Some(search.clone()),
            enumeration: None,
        });
    }
    let p = build_presentation(group, 2)?;
    let t = todd_coxeter(&p, coset_limit)?;
    let enumeration = Some(EnumerationSummary::from(&t));
    if t.is_closed() {
        let eps = epsilon_images(group, &t)?
            .ok_or_else(|| Error::InvalidParameter("ε is not well defined on the table".into()))?;
        if let Some(c) = (1..eps.len()).find(|&c| eps[c].is_identity()) {
            let word = t.representatives()?.swap_remove(c);
            let mut order = 1;
            let mut x = c as u32;
            while x != 0 {
                x = t.trace_from(x, &word)?;
                order += 1;
            }
            return Ok(VerdictReport {
                verdict: Verdict::NotKPi1,
                certificate: Certificate::Torsion {
                    word,
                    order,
                    kernel_order: t.coset_count() / group.order(),
                },
                search: Some(search),
                enumeration,
            });
        }
    }
    Ok(VerdictReport {
        verdict: Verdict::Inconclusive,
        certificate: Certificate::None,
        search: Some(search),
        enumeration,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Agreement {
    Agree,
    Disagree,
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ConjectureReport {
    pub q: usize,
    pub nilpotency_class: Option<usize>,
    /// Class `< q`, where the conjecture predicts `N_q(G) ≅ G`.
    pub predicts_isomorphism: bool,
    pub enumeration: EnumerationSummary,
    pub observed_isomorphism: Option<bool>,
    pub agreement: Agreement,
}

pub fn conjecture_probe(group: &FiniteGroup, q: usize, coset_limit: usize) -> Result<ConjectureReport> {
    let class = group.nilpotency_class(&group.whole());
    let predicts_isomorphism = matches!(class, Some(c) if c < q);
    let p = build_presentation(group, q)?;
    let t = todd_coxeter(&p, coset_limit)?;
    let observed = t.is_closed().then(|| t.coset_count() == group.order());
    let agreement = match observed {
        Some(o) if o == predicts_isomorphism => Agreement::Agree,
        Some(_) => Agreement::Disagree,
        None => Agreement::Inconclusive,
    };
    Ok(ConjectureReport {
        q,
        nilpotency_class: class,
        predicts_isomorphism,
        enumeration: EnumerationSummary::from(&t),
        observed_isomorphism: observed,
        agreement,
    })
}
