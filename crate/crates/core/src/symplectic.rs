//! Symplectic sequences: `2r` non-identity elements with `[g_i, g_{i+r}] = c`
//! for every `i ≤ r` and all other pairs commuting.

use std::fmt;

use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup, GroupOps, Subgroup};

/// Groups up to this order get the exhaustive bilinearity check in [`structure_report`].
pub const BILINEARITY_LIMIT: usize = 512;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymplecticSequence<E = Elem> {
    pub elements: Vec<E>,
    pub r: usize,
    pub c: E,
    pub nontrivial: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Condition {
    /// `[g_i, g_{i+r}]` differs from `[g_1, g_{1+r}]`.
    CommonCommutator,
    /// A pair with `|i - j| ≠ r` does not commute.
    Commuting,
    /// Two positions hold the same element.
    Distinct,
}

/// A failed condition at 1-based positions `i < j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub i: usize,
    pub j: usize,
    pub condition: Condition,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (i, j) = (self.i, self.j);
        match self.condition {
            Condition::CommonCommutator => write!(f, "[g{i}, g{j}] differs from the common commutator"),
            Condition::Commuting => write!(f, "g{i} and g{j} do not commute"),
            Condition::Distinct => write!(f, "g{i} and g{j} coincide"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Certification<E = Elem> {
    Valid(SymplecticSequence<E>),
    Invalid(Violation),
}

impl<E> Certification<E> {
    pub fn valid(self) -> Option<SymplecticSequence<E>> {
        match self {
            Certification::Valid(s) => Some(s),
            Certification::Invalid(_) => None,
        }
    }
}

/// Checks the symplectic conditions in any group given through [`GroupOps`].
pub fn check_symplectic<G: GroupOps>(group: &G, elements: &[G::Element]) -> Result<Certification<G::Element>> {
    if elements.is_empty() || elements.len() % 2 == 1 {
        return Err(Error::OddLength(elements.len()));
    }
    if let Some(pos) = elements.iter().position(|e| group.is_identity(e)) {
        return Err(Error::IdentityInSequence { position: pos + 1 });
    }
    let r = elements.len() / 2;
    for i in 0..2 * r {
        for j in i + 1..2 * r {
            if elements[i] == elements[j] {
                return Ok(Certification::Invalid(Violation {
                    i: i + 1,
                    j: j + 1,
                    condition: Condition::Distinct,
                }));
            }
        }
    }
    let c = group.comm(&elements[0], &elements[r]);
    for i in 0..2 * r {
        for j in i + 1..2 * r {
            let k = group.comm(&elements[i], &elements[j]);
            let (ok, condition) = if j == i + r {
                (k == c, Condition::CommonCommutator)
            } else {
                (group.is_identity(&k), Condition::Commuting)
            };
            if !ok {
                return Ok(Certification::Invalid(Violation {
                    i: i + 1,
                    j: j + 1,
                    condition,
                }));
            }
        }
    }
    let nontrivial = !group.is_identity(&c);
    Ok(Certification::Valid(SymplecticSequence {
        elements: elements.to_vec(),
        r,
        c,
        nontrivial,
    }))
}

/// Lexicographically least form under reordering the pairs `(g_i, g_{i+r})`
/// and exchanging the two halves (which replaces `c` by `c^-1`).
pub fn canonical_form(group: &FiniteGroup, seq: &SymplecticSequence) -> SymplecticSequence {
    let r = seq.r;
    let arrange = |pairs: &mut Vec<(Elem, Elem)>| -> Vec<Elem> {
        pairs.sort();
        pairs.iter().map(|p| p.0).chain(pairs.iter().map(|p| p.1)).collect()
    };
    let mut straight: Vec<(Elem, Elem)> = (0..r).map(|i| (seq.elements[i], seq.elements[i + r])).collect();
    let mut swapped: Vec<(Elem, Elem)> = straight.iter().map(|&(a, b)| (b, a)).collect();
    let a = arrange(&mut straight);
    let b = arrange(&mut swapped);
    let elements = a.min(b);
    let c = group.commutator(elements[0], elements[r]);
    SymplecticSequence {
        elements,
        r,
        c,
        nontrivial: !c.is_identity(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found {
        sequence: SymplecticSequence,
        expanded: u64,
    },
    NotFoundWithinBudget {
        expanded: u64,
    },
    /// The whole search space was enumerated without a nontrivial sequence.
    ExhaustedNone {
        expanded: u64,
    },
}

struct Search<'a> {
    group: &'a FiniteGroup,
    r: usize,
    budget: u64,
    expanded: u64,
    /// Chosen elements in search order g_1, g_{1+r}, g_2, g_{2+r}, ...
    chosen: Vec<Elem>,
    c: Elem,
}

enum Step {
    Found,
    Exhausted,
    OutOfBudget,
}

impl Search<'_> {
    /// Places position `depth` of the search order.
    fn extend(&mut self) -> Step {
        let depth = self.chosen.len();
        if depth == 2 * self.r {
            return Step::Found;
        }
        let first_of_pair = depth.is_multiple_of(2);
        for x in self.group.elements().skip(1) {
            if first_of_pair {
                // Pairs are sorted by their first entry.
                if depth >= 2 && x <= self.chosen[depth - 2] {
                    continue;
                }
            }
            if self.chosen.contains(&x) {
                continue;
            }
            let ok = if first_of_pair {
                self.chosen.iter().all(|&y| self.group.commutes(x, y))
            } else {
                let partner = self.chosen[depth - 1];
                let k = self.group.commutator(partner, x);
                let pair_ok = if depth == 1 { !k.is_identity() } else { k == self.c };
                pair_ok && self.chosen[..depth - 1].iter().all(|&y| self.group.commutes(x, y))
            };
            if !ok {
                continue;
            }
            if self.expanded >= self.budget {
                return Step::OutOfBudget;
            }
            self.expanded += 1;
            self.chosen.push(x);
            if depth == 1 {
                self.c = self.group.commutator(self.chosen[0], x);
            }
            match self.extend() {
                Step::Exhausted => {
                    self.chosen.pop();
                }
                done => return done,
            }
        }
        Step::Exhausted
    }
}

/// Depth-first search for a nontrivial symplectic sequence of length `2r`.
/// `budget` caps the number of placed elements (node expansions).
pub fn find_symplectic(group: &FiniteGroup, r: usize, budget: u64) -> Result<SearchOutcome> {
    if budget == 0 {
        return Err(Error::ZeroBudget);
    }
    if r == 0 {
        return Err(Error::InvalidParameter("r must be at least 1".into()));
    }
    let mut search = Search {
        group,
        r,
        budget,
        expanded: 0,
        chosen: Vec::with_capacity(2 * r),
        c: Elem::IDENTITY,
    };
    Ok(match search.extend() {
        Step::Found => {
            let mut elements = vec![Elem::IDENTITY; 2 * r];
            for i in 0..r {
                elements[i] = search.chosen[2 * i];
                elements[i + r] = search.chosen[2 * i + 1];
            }
            let raw = check_symplectic(group, &elements)?
                .valid()
                .expect("search only assembles valid sequences");
            SearchOutcome::Found {
                sequence: canonical_form(group, &raw),
                expanded: search.expanded,
            }
        }
        Step::Exhausted => SearchOutcome::ExhaustedNone {
            expanded: search.expanded,
        },
        Step::OutOfBudget => SearchOutcome::NotFoundWithinBudget {
            expanded: search.expanded,
        },
    })
}

pub fn sequence_subgroup(group: &FiniteGroup, seq: &SymplecticSequence) -> Result<Subgroup> {
    group.closure(&seq.elements)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureReport {
    pub subgroup_order: usize,
    /// `[S, S] = <c>`.
    pub derived_is_generated_by_c: bool,
    pub c_central: bool,
    /// `[xy, z] = [x, z][y, z]` on all of `S`; `None` above [`BILINEARITY_LIMIT`].
    pub bilinear: Option<bool>,
    pub c_order: usize,
}

pub fn structure_report(group: &FiniteGroup, seq: &SymplecticSequence) -> Result<StructureReport> {
    let s = sequence_subgroup(group, seq)?;
    let derived = group.derived_subgroup(&s);
    let c_group = group.closure(&[seq.c])?;
    let center = group.center(&s);
    let bilinear = (s.order() <= BILINEARITY_LIMIT).then(|| {
        let m = s.members();
        m.iter().all(|&x| {
            m.iter().all(|&y| {
                let xy = group.mul(x, y);
                m.iter()
                    .all(|&z| group.commutator(xy, z) == group.mul(group.commutator(x, z), group.commutator(y, z)))
            })
        })
    });
    Ok(StructureReport {
        subgroup_order: s.order(),
        derived_is_generated_by_c: derived == c_group,
        c_central: center.contains(seq.c),
        bilinear,
        c_order: group.order_of(seq.c),
    })
}
