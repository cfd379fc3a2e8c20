use std::fmt::Write as _;

use super::Word;
use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup, NilpotencyCache};

/// Presentation of the colimit over subgroups of class `< q`: one generator
/// `(g)` per non-identity element, relator `(gh)^-1 (g)(h)` for every ordered
/// pair of non-identity elements generating a subgroup of class `< q`
/// (`(g)(h)` when `gh = 1`).
#[derive(Clone, Debug)]
pub struct Presentation {
    pub q: usize,
    pub group_order: usize,
    pub relators: Vec<Word>,
    /// Ordered element pairs behind each relator.
    pub pairs: Vec<(Elem, Elem)>,
}

impl Presentation {
    /// Generators are the non-identity elements; generator `k` is element `k`.
    pub fn generator_count(&self) -> usize {
        self.group_order - 1
    }

    pub fn generator(&self, k: usize) -> Elem {
        Elem(k as u32)
    }

    /// Plain-text dump: `gens k`, then one relator per line.
    pub fn dump(&self) -> String {
        let mut out = format!("gens {}\n", self.generator_count());
        for r in &self.relators {
            let _ = writeln!(out, "{r}");
        }
        out
    }
}

pub fn build_presentation(group: &FiniteGroup, q: usize) -> Result<Presentation> {
    if q < 2 {
        return Err(Error::InvalidParameter(format!("q must be at least 2, got {q}")));
    }
    let mut cache = NilpotencyCache::new();
    let mut relators = Vec::new();
    let mut pairs = Vec::new();
    for g in group.elements().skip(1) {
        for h in group.elements().skip(1) {
            let allowed = if q == 2 {
                group.commutes(g, h)
            } else {
                cache.pair_below(group, g, h, q)
            };
            if !allowed {
                continue;
            }
            let gh = group.mul(g, h);
            let word = Word::letter(gh).inverse().concat(&Word(vec![g.0 as i32, h.0 as i32]));
            relators.push(word);
            pairs.push((g, h));
        }
    }
    Ok(Presentation {
        q,
        group_order: group.order(),
        relators,
        pairs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{build, GroupSpec};

    fn spec(s: &str) -> FiniteGroup {
        build(&s.parse::<GroupSpec>().unwrap()).unwrap()
    }

    #[test]
    fn cyclic_four_has_nine_relators() {
        let p = build_presentation(&spec("cyclic:4"), 2).unwrap();
        assert_eq!(p.generator_count(), 3);
        assert_eq!(p.relators.len(), 9);
        // 1 + 3 = 0 in Z/4, so that relator has no (gh) letter.
        assert!(p.relators.contains(&Word(vec![1, 3])));
        assert!(p.relators.contains(&Word(vec![-2, 1, 1])));
    }

    #[test]
    fn sym3_relators_match_commuting_pairs() {
        let g = spec("sym:3");
        let p2 = build_presentation(&g, 2).unwrap();
        let brute = g
            .elements()
            .skip(1)
            .flat_map(|a| g.elements().skip(1).map(move |b| (a, b)))
            .filter(|&(a, b)| g.mul(a, b) == g.mul(b, a))
            .count();
        assert_eq!(brute, 7);
        assert_eq!(p2.relators.len(), brute);
        let p3 = build_presentation(&g, 3).unwrap();
        assert_eq!(p3.relators, p2.relators);
    }

    #[test]
    fn relator_sets_grow_with_q() {
        let g = spec("dihedral:8");
        let p2 = build_presentation(&g, 2).unwrap();
        let p3 = build_presentation(&g, 3).unwrap();
        assert!(p2.relators.iter().all(|r| p3.relators.contains(r)));
        assert_eq!(p3.relators.len(), 49);
        assert!(build_presentation(&g, 1).is_err());
    }

    #[test]
    fn dump_format() {
        let p = build_presentation(&spec("cyclic:2"), 2).unwrap();
        assert_eq!(p.dump(), "gens 1\n1 1\n");
    }
}
