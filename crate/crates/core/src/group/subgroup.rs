use std::collections::HashMap;

use super::{Backing, Elem, FiniteGroup, MapTable, TableData};
use crate::error::Result;

/// A subgroup of an enumerated group, held as a sorted member list plus a
/// membership mask indexed by element id.
#[derive(Clone, Debug)]
pub struct Subgroup {
    members: Vec<Elem>,
    mask: Vec<bool>,
    generators: Vec<Elem>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members
    }
}

impl Eq for Subgroup {}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[Elem] {
        &self.members
    }

    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    #[inline]
    pub fn contains(&self, e: Elem) -> bool {
        self.mask.get(e.index()).copied().unwrap_or(false)
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&e| other.contains(e))
    }
}

impl FiniteGroup {
    /// Smallest subgroup containing `gens`; members sorted by id.
    pub fn closure(&self, gens: &[Elem]) -> Result<Subgroup> {
        for g in gens {
            self.check(g.index())?;
        }
        let mut generators: Vec<Elem> = Vec::new();
        for &g in gens {
            if !g.is_identity() && !generators.contains(&g) {
                generators.push(g);
            }
        }
        let mut mask = vec![false; self.order()];
        mask[0] = true;
        let mut members = vec![Elem::IDENTITY];
        let mut k = 0;
        while k < members.len() {
            let x = members[k];
            k += 1;
            for &s in &generators {
                let y = self.mul(x, s);
                if !mask[y.index()] {
                    mask[y.index()] = true;
                    members.push(y);
                }
            }
        }
        members.sort_unstable();
        Ok(Subgroup {
            members,
            mask,
            generators,
        })
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup {
            members: self.elements().collect(),
            mask: vec![true; self.order()],
            generators: self.generators.clone(),
        }
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        self.closure(&[]).expect("empty generator list")
    }

    /// Normal closure of `xs` in `ambient`, conjugating by the generators of `ambient`.
    pub fn normal_closure(&self, ambient: &Subgroup, xs: &[Elem]) -> Subgroup {
        let mut gens: Vec<Elem> = xs.iter().copied().filter(|x| !x.is_identity()).collect();
        gens.sort_unstable();
        gens.dedup();
        let mut sub = self.closure(&gens).expect("ids from this group");
        let mut queue = gens.clone();
        while let Some(x) = queue.pop() {
            for &y in ambient.generators() {
                let z = self.mul(self.mul(y, x), self.inverse(y));
                if !sub.contains(z) {
                    gens.push(z);
                    queue.push(z);
                    sub = self.closure(&gens).expect("ids from this group");
                }
            }
        }
        sub
    }

    /// `[A, B]` for subgroups `A`, `B` of a common subgroup `ambient` that normalizes both
    /// (in practice `B = ambient`).
    pub fn commutator_subgroup(&self, a: &Subgroup, b: &Subgroup, ambient: &Subgroup) -> Subgroup {
        let comms: Vec<Elem> = a
            .generators()
            .iter()
            .flat_map(|&x| b.generators().iter().map(move |&y| (x, y)))
            .map(|(x, y)| self.commutator(x, y))
            .collect();
        self.normal_closure(ambient, &comms)
    }

    pub fn derived_subgroup(&self, h: &Subgroup) -> Subgroup {
        self.commutator_subgroup(h, h, h)
    }

    pub fn center(&self, h: &Subgroup) -> Subgroup {
        let gens = h.generators();
        let central: Vec<Elem> = h
            .members()
            .iter()
            .copied()
            .filter(|&z| gens.iter().all(|&g| self.commutes(z, g)))
            .collect();
        let mut mask = vec![false; self.order()];
        for z in &central {
            mask[z.index()] = true;
        }
        let generators = central.iter().copied().filter(|z| !z.is_identity()).collect();
        Subgroup {
            members: central,
            mask,
            generators,
        }
    }

    pub fn centralizer(&self, h: &Subgroup, x: Elem) -> Subgroup {
        let members: Vec<Elem> = h.members().iter().copied().filter(|&y| self.commutes(x, y)).collect();
        let mut mask = vec![false; self.order()];
        for y in &members {
            mask[y.index()] = true;
        }
        let generators = members.iter().copied().filter(|z| !z.is_identity()).collect();
        Subgroup {
            members,
            mask,
            generators,
        }
    }

    /// `Γ¹ = H ⊇ Γ² = [Γ¹, H] ⊇ …` until the series stabilizes.
    pub fn lower_central_series(&self, h: &Subgroup) -> Vec<Subgroup> {
        let mut series = vec![h.clone()];
        loop {
            let last = series.last().unwrap();
            if last.is_trivial() {
                break;
            }
            let next = self.commutator_subgroup(last, h, h);
            if next.order() == last.order() {
                break;
            }
            series.push(next);
        }
        series
    }

    /// Nilpotency class of `h`: the least `c` with `Γ^{c+1}(h) = 1`
    /// (0 for the trivial group), or `None` when `h` is not nilpotent.
    pub fn nilpotency_class(&self, h: &Subgroup) -> Option<usize> {
        let series = self.lower_central_series(h);
        if series.last().unwrap().is_trivial() {
            Some(series.len() - 1)
        } else {
            None
        }
    }

    pub fn conjugacy_classes(&self) -> Vec<Vec<Elem>> {
        let mut seen = vec![false; self.order()];
        let mut classes = Vec::new();
        for g in self.elements() {
            if seen[g.index()] {
                continue;
            }
            seen[g.index()] = true;
            let mut class = vec![g];
            let mut k = 0;
            while k < class.len() {
                let x = class[k];
                k += 1;
                for &s in &self.generators {
                    let y = self.mul(self.mul(s, x), self.inverse(s));
                    if !seen[y.index()] {
                        seen[y.index()] = true;
                        class.push(y);
                    }
                }
            }
            class.sort_unstable();
            classes.push(class);
        }
        classes
    }

    /// `G/[G,G]` as a table-backed group, with the quotient map. Quotient ids
    /// follow the least element id of each coset.
    pub fn abelianization(&self) -> (FiniteGroup, MapTable) {
        let derived = self.derived_subgroup(&self.whole());
        let mut coset_of = vec![u32::MAX; self.order()];
        let mut reps = Vec::new();
        for g in self.elements() {
            if coset_of[g.index()] != u32::MAX {
                continue;
            }
            let idx = reps.len() as u32;
            reps.push(g);
            for &d in derived.members() {
                coset_of[self.mul(g, d).index()] = idx;
            }
        }
        let n = reps.len();
        let mut mul = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                mul[a * n + b] = coset_of[self.mul(reps[a], reps[b]).index()];
            }
        }
        let names = reps
            .iter()
            .map(|&r| format!("{}·[G,G]", self.element_name(r)))
            .collect();
        let gens: Vec<u32> = self.generators.iter().map(|g| coset_of[g.index()]).collect();
        let quotient = FiniteGroup::from_table_with_generators(TableData::new(n, mul, Some(names)), &gens);
        let images = coset_of.into_iter().map(Elem).collect();
        let map = MapTable::new(self.order(), n, images);
        (quotient, map)
    }

    /// Re-enumerates `h` as a group in its own right, returning it with the
    /// embedding (new id -> id in `self`).
    pub fn induced(&self, h: &Subgroup) -> Result<(FiniteGroup, Vec<Elem>)> {
        let sub = match &self.backing {
            Backing::Table(data) => {
                let members = h.members();
                let local: HashMap<Elem, u32> = members.iter().enumerate().map(|(i, &e)| (e, i as u32)).collect();
                let n = members.len();
                let mut mul = vec![0u32; n * n];
                for a in 0..n {
                    for b in 0..n {
                        mul[a * n + b] = local[&self.mul(members[a], members[b])];
                    }
                }
                let names = members.iter().map(|&e| self.element_name(e)).collect();
                let names = data.names.as_ref().map(|_| names);
                let gens: Vec<u32> = h.generators().iter().map(|g| local[g]).collect();
                FiniteGroup::from_table_with_generators(TableData::new(n, mul, names), &gens)
            }
            backing => {
                let gens: Vec<Vec<u32>> = h.generators().iter().map(|&g| self.key(g).to_vec()).collect();
                FiniteGroup::from_generators(backing.clone(), &gens)?
            }
        };
        let embedding = sub
            .elements()
            .map(|e| match &self.backing {
                Backing::Table(_) => h.members()[e.index()],
                _ => self.find(sub.key(e)).expect("subgroup element lies in the parent"),
            })
            .collect();
        Ok((sub, embedding))
    }
}

/// Memoized nilpotency classes of two-generator subgroups, keyed by the unordered pair.
#[derive(Default)]
pub struct NilpotencyCache {
    pairs: HashMap<(Elem, Elem), Option<usize>>,
}

impl NilpotencyCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn pair_class(&mut self, g: &FiniteGroup, a: Elem, b: Elem) -> Option<usize> {
        let key = if a <= b { (a, b) } else { (b, a) };
        *self.pairs.entry(key).or_insert_with(|| {
            if g.commutes(a, b) {
                Some(usize::from(!(a.is_identity() && b.is_identity())))
            } else {
                g.nilpotency_class(&g.closure(&[a, b]).expect("valid ids"))
            }
        })
    }

    /// True iff `<a, b>` has nilpotency class `< q`.
    pub fn pair_below(&mut self, g: &FiniteGroup, a: Elem, b: Elem, q: usize) -> bool {
        matches!(self.pair_class(g, a, b), Some(c) if c < q)
    }
}
