use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup, Subgroup, CAYLEY_LIMIT};

/// Kernel of `G × G → G/[G,G]`, `(x, y) ↦ xy[G,G]`.
#[derive(Clone, Debug)]
pub struct D2Subgroup {
    pub order: usize,
    pub derived: Subgroup,
    /// Explicit pairs, for groups of order at most [`CAYLEY_LIMIT`].
    pub members: Option<Vec<(Elem, Elem)>>,
}

impl D2Subgroup {
    pub fn contains(&self, group: &FiniteGroup, x: Elem, y: Elem) -> bool {
        self.derived.contains(group.mul(x, y))
    }

    /// Second coordinates of members with first coordinate 1, i.e. `ker π_1`.
    pub fn projection_kernel(&self) -> Option<Vec<Elem>> {
        self.members.as_ref().map(|m| {
            let mut ys: Vec<Elem> = m.iter().filter(|(x, _)| x.is_identity()).map(|&(_, y)| y).collect();
            ys.sort();
            ys
        })
    }
}

pub fn d2(group: &FiniteGroup) -> D2Subgroup {
    let derived = group.derived_subgroup(&group.whole());
    let order = group.order() * derived.order();
    let members = (group.order() <= CAYLEY_LIMIT).then(|| {
        let mut m: Vec<(Elem, Elem)> = group
            .elements()
            .flat_map(|x| {
                let xi = group.inverse(x);
                derived.members().iter().map(move |&d| (x, group.mul(xi, d)))
            })
            .collect();
        m.sort();
        m
    });
    D2Subgroup {
        order,
        derived,
        members,
    }
}

/// Subgroup of `G × G` generated by the pairs `(g, g^-1)`, as sorted pairs.
pub fn antidiagonal_closure(group: &FiniteGroup) -> Result<Vec<(Elem, Elem)>> {
    let n = group.order();
    if n > CAYLEY_LIMIT {
        return Err(Error::BudgetExceeded {
            what: "group order for pair closures",
            needed: n as u128,
            limit: CAYLEY_LIMIT as u128,
        });
    }
    let gens: Vec<(Elem, Elem)> = group.elements().skip(1).map(|g| (g, group.inverse(g))).collect();
    let mut seen = vec![false; n * n];
    seen[0] = true;
    let mut queue = vec![(Elem::IDENTITY, Elem::IDENTITY)];
    let mut k = 0;
    while k < queue.len() {
        let (x, y) = queue[k];
        k += 1;
        for &(a, b) in &gens {
            let next = (group.mul(x, a), group.mul(y, b));
            let idx = next.0.index() * n + next.1.index();
            if !seen[idx] {
                seen[idx] = true;
                queue.push(next);
            }
        }
    }
    queue.sort();
    Ok(queue)
}

/// Whether the pairs `(g, g^-1)` generate exactly `D_2(G)`.
pub fn d2_antidiagonal_generation(group: &FiniteGroup) -> Result<bool> {
    let closure = antidiagonal_closure(group)?;
    let target = d2(group);
    Ok(target.members.as_deref() == Some(&closure[..]))
}
