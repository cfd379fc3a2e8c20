//! Concrete finite groups with stable element ids.

mod backing;
mod maps;
mod subgroup;
mod table_file;

use std::collections::HashMap;
use std::fmt;
use std::hash::Hash;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub(crate) use backing::{format_matrix, identity_matrix, index_vector, mat_inv, mat_mul, pow_mod, vector_index};
pub use backing::{Backing, TableData};
pub use maps::{MapTable, NilqCheck};
pub use subgroup::{NilpotencyCache, Subgroup};
pub use table_file::{load_table_file, parse_table};

/// Operations that materialize every element refuse groups larger than this.
pub const ORDER_CEILING: usize = 1 << 20;

/// Groups up to this order get a precomputed Cayley table.
pub const CAYLEY_LIMIT: usize = 1024;

/// An element id in a [`FiniteGroup`]; `Elem(0)` is the identity.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Elem(pub u32);

impl Elem {
    pub const IDENTITY: Elem = Elem(0);

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn is_identity(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Debug for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Element-level arithmetic shared by enumerated groups and ambient groups
/// that are only available through their elements (large permutation and
/// matrix groups).
pub trait GroupOps {
    type Element: Clone + Eq + Hash + fmt::Debug;

    fn identity(&self) -> Self::Element;
    fn op(&self, a: &Self::Element, b: &Self::Element) -> Self::Element;
    fn inv(&self, a: &Self::Element) -> Self::Element;
    fn name(&self, a: &Self::Element) -> String;

    fn is_identity(&self, a: &Self::Element) -> bool {
        *a == self.identity()
    }

    /// `[a, b] = a b a^-1 b^-1`.
    fn comm(&self, a: &Self::Element, b: &Self::Element) -> Self::Element {
        let ab = self.op(a, b);
        let ab_ai = self.op(&ab, &self.inv(a));
        self.op(&ab_ai, &self.inv(b))
    }

    fn pow(&self, a: &Self::Element, n: i64) -> Self::Element {
        let base = if n < 0 { self.inv(a) } else { a.clone() };
        let mut acc = self.identity();
        for _ in 0..n.unsigned_abs() {
            acc = self.op(&acc, &base);
        }
        acc
    }

    /// Order of `a`, or `None` past `cap`.
    fn element_order(&self, a: &Self::Element, cap: u64) -> Option<u64> {
        let mut x = a.clone();
        for k in 1..=cap {
            if self.is_identity(&x) {
                return Some(k);
            }
            x = self.op(&x, a);
        }
        None
    }
}

/// A finite group whose elements are enumerated and numbered.
///
/// Ids follow a breadth-first search from the identity over the generators
/// (right multiplication), each layer sorted by backing key. Table-backed
/// groups keep the ids of the table.
pub struct FiniteGroup {
    backing: Backing,
    keys: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, u32>,
    inverses: Vec<u32>,
    cayley: Option<Vec<u32>>,
    generators: Vec<Elem>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("order", &self.order())
            .field("generators", &self.generators)
            .finish()
    }
}

impl FiniteGroup {
    /// Enumerates the group generated by `gens` inside `backing`.
    pub fn from_generators(backing: Backing, gens: &[Vec<u32>]) -> Result<Self> {
        let identity = backing.identity_key();
        let mut keys = vec![identity.clone()];
        let mut index: HashMap<Vec<u32>, u32> = HashMap::new();
        index.insert(identity, 0);
        let mut layer_start = 0;
        while layer_start < keys.len() {
            let layer_end = keys.len();
            let mut fresh: Vec<Vec<u32>> = Vec::new();
            for k in layer_start..layer_end {
                for g in gens {
                    let prod = backing.mul(&keys[k], g);
                    if !index.contains_key(&prod) {
                        if keys.len() + fresh.len() >= ORDER_CEILING {
                            return Err(Error::SizeCeiling { ceiling: ORDER_CEILING });
                        }
                        index.insert(prod.clone(), u32::MAX);
                        fresh.push(prod);
                    }
                }
            }
            fresh.sort();
            for key in fresh {
                index.insert(key.clone(), keys.len() as u32);
                keys.push(key);
            }
            layer_start = layer_end;
        }
        let inverses = keys.iter().map(|k| index[&backing.inv(k)]).collect();
        let mut generators = Vec::new();
        for g in gens {
            let e = Elem(index[g]);
            if !e.is_identity() && !generators.contains(&e) {
                generators.push(e);
            }
        }
        let mut group = FiniteGroup {
            backing,
            keys,
            index,
            inverses,
            cayley: None,
            generators,
        };
        group.build_cayley();
        Ok(group)
    }

    /// Wraps an explicit table, keeping its ids. Generators are picked greedily
    /// in id order.
    pub fn from_table(table: TableData) -> Self {
        let order = table.order;
        let data = Arc::new(table);
        let keys: Vec<Vec<u32>> = (0..order as u32).map(|i| vec![i]).collect();
        let index = keys.iter().enumerate().map(|(i, k)| (k.clone(), i as u32)).collect();
        let mut group = FiniteGroup {
            backing: Backing::Table(data.clone()),
            keys,
            index,
            inverses: data.inv.clone(),
            cayley: Some(data.mul.clone()),
            generators: Vec::new(),
        };
        let mut gens = Vec::new();
        let mut span = group.closure(&[]).expect("empty closure");
        for id in 1..order as u32 {
            if !span.contains(Elem(id)) {
                gens.push(Elem(id));
                span = group.closure(&gens).expect("ids in range");
            }
        }
        group.generators = gens;
        group
    }

    /// Same as [`from_table`](Self::from_table) with a prescribed generator list.
    pub fn from_table_with_generators(table: TableData, gens: &[u32]) -> Self {
        let mut group = Self::from_table(table);
        group.generators = gens.iter().map(|&g| Elem(g)).filter(|g| !g.is_identity()).collect();
        group
    }

    fn build_cayley(&mut self) {
        let n = self.order();
        if n > CAYLEY_LIMIT || self.cayley.is_some() {
            return;
        }
        let mut table = vec![0u32; n * n];
        for a in 0..n {
            for b in 0..n {
                let prod = self.backing.mul(&self.keys[a], &self.keys[b]);
                table[a * n + b] = self.index[&prod];
            }
        }
        self.cayley = Some(table);
    }

    pub fn order(&self) -> usize {
        self.keys.len()
    }

    pub fn backing(&self) -> &Backing {
        &self.backing
    }

    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.order() as u32).map(Elem)
    }

    pub fn key(&self, e: Elem) -> &[u32] {
        &self.keys[e.index()]
    }

    pub fn find(&self, key: &[u32]) -> Option<Elem> {
        self.index.get(key).map(|&i| Elem(i))
    }

    pub fn check(&self, id: usize) -> Result<Elem> {
        if id < self.order() {
            Ok(Elem(id as u32))
        } else {
            Err(Error::IdOutOfRange {
                id,
                order: self.order(),
            })
        }
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        match &self.cayley {
            Some(t) => Elem(t[a.index() * self.order() + b.index()]),
            None => {
                let prod = self.backing.mul(&self.keys[a.index()], &self.keys[b.index()]);
                Elem(self.index[&prod])
            }
        }
    }

    #[inline]
    pub fn inverse(&self, a: Elem) -> Elem {
        Elem(self.inverses[a.index()])
    }

    pub fn commutator(&self, a: Elem, b: Elem) -> Elem {
        let ab = self.mul(a, b);
        self.mul(self.mul(ab, self.inverse(a)), self.inverse(b))
    }

    pub fn commutes(&self, a: Elem, b: Elem) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn power(&self, a: Elem, n: i64) -> Elem {
        GroupOps::pow(self, &a, n)
    }

    pub fn order_of(&self, a: Elem) -> usize {
        self.element_order(&a, self.order() as u64)
            .expect("element orders divide the group order") as usize
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .enumerate()
            .all(|(i, &a)| self.generators[i + 1..].iter().all(|&b| self.commutes(a, b)))
    }

    pub fn element_name(&self, e: Elem) -> String {
        self.backing.name(self.key(e))
    }

    /// Exhaustive group-axiom check used by tests and the table loader.
    pub fn verify_axioms(&self) -> bool {
        self.elements().all(|g| {
            self.mul(Elem::IDENTITY, g) == g
                && self.mul(g, Elem::IDENTITY) == g
                && self.mul(self.inverse(g), g).is_identity()
                && self.mul(g, self.inverse(g)).is_identity()
        })
    }
}

impl GroupOps for FiniteGroup {
    type Element = Elem;

    fn identity(&self) -> Elem {
        Elem::IDENTITY
    }

    fn op(&self, a: &Elem, b: &Elem) -> Elem {
        self.mul(*a, *b)
    }

    fn inv(&self, a: &Elem) -> Elem {
        self.inverse(*a)
    }

    fn name(&self, a: &Elem) -> String {
        self.element_name(*a)
    }
}

impl GroupOps for crate::perm::PermGroup {
    type Element = crate::perm::Perm;

    fn identity(&self) -> Self::Element {
        crate::perm::Perm::identity(self.degree())
    }

    fn op(&self, a: &Self::Element, b: &Self::Element) -> Self::Element {
        a.compose(b)
    }

    fn inv(&self, a: &Self::Element) -> Self::Element {
        a.inverse()
    }

    fn name(&self, a: &Self::Element) -> String {
        a.to_string()
    }

    fn is_identity(&self, a: &Self::Element) -> bool {
        a.is_identity()
    }
}
