use super::{Elem, FiniteGroup, NilpotencyCache};
use crate::error::{Error, Result};

/// A set map between two enumerated groups, as an image table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MapTable {
    source_order: usize,
    target_order: usize,
    images: Vec<Elem>,
}

/// Outcome of [`MapTable::is_nilq_map`]; `witness` is the first pair `(g, h)`
/// with `<g, h>` of class `< q` and `φ(g)φ(h) ≠ φ(gh)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NilqCheck {
    pub holds: bool,
    pub witness: Option<(Elem, Elem)>,
}

impl MapTable {
    pub fn new(source_order: usize, target_order: usize, images: Vec<Elem>) -> Self {
        MapTable {
            source_order,
            target_order,
            images,
        }
    }

    pub fn identity(g: &FiniteGroup) -> Self {
        MapTable::new(g.order(), g.order(), g.elements().collect())
    }

    pub fn from_fn(source: &FiniteGroup, target: &FiniteGroup, f: impl Fn(Elem) -> Elem) -> Self {
        MapTable::new(source.order(), target.order(), source.elements().map(f).collect())
    }

    pub fn images(&self) -> &[Elem] {
        &self.images
    }

    pub fn apply(&self, e: Elem) -> Elem {
        self.images[e.index()]
    }

    fn validate(&self, source: &FiniteGroup, target: &FiniteGroup) -> Result<()> {
        if self.source_order != source.order() || self.images.len() != source.order() {
            return Err(Error::MismatchedGroups(format!(
                "map has {} images but the source has order {}",
                self.images.len(),
                source.order()
            )));
        }
        if self.target_order != target.order() {
            return Err(Error::MismatchedGroups(format!(
                "map targets a group of order {} but was given one of order {}",
                self.target_order,
                target.order()
            )));
        }
        if let Some(bad) = self.images.iter().find(|e| e.index() >= target.order()) {
            return Err(Error::IdOutOfRange {
                id: bad.index(),
                order: target.order(),
            });
        }
        Ok(())
    }

    /// Checks multiplicativity on every pair generating a subgroup of
    /// nilpotency class `< q`. For `q = 2` these are the commuting pairs.
    pub fn is_nilq_map(&self, source: &FiniteGroup, target: &FiniteGroup, q: usize) -> Result<NilqCheck> {
        if q < 2 {
            return Err(Error::InvalidParameter(format!("q must be at least 2, got {q}")));
        }
        self.validate(source, target)?;
        let mut cache = NilpotencyCache::new();
        for g in source.elements() {
            for h in source.elements() {
                let in_class = if q == 2 {
                    source.commutes(g, h)
                } else {
                    cache.pair_below(source, g, h, q)
                };
                if !in_class {
                    continue;
                }
                let lhs = target.mul(self.apply(g), self.apply(h));
                if lhs != self.apply(source.mul(g, h)) {
                    return Ok(NilqCheck {
                        holds: false,
                        witness: Some((g, h)),
                    });
                }
            }
        }
        Ok(NilqCheck {
            holds: true,
            witness: None,
        })
    }

    /// True group homomorphism check over all pairs.
    pub fn is_homomorphism(&self, source: &FiniteGroup, target: &FiniteGroup) -> Result<bool> {
        self.validate(source, target)?;
        Ok(source.elements().all(|g| {
            source
                .elements()
                .all(|h| target.mul(self.apply(g), self.apply(h)) == self.apply(source.mul(g, h)))
        }))
    }
}
