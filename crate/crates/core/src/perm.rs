//! Permutations on `{0, .., n-1}` and stabilizer chains for permutation groups
//! too large to enumerate.
//!
//! Composition convention: `(a * b)(x) = a(b(x))`, the right factor acts first.
//! Cycle notation is 1-based on input and output, e.g. `(1 2 3)(4 5)`.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<u32>);

impl Perm {
    pub fn identity(degree: usize) -> Self {
        Perm((0..degree as u32).collect())
    }

    /// Builds a permutation from its image list, validating bijectivity.
    pub fn from_images(images: Vec<u32>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(Error::InvalidPermutation(format!(
                    "image list {images:?} is not a bijection"
                )));
            }
            seen[x] = true;
        }
        Ok(Perm(images))
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        Perm(images)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    #[inline]
    pub fn apply(&self, x: u32) -> u32 {
        self.0[x as usize]
    }

    /// `self * other`, i.e. apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm(other.0.iter().map(|&x| self.0[x as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Perm(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// Pads with fixed points up to `degree`.
    pub fn extend(&self, degree: usize) -> Perm {
        assert!(degree >= self.degree());
        let mut v = self.0.clone();
        v.extend(self.0.len() as u32..degree as u32);
        Perm(v)
    }

    pub fn first_moved_point(&self) -> Option<u32> {
        self.0
            .iter()
            .enumerate()
            .find(|&(i, &x)| i as u32 != x)
            .map(|(i, _)| i as u32)
    }

    /// Disjoint cycles of length at least two, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for start in 0..self.0.len() {
            if seen[start] || self.0[start] as usize == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x as u32);
                x = self.0[x] as usize;
            }
            out.push(cycle);
        }
        out
    }

    pub fn is_even(&self) -> bool {
        self.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 0
    }

    /// Parses 1-based cycle notation such as `(1 2 3)(4 5)`; `()` is the identity.
    /// Cycles are composed right to left. The degree is `max(degree, largest point)`.
    pub fn parse_cycles(s: &str, degree: usize) -> Result<Perm> {
        let cycles = parse_cycle_list(s)?;
        let max_point = cycles.iter().flatten().copied().max().unwrap_or(0) as usize;
        let n = degree.max(max_point);
        let mut perm = Perm::identity(n);
        for cycle in cycles.iter().rev() {
            let mut images: Vec<u32> = (0..n as u32).collect();
            for (k, &a) in cycle.iter().enumerate() {
                let b = cycle[(k + 1) % cycle.len()];
                images[(a - 1) as usize] = b - 1;
            }
            let c = Perm::from_images(images)?;
            perm = c.compose(&perm);
        }
        Ok(perm)
    }
}

fn parse_cycle_list(s: &str) -> Result<Vec<Vec<u32>>> {
    let bad = |why: &str| Error::InvalidPermutation(format!("{s:?}: {why}"));
    let mut cycles = Vec::new();
    let mut rest = s.trim();
    while !rest.is_empty() {
        let body = rest.strip_prefix('(').ok_or_else(|| bad("expected '('"))?;
        let close = body.find(')').ok_or_else(|| bad("unclosed cycle"))?;
        let points = body[..close]
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<u32>()
                    .ok()
                    .filter(|&p| p >= 1)
                    .ok_or_else(|| bad("points are positive integers"))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut sorted = points.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != points.len() {
            return Err(bad("repeated point in a cycle"));
        }
        if !points.is_empty() {
            cycles.push(points);
        }
        rest = body[close + 1..].trim_start();
    }
    Ok(cycles)
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            f.write_str("(")?;
            for (k, x) in c.iter().enumerate() {
                if k > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", x + 1)?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

struct Level {
    base_point: u32,
    /// Strong generators introduced at this level; they fix all earlier base points.
    gens: Vec<Perm>,
    orbit: Vec<u32>,
    /// `transversal[x]` maps the base point to `x`, for `x` in the orbit.
    transversal: Vec<Option<Perm>>,
}

/// A permutation group held as a stabilizer chain (deterministic Schreier–Sims).
///
/// The group is never enumerated; order and membership come from the chain.
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    levels: Vec<Level>,
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Perm>) -> Result<Self> {
        let generators: Vec<Perm> = generators
            .into_iter()
            .map(|g| {
                if g.degree() > degree {
                    Err(Error::InvalidPermutation(format!(
                        "{g} moves points beyond degree {degree}"
                    )))
                } else {
                    Ok(g.extend(degree))
                }
            })
            .collect::<Result<_>>()?;
        let mut group = PermGroup {
            degree,
            generators: generators.clone(),
            levels: Vec::new(),
        };
        for g in generators.iter().filter(|g| !g.is_identity()) {
            group.add_strong_generator(0, g.clone());
        }
        group.complete();
        Ok(group)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.base_point).collect()
    }

    /// Group order, or `None` on `u128` overflow.
    pub fn order(&self) -> Option<u128> {
        self.levels
            .iter()
            .try_fold(1u128, |acc, l| acc.checked_mul(l.orbit.len() as u128))
    }

    pub fn contains(&self, g: &Perm) -> bool {
        if g.degree() > self.degree {
            return g.images()[self.degree..]
                .iter()
                .enumerate()
                .all(|(i, &x)| x as usize == i + self.degree)
                && self.contains(&Perm(g.images()[..self.degree].to_vec()));
        }
        let g = g.extend(self.degree);
        let (level, residue) = self.sift(&g, 0);
        level == self.levels.len() && residue.is_identity()
    }

    pub fn is_abelian(&self) -> bool {
        self.generators
            .iter()
            .enumerate()
            .all(|(i, a)| self.generators[i + 1..].iter().all(|b| a.compose(b) == b.compose(a)))
    }

    /// Strips `g` through the chain starting at `from`. Returns the level where
    /// sifting stopped (the chain length if it went all the way) and the residue.
    fn sift(&self, g: &Perm, from: usize) -> (usize, Perm) {
        let mut h = g.clone();
        for (i, level) in self.levels.iter().enumerate().skip(from) {
            let beta = h.apply(level.base_point);
            match &level.transversal[beta as usize] {
                Some(u) => h = u.inverse().compose(&h),
                None => return (i, h),
            }
        }
        (self.levels.len(), h)
    }

    fn add_strong_generator(&mut self, level: usize, g: Perm) {
        if level == self.levels.len() {
            let base_point = g.first_moved_point().expect("non-identity residue");
            self.levels.push(Level {
                base_point,
                gens: Vec::new(),
                orbit: Vec::new(),
                transversal: Vec::new(),
            });
        }
        self.levels[level].gens.push(g);
    }

    fn rebuild_orbits(&mut self) {
        for i in 0..self.levels.len() {
            let gens: Vec<Perm> = self.levels[i..].iter().flat_map(|l| l.gens.iter().cloned()).collect();
            let b = self.levels[i].base_point;
            let mut transversal: Vec<Option<Perm>> = vec![None; self.degree];
            transversal[b as usize] = Some(Perm::identity(self.degree));
            let mut orbit = vec![b];
            let mut k = 0;
            while k < orbit.len() {
                let x = orbit[k];
                k += 1;
                for s in &gens {
                    let y = s.apply(x);
                    if transversal[y as usize].is_none() {
                        let u = s.compose(transversal[x as usize].as_ref().unwrap());
                        transversal[y as usize] = Some(u);
                        orbit.push(y);
                    }
                }
            }
            self.levels[i].orbit = orbit;
            self.levels[i].transversal = transversal;
        }
    }

    /// Adds sifted Schreier generators until every level is closed.
    fn complete(&mut self) {
        'restart: loop {
            self.rebuild_orbits();
            for i in (0..self.levels.len()).rev() {
                let gens: Vec<Perm> = self.levels[i..].iter().flat_map(|l| l.gens.iter().cloned()).collect();
                for &beta in &self.levels[i].orbit {
                    let u_beta = self.levels[i].transversal[beta as usize].as_ref().unwrap();
                    for s in &gens {
                        let image = s.apply(beta);
                        let u_image = self.levels[i].transversal[image as usize].as_ref().unwrap();
                        let schreier = u_image.inverse().compose(&s.compose(u_beta));
                        let (level, residue) = self.sift(&schreier, i + 1);
                        if !residue.is_identity() {
                            self.add_strong_generator(level, residue);
                            continue 'restart;
                        }
                    }
                }
            }
            break;
        }
    }
}
