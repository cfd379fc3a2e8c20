use std::fmt;

use crate::group::Elem;

/// A word in the generators `(g)` of a presentation: signed 1-based indices,
/// negative for inverses. Generator `k` stands for the element with id `k`.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<i32>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// The generator `(g)`; the identity element gives the empty word.
    pub fn letter(g: Elem) -> Self {
        if g.is_identity() {
            Word::empty()
        } else {
            Word(vec![g.0 as i32])
        }
    }

    pub fn letters(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Self {
        Word(self.0.iter().rev().map(|&l| -l).collect())
    }

    pub fn concat(&self, other: &Word) -> Self {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn product<'a>(words: impl IntoIterator<Item = &'a Word>) -> Self {
        Word(words.into_iter().flat_map(|w| w.0.iter().copied()).collect())
    }

    pub fn pow(&self, n: i64) -> Self {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        Word(
            std::iter::repeat_n(base.0.iter().copied(), n.unsigned_abs() as usize)
                .flatten()
                .collect(),
        )
    }

    /// `[a, b] = a b a^-1 b^-1`.
    pub fn commutator(a: &Word, b: &Word) -> Self {
        Word::product([a, b, &a.inverse(), &b.inverse()])
    }

    /// Cancels adjacent `x x^-1` pairs.
    pub fn reduced(&self) -> Self {
        let mut out: Vec<i32> = Vec::with_capacity(self.0.len());
        for &l in &self.0 {
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    /// Replaces each generator `k` by `f(k)` (and `k^-1` by `f(k)^-1`).
    pub fn substitute(&self, f: impl Fn(u32) -> Word) -> Self {
        let mut out = Vec::new();
        for &l in &self.0 {
            let w = f(l.unsigned_abs());
            if l > 0 {
                out.extend_from_slice(&w.0);
            } else {
                out.extend(w.0.iter().rev().map(|&x| -x));
            }
        }
        Word(out)
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self.0.iter().map(|l| l.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn word_algebra() {
        let a = Word(vec![1, -2]);
        let b = Word(vec![3]);
        assert_eq!(a.inverse(), Word(vec![2, -1]));
        assert_eq!(a.concat(&a.inverse()).reduced(), Word::empty());
        assert_eq!(Word::commutator(&a, &b), Word(vec![1, -2, 3, 2, -1, -3]));
        assert_eq!(b.pow(-2), Word(vec![-3, -3]));
        assert_eq!(b.pow(0), Word::empty());
        assert_eq!(Word::letter(Elem(0)), Word::empty());
        assert_eq!(Word::letter(Elem(4)), Word(vec![4]));
        let s = Word(vec![1, -3]).substitute(|k| Word(vec![k as i32, k as i32]));
        assert_eq!(s, Word(vec![1, 1, -3, -3]));
        assert_eq!(Word::empty().to_string(), "1");
    }
}
