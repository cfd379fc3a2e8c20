use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;

use super::snf::{smith_normal_form, SnfResult, SparseMatrix};
use crate::colimit::build_presentation;
use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup};

/// Default cap on simplices per dimension in [`build_complex`].
pub const DEFAULT_SIMPLEX_BUDGET: usize = 200_000;

/// Default cap on search nodes in [`hom_count`].
pub const DEFAULT_HOM_BUDGET: u64 = 100_000_000;

/// Tests whether tuples generate a subgroup of class `< q`, memoized on the
/// member set of the generated subgroup.
struct ClassOracle<'a> {
    group: &'a FiniteGroup,
    q: usize,
    memo: HashMap<Vec<Elem>, bool>,
    /// Commuting relation, row-major, for `q = 2`.
    commute: Vec<bool>,
}

impl<'a> ClassOracle<'a> {
    fn new(group: &'a FiniteGroup, q: usize) -> Result<Self> {
        if q < 2 {
            return Err(Error::InvalidParameter(format!("q must be at least 2, got {q}")));
        }
        let n = group.order();
        let commute = if q == 2 {
            let mut c = vec![false; n * n];
            for a in group.elements() {
                for b in group.elements() {
                    c[a.index() * n + b.index()] = group.commutes(a, b);
                }
            }
            c
        } else {
            Vec::new()
        };
        Ok(ClassOracle {
            group,
            q,
            memo: HashMap::new(),
            commute,
        })
    }

    /// Whether `prefix + [x]` still generates a subgroup of class `< q`,
    /// given that `prefix` does.
    fn extends(&mut self, prefix: &[Elem], x: Elem) -> Result<bool> {
        if self.q == 2 {
            let n = self.group.order();
            return Ok(prefix.iter().all(|p| self.commute[p.index() * n + x.index()]));
        }
        let mut gens = prefix.to_vec();
        gens.push(x);
        let members = self.group.closure(&gens)?.members().to_vec();
        if let Some(&ok) = self.memo.get(&members) {
            return Ok(ok);
        }
        let h = self.group.closure(&members)?;
        let ok = matches!(self.group.nilpotency_class(&h), Some(c) if c < self.q);
        self.memo.insert(members, ok);
        Ok(ok)
    }
}

/// `|Hom(Z^n, G)|` for `q = 2`; in general the number of `n`-tuples
/// generating a subgroup of class `< q`. `budget` caps search nodes.
pub fn hom_count(group: &FiniteGroup, n: usize, q: usize, budget: u64) -> Result<u128> {
    let mut oracle = ClassOracle::new(group, q)?;
    let mut nodes = 0u64;
    let mut prefix = Vec::with_capacity(n);
    fn walk(oracle: &mut ClassOracle, prefix: &mut Vec<Elem>, n: usize, nodes: &mut u64, budget: u64) -> Result<u128> {
        if prefix.len() == n {
            return Ok(1);
        }
        let mut total = 0u128;
        for x in oracle.group.elements() {
            if !oracle.extends(prefix, x)? {
                continue;
            }
            *nodes += 1;
            if *nodes > budget {
                return Err(Error::BudgetExceeded {
                    what: "tuple search nodes",
                    needed: u128::from(*nodes),
                    limit: u128::from(budget),
                });
            }
            if prefix.len() + 1 == n {
                total += 1;
                continue;
            }
            prefix.push(x);
            total += walk(oracle, prefix, n, nodes, budget)?;
            prefix.pop();
        }
        Ok(total)
    }
    walk(&mut oracle, &mut prefix, n, &mut nodes, budget)
}

/// Normalized chains of `B(q, G)` up to a dimension cap: bases of
/// nondegenerate tuples (no identity entries) and boundary matrices
/// `∂_n : C_n → C_{n-1}`.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    pub q: usize,
    /// `bases[n]` lists the nondegenerate `n`-simplices; `bases[0]` is the empty tuple.
    pub bases: Vec<Vec<Vec<Elem>>>,
    /// `boundaries[n]` is `∂_n` (rows index `C_{n-1}`); `boundaries[0]` is empty.
    pub boundaries: Vec<SparseMatrix>,
}

impl ChainComplex {
    pub fn dimension(&self) -> usize {
        self.bases.len() - 1
    }

    pub fn simplex_counts(&self) -> Vec<usize> {
        self.bases.iter().map(|b| b.len()).collect()
    }
}

pub fn build_complex(group: &FiniteGroup, q: usize, dim: usize, budget: usize) -> Result<ChainComplex> {
    let mut oracle = ClassOracle::new(group, q)?;
    let mut bases: Vec<Vec<Vec<Elem>>> = vec![vec![Vec::new()]];
    for n in 1..=dim {
        let mut next = Vec::new();
        for t in &bases[n - 1] {
            for x in group.elements().skip(1) {
                if oracle.extends(t, x)? {
                    let mut s = t.clone();
                    s.push(x);
                    next.push(s);
                    if next.len() > budget {
                        return Err(Error::BudgetExceeded {
                            what: "simplices in one dimension",
                            needed: next.len() as u128,
                            limit: budget as u128,
                        });
                    }
                }
            }
        }
        bases.push(next);
    }
    let mut boundaries = vec![SparseMatrix::new(0, 1)];
    for n in 1..=dim {
        let index: HashMap<&[Elem], usize> = bases[n - 1]
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_slice(), i))
            .collect();
        let mut triplets = Vec::new();
        for (col, s) in bases[n].iter().enumerate() {
            for i in 0..=n {
                let face: Vec<Elem> = if i == 0 {
                    s[1..].to_vec()
                } else if i == n {
                    s[..n - 1].to_vec()
                } else {
                    let mut f = s[..i - 1].to_vec();
                    f.push(group.mul(s[i - 1], s[i]));
                    f.extend_from_slice(&s[i + 1..]);
                    f
                };
                if face.iter().any(|e| e.is_identity()) {
                    continue;
                }
                let row = index[face.as_slice()];
                triplets.push((row, col, if i % 2 == 0 { 1 } else { -1 }));
            }
        }
        boundaries.push(SparseMatrix::from_triplets(
            bases[n - 1].len(),
            bases[n].len(),
            triplets,
        ));
    }
    Ok(ChainComplex { q, bases, boundaries })
}

/// A finitely generated abelian group `Z^rank ⊕ ⊕ Z/d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianGroup {
    pub rank: usize,
    pub torsion: Vec<BigInt>,
}

impl AbelianGroup {
    pub fn is_trivial(&self) -> bool {
        self.rank == 0 && self.torsion.is_empty()
    }

    pub fn torsion_u64(&self) -> Vec<u64> {
        self.torsion
            .iter()
            .map(|d| u64::try_from(d).expect("small invariant factor"))
            .collect()
    }

    /// Prime-power orders of the cyclic summands of the torsion, sorted.
    pub fn primary_decomposition(&self) -> Vec<u64> {
        let mut out = Vec::new();
        for mut d in self.torsion_u64() {
            let mut p = 2;
            while d > 1 {
                let mut q = 1;
                while d % p == 0 {
                    d /= p;
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
}

impl fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// `H_k` of a complex built to dimension at least `k + 1`.
pub fn homology_of(complex: &ChainComplex, k: usize) -> Result<AbelianGroup> {
    if complex.dimension() < k + 1 {
        return Err(Error::InvalidParameter(format!(
            "H_{k} needs the complex up to dimension {}, built only to {}",
            k + 1,
            complex.dimension()
        )));
    }
    let n_k = complex.bases[k].len();
    let rank_k = if k == 0 {
        0
    } else {
        smith_normal_form(&complex.boundaries[k]).rank
    };
    let next: SnfResult = smith_normal_form(&complex.boundaries[k + 1]);
    Ok(AbelianGroup {
        rank: n_k - rank_k - next.rank,
        torsion: next.torsion,
    })
}

/// `H_k(B(q, G); Z)` for `k ≤ 2` from normalized bar chains.
pub fn homology(group: &FiniteGroup, q: usize, k: usize, budget: usize) -> Result<AbelianGroup> {
    if k > 2 {
        return Err(Error::InvalidParameter(format!(
            "homology is computed for k <= 2, got {k}"
        )));
    }
    let complex = build_complex(group, q, k + 1, budget)?;
    homology_of(&complex, k)
}

/// The colimit's abelianization, read off its presentation's exponent-sum matrix.
pub fn presentation_abelianization(group: &FiniteGroup) -> Result<AbelianGroup> {
    let p = build_presentation(group, 2)?;
    let gens = p.generator_count();
    let mut triplets = Vec::new();
    for (row, r) in p.relators.iter().enumerate() {
        for &l in r.letters() {
            triplets.push((row, l.unsigned_abs() as usize - 1, l.signum() as i64));
        }
    }
    let m = SparseMatrix::from_triplets(p.relators.len(), gens, triplets);
    let snf = smith_normal_form(&m);
    Ok(AbelianGroup {
        rank: gens - snf.rank,
        torsion: snf.torsion,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct H1Consistency {
    pub from_presentation: AbelianGroup,
    pub from_complex: AbelianGroup,
}

impl H1Consistency {
    pub fn agrees(&self) -> bool {
        self.from_presentation == self.from_complex
    }
}

pub fn h1_consistency(group: &FiniteGroup, budget: usize) -> Result<H1Consistency> {
    Ok(H1Consistency {
        from_presentation: presentation_abelianization(group)?,
        from_complex: homology(group, 2, 1, budget)?,
    })
}
