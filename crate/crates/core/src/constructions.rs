//! Builders for cyclic, dihedral, quaternion, symmetric, alternating,
//! extraspecial (Heisenberg model) and general linear groups, plus the
//! `GL(n, p) -> Sym(p^n)` embedding.
//!
//! Spec strings: `cyclic:n`, `dihedral:n` (order n), `quaternion`, `sym:n`,
//! `alt:n`, `extraspecial:p:r`, `gl:n:p`, `product:(spec),(spec)`,
//! `perm:(cycles);(cycles);…` and `table:path`.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::group::{
    format_matrix, identity_matrix, index_vector, load_table_file, mat_inv, mat_mul, vector_index, Backing, Elem,
    FiniteGroup, GroupOps, TableData,
};
use crate::perm::{Perm, PermGroup};

/// Largest point set the linear action of GL(n, p) may act on.
pub const MAX_LINEAR_DEGREE: usize = 1 << 16;

/// Largest degree for which an ambient permutation group gets a stabilizer chain.
pub const MAX_CHAIN_DEGREE: usize = 4096;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(usize),
    /// Dihedral group of the given order (must be even).
    Dihedral(usize),
    Quaternion,
    Sym(usize),
    Alt(usize),
    Extraspecial {
        p: u32,
        r: usize,
    },
    Gl {
        n: usize,
        p: u32,
    },
    Product(Box<GroupSpec>, Box<GroupSpec>),
    Perm(Vec<Perm>),
    Table(PathBuf),
}

pub fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let invalid = |reason: &str| Error::InvalidSpec {
            spec: s.to_string(),
            reason: reason.to_string(),
        };
        let (family, rest) = match s.split_once(':') {
            Some((f, r)) => (f, r),
            None => (s, ""),
        };
        let int = |t: &str| -> Result<usize> {
            t.trim()
                .parse::<usize>()
                .map_err(|_| invalid("expected a non-negative integer parameter"))
        };
        let prime = |t: &str| -> Result<u32> {
            let p = int(t)? as u32;
            if is_prime(p) {
                Ok(p)
            } else {
                Err(invalid(&format!("{p} is not prime")))
            }
        };
        let spec = match family {
            "quaternion" if rest.is_empty() => GroupSpec::Quaternion,
            "cyclic" => GroupSpec::Cyclic(int(rest)?),
            "dihedral" => GroupSpec::Dihedral(int(rest)?),
            "sym" => GroupSpec::Sym(int(rest)?),
            "alt" => GroupSpec::Alt(int(rest)?),
            "extraspecial" => {
                let (p, r) = rest
                    .split_once(':')
                    .ok_or_else(|| invalid("expected extraspecial:p:r"))?;
                GroupSpec::Extraspecial {
                    p: prime(p)?,
                    r: int(r)?,
                }
            }
            "gl" => {
                let (n, p) = rest.split_once(':').ok_or_else(|| invalid("expected gl:n:p"))?;
                GroupSpec::Gl {
                    n: int(n)?,
                    p: prime(p)?,
                }
            }
            "product" => {
                let (a, tail) = take_parenthesized(rest).ok_or_else(|| invalid("expected product:(a),(b)"))?;
                let tail = tail
                    .trim_start()
                    .strip_prefix(',')
                    .ok_or_else(|| invalid("expected ',' between factors"))?;
                let (b, tail) = take_parenthesized(tail).ok_or_else(|| invalid("expected product:(a),(b)"))?;
                if !tail.trim().is_empty() {
                    return Err(invalid("trailing text after the second factor"));
                }
                GroupSpec::Product(Box::new(a.parse()?), Box::new(b.parse()?))
            }
            "perm" => {
                let gens = rest
                    .split(';')
                    .filter(|t| !t.trim().is_empty())
                    .map(|t| Perm::parse_cycles(t, 0))
                    .collect::<Result<Vec<_>>>()?;
                GroupSpec::Perm(gens)
            }
            "table" if !rest.is_empty() => GroupSpec::Table(PathBuf::from(rest)),
            _ => return Err(invalid("unknown group family")),
        };
        spec.validate().map_err(|e| match e {
            Error::InvalidParameter(reason) => invalid(&reason),
            other => other,
        })?;
        Ok(spec)
    }
}

fn take_parenthesized(s: &str) -> Option<(&str, &str)> {
    let s = s.trim_start();
    let body = s.strip_prefix('(')?;
    let mut depth = 1;
    for (i, c) in body.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => {
                depth -= 1;
                if depth == 0 {
                    return Some((&body[..i], &body[i + 1..]));
                }
            }
            _ => {}
        }
    }
    None
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "cyclic:{n}"),
            GroupSpec::Dihedral(n) => write!(f, "dihedral:{n}"),
            GroupSpec::Quaternion => write!(f, "quaternion"),
            GroupSpec::Sym(n) => write!(f, "sym:{n}"),
            GroupSpec::Alt(n) => write!(f, "alt:{n}"),
            GroupSpec::Extraspecial { p, r } => write!(f, "extraspecial:{p}:{r}"),
            GroupSpec::Gl { n, p } => write!(f, "gl:{n}:{p}"),
            GroupSpec::Product(a, b) => write!(f, "product:({a}),({b})"),
            GroupSpec::Perm(gens) => {
                let parts: Vec<String> = gens.iter().map(|g| g.to_string()).collect();
                write!(f, "perm:{}", parts.join(";"))
            }
            GroupSpec::Table(path) => write!(f, "table:{}", path.display()),
        }
    }
}

impl GroupSpec {
    fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::InvalidParameter(m));
        match self {
            GroupSpec::Cyclic(0) | GroupSpec::Sym(0) | GroupSpec::Alt(0) => {
                bad("degree/order must be at least 1".into())
            }
            GroupSpec::Dihedral(n) if *n == 0 || n % 2 == 1 => {
                bad(format!("dihedral order must be a positive even number, got {n}"))
            }
            GroupSpec::Extraspecial { r: 0, .. } => bad("extraspecial rank r must be at least 1".into()),
            GroupSpec::Gl { n: 0, .. } => bad("matrix size n must be at least 1".into()),
            GroupSpec::Product(a, b) => {
                a.validate()?;
                b.validate()
            }
            _ => Ok(()),
        }
    }

    /// Permutation degree and generators when this spec is a permutation group
    /// (symmetric, alternating, explicit permutations, or GL via its linear action).
    pub fn permutation_generators(&self) -> Result<Option<(usize, Vec<Perm>)>> {
        Ok(match self {
            GroupSpec::Sym(n) => Some((*n, sym_generators(*n))),
            GroupSpec::Alt(n) => Some((*n, alt_generators(*n))),
            GroupSpec::Perm(gens) => {
                let degree = gens.iter().map(|g| g.degree()).max().unwrap_or(1).max(1);
                Some((degree, gens.iter().map(|g| g.extend(degree)).collect()))
            }
            GroupSpec::Gl { n, p } => {
                let action = embed_gl_in_sym(*n, *p)?;
                let gens = gl_generators(*n, *p).iter().map(|m| action.image(m)).collect();
                Some((action.degree(), gens))
            }
            _ => None,
        })
    }
}

fn cycle_perm(points: &[u32], degree: usize) -> Perm {
    let mut images: Vec<u32> = (0..degree as u32).collect();
    for (k, &a) in points.iter().enumerate() {
        images[a as usize] = points[(k + 1) % points.len()];
    }
    Perm::from_images(images).expect("a cycle is a bijection")
}

fn sym_generators(n: usize) -> Vec<Perm> {
    if n < 2 {
        return vec![];
    }
    let all: Vec<u32> = (0..n as u32).collect();
    let mut gens = vec![cycle_perm(&[0, 1], n)];
    if n > 2 {
        gens.push(cycle_perm(&all, n));
    }
    gens
}

fn alt_generators(n: usize) -> Vec<Perm> {
    if n < 3 {
        return vec![];
    }
    let mut gens = vec![cycle_perm(&[0, 1, 2], n)];
    if n > 3 {
        let long: Vec<u32> = if n % 2 == 1 {
            (0..n as u32).collect()
        } else {
            (1..n as u32).collect()
        };
        gens.push(cycle_perm(&long, n));
    }
    gens
}

/// A square matrix over F_p, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    pub dim: usize,
    pub p: u32,
    pub entries: Vec<u32>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_matrix(self.dim, &self.entries))
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_matrix(self.dim, &self.entries))
    }
}

impl Matrix {
    pub fn identity(dim: usize, p: u32) -> Self {
        Matrix {
            dim,
            p,
            entries: identity_matrix(dim),
        }
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.dim + j]
    }
}

/// GL(n, p) as an ambient group acting through matrices, for sizes that are not enumerated.
#[derive(Clone, Copy, Debug)]
pub struct GeneralLinear {
    pub n: usize,
    pub p: u32,
}

impl GroupOps for GeneralLinear {
    type Element = Matrix;

    fn identity(&self) -> Matrix {
        Matrix::identity(self.n, self.p)
    }

    fn op(&self, a: &Matrix, b: &Matrix) -> Matrix {
        Matrix {
            dim: self.n,
            p: self.p,
            entries: mat_mul(self.n, self.p, &a.entries, &b.entries),
        }
    }

    fn inv(&self, a: &Matrix) -> Matrix {
        Matrix {
            dim: self.n,
            p: self.p,
            entries: mat_inv(self.n, self.p, &a.entries).expect("invertible"),
        }
    }

    fn name(&self, a: &Matrix) -> String {
        a.to_string()
    }
}

/// The transvection with 1's on the diagonal and in slot `(i, j)` (1-based).
pub fn elementary_matrix(n: usize, p: u32, i: usize, j: usize) -> Result<Matrix> {
    if i == j || i == 0 || j == 0 || i > n || j > n {
        return Err(Error::InvalidParameter(format!(
            "elementary matrix E_{{{i},{j}}} needs 1 <= i != j <= {n}"
        )));
    }
    let mut m = Matrix::identity(n, p);
    m.entries[(i - 1) * n + (j - 1)] = 1;
    Ok(m)
}

fn primitive_root(p: u32) -> u32 {
    if p == 2 {
        return 1;
    }
    let phi = p - 1;
    let mut factors = Vec::new();
    let mut m = phi;
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            factors.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        factors.push(m);
    }
    (2..p)
        .find(|&g| {
            factors
                .iter()
                .all(|&q| crate::group::pow_mod(g as u64, (phi / q) as u64, p as u64) != 1)
        })
        .expect("a prime field has a primitive root")
}

/// Transvections `E_{i,i+1}`, `E_{i+1,i}` and, for odd `p`, `diag(ω, 1, …, 1)`.
fn gl_generators(n: usize, p: u32) -> Vec<Matrix> {
    let mut gens = Vec::new();
    for i in 1..n {
        gens.push(elementary_matrix(n, p, i, i + 1).unwrap());
        gens.push(elementary_matrix(n, p, i + 1, i).unwrap());
    }
    if p > 2 {
        let mut d = Matrix::identity(n, p);
        d.entries[0] = primitive_root(p);
        gens.push(d);
    }
    gens
}

/// The natural permutation action of GL(n, p) on the `p^n` vectors of F_p^n.
/// Vector `v` is point `Σ v_i p^i` (0-based); the zero vector is fixed.
#[derive(Clone, Copy, Debug)]
pub struct LinearAction {
    pub n: usize,
    pub p: u32,
}

impl LinearAction {
    pub fn degree(&self) -> usize {
        (self.p as usize).pow(self.n as u32)
    }

    pub fn image(&self, m: &Matrix) -> Perm {
        assert_eq!(
            (m.dim, m.p),
            (self.n, self.p),
            "matrix outside GL({}, {})",
            self.n,
            self.p
        );
        let images = (0..self.degree() as u32)
            .map(|idx| {
                let v = index_vector(self.n, self.p, idx);
                let w: Vec<u32> = (0..self.n)
                    .map(|i| (0..self.n).map(|j| m.get(i, j) as u64 * v[j] as u64).sum::<u64>() as u32 % self.p)
                    .collect();
                vector_index(self.p, &w)
            })
            .collect();
        Perm::from_images(images).expect("invertible matrices permute vectors")
    }
}

pub fn embed_gl_in_sym(n: usize, p: u32) -> Result<LinearAction> {
    let degree = (p as u128).checked_pow(n as u32).unwrap_or(u128::MAX);
    if degree > MAX_LINEAR_DEGREE as u128 {
        return Err(Error::BudgetExceeded {
            what: "points of the linear action",
            needed: degree,
            limit: MAX_LINEAR_DEGREE as u128,
        });
    }
    Ok(LinearAction { n, p })
}

/// `{E_12, E_13, E_2n, E_3n}` in GL(n, p).
pub fn gl_symplectic_sequence(n: usize, p: u32) -> Result<Vec<Matrix>> {
    if n < 4 {
        return Err(Error::InvalidParameter(format!(
            "the transvection sequence needs n >= 4, got {n}"
        )));
    }
    Ok(vec![
        elementary_matrix(n, p, 1, 2)?,
        elementary_matrix(n, p, 1, 3)?,
        elementary_matrix(n, p, 2, n)?,
        elementary_matrix(n, p, 3, n)?,
    ])
}

fn heisenberg_key(p: u32, r: usize, a: &[u32], b: &[u32], c: u32) -> Vec<u32> {
    let dim = r + 2;
    let mut m = identity_matrix(dim);
    for j in 0..r {
        m[1 + j] = a[j] % p;
        m[(1 + j) * dim + r + 1] = b[j] % p;
    }
    m[r + 1] = c % p;
    m
}

/// Lifted symplectic basis `ẽ_i = (δ_i, 0, 0)`, `ẽ_{r+i} = (0, δ_i, 0)` of the
/// Heisenberg model of `extraspecial:p:r`, as ids in `group`.
pub fn extraspecial_symplectic_basis(group: &FiniteGroup) -> Result<Vec<Elem>> {
    let (p, r) = match group.backing() {
        Backing::Matrix {
            dim,
            p,
            heisenberg: true,
        } => (*p, dim - 2),
        _ => {
            return Err(Error::InvalidParameter(
                "group is not an extraspecial (Heisenberg) group".into(),
            ))
        }
    };
    let delta = |i: usize| -> Vec<u32> { (0..r).map(|j| u32::from(i == j)).collect() };
    let zero = vec![0; r];
    let mut basis = Vec::with_capacity(2 * r);
    for i in 0..r {
        basis.push(heisenberg_key(p, r, &delta(i), &zero, 0));
    }
    for i in 0..r {
        basis.push(heisenberg_key(p, r, &zero, &delta(i), 0));
    }
    basis
        .iter()
        .map(|k| {
            group
                .find(k)
                .ok_or_else(|| Error::InvalidParameter("basis element missing".into()))
        })
        .collect()
}

/// Id of a matrix in an enumerated `gl:n:p` group.
pub fn gl_element(group: &FiniteGroup, m: &Matrix) -> Result<Elem> {
    match group.backing() {
        Backing::Permutation {
            linear: Some((n, p)), ..
        } if (*n, *p) == (m.dim, m.p) => {
            let perm = LinearAction { n: *n, p: *p }.image(m);
            group
                .find(perm.images())
                .ok_or_else(|| Error::InvalidParameter(format!("{m} is not in the group")))
        }
        _ => Err(Error::InvalidParameter(format!("group is not GL({}, {})", m.dim, m.p))),
    }
}

fn table_group(order: usize, names: Vec<String>, gens: &[u32], mul: impl Fn(usize, usize) -> usize) -> FiniteGroup {
    let mut table = vec![0u32; order * order];
    for a in 0..order {
        for b in 0..order {
            table[a * order + b] = mul(a, b) as u32;
        }
    }
    FiniteGroup::from_table_with_generators(TableData::new(order, table, Some(names)), gens)
}

fn cyclic(n: usize) -> FiniteGroup {
    let names = (0..n).map(|k| k.to_string()).collect();
    let gens: Vec<u32> = if n > 1 { vec![1] } else { vec![] };
    table_group(n, names, &gens, |a, b| (a + b) % n)
}

/// `r^a s^b` has id `b·m + a` where `m = order / 2`.
fn dihedral(order: usize) -> FiniteGroup {
    let m = order / 2;
    let names = (0..order)
        .map(|id| {
            let (a, b) = (id % m, id / m);
            let rot = match a {
                0 => String::new(),
                1 => "r".to_string(),
                _ => format!("r^{a}"),
            };
            match (rot.is_empty(), b) {
                (true, 0) => "1".to_string(),
                (false, 0) => rot,
                (_, _) => format!("{rot}s"),
            }
        })
        .collect();
    let gens: Vec<u32> = if m > 1 { vec![1, m as u32] } else { vec![m as u32] };
    table_group(order, names, &gens, |x, y| {
        let (a, b) = (x % m, x / m);
        let (c, d) = (y % m, y / m);
        let rot = if b == 0 { a + c } else { a + m - c };
        ((b + d) % 2) * m + rot % m
    })
}

/// Ids: 1, -1, i, -i, j, -j, k, -k.
fn quaternion() -> FiniteGroup {
    // Unit products on {1, i, j, k} as (sign, unit).
    const UNIT: [[(bool, usize); 4]; 4] = [
        [(false, 0), (false, 1), (false, 2), (false, 3)],
        [(false, 1), (true, 0), (false, 3), (true, 2)],
        [(false, 2), (true, 3), (true, 0), (false, 1)],
        [(false, 3), (false, 2), (true, 1), (true, 0)],
    ];
    let names = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    table_group(8, names, &[2, 4], |x, y| {
        let (nx, ux) = (x % 2 == 1, x / 2);
        let (ny, uy) = (y % 2 == 1, y / 2);
        let (neg, u) = UNIT[ux][uy];
        2 * u + usize::from(nx ^ ny ^ neg)
    })
}

fn extraspecial(p: u32, r: usize) -> Result<FiniteGroup> {
    let zero = vec![0; r];
    let delta = |i: usize| -> Vec<u32> { (0..r).map(|j| u32::from(i == j)).collect() };
    let mut gens = Vec::new();
    for i in 0..r {
        gens.push(heisenberg_key(p, r, &delta(i), &zero, 0));
    }
    for i in 0..r {
        gens.push(heisenberg_key(p, r, &zero, &delta(i), 0));
    }
    FiniteGroup::from_generators(
        Backing::Matrix {
            dim: r + 2,
            p,
            heisenberg: true,
        },
        &gens,
    )
}

fn permutation_group(degree: usize, gens: &[Perm], linear: Option<(usize, u32)>) -> Result<FiniteGroup> {
    let keys: Vec<Vec<u32>> = gens.iter().map(|g| g.extend(degree).images().to_vec()).collect();
    FiniteGroup::from_generators(Backing::Permutation { degree, linear }, &keys)
}

/// Builds and enumerates the group named by `spec`.
pub fn build(spec: &GroupSpec) -> Result<FiniteGroup> {
    spec.validate()?;
    match spec {
        GroupSpec::Cyclic(n) => Ok(cyclic(*n)),
        GroupSpec::Dihedral(n) => Ok(dihedral(*n)),
        GroupSpec::Quaternion => Ok(quaternion()),
        GroupSpec::Extraspecial { p, r } => extraspecial(*p, *r),
        GroupSpec::Gl { n, p } => {
            let (degree, gens) = spec.permutation_generators()?.expect("gl is a permutation spec");
            permutation_group(degree, &gens, Some((*n, *p)))
        }
        GroupSpec::Sym(_) | GroupSpec::Alt(_) | GroupSpec::Perm(_) => {
            if let GroupSpec::Sym(n) | GroupSpec::Alt(n) = spec {
                // n! / 2 > ceiling already for n = 10; refuse before enumerating.
                let order: u128 = (1..=*n as u128).product::<u128>()
                    / if matches!(spec, GroupSpec::Alt(_)) && *n > 1 {
                        2
                    } else {
                        1
                    };
                if *n > 20 || order > crate::group::ORDER_CEILING as u128 {
                    return Err(Error::SizeCeiling {
                        ceiling: crate::group::ORDER_CEILING,
                    });
                }
            }
            let (degree, gens) = spec.permutation_generators()?.expect("permutation spec");
            permutation_group(degree, &gens, None)
        }
        GroupSpec::Product(a, b) => {
            let ga = build(a)?;
            let gb = build(b)?;
            let order = ga.order() as u128 * gb.order() as u128;
            if order > crate::group::ORDER_CEILING as u128 {
                return Err(Error::SizeCeiling {
                    ceiling: crate::group::ORDER_CEILING,
                });
            }
            let ida = ga.key(Elem::IDENTITY).to_vec();
            let idb = gb.key(Elem::IDENTITY).to_vec();
            let mut gens = Vec::new();
            for &g in ga.generators() {
                let mut k = ga.key(g).to_vec();
                k.extend(&idb);
                gens.push(k);
            }
            for &h in gb.generators() {
                let mut k = ida.clone();
                k.extend(gb.key(h));
                gens.push(k);
            }
            let backing = Backing::Product(Box::new(ga.backing().clone()), Box::new(gb.backing().clone()));
            FiniteGroup::from_generators(backing, &gens)
        }
        GroupSpec::Table(path) => load_table_file(path),
    }
}

/// A group as available to the analyses: enumerated when it fits under the
/// ceiling, otherwise a permutation group held by its stabilizer chain.
pub enum Ambient {
    Enumerated(FiniteGroup),
    Chain(PermGroup),
}

impl Ambient {
    pub fn order(&self) -> Option<u128> {
        match self {
            Ambient::Enumerated(g) => Some(g.order() as u128),
            Ambient::Chain(g) => g.order(),
        }
    }

    pub fn is_abelian(&self) -> bool {
        match self {
            Ambient::Enumerated(g) => g.is_abelian(),
            Ambient::Chain(g) => g.is_abelian(),
        }
    }
}

pub fn build_ambient(spec: &GroupSpec) -> Result<Ambient> {
    match build(spec) {
        Ok(g) => Ok(Ambient::Enumerated(g)),
        Err(Error::SizeCeiling { ceiling }) => match spec.permutation_generators()? {
            Some((degree, gens)) if degree <= MAX_CHAIN_DEGREE => Ok(Ambient::Chain(PermGroup::new(degree, gens)?)),
            _ => Err(Error::SizeCeiling { ceiling }),
        },
        Err(e) => Err(e),
    }
}
