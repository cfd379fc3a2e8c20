//! Concrete element representations behind a [`FiniteGroup`](super::FiniteGroup).
//!
//! Every element is encoded as a flat `u32` key; the backing knows how to
//! multiply, invert and print keys.

use std::sync::Arc;

use crate::perm::Perm;

/// An explicit multiplication table with 0 as identity.
#[derive(Clone, Debug)]
pub struct TableData {
    pub order: usize,
    /// Row-major: `mul[a * order + b] = a * b`.
    pub mul: Vec<u32>,
    pub inv: Vec<u32>,
    pub names: Option<Vec<String>>,
}

impl TableData {
    /// Derives the inverse column from a validated table.
    pub fn new(order: usize, mul: Vec<u32>, names: Option<Vec<String>>) -> Self {
        let mut inv = vec![0u32; order];
        for a in 0..order {
            for b in 0..order {
                if mul[a * order + b] == 0 {
                    inv[a] = b as u32;
                    break;
                }
            }
        }
        TableData { order, mul, inv, names }
    }
}

#[derive(Clone, Debug)]
pub enum Backing {
    /// Permutations on `degree` points. `linear` marks the natural action of
    /// GL(n, p) on `p^n` vectors, used only for printing elements as matrices.
    Permutation {
        degree: usize,
        linear: Option<(usize, u32)>,
    },
    /// `dim x dim` matrices over F_p, row-major. `heisenberg` prints the
    /// unitriangular (a | b | c) coordinates instead of the raw matrix.
    Matrix {
        dim: usize,
        p: u32,
        heisenberg: bool,
    },
    Table(Arc<TableData>),
    /// Direct product; keys are concatenated.
    Product(Box<Backing>, Box<Backing>),
}

impl Backing {
    pub fn key_len(&self) -> usize {
        match self {
            Backing::Permutation { degree, .. } => *degree,
            Backing::Matrix { dim, .. } => dim * dim,
            Backing::Table(_) => 1,
            Backing::Product(a, b) => a.key_len() + b.key_len(),
        }
    }

    pub fn identity_key(&self) -> Vec<u32> {
        match self {
            Backing::Permutation { degree, .. } => (0..*degree as u32).collect(),
            Backing::Matrix { dim, .. } => identity_matrix(*dim),
            Backing::Table(_) => vec![0],
            Backing::Product(a, b) => {
                let mut k = a.identity_key();
                k.extend(b.identity_key());
                k
            }
        }
    }

    pub fn mul(&self, x: &[u32], y: &[u32]) -> Vec<u32> {
        match self {
            Backing::Permutation { .. } => y.iter().map(|&i| x[i as usize]).collect(),
            Backing::Matrix { dim, p, .. } => mat_mul(*dim, *p, x, y),
            Backing::Table(t) => vec![t.mul[x[0] as usize * t.order + y[0] as usize]],
            Backing::Product(a, b) => {
                let split = a.key_len();
                let mut k = a.mul(&x[..split], &y[..split]);
                k.extend(b.mul(&x[split..], &y[split..]));
                k
            }
        }
    }

    pub fn inv(&self, x: &[u32]) -> Vec<u32> {
        match self {
            Backing::Permutation { .. } => {
                let mut out = vec![0; x.len()];
                for (i, &v) in x.iter().enumerate() {
                    out[v as usize] = i as u32;
                }
                out
            }
            Backing::Matrix { dim, p, .. } => mat_inv(*dim, *p, x).expect("group elements are invertible matrices"),
            Backing::Table(t) => vec![t.inv[x[0] as usize]],
            Backing::Product(a, b) => {
                let split = a.key_len();
                let mut k = a.inv(&x[..split]);
                k.extend(b.inv(&x[split..]));
                k
            }
        }
    }

    pub fn name(&self, x: &[u32]) -> String {
        match self {
            Backing::Permutation { linear: None, .. } => Perm::from_images_unchecked(x.to_vec()).to_string(),
            Backing::Permutation {
                linear: Some((n, p)), ..
            } => format_matrix(*n, &linear_perm_to_matrix(*n, *p, x)),
            Backing::Matrix {
                dim, heisenberg: true, ..
            } => {
                let r = dim - 2;
                let a: Vec<String> = (1..=r).map(|j| x[j].to_string()).collect();
                let b: Vec<String> = (1..=r).map(|i| x[i * dim + r + 1].to_string()).collect();
                format!("({} | {} | {})", a.join(" "), b.join(" "), x[r + 1])
            }
            Backing::Matrix { dim, .. } => format_matrix(*dim, x),
            Backing::Table(t) => match &t.names {
                Some(names) => names[x[0] as usize].clone(),
                None => format!("#{}", x[0]),
            },
            Backing::Product(a, b) => {
                let split = a.key_len();
                format!("({}, {})", a.name(&x[..split]), b.name(&x[split..]))
            }
        }
    }
}

pub(crate) fn identity_matrix(dim: usize) -> Vec<u32> {
    let mut m = vec![0; dim * dim];
    for i in 0..dim {
        m[i * dim + i] = 1;
    }
    m
}

pub(crate) fn mat_mul(dim: usize, p: u32, x: &[u32], y: &[u32]) -> Vec<u32> {
    let p = p as u64;
    let mut out = vec![0u32; dim * dim];
    for i in 0..dim {
        for k in 0..dim {
            let a = x[i * dim + k] as u64;
            if a == 0 {
                continue;
            }
            for j in 0..dim {
                let cell = &mut out[i * dim + j];
                *cell = ((*cell as u64 + a * y[k * dim + j] as u64) % p) as u32;
            }
        }
    }
    out
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// Gauss–Jordan inverse over F_p; `None` if singular.
pub(crate) fn mat_inv(dim: usize, p: u32, x: &[u32]) -> Option<Vec<u32>> {
    let p64 = p as u64;
    let mut a: Vec<u64> = x.iter().map(|&v| v as u64).collect();
    let mut inv: Vec<u64> = identity_matrix(dim).into_iter().map(u64::from).collect();
    for col in 0..dim {
        let pivot = (col..dim).find(|&r| a[r * dim + col] != 0)?;
        if pivot != col {
            for j in 0..dim {
                a.swap(pivot * dim + j, col * dim + j);
                inv.swap(pivot * dim + j, col * dim + j);
            }
        }
        let scale = pow_mod(a[col * dim + col], p64 - 2, p64);
        for j in 0..dim {
            a[col * dim + j] = a[col * dim + j] * scale % p64;
            inv[col * dim + j] = inv[col * dim + j] * scale % p64;
        }
        for r in 0..dim {
            if r == col || a[r * dim + col] == 0 {
                continue;
            }
            let f = a[r * dim + col];
            for j in 0..dim {
                a[r * dim + j] = (a[r * dim + j] + p64 * p64 - f * a[col * dim + j]) % p64;
                inv[r * dim + j] = (inv[r * dim + j] + p64 * p64 - f * inv[col * dim + j]) % p64;
            }
        }
    }
    Some(inv.into_iter().map(|v| v as u32).collect())
}

/// Index of a vector in F_p^n: coordinates are base-p digits, coordinate 0 least significant.
pub(crate) fn vector_index(p: u32, v: &[u32]) -> u32 {
    v.iter().rev().fold(0, |acc, &d| acc * p + d)
}

pub(crate) fn index_vector(n: usize, p: u32, mut idx: u32) -> Vec<u32> {
    let mut v = Vec::with_capacity(n);
    for _ in 0..n {
        v.push(idx % p);
        idx /= p;
    }
    v
}

/// Recovers the matrix of a linear permutation: column j is the image of e_j.
pub(crate) fn linear_perm_to_matrix(n: usize, p: u32, images: &[u32]) -> Vec<u32> {
    let mut m = vec![0; n * n];
    for j in 0..n {
        let e_j = p.pow(j as u32);
        let col = index_vector(n, p, images[e_j as usize]);
        for i in 0..n {
            m[i * n + j] = col[i];
        }
    }
    m
}

pub(crate) fn format_matrix(dim: usize, m: &[u32]) -> String {
    let rows: Vec<String> = m
        .chunks(dim)
        .map(|row| row.iter().map(|v| v.to_string()).collect::<Vec<_>>().join(" "))
        .collect();
    format!("[{}]", rows.join("; "))
}
