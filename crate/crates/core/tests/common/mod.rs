//! Brute-force oracles that share no code with the engine.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};

pub fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn qn(n: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `|A + tB|` by iterated sumsets.
pub fn sumset_size(a: &[i64], b: &[i64], t: u32) -> usize {
    let mut s: BTreeSet<i64> = a.iter().copied().collect();
    for _ in 0..t {
        s = s.iter().flat_map(|x| b.iter().map(move |y| x + y)).collect();
    }
    s.len()
}

/// Exponent vectors of total degree `t` in `n` variables.
pub fn monomials(n: usize, t: u32) -> Vec<Vec<u32>> {
    if n == 0 {
        return if t == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=t {
        for mut rest in monomials(n - 1, t - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Points of `ℕ^{sizes.iter().sum()}` whose part sums equal `s`.
pub fn graded_points(sizes: &[usize], s: &[u32]) -> Vec<Vec<u32>> {
    let mut acc: Vec<Vec<u32>> = vec![vec![]];
    for (&d, &si) in sizes.iter().zip(s) {
        let block = monomials(d, si);
        acc = acc
            .iter()
            .flat_map(|p| {
                block.iter().map(move |b| {
                    let mut v = p.clone();
                    v.extend(b);
                    v
                })
            })
            .collect();
    }
    acc
}

/// Points whose part sums are `⪯ s`.
pub fn cumulative_points(sizes: &[usize], s: &[u32]) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut level = vec![0u32; s.len()];
    loop {
        out.extend(graded_points(sizes, &level));
        let mut i = 0;
        loop {
            if i == s.len() {
                return out;
            }
            if level[i] < s[i] {
                level[i] += 1;
                break;
            }
            level[i] = 0;
            i += 1;
        }
    }
}

pub fn dominated(u: &[u32], v: &[u32]) -> bool {
    u.iter().zip(v).all(|(a, b)| a <= b)
}

/// `ū` is in the ideal iff no antichain element is below it.
pub fn in_ideal(complement: &[Vec<u32>], u: &[u32]) -> bool {
    !complement.iter().any(|g| dominated(g, u))
}

/// Monomials of degree `t` surviving in `K[x_1..x_n] / (x^g : g ∈ relations)`.
pub fn quotient_dimension(n: usize, relations: &[Vec<u32>], t: u32) -> usize {
    monomials(n, t)
        .into_iter()
        .filter(|u| in_ideal(relations, u))
        .count()
}

/// Rank of a rational matrix by plain Gaussian elimination.
pub fn matrix_rank(rows: &[Vec<BigRational>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows.to_vec();
    let cols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][c].clone();
        for r in 0..m.len() {
            if r != rank && !m[r][c].is_zero() {
                let f = m[r][c].clone() / &pivot;
                for j in c..cols {
                    let delta = &m[rank][j] * &f;
                    m[r][j] -= delta;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Rank of a set of edges via its signed incidence matrix.
pub fn incidence_rank(edges: &[(i64, i64)]) -> usize {
    let vertices: BTreeSet<i64> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
    let index: HashMap<i64, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let rows: Vec<Vec<BigRational>> = edges
        .iter()
        .map(|&(a, b)| {
            let mut row = vec![BigRational::zero(); vertices.len()];
            if a != b {
                row[index[&a]] += BigRational::one();
                row[index[&b]] -= BigRational::one();
            }
            row
        })
        .collect();
    matrix_rank(&rows)
}

/// Graph rank by counting vertices and components with a BFS.
pub fn component_rank(edges: &[(i64, i64)]) -> usize {
    let mut adj: BTreeMap<i64, Vec<i64>> = BTreeMap::new();
    for &(a, b) in edges {
        adj.entry(a).or_default().push(b);
        adj.entry(b).or_default().push(a);
    }
    let mut seen = BTreeSet::new();
    let mut components = 0;
    for &v in adj.keys() {
        if !seen.insert(v) {
            continue;
        }
        components += 1;
        let mut stack = vec![v];
        while let Some(x) = stack.pop() {
            for &y in &adj[&x] {
                if seen.insert(y) {
                    stack.push(y);
                }
            }
        }
    }
    adj.len() - components
}

/// Betti numbers `b_0, b_1, …` of the complex generated by `simplices`,
/// from the full boundary matrices.
pub fn betti_numbers(simplices: &[Vec<i64>]) -> Vec<usize> {
    let mut cells: BTreeSet<Vec<i64>> = BTreeSet::new();
    for s in simplices {
        let mut s = s.clone();
        s.sort_unstable();
        s.dedup();
        let n = s.len();
        for mask in 1u32..(1 << n) {
            cells.insert((0..n).filter(|i| mask & (1 << i) != 0).map(|i| s[i]).collect());
        }
    }
    let top = cells.iter().map(Vec::len).max().unwrap_or(0);
    let by_dim: Vec<Vec<Vec<i64>>> = (0..top)
        .map(|d| cells.iter().filter(|c| c.len() == d + 1).cloned().collect())
        .collect();
    // rank of ∂_d : C_d → C_{d−1}
    let boundary_rank = |d: usize| -> usize {
        if d == 0 || d >= by_dim.len() {
            return 0;
        }
        let faces: HashMap<&Vec<i64>, usize> =
            by_dim[d - 1].iter().enumerate().map(|(i, c)| (c, i)).collect();
        let rows: Vec<Vec<BigRational>> = by_dim[d]
            .iter()
            .map(|c| {
                let mut row = vec![BigRational::zero(); by_dim[d - 1].len()];
                for i in 0..c.len() {
                    let mut f = c.clone();
                    f.remove(i);
                    row[faces[&f]] += if i % 2 == 0 { q(1) } else { q(-1) };
                }
                row
            })
            .collect();
        matrix_rank(&rows)
    };
    (0..by_dim.len())
        .map(|d| by_dim[d].len() - boundary_rank(d) - boundary_rank(d + 1))
        .collect()
}
