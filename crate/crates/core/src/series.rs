//! Generating functions: the Bott series of W̃^S, fork statistics and
//! Gaussian binomial coefficients.

use std::fmt;

use crate::bruhat::IntPolynomial;
use crate::rootsys::{Node, RootSystem};

/// Truncated power series with nonnegative coefficients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeriesPrefix {
    pub coeffs: Vec<u64>,
}

impl SeriesPrefix {
    pub fn coeff(&self, k: usize) -> u64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }
}

/// Π_i (1 − t^{e_i})^{-1} through degree `cutoff`.
pub fn bott_prefix(rs: &RootSystem, cutoff: usize) -> SeriesPrefix {
    let mut c = vec![0u64; cutoff + 1];
    c[0] = 1;
    for &e in rs.exponents() {
        let e = e as usize;
        for k in e..=cutoff {
            c[k] += c[k - e];
        }
    }
    SeriesPrefix { coeffs: c }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KG {
    Finite(u32),
    Infinite,
}

impl fmt::Display for KG {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KG::Finite(k) => write!(f, "{k}"),
            KG::Infinite => f.write_str("inf"),
        }
    }
}

/// k_G and a_{k_G}; the latter is `None` when k_G is infinite.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ForkStats {
    pub k_g: KG,
    pub a_kg: Option<u64>,
}

const FORK_SEARCH: usize = 64;

/// First degree whose Bott coefficient exceeds 1.
pub fn fork_stats_from_series(rs: &RootSystem) -> ForkStats {
    let p = bott_prefix(rs, FORK_SEARCH);
    match p.coeffs.iter().position(|&c| c > 1) {
        Some(k) => ForkStats { k_g: KG::Finite(k as u32), a_kg: Some(p.coeffs[k]) },
        None => ForkStats { k_g: KG::Infinite, a_kg: None },
    }
}

/// Walks the affine diagram from s₀ without branching, stopping at the first
/// node offering two or more continuations.
pub fn fork_stats_from_path(rs: &RootSystem) -> ForkStats {
    let g = rs.affine_graph();
    let mut path: Vec<Node> = vec![Node::S0];
    let mut run = 1u32;
    while path.len() < FORK_SEARCH {
        let u = *path.last().unwrap();
        let prev = path.len().checked_sub(2).map(|i| path[i]);
        let mut options: Vec<(Node, bool)> = g
            .neighbors(u)
            .into_iter()
            .filter(|&v| Some(v) != prev)
            .map(|v| (v, false))
            .collect();
        if let Some(p) = prev {
            let allowed = match g.coxeter_m(u, p) {
                None => true,
                Some(m) => run + 1 < m,
            };
            if allowed {
                options.push((p, true));
            }
        }
        match options.len() {
            0 => break,
            1 => {
                let (v, reversal) = options[0];
                run = if reversal { run + 1 } else { 2 };
                path.push(v);
            }
            k => {
                return ForkStats {
                    k_g: KG::Finite(path.len() as u32 + 1),
                    a_kg: Some(k as u64),
                }
            }
        }
    }
    ForkStats { k_g: KG::Infinite, a_kg: None }
}

/// Fork statistics of the affine Grassmannian.
pub fn fork_stats(rs: &RootSystem) -> ForkStats {
    let s = fork_stats_from_series(rs);
    debug_assert_eq!(s, fork_stats_from_path(rs));
    s
}

/// Gaussian binomial [m over n]_t.
///
/// # Panics
/// If `n > m`.
pub fn q_binomial(m: usize, n: usize) -> IntPolynomial {
    assert!(n <= m, "q_binomial requires n <= m");
    let k = m - n;
    // g[a][b] = [a+b over a]; g[a][b] = g[a][b-1] + t^b g[a-1][b]
    let mut g: Vec<Vec<IntPolynomial>> = vec![vec![IntPolynomial::one(); k + 1]; n + 1];
    for a in 1..=n {
        for b in 1..=k {
            g[a][b] = g[a][b - 1].add(&g[a - 1][b].shift(b));
        }
    }
    g[n][k].clone()
}
