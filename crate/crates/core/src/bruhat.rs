//! Bruhat covers, order ideals and Poincaré polynomials on W̃/W.
//!
//! Covers are found by sweeping all reflections r_{k,β} in a bounded window
//! of k and keeping those that lower ℓ^S by exactly one. For fixed β the
//! map c ↦ ℓ^S(λ + cβ∨) is convex, so each sweep stops as soon as the
//! length starts increasing above the target.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::num::NonZeroUsize;
use std::sync::{Arc, Mutex, OnceLock};

use lru::LruCache;

use crate::error::{Error, Result};
use crate::rootsys::{RootSystem, TypeLabel};
use crate::series;
use crate::weyl::{f_len, CorootElement};

/// Dense polynomial in t with integer coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<i64>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<i64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPolynomial { coeffs: vec![1] }
    }

    /// 1 + t + … + t^{n−1}.
    pub fn t_integer(n: usize) -> Self {
        IntPolynomial::new(vec![1; n])
    }

    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> i64 {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        IntPolynomial::new((0..n).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut c = vec![0i64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in other.coeffs.iter().enumerate() {
                c[i + j] += a * b;
            }
        }
        IntPolynomial::new(c)
    }

    /// Multiplication by t^k.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut c = vec![0; k];
        c.extend_from_slice(&self.coeffs);
        IntPolynomial { coeffs: c }
    }

    /// Exact quotient, or `None` if `other` does not divide `self` over ℤ.
    pub fn div_exact(&self, other: &Self) -> Option<Self> {
        let d = other.degree()?;
        let lead = other.coeffs[d];
        let mut rem = self.coeffs.clone();
        if rem.len() < other.coeffs.len() {
            return self.is_zero().then(Self::zero);
        }
        let mut q = vec![0i64; rem.len() - d];
        for i in (0..q.len()).rev() {
            let top = rem[i + d];
            if top % lead != 0 {
                return None;
            }
            let f = top / lead;
            q[i] = f;
            for (j, &c) in other.coeffs.iter().enumerate() {
                rem[i + j] -= f * c;
            }
        }
        rem.iter().all(|&c| c == 0).then(|| IntPolynomial::new(q))
    }

    /// t^n f(1/t) with n = deg f.
    pub fn dual(&self) -> Self {
        let mut c = self.coeffs.clone();
        c.reverse();
        IntPolynomial::new(c)
    }

    pub fn is_palindromic(&self) -> bool {
        let c = &self.coeffs;
        (0..c.len() / 2).all(|k| c[k] == c[c.len() - 1 - k])
    }

    pub fn eval_at_one(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    /// Coefficients run together, e.g. "1112222111".
    pub fn digit_string(&self) -> String {
        if self.coeffs.iter().all(|c| (0..=9).contains(c)) {
            self.coeffs.iter().map(|c| c.to_string()).collect()
        } else {
            let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
            parts.join(",")
        }
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let sign = if c < 0 { "-" } else { "+" };
            if first {
                if c < 0 {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.unsigned_abs();
            match (k, a) {
                (0, _) => write!(f, "{a}")?,
                (1, 1) => f.write_str("t")?,
                (1, _) => write!(f, "{a}t")?,
                (_, 1) => write!(f, "t^{k}")?,
                _ => write!(f, "{a}t^{k}")?,
            }
        }
        Ok(())
    }
}

/// f ↦ t^{deg f} f(1/t).
pub fn dual_polynomial(p: &IntPolynomial) -> IntPolynomial {
    p.dual()
}

/// The Bruhat interval [0, top] with its cover relations.
#[derive(Debug)]
pub struct OrderIdeal {
    top: CorootElement,
    members: Vec<CorootElement>,
    lengths: Vec<u64>,
    index: HashMap<CorootElement, usize>,
    covers: Vec<Vec<usize>>,
}

impl OrderIdeal {
    pub fn top(&self) -> &CorootElement {
        &self.top
    }

    /// Members sorted by (ℓ^S, coordinates).
    pub fn members(&self) -> &[CorootElement] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, mu: &CorootElement) -> bool {
        self.index.contains_key(mu)
    }

    pub fn position(&self, mu: &CorootElement) -> Option<usize> {
        self.index.get(mu).copied()
    }

    pub fn length_of(&self, i: usize) -> u64 {
        self.lengths[i]
    }

    /// Indices of the members covered by member `i`.
    pub fn covered_by(&self, i: usize) -> &[usize] {
        &self.covers[i]
    }

    /// All cover edges (upper, lower) as member indices.
    pub fn cover_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.covers
            .iter()
            .enumerate()
            .flat_map(|(i, cs)| cs.iter().map(move |&j| (i, j)))
    }

    pub fn poincare(&self) -> IntPolynomial {
        let deg = self.lengths.iter().copied().max().unwrap_or(0) as usize;
        let mut c = vec![0i64; deg + 1];
        for &l in &self.lengths {
            c[l as usize] += 1;
        }
        IntPolynomial::new(c)
    }
}

type Key = (TypeLabel, usize, Box<[i64]>);

fn key(lam: &CorootElement) -> Key {
    (lam.rs().type_label(), lam.rs().rank(), lam.coords().into())
}

#[derive(Debug, Clone)]
pub struct EngineConfig {
    /// Maximum number of members of an order ideal or level enumeration.
    pub member_cap: usize,
    /// Maximum ℓ^S accepted by the subword oracle.
    pub oracle_cap: u64,
    /// Capacity of the order-ideal LRU cache.
    pub ideal_cache: usize,
    /// Capacity of the covers LRU cache.
    pub covers_cache: usize,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            member_cap: 2_000_000,
            oracle_cap: 10_000,
            ideal_cache: 4096,
            covers_cache: 1 << 20,
        }
    }
}

/// Bruhat-order queries with memoized covers and ideals. Safe to share
/// between threads; caching never changes results.
pub struct BruhatEngine {
    config: EngineConfig,
    covers: Mutex<LruCache<Key, Arc<Vec<CorootElement>>>>,
    ideals: Mutex<LruCache<Key, Arc<OrderIdeal>>>,
}

fn cap(n: usize) -> NonZeroUsize {
    NonZeroUsize::new(n.max(1)).unwrap()
}

impl BruhatEngine {
    pub fn new(config: EngineConfig) -> Self {
        BruhatEngine {
            covers: Mutex::new(LruCache::new(cap(config.covers_cache))),
            ideals: Mutex::new(LruCache::new(cap(config.ideal_cache))),
            config,
        }
    }

    pub fn config(&self) -> &EngineConfig {
        &self.config
    }

    pub fn covers(&self, lam: &CorootElement) -> Arc<Vec<CorootElement>> {
        let k = key(lam);
        if let Some(c) = self.covers.lock().expect("covers cache poisoned").get(&k) {
            return Arc::clone(c);
        }
        let c = Arc::new(covers_in_window(lam, 1, false));
        self.covers.lock().expect("covers cache poisoned").put(k, Arc::clone(&c));
        c
    }

    pub fn order_ideal(&self, lam: &CorootElement) -> Result<Arc<OrderIdeal>> {
        let k = key(lam);
        if let Some(i) = self.ideals.lock().expect("ideal cache poisoned").get(&k) {
            return Ok(Arc::clone(i));
        }
        let ideal = Arc::new(self.build_ideal(lam)?);
        self.ideals.lock().expect("ideal cache poisoned").put(k, Arc::clone(&ideal));
        Ok(ideal)
    }

    fn build_ideal(&self, lam: &CorootElement) -> Result<OrderIdeal> {
        let mut seen: HashMap<CorootElement, usize> = HashMap::new();
        let mut found: Vec<CorootElement> = vec![lam.clone()];
        let mut raw_covers: Vec<Vec<usize>> = Vec::new();
        seen.insert(lam.clone(), 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            let cs = self.covers(&found[i]);
            let mut idx = Vec::with_capacity(cs.len());
            for mu in cs.iter() {
                let j = match seen.get(mu) {
                    Some(&j) => j,
                    None => {
                        let j = found.len();
                        if j >= self.config.member_cap {
                            return Err(Error::ResourceLimit(format!(
                                "order ideal of {lam} exceeds {} members",
                                self.config.member_cap
                            )));
                        }
                        seen.insert(mu.clone(), j);
                        found.push(mu.clone());
                        queue.push_back(j);
                        j
                    }
                };
                idx.push(j);
            }
            if raw_covers.len() <= i {
                raw_covers.resize(i + 1, Vec::new());
            }
            raw_covers[i] = idx;
        }
        raw_covers.resize(found.len(), Vec::new());

        let lengths_raw: Vec<u64> = found.iter().map(CorootElement::length_s).collect();
        let mut order: Vec<usize> = (0..found.len()).collect();
        order.sort_by(|&a, &b| {
            lengths_raw[a]
                .cmp(&lengths_raw[b])
                .then_with(|| found[a].coords().cmp(found[b].coords()))
        });
        let mut new_pos = vec![0usize; found.len()];
        for (p, &o) in order.iter().enumerate() {
            new_pos[o] = p;
        }
        let members: Vec<CorootElement> = order.iter().map(|&o| found[o].clone()).collect();
        let lengths: Vec<u64> = order.iter().map(|&o| lengths_raw[o]).collect();
        let covers: Vec<Vec<usize>> = order
            .iter()
            .map(|&o| {
                let mut v: Vec<usize> = raw_covers[o].iter().map(|&j| new_pos[j]).collect();
                v.sort_unstable();
                v
            })
            .collect();
        let index = members.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        Ok(OrderIdeal { top: lam.clone(), members, lengths, index, covers })
    }

    pub fn poincare_polynomial(&self, lam: &CorootElement) -> Result<IntPolynomial> {
        Ok(self.order_ideal(lam)?.poincare())
    }

    pub fn is_palindromic(&self, lam: &CorootElement) -> Result<bool> {
        let p = self.poincare_polynomial(lam)?;
        Ok(p == p.dual())
    }

    pub fn bruhat_leq(&self, mu: &CorootElement, lam: &CorootElement) -> Result<bool> {
        if mu == lam || mu.is_zero() {
            return Ok(true);
        }
        if mu.length_s() >= lam.length_s() {
            return Ok(false);
        }
        Ok(self.order_ideal(lam)?.contains(mu))
    }

    /// Comparison by the lifting property on the canonical reduced word of λ.
    pub fn subword_leq(&self, mu: &CorootElement, lam: &CorootElement) -> Result<bool> {
        let len = lam.length_s();
        if len > self.config.oracle_cap {
            return Err(Error::OracleCapExceeded(len as usize));
        }
        Ok(lifting_leq(mu, lam))
    }

    pub fn enumerate_levels(
        &self,
        rs: &Arc<RootSystem>,
        max_len: u64,
    ) -> Result<BTreeMap<u64, Vec<CorootElement>>> {
        let mut out = BTreeMap::new();
        let mut level: BTreeSet<CorootElement> = BTreeSet::from([CorootElement::zero(rs)]);
        let mut total = 1usize;
        for l in 0..=max_len {
            let next: BTreeSet<CorootElement> = if l < max_len {
                level
                    .iter()
                    .flat_map(|mu| mu.ascents().into_iter().map(move |s| mu.fire(s)))
                    .collect()
            } else {
                BTreeSet::new()
            };
            out.insert(l, level.into_iter().collect());
            total += next.len();
            if total > self.config.member_cap {
                return Err(Error::ResourceLimit(format!(
                    "enumeration of {} to length {max_len} exceeds {} elements",
                    rs.name(),
                    self.config.member_cap
                )));
            }
            level = next;
        }
        Ok(out)
    }

    pub fn forks_too_soon(&self, lam: &CorootElement) -> Result<bool> {
        let p = self.poincare_polynomial(lam)?;
        let m = p.degree().unwrap_or(0);
        let Some(k) = (0..=m).rev().find(|&k| p.coeff(k) > 1) else {
            return Ok(false);
        };
        Ok(match series::fork_stats(lam.rs()).k_g {
            series::KG::Finite(kg) => m - k < kg as usize,
            series::KG::Infinite => false,
        })
    }
}

fn lifting_leq(mu: &CorootElement, lam: &CorootElement) -> bool {
    let word = lam.word_for();
    let mut mu = mu.clone();
    let mut mu_len = mu.length_s();
    for (i, &s) in word.letters.iter().enumerate() {
        if mu_len as usize > word.len() - i {
            return false;
        }
        if mu.node_value(s) < 0 {
            mu = mu.fire(s);
            mu_len -= 1;
        }
    }
    mu.is_zero()
}

/// Covers of λ found in the window |2k − β(λ)| ≤ factor·(ℓ^S(λ) + |Φ⁺|).
/// With `exhaustive` every k in the window is tried; otherwise each sweep
/// stops once ℓ^S is increasing and above the target.
pub fn covers_in_window(lam: &CorootElement, factor: i64, exhaustive: bool) -> Vec<CorootElement> {
    let rs = lam.rs();
    let vals = lam.root_values();
    let len: u64 = vals.iter().map(|&v| f_len(v)).sum();
    if len == 0 {
        return Vec::new();
    }
    let target = len - 1;
    let window = factor * (len as i64 + rs.num_positive() as i64);
    let mut out: Vec<CorootElement> = Vec::new();
    let mut shifted = vec![0i64; vals.len()];
    for b in 0..rs.num_positive() {
        let col = rs.pair_column(b);
        let bv = vals[b];
        let k_lo = (bv - window).div_euclid(2) + i64::from((bv - window).rem_euclid(2) != 0);
        let k_hi = (bv + window).div_euclid(2);
        let mut g = |c: i64| -> u64 {
            for (a, s) in shifted.iter_mut().enumerate() {
                *s = vals[a] + c * col[a];
            }
            shifted.iter().map(|&v| f_len(v)).sum()
        };
        for dir in [1i64, -1] {
            let mut prev = len;
            let mut c = dir;
            loop {
                let k = bv + c;
                if k < k_lo || k > k_hi {
                    break;
                }
                let val = g(c);
                if val == target {
                    out.push(lam.translate_by_coroot(b, c));
                }
                if !exhaustive && val >= prev && val > target {
                    break;
                }
                prev = val;
                c += dir;
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

fn global() -> &'static BruhatEngine {
    static ENGINE: OnceLock<BruhatEngine> = OnceLock::new();
    ENGINE.get_or_init(|| BruhatEngine::new(EngineConfig::default()))
}

/// The process-wide engine used by the free functions of this module.
pub fn engine() -> &'static BruhatEngine {
    global()
}

pub fn covers(lam: &CorootElement) -> Vec<CorootElement> {
    global().covers(lam).as_ref().clone()
}

pub fn order_ideal(lam: &CorootElement) -> Result<Arc<OrderIdeal>> {
    global().order_ideal(lam)
}

pub fn poincare_polynomial(lam: &CorootElement) -> Result<IntPolynomial> {
    global().poincare_polynomial(lam)
}

pub fn is_palindromic(lam: &CorootElement) -> Result<bool> {
    global().is_palindromic(lam)
}

pub fn bruhat_leq(mu: &CorootElement, lam: &CorootElement) -> Result<bool> {
    global().bruhat_leq(mu, lam)
}

pub fn subword_leq(mu: &CorootElement, lam: &CorootElement) -> Result<bool> {
    global().subword_leq(mu, lam)
}

pub fn enumerate_levels(rs: &Arc<RootSystem>, max_len: u64) -> Result<BTreeMap<u64, Vec<CorootElement>>> {
    global().enumerate_levels(rs, max_len)
}

pub fn forks_too_soon(lam: &CorootElement) -> Result<bool> {
    global().forks_too_soon(lam)
}
