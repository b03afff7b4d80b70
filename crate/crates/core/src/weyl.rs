//! Elements of the coroot lattice as labelled affine diagrams.
//!
//! λ is stored by its values a_i = α_i(λ) on the simple roots. The value on
//! the affine node s₀ is 1 − α₀(λ) and is always derived. Simple and affine
//! reflections act by node firing; general reflections r_{k,β} act by
//! a_j ↦ a_j + α_j(β∨)(k − β(λ)).

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::rootsys::{Node, Root, RootSystem, TypeLabel};

fn checked(v: Option<i64>) -> i64 {
    v.expect("coordinate overflow")
}

/// Contribution of one positive root to ℓ^S.
#[inline]
pub(crate) fn f_len(m: i64) -> u64 {
    if m <= 0 {
        m.unsigned_abs()
    } else {
        (m - 1) as u64
    }
}

#[derive(Clone)]
pub struct CorootElement {
    rs: Arc<RootSystem>,
    coords: Box<[i64]>,
}

impl fmt::Debug for CorootElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.rs.name(), self)
    }
}

impl fmt::Display for CorootElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl PartialEq for CorootElement {
    fn eq(&self, other: &Self) -> bool {
        self.coords == other.coords
            && self.rs.type_label() == other.rs.type_label()
            && self.rs.rank() == other.rs.rank()
    }
}

impl Eq for CorootElement {}

impl Hash for CorootElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.rs.type_label().hash(state);
        self.coords.hash(state);
    }
}

impl PartialOrd for CorootElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CorootElement {
    /// Lexicographic on coordinates; elements of different systems are
    /// ordered by type first.
    fn cmp(&self, other: &Self) -> Ordering {
        (self.rs.type_label(), self.rs.rank())
            .cmp(&(other.rs.type_label(), other.rs.rank()))
            .then_with(|| self.coords.cmp(&other.coords))
    }
}

/// Parses "3,0,-1" (parentheses and whitespace tolerated).
pub fn parse_coords(text: &str) -> Result<Vec<i64>> {
    let t = text.trim().trim_start_matches('(').trim_end_matches(')');
    if t.trim().is_empty() {
        return Err(Error::Parse("empty coordinate list".into()));
    }
    t.split(',')
        .map(|p| {
            let p = p.trim().replace('\u{2212}', "-");
            p.parse::<i64>()
                .map_err(|_| Error::Parse(format!("bad coordinate {p:?}")))
        })
        .collect()
}

impl CorootElement {
    pub fn new(rs: &Arc<RootSystem>, coords: Vec<i64>) -> Result<Self> {
        if !rs.in_coroot_lattice(&coords)? {
            return Err(Error::NotInCorootLattice(coords));
        }
        Ok(Self::from_raw(rs, coords))
    }

    pub fn parse(rs: &Arc<RootSystem>, text: &str) -> Result<Self> {
        Self::new(rs, parse_coords(text)?)
    }

    pub(crate) fn from_raw(rs: &Arc<RootSystem>, coords: Vec<i64>) -> Self {
        CorootElement { rs: Arc::clone(rs), coords: coords.into_boxed_slice() }
    }

    pub fn zero(rs: &Arc<RootSystem>) -> Self {
        Self::from_raw(rs, vec![0; rs.rank()])
    }

    pub fn rs(&self) -> &Arc<RootSystem> {
        &self.rs
    }

    pub fn coords(&self) -> &[i64] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn is_dominant(&self) -> bool {
        self.coords.iter().all(|&c| c >= 0)
    }

    pub fn is_antidominant(&self) -> bool {
        self.coords.iter().all(|&c| c <= 0)
    }

    pub(crate) fn eval_coeffs(&self, coeffs: &[i64]) -> i64 {
        coeffs
            .iter()
            .zip(self.coords.iter())
            .fold(0i64, |acc, (m, a)| checked(acc.checked_add(checked(m.checked_mul(*a)))))
    }

    pub(crate) fn eval_index(&self, b: usize) -> i64 {
        self.eval_coeffs(self.rs.positive_roots()[b].coeffs())
    }

    /// α(λ) for a root of this element's system.
    pub fn eval_root(&self, alpha: &Root) -> Result<i64> {
        if alpha.coeffs().len() != self.rs.rank() || self.rs.root(alpha.coeffs()).ok().as_ref() != Some(alpha) {
            return Err(Error::SystemMismatch);
        }
        Ok(self.eval_coeffs(alpha.coeffs()))
    }

    pub fn alpha0(&self) -> i64 {
        self.eval_coeffs(self.rs.marks())
    }

    /// 1 − α₀(λ).
    pub fn s0_label(&self) -> i64 {
        checked(1i64.checked_sub(self.alpha0()))
    }

    /// Value of the labelled diagram at a node.
    pub fn node_value(&self, s: Node) -> i64 {
        if s.is_affine() {
            self.s0_label()
        } else {
            self.coords[s.0 - 1]
        }
    }

    /// Values at s₀, s₁, …, s_n.
    pub fn labels(&self) -> Vec<i64> {
        let mut v = Vec::with_capacity(self.coords.len() + 1);
        v.push(self.s0_label());
        v.extend_from_slice(&self.coords);
        v
    }

    /// α(λ) for every positive root, in table order.
    pub fn root_values(&self) -> Vec<i64> {
        self.rs
            .positive_roots()
            .iter()
            .map(|r| self.eval_coeffs(r.coeffs()))
            .collect()
    }

    pub fn length(&self) -> u64 {
        self.root_values().iter().map(|v| v.unsigned_abs()).sum()
    }

    pub fn q_count(&self) -> u64 {
        self.root_values().iter().filter(|&&v| v > 0).count() as u64
    }

    pub fn length_s(&self) -> u64 {
        self.root_values().into_iter().map(f_len).sum()
    }

    /// Negative nodes, s₀ first.
    pub fn descents(&self) -> Vec<Node> {
        self.rs
            .affine_graph()
            .nodes()
            .filter(|&s| self.node_value(s) < 0)
            .collect()
    }

    /// Positive nodes, s₀ first.
    pub fn ascents(&self) -> Vec<Node> {
        self.rs
            .affine_graph()
            .nodes()
            .filter(|&s| self.node_value(s) > 0)
            .collect()
    }

    /// Applies the reflection at node `s`.
    pub fn fire(&self, s: Node) -> CorootElement {
        let n = self.rs.rank();
        assert!(s.0 <= n, "node {s} out of range");
        let mut c = self.coords.to_vec();
        if s.is_affine() {
            let lab = self.s0_label();
            if lab != 0 {
                let hc = self.rs.coroot_coords(self.rs.highest_index());
                for j in 0..n {
                    c[j] = checked(c[j].checked_add(checked(hc[j].checked_mul(lab))));
                }
            }
        } else {
            let i = s.0 - 1;
            let v = self.coords[i];
            if v != 0 {
                let row = &self.rs.cartan()[i];
                for j in 0..n {
                    c[j] = checked(c[j].checked_sub(checked(row[j].checked_mul(v))));
                }
            }
        }
        Self::from_raw(&self.rs, c)
    }

    /// r_{k,β}λ with β given by positive-root index.
    pub(crate) fn reflect_index(&self, b: usize, k: i64) -> CorootElement {
        let shift = checked(k.checked_sub(self.eval_index(b)));
        self.translate_by_coroot(b, shift)
    }

    /// λ + c·β∨ for positive-root index `b`.
    pub(crate) fn translate_by_coroot(&self, b: usize, c: i64) -> CorootElement {
        let cc = self.rs.coroot_coords(b);
        let coords: Vec<i64> = self
            .coords
            .iter()
            .zip(cc)
            .map(|(a, p)| checked(a.checked_add(checked(p.checked_mul(c)))))
            .collect();
        Self::from_raw(&self.rs, coords)
    }

    /// r_{k,β}λ = s_βλ + kβ∨. `k = 0` is the linear reflection s_β.
    ///
    /// # Panics
    /// If `beta` is not a positive root of this element's system.
    pub fn reflect(&self, beta: &Root, k: i64) -> CorootElement {
        let b = self
            .rs
            .positive_index(beta)
            .expect("reflect requires a positive root of the same system");
        self.reflect_index(b, k)
    }

    /// Canonical reduced word: repeatedly fire the smallest-index negative node.
    pub fn word_for(&self) -> ReducedWord {
        let mut letters = Vec::new();
        let mut mu = self.clone();
        while !mu.is_zero() {
            let s = mu.descents()[0];
            letters.push(s);
            mu = mu.fire(s);
        }
        ReducedWord { letters }
    }

    /// Inverse of [`CorootElement::word_for`]: fire up from 0 along the word
    /// read right to left.
    pub fn lambda_of(rs: &Arc<RootSystem>, word: &ReducedWord) -> Result<CorootElement> {
        let mut mu = CorootElement::zero(rs);
        for (pos, &s) in word.letters.iter().enumerate().rev() {
            if s.0 > rs.rank() {
                return Err(Error::Parse(format!("node {s} out of range")));
            }
            if mu.node_value(s) <= 0 {
                return Err(Error::NotReduced(pos));
            }
            mu = mu.fire(s);
        }
        Ok(mu)
    }

    /// Sort key used for every serialized listing.
    pub fn sort_key(&self) -> (u64, Vec<i64>) {
        (self.length_s(), self.coords.to_vec())
    }

    pub fn linear_descent(&self, beta: &Root) -> bool {
        let b = self.rs.positive_index(beta).expect("positive root required");
        linear_descent_idx(self, &self.root_values(), &pair_partition_idx(&self.rs, b))
    }

    pub fn linear_ascent(&self, beta: &Root) -> bool {
        let b = self.rs.positive_index(beta).expect("positive root required");
        let vals = self.root_values();
        let pp = pair_partition_idx(&self.rs, b);
        vals[b] > 0 && opposite_signs(&vals, &pp)
    }

    pub fn affine_descent(&self, beta: &Root) -> bool {
        let b = self.rs.positive_index(beta).expect("positive root required");
        affine_descent_idx(self, &self.root_values(), &pair_partition_idx(&self.rs, b))
    }

    /// λ ↑ r_βλ, via the starred pair conditions.
    pub fn affine_ascent(&self, beta: &Root) -> bool {
        let b = self.rs.positive_index(beta).expect("positive root required");
        let vals = self.root_values();
        let pp = pair_partition_idx(&self.rs, b);
        if 1 - vals[b] <= 0 {
            return false;
        }
        let pos_ok = pp.positive.iter().all(|&(a, a2, _)| vals[a] < 0 || vals[a2] > 1);
        let neg_ok = self.rs.positive_roots()[b].is_long()
            || pp
                .negative
                .iter()
                .filter(|p| p.2 >= 2)
                .all(|&(a, a2, _)| vals[a] >= 2 || vals[a2] >= 2);
        pos_ok && neg_ok
    }

    /// Named length-lowering moves available at λ. Every reported move is a
    /// Bruhat cover by its witness root.
    pub fn detect_named_moves(&self) -> Vec<NamedMove> {
        named_moves(self)
    }
}

impl std::ops::Index<usize> for CorootElement {
    type Output = i64;
    fn index(&self, i: usize) -> &i64 {
        &self.coords[i]
    }
}

/// A word t₁t₂⋯t_m over the affine nodes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ReducedWord {
    pub letters: Vec<Node>,
}

impl ReducedWord {
    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(|s| s.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

impl FromStr for ReducedWord {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let letters = s
            .split_whitespace()
            .map(Node::from_str)
            .collect::<Result<Vec<_>>>()?;
        Ok(ReducedWord { letters })
    }
}

/// The partition of Φ⁺ ∖ {β} induced by s_β.
#[derive(Debug, Clone)]
pub struct PairPartition {
    pub beta: Root,
    pub null_roots: Vec<Root>,
    /// (α, α′) with α(β∨) < 0 and α′ = α + kβ.
    pub positive_pairs: Vec<(Root, Root)>,
    /// (α, α′) with α + α′ = kβ.
    pub negative_pairs: Vec<(Root, Root)>,
}

/// Index form: pairs carry k.
pub(crate) struct IdxPartition {
    pub beta: usize,
    pub null: Vec<usize>,
    pub positive: Vec<(usize, usize, i64)>,
    pub negative: Vec<(usize, usize, i64)>,
}

pub(crate) fn pair_partition_idx(rs: &RootSystem, b: usize) -> IdxPartition {
    let roots = rs.positive_roots();
    let beta = roots[b].coeffs();
    let mut null = Vec::new();
    let mut positive = Vec::new();
    let mut negative = Vec::new();
    for a in 0..roots.len() {
        if a == b {
            continue;
        }
        let p = rs.pair_index(a, b);
        if p == 0 {
            null.push(a);
            continue;
        }
        let img: Vec<i64> = roots[a].coeffs().iter().zip(beta).map(|(x, y)| x - p * y).collect();
        if let Some(a2) = rs.root_index(&img) {
            if p < 0 {
                positive.push((a, a2, -p));
            }
        } else {
            let neg: Vec<i64> = img.iter().map(|c| -c).collect();
            let a2 = rs.root_index(&neg).expect("reflection of a root is a root");
            if a < a2 {
                let diff_is_root = |x: usize| {
                    let d: Vec<i64> = beta.iter().zip(roots[x].coeffs()).map(|(u, v)| u - v).collect();
                    rs.root_index(&d).is_some()
                };
                let (first, second) = if p >= 2 && !diff_is_root(a) && diff_is_root(a2) {
                    (a2, a)
                } else {
                    (a, a2)
                };
                negative.push((first, second, p));
            }
        }
    }
    IdxPartition { beta: b, null, positive, negative }
}

/// Partitions Φ⁺ relative to the positive root `beta`.
pub fn pair_partition(rs: &RootSystem, beta: &Root) -> Result<PairPartition> {
    let b = rs.positive_index(beta)?;
    let ip = pair_partition_idx(rs, b);
    let r = |i: usize| rs.positive_roots()[i].clone();
    Ok(PairPartition {
        beta: r(ip.beta),
        null_roots: ip.null.iter().map(|&i| r(i)).collect(),
        positive_pairs: ip.positive.iter().map(|&(a, c, _)| (r(a), r(c))).collect(),
        negative_pairs: ip.negative.iter().map(|&(a, c, _)| (r(a), r(c))).collect(),
    })
}

fn opposite_signs(vals: &[i64], pp: &IdxPartition) -> bool {
    pp.negative
        .iter()
        .all(|&(a, a2, _)| (vals[a] > 0 && vals[a2] < 0) || (vals[a] < 0 && vals[a2] > 0))
}

pub(crate) fn linear_descent_idx(_lam: &CorootElement, vals: &[i64], pp: &IdxPartition) -> bool {
    vals[pp.beta] < 0 && opposite_signs(vals, pp)
}

pub(crate) fn affine_descent_idx(lam: &CorootElement, vals: &[i64], pp: &IdxPartition) -> bool {
    if 1 - vals[pp.beta] >= 0 {
        return false;
    }
    let pos_ok = pp.positive.iter().all(|&(a, a2, _)| vals[a] > 0 || vals[a2] <= 0);
    let neg_ok = lam.rs.positive_roots()[pp.beta].is_long()
        || pp
            .negative
            .iter()
            .filter(|p| p.2 >= 2)
            .all(|&(a, a2, _)| vals[a] <= 0 || vals[a2] <= 0);
    pos_ok && neg_ok
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum AbcCase {
    A,
    B,
    C,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MoveKind {
    LinearAbc(AbcCase),
    GraphSplit(Vec<Node>),
    AffineA(Node),
    AffineBc(Node),
}

impl fmt::Display for MoveKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MoveKind::LinearAbc(c) => write!(f, "LinearABC({})", format!("{c:?}").to_lowercase()),
            MoveKind::GraphSplit(i) => {
                let parts: Vec<String> = i.iter().map(|s| s.to_string()).collect();
                write!(f, "GraphSplit({{{}}})", parts.join(","))
            }
            MoveKind::AffineA(t) => write!(f, "AffineA({t})"),
            MoveKind::AffineBc(t) => write!(f, "AffineBC({t})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedMove {
    pub kind: MoveKind,
    /// Witness root β.
    pub beta: Root,
    /// true for r_β, false for s_β.
    pub affine: bool,
    /// The linked subgraph.
    pub support: Vec<Node>,
    pub target: CorootElement,
}

/// Simple paths between two nodes of the affine diagram, restricted to `allowed`.
fn simple_paths(rs: &RootSystem, from: Node, to: Node, allowed: &dyn Fn(Node) -> bool) -> Vec<Vec<Node>> {
    let g = rs.affine_graph();
    let mut out = Vec::new();
    let mut path = vec![from];
    fn rec(
        g: &crate::rootsys::AffineGraph,
        to: Node,
        allowed: &dyn Fn(Node) -> bool,
        path: &mut Vec<Node>,
        out: &mut Vec<Vec<Node>>,
    ) {
        let u = *path.last().unwrap();
        if u == to {
            out.push(path.clone());
            return;
        }
        for v in g.neighbors(u) {
            if !path.contains(&v) && (v == to || allowed(v)) {
                path.push(v);
                rec(g, to, allowed, path, out);
                path.pop();
            }
        }
    }
    rec(g, to, allowed, &mut path, &mut out);
    out
}

#[derive(Debug, PartialEq)]
enum PathShape {
    A,
    /// Type B/C path with its minuscule (long) end node and the other end.
    Bc { minuscule: Node, other: Node },
    Other,
}

fn path_shape(rs: &RootSystem, path: &[Node]) -> PathShape {
    let g = rs.affine_graph();
    let mults: Vec<u8> = path
        .windows(2)
        .map(|w| {
            let e = g.edge(w[0], w[1]).expect("path edges exist");
            if e.a1_double {
                4
            } else {
                e.multiplicity
            }
        })
        .collect();
    if mults.iter().all(|&m| m == 1) {
        return PathShape::A;
    }
    let doubles = mults.iter().filter(|&&m| m == 2).count();
    if doubles != 1 || mults.iter().any(|&m| m > 2) {
        return PathShape::Other;
    }
    let last = path.len() - 1;
    let (first_end, second_end) = (path[0], path[last]);
    let at_start = mults[0] == 2;
    let at_end = mults[mults.len() - 1] == 2;
    if !at_start && !at_end {
        return PathShape::Other;
    }
    let long = |s: Node| rs.node_length_class(s) == crate::rootsys::LengthClass::Long;
    let minuscule = if mults.len() == 1 {
        if long(first_end) {
            first_end
        } else {
            second_end
        }
    } else if at_end {
        // double edge at the far end; the long end is the minuscule node
        if long(second_end) {
            second_end
        } else {
            first_end
        }
    } else if long(first_end) {
        first_end
    } else {
        second_end
    };
    let other = if minuscule == first_end { second_end } else { first_end };
    PathShape::Bc { minuscule, other }
}

fn finite_coeffs(rs: &RootSystem, nodes: &[Node]) -> Vec<i64> {
    let mut v = vec![0; rs.rank()];
    for s in nodes {
        if !s.is_affine() {
            v[s.0 - 1] += 1;
        }
    }
    v
}

fn support_within(coeffs: &[i64], set: &BTreeSet<Node>) -> bool {
    coeffs
        .iter()
        .enumerate()
        .all(|(i, &c)| c == 0 || set.contains(&Node(i + 1)))
}

/// Minimal-height positive root supported on `set` with coefficient 2 at `node`.
fn double_root(rs: &RootSystem, set: &BTreeSet<Node>, node: Node) -> Option<usize> {
    rs.positive_roots()
        .iter()
        .enumerate()
        .filter(|(_, r)| support_within(r.coeffs(), set) && r.coeffs()[node.0 - 1] == 2)
        .min_by_key(|(_, r)| r.height())
        .map(|(i, _)| i)
}

/// Highest root of the subsystem spanned by `set` ⊆ S.
fn sub_highest(rs: &RootSystem, set: &BTreeSet<Node>) -> Option<usize> {
    rs.positive_roots()
        .iter()
        .enumerate()
        .filter(|(_, r)| support_within(r.coeffs(), set))
        .max_by_key(|(_, r)| r.height())
        .map(|(i, _)| i)
}

fn named_moves(lam: &CorootElement) -> Vec<NamedMove> {
    let rs = lam.rs();
    let vals = lam.root_values();
    let n = rs.rank();
    let mut out: Vec<NamedMove> = Vec::new();
    let push = |kind: MoveKind, b: usize, affine: bool, support: Vec<Node>, out: &mut Vec<NamedMove>| {
        let pp = pair_partition_idx(rs, b);
        let ok = if affine {
            affine_descent_idx(lam, &vals, &pp)
        } else {
            linear_descent_idx(lam, &vals, &pp)
        };
        if ok {
            let target = lam.reflect_index(b, if affine { 1 } else { 0 });
            let mv = NamedMove { kind, beta: rs.positive_roots()[b].clone(), affine, support, target };
            if !out.contains(&mv) {
                out.push(mv);
            }
        }
    };

    // Linear moves between linked nodes of opposite sign in D.
    for s in 1..=n {
        for t in 1..=n {
            let (vs, vt) = (lam[s - 1], lam[t - 1]);
            if s == t || vs >= 0 || vt <= 0 {
                continue;
            }
            let (s, t) = (Node(s), Node(t));
            let interior_zero = |u: Node| !u.is_affine() && lam.node_value(u) == 0;
            for path in simple_paths(rs, s, t, &interior_zero) {
                let set: BTreeSet<Node> = path.iter().copied().collect();
                let bsum = rs.root_index(&finite_coeffs(rs, &path));
                match path_shape(rs, &path) {
                    PathShape::A => {
                        if vs + vt < 0 {
                            if let Some(b) = bsum {
                                push(MoveKind::LinearAbc(AbcCase::A), b, false, path.clone(), &mut out);
                            }
                        }
                    }
                    PathShape::Bc { minuscule, other } => {
                        let bdouble = double_root(rs, &set, other);
                        if minuscule == t {
                            if vs + vt < 0 {
                                if let Some(b) = bsum {
                                    push(MoveKind::LinearAbc(AbcCase::A), b, false, path.clone(), &mut out);
                                }
                            } else if 2 * vs + vt < 0 {
                                if let Some(b) = bdouble {
                                    push(MoveKind::LinearAbc(AbcCase::B), b, false, path.clone(), &mut out);
                                }
                            }
                        } else if minuscule == s && vs + vt < 0 && vs + 2 * vt != 0 {
                            let b = if vs + 2 * vt > 0 { bsum } else { bdouble };
                            if let Some(b) = b {
                                push(MoveKind::LinearAbc(AbcCase::C), b, false, path.clone(), &mut out);
                            }
                        }
                    }
                    PathShape::Other => {}
                }
            }
        }
    }

    // Graph-splitting moves: proper connected I ⊂ S with α_I(λ) ≥ 2.
    if n >= 2 {
        for mask in 1u32..((1u32 << n) - 1) {
            let set: BTreeSet<Node> = (1..=n).filter(|i| mask & (1 << (i - 1)) != 0).map(Node).collect();
            if !rs.affine_graph().is_connected(&set) {
                continue;
            }
            if let Some(b) = sub_highest(rs, &set) {
                if vals[b] >= 2 {
                    push(MoveKind::GraphSplit(set.iter().copied().collect()), b, true, set.iter().copied().collect(), &mut out);
                }
            }
        }
    }

    // Affine moves linking s₀ to a node of opposite sign.
    let l0 = lam.s0_label();
    let alpha0 = rs.marks().to_vec();
    for t in 1..=n {
        let vt = lam[t - 1];
        if vt == 0 || (vt > 0) == (l0 > 0) || l0 == 0 {
            continue;
        }
        let tn = Node(t);
        let interior_zero = |u: Node| lam.node_value(u) == 0;
        for path in simple_paths(rs, Node::S0, tn, &interior_zero) {
            if path.len() == rs.affine_graph().node_count() {
                continue;
            }
            let rest = finite_coeffs(rs, &path);
            let beta: Vec<i64> = alpha0.iter().zip(&rest).map(|(a, r)| a - r).collect();
            match path_shape(rs, &path) {
                PathShape::A => {
                    if l0 + vt < 0 {
                        if let Some(b) = rs.root_index(&beta) {
                            push(MoveKind::AffineA(tn), b, true, path.clone(), &mut out);
                        }
                    }
                }
                PathShape::Bc { .. } => {
                    if l0 < 0 && l0 + vt < 0 && l0 + 2 * vt != 0 {
                        if l0 + 2 * vt > 0 {
                            if let Some(b) = rs.root_index(&beta) {
                                push(MoveKind::AffineBc(tn), b, true, path.clone(), &mut out);
                            }
                        } else {
                            let others: BTreeSet<Node> = (1..=n).map(Node).filter(|&u| u != tn).collect();
                            for comp in components(rs, &others) {
                                if let Some(b) = sub_highest(rs, &comp) {
                                    push(MoveKind::AffineBc(tn), b, true, path.clone(), &mut out);
                                }
                            }
                            let twice = rs
                                .positive_roots()
                                .iter()
                                .enumerate()
                                .filter(|(_, r)| r.coeffs()[t - 1] == 2)
                                .max_by_key(|(_, r)| r.height())
                                .map(|(i, _)| i);
                            if let Some(b) = twice {
                                push(MoveKind::AffineBc(tn), b, true, path.clone(), &mut out);
                            }
                        }
                    }
                }
                PathShape::Other => {}
            }
        }
    }
    out
}

fn components(rs: &RootSystem, set: &BTreeSet<Node>) -> Vec<BTreeSet<Node>> {
    let mut left = set.clone();
    let mut out = Vec::new();
    while let Some(&start) = left.iter().next() {
        let mut comp = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for v in rs.affine_graph().neighbors(u) {
                if left.contains(&v) && comp.insert(v) {
                    stack.push(v);
                }
            }
        }
        for u in &comp {
            left.remove(u);
        }
        out.push(comp);
    }
    out
}

/// Whether a type has a fixed type label.
pub fn require_type(rs: &RootSystem, t: TypeLabel) -> Result<()> {
    if rs.type_label() == t {
        Ok(())
    } else {
        Err(Error::WrongType { expected: t.to_string(), got: rs.name() })
    }
}
