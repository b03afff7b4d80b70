//! Finite root systems of types A through G, their affine Dynkin diagrams,
//! and the per-type tables used elsewhere (marks, exponents, degrees,
//! coroot-lattice congruences).
//!
//! Nodes are numbered in Bourbaki order. `Node(0)` is the affine node s₀ and
//! `Node(i)` for `1 <= i <= rank` is the simple node s_i. The off-line node of
//! the E series is s₂.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TypeLabel {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl fmt::Display for TypeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self {
            TypeLabel::A => "A",
            TypeLabel::B => "B",
            TypeLabel::C => "C",
            TypeLabel::D => "D",
            TypeLabel::E => "E",
            TypeLabel::F => "F",
            TypeLabel::G => "G",
        };
        f.write_str(c)
    }
}

impl FromStr for TypeLabel {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(TypeLabel::A),
            "B" => Ok(TypeLabel::B),
            "C" => Ok(TypeLabel::C),
            "D" => Ok(TypeLabel::D),
            "E" => Ok(TypeLabel::E),
            "F" => Ok(TypeLabel::F),
            "G" => Ok(TypeLabel::G),
            other => Err(Error::UnsupportedType(other.to_string())),
        }
    }
}

/// A node of the affine Dynkin diagram; `Node(0)` is s₀.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Node(pub usize);

impl Node {
    pub const S0: Node = Node(0);

    pub fn is_affine(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Node {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "s{}", self.0)
    }
}

impl FromStr for Node {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let digits = t.strip_prefix('s').unwrap_or(t);
        digits
            .parse::<usize>()
            .map(Node)
            .map_err(|_| Error::Parse(format!("bad node name {t:?}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LengthClass {
    Long,
    Short,
}

/// A root in the simple-root basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Root {
    coeffs: Vec<i64>,
    length_class: LengthClass,
}

impl Root {
    pub fn coeffs(&self) -> &[i64] {
        &self.coeffs
    }

    pub fn length_class(&self) -> LengthClass {
        self.length_class
    }

    pub fn is_long(&self) -> bool {
        self.length_class == LengthClass::Long
    }

    pub fn height(&self) -> i64 {
        self.coeffs.iter().sum()
    }

    pub fn is_positive(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= 0)
    }

    pub fn negated(&self) -> Root {
        Root {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            length_class: self.length_class,
        }
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.iter().all(|c| (0..=9).contains(c)) {
            for c in &self.coeffs {
                write!(f, "{c}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
            write!(f, "({})", parts.join(","))
        }
    }
}

/// An edge of the affine diagram.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineEdge {
    pub a: Node,
    pub b: Node,
    /// Number of bonds: 1, 2 or 3.
    pub multiplicity: u8,
    /// The endpoint carrying the shorter root when `multiplicity > 1`.
    pub short_end: Option<Node>,
    /// Set only for affine A₁, where s₀ and s₁ are joined by an edge of infinite order.
    pub a1_double: bool,
}

impl AffineEdge {
    fn touches(&self, n: Node) -> bool {
        self.a == n || self.b == n
    }

    fn other(&self, n: Node) -> Node {
        if self.a == n {
            self.b
        } else {
            self.a
        }
    }
}

#[derive(Debug, Clone)]
pub struct AffineGraph {
    node_count: usize,
    edges: Vec<AffineEdge>,
}

impl AffineGraph {
    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn nodes(&self) -> impl Iterator<Item = Node> {
        (0..self.node_count).map(Node)
    }

    pub fn edges(&self) -> &[AffineEdge] {
        &self.edges
    }

    pub fn edge(&self, u: Node, v: Node) -> Option<&AffineEdge> {
        self.edges
            .iter()
            .find(|e| (e.a == u && e.b == v) || (e.a == v && e.b == u))
    }

    pub fn neighbors(&self, n: Node) -> Vec<Node> {
        let mut out: Vec<Node> = self
            .edges
            .iter()
            .filter(|e| e.touches(n))
            .map(|e| e.other(n))
            .collect();
        out.sort();
        out
    }

    /// Order of s_u s_v in the affine Weyl group, `None` for infinite order.
    pub fn coxeter_m(&self, u: Node, v: Node) -> Option<u32> {
        if u == v {
            return Some(1);
        }
        match self.edge(u, v) {
            None => Some(2),
            Some(e) if e.a1_double => None,
            Some(e) => Some(match e.multiplicity {
                1 => 3,
                2 => 4,
                _ => 6,
            }),
        }
    }

    /// Whether `set` induces a connected subgraph (the empty set is not connected).
    pub fn is_connected(&self, set: &BTreeSet<Node>) -> bool {
        let Some(&start) = set.iter().next() else {
            return false;
        };
        let mut seen = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for v in self.neighbors(u) {
                if set.contains(&v) && seen.insert(v) {
                    stack.push(v);
                }
            }
        }
        seen.len() == set.len()
    }
}

/// Immutable per-type Lie data.
#[derive(Debug)]
pub struct RootSystem {
    type_label: TypeLabel,
    rank: usize,
    cartan: Vec<Vec<i64>>,
    gram: Vec<Vec<i64>>,
    long_norm: i64,
    positive: Vec<Root>,
    index: HashMap<Vec<i64>, usize>,
    highest: usize,
    exponents: Vec<u32>,
    affine: AffineGraph,
    node_class: Vec<LengthClass>,
    /// `coroot_simple[b][j] = α_j(β_b∨)`.
    coroot_simple: Vec<Vec<i64>>,
    /// `pair_table[b][a] = α_a(β_b∨)`.
    pair_table: Vec<Vec<i64>>,
}

struct Diagram {
    long: Vec<bool>,
    edges: Vec<(usize, usize)>,
}

fn finite_diagram(t: TypeLabel, n: usize) -> Result<Diagram> {
    let unsupported = || Error::UnsupportedType(format!("{t}{n}"));
    let chain = |n: usize| (1..n).map(|i| (i, i + 1)).collect::<Vec<_>>();
    let d = match t {
        TypeLabel::A if n >= 1 => Diagram { long: vec![true; n], edges: chain(n) },
        TypeLabel::B if n >= 2 => {
            let mut long = vec![true; n];
            long[n - 1] = false;
            Diagram { long, edges: chain(n) }
        }
        TypeLabel::C if n >= 2 => {
            let mut long = vec![false; n];
            long[n - 1] = true;
            Diagram { long, edges: chain(n) }
        }
        TypeLabel::D if n >= 4 => {
            let mut edges = chain(n - 1);
            edges.push((n - 2, n));
            Diagram { long: vec![true; n], edges }
        }
        TypeLabel::E if (6..=8).contains(&n) => {
            let mut edges = vec![(1, 3), (2, 4)];
            edges.extend((3..n).map(|i| (i, i + 1)));
            Diagram { long: vec![true; n], edges }
        }
        TypeLabel::F if n == 4 => Diagram {
            long: vec![true, true, false, false],
            edges: chain(4),
        },
        TypeLabel::G if n == 2 => Diagram {
            long: vec![false, true],
            edges: vec![(1, 2)],
        },
        _ => return Err(unsupported()),
    };
    Ok(d)
}

fn exponent_table(t: TypeLabel, n: usize) -> Vec<u32> {
    let n32 = n as u32;
    let mut e: Vec<u32> = match t {
        TypeLabel::A => (1..=n32).collect(),
        TypeLabel::B | TypeLabel::C => (1..=n32).map(|i| 2 * i - 1).collect(),
        TypeLabel::D => {
            let mut v: Vec<u32> = (1..n32).map(|i| 2 * i - 1).collect();
            v.push(n32 - 1);
            v
        }
        TypeLabel::E => match n {
            6 => vec![1, 4, 5, 7, 8, 11],
            7 => vec![1, 5, 7, 9, 11, 13, 17],
            _ => vec![1, 7, 11, 13, 17, 19, 23, 29],
        },
        TypeLabel::F => vec![1, 5, 7, 11],
        TypeLabel::G => vec![1, 5],
    };
    e.sort_unstable();
    e
}

/// Degrees of the finite Weyl group of the given type.
pub fn degrees_of(t: TypeLabel, n: usize) -> Result<Vec<u32>> {
    finite_diagram(t, n)?;
    Ok(exponent_table(t, n).into_iter().map(|e| e + 1).collect())
}

fn dot(a: &[i64], b: &[i64], gram: &[Vec<i64>]) -> i64 {
    let mut s = 0;
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            s += x * y * gram[i][j];
        }
    }
    s
}

/// Builds the root system of type `t` and rank `n`.
pub fn build_root_system(t: TypeLabel, n: usize) -> Result<RootSystem> {
    let diagram = finite_diagram(t, n)?;
    // Integral form: short roots have squared length 2, long ones 2·lacing.
    let lacing: i64 = match t {
        TypeLabel::B | TypeLabel::C | TypeLabel::F => 2,
        TypeLabel::G => 3,
        _ => 1,
    };
    let long_norm = 2 * lacing;
    let norm: Vec<i64> = diagram
        .long
        .iter()
        .map(|&l| if l { long_norm } else { 2 })
        .collect();
    let mut gram = vec![vec![0i64; n]; n];
    for i in 0..n {
        gram[i][i] = norm[i];
    }
    for &(i, j) in &diagram.edges {
        let v = -norm[i - 1].max(norm[j - 1]) / 2;
        gram[i - 1][j - 1] = v;
        gram[j - 1][i - 1] = v;
    }
    let cartan: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| 2 * gram[i][j] / norm[i]).collect())
        .collect();

    // Closure of the simple roots under simple reflections.
    let mut found: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut frontier: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut v = vec![0; n];
            v[i] = 1;
            v
        })
        .collect();
    for r in &frontier {
        found.insert(r.clone());
    }
    while let Some(r) = frontier.pop() {
        for i in 0..n {
            let p: i64 = (0..n).map(|j| r[j] * cartan[i][j]).sum();
            if p == 0 {
                continue;
            }
            let mut s = r.clone();
            s[i] -= p;
            if s.iter().all(|&c| c >= 0) && s.iter().any(|&c| c > 0) && found.insert(s.clone()) {
                frontier.push(s);
            }
        }
    }
    let mut coeff_list: Vec<Vec<i64>> = found.into_iter().collect();
    coeff_list.sort_by(|a, b| {
        let ha: i64 = a.iter().sum();
        let hb: i64 = b.iter().sum();
        ha.cmp(&hb).then_with(|| a.cmp(b))
    });
    let positive: Vec<Root> = coeff_list
        .into_iter()
        .map(|c| {
            let nn = dot(&c, &c, &gram);
            let length_class = if nn == long_norm {
                LengthClass::Long
            } else {
                LengthClass::Short
            };
            Root { coeffs: c, length_class }
        })
        .collect();
    let index: HashMap<Vec<i64>, usize> = positive
        .iter()
        .enumerate()
        .map(|(i, r)| (r.coeffs.clone(), i))
        .collect();
    let highest = positive.len() - 1;

    let coroot_simple: Vec<Vec<i64>> = positive
        .iter()
        .map(|b| {
            let bb = dot(&b.coeffs, &b.coeffs, &gram);
            (0..n)
                .map(|j| {
                    let mut e = vec![0; n];
                    e[j] = 1;
                    2 * dot(&e, &b.coeffs, &gram) / bb
                })
                .collect()
        })
        .collect();
    let pair_table: Vec<Vec<i64>> = coroot_simple
        .iter()
        .map(|cs| {
            positive
                .iter()
                .map(|a| a.coeffs.iter().zip(cs).map(|(x, y)| x * y).sum())
                .collect()
        })
        .collect();

    // Affine diagram: s₀ carries −α₀, which is long.
    let mut edges: Vec<AffineEdge> = Vec::new();
    let alpha0 = &positive[highest].coeffs;
    let a0_norm = dot(alpha0, alpha0, &gram);
    for j in 0..n {
        let mut e = vec![0; n];
        e[j] = 1;
        let ip = dot(&e, alpha0, &gram);
        if ip == 0 {
            continue;
        }
        let c_j0 = 2 * ip / a0_norm; // α_j(α₀∨)
        let c_0j = 2 * ip / norm[j]; // α₀(α_j∨)
        let node = Node(j + 1);
        if c_j0 * c_0j == 4 {
            edges.push(AffineEdge {
                a: Node::S0,
                b: node,
                multiplicity: 1,
                short_end: None,
                a1_double: true,
            });
        } else {
            let m = (c_j0 * c_0j) as u8;
            edges.push(AffineEdge {
                a: Node::S0,
                b: node,
                multiplicity: m,
                short_end: (m > 1).then_some(node),
                a1_double: false,
            });
        }
    }
    for &(i, j) in &diagram.edges {
        let m = (cartan[i - 1][j - 1] * cartan[j - 1][i - 1]) as u8;
        let short_end = if m > 1 {
            Some(if norm[i - 1] < norm[j - 1] { Node(i) } else { Node(j) })
        } else {
            None
        };
        edges.push(AffineEdge {
            a: Node(i),
            b: Node(j),
            multiplicity: m,
            short_end,
            a1_double: false,
        });
    }
    let mut node_class = vec![LengthClass::Long];
    node_class.extend(diagram.long.iter().map(|&l| {
        if l {
            LengthClass::Long
        } else {
            LengthClass::Short
        }
    }));

    Ok(RootSystem {
        type_label: t,
        rank: n,
        cartan,
        gram,
        long_norm,
        positive,
        index,
        highest,
        exponents: exponent_table(t, n),
        affine: AffineGraph { node_count: n + 1, edges },
        node_class,
        coroot_simple,
        pair_table,
    })
}

type SystemCache = Mutex<HashMap<(TypeLabel, usize), Arc<RootSystem>>>;

/// Process-wide shared instance of a root system.
pub fn shared(t: TypeLabel, n: usize) -> Result<Arc<RootSystem>> {
    static CACHE: OnceLock<SystemCache> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(rs) = cache.lock().expect("root system cache poisoned").get(&(t, n)) {
        return Ok(Arc::clone(rs));
    }
    let rs = Arc::new(build_root_system(t, n)?);
    let mut guard = cache.lock().expect("root system cache poisoned");
    Ok(Arc::clone(guard.entry((t, n)).or_insert(rs)))
}

impl RootSystem {
    pub fn type_label(&self) -> TypeLabel {
        self.type_label
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn name(&self) -> String {
        format!("{}{}", self.type_label, self.rank)
    }

    /// `cartan()[i][j] = α_j(α_i∨)`, zero-based.
    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive
    }

    pub fn num_positive(&self) -> usize {
        self.positive.len()
    }

    pub fn highest_root(&self) -> &Root {
        &self.positive[self.highest]
    }

    pub(crate) fn highest_index(&self) -> usize {
        self.highest
    }

    /// Marks m_1..m_n of the highest root.
    pub fn marks(&self) -> &[i64] {
        &self.positive[self.highest].coeffs
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exponents
    }

    pub fn degrees(&self) -> Vec<u32> {
        self.exponents.iter().map(|e| e + 1).collect()
    }

    pub fn affine_graph(&self) -> &AffineGraph {
        &self.affine
    }

    pub fn simple_nodes(&self) -> impl Iterator<Item = Node> {
        (1..=self.rank).map(Node)
    }

    /// Length class of a node; s₀ (carrying −α₀) is always long.
    pub fn node_length_class(&self, s: Node) -> LengthClass {
        self.node_class[s.0]
    }

    pub fn minuscule_nodes(&self) -> Vec<Node> {
        self.marks()
            .iter()
            .enumerate()
            .filter(|(_, &m)| m == 1)
            .map(|(i, _)| Node(i + 1))
            .collect()
    }

    pub fn is_simply_laced(&self) -> bool {
        matches!(self.type_label, TypeLabel::A | TypeLabel::D | TypeLabel::E)
    }

    pub fn simple_root(&self, i: usize) -> &Root {
        let mut e = vec![0; self.rank];
        e[i - 1] = 1;
        &self.positive[self.index[&e]]
    }

    /// Index of a positive root with the given coefficients.
    pub fn root_index(&self, coeffs: &[i64]) -> Option<usize> {
        self.index.get(coeffs).copied()
    }

    /// Index of `alpha` if it is a positive root of this system.
    pub(crate) fn positive_index(&self, alpha: &Root) -> Result<usize> {
        if alpha.coeffs.len() != self.rank {
            return Err(Error::SystemMismatch);
        }
        match self.index.get(&alpha.coeffs) {
            Some(&i) if self.positive[i].length_class == alpha.length_class => Ok(i),
            _ => Err(Error::SystemMismatch),
        }
    }

    /// Root with the given coefficients, positive or negative.
    pub fn root(&self, coeffs: &[i64]) -> Result<Root> {
        if coeffs.len() != self.rank {
            return Err(Error::LengthMismatch { expected: self.rank, got: coeffs.len() });
        }
        if let Some(&i) = self.index.get(coeffs) {
            return Ok(self.positive[i].clone());
        }
        let neg: Vec<i64> = coeffs.iter().map(|c| -c).collect();
        if let Some(&i) = self.index.get(&neg) {
            return Ok(self.positive[i].negated());
        }
        Err(Error::NotARoot(coeffs.to_vec()))
    }

    fn is_root(&self, alpha: &Root) -> bool {
        self.root(&alpha.coeffs).is_ok_and(|r| r == *alpha)
    }

    /// α(β∨) = 2(α,β)/(β,β).
    pub fn pairing(&self, alpha: &Root, beta: &Root) -> Result<i64> {
        for r in [alpha, beta] {
            if !self.is_root(r) {
                return Err(Error::NotARoot(r.coeffs.clone()));
            }
        }
        let ab = dot(&alpha.coeffs, &beta.coeffs, &self.gram);
        let bb = dot(&beta.coeffs, &beta.coeffs, &self.gram);
        Ok(2 * ab / bb)
    }

    /// Squared length of a root on a scale where long roots have length 2.
    /// Returned as a (numerator, denominator) pair.
    pub fn squared_length(&self, alpha: &Root) -> (i64, i64) {
        let nn = dot(&alpha.coeffs, &alpha.coeffs, &self.gram);
        let g = gcd(2 * nn, self.long_norm);
        (2 * nn / g, self.long_norm / g)
    }

    /// α_j(β∨) for positive root index `b`.
    pub(crate) fn coroot_coords(&self, b: usize) -> &[i64] {
        &self.coroot_simple[b]
    }

    /// α_a(β_b∨) for positive root indices.
    pub(crate) fn pair_index(&self, a: usize, b: usize) -> i64 {
        self.pair_table[b][a]
    }

    /// α(β_b∨) for every positive root α, in table order.
    pub(crate) fn pair_column(&self, b: usize) -> &[i64] {
        &self.pair_table[b]
    }

    /// Whether Σ a_i ω_i∨ lies in the coroot lattice.
    pub fn in_coroot_lattice(&self, coords: &[i64]) -> Result<bool> {
        let n = self.rank;
        if coords.len() != n {
            return Err(Error::LengthMismatch { expected: n, got: coords.len() });
        }
        let a = |i: usize| coords[i - 1];
        let odd_sum = |upto: usize| (1..=upto).step_by(2).map(a).sum::<i64>();
        let ok = match self.type_label {
            TypeLabel::A => {
                let s: i64 = (1..=n).map(|i| i as i64 * a(i)).sum();
                s.rem_euclid(n as i64 + 1) == 0
            }
            TypeLabel::B => odd_sum(n).rem_euclid(2) == 0,
            TypeLabel::C => a(n).rem_euclid(2) == 0,
            TypeLabel::D => {
                let so = odd_sum(n - 2);
                if n % 2 == 1 {
                    (a(n - 1) - a(n) + 2 * so).rem_euclid(4) == 0
                } else {
                    (so + a(n - 1)).rem_euclid(2) == 0 && (so + a(n)).rem_euclid(2) == 0
                }
            }
            TypeLabel::E => match n {
                6 => (a(1) - a(3) + a(5) - a(6)).rem_euclid(3) == 0,
                7 => (a(2) + a(5) + a(7)).rem_euclid(2) == 0,
                _ => true,
            },
            TypeLabel::F | TypeLabel::G => true,
        };
        Ok(ok)
    }
}

pub(crate) fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// All supported (type, rank) pairs up to the given rank, in a fixed order.
pub fn supported_types(max_rank: usize) -> Vec<(TypeLabel, usize)> {
    let mut out = Vec::new();
    for n in 1..=max_rank {
        out.push((TypeLabel::A, n));
    }
    for n in 2..=max_rank {
        out.push((TypeLabel::B, n));
    }
    for n in 2..=max_rank {
        out.push((TypeLabel::C, n));
    }
    for n in 4..=max_rank {
        out.push((TypeLabel::D, n));
    }
    for n in 6..=max_rank.min(8) {
        out.push((TypeLabel::E, n));
    }
    if max_rank >= 4 {
        out.push((TypeLabel::F, 4));
    }
    if max_rank >= 2 {
        out.push((TypeLabel::G, 2));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(t: TypeLabel, n: usize) -> RootSystem {
        build_root_system(t, n).unwrap()
    }

    #[test]
    fn small_examples() {
        let a2 = rs(TypeLabel::A, 2);
        assert_eq!(a2.num_positive(), 3);
        assert_eq!(a2.highest_root().coeffs(), &[1, 1]);
        let g2 = rs(TypeLabel::G, 2);
        assert_eq!(g2.num_positive(), 6);
        assert_eq!(g2.highest_root().coeffs(), &[3, 2]);
        let e8 = rs(TypeLabel::E, 8);
        assert_eq!(e8.num_positive(), 120);
        assert_eq!(e8.highest_root().coeffs(), &[2, 3, 4, 6, 5, 4, 3, 2]);
    }

    #[test]
    fn unsupported() {
        for (t, n) in [
            (TypeLabel::A, 0),
            (TypeLabel::B, 1),
            (TypeLabel::C, 1),
            (TypeLabel::D, 3),
            (TypeLabel::E, 5),
            (TypeLabel::E, 9),
            (TypeLabel::F, 3),
            (TypeLabel::G, 3),
        ] {
            assert!(matches!(build_root_system(t, n), Err(Error::UnsupportedType(_))));
        }
    }

    #[test]
    fn root_counts_and_exponents() {
        for (t, n) in supported_types(8) {
            let r = rs(t, n);
            let expected = match t {
                TypeLabel::A => n * (n + 1) / 2,
                TypeLabel::B | TypeLabel::C => n * n,
                TypeLabel::D => n * (n - 1),
                TypeLabel::E => [36, 63, 120][n - 6],
                TypeLabel::F => 24,
                TypeLabel::G => 6,
            };
            assert_eq!(r.num_positive(), expected, "{t}{n}");
            let sum: u32 = r.exponents().iter().sum();
            assert_eq!(sum as usize, expected, "exponent sum {t}{n}");
            assert!(r.positive_roots().iter().all(|a| a.coeffs().iter().zip(r.marks()).all(|(c, m)| c <= m)));
        }
    }

    #[test]
    fn marks_table() {
        let table: &[(TypeLabel, usize, &[i64])] = &[
            (TypeLabel::A, 4, &[1, 1, 1, 1]),
            (TypeLabel::B, 4, &[1, 2, 2, 2]),
            (TypeLabel::C, 4, &[2, 2, 2, 1]),
            (TypeLabel::D, 6, &[1, 2, 2, 2, 1, 1]),
            (TypeLabel::E, 6, &[1, 2, 2, 3, 2, 1]),
            (TypeLabel::E, 7, &[2, 2, 3, 4, 3, 2, 1]),
            (TypeLabel::F, 4, &[2, 3, 4, 2]),
            (TypeLabel::G, 2, &[3, 2]),
        ];
        for (t, n, m) in table {
            assert_eq!(rs(*t, *n).marks(), *m, "{t}{n}");
        }
    }

    #[test]
    fn affine_attachment() {
        let attach = |t, n| -> Vec<Node> { rs(t, n).affine_graph().neighbors(Node::S0) };
        assert_eq!(attach(TypeLabel::A, 4), vec![Node(1), Node(4)]);
        assert_eq!(attach(TypeLabel::B, 4), vec![Node(2)]);
        assert_eq!(attach(TypeLabel::C, 3), vec![Node(1)]);
        assert_eq!(attach(TypeLabel::D, 5), vec![Node(2)]);
        assert_eq!(attach(TypeLabel::E, 6), vec![Node(2)]);
        assert_eq!(attach(TypeLabel::E, 7), vec![Node(1)]);
        assert_eq!(attach(TypeLabel::E, 8), vec![Node(8)]);
        assert_eq!(attach(TypeLabel::F, 4), vec![Node(1)]);
        assert_eq!(attach(TypeLabel::G, 2), vec![Node(2)]);

        let c3 = rs(TypeLabel::C, 3);
        let e = c3.affine_graph().edge(Node::S0, Node(1)).unwrap();
        assert_eq!((e.multiplicity, e.short_end), (2, Some(Node(1))));
        let b2 = rs(TypeLabel::B, 2);
        let e = b2.affine_graph().edge(Node::S0, Node(2)).unwrap();
        assert_eq!((e.multiplicity, e.short_end), (2, Some(Node(2))));
        let a1 = rs(TypeLabel::A, 1);
        let e = a1.affine_graph().edge(Node::S0, Node(1)).unwrap();
        assert!(e.a1_double);
        assert_eq!(a1.affine_graph().coxeter_m(Node::S0, Node(1)), None);
        let g2 = rs(TypeLabel::G, 2);
        let e = g2.affine_graph().edge(Node(1), Node(2)).unwrap();
        assert_eq!((e.multiplicity, e.short_end), (3, Some(Node(1))));
    }

    #[test]
    fn finite_part_matches_cartan() {
        for (t, n) in supported_types(8) {
            let r = rs(t, n);
            for i in 1..=n {
                for j in (i + 1)..=n {
                    let c = r.cartan()[i - 1][j - 1] * r.cartan()[j - 1][i - 1];
                    let e = r.affine_graph().edge(Node(i), Node(j));
                    assert_eq!(c, e.map_or(0, |e| e.multiplicity as i64), "{t}{n} {i} {j}");
                }
            }
        }
    }

    #[test]
    fn pairing_examples() {
        let a2 = rs(TypeLabel::A, 2);
        let (a1, a2r) = (a2.simple_root(1).clone(), a2.simple_root(2).clone());
        assert_eq!(a2.pairing(&a1, &a1).unwrap(), 2);
        assert_eq!(a2.pairing(&a1, &a2r).unwrap(), -1);
        let g2 = rs(TypeLabel::G, 2);
        assert_eq!(g2.pairing(g2.simple_root(2), g2.simple_root(1)).unwrap(), -3);
        let bogus = Root { coeffs: vec![2, 2], length_class: LengthClass::Long };
        assert!(matches!(a2.pairing(&bogus, &a1), Err(Error::NotARoot(_))));
    }

    #[test]
    fn pairing_matches_cartan_on_simple_roots() {
        for (t, n) in supported_types(8) {
            let r = rs(t, n);
            for i in 1..=n {
                for j in 1..=n {
                    let p = r.pairing(r.simple_root(j), r.simple_root(i)).unwrap();
                    assert_eq!(p, r.cartan()[i - 1][j - 1]);
                }
            }
        }
    }

    #[test]
    fn closure_soundness() {
        for (t, n) in supported_types(8) {
            let r = rs(t, n);
            for a in r.positive_roots() {
                for i in 1..=n {
                    let p = r.pairing(a, r.simple_root(i)).unwrap();
                    let mut v = a.coeffs().to_vec();
                    v[i - 1] -= p;
                    assert!(v.iter().all(|&c| c == 0) || r.root(&v).is_ok());
                }
            }
        }
    }

    #[test]
    fn long_and_short() {
        for n in 2..=6 {
            let b = rs(TypeLabel::B, n);
            let short = b.positive_roots().iter().filter(|a| !a.is_long()).count();
            assert_eq!(short, n);
        }
        let g2 = rs(TypeLabel::G, 2);
        assert_eq!(g2.squared_length(g2.simple_root(1)), (2, 3));
        assert_eq!(g2.squared_length(g2.simple_root(2)), (2, 1));
        let b3 = rs(TypeLabel::B, 3);
        assert_eq!(b3.squared_length(b3.simple_root(3)), (1, 1));
        let e6 = rs(TypeLabel::E, 6);
        assert!(e6.positive_roots().iter().all(Root::is_long));
    }

    #[test]
    fn minuscule() {
        assert_eq!(rs(TypeLabel::A, 3).minuscule_nodes(), vec![Node(1), Node(2), Node(3)]);
        assert_eq!(rs(TypeLabel::C, 4).minuscule_nodes(), vec![Node(4)]);
        assert_eq!(rs(TypeLabel::B, 4).minuscule_nodes(), vec![Node(1)]);
        assert_eq!(rs(TypeLabel::D, 5).minuscule_nodes(), vec![Node(1), Node(4), Node(5)]);
        assert_eq!(rs(TypeLabel::E, 6).minuscule_nodes(), vec![Node(1), Node(6)]);
        assert_eq!(rs(TypeLabel::E, 7).minuscule_nodes(), vec![Node(7)]);
        assert!(rs(TypeLabel::E, 8).minuscule_nodes().is_empty());
        assert!(rs(TypeLabel::F, 4).minuscule_nodes().is_empty());
        assert!(rs(TypeLabel::G, 2).minuscule_nodes().is_empty());
    }

    #[test]
    fn lattice_examples() {
        let a2 = rs(TypeLabel::A, 2);
        assert!(a2.in_coroot_lattice(&[1, 1]).unwrap());
        assert!(!a2.in_coroot_lattice(&[1, 0]).unwrap());
        let c3 = rs(TypeLabel::C, 3);
        assert!(!c3.in_coroot_lattice(&[0, 0, 1]).unwrap());
        let f4 = rs(TypeLabel::F, 4);
        assert!(f4.in_coroot_lattice(&[7, -3, 1, 5]).unwrap());
        assert!(matches!(
            a2.in_coroot_lattice(&[1]),
            Err(Error::LengthMismatch { expected: 2, got: 1 })
        ));
    }

    /// Independent membership test: solve Σ a_i ω_i∨ = Σ x_j α_j∨ over the
    /// rationals and check integrality. The coefficient matrix is the
    /// transposed Cartan matrix.
    fn lattice_by_linear_algebra(r: &RootSystem, coords: &[i64]) -> bool {
        let n = r.rank();
        // α_i(Σ x_j α_j∨) = Σ_j x_j c_{ji}
        let mut m: Vec<Vec<f64>> = (0..n)
            .map(|i| {
                let mut row: Vec<f64> = (0..n).map(|j| r.cartan()[j][i] as f64).collect();
                row.push(coords[i] as f64);
                row
            })
            .collect();
        for col in 0..n {
            let piv = (col..n).max_by(|&a, &b| m[a][col].abs().total_cmp(&m[b][col].abs())).unwrap();
            m.swap(col, piv);
            let p = m[col][col];
            for x in &mut m[col][col..=n] {
                *x /= p;
            }
            for row in 0..n {
                if row != col {
                    let f = m[row][col];
                    let pivot = m[col].clone();
                    for (x, y) in m[row][col..=n].iter_mut().zip(&pivot[col..=n]) {
                        *x -= f * y;
                    }
                }
            }
        }
        m.iter().all(|row| (row[n] - row[n].round()).abs() < 1e-9)
    }

    proptest::proptest! {
        #[test]
        fn lattice_congruences_match_linear_algebra(
            which in 0usize..22,
            v in proptest::collection::vec(-6i64..=6, 8),
        ) {
            let (t, n) = supported_types(8)[which % supported_types(8).len()];
            let r = rs(t, n);
            let v = &v[..n];
            proptest::prop_assert_eq!(r.in_coroot_lattice(v).unwrap(), lattice_by_linear_algebra(&r, v));
        }
    }

    #[test]
    fn degrees_are_exponents_plus_one() {
        let b3 = rs(TypeLabel::B, 3);
        assert_eq!(b3.exponents(), &[1, 3, 5]);
        assert_eq!(b3.degrees(), vec![2, 4, 6]);
        assert_eq!(degrees_of(TypeLabel::D, 4).unwrap(), vec![2, 4, 4, 6]);
    }
}
