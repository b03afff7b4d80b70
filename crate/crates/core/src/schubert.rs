//! Closed parabolic orbits, chains, spiral classes, Chevalley coefficients
//! and the classification of palindromic Schubert varieties.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::bruhat::{self, IntPolynomial};
use crate::error::{Error, Result};
use crate::rootsys::{degrees_of, LengthClass, Node, RootSystem, TypeLabel};
use crate::weyl::{require_type, CorootElement, ReducedWord};

/// A closed parabolic orbit, indexed by a proper connected I ⊂ S̃ with s₀ ∈ I.
#[derive(Debug, Clone)]
pub struct CpoDescriptor {
    pub nodes: Vec<Node>,
    /// N(I): nodes of S adjacent to I but outside it.
    pub neighbors: Vec<Node>,
    /// |A_I|.
    pub dim: u64,
    pub top: CorootElement,
}

fn fire_up_within(rs: &Arc<RootSystem>, nodes: &BTreeSet<Node>) -> CorootElement {
    let mut mu = CorootElement::zero(rs);
    while let Some(&s) = nodes.iter().find(|&&s| mu.node_value(s) > 0) {
        mu = mu.fire(s);
    }
    mu
}

fn a_i_count(rs: &RootSystem, neighbors: &[Node]) -> u64 {
    let marks = rs.marks();
    rs.positive_roots()
        .iter()
        .filter(|r| neighbors.iter().all(|s| r.coeffs()[s.0 - 1] == marks[s.0 - 1]))
        .count() as u64
}

fn compute_cpos(rs: &Arc<RootSystem>) -> Vec<CpoDescriptor> {
    let n = rs.rank();
    let g = rs.affine_graph();
    let mut out = Vec::new();
    for mask in 0u32..((1u32 << n) - 1) {
        let mut set = BTreeSet::from([Node::S0]);
        set.extend((1..=n).filter(|i| mask & (1 << (i - 1)) != 0).map(Node));
        if !g.is_connected(&set) {
            continue;
        }
        let neighbors: Vec<Node> = rs
            .simple_nodes()
            .filter(|s| !set.contains(s) && g.neighbors(*s).iter().any(|t| set.contains(t)))
            .collect();
        let top = fire_up_within(rs, &set);
        let dim = a_i_count(rs, &neighbors);
        out.push(CpoDescriptor { nodes: set.into_iter().collect(), neighbors, dim, top });
    }
    out.sort_by(|a, b| a.dim.cmp(&b.dim).then_with(|| a.nodes.cmp(&b.nodes)));
    out
}

/// All non-trivial closed parabolic orbits, sorted by (dim, I).
pub fn enumerate_cpos(rs: &Arc<RootSystem>) -> Arc<Vec<CpoDescriptor>> {
    type CpoCache = Mutex<HashMap<(TypeLabel, usize), Arc<Vec<CpoDescriptor>>>>;
    static CACHE: OnceLock<CpoCache> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let k = (rs.type_label(), rs.rank());
    if let Some(v) = cache.lock().expect("cpo cache poisoned").get(&k) {
        return Arc::clone(v);
    }
    let v = Arc::new(compute_cpos(rs));
    Arc::clone(cache.lock().expect("cpo cache poisoned").entry(k).or_insert(v))
}

/// λ = 0 counts as the trivial orbit.
pub fn is_cpo(lam: &CorootElement) -> bool {
    lam.is_zero() || enumerate_cpos(lam.rs()).iter().any(|d| &d.top == lam)
}

fn short_factor(rs: &RootSystem) -> i64 {
    match rs.type_label() {
        TypeLabel::G => 3,
        TypeLabel::B | TypeLabel::C | TypeLabel::F => 2,
        _ => 1,
    }
}

/// Coefficient of [X_{sλ}] in y·[X_λ] for an ascent s of λ.
pub fn chevalley_coeff(lam: &CorootElement, s: Node) -> Result<i64> {
    let v = lam.node_value(s);
    if v <= 0 {
        return Err(Error::NotAnAscent(s.to_string()));
    }
    if s.is_affine() {
        return Ok(v);
    }
    let c = match lam.rs().node_length_class(s) {
        LengthClass::Long => 1,
        LengthClass::Short => short_factor(lam.rs()),
    };
    Ok(c * v)
}

#[derive(Debug, Clone)]
pub struct ChainDescriptor {
    pub word: ReducedWord,
    pub top: CorootElement,
    pub cup_sequence: Vec<i64>,
}

/// Cup sequence along the firing-up path of a reduced word.
pub fn cup_sequence(rs: &Arc<RootSystem>, word: &ReducedWord) -> Result<Vec<i64>> {
    let mut mu = CorootElement::zero(rs);
    let mut out = Vec::with_capacity(word.len());
    for (pos, &s) in word.letters.iter().enumerate().rev() {
        let a = chevalley_coeff(&mu, s).map_err(|_| Error::NotReduced(pos))?;
        out.push(a);
        mu = mu.fire(s);
    }
    Ok(out)
}

/// Chains of dimension 1..=max_len, found by walking admissible paths from s₀.
pub fn enumerate_chains(rs: &Arc<RootSystem>, max_len: usize) -> Result<Vec<ChainDescriptor>> {
    let g = rs.affine_graph();
    let mut out = Vec::new();
    if max_len == 0 {
        return Ok(out);
    }
    // (path, element, alternating run length)
    let mut stack: Vec<(Vec<Node>, CorootElement, u32)> =
        vec![(vec![Node::S0], CorootElement::zero(rs).fire(Node::S0), 1)];
    while let Some((path, mu, run)) = stack.pop() {
        if !is_chain(&mu)? {
            continue;
        }
        let letters: Vec<Node> = path.iter().rev().copied().collect();
        let word = ReducedWord { letters };
        let cup = cup_sequence(rs, &word)?;
        out.push(ChainDescriptor { word, top: mu.clone(), cup_sequence: cup });
        if path.len() >= max_len {
            continue;
        }
        let u = *path.last().unwrap();
        let prev = path.len().checked_sub(2).map(|i| path[i]);
        for v in g.neighbors(u) {
            let reversal = Some(v) == prev;
            if reversal {
                let ok = g.coxeter_m(u, v).is_none_or(|m| run + 1 < m);
                if !ok {
                    continue;
                }
            }
            if mu.node_value(v) <= 0 {
                continue;
            }
            let mut p = path.clone();
            p.push(v);
            stack.push((p, mu.fire(v), if reversal { run + 1 } else { 2 }));
        }
    }
    out.sort_by_key(|c| c.top.sort_key());
    out.dedup_by(|a, b| a.top == b.top);
    Ok(out)
}

/// Whether every Poincaré coefficient equals 1.
pub fn is_chain(lam: &CorootElement) -> Result<bool> {
    Ok(bruhat::poincare_polynomial(lam)?.coeffs().iter().all(|&c| c == 1))
}

/// Symmetry of the cup sequence.
pub fn chain_pd(chain: &ChainDescriptor) -> bool {
    let a = &chain.cup_sequence;
    a.iter().eq(a.iter().rev())
}

/// λ = 0, or a single negative node which is long and carries −1.
pub fn pd_necessary(lam: &CorootElement) -> bool {
    if lam.is_zero() {
        return true;
    }
    match lam.descents().as_slice() {
        [s] => lam.rs().node_length_class(*s) == LengthClass::Long && lam.node_value(*s) == -1,
        _ => false,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpiralFamily {
    Plain,
    Prime,
}

/// Representative λ_{n,k} (or its image under the diagram flip) in type A_n.
pub fn spiral_lambda(rs: &Arc<RootSystem>, k: u64, family: SpiralFamily) -> Result<CorootElement> {
    require_type(rs, TypeLabel::A)?;
    if k == 0 {
        return Err(Error::Parse("spiral index k must be at least 1".into()));
    }
    let n = rs.rank();
    let k = i64::try_from(k).map_err(|_| Error::Overflow)?;
    let i = (k as usize) % (n + 1);
    // labels on s₀..s_n: k+1 at s_i, −k at s_{i+1 mod n+1}
    let mut labels = vec![0i64; n + 1];
    labels[i] = k + 1;
    labels[(i + 1) % (n + 1)] = -k;
    let mut coords: Vec<i64> = labels[1..].to_vec();
    if family == SpiralFamily::Prime {
        coords.reverse();
    }
    CorootElement::new(rs, coords)
}

/// Exactly two nonzero adjacent nodes whose values sum to 1 (type A only).
pub fn is_spiral(lam: &CorootElement) -> bool {
    let rs = lam.rs();
    if rs.type_label() != TypeLabel::A {
        return false;
    }
    let nonzero: Vec<Node> = rs.affine_graph().nodes().filter(|&s| lam.node_value(s) != 0).collect();
    match nonzero.as_slice() {
        [s, t] => {
            rs.affine_graph().edge(*s, *t).is_some() && lam.node_value(*s) + lam.node_value(*t) == 1
        }
        _ => false,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Label {
    Cpo,
    Chain,
    Spiral,
    ExceptionalB3,
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Label::Cpo => "CPO",
            Label::Chain => "Chain",
            Label::Spiral => "Spiral",
            Label::ExceptionalB3 => "ExceptionalB3",
        })
    }
}

#[derive(Debug, Clone)]
pub struct ClassificationVerdict {
    pub lambda: CorootElement,
    pub labels: BTreeSet<Label>,
    pub palindromic: bool,
    pub smooth: bool,
    pub dim: u64,
    /// Brute-force Poincaré polynomial, kept for cross-checking.
    pub poincare: IntPolynomial,
}

impl ClassificationVerdict {
    /// Whether the predicted palindromy matches the brute-force polynomial.
    pub fn consistent(&self) -> bool {
        self.palindromic == self.poincare.is_palindromic()
    }

    pub fn label_names(&self) -> Vec<String> {
        if self.labels.is_empty() {
            vec!["NotPalindromic".to_string()]
        } else {
            self.labels.iter().map(Label::to_string).collect()
        }
    }
}

pub fn is_exceptional_b3(lam: &CorootElement) -> bool {
    let rs = lam.rs();
    rs.type_label() == TypeLabel::B && rs.rank() == 3 && lam.coords() == [3, 0, -1]
}

/// Labels from the four structural predicates, plus the brute-force polynomial.
pub fn classify(lam: &CorootElement) -> Result<ClassificationVerdict> {
    let poincare = bruhat::poincare_polynomial(lam)?;
    let mut labels = BTreeSet::new();
    if is_cpo(lam) {
        labels.insert(Label::Cpo);
    }
    if poincare.coeffs().iter().all(|&c| c == 1) {
        labels.insert(Label::Chain);
    }
    if is_spiral(lam) {
        labels.insert(Label::Spiral);
    }
    if is_exceptional_b3(lam) {
        labels.insert(Label::ExceptionalB3);
    }
    Ok(ClassificationVerdict {
        lambda: lam.clone(),
        palindromic: !labels.is_empty(),
        smooth: labels.contains(&Label::Cpo),
        dim: lam.length_s(),
        labels,
        poincare,
    })
}

/// Every node of I is nonnegative on λ.
pub fn i_minimal(lam: &CorootElement, nodes: &[Node]) -> bool {
    nodes.iter().all(|&s| lam.node_value(s) >= 0)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LeviData {
    /// K_λ: zero nodes of λ inside I.
    pub zero_nodes: Vec<Node>,
    /// |M_λ|(t).
    pub levi: IntPolynomial,
    /// p_λ(t) = t^{ℓ^S(λ)} |M_λ|(t).
    pub orbit: IntPolynomial,
}

/// Finite types of the connected components of the subdiagram on `nodes`.
pub fn subdiagram_types(rs: &RootSystem, nodes: &[Node]) -> Result<Vec<(TypeLabel, usize)>> {
    let g = rs.affine_graph();
    let set: BTreeSet<Node> = nodes.iter().copied().collect();
    if set.iter().any(|s| s.0 > rs.rank()) {
        return Err(Error::Parse("node out of range".into()));
    }
    if set.len() == g.node_count() {
        return Err(Error::InfiniteParabolic);
    }
    let mut left = set.clone();
    let mut out = Vec::new();
    while let Some(&start) = left.iter().next() {
        let mut comp = BTreeSet::from([start]);
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for v in g.neighbors(u) {
                if set.contains(&v) && comp.insert(v) {
                    stack.push(v);
                }
            }
        }
        for u in &comp {
            left.remove(u);
        }
        out.push(component_type(rs, &comp)?);
    }
    out.sort();
    Ok(out)
}

fn component_type(rs: &RootSystem, comp: &BTreeSet<Node>) -> Result<(TypeLabel, usize)> {
    let g = rs.affine_graph();
    let k = comp.len();
    let edges: Vec<_> = g
        .edges()
        .iter()
        .filter(|e| comp.contains(&e.a) && comp.contains(&e.b))
        .collect();
    if edges.iter().any(|e| e.a1_double) || edges.len() >= k {
        return Err(Error::InfiniteParabolic);
    }
    if edges.iter().any(|e| e.multiplicity == 3) {
        return Ok((TypeLabel::G, 2));
    }
    let deg = |u: Node| edges.iter().filter(|e| e.a == u || e.b == u).count();
    let doubles: Vec<_> = edges.iter().filter(|e| e.multiplicity == 2).collect();
    match doubles.len() {
        0 => {}
        1 => {
            let d = doubles[0];
            if k == 4 && deg(d.a) == 2 && deg(d.b) == 2 {
                return Ok((TypeLabel::F, 4));
            }
            return Ok((TypeLabel::B, k));
        }
        _ => return Err(Error::InfiniteParabolic),
    }
    let Some(&branch) = comp.iter().find(|&&u| deg(u) == 3) else {
        return Ok((TypeLabel::A, k));
    };
    let mut arms: Vec<usize> = g
        .neighbors(branch)
        .into_iter()
        .filter(|v| comp.contains(v))
        .map(|first| {
            let (mut prev, mut cur, mut len) = (branch, first, 1);
            loop {
                let next: Vec<Node> = g
                    .neighbors(cur)
                    .into_iter()
                    .filter(|v| comp.contains(v) && *v != prev)
                    .collect();
                match next.as_slice() {
                    [v] => {
                        (prev, cur) = (cur, *v);
                        len += 1;
                    }
                    _ => break len,
                }
            }
        })
        .collect();
    arms.sort_unstable();
    match arms.as_slice() {
        [1, 1, m] => Ok((TypeLabel::D, m + 3)),
        [1, 2, 2] => Ok((TypeLabel::E, 6)),
        [1, 2, 3] => Ok((TypeLabel::E, 7)),
        [1, 2, 4] => Ok((TypeLabel::E, 8)),
        _ => Err(Error::InfiniteParabolic),
    }
}

fn degree_product(types: &[(TypeLabel, usize)]) -> Result<IntPolynomial> {
    let mut p = IntPolynomial::one();
    for &(t, n) in types {
        for d in degrees_of(t, n)? {
            p = p.mul(&IntPolynomial::t_integer(d as usize));
        }
    }
    Ok(p)
}

/// Levi factor data of an I-minimal λ.
pub fn levi_data(lam: &CorootElement, nodes: &[Node]) -> Result<LeviData> {
    if !i_minimal(lam, nodes) {
        return Err(Error::NotIMinimal);
    }
    let mut set: Vec<Node> = nodes.to_vec();
    set.sort();
    set.dedup();
    let zero_nodes: Vec<Node> = set.iter().copied().filter(|&s| lam.node_value(s) == 0).collect();
    let num = degree_product(&subdiagram_types(lam.rs(), &set)?)?;
    let den = degree_product(&subdiagram_types(lam.rs(), &zero_nodes)?)?;
    let levi = num.div_exact(&den).ok_or(Error::Overflow)?;
    let orbit = levi.shift(lam.length_s() as usize);
    Ok(LeviData { zero_nodes, levi, orbit })
}
