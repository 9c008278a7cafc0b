//! Tree-monomial model of the free operad on one graded n-ary generator.
//!
//! A basis element of the free operad is a planar rooted tree whose internal
//! vertices all have exactly `arity` children, together with a bijective
//! labelling of its leaves. Grafting a tree into a leaf slot realizes the
//! comp-i operations; when the generator sits in homological degree 1 the
//! grafting carries a Koszul sign.
//!
//! Sign convention: the generator occurrences of a monomial are ordered by
//! preorder (root first, children left to right). Grafting an element of
//! total degree d into a leaf slot multiplies by (-1)^(d*w), where w is the
//! total degree of the generator occurrences strictly after that leaf in
//! preorder. All downstream dual and generating-function computations are
//! checked against this convention.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::{binomial, Int, Rat};

/// Sigma-module type of the generator. Only the regular representation is
/// supported; the enum exists so rejection is explicit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Symmetry {
    Regular,
}

/// One n-ary generator with a homological degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GeneratorSpec {
    arity: u32,
    degree: u32,
    symmetry: Symmetry,
}

impl GeneratorSpec {
    pub fn new(arity: u32, degree: u32) -> Result<Self> {
        if arity < 2 {
            return Err(Error::ArityTooSmall(arity));
        }
        if degree > 1 {
            return Err(Error::UnsupportedDegree(degree));
        }
        Ok(GeneratorSpec {
            arity,
            degree,
            symmetry: Symmetry::Regular,
        })
    }

    pub fn arity(&self) -> u32 {
        self.arity
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn symmetry(&self) -> Symmetry {
        self.symmetry
    }

    /// Arity of the component containing k generator occurrences.
    pub fn component_arity(&self, k: u32) -> u32 {
        k * (self.arity - 1) + 1
    }

    /// Number of generator occurrences in the component of arity `m`, if
    /// `m` is admissible.
    pub fn tree_degree(&self, m: u32) -> Result<u32> {
        if m >= 1 && (m - 1) % (self.arity - 1) == 0 {
            Ok((m - 1) / (self.arity - 1))
        } else {
            Err(Error::InadmissibleArity {
                arity: m,
                n: self.arity,
            })
        }
    }
}

/// Planar tree node: internal vertices carry exactly `arity` children.
/// `Internal` sorts before `Leaf` so that derived ordering agrees with the
/// lexicographic order of the serialization (`'('` < `'*'`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
enum Node {
    Internal(Vec<Node>),
    Leaf,
}

impl Node {
    fn internal_count(&self) -> u32 {
        match self {
            Node::Leaf => 0,
            Node::Internal(children) => 1 + children.iter().map(Node::internal_count).sum::<u32>(),
        }
    }

    fn leaf_count(&self) -> u32 {
        match self {
            Node::Leaf => 1,
            Node::Internal(children) => children.iter().map(Node::leaf_count).sum(),
        }
    }

    /// Replace the `target`-th leaf (1-based, left to right) with `sub`.
    fn graft(&self, target: u32, sub: &Node) -> Node {
        fn go(node: &Node, seen: &mut u32, target: u32, sub: &Node) -> Node {
            match node {
                Node::Leaf => {
                    *seen += 1;
                    if *seen == target {
                        sub.clone()
                    } else {
                        Node::Leaf
                    }
                }
                Node::Internal(children) => {
                    Node::Internal(children.iter().map(|c| go(c, seen, target, sub)).collect())
                }
            }
        }
        let mut seen = 0;
        go(self, &mut seen, target, sub)
    }

    /// Internal vertices strictly after the `target`-th leaf in preorder.
    fn internals_after_leaf(&self, target: u32) -> u32 {
        fn go(node: &Node, seen: &mut u32, target: u32, count: &mut u32) {
            match node {
                Node::Leaf => *seen += 1,
                Node::Internal(children) => {
                    if *seen >= target {
                        *count += 1;
                    }
                    for c in children {
                        go(c, seen, target, count);
                    }
                }
            }
        }
        let mut seen = 0;
        let mut count = 0;
        go(self, &mut seen, target, &mut count);
        count
    }

    fn write(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Node::Leaf => write!(f, "*"),
            Node::Internal(children) => {
                write!(f, "(")?;
                for (i, c) in children.iter().enumerate() {
                    if i > 0 {
                        write!(f, " ")?;
                    }
                    c.write(f)?;
                }
                write!(f, ")")
            }
        }
    }
}

/// Shape of a tree monomial: the planar tree without leaf labels.
///
/// Shapes compare by their canonical serialization; `enumerate_shapes`
/// returns them in that order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TreeShape {
    arity: u32,
    node: Node,
}

impl TreeShape {
    /// The unit tree: a bare leaf, zero generator occurrences.
    pub fn unit(arity: u32) -> TreeShape {
        TreeShape {
            arity,
            node: Node::Leaf,
        }
    }

    /// A single generator occurrence.
    pub fn corolla(arity: u32) -> TreeShape {
        TreeShape {
            arity,
            node: Node::Internal(vec![Node::Leaf; arity as usize]),
        }
    }

    /// Internal vertex with the given subtrees. Child count must equal the
    /// generator arity, and all children must use the same arity.
    pub fn internal(arity: u32, children: Vec<TreeShape>) -> Result<TreeShape> {
        if children.len() != arity as usize {
            return Err(Error::ArityMismatch {
                expected: arity,
                got: children.len() as u32,
            });
        }
        if let Some(bad) = children.iter().find(|c| c.arity != arity) {
            return Err(Error::ArityMismatch {
                expected: arity,
                got: bad.arity,
            });
        }
        Ok(TreeShape {
            arity,
            node: Node::Internal(children.into_iter().map(|c| c.node).collect()),
        })
    }

    pub fn generator_arity(&self) -> u32 {
        self.arity
    }

    pub fn is_unit(&self) -> bool {
        matches!(self.node, Node::Leaf)
    }

    /// Number of generator occurrences (internal vertices).
    pub fn internal_count(&self) -> u32 {
        self.node.internal_count()
    }

    /// Number of leaves; always `k*(arity-1)+1` for k internal vertices.
    pub fn leaf_count(&self) -> u32 {
        self.node.leaf_count()
    }

    /// Graft `sub` into the `pos`-th leaf (1-based, left to right).
    pub fn graft(&self, pos: u32, sub: &TreeShape) -> Result<TreeShape> {
        if pos == 0 || pos > self.leaf_count() {
            return Err(Error::SlotOutOfRange {
                slot: pos,
                arity: self.leaf_count(),
            });
        }
        Ok(TreeShape {
            arity: self.arity,
            node: self.node.graft(pos, &sub.node),
        })
    }

    /// Internal vertices strictly after the `pos`-th leaf in preorder.
    pub fn internals_after_leaf(&self, pos: u32) -> u32 {
        self.node.internals_after_leaf(pos)
    }
}

impl fmt::Display for TreeShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.node.write(f)
    }
}

/// All shapes with exactly `k` internal `arity`-ary vertices, in canonical
/// serialization order. The count is the Fuss-Catalan number
/// `C(arity*k, k) / ((arity-1)*k + 1)`.
pub fn enumerate_shapes(arity: u32, k: u32) -> Result<Vec<TreeShape>> {
    if arity < 2 {
        return Err(Error::ArityTooSmall(arity));
    }
    if k == 0 {
        return Err(Error::InvalidVertexCount(k as i64));
    }
    let mut nodes = gen_nodes(arity, k);
    nodes.sort_unstable();
    Ok(nodes
        .into_iter()
        .map(|node| TreeShape { arity, node })
        .collect())
}

fn gen_nodes(arity: u32, k: u32) -> Vec<Node> {
    if k == 0 {
        return vec![Node::Leaf];
    }
    let mut out = Vec::new();
    for comp in compositions(k - 1, arity) {
        let child_lists: Vec<Vec<Node>> = comp.iter().map(|&kj| gen_nodes(arity, kj)).collect();
        let mut acc: Vec<Vec<Node>> = vec![Vec::new()];
        for list in &child_lists {
            let mut next = Vec::with_capacity(acc.len() * list.len());
            for prefix in &acc {
                for item in list {
                    let mut row = prefix.clone();
                    row.push(item.clone());
                    next.push(row);
                }
            }
            acc = next;
        }
        out.extend(acc.into_iter().map(Node::Internal));
    }
    out
}

/// All ways to write `total` as an ordered sum of `parts` nonnegative
/// integers, lexicographically.
pub(crate) fn compositions(total: u32, parts: u32) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Fuss-Catalan count of `k`-vertex shapes: `C(arity*k, k) / ((arity-1)*k+1)`.
pub fn fuss_catalan(arity: u32, k: u32) -> Int {
    binomial(arity as u64 * k as u64, k as u64) / Int::from((arity as u64 - 1) * k as u64 + 1)
}

/// Permutation of {1..m}, stored as the image list.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(m: u32) -> Permutation {
        Permutation {
            images: (1..=m).collect(),
        }
    }

    pub fn from_images(images: Vec<u32>) -> Result<Permutation> {
        let m = images.len() as u32;
        let mut seen = vec![false; m as usize];
        for &v in &images {
            if v == 0 || v > m || seen[(v - 1) as usize] {
                return Err(Error::LabelsNotPermutation { expected: m });
            }
            seen[(v - 1) as usize] = true;
        }
        Ok(Permutation { images })
    }

    /// Transposition of `i` and `i+1` inside {1..m}.
    pub fn adjacent_transposition(m: u32, i: u32) -> Permutation {
        let mut images: Vec<u32> = (1..=m).collect();
        images.swap((i - 1) as usize, i as usize);
        Permutation { images }
    }

    pub fn size(&self) -> u32 {
        self.images.len() as u32
    }

    pub fn apply(&self, i: u32) -> u32 {
        self.images[(i - 1) as usize]
    }

    pub fn images(&self) -> &[u32] {
        &self.images
    }

    /// `self` followed by `other`: (self.and_then(other))(i) = other(self(i)).
    pub fn and_then(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: self.images.iter().map(|&v| other.apply(v)).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0u32; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            images[(v - 1) as usize] = i as u32 + 1;
        }
        Permutation { images }
    }

    pub fn sign(&self) -> i32 {
        let mut sign = 1;
        let mut seen = vec![false; self.images.len()];
        for start in 0..self.images.len() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut cur = start;
            while !seen[cur] {
                seen[cur] = true;
                cur = (self.images[cur] - 1) as usize;
                len += 1;
            }
            if len % 2 == 0 {
                sign = -sign;
            }
        }
        sign
    }

    /// Rank in lexicographic order of all permutations of the same size.
    pub fn lex_rank(&self) -> usize {
        let m = self.images.len();
        let mut rank = 0usize;
        let mut fact = (1..m).product::<usize>().max(1);
        let mut remaining: Vec<u32> = (1..=m as u32).collect();
        for (i, &v) in self.images.iter().enumerate() {
            let pos = remaining.iter().position(|&r| r == v).unwrap();
            rank += pos * fact;
            remaining.remove(pos);
            if i + 1 < m {
                fact /= m - 1 - i;
            }
        }
        rank
    }

    pub fn from_lex_rank(m: u32, mut rank: usize) -> Permutation {
        let mut fact = (1..m as usize).product::<usize>().max(1);
        let mut remaining: Vec<u32> = (1..=m).collect();
        let mut images = Vec::with_capacity(m as usize);
        for i in 0..m as usize {
            let pos = rank / fact;
            rank %= fact;
            images.push(remaining.remove(pos));
            if i + 1 < m as usize {
                fact /= m as usize - 1 - i;
            }
        }
        Permutation { images }
    }

    /// All permutations of {1..m} in lexicographic order.
    pub fn all(m: u32) -> Vec<Permutation> {
        let total: usize = (1..=m as usize).product::<usize>().max(1);
        (0..total).map(|r| Permutation::from_lex_rank(m, r)).collect()
    }
}

/// Sign of a label list read as the permutation p -> labels[p].
pub(crate) fn labels_sign(labels: &[u32]) -> i32 {
    Permutation {
        images: labels.to_vec(),
    }
    .sign()
}

pub(crate) fn labels_lex_rank(labels: &[u32]) -> usize {
    Permutation {
        images: labels.to_vec(),
    }
    .lex_rank()
}

/// Basis element of the free operad: a shape with leaf labels, read left to
/// right on the planar tree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TreeMonomial {
    shape: TreeShape,
    labels: Vec<u32>,
}

impl TreeMonomial {
    pub fn new(shape: TreeShape, labels: Vec<u32>) -> Result<TreeMonomial> {
        let m = shape.leaf_count();
        if labels.len() as u32 != m {
            return Err(Error::LabelsNotPermutation { expected: m });
        }
        Permutation::from_images(labels.clone())?;
        Ok(TreeMonomial { shape, labels })
    }

    /// Shape with the identity labelling 1..m.
    pub fn identity(shape: TreeShape) -> TreeMonomial {
        let labels = (1..=shape.leaf_count()).collect();
        TreeMonomial { shape, labels }
    }

    /// The operad unit: a bare leaf labelled 1.
    pub fn unit(arity: u32) -> TreeMonomial {
        TreeMonomial::identity(TreeShape::unit(arity))
    }

    pub fn shape(&self) -> &TreeShape {
        &self.shape
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn arity(&self) -> u32 {
        self.labels.len() as u32
    }

    pub fn internal_count(&self) -> u32 {
        self.shape.internal_count()
    }

    fn relabel(&self, map: impl Fn(u32) -> u32) -> TreeMonomial {
        TreeMonomial {
            shape: self.shape.clone(),
            labels: self.labels.iter().map(|&l| map(l)).collect(),
        }
    }
}

impl fmt::Display for TreeMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn go(node: &Node, labels: &[u32], next: &mut usize, f: &mut fmt::Formatter<'_>) -> fmt::Result {
            match node {
                Node::Leaf => {
                    let l = labels[*next];
                    *next += 1;
                    write!(f, "x{l}")
                }
                Node::Internal(children) => {
                    write!(f, "(")?;
                    for (i, c) in children.iter().enumerate() {
                        if i > 0 {
                            write!(f, " ")?;
                        }
                        go(c, labels, next, f)?;
                    }
                    write!(f, ")")
                }
            }
        }
        let mut next = 0;
        go(&self.shape.node, &self.labels, &mut next, f)
    }
}

/// Finite rational linear combination of tree monomials of one arity.
/// Zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Element {
    arity: u32,
    terms: BTreeMap<TreeMonomial, Rat>,
}

impl Element {
    pub fn zero(arity: u32) -> Element {
        Element {
            arity,
            terms: BTreeMap::new(),
        }
    }

    pub fn monomial(mono: TreeMonomial) -> Element {
        let mut terms = BTreeMap::new();
        let arity = mono.arity();
        terms.insert(mono, Rat::from_integer(1.into()));
        Element { arity, terms }
    }

    pub fn from_terms<I>(arity: u32, terms: I) -> Result<Element>
    where
        I: IntoIterator<Item = (TreeMonomial, Rat)>,
    {
        let mut e = Element::zero(arity);
        for (mono, coeff) in terms {
            if mono.arity() != arity {
                return Err(Error::ArityMismatch {
                    expected: arity,
                    got: mono.arity(),
                });
            }
            e.add_term(mono, coeff);
        }
        Ok(e)
    }

    pub fn arity(&self) -> u32 {
        self.arity
    }

    pub fn terms(&self) -> impl Iterator<Item = (&TreeMonomial, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, mono: &TreeMonomial) -> Rat {
        self.terms.get(mono).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add_term(&mut self, mono: TreeMonomial, coeff: Rat) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coeff;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Element) -> Result<Element> {
        if self.arity != other.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                got: other.arity,
            });
        }
        let mut out = self.clone();
        for (mono, coeff) in &other.terms {
            out.add_term(mono.clone(), coeff.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Element) -> Result<Element> {
        self.add(&other.scale(&Rat::from_integer((-1).into())))
    }

    pub fn scale(&self, c: &Rat) -> Element {
        if c.is_zero() {
            return Element::zero(self.arity);
        }
        Element {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v * c))
                .collect(),
        }
    }

    /// Common generator-occurrence count of all monomials, if homogeneous.
    pub fn homogeneous_tree_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys();
        let first = it.next()?.internal_count();
        if it.all(|m| m.internal_count() == first) {
            Some(first)
        } else {
            None
        }
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let one = Rat::from_integer(1.into());
        for (i, (mono, coeff)) in self.terms.iter().enumerate() {
            let negative = coeff < &Rat::zero();
            let abs = if negative { -coeff.clone() } else { coeff.clone() };
            if i == 0 {
                if negative {
                    write!(f, "- ")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if abs != one {
                write!(f, "{abs} * ")?;
            }
            write!(f, "{mono}")?;
        }
        Ok(())
    }
}

/// Grafting of `b` into input `slot` of `a`, bilinearly, with the Koszul
/// sign when the generator has degree 1.
pub fn compose_i(gen: &GeneratorSpec, a: &Element, slot: u32, b: &Element) -> Result<Element> {
    if slot == 0 || slot > a.arity() {
        return Err(Error::SlotOutOfRange {
            slot,
            arity: a.arity(),
        });
    }
    let out_arity = a.arity() + b.arity() - 1;
    let mut out = Element::zero(out_arity);
    for (ma, ca) in &a.terms {
        for (mb, cb) in &b.terms {
            let (mono, sign) = compose_mono(gen, ma, slot, mb);
            let mut coeff = ca * cb;
            if sign < 0 {
                coeff = -coeff;
            }
            out.add_term(mono, coeff);
        }
    }
    Ok(out)
}

fn compose_mono(
    gen: &GeneratorSpec,
    a: &TreeMonomial,
    slot: u32,
    b: &TreeMonomial,
) -> (TreeMonomial, i32) {
    let pos = a
        .labels
        .iter()
        .position(|&l| l == slot)
        .expect("labels form a permutation, so the slot appears") as u32
        + 1;
    let sign = if gen.degree() == 1 {
        let after = a.shape.internals_after_leaf(pos);
        if (b.internal_count() * after) % 2 == 1 {
            -1
        } else {
            1
        }
    } else {
        1
    };
    let shape = a
        .shape
        .graft(pos, &b.shape)
        .expect("position comes from the label scan");
    let q = b.arity();
    let mut labels = Vec::with_capacity((a.arity() + q - 1) as usize);
    let adjust = |l: u32| if l < slot { l } else { l + q - 1 };
    for (idx, &l) in a.labels.iter().enumerate() {
        if idx as u32 + 1 == pos {
            labels.extend(b.labels.iter().map(|&lb| lb + slot - 1));
        } else {
            labels.push(adjust(l));
        }
    }
    (TreeMonomial { shape, labels }, sign)
}

/// Right action of the symmetric group on leaf labels: every label l is
/// replaced by sigma(l). `act(sigma, e)` then `act(tau, ..)` equals acting
/// by `sigma.and_then(tau)` in one step.
pub fn act(sigma: &Permutation, e: &Element) -> Result<Element> {
    if sigma.size() != e.arity() {
        return Err(Error::PermutationSizeMismatch {
            expected: e.arity(),
            got: sigma.size(),
        });
    }
    let mut out = Element::zero(e.arity());
    for (mono, coeff) in &e.terms {
        out.add_term(mono.relabel(|l| sigma.apply(l)), coeff.clone());
    }
    Ok(out)
}
