//! Symbolic circle product on multilinear operations.
//!
//! Cochains are rational combinations of composites built from named
//! operation symbols with declared arities; equality is symbolic. The circle
//! product inserts an m-ary cochain into every slot of an n-ary one with the
//! sign (-1)^((i-1)*(m-1)), which is where partial associativity comes from:
//! the defect of an n-ary multiplication is circle(mu, mu).

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::Rat;
use crate::trees::{Element, GeneratorSpec, TreeMonomial, TreeShape};

/// Named operation symbol with a fixed arity.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OpSymbol {
    name: String,
    arity: u32,
}

impl OpSymbol {
    pub fn new(name: impl Into<String>, arity: u32) -> OpSymbol {
        OpSymbol {
            name: name.into(),
            arity,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn arity(&self) -> u32 {
        self.arity
    }
}

/// Composite of operation symbols with numbered inputs at the leaves.
/// `Apply` sorts before `Leaf`, matching the canonical order of tree shapes.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum SymTree {
    Apply { op: OpSymbol, args: Vec<SymTree> },
    Leaf(u32),
}

impl SymTree {
    fn leaf_count(&self) -> u32 {
        match self {
            SymTree::Leaf(_) => 1,
            SymTree::Apply { args, .. } => args.iter().map(SymTree::leaf_count).sum(),
        }
    }

    fn relabel(&self, map: &impl Fn(u32) -> u32) -> SymTree {
        match self {
            SymTree::Leaf(l) => SymTree::Leaf(map(*l)),
            SymTree::Apply { op, args } => SymTree::Apply {
                op: op.clone(),
                args: args.iter().map(|a| a.relabel(map)).collect(),
            },
        }
    }

    /// Replace the leaf labelled `slot` by `sub` relabelled into its block,
    /// shifting the remaining labels.
    fn graft(&self, slot: u32, sub: &SymTree, sub_arity: u32) -> SymTree {
        match self {
            SymTree::Leaf(l) => {
                if *l == slot {
                    sub.relabel(&|x| x + slot - 1)
                } else if *l < slot {
                    SymTree::Leaf(*l)
                } else {
                    SymTree::Leaf(*l + sub_arity - 1)
                }
            }
            SymTree::Apply { op, args } => SymTree::Apply {
                op: op.clone(),
                args: args.iter().map(|a| a.graft(slot, sub, sub_arity)).collect(),
            },
        }
    }
}

impl fmt::Display for SymTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SymTree::Leaf(l) => write!(f, "x{l}"),
            SymTree::Apply { op, args } => {
                write!(f, "{}(", op.name)?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// Rational combination of symbolic composites of one arity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cochain {
    arity: u32,
    terms: BTreeMap<SymTree, Rat>,
}

impl Cochain {
    pub fn zero(arity: u32) -> Cochain {
        Cochain {
            arity,
            terms: BTreeMap::new(),
        }
    }

    /// The bare symbol applied to inputs 1..arity in order.
    pub fn symbol(op: &OpSymbol) -> Cochain {
        let args = (1..=op.arity).map(SymTree::Leaf).collect();
        let mut terms = BTreeMap::new();
        terms.insert(
            SymTree::Apply {
                op: op.clone(),
                args,
            },
            Rat::from_integer(1.into()),
        );
        Cochain {
            arity: op.arity,
            terms,
        }
    }

    pub fn arity(&self) -> u32 {
        self.arity
    }

    pub fn terms(&self) -> impl Iterator<Item = (&SymTree, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn add_term(&mut self, tree: SymTree, coeff: Rat) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(tree) {
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
}

impl fmt::Display for Cochain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let one = Rat::from_integer(1.into());
        for (i, (tree, coeff)) in self.terms.iter().enumerate() {
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
            write!(f, "{tree}")?;
        }
        Ok(())
    }
}

/// Circle product of an n-ary cochain with an m-ary one:
/// sum over slots i of (-1)^((i-1)*(m-1)) times the insertion of `g` into
/// slot i of `f`. The result has arity n + m - 1.
pub fn circle(f: &Cochain, g: &Cochain) -> Cochain {
    let n = f.arity();
    let m = g.arity();
    let mut out = Cochain::zero(n + m - 1);
    for slot in 1..=n {
        let negative = ((slot - 1) * (m - 1)) % 2 == 1;
        for (tf, cf) in &f.terms {
            for (tg, cg) in &g.terms {
                let mut coeff = cf * cg;
                if negative {
                    coeff = -coeff;
                }
                out.add_term(tf.graft(slot, tg, m), coeff);
            }
        }
    }
    out
}

/// Defect of partial associativity for one n-ary generator: circle(mu, mu)
/// expressed as a free-operad element.
pub fn partial_assoc_defect(gen: &GeneratorSpec) -> Element {
    let mu = OpSymbol::new("mu", gen.arity());
    let c = circle(&Cochain::symbol(&mu), &Cochain::symbol(&mu));
    cochain_to_element(gen, &c).expect("a square of one symbol converts")
}

/// Convert a cochain written in a single symbol of the generator's arity
/// into a free-operad element.
pub fn cochain_to_element(gen: &GeneratorSpec, c: &Cochain) -> Result<Element> {
    fn build(gen: &GeneratorSpec, tree: &SymTree, labels: &mut Vec<u32>) -> Result<TreeShape> {
        match tree {
            SymTree::Leaf(l) => {
                labels.push(*l);
                Ok(TreeShape::unit(gen.arity()))
            }
            SymTree::Apply { op, args } => {
                if op.arity() != gen.arity() {
                    return Err(Error::MixedCochain {
                        expected: gen.arity(),
                    });
                }
                let children = args
                    .iter()
                    .map(|a| build(gen, a, labels))
                    .collect::<Result<Vec<_>>>()?;
                TreeShape::internal(gen.arity(), children)
            }
        }
    }
    let mut out = Element::zero(c.arity());
    for (tree, coeff) in &c.terms {
        let mut labels = Vec::with_capacity(tree.leaf_count() as usize);
        let shape = build(gen, tree, &mut labels)?;
        out.add_term(TreeMonomial::new(shape, labels)?, coeff.clone());
    }
    Ok(out)
}
