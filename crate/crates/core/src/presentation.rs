//! Quadratic presentations and everything computed from them: relation
//! modules, ideal slices, component dimensions, one-variable (shape-level)
//! dimensions, generating functions, and the tensor-compatibility check.
//!
//! Two computation routes coexist. The full multilinear route works in the
//! component basis (shape, leaf labelling) and is exact but factorially
//! large, so it is guarded by a resource bound. The one-variable route
//! collapses leaf labels, i.e. works in the free algebra on a single
//! generator; for the regular generator the full dimension factors as the
//! shape-level dimension times m!, and the factorization is asserted in the
//! test suite wherever both routes run.

use std::collections::HashMap;

use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::gerstenhaber::partial_assoc_defect;
use crate::linalg::{RowSpan, SparseVec, SpanBasis};
use crate::rational::{factorial, Int, Rat};
use crate::series::PowerSeries;
use crate::trees::{
    compose_i, compositions, enumerate_shapes, fuss_catalan, labels_lex_rank, Element,
    GeneratorSpec, Permutation, TreeMonomial, TreeShape,
};

/// Largest multilinear component dimension the full route will touch.
pub const DEFAULT_FULL_BOUND: u64 = 5000;

/// Generator data plus quadratic relations.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadraticPresentation {
    name: String,
    generator: GeneratorSpec,
    generator_name: String,
    relations: Vec<Element>,
}

impl QuadraticPresentation {
    /// Relations must live in arity 2n-1 and be homogeneous of tree degree 2.
    pub fn new(
        name: impl Into<String>,
        generator: GeneratorSpec,
        generator_name: impl Into<String>,
        relations: Vec<Element>,
    ) -> Result<QuadraticPresentation> {
        let expected = 2 * generator.arity() - 1;
        let mut kept = Vec::new();
        for rel in relations {
            if rel.is_zero() {
                continue;
            }
            if rel.arity() != expected {
                return Err(Error::RelationArity {
                    expected,
                    got: rel.arity(),
                });
            }
            for (mono, _) in rel.terms() {
                if mono.internal_count() != 2 {
                    return Err(Error::NotQuadratic(mono.internal_count()));
                }
            }
            kept.push(rel);
        }
        Ok(QuadraticPresentation {
            name: name.into(),
            generator,
            generator_name: generator_name.into(),
            relations: kept,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn generator(&self) -> &GeneratorSpec {
        &self.generator
    }

    pub fn generator_name(&self) -> &str {
        &self.generator_name
    }

    pub fn relations(&self) -> &[Element] {
        &self.relations
    }
}

fn corolla_element(gen: &GeneratorSpec) -> Element {
    Element::monomial(TreeMonomial::identity(TreeShape::corolla(gen.arity())))
}

/// Builtin presentations.
///
/// * `nAss(n)`: one n-ary partially associative relation, the defect of the
///   circle square of the generator (all quadratic shapes with signs
///   (-1)^((i-1)(n-1))).
/// * `ntAss(n)`: total associativity, the n-1 pairwise equalities of the
///   quadratic shapes.
/// * `3Ass`, `3tAss`, `Ass` are the ternary and binary shorthands.
pub fn builtin_presentation(name: &str) -> Result<QuadraticPresentation> {
    fn parse_n(inner: &str, full: &str) -> Result<u32> {
        inner
            .parse::<u32>()
            .ok()
            .filter(|&n| (2..=64).contains(&n))
            .ok_or_else(|| Error::UnknownBuiltin(full.to_string()))
    }
    let (n, totally, display_name) = if name == "3Ass" {
        (3, false, "3Ass".to_string())
    } else if name == "3tAss" {
        (3, true, "3tAss".to_string())
    } else if name == "Ass" {
        (2, false, "Ass".to_string())
    } else if let Some(inner) = name.strip_prefix("nAss(").and_then(|s| s.strip_suffix(')')) {
        let n = parse_n(inner, name)?;
        (n, false, format!("nAss_{n}"))
    } else if let Some(inner) = name.strip_prefix("ntAss(").and_then(|s| s.strip_suffix(')')) {
        let n = parse_n(inner, name)?;
        (n, true, format!("ntAss_{n}"))
    } else {
        return Err(Error::UnknownBuiltin(name.to_string()));
    };
    let gen = GeneratorSpec::new(n, 0)?;
    let relations = if totally {
        let c = corolla_element(&gen);
        (1..n)
            .map(|i| {
                let a = compose_i(&gen, &c, i, &c)?;
                let b = compose_i(&gen, &c, i + 1, &c)?;
                a.sub(&b)
            })
            .collect::<Result<Vec<_>>>()?
    } else {
        vec![partial_assoc_defect(&gen)]
    };
    QuadraticPresentation::new(display_name, gen, "mu", relations)
}

/// Exact dimension of the free component in arity k(n-1)+1.
pub fn free_component_dim(gen: &GeneratorSpec, k: u32) -> Int {
    if k == 0 {
        return Int::from(1);
    }
    fuss_catalan(gen.arity(), k) * factorial(gen.component_arity(k))
}

fn ensure_within_bound(gen: &GeneratorSpec, k: u32, bound: u64) -> Result<usize> {
    let dim = free_component_dim(gen, k);
    if dim > Int::from(bound) {
        return Err(Error::ResourceBound {
            arity: gen.component_arity(k),
            dim: dim.to_u128().unwrap_or(u128::MAX),
            bound,
        });
    }
    Ok(dim.to_usize().expect("bounded above by a u64"))
}

/// Indexed basis of the full multilinear component with k generator
/// occurrences: coordinates are (shape index) * m! + (labelling rank).
pub(crate) struct ComponentBasis {
    arity: u32,
    shapes: Vec<TreeShape>,
    shape_index: HashMap<TreeShape, usize>,
    fact: usize,
}

impl ComponentBasis {
    pub(crate) fn new(gen: &GeneratorSpec, k: u32, bound: u64) -> Result<ComponentBasis> {
        ensure_within_bound(gen, k, bound)?;
        let shapes = enumerate_shapes(gen.arity(), k)?;
        let arity = gen.component_arity(k);
        let fact = factorial(arity).to_usize().expect("within the bound");
        let shape_index = shapes
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, s)| (s, i))
            .collect();
        Ok(ComponentBasis {
            arity,
            shapes,
            shape_index,
            fact,
        })
    }

    pub(crate) fn dim(&self) -> usize {
        self.shapes.len() * self.fact
    }

    pub(crate) fn fact(&self) -> usize {
        self.fact
    }

    pub(crate) fn arity(&self) -> u32 {
        self.arity
    }

    pub(crate) fn index_of(&self, mono: &TreeMonomial) -> usize {
        let s = self.shape_index[mono.shape()];
        s * self.fact + labels_lex_rank(mono.labels())
    }

    pub(crate) fn monomial_at(&self, idx: usize) -> TreeMonomial {
        let shape = self.shapes[idx / self.fact].clone();
        let labels = Permutation::from_lex_rank(self.arity, idx % self.fact)
            .images()
            .to_vec();
        TreeMonomial::new(shape, labels).expect("ranks produce valid labellings")
    }

    pub(crate) fn element_to_vec(&self, e: &Element) -> SparseVec {
        SparseVec::from_entries(e.terms().map(|(m, c)| (self.index_of(m), c.clone())))
    }

    pub(crate) fn vec_to_element(&self, v: &SparseVec) -> Element {
        Element::from_terms(
            self.arity,
            v.iter().map(|(i, c)| (self.monomial_at(i), c.clone())),
        )
        .expect("basis indices are of this arity")
    }

    /// Coordinate permutations induced by the adjacent transpositions, which
    /// generate the symmetric group action on the component.
    pub(crate) fn transposition_maps(&self) -> Vec<Vec<usize>> {
        let m = self.arity;
        (1..m)
            .map(|i| {
                let tau = Permutation::adjacent_transposition(m, i);
                (0..self.dim())
                    .map(|idx| {
                        let mono = self.monomial_at(idx);
                        let relabeled: Vec<u32> =
                            mono.labels().iter().map(|&l| tau.apply(l)).collect();
                        (idx / self.fact) * self.fact + labels_lex_rank(&relabeled)
                    })
                    .collect()
            })
            .collect()
    }
}

/// Insert `seed` and close the span under the coordinate action of the
/// symmetric group, given the transposition coordinate maps.
fn extend_orbit(span: &mut RowSpan, maps: &[Vec<usize>], seed: SparseVec) {
    let mut frontier = Vec::new();
    if span.insert(seed.clone()).is_some() {
        frontier.push(seed);
    }
    while !frontier.is_empty() && !span.is_full() {
        let mut next = Vec::new();
        for v in &frontier {
            for map in maps {
                let w = v.permute_indices(map);
                if span.insert(w.clone()).is_some() {
                    next.push(w);
                }
            }
        }
        frontier = next;
    }
}

fn sigma_closure(basis: &ComponentBasis, seeds: impl IntoIterator<Item = SparseVec>) -> RowSpan {
    let maps = basis.transposition_maps();
    let mut span = RowSpan::new(basis.dim());
    for seed in seeds {
        if span.is_full() {
            break;
        }
        extend_orbit(&mut span, &maps, seed);
    }
    span
}

/// Symmetric-group closure of the relation span inside the quadratic
/// component, row-reduced.
pub fn relation_module(p: &QuadraticPresentation) -> Result<SpanBasis> {
    Ok(relation_module_span(p, DEFAULT_FULL_BOUND)?.1.into_basis())
}

fn relation_module_span(
    p: &QuadraticPresentation,
    bound: u64,
) -> Result<(ComponentBasis, RowSpan)> {
    let basis = ComponentBasis::new(p.generator(), 2, bound)?;
    let seeds: Vec<SparseVec> = p
        .relations()
        .iter()
        .map(|r| basis.element_to_vec(r))
        .collect();
    let span = sigma_closure(&basis, seeds);
    Ok((basis, span))
}

/// A small set of relations generating the same symmetric-group module as
/// the full relation list. Used to keep instance enumeration proportional
/// to the module, not to the relation count.
fn effective_generators(p: &QuadraticPresentation) -> Result<Vec<Element>> {
    if p.relations().len() <= 8 {
        return Ok(p.relations().to_vec());
    }
    let basis = match ComponentBasis::new(p.generator(), 2, DEFAULT_FULL_BOUND) {
        Ok(b) => b,
        // Too large to reduce; fall back to the full list.
        Err(Error::ResourceBound { .. }) => return Ok(p.relations().to_vec()),
        Err(e) => return Err(e),
    };
    let maps = basis.transposition_maps();
    let mut span = RowSpan::new(basis.dim());
    let mut gens = Vec::new();
    for rel in p.relations() {
        let v = basis.element_to_vec(rel);
        if !span.contains(&v) {
            gens.push(rel.clone());
            extend_orbit(&mut span, &maps, v);
        }
    }
    Ok(gens)
}

/// Arity-m components of the operadic ideal generated by the relations,
/// for every admissible m up to `max_k` occurrences, by inductive two-sided
/// grafting with symmetric-group closure at each step.
fn ideal_spans(
    p: &QuadraticPresentation,
    max_k: u32,
    bound: u64,
) -> Result<Vec<(ComponentBasis, RowSpan)>> {
    let gen = p.generator();
    let mut out: Vec<(ComponentBasis, RowSpan)> = Vec::new();
    for k in 2..=max_k {
        let basis = ComponentBasis::new(gen, k, bound)?;
        let seeds = if k == 2 {
            p.relations()
                .iter()
                .map(|r| basis.element_to_vec(r))
                .collect::<Vec<_>>()
        } else {
            let mut seeds = Vec::new();
            for (prev_basis, prev_span) in out.iter() {
                let k_prev = gen.tree_degree(prev_basis.arity())?;
                let k_extra = k - k_prev;
                let slice_elems: Vec<Element> = prev_span
                    .rows()
                    .map(|v| prev_basis.vec_to_element(v))
                    .collect();
                for t_shape in enumerate_shapes(gen.arity(), k_extra)? {
                    let t = Element::monomial(TreeMonomial::identity(t_shape));
                    for r in &slice_elems {
                        for slot in 1..=t.arity() {
                            seeds.push(basis.element_to_vec(&compose_i(gen, &t, slot, r)?));
                        }
                        for slot in 1..=r.arity() {
                            seeds.push(basis.element_to_vec(&compose_i(gen, r, slot, &t)?));
                        }
                    }
                }
            }
            seeds
        };
        let span = sigma_closure(&basis, seeds);
        out.push((basis, span));
    }
    Ok(out)
}

/// Arity-m component of the operadic ideal, row-reduced, under the default
/// resource bound.
pub fn ideal_slice(p: &QuadraticPresentation, m: u32) -> Result<SpanBasis> {
    ideal_slice_with_bound(p, m, DEFAULT_FULL_BOUND)
}

pub fn ideal_slice_with_bound(
    p: &QuadraticPresentation,
    m: u32,
    bound: u64,
) -> Result<SpanBasis> {
    let k = p.generator().tree_degree(m)?;
    if k < 2 {
        let dim = if k == 0 {
            1
        } else {
            ensure_within_bound(p.generator(), k, bound)?
        };
        return Ok(SpanBasis::empty(dim));
    }
    let spans = ideal_spans(p, k, bound)?;
    let (_, span) = spans.into_iter().last().expect("k >= 2 computed");
    Ok(span.into_basis())
}

/// Full multilinear dimension of the operad component in arity m.
pub fn operad_dim(p: &QuadraticPresentation, m: u32) -> Result<u64> {
    operad_dim_with_bound(p, m, DEFAULT_FULL_BOUND)
}

pub fn operad_dim_with_bound(p: &QuadraticPresentation, m: u32, bound: u64) -> Result<u64> {
    let k = p.generator().tree_degree(m)?;
    if k == 0 {
        return Ok(1);
    }
    let free = ensure_within_bound(p.generator(), k, bound)? as u64;
    if k == 1 {
        return Ok(free);
    }
    let spans = ideal_spans(p, k, bound)?;
    let rank = spans.last().expect("k >= 2").1.rank() as u64;
    Ok(free - rank)
}

/// How a dimension was computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Full,
    ShapeLevel,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Full => "full",
            Method::ShapeLevel => "shape-level",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DimEntry {
    pub dim: u64,
    pub method: Method,
}

/// Map arity -> exact dimension with a per-arity method tag. Full entries
/// count the multilinear component; shape-level entries count the quotient
/// with all leaf labels identified.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OperadDims {
    generator: GeneratorSpec,
    entries: std::collections::BTreeMap<u32, DimEntry>,
}

impl OperadDims {
    pub fn new(generator: GeneratorSpec) -> OperadDims {
        OperadDims {
            generator,
            entries: Default::default(),
        }
    }

    pub fn generator(&self) -> &GeneratorSpec {
        &self.generator
    }

    pub fn insert(&mut self, arity: u32, dim: u64, method: Method) {
        debug_assert!(
            arity == 1 || (arity - 1) % (self.generator.arity() - 1) == 0,
            "arity keys must be admissible"
        );
        self.entries.insert(arity, DimEntry { dim, method });
    }

    pub fn get(&self, arity: u32) -> Option<&DimEntry> {
        self.entries.get(&arity)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, &DimEntry)> {
        self.entries.iter().map(|(a, e)| (*a, e))
    }

    pub fn max_arity(&self) -> Option<u32> {
        self.entries.keys().next_back().copied()
    }

    /// JSON object {arity: {dim, method}}.
    pub fn to_json(&self) -> serde_json::Value {
        let mut map = serde_json::Map::new();
        for (arity, entry) in &self.entries {
            map.insert(
                arity.to_string(),
                serde_json::json!({ "dim": entry.dim, "method": entry.method.as_str() }),
            );
        }
        serde_json::Value::Object(map)
    }
}

/// Shape-indexed basis of the one-variable (label-collapsed) component.
struct ShapeBasis {
    shapes: Vec<TreeShape>,
    index: HashMap<TreeShape, usize>,
}

impl ShapeBasis {
    fn new(gen: &GeneratorSpec, k: u32) -> Result<ShapeBasis> {
        let shapes = enumerate_shapes(gen.arity(), k)?;
        let index = shapes
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, s)| (s, i))
            .collect();
        Ok(ShapeBasis { shapes, index })
    }

    fn dim(&self) -> usize {
        self.shapes.len()
    }

    fn collapse(&self, e: &Element) -> SparseVec {
        SparseVec::from_entries(
            e.terms()
                .map(|(mono, c)| (self.index[mono.shape()], c.clone())),
        )
    }
}

fn lift(shape: &TreeShape) -> Element {
    Element::monomial(TreeMonomial::identity(shape.clone()))
}

/// Visit tuples of shapes drawn from per-slot lists; `f` returns false to
/// stop the enumeration.
fn for_each_tuple<'a>(
    lists: &[&'a [TreeShape]],
    chosen: &mut Vec<&'a TreeShape>,
    f: &mut impl FnMut(&[&TreeShape]) -> bool,
) -> bool {
    if chosen.len() == lists.len() {
        return f(chosen);
    }
    let depth = chosen.len();
    for shape in lists[depth] {
        chosen.push(shape);
        let keep_going = for_each_tuple(lists, chosen, f);
        chosen.pop();
        if !keep_going {
            return false;
        }
    }
    true
}

/// One-variable ideal spans I_k for k = 2..=max_k. I_k is spanned by the
/// label-collapsed substitution instances S[pos <- r(w_1, .., w_m)]: a
/// relation with shapes substituted into its inputs, grafted into a leaf of
/// an outer shape. Substitution is realized by iterated comp-i on lifted
/// identity-labelled elements, so the graded signs come from the one
/// composition convention.
fn one_variable_spans(p: &QuadraticPresentation, max_k: u32) -> Result<Vec<RowSpan>> {
    let gen = p.generator();
    let gens = effective_generators(p)?;
    let shapes_by_k: Vec<Vec<TreeShape>> = (0..=max_k.saturating_sub(2))
        .map(|k| {
            if k == 0 {
                Ok(vec![TreeShape::unit(gen.arity())])
            } else {
                enumerate_shapes(gen.arity(), k)
            }
        })
        .collect::<Result<Vec<_>>>()?;
    let mut spans = Vec::new();
    for k in 2..=max_k {
        let basis = ShapeBasis::new(gen, k)?;
        let mut span = RowSpan::new(basis.dim());
        'outer: for r in &gens {
            let m0 = r.arity();
            for outer_k in 0..=(k - 2) {
                let rem = k - 2 - outer_k;
                for outer_shape in &shapes_by_k[outer_k as usize] {
                    for pos in 1..=outer_shape.leaf_count() {
                        for comp in compositions(rem, m0) {
                            let lists: Vec<&[TreeShape]> = comp
                                .iter()
                                .map(|&kj| shapes_by_k[kj as usize].as_slice())
                                .collect();
                            let mut chosen = Vec::with_capacity(m0 as usize);
                            let mut failure: Option<Error> = None;
                            let keep_going = for_each_tuple(&lists, &mut chosen, &mut |ws| {
                                match instance(gen, r, ws, outer_shape, pos) {
                                    Ok(x) => {
                                        span.insert(basis.collapse(&x));
                                        !span.is_full()
                                    }
                                    Err(e) => {
                                        failure = Some(e);
                                        false
                                    }
                                }
                            });
                            if let Some(e) = failure {
                                return Err(e);
                            }
                            if !keep_going {
                                break 'outer;
                            }
                        }
                    }
                }
            }
        }
        spans.push(span);
    }
    Ok(spans)
}

fn instance(
    gen: &GeneratorSpec,
    r: &Element,
    ws: &[&TreeShape],
    outer: &TreeShape,
    pos: u32,
) -> Result<Element> {
    let mut x = r.clone();
    for j in (1..=ws.len() as u32).rev() {
        let w = ws[(j - 1) as usize];
        if !w.is_unit() {
            x = compose_i(gen, &x, j, &lift(w))?;
        }
    }
    if !outer.is_unit() {
        x = compose_i(gen, &lift(outer), pos, &x)?;
    }
    Ok(x)
}

/// Shape-level quotient dimensions for k = 1..=max_k: the dimensions of the
/// free algebra on a one-dimensional space, with graded signs when the
/// generator has degree 1.
pub fn one_variable_dims(p: &QuadraticPresentation, max_k: u32) -> Result<OperadDims> {
    if max_k < 1 {
        return Err(Error::InvalidVertexCount(max_k as i64));
    }
    let gen = p.generator();
    let mut dims = OperadDims::new(*gen);
    dims.insert(gen.component_arity(1), 1, Method::ShapeLevel);
    if max_k >= 2 {
        let spans = one_variable_spans(p, max_k)?;
        for (i, span) in spans.iter().enumerate() {
            let k = i as u32 + 2;
            let total = fuss_catalan(gen.arity(), k)
                .to_u64()
                .expect("shape counts stay small");
            dims.insert(
                gen.component_arity(k),
                total - span.rank() as u64,
                Method::ShapeLevel,
            );
        }
    }
    Ok(dims)
}

/// Dimensions for every admissible arity up to `max_arity`: full multilinear
/// where the free component fits under `bound`, shape-level beyond.
pub fn dims_auto(p: &QuadraticPresentation, max_arity: u32, bound: u64) -> Result<OperadDims> {
    let gen = p.generator();
    let mut dims = OperadDims::new(*gen);
    if max_arity >= 1 {
        dims.insert(1, 1, Method::Full);
    }
    let mut k_max = 0;
    while gen.component_arity(k_max + 1) <= max_arity {
        k_max += 1;
    }
    if k_max == 0 {
        return Ok(dims);
    }
    let mut k_full = 0;
    while k_full < k_max && free_component_dim(gen, k_full + 1) <= Int::from(bound) {
        k_full += 1;
    }
    if k_full >= 1 {
        dims.insert(gen.component_arity(1), free_component_dim(gen, 1).to_u64().unwrap(), Method::Full);
    }
    if k_full >= 2 {
        let spans = ideal_spans(p, k_full, bound)?;
        for (basis, span) in &spans {
            let k = gen.tree_degree(basis.arity())?;
            dims.insert(
                gen.component_arity(k),
                basis.dim() as u64 - span.rank() as u64,
                Method::Full,
            );
        }
    }
    if k_full < k_max {
        let shape = one_variable_dims(p, k_max)?;
        for k in (k_full + 1)..=k_max {
            let arity = gen.component_arity(k);
            let entry = shape.get(arity).expect("computed above");
            dims.insert(arity, entry.dim, Method::ShapeLevel);
        }
    }
    Ok(dims)
}

/// Full multilinear dimensions for every admissible arity up to `max_arity`;
/// fails with a resource error if any component exceeds the bound.
pub fn dims_full(p: &QuadraticPresentation, max_arity: u32, bound: u64) -> Result<OperadDims> {
    let gen = p.generator();
    let mut dims = OperadDims::new(*gen);
    if max_arity >= 1 {
        dims.insert(1, 1, Method::Full);
    }
    let mut k_max = 0;
    while gen.component_arity(k_max + 1) <= max_arity {
        k_max += 1;
    }
    for k in 1..=k_max {
        let dim = operad_dim_with_bound(p, gen.component_arity(k), bound)?;
        dims.insert(gen.component_arity(k), dim, Method::Full);
    }
    Ok(dims)
}

/// Euler-signed generating function from a dimension table. The coefficient
/// of x^m is the signed dimension divided by m! for full entries, or the
/// signed shape-level dimension directly (the two agree under the
/// regular-generator factorization). A generator of degree 1 puts the
/// component with k occurrences in homological degree k, hence the sign
/// (-1)^k.
pub fn generating_function(p: &QuadraticPresentation, dims: &OperadDims) -> Result<PowerSeries> {
    let gen = p.generator();
    let order = dims.max_arity().unwrap_or(1);
    let mut coeffs = vec![Rat::zero(); order as usize + 1];
    if order >= 1 {
        coeffs[1] = Rat::from_integer(1.into());
    }
    let mut k = 1;
    while gen.component_arity(k) <= order {
        let arity = gen.component_arity(k);
        let entry = dims.get(arity).ok_or(Error::MissingDims(arity))?;
        let magnitude = match entry.method {
            Method::Full => Rat::new(Int::from(entry.dim), factorial(arity)),
            Method::ShapeLevel => Rat::from_integer(Int::from(entry.dim)),
        };
        let signed = if gen.degree() == 1 && k % 2 == 1 {
            -magnitude
        } else {
            magnitude
        };
        coeffs[arity as usize] = signed;
        k += 1;
    }
    Ok(PowerSeries::from_coeffs(coeffs))
}

/// Shape-level necessary condition for "tensor products of a p-algebra and a
/// q-algebra are p-algebras": for every relation of p, the diagonal vector
/// sum_i c_i (s_i x s_i) must lie in R_p x F + F x R_q inside the tensor
/// square of the quadratic shape space.
pub fn tensor_compatibility_shape_check(
    p: &QuadraticPresentation,
    q: &QuadraticPresentation,
) -> Result<bool> {
    if p.generator().arity() != q.generator().arity() {
        return Err(Error::ArityMismatch {
            expected: p.generator().arity(),
            got: q.generator().arity(),
        });
    }
    if p.generator().degree() != 0 || q.generator().degree() != 0 {
        return Err(Error::TensorCheckNeedsDegreeZero);
    }
    let gen = p.generator();
    let basis = ShapeBasis::new(gen, 2)?;
    let n = basis.dim();
    let collapse_span = |pres: &QuadraticPresentation| -> RowSpan {
        let mut span = RowSpan::new(n);
        for r in pres.relations() {
            span.insert(basis.collapse(r));
        }
        span
    };
    let rp = collapse_span(p);
    let rq = collapse_span(q);
    let mut w = RowSpan::new(n * n);
    for row in rp.rows() {
        for j in 0..n {
            w.insert(SparseVec::from_entries(
                row.iter().map(|(i, c)| (i * n + j, c.clone())),
            ));
        }
    }
    for row in rq.rows() {
        for i in 0..n {
            w.insert(SparseVec::from_entries(
                row.iter().map(|(j, c)| (i * n + j, c.clone())),
            ));
        }
    }
    for r in p.relations() {
        let c = basis.collapse(r);
        let diagonal = SparseVec::from_entries(c.iter().map(|(i, v)| (i * n + i, v.clone())));
        if !w.contains(&diagonal) {
            return Ok(false);
        }
    }
    Ok(true)
}

pub(crate) fn quadratic_basis(gen: &GeneratorSpec, bound: u64) -> Result<ComponentBasis> {
    ComponentBasis::new(gen, 2, bound)
}
