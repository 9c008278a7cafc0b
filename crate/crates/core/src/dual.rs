//! Quadratic duals: the sign-twisted dual generator, the signed pairing on
//! the quadratic slice, the annihilator of the relation module, and the
//! dimensions of the dual operad.
//!
//! The degree bookkeeping is the point: dualizing a degree-0 generator of
//! arity n produces a generator of degree n mod 2, so for odd arity the dual
//! operation lives in degree 1 and every ideal computation above the
//! quadratic slice picks up Koszul signs. Dropping the degree instead gives
//! the nongraded variant, which for odd arity is a different operad.

use crate::error::{Error, Result};
use crate::linalg::{annihilator, SparseMatrix, SpanBasis};
use crate::presentation::{
    dims_auto, free_component_dim, quadratic_basis, relation_module, OperadDims,
    QuadraticPresentation, DEFAULT_FULL_BOUND,
};
use crate::rational::{Int, Rat};
use crate::trees::{labels_sign, GeneratorSpec};

/// Dual generator: same arity, representation twisted by sign, degree
/// shifted so that degree(g) + degree(dual) = arity mod 2.
pub fn czech_dual_generator(g: &GeneratorSpec) -> GeneratorSpec {
    let degree = if g.degree() == 0 { g.arity() % 2 } else { 0 };
    GeneratorSpec::new(g.arity(), degree).expect("arity was already validated")
}

/// Signed pairing between the quadratic slices of the free operads on the
/// generator and on its dual. In the monomial basis it is diagonal:
/// a monomial with shape index i (1-based) and labelling sigma pairs with
/// its mirror to sgn(sigma) * (-1)^(i-1). Block-diagonal across shapes,
/// entries in {1, -1}, full rank by construction.
pub struct PairingForm {
    matrix: SparseMatrix,
}

impl PairingForm {
    pub fn matrix(&self) -> &SparseMatrix {
        &self.matrix
    }

    pub fn ambient(&self) -> usize {
        self.matrix.rows()
    }
}

pub fn pairing(gen: &GeneratorSpec) -> Result<PairingForm> {
    pairing_with_bound(gen, DEFAULT_FULL_BOUND)
}

pub fn pairing_with_bound(gen: &GeneratorSpec, bound: u64) -> Result<PairingForm> {
    let basis = quadratic_basis(gen, bound)?;
    let dim = basis.dim();
    let matrix = SparseMatrix::from_triplets(
        dim,
        dim,
        (0..dim).map(|idx| {
            let mono = basis.monomial_at(idx);
            let shape_parity = (idx / basis.fact()) % 2;
            let mut sign = labels_sign(mono.labels());
            if shape_parity == 1 {
                sign = -sign;
            }
            (idx, idx, Rat::from_integer(Int::from(sign)))
        }),
    )?;
    Ok(PairingForm { matrix })
}

/// The dual presentation: generator dualized, relations a row-reduced basis
/// of the annihilator of the relation module under the signed pairing.
pub fn dual_presentation(p: &QuadraticPresentation) -> Result<QuadraticPresentation> {
    dual_presentation_with_bound(p, DEFAULT_FULL_BOUND)
}

pub fn dual_presentation_with_bound(
    p: &QuadraticPresentation,
    bound: u64,
) -> Result<QuadraticPresentation> {
    let gen = p.generator();
    let rm = relation_module(p)?;
    let pf = pairing_with_bound(gen, bound)?;
    let ann = annihilator(&rm, pf.matrix())?;
    let dual_gen = czech_dual_generator(gen);
    let basis = quadratic_basis(&dual_gen, bound)?;
    let relations = ann.rows().iter().map(|v| basis.vec_to_element(v)).collect();
    QuadraticPresentation::new(
        format!("{}_dual", p.name()),
        dual_gen,
        format!("{}_dual", p.generator_name()),
        relations,
    )
}

/// Annihilator of the relation module, as a span.
pub fn relation_annihilator(p: &QuadraticPresentation) -> Result<SpanBasis> {
    let rm = relation_module(p)?;
    let pf = pairing(p.generator())?;
    annihilator(&rm, pf.matrix())
}

/// Dimensions of the dual operad per arity: full multilinear where the free
/// component fits under the bound, shape-level (with graded signs) beyond.
pub fn dual_dims(p: &QuadraticPresentation, max_k: u32) -> Result<OperadDims> {
    dual_dims_with_bound(p, max_k, DEFAULT_FULL_BOUND)
}

pub fn dual_dims_with_bound(
    p: &QuadraticPresentation,
    max_k: u32,
    bound: u64,
) -> Result<OperadDims> {
    if max_k < 1 {
        return Err(Error::InvalidVertexCount(max_k as i64));
    }
    let dp = dual_presentation_with_bound(p, bound)?;
    dims_auto(&dp, dp.generator().component_arity(max_k), bound)
}

/// True when the free quadratic component is small enough for the full
/// dual computation.
pub fn dual_within_bound(gen: &GeneratorSpec, bound: u64) -> bool {
    free_component_dim(gen, 2) <= Int::from(bound)
}
