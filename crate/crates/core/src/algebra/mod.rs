//! Presemifield multiplications over GF(2^n) and the linear algebra around them.
//!
//! Three multiplications are built in: Knuth's commutative `K_n`
//! (`x*y = xy + (y Tr(x) + x Tr(y))^2`), its symplectic derivative `K_n^td`
//! (`x∘y = xy + Tr(x)√y + Tr(x^2 y)`), and matrix families obtained by
//! transposing or dualizing any presemifield.
//!
//! Transposition is taken with respect to the trace form `Tr(xy)`: the
//! right-multiplication `R_a` becomes its trace adjoint `G R_a^T G^-1`, with
//! `G` the Gram matrix of the trace form in the polynomial basis. This is the
//! matrix transpose in a trace-orthogonal basis, so `dual(transpose(K_n))`
//! reproduces the explicit `∘` multiplication exactly.

mod bitmatrix;
mod linpoly;

use alloc::sync::Arc;
use alloc::vec::Vec;

pub use bitmatrix::{rank_of_rows, BitMatrix};
pub use linpoly::{LinearizedPoly, LinpolyAnalysis, MapClass, PolyDisplay};

use crate::error::{Error, Result};
use crate::gf2n::{Fe, FieldContext};

/// Largest degree for which matrix families are stored.
pub const MAX_MATRIX_DEGREE: u32 = 11;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Knuth,
    KnuthSymplectic,
    MatrixFamily,
}

/// Which plane a presemifield coordinatises, when it is one of the Knuth derivatives.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PlaneId {
    Kn,
    KnT,
    KnTd,
    Custom,
}

impl PlaneId {
    pub fn name(self) -> &'static str {
        match self {
            PlaneId::Kn => "kn",
            PlaneId::KnT => "kn_t",
            PlaneId::KnTd => "kn_td",
            PlaneId::Custom => "custom",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Derivation {
    Transpose,
    Dual,
}

#[derive(Clone, Debug)]
pub struct Presemifield {
    ctx: Arc<FieldContext>,
    kind: Kind,
    id: PlaneId,
    /// `matrices[a] = R_a`, only for matrix families.
    matrices: Option<Arc<Vec<BitMatrix>>>,
}

/// Outcome of the exhaustive axiom check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PresemifieldReport {
    pub left_distributive: bool,
    pub right_distributive: bool,
    pub no_zero_divisors: bool,
    pub commutative: bool,
    /// `Tr(x(y⋆z)) = Tr(y(x⋆z))` for all triples.
    pub symplectic: Option<bool>,
    /// `Tr(x(z⋆y) + y(x*z)) = 0` for all triples, `*` being Knuth's multiplication.
    pub orthogonal_to_knuth: Option<bool>,
}

impl PresemifieldReport {
    pub fn passed(&self) -> bool {
        self.left_distributive
            && self.right_distributive
            && self.no_zero_divisors
            && self.symplectic.unwrap_or(true)
            && self.orthogonal_to_knuth.unwrap_or(true)
    }
}

impl Presemifield {
    pub fn knuth(ctx: Arc<FieldContext>) -> Self {
        Presemifield { ctx, kind: Kind::Knuth, id: PlaneId::Kn, matrices: None }
    }

    pub fn knuth_symplectic(ctx: Arc<FieldContext>) -> Self {
        Presemifield { ctx, kind: Kind::KnuthSymplectic, id: PlaneId::KnTd, matrices: None }
    }

    /// A multiplication given by its right-multiplication matrices, `x⋆a = x R_a`.
    ///
    /// Nothing is checked here; run [`Presemifield::verify`] on untrusted input.
    pub fn from_matrices(ctx: Arc<FieldContext>, matrices: Vec<BitMatrix>, id: PlaneId) -> Result<Self> {
        if matrices.len() != ctx.q() {
            return Err(Error::WrongSize { expected: ctx.q(), found: matrices.len() });
        }
        Ok(Presemifield { ctx, kind: Kind::MatrixFamily, id, matrices: Some(Arc::new(matrices)) })
    }

    /// `K_n^t`, the trace-form transpose of `K_n`.
    pub fn knuth_transpose(ctx: Arc<FieldContext>) -> Result<Self> {
        Self::knuth(ctx).derive(Derivation::Transpose)
    }

    #[inline]
    pub fn ctx(&self) -> &FieldContext {
        &self.ctx
    }

    pub fn ctx_arc(&self) -> &Arc<FieldContext> {
        &self.ctx
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn id(&self) -> PlaneId {
        self.id
    }

    #[inline]
    pub fn mul(&self, x: Fe, y: Fe) -> Fe {
        let ctx = &*self.ctx;
        match self.kind {
            Kind::Knuth => {
                let t = (if ctx.trace(x) { y } else { Fe::ZERO }) + (if ctx.trace(y) { x } else { Fe::ZERO });
                ctx.mul(x, y) + ctx.square(t)
            }
            Kind::KnuthSymplectic => {
                let mut r = ctx.mul(x, y);
                if ctx.trace(x) {
                    r += ctx.sqrt(y);
                }
                r + ctx.trace_fe(ctx.mul(ctx.square(x), y))
            }
            Kind::MatrixFamily => {
                let m = self.matrices.as_ref().expect("matrix family");
                Fe(m[y.0 as usize].apply(x.0))
            }
        }
    }

    /// Matrix of `x ↦ x⋆a`.
    pub fn right_mul_matrix(&self, a: Fe) -> BitMatrix {
        if let Some(m) = &self.matrices {
            return m[a.0 as usize];
        }
        BitMatrix::from_fn(self.ctx.n(), |i| self.mul(Fe(1 << i), a).0)
    }

    /// Matrix of `x ↦ a⋆x`.
    pub fn left_mul_matrix(&self, a: Fe) -> BitMatrix {
        BitMatrix::from_fn(self.ctx.n(), |i| self.mul(a, Fe(1 << i)).0)
    }

    /// Whether `(x, y) ↦ (x², y²)` is an autotopism, i.e. `(x⋆y)² = x²⋆y²`.
    pub fn frobenius_is_autotopism(&self) -> bool {
        match self.kind {
            Kind::Knuth | Kind::KnuthSymplectic => true,
            Kind::MatrixFamily => {
                let ctx = &*self.ctx;
                ctx.elements().all(|y| {
                    let y2 = ctx.square(y);
                    (0..ctx.n()).all(|i| {
                        let x = Fe(1 << i);
                        ctx.square(self.mul(x, y)) == self.mul(ctx.square(x), y2)
                    })
                })
            }
        }
    }

    pub fn is_commutative(&self) -> bool {
        match self.kind {
            Kind::Knuth => true,
            Kind::KnuthSymplectic => false,
            Kind::MatrixFamily => {
                let ctx = &*self.ctx;
                ctx.elements().all(|y| (0..ctx.n()).all(|i| self.mul(Fe(1 << i), y) == self.mul(y, Fe(1 << i))))
            }
        }
    }

    /// Transpose (trace adjoint of every `R_a`) or dual (opposite multiplication).
    pub fn derive(&self, which: Derivation) -> Result<Presemifield> {
        let ctx = self.ctx.clone();
        let n = ctx.n();
        if n > MAX_MATRIX_DEGREE {
            return Err(Error::UnsupportedDegree(n));
        }
        let matrices: Vec<BitMatrix> = match which {
            Derivation::Transpose => {
                let gram = trace_gram(&ctx);
                let gram_inv = gram.inverse().expect("trace form is nondegenerate");
                ctx.elements()
                    .map(|a| gram.then(&self.right_mul_matrix(a).transpose()).then(&gram_inv))
                    .collect()
            }
            Derivation::Dual => ctx.elements().map(|a| self.left_mul_matrix(a)).collect(),
        };
        if matrices.iter().skip(1).any(|m| m.rank() != n) {
            return Err(Error::DegeneratePresemifield);
        }
        let id = match (self.id, which) {
            (PlaneId::Kn, Derivation::Dual) => PlaneId::Kn,
            (PlaneId::Kn, Derivation::Transpose) => PlaneId::KnT,
            (PlaneId::KnT, Derivation::Transpose) => PlaneId::Kn,
            (PlaneId::KnT, Derivation::Dual) => PlaneId::KnTd,
            (PlaneId::KnTd, Derivation::Dual) => PlaneId::KnT,
            _ => PlaneId::Custom,
        };
        Presemifield::from_matrices(ctx, matrices, id)
    }

    /// Exhaustive check of the presemifield axioms over all triples.
    pub fn verify(&self, check_symplectic: bool) -> PresemifieldReport {
        let ctx = &*self.ctx;
        let q = ctx.q();
        let table: Vec<Fe> = {
            let mut t = Vec::with_capacity(q * q);
            for x in ctx.elements() {
                for y in ctx.elements() {
                    t.push(self.mul(x, y));
                }
            }
            t
        };
        let m = |x: Fe, y: Fe| table[x.0 as usize * q + y.0 as usize];
        let knuth = Presemifield::knuth(self.ctx.clone());

        let mut left = true;
        let mut right = true;
        let mut symplectic = true;
        let mut orthogonal = true;
        for x in ctx.elements() {
            for y in ctx.elements() {
                let xy = m(x, y);
                for z in ctx.elements() {
                    left &= m(x, y + z) == xy + m(x, z);
                    right &= m(x + y, z) == m(x, z) + m(y, z);
                    if check_symplectic {
                        symplectic &= ctx.trace(ctx.mul(x, m(y, z))) == ctx.trace(ctx.mul(y, m(x, z)));
                        let s = ctx.mul(x, m(z, y)) + ctx.mul(y, knuth.mul(x, z));
                        orthogonal &= !ctx.trace(s);
                    }
                }
            }
        }
        let no_zero_divisors = ctx
            .elements()
            .skip(1)
            .all(|x| ctx.elements().skip(1).all(|y| !m(x, y).is_zero()));
        let commutative = ctx.elements().all(|x| ctx.elements().all(|y| m(x, y) == m(y, x)));
        PresemifieldReport {
            left_distributive: left,
            right_distributive: right,
            no_zero_divisors,
            commutative,
            symplectic: check_symplectic.then_some(symplectic),
            orthogonal_to_knuth: check_symplectic.then_some(orthogonal),
        }
    }
}

/// Gram matrix of `(x, y) ↦ Tr(xy)` in the polynomial basis.
pub fn trace_gram(ctx: &FieldContext) -> BitMatrix {
    BitMatrix::from_fn(ctx.n(), |i| {
        let mut row = 0;
        for j in 0..ctx.n() {
            if ctx.trace(ctx.mul(Fe(1 << i), Fe(1 << j))) {
                row |= 1 << j;
            }
        }
        row
    })
}
