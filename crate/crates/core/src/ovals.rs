//! Hyperovals and line hyperovals: construction and exhaustive verification.

use alloc::vec::Vec;

use crate::algebra::LinearizedPoly;
use crate::error::{Error, Result};
use crate::gf2n::{Fe, FieldContext};
use crate::plane::{Plane, PlaneLine, PlanePoint};
use crate::search::{check_type_a, check_type_b};

/// A set of points, stored as sorted point codes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Hyperoval {
    q: usize,
    codes: Vec<u32>,
}

impl Hyperoval {
    pub fn from_points(q: usize, points: impl IntoIterator<Item = PlanePoint>) -> Self {
        let mut codes: Vec<u32> = points.into_iter().map(|p| p.code(q)).collect();
        codes.sort_unstable();
        codes.dedup();
        Hyperoval { q, codes }
    }

    pub fn from_codes(q: usize, mut codes: Vec<u32>) -> Self {
        codes.sort_unstable();
        codes.dedup();
        Hyperoval { q, codes }
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn len(&self) -> usize {
        self.codes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }

    pub fn codes(&self) -> &[u32] {
        &self.codes
    }

    pub fn points(&self) -> impl Iterator<Item = PlanePoint> + '_ {
        self.codes.iter().map(move |&c| PlanePoint::from_code(c, self.q))
    }

    pub fn contains(&self, p: PlanePoint) -> bool {
        self.codes.binary_search(&p.code(self.q)).is_ok()
    }

    /// Points of the set on `l_∞` other than `(∞)`.
    pub fn carrier(&self) -> Vec<Fe> {
        self.points()
            .filter_map(|p| match p {
                PlanePoint::AtInfinity(z) => Some(z),
                _ => None,
            })
            .collect()
    }

    pub fn affine(&self) -> Vec<(Fe, Fe)> {
        self.points()
            .filter_map(|p| match p {
                PlanePoint::Affine(x, y) => Some((x, y)),
                _ => None,
            })
            .collect()
    }

    /// Number of points shared with `other`.
    pub fn intersection_size(&self, other: &Hyperoval) -> usize {
        let (mut i, mut j, mut n) = (0, 0, 0);
        while i < self.codes.len() && j < other.codes.len() {
            match self.codes[i].cmp(&other.codes[j]) {
                core::cmp::Ordering::Less => i += 1,
                core::cmp::Ordering::Greater => j += 1,
                core::cmp::Ordering::Equal => {
                    n += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        n
    }
}

/// A set of lines, stored as sorted line codes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LineHyperoval {
    q: usize,
    codes: Vec<u32>,
}

impl LineHyperoval {
    pub fn from_lines(q: usize, lines: impl IntoIterator<Item = PlaneLine>) -> Self {
        let mut codes: Vec<u32> = lines.into_iter().map(|l| l.code(q)).collect();
        codes.sort_unstable();
        codes.dedup();
        LineHyperoval { q, codes }
    }

    pub fn len(&self) -> usize {
        self.codes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.codes.is_empty()
    }

    pub fn codes(&self) -> &[u32] {
        &self.codes
    }

    pub fn lines(&self) -> impl Iterator<Item = PlaneLine> + '_ {
        self.codes.iter().map(move |&c| PlaneLine::from_code(c, self.q))
    }

    /// Reads every line as a point of the dual plane:
    /// `l_{a,b} ↦ (a, b)`, `l_a ↦ (a)`, `l_∞ ↦ (∞)`.
    pub fn dual_points(&self) -> Hyperoval {
        Hyperoval::from_points(
            self.q,
            self.lines().map(|l| match l {
                PlaneLine::AtInfinity => PlanePoint::Infinity,
                PlaneLine::Vertical(a) => PlanePoint::AtInfinity(a),
                PlaneLine::Sloped(a, b) => PlanePoint::Affine(a, b),
            }),
        )
    }
}

/// True iff every line meets `o` in 0 or 2 points.
pub fn is_hyperoval(plane: &Plane, o: &Hyperoval) -> Result<bool> {
    let q = plane.q();
    if o.len() != q + 2 {
        return Err(Error::WrongSize { expected: q + 2, found: o.len() });
    }
    let pts: Vec<PlanePoint> = o.points().collect();
    Ok(plane.intersection_counts(&pts).iter().all(|&c| c == 0 || c == 2))
}

/// True iff every point lies on 0 or 2 lines of `lh`.
pub fn is_line_hyperoval(plane: &Plane, lh: &LineHyperoval) -> Result<bool> {
    let q = plane.q();
    if lh.len() != q + 2 {
        return Err(Error::WrongSize { expected: q + 2, found: lh.len() });
    }
    let lines: Vec<PlaneLine> = lh.lines().collect();
    Ok(plane.concurrency_counts(&lines).iter().all(|&c| c == 0 || c == 2))
}

/// `{(x, x⋆x)} ∪ {(0), (∞)}`.
pub fn standard_hyperoval(plane: &Plane) -> Result<Hyperoval> {
    if !plane.presemifield().is_commutative() {
        return Err(Error::NonCommutative);
    }
    let ctx = plane.ctx();
    Ok(Hyperoval::from_points(
        plane.q(),
        ctx.elements()
            .map(|x| PlanePoint::Affine(x, plane.mul(x, x)))
            .chain([PlanePoint::AtInfinity(Fe::ZERO), PlanePoint::Infinity]),
    ))
}

/// `{(x, L(x))} ∪ {(0), (∞)}`, the type (a) shape.
pub fn type_a_hyperoval(ctx: &FieldContext, l: &LinearizedPoly) -> Hyperoval {
    let m = l.matrix(ctx);
    Hyperoval::from_points(
        ctx.q(),
        ctx.elements()
            .map(|x| PlanePoint::Affine(x, Fe(m.apply(x.0))))
            .chain([PlanePoint::AtInfinity(Fe::ZERO), PlanePoint::Infinity]),
    )
}

/// `{(L(y), y)} ∪ {(0), (α)}`, the type (b) shape.
pub fn type_b_hyperoval(ctx: &FieldContext, l: &LinearizedPoly, alpha: Fe) -> Hyperoval {
    let m = l.matrix(ctx);
    Hyperoval::from_points(
        ctx.q(),
        ctx.elements()
            .map(|y| PlanePoint::Affine(Fe(m.apply(y.0)), y))
            .chain([PlanePoint::AtInfinity(Fe::ZERO), PlanePoint::AtInfinity(alpha)]),
    )
}

/// `O_g = {(y² + y, y)} ∪ {(0), (1)}` in the plane of Knuth's commutative presemifield.
pub fn og_hyperoval(ctx: &FieldContext) -> Hyperoval {
    type_b_hyperoval(ctx, &LinearizedPoly::from_exponents(ctx.n(), &[1, 0]), Fe::ONE)
}

/// `O_d = {(y^(2^d) + y, y)} ∪ {(0), (1)}` in the plane of the symplectic presemifield.
pub fn od_hyperoval(ctx: &FieldContext, d: u32) -> Result<Hyperoval> {
    let n = ctx.n();
    if d == 0 || d >= n || gcd(d, n) != 1 {
        return Err(Error::BadShift { n, d });
    }
    Ok(type_b_hyperoval(ctx, &LinearizedPoly::from_exponents(n, &[d, 0]), Fe::ONE))
}

/// The map `μ` on `F_q ∖ {0, 1}` attached to `O_d`:
/// `y / (y^(2^d) + y)` when `Tr((y^(2^d) + y) y) = 0`, else `(y + 1) / (y^(2^d) + y)`.
pub fn od_mu(ctx: &FieldContext, d: u32, y: Fe) -> Option<Fe> {
    if y.0 <= 1 {
        return None;
    }
    let s = ctx.frob(y, d) + y;
    let num = if ctx.trace(ctx.mul(s, y)) { y + Fe::ONE } else { y };
    ctx.div(num, s).ok()
}

/// `{l_{m, L̄(m)}} ∪ {l_0, l_∞}` for a type (a) function `L`.
///
/// `plane` must be the plane in which `L` is checked; the result lives in
/// the plane of the symplectic derivative.
pub fn dualize_type_a(plane: &Plane, l: &LinearizedPoly) -> Result<LineHyperoval> {
    if !check_type_a(plane, l) {
        return Err(Error::NotTypeA);
    }
    let ctx = plane.ctx();
    let adj = l.adjoint(ctx).matrix(ctx);
    Ok(LineHyperoval::from_lines(
        plane.q(),
        ctx.elements()
            .map(|m| PlaneLine::Sloped(m, Fe(adj.apply(m.0))))
            .chain([PlaneLine::Vertical(Fe::ZERO), PlaneLine::AtInfinity]),
    ))
}

/// `{l_{L̄(m), m}} ∪ {l_0, l_α}` for a type (b) pair `(L, α)`.
pub fn dualize_type_b(plane: &Plane, l: &LinearizedPoly, alpha: Fe) -> Result<LineHyperoval> {
    if check_type_b(plane, l) != Some(alpha) {
        return Err(Error::NotTypeB);
    }
    let ctx = plane.ctx();
    let adj = l.adjoint(ctx).matrix(ctx);
    Ok(LineHyperoval::from_lines(
        plane.q(),
        ctx.elements()
            .map(|m| PlaneLine::Sloped(Fe(adj.apply(m.0)), m))
            .chain([PlaneLine::Vertical(Fe::ZERO), PlaneLine::Vertical(alpha)]),
    ))
}

fn gcd(mut a: u32, mut b: u32) -> u32 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}
