//! The projective plane Π(S) coordinatised by a presemifield and its collineations.
//!
//! Points are `(∞)`, `(a)` on the line at infinity, and affine `(x, y)`.
//! Lines are `l_∞`, the verticals `l_a = {(a, y)} ∪ {(∞)}` and
//! `l_{a,b} = {(x, x⋆a + b)} ∪ {(a)}`.
//!
//! Collineations are kept in the normal form `γ^k ∘ σ_c ∘ τ_{a,b}` where
//! `τ_{a,b}` translates, `σ_c` is the shear `(x, y) ↦ (x, y + x⋆c)` and `γ`
//! squares coordinates. `γ` is only available when it is an autotopism of S.

use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{BitMatrix, Presemifield};
use crate::gf2n::{Fe, FieldContext};

/// Matrices `R_a` are cached for planes up to this degree.
const CACHE_DEGREE: u32 = 13;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PlanePoint {
    Infinity,
    AtInfinity(Fe),
    Affine(Fe, Fe),
}

impl PlanePoint {
    /// `(∞) = 0`, `(a) = 1 + a`, `(x, y) = 1 + q + xq + y`.
    #[inline]
    pub fn code(self, q: usize) -> u32 {
        match self {
            PlanePoint::Infinity => 0,
            PlanePoint::AtInfinity(a) => 1 + a.0,
            PlanePoint::Affine(x, y) => 1 + q as u32 + x.0 * q as u32 + y.0,
        }
    }

    #[inline]
    pub fn from_code(code: u32, q: usize) -> Self {
        let q = q as u32;
        match code {
            0 => PlanePoint::Infinity,
            c if c <= q => PlanePoint::AtInfinity(Fe(c - 1)),
            c => {
                let r = c - 1 - q;
                PlanePoint::Affine(Fe(r / q), Fe(r % q))
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PlaneLine {
    AtInfinity,
    Vertical(Fe),
    Sloped(Fe, Fe),
}

impl PlaneLine {
    /// `l_∞ = 0`, `l_a = 1 + a`, `l_{a,b} = 1 + q + aq + b`.
    #[inline]
    pub fn code(self, q: usize) -> u32 {
        match self {
            PlaneLine::AtInfinity => 0,
            PlaneLine::Vertical(a) => 1 + a.0,
            PlaneLine::Sloped(a, b) => 1 + q as u32 + a.0 * q as u32 + b.0,
        }
    }

    #[inline]
    pub fn from_code(code: u32, q: usize) -> Self {
        let q = q as u32;
        match code {
            0 => PlaneLine::AtInfinity,
            c if c <= q => PlaneLine::Vertical(Fe(c - 1)),
            c => {
                let r = c - 1 - q;
                PlaneLine::Sloped(Fe(r / q), Fe(r % q))
            }
        }
    }
}

/// `P ↦ γ^k(σ_c(τ_{a,b}(P)))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Collineation {
    pub a: Fe,
    pub b: Fe,
    pub c: Fe,
    pub k: u32,
}

impl Collineation {
    pub const IDENTITY: Collineation = Collineation { a: Fe::ZERO, b: Fe::ZERO, c: Fe::ZERO, k: 0 };

    pub fn translation(a: Fe, b: Fe) -> Self {
        Collineation { a, b, ..Self::IDENTITY }
    }

    pub fn shear(c: Fe) -> Self {
        Collineation { c, ..Self::IDENTITY }
    }

    pub fn frobenius(k: u32) -> Self {
        Collineation { k, ..Self::IDENTITY }
    }
}

#[derive(Clone, Debug)]
pub struct Plane {
    s: Presemifield,
    frobenius: bool,
    right: Option<Vec<BitMatrix>>,
}

impl Plane {
    pub fn new(s: Presemifield) -> Self {
        let frobenius = s.frobenius_is_autotopism();
        let right = (s.ctx().n() <= CACHE_DEGREE).then(|| s.ctx().elements().map(|a| s.right_mul_matrix(a)).collect());
        Plane { s, frobenius, right }
    }

    #[inline]
    pub fn presemifield(&self) -> &Presemifield {
        &self.s
    }

    #[inline]
    pub fn ctx(&self) -> &FieldContext {
        self.s.ctx()
    }

    #[inline]
    pub fn q(&self) -> usize {
        self.s.ctx().q()
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.s.ctx().n()
    }

    #[inline]
    pub fn mul(&self, x: Fe, a: Fe) -> Fe {
        match &self.right {
            Some(r) => Fe(r[a.0 as usize].apply(x.0)),
            None => self.s.mul(x, a),
        }
    }

    pub fn right_mul_matrix(&self, a: Fe) -> BitMatrix {
        match &self.right {
            Some(r) => r[a.0 as usize],
            None => self.s.right_mul_matrix(a),
        }
    }

    /// Whether the autotopism `γ` is part of the collineation group used here.
    pub fn has_frobenius(&self) -> bool {
        self.frobenius
    }

    /// Number of points (equally, lines): `q² + q + 1`.
    pub fn size(&self) -> usize {
        let q = self.q();
        q * q + q + 1
    }

    pub fn points(&self) -> impl Iterator<Item = PlanePoint> + '_ {
        let q = self.q();
        (0..self.size() as u32).map(move |c| PlanePoint::from_code(c, q))
    }

    pub fn lines(&self) -> impl Iterator<Item = PlaneLine> + '_ {
        let q = self.q();
        (0..self.size() as u32).map(move |c| PlaneLine::from_code(c, q))
    }

    pub fn incident(&self, p: PlanePoint, l: PlaneLine) -> bool {
        use PlaneLine as L;
        use PlanePoint as P;
        match (p, l) {
            (P::Infinity, L::AtInfinity | L::Vertical(_)) => true,
            (P::Infinity, L::Sloped(..)) => false,
            (P::AtInfinity(_), L::AtInfinity) => true,
            (P::AtInfinity(_), L::Vertical(_)) => false,
            (P::AtInfinity(z), L::Sloped(a, _)) => z == a,
            (P::Affine(..), L::AtInfinity) => false,
            (P::Affine(x, _), L::Vertical(a)) => x == a,
            (P::Affine(x, y), L::Sloped(a, b)) => y == self.mul(x, a) + b,
        }
    }

    pub fn points_on(&self, l: PlaneLine) -> Vec<PlanePoint> {
        let ctx = self.ctx();
        match l {
            PlaneLine::AtInfinity => core::iter::once(PlanePoint::Infinity)
                .chain(ctx.elements().map(PlanePoint::AtInfinity))
                .collect(),
            PlaneLine::Vertical(a) => core::iter::once(PlanePoint::Infinity)
                .chain(ctx.elements().map(|y| PlanePoint::Affine(a, y)))
                .collect(),
            PlaneLine::Sloped(a, b) => core::iter::once(PlanePoint::AtInfinity(a))
                .chain(ctx.elements().map(|x| PlanePoint::Affine(x, self.mul(x, a) + b)))
                .collect(),
        }
    }

    /// The line joining two distinct points.
    pub fn line_through(&self, p: PlanePoint, r: PlanePoint) -> Option<PlaneLine> {
        use PlanePoint as P;
        if p == r {
            return None;
        }
        let (p, r) = if p <= r { (p, r) } else { (r, p) };
        Some(match (p, r) {
            (P::Infinity | P::AtInfinity(_), P::AtInfinity(_)) => PlaneLine::AtInfinity,
            (P::Infinity, P::Affine(x, _)) => PlaneLine::Vertical(x),
            (P::AtInfinity(a), P::Affine(x, y)) => PlaneLine::Sloped(a, y + self.mul(x, a)),
            (P::Affine(x1, y1), P::Affine(x2, y2)) => {
                if x1 == x2 {
                    PlaneLine::Vertical(x1)
                } else {
                    // solve (x1 + x2) ⋆ a = y1 + y2 for a
                    let dx = x1 + x2;
                    let lm = self.s.left_mul_matrix(dx);
                    let inv = lm.inverse().expect("left multiplication by nonzero is invertible");
                    let a = Fe(inv.apply((y1 + y2).0));
                    PlaneLine::Sloped(a, y1 + self.mul(x1, a))
                }
            }
            _ => unreachable!("points are ordered"),
        })
    }

    /// Image of `p` under `g`.
    #[inline]
    pub fn apply(&self, g: &Collineation, p: PlanePoint) -> PlanePoint {
        let ctx = self.ctx();
        match p {
            PlanePoint::Infinity => PlanePoint::Infinity,
            PlanePoint::AtInfinity(z) => PlanePoint::AtInfinity(ctx.frob(z + g.c, g.k)),
            PlanePoint::Affine(x, y) => {
                let x1 = x + g.a;
                let y1 = y + g.b + self.mul(x1, g.c);
                PlanePoint::Affine(ctx.frob(x1, g.k), ctx.frob(y1, g.k))
            }
        }
    }

    /// Image of a line, read off from the images of two of its points.
    pub fn apply_line(&self, g: &Collineation, l: PlaneLine) -> PlaneLine {
        let pts = self.points_on(l);
        self.line_through(self.apply(g, pts[0]), self.apply(g, pts[1])).expect("collineations are injective")
    }

    /// `g ∘ h` in normal form.
    pub fn compose(&self, g: &Collineation, h: &Collineation) -> Collineation {
        let ctx = self.ctx();
        // move γ^{k_h} past σ_{c_g} τ_{a_g,b_g}
        let a1 = ctx.frob_inv(g.a, h.k);
        let b1 = ctx.frob_inv(g.b, h.k);
        let c1 = ctx.frob_inv(g.c, h.k);
        Collineation {
            a: a1 + h.a,
            b: b1 + self.mul(a1, h.c) + h.b,
            c: c1 + h.c,
            k: (g.k + h.k) % self.n(),
        }
    }

    pub fn invert(&self, g: &Collineation) -> Collineation {
        let ctx = self.ctx();
        let k = g.k % self.n();
        Collineation {
            a: ctx.frob(g.a, k),
            b: ctx.frob(g.b + self.mul(g.a, g.c), k),
            c: ctx.frob(g.c, k),
            k: (self.n() - k) % self.n(),
        }
    }

    /// Number of autotopism powers in the group: `n` with `γ`, else 1.
    pub fn frobenius_order(&self) -> u32 {
        if self.frobenius {
            self.n()
        } else {
            1
        }
    }

    /// `|Σ ⋊ ⟨γ⟩| = q³ · n` (or `q³` without `γ`).
    pub fn aut_order(&self) -> u64 {
        (self.q() as u64).pow(3) * self.frobenius_order() as u64
    }

    /// The `i`-th collineation, `0 ≤ i < aut_order()`. Lets callers split the group across workers.
    pub fn collineation_at(&self, i: u64) -> Collineation {
        let q = self.q() as u64;
        let k = (i / (q * q * q)) as u32;
        let r = i % (q * q * q);
        Collineation { a: Fe((r / (q * q)) as u32), b: Fe((r / q % q) as u32), c: Fe((r % q) as u32), k }
    }

    pub fn enumerate_aut(&self) -> impl Iterator<Item = Collineation> + '_ {
        (0..self.aut_order()).map(move |i| self.collineation_at(i))
    }

    /// For every line (indexed by code), the number of points of `points` on it.
    pub fn intersection_counts(&self, points: &[PlanePoint]) -> Vec<u32> {
        let q = self.q();
        let mut counts = vec![0u32; self.size()];
        for &p in points {
            match p {
                PlanePoint::Infinity => {
                    for c in counts.iter_mut().take(q + 1) {
                        *c += 1;
                    }
                }
                PlanePoint::AtInfinity(a) => {
                    counts[0] += 1;
                    let base = 1 + q + a.0 as usize * q;
                    for c in &mut counts[base..base + q] {
                        *c += 1;
                    }
                }
                PlanePoint::Affine(x, y) => {
                    counts[PlaneLine::Vertical(x).code(q) as usize] += 1;
                    for a in self.ctx().elements() {
                        let b = y + self.mul(x, a);
                        counts[PlaneLine::Sloped(a, b).code(q) as usize] += 1;
                    }
                }
            }
        }
        counts
    }

    /// For every point (indexed by code), the number of lines of `lines` through it.
    pub fn concurrency_counts(&self, lines: &[PlaneLine]) -> Vec<u32> {
        let q = self.q();
        let mut counts = vec![0u32; self.size()];
        for &l in lines {
            for p in self.points_on(l) {
                counts[p.code(q) as usize] += 1;
            }
        }
        counts
    }

    /// Lines meeting `points` in exactly two points.
    pub fn secants(&self, points: &[PlanePoint]) -> Vec<PlaneLine> {
        let q = self.q();
        self.intersection_counts(points)
            .iter()
            .enumerate()
            .filter(|(_, &c)| c == 2)
            .map(|(code, _)| PlaneLine::from_code(code as u32, q))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf2n::FieldContext;
    use alloc::sync::Arc;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn plane(n: u32, symplectic: bool) -> Plane {
        let ctx = Arc::new(FieldContext::new(n, None).unwrap());
        Plane::new(if symplectic { Presemifield::knuth_symplectic(ctx) } else { Presemifield::knuth(ctx) })
    }

    fn random_g(p: &Plane, rng: &mut ChaCha8Rng) -> Collineation {
        let q = p.q() as u32;
        Collineation {
            a: Fe(rng.gen_range(0..q)),
            b: Fe(rng.gen_range(0..q)),
            c: Fe(rng.gen_range(0..q)),
            k: rng.gen_range(0..p.frobenius_order()),
        }
    }

    #[test]
    fn codes_round_trip_and_order() {
        let p = plane(3, false);
        let q = p.q();
        let pts: Vec<PlanePoint> = p.points().collect();
        for (i, pt) in pts.iter().enumerate() {
            assert_eq!(pt.code(q), i as u32);
        }
        assert!(pts.windows(2).all(|w| w[0] < w[1]));
        for (i, l) in p.lines().enumerate() {
            assert_eq!(PlaneLine::from_code(i as u32, q), l);
            assert_eq!(l.code(q), i as u32);
        }
    }

    #[test]
    fn incidence_examples() {
        let p = plane(5, false);
        let a = Fe(7);
        let b = Fe(19);
        for x in p.ctx().elements() {
            assert!(p.incident(PlanePoint::Affine(x, p.mul(x, a) + b), PlaneLine::Sloped(a, b)));
        }
        assert!(p.incident(PlanePoint::AtInfinity(a), PlaneLine::Sloped(a, b)));
        assert!(!p.incident(PlanePoint::AtInfinity(Fe(8)), PlaneLine::Sloped(a, b)));
        assert!(p.incident(PlanePoint::Infinity, PlaneLine::Vertical(a)));
        assert!(p.incident(PlanePoint::Infinity, PlaneLine::AtInfinity));
    }

    #[test]
    fn projective_plane_axioms_n3() {
        for symplectic in [false, true] {
            let p = plane(3, symplectic);
            let q = p.q();
            for l in p.lines() {
                let on = p.points_on(l);
                assert_eq!(on.len(), q + 1);
                for &pt in &on {
                    assert!(p.incident(pt, l));
                }
                assert_eq!(p.points().filter(|&pt| p.incident(pt, l)).count(), q + 1);
            }
            let pts: Vec<PlanePoint> = p.points().collect();
            for (i, &u) in pts.iter().enumerate() {
                for &v in &pts[i + 1..] {
                    let l = p.line_through(u, v).unwrap();
                    assert!(p.incident(u, l) && p.incident(v, l));
                    assert_eq!(p.lines().filter(|&m| p.incident(u, m) && p.incident(v, m)).count(), 1);
                }
            }
            let lines: Vec<PlaneLine> = p.lines().collect();
            for (i, &l) in lines.iter().enumerate() {
                for &m in &lines[i + 1..] {
                    assert_eq!(pts.iter().filter(|&&x| p.incident(x, l) && p.incident(x, m)).count(), 1);
                }
            }
        }
    }

    #[test]
    fn line_axioms_sampled_n5() {
        let p = plane(5, true);
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let size = p.size() as u32;
        for _ in 0..500 {
            let u = PlanePoint::from_code(rng.gen_range(0..size), p.q());
            let v = PlanePoint::from_code(rng.gen_range(0..size), p.q());
            if u == v {
                continue;
            }
            let l = p.line_through(u, v).unwrap();
            assert!(p.incident(u, l) && p.incident(v, l));
        }
    }

    #[test]
    fn generator_actions() {
        let p = plane(5, false);
        let ctx = p.ctx();
        let tau = Collineation::translation(Fe(3), Fe(9));
        let sigma = Collineation::shear(Fe(6));
        let gamma = Collineation::frobenius(1);
        for z in ctx.elements() {
            assert_eq!(p.apply(&tau, PlanePoint::AtInfinity(z)), PlanePoint::AtInfinity(z));
            assert_eq!(p.apply(&sigma, PlanePoint::AtInfinity(z)), PlanePoint::AtInfinity(z + Fe(6)));
        }
        assert_eq!(p.apply(&sigma, PlanePoint::Infinity), PlanePoint::Infinity);
        for x in ctx.elements() {
            let y = Fe(x.0 ^ 21);
            assert_eq!(p.apply(&gamma, PlanePoint::Affine(x, y)), PlanePoint::Affine(ctx.square(x), ctx.square(y)));
        }
    }

    #[test]
    fn group_laws() {
        let p = plane(5, false);
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let g = random_g(&p, &mut rng);
            assert_eq!(p.compose(&g, &p.invert(&g)), Collineation::IDENTITY);
            assert_eq!(p.compose(&p.invert(&g), &g), Collineation::IDENTITY);
        }
        let tau = Collineation::translation(Fe(11), Fe(4));
        assert_eq!(p.compose(&tau, &tau), Collineation::IDENTITY);
        let gamma = Collineation::frobenius(1);
        let mut acc = Collineation::IDENTITY;
        for i in 1..=5 {
            acc = p.compose(&gamma, &acc);
            assert_eq!(acc == Collineation::IDENTITY, i == 5);
        }
    }

    #[test]
    fn composition_matches_pointwise_n3() {
        for symplectic in [false, true] {
            let p = plane(3, symplectic);
            assert_eq!(p.aut_order(), 8 * 8 * 8 * 3);
            let all: Vec<Collineation> = p.enumerate_aut().collect();
            let pts: Vec<PlanePoint> = p.points().collect();
            let mut rng = ChaCha8Rng::seed_from_u64(3);
            // every pair would be 2.4M compositions × 73 points; a dense sample covers the formulas
            for _ in 0..20_000 {
                let g = all[rng.gen_range(0..all.len())];
                let h = all[rng.gen_range(0..all.len())];
                let gh = p.compose(&g, &h);
                for &pt in &pts {
                    assert_eq!(p.apply(&gh, pt), p.apply(&g, p.apply(&h, pt)));
                }
            }
            // pairs against the generators, exhaustively
            let gens = [Collineation::translation(Fe(1), Fe(0)), Collineation::translation(Fe(0), Fe(1)), Collineation::shear(Fe(1)), Collineation::frobenius(1)];
            for g in &all {
                for h in &gens {
                    for &pt in &pts {
                        assert_eq!(p.apply(&p.compose(g, h), pt), p.apply(g, p.apply(h, pt)));
                        assert_eq!(p.apply(&p.compose(h, g), pt), p.apply(h, p.apply(g, pt)));
                    }
                }
            }
        }
    }

    #[test]
    fn collineations_preserve_incidence() {
        let p = plane(5, true);
        assert_eq!(p.aut_order(), 163_840);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..100 {
            let g = random_g(&p, &mut rng);
            let l = PlaneLine::from_code(rng.gen_range(0..p.size() as u32), p.q());
            let img = p.apply_line(&g, l);
            for pt in p.points_on(l) {
                assert!(p.incident(p.apply(&g, pt), img));
            }
            assert_eq!(p.apply(&g, PlanePoint::Infinity), PlanePoint::Infinity);
        }
    }

    #[test]
    fn enumerate_aut_visits_each_once() {
        let p = plane(3, false);
        let mut all: Vec<Collineation> = p.enumerate_aut().collect();
        let len = all.len();
        all.sort();
        all.dedup();
        assert_eq!(all.len(), len);
        assert_eq!(len as u64, p.aut_order());
    }

    #[test]
    fn secant_counts_of_conic_like_oval() {
        let p = plane(5, false);
        let ctx = p.ctx();
        let mut pts: Vec<PlanePoint> = ctx.elements().map(|x| PlanePoint::Affine(x, ctx.square(x))).collect();
        pts.push(PlanePoint::AtInfinity(Fe::ZERO));
        pts.push(PlanePoint::Infinity);
        let sec = p.secants(&pts);
        assert_eq!(sec.len(), 33 * 34 / 2);
        let through = pts[5];
        assert_eq!(sec.iter().filter(|&&l| p.incident(through, l)).count(), 33);
        assert_eq!(sec.iter().filter(|&&l| !p.incident(PlanePoint::Infinity, l)).count(), 32 * 33 / 2);
    }
}
