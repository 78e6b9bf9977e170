//! Designs, difference sets and bent functions attached to hyperovals.
//!
//! Lines not through `(∞)` are indexed `a·q + b` for `l_{a,b}`. The shear
//! `σ_c` and the translation `τ_{0,d}` move `l_{a,b}` to `l_{a+c, b+d}`, which
//! on indices is XOR with `c·q + d`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec;
use alloc::vec::Vec;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{Derivation, LinearizedPoly};
use crate::error::{Error, Result};
use crate::gf2n::Fe;
use crate::ovals::Hyperoval;
use crate::plane::{Collineation, Plane, PlaneLine, PlanePoint};
use crate::search::{image_codes, normalize, TypeTag};

/// A set system on `v` points with blocks stored as bitsets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Design {
    v: usize,
    words: usize,
    blocks: Vec<Vec<u64>>,
    params: Option<(usize, usize, usize)>,
}

impl Design {
    pub fn from_blocks(v: usize, blocks: impl IntoIterator<Item = Vec<u32>>) -> Self {
        let words = v.div_ceil(64);
        let blocks = blocks
            .into_iter()
            .map(|b| {
                let mut bits = vec![0u64; words];
                for p in b {
                    bits[p as usize / 64] |= 1 << (p % 64);
                }
                bits
            })
            .collect();
        Design { v, words, blocks, params: None }
    }

    /// Blocks `base ⊕ g` for every `g` in `C_2^m`, `v = 2^m`, block `g` at index `g`.
    pub fn xor_development(v: usize, base: &[u32]) -> Self {
        Self::from_blocks(v, (0..v as u32).map(|g| base.iter().map(|&d| d ^ g).collect()))
    }

    pub fn v(&self) -> usize {
        self.v
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn block(&self, i: usize) -> &[u64] {
        &self.blocks[i]
    }

    pub fn contains(&self, block: usize, point: usize) -> bool {
        self.blocks[block][point / 64] >> (point % 64) & 1 == 1
    }

    pub fn block_size(&self, i: usize) -> usize {
        self.blocks[i].iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn intersection(&self, i: usize, j: usize) -> usize {
        self.blocks[i].iter().zip(&self.blocks[j]).map(|(a, b)| (a & b).count_ones() as usize).sum()
    }

    pub fn triple_intersection(&self, i: usize, j: usize, k: usize) -> usize {
        (0..self.words)
            .map(|w| (self.blocks[i][w] & self.blocks[j][w] & self.blocks[k][w]).count_ones() as usize)
            .sum()
    }

    /// `(v, k, λ)` once [`Design::verify_symmetric`] has succeeded.
    pub fn params(&self) -> Option<(usize, usize, usize)> {
        self.params
    }

    /// Number of blocks through each point.
    pub fn replication(&self) -> Vec<usize> {
        (0..self.v).map(|p| (0..self.blocks.len()).filter(|&b| self.contains(b, p)).count()).collect()
    }

    /// Checks `#blocks = v`, constant block size `k`, constant pairwise
    /// intersection `λ` and replication `k`; stores and returns `(v, k, λ)`.
    pub fn verify_symmetric(&mut self) -> Option<(usize, usize, usize)> {
        self.params = self.compute_params();
        self.params
    }

    fn compute_params(&self) -> Option<(usize, usize, usize)> {
        if self.blocks.len() != self.v || self.v < 2 {
            return None;
        }
        let k = self.block_size(0);
        if (1..self.v).any(|i| self.block_size(i) != k) {
            return None;
        }
        let lambda = self.intersection(0, 1);
        for i in 0..self.v {
            for j in i + 1..self.v {
                if self.intersection(i, j) != lambda {
                    return None;
                }
            }
        }
        if self.replication().iter().any(|&r| r != k) {
            return None;
        }
        Some((self.v, k, lambda))
    }

    /// Relabels points by `point_perm` and reorders blocks by `block_perm`.
    pub fn permuted(&self, point_perm: &[u32], block_perm: &[u32]) -> Design {
        let blocks = block_perm.iter().map(|&b| {
            (0..self.v as u32).filter(|&p| self.contains(b as usize, p as usize)).map(|p| point_perm[p as usize]).collect()
        });
        let mut d = Self::from_blocks(self.v, blocks);
        d.params = self.params;
        d
    }
}

/// `k = q(q+1)/2`, `λ = q²/4 + q/2` for a plane of order `q`.
pub fn expected_params(q: usize) -> (usize, usize, usize) {
    (q * q, q * (q + 1) / 2, q * q / 4 + q / 2)
}

fn line_index(q: usize, l: PlaneLine) -> Option<u32> {
    match l {
        PlaneLine::Sloped(a, b) => Some(a.0 * q as u32 + b.0),
        _ => None,
    }
}

/// Secants of `o` not through `(∞)`, as line indices.
pub fn base_block(plane: &Plane, o: &Hyperoval) -> Vec<u32> {
    let pts: Vec<PlanePoint> = o.points().collect();
    plane.secants(&pts).into_iter().filter_map(|l| line_index(plane.q(), l)).collect()
}

fn require_type_a(plane: &Plane, o: &Hyperoval) -> Result<()> {
    if !o.contains(PlanePoint::Infinity) {
        return Err(Error::NotTypeA);
    }
    match normalize(plane, o) {
        Ok((TypeTag::A, ..)) => Ok(()),
        _ => Err(Error::NotTypeA),
    }
}

fn is_normalized(o: &Hyperoval) -> bool {
    o.contains(PlanePoint::AtInfinity(Fe::ZERO)) && o.contains(PlanePoint::Affine(Fe::ZERO, Fe::ZERO))
}

/// The `q²` images `σ_c τ_{0,d} O` of a normalized type (a) hyperoval, indexed `c·q + d`.
pub fn sigma_orbit(plane: &Plane, o: &Hyperoval) -> Result<Vec<Hyperoval>> {
    require_type_a(plane, o)?;
    if !is_normalized(o) {
        return Err(Error::NotTypeA);
    }
    let q = plane.q();
    let ctx = plane.ctx();
    let mut out = Vec::with_capacity(q * q);
    for c in ctx.elements() {
        for d in ctx.elements() {
            let g = Collineation { a: Fe::ZERO, b: d, c, k: 0 };
            out.push(Hyperoval::from_codes(q, image_codes(plane, &g, o)));
        }
    }
    Ok(out)
}

/// Intersection sizes of a type (b) hyperoval with the other members of its orbit
/// under translations and shears.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitIntersections {
    pub distinct_images: usize,
    /// `|O ∩ O′|` ↦ number of images `O′ ≠ O`.
    pub histogram: BTreeMap<usize, u64>,
    /// Whether `f(v)⋆α = θ` has a solution, `θ` the nonzero root of `f`.
    pub six_condition: bool,
}

impl OrbitIntersections {
    pub fn has_six(&self) -> bool {
        self.histogram.contains_key(&6)
    }
}

pub fn orbit_intersections(plane: &Plane, o: &Hyperoval) -> Result<OrbitIntersections> {
    let (tag, rec, _) = normalize(plane, o).map_err(|_| Error::NotTypeB)?;
    if tag != TypeTag::B || !is_normalized(o) {
        return Err(Error::NotTypeB);
    }
    let ctx = plane.ctx();
    let q = plane.q();
    let alpha = rec.alpha.expect("type (b)");
    let fm = rec.coeffs.matrix(ctx);
    let theta = Fe(fm.kernel_basis()[0]);
    let six_condition = ctx.elements().any(|v| plane.mul(Fe(fm.apply(v.0)), alpha) == theta);

    let mut images = BTreeSet::new();
    for c in ctx.elements() {
        for a in ctx.elements() {
            for b in ctx.elements() {
                images.insert(image_codes(plane, &Collineation { a, b, c, k: 0 }, o));
            }
        }
    }
    let mut histogram = BTreeMap::new();
    for img in &images {
        if img.as_slice() == o.codes() {
            continue;
        }
        let n = o.intersection_size(&Hyperoval::from_codes(q, img.clone()));
        *histogram.entry(n).or_insert(0) += 1;
    }
    Ok(OrbitIntersections { distinct_images: images.len(), histogram, six_condition })
}

/// Points: lines not through `(∞)`. Blocks: for each orbit member, its secants not through `(∞)`.
pub fn build_design(plane: &Plane, o: &Hyperoval) -> Result<Design> {
    require_type_a(plane, o)?;
    let q = plane.q();
    let mut d = Design::xor_development(q * q, &base_block(plane, o));
    match d.verify_symmetric() {
        Some(p) if p == expected_params(q) => Ok(d),
        _ => Err(Error::ParameterMismatch),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GroupId {
    /// `{τ_{0,b} σ_c}`, payload `(b, c)`.
    G1,
    /// `{τ_{a,b} σ_a}`, payload `(a, b)`.
    G2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupElement {
    pub group: GroupId,
    pub x: Fe,
    pub y: Fe,
}

impl GroupElement {
    pub fn identity(group: GroupId) -> Self {
        GroupElement { group, x: Fe::ZERO, y: Fe::ZERO }
    }

    /// All `q²` elements, `x` major.
    pub fn all(plane: &Plane, group: GroupId) -> impl Iterator<Item = GroupElement> + '_ {
        let ctx = plane.ctx();
        ctx.elements().flat_map(move |x| ctx.elements().map(move |y| GroupElement { group, x, y }))
    }

    pub fn index(&self, q: usize) -> usize {
        self.x.0 as usize * q + self.y.0 as usize
    }

    /// `self ∘ other` (apply `other` first).
    pub fn mul(&self, plane: &Plane, other: &GroupElement) -> GroupElement {
        debug_assert_eq!(self.group, other.group);
        match self.group {
            GroupId::G1 => GroupElement { group: GroupId::G1, x: self.x + other.x, y: self.y + other.y },
            GroupId::G2 => GroupElement {
                group: GroupId::G2,
                x: self.x + other.x,
                y: self.y + other.y + plane.mul(other.x, self.x),
            },
        }
    }

    pub fn inv(&self, plane: &Plane) -> GroupElement {
        match self.group {
            GroupId::G1 => *self,
            GroupId::G2 => GroupElement { y: self.y + plane.mul(self.x, self.x), ..*self },
        }
    }

    pub fn order(&self, plane: &Plane) -> u32 {
        let id = Self::identity(self.group);
        let mut g = *self;
        let mut k = 1;
        while g != id {
            g = g.mul(plane, self);
            k += 1;
        }
        k
    }

    /// The element as a collineation in normal form.
    pub fn collineation(&self, plane: &Plane) -> Collineation {
        match self.group {
            GroupId::G1 => Collineation { a: Fe::ZERO, b: self.x, c: self.y, k: 0 },
            GroupId::G2 => Collineation { a: self.x, b: self.y + plane.mul(self.x, self.x), c: self.x, k: 0 },
        }
    }

    /// Image of `l_{0,0}`.
    pub fn base_line_image(&self, plane: &Plane) -> PlaneLine {
        match self.group {
            GroupId::G1 => PlaneLine::Sloped(self.y, self.x),
            GroupId::G2 => PlaneLine::Sloped(self.x, self.y + plane.mul(self.x, self.x)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DifferenceSet {
    pub group: GroupId,
    pub elements: Vec<GroupElement>,
    pub params: (usize, usize, usize),
    pub complement_params: (usize, usize, usize),
}

/// `λ` if every non-identity element is hit equally often by `d₁d₂⁻¹`.
fn difference_lambda(plane: &Plane, set: &[GroupElement]) -> Option<usize> {
    let q = plane.q();
    let inv: Vec<GroupElement> = set.iter().map(|d| d.inv(plane)).collect();
    let mut hits = vec![0usize; q * q];
    for d1 in set {
        for d2i in &inv {
            hits[d1.mul(plane, d2i).index(q)] += 1;
        }
    }
    let lambda = hits[1];
    hits[1..].iter().all(|&h| h == lambda).then_some(lambda)
}

/// The elements of `G_i` moving `l_{0,0}` into the base block, verified by
/// counting all ordered differences, together with the complement's parameters.
pub fn difference_set(plane: &Plane, o: &Hyperoval, which: GroupId) -> Result<DifferenceSet> {
    require_type_a(plane, o)?;
    let q = plane.q();
    let mut in_block = vec![false; q * q];
    for i in base_block(plane, o) {
        in_block[i as usize] = true;
    }
    let (elements, complement): (Vec<GroupElement>, Vec<GroupElement>) = GroupElement::all(plane, which)
        .partition(|g| in_block[line_index(q, g.base_line_image(plane)).expect("sloped") as usize]);
    let v = q * q;
    let lambda = difference_lambda(plane, &elements).ok_or(Error::NotADifferenceSet)?;
    let lambda_c = difference_lambda(plane, &complement).ok_or(Error::NotADifferenceSet)?;
    let params = (v, elements.len(), lambda);
    let complement_params = (v, complement.len(), lambda_c);
    let (_, k, l) = expected_params(q);
    if params != (v, k, l) || complement_params != (v, v - k, v + l - 2 * k) {
        return Err(Error::NotADifferenceSet);
    }
    Ok(DifferenceSet { group: which, elements, params, complement_params })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupStats {
    pub group: GroupId,
    pub order: u64,
    /// Element order ↦ count.
    pub histogram: BTreeMap<u32, u64>,
    pub abelian: bool,
    pub exponent: u32,
    /// Whether the data force `C_2^{2n}` (G1) or `C_4^n` (G2).
    pub certified: bool,
}

pub fn group_order_stats(plane: &Plane, which: GroupId) -> GroupStats {
    let n = plane.n();
    let elems: Vec<GroupElement> = GroupElement::all(plane, which).collect();
    let mut histogram = BTreeMap::new();
    for g in &elems {
        *histogram.entry(g.order(plane)).or_insert(0u64) += 1;
    }
    let abelian = elems.iter().all(|g| elems.iter().all(|h| g.mul(plane, h) == h.mul(plane, g)));
    let exponent = histogram.keys().copied().fold(1, lcm);
    let order = elems.len() as u64;
    let small: u64 = histogram.iter().filter(|(&o, _)| o <= 2).map(|(_, c)| c).sum();
    let certified = order == 1 << (2 * n)
        && abelian
        && match which {
            GroupId::G1 => exponent == 2,
            GroupId::G2 => exponent == 4 && small == 1 << n,
        };
    GroupStats { group: which, order, histogram, abelian, exponent, certified }
}

fn lcm(a: u32, b: u32) -> u32 {
    let (mut x, mut y) = (a, b);
    while y != 0 {
        (x, y) = (y, x % y);
    }
    a / x * b
}

/// Walsh–Hadamard transform of `(-1)^f`.
pub fn walsh_spectrum(f: &[bool]) -> Vec<i32> {
    let mut w: Vec<i32> = f.iter().map(|&b| if b { -1 } else { 1 }).collect();
    let mut h = 1;
    while h < w.len() {
        for i in (0..w.len()).step_by(2 * h) {
            for j in i..i + h {
                let (a, b) = (w[j], w[j + h]);
                w[j] = a + b;
                w[j + h] = a - b;
            }
        }
        h *= 2;
    }
    w
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BentReport {
    /// Truth table on `2n` bits.
    pub indicator: Vec<bool>,
    /// Walsh value ↦ multiplicity.
    pub spectrum: BTreeMap<i32, u64>,
    pub is_bent: bool,
}

/// Bent test of a truth table on `2m` variables.
pub fn bent_report(indicator: Vec<bool>) -> BentReport {
    let bound = 1i32 << (indicator.len().trailing_zeros() / 2);
    let mut spectrum = BTreeMap::new();
    for w in walsh_spectrum(&indicator) {
        *spectrum.entry(w).or_insert(0) += 1;
    }
    let is_bent = spectrum.keys().all(|w| w.abs() == bound);
    BentReport { indicator, spectrum, is_bent }
}

/// Indicator of the base block (equivalently of `D₁ ⊂ G1`) at index `c·q + b`.
pub fn bent_from_hyperoval(plane: &Plane, o: &Hyperoval) -> Result<BentReport> {
    if !o.contains(PlanePoint::Infinity) {
        return Err(Error::InfinityNotInOval);
    }
    let q = plane.q();
    let mut f = vec![false; q * q];
    for i in base_block(plane, o) {
        f[i as usize] = true;
    }
    Ok(bent_report(f))
}

/// The spread bent function of a type (a) function `F`: `f(x, x∘a) = Tr(x F̄(a))`
/// and `f(0, y) = 0`, where `∘` is the symplectic derivative (transpose, then
/// dual) of the plane's multiplication and `F̄` the adjoint of `F`. The graph
/// of `F̄` is the dual of the line hyperoval that `F` induces in `Π(∘)`.
/// Index `x + q·y`.
pub fn spread_bent_function(plane: &Plane, f: &LinearizedPoly) -> Result<Vec<bool>> {
    let ctx = plane.ctx();
    let q = plane.q();
    let spread = plane.presemifield().derive(Derivation::Transpose)?.derive(Derivation::Dual)?;
    let fm = f.adjoint(ctx).matrix(ctx);
    let mut out = vec![false; q * q];
    for a in ctx.elements() {
        let r = spread.right_mul_matrix(a);
        let fa = Fe(fm.apply(a.0));
        for x in ctx.elements().skip(1) {
            let y = r.apply(x.0) as usize;
            out[x.0 as usize + q * y] = ctx.trace(ctx.mul(x, fa));
        }
    }
    Ok(out)
}

/// The symmetric design developed in `C_2^{2n}` from the spread bent function
/// of `F`, taking whichever of its support or co-support has size `q(q+1)/2`.
pub fn bent_design(plane: &Plane, f: &LinearizedPoly) -> Result<Design> {
    let q = plane.q();
    let table = spread_bent_function(plane, f)?;
    let (_, k, _) = expected_params(q);
    let support: Vec<u32> = (0..table.len() as u32).filter(|&i| table[i as usize]).collect();
    let base: Vec<u32> = if support.len() == k {
        support
    } else {
        (0..table.len() as u32).filter(|&i| !table[i as usize]).collect()
    };
    let mut d = Design::xor_development(q * q, &base);
    match d.verify_symmetric() {
        Some(p) if p == expected_params(q) => Ok(d),
        _ => Err(Error::ParameterMismatch),
    }
}

/// GF(2) rank of the incidence matrix (blocks as rows).
pub fn rank2(d: &Design) -> usize {
    let mut rows: Vec<Vec<u64>> = d.blocks.clone();
    let mut rank = 0;
    for col in 0..d.v {
        let (w, bit) = (col / 64, 1u64 << (col % 64));
        let Some(p) = (rank..rows.len()).find(|&r| rows[r][w] & bit != 0) else { continue };
        rows.swap(rank, p);
        let pivot = core::mem::take(&mut rows[rank]);
        for r in rows.iter_mut().skip(rank + 1) {
            if r[w] & bit != 0 {
                for (x, y) in r[w..].iter_mut().zip(&pivot[w..]) {
                    *x ^= y;
                }
            }
        }
        rows[rank] = pivot;
        rank += 1;
    }
    rank
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DesignInvariants {
    pub rank2: usize,
    pub params: Option<(usize, usize, usize)>,
    /// Replication number equals block size at every point.
    pub replication_ok: bool,
}

pub fn design_invariants(d: &Design) -> DesignInvariants {
    let params = d.compute_params();
    let k = d.block_size(0);
    DesignInvariants { rank2: rank2(d), params, replication_ok: d.replication().iter().all(|&r| r == k) }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    Rank2 { first: usize, second: usize },
    /// Some three blocks of one design meet in `value` points; no three blocks
    /// of the other do (checked exhaustively).
    TripleIntersection { value: usize, found_in_first: bool },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Distinction {
    Distinguished(Witness),
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistinguishReport {
    pub outcome: Distinction,
    pub rank2: (usize, usize),
    /// Sampled triple intersection sizes ↦ counts, per design.
    pub triples: (BTreeMap<usize, u64>, BTreeMap<usize, u64>),
}

fn sample_triples(d: &Design, samples: usize, seed: u64) -> BTreeMap<usize, u64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let b = d.num_blocks();
    let mut hist = BTreeMap::new();
    for _ in 0..samples {
        let i = rng.gen_range(0..b);
        let mut j = rng.gen_range(0..b - 1);
        if j >= i {
            j += 1;
        }
        let mut k = rng.gen_range(0..b - 2);
        for m in [i.min(j), i.max(j)] {
            if k >= m {
                k += 1;
            }
        }
        *hist.entry(d.triple_intersection(i, j, k)).or_insert(0) += 1;
    }
    hist
}

/// Whether any three distinct blocks meet in exactly `value` points.
pub fn has_triple_value(d: &Design, value: usize) -> bool {
    let b = d.num_blocks();
    let mut pair = vec![0u64; d.words];
    for i in 0..b {
        for j in i + 1..b {
            for (w, (x, y)) in pair.iter_mut().zip(d.blocks[i].iter().zip(&d.blocks[j])) {
                *w = x & y;
            }
            for k in j + 1..b {
                let s: u32 = pair.iter().zip(&d.blocks[k]).map(|(x, y)| (x & y).count_ones()).sum();
                if s as usize == value {
                    return true;
                }
            }
        }
    }
    false
}

/// Compares 2-ranks, then sampled triple intersection sizes. A triple value
/// seen in one sample is only reported as a witness once an exhaustive scan
/// shows the other design never attains it.
pub fn distinguish_designs(d1: &Design, d2: &Design, samples: usize, seed: u64) -> Result<DistinguishReport> {
    let p1 = d1.params.or_else(|| d1.compute_params());
    let p2 = d2.params.or_else(|| d2.compute_params());
    if p1.is_none() || p1 != p2 {
        return Err(Error::ParameterMismatch);
    }
    let r = (rank2(d1), rank2(d2));
    let triples = (sample_triples(d1, samples, seed), sample_triples(d2, samples, seed));
    if r.0 != r.1 {
        let outcome = Distinction::Distinguished(Witness::Rank2 { first: r.0, second: r.1 });
        return Ok(DistinguishReport { outcome, rank2: r, triples });
    }
    let witness = triple_witness(d1, d2, &triples);
    let outcome = witness.map_or(Distinction::Inconclusive, Distinction::Distinguished);
    Ok(DistinguishReport { outcome, rank2: r, triples })
}

fn triple_witness(d1: &Design, d2: &Design, triples: &(BTreeMap<usize, u64>, BTreeMap<usize, u64>)) -> Option<Witness> {
    for (mine, theirs, other, found_in_first) in [(&triples.0, &triples.1, d2, true), (&triples.1, &triples.0, d1, false)] {
        for &value in mine.keys().filter(|v| !theirs.contains_key(v)) {
            if !has_triple_value(other, value) {
                return Some(Witness::TripleIntersection { value, found_in_first });
            }
        }
    }
    None
}
