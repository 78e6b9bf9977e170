//! Translation hyperovals of type (a) and (b): membership tests, canonical
//! forms under the collineation group, normalisation and exhaustive
//! isomorph-free classification.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

use sha2::{Digest, Sha256};

use crate::algebra::{rank_of_rows, BitMatrix, LinearizedPoly, PlaneId};
use crate::error::{Error, Result};
use crate::gf2n::{Fe, FieldContext};
use crate::ovals::{type_a_hyperoval, type_b_hyperoval, Hyperoval};
use crate::plane::{Collineation, Plane, PlanePoint};

/// Largest degree for which the full coefficient domain is searched.
pub const MAX_FULL_DEGREE: u32 = 5;
/// Largest degree for which the `{0, 1}` coefficient domain is searched.
pub const MAX_ZERO_ONE_DEGREE: u32 = 11;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TypeTag {
    A,
    B,
}

impl TypeTag {
    pub fn name(self) -> &'static str {
        match self {
            TypeTag::A => "a",
            TypeTag::B => "b",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Domain {
    Full,
    ZeroOne,
}

/// True iff `L` is a permutation and `x ↦ L(x) + x⋆a` has a kernel of size 2 for every `a ≠ 0`.
pub fn check_type_a(plane: &Plane, l: &LinearizedPoly) -> bool {
    let rights = right_matrices(plane);
    check_type_a_matrix(&l.matrix(plane.ctx()), &rights)
}

/// `α` if `L` is two-to-one and `y ↦ L(y)⋆a + y` is injective for `a = α` only
/// and two-to-one for every other `a ≠ 0`.
pub fn check_type_b(plane: &Plane, l: &LinearizedPoly) -> Option<Fe> {
    let rights = right_matrices(plane);
    check_type_b_matrix(&l.matrix(plane.ctx()), &rights)
}

/// `R_a` for `a = 1, …, q-1`.
fn right_matrices(plane: &Plane) -> Vec<BitMatrix> {
    plane.ctx().elements().skip(1).map(|a| plane.right_mul_matrix(a)).collect()
}

fn check_type_a_matrix(m: &BitMatrix, rights: &[BitMatrix]) -> bool {
    let n = m.n();
    m.rank() == n && rights.iter().all(|r| m.add(r).rank() == n - 1)
}

fn check_type_b_matrix(m: &BitMatrix, rights: &[BitMatrix]) -> Option<Fe> {
    let n = m.n() as usize;
    if m.rank() as usize != n - 1 {
        return None;
    }
    let mut alpha = None;
    let mut rows = [0u32; 32];
    for (i, r) in rights.iter().enumerate() {
        for (j, row) in rows.iter_mut().enumerate().take(n) {
            *row = r.apply(m.row(j)) ^ (1 << j);
        }
        let rank = rank_of_rows(&rows[..n]) as usize;
        if rank == n {
            if alpha.is_some() {
                return None;
            }
            alpha = Some(Fe(i as u32 + 1));
        } else if rank != n - 1 {
            return None;
        }
    }
    alpha
}

/// The lexicographically least image of a point set under the collineation
/// group, with the number of group elements attaining it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    pub codes: Vec<u32>,
    pub stabilizer: u64,
    pub group_order: u64,
}

impl CanonicalForm {
    pub fn orbit_size(&self) -> u64 {
        self.group_order / self.stabilizer
    }

    pub fn digest(&self) -> [u8; 32] {
        digest_codes(&self.codes)
    }
}

/// SHA-256 of the codes as little-endian 32-bit words.
pub fn digest_codes(codes: &[u32]) -> [u8; 32] {
    let mut h = Sha256::new();
    for c in codes {
        h.update(c.to_le_bytes());
    }
    h.finalize().into()
}

/// Sorted codes of `g(O)`.
pub fn image_codes(plane: &Plane, g: &Collineation, o: &Hyperoval) -> Vec<u32> {
    let q = plane.q();
    let mut v: Vec<u32> = o.points().map(|p| plane.apply(g, p).code(q)).collect();
    v.sort_unstable();
    v
}

/// Whether the affine points form a coset of an additive subgroup.
fn affine_is_coset(n: u32, affine: &[(Fe, Fe)]) -> bool {
    let Some(&(x0, y0)) = affine.first() else { return true };
    let mut basis: Vec<u64> = Vec::new();
    for &(x, y) in affine {
        let mut v = ((x + x0).0 as u64) << n | (y + y0).0 as u64;
        for &b in &basis {
            v = v.min(v ^ b);
        }
        if v != 0 {
            basis.push(v);
            basis.sort_unstable_by(|a, b| b.cmp(a));
        }
    }
    basis.len() < 64 && 1usize << basis.len() == affine.len()
}

/// Canonical form of a point set under `Σ ⋊ ⟨γ⟩`.
///
/// A minimal image must send some point of the set on `l_∞` to `(0)` and some
/// affine point to `(0, 0)`, so only those shears and translations are tried.
/// When the affine part is a coset, all of its translations give the same image.
pub fn canonical_form(plane: &Plane, o: &Hyperoval) -> CanonicalForm {
    let ctx = plane.ctx();
    let q = plane.q();
    let mut shears = o.carrier();
    if shears.is_empty() {
        shears = ctx.elements().collect();
    }
    let affine = o.affine();
    let (translations, weight): (Vec<(Fe, Fe)>, u64) = if affine.is_empty() {
        (vec![(Fe::ZERO, Fe::ZERO)], (q * q) as u64)
    } else if affine_is_coset(plane.n(), &affine) {
        (vec![affine[0]], affine.len() as u64)
    } else {
        (affine, 1)
    };
    let mut best: Option<Vec<u32>> = None;
    let mut count = 0u64;
    for k in 0..plane.frobenius_order() {
        for &c in &shears {
            for &(a, b) in &translations {
                let img = image_codes(plane, &Collineation { a, b, c, k }, o);
                match best.as_ref().map(|bst| img.cmp(bst)) {
                    Some(core::cmp::Ordering::Greater) => {}
                    Some(core::cmp::Ordering::Equal) => count += weight,
                    _ => {
                        best = Some(img);
                        count = weight;
                    }
                }
            }
        }
    }
    CanonicalForm { codes: best.unwrap_or_default(), stabilizer: count, group_order: plane.aut_order() }
}

/// One equivalence class of translation hyperovals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HyperovalRecord {
    pub plane_id: PlaneId,
    pub type_tag: TypeTag,
    pub coeffs: LinearizedPoly,
    /// Second carrier point, type (b) only.
    pub alpha: Option<Fe>,
    pub digest: [u8; 32],
    pub orbit_size: u64,
    /// Number of enumerated polynomials that fell into this class.
    pub hits: u64,
}

impl HyperovalRecord {
    pub fn hyperoval(&self, ctx: &FieldContext) -> Hyperoval {
        match self.type_tag {
            TypeTag::A => type_a_hyperoval(ctx, &self.coeffs),
            TypeTag::B => type_b_hyperoval(ctx, &self.coeffs, self.alpha.expect("type (b) record has α")),
        }
    }
}

/// Brings a translation hyperoval into the form of type (a) or (b) by a
/// translation and a shear. Returns the record and the collineation used.
pub fn normalize(plane: &Plane, o: &Hyperoval) -> Result<(TypeTag, HyperovalRecord, Collineation)> {
    let ctx = plane.ctx();
    let q = plane.q();
    let affine = o.affine();
    let carrier = o.carrier();
    if affine.len() != q || carrier.is_empty() || !affine_is_coset(plane.n(), &affine) {
        return Err(Error::NotTranslation);
    }
    let (x0, y0) = affine[0];
    let g = Collineation { a: x0, b: y0, c: carrier[0], k: 0 };
    let moved = Hyperoval::from_codes(q, image_codes(plane, &g, o));
    let n = ctx.n() as usize;
    let mut graph = vec![None; q];
    let tag = if moved.contains(PlanePoint::Infinity) { TypeTag::A } else { TypeTag::B };
    for (x, y) in moved.affine() {
        let (from, to) = match tag {
            TypeTag::A => (x, y),
            TypeTag::B => (y, x),
        };
        if graph[from.0 as usize].replace(to).is_some() {
            return Err(Error::NotTranslation);
        }
    }
    let values: Vec<Fe> = (0..n).map(|i| graph[1 << i].expect("graph is total")).collect();
    let coeffs = LinearizedPoly::interpolate(ctx, &values);
    let alpha = match tag {
        TypeTag::A => None,
        TypeTag::B => Some(carrier[0] + carrier[1]),
    };
    let cf = canonical_form(plane, o);
    let record = HyperovalRecord {
        plane_id: plane.presemifield().id(),
        type_tag: tag,
        coeffs,
        alpha,
        digest: cf.digest(),
        orbit_size: cf.orbit_size(),
        hits: 1,
    };
    Ok((tag, record, g))
}

#[derive(Clone, Debug)]
struct ClassEntry {
    coeffs: Vec<Fe>,
    alpha: Option<Fe>,
    orbit_size: u64,
    hits: u64,
}

fn rep_key(coeffs: &[Fe]) -> impl Iterator<Item = u32> + '_ {
    coeffs.iter().rev().map(|c| c.0)
}

/// Classes found so far, keyed by canonical codes. Merging is order independent.
#[derive(Clone, Debug)]
pub struct Classification {
    plane_id: PlaneId,
    tag: TypeTag,
    classes: BTreeMap<Vec<u32>, ClassEntry>,
}

impl Classification {
    pub fn new(plane_id: PlaneId, tag: TypeTag) -> Self {
        Classification { plane_id, tag, classes: BTreeMap::new() }
    }

    fn insert(&mut self, codes: Vec<u32>, entry: ClassEntry) {
        match self.classes.get_mut(&codes) {
            None => {
                self.classes.insert(codes, entry);
            }
            Some(e) => {
                e.hits += entry.hits;
                if rep_key(&entry.coeffs).lt(rep_key(&e.coeffs)) {
                    e.coeffs = entry.coeffs;
                    e.alpha = entry.alpha;
                }
            }
        }
    }

    pub fn merge(&mut self, other: Classification) {
        for (codes, e) in other.classes {
            self.insert(codes, e);
        }
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// One record per class, sorted by digest.
    pub fn records(&self) -> Vec<HyperovalRecord> {
        let mut out: Vec<HyperovalRecord> = self
            .classes
            .iter()
            .map(|(codes, e)| HyperovalRecord {
                plane_id: self.plane_id,
                type_tag: self.tag,
                coeffs: LinearizedPoly::new(e.coeffs.clone()),
                alpha: e.alpha,
                digest: digest_codes(codes),
                orbit_size: e.orbit_size,
                hits: e.hits,
            })
            .collect();
        out.sort_by(|a, b| a.digest.cmp(&b.digest));
        out
    }
}

/// Coefficient values allowed by a domain.
pub fn domain_values(ctx: &FieldContext, domain: Domain) -> Vec<Fe> {
    match domain {
        Domain::Full => ctx.elements().collect(),
        Domain::ZeroOne => vec![Fe::ZERO, Fe::ONE],
    }
}

pub fn check_domain(n: u32, domain: Domain) -> Result<()> {
    let max = match domain {
        Domain::Full => MAX_FULL_DEGREE,
        Domain::ZeroOne => MAX_ZERO_ONE_DEGREE,
    };
    if n > max {
        Err(Error::InfeasibleDomain { n })
    } else {
        Ok(())
    }
}

/// Searches the candidates whose leading coefficient `a_{n-1}` is `lead`.
///
/// The union over all `lead` in [`domain_values`] is the full search.
pub fn search_partition(plane: &Plane, tag: TypeTag, domain: Domain, lead: Fe) -> Result<Classification> {
    let ctx = plane.ctx();
    let n = ctx.n();
    check_domain(n, domain)?;
    let values = domain_values(ctx, domain);
    let rights = right_matrices(plane);
    // table[i][v] = matrix of x ↦ values[v]·x^(2^i)
    let table: Vec<Vec<BitMatrix>> = (0..n)
        .map(|i| {
            values
                .iter()
                .map(|&c| BitMatrix::from_fn(n, |j| ctx.mul(c, ctx.frob(Fe(1 << j), i)).0))
                .collect()
        })
        .collect();
    let last = n as usize - 1;
    let lead_matrix = BitMatrix::from_fn(n, |j| ctx.mul(lead, ctx.frob(Fe(1 << j), last as u32)).0);
    let base = values.len();
    let mut digits = vec![0usize; last];
    let mut m = table[..last].iter().fold(lead_matrix, |acc, t| acc.add(&t[0]));
    let mut out = Classification::new(plane.presemifield().id(), tag);
    loop {
        let hit = match tag {
            TypeTag::A => check_type_a_matrix(&m, &rights).then_some(None),
            TypeTag::B => check_type_b_matrix(&m, &rights).map(Some),
        };
        if let Some(alpha) = hit {
            let mut coeffs: Vec<Fe> = digits.iter().map(|&d| values[d]).collect();
            coeffs.push(lead);
            let l = LinearizedPoly::new(coeffs.clone());
            let o = match alpha {
                None => type_a_hyperoval(ctx, &l),
                Some(al) => type_b_hyperoval(ctx, &l, al),
            };
            let cf = canonical_form(plane, &o);
            let entry = ClassEntry { coeffs, alpha, orbit_size: cf.orbit_size(), hits: 1 };
            out.insert(cf.codes, entry);
        }
        // odometer step
        let mut i = 0;
        loop {
            if i == last {
                return Ok(out);
            }
            let d = digits[i];
            let next = if d + 1 == base { 0 } else { d + 1 };
            m = m.add(&table[i][d]).add(&table[i][next]);
            digits[i] = next;
            if next != 0 {
                break;
            }
            i += 1;
        }
    }
}

/// All classes of translation hyperovals of the given type whose defining
/// polynomial has coefficients in `domain`, one record per class, sorted by digest.
pub fn search_translation_hyperovals(plane: &Plane, tag: TypeTag, domain: Domain) -> Result<Vec<HyperovalRecord>> {
    check_domain(plane.n(), domain)?;
    let mut all = Classification::new(plane.presemifield().id(), tag);
    for lead in domain_values(plane.ctx(), domain) {
        all.merge(search_partition(plane, tag, domain, lead)?);
    }
    Ok(all.records())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Presemifield;
    use crate::ovals::{is_hyperoval, og_hyperoval, standard_hyperoval};
    use alloc::sync::Arc;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn kn(n: u32) -> Plane {
        Plane::new(Presemifield::knuth(Arc::new(FieldContext::new(n, None).unwrap())))
    }

    fn td(n: u32) -> Plane {
        Plane::new(Presemifield::knuth_symplectic(Arc::new(FieldContext::new(n, None).unwrap())))
    }

    fn brute_canonical(plane: &Plane, o: &Hyperoval) -> (Vec<u32>, u64) {
        let mut best: Option<Vec<u32>> = None;
        let mut count = 0;
        for g in plane.enumerate_aut() {
            let img = image_codes(plane, &g, o);
            match &best {
                Some(b) if img > *b => {}
                Some(b) if img == *b => count += 1,
                _ => {
                    best = Some(img);
                    count = 1;
                }
            }
        }
        (best.unwrap(), count)
    }

    #[test]
    fn type_checks_on_known_functions() {
        let p = kn(5);
        assert!(check_type_a(&p, &LinearizedPoly::from_exponents(5, &[1])));
        assert!(check_type_a(&p, &LinearizedPoly::from_exponents(5, &[3, 2, 1])));
        assert!(!check_type_a(&p, &LinearizedPoly::zero(5)));
        assert_eq!(check_type_b(&p, &LinearizedPoly::from_exponents(5, &[1, 0])), Some(Fe::ONE));
        assert_eq!(check_type_b(&p, &LinearizedPoly::from_exponents(5, &[1])), None);
        assert_eq!(check_type_b(&td(5), &LinearizedPoly::from_exponents(5, &[2, 0])), Some(Fe::ONE));
    }

    #[test]
    fn check_type_a_agrees_with_hyperoval_test() {
        let p = kn(5);
        let ctx = p.ctx();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut positives = 0;
        for i in 0..400 {
            let coeffs: Vec<Fe> = (0..5)
                .map(|_| if i % 2 == 0 { Fe(rng.gen_range(0..32)) } else { Fe(rng.gen_range(0..2)) })
                .collect();
            let l = LinearizedPoly::new(coeffs);
            let expect = is_hyperoval(&p, &type_a_hyperoval(ctx, &l)).unwrap();
            positives += expect as u32;
            assert_eq!(check_type_a(&p, &l), expect);
        }
        assert!(positives > 0);
    }

    #[test]
    fn pruned_canonical_form_matches_brute_force() {
        let p = kn(3);
        let ctx = p.ctx();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let std = standard_hyperoval(&p).unwrap();
        let og = og_hyperoval(ctx);
        let mut sets = vec![std.clone(), og.clone()];
        for _ in 0..4 {
            let g = p.collineation_at(rng.gen_range(0..p.aut_order()));
            sets.push(Hyperoval::from_codes(8, image_codes(&p, &g, &og)));
            sets.push(Hyperoval::from_codes(8, image_codes(&p, &g, &std)));
        }
        // a set that is not a coset and has no point on l_∞
        sets.push(Hyperoval::from_codes(8, vec![9, 10, 13, 20, 30, 41]));
        for s in &sets {
            let cf = canonical_form(&p, s);
            let (codes, count) = brute_canonical(&p, s);
            assert_eq!(cf.codes, codes);
            assert_eq!(cf.stabilizer, count);
        }
        let p = td(3);
        let o = crate::ovals::od_hyperoval(p.ctx(), 1).unwrap();
        let cf = canonical_form(&p, &o);
        assert_eq!((cf.codes.clone(), cf.stabilizer), brute_canonical(&p, &o));
    }

    #[test]
    fn canonical_form_is_orbit_invariant() {
        let p = kn(5);
        let o = og_hyperoval(p.ctx());
        let base = canonical_form(&p, &o);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let g = p.collineation_at(rng.gen_range(0..p.aut_order()));
            let img = Hyperoval::from_codes(32, image_codes(&p, &g, &o));
            assert_eq!(canonical_form(&p, &img).digest(), base.digest());
        }
        assert_ne!(canonical_form(&p, &standard_hyperoval(&p).unwrap()).digest(), base.digest());
    }

    #[test]
    fn og_is_equivalent_to_og_prime() {
        let p = kn(5);
        let ctx = p.ctx();
        let gp = LinearizedPoly::from_exponents(5, &[4, 3]);
        let alpha = check_type_b(&p, &gp).unwrap();
        let o2 = type_b_hyperoval(ctx, &gp, alpha);
        assert_eq!(canonical_form(&p, &og_hyperoval(ctx)).digest(), canonical_form(&p, &o2).digest());
    }

    #[test]
    fn normalize_undoes_collineations() {
        let p = kn(5);
        let ctx = p.ctx();
        let std = standard_hyperoval(&p).unwrap();
        let moved = Hyperoval::from_codes(32, image_codes(&p, &Collineation::translation(Fe(3), Fe(17)), &std));
        let (tag, rec, g) = normalize(&p, &moved).unwrap();
        assert_eq!(tag, TypeTag::A);
        assert_eq!(rec.coeffs, LinearizedPoly::from_exponents(5, &[1]));
        assert_eq!(Hyperoval::from_codes(32, image_codes(&p, &g, &moved)), std);

        let (tag, rec, _) = normalize(&p, &og_hyperoval(ctx)).unwrap();
        assert_eq!(tag, TypeTag::B);
        assert_eq!(rec.alpha, Some(Fe::ONE));

        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..20 {
            let g = p.collineation_at(rng.gen_range(0..p.aut_order()));
            let img = Hyperoval::from_codes(32, image_codes(&p, &g, &og_hyperoval(ctx)));
            let (tag, rec, w) = normalize(&p, &img).unwrap();
            assert_eq!(tag, TypeTag::B);
            let normal = Hyperoval::from_codes(32, image_codes(&p, &w, &img));
            assert_eq!(rec.hyperoval(ctx), normal);
            assert_eq!(check_type_b(&p, &rec.coeffs), rec.alpha);
        }
        let not_translation = Hyperoval::from_codes(32, vec![0, 1, 40, 50]);
        assert_eq!(normalize(&p, &not_translation).unwrap_err(), Error::NotTranslation);
    }

    #[test]
    fn small_searches() {
        let p = kn(3);
        let a = search_translation_hyperovals(&p, TypeTag::A, Domain::Full).unwrap();
        assert!(!a.is_empty());
        for r in &a {
            assert!(check_type_a(&p, &r.coeffs));
        }
        let b = search_translation_hyperovals(&p, TypeTag::B, Domain::Full).unwrap();
        for r in &b {
            assert_eq!(check_type_b(&p, &r.coeffs), r.alpha);
        }
        assert!(search_translation_hyperovals(&kn(7), TypeTag::A, Domain::Full).is_err());
        let z = search_translation_hyperovals(&kn(5), TypeTag::A, Domain::ZeroOne).unwrap();
        assert!(z.iter().any(|r| r.coeffs == LinearizedPoly::from_exponents(5, &[1])));
    }
}
