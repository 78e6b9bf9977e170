use std::sync::Arc;

use kplane::ovals::{is_hyperoval, type_a_hyperoval, Hyperoval};
use kplane::search::{canonical_form, check_type_a, image_codes};
use kplane::{Collineation, Fe, FieldContext, LinearizedPoly, Plane, PlaneLine, PlanePoint, Presemifield};
use proptest::prelude::*;

fn field(n: u32) -> Arc<FieldContext> {
    Arc::new(FieldContext::new(n, None).unwrap())
}

fn degree() -> impl Strategy<Value = u32> {
    prop::sample::select(vec![3u32, 5, 7, 9, 11, 13, 21])
}

fn elems(n: u32, k: usize) -> impl Strategy<Value = Vec<Fe>> {
    prop::collection::vec((0u32..(1 << n)).prop_map(Fe), k)
}

fn field_and(k: usize) -> impl Strategy<Value = (Arc<FieldContext>, Vec<Fe>)> {
    degree().prop_flat_map(move |n| (Just(field(n)), elems(n, k)))
}

fn collineation(n: u32) -> impl Strategy<Value = Collineation> {
    (elems(n, 3), 0..n).prop_map(|(v, k)| Collineation { a: v[0], b: v[1], c: v[2], k })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn field_axioms((ctx, v) in field_and(3)) {
        let (x, y, z) = (v[0], v[1], v[2]);
        prop_assert_eq!(ctx.mul(x, y), ctx.mul(y, x));
        prop_assert_eq!(ctx.mul(ctx.mul(x, y), z), ctx.mul(x, ctx.mul(y, z)));
        prop_assert_eq!(ctx.mul(x, y + z), ctx.mul(x, y) + ctx.mul(x, z));
        prop_assert_eq!(ctx.mul(x, y), ctx.mul_slow(x, y));
        if !x.is_zero() {
            prop_assert_eq!(ctx.mul(x, ctx.inv(x).unwrap()), Fe::ONE);
        }
    }

    #[test]
    fn trace_and_frobenius((ctx, v) in field_and(2)) {
        let (x, y) = (v[0], v[1]);
        prop_assert_eq!(ctx.trace(x + y), ctx.trace(x) ^ ctx.trace(y));
        prop_assert_eq!(ctx.trace(ctx.square(x)), ctx.trace(x));
        prop_assert_eq!(ctx.trace(x), ctx.trace_slow(x));
        prop_assert_eq!(ctx.square(ctx.sqrt(x)), x);
        prop_assert_eq!(ctx.frob(ctx.frob(x, 2), ctx.n() - 2), x);
        prop_assert_eq!(ctx.frob(ctx.mul(x, y), 3), ctx.mul(ctx.frob(x, 3), ctx.frob(y, 3)));
    }

    #[test]
    fn knuth_presemifield_laws((ctx, v) in field_and(3)) {
        let (x, y, z) = (v[0], v[1], v[2]);
        let k = Presemifield::knuth(ctx.clone());
        let td = Presemifield::knuth_symplectic(ctx.clone());
        for s in [&k, &td] {
            prop_assert_eq!(s.mul(x + y, z), s.mul(x, z) + s.mul(y, z));
            prop_assert_eq!(s.mul(x, y + z), s.mul(x, y) + s.mul(x, z));
            prop_assert_eq!(s.mul(x, y).is_zero(), x.is_zero() || y.is_zero());
        }
        prop_assert_eq!(k.mul(x, y), k.mul(y, x));
        // symplectic identity
        prop_assert_eq!(ctx.trace(ctx.mul(x, td.mul(y, z))), ctx.trace(ctx.mul(y, td.mul(x, z))));
    }

    #[test]
    fn adjoint_identity((ctx, v) in field_and(2), c in prop::collection::vec(0u32..(1 << 3), 3)) {
        let n = ctx.n() as usize;
        let coeffs: Vec<Fe> = (0..n).map(|i| Fe(c.get(i).copied().unwrap_or(0) & ctx.mask())).collect();
        let l = LinearizedPoly::new(coeffs);
        let adj = l.adjoint(&ctx);
        let (x, y) = (v[0], v[1]);
        prop_assert_eq!(ctx.trace(ctx.mul(x, l.eval(&ctx, y))), ctx.trace(ctx.mul(adj.eval(&ctx, x), y)));
        prop_assert_eq!(adj.adjoint(&ctx), l);
    }
}

fn plane5() -> Plane {
    Plane::new(Presemifield::knuth(field(5)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn collineations_preserve_incidence(g in collineation(5), h in collineation(5), p in 0u32..1057, l in 0u32..1057) {
        let plane = plane5();
        let q = plane.q();
        let (p, l) = (PlanePoint::from_code(p, q), PlaneLine::from_code(l, q));
        prop_assert_eq!(plane.incident(p, l), plane.incident(plane.apply(&g, p), plane.apply_line(&g, l)));
        let gh = plane.compose(&g, &h);
        prop_assert_eq!(plane.apply(&gh, p), plane.apply(&g, plane.apply(&h, p)));
        prop_assert_eq!(plane.apply(&plane.invert(&g), plane.apply(&g, p)), p);
    }

    #[test]
    fn canonical_form_is_invariant(g in collineation(5), which in 0usize..4) {
        let plane = plane5();
        let ctx = plane.ctx();
        let l = LinearizedPoly::from_exponents(5, [&[1u32][..], &[3], &[2, 1, 0], &[3, 2, 1]][which]);
        let o = type_a_hyperoval(ctx, &l);
        let image = Hyperoval::from_codes(plane.q(), image_codes(&plane, &g, &o));
        prop_assert!(is_hyperoval(&plane, &image).unwrap());
        let a = canonical_form(&plane, &o);
        let b = canonical_form(&plane, &image);
        prop_assert_eq!(a.digest(), b.digest());
        prop_assert_eq!(a.orbit_size(), b.orbit_size());
    }

    #[test]
    fn type_a_check_matches_incidence(c in elems(5, 5)) {
        let plane = plane5();
        let l = LinearizedPoly::new(c);
        let direct = is_hyperoval(&plane, &type_a_hyperoval(plane.ctx(), &l)).unwrap();
        prop_assert_eq!(check_type_a(&plane, &l), direct);
    }
}
