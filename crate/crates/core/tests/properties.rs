mod common;

use std::sync::{Arc, OnceLock};

use proptest::prelude::*;
use skew_incidence::isomorphism::{build_psi, RingIso};
use skew_incidence::poset::{enumerate_posets, poset_isomorphisms};
use skew_incidence::structure::{
    center_enumerate, diagonalize_idempotent, invert_elem, is_idempotent_elem, is_unit_elem, jacobson_member_elem,
};
use skew_incidence::{AlgebraContext, CoeffRing, Poset, RingElement, RingSpec, SkewElement};

const RINGS: &[&str] = &[
    "zmod:2",
    "zmod:4",
    "zmod:6",
    "gf:2:2:frobenius",
    "gf:3:2:frobenius",
    "prodswap:zmod:3",
    "prodproj:zmod:2",
    "trunc:2:3:tsq",
    "trunc:3:2:tsq",
];

fn posets() -> &'static [Poset] {
    static POSETS: OnceLock<Vec<Poset>> = OnceLock::new();
    POSETS.get_or_init(|| (1..=4).flat_map(|n| enumerate_posets(n).unwrap()).collect())
}

fn elements(ring: &RingSpec) -> Vec<RingElement> {
    ring.elements().unwrap()
}

/// A context from the matrix together with raw coefficient choices for a
/// few elements; indices are reduced modulo the ring size.
fn context_and_coeffs(count: usize) -> impl Strategy<Value = (Arc<AlgebraContext<RingSpec>>, Vec<Vec<usize>>)> {
    (0..posets().len(), 0..RINGS.len()).prop_flat_map(move |(p, r)| {
        let ctx = AlgebraContext::new(posets()[p].clone(), common::spec(RINGS[r]));
        let width = ctx.pairs().len();
        (Just(ctx), prop::collection::vec(prop::collection::vec(0usize..64, width), count))
    })
}

fn realize(ctx: &Arc<AlgebraContext<RingSpec>>, raw: &[usize]) -> SkewElement<RingSpec> {
    let elems = elements(ctx.ring());
    let entries = ctx.pairs().iter().zip(raw).map(|(&p, &k)| (p, elems[k % elems.len()].clone()));
    ctx.from_coeffs(entries.collect::<Vec<_>>()).unwrap()
}

/// Like [`realize`] but with every diagonal entry forced to be a unit.
fn realize_unit(ctx: &Arc<AlgebraContext<RingSpec>>, raw: &[usize]) -> SkewElement<RingSpec> {
    let ring = ctx.ring();
    let units = skew_incidence::ring::units(ring).unwrap();
    let elems = elements(ring);
    let entries: Vec<_> = ctx
        .pairs()
        .iter()
        .zip(raw)
        .map(|(&(i, j), &k)| {
            let pool = if i == j { &units } else { &elems };
            ((i, j), pool[k % pool.len()].clone())
        })
        .collect();
    ctx.from_coeffs(entries).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn associative((ctx, raw) in context_and_coeffs(3)) {
        let (f, g, h) = (realize(&ctx, &raw[0]), realize(&ctx, &raw[1]), realize(&ctx, &raw[2]));
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
    }

    #[test]
    fn distributive((ctx, raw) in context_and_coeffs(3)) {
        let (f, g, h) = (realize(&ctx, &raw[0]), realize(&ctx, &raw[1]), realize(&ctx, &raw[2]));
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert_eq!(&(&f + &g) * &h, &(&f * &h) + &(&g * &h));
    }

    #[test]
    fn identity_and_scalars((ctx, raw) in context_and_coeffs(2), k in 0usize..64) {
        let (f, g) = (realize(&ctx, &raw[0]), realize(&ctx, &raw[1]));
        let elems = elements(ctx.ring());
        let r = elems[k % elems.len()].clone();
        prop_assert_eq!(&ctx.delta() * &f, f.clone());
        prop_assert_eq!(&f * &ctx.delta(), f.clone());
        // left scalars pass through the product and are multiplication by r·δ
        prop_assert_eq!(&f.scale_left(&r) * &g, (&f * &g).scale_left(&r));
        prop_assert_eq!(f.scale_left(&r), &ctx.scalar_embed(r.clone()) * &f);
        prop_assert_eq!(&f - &f, ctx.zero());
    }

    #[test]
    fn basis_products((ctx, _raw) in context_and_coeffs(0), a in 0usize..64, b in 0usize..64, s in 0usize..64) {
        let pairs = ctx.pairs();
        let (i, j) = pairs[a % pairs.len()];
        let (k, l) = pairs[b % pairs.len()];
        let ring = ctx.ring();
        let elems = elements(ring);
        let r = elems[s % elems.len()].clone();
        let left = ctx.basis_scaled(r.clone(), i, j).unwrap();
        let right = ctx.basis_scaled(r.clone(), k, l).unwrap();
        let expected = if j == k {
            ctx.basis_scaled(ring.mul(&r, &ring.sigma_pow(j - i, &r)), i, l).unwrap()
        } else {
            ctx.zero()
        };
        prop_assert_eq!(&left * &right, expected);
        // the sandwich picks out a single coefficient
        let f = &left + &right;
        prop_assert_eq!(f.sandwich(i, j).coeff(i, j), f.coeff(i, j));
        prop_assert_eq!(f.sandwich(i, j).coeffs().count() <= 1, true);
    }

    #[test]
    fn units_form_a_group((ctx, raw) in context_and_coeffs(2)) {
        let (f, g) = (realize_unit(&ctx, &raw[0]), realize_unit(&ctx, &raw[1]));
        prop_assert!(is_unit_elem(&f).unwrap());
        let fi = invert_elem(&f).unwrap();
        let gi = invert_elem(&g).unwrap();
        prop_assert_eq!(invert_elem(&fi).unwrap(), f.clone());
        prop_assert_eq!(invert_elem(&(&f * &g)).unwrap(), &gi * &fi);
    }

    #[test]
    fn radical_is_an_ideal((ctx, raw) in context_and_coeffs(3)) {
        let (f, g, h) = (realize(&ctx, &raw[0]), realize(&ctx, &raw[1]), realize(&ctx, &raw[2]));
        let in_radical = |x: &SkewElement<RingSpec>| jacobson_member_elem(x).unwrap();
        let ring = ctx.ring();
        let expected = (0..ctx.poset().len()).all(|x| ring.jacobson_member(&f.coeff(x, x)).unwrap());
        prop_assert_eq!(in_radical(&f), expected);
        if in_radical(&f) && in_radical(&g) {
            prop_assert!(in_radical(&(&f + &g)));
            prop_assert!(in_radical(&(&(&h * &f) * &g)));
            prop_assert!(is_unit_elem(&(&ctx.delta() - &(&h * &f))).unwrap());
        }
    }

    #[test]
    fn conjugated_idempotents_diagonalize((ctx, raw) in context_and_coeffs(1), mask in 0u32..16) {
        let u = realize_unit(&ctx, &raw[0]);
        let mut e = ctx.zero();
        for x in (0..ctx.poset().len()).filter(|x| mask >> x & 1 == 1) {
            e = &e + &ctx.basis_e(x, x).unwrap();
        }
        let f = &(&invert_elem(&u).unwrap() * &e) * &u;
        prop_assert!(is_idempotent_elem(&f));
        let d = diagonalize_idempotent(&f).unwrap();
        prop_assert_eq!(&d.diagonal, &f.diagonal_part());
        prop_assert_eq!(&d.conjugator * &f, &d.diagonal * &d.conjugator);
        prop_assert_eq!(&(&d.conjugator_inverse * &d.diagonal) * &d.conjugator, f);
    }

    #[test]
    fn central_elements_commute((ctx, raw) in context_and_coeffs(4)) {
        let center = center_enumerate(&ctx).unwrap();
        for z in center.iter().take(8) {
            for r in &raw {
                let f = realize(&ctx, r);
                prop_assert_eq!(z * &f, &f * z);
            }
        }
    }

    #[test]
    fn render_parse_round_trip((ctx, raw) in context_and_coeffs(1)) {
        let f = realize(&ctx, &raw[0]);
        let text = f.render();
        prop_assert_eq!(ctx.parse_element(&text).unwrap(), f.clone());
        prop_assert_eq!(ctx.parse_element(&text).unwrap().render(), text);
    }

    #[test]
    fn ring_endomorphisms_respect_structure(r in 0..RINGS.len(), a in 0usize..64, b in 0usize..64) {
        let ring = common::spec(RINGS[r]);
        let elems = elements(&ring);
        let (x, y) = (&elems[a % elems.len()], &elems[b % elems.len()]);
        prop_assert_eq!(ring.sigma(&ring.add(x, y)), ring.add(&ring.sigma(x), &ring.sigma(y)));
        prop_assert_eq!(ring.sigma(&ring.mul(x, y)), ring.mul(&ring.sigma(x), &ring.sigma(y)));
        prop_assert_eq!(ring.sigma(&ring.one()), ring.one());
        prop_assert_eq!(ring.parse_elem(&ring.format_elem(x)).unwrap(), x.clone());
    }

    #[test]
    fn random_posets_are_well_formed(n in 1usize..7, edges in prop::collection::vec((0usize..7, 0usize..7), 0..12), seed in 0u64..1000) {
        // orient edges along a shuffled order so the relation is acyclic
        let mut order: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            order.swap(i, (s >> 33) as usize % (i + 1));
        }
        let rank: Vec<usize> = (0..n).map(|x| order.iter().position(|&o| o == x).unwrap()).collect();
        let covers: Vec<(usize, usize)> = edges
            .into_iter()
            .map(|(a, b)| (a % n, b % n))
            .filter(|(a, b)| a != b)
            .map(|(a, b)| if rank[a] < rank[b] { (a, b) } else { (b, a) })
            .collect();
        let p = Poset::from_covers(n, &covers).unwrap();
        prop_assert!(p.check_invariants().is_ok());
        prop_assert!(p.labels_are_linear_extension());
        for &(a, b) in &covers {
            prop_assert!(p.leq(p.origins().iter().position(|&o| o == a).unwrap(), p.origins().iter().position(|&o| o == b).unwrap()));
        }
        let back = Poset::parse_text(&p.to_text()).unwrap();
        prop_assert_eq!(&back, &p);
        prop_assert!(poset_isomorphisms(&p, &back).contains(&(0..n).collect::<Vec<_>>()));
    }

    #[test]
    fn psi_is_multiplicative(p in 0..posets().len(), pick in 0usize..64, raw in prop::collection::vec(0usize..64, 20)) {
        let poset = &posets()[p];
        let autos = poset_isomorphisms(poset, poset);
        let alpha = &autos[pick % autos.len()];
        let ring = common::spec("gf:2:2:frobenius");
        let src = AlgebraContext::new(poset.clone(), ring.clone());
        let phi = RingIso::from_fn(&ring, &ring, |x| ring.sigma(x)).unwrap();
        let w = build_psi(&src, poset, ring.clone(), alpha, &phi).unwrap();
        let width = src.pairs().len();
        let f = realize(&src, &raw[..width]);
        let g = realize(&src, &raw[raw.len() - width..]);
        prop_assert_eq!(w.apply(&(&f * &g)).unwrap(), &w.apply(&f).unwrap() * &w.apply(&g).unwrap());
        prop_assert_eq!(w.apply_inverse(&w.apply(&f).unwrap()).unwrap(), f);
    }
}
