//! Ring isomorphisms between skew incidence rings and recovery of the
//! underlying poset isomorphism.
//!
//! A ring map `φ: I(X,R,σ) → I(Y,S,τ)` is represented by a [`BasisMap`]:
//! the images of the `e_{ij}` and of every scalar `r·δ`. Because
//! `r·e_{ij} = (r·δ)·e_{ij}`, these determine the additive extension
//! `φ(f) = Σ φ(f(x_i,x_j)·δ)·φ(e_{ij})`, and because the product is
//! biadditive, multiplicativity only has to be checked on pairs drawn from
//! the spanning set `{ r·e_{ij} }`.

mod witness_file;

pub use witness_file::{parse_witness, render_witness};

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::algebra::{AlgebraContext, SkewElement};
use crate::error::{Error, Result};
use crate::poset::{is_isomorphism, Poset};
use crate::ring::CoeffRing;
use crate::structure::{
    center_member_elem, diagonalize_idempotent, is_idempotent_elem, is_unit_elem, jacobson_member_elem,
};

/// A bijective unital ring homomorphism `R → S`, stored as a table.
#[derive(Debug, Clone)]
pub struct RingIso<R: CoeffRing, S: CoeffRing> {
    forward: HashMap<R::Elem, S::Elem>,
    backward: HashMap<S::Elem, R::Elem>,
}

impl<R: CoeffRing, S: CoeffRing> RingIso<R, S> {
    /// Tabulates `map` over the finite ring `source` and checks that it is a
    /// bijective unital ring homomorphism onto `target`.
    pub fn from_fn(source: &R, target: &S, map: impl Fn(&R::Elem) -> S::Elem) -> Result<Self> {
        let elems = source.elements()?;
        let mut forward = HashMap::with_capacity(elems.len());
        let mut backward = HashMap::with_capacity(elems.len());
        for r in &elems {
            let s = map(r);
            if !target.contains(&s) {
                return Err(Error::SpecMismatch(format!("image of {} is not in {}", source.format_elem(r), target.id())));
            }
            if let Some(prev) = backward.insert(s.clone(), r.clone()) {
                return Err(Error::HypothesisViolation(format!(
                    "ring map is not injective: {} and {} have the same image",
                    source.format_elem(&prev),
                    source.format_elem(r)
                )));
            }
            forward.insert(r.clone(), s);
        }
        if Some(elems.len()) != target.cardinality() {
            return Err(Error::HypothesisViolation("ring map is not surjective".into()));
        }
        if forward[&source.one()] != target.one() {
            return Err(Error::HypothesisViolation("ring map does not send 1 to 1".into()));
        }
        for a in &elems {
            for b in &elems {
                let (fa, fb) = (&forward[a], &forward[b]);
                if forward[&source.add(a, b)] != target.add(fa, fb)
                    || forward[&source.mul(a, b)] != target.mul(fa, fb)
                {
                    return Err(Error::HypothesisViolation(format!(
                        "ring map is not a homomorphism at ({}, {})",
                        source.format_elem(a),
                        source.format_elem(b)
                    )));
                }
            }
        }
        Ok(RingIso { forward, backward })
    }

    pub fn apply(&self, r: &R::Elem) -> S::Elem {
        self.forward[r].clone()
    }

    pub fn apply_inverse(&self, s: &S::Elem) -> R::Elem {
        self.backward[s].clone()
    }
}

impl<R: CoeffRing> RingIso<R, R> {
    pub fn identity(ring: &R) -> Result<Self> {
        Self::from_fn(ring, ring, |r| r.clone())
    }
}

/// Images of the `e_{ij}` and of every `r·δ` under an additive map
/// `I(X,R,σ) → I(Y,S,τ)`.
#[derive(Debug, Clone)]
pub struct BasisMap<R: CoeffRing, S: CoeffRing> {
    source: Arc<AlgebraContext<R>>,
    target: Arc<AlgebraContext<S>>,
    units: BTreeMap<(usize, usize), SkewElement<S>>,
    scalars: HashMap<R::Elem, SkewElement<S>>,
}

impl<R: CoeffRing, S: CoeffRing> BasisMap<R, S> {
    /// `units` must give the image of every `e_{ij}`; `scalar_generators`
    /// gives images of `r·δ` for a set of ring generators, which are closed
    /// under sums and products (`Rδ` is a subring isomorphic to `R`).
    pub fn new(
        source: Arc<AlgebraContext<R>>,
        target: Arc<AlgebraContext<S>>,
        units: BTreeMap<(usize, usize), SkewElement<S>>,
        scalar_generators: Vec<(R::Elem, SkewElement<S>)>,
    ) -> Result<Self> {
        for &(i, j) in source.pairs() {
            if !units.contains_key(&(i, j)) {
                return Err(Error::WitnessRejected(format!("missing image of e[{},{}]", i + 1, j + 1)));
            }
        }
        if let Some(&(i, j)) = units.keys().find(|&&(i, j)| !source.poset().leq(i, j)) {
            return Err(Error::UnsupportedPair(i + 1, j + 1));
        }
        for img in units.values().chain(scalar_generators.iter().map(|(_, s)| s)) {
            if !img.ctx().same_as(&target) {
                return Err(Error::ContextMismatch);
            }
        }
        let scalars = close_scalar_images(&source, &target, scalar_generators)?;
        Ok(BasisMap { source, target, units, scalars })
    }

    pub fn source(&self) -> &Arc<AlgebraContext<R>> {
        &self.source
    }

    pub fn target(&self) -> &Arc<AlgebraContext<S>> {
        &self.target
    }

    pub fn unit_image(&self, i: usize, j: usize) -> &SkewElement<S> {
        &self.units[&(i, j)]
    }

    pub fn scalar_image(&self, r: &R::Elem) -> &SkewElement<S> {
        &self.scalars[r]
    }

    pub fn apply(&self, f: &SkewElement<R>) -> Result<SkewElement<S>> {
        if !f.ctx().same_as(&self.source) {
            return Err(Error::ContextMismatch);
        }
        let mut acc = self.target.zero();
        for (&(i, j), r) in f.coeffs() {
            acc = &acc + &(&self.scalars[r] * &self.units[&(i, j)]);
        }
        Ok(acc)
    }
}

fn close_scalar_images<R: CoeffRing, S: CoeffRing>(
    source: &Arc<AlgebraContext<R>>,
    target: &Arc<AlgebraContext<S>>,
    generators: Vec<(R::Elem, SkewElement<S>)>,
) -> Result<HashMap<R::Elem, SkewElement<S>>> {
    let ring = source.ring();
    let mut known: HashMap<R::Elem, SkewElement<S>> = HashMap::new();
    let insert = |known: &mut HashMap<R::Elem, SkewElement<S>>, r: R::Elem, img: SkewElement<S>| -> Result<bool> {
        match known.get(&r) {
            Some(prev) if *prev != img => Err(Error::WitnessRejected(format!(
                "scalar images are inconsistent at r({}): {} vs {}",
                ring.format_elem(&r),
                prev.render(),
                img.render()
            ))),
            Some(_) => Ok(false),
            None => {
                known.insert(r, img);
                Ok(true)
            }
        }
    };
    insert(&mut known, ring.zero(), target.zero())?;
    for (r, img) in generators {
        insert(&mut known, r, img)?;
    }
    loop {
        let snapshot: Vec<(R::Elem, SkewElement<S>)> = known.iter().map(|(r, s)| (r.clone(), s.clone())).collect();
        let mut grew = false;
        for (a, fa) in &snapshot {
            for (b, fb) in &snapshot {
                grew |= insert(&mut known, ring.add(a, b), fa + fb)?;
                grew |= insert(&mut known, ring.mul(a, b), fa * fb)?;
            }
        }
        if !grew {
            break;
        }
    }
    for r in ring.elements()? {
        if !known.contains_key(&r) {
            return Err(Error::WitnessRejected(format!(
                "the given scalar images do not determine r({})",
                ring.format_elem(&r)
            )));
        }
    }
    Ok(known)
}

/// A claimed ring isomorphism `φ: I(X,R,σ) → I(Y,S,τ)` together with its
/// inverse, both given on spanning sets.
#[derive(Debug, Clone)]
pub struct RingIsoWitness<R: CoeffRing, S: CoeffRing> {
    forward: BasisMap<R, S>,
    inverse: BasisMap<S, R>,
    /// When the target poset was relabeled during construction,
    /// `target_relabel[i]` is the label (0-based) element `i` had before.
    target_relabel: Option<Vec<usize>>,
}

impl<R: CoeffRing, S: CoeffRing> RingIsoWitness<R, S> {
    pub fn new(forward: BasisMap<R, S>, inverse: BasisMap<S, R>) -> Result<Self> {
        if !forward.source.same_as(&inverse.target) || !forward.target.same_as(&inverse.source) {
            return Err(Error::ContextMismatch);
        }
        Ok(RingIsoWitness { forward, inverse, target_relabel: None })
    }

    /// Derives the inverse by tabulating `φ` over the whole source algebra,
    /// which must have at most `bound` elements.
    pub fn with_derived_inverse(forward: BasisMap<R, S>, bound: usize) -> Result<Self> {
        let source = Arc::clone(&forward.source);
        let target = Arc::clone(&forward.target);
        let mut preimage: HashMap<SkewElement<S>, SkewElement<R>> = HashMap::new();
        for f in source.enumerate(bound)? {
            let img = forward.apply(&f)?;
            if let Some(prev) = preimage.insert(img, f.clone()) {
                return Err(Error::WitnessRejected(format!(
                    "map is not injective: {} and {} have the same image",
                    prev.render(),
                    f.render()
                )));
            }
        }
        let lookup = |g: SkewElement<S>| {
            preimage
                .get(&g)
                .cloned()
                .ok_or_else(|| Error::WitnessRejected(format!("map is not surjective: {} has no preimage", g.render())))
        };
        let mut units = BTreeMap::new();
        for &(i, j) in target.pairs() {
            units.insert((i, j), lookup(target.basis_e(i, j)?)?);
        }
        let mut scalars = Vec::new();
        for s in target.ring().elements()? {
            scalars.push((s.clone(), lookup(target.scalar_embed(s))?));
        }
        let inverse = BasisMap::new(target, source, units, scalars)?;
        Self::new(forward, inverse)
    }

    pub fn with_target_relabel(mut self, relabel: Vec<usize>) -> Self {
        self.target_relabel = Some(relabel);
        self
    }

    pub fn source(&self) -> &Arc<AlgebraContext<R>> {
        &self.forward.source
    }

    pub fn target(&self) -> &Arc<AlgebraContext<S>> {
        &self.forward.target
    }

    pub fn forward(&self) -> &BasisMap<R, S> {
        &self.forward
    }

    pub fn inverse(&self) -> &BasisMap<S, R> {
        &self.inverse
    }

    pub fn target_relabel(&self) -> Option<&[usize]> {
        self.target_relabel.as_deref()
    }

    pub fn apply(&self, f: &SkewElement<R>) -> Result<SkewElement<S>> {
        self.forward.apply(f)
    }

    pub fn apply_inverse(&self, g: &SkewElement<S>) -> Result<SkewElement<R>> {
        self.inverse.apply(g)
    }

    /// Checks that the witness describes a ring isomorphism: `δ ↦ δ`, the
    /// scalar images are additive in both directions, `φ` is multiplicative
    /// on every pair of spanning elements, and the two maps are mutually
    /// inverse on both spanning sets. Reports the first failure.
    pub fn verify(&self) -> Result<()> {
        let (src, tgt) = (self.source(), self.target());
        let reject = |msg: String| Err(Error::WitnessRejected(msg));
        if self.apply(&src.delta())? != tgt.delta() {
            return reject(format!("delta maps to {}, not delta", self.apply(&src.delta())?.render()));
        }
        check_scalar_additivity(&self.forward)?;
        check_scalar_additivity(&self.inverse)?;

        let span = src.spanning_set()?;
        let images: Vec<SkewElement<S>> = span.iter().map(|f| self.apply(f)).collect::<Result<_>>()?;
        for (f, fi) in span.iter().zip(&images) {
            if self.apply_inverse(fi)? != *f {
                return reject(format!("inverse does not undo the map at {}", f.render()));
            }
        }
        for (a, fa) in span.iter().zip(&images) {
            for (b, fb) in span.iter().zip(&images) {
                if self.apply(&(a * b))? != fa * fb {
                    return reject(format!("not multiplicative at ({}) * ({})", a.render(), b.render()));
                }
            }
        }
        for g in tgt.spanning_set()? {
            if self.apply(&self.apply_inverse(&g)?)? != g {
                return reject(format!("map does not undo the inverse at {}", g.render()));
            }
        }
        Ok(())
    }

    pub fn is_ring_iso(&self) -> bool {
        self.verify().is_ok()
    }

    /// `f ↦ φ(u·f·u⁻¹)` for a unit `u` of the source algebra.
    pub fn precomposed_with_conjugation(&self, u: &SkewElement<R>) -> Result<Self> {
        let src = Arc::clone(self.source());
        let tgt = Arc::clone(self.target());
        let u_inv = crate::structure::invert_elem(u)?;
        let conj = |f: &SkewElement<R>| &(u * f) * &u_inv;
        let unconj = |f: &SkewElement<R>| &(&u_inv * f) * u;

        let mut units = BTreeMap::new();
        for &(i, j) in src.pairs() {
            units.insert((i, j), self.apply(&conj(&src.basis_e(i, j)?))?);
        }
        let mut scalars = Vec::new();
        for r in src.ring().elements()? {
            scalars.push((r.clone(), self.apply(&conj(&src.scalar_embed(r)))?));
        }
        let forward = BasisMap::new(Arc::clone(&src), Arc::clone(&tgt), units, scalars)?;

        let mut inv_units = BTreeMap::new();
        for &(i, j) in tgt.pairs() {
            inv_units.insert((i, j), unconj(&self.apply_inverse(&tgt.basis_e(i, j)?)?));
        }
        let mut inv_scalars = Vec::new();
        for s in tgt.ring().elements()? {
            inv_scalars.push((s.clone(), unconj(&self.apply_inverse(&tgt.scalar_embed(s))?)));
        }
        let inverse = BasisMap::new(tgt, src, inv_units, inv_scalars)?;
        Ok(RingIsoWitness { forward, inverse, target_relabel: self.target_relabel.clone() })
    }
}

fn check_scalar_additivity<R: CoeffRing, S: CoeffRing>(map: &BasisMap<R, S>) -> Result<()> {
    let ring = map.source.ring();
    let elems = ring.elements()?;
    for a in &elems {
        for b in &elems {
            if map.scalars[&ring.add(a, b)] != &map.scalars[a] + &map.scalars[b] {
                return Err(Error::WitnessRejected(format!(
                    "scalar images are not additive at ({}, {})",
                    ring.format_elem(a),
                    ring.format_elem(b)
                )));
            }
        }
    }
    Ok(())
}

/// The ring isomorphism `ψ: I(X,R,σ) → I(Y,S,τ)`,
/// `ψ(f)(y_i, y_j) = φ(f(x_i, x_j))`, induced by an order isomorphism
/// `alpha: X → Y` and a ring isomorphism `phi: R → S` with `φσ = τφ`.
///
/// `Y` is relabeled so that `y_i = alpha(x_i)`; the permutation is recorded
/// in the witness (see [`RingIsoWitness::target_relabel`]).
pub fn build_psi<R: CoeffRing, S: CoeffRing>(
    source: &Arc<AlgebraContext<R>>,
    target_poset: &Poset,
    target_ring: S,
    alpha: &[usize],
    phi: &RingIso<R, S>,
) -> Result<RingIsoWitness<R, S>> {
    let x = source.poset();
    if !is_isomorphism(x, target_poset, alpha) {
        return Err(Error::HypothesisViolation("alpha is not an order isomorphism".into()));
    }
    let ring = source.ring();
    for r in ring.elements()? {
        let lhs = phi.apply(&ring.sigma(&r));
        let rhs = target_ring.sigma(&phi.apply(&r));
        if lhs != rhs {
            return Err(Error::HypothesisViolation(format!(
                "phi does not intertwine sigma and tau at r = {}",
                ring.format_elem(&r)
            )));
        }
    }
    let relabeled = target_poset.relabeled(alpha)?;
    let target = AlgebraContext::new(relabeled, target_ring);

    let mut units = BTreeMap::new();
    let mut inv_units = BTreeMap::new();
    for &(i, j) in source.pairs() {
        units.insert((i, j), target.basis_e(i, j)?);
        inv_units.insert((i, j), source.basis_e(i, j)?);
    }
    let scalars = ring
        .elements()?
        .into_iter()
        .map(|r| {
            let img = target.scalar_embed(phi.apply(&r));
            (r, img)
        })
        .collect();
    let inv_scalars = target
        .ring()
        .elements()?
        .into_iter()
        .map(|s| {
            let img = source.scalar_embed(phi.apply_inverse(&s));
            (s, img)
        })
        .collect();
    let forward = BasisMap::new(Arc::clone(source), Arc::clone(&target), units, scalars)?;
    let inverse = BasisMap::new(target, Arc::clone(source), inv_units, inv_scalars)?;
    Ok(RingIsoWitness::new(forward, inverse)?.with_target_relabel(alpha.to_vec()))
}

/// The poset isomorphism recovered from a ring isomorphism.
#[derive(Debug, Clone)]
pub struct PosetMapResult<S: CoeffRing> {
    /// `alpha[x]` is the target element (witness target labels) with
    /// `φ(e_x)` conjugate to `e_{alpha[x]}`.
    pub alpha: Vec<usize>,
    /// `conjugators[x] = h` with `φ(e_x) = h⁻¹·e_{alpha[x]}·h`.
    pub conjugators: Vec<SkewElement<S>>,
    /// `alpha` expressed in the target labels from before any relabeling
    /// recorded in the witness.
    pub alpha_original: Vec<usize>,
}

fn require_trivial_idempotents<T: CoeffRing>(ring: &T) -> Result<()> {
    if !ring.has_only_trivial_idempotents()? {
        return Err(Error::HypothesisViolation(format!(
            "coefficient ring {} has idempotents other than 0 and 1",
            ring.id()
        )));
    }
    Ok(())
}

/// Locates `φ(e_x)` as a conjugate of a single `e_y`, returning `y` and the
/// conjugator, or a description of what went wrong.
fn locate_image<R: CoeffRing, S: CoeffRing>(
    w: &RingIsoWitness<R, S>,
    x: usize,
) -> Result<std::result::Result<(usize, SkewElement<S>), String>> {
    let img = w.apply(&w.source().basis_e(x, x)?)?;
    if !is_idempotent_elem(&img) {
        return Ok(Err(format!("image of e[{}] is not idempotent", x + 1)));
    }
    let diag = diagonalize_idempotent(&img)?;
    let ring = w.target().ring();
    let nonzero: Vec<usize> = (0..w.target().poset().len())
        .filter(|&y| !ring.is_zero(&diag.diagonal.coeff(y, y)))
        .collect();
    match nonzero.as_slice() {
        &[y] if diag.diagonal.coeff(y, y) == ring.one() => Ok(Ok((y, diag.conjugator))),
        _ => Ok(Err(format!(
            "image of e[{}] is conjugate to {}, not to a single e[y]",
            x + 1,
            diag.diagonal.render()
        ))),
    }
}

fn order_preserving_both_ways(p: &Poset, q: &Poset, alpha: &[usize]) -> bool {
    is_isomorphism(p, q, alpha)
}

/// Recovers the order isomorphism `X → Y` carried by a ring isomorphism
/// `I(X,R,σ) → I(Y,S,τ)` when `R` and `S` have only the trivial
/// idempotents: `x ↦ y` where `φ(e_x)` is conjugate to `e_y`.
///
/// Refuses with [`Error::HypothesisViolation`] when either ring has other
/// idempotents. Any failed step on a verified witness is reported as
/// [`Error::TheoremViolation`].
pub fn recover_poset_map<R: CoeffRing, S: CoeffRing>(w: &RingIsoWitness<R, S>) -> Result<PosetMapResult<S>> {
    require_trivial_idempotents(w.source().ring())?;
    require_trivial_idempotents(w.target().ring())?;
    w.verify()?;
    let n = w.source().poset().len();
    if w.target().poset().len() != n {
        return Err(Error::TheoremViolation("posets have different sizes".into()));
    }
    let mut alpha = Vec::with_capacity(n);
    let mut conjugators = Vec::with_capacity(n);
    for x in 0..n {
        let (y, h) = locate_image(w, x)?.map_err(Error::TheoremViolation)?;
        alpha.push(y);
        conjugators.push(h);
    }
    if !order_preserving_both_ways(w.source().poset(), w.target().poset(), &alpha) {
        return Err(Error::TheoremViolation(format!(
            "recovered map {:?} is not an order isomorphism",
            alpha.iter().map(|a| a + 1).collect::<Vec<_>>()
        )));
    }
    let alpha_original = match w.target_relabel() {
        Some(relabel) => alpha.iter().map(|&y| relabel[y]).collect(),
        None => alpha.clone(),
    };
    Ok(PosetMapResult { alpha, conjugators, alpha_original })
}

/// Outcome of running poset recovery without the idempotent hypothesis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExploratoryRecovery {
    /// Per source element: the located target element, or why none was found.
    pub located: Vec<std::result::Result<usize, String>>,
    /// Whether every element was located and the result is an order isomorphism.
    pub is_order_isomorphism: bool,
}

/// Runs the recovery steps of [`recover_poset_map`] on a verified witness
/// even when the coefficient rings have nontrivial idempotents, reporting
/// what happens instead of refusing. Exploratory: no conclusion is implied.
pub fn recover_poset_map_exploratory<R: CoeffRing, S: CoeffRing>(
    w: &RingIsoWitness<R, S>,
) -> Result<ExploratoryRecovery> {
    w.verify()?;
    let n = w.source().poset().len();
    let mut located = Vec::with_capacity(n);
    for x in 0..n {
        located.push(locate_image(w, x)?.map(|(y, _)| y));
    }
    let alpha: Option<Vec<usize>> = located.iter().map(|l| l.as_ref().ok().copied()).collect();
    let is_order_isomorphism = alpha
        .map(|a| order_preserving_both_ways(w.source().poset(), w.target().poset(), &a))
        .unwrap_or(false);
    Ok(ExploratoryRecovery { located, is_order_isomorphism })
}

/// When `φ` maps `Rδ` onto `Sδ`, its restriction `R → S` (as a checked
/// ring isomorphism); `None` when some `φ(r·δ)` is not of the form `s·δ`.
pub fn scalar_restriction<R: CoeffRing, S: CoeffRing>(w: &RingIsoWitness<R, S>) -> Result<Option<RingIso<R, S>>> {
    let src = w.source();
    let tgt = w.target();
    let mut table = HashMap::new();
    for r in src.ring().elements()? {
        let img = w.forward.scalar_image(&r);
        let s = img.coeff(0, 0);
        if tgt.poset().is_empty() || *img != tgt.scalar_embed(s.clone()) {
            return Ok(None);
        }
        table.insert(r, s);
    }
    RingIso::from_fn(src.ring(), tgt.ring(), |r| table[r].clone())
        .map(Some)
        .map_err(|e| Error::TheoremViolation(format!("restriction to scalars is not a ring isomorphism: {e}")))
}

/// `e_{xy}` when `x ≤ y`, which satisfies `e_x·e_{xy}·e_y = e_{xy} ≠ 0`;
/// `None` when `x ≰ y`, in which case `e_x·f·e_y = 0` for every `f`.
pub fn comparable_pair_witness<R: CoeffRing>(
    ctx: &Arc<AlgebraContext<R>>,
    x: usize,
    y: usize,
) -> Option<SkewElement<R>> {
    let exy = ctx.basis_e(x, y).ok()?;
    debug_assert_eq!(exy.sandwich(x, y), exy);
    Some(exy)
}

/// Isomorphism-invariant cardinalities of a finite algebra. Differing
/// fingerprints prove two algebras non-isomorphic; equal ones prove nothing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fingerprint {
    pub ring_id: String,
    pub total: usize,
    pub units: usize,
    pub idempotents: usize,
    pub center: usize,
    pub radical: usize,
}

impl Fingerprint {
    /// Whether the invariant counts agree (the ring id is metadata).
    pub fn same_invariants(&self, other: &Fingerprint) -> bool {
        (self.total, self.units, self.idempotents, self.center, self.radical)
            == (other.total, other.units, other.idempotents, other.center, other.radical)
    }
}

impl fmt::Display for Fingerprint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "units={} idempotents={} center={} radical={} total={}",
            self.units, self.idempotents, self.center, self.radical, self.total
        )
    }
}

pub fn fingerprint<R: CoeffRing>(ctx: &Arc<AlgebraContext<R>>, bound: usize) -> Result<Fingerprint> {
    let all = ctx.enumerate(bound)?;
    let mut fp = Fingerprint {
        ring_id: ctx.ring().id(),
        total: all.len(),
        units: 0,
        idempotents: 0,
        center: 0,
        radical: 0,
    };
    for f in &all {
        fp.units += usize::from(is_unit_elem(f)?);
        fp.idempotents += usize::from(is_idempotent_elem(f));
        fp.center += usize::from(center_member_elem(f)?);
        fp.radical += usize::from(jacobson_member_elem(f)?);
    }
    Ok(fp)
}
