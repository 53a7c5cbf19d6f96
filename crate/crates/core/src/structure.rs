//! Units, the Jacobson radical, idempotents and the center of `I(X, R, σ)`.
//!
//! Each question is reduced to questions about the diagonal coefficients in
//! `R`, which is what makes them decidable for finite coefficient rings
//! without enumerating the algebra.

use std::collections::HashMap;
use std::sync::Arc;

use crate::algebra::{AlgebraContext, SkewElement};
use crate::error::{Error, Result};
use crate::ring::{CoeffRing, Commutativity};

/// `f` is a unit iff every diagonal coefficient `f(x, x)` is a unit of `R`.
pub fn is_unit_elem<R: CoeffRing>(f: &SkewElement<R>) -> Result<bool> {
    Ok(first_non_unit(f)?.is_none())
}

fn first_non_unit<R: CoeffRing>(f: &SkewElement<R>) -> Result<Option<usize>> {
    let ring = f.ctx().ring();
    for x in 0..f.ctx().poset().len() {
        if !ring.is_unit(&f.coeff(x, x))? {
            return Ok(Some(x));
        }
    }
    Ok(None)
}

fn diagonal_inverses<R: CoeffRing>(f: &SkewElement<R>) -> Result<Vec<R::Elem>> {
    let ring = f.ctx().ring();
    (0..f.ctx().poset().len())
        .map(|x| ring.inverse(&f.coeff(x, x))?.ok_or(Error::NotAUnitAt { index: x + 1 }))
        .collect()
}

fn check_two_sided_inverse<R: CoeffRing>(f: &SkewElement<R>, g: &SkewElement<R>, what: &str) -> Result<()> {
    let delta = f.ctx().delta();
    if f * g != delta || g * f != delta {
        return Err(Error::InvariantViolation(format!(
            "{what} of {} produced {}, which is not a two-sided inverse",
            f.render(),
            g.render()
        )));
    }
    Ok(())
}

/// The two-sided inverse, built pair by pair in order of interval length:
///
/// ```text
/// g(x_i, x_i) = f(x_i, x_i)⁻¹
/// g(x_i, x_j) = -f(x_i, x_i)⁻¹ · Σ_{x_i < x_k ≤ x_j} f(x_i, x_k) σ^(k-i)(g(x_k, x_j))
/// ```
///
/// Every `g(x_k, x_j)` on the right lives on a strictly shorter interval.
pub fn invert_elem<R: CoeffRing>(f: &SkewElement<R>) -> Result<SkewElement<R>> {
    let ctx = f.ctx();
    let ring = ctx.ring();
    let poset = ctx.poset();
    let inv_diag = diagonal_inverses(f)?;
    let mut g: HashMap<(usize, usize), R::Elem> = HashMap::new();
    for &(i, j) in ctx.pairs_by_interval_length() {
        let value = if i == j {
            inv_diag[i].clone()
        } else {
            let mut sum = ring.zero();
            for k in (i + 1..=j).filter(|&k| poset.leq(i, k) && poset.leq(k, j)) {
                let term = ring.mul(&f.coeff(i, k), &ring.sigma_pow(k - i, &g[&(k, j)]));
                sum = ring.add(&sum, &term);
            }
            ring.neg(&ring.mul(&inv_diag[i], &sum))
        };
        g.insert((i, j), value);
    }
    let g = ctx.from_coeffs(g)?;
    check_two_sided_inverse(f, &g, "inversion")?;
    Ok(g)
}

/// The inverse again, from the dual recursion that solves `h·f = δ`:
///
/// ```text
/// h(x_i, x_j) = [ -Σ_{x_i ≤ x_k < x_j} h(x_i, x_k) σ^(k-i)(f(x_k, x_j)) ] · σ^(j-i)(f(x_j, x_j))⁻¹
/// ```
pub fn left_inverse_elem<R: CoeffRing>(f: &SkewElement<R>) -> Result<SkewElement<R>> {
    let ctx = f.ctx();
    let ring = ctx.ring();
    let poset = ctx.poset();
    let inv_diag = diagonal_inverses(f)?;
    let mut h: HashMap<(usize, usize), R::Elem> = HashMap::new();
    for &(i, j) in ctx.pairs_by_interval_length() {
        let value = if i == j {
            inv_diag[i].clone()
        } else {
            let mut sum = ring.zero();
            for k in (i..j).filter(|&k| poset.leq(i, k) && poset.leq(k, j)) {
                let term = ring.mul(&h[&(i, k)], &ring.sigma_pow(k - i, &f.coeff(k, j)));
                sum = ring.add(&sum, &term);
            }
            let twisted = ring.sigma_pow(j - i, &f.coeff(j, j));
            let twisted_inv = ring.inverse(&twisted)?.ok_or_else(|| {
                Error::InvariantViolation(format!(
                    "sigma^{} of the unit {} is not a unit",
                    j - i,
                    ring.format_elem(&f.coeff(j, j))
                ))
            })?;
            ring.mul(&ring.neg(&sum), &twisted_inv)
        };
        h.insert((i, j), value);
    }
    let h = ctx.from_coeffs(h)?;
    check_two_sided_inverse(f, &h, "left inversion")?;
    Ok(h)
}

/// `f ∈ J(I)` iff every diagonal coefficient lies in `J(R)`. Off-diagonal
/// coefficients are unconstrained.
pub fn jacobson_member_elem<R: CoeffRing>(f: &SkewElement<R>) -> Result<bool> {
    let ring = f.ctx().ring();
    for x in 0..f.ctx().poset().len() {
        if !ring.jacobson_member(&f.coeff(x, x))? {
            return Ok(false);
        }
    }
    Ok(true)
}

pub fn is_idempotent_elem<R: CoeffRing>(f: &SkewElement<R>) -> bool {
    f * f == *f
}

/// `f = h⁻¹·e·h` with `e` diagonal, `e(x, x) = f(x, x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagonalizationResult<R: CoeffRing> {
    pub conjugator: SkewElement<R>,
    pub conjugator_inverse: SkewElement<R>,
    pub diagonal: SkewElement<R>,
}

/// Conjugates an idempotent `f` to its diagonal part `e` using
/// `h = δ + (2e - δ)(f - e)`, which satisfies `h·f = e·h` and has every
/// diagonal entry equal to `1`.
pub fn diagonalize_idempotent<R: CoeffRing>(f: &SkewElement<R>) -> Result<DiagonalizationResult<R>> {
    if !is_idempotent_elem(f) {
        return Err(Error::NotIdempotent);
    }
    let ctx = f.ctx();
    let ring = ctx.ring();
    let delta = ctx.delta();
    let e = f.diagonal_part();
    let g = f - &e;
    let two_e_minus_delta = &(&e + &e) - &delta;
    let h = &delta + &(&two_e_minus_delta * &g);

    let violation = |what: &str| Err(Error::InvariantViolation(format!("diagonalizing {}: {what}", f.render())));
    if (0..ctx.poset().len()).any(|x| h.coeff(x, x) != ring.one()) {
        return violation("conjugator diagonal is not 1");
    }
    if !is_unit_elem(&h)? {
        return violation("conjugator is not a unit");
    }
    if &h * f != &e * &h {
        return violation("hf != eh");
    }
    let h_inv = invert_elem(&h)?;
    if &(&h_inv * &e) * &h != *f {
        return violation("f != h^-1 e h");
    }
    Ok(DiagonalizationResult { conjugator: h, conjugator_inverse: h_inv, diagonal: e })
}

/// Where a primitive idempotent sits: it is conjugate to `coeff·e_x` with
/// `x = index`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimitiveLocation<R: CoeffRing> {
    pub index: usize,
    pub coeff: R::Elem,
    /// `index` is always unique; `coeff` is unique only when `R` is
    /// commutative or has no idempotents besides `0` and `1`. Otherwise it
    /// is one representative of its conjugacy class.
    pub coeff_is_canonical: bool,
}

/// `Some(location)` when the idempotent `f` is primitive, `None` when it is
/// an idempotent that is not primitive.
pub fn locate_primitive<R: CoeffRing>(f: &SkewElement<R>) -> Result<Option<PrimitiveLocation<R>>> {
    if !is_idempotent_elem(f) {
        return Err(Error::NotIdempotent);
    }
    let ring = f.ctx().ring();
    if !ring.is_finite() {
        return Err(Error::unsupported(format!(
            "primitivity needs a finite ring, {} is not",
            ring.id()
        )));
    }
    let nonzero: Vec<usize> = (0..f.ctx().poset().len())
        .filter(|&x| !ring.is_zero(&f.coeff(x, x)))
        .collect();
    let &[index] = nonzero.as_slice() else { return Ok(None) };
    let coeff = f.coeff(index, index);
    if !ring.is_primitive_idempotent(&coeff)? {
        return Ok(None);
    }
    let coeff_is_canonical =
        ring.commutativity() == Commutativity::Commutative || ring.has_only_trivial_idempotents()?;
    Ok(Some(PrimitiveLocation { index, coeff, coeff_is_canonical }))
}

/// An idempotent is primitive iff its diagonal has exactly one nonzero
/// entry and that entry is a primitive idempotent of `R`.
pub fn is_primitive_idempotent_elem<R: CoeffRing>(f: &SkewElement<R>) -> Result<bool> {
    Ok(locate_primitive(f)?.is_some())
}

/// `f` is central iff it is diagonal, each `f(x, x)` is central in `R`, and
/// `f(x_i, x_i) = σ^(j-i)(f(x_j, x_j))` whenever `x_i ≤ x_j`.
pub fn center_member_elem<R: CoeffRing>(f: &SkewElement<R>) -> Result<bool> {
    if !f.is_diagonal() {
        return Ok(false);
    }
    let ctx = f.ctx();
    let ring = ctx.ring();
    for x in 0..ctx.poset().len() {
        if !ring.center_member(&f.coeff(x, x))? {
            return Ok(false);
        }
    }
    Ok(ctx
        .pairs()
        .iter()
        .all(|&(i, j)| f.coeff(i, i) == ring.sigma_pow(j - i, &f.coeff(j, j))))
}

/// Diagonal values `(x, f(x, x))` for one connected component.
type Assignment<R> = Vec<(usize, <R as CoeffRing>::Elem)>;

/// Every central element, found by solving the center conditions one
/// connected component at a time and combining the independent solutions.
pub fn center_enumerate<R: CoeffRing>(ctx: &Arc<AlgebraContext<R>>) -> Result<Vec<SkewElement<R>>> {
    let ring = ctx.ring();
    if !ring.is_finite() {
        return Err(Error::unsupported(format!(
            "center enumeration needs a finite ring, {} is not",
            ring.id()
        )));
    }
    let mut central = Vec::new();
    for r in ring.elements()? {
        if ring.center_member(&r)? {
            central.push(r);
        }
    }
    let per_component: Vec<Vec<Assignment<R>>> = ctx
        .poset()
        .connected_components()
        .into_iter()
        .map(|comp| component_center_solutions(ctx, &comp, &central))
        .collect();

    let mut out = vec![Vec::new()];
    for solutions in &per_component {
        let mut next = Vec::with_capacity(out.len() * solutions.len());
        for partial in &out {
            for sol in solutions {
                let mut joined: Vec<(usize, R::Elem)> = partial.clone();
                joined.extend(sol.iter().cloned());
                next.push(joined);
            }
        }
        out = next;
    }
    Ok(out
        .into_iter()
        .map(|diag| ctx.build(diag.into_iter().map(|(x, r)| ((x, x), r))))
        .collect())
}

/// Diagonal assignments on one component satisfying the center conditions.
/// Elements are visited from the largest label down: an element below some
/// already-assigned `x_j` is forced to `σ^(j-i)(value_j)`, maximal elements
/// range over `Z(R)`.
fn component_center_solutions<R: CoeffRing>(
    ctx: &AlgebraContext<R>,
    component: &[usize],
    central: &[R::Elem],
) -> Vec<Assignment<R>> {
    let ring = ctx.ring();
    let poset = ctx.poset();
    let order: Vec<usize> = component.iter().rev().copied().collect();
    let mut solutions = Vec::new();
    let mut values: HashMap<usize, R::Elem> = HashMap::new();

    fn descend<R: CoeffRing>(
        depth: usize,
        order: &[usize],
        ring: &R,
        poset: &crate::poset::Poset,
        central: &[R::Elem],
        values: &mut HashMap<usize, R::Elem>,
        solutions: &mut Vec<Vec<(usize, R::Elem)>>,
    ) {
        let Some(&i) = order.get(depth) else {
            let mut sol: Vec<_> = values.iter().map(|(&x, r)| (x, r.clone())).collect();
            sol.sort_by_key(|(x, _)| *x);
            solutions.push(sol);
            return;
        };
        let uppers: Vec<usize> = order[..depth].iter().copied().filter(|&j| poset.lt(i, j)).collect();
        let candidates: Vec<R::Elem> = match uppers.first() {
            None => central.to_vec(),
            Some(&j) => {
                let forced = ring.sigma_pow(j - i, &values[&j]);
                let consistent = uppers
                    .iter()
                    .all(|&u| ring.sigma_pow(u - i, &values[&u]) == forced);
                if consistent && central.contains(&forced) {
                    vec![forced]
                } else {
                    Vec::new()
                }
            }
        };
        for c in candidates {
            values.insert(i, c);
            descend(depth + 1, order, ring, poset, central, values, solutions);
            values.remove(&i);
        }
    }

    descend(0, &order, ring, poset, central, &mut values, &mut solutions);
    solutions
}

/// For central `f` and `x_i, x_j` in one connected component,
/// `σ^i(f(x_i, x_i)) = σ^j(f(x_j, x_j))` with 1-based labels `i, j`.
/// Always `Ok(true)` for central input; a failure is reported as an
/// invariant violation.
pub fn component_center_check<R: CoeffRing>(f: &SkewElement<R>) -> Result<bool> {
    if !center_member_elem(f)? {
        return Err(Error::NotCentral);
    }
    let ring = f.ctx().ring();
    for comp in f.ctx().poset().connected_components() {
        let twisted: Vec<(usize, R::Elem)> = comp
            .iter()
            .map(|&x| (x, ring.sigma_pow(x + 1, &f.coeff(x, x))))
            .collect();
        if let Some((x, _)) = twisted.iter().find(|(_, v)| *v != twisted[0].1) {
            return Err(Error::InvariantViolation(format!(
                "central element {} breaks the component identity between x{} and x{}",
                f.render(),
                twisted[0].0 + 1,
                x + 1
            )));
        }
    }
    Ok(true)
}
