//! Coefficient rings `R` equipped with a unital endomorphism `σ`.
//!
//! [`CoeffRing`] is the abstraction every other module is generic over.
//! The built-in finite rings live in [`RingSpec`]; user code may implement
//! the trait for its own rings, declaring finiteness and commutativity so
//! that exhaustive queries can refuse rings they cannot enumerate.

mod catalog;
mod integers;

pub use catalog::{RingElement, RingSpec};
pub use integers::IntegerRing;

use std::collections::HashSet;
use std::fmt;
use std::hash::Hash;

use rand::RngCore;

use crate::error::{Error, Result};

/// What is known about the commutativity of a ring.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Commutativity {
    Commutative,
    NonCommutative,
    Unknown,
}

/// An associative unital ring with a distinguished unital endomorphism `σ`.
///
/// Elements are values in canonical form: two elements are equal as ring
/// elements iff they compare equal with `==`.
pub trait CoeffRing: fmt::Debug + Clone + PartialEq + Send + Sync {
    type Elem: Clone + Eq + Ord + Hash + fmt::Debug + Send + Sync;

    /// Identifier of the ring, e.g. `zmod:4`.
    fn id(&self) -> String;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    /// The endomorphism `σ`.
    fn sigma(&self, a: &Self::Elem) -> Self::Elem;

    /// `Some(|R|)` for finite rings, `None` otherwise.
    fn cardinality(&self) -> Option<usize>;

    fn commutativity(&self) -> Commutativity;

    /// Every element exactly once, in a deterministic order.
    fn elements(&self) -> Result<Vec<Self::Elem>> {
        Err(Error::unsupported(format!("cannot enumerate infinite ring {}", self.id())))
    }

    /// Whether `a` is a well-formed element of this ring.
    fn contains(&self, _a: &Self::Elem) -> bool {
        true
    }

    fn format_elem(&self, a: &Self::Elem) -> String;

    fn parse_elem(&self, text: &str) -> Result<Self::Elem>;

    fn is_finite(&self) -> bool {
        self.cardinality().is_some()
    }

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    /// `σ^k(a)`; `σ^0` is the identity.
    fn sigma_pow(&self, k: usize, a: &Self::Elem) -> Self::Elem {
        let mut r = a.clone();
        for _ in 0..k {
            r = self.sigma(&r);
        }
        r
    }

    /// Two-sided inverse of `a`, if any. The default searches exhaustively
    /// and therefore needs a finite ring.
    fn inverse(&self, a: &Self::Elem) -> Result<Option<Self::Elem>> {
        let one = self.one();
        Ok(self
            .elements()?
            .into_iter()
            .find(|s| self.mul(a, s) == one && self.mul(s, a) == one))
    }

    fn is_unit(&self, a: &Self::Elem) -> Result<bool> {
        Ok(self.inverse(a)?.is_some())
    }

    /// Like [`CoeffRing::inverse`] but a non-unit is an error.
    fn ring_inverse(&self, a: &Self::Elem) -> Result<Self::Elem> {
        self.inverse(a)?
            .ok_or_else(|| Error::NotAUnit(self.format_elem(a)))
    }

    fn is_idempotent(&self, a: &Self::Elem) -> bool {
        self.mul(a, a) == *a
    }

    fn idempotents(&self) -> Result<Vec<Self::Elem>> {
        Ok(self
            .elements()?
            .into_iter()
            .filter(|e| self.is_idempotent(e))
            .collect())
    }

    /// `a ≠ 0`, `a² = a`, and every idempotent `f` with `af = fa = f` is `0` or `a`.
    fn is_primitive_idempotent(&self, a: &Self::Elem) -> Result<bool> {
        if !self.is_finite() {
            return Err(Error::unsupported(format!(
                "primitivity needs a finite ring, {} is not",
                self.id()
            )));
        }
        if self.is_zero(a) || !self.is_idempotent(a) {
            return Ok(false);
        }
        let zero = self.zero();
        Ok(self.idempotents()?.iter().all(|f| {
            let absorbed = self.mul(a, f) == *f && self.mul(f, a) == *f;
            !absorbed || *f == zero || f == a
        }))
    }

    /// True iff `0` and `1` are the only idempotents.
    fn has_only_trivial_idempotents(&self) -> Result<bool> {
        let (zero, one) = (self.zero(), self.one());
        Ok(self.idempotents()?.iter().all(|e| *e == zero || *e == one))
    }

    /// `a ∈ J(R)`: `1 - x·a·y` is a unit for every `x, y`.
    fn jacobson_member(&self, a: &Self::Elem) -> Result<bool> {
        if !self.is_finite() {
            return Err(Error::unsupported(format!(
                "Jacobson radical membership needs a finite ring, {} is not",
                self.id()
            )));
        }
        let elems = self.elements()?;
        let units: HashSet<Self::Elem> = units_of(self, &elems)?;
        let one = self.one();
        for x in &elems {
            let xa = self.mul(x, a);
            for y in &elems {
                if !units.contains(&self.sub(&one, &self.mul(&xa, y))) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// `a ∈ Z(R)`.
    fn center_member(&self, a: &Self::Elem) -> Result<bool> {
        match self.commutativity() {
            Commutativity::Commutative => Ok(true),
            _ if self.is_finite() => Ok(self
                .elements()?
                .iter()
                .all(|b| self.mul(a, b) == self.mul(b, a))),
            _ => Err(Error::unsupported(format!(
                "center membership undecidable for {}",
                self.id()
            ))),
        }
    }

    /// A uniformly random element. The default draws from
    /// [`CoeffRing::elements`].
    fn random_elem(&self, rng: &mut dyn RngCore) -> Result<Self::Elem> {
        let elems = self.elements()?;
        let i = (rng.next_u64() % elems.len() as u64) as usize;
        Ok(elems[i].clone())
    }
}

fn units_of<R: CoeffRing>(ring: &R, elems: &[R::Elem]) -> Result<HashSet<R::Elem>> {
    let mut units = HashSet::new();
    for e in elems {
        if ring.is_unit(e)? {
            units.insert(e.clone());
        }
    }
    Ok(units)
}

/// All units of a finite ring, in enumeration order.
pub fn units<R: CoeffRing>(ring: &R) -> Result<Vec<R::Elem>> {
    let mut out = Vec::new();
    for e in ring.elements()? {
        if ring.is_unit(&e)? {
            out.push(e);
        }
    }
    Ok(out)
}

/// Elements of `J(R)`, in enumeration order.
pub fn radical<R: CoeffRing>(ring: &R) -> Result<Vec<R::Elem>> {
    let mut out = Vec::new();
    for e in ring.elements()? {
        if ring.jacobson_member(&e)? {
            out.push(e);
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Mul,
    Neg,
}

/// Checked ring arithmetic: operands that are not elements of `ring`
/// produce [`Error::SpecMismatch`]. `b` is ignored for [`ArithOp::Neg`].
pub fn ring_arith<R: CoeffRing>(
    ring: &R,
    op: ArithOp,
    a: &R::Elem,
    b: Option<&R::Elem>,
) -> Result<R::Elem> {
    let check = |x: &R::Elem| {
        if ring.contains(x) {
            Ok(())
        } else {
            Err(Error::SpecMismatch(format!("{x:?} is not an element of {}", ring.id())))
        }
    };
    check(a)?;
    let rhs = |b: Option<&R::Elem>| -> Result<R::Elem> {
        let b = b.ok_or_else(|| Error::InvalidInput("binary operation needs two operands".into()))?;
        check(b)?;
        Ok(b.clone())
    };
    Ok(match op {
        ArithOp::Add => ring.add(a, &rhs(b)?),
        ArithOp::Mul => ring.mul(a, &rhs(b)?),
        ArithOp::Neg => ring.neg(a),
    })
}

/// Exhaustively checks the ring axioms and that `σ` is a unital ring
/// endomorphism. Returns the first violation found.
pub fn check_ring_axioms<R: CoeffRing>(ring: &R) -> Result<()> {
    let elems = ring.elements()?;
    let (zero, one) = (ring.zero(), ring.one());
    let fail = |what: &str, xs: &[&R::Elem]| {
        let shown: Vec<String> = xs.iter().map(|x| ring.format_elem(x)).collect();
        Err(Error::AxiomViolation(format!("{what} fails at ({})", shown.join(", "))))
    };
    if ring.sigma(&one) != one {
        return fail("sigma(1) = 1", &[&one]);
    }
    for a in &elems {
        if ring.add(a, &zero) != *a {
            return fail("additive identity", &[a]);
        }
        if ring.add(a, &ring.neg(a)) != zero {
            return fail("additive inverse", &[a]);
        }
        if ring.mul(a, &one) != *a || ring.mul(&one, a) != *a {
            return fail("multiplicative identity", &[a]);
        }
        for b in &elems {
            if ring.add(a, b) != ring.add(b, a) {
                return fail("additive commutativity", &[a, b]);
            }
            if ring.sigma(&ring.add(a, b)) != ring.add(&ring.sigma(a), &ring.sigma(b)) {
                return fail("sigma additivity", &[a, b]);
            }
            if ring.sigma(&ring.mul(a, b)) != ring.mul(&ring.sigma(a), &ring.sigma(b)) {
                return fail("sigma multiplicativity", &[a, b]);
            }
            if ring.commutativity() == Commutativity::Commutative && ring.mul(a, b) != ring.mul(b, a) {
                return fail("declared commutativity", &[a, b]);
            }
            for c in &elems {
                if ring.add(&ring.add(a, b), c) != ring.add(a, &ring.add(b, c)) {
                    return fail("additive associativity", &[a, b, c]);
                }
                if ring.mul(&ring.mul(a, b), c) != ring.mul(a, &ring.mul(b, c)) {
                    return fail("multiplicative associativity", &[a, b, c]);
                }
                if ring.mul(a, &ring.add(b, c)) != ring.add(&ring.mul(a, b), &ring.mul(a, c)) {
                    return fail("left distributivity", &[a, b, c]);
                }
                if ring.mul(&ring.add(a, b), c) != ring.add(&ring.mul(a, c), &ring.mul(b, c)) {
                    return fail("right distributivity", &[a, b, c]);
                }
            }
        }
    }
    Ok(())
}
