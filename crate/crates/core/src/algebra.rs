//! Elements of the skew incidence ring `I(X, R, σ)` and their arithmetic.
//!
//! An element is a function on comparable pairs of `X` with values in `R`.
//! The product twists the right factor by a power of `σ` given by the
//! difference of global labels:
//!
//! ```text
//! (fg)(x_i, x_j) = Σ_{x_i ≤ x_k ≤ x_j} f(x_i, x_k) · σ^(k-i)(g(x_k, x_j))
//! ```

use std::collections::BTreeMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use rand::RngCore;

use crate::error::{Error, Result};
use crate::poset::Poset;
use crate::ring::CoeffRing;

/// Default cap on the number of elements an exhaustive enumeration may visit.
pub const DEFAULT_ENUMERATION_BOUND: usize = 1 << 16;

/// A poset and coefficient ring pair; every [`SkewElement`] belongs to one.
#[derive(Debug)]
pub struct AlgebraContext<R: CoeffRing> {
    poset: Poset,
    ring: R,
    pairs: Vec<(usize, usize)>,
    by_length: Vec<(usize, usize)>,
}

impl<R: CoeffRing> AlgebraContext<R> {
    pub fn new(poset: Poset, ring: R) -> Arc<Self> {
        let pairs = poset.comparable_pairs();
        let mut by_length = pairs.clone();
        by_length.sort_by_key(|&(i, j)| (poset.interval_length(i, j), i, j));
        Arc::new(AlgebraContext { poset, ring, pairs, by_length })
    }

    pub fn poset(&self) -> &Poset {
        &self.poset
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    /// Comparable pairs `(i, j)`, `x_i ≤ x_j`, lexicographic.
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// Comparable pairs by interval length, ties lexicographic.
    pub fn pairs_by_interval_length(&self) -> &[(usize, usize)] {
        &self.by_length
    }

    /// `|R|^(#pairs)`, or `None` for infinite rings or on overflow.
    pub fn cardinality(&self) -> Option<usize> {
        let r = self.ring.cardinality()?;
        r.checked_pow(u32::try_from(self.pairs.len()).ok()?)
    }

    /// Whether elements of `self` and `other` may be combined.
    pub fn same_as(&self, other: &Self) -> bool {
        std::ptr::eq(self, other) || (self.poset == other.poset && self.ring == other.ring)
    }

    pub fn zero(self: &Arc<Self>) -> SkewElement<R> {
        SkewElement { ctx: Arc::clone(self), coeffs: BTreeMap::new() }
    }

    /// The identity `δ`.
    pub fn delta(self: &Arc<Self>) -> SkewElement<R> {
        self.scalar_embed(self.ring.one())
    }

    /// `r·δ`.
    pub fn scalar_embed(self: &Arc<Self>, r: R::Elem) -> SkewElement<R> {
        let n = self.poset.len();
        self.build((0..n).map(|i| ((i, i), r.clone())))
    }

    /// `e_{ij}`, the function equal to `1` at `(x_i, x_j)` and `0` elsewhere.
    pub fn basis_e(self: &Arc<Self>, i: usize, j: usize) -> Result<SkewElement<R>> {
        self.basis_scaled(self.ring.one(), i, j)
    }

    /// `r·e_{ij}`.
    pub fn basis_scaled(self: &Arc<Self>, r: R::Elem, i: usize, j: usize) -> Result<SkewElement<R>> {
        self.from_coeffs([((i, j), r)])
    }

    /// Builds an element from `(pair, coefficient)` entries. Entries on the
    /// same pair are summed; entries on incomparable pairs are rejected.
    pub fn from_coeffs(
        self: &Arc<Self>,
        entries: impl IntoIterator<Item = ((usize, usize), R::Elem)>,
    ) -> Result<SkewElement<R>> {
        let n = self.poset.len();
        let mut coeffs: BTreeMap<(usize, usize), R::Elem> = BTreeMap::new();
        for ((i, j), r) in entries {
            if i >= n || j >= n {
                return Err(Error::InvalidInput(format!("pair ({}, {}) out of range", i + 1, j + 1)));
            }
            if !self.poset.leq(i, j) {
                return Err(Error::UnsupportedPair(i + 1, j + 1));
            }
            if !self.ring.contains(&r) {
                return Err(Error::SpecMismatch(format!("{r:?} is not an element of {}", self.ring.id())));
            }
            accumulate(&self.ring, &mut coeffs, (i, j), r);
        }
        Ok(SkewElement { ctx: Arc::clone(self), coeffs })
    }

    /// Unchecked builder for entries known to be supported.
    pub(crate) fn build(
        self: &Arc<Self>,
        entries: impl IntoIterator<Item = ((usize, usize), R::Elem)>,
    ) -> SkewElement<R> {
        let mut coeffs = BTreeMap::new();
        for (pair, r) in entries {
            debug_assert!(self.poset.leq(pair.0, pair.1));
            accumulate(&self.ring, &mut coeffs, pair, r);
        }
        SkewElement { ctx: Arc::clone(self), coeffs }
    }

    /// Every element exactly once, in a fixed mixed-radix order over
    /// [`AlgebraContext::pairs`]. Refuses algebras larger than `bound`.
    pub fn enumerate(self: &Arc<Self>, bound: usize) -> Result<Vec<SkewElement<R>>> {
        let total = self.cardinality().ok_or_else(|| {
            Error::unsupported(format!("algebra over {} is not enumerable", self.ring.id()))
        })?;
        if total > bound {
            return Err(Error::unsupported(format!(
                "algebra has {total} elements, enumeration bound is {bound}"
            )));
        }
        let elems = self.ring.elements()?;
        let radix = elems.len();
        let mut out = Vec::with_capacity(total);
        let mut digits = vec![0usize; self.pairs.len()];
        for _ in 0..total {
            out.push(self.build(
                self.pairs.iter().zip(&digits).map(|(&p, &d)| (p, elems[d].clone())),
            ));
            for d in digits.iter_mut() {
                *d += 1;
                if *d < radix {
                    break;
                }
                *d = 0;
            }
        }
        Ok(out)
    }

    /// `{ r·e_{ij} : r ≠ 0, x_i ≤ x_j }`, an additive generating set.
    pub fn spanning_set(self: &Arc<Self>) -> Result<Vec<SkewElement<R>>> {
        let elems = self.ring.elements()?;
        let mut out = Vec::new();
        for &p in &self.pairs {
            for r in elems.iter().filter(|r| !self.ring.is_zero(r)) {
                out.push(self.build([(p, r.clone())]));
            }
        }
        Ok(out)
    }

    pub fn random_element(self: &Arc<Self>, rng: &mut dyn RngCore) -> Result<SkewElement<R>> {
        let mut entries = Vec::with_capacity(self.pairs.len());
        for &p in &self.pairs {
            entries.push((p, self.ring.random_elem(rng)?));
        }
        Ok(self.build(entries))
    }

    /// A random element whose diagonal entries are units of `R`.
    pub fn random_unit(self: &Arc<Self>, rng: &mut dyn RngCore) -> Result<SkewElement<R>> {
        let mut entries = Vec::with_capacity(self.pairs.len());
        for &(i, j) in &self.pairs {
            let mut r = self.ring.random_elem(rng)?;
            if i == j {
                let mut tries = 0;
                while !self.ring.is_unit(&r)? {
                    tries += 1;
                    if tries > 10_000 {
                        return Err(Error::unsupported("could not sample a unit of the ring"));
                    }
                    r = self.ring.random_elem(rng)?;
                }
            }
            entries.push(((i, j), r));
        }
        Ok(self.build(entries))
    }

    /// Parses the element grammar: a `+`-separated sum of terms
    /// `coeff*e[i,j]`, `coeff*e[i]` or `coeff*delta`, where the coefficient
    /// is a ring literal (optional, default `1`) and indices are 1-based.
    /// Whitespace is ignored; `0` is the zero element.
    pub fn parse_element(self: &Arc<Self>, text: &str) -> Result<SkewElement<R>> {
        let text: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if text.is_empty() {
            return Err(Error::parse("empty element expression"));
        }
        if text == "0" {
            return Ok(self.zero());
        }
        let mut acc = self.zero();
        for term in split_top_level(&text, '+') {
            acc = &acc + &self.parse_term(term)?;
        }
        Ok(acc)
    }

    fn parse_term(self: &Arc<Self>, term: &str) -> Result<SkewElement<R>> {
        let bad = || Error::parse(format!("bad term '{term}'"));
        let (coeff_text, basis) = match term.rfind('*') {
            Some(star) if !term[star + 1..].contains(')') => (Some(&term[..star]), &term[star + 1..]),
            _ => (None, term),
        };
        let coeff = match coeff_text {
            Some("") => return Err(bad()),
            Some(c) => self.ring.parse_elem(c)?,
            None => self.ring.one(),
        };
        if basis == "delta" {
            return Ok(self.scalar_embed(coeff));
        }
        let inner = basis
            .strip_prefix("e[")
            .and_then(|b| b.strip_suffix(']'))
            .ok_or_else(bad)?;
        let n = self.poset.len();
        let index = |s: &str| -> Result<usize> {
            let v: usize = s.parse().map_err(|_| Error::parse(format!("bad index '{s}' in '{term}'")))?;
            if v == 0 || v > n {
                return Err(Error::parse(format!("index {v} out of range 1..{n} in '{term}'")));
            }
            Ok(v - 1)
        };
        let (i, j) = match inner.split_once(',') {
            Some((a, b)) => (index(a)?, index(b)?),
            None => {
                let i = index(inner)?;
                (i, i)
            }
        };
        if !self.poset.leq(i, j) {
            return Err(Error::Support(i + 1, j + 1));
        }
        Ok(self.build([((i, j), coeff)]))
    }

    /// Canonical rendering: diagonal terms by label, then off-diagonal terms
    /// lexicographically, joined by ` + `. Inverse of
    /// [`AlgebraContext::parse_element`] up to canonical form.
    pub fn render(&self, f: &SkewElement<R>) -> String {
        if f.coeffs.is_empty() {
            return "0".into();
        }
        let diag = f.coeffs.iter().filter(|((i, j), _)| i == j);
        let off = f.coeffs.iter().filter(|((i, j), _)| i != j);
        diag.chain(off)
            .map(|(&(i, j), r)| {
                let mut c = self.ring.format_elem(r);
                if c.contains('+') {
                    c = format!("({c})");
                }
                if i == j {
                    format!("{c}*e[{}]", i + 1)
                } else {
                    format!("{c}*e[{},{}]", i + 1, j + 1)
                }
            })
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

fn accumulate<R: CoeffRing>(
    ring: &R,
    coeffs: &mut BTreeMap<(usize, usize), R::Elem>,
    pair: (usize, usize),
    r: R::Elem,
) {
    use std::collections::btree_map::Entry;
    match coeffs.entry(pair) {
        Entry::Vacant(v) => {
            if !ring.is_zero(&r) {
                v.insert(r);
            }
        }
        Entry::Occupied(mut o) => {
            let sum = ring.add(o.get(), &r);
            if ring.is_zero(&sum) {
                o.remove();
            } else {
                *o.get_mut() = sum;
            }
        }
    }
}

fn split_top_level(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' | '[' => depth += 1,
            ')' | ']' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&s[start..i]);
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

/// An element of `I(X, R, σ)` in canonical form: zero coefficients are
/// never stored, so structural equality is ring equality.
#[derive(Clone)]
pub struct SkewElement<R: CoeffRing> {
    ctx: Arc<AlgebraContext<R>>,
    coeffs: BTreeMap<(usize, usize), R::Elem>,
}

impl<R: CoeffRing> SkewElement<R> {
    pub fn ctx(&self) -> &Arc<AlgebraContext<R>> {
        &self.ctx
    }

    /// `f(x_i, x_j)`.
    pub fn coeff(&self, i: usize, j: usize) -> R::Elem {
        self.coeffs.get(&(i, j)).cloned().unwrap_or_else(|| self.ctx.ring.zero())
    }

    /// Nonzero coefficients, lexicographic by pair.
    pub fn coeffs(&self) -> impl Iterator<Item = (&(usize, usize), &R::Elem)> {
        self.coeffs.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `f(x, y) = 0` whenever `x ≠ y`.
    pub fn is_diagonal(&self) -> bool {
        self.coeffs.keys().all(|(i, j)| i == j)
    }

    /// The restriction of `f` to the diagonal.
    pub fn diagonal_part(&self) -> SkewElement<R> {
        SkewElement {
            ctx: Arc::clone(&self.ctx),
            coeffs: self
                .coeffs
                .iter()
                .filter(|((i, j), _)| i == j)
                .map(|(&p, r)| (p, r.clone()))
                .collect(),
        }
    }

    fn check_ctx(&self, other: &Self) -> Result<()> {
        if self.ctx.same_as(&other.ctx) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        let ring = &self.ctx.ring;
        let mut coeffs = self.coeffs.clone();
        for (&p, r) in &other.coeffs {
            accumulate(ring, &mut coeffs, p, r.clone());
        }
        Ok(SkewElement { ctx: Arc::clone(&self.ctx), coeffs })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&other.negate())
    }

    pub fn negate(&self) -> Self {
        let ring = &self.ctx.ring;
        SkewElement {
            ctx: Arc::clone(&self.ctx),
            coeffs: self.coeffs.iter().map(|(&p, r)| (p, ring.neg(r))).collect(),
        }
    }

    /// Left `R`-module action: `(r·f)(x, y) = r·f(x, y)`.
    pub fn scale_left(&self, r: &R::Elem) -> Self {
        let ring = &self.ctx.ring;
        self.ctx.build(self.coeffs.iter().map(|(&p, c)| (p, ring.mul(r, c))))
    }

    /// The twisted convolution product `f·g`.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_ctx(other)?;
        let ring = &self.ctx.ring;
        let n = self.ctx.poset.len();
        let mut rows: Vec<Vec<(usize, &R::Elem)>> = vec![Vec::new(); n];
        for (&(k, j), b) in &other.coeffs {
            rows[k].push((j, b));
        }
        let mut coeffs = BTreeMap::new();
        for (&(i, k), a) in &self.coeffs {
            for &(j, b) in &rows[k] {
                // labels form a linear extension, so k >= i
                let term = ring.mul(a, &ring.sigma_pow(k - i, b));
                accumulate(ring, &mut coeffs, (i, j), term);
            }
        }
        Ok(SkewElement { ctx: Arc::clone(&self.ctx), coeffs })
    }

    /// `e_x · f · e_y`, computed with two products.
    pub fn sandwich(&self, x: usize, y: usize) -> Self {
        let ex = self.ctx.build([((x, x), self.ctx.ring.one())]);
        let ey = self.ctx.build([((y, y), self.ctx.ring.one())]);
        &(&ex * self) * &ey
    }

    /// Canonical text form, see [`AlgebraContext::render`].
    pub fn render(&self) -> String {
        self.ctx.render(self)
    }
}

impl<R: CoeffRing> PartialEq for SkewElement<R> {
    fn eq(&self, other: &Self) -> bool {
        self.ctx.same_as(&other.ctx) && self.coeffs == other.coeffs
    }
}

impl<R: CoeffRing> Eq for SkewElement<R> {}

impl<R: CoeffRing> Hash for SkewElement<R> {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl<R: CoeffRing> PartialOrd for SkewElement<R> {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl<R: CoeffRing> Ord for SkewElement<R> {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.coeffs.cmp(&other.coeffs)
    }
}

impl<R: CoeffRing> fmt::Debug for SkewElement<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SkewElement({})", self.render())
    }
}

impl<R: CoeffRing> fmt::Display for SkewElement<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

// Operator forms panic on context mismatch; use the `try_*` methods to
// handle it as an error.

impl<R: CoeffRing> Add for &SkewElement<R> {
    type Output = SkewElement<R>;
    fn add(self, rhs: Self) -> SkewElement<R> {
        self.try_add(rhs).expect("operands from different algebra contexts")
    }
}

impl<R: CoeffRing> Sub for &SkewElement<R> {
    type Output = SkewElement<R>;
    fn sub(self, rhs: Self) -> SkewElement<R> {
        self.try_sub(rhs).expect("operands from different algebra contexts")
    }
}

impl<R: CoeffRing> Mul for &SkewElement<R> {
    type Output = SkewElement<R>;
    fn mul(self, rhs: Self) -> SkewElement<R> {
        self.try_mul(rhs).expect("operands from different algebra contexts")
    }
}

impl<R: CoeffRing> Neg for &SkewElement<R> {
    type Output = SkewElement<R>;
    fn neg(self) -> SkewElement<R> {
        self.negate()
    }
}

/// Checks the structural identities of the algebra on its spanning set:
/// associativity, unitality, the diagonal rule `(fg)(x,x) = f(x,x)g(x,x)`,
/// the basis product rule `(r e_ij)(s e_kl) = r σ^(j-i)(s) e_il` if `j = k`
/// and `0` otherwise, and `e_x f e_y = f(x,y) e_xy`.
pub fn check_algebra_identities<R: CoeffRing>(ctx: &Arc<AlgebraContext<R>>) -> Result<()> {
    let ring = ctx.ring();
    let span = ctx.spanning_set()?;
    let delta = ctx.delta();
    let n = ctx.poset().len();
    let fail = |what: &str, xs: &[&SkewElement<R>]| {
        let shown: Vec<String> = xs.iter().map(|x| x.render()).collect();
        Err(Error::AxiomViolation(format!("{what} fails at ({})", shown.join("; "))))
    };
    let single = |f: &SkewElement<R>| {
        let (&p, r) = f.coeffs().next().expect("spanning elements are nonzero");
        (p, r.clone())
    };
    for f in &span {
        if &delta * f != *f || f * &delta != *f {
            return fail("unit law", &[f]);
        }
        let ((i, j), r) = single(f);
        for x in 0..n {
            for y in 0..n {
                let expected = if ctx.poset().leq(x, y) && (x, y) == (i, j) {
                    ctx.build([((x, y), r.clone())])
                } else {
                    ctx.zero()
                };
                if f.sandwich(x, y) != expected {
                    return fail("sandwich identity", &[f]);
                }
            }
        }
        for g in &span {
            let fg = f * g;
            for x in 0..n {
                if fg.coeff(x, x) != ring.mul(&f.coeff(x, x), &g.coeff(x, x)) {
                    return fail("diagonal product rule", &[f, g]);
                }
            }
            let ((k, l), s) = single(g);
            let expected = if j == k {
                ctx.build([((i, l), ring.mul(&r, &ring.sigma_pow(j - i, &s)))])
            } else {
                ctx.zero()
            };
            if fg != expected {
                return fail("basis product rule", &[f, g]);
            }
            for h in &span {
                if &fg * h != f * &(g * h) {
                    return fail("associativity", &[f, g, h]);
                }
            }
        }
    }
    Ok(())
}
