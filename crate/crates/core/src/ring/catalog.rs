use std::fmt;
use std::str::FromStr;

use rand::RngCore;

use super::{CoeffRing, Commutativity};
use crate::error::{Error, Result};

/// Largest ring the catalog will construct.
const MAX_CARDINALITY: u64 = 1 << 24;

/// The built-in finite coefficient rings.
///
/// Spec strings (see [`FromStr`]):
///
/// | spec                   | ring                 | `σ`                       |
/// |------------------------|----------------------|---------------------------|
/// | `zmod:<n>`             | `Z/n`                | identity                  |
/// | `gf:<p>:<k>:frobenius` | `GF(p^k)`            | `x ↦ x^p`                 |
/// | `prodswap:<inner>`     | `R₀ × R₀`            | `(a,b) ↦ (b,a)`           |
/// | `prodproj:<inner>`     | `R₀ × R₀`            | `(a,b) ↦ (a,a)`           |
/// | `trunc:<n>:<m>:tsq`    | `(Z/n)[t]/(t^m)`     | `t ↦ t²`                  |
///
/// `GF(p^k)` is built on the lexicographically smallest monic irreducible
/// polynomial of degree `k` over `F_p`; its generator is written `w`
/// (`ω` is accepted on input), so `GF(4)` has `w^2 = w+1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum RingSpec {
    ZMod { n: u64 },
    Gf { p: u64, k: usize, modulus: Vec<u64> },
    ProdSwap(Box<RingSpec>),
    ProdProj(Box<RingSpec>),
    Trunc { n: u64, m: usize },
}

/// Canonical-form element of a [`RingSpec`] ring.
///
/// Polynomials store exactly `k` (resp. `m`) coefficients, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum RingElement {
    Int(u64),
    Poly(Vec<u64>),
    Pair(Box<RingElement>, Box<RingElement>),
}

impl RingElement {
    pub fn pair(a: RingElement, b: RingElement) -> Self {
        RingElement::Pair(Box::new(a), Box::new(b))
    }
}

impl RingSpec {
    pub fn zmod(n: u64) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidInput(format!("zmod needs n >= 2, got {n}")));
        }
        if n > MAX_CARDINALITY {
            return Err(Error::InvalidInput(format!("zmod:{n} is too large")));
        }
        Ok(RingSpec::ZMod { n })
    }

    pub fn gf(p: u64, k: usize) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::InvalidInput(format!("gf needs a prime characteristic, got {p}")));
        }
        if k == 0 {
            return Err(Error::InvalidInput("gf needs degree k >= 1".into()));
        }
        checked_power(p, k).filter(|&q| q <= MAX_CARDINALITY).ok_or_else(|| {
            Error::InvalidInput(format!("gf:{p}:{k} is too large"))
        })?;
        let modulus = smallest_irreducible(p, k);
        Ok(RingSpec::Gf { p, k, modulus })
    }

    pub fn prod_swap(inner: RingSpec) -> Result<Self> {
        Self::check_square(&inner)?;
        Ok(RingSpec::ProdSwap(Box::new(inner)))
    }

    pub fn prod_proj(inner: RingSpec) -> Result<Self> {
        Self::check_square(&inner)?;
        Ok(RingSpec::ProdProj(Box::new(inner)))
    }

    pub fn trunc(n: u64, m: usize) -> Result<Self> {
        if n < 2 || m == 0 {
            return Err(Error::InvalidInput(format!("trunc needs n >= 2 and m >= 1, got {n}, {m}")));
        }
        checked_power(n, m).filter(|&q| q <= MAX_CARDINALITY).ok_or_else(|| {
            Error::InvalidInput(format!("trunc:{n}:{m} is too large"))
        })?;
        Ok(RingSpec::Trunc { n, m })
    }

    fn check_square(inner: &RingSpec) -> Result<()> {
        let c = inner.size();
        if c.checked_mul(c).is_none_or(|q| q > MAX_CARDINALITY) {
            return Err(Error::InvalidInput(format!("product over {} is too large", inner.id())));
        }
        Ok(())
    }

    fn size(&self) -> u64 {
        match self {
            RingSpec::ZMod { n } => *n,
            RingSpec::Gf { p, k, .. } => p.pow(*k as u32),
            RingSpec::ProdSwap(r) | RingSpec::ProdProj(r) => r.size() * r.size(),
            RingSpec::Trunc { n, m } => n.pow(*m as u32),
        }
    }

    fn var(&self) -> char {
        match self {
            RingSpec::Trunc { .. } => 't',
            _ => 'w',
        }
    }

    fn gf_mul(p: u64, k: usize, modulus: &[u64], a: &[u64], b: &[u64]) -> Vec<u64> {
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        reduce_mod(&mut prod, modulus, p);
        prod.truncate(k);
        prod
    }

    fn gf_pow(&self, a: &[u64], mut e: u64) -> Vec<u64> {
        let RingSpec::Gf { p, k, modulus } = self else { unreachable!() };
        let mut base = a.to_vec();
        let mut acc = vec![0u64; *k];
        acc[0] = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = Self::gf_mul(*p, *k, modulus, &acc, &base);
            }
            base = Self::gf_mul(*p, *k, modulus, &base, &base);
            e >>= 1;
        }
        acc
    }

    fn poly_from_terms(&self, terms: &[(u64, usize)]) -> Vec<u64> {
        match self {
            RingSpec::Gf { p, k, modulus } => {
                let deg = terms.iter().map(|t| t.1).max().unwrap_or(0);
                let mut v = vec![0u64; (deg + 1).max(*k)];
                for &(c, e) in terms {
                    v[e] = (v[e] + c) % p;
                }
                reduce_mod(&mut v, modulus, *p);
                v.truncate(*k);
                v
            }
            RingSpec::Trunc { n, m } => {
                let mut v = vec![0u64; *m];
                for &(c, e) in terms {
                    if e < *m {
                        v[e] = (v[e] + c) % n;
                    }
                }
                v
            }
            _ => unreachable!(),
        }
    }

    fn parse_poly(&self, text: &str) -> Result<Vec<u64>> {
        let var = self.var();
        let modulus = match self {
            RingSpec::Gf { p, .. } => *p,
            RingSpec::Trunc { n, .. } => *n,
            _ => unreachable!(),
        };
        let text: String = text.chars().map(|c| if c == 'ω' { 'w' } else { c }).collect();
        let text = text.strip_prefix('(').and_then(|t| t.strip_suffix(')')).unwrap_or(&text);
        let bad = || Error::parse(format!("bad {} literal '{text}'", self.id()));
        let mut terms = Vec::new();
        for term in text.split('+') {
            if term.is_empty() {
                return Err(bad());
            }
            let (coef, power) = match term.find(var) {
                None => (term, None),
                Some(pos) => (&term[..pos], Some(&term[pos + var.len_utf8()..])),
            };
            let coef = coef.strip_suffix('*').unwrap_or(coef);
            let c = if coef.is_empty() {
                if power.is_none() {
                    return Err(bad());
                }
                1
            } else {
                coef.parse::<u64>().map_err(|_| bad())? % modulus
            };
            let e = match power {
                None => 0,
                Some("") => 1,
                Some(rest) => {
                    let digits = rest.strip_prefix('^').ok_or_else(bad)?;
                    digits.parse::<usize>().map_err(|_| bad())?
                }
            };
            if e > 4096 {
                return Err(bad());
            }
            terms.push((c, e));
        }
        Ok(self.poly_from_terms(&terms))
    }

    fn format_poly(&self, v: &[u64]) -> String {
        let var = self.var();
        let parts: Vec<String> = v
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &c)| c != 0)
            .map(|(e, &c)| match (e, c) {
                (0, c) => c.to_string(),
                (1, 1) => var.to_string(),
                (1, c) => format!("{c}{var}"),
                (e, 1) => format!("{var}^{e}"),
                (e, c) => format!("{c}{var}^{e}"),
            })
            .collect();
        if parts.is_empty() {
            "0".into()
        } else {
            parts.join("+")
        }
    }

    fn inner_pair<'a>(&self, a: &'a RingElement) -> (&'a RingElement, &'a RingElement) {
        match a {
            RingElement::Pair(x, y) => (x, y),
            _ => panic!("{a:?} is not an element of {}", self.id()),
        }
    }
}

impl CoeffRing for RingSpec {
    type Elem = RingElement;

    fn id(&self) -> String {
        match self {
            RingSpec::ZMod { n } => format!("zmod:{n}"),
            RingSpec::Gf { p, k, .. } => format!("gf:{p}:{k}:frobenius"),
            RingSpec::ProdSwap(r) => format!("prodswap:{}", r.id()),
            RingSpec::ProdProj(r) => format!("prodproj:{}", r.id()),
            RingSpec::Trunc { n, m } => format!("trunc:{n}:{m}:tsq"),
        }
    }

    fn zero(&self) -> RingElement {
        match self {
            RingSpec::ZMod { .. } => RingElement::Int(0),
            RingSpec::Gf { k, .. } => RingElement::Poly(vec![0; *k]),
            RingSpec::Trunc { m, .. } => RingElement::Poly(vec![0; *m]),
            RingSpec::ProdSwap(r) | RingSpec::ProdProj(r) => RingElement::pair(r.zero(), r.zero()),
        }
    }

    fn one(&self) -> RingElement {
        match self {
            RingSpec::ZMod { .. } => RingElement::Int(1),
            RingSpec::Gf { k, .. } => {
                let mut v = vec![0; *k];
                v[0] = 1;
                RingElement::Poly(v)
            }
            RingSpec::Trunc { m, .. } => {
                let mut v = vec![0; *m];
                v[0] = 1;
                RingElement::Poly(v)
            }
            RingSpec::ProdSwap(r) | RingSpec::ProdProj(r) => RingElement::pair(r.one(), r.one()),
        }
    }

    fn add(&self, a: &RingElement, b: &RingElement) -> RingElement {
        use RingElement::*;
        match (self, a, b) {
            (RingSpec::ZMod { n }, Int(x), Int(y)) => Int((x + y) % n),
            (RingSpec::Gf { p: n, .. } | RingSpec::Trunc { n, .. }, Poly(x), Poly(y)) => {
                Poly(x.iter().zip(y).map(|(s, t)| (s + t) % n).collect())
            }
            (RingSpec::ProdSwap(r) | RingSpec::ProdProj(r), Pair(x1, y1), Pair(x2, y2)) => {
                RingElement::pair(r.add(x1, x2), r.add(y1, y2))
            }
            _ => panic!("operands {a:?}, {b:?} are not elements of {}", self.id()),
        }
    }

    fn neg(&self, a: &RingElement) -> RingElement {
        use RingElement::*;
        match (self, a) {
            (RingSpec::ZMod { n }, Int(x)) => Int((n - x) % n),
            (RingSpec::Gf { p: n, .. } | RingSpec::Trunc { n, .. }, Poly(x)) => {
                Poly(x.iter().map(|s| (n - s) % n).collect())
            }
            (RingSpec::ProdSwap(r) | RingSpec::ProdProj(r), Pair(x, y)) => RingElement::pair(r.neg(x), r.neg(y)),
            _ => panic!("{a:?} is not an element of {}", self.id()),
        }
    }

    fn mul(&self, a: &RingElement, b: &RingElement) -> RingElement {
        use RingElement::*;
        match (self, a, b) {
            (RingSpec::ZMod { n }, Int(x), Int(y)) => Int(x * y % n),
            (RingSpec::Gf { p, k, modulus }, Poly(x), Poly(y)) => Poly(Self::gf_mul(*p, *k, modulus, x, y)),
            (RingSpec::Trunc { n, m }, Poly(x), Poly(y)) => {
                let mut v = vec![0u64; *m];
                for (i, &s) in x.iter().enumerate().filter(|(_, &s)| s != 0) {
                    for (j, &t) in y.iter().enumerate().take(m - i) {
                        v[i + j] = (v[i + j] + s * t) % n;
                    }
                }
                Poly(v)
            }
            (RingSpec::ProdSwap(r) | RingSpec::ProdProj(r), Pair(x1, y1), Pair(x2, y2)) => {
                RingElement::pair(r.mul(x1, x2), r.mul(y1, y2))
            }
            _ => panic!("operands {a:?}, {b:?} are not elements of {}", self.id()),
        }
    }

    fn sigma(&self, a: &RingElement) -> RingElement {
        match self {
            RingSpec::ZMod { .. } => a.clone(),
            RingSpec::Gf { p, k, .. } => match a {
                RingElement::Poly(x) if *k > 1 => RingElement::Poly(self.gf_pow(x, *p)),
                _ => a.clone(),
            },
            RingSpec::ProdSwap(_) => {
                let (x, y) = self.inner_pair(a);
                RingElement::Pair(Box::new(y.clone()), Box::new(x.clone()))
            }
            RingSpec::ProdProj(_) => {
                let (x, _) = self.inner_pair(a);
                RingElement::Pair(Box::new(x.clone()), Box::new(x.clone()))
            }
            RingSpec::Trunc { m, .. } => match a {
                RingElement::Poly(x) => {
                    let mut v = vec![0u64; *m];
                    for (i, &c) in x.iter().enumerate() {
                        if 2 * i < *m {
                            v[2 * i] = c;
                        }
                    }
                    RingElement::Poly(v)
                }
                _ => panic!("{a:?} is not an element of {}", self.id()),
            },
        }
    }

    fn cardinality(&self) -> Option<usize> {
        Some(self.size() as usize)
    }

    fn commutativity(&self) -> Commutativity {
        Commutativity::Commutative
    }

    fn elements(&self) -> Result<Vec<RingElement>> {
        Ok(match self {
            RingSpec::ZMod { n } => (0..*n).map(RingElement::Int).collect(),
            RingSpec::Gf { p: base, k: len, .. } | RingSpec::Trunc { n: base, m: len } => {
                let total = base.pow(*len as u32);
                (0..total)
                    .map(|mut code| {
                        let mut v = vec![0u64; *len];
                        for slot in v.iter_mut() {
                            *slot = code % base;
                            code /= base;
                        }
                        RingElement::Poly(v)
                    })
                    .collect()
            }
            RingSpec::ProdSwap(r) | RingSpec::ProdProj(r) => {
                let inner = r.elements()?;
                let mut out = Vec::with_capacity(inner.len() * inner.len());
                for a in &inner {
                    for b in &inner {
                        out.push(RingElement::pair(a.clone(), b.clone()));
                    }
                }
                out
            }
        })
    }

    fn contains(&self, a: &RingElement) -> bool {
        match (self, a) {
            (RingSpec::ZMod { n }, RingElement::Int(x)) => x < n,
            (RingSpec::Gf { p: n, k: len, .. } | RingSpec::Trunc { n, m: len }, RingElement::Poly(v)) => {
                v.len() == *len && v.iter().all(|c| c < n)
            }
            (RingSpec::ProdSwap(r) | RingSpec::ProdProj(r), RingElement::Pair(x, y)) => {
                r.contains(x) && r.contains(y)
            }
            _ => false,
        }
    }

    fn format_elem(&self, a: &RingElement) -> String {
        match (self, a) {
            (RingSpec::ZMod { .. }, RingElement::Int(x)) => x.to_string(),
            (RingSpec::Gf { .. } | RingSpec::Trunc { .. }, RingElement::Poly(v)) => self.format_poly(v),
            (RingSpec::ProdSwap(r) | RingSpec::ProdProj(r), RingElement::Pair(x, y)) => {
                format!("({},{})", r.format_elem(x), r.format_elem(y))
            }
            _ => format!("{a:?}"),
        }
    }

    fn parse_elem(&self, text: &str) -> Result<RingElement> {
        let text: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        match self {
            RingSpec::ZMod { n } => {
                let text = text.strip_prefix('(').and_then(|t| t.strip_suffix(')')).unwrap_or(&text);
                let bad = || Error::parse(format!("bad zmod:{n} literal '{text}'"));
                let (negative, digits) = match text.strip_prefix('-') {
                    Some(d) => (true, d),
                    None => (false, text),
                };
                let v = digits.parse::<u64>().map_err(|_| bad())? % n;
                Ok(RingElement::Int(if negative { (n - v) % n } else { v }))
            }
            RingSpec::Gf { .. } | RingSpec::Trunc { .. } => self.parse_poly(&text).map(RingElement::Poly),
            RingSpec::ProdSwap(r) | RingSpec::ProdProj(r) => {
                let bad = || Error::parse(format!("bad {} literal '{text}', expected (a,b)", self.id()));
                let body = text.strip_prefix('(').and_then(|t| t.strip_suffix(')')).ok_or_else(bad)?;
                let comma = top_level_comma(body).ok_or_else(bad)?;
                let a = r.parse_elem(&body[..comma])?;
                let b = r.parse_elem(&body[comma + 1..])?;
                Ok(RingElement::pair(a, b))
            }
        }
    }

    fn inverse(&self, a: &RingElement) -> Result<Option<RingElement>> {
        match (self, a) {
            (RingSpec::ZMod { n }, RingElement::Int(x)) => Ok(mod_inverse(*x, *n).map(RingElement::Int)),
            (RingSpec::Gf { p, k, .. }, RingElement::Poly(x)) => {
                if x.iter().all(|&c| c == 0) {
                    Ok(None)
                } else {
                    Ok(Some(RingElement::Poly(self.gf_pow(x, p.pow(*k as u32) - 2))))
                }
            }
            (RingSpec::ProdSwap(r) | RingSpec::ProdProj(r), RingElement::Pair(x, y)) => {
                Ok(match (r.inverse(x)?, r.inverse(y)?) {
                    (Some(u), Some(v)) => Some(RingElement::pair(u, v)),
                    _ => None,
                })
            }
            (RingSpec::Trunc { n, m }, RingElement::Poly(x)) => {
                // a = c(1 + u) with u nilpotent; invert the constant term and
                // sum the finite geometric series.
                let Some(c_inv) = mod_inverse(x[0], *n) else { return Ok(None) };
                let scaled: Vec<u64> = x.iter().map(|c| c * c_inv % n).collect();
                let mut nil = scaled.clone();
                nil[0] = 0;
                let neg_nil = self.neg(&RingElement::Poly(nil));
                let mut acc = self.one();
                let mut power = self.one();
                for _ in 1..*m {
                    power = self.mul(&power, &neg_nil);
                    acc = self.add(&acc, &power);
                }
                let c = self.poly_from_terms(&[(c_inv, 0)]);
                Ok(Some(self.mul(&acc, &RingElement::Poly(c))))
            }
            _ => Err(Error::SpecMismatch(format!("{a:?} is not an element of {}", self.id()))),
        }
    }

    fn random_elem(&self, rng: &mut dyn RngCore) -> Result<RingElement> {
        let mut draw = |n: u64| rng.next_u64() % n;
        Ok(random_in(self, &mut draw))
    }
}

fn random_in(spec: &RingSpec, draw: &mut dyn FnMut(u64) -> u64) -> RingElement {
    match spec {
        RingSpec::ZMod { n } => RingElement::Int(draw(*n)),
        RingSpec::Gf { p: base, k: len, .. } | RingSpec::Trunc { n: base, m: len } => {
            RingElement::Poly((0..*len).map(|_| draw(*base)).collect())
        }
        RingSpec::ProdSwap(r) | RingSpec::ProdProj(r) => {
            let a = random_in(r, draw);
            let b = random_in(r, draw);
            RingElement::pair(a, b)
        }
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id())
    }
}

impl FromStr for RingSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = |why: &str| Error::parse(format!("bad ring spec '{s}': {why}"));
        let num = |t: &str| t.parse::<u64>().map_err(|_| bad(&format!("'{t}' is not a number")));
        let (head, rest) = s.split_once(':').ok_or_else(|| bad("missing ':'"))?;
        let fields: Vec<&str> = rest.split(':').collect();
        let built = match head {
            "zmod" => match fields.as_slice() {
                [n] => RingSpec::zmod(num(n)?),
                _ => return Err(bad("expected zmod:<n>")),
            },
            "gf" => match fields.as_slice() {
                [p, k, "frobenius"] => RingSpec::gf(num(p)?, num(k)? as usize),
                _ => return Err(bad("expected gf:<p>:<k>:frobenius")),
            },
            "trunc" => match fields.as_slice() {
                [n, m, "tsq"] => RingSpec::trunc(num(n)?, num(m)? as usize),
                _ => return Err(bad("expected trunc:<n>:<m>:tsq")),
            },
            "prodswap" => RingSpec::prod_swap(rest.parse()?),
            "prodproj" => RingSpec::prod_proj(rest.parse()?),
            other => return Err(bad(&format!("unknown ring kind '{other}'"))),
        };
        built.map_err(|e| match e {
            Error::InvalidInput(msg) => Error::parse(msg),
            e => e,
        })
    }
}

fn top_level_comma(s: &str) -> Option<usize> {
    let mut depth = 0i32;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => return Some(i),
            _ => {}
        }
    }
    None
}

fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| !p.is_multiple_of(d))
}

fn checked_power(base: u64, exp: usize) -> Option<u64> {
    base.checked_pow(u32::try_from(exp).ok()?)
}

fn mod_inverse(x: u64, n: u64) -> Option<u64> {
    let (mut r0, mut r1) = (n as i128, x as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    (r0 == 1).then(|| t0.rem_euclid(n as i128) as u64)
}

/// Reduce `v` (low-first) modulo the monic polynomial `modulus`, in place.
fn reduce_mod(v: &mut [u64], modulus: &[u64], p: u64) {
    let k = modulus.len() - 1;
    for d in (k..v.len()).rev() {
        let c = v[d];
        if c == 0 {
            continue;
        }
        for (t, &m) in modulus.iter().enumerate() {
            let slot = &mut v[d - k + t];
            *slot = (*slot + (p - c) * m) % p;
        }
    }
}

/// Remainder of `a` modulo monic `b` over `F_p`; zero iff `b` divides `a`.
fn divides(b: &[u64], a: &[u64], p: u64) -> bool {
    let mut r = a.to_vec();
    reduce_mod(&mut r, b, p);
    r.iter().take(b.len() - 1).all(|&c| c == 0)
}

fn monic_polys(p: u64, deg: usize) -> impl Iterator<Item = Vec<u64>> {
    (0..p.pow(deg as u32)).map(move |mut code| {
        let mut v = vec![0u64; deg + 1];
        for slot in v.iter_mut().take(deg) {
            *slot = code % p;
            code /= p;
        }
        v[deg] = 1;
        v
    })
}

fn smallest_irreducible(p: u64, k: usize) -> Vec<u64> {
    if k == 1 {
        return vec![0, 1];
    }
    monic_polys(p, k)
        .find(|f| (1..=k / 2).all(|d| monic_polys(p, d).all(|g| !divides(&g, f, p))))
        .expect("an irreducible polynomial exists in every degree")
}
