//! Brute-force oracles shared by the integration tests. Everything here is
//! computed from the definitions, never from the library's structural
//! shortcuts, so that it can check them.
#![allow(dead_code)]

use std::collections::HashSet;
use std::sync::Arc;

use skew_incidence::error::{Error, Result};
use skew_incidence::ring::{CoeffRing, Commutativity};
use skew_incidence::{AlgebraContext, Poset, RingSpec, SkewElement};

pub fn spec(s: &str) -> RingSpec {
    s.parse().expect("valid ring spec")
}

pub fn ctx(poset: Poset, ring: &str) -> Arc<AlgebraContext<RingSpec>> {
    AlgebraContext::new(poset, spec(ring))
}

/// The twisted product written out densely from the defining formula:
/// `(fg)(x_i,x_j) = Σ_{x_i ≤ x_k ≤ x_j} f(x_i,x_k)·σ^(k-i)(g(x_k,x_j))`.
pub fn dense_product<R: CoeffRing>(f: &SkewElement<R>, g: &SkewElement<R>) -> SkewElement<R> {
    let ctx = f.ctx();
    let (p, ring) = (ctx.poset(), ctx.ring());
    let mut entries = Vec::new();
    for i in 0..p.len() {
        for j in 0..p.len() {
            if !p.leq(i, j) {
                continue;
            }
            let mut acc = ring.zero();
            for k in 0..p.len() {
                if p.leq(i, k) && p.leq(k, j) {
                    let mut twisted = g.coeff(k, j);
                    for _ in 0..(k - i) {
                        twisted = ring.sigma(&twisted);
                    }
                    acc = ring.add(&acc, &ring.mul(&f.coeff(i, k), &twisted));
                }
            }
            entries.push(((i, j), acc));
        }
    }
    ctx.from_coeffs(entries).expect("entries on comparable pairs")
}

/// All two-sided units, by searching for an inverse among `all`.
pub fn unit_set<R: CoeffRing>(all: &[SkewElement<R>]) -> HashSet<SkewElement<R>> {
    let delta = all[0].ctx().delta();
    let mut units = HashSet::new();
    for f in all {
        if units.contains(f) {
            continue;
        }
        if let Some(g) = all.iter().find(|g| dense_product(f, g) == delta && dense_product(g, f) == delta) {
            units.insert(f.clone());
            units.insert(g.clone());
        }
    }
    units
}

/// `f ∈ J`: `δ − g·f·h` is a unit for every `g, h`.
pub fn radical_oracle<R: CoeffRing>(
    f: &SkewElement<R>,
    all: &[SkewElement<R>],
    units: &HashSet<SkewElement<R>>,
) -> bool {
    let delta = f.ctx().delta();
    all.iter().all(|g| {
        let gf = dense_product(g, f);
        all.iter().all(|h| units.contains(&(&delta - &dense_product(&gf, h))))
    })
}

/// Idempotent `f` is primitive iff it is nonzero and every idempotent `g`
/// with `g = f·g = g·f` is `0` or `f`.
pub fn primitive_oracle<R: CoeffRing>(f: &SkewElement<R>, all: &[SkewElement<R>]) -> bool {
    if f.is_zero() {
        return false;
    }
    all.iter().all(|g| {
        let below = dense_product(g, g) == *g && dense_product(f, g) == *g && dense_product(g, f) == *g;
        !below || g.is_zero() || g == f
    })
}

pub fn centralizer<R: CoeffRing>(all: &[SkewElement<R>]) -> Vec<SkewElement<R>> {
    all.iter()
        .filter(|f| all.iter().all(|g| dense_product(f, g) == dense_product(g, f)))
        .cloned()
        .collect()
}

pub fn idempotents<R: CoeffRing>(all: &[SkewElement<R>]) -> Vec<SkewElement<R>> {
    all.iter().filter(|f| dense_product(f, f) == **f).cloned().collect()
}

/// 2×2 matrices over Z/2 with `σ` = conjugation by `[[1,1],[0,1]]`. A
/// noncommutative ring with nontrivial idempotents and an automorphism
/// that is not the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat2Z2;

/// Row-major entries `[a, b, c, d]` of `[[a, b], [c, d]]`, each 0 or 1.
pub type Mat = [u8; 4];

fn matmul(x: &Mat, y: &Mat) -> Mat {
    [
        (x[0] * y[0] + x[1] * y[2]) % 2,
        (x[0] * y[1] + x[1] * y[3]) % 2,
        (x[2] * y[0] + x[3] * y[2]) % 2,
        (x[2] * y[1] + x[3] * y[3]) % 2,
    ]
}

const SHEAR: Mat = [1, 1, 0, 1];

impl CoeffRing for Mat2Z2 {
    type Elem = Mat;

    fn id(&self) -> String {
        "mat2:2".into()
    }

    fn zero(&self) -> Mat {
        [0; 4]
    }

    fn one(&self) -> Mat {
        [1, 0, 0, 1]
    }

    fn add(&self, a: &Mat, b: &Mat) -> Mat {
        [a[0] ^ b[0], a[1] ^ b[1], a[2] ^ b[2], a[3] ^ b[3]]
    }

    fn neg(&self, a: &Mat) -> Mat {
        *a
    }

    fn mul(&self, a: &Mat, b: &Mat) -> Mat {
        matmul(a, b)
    }

    fn sigma(&self, a: &Mat) -> Mat {
        // the shear is its own inverse mod 2
        matmul(&matmul(&SHEAR, a), &SHEAR)
    }

    fn cardinality(&self) -> Option<usize> {
        Some(16)
    }

    fn commutativity(&self) -> Commutativity {
        Commutativity::NonCommutative
    }

    fn elements(&self) -> Result<Vec<Mat>> {
        Ok((0u8..16).map(|m| [m >> 3 & 1, m >> 2 & 1, m >> 1 & 1, m & 1]).collect())
    }

    fn contains(&self, a: &Mat) -> bool {
        a.iter().all(|&x| x < 2)
    }

    fn format_elem(&self, a: &Mat) -> String {
        format!("m{}{}{}{}", a[0], a[1], a[2], a[3])
    }

    fn parse_elem(&self, text: &str) -> Result<Mat> {
        let bits: Vec<u8> = text
            .trim()
            .strip_prefix('m')
            .filter(|b| b.len() == 4)
            .map(|b| b.bytes().map(|c| c.wrapping_sub(b'0')).collect())
            .unwrap_or_default();
        match bits.as_slice() {
            &[a, b, c, d] if bits.iter().all(|&x| x < 2) => Ok([a, b, c, d]),
            _ => Err(Error::Parse { line: None, msg: format!("bad matrix literal '{text}'") }),
        }
    }
}
