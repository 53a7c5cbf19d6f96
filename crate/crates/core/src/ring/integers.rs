use super::{CoeffRing, Commutativity};
use crate::error::{Error, Result};

/// The integers with the identity endomorphism.
///
/// An infinite ring: queries that need exhaustion (primitivity, the radical,
/// enumeration) are refused. Arithmetic panics on `i64` overflow.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct IntegerRing;

impl CoeffRing for IntegerRing {
    type Elem = i64;

    fn id(&self) -> String {
        "integers".into()
    }

    fn zero(&self) -> i64 {
        0
    }

    fn one(&self) -> i64 {
        1
    }

    fn add(&self, a: &i64, b: &i64) -> i64 {
        a.checked_add(*b).expect("integer overflow")
    }

    fn neg(&self, a: &i64) -> i64 {
        a.checked_neg().expect("integer overflow")
    }

    fn mul(&self, a: &i64, b: &i64) -> i64 {
        a.checked_mul(*b).expect("integer overflow")
    }

    fn sigma(&self, a: &i64) -> i64 {
        *a
    }

    fn cardinality(&self) -> Option<usize> {
        None
    }

    fn commutativity(&self) -> Commutativity {
        Commutativity::Commutative
    }

    fn format_elem(&self, a: &i64) -> String {
        a.to_string()
    }

    fn parse_elem(&self, text: &str) -> Result<i64> {
        let t = text.trim();
        let t = t.strip_prefix('(').and_then(|t| t.strip_suffix(')')).unwrap_or(t);
        t.parse().map_err(|_| Error::parse(format!("bad integer literal '{text}'")))
    }

    fn inverse(&self, a: &i64) -> Result<Option<i64>> {
        Ok(matches!(a, 1 | -1).then_some(*a))
    }
}
