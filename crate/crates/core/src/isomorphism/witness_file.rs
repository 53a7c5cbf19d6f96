//! Text format for ring-isomorphism witnesses over catalog rings.
//!
//! ```text
//! # header: posets by path (relative to the witness file) or inline
//! source-poset chain2.poset
//! source-ring gf:2:2:frobenius
//! target-poset-inline elements 2; 1 < 2
//! target-ring gf:2:2:frobenius
//! # body: images of the e[i,j] and of scalar generators r*delta
//! e[1] -> 1*e[1]
//! e[1,2] -> 1*e[1,2]
//! e[2] -> 1*e[2]
//! r(w) -> (w+1)*delta
//! # optional: the inverse map, same shape, prefixed with `inv`
//! inv e[1,2] -> 1*e[1,2]
//! ```
//!
//! Labels in the body are those of the posets after parsing. When every
//! `r(..)` line is omitted and both rings are the same, scalars map by the
//! identity. When every `inv` line is omitted the inverse is derived by
//! enumerating the source algebra.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

use super::{BasisMap, RingIsoWitness};
use crate::algebra::{AlgebraContext, SkewElement};
use crate::error::{Error, Result};
use crate::poset::Poset;
use crate::ring::{CoeffRing, RingElement, RingSpec};

type Ctx = Arc<AlgebraContext<RingSpec>>;

#[derive(Default)]
struct Header {
    source_poset: Option<Poset>,
    source_ring: Option<RingSpec>,
    target_poset: Option<Poset>,
    target_ring: Option<RingSpec>,
    target_relabel: Option<Vec<usize>>,
}

struct BodyLine<'a> {
    line: usize,
    inverse: bool,
    lhs: &'a str,
    rhs: &'a str,
}

fn set_once<T>(slot: &mut Option<T>, value: T, key: &str, line: usize) -> Result<()> {
    if slot.is_some() {
        return Err(Error::parse_at(line, format!("duplicate '{key}'")));
    }
    *slot = Some(value);
    Ok(())
}

fn load_poset(path: &str, base_dir: Option<&Path>, line: usize) -> Result<Poset> {
    let full = match base_dir {
        Some(dir) => dir.join(path),
        None => Path::new(path).to_path_buf(),
    };
    let text = std::fs::read_to_string(&full)
        .map_err(|e| Error::parse_at(line, format!("cannot read poset file {}: {e}", full.display())))?;
    Poset::parse_text(&text).map_err(|e| match e {
        Error::Parse { line: inner, msg } => Error::parse_at(
            line,
            format!("in {}{}: {msg}", full.display(), inner.map(|l| format!(" line {l}")).unwrap_or_default()),
        ),
        other => other,
    })
}

fn inline_poset(text: &str, line: usize) -> Result<Poset> {
    Poset::parse_text(&text.replace(';', "\n")).map_err(|e| match e {
        Error::Parse { msg, .. } => Error::parse_at(line, msg),
        other => other,
    })
}

/// Parses a witness over catalog rings. `base_dir` resolves relative poset
/// paths; `bound` limits the enumeration used to derive a missing inverse.
pub fn parse_witness(
    text: &str,
    base_dir: Option<&Path>,
    bound: usize,
) -> Result<RingIsoWitness<RingSpec, RingSpec>> {
    let mut header = Header::default();
    let mut body = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some((lhs, rhs)) = content.split_once("->") {
            let lhs = lhs.trim();
            let (inverse, lhs) = match lhs.strip_prefix("inv ") {
                Some(rest) => (true, rest.trim()),
                None => (false, lhs),
            };
            body.push(BodyLine { line, inverse, lhs, rhs: rhs.trim() });
            continue;
        }
        let (key, value) = content
            .split_once(char::is_whitespace)
            .map(|(k, v)| (k, v.trim()))
            .ok_or_else(|| Error::parse_at(line, format!("expected '<key> <value>', got '{content}'")))?;
        let ring = |v: &str| v.parse::<RingSpec>().map_err(|e| e.at_line(line));
        match key {
            "source-poset" => set_once(&mut header.source_poset, load_poset(value, base_dir, line)?, key, line)?,
            "source-poset-inline" => set_once(&mut header.source_poset, inline_poset(value, line)?, key, line)?,
            "target-poset" => set_once(&mut header.target_poset, load_poset(value, base_dir, line)?, key, line)?,
            "target-poset-inline" => set_once(&mut header.target_poset, inline_poset(value, line)?, key, line)?,
            "source-ring" => set_once(&mut header.source_ring, ring(value)?, key, line)?,
            "target-ring" => set_once(&mut header.target_ring, ring(value)?, key, line)?,
            "target-relabel" => {
                let labels = value
                    .split_whitespace()
                    .map(|t| match t.parse::<usize>() {
                        Ok(v) if v >= 1 => Ok(v - 1),
                        _ => Err(Error::parse_at(line, format!("bad label '{t}' in target-relabel"))),
                    })
                    .collect::<Result<Vec<_>>>()?;
                set_once(&mut header.target_relabel, labels, key, line)?
            }
            _ => return Err(Error::parse_at(line, format!("unknown header key '{key}'"))),
        }
    }
    let missing = |what: &str| Error::parse(format!("witness is missing '{what}'"));
    let source = AlgebraContext::new(
        header.source_poset.ok_or_else(|| missing("source-poset"))?,
        header.source_ring.ok_or_else(|| missing("source-ring"))?,
    );
    let target = AlgebraContext::new(
        header.target_poset.ok_or_else(|| missing("target-poset"))?,
        header.target_ring.ok_or_else(|| missing("target-ring"))?,
    );
    if let Some(relabel) = &header.target_relabel {
        let n = target.poset().len();
        let mut seen = vec![false; n];
        for &y in relabel {
            if y >= n || std::mem::replace(&mut seen[y], true) {
                return Err(Error::parse("target-relabel is not a permutation"));
            }
        }
        if relabel.len() != n {
            return Err(Error::parse("target-relabel is not a permutation"));
        }
    }

    let (fwd_lines, inv_lines): (Vec<_>, Vec<_>) = body.into_iter().partition(|b| !b.inverse);
    let forward = build_map(&source, &target, &fwd_lines)?;
    let witness = if inv_lines.is_empty() {
        RingIsoWitness::with_derived_inverse(forward, bound)?
    } else {
        let inverse = build_map(&target, &source, &inv_lines)?;
        RingIsoWitness::new(forward, inverse)?
    };
    Ok(match header.target_relabel {
        Some(r) => witness.with_target_relabel(r),
        None => witness,
    })
}

fn build_map(from: &Ctx, to: &Ctx, lines: &[BodyLine<'_>]) -> Result<BasisMap<RingSpec, RingSpec>> {
    let mut units = BTreeMap::new();
    let mut scalars: Vec<(RingElement, SkewElement<RingSpec>)> = Vec::new();
    for b in lines {
        let image = to.parse_element(b.rhs).map_err(|e| e.at_line(b.line))?;
        if let Some(lit) = b.lhs.strip_prefix("r(").and_then(|l| l.strip_suffix(')')) {
            let r = from.ring().parse_elem(lit).map_err(|e| e.at_line(b.line))?;
            scalars.push((r, image));
            continue;
        }
        let key = from.parse_element(b.lhs).map_err(|e| e.at_line(b.line))?;
        let entries: Vec<_> = key.coeffs().collect();
        let (&(i, j), c) = match entries.as_slice() {
            [(ij, c)] => (*ij, *c),
            _ => return Err(Error::parse_at(b.line, format!("left side '{}' is not a basis element", b.lhs))),
        };
        if *c != from.ring().one() {
            return Err(Error::parse_at(b.line, format!("left side '{}' is not a basis element", b.lhs)));
        }
        if units.insert((i, j), image).is_some() {
            return Err(Error::parse_at(b.line, format!("duplicate image of e[{},{}]", i + 1, j + 1)));
        }
    }
    if scalars.is_empty() {
        if from.ring() != to.ring() {
            return Err(Error::parse("scalar images are required when the rings differ"));
        }
        scalars = from
            .ring()
            .elements()?
            .into_iter()
            .map(|r| (r.clone(), to.scalar_embed(r)))
            .collect();
    }
    BasisMap::new(Arc::clone(from), Arc::clone(to), units, scalars)
}

/// Renders a witness in the text format, with inline posets and every
/// forward and inverse line, so that parsing the result needs no files.
pub fn render_witness(w: &RingIsoWitness<RingSpec, RingSpec>) -> Result<String> {
    let inline = |p: &Poset| p.to_text().trim_end().replace('\n', "; ");
    let mut out = String::new();
    let _ = writeln!(out, "source-poset-inline {}", inline(w.source().poset()));
    let _ = writeln!(out, "source-ring {}", w.source().ring().id());
    let _ = writeln!(out, "target-poset-inline {}", inline(w.target().poset()));
    let _ = writeln!(out, "target-ring {}", w.target().ring().id());
    if let Some(relabel) = w.target_relabel() {
        let labels: Vec<String> = relabel.iter().map(|y| (y + 1).to_string()).collect();
        let _ = writeln!(out, "target-relabel {}", labels.join(" "));
    }
    render_map(&mut out, "", w.forward())?;
    render_map(&mut out, "inv ", w.inverse())?;
    Ok(out)
}

fn render_map(out: &mut String, prefix: &str, map: &BasisMap<RingSpec, RingSpec>) -> Result<()> {
    for &(i, j) in map.source().pairs() {
        let _ = writeln!(out, "{prefix}e[{},{}] -> {}", i + 1, j + 1, map.unit_image(i, j).render());
    }
    let ring = map.source().ring();
    for r in ring.elements()? {
        let _ = writeln!(out, "{prefix}r({}) -> {}", ring.format_elem(&r), map.scalar_image(&r).render());
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::isomorphism::{build_psi, recover_poset_map, RingIso};

    const IDENTITY: &str = "\
source-poset-inline elements 2; 1 < 2
source-ring zmod:2
target-poset-inline elements 2; 1 < 2
target-ring zmod:2
e[1] -> 1*e[1]
e[2] -> 1*e[2]
e[1,2] -> 1*e[1,2]
";

    #[test]
    fn identity_file() {
        let w = parse_witness(IDENTITY, None, 1 << 16).unwrap();
        w.verify().unwrap();
        assert_eq!(recover_poset_map(&w).unwrap().alpha, vec![0, 1]);
    }

    #[test]
    fn unital_violation_detected() {
        let text = format!("{IDENTITY}r(1) -> 1*e[1]\ninv e[1] -> 1*e[1]\ninv e[2] -> 1*e[2]\ninv e[1,2] -> 1*e[1,2]\n");
        let w = parse_witness(&text, None, 1 << 16).unwrap();
        assert!(matches!(w.verify(), Err(Error::WitnessRejected(_))));
    }

    #[test]
    fn errors_carry_lines() {
        let text = IDENTITY.replace("e[1,2] -> 1*e[1,2]", "e[1,2] -> 1*e[2,1]");
        let err = parse_witness(&text, None, 1 << 16).unwrap_err();
        assert!(matches!(err, Error::Parse { line: Some(7), .. }), "{err:?}");
        let err = parse_witness("source-ring zmod:1\n", None, 16).unwrap_err();
        assert!(matches!(err, Error::Parse { line: Some(1), .. }), "{err:?}");
    }

    #[test]
    fn render_round_trip() {
        let r: RingSpec = "gf:2:2:frobenius".parse().unwrap();
        let c = AlgebraContext::new(Poset::chain(2), r.clone());
        let phi = RingIso::from_fn(&r, &r, |x| r.sigma(x)).unwrap();
        let w = build_psi(&c, c.poset(), r.clone(), &[0, 1], &phi).unwrap();
        let text = render_witness(&w).unwrap();
        let back = parse_witness(&text, None, 16).unwrap();
        back.verify().unwrap();
        assert_eq!(render_witness(&back).unwrap(), text);
    }
}
