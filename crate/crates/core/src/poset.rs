//! Finite posets labeled by a linear extension.
//!
//! Indices in the library API are 0-based; textual formats and error
//! messages use 1-based labels `x1..xn`.

use std::cmp::Reverse;
use std::collections::{BTreeMap, BinaryHeap};
use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Largest `n` accepted by [`enumerate_posets`].
pub const MAX_ENUMERATED_POSET: usize = 5;

/// A finite poset whose labeling `0..n` is a linear extension:
/// `leq(i, j)` implies `i <= j`.
#[derive(Debug, Clone, Eq)]
pub struct Poset {
    n: usize,
    leq: Vec<bool>,
    /// `origin[i]` is the input label of element `i` before relabeling.
    origin: Vec<usize>,
}

impl PartialEq for Poset {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.leq == other.leq
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    pub lo: usize,
    pub hi: usize,
    /// `{k : lo <= k <= hi}` in the order, ascending by label.
    pub members: Vec<usize>,
}

impl Poset {
    /// The reflexive-transitive closure of `covers` (pairs `(i, j)` meaning
    /// `x_i < x_j`). If the input labels are not a linear extension the
    /// elements are relabeled by a stable topological sort, ties broken by
    /// input label; see [`Poset::origin`].
    pub fn from_covers(n: usize, covers: &[(usize, usize)]) -> Result<Self> {
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for &(i, j) in covers {
            if i >= n || j >= n {
                return Err(Error::InvalidInput(format!(
                    "cover {} < {} out of range for {n} elements",
                    i + 1,
                    j + 1
                )));
            }
            if i == j {
                return Err(Error::InvalidInput(format!("cover {} < {} is not strict", i + 1, i + 1)));
            }
            leq[i * n + j] = true;
        }
        transitive_closure(n, &mut leq);
        Self::from_closed_relation(n, leq)
    }

    /// Builds a poset from a full `n × n` row-major relation, which must be
    /// reflexive, antisymmetric and transitive. Relabels like
    /// [`Poset::from_covers`].
    pub fn from_relation(n: usize, leq: Vec<bool>) -> Result<Self> {
        if leq.len() != n * n {
            return Err(Error::InvalidInput(format!("relation must have {} entries", n * n)));
        }
        for i in 0..n {
            if !leq[i * n + i] {
                return Err(Error::InvalidInput(format!("relation is not reflexive at x{}", i + 1)));
            }
            for j in 0..n {
                for k in 0..n {
                    if leq[i * n + j] && leq[j * n + k] && !leq[i * n + k] {
                        return Err(Error::InvalidInput(format!(
                            "relation is not transitive at x{}, x{}, x{}",
                            i + 1,
                            j + 1,
                            k + 1
                        )));
                    }
                }
            }
        }
        Self::from_closed_relation(n, leq)
    }

    fn from_closed_relation(n: usize, leq: Vec<bool>) -> Result<Self> {
        for i in 0..n {
            for j in i + 1..n {
                if leq[i * n + j] && leq[j * n + i] {
                    return Err(Error::NotAPoset(i + 1, j + 1));
                }
            }
        }
        let raw = Poset { n, leq, origin: (0..n).collect() };
        if raw.labels_are_linear_extension() {
            return Ok(raw);
        }
        let order = raw.stable_topological_order();
        raw.relabeled(&order)
    }

    /// Kahn's algorithm, always taking the smallest available label.
    fn stable_topological_order(&self) -> Vec<usize> {
        let n = self.n;
        let mut indegree: Vec<usize> = (0..n)
            .map(|j| (0..n).filter(|&i| self.lt(i, j)).count())
            .collect();
        let mut ready: BinaryHeap<Reverse<usize>> =
            (0..n).filter(|&j| indegree[j] == 0).map(Reverse).collect();
        let mut order = Vec::with_capacity(n);
        while let Some(Reverse(i)) = ready.pop() {
            order.push(i);
            for (j, deg) in indegree.iter_mut().enumerate() {
                if self.lt(i, j) {
                    *deg -= 1;
                    if *deg == 0 {
                        ready.push(Reverse(j));
                    }
                }
            }
        }
        order
    }

    /// The same poset with element `i` of the result being element
    /// `order[i]` of `self`. The new labeling must be a linear extension.
    pub fn relabeled(&self, order: &[usize]) -> Result<Self> {
        let n = self.n;
        if !is_permutation(order, n) {
            return Err(Error::InvalidInput("relabeling is not a permutation".into()));
        }
        let mut leq = vec![false; n * n];
        for a in 0..n {
            for b in 0..n {
                leq[a * n + b] = self.leq(order[a], order[b]);
            }
        }
        let p = Poset {
            n,
            leq,
            origin: order.iter().map(|&o| self.origin[o]).collect(),
        };
        if !p.labels_are_linear_extension() {
            return Err(Error::InvalidInput("relabeling is not a linear extension".into()));
        }
        Ok(p)
    }

    pub fn chain(n: usize) -> Self {
        let covers: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::from_covers(n, &covers).expect("a chain is a poset")
    }

    pub fn antichain(n: usize) -> Self {
        Self::from_covers(n, &[]).expect("an antichain is a poset")
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i * self.n + j]
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.leq(i, j)
    }

    pub fn comparable(&self, i: usize, j: usize) -> bool {
        self.leq(i, j) || self.leq(j, i)
    }

    /// Input label (0-based) of element `i` before any relabeling.
    pub fn origin(&self, i: usize) -> usize {
        self.origin[i]
    }

    pub fn origins(&self) -> &[usize] {
        &self.origin
    }

    pub fn was_relabeled(&self) -> bool {
        self.origin.iter().enumerate().any(|(i, &o)| i != o)
    }

    /// Drops relabeling history, treating the current labels as the input labels.
    pub fn forget_origin(mut self) -> Self {
        self.origin = (0..self.n).collect();
        self
    }

    pub fn labels_are_linear_extension(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| !self.leq(i, j)))
    }

    /// Reflexivity, antisymmetry, transitivity and the linear-extension
    /// property, checked directly on the matrix.
    pub fn check_invariants(&self) -> Result<()> {
        let n = self.n;
        for i in 0..n {
            if !self.leq(i, i) {
                return Err(Error::InvariantViolation(format!("not reflexive at x{}", i + 1)));
            }
            for j in 0..n {
                if i != j && self.leq(i, j) && self.leq(j, i) {
                    return Err(Error::InvariantViolation(format!("not antisymmetric at x{}, x{}", i + 1, j + 1)));
                }
                if self.leq(i, j) && i > j {
                    return Err(Error::InvariantViolation(format!(
                        "labeling is not a linear extension at x{}, x{}",
                        i + 1,
                        j + 1
                    )));
                }
                for k in 0..n {
                    if self.leq(i, j) && self.leq(j, k) && !self.leq(i, k) {
                        return Err(Error::InvariantViolation(format!(
                            "not transitive at x{}, x{}, x{}",
                            i + 1,
                            j + 1,
                            k + 1
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// All comparable pairs `(i, j)` with `leq(i, j)`, lexicographic.
    pub fn comparable_pairs(&self) -> Vec<(usize, usize)> {
        let n = self.n;
        (0..n)
            .flat_map(|i| (i..n).map(move |j| (i, j)))
            .filter(|&(i, j)| self.leq(i, j))
            .collect()
    }

    /// Cover pairs `i < j` with nothing strictly between, lexicographic.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.n;
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if self.lt(i, j) && !(i + 1..j).any(|k| self.lt(i, k) && self.lt(k, j)) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn interval(&self, i: usize, j: usize) -> Interval {
        let members = if self.leq(i, j) {
            (i..=j).filter(|&k| self.leq(i, k) && self.leq(k, j)).collect()
        } else {
            Vec::new()
        };
        Interval { lo: i, hi: j, members }
    }

    /// Maximum cardinality of a chain inside `[x_i, x_j]`: 0 when
    /// `x_i ≰ x_j`, 1 when `i == j`.
    pub fn interval_length(&self, i: usize, j: usize) -> usize {
        let members = self.interval(i, j).members;
        if members.is_empty() {
            return 0;
        }
        // members are in label order, which is topological
        let mut longest: BTreeMap<usize, usize> = BTreeMap::new();
        for &m in &members {
            let best = longest
                .iter()
                .filter(|(&p, _)| self.lt(p, m))
                .map(|(_, &l)| l)
                .max()
                .unwrap_or(0);
            longest.insert(m, best + 1);
        }
        longest[&j]
    }

    /// Components of the comparability graph, each sorted, ordered by
    /// smallest member.
    pub fn connected_components(&self) -> Vec<Vec<usize>> {
        let n = self.n;
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for i in 0..n {
            for j in i + 1..n {
                if self.leq(i, j) {
                    let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for i in 0..n {
            let root = find(&mut parent, i);
            groups.entry(root).or_default().push(i);
        }
        groups.into_values().collect()
    }

    fn up_degree(&self, i: usize) -> usize {
        (0..self.n).filter(|&j| self.lt(i, j)).count()
    }

    fn down_degree(&self, i: usize) -> usize {
        (0..self.n).filter(|&j| self.lt(j, i)).count()
    }

    /// Parses the text format:
    ///
    /// ```text
    /// # comment
    /// elements 3
    /// 1 < 2
    /// 2 < 3
    /// ```
    pub fn parse_text(text: &str) -> Result<Self> {
        let mut n: Option<usize> = None;
        let mut covers: Vec<(usize, usize)> = Vec::new();
        let mut reach: Vec<bool> = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let lineno = lineno + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            match n {
                None => {
                    let count = line
                        .strip_prefix("elements")
                        .map(str::trim)
                        .and_then(|c| c.parse::<usize>().ok())
                        .ok_or_else(|| Error::parse_at(lineno, format!("expected 'elements <n>', got '{line}'")))?;
                    n = Some(count);
                    reach = vec![false; count * count];
                    for i in 0..count {
                        reach[i * count + i] = true;
                    }
                }
                Some(count) => {
                    let (a, b) = line
                        .split_once('<')
                        .ok_or_else(|| Error::parse_at(lineno, format!("expected 'i < j', got '{line}'")))?;
                    let label = |s: &str| -> Result<usize> {
                        let v: usize = s
                            .trim()
                            .parse()
                            .map_err(|_| Error::parse_at(lineno, format!("bad element label '{}'", s.trim())))?;
                        if v == 0 || v > count {
                            return Err(Error::parse_at(lineno, format!("element label {v} out of range 1..{count}")));
                        }
                        Ok(v - 1)
                    };
                    let (i, j) = (label(a)?, label(b)?);
                    if i == j {
                        return Err(Error::parse_at(lineno, format!("cover {} < {} is not strict", i + 1, j + 1)));
                    }
                    if reach[j * count + i] {
                        return Err(Error::parse_at(
                            lineno,
                            format!("cover {} < {} closes a cycle (not a poset)", i + 1, j + 1),
                        ));
                    }
                    reach[i * count + j] = true;
                    transitive_closure(count, &mut reach);
                    covers.push((i, j));
                }
            }
        }
        let n = n.ok_or_else(|| Error::parse("missing 'elements <n>' line"))?;
        Self::from_covers(n, &covers)
    }

    /// Canonical text form: the element count then every cover relation.
    pub fn to_text(&self) -> String {
        let mut out = format!("elements {}\n", self.n);
        for (i, j) in self.covers() {
            let _ = writeln!(out, "{} < {}", i + 1, j + 1);
        }
        out
    }
}

fn transitive_closure(n: usize, leq: &mut [bool]) {
    for k in 0..n {
        for i in 0..n {
            if leq[i * n + k] {
                for j in 0..n {
                    if leq[k * n + j] {
                        leq[i * n + j] = true;
                    }
                }
            }
        }
    }
}

fn is_permutation(map: &[usize], n: usize) -> bool {
    let mut seen = vec![false; n];
    map.len() == n && map.iter().all(|&m| m < n && !std::mem::replace(&mut seen[m], true))
}

/// Whether `map` (element `i` of `p` ↦ element `map[i]` of `q`) is an
/// order isomorphism.
pub fn is_isomorphism(p: &Poset, q: &Poset, map: &[usize]) -> bool {
    p.n == q.n
        && is_permutation(map, q.n)
        && (0..p.n).all(|i| (0..p.n).all(|j| p.leq(i, j) == q.leq(map[i], map[j])))
}

/// All order isomorphisms `p → q`, as index maps, in lexicographic order.
pub fn poset_isomorphisms(p: &Poset, q: &Poset) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if p.n != q.n {
        return out;
    }
    let p_deg: Vec<_> = (0..p.n).map(|i| (p.up_degree(i), p.down_degree(i))).collect();
    let q_deg: Vec<_> = (0..q.n).map(|i| (q.up_degree(i), q.down_degree(i))).collect();
    let mut map = Vec::with_capacity(p.n);
    let mut used = vec![false; q.n];
    extend_isomorphism(p, q, &p_deg, &q_deg, &mut map, &mut used, &mut out);
    out
}

fn extend_isomorphism(
    p: &Poset,
    q: &Poset,
    p_deg: &[(usize, usize)],
    q_deg: &[(usize, usize)],
    map: &mut Vec<usize>,
    used: &mut [bool],
    out: &mut Vec<Vec<usize>>,
) {
    let a = map.len();
    if a == p.n {
        out.push(map.clone());
        return;
    }
    for b in 0..q.n {
        if used[b] || p_deg[a] != q_deg[b] {
            continue;
        }
        let consistent = map
            .iter()
            .enumerate()
            .all(|(x, &y)| p.leq(x, a) == q.leq(y, b) && p.leq(a, x) == q.leq(b, y));
        if !consistent {
            continue;
        }
        used[b] = true;
        map.push(b);
        extend_isomorphism(p, q, p_deg, q_deg, map, used, out);
        map.pop();
        used[b] = false;
    }
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut perm: Vec<usize> = (0..n).collect();
    loop {
        out.push(perm.clone());
        let Some(i) = (1..n).rev().find(|&i| perm[i - 1] < perm[i]) else { break };
        let j = (i..n).rev().find(|&j| perm[j] > perm[i - 1]).expect("pivot has a successor");
        perm.swap(i - 1, j);
        perm[i..].reverse();
    }
    out
}

/// One representative per isomorphism class of `n`-element posets, each
/// labeled by a linear extension, in a deterministic order.
pub fn enumerate_posets(n: usize) -> Result<Vec<Poset>> {
    if n > MAX_ENUMERATED_POSET {
        return Err(Error::unsupported(format!(
            "poset enumeration is limited to n <= {MAX_ENUMERATED_POSET}, got {n}"
        )));
    }
    let upper: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let perms = permutations(n);
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for mask in 0u32..(1 << upper.len()) {
        let mut leq = vec![false; n * n];
        for i in 0..n {
            leq[i * n + i] = true;
        }
        for (bit, &(i, j)) in upper.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                leq[i * n + j] = true;
            }
        }
        let transitive = (0..n).all(|i| {
            (0..n).all(|j| (0..n).all(|k| !(leq[i * n + j] && leq[j * n + k]) || leq[i * n + k]))
        });
        if !transitive {
            continue;
        }
        let canonical = perms
            .iter()
            .map(|pi| {
                let mut code = 0u64;
                for a in 0..n {
                    for b in 0..n {
                        code = code << 1 | u64::from(leq[pi[a] * n + pi[b]]);
                    }
                }
                code
            })
            .min()
            .unwrap_or(0);
        if seen.insert(canonical) {
            out.push(Poset::from_relation(n, leq)?);
        }
    }
    Ok(out)
}
