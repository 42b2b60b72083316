//! Brauer diagrams: perfect matchings on `n` top and `n` bottom points.
//!
//! Points `0..n` are the top boundary left to right and `n..2n` the bottom
//! boundary left to right. A product `a * b` stacks `a` above `b`, so a
//! generator word reads left to right as top to bottom.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest supported strand count.
pub const MAX_STRANDS: usize = 16;

#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Diagram {
    n: u8,
    partner: [u8; 2 * MAX_STRANDS],
}

/// One of the named generators of the algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Generator {
    Identity,
    /// Cup-cap at sites `i, i+1` (1-based).
    E(usize),
    /// Virtual crossing of strands `i, i+1` (1-based).
    V(usize),
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Generator::Identity => f.write_str("1"),
            Generator::E(i) => write!(f, "e_{i}"),
            Generator::V(i) => write!(f, "v_{i}"),
        }
    }
}

/// Space-separated generator word, `1` when empty.
pub fn word_text(word: &[Generator]) -> String {
    if word.is_empty() {
        return "1".into();
    }
    word.iter().map(|g| g.to_string()).collect::<Vec<_>>().join(" ")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Composition {
    pub diagram: Diagram,
    pub loops: u32,
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 || n > MAX_STRANDS {
        return Err(Error::StrandLimit { n, max: MAX_STRANDS });
    }
    Ok(())
}

/// Validates `k` as a through-strand count for `n` strands.
pub fn check_through(n: usize, k: usize) -> Result<()> {
    if k > n || !(n - k).is_multiple_of(2) {
        return Err(Error::ThroughStrands { n, k });
    }
    Ok(())
}

impl Diagram {
    pub fn from_partner(n: usize, partner: &[usize]) -> Result<Self> {
        check_n(n)?;
        if partner.len() != 2 * n {
            return Err(Error::InvalidDiagram(format!(
                "expected {} partner entries, got {}",
                2 * n,
                partner.len()
            )));
        }
        let mut out = [0u8; 2 * MAX_STRANDS];
        for (x, &p) in partner.iter().enumerate() {
            if p >= 2 * n || p == x || partner[p] != x {
                return Err(Error::InvalidDiagram(format!(
                    "partner is not a fixed-point-free involution at index {x}"
                )));
            }
            out[x] = p as u8;
        }
        Ok(Diagram { n: n as u8, partner: out })
    }

    pub fn identity(n: usize) -> Result<Self> {
        check_n(n)?;
        Ok(Self::identity_unchecked(n))
    }

    fn identity_unchecked(n: usize) -> Self {
        let mut partner = [0u8; 2 * MAX_STRANDS];
        for k in 0..n {
            partner[k] = (n + k) as u8;
            partner[n + k] = k as u8;
        }
        Diagram { n: n as u8, partner }
    }

    pub fn generator(n: usize, g: Generator) -> Result<Self> {
        check_n(n)?;
        let mut d = Self::identity_unchecked(n);
        match g {
            Generator::Identity => {}
            Generator::E(i) | Generator::V(i) if i == 0 || i >= n => {
                return Err(Error::GeneratorIndex { n, i });
            }
            Generator::E(i) => {
                let (a, b) = (i - 1, i);
                d.link(a, b);
                d.link(n + a, n + b);
            }
            Generator::V(i) => {
                let (a, b) = (i - 1, i);
                d.link(a, n + b);
                d.link(b, n + a);
            }
        }
        Ok(d)
    }

    pub fn e(n: usize, i: usize) -> Result<Self> {
        Self::generator(n, Generator::E(i))
    }

    pub fn v(n: usize, i: usize) -> Result<Self> {
        Self::generator(n, Generator::V(i))
    }

    /// Product of a generator word, read top to bottom.
    pub fn word(n: usize, gens: &[Generator]) -> Result<Composition> {
        let mut acc = Composition { diagram: Self::identity(n)?, loops: 0 };
        for &g in gens {
            let c = acc.diagram.compose_unchecked(&Self::generator(n, g)?);
            acc = Composition { diagram: c.diagram, loops: acc.loops + c.loops };
        }
        Ok(acc)
    }

    fn link(&mut self, x: usize, y: usize) {
        self.partner[x] = y as u8;
        self.partner[y] = x as u8;
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn partner(&self, x: usize) -> usize {
        self.partner[x] as usize
    }

    pub fn partners(&self) -> Vec<usize> {
        self.partner[..2 * self.n()].iter().map(|&p| p as usize).collect()
    }

    /// Stack `self` above `other`.
    pub fn compose(&self, other: &Diagram) -> Result<Composition> {
        if self.n != other.n {
            return Err(Error::StrandMismatch { left: self.n(), right: other.n() });
        }
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Diagram) -> Composition {
        let n = self.n as usize;
        let a = &self.partner;
        let b = &other.partner;
        let mut out = [0u8; 2 * MAX_STRANDS];
        let mut done = [false; 2 * MAX_STRANDS];
        let mut mid_seen = [false; MAX_STRANDS];

        // walks from the upper diagram's bottom point at middle position m
        // downward; returns the result endpoint
        let descend = |mut m: usize, mid_seen: &mut [bool; MAX_STRANDS]| -> usize {
            loop {
                mid_seen[m] = true;
                let q = b[m] as usize;
                if q >= n {
                    return q;
                }
                mid_seen[q] = true;
                let p = a[n + q] as usize;
                if p < n {
                    return p;
                }
                m = p - n;
            }
        };

        for t in 0..n {
            if done[t] {
                continue;
            }
            let p = a[t] as usize;
            let end = if p < n { p } else { descend(p - n, &mut mid_seen) };
            out[t] = end as u8;
            out[end] = t as u8;
            done[t] = true;
            done[end] = true;
        }
        for s in n..2 * n {
            if done[s] {
                continue;
            }
            // every path from a bottom point not reached from the top ends
            // at another bottom point
            let q = b[s] as usize;
            let end = if q >= n {
                q
            } else {
                mid_seen[q] = true;
                let p = a[n + q] as usize;
                if p < n {
                    p
                } else {
                    descend(p - n, &mut mid_seen)
                }
            };
            out[s] = end as u8;
            out[end] = s as u8;
            done[s] = true;
            done[end] = true;
        }

        let mut loops = 0;
        for start in 0..n {
            if mid_seen[start] {
                continue;
            }
            loops += 1;
            let mut m = start;
            loop {
                mid_seen[m] = true;
                let q = b[m] as usize;
                mid_seen[q] = true;
                m = a[n + q] as usize - n;
                if m == start {
                    break;
                }
            }
        }
        Composition { diagram: Diagram { n: self.n, partner: out }, loops }
    }

    /// Number of arcs joining a top point to a bottom point.
    pub fn through_strands(&self) -> usize {
        let n = self.n();
        (0..n).filter(|&t| self.partner(t) >= n).count()
    }

    pub fn is_permutation(&self) -> bool {
        self.through_strands() == self.n()
    }

    /// Closed curves formed by joining top `k` to bottom `k` outside the box.
    pub fn closure_loops(&self) -> usize {
        let n = self.n();
        let mut seen = [false; 2 * MAX_STRANDS];
        let mut loops = 0;
        for start in 0..2 * n {
            if seen[start] {
                continue;
            }
            loops += 1;
            let mut x = start;
            loop {
                seen[x] = true;
                let y = self.partner(x);
                seen[y] = true;
                x = if y < n { y + n } else { y - n };
                if x == start {
                    break;
                }
            }
        }
        loops
    }

    /// True iff the matching is crossingless with respect to the boundary
    /// order (top left to right, then bottom right to left).
    pub fn is_planar(&self) -> bool {
        let n = self.n();
        let pos = |x: usize| if x < n { x } else { 3 * n - 1 - x };
        let chords: Vec<(usize, usize)> = (0..2 * n)
            .filter(|&x| x < self.partner(x))
            .map(|x| {
                let (p, q) = (pos(x), pos(self.partner(x)));
                (p.min(q), p.max(q))
            })
            .collect();
        for (i, &(a, b)) in chords.iter().enumerate() {
            for &(c, d) in &chords[i + 1..] {
                if (a < c && c < b && b < d) || (c < a && a < d && d < b) {
                    return false;
                }
            }
        }
        true
    }

    /// Top-boundary arcs as 1-based `(left, right)` sites.
    pub fn cups(&self) -> Vec<(usize, usize)> {
        let n = self.n();
        (0..n)
            .filter(|&t| self.partner(t) < n && t < self.partner(t))
            .map(|t| (t + 1, self.partner(t) + 1))
            .collect()
    }

    /// Bottom-boundary arcs as 1-based `(left, right)` sites.
    pub fn caps(&self) -> Vec<(usize, usize)> {
        let n = self.n();
        (n..2 * n)
            .filter(|&s| self.partner(s) >= n && s < self.partner(s))
            .map(|s| (s - n + 1, self.partner(s) - n + 1))
            .collect()
    }

    /// Whether strand `k` (1-based) runs straight from top `k` to bottom `k`.
    pub fn is_vertical(&self, k: usize) -> bool {
        self.partner(k - 1) == self.n() + k - 1
    }

    /// Adds vertical strands on the right up to `m` strands.
    pub fn embed(&self, m: usize) -> Result<Diagram> {
        let n = self.n();
        if m < n {
            return Err(Error::StrandMismatch { left: n, right: m });
        }
        check_n(m)?;
        let lift = |x: usize| if x < n { x } else { x - n + m };
        let mut out = Self::identity_unchecked(m);
        for x in 0..2 * n {
            out.partner[lift(x)] = lift(self.partner(x)) as u8;
        }
        Ok(out)
    }

    /// Upside-down reflection.
    pub fn flip(&self) -> Diagram {
        let n = self.n();
        let swap = |x: usize| if x < n { x + n } else { x - n };
        let mut out = *self;
        for x in 0..2 * n {
            out.partner[swap(x)] = swap(self.partner(x)) as u8;
        }
        out
    }

    /// `e_{k+1} e_{k+3} ... e_{n-1}`: `k` vertical strands followed by
    /// stacked cup/cap pairs.
    pub fn canonical_k_element(n: usize, k: usize) -> Result<Diagram> {
        check_n(n)?;
        check_through(n, k)?;
        let mut d = Self::identity_unchecked(n);
        for s in (k..n).step_by(2) {
            d.link(s, s + 1);
            d.link(n + s, n + s + 1);
        }
        Ok(d)
    }

    /// All diagrams on `n` strands in lexicographic order of the partner
    /// array, optionally restricted to `k` through strands.
    pub fn enumerate(n: usize, k: Option<usize>) -> Result<Vec<Diagram>> {
        let mut out = Vec::new();
        Self::for_each(n, k, |d| out.push(*d))?;
        Ok(out)
    }

    /// Streaming form of [`Diagram::enumerate`].
    pub fn for_each(n: usize, k: Option<usize>, mut f: impl FnMut(&Diagram)) -> Result<()> {
        check_n(n)?;
        if let Some(k) = k {
            check_through(n, k)?;
        }
        let mut cur = Diagram { n: n as u8, partner: [0; 2 * MAX_STRANDS] };
        let mut used = [false; 2 * MAX_STRANDS];
        enumerate_rec(&mut cur, &mut used, 2 * n, &mut |d| {
            if k.is_none_or(|k| d.through_strands() == k) {
                f(d);
            }
        });
        Ok(())
    }

    /// Bracket-list text form such as `(T1 T2)(B1 B2)`.
    pub fn to_text(&self) -> String {
        let n = self.n();
        let label = |x: usize| if x < n { format!("T{}", x + 1) } else { format!("B{}", x - n + 1) };
        (0..2 * n)
            .filter(|&x| x < self.partner(x))
            .map(|x| format!("({} {})", label(x), label(self.partner(x))))
            .collect()
    }
}

fn enumerate_rec(
    cur: &mut Diagram,
    used: &mut [bool; 2 * MAX_STRANDS],
    len: usize,
    emit: &mut dyn FnMut(&Diagram),
) {
    let Some(x) = (0..len).find(|&x| !used[x]) else {
        emit(cur);
        return;
    };
    used[x] = true;
    for y in x + 1..len {
        if used[y] {
            continue;
        }
        used[y] = true;
        cur.link(x, y);
        enumerate_rec(cur, used, len, emit);
        used[y] = false;
    }
    used[x] = false;
}

/// `(2n-1)!!`, the number of diagrams on `n` strands.
pub fn double_factorial_odd(n: usize) -> u128 {
    (1..=n as u128).map(|k| 2 * k - 1).product()
}

/// Size of the class of `n - 2l` through-strand diagrams:
/// `C(n, 2l)^2 ((2l-1)!!)^2 (n-2l)!`.
pub fn class_size(n: usize, l: usize) -> u128 {
    let binom = |n: u128, k: u128| (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1));
    let c = binom(n as u128, 2 * l as u128);
    let df = double_factorial_odd(l);
    let fact: u128 = (1..=(n - 2 * l) as u128).product();
    c * c * df * df * fact
}

pub fn catalan(n: usize) -> u128 {
    let mut c = 1u128;
    for k in 0..n as u128 {
        c = c * 2 * (2 * k + 1) / (k + 2);
    }
    c
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl fmt::Debug for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Diagram{{n={}, {}}}", self.n, self.to_text())
    }
}

impl FromStr for Diagram {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |why: &str| Error::InvalidDiagram(format!("{why} in {s:?}"));
        let mut pairs = Vec::new();
        for chunk in s.split(')') {
            let chunk = chunk.trim();
            if chunk.is_empty() {
                continue;
            }
            let inner = chunk.strip_prefix('(').ok_or_else(|| bad("expected '('"))?;
            let ends: Vec<&str> = inner.split_whitespace().collect();
            if ends.len() != 2 {
                return Err(bad("each pair needs two endpoints"));
            }
            let parse = |t: &str| -> Result<(bool, usize)> {
                let (top, rest) = match t.as_bytes().first() {
                    Some(b'T') => (true, &t[1..]),
                    Some(b'B') => (false, &t[1..]),
                    _ => return Err(bad("endpoint must start with T or B")),
                };
                let k: usize = rest.parse().map_err(|_| bad("bad endpoint index"))?;
                if k == 0 {
                    return Err(bad("endpoints are 1-based"));
                }
                Ok((top, k - 1))
            };
            pairs.push((parse(ends[0])?, parse(ends[1])?));
        }
        let n = pairs.len();
        check_n(n)?;
        let idx = |(top, k): (bool, usize)| -> Result<usize> {
            if k >= n {
                return Err(bad("endpoint index exceeds strand count"));
            }
            Ok(if top { k } else { n + k })
        };
        let mut partner = vec![usize::MAX; 2 * n];
        for (x, y) in pairs {
            let (x, y) = (idx(x)?, idx(y)?);
            if partner[x] != usize::MAX || partner[y] != usize::MAX || x == y {
                return Err(bad("endpoint used twice"));
            }
            partner[x] = y;
            partner[y] = x;
        }
        Diagram::from_partner(n, &partner)
    }
}

#[derive(Serialize, Deserialize)]
struct DiagramRepr {
    n: usize,
    partner: Vec<usize>,
}

impl Serialize for Diagram {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DiagramRepr { n: self.n(), partner: self.partners() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Diagram {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = DiagramRepr::deserialize(d)?;
        Diagram::from_partner(repr.n, &repr.partner).map_err(serde::de::Error::custom)
    }
}
