//! Segments, multisegments and weight functions.

use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// The segment `[begin, end]` of consecutive integers; never empty.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct Segment {
    pub begin: i32,
    pub end: i32,
}

/// Result of [`Segment::link_ops`].
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct LinkOps {
    pub linked: bool,
    pub union: Option<Segment>,
    /// `Some(None)` marks an empty intersection of two adjacent segments.
    pub intersection: Option<Option<Segment>>,
}

impl Segment {
    pub fn new(begin: i32, end: i32) -> Result<Segment> {
        if begin > end {
            return Err(Error::Precondition(format!("empty segment [{},{}]", begin, end)));
        }
        Ok(Segment { begin, end })
    }

    /// Constructor for callers that already know `begin <= end`.
    pub fn of(begin: i32, end: i32) -> Segment {
        debug_assert!(begin <= end);
        Segment { begin, end }
    }

    /// `[begin, end]`, or `None` when `begin > end`.
    pub fn try_of(begin: i32, end: i32) -> Option<Segment> {
        (begin <= end).then_some(Segment { begin, end })
    }

    #[allow(clippy::len_without_is_empty)]
    pub fn len(&self) -> i32 {
        self.end - self.begin + 1
    }

    pub fn contains(&self, i: i32) -> bool {
        self.begin <= i && i <= self.end
    }

    pub fn contains_seg(&self, o: &Segment) -> bool {
        self.begin <= o.begin && o.end <= self.end
    }

    /// `Δ⁻ = [i, j−1]`; `None` for a singleton.
    pub fn minus(&self) -> Option<Segment> {
        Segment::try_of(self.begin, self.end - 1)
    }

    /// `Δ⁺ = [i, j+1]`.
    pub fn plus(&self) -> Segment {
        Segment::of(self.begin, self.end + 1)
    }

    /// Left truncation `⁻Δ = [i+1, j]`.
    pub fn left_minus(&self) -> Option<Segment> {
        Segment::try_of(self.begin + 1, self.end)
    }

    /// Left extension `⁺Δ = [i−1, j]`.
    pub fn left_plus(&self) -> Segment {
        Segment::of(self.begin - 1, self.end)
    }

    /// `[i, j] ↦ [−j, −i]`.
    pub fn reflect(&self) -> Segment {
        Segment::of(-self.end, -self.begin)
    }

    /// Whether the union is a segment and neither contains the other.
    pub fn linked(&self, o: &Segment) -> bool {
        if self.begin.max(o.begin) > self.end.min(o.end) + 1 {
            return false;
        }
        !(self.contains_seg(o) || o.contains_seg(self))
    }

    pub fn union(&self, o: &Segment) -> Segment {
        Segment::of(self.begin.min(o.begin), self.end.max(o.end))
    }

    pub fn intersection(&self, o: &Segment) -> Option<Segment> {
        Segment::try_of(self.begin.max(o.begin), self.end.min(o.end))
    }

    pub fn link_ops(&self, o: &Segment) -> LinkOps {
        let touching = self.begin.max(o.begin) <= self.end.min(o.end) + 1;
        LinkOps {
            linked: self.linked(o),
            union: touching.then(|| self.union(o)),
            intersection: touching.then(|| self.intersection(o)),
        }
    }

    /// Key of the PBW monomial order: end ascending, then begin ascending.
    pub fn pbw_key(&self) -> (i32, i32) {
        (self.end, self.begin)
    }
}

/// The canonical total order: end ascending, then begin descending.
impl Ord for Segment {
    fn cmp(&self, o: &Self) -> Ordering {
        self.end.cmp(&o.end).then(o.begin.cmp(&self.begin))
    }
}

impl PartialOrd for Segment {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.begin == self.end {
            write!(f, "[{}]", self.begin)
        } else {
            write!(f, "[{},{}]", self.begin, self.end)
        }
    }
}

/// Finitely supported map `Z → N`.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight(pub BTreeMap<i32, u32>);

impl Weight {
    /// `χ_k`.
    pub fn chi(k: i32) -> Weight {
        Weight([(k, 1)].into_iter().collect())
    }

    pub fn get(&self, i: i32) -> u32 {
        self.0.get(&i).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> u32 {
        self.0.values().sum()
    }

    pub fn add_scaled(&self, o: &Weight, c: u32) -> Weight {
        let mut m = self.0.clone();
        for (&i, &x) in &o.0 {
            *m.entry(i).or_insert(0) += c * x;
        }
        Weight(m)
    }

    /// `self − c·o`, or `None` if some value would go negative.
    pub fn sub_scaled(&self, o: &Weight, c: u32) -> Option<Weight> {
        let mut m = self.0.clone();
        for (&i, &x) in &o.0 {
            let cur = m.get(&i).copied().unwrap_or(0);
            let y = cur.checked_sub(c * x)?;
            if y == 0 {
                m.remove(&i);
            } else {
                m.insert(i, y);
            }
        }
        Some(Weight(m))
    }

    /// The symmetric form `(φ, ψ)` with `(α_i, α_i) = 2`, `(α_i, α_{i±1}) = −1`.
    pub fn form(&self, o: &Weight) -> i64 {
        let mut s = 0i64;
        for (&i, &x) in &self.0 {
            let x = x as i64;
            s += 2 * x * o.get(i) as i64;
            s -= x * o.get(i - 1) as i64;
            s -= x * o.get(i + 1) as i64;
        }
        s
    }

    /// Canonical string `1:2,2:1` (point:multiplicity), the cache key.
    pub fn key(&self) -> String {
        self.0.iter().map(|(i, m)| format!("{}:{}", i, m)).collect::<Vec<_>>().join(",")
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.key())
    }
}

/// `(α_i, α_j)` for the type A Cartan matrix.
pub fn cartan(i: i32, j: i32) -> i64 {
    match (i - j).abs() {
        0 => 2,
        1 => -1,
        _ => 0,
    }
}

/// `(wt Δ, wt Δ')`.
pub fn seg_form(x: &Segment, y: &Segment) -> i64 {
    // Count pairs (i, j) with i ∈ x, j ∈ y at distance 0 and 1.
    let overlap = |a: i32, b: i32, c: i32, d: i32| (b.min(d) - a.max(c) + 1).max(0) as i64;
    let same = overlap(x.begin, x.end, y.begin, y.end);
    let up = overlap(x.begin + 1, x.end + 1, y.begin, y.end);
    let down = overlap(x.begin - 1, x.end - 1, y.begin, y.end);
    2 * same - up - down
}

/// Finite multiset of segments stored in the canonical order.
#[derive(Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub struct Multisegment(Vec<Segment>);

impl Multisegment {
    pub fn new(mut segs: Vec<Segment>) -> Multisegment {
        segs.sort();
        Multisegment(segs)
    }

    pub fn empty() -> Multisegment {
        Multisegment(Vec::new())
    }

    pub fn segments(&self) -> &[Segment] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|s| s.len() as u32).sum()
    }

    pub fn weight(&self) -> Weight {
        let mut m = BTreeMap::new();
        for s in &self.0 {
            for i in s.begin..=s.end {
                *m.entry(i).or_insert(0) += 1;
            }
        }
        Weight(m)
    }

    /// Multiset of ends as a weight, `φ_{e(a)}`.
    pub fn end_weight(&self) -> Weight {
        let mut m = BTreeMap::new();
        for s in &self.0 {
            *m.entry(s.end).or_insert(0) += 1;
        }
        Weight(m)
    }

    /// `ℓ_{a,k}`: number of segments ending at `k`.
    pub fn ell_k(&self, k: i32) -> usize {
        self.0.iter().filter(|s| s.end == k).count()
    }

    /// Number of segments beginning at `i`.
    pub fn begin_count(&self, i: i32) -> usize {
        self.0.iter().filter(|s| s.begin == i).count()
    }

    /// `a(k)`: the segments ending at `k`.
    pub fn ending_at(&self, k: i32) -> Vec<Segment> {
        self.0.iter().filter(|s| s.end == k).copied().collect()
    }

    pub fn count(&self, s: &Segment) -> usize {
        self.0.iter().filter(|t| *t == s).count()
    }

    /// Distinct segments with multiplicities, in canonical order.
    pub fn grouped(&self) -> Vec<(Segment, usize)> {
        let mut out: Vec<(Segment, usize)> = Vec::new();
        for &s in &self.0 {
            match out.last_mut() {
                Some((t, m)) if *t == s => *m += 1,
                _ => out.push((s, 1)),
            }
        }
        out
    }

    /// `Σ_s binom(m_s, 2)` over segment multiplicities.
    pub fn binom_sum(&self) -> i32 {
        self.grouped().iter().map(|&(_, m)| (m * (m - 1) / 2) as i32).sum()
    }

    /// `Σ_s len(s)^2`, strictly increasing along every elementary operation.
    pub fn square_len_sum(&self) -> i64 {
        self.0.iter().map(|s| (s.len() as i64).pow(2)).sum()
    }

    /// Segments in PBW order (end ascending, begin ascending).
    pub fn pbw_word(&self) -> Vec<Segment> {
        let mut v = self.0.clone();
        v.sort_by_key(|s| s.pbw_key());
        v
    }

    pub fn add(&self, o: &Multisegment) -> Multisegment {
        let mut v = self.0.clone();
        v.extend_from_slice(&o.0);
        Multisegment::new(v)
    }

    pub fn with(&self, s: Segment) -> Multisegment {
        let mut v = self.0.clone();
        v.push(s);
        Multisegment::new(v)
    }

    /// Removes one copy of each segment in `rm`; `None` if not a sub-multiset.
    pub fn remove_all(&self, rm: &[Segment]) -> Option<Multisegment> {
        let mut v = self.0.clone();
        for s in rm {
            let i = v.iter().position(|t| t == s)?;
            v.remove(i);
        }
        Some(Multisegment(v))
    }

    /// Applies `f` to every segment, dropping those mapped to `None`.
    pub fn map_segments(&self, f: impl Fn(&Segment) -> Option<Segment>) -> Multisegment {
        Multisegment::new(self.0.iter().filter_map(f).collect())
    }

    /// `a^{(k)}`: every segment ending at `k` replaced by `Δ⁻`.
    pub fn truncate(&self, k: i32) -> Multisegment {
        self.map_segments(|s| if s.end == k { s.minus() } else { Some(*s) })
    }

    /// `a^{(k_1, …, k_r)}`, applied left to right.
    pub fn truncate_seq(&self, ks: &[i32]) -> Multisegment {
        ks.iter().fold(self.clone(), |a, &k| a.truncate(k))
    }

    /// `a_Γ` for a sub-multiset `Γ ⊆ a(k)`.
    pub fn gamma_truncate(&self, k: i32, gamma: &[Segment]) -> Result<Multisegment> {
        if let Some(s) = gamma.iter().find(|s| s.end != k) {
            return Err(Error::Precondition(format!("{} does not end at {}", s, k)));
        }
        let rest =
            self.remove_all(gamma).ok_or_else(|| Error::Precondition("Γ is not a sub-multiset of a(k)".into()))?;
        let mut v = rest.0;
        v.extend(gamma.iter().filter_map(|s| s.minus()));
        Ok(Multisegment::new(v))
    }

    /// All `a_Γ` with `Γ ⊆ a(k)`, as `(Γ, a_Γ, multiplicity)` where the
    /// multiplicity counts the labelled subsets giving the same multiset `Γ`.
    pub fn gamma_family(&self, k: i32) -> Vec<(Vec<Segment>, Multisegment, u64)> {
        let groups: Vec<(Segment, usize)> = self.grouped().into_iter().filter(|(s, _)| s.end == k).collect();
        let mut out = Vec::new();
        let mut choice = vec![0usize; groups.len()];
        loop {
            let mut gamma = Vec::new();
            let mut mult = 1u64;
            for (&(s, m), &c) in groups.iter().zip(&choice) {
                gamma.extend(std::iter::repeat_n(s, c));
                mult *= binom(m as u64, c as u64);
            }
            let b = self.gamma_truncate(k, &gamma).expect("Γ ⊆ a(k) by construction");
            out.push((gamma, b, mult));
            let mut i = 0;
            loop {
                if i == groups.len() {
                    return out;
                }
                if choice[i] < groups[i].1 {
                    choice[i] += 1;
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
        }
    }

    /// `[i, j] ↦ [−j, −i]` on every segment.
    pub fn reflect(&self) -> Multisegment {
        self.map_segments(|s| Some(s.reflect()))
    }

    /// `^{(k)}a`: every segment beginning at `k` replaced by `⁻Δ`.
    pub fn left_truncate(&self, k: i32) -> Multisegment {
        self.reflect().truncate(-k).reflect()
    }

    /// All results of one elementary operation on a linked pair.
    pub fn elementary_covers(&self) -> Vec<Multisegment> {
        let g = self.grouped();
        let mut out = Vec::new();
        for i in 0..g.len() {
            for j in i + 1..g.len() {
                let (x, y) = (g[i].0, g[j].0);
                if !x.linked(&y) {
                    continue;
                }
                let mut v = self.remove_all(&[x, y]).unwrap().0;
                v.push(x.union(&y));
                if let Some(c) = x.intersection(&y) {
                    v.push(c);
                }
                out.push(Multisegment::new(v));
            }
        }
        out.sort();
        out.dedup();
        out
    }

    pub fn min_begin(&self) -> Option<i32> {
        self.0.iter().map(|s| s.begin).min()
    }

    pub fn max_begin(&self) -> Option<i32> {
        self.0.iter().map(|s| s.begin).max()
    }

    pub fn min_end(&self) -> Option<i32> {
        self.0.first().map(|s| s.end)
    }

    pub fn max_end(&self) -> Option<i32> {
        self.0.last().map(|s| s.end)
    }

    /// Translation by `t`.
    pub fn shift(&self, t: i32) -> Multisegment {
        Multisegment(self.0.iter().map(|s| Segment::of(s.begin + t, s.end + t)).collect())
    }

    /// Distinct ends in ascending order.
    pub fn distinct_ends(&self) -> Vec<i32> {
        let mut v: Vec<i32> = self.0.iter().map(|s| s.end).collect();
        v.dedup();
        v
    }

    /// Whether all beginnings are pairwise distinct.
    pub fn distinct_begins(&self) -> bool {
        let mut b: Vec<i32> = self.0.iter().map(|s| s.begin).collect();
        b.sort();
        b.windows(2).all(|w| w[0] != w[1])
    }

    /// Whether no two segments are linked.
    pub fn pairwise_unlinked(&self) -> bool {
        self.elementary_covers().is_empty()
    }
}

pub(crate) fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

impl fmt::Display for Multisegment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .grouped()
            .into_iter()
            .map(|(s, m)| if m == 1 { s.to_string() } else { format!("{}{}", m, s) })
            .collect();
        write!(f, "{}", parts.join("+"))
    }
}

impl fmt::Debug for Multisegment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl From<Multisegment> for String {
    fn from(a: Multisegment) -> String {
        a.to_string()
    }
}

impl TryFrom<String> for Multisegment {
    type Error = Error;
    fn try_from(s: String) -> Result<Multisegment> {
        s.parse()
    }
}

impl FromStr for Multisegment {
    type Err = Error;
    fn from_str(s: &str) -> Result<Multisegment> {
        Parser { src: s.as_bytes(), pos: 0 }.msum()
    }
}

/// Parses a multisegment; panics on malformed input. Intended for tests.
pub fn ms(s: &str) -> Multisegment {
    s.parse().unwrap_or_else(|e| panic!("{}: {}", s, e))
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.to_string() })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(&format!("expected '{}'", c as char))
        }
    }

    fn int(&mut self) -> Result<i64> {
        self.skip_ws();
        let start = self.pos;
        if self.src.get(self.pos) == Some(&b'-') {
            self.pos += 1;
        }
        let digits = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == digits {
            self.pos = start;
            return self.err("expected integer");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        match text.parse::<i64>() {
            Ok(v) if v.abs() <= i32::MAX as i64 / 4 => Ok(v),
            _ => {
                self.pos = start;
                self.err("integer out of range")
            }
        }
    }

    fn msum(&mut self) -> Result<Multisegment> {
        if self.peek() == Some(b'0') && self.src[self.pos + 1..].iter().all(|c| c.is_ascii_whitespace()) {
            return Ok(Multisegment::empty());
        }
        let mut segs = Vec::new();
        loop {
            self.term(&mut segs)?;
            match self.peek() {
                None => break,
                Some(b'+') => self.pos += 1,
                Some(_) => return self.err("expected '+' or end of input"),
            }
        }
        Ok(Multisegment::new(segs))
    }

    fn term(&mut self, out: &mut Vec<Segment>) -> Result<()> {
        let mult = match self.peek() {
            Some(c) if c.is_ascii_digit() => {
                let at = self.pos;
                let m = self.int()?;
                if !(1..=10_000).contains(&m) {
                    self.pos = at;
                    return self.err("multiplicity must be between 1 and 10000");
                }
                m as usize
            }
            Some(b'[') => 1,
            None => return self.err("unexpected end of input"),
            Some(_) => return self.err("expected '[' or multiplicity"),
        };
        self.expect(b'[')?;
        let at = self.pos;
        let b = self.int()? as i32;
        let e = if self.peek() == Some(b',') {
            self.pos += 1;
            self.int()? as i32
        } else {
            b
        };
        self.expect(b']')?;
        if b > e {
            self.pos = at;
            return self.err(&format!("empty segment [{},{}]", b, e));
        }
        out.extend(std::iter::repeat_n(Segment::of(b, e), mult));
        Ok(())
    }
}

/// All multisegments with the given weight, in canonical order.
pub fn enumerate_weight(phi: &Weight) -> Vec<Multisegment> {
    fn rec(phi: &mut BTreeMap<i32, u32>, cur: &mut Vec<Segment>, out: &mut Vec<Multisegment>) {
        let lo = match phi.iter().find(|(_, &m)| m > 0) {
            None => {
                out.push(Multisegment::new(cur.clone()));
                return;
            }
            Some((&i, _)) => i,
        };
        // The lowest occupied point must begin a segment; to avoid duplicates,
        // segments starting at `lo` are chosen with nonincreasing ends.
        let max_end = cur.last().filter(|s| s.begin == lo).map(|s| s.end).unwrap_or(i32::MAX);
        let mut j = lo;
        while j <= max_end && phi.get(&j).copied().unwrap_or(0) > 0 {
            j += 1;
        }
        for end in (lo..j).rev() {
            for t in lo..=end {
                *phi.get_mut(&t).unwrap() -= 1;
            }
            cur.push(Segment::of(lo, end));
            rec(phi, cur, out);
            cur.pop();
            for t in lo..=end {
                *phi.get_mut(&t).unwrap() += 1;
            }
        }
    }
    let mut phi = phi.0.clone();
    let mut out = Vec::new();
    rec(&mut phi, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// All multisegments of degree `1..=max_deg` whose segments lie in `[lo, hi]`.
pub fn enumerate_in_box(lo: i32, hi: i32, max_deg: u32) -> Vec<Multisegment> {
    let segs: Vec<Segment> = (lo..=hi).flat_map(|i| (i..=hi).map(move |j| Segment::of(i, j))).collect();
    fn rec(segs: &[Segment], start: usize, cur: &mut Vec<Segment>, d: u32, max: u32, out: &mut Vec<Multisegment>) {
        if !cur.is_empty() {
            out.push(Multisegment::new(cur.clone()));
        }
        for i in start..segs.len() {
            let l = segs[i].len() as u32;
            if d + l <= max {
                cur.push(segs[i]);
                rec(segs, i, cur, d + l, max, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    rec(&segs, 0, &mut Vec::new(), 0, max_deg, &mut out);
    out.sort();
    out
}

/// Multisegments of degree `1..=max_deg` up to translation, normalized so
/// that the smallest beginning is 1.
pub fn enumerate_normalized(max_deg: u32) -> Vec<Multisegment> {
    enumerate_in_box(1, max_deg as i32, max_deg).into_iter().filter(|a| a.min_begin() == Some(1)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format() {
        let a = ms("2[1,3]+[2,5]+[4]");
        assert_eq!(a.to_string(), "2[1,3]+[4]+[2,5]");
        assert_eq!(ms(&a.to_string()), a);
        assert_eq!(ms("[-2,-1]+[3]").to_string(), "[-2,-1]+[3]");
        assert_eq!(ms("0"), Multisegment::empty());
        match "[1,2]+[3".parse::<Multisegment>() {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 8),
            other => panic!("{:?}", other),
        }
        assert!("[3,1]".parse::<Multisegment>().is_err());
    }

    #[test]
    fn canonical_order() {
        let a = ms("[2,2]+[1,2]+[1,1]");
        assert_eq!(a.segments(), &[Segment::of(1, 1), Segment::of(2, 2), Segment::of(1, 2)]);
        assert_eq!(a.pbw_word(), vec![Segment::of(1, 1), Segment::of(1, 2), Segment::of(2, 2)]);
    }

    #[test]
    fn link_ops() {
        let r = Segment::of(1, 2).link_ops(&Segment::of(2, 3));
        assert!(r.linked);
        assert_eq!(r.union, Some(Segment::of(1, 3)));
        assert_eq!(r.intersection, Some(Some(Segment::of(2, 2))));
        assert!(!Segment::of(1, 2).link_ops(&Segment::of(4, 5)).linked);
        let r = Segment::of(1, 1).link_ops(&Segment::of(2, 2));
        assert!(r.linked);
        assert_eq!(r.union, Some(Segment::of(1, 2)));
        assert_eq!(r.intersection, Some(None));
    }

    #[test]
    fn truncations() {
        assert_eq!(ms("[1,2]+[2,3]").truncate(2), ms("[1]+[2,3]"));
        assert_eq!(ms("[2]+[1,3]").truncate(2), ms("[1,3]"));
        assert_eq!(ms("[1,4]+[2,5]").truncate(3), ms("[1,4]+[2,5]"));
        let s2 = Segment::of(2, 2);
        assert_eq!(ms("[1]+[2]").gamma_truncate(2, &[s2]).unwrap(), ms("[1]"));
        assert_eq!(ms("[1,2]+[2]").gamma_truncate(2, &[Segment::of(1, 2)]).unwrap(), ms("[1]+[2]"));
        assert_eq!(ms("[1,2]+[2]").gamma_truncate(2, &[]).unwrap(), ms("[1,2]+[2]"));
        assert!(ms("[1,2]").gamma_truncate(2, &[s2]).is_err());
        assert_eq!(ms("[1,3]").reflect(), ms("[-3,-1]"));
        assert_eq!(ms("[1]+[2,5]").reflect().reflect(), ms("[1]+[2,5]"));
        assert_eq!(ms("[2,4]").left_truncate(2), ms("[3,4]"));
    }

    #[test]
    fn covers() {
        assert_eq!(ms("[1]+[2]").elementary_covers(), vec![ms("[1,2]")]);
        assert_eq!(ms("[1,2]+[2,3]").elementary_covers(), vec![ms("[1,3]+[2]")]);
        assert!(ms("[1,2]").elementary_covers().is_empty());
    }

    #[test]
    fn weights() {
        let phi = Weight([(1, 2), (2, 2)].into_iter().collect());
        let w = enumerate_weight(&phi);
        assert_eq!(w.len(), 3);
        assert!(w.contains(&ms("2[1]+2[2]")) && w.contains(&ms("[1]+[1,2]+[2]")) && w.contains(&ms("2[1,2]")));
        assert_eq!(enumerate_weight(&ms("[1]+[2]").weight()), vec![ms("[1]+[2]"), ms("[1,2]")]);
        assert_eq!(seg_form(&Segment::of(1, 1), &Segment::of(2, 2)), -1);
        assert_eq!(seg_form(&Segment::of(1, 2), &Segment::of(1, 2)), 2);
        let x = Segment::of(1, 3);
        let y = Segment::of(2, 5);
        assert_eq!(seg_form(&x, &y), ms("[1,3]").weight().form(&ms("[2,5]").weight()));
    }
}
