//! Symmetric groups: Bruhat order, Kazhdan–Lusztig polynomials and parabolic
//! quotients.

use serde::{Deserialize, Serialize};
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::engine::{Engine, Memo};
use crate::error::{pre, Error, Result};

/// A permutation of `{1, …, n}` in one-line notation.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Perm(pub Vec<u8>);

impl Perm {
    pub fn new(images: Vec<u8>) -> Result<Perm> {
        let n = images.len();
        let mut seen = vec![false; n + 1];
        for &x in &images {
            if x == 0 || x as usize > n || seen[x as usize] {
                return pre(format!("{:?} is not a permutation", images));
            }
            seen[x as usize] = true;
        }
        Ok(Perm(images))
    }

    pub fn identity(n: usize) -> Perm {
        Perm((1..=n as u8).collect())
    }

    pub fn n(&self) -> usize {
        self.0.len()
    }

    /// `w(i)` for `1 ≤ i ≤ n`.
    pub fn at(&self, i: usize) -> usize {
        self.0[i - 1] as usize
    }

    pub fn inverse(&self) -> Perm {
        let mut r = vec![0u8; self.n()];
        for (i, &x) in self.0.iter().enumerate() {
            r[x as usize - 1] = i as u8 + 1;
        }
        Perm(r)
    }

    /// `self ∘ o`, i.e. `i ↦ self(o(i))`.
    pub fn compose(&self, o: &Perm) -> Perm {
        Perm(o.0.iter().map(|&i| self.0[i as usize - 1]).collect())
    }

    /// The simple transposition `σ_i`.
    pub fn simple(n: usize, i: usize) -> Perm {
        let mut p = Perm::identity(n);
        p.0.swap(i - 1, i);
        p
    }

    /// `w σ_i`: swaps positions `i` and `i+1`.
    pub fn mul_simple_right(&self, i: usize) -> Perm {
        let mut p = self.clone();
        p.0.swap(i - 1, i);
        p
    }

    /// `σ_i w`: swaps values `i` and `i+1`.
    pub fn mul_simple_left(&self, i: usize) -> Perm {
        let (a, b) = (i as u8, i as u8 + 1);
        Perm(
            self.0
                .iter()
                .map(|&x| {
                    if x == a {
                        b
                    } else if x == b {
                        a
                    } else {
                        x
                    }
                })
                .collect(),
        )
    }

    /// Product of simple transpositions `σ_{i_1} σ_{i_2} ⋯`.
    pub fn from_word(n: usize, word: &[usize]) -> Perm {
        word.iter().fold(Perm::identity(n), |w, &i| w.mul_simple_right(i))
    }

    /// Number of inversions.
    pub fn length(&self) -> usize {
        let v = &self.0;
        (0..v.len()).map(|i| (i + 1..v.len()).filter(|&j| v[i] > v[j]).count()).sum()
    }

    pub fn right_descents(&self) -> Vec<usize> {
        (1..self.n()).filter(|&i| self.0[i - 1] > self.0[i]).collect()
    }

    pub fn left_descents(&self) -> Vec<usize> {
        self.inverse().right_descents()
    }

    /// All permutations of `{1, …, n}` in lexicographic order.
    pub fn all(n: usize) -> Vec<Perm> {
        let mut out = Vec::new();
        let mut cur: Vec<u8> = (1..=n as u8).collect();
        loop {
            out.push(Perm(cur.clone()));
            // next lexicographic permutation
            let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
                return out;
            };
            let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
            cur.swap(i, j);
            cur[i + 1..].reverse();
        }
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", s.join(" "))
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self)
    }
}

impl std::str::FromStr for Perm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Perm> {
        let mut v = Vec::new();
        for (i, tok) in s.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()).enumerate() {
            match tok.parse::<u8>() {
                Ok(x) => v.push(x),
                Err(_) => return Err(Error::Parse { pos: i, msg: format!("bad permutation entry '{}'", tok) }),
            }
        }
        Perm::new(v)
    }
}

/// Bruhat order by the sorted-prefix criterion.
pub fn bruhat_leq(x: &Perm, y: &Perm) -> bool {
    let n = x.n();
    if n != y.n() {
        return false;
    }
    let mut a: Vec<u8> = Vec::with_capacity(n);
    let mut b: Vec<u8> = Vec::with_capacity(n);
    for i in 0..n {
        a.push(x.0[i]);
        b.push(y.0[i]);
        a.sort_unstable();
        b.sort_unstable();
        if a.iter().zip(&b).any(|(p, q)| p > q) {
            return false;
        }
    }
    true
}

/// Polynomial in `q` with integer coefficients, lowest degree first.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct QPoly(pub Vec<i64>);

impl QPoly {
    pub fn zero() -> QPoly {
        QPoly(vec![])
    }

    pub fn one() -> QPoly {
        QPoly(vec![1])
    }

    pub fn from_coeffs(mut c: Vec<i64>) -> QPoly {
        while c.last() == Some(&0) {
            c.pop();
        }
        QPoly(c)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn coeff(&self, e: usize) -> i64 {
        self.0.get(e).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn eval1(&self) -> i64 {
        self.0.iter().sum()
    }

    /// `self += c q^e p`.
    pub fn add_shifted(&mut self, p: &QPoly, e: usize, c: i64) {
        if p.0.len() + e > self.0.len() {
            self.0.resize(p.0.len() + e, 0);
        }
        for (i, &x) in p.0.iter().enumerate() {
            self.0[i + e] = self.0[i + e].checked_add(c.checked_mul(x).expect("overflow")).expect("overflow");
        }
        while self.0.last() == Some(&0) {
            self.0.pop();
        }
    }

    pub fn mul(&self, o: &QPoly) -> QPoly {
        let mut r = QPoly::zero();
        for (e, &c) in self.0.iter().enumerate() {
            if c != 0 {
                r.add_shifted(o, e, c);
            }
        }
        r
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (e, &c) in self.0.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let mon = match e {
                0 => String::new(),
                1 => "q".into(),
                _ => format!("q^{}", e),
            };
            parts.push(match (c, e) {
                (c, 0) => c.to_string(),
                (1, _) => mon,
                (-1, _) => format!("-{}", mon),
                (c, _) => format!("{}{}", c, mon),
            });
        }
        write!(f, "{}", parts.join(" + ").replace("+ -", "- "))
    }
}

impl fmt::Debug for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// A set of simple reflections, stored by index `i` of `σ_i`.
pub type JSet = BTreeSet<usize>;

/// Parses `"s1,s3"` (or `"1,3"`; empty string for `∅`).
pub fn parse_jset(s: &str) -> Result<JSet> {
    let mut out = JSet::new();
    for (pos, tok) in s.split(',').map(str::trim).filter(|t| !t.is_empty()).enumerate() {
        let t = tok.trim_start_matches(['s', 'σ']);
        match t.parse::<usize>() {
            Ok(i) if i >= 1 => {
                out.insert(i);
            }
            _ => return Err(Error::Parse { pos, msg: format!("bad reflection '{}'", tok) }),
        }
    }
    Ok(out)
}

pub fn format_jset(j: &JSet) -> String {
    j.iter().map(|i| format!("s{}", i)).collect::<Vec<_>>().join(",")
}

/// Longest element `w_J` of the parabolic subgroup `S_J`.
pub fn longest_j(j: &JSet, n: usize) -> Perm {
    let mut res: Vec<u8> = (1..=n as u8).collect();
    let mut i = 1;
    while i <= n {
        let mut k = i;
        while k < n && j.contains(&k) {
            k += 1;
        }
        res[i - 1..k].reverse();
        i = k + 1;
    }
    Perm(res)
}

/// Whether `w` has no left descent in `J` (a minimal `(J, ∅)` coset
/// representative).
pub fn is_min_rep(j: &JSet, w: &Perm) -> bool {
    let inv = w.inverse();
    j.iter().all(|&i| i < w.n() && inv.0[i - 1] < inv.0[i])
}

/// Minimal length representatives of `S_J \ S_n`, in lexicographic order.
pub fn min_coset_reps(j: &JSet, n: usize) -> Vec<Perm> {
    Perm::all(n).into_iter().filter(|w| is_min_rep(j, w)).collect()
}

/// Whether `w` lies in the parabolic subgroup generated by `J`.
pub fn in_parabolic(j: &JSet, w: &Perm) -> bool {
    let n = w.n();
    let mut block = vec![0usize; n + 1];
    for i in 2..=n {
        block[i] = block[i - 1] + usize::from(!j.contains(&(i - 1)));
    }
    (1..=n).all(|i| block[w.at(i)] == block[i])
}

type Column = Arc<HashMap<Perm, QPoly>>;

/// KL columns `x ↦ P_{x,y}` keyed by `y`.
pub type KlColumns = Memo<Perm, Column>;

impl Engine {
    /// `P_{x,y}(q)`; zero unless `x ≤ y`.
    pub fn kl_poly(&self, x: &Perm, y: &Perm) -> Result<QPoly> {
        if x.n() != y.n() {
            return pre("permutations of different sizes");
        }
        Ok(self.kl_column(y).get(x).cloned().unwrap_or_default())
    }

    /// All `P_{x,y}` for fixed `y`, by the standard recursion on a right
    /// descent of `y`.
    pub fn kl_column(&self, y: &Perm) -> Column {
        if let Some(c) = self.kl_columns().get(y) {
            return c;
        }
        if let Some(c) = self.load_kl_column(y) {
            return c;
        }
        let n = y.n();
        let col: HashMap<Perm, QPoly> = match y.right_descents().first() {
            None => [(y.clone(), QPoly::one())].into_iter().collect(),
            Some(&s) => {
                let v = y.mul_simple_right(s);
                let colv = self.kl_column(&v);
                let (ly, lv) = (y.length(), v.length());
                // z < v with zs < z and μ(z, v) ≠ 0
                let mut zs: Vec<(Perm, i64, Column)> = Vec::new();
                for (z, p) in colv.iter() {
                    let lz = z.length();
                    if z == &v || (lv - lz) % 2 == 0 || z.mul_simple_right(s).length() > lz {
                        continue;
                    }
                    let m = p.coeff((lv - lz - 1) / 2);
                    if m != 0 {
                        zs.push((z.clone(), m, self.kl_column(z)));
                    }
                }
                let mut col = HashMap::new();
                for x in Perm::all(n) {
                    if !bruhat_leq(&x, y) {
                        continue;
                    }
                    let xs = x.mul_simple_right(s);
                    let c = usize::from(xs.length() < x.length());
                    let mut p = QPoly::zero();
                    if let Some(a) = colv.get(&xs) {
                        p.add_shifted(a, 1 - c, 1);
                    }
                    if let Some(a) = colv.get(&x) {
                        p.add_shifted(a, c, 1);
                    }
                    for (z, m, colz) in &zs {
                        if let Some(a) = colz.get(&x) {
                            p.add_shifted(a, (ly - z.length()) / 2, -m);
                        }
                    }
                    col.insert(x, p);
                }
                col
            }
        };
        self.store_kl_column(y, &col);
        self.kl_columns().insert(y.clone(), Arc::new(col))
    }

    /// `μ(x, y)`: the coefficient of `q^{(ℓ(y)−ℓ(x)−1)/2}` in `P_{x,y}`.
    pub fn kl_mu(&self, x: &Perm, y: &Perm) -> i64 {
        let (lx, ly) = (x.length(), y.length());
        if ly <= lx || (ly - lx) % 2 == 0 {
            return 0;
        }
        self.kl_poly(x, y).map(|p| p.coeff((ly - lx - 1) / 2)).unwrap_or(0)
    }

    /// `P^{J,∅}_{w,v} := P_{w_J w, w_J v}` for minimal representatives.
    pub fn parabolic_kl(&self, j: &JSet, w: &Perm, v: &Perm) -> Result<QPoly> {
        if !is_min_rep(j, w) || !is_min_rep(j, v) {
            return pre("parabolic KL polynomial needs minimal coset representatives");
        }
        let wj = longest_j(j, w.n());
        self.kl_poly(&wj.compose(w), &wj.compose(v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Perm {
        s.parse().unwrap()
    }

    #[test]
    fn basics() {
        assert_eq!(Perm::all(4).len(), 24);
        assert_eq!(Perm::from_word(4, &[1, 2]), p("2 3 1 4"));
        assert_eq!(p("2 3 1 4").inverse(), p("3 1 2 4"));
        assert!(bruhat_leq(&Perm::identity(3), &p("3 2 1")));
        assert!(!bruhat_leq(&Perm::simple(3, 1), &Perm::simple(3, 2)));
        assert!(!bruhat_leq(&Perm::simple(3, 2), &Perm::simple(3, 1)));
        assert_eq!(longest_j(&[2, 3].into_iter().collect(), 4), p("1 4 3 2"));
    }

    #[test]
    fn kl_small() {
        let e = Engine::new();
        let x = Perm::simple(4, 2);
        let y = Perm::from_word(4, &[2, 1, 3, 2]);
        assert_eq!(e.kl_poly(&x, &y).unwrap(), QPoly(vec![1, 1]));
        assert_eq!(e.kl_poly(&p("1 3 2 4"), &p("3 4 1 2")).unwrap(), QPoly(vec![1, 1]));
        assert_eq!(e.kl_poly(&y, &x).unwrap(), QPoly::zero());
    }

    #[test]
    fn cosets() {
        let j: JSet = [2, 3].into_iter().collect();
        let reps = min_coset_reps(&j, 4);
        assert_eq!(reps.len(), 4);
        assert!(reps.contains(&Perm::from_word(4, &[1, 2])));
        assert_eq!(min_coset_reps(&JSet::new(), 3).len(), 6);
        assert_eq!(min_coset_reps(&[1, 2].into_iter().collect(), 3), vec![Perm::identity(3)]);
        assert_eq!(parse_jset("s1,s3").unwrap(), [1, 3].into_iter().collect());
    }
}
