//! Oracles shared by the integration tests. Nothing here calls into the
//! library's algorithms; inputs and outputs use plain data.

#![allow(dead_code)]

use std::collections::HashMap;

/// A polynomial in `q`, lowest degree first.
pub type Poly = Vec<i64>;

fn trim(mut p: Poly) -> Poly {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

fn padd(a: &Poly, b: &Poly) -> Poly {
    let mut r = vec![0; a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        r[i] += x;
    }
    for (i, x) in b.iter().enumerate() {
        r[i] += x;
    }
    trim(r)
}

fn pmul(a: &Poly, b: &Poly) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut r = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            r[i + j] += x * y;
        }
    }
    trim(r)
}

/// Kazhdan–Lusztig polynomials of `S_n` from R-polynomials and the identity
/// `q^{ℓ(y)−ℓ(x)} P_{x,y}(q⁻¹) − P_{x,y}(q) = Σ_{x<z≤y} R_{x,z} P_{z,y}`.
/// Permutations are one-line, 0-based.
pub struct KlOracle {
    r: HashMap<(Vec<usize>, Vec<usize>), Poly>,
    p: HashMap<(Vec<usize>, Vec<usize>), Poly>,
    pub perms: Vec<Vec<usize>>,
}

pub fn length(w: &[usize]) -> usize {
    (0..w.len()).map(|i| (i + 1..w.len()).filter(|&j| w[i] > w[j]).count()).sum()
}

/// Bruhat order by the tableau criterion.
pub fn bruhat(x: &[usize], y: &[usize]) -> bool {
    (1..x.len()).all(|i| {
        let mut a = x[..i].to_vec();
        let mut b = y[..i].to_vec();
        a.sort();
        b.sort();
        a.iter().zip(&b).all(|(p, q)| p <= q)
    })
}

fn swap(w: &[usize], i: usize) -> Vec<usize> {
    let mut v = w.to_vec();
    v.swap(i, i + 1);
    v
}

pub fn all_perms(n: usize) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                cur.push(i);
                rec(cur, used, out);
                cur.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

impl KlOracle {
    pub fn new(n: usize) -> KlOracle {
        KlOracle { r: HashMap::new(), p: HashMap::new(), perms: all_perms(n) }
    }

    pub fn r(&mut self, x: &[usize], y: &[usize]) -> Poly {
        if !bruhat(x, y) {
            return Vec::new();
        }
        if x == y {
            return vec![1];
        }
        let key = (x.to_vec(), y.to_vec());
        if let Some(v) = self.r.get(&key) {
            return v.clone();
        }
        let i = (0..y.len() - 1).find(|&i| y[i] > y[i + 1]).unwrap();
        let (xs, ys) = (swap(x, i), swap(y, i));
        let v = if x[i] > x[i + 1] {
            self.r(&xs, &ys)
        } else {
            let a = pmul(&vec![-1, 1], &self.r(x, &ys));
            let b = pmul(&vec![0, 1], &self.r(&xs, &ys));
            padd(&a, &b)
        };
        self.r.insert(key, v.clone());
        v
    }

    pub fn p(&mut self, x: &[usize], y: &[usize]) -> Poly {
        if !bruhat(x, y) {
            return Vec::new();
        }
        if x == y {
            return vec![1];
        }
        let key = (x.to_vec(), y.to_vec());
        if let Some(v) = self.p.get(&key) {
            return v.clone();
        }
        let l = length(y) - length(x);
        let mut f: Poly = Vec::new();
        for z in self.perms.clone() {
            if z != x && bruhat(x, &z) && bruhat(&z, y) {
                let t = pmul(&self.r(x, &z), &self.p(&z, y));
                f = padd(&f, &t);
            }
        }
        let v = trim(f.iter().enumerate().map(|(d, c)| if 2 * d < l { -c } else { 0 }).collect());
        self.p.insert(key, v.clone());
        v
    }
}
