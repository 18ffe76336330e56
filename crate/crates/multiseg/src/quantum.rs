//! The quantum algebra in the dual PBW basis `{E*(a)}`: straightening of
//! products of the generators `T_s = E*(s)`, the dual bar involution, the dual
//! canonical basis `G*(a)`, the bar involution, the Kashiwara pairing and the
//! q-derivations `E_i'`.
//!
//! Ordered monomials list segments by end, then by beginning (both
//! ascending). For `x` before `y` in that order the generators satisfy
//!
//! `T_x T_y = v^{(x,y)} T_y T_x + [x, y linked] (v − v⁻¹) T_{x∩y} T_{x∪y}`
//!
//! with `T_∅ = 1`, and `E*(a) = v^{Σ binom(m_s, 2)} ∏ T_s`.

use serde::{Deserialize, Serialize};
use std::cell::RefCell;
use std::collections::{BTreeMap, HashMap};
use std::rc::Rc;
use std::sync::Arc;

use crate::engine::{Engine, LVec};
use crate::error::{internal, pre, Result};
use crate::laurent::Laurent;
use crate::multiseg::{cartan, enumerate_weight, seg_form, Multisegment, Segment, Weight};

/// An ordered monomial: segments in PBW order.
pub type Word = Vec<Segment>;
type Terms = Rc<Vec<(Word, Laurent)>>;

thread_local! {
    static MULSEG: RefCell<HashMap<(Word, Segment), Terms>> = RefCell::new(HashMap::new());
}

/// Drops the straightening memo of the calling thread.
pub fn clear_straighten_memo() {
    MULSEG.with(|m| m.borrow_mut().clear());
}

fn add_term(acc: &mut HashMap<Word, Laurent>, w: Word, c: Laurent) {
    if c.is_zero() {
        return;
    }
    match acc.entry(w) {
        std::collections::hash_map::Entry::Occupied(mut e) => {
            *e.get_mut() += &c;
            if e.get().is_zero() {
                e.remove();
            }
        }
        std::collections::hash_map::Entry::Vacant(e) => {
            e.insert(c);
        }
    }
}

/// `M · T_s` for an ordered monomial `M`, as a combination of ordered monomials.
fn mulseg(m: &[Segment], s: Option<Segment>) -> Terms {
    let Some(s) = s else {
        return Rc::new(vec![(m.to_vec(), Laurent::one())]);
    };
    match m.last() {
        None => return Rc::new(vec![(vec![s], Laurent::one())]),
        Some(t) if t.pbw_key() <= s.pbw_key() => {
            let mut w = m.to_vec();
            w.push(s);
            return Rc::new(vec![(w, Laurent::one())]);
        }
        _ => {}
    }
    let key = (m.to_vec(), s);
    if let Some(r) = MULSEG.with(|memo| memo.borrow().get(&key).cloned()) {
        return r;
    }
    let t = *m.last().unwrap();
    let prefix = &m[..m.len() - 1];
    // T_t T_s = v^{-e} (T_s T_t − [linked](v − v⁻¹) T_{s∩t} T_{s∪t}), e = (s, t)
    let e = seg_form(&s, &t) as i32;
    let mut acc: HashMap<Word, Laurent> = HashMap::new();
    let lead = Laurent::monomial(-e, 1);
    for (m1, c1) in mulseg(prefix, Some(s)).iter() {
        let c1 = c1 * &lead;
        for (m2, c2) in mulseg(m1, Some(t)).iter() {
            add_term(&mut acc, m2.clone(), &c1 * c2);
        }
    }
    if s.linked(&t) {
        let corr = Laurent::from_terms(&[(1 - e, -1), (-1 - e, 1)]);
        for (m1, c1) in mulseg(prefix, s.intersection(&t)).iter() {
            let c1 = c1 * &corr;
            for (m2, c2) in mulseg(m1, Some(s.union(&t))).iter() {
                add_term(&mut acc, m2.clone(), &c1 * c2);
            }
        }
    }
    let r: Terms = Rc::new(acc.into_iter().collect());
    MULSEG.with(|memo| memo.borrow_mut().insert(key, r.clone()));
    r
}

/// Expands `∏ T_{word_i}` into ordered monomials.
pub fn straighten_word(word: &[Segment]) -> HashMap<Word, Laurent> {
    mul_words(&[(Vec::new(), Laurent::one())].into_iter().collect(), word)
}

/// Multiplies each ordered monomial in `x` on the right by `∏ T_{word_i}`.
pub fn mul_words(x: &HashMap<Word, Laurent>, word: &[Segment]) -> HashMap<Word, Laurent> {
    let mut cur = x.clone();
    for &s in word {
        let mut next = HashMap::new();
        for (m, c) in &cur {
            for (m2, c2) in mulseg(m, Some(s)).iter() {
                add_term(&mut next, m2.clone(), c * c2);
            }
        }
        cur = next;
    }
    cur
}

fn word_ms(w: &[Segment]) -> Multisegment {
    Multisegment::new(w.to_vec())
}

/// Ordered-monomial coordinates to `E*` coordinates.
pub fn words_to_estar(x: &HashMap<Word, Laurent>) -> LVec {
    let mut out = LVec::new();
    for (w, c) in x {
        let a = word_ms(w);
        let c = c.shift(-a.binom_sum());
        add_lvec(&mut out, a, &c);
    }
    out
}

/// `E*` coordinates to ordered-monomial coordinates.
pub fn estar_to_words(x: &LVec) -> HashMap<Word, Laurent> {
    x.iter().map(|(a, c)| (a.pbw_word(), c.shift(a.binom_sum()))).collect()
}

pub(crate) fn add_lvec(out: &mut LVec, a: Multisegment, c: &Laurent) {
    if c.is_zero() {
        return;
    }
    let e = out.entry(a.clone()).or_default();
    *e += c;
    if e.is_zero() {
        out.remove(&a);
    }
}

/// `x + c·y`.
pub fn lvec_axpy(x: &mut LVec, c: &Laurent, y: &LVec) {
    for (a, p) in y {
        add_lvec(x, a.clone(), &(c * p));
    }
}

/// `c · ∏ T_{word_i}` in `E*` coordinates.
pub fn straighten(word: &[Segment], prefactor: &Laurent) -> LVec {
    let mut out = words_to_estar(&straighten_word(word));
    for c in out.values_mut() {
        *c = &*c * prefactor;
    }
    out
}

/// Product of two vectors given in `E*` coordinates.
pub fn estar_mul(x: &LVec, y: &LVec) -> LVec {
    let mut out = LVec::new();
    for (a, ca) in x {
        for (b, cb) in y {
            let mut w = a.pbw_word();
            w.extend(b.pbw_word());
            let c = (ca * cb).shift(a.binom_sum() + b.binom_sum());
            let r = straighten(&w, &c);
            lvec_axpy(&mut out, &Laurent::one(), &r);
        }
    }
    out
}

/// `c_a(q) = ∏ h_{m_s}(q) / (1 − q)^{deg a}`, returned as (numerator, exponent of `1 − q` in the denominator).
pub fn c_factor(a: &Multisegment) -> (Laurent, u32) {
    let num = a.grouped().iter().fold(Laurent::one(), |acc, &(_, m)| &acc * &Laurent::h(m as u32));
    (num, a.degree())
}

/// Canonical basis data for one weight: rows `E*(a) = Σ_b P_{a,b} G*(b)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PMatrix {
    pub weight: Weight,
    pub rows: BTreeMap<Multisegment, LVec>,
}

impl PMatrix {
    /// `P_{a,b}` (zero outside the support).
    pub fn entry(&self, a: &Multisegment, b: &Multisegment) -> Laurent {
        self.rows.get(a).and_then(|r| r.get(b)).cloned().unwrap_or_default()
    }
}

/// Divides every coefficient exactly by `d`.
fn divide_all(x: &LVec, d: &Laurent) -> Result<LVec> {
    let mut out = LVec::new();
    for (a, c) in x {
        match c.div_exact(d) {
            Some(q) => {
                out.insert(a.clone(), q);
            }
            None => return internal(format!("inexact division of {} by {} at {}", c, d, a)),
        }
    }
    Ok(out)
}

/// `(α_k, wt u)` for a word `u`.
fn alpha_form(k: i32, prefix: &[Segment]) -> i64 {
    prefix.iter().map(|t| (t.begin..=t.end).map(|i| cartan(k, i)).sum::<i64>()).sum()
}

impl Engine {
    /// `σ'(E*(a))` in `E*` coordinates, where `σ'` is the dual bar involution.
    /// Its fixed points include the dual canonical basis.
    pub fn dual_bar_estar(&self, a: &Multisegment) -> Arc<LVec> {
        self.tables.sigma.get_or(a, || {
            // σ fixes each T_[i] and is an antilinear anti-automorphism, so
            // σ(T_s) = v^{len s − 1} T_s, and σ' = v^{(β,β)/2 − deg β} σ on weight β.
            let w = a.pbw_word();
            let beta = a.weight();
            let twist = (beta.form(&beta) / 2) as i32 - a.len() as i32;
            let rev: Word = w.iter().rev().copied().collect();
            let mut out = LVec::new();
            for (m, c) in straighten_word(&rev) {
                let b = word_ms(&m);
                let e = twist - a.binom_sum() - b.binom_sum();
                add_lvec(&mut out, b, &c.shift(e));
            }
            Arc::new(out)
        })
    }

    /// Applies the dual bar involution to a vector in `E*` coordinates.
    pub fn dual_bar(&self, x: &LVec) -> LVec {
        let mut out = LVec::new();
        for (a, c) in x {
            lvec_axpy(&mut out, &c.bar(), &self.dual_bar_estar(a));
        }
        out
    }

    /// `G*(a) = Σ_{b ≤ a} g_{b,a} E*(b)` with `g_{a,a} = 1` and
    /// `g_{b,a} ∈ v Z[v]` otherwise.
    pub fn gstar(&self, a: &Multisegment) -> Result<Arc<LVec>> {
        if let Some(g) = self.tables.gstar.get(a) {
            return Ok(g);
        }
        let s = self.below_set(a);
        let mut g = LVec::new();
        g.insert(a.clone(), Laurent::one());
        for c in s.members.iter().rev() {
            if c == a {
                continue;
            }
            // g_c − bar(g_c) = Σ_{b ≠ c} s_{c,b} bar(g_b), s = σ' matrix
            let mut r = Laurent::zero();
            for (b, gb) in &g {
                if let Some(sc) = self.dual_bar_estar(b).get(c) {
                    r.add_product(sc, &gb.bar());
                }
            }
            if r.coeff(0) != 0 || r != -&r.bar() {
                return internal(format!("dual bar system not antisymmetric at {} below {}: {}", c, a, r));
            }
            let pos = r.positive_part();
            if !pos.is_zero() {
                g.insert(c.clone(), pos);
            }
        }
        Ok(self.tables.gstar.insert(a.clone(), Arc::new(g)))
    }

    /// Row `b ↦ P_{a,b}` of `E*(a) = Σ_{b ≤ a} P_{a,b} G*(b)`.
    pub fn prow(&self, a: &Multisegment) -> Result<Arc<LVec>> {
        if let Some(r) = self.tables.prow.get(a) {
            return Ok(r);
        }
        if self.load_pmatrix(&a.weight()) {
            if let Some(r) = self.tables.prow.get(a) {
                return Ok(r);
            }
        }
        let s = self.below_set(a);
        let mut p = LVec::new();
        p.insert(a.clone(), Laurent::one());
        for c in s.members.iter().rev() {
            if c == a {
                continue;
            }
            let mut acc = Laurent::zero();
            for (b, pb) in &p {
                if let Some(gc) = self.gstar(b)?.get(c) {
                    acc.add_product(pb, gc);
                }
            }
            if !acc.is_zero() {
                p.insert(c.clone(), -&acc);
            }
        }
        Ok(self.tables.prow.insert(a.clone(), Arc::new(p)))
    }

    /// The full `P`-matrix for weight `φ`.
    pub fn canonical_basis(&self, phi: &Weight) -> Result<PMatrix> {
        if phi.degree() > self.max_basis_degree {
            return pre(format!(
                "weight {} has degree {} above the bound {}",
                phi,
                phi.degree(),
                self.max_basis_degree
            ));
        }
        let mut rows = BTreeMap::new();
        for a in enumerate_weight(phi) {
            let r = self.prow(&a)?;
            rows.insert(a, (*r).clone());
        }
        let m = PMatrix { weight: phi.clone(), rows };
        self.store_pmatrix(&m);
        Ok(m)
    }

    /// Converts `E*` coordinates to `G*` coordinates.
    pub fn estar_to_gstar(&self, x: &LVec) -> Result<LVec> {
        let mut out = LVec::new();
        for (a, c) in x {
            lvec_axpy(&mut out, c, &*self.prow(a)?);
        }
        Ok(out)
    }

    /// Converts `G*` coordinates to `E*` coordinates.
    pub fn gstar_to_estar(&self, x: &LVec) -> Result<LVec> {
        let mut out = LVec::new();
        for (a, c) in x {
            lvec_axpy(&mut out, c, &*self.gstar(a)?);
        }
        Ok(out)
    }

    /// `bar(T_s)` as ordered monomials, from the q-commutator expansion
    /// `bar(T_{[i,j]}) (1 − v⁻²) = T_j bar(T_{[i,j−1]}) − v⁻¹ bar(T_{[i,j−1]}) T_j`.
    fn bar_segment(&self, s: Segment) -> HashMap<Word, Laurent> {
        if s.begin == s.end {
            return [(vec![s], Laurent::one())].into_iter().collect();
        }
        let prev = self.bar_segment(Segment::of(s.begin, s.end - 1));
        let tj = Segment::of(s.end, s.end);
        let mut acc = HashMap::new();
        let vinv = Laurent::monomial(-1, -1);
        for (m, c) in &prev {
            let mut w = vec![tj];
            w.extend_from_slice(m);
            for (n, d) in straighten_word(&w) {
                add_term(&mut acc, n, c * &d);
            }
            for (n, d) in mul_words(&[(m.clone(), Laurent::one())].into_iter().collect(), &[tj]) {
                add_term(&mut acc, n, &(c * &d) * &vinv);
            }
        }
        let den = Laurent::from_terms(&[(0, 1), (-2, -1)]);
        acc.into_iter().map(|(w, c)| (w, c.div_exact(&den).expect("bar of a segment divides exactly"))).collect()
    }

    /// `bar(E*(a))` in `E*` coordinates.
    pub fn bar_estar(&self, a: &Multisegment) -> Arc<LVec> {
        self.tables.bar_estar.get_or(a, || {
            let mut cur: HashMap<Word, Laurent> = [(Vec::new(), Laurent::one())].into_iter().collect();
            for s in a.pbw_word() {
                let bs = self.bar_segment(s);
                let mut next = HashMap::new();
                for (m, c) in &cur {
                    for (n, d) in &bs {
                        let mut w = m.clone();
                        w.extend_from_slice(n);
                        let cd = c * d;
                        for (r, e) in straighten_word(&w) {
                            add_term(&mut next, r, &cd * &e);
                        }
                    }
                }
                cur = next;
            }
            let mut out = words_to_estar(&cur);
            for c in out.values_mut() {
                *c = c.shift(-a.binom_sum());
            }
            Arc::new(out)
        })
    }

    /// The bar involution on `E*` coordinates (antilinear ring automorphism).
    pub fn bar(&self, x: &LVec) -> LVec {
        let mut out = LVec::new();
        for (a, c) in x {
            lvec_axpy(&mut out, &c.bar(), &self.bar_estar(a));
        }
        out
    }

    /// Checks `bar(G(a)) = G(a)` for `G(a) = Σ_{b ≥ a} P_{b,a} E(b)` and
    /// `E(b) = E*(b)/c_b`, after clearing the denominators.
    pub fn check_g_bar_invariant(&self, a: &Multisegment) -> Result<bool> {
        let members = enumerate_weight(&a.weight());
        let mut col: Vec<(Multisegment, Laurent)> = Vec::new();
        for b in &members {
            let p = self.prow(b)?.get(a).cloned().unwrap_or_default();
            if !p.is_zero() {
                col.push((b.clone(), p));
            }
        }
        // G(a) · W / (1 − q)^D = Σ_b P_{b,a} (W / num_b) E*(b) =: X, where W is a
        // common multiple of the num_b. Each num_b is a product of factors
        // (1 − q^t), so W takes the largest exponent of each factor.
        let nums: Vec<Laurent> = col.iter().map(|(b, _)| c_factor(b).0).collect();
        let mut exps: Vec<usize> = Vec::new();
        for (b, _) in &col {
            let mut e = vec![0usize; b.degree() as usize + 1];
            for (_, m) in b.grouped() {
                for x in &mut e[1..=m] {
                    *x += 1;
                }
            }
            exps.resize(exps.len().max(e.len()), 0);
            for (t, &x) in e.iter().enumerate() {
                exps[t] = exps[t].max(x);
            }
        }
        let mut w = Laurent::one();
        for (t, &x) in exps.iter().enumerate().skip(1) {
            for _ in 0..x {
                w = &w * &Laurent::one_minus_q_pow(t as i32);
            }
        }
        let mut x = LVec::new();
        for ((b, p), n) in col.iter().zip(&nums) {
            let f = w.div_exact(n).unwrap();
            add_lvec(&mut x, b.clone(), &(p * &f));
        }
        // bar(X · R) = X · R with R = (1−q)^D / W  ⇔  bar(X) · bar((1−q)^D) · W = X · (1−q)^D · bar(W)
        let dq = (0..a.degree()).fold(Laurent::one(), |acc, _| &acc * &Laurent::one_minus_q_pow(1));
        let lf = &dq.bar() * &w;
        let rf = &dq * &w.bar();
        let lhs: LVec = self.bar(&x).into_iter().map(|(b, c)| (b, &c * &lf)).filter(|(_, c)| !c.is_zero()).collect();
        let rhs: LVec = x.into_iter().map(|(b, c)| (b, &c * &rf)).filter(|(_, c)| !c.is_zero()).collect();
        Ok(lhs == rhs)
    }

    /// `(G(a), G(b))` modulo `v Z[[v]]`: returns the constant term, or an
    /// error if a negative power of `v` survives.
    pub fn g_pairing_mod_v(&self, a: &Multisegment, b: &Multisegment) -> Result<i64> {
        if a.weight() != b.weight() {
            return Ok(0);
        }
        let mut acc = Laurent::zero();
        for c in enumerate_weight(&a.weight()) {
            let row = self.prow(&c)?;
            let (pa, pb) = (row.get(a), row.get(b));
            if let (Some(pa), Some(pb)) = (pa, pb) {
                let (num, d) = c_factor(&c);
                // (E(c), E(c)) = (1 − q)^d / num, a power series in v with constant term 1
                let ser = series_ratio(&(0..d).fold(Laurent::one(), |x, _| &x * &Laurent::one_minus_q_pow(1)), &num, 2);
                acc.add_product(&(pa * pb), &ser);
            }
        }
        match acc.min_exp() {
            Some(e) if e < 0 => internal(format!("(G({}), G({})) has a pole at v = 0", a, b)),
            _ => Ok(acc.coeff(0)),
        }
    }

    /// The Kashiwara pairing of two vectors in `E*` coordinates, as a fraction
    /// `num / (1 − q)^den_exp`, using `(E*(a), E*(b)) = δ_{a,b} c_a`.
    pub fn kashiwara_pair(&self, x: &LVec, y: &LVec) -> (Laurent, u32) {
        let mut num = Laurent::zero();
        let mut d = 0;
        for (a, ca) in x {
            if let Some(cb) = y.get(a) {
                let (n, da) = c_factor(a);
                d = da;
                num.add_product(&(ca * cb), &n);
            }
        }
        (num, d)
    }

    /// `E_k'` on a vector in `E*` coordinates.
    pub fn q_derive(&self, k: i32, x: &LVec) -> LVec {
        let words = estar_to_words(x);
        let mut acc = HashMap::new();
        for (w, c) in &words {
            for (n, d) in eprime_word(k, w) {
                add_term(&mut acc, n, c * &d);
            }
        }
        words_to_estar(&acc)
    }

    /// `(1/[ℓ]!) E_k'^ℓ x` with exact division.
    pub fn q_divided_derive(&self, k: i32, l: u32, x: &LVec) -> Result<LVec> {
        let mut y = x.clone();
        for _ in 0..l {
            y = self.q_derive(k, &y);
        }
        divide_all(&y, &Laurent::qfactorial(l))
    }

    /// `n_{b,a}(q)`: the coefficient of `G*(b)` in `(1/[ℓ]!) E_k'^ℓ E*(a)`.
    pub fn n_poly(&self, b: &Multisegment, a: &Multisegment, k: i32) -> Result<Laurent> {
        let (wa, wb) = (a.weight(), b.weight());
        let l = wa.degree() as i64 - wb.degree() as i64;
        if l < 0 || wa.sub_scaled(&Weight::chi(k), l as u32).as_ref() != Some(&wb) {
            return pre(format!("weight({}) is not weight({}) + ℓχ_{}", a, b, k));
        }
        let x = self.q_divided_derive(k, l as u32, &[(a.clone(), Laurent::one())].into_iter().collect())?;
        Ok(self.estar_to_gstar(&x)?.get(b).cloned().unwrap_or_default())
    }

    /// `Σ_ℓ (1/[ℓ]!) E_k'^ℓ x` in `G*` coordinates, for `x` in `E*` coordinates.
    pub fn q_exp_derive(&self, k: i32, x: &LVec) -> Result<LVec> {
        let mut out = LVec::new();
        let mut cur = x.clone();
        let mut l = 0u32;
        while !cur.is_empty() {
            let y = divide_all(&cur, &Laurent::qfactorial(l))?;
            lvec_axpy(&mut out, &Laurent::one(), &self.estar_to_gstar(&y)?);
            cur = self.q_derive(k, &cur);
            l += 1;
        }
        Ok(out)
    }
}

/// `E_k'` of an ordered monomial via the twisted Leibniz rule
/// `E'(uw) = E'(u) w + v^{−(α_k, wt u)} u E'(w)` and `E_k'(T_s) = T_{s⁻}`
/// when `e(s) = k`.
pub fn eprime_word(k: i32, w: &[Segment]) -> HashMap<Word, Laurent> {
    let mut acc = HashMap::new();
    for (j, s) in w.iter().enumerate() {
        if s.end != k {
            continue;
        }
        let e = -alpha_form(k, &w[..j]) as i32;
        let mut nw: Word = w[..j].to_vec();
        nw.extend(s.minus());
        nw.extend_from_slice(&w[j + 1..]);
        for (n, c) in straighten_word(&nw) {
            add_term(&mut acc, n, c.shift(e));
        }
    }
    acc
}

/// Power series of `p / d` in `v`, truncated below `v^order` (requires `d`
/// to have a nonzero constant term ±1 and no negative powers).
fn series_ratio(p: &Laurent, d: &Laurent, order: i32) -> Laurent {
    assert_eq!(d.min_exp(), Some(0));
    let d0 = d.coeff(0);
    assert!(d0 == 1 || d0 == -1);
    let lo = p.min_exp().unwrap_or(0).min(0);
    let mut rem = p.clone();
    let mut q = Laurent::zero();
    for e in lo..order {
        let c = rem.coeff(e);
        if c == 0 {
            continue;
        }
        let t = Laurent::monomial(e, c * d0);
        rem -= &(&t * d);
        q += &t;
    }
    q
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ms;

    fn one(a: &str) -> LVec {
        [(ms(a), Laurent::one())].into_iter().collect()
    }

    #[test]
    fn straighten_examples() {
        let s1 = Segment::of(1, 1);
        let s2 = Segment::of(2, 2);
        assert_eq!(straighten(&[s1, s2], &Laurent::one()), one("[1]+[2]"));
        let r = straighten(&[s2, s1], &Laurent::one());
        assert_eq!(r[&ms("[1]+[2]")], Laurent::monomial(1, 1));
        assert_eq!(r[&ms("[1,2]")], Laurent::from_terms(&[(0, 1), (2, -1)]));
    }

    #[test]
    fn rank_one_basis() {
        let e = Engine::new();
        let p = e.prow(&ms("[1]+[2]")).unwrap();
        assert_eq!(p[&ms("[1,2]")], Laurent::monomial(1, 1));
        assert_eq!(p[&ms("[1]+[2]")], Laurent::one());
        let g = e.gstar(&ms("[1]+[2]")).unwrap();
        assert_eq!(g[&ms("[1,2]")], Laurent::monomial(1, -1));
    }

    #[test]
    fn derivation_generators() {
        let e = Engine::new();
        assert_eq!(e.q_derive(2, &one("[1,2]")), one("[1]"));
        assert!(e.q_derive(3, &one("[1,2]")).is_empty());
    }
}
