//! The orders `≤` and `⪯_k` on multisegments and the sets built from them.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::sync::Arc;

use crate::engine::{BelowSet, Engine};
use crate::error::{pre, Result};
use crate::multiseg::{Multisegment, Segment};

/// Output of [`Engine::q_set_min`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSet {
    pub members: Vec<Multisegment>,
    pub min: Multisegment,
    pub sharp: Multisegment,
}

impl Engine {
    /// `S(a) = {b : b ≤ a}`, closed under elementary operations.
    pub fn below_set(&self, a: &Multisegment) -> Arc<BelowSet> {
        self.tables.below.get_or(a, || {
            let mut seen: BTreeSet<Multisegment> = BTreeSet::new();
            let mut queue = VecDeque::from([a.clone()]);
            seen.insert(a.clone());
            while let Some(x) = queue.pop_front() {
                for y in x.elementary_covers() {
                    if seen.insert(y.clone()) {
                        queue.push_back(y);
                    }
                }
            }
            let mut members: Vec<Multisegment> = seen.into_iter().collect();
            members.sort_by_cached_key(|b| (-b.square_len_sum(), b.clone()));
            let index = members.iter().enumerate().map(|(i, b)| (b.clone(), i)).collect();
            Arc::new(BelowSet { members, index })
        })
    }

    /// `b ≤ a`.
    pub fn leq(&self, b: &Multisegment, a: &Multisegment) -> bool {
        b.weight() == a.weight() && self.below_set(a).contains(b)
    }

    /// `ℓ(b, a)`: the length of a longest chain from `a` down to `b`.
    pub fn ell(&self, b: &Multisegment, a: &Multisegment) -> Result<usize> {
        if !self.leq(b, a) {
            return pre(format!("{} is not below {}", b, a));
        }
        Ok(self.chain_lengths(a)[b])
    }

    /// `ℓ(b, a)` for every `b ∈ S(a)`.
    pub fn chain_lengths(&self, a: &Multisegment) -> HashMap<Multisegment, usize> {
        let s = self.below_set(a);
        let mut len: HashMap<Multisegment, usize> = HashMap::new();
        len.insert(a.clone(), 0);
        // Members are bottom-up, so walk them top-down.
        for x in s.members.iter().rev() {
            let Some(&lx) = len.get(x) else { continue };
            for y in x.elementary_covers() {
                let e = len.entry(y).or_insert(0);
                *e = (*e).max(lx + 1);
            }
        }
        len
    }

    /// `b ⪯_k a` by definition: `b ≤ a_Γ` for some `Γ ⊆ a(k)`.
    pub fn prec_k(&self, b: &Multisegment, a: &Multisegment, k: i32) -> bool {
        let (wa, wb) = (a.weight(), b.weight());
        a.gamma_family(k).iter().any(|(g, ag, _)| {
            wa.sub_scaled(&crate::Weight::chi(k), g.len() as u32).as_ref() == Some(&wb) && self.leq(b, ag)
        })
    }

    /// `b ⪯_k a` by the second characterization: `b = c_Γ` for some
    /// `c ∈ S(a)` and `Γ ⊆ c(k)`.
    pub fn prec_k_via_truncation(&self, b: &Multisegment, a: &Multisegment, k: i32) -> bool {
        self.below_set(a).members.iter().any(|c| gamma_preimage(c, b, k).is_some())
    }

    /// `Γ(a, k) = {b : b ⪯_k a}`.
    pub fn gamma_set(&self, a: &Multisegment, k: i32) -> BTreeSet<Multisegment> {
        let mut out = BTreeSet::new();
        for c in &self.below_set(a).members {
            for (_, b, _) in c.gamma_family(k) {
                out.insert(b);
            }
        }
        out
    }

    /// `Γ^i(a, k)`: members of `Γ(a, k)` of degree `deg(a) − i`.
    pub fn gamma_i_set(&self, a: &Multisegment, k: i32, i: u32) -> BTreeSet<Multisegment> {
        let d = a.degree();
        self.gamma_set(a, k).into_iter().filter(|b| b.degree() + i == d).collect()
    }

    /// `Q(a, b)`, its unique minimal element and that element's `♯`-lift.
    pub fn q_set_min(&self, a: &Multisegment, b: &Multisegment, k: i32) -> Result<QSet> {
        let members: Vec<Multisegment> =
            self.below_set(a).members.iter().filter(|c| gamma_preimage(c, b, k).is_some()).cloned().collect();
        if members.is_empty() {
            return pre(format!("{} is not ⪯_{} {}", b, k, a));
        }
        let minimal: Vec<&Multisegment> =
            members.iter().filter(|m| !members.iter().any(|c| c != *m && self.leq(c, m))).collect();
        if minimal.len() != 1 {
            return crate::error::internal(format!("Q({}, {}) has {} minimal elements", a, b, minimal.len()));
        }
        let min = minimal[0].clone();
        let gamma = gamma_preimage(&min, b, k).unwrap();
        let sharp = sharp_of(&min, &gamma, k);
        Ok(QSet { members, min, sharp })
    }

    /// Whether `(𝔸_k)` holds: `max b(Δ) + 1 < min e(Δ)`, `φ_{e(a)}(k) ≠ 0`
    /// and `φ_{e(a)}(k+1) = 0`.
    pub fn assumption_ak(a: &Multisegment, k: i32) -> bool {
        match (a.max_begin(), a.min_end()) {
            (Some(mb), Some(me)) => mb + 1 < me && a.ell_k(k) > 0 && a.ell_k(k + 1) == 0,
            _ => false,
        }
    }
}

/// The `Γ ⊆ c(k)` with `c_Γ = b`, if any. `Γ` is unique when it exists: it
/// removes from `c(k)` exactly the segments missing from `b`.
pub fn gamma_preimage(c: &Multisegment, b: &Multisegment, k: i32) -> Option<Vec<Segment>> {
    if c.degree() < b.degree() {
        return None;
    }
    let drop = (c.degree() - b.degree()) as usize;
    let mut gamma = Vec::new();
    for (s, m) in c.grouped() {
        if s.end != k {
            continue;
        }
        let kept = b.count(&s).min(m);
        gamma.extend(std::iter::repeat_n(s, m - kept));
    }
    if gamma.len() != drop {
        return None;
    }
    let t = c.gamma_truncate(k, &gamma).ok()?;
    (t == *b).then_some(gamma)
}

/// `c^♯ = (c ∖ c(k)) ∪ Γ ∪ {Δ⁺ : Δ ∈ c(k) ∖ Γ}`.
pub fn sharp_of(c: &Multisegment, gamma: &[Segment], k: i32) -> Multisegment {
    let ck = c.ending_at(k);
    let mut rest_k = Multisegment::new(ck.clone()).remove_all(gamma).expect("Γ ⊆ c(k)").segments().to_vec();
    for s in rest_k.iter_mut() {
        *s = s.plus();
    }
    let mut v: Vec<Segment> = c.segments().iter().filter(|s| s.end != k).copied().collect();
    v.extend_from_slice(gamma);
    v.extend(rest_k);
    Multisegment::new(v)
}
