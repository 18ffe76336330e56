//! Multisegments of parabolic type, the map `Φ_{J,∅}` and the θ-coefficient
//! system for derivatives of parabolic-type irreducibles.

use std::collections::{BTreeMap, HashMap};

use crate::engine::Engine;
use crate::error::{pre, Result};
use crate::laurent::Laurent;
use crate::multiseg::{Multisegment, Segment};
use crate::weyl::{bruhat_leq, in_parabolic, is_min_rep, min_coset_reps, JSet, Perm, QPoly};

/// A multisegment of parabolic type `(J, ∅)`, described by its sorted
/// beginnings and ends.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParabolicBase {
    pub begins: Vec<i32>,
    pub ends: Vec<i32>,
    pub j: JSet,
}

/// Whether `a` has pairwise distinct beginnings and `max b ≤ min e`.
pub fn is_parabolic_type(a: &Multisegment) -> bool {
    match (a.max_begin(), a.min_end()) {
        (Some(mb), Some(me)) => a.distinct_begins() && mb <= me,
        _ => false,
    }
}

impl ParabolicBase {
    /// The base whose beginnings and ends are those of `a`.
    pub fn new(a: &Multisegment) -> Result<ParabolicBase> {
        if !is_parabolic_type(a) {
            return pre(format!("{} is not of parabolic type", a));
        }
        let mut begins: Vec<i32> = a.segments().iter().map(|s| s.begin).collect();
        begins.sort();
        let ends: Vec<i32> = a.segments().iter().map(|s| s.end).collect();
        let j = (1..ends.len()).filter(|&i| ends[i - 1] == ends[i]).collect();
        Ok(ParabolicBase { begins, ends, j })
    }

    pub fn n(&self) -> usize {
        self.begins.len()
    }

    /// Minimal coset representatives `S_n^{J,∅}`.
    pub fn reps(&self) -> Vec<Perm> {
        min_coset_reps(&self.j, self.n())
    }

    /// `Φ(w) = Σ_j [b_j, e_{w(j)}]`.
    pub fn phi(&self, w: &Perm) -> Result<Multisegment> {
        if w.n() != self.n() || !is_min_rep(&self.j, w) {
            return pre(format!(
                "{} is not a minimal representative for J = {{{}}}",
                w,
                crate::weyl::format_jset(&self.j)
            ));
        }
        Ok(self.phi_unchecked(w))
    }

    fn phi_unchecked(&self, w: &Perm) -> Multisegment {
        Multisegment::new((1..=self.n()).map(|j| Segment::of(self.begins[j - 1], self.ends[w.at(j) - 1])).collect())
    }

    /// `a_Id = Φ(id)`.
    pub fn identity_ms(&self) -> Multisegment {
        self.phi_unchecked(&Perm::identity(self.n()))
    }

    /// The minimal representative `w` with `Φ(w) = a`.
    pub fn phi_inv(&self, a: &Multisegment) -> Result<Perm> {
        let by_begin: BTreeMap<i32, i32> = a.segments().iter().map(|s| (s.begin, s.end)).collect();
        let mut ends: Vec<i32> = a.segments().iter().map(|s| s.end).collect();
        ends.sort();
        if a.len() != self.n() || by_begin.keys().copied().ne(self.begins.iter().copied()) || ends != self.ends {
            return pre(format!("{} is not in the image of Φ", a));
        }
        let mut used: HashMap<i32, usize> = HashMap::new();
        let mut w = Vec::with_capacity(self.n());
        for b in &self.begins {
            let e = by_begin[b];
            let first = self.ends.iter().position(|&x| x == e).unwrap();
            let u = used.entry(e).or_insert(0);
            w.push((first + *u + 1) as u8);
            *u += 1;
        }
        Ok(Perm(w))
    }
}

/// Output of [`parabolic_j_split`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JSplit {
    pub a1: Multisegment,
    pub a2: Multisegment,
    pub j1: JSet,
    pub j2: JSet,
}

/// `a(k)` sorted by beginning ascending.
fn members_at(a: &Multisegment, k: i32) -> (Vec<Segment>, Vec<Segment>) {
    let (mut at, rest): (Vec<Segment>, Vec<Segment>) = a.segments().iter().partition(|s| s.end == k);
    at.sort_by_key(|s| s.begin);
    (at, rest)
}

/// `a₁` extends the `r₀` members of `a(k)` with largest beginnings to end
/// `k+1`; `a₂` truncates the `r₀` members with smallest beginnings to end
/// `k−1`.
pub fn parabolic_j_split(a: &Multisegment, k: i32, r0: usize) -> Result<JSplit> {
    if !is_parabolic_type(a) {
        return pre(format!("{} is not of parabolic type", a));
    }
    let lk = a.ell_k(k);
    if lk == 0 || a.ell_k(k + 1) != 0 || r0 > lk {
        return pre(format!("need ℓ_k > 0, ℓ_(k+1) = 0 and r₀ ≤ ℓ_k for {} at k = {}", a, k));
    }
    if a.max_begin().unwrap() >= k {
        return pre(format!("a segment of {} begins at k = {}", a, k));
    }
    let (at, rest) = members_at(a, k);
    let mut v1 = rest.clone();
    v1.extend(at[..lk - r0].iter().copied());
    v1.extend(at[lk - r0..].iter().map(|s| s.plus()));
    let mut v2 = rest;
    v2.extend(at[..r0].iter().map(|s| Segment::of(s.begin, k - 1)));
    v2.extend(at[r0..].iter().copied());
    let (a1, a2) = (Multisegment::new(v1), Multisegment::new(v2));
    let (j1, j2) = (ParabolicBase::new(&a1)?.j, ParabolicBase::new(&a2)?.j);
    Ok(JSplit { a1, a2, j1, j2 })
}

/// `q^e` as a Laurent polynomial in `v = q^{1/2}`.
fn qpoly_to_laurent(p: &QPoly, shift: usize) -> Laurent {
    let terms: Vec<(i32, i64)> = p.0.iter().enumerate().map(|(e, &c)| (2 * (e + shift) as i32, c)).collect();
    Laurent::from_terms(&terms)
}

impl Engine {
    /// `θ_J^{J₁}(u, t)(q)` for every `u ∈ S^{J,∅}`, solving
    /// `Σ_ρ q^{ℓ(ρ)} P^{J₁,∅}_{ρw,t} = Σ_u θ(u,t) P^{J,∅}_{w,u}` by descending
    /// induction on `w`. Here `ρ` runs over minimal representatives of
    /// `S_{J₁} \ S_J`. Values are in `v = q^{1/2}`, so `q^e` is `v^{2e}`.
    pub fn theta_system(&self, j: &JSet, j1: &JSet, t: &Perm) -> Result<BTreeMap<Perm, Laurent>> {
        self.theta_above(j, j1, t, None)
    }

    /// The θ system restricted to `u ≥ floor`, which the induction never
    /// leaves.
    fn theta_above(&self, j: &JSet, j1: &JSet, t: &Perm, floor: Option<&Perm>) -> Result<BTreeMap<Perm, Laurent>> {
        let n = t.n();
        if !j1.is_subset(j) {
            return pre("θ needs J₁ ⊆ J");
        }
        if !is_min_rep(j1, t) {
            return pre(format!("{} is not a minimal representative for J₁", t));
        }
        let rhos: Vec<Perm> = min_coset_reps(j1, n).into_iter().filter(|r| in_parabolic(j, r)).collect();
        let mut order = min_coset_reps(j, n);
        if let Some(f) = floor {
            order.retain(|u| bruhat_leq(f, u));
        }
        order.sort_by_key(|w| std::cmp::Reverse(w.length()));
        let mut theta: BTreeMap<Perm, Laurent> = BTreeMap::new();
        for w in &order {
            let mut lhs = Laurent::zero();
            for rho in &rhos {
                let p = self.parabolic_kl(j1, &rho.compose(w), t)?;
                lhs += &qpoly_to_laurent(&p, rho.length());
            }
            for (u, th) in &theta {
                if bruhat_leq(w, u) {
                    let p = qpoly_to_laurent(&self.parabolic_kl(j, w, u)?, 0);
                    lhs -= &(th * &p);
                }
            }
            if !lhs.is_zero() {
                theta.insert(w.clone(), lhs);
            }
        }
        Ok(theta)
    }

    /// A single coefficient `θ_J^{J₁}(w, t)(q)`.
    pub fn theta(&self, j: &JSet, j1: &JSet, w: &Perm, t: &Perm) -> Result<Laurent> {
        if !is_min_rep(j, w) {
            return pre(format!("{} is not a minimal representative for J", w));
        }
        Ok(self.theta_above(j, j1, t, Some(w))?.remove(w).unwrap_or_default())
    }

    /// `𝒟^k(L_a)` for `a` of parabolic type with `ℓ_{a,k+1} = 0` and every
    /// beginning below `k`, assembled from θ-coefficients.
    pub fn dk_theta_direct(&self, a: &Multisegment, k: i32) -> Result<BTreeMap<Multisegment, i64>> {
        let lk = a.ell_k(k);
        if lk == 0 {
            return Ok([(a.clone(), 1)].into_iter().collect());
        }
        let base = ParabolicBase::new(a)?;
        let w = base.phi_inv(a)?;
        let a_id = base.identity_ms();
        let mut out: BTreeMap<Multisegment, i64> = BTreeMap::new();
        for r0 in 0..=lk {
            let s2 = parabolic_j_split(&a_id, k, r0)?;
            let s1 = parabolic_j_split(&a_id, k, lk - r0)?;
            let (b1, b2) = (ParabolicBase::new(&s1.a1)?, ParabolicBase::new(&s2.a2)?);
            for v in b2.reps() {
                let av = b2.phi(&v)?;
                let sharp = flat_sharp(&av, k, r0);
                let tv = b1.phi_inv(&sharp)?;
                let th = self.theta(&base.j, &b1.j, &w, &tv)?.eval1();
                if th != 0 {
                    *out.entry(av).or_insert(0) += th;
                }
            }
        }
        Ok(out)
    }
}

/// `(a_{v♭})^♯`: extend the `r₀` members of `a_v(k−1)` with smallest
/// beginnings to `k`, then extend the members of `a_v(k)` to `k+1`.
pub fn flat_sharp(av: &Multisegment, k: i32, r0: usize) -> Multisegment {
    let (at_km1, _) = members_at(av, k - 1);
    let mut v: Vec<Segment> = av.segments().iter().filter(|s| s.end != k - 1 && s.end != k).copied().collect();
    v.extend(at_km1[..r0].iter().map(|s| Segment::of(s.begin, k)));
    v.extend(at_km1[r0..].iter().copied());
    v.extend(av.ending_at(k).iter().map(|s| s.plus()));
    Multisegment::new(v)
}

/// `a_{v♭}`: extend the `r₀` members of `a_v(k−1)` with smallest beginnings
/// to `k`.
pub fn flat(av: &Multisegment, k: i32, r0: usize) -> Multisegment {
    let (at_km1, _) = members_at(av, k - 1);
    let mut v: Vec<Segment> = av.segments().iter().filter(|s| s.end != k - 1).copied().collect();
    v.extend(at_km1[..r0].iter().map(|s| Segment::of(s.begin, k)));
    v.extend(at_km1[r0..].iter().copied());
    Multisegment::new(v)
}
