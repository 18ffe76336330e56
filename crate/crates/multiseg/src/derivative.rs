//! The Grothendieck ring at `q = 1`: standard and irreducible bases, the
//! operator `𝒟^k`, and `𝒟^k(L_a)` by three routes.

use serde::{Deserialize, Serialize};
use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::engine::{Engine, LVec};
use crate::error::{internal, pre, Error, Result};
use crate::multiseg::{Multisegment, Segment};
use crate::parabolic::is_parabolic_type;

/// Basis label of a [`RingVector`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Basis {
    /// `π(a)`, a monomial in the segment generators.
    Standard,
    /// `L_a`.
    Irreducible,
}

/// A finite integer combination of `π(a)` or of `L_a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingVector {
    pub basis: Basis,
    pub terms: BTreeMap<Multisegment, i64>,
}

fn add_term(m: &mut BTreeMap<Multisegment, i64>, a: Multisegment, c: i64) {
    if c == 0 {
        return;
    }
    match m.entry(a) {
        Entry::Vacant(v) => {
            v.insert(c);
        }
        Entry::Occupied(mut o) => {
            let s = o.get().checked_add(c).expect("coefficient overflow");
            if s == 0 {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}

impl RingVector {
    pub fn zero(basis: Basis) -> RingVector {
        RingVector { basis, terms: BTreeMap::new() }
    }

    pub fn standard(a: &Multisegment) -> RingVector {
        RingVector { basis: Basis::Standard, terms: [(a.clone(), 1)].into_iter().collect() }
    }

    pub fn irreducible(a: &Multisegment) -> RingVector {
        RingVector { basis: Basis::Irreducible, terms: [(a.clone(), 1)].into_iter().collect() }
    }

    pub fn from_terms(basis: Basis, terms: impl IntoIterator<Item = (Multisegment, i64)>) -> RingVector {
        let mut v = RingVector::zero(basis);
        for (a, c) in terms {
            v.add(a, c);
        }
        v
    }

    pub fn add(&mut self, a: Multisegment, c: i64) {
        add_term(&mut self.terms, a, c);
    }

    pub fn axpy(&mut self, c: i64, o: &RingVector) {
        assert_eq!(self.basis, o.basis, "basis mismatch");
        for (a, x) in &o.terms {
            self.add(a.clone(), c.checked_mul(*x).expect("coefficient overflow"));
        }
    }

    pub fn coeff(&self, a: &Multisegment) -> i64 {
        self.terms.get(a).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms ordered by degree descending, then by multisegment.
    pub fn sorted_terms(&self) -> Vec<(Multisegment, i64)> {
        let mut v: Vec<(Multisegment, i64)> = self.terms.iter().map(|(a, c)| (a.clone(), *c)).collect();
        v.sort_by(|x, y| y.0.degree().cmp(&x.0.degree()).then_with(|| x.0.cmp(&y.0)));
        v
    }
}

impl fmt::Display for RingVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sym = match self.basis {
            Basis::Standard => "π",
            Basis::Irreducible => "L",
        };
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (a, c)) in self.sorted_terms().into_iter().enumerate() {
            let sign = if c < 0 {
                "-"
            } else if i > 0 {
                "+"
            } else {
                ""
            };
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", sign)?;
            if i > 0 && !sign.is_empty() {
                write!(f, " ")?;
            }
            if c.abs() != 1 {
                write!(f, "{}", c.abs())?;
            }
            write!(f, "{}({})", sym, a)?;
        }
        Ok(())
    }
}

/// Which computation assembles `𝒟^k(L_a)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    /// Divided powers of the Kashiwara derivation on `G*(a)`.
    Quantum,
    /// `L_a → π`, the standard-basis formula for `𝒟^k`, then back to `L`.
    BasisChange,
    /// θ-coefficients after reduction to parabolic type.
    ParabolicTheta,
}

impl Route {
    pub const ALL: [Route; 3] = [Route::Quantum, Route::BasisChange, Route::ParabolicTheta];

    pub fn name(&self) -> &'static str {
        match self {
            Route::Quantum => "quantum",
            Route::BasisChange => "basis_change",
            Route::ParabolicTheta => "parabolic_theta",
        }
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Route {
    type Err = Error;
    fn from_str(s: &str) -> Result<Route> {
        match s {
            "quantum" => Ok(Route::Quantum),
            "basis_change" | "basis-change" => Ok(Route::BasisChange),
            "parabolic_theta" | "parabolic-theta" | "theta" => Ok(Route::ParabolicTheta),
            _ => Err(Error::Parse { pos: 0, msg: format!("unknown route '{}'", s) }),
        }
    }
}

/// Output of [`Engine::reduce_to_parabolic`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Reduction {
    /// The parabolic-type multisegment `c′`.
    pub reduced: Multisegment,
    /// Left truncation passes, in the order they were created; each pass is
    /// a descending list of indices.
    pub left_passes: Vec<Vec<i32>>,
    /// Right truncation indices, ascending.
    pub rights: Vec<i32>,
}

impl Reduction {
    /// All left indices, flattened in creation order.
    pub fn lefts(&self) -> Vec<i32> {
        self.left_passes.iter().flatten().copied().collect()
    }

    /// `c` recovered from `c′` by truncating on the right, then undoing the
    /// left passes in reverse order.
    pub fn recover(&self) -> Multisegment {
        let mut c = self.reduced.truncate_seq(&self.rights);
        for pass in self.left_passes.iter().rev() {
            for &k1 in pass {
                c = c.left_truncate(k1);
            }
        }
        c
    }
}

/// Output of [`Engine::minimal_degree_analysis`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalDegree {
    /// Whether `L_{a^{(k)}}` occurs in `𝒟^k(L_a)` with multiplicity one.
    pub clean: bool,
    /// The unique term of minimal degree, when it exists.
    pub min_term: Option<Multisegment>,
}

/// `𝒟^k(π(a)) = Σ_{Γ ⊆ a(k)} π(a_Γ)`, with `Γ` ranging over labelled
/// subsets of `a(k)`.
pub fn dk_standard(x: &RingVector, k: i32) -> RingVector {
    assert_eq!(x.basis, Basis::Standard);
    let mut out = RingVector::zero(Basis::Standard);
    for (a, c) in &x.terms {
        for (_, b, m) in a.gamma_family(k) {
            out.add(b, c * m as i64);
        }
    }
    out
}

/// The classical derivation `e_k′(t_s) = δ_{k,e(s)} t_{s⁻}` with the ordinary
/// Leibniz rule, on the standard basis.
pub fn ek_prime(x: &RingVector, k: i32) -> RingVector {
    assert_eq!(x.basis, Basis::Standard);
    let mut out = RingVector::zero(Basis::Standard);
    for (a, c) in &x.terms {
        for (s, m) in a.grouped() {
            if s.end != k {
                continue;
            }
            let mut v = a.remove_all(&[s]).unwrap().segments().to_vec();
            v.extend(s.minus());
            out.add(Multisegment::new(v), c * m as i64);
        }
    }
    out
}

/// `Σ_n e_k′ⁿ / n!`, each division checked for exactness.
pub fn dk_via_exp(x: &RingVector, k: i32) -> Result<RingVector> {
    let mut out = x.clone();
    let mut cur = x.clone();
    let mut n = 0i64;
    let mut fact = 1i64;
    loop {
        cur = ek_prime(&cur, k);
        if cur.is_zero() {
            return Ok(out);
        }
        n += 1;
        fact *= n;
        for (a, c) in &cur.terms {
            if c % fact != 0 {
                return internal(format!("e′^{} of the input is not divisible by {}! at {}", n, n, a));
            }
            out.add(a.clone(), c / fact);
        }
    }
}

/// Product in the standard basis: `π(a)·π(b) = π(a + b)`.
fn multiply_standard(x: &RingVector, y: &RingVector) -> RingVector {
    let mut out = RingVector::zero(Basis::Standard);
    for (a, c) in &x.terms {
        for (b, d) in &y.terms {
            out.add(a.add(b), c.checked_mul(*d).expect("coefficient overflow"));
        }
    }
    out
}

fn lvec_at_one(x: &LVec) -> BTreeMap<Multisegment, i64> {
    x.iter().map(|(a, c)| (a.clone(), c.eval1())).filter(|(_, c)| *c != 0).collect()
}

impl Engine {
    /// `m(b, a) = P_{a,b}(1)` for all `b`: the decomposition `π(a) = Σ m(b,a) L_b`.
    pub fn mult_row(&self, a: &Multisegment) -> Result<BTreeMap<Multisegment, i64>> {
        Ok(lvec_at_one(&*self.prow(a)?))
    }

    /// `m̃(b, a)`: the decomposition `L_a = Σ m̃(b,a) π(b)`.
    pub fn inverse_mult_row(&self, a: &Multisegment) -> Result<BTreeMap<Multisegment, i64>> {
        Ok(lvec_at_one(&*self.gstar(a)?))
    }

    pub fn to_irreducible(&self, x: &RingVector) -> Result<RingVector> {
        if x.basis == Basis::Irreducible {
            return Ok(x.clone());
        }
        let mut out = RingVector::zero(Basis::Irreducible);
        for (a, c) in &x.terms {
            for (b, m) in self.mult_row(a)? {
                out.add(b, c * m);
            }
        }
        Ok(out)
    }

    pub fn to_standard(&self, x: &RingVector) -> Result<RingVector> {
        if x.basis == Basis::Standard {
            return Ok(x.clone());
        }
        let mut out = RingVector::zero(Basis::Standard);
        for (a, c) in &x.terms {
            for (b, m) in self.inverse_mult_row(a)? {
                out.add(b, c * m);
            }
        }
        Ok(out)
    }

    /// Ring product; the result is in the basis of `x`.
    pub fn multiply(&self, x: &RingVector, y: &RingVector) -> Result<RingVector> {
        let p = multiply_standard(&self.to_standard(x)?, &self.to_standard(y)?);
        match x.basis {
            Basis::Standard => Ok(p),
            Basis::Irreducible => self.to_irreducible(&p),
        }
    }

    /// `𝒟^k` on either basis; the result is in the basis of `x`.
    pub fn dk(&self, x: &RingVector, k: i32) -> Result<RingVector> {
        let d = dk_standard(&self.to_standard(x)?, k);
        match x.basis {
            Basis::Standard => Ok(d),
            Basis::Irreducible => self.to_irreducible(&d),
        }
    }

    /// `𝒟^k(L_a)` in the irreducible basis by the given route.
    pub fn derive_irreducible(&self, a: &Multisegment, k: i32, route: Route) -> Result<RingVector> {
        let terms = match route {
            Route::Quantum => self.dk_quantum(a, k)?,
            Route::BasisChange => (*self.dk_basis_change(a, k)?).clone(),
            Route::ParabolicTheta => self.dk_theta(a, k)?,
        };
        Ok(RingVector { basis: Basis::Irreducible, terms })
    }

    fn dk_quantum(&self, a: &Multisegment, k: i32) -> Result<BTreeMap<Multisegment, i64>> {
        let g = self.gstar(a)?;
        Ok(lvec_at_one(&self.q_exp_derive(k, &g)?))
    }

    /// Basis-change route, memoized.
    fn dk_basis_change(&self, a: &Multisegment, k: i32) -> Result<Arc<BTreeMap<Multisegment, i64>>> {
        let key = (a.clone(), k);
        if let Some(v) = self.tables.dk_irr.get(&key) {
            return Ok(v);
        }
        let d = self.dk(&RingVector::irreducible(a), k)?;
        Ok(self.tables.dk_irr.insert(key, Arc::new(d.terms)))
    }

    /// The left operator `^k𝒟`, conjugating `𝒟^{−k}` by the reflection
    /// `[i,j] ↦ [−j,−i]`; the result is in the basis of `x`.
    pub fn left_dk(&self, x: &RingVector, k: i32) -> Result<RingVector> {
        let r = RingVector::from_terms(x.basis, x.terms.iter().map(|(a, c)| (a.reflect(), *c)));
        let d = self.dk(&r, -k)?;
        Ok(RingVector::from_terms(d.basis, d.terms.into_iter().map(|(a, c)| (a.reflect(), c))))
    }

    /// The surrogate for `a ∈ S(a)_{k}`: `L_{a^{(k)}}` occurs in `𝒟^k(L_a)`
    /// with multiplicity one.
    pub fn in_s_k(&self, a: &Multisegment, k: i32) -> Result<bool> {
        Ok(self.min_term_coeff(a, k)? == 1)
    }

    /// The coefficient of `L_{a^{(k)}}` in `𝒟^k(L_a)`. Only `b ∈ S(a)` with
    /// `ℓ_{b,k} = ℓ_{a,k}` reach the weight of `a^{(k)}`, through `Γ = b(k)`,
    /// so it equals `Σ_b m̃(b,a) m(a^{(k)}, b^{(k)})`.
    pub fn min_term_coeff(&self, a: &Multisegment, k: i32) -> Result<i64> {
        let lk = a.ell_k(k);
        if lk == 0 {
            return Ok(1);
        }
        if let Some(d) = self.tables.dk_irr.get(&(a.clone(), k)) {
            return Ok(d.get(&a.truncate(k)).copied().unwrap_or(0));
        }
        let t = a.truncate(k);
        let mut acc = 0i64;
        for (b, c) in self.inverse_mult_row(a)? {
            if b.ell_k(k) != lk {
                continue;
            }
            if let Some(m) = self.prow(&b.truncate(k))?.get(&t) {
                acc += c * m.eval1();
            }
        }
        Ok(acc)
    }

    /// Left version of [`Engine::in_s_k`].
    pub fn in_k_s(&self, a: &Multisegment, k: i32) -> Result<bool> {
        self.in_s_k(&a.reflect(), -k)
    }

    /// `Γ(a,k)_{k₁}` with the bijection `ψ_{k₁}(d) = d^{(k₁)}`: pairs
    /// `(d, d^{(k₁)})` for `d ∈ Γ(a,k)` with `d ∈ S(d)_{k₁}`, and when
    /// `left` is set the analogous pairs for `_{k₁}Γ(a,k)` and `^{(k₁)}d`.
    pub fn transfer_filters(
        &self,
        a: &Multisegment,
        k: i32,
        k1: i32,
        left: bool,
    ) -> Result<Vec<(Multisegment, Multisegment)>> {
        let mut out = Vec::new();
        for d in self.gamma_set(a, k) {
            let keep = if left { self.in_k_s(&d, k1)? } else { self.in_s_k(&d, k1)? };
            if keep {
                let t = if left { d.left_truncate(k1) } else { d.truncate(k1) };
                out.push((d, t));
            }
        }
        Ok(out)
    }

    /// Moves `𝒟^k(L_c)` to `𝒟^k(L_b)` with `b = c^{(k₁)}` (or `^{(k₁)}c`).
    fn transfer(
        &self,
        c: &Multisegment,
        coeffs: &BTreeMap<Multisegment, i64>,
        k: i32,
        k1: i32,
        left: bool,
    ) -> Result<(Multisegment, BTreeMap<Multisegment, i64>)> {
        let (ok, b) =
            if left { (self.in_k_s(c, k1)?, c.left_truncate(k1)) } else { (self.in_s_k(c, k1)?, c.truncate(k1)) };
        if !ok {
            return internal(format!("{} fails the multiplicity-one test at {}", c, k1));
        }
        let gb = self.gamma_set(&b, k);
        let mut new: BTreeMap<Multisegment, i64> = BTreeMap::new();
        for (d, &x) in coeffs {
            if d == c {
                continue;
            }
            let i = c.degree() - d.degree();
            let keep = if left { self.in_k_s(d, k1)? } else { self.in_s_k(d, k1)? };
            if !keep {
                continue;
            }
            let dd = if left { d.left_truncate(k1) } else { d.truncate(k1) };
            if gb.contains(&dd) && b.degree() - dd.degree() == i {
                add_term(&mut new, dd, x);
            }
        }
        add_term(&mut new, b.clone(), 1);
        Ok((b, new))
    }

    /// Reduces `c` to parabolic type: left-extend until beginnings are
    /// distinct and lie below every end and below `k`, then right-extend
    /// every end above `k` when `ℓ_{c,k+1} > 0`.
    pub fn reduce_to_parabolic(&self, c: &Multisegment, k: i32) -> Result<Reduction> {
        if c.ell_k(k) == 0 {
            return pre(format!("no segment of {} ends at {}", c, k));
        }
        let mut cur = c.clone();
        let mut passes = Vec::new();
        loop {
            let begins: BTreeMap<i32, usize> = cur.segments().iter().fold(BTreeMap::new(), |mut m, s| {
                *m.entry(s.begin).or_insert(0) += 1;
                m
            });
            let Some((&i0, _)) = begins.iter().find(|(_, &m)| m > 1) else { break };
            let d0 = cur.segments().iter().filter(|s| s.begin == i0).max_by_key(|s| (s.begin, s.end)).copied().unwrap();
            let mut v: Vec<Segment> = cur.segments().iter().filter(|s| s.begin < i0).map(|s| s.left_plus()).collect();
            v.push(d0.left_plus());
            let mut rest = cur.remove_all(&[d0]).unwrap().segments().to_vec();
            rest.retain(|s| s.begin >= i0);
            v.extend(rest);
            let mut seq: BTreeSet<i32> = begins.keys().filter(|&&b| b < i0).map(|b| b - 1).collect();
            seq.insert(i0 - 1);
            passes.push(seq.into_iter().rev().collect());
            let next = Multisegment::new(v);
            if next.degree() <= cur.degree() {
                return internal("left extension did not grow the multisegment");
            }
            cur = next;
        }
        loop {
            let (mb, me) = (cur.max_begin().unwrap(), cur.min_end().unwrap());
            if mb <= me && mb < k {
                break;
            }
            let seq: BTreeSet<i32> = cur.segments().iter().map(|s| s.begin - 1).collect();
            passes.push(seq.into_iter().rev().collect());
            cur = cur.map_segments(|s| Some(s.left_plus()));
        }
        let mut rights = Vec::new();
        if cur.ell_k(k + 1) > 0 {
            rights = cur.distinct_ends().into_iter().filter(|&e| e > k).map(|e| e + 1).collect();
            cur = cur.map_segments(|s| Some(if s.end > k { s.plus() } else { *s }));
        }
        Ok(Reduction { reduced: cur, left_passes: passes, rights })
    }

    /// Parabolic route: reduce, apply the θ formula, and transfer the result
    /// back along the reduction.
    pub fn dk_theta(&self, a: &Multisegment, k: i32) -> Result<BTreeMap<Multisegment, i64>> {
        if a.ell_k(k) == 0 {
            return Ok([(a.clone(), 1)].into_iter().collect());
        }
        let red = self.reduce_to_parabolic(a, k)?;
        let (mut c, mut coeffs) = (red.reduced.clone(), self.dk_theta_direct(&red.reduced, k)?);
        for &k1 in &red.rights {
            (c, coeffs) = self.transfer(&c, &coeffs, k, k1, false)?;
        }
        for pass in red.left_passes.iter().rev() {
            for &k1 in pass {
                (c, coeffs) = self.transfer(&c, &coeffs, k, k1, true)?;
            }
        }
        if &c != a {
            return internal(format!("reduction of {} came back as {}", a, c));
        }
        Ok(coeffs)
    }

    /// Whether `a` can be fed to the θ formula without reduction.
    pub fn theta_direct_applies(a: &Multisegment, k: i32) -> bool {
        is_parabolic_type(a) && a.ell_k(k + 1) == 0 && a.max_begin().is_some_and(|b| b < k)
    }

    /// Minimal degree terms of `𝒟^k(L_a)`.
    pub fn minimal_degree_analysis(&self, a: &Multisegment, k: i32) -> Result<MinimalDegree> {
        let d = self.dk_basis_change(a, k)?;
        let t = a.truncate(k);
        let clean = d.get(&t).copied() == Some(1);
        let min_deg = d.keys().map(|b| b.degree()).min();
        let at_min: Vec<&Multisegment> = d.keys().filter(|b| Some(b.degree()) == min_deg).collect();
        let min_term = (at_min.len() == 1).then(|| at_min[0].clone());
        if !clean && d.keys().any(|b| b.degree() <= t.degree()) {
            return internal(format!("𝒟^{}(L_{}) has a term of degree ≤ deg {} without being clean", k, a, t));
        }
        Ok(MinimalDegree { clean, min_term })
    }

    /// `𝒟^k(L_a)` by every applicable route, with whether they agree.
    pub fn derive_all_routes(&self, a: &Multisegment, k: i32) -> Result<(Vec<(Route, RingVector)>, bool)> {
        let mut out = Vec::new();
        for r in Route::ALL {
            out.push((r, self.derive_irreducible(a, k, r)?));
        }
        let agree = out.windows(2).all(|w| w[0].1 == w[1].1);
        Ok((out, agree))
    }
}
