//! Acceptance suite: one line per criterion, nonzero exit status if any fails.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use multiseg::derivative::{dk_standard, dk_via_exp};
use multiseg::grassmann::{GrBase, GrPartition};
use multiseg::multiseg::{enumerate_in_box, enumerate_normalized, enumerate_weight};
use multiseg::parabolic::{is_parabolic_type, ParabolicBase};
use multiseg::weyl::{min_coset_reps, JSet, Perm};
use multiseg::{ms, Basis, Engine, Laurent, Multisegment, RingVector, Route, Segment, Weight};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;

/// Normalized multisegments of degree ≤ `d` with every `k` from 0 to one past
/// the largest end.
fn inputs(d: u32) -> Vec<(Multisegment, i32)> {
    let mut out = Vec::new();
    for a in enumerate_normalized(d) {
        for k in 0..=a.max_end().unwrap() + 1 {
            out.push((a.clone(), k));
        }
    }
    out
}

fn within(t0: Instant, limit: Duration, what: &str) -> Result<(), String> {
    if t0.elapsed() > limit {
        return Err(format!("{} took {:.1?}, limit {:?}", what, t0.elapsed(), limit));
    }
    Ok(())
}

fn c1(e: &Engine) -> Outcome {
    let t0 = Instant::now();
    let phi = ms("[1]+[2]").weight();
    let m = e.canonical_basis(&phi).map_err(|x| x.to_string())?;
    let (a, b) = (ms("[1]+[2]"), ms("[1,2]"));
    let expect: BTreeMap<Multisegment, BTreeMap<Multisegment, Laurent>> = [
        (a.clone(), [(a.clone(), Laurent::one()), (b.clone(), Laurent::monomial(1, 1))].into_iter().collect()),
        (b.clone(), [(b.clone(), Laurent::one())].into_iter().collect()),
    ]
    .into_iter()
    .collect();
    if m.rows != expect {
        return Err(format!("P-matrix {:?}", m.rows));
    }
    let mult = e.mult_row(&a).map_err(|x| x.to_string())?;
    if mult.get(&b) != Some(&1) {
        return Err(format!("m([1,2],[1]+[2]) = {:?}", mult.get(&b)));
    }
    within(t0, Duration::from_secs(1), "rank one basis")?;
    Ok(format!("P_[1]+[2],[1,2] = v, m = 1, {:.1?}", t0.elapsed()))
}

fn c2() -> Outcome {
    let t0 = Instant::now();
    let mut n = 0;
    for a in enumerate_in_box(-3, 4, 6) {
        let x = RingVector::standard(&a);
        for k in -3..=4 {
            n += 1;
            if dk_via_exp(&x, k).map_err(|e| e.to_string())? != dk_standard(&x, k) {
                return Err(format!("differ on {} at k = {}", a, k));
            }
        }
    }
    within(t0, Duration::from_secs(120), "operator equality")?;
    Ok(format!("{} (a, k) pairs, {:.1?}", n, t0.elapsed()))
}

fn random_monomial(rng: &mut StdRng, budget: u32) -> Multisegment {
    let mut segs = Vec::new();
    let mut left = rng.gen_range(1..=budget);
    while left > 0 {
        let len = rng.gen_range(1..=left.min(3)) as i32;
        let b = rng.gen_range(1..=5);
        segs.push(Segment::of(b, b + len - 1));
        left -= len as u32;
    }
    Multisegment::new(segs)
}

fn c3(e: &Engine) -> Outcome {
    let t0 = Instant::now();
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for i in 0..200 {
        let a = random_monomial(&mut rng, 5);
        let b = random_monomial(&mut rng, 8 - a.degree());
        let k = rng.gen_range(1..=7);
        let err = |x: multiseg::Error| x.to_string();
        // Standard basis, with 𝒟^k as the exponential of e_k′.
        let lhs = dk_via_exp(&RingVector::standard(&a.add(&b)), k).map_err(err)?;
        let rhs = e
            .multiply(
                &dk_via_exp(&RingVector::standard(&a), k).map_err(err)?,
                &dk_via_exp(&RingVector::standard(&b), k).map_err(err)?,
            )
            .map_err(err)?;
        if lhs != rhs {
            return Err(format!("pair {}: π({})·π({}) at k = {}", i, a, b, k));
        }
        // Irreducible basis, with 𝒟^k(L_c) from the quantum algebra.
        let prod = e.multiply(&RingVector::irreducible(&a), &RingVector::irreducible(&b)).map_err(err)?;
        let mut lhs = RingVector::zero(Basis::Irreducible);
        for (c, m) in &prod.terms {
            lhs.axpy(*m, &e.derive_irreducible(c, k, Route::Quantum).map_err(err)?);
        }
        let rhs = e
            .multiply(
                &e.derive_irreducible(&a, k, Route::Quantum).map_err(err)?,
                &e.derive_irreducible(&b, k, Route::Quantum).map_err(err)?,
            )
            .map_err(err)?;
        if lhs != rhs {
            return Err(format!("pair {}: L({})·L({}) at k = {}", i, a, b, k));
        }
    }
    Ok(format!("200 pairs in both bases, {:.1?}", t0.elapsed()))
}

fn c4(e: &Engine) -> Outcome {
    let t0 = Instant::now();
    let mut pairs = 0usize;
    for (a, k) in inputs(6) {
        let ell = a.ell_k(k) as u32;
        let gamma = e.gamma_set(&a, k);
        for j in 0..=ell {
            let Some(w) = a.weight().sub_scaled(&Weight::chi(k), j) else { continue };
            for b in enumerate_weight(&w) {
                pairs += 1;
                let d = e.prec_k(&b, &a, k);
                if d != e.prec_k_via_truncation(&b, &a, k) || d != gamma.contains(&b) {
                    return Err(format!("characterizations differ on {} ⪯_{} {}", b, k, a));
                }
            }
        }
        if !gamma.contains(&a) {
            return Err(format!("not reflexive at {}", a));
        }
        for b in &gamma {
            let gb = e.gamma_set(b, k);
            if !gb.is_subset(&gamma) {
                return Err(format!("not transitive through {} ⪯_{} {}", b, k, a));
            }
            if b != &a && gb.contains(&a) {
                return Err(format!("not antisymmetric on {} and {}", a, b));
            }
        }
    }
    Ok(format!("{} pairs, {:.1?}", pairs, t0.elapsed()))
}

fn c5(e: &Engine) -> Outcome {
    let t0 = Instant::now();
    let mut n = 0;
    for (a, k) in inputs(6) {
        n += 1;
        let d = e.to_irreducible(&dk_standard(&RingVector::standard(&a), k)).map_err(|x| x.to_string())?;
        if d.terms.values().any(|&c| c < 0) {
            return Err(format!("negative coefficient in 𝒟^{}(π({}))", k, a));
        }
        let support: BTreeSet<Multisegment> = d.terms.keys().cloned().collect();
        if support != e.gamma_set(&a, k) {
            return Err(format!("support of 𝒟^{}(π({})) differs from Γ", k, a));
        }
    }
    Ok(format!("{} (a, k) pairs, {:.1?}", n, t0.elapsed()))
}

/// Parabolic-type inputs: beginnings `1..=n`, ends weakly increasing in
/// `n..=n+top`.
fn parabolic_family(n: usize, top: i32) -> Vec<Multisegment> {
    fn rec(i: usize, n: usize, lo: i32, hi: i32, cur: &mut Vec<i32>, out: &mut Vec<Vec<i32>>) {
        if i == n {
            out.push(cur.clone());
            return;
        }
        for e in lo..=hi {
            cur.push(e);
            rec(i + 1, n, e, hi, cur, out);
            cur.pop();
        }
    }
    let mut ends = Vec::new();
    rec(0, n, n as i32, n as i32 + top, &mut Vec::new(), &mut ends);
    ends.into_iter()
        .map(|es| Multisegment::new(es.iter().enumerate().map(|(i, &e)| Segment::of(i as i32 + 1, e)).collect()))
        .collect()
}

fn c6(e: &Engine) -> Outcome {
    let t0 = Instant::now();
    let err = |x: multiseg::Error| x.to_string();
    let mut n1 = 0;
    for (a, k) in inputs(6) {
        n1 += 1;
        let q = e.derive_irreducible(&a, k, Route::Quantum).map_err(err)?;
        let b = e.derive_irreducible(&a, k, Route::BasisChange).map_err(err)?;
        if q != b {
            return Err(format!("quantum {} vs basis_change {} on {} at k = {}", q, b, a, k));
        }
    }
    let mut n2 = 0;
    for n in 1..=6 {
        let top = if n <= 5 { 2 } else { 1 };
        for a in parabolic_family(n, top) {
            assert!(is_parabolic_type(&a));
            for k in a.distinct_ends() {
                n2 += 1;
                let q = e.derive_irreducible(&a, k, Route::Quantum).map_err(err)?;
                let t = e.derive_irreducible(&a, k, Route::ParabolicTheta).map_err(err)?;
                if q != t {
                    return Err(format!("quantum {} vs parabolic_theta {} on {} at k = {}", q, t, a, k));
                }
            }
        }
    }
    within(t0, Duration::from_secs(600), "route agreement")?;
    Ok(format!("{} (a, k) for quantum = basis_change, {} parabolic (a, k) for θ, {:.1?}", n1, n2, t0.elapsed()))
}

fn c7(e: &Engine) -> Outcome {
    let t0 = Instant::now();
    let err = |x: multiseg::Error| x.to_string();
    let mut bases = vec![GrBase::new(&ms("[1,4]+[2,5]+[3,5]+[4,5]"), 5).map_err(err)?];
    for n in 1..=5usize {
        for r in 0..=n {
            bases.push(GrBase::standard(r, n - r, n as i32 + 1).map_err(err)?);
        }
    }
    let (mut total, mut weighted_ok) = (0, 0);
    let mut bad = Vec::new();
    for base in &bases {
        for r1 in base.r..=base.n() {
            for mu in GrPartition::all(r1, (base.n() - r1) as u32) {
                total += 1;
                let n = e.orbit_count_n(base, &mu).map_err(err)? as i64;
                let q = e.orbit_count_quantum(base, &mu).map_err(err)?;
                if e.orbit_count_weighted(base, &mu).map_err(err)? == q {
                    weighted_ok += 1;
                }
                if n != q {
                    bad.push(format!("{} μ={}: {} orbits, n = {}", base.multisegment(), mu, n, q));
                }
            }
        }
    }
    let summary = format!(
        "{} of {} cases match; stalk-weighted count matches in {} of {}",
        total - bad.len(),
        total,
        weighted_ok,
        total
    );
    if bad.is_empty() {
        Ok(format!("{}, {:.1?}", summary, t0.elapsed()))
    } else {
        Err(format!("{}; mismatches: {}", summary, bad.join("; ")))
    }
}

fn compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for mut rest in compositions(n - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn c8(e: &Engine) -> Outcome {
    let t0 = Instant::now();
    let err = |x: multiseg::Error| x.to_string();
    let mut pairs = 0;
    for n in 1..=6usize {
        for comp in compositions(n) {
            let mut segs = Vec::new();
            let mut i = 1;
            for (blk, &size) in comp.iter().enumerate() {
                for _ in 0..size {
                    segs.push(Segment::of(i, n as i32 + blk as i32));
                    i += 1;
                }
            }
            let base = ParabolicBase::new(&Multisegment::new(segs)).map_err(err)?;
            let reps = base.reps();
            let images: Vec<Multisegment> = reps.iter().map(|w| base.phi(w)).collect::<Result<_, _>>().map_err(err)?;
            let all: BTreeSet<&Multisegment> = images.iter().collect();
            for (w, aw) in reps.iter().zip(&images) {
                let row = e.mult_row(aw).map_err(err)?;
                if row.keys().any(|b| !all.contains(b)) {
                    return Err(format!("π({}) has a constituent outside Φ", aw));
                }
                for (u, au) in reps.iter().zip(&images) {
                    pairs += 1;
                    let m = row.get(au).copied().unwrap_or(0);
                    let p = e.parabolic_kl(&base.j, w, u).map_err(err)?.eval1();
                    if m != p {
                        return Err(format!("m({}, {}) = {} but P^J_{{w,u}}(1) = {}", au, aw, m, p));
                    }
                }
            }
        }
    }
    // θ for J₁ = ∅, J = {σ_i} against μ(s_i w, v) at q = 1.
    let mut thetas = 0;
    for n in 2..=5usize {
        for i in 1..n {
            let j: JSet = [i].into_iter().collect();
            for v in Perm::all(n) {
                if v.length() > v.mul_simple_left(i).length() {
                    continue;
                }
                let th = e.theta_system(&j, &JSet::new(), &v).map_err(err)?;
                for w in min_coset_reps(&j, n) {
                    thetas += 1;
                    let got = th.get(&w).map_or(0, |t| t.eval1());
                    let want = if w == v { 1 } else { e.kl_mu(&w.mul_simple_left(i), &v) };
                    if got != want {
                        return Err(format!("θ(w={}, v={}) = {} but μ(s_{} w, v) = {}", w, v, got, i, want));
                    }
                }
            }
        }
    }
    Ok(format!("{} pairs (u, w), {} θ values, {:.1?}", pairs, thetas, t0.elapsed()))
}

fn c9(e: &Engine) -> Outcome {
    let t0 = Instant::now();
    let (mut clean, mut gap, mut single) = (0, 0, 0);
    for (a, k) in inputs(6) {
        let d = e.derive_irreducible(&a, k, Route::BasisChange).map_err(|x| x.to_string())?;
        let t = a.truncate(k);
        let min_deg = d.terms.keys().map(|b| b.degree()).min().unwrap();
        let at_min: Vec<&Multisegment> = d.terms.keys().filter(|b| b.degree() == min_deg).collect();
        let first = d.coeff(&t) == 1 && at_min == vec![&t];
        let second = d.coeff(&t) == 0 && min_deg > t.degree();
        if first == second {
            return Err(format!("𝒟^{}(L_{}) = {} fits {} branches", k, a, d, u8::from(first) * 2));
        }
        if first {
            clean += 1;
        } else {
            gap += 1;
        }
        if a.ell_k(k) == 1 {
            single += 1;
            let mut rest = d.clone();
            rest.add(a.clone(), -1);
            if !(rest.is_zero() || rest == RingVector::irreducible(&t)) {
                return Err(format!("𝒟^{}(L_{}) − L_a = {} with one segment ending at k", k, a, rest));
            }
        }
    }
    Ok(format!("{} with minimal term, {} with a gap, {} single-end cases, {:.1?}", clean, gap, single, t0.elapsed()))
}

fn c10(e: &Engine) -> Outcome {
    let t0 = Instant::now();
    let err = |x: multiseg::Error| x.to_string();
    let weights: BTreeSet<Weight> = enumerate_normalized(6).iter().map(|a| a.weight()).collect();
    let mut elems = 0;
    for phi in &weights {
        let members = enumerate_weight(phi);
        for a in &members {
            elems += 1;
            if !e.check_g_bar_invariant(a).map_err(err)? {
                return Err(format!("G({}) is not bar-invariant", a));
            }
            for (b, p) in e.prow(a).map_err(err)?.iter() {
                let ok = if b == a {
                    p.is_one()
                } else {
                    p.min_exp().is_some_and(|m| m >= 1) && p.terms().all(|(_, c)| c > 0)
                };
                if !ok {
                    return Err(format!("P_{{{},{}}} = {}", a, b, p));
                }
            }
            for b in &members {
                let want = i64::from(a == b);
                if e.g_pairing_mod_v(a, b).map_err(err)? != want {
                    return Err(format!("(G({}), G({})) ≢ {} mod v", a, b, want));
                }
            }
        }
    }
    Ok(format!("{} weights, {} basis elements, {:.1?}", weights.len(), elems, t0.elapsed()))
}

fn to_oracle(p: &Perm) -> Vec<usize> {
    p.0.iter().map(|&x| x as usize - 1).collect()
}

fn c11(e: &Engine) -> Outcome {
    let t0 = Instant::now();
    let mut checked = 0;
    for n in 1..=5usize {
        let mut oracle = common::KlOracle::new(n);
        let perms = Perm::all(n);
        for y in &perms {
            for x in &perms {
                let p = e.kl_poly(x, y).map_err(|x| x.to_string())?;
                let (ox, oy) = (to_oracle(x), to_oracle(y));
                if p.0 != oracle.p(&ox, &oy) {
                    return Err(format!("P_{{{},{}}} = {} disagrees with the R-polynomial oracle", x, y, p));
                }
                if p.0.iter().any(|&c| c < 0) {
                    return Err(format!("P_{{{},{}}} = {} has a negative coefficient", x, y, p));
                }
                if multiseg::weyl::bruhat_leq(x, y) && y.length() - x.length() <= 2 && p.0 != vec![1] {
                    return Err(format!("P_{{{},{}}} = {} for a short interval", x, y, p));
                }
                checked += 1;
            }
        }
    }
    let x = Perm::simple(4, 2);
    let y = Perm::from_word(4, &[2, 1, 3, 2]);
    let p = e.kl_poly(&x, &y).map_err(|x| x.to_string())?;
    let mut oracle = common::KlOracle::new(4);
    if p.0 != vec![1, 1] || oracle.p(&to_oracle(&x), &to_oracle(&y)) != vec![1, 1] {
        return Err(format!("P_{{σ₂,σ₂σ₁σ₃σ₂}} = {}", p));
    }
    within(t0, Duration::from_secs(60), "KL sanity")?;
    Ok(format!("{} pairs in S₁..S₅, P_{{σ₂,σ₂σ₁σ₃σ₂}} = 1 + q, {:.1?}", checked, t0.elapsed()))
}

fn main() {
    let e = Engine::new();
    type Check<'a> = (&'a str, Box<dyn Fn() -> Outcome + 'a>);
    let checks: Vec<Check> = vec![
        ("rank one canonical basis", Box::new(|| c1(&e))),
        ("exp of e_k′ equals the standard formula", Box::new(c2)),
        ("𝒟^k is a ring homomorphism", Box::new(|| c3(&e))),
        ("⪯_k characterizations and poset axioms", Box::new(|| c4(&e))),
        ("support law for 𝒟^k(π(a))", Box::new(|| c5(&e))),
        ("route agreement", Box::new(|| c6(&e))),
        ("Grassmannian orbit count", Box::new(|| c7(&e))),
        ("parabolic KL consistency", Box::new(|| c8(&e))),
        ("minimal degree dichotomy", Box::new(|| c9(&e))),
        ("canonical basis sanity", Box::new(|| c10(&e))),
        ("KL engine sanity", Box::new(|| c11(&e))),
    ];
    let mut failed = 0;
    for (i, (name, f)) in checks.iter().enumerate() {
        let out =
            std::panic::catch_unwind(std::panic::AssertUnwindSafe(f)).unwrap_or_else(|_| Err("panicked".to_string()));
        match out {
            Ok(d) => println!("criterion {:>2}: PASS  {} ({})", i + 1, name, d),
            Err(d) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {} ({})", i + 1, name, d);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", checks.len() - failed, checks.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
