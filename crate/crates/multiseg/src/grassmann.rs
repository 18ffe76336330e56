//! Partitions in an `r × ℓ` box, row indices, the multisegments `a_λ` of a
//! Grassmannian base, and the orbit count for `n(a_μ, a_{μ♭})`.

use std::fmt;

use crate::engine::Engine;
use crate::error::{pre, Result};
use crate::multiseg::{Multisegment, Segment};
use crate::weyl::{is_min_rep, JSet, Perm};

/// A partition `0 ≤ ℓ₁ ≤ … ≤ ℓ_r ≤ ℓ`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GrPartition {
    pub parts: Vec<u32>,
    pub r: usize,
    pub l: u32,
}

/// The Ω-form `(a₁, …, a_m; b₀, …, b_{m−1})`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OmegaForm {
    pub a: Vec<u32>,
    pub b: Vec<u32>,
}

/// `1 ≤ x₁ < … < x_r ≤ n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RowIndex {
    pub entries: Vec<usize>,
    pub n: usize,
}

impl GrPartition {
    pub fn new(parts: Vec<u32>, l: u32) -> Result<GrPartition> {
        if parts.windows(2).any(|w| w[0] > w[1]) || parts.iter().any(|&p| p > l) {
            return pre(format!("{:?} is not a weakly increasing sequence bounded by {}", parts, l));
        }
        Ok(GrPartition { r: parts.len(), parts, l })
    }

    /// All partitions in the `r × ℓ` box, in lexicographic order of parts.
    pub fn all(r: usize, l: u32) -> Vec<GrPartition> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; r];
        loop {
            out.push(GrPartition { parts: cur.clone(), r, l });
            // next weakly increasing sequence
            let mut i = r;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if cur[i] < l {
                    cur[i] += 1;
                    let v = cur[i];
                    cur[i + 1..].fill(v);
                    break;
                }
            }
        }
    }

    /// The bijection from the Ω-form: `b₀ + … + b_{i−1}` occurs `a_i` times.
    pub fn from_omega(w: &OmegaForm) -> Result<GrPartition> {
        if w.a.len() != w.b.len() || w.a.is_empty() {
            return pre("Ω-form needs m entries a_i and m entries b_j");
        }
        let m = w.a.len();
        if (1..m).any(|i| w.a[i - 1] == 0 || w.b[i] == 0) {
            return pre("Ω-form needs a_i > 0 and b_i > 0 for 0 < i < m");
        }
        let mut parts = Vec::new();
        let mut s = 0;
        for i in 0..m {
            s += w.b[i];
            parts.extend(std::iter::repeat_n(s, w.a[i] as usize));
        }
        GrPartition::new(parts, w.b.iter().sum())
    }

    /// The Ω-form of this partition.
    pub fn to_omega(&self) -> OmegaForm {
        let (mut a, mut b) = (Vec::new(), Vec::new());
        let mut prev = 0;
        let mut i = 0;
        while i < self.parts.len() {
            let p = self.parts[i];
            let c = self.parts[i..].iter().take_while(|&&q| q == p).count();
            b.push(p - prev);
            a.push(c as u32);
            prev = p;
            i += c;
        }
        if prev < self.l || a.is_empty() {
            b.push(self.l - prev);
            a.push(0);
        }
        OmegaForm { a, b }
    }

    /// `λ ≤ μ` componentwise.
    pub fn leq(&self, o: &GrPartition) -> bool {
        self.r == o.r && self.parts.iter().zip(&o.parts).all(|(x, y)| x <= y)
    }
}

impl fmt::Display for GrPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p: Vec<String> = self.parts.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", p.join(","))
    }
}

impl fmt::Display for OmegaForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = |v: &[u32]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "({};{})", s(&self.a), s(&self.b))
    }
}

impl RowIndex {
    pub fn new(entries: Vec<usize>, n: usize) -> Result<RowIndex> {
        if entries.windows(2).any(|w| w[0] >= w[1])
            || entries.first().is_some_and(|&x| x < 1)
            || entries.last().is_some_and(|&x| x > n)
        {
            return pre(format!("{:?} is not strictly increasing within 1..={}", entries, n));
        }
        Ok(RowIndex { entries, n })
    }

    /// The complementary indices.
    pub fn complement(&self) -> RowIndex {
        RowIndex { entries: (1..=self.n).filter(|i| !self.entries.contains(i)).collect(), n: self.n }
    }

    /// `x ⊇ y` as sets.
    pub fn contains(&self, y: &RowIndex) -> bool {
        y.entries.iter().all(|i| self.entries.contains(i))
    }

    /// `x ≥ y` entrywise, for indices of equal length.
    pub fn geq(&self, y: &RowIndex) -> bool {
        self.entries.len() == y.entries.len() && self.entries.iter().zip(&y.entries).all(|(a, b)| a >= b)
    }

    /// `x ⪰ y`: `x ≥ y′ ⊇ y` for some `y′`.
    pub fn succeq(&self, y: &RowIndex) -> bool {
        let r = self.entries.len();
        if y.entries.len() > r {
            return false;
        }
        let free: Vec<usize> = y.complement().entries;
        let need = r - y.entries.len();
        // choose the `need` extra entries of y′ among `free`
        let mut pick: Vec<usize> = (0..need).collect();
        loop {
            if pick.last().is_none_or(|&p| p < free.len()) {
                let mut yp: Vec<usize> = y.entries.clone();
                yp.extend(pick.iter().map(|&i| free[i]));
                yp.sort();
                if self.entries.iter().zip(&yp).all(|(a, b)| a >= b) {
                    return true;
                }
            }
            let mut i = need;
            loop {
                if i == 0 {
                    return false;
                }
                i -= 1;
                if pick[i] + (need - i) < free.len() {
                    pick[i] += 1;
                    for j in i + 1..need {
                        pick[j] = pick[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }
}

impl fmt::Display for RowIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p: Vec<String> = self.entries.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", p.join(","))
    }
}

/// `ς₂(λ) = (ℓ₁ + 1, …, ℓ_r + r)` in `R_r(r + ℓ)`.
pub fn sigma2(lambda: &GrPartition) -> RowIndex {
    RowIndex {
        entries: lambda.parts.iter().enumerate().map(|(i, &p)| p as usize + i + 1).collect(),
        n: lambda.r + lambda.l as usize,
    }
}

/// Inverse of [`sigma2`].
pub fn sigma2_inv(x: &RowIndex) -> GrPartition {
    let r = x.entries.len();
    GrPartition {
        parts: x.entries.iter().enumerate().map(|(i, &e)| (e - i - 1) as u32).collect(),
        r,
        l: (x.n - r) as u32,
    }
}

/// The Grassmannian `J = {σ_i : i ≠ r}` in `S_n`.
pub fn grassmannian_j(r: usize, n: usize) -> JSet {
    (1..n).filter(|&i| i != r).collect()
}

/// `ς₁(w) = (w⁻¹(1), …, w⁻¹(r))` for a minimal representative `w`.
pub fn sigma1(w: &Perm, r: usize) -> Result<RowIndex> {
    let n = w.n();
    if r > n || !is_min_rep(&grassmannian_j(r, n), w) {
        return pre(format!("{} is not a minimal representative for the Grassmannian J with r = {}", w, r));
    }
    let inv = w.inverse();
    RowIndex::new((1..=r).map(|i| inv.at(i)).collect(), n)
}

/// A Grassmannian base: distinct beginnings, the `r` segments with smallest
/// beginnings end at `k−1`, the other `ℓ` end at `k`, and no beginning
/// exceeds `k−1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GrBase {
    pub begins: Vec<i32>,
    pub r: usize,
    pub k: i32,
}

impl GrBase {
    pub fn new(base: &Multisegment, k: i32) -> Result<GrBase> {
        let mut segs: Vec<Segment> = base.segments().to_vec();
        segs.sort_by_key(|s| s.begin);
        let r = segs.iter().take_while(|s| s.end == k - 1).count();
        let ok =
            base.distinct_begins() && segs[r..].iter().all(|s| s.end == k) && base.max_begin().is_some_and(|b| b < k);
        if !ok {
            return pre(format!("{} is not a Grassmannian base for k = {}", base, k));
        }
        Ok(GrBase { begins: segs.iter().map(|s| s.begin).collect(), r, k })
    }

    /// The base with beginnings `1..=r+ℓ`, `r` ends at `k−1` and `ℓ` at `k`.
    pub fn standard(r: usize, l: usize, k: i32) -> Result<GrBase> {
        let n = r + l;
        let segs: Vec<Segment> = (1..=n)
            .map(|i| Segment::of(i as i32, if i <= r { k - 1 } else { k }))
            .filter(|s| s.begin <= s.end)
            .collect();
        GrBase::new(&Multisegment::new(segs), k)
    }

    pub fn n(&self) -> usize {
        self.begins.len()
    }

    pub fn l(&self) -> usize {
        self.n() - self.r
    }

    pub fn multisegment(&self) -> Multisegment {
        self.a_x(&RowIndex { entries: (1..=self.r).collect(), n: self.n() })
    }

    fn b(&self, i: usize) -> i32 {
        self.begins[i - 1]
    }

    /// `a_x = Σ_j [b(Δ_{x_j}), k−1] + Σ_j [b(Δ_{y_j}), k]` with `y` the complement.
    pub fn a_x(&self, x: &RowIndex) -> Multisegment {
        let mut v: Vec<Segment> = x.entries.iter().map(|&i| Segment::of(self.b(i), self.k - 1)).collect();
        v.extend(x.complement().entries.iter().map(|&i| Segment::of(self.b(i), self.k)));
        Multisegment::new(v)
    }

    fn check(&self, lambda: &GrPartition) -> Result<()> {
        if lambda.r + lambda.l as usize != self.n() || lambda.r < self.r {
            return pre(format!("{} does not fit a base with r = {} and n = {}", lambda, self.r, self.n()));
        }
        Ok(())
    }

    /// `a_λ` for `λ ∈ 𝒫(ℓ₁, r₁)` with `r₁ ≥ r` and `r₁ + ℓ₁ = r + ℓ`.
    pub fn multisegment_of_partition(&self, lambda: &GrPartition) -> Result<Multisegment> {
        self.check(lambda)?;
        Ok(self.a_x(&sigma2(lambda)))
    }

    /// `μ♭`: drop the first `r₀ = r₁ − r` entries of `x_μ`.
    pub fn mu_flat(&self, mu: &GrPartition) -> Result<GrPartition> {
        self.check(mu)?;
        let x = sigma2(mu);
        let r0 = mu.r - self.r;
        Ok(sigma2_inv(&RowIndex { entries: x.entries[r0..].to_vec(), n: x.n }))
    }

    /// `(a_{μ♭})^♯ = Σ_{j≤r₀} [b(x_j), k] + Σ_{j>r₀} [b(x_j), k−1] + Σ_j [b(y_j), k+1]`.
    pub fn sharp_lift(&self, mu: &GrPartition) -> Result<Multisegment> {
        self.check(mu)?;
        let x = sigma2(mu);
        let r0 = mu.r - self.r;
        let k = self.k;
        let mut v: Vec<Segment> = Vec::new();
        for (j, &i) in x.entries.iter().enumerate() {
            v.push(Segment::of(self.b(i), if j < r0 { k } else { k - 1 }));
        }
        v.extend(x.complement().entries.iter().map(|&i| Segment::of(self.b(i), k + 1)));
        Ok(Multisegment::new(v))
    }

    /// `a₁ = {Δ₁, …, Δ_{r₁}, Δ⁺_{r₁+1}, …}`.
    pub fn a1(&self, r1: usize) -> Multisegment {
        let k = self.k;
        Multisegment::new(
            (1..=self.n())
                .map(|i| {
                    let e = if i <= self.r {
                        k - 1
                    } else if i <= r1 {
                        k
                    } else {
                        k + 1
                    };
                    Segment::of(self.b(i), e)
                })
                .collect(),
        )
    }
}

impl Engine {
    /// `n(a_μ, a_{μ♭}) = #{c ∈ S(a₁) : c^{(k+1)} = a_{μ♭}, c ≥ (a_{μ♭})^♯}`.
    pub fn orbit_count_n(&self, base: &GrBase, mu: &GrPartition) -> Result<u64> {
        let flat = base.multisegment_of_partition(&base.mu_flat(mu)?)?;
        let sharp = base.sharp_lift(mu)?;
        let mut n = 0;
        for c in &self.below_set(&base.a1(mu.r)).members {
            if c.truncate(base.k + 1) == flat && self.leq(&sharp, c) {
                n += 1;
            }
        }
        Ok(n)
    }

    /// The orbit count of [`Engine::orbit_count_n`] with each `c` weighted by
    /// `m((a_{μ♭})^♯, c)`, the stalk of the intersection cohomology of the
    /// orbit of `(a_{μ♭})^♯` at `c`.
    pub fn orbit_count_weighted(&self, base: &GrBase, mu: &GrPartition) -> Result<i64> {
        let flat = base.multisegment_of_partition(&base.mu_flat(mu)?)?;
        let sharp = base.sharp_lift(mu)?;
        let mut n = 0;
        for c in &self.below_set(&base.a1(mu.r)).members {
            if c.truncate(base.k + 1) == flat && self.leq(&sharp, c) {
                n += self.prow(c)?.get(&sharp).map_or(0, |p| p.eval1());
            }
        }
        Ok(n)
    }

    /// `n(a_μ, a_{μ♭})` from the quantum algebra: `n_{a_μ, a_{μ♭}}(1)`.
    pub fn orbit_count_quantum(&self, base: &GrBase, mu: &GrPartition) -> Result<i64> {
        let flat = base.multisegment_of_partition(&base.mu_flat(mu)?)?;
        let a_mu = base.multisegment_of_partition(mu)?;
        Ok(self.n_poly(&a_mu, &flat, base.k)?.eval1())
    }
}
