//! Exact Laurent polynomials in `v = q^{1/2}` with integer coefficients.

use serde::{Deserialize, Serialize};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

/// Element of `Z[v, v^-1]`, stored as `Σ coeffs[i] v^(lo+i)`.
///
/// The representation is normalized: no zero at either end, and the zero
/// polynomial has empty `coeffs` and `lo == 0`.
#[derive(Clone, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub struct Laurent {
    pub lo: i32,
    pub coeffs: Vec<i64>,
}

impl Laurent {
    pub fn zero() -> Self {
        Laurent::default()
    }

    pub fn one() -> Self {
        Laurent::monomial(0, 1)
    }

    /// `c · v^e`.
    pub fn monomial(e: i32, c: i64) -> Self {
        Laurent::from_parts(e, vec![c])
    }

    pub fn from_parts(lo: i32, coeffs: Vec<i64>) -> Self {
        let mut p = Laurent { lo, coeffs };
        p.normalize();
        p
    }

    /// Builds from `(exponent, coefficient)` pairs; repeated exponents add up.
    pub fn from_terms(terms: &[(i32, i64)]) -> Self {
        let mut p = Laurent::zero();
        for &(e, c) in terms {
            p += &Laurent::monomial(e, c);
        }
        p
    }

    fn normalize(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|&&c| c == 0).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.lo += lead as i32;
        }
        if self.coeffs.is_empty() {
            self.lo = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.lo == 0 && self.coeffs == [1]
    }

    /// Lowest exponent with nonzero coefficient.
    pub fn min_exp(&self) -> Option<i32> {
        (!self.is_zero()).then_some(self.lo)
    }

    /// Highest exponent with nonzero coefficient.
    pub fn max_exp(&self) -> Option<i32> {
        (!self.is_zero()).then(|| self.lo + self.coeffs.len() as i32 - 1)
    }

    pub fn coeff(&self, e: i32) -> i64 {
        let i = e - self.lo;
        if i < 0 {
            return 0;
        }
        self.coeffs.get(i as usize).copied().unwrap_or(0)
    }

    /// Nonzero `(exponent, coefficient)` pairs in ascending exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.coeffs.iter().enumerate().filter(|(_, &c)| c != 0).map(move |(i, &c)| (self.lo + i as i32, c))
    }

    /// Multiplication by `v^e`.
    pub fn shift(&self, e: i32) -> Self {
        if self.is_zero() {
            return Laurent::zero();
        }
        Laurent { lo: self.lo + e, coeffs: self.coeffs.clone() }
    }

    pub fn scale(&self, c: i64) -> Self {
        Laurent::from_parts(self.lo, self.coeffs.iter().map(|&x| x.checked_mul(c).expect("overflow")).collect())
    }

    /// The bar involution `v ↦ v^-1`.
    pub fn bar(&self) -> Self {
        match self.max_exp() {
            None => Laurent::zero(),
            Some(hi) => Laurent { lo: -hi, coeffs: self.coeffs.iter().rev().copied().collect() },
        }
    }

    /// Value at `v = 1`.
    pub fn eval1(&self) -> i64 {
        self.coeffs.iter().fold(0i64, |s, &c| s.checked_add(c).expect("overflow"))
    }

    /// Terms with exponent `> 0`.
    pub fn positive_part(&self) -> Self {
        let skip = (1 - self.lo).max(0) as usize;
        if skip >= self.coeffs.len() {
            return Laurent::zero();
        }
        Laurent::from_parts(self.lo + skip as i32, self.coeffs[skip..].to_vec())
    }

    /// Whether `self` lies in `v Z[v]`.
    pub fn in_v_zv(&self) -> bool {
        self.min_exp().is_none_or(|e| e > 0)
    }

    pub fn all_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|&c| c >= 0)
    }

    /// Exact division; `None` if `d` does not divide `self` in `Z[v, v^-1]`.
    pub fn div_exact(&self, d: &Laurent) -> Option<Laurent> {
        assert!(!d.is_zero(), "division by zero");
        if self.is_zero() {
            return Some(Laurent::zero());
        }
        let dlo = d.lo;
        let dn = d.coeffs.len();
        let lead = *d.coeffs.last().unwrap();
        let mut rem = self.coeffs.clone();
        let n = rem.len();
        if n < dn {
            return None;
        }
        let qn = n - dn + 1;
        let mut q = vec![0i64; qn];
        for i in (0..qn).rev() {
            let c = rem[i + dn - 1];
            if c == 0 {
                continue;
            }
            if c % lead != 0 {
                return None;
            }
            let f = c / lead;
            q[i] = f;
            for (j, &dc) in d.coeffs.iter().enumerate() {
                rem[i + j] = rem[i + j].checked_sub(f.checked_mul(dc).expect("overflow")).expect("overflow");
            }
        }
        if rem.iter().any(|&c| c != 0) {
            return None;
        }
        Some(Laurent::from_parts(self.lo - dlo, q))
    }

    /// Quantum integer `[m]_v = (v^m − v^-m)/(v − v^-1)`.
    pub fn qint(m: u32) -> Self {
        if m == 0 {
            return Laurent::zero();
        }
        let m = m as i32;
        Laurent::from_terms(&(0..m).map(|t| (m - 1 - 2 * t, 1)).collect::<Vec<_>>())
    }

    /// Quantum factorial `[m]_v!`.
    pub fn qfactorial(m: u32) -> Self {
        (1..=m).fold(Laurent::one(), |acc, i| &acc * &Laurent::qint(i))
    }

    /// `1 − q^t = 1 − v^{2t}`.
    pub fn one_minus_q_pow(t: i32) -> Self {
        Laurent::from_terms(&[(0, 1), (2 * t, -1)])
    }

    /// `h_m(q) = (1 − q)(1 − q^2)⋯(1 − q^m)`.
    pub fn h(m: u32) -> Self {
        (1..=m as i32).fold(Laurent::one(), |acc, t| &acc * &Laurent::one_minus_q_pow(t))
    }

    /// Coefficients as a polynomial in `q`, when all exponents are even and
    /// nonnegative.
    pub fn to_q_poly(&self) -> Option<Vec<i64>> {
        if self.is_zero() {
            return Some(vec![]);
        }
        if self.lo < 0 {
            return None;
        }
        let mut out = vec![0; (self.max_exp().unwrap() / 2 + 1) as usize];
        for (e, c) in self.terms() {
            if e % 2 != 0 {
                return None;
            }
            out[(e / 2) as usize] = c;
        }
        Some(out)
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            let (sign, a) = if c < 0 { ("-", -c) } else { ("+", c) };
            if first {
                if c < 0 {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", sign)?;
            }
            first = false;
            match (e, a) {
                (0, a) => write!(f, "{}", a)?,
                (e, 1) => write!(f, "{}", vpow(e))?,
                (e, a) => write!(f, "{}{}", a, vpow(e))?,
            }
        }
        Ok(())
    }
}

fn vpow(e: i32) -> String {
    if e == 1 {
        "v".into()
    } else {
        format!("v^{}", e)
    }
}

impl fmt::Debug for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl<'a> Add<&'a Laurent> for &'a Laurent {
    type Output = Laurent;
    fn add(self, o: &Laurent) -> Laurent {
        let mut r = self.clone();
        r += o;
        r
    }
}

impl<'a> Sub<&'a Laurent> for &'a Laurent {
    type Output = Laurent;
    fn sub(self, o: &Laurent) -> Laurent {
        let mut r = self.clone();
        r -= o;
        r
    }
}

impl AddAssign<&Laurent> for Laurent {
    fn add_assign(&mut self, o: &Laurent) {
        self.axpy(1, o);
    }
}

impl SubAssign<&Laurent> for Laurent {
    fn sub_assign(&mut self, o: &Laurent) {
        self.axpy(-1, o);
    }
}

impl Laurent {
    /// `self += c · o`.
    pub fn axpy(&mut self, c: i64, o: &Laurent) {
        if o.is_zero() || c == 0 {
            return;
        }
        if self.is_zero() {
            *self = o.scale(c);
            return;
        }
        let lo = self.lo.min(o.lo);
        let hi = self.max_exp().unwrap().max(o.max_exp().unwrap());
        if lo < self.lo {
            let pad = (self.lo - lo) as usize;
            self.coeffs.splice(0..0, std::iter::repeat_n(0, pad));
            self.lo = lo;
        }
        let len = (hi - lo + 1) as usize;
        self.coeffs.resize(len, 0);
        let off = (o.lo - lo) as usize;
        for (i, &x) in o.coeffs.iter().enumerate() {
            let t = x.checked_mul(c).expect("overflow");
            self.coeffs[off + i] = self.coeffs[off + i].checked_add(t).expect("overflow");
        }
        self.normalize();
    }

    /// `self += a · b`.
    pub fn add_product(&mut self, a: &Laurent, b: &Laurent) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        self.add_assign(&(a * b));
    }
}

impl<'a> Mul<&'a Laurent> for &'a Laurent {
    type Output = Laurent;
    fn mul(self, o: &Laurent) -> Laurent {
        if self.is_zero() || o.is_zero() {
            return Laurent::zero();
        }
        let mut c = vec![0i64; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &x) in self.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in o.coeffs.iter().enumerate() {
                let t = x.checked_mul(y).expect("overflow");
                c[i + j] = c[i + j].checked_add(t).expect("overflow");
            }
        }
        Laurent::from_parts(self.lo + o.lo, c)
    }
}

impl Neg for &Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        self.scale(-1)
    }
}

impl From<i64> for Laurent {
    fn from(c: i64) -> Self {
        Laurent::monomial(0, c)
    }
}
