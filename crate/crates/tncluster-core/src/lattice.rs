//! The A-infinity weight lattice with its invariant form and Weyl group action.
//!
//! Weights are finite combinations of fundamental weights `Λ_i` and of the
//! vectors `ε_a = Λ_a - Λ_{a-1}`. The bilinear form is defined on the
//! `Λ`-basis only, `(Λ_i, Λ_j) = -|i-j|/2`; everything else is expanded.

use alloc::collections::BTreeMap;
use alloc::string::String;
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, Neg, Sub};

use crate::error::{Error, Result};

/// Exact half-integer, stored doubled.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HalfInt {
    pub doubled: i64,
}

impl HalfInt {
    pub const ZERO: HalfInt = HalfInt { doubled: 0 };

    pub fn from_doubled(doubled: i64) -> Self {
        HalfInt { doubled }
    }

    pub fn from_int(n: i64) -> Self {
        HalfInt { doubled: 2 * n }
    }

    pub fn is_integer(self) -> bool {
        self.doubled % 2 == 0
    }

    pub fn to_int(self) -> Result<i64> {
        if self.is_integer() {
            Ok(self.doubled / 2)
        } else {
            Err(Error::NonIntegral)
        }
    }
}

impl Add for HalfInt {
    type Output = HalfInt;
    fn add(self, o: HalfInt) -> HalfInt {
        HalfInt::from_doubled(self.doubled + o.doubled)
    }
}

impl AddAssign for HalfInt {
    fn add_assign(&mut self, o: HalfInt) {
        self.doubled += o.doubled;
    }
}

impl Sub for HalfInt {
    type Output = HalfInt;
    fn sub(self, o: HalfInt) -> HalfInt {
        HalfInt::from_doubled(self.doubled - o.doubled)
    }
}

impl Neg for HalfInt {
    type Output = HalfInt;
    fn neg(self) -> HalfInt {
        HalfInt::from_doubled(-self.doubled)
    }
}

impl Mul<i64> for HalfInt {
    type Output = HalfInt;
    fn mul(self, k: i64) -> HalfInt {
        HalfInt::from_doubled(self.doubled * k)
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.doubled / 2)
        } else {
            write!(f, "{}/2", self.doubled)
        }
    }
}

/// Sparse integer coefficient map with no zero entries.
pub type Coeffs = BTreeMap<i64, i64>;

pub(crate) fn add_coeff(map: &mut Coeffs, key: i64, c: i64) {
    if c == 0 {
        return;
    }
    let e = map.entry(key).or_insert(0);
    *e += c;
    if *e == 0 {
        map.remove(&key);
    }
}

/// A weight `Σ lam[i] Λ_i + Σ eps[a] ε_a`.
///
/// The stored presentation is not unique (`ε_a = Λ_a - Λ_{a-1}`); equality
/// and ordering use the normal form of [`Weight::normal_form`].
#[derive(Clone, Debug, Default)]
pub struct Weight {
    lam: Coeffs,
    eps: Coeffs,
}

impl Weight {
    pub fn zero() -> Self {
        Weight::default()
    }

    pub fn from_parts(lam: Coeffs, eps: Coeffs) -> Self {
        let mut w = Weight::zero();
        for (i, c) in lam {
            add_coeff(&mut w.lam, i, c);
        }
        for (a, c) in eps {
            add_coeff(&mut w.eps, a, c);
        }
        w
    }

    pub fn lam_part(&self) -> &Coeffs {
        &self.lam
    }

    pub fn eps_part(&self) -> &Coeffs {
        &self.eps
    }

    pub fn is_zero(&self) -> bool {
        let (s, e) = self.normal_form();
        s == 0 && e.is_empty()
    }

    pub fn add_lam(&mut self, i: i64, c: i64) {
        add_coeff(&mut self.lam, i, c);
    }

    pub fn add_eps(&mut self, a: i64, c: i64) {
        add_coeff(&mut self.eps, a, c);
    }

    /// Coefficients in the `Λ`-basis, the unique expansion.
    pub fn lambda_expansion(&self) -> Coeffs {
        let mut out = self.lam.clone();
        for (&a, &c) in &self.eps {
            add_coeff(&mut out, a, c);
            add_coeff(&mut out, a - 1, -c);
        }
        out
    }

    /// Unique normal form `(s, e)` meaning `s Λ_0 + Σ e[a] ε_a`.
    pub fn normal_form(&self) -> (i64, Coeffs) {
        let mut eps = self.eps.clone();
        let mut s = 0;
        for (&i, &c) in &self.lam {
            s += c;
            // Λ_i = Λ_0 + ε_1 + ... + ε_i  (i > 0),  Λ_0 - ε_0 - ... - ε_{i+1}  (i < 0)
            if i > 0 {
                for a in 1..=i {
                    add_coeff(&mut eps, a, c);
                }
            } else if i < 0 {
                for a in (i + 1)..=0 {
                    add_coeff(&mut eps, a, -c);
                }
            }
        }
        (s, eps)
    }

    /// `Some(eps)` when the weight has no net `Λ` component.
    pub fn as_eps(&self) -> Option<Coeffs> {
        let (s, e) = self.normal_form();
        if s == 0 {
            Some(e)
        } else {
            None
        }
    }

    /// Sum of `ε`-coefficients in the normal form; zero on the root lattice.
    pub fn level(&self) -> i64 {
        self.normal_form().0
    }

    pub fn is_root_lattice(&self) -> bool {
        match self.as_eps() {
            Some(e) => e.values().sum::<i64>() == 0,
            None => false,
        }
    }

    pub fn scale(&self, k: i64) -> Weight {
        let mut w = Weight::zero();
        if k == 0 {
            return w;
        }
        for (&i, &c) in &self.lam {
            add_coeff(&mut w.lam, i, c * k);
        }
        for (&a, &c) in &self.eps {
            add_coeff(&mut w.eps, a, c * k);
        }
        w
    }

    pub fn to_string_pretty(&self) -> String {
        alloc::format!("{}", self)
    }
}

impl PartialEq for Weight {
    fn eq(&self, other: &Self) -> bool {
        self.normal_form() == other.normal_form()
    }
}

impl Eq for Weight {}

impl PartialOrd for Weight {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Weight {
    fn cmp(&self, other: &Self) -> Ordering {
        self.normal_form().cmp(&other.normal_form())
    }
}

impl Add for &Weight {
    type Output = Weight;
    fn add(self, o: &Weight) -> Weight {
        let mut w = self.clone();
        w += o;
        w
    }
}

impl Add for Weight {
    type Output = Weight;
    fn add(self, o: Weight) -> Weight {
        &self + &o
    }
}

impl AddAssign<&Weight> for Weight {
    fn add_assign(&mut self, o: &Weight) {
        for (&i, &c) in &o.lam {
            add_coeff(&mut self.lam, i, c);
        }
        for (&a, &c) in &o.eps {
            add_coeff(&mut self.eps, a, c);
        }
    }
}

impl Sub for &Weight {
    type Output = Weight;
    fn sub(self, o: &Weight) -> Weight {
        self + &(-o)
    }
}

impl Sub for Weight {
    type Output = Weight;
    fn sub(self, o: Weight) -> Weight {
        &self - &o
    }
}

impl Neg for &Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        self.scale(-1)
    }
}

impl Neg for Weight {
    type Output = Weight;
    fn neg(self) -> Weight {
        self.scale(-1)
    }
}

impl fmt::Display for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        let mut term = |f: &mut fmt::Formatter<'_>, c: i64, sym: &str, idx: i64| -> fmt::Result {
            let sign = if c < 0 {
                "-"
            } else if first {
                ""
            } else {
                "+"
            };
            let mag = c.abs();
            first = false;
            if mag == 1 {
                write!(f, "{}{}{}", sign, sym, idx)
            } else {
                write!(f, "{}{}{}{}", sign, mag, sym, idx)
            }
        };
        for (&i, &c) in &self.lam {
            term(f, c, "L", i)?;
        }
        for (&a, &c) in &self.eps {
            term(f, c, "e", a)?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// `Λ_i`.
pub fn lambda_w(i: i64) -> Weight {
    let mut w = Weight::zero();
    w.add_lam(i, 1);
    w
}

/// `ε_a`.
pub fn eps_w(a: i64) -> Weight {
    let mut w = Weight::zero();
    w.add_eps(a, 1);
    w
}

/// `α_j = ε_j - ε_{j+1}`.
pub fn alpha_w(j: i64) -> Weight {
    let mut w = Weight::zero();
    w.add_eps(j, 1);
    w.add_eps(j + 1, -1);
    w
}

/// Weight `ε_a - ε_b` built directly.
pub fn eps_diff(a: i64, b: i64) -> Weight {
    let mut w = Weight::zero();
    w.add_eps(a, 1);
    w.add_eps(b, -1);
    w
}

/// The invariant form, computed on the `Λ`-expansions.
pub fn pair(x: &Weight, y: &Weight) -> HalfInt {
    let xl = x.lambda_expansion();
    let yl = y.lambda_expansion();
    let mut doubled = 0i64;
    for (&i, &c) in &xl {
        for (&j, &d) in &yl {
            doubled -= c * d * (i - j).abs();
        }
    }
    HalfInt::from_doubled(doubled)
}

/// `⟨h_k, x⟩ = (α_k, x)`; an integer for integral weights.
pub fn coroot(k: i64, x: &Weight) -> Result<i64> {
    pair(&alpha_w(k), x).to_int()
}

/// The simple reflection `s_j`.
///
/// `s_j` swaps `ε_j` and `ε_{j+1}`, sends `Λ_j` to `Λ_{j+1} - ε_j` and fixes
/// every other `Λ_i`.
pub fn reflect(j: i64, x: &Weight) -> Weight {
    let mut out = Weight::zero();
    for (&i, &c) in &x.lam {
        if i == j {
            out.add_lam(j + 1, c);
            out.add_eps(j, -c);
        } else {
            out.add_lam(i, c);
        }
    }
    for (&a, &c) in &x.eps {
        let b = if a == j {
            j + 1
        } else if a == j + 1 {
            j
        } else {
            a
        };
        out.add_eps(b, c);
    }
    out
}

/// `s_{i_1}(s_{i_2}(… s_{i_r}(x)))` for the word `[i_1, …, i_r]`.
pub fn apply_word(word: &[i64], x: &Weight) -> Weight {
    word.iter().rev().fold(x.clone(), |acc, &j| reflect(j, &acc))
}
