//! Grothendieck-level shadows of the localized category `T_N`: classes of
//! simples, the form `𝔅_N`, the degree maps `c_a`, the polynomials
//! `f_{a,j}` and the grading lattice `R_{J,N}`.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::lattice::{eps_w, Coeffs, Weight};
use crate::multiseg::{merge_commuting, Multisegment, Segment};

/// Class of `Ω_N(M)` for a simple `M`: zero, or a simple labelled by a
/// multisegment with all lengths below `N`, up to a power of `q^{1/2}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClassTN {
    Zero,
    Simple { ms: Multisegment, shift: i64 },
}

impl ClassTN {
    pub fn is_unit(&self) -> bool {
        matches!(self, ClassTN::Simple { ms, .. } if ms.is_empty())
    }
}

impl fmt::Display for ClassTN {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassTN::Zero => write!(f, "ZERO"),
            ClassTN::Simple { ms, .. } if ms.is_empty() => write!(f, "UNIT"),
            ClassTN::Simple { ms, .. } => write!(f, "SIMPLE {}", ms),
        }
    }
}

fn check_n(n: i64) -> Result<()> {
    if n < 2 {
        return Err(Error::Invalid(format!("N = {} must be at least 2", n)));
    }
    Ok(())
}

/// `Ω_N`: zero if a segment is longer than `N`; otherwise the length-`N`
/// segments are dropped.
pub fn omega_n(ms: &Multisegment, n: i64) -> Result<ClassTN> {
    check_n(n)?;
    if ms.segments().iter().any(|s| s.len() > n) {
        return Ok(ClassTN::Zero);
    }
    let kept: Vec<Segment> = ms.segments().iter().copied().filter(|s| s.len() < n).collect();
    Ok(ClassTN::Simple { ms: Multisegment::from_segments(kept), shift: 0 })
}

/// `Ω_N` of a class: idempotent on simple classes.
pub fn omega_class(c: &ClassTN, n: i64) -> Result<ClassTN> {
    match c {
        ClassTN::Zero => Ok(ClassTN::Zero),
        ClassTN::Simple { ms, shift } => Ok(match omega_n(ms, n)? {
            ClassTN::Simple { ms, .. } => ClassTN::Simple { ms, shift: *shift },
            z => z,
        }),
    }
}

/// Merge of two classes, with shifts added.
pub fn merge_classes(x: &ClassTN, y: &ClassTN) -> ClassTN {
    match (x, y) {
        (ClassTN::Simple { ms: a, shift: s }, ClassTN::Simple { ms: b, shift: t }) => {
            ClassTN::Simple { ms: merge_commuting(a, b), shift: s + t }
        }
        _ => ClassTN::Zero,
    }
}

fn root_eps(x: &Weight) -> Result<Coeffs> {
    let e = x.as_eps().ok_or_else(|| Error::Invalid(format!("{} has a fundamental-weight part", x)))?;
    if e.values().sum::<i64>() != 0 {
        return Err(Error::Invalid(format!("{} is not in the root lattice", x)));
    }
    Ok(e)
}

fn eps_dot(x: &Coeffs, y: &Coeffs, shift: i64) -> i64 {
    x.iter().map(|(&a, &c)| c * y.get(&(a + shift)).copied().unwrap_or(0)).sum()
}

/// `𝔅_N(x, y) = -Σ_{k>0} (S_N^k x, y)` with `S_N(ε_a) = ε_{a+N}`.
pub fn b_form_n(x: &Weight, y: &Weight, n: i64) -> Result<i64> {
    check_n(n)?;
    let (ex, ey) = (root_eps(x)?, root_eps(y)?);
    let (xlo, yhi) = match (ex.keys().next(), ey.keys().next_back()) {
        (Some(&a), Some(&b)) => (a, b),
        _ => return Ok(0),
    };
    // Beyond k = (yhi - xlo)/N the shifted support lies above that of y.
    let kmax = (yhi - xlo).div_euclid(n);
    Ok(-(1..=kmax).map(|k| eps_dot(&ex, &ey, k * n)).sum::<i64>())
}

/// The degree shift of `X ⋆ Y = q^{𝔅_N(α, β)} X ∘ Y`.
pub fn star_degree(alpha: &Weight, beta: &Weight, n: i64) -> Result<i64> {
    b_form_n(alpha, beta, n)
}

/// `c_a(β) = (ε_a + ε_{a+N}, β)`.
pub fn c_a(a: i64, beta: &Weight, n: i64) -> Result<i64> {
    check_n(n)?;
    let e = root_eps(beta)?;
    Ok(e.get(&a).copied().unwrap_or(0) + e.get(&(a + n)).copied().unwrap_or(0))
}

/// Both sides of `c_a(β) = -𝔅_N(ε_a - ε_{a+N}, β) + 𝔅_N(β, ε_a - ε_{a+N})`.
pub fn c_a_identity(a: i64, beta: &Weight, n: i64) -> Result<(i64, i64)> {
    let d = &eps_w(a) - &eps_w(a + n);
    Ok((c_a(a, beta, n)?, -b_form_n(&d, beta, n)? + b_form_n(beta, &d, n)?))
}

/// `f_{a,j}(z) = sign · z^exp` as `(sign, exp)`.
pub fn f_aj(a: i64, j: i64, n: i64) -> Result<(i64, i64)> {
    check_n(n)?;
    let delta = (j == a + n) as i64;
    let ind = (a <= j && j < a + n - 1) as i64;
    Ok((if delta == 1 { -1 } else { 1 }, -ind - delta))
}

/// Image of a root-lattice element in `R_{J,N}`, on residues `0..N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradingClass {
    pub n: i64,
    pub coeffs: BTreeMap<i64, i64>,
}

impl GradingClass {
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

/// Project `β` to `R_{J,N} = R_J / Σ_a ℤ(ε_a - ε_{a+N})`.
pub fn grade_project(beta: &Weight, n: i64) -> Result<GradingClass> {
    check_n(n)?;
    let mut coeffs = BTreeMap::new();
    for (a, c) in root_eps(beta)? {
        let e = coeffs.entry(a.rem_euclid(n)).or_insert(0);
        *e += c;
    }
    coeffs.retain(|_, c| *c != 0);
    Ok(GradingClass { n, coeffs })
}

/// `(ε̄_a, ε̄_b)_N = 𝟙(a ≡ b mod N)`.
pub fn pairing_n(a: i64, b: i64, n: i64) -> Result<i64> {
    check_n(n)?;
    Ok(((a - b).rem_euclid(n) == 0) as i64)
}

/// `(x̄, ȳ)_N` on grading classes.
pub fn pair_classes(x: &GradingClass, y: &GradingClass) -> i64 {
    x.coeffs.iter().map(|(r, c)| c * y.coeffs.get(r).copied().unwrap_or(0)).sum()
}

/// The degree of `(X ⋆ Y)^* ≃ q^{(α,β)_N} Y^* ⋆ X^*`.
pub fn dual_star_degree(alpha: &Weight, beta: &Weight, n: i64) -> Result<i64> {
    Ok(pair_classes(&grade_project(alpha, n)?, &grade_project(beta, n)?))
}
