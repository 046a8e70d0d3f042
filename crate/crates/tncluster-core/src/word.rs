//! The infinite reduced word `w̃ = s_{j_1} s_{j_2} …`, its coordinates and
//! the permutations realised by its prefixes.
//!
//! `w̃ = w^(0) * w^(1) * …` with `w^(t) = s_{-t} … s_t s_{t+1} s_t … s_{-t}`.
//! Positions are 1-based; `a(t) = t(2t+1)` for half-integers `t` is
//! written through the doubled value `u = 2t`.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::lattice::{alpha_w, apply_word, eps_diff, Weight};

/// Position in `w̃`, always at least 1.
pub type MutIndex = u32;

/// Lattice coordinate `(ℓ, m)` of a position.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Coord {
    pub ell: i64,
    pub m: i64,
}

impl Coord {
    pub fn new(ell: i64, m: i64) -> Self {
        Coord { ell, m }
    }

    pub fn sum(self) -> i64 {
        self.ell + self.m
    }

    pub fn is_even(self) -> bool {
        (self.ell + self.m) % 2 == 0
    }

    pub fn is_valid(self) -> bool {
        self.ell >= 1 && self.m >= 1
    }
}

/// `a(u/2) = u(u+1)/2`.
pub fn a_val(u: i64) -> i64 {
    u * (u + 1) / 2
}

/// The unique integer `t ≥ 0` with `a(t) < p ≤ a(t+1)`.
fn block_of(p: MutIndex) -> i64 {
    let p = p as i64;
    let mut t = ((p / 2).isqrt() - 1).max(0);
    while a_val(2 * t) >= p {
        t -= 1;
    }
    while a_val(2 * t + 2) < p {
        t += 1;
    }
    t
}

/// The letter `j_p` of `w̃`.
pub fn jp(p: MutIndex) -> i64 {
    assert!(p >= 1, "positions start at 1");
    let t = block_of(p);
    let pi = p as i64;
    let half = a_val(2 * t + 1);
    if pi <= half + 1 {
        pi - half + t
    } else {
        -t + a_val(2 * t + 2) - pi
    }
}

/// The first `p` letters of `w̃`.
pub fn prefix(p: MutIndex) -> Vec<i64> {
    (1..=p).map(jp).collect()
}

/// The coordinate bijection `c`.
pub fn coord(p: MutIndex) -> Coord {
    assert!(p >= 1, "positions start at 1");
    let t = block_of(p);
    let pi = p as i64;
    let half = a_val(2 * t + 1);
    if pi <= half {
        Coord::new(pi - a_val(2 * t), half - pi + 1)
    } else if pi == half + 1 {
        Coord::new(2 * t + 2, 1)
    } else {
        Coord::new(a_val(2 * t + 2) + 1 - pi, pi - half)
    }
}

/// Inverse of [`coord`].
pub fn coord_inv(c: Coord) -> MutIndex {
    assert!(c.is_valid(), "coordinates are positive");
    let base = a_val(c.ell + c.m - 2);
    let p = if c.is_even() { base + c.ell } else { base + c.m };
    p as MutIndex
}

/// `j_p` read off the coordinate: `⌊(ℓ - m + 1)/2⌋`.
pub fn jp_from_coord(c: Coord) -> i64 {
    (c.ell - c.m + 1).div_euclid(2)
}

/// Next occurrence of the letter `j_p` after `p`.
pub fn p_plus(p: MutIndex) -> MutIndex {
    p_plus_j(p, jp(p))
}

/// Previous occurrence of the letter `j_p` before `p`, or 0.
pub fn p_minus(p: MutIndex) -> MutIndex {
    p_minus_j(p, jp(p))
}

/// Smallest `k > p` with `j_k = j`. Every letter recurs, so this exists.
pub fn p_plus_j(p: MutIndex, j: i64) -> MutIndex {
    let mut k = p + 1;
    while jp(k) != j {
        k += 1;
    }
    k
}

/// Largest `k < p` with `j_k = j`, or 0 when there is none.
pub fn p_minus_j(p: MutIndex, j: i64) -> MutIndex {
    let mut k = p;
    while k > 1 {
        k -= 1;
        if jp(k) == j {
            return k;
        }
    }
    0
}

/// The positions `t < p < t_+ < p_+` with multiplicity `|a_{j_p, j_t}|`.
pub fn prime_partners(p: MutIndex) -> Vec<(MutIndex, i64)> {
    let j = jp(p);
    let pp = p_plus_j(p, j);
    (1..p)
        .filter_map(|t| {
            let jt = jp(t);
            let mult = match (j - jt).abs() {
                0 => 2,
                1 => 1,
                _ => 0,
            };
            (mult > 0 && {
                let tp = p_plus_j(t, jt);
                p < tp && tp < pp
            })
            .then_some((t, mult))
        })
        .collect()
}

/// Closed form for `c(p_+)`.
pub fn coord_plus(c: Coord) -> Coord {
    if c.is_even() {
        Coord::new(c.ell, c.m + 1)
    } else {
        Coord::new(c.ell + 1, c.m)
    }
}

/// Closed form for `c(p_-)`; may leave the positive quadrant.
pub fn coord_minus(c: Coord) -> Coord {
    if c.is_even() {
        Coord::new(c.ell - 1, c.m)
    } else {
        Coord::new(c.ell, c.m - 1)
    }
}

/// Closed form of `w̃_{≤p-1}(α_{j_p})` as the pair `(a, b)` of `ε_a - ε_b`.
pub fn beta_closed(p: MutIndex) -> (i64, i64) {
    let t = block_of(p);
    let pi = p as i64;
    if pi <= a_val(2 * t + 1) {
        (-t, t + 2 - pi + a_val(2 * t))
    } else {
        (t + 1 + pi - a_val(2 * t + 2), t + 2)
    }
}

/// `w̃_{≤p-1}(α_{j_p})` computed by applying the reflections one by one.
pub fn beta_by_reflection(p: MutIndex) -> Weight {
    apply_word(&prefix(p - 1), &alpha_w(jp(p)))
}

/// Finitely supported permutation of ℤ, stored on its moved points.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Perm {
    map: BTreeMap<i64, i64>,
}

impl Perm {
    pub fn identity() -> Self {
        Perm::default()
    }

    pub fn apply(&self, a: i64) -> i64 {
        *self.map.get(&a).unwrap_or(&a)
    }

    /// Replace `self` by `self ∘ (j, j+1)`.
    pub fn compose_transposition(&mut self, j: i64) {
        let x = self.apply(j);
        let y = self.apply(j + 1);
        self.set(j, y);
        self.set(j + 1, x);
    }

    fn set(&mut self, a: i64, v: i64) {
        if a == v {
            self.map.remove(&a);
        } else {
            self.map.insert(a, v);
        }
    }

    pub fn support(&self) -> impl Iterator<Item = (&i64, &i64)> {
        self.map.iter()
    }

    pub fn is_identity(&self) -> bool {
        self.map.is_empty()
    }

    /// Coxeter length, the number of inversions.
    pub fn length(&self) -> u64 {
        let (lo, hi) = match (self.map.keys().next(), self.map.keys().next_back()) {
            (Some(&lo), Some(&hi)) => (lo, hi),
            _ => return 0,
        };
        let vals: Vec<i64> = (lo..=hi).map(|a| self.apply(a)).collect();
        let mut inv = 0u64;
        for i in 0..vals.len() {
            for j in (i + 1)..vals.len() {
                if vals[i] > vals[j] {
                    inv += 1;
                }
            }
        }
        inv
    }

    /// True when the permutation reverses `[lo, hi]` and fixes everything else.
    pub fn is_reversal_of(&self, lo: i64, hi: i64) -> bool {
        if self.map.keys().any(|&a| a < lo || a > hi) {
            return false;
        }
        (lo..=hi).all(|a| self.apply(a) == lo + hi - a)
    }
}

/// The permutation of ε-indices realised by `w̃_{≤p}`: `w(ε_a) = ε_{σ(a)}`.
pub fn perm_of_prefix(p: MutIndex) -> Perm {
    let mut sigma = Perm::identity();
    for k in 1..=p {
        sigma.compose_transposition(jp(k));
    }
    sigma
}

/// True when every `w̃_{≤k-1}(α_{j_k})`, `k ≤ p`, is a positive root.
pub fn is_reduced_prefix(p: MutIndex) -> bool {
    is_reduced_word(&prefix(p))
}

/// Reducedness of an arbitrary word, tested root by root.
pub fn is_reduced_word(word: &[i64]) -> bool {
    first_non_reduced(word).is_none()
}

/// The first 1-based position at which the word stops being reduced.
pub fn first_non_reduced(word: &[i64]) -> Option<usize> {
    let mut sigma = Perm::identity();
    for (k, &j) in word.iter().enumerate() {
        if sigma.apply(j) > sigma.apply(j + 1) {
            return Some(k + 1);
        }
        sigma.compose_transposition(j);
    }
    None
}

/// The interval `[lo, hi]` of ε-indices reversed by `w̃_{≤a(u/2)}`.
pub fn longest_interval(u: i64) -> (i64, i64) {
    // Generators s_x..s_y act on the ε-indices x..y+1.
    let (x, y) = if u % 2 == 0 {
        let k = u / 2;
        (-k + 1, k)
    } else {
        let k = (u - 1) / 2;
        (-k, k)
    };
    (x, y + 1)
}

/// `ε_a - ε_b`.
pub fn root(a: i64, b: i64) -> Weight {
    eps_diff(a, b)
}
