//! Segments, ordered multisegments and the labels of the distinguished
//! simple modules: determinantial modules `W^{(ℓ)}_{m,j}`, cuspidal modules
//! and their first mutations.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::{Error, Result};
use crate::lattice::{eps_diff, Weight};
use crate::word::{coord, coord_inv, coord_plus, jp, prime_partners, Coord, MutIndex};

/// The segment `[a, b]`, `a ≤ b`, labelling `L[a, b]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Segment {
    pub a: i64,
    pub b: i64,
}

impl Segment {
    pub fn new(a: i64, b: i64) -> Result<Self> {
        if a <= b {
            Ok(Segment { a, b })
        } else {
            Err(Error::Invalid(alloc::format!("segment [{}, {}] has a > b", a, b)))
        }
    }

    pub fn len(self) -> i64 {
        self.b - self.a + 1
    }

    pub fn is_empty(self) -> bool {
        false
    }

    /// `wt(L[a,b]) = ε_{b+1} - ε_a`.
    pub fn weight(self) -> Weight {
        eps_diff(self.b + 1, self.a)
    }

    pub fn shifted(self, r: i64) -> Segment {
        Segment { a: self.a + r, b: self.b + r }
    }
}

/// Segments are ordered by `a`, then by `b`.
impl Ord for Segment {
    fn cmp(&self, o: &Self) -> Ordering {
        (self.a, self.b).cmp(&(o.a, o.b))
    }
}

impl PartialOrd for Segment {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.a, self.b)
    }
}

/// The reversed cuspidal label `L̄[a, b]` with `a ≥ b`.
///
/// Only its weight `ε_{a+1} - ε_b` is committed; no multisegment is attached.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RevSegment {
    pub a: i64,
    pub b: i64,
}

impl RevSegment {
    pub fn new(a: i64, b: i64) -> Result<Self> {
        if a >= b {
            Ok(RevSegment { a, b })
        } else {
            Err(Error::Invalid(alloc::format!("reversed segment [{}, {}] has a < b", a, b)))
        }
    }

    pub fn weight(self) -> Weight {
        eps_diff(self.a + 1, self.b)
    }
}

impl fmt::Display for RevSegment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rev[{},{}]", self.a, self.b)
    }
}

/// Label of a cuspidal module.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Cusp {
    Seg(Segment),
    Rev(RevSegment),
}

impl Cusp {
    pub fn weight(self) -> Weight {
        match self {
            Cusp::Seg(s) => s.weight(),
            Cusp::Rev(r) => r.weight(),
        }
    }
}

impl fmt::Display for Cusp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cusp::Seg(s) => write!(f, "{}", s),
            Cusp::Rev(r) => write!(f, "{}", r),
        }
    }
}

/// A multisegment, kept weakly descending.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Multisegment {
    segs: Vec<Segment>,
}

impl Multisegment {
    pub fn empty() -> Self {
        Multisegment::default()
    }

    pub fn from_segments(mut segs: Vec<Segment>) -> Self {
        segs.sort_by(|x, y| y.cmp(x));
        Multisegment { segs }
    }

    pub fn from_pairs(pairs: &[(i64, i64)]) -> Result<Self> {
        let segs = pairs.iter().map(|&(a, b)| Segment::new(a, b)).collect::<Result<Vec<_>>>()?;
        Ok(Multisegment::from_segments(segs))
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segs
    }

    pub fn is_empty(&self) -> bool {
        self.segs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.segs.len()
    }

    pub fn to_pairs(&self) -> Vec<(i64, i64)> {
        self.segs.iter().map(|s| (s.a, s.b)).collect()
    }

    pub fn is_canonical(&self) -> bool {
        self.segs.windows(2).all(|w| w[0] >= w[1])
    }
}

impl fmt::Display for Multisegment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, s) in self.segs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", s)?;
        }
        write!(f, ")")
    }
}

/// `⟨⟨ℓ,m⟩⟩^{(j)}`: the segments `[j-ℓ+k, j+k-1]` for `k = m, …, 1`.
pub fn w_label(ell: i64, m: i64, j: i64) -> Multisegment {
    assert!(ell >= 1 && m >= 1, "ℓ and m must be positive");
    let segs = (1..=m).rev().map(|k| Segment { a: j - ell + k, b: j + k - 1 }).collect();
    Multisegment::from_segments(segs)
}

/// Recognise `⟨⟨ℓ,m⟩⟩^{(j)}`, returning `(ℓ, m, j)`.
pub fn parse_w_label(ms: &Multisegment) -> Option<(i64, i64, i64)> {
    let top = ms.segs.first()?;
    let (ell, m) = (top.len(), ms.segs.len() as i64);
    let j = top.b - m + 1;
    if ell >= 1 && &w_label(ell, m, j) == ms {
        Some((ell, m, j))
    } else {
        None
    }
}

/// Label of the determinantial module at position `p`.
pub fn det_label(p: MutIndex) -> Multisegment {
    let c = coord(p);
    w_label(c.ell, c.m, jp(p))
}

/// Sum of `ε_{b+1} - ε_a` over the segments.
pub fn wt_of(ms: &Multisegment) -> Weight {
    let mut w = Weight::zero();
    for s in &ms.segs {
        w += &s.weight();
    }
    w
}

/// Weight of `W^{(ℓ)}_{m,j}`: `Σ_{k=1}^m (ε_{j+k} - ε_{j-ℓ+k})`.
pub fn w_weight(ell: i64, m: i64, j: i64) -> Weight {
    let mut w = Weight::zero();
    for k in 1..=m {
        w.add_eps(j + k, 1);
        w.add_eps(j - ell + k, -1);
    }
    w
}

/// Cuspidal label at `p` with `c(p) = (ℓ, m)`.
pub fn cusp_label(p: MutIndex) -> Cusp {
    cusp_label_at(coord(p), jp(p))
}

/// Cuspidal label from coordinates and letter.
pub fn cusp_label_at(c: Coord, j: i64) -> Cusp {
    let (ell, m) = (c.ell, c.m);
    if c.is_even() {
        Cusp::Seg(Segment { a: j - ell + m + 1, b: j + m })
    } else {
        Cusp::Rev(RevSegment { a: j - ell + m - 1, b: j - ell })
    }
}

/// Label of the first mutation of `M(p, 0)`: the letter moves by `±1`.
pub fn mutated_det_label(p: MutIndex) -> Multisegment {
    let c = coord(p);
    let j = jp(p);
    if c.is_even() {
        w_label(c.ell, c.m, j + 1)
    } else {
        w_label(c.ell, c.m, j - 1)
    }
}

/// Weight of `M(p_+, p) ∇ ⊙_t M(t, 0)^{|a|}` over the partners `t < p < t_+ < p_+`.
pub fn prime_weight(p: MutIndex) -> Weight {
    let mut w = cusp_label(p).weight();
    for (t, mult) in prime_partners(p) {
        w += &wt_of(&det_label(t)).scale(mult);
    }
    w
}

/// The head `M(p_+, p) ∇ ⊙_t M(t, 0)^{|a|}` as a merged multisegment, when
/// the cuspidal factor is an honest segment.
pub fn prime_label(p: MutIndex) -> Option<Multisegment> {
    let seg = match cusp_label(p) {
        Cusp::Seg(s) => s,
        Cusp::Rev(_) => return None,
    };
    let mut ms = Multisegment::from_segments(alloc::vec![seg]);
    for (t, mult) in prime_partners(p) {
        for _ in 0..mult {
            ms = merge_commuting(&ms, &det_label(t));
        }
    }
    Some(ms)
}

/// `W^{(ℓ)}_{m, j+r}`.
pub fn shift_label(ell: i64, m: i64, j: i64, r: i64) -> Multisegment {
    w_label(ell, m, j + r)
}

/// Head of a product of commuting labels: the merged multisegment.
pub fn merge_commuting(x: &Multisegment, y: &Multisegment) -> Multisegment {
    let mut segs = x.segs.clone();
    segs.extend_from_slice(&y.segs);
    Multisegment::from_segments(segs)
}

/// Solve `wt = wt(W^{(ℓ)}_{m,j})` for `j`, if possible.
pub fn solve_w_index(ell: i64, m: i64, wt: &Weight) -> Option<i64> {
    let eps = wt.as_eps()?;
    // The top positive index is j + m unless cancellation occurs (it cannot when ℓ ≥ 1).
    let top = eps.iter().filter(|(_, &c)| c > 0).map(|(&a, _)| a).max()?;
    let j = top - m;
    if &w_weight(ell, m, j) == wt {
        Some(j)
    } else {
        None
    }
}

/// Weight identity `wt(M(p_+,0)) = wt(cusp(p)) + wt(M(p,0))`; returns the two sides.
pub fn cusp_weight_identity(p: MutIndex) -> (Weight, Weight) {
    let c = coord(p);
    let plus = coord_inv(coord_plus(c));
    let lhs = wt_of(&det_label(plus));
    let rhs = &cusp_label(p).weight() + &wt_of(&det_label(p));
    (lhs, rhs)
}
