//! Quivers on finite windows of the lattice `ℤ_{≥1} × ℤ_{≥1}`: the GLS quiver
//! of a prefix of `w̃`, the closed-form quiver `Q̃`, truncations `Q̃_N`,
//! mutation schedules and their verification on trusted interiors.
//!
//! Vertices are positions `p` of `w̃`, each carrying its coordinate `c(p)`.
//! A finite window cuts `Q̃` artificially; the layer near an artificial edge
//! is unreliable after mutation, so comparisons are restricted to vertices at
//! distance at least `margin` from every artificial edge.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt::Write;

use crate::error::{Error, Result};
use crate::lattice::Weight;
use crate::multiseg::{
    det_label, mutated_det_label, prime_label, prime_weight, shift_label, solve_w_index, w_label, wt_of, Multisegment,
};
use crate::qcluster::{
    lambda_from_vectors, lambda_vectors, ExchangeMatrix, LabelRule, QuantumSeed, SkewMatrix, Vertex,
};
use crate::word::{a_val, coord, coord_inv, jp, p_minus_j, p_plus_j, Coord};

/// A finite window of coordinates.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Window {
    /// Keep `ℓ + m ≤ cap_sum`.
    pub cap_sum: Option<i64>,
    /// Keep `ℓ ≤ ell_max`.
    pub ell_max: Option<i64>,
    /// Keep `m ≤ m_max`.
    pub m_max: Option<i64>,
    /// The `ℓ` bound is a genuine edge of the quiver, not a cut.
    pub ell_real: bool,
}

impl Window {
    pub fn triangle(cap: i64) -> Self {
        Window { cap_sum: Some(cap), ell_max: None, m_max: None, ell_real: false }
    }

    pub fn rect(ell_max: i64, m_max: i64) -> Self {
        Window { cap_sum: None, ell_max: Some(ell_max), m_max: Some(m_max), ell_real: false }
    }

    pub fn contains(&self, c: Coord) -> bool {
        c.is_valid()
            && self.cap_sum.is_none_or(|s| c.sum() <= s)
            && self.ell_max.is_none_or(|l| c.ell <= l)
            && self.m_max.is_none_or(|m| c.m <= m)
    }

    /// Distance from `c` to the nearest artificial edge.
    pub fn boundary_dist(&self, c: Coord) -> i64 {
        let mut d = i64::MAX;
        if let Some(s) = self.cap_sum {
            d = d.min(s - c.sum());
        }
        if let (Some(l), false) = (self.ell_max, self.ell_real) {
            d = d.min(l - c.ell);
        }
        if let Some(m) = self.m_max {
            d = d.min(m - c.m);
        }
        d
    }

    /// All coordinates of the window; the window must be bounded.
    pub fn coords(&self) -> Result<Vec<Coord>> {
        let lmax = match (self.ell_max, self.cap_sum) {
            (Some(l), _) => l,
            (None, Some(s)) => s - 1,
            _ => return Err(Error::Invalid("unbounded window".into())),
        };
        let mmax = match (self.m_max, self.cap_sum) {
            (Some(m), _) => m,
            (None, Some(s)) => s - 1,
            _ => return Err(Error::Invalid("unbounded window".into())),
        };
        let mut out = Vec::new();
        for ell in 1..=lmax {
            for m in 1..=mmax {
                let c = Coord::new(ell, m);
                if self.contains(c) {
                    out.push(c);
                }
            }
        }
        Ok(out)
    }
}

/// A quiver on positions of `w̃`, stored through its exchange matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    pub window: Window,
    pub coords: BTreeMap<Vertex, Coord>,
    pub frozen: BTreeSet<Vertex>,
    pub b: ExchangeMatrix,
}

/// An arrow count differing between two quivers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub from: Coord,
    pub to: Coord,
    pub left: i64,
    pub right: i64,
}

impl Quiver {
    fn empty(window: Window) -> Self {
        Quiver { window, coords: BTreeMap::new(), frozen: BTreeSet::new(), b: ExchangeMatrix::new() }
    }

    pub fn vertex_set(&self) -> BTreeSet<Vertex> {
        self.coords.keys().copied().collect()
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn vertex_of(&self, c: Coord) -> Option<Vertex> {
        if !c.is_valid() {
            return None;
        }
        let v = coord_inv(c);
        self.coords.contains_key(&v).then_some(v)
    }

    pub fn coord_of(&self, v: Vertex) -> Coord {
        self.coords[&v]
    }

    pub fn is_exchangeable(&self, v: Vertex) -> bool {
        self.coords.contains_key(&v) && !self.frozen.contains(&v)
    }

    /// Arrows as `(from, to, multiplicity)`.
    pub fn arrows(&self) -> Vec<(Vertex, Vertex, i64)> {
        self.b.arrows()
    }

    pub fn arrow_count(&self, from: Coord, to: Coord) -> i64 {
        match (self.vertex_of(from), self.vertex_of(to)) {
            (Some(x), Some(y)) => self.b.get(x, y).max(0),
            _ => 0,
        }
    }

    /// Number of neighbours of `v`, counted with multiplicity.
    pub fn degree(&self, v: Vertex) -> i64 {
        self.b.column(v).iter().map(|&(_, c)| c.abs()).sum()
    }

    pub fn opposite(&self) -> Quiver {
        Quiver { b: self.b.opposite(), ..self.clone() }
    }

    /// No arrows between frozen vertices.
    pub fn frozen_arrows(&self) -> Vec<(Vertex, Vertex)> {
        self.arrows()
            .into_iter()
            .filter(|(i, j, _)| self.frozen.contains(i) && self.frozen.contains(j))
            .map(|(i, j, _)| (i, j))
            .collect()
    }

    pub fn mutate(&self, v: Vertex) -> Result<Quiver> {
        if !self.is_exchangeable(v) {
            return Err(Error::NotExchangeable(v));
        }
        let frozen = &self.frozen;
        let b = crate::qcluster::mutate_b(&self.b, v, &|x| frozen.contains(&x));
        Ok(Quiver { b, ..self.clone() })
    }

    pub fn mutate_at(&self, c: Coord) -> Result<Quiver> {
        let v =
            self.vertex_of(c).ok_or_else(|| Error::Invalid(format!("({}, {}) is not in the quiver", c.ell, c.m)))?;
        self.mutate(v)
    }

    pub fn apply_schedule(&self, s: &[Coord]) -> Result<Quiver> {
        let mut q = self.clone();
        for &c in s {
            q = q.mutate_at(c)?;
        }
        Ok(q)
    }

    /// Vertices at distance at least `margin` from every artificial edge.
    pub fn trusted(&self, margin: i64) -> BTreeSet<Vertex> {
        self.coords.iter().filter(|(_, &c)| self.window.boundary_dist(c) >= margin).map(|(&v, _)| v).collect()
    }

    /// Delete the vertices with `ℓ > n` and the arrows inside `ℓ = n`; the
    /// column `ℓ = n` becomes frozen.
    pub fn truncate(&self, n: i64) -> Quiver {
        let mut q = self.clone();
        let gone: Vec<Vertex> = self.coords.iter().filter(|(_, c)| c.ell > n).map(|(&v, _)| v).collect();
        for v in gone {
            q.b.remove_vertex(v);
            q.coords.remove(&v);
            q.frozen.remove(&v);
        }
        let column: Vec<Vertex> = q.coords.iter().filter(|(_, c)| c.ell == n).map(|(&v, _)| v).collect();
        for (x, &u) in column.iter().enumerate() {
            for &w in &column[x + 1..] {
                q.b.set(u, w, 0);
            }
        }
        q.frozen.extend(column);
        if self.window.ell_max.is_none_or(|l| l >= n) {
            q.window.ell_max = Some(n);
            q.window.ell_real = true;
        }
        q
    }

    /// Remove every frozen vertex.
    pub fn drop_frozen(&self) -> Quiver {
        let mut q = self.clone();
        for &v in &self.frozen {
            q.b.remove_vertex(v);
            q.coords.remove(&v);
        }
        q.frozen.clear();
        q
    }

    /// Graphviz description; frozen vertices are boxed.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph Q {\n");
        for (&v, c) in &self.coords {
            let shape = if self.frozen.contains(&v) { "box" } else { "circle" };
            let _ = writeln!(s, "  v{} [label=\"({},{})\", shape={}];", v, c.ell, c.m, shape);
        }
        for (i, j, k) in self.arrows() {
            for _ in 0..k {
                let _ = writeln!(s, "  v{} -> v{};", i, j);
            }
        }
        s.push_str("}\n");
        s
    }
}

/// Arrow differences between `q1` and `q2` among vertices trusted in `q1`.
pub fn labeled_diff(q1: &Quiver, q2: &Quiver, margin: i64) -> Vec<Mismatch> {
    let trusted: Vec<Vertex> = q1.trusted(margin).into_iter().filter(|v| q2.coords.contains_key(v)).collect();
    let mut out = Vec::new();
    for (x, &i) in trusted.iter().enumerate() {
        for &j in &trusted[x + 1..] {
            let (l, r) = (q1.b.get(i, j), q2.b.get(i, j));
            if l != r {
                out.push(Mismatch { from: q1.coord_of(i), to: q1.coord_of(j), left: l, right: r });
            }
        }
    }
    out
}

/// Labeled arrow-multiset equality on the trusted interior.
pub fn equals_labeled(q1: &Quiver, q2: &Quiver, margin: i64) -> bool {
    labeled_diff(q1, q2, margin).is_empty()
}

/// The quiver of Geiss–Leclerc–Schröer for the prefix `w̃_{≤p}`.
pub fn gls_quiver(p: u32) -> Quiver {
    let cap = (1..=p).map(|k| coord(k).sum()).max().unwrap_or(0);
    let mut q = Quiver::empty(Window::triangle(cap));
    let letters: Vec<i64> = (1..=p).map(jp).collect();
    let plus: Vec<u32> = (1..=p).map(|k| p_plus_j(k, letters[k as usize - 1]).min(p + 1)).collect();
    for s in 1..=p {
        q.coords.insert(s, coord(s));
        if plus[s as usize - 1] == p + 1 {
            q.frozen.insert(s);
        }
        let sm = p_minus_j(s, letters[s as usize - 1]);
        if sm >= 1 {
            q.b.add_arrows(s, sm, 1);
        }
    }
    for s in 1..=p {
        let sp = plus[s as usize - 1];
        for t in (s + 1)..sp.min(p + 1) {
            let tp = plus[t as usize - 1];
            let diff = (letters[s as usize - 1] - letters[t as usize - 1]).abs();
            if sp < tp && tp <= p + 1 && diff == 1 {
                q.b.add_arrows(s, t, 1);
            }
        }
    }
    q
}

/// The GLS quiver whose vertex set is exactly `{ℓ + m ≤ cap}`.
pub fn gls_window(cap: i64) -> Quiver {
    gls_quiver(a_val(cap - 1) as u32)
}

/// The closed-form quiver `Q̃` on a window: even vertices send arrows to
/// `(ℓ±1, m)` and receive arrows from `(ℓ, m±1)`.
pub fn initial_quiver(window: Window) -> Result<Quiver> {
    let mut q = Quiver::empty(window);
    let coords = window.coords()?;
    for &c in &coords {
        q.coords.insert(coord_inv(c), c);
    }
    for &c in &coords {
        if !c.is_even() {
            continue;
        }
        let v = coord_inv(c);
        for d in [-1, 1] {
            if let Some(t) = q.vertex_of(Coord::new(c.ell + d, c.m)) {
                q.b.add_arrows(v, t, 1);
            }
            if let Some(s) = q.vertex_of(Coord::new(c.ell, c.m + d)) {
                q.b.add_arrows(s, v, 1);
            }
        }
    }
    Ok(q)
}

/// `Q̃_N` on the rectangle `ℓ ≤ N`, `m ≤ m_max`.
pub fn truncated_quiver(n: i64, m_max: i64) -> Result<Quiver> {
    Ok(initial_quiver(Window::rect(n, m_max))?.truncate(n))
}

/// `Q̄_N`: `Q̃_N` without its frozen column.
pub fn truncated_bar_quiver(n: i64, m_max: i64) -> Result<Quiver> {
    Ok(truncated_quiver(n, m_max)?.drop_frozen())
}

fn ascending(q: &Quiver, keep: impl Fn(Coord) -> bool) -> Vec<Coord> {
    let mut cs: Vec<Coord> =
        q.coords.iter().filter(|(v, c)| !q.frozen.contains(v) && keep(**c)).map(|(_, &c)| c).collect();
    cs.sort_by_key(|c| (c.sum(), c.ell));
    cs
}

/// Exchangeable vertices with `ℓ + m` even, ascending.
pub fn sigma_even(q: &Quiver) -> Vec<Coord> {
    ascending(q, |c| c.is_even())
}

/// Exchangeable vertices with `ℓ + m` odd, ascending.
pub fn sigma_odd(q: &Quiver) -> Vec<Coord> {
    ascending(q, |c| !c.is_even())
}

pub fn sigma_plus(q: &Quiver) -> Vec<Coord> {
    let mut s = sigma_even(q);
    s.extend(sigma_odd(q));
    s
}

pub fn sigma_minus(q: &Quiver) -> Vec<Coord> {
    let mut s = sigma_odd(q);
    s.extend(sigma_even(q));
    s
}

pub fn sigma_plus_n(q: &Quiver, n: i64) -> Vec<Coord> {
    sigma_plus(q).into_iter().filter(|c| c.ell < n).collect()
}

pub fn sigma_minus_n(q: &Quiver, n: i64) -> Vec<Coord> {
    sigma_minus(q).into_iter().filter(|c| c.ell < n).collect()
}

pub fn sigma_even_n(q: &Quiver, n: i64) -> Vec<Coord> {
    sigma_even(q).into_iter().filter(|c| c.ell < n).collect()
}

pub fn sigma_odd_n(q: &Quiver, n: i64) -> Vec<Coord> {
    sigma_odd(q).into_iter().filter(|c| c.ell < n).collect()
}

/// The blocks `Σ^{(s,e)}`: vertices with `m = s`, `ℓ ≡ e mod 2`, `ℓ < n`,
/// ascending, arranged as `(Σ^{(2,1)}, Σ^{(3,0)}, Σ^{(4,1)}, …), (Σ^{(3,1)}, Σ^{(4,0)}, …), …`.
pub fn sigma_hl(q: &Quiver, n: i64) -> Vec<Coord> {
    let m_max = q.coords.values().map(|c| c.m).max().unwrap_or(0);
    let mut out = Vec::new();
    for start in 2..=m_max {
        for (x, s) in (start..=m_max).enumerate() {
            let parity = if x % 2 == 0 { 1 } else { 0 };
            let mut block: Vec<Coord> = q
                .coords
                .iter()
                .filter(|(v, c)| !q.frozen.contains(v) && c.m == s && c.ell < n && c.ell % 2 == parity)
                .map(|(_, &c)| c)
                .collect();
            block.sort_by_key(|c| (c.sum(), c.ell));
            out.extend(block);
        }
    }
    out
}

/// Named comparison results.
#[derive(Clone, Debug, Default)]
pub struct Report {
    pub checks: Vec<(String, Vec<Mismatch>)>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|(_, m)| m.is_empty())
    }

    fn push(&mut self, name: &str, m: Vec<Mismatch>) {
        self.checks.push((name.into(), m));
    }
}

fn need_interior(window: &Window, margin: i64, min_size: i64) -> Result<()> {
    let room = window.cap_sum.map(|s| s - 2).into_iter().chain(window.m_max.map(|m| m - 1)).min().unwrap_or(0);
    if room - margin < min_size {
        return Err(Error::WindowTooSmall(format!("margin {} leaves no trusted interior", margin)));
    }
    Ok(())
}

/// `μ_Σeven(Q̃)` and `μ_Σodd(Q̃)` against `Q̃^op`.
pub fn verify_reversing(cap: i64, margin: i64) -> Result<Report> {
    let w = Window::triangle(cap);
    need_interior(&w, margin, 1)?;
    let q = initial_quiver(w)?;
    let op = q.opposite();
    let mut r = Report::default();
    r.push("even reverses", labeled_diff(&q.apply_schedule(&sigma_even(&q))?, &op, margin));
    r.push("odd reverses", labeled_diff(&q.apply_schedule(&sigma_odd(&q))?, &op, margin));
    Ok(r)
}

/// `μ_Σ+(Q̃)` and `μ_Σ-(Q̃)` against `Q̃`.
pub fn verify_periodicity(cap: i64, margin: i64) -> Result<Report> {
    let w = Window::triangle(cap);
    need_interior(&w, margin, 1)?;
    let q = initial_quiver(w)?;
    let mut r = Report::default();
    r.push("plus is periodic", labeled_diff(&q.apply_schedule(&sigma_plus(&q))?, &q, margin));
    r.push("minus is periodic", labeled_diff(&q.apply_schedule(&sigma_minus(&q))?, &q, margin));
    Ok(r)
}

/// Arrows joining `ℓ ≤ n-1` to `ℓ ≥ n+1` among trusted vertices.
pub fn crossing_arrows(q: &Quiver, n: i64, margin: i64) -> Vec<Mismatch> {
    let trusted = q.trusted(margin);
    q.arrows()
        .into_iter()
        .filter(|(i, j, _)| trusted.contains(i) && trusted.contains(j))
        .filter_map(|(i, j, k)| {
            let (a, b) = (q.coord_of(i), q.coord_of(j));
            let crosses = (a.ell < n && b.ell > n) || (a.ell > n && b.ell < n);
            crosses.then_some(Mismatch { from: a, to: b, left: k, right: 0 })
        })
        .collect()
}

/// `μ_{Σ±_N}(Q̄_N) = Q̄_N`, plus the absence of arrows across the column
/// `ℓ = N` after every step of `Σ±_N` applied to `Q̃`.
pub fn verify_periodicity_n(n: i64, m_max: i64, margin: i64) -> Result<Report> {
    if n < 2 {
        return Err(Error::Invalid(format!("N = {} must be at least 2", n)));
    }
    let w = Window::rect(n, m_max);
    need_interior(&w, margin, 1)?;
    let bar = truncated_bar_quiver(n, m_max)?;
    let mut r = Report::default();
    r.push("plus_N is periodic", labeled_diff(&bar.apply_schedule(&sigma_plus_n(&bar, n))?, &bar, margin));
    r.push("minus_N is periodic", labeled_diff(&bar.apply_schedule(&sigma_minus_n(&bar, n))?, &bar, margin));
    let full = initial_quiver(Window::rect(n + 3, m_max))?;
    for (name, s) in
        [("plus_N keeps the column", sigma_plus_n(&full, n)), ("minus_N keeps the column", sigma_minus_n(&full, n))]
    {
        let mut q = full.clone();
        let mut bad = Vec::new();
        for c in s {
            q = q.mutate_at(c)?;
            bad.extend(crossing_arrows(&q, n, margin));
        }
        r.push(name, bad);
    }
    Ok(r)
}

/// Quantum seed on the vertices of `q`: `L` from the initial `Λ`-matrix,
/// weights and labels of the determinantial modules. With
/// `freeze_boundary`, vertices on an artificial edge become frozen, so that
/// every exchangeable column is complete.
pub fn seed_from_quiver(q: &Quiver, freeze_boundary: bool) -> Result<QuantumSeed> {
    let vertices = q.vertex_set();
    let top = vertices.iter().copied().max().unwrap_or(0);
    let lv = lambda_vectors(top);
    let vs: Vec<Vertex> = vertices.iter().copied().collect();
    let mut l = SkewMatrix::new();
    for (x, &s) in vs.iter().enumerate() {
        for &t in &vs[x + 1..] {
            l.set(s, t, lambda_from_vectors(&lv, s, t)?);
        }
    }
    let boundary: BTreeSet<Vertex> = q.trusted(1).symmetric_difference(&vertices).copied().collect();
    let mut frozen = q.frozen.clone();
    if freeze_boundary {
        frozen.extend(boundary.iter().copied());
    }
    let mut b = q.b.clone();
    let fz: Vec<Vertex> = frozen.iter().copied().collect();
    for (x, &u) in fz.iter().enumerate() {
        for &w in &fz[x + 1..] {
            b.set(u, w, 0);
        }
    }
    let weights = vs.iter().map(|&v| (v, wt_of(&det_label(v)))).collect();
    let mut seed = QuantumSeed::new(vertices, frozen, b, l, weights);
    seed.labels = vs.iter().map(|&v| (v, det_label(v))).collect();
    if !freeze_boundary {
        seed.boundary = boundary;
    }
    Ok(seed)
}

/// Labels a new variable `W^{(ℓ)}_{m,j}` at `c(k) = (ℓ, m)` by solving its
/// weight for `j`.
pub struct KrWeightRule;

impl LabelRule for KrWeightRule {
    fn new_label(&self, _: &QuantumSeed, k: Vertex, w: &Weight) -> Option<Multisegment> {
        let c = coord(k);
        solve_w_index(c.ell, c.m, w).map(|j| w_label(c.ell, c.m, j))
    }
}

/// Labels the first mutation of an initial vertex by the head of the
/// cuspidal factor and its commuting partners; falls back on the weight when
/// the cuspidal factor is reversed or the vertex was already mutated.
pub struct PrimeRule;

impl LabelRule for PrimeRule {
    fn new_label(&self, seed: &QuantumSeed, k: Vertex, w: &Weight) -> Option<Multisegment> {
        let fresh = seed.labels.get(&k) == Some(&det_label(k));
        match prime_label(k) {
            Some(ms) if fresh && &wt_of(&ms) == w => Some(ms),
            _ => KrWeightRule.new_label(seed, k, w),
        }
    }
}

/// Run a schedule of coordinates on a seed.
pub fn seed_schedule(seed: &QuantumSeed, s: &[Coord], rule: &dyn LabelRule) -> Result<QuantumSeed> {
    let mut cur = seed.clone();
    for &c in s {
        cur = cur.mutate(coord_inv(c), rule)?.0;
    }
    Ok(cur)
}

/// Vertices of `among` whose label is not `⟨⟨ℓ,m⟩⟩^{(j_p + r)}`.
pub fn label_shift_defects(seed: &QuantumSeed, r: i64, among: &BTreeSet<Vertex>) -> Vec<Vertex> {
    among
        .iter()
        .copied()
        .filter(|&v| {
            let c = coord(v);
            seed.labels.get(&v) != Some(&shift_label(c.ell, c.m, jp(v), r))
        })
        .collect()
}

/// One mutation at `p` from the initial seed: the new weight against the
/// weight of the prime head, and the tracked label against the mutated
/// determinantial label.
pub fn first_mutation_defects(seed: &QuantumSeed, p: Vertex) -> Result<Vec<String>> {
    let (next, ex) = seed.mutate(p, &PrimeRule)?;
    let mut bad = Vec::new();
    if ex.new_weight != prime_weight(p) {
        bad.push(format!("p={}: exchange weight {} differs from the prime head", p, ex.new_weight));
    }
    let want = mutated_det_label(p);
    if next.labels.get(&p) != Some(&want) {
        bad.push(format!("p={}: tracked label {:?} differs from {}", p, next.labels.get(&p), want));
    }
    if let Some(head) = prime_label(p) {
        if head != want {
            bad.push(format!("p={}: prime head {} differs from {}", p, head, want));
        }
    }
    Ok(bad)
}
