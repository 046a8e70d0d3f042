//! Quantum seeds: compatible pairs `(L, B̃)`, quantum torus arithmetic,
//! mutation of pairs and of cluster variables, and the initial `Λ`-matrix of
//! the seed attached to `w̃`.
//!
//! Cluster variables are stored as expansions in the fixed initial torus,
//! where `X^a X^b = q^{½ Σ a_i b_j λ_ij} X^{a+b}`. Powers of `q` are kept in
//! half-units throughout.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::{Error, Result};
use crate::lattice::{apply_word, lambda_w, pair, HalfInt, Weight};
use crate::multiseg::Multisegment;
use crate::word::{jp, prefix, MutIndex};

/// Vertex identifier.
pub type Vertex = u32;

/// Element of `ℤ[q^{±1/2}]`, keyed by the exponent of `q^{1/2}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LaurentQ {
    c: BTreeMap<i64, i64>,
}

impl LaurentQ {
    pub fn zero() -> Self {
        LaurentQ::default()
    }

    pub fn one() -> Self {
        LaurentQ::monomial(1, 0)
    }

    /// `coeff · q^{half/2}`.
    pub fn monomial(coeff: i64, half: i64) -> Self {
        let mut l = LaurentQ::zero();
        l.add_term(half, coeff);
        l
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&i64, &i64)> {
        self.c.iter()
    }

    pub fn add_term(&mut self, half: i64, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let e = self.c.entry(half).or_insert(0);
        *e += coeff;
        if *e == 0 {
            self.c.remove(&half);
        }
    }

    pub fn add(&self, o: &LaurentQ) -> LaurentQ {
        let mut r = self.clone();
        for (&h, &c) in &o.c {
            r.add_term(h, c);
        }
        r
    }

    pub fn neg(&self) -> LaurentQ {
        LaurentQ { c: self.c.iter().map(|(&h, &c)| (h, -c)).collect() }
    }

    pub fn mul(&self, o: &LaurentQ) -> LaurentQ {
        let mut r = LaurentQ::zero();
        for (&h1, &c1) in &self.c {
            for (&h2, &c2) in &o.c {
                r.add_term(h1 + h2, c1 * c2);
            }
        }
        r
    }

    /// Multiply by `q^{half/2}`.
    pub fn shift(&self, half: i64) -> LaurentQ {
        LaurentQ { c: self.c.iter().map(|(&h, &c)| (h + half, c)).collect() }
    }

    pub fn is_nonnegative(&self) -> bool {
        self.c.values().all(|&c| c > 0)
    }

    /// Value at `q = 1`.
    pub fn at_one(&self) -> i64 {
        self.c.values().sum()
    }

    /// Exact division in `ℤ[q^{±1/2}]`.
    pub fn exact_div(&self, d: &LaurentQ) -> Result<LaurentQ> {
        let (&dtop, &dlead) = d.c.iter().next_back().ok_or(Error::NonLaurent)?;
        let mut rem = self.clone();
        let mut quo = LaurentQ::zero();
        let dlow = *d.c.keys().next().unwrap();
        let floor = match self.c.keys().next() {
            Some(&l) => l - dlow,
            None => return Ok(quo),
        };
        while let Some((&top, &lead)) = rem.c.iter().next_back() {
            if lead % dlead != 0 {
                return Err(Error::NonLaurent);
            }
            let h = top - dtop;
            if h < floor {
                return Err(Error::NonLaurent);
            }
            let t = LaurentQ::monomial(lead / dlead, h);
            rem = rem.add(&t.mul(d).neg());
            quo = quo.add(&t);
        }
        Ok(quo)
    }
}

impl fmt::Display for LaurentQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.c.is_empty() {
            return write!(f, "0");
        }
        for (i, (&h, &c)) in self.c.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            if h == 0 {
                write!(f, "{}", c)?;
            } else {
                write!(f, "{}q^({}/2)", c, h)?;
            }
        }
        Ok(())
    }
}

/// Skew-symmetric integer matrix, stored on pairs `i < j`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SkewMatrix {
    m: BTreeMap<(Vertex, Vertex), i64>,
}

impl SkewMatrix {
    pub fn new() -> Self {
        SkewMatrix::default()
    }

    pub fn get(&self, i: Vertex, j: Vertex) -> i64 {
        match i.cmp(&j) {
            Ordering::Less => *self.m.get(&(i, j)).unwrap_or(&0),
            Ordering::Greater => -*self.m.get(&(j, i)).unwrap_or(&0),
            Ordering::Equal => 0,
        }
    }

    /// Set `λ_ij = v` (and `λ_ji = -v`). Diagonal entries must be zero.
    pub fn set(&mut self, i: Vertex, j: Vertex, v: i64) {
        let (key, val) = match i.cmp(&j) {
            Ordering::Less => ((i, j), v),
            Ordering::Greater => ((j, i), -v),
            Ordering::Equal => {
                assert_eq!(v, 0, "skew matrices have zero diagonal");
                return;
            }
        };
        if val == 0 {
            self.m.remove(&key);
        } else {
            self.m.insert(key, val);
        }
    }

    pub fn entries(&self) -> impl Iterator<Item = (&(Vertex, Vertex), &i64)> {
        self.m.iter()
    }
}

/// Exchange matrix, stored skew-symmetrically as weighted adjacency.
///
/// `b_ij` counts arrows `i → j` minus arrows `j → i`. Entries between two
/// frozen vertices carry no information and are kept at zero.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExchangeMatrix {
    rows: BTreeMap<Vertex, BTreeMap<Vertex, i64>>,
}

impl ExchangeMatrix {
    pub fn new() -> Self {
        ExchangeMatrix::default()
    }

    pub fn get(&self, i: Vertex, j: Vertex) -> i64 {
        self.rows.get(&i).and_then(|r| r.get(&j)).copied().unwrap_or(0)
    }

    pub fn set(&mut self, i: Vertex, j: Vertex, v: i64) {
        assert!(i != j || v == 0, "no loops");
        Self::put(&mut self.rows, i, j, v);
        Self::put(&mut self.rows, j, i, -v);
    }

    /// Add `v` arrows `i → j`.
    pub fn add_arrows(&mut self, i: Vertex, j: Vertex, v: i64) {
        let cur = self.get(i, j);
        self.set(i, j, cur + v);
    }

    fn put(rows: &mut BTreeMap<Vertex, BTreeMap<Vertex, i64>>, i: Vertex, j: Vertex, v: i64) {
        if v == 0 {
            if let Some(r) = rows.get_mut(&i) {
                r.remove(&j);
                if r.is_empty() {
                    rows.remove(&i);
                }
            }
        } else {
            rows.entry(i).or_default().insert(j, v);
        }
    }

    /// Nonzero entries `(i, b_ik)` of the column of `k`.
    pub fn column(&self, k: Vertex) -> Vec<(Vertex, i64)> {
        match self.rows.get(&k) {
            Some(r) => r.iter().map(|(&i, &v)| (i, -v)).collect(),
            None => Vec::new(),
        }
    }

    pub fn neighbours(&self, k: Vertex) -> Vec<Vertex> {
        self.rows.get(&k).map(|r| r.keys().copied().collect()).unwrap_or_default()
    }

    /// Arrows `(i, j, count)` with `count > 0`.
    pub fn arrows(&self) -> Vec<(Vertex, Vertex, i64)> {
        let mut out = Vec::new();
        for (&i, r) in &self.rows {
            for (&j, &v) in r {
                if v > 0 {
                    out.push((i, j, v));
                }
            }
        }
        out
    }

    /// Remove every entry touching `v`.
    pub fn remove_vertex(&mut self, v: Vertex) {
        for n in self.neighbours(v) {
            self.set(v, n, 0);
        }
    }

    pub fn opposite(&self) -> ExchangeMatrix {
        let mut o = self.clone();
        for r in o.rows.values_mut() {
            for v in r.values_mut() {
                *v = -*v;
            }
        }
        o
    }
}

/// Mutation of an exchange matrix at `k`; `exchangeable` decides which
/// frozen–frozen entries stay untouched.
pub fn mutate_b(b: &ExchangeMatrix, k: Vertex, is_frozen: &dyn Fn(Vertex) -> bool) -> ExchangeMatrix {
    let mut out = b.clone();
    let nbrs = b.neighbours(k);
    for (x, &i) in nbrs.iter().enumerate() {
        for &j in &nbrs[x + 1..] {
            if is_frozen(i) && is_frozen(j) {
                continue;
            }
            let bik = b.get(i, k);
            let bkj = b.get(k, j);
            let prod = bik * bkj;
            if prod > 0 {
                let sign = if bik < 0 { -1 } else { 1 };
                out.set(i, j, b.get(i, j) + sign * prod);
            }
        }
    }
    for &i in &nbrs {
        out.set(i, k, -b.get(i, k));
    }
    out
}

/// Mutation of `L` at `k` with respect to `B̃`.
pub fn mutate_l(l: &SkewMatrix, b: &ExchangeMatrix, k: Vertex, vertices: &BTreeSet<Vertex>) -> SkewMatrix {
    let mut out = l.clone();
    let outs: Vec<(Vertex, i64)> = b.column(k).into_iter().filter(|&(_, v)| v < 0).collect();
    for &j in vertices {
        if j == k {
            continue;
        }
        let mut v = -l.get(k, j);
        for &(t, btk) in &outs {
            v += (-btk) * l.get(t, j);
        }
        out.set(k, j, v);
    }
    out
}

/// `μ_k(L, B̃)`.
pub fn mutate_pair(
    l: &SkewMatrix,
    b: &ExchangeMatrix,
    k: Vertex,
    vertices: &BTreeSet<Vertex>,
    frozen: &BTreeSet<Vertex>,
) -> (SkewMatrix, ExchangeMatrix) {
    let l2 = mutate_l(l, b, k, vertices);
    let b2 = mutate_b(b, k, &|v| frozen.contains(&v));
    (l2, b2)
}

/// Columns of the compatibility product `Σ_k λ_ik b_kj - δ_ij d` that fail.
pub fn compatibility_defects(
    l: &SkewMatrix,
    b: &ExchangeMatrix,
    d: i64,
    rows: &BTreeSet<Vertex>,
    columns: &[Vertex],
) -> Vec<(Vertex, Vertex, i64)> {
    let mut bad = Vec::new();
    for &j in columns {
        let col = b.column(j);
        for &i in rows {
            let s: i64 = col.iter().map(|&(k, bkj)| l.get(i, k) * bkj).sum();
            let want = if i == j { d } else { 0 };
            if s != want {
                bad.push((i, j, s));
            }
        }
    }
    bad
}

/// Exponent vector of a torus monomial; no zero entries.
pub type ExpVec = BTreeMap<Vertex, i64>;

fn exp_add(a: &ExpVec, b: &ExpVec, sign: i64) -> ExpVec {
    let mut r = a.clone();
    for (&i, &v) in b {
        let e = r.entry(i).or_insert(0);
        *e += sign * v;
        if *e == 0 {
            r.remove(&i);
        }
    }
    r
}

/// Degree-lexicographic comparison with vertices in increasing order.
pub fn cmp_monomial(a: &ExpVec, b: &ExpVec) -> Ordering {
    let da: i64 = a.values().sum();
    let db: i64 = b.values().sum();
    if da != db {
        return da.cmp(&db);
    }
    let keys: BTreeSet<Vertex> = a.keys().chain(b.keys()).copied().collect();
    for k in keys {
        let x = a.get(&k).copied().unwrap_or(0);
        let y = b.get(&k).copied().unwrap_or(0);
        if x != y {
            return x.cmp(&y);
        }
    }
    Ordering::Equal
}

/// Half-unit exponent `Σ a_i b_j λ_ij` of `X^a X^b = q^{·/2} X^{a+b}`.
pub fn twist(a: &ExpVec, b: &ExpVec, l: &SkewMatrix) -> i64 {
    let mut s = 0;
    for (&i, &x) in a {
        for (&j, &y) in b {
            s += x * y * l.get(i, j);
        }
    }
    s
}

/// Finite sum of normalised torus monomials.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TorusElement {
    terms: BTreeMap<ExpVec, LaurentQ>,
}

impl TorusElement {
    pub fn zero() -> Self {
        TorusElement::default()
    }

    pub fn one() -> Self {
        TorusElement::monomial(ExpVec::new(), LaurentQ::one())
    }

    pub fn var(i: Vertex) -> Self {
        let mut e = ExpVec::new();
        e.insert(i, 1);
        TorusElement::monomial(e, LaurentQ::one())
    }

    pub fn monomial(exp: ExpVec, coeff: LaurentQ) -> Self {
        let mut t = TorusElement::zero();
        t.add_term(exp, &coeff);
        t
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&ExpVec, &LaurentQ)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add_term(&mut self, exp: ExpVec, coeff: &LaurentQ) {
        if coeff.is_zero() {
            return;
        }
        let cur = self.terms.remove(&exp).unwrap_or_default();
        let next = cur.add(coeff);
        if !next.is_zero() {
            self.terms.insert(exp, next);
        }
    }

    pub fn add(&self, o: &TorusElement) -> TorusElement {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), c);
        }
        r
    }

    pub fn sub(&self, o: &TorusElement) -> TorusElement {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), &c.neg());
        }
        r
    }

    pub fn shift(&self, half: i64) -> TorusElement {
        TorusElement { terms: self.terms.iter().map(|(e, c)| (e.clone(), c.shift(half))).collect() }
    }

    /// Product in the torus defined by `l`.
    pub fn mul(&self, o: &TorusElement, l: &SkewMatrix) -> TorusElement {
        let mut r = TorusElement::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                let s = twist(ea, eb, l);
                r.add_term(exp_add(ea, eb, 1), &ca.mul(cb).shift(s));
            }
        }
        r
    }

    fn leading(&self) -> Option<(&ExpVec, &LaurentQ)> {
        self.terms.iter().max_by(|a, b| cmp_monomial(a.0, b.0))
    }

    fn lowest(&self) -> Option<&ExpVec> {
        self.terms.keys().min_by(|a, b| cmp_monomial(a, b))
    }

    /// All coefficients lie in `ℤ_{≥0}[q^{±1/2}]`.
    pub fn is_positive(&self) -> bool {
        self.terms.values().all(|c| c.is_nonnegative())
    }

    /// Set every variable of `drop` to 1.
    pub fn specialize(&self, drop: &BTreeSet<Vertex>) -> TorusElement {
        let mut r = TorusElement::zero();
        for (e, c) in &self.terms {
            let e2: ExpVec = e.iter().filter(|(k, _)| !drop.contains(k)).map(|(&k, &v)| (k, v)).collect();
            r.add_term(e2, c);
        }
        r
    }
}

impl fmt::Display for TorusElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (n, (e, c)) in self.terms.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({})X", c)?;
            write!(f, "{{")?;
            for (m, (i, v)) in e.iter().enumerate() {
                if m > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}:{}", i, v)?;
            }
            write!(f, "}}")?;
        }
        Ok(())
    }
}

/// Right exact division: the `Q` with `Q · den = num` in the torus of `l`.
pub fn exact_divide(num: &TorusElement, den: &TorusElement, l: &SkewMatrix) -> Result<TorusElement> {
    let (dlead_exp, dlead_c) = match den.leading() {
        Some((e, c)) => (e.clone(), c.clone()),
        None => return Err(Error::NonLaurent),
    };
    let dlow = den.lowest().cloned().unwrap_or_default();
    let floor = match num.lowest() {
        Some(e) => exp_add(e, &dlow, -1),
        None => return Ok(TorusElement::zero()),
    };
    let mut rem = num.clone();
    let mut quo = TorusElement::zero();
    let mut guard = 0usize;
    while let Some((nexp, ncoef)) = rem.leading().map(|(e, c)| (e.clone(), c.clone())) {
        guard += 1;
        if guard > 1_000_000 {
            return Err(Error::NonLaurent);
        }
        let t = exp_add(&nexp, &dlead_exp, -1);
        if cmp_monomial(&t, &floor) == Ordering::Less {
            return Err(Error::NonLaurent);
        }
        let s = twist(&t, &dlead_exp, l);
        let c = ncoef.exact_div(&dlead_c.shift(s))?;
        let term = TorusElement::monomial(t, c);
        rem = rem.sub(&term.mul(den, l));
        quo = quo.add(&term);
    }
    Ok(quo)
}

/// Assigns a label to the new variable produced by a mutation.
pub trait LabelRule {
    fn new_label(&self, seed: &QuantumSeed, k: Vertex, new_weight: &Weight) -> Option<Multisegment>;
}

/// Forget labels of mutated vertices.
pub struct ClearLabels;

impl LabelRule for ClearLabels {
    fn new_label(&self, _: &QuantumSeed, _: Vertex, _: &Weight) -> Option<Multisegment> {
        None
    }
}

/// Data of one exchange relation `x_k x'_k = q^· X^{plus} + q^· X^{minus}`.
#[derive(Clone, Debug)]
pub struct Exchange {
    pub k: Vertex,
    /// Vertices `i` with `b_ik > 0`, with multiplicity.
    pub plus: ExpVec,
    /// Vertices `i` with `b_ik < 0`, with multiplicity.
    pub minus: ExpVec,
    pub new_weight: Weight,
}

/// A quantum seed over a finite vertex window.
#[derive(Clone, Debug)]
pub struct QuantumSeed {
    pub vertices: BTreeSet<Vertex>,
    pub frozen: BTreeSet<Vertex>,
    /// Vertices whose true neighbourhood may leave the window.
    pub boundary: BTreeSet<Vertex>,
    pub b: ExchangeMatrix,
    pub l: SkewMatrix,
    /// The `L`-matrix of the fixed initial torus.
    pub torus: Arc<SkewMatrix>,
    pub vars: BTreeMap<Vertex, TorusElement>,
    pub labels: BTreeMap<Vertex, Multisegment>,
    pub weights: BTreeMap<Vertex, Weight>,
    /// Set frozen variables to 1 inside exchange monomials.
    pub specialize_frozen: bool,
    /// Recompute cluster variables on mutation; off for combinatorics-only runs.
    pub track_vars: bool,
}

impl QuantumSeed {
    pub fn new(
        vertices: BTreeSet<Vertex>,
        frozen: BTreeSet<Vertex>,
        b: ExchangeMatrix,
        l: SkewMatrix,
        weights: BTreeMap<Vertex, Weight>,
    ) -> Self {
        let vars = vertices.iter().map(|&v| (v, TorusElement::var(v))).collect();
        QuantumSeed {
            torus: Arc::new(l.clone()),
            vertices,
            frozen,
            boundary: BTreeSet::new(),
            b,
            l,
            vars,
            labels: BTreeMap::new(),
            weights,
            specialize_frozen: false,
            track_vars: true,
        }
    }

    pub fn is_exchangeable(&self, k: Vertex) -> bool {
        self.vertices.contains(&k) && !self.frozen.contains(&k)
    }

    pub fn exchangeable(&self) -> Vec<Vertex> {
        self.vertices.iter().copied().filter(|v| !self.frozen.contains(v)).collect()
    }

    /// Exchangeable columns whose full support is known.
    pub fn interior_columns(&self) -> Vec<Vertex> {
        self.exchangeable().into_iter().filter(|v| !self.boundary.contains(v)).collect()
    }

    /// Compatibility of `(L, B̃)` with `d` on the given columns.
    pub fn compatible(&self, d: i64, columns: &[Vertex]) -> Result<bool> {
        for &j in columns {
            if self.boundary.contains(&j) {
                return Err(Error::WindowTooSmall(alloc::format!("column {} reaches outside the window", j)));
            }
            if !self.is_exchangeable(j) {
                return Err(Error::NotExchangeable(j));
            }
        }
        Ok(compatibility_defects(&self.l, &self.b, d, &self.vertices, columns).is_empty())
    }

    /// Normalised monomial of the current cluster with non-negative exponents.
    pub fn cluster_monomial(&self, a: &ExpVec) -> TorusElement {
        let mut acc = TorusElement::one();
        for (&i, &e) in a {
            assert!(e >= 0, "cluster monomials have non-negative exponents");
            let x = &self.vars[&i];
            for _ in 0..e {
                acc = acc.mul(x, &self.torus);
            }
        }
        let idx: Vec<(Vertex, i64)> = a.iter().map(|(&i, &e)| (i, e)).collect();
        let mut s = 0;
        for x in 0..idx.len() {
            for y in 0..x {
                s += idx[x].1 * idx[y].1 * self.l.get(idx[x].0, idx[y].0);
            }
        }
        acc.shift(s)
    }

    /// The exchange data at `k` without performing the mutation.
    pub fn exchange_at(&self, k: Vertex) -> Result<Exchange> {
        if !self.is_exchangeable(k) {
            return Err(Error::NotExchangeable(k));
        }
        let mut plus = ExpVec::new();
        let mut minus = ExpVec::new();
        for (i, bik) in self.b.column(k) {
            if self.specialize_frozen && self.frozen.contains(&i) {
                continue;
            }
            if bik > 0 {
                plus.insert(i, bik);
            } else {
                minus.insert(i, -bik);
            }
        }
        let mut new_weight = -&self.weights.get(&k).cloned().unwrap_or_default();
        for (i, bik) in self.b.column(k) {
            if bik > 0 {
                new_weight += &self.weights.get(&i).cloned().unwrap_or_default().scale(bik);
            }
        }
        Ok(Exchange { k, plus, minus, new_weight })
    }

    /// Sum of the two exchange monomials, `q`-shifted as in the exchange relation.
    pub fn exchange_numerator(&self, ex: &Exchange) -> TorusElement {
        let k = ex.k;
        let shift = |a: &ExpVec| -> i64 { -a.iter().map(|(&t, &v)| v * self.l.get(k, t)).sum::<i64>() };
        self.cluster_monomial(&ex.plus)
            .shift(shift(&ex.plus))
            .add(&self.cluster_monomial(&ex.minus).shift(shift(&ex.minus)))
    }

    /// The new variable `x'_k` with `x'_k x_k` equal to the exchange numerator.
    pub fn exchange_quotient(&self, ex: &Exchange) -> Result<TorusElement> {
        exact_divide(&self.exchange_numerator(ex), &self.vars[&ex.k], &self.torus)
    }

    /// `μ_k` of the whole seed.
    pub fn mutate(&self, k: Vertex, rule: &dyn LabelRule) -> Result<(QuantumSeed, Exchange)> {
        let ex = self.exchange_at(k)?;
        let mut next = self.clone();
        if self.track_vars {
            next.vars.insert(k, self.exchange_quotient(&ex)?);
        } else {
            next.vars.remove(&k);
        }
        let (l2, b2) = mutate_pair(&self.l, &self.b, k, &self.vertices, &self.frozen);
        next.l = l2;
        next.b = b2;
        next.weights.insert(k, ex.new_weight.clone());
        match rule.new_label(self, k, &ex.new_weight) {
            Some(lab) => {
                next.labels.insert(k, lab);
            }
            None => {
                next.labels.remove(&k);
            }
        }
        Ok((next, ex))
    }

    /// `(m_k, m'_k)`.
    pub fn mutation_degrees(&self, k: Vertex) -> Result<(HalfInt, HalfInt)> {
        let dk = self.weights.get(&k).cloned().unwrap_or_default();
        let mut zeta = -&dk;
        let col = self.b.column(k);
        for &(i, bik) in &col {
            if bik > 0 {
                zeta += &self.weights.get(&i).cloned().unwrap_or_default().scale(bik);
            }
        }
        let base = pair(&dk, &zeta).to_int()?;
        let mut neg = 0;
        let mut pos = 0;
        for &(i, bik) in &col {
            let t = self.l.get(k, i) * bik;
            if bik < 0 {
                neg += t;
            } else {
                pos += t;
            }
        }
        Ok((HalfInt::from_doubled(base + neg), HalfInt::from_doubled(base + pos)))
    }

    /// Condition `λ_ij ≡ (d_i, d_j) mod 2` on all pairs; returns violations.
    pub fn parity_defects(&self) -> Vec<(Vertex, Vertex)> {
        let vs: Vec<Vertex> = self.vertices.iter().copied().collect();
        let mut bad = Vec::new();
        for (x, &i) in vs.iter().enumerate() {
            for &j in &vs[x..] {
                let p = pair(&self.weights[&i], &self.weights[&j]);
                if !p.is_integer() || (self.l.get(i, j) - p.doubled / 2) % 2 != 0 {
                    bad.push((i, j));
                }
            }
        }
        bad
    }

    /// Condition `Σ_i b_ik d_i = 0` on the given columns; returns violations.
    pub fn balance_defects(&self, columns: &[Vertex]) -> Vec<Vertex> {
        columns
            .iter()
            .copied()
            .filter(|&k| {
                let mut s = Weight::zero();
                for (i, bik) in self.b.column(k) {
                    s += &self.weights.get(&i).cloned().unwrap_or_default().scale(bik);
                }
                !s.is_zero()
            })
            .collect()
    }
}

/// `λ_k = w̃_{≤k} Λ_{j_k}` for `k = 1..=n`.
pub fn lambda_vectors(n: MutIndex) -> Vec<Weight> {
    let word = prefix(n);
    (1..=n).map(|k| apply_word(&word[..k as usize], &lambda_w(jp(k)))).collect()
}

/// Initial commutation exponent `λ_st` between determinantial modules.
pub fn lambda_init(s: MutIndex, t: MutIndex) -> Result<i64> {
    let n = s.max(t);
    let lv = lambda_vectors(n);
    lambda_from_vectors(&lv, s, t)
}

/// `λ_st` from precomputed `λ_k` (indexed from 1).
pub fn lambda_from_vectors(lv: &[Weight], s: MutIndex, t: MutIndex) -> Result<i64> {
    if s == t {
        return Ok(0);
    }
    if s > t {
        return lambda_from_vectors(lv, t, s).map(|v| -v);
    }
    let ls = &lv[s as usize - 1];
    let lt = &lv[t as usize - 1];
    let x = lt + &lambda_w(jp(t));
    let y = ls - &lambda_w(jp(s));
    Ok(-pair(&x, &y).to_int()?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exp(pairs: &[(Vertex, i64)]) -> ExpVec {
        pairs.iter().copied().collect()
    }

    #[test]
    fn torus_normalisation() {
        let mut l = SkewMatrix::new();
        l.set(1, 2, -1);
        let p = TorusElement::var(1).mul(&TorusElement::var(2), &l);
        assert_eq!(p, TorusElement::monomial(exp(&[(1, 1), (2, 1)]), LaurentQ::monomial(1, -1)));
        let a = TorusElement::monomial(exp(&[(1, 2), (2, -1)]), LaurentQ::one());
        assert_eq!(a.mul(&TorusElement::one(), &l), a);
        let inv = TorusElement::monomial(exp(&[(1, -2), (2, 1)]), LaurentQ::one());
        assert_eq!(a.mul(&inv, &l), TorusElement::one());
    }

    #[test]
    fn laurent_division() {
        let a = LaurentQ::monomial(1, 0).add(&LaurentQ::monomial(1, 2));
        let b = LaurentQ::monomial(1, 0).add(&LaurentQ::monomial(-1, 2));
        let prod = a.mul(&b);
        assert_eq!(prod.exact_div(&a).unwrap(), b);
        assert_eq!(LaurentQ::monomial(1, 0).exact_div(&a), Err(Error::NonLaurent));
    }

    #[test]
    fn torus_division() {
        let mut l = SkewMatrix::new();
        l.set(1, 2, 1);
        let x1 = TorusElement::var(1);
        let num = TorusElement::var(2).add(&TorusElement::one()).mul(&x1, &l);
        let q = exact_divide(&num, &x1, &l).unwrap();
        assert_eq!(q, TorusElement::var(2).add(&TorusElement::one()));
        assert_eq!(exact_divide(&x1, &x1, &l).unwrap(), TorusElement::one());
        assert!(exact_divide(&TorusElement::one(), &TorusElement::var(1).add(&TorusElement::one()), &l).is_err());
    }

    #[test]
    fn rank_two_exchange() {
        let vertices: BTreeSet<Vertex> = [1, 2].into_iter().collect();
        let mut b = ExchangeMatrix::new();
        b.add_arrows(1, 2, 1);
        let seed = QuantumSeed::new(vertices, [2].into_iter().collect(), b, SkewMatrix::new(), BTreeMap::new());
        let (next, _) = seed.mutate(1, &ClearLabels).unwrap();
        let expect = TorusElement::monomial(exp(&[(1, -1), (2, 1)]), LaurentQ::one())
            .add(&TorusElement::monomial(exp(&[(1, -1)]), LaurentQ::one()));
        assert_eq!(next.vars[&1], expect);
        let (back, _) = next.mutate(1, &ClearLabels).unwrap();
        assert_eq!(back.vars[&1], TorusElement::var(1));
        assert_eq!(back.b, seed.b);
    }

    #[test]
    fn path_mutation() {
        let vertices: BTreeSet<Vertex> = [1, 2, 3].into_iter().collect();
        let frozen = BTreeSet::new();
        let mut b = ExchangeMatrix::new();
        b.add_arrows(1, 2, 1);
        b.add_arrows(2, 3, 1);
        let (_, b2) = mutate_pair(&SkewMatrix::new(), &b, 2, &vertices, &frozen);
        assert_eq!(b2.get(1, 3), 1);
        assert_eq!(b2.get(2, 1), 1);
        assert_eq!(b2.get(3, 2), 1);
    }

    #[test]
    fn initial_lambda() {
        assert_eq!(lambda_init(1, 2).unwrap(), -1);
        assert_eq!(lambda_init(2, 1).unwrap(), 1);
        assert_eq!(lambda_init(3, 3).unwrap(), 0);
    }

    #[test]
    fn principal_pair_is_compatible() {
        // B̃ = [B; I], L = [[0, 2I], [-2I, 2B]]
        let mut b = ExchangeMatrix::new();
        b.add_arrows(1, 2, 1);
        b.add_arrows(3, 1, 1);
        b.add_arrows(4, 2, 1);
        let mut l = SkewMatrix::new();
        l.set(1, 3, 2);
        l.set(2, 4, 2);
        l.set(3, 4, 2);
        let rows: BTreeSet<Vertex> = [1, 2, 3, 4].into_iter().collect();
        assert!(compatibility_defects(&l, &b, 2, &rows, &[1, 2]).is_empty());
        let frozen: BTreeSet<Vertex> = [3, 4].into_iter().collect();
        let (l2, b2) = mutate_pair(&l, &b, 1, &rows, &frozen);
        assert!(compatibility_defects(&l2, &b2, 2, &rows, &[1, 2]).is_empty());
        let (l3, b3) = mutate_pair(&l2, &b2, 1, &rows, &frozen);
        assert_eq!((l3, b3), (l, b.clone()));
        assert!(!compatibility_defects(&SkewMatrix::new(), &b, 2, &rows, &[1]).is_empty());
    }
}
