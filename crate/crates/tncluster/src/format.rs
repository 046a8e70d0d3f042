//! JSON forms of weights, multisegments, quivers, seeds and module labels.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use tncluster_core::affine::{ModuleLabel, SpectralParam};
use tncluster_core::lattice::{Coeffs, Weight};
use tncluster_core::multiseg::Multisegment;
use tncluster_core::qcluster::{ExchangeMatrix, QuantumSeed};
use tncluster_core::quiver::{Quiver, Window};
use tncluster_core::word::coord;
use tncluster_core::Error;

fn coeffs_out(c: &Coeffs) -> BTreeMap<String, i64> {
    c.iter().map(|(k, v)| (k.to_string(), *v)).collect()
}

fn coeffs_in(c: &BTreeMap<String, i64>) -> Result<Coeffs, Error> {
    c.iter()
        .map(|(k, v)| {
            k.parse::<i64>().map(|k| (k, *v)).map_err(|_| Error::Invalid(format!("index {:?} is not an integer", k)))
        })
        .collect()
}

/// `{"lam": {"i": c}, "eps": {"a": c}}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightJson {
    #[serde(default)]
    pub lam: BTreeMap<String, i64>,
    #[serde(default)]
    pub eps: BTreeMap<String, i64>,
}

impl From<&Weight> for WeightJson {
    fn from(w: &Weight) -> Self {
        WeightJson { lam: coeffs_out(w.lam_part()), eps: coeffs_out(w.eps_part()) }
    }
}

impl TryFrom<&WeightJson> for Weight {
    type Error = Error;
    fn try_from(w: &WeightJson) -> Result<Self, Error> {
        Ok(Weight::from_parts(coeffs_in(&w.lam)?, coeffs_in(&w.eps)?))
    }
}

pub fn weight_to_json(w: &Weight) -> String {
    serde_json::to_string(&WeightJson::from(w)).expect("weights serialize")
}

pub fn weight_from_json(s: &str) -> Result<Weight, Error> {
    let w: WeightJson = serde_json::from_str(s).map_err(|e| Error::Invalid(e.to_string()))?;
    Weight::try_from(&w)
}

/// A multisegment as a list of `[a, b]`.
pub fn multiseg_to_json(ms: &Multisegment) -> String {
    let v: Vec<[i64; 2]> = ms.to_pairs().into_iter().map(|(a, b)| [a, b]).collect();
    serde_json::to_string(&v).expect("pairs serialize")
}

pub fn multiseg_from_json(s: &str) -> Result<Multisegment, Error> {
    let v: Vec<[i64; 2]> = serde_json::from_str(s).map_err(|e| Error::Invalid(e.to_string()))?;
    Multisegment::from_pairs(&v.iter().map(|p| (p[0], p[1])).collect::<Vec<_>>())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexJson {
    pub p: u32,
    pub ell: i64,
    pub m: i64,
    pub frozen: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowJson {
    pub cap_sum: Option<i64>,
    pub ell_max: Option<i64>,
    pub m_max: Option<i64>,
    pub ell_real: bool,
}

/// Vertices with coordinates and one `[src, dst]` entry per arrow.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuiverJson {
    pub window: WindowJson,
    pub vertices: Vec<VertexJson>,
    pub arrows: Vec<[u32; 2]>,
}

impl From<&Quiver> for QuiverJson {
    fn from(q: &Quiver) -> Self {
        let w = &q.window;
        QuiverJson {
            window: WindowJson { cap_sum: w.cap_sum, ell_max: w.ell_max, m_max: w.m_max, ell_real: w.ell_real },
            vertices: q
                .coords
                .iter()
                .map(|(&p, c)| VertexJson { p, ell: c.ell, m: c.m, frozen: q.frozen.contains(&p) })
                .collect(),
            arrows: q.arrows().into_iter().flat_map(|(i, j, k)| std::iter::repeat_n([i, j], k as usize)).collect(),
        }
    }
}

impl TryFrom<&QuiverJson> for Quiver {
    type Error = Error;
    fn try_from(j: &QuiverJson) -> Result<Self, Error> {
        let mut coords = BTreeMap::new();
        let mut frozen = std::collections::BTreeSet::new();
        for v in &j.vertices {
            if coord(v.p).ell != v.ell || coord(v.p).m != v.m {
                return Err(Error::Invalid(format!("vertex {} is not at ({}, {})", v.p, v.ell, v.m)));
            }
            coords.insert(v.p, coord(v.p));
            if v.frozen {
                frozen.insert(v.p);
            }
        }
        let mut b = ExchangeMatrix::new();
        for &[s, t] in &j.arrows {
            if !coords.contains_key(&s) || !coords.contains_key(&t) || s == t {
                return Err(Error::Invalid(format!("arrow {} -> {} leaves the vertex set", s, t)));
            }
            b.add_arrows(s, t, 1);
        }
        let w = &j.window;
        let window = Window { cap_sum: w.cap_sum, ell_max: w.ell_max, m_max: w.m_max, ell_real: w.ell_real };
        Ok(Quiver { window, coords, frozen, b })
    }
}

pub fn quiver_to_json(q: &Quiver) -> String {
    serde_json::to_string(&QuiverJson::from(q)).expect("quivers serialize")
}

pub fn quiver_from_json(s: &str) -> Result<Quiver, Error> {
    let j: QuiverJson = serde_json::from_str(s).map_err(|e| Error::Invalid(e.to_string()))?;
    Quiver::try_from(&j)
}

/// Coordinates, sparse `B̃` and `L`, labels and variables of a seed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedJson {
    pub coords: Vec<VertexJson>,
    pub b: Vec<[i64; 3]>,
    pub l: Vec<[i64; 3]>,
    pub labels: BTreeMap<u32, Vec<[i64; 2]>>,
    pub vars: BTreeMap<u32, String>,
}

impl From<&QuantumSeed> for SeedJson {
    fn from(s: &QuantumSeed) -> Self {
        SeedJson {
            coords: s
                .vertices
                .iter()
                .map(|&p| {
                    let c = coord(p);
                    VertexJson { p, ell: c.ell, m: c.m, frozen: s.frozen.contains(&p) }
                })
                .collect(),
            b: s.b.arrows().into_iter().map(|(i, j, v)| [i as i64, j as i64, v]).collect(),
            l: s.l.entries().map(|(&(i, j), &v)| [i as i64, j as i64, v]).collect(),
            labels: s
                .labels
                .iter()
                .map(|(&v, ms)| (v, ms.to_pairs().into_iter().map(|(a, b)| [a, b]).collect()))
                .collect(),
            vars: s.vars.iter().map(|(&v, x)| (v, x.to_string())).collect(),
        }
    }
}

pub fn seed_to_json(s: &QuantumSeed) -> String {
    serde_json::to_string(&SeedJson::from(s)).expect("seeds serialize")
}

/// `{"kind", "node", "m", "zeta", "e"}`; a head pair carries its two
/// fundamental factors in `parts`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabelJson {
    pub kind: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub node: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub m: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub zeta: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub e: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub parts: Option<Vec<LabelJson>>,
}

impl LabelJson {
    fn bare(kind: &str) -> Self {
        LabelJson { kind: kind.into(), node: None, m: None, zeta: None, e: None, parts: None }
    }

    fn fund(node: i64, x: SpectralParam) -> Self {
        LabelJson { node: Some(node), zeta: Some(x.zeta), e: Some(x.e), ..LabelJson::bare("Fund") }
    }
}

impl From<&ModuleLabel> for LabelJson {
    fn from(l: &ModuleLabel) -> Self {
        match *l {
            ModuleLabel::Unit => LabelJson::bare("Unit"),
            ModuleLabel::Zero => LabelJson::bare("Zero"),
            ModuleLabel::Fund(i, x) => LabelJson::fund(i, x),
            ModuleLabel::Kr(i, m, x) => LabelJson { kind: "KR".into(), m: Some(m), ..LabelJson::fund(i, x) },
            ModuleLabel::HeadPair(a, b) => LabelJson {
                parts: Some(vec![LabelJson::fund(a.0, a.1), LabelJson::fund(b.0, b.1)]),
                ..LabelJson::bare("HeadPair")
            },
        }
    }
}

impl TryFrom<&LabelJson> for ModuleLabel {
    type Error = Error;
    fn try_from(j: &LabelJson) -> Result<Self, Error> {
        let missing = |f: &str| Error::Invalid(format!("{} label needs field {}", j.kind, f));
        let fund = |j: &LabelJson| -> Result<(i64, SpectralParam), Error> {
            Ok((
                j.node.ok_or_else(|| missing("node"))?,
                SpectralParam::new(j.zeta.ok_or_else(|| missing("zeta"))?, j.e.ok_or_else(|| missing("e"))?),
            ))
        };
        Ok(match j.kind.as_str() {
            "Unit" => ModuleLabel::Unit,
            "Zero" => ModuleLabel::Zero,
            "Fund" => {
                let (i, x) = fund(j)?;
                ModuleLabel::Fund(i, x)
            }
            "KR" => {
                let (i, x) = fund(j)?;
                ModuleLabel::Kr(i, j.m.ok_or_else(|| missing("m"))?, x)
            }
            "HeadPair" => match j.parts.as_deref() {
                Some([a, b]) => ModuleLabel::HeadPair(fund(a)?, fund(b)?),
                _ => return Err(missing("parts")),
            },
            k => return Err(Error::Invalid(format!("unknown label kind {:?}", k))),
        })
    }
}

pub fn label_to_json(l: &ModuleLabel) -> String {
    serde_json::to_string(&LabelJson::from(l)).expect("labels serialize")
}

pub fn label_from_json(s: &str) -> Result<ModuleLabel, Error> {
    let j: LabelJson = serde_json::from_str(s).map_err(|e| Error::Invalid(e.to_string()))?;
    ModuleLabel::try_from(&j)
}
