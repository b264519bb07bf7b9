//! Finite globular sets, reflexive and non-reflexive.
//!
//! A [`Presentation`] lists its cells dimension by dimension together with
//! the source and target maps and, in reflexive mode, the putative-identity
//! map `refl`. Nothing is checked on construction; [`validate_presentation`]
//! reports every violated equation instead.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest supported dimension.
pub const MAX_DIM_CAP: usize = 4;
/// Dimension used by the built-in presentations.
pub const DEFAULT_MAX_DIM: usize = 3;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GlobError {
    #[error("dimension {requested} exceeds the maximum dimension {max}")]
    Dimension { requested: usize, max: usize },
    #[error("max_dim {0} is above the supported cap of {MAX_DIM_CAP}")]
    DimensionCap(usize),
    #[error("expected a {expected} presentation")]
    Mode { expected: Mode },
    #[error("unknown {dim}-cell `{id}`")]
    UnknownCell { dim: usize, id: String },
    #[error("duplicate {dim}-cell `{id}`")]
    DuplicateCell { dim: usize, id: String },
    #[error("presentation is invalid ({0} violations)")]
    Invalid(usize),
    #[error("malformed presentation: {0}")]
    Malformed(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Mode {
    #[serde(rename = "reflexive")]
    Reflexive,
    #[serde(rename = "nonreflexive")]
    NonReflexive,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Reflexive => "reflexive",
            Mode::NonReflexive => "nonreflexive",
        })
    }
}

impl std::str::FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "reflexive" => Ok(Mode::Reflexive),
            "nonreflexive" | "non-reflexive" => Ok(Mode::NonReflexive),
            other => Err(format!("unknown mode `{other}`")),
        }
    }
}

/// A named cell of a presentation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CellRef {
    pub dim: usize,
    pub id: String,
}

impl CellRef {
    pub fn new(dim: usize, id: impl Into<String>) -> Self {
        CellRef { dim, id: id.into() }
    }
}

impl fmt::Display for CellRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.id, self.dim)
    }
}

/// A finite n-globular set.
///
/// `src[k]` and `tgt[k]` map the k-cells to (k-1)-cells (index 0 is unused),
/// `refl[k]` maps k-cells to (k+1)-cells. `formal[k]` records, for k-cells
/// added by [`free_reflexive_completion`], the (k-1)-cell they are the
/// identity of.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    max_dim: usize,
    mode: Mode,
    cells: Vec<Vec<String>>,
    src: Vec<BTreeMap<String, String>>,
    tgt: Vec<BTreeMap<String, String>>,
    refl: Vec<BTreeMap<String, String>>,
    formal: Vec<BTreeMap<String, String>>,
}

impl Presentation {
    pub fn new(max_dim: usize, mode: Mode) -> Result<Self, GlobError> {
        if max_dim > MAX_DIM_CAP {
            return Err(GlobError::DimensionCap(max_dim));
        }
        let levels = max_dim + 1;
        Ok(Presentation {
            max_dim,
            mode,
            cells: vec![Vec::new(); levels],
            src: vec![BTreeMap::new(); levels],
            tgt: vec![BTreeMap::new(); levels],
            refl: vec![BTreeMap::new(); levels],
            formal: vec![BTreeMap::new(); levels],
        })
    }

    pub fn max_dim(&self) -> usize {
        self.max_dim
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn is_reflexive(&self) -> bool {
        self.mode == Mode::Reflexive
    }

    pub fn cells(&self, dim: usize) -> &[String] {
        self.cells.get(dim).map(Vec::as_slice).unwrap_or(&[])
    }

    pub fn contains(&self, dim: usize, id: &str) -> bool {
        self.cells(dim).iter().any(|c| c == id)
    }

    pub fn cell(&self, dim: usize, id: &str) -> Result<CellRef, GlobError> {
        if self.contains(dim, id) {
            Ok(CellRef::new(dim, id))
        } else {
            Err(GlobError::UnknownCell { dim, id: id.to_string() })
        }
    }

    /// Adds a 0-cell.
    pub fn add_point(&mut self, id: &str) -> Result<(), GlobError> {
        self.push_cell(0, id)
    }

    /// Adds a cell of dimension `dim ≥ 1` with the given source and target.
    /// Boundaries are recorded as given; see [`validate_presentation`].
    pub fn add_cell(&mut self, dim: usize, id: &str, src: &str, tgt: &str) -> Result<(), GlobError> {
        if dim == 0 {
            return Err(GlobError::Malformed("0-cells have no boundary".into()));
        }
        self.push_cell(dim, id)?;
        self.src[dim].insert(id.to_string(), src.to_string());
        self.tgt[dim].insert(id.to_string(), tgt.to_string());
        Ok(())
    }

    fn push_cell(&mut self, dim: usize, id: &str) -> Result<(), GlobError> {
        if dim > self.max_dim {
            return Err(GlobError::Dimension { requested: dim, max: self.max_dim });
        }
        if self.contains(dim, id) {
            return Err(GlobError::DuplicateCell { dim, id: id.to_string() });
        }
        self.cells[dim].push(id.to_string());
        Ok(())
    }

    /// Sets `refl(id) = image` for a cell of dimension `dim < max_dim`.
    pub fn set_refl(&mut self, dim: usize, id: &str, image: &str) -> Result<(), GlobError> {
        if dim >= self.max_dim {
            return Err(GlobError::Dimension { requested: dim + 1, max: self.max_dim });
        }
        self.refl[dim].insert(id.to_string(), image.to_string());
        Ok(())
    }

    /// Overwrites the recorded source of a cell.
    pub fn set_src(&mut self, dim: usize, id: &str, src: &str) {
        if let Some(map) = self.src.get_mut(dim) {
            map.insert(id.to_string(), src.to_string());
        }
    }

    /// Overwrites the recorded target of a cell.
    pub fn set_tgt(&mut self, dim: usize, id: &str, tgt: &str) {
        if let Some(map) = self.tgt.get_mut(dim) {
            map.insert(id.to_string(), tgt.to_string());
        }
    }

    pub fn src_of(&self, dim: usize, id: &str) -> Option<&str> {
        self.src.get(dim)?.get(id).map(String::as_str)
    }

    pub fn tgt_of(&self, dim: usize, id: &str) -> Option<&str> {
        self.tgt.get(dim)?.get(id).map(String::as_str)
    }

    pub fn refl_of(&self, dim: usize, id: &str) -> Option<&str> {
        self.refl.get(dim)?.get(id).map(String::as_str)
    }

    /// The cell `c` with `refl(c) = id`, if `id` is in the image of `refl`.
    pub fn refl_origin(&self, dim: usize, id: &str) -> Option<&str> {
        if dim == 0 {
            return None;
        }
        self.refl[dim - 1].iter().find(|(_, image)| image.as_str() == id).map(|(origin, _)| origin.as_str())
    }

    /// For a cell added as a formal identity, the cell it is the identity of.
    pub fn formal_origin(&self, dim: usize, id: &str) -> Option<&str> {
        self.formal.get(dim)?.get(id).map(String::as_str)
    }

    pub fn is_formal_identity(&self, dim: usize, id: &str) -> bool {
        self.formal_origin(dim, id).is_some()
    }

    /// Iterated source down to dimension `to`.
    pub fn src_to(&self, dim: usize, id: &str, to: usize) -> Option<&str> {
        let mut cur = self.cells(dim).iter().find(|c| *c == id)?.as_str();
        for d in (to + 1..=dim).rev() {
            cur = self.src_of(d, cur)?;
        }
        Some(cur)
    }

    /// Iterated target down to dimension `to`.
    pub fn tgt_to(&self, dim: usize, id: &str, to: usize) -> Option<&str> {
        let mut cur = self.cells(dim).iter().find(|c| *c == id)?.as_str();
        for d in (to + 1..=dim).rev() {
            cur = self.tgt_of(d, cur)?;
        }
        Some(cur)
    }

    pub fn cell_count(&self) -> usize {
        self.cells.iter().map(Vec::len).sum()
    }

    /// Stable 64-bit digest of the canonical JSON form (FNV-1a).
    pub fn fingerprint(&self) -> u64 {
        let json = self.to_json_string();
        let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
        for byte in json.bytes() {
            hash ^= u64::from(byte);
            hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
        }
        hash
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&PresentationJson::from(self)).expect("presentation serializes")
    }

    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(&PresentationJson::from(self)).expect("presentation serializes")
    }

    pub fn from_json_str(text: &str) -> Result<Self, GlobError> {
        let raw: PresentationJson = serde_json::from_str(text).map_err(|e| GlobError::Malformed(e.to_string()))?;
        raw.try_into()
    }

    pub fn from_json_file(path: &Path) -> Result<Self, GlobError> {
        let text =
            std::fs::read_to_string(path).map_err(|e| GlobError::Malformed(format!("{}: {e}", path.display())))?;
        Self::from_json_str(&text)
    }
}

/// On-disk form. Maps are keyed by dimension (as a decimal string) and then by
/// cell id. `formal` is optional and only written when non-empty.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PresentationJson {
    max_dim: usize,
    mode: Mode,
    cells: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    src: BTreeMap<String, BTreeMap<String, String>>,
    #[serde(default)]
    tgt: BTreeMap<String, BTreeMap<String, String>>,
    #[serde(default)]
    refl: BTreeMap<String, BTreeMap<String, String>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    formal: BTreeMap<String, BTreeMap<String, String>>,
}

fn keyed<T: Clone>(levels: &[T], skip: impl Fn(&T) -> bool) -> BTreeMap<String, T> {
    levels.iter().enumerate().filter(|(_, v)| !skip(v)).map(|(k, v)| (k.to_string(), v.clone())).collect()
}

impl From<&Presentation> for PresentationJson {
    fn from(p: &Presentation) -> Self {
        PresentationJson {
            max_dim: p.max_dim,
            mode: p.mode,
            cells: keyed(&p.cells, |_| false),
            src: keyed(&p.src, BTreeMap::is_empty),
            tgt: keyed(&p.tgt, BTreeMap::is_empty),
            refl: keyed(&p.refl, BTreeMap::is_empty),
            formal: keyed(&p.formal, BTreeMap::is_empty),
        }
    }
}

fn parse_level(key: &str, max_dim: usize) -> Result<usize, GlobError> {
    let dim: usize = key.parse().map_err(|_| GlobError::Malformed(format!("dimension key `{key}` is not a number")))?;
    if dim > max_dim {
        return Err(GlobError::Dimension { requested: dim, max: max_dim });
    }
    Ok(dim)
}

impl TryFrom<PresentationJson> for Presentation {
    type Error = GlobError;

    fn try_from(raw: PresentationJson) -> Result<Self, GlobError> {
        let mut p = Presentation::new(raw.max_dim, raw.mode)?;
        for (key, ids) in raw.cells {
            let dim = parse_level(&key, raw.max_dim)?;
            for id in ids {
                p.push_cell(dim, &id)?;
            }
        }
        for (key, map) in raw.src {
            p.src[parse_level(&key, raw.max_dim)?] = map;
        }
        for (key, map) in raw.tgt {
            p.tgt[parse_level(&key, raw.max_dim)?] = map;
        }
        for (key, map) in raw.refl {
            p.refl[parse_level(&key, raw.max_dim)?] = map;
        }
        for (key, map) in raw.formal {
            p.formal[parse_level(&key, raw.max_dim)?] = map;
        }
        if p.mode == Mode::NonReflexive && p.refl.iter().any(|m| !m.is_empty()) {
            return Err(GlobError::Malformed("refl given for a nonreflexive presentation".into()));
        }
        Ok(p)
    }
}

/// Which equation a [`Violation`] breaks.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Equation {
    /// `s(s(c)) = s(t(c))`
    #[serde(rename = "ss=st")]
    SourceGlobular,
    /// `t(s(c)) = t(t(c))`
    #[serde(rename = "ts=tt")]
    TargetGlobular,
    /// `s(refl(c)) = c`
    #[serde(rename = "si=1")]
    ReflSource,
    /// `t(refl(c)) = c`
    #[serde(rename = "ti=1")]
    ReflTarget,
    /// a map is missing a value or points outside the declared cells
    #[serde(rename = "map")]
    Map,
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Equation::SourceGlobular => "ss=st",
            Equation::TargetGlobular => "ts=tt",
            Equation::ReflSource => "si=1",
            Equation::ReflTarget => "ti=1",
            Equation::Map => "map",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub cell: CellRef,
    pub equation: Equation,
    pub detail: String,
}

/// Every violated equation instance; empty means valid.
pub fn validate_presentation(p: &Presentation) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut map_violation = |cell: CellRef, detail: String| {
        out.push(Violation { cell, equation: Equation::Map, detail });
    };

    for dim in 1..=p.max_dim {
        for id in p.cells(dim) {
            for (which, image) in [("src", p.src_of(dim, id)), ("tgt", p.tgt_of(dim, id))] {
                match image {
                    None => map_violation(CellRef::new(dim, id.as_str()), format!("{which} undefined")),
                    Some(img) if !p.contains(dim - 1, img) => map_violation(
                        CellRef::new(dim, id.as_str()),
                        format!("{which} `{img}` is not a {}-cell", dim - 1),
                    ),
                    _ => {}
                }
            }
        }
        for key in p.src[dim].keys().chain(p.tgt[dim].keys()) {
            if !p.contains(dim, key) {
                map_violation(CellRef::new(dim, key.as_str()), "boundary given for an undeclared cell".into());
            }
        }
    }
    if p.mode == Mode::Reflexive {
        for dim in 0..p.max_dim {
            for id in p.cells(dim) {
                match p.refl_of(dim, id) {
                    None => map_violation(CellRef::new(dim, id.as_str()), "refl undefined".into()),
                    Some(img) if !p.contains(dim + 1, img) => {
                        map_violation(CellRef::new(dim, id.as_str()), format!("refl `{img}` is not a {}-cell", dim + 1))
                    }
                    _ => {}
                }
            }
        }
    }
    for dim in 0..=p.max_dim {
        for key in p.refl[dim].keys() {
            if !p.contains(dim, key) || p.mode == Mode::NonReflexive || dim == p.max_dim {
                map_violation(CellRef::new(dim, key.as_str()), "refl given for a cell that cannot carry one".into());
            }
        }
    }

    for dim in 2..=p.max_dim {
        for id in p.cells(dim) {
            let (Some(s), Some(t)) = (p.src_of(dim, id), p.tgt_of(dim, id)) else { continue };
            let ss = p.src_of(dim - 1, s);
            let st = p.src_of(dim - 1, t);
            let ts = p.tgt_of(dim - 1, s);
            let tt = p.tgt_of(dim - 1, t);
            if let (Some(ss), Some(st)) = (ss, st) {
                if ss != st {
                    out.push(Violation {
                        cell: CellRef::new(dim, id.as_str()),
                        equation: Equation::SourceGlobular,
                        detail: format!("s(s) = {ss} but s(t) = {st}"),
                    });
                }
            }
            if let (Some(ts), Some(tt)) = (ts, tt) {
                if ts != tt {
                    out.push(Violation {
                        cell: CellRef::new(dim, id.as_str()),
                        equation: Equation::TargetGlobular,
                        detail: format!("t(s) = {ts} but t(t) = {tt}"),
                    });
                }
            }
        }
    }

    if p.mode == Mode::Reflexive {
        for dim in 0..p.max_dim {
            for id in p.cells(dim) {
                let Some(img) = p.refl_of(dim, id) else { continue };
                if let Some(s) = p.src_of(dim + 1, img) {
                    if s != id {
                        out.push(Violation {
                            cell: CellRef::new(dim, id.as_str()),
                            equation: Equation::ReflSource,
                            detail: format!("s(refl) = {s}"),
                        });
                    }
                }
                if let Some(t) = p.tgt_of(dim + 1, img) {
                    if t != id {
                        out.push(Violation {
                            cell: CellRef::new(dim, id.as_str()),
                            equation: Equation::ReflTarget,
                            detail: format!("t(refl) = {t}"),
                        });
                    }
                }
            }
        }
    }
    out
}

/// Discards every cell above dimension `m`, and `refl` on the m-cells.
pub fn truncate(p: &Presentation, m: usize) -> Result<Presentation, GlobError> {
    if m > p.max_dim {
        return Err(GlobError::Dimension { requested: m, max: p.max_dim });
    }
    let keep = m + 1;
    let mut refl: Vec<_> = p.refl[..keep].to_vec();
    refl[m].clear();
    Ok(Presentation {
        max_dim: m,
        mode: p.mode,
        cells: p.cells[..keep].to_vec(),
        src: p.src[..keep].to_vec(),
        tgt: p.tgt[..keep].to_vec(),
        refl,
        formal: p.formal[..keep].to_vec(),
    })
}

fn fresh_identity_name(p: &Presentation, dim: usize, origin: &str) -> String {
    let mut name = format!("i({origin})");
    while p.contains(dim, &name) {
        name.push('\'');
    }
    name
}

/// Freely adds a formal identity `i(c)` for every cell `c` below the top
/// dimension, including the identities added along the way.
pub fn free_reflexive_completion(p: &Presentation) -> Result<Presentation, GlobError> {
    if p.mode == Mode::Reflexive {
        return Err(GlobError::Mode { expected: Mode::NonReflexive });
    }
    let violations = validate_presentation(p).len();
    if violations > 0 {
        return Err(GlobError::Invalid(violations));
    }
    let mut out = p.clone();
    out.mode = Mode::Reflexive;
    for dim in 0..p.max_dim {
        let below: Vec<String> = out.cells[dim].clone();
        for origin in below {
            let name = fresh_identity_name(&out, dim + 1, &origin);
            out.add_cell(dim + 1, &name, &origin, &origin)?;
            out.refl[dim].insert(origin.clone(), name.clone());
            out.formal[dim + 1].insert(name, origin);
        }
    }
    Ok(out)
}

/// Exactly one 0-cell and one 1-cell.
pub fn is_doubly_degenerate(p: &Presentation) -> bool {
    p.cells(0).len() == 1 && p.cells(1).len() == 1
}

/// Names used by the built-in doubly degenerate presentation.
pub mod names {
    pub const POINT: &str = "pt";
    pub const EDGE: &str = "e";
    pub const ALPHA: &str = "alpha";
    pub const BETA: &str = "beta";
}

/// The doubly degenerate presentation: one 0-cell `pt`, one 1-cell `e`,
/// 2-cells `alpha` and `beta`, nothing in dimension 3.
///
/// In reflexive mode `refl` must be total below the top dimension, so the
/// reflexive version also carries `i(e)` in dimension 2 and the identities
/// on the 2-cells in dimension 3, with `refl(pt) = e`.
pub fn doubly_degenerate(mode: Mode) -> Presentation {
    use names::*;
    let mut p = Presentation::new(DEFAULT_MAX_DIM, mode).expect("default dimension is supported");
    p.add_point(POINT).unwrap();
    p.add_cell(1, EDGE, POINT, POINT).unwrap();
    p.add_cell(2, ALPHA, EDGE, EDGE).unwrap();
    p.add_cell(2, BETA, EDGE, EDGE).unwrap();
    if mode == Mode::Reflexive {
        p.add_cell(2, "i(e)", EDGE, EDGE).unwrap();
        for two in [ALPHA, BETA, "i(e)"] {
            let name = format!("i({two})");
            p.add_cell(3, &name, two, two).unwrap();
            p.set_refl(2, two, &name).unwrap();
        }
        p.set_refl(0, POINT, EDGE).unwrap();
        p.set_refl(1, EDGE, "i(e)").unwrap();
    }
    p
}

/// A single 0-cell and nothing else.
pub fn one_point(max_dim: usize, mode: Mode) -> Result<Presentation, GlobError> {
    let mut p = Presentation::new(max_dim, mode)?;
    p.add_point(names::POINT)?;
    if mode == Mode::Reflexive {
        let mut below = names::POINT.to_string();
        for dim in 1..=max_dim {
            let name = format!("i({below})");
            p.add_cell(dim, &name, &below, &below)?;
            p.set_refl(dim - 1, &below, &name)?;
            below = name;
        }
    }
    Ok(p)
}
