//! Cells of the free strict n-category on a globular set.
//!
//! A cell is stored as a planar tree. A k-cell with k ≥ 1 is a string of
//! 0-cells `x0, x1, ..., xr` with, between consecutive 0-cells, a (k-1)-cell
//! of the free strict category on the hom globular set `A(x_{j-1}, x_j)`.
//! Recursing gives a tree whose depth-ℓ labels are ℓ-cells of the
//! presentation and whose leaves are k-cells. Identities are nodes without
//! children, so they carry no label of their own. Associativity, units and
//! interchange are absorbed by the encoding: two composites denote the same
//! cell iff their trees are identical.
//!
//! Over a reflexive presentation the `refl` images have to become genuine
//! identities. Collapsing them can leave 2-cells whose source and target are
//! both identities on a 0-cell (the 2-cells of the doubly degenerate
//! presentation are of this kind). Such "scalars" commute with one another
//! and slide past every other 2-cell, so each 0-cell position of a diagram
//! carries a multiset of them. Presentations where collapsing produces any
//! other degenerate shape are rejected with [`PastingError::Unsupported`].

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::glob::{validate_presentation, CellRef, Mode, Presentation};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum PastingError {
    #[error("unknown {}-cell `{}`", .0.dim, .0.id)]
    UnknownCell(CellRef),
    #[error("identity on a {dim}-cell would exceed the maximum dimension {max}")]
    DimensionOverflow { dim: usize, max: usize },
    #[error("a 0-cell has no boundary")]
    ZeroDimBoundary,
    #[error("cannot compose a {left}-cell with a {right}-cell")]
    DimMismatch { left: usize, right: usize },
    #[error("cannot compose {dim}-cells along dimension {k}")]
    BadLevel { dim: usize, k: usize },
    #[error("boundary mismatch: source {left} of the second factor vs target {right} of the first")]
    BoundaryMismatch { left: Box<Diagram>, right: Box<Diagram> },
    #[error("diagrams come from different free categories")]
    Mismatch,
    #[error("presentation is invalid ({0} violations)")]
    InvalidPresentation(usize),
    #[error("expected a {0} presentation")]
    Mode(Mode),
    #[error("cell {cell} is not supported in the reflexive quotient: {reason}")]
    Unsupported { cell: CellRef, reason: String },
}

/// Which free construction a diagram lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Space {
    /// free strict n-category on the underlying globular set
    #[serde(rename = "free")]
    Free,
    /// free strict n-category on a reflexive globular set (refl images are identities)
    #[serde(rename = "reflexive")]
    Collapsed,
}

/// Planar tree of a pasting diagram. See the module docs for the layout.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Tree {
    Point(String),
    Path { points: Vec<String>, segs: Vec<Tree> },
}

impl Tree {
    fn points(&self) -> &[String] {
        match self {
            Tree::Point(p) => std::slice::from_ref(p),
            Tree::Path { points, .. } => points,
        }
    }

    fn identity(&self) -> Tree {
        match self {
            Tree::Point(x) => Tree::Path { points: vec![x.clone()], segs: Vec::new() },
            Tree::Path { points, segs } => {
                Tree::Path { points: points.clone(), segs: segs.iter().map(Tree::identity).collect() }
            }
        }
    }

    fn boundary(&self, dim: usize, target: bool) -> Tree {
        match self {
            Tree::Point(_) => unreachable!("0-cells have no boundary"),
            Tree::Path { points, segs } => {
                if dim == 1 {
                    let end = if target { points.last() } else { points.first() };
                    Tree::Point(end.expect("paths have a point").clone())
                } else {
                    Tree::Path {
                        points: points.clone(),
                        segs: segs.iter().map(|s| s.boundary(dim - 1, target)).collect(),
                    }
                }
            }
        }
    }

    /// `self ∘_k other`, `other` applied first. Boundaries must already match.
    fn compose(&self, other: &Tree, k: usize) -> Tree {
        match (self, other) {
            (Tree::Path { points: p1, segs: s1 }, Tree::Path { points: p2, segs: s2 }) => {
                if k == 0 {
                    let mut points = p2.clone();
                    points.extend(p1[1..].iter().cloned());
                    let mut segs = s2.clone();
                    segs.extend(s1.iter().cloned());
                    Tree::Path { points, segs }
                } else {
                    Tree::Path {
                        points: p1.clone(),
                        segs: s1.iter().zip(s2).map(|(a, b)| a.compose(b, k - 1)).collect(),
                    }
                }
            }
            _ => unreachable!("composition of 0-cells"),
        }
    }

    fn leaf_count(&self) -> usize {
        match self {
            Tree::Point(_) => 1,
            Tree::Path { segs, .. } => segs.iter().map(Tree::leaf_count).sum(),
        }
    }

    fn render(&self, depth: usize, wrap: bool, out: &mut String) {
        match self {
            Tree::Point(g) => out.push_str(g),
            Tree::Path { points, segs } if segs.is_empty() => {
                out.push_str("1(");
                out.push_str(&points[0]);
                out.push(')');
            }
            Tree::Path { segs, .. } => {
                let nested = segs.len() > 1 && wrap;
                if nested {
                    out.push('(');
                }
                for (i, seg) in segs.iter().rev().enumerate() {
                    if i > 0 {
                        out.push_str(&format!(" o{depth} "));
                    }
                    seg.render(depth + 1, segs.len() > 1, out);
                }
                if nested {
                    out.push(')');
                }
            }
        }
    }
}

fn merge_sorted(a: &[String], b: &[String]) -> Vec<String> {
    let mut out: Vec<String> = a.iter().chain(b).cloned().collect();
    out.sort();
    out
}

/// A normalized cell of a free strict n-category.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Diagram {
    dim: usize,
    space: Space,
    origin: u64,
    tree: Tree,
    /// Scalar 2-cells sitting at each 0-cell position, sorted. Empty below
    /// dimension 2.
    regions: Vec<Vec<String>>,
}

impl Diagram {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn tree(&self) -> &Tree {
        &self.tree
    }

    pub fn regions(&self) -> &[Vec<String>] {
        &self.regions
    }

    /// Number of generator occurrences, scalars included.
    pub fn size(&self) -> usize {
        let leaves = if self.dim == 0 { 0 } else { self.tree.leaf_count() };
        leaves + self.regions.iter().map(Vec::len).sum::<usize>()
    }

    /// The 0-cells along the bottom boundary string.
    pub fn points(&self) -> &[String] {
        self.tree.points()
    }

    /// [`Diagram::canonical`] as a JSON value.
    pub fn canonical_value(&self) -> serde_json::Value {
        serde_json::from_str(&self.canonical()).expect("canonical form is JSON")
    }

    /// Deterministic serialization, stable across runs.
    pub fn canonical(&self) -> String {
        #[derive(Serialize)]
        struct Canon<'a> {
            dim: usize,
            space: Space,
            tree: &'a Tree,
            #[serde(skip_serializing_if = "<[_]>::is_empty")]
            regions: &'a [Vec<String>],
        }
        serde_json::to_string(&Canon { dim: self.dim, space: self.space, tree: &self.tree, regions: &self.regions })
            .expect("diagram serializes")
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut out = String::new();
        if self.dim == 0 {
            if let Tree::Point(x) = &self.tree {
                out.push_str(x);
            }
        } else {
            self.tree.render(0, false, &mut out);
        }
        let scalars: Vec<String> = self
            .regions
            .iter()
            .zip(self.points())
            .filter(|(r, _)| !r.is_empty())
            .map(|(r, x)| format!("{x}:{{{}}}", r.join(",")))
            .collect();
        if !scalars.is_empty() {
            out.push_str(" | ");
            out.push_str(&scalars.join(" "));
        }
        write!(f, "{}-cell {}", self.dim, out)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum CellKind {
    Clean,
    Scalar(String),
    Identity(String),
}

/// The free strict n-category on a presentation, `T A` or `T_R A`.
#[derive(Debug, Clone)]
pub struct FreeCategory {
    pres: Presentation,
    space: Space,
    origin: u64,
    kinds: HashMap<(usize, String), CellKind>,
}

impl FreeCategory {
    /// `T_R A` for a reflexive presentation, `T A` for a non-reflexive one.
    pub fn new(pres: &Presentation) -> Result<Self, PastingError> {
        let space = match pres.mode() {
            Mode::Reflexive => Space::Collapsed,
            Mode::NonReflexive => Space::Free,
        };
        Self::build(pres, space)
    }

    /// `T A` on the underlying globular set, ignoring `refl`.
    pub fn underlying(pres: &Presentation) -> Result<Self, PastingError> {
        Self::build(pres, Space::Free)
    }

    fn build(pres: &Presentation, space: Space) -> Result<Self, PastingError> {
        let violations = validate_presentation(pres).len();
        if violations > 0 {
            return Err(PastingError::InvalidPresentation(violations));
        }
        let mut kinds = HashMap::new();
        for dim in 0..=pres.max_dim() {
            for id in pres.cells(dim) {
                let kind = match space {
                    Space::Free => CellKind::Clean,
                    Space::Collapsed => classify(pres, &kinds, dim, id)?,
                };
                kinds.insert((dim, id.clone()), kind);
            }
        }
        Ok(FreeCategory { pres: pres.clone(), space, origin: pres.fingerprint(), kinds })
    }

    pub fn presentation(&self) -> &Presentation {
        &self.pres
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn max_dim(&self) -> usize {
        self.pres.max_dim()
    }

    fn make(&self, dim: usize, tree: Tree, regions: Vec<Vec<String>>) -> Diagram {
        Diagram { dim, space: self.space, origin: self.origin, tree, regions }
    }

    fn check_owner(&self, d: &Diagram) -> Result<(), PastingError> {
        if d.space == self.space && d.origin == self.origin {
            Ok(())
        } else {
            Err(PastingError::Mismatch)
        }
    }

    /// The one-generator diagram.
    pub fn embed_generator(&self, g: &CellRef) -> Result<Diagram, PastingError> {
        let kind = self.kinds.get(&(g.dim, g.id.clone())).ok_or_else(|| PastingError::UnknownCell(g.clone()))?;
        match kind {
            CellKind::Identity(origin) => {
                let below = self.embed_generator(&CellRef::new(g.dim - 1, origin.as_str()))?;
                self.identity(&below)
            }
            CellKind::Scalar(x) => {
                Ok(self.make(2, Tree::Path { points: vec![x.clone()], segs: Vec::new() }, vec![vec![g.id.clone()]]))
            }
            CellKind::Clean => {
                let tree = self.generator_tree(&g.id, g.dim, 0);
                let regions = if g.dim >= 2 { vec![Vec::new(); 2] } else { Vec::new() };
                Ok(self.make(g.dim, tree, regions))
            }
        }
    }

    fn generator_tree(&self, id: &str, dim: usize, depth: usize) -> Tree {
        if depth == dim {
            return Tree::Point(id.to_string());
        }
        let s = self.pres.src_to(dim, id, depth).expect("validated presentation");
        let t = self.pres.tgt_to(dim, id, depth).expect("validated presentation");
        Tree::Path { points: vec![s.to_string(), t.to_string()], segs: vec![self.generator_tree(id, dim, depth + 1)] }
    }

    /// Strict identity on `d`, one dimension up.
    pub fn identity(&self, d: &Diagram) -> Result<Diagram, PastingError> {
        self.check_owner(d)?;
        if d.dim >= self.max_dim() {
            return Err(PastingError::DimensionOverflow { dim: d.dim, max: self.max_dim() });
        }
        let regions = match d.dim {
            0 => Vec::new(),
            1 => vec![Vec::new(); d.points().len()],
            _ => d.regions.clone(),
        };
        Ok(self.make(d.dim + 1, d.tree.identity(), regions))
    }

    /// Iterated identity up to dimension `dim`.
    pub fn identity_to(&self, d: &Diagram, dim: usize) -> Result<Diagram, PastingError> {
        let mut out = d.clone();
        while out.dim < dim {
            out = self.identity(&out)?;
        }
        Ok(out)
    }

    fn boundary(&self, d: &Diagram, target: bool) -> Result<Diagram, PastingError> {
        self.check_owner(d)?;
        if d.dim == 0 {
            return Err(PastingError::ZeroDimBoundary);
        }
        let regions = if d.dim == 2 { Vec::new() } else { d.regions.clone() };
        Ok(self.make(d.dim - 1, d.tree.boundary(d.dim, target), regions))
    }

    pub fn source(&self, d: &Diagram) -> Result<Diagram, PastingError> {
        self.boundary(d, false)
    }

    pub fn target(&self, d: &Diagram) -> Result<Diagram, PastingError> {
        self.boundary(d, true)
    }

    /// Iterated source down to dimension `k`.
    pub fn source_to(&self, d: &Diagram, k: usize) -> Result<Diagram, PastingError> {
        let mut out = d.clone();
        while out.dim > k {
            out = self.source(&out)?;
        }
        Ok(out)
    }

    /// Iterated target down to dimension `k`.
    pub fn target_to(&self, d: &Diagram, k: usize) -> Result<Diagram, PastingError> {
        let mut out = d.clone();
        while out.dim > k {
            out = self.target(&out)?;
        }
        Ok(out)
    }

    /// `second ∘_k first`: glue `first` then `second` along a k-cell.
    pub fn compose(&self, second: &Diagram, first: &Diagram, k: usize) -> Result<Diagram, PastingError> {
        self.check_owner(second)?;
        self.check_owner(first)?;
        if second.dim != first.dim {
            return Err(PastingError::DimMismatch { left: second.dim, right: first.dim });
        }
        let m = second.dim;
        if k >= m {
            return Err(PastingError::BadLevel { dim: m, k });
        }
        let joint_src = self.source_to(second, k)?;
        let joint_tgt = self.target_to(first, k)?;
        if joint_src != joint_tgt {
            return Err(PastingError::BoundaryMismatch { left: Box::new(joint_src), right: Box::new(joint_tgt) });
        }
        let tree = second.tree.compose(&first.tree, k);
        let regions = if m < 2 {
            Vec::new()
        } else if k == 0 {
            let (last, init) = first.regions.split_last().expect("regions per point");
            let (head, rest) = second.regions.split_first().expect("regions per point");
            let mut out = init.to_vec();
            out.push(merge_sorted(last, head));
            out.extend(rest.iter().cloned());
            out
        } else if k == 1 {
            second.regions.iter().zip(&first.regions).map(|(a, b)| merge_sorted(a, b)).collect()
        } else {
            second.regions.clone()
        };
        Ok(self.make(m, tree, regions))
    }

    /// Equality of cells; errors on diagrams from another free category.
    pub fn equal(&self, a: &Diagram, b: &Diagram) -> Result<bool, PastingError> {
        self.check_owner(a)?;
        self.check_owner(b)?;
        Ok(a == b)
    }

    /// Whether `d` is an identity on some lower-dimensional cell.
    pub fn is_identity(&self, d: &Diagram) -> Result<bool, PastingError> {
        if d.dim == 0 {
            return Ok(false);
        }
        Ok(self.identity(&self.source(d)?)? == *d)
    }

    /// Image of a diagram of `T A` on the same presentation, computed by
    /// re-gluing its generators here.
    pub fn interpret(&self, d: &Diagram) -> Result<Diagram, PastingError> {
        if d.origin != self.origin || d.space != Space::Free {
            return Err(PastingError::Mismatch);
        }
        self.interpret_tree(&d.tree, 0, d.dim)
    }

    fn interpret_tree(&self, tree: &Tree, depth: usize, dim: usize) -> Result<Diagram, PastingError> {
        match tree {
            Tree::Point(g) => self.embed_generator(&CellRef::new(depth, g.as_str())),
            Tree::Path { points, segs } if segs.is_empty() => {
                let base = self.embed_generator(&CellRef::new(depth, points[0].as_str()))?;
                self.identity_to(&base, dim)
            }
            Tree::Path { segs, .. } => {
                let mut acc = self.interpret_tree(&segs[0], depth + 1, dim)?;
                for seg in &segs[1..] {
                    let next = self.interpret_tree(seg, depth + 1, dim)?;
                    acc = self.compose(&next, &acc, depth)?;
                }
                Ok(acc)
            }
        }
    }

    /// Image in `T_R A` of a diagram of `T A` built over a reflexive
    /// presentation: refl images become identities.
    pub fn reflexive_collapse(d: &Diagram, pres: &Presentation) -> Result<Diagram, PastingError> {
        if pres.mode() != Mode::Reflexive {
            return Err(PastingError::Mode(Mode::Reflexive));
        }
        if d.space != Space::Free {
            return Err(PastingError::Mismatch);
        }
        FreeCategory::new(pres)?.interpret(d)
    }
}

fn classify(
    pres: &Presentation,
    kinds: &HashMap<(usize, String), CellKind>,
    dim: usize,
    id: &str,
) -> Result<CellKind, PastingError> {
    if let Some(origin) = pres.refl_origin(dim, id) {
        return Ok(CellKind::Identity(origin.to_string()));
    }
    if dim <= 1 {
        return Ok(CellKind::Clean);
    }
    let s = pres.src_of(dim, id).expect("validated");
    let t = pres.tgt_of(dim, id).expect("validated");
    let ks = &kinds[&(dim - 1, s.to_string())];
    let kt = &kinds[&(dim - 1, t.to_string())];
    match (ks, kt) {
        (CellKind::Clean, CellKind::Clean) => Ok(CellKind::Clean),
        (CellKind::Identity(x), CellKind::Identity(y)) if dim == 2 && x == y => Ok(CellKind::Scalar(x.clone())),
        _ => Err(PastingError::Unsupported {
            cell: CellRef::new(dim, id),
            reason: format!("boundary {s} => {t} mixes identities with other cells"),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::glob::{doubly_degenerate, names::*};

    fn cat(mode: Mode) -> FreeCategory {
        FreeCategory::new(&doubly_degenerate(mode)).unwrap()
    }

    fn gen(c: &FreeCategory, dim: usize, id: &str) -> Diagram {
        c.embed_generator(&CellRef::new(dim, id)).unwrap()
    }

    #[test]
    fn generators_and_identities() {
        let c = cat(Mode::NonReflexive);
        let a = gen(&c, 2, ALPHA);
        assert_eq!(a.dim(), 2);
        let e = gen(&c, 1, EDGE);
        assert_eq!(c.source(&a).unwrap(), e);
        let ie = c.identity(&e).unwrap();
        assert_eq!(c.source(&ie).unwrap(), e);
        assert_eq!(c.target(&ie).unwrap(), e);
        let pt = gen(&c, 0, POINT);
        let iipt = c.identity(&c.identity(&pt).unwrap()).unwrap();
        assert_eq!(c.source(&iipt).unwrap(), c.identity(&pt).unwrap());
        let three = c.identity(&a).unwrap();
        assert!(matches!(c.identity(&three), Err(PastingError::DimensionOverflow { .. })));
        assert!(matches!(c.embed_generator(&CellRef::new(2, "gamma")), Err(PastingError::UnknownCell(_))));
        assert!(matches!(c.source(&pt), Err(PastingError::ZeroDimBoundary)));
    }

    #[test]
    fn boundaries_follow_the_magma_formulas() {
        let c = cat(Mode::NonReflexive);
        let (a, b) = (gen(&c, 2, ALPHA), gen(&c, 2, BETA));
        let vertical = c.compose(&b, &a, 1).unwrap();
        assert_eq!(c.source(&vertical).unwrap(), c.source(&a).unwrap());
        assert_eq!(c.target(&vertical).unwrap(), c.target(&b).unwrap());
        let horizontal = c.compose(&b, &a, 0).unwrap();
        let e = gen(&c, 1, EDGE);
        let ee = c.compose(&e, &e, 0).unwrap();
        assert_eq!(c.source(&horizontal).unwrap(), ee);
        assert_ne!(ee, e);
    }

    #[test]
    fn unit_laws_and_associativity() {
        let r = cat(Mode::Reflexive);
        let a = gen(&r, 2, ALPHA);
        let one = r.identity(&gen(&r, 1, EDGE)).unwrap();
        assert_eq!(r.compose(&one, &a, 1).unwrap(), a);
        assert_eq!(gen(&r, 2, "i(e)"), one);

        let c = cat(Mode::NonReflexive);
        let (a, b) = (gen(&c, 2, ALPHA), gen(&c, 2, BETA));
        let left = c.compose(&c.compose(&b, &a, 1).unwrap(), &a, 1).unwrap();
        let right = c.compose(&b, &c.compose(&a, &a, 1).unwrap(), 1).unwrap();
        assert_eq!(left, right);
        let one = c.identity(&gen(&c, 1, EDGE)).unwrap();
        assert_eq!(c.compose(&one, &a, 1).unwrap(), a);
    }

    #[test]
    fn eckmann_hilton_only_after_collapse() {
        let c = cat(Mode::NonReflexive);
        let (a, b) = (gen(&c, 2, ALPHA), gen(&c, 2, BETA));
        assert!(!c.equal(&c.compose(&a, &b, 1).unwrap(), &c.compose(&b, &a, 1).unwrap()).unwrap());
        let r = cat(Mode::Reflexive);
        let (a, b) = (gen(&r, 2, ALPHA), gen(&r, 2, BETA));
        let ab = r.compose(&a, &b, 1).unwrap();
        assert!(r.equal(&ab, &r.compose(&b, &a, 1).unwrap()).unwrap());
        assert!(r.equal(&ab, &r.compose(&b, &a, 0).unwrap()).unwrap());
    }

    #[test]
    fn mismatched_boundaries_are_reported() {
        let c = cat(Mode::NonReflexive);
        let a = gen(&c, 2, ALPHA);
        let e = gen(&c, 1, EDGE);
        let wide = c.compose(&a, &c.identity(&e).unwrap(), 0).unwrap();
        let err = c.compose(&wide, &a, 1).unwrap_err();
        let PastingError::BoundaryMismatch { left, right } = err else { panic!("{err:?}") };
        assert_eq!(*right, e);
        assert_eq!(*left, c.compose(&e, &e, 0).unwrap());
        assert!(matches!(c.compose(&a, &e, 0), Err(PastingError::DimMismatch { .. })));
        assert!(matches!(c.compose(&a, &a, 2), Err(PastingError::BadLevel { .. })));
    }

    #[test]
    fn cross_category_use_is_rejected() {
        let c = cat(Mode::NonReflexive);
        let r = cat(Mode::Reflexive);
        let a = gen(&c, 2, ALPHA);
        assert_eq!(r.equal(&a, &a), Err(PastingError::Mismatch));
    }

    #[test]
    fn reflexive_collapse_examples() {
        let p = doubly_degenerate(Mode::Reflexive);
        let raw = FreeCategory::underlying(&p).unwrap();
        let r = FreeCategory::new(&p).unwrap();
        let pt = gen(&r, 0, POINT);
        let e_raw = gen(&raw, 1, EDGE);
        assert_eq!(FreeCategory::reflexive_collapse(&e_raw, &p).unwrap(), r.identity(&pt).unwrap());
        let ee = raw.compose(&e_raw, &e_raw, 0).unwrap();
        assert_eq!(FreeCategory::reflexive_collapse(&ee, &p).unwrap(), r.identity(&pt).unwrap());
        let a_raw = gen(&raw, 2, ALPHA);
        assert_eq!(FreeCategory::reflexive_collapse(&a_raw, &p).unwrap(), gen(&r, 2, ALPHA));
        let n = doubly_degenerate(Mode::NonReflexive);
        let free = FreeCategory::new(&n).unwrap();
        assert_eq!(
            FreeCategory::reflexive_collapse(&gen(&free, 2, ALPHA), &n),
            Err(PastingError::Mode(Mode::Reflexive))
        );
    }

    #[test]
    fn unsupported_degenerate_shapes_are_rejected() {
        let mut p = doubly_degenerate(Mode::Reflexive);
        // a 3-cell between two scalars
        p.add_cell(3, "theta", ALPHA, BETA).unwrap();
        assert!(matches!(FreeCategory::new(&p), Err(PastingError::Unsupported { .. })));
        assert!(FreeCategory::underlying(&p).is_ok());
    }

    #[test]
    fn display_is_readable() {
        let c = cat(Mode::NonReflexive);
        let (a, b) = (gen(&c, 2, ALPHA), gen(&c, 2, BETA));
        assert_eq!(c.compose(&b, &a, 0).unwrap().to_string(), "2-cell beta o0 alpha");
        assert_eq!(c.compose(&b, &a, 1).unwrap().to_string(), "2-cell beta o1 alpha");
        let r = cat(Mode::Reflexive);
        let ab = r.compose(&gen(&r, 2, ALPHA), &gen(&r, 2, BETA), 0).unwrap();
        assert_eq!(ab.to_string(), "2-cell 1(pt) | pt:{alpha,beta}");
    }
}
