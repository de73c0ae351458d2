//! Graph families, per-cell parameters, boundary conventions and explicit expansion.

use crate::error::{Error, Result};
use crate::exact::{fmt_rational, parse_rational, Rational, Ring};
use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Family {
    K4Ladder,
    K3Cylinder { f_zero: bool },
    K4AllTerminal,
}

impl Family {
    /// Transfer-matrix dimension.
    pub fn dim(self) -> usize {
        match self {
            Family::K4Ladder => 5,
            Family::K3Cylinder { .. } => 13,
            Family::K4AllTerminal => 2,
        }
    }

    pub fn is_k3(self) -> bool {
        matches!(self, Family::K3Cylinder { .. })
    }

    pub fn destinations(self) -> &'static [Destination] {
        match self {
            Family::K4Ladder => &[Destination::S, Destination::T],
            Family::K3Cylinder { .. } => &[Destination::S, Destination::T, Destination::U],
            Family::K4AllTerminal => &[],
        }
    }

    /// Destination used by the printed generating functions.
    pub fn default_destination(self) -> Option<Destination> {
        match self {
            Family::K4Ladder => Some(Destination::S),
            Family::K3Cylinder { .. } => Some(Destination::U),
            Family::K4AllTerminal => None,
        }
    }

    pub fn short_name(self) -> &'static str {
        match self {
            Family::K4Ladder => "k4",
            Family::K3Cylinder { f_zero: true } => "k3f0",
            Family::K3Cylinder { f_zero: false } => "k3",
            Family::K4AllTerminal => "k4all",
        }
    }

    pub const ALL: [Family; 4] = [
        Family::K4Ladder,
        Family::K3Cylinder { f_zero: true },
        Family::K3Cylinder { f_zero: false },
        Family::K4AllTerminal,
    ];
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.short_name())
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "k4" | "k4ladder" | "k4-ladder" => Ok(Family::K4Ladder),
            "k3" | "k3cylinder" | "k3-cylinder" => Ok(Family::K3Cylinder { f_zero: false }),
            "k3f0" | "k3-f0" => Ok(Family::K3Cylinder { f_zero: true }),
            "k4all" | "k4a" | "k4-all" | "all" => Ok(Family::K4AllTerminal),
            _ => Err(Error::Invalid(format!("unknown family `{s}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Destination {
    S,
    T,
    U,
}

impl Destination {
    pub fn index(self) -> usize {
        match self {
            Destination::S => 0,
            Destination::T => 1,
            Destination::U => 2,
        }
    }
}

impl FromStr for Destination {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "s" => Ok(Destination::S),
            "t" => Ok(Destination::T),
            "u" => Ok(Destination::U),
            _ => Err(Error::Invalid(format!("unknown destination `{s}`"))),
        }
    }
}

/// Element kind inside a cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Elem {
    A,
    B,
    C,
    D,
    E,
    F,
    S,
    T,
    U,
}

impl Elem {
    pub fn is_node(self) -> bool {
        matches!(self, Elem::S | Elem::T | Elem::U)
    }
    pub const EDGES: [Elem; 6] = [Elem::A, Elem::B, Elem::C, Elem::D, Elem::E, Elem::F];
}

/// An edge or node of a spec, identified by kind and cell index.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ElementId {
    pub kind: Elem,
    pub cell: usize,
}

impl ElementId {
    pub fn new(kind: Elem, cell: usize) -> Self {
        ElementId { kind, cell }
    }
}

impl fmt::Display for ElementId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", format!("{:?}", self.kind).to_lowercase(), self.cell)
    }
}

impl FromStr for ElementId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::UnknownElement(s.to_string());
        let mut ch = s.chars();
        let k = match ch.next().ok_or_else(bad)?.to_ascii_lowercase() {
            'a' => Elem::A,
            'b' => Elem::B,
            'c' => Elem::C,
            'd' => Elem::D,
            'e' => Elem::E,
            'f' => Elem::F,
            's' => Elem::S,
            't' => Elem::T,
            'u' => Elem::U,
            _ => return Err(bad()),
        };
        let cell = ch.as_str().parse().map_err(|_| bad())?;
        Ok(ElementId::new(k, cell))
    }
}

/// Reliabilities of one cell. `f` and `u` exist only for the K3 families.
#[derive(Clone, Debug, PartialEq)]
pub struct CellParams<R> {
    pub a: R,
    pub b: R,
    pub c: R,
    pub d: R,
    pub e: R,
    pub f: Option<R>,
    pub s: R,
    pub t: R,
    pub u: Option<R>,
}

impl<R: Ring> CellParams<R> {
    pub fn uniform(family: Family, p: &R, rho: &R) -> Self {
        let k3 = family.is_k3();
        CellParams {
            a: p.clone(),
            b: p.clone(),
            c: p.clone(),
            d: p.clone(),
            e: p.clone(),
            f: k3.then(|| p.clone()),
            s: rho.clone(),
            t: rho.clone(),
            u: k3.then(|| rho.clone()),
        }
    }

    pub fn get(&self, k: Elem) -> Option<&R> {
        match k {
            Elem::A => Some(&self.a),
            Elem::B => Some(&self.b),
            Elem::C => Some(&self.c),
            Elem::D => Some(&self.d),
            Elem::E => Some(&self.e),
            Elem::F => self.f.as_ref(),
            Elem::S => Some(&self.s),
            Elem::T => Some(&self.t),
            Elem::U => self.u.as_ref(),
        }
    }

    pub fn get_mut(&mut self, k: Elem) -> Option<&mut R> {
        match k {
            Elem::A => Some(&mut self.a),
            Elem::B => Some(&mut self.b),
            Elem::C => Some(&mut self.c),
            Elem::D => Some(&mut self.d),
            Elem::E => Some(&mut self.e),
            Elem::F => self.f.as_mut(),
            Elem::S => Some(&mut self.s),
            Elem::T => Some(&mut self.t),
            Elem::U => self.u.as_mut(),
        }
    }

    /// `f`, or zero when absent.
    pub fn f_or_zero(&self) -> R {
        self.f.clone().unwrap_or_else(R::zero)
    }

    /// `u`, or one when absent.
    pub fn u_or_one(&self) -> R {
        self.u.clone().unwrap_or_else(R::one)
    }

    pub fn map<S: Ring>(&self, g: impl Fn(&R) -> S) -> CellParams<S> {
        CellParams {
            a: g(&self.a),
            b: g(&self.b),
            c: g(&self.c),
            d: g(&self.d),
            e: g(&self.e),
            f: self.f.as_ref().map(&g),
            s: g(&self.s),
            t: g(&self.t),
            u: self.u.as_ref().map(&g),
        }
    }
}

/// A family instance with `n + 1` cells (index 0 is the boundary cell).
#[derive(Clone, Debug, PartialEq)]
pub struct FamilySpec<R> {
    pub family: Family,
    pub n: usize,
    pub destination: Option<Destination>,
    pub cells: Vec<CellParams<R>>,
}

/// Elements pinned by the boundary convention in cell 0.
pub fn boundary_fixed(family: Family, k: Elem) -> bool {
    match family {
        Family::K4Ladder | Family::K4AllTerminal => matches!(k, Elem::A | Elem::C | Elem::D | Elem::E),
        Family::K3Cylinder { .. } => matches!(k, Elem::A | Elem::C | Elem::E),
    }
}

impl<R: Ring> FamilySpec<R> {
    /// Build a spec, enforcing the boundary convention and the `f = 0` variant.
    pub fn new(family: Family, destination: Option<Destination>, mut cells: Vec<CellParams<R>>) -> Result<Self> {
        if cells.is_empty() {
            return Err(Error::Invalid("a spec needs at least the boundary cell".into()));
        }
        match (family, destination) {
            (Family::K4AllTerminal, _) => {}
            (_, None) => return Err(Error::Invalid("two-terminal family needs a destination".into())),
            (Family::K4Ladder, Some(Destination::U)) => {
                return Err(Error::Invalid("destination U does not exist on the K4-ladder".into()))
            }
            _ => {}
        }
        for (i, c) in cells.iter_mut().enumerate() {
            if family.is_k3() {
                if c.f.is_none() || c.u.is_none() {
                    return Err(Error::Invalid(format!("cell {i} lacks f or U")));
                }
            } else {
                c.f = None;
                c.u = None;
            }
            if let Family::K3Cylinder { f_zero: true } = family {
                c.f = Some(R::zero());
            }
            if family == Family::K4AllTerminal {
                c.s = R::one();
                c.t = R::one();
            }
        }
        let c0 = &mut cells[0];
        c0.a = R::one();
        c0.c = R::zero();
        c0.e = R::zero();
        if !family.is_k3() {
            c0.d = R::zero();
        }
        let n = cells.len() - 1;
        Ok(FamilySpec { family, n, destination: if family == Family::K4AllTerminal { None } else { destination }, cells })
    }

    /// All free elements (boundary-pinned ones and absent `f` excluded).
    pub fn elements(&self) -> Vec<ElementId> {
        let mut out = Vec::new();
        for (i, _) in self.cells.iter().enumerate() {
            for k in [Elem::A, Elem::B, Elem::C, Elem::D, Elem::E, Elem::F, Elem::S, Elem::T, Elem::U] {
                if i == 0 && boundary_fixed(self.family, k) {
                    continue;
                }
                if k == Elem::F && self.family == (Family::K3Cylinder { f_zero: true }) {
                    continue;
                }
                if !self.family.is_k3() && matches!(k, Elem::F | Elem::U) {
                    continue;
                }
                if self.family == Family::K4AllTerminal && k.is_node() {
                    continue;
                }
                out.push(ElementId::new(k, i));
            }
        }
        out
    }

    pub fn get(&self, id: ElementId) -> Result<&R> {
        self.cells
            .get(id.cell)
            .and_then(|c| c.get(id.kind))
            .ok_or_else(|| Error::UnknownElement(id.to_string()))
    }

    /// Copy with one element replaced; fails on pinned or unknown elements.
    pub fn with_element(&self, id: ElementId, v: R) -> Result<Self> {
        if !self.elements().contains(&id) {
            return Err(Error::UnknownElement(id.to_string()));
        }
        let mut s = self.clone();
        *s.cells[id.cell].get_mut(id.kind).unwrap() = v;
        Ok(s)
    }

    pub fn map<S: Ring>(&self, g: impl Fn(&R) -> S) -> FamilySpec<S> {
        FamilySpec {
            family: self.family,
            n: self.n,
            destination: self.destination,
            cells: self.cells.iter().map(|c| c.map(&g)).collect(),
        }
    }
}

/// Uniform edge reliability `p` and node reliability `rho` in every cell.
pub fn uniform_spec<R: Ring>(family: Family, n: usize, p: &R, rho: &R, destination: Option<Destination>) -> Result<FamilySpec<R>> {
    let cells = (0..=n).map(|_| CellParams::uniform(family, p, rho)).collect();
    FamilySpec::new(family, destination, cells)
}

/// Explicit undirected graph used by the oracles.
#[derive(Clone, Debug, PartialEq)]
pub struct ExplicitGraph {
    /// `(label, reliability)`
    pub nodes: Vec<(String, Rational)>,
    /// `(u, v, reliability, label)`
    pub edges: Vec<(usize, usize, Rational, String)>,
    pub terminals: (usize, usize),
}

impl ExplicitGraph {
    pub fn new(nodes: Vec<(String, Rational)>, edges: Vec<(usize, usize, Rational, String)>, terminals: (usize, usize)) -> Result<Self> {
        let n = nodes.len();
        if terminals.0 >= n || terminals.1 >= n {
            return Err(Error::Invalid("terminal missing".into()));
        }
        for (u, v, _, l) in &edges {
            if *u >= n || *v >= n || u == v {
                return Err(Error::Invalid(format!("bad edge {l}")));
            }
        }
        Ok(ExplicitGraph { nodes, edges, terminals })
    }

    /// Graph with all nodes perfect.
    pub fn with_edges(n_nodes: usize, edges: &[(usize, usize, Rational)], terminals: (usize, usize)) -> Result<Self> {
        let nodes = (0..n_nodes).map(|i| (format!("v{i}"), Rational::from(1))).collect();
        let edges = edges.iter().enumerate().map(|(i, (u, v, p))| (*u, *v, p.clone(), format!("e{i}"))).collect();
        ExplicitGraph::new(nodes, edges, terminals)
    }
}

/// Expand a numeric spec into nodes and edges. Zero-reliability edges are omitted.
pub fn explicit_graph(spec: &FamilySpec<Rational>) -> Result<ExplicitGraph> {
    let k3 = spec.family.is_k3();
    let per = if k3 { 3 } else { 2 };
    let mut nodes = Vec::new();
    for (i, c) in spec.cells.iter().enumerate() {
        nodes.push((format!("S{i}"), c.s.clone()));
        nodes.push((format!("T{i}"), c.t.clone()));
        if k3 {
            nodes.push((format!("U{i}"), c.u_or_one()));
        }
    }
    let idx = |k: Elem, i: usize| -> usize {
        i * per
            + match k {
                Elem::S => 0,
                Elem::T => 1,
                _ => 2,
            }
    };
    let mut edges = Vec::new();
    let mut push = |u: usize, v: usize, r: &Rational, l: String| {
        if !r.is_zero() {
            edges.push((u, v, r.clone(), l));
        }
    };
    for (i, c) in spec.cells.iter().enumerate() {
        use Elem::*;
        if k3 {
            if i > 0 {
                push(idx(S, i - 1), idx(S, i), &c.a, format!("a{i}"));
                push(idx(T, i - 1), idx(T, i), &c.c, format!("c{i}"));
                push(idx(U, i - 1), idx(U, i), &c.e, format!("e{i}"));
            }
            push(idx(S, i), idx(T, i), &c.b, format!("b{i}"));
            push(idx(T, i), idx(U, i), &c.d, format!("d{i}"));
            push(idx(S, i), idx(U, i), &c.f_or_zero(), format!("f{i}"));
        } else {
            if i > 0 {
                push(idx(S, i - 1), idx(S, i), &c.a, format!("a{i}"));
                push(idx(T, i - 1), idx(T, i), &c.c, format!("c{i}"));
                push(idx(S, i - 1), idx(T, i), &c.e, format!("e{i}"));
                push(idx(T, i - 1), idx(S, i), &c.d, format!("d{i}"));
            }
            push(idx(S, i), idx(T, i), &c.b, format!("b{i}"));
        }
    }
    let dest = match spec.destination {
        Some(d) => spec.n * per + d.index(),
        None => 0,
    };
    ExplicitGraph::new(nodes, edges, (0, dest))
}

#[derive(Serialize, Deserialize)]
struct CellJson {
    a: String,
    b: String,
    c: String,
    d: String,
    e: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    f: Option<String>,
    #[serde(rename = "S")]
    s: String,
    #[serde(rename = "T")]
    t: String,
    #[serde(rename = "U", skip_serializing_if = "Option::is_none", default)]
    u: Option<String>,
}

#[derive(Serialize, Deserialize)]
struct SpecJson {
    family: Family,
    n: usize,
    #[serde(default)]
    destination: Option<Destination>,
    cells: Vec<CellJson>,
}

impl FamilySpec<Rational> {
    pub fn to_json(&self) -> String {
        let cells = self
            .cells
            .iter()
            .map(|c| CellJson {
                a: fmt_rational(&c.a),
                b: fmt_rational(&c.b),
                c: fmt_rational(&c.c),
                d: fmt_rational(&c.d),
                e: fmt_rational(&c.e),
                f: c.f.as_ref().map(fmt_rational),
                s: fmt_rational(&c.s),
                t: fmt_rational(&c.t),
                u: c.u.as_ref().map(fmt_rational),
            })
            .collect();
        let j = SpecJson { family: self.family, n: self.n, destination: self.destination, cells };
        serde_json::to_string_pretty(&j).expect("serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        let j: SpecJson = serde_json::from_str(s).map_err(|e| Error::Invalid(e.to_string()))?;
        let pr = |v: &str| parse_rational(v).ok_or_else(|| Error::Invalid(format!("bad rational `{v}`")));
        let mut cells = Vec::new();
        for c in &j.cells {
            cells.push(CellParams {
                a: pr(&c.a)?,
                b: pr(&c.b)?,
                c: pr(&c.c)?,
                d: pr(&c.d)?,
                e: pr(&c.e)?,
                f: c.f.as_deref().map(pr).transpose()?,
                s: pr(&c.s)?,
                t: pr(&c.t)?,
                u: c.u.as_deref().map(pr).transpose()?,
            });
        }
        if cells.len() != j.n + 1 {
            return Err(Error::Invalid(format!("expected {} cells, got {}", j.n + 1, cells.len())));
        }
        FamilySpec::new(j.family, j.destination, cells)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::q;

    #[test]
    fn k4_counts() {
        let s = uniform_spec(Family::K4Ladder, 1, &q(1, 2), &q(1, 1), Some(Destination::S)).unwrap();
        let g = explicit_graph(&s).unwrap();
        assert_eq!((g.nodes.len(), g.edges.len()), (4, 6));
        let s0 = uniform_spec(Family::K4Ladder, 0, &q(1, 2), &q(1, 1), Some(Destination::S)).unwrap();
        let g0 = explicit_graph(&s0).unwrap();
        assert_eq!((g0.nodes.len(), g0.edges.len()), (2, 1));
    }

    #[test]
    fn k3_f_zero_counts() {
        // f is absent in every cell, the boundary triangle keeps b0 and d0
        let s = uniform_spec(Family::K3Cylinder { f_zero: true }, 1, &q(1, 2), &q(1, 1), Some(Destination::U)).unwrap();
        let g = explicit_graph(&s).unwrap();
        assert_eq!((g.nodes.len(), g.edges.len()), (6, 7));
        let s = uniform_spec(Family::K3Cylinder { f_zero: false }, 1, &q(1, 2), &q(1, 1), Some(Destination::U)).unwrap();
        assert_eq!(explicit_graph(&s).unwrap().edges.len(), 9);
    }

    #[test]
    fn boundary_convention_enforced() {
        let s = uniform_spec(Family::K4Ladder, 2, &q(1, 3), &q(1, 2), Some(Destination::T)).unwrap();
        assert_eq!(s.cells[0].a, q(1, 1));
        assert!(s.cells[0].d.is_zero() && s.cells[0].e.is_zero() && s.cells[0].c.is_zero());
        assert_eq!(s.cells[0].b, q(1, 3));
        assert!(uniform_spec(Family::K4Ladder, 1, &q(1, 3), &q(1, 2), Some(Destination::U)).is_err());
    }

    #[test]
    fn json_roundtrip() {
        let s = uniform_spec(Family::K3Cylinder { f_zero: false }, 2, &q(1, 3), &q(2, 5), Some(Destination::T)).unwrap();
        let back = FamilySpec::from_json(&s.to_json()).unwrap();
        assert_eq!(back, s);
        assert!(s.to_json().contains("\"2/5\""));
    }

    #[test]
    fn element_ids() {
        let id: ElementId = "b1".parse().unwrap();
        assert_eq!(id, ElementId::new(Elem::B, 1));
        assert_eq!(id.to_string(), "b1");
        let s = uniform_spec(Family::K4Ladder, 1, &q(1, 3), &q(1, 2), Some(Destination::S)).unwrap();
        assert_eq!(s.elements().len(), 3 + 7);
        assert!(s.with_element(ElementId::new(Elem::A, 0), q(1, 2)).is_err());
    }
}
