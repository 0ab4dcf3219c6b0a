//! Terminal-labelled gadget graphs and their path covers.

mod certify;
mod library;
mod subtour;
mod xor;

pub use certify::{
    canonical_covers, verify_double_spec, verify_parity_spec, CertReport, Check, CoverDistance,
};
pub use library::{double_gadget_222, flexible_gadget, simple_gadget_42, GadgetKind};
pub use subtour::{brute_force_subtours, enumerate_subtours, subtour_weight, SubtourCover};
pub use xor::{brute_force_xor_count, certify_xor, xor_gadget, xor_subtours, XorGadget, XorReport};

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{input, Error, Result};
use crate::weight::ExactWeight;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Terminal {
    X,
    Xp,
    Y,
    Yp,
    Z,
    Zp,
    T,
    Tp,
}

impl Terminal {
    pub const ALL: [Terminal; 8] = [
        Terminal::X,
        Terminal::Xp,
        Terminal::Y,
        Terminal::Yp,
        Terminal::Z,
        Terminal::Zp,
        Terminal::T,
        Terminal::Tp,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Terminal::X => "X",
            Terminal::Xp => "X'",
            Terminal::Y => "Y",
            Terminal::Yp => "Y'",
            Terminal::Z => "Z",
            Terminal::Zp => "Z'",
            Terminal::T => "T",
            Terminal::Tp => "T'",
        }
    }
}

impl fmt::Display for Terminal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Terminal {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Terminal::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| Error::Input(format!("unknown terminal `{s}`")))
    }
}

/// The three terminal pairs whose joint presence as a path encodes one
/// related H-vertex being in the second set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Pair {
    X,
    Y,
    T,
}

impl Pair {
    pub const ALL: [Pair; 3] = [Pair::X, Pair::Y, Pair::T];

    pub fn terminals(self) -> (Terminal, Terminal) {
        match self {
            Pair::X => (Terminal::X, Terminal::Xp),
            Pair::Y => (Terminal::Y, Terminal::Yp),
            Pair::T => (Terminal::T, Terminal::Tp),
        }
    }

    pub fn bit(self) -> u8 {
        match self {
            Pair::X => 1,
            Pair::Y => 2,
            Pair::T => 4,
        }
    }
}

/// Weight slot of an internal edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Slot {
    /// same-set weight of the `xy` pair
    Same,
    /// different-set weight of the `xy` pair
    Diff,
    /// same-set weight of the `xt` pair (double gadgets)
    SameT,
    /// different-set weight of the `xt` pair (double gadgets)
    DiffT,
}

impl Slot {
    fn as_str(self) -> &'static str {
        match self {
            Slot::Same => "same",
            Slot::Diff => "diff",
            Slot::SameT => "same_t",
            Slot::DiffT => "diff_t",
        }
    }
}

/// An edge weighs the sum of its slots; no slot means weight zero.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeRole(Vec<Slot>);

impl EdgeRole {
    pub fn plain() -> Self {
        EdgeRole(Vec::new())
    }

    pub fn of(slots: &[Slot]) -> Self {
        let mut v = slots.to_vec();
        v.sort();
        EdgeRole(v)
    }

    pub fn slots(&self) -> &[Slot] {
        &self.0
    }

    pub fn is_plain(&self) -> bool {
        self.0.is_empty()
    }

    pub fn count(&self, s: Slot) -> usize {
        self.0.iter().filter(|&&x| x == s).count()
    }
}

impl fmt::Display for EdgeRole {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("plain");
        }
        let parts: Vec<&str> = self.0.iter().map(|s| s.as_str()).collect();
        f.write_str(&parts.join("+"))
    }
}

impl FromStr for EdgeRole {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        if s == "plain" {
            return Ok(EdgeRole::plain());
        }
        let mut slots = Vec::new();
        for part in s.split('+') {
            slots.push(match part {
                "same" => Slot::Same,
                "diff" => Slot::Diff,
                "same_t" => Slot::SameT,
                "diff_t" => Slot::DiffT,
                _ => return input(format!("unknown edge role `{part}`")),
            });
        }
        Ok(EdgeRole::of(&slots))
    }
}

impl Serialize for EdgeRole {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for EdgeRole {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Concrete values for the weight slots.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlotWeights {
    pub same: ExactWeight,
    pub diff: ExactWeight,
    pub same_t: ExactWeight,
    pub diff_t: ExactWeight,
}

impl SlotWeights {
    pub fn parity(same: ExactWeight, diff: ExactWeight) -> Self {
        SlotWeights {
            same,
            diff,
            ..Default::default()
        }
    }

    /// Slots for an H-edge of weight `w`: `same = max(w, 0)`, `diff = max(-w, 0)`.
    pub fn from_h_weight(w: &ExactWeight) -> Self {
        Self::parity(w.positive_part(), w.negative_part())
    }

    pub fn double(xy: &ExactWeight, xt: &ExactWeight) -> Self {
        SlotWeights {
            same: xy.positive_part(),
            diff: xy.negative_part(),
            same_t: xt.positive_part(),
            diff_t: xt.negative_part(),
        }
    }

    pub fn get(&self, s: Slot) -> &ExactWeight {
        match s {
            Slot::Same => &self.same,
            Slot::Diff => &self.diff,
            Slot::SameT => &self.same_t,
            Slot::DiffT => &self.diff_t,
        }
    }

    pub fn role_weight(&self, role: &EdgeRole) -> ExactWeight {
        role.slots().iter().map(|&s| self.get(s)).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetEdge {
    pub u: usize,
    pub v: usize,
    pub role: EdgeRole,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gadget {
    name: String,
    vertices: Vec<String>,
    edges: Vec<GadgetEdge>,
    terminals: BTreeMap<Terminal, usize>,
}

impl Gadget {
    pub fn new(
        name: impl Into<String>,
        vertices: Vec<String>,
        edges: Vec<GadgetEdge>,
        terminals: BTreeMap<Terminal, usize>,
    ) -> Result<Self> {
        let n = vertices.len();
        let mut seen = std::collections::HashSet::new();
        for e in &edges {
            if e.u >= n || e.v >= n || e.u == e.v {
                return input(format!("bad gadget edge ({}, {})", e.u, e.v));
            }
            if !seen.insert((e.u.min(e.v), e.u.max(e.v))) {
                return input(format!("parallel gadget edge ({}, {})", e.u, e.v));
            }
        }
        let mut used = std::collections::HashSet::new();
        for (&t, &v) in &terminals {
            if v >= n {
                return input(format!("terminal {t} out of range"));
            }
            if !used.insert(v) {
                return input(format!("terminal {t} shares a vertex with another terminal"));
            }
        }
        for t in [Terminal::X, Terminal::Xp, Terminal::Y, Terminal::Yp, Terminal::Z, Terminal::Zp] {
            if !terminals.contains_key(&t) {
                return input(format!("gadget lacks terminal {t}"));
            }
        }
        if terminals.contains_key(&Terminal::T) != terminals.contains_key(&Terminal::Tp) {
            return input("T and T' must be given together");
        }
        Ok(Gadget {
            name: name.into(),
            vertices,
            edges,
            terminals,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.vertices[v]
    }

    pub fn edges(&self) -> &[GadgetEdge] {
        &self.edges
    }

    pub fn terminals(&self) -> &BTreeMap<Terminal, usize> {
        &self.terminals
    }

    pub fn terminal(&self, t: Terminal) -> Option<usize> {
        self.terminals.get(&t).copied()
    }

    pub fn terminal_of(&self, v: usize) -> Option<Terminal> {
        self.terminals.iter().find(|&(_, &u)| u == v).map(|(&t, _)| t)
    }

    pub fn is_double(&self) -> bool {
        self.terminals.contains_key(&Terminal::T)
    }

    pub fn pairs(&self) -> &'static [Pair] {
        if self.is_double() {
            &Pair::ALL
        } else {
            &Pair::ALL[..2]
        }
    }

    pub fn find_edge(&self, a: usize, b: usize) -> Option<usize> {
        self.edges
            .iter()
            .position(|e| (e.u, e.v) == (a, b) || (e.u, e.v) == (b, a))
    }
}

#[derive(Serialize, Deserialize)]
struct GadgetJson {
    name: String,
    vertices: Vec<String>,
    edges: Vec<(usize, usize, EdgeRole)>,
    terminals: BTreeMap<String, usize>,
}

impl Serialize for Gadget {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GadgetJson {
            name: self.name.clone(),
            vertices: self.vertices.clone(),
            edges: self.edges.iter().map(|e| (e.u, e.v, e.role.clone())).collect(),
            terminals: self
                .terminals
                .iter()
                .map(|(t, &v)| (t.to_string(), v))
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Gadget {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = GadgetJson::deserialize(d)?;
        let mut terminals = BTreeMap::new();
        for (t, v) in j.terminals {
            terminals.insert(t.parse::<Terminal>().map_err(D::Error::custom)?, v);
        }
        let edges = j
            .edges
            .into_iter()
            .map(|(u, v, role)| GadgetEdge { u, v, role })
            .collect();
        Gadget::new(j.name, j.vertices, edges, terminals).map_err(D::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn role_strings() {
        let r: EdgeRole = "diff_t+same".parse().unwrap();
        assert_eq!(r, EdgeRole::of(&[Slot::Same, Slot::DiffT]));
        assert_eq!(r.to_string(), "same+diff_t");
        assert!("bogus".parse::<EdgeRole>().is_err());
        assert_eq!("plain".parse::<EdgeRole>().unwrap(), EdgeRole::plain());
    }

    #[test]
    fn gadget_json_round_trip() {
        for g in [flexible_gadget(), simple_gadget_42(), double_gadget_222()] {
            let s = serde_json::to_string(&g).unwrap();
            let back: Gadget = serde_json::from_str(&s).unwrap();
            assert_eq!(back, g);
        }
    }

    #[test]
    fn rejects_shared_terminals() {
        let mut t = BTreeMap::new();
        for (i, term) in Terminal::ALL[..6].iter().enumerate() {
            t.insert(*term, i.min(4));
        }
        let names = (0..6).map(|i| i.to_string()).collect();
        assert!(Gadget::new("bad", names, vec![], t).is_err());
    }

    #[test]
    fn slot_weights_from_sign() {
        let s = SlotWeights::from_h_weight(&ExactWeight::int(5));
        assert_eq!((s.same, s.diff), (5.into(), 0.into()));
        let s = SlotWeights::from_h_weight(&ExactWeight::new(-8, 2));
        assert_eq!((s.same, s.diff), (0.into(), ExactWeight::new(8, -2)));
    }
}
