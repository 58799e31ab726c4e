//! Event grids: finite piecewise-constant models of the half-line.
//!
//! A grid holds the critical values `t_0 < … < t_n` at which anything is
//! allowed to change. Between consecutive critical values nothing happens, so
//! the half-line collapses to an alternating chain of nodes
//!
//! ```text
//!   At(t_0) → Germ(t_0) → At(t_1) → Germ(t_1) → … → At(t_n) → Germ(t_n)
//! ```
//!
//! where `At(t_i)` is the instant `t_i` itself and `Germ(t_i)` stands for the
//! open interval `(t_i, t_{i+1})` (or `(t_n, ∞)` for the last node). The germ
//! nodes are what lets a finite structure express behaviour that is not
//! constant on half-open intervals: an interval module closed on the right
//! dies crossing `At(t) → Germ(t)`, one open on the left is born at a germ
//! node. Indices below `t_0` evaluate to zero, matching the convention that
//! objects are extended from their critical values.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Rat;

/// Strictly increasing critical values, all `≥ 0`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EventGrid {
    values: Vec<Rat>,
}

/// What a node index refers to.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Node {
    /// The instant `t_i`.
    At(usize),
    /// The open interval just after `t_i`.
    Germ(usize),
}

impl EventGrid {
    pub fn new(values: Vec<Rat>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::invalid("event grid needs at least one value"));
        }
        if values[0].is_negative() {
            return Err(Error::invalid("event grid values must be non-negative"));
        }
        if values.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::invalid("event grid values must strictly increase"));
        }
        Ok(EventGrid { values })
    }

    pub fn from_ints(values: &[i64]) -> Self {
        Self::new(values.iter().map(|&n| Rat::from_int(n)).collect()).unwrap()
    }

    pub fn values(&self) -> &[Rat] {
        &self.values
    }

    pub fn value_count(&self) -> usize {
        self.values.len()
    }

    /// Total number of nodes (`2` per critical value).
    pub fn node_count(&self) -> usize {
        2 * self.values.len()
    }

    pub fn node(&self, idx: usize) -> Node {
        debug_assert!(idx < self.node_count());
        if idx % 2 == 0 {
            Node::At(idx / 2)
        } else {
            Node::Germ(idx / 2)
        }
    }

    pub fn at_node(&self, value_idx: usize) -> usize {
        2 * value_idx
    }

    pub fn germ_node(&self, value_idx: usize) -> usize {
        2 * value_idx + 1
    }

    pub fn value_index(&self, v: &Rat) -> Option<usize> {
        self.values.iter().position(|x| x == v)
    }

    /// Node index of the instant `v`, which must be a grid value.
    pub fn at_node_of(&self, v: &Rat) -> Result<usize> {
        self.value_index(v)
            .map(|i| self.at_node(i))
            .ok_or_else(|| Error::OffGrid(v.clone()))
    }

    /// Node containing the real point `r`, or `None` when `r < t_0` (where
    /// everything is zero by convention).
    pub fn node_of_point(&self, r: &Rat) -> Option<usize> {
        if r < &self.values[0] {
            return None;
        }
        let i = self.values.iter().rposition(|v| v <= r).unwrap();
        if &self.values[i] == r {
            Some(self.at_node(i))
        } else {
            Some(self.germ_node(i))
        }
    }

    /// Human-readable node name for diagnostics, e.g. `"at 1"` / `"after 1"`.
    pub fn node_label(&self, idx: usize) -> String {
        match self.node(idx) {
            Node::At(i) => format!("at {}", self.values[i]),
            Node::Germ(i) => format!("after {}", self.values[i]),
        }
    }

    /// Grid refined by extra critical values (duplicates ignored).
    pub fn refined(&self, extra: &[Rat]) -> Result<EventGrid> {
        let mut values = self.values.clone();
        for v in extra {
            if !values.contains(v) {
                values.push(v.clone());
            }
        }
        values.sort();
        EventGrid::new(values)
    }

    /// For each node of `finer`, the node of `self` whose span contains it.
    ///
    /// `finer` must contain every value of `self`. New nodes strictly below
    /// `t_0` map to `None`.
    pub fn embed_nodes(&self, finer: &EventGrid) -> Result<Vec<Option<usize>>> {
        for v in &self.values {
            if finer.value_index(v).is_none() {
                return Err(Error::invalid(format!(
                    "grid refinement is missing the value {v}"
                )));
            }
        }
        let mut map = Vec::with_capacity(finer.node_count());
        for idx in 0..finer.node_count() {
            let coarse = match finer.node(idx) {
                Node::At(i) => {
                    let v = &finer.values[i];
                    match self.value_index(v) {
                        Some(ci) => Some(self.at_node(ci)),
                        None => self.node_of_point(v),
                    }
                }
                Node::Germ(i) => {
                    // the open slice just after finer.values[i]; since finer
                    // contains every coarse value, the slice never straddles
                    // a coarse boundary
                    let v = &finer.values[i];
                    match self.value_index(v) {
                        Some(ci) => Some(self.germ_node(ci)),
                        None => self.node_of_point(v),
                    }
                }
            };
            map.push(coarse);
        }
        Ok(map)
    }
}

/// Decoration of a left endpoint.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub enum LeftDec {
    /// Alive at the value itself: `[s, …`.
    #[serde(rename = "closed-at")]
    ClosedAt,
    /// Born strictly after the value: `(s, …`.
    #[serde(rename = "open-after")]
    OpenAfter,
}

/// Decoration of a right endpoint.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug, Serialize, Deserialize)]
pub enum RightDec {
    /// Dead from the value on: `…, t)`.
    #[serde(rename = "open-before")]
    OpenBefore,
    /// Alive at the value, dead just after: `…, t]`.
    #[serde(rename = "closed-through")]
    ClosedThrough,
}

/// A right endpoint value, possibly infinite.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Endpoint {
    Finite(Rat),
    Infinity,
}

impl Endpoint {
    pub fn is_infinite(&self) -> bool {
        matches!(self, Endpoint::Infinity)
    }
}

impl std::fmt::Display for Endpoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Endpoint::Finite(v) => write!(f, "{v}"),
            Endpoint::Infinity => write!(f, "inf"),
        }
    }
}

impl Serialize for Endpoint {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Endpoint {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        if s == "inf" {
            Ok(Endpoint::Infinity)
        } else {
            s.parse::<Rat>()
                .map(Endpoint::Finite)
                .map_err(serde::de::Error::custom)
        }
    }
}

/// An interval with endpoint decorations, e.g. `[0, 1)`, `[0, 1]`, `(0, 1)`,
/// `[0, ∞)`.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct DecoratedInterval {
    pub left: EndpointSpec<Rat, LeftDec>,
    pub right: EndpointSpec<Endpoint, RightDec>,
}

/// A value together with its decoration.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct EndpointSpec<V, D> {
    pub value: V,
    pub dec: D,
}

impl DecoratedInterval {
    pub fn new(left: Rat, ld: LeftDec, right: Endpoint, rd: RightDec) -> Self {
        DecoratedInterval {
            left: EndpointSpec { value: left, dec: ld },
            right: EndpointSpec { value: right, dec: rd },
        }
    }

    /// The half-open interval `[s, t)`.
    pub fn half_open(s: Rat, t: Rat) -> Self {
        Self::new(s, LeftDec::ClosedAt, Endpoint::Finite(t), RightDec::OpenBefore)
    }

    /// The interval `[s, ∞)`.
    pub fn from_on(s: Rat) -> Self {
        Self::new(s, LeftDec::ClosedAt, Endpoint::Infinity, RightDec::OpenBefore)
    }

    /// The closed interval `[s, t]`.
    pub fn closed(s: Rat, t: Rat) -> Self {
        Self::new(s, LeftDec::ClosedAt, Endpoint::Finite(t), RightDec::ClosedThrough)
    }

    /// The open interval `(s, t)`.
    pub fn open(s: Rat, t: Rat) -> Self {
        Self::new(s, LeftDec::OpenAfter, Endpoint::Finite(t), RightDec::OpenBefore)
    }

    /// True for `[s, t)` and `[s, ∞)` shapes — the shapes of tame bars and of
    /// cell supports.
    pub fn is_half_open(&self) -> bool {
        self.left.dec == LeftDec::ClosedAt && self.right.dec == RightDec::OpenBefore
    }

    /// Resolve to a span of node indices `(first, last)` (inclusive) on a
    /// grid. Errors if an endpoint is off-grid or the span is empty.
    pub fn node_span(&self, grid: &EventGrid) -> Result<(usize, usize)> {
        let li = grid
            .value_index(&self.left.value)
            .ok_or_else(|| Error::OffGrid(self.left.value.clone()))?;
        let first = match self.left.dec {
            LeftDec::ClosedAt => grid.at_node(li),
            LeftDec::OpenAfter => grid.germ_node(li),
        };
        let last = match (&self.right.value, self.right.dec) {
            (Endpoint::Infinity, RightDec::OpenBefore) => grid.node_count() - 1,
            (Endpoint::Infinity, RightDec::ClosedThrough) => {
                return Err(Error::invalid("an unbounded interval cannot be closed"));
            }
            (Endpoint::Finite(v), dec) => {
                let ri = grid
                    .value_index(v)
                    .ok_or_else(|| Error::OffGrid(v.clone()))?;
                match dec {
                    RightDec::ClosedThrough => grid.at_node(ri),
                    RightDec::OpenBefore => {
                        if grid.at_node(ri) == 0 {
                            return Err(Error::invalid(format!("empty interval {self}")));
                        }
                        grid.at_node(ri) - 1
                    }
                }
            }
        };
        if first > last {
            return Err(Error::invalid(format!("empty interval {self}")));
        }
        Ok((first, last))
    }

    /// Inverse of [`node_span`](Self::node_span): the decorated interval a
    /// node span denotes on `grid`.
    pub fn from_node_span(grid: &EventGrid, first: usize, last: usize) -> Self {
        debug_assert!(first <= last && last < grid.node_count());
        let left = match grid.node(first) {
            Node::At(i) => EndpointSpec {
                value: grid.values()[i].clone(),
                dec: LeftDec::ClosedAt,
            },
            Node::Germ(i) => EndpointSpec {
                value: grid.values()[i].clone(),
                dec: LeftDec::OpenAfter,
            },
        };
        let right = match grid.node(last) {
            Node::At(i) => EndpointSpec {
                value: Endpoint::Finite(grid.values()[i].clone()),
                dec: RightDec::ClosedThrough,
            },
            Node::Germ(i) => {
                if i + 1 < grid.value_count() {
                    EndpointSpec {
                        value: Endpoint::Finite(grid.values()[i + 1].clone()),
                        dec: RightDec::OpenBefore,
                    }
                } else {
                    EndpointSpec {
                        value: Endpoint::Infinity,
                        dec: RightDec::OpenBefore,
                    }
                }
            }
        };
        DecoratedInterval { left, right }
    }
}

impl std::fmt::Display for DecoratedInterval {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let lb = match self.left.dec {
            LeftDec::ClosedAt => '[',
            LeftDec::OpenAfter => '(',
        };
        let rb = match self.right.dec {
            RightDec::OpenBefore => ')',
            RightDec::ClosedThrough => ']',
        };
        write!(f, "{}{}, {}{}", lb, self.left.value, self.right.value, rb)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn grid01() -> EventGrid {
        EventGrid::from_ints(&[0, 1])
    }

    #[test]
    fn grid_rejects_bad_values() {
        assert!(EventGrid::new(vec![]).is_err());
        assert!(EventGrid::new(vec![rat(1), rat(1)]).is_err());
        assert!(EventGrid::new(vec![rat(2), rat(1)]).is_err());
        assert!(EventGrid::new(vec![rat(-1), rat(1)]).is_err());
    }

    #[test]
    fn node_of_point_picks_containing_node() {
        let g = grid01();
        assert_eq!(g.node_of_point(&rat(0)), Some(0));
        assert_eq!(g.node_of_point(&Rat::from_frac(1, 2)), Some(1));
        assert_eq!(g.node_of_point(&rat(1)), Some(2));
        assert_eq!(g.node_of_point(&rat(5)), Some(3));
        let g2 = EventGrid::from_ints(&[1, 2]);
        assert_eq!(g2.node_of_point(&rat(0)), None);
    }

    #[test]
    fn spans_of_the_four_decorations() {
        let g = grid01();
        // [0,1): alive at At(0), Germ(0)
        let i = DecoratedInterval::half_open(rat(0), rat(1));
        assert_eq!(i.node_span(&g).unwrap(), (0, 1));
        // [0,1]: additionally alive at At(1)
        let i = DecoratedInterval::closed(rat(0), rat(1));
        assert_eq!(i.node_span(&g).unwrap(), (0, 2));
        // (0,1): only the germ after 0
        let i = DecoratedInterval::open(rat(0), rat(1));
        assert_eq!(i.node_span(&g).unwrap(), (1, 1));
        // [0,∞): everything
        let i = DecoratedInterval::from_on(rat(0));
        assert_eq!(i.node_span(&g).unwrap(), (0, 3));
    }

    #[test]
    fn span_round_trips() {
        let g = grid01();
        for first in 0..g.node_count() {
            for last in first..g.node_count() {
                let i = DecoratedInterval::from_node_span(&g, first, last);
                assert_eq!(i.node_span(&g).unwrap(), (first, last), "{i}");
            }
        }
    }

    #[test]
    fn off_grid_endpoints_are_rejected() {
        let g = grid01();
        let i = DecoratedInterval::half_open(Rat::from_frac(1, 2), rat(1));
        assert!(matches!(i.node_span(&g), Err(Error::OffGrid(_))));
    }

    #[test]
    fn refinement_embedding() {
        let g = grid01();
        let finer = g.refined(&[Rat::from_frac(1, 2), rat(3)]).unwrap();
        assert_eq!(
            finer.values(),
            &[rat(0), Rat::from_frac(1, 2), rat(1), rat(3)]
        );
        let map = g.embed_nodes(&finer).unwrap();
        // At(0) Germ(0) At(1/2) Germ(1/2) At(1) Germ(1) At(3) Germ(3)
        assert_eq!(
            map,
            vec![
                Some(0),
                Some(1),
                Some(1),
                Some(1),
                Some(2),
                Some(3),
                Some(3),
                Some(3)
            ]
        );
    }

    #[test]
    fn interval_serde_matches_schema() {
        let i = DecoratedInterval::half_open(rat(0), rat(1));
        let json = serde_json::to_value(&i).unwrap();
        assert_eq!(
            json,
            serde_json::json!({
                "left": {"value": "0", "dec": "closed-at"},
                "right": {"value": "1", "dec": "open-before"}
            })
        );
        let inf = DecoratedInterval::from_on(rat(2));
        let json = serde_json::to_value(&inf).unwrap();
        assert_eq!(json["right"]["value"], "inf");
    }
}
