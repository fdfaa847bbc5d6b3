//! Positive braids as torus grids with deleted crossings, and crossing labels.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Kind {
    B,
    C,
    S,
}

impl Kind {
    pub fn letter(self) -> char {
        match self {
            Kind::B => 'b',
            Kind::C => 'c',
            Kind::S => 's',
        }
    }
}

/// Label of a crossing of the closure diagram, one per Reeb chord.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GeneratorId {
    pub kind: Kind,
    pub i: u32,
    pub j: u32,
}

impl GeneratorId {
    pub const fn b(i: u32, j: u32) -> Self {
        GeneratorId { kind: Kind::B, i, j }
    }

    pub const fn c(i: u32, j: u32) -> Self {
        GeneratorId { kind: Kind::C, i, j }
    }

    pub const fn s(i: u32, j: u32) -> Self {
        GeneratorId { kind: Kind::S, i, j }
    }

    pub fn degree(self) -> u32 {
        match self.kind {
            Kind::B | Kind::C => 0,
            Kind::S => 1,
        }
    }
}

impl fmt::Display for GeneratorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{},{}]", self.kind.letter(), self.i, self.j)
    }
}

impl fmt::Debug for GeneratorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for GeneratorId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("expected a generator like b[2,1], got {s:?}"));
        let s = s.trim();
        let mut chars = s.chars();
        let kind = match chars.next() {
            Some('b') => Kind::B,
            Some('c') => Kind::C,
            Some('s') => Kind::S,
            _ => return Err(bad()),
        };
        let body = chars
            .as_str()
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(bad)?;
        let (i, j) = parse_pair(body).ok_or_else(bad)?;
        Ok(GeneratorId { kind, i, j })
    }
}

impl Serialize for GeneratorId {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for GeneratorId {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

fn parse_pair(body: &str) -> Option<(u32, u32)> {
    let (a, b) = body.split_once(',')?;
    Some((a.trim().parse().ok()?, b.trim().parse().ok()?))
}

/// A positive braid: the torus braid `(σ_1…σ_{p-1})^q` with some letters deleted.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BraidSpec {
    pub p: u32,
    pub q: u32,
    pub deleted: BTreeSet<(u32, u32)>,
}

impl BraidSpec {
    pub fn new(p: u32, q: u32, deleted: impl IntoIterator<Item = (u32, u32)>) -> Result<Self> {
        let spec = BraidSpec { p, q, deleted: deleted.into_iter().collect() };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.p < 1 {
            return Err(Error::InvalidBraid("strand count must be at least 1".into()));
        }
        if let Some(&(i, j)) = self.deleted.iter().find(|&&c| !self.in_grid(c)) {
            return Err(Error::InvalidBraid(format!(
                "deleted crossing ({i},{j}) lies outside the {}x{} grid",
                self.q,
                self.p.saturating_sub(1)
            )));
        }
        Ok(())
    }

    pub fn in_grid(&self, (i, j): (u32, u32)) -> bool {
        (1..=self.q).contains(&i) && (1..self.p).contains(&j)
    }

    /// Braid letters in row-major order, as grid positions `(row, σ index)`.
    pub fn retained(&self) -> Vec<(u32, u32)> {
        (1..=self.q)
            .flat_map(|i| (1..self.p).map(move |j| (i, j)))
            .filter(|c| !self.deleted.contains(c))
            .collect()
    }

    /// The braid word as σ indices.
    pub fn word(&self) -> Vec<u32> {
        self.retained().into_iter().map(|(_, j)| j).collect()
    }

    /// All generator labels of the closure, sorted.
    pub fn generators(&self) -> Vec<GeneratorId> {
        let mut gens: Vec<GeneratorId> =
            self.retained().into_iter().map(|(i, j)| GeneratorId::b(i, j)).collect();
        for i in 1..=self.p {
            gens.extend((1..i).map(|j| GeneratorId::c(i, j)));
            gens.extend((1..=i).map(|j| GeneratorId::s(i, j)));
        }
        gens.sort();
        gens
    }

    /// Embeds an explicit word into the smallest torus grid that contains it,
    /// filling rows left to right. Words that land on the same grid are identified.
    pub fn from_word(p: u32, word: &[u32]) -> Result<Self> {
        if p < 1 {
            return Err(Error::InvalidBraid("strand count must be at least 1".into()));
        }
        if let Some(&j) = word.iter().find(|&&j| j < 1 || j >= p) {
            return Err(Error::InvalidBraid(format!("letter σ{j} needs 1 ≤ j < {p}")));
        }
        let mut kept = BTreeSet::new();
        let (mut row, mut col) = (1u32, 0u32);
        for &j in word {
            if j <= col {
                row += 1;
            }
            kept.insert((row, j));
            col = j;
        }
        let q = if word.is_empty() { 0 } else { row };
        let deleted = (1..=q)
            .flat_map(|i| (1..p).map(move |j| (i, j)))
            .filter(|c| !kept.contains(c));
        BraidSpec::new(p, q, deleted)
    }

    /// Parses `torus(p,q) [minus (i,j) ...]`, `word(p; j1 j2 ...)`, or a JSON document
    /// `{"p":..,"q":..,"deleted":[[i,j],..]}`.
    pub fn parse(text: &str) -> Result<Self> {
        let text = text.trim();
        if text.starts_with('{') {
            let spec: BraidSpec =
                serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
            spec.validate()?;
            return Ok(spec);
        }
        if let Some(rest) = text.strip_prefix("word") {
            return parse_word(rest);
        }
        parse_torus(text)
    }
}

impl FromStr for BraidSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BraidSpec::parse(s)
    }
}

impl fmt::Display for BraidSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "torus({},{})", self.p, self.q)?;
        if !self.deleted.is_empty() {
            write!(f, " minus")?;
            for (i, j) in &self.deleted {
                write!(f, " ({i},{j})")?;
            }
        }
        Ok(())
    }
}

fn parse_torus(text: &str) -> Result<BraidSpec> {
    let bad = |why: &str| Error::Parse(format!("{why} in {text:?}"));
    let rest = text.strip_prefix("torus").ok_or_else(|| bad("expected torus(p,q)"))?;
    let (head, tail) = take_group(rest.trim_start()).ok_or_else(|| bad("expected (p,q)"))?;
    let (p, q) = parse_pair(head).ok_or_else(|| bad("bad (p,q)"))?;
    let mut deleted = Vec::new();
    let tail = tail.trim();
    if !tail.is_empty() {
        let mut list = tail.strip_prefix("minus").ok_or_else(|| bad("expected `minus`"))?.trim_start();
        while !list.is_empty() {
            let (pair, next) = take_group(list).ok_or_else(|| bad("expected (i,j)"))?;
            deleted.push(parse_pair(pair).ok_or_else(|| bad("bad (i,j)"))?);
            list = next.trim_start();
        }
    }
    let mut spec = BraidSpec::new(p, q, [])?;
    for c in deleted {
        if !spec.in_grid(c) {
            return Err(Error::InvalidBraid(format!("({},{}) lies outside the grid", c.0, c.1)));
        }
        if !spec.deleted.insert(c) {
            return Err(Error::Parse(format!("({},{}) listed twice", c.0, c.1)));
        }
    }
    Ok(spec)
}

fn parse_word(rest: &str) -> Result<BraidSpec> {
    let bad = || Error::Parse(format!("expected word(p; j1 j2 ...), got word{rest}"));
    let (body, tail) = take_group(rest.trim_start()).ok_or_else(bad)?;
    if !tail.trim().is_empty() {
        return Err(bad());
    }
    let (p, letters) = body.split_once(';').ok_or_else(bad)?;
    let p: u32 = p.trim().parse().map_err(|_| bad())?;
    let word = letters
        .split_whitespace()
        .map(|t| t.parse::<u32>().map_err(|_| bad()))
        .collect::<Result<Vec<_>>>()?;
    BraidSpec::from_word(p, &word)
}

fn take_group(s: &str) -> Option<(&str, &str)> {
    let inner = s.strip_prefix('(')?;
    let close = inner.find(')')?;
    Some((&inner[..close], &inner[close + 1..]))
}

pub fn torus_braid(p: i64, q: i64) -> Result<BraidSpec> {
    if p < 1 || q < 0 {
        return Err(Error::InvalidBraid(format!("torus({p},{q}) needs p ≥ 1 and q ≥ 0")));
    }
    BraidSpec::new(p as u32, q as u32, [])
}

/// 0-resolution of one braid letter.
pub fn resolve_crossing(spec: &BraidSpec, target: (u32, u32)) -> Result<BraidSpec> {
    if !spec.in_grid(target) {
        return Err(Error::InvalidBraid(format!("({},{}) lies outside the grid", target.0, target.1)));
    }
    let mut out = spec.clone();
    if !out.deleted.insert(target) {
        return Err(Error::InvalidBraid(format!("({},{}) is already resolved", target.0, target.1)));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn torus_grid_sizes() {
        assert_eq!(torus_braid(4, 3).unwrap().retained().len(), 9);
        assert_eq!(torus_braid(2, 3).unwrap().retained(), vec![(1, 1), (2, 1), (3, 1)]);
        assert!(torus_braid(1, 5).unwrap().word().is_empty());
        assert!(torus_braid(0, 1).is_err());
        assert!(torus_braid(2, -1).is_err());
    }

    #[test]
    fn resolving_grows_deleted_set() {
        let spec = BraidSpec::new(3, 3, [(1, 1), (3, 2)]).unwrap();
        let out = resolve_crossing(&spec, (2, 1)).unwrap();
        assert_eq!(out.deleted, BTreeSet::from([(1, 1), (2, 1), (3, 2)]));
        assert!(resolve_crossing(&out, (2, 1)).is_err());
        assert!(resolve_crossing(&spec, (4, 1)).is_err());
        assert_eq!(resolve_crossing(&torus_braid(4, 3).unwrap(), (1, 1)).unwrap().retained().len(), 8);
    }

    #[test]
    fn text_and_json_forms_agree() {
        let a = BraidSpec::parse("torus(3,3) minus (1,1) (3,2)").unwrap();
        let b = BraidSpec::parse(r#"{"p":3,"q":3,"deleted":[[3,2],[1,1]]}"#).unwrap();
        assert_eq!(a, b);
        assert_eq!(BraidSpec::parse(&a.to_string()).unwrap(), a);
        assert!(BraidSpec::parse("torus(3,3) minus (4,1)").is_err());
        assert!(BraidSpec::parse("torus(3,3) minus (1,1) (1,1)").is_err());
        assert!(BraidSpec::parse("torus 3 3").is_err());
    }

    #[test]
    fn words_fill_rows_left_to_right() {
        let spec = BraidSpec::parse("word(3; 2 1 2 2)").unwrap();
        assert_eq!(spec.q, 3);
        assert_eq!(spec.retained(), vec![(1, 2), (2, 1), (2, 2), (3, 2)]);
        assert_eq!(spec.word(), vec![2, 1, 2, 2]);
        assert_eq!(BraidSpec::from_word(2, &[]).unwrap().q, 0);
        assert!(BraidSpec::from_word(2, &[2]).is_err());
    }

    #[test]
    fn generator_names_round_trip() {
        for g in [GeneratorId::b(2, 1), GeneratorId::c(3, 2), GeneratorId::s(1, 1)] {
            assert_eq!(g.to_string().parse::<GeneratorId>().unwrap(), g);
        }
        assert_eq!(GeneratorId::s(3, 1).degree(), 1);
        assert!("x[1,1]".parse::<GeneratorId>().is_err());
    }
}
