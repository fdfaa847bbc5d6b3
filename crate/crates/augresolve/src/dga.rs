//! Free unital noncommutative algebras over Z/2 with a differential.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;
use serde::Serialize;

use crate::braid::GeneratorId;
use crate::closure::ClosureDiagram;
use crate::disk::DiskQuery;
use crate::search::DiskCounter;
use crate::error::Result;

/// A monomial; the empty word is the unit.
pub type Word = Vec<GeneratorId>;

pub fn word_degree(w: &[GeneratorId]) -> u32 {
    w.iter().map(|g| g.degree()).sum()
}

/// Z/2 linear combination of words, kept as a sorted set so duplicates cancel.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Poly {
    terms: BTreeSet<Word>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn one() -> Self {
        Poly::from_word(Vec::new())
    }

    pub fn generator(g: GeneratorId) -> Self {
        Poly::from_word(vec![g])
    }

    pub fn from_word(w: Word) -> Self {
        Poly { terms: BTreeSet::from([w]) }
    }

    /// Sums words with Z/2 cancellation.
    pub fn from_words(words: impl IntoIterator<Item = Word>) -> Self {
        let mut p = Poly::zero();
        for w in words {
            p.toggle(w);
        }
        p
    }

    pub fn toggle(&mut self, w: Word) {
        if !self.terms.remove(&w) {
            self.terms.insert(w);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn words(&self) -> impl Iterator<Item = &Word> {
        self.terms.iter()
    }

    pub fn contains(&self, w: &[GeneratorId]) -> bool {
        self.terms.contains(w)
    }

    pub fn has_constant(&self) -> bool {
        self.terms.contains(&Vec::new())
    }

    pub fn add(&self, other: &Poly) -> Poly {
        Poly { terms: self.terms.symmetric_difference(&other.terms).cloned().collect() }
    }

    pub fn add_assign(&mut self, other: &Poly) {
        for w in &other.terms {
            self.toggle(w.clone());
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero();
        for u in &self.terms {
            for v in &other.terms {
                let mut w = u.clone();
                w.extend_from_slice(v);
                out.toggle(w);
            }
        }
        out
    }

    /// Extends a generator map multiplicatively; unmapped generators are fixed.
    pub fn substitute(&self, image: &dyn Fn(GeneratorId) -> Option<Poly>) -> Poly {
        let mut out = Poly::zero();
        for w in &self.terms {
            let mut acc = Poly::one();
            for &g in w {
                let factor = image(g).unwrap_or_else(|| Poly::generator(g));
                acc = acc.mul(&factor);
                if acc.is_zero() {
                    break;
                }
            }
            out.add_assign(&acc);
        }
        out
    }

    pub fn letters(&self) -> BTreeSet<GeneratorId> {
        self.terms.iter().flatten().copied().collect()
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|w| {
                if w.is_empty() {
                    "1".to_string()
                } else {
                    w.iter().map(|g| g.to_string()).collect::<Vec<_>>().join("·")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl Serialize for Poly {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.terms.iter())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dga {
    generators: Vec<GeneratorId>,
    differential: BTreeMap<GeneratorId, Poly>,
}

impl Dga {
    /// Generators missing from `differential` are closed.
    pub fn new(generators: impl IntoIterator<Item = GeneratorId>, differential: BTreeMap<GeneratorId, Poly>) -> Self {
        let mut generators: Vec<GeneratorId> = generators.into_iter().collect();
        generators.sort();
        generators.dedup();
        let differential = generators
            .iter()
            .map(|g| (*g, differential.get(g).cloned().unwrap_or_default()))
            .collect();
        Dga { generators, differential }
    }

    pub fn generators(&self) -> &[GeneratorId] {
        &self.generators
    }

    pub fn degree_zero(&self) -> Vec<GeneratorId> {
        self.generators.iter().copied().filter(|g| g.degree() == 0).collect()
    }

    pub fn degree_one(&self) -> Vec<GeneratorId> {
        self.generators.iter().copied().filter(|g| g.degree() == 1).collect()
    }

    pub fn contains(&self, g: GeneratorId) -> bool {
        self.differential.contains_key(&g)
    }

    pub fn d(&self, g: GeneratorId) -> &Poly {
        &self.differential[&g]
    }

    pub fn differential(&self) -> &BTreeMap<GeneratorId, Poly> {
        &self.differential
    }

    /// Leibniz extension of the differential (no signs over Z/2).
    pub fn apply(&self, p: &Poly) -> Poly {
        let mut out = Poly::zero();
        for w in p.words() {
            for (k, g) in w.iter().enumerate() {
                let Some(dg) = self.differential.get(g) else {
                    continue;
                };
                for v in dg.words() {
                    let mut x = w[..k].to_vec();
                    x.extend_from_slice(v);
                    x.extend_from_slice(&w[k + 1..]);
                    out.toggle(x);
                }
            }
        }
        out
    }

    /// Generators whose differential squares to something nonzero.
    pub fn check_d_squared(&self) -> Vec<(GeneratorId, Poly)> {
        self.generators
            .iter()
            .map(|&g| (g, self.apply(self.d(g))))
            .filter(|(_, r)| !r.is_zero())
            .collect()
    }

    /// Monomials of some `∂g` whose degree is not `|g| - 1`.
    pub fn degree_violations(&self) -> Vec<(GeneratorId, Word)> {
        let mut out = Vec::new();
        for (&g, p) in &self.differential {
            for w in p.words() {
                if word_degree(w) + 1 != g.degree() {
                    out.push((g, w.clone()));
                }
            }
        }
        out
    }

    pub fn to_document(&self) -> DgaDocument {
        DgaDocument {
            generators: self.generators.iter().map(|&g| GeneratorEntry { name: g, degree: g.degree() }).collect(),
            differential: self.differential.clone(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct GeneratorEntry {
    pub name: GeneratorId,
    pub degree: u32,
}

#[derive(Debug, Serialize)]
pub struct DgaDocument {
    pub generators: Vec<GeneratorEntry>,
    pub differential: BTreeMap<GeneratorId, Poly>,
}

/// Differential counting disks with one positive corner.
pub fn differential_from_disks(diagram: &ClosureDiagram) -> Result<Dga> {
    differential_with(diagram, &DiskCounter::walk(diagram)?)
}

pub fn differential_with(diagram: &ClosureDiagram, counter: &DiskCounter<'_>) -> Result<Dga> {
    let gens: Vec<GeneratorId> = diagram.generators().collect();
    let images = gens
        .par_iter()
        .map(|&g| {
            let disks = counter.disks(&DiskQuery::OnePositive { at: g })?;
            Ok((g, Poly::from_words(disks.iter().map(|d| d.word()))))
        })
        .collect::<Result<BTreeMap<_, _>>>()?;
    Ok(Dga::new(gens, images))
}

/// Algebra map between two DGAs, given on generators.
#[derive(Debug, Clone)]
pub struct DgaMap {
    pub source: Dga,
    pub target: Dga,
    pub action: BTreeMap<GeneratorId, Poly>,
}

impl DgaMap {
    pub fn identity(dga: &Dga) -> Self {
        let action = dga.generators().iter().map(|&g| (g, Poly::generator(g))).collect();
        DgaMap { source: dga.clone(), target: dga.clone(), action }
    }

    pub fn image(&self, g: GeneratorId) -> &Poly {
        &self.action[&g]
    }

    pub fn apply(&self, p: &Poly) -> Poly {
        p.substitute(&|g| self.action.get(&g).cloned())
    }

    /// Source generators where `f∘∂ ≠ ∂∘f`.
    pub fn verify_chain_map(&self) -> Vec<GeneratorId> {
        self.source
            .generators()
            .iter()
            .copied()
            .filter(|&g| self.apply(self.source.d(g)) != self.target.apply(self.image(g)))
            .collect()
    }

    pub fn degree_violations(&self) -> Vec<GeneratorId> {
        self.action
            .iter()
            .filter(|(g, p)| p.words().any(|w| word_degree(w) != g.degree()))
            .map(|(g, _)| *g)
            .collect()
    }

    pub fn compose(&self, after: &DgaMap) -> DgaMap {
        let action = self.action.iter().map(|(&g, p)| (g, after.apply(p))).collect();
        DgaMap { source: self.source.clone(), target: after.target.clone(), action }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::{torus_braid, BraidSpec};

    fn b(i: u32, j: u32) -> GeneratorId {
        GeneratorId::b(i, j)
    }

    #[test]
    fn cancellation_and_products() {
        let x = Poly::from_words([vec![b(1, 1)], vec![b(1, 1)], vec![]]);
        assert_eq!(x, Poly::one());
        let y = Poly::from_words([vec![b(1, 1)], vec![]]);
        assert_eq!(y.mul(&y), Poly::from_words([vec![b(1, 1), b(1, 1)], vec![]]));
        assert_eq!(y.add(&y), Poly::zero());
    }

    #[test]
    fn injected_nonzero_square_is_caught() {
        let s = GeneratorId::s(1, 1);
        let dga = Dga::new([s, b(1, 1)], BTreeMap::from([(s, Poly::generator(b(1, 1))), (b(1, 1), Poly::one())]));
        let residual = dga.check_d_squared();
        assert_eq!(residual.len(), 1);
        assert_eq!(residual[0].0, s);
        assert!(Dga::new([], BTreeMap::new()).check_d_squared().is_empty());
    }

    #[test]
    fn torus_differentials_square_to_zero() {
        for (p, q) in [(2, 3), (3, 3), (4, 3)] {
            let d = ClosureDiagram::build(&torus_braid(p, q).unwrap());
            let dga = differential_from_disks(&d).unwrap();
            assert!(dga.check_d_squared().is_empty());
            assert!(dga.degree_violations().is_empty());
            for g in dga.degree_zero() {
                assert!(dga.d(g).is_zero());
            }
        }
    }

    #[test]
    fn unknot_differential_vanishes() {
        let d = ClosureDiagram::build(&torus_braid(1, 0).unwrap());
        let dga = differential_from_disks(&d).unwrap();
        assert_eq!(dga.generators(), &[GeneratorId::s(1, 1)]);
        assert!(dga.d(GeneratorId::s(1, 1)).is_zero());
    }

    #[test]
    fn three_strand_differential() {
        let d = ClosureDiagram::build(&BraidSpec::new(3, 3, [(1, 1), (3, 1)]).unwrap());
        let dga = differential_from_disks(&d).unwrap();
        let c = GeneratorId::c;
        let expected = Poly::from_words([vec![], vec![c(3, 1), b(2, 2)], vec![c(3, 2)]]);
        assert_eq!(dga.d(GeneratorId::s(3, 3)), &expected);
    }

    #[test]
    fn identity_is_a_chain_map() {
        let d = ClosureDiagram::build(&torus_braid(3, 2).unwrap());
        let dga = differential_from_disks(&d).unwrap();
        assert!(DgaMap::identity(&dga).verify_chain_map().is_empty());
    }
}
