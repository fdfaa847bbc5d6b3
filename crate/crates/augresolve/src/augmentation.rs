//! Z/2-valued augmentations and the twist they induce on the differential.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::braid::GeneratorId;
use crate::dga::{Dga, DgaMap, Poly};
use crate::error::{Error, Result};

pub const DEFAULT_GENERATOR_LIMIT: usize = 30;

/// Algebra map to Z/2 supported on degree-0 generators.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Augmentation {
    values: BTreeMap<GeneratorId, bool>,
}

impl Augmentation {
    pub fn zero(dga: &Dga) -> Self {
        Augmentation::from_values(dga.degree_zero().into_iter().map(|g| (g, false)))
    }

    /// Values on nonzero-degree generators are dropped.
    pub fn from_values(values: impl IntoIterator<Item = (GeneratorId, bool)>) -> Self {
        Augmentation { values: values.into_iter().filter(|(g, _)| g.degree() == 0).collect() }
    }

    /// Keeps every value, including ones on nonzero-degree generators; used to
    /// evaluate formulas whose decorations are free variables.
    pub fn from_raw(values: impl IntoIterator<Item = (GeneratorId, bool)>) -> Self {
        Augmentation { values: values.into_iter().collect() }
    }

    pub fn value(&self, g: GeneratorId) -> bool {
        self.values.get(&g).copied().unwrap_or(false)
    }

    pub fn values(&self) -> &BTreeMap<GeneratorId, bool> {
        &self.values
    }

    pub fn eval_word(&self, w: &[GeneratorId]) -> bool {
        w.iter().all(|&g| self.value(g))
    }

    pub fn eval(&self, p: &Poly) -> bool {
        p.words().filter(|w| self.eval_word(w)).count() % 2 == 1
    }

    /// Generators where `ε∘∂` fails to vanish.
    pub fn violations(&self, dga: &Dga) -> Vec<GeneratorId> {
        dga.generators().iter().copied().filter(|&g| self.eval(dga.d(g))).collect()
    }

    pub fn is_valid(&self, dga: &Dga) -> bool {
        self.violations(dga).is_empty()
    }

    pub fn to_document(&self, index: usize) -> AugmentationDocument {
        AugmentationDocument {
            index,
            values: self.values.iter().map(|(&g, &v)| (g, u8::from(v))).collect(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct AugmentationDocument {
    pub index: usize,
    pub values: BTreeMap<GeneratorId, u8>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AugPair {
    pub first: Augmentation,
    pub second: Augmentation,
}

impl AugPair {
    pub fn new(first: Augmentation, second: Augmentation) -> Self {
        AugPair { first, second }
    }
}

/// All augmentations, in lexicographic order of value vectors over the degree-0
/// generators. Partial assignments are cut as soon as an equation whose letters
/// are all assigned fails.
pub fn enumerate_augmentations(dga: &Dga) -> Result<Vec<Augmentation>> {
    enumerate_augmentations_with_limit(dga, DEFAULT_GENERATOR_LIMIT)
}

pub fn enumerate_augmentations_with_limit(dga: &Dga, limit: usize) -> Result<Vec<Augmentation>> {
    let gens = dga.degree_zero();
    if gens.len() > limit {
        return Err(Error::TooManyGenerators { count: gens.len(), limit });
    }
    let position: BTreeMap<GeneratorId, usize> = gens.iter().enumerate().map(|(k, &g)| (g, k)).collect();
    let mut checks: Vec<Vec<Vec<Vec<usize>>>> = vec![Vec::new(); gens.len() + 1];
    for &g in dga.generators() {
        let d = dga.d(g);
        if d.is_zero() {
            continue;
        }
        // Words touching a nonzero-degree letter evaluate to 0 and are dropped.
        let words: Vec<Vec<usize>> = d
            .words()
            .filter_map(|w| w.iter().map(|l| position.get(l).copied()).collect::<Option<Vec<_>>>())
            .collect();
        let depth = words.iter().flatten().map(|&k| k + 1).max().unwrap_or(0);
        checks[depth].push(words);
    }
    let mut values = vec![false; gens.len()];
    let mut out = Vec::new();
    if checks[0].iter().all(|eq| holds(eq, &values)) {
        search(0, &gens, &checks, &mut values, &mut out);
    }
    Ok(out)
}

fn holds(equation: &[Vec<usize>], values: &[bool]) -> bool {
    equation.iter().filter(|w| w.iter().all(|&k| values[k])).count() % 2 == 0
}

fn search(
    k: usize,
    gens: &[GeneratorId],
    checks: &[Vec<Vec<Vec<usize>>>],
    values: &mut Vec<bool>,
    out: &mut Vec<Augmentation>,
) {
    if k == gens.len() {
        out.push(Augmentation::from_values(gens.iter().copied().zip(values.iter().copied())));
        return;
    }
    for v in [false, true] {
        values[k] = v;
        if checks[k + 1].iter().all(|eq| holds(eq, values)) {
            search(k + 1, gens, checks, values, out);
        }
    }
    values[k] = false;
}

/// Checks all 2ⁿ assignments without pruning.
pub fn enumerate_naive(dga: &Dga) -> Vec<Augmentation> {
    let gens = dga.degree_zero();
    assert!(gens.len() < 32, "naive enumeration is for small instances");
    (0u64..1 << gens.len())
        .map(|bits| {
            Augmentation::from_values(
                gens.iter().enumerate().map(|(k, &g)| (g, bits >> (gens.len() - 1 - k) & 1 == 1)),
            )
        })
        .filter(|e| e.is_valid(dga))
        .collect()
}

/// Conjugates the differential by `g ↦ g + ε(g)`.
pub fn twist_differential(dga: &Dga, eps: &Augmentation) -> Dga {
    let shift = |g: GeneratorId| {
        eps.value(g).then(|| Poly::from_words([vec![g], Vec::new()]))
    };
    let differential = dga.generators().iter().map(|&g| (g, dga.d(g).substitute(&shift))).collect();
    Dga::new(dga.generators().iter().copied(), differential)
}

/// `ε∘f` on the degree-0 generators of the source.
pub fn pushforward(eps: &Augmentation, f: &DgaMap) -> Result<Augmentation> {
    let out = Augmentation::from_values(f.source.degree_zero().into_iter().map(|g| (g, eps.eval(f.image(g)))));
    let bad = out.violations(&f.source);
    if !bad.is_empty() {
        return Err(Error::ValidationFailure(format!("pushed-forward augmentation fails at {bad:?}")));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::torus_braid;
    use crate::closure::ClosureDiagram;
    use crate::dga::differential_from_disks;

    fn dga(p: i64, q: i64) -> Dga {
        differential_from_disks(&ClosureDiagram::build(&torus_braid(p, q).unwrap())).unwrap()
    }

    #[test]
    fn trefoil_has_five() {
        let d = dga(2, 3);
        let augs = enumerate_augmentations(&d).unwrap();
        assert_eq!(augs.len(), 5);
        assert_eq!(augs, enumerate_naive(&d));
    }

    #[test]
    fn unknot_has_only_the_empty_augmentation() {
        let augs = enumerate_augmentations(&dga(1, 0)).unwrap();
        assert_eq!(augs, vec![Augmentation::default()]);
    }

    #[test]
    fn twisting_removes_constants_and_is_an_involution() {
        let d = dga(3, 3);
        for eps in enumerate_augmentations(&d).unwrap() {
            let t = twist_differential(&d, &eps);
            assert!(t.generators().iter().all(|&g| !t.d(g).has_constant()));
            assert!(t.check_d_squared().is_empty());
            assert_eq!(twist_differential(&t, &eps), d);
        }
        assert_eq!(twist_differential(&d, &Augmentation::zero(&d)), d);
    }

    #[test]
    fn pushforward_along_identity() {
        let d = dga(2, 3);
        let id = DgaMap::identity(&d);
        for eps in enumerate_augmentations(&d).unwrap() {
            assert_eq!(pushforward(&eps, &id).unwrap(), eps);
        }
    }

    #[test]
    fn generator_limit_is_enforced() {
        let err = enumerate_augmentations_with_limit(&dga(3, 3), 3).unwrap_err();
        assert!(matches!(err, Error::TooManyGenerators { .. }));
    }
}
