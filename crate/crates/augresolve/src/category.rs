//! Bilinearized cochain complexes and A∞ operations of the augmentation category.
//!
//! Everything is read off ε-decorated words: a word `w` contributes to the
//! k-ary part at positions `p₁ < … < p_k` with weight
//! `ε₁(w[..p₁]) · ε₂(w[p₁+1..p₂]) · … · ε_{k+1}(w[p_k+1..])`. Inputs are
//! consumed left to right along the word.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use crate::augmentation::{AugPair, Augmentation};
use crate::braid::GeneratorId;
use crate::dga::{Dga, Poly};
use crate::gf2::Gf2Matrix;

/// Z/2 combination of dual generators.
pub type Cochain = BTreeSet<GeneratorId>;

/// Parity of every decorated k-tuple of letters in `p`, where `k = eps.len() - 1`.
pub fn decorated_part(p: &Poly, eps: &[&Augmentation]) -> BTreeMap<Vec<GeneratorId>, bool> {
    let mut out = BTreeMap::new();
    let mut picked = Vec::with_capacity(eps.len());
    for w in p.words() {
        decorate(w, 0, eps, &mut picked, &mut out);
    }
    out.retain(|_, v| *v);
    out
}

fn decorate(
    w: &[GeneratorId],
    start: usize,
    eps: &[&Augmentation],
    picked: &mut Vec<GeneratorId>,
    out: &mut BTreeMap<Vec<GeneratorId>, bool>,
) {
    let r = picked.len();
    if r + 1 == eps.len() {
        if eps[r].eval_word(&w[start..]) {
            let v = out.entry(picked.clone()).or_insert(false);
            *v = !*v;
        }
        return;
    }
    for p in start..w.len() {
        if !eps[r].eval_word(&w[start..p]) {
            break;
        }
        picked.push(w[p]);
        decorate(w, p + 1, eps, picked, out);
        picked.pop();
    }
}

/// Cochain complex of Reeb chord duals for a pair of augmentations.
#[derive(Debug, Clone)]
pub struct HomComplex {
    pub degree0: Vec<GeneratorId>,
    pub degree1: Vec<GeneratorId>,
    /// Rows index degree-1 duals, columns degree-0 duals.
    pub d: Gf2Matrix,
}

impl HomComplex {
    pub fn basis(&self) -> impl Iterator<Item = (GeneratorId, u32)> + '_ {
        self.degree0.iter().chain(&self.degree1).map(|&g| (g, g.degree()))
    }

    /// The differential on a cochain.
    pub fn apply(&self, x: &Cochain) -> Cochain {
        let support: Vec<usize> =
            self.degree0.iter().enumerate().filter(|(_, g)| x.contains(g)).map(|(k, _)| k).collect();
        self.d.apply(&support).into_iter().map(|r| self.degree1[r]).collect()
    }
}

/// Bilinearized differential `μ¹` for the pair.
pub fn bilinearized_matrix(dga: &Dga, pair: &AugPair) -> HomComplex {
    let degree0 = dga.degree_zero();
    let degree1 = dga.degree_one();
    let col: HashMap<GeneratorId, usize> = degree0.iter().enumerate().map(|(k, &g)| (g, k)).collect();
    let mut d = Gf2Matrix::zeros(degree1.len(), degree0.len());
    for (r, &s) in degree1.iter().enumerate() {
        for (letters, _) in decorated_part(dga.d(s), &[&pair.first, &pair.second]) {
            if let Some(&c) = col.get(&letters[0]) {
                d.toggle(r, c);
            }
        }
    }
    HomComplex { degree0, degree1, d }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cohomology {
    pub dim0: usize,
    pub dim1: usize,
    /// Cocycles spanning degree 0.
    pub cocycles0: Vec<Vec<GeneratorId>>,
    /// Degree-1 duals spanning a complement of the coboundaries.
    pub representatives1: Vec<GeneratorId>,
}

pub fn cohomology(h: &HomComplex) -> Cohomology {
    let rank = h.d.rank();
    let cocycles0 = h
        .d
        .kernel()
        .into_iter()
        .map(|v| v.into_iter().map(|k| h.degree0[k]).collect())
        .collect();
    let representatives1 = h.d.cokernel_representatives().into_iter().map(|r| h.degree1[r]).collect();
    Cohomology { dim0: h.degree0.len() - rank, dim1: h.degree1.len() - rank, cocycles0, representatives1 }
}

/// Table of `μ_k` for fixed augmentations: input tuple ↦ output cochain.
pub type MuTable = BTreeMap<Vec<GeneratorId>, Cochain>;

pub fn mu_table(dga: &Dga, eps: &[&Augmentation]) -> MuTable {
    let mut table = MuTable::new();
    for &a in dga.generators() {
        for (letters, _) in decorated_part(dga.d(a), eps) {
            table.entry(letters).or_default().insert(a);
        }
    }
    table
}

/// `μ_k(inputs)` with `k + 1` augmentations.
pub fn mu_k(dga: &Dga, eps: &[Augmentation], inputs: &[GeneratorId]) -> Cochain {
    assert_eq!(eps.len(), inputs.len() + 1, "μ_k takes k + 1 augmentations");
    let eps: Vec<&Augmentation> = eps.iter().collect();
    dga.generators()
        .iter()
        .copied()
        .filter(|&a| decorated_part(dga.d(a), &eps).contains_key(inputs))
        .collect()
}

pub fn toggle_all(acc: &mut Cochain, xs: &Cochain) {
    for &x in xs {
        if !acc.remove(&x) {
            acc.insert(x);
        }
    }
}

/// Evaluates A∞ relations for a family of augmentations, caching μ tables.
pub struct AInfinity<'a> {
    dga: &'a Dga,
    augs: &'a [Augmentation],
    tables: HashMap<Vec<usize>, MuTable>,
}

impl<'a> AInfinity<'a> {
    pub fn new(dga: &'a Dga, augs: &'a [Augmentation]) -> Self {
        AInfinity { dga, augs, tables: HashMap::new() }
    }

    pub fn mu(&mut self, eps: &[usize], inputs: &[GeneratorId]) -> Cochain {
        let (dga, augs) = (self.dga, self.augs);
        let table = self.tables.entry(eps.to_vec()).or_insert_with(|| {
            let e: Vec<&Augmentation> = eps.iter().map(|&k| &augs[k]).collect();
            mu_table(dga, &e)
        });
        table.get(inputs).cloned().unwrap_or_default()
    }

    /// `Σ μ(id ⊗ … ⊗ μ ⊗ … ⊗ id)` on `inputs`; zero when the relation holds.
    pub fn relation(&mut self, eps: &[usize], inputs: &[GeneratorId]) -> Cochain {
        let k = inputs.len();
        let mut total = Cochain::new();
        for j in 1..=k {
            for i in 0..=k - j {
                let inner = self.mu(&eps[i..=i + j], &inputs[i..i + j]);
                let outer_eps: Vec<usize> = eps[..=i].iter().chain(&eps[i + j..]).copied().collect();
                for y in inner {
                    let mut args = inputs[..i].to_vec();
                    args.push(y);
                    args.extend_from_slice(&inputs[i + j..]);
                    let out = self.mu(&outer_eps, &args);
                    toggle_all(&mut total, &out);
                }
            }
        }
        total
    }

    /// Letters occurring in some differential; any other input makes every term vanish.
    pub fn active_inputs(&self) -> Vec<GeneratorId> {
        let mut letters = BTreeSet::new();
        for &g in self.dga.generators() {
            letters.extend(self.dga.d(g).letters());
        }
        letters.into_iter().collect()
    }

    /// Relations of arity `k` over every augmentation tuple and input tuple;
    /// returns the failing cases.
    pub fn failures(&mut self, k: usize) -> Vec<(Vec<usize>, Vec<GeneratorId>)> {
        let inputs = self.active_inputs();
        let mut bad = Vec::new();
        for eps in tuples(self.augs.len(), k + 1) {
            for xs in tuples(inputs.len(), k) {
                let xs: Vec<GeneratorId> = xs.iter().map(|&x| inputs[x]).collect();
                if !self.relation(&eps, &xs).is_empty() {
                    bad.push((eps.clone(), xs));
                }
            }
        }
        bad
    }
}

/// All `len`-tuples over `0..n` in lexicographic order.
pub fn tuples(n: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..n).map(move |x| {
                    let mut t = t.clone();
                    t.push(x);
                    t
                })
            })
            .collect();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::augmentation::{enumerate_augmentations, twist_differential};
    use crate::braid::torus_braid;
    use crate::closure::ClosureDiagram;
    use crate::dga::differential_from_disks;

    fn dga(p: i64, q: i64) -> Dga {
        differential_from_disks(&ClosureDiagram::build(&torus_braid(p, q).unwrap())).unwrap()
    }

    #[test]
    fn zero_augmentations_keep_only_linear_terms() {
        let d = dga(2, 3);
        let z = Augmentation::zero(&d);
        let h = bilinearized_matrix(&d, &AugPair::new(z.clone(), z));
        for (r, &s) in h.degree1.iter().enumerate() {
            for (c, &x) in h.degree0.iter().enumerate() {
                assert_eq!(h.d.get(r, c), d.d(s).contains(&[x]));
            }
        }
    }

    #[test]
    fn unknot_cohomology_sits_in_degree_one() {
        let d = dga(1, 0);
        let e = Augmentation::default();
        let c = cohomology(&bilinearized_matrix(&d, &AugPair::new(e.clone(), e)));
        assert_eq!((c.dim0, c.dim1), (0, 1));
    }

    #[test]
    fn rank_arithmetic() {
        let h = HomComplex {
            degree0: vec![GeneratorId::b(1, 1), GeneratorId::b(2, 1)],
            degree1: vec![GeneratorId::s(1, 1), GeneratorId::s(2, 1), GeneratorId::s(2, 2)],
            d: Gf2Matrix::zeros(3, 2),
        };
        let c = cohomology(&h);
        assert_eq!((c.dim0, c.dim1), (2, 3));
    }

    #[test]
    fn trefoil_euler_identity() {
        let d = dga(2, 3);
        let augs = enumerate_augmentations(&d).unwrap();
        for e1 in &augs {
            for e2 in &augs {
                let c = cohomology(&bilinearized_matrix(&d, &AugPair::new(e1.clone(), e2.clone())));
                assert_eq!(c.dim0 as i64 - c.dim1 as i64, 1);
            }
        }
    }

    #[test]
    fn mu_one_matches_matrix() {
        let d = dga(2, 3);
        let augs = enumerate_augmentations(&d).unwrap();
        let pair = [augs[1].clone(), augs[3].clone()];
        let h = bilinearized_matrix(&d, &AugPair::new(pair[0].clone(), pair[1].clone()));
        for &x in &h.degree0 {
            assert_eq!(mu_k(&d, &pair, &[x]), h.apply(&Cochain::from([x])));
        }
    }

    #[test]
    fn diagonal_decoration_is_the_twisted_linear_part() {
        let d = dga(3, 3);
        for eps in enumerate_augmentations(&d).unwrap() {
            let t = twist_differential(&d, &eps);
            for &g in d.generators() {
                let linear: BTreeSet<Vec<GeneratorId>> = t.d(g).words().filter(|w| w.len() == 1).cloned().collect();
                let decorated: BTreeSet<Vec<GeneratorId>> = decorated_part(d.d(g), &[&eps, &eps]).into_keys().collect();
                assert_eq!(linear, decorated);
            }
        }
    }

    #[test]
    fn quadratic_part_with_zero_augmentations() {
        let d = dga(2, 3);
        let z = Augmentation::zero(&d);
        let eps = [z.clone(), z.clone(), z];
        let (b1, b2) = (GeneratorId::b(1, 1), GeneratorId::b(2, 1));
        let expected: Cochain = d
            .generators()
            .iter()
            .copied()
            .filter(|&a| d.d(a).contains(&[b1, b2]))
            .collect();
        assert_eq!(mu_k(&d, &eps, &[b1, b2]), expected);
    }

    #[test]
    fn trefoil_a_infinity_relations() {
        let d = dga(2, 3);
        let augs = enumerate_augmentations(&d).unwrap();
        let mut ainf = AInfinity::new(&d, &augs);
        for k in 1..=3 {
            assert!(ainf.failures(k).is_empty(), "arity {k}");
        }
    }
}
