//! Exhaustive checks over small torus braids and their single resolutions.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::augmentation::{enumerate_augmentations, enumerate_naive, AugPair};
use crate::braid::{resolve_crossing, torus_braid, BraidSpec, GeneratorId};
use crate::closure::ClosureDiagram;
use crate::dga::differential_from_disks;
use crate::disk::{DiskEngine, DiskQuery};
use crate::error::Result;
use crate::oracle::{EmbeddedRegions, DEFAULT_FACE_BOUND};
use crate::resolution::{compute_psi, verify_cor33, verify_lemma31, verify_theorem32, IndexDirection, Lemma31Report};
use crate::search::Engine;

/// `torus(p,q)` for `1 ≤ p ≤ p_max`, `1 ≤ q ≤ q_max`.
pub fn torus_grid(p_max: u32, q_max: u32) -> Vec<BraidSpec> {
    (1..=p_max)
        .flat_map(|p| (1..=q_max).map(move |q| torus_braid(i64::from(p), i64::from(q)).expect("valid torus")))
        .collect()
}

/// Every instance paired with each of its braid letters.
pub fn resolutions(specs: &[BraidSpec]) -> Vec<(BraidSpec, GeneratorId)> {
    specs
        .iter()
        .flat_map(|s| s.retained().into_iter().map(move |(i, j)| (s.clone(), GeneratorId::b(i, j))))
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct SoundnessRecord {
    pub instance: String,
    pub resolved: Option<GeneratorId>,
    pub d_squared_failures: Vec<GeneratorId>,
    pub chain_map_failures: Vec<GeneratorId>,
    pub surjective: bool,
    pub lemma: Lemma31Report,
}

impl SoundnessRecord {
    pub fn label(&self) -> String {
        match self.resolved {
            Some(a) => format!("{} at {a}", self.instance),
            None => self.instance.clone(),
        }
    }

    pub fn sound(&self) -> bool {
        self.d_squared_failures.is_empty() && self.chain_map_failures.is_empty() && self.surjective
    }
}

/// `∂² = 0` on every instance and resolution, the chain-map identity and the
/// index windows of `ψ₁` on every resolution.
pub fn soundness_sweep(p_max: u32, q_max: u32) -> Result<Vec<SoundnessRecord>> {
    let specs = torus_grid(p_max, q_max);
    let mut records: Vec<SoundnessRecord> = specs
        .par_iter()
        .map(|spec| {
            let dga = differential_from_disks(&ClosureDiagram::build(spec))?;
            Ok(SoundnessRecord {
                instance: spec.to_string(),
                resolved: None,
                d_squared_failures: dga.check_d_squared().into_iter().map(|(g, _)| g).collect(),
                chain_map_failures: Vec::new(),
                surjective: true,
                lemma: Lemma31Report::default(),
            })
        })
        .collect::<Result<_>>()?;
    let resolved: Vec<SoundnessRecord> = resolutions(&specs)
        .par_iter()
        .map(|(spec, a)| {
            let res = compute_psi(&ClosureDiagram::build(spec), *a, Engine::Walk, None)?;
            let mut d_squared_failures: Vec<GeneratorId> =
                res.minus.check_d_squared().into_iter().map(|(g, _)| g).collect();
            d_squared_failures.extend(res.plus.check_d_squared().into_iter().map(|(g, _)| g));
            let mut chain_map_failures = res.psi.verify_chain_map();
            chain_map_failures.extend(res.psi.degree_violations());
            Ok(SoundnessRecord {
                instance: spec.to_string(),
                resolved: Some(*a),
                d_squared_failures,
                chain_map_failures,
                surjective: res.is_surjective(),
                lemma: verify_lemma31(&res),
            })
        })
        .collect::<Result<_>>()?;
    records.extend(resolved);
    Ok(records)
}

/// Pass counts over all augmentation pairs of one resolution.
#[derive(Debug, Clone, Serialize)]
pub struct PairRecord {
    pub instance: String,
    pub resolved: GeneratorId,
    pub components: (usize, usize),
    pub augmentations: usize,
    pub pairs: usize,
    pub triangular_descending: usize,
    pub triangular_ascending: usize,
    pub resolved_row_zero: usize,
    pub injective: usize,
    pub cochain_map: usize,
    pub quotient: usize,
    pub dims_relation: usize,
    pub euler: usize,
    pub first_failure: Option<String>,
}

impl PairRecord {
    /// Parts of the triangularity statement other than the literal ordering.
    pub fn structure_holds(&self) -> bool {
        [self.triangular_ascending, self.resolved_row_zero, self.injective, self.cochain_map]
            .iter()
            .all(|&n| n == self.pairs)
    }

    pub fn literal_order_holds(&self) -> bool {
        self.triangular_descending == self.pairs
    }

    pub fn corollary_holds(&self) -> bool {
        self.quotient == self.pairs && self.dims_relation == self.pairs
    }
}

pub fn pair_sweep(p_max: u32, q_max: u32) -> Result<Vec<PairRecord>> {
    resolutions(&torus_grid(p_max, q_max))
        .par_iter()
        .map(|(spec, a)| {
            let diagram = ClosureDiagram::build(spec);
            let minus_components = ClosureDiagram::build(&resolve_crossing(spec, (a.i, a.j))?).components;
            let res = compute_psi(&diagram, *a, Engine::Walk, None)?;
            let augs = enumerate_augmentations(&res.minus)?;
            let mut rec = PairRecord {
                instance: spec.to_string(),
                resolved: *a,
                components: (diagram.components, minus_components),
                augmentations: augs.len(),
                pairs: 0,
                triangular_descending: 0,
                triangular_ascending: 0,
                resolved_row_zero: 0,
                injective: 0,
                cochain_map: 0,
                quotient: 0,
                dims_relation: 0,
                euler: 0,
                first_failure: None,
            };
            for e1 in &augs {
                for e2 in &augs {
                    let pair = AugPair::new(e1.clone(), e2.clone());
                    let lit = verify_theorem32(&res, &pair, IndexDirection::Descending)?;
                    let asc = verify_theorem32(&res, &pair, IndexDirection::Ascending)?;
                    let cor = verify_cor33(&res, &pair)?;
                    rec.pairs += 1;
                    rec.triangular_descending += usize::from(lit.triangular());
                    rec.triangular_ascending += usize::from(asc.triangular());
                    rec.resolved_row_zero += usize::from(asc.resolved_row_zero);
                    rec.injective += usize::from(asc.injective);
                    rec.cochain_map += usize::from(asc.cochain_failures.is_empty());
                    rec.quotient += usize::from(cor.quotient_is_resolved && cor.quotient_differential_zero);
                    rec.dims_relation += usize::from(cor.relation_holds());
                    rec.euler += usize::from(cor.euler_consistent());
                    if rec.first_failure.is_none() && !(asc.passed() && cor.passed()) {
                        let mut msg = String::new();
                        let _ = write!(
                            msg,
                            "dims minus {:?} plus {:?}",
                            cor.minus_dims, cor.plus_dims
                        );
                        for (r, c) in &asc.misplaced {
                            let _ = write!(msg, "; misplaced ({r}, {c})");
                        }
                        rec.first_failure = Some(msg);
                    }
                }
            }
            Ok(rec)
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct EngineRecord {
    pub instance: String,
    pub queries: usize,
    pub disks: usize,
    pub disagreements: Vec<String>,
}

/// Every one- and two-positive-corner query answered by both disk engines.
pub fn engine_sweep(p_max: u32, q_max: u32) -> Result<Vec<EngineRecord>> {
    let specs = torus_grid(p_max, q_max);
    let mut all: Vec<BraidSpec> = specs.clone();
    for (spec, a) in resolutions(&specs) {
        all.push(resolve_crossing(&spec, (a.i, a.j))?);
    }
    all.sort_by_key(|s| s.to_string());
    all.dedup();
    all.par_iter()
        .map(|spec| {
            let diagram = ClosureDiagram::build(spec);
            let walk = DiskEngine::new(&diagram)?;
            let oracle = EmbeddedRegions::new(&diagram, DEFAULT_FACE_BOUND)?;
            let gens: Vec<GeneratorId> = diagram.generators().collect();
            let mut queries: Vec<DiskQuery> = gens.iter().map(|&at| DiskQuery::OnePositive { at }).collect();
            for &at in &gens {
                for &and in gens.iter().filter(|g| g.kind == crate::braid::Kind::B && **g != at) {
                    queries.push(DiskQuery::TwoPositive { at, and });
                }
            }
            let mut rec =
                EngineRecord { instance: spec.to_string(), queries: queries.len(), disks: 0, disagreements: Vec::new() };
            for q in &queries {
                let mut walked = walk.enumerate(q)?;
                let mut embedded = oracle.query(q);
                walked.sort();
                embedded.sort();
                rec.disks += walked.len();
                if walked != embedded {
                    rec.disagreements.push(format!("{q}: walk {} oracle {}", walked.len(), embedded.len()));
                }
            }
            Ok(rec)
        })
        .collect()
}

#[derive(Debug, Clone, Serialize)]
pub struct AugmentationRecord {
    pub instance: String,
    pub degree_zero: usize,
    pub pruned: usize,
    pub naive: usize,
    pub equal: bool,
}

/// Pruned against naive enumeration on instances with at most `limit` degree-0
/// generators, including single resolutions.
pub fn augmentation_sweep(p_max: u32, q_max: u32, limit: usize) -> Result<Vec<AugmentationRecord>> {
    let specs = torus_grid(p_max, q_max);
    let mut all = specs.clone();
    for (spec, a) in resolutions(&specs) {
        all.push(resolve_crossing(&spec, (a.i, a.j))?);
    }
    all.sort_by_key(|s| s.to_string());
    all.dedup();
    let records: Vec<Option<AugmentationRecord>> = all
        .par_iter()
        .map(|spec| {
            let dga = differential_from_disks(&ClosureDiagram::build(spec))?;
            if dga.degree_zero().len() > limit {
                return Ok(None);
            }
            let pruned = enumerate_augmentations(&dga)?;
            let naive = enumerate_naive(&dga);
            Ok(Some(AugmentationRecord {
                instance: spec.to_string(),
                degree_zero: dga.degree_zero().len(),
                pruned: pruned.len(),
                naive: naive.len(),
                equal: pruned == naive,
            }))
        })
        .collect::<Result<_>>()?;
    Ok(records.into_iter().flatten().collect())
}
