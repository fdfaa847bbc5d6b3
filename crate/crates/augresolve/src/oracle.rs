//! Exhaustive search over unions of bounded faces, used to cross-check the walk
//! engine. Only embedded disks are found.

use rayon::prelude::*;

use crate::closure::{cw_next, opposite, ClosureDiagram, Sign};
use crate::disk::{BoundaryEvent, Disk, DiskQuery};
use crate::error::{Error, Result};

pub const DEFAULT_FACE_BOUND: usize = 24;

const CHUNK: u64 = 1 << 12;

/// All embedded disks of a diagram with one or two positive corners.
pub struct EmbeddedRegions {
    disks: Vec<Disk>,
}

struct Layout {
    quadrant_bits: Vec<[u32; 4]>,
    edge_bits: Vec<u32>,
    neighbours: Vec<u32>,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Cover {
    Untouched,
    Corner(u8),
    Pass,
    Interior,
}

fn classify(pattern: u32) -> Option<Cover> {
    match pattern {
        0 => Some(Cover::Untouched),
        1 => Some(Cover::Corner(0)),
        2 => Some(Cover::Corner(1)),
        4 => Some(Cover::Corner(2)),
        8 => Some(Cover::Corner(3)),
        3 | 6 | 12 | 9 => Some(Cover::Pass),
        15 => Some(Cover::Interior),
        _ => None,
    }
}

impl EmbeddedRegions {
    pub fn new(diagram: &ClosureDiagram, face_bound: usize) -> Result<Self> {
        let bounded: Vec<usize> = diagram.bounded_faces().collect();
        if bounded.len() > face_bound || bounded.len() > 31 {
            return Err(Error::FaceBound { faces: bounded.len(), bound: face_bound.min(31) });
        }
        let mut bit_of = vec![0u32; diagram.faces.len()];
        for (k, &f) in bounded.iter().enumerate() {
            bit_of[f] = 1 << k;
        }
        let quadrant_bits = (0..diagram.crossings.len())
            .map(|c| std::array::from_fn(|q| bit_of[diagram.quadrant_face(c, q as u8)]))
            .collect();
        let edge_bits: Vec<u32> = (0..diagram.edges.len())
            .map(|e| bit_of[diagram.face_left(e, true)] | bit_of[diagram.face_left(e, false)])
            .collect();
        let mut neighbours = vec![0u32; bounded.len()];
        for &bits in &edge_bits {
            for (k, n) in neighbours.iter_mut().enumerate() {
                if bits & (1 << k) != 0 {
                    *n |= bits & !(1 << k);
                }
            }
        }
        let layout = Layout { quadrant_bits, edge_bits, neighbours };
        let total: u64 = 1 << bounded.len();
        let mut disks: Vec<Disk> = (0..total.div_ceil(CHUNK))
            .into_par_iter()
            .flat_map_iter(|chunk| {
                let lo = (chunk * CHUNK).max(1);
                let hi = ((chunk + 1) * CHUNK).min(total);
                let layout = &layout;
                (lo..hi).flat_map(move |mask| region_disks(diagram, layout, mask as u32))
            })
            .collect();
        disks.sort();
        Ok(EmbeddedRegions { disks })
    }

    pub fn query(&self, query: &DiskQuery) -> Vec<Disk> {
        self.disks
            .iter()
            .filter(|disk| {
                let positives = disk.positive_corners();
                positives[0] == query.at()
                    && match query.extra() {
                        None => positives.len() == 1,
                        Some(a) => positives.len() == 2 && positives[1] == a,
                    }
            })
            .cloned()
            .collect()
    }

    pub fn all(&self) -> &[Disk] {
        &self.disks
    }
}

fn connected(layout: &Layout, mask: u32) -> bool {
    let mut reached = mask & mask.wrapping_neg();
    loop {
        let mut next = reached;
        let mut rest = reached;
        while rest != 0 {
            let k = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            next |= layout.neighbours[k] & mask;
        }
        if next == reached {
            return reached == mask;
        }
        reached = next;
    }
}

fn region_disks(diagram: &ClosureDiagram, layout: &Layout, mask: u32) -> Vec<Disk> {
    let mut covers = Vec::with_capacity(diagram.crossings.len());
    let mut vertices = 0i64;
    let mut positives = Vec::new();
    for (c, bits) in layout.quadrant_bits.iter().enumerate() {
        let pattern = (0..4).fold(0u32, |acc, q| acc | (u32::from(bits[q] & mask != 0) << q));
        let Some(cover) = classify(pattern) else {
            return Vec::new();
        };
        if cover != Cover::Untouched {
            vertices += 1;
        }
        if let Cover::Corner(q) = cover {
            if diagram.crossings[c].signs[usize::from(q)] == Sign::Plus {
                positives.push((c, q));
                if positives.len() > 2 {
                    return Vec::new();
                }
            }
        }
        covers.push(cover);
    }
    if positives.is_empty() {
        return Vec::new();
    }
    let edges = layout.edge_bits.iter().filter(|&&b| b & mask != 0).count() as i64;
    if vertices - edges + i64::from(mask.count_ones()) != 1 || !connected(layout, mask) {
        return Vec::new();
    }
    positives
        .iter()
        .filter_map(|&(d, q)| read_boundary(diagram, &covers, d, q))
        .collect()
}

fn read_boundary(diagram: &ClosureDiagram, covers: &[Cover], d: usize, quadrant: u8) -> Option<Disk> {
    let mut boundary = vec![BoundaryEvent::Corner {
        crossing: diagram.crossings[d].id,
        quadrant,
        sign: Sign::Plus,
    }];
    let (mut c, mut arm) = (d, quadrant);
    for _ in 0..=2 * diagram.edges.len() {
        let step = diagram.traverse(c, arm);
        c = step.crossing;
        if c == d {
            return (step.arm_in == (quadrant + 1) % 4).then_some(Disk { boundary });
        }
        let crossing = diagram.crossings[c].id;
        match covers[c] {
            Cover::Corner(q) if q == cw_next(step.arm_in) => {
                let sign = diagram.crossings[c].signs[usize::from(q)];
                boundary.push(BoundaryEvent::Corner { crossing, quadrant: q, sign });
                arm = q;
            }
            Cover::Pass => {
                boundary.push(BoundaryEvent::Pass { crossing, arm_in: step.arm_in });
                arm = opposite(step.arm_in);
            }
            _ => return None,
        }
    }
    None
}

pub fn oracle_enumerate_embedded(diagram: &ClosureDiagram, query: &DiskQuery) -> Result<Vec<Disk>> {
    Ok(EmbeddedRegions::new(diagram, DEFAULT_FACE_BOUND)?.query(query))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::{torus_braid, GeneratorId};
    use crate::disk::DiskEngine;

    #[test]
    fn unknot_lobes() {
        let d = ClosureDiagram::build(&torus_braid(1, 0).unwrap());
        let found = oracle_enumerate_embedded(&d, &DiskQuery::OnePositive { at: GeneratorId::s(1, 1) }).unwrap();
        assert_eq!(found.len(), 2);
    }

    #[test]
    fn agrees_with_walks_on_trefoil() {
        let d = ClosureDiagram::build(&torus_braid(2, 3).unwrap());
        let regions = EmbeddedRegions::new(&d, DEFAULT_FACE_BOUND).unwrap();
        let engine = DiskEngine::new(&d).unwrap();
        for g in d.generators() {
            let q = DiskQuery::OnePositive { at: g };
            assert_eq!(regions.query(&q), engine.enumerate(&q).unwrap(), "{q}");
        }
    }

    #[test]
    fn face_bound_is_enforced() {
        let d = ClosureDiagram::build(&torus_braid(3, 3).unwrap());
        assert!(matches!(EmbeddedRegions::new(&d, 4), Err(Error::FaceBound { .. })));
    }
}
