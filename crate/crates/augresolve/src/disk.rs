//! Immersed disks with convex corners, found by walking their boundaries.
//!
//! A walk starts at a positive quadrant of the designated crossing and keeps
//! the disk on its left. At every crossing it either passes straight through or
//! turns into the next arm clockwise, covering one quadrant. A closed walk is
//! accepted when its total turning is one full turn and the induced winding
//! numbers are nonnegative with zero on the unbounded face.
//!
//! The search is finite because of an energy filtration: crossing heights are
//! chosen so that every bounded face has positive area, and a disk's area equals
//! the heights of its positive corners minus those of its negative corners.

use std::fmt;

use serde::Serialize;

use crate::braid::GeneratorId;
use crate::closure::{corner_quadrant, cw_next, opposite, ClosureDiagram, Sign, CORNER_TURN};
use crate::error::{Error, Result};

const HEIGHT_ITERATIONS: usize = 1_000_000;
const FULL_TURN: i32 = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DiskQuery {
    OnePositive { at: GeneratorId },
    TwoPositive { at: GeneratorId, and: GeneratorId },
}

impl DiskQuery {
    pub fn at(&self) -> GeneratorId {
        match *self {
            DiskQuery::OnePositive { at } | DiskQuery::TwoPositive { at, .. } => at,
        }
    }

    pub fn extra(&self) -> Option<GeneratorId> {
        match *self {
            DiskQuery::OnePositive { .. } => None,
            DiskQuery::TwoPositive { and, .. } => Some(and),
        }
    }
}

impl fmt::Display for DiskQuery {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DiskQuery::OnePositive { at } => write!(f, "+{at}"),
            DiskQuery::TwoPositive { at, and } => write!(f, "+{at} +{and}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(tag = "event", rename_all = "lowercase")]
pub enum BoundaryEvent {
    Corner { crossing: GeneratorId, quadrant: u8, sign: Sign },
    Pass { crossing: GeneratorId, arm_in: u8 },
}

/// Boundary of a disk, starting with the positive corner at the query crossing
/// and continuing counter-clockwise.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Disk {
    pub boundary: Vec<BoundaryEvent>,
}

impl Disk {
    pub fn positive_corners(&self) -> Vec<GeneratorId> {
        self.corners(Sign::Plus)
    }

    pub fn negative_corners(&self) -> Vec<GeneratorId> {
        self.corners(Sign::Minus)
    }

    fn corners(&self, which: Sign) -> Vec<GeneratorId> {
        self.boundary
            .iter()
            .filter_map(|ev| match *ev {
                BoundaryEvent::Corner { crossing, sign, .. } if sign == which => Some(crossing),
                _ => None,
            })
            .collect()
    }

    /// Negative corners read counter-clockwise after the starting corner.
    pub fn word(&self) -> Vec<GeneratorId> {
        self.boundary[1..]
            .iter()
            .filter_map(|ev| match *ev {
                BoundaryEvent::Corner { crossing, sign: Sign::Minus, .. } => Some(crossing),
                _ => None,
            })
            .collect()
    }
}

/// Index of a disk with `k` extra positive punctures at `a`.
pub fn index_of(d_degree: i64, a_degree: i64, k: i64, negs_degree_sum: i64) -> i64 {
    d_degree + k * a_degree - negs_degree_sum + k
}

/// Positive integer crossing heights with every bounded face of positive area.
#[derive(Debug, Clone)]
pub struct Filtration {
    pub heights: Vec<i64>,
    pub areas: Vec<i64>,
}

impl Filtration {
    pub fn new(diagram: &ClosureDiagram) -> Result<Self> {
        let n = diagram.crossings.len();
        let rows: Vec<Vec<(usize, i64)>> = diagram
            .bounded_faces()
            .map(|f| {
                let mut row = vec![0i64; n];
                for &(c, q) in &diagram.faces[f].corners {
                    row[c] += match diagram.crossings[c].signs[usize::from(q)] {
                        Sign::Plus => 1,
                        Sign::Minus => -1,
                    };
                }
                row.into_iter().enumerate().filter(|&(_, v)| v != 0).collect()
            })
            .collect();
        let mut heights = vec![1i64; n];
        let dot = |row: &[(usize, i64)], h: &[i64]| row.iter().map(|&(c, v)| v * h[c]).sum::<i64>();
        let mut iterations = 0;
        loop {
            let mut changed = false;
            for row in &rows {
                if dot(row, &heights) < 1 {
                    for &(c, v) in row {
                        heights[c] += v;
                    }
                    changed = true;
                }
            }
            for h in heights.iter_mut().filter(|h| **h < 1) {
                *h += 1;
                changed = true;
            }
            iterations += 1;
            if !changed {
                break;
            }
            if iterations >= HEIGHT_ITERATIONS {
                return Err(Error::HeightsUnsolved { iterations });
            }
        }
        let mut areas = vec![0i64; diagram.faces.len()];
        for (f, row) in diagram.bounded_faces().zip(&rows) {
            areas[f] = dot(row, &heights);
        }
        Ok(Filtration { heights, areas })
    }
}

pub fn default_cap(diagram: &ClosureDiagram) -> usize {
    4 * diagram.crossings.len()
}

/// Walk-based disk search over one diagram; reusable across queries.
pub struct DiskEngine<'a> {
    diagram: &'a ClosureDiagram,
    filtration: Filtration,
    cap: usize,
}

struct Walk<'q> {
    d: usize,
    a: Option<usize>,
    arrive_arm: u8,
    budget: i64,
    cap: usize,
    query: &'q DiskQuery,
    seen: Vec<u32>,
    seen_area: i64,
    neg_height: i64,
    used_a: bool,
    turn: i32,
    events: Vec<BoundaryEvent>,
    path: Vec<(usize, bool)>,
    found: Vec<Disk>,
}

impl<'a> DiskEngine<'a> {
    pub fn new(diagram: &'a ClosureDiagram) -> Result<Self> {
        let filtration = Filtration::new(diagram)?;
        Ok(DiskEngine { diagram, filtration, cap: default_cap(diagram) })
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn filtration(&self) -> &Filtration {
        &self.filtration
    }

    pub fn enumerate(&self, query: &DiskQuery) -> Result<Vec<Disk>> {
        let dg = self.diagram;
        let d = dg.index_of(query.at()).ok_or(Error::UnknownGenerator(query.at()))?;
        let a = match query.extra() {
            Some(g) => {
                let a = dg.index_of(g).ok_or(Error::UnknownGenerator(g))?;
                if a == d {
                    return Err(Error::ValidationFailure(format!("query {query} repeats a crossing")));
                }
                Some(a)
            }
            None => None,
        };
        let h = &self.filtration.heights;
        let mut found = Vec::new();
        for quadrant in 0..4u8 {
            if dg.crossings[d].signs[usize::from(quadrant)] != Sign::Plus {
                continue;
            }
            let leave = quadrant;
            let mut walk = Walk {
                d,
                a,
                arrive_arm: (quadrant + 1) % 4,
                budget: h[d] + a.map_or(0, |a| h[a]),
                cap: self.cap,
                query,
                seen: vec![0; dg.faces.len()],
                seen_area: 0,
                neg_height: 0,
                used_a: false,
                turn: 0,
                events: vec![BoundaryEvent::Corner {
                    crossing: dg.crossings[d].id,
                    quadrant,
                    sign: Sign::Plus,
                }],
                path: Vec::new(),
                found: Vec::new(),
            };
            self.extend(&mut walk, d, leave)?;
            found.append(&mut walk.found);
        }
        found.sort();
        Ok(found)
    }

    fn extend(&self, w: &mut Walk<'_>, c: usize, arm: u8) -> Result<()> {
        let dg = self.diagram;
        if w.events.len() >= w.cap {
            return Err(Error::CapExceeded { query: w.query.to_string(), cap: w.cap });
        }
        let step = dg.traverse(c, arm);
        let face = dg.face_left(step.edge, step.forward);
        if face == dg.outer {
            return Ok(());
        }
        let first_visit = w.seen[face] == 0;
        let area = if first_visit { self.filtration.areas[face] } else { 0 };
        if w.seen_area + area > w.budget - w.neg_height {
            return Ok(());
        }
        w.seen[face] += 1;
        w.seen_area += area;
        w.turn += step.turn;
        w.path.push((step.edge, step.forward));

        let result = self.branch(w, step.crossing, step.arm_in);

        w.path.pop();
        w.turn -= step.turn;
        w.seen_area -= area;
        w.seen[face] -= 1;
        result
    }

    fn branch(&self, w: &mut Walk<'_>, c: usize, arm_in: u8) -> Result<()> {
        let dg = self.diagram;
        let id = dg.crossings[c].id;
        if c == w.d
            && arm_in == w.arrive_arm
            && (w.a.is_none() || w.used_a)
            && w.turn + CORNER_TURN == FULL_TURN
            && self.immersed(&w.path)
        {
            w.found.push(Disk { boundary: w.events.clone() });
        }

        w.events.push(BoundaryEvent::Pass { crossing: id, arm_in });
        let passed = self.extend(w, c, opposite(arm_in));
        w.events.pop();
        passed?;

        let out = cw_next(arm_in);
        let quadrant = corner_quadrant(arm_in);
        let sign = dg.crossings[c].signs[usize::from(quadrant)];
        match sign {
            Sign::Minus => {
                let h = self.filtration.heights[c];
                w.neg_height += h;
                w.turn += CORNER_TURN;
                w.events.push(BoundaryEvent::Corner { crossing: id, quadrant, sign });
                let r = self.extend(w, c, out);
                w.events.pop();
                w.turn -= CORNER_TURN;
                w.neg_height -= h;
                r
            }
            Sign::Plus if Some(c) == w.a && !w.used_a => {
                w.used_a = true;
                w.turn += CORNER_TURN;
                w.events.push(BoundaryEvent::Corner { crossing: id, quadrant, sign });
                let r = self.extend(w, c, out);
                w.events.pop();
                w.turn -= CORNER_TURN;
                w.used_a = false;
                r
            }
            Sign::Plus => Ok(()),
        }
    }

    /// Winding numbers of a closed walk: nonnegative, zero on the unbounded face.
    fn immersed(&self, path: &[(usize, bool)]) -> bool {
        winding_numbers(self.diagram, path).is_some_and(|n| n.iter().all(|&v| v >= 0))
    }
}

/// Winding number of a closed edge path around every face, or `None` if the path
/// does not close up consistently.
pub fn winding_numbers(diagram: &ClosureDiagram, path: &[(usize, bool)]) -> Option<Vec<i64>> {
    let mut flow = vec![0i64; diagram.edges.len()];
    for &(e, forward) in path {
        flow[e] += if forward { 1 } else { -1 };
    }
    let mut adjacency = vec![Vec::new(); diagram.faces.len()];
    for (e, &f) in flow.iter().enumerate() {
        let left = diagram.face_left(e, true);
        let right = diagram.face_left(e, false);
        adjacency[right].push((left, f));
        adjacency[left].push((right, -f));
    }
    let mut winding = vec![None; diagram.faces.len()];
    winding[diagram.outer] = Some(0i64);
    let mut stack = vec![diagram.outer];
    while let Some(f) = stack.pop() {
        let base = winding[f]?;
        for &(g, delta) in &adjacency[f] {
            match winding[g] {
                None => {
                    winding[g] = Some(base + delta);
                    stack.push(g);
                }
                Some(v) if v != base + delta => return None,
                Some(_) => {}
            }
        }
    }
    winding.into_iter().collect()
}

pub fn enumerate_disks(diagram: &ClosureDiagram, query: &DiskQuery) -> Result<Vec<Disk>> {
    DiskEngine::new(diagram)?.enumerate(query)
}
