//! Lagrangian diagram of the Legendrian closure of a positive braid.
//!
//! Layout: braid levels 1..p run left to right with level 1 on top. Each strand
//! leaving the braid at level e climbs a right vertical, crossing the return
//! tracks of levels p..e+1 (chords s[i,e]), kinks through s[e,e], runs west on
//! track e over the verticals to its right (s[e,j]) and left (c[e,j]), then drops
//! down the left vertical e across the tracks below (c[i,e]) into braid level e.
//!
//! Arms are indexed counter-clockwise. Braid crossings have arms NE, NW, SW, SE;
//! closure crossings have arms E, N, W, S. Quadrant k lies between arm k and arm
//! k+1. Directions are measured in units of 45 degrees.

use std::collections::HashMap;

use serde::Serialize;

use crate::braid::{BraidSpec, GeneratorId, Kind};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn symbol(self) -> &'static str {
        match self {
            Sign::Plus => "+",
            Sign::Minus => "-",
        }
    }
}

impl Serialize for Sign {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.symbol())
    }
}

const BRAID_ARMS: [&str; 4] = ["NE", "NW", "SW", "SE"];
const CLOSURE_ARMS: [&str; 4] = ["E", "N", "W", "S"];

const NE: u8 = 0;
const NW: u8 = 1;
const SW: u8 = 2;
const SE: u8 = 3;
const E: u8 = 0;
const N: u8 = 1;
const W: u8 = 2;
const S: u8 = 3;

#[derive(Debug, Clone)]
pub struct Crossing {
    pub id: GeneratorId,
    pub signs: [Sign; 4],
}

impl Crossing {
    fn new(id: GeneratorId) -> Self {
        use Sign::{Minus, Plus};
        let signs = match id.kind {
            Kind::B => [Minus, Plus, Minus, Plus],
            Kind::C | Kind::S => [Plus, Minus, Plus, Minus],
        };
        Crossing { id, signs }
    }

    pub fn direction(&self, arm: u8) -> i32 {
        let base = if self.id.kind == Kind::B { 1 } else { 0 };
        base + 2 * i32::from(arm)
    }

    pub fn arm_name(&self, arm: u8) -> &'static str {
        match self.id.kind {
            Kind::B => BRAID_ARMS[usize::from(arm)],
            Kind::C | Kind::S => CLOSURE_ARMS[usize::from(arm)],
        }
    }
}

pub fn cw_next(arm: u8) -> u8 {
    (arm + 3) % 4
}

pub fn opposite(arm: u8) -> u8 {
    (arm + 2) % 4
}

/// Quadrant covered by a convex corner entered on `arm_in`.
pub fn corner_quadrant(arm_in: u8) -> u8 {
    cw_next(arm_in)
}

/// Turning of a convex corner, always a quarter turn to the left.
pub const CORNER_TURN: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Port {
    pub crossing: usize,
    pub arm: u8,
}

/// Arc between two consecutive crossings of a strand; `turn` is the total
/// turning along it in the strand direction.
#[derive(Debug, Clone, Copy)]
pub struct Edge {
    pub tail: Port,
    pub head: Port,
    pub turn: i32,
}

#[derive(Debug, Clone)]
pub struct Face {
    /// `(crossing, quadrant)` in boundary order.
    pub corners: Vec<(usize, u8)>,
    pub turning: i32,
}

/// One step of a walk: leave a crossing along an arm and arrive at the next one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Step {
    pub crossing: usize,
    pub arm_in: u8,
    pub turn: i32,
    pub edge: usize,
    pub forward: bool,
}

#[derive(Debug, Clone)]
pub struct ClosureDiagram {
    pub spec: BraidSpec,
    pub crossings: Vec<Crossing>,
    pub edges: Vec<Edge>,
    pub faces: Vec<Face>,
    pub outer: usize,
    pub components: usize,
    index: HashMap<GeneratorId, usize>,
    port_edge: Vec<[(usize, bool); 4]>,
    face_left: Vec<[usize; 2]>,
    quadrant_face: Vec<[usize; 4]>,
}

struct RouteEvent {
    crossing: GeneratorId,
    arm_in: u8,
    arm_out: u8,
    turn_before: i32,
}

fn route(spec: &BraidSpec) -> Vec<Vec<RouteEvent>> {
    let p = spec.p;
    let letters = spec.retained();
    let mut seen = vec![false; p as usize + 1];
    let mut strands = Vec::new();
    for start in 1..=p {
        if seen[start as usize] {
            continue;
        }
        let mut events = Vec::new();
        let mut push = |crossing, arm_in, arm_out, turn_before| {
            events.push(RouteEvent { crossing, arm_in, arm_out, turn_before })
        };
        let mut level = start;
        let mut pending = 0;
        loop {
            seen[level as usize] = true;
            for &(i, j) in &letters {
                if level == j {
                    push(GeneratorId::b(i, j), NW, SE, pending - 1);
                    pending = 1;
                    level = j + 1;
                } else if level == j + 1 {
                    push(GeneratorId::b(i, j), SW, NE, pending + 1);
                    pending = -1;
                    level = j;
                }
            }
            let e = level;
            pending += 2;
            for i in (e + 1..=p).rev() {
                push(GeneratorId::s(i, e), S, N, pending);
                pending = 0;
            }
            push(GeneratorId::s(e, e), S, N, pending);
            push(GeneratorId::s(e, e), E, W, -6);
            for j in (1..e).rev() {
                push(GeneratorId::s(e, j), E, W, 0);
            }
            for j in 1..e {
                push(GeneratorId::c(e, j), E, W, 0);
            }
            pending = 2;
            for i in e + 1..=p {
                push(GeneratorId::c(i, e), N, S, pending);
                pending = 0;
            }
            pending += 2;
            if level == start {
                break;
            }
        }
        events[0].turn_before += pending;
        strands.push(events);
    }
    strands
}

impl ClosureDiagram {
    pub fn build(spec: &BraidSpec) -> Self {
        let crossings: Vec<Crossing> = spec.generators().into_iter().map(Crossing::new).collect();
        let index: HashMap<GeneratorId, usize> =
            crossings.iter().enumerate().map(|(k, c)| (c.id, k)).collect();
        let strands = route(spec);
        let mut edges = Vec::new();
        let mut port_edge = vec![[(usize::MAX, false); 4]; crossings.len()];
        for strand in &strands {
            for (k, from) in strand.iter().enumerate() {
                let to = &strand[(k + 1) % strand.len()];
                let tail = Port { crossing: index[&from.crossing], arm: from.arm_out };
                let head = Port { crossing: index[&to.crossing], arm: to.arm_in };
                let id = edges.len();
                edges.push(Edge { tail, head, turn: to.turn_before });
                port_edge[tail.crossing][usize::from(tail.arm)] = (id, true);
                port_edge[head.crossing][usize::from(head.arm)] = (id, false);
            }
        }
        debug_assert!(port_edge.iter().flatten().all(|&(e, _)| e != usize::MAX));
        let mut diagram = ClosureDiagram {
            spec: spec.clone(),
            crossings,
            edges,
            faces: Vec::new(),
            outer: 0,
            components: strands.len(),
            index,
            port_edge,
            face_left: Vec::new(),
            quadrant_face: Vec::new(),
        };
        diagram.trace_faces();
        diagram
    }

    fn trace_faces(&mut self) {
        let unset = usize::MAX;
        self.face_left = vec![[unset; 2]; self.edges.len()];
        self.quadrant_face = vec![[unset; 4]; self.crossings.len()];
        for edge in 0..self.edges.len() {
            for side in 0..2 {
                if self.face_left[edge][side] != unset {
                    continue;
                }
                let face = self.faces.len();
                let start = if side == 0 { self.edges[edge].tail } else { self.edges[edge].head };
                let (mut c, mut arm) = (start.crossing, start.arm);
                let mut corners = Vec::new();
                let mut turning = 0;
                loop {
                    let step = self.traverse(c, arm);
                    self.face_left[step.edge][usize::from(!step.forward)] = face;
                    let out = cw_next(step.arm_in);
                    turning += step.turn + CORNER_TURN;
                    corners.push((step.crossing, out));
                    self.quadrant_face[step.crossing][usize::from(out)] = face;
                    c = step.crossing;
                    arm = out;
                    if (c, arm) == (start.crossing, start.arm) {
                        break;
                    }
                }
                self.faces.push(Face { corners, turning });
            }
        }
        let outer: Vec<usize> = (0..self.faces.len()).filter(|&f| self.faces[f].turning == -8).collect();
        assert_eq!(outer.len(), 1, "closure diagram must have exactly one unbounded face");
        self.outer = outer[0];
    }

    pub fn index_of(&self, id: GeneratorId) -> Option<usize> {
        self.index.get(&id).copied()
    }

    pub fn generators(&self) -> impl Iterator<Item = GeneratorId> + '_ {
        self.crossings.iter().map(|c| c.id)
    }

    /// Leaves crossing `c` along `arm` and follows the arc to the next crossing.
    pub fn traverse(&self, c: usize, arm: u8) -> Step {
        let (edge, forward) = self.port_edge[c][usize::from(arm)];
        let e = self.edges[edge];
        if forward {
            Step { crossing: e.head.crossing, arm_in: e.head.arm, turn: e.turn, edge, forward }
        } else {
            Step { crossing: e.tail.crossing, arm_in: e.tail.arm, turn: -e.turn, edge, forward }
        }
    }

    /// Face on the left when traversing `edge` forwards (or backwards).
    pub fn face_left(&self, edge: usize, forward: bool) -> usize {
        self.face_left[edge][usize::from(!forward)]
    }

    pub fn quadrant_face(&self, crossing: usize, quadrant: u8) -> usize {
        self.quadrant_face[crossing][usize::from(quadrant)]
    }

    pub fn bounded_faces(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.faces.len()).filter(move |&f| f != self.outer)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.crossings.len() as i64 - self.edges.len() as i64 + self.faces.len() as i64
    }

    pub fn census(&self) -> Census {
        let mut census = Census::default();
        for c in &self.crossings {
            match c.id.kind {
                Kind::B => census.b += 1,
                Kind::C => census.c += 1,
                Kind::S => census.s += 1,
            }
        }
        census
    }

    pub fn to_document(&self) -> DiagramDocument {
        let crossings = self
            .crossings
            .iter()
            .map(|c| CrossingDocument {
                id: c.id,
                degree: c.id.degree(),
                arms: (0..4).map(|a| c.arm_name(a)).collect(),
                quadrants: c.signs,
            })
            .collect();
        let port = |p: Port| PortDocument {
            crossing: self.crossings[p.crossing].id,
            arm: self.crossings[p.crossing].arm_name(p.arm),
        };
        let arcs = self.edges.iter().map(|e| ArcDocument { from: port(e.tail), to: port(e.head) }).collect();
        let faces = self
            .faces
            .iter()
            .enumerate()
            .map(|(f, face)| FaceDocument {
                unbounded: f == self.outer,
                corners: face.corners.iter().map(|&(c, q)| (self.crossings[c].id, q)).collect(),
            })
            .collect();
        DiagramDocument {
            p: self.spec.p,
            q: self.spec.q,
            deleted: self.spec.deleted.iter().copied().collect(),
            components: self.components,
            crossings,
            arcs,
            faces,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Census {
    pub b: usize,
    pub c: usize,
    pub s: usize,
}

#[derive(Debug, Serialize)]
pub struct DiagramDocument {
    pub p: u32,
    pub q: u32,
    pub deleted: Vec<(u32, u32)>,
    pub components: usize,
    pub crossings: Vec<CrossingDocument>,
    pub arcs: Vec<ArcDocument>,
    pub faces: Vec<FaceDocument>,
}

#[derive(Debug, Serialize)]
pub struct CrossingDocument {
    pub id: GeneratorId,
    pub degree: u32,
    pub arms: Vec<&'static str>,
    pub quadrants: [Sign; 4],
}

#[derive(Debug, Serialize)]
pub struct PortDocument {
    pub crossing: GeneratorId,
    pub arm: &'static str,
}

#[derive(Debug, Serialize)]
pub struct ArcDocument {
    pub from: PortDocument,
    pub to: PortDocument,
}

#[derive(Debug, Serialize)]
pub struct FaceDocument {
    pub unbounded: bool,
    pub corners: Vec<(GeneratorId, u8)>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::braid::torus_braid;

    #[test]
    fn census_and_euler_relation() {
        for p in 1..=4 {
            for q in 0..=4 {
                let spec = torus_braid(p, q).unwrap();
                let d = ClosureDiagram::build(&spec);
                let (p, q) = (p as usize, q as usize);
                assert_eq!(d.census(), Census { b: q * (p - 1), c: p * (p - 1) / 2, s: p * (p + 1) / 2 });
                assert_eq!(d.euler_characteristic(), 2);
                assert_eq!(d.edges.len(), 2 * d.crossings.len());
                for f in d.bounded_faces() {
                    assert_eq!(d.faces[f].turning, 8);
                }
            }
        }
    }

    #[test]
    fn unknot_is_a_figure_eight() {
        let d = ClosureDiagram::build(&torus_braid(1, 0).unwrap());
        assert_eq!(d.crossings.len(), 1);
        assert_eq!(d.crossings[0].id, GeneratorId::s(1, 1));
        assert_eq!(d.faces.len(), 3);
        assert_eq!(d.components, 1);
    }

    #[test]
    fn positive_quadrants_are_opposite() {
        let d = ClosureDiagram::build(&torus_braid(3, 2).unwrap());
        for c in &d.crossings {
            let plus: Vec<usize> = (0..4).filter(|&k| c.signs[k] == Sign::Plus).collect();
            assert_eq!(plus.len(), 2);
            assert_eq!(plus[1] - plus[0], 2);
        }
    }

    #[test]
    fn component_counts() {
        assert_eq!(ClosureDiagram::build(&torus_braid(2, 3).unwrap()).components, 1);
        assert_eq!(ClosureDiagram::build(&torus_braid(3, 0).unwrap()).components, 3);
        let hopf_plus_unknot = BraidSpec::new(3, 3, [(1, 1), (2, 1), (3, 1)]).unwrap();
        assert_eq!(ClosureDiagram::build(&hopf_plus_unknot).components, 2);
    }
}
