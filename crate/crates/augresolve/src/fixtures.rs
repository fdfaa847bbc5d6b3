//! Published worked examples and the checks that compare them with computed values.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::augmentation::{enumerate_augmentations, AugPair, Augmentation};
use crate::braid::{torus_braid, BraidSpec, GeneratorId};
use crate::category::{bilinearized_matrix, cohomology, decorated_part};
use crate::closure::ClosureDiagram;
use crate::dga::{differential_from_disks, Poly};
use crate::error::Result;
use crate::resolution::{build_psi, verify_cor33, ResolutionData};

use GeneratorId as G;

pub const FIXTURE_IDS: [&str; 6] = ["torus43-psi", "braid3-psi", "braid3-bilinear", "unknot", "corollary", "braid3-dims"];

/// The stated absolute dimensions for the plus side under distinct pairs.
pub const STATED_PLUS_DIMS: (usize, usize) = (2, 2);

fn w(letters: &[G]) -> Vec<G> {
    letters.to_vec()
}

/// `torus(4,3)` resolved at `b[1,1]`; nonzero images only.
pub fn torus43_expected() -> BTreeMap<G, Poly> {
    BTreeMap::from([
        (G::b(2, 2), Poly::generator(G::b(1, 2))),
        (G::b(2, 3), Poly::one()),
        (G::c(4, 1), Poly::generator(G::c(4, 2))),
        (G::c(3, 1), Poly::generator(G::c(3, 2))),
        (G::c(2, 1), Poly::one()),
    ])
}

/// Three strands with `b[1,1]` and `b[3,1]` deleted, so the letters are
/// `b[1,2] b[2,1] b[2,2] b[3,2]`.
pub fn braid3_spec() -> BraidSpec {
    BraidSpec::new(3, 3, [(1, 1), (3, 1)]).expect("valid grid")
}

pub fn braid3_resolved() -> G {
    G::b(2, 1)
}

/// All thirteen images; the last braid letter is printed as `b[3,1]` in the
/// source table and read here as `b[3,2]`.
pub fn braid3_expected() -> BTreeMap<G, Poly> {
    let (b, c, s) = (G::b, G::c, G::s);
    BTreeMap::from([
        (b(2, 1), Poly::zero()),
        (b(1, 2), Poly::zero()),
        (b(2, 2), Poly::zero()),
        (b(3, 2), Poly::zero()),
        (c(2, 1), Poly::generator(b(1, 2))),
        (c(3, 1), Poly::from_words([w(&[]), w(&[c(3, 2), b(1, 2)])])),
        (c(3, 2), Poly::zero()),
        (s(3, 1), Poly::zero()),
        (s(3, 2), Poly::from_words([w(&[s(3, 1)]), w(&[s(3, 1), b(2, 2), b(3, 2)])])),
        (s(3, 3), Poly::from_word(w(&[s(3, 1), b(2, 2)]))),
        (s(2, 1), Poly::zero()),
        (s(2, 2), Poly::from_words([w(&[s(2, 1)]), w(&[s(2, 1), b(2, 2), b(3, 2)])])),
        (s(1, 1), Poly::zero()),
    ])
}

/// One factor of a displayed bilinearized term.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Factor {
    /// `ε_k(g)` for `k` in `{1, 2}`.
    Eps(u8, G),
    Letter(G),
}

#[derive(Debug, Clone)]
pub struct BilinearFormula {
    pub generator: G,
    pub terms: Vec<Vec<Factor>>,
}

impl BilinearFormula {
    pub fn variables(&self) -> BTreeSet<(u8, G)> {
        self.terms
            .iter()
            .flatten()
            .filter_map(|f| match *f {
                Factor::Eps(k, g) => Some((k, g)),
                Factor::Letter(_) => None,
            })
            .collect()
    }

    /// Linear letters surviving under the given values.
    pub fn evaluate(&self, values: &BTreeMap<(u8, G), bool>) -> BTreeSet<G> {
        let mut out = BTreeSet::new();
        for term in &self.terms {
            let mut letter = None;
            let mut live = true;
            for f in term {
                match *f {
                    Factor::Eps(k, g) => live &= values[&(k, g)],
                    Factor::Letter(g) => letter = Some(g),
                }
            }
            if let (true, Some(g)) = (live, letter) {
                if !out.remove(&g) {
                    out.insert(g);
                }
            }
        }
        out
    }
}

/// The five displayed bilinearized images, with `b[3,1]` read as `b[3,2]`.
pub fn braid3_bilinear() -> Vec<BilinearFormula> {
    use Factor::{Eps, Letter};
    let (b, c, s) = (G::b, G::c, G::s);
    let f = |generator, terms| BilinearFormula { generator, terms };
    vec![
        f(c(2, 1), vec![vec![Letter(b(1, 2))]]),
        f(c(3, 1), vec![vec![Eps(1, c(3, 2)), Letter(b(1, 2))], vec![Letter(c(3, 2)), Eps(2, b(1, 2))]]),
        f(
            s(3, 2),
            vec![
                vec![Letter(s(3, 1))],
                vec![Eps(1, s(3, 1)), Eps(1, b(2, 2)), Letter(b(3, 2))],
                vec![Eps(1, s(3, 1)), Letter(b(2, 2)), Eps(2, b(3, 2))],
                vec![Letter(s(3, 1)), Eps(2, b(2, 2)), Eps(2, b(3, 2))],
            ],
        ),
        f(s(3, 3), vec![vec![Eps(1, s(3, 1)), Letter(b(2, 2))], vec![Letter(s(3, 1)), Eps(2, b(2, 2))]]),
        f(
            s(2, 2),
            vec![
                vec![Eps(1, s(2, 1)), Eps(1, b(2, 2)), Letter(b(3, 2))],
                vec![Eps(1, s(2, 1)), Letter(b(2, 2)), Eps(2, b(3, 2))],
                vec![Letter(s(2, 1)), Eps(2, b(2, 2)), Eps(2, b(3, 2))],
            ],
        ),
    ]
}

#[derive(Debug, Clone, Serialize)]
pub struct FixtureOutcome {
    pub id: String,
    pub checks: usize,
    pub failures: Vec<String>,
    pub notes: Vec<String>,
}

impl FixtureOutcome {
    fn new(id: &str) -> Self {
        FixtureOutcome { id: id.to_string(), checks: 0, failures: Vec::new(), notes: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn check(&mut self, ok: bool, failure: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(failure());
        }
    }
}

pub fn torus43_resolution() -> Result<ResolutionData> {
    build_psi(&ClosureDiagram::build(&torus_braid(4, 3)?), G::b(1, 1))
}

pub fn braid3_resolution() -> Result<ResolutionData> {
    build_psi(&ClosureDiagram::build(&braid3_spec()), braid3_resolved())
}

fn compare_tables(out: &mut FixtureOutcome, res: &ResolutionData, expected: &BTreeMap<G, Poly>, listed_only: bool) {
    let gens: Vec<G> = if listed_only {
        expected.keys().copied().collect()
    } else {
        res.plus.generators().iter().copied().filter(|&g| g != res.resolved).collect()
    };
    let zero = Poly::zero();
    for g in gens {
        let want = expected.get(&g).unwrap_or(&zero);
        let got = res.psi1(g);
        out.check(got == want, || format!("{g}: computed {got}, expected {want}"));
    }
}

pub fn run_torus43() -> Result<FixtureOutcome> {
    let mut out = FixtureOutcome::new("torus43-psi");
    let res = torus43_resolution()?;
    compare_tables(&mut out, &res, &torus43_expected(), false);
    Ok(out)
}

pub fn run_braid3() -> Result<FixtureOutcome> {
    let mut out = FixtureOutcome::new("braid3-psi");
    let res = braid3_resolution()?;
    compare_tables(&mut out, &res, &braid3_expected(), true);
    let image = res.psi.image(res.resolved);
    out.check(*image == Poly::one(), || format!("{}: image {image}, expected 1", res.resolved));
    out.notes.push("the table's last braid letter b[3,1] is read as b[3,2]".into());
    Ok(out)
}

pub fn run_bilinear() -> Result<FixtureOutcome> {
    let mut out = FixtureOutcome::new("braid3-bilinear");
    let res = braid3_resolution()?;
    for formula in braid3_bilinear() {
        let vars: Vec<(u8, G)> = formula.variables().into_iter().collect();
        let mut first = None;
        for bits in 0u32..1 << vars.len() {
            let values: BTreeMap<(u8, G), bool> =
                vars.iter().enumerate().map(|(k, &v)| (v, bits >> k & 1 == 1)).collect();
            let slot = |k: u8| {
                Augmentation::from_raw(values.iter().filter(|((s, _), _)| *s == k).map(|((_, g), &v)| (*g, v)))
            };
            let (e1, e2) = (slot(1), slot(2));
            let computed: BTreeSet<G> =
                decorated_part(res.psi1(formula.generator), &[&e1, &e2]).into_keys().map(|w| w[0]).collect();
            let displayed = formula.evaluate(&values);
            if computed != displayed && first.is_none() {
                let at: Vec<String> = values.iter().map(|((k, g), v)| format!("ε{k}({g})={}", u8::from(*v))).collect();
                let show = |xs: &BTreeSet<G>| xs.iter().map(G::to_string).collect::<Vec<_>>().join(" + ");
                first = Some(format!(
                    "{}: at {} computed [{}], displayed [{}]",
                    formula.generator,
                    at.join(" "),
                    show(&computed),
                    show(&displayed)
                ));
            }
        }
        out.check(first.is_none(), || first.unwrap_or_default());
    }
    Ok(out)
}

pub fn run_unknot() -> Result<FixtureOutcome> {
    let mut out = FixtureOutcome::new("unknot");
    let dga = differential_from_disks(&ClosureDiagram::build(&torus_braid(1, 0)?))?;
    out.check(dga.generators() == [G::s(1, 1)], || format!("generators {:?}", dga.generators()));
    out.check(dga.differential().values().all(Poly::is_zero), || "nonzero differential".into());
    let augs = enumerate_augmentations(&dga)?;
    out.check(augs.len() == 1, || format!("{} augmentations", augs.len()));
    if let Some(e) = augs.first() {
        let h = cohomology(&bilinearized_matrix(&dga, &AugPair::new(e.clone(), e.clone())));
        out.check((h.dim0, h.dim1) == (0, 1), || format!("cohomology dims ({}, {})", h.dim0, h.dim1));
    }
    Ok(out)
}

/// The dimension relation across the resolution for every pair on the
/// three-strand example.
pub fn run_corollary() -> Result<FixtureOutcome> {
    let mut out = FixtureOutcome::new("corollary");
    let res = braid3_resolution()?;
    let augs = enumerate_augmentations(&res.minus)?;
    for e1 in &augs {
        for e2 in &augs {
            let cor = verify_cor33(&res, &AugPair::new(e1.clone(), e2.clone()))?;
            out.check(cor.passed(), || {
                format!("minus dims {:?}, plus dims {:?}", cor.minus_dims, cor.plus_dims)
            });
        }
    }
    Ok(out)
}

/// Computed plus-side dimensions under distinct pushed-forward pairs, next to
/// the stated ones.
pub fn run_dims() -> Result<FixtureOutcome> {
    let mut out = FixtureOutcome::new("braid3-dims");
    let res = braid3_resolution()?;
    let augs = enumerate_augmentations(&res.minus)?;
    let mut seen = BTreeMap::new();
    for (x, e1) in augs.iter().enumerate() {
        for (y, e2) in augs.iter().enumerate() {
            if x == y {
                continue;
            }
            let cor = verify_cor33(&res, &AugPair::new(e1.clone(), e2.clone()))?;
            *seen.entry((cor.minus_dims, cor.plus_dims)).or_insert(0usize) += 1;
            out.check(cor.relation_holds(), || {
                format!("pair ({x},{y}): minus {:?}, plus {:?}", cor.minus_dims, cor.plus_dims)
            });
        }
    }
    for ((minus, plus), n) in seen {
        out.notes.push(format!(
            "{n} distinct pairs: computed plus dims {plus:?} (minus {minus:?}), stated {STATED_PLUS_DIMS:?}"
        ));
    }
    Ok(out)
}

pub fn run(id: &str) -> Result<FixtureOutcome> {
    match id {
        "torus43-psi" => run_torus43(),
        "braid3-psi" => run_braid3(),
        "braid3-bilinear" => run_bilinear(),
        "unknot" => run_unknot(),
        "corollary" => run_corollary(),
        "braid3-dims" => run_dims(),
        other => Err(crate::error::Error::Parse(format!("unknown fixture {other:?}; known: {}", FIXTURE_IDS.join(", ")))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn displayed_formula_evaluation() {
        let f = &braid3_bilinear()[1];
        assert_eq!(f.variables().len(), 2);
        let on = BTreeMap::from([((1, G::c(3, 2)), true), ((2, G::b(1, 2)), true)]);
        assert_eq!(f.evaluate(&on), BTreeSet::from([G::b(1, 2), G::c(3, 2)]));
    }

    #[test]
    fn three_strand_table_and_unknot() {
        assert!(run_braid3().unwrap().passed());
        assert!(run_unknot().unwrap().passed());
    }

    #[test]
    fn unknown_fixture_is_a_parse_error() {
        assert!(matches!(run("nope"), Err(crate::error::Error::Parse(_))));
    }
}
