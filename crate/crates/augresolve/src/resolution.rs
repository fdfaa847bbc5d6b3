//! The DGA map induced by 0-resolving a braid crossing, its bilinearized dual,
//! and the structural checks built on them.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use crate::augmentation::{pushforward, AugPair, Augmentation};
use crate::braid::{resolve_crossing, GeneratorId, Kind};
use crate::category::{bilinearized_matrix, cohomology, decorated_part, mu_k, toggle_all, Cochain};
use crate::closure::ClosureDiagram;
use crate::dga::{differential_with, Dga, DgaMap, Poly};
use crate::disk::DiskQuery;
use crate::error::{Error, Result};
use crate::gf2::Gf2Matrix;
use crate::search::{DiskCounter, Engine};

/// `Ψ = ψ₀ + ψ₁ : A(Λ₊) → A(Λ₋)` for the resolved crossing `a`.
#[derive(Debug, Clone)]
pub struct ResolutionData {
    pub plus: Dga,
    pub minus: Dga,
    pub resolved: GeneratorId,
    pub psi1: BTreeMap<GeneratorId, Poly>,
    pub psi: DgaMap,
}

impl ResolutionData {
    /// Assembles `Ψ` from a given `ψ₁` without checking it.
    pub fn from_parts(plus: Dga, minus: Dga, resolved: GeneratorId, psi1: BTreeMap<GeneratorId, Poly>) -> Self {
        let action = plus
            .generators()
            .iter()
            .map(|&g| {
                let image = if g == resolved {
                    Poly::one()
                } else {
                    Poly::generator(g).add(psi1.get(&g).unwrap_or(&Poly::zero()))
                };
                (g, image)
            })
            .collect();
        let psi = DgaMap { source: plus.clone(), target: minus.clone(), action };
        ResolutionData { plus, minus, resolved, psi1, psi }
    }

    pub fn psi1(&self, g: GeneratorId) -> &Poly {
        static ZERO: std::sync::OnceLock<Poly> = std::sync::OnceLock::new();
        self.psi1.get(&g).unwrap_or_else(|| ZERO.get_or_init(Poly::zero))
    }

    /// Pushes an augmentation of `Λ₋` forward to `Λ₊`.
    pub fn push(&self, eps: &Augmentation) -> Result<Augmentation> {
        pushforward(eps, &self.psi)
    }

    /// Every generator of `Λ₋` is hit by the `ψ₀` part.
    pub fn is_surjective(&self) -> bool {
        self.minus.generators().iter().all(|g| self.psi.action.get(g).is_some_and(|p| p.contains(&[*g])))
    }
}

pub fn build_psi(diagram_plus: &ClosureDiagram, resolved: GeneratorId) -> Result<ResolutionData> {
    build_psi_with(diagram_plus, resolved, Engine::Walk, None)
}

pub fn build_psi_with(
    diagram_plus: &ClosureDiagram,
    resolved: GeneratorId,
    engine: Engine,
    cap: Option<usize>,
) -> Result<ResolutionData> {
    let res = compute_psi(diagram_plus, resolved, engine, cap)?;
    let mut bad = res.psi.verify_chain_map();
    bad.extend(res.psi.degree_violations());
    if !bad.is_empty() {
        bad.sort();
        bad.dedup();
        return Err(Error::ChainMapFailure(bad));
    }
    Ok(res)
}

/// Counts disks for `Ψ` without verifying the chain-map identity.
pub fn compute_psi(
    diagram_plus: &ClosureDiagram,
    resolved: GeneratorId,
    engine: Engine,
    cap: Option<usize>,
) -> Result<ResolutionData> {
    if resolved.kind != Kind::B {
        return Err(Error::NotResolvable(resolved));
    }
    if diagram_plus.index_of(resolved).is_none() {
        return Err(Error::UnknownGenerator(resolved));
    }
    let minus_spec = resolve_crossing(&diagram_plus.spec, (resolved.i, resolved.j))?;
    let diagram_minus = ClosureDiagram::build(&minus_spec);
    let counter_plus = DiskCounter::new(diagram_plus, engine, cap)?;
    let counter_minus = DiskCounter::new(&diagram_minus, engine, cap)?;
    let plus = differential_with(diagram_plus, &counter_plus)?;
    let minus = differential_with(&diagram_minus, &counter_minus)?;
    let gens: Vec<GeneratorId> = plus.generators().iter().copied().filter(|&g| g != resolved).collect();
    let psi1 = gens
        .par_iter()
        .map(|&g| {
            let disks = counter_plus.disks(&DiskQuery::TwoPositive { at: g, and: resolved })?;
            let words = disks.iter().map(|d| d.word().into_iter().filter(|&l| l != resolved).collect());
            Ok((g, Poly::from_words(words)))
        })
        .collect::<Result<BTreeMap<_, _>>>()?;
    Ok(ResolutionData::from_parts(plus, minus, resolved, psi1))
}

/// A letter of some `ψ₁(g)` outside the index window allowed for `g`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WindowViolation {
    pub generator: GeneratorId,
    pub letter: GeneratorId,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Lemma31Report {
    pub violations: Vec<WindowViolation>,
    /// Non-braid letters in images of `s` generators, allowed but recorded.
    pub logged: Vec<WindowViolation>,
}

impl Lemma31Report {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

fn lex(g: GeneratorId) -> (u32, u32) {
    (g.i, g.j)
}

pub fn verify_lemma31(res: &ResolutionData) -> Lemma31Report {
    let a = lex(res.resolved);
    let mut report = Lemma31Report::default();
    for (&g, image) in &res.psi1 {
        for letter in image.letters() {
            let is_b = letter.kind == Kind::B;
            let ok = match g.kind {
                Kind::B if lex(g) < a => is_b && lex(g) < lex(letter) && lex(letter) < a,
                Kind::B => is_b && a < lex(letter) && lex(letter) < lex(g),
                Kind::C => {
                    (is_b && lex(letter) < a) || (letter.kind == Kind::C && letter.i == g.i && letter.j > g.j)
                }
                Kind::S => {
                    if !is_b {
                        report.logged.push(WindowViolation { generator: g, letter });
                        continue;
                    }
                    lex(letter) > a
                }
            };
            if !ok {
                report.violations.push(WindowViolation { generator: g, letter });
            }
        }
    }
    report
}

/// Direction in which `c` and `s` generators are ordered by their second index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum IndexDirection {
    /// `c[i,j] < c[m,n]` if `n < j` (ties: `m < i`); `s[i,j] < s[m,n]` if `n < j`
    /// (ties: `i < m`).
    Descending,
    /// The same rules with the second index increasing instead.
    Ascending,
}

/// Total order on the non-resolved generators of `Λ₊`: every `c` before every
/// `b` before every `s`, braid letters lexicographic.
#[derive(Debug, Clone)]
pub struct CrossingOrder {
    pub resolved: GeneratorId,
    pub direction: IndexDirection,
    pub sequence: Vec<GeneratorId>,
}

impl CrossingOrder {
    pub fn new(generators: &[GeneratorId], resolved: GeneratorId, direction: IndexDirection) -> Self {
        let mut sequence: Vec<GeneratorId> = generators.iter().copied().filter(|&g| g != resolved).collect();
        sequence.sort_by(|&x, &y| CrossingOrder::compare(direction, x, y));
        CrossingOrder { resolved, direction, sequence }
    }

    pub fn key(direction: IndexDirection, g: GeneratorId) -> (u8, i64, i64) {
        let (i, j) = (i64::from(g.i), i64::from(g.j));
        let flip = match direction {
            IndexDirection::Descending => -1,
            IndexDirection::Ascending => 1,
        };
        match g.kind {
            Kind::C => (0, flip * j, -i),
            Kind::B => (1, i, j),
            Kind::S => (2, flip * j, i),
        }
    }

    pub fn compare(direction: IndexDirection, x: GeneratorId, y: GeneratorId) -> Ordering {
        CrossingOrder::key(direction, x).cmp(&CrossingOrder::key(direction, y))
    }

    pub fn before_resolved(&self, g: GeneratorId) -> bool {
        CrossingOrder::compare(self.direction, g, self.resolved) == Ordering::Less
    }
}

/// Coefficient of `h` in the `(ε₁, ε₂)`-decorated linear part of `p`.
fn linear_part(p: &Poly, pair: &AugPair) -> BTreeSet<GeneratorId> {
    decorated_part(p, &[&pair.first, &pair.second]).into_keys().map(|w| w[0]).collect()
}

/// Linear component of `Ψ²_ε`: rows are `Λ₊` generators, columns `Λ₋` generators,
/// both in `rows`/`cols` order.
pub fn linear_component(res: &ResolutionData, pair: &AugPair, rows: &[GeneratorId], cols: &[GeneratorId]) -> Gf2Matrix {
    let col: HashMap<GeneratorId, usize> = cols.iter().enumerate().map(|(k, &g)| (g, k)).collect();
    let mut m = Gf2Matrix::zeros(rows.len(), cols.len());
    for (r, &g) in rows.iter().enumerate() {
        for h in linear_part(res.psi.image(g), pair) {
            if let Some(&c) = col.get(&h) {
                m.toggle(r, c);
            }
        }
    }
    m
}

/// Dual of the linear component: `F₁ : C*(Λ₋) → C*(Λ₊)`.
#[derive(Debug, Clone)]
pub struct F1 {
    /// Domain basis, generators of `Λ₋`.
    pub domain: Vec<GeneratorId>,
    /// Codomain basis, generators of `Λ₊` including the resolved crossing.
    pub codomain: Vec<GeneratorId>,
    /// Rows index the codomain, columns the domain.
    pub matrix: Gf2Matrix,
}

impl F1 {
    pub fn apply(&self, x: &Cochain) -> Cochain {
        let support: Vec<usize> =
            self.domain.iter().enumerate().filter(|(_, g)| x.contains(g)).map(|(k, _)| k).collect();
        self.matrix.apply(&support).into_iter().map(|r| self.codomain[r]).collect()
    }

    /// The square matrix with the resolved row dropped.
    pub fn without_resolved(&self, resolved: GeneratorId) -> Gf2Matrix {
        let keep: Vec<usize> = (0..self.codomain.len()).filter(|&r| self.codomain[r] != resolved).collect();
        let mut m = Gf2Matrix::zeros(keep.len(), self.domain.len());
        for (new, &r) in keep.iter().enumerate() {
            for c in 0..self.domain.len() {
                m.set(new, c, self.matrix.get(r, c));
            }
        }
        m
    }
}

pub fn f1_matrix(res: &ResolutionData, pair: &AugPair) -> F1 {
    let codomain = res.plus.generators().to_vec();
    let domain = res.minus.generators().to_vec();
    // Column h holds the coefficients of h in the linear parts, so no transpose is needed.
    let matrix = linear_component(res, pair, &codomain, &domain);
    F1 { domain, codomain, matrix }
}

#[derive(Debug, Clone, Serialize)]
pub struct Theorem32Report {
    pub direction: IndexDirection,
    pub missing_diagonal: Vec<GeneratorId>,
    /// `(row, column)` entries on the wrong side of the diagonal or off-block.
    pub misplaced: Vec<(GeneratorId, GeneratorId)>,
    pub resolved_row_zero: bool,
    pub injective: bool,
    pub cochain_failures: Vec<GeneratorId>,
}

impl Theorem32Report {
    pub fn triangular(&self) -> bool {
        self.missing_diagonal.is_empty() && self.misplaced.is_empty()
    }

    pub fn passed(&self) -> bool {
        self.triangular() && self.resolved_row_zero && self.injective && self.cochain_failures.is_empty()
    }
}

pub fn verify_theorem32(res: &ResolutionData, pair: &AugPair, direction: IndexDirection) -> Result<Theorem32Report> {
    let order = CrossingOrder::new(res.plus.generators(), res.resolved, direction);
    let seq = &order.sequence;
    let m = linear_component(res, pair, seq, seq);
    let missing_diagonal = (0..seq.len()).filter(|&k| !m.get(k, k)).map(|k| seq[k]).collect();
    let mut misplaced = Vec::new();
    for (r, c) in m.support() {
        let (before_r, before_c) = (order.before_resolved(seq[r]), order.before_resolved(seq[c]));
        let upper = c >= r;
        if before_r != before_c || (before_r && !upper) || (!before_r && upper && c != r) {
            misplaced.push((seq[r], seq[c]));
        }
    }
    let resolved_row = linear_part(res.psi.image(res.resolved), pair);
    let f1 = f1_matrix(res, pair);
    let injective = f1.without_resolved(res.resolved).rank() == res.minus.generators().len();
    let cochain_failures = cochain_failures(res, pair, &f1)?;
    Ok(Theorem32Report {
        direction,
        missing_diagonal,
        misplaced,
        resolved_row_zero: resolved_row.is_empty(),
        injective,
        cochain_failures,
    })
}

pub fn pushed_pair(res: &ResolutionData, pair: &AugPair) -> Result<AugPair> {
    Ok(AugPair::new(res.push(&pair.first)?, res.push(&pair.second)?))
}

/// Degree-0 generators `h` of `Λ₋` with `μ¹₊ F₁ h* ≠ F₁ μ¹₋ h*`.
fn cochain_failures(res: &ResolutionData, pair: &AugPair, f1: &F1) -> Result<Vec<GeneratorId>> {
    let minus = bilinearized_matrix(&res.minus, pair);
    let plus = bilinearized_matrix(&res.plus, &pushed_pair(res, pair)?);
    let mut bad = Vec::new();
    for &h in &minus.degree0 {
        let x = Cochain::from([h]);
        let image = f1.apply(&x);
        let image0: Cochain = image.iter().copied().filter(|g| g.degree() == 0).collect();
        if plus.apply(&image0) != f1.apply(&minus.apply(&x)) {
            bad.push(h);
        }
    }
    Ok(bad)
}

#[derive(Debug, Clone, Serialize)]
pub struct Cor33Report {
    pub quotient_is_resolved: bool,
    pub quotient_differential_zero: bool,
    pub minus_dims: (usize, usize),
    pub plus_dims: (usize, usize),
}

impl Cor33Report {
    /// Euler characteristics differ by the one extra degree-0 generator.
    pub fn euler_consistent(&self) -> bool {
        self.plus_dims.0 + self.minus_dims.1 == self.minus_dims.0 + self.plus_dims.1 + 1
    }

    pub fn relation_holds(&self) -> bool {
        self.plus_dims.0 == self.minus_dims.0 + 1 && self.plus_dims.1 == self.minus_dims.1
    }

    pub fn passed(&self) -> bool {
        self.quotient_is_resolved && self.quotient_differential_zero && self.relation_holds()
    }
}

pub fn verify_cor33(res: &ResolutionData, pair: &AugPair) -> Result<Cor33Report> {
    let f1 = f1_matrix(res, pair);
    let n = f1.codomain.len();
    let a_row = f1.codomain.iter().position(|&g| g == res.resolved).expect("resolved generator present");
    let image_rank = f1.matrix.rank();
    let mut with_a = Gf2Matrix::zeros(n, f1.domain.len() + 1);
    for r in 0..n {
        for c in 0..f1.domain.len() {
            with_a.set(r, c, f1.matrix.get(r, c));
        }
    }
    with_a.set(a_row, f1.domain.len(), true);
    let quotient_is_resolved =
        res.resolved.degree() == 0 && image_rank + 1 == n && with_a.rank() == n;

    let pushed = pushed_pair(res, pair)?;
    let plus = bilinearized_matrix(&res.plus, &pushed);
    let minus = bilinearized_matrix(&res.minus, pair);
    let delta_a = plus.apply(&Cochain::from([res.resolved]));
    let mut extended = f1.matrix.clone();
    let before = extended.rank();
    let mut col = Gf2Matrix::zeros(n, f1.domain.len() + 1);
    for r in 0..n {
        for c in 0..f1.domain.len() {
            col.set(r, c, extended.get(r, c));
        }
        col.set(r, f1.domain.len(), delta_a.contains(&f1.codomain[r]));
    }
    extended = col;
    let quotient_differential_zero = extended.rank() == before;

    let cm = cohomology(&minus);
    let cp = cohomology(&plus);
    Ok(Cor33Report {
        quotient_is_resolved,
        quotient_differential_zero,
        minus_dims: (cm.dim0, cm.dim1),
        plus_dims: (cp.dim0, cp.dim1),
    })
}

/// `F_k(inputs)` for `k + 1` augmentations of `Λ₋`: coefficient of `g*` counts
/// decorated occurrences of the inputs in `Ψ(g)`.
pub fn f_k(res: &ResolutionData, eps: &[Augmentation], inputs: &[GeneratorId]) -> Cochain {
    assert_eq!(eps.len(), inputs.len() + 1, "F_k takes k + 1 augmentations");
    let eps: Vec<&Augmentation> = eps.iter().collect();
    res.plus
        .generators()
        .iter()
        .copied()
        .filter(|&g| decorated_part(res.psi.image(g), &eps).contains_key(inputs))
        .collect()
}

fn f_k_linear(res: &ResolutionData, eps: &[Augmentation], inputs: &[Cochain]) -> Cochain {
    let mut out = Cochain::new();
    expand(inputs, &mut Vec::new(), &mut |args| toggle_all(&mut out, &f_k(res, eps, args)));
    out
}

fn mu_linear(dga: &Dga, eps: &[Augmentation], inputs: &[Cochain]) -> Cochain {
    let mut out = Cochain::new();
    expand(inputs, &mut Vec::new(), &mut |args| toggle_all(&mut out, &mu_k(dga, eps, args)));
    out
}

fn expand(inputs: &[Cochain], picked: &mut Vec<GeneratorId>, f: &mut dyn FnMut(&[GeneratorId])) {
    if picked.len() == inputs.len() {
        f(picked);
        return;
    }
    for &x in &inputs[picked.len()] {
        picked.push(x);
        expand(inputs, picked, f);
        picked.pop();
    }
}

/// A∞-functor identity of arity 1 or 2 on the given inputs; empty when it holds.
pub fn functor_identity(res: &ResolutionData, eps: &[Augmentation], inputs: &[GeneratorId]) -> Result<Cochain> {
    let pushed: Vec<Augmentation> = eps.iter().map(|e| res.push(e)).collect::<Result<_>>()?;
    let single = |g: GeneratorId| Cochain::from([g]);
    let mut total = Cochain::new();
    match inputs {
        [x] => {
            let f = f_k_linear(res, eps, &[single(*x)]);
            toggle_all(&mut total, &mu_linear(&res.plus, &pushed, &[f]));
            let m = mu_linear(&res.minus, eps, &[single(*x)]);
            toggle_all(&mut total, &f_k_linear(res, eps, &[m]));
        }
        [x1, x2] => {
            let (e12, e23, e13) = (&eps[0..2], &eps[1..3], [eps[0].clone(), eps[2].clone()]);
            let (p13, p123) = ([pushed[0].clone(), pushed[2].clone()], &pushed[..]);
            let f2 = f_k_linear(res, eps, &[single(*x1), single(*x2)]);
            toggle_all(&mut total, &mu_linear(&res.plus, &p13, &[f2]));
            let f1a = f_k_linear(res, e12, &[single(*x1)]);
            let f1b = f_k_linear(res, e23, &[single(*x2)]);
            toggle_all(&mut total, &mu_linear(&res.plus, p123, &[f1a, f1b]));
            let m2 = mu_linear(&res.minus, eps, &[single(*x1), single(*x2)]);
            toggle_all(&mut total, &f_k_linear(res, &e13, &[m2]));
            let m1a = mu_linear(&res.minus, e12, &[single(*x1)]);
            toggle_all(&mut total, &f_k_linear(res, eps, &[m1a, single(*x2)]));
            let m1b = mu_linear(&res.minus, e23, &[single(*x2)]);
            toggle_all(&mut total, &f_k_linear(res, eps, &[single(*x1), m1b]));
        }
        _ => return Err(Error::ValidationFailure("functor identities are implemented for arity 1 and 2".into())),
    }
    Ok(total)
}
