use augresolve::augmentation::{enumerate_augmentations, AugPair, Augmentation, DEFAULT_GENERATOR_LIMIT};
use augresolve::category::{bilinearized_matrix, cohomology, mu_k};
use augresolve::closure::ClosureDiagram;
use augresolve::dga::{differential_with, Dga};
use augresolve::fixtures::{self, FIXTURE_IDS};
use augresolve::resolution::{build_psi_with, verify_cor33, verify_lemma31, verify_theorem32, IndexDirection, ResolutionData};
use augresolve::sweep::{augmentation_sweep, engine_sweep, pair_sweep, soundness_sweep};
use augresolve::{BraidSpec, DiskCounter, Error, GeneratorId};
use clap::ValueEnum;
use serde_json::json;

use crate::output::Report;
use crate::{Cli, Command};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OrderArg {
    Descending,
    Ascending,
}

impl From<OrderArg> for IndexDirection {
    fn from(o: OrderArg) -> Self {
        match o {
            OrderArg::Descending => IndexDirection::Descending,
            OrderArg::Ascending => IndexDirection::Ascending,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SweepCheck {
    Soundness,
    Pairs,
    Engines,
    Augmentations,
}

type Outcome = anyhow::Result<(Report, bool)>;

pub fn run(cli: &Cli) -> Outcome {
    match &cli.command {
        Command::Dga(b) => dga(cli, &b.load()?),
        Command::Augs(b) => augs(cli, &b.load()?),
        Command::Lch { braid, pair } => lch(cli, &braid.load()?, pair.as_deref()),
        Command::Resolve { braid, at } => resolve(cli, &braid.load()?, at),
        Command::Mu { braid, augs, inputs } => mu(cli, &braid.load()?, augs, inputs),
        Command::Verify { braid, at, lemma31, thm32, cor33, order } => {
            let all = !(*lemma31 || *thm32 || *cor33);
            let checks = Checks { lemma31: all || *lemma31, thm32: all || *thm32, cor33: all || *cor33 };
            verify(cli, &braid.load()?, at, checks, (*order).into())
        }
        Command::VerifyPaper { fixtures } => verify_paper(fixtures.as_deref()),
        Command::Sweep { p_max, q_max, check } => sweep(*p_max, *q_max, *check),
    }
}

fn diagram(cli: &Cli, spec: &BraidSpec) -> anyhow::Result<ClosureDiagram> {
    let diagram = ClosureDiagram::build(spec);
    if let Some(cap) = cli.cap {
        if cap < diagram.crossings.len() {
            return Err(Error::Parse(format!("cap {cap} is below the {} crossings of the diagram", diagram.crossings.len())).into());
        }
    }
    Ok(diagram)
}

fn build_dga(cli: &Cli, diagram: &ClosureDiagram) -> anyhow::Result<Dga> {
    let counter = DiskCounter::new(diagram, cli.engine, cli.cap)?;
    Ok(differential_with(diagram, &counter)?)
}

fn generator(text: &str) -> anyhow::Result<GeneratorId> {
    Ok(text.trim().parse::<GeneratorId>()?)
}

fn generator_list(text: &str) -> anyhow::Result<Vec<GeneratorId>> {
    // Splits on commas outside brackets.
    let mut out = Vec::new();
    let mut depth = 0;
    let mut start = 0;
    for (k, ch) in text.char_indices() {
        match ch {
            '[' => depth += 1,
            ']' => depth -= 1,
            ',' if depth == 0 => {
                out.push(generator(&text[start..k])?);
                start = k + 1;
            }
            _ => {}
        }
    }
    if !text[start..].trim().is_empty() {
        out.push(generator(&text[start..])?);
    }
    Ok(out)
}

fn index_list(text: &str) -> anyhow::Result<Vec<usize>> {
    text.split(',')
        .map(|s| s.trim().parse::<usize>().map_err(|e| Error::Parse(format!("bad index {s:?}: {e}")).into()))
        .collect()
}

fn show(gens: &[GeneratorId]) -> String {
    gens.iter().map(GeneratorId::to_string).collect::<Vec<_>>().join(" ")
}

fn dga(cli: &Cli, spec: &BraidSpec) -> Outcome {
    let diagram = diagram(cli, spec)?;
    let dga = build_dga(cli, &diagram)?;
    let residual: Vec<GeneratorId> = dga.check_d_squared().into_iter().map(|(g, _)| g).collect();
    let doc = dga.to_document();
    let mut report = Report::new(
        json!({
            "braid": spec.to_string(),
            "components": diagram.components,
            "census": diagram.census(),
            "generators": doc.generators,
            "differential": doc.differential,
            "d_squared_failures": residual,
        }),
        vec!["generator", "degree", "differential"],
    );
    for &g in dga.generators() {
        report.row(vec![g.to_string(), g.degree().to_string(), dga.d(g).to_string()]);
    }
    Ok((report, residual.is_empty()))
}

/// Fails before any disk search when augmentation enumeration would be refused.
fn check_generator_limit(spec: &BraidSpec) -> anyhow::Result<()> {
    let count = spec.generators().into_iter().filter(|g| g.degree() == 0).count();
    if count > DEFAULT_GENERATOR_LIMIT {
        return Err(Error::TooManyGenerators { count, limit: DEFAULT_GENERATOR_LIMIT }.into());
    }
    Ok(())
}

fn augs(cli: &Cli, spec: &BraidSpec) -> Outcome {
    check_generator_limit(spec)?;
    let dga = build_dga(cli, &diagram(cli, spec)?)?;
    let augs = enumerate_augmentations(&dga)?;
    let docs: Vec<_> = augs.iter().enumerate().map(|(k, e)| e.to_document(k)).collect();
    let mut report = Report::new(
        json!({ "braid": spec.to_string(), "degree_zero": dga.degree_zero(), "augmentations": docs }),
        vec!["index", "values"],
    );
    for (k, e) in augs.iter().enumerate() {
        let values: Vec<String> = e.values().iter().map(|(g, v)| format!("{g}={}", u8::from(*v))).collect();
        report.row(vec![k.to_string(), values.join(" ")]);
    }
    Ok((report, true))
}

fn pairs_from(augs: &[Augmentation], pair: Option<&str>) -> anyhow::Result<Vec<(usize, usize)>> {
    match pair {
        None => Ok((0..augs.len()).flat_map(|x| (0..augs.len()).map(move |y| (x, y))).collect()),
        Some(text) => match index_list(text)?[..] {
            [x, y] if x < augs.len() && y < augs.len() => Ok(vec![(x, y)]),
            _ => Err(Error::Parse(format!("pair {text:?} must be two indices below {}", augs.len())).into()),
        },
    }
}

fn lch(cli: &Cli, spec: &BraidSpec, pair: Option<&str>) -> Outcome {
    check_generator_limit(spec)?;
    let dga = build_dga(cli, &diagram(cli, spec)?)?;
    let augs = enumerate_augmentations(&dga)?;
    let mut entries = Vec::new();
    let mut report = Report::new(json!(null), vec!["first", "second", "dim0", "dim1"]);
    for (x, y) in pairs_from(&augs, pair)? {
        let h = cohomology(&bilinearized_matrix(&dga, &AugPair::new(augs[x].clone(), augs[y].clone())));
        report.row(vec![x.to_string(), y.to_string(), h.dim0.to_string(), h.dim1.to_string()]);
        entries.push(json!({
            "first": x,
            "second": y,
            "dim0": h.dim0,
            "dim1": h.dim1,
            "cocycles0": h.cocycles0,
            "representatives1": h.representatives1,
        }));
    }
    report.document = json!({ "braid": spec.to_string(), "augmentations": augs.len(), "pairs": entries });
    Ok((report, true))
}

fn resolution(cli: &Cli, spec: &BraidSpec, at: &str) -> anyhow::Result<ResolutionData> {
    let diagram = diagram(cli, spec)?;
    Ok(build_psi_with(&diagram, generator(at)?, cli.engine, cli.cap)?)
}

fn resolve(cli: &Cli, spec: &BraidSpec, at: &str) -> Outcome {
    let res = resolution(cli, spec, at)?;
    let minus = augresolve::resolve_crossing(spec, (res.resolved.i, res.resolved.j))?;
    let mut report = Report::new(
        json!({
            "braid": spec.to_string(),
            "resolved": res.resolved,
            "minus": minus.to_string(),
            "images": res.psi.action,
        }),
        vec!["generator", "image"],
    );
    for (g, p) in &res.psi.action {
        report.row(vec![g.to_string(), p.to_string()]);
    }
    Ok((report, true))
}

fn mu(cli: &Cli, spec: &BraidSpec, augs_arg: &str, inputs_arg: &str) -> Outcome {
    check_generator_limit(spec)?;
    let dga = build_dga(cli, &diagram(cli, spec)?)?;
    let augs = enumerate_augmentations(&dga)?;
    let indices = index_list(augs_arg)?;
    let inputs = generator_list(inputs_arg)?;
    if indices.len() != inputs.len() + 1 || inputs.is_empty() {
        return Err(Error::Parse(format!("{} inputs need {} augmentations", inputs.len(), inputs.len() + 1)).into());
    }
    if let Some(&k) = indices.iter().find(|&&k| k >= augs.len()) {
        return Err(Error::Parse(format!("augmentation index {k} out of range (have {})", augs.len())).into());
    }
    if let Some(&g) = inputs.iter().find(|&&g| !dga.contains(g)) {
        return Err(Error::UnknownGenerator(g).into());
    }
    let eps: Vec<Augmentation> = indices.iter().map(|&k| augs[k].clone()).collect();
    let out: Vec<GeneratorId> = mu_k(&dga, &eps, &inputs).into_iter().collect();
    let mut report = Report::new(
        json!({ "braid": spec.to_string(), "augmentations": indices, "inputs": inputs, "output": out }),
        vec!["arity", "output"],
    );
    report.row(vec![inputs.len().to_string(), show(&out)]);
    Ok((report, true))
}

#[derive(Debug, Clone, Copy)]
pub struct Checks {
    lemma31: bool,
    thm32: bool,
    cor33: bool,
}

struct Assertion {
    name: &'static str,
    checked: usize,
    failures: usize,
    example: Option<String>,
}

impl Assertion {
    fn new(name: &'static str) -> Self {
        Assertion { name, checked: 0, failures: 0, example: None }
    }

    fn record(&mut self, ok: bool, example: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.failures += 1;
            if self.example.is_none() {
                self.example = Some(example());
            }
        }
    }
}

fn verify(cli: &Cli, spec: &BraidSpec, at: &str, checks: Checks, direction: IndexDirection) -> Outcome {
    let res = resolution(cli, spec, at)?;
    let mut assertions = Vec::new();
    let mut logged = Vec::new();
    if checks.lemma31 {
        let report = verify_lemma31(&res);
        let mut a = Assertion::new("lemma31.windows");
        a.checked = res.psi1.len();
        a.failures = report.violations.len();
        a.example = report.violations.first().map(|v| format!("{} has {}", v.generator, v.letter));
        logged = report.logged.iter().map(|v| format!("{} has {}", v.generator, v.letter)).collect();
        assertions.push(a);
    }
    if checks.thm32 || checks.cor33 {
        let augs = enumerate_augmentations(&res.minus)?;
        let mut tri = Assertion::new("thm32.triangular");
        let mut row = Assertion::new("thm32.resolved-row-zero");
        let mut inj = Assertion::new("thm32.injective");
        let mut cochain = Assertion::new("thm32.cochain-map");
        let mut quotient = Assertion::new("cor33.quotient");
        let mut dims = Assertion::new("cor33.dims");
        for (x, e1) in augs.iter().enumerate() {
            for (y, e2) in augs.iter().enumerate() {
                let pair = AugPair::new(e1.clone(), e2.clone());
                if checks.thm32 {
                    let r = verify_theorem32(&res, &pair, direction)?;
                    tri.record(r.triangular(), || {
                        let bad: Vec<String> = r.misplaced.iter().map(|(g, h)| format!("({g}, {h})")).collect();
                        format!("pair ({x},{y}): missing diagonal [{}], misplaced {}", show(&r.missing_diagonal), bad.join(" "))
                    });
                    row.record(r.resolved_row_zero, || format!("pair ({x},{y})"));
                    inj.record(r.injective, || format!("pair ({x},{y})"));
                    cochain.record(r.cochain_failures.is_empty(), || {
                        format!("pair ({x},{y}) at [{}]", show(&r.cochain_failures))
                    });
                }
                if checks.cor33 {
                    let r = verify_cor33(&res, &pair)?;
                    quotient.record(r.quotient_is_resolved && r.quotient_differential_zero, || format!("pair ({x},{y})"));
                    dims.record(r.relation_holds(), || {
                        format!("pair ({x},{y}): minus {:?}, plus {:?}", r.minus_dims, r.plus_dims)
                    });
                }
            }
        }
        if checks.thm32 {
            assertions.extend([tri, row, inj, cochain]);
        }
        if checks.cor33 {
            assertions.extend([quotient, dims]);
        }
    }
    let pass = assertions.iter().all(|a| a.failures == 0);
    let mut report = Report::new(
        json!({
            "braid": spec.to_string(),
            "resolved": res.resolved,
            "order": format!("{direction:?}").to_lowercase(),
            "assertions": assertions.iter().map(|a| json!({
                "name": a.name,
                "pass": a.failures == 0,
                "checked": a.checked,
                "failures": a.failures,
                "example": a.example,
            })).collect::<Vec<_>>(),
            "logged": logged,
        }),
        vec!["assertion", "verdict", "checked", "failures", "example"],
    );
    for a in &assertions {
        report.row(vec![
            a.name.to_string(),
            if a.failures == 0 { "pass" } else { "fail" }.to_string(),
            a.checked.to_string(),
            a.failures.to_string(),
            a.example.clone().unwrap_or_default(),
        ]);
    }
    Ok((report, pass))
}

fn verify_paper(selection: Option<&str>) -> Outcome {
    let ids: Vec<String> = match selection {
        Some(s) => s.split(',').map(|x| x.trim().to_string()).collect(),
        None => FIXTURE_IDS.iter().map(|s| s.to_string()).collect(),
    };
    let outcomes = ids.iter().map(|id| fixtures::run(id)).collect::<Result<Vec<_>, _>>()?;
    let pass = outcomes.iter().all(|o| o.passed());
    let mut report = Report::new(json!({ "fixtures": outcomes }), vec!["fixture", "verdict", "checks", "failures", "detail"]);
    for o in &outcomes {
        let detail = o.failures.first().or(o.notes.first()).cloned().unwrap_or_default();
        report.row(vec![
            o.id.clone(),
            if o.passed() { "pass" } else { "fail" }.to_string(),
            o.checks.to_string(),
            o.failures.len().to_string(),
            detail,
        ]);
    }
    Ok((report, pass))
}

fn sweep(p_max: u32, q_max: u32, check: SweepCheck) -> Outcome {
    let header = vec!["instance", "verdict", "summary"];
    let verdict = |ok: bool| if ok { "pass" } else { "fail" }.to_string();
    let (document, rows, pass) = match check {
        SweepCheck::Soundness => {
            let records = soundness_sweep(p_max, q_max)?;
            let rows: Vec<Vec<String>> = records
                .iter()
                .map(|r| {
                    let ok = r.sound() && r.lemma.passed();
                    let summary = format!(
                        "d² failures {}, chain-map failures {}, window violations {}, logged {}",
                        r.d_squared_failures.len(),
                        r.chain_map_failures.len(),
                        r.lemma.violations.len(),
                        r.lemma.logged.len()
                    );
                    vec![r.label(), verdict(ok), summary]
                })
                .collect();
            let pass = records.iter().all(|r| r.sound() && r.lemma.passed());
            (serde_json::to_value(&records)?, rows, pass)
        }
        SweepCheck::Pairs => {
            let records = pair_sweep(p_max, q_max)?;
            let rows = records
                .iter()
                .map(|r| {
                    let ok = r.literal_order_holds() && r.structure_holds() && r.corollary_holds();
                    let summary = format!(
                        "pairs {}, triangular {} (ascending {}), injective {}, cochain {}, dims relation {}",
                        r.pairs, r.triangular_descending, r.triangular_ascending, r.injective, r.cochain_map, r.dims_relation
                    );
                    vec![format!("{} at {}", r.instance, r.resolved), verdict(ok), summary]
                })
                .collect();
            let pass = records.iter().all(|r| r.literal_order_holds() && r.structure_holds() && r.corollary_holds());
            (serde_json::to_value(&records)?, rows, pass)
        }
        SweepCheck::Engines => {
            let records = engine_sweep(p_max, q_max)?;
            let rows = records
                .iter()
                .map(|r| {
                    let summary = format!("queries {}, disks {}, disagreements {}", r.queries, r.disks, r.disagreements.len());
                    vec![r.instance.clone(), verdict(r.disagreements.is_empty()), summary]
                })
                .collect();
            let pass = records.iter().all(|r| r.disagreements.is_empty());
            (serde_json::to_value(&records)?, rows, pass)
        }
        SweepCheck::Augmentations => {
            let records = augmentation_sweep(p_max, q_max, 12)?;
            let rows = records
                .iter()
                .map(|r| {
                    let summary = format!("degree-0 {}, pruned {}, naive {}", r.degree_zero, r.pruned, r.naive);
                    vec![r.instance.clone(), verdict(r.equal), summary]
                })
                .collect();
            let pass = records.iter().all(|r| r.equal);
            (serde_json::to_value(&records)?, rows, pass)
        }
    };
    let mut report = Report::new(json!({ "check": format!("{check:?}").to_lowercase(), "records": document }), header);
    report.rows = rows;
    Ok((report, pass))
}
