//! The subcommands, each producing a [`Section`] of the report.

use osculant::algebra::FieldElement;
use osculant::cayley::{hessian, ConicCoeffs};
use osculant::hesse::{
    all_osculating_conics, build_curve, cube_difference_product, sextactic_points,
    verify_paper_identities, ConicAtlas, ConicMethod, HessePencilCurve,
};
use osculant::intersect::{conic_param_multiplicity, fulton_at_point, Multiplicity};
use osculant::syzygy::{find_triple_partition, ComputeMode, ConicProducts, ExponentReport, Modulus, SyzygyError};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::error::CliError;
use crate::json::{element_json, tower_json};

/// Which prime, if any, the exponent computations use.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModulusChoice {
    /// Smallest admissible prime.
    Auto,
    /// A given prime, replaced by the next admissible one if unusable.
    Prime(u64),
    /// Exact computation.
    None,
}

impl ModulusChoice {
    /// Parses `auto`, `none` or a prime.
    ///
    /// # Errors
    /// [`CliError::Usage`] for anything else.
    pub fn parse(s: &str) -> Result<Self, CliError> {
        match s {
            "auto" => Ok(ModulusChoice::Auto),
            "none" => Ok(ModulusChoice::None),
            _ => s
                .parse::<u64>()
                .map(ModulusChoice::Prime)
                .map_err(|_| CliError::Usage(format!("--modulus expects auto, none or a prime, got '{s}'"))),
        }
    }

    fn mode(self) -> ComputeMode {
        match self {
            ModulusChoice::Auto => ComputeMode::Modular(Modulus::Auto),
            ModulusChoice::Prime(p) => ComputeMode::Modular(Modulus::Prime(p)),
            ModulusChoice::None => ComputeMode::Exact,
        }
    }

    /// The flag value that selects this choice.
    #[must_use]
    pub fn name(self) -> String {
        match self {
            ModulusChoice::Auto => "auto".into(),
            ModulusChoice::Prime(p) => p.to_string(),
            ModulusChoice::None => "none".into(),
        }
    }
}

/// Subcommand names.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CommandKind {
    Identities,
    Points,
    Conics,
    Multiplicity,
    Exponents,
    Partition,
    Report,
}

impl CommandKind {
    /// Lower-case name.
    #[must_use]
    pub fn name(self) -> &'static str {
        match self {
            CommandKind::Identities => "identities",
            CommandKind::Points => "points",
            CommandKind::Conics => "conics",
            CommandKind::Multiplicity => "multiplicity",
            CommandKind::Exponents => "exponents",
            CommandKind::Partition => "partition",
            CommandKind::Report => "report",
        }
    }
}

/// A fully parsed job.
#[derive(Clone, Debug)]
pub struct JobConfig {
    pub command: CommandKind,
    /// The parameter expression as typed.
    pub t: String,
    pub form: ConicMethod,
    /// Label groups from `--conics`.
    pub conics: Vec<Vec<usize>>,
    pub k_max: Option<u32>,
    pub modulus: ModulusChoice,
    pub check_multiplicity: bool,
}

/// Output of one subcommand.
#[derive(Clone, Debug)]
pub struct Section {
    pub payload: Value,
    pub lines: Vec<String>,
    pub passed: bool,
    /// Primes used, in order of first use.
    pub primes: Vec<u64>,
    pub notes: Vec<String>,
}

impl Section {
    fn new(payload: Value, lines: Vec<String>, passed: bool) -> Self {
        Section { payload, lines, passed, primes: Vec::new(), notes: Vec::new() }
    }
}

fn status(passed: bool) -> &'static str {
    if passed {
        "pass"
    } else {
        "fail"
    }
}

fn point_json(p: &[FieldElement; 3]) -> Value {
    Value::Array(p.iter().map(element_json).collect())
}

fn point_text(p: &[FieldElement; 3]) -> String {
    format!("({} : {} : {})", p[0], p[1], p[2])
}

fn selected_labels(cfg: &JobConfig) -> Result<Vec<usize>, CliError> {
    if cfg.conics.is_empty() {
        return Ok((1..=27).collect());
    }
    let mut labels: Vec<usize> = cfg.conics.iter().flatten().copied().collect();
    labels.sort_unstable();
    labels.dedup();
    if let Some(bad) = labels.iter().find(|l| !(1..=27).contains(*l)) {
        return Err(CliError::Usage(format!("label {bad} is outside 1..=27")));
    }
    Ok(labels)
}

fn multiplicity_json(m: Multiplicity) -> Value {
    match m {
        Multiplicity::Finite(n) => json!(n),
        Multiplicity::Infinite => json!("infinite"),
    }
}

/// Runs `cfg` on an already built curve.
///
/// # Errors
/// Any [`CliError`].
pub fn run_command(cfg: &JobConfig, c: &HessePencilCurve) -> Result<Section, CliError> {
    match cfg.command {
        CommandKind::Identities => identities(c),
        CommandKind::Points => points(cfg, c),
        CommandKind::Conics => conics(cfg, c),
        CommandKind::Multiplicity => multiplicity(cfg, c),
        CommandKind::Exponents => exponents(cfg, c),
        CommandKind::Partition => partition(c),
        CommandKind::Report => report(cfg, c),
    }
}

/// Parses the parameter and builds the curve.
///
/// # Errors
/// [`CliError::Expr`], [`CliError::SingularMember`].
pub fn curve_for(cfg: &JobConfig) -> Result<HessePencilCurve, CliError> {
    let t = crate::expr::parse_parameter(&cfg.t)?;
    Ok(build_curve(&t)?)
}

fn identities(c: &HessePencilCurve) -> Result<Section, CliError> {
    let r = verify_paper_identities(c)?;
    let checks: Vec<Value> = r
        .checks
        .iter()
        .map(|k| json!({ "name": k.name, "statement": k.statement, "status": status(k.passed) }))
        .collect();
    let lines = r.checks.iter().map(|k| format!("[{}] {}: {}", status(k.passed), k.name, k.statement)).collect();
    Ok(Section::new(json!({ "checks": checks }), lines, r.all_passed()))
}

fn points(cfg: &JobConfig, c: &HessePencilCurve) -> Result<Section, CliError> {
    let labels = selected_labels(cfg)?;
    let pts = sextactic_points(c)?;
    let f = c.poly();
    let h = hessian(c.curve())?;
    let cubes = cube_difference_product(c);
    let mut items = Vec::new();
    let mut lines = Vec::new();
    let mut passed = true;
    for p in pts.iter().filter(|p| labels.contains(&p.label)) {
        let on_curve = f.eval(&p.coords)?.is_zero();
        let off_triangle = p.coords.iter().all(|x| !x.is_zero());
        let off_hessian = !h.eval(&p.coords)?.is_zero();
        let on_cubes = cubes.eval(&p.coords)?.is_zero();
        let ok = on_curve && off_triangle && off_hessian && on_cubes;
        passed &= ok;
        let normalized = p.normalized();
        items.push(json!({
            "label": p.label,
            "table": p.table,
            "k": p.k,
            "root": p.root,
            "coords": point_json(&normalized),
            "on_curve": on_curve,
            "off_triangle": off_triangle,
            "off_hessian": off_hessian,
            "on_cube_differences": on_cubes,
            "status": status(ok),
        }));
        lines.push(format!("[{}] P{} = {}", status(ok), p.label, point_text(&normalized)));
    }
    let tower = pts.first().map_or(Value::Null, |p| tower_json(p.coords[0].tower()));
    Ok(Section::new(json!({ "tower": tower, "count": pts.len(), "points": items }), lines, passed))
}

fn conic_entry(atlas: &ConicAtlas, label: usize) -> (Value, String) {
    let e = atlas.entry(label).expect("label in range");
    let coeffs: Vec<Value> = e.conic.0.iter().map(element_json).collect();
    let value = json!({
        "label": label,
        "seed_label": e.seed_label,
        "group_word": e.element.word_string(),
        "point": point_json(&e.point.normalized()),
        "coefficients": coeffs,
    });
    (value, format!("C{label}: {}", e.conic.to_mpoly()))
}

fn measure(atlas: &ConicAtlas, label: usize) -> Result<(Multiplicity, Multiplicity), CliError> {
    let e = atlas.entry(label).expect("label in range");
    let curve = atlas.curve.curve();
    let param = conic_param_multiplicity(curve, &e.conic, &e.point.coords)?;
    let fulton = fulton_at_point(curve, &e.conic, &e.point.coords)?;
    if param != fulton {
        return Err(CliError::Internal(format!(
            "P{label}: parametrization gives {param} but Fulton's algorithm gives {fulton}"
        )));
    }
    Ok((param, fulton))
}

fn sextactic_ok(m: Multiplicity) -> bool {
    matches!(m, Multiplicity::Finite(n) if n >= 6)
}

fn type_s(m: Multiplicity) -> Value {
    match m {
        Multiplicity::Finite(n) if n >= 5 => json!(n - 5),
        _ => Value::Null,
    }
}

fn conics(cfg: &JobConfig, c: &HessePencilCurve) -> Result<Section, CliError> {
    let labels = selected_labels(cfg)?;
    let atlas = all_osculating_conics(c, cfg.form)?;
    let measured: Vec<Option<(Multiplicity, Multiplicity)>> = if cfg.check_multiplicity {
        labels.par_iter().map(|&l| measure(&atlas, l).map(Some)).collect::<Result<_, _>>()?
    } else {
        vec![None; labels.len()]
    };
    let mut items = Vec::new();
    let mut lines = Vec::new();
    let mut passed = true;
    for (&label, m) in labels.iter().zip(measured) {
        let (mut value, mut line) = conic_entry(&atlas, label);
        if let Some((m, _)) = m {
            let ok = sextactic_ok(m);
            passed &= ok;
            value["multiplicity"] = multiplicity_json(m);
            value["type_s"] = type_s(m);
            value["status"] = json!(status(ok));
            line = format!("[{}] {line}  (C.O)_P = {m}", status(ok));
        }
        items.push(value);
        lines.push(line);
    }
    let payload = json!({
        "form": form_name(cfg.form),
        "tower": tower_json(&atlas.splitting.tower),
        "conics": items,
    });
    Ok(Section::new(payload, lines, passed))
}

fn multiplicity(cfg: &JobConfig, c: &HessePencilCurve) -> Result<Section, CliError> {
    let labels = selected_labels(cfg)?;
    let atlas = all_osculating_conics(c, cfg.form)?;
    let measured: Vec<(Multiplicity, Multiplicity)> =
        labels.par_iter().map(|&l| measure(&atlas, l)).collect::<Result<_, _>>()?;
    let mut items = Vec::new();
    let mut lines = Vec::new();
    let mut passed = true;
    for (&label, (param, fulton)) in labels.iter().zip(measured) {
        let ok = sextactic_ok(param);
        passed &= ok;
        items.push(json!({
            "label": label,
            "parametrization": multiplicity_json(param),
            "fulton": multiplicity_json(fulton),
            "type_s": type_s(param),
            "status": status(ok),
        }));
        lines.push(format!("[{}] P{label}: (C.O)_P = {param} (parametrization), {fulton} (Fulton)", status(ok)));
    }
    Ok(Section::new(json!({ "form": form_name(cfg.form), "points": items }), lines, passed))
}

/// Exponents of one product, retrying an unusable fixed prime with the
/// next admissible one.
fn product_report(
    cp: &ConicProducts,
    labels: &[usize],
    cfg: &JobConfig,
) -> Result<(ExponentReport, Option<String>), CliError> {
    match cp.exponents(labels, cfg.modulus.mode(), cfg.k_max) {
        Err(SyzygyError::BadPrime(p)) if matches!(cfg.modulus, ModulusChoice::Prime(_)) => {
            let r = cp.exponents(labels, ComputeMode::Modular(Modulus::Above(p)), cfg.k_max)?;
            let note = format!("prime {p} is not admissible; used {}", r.prime.unwrap_or(0));
            Ok((r, Some(note)))
        }
        other => Ok((other?, None)),
    }
}

#[derive(Serialize)]
struct ExponentItem<'a> {
    labels: &'a [usize],
    degree: u32,
    exponents: &'a [u32],
    classification: &'static str,
    certified: bool,
    prime: Option<u64>,
    k_max: u32,
    dims: &'a [usize],
    generator_counts: &'a [usize],
    resolution_dims_match: bool,
}

fn exponent_item(labels: &[usize], r: &ExponentReport) -> Value {
    let item = ExponentItem {
        labels,
        degree: r.degree,
        exponents: &r.exponents,
        classification: r.classification.name(),
        certified: r.certified,
        prime: r.prime,
        k_max: r.k_max,
        dims: &r.dims.dims,
        generator_counts: &r.generator_counts,
        resolution_dims_match: r.resolution_dims_match(),
    };
    serde_json::to_value(item).expect("plain data")
}

fn exponent_line(labels: &[usize], r: &ExponentReport) -> String {
    let labels: Vec<String> = labels.iter().map(ToString::to_string).collect();
    let exps: Vec<String> = r.exponents.iter().map(ToString::to_string).collect();
    format!(
        "F*C[{}]: degree {}, exponents ({}), {}{}",
        labels.join(","),
        r.degree,
        exps.join(","),
        r.classification,
        if r.certified { ", certified" } else { "" }
    )
}

fn exponents(cfg: &JobConfig, c: &HessePencilCurve) -> Result<Section, CliError> {
    if cfg.conics.is_empty() {
        return Err(CliError::Usage("exponents needs at least one --conics list".into()));
    }
    let cp = ConicProducts::new(c)?;
    let results: Vec<(ExponentReport, Option<String>)> =
        cfg.conics.par_iter().map(|labels| product_report(&cp, labels, cfg)).collect::<Result<_, _>>()?;
    let mut section = Section::new(Value::Null, Vec::new(), true);
    let mut items = Vec::new();
    for (labels, (r, note)) in cfg.conics.iter().zip(&results) {
        items.push(exponent_item(labels, r));
        section.lines.push(exponent_line(labels, r));
        if let Some(p) = r.prime {
            if !section.primes.contains(&p) {
                section.primes.push(p);
            }
        }
        section.notes.extend(note.clone());
        section.passed &= r.resolution_dims_match();
    }
    section.payload = json!({ "products": items });
    Ok(section)
}

fn partition(c: &HessePencilCurve) -> Result<Section, CliError> {
    let r = find_triple_partition(c)?;
    let mut lines = Vec::new();
    let triples: Vec<Value> = r
        .triples
        .iter()
        .map(|t| {
            lines.push(format!(
                "[{}] G = {{{}, {}, {}}}: F*C{}*C{} exponents {:?} {}",
                status(t.certified),
                t.triple[0],
                t.triple[1],
                t.triple[2],
                t.pair[0],
                t.pair[1],
                t.report.exponents,
                t.report.classification
            ));
            json!({
                "labels": t.triple,
                "certified_pair": t.pair,
                "exponents": t.report.exponents,
                "classification": t.report.classification.name(),
                "status": status(t.certified),
            })
        })
        .collect();
    let x = &r.cross_pair;
    lines.push(format!(
        "[{}] cross pair F*C{}*C{} exponents {:?} {}",
        status(x.as_expected),
        x.pair[0],
        x.pair[1],
        x.report.exponents,
        x.report.classification
    ));
    let free_pairs: Vec<[usize; 2]> = r.free_pairs.iter().map(|&(a, b)| [a, b]).collect();
    let payload = json!({
        "screening_prime": r.screening_prime,
        "free_pairs": free_pairs,
        "triples": triples,
        "cross_pair": {
            "labels": x.pair,
            "exponents": x.report.exponents,
            "classification": x.report.classification.name(),
            "status": status(x.as_expected),
        },
    });
    let mut section = Section::new(payload, lines, r.all_certified());
    let mut primes: Vec<u64> = r.screening_prime.into_iter().collect();
    for p in r.triples.iter().filter_map(|t| t.report.prime).chain(x.report.prime) {
        if !primes.contains(&p) {
            primes.push(p);
        }
    }
    section.primes = primes;
    Ok(section)
}

fn agreement(c: &HessePencilCurve) -> Result<(Vec<Value>, Vec<String>, bool), CliError> {
    let atlases: Vec<ConicAtlas> =
        ConicMethod::ALL.par_iter().map(|&m| all_osculating_conics(c, m)).collect::<Result<_, _>>()?;
    let mut items = Vec::new();
    let mut ok_all = true;
    for label in 1..=27 {
        let conics: Vec<&ConicCoeffs> = atlases.iter().map(|a| &a.entry(label).expect("label").conic).collect();
        let ok = conics[0].proportional(conics[1]) && conics[0].proportional(conics[2]);
        ok_all &= ok;
        items.push(json!({ "label": label, "status": status(ok) }));
    }
    let lines = vec![format!("[{}] theorem, closed-form and pipeline conics agree at all 27 points", status(ok_all))];
    Ok((items, lines, ok_all))
}

fn report(cfg: &JobConfig, c: &HessePencilCurve) -> Result<Section, CliError> {
    let ids = identities(c)?;
    let all = JobConfig { conics: Vec::new(), ..cfg.clone() };
    let pts = points(&all, c)?;
    let (agree, agree_lines, agree_ok) = agreement(c)?;
    let mult = multiplicity(&JobConfig { form: ConicMethod::ClosedForm, ..all.clone() }, c)?;
    let singles = JobConfig { conics: (1..=27).map(|l| vec![l]).collect(), ..all };
    let exps = exponents(&singles, c)?;
    let count = |s: &Section| s.lines.iter().filter(|l| l.starts_with("[pass]")).count();
    let mut lines = vec!["identities:".to_string()];
    lines.extend(ids.lines.iter().map(|l| format!("  {l}")));
    lines.push(format!("[{}] points: {} of 27 pass", status(pts.passed), count(&pts)));
    lines.extend(agree_lines);
    lines.push(format!("[{}] multiplicity: {} of 27 sextactic with agreeing algorithms", status(mult.passed), count(&mult)));
    lines.push("single-conic products:".to_string());
    lines.extend(exps.lines.iter().map(|l| format!("  {l}")));
    let passed = ids.passed && pts.passed && agree_ok && mult.passed && exps.passed;
    let payload = json!({
        "identities": ids.payload,
        "points": pts.payload,
        "conic_agreement": agree,
        "multiplicity": mult.payload,
        "single_conic_exponents": exps.payload,
    });
    let mut section = Section::new(payload, lines, passed);
    section.primes = exps.primes;
    section.notes = exps.notes;
    Ok(section)
}

/// Name used in reports for a construction method.
#[must_use]
pub fn form_name(m: ConicMethod) -> &'static str {
    match m {
        ConicMethod::Theorem => "theorem",
        ConicMethod::ClosedForm => "closed",
        ConicMethod::Pipeline => "pipeline",
    }
}
