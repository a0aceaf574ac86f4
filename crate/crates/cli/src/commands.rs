use std::fs;
use std::io::Write;
use std::path::Path;

use num_rational::Ratio;
use serde::Serialize;
use serde_json::{json, Value};
use swlab::exactnum::{set_check_tol, NumError, QuadScalar};
use swlab::fusion::{dim_check, fuse};
use swlab::poincare::*;
use swlab::schurweyl::{schur_dim, schur_from_elementary, Partition, SchurError};
use swlab::spectra::{count_n, hyperboloid_spectrum, orbit_spectrum_cpn, weyl_fit, SpectraError};
use swlab::symmetry::{named_fixture, Fixture, SymScalar, Symmetry, SymmetryError, FIXTURE_NAMES};
use swlab::twistlie::{casimir_on_component, crossings, lie_data, DualSide, TwistError};
use swlab::Caps;

use crate::{Cli, Command, RunConfig};

#[derive(Debug)]
pub enum CliError {
    /// Malformed input, caps, field mismatches: exit 2.
    Usage(String),
    /// A check that ran and failed: exit 1.
    Failed(String),
}

impl CliError {
    pub fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Failed(_) => 1,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Failed(m) => write!(f, "check failed: {m}"),
        }
    }
}

fn num_err(e: NumError) -> CliError {
    CliError::Usage(e.to_string())
}

impl From<SymmetryError> for CliError {
    fn from(e: SymmetryError) -> Self {
        match e {
            SymmetryError::NotASymmetry(_) | SymmetryError::ConstraintViolation { .. } => CliError::Failed(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<PoincareError> for CliError {
    fn from(e: PoincareError) -> Self {
        match e {
            PoincareError::Num(e) => num_err(e),
            e => CliError::Failed(e.to_string()),
        }
    }
}

impl From<SchurError> for CliError {
    fn from(e: SchurError) -> Self {
        match e {
            SchurError::NotAPartition(_) | SchurError::Parse(_) | SchurError::TooManyRows { .. } | SchurError::CapExceeded { .. } => {
                CliError::Usage(e.to_string())
            }
            SchurError::Symmetry(e) => e.into(),
            SchurError::Poincare(e) => e.into(),
            e => CliError::Failed(e.to_string()),
        }
    }
}

impl From<TwistError> for CliError {
    fn from(e: TwistError) -> Self {
        match e {
            TwistError::Symmetry(e) => e.into(),
            TwistError::Schur(e) => e.into(),
            TwistError::Poincare(e) => e.into(),
            TwistError::Num(e) => num_err(e),
            e => CliError::Failed(e.to_string()),
        }
    }
}

impl From<SpectraError> for CliError {
    fn from(e: SpectraError) -> Self {
        match e {
            SpectraError::ClassicalHyperboloid(_)
            | SpectraError::RankTooSmall(_)
            | SpectraError::RootCount { .. }
            | SpectraError::OutOfRange(..)
            | SpectraError::NotHyperboloid
            | SpectraError::TooShort(_) => CliError::Usage(e.to_string()),
            SpectraError::Schur(e) => e.into(),
            e => CliError::Failed(e.to_string()),
        }
    }
}

/// Writes to the output file or standard output.
fn emit(config: &RunConfig, text: &str) -> Result<(), CliError> {
    match &config.output {
        Some(path) => fs::write(path, text).map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes()).and_then(|_| out.flush()).map_err(|e| CliError::Usage(e.to_string()))
        }
    }
}

/// Indented JSON with arrays of plain values kept on one line.
fn render(value: &Value, depth: usize, out: &mut String) {
    let pad = |d: usize, out: &mut String| out.extend(std::iter::repeat_n("  ", d));
    match value {
        Value::Array(items) if items.iter().any(|v| v.is_array() || v.is_object()) => {
            out.push_str("[\n");
            for (k, item) in items.iter().enumerate() {
                pad(depth + 1, out);
                render(item, depth + 1, out);
                out.push_str(if k + 1 < items.len() { ",\n" } else { "\n" });
            }
            pad(depth, out);
            out.push(']');
        }
        Value::Object(map) if !map.is_empty() => {
            out.push_str("{\n");
            for (k, (key, item)) in map.iter().enumerate() {
                pad(depth + 1, out);
                out.push_str(&Value::String(key.clone()).to_string());
                out.push_str(": ");
                render(item, depth + 1, out);
                out.push_str(if k + 1 < map.len() { ",\n" } else { "\n" });
            }
            pad(depth, out);
            out.push('}');
        }
        Value::Array(items) => {
            let parts: Vec<String> = items.iter().map(Value::to_string).collect();
            out.push('[');
            out.push_str(&parts.join(", "));
            out.push(']');
        }
        other => out.push_str(&other.to_string()),
    }
}

fn emit_json<V: Serialize>(config: &RunConfig, value: &V) -> Result<(), CliError> {
    let value = serde_json::to_value(value).map_err(|e| CliError::Usage(e.to_string()))?;
    let mut text = String::new();
    render(&value, 0, &mut text);
    text.push('\n');
    emit(config, &text)
}

/// Emits the report, then turns a failed verdict into exit code 1.
fn verdict<V: Serialize>(config: &RunConfig, value: &V, ok: bool, what: &str) -> Result<(), CliError> {
    emit_json(config, value)?;
    if ok {
        Ok(())
    } else {
        Err(CliError::Failed(what.to_string()))
    }
}

fn read_fixture(path: &Path, config: &RunConfig) -> Result<Fixture, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?;
    let mut fixture: Fixture =
        serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("malformed fixture {}: {e}", path.display())))?;
    if let Some(d) = config.field {
        fixture.field = d;
    }
    Ok(fixture)
}

fn load(path: &Path, config: &RunConfig) -> Result<Symmetry<QuadScalar>, CliError> {
    Ok(read_fixture(path, config)?.to_symmetry()?)
}

fn partition(text: &str) -> Result<Partition, CliError> {
    Ok(text.parse::<Partition>()?)
}

fn cap_of<T: SymScalar>(caps: &Caps) -> usize {
    if T::EXACT {
        caps.exact_m
    } else {
        caps.float_m
    }
}

/// Integers as JSON numbers, anything else in the scalar's own form.
fn quad_json(q: &QuadScalar) -> Value {
    let r = q.rational_part();
    if q.is_rational() && r.is_integer() {
        if let Ok(v) = i64::try_from(r.to_integer()) {
            return json!(v);
        }
    }
    json!(q)
}

fn ratio_json(r: &Ratio<i64>) -> Value {
    if r.is_integer() {
        json!(r.to_integer())
    } else {
        json!(r.to_string())
    }
}

fn series<T: SymScalar>(s: &Symmetry<T>, caps: &Caps, max_k: Option<usize>) -> Result<PoincareData, CliError> {
    let cap = cap_of::<T>(caps);
    let k = max_k.unwrap_or((s.dim() + 1).min(cap));
    if k > cap {
        return Err(CliError::Usage(format!("degree {k} exceeds the configured cap {cap}")));
    }
    Ok(poincare_series(s, k)?)
}

fn even_data<T: SymScalar>(s: &Symmetry<T>, caps: &Caps) -> Result<(usize, Vec<i64>), CliError> {
    let data = series(s, caps, None)?;
    match (data.rank(), data.elementary()) {
        (Some(p), Some(e)) => Ok((p, e)),
        _ => Err(CliError::Failed(format!("symmetry is not even: {:?}", data.classification))),
    }
}

fn poincare_json<T: SymScalar>(s: &Symmetry<T>, caps: &Caps, max_k: Option<usize>) -> Result<(Value, bool), CliError> {
    let data = series(s, caps, max_k)?;
    let failure = series_identity_failure(&data.minus, &data.plus);
    let mut v = serde_json::to_value(&data).map_err(|e| CliError::Usage(e.to_string()))?;
    v["series_identity_failure"] = json!(failure);
    Ok((v, failure.is_none()))
}

fn schur_dim_json<T: SymScalar>(s: &Symmetry<T>, lambda: &Partition, caps: &Caps) -> Result<(Value, bool), CliError> {
    let (_, e) = even_data(s, caps)?;
    let dim_numeric = schur_dim(s, lambda, caps)?;
    let e: Vec<QuadScalar> = e.into_iter().map(QuadScalar::integer).collect();
    let dim_schur = schur_from_elementary(lambda, &e);
    let agree = dim_schur == QuadScalar::integer(dim_numeric as i64);
    Ok((json!({"lambda": lambda, "dim_numeric": dim_numeric, "dim_schur": quad_json(&dim_schur), "agree": agree}), agree))
}

fn casimir_json<T: SymScalar + Serialize>(s: &Symmetry<T>, lambda: &Partition, caps: &Caps) -> Result<(Value, bool), CliError> {
    let (p, _) = even_data(s, caps)?;
    let c = casimir_on_component(s, p, lambda, caps)?;
    let v = json!({
        "lambda": c.lambda,
        "m": c.m,
        "p": c.p,
        "gamma": ratio_json(&c.gamma),
        "eig_gl": ratio_json(&c.eig_gl),
        "eig_sl": ratio_json(&c.eig_sl),
        "scalar": c.scalar,
        "scalar_check": c.scalar_check,
    });
    Ok((v, c.scalar_check))
}

fn verify_cmd(path: &Path, config: &RunConfig) -> Result<(), CliError> {
    let fixture = read_fixture(path, config)?;
    let matrix = fixture.matrix()?;
    let report = if config.float { swlab::symmetry::verify_matrix(fixture.n, &matrix.to_f64()) } else { fixture.verify()? };
    let field = matrix.field().map_err(num_err)?;
    let ok = report.all_hold();
    verdict(config, &json!({"n": fixture.n, "field": field, "report": report, "all_hold": ok}), ok, "verification")
}

fn det_cmd(s: &Symmetry<QuadScalar>, caps: &Caps, config: &RunConfig) -> Result<(), CliError> {
    let (p, _) = even_data(s, caps)?;
    let dp = determinant_pair(s, p)?;
    let mn = mn_matrices(s, &dp);
    let central = centrality(&dp, &mn);
    let ok = dp.pairing == QuadScalar::one() && dp.invariant && mn.product_holds && mn.commutation_holds;
    let v = json!({"p": p, "determinant": dp, "mn": mn, "centrality": central});
    verdict(config, &v, ok, "determinant checks")
}

fn dual_cmd(s: &Symmetry<QuadScalar>, caps: &Caps, config: &RunConfig) -> Result<(), CliError> {
    let (p, _) = even_data(s, caps)?;
    let dp = determinant_pair(s, p)?;
    let duals = dual_tensors(s, &dp)?;
    let mut sides = serde_json::Map::new();
    let mut ok = duals.bc_is_identity;
    for side in [DualSide::Right, DualSide::Left] {
        let ext = crossings(s, side)?;
        ok &= ext.pairing_invariant && ext.copairing_invariant;
        let key = if side == DualSide::Right { "right" } else { "left" };
        sides.insert(
            key.into(),
            json!({
                "pairing_invariant": ext.pairing_invariant,
                "copairing_invariant": ext.copairing_invariant,
                "block": ext.block.verify(),
            }),
        );
    }
    let central = centrality(&dp, &mn_matrices(s, &dp)).central;
    let lie = if central {
        let ext = crossings(s, DualSide::Left)?;
        let lie = lie_data(&ext, &duals, &dp)?;
        json!({"checks": lie.checks, "trace": lie.trace})
    } else {
        Value::Null
    };
    let v = json!({"p": p, "dual": duals, "crossings": sides, "central": central, "lie": lie});
    verdict(config, &v, ok, "dual-space checks")
}

fn fusion_cmd(s: &Symmetry<QuadScalar>, lhs: &Partition, rhs: &Partition, caps: &Caps, config: &RunConfig) -> Result<(), CliError> {
    let (p, e) = even_data(s, caps)?;
    let dp = determinant_pair(s, p)?;
    let central = centrality(&dp, &mn_matrices(s, &dp)).central;
    let result = fuse(lhs, rhs, p, central)?;
    let e: Vec<QuadScalar> = e.into_iter().map(QuadScalar::integer).collect();
    let dims = dim_check(&result, &e);
    let mut v = serde_json::to_value(&result).map_err(|e| CliError::Usage(e.to_string()))?;
    v["dim_lhs"] = quad_json(&dims.dim_lhs);
    v["dim_rhs"] = quad_json(&dims.dim_rhs);
    v["dim_sum"] = quad_json(&dims.dim_sum);
    v["consistent"] = json!(dims.consistent);
    verdict(config, &v, dims.consistent, "dimension identity")
}

fn spectrum_cmd(
    n: Option<i64>,
    input: Option<&Path>,
    levels: usize,
    count: Option<f64>,
    caps: &Caps,
    config: &RunConfig,
) -> Result<(), CliError> {
    let table = match (n, input) {
        (Some(n), None) => hyperboloid_spectrum(n, levels)?,
        (None, Some(path)) => {
            let s = load(path, config)?;
            let data = series(&s, caps, None)?;
            let p = data.rank().ok_or_else(|| CliError::Failed(format!("symmetry is not even: {:?}", data.classification)))?;
            let alpha = alpha_complex(data.alpha.as_ref().expect("even series carry roots"));
            orbit_spectrum_cpn(p, &alpha, levels)?
        }
        _ => return Err(CliError::Usage("give exactly one of --n and --input".into())),
    };
    if let Some(lam) = count {
        let total = count_n(&table, lam)?;
        return emit_json(config, &json!({"lambda": lam, "N": total.to_string()}));
    }
    let mut buf = Vec::new();
    table.write_csv(&mut buf)?;
    emit(config, &String::from_utf8(buf).expect("csv is UTF-8"))
}

fn weyl_cmd(n: i64, levels: usize, csv: Option<&Path>, config: &RunConfig) -> Result<(), CliError> {
    let table = hyperboloid_spectrum(n, levels + 1)?;
    let report = weyl_fit(&table, levels)?;
    if let Some(path) = csv {
        let file = fs::File::create(path).map_err(|e| CliError::Usage(format!("cannot write {}: {e}", path.display())))?;
        table.write_csv_through(file, levels)?;
    }
    emit_json(config, &report)
}

fn make_fixture(name: Option<&str>, list: bool, config: &RunConfig) -> Result<(), CliError> {
    if list {
        return emit_json(config, &FIXTURE_NAMES);
    }
    let name = name.expect("clap requires a name without --list");
    let s = named_fixture(name).ok_or_else(|| CliError::Usage(format!("unknown fixture {name:?}; known: {}", FIXTURE_NAMES.join(", "))))?;
    let mut text = serde_json::to_string(&Fixture::from_symmetry(Some(name), &s)).map_err(|e| CliError::Usage(e.to_string()))?;
    text.push('\n');
    emit(config, &text)
}

pub fn run(cli: &Cli) -> Result<(), CliError> {
    let config = &cli.config;
    if let Some(tol) = config.tol {
        set_check_tol(tol).map_err(num_err)?;
    }
    let caps = config.caps();
    match &cli.command {
        Command::Verify(input) => verify_cmd(&input.input, config),
        Command::Poincare { input, max_k } => {
            let s = load(&input.input, config)?;
            let (v, ok) = if config.float { poincare_json(&s.to_float(), &caps, *max_k)? } else { poincare_json(&s, &caps, *max_k)? };
            verdict(config, &v, ok, "P₊(t)P₋(−t) = 1")
        }
        Command::Det(input) => det_cmd(&load(&input.input, config)?, &caps, config),
        Command::Dual(input) => dual_cmd(&load(&input.input, config)?, &caps, config),
        Command::SchurDim { input, lambda } => {
            let s = load(&input.input, config)?;
            let lambda = partition(lambda)?;
            let (v, ok) = if config.float { schur_dim_json(&s.to_float(), &lambda, &caps)? } else { schur_dim_json(&s, &lambda, &caps)? };
            verdict(config, &v, ok, "Schur dimension")
        }
        Command::Fusion { input, lhs, rhs } => fusion_cmd(&load(&input.input, config)?, &partition(lhs)?, &partition(rhs)?, &caps, config),
        Command::Casimir { input, lambda } => {
            let s = load(&input.input, config)?;
            let lambda = partition(lambda)?;
            let (v, ok) = if config.float { casimir_json(&s.to_float(), &lambda, &caps)? } else { casimir_json(&s, &lambda, &caps)? };
            verdict(config, &v, ok, "Casimir scalar")
        }
        Command::Spectrum { n, input, levels, count } => spectrum_cmd(*n, input.as_deref(), *levels, *count, &caps, config),
        Command::Weyl { n, levels, csv } => weyl_cmd(*n, *levels, csv.as_deref(), config),
        Command::MakeFixture { name, list } => make_fixture(name.as_deref(), *list, config),
    }
}
