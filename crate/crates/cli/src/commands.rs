//! One function per subcommand. Each returns the bytes to print and the
//! exit code instead of printing, which keeps them testable.

use std::fmt::Debug;
use std::path::{Path, PathBuf};

use designlab::arith::{all_pass, gcd};
use designlab::decompose::{full_report, group_section, rank_equality_check, DecomposeError, DecompositionReport, GroupSection, ReportOptions};
use designlab::exceptional::{
    coset_partition, coset_survey, develop, find_difference_set_16_6_2, load_certified, translation_generators,
    CertifyError,
};
use designlab::feasibility::{enumerate_candidates, fermat_candidate, fermat_frame, EnumerateOptions, FeasibilityError, FermatError, ParamCandidate};
use designlab::permgroup::{generators_to_text, parse_generators, CombinedAction, GroupError, PartitionError};
use designlab::{check_identities, verify_2design, DesignParams, IncidenceStructure, Partition, PermGroup, SCHEMA_VERSION};
use serde::Serialize;

use crate::render;

pub struct Context {
    pub json: bool,
    pub seed: u64,
    pub threads: usize,
}

#[derive(Debug)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

const OK: u8 = 0;
const FAILED: u8 = 1;
const INPUT: u8 = 2;

impl Outcome {
    fn success(stdout: String, passed: bool) -> Self {
        Outcome {
            code: if passed { OK } else { FAILED },
            stdout,
            stderr: String::new(),
        }
    }
}

/// Variant path of an error without field values, e.g.
/// `Group(PartitionNotInvariant)`.
pub fn kind_name(err: &impl Debug) -> String {
    let text = format!("{err:?}");
    let mut out = String::new();
    let mut depth = 0usize;
    for ch in text.chars() {
        match ch {
            '{' => depth += 1,
            '}' => depth = depth.saturating_sub(1),
            _ if depth == 0 => out.push(ch),
            _ => {}
        }
    }
    out.replace(" )", ")").trim().to_string()
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    schema_version: u32,
    error: ErrorFields<'a>,
}

#[derive(Serialize)]
struct ErrorFields<'a> {
    kind: &'a str,
    message: &'a str,
}

fn fail(ctx: &Context, code: u8, err: &(impl Debug + std::fmt::Display)) -> Outcome {
    let kind = kind_name(err);
    let message = err.to_string();
    let stdout = if ctx.json {
        to_json(&ErrorBody {
            schema_version: SCHEMA_VERSION,
            error: ErrorFields {
                kind: &kind,
                message: &message,
            },
        })
    } else {
        String::new()
    };
    Outcome {
        code,
        stdout,
        stderr: format!("error [{kind}]: {message}\n"),
    }
}

fn to_json(value: &impl Serialize) -> String {
    serde_json::to_string_pretty(value).expect("output types serialize") + "\n"
}

/// Relative paths that do not exist are looked up under `DESIGNLAB_DATA`.
pub fn resolve(path: &Path) -> PathBuf {
    if path.exists() || path.is_absolute() {
        return path.to_path_buf();
    }
    match std::env::var_os("DESIGNLAB_DATA") {
        Some(dir) => {
            let candidate = Path::new(&dir).join(path);
            if candidate.exists() {
                candidate
            } else {
                path.to_path_buf()
            }
        }
        None => path.to_path_buf(),
    }
}

#[derive(Debug, thiserror::Error)]
#[error("{path}: {message}")]
struct InputError {
    path: String,
    message: String,
}

fn read(ctx: &Context, path: &Path) -> Result<String, Outcome> {
    let path = resolve(path);
    std::fs::read_to_string(&path).map_err(|e| {
        fail(
            ctx,
            INPUT,
            &InputError {
                path: path.display().to_string(),
                message: e.to_string(),
            },
        )
    })
}

fn load_design(ctx: &Context, path: &Path) -> Result<IncidenceStructure, Outcome> {
    let text = read(ctx, path)?;
    IncidenceStructure::parse(&text).map_err(|e| {
        fail(
            ctx,
            INPUT,
            &InputError {
                path: path.display().to_string(),
                message: e.to_string(),
            },
        )
    })
}

fn load_group(ctx: &Context, path: &Path, v: usize) -> Result<PermGroup, Outcome> {
    let text = read(ctx, path)?;
    let gens = parse_generators(&text).map_err(|e| {
        fail(
            ctx,
            INPUT,
            &InputError {
                path: path.display().to_string(),
                message: e.to_string(),
            },
        )
    })?;
    let group = PermGroup::with_seed(gens, ctx.seed).map_err(|e| fail(ctx, INPUT, &e))?;
    if group.degree() != v {
        return Err(fail(
            ctx,
            INPUT,
            &GroupError::DegreeMismatch {
                expected: v,
                found: group.degree(),
            },
        ));
    }
    Ok(group)
}

fn partition_code(e: &PartitionError) -> u8 {
    match e {
        // equal class sizes are a certificate, not a syntax rule
        PartitionError::UnequalClasses { .. } => FAILED,
        _ => INPUT,
    }
}

fn load_partition(ctx: &Context, path: &Path, v: usize) -> Result<Partition, Outcome> {
    let text = read(ctx, path)?;
    Partition::parse(&text, v).map_err(|e| fail(ctx, partition_code(&e), &e))
}

fn params_line(p: &DesignParams) -> String {
    format!("2-({},{},{}), b={}, r={}", p.v, p.k, p.lambda, p.b, p.r)
}

#[derive(Serialize)]
struct VerifyJson<'a> {
    schema_version: u32,
    params: DesignParams,
    identities: &'a [designlab::Check],
    passed: bool,
}

pub fn verify(ctx: &Context, design: &Path) -> Outcome {
    let d = match load_design(ctx, design) {
        Ok(d) => d,
        Err(o) => return o,
    };
    let params = match verify_2design(&d) {
        Ok(p) => p,
        Err(e) => return fail(ctx, FAILED, &e),
    };
    let identities = check_identities(&params);
    let passed = all_pass(&identities);
    let stdout = if ctx.json {
        to_json(&VerifyJson {
            schema_version: SCHEMA_VERSION,
            params,
            identities: &identities,
            passed,
        })
    } else {
        format!(
            "{}; {}\n\n{}",
            params_line(&params),
            if passed { "all identities PASS" } else { "identity FAIL" },
            render::checks(&identities)
        )
    };
    Outcome::success(stdout, passed)
}

fn decompose_code(e: &DecomposeError) -> u8 {
    match e {
        DecomposeError::DegreeMismatch { .. } | DecomposeError::Group(GroupError::DegreeMismatch { .. }) => INPUT,
        _ => FAILED,
    }
}

fn opt<T: ToString>(x: &Option<T>) -> String {
    x.as_ref().map(|v| v.to_string()).unwrap_or_else(|| "-".into())
}

fn group_lines(g: &GroupSection) -> String {
    let subdegrees: Vec<String> = g.class_subdegrees.iter().map(|s| s.to_string()).collect();
    let mut out = render::key_values(&[
        ("|G|", g.order.to_string()),
        (
            "flag-transitive",
            format!("{} (orbit {} of {} flags)", g.flag_transitive, g.flag_orbit.orbit_size, g.flag_orbit.flags),
        ),
        ("induced order |G^Sigma|", g.induced_order.to_string()),
        ("kernel order |G_(Sigma)|", g.kernel_order.to_string()),
        ("class stabilizer |G_Delta^Sigma|", g.class_stabilizer_order.to_string()),
        ("class subdegrees", format!("[{}]", subdegrees.join(", "))),
    ]);
    out += "\npredicates (informational)\n";
    out += &render::checks(&g.predicates);
    out
}

fn report_text(r: &DecompositionReport) -> String {
    let kind = |k| serde_json::to_value(k).ok().and_then(|v| v.as_str().map(String::from)).unwrap_or_default();
    let mut out = render::key_values(&[
        ("design", params_line(&r.design)),
        ("v0 x v1", format!("{} x {}", r.v0, r.v1)),
        ("k0", r.k0.to_string()),
        ("k1", r.k1.to_string()),
        ("mu", r.mu.to_string()),
        ("eta", r.eta.to_string()),
        ("lambda0", opt(&r.lambda0)),
        ("lambda1", opt(&r.lambda1)),
        ("r1", opt(&r.r1)),
        ("b1", r.b1.to_string()),
        (
            "eta0, eta1, r1'",
            r.eta_split
                .as_ref()
                .map(|s| format!("{}, {}, {}", s.eta0, s.eta1, s.r1_prime))
                .unwrap_or_else(|| "-".into()),
        ),
        ("D0", kind(&r.d0_kind)),
        ("D1", kind(&r.d1_kind)),
    ]);
    out += "\n";
    out += &render::checks(&r.identity_certificates);
    if let Some(g) = &r.group {
        out += "\n";
        out += &group_lines(g);
    }
    out += if r.passed() { "\nall certificates PASS\n" } else { "\ncertificate FAIL\n" };
    out
}

pub fn decompose(
    ctx: &Context,
    design: &Path,
    partition: &Path,
    gens: Option<&Path>,
    lambda_prime: bool,
    delta: usize,
) -> Outcome {
    let d = match load_design(ctx, design) {
        Ok(d) => d,
        Err(o) => return o,
    };
    let sigma = match load_partition(ctx, partition, d.v()) {
        Ok(s) => s,
        Err(o) => return o,
    };
    let group = match gens.map(|p| load_group(ctx, p, d.v())).transpose() {
        Ok(g) => g,
        Err(o) => return o,
    };
    if delta >= sigma.v1() {
        return fail(
            ctx,
            INPUT,
            &InputError {
                path: partition.display().to_string(),
                message: format!("class {delta} does not exist; there are {}", sigma.v1()),
            },
        );
    }
    let options = ReportOptions {
        delta,
        require_prime_lambda: lambda_prime,
    };
    match full_report(&d, group.as_ref(), &sigma, options) {
        Ok(report) => {
            let stdout = if ctx.json { to_json(&report) } else { report_text(&report) };
            let passed = report.passed();
            let mut outcome = Outcome::success(stdout, passed);
            for c in report.failed_checks() {
                outcome.stderr += &format!("certificate FAIL: {}\n", c.name);
            }
            outcome
        }
        Err(e) => fail(ctx, decompose_code(&e), &e),
    }
}

fn feasibility_error(ctx: &Context, e: FeasibilityError) -> Outcome {
    fail(ctx, INPUT, &e)
}

pub fn enumerate(ctx: &Context, lambda: u64, keep_rejected: bool, csv: bool) -> Outcome {
    let options = EnumerateOptions {
        threads: ctx.threads,
        keep_rejected,
    };
    let e = match enumerate_candidates(lambda, options) {
        Ok(e) => e,
        Err(err) => return feasibility_error(ctx, err),
    };
    let passed = e.candidates.iter().all(ParamCandidate::passed);
    let stdout = if ctx.json {
        to_json(&e)
    } else if csv {
        let mut out = String::from(ParamCandidate::CSV_HEADER) + "\n";
        for c in e.candidates.iter().chain(&e.rejected) {
            out += &c.to_csv_row();
            out.push('\n');
        }
        out
    } else {
        let mut out = format!("lambda = {lambda}: {} candidates\n\n", e.candidates.len());
        out += &render::candidates(&e.candidates, false);
        if keep_rejected {
            out += &format!("\nrejected: {}\n\n", e.rejected.len());
            out += &render::candidates(&e.rejected, true);
        }
        out
    };
    Outcome::success(stdout, passed)
}

#[derive(Serialize)]
struct GroupJson {
    schema_version: u32,
    #[serde(serialize_with = "designlab::arith::serialize_big")]
    order: num_bigint::BigUint,
    transitive: bool,
    orbits: usize,
    primitive: Option<bool>,
    rank: Option<usize>,
    subdegrees: Option<Vec<usize>>,
    flag_transitive: bool,
    flag_orbit: designlab::permgroup::FlagOrbit,
    design: Option<DesignParams>,
    gcd_r_lambda: Option<u64>,
    rank_on_block: Option<usize>,
    partition: Option<GroupSection>,
}

pub fn group(ctx: &Context, design: &Path, gens: &Path, partition: Option<&Path>) -> Outcome {
    let d = match load_design(ctx, design) {
        Ok(d) => d,
        Err(o) => return o,
    };
    let g = match load_group(ctx, gens, d.v()) {
        Ok(g) => g,
        Err(o) => return o,
    };
    let sigma = match partition.map(|p| load_partition(ctx, p, d.v())).transpose() {
        Ok(s) => s,
        Err(o) => return o,
    };
    if let Err(e) = CombinedAction::new(&g, &d) {
        return fail(ctx, FAILED, &e);
    }
    let flag = match designlab::permgroup::flag_orbit(&g, &d) {
        Ok(f) => f,
        Err(e) => return fail(ctx, FAILED, &e),
    };
    let transitive = g.is_transitive();
    let (primitive, rank, subdegrees) = if transitive {
        (g.is_primitive().ok(), g.rank().ok(), g.subdegrees(0).ok())
    } else {
        (None, None, None)
    };
    let params = verify_2design(&d).ok();
    let gcd_r_lambda = params.map(|p| gcd(p.r, p.lambda));
    let rank_on_block = if flag.is_transitive() {
        rank_equality_check(&g, &d).ok().map(|r| r.rank_on_block)
    } else {
        None
    };
    let section = match &sigma {
        Some(s) => {
            if let Err(e) = g.preserves_partition(s) {
                return fail(ctx, FAILED, &e);
            }
            let from_report = full_report(&d, Some(&g), s, ReportOptions::default())
                .ok()
                .and_then(|r| r.group);
            match from_report {
                Some(section) => Some(section),
                None => match group_section(&g, &d, s, 0, None, None) {
                    Ok(section) => Some(section),
                    Err(e) => return fail(ctx, FAILED, &e),
                },
            }
        }
        None => None,
    };
    let body = GroupJson {
        schema_version: SCHEMA_VERSION,
        order: g.order().clone(),
        transitive,
        orbits: g.orbits().len(),
        primitive,
        rank,
        subdegrees,
        flag_transitive: flag.is_transitive(),
        flag_orbit: flag,
        design: params,
        gcd_r_lambda,
        rank_on_block,
        partition: section,
    };
    let stdout = if ctx.json {
        to_json(&body)
    } else {
        let list = |v: &Option<Vec<usize>>| {
            v.as_ref()
                .map(|s| format!("[{}]", s.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")))
                .unwrap_or_else(|| "-".into())
        };
        let mut out = render::key_values(&[
            ("|G|", body.order.to_string()),
            ("transitive", format!("{} ({} orbits)", body.transitive, body.orbits)),
            ("primitive", opt(&body.primitive)),
            ("rank", opt(&body.rank)),
            ("subdegrees", list(&body.subdegrees)),
            (
                "flag-transitive",
                format!(
                    "{} (orbit {} of {} flags)",
                    body.flag_transitive, body.flag_orbit.orbit_size, body.flag_orbit.flags
                ),
            ),
            ("design", body.design.as_ref().map(params_line).unwrap_or_else(|| "not a 2-design".into())),
            ("gcd(r, lambda)", opt(&body.gcd_r_lambda)),
            ("rank of G_B on B", opt(&body.rank_on_block)),
        ]);
        if let Some(section) = &body.partition {
            out += "\npartition\n";
            out += &group_lines(section);
        }
        out
    };
    Outcome::success(stdout, true)
}

fn fermat_code(e: &FermatError) -> u8 {
    match e {
        FermatError::ScaleLimit { .. } => OK,
        _ => INPUT,
    }
}

fn write_file(ctx: &Context, path: &Path, text: &str) -> Result<(), Outcome> {
    std::fs::write(path, text).map_err(|e| {
        fail(
            ctx,
            INPUT,
            &InputError {
                path: path.display().to_string(),
                message: e.to_string(),
            },
        )
    })
}

pub fn fermat(ctx: &Context, j: u32, emit_frame: Option<&Path>) -> Outcome {
    let record = match fermat_candidate(j) {
        Ok(r) => r,
        Err(e) => return fail(ctx, fermat_code(&e), &e),
    };
    let c = &record.candidate;
    let passed = all_pass(&record.checks) && c.passed();
    let mut stdout = if ctx.json {
        to_json(&record)
    } else {
        let mut out = format!(
            "2-({},{},{}), r={}, b={}, {}\n\n",
            c.v,
            c.k,
            c.lambda,
            c.r,
            opt(&c.b),
            record.status
        );
        out += &render::key_values(&[
            ("q", record.q.to_string()),
            ("v0 x v1", format!("{} x {}", c.v0, c.v1)),
            ("k0, k1", format!("{}, {}", c.k0, c.k1)),
            ("D0", record.d0.clone()),
            ("D1", record.d1.clone()),
        ]);
        out += "\n";
        out += &render::checks(&record.checks);
        out
    };
    let mut stderr = String::new();
    if let Some(dir) = emit_frame {
        match fermat_frame(j) {
            Ok(frame) => match (frame.translation_plane, frame.quotient) {
                (Some((plane, _)), Some((quotient, _))) => {
                    if let Err(e) = std::fs::create_dir_all(dir) {
                        return fail(
                            ctx,
                            INPUT,
                            &InputError {
                                path: dir.display().to_string(),
                                message: e.to_string(),
                            },
                        );
                    }
                    let q = record.q;
                    let files = [
                        (format!("ag2_{q}.txt"), plane.to_text()),
                        (format!("trivial_{}_{}_{}.txt", q + 2, q + 1, q), quotient.to_text()),
                    ];
                    for (name, text) in &files {
                        let path = dir.join(name);
                        if let Err(o) = write_file(ctx, &path, text) {
                            return o;
                        }
                        if !ctx.json {
                            stdout += &format!("wrote {}\n", path.display());
                        }
                    }
                }
                _ => stderr += &format!("note: components for j = {j} are not built; parameters only\n"),
            },
            Err(e) => stderr += &format!("note: {e}\n"),
        }
    }
    Outcome {
        code: if passed { OK } else { FAILED },
        stdout,
        stderr,
    }
}

fn certify_code(e: &CertifyError) -> u8 {
    match e {
        CertifyError::Io { .. } | CertifyError::Parse { .. } => INPUT,
        CertifyError::Partition(p) => partition_code(p),
        CertifyError::Group(GroupError::DegreeMismatch { .. } | GroupError::DegreeTooLarge { .. }) => INPUT,
        _ => FAILED,
    }
}

fn parse_expected(text: &str) -> Option<DesignParams> {
    let parts: Vec<u64> = text.split(',').map(|s| s.trim().parse().ok()).collect::<Option<_>>()?;
    let &[v, b, r, k, lambda] = parts.as_slice() else {
        return None;
    };
    Some(DesignParams::new(v, b, r, k, lambda))
}

pub fn certify(ctx: &Context, design: &Path, gens: &Path, partition: &Path, expect: Option<&str>) -> Outcome {
    let expected = match expect.map(|e| parse_expected(e).ok_or(e)).transpose() {
        Ok(e) => e,
        Err(text) => {
            return fail(
                ctx,
                INPUT,
                &InputError {
                    path: "--expect".into(),
                    message: format!("`{text}` is not `v,b,r,k,lambda`"),
                },
            )
        }
    };
    let cert = match load_certified(&resolve(design), &resolve(gens), &resolve(partition), expected, ctx.seed) {
        Ok(c) => c,
        Err(e) => return fail(ctx, certify_code(&e), &e),
    };
    let stdout = if ctx.json {
        to_json(&cert)
    } else {
        let row = &cert.table_row;
        let mut out = render::key_values(&[
            ("design", params_line(&cert.params)),
            ("|G|", cert.group_order.to_string()),
            ("generators checked", cert.generators_checked.to_string()),
            (
                "flag-transitive",
                format!(
                    "{} (orbit {} of {} flags)",
                    cert.flag_transitive, cert.flag_orbit.orbit_size, cert.flag_orbit.flags
                ),
            ),
            ("imprimitive", cert.imprimitive.to_string()),
            (
                "table row",
                format!("k0={} v0={} v1={} k1={} r={} b={}", row.k0, row.v0, row.v1, row.k1, row.r, row.b),
            ),
        ]);
        out += "\n";
        out += &report_text(&cert.report);
        if !cert.flag_transitive || !cert.imprimitive {
            out += "certificate FAIL: the group must be flag-transitive and imprimitive\n";
        }
        out
    };
    // the report's own identities were already enforced by `load_certified`
    Outcome::success(stdout, cert.flag_transitive && cert.imprimitive)
}

#[derive(Serialize)]
struct BiplaneJson {
    schema_version: u32,
    difference_set: Vec<usize>,
    params: DesignParams,
    constant_coset_partitions: usize,
    first_constant_subgroup: Option<[usize; 4]>,
}

pub fn biplane(ctx: &Context, emit: Option<&Path>) -> Outcome {
    let ds = find_difference_set_16_6_2();
    let d = develop(&ds);
    let params = match verify_2design(&d) {
        Ok(p) => p,
        Err(e) => return fail(ctx, FAILED, &e),
    };
    let survey = coset_survey(&d);
    let constant: Vec<[usize; 4]> = survey.iter().filter(|(_, k0)| k0.is_some()).map(|(h, _)| *h).collect();
    let body = BiplaneJson {
        schema_version: SCHEMA_VERSION,
        difference_set: ds.elements.clone(),
        params,
        constant_coset_partitions: constant.len(),
        first_constant_subgroup: constant.first().copied(),
    };
    let mut stdout = if ctx.json {
        to_json(&body)
    } else {
        render::key_values(&[
            ("difference set", format!("{:?}", body.difference_set)),
            ("developed design", params_line(&params)),
            ("coset partitions with constant k0", format!("{} of {}", constant.len(), survey.len())),
            ("first such subgroup", opt(&body.first_constant_subgroup.map(|h| format!("{h:?}")))),
        ])
    };
    if let (Some(dir), Some(h)) = (emit, body.first_constant_subgroup) {
        if let Err(e) = std::fs::create_dir_all(dir) {
            return fail(
                ctx,
                INPUT,
                &InputError {
                    path: dir.display().to_string(),
                    message: e.to_string(),
                },
            );
        }
        let files = [
            ("biplane16.txt", d.to_text()),
            ("biplane16.translations.gens", generators_to_text(&translation_generators())),
            ("biplane16.partition", coset_partition(&h).to_text()),
        ];
        for (name, text) in &files {
            let path = dir.join(name);
            if let Err(o) = write_file(ctx, &path, text) {
                return o;
            }
            if !ctx.json {
                stdout += &format!("wrote {}\n", path.display());
            }
        }
    }
    Outcome::success(stdout, true)
}
