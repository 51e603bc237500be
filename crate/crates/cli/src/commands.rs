use std::fs;

use shapeforge::asymptotics::{
    asym_count, asym_pi_expected, convergence_report, dominant_singularity,
    pi_distribution_params, AsymptoticTarget, Family, Parity,
};
use shapeforge::exact::Counts;
use shapeforge::paths::{
    decode1, decode2, encode1, encode2, enumerate_paths_with_limit, parse_path, PathKind,
    MAX_ENUMERATION_SIZE,
};
use shapeforge::series::{
    compatible_counts, expand_g, expand_level0_gf, verify_identity, GForm, Identity, ParamRange,
};
use shapeforge::structure::{
    analyze_elements, generate_island_diagrams_with_limit, to_island_diagram, to_pi, to_pi_prime,
    SecondaryStructure, MAX_ISLAND_PAIRS,
};

use crate::output::{Cell, Report};
use crate::{
    AsymptoticsTarget, BijectionOp, CliError, CountFamily, CountParams, DistributionFamily,
    GFormArg, Input, Kind, Level, MAX_N_ENV,
};

fn read_inputs(input: &Input) -> Result<Vec<String>, CliError> {
    if let Some(text) = &input.text {
        return Ok(vec![text.trim().to_owned()]);
    }
    let path = input.file.as_ref().expect("clap requires --in or --file");
    let content = fs::read_to_string(path).map_err(|e| CliError::Input {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    Ok(content
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#') && !l.starts_with('>'))
        .map(str::to_owned)
        .collect())
}

fn parse_structures(input: &Input) -> Result<Vec<(String, SecondaryStructure)>, CliError> {
    let lines = read_inputs(input)?;
    let many = lines.len() > 1;
    lines
        .into_iter()
        .enumerate()
        .map(|(i, line)| match SecondaryStructure::parse(&line) {
            Ok(ss) => Ok((line, ss)),
            Err(e) if many => Err(CliError::Domain(format!("line {}: {e}", i + 1))),
            Err(e) => Err(CliError::domain(e)),
        })
        .collect()
}

/// Enumeration guard, raised by `SHAPEFORGE_MAX_N`.
fn guard(default: usize) -> Result<usize, CliError> {
    match std::env::var(MAX_N_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| CliError::Usage(format!("{MAX_N_ENV} must be a non-negative integer, got {v:?}"))),
        Err(_) => Ok(default),
    }
}

pub fn validate(input: &Input) -> Result<Report, CliError> {
    let structures = parse_structures(input)?;
    let mut report = Report::new("validate").columns("structures", &["structure", "length", "pairs"]);
    for (line, ss) in &structures {
        report.row(vec![line.as_str().into(), ss.len().into(), ss.num_pairs().into()]);
    }
    Ok(report)
}

pub fn analyze(input: &Input) -> Result<Report, CliError> {
    let structures = parse_structures(input)?;
    let mut report = Report::new("analyze").columns(
        "structures",
        &[
            "structure",
            "length",
            "pairs",
            "hairpins",
            "bulges",
            "interior_loops",
            "multiloops",
            "tails",
            "stacks",
            "islands",
            "external_components",
        ],
    );
    let mut details = Vec::with_capacity(structures.len());
    for (line, ss) in &structures {
        let e = analyze_elements(ss);
        report.row(vec![
            line.as_str().into(),
            ss.len().into(),
            ss.num_pairs().into(),
            e.hairpins.len().into(),
            e.bulges.len().into(),
            e.interior_loops.len().into(),
            e.multiloops.len().into(),
            e.tails.len().into(),
            e.stacks.len().into(),
            e.islands.len().into(),
            e.external_components.into(),
        ]);
        details.push(e);
    }
    report.json_field("elements", &details)
}

pub fn abstract_shapes(level: Level, input: &Input) -> Result<Report, CliError> {
    let structures = parse_structures(input)?;
    let level_name = match level {
        Level::Island => "island",
        Level::PiPrime => "pi-prime",
        Level::Pi => "pi",
    };
    let mut shapes = Vec::with_capacity(structures.len());
    for (_, ss) in &structures {
        let shape = match level {
            Level::Island => to_island_diagram(ss).to_string(),
            Level::PiPrime => to_pi_prime(ss).to_string(),
            Level::Pi => to_pi(&to_pi_prime(ss)).map_err(CliError::domain)?.to_string(),
        };
        shapes.push(shape);
    }
    let mut report = Report::new("abstract")
        .json_field("level", level_name)?
        .columns("shapes", &["structure", "shape"])
        .plain_column(1);
    for ((line, _), shape) in structures.into_iter().zip(shapes) {
        report.row(vec![line.into(), shape.into()]);
    }
    Ok(report)
}

fn path_kind(kind: Kind) -> PathKind {
    match kind {
        Kind::Motzkin1 => PathKind::Motzkin1,
        Kind::Motzkin2 => PathKind::Motzkin2,
    }
}

pub fn bijection(
    op: BijectionOp,
    path: Option<String>,
    text: Option<String>,
    kind: Kind,
    n: Option<usize>,
) -> Result<Report, CliError> {
    let need_path = |name: &str| path.clone().ok_or_else(|| CliError::missing("--path", name));
    let need_text = |name: &str| text.clone().ok_or_else(|| CliError::missing("--in", name));
    let (input, output) = match op {
        BijectionOp::Encode2 => {
            let p = need_path("encode2")?;
            let lp = parse_path(&p, PathKind::Motzkin2).map_err(CliError::domain)?;
            (p, encode2(&lp).map_err(CliError::domain)?.to_string())
        }
        BijectionOp::Encode1 => {
            let p = need_path("encode1")?;
            let lp = parse_path(&p, PathKind::Motzkin1).map_err(CliError::domain)?;
            (p, encode1(&lp).map_err(CliError::domain)?.to_string())
        }
        BijectionOp::Decode2 => {
            let s = need_text("decode2")?;
            let lp = decode2(&s).map_err(CliError::domain)?;
            (s, lp.to_string())
        }
        BijectionOp::Decode1 => {
            let s = need_text("decode1")?;
            let lp = decode1(&s).map_err(CliError::domain)?;
            (s, lp.to_string())
        }
        BijectionOp::List => return list_bijection(kind, n),
    };
    let mut report = Report::new("bijection")
        .json_field("op", op_name(op))?
        .json_field("input", &input)?
        .columns("output", &["output"]);
    report.row(vec![output.into()]);
    Ok(report)
}

fn op_name(op: BijectionOp) -> &'static str {
    match op {
        BijectionOp::Encode2 => "encode2",
        BijectionOp::Decode2 => "decode2",
        BijectionOp::Encode1 => "encode1",
        BijectionOp::Decode1 => "decode1",
        BijectionOp::List => "list",
    }
}

fn list_bijection(kind: Kind, n: Option<usize>) -> Result<Report, CliError> {
    let n = n.ok_or_else(|| CliError::missing("--n", "bijection list"))?;
    let kind = path_kind(kind);
    let paths = enumerate_paths_with_limit(n, kind, guard(MAX_ENUMERATION_SIZE)?)
        .map_err(CliError::domain)?;
    let mut report = Report::new("bijection")
        .json_field("op", "list")?
        .json_field("kind", kind.to_string())?
        .json_field("n", n)?
        .columns("pairs", &["path", "image", "r0"]);
    for p in paths {
        let image = match kind {
            PathKind::Motzkin1 => encode1(&p).map_err(CliError::domain)?.to_string(),
            _ => encode2(&p).map_err(CliError::domain)?.to_string(),
        };
        report.row(vec![p.to_string().into(), image.into(), p.stats().r0.into()]);
    }
    Ok(report)
}

fn need(v: Option<u32>, flag: &str, what: &str) -> Result<i64, CliError> {
    v.map(i64::from).ok_or_else(|| CliError::missing(flag, what))
}

pub fn count(family: CountFamily, p: &CountParams) -> Result<Report, CliError> {
    let c = Counts::new();
    let dom = CliError::domain;
    let mut report = Report::new("count");
    match family {
        CountFamily::Binomial => {
            let n = need(p.n, "--n", "binomial")?;
            report = report.json_field("family", "binomial")?.columns("counts", &["n", "k", "count"]);
            let ks: Vec<i64> = match p.k {
                Some(k) => vec![k.into()],
                None => (0..=n).collect(),
            };
            for k in ks {
                report.row(vec![int(n), int(k), big(c.binomial(n, k).map_err(dom)?)]);
            }
        }
        CountFamily::Catalan | CountFamily::Motzkin => {
            let what = if matches!(family, CountFamily::Catalan) { "catalan" } else { "motzkin" };
            let n = need(p.n, "--n", what)?;
            report = report.json_field("family", what)?.columns("counts", &["n", "count"]);
            let v = if what == "catalan" { c.catalan(n) } else { c.motzkin_number(n) };
            report.row(vec![int(n), big(v.map_err(dom)?)]);
        }
        CountFamily::Narayana | CountFamily::MotzkinPoly => {
            let what = if matches!(family, CountFamily::Narayana) { "narayana" } else { "motzkin_poly" };
            let n = need(p.n, "--n", what)?;
            report = report.json_field("family", what)?.columns("counts", &["n", "k", "count"]);
            let ks: Vec<i64> = match p.k {
                Some(k) => vec![k.into()],
                None if what == "narayana" => (1..=n.max(1)).collect(),
                None => (0..=n / 2).collect(),
            };
            for k in ks {
                let v = if what == "narayana" {
                    c.narayana(n, k)
                } else {
                    c.motzkin_poly_coeff(n, k)
                };
                report.row(vec![int(n), int(k), big(v.map_err(dom)?)]);
            }
        }
        CountFamily::Convolution => {
            let u = need(p.u, "--u", "convolution")?;
            report = report.json_field("family", "convolution")?.columns("counts", &["u", "p", "count"]);
            let ps: Vec<i64> = match p.p {
                Some(q) => vec![q.into()],
                None => (1..=u.max(1)).collect(),
            };
            for q in ps {
                report.row(vec![int(u), int(q), big(c.catalan_convolution(u, q).map_err(dom)?)]);
            }
        }
        CountFamily::Fibonacci => {
            let a = need(p.a, "--a", "fibonacci")?;
            let b = need(p.b, "--b", "fibonacci")?;
            report = report.json_field("family", "fibonacci")?.columns("counts", &["a", "b", "count"]);
            report.row(vec![int(a), int(b), big(c.fib_poly_coeff(a, b))]);
        }
        CountFamily::Level0 => {
            let n = need(p.n, "--n", "level0")?;
            let r0s: Vec<i64> = match p.r0 {
                Some(r) => vec![r.into()],
                None => (0..=n).collect(),
            };
            report = report.json_field("family", "level0")?;
            match p.u {
                Some(u) => {
                    let u = i64::from(u);
                    report = report.columns("counts", &["n", "r0", "u", "count"]);
                    for r0 in r0s {
                        report.row(vec![int(n), int(r0), int(u), big(c.level0_count(r0, n, u).map_err(dom)?)]);
                    }
                }
                None => {
                    report = report.columns("counts", &["n", "r0", "count"]);
                    for r0 in r0s {
                        report.row(vec![int(n), int(r0), big(c.level0_total(r0, n).map_err(dom)?)]);
                    }
                }
            }
        }
        CountFamily::Level0Weighted => {
            let n = need(p.n, "--n", "level0-weighted")?;
            report = report.json_field("family", "level0_weighted")?.columns("counts", &["n", "count"]);
            report.row(vec![int(n), big(c.level0_weighted_sum(n).map_err(dom)?)]);
        }
        CountFamily::Island => {
            let ell = need(p.ell, "--ell", "island")?;
            report = report.json_field("family", "island")?.columns("counts", &["ell", "h", "islands", "count"]);
            match (p.h, p.islands) {
                (Some(h), Some(i)) => {
                    let (h, i) = (i64::from(h), i64::from(i));
                    report.row(vec![int(ell), int(h), int(i), big(c.island_count(h, i, ell).map_err(dom)?)]);
                }
                (h, _) => {
                    let hs: Vec<i64> = match h {
                        Some(h) => vec![h.into()],
                        None => (1..=ell).collect(),
                    };
                    for h in hs {
                        for i in h + 1..=2 * ell {
                            let v = c.island_count(h, i, ell).map_err(dom)?;
                            if v != 0.into() {
                                report.row(vec![int(ell), int(h), int(i), big(v)]);
                            }
                        }
                    }
                }
            }
        }
        CountFamily::IslandDiagrams => {
            let ell = need(p.ell, "--ell", "island-diagrams")? as usize;
            let diagrams = generate_island_diagrams_with_limit(ell, guard(MAX_ISLAND_PAIRS)?).map_err(CliError::domain)?;
            report = report
                .json_field("family", "island_diagrams")?
                .field("total", diagrams.len())
                .columns("diagrams", &["diagram", "hairpins", "islands"]);
            for d in diagrams {
                let s = d.stats();
                report.row(vec![d.to_string().into(), s.hairpins.into(), s.islands.into()]);
            }
        }
        CountFamily::G | CountFamily::Level0Gf => {
            let order = p.order.ok_or_else(|| CliError::missing("--order", "series expansions"))?;
            let (name, series) = if matches!(family, CountFamily::G) {
                let form = match p.form {
                    GFormArg::Narayana => GForm::Narayana,
                    GFormArg::Closed => GForm::Closed,
                    GFormArg::Motzkin2 => GForm::Motzkin2,
                };
                ("g", expand_g(order, form).map_err(CliError::domain)?)
            } else {
                ("level0_gf", expand_level0_gf(order).map_err(CliError::domain)?)
            };
            report = report.json_field("family", name)?.columns("coefficients", &["k", "coefficient"]);
            for (k, coeff) in series.coeffs().iter().enumerate() {
                report.row(vec![k.into(), coeff.to_string().into()]);
            }
        }
    }
    Ok(report)
}

fn int(v: i64) -> Cell {
    Cell::Int(v)
}

/// Exact counts are text so that JSON readers never round them.
fn big(v: impl ToString) -> Cell {
    Cell::Text(v.to_string())
}

/// The report and, when an instance failed, a one-line description of it.
pub fn verify(name: &str, lo: Option<u32>, hi: Option<u32>) -> Result<(Report, Option<String>), CliError> {
    let identities: Vec<Identity> = if name == "all" {
        if lo.is_some() || hi.is_some() {
            return Err(CliError::Usage("--lo/--hi need a single identity, not all".into()));
        }
        Identity::ALL.to_vec()
    } else {
        let known: Vec<&str> = Identity::ALL.iter().map(|i| i.name()).collect();
        let identity = name.parse().map_err(|_| {
            CliError::Usage(format!("unknown identity {name:?}; expected all or one of {}", known.join(", ")))
        })?;
        vec![identity]
    };
    let mut report = Report::new("verify").columns(
        "identities",
        &["identity", "range", "status", "instances", "counterexample"],
    );
    let mut failure = None;
    let mut details = Vec::with_capacity(identities.len());
    for identity in identities {
        let default = identity.default_range();
        let range = ParamRange {
            lo: lo.unwrap_or(default.lo),
            hi: hi.unwrap_or(default.hi),
        };
        let r = verify_identity(identity, range).map_err(CliError::domain)?;
        let counter = r.counterexample.as_ref().map(|c| c.parameter.clone());
        if !r.passed() && failure.is_none() {
            failure = Some(format!(
                "identity {} failed at {}",
                r.name,
                counter.as_deref().unwrap_or("an instance")
            ));
        }
        let status = if r.passed() { "pass" } else { "fail" };
        report.row(vec![
            r.name.as_str().into(),
            range.to_string().into(),
            status.into(),
            r.instances.len().into(),
            counter.into(),
        ]);
        details.push(r);
    }
    let report = report.json_field("reports", &details)?;
    Ok((report, failure))
}

pub fn distribution(
    family: DistributionFamily,
    n: Option<usize>,
    lambda: Option<usize>,
    nu: Option<usize>,
    r0_max: usize,
) -> Result<Report, CliError> {
    let family = match family {
        DistributionFamily::Level0 => Family::Level0 {
            n: n.ok_or_else(|| CliError::missing("--n", "distribution level0"))?,
        },
        DistributionFamily::Pi => Family::Pi {
            lambda: lambda.ok_or_else(|| CliError::missing("--lambda", "distribution pi"))?,
            nu: nu.ok_or_else(|| CliError::missing("--nu", "distribution pi"))?,
        },
    };
    let conv = convergence_report(family, r0_max).map_err(CliError::domain)?;
    let mut report = Report::new("distribution").json_field("parameters", family)?;
    report = report
        .field("expected_r0", conv.expected_r0)
        .field("asymptotic_expected_r0", conv.asymptotic_expected_r0)
        .field("max_deviation", conv.max_deviation())
        .columns("rows", &["r0", "exact", "asymptotic", "deviation"]);
    for r in &conv.rows {
        report.row(vec![r.r0.into(), r.exact.into(), r.asymptotic.into(), r.deviation.into()]);
    }
    Ok(report)
}

pub fn asymptotics(
    target: AsymptoticsTarget,
    n: Option<usize>,
    r0: Option<usize>,
    lambda: Option<usize>,
    nu: Option<usize>,
) -> Result<Report, CliError> {
    let name = match target {
        AsymptoticsTarget::MotzkinNumber => "motzkin_number",
        AsymptoticsTarget::Level0Total => "level0_total",
        AsymptoticsTarget::Level0WeightedSum => "level0_weighted_sum",
        AsymptoticsTarget::PiTotal => "pi_total",
        AsymptoticsTarget::PiR0 => "pi_r0",
        AsymptoticsTarget::PiWeightedSum => "pi_weighted_sum",
        AsymptoticsTarget::Zeta => {
            let lambda = lambda.ok_or_else(|| CliError::missing("--lambda", "asymptotics zeta"))?;
            return zeta(lambda);
        }
    };
    let target = AsymptoticTarget::from_name(name, n, r0, lambda, nu)
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let r = asym_count(target).map_err(CliError::domain)?;
    let mut report = Report::new("asymptotics").field("target", name);
    let params = match target {
        AsymptoticTarget::MotzkinNumber { n } | AsymptoticTarget::Level0WeightedSum { n } => {
            vec![("n", n)]
        }
        AsymptoticTarget::Level0Total { r0, n } => vec![("r0", r0), ("n", n)],
        AsymptoticTarget::PiTotal { lambda, nu } | AsymptoticTarget::PiWeightedSum { lambda, nu } => {
            vec![("lambda", lambda), ("nu", nu)]
        }
        AsymptoticTarget::PiR0 { lambda, r0, nu } => vec![("lambda", lambda), ("r0", r0), ("nu", nu)],
    };
    for (key, value) in params {
        report = report.field(key, value);
    }
    let report = report
        .field("exact", r.exact.to_string())
        .field("ln_asymptotic", r.ln_asymptotic)
        .field("asymptotic", r.asymptotic)
        .field("ratio", r.ratio);
    Ok(report)
}

fn zeta(lambda: usize) -> Result<Report, CliError> {
    let s = dominant_singularity(lambda).map_err(CliError::domain)?;
    let (a, b) = pi_distribution_params(&s);
    let expected = asym_pi_expected(&s);
    Ok(Report::new("asymptotics")
        .field("target", "zeta")
        .field("lambda", lambda)
        .field("zeta", s.zeta)
        .field("lo", s.lo.to_string())
        .field("hi", s.hi.to_string())
        .field(
            "parity",
            match s.parity {
                Parity::Even => "even",
                Parity::Odd => "odd",
            },
        )
        .field("cofactor_at_zeta", s.cofactor_at_zeta)
        .field("residual", s.residual())
        .field("a", a)
        .field("b", b)
        .field("expected_r0", expected)
        .field("expected_components", expected + 1.0))
}

pub fn compatible(lambda: usize, nu: usize, r0_max: Option<usize>) -> Result<Report, CliError> {
    let table = compatible_counts(lambda, nu).map_err(CliError::domain)?;
    let mut report = Report::new("compatible")
        .field("lambda", lambda)
        .field("nu", nu)
        .field("total", table.total(nu).to_string())
        .field("weighted_sum", table.weighted_sum(nu).to_string())
        .columns("rows", &["r0", "count"]);
    for (r0, c) in table.row(nu).iter().enumerate() {
        if r0_max.is_some_and(|m| r0 > m) {
            break;
        }
        report.row(vec![r0.into(), big(c)]);
    }
    Ok(report)
}
