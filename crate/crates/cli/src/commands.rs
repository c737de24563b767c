use std::fs;
use std::path::Path;

use serde_json::{json, Map, Value};
use ziegler::chainring::{
    consistent_bruteforce, consistent_criterion, goursat_check, invariant, pp_leq, zg, ChainRing, EPair, FinModule,
};
use ziegler::invariant::dvr::{dvr_in_wset, dvr_pair_to_point};
use ziegler::invariant::{in_wset, pair_to_point, wset_witness, UpsetPair, WSet};
use ziegler::nearly_simple::{example_quotient_iso, example_space, ns_space, NsExamplePoint};
use ziegler::ringspec::RingSpec;
use ziegler::topology::{to_dot, trichotomy_report, FiniteSpace};
use ziegler::Exec;

use crate::error::{invalid, CliError};
use crate::model::{Model, Point};
use crate::report::{envelope, validate_report};
use crate::{ChainArgs, ChainOp, Cli, Command, Format};

/// Largest ring order for the Goursat table.
pub const GOURSAT_MAX_ORDER: u64 = 1 << 10;

type Out = Result<String, CliError>;

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| invalid(format!("cannot read {}: {e}", path.display())))
}

fn load(path: &Path) -> Result<Model, CliError> {
    Ok(Model::new(RingSpec::parse(&read(path)?)?))
}

fn parse_json(flag: &str, text: &str) -> Result<Value, CliError> {
    serde_json::from_str(text).map_err(|e| invalid(format!("--{flag}: {e}")))
}

fn only(format: Format, allowed: &[Format], command: &str) -> Result<(), CliError> {
    if allowed.contains(&format) {
        Ok(())
    } else {
        Err(invalid(format!("{command} does not support --format {format:?}").to_lowercase()))
    }
}

fn json_line(v: Map<String, Value>) -> Out {
    Ok(format!("{}\n", Value::Object(v)))
}

fn csv_table(header: &[&str], rows: &[Vec<String>]) -> Out {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| invalid(e.to_string());
    w.write_record(header).map_err(io)?;
    for row in rows {
        w.write_record(row).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| invalid(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| invalid(e.to_string()))
}

/// The truncation a report was computed at, `null` when the spectrum is finite.
fn truncation_value(spec: &RingSpec, n: u64) -> Value {
    match spec {
        RingSpec::Dvr | RingSpec::Exceptional(_) => json!(n),
        _ => Value::Null,
    }
}

pub(crate) fn dispatch(cli: Cli) -> Out {
    let format = cli.format;
    match cli.command {
        Command::Points { ring, truncate } => points(&load(&ring.ring)?, truncate, format),
        Command::Closure { ring, set } => {
            only(format, &[Format::Json], "closure")?;
            let model = load(&ring.ring)?;
            let set = model.parse_set(&parse_json("set", &set)?)?;
            let closure = model.closure(&set)?;
            let mut out = envelope("closure", &model);
            out.extend(model.set_json(&closure));
            json_line(out)
        }
        Command::IsClosed { ring, set } => {
            only(format, &[Format::Json], "is-closed")?;
            let model = load(&ring.ring)?;
            let set = model.parse_set(&parse_json("set", &set)?)?;
            let mut out = envelope("is-closed", &model);
            out.insert("closed".into(), json!(model.is_closed(&set)?));
            out.insert("set".into(), Value::Object(model.set_json(&set)));
            json_line(out)
        }
        Command::Specializes { ring, x, y } => {
            only(format, &[Format::Json], "specializes")?;
            let model = load(&ring.ring)?;
            let x = model.parse_point(&parse_json("x", &x)?)?;
            let y = model.parse_point(&parse_json("y", &y)?)?;
            let mut out = envelope("specializes", &model);
            out.insert("specializes".into(), json!(model.specializes(&x, &y)?));
            out.insert("x".into(), model.point_json(&x));
            out.insert("y".into(), model.point_json(&y));
            json_line(out)
        }
        Command::PairToPoint { ring, pair } => {
            only(format, &[Format::Json], "pair-to-point")?;
            let model = load(&ring.ring)?;
            let pair = parse_pair(&model, &parse_json("pair", &pair)?)?;
            let point = pair_point(&model, &pair)?;
            let mut out = envelope("pair-to-point", &model);
            out.insert("label".into(), json!(model.label(&point)));
            out.insert("pair".into(), pair.to_json());
            out.insert("point".into(), model.point_json(&point));
            json_line(out)
        }
        Command::InWset { ring, wset, point, pair, max_box } => {
            only(format, &[Format::Json], "in-wset")?;
            in_wset_report(&load(&ring.ring)?, &wset, point.as_deref(), pair.as_deref(), max_box)
        }
        Command::CheckSober { ring, truncate } => check_sober(&load(&ring.ring)?, truncate, format),
        Command::T0Quotient { ring, truncate } => t0_quotient(&load(&ring.ring)?, truncate, format),
        Command::Chain { op } => chain(op, format),
        Command::Validate { ring, report } => {
            only(format, &[Format::Json], "validate")?;
            let mut out = Map::new();
            out.insert("v".into(), json!(1));
            out.insert("command".into(), json!("validate"));
            if let Some(path) = ring {
                out.insert("ring".into(), load(&path)?.spec().to_json());
            }
            if let Some(path) = report {
                let value: Value = serde_json::from_str(&read(&path)?)
                    .map_err(|e| invalid(format!("{}: {e}", path.display())))?;
                let command = validate_report(&value)?;
                out.insert("report".into(), json!(command));
            }
            out.insert("valid".into(), json!(true));
            json_line(out)
        }
    }
}

fn points(model: &Model, truncate: Option<u64>, format: Format) -> Out {
    let n = truncate.unwrap_or(crate::DEFAULT_TRUNCATION);
    if let RingSpec::InvariantDense(_) = model.spec() {
        only(format, &[Format::Json], "points for a dense value group")?;
        let mut out = envelope("points", model);
        let families = ["val", "val+", "val-", "inf", "inf+", "inf-"];
        out.insert("families".into(), json!(families));
        return json_line(out);
    }
    let pts = model.points(n)?;
    match format {
        Format::Dot => model.with_space(n, |space, _| Ok(to_dot(space, model.spec().kind()))),
        Format::Csv => {
            let rows: Vec<Vec<String>> = pts
                .iter()
                .map(|p| {
                    let meta = model.meta_json(p);
                    let field = |k: &str| {
                        meta.as_ref().and_then(|m| m[k].as_str()).map(str::to_string).unwrap_or_default()
                    };
                    vec![model.label(p), field("ass"), field("div"), field("ann")]
                })
                .collect();
            csv_table(&["label", "ass", "div", "ann"], &rows)
        }
        Format::Json => {
            let mut entries = Vec::new();
            for x in &pts {
                let mut closure = Vec::new();
                for y in &pts {
                    if model.specializes(x, y)? {
                        closure.push(model.label(y));
                    }
                }
                let mut e = Map::new();
                e.insert("closure".into(), json!(closure));
                e.insert("label".into(), json!(model.label(x)));
                if let Some(meta) = model.meta_json(x) {
                    e.insert("meta".into(), meta);
                }
                e.insert("point".into(), model.point_json(x));
                entries.push(Value::Object(e));
            }
            let mut out = envelope("points", model);
            out.insert("points".into(), Value::Array(entries));
            out.insert("truncate".into(), truncation_value(model.spec(), n));
            json_line(out)
        }
    }
}

pub(crate) fn parse_pair(model: &Model, v: &Value) -> Result<UpsetPair, CliError> {
    let g = model.group()?;
    let pair = UpsetPair::from_json(v, g.d())?;
    pair.validate(&g)?;
    Ok(pair)
}

pub(crate) fn pair_point(model: &Model, pair: &UpsetPair) -> Result<Point, CliError> {
    let g = model.group()?;
    Ok(match model.spec() {
        RingSpec::Dvr => Point::Dvr(dvr_pair_to_point(pair, &g)?),
        _ => Point::Dense(pair_to_point(pair, &g)?),
    })
}

pub(crate) fn member(model: &Model, point: &Point, w: &WSet) -> Result<bool, CliError> {
    Ok(match point {
        Point::Dvr(p) => dvr_in_wset(*p, w, &model.group()?)?,
        Point::Dense(p) => in_wset(p, w),
        _ => unreachable!("W-sets are parsed only for invariant rings"),
    })
}

fn in_wset_report(model: &Model, wset: &str, point: Option<&str>, pair: Option<&str>, max_box: u64) -> Out {
    let g = model.group()?;
    let w = WSet::from_json(&parse_json("wset", wset)?, g.d())?;
    w.validate(&g)?;
    let mut out = envelope("in-wset", model);
    let pt = match (point, pair) {
        (Some(text), _) => model.parse_point(&parse_json("point", text)?)?,
        (None, Some(text)) => {
            let p = parse_pair(model, &parse_json("pair", text)?)?;
            let pt = pair_point(model, &p)?;
            let witness = wset_witness(&p, &w, &g, max_box, Exec::default())?;
            if witness.is_none() && member(model, &pt, &w)? {
                return Err(CliError::Bound(format!("no witness μ with coefficients within {max_box}")));
            }
            out.insert("pair".into(), p.to_json());
            out.insert("witness".into(), witness.map_or(Value::Null, |mu| mu.to_json()));
            pt
        }
        (None, None) => return Err(invalid("one of --point or --pair is required")),
    };
    out.insert("member".into(), json!(member(model, &pt, &w)?));
    out.insert("point".into(), model.point_json(&pt));
    out.insert("wset".into(), w.to_json());
    json_line(out)
}

fn check_sober(model: &Model, n: u64, format: Format) -> Out {
    only(format, &[Format::Json, Format::Dot], "check-sober")?;
    model.with_space(n, |space, ctx| {
        if format == Format::Dot {
            return Ok(to_dot(space, model.spec().kind()));
        }
        let report = space.check_sober(Exec::default())?;
        let mut irreducibles = Vec::new();
        let mut all_witnessed = true;
        for irr in &report.irreducibles {
            let witness = trichotomy_report(ctx, irr.set)?;
            all_witnessed &= witness.is_some();
            irreducibles.push(json!({
                "set": space.labels_of(irr.set),
                "generics": irr.generics.iter().map(|&g| space.label(g)).collect::<Vec<_>>(),
                "witness": witness.map_or(Value::Null, |w| w.to_json(space)),
            }));
        }
        let mut out = envelope("check-sober", model);
        out.insert("irreducibles".into(), Value::Array(irreducibles));
        out.insert("points".into(), json!(space.labels()));
        out.insert("sober".into(), json!(report.sober));
        out.insert("trichotomy".into(), json!(all_witnessed));
        out.insert("truncate".into(), truncation_value(model.spec(), n));
        json_line(out)
    })
}

/// `(quotient, members per class)`, with class names from the quotient.
fn quotient_classes(space: &FiniteSpace) -> (FiniteSpace, Vec<Vec<String>>) {
    let (q, class) = space.t0_quotient();
    let members = (0..q.len())
        .map(|c| (0..space.len()).filter(|&x| class[x] == c).map(|x| space.label(x).to_string()).collect())
        .collect();
    (q, members)
}

fn t0_quotient(model: &Model, n: u64, format: Format) -> Out {
    only(format, &[Format::Json, Format::Dot], "t0-quotient")?;
    let (quotient, members, points) = match model.spec() {
        RingSpec::NearlySimple => {
            // The six-point model: rename each class by its point of the four-point spectrum.
            let space = example_space();
            let (q, members) = quotient_classes(&space);
            let (_, iso) = example_quotient_iso().ok_or_else(|| invalid("quotient does not match the spectrum"))?;
            let target = ns_space();
            let names: Vec<String> = iso.iter().map(|&i| target.label(i).to_string()).collect();
            let renamed = FiniteSpace::from_fn(names, |x, y| q.specializes(x, y))?;
            (renamed, members, NsExamplePoint::ALL.len())
        }
        _ => model.with_space(n, |space, _| {
            let (q, members) = quotient_classes(space);
            Ok((q, members, space.len()))
        })?,
    };
    if format == Format::Dot {
        return Ok(to_dot(&quotient, model.spec().kind()));
    }
    let classes: Vec<Value> = members
        .iter()
        .enumerate()
        .map(|(c, m)| json!({"class": quotient.label(c), "members": m}))
        .collect();
    let mut out = envelope("t0-quotient", model);
    out.insert("classes".into(), Value::Array(classes));
    out.insert("points".into(), json!(points));
    out.insert("truncate".into(), truncation_value(model.spec(), n));
    json_line(out)
}

fn chain_envelope(op: &str, ring: ChainRing) -> Map<String, Value> {
    let model = Model::new(RingSpec::Chain(ring));
    envelope(&format!("chain {op}"), &model)
}

fn chain(op: ChainOp, format: Format) -> Out {
    let ring = |a: &ChainArgs| -> Result<ChainRing, CliError> { Ok(ChainRing::new(a.p, a.n)?) };
    match op {
        ChainOp::Consistency(a) => {
            only(format, &[Format::Json, Format::Csv], "chain consistency")?;
            let ring = ring(&a)?;
            let mut rows = Vec::new();
            for pair in EPair::all(ring) {
                let criterion = consistent_criterion(pair, ring, Exec::default())?;
                let brute = consistent_bruteforce(pair, ring, Exec::default())?;
                rows.push((pair, criterion.consistent(), brute.is_some(), criterion.agree()));
            }
            if format == Format::Csv {
                let table: Vec<Vec<String>> = rows
                    .iter()
                    .map(|(p, c, b, _)| vec![p.a.to_string(), p.b.to_string(), c.to_string(), b.to_string()])
                    .collect();
                return csv_table(&["a", "b", "criterion", "bruteforce"], &table);
            }
            let rows: Vec<Value> = rows
                .iter()
                .map(|(p, c, b, agree)| {
                    json!({"a": p.a, "b": p.b, "criterion": c, "bruteforce": b, "criteria_agree": agree})
                })
                .collect();
            let mut out = chain_envelope("consistency", ring);
            out.insert("rows".into(), Value::Array(rows));
            json_line(out)
        }
        ChainOp::Invariants(a) => {
            only(format, &[Format::Json, Format::Csv], "chain invariants")?;
            let ring = ring(&a)?;
            let spectrum = zg(ring)?;
            let lattice = spectrum.lattice();
            let mut rows = Vec::new();
            for phi in lattice {
                for psi in lattice {
                    if phi == psi || !pp_leq(psi, phi, ring) {
                        continue;
                    }
                    for m in spectrum.modules() {
                        rows.push(vec![phi.to_string(), psi.to_string(), m.to_string(), invariant(phi, psi, m).to_string()]);
                    }
                }
            }
            if format == Format::Csv {
                return csv_table(&["phi", "psi", "M", "value"], &rows);
            }
            let rows: Vec<Value> = rows
                .iter()
                .map(|r| json!({"phi": r[0], "psi": r[1], "M": r[2], "value": r[3].parse::<u64>().expect("integer")}))
                .collect();
            let mut out = chain_envelope("invariants", ring);
            out.insert("rows".into(), Value::Array(rows));
            json_line(out)
        }
        ChainOp::Zg(a) => {
            only(format, &[Format::Json, Format::Dot], "chain zg")?;
            let ring = ring(&a)?;
            let spectrum = zg(ring)?;
            let space = spectrum.space();
            if format == Format::Dot {
                return Ok(to_dot(space, &format!("zg({ring})")));
            }
            let points: Vec<Value> = (0..space.len())
                .map(|i| {
                    let pair = spectrum.isolating_pair(i).map(|(phi, psi)| json!([phi.to_string(), psi.to_string()]));
                    json!({
                        "label": space.label(i),
                        "point": {"m": i + 1},
                        "closure": space.labels_of(space.point_closure(i)),
                        "isolating_pair": pair.unwrap_or(Value::Null),
                    })
                })
                .collect();
            let mut out = chain_envelope("zg", ring);
            out.insert("points".into(), Value::Array(points));
            json_line(out)
        }
        ChainOp::Goursat(a) => {
            only(format, &[Format::Json, Format::Csv], "chain goursat")?;
            let ring = ring(&a)?;
            if ring.order() > GOURSAT_MAX_ORDER {
                return Err(CliError::Bound(format!("the Goursat table is built for |R| ≤ {GOURSAT_MAX_ORDER}")));
            }
            let mut rows = Vec::new();
            for r in 0..ring.order() {
                for m in 1..=ring.n() {
                    let module = FinModule::cyclic(ring, m)?;
                    rows.push((r, module.to_string(), goursat_check(r, &module)));
                }
            }
            if format == Format::Csv {
                let table: Vec<Vec<String>> =
                    rows.iter().map(|(r, m, h)| vec![r.to_string(), m.clone(), h.to_string()]).collect();
                return csv_table(&["r", "M", "holds"], &table);
            }
            let rows: Vec<Value> = rows.iter().map(|(r, m, h)| json!({"r": r, "M": m, "holds": h})).collect();
            let mut out = chain_envelope("goursat", ring);
            out.insert("rows".into(), Value::Array(rows));
            json_line(out)
        }
    }
}

