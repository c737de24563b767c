//! The JSON report envelope and its validator.

use serde_json::{json, Map, Value};
use ziegler::invariant::WSet;
use ziegler::ringspec::{RingSpec, VERSION};

use crate::commands::{member, pair_point, parse_pair};
use crate::error::{invalid, CliError};
use crate::model::Model;

const ENVELOPE: [&str; 3] = ["v", "command", "ring"];

/// `{"v": 1, "command": …, "ring": descriptor}`.
pub fn envelope(command: &str, model: &Model) -> Map<String, Value> {
    let mut out = Map::new();
    out.insert("v".into(), json!(VERSION));
    out.insert("command".into(), json!(command));
    out.insert("ring".into(), model.spec().to_json());
    out
}

/// A report column and its type check.
type Column<'c> = (&'c str, fn(&Value) -> bool);

struct Fields<'a> {
    command: &'a str,
    obj: &'a Map<String, Value>,
}

impl<'a> Fields<'a> {
    fn get(&self, k: &str) -> Result<&'a Value, CliError> {
        self.obj.get(k).ok_or_else(|| invalid(format!("{} report needs field {k:?}", self.command)))
    }

    fn array(&self, k: &str) -> Result<&'a Vec<Value>, CliError> {
        self.get(k)?.as_array().ok_or_else(|| invalid(format!("{}: {k:?} must be an array", self.command)))
    }

    fn boolean(&self, k: &str) -> Result<bool, CliError> {
        self.get(k)?.as_bool().ok_or_else(|| invalid(format!("{}: {k:?} must be a boolean", self.command)))
    }

    fn rows(&self, columns: &[Column]) -> Result<(), CliError> {
        for (i, row) in self.array("rows")?.iter().enumerate() {
            for (col, ok) in columns {
                if !row.get(*col).is_some_and(ok) {
                    return Err(invalid(format!("{}: rows[{i}].{col} is missing or mistyped", self.command)));
                }
            }
        }
        Ok(())
    }
}

fn strings(v: &Value) -> bool {
    v.as_array().is_some_and(|a| a.iter().all(Value::is_string))
}

fn expect(ok: bool, message: &str) -> Result<(), CliError> {
    if ok {
        Ok(())
    } else {
        Err(invalid(message))
    }
}

/// Re-parses a report and recomputes its cheap claims; returns the command.
pub fn validate_report(value: &Value) -> Result<String, CliError> {
    let obj = value.as_object().ok_or_else(|| invalid("a report is a JSON object"))?;
    expect(obj.get("v").and_then(Value::as_u64) == Some(VERSION), "report needs \"v\": 1")?;
    let command = obj.get("command").and_then(Value::as_str).ok_or_else(|| invalid("report needs a \"command\""))?;
    let f = Fields { command, obj };
    if command == "validate" {
        expect(f.boolean("valid")?, "validate: report is not valid")?;
        return Ok(command.to_string());
    }
    let model = Model::new(RingSpec::from_json(f.get("ring")?)?);
    match command {
        "points" => {
            if let RingSpec::InvariantDense(_) = model.spec() {
                expect(strings(f.get("families")?), "points: \"families\" must be strings")?;
            } else {
                for e in f.array("points")? {
                    let p = model.parse_point(e.get("point").unwrap_or(&Value::Null))?;
                    expect(e.get("label").and_then(Value::as_str) == Some(&model.label(&p)), "points: label mismatch")?;
                    expect(e.get("closure").is_some_and(strings), "points: \"closure\" must be labels")?;
                }
            }
        }
        "closure" => {
            let rest: Map<String, Value> =
                obj.iter().filter(|(k, _)| !ENVELOPE.contains(&k.as_str())).map(|(k, v)| (k.clone(), v.clone())).collect();
            let set = model.parse_set(&Value::Object(rest))?;
            expect(model.is_closed(&set)?, "closure: the reported set is not closed")?;
        }
        "is-closed" => {
            let set = model.parse_set(f.get("set")?)?;
            expect(model.is_closed(&set)? == f.boolean("closed")?, "is-closed: verdict does not match")?;
        }
        "specializes" => {
            let x = model.parse_point(f.get("x")?)?;
            let y = model.parse_point(f.get("y")?)?;
            expect(model.specializes(&x, &y)? == f.boolean("specializes")?, "specializes: verdict does not match")?;
        }
        "pair-to-point" => {
            let pair = parse_pair(&model, f.get("pair")?)?;
            let point = model.parse_point(f.get("point")?)?;
            expect(pair_point(&model, &pair)? == point, "pair-to-point: point does not match the pair")?;
        }
        "in-wset" => {
            let g = model.group()?;
            let w = WSet::from_json(f.get("wset")?, g.d())?;
            w.validate(&g)?;
            let point = model.parse_point(f.get("point")?)?;
            if let Some(pair) = obj.get("pair") {
                let pair = parse_pair(&model, pair)?;
                expect(pair_point(&model, &pair)? == point, "in-wset: point does not match the pair")?;
            }
            expect(member(&model, &point, &w)? == f.boolean("member")?, "in-wset: verdict does not match")?;
        }
        "check-sober" => {
            f.boolean("sober")?;
            f.boolean("trichotomy")?;
            expect(strings(f.get("points")?), "check-sober: \"points\" must be labels")?;
            for irr in f.array("irreducibles")? {
                let ok = irr.get("set").is_some_and(strings)
                    && irr.get("generics").is_some_and(strings)
                    && irr.get("witness").is_some_and(|w| w.is_null() || w.get("kind").is_some_and(Value::is_string));
                expect(ok, "check-sober: malformed irreducible entry")?;
            }
        }
        "t0-quotient" => {
            let mut seen = Vec::new();
            for c in f.array("classes")? {
                expect(c.get("class").is_some_and(Value::is_string), "t0-quotient: class needs a name")?;
                let members = c.get("members").and_then(Value::as_array).filter(|_| strings(&c["members"]));
                let members = members.ok_or_else(|| invalid("t0-quotient: members must be labels"))?;
                expect(!members.is_empty(), "t0-quotient: empty class")?;
                seen.extend(members.iter().cloned());
            }
            let total = seen.len();
            seen.sort_by(|a, b| a.as_str().cmp(&b.as_str()));
            seen.dedup();
            expect(seen.len() == total, "t0-quotient: classes overlap")?;
            expect(f.get("points")?.as_u64() == Some(total as u64), "t0-quotient: classes do not cover the points")?;
        }
        "chain consistency" => f.rows(&[
            ("a", Value::is_u64),
            ("b", Value::is_u64),
            ("criterion", Value::is_boolean),
            ("bruteforce", Value::is_boolean),
        ])?,
        "chain invariants" => f.rows(&[
            ("phi", Value::is_string),
            ("psi", Value::is_string),
            ("M", Value::is_string),
            ("value", Value::is_u64),
        ])?,
        "chain goursat" => f.rows(&[("r", Value::is_u64), ("M", Value::is_string), ("holds", Value::is_boolean)])?,
        "chain zg" => {
            for e in f.array("points")? {
                let p = model.parse_point(e.get("point").unwrap_or(&Value::Null))?;
                expect(e.get("label").and_then(Value::as_str) == Some(&model.label(&p)), "chain zg: label mismatch")?;
            }
        }
        other => return Err(invalid(format!("unknown report command {other:?}"))),
    }
    Ok(command.to_string())
}
