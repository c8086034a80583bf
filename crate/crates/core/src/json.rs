//! Reading and writing groupoids, families, polynomials and exponential
//! points as JSON.
//!
//! Parsing validates everything it builds and reports the offending field
//! path. Emission always uses the explicit table forms, with composition
//! entries sorted, so re-emitting a parsed value is deterministic.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use serde_json::{json, Map, Value};

use crate::bij::{build_exp, build_exp_on, build_exp_set, build_exp_skeletal, ExpGroupoid, ExpPoint, TruncationConfig};
use crate::fam::{validate_family, Family};
use crate::grpd::{validate_groupoid, Arrow, FiniteGroupoid, GroupoidFunctor, Grpd};
use crate::poly::{discrete_poly, DiscreteOp, Polynomial};

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum InputError {
    #[error("line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("{path}: {message}")]
    Invalid { path: String, message: String },
}

fn invalid(path: &str, message: impl Into<String>) -> InputError {
    InputError::Invalid { path: path.to_string(), message: message.into() }
}

/// A parsed input file.
#[derive(Clone, Debug, PartialEq)]
pub enum Input {
    Groupoid(Grpd),
    Family(Arc<Family>),
    Polynomial(Arc<Polynomial>),
    Point(ExpPoint),
}

impl Input {
    pub fn kind(&self) -> &'static str {
        match self {
            Input::Groupoid(_) => "groupoid",
            Input::Family(_) => "family",
            Input::Polynomial(_) => "polynomial",
            Input::Point(_) => "point",
        }
    }
}

pub fn parse_json(text: &str) -> Result<Value, InputError> {
    serde_json::from_str(text).map_err(|e| InputError::Syntax {
        line: e.line(),
        column: e.column(),
        message: e.to_string().split(" at line").next().unwrap_or_default().to_string(),
    })
}

/// Parses any of the four input kinds, told apart by their keys.
pub fn parse_input(text: &str, cfg: TruncationConfig) -> Result<Input, InputError> {
    let value = parse_json(text)?;
    input_from_value(&value, cfg)
}

pub fn input_from_value(value: &Value, cfg: TruncationConfig) -> Result<Input, InputError> {
    let obj = value.as_object().ok_or_else(|| invalid("$", "expected an object"))?;
    let has = |k: &str| obj.contains_key(k);
    if has("discrete_poly") || has("I") {
        Ok(Input::Polynomial(Arc::new(polynomial_from_value(value, cfg)?)))
    } else if has("constant") || has("fibers") {
        Ok(Input::Family(Arc::new(family_from_value(value, None, "$", cfg)?)))
    } else if has("size") && has("colors") {
        Ok(Input::Point(point_from_value(value, "$")?))
    } else {
        Ok(Input::Groupoid(Arc::new(groupoid_from_value(value, "$", cfg)?)))
    }
}

fn field<'a>(obj: &'a Map<String, Value>, key: &str, path: &str) -> Result<&'a Value, InputError> {
    obj.get(key).ok_or_else(|| invalid(path, format!("missing field \"{key}\"")))
}

fn as_index(v: &Value, path: &str) -> Result<usize, InputError> {
    v.as_u64().and_then(|n| usize::try_from(n).ok()).ok_or_else(|| invalid(path, "expected a non-negative integer"))
}

fn as_array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>, InputError> {
    v.as_array().ok_or_else(|| invalid(path, "expected an array"))
}

fn index_list(v: &Value, path: &str) -> Result<Vec<usize>, InputError> {
    as_array(v, path)?.iter().enumerate().map(|(k, x)| as_index(x, &format!("{path}[{k}]"))).collect()
}

fn groupoid_list(v: &Value, path: &str, cfg: TruncationConfig) -> Result<Vec<FiniteGroupoid>, InputError> {
    as_array(v, path)?.iter().enumerate().map(|(k, g)| groupoid_from_value(g, &format!("{path}[{k}]"), cfg)).collect()
}

/// Parses a groupoid in explicit table form or one of the shorthands
/// `discrete`, `codiscrete`, `cyclic`, `deloop`, `coproduct`, `product`
/// and `exp` (see [`exp_from_value`]).
pub fn groupoid_from_value(v: &Value, path: &str, cfg: TruncationConfig) -> Result<FiniteGroupoid, InputError> {
    let obj = v.as_object().ok_or_else(|| invalid(path, "expected a groupoid object"))?;
    let sub = |k: &str| format!("{path}.{k}");
    if let Some(n) = obj.get("discrete") {
        return Ok(FiniteGroupoid::discrete(as_index(n, &sub("discrete"))?));
    }
    if let Some(n) = obj.get("codiscrete") {
        return Ok(FiniteGroupoid::codiscrete(as_index(n, &sub("codiscrete"))?));
    }
    if let Some(n) = obj.get("cyclic") {
        let n = as_index(n, &sub("cyclic"))?;
        if n == 0 {
            return Err(invalid(&sub("cyclic"), "the cyclic group needs order at least 1"));
        }
        return Ok(FiniteGroupoid::cyclic(n));
    }
    if let Some(t) = obj.get("deloop") {
        let rows = as_array(t, &sub("deloop"))?
            .iter()
            .enumerate()
            .map(|(r, row)| index_list(row, &format!("{path}.deloop[{r}]")))
            .collect::<Result<Vec<_>, _>>()?;
        return FiniteGroupoid::deloop(&rows).map_err(|e| invalid(&sub("deloop"), e.to_string()));
    }
    if let Some(list) = obj.get("coproduct") {
        let parts = groupoid_list(list, &sub("coproduct"), cfg)?;
        return Ok(parts.iter().fold(FiniteGroupoid::discrete(0), |acc, g| acc.coproduct(g)));
    }
    if let Some(list) = obj.get("product") {
        let parts = groupoid_list(list, &sub("product"), cfg)?;
        return Ok(parts.iter().fold(FiniteGroupoid::discrete(1), |acc, g| acc.product(g)));
    }
    if obj.contains_key("exp") {
        return Ok((*exp_from_value(v, path, cfg)?.groupoid).clone());
    }
    explicit_groupoid(obj, path)
}

/// Parses the `exp` shorthand: `{"exp": J}` with optional `trunc`, and
/// either `kind` (`full`, `set` or `skeletal`) or an explicit list of
/// `points` spanning a full subgroupoid.
pub fn exp_from_value(v: &Value, path: &str, cfg: TruncationConfig) -> Result<ExpGroupoid, InputError> {
    let obj = v.as_object().ok_or_else(|| invalid(path, "expected an exponential object"))?;
    let sub = |k: &str| format!("{path}.{k}");
    let colors = Arc::new(groupoid_from_value(field(obj, "exp", path)?, &sub("exp"), cfg)?);
    let cfg = match obj.get("trunc") {
        Some(n) => TruncationConfig::new(as_index(n, &sub("trunc"))?),
        None => cfg,
    };
    if let Some(points) = obj.get("points") {
        let mut seen = BTreeSet::new();
        let points = as_array(points, &sub("points"))?
            .iter()
            .enumerate()
            .map(|(k, p)| {
                let here = format!("{path}.points[{k}]");
                let p = point_from_value(p, &here)?;
                if p.size > cfg.max_size {
                    return Err(invalid(
                        &here,
                        format!("size {} is above the truncation bound {}", p.size, cfg.max_size),
                    ));
                }
                if let Some(&c) = p.colors.iter().find(|&&c| c >= colors.object_count()) {
                    return Err(invalid(&here, format!("color {c} is out of range")));
                }
                if !seen.insert(p.colors.clone()) {
                    return Err(invalid(&here, "duplicate point"));
                }
                Ok(p)
            })
            .collect::<Result<Vec<_>, _>>()?;
        return Ok(build_exp_on(&colors, cfg, points));
    }
    match obj.get("kind").map(|k| k.as_str()) {
        None | Some(Some("full")) => Ok(build_exp(&colors, cfg)),
        Some(Some("set")) => Ok(build_exp_set(&colors, cfg)),
        Some(Some("skeletal")) => Ok(build_exp_skeletal(&colors, cfg)),
        _ => Err(invalid(&sub("kind"), "expected \"full\", \"set\" or \"skeletal\"")),
    }
}

fn explicit_groupoid(obj: &Map<String, Value>, path: &str) -> Result<FiniteGroupoid, InputError> {
    let sub = |k: &str| format!("{path}.{k}");
    let objects = as_index(field(obj, "objects", path)?, &sub("objects"))?;
    let arrows = as_array(field(obj, "morphisms", path)?, &sub("morphisms"))?
        .iter()
        .enumerate()
        .map(|(m, a)| {
            let here = format!("{path}.morphisms[{m}]");
            let a = a.as_object().ok_or_else(|| invalid(&here, "expected {\"src\", \"dst\"}"))?;
            let src = as_index(field(a, "src", &here)?, &format!("{here}.src"))?;
            let dst = as_index(field(a, "dst", &here)?, &format!("{here}.dst"))?;
            for (end, name) in [(src, "src"), (dst, "dst")] {
                if end >= objects {
                    return Err(invalid(&format!("{here}.{name}"), format!("object {end} is out of range")));
                }
            }
            Ok(Arrow { src, dst })
        })
        .collect::<Result<Vec<_>, _>>()?;
    let n = arrows.len();
    let in_range = |list: &[usize], name: &str| {
        list.iter().enumerate().try_for_each(|(k, &m)| {
            if m < n {
                Ok(())
            } else {
                Err(invalid(&format!("{path}.{name}[{k}]"), format!("morphism {m} is out of range")))
            }
        })
    };
    let identities = index_list(field(obj, "identities", path)?, &sub("identities"))?;
    if identities.len() != objects {
        let missing = identities.len().min(objects);
        return Err(invalid(
            &sub("identities"),
            format!("{} entries for {objects} objects; object {missing} has no identity", identities.len()),
        ));
    }
    in_range(&identities, "identities")?;
    let inverses = index_list(field(obj, "inverses", path)?, &sub("inverses"))?;
    if inverses.len() < n {
        return Err(invalid(&sub("inverses"), format!("missing inverse entry for morphism {}", inverses.len())));
    }
    if inverses.len() > n {
        return Err(invalid(&sub("inverses"), format!("{} entries for {n} morphisms", inverses.len())));
    }
    in_range(&inverses, "inverses")?;
    let mut compose = HashMap::new();
    for (k, entry) in as_array(field(obj, "compose", path)?, &sub("compose"))?.iter().enumerate() {
        let here = format!("{path}.compose[{k}]");
        let triple = index_list(entry, &here)?;
        let [g, f, gf] = triple[..] else {
            return Err(invalid(&here, "expected [g, f, g∘f]"));
        };
        in_range(&triple, &format!("compose[{k}]"))?;
        if compose.insert((g, f), gf).is_some() {
            return Err(invalid(&here, format!("duplicate entry for ({g}, {f})")));
        }
    }
    let g = FiniteGroupoid::from_tables(objects, arrows, identities, compose, inverses);
    match validate_groupoid(&g).first() {
        Some(v) => Err(invalid(path, format!("groupoid law violated: {v}"))),
        None => Ok(g),
    }
}

/// Parses a family. The base comes from the `base` field or from
/// `expected_base`; when both are present they must agree.
pub fn family_from_value(
    v: &Value,
    expected_base: Option<&Grpd>,
    path: &str,
    cfg: TruncationConfig,
) -> Result<Family, InputError> {
    let obj = v.as_object().ok_or_else(|| invalid(path, "expected a family object"))?;
    let sub = |k: &str| format!("{path}.{k}");
    let base: Grpd = match (obj.get("base"), expected_base) {
        (Some(b), expected) => {
            let b = Arc::new(groupoid_from_value(b, &sub("base"), cfg)?);
            if expected.is_some_and(|e| **e != *b) {
                return Err(invalid(&sub("base"), "base does not match its context"));
            }
            b
        }
        (None, Some(e)) => e.clone(),
        (None, None) => return Err(invalid(path, "missing field \"base\"")),
    };
    if let Some(fiber) = obj.get("constant") {
        let fiber = Arc::new(groupoid_from_value(fiber, &sub("constant"), cfg)?);
        return Ok(Family::constant(base, fiber));
    }
    let fibers: Vec<Grpd> =
        groupoid_list(field(obj, "fibers", path)?, &sub("fibers"), cfg)?.into_iter().map(Arc::new).collect();
    if fibers.len() != base.object_count() {
        return Err(invalid(
            &sub("fibers"),
            format!("{} fibers given, expected {}", fibers.len(), base.object_count()),
        ));
    }
    let mut transports: Vec<Option<GroupoidFunctor>> = vec![None; base.morphism_count()];
    let entries = match obj.get("transports") {
        Some(t) => as_array(t, &sub("transports"))?.as_slice(),
        None => &[],
    };
    for (k, entry) in entries.iter().enumerate() {
        let here = format!("{path}.transports[{k}]");
        let pair = as_array(entry, &here)?;
        let [m, functor] = pair.as_slice() else {
            return Err(invalid(&here, "expected [morphism, {\"objects\", \"morphisms\"}]"));
        };
        let m = as_index(m, &format!("{here}[0]"))?;
        if m >= base.morphism_count() {
            return Err(invalid(&format!("{here}[0]"), format!("morphism {m} is out of range")));
        }
        let functor_path = format!("{here}[1]");
        let functor = functor.as_object().ok_or_else(|| invalid(&functor_path, "expected a functor object"))?;
        let objects = index_list(field(functor, "objects", &functor_path)?, &format!("{functor_path}.objects"))?;
        let morphisms = index_list(field(functor, "morphisms", &functor_path)?, &format!("{functor_path}.morphisms"))?;
        let (src, dst) = (&fibers[base.src(m)], &fibers[base.dst(m)]);
        let functor = GroupoidFunctor::new(src.clone(), dst.clone(), objects, morphisms);
        if let Err(e) = functor.validate() {
            return Err(invalid(&functor_path, format!("transport along {m} is not a functor: {e}")));
        }
        if transports[m].replace(functor).is_some() {
            return Err(invalid(&here, format!("duplicate transport for morphism {m}")));
        }
    }
    let transports = transports
        .into_iter()
        .enumerate()
        .map(|(m, t)| match t {
            Some(t) => Ok(t),
            None if base.is_identity(m) => Ok(GroupoidFunctor::identity(fibers[base.src(m)].clone())),
            None => Err(invalid(&sub("transports"), format!("no transport for morphism {m}"))),
        })
        .collect::<Result<Vec<_>, _>>()?;
    let family = Family::new(base, fibers, transports);
    match validate_family(&family).first() {
        Some(v) => Err(invalid(&sub("transports"), format!("family law violated: {v}"))),
        None => Ok(family),
    }
}

pub fn polynomial_from_value(v: &Value, cfg: TruncationConfig) -> Result<Polynomial, InputError> {
    let obj = v.as_object().ok_or_else(|| invalid("$", "expected a polynomial object"))?;
    if let Some(d) = obj.get("discrete_poly") {
        return discrete_from_value(d);
    }
    let source = Arc::new(groupoid_from_value(field(obj, "I", "$")?, "$.I", cfg)?);
    let target = Arc::new(groupoid_from_value(field(obj, "J", "$")?, "$.J", cfg)?);
    let ops = family_from_value(field(obj, "ops", "$")?, Some(&target), "$.ops", cfg)?;
    let params_base = Arc::new(source.product(&ops.tot().groupoid));
    let params = family_from_value(field(obj, "params", "$")?, Some(&params_base), "$.params", cfg)?;
    Polynomial::from_parts(source, ops, params).map_err(|e| invalid("$", e.to_string()))
}

fn discrete_from_value(v: &Value) -> Result<Polynomial, InputError> {
    #[derive(serde::Deserialize)]
    struct DiscreteShape {
        #[serde(rename = "I")]
        sources: usize,
        #[serde(rename = "J")]
        targets: usize,
        ops: Vec<DiscreteOp>,
    }
    let path = "$.discrete_poly";
    let shape: DiscreteShape = serde_json::from_value(v.clone()).map_err(|e| invalid(path, e.to_string()))?;
    for (k, op) in shape.ops.iter().enumerate() {
        if op.color >= shape.targets {
            return Err(invalid(&format!("{path}.ops[{k}].color"), format!("color {} is out of range", op.color)));
        }
        if let Some(p) = op.param_colors.iter().position(|&c| c >= shape.sources) {
            return Err(invalid(
                &format!("{path}.ops[{k}].param_colors[{p}]"),
                format!("color {} is out of range", op.param_colors[p]),
            ));
        }
    }
    Ok(discrete_poly(shape.sources, shape.targets, &shape.ops))
}

pub fn point_from_value(v: &Value, path: &str) -> Result<ExpPoint, InputError> {
    let point: ExpPoint = serde_json::from_value(v.clone()).map_err(|e| invalid(path, e.to_string()))?;
    if point.size != point.colors.len() {
        return Err(invalid(
            &format!("{path}.colors"),
            format!("{} colors given for size {}", point.colors.len(), point.size),
        ));
    }
    Ok(point)
}

pub fn groupoid_to_json(g: &FiniteGroupoid) -> Value {
    let mut compose: Vec<[usize; 3]> = g.compose_table().iter().map(|(&(a, b), &c)| [a, b, c]).collect();
    compose.sort_unstable();
    json!({
        "objects": g.object_count(),
        "morphisms": g.arrows().iter().map(|a| json!({"src": a.src, "dst": a.dst})).collect::<Vec<_>>(),
        "identities": g.identities(),
        "compose": compose,
        "inverses": g.inverses(),
    })
}

fn transports_to_json(f: &Family) -> Value {
    f.transports()
        .iter()
        .enumerate()
        .map(|(m, t)| json!([m, {"objects": t.object_map, "morphisms": t.morphism_map}]))
        .collect()
}

pub fn family_to_json(f: &Family) -> Value {
    json!({
        "base": groupoid_to_json(f.base()),
        "fibers": f.fibers().iter().map(|g| groupoid_to_json(g)).collect::<Vec<_>>(),
        "transports": transports_to_json(f),
    })
}

/// Like [`family_to_json`] without the base, for families whose base is
/// implied by their position.
fn fibered_to_json(f: &Family) -> Value {
    json!({
        "fibers": f.fibers().iter().map(|g| groupoid_to_json(g)).collect::<Vec<_>>(),
        "transports": transports_to_json(f),
    })
}

/// Emits a polynomial; `target` replaces the emitted `J` expression when
/// given, and must denote the same groupoid.
pub fn polynomial_to_json(p: &Polynomial, target: Option<Value>) -> Value {
    json!({
        "I": groupoid_to_json(p.source()),
        "J": target.unwrap_or_else(|| groupoid_to_json(p.target())),
        "ops": fibered_to_json(p.ops()),
        "params": fibered_to_json(p.params()),
    })
}

pub fn point_to_json(p: &ExpPoint) -> Value {
    json!({"size": p.size, "colors": p.colors})
}

pub fn input_to_json(input: &Input) -> Value {
    match input {
        Input::Groupoid(g) => groupoid_to_json(g),
        Input::Family(f) => family_to_json(f),
        Input::Polynomial(p) => polynomial_to_json(p, None),
        Input::Point(p) => point_to_json(p),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn parse(text: &str) -> Result<Input, InputError> {
        parse_input(text, TruncationConfig::default())
    }

    fn round_trip(text: &str) {
        let first = parse(text).unwrap();
        let emitted = serde_json::to_string(&input_to_json(&first)).unwrap();
        assert_eq!(parse(&emitted).unwrap(), first, "{text}");
        assert_eq!(serde_json::to_string(&input_to_json(&parse(&emitted).unwrap())).unwrap(), emitted);
    }

    #[test]
    fn schema_examples_round_trip() {
        for text in [
            r#"{"discrete": 3}"#,
            r#"{"deloop": [[0, 1], [1, 0]]}"#,
            r#"{"objects": 2, "morphisms": [{"src": 0, "dst": 0}, {"src": 1, "dst": 1},
                {"src": 0, "dst": 1}, {"src": 1, "dst": 0}],
               "identities": [0, 1],
               "compose": [[0,0,0],[1,1,1],[2,0,2],[1,2,2],[3,1,3],[0,3,3],[3,2,0],[2,3,1]],
               "inverses": [0, 1, 3, 2]}"#,
            r#"{"product": [{"cyclic": 2}, {"codiscrete": 2}]}"#,
            r#"{"exp": {"discrete": 1}, "trunc": 2}"#,
            r#"{"exp": {"cyclic": 2}, "points": [{"size": 2, "colors": [0, 0]}]}"#,
            r#"{"base": {"deloop": [[0, 1], [1, 0]]}, "constant": {"discrete": 2}}"#,
            r#"{"base": {"cyclic": 2}, "fibers": [{"discrete": 2}],
               "transports": [[1, {"objects": [1, 0], "morphisms": [1, 0]}]]}"#,
            r#"{"discrete_poly": {"I": 1, "J": 1, "ops": [{"color": 0, "param_colors": [0, 0]}]}}"#,
            r#"{"size": 2, "colors": [0, 1]}"#,
        ] {
            round_trip(text);
        }
    }

    #[test]
    fn explicit_polynomial_round_trips() {
        let square =
            parse(r#"{"discrete_poly": {"I": 1, "J": 2, "ops": [{"color": 1, "param_colors": [0, 0]}]}}"#).unwrap();
        let Input::Polynomial(p) = square else { panic!() };
        let text = serde_json::to_string(&polynomial_to_json(&p, None)).unwrap();
        assert_eq!(parse(&text).unwrap(), Input::Polynomial(p));
    }

    #[test]
    fn syntax_errors_carry_a_line() {
        let err = parse("{\n  \"discrete\": 3,\n}").unwrap_err();
        assert!(matches!(err, InputError::Syntax { line: 3, .. }), "{err}");
    }

    #[test]
    fn missing_inverse_names_the_morphism() {
        let err = parse(
            r#"{"objects": 1, "morphisms": [{"src": 0, "dst": 0}, {"src": 0, "dst": 0}],
                "identities": [0], "compose": [[0,0,0],[0,1,1],[1,0,1],[1,1,0]], "inverses": [0]}"#,
        )
        .unwrap_err();
        assert_eq!(err, invalid("$.inverses", "missing inverse entry for morphism 1"));
    }

    #[test]
    fn law_violations_are_reported() {
        let err = parse(
            r#"{"objects": 1, "morphisms": [{"src": 0, "dst": 0}, {"src": 0, "dst": 0}],
                "identities": [0], "compose": [[0,0,0],[0,1,1],[1,0,1],[1,1,1]], "inverses": [0, 1]}"#,
        )
        .unwrap_err();
        let InputError::Invalid { path, message } = err else { panic!() };
        assert_eq!(path, "$");
        assert!(message.starts_with("groupoid law violated"), "{message}");

        let err = parse(
            r#"{"base": {"cyclic": 2}, "fibers": [{"discrete": 2}],
               "transports": [[1, {"objects": [1, 1], "morphisms": [1, 1]}]]}"#,
        )
        .unwrap_err();
        assert!(matches!(err, InputError::Invalid { .. }), "{err}");

        let err = parse(r#"{"base": {"cyclic": 2}, "fibers": [{"discrete": 2}]}"#).unwrap_err();
        assert_eq!(err, invalid("$.transports", "no transport for morphism 1"));

        let err =
            parse(r#"{"discrete_poly": {"I": 1, "J": 1, "ops": [{"color": 0, "param_colors": [2]}]}}"#).unwrap_err();
        assert_eq!(err, invalid("$.discrete_poly.ops[0].param_colors[0]", "color 2 is out of range"));
    }
}
