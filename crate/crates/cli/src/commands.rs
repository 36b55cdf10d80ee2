use std::path::Path;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use tracelab::cancellative::{
    cancellative_violation, ex3, max_cancellative, max_unionfree_star, unionfree_violation,
    Pattern, Triple,
};
use tracelab::constructions::{
    cancellative_bound, partite_family, partite_size, partite_size_from_parts, special6, t_count, table1_value,
    turan_graph, PartRule, Table1Value,
};
use tracelab::random::random_downset;
use tracelab::search::{crosscheck_mtilde, run, ArrowQuery, SearchMode, SearchResult, SearchSettings};
use tracelab::transforms::{downset_compress, partition_classes, check_claim24, symmetrize, symmetrize_if_profitable};
use tracelab::SetFamily;

use crate::args::*;
use crate::files::{self, Content, Format, Loaded};
use crate::manifest::Run;
use crate::CliError;

pub struct Ctx {
    pub pretty: bool,
    pub out: Option<std::path::PathBuf>,
    pub run: Run,
}

impl Ctx {
    fn emit(&self, record: &Value, pretty: impl FnOnce() -> String) {
        if self.pretty {
            println!("{}", pretty());
        } else {
            println!("{record}");
        }
    }

    fn load(&mut self, path: &Path) -> Result<Loaded, CliError> {
        let l = files::load(path)?;
        self.run.input(&path.display().to_string(), &l.bytes);
        Ok(l)
    }

    /// Writes the artifact to `--out` and reports on stdout, or prints the
    /// artifact on stdout and the report on stderr.
    fn artifact(&self, contents: impl Fn(Format) -> String, report: &Value, pretty: impl FnOnce() -> String) -> Result<(), CliError> {
        match &self.out {
            Some(path) => {
                files::write(path, &contents(Format::for_path(path)))?;
                self.emit(report, pretty);
            }
            None => {
                print!("{}", contents(Format::Json));
                if self.pretty {
                    eprintln!("{}", pretty());
                } else {
                    eprintln!("{report}");
                }
            }
        }
        Ok(())
    }

    fn with_manifest(&self, mut record: Value, settings: Option<&SearchSettings>) -> Value {
        let m = self.run.manifest(settings, &record);
        record["manifest"] = serde_json::to_value(m).expect("manifest serializes");
        record
    }

    fn family_artifact(&self, f: &SetFamily, report: &Value, pretty: impl FnOnce() -> String) -> Result<(), CliError> {
        self.artifact(|fmt| files::encode_family(f, fmt), report, pretty)
    }
}

fn need<T>(v: Option<T>, flag: &str) -> Result<T, CliError> {
    v.ok_or_else(|| CliError::Usage(format!("missing --{flag}")))
}

fn one_indexed(e: usize, flag: &str) -> Result<usize, CliError> {
    e.checked_sub(1)
        .ok_or_else(|| CliError::Usage(format!("--{flag} is 1-indexed, got 0")))
}

pub fn construct(ctx: &mut Ctx, a: ConstructArgs) -> Result<u8, CliError> {
    if a.kind == Kind::Special6 {
        let t = special6();
        let report = json!({"kind": "special6", "n": 6, "size": t.len(), "g2": t.g2().len(), "g3": t.g3().len()});
        ctx.artifact(|_| files::encode_tilde(&t), &report, || format!("special6: {} sets on [6]", t.len()))?;
        return Ok(0);
    }
    let (fam, kind, formula): (SetFamily, &str, Option<String>) = match a.kind {
        Kind::Partite => {
            let n = need(a.n, "n")?;
            match a.sizes {
                Some(sizes) => {
                    let formula = partite_size_from_parts(&sizes).to_string();
                    let l = sizes.len();
                    (partite_family(n, l, &PartRule::Sizes(sizes))?, "partite", Some(formula))
                }
                None => {
                    let l = need(a.l, "l")?;
                    let fam = partite_family(n, l, &PartRule::Balanced)?;
                    (fam, "partite", Some(partite_size(n, l).to_string()))
                }
            }
        }
        Kind::Turan => {
            let (r, n) = (need(a.r, "r")?, need(a.n, "n")?);
            (turan_graph(r, n)?, "turan", Some(t_count(r, n).to_string()))
        }
        Kind::Downclosure => {
            let input = ctx.load(&need(a.input, "input")?)?;
            (input.full_family().down_closure(), "downclosure", None)
        }
        Kind::Random => {
            let n = need(a.n, "n")?;
            let mut rng = ChaCha8Rng::seed_from_u64(a.seed);
            let fam = random_downset(&mut rng, n, a.generators, a.max_size)?;
            (fam, "random", None)
        }
        Kind::Special6 => unreachable!("handled above"),
    };
    let report = json!({"kind": kind, "n": fam.n(), "size": fam.len(), "formula": formula});
    let pretty = || match &formula {
        Some(v) => format!("{kind}: {} sets on [{}] (closed form {v})", fam.len(), fam.n()),
        None => format!("{kind}: {} sets on [{}]", fam.len(), fam.n()),
    };
    ctx.family_artifact(&fam, &report, pretty)?;
    Ok(0)
}

pub fn check(ctx: &mut Ctx, a: CheckArgs) -> Result<u8, CliError> {
    let input = ctx.load(&a.file)?;
    let (wa, wb) = match (a.a, a.b, a.c) {
        (_, _, Some(c)) => (4, c + 5),
        (Some(x), Some(y), None) => (x, y),
        _ => return Err(CliError::Usage("give --a and --b, or --c".into())),
    };
    let fam = input.full_family();
    let mt = fam.max_trace_over_ksets(wa)?;
    let arrow = mt.max >= wb;
    let canonical = input.canonical_bytes();
    let report = json!({
        "kind": content_kind(&input),
        "n": fam.n(),
        "size": fam.len(),
        "a": wa,
        "b": wb,
        "max": mt.max,
        "witness": mt.witness.to_one_indexed(),
        "arrow": arrow,
        "canonical": canonical.as_bytes() == input.bytes.as_slice(),
    });
    if let Some(path) = &ctx.out {
        files::write(path, &canonical)?;
    }
    ctx.emit(&report, || format!("max={}, witness={}, arrow={arrow}", mt.max, mt.witness));
    Ok(if arrow { 1 } else { 0 })
}

fn query_from(ctx: &mut Ctx, a: &SearchArgs) -> Result<ArrowQuery, CliError> {
    let settings = a.budget.settings();
    if let Some(q) = &a.query {
        let text = if q.trim_start().starts_with('{') {
            q.clone()
        } else {
            let bytes = std::fs::read(q).map_err(|e| CliError::Io(q.into(), e))?;
            ctx.run.input(q, &bytes);
            String::from_utf8(bytes).map_err(|_| CliError::Usage(format!("{q} is not UTF-8")))?
        };
        let mut parsed = ArrowQuery::from_json(&text)?;
        let from_json = parsed.settings.clone();
        parsed.settings = SearchSettings {
            budget_nodes: from_json.budget_nodes,
            budget_secs: from_json.budget_secs,
            ..settings
        };
        return Ok(parsed);
    }
    let n = need(a.n, "n")?;
    let mode = match &a.mode {
        Some(m) => m.parse::<SearchMode>()?,
        None if a.c.is_some() => SearchMode::TildeComplete,
        None => SearchMode::FullDownset,
    };
    let q = match mode {
        SearchMode::TildeComplete => ArrowQuery::tilde(n, need(a.c, "c")?),
        SearchMode::FullDownset => ArrowQuery::full(n, need(a.a, "a")?, need(a.b, "b")?),
        SearchMode::Antichain => {
            let wa = need(a.a, "a")?;
            let k = one_indexed(wa, "a")?;
            let mut q = ArrowQuery::antichain(n, k);
            if let Some(b) = a.b {
                q.b = b;
            }
            q
        }
    };
    Ok(q.with_settings(settings))
}

fn search_record(q: &ArrowQuery, r: &SearchResult) -> Value {
    let mut v = serde_json::to_value(r).expect("result serializes");
    v["query"] = serde_json::from_str(&q.to_json()).expect("query serializes");
    v
}

fn search_pretty(r: &SearchResult) -> String {
    format!(
        "optimum={} proved_optimal={} nodes={} elapsed={:.3}s",
        r.optimum,
        r.proved_optimal,
        r.nodes,
        r.elapsed.as_secs_f64()
    )
}

fn write_witness(ctx: &Ctx, r: &SearchResult) -> Result<(), CliError> {
    if let Some(path) = &ctx.out {
        let body = match (r.witness.family(), r.witness.tilde()) {
            (Some(f), _) => files::encode_family(f, Format::for_path(path)),
            (None, Some(t)) => files::encode_tilde(t),
            (None, None) => unreachable!("a witness is a family or a tilde family"),
        };
        files::write(path, &body)?;
    }
    Ok(())
}

pub fn search(ctx: &mut Ctx, a: SearchArgs) -> Result<u8, CliError> {
    let q = query_from(ctx, &a)?;
    let r = run(&q)?;
    write_witness(ctx, &r)?;
    let record = ctx.with_manifest(search_record(&q, &r), Some(&q.settings));
    ctx.emit(&record, || search_pretty(&r));
    Ok(if r.proved_optimal { 0 } else { 3 })
}

pub fn verify_table(ctx: &mut Ctx, a: VerifyArgs) -> Result<u8, CliError> {
    let settings = a.budget.settings();
    let (mut fails, mut unproved) = (0, 0);
    let mut rows = Vec::new();
    if ctx.pretty {
        println!("{:>3} {:>3} {:>10} {:>10}  status", "c", "n", "formula", "searched");
    }
    for &c in &a.rows {
        for &n in &a.n {
            let claimed = table1_value(c, n)?;
            let r = run(&ArrowQuery::tilde(n, c).with_settings(settings.clone()))?;
            let searched = r.optimum + 1;
            let (formula, status) = match claimed {
                Table1Value::Exact { value } if !r.proved_optimal => (json!(value), "UNPROVED"),
                Table1Value::Exact { value } if value == searched as u128 => (json!(value), "PASS"),
                Table1Value::Exact { value } => (json!(value), "FAIL"),
                Table1Value::FormulaOutOfRange { value, .. } => (json!(value), "formula-out-of-range"),
                Table1Value::Bounds { lower, upper } => (json!({"lower": lower, "upper": upper}), "bounds-only"),
            };
            match status {
                "FAIL" => fails += 1,
                "UNPROVED" => unproved += 1,
                _ => {}
            }
            let record = json!({
                "c": c,
                "n": n,
                "formula": formula,
                "searched": searched,
                "proved_optimal": r.proved_optimal,
                "status": status,
            });
            let shown = match &formula {
                Value::Number(x) => x.to_string(),
                _ => "bounds".into(),
            };
            ctx.emit(&record, || format!("{c:>3} {n:>3} {shown:>10} {searched:>10}  {status}"));
            rows.push(record);
        }
    }
    let summary = ctx.with_manifest(
        json!({"rows": rows.len(), "fail": fails, "unproved": unproved}),
        Some(&settings),
    );
    ctx.emit(&summary, || format!("{} rows, {fails} FAIL, {unproved} unproved", rows.len()));
    Ok(if fails > 0 {
        1
    } else if unproved > 0 {
        3
    } else {
        0
    })
}

pub fn reduce(ctx: &mut Ctx, a: FileArgs) -> Result<u8, CliError> {
    let input = ctx.load(&a.file)?;
    let before = input.full_family();
    let fam = downset_compress(&before);
    let report = json!({"n": fam.n(), "input_size": before.len(), "size": fam.len(), "is_downset": fam.is_downset()});
    ctx.family_artifact(&fam, &report, || format!("compressed {} sets into a down-set", fam.len()))?;
    Ok(0)
}

pub fn symmetrize_cmd(ctx: &mut Ctx, a: SymmetrizeArgs) -> Result<u8, CliError> {
    let input = ctx.load(&a.file)?;
    let fam = input.full_family();
    let (x, y) = (one_indexed(a.x, "x")?, one_indexed(a.y, "y")?);
    let out = if a.profitable {
        symmetrize_if_profitable(&fam, x, y)?
    } else {
        symmetrize(&fam, x, y)?
    };
    let report = json!({"n": out.n(), "x": a.x, "y": a.y, "input_size": fam.len(), "size": out.len()});
    ctx.family_artifact(&out, &report, || format!("{} -> {} sets", fam.len(), out.len()))?;
    Ok(0)
}

pub fn partition(ctx: &mut Ctx, a: FileArgs) -> Result<u8, CliError> {
    let input = ctx.load(&a.file)?;
    let ps = partition_classes(&input.full_family())?;
    let body = serde_json::to_string(&ps).expect("partition serializes") + "\n";
    let report = json!({"r": ps.r(), "class_sizes": ps.class_sizes(), "aux_size": ps.aux().len(), "claim24": check_claim24(&ps)});
    ctx.artifact(|_| body.clone(), &report, || {
        let classes: Vec<String> = ps.classes().iter().map(|c| c.to_string()).collect();
        format!("r={} classes {}", ps.r(), classes.join(" "))
    })?;
    Ok(0)
}

fn triple_json(t: &Option<Triple>) -> Value {
    match t {
        Some((a, b, c)) => json!([a.to_one_indexed(), b.to_one_indexed(), c.to_one_indexed()]),
        None => Value::Null,
    }
}

pub fn cancellative(ctx: &mut Ctx, a: CancellativeArgs) -> Result<u8, CliError> {
    let key = if a.union_free { "union_free" } else { "cancellative" };
    if let Some(path) = &a.input {
        let input = ctx.load(path)?;
        let h = input.full_family();
        let violation = if a.union_free {
            unionfree_violation(&h, a.l)?
        } else {
            cancellative_violation(&h, a.l)?
        };
        let ok = violation.is_none();
        let mut record = json!({"l": a.l, "size": h.len(), "violation": triple_json(&violation)});
        record[key] = json!(ok);
        ctx.emit(&record, || format!("{key}={ok}"));
        return Ok(0);
    }
    let n = need(a.n, "n")?;
    let settings = a.budget.settings();
    let r = if a.union_free {
        max_unionfree_star(n, a.l, &settings)?
    } else {
        max_cancellative(n, a.l, &settings)?
    };
    write_witness(ctx, &r)?;
    let mut record = serde_json::to_value(&r).expect("result serializes");
    record["n"] = json!(n);
    record["l"] = json!(a.l);
    record["condition"] = json!(key);
    record["bound"] = json!(cancellative_bound(n, a.l));
    let record = ctx.with_manifest(record, Some(&settings));
    ctx.emit(&record, || search_pretty(&r));
    Ok(if r.proved_optimal { 0 } else { 3 })
}

pub fn ex3_cmd(ctx: &mut Ctx, a: Ex3Args) -> Result<u8, CliError> {
    let pattern: Pattern = a.pattern.parse()?;
    let settings = a.budget.settings();
    let r = ex3(a.n, pattern, &settings)?;
    write_witness(ctx, &r)?;
    let mut record = serde_json::to_value(&r).expect("result serializes");
    record["n"] = json!(a.n);
    record["pattern"] = serde_json::to_value(pattern).expect("pattern serializes");
    record["source"] = json!("computed");
    let record = ctx.with_manifest(record, Some(&settings));
    ctx.emit(&record, || format!("ex3({}, {:?}) = {}; {}", a.n, pattern, r.optimum, search_pretty(&r)));
    Ok(if r.proved_optimal { 0 } else { 3 })
}

pub fn crosscheck(ctx: &mut Ctx, a: CrosscheckArgs) -> Result<u8, CliError> {
    let settings = a.budget.settings();
    let x = crosscheck_mtilde(a.n, a.c, &settings)?;
    let record = ctx.with_manifest(serde_json::to_value(&x).expect("crosscheck serializes"), Some(&settings));
    ctx.emit(&record, || {
        format!(
            "n={} c={}: tilde {} + {} vs full {}: {:?}",
            x.n,
            x.c,
            x.tilde_optimum,
            x.n + 1,
            x.full_optimum,
            x.holds
        )
    });
    Ok(match x.holds {
        Some(true) => 0,
        Some(false) => 1,
        None => 3,
    })
}

fn content_kind(l: &Loaded) -> &'static str {
    match l.content {
        Content::Family(_) => "family",
        Content::Tilde(_) => "tilde",
    }
}
