use std::collections::{BTreeMap, BTreeSet};
use std::io::Write;
use std::path::PathBuf;

use num_rational::BigRational;
use serde_json::{json, Map, Value};
use zcx::classify::CensusRow;
use zcx::gentree::{construct_levels, count_levels, label_of, TreeLabel};
use zcx::series::{gf, GfName, Params};
use zcx::verify::{run as run_suites, Suite, VerifyOptions};
use zcx::{all_convex, census as census_row, count_convex, Polyomino};

use crate::{CliError, CliResult, ListFormat, ReportFormat, SuiteArg, TableFormat, TreeMode};

/// Largest size the constructive tree mode will materialize.
const MAX_CONSTRUCT: usize = 12;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn need_size(size: usize, flag: &str) -> CliResult {
    if size < 2 {
        return Err(usage(format!("{flag} must be at least 2")));
    }
    Ok(())
}

fn write_json(out: &mut impl Write, v: &Value) -> CliResult {
    serde_json::to_writer_pretty(&mut *out, v).map_err(std::io::Error::from)?;
    writeln!(out)?;
    Ok(())
}

pub fn enumerate(out: &mut impl Write, size: usize, count_only: bool, format: ListFormat) -> CliResult {
    need_size(size, "--size")?;
    if count_only {
        let n = count_convex(size);
        match format {
            ListFormat::Json => write_json(out, &json!({ "size": size, "count": n.to_string() }))?,
            _ => writeln!(out, "{n}")?,
        }
        return Ok(());
    }
    match format {
        ListFormat::Lines => {
            for p in all_convex(size) {
                writeln!(out, "{p}")?;
            }
        }
        ListFormat::Ascii => {
            for (i, p) in all_convex(size).enumerate() {
                if i > 0 {
                    writeln!(out)?;
                }
                writeln!(out, "{p}")?;
                writeln!(out, "{}", p.render_ascii())?;
            }
        }
        ListFormat::Json => {
            // streamed by hand so large sizes never sit in memory
            write!(out, "{{\n  \"size\": {size},\n  \"polyominoes\": [")?;
            let mut count = 0u64;
            for p in all_convex(size) {
                let sep = if count == 0 { "" } else { "," };
                write!(out, "{sep}\n    \"{p}\"")?;
                count += 1;
            }
            let close = if count == 0 { "]" } else { "\n  ]" };
            writeln!(out, "{close},\n  \"count\": \"{count}\"\n}}")?;
        }
    }
    Ok(())
}

const CSV_COLUMNS: [&str; 12] = [
    "size",
    "total",
    "l_convex",
    "centered",
    "four_stack",
    "z_convex",
    "ascending",
    "descending",
    "c12",
    "c21",
    "c22",
    "directed_convex",
];

fn census_fields(r: &CensusRow) -> [String; 12] {
    [
        r.size.to_string(),
        r.total_convex.to_string(),
        r.l_convex.to_string(),
        r.centered.to_string(),
        r.four_stack.to_string(),
        r.z_convex.to_string(),
        r.ascending.to_string(),
        r.descending.to_string(),
        r.c12.to_string(),
        r.c21.to_string(),
        r.c22.to_string(),
        r.directed_convex.to_string(),
    ]
}

pub fn census(out: &mut impl Write, min_size: usize, max_size: usize, format: TableFormat) -> CliResult {
    need_size(min_size, "--min-size")?;
    if max_size < min_size {
        return Err(usage("--max-size is below --min-size"));
    }
    let rows: Vec<CensusRow> = (min_size..=max_size).map(census_row).collect();
    match format {
        TableFormat::Csv => {
            let pairs: BTreeSet<(u32, u32)> = rows.iter().flat_map(|r| r.by_degree_pair.keys().copied()).collect();
            let mut header: Vec<String> = CSV_COLUMNS.iter().map(|s| s.to_string()).collect();
            header.extend(pairs.iter().map(|(ne, nw)| format!("deg_{ne}_{nw}")));
            writeln!(out, "{}", header.join(","))?;
            for r in &rows {
                let mut fields = census_fields(r).to_vec();
                fields.extend(pairs.iter().map(|&(ne, nw)| r.degree_count(ne, nw).to_string()));
                writeln!(out, "{}", fields.join(","))?;
            }
        }
        TableFormat::Json => {
            let rows: Vec<Value> = rows
                .iter()
                .map(|r| {
                    let mut obj = Map::new();
                    for (k, v) in CSV_COLUMNS.iter().zip(census_fields(r)) {
                        let v = if *k == "size" { json!(r.size) } else { json!(v) };
                        obj.insert(k.to_string(), v);
                    }
                    obj.insert("ascending_and_descending".into(), json!(r.ascending_and_descending.to_string()));
                    let pairs: Map<String, Value> = r
                        .by_degree_pair
                        .iter()
                        .map(|(&(ne, nw), c)| (format!("{ne}_{nw}"), json!(c.to_string())))
                        .collect();
                    obj.insert("by_degree_pair".into(), Value::Object(pairs));
                    Value::Object(obj)
                })
                .collect();
            write_json(out, &json!({ "rows": rows }))?;
        }
    }
    Ok(())
}

fn parse_rational(flag: &str, s: &str) -> Result<BigRational, CliError> {
    let v: BigRational = s.trim().parse().map_err(|_| usage(format!("{flag}: not a rational number: {s:?}")))?;
    Ok(v)
}

fn ratio_text(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn series(
    out: &mut impl Write,
    name: &str,
    raw: [Option<String>; 3],
    terms: usize,
    format: TableFormat,
) -> CliResult {
    let g: GfName = name.parse().map_err(|e: zcx::series::SeriesError| usage(e.to_string()))?;
    if terms == 0 {
        return Err(usage("--terms must be at least 1"));
    }
    let mut values: [Option<BigRational>; 3] = [None, None, None];
    for (i, (flag, v)) in ["--x", "--y", "--z"].iter().zip(&raw).enumerate() {
        if let Some(s) = v {
            values[i] = Some(parse_rational(flag, s)?);
        }
    }
    let [x, y, z] = values;
    let params = Params { x, y, z };
    let s = gf(g, terms, &params).map_err(|e| usage(e.to_string()))?;
    let coeffs: Vec<String> = s.coeffs().iter().map(ratio_text).collect();
    match format {
        TableFormat::Json => {
            let mut p = Map::new();
            for (c, v) in [('x', &params.x), ('y', &params.y), ('z', &params.z)] {
                if g.params().contains(&c) {
                    if let Some(v) = v {
                        p.insert(c.to_string(), json!(ratio_text(v)));
                    }
                }
            }
            write_json(
                out,
                &json!({ "name": g.name(), "params": p, "terms": terms, "coeffs": coeffs }),
            )?;
        }
        TableFormat::Csv => {
            writeln!(out, "n,coeff")?;
            for (k, c) in coeffs.iter().enumerate() {
                writeln!(out, "{k},{c}")?;
            }
        }
    }
    Ok(())
}

fn dump(out: &mut impl Write, counts: &BTreeMap<TreeLabel, String>) -> CliResult {
    for (label, count) in counts {
        writeln!(out, "{label},{count}")?;
    }
    Ok(())
}

pub fn gentree(out: &mut impl Write, max_size: usize, mode: TreeMode, dump_level: Option<usize>) -> CliResult {
    need_size(max_size, "--max-size")?;
    if let Some(k) = dump_level {
        if k < 2 || k > max_size {
            return Err(usage(format!("--dump-level must lie in 2..={max_size}")));
        }
    }
    match mode {
        TreeMode::Labels => {
            let levels = count_levels(max_size);
            if let Some(k) = dump_level {
                let level = &levels[k - 2];
                let counts = level.counts.iter().map(|(l, c)| (*l, c.to_string())).collect();
                return dump(out, &counts);
            }
            writeln!(out, "size,total,centered,non_centered,rectangular")?;
            for l in &levels {
                writeln!(
                    out,
                    "{},{},{},{},{}",
                    l.level,
                    l.total(),
                    l.centered(),
                    l.non_centered(),
                    l.rectangular()
                )?;
            }
        }
        TreeMode::Construct => {
            if max_size > MAX_CONSTRUCT {
                return Err(usage(format!("construct mode is limited to --max-size {MAX_CONSTRUCT}")));
            }
            let levels = construct_levels(max_size);
            let labels_of = |level: &[Polyomino]| {
                let mut m: BTreeMap<TreeLabel, u64> = BTreeMap::new();
                for p in level {
                    *m.entry(label_of(p).expect("grown shapes are ascending")).or_default() += 1;
                }
                m
            };
            if let Some(k) = dump_level {
                let counts = labels_of(&levels[k - 2]).into_iter().map(|(l, c)| (l, c.to_string())).collect();
                return dump(out, &counts);
            }
            writeln!(out, "size,total,centered,non_centered,rectangular")?;
            for (i, level) in levels.iter().enumerate() {
                let m = labels_of(level);
                let sum = |keep: &dyn Fn(&TreeLabel) -> bool| -> u64 {
                    m.iter().filter(|(l, _)| keep(l)).map(|(_, c)| c).sum()
                };
                writeln!(
                    out,
                    "{},{},{},{},{}",
                    i + 2,
                    level.len(),
                    sum(&|l| l.family.is_centered()),
                    sum(&|l| !l.family.is_centered()),
                    sum(&|l| l.rect)
                )?;
            }
        }
    }
    Ok(())
}

pub fn verify(
    out: &mut impl Write,
    suite: SuiteArg,
    max_size: usize,
    fixtures: Option<PathBuf>,
    format: ReportFormat,
    timing: bool,
) -> CliResult {
    need_size(max_size, "--max-size")?;
    if max_size > 12 {
        return Err(usage("--max-size is limited to 12"));
    }
    let suite = match suite {
        SuiteArg::All => Suite::All,
        SuiteArg::Identities => Suite::Identities,
        SuiteArg::Gentree => Suite::Gentree,
        SuiteArg::Refined => Suite::Refined,
        SuiteArg::Structure => Suite::Structure,
        SuiteArg::Kernels => Suite::Kernels,
        SuiteArg::Asymptotics => Suite::Asymptotics,
    };
    let opts = VerifyOptions { max_size, fixtures, ..VerifyOptions::default() };
    let reports = run_suites(suite, &opts);
    let passed = reports.iter().all(|r| r.passed());
    match format {
        ReportFormat::Text => {
            for r in &reports {
                write!(out, "{}", r.render_text(timing))?;
            }
            writeln!(out, "{}", if passed { "ALL PASSED" } else { "FAILURES FOUND" })?;
        }
        ReportFormat::Json => {
            let suites: Vec<Value> = reports.iter().map(|r| r.to_json(timing)).collect();
            write_json(out, &json!({ "passed": passed, "suites": suites }))?;
        }
    }
    if passed {
        Ok(())
    } else {
        Err(CliError::ChecksFailed)
    }
}

pub fn render(out: &mut impl Write, encoding: &str) -> CliResult {
    let p = Polyomino::decode(encoding).map_err(|e| usage(format!("bad encoding {encoding:?}: {e}")))?;
    writeln!(out, "{}", p.render_ascii())?;
    Ok(())
}
