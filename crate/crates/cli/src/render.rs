//! Command bodies and their text / JSON / CSV renderings.

use std::fmt::Write as _;

use num_bigint::BigUint;
use serde::Serialize;
use serde_json::{json, Value};
use ucf_core::bounds::{self, BoundReport};
use ucf_core::decomposition::{decompose as build, Decomposition, Verification};
use ucf_core::dyadic::format_ratio;
use ucf_core::enumeration::{self, AuditReport};
use ucf_core::family::MAX_MATERIALIZED_N;
use ucf_core::ucf::{format_set, write as write_ucf};
use ucf_core::{AuditMode, Error, SetFamily};

use crate::{Failure, Format, KPolicy, Outcome};

/// Sorted keys: `serde_json::Value` objects are ordered maps.
fn to_json<T: Serialize>(v: &T) -> String {
    let value = serde_json::to_value(v).expect("serializable");
    let mut s = serde_json::to_string_pretty(&value).expect("serializable");
    s.push('\n');
    s
}

fn domain(e: Error) -> Failure {
    Failure::usage(e.to_string())
}

fn ok(text: String) -> Outcome {
    Outcome { text, checks_passed: true, notes: Vec::new() }
}

fn only_text_or_json(format: Format) -> Result<(), Failure> {
    if format == Format::Csv {
        return Err(Failure::usage("csv output is only available for enumerate and theta-table"));
    }
    Ok(())
}

pub fn check(family: &SetFamily, format: Format) -> Result<Outcome, Failure> {
    only_text_or_json(format)?;
    let n = family.n();
    let ell = family.length();
    let erdos = bounds::erdos_bound(n, ell).map_err(domain)?;
    let report = match bounds::bound_report(family) {
        Ok(r) => Some(r),
        Err(Error::NotUnionClosed { .. }) => None,
        Err(e) => return Err(domain(e)),
    };
    let violation = family.closure_violation();
    let passed = report.as_ref().is_none_or(BoundReport::all_hold);

    let text = match format {
        Format::Json => {
            let value = match &report {
                Some(r) => {
                    let mut v = serde_json::to_value(r).expect("serializable");
                    v["union_closed"] = json!(true);
                    v
                }
                None => {
                    let (a, b) = violation.expect("not union-closed");
                    json!({
                        "union_closed": false,
                        "violation": [format_set(a), format_set(b)],
                        "n": n,
                        "ell": ell,
                        "family_size": family.len().to_string(),
                        "erdos": erdos.to_string(),
                    })
                }
            };
            to_json(&value)
        }
        _ => {
            let mut s = String::new();
            match &report {
                Some(r) => {
                    writeln!(s, "union-closed: yes").unwrap();
                    writeln!(s, "n: {}", r.n).unwrap();
                    writeln!(s, "length: {}", r.ell).unwrap();
                    writeln!(s, "size: {}", r.family_size).unwrap();
                    let tight = if r.theorem1_tight { " (tight)" } else { "" };
                    writeln!(s, "theorem1: {}{tight}", r.theorem1).unwrap();
                    writeln!(s, "erdos: {}", r.erdos).unwrap();
                    match (&r.p_hat, &r.theta_at_phat) {
                        (Some(p), Some(t)) => {
                            writeln!(s, "p_hat: {p}").unwrap();
                            writeln!(s, "theta(ell, n, p_hat): {t} ≈ {}", t.to_decimal(15))
                                .unwrap();
                        }
                        _ => writeln!(s, "p_hat: n/a (length 0)").unwrap(),
                    }
                    let verdict = if r.reimer_holds { "holds" } else { "FAILS" };
                    writeln!(s, "reimer: {verdict} (sum of member sizes {})", r.member_total)
                        .unwrap();
                }
                None => {
                    let (a, b) = violation.expect("not union-closed");
                    writeln!(s, "union-closed: no ({a} ∪ {b} is missing)").unwrap();
                    writeln!(s, "n: {n}").unwrap();
                    writeln!(s, "length: {ell}").unwrap();
                    writeln!(s, "size: {}", family.len()).unwrap();
                    writeln!(s, "erdos: {erdos}").unwrap();
                }
            }
            s
        }
    };
    Ok(Outcome { text, checks_passed: passed, notes: Vec::new() })
}

pub fn closure(family: &SetFamily) -> Outcome {
    ok(write_ucf(&ucf_core::union_closure(family)))
}

fn set_list(f: &SetFamily) -> Vec<String> {
    f.iter().map(|&s| format_set(s)).collect()
}

fn decomposition_json(d: &Decomposition, v: &Verification) -> Value {
    let blocks: Vec<Value> = d
        .blocks
        .iter()
        .enumerate()
        .map(|(i, b)| {
            json!({
                "index": i + 1,
                "diff": format_set(b.diff),
                "c_family": set_list(&b.c_family),
                "d_family": set_list(&b.d_family),
            })
        })
        .collect();
    json!({
        "chain": d.chain.sets().iter().map(|&s| format_set(s)).collect::<Vec<_>>(),
        "blocks": blocks,
        "residual": format_set(d.residual),
        "verification": {
            "partition_ok": v.partition_ok,
            "size_ok": v.size_ok,
            "closure_ok": v.closure_ok,
            "shrink_ok": v.shrink_ok,
            "closure_skipped": v.closure_skipped,
        },
    })
}

pub fn decompose(family: &SetFamily, format: Format) -> Result<Outcome, Failure> {
    only_text_or_json(format)?;
    let (d, v) = build(family).map_err(domain)?;
    let text = match format {
        Format::Json => to_json(&decomposition_json(&d, &v)),
        _ => {
            let mut s = String::new();
            let chain: Vec<String> = d.chain.sets().iter().map(|&c| format_set(c)).collect();
            writeln!(s, "chain: {}", chain.join(" > ")).unwrap();
            writeln!(s, "residual: {}", format_set(d.residual)).unwrap();
            for (i, b) in d.blocks.iter().enumerate() {
                writeln!(s, "block {}: diff {}", i + 1, format_set(b.diff)).unwrap();
                writeln!(s, "  C: {}", set_list(&b.c_family).join(" | ")).unwrap();
                writeln!(s, "  D: {}", set_list(&b.d_family).join(" | ")).unwrap();
            }
            let size: usize = d.blocks.iter().map(|b| b.d_family.len()).sum();
            writeln!(s, "size: 1 + {size} = {}", family.len()).unwrap();
            writeln!(s, "verification:").unwrap();
            writeln!(s, "  partition_ok: {}", v.partition_ok).unwrap();
            writeln!(s, "  size_ok: {}", v.size_ok).unwrap();
            writeln!(s, "  closure_ok: {}", v.closure_ok).unwrap();
            writeln!(s, "  shrink_ok: {}", v.shrink_ok).unwrap();
            for i in &v.closure_skipped {
                writeln!(s, "  note: closure check skipped for block {i} (C_{} is empty)", i + 1)
                    .unwrap();
            }
            s
        }
    };
    Ok(Outcome { text, checks_passed: v.all_ok(), notes: Vec::new() })
}

pub fn extremal(n: u32, ell: u32) -> Result<Outcome, Failure> {
    if n == 0 || n > MAX_MATERIALIZED_N {
        return Err(Failure::usage(format!(
            "n = {n} is outside 1..={MAX_MATERIALIZED_N} (at most 2^{MAX_MATERIALIZED_N} sets are materialized)"
        )));
    }
    let family = SetFamily::top_layers(n, ell).map_err(domain)?;
    Ok(ok(write_ucf(&family)))
}

pub fn render_audit(r: &AuditReport, format: Format) -> String {
    match format {
        Format::Json => to_json(r),
        Format::Csv => format!("{}\n{}\n", AuditReport::CSV_HEADER, r.csv_row()),
        Format::Text => {
            let mut s = String::new();
            let header: Vec<&str> = AuditReport::CSV_HEADER.split(',').collect();
            let row = r.csv_row();
            for (k, v) in header.iter().zip(row.split(',')) {
                let v = if v.is_empty() { "-" } else { v };
                writeln!(s, "{k}: {v}").unwrap();
            }
            let verdict = if r.all_clear() { "PASS" } else { "FAIL" };
            writeln!(s, "result: {verdict}").unwrap();
            s
        }
    }
}

pub fn enumerate(n: u32, mode: AuditMode, threads: usize, format: Format) -> Result<Outcome, Failure> {
    let report = enumeration::audit(n, mode, threads.max(1)).map_err(domain)?;
    Ok(Outcome {
        text: render_audit(&report, format),
        checks_passed: report.all_clear(),
        notes: Vec::new(),
    })
}

pub const THETA_CSV_HEADER: &str = "n,k,prefix_sum,p_hat,theta_num,theta_exp,ratio";

/// One Θ table row, and whether the prefix sum stays below Θ.
pub fn theta_row(n: u32, k: u32, prefix: &BigUint) -> Result<(String, bool), Failure> {
    let p = bounds::p_hat(n, k).map_err(domain)?;
    let t = bounds::theta(k, n, p);
    let holds = t >= ucf_core::DyadicRational::from(prefix.clone());
    let ratio = format_ratio(&(prefix << t.exponent()), t.numerator().magnitude(), 15);
    let row = format!("{n},{k},{prefix},{p},{},{},{ratio}", t.numerator(), t.exponent());
    Ok((row, holds))
}

pub fn theta_table(n_min: u32, n_max: u32, policy: KPolicy) -> Result<Outcome, Failure> {
    if n_max > bounds::MAX_FORMULA_N {
        return Err(Failure::usage(format!(
            "--n-max {n_max} exceeds {}",
            bounds::MAX_FORMULA_N
        )));
    }
    if n_min == 0 || n_min > n_max {
        return Err(Failure::usage("--n-min must satisfy 1 <= n-min <= n-max"));
    }
    let mut text = String::from(THETA_CSV_HEADER);
    text.push('\n');
    let mut passed = true;
    let mut notes = Vec::new();
    for n in n_min..=n_max {
        let (lo, hi) = match policy {
            KPolicy::All => (1, n),
            KPolicy::Range(a, b) => (a, b.min(n)),
        };
        let row = bounds::binomial_row(n);
        let mut prefix: BigUint = row.iter().take(lo as usize).sum();
        for k in lo..=hi {
            prefix += &row[k as usize];
            let (line, holds) = theta_row(n, k, &prefix)?;
            if !holds {
                passed = false;
                notes.push(format!("bound fails at n = {n}, k = {k}"));
            }
            text.push_str(&line);
            text.push('\n');
        }
    }
    Ok(Outcome { text, checks_passed: passed, notes })
}
