//! Command implementations behind the `plumb` binary. Each command returns
//! its rendered output and exit code so that it can be tested in-process.
//!
//! Exit codes: 0 success (for `laufer`: L-space), 1 `laufer` verdict "not an
//! L-space", 2 any error.

use std::fs;
use std::path::Path;

use serde_json::{json, Value};

use crate::arith::{hj_expand, parse_rational, tree_determinant};
use crate::classify::{classify, ClassificationReport, Prediction};
use crate::diag::{delta, is_negative_definite, rooted_diagonalize, surger, MarkedGraph};
use crate::enumerate::enumerate_and_classify;
use crate::graph::{is_minimal, minimality_violations, minimalize, parse_graph, PlumbingGraph};
use crate::laufer::{laufer_run, LauferOptions, TieBreak, Verdict};
use crate::pi1::{abelianization_invariants, mumford_presentation};

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Format {
    #[default]
    Text,
    Machine,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "text" => Ok(Format::Text),
            "machine" | "json" => Ok(Format::Machine),
            _ => Err(format!("unknown format `{s}` (text, machine)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Output {
            stdout,
            stderr: String::new(),
            code: 0,
        }
    }

    fn error(message: impl std::fmt::Display) -> Self {
        Output {
            stdout: String::new(),
            stderr: format!("error: {message}\n"),
            code: 2,
        }
    }
}

/// One run's result: the echoed input, a text body and the machine payload.
#[derive(Debug, Clone)]
pub struct Report {
    pub command: &'static str,
    pub input_echo: String,
    pub text: String,
    pub payload: Value,
}

impl Report {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => {
                let mut out = String::new();
                for line in self.input_echo.lines() {
                    out.push_str("# input: ");
                    out.push_str(line);
                    out.push('\n');
                }
                out.push_str(&self.text);
                out
            }
            Format::Machine => {
                let obj = json!({
                    "schema_version": SCHEMA_VERSION,
                    "command": self.command,
                    "input_echo": self.input_echo,
                    "payload": self.payload,
                });
                let mut s = serde_json::to_string_pretty(&obj).expect("json values serialize");
                s.push('\n');
                s
            }
        }
    }
}

fn load(path: &Path) -> Result<PlumbingGraph, Output> {
    let text = fs::read_to_string(path)
        .map_err(|e| Output::error(format!("{}: {e}", path.display())))?;
    parse_graph(&text).map_err(|e| Output::error(format!("{}: {e}", path.display())))
}

macro_rules! try_load {
    ($path:expr) => {
        match load($path) {
            Ok(g) => g,
            Err(out) => return out,
        }
    };
}

pub fn validate(path: &Path, format: Format) -> Output {
    let g = try_load!(path);
    let blow_downs = minimality_violations(&g).len();
    let nd = is_negative_definite(&g);
    let mut status = String::from("valid, ");
    if blow_downs == 0 {
        status.push_str("minimal, ");
    } else {
        let plural = if blow_downs == 1 { "" } else { "s" };
        status.push_str(&format!("NOT minimal ({blow_downs} blow-down{plural} available), "));
    }
    status.push_str(if nd { "negative-definite" } else { "NOT negative-definite" });
    let det = tree_determinant(&g);
    let report = Report {
        command: "validate",
        input_echo: g.serialize(),
        text: format!("{status}\ndeterminant={det}\n"),
        payload: json!({
            "valid": true,
            "vertices": g.len(),
            "minimal": blow_downs == 0,
            "blow_downs_available": blow_downs,
            "negative_definite": nd,
            "determinant": det.to_string(),
        }),
    };
    Output::ok(report.render(format))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct LauferArgs {
    pub trace: bool,
    pub tie_break: TieBreak,
    pub no_early_exit: bool,
    pub minimalize: bool,
}

pub fn laufer(path: &Path, args: LauferArgs, format: Format) -> Output {
    let input = try_load!(path);
    let g = if is_minimal(&input) {
        input.clone()
    } else if args.minimalize {
        minimalize(&input)
    } else {
        return Output::error(format!(
            "{}: graph is not minimal; rerun with --minimalize to blow down first",
            path.display()
        ));
    };
    if !is_negative_definite(&g) {
        return Output::error(format!(
            "{}: graph is not negative-definite; Laufer's algorithm does not apply",
            path.display()
        ));
    }
    let opts = LauferOptions {
        tie_break: args.tie_break,
        trace: args.trace,
        early_exit: !(args.trace || args.no_early_exit),
        allow_indefinite: false,
    };
    let res = match laufer_run(&g, &opts) {
        Ok(r) => r,
        Err(e) => return Output::error(e),
    };

    let mut text = String::new();
    if g != input {
        for line in g.serialize().lines() {
            text.push_str(&format!("# minimalized: {line}\n"));
        }
    }
    if let Some(trace) = &res.trace {
        text.push_str(&trace.render(&g));
    }
    text.push_str(&format!(
        "verdict={}\nchi={}\niterations={}\nterminal={}\n",
        res.verdict,
        res.chi_min,
        res.iterations,
        res.terminal.as_str()
    ));
    if let Some(z) = &res.z_min {
        text.push_str(&format!("z_min={}\n", z.render(&g)));
    }

    let trace_json = res.trace.as_ref().map(|t| {
        t.steps
            .iter()
            .map(|s| {
                json!({
                    "step": s.index,
                    "vertex": s.vertex,
                    "chi": s.chi_after,
                    "cycle": s.cycle_after.render(&g),
                })
            })
            .collect::<Vec<_>>()
    });
    let report = Report {
        command: "laufer",
        input_echo: input.serialize(),
        text,
        payload: json!({
            "analyzed": g.serialize(),
            "tie_break": args.tie_break.to_string(),
            "early_exit": opts.early_exit,
            "verdict": res.verdict.as_str(),
            "chi": res.chi_min,
            "iterations": res.iterations,
            "terminal": res.terminal.as_str(),
            "z_min": res.z_min.as_ref().map(|z| z.render(&g)),
            "last_cycle": res.last_cycle.render(&g),
            "trace": trace_json,
        }),
    };
    let mut out = Output::ok(report.render(format));
    out.code = match res.verdict {
        Verdict::LatticeLSpace => 0,
        Verdict::NotLatticeLSpace => 1,
    };
    out
}

fn classification_report(r: &ClassificationReport) -> Report {
    let h = r.analyzed();
    let e8_text = r.proper_e8_witness.as_ref().map(|w| {
        w.iter()
            .map(|(role, id)| format!("{}={id}", role.label()))
            .collect::<Vec<_>>()
            .join(",")
    });
    let violation_text = r
        .insulation_violation
        .as_ref()
        .map(|(id, kind)| format!("{id}:{}", kind.as_str()));
    let mut text = String::new();
    if let Some(m) = &r.minimalized {
        for line in m.serialize().lines() {
            text.push_str(&format!("# minimalized: {line}\n"));
        }
    }
    text.push_str(&format!(
        "negative_definite={}\nminimal={}\nvery_bad_witness={}\nproper_e8_witness={}\n\
         insulated={}\ninsulation_violation={}\nlaufer_verdict={}\nprediction={}\n",
        r.negative_definite,
        r.minimal,
        r.very_bad_witness.as_deref().unwrap_or("none"),
        e8_text.as_deref().unwrap_or("none"),
        r.insulated,
        violation_text.as_deref().unwrap_or("none"),
        r.laufer_verdict.as_str(),
        r.prediction,
    ));
    let e8_json = r.proper_e8_witness.as_ref().map(|w| {
        w.iter()
            .map(|(role, id)| json!({"role": role.label(), "vertex": id}))
            .collect::<Vec<_>>()
    });
    Report {
        command: "classify",
        input_echo: r.input.serialize(),
        text,
        payload: json!({
            "analyzed": h.serialize(),
            "negative_definite": r.negative_definite,
            "not_ND": !r.negative_definite,
            "minimal": r.minimal,
            "very_bad_witness": r.very_bad_witness,
            "proper_e8_witness": e8_json,
            "insulated": r.insulated,
            "insulation_violation": r.insulation_violation.as_ref().map(|(id, kind)| {
                json!({"vertex": id, "condition": kind.as_str()})
            }),
            "laufer_verdict": r.laufer_verdict.as_str(),
            "prediction": r.prediction.as_str(),
        }),
    }
}

pub fn classify_cmd(path: &Path, format: Format) -> Output {
    let g = try_load!(path);
    Output::ok(classification_report(&classify(&g)).render(format))
}

pub fn derationalize(path: &Path, root: &str, format: Format) -> Output {
    let g = try_load!(path);
    let mg = match MarkedGraph::new(g.clone(), root) {
        Ok(m) => m,
        Err(e) => return Output::error(e),
    };
    let d = match delta(&mg) {
        Ok(d) => d,
        Err(e) => return Output::error(e),
    };
    let form = rooted_diagonalize(&g, root).expect("negative-definite forms diagonalize");
    let der = d.recip();
    let diagonal: Vec<Value> = g
        .ids()
        .iter()
        .zip(form.entries())
        .map(|(id, e)| json!({"vertex": id, "entry": e.to_string()}))
        .collect();
    let report = Report {
        command: "derationalize",
        input_echo: g.serialize(),
        text: format!("delta={d} derationalizer={der}\n"),
        payload: json!({
            "root": root,
            "delta": d.to_string(),
            "derationalizer": der.to_string(),
            "diagonal": diagonal,
            "elimination_order": form.elimination_order(),
        }),
    };
    Output::ok(report.render(format))
}

pub fn surger_cmd(path: &Path, root: &str, coef: &str, format: Format) -> Output {
    let g = try_load!(path);
    let r = match parse_rational(coef) {
        Ok(r) => r,
        Err(e) => return Output::error(e),
    };
    let mg = match MarkedGraph::new(g.clone(), root) {
        Ok(m) => m,
        Err(e) => return Output::error(e),
    };
    let h = match surger(&mg, &r) {
        Ok(h) => h,
        Err(e) => return Output::error(e),
    };
    let chain = hj_expand(&r).expect("surger already expanded r");
    let report = Report {
        command: "surger",
        input_echo: g.serialize(),
        text: h.serialize(),
        payload: json!({
            "root": root,
            "coef": r.to_string(),
            "chain": chain.entries(),
            "graph": h.serialize(),
        }),
    };
    Output::ok(report.render(format))
}

pub fn pi1(path: &Path, abelianization: bool, format: Format) -> Output {
    let g = try_load!(path);
    let p = mumford_presentation(&g, None).expect("default ordering is consistent");
    let mut text = p.render();
    let divisors = abelianization.then(|| abelianization_invariants(&p));
    if let Some(d) = &divisors {
        let list: Vec<String> = d.iter().map(|x| x.to_string()).collect();
        text.push_str(&format!("H1 divisors: {}\n", list.join(", ")));
    }
    let relations: Vec<String> = p.render().lines().skip(1).map(str::to_string).collect();
    let ordering: Vec<Value> = p
        .neighbor_ordering
        .iter()
        .map(|(v, n)| json!({"vertex": v, "neighbors": n}))
        .collect();
    let report = Report {
        command: "pi1",
        input_echo: g.serialize(),
        text,
        payload: json!({
            "generators": p.generators,
            "relations": relations,
            "neighbor_ordering": ordering,
            "h1_divisors": divisors.map(|d| d.iter().map(|x| x.to_string()).collect::<Vec<_>>()),
        }),
    };
    Output::ok(report.render(format))
}

pub fn hjcf(value: &str, format: Format) -> Output {
    let r = match parse_rational(value) {
        Ok(r) => r,
        Err(e) => return Output::error(e),
    };
    let e = match hj_expand(&r) {
        Ok(e) => e,
        Err(err) => return Output::error(err),
    };
    let report = Report {
        command: "hjcf",
        input_echo: r.to_string(),
        text: format!("value={r} expansion={e}\n"),
        payload: json!({"value": r.to_string(), "expansion": e.entries()}),
    };
    Output::ok(report.render(format))
}

/// Parses `a..b` (either end may be negative).
pub fn parse_weight_range(s: &str) -> Result<(i64, i64), String> {
    let (a, b) = s
        .split_once("..")
        .ok_or_else(|| format!("expected a range like -5..-2, found `{s}`"))?;
    let a = a.trim().parse().map_err(|_| format!("bad range start in `{s}`"))?;
    let b = b.trim().parse().map_err(|_| format!("bad range end in `{s}`"))?;
    Ok((a, b))
}

pub fn enumerate(max_vertices: usize, weights: (i64, i64), out_dir: Option<&Path>, format: Format) -> Output {
    let results = match enumerate_and_classify(max_vertices, weights.0, weights.1) {
        Ok(r) => r,
        Err(e) => return Output::error(e),
    };
    let mut buckets = [0usize; 3];
    let (mut lspace, mut not_lspace) = (0usize, 0usize);
    for (_, r) in &results {
        buckets[r.prediction as usize] += 1;
        match r.laufer_verdict.as_str() {
            "lattice_L_space" => lspace += 1,
            _ => not_lspace += 1,
        }
    }
    let summary_text = format!(
        "max_vertices={max_vertices} weights={}..{}\ntotal={}\n{}={}\n{}={}\n{}={}\nlattice_L_space={lspace}\nnot_lattice_L_space={not_lspace}\n",
        weights.0,
        weights.1,
        results.len(),
        Prediction::LoNotLspace,
        buckets[0],
        Prediction::NotLoLspace,
        buckets[1],
        Prediction::Undetermined,
        buckets[2],
    );
    let summary = Report {
        command: "enumerate",
        input_echo: format!("max_vertices={max_vertices} weights={}..{}", weights.0, weights.1),
        text: summary_text,
        payload: json!({
            "max_vertices": max_vertices,
            "weight_min": weights.0,
            "weight_max": weights.1,
            "total": results.len(),
            "predictions": {
                "LO_not_Lspace": buckets[0],
                "notLO_Lspace": buckets[1],
                "undetermined": buckets[2],
            },
            "laufer": {"lattice_L_space": lspace, "not_lattice_L_space": not_lspace},
        }),
    };
    let rendered = summary.render(format);

    if let Some(dir) = out_dir {
        let ext = match format {
            Format::Text => "txt",
            Format::Machine => "json",
        };
        let write = || -> std::io::Result<()> {
            fs::create_dir_all(dir)?;
            for (i, (_, r)) in results.iter().enumerate() {
                let name = dir.join(format!("graph_{:05}.{ext}", i + 1));
                fs::write(name, classification_report(r).render(format))?;
            }
            fs::write(dir.join(format!("summary.{ext}")), &rendered)
        };
        if let Err(e) = write() {
            return Output::error(format!("{}: {e}", dir.display()));
        }
    }
    Output::ok(rendered)
}
