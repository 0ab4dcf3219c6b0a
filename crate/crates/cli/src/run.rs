use std::fs;
use std::path::Path;

use kopt_core::dot::{gadget_to_dot, tsp_to_dot};
use kopt_core::gadget::{certify_xor, verify_double_spec, verify_parity_spec, GadgetKind};
use kopt_core::io::{read_json, to_json, write_cut, write_instance, write_json, write_jsonl};
use kopt_core::maxcut::{cut_value, run_flip, Cut, Side};
use kopt_core::reduction::{
    build_labeling, compile_tsp, complete_graph, initial_tour, CompletionMode, GadgetChoice, LabelingKind, SparseTsp,
};
use kopt_core::tsp::{is_tour, run_kopt, tour_weight, Neighborhood, Tour};
use kopt_core::verify::{
    audit_priorities, audit_structure, check_correspondence, check_strictness, enumerate_tours, sample_nonedge_tours, Oracle,
    PlsSampleReport,
};
use kopt_core::{Error, Result};
use serde::Serialize;
use serde_json::{json, Value};

use crate::{Cli, Cmd, Completion, ExportCmd, GenCmd, KoptArgs, OracleArg, VerifyCmd};

fn mode(c: Completion) -> CompletionMode {
    match c {
        Completion::Huge => CompletionMode::Huge,
        Completion::Priority => CompletionMode::Priority,
    }
}

fn print(v: &impl Serialize) -> Result<()> {
    print!("{}", to_json(v)?);
    Ok(())
}

/// Writes `report.json` as `{verdict, counterexample, report}` and echoes
/// it. Returns whether the verdict is a pass.
fn verdict(out: &Path, passed: bool, limited: bool, counterexample: Value, report: &impl Serialize) -> Result<bool> {
    let verdict = match (passed, limited) {
        (_, true) => "oracle-limited",
        (true, false) => "pass",
        (false, false) => "fail",
    };
    let doc = json!({
        "verdict": verdict,
        "counterexample": counterexample,
        "report": serde_json::to_value(report)?,
    });
    write_json(&out.join("report.json"), &doc)?;
    print(&doc)?;
    Ok(passed && !limited)
}

pub fn run(cli: Cli) -> Result<bool> {
    let out = cli.out.as_path();
    fs::create_dir_all(out)?;
    match cli.cmd {
        Cmd::Gen { what: GenCmd::Maxcut { src } } => {
            let (inst, cut) = src.load()?;
            write_instance(&out.join("instance.json"), &inst)?;
            write_cut(&out.join("cut.json"), &inst, &cut)?;
            print(&json!({
                "vertices": inst.num_vertices(),
                "edges": inst.num_edges(),
                "max_degree": inst.max_degree(),
                "cut_value": cut_value(&inst, &cut)?,
            }))?;
            Ok(true)
        }
        Cmd::Flip { src, pivot } => {
            let (inst, cut) = src.load()?;
            let t = run_flip(&inst, &cut, pivot.pivot(src.seed), pivot.limit)?;
            write_jsonl(&out.join("flip_trace.jsonl"), &t.steps)?;
            write_cut(&out.join("final_cut.json"), &inst, &t.final_cut)?;
            let seq: Vec<&str> = t.steps.iter().map(|s| inst.name(s.vertex)).collect();
            print(&json!({
                "initial_value": t.initial_value,
                "final_value": cut_value(&inst, &t.final_cut)?,
                "steps": t.steps.len(),
                "terminal": t.terminal,
                "sequence": seq,
            }))?;
            Ok(true)
        }
        Cmd::Compile { src, label, completion } => {
            let (inst, cut) = src.load()?;
            let lab = label.build(&inst)?;
            let tsp = compile_tsp(&inst, &lab, &GadgetChoice::standard())?;
            let tour = initial_tour(&tsp, &cut)?;
            write_json(&out.join("tsp.json"), &tsp)?;
            write_json(&out.join("tour.json"), &tour)?;
            if let Some(c) = completion {
                write_json(&out.join("complete.json"), &complete_graph(&tsp, mode(c))?)?;
            }
            let audit = audit_structure(&tsp);
            let failed: Vec<_> = audit.iter().filter(|c| !c.passed).collect();
            print(&json!({
                "vertices": tsp.num_vertices(),
                "edges": tsp.num_edges(),
                "gadgets": tsp.gadgets().len(),
                "k": lab.k,
                "tour_weight": tour_weight(&tsp, &tour)?,
                "audit_failures": failed,
            }))?;
            Ok(failed.is_empty())
        }
        Cmd::Kopt(a) => kopt(out, a),
        Cmd::Verify { what } => verify(out, cli.workers, what),
        Cmd::Export {
            what: ExportCmd::Dot { tsp, tour, gadget },
        } => {
            let dot = match (tsp, gadget) {
                (Some(p), _) => {
                    let tsp: SparseTsp = read_json(&p)?;
                    let tour: Option<Tour> = tour.map(|t| read_json(&t)).transpose()?;
                    tsp_to_dot(&tsp, tour.as_ref())
                }
                (None, Some(name)) => gadget_to_dot(&gadget_kind(&name)?.build()),
                (None, None) => return Err(Error::Input("give --tsp or --gadget".into())),
            };
            fs::write(out.join("graph.dot"), dot)?;
            Ok(true)
        }
    }
}

fn gadget_kind(name: &str) -> Result<GadgetKind> {
    GadgetKind::from_name(name).ok_or_else(|| Error::Input(format!("unknown gadget `{name}`")))
}

fn kopt(out: &Path, a: KoptArgs) -> Result<bool> {
    let (tsp, cut) = match &a.tsp {
        Some(p) => {
            let tsp: SparseTsp = read_json(p)?;
            let cut = Cut::uniform(tsp.h_vertex_count(), Side::First);
            (tsp, cut)
        }
        None => {
            let (inst, cut) = a.src.load()?;
            let lab = a.label.build(&inst)?;
            (compile_tsp(&inst, &lab, &GadgetChoice::standard())?, cut)
        }
    };
    let tour: Tour = match &a.tour {
        Some(p) => read_json(p)?,
        None => initial_tour(&tsp, &cut)?,
    };
    if !is_tour(tsp.num_vertices(), &tour) {
        return Err(Error::Input("starting tour is not a Hamiltonian cycle".into()));
    }
    let mut k = usize::try_from(tsp.labeling().k).unwrap_or(0);
    let tours;
    let complete;
    let nb = match a.oracle {
        OracleArg::Sparse => {
            let e = enumerate_tours(&tsp, a.caps.caps());
            if e.limited {
                let stats = json!({ "tours": e.tours.len(), "states": e.states });
                return verdict(out, false, true, Value::Null, &stats);
            }
            tours = e.tours;
            Neighborhood::SparseOracle { tsp: &tsp, tours: &tours }
        }
        OracleArg::Xchange => Neighborhood::XChange(&tsp),
        OracleArg::ThreeSwap => {
            complete = complete_graph(&tsp, mode(a.completion))?;
            k = 3;
            Neighborhood::Bounded3Swap(&complete)
        }
    };
    let t = run_kopt(&nb, &tour, k, a.pivot.pivot(a.src.seed), a.pivot.limit)?;
    write_jsonl(&out.join("kopt_trace.jsonl"), &t.steps)?;
    write_json(&out.join("final_tour.json"), &t.final_tour)?;
    let final_weight = t.steps.last().map_or(t.initial_weight.clone(), |s| s.weight_after.clone());
    print(&json!({
        "initial_weight": t.initial_weight,
        "final_weight": final_weight,
        "steps": t.steps.len(),
        "terminal": t.terminal,
    }))?;
    Ok(true)
}

fn verify(out: &Path, workers: usize, what: VerifyCmd) -> Result<bool> {
    match what {
        VerifyCmd::Gadget { name, rx, ry, rt, p } => {
            if name == "xor" {
                let r = certify_xor(p);
                return verdict(out, r.passed(), false, Value::Null, &r);
            }
            let kind = gadget_kind(&name)?;
            let g = kind.build();
            let spec = kind.spec();
            let (rx, ry) = (rx.unwrap_or(spec[0]), ry.unwrap_or(spec[1]));
            let r = if g.is_double() {
                verify_double_spec(&g, rx, ry, rt.unwrap_or(spec[2]))
            } else {
                verify_parity_spec(&g, rx, ry)
            };
            let failed: Vec<_> = r.failures().collect();
            verdict(out, r.passed(), false, serde_json::to_value(failed)?, &r)
        }
        VerifyCmd::Strictness { src, label, caps } => {
            let (inst, _) = src.load()?;
            let tsp = compile_tsp(&inst, &label.build(&inst)?, &GadgetChoice::standard())?;
            let r = check_strictness(&tsp, caps.caps());
            let ce = serde_json::to_value(&r.counterexample)?;
            verdict(out, r.passed(), r.limited, ce, &r)
        }
        VerifyCmd::Correspondence { src, label, pivot, caps, oracle } => {
            let (inst, cut) = src.load()?;
            let lab = label.build(&inst)?;
            let oracle = match oracle {
                OracleArg::Sparse => Oracle::Sparse,
                OracleArg::Xchange => Oracle::XChange,
                OracleArg::ThreeSwap => return Err(Error::Input("correspondence runs on the sparse graph".into())),
            };
            let r = check_correspondence(
                &inst,
                &lab,
                &GadgetChoice::standard(),
                &cut,
                pivot.pivot(src.seed),
                oracle,
                caps.caps(),
                pivot.limit,
            )?;
            let ce = serde_json::to_value(&r.divergence)?;
            verdict(out, r.passed(), r.oracle_limited, ce, &r)
        }
        VerifyCmd::PlsNonedge { src, k, samples } => {
            let (inst, _) = src.load()?;
            let tsp = compile_tsp(&inst, &build_labeling(LabelingKind::Pls, &inst, k)?, &GadgetChoice::standard())?;
            let c = complete_graph(&tsp, CompletionMode::Priority)?;
            let r = sample_parallel(&c, samples, src.seed, workers)?;
            let ce = serde_json::to_value(r.failures.first())?;
            verdict(out, r.passed(), false, ce, &r)
        }
        VerifyCmd::Priorities { src, k } => {
            let (inst, _) = src.load()?;
            let tsp = compile_tsp(&inst, &build_labeling(LabelingKind::Pls, &inst, k)?, &GadgetChoice::standard())?;
            let r = audit_priorities(&complete_graph(&tsp, CompletionMode::Priority)?)?;
            let failed: Vec<_> = r.checks.iter().filter(|c| !c.passed).collect();
            verdict(out, r.passed(), false, serde_json::to_value(failed)?, &r)
        }
    }
}

/// Splits the samples into one seeded stream per worker and merges the
/// reports in worker order.
fn sample_parallel(
    c: &kopt_core::reduction::CompleteTsp,
    samples: usize,
    seed: u64,
    workers: usize,
) -> Result<PlsSampleReport> {
    let workers = workers.clamp(1, samples.max(1));
    let parts: Vec<Result<PlsSampleReport>> = std::thread::scope(|s| {
        let handles: Vec<_> = (0..workers)
            .map(|i| {
                let count = samples / workers + usize::from(i < samples % workers);
                s.spawn(move || sample_nonedge_tours(c, count, seed.wrapping_add(i as u64)))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("sampler panicked")).collect()
    });
    let mut merged: Option<PlsSampleReport> = None;
    for part in parts {
        let part = part?;
        match merged.as_mut() {
            None => merged = Some(part),
            Some(m) => {
                m.samples += part.samples;
                m.successes += part.successes;
                m.failures.extend(part.failures);
                for (kind, n) in part.by_kind {
                    if let Some(e) = m.by_kind.iter_mut().find(|(k, _)| *k == kind) {
                        e.1 += n;
                    }
                }
            }
        }
    }
    Ok(merged.expect("at least one worker"))
}
