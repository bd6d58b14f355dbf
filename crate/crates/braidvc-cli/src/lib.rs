//! File formats, reports, instance generation, and the command
//! implementations behind the `braidvc` binary.

pub mod bench;
pub mod braidfile;
pub mod dimacs;
pub mod gen;
pub mod points;
pub mod report;

use std::path::{Path, PathBuf};

use braidvc_core::branch::{solve_vc, SolveConfig, SolveError};
use braidvc_core::npred;
use braidvc_core::slabs;

use report::{Format, ReduceReport, SolveReport};

pub const EXIT_FEASIBLE: u8 = 0;
pub const EXIT_INFEASIBLE: u8 = 1;
pub const EXIT_INPUT_ERROR: u8 = 2;
pub const EXIT_LIMIT: u8 = 3;

pub struct CommonOpts {
    pub format: Format,
    pub node_cap: Option<u64>,
    pub permissive_degree: bool,
}

fn read(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("{}: {}", path.display(), e))
}

fn solve_config(opts: &CommonOpts) -> SolveConfig {
    SolveConfig {
        node_cap: opts.node_cap,
        permissive_degree: opts.permissive_degree,
        ..SolveConfig::default()
    }
}

fn exit_for(err: &SolveError) -> u8 {
    match err {
        SolveError::DegreeTooHigh { .. } => EXIT_INPUT_ERROR,
        SolveError::NodeCapExceeded { .. } => EXIT_LIMIT,
    }
}

/// `solve <graph> --budget k`
pub fn cmd_solve(path: &Path, budget: u32, opts: &CommonOpts) -> u8 {
    let text = match read(path) {
        Ok(t) => t,
        Err(e) => return input_error(e),
    };
    let graph = match dimacs::parse(&text) {
        Ok(g) => g,
        Err(e) => return input_error(e.to_string()),
    };
    match solve_vc(&graph, budget, &solve_config(opts)) {
        Ok(res) => {
            print!(
                "{}",
                SolveReport::from_result("solve", budget, &res).render(opts.format)
            );
            if res.feasible {
                EXIT_FEASIBLE
            } else {
                EXIT_INFEASIBLE
            }
        }
        Err(e) => {
            eprintln!("error: {}", e);
            exit_for(&e)
        }
    }
}

/// `hit-slabs <points> --budget k`
pub fn cmd_hit_slabs(path: &Path, budget: u32, opts: &CommonOpts) -> u8 {
    let text = match read(path) {
        Ok(t) => t,
        Err(e) => return input_error(e),
    };
    let points = match points::parse(&text) {
        Ok(p) => p,
        Err(e) => return input_error(e.to_string()),
    };
    match slabs::min_slab_hitting_set(&points, budget, &solve_config(opts)) {
        Ok(res) => {
            print!(
                "{}",
                SolveReport::from_result("hit-slabs", budget, &res).render(opts.format)
            );
            if res.feasible {
                EXIT_FEASIBLE
            } else {
                EXIT_INFEASIBLE
            }
        }
        Err(e) => {
            eprintln!("error: {}", e);
            exit_for(&e)
        }
    }
}

/// `reduce <graph> [--budget k] --out PREFIX`: writes PREFIX.braid,
/// PREFIX.dimacs and PREFIX.ledger.json, prints the offset.
pub fn cmd_reduce(path: &Path, budget: Option<u32>, out_prefix: &Path, opts: &CommonOpts) -> u8 {
    let text = match read(path) {
        Ok(t) => t,
        Err(e) => return input_error(e),
    };
    let graph = match dimacs::parse(&text) {
        Ok(g) => g,
        Err(e) => return input_error(e.to_string()),
    };
    let art = match npred::reduce_cubic_to_braid(&graph, budget.unwrap_or(0)) {
        Ok(a) => a,
        Err(e) => return input_error(e.to_string()),
    };
    let braid = slabs::BraidGraph::new(art.sigma.clone(), art.tau.clone())
        .expect("pipeline emits permutations");
    let report = ReduceReport::from_artifact(graph.slots(), budget, &art);
    let ledger_json = serde_json::to_string_pretty(&report).expect("serializable");
    let files: [(PathBuf, String); 3] = [
        (with_ext(out_prefix, "braid"), braidfile::write(&braid)),
        (with_ext(out_prefix, "dimacs"), dimacs::write(&art.graph)),
        (with_ext(out_prefix, "ledger.json"), ledger_json),
    ];
    for (p, content) in &files {
        if let Err(e) = std::fs::write(p, content) {
            return input_error(format!("{}: {}", p.display(), e));
        }
    }
    print!("{}", report.render(opts.format));
    EXIT_FEASIBLE
}

fn with_ext(prefix: &Path, ext: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(".");
    s.push(ext);
    PathBuf::from(s)
}

/// `verify <graph> <braid>`: exit 0 when the braid file's paths cover the
/// graph's edge set exactly.
pub fn cmd_verify(graph_path: &Path, braid_path: &Path, opts: &CommonOpts) -> u8 {
    let gtext = match read(graph_path) {
        Ok(t) => t,
        Err(e) => return input_error(e),
    };
    let graph = match dimacs::parse(&gtext) {
        Ok(g) => g,
        Err(e) => return input_error(e.to_string()),
    };
    let btext = match read(braid_path) {
        Ok(t) => t,
        Err(e) => return input_error(e),
    };
    let braid = match braidfile::parse(&btext) {
        Ok(b) => b,
        Err(e) => return input_error(e.to_string()),
    };
    match slabs::verify_braid(&graph, braid.sigma(), braid.tau()) {
        Ok(ok) => {
            match opts.format {
                Format::Json => println!("{{\n  \"is_braid\": {}\n}}", ok),
                Format::Text => println!("verify: {}", if ok { "braid" } else { "not a braid" }),
            }
            if ok {
                EXIT_FEASIBLE
            } else {
                EXIT_INFEASIBLE
            }
        }
        Err(e) => input_error(e.to_string()),
    }
}

pub fn cmd_bench(params: &bench::BenchParams, format: Format) -> u8 {
    match bench::run(params) {
        Ok(rep) => {
            print!("{}", rep.render(format));
            EXIT_FEASIBLE
        }
        Err(e) => {
            eprintln!("error: {}", e);
            exit_for(&e)
        }
    }
}

fn input_error(msg: String) -> u8 {
    eprintln!("error: {}", msg);
    EXIT_INPUT_ERROR
}
