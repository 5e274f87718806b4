//! Files written for an experiment.
//!
//! | file | contents |
//! |------|----------|
//! | `energy.csv` | `run_id,t,dirichlet_energy`, one row per stored round |
//! | `edges.csv` | `run_id,t,i,j,kendall_tau`, one row per round and edge |
//! | `graph.txt` | interaction graph, `"n k seed"` header then `"i j"` lines |
//! | `run_NNN/` | `graph.txt`, `initial_profile.txt`, `final_profile.txt` |
//! | `energy.svg` | energy against round, one polyline per run |
//! | `manifest.txt` | the full config (a valid config file) plus derived seeds |

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use crate::error::CliError;
use crate::experiment::Experiment;

fn write(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|e| CliError::io(path, e))
}

pub fn energy_csv(exp: &Experiment) -> String {
    let mut s = String::from("run_id,t,dirichlet_energy\n");
    for r in &exp.records {
        for (t, e) in r.trace.energy.iter().enumerate() {
            let _ = writeln!(s, "{},{},{}", r.run_id, t, e);
        }
    }
    s
}

pub fn edges_csv(exp: &Experiment) -> String {
    let edges = exp.spec.graph().edges();
    let mut s = String::from("run_id,t,i,j,kendall_tau\n");
    for r in &exp.records {
        for (t, row) in r.trace.per_edge.iter().enumerate() {
            for (&(i, j), tau) in edges.iter().zip(row) {
                let _ = writeln!(s, "{},{},{},{},{}", r.run_id, t, i, j, tau);
            }
        }
    }
    s
}

pub fn manifest(exp: &Experiment) -> String {
    let cfg = &exp.config;
    let mut s = String::new();
    let _ = writeln!(s, "# prefdyn manifest; this file is itself a valid --config");
    let _ = writeln!(s, "# graph rng: ChaCha8 seed {}", cfg.graph.seed);
    let _ = writeln!(s, "# threshold rng: ChaCha8 seed {}", cfg.agents.r_seed);
    let _ = writeln!(
        s,
        "# initial profile rng: ChaCha8 seed {}, stream = run_id (0..{})",
        cfg.init.seed, cfg.n_initial_profiles
    );
    let r: Vec<String> = exp.r_values.iter().map(ToString::to_string).collect();
    let _ = writeln!(s, "# assigned r per agent: {}", r.join(" "));
    s.push('\n');
    s.push_str(&cfg.to_toml());
    s
}

/// Minimal line chart of energy against round.
pub fn energy_svg(exp: &Experiment) -> String {
    const W: f64 = 720.0;
    const H: f64 = 400.0;
    const PAD: f64 = 50.0;
    let t_max = exp.records.iter().map(|r| r.trace.energy.len().saturating_sub(1)).max().unwrap_or(0).max(1);
    let e_max = exp.records.iter().flat_map(|r| r.trace.energy.iter().copied()).max().unwrap_or(0).max(1);
    let x = |t: usize| PAD + (W - 2.0 * PAD) * t as f64 / t_max as f64;
    let y = |e: u64| H - PAD - (H - 2.0 * PAD) * e as f64 / e_max as f64;

    let mut s = String::new();
    let _ = writeln!(s, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{W}" height="{H}" viewBox="0 0 {W} {H}">"#);
    let _ = writeln!(s, r#"<rect width="100%" height="100%" fill="white"/>"#);
    let _ = writeln!(s, r#"<path d="M{PAD} {PAD} V{} H{}" fill="none" stroke="black"/>"#, H - PAD, W - PAD);
    let _ = writeln!(s, r#"<text x="{}" y="{}" font-size="12" text-anchor="middle">round t</text>"#, W / 2.0, H - 15.0);
    let _ = writeln!(
        s,
        r#"<text x="15" y="{}" font-size="12" transform="rotate(-90 15 {})" text-anchor="middle">Dirichlet energy</text>"#,
        H / 2.0,
        H / 2.0
    );
    let _ = writeln!(s, r#"<text x="{}" y="{}" font-size="10" text-anchor="end">{e_max}</text>"#, PAD - 4.0, PAD + 4.0);
    let _ = writeln!(s, r#"<text x="{}" y="{}" font-size="10" text-anchor="end">0</text>"#, PAD - 4.0, H - PAD + 4.0);
    let _ = writeln!(
        s,
        r#"<text x="{}" y="{}" font-size="10" text-anchor="middle">{t_max}</text>"#,
        W - PAD,
        H - PAD + 14.0
    );
    for r in &exp.records {
        let points: Vec<String> =
            r.trace.energy.iter().enumerate().map(|(t, &e)| format!("{:.1},{:.1}", x(t), y(e))).collect();
        let _ = writeln!(
            s,
            r#"<polyline points="{}" fill="none" stroke="steelblue" stroke-width="1.5"><title>run {}</title></polyline>"#,
            points.join(" "),
            r.run_id
        );
    }
    s.push_str("</svg>\n");
    s
}

/// Writes every output file into `dir`, creating it if needed.
pub fn emit_outputs(exp: &Experiment, dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    let cfg = &exp.config;
    let graph_text = exp.spec.graph().to_text(cfg.graph.k, cfg.graph.seed);
    let mut written = Vec::new();
    let mut put = |path: PathBuf, contents: &str| -> Result<(), CliError> {
        write(&path, contents)?;
        written.push(path);
        Ok(())
    };
    put(dir.join("energy.csv"), &energy_csv(exp))?;
    put(dir.join("edges.csv"), &edges_csv(exp))?;
    put(dir.join("graph.txt"), &graph_text)?;
    put(dir.join("energy.svg"), &energy_svg(exp))?;
    put(dir.join("manifest.txt"), &manifest(exp))?;
    for r in &exp.records {
        let run_dir = dir.join(format!("run_{:03}", r.run_id));
        fs::create_dir_all(&run_dir).map_err(|e| CliError::io(&run_dir, e))?;
        put(run_dir.join("graph.txt"), &graph_text)?;
        put(run_dir.join("initial_profile.txt"), &r.initial.to_text())?;
        put(run_dir.join("final_profile.txt"), &r.final_profile.to_text())?;
    }
    Ok(written)
}
