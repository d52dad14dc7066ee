//! Command-line front end for the recognizer.
//!
//! Subcommands: `recognize` (certificate for one graph), `verify` (check a
//! certificate against a graph), `gen` (seeded recognizable instances),
//! `oracle` (brute-force decision for small graphs), and `diff` (seeded
//! differential run of the recognizer against the oracle).
//!
//! Exit codes: 0 when the graph has a model (or the check passes), 1 when a
//! forbidden subgraph is reported (or the check fails), 2 on input or usage
//! errors.  All output is byte-stable for fixed inputs and seeds.

use std::fmt::Write as _;
use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use nhca_core::catalog::FisWitness;
use nhca_core::driver::{recognize, verify_certificate, Answer, Certificate};
use nhca_core::graph::emit_graph;
use nhca_core::oracle::{gen_random_graph, gen_random_nhca, oracle_nhca};
use nhca_core::{parse_graph, Graph};

#[derive(Parser)]
#[command(name = "nhca", version, about = "Normal Helly circular-arc graph recognizer")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Recognize a graph: print an arc model or a minimal forbidden
    /// induced subgraph (exit 0 resp. 1).
    Recognize {
        /// Edge-list file ("n m" header, one "u v" line per edge), or "-"
        /// for standard input.
        input: String,
        /// Output format for the certificate.
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Write the certificate here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a certificate against a graph (exit 0 when it holds, 1 with
    /// the first violated invariant otherwise).
    Verify {
        /// Edge-list file, or "-" for standard input.
        graph: String,
        /// Certificate JSON as produced by `recognize --format json`.
        certificate: String,
    },
    /// Generate seeded recognizable graphs (edge lists; multiple graphs
    /// are separated by a "---" line).
    Gen {
        /// Seed; the same seed always reproduces the same output.
        #[arg(long)]
        seed: u64,
        /// Number of graphs to emit.
        #[arg(long, default_value_t = 1)]
        count: u32,
        /// Vertex counts are drawn from 1..=nmax.
        #[arg(long, default_value_t = 12)]
        nmax: u32,
        /// Write here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide a small graph (n <= 10) by exhaustive subset search; test
    /// tooling only (exit 0 recognizable, 1 forbidden).
    Oracle {
        /// Edge-list file, or "-" for standard input.
        input: String,
    },
    /// Run the recognizer against the oracle on seeded random graphs;
    /// exits 1 with a reproducer file on the first disagreement.
    Diff {
        /// Seed; the same seed always reproduces the same run.
        #[arg(long)]
        seed: u64,
        /// Number of graphs to test.
        #[arg(long, default_value_t = 1000)]
        count: u32,
        /// Vertex counts are drawn from 4..=nmax; at most 10.
        #[arg(long, default_value_t = 8)]
        nmax: u32,
        /// Where to write the reproducer on a disagreement.
        #[arg(long, default_value = "nhca-diff-reproducer.txt")]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    /// Machine-readable certificate, schema shared with `verify`.
    Json,
    /// DOT figure description of the witness or the arc diagram.
    Dot,
    /// Human-readable summary.
    Text,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<u8, String> {
    match cli.cmd {
        Cmd::Recognize { input, format, out } => {
            let g = read_graph(&input)?;
            let cert = recognize(&g);
            let doc = render(&g, &cert, format);
            write_out(out.as_deref(), &doc)?;
            Ok(match cert.answer {
                Answer::Model(_) => 0,
                Answer::Forbidden(_) => 1,
            })
        }
        Cmd::Verify { graph, certificate } => {
            let g = read_graph(&graph)?;
            let text = read_input(&certificate)?;
            let value: serde_json::Value =
                serde_json::from_str(&text).map_err(|e| format!("{certificate}: {e}"))?;
            let cert = Certificate::from_json(&value).map_err(|e| format!("{certificate}: {e}"))?;
            match verify_certificate(&g, &cert) {
                Ok(()) => {
                    println!("ok");
                    Ok(0)
                }
                Err(violation) => {
                    println!("{violation}");
                    Ok(1)
                }
            }
        }
        Cmd::Gen { seed, count, nmax, out } => {
            if nmax == 0 {
                return Err("nmax must be at least 1".into());
            }
            let mut doc = String::new();
            for i in 0..count {
                let k = mix(seed, i);
                let n = 1 + (k >> 16) % nmax as u64;
                if i > 0 {
                    doc.push_str("---\n");
                }
                doc.push_str(&emit_graph(&gen_random_nhca(k, n as usize)));
            }
            write_out(out.as_deref(), &doc)?;
            Ok(0)
        }
        Cmd::Oracle { input } => {
            let g = read_graph(&input)?;
            if g.n() > 10 {
                return Err("oracle is limited to graphs with at most 10 vertices".into());
            }
            if oracle_nhca(&g) {
                println!("recognizable");
                Ok(0)
            } else {
                println!("forbidden");
                Ok(1)
            }
        }
        Cmd::Diff { seed, count, nmax, out } => {
            if !(1..=10).contains(&nmax) {
                return Err("nmax must be between 1 and 10".into());
            }
            for i in 0..count {
                let k = mix(seed, i);
                let lo = nmax.min(4) as u64;
                let n = (lo + (k >> 16) % (nmax as u64 - lo + 1)) as usize;
                let g = if i % 2 == 0 {
                    let p = 0.2 + 0.15 * ((k >> 8) % 5) as f64;
                    gen_random_graph(k, n, p)
                } else {
                    gen_random_nhca(k, n)
                };
                let cert = recognize(&g);
                if let Err(e) = verify_certificate(&g, &cert) {
                    return disagree(&g, &out, i, &format!("invalid certificate: {e}"));
                }
                let said = matches!(cert.answer, Answer::Model(_));
                if said != oracle_nhca(&g) {
                    let msg = format!(
                        "recognizer says {}, oracle says the opposite",
                        if said { "model" } else { "forbidden" }
                    );
                    return disagree(&g, &out, i, &msg);
                }
            }
            println!("{count}/{count} agree");
            Ok(0)
        }
    }
}

fn disagree(g: &Graph, out: &PathBuf, item: u32, msg: &str) -> Result<u8, String> {
    std::fs::write(out, emit_graph(g)).map_err(|e| format!("{}: {e}", out.display()))?;
    eprintln!("disagreement on graph {item}: {msg}; reproducer written to {}", out.display());
    Ok(1)
}

/// SplitMix64 step; spreads consecutive item indices into independent seeds.
fn mix(seed: u64, i: u32) -> u64 {
    let mut z = seed.wrapping_add(i as u64).wrapping_add(0x9E3779B97F4A7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}

fn read_input(path: &str) -> Result<String, String> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| format!("stdin: {e}"))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| format!("{path}: {e}"))
    }
}

fn read_graph(path: &str) -> Result<Graph, String> {
    parse_graph(&read_input(path)?).map_err(|e| format!("{path}: {e}"))
}

fn write_out(out: Option<&std::path::Path>, doc: &str) -> Result<(), String> {
    match out {
        Some(p) => std::fs::write(p, doc).map_err(|e| format!("{}: {e}", p.display())),
        None => {
            print!("{doc}");
            Ok(())
        }
    }
}

fn render(g: &Graph, cert: &Certificate, format: Format) -> String {
    match format {
        Format::Json => format!("{}\n", cert.to_json()),
        Format::Text => match &cert.answer {
            Answer::Model(m) => {
                let mut s = format!("model: {} arcs on the unit circle\n", g.n());
                for v in 0..g.n() {
                    let (a, b) = (&m.ccw[v], &m.cw[v]);
                    let _ = writeln!(
                        s,
                        "  {v}: [{}/{}, {}/{}]",
                        a.numer(),
                        a.denom(),
                        b.numer(),
                        b.denom()
                    );
                }
                s
            }
            Answer::Forbidden(w) => {
                let mut s = format!("forbidden: {}\n", w.family.tag());
                let _ = writeln!(s, "  vertices: {}", join(&w.vertices));
                if !w.hole.is_empty() {
                    let _ = writeln!(s, "  hole: {}", join(&w.hole));
                }
                if let Some(a) = w.apex {
                    let _ = writeln!(s, "  apex: {a}");
                }
                s
            }
        },
        Format::Dot => match &cert.answer {
            Answer::Model(m) => {
                let mut s = String::from("graph model {\n  layout=circo;\n");
                s.push_str("  // circle of circumference 1; arcs run clockwise\n");
                for v in 0..g.n() {
                    let (a, b) = (&m.ccw[v], &m.cw[v]);
                    let _ = writeln!(
                        s,
                        "  {v} [label=\"{v}\\n[{}/{}, {}/{}]\"];",
                        a.numer(),
                        a.denom(),
                        b.numer(),
                        b.denom()
                    );
                }
                for (u, v) in g.edges() {
                    let _ = writeln!(s, "  {u} -- {v};");
                }
                s.push_str("}\n");
                s
            }
            Answer::Forbidden(w) => dot_witness(g, w),
        },
    }
}

fn dot_witness(g: &Graph, w: &FisWitness) -> String {
    let mut vs = w.vertices.clone();
    vs.sort_unstable();
    let mut s = String::from("graph obstruction {\n");
    let _ = writeln!(s, "  label=\"{}\";", w.family.tag());
    for &v in &vs {
        let _ = writeln!(s, "  {v};");
    }
    for (i, &u) in vs.iter().enumerate() {
        for &v in &vs[i + 1..] {
            if g.adjacent(u, v) {
                let _ = writeln!(s, "  {u} -- {v};");
            }
        }
    }
    s.push_str("}\n");
    s
}

fn join(xs: &[u32]) -> String {
    let strs: Vec<String> = xs.iter().map(u32::to_string).collect();
    strs.join(" ")
}
