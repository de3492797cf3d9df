use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use tricert::document::{convert_document, load_certificate, verify_document, Target};
use tricert::format::{parse_document, parse_graph_auto, write_certificate, write_edge_list, write_edge_rep, write_witness};
use tricert::oracle::{gen_3_connected, is_3_connected_brute, OpMix};
use tricert::transforms::path_to_edge;
use tricert::{certify, CertifyOptions, MultiGraph, Verdict};

#[derive(Parser)]
#[command(name = "tricert", version, about = "Certifying 3-connectivity toolkit")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Exit 0 if the graph is 3-connected, 1 with a witness otherwise.
    Check { graph: PathBuf },
    /// Print a certificate or a witness.
    Certify {
        graph: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Rewrite the sequence so that no step creates parallel links.
        #[arg(long)]
        basic: bool,
        /// Write the edge representation instead of the path representation.
        #[arg(long)]
        edge_rep: bool,
        #[arg(long)]
        no_sparsify: bool,
        /// Edge list naming the edges of a K4-subdivision to start from.
        #[arg(long)]
        s0: Option<PathBuf>,
    },
    /// Check a certificate or witness against a graph. `-` reads stdin.
    Verify {
        graph: PathBuf,
        cert: PathBuf,
        #[arg(long)]
        basic: bool,
    },
    /// Convert between certificate forms.
    Transform {
        cert: PathBuf,
        /// basic, nonbasic, edge, path or contractions.
        #[arg(long)]
        to: Target,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// The graph a path certificate refers to. Without it the graph is
        /// rebuilt from the certificate.
        #[arg(long)]
        graph: Option<PathBuf>,
    },
    /// Generate a random 3-connected graph.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        /// Weights `add_edge:subdivide_one:subdivide_two`.
        #[arg(long, default_value = "1:1:1")]
        mix: OpMix,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Brute-force verdict, for small graphs.
    Oracle { graph: PathBuf },
    /// DOT text of the subdivision after the first `stage` steps.
    Dot {
        graph: PathBuf,
        cert: PathBuf,
        #[arg(long, default_value_t = usize::MAX)]
        stage: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

/// Exit 2 with a message.
struct Fail(String);

impl<E: std::fmt::Display> From<E> for Fail {
    fn from(e: E) -> Self {
        Fail(e.to_string())
    }
}

fn read(path: &Path) -> Result<Vec<u8>, Fail> {
    if path.as_os_str() == "-" {
        let mut buf = Vec::new();
        io::stdin().read_to_end(&mut buf)?;
        Ok(buf)
    } else {
        fs::read(path).map_err(|e| Fail(format!("{}: {e}", path.display())))
    }
}

fn read_text(path: &Path) -> Result<String, Fail> {
    String::from_utf8(read(path)?).map_err(|_| Fail(format!("{}: not UTF-8", path.display())))
}

fn load_graph(path: &Path) -> Result<MultiGraph, Fail> {
    parse_graph_auto(&read(path)?).map_err(|e| Fail(format!("{}: {e}", path.display())))
}

fn emit(output: Option<&Path>, text: &str) -> Result<(), Fail> {
    match output {
        Some(p) if p.as_os_str() != "-" => fs::write(p, text).map_err(|e| Fail(format!("{}: {e}", p.display()))),
        _ => Ok(io::stdout().write_all(text.as_bytes())?),
    }
}

fn check(graph: &Path) -> Result<u8, Fail> {
    let g = load_graph(graph)?;
    let res = certify(&g, &CertifyOptions::default())?;
    match res.verdict {
        Verdict::Certified(_) => {
            eprintln!("3-connected");
            Ok(0)
        }
        Verdict::Refuted(w) => {
            print!("{}", write_witness(&res.graph, &w));
            Ok(1)
        }
    }
}

/// Maps an edge list of label pairs to edge ids of the simplified graph.
fn prescribed(g: &MultiGraph, path: &Path) -> Result<Vec<usize>, Fail> {
    let s0 = load_graph(path)?;
    let (simple, _) = g.simplify();
    let mut ids = Vec::new();
    for (a, b) in s0.labeled_edges() {
        let node = |l: u64| simple.node_by_label(l).ok_or_else(|| Fail(format!("S0 names unknown node {l}")));
        let (u, v) = (node(a)?, node(b)?);
        ids.push(simple.edge_between(u, v).ok_or_else(|| Fail(format!("S0 edge {a} {b} is not in the graph")))?);
    }
    Ok(ids)
}

fn certify_cmd(
    graph: &Path,
    output: Option<&Path>,
    basic: bool,
    edge_rep: bool,
    no_sparsify: bool,
    s0: Option<&Path>,
) -> Result<u8, Fail> {
    let g = load_graph(graph)?;
    let prescribed_s0 = s0.map(|p| prescribed(&g, p)).transpose()?;
    let res = certify(&g, &CertifyOptions { prescribed_s0, want_basic: basic, sparsify: !no_sparsify })?;
    if !res.simplify_report.is_empty() {
        eprintln!(
            "simplified: removed {} self-loops, merged {} parallel classes",
            res.simplify_report.removed_self_loops.len(),
            res.simplify_report.merged_parallel_classes.len()
        );
    }
    match res.verdict {
        Verdict::Certified(pr) => {
            let text = if edge_rep {
                write_edge_rep(&path_to_edge(&res.graph, &pr)?)
            } else {
                write_certificate(&res.graph, &pr)
            };
            emit(output, &text)?;
            Ok(0)
        }
        Verdict::Refuted(w) => {
            emit(output, &write_witness(&res.graph, &w))?;
            eprintln!("not 3-connected");
            Ok(1)
        }
    }
}

fn verify_cmd(graph: &Path, cert: &Path, basic: bool) -> Result<u8, Fail> {
    let g = load_graph(graph)?;
    let doc = parse_document(&read_text(cert)?)?;
    match verify_document(&g, &doc, basic) {
        Ok(()) => {
            println!("ACCEPT");
            Ok(0)
        }
        Err(msg) => {
            println!("REJECT {msg}");
            Ok(1)
        }
    }
}

fn transform_cmd(cert: &Path, to: Target, output: Option<&Path>, graph: Option<&Path>) -> Result<u8, Fail> {
    let doc = parse_document(&read_text(cert)?)?;
    let g = graph.map(load_graph).transpose()?;
    emit(output, &convert_document(&doc, g.as_ref(), to).map_err(Fail)?)?;
    Ok(0)
}

fn dot_cmd(graph: &Path, cert: &Path, stage: usize, output: Option<&Path>) -> Result<u8, Fail> {
    let g = load_graph(graph)?;
    let (g, pr) = load_certificate(&parse_document(&read_text(cert)?)?, Some(&g)).map_err(Fail)?;
    emit(output, &tricert::dot::stage_dot(&g, &pr, stage)?)?;
    Ok(0)
}

fn run(cli: Cli) -> Result<u8, Fail> {
    match cli.cmd {
        Cmd::Check { graph } => check(&graph),
        Cmd::Certify { graph, output, basic, edge_rep, no_sparsify, s0 } => {
            certify_cmd(&graph, output.as_deref(), basic, edge_rep, no_sparsify, s0.as_deref())
        }
        Cmd::Verify { graph, cert, basic } => verify_cmd(&graph, &cert, basic),
        Cmd::Transform { cert, to, output, graph } => transform_cmd(&cert, to, output.as_deref(), graph.as_deref()),
        Cmd::Gen { n, seed, mix, output } => {
            if n < 4 {
                return Err(Fail("--n must be at least 4".into()));
            }
            emit(output.as_deref(), &write_edge_list(&gen_3_connected(n, seed, mix)))?;
            Ok(0)
        }
        Cmd::Oracle { graph } => {
            let g = load_graph(&graph)?;
            if is_3_connected_brute(&g) {
                println!("3-connected");
                Ok(0)
            } else {
                println!("not 3-connected");
                Ok(1)
            }
        }
        Cmd::Dot { graph, cert, stage, output } => dot_cmd(&graph, &cert, stage, output.as_deref()),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(Fail(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
