//! `qm`: command-line access to quiver mutation, sequence reduction,
//! c-vectors, convergence certificates, the generic quiver and mutation
//! classes. Exit status 0 on success (including `unknown` answers), 1 on
//! domain errors, 2 on usage errors.

mod examples;
mod input;

use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use convergence::{Mode, Trajectory};
use num_bigint::BigUint;
use quiver_core::{PropertyKind, Quiver, Tri, Vertex};
use serde_json::{json, Value};

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Domain(String),
}

fn domain<E: std::fmt::Display>(e: E) -> Failure {
    Failure::Domain(e.to_string())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
    Text,
}

#[derive(Parser, Debug)]
#[command(name = "qm", version, about = "Quiver mutation toolkit")]
struct Cli {
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Ticks inspected by bounded searches.
    #[arg(long, global = true, default_value_t = 200)]
    horizon: usize,
    /// Output format; each command has its own default.
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Mutate at one vertex or a comma-separated word of vertices.
    Mutate {
        #[arg(long)]
        quiver: String,
        #[arg(long)]
        at: String,
    },
    /// Evaluate a property: finite, connected, acyclic, abundant, has-weight-in, mutation-acyclic, tame.
    Check {
        #[arg(long)]
        quiver: String,
        #[arg(long)]
        prop: String,
        #[arg(long, default_value_t = 6)]
        depth: usize,
        /// Weights for has-weight-in, comma-separated.
        #[arg(long, default_value = "")]
        weights: String,
    },
    /// Prime-power encoding of the restriction to `1..=window`.
    Encode {
        #[arg(long)]
        quiver: String,
        #[arg(long)]
        window: Vertex,
    },
    /// Inverse of `encode`.
    Decode {
        #[arg(long)]
        prefix: String,
    },
    /// Reduced form of a word.
    Reduce {
        #[arg(long, allow_hyphen_values = true)]
        word: String,
    },
    /// One-step reductions down to the fixed point, with ranks.
    Trace {
        #[arg(long)]
        word: String,
    },
    /// Whether a vertex set is linked for a sequence.
    Linking {
        #[arg(long)]
        desc: String,
        #[arg(long)]
        set: String,
    },
    /// Sequence realizing an antichain family of minimal linked sets.
    BuildSeq {
        #[arg(long)]
        family: String,
        #[arg(long, default_value_t = 40)]
        take: usize,
    },
    /// Framed mutation along a word; reports every c-vector and color.
    Cvec {
        #[arg(long)]
        quiver: String,
        #[arg(long)]
        word: String,
    },
    /// Run a sequence on a quiver.
    Trajectory {
        #[arg(long)]
        quiver: String,
        #[arg(long)]
        desc: String,
        #[arg(long)]
        steps: usize,
        #[arg(long, default_value_t = 0)]
        emit_every: usize,
        /// Treat the quiver as a truncation at this vertex.
        #[arg(long)]
        truncate: Option<Vertex>,
    },
    /// Stabilization certificate on a window.
    Certify {
        #[arg(long)]
        quiver: String,
        #[arg(long)]
        desc: String,
        #[arg(long, value_enum)]
        mode: ModeArg,
        #[arg(long)]
        window: String,
        #[arg(long)]
        truncate: Option<Vertex>,
    },
    /// Density verdict on locally finite quivers.
    ClassifyLf {
        #[arg(long)]
        desc: String,
    },
    /// Density verdict on arrow-finite quivers.
    ClassifyAf {
        #[arg(long)]
        desc: String,
    },
    /// Nearby quiver on which the sequence diverges.
    Gadget {
        #[arg(long, value_enum)]
        kind: GadgetKind,
        #[arg(long, default_value = "empty")]
        quiver: String,
        #[arg(long, default_value = "")]
        window: String,
        #[arg(long)]
        desc: String,
        #[arg(long, default_value_t = 3)]
        segments: usize,
    },
    /// Explore a mutation class up to isomorphism.
    Mutclass {
        #[arg(long)]
        quiver: String,
        /// Declare vertices `1..=n`, so isolated ones count.
        #[arg(long)]
        vertices: Option<Vertex>,
        #[arg(long, default_value_t = 4)]
        max_weight: i64,
        #[arg(long, default_value_t = 1000)]
        max_nodes: usize,
        /// Also write the exchange graph as DOT here.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// The generic quiver.
    Fraisse {
        #[command(subcommand)]
        action: FraisseAction,
    },
    /// Re-derive the reference examples and report each as PASS or FAIL.
    Examples {
        #[arg(long)]
        paper: bool,
    },
}

#[derive(Subcommand, Debug)]
enum FraisseAction {
    /// Steer toward a target until `1..=radius` agrees.
    Steer {
        #[arg(long)]
        target: String,
        #[arg(long)]
        radius: Vertex,
    },
    /// Back-and-forth stages between the quiver and its mutation at a vertex.
    Baf {
        #[arg(long)]
        at: Vertex,
        #[arg(long)]
        stages: usize,
        /// Vertices `1..=k` committed up front.
        #[arg(long, default_value_t = 0)]
        committed: Vertex,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ModeArg {
    Weak,
    Strong,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum GadgetKind {
    Af,
    Lf,
}

/// What a command produced, before formatting.
enum Output {
    Json(Value),
    Quiver(Quiver),
    Verdict(Tri),
    /// Plain lines; `ok` false means exit 1.
    Lines(Vec<String>, bool),
}

fn quiver_value(q: &Quiver) -> Value {
    serde_json::from_str(&quiver_core::to_json(q)).expect("quiver JSON")
}

fn big(n: &BigUint) -> Value {
    serde_json::from_str(&n.to_string()).expect("integer JSON")
}

fn trajectory(quiver: &str, desc: &str, truncate: Option<Vertex>) -> Result<Trajectory, Failure> {
    let q = input::quiver(quiver)?;
    let d = input::descriptor(desc)?;
    Ok(match truncate {
        Some(m) => {
            if q.support().iter().any(|&v| v > m) {
                return Err(Failure::Usage(format!("quiver reaches past the truncation {m}")));
            }
            Trajectory::on_truncation(q, m, d)
        }
        None => Trajectory::new(q, d),
    })
}

fn property(name: &str, depth: usize, weights: &str) -> Result<PropertyKind, Failure> {
    Ok(match name {
        "finite" => PropertyKind::Finite,
        "connected" => PropertyKind::Connected,
        "acyclic" => PropertyKind::Acyclic,
        "abundant" => PropertyKind::Abundant,
        "has-weight-in" => {
            let w: BTreeSet<i64> = weights
                .split(',')
                .filter(|x| !x.trim().is_empty())
                .map(|x| x.trim().parse::<i64>().map_err(|_| Failure::Usage(format!("not a weight: {x}"))))
                .collect::<Result<_, _>>()?;
            PropertyKind::HasWeightIn(w)
        }
        "mutation-acyclic" => PropertyKind::MutationAcyclicWithin(depth),
        "tame" => PropertyKind::TameWithin(depth),
        other => return Err(Failure::Usage(format!("unknown property {other}"))),
    })
}

fn run(cli: &Cli) -> Result<Output, Failure> {
    let h = cli.horizon;
    Ok(match &cli.command {
        Command::Mutate { quiver, at } => Output::Quiver(input::quiver(quiver)?.mutate_word(&input::word(at)?)),
        Command::Check { quiver, prop, depth, weights } => {
            Output::Verdict(quiver_core::check_property(&input::quiver(quiver)?, &property(prop, *depth, weights)?))
        }
        Command::Encode { quiver, window } => {
            let code = quiver_core::lf_encode(&input::quiver(quiver)?, *window);
            Output::Json(Value::Array(code.iter().map(big).collect()))
        }
        Command::Decode { prefix } => {
            let nums: Vec<BigUint> = input::integers(prefix)?
                .into_iter()
                .map(|n| n.to_biguint().ok_or_else(|| Failure::Usage(format!("negative code {n}"))))
                .collect::<Result<_, _>>()?;
            Output::Quiver(quiver_core::lf_decode(&nums).map_err(domain)?)
        }
        Command::Reduce { word } => Output::Json(json!(seqcomb::reduce_word(&input::word(word)?))),
        Command::Trace { word } => {
            let t = seqcomb::reduction_trace(&input::word(word)?);
            let rank = match t.rank {
                seqcomb::Rank::Finite(k) => json!(k),
                seqcomb::Rank::Omega => json!("omega"),
            };
            Output::Json(json!({"stages": t.stages, "rank": rank, "i_rank": t.i_rank}))
        }
        Command::Linking { desc, set } => {
            let d = input::descriptor(desc)?;
            let s = input::window(set)?;
            let linked = seqcomb::is_linked(&d, &s, h).map_err(domain)?;
            Output::Json(json!({"set": s, "linked": linked.as_str()}))
        }
        Command::BuildSeq { family, take } => {
            let d = seqcomb::build_sequence_from_family(input::family(family)?).map_err(domain)?;
            Output::Json(json!({"descriptor": d.to_json(), "prefix": d.take(*take)}))
        }
        Command::Cvec { quiver, word } => {
            let fq = framing::frame(&input::quiver(quiver)?).mutate_word(&input::word(word)?).map_err(domain)?;
            let mut vectors = serde_json::Map::new();
            for &x in fq.mutable_set() {
                let c = fq.c_vector(x).map_err(domain)?;
                let color = fq.color(x).map_err(domain)?;
                let entries: Vec<Value> = c.iter().map(|(y, m)| json!([y, serde_json::from_str::<Value>(&m.to_string()).unwrap()])).collect();
                vectors.insert(x.to_string(), json!({"c": entries, "color": color.as_str()}));
            }
            let framed: Value = serde_json::from_str(&fq.to_json()).expect("framed JSON");
            Output::Json(json!({"framed": framed, "c_vectors": vectors}))
        }
        Command::Trajectory { quiver, desc, steps, emit_every, truncate } => {
            let mut t = trajectory(quiver, desc, *truncate)?;
            let mut frames = Vec::new();
            let every = if *emit_every == 0 { *steps.max(&1) } else { *emit_every };
            let mut done = 0;
            while done < *steps {
                let k = every.min(steps - done);
                t.step(k).map_err(domain)?;
                done += k;
                frames.push(json!({"cursor": t.cursor(), "quiver": quiver_value(t.current())}));
            }
            if frames.is_empty() {
                frames.push(json!({"cursor": 0, "quiver": quiver_value(t.current())}));
            }
            Output::Json(json!({"frames": frames}))
        }
        Command::Certify { quiver, desc, mode, window, truncate } => {
            let t = trajectory(quiver, desc, *truncate)?;
            let w = input::window(window)?;
            let c = match mode {
                ModeArg::Weak => convergence::weak_certificate(&t, &w, h),
                ModeArg::Strong => convergence::strong_certificate(&t, &w, h),
            }
            .map_err(domain)?;
            debug_assert_eq!(c.mode, if matches!(mode, ModeArg::Weak) { Mode::Weak } else { Mode::Strong });
            Output::Json(c.to_json())
        }
        Command::ClassifyLf { desc } => {
            Output::Json(convergence::classify_lf(&input::descriptor(desc)?, h).map_err(domain)?.to_json())
        }
        Command::ClassifyAf { desc } => Output::Json(convergence::classify_af(&input::descriptor(desc)?).to_json()),
        Command::Gadget { kind, quiver, window, desc, segments } => {
            let q = input::quiver(quiver)?;
            let w = input::window(window)?;
            let d = input::descriptor(desc)?;
            match kind {
                GadgetKind::Af => Output::Json(convergence::af_divergence_gadget(&q, &w, &d, h).map_err(domain)?.to_json()),
                GadgetKind::Lf => {
                    Output::Json(convergence::lf_divergence_gadget(&q, &w, &d, *segments, h).map_err(domain)?.to_json())
                }
            }
        }
        Command::Mutclass { quiver, vertices, max_weight, max_nodes, dot } => {
            let q = input::quiver(quiver)?;
            let vq = match vertices {
                Some(n) => {
                    if q.support().iter().any(|v| v > n) {
                        return Err(Failure::Usage(format!("quiver has vertices above {n}")));
                    }
                    mutclass::VertexedQuiver::on_range(*n, q)
                }
                None if q.is_empty() => mutclass::VertexedQuiver::one_vertex(),
                None => mutclass::VertexedQuiver::from_quiver(q),
            };
            let node = mutclass::explore_class(&vq, &mutclass::Bounds::new(*max_weight, *max_nodes));
            if let Some(path) = dot {
                std::fs::write(path, node.to_dot()).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display())))?;
            }
            if cli.format == Some(Format::Dot) {
                Output::Lines(vec![node.to_dot().trim_end().to_string()], true)
            } else {
                Output::Json(node.to_json())
            }
        }
        Command::Fraisse { action } => {
            let mut g = fraisse::GenericQuiver::new(cli.seed);
            match action {
                FraisseAction::Steer { target, radius } => {
                    let target = input::quiver(target)?;
                    let r = fraisse::steer_toward(&mut g, &target, *radius);
                    let w = quiver_core::range_set(1, *radius);
                    let reached = r.start.mutate_word(&r.word).restrict(&w) == target.restrict(&w);
                    let monotone = r.monotone_agreement(&target, &r.start);
                    let mut v = r.to_json();
                    v["verified"] = json!({"agreement": reached, "monotone": monotone});
                    Output::Json(v)
                }
                FraisseAction::Baf { at, stages, committed } => {
                    if *stages == 0 {
                        return Err(Failure::Usage("--stages must be at least 1".into()));
                    }
                    g.force_all(1..=*committed);
                    let isos = fraisse::back_and_forth(&mut g, *at, *stages);
                    let list: Vec<Value> = isos
                        .iter()
                        .map(|p| json!({"stage": p.stage, "pairs": p.pairs.iter().map(|(a, b)| [a, b]).collect::<Vec<_>>(), "verified": p.holds_on(g.current(), *at)}))
                        .collect();
                    Output::Json(json!({"isos": list, "committed": quiver_value(g.current())}))
                }
            }
        }
        Command::Examples { paper } => {
            if !paper {
                return Err(Failure::Usage("examples needs --paper".into()));
            }
            let results = examples::run_all();
            let ok = results.iter().all(|(_, pass)| *pass);
            let lines = results.iter().map(|(name, pass)| format!("{} {name}", if *pass { "PASS" } else { "FAIL" })).collect();
            Output::Lines(lines, ok)
        }
    })
}

fn render(out: &Output, format: Option<Format>) -> Result<(String, bool), Failure> {
    let pretty = |v: &Value| serde_json::to_string_pretty(v).expect("JSON");
    Ok(match (out, format) {
        (Output::Json(v), None | Some(Format::Json)) => (v.to_string(), true),
        (Output::Json(v), Some(Format::Text)) => (pretty(v), true),
        (Output::Quiver(q), None | Some(Format::Json)) => (quiver_core::to_json(q), true),
        (Output::Quiver(q), Some(Format::Dot)) => (quiver_core::to_dot(q).trim_end().to_string(), true),
        (Output::Quiver(q), Some(Format::Text)) => (pretty(&quiver_value(q)), true),
        (Output::Verdict(t), None | Some(Format::Text)) => (t.as_str().to_string(), true),
        (Output::Verdict(t), Some(Format::Json)) => (json!(t.as_str()).to_string(), true),
        (Output::Lines(l, ok), _) => (l.join("\n"), *ok),
        (_, Some(Format::Dot)) => return Err(Failure::Usage("DOT output is only available for quivers and mutation classes".into())),
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let result = run(&cli).and_then(|o| render(&o, cli.format));
    match result {
        Ok((text, ok)) => {
            let text = text + "\n";
            if let Some(path) = &cli.out {
                if let Err(e) = std::fs::write(path, &text) {
                    eprintln!("cannot write {}: {e}", path.display());
                    return ExitCode::from(2);
                }
            } else {
                print!("{text}");
            }
            ExitCode::from(if ok { 0 } else { 1 })
        }
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Domain(m)) => {
            eprintln!("{m}");
            ExitCode::from(1)
        }
    }
}
