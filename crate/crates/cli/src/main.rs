//! Command-line front end: group/braid/tangle/diagram loading, the
//! invariants, presentation export and counting, the verification suites
//! and the evidence-gathering experiments.
//!
//! Exit codes: 0 success, 1 parse/validation error, 2 guard exceeded,
//! 3 verification failure.

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use grouplink::braid::{parse_color, Color, ColoredBraid};
use grouplink::character::CharacterTable;
use grouplink::dset::class_product;
use grouplink::error::Error as GlError;
use grouplink::fpgroup::{count_homs_guarded, HomCountQuery, Pin};
use grouplink::group::{conjugacy, FiniteGroup};
use grouplink::invariants::{colored_closure_invariant, delta_invariant, lambda_invariant};
use grouplink::mfd::SurgeryPresentation;
use grouplink::presentations::{
    presentation_from_braid, presentation_from_diagram, BraidVariant, DiagramVariant, LinkDiagram,
};
use grouplink::tangle::{evaluate_guarded, SlicedTangle};
use grouplink::verify;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "grouplink", about = "Finite-group link and 3-manifold invariants")]
struct Cli {
    /// machine-readable output: one `key value` pair per line
    #[arg(long, global = true)]
    machine: bool,
    /// worker thread cap (default: all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// seed for the randomized suites
    #[arg(long, global = true, default_value_t = 0xC0FFEE)]
    seed: u64,
    /// basis-size guard override (also env GROUPLINK_MAX_BASIS)
    #[arg(long, global = true)]
    max_basis: Option<u64>,
    /// hom-search guard override (also env GROUPLINK_MAX_SEARCH)
    #[arg(long, global = true)]
    max_search: Option<f64>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// inspect a group file
    Group {
        #[command(subcommand)]
        cmd: GroupCmd,
    },
    /// inspect a braid file
    Braid {
        #[command(subcommand)]
        cmd: BraidCmd,
    },
    /// evaluate a sliced tangle file
    Tangle {
        #[command(subcommand)]
        cmd: TangleCmd,
    },
    /// compute a link or manifold invariant
    Invariant {
        #[command(subcommand)]
        cmd: InvariantCmd,
    },
    /// presentations from braids and diagrams
    Presentation {
        #[command(subcommand)]
        cmd: PresentationCmd,
    },
    /// surgery invariant of a framed link diagram
    Mfd {
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        diagram: PathBuf,
    },
    /// run a verification suite
    Verify {
        suite: Suite,
        /// inject the designated corruption; the suite must then fail
        #[arg(long)]
        mutate: bool,
        /// Markov moves per group
        #[arg(long, default_value_t = 200)]
        moves: usize,
        /// random braids for the bridge suite
        #[arg(long, default_value_t = 50)]
        braids: usize,
    },
    /// evidence-gathering experiments (reported, never asserted)
    Experiment {
        #[command(subcommand)]
        cmd: ExperimentCmd,
    },
}

#[derive(Subcommand)]
enum GroupCmd {
    Info {
        path: PathBuf,
    },
    /// validate a character table against a group and run the identity suite
    Chars {
        path: PathBuf,
        #[arg(long)]
        table: PathBuf,
    },
}

#[derive(Subcommand)]
enum BraidCmd {
    Info { path: PathBuf },
}

#[derive(Subcommand)]
enum TangleCmd {
    Eval {
        path: PathBuf,
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        framed: bool,
    },
}

#[derive(Subcommand)]
enum InvariantCmd {
    /// extended-pair invariant of the braid closure
    Lambda {
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        braid: PathBuf,
        /// color, e.g. `3`, `(3,0)` or names like `((1 2),e)`
        #[arg(long)]
        color: String,
    },
    /// commuting-pair invariant with writhe correction
    Delta {
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        braid: PathBuf,
        #[arg(long)]
        color: String,
    },
    /// colored closure value (colors from the braid file)
    Colored {
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        braid: PathBuf,
        #[arg(long)]
        framed: bool,
    },
    /// surgery invariant
    Mfd {
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        diagram: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum BraidVariantArg {
    Unframed,
    Framed,
    Barred,
    Tilde,
}

#[derive(Clone, Copy, ValueEnum)]
enum DiagramVariantArg {
    Unframed,
    Framed,
    Simplified,
    Wirtinger,
    Rpi,
}

#[derive(Subcommand)]
enum PresentationCmd {
    FromBraid {
        path: PathBuf,
        #[arg(long, value_enum)]
        variant: BraidVariantArg,
    },
    FromDiagram {
        path: PathBuf,
        #[arg(long, value_enum)]
        variant: DiagramVariantArg,
    },
    /// count homomorphisms into a group, with optional pins `--pin C1=3`
    Count {
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        braid: Option<PathBuf>,
        #[arg(long)]
        diagram: Option<PathBuf>,
        #[arg(long, value_enum)]
        braid_variant: Option<BraidVariantArg>,
        #[arg(long, value_enum)]
        diagram_variant: Option<DiagramVariantArg>,
        /// `NAME=ELEMENT` or `NAME=class:K`
        #[arg(long = "pin")]
        pins: Vec<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Yangbaxter,
    Modular,
    Character,
    Markov,
    Turaev,
    Reidemeister,
    Kirby,
    Bridge,
    Anchors,
}

#[derive(Subcommand)]
enum ExperimentCmd {
    /// orientation reversal without color inversion: unoriented evidence
    Unoriented {
        #[arg(long)]
        group: PathBuf,
    },
    /// compare the two link-invariant pipelines on nontrivial involutions
    LambdaVsDelta {
        #[arg(long)]
        group: PathBuf,
    },
    /// compare |Hom(G_L)| with |Hom(pi1(M_L))|·|G|^m
    MfdPi1 {
        #[arg(long)]
        diagram: PathBuf,
    },
}

struct Out {
    machine: bool,
}

impl Out {
    fn kv(&self, key: &str, value: impl std::fmt::Display) {
        if self.machine {
            println!("{key} {value}");
        } else {
            println!("{key} = {value}");
        }
    }
    fn line(&self, text: impl std::fmt::Display) {
        if !self.machine {
            println!("{text}");
        }
    }
}

fn load_group(path: &PathBuf) -> anyhow::Result<FiniteGroup> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading group file {}", path.display()))?;
    Ok(FiniteGroup::load(&text)?)
}

fn load_braid(path: &PathBuf, group: Option<&FiniteGroup>) -> anyhow::Result<ColoredBraid> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading braid file {}", path.display()))?;
    Ok(ColoredBraid::parse(&text, group)?)
}

fn load_diagram(path: &PathBuf) -> anyhow::Result<LinkDiagram> {
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("reading diagram file {}", path.display()))?;
    Ok(LinkDiagram::parse(&text)?)
}

fn resolve_pair(spec: &str, g: &FiniteGroup) -> anyhow::Result<(usize, usize)> {
    match parse_color(spec, Some(g))? {
        Color::Pair { g: x, b } => Ok((x, b)),
        Color::Class(_) => anyhow::bail!("expected an element or pair color"),
    }
}

fn env_or<T: std::str::FromStr>(name: &str, fallback: T) -> T {
    std::env::var(name)
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(fallback)
}

fn run(cli: Cli) -> anyhow::Result<i32> {
    let out = Out {
        machine: cli.machine,
    };
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .ok();
    }
    let max_basis = cli
        .max_basis
        .unwrap_or_else(|| env_or("GROUPLINK_MAX_BASIS", grouplink::tangle::WIDTH_GUARD));
    let max_search = cli
        .max_search
        .unwrap_or_else(|| env_or("GROUPLINK_MAX_SEARCH", grouplink::fpgroup::DEFAULT_HOM_GUARD));

    match cli.cmd {
        Cmd::Group {
            cmd: GroupCmd::Info { path },
        } => {
            let g = load_group(&path)?;
            let cd = conjugacy(&g);
            out.kv("order", g.order());
            out.kv("classes", cd.num_classes());
            for i in 0..cd.num_classes() {
                out.kv(
                    &format!("class{i}"),
                    format!(
                        "rep={} size={} v={} star={}",
                        g.element_name(cd.reps[i]),
                        cd.w[i],
                        cd.v[i],
                        cd.star[i]
                    ),
                );
            }
            out.line("class algebra structure constants:");
            for i in 0..cd.num_classes() {
                for j in 0..cd.num_classes() {
                    let beta = class_product(&g, &cd, i, j);
                    let body = beta
                        .iter()
                        .map(|b| b.to_string())
                        .collect::<Vec<_>>()
                        .join(" ");
                    out.kv(&format!("beta{i},{j}"), body);
                }
            }
        }
        Cmd::Group {
            cmd: GroupCmd::Chars { path, table },
        } => {
            let g = load_group(&path)?;
            let cd = conjugacy(&g);
            let text = std::fs::read_to_string(&table)?;
            let t = CharacterTable::parse(&text)?;
            let rep = grouplink::character::character_identity_check(&g, &cd, &t)?;
            let mut failed = 0;
            for c in &rep.checks {
                out.kv(&c.name.replace(' ', "_"), if c.pass { "pass" } else { "FAIL" });
                if !c.pass {
                    failed += 1;
                }
            }
            if failed > 0 {
                return Ok(3);
            }
        }
        Cmd::Braid {
            cmd: BraidCmd::Info { path },
        } => {
            let cb = load_braid(&path, None)?;
            let w = grouplink::braid::writhe_counts(&cb.braid);
            out.kv("strands", cb.braid.strands);
            out.kv("length", cb.braid.word.len());
            out.kv("writhe", cb.braid.writhe());
            out.kv("components", cb.components.len());
            out.kv(
                "permutation",
                cb.braid
                    .permutation()
                    .iter()
                    .map(|p| (p + 1).to_string())
                    .collect::<Vec<_>>()
                    .join(" "),
            );
            out.kv(
                "m",
                w.m.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" "),
            );
        }
        Cmd::Tangle {
            cmd:
                TangleCmd::Eval {
                    path,
                    group,
                    framed,
                },
        } => {
            let g = load_group(&group)?;
            let text = std::fs::read_to_string(&path)?;
            let t = SlicedTangle::parse(&text, Some(&g))?;
            let m = evaluate_guarded(&g, &t, framed, max_basis)?;
            if m.arity_in == 0 && m.arity_out == 0 {
                let v: i64 = m
                    .entries
                    .get(&Vec::new())
                    .map(|o| o.iter().map(|(_, c)| *c).sum())
                    .unwrap_or(0);
                out.kv("F", v);
            } else {
                out.kv("arity_in", m.arity_in);
                out.kv("arity_out", m.arity_out);
                out.kv("entries", m.entries.len());
            }
        }
        Cmd::Invariant { cmd } => match cmd {
            InvariantCmd::Lambda {
                group,
                braid,
                color,
            } => {
                let g = load_group(&group)?;
                let cb = load_braid(&braid, Some(&g))?;
                let (x, b) = resolve_pair(&color, &g)?;
                let r = lambda_invariant(&g, x, b, &cb.braid)?;
                out.kv("value", r.value);
            }
            InvariantCmd::Delta {
                group,
                braid,
                color,
            } => {
                let g = load_group(&group)?;
                let cb = load_braid(&braid, Some(&g))?;
                let (x, b) = resolve_pair(&color, &g)?;
                let r = delta_invariant(&g, x, b, &cb.braid)?;
                out.kv("value", r.value);
            }
            InvariantCmd::Colored {
                group,
                braid,
                framed,
            } => {
                let g = load_group(&group)?;
                let cb = load_braid(&braid, Some(&g))?;
                let r = colored_closure_invariant(&g, &cb, framed)?;
                out.kv("value", r.value);
            }
            InvariantCmd::Mfd { group, diagram } => {
                return mfd_command(&out, &group, &diagram, max_search);
            }
        },
        Cmd::Mfd { group, diagram } => {
            return mfd_command(&out, &group, &diagram, max_search);
        }
        Cmd::Presentation { cmd } => match cmd {
            PresentationCmd::FromBraid { path, variant } => {
                let cb = load_braid(&path, None)?;
                let fp = presentation_from_braid(&cb, braid_variant(variant));
                print!("{}", fp.render());
            }
            PresentationCmd::FromDiagram { path, variant } => {
                let d = load_diagram(&path)?;
                let fp = presentation_from_diagram(&d, diagram_variant(variant));
                print!("{}", fp.render());
            }
            PresentationCmd::Count {
                group,
                braid,
                diagram,
                braid_variant: bv,
                diagram_variant: dv,
                pins,
            } => {
                let g = load_group(&group)?;
                let fp = match (braid, diagram) {
                    (Some(b), None) => {
                        let cb = load_braid(&b, Some(&g))?;
                        presentation_from_braid(
                            &cb,
                            braid_variant(bv.unwrap_or(BraidVariantArg::Unframed)),
                        )
                    }
                    (None, Some(d)) => {
                        let d = load_diagram(&d)?;
                        presentation_from_diagram(
                            &d,
                            diagram_variant(dv.unwrap_or(DiagramVariantArg::Framed)),
                        )
                    }
                    _ => anyhow::bail!("supply exactly one of --braid or --diagram"),
                };
                let cd = conjugacy(&g);
                let mut query = HomCountQuery::default();
                for p in &pins {
                    let (name, val) = p
                        .split_once('=')
                        .ok_or_else(|| anyhow::anyhow!("bad pin `{p}`"))?;
                    let gen = fp
                        .gens
                        .iter()
                        .position(|q| q.name == name)
                        .ok_or_else(|| anyhow::anyhow!("unknown generator `{name}`"))?;
                    let pin = if let Some(k) = val.strip_prefix("class:") {
                        Pin::Class(k.parse()?)
                    } else {
                        match parse_color(val, Some(&g))? {
                            Color::Pair { g: x, b: 0 } => Pin::Element(x),
                            Color::Class(k) => Pin::Class(k),
                            _ => anyhow::bail!("pin value must be an element or class"),
                        }
                    };
                    query.pins.push((gen, pin));
                }
                let n = count_homs_guarded(&fp, &g, &query, Some(&cd), max_search)?;
                out.kv("count", n);
            }
        },
        Cmd::Verify {
            suite,
            mutate,
            moves,
            braids,
        } => {
            let report = match suite {
                Suite::Yangbaxter => verify::run_yangbaxter(mutate)?,
                Suite::Modular => verify::run_modular(mutate)?,
                Suite::Character => verify::run_character(mutate)?,
                Suite::Markov => verify::run_markov(cli.seed, moves, mutate)?,
                Suite::Turaev => verify::run_turaev(cli.seed, mutate)?,
                Suite::Reidemeister => verify::run_reidemeister(mutate)?,
                Suite::Kirby => verify::run_kirby(mutate)?,
                Suite::Bridge => verify::run_bridge(cli.seed, braids, mutate)?,
                Suite::Anchors => verify::run_anchors()?,
            };
            let mut failed = 0usize;
            for c in &report.checks {
                let status = if c.pass { "pass" } else { "FAIL" };
                if cli.machine {
                    println!("{} {}", c.name.replace(' ', "_"), status);
                } else {
                    match &c.witness {
                        Some(w) if !c.pass => println!("{status}  {}  [{w}]", c.name),
                        _ => println!("{status}  {}", c.name),
                    }
                }
                if !c.pass {
                    failed += 1;
                }
            }
            out.kv("checks", report.checks.len());
            out.kv("failed", failed);
            if failed > 0 {
                return Ok(3);
            }
        }
        Cmd::Experiment { cmd } => {
            let rows = match cmd {
                ExperimentCmd::Unoriented { group } => {
                    let g = load_group(&group)?;
                    verify::experiment_unoriented(&g)?
                }
                ExperimentCmd::LambdaVsDelta { group } => {
                    let g = load_group(&group)?;
                    verify::experiment_lambda_vs_delta(&g, cli.seed)?
                }
                ExperimentCmd::MfdPi1 { diagram } => {
                    let d = load_diagram(&diagram)?;
                    verify::experiment_mfd_pi1(&SurgeryPresentation::new(d))?
                }
            };
            for (desc, agree) in rows {
                if cli.machine {
                    println!("{} {}", if agree { "agree" } else { "differ" }, desc.replace(' ', "_"));
                } else {
                    println!("{}  {desc}", if agree { "agree " } else { "differ" });
                }
            }
        }
    }
    Ok(0)
}

fn mfd_command(
    out: &Out,
    group: &PathBuf,
    diagram: &PathBuf,
    max_search: f64,
) -> anyhow::Result<i32> {
    let g = load_group(group)?;
    let cd = conjugacy(&g);
    let d = load_diagram(diagram)?;
    let s = SurgeryPresentation::new(d);
    let rep = grouplink::mfd::mfd_invariant_guarded(&g, &cd, &s, max_search)?;
    out.kv(
        "Fval",
        format!("{}/{}", rep.hom_total.numer(), rep.hom_total.denom()),
    );
    out.kv("value", rep.hom_total);
    out.kv("hom_count", rep.hom_count);
    out.kv("routes_agree", rep.routes_agree());
    out.kv("integral", rep.integral);
    for (idx, weight, value) in &rep.per_coloring {
        let key = format!(
            "coloring_{}",
            idx.iter().map(|c| c.to_string()).collect::<Vec<_>>().join("_")
        );
        out.kv(&key, format!("weight={weight} value={value}"));
    }
    if !rep.routes_agree() {
        anyhow::bail!("weighted-sum route disagrees with the hom-count route");
    }
    Ok(0)
}

fn braid_variant(v: BraidVariantArg) -> BraidVariant {
    match v {
        BraidVariantArg::Unframed => BraidVariant::Unframed,
        BraidVariantArg::Framed => BraidVariant::Framed,
        BraidVariantArg::Barred => BraidVariant::Barred,
        BraidVariantArg::Tilde => BraidVariant::Tilde,
    }
}

fn diagram_variant(v: DiagramVariantArg) -> DiagramVariant {
    match v {
        DiagramVariantArg::Unframed => DiagramVariant::Unframed,
        DiagramVariantArg::Framed => DiagramVariant::Framed,
        DiagramVariantArg::Simplified => DiagramVariant::FramedSimplified,
        DiagramVariantArg::Wirtinger => DiagramVariant::Wirtinger,
        DiagramVariantArg::Rpi => DiagramVariant::ReflectionQuotient,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e:#}");
            let code = match e.downcast_ref::<GlError>() {
                Some(GlError::Guard(_)) => 2,
                _ => 1,
            };
            ExitCode::from(code)
        }
    }
}
