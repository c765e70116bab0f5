//! Command-line surface for the `triact` library: graph generation and
//! export, local-action classification, orbit/scale/ends diagnostics, and a
//! whole-family verification sweep.
//!
//! Every run is reproducible from the echoed invocation line; there is no
//! hidden state and no randomness.  Exit codes: `0` success, `1` a
//! verification found a property violation (or a resource budget was
//! exhausted), `2` usage error.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use triact::families::Family;
use triact::functors::{
    arc_digraph, bs, contract, dihedral_split, power_graph, star_construction, CongruenceSpec,
};
use triact::{
    alternating, autos, dynamics, reverse, underlying_undirected, Ball, Budget, EdgeColor, Error,
    GraphGenerator,
};

#[derive(Parser)]
#[command(
    name = "triact",
    version,
    about = "Generate, classify, and verify vertex-transitive trivalent graphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Extract a rooted ball and export it as JSON, DOT, or a text summary.
    Generate {
        #[command(flatten)]
        graph: GraphArgs,
        /// Ball radius around the base vertex.
        #[arg(long)]
        radius: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Classify the local action at the base vertex (CaseA/CaseB/CaseC).
    Classify {
        #[command(flatten)]
        graph: GraphArgs,
        /// Ball radius used for the stabilizer computation (3-5 typical).
        #[arg(long, default_value_t = 3)]
        radius: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Report the permutation action of the base-vertex stabilizer on its
    /// neighbors.
    LocalAction {
        #[command(flatten)]
        graph: GraphArgs,
        /// Ball radius the stabilizer must preserve.
        #[arg(long, default_value_t = 2)]
        radius: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Orbit sizes of the declared line vertices under ball automorphisms.
    Orbit {
        #[command(flatten)]
        graph: GraphArgs,
        /// Largest line index n to measure.
        #[arg(long, default_value_t = 6)]
        n_max: usize,
        /// Extra ball radius beyond the line vertex's distance.
        #[arg(long, default_value_t = 2)]
        margin: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Count alternating arcs from the base vertex and check their
    /// one-orbit and no-cycle properties.
    AltArcs {
        #[command(flatten)]
        graph: GraphArgs,
        /// Arc length (number of edges).
        #[arg(long)]
        steps: usize,
        /// Color of the first edge of the counted arcs.
        #[arg(long, value_enum, default_value_t = FirstColor::Red)]
        first_color: FirstColor,
        /// Ball radius for the orbit and cycle checks (default: steps + 4).
        #[arg(long)]
        radius: Option<usize>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Estimate the growth scale from the line-orbit size sequence.
    Scale {
        #[command(flatten)]
        graph: GraphArgs,
        /// Largest line index n to measure.
        #[arg(long, default_value_t = 8)]
        n_max: usize,
        /// Extra ball radius beyond the line vertex's distance.
        #[arg(long, default_value_t = 2)]
        margin: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Count unbounded annulus components after removing a ball.
    Ends {
        #[command(flatten)]
        graph: GraphArgs,
        /// Radius of the removed open ball.
        #[arg(long, default_value_t = 3)]
        inner: usize,
        /// Radius of the surrounding ball (default: 3 * inner).
        #[arg(long)]
        outer: Option<usize>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Check the binary-tree structure of doubling line-orbit levels.
    Trofimov {
        #[command(flatten)]
        graph: GraphArgs,
        /// Deepest level to verify.
        #[arg(long, default_value_t = 4)]
        depth: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Decide the orbit-growth branch and run its structural cross-check.
    Dichotomy {
        #[command(flatten)]
        graph: GraphArgs,
        /// Largest line index n to measure.
        #[arg(long, default_value_t = 4)]
        n_max: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run the full verification sweep on a red/blue colored family:
    /// no-alternating-cycles, arc transitivity, end count, and (for theta
    /// and strip) the red-contraction round-trip at radius 5.
    VerifyAll {
        #[command(flatten)]
        graph: GraphArgs,
        /// Ball radius for the alternating-arc checks.
        #[arg(long, default_value_t = 8)]
        radius: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
}

/// How the graph under study is assembled.
#[derive(Args, Clone)]
struct GraphArgs {
    /// Family id: t3, colored-t3, oriented-t3, joined-ngons, joined-2ngons,
    /// delta-p, strip, theta, rotation-tree.  Parameters go in the
    /// matching flag (--s, --n, --p, --d) or inline as `theta(1)`.
    #[arg(long, conflicts_with = "pipeline")]
    family: Option<String>,
    /// Construction pipeline, e.g. `delta-p(2) | bs(1) | star`.  Stages:
    /// bs(s), arc-digraph, star, dihedral-split(d), contract(red|blue),
    /// power(n), underlying, reverse.
    #[arg(long)]
    pipeline: Option<String>,
    /// Family parameter s (theta).
    #[arg(long)]
    s: Option<i64>,
    /// Family parameter n (joined-ngons, joined-2ngons).
    #[arg(long)]
    n: Option<i64>,
    /// Family parameter p (delta-p).
    #[arg(long)]
    p: Option<i64>,
    /// Family parameter d (rotation-tree).
    #[arg(long)]
    d: Option<i64>,
}

impl GraphArgs {
    fn build(&self) -> Result<GraphGenerator, Error> {
        if let Some(pipeline) = &self.pipeline {
            return build_pipeline(pipeline);
        }
        let Some(family) = &self.family else {
            return Err(Error::Unsupported(
                "pass either --family or --pipeline".to_string(),
            ));
        };
        let params: Vec<i64> = [self.s, self.n, self.p, self.d]
            .into_iter()
            .flatten()
            .collect();
        if params.len() > 1 {
            return Err(Error::Unsupported(
                "pass at most one of --s, --n, --p, --d".to_string(),
            ));
        }
        let family = if family.contains('(') {
            if !params.is_empty() {
                return Err(Error::Unsupported(
                    "give the parameter inline or as a flag, not both".to_string(),
                ));
            }
            Family::parse(family)?
        } else {
            Family::from_parts(family, params.first().copied())?
        };
        family.make()
    }
}

/// One stage of a `--pipeline` string: a name plus an optional `(arg)`.
fn split_stage(stage: &str) -> Result<(&str, Option<&str>), Error> {
    let stage = stage.trim();
    match stage.split_once('(') {
        None => Ok((stage, None)),
        Some((head, rest)) => {
            let Some(arg) = rest.strip_suffix(')') else {
                return Err(Error::Unsupported(format!(
                    "unbalanced parentheses in pipeline stage {stage:?}"
                )));
            };
            Ok((head.trim(), Some(arg.trim())))
        }
    }
}

fn stage_int(stage: &str, arg: Option<&str>) -> Result<i64, Error> {
    let Some(arg) = arg else {
        return Err(Error::Unsupported(format!(
            "pipeline stage {stage} requires an integer argument"
        )));
    };
    arg.parse().map_err(|_| {
        Error::Unsupported(format!(
            "pipeline stage {stage} has a malformed argument {arg:?}"
        ))
    })
}

fn build_pipeline(pipeline: &str) -> Result<GraphGenerator, Error> {
    let mut stages = pipeline.split('|');
    let Some(first) = stages.next() else {
        return Err(Error::Unsupported("empty pipeline".to_string()));
    };
    let mut g = Family::parse(first)?.make()?;
    for stage in stages {
        let (name, arg) = split_stage(stage)?;
        g = match name {
            "bs" => {
                let s = stage_int(name, arg)?;
                let s = u32::try_from(s).map_err(|_| {
                    Error::Unsupported("bs(s) needs a non-negative s".to_string())
                })?;
                bs(&g, s)?
            }
            "arc-digraph" => arc_digraph(&g)?,
            "star" => star_construction(&g)?,
            "dihedral-split" => {
                let d = stage_int(name, arg)?;
                let d = usize::try_from(d).map_err(|_| {
                    Error::Unsupported("dihedral-split(d) needs a positive d".to_string())
                })?;
                dihedral_split(&g, d)?
            }
            "contract" => {
                let Some(kind) = arg else {
                    return Err(Error::Unsupported(
                        "contract needs a congruence kind (red or blue)".to_string(),
                    ));
                };
                contract(&g, CongruenceSpec::parse(kind)?)?
            }
            "power" => {
                let n = stage_int(name, arg)?;
                let n = u32::try_from(n).map_err(|_| {
                    Error::Unsupported("power(n) needs a positive n".to_string())
                })?;
                power_graph(&g, n)?
            }
            "underlying" => underlying_undirected(&g),
            "reverse" => reverse(&g),
            other => {
                return Err(Error::Unsupported(format!(
                    "unknown pipeline stage {other:?}"
                )))
            }
        };
    }
    Ok(g)
}

#[derive(Args, Clone)]
struct OutputArgs {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum Format {
    Text,
    Json,
    Dot,
}

#[derive(ValueEnum, Clone, Copy, PartialEq, Eq)]
enum FirstColor {
    Red,
    Blue,
}

impl FirstColor {
    fn edge_color(self) -> EdgeColor {
        match self {
            FirstColor::Red => EdgeColor::Red,
            FirstColor::Blue => EdgeColor::Blue,
        }
    }

    fn name(self) -> &'static str {
        match self {
            FirstColor::Red => "red",
            FirstColor::Blue => "blue",
        }
    }
}

/// Compact `name(params)` display used in reports.
fn family_label(g: &GraphGenerator) -> String {
    let params = g.params();
    if params.is_empty() {
        g.name().to_string()
    } else {
        let values: Vec<String> = params.values().map(|v| v.to_string()).collect();
        format!("{}({})", g.name(), values.join(","))
    }
}

/// Quote an argument so the echoed invocation can be pasted into a shell.
fn shell_quote(arg: &str) -> String {
    let plain = arg
        .chars()
        .all(|c| c.is_ascii_alphanumeric() || "-_=./,:".contains(c));
    if plain && !arg.is_empty() {
        arg.to_string()
    } else {
        format!("'{}'", arg.replace('\'', "'\\''"))
    }
}

fn invocation_line() -> String {
    let mut parts = vec!["triact".to_string()];
    parts.extend(std::env::args().skip(1).map(|a| shell_quote(&a)));
    parts.join(" ")
}

fn budget_from_env() -> Result<Budget, String> {
    match std::env::var("TRIACT_BUDGET") {
        Ok(raw) => raw
            .trim()
            .parse::<u64>()
            .map(Budget::uniform)
            .map_err(|_| format!("TRIACT_BUDGET must be a positive integer, got {raw:?}")),
        Err(std::env::VarError::NotPresent) => Ok(Budget::default()),
        Err(std::env::VarError::NotUnicode(_)) => {
            Err("TRIACT_BUDGET is not valid UTF-8".to_string())
        }
    }
}

fn exit_code_for(error: &Error) -> i32 {
    match error {
        Error::InvalidToken { .. } | Error::InvalidParameter { .. } | Error::Unsupported(_) => 2,
        Error::Precondition(_) | Error::BudgetExceeded { .. } | Error::ColoringMismatch(_) => 1,
    }
}

/// Shared output plumbing: JSON reports are wrapped in an envelope that
/// echoes the invocation and the active budget limits.
struct Emitter {
    invocation: String,
    budget: Budget,
}

impl Emitter {
    fn json(&self, report: serde_json::Value) {
        let envelope = json!({
            "invocation": self.invocation,
            "budget": {
                "ball_vertices": self.budget.ball_vertices,
                "search_nodes": self.budget.search_nodes,
            },
            "report": report,
        });
        println!("{}", serde_json::to_string_pretty(&envelope).expect("serializable"));
    }

    fn text_header(&self) {
        eprintln!("# {}", self.invocation);
    }
}

fn case_label_text(label: autos::CaseLabel) -> &'static str {
    match label {
        autos::CaseLabel::Discrete => "Discrete",
        autos::CaseLabel::CaseA => "CaseA",
        autos::CaseLabel::CaseB => "CaseB",
        autos::CaseLabel::CaseC => "CaseC",
    }
}

fn scale_verdict_text(verdict: &dynamics::ScaleVerdict) -> String {
    match verdict {
        dynamics::ScaleVerdict::RatioStable(q) => format!("ratio-stable({q})"),
        dynamics::ScaleVerdict::Bounded(b) => format!("bounded({b})"),
        dynamics::ScaleVerdict::Inconclusive => "inconclusive".to_string(),
    }
}

fn ends_verdict_text(verdict: &dynamics::EndsVerdict) -> String {
    match verdict {
        dynamics::EndsVerdict::One => "one".to_string(),
        dynamics::EndsVerdict::Two => "two".to_string(),
        dynamics::EndsVerdict::Many(k) => format!("many({k})"),
        dynamics::EndsVerdict::Inconclusive => "inconclusive".to_string(),
    }
}

fn reject_dot(format: Format) -> Result<(), Error> {
    if format == Format::Dot {
        return Err(Error::Unsupported(
            "dot output is only available for generate".to_string(),
        ));
    }
    Ok(())
}

/// Outcome of one named check inside `verify-all`.
struct CheckResult {
    name: &'static str,
    status: &'static str, // "passed" | "failed" | "skipped"
    detail: String,
}

fn run_verify_all(
    g: &GraphGenerator,
    radius: usize,
    budget: &Budget,
) -> Result<Vec<CheckResult>, Error> {
    if !g.signature().colored {
        return Err(Error::Unsupported(
            "verify-all needs a red/blue colored family".to_string(),
        ));
    }
    if radius < 5 {
        return Err(Error::InvalidParameter {
            name: "radius",
            value: radius as i64,
            reason: "verify-all needs radius >= 5".to_string(),
        });
    }
    let mut checks = Vec::new();

    let max_steps = (radius - 2).max(2);
    let cycles = alternating::verify_no_alternating_cycles(g, radius, max_steps, budget)?;
    checks.push(CheckResult {
        name: "no-alternating-cycles",
        status: if cycles.passed() { "passed" } else { "failed" },
        detail: format!(
            "{} arcs checked up to {} steps in the radius-{} ball; {} violations",
            cycles.arcs_checked,
            max_steps,
            radius,
            cycles.violations.len()
        ),
    });

    let s = (radius - 4).max(1);
    let transitivity = alternating::verify_alt_transitivity(g, radius, s, budget)?;
    let orbit_counts: Vec<String> = transitivity
        .by_first_color
        .iter()
        .map(|count| {
            format!(
                "{:?}: {} arcs in {} orbit(s)",
                count.first_color, count.arcs, count.orbits
            )
        })
        .collect();
    checks.push(CheckResult {
        name: "alt-transitivity",
        status: if transitivity.transitive() { "passed" } else { "failed" },
        detail: format!("{}-step arcs from the base; {}", s, orbit_counts.join(", ")),
    });

    // One undecided ends estimate only means the removed ball was too small
    // to cut the graph, so grow it until the verdict is decisive.
    let mut ends_detail = String::new();
    let mut ends_status = "failed";
    for inner in 3..=8 {
        let estimate = dynamics::count_ends(g, inner, 3 * inner, budget)?;
        ends_detail = format!(
            "verdict {} at (inner {}, outer {}), counts {:?}",
            ends_verdict_text(&estimate.verdict),
            inner,
            3 * inner,
            estimate.counts
        );
        match estimate.verdict {
            dynamics::EndsVerdict::Two | dynamics::EndsVerdict::Many(_) => {
                ends_status = "passed";
                break;
            }
            dynamics::EndsVerdict::One | dynamics::EndsVerdict::Inconclusive => {}
        }
    }
    checks.push(CheckResult {
        name: "ends",
        status: ends_status,
        detail: ends_detail,
    });

    let reference = match (g.name(), g.params().get("s")) {
        ("theta", Some(&s)) => Some(s as u32),
        ("strip", _) => Some(0),
        _ => None,
    };
    match reference {
        None => checks.push(CheckResult {
            name: "contraction-round-trip",
            status: "skipped",
            detail: "no reference normal form for this family".to_string(),
        }),
        Some(s) => {
            let contracted = contract(g, CongruenceSpec::RedEdgePairs)?;
            // The contraction forgets orientation, so compare against the
            // undirected shadow of the reference digraph.
            let normal_form = underlying_undirected(&bs(&triact::families::delta_p(2)?, s)?);
            let roundtrip_radius = 5;
            let a = Ball::extract(
                &contracted,
                contracted.base(),
                roundtrip_radius,
                budget,
            )?;
            let b = Ball::extract(
                &normal_form,
                normal_form.base(),
                roundtrip_radius,
                budget,
            )?;
            let ok = autos::balls_isomorphic(&a, &b, budget)?;
            checks.push(CheckResult {
                name: "contraction-round-trip",
                status: if ok { "passed" } else { "failed" },
                detail: format!(
                    "red contraction vs {}-step doubling core, rooted balls of radius {}",
                    s, roundtrip_radius
                ),
            });
        }
    }
    Ok(checks)
}

fn run(command: Command, budget: &Budget) -> Result<i32, Error> {
    let emitter = Emitter {
        invocation: invocation_line(),
        budget: *budget,
    };
    match command {
        Command::Generate {
            graph,
            radius,
            output,
        } => {
            let g = graph.build()?;
            let ball = Ball::extract(&g, g.base(), radius, budget)?;
            match output.format {
                Format::Json => emitter.json(ball.to_json()),
                Format::Dot => print!("{}", ball.to_dot()),
                Format::Text => {
                    emitter.text_header();
                    println!("graph: {}", family_label(&g));
                    println!("center: {}", g.base());
                    println!("radius: {radius}");
                    println!("vertices: {}", ball.len());
                    println!("edges: {}", ball.edges().len());
                    let spheres: Vec<usize> =
                        (0..=radius).map(|d| ball.sphere(d).len()).collect();
                    println!("sphere sizes: {spheres:?}");
                }
            }
            Ok(0)
        }
        Command::Classify {
            graph,
            radius,
            output,
        } => {
            reject_dot(output.format)?;
            let g = graph.build()?;
            let report = autos::classify_case(&g, radius, budget)?;
            match output.format {
                Format::Json => emitter.json(serde_json::to_value(&report).expect("serializable")),
                _ => {
                    emitter.text_header();
                    println!("{}", case_label_text(report.label));
                }
            }
            Ok(0)
        }
        Command::LocalAction {
            graph,
            radius,
            output,
        } => {
            reject_dot(output.format)?;
            let g = graph.build()?;
            let report = autos::local_action(&g, g.base(), radius, budget)?;
            match output.format {
                Format::Json => emitter.json(serde_json::to_value(&report).expect("serializable")),
                _ => {
                    emitter.text_header();
                    println!("order: {}", report.order);
                    println!("neighbors: {:?}", report.neighbors);
                    println!("fixed: {:?}", report.fixed);
                    for p in &report.permutations {
                        println!("permutation: {p:?}");
                    }
                }
            }
            Ok(0)
        }
        Command::Orbit {
            graph,
            n_max,
            margin,
            output,
        } => {
            reject_dot(output.format)?;
            let g = graph.build()?;
            let policy = dynamics::RadiusPolicy { margin };
            let report = dynamics::orbit_growth(&g, n_max, policy, budget)?;
            match output.format {
                Format::Json => emitter.json(serde_json::to_value(&report).expect("serializable")),
                _ => {
                    emitter.text_header();
                    println!("orbit sizes: {:?}", report.sizes());
                    for entry in &report.entries {
                        println!(
                            "n={} radius={} distance={} size={}",
                            entry.n, entry.radius, entry.distance, entry.orbit_size
                        );
                    }
                }
            }
            Ok(0)
        }
        Command::AltArcs {
            graph,
            steps,
            first_color,
            radius,
            output,
        } => {
            reject_dot(output.format)?;
            let g = graph.build()?;
            let radius = radius.unwrap_or(steps + 4);
            if radius < steps + 4 {
                return Err(Error::InvalidParameter {
                    name: "radius",
                    value: radius as i64,
                    reason: format!("alt-arcs needs radius >= steps + 4 = {}", steps + 4),
                });
            }
            let arcs = alternating::enumerate_alternating(
                &g,
                g.base(),
                steps,
                first_color.edge_color(),
                budget,
            )?;
            let transitivity = alternating::verify_alt_transitivity(&g, radius, steps, budget)?;
            let orbit_count = transitivity
                .by_first_color
                .iter()
                .find(|c| c.first_color == first_color.edge_color())
                .map(|c| c.orbits)
                .unwrap_or(0);
            let cycles =
                alternating::verify_no_alternating_cycles(&g, radius, steps.max(2), budget)?;
            let report = json!({
                "family": family_label(&g),
                "s": steps,
                "first_color": first_color.name(),
                "count": arcs.len(),
                "orbit_count": orbit_count,
                "violations": cycles.violations,
            });
            match output.format {
                Format::Json => emitter.json(report),
                _ => {
                    emitter.text_header();
                    println!("family: {}", family_label(&g));
                    println!("s: {steps}");
                    println!("first color: {}", first_color.name());
                    println!("count: {}", arcs.len());
                    println!("orbit count: {orbit_count}");
                    println!("violations: {}", cycles.violations.len());
                    for v in &cycles.violations {
                        println!("violation: {v}");
                    }
                }
            }
            Ok(if cycles.passed() { 0 } else { 1 })
        }
        Command::Scale {
            graph,
            n_max,
            margin,
            output,
        } => {
            reject_dot(output.format)?;
            let g = graph.build()?;
            let policy = dynamics::RadiusPolicy { margin };
            let growth = dynamics::orbit_growth(&g, n_max, policy, budget)?;
            let estimate = dynamics::scale_estimate(&growth.sizes())?;
            match output.format {
                Format::Json => emitter.json(json!({
                    "growth": serde_json::to_value(&growth).expect("serializable"),
                    "estimate": serde_json::to_value(&estimate).expect("serializable"),
                })),
                _ => {
                    emitter.text_header();
                    println!("sizes: {:?}", estimate.sizes);
                    println!("ratios: {:?}", estimate.ratios);
                    println!("nth roots: {:?}", estimate.nth_roots);
                    println!("verdict: {}", scale_verdict_text(&estimate.verdict));
                    match estimate.scale {
                        Some(scale) => println!("scale: {scale}"),
                        None => println!("scale: undetermined"),
                    }
                }
            }
            Ok(0)
        }
        Command::Ends {
            graph,
            inner,
            outer,
            output,
        } => {
            reject_dot(output.format)?;
            let g = graph.build()?;
            let outer = outer.unwrap_or(3 * inner);
            let estimate = dynamics::count_ends(&g, inner, outer, budget)?;
            match output.format {
                Format::Json => {
                    emitter.json(serde_json::to_value(&estimate).expect("serializable"))
                }
                _ => {
                    emitter.text_header();
                    println!("inner radius: {}", estimate.inner_radius);
                    println!("outer radius: {}", estimate.outer_radius);
                    println!("component counts: {:?}", estimate.counts);
                    println!("verdict: {}", ends_verdict_text(&estimate.verdict));
                }
            }
            Ok(0)
        }
        Command::Trofimov {
            graph,
            depth,
            output,
        } => {
            reject_dot(output.format)?;
            let g = graph.build()?;
            let report = dynamics::trofimov_tree_check(&g, depth, budget)?;
            let passed = report.passed();
            match output.format {
                Format::Json => emitter.json(serde_json::to_value(&report).expect("serializable")),
                _ => {
                    emitter.text_header();
                    println!("level sizes: {:?}", report.orbit_sizes);
                    println!("expected: {:?}", report.expected_sizes);
                    println!("root degree: {}", report.root_degree);
                    println!("parent violations: {}", report.parent_violations);
                    println!("child violations: {}", report.child_violations);
                    println!("acyclic: {}", report.acyclic);
                    println!("mirror sizes: {:?}", report.mirror_sizes);
                    println!("mirror disjoint: {}", report.mirror_disjoint);
                    println!("roots adjacent in square: {}", report.roots_adjacent_in_square);
                    println!("passed: {passed}");
                }
            }
            Ok(if passed { 0 } else { 1 })
        }
        Command::Dichotomy {
            graph,
            n_max,
            output,
        } => {
            reject_dot(output.format)?;
            let g = graph.build()?;
            let report = dynamics::uniscalar_dichotomy(&g, n_max, budget)?;
            let passed = report.cross_check_passed;
            match output.format {
                Format::Json => emitter.json(serde_json::to_value(&report).expect("serializable")),
                _ => {
                    emitter.text_header();
                    println!("orbit sizes: {:?}", report.orbit_sizes);
                    let branch = match report.branch {
                        dynamics::DichotomyBranch::Inequality => "inequality",
                        dynamics::DichotomyBranch::Equality => "equality",
                        dynamics::DichotomyBranch::Neither => "neither",
                    };
                    println!("branch: {branch}");
                    if let Some(ends) = &report.ends {
                        println!(
                            "ends: {} at (inner {}, outer {})",
                            ends_verdict_text(&ends.verdict),
                            ends.inner_radius,
                            ends.outer_radius
                        );
                    }
                    if let Some(tree) = &report.tree_check {
                        println!("tree levels: {:?}", tree.orbit_sizes);
                    }
                    println!("cross-check passed: {passed}");
                }
            }
            Ok(if passed { 0 } else { 1 })
        }
        Command::VerifyAll {
            graph,
            radius,
            output,
        } => {
            reject_dot(output.format)?;
            let g = graph.build()?;
            let checks = run_verify_all(&g, radius, budget)?;
            let passed = checks.iter().all(|c| c.status != "failed");
            match output.format {
                Format::Json => {
                    let rows: Vec<serde_json::Value> = checks
                        .iter()
                        .map(|c| {
                            json!({"name": c.name, "status": c.status, "detail": c.detail})
                        })
                        .collect();
                    emitter.json(json!({
                        "family": family_label(&g),
                        "radius": radius,
                        "checks": rows,
                        "passed": passed,
                    }));
                }
                _ => {
                    emitter.text_header();
                    for c in &checks {
                        println!("{}: {} ({})", c.name, c.status, c.detail);
                    }
                    println!("verify-all: {}", if passed { "PASSED" } else { "FAILED" });
                }
            }
            Ok(if passed { 0 } else { 1 })
        }
    }
}

fn main() {
    // Die quietly when the reader closes the pipe (e.g. `triact … | head`)
    // instead of panicking on the failed write.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    let budget = match budget_from_env() {
        Ok(budget) => budget,
        Err(message) => {
            eprintln!("error: {message}");
            std::process::exit(2);
        }
    };
    match run(cli.command, &budget) {
        Ok(code) => std::process::exit(code),
        Err(error) => {
            eprintln!("error: {error}");
            std::process::exit(exit_code_for(&error));
        }
    }
}
