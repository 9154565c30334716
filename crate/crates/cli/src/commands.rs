use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sofic_core::approx::SoficApproximation;
use sofic_core::bridge::{
    epsilon_threshold, exceptional_vertex_bound, good_set_from_charts, graph_to_maps,
    maps_to_graph, GoodSet, LabeledDigraph,
};
use sofic_core::group::{GroupRingElement, DEFAULT_ELEMENT_CAP as CAP};
use sofic_core::rank::{
    direct_finiteness_check, pseudo_rank_axioms_check, pseudo_rank_sequence, regularity_check,
    FinitenessVerdict,
};
use sofic_core::rational::render;
use sofic_core::{Error, Rational};

use crate::config::{describe_schedule, Schedule, Setup};
use crate::output::{CliError, OutDir, Outcome};

pub struct Context<'a> {
    pub out: &'a OutDir,
    pub seed: u64,
}

impl Context<'_> {
    fn header(&self, command: &str) -> String {
        format!("command {command}\nseed {}\n", self.seed)
    }
}

pub fn approximate(
    ctx: &Context,
    setup: &Setup,
    raw: &str,
    schedule: &Schedule,
) -> Result<Outcome, CliError> {
    let family = setup.family(schedule, None)?;
    let mut csv =
        String::from("level,label,vertices,epsilon,max_a,defect_b,max_agreement_c,satisfies\n");
    for (k, level) in family.iter().enumerate() {
        let report = level.report();
        ctx.out
            .write(&format!("level-{k}.approx"), &level.to_text())?;
        ctx.out.write(
            &format!("level-{k}.defects"),
            &report.to_text(setup.group.as_ref()),
        )?;
        let _ = writeln!(
            csv,
            "{k},{},{},{},{},{},{},{}",
            level.label(),
            level.v_size(),
            render(&level.epsilon()),
            render(&report.max_a),
            render(&report.defect_b),
            render(&report.max_c),
            report.satisfies(level.epsilon())
        );
        println!(
            "level {k} ({}): max_a {} defect_b {} max_c {}",
            level.label(),
            render(&report.max_a),
            render(&report.defect_b),
            render(&report.max_c)
        );
    }
    ctx.out.write("defects.csv", &csv)?;
    ctx.out.write(
        "run.txt",
        &format!(
            "{}{}{}",
            ctx.header("approximate"),
            setup.describe(),
            describe_schedule(raw, schedule)
        ),
    )?;
    Ok(Outcome::Clean)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Direction {
    MapsToGraph,
    GraphToMaps,
    RoundTrip,
}

pub struct ConvertArgs<'a> {
    pub direction: Direction,
    pub radius: usize,
    pub delta: Rational,
    pub epsilon: Rational,
    pub schedule: Option<(&'a str, Schedule)>,
    pub graph: Option<&'a std::path::Path>,
    pub good: Option<&'a std::path::Path>,
}

pub fn convert(ctx: &Context, setup: &Setup, args: &ConvertArgs) -> Result<Outcome, CliError> {
    let group = setup.group.as_ref();
    let r = args.radius;
    let n_r = group.ball(r, CAP)?.len();
    let n_r1 = group.ball(r + 1, CAP)?.len();
    let b = group.generators().len();
    let threshold = epsilon_threshold(args.delta, n_r1, n_r, b)?;
    let mut text = ctx.header("convert");
    text.push_str(&setup.describe());
    let direction = match args.direction {
        Direction::MapsToGraph => "maps-to-graph",
        Direction::GraphToMaps => "graph-to-maps",
        Direction::RoundTrip => "round-trip",
    };
    let _ = writeln!(text, "direction {direction}");
    let _ = writeln!(text, "radius {r}");
    let _ = writeln!(text, "delta {}", render(&args.delta));
    let _ = writeln!(text, "ball_r {n_r}\nball_r_plus_1 {n_r1}\ngenerators {b}");
    let _ = writeln!(text, "threshold {}", render(&threshold));
    println!(
        "epsilon threshold for delta {}: {}",
        render(&args.delta),
        render(&threshold)
    );

    if args.direction == Direction::GraphToMaps {
        return graph_direction(ctx, setup, args, text);
    }
    let (raw, schedule) = args
        .schedule
        .as_ref()
        .ok_or_else(|| CliError::usage(format!("{direction} needs --schedule")))?;
    let _ = write!(text, "{}", describe_schedule(raw, schedule));
    // maps_to_graph needs F ⊇ N_{2r+2}
    let family = setup.family(schedule, Some(2 * r + 2))?;
    let small_f = setup.ball(r / 2)?;
    let mut csv = String::from(
        "level,label,vertices,max_abc,below_threshold,good,delta_measured,meets_delta,exceptional_bound,bound_holds",
    );
    if args.direction == Direction::RoundTrip {
        csv.push_str(",diff");
    }
    csv.push('\n');
    let mut failures = String::new();
    for (k, level) in family.iter().enumerate() {
        let report = level.report();
        let (graph, good) = maps_to_graph(level, r, CAP)?;
        ctx.out
            .write(&format!("level-{k}.edges"), &graph.to_edge_list())?;
        ctx.out.write(&format!("level-{k}.good"), &good.to_text())?;
        let max_abc = report.max_abc();
        let below = max_abc < threshold;
        let meets = good.meets(args.delta);
        let bound = exceptional_vertex_bound(&report, n_r, n_r1, b);
        let bad = Rational::from_integer((good.v_size() - good.len()) as i64);
        let bound_holds = bad <= bound;
        let _ = write!(
            csv,
            "{k},{},{},{},{below},{},{},{meets},{},{bound_holds}",
            level.label(),
            level.v_size(),
            render(&max_abc),
            good.len(),
            render(&good.delta()),
            render(&bound)
        );
        if !bound_holds || (below && !meets) {
            let _ = writeln!(
                failures,
                "level {k}: {} exceptional vertices, bound {}, max_abc {} below threshold {below}, delta measured {}\n{}",
                good.v_size() - good.len(),
                render(&bound),
                render(&max_abc),
                render(&good.delta()),
                level.to_text()
            );
        }
        if args.direction == Direction::RoundTrip {
            let diff = match round_trip_diff(setup, level, &graph, &good, r, &small_f) {
                Ok(d) => Some(d),
                // V_0 should carry charts; a missing one is a failure of the check
                Err(Error::Precondition(msg)) => {
                    let _ = writeln!(failures, "level {k}: {msg}");
                    None
                }
                Err(e) => return Err(e.into()),
            };
            let shown = diff.map_or_else(|| "failed".to_string(), |d| d.to_string());
            let _ = write!(csv, ",{shown}");
            if let Some(d @ 1..) = diff {
                let _ = writeln!(failures, "level {k}: {d} disagreements on V_0");
            }
            println!(
                "level {k} ({}): |V_0| {} of {}, round-trip diff {shown}",
                level.label(),
                good.len(),
                level.v_size()
            );
        } else {
            println!(
                "level {k} ({}): |V_0| {} of {}",
                level.label(),
                good.len(),
                level.v_size()
            );
        }
        csv.push('\n');
    }
    ctx.out.write("convert.txt", &text)?;
    ctx.out.write("convert.csv", &csv)?;
    if failures.is_empty() {
        Ok(Outcome::Clean)
    } else {
        ctx.out.counterexample(&failures)
    }
}

/// Number of pairs `(g, v)`, `g ∈ N_r`, `v ∈ V_0`, where the rebuilt map
/// differs from the original.
fn round_trip_diff(
    setup: &Setup,
    level: &SoficApproximation,
    graph: &LabeledDigraph,
    good: &GoodSet,
    r: usize,
    small_f: &[sofic_core::group::GroupElement],
) -> Result<usize, Error> {
    let back = graph_to_maps(
        graph,
        good,
        r,
        small_f,
        setup.group.clone(),
        level.epsilon(),
        CAP,
    )?;
    let mut diff = 0;
    for g in setup.group.ball(r, CAP)?.elements() {
        let (before, after) = (
            level.map(g).expect("N_r ⊆ F"),
            back.map(g).expect("N_r stored"),
        );
        diff += good
            .vertices()
            .iter()
            .filter(|&&v| before.apply(v) != after.apply(v))
            .count();
    }
    Ok(diff)
}

fn graph_direction(
    ctx: &Context,
    setup: &Setup,
    args: &ConvertArgs,
    mut text: String,
) -> Result<Outcome, CliError> {
    let path = args
        .graph
        .ok_or_else(|| CliError::usage("graph-to-maps needs --graph"))?;
    let read = |p: &std::path::Path| {
        std::fs::read_to_string(p)
            .map_err(|e| CliError::usage(format!("cannot read {}: {e}", p.display())))
    };
    let labels: Vec<String> = setup
        .group
        .generators()
        .iter()
        .map(|g| g.name.clone())
        .collect();
    let graph = LabeledDigraph::from_edge_list(&read(path)?, &labels)
        .map_err(|e| CliError::usage(format!("edge list {}: {e}", path.display())))?;
    let r = args.radius;
    let good = match args.good {
        Some(p) => GoodSet::from_text(&read(p)?)
            .map_err(|e| CliError::usage(format!("good set {}: {e}", p.display())))?,
        None => good_set_from_charts(&graph, &setup.group.ball(r, CAP)?, &setup.group)?,
    };
    let f = setup.ball(r / 2)?;
    let approx = graph_to_maps(&graph, &good, r, &f, setup.group.clone(), args.epsilon, CAP)?;
    let report = approx.report();
    let _ = writeln!(text, "graph {}", path.display());
    let _ = writeln!(text, "vertices {}", graph.vertex_count());
    let _ = writeln!(text, "good {}", good.len());
    let _ = writeln!(text, "delta_measured {}", render(&good.delta()));
    let _ = writeln!(text, "meets_delta {}", good.meets(args.delta));
    let _ = writeln!(text, "max_abc {}", render(&report.max_abc()));
    ctx.out.write("maps.approx", &approx.to_text())?;
    ctx.out
        .write("maps.defects", &report.to_text(setup.group.as_ref()))?;
    ctx.out.write("maps.good", &good.to_text())?;
    ctx.out.write("convert.txt", &text)?;
    println!(
        "|V_0| {} of {}, max_abc {}",
        good.len(),
        graph.vertex_count(),
        render(&report.max_abc())
    );
    Ok(Outcome::Clean)
}

pub fn rank(
    ctx: &Context,
    setup: &Setup,
    raw: &str,
    schedule: &Schedule,
    element: &GroupRingElement,
) -> Result<Outcome, CliError> {
    let family = setup.family(schedule, None)?;
    let seq = pseudo_rank_sequence(element, &family)?;
    for (k, l) in seq.levels.iter().enumerate() {
        if let Some(note) = &l.note {
            eprintln!("warning: level {k} ({}): {note}", l.label);
        }
    }
    ctx.out.write("rank.csv", &seq.to_csv())?;
    let text = format!(
        "{}{}{}prime {}\n{}",
        ctx.header("rank"),
        setup.describe(),
        describe_schedule(raw, schedule),
        element.prime(),
        seq.summary()
    );
    ctx.out.write("rank.txt", &text)?;
    print!("{}", seq.summary());
    Ok(Outcome::Clean)
}

pub struct FinitenessArgs<'a> {
    pub a: Option<&'a str>,
    pub b: Option<&'a str>,
    pub trials: usize,
    pub schedule: Option<(&'a str, Schedule)>,
}

pub fn finiteness(
    ctx: &Context,
    setup: &Setup,
    p: u32,
    args: &FinitenessArgs,
) -> Result<Outcome, CliError> {
    let group = setup.group.as_ref();
    let family = match &args.schedule {
        Some((_, s)) => setup.family(s, None)?,
        None => Vec::new(),
    };
    let pairs: Vec<(GroupRingElement, GroupRingElement)> = match (args.a, args.b) {
        (Some(a), Some(b)) => vec![(setup.element(a, p)?, setup.element(b, p)?)],
        (Some(a), None) => {
            let a = setup.element(a, p)?;
            let b = solve_inverse(setup, &a)?
                .ok_or_else(|| CliError::usage(format!("{} has no inverse", a.display(group))))?;
            vec![(a, b)]
        }
        (None, Some(_)) => return Err(CliError::usage("--b needs --a")),
        (None, None) => random_units(setup, p, args.trials, ctx.seed)?,
    };
    let mut text = ctx.header("finiteness");
    text.push_str(&setup.describe());
    if let Some((raw, s)) = &args.schedule {
        text.push_str(&describe_schedule(raw, s));
    }
    let _ = writeln!(text, "prime {p}\ncases {}", pairs.len());
    let mut csv = format!("case,{}\n", FinitenessVerdict::CSV_HEADER);
    let mut failures = String::new();
    let mut violations = 0;
    for (i, (a, b)) in pairs.iter().enumerate() {
        let v = direct_finiteness_check(a, b, group, &family)?;
        let _ = write!(text, "\ncase {i}\n{}", v.to_text());
        for line in v.to_csv().lines().skip(1) {
            let _ = writeln!(csv, "{i},{line}");
        }
        if v.is_violation() || v.matrix_disagreements() > 0 {
            violations += 1;
            let _ = write!(failures, "case {i}\n{}{}", v.to_text(), v.to_csv());
        }
    }
    ctx.out.write("finiteness.txt", &text)?;
    ctx.out.write("finiteness.csv", &csv)?;
    println!("{} cases, {violations} violations", pairs.len());
    if failures.is_empty() {
        Ok(Outcome::Clean)
    } else {
        ctx.out.counterexample(&failures)
    }
}

fn solve_inverse(
    setup: &Setup,
    a: &GroupRingElement,
) -> Result<Option<GroupRingElement>, CliError> {
    if !setup.group.is_finite() {
        return Err(CliError::usage("--b may only be omitted for finite groups"));
    }
    Ok(a.inverse_in_finite_group(&setup.group)?)
}

/// Units with uniformly random coefficients, each paired with its inverse
/// from the regular representation.
fn random_units(
    setup: &Setup,
    p: u32,
    trials: usize,
    seed: u64,
) -> Result<Vec<(GroupRingElement, GroupRingElement)>, CliError> {
    let elements = setup
        .group
        .elements()
        .ok_or_else(|| CliError::usage("random units need a finite group; pass --a and --b"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(trials);
    let attempts = trials.saturating_mul(10_000).max(10_000);
    for _ in 0..attempts {
        if out.len() == trials {
            break;
        }
        let a = GroupRingElement::from_terms(
            p,
            elements
                .iter()
                .map(|g| (g.clone(), rng.gen_range(0..p as i64))),
        )?;
        if let Some(b) = a.inverse_in_finite_group(&setup.group)? {
            out.push((a, b));
        }
    }
    if out.len() < trials {
        return Err(CliError::usage(format!(
            "found only {} units in {attempts} draws",
            out.len()
        )));
    }
    Ok(out)
}

pub fn axioms(ctx: &Context, p: u32, n: usize, trials: usize) -> Result<Outcome, CliError> {
    let report = pseudo_rank_axioms_check(p, n, trials, ctx.seed)?;
    let text = format!("command axioms\n{}", report.to_text());
    ctx.out.write("axioms.txt", &text)?;
    println!("{} violations in {trials} trials", report.violations());
    if report.violations() > 0 {
        ctx.out.counterexample(&text)
    } else {
        Ok(Outcome::Clean)
    }
}

pub fn regularity(ctx: &Context, p: u32, n: usize, trials: usize) -> Result<Outcome, CliError> {
    let report = regularity_check(p, n, trials, ctx.seed)?;
    let text = format!("command regularity\n{}", report.to_text());
    ctx.out.write("regularity.txt", &text)?;
    println!("{}/{} witnesses verified", report.verified, report.trials);
    if report.failures() > 0 {
        ctx.out.counterexample(&text)
    } else {
        Ok(Outcome::Clean)
    }
}
