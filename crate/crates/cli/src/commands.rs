use std::fs;
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context, Result};
use mlc_core::analysis::{
    generate_instances, load_corpus, rendering_fixtures, run_benchmark, BenchmarkConfig, PositionStats, PositionTally,
    HELD_KARP_MAX_N,
};
use mlc_core::candidates::{build_candidate_lists, build_promising_list, effective_k};
use mlc_core::cnn::Architecture;
use mlc_core::fragments::PartialSolution;
use mlc_core::instance::{parse_tour, parse_tsplib, percentage_error, read_optima_table, write_tour};
use mlc_core::render::{render_context, OfflineReplay, RenderConfig};
use mlc_core::solve::{parse_policies, Policy, PolicyInputs, SolveOptions, Solver};
use mlc_core::{Error, Instance, ResNet10, Tour};

use crate::{BenchmarkArgs, ConstructArgs, FixturesArgs, GenArgs, ImageFormat, InitWeightsArgs, RenderArgs, SolveArgs, StatsArgs};

/// Process exit status for an error chain.
pub fn exit_code(e: &anyhow::Error) -> u8 {
    for cause in e.chain() {
        if let Some(err) = cause.downcast_ref::<Error>() {
            return match err {
                Error::MissingWeights | Error::MissingOptimalTour => 3,
                Error::Infeasible(..) | Error::Incomplete(_) => 4,
                Error::Io(_) => 1,
                _ => 2,
            };
        }
    }
    1
}

fn read_instance(path: &Path) -> Result<Instance> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    parse_tsplib(&text).with_context(|| format!("parsing {}", path.display()))
}

fn read_tour(inst: &Instance, path: &Path) -> Result<Tour<f64>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let order = parse_tour(&text).with_context(|| format!("parsing {}", path.display()))?;
    Tour::new(inst, order).with_context(|| format!("{} does not fit {}", path.display(), inst.name()))
}

fn load_weights(path: Option<&Path>) -> Result<ResNet10> {
    let Some(path) = path else {
        return Err(Error::MissingWeights).context("pass --weights or set MLC_WEIGHTS");
    };
    if !path.exists() {
        return Err(Error::MissingWeights).with_context(|| format!("{} does not exist", path.display()));
    }
    ResNet10::load(path).with_context(|| format!("loading {}", path.display()))
}

fn solve_options(c: &ConstructArgs, nn_start: usize) -> SolveOptions {
    SolveOptions {
        k: c.k,
        m: c.m,
        threshold: c.threshold,
        seed: c.seed,
        empirical_runs: c.runs,
        nn_start,
        ..SolveOptions::default()
    }
}

fn optional_network(policies: &[Policy], c: &ConstructArgs) -> Result<Option<ResNet10>> {
    if !policies.iter().any(|p| p.needs_weights()) {
        return Ok(None);
    }
    match &c.weights {
        Some(p) => load_weights(Some(p)).map(Some),
        None => {
            eprintln!("warning: no weights given, ml-c cells stay empty");
            Ok(None)
        }
    }
}

fn output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(fs::File::create(p).with_context(|| format!("creating {}", p.display()))?)),
        None => Box::new(std::io::stdout().lock()),
    })
}

fn lookup_optimum(a: &SolveArgs, inst: &Instance) -> Result<Option<f64>> {
    if a.optimum.is_some() {
        return Ok(a.optimum);
    }
    let table = match &a.optima {
        Some(p) => Some(p.clone()),
        None => a
            .instance
            .parent()
            .map(|d| d.join("optima.jsonl"))
            .filter(|p| p.exists()),
    };
    if let Some(p) = table {
        let f = fs::File::open(&p).with_context(|| format!("reading {}", p.display()))?;
        return Ok(read_optima_table(BufReader::new(f))?.get(inst.name()).copied());
    }
    Ok(None)
}

pub fn solve(a: SolveArgs) -> Result<()> {
    let inst = read_instance(&a.instance)?;
    let opt_tour = a.opt_tour.as_deref().map(|p| read_tour(&inst, p)).transpose()?;
    if a.policy.needs_optimal_tour() && opt_tour.is_none() {
        return Err(Error::MissingOptimalTour).context("pass --opt-tour for ml-sc");
    }
    let network = if a.policy.needs_weights() {
        Some(load_weights(a.construct.weights.as_deref())?)
    } else {
        None
    };
    let optimum = lookup_optimum(&a, &inst)?.or(opt_tour.as_ref().map(Tour::length));
    let solver = Solver::new(&inst, solve_options(&a.construct, a.nn_start))?;
    let optimal = opt_tour.as_ref().map(Tour::edge_set);
    let started = Instant::now();
    let sol = solver.solve(
        a.policy,
        PolicyInputs {
            optimal: optimal.as_ref(),
            network: network.as_ref(),
        },
    )?;
    let seconds = started.elapsed().as_secs_f64();

    let out = a
        .out
        .clone()
        .unwrap_or_else(|| PathBuf::from(format!("{}.{}.tour", inst.name(), a.policy.name())));
    let comment = format!("{} tour, length {}", a.policy.name(), sol.tour.length());
    fs::write(&out, write_tour(inst.name(), &comment, sol.tour.order()))
        .with_context(|| format!("writing {}", out.display()))?;

    println!("instance {}", inst.name());
    println!("n {}", inst.n());
    println!("policy {}", a.policy.name());
    println!("length {}", sol.tour.length());
    if let Some(opt) = optimum {
        println!("gap {:.3}", percentage_error(sol.tour.length(), opt)?);
        if !sol.run_lengths.is_empty() {
            let gaps = sol
                .run_lengths
                .iter()
                .map(|&l| percentage_error(l, opt))
                .collect::<mlc_core::Result<Vec<_>>>()?;
            let mean = gaps.iter().sum::<f64>() / gaps.len() as f64;
            let best = gaps.iter().copied().fold(f64::INFINITY, f64::min);
            println!("runs {} mean_gap {mean:.3} best_gap {best:.3}", gaps.len());
        }
    }
    println!("seconds {seconds:.4}");
    println!("tour {}", out.display());
    Ok(())
}

pub fn benchmark(a: BenchmarkArgs) -> Result<()> {
    let corpus = load_corpus(&a.manifest).with_context(|| format!("loading {}", a.manifest.display()))?;
    for (name, why) in &corpus.skipped {
        eprintln!("skipping {name}: {why}");
    }
    if corpus.instances.is_empty() {
        bail!(Error::InvalidParameter(format!("no instances available from {}", a.manifest.display())));
    }
    let policies = parse_policies(&a.policies)?;
    let network = optional_network(&policies, &a.construct)?;
    let cfg = BenchmarkConfig {
        policies,
        solve: solve_options(&a.construct, 0),
        jobs: a.jobs,
    };
    let report = run_benchmark(&corpus.instances, &cfg, network.as_ref())?;
    report.write_gap_csv(output(a.out.as_deref())?)?;
    if let Some(p) = &a.times {
        report.write_time_csv(output(Some(p))?)?;
    }
    if let Some(p) = &a.json {
        report.write_json(output(Some(p))?)?;
    }
    for s in &report.summary {
        eprintln!(
            "{:<6} instances {:>3}  mean {:>8.3}  std {:>7.3}  best {:>3}  seconds {:.2}",
            s.policy, s.instances, s.mean, s.std, s.best_count, s.seconds
        );
    }
    Ok(())
}

pub fn stats(a: StatsArgs) -> Result<()> {
    let corpus = load_corpus(&a.manifest).with_context(|| format!("loading {}", a.manifest.display()))?;
    let policies = parse_policies(&a.policies)?;
    let network = optional_network(&policies, &a.construct)?;
    let mut tallies = vec![PositionTally::new(); policies.len()];
    let mut used = 0;
    for b in &corpus.instances {
        let Some(optimal) = b.optimal_edges() else {
            eprintln!("skipping {}: no optimal tour", b.instance.name());
            continue;
        };
        let solver = Solver::new(&b.instance, solve_options(&a.construct, 0))?;
        let cls = build_candidate_lists(solver.matrix(), b.instance.n() - 1)?;
        let inputs = PolicyInputs {
            optimal: Some(&optimal),
            network: network.as_ref(),
        };
        for (tally, &p) in tallies.iter_mut().zip(&policies) {
            let tour = solver.solve(p, inputs)?.tour;
            tally.add(&cls, &optimal, &tour.edge_set());
        }
        used += 1;
    }
    if used == 0 {
        bail!(Error::InvalidParameter("no instance in the manifest has an optimal tour".into()));
    }
    let mut w = output(a.out.as_deref())?;
    writeln!(w, "{}", PositionStats::CSV_HEADER)?;
    for (tally, p) in tallies.iter().zip(&policies) {
        tally.finish().write_csv(p.name(), &mut w)?;
    }
    w.flush()?;
    Ok(())
}

pub fn generate(a: GenArgs) -> Result<()> {
    let (n_min, n_max) = a.n.map_or((a.n_min, a.n_max), |n| (n, n));
    if a.exact && n_max > HELD_KARP_MAX_N {
        bail!(Error::InvalidParameter(format!(
            "--exact needs n <= {HELD_KARP_MAX_N}; use --tours for reference tours on larger instances"
        )));
    }
    let mut data = generate_instances(a.count, n_min, n_max, a.seed)?;
    if a.exact || a.tours {
        data = data.with_tours()?;
    }
    data.write_dir(&a.out).with_context(|| format!("writing {}", a.out.display()))?;
    let exact = data.tours.iter().filter(|t| t.exact).count();
    println!(
        "wrote {} instances, {} optimal and {} reference tours to {}",
        data.instances.len(),
        exact,
        data.tours.len() - exact,
        a.out.display()
    );
    Ok(())
}

pub fn render(a: RenderArgs) -> Result<()> {
    let inst = read_instance(&a.instance)?;
    let (i, j) = a.edge;
    let cls = build_candidate_lists(&inst, effective_k(a.k, inst.n()))?;
    let cfg = RenderConfig::default();
    let img = match &a.opt_tour {
        Some(p) => {
            let optimal = read_tour(&inst, p)?.edge_set();
            let lp = build_promising_list(&cls, a.m)?;
            let key = (i.min(j), i.max(j));
            let index = lp
                .entries()
                .iter()
                .position(|e| e.key() == key)
                .ok_or_else(|| Error::InvalidParameter(format!("edge ({i}, {j}) is not in the promising list")))?;
            render_context(inst.coords(), &cls, &OfflineReplay::new(&lp, &optimal, index), i, j, &cfg)?
        }
        None => render_context(inst.coords(), &cls, &PartialSolution::new(inst.n()), i, j, &cfg)?,
    };
    let mut w = BufWriter::new(fs::File::create(&a.out).with_context(|| format!("creating {}", a.out.display()))?);
    match a.format {
        ImageFormat::Blob => w.write_all(&img.to_blob())?,
        ImageFormat::Ppm => img.write_ppm(&mut w)?,
    }
    w.flush()?;
    println!("wrote {}x{}x3 image of edge ({i}, {j}) to {}", img.size(), img.size(), a.out.display());
    Ok(())
}

pub fn fixtures(a: FixturesArgs) -> Result<()> {
    let set = rendering_fixtures(a.seed)?;
    set.write_dir(&a.out).with_context(|| format!("writing {}", a.out.display()))?;
    println!("wrote {} fixture images to {}", set.images.len(), a.out.display());
    Ok(())
}

pub fn init_weights(a: InitWeightsArgs) -> Result<()> {
    let net = ResNet10::random(Architecture::resnet10().with_stem_width(a.stem_width), a.seed)?;
    let mut bundle = net.to_bundle();
    if let Some(text) = &a.meta {
        bundle.set_meta(text);
    }
    bundle.write(&a.out).with_context(|| format!("writing {}", a.out.display()))?;
    println!("wrote {} records to {}", bundle.records().len(), a.out.display());
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn error_kinds_map_to_exit_codes() {
        let code = |e: Error| exit_code(&anyhow::Error::new(e).context("while testing"));
        assert_eq!(code(Error::MissingWeights), 3);
        assert_eq!(code(Error::MissingOptimalTour), 3);
        assert_eq!(code(Error::Infeasible(1, 2)), 4);
        assert_eq!(code(Error::Incomplete("3 of 5 edges".into())), 4);
        assert_eq!(code(Error::MissingDimension), 2);
        assert_eq!(code(Error::UnknownPolicy("x".into())), 2);
        assert_eq!(code(Error::Io(std::io::Error::other("disk"))), 1);
        assert_eq!(exit_code(&anyhow::anyhow!("plain")), 1);
    }
}
