use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use rand::seq::index::sample;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::args::{
    AnalyzeCommand, Channel, Cli, Command, CosetCommand, CosetOpts, SimOpts, SysCommand, SysOpts,
};
use crate::io::{emit, join, read_permutation};
use crate::CliError;
use permcode_core::analysis::{
    ball_bounds, lcm_bound_check, min_distance, rate_bounds, weight_count, Metric,
};
use permcode_core::channel::{
    channel_block_with, channel_cayley_with, random_permutation, seeded_rng,
};
use permcode_core::coset::{
    decode, enumerate_codebook, syndrome, CodeParams, LabelingMode, Syndrome,
};
use permcode_core::gfq::smallest_suitable_prime;
use permcode_core::systematic::{decode_systematic, encode_systematic, AuxParams};
use permcode_core::{enumeration_cap, Error, Permutation, Result};

type CliResult = std::result::Result<(), CliError>;

pub fn run(cli: &Cli) -> CliResult {
    let json = cli.json;
    match &cli.command {
        Command::Coset(c) => coset(c, json),
        Command::Sys(c) => sys(c, json),
        Command::Analyze(c) => analyze(c, json),
    }
}

fn coset_params(opts: &CosetOpts) -> Result<CodeParams> {
    // q defaults to the N²−N rule in both labelings, so the published
    // N=10, q=97 vectors decode under the paper labeling
    let q = opts
        .q
        .unwrap_or_else(|| smallest_suitable_prime(opts.n, LabelingMode::Compact));
    let params = match (opts.t, opts.cayley_errors) {
        (_, Some(g)) => CodeParams::for_cayley_errors(opts.n, g, opts.labeling, Some(q))?,
        (Some(t), None) => CodeParams::new(opts.n, t, opts.labeling, Some(q))?,
        (None, None) => unreachable!("clap requires one budget"),
    };
    if !params.labeling().is_injective() {
        eprintln!(
            "warning: paper labeling with q={} < N²−1 is not injective; decoding resolves collisions by search",
            params.q()
        );
    }
    Ok(params)
}

fn coset(cmd: &CosetCommand, json: bool) -> CliResult {
    match cmd {
        CosetCommand::Encode(opts) => {
            let params = coset_params(opts)?;
            let pi = read_permutation()?;
            let alpha = syndrome(&pi, &params)?;
            emit(json, &alpha, || join(alpha.values()));
        }
        CosetCommand::Decode { opts, alpha } => {
            let params = coset_params(opts)?;
            let received = read_permutation()?;
            let pi = decode(&received, &Syndrome(alpha.clone()), &params)?;
            emit(json, &pi, || pi.to_string());
        }
        CosetCommand::Bucket { opts, alpha } => {
            let params = coset_params(opts)?;
            let book = enumerate_codebook(&params, enumeration_cap(8))?;
            match alpha {
                Some(a) => {
                    let members = book
                        .buckets
                        .get(&Syndrome(a.clone()))
                        .cloned()
                        .unwrap_or_default();
                    emit(json, &members, || {
                        members
                            .iter()
                            .map(ToString::to_string)
                            .collect::<Vec<_>>()
                            .join("\n")
                    });
                }
                None => {
                    #[derive(Serialize)]
                    struct Report<'a> {
                        n: usize,
                        t: usize,
                        q: u64,
                        buckets: usize,
                        total: usize,
                        best_syndrome: &'a Syndrome,
                        best_size: usize,
                    }
                    let r = Report {
                        n: params.n(),
                        t: params.t(),
                        q: params.q(),
                        buckets: book.buckets.len(),
                        total: book.total(),
                        best_syndrome: &book.best,
                        best_size: book.best_bucket().len(),
                    };
                    emit(json, &r, || {
                        format!(
                            "buckets      {}\npermutations {}\nlargest      {} (syndrome {})",
                            r.buckets,
                            r.total,
                            r.best_size,
                            join(r.best_syndrome.values())
                        )
                    });
                }
            }
        }
        CosetCommand::Simulate { opts, sim } => {
            let params = coset_params(opts)?;
            let (channel, errors) = channel_and_errors(sim, params.t(), opts.cayley_errors);
            let summary = simulate(
                sim,
                channel,
                errors,
                "coset",
                params.n(),
                params.t(),
                params.q(),
                |rng| {
                    let pi = random_permutation(params.n(), rng);
                    let alpha = syndrome(&pi, &params)?;
                    let received = apply_channel(&pi, channel, errors, rng)?;
                    Ok((pi, decode(&received, &alpha, &params)))
                },
            )?;
            print_summary(json, &summary);
        }
    }
    Ok(())
}

fn sys_params(opts: &SysOpts) -> Result<AuxParams> {
    match (opts.t, opts.cayley_errors) {
        (_, Some(g)) => {
            if !opts.large {
                return Err(Error::Parameter(
                    "the generalized Cayley preset needs N > 112² per error; pass --large to proceed".into(),
                ));
            }
            eprintln!(
                "warning: generalized Cayley preset uses k={} residue blocks; this is slow",
                112 * g
            );
            AuxParams::for_cayley_errors(opts.n, g, opts.labeling, opts.q)
        }
        (Some(t), None) => AuxParams::new(opts.n, t, opts.k, opts.labeling, opts.q),
        (None, None) => unreachable!("clap requires one budget"),
    }
}

fn sys(cmd: &SysCommand, json: bool) -> CliResult {
    match cmd {
        SysCommand::Encode(opts) => {
            let params = sys_params(opts)?;
            let pi = read_permutation()?;
            let sigma = encode_systematic(&pi, &params)?;
            emit(json, &sigma, || sigma.to_string());
        }
        SysCommand::Decode(opts) => {
            let params = sys_params(opts)?;
            let received = read_permutation()?;
            let pi = decode_systematic(&received, &params)?;
            emit(json, &pi, || pi.to_string());
        }
        SysCommand::Simulate { opts, sim } => {
            let params = sys_params(opts)?;
            let (channel, errors) = channel_and_errors(sim, params.t(), opts.cayley_errors);
            let summary = simulate(
                sim,
                channel,
                errors,
                "sys",
                params.n(),
                params.t(),
                params.q(),
                |rng| {
                    let pi = random_permutation(params.n(), rng);
                    let sigma = encode_systematic(&pi, &params)?;
                    let received = apply_channel(&sigma, channel, errors, rng)?;
                    Ok((pi, decode_systematic(&received, &params)))
                },
            )?;
            print_summary(json, &summary);
        }
    }
    Ok(())
}

fn channel_and_errors(sim: &SimOpts, t: usize, cayley_errors: Option<usize>) -> (Channel, usize) {
    let channel = sim.channel.unwrap_or(if cayley_errors.is_some() {
        Channel::Cayley
    } else {
        Channel::Block
    });
    let default = match channel {
        Channel::Block => t,
        Channel::Cayley => cayley_errors.unwrap_or(t / 4).max(1),
    };
    (channel, sim.errors.unwrap_or(default))
}

fn apply_channel(
    pi: &Permutation,
    channel: Channel,
    errors: usize,
    rng: &mut ChaCha8Rng,
) -> Result<Permutation> {
    match channel {
        Channel::Block => channel_block_with(pi, errors, rng),
        Channel::Cayley => channel_cayley_with(pi, errors, rng),
    }
}

#[derive(Debug, Serialize)]
struct Summary {
    code: &'static str,
    n: usize,
    t: usize,
    q: u64,
    seed: u64,
    trials: usize,
    channel: &'static str,
    errors: usize,
    successes: usize,
    /// Failure kind → count; `miscorrection` means a wrong message was
    /// returned without an error.
    failures: BTreeMap<String, usize>,
    wall_time_ms: f64,
}

#[allow(clippy::too_many_arguments)]
fn simulate(
    sim: &SimOpts,
    channel: Channel,
    errors: usize,
    code: &'static str,
    n: usize,
    t: usize,
    q: u64,
    mut trial: impl FnMut(&mut ChaCha8Rng) -> Result<(Permutation, Result<Permutation>)>,
) -> Result<Summary> {
    let start = Instant::now();
    let mut rng = seeded_rng(sim.seed);
    let mut successes = 0;
    let mut failures = BTreeMap::new();
    for _ in 0..sim.trials {
        let (sent, got) = trial(&mut rng)?;
        let kind = match got {
            Ok(p) if p == sent => {
                successes += 1;
                continue;
            }
            Ok(_) => "miscorrection".to_string(),
            Err(Error::Decode(e)) => e.kind().to_string(),
            Err(Error::Internal(_)) => "internal".to_string(),
            Err(e) => return Err(e),
        };
        *failures.entry(kind).or_insert(0) += 1;
    }
    Ok(Summary {
        code,
        n,
        t,
        q,
        seed: sim.seed,
        trials: sim.trials,
        channel: match channel {
            Channel::Block => "block",
            Channel::Cayley => "cayley",
        },
        errors,
        successes,
        failures,
        wall_time_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

fn print_summary(json: bool, s: &Summary) {
    emit(json, s, || {
        let mut out = format!(
            "code       {} (N={}, t={}, q={})\nseed       {}\nchannel    {} x{}\nsuccesses  {}/{}\n",
            s.code, s.n, s.t, s.q, s.seed, s.channel, s.errors, s.successes, s.trials
        );
        for (kind, count) in &s.failures {
            out.push_str(&format!("failure    {kind}: {count}\n"));
        }
        out.push_str(&format!("wall time  {:.1} ms", s.wall_time_ms));
        out
    });
}

fn analyze(cmd: &AnalyzeCommand, json: bool) -> CliResult {
    match cmd {
        AnalyzeCommand::Ball { n, t, metric } => {
            let r = ball_bounds(*n, *t, *metric, enumeration_cap(7))?;
            if !r.guaranteed {
                eprintln!("warning: bounds not guaranteed for t={t} at N={n}");
            }
            emit(json, &r, || {
                let exact = r
                    .exact
                    .as_ref()
                    .map_or("-".to_string(), ToString::to_string);
                format!(
                    "metric  N    t    lower  exact  upper\n{:<7} {:<4} {:<4} {:<6} {:<6} {}",
                    r.metric, r.n, r.t, r.lower, exact, r.upper
                )
            });
        }
        AnalyzeCommand::Rate { n, t, metric } => {
            let r = rate_bounds(*n, *t, *metric)?;
            emit(json, &r, || {
                format!(
                    "metric  N     t    lower      upper      c\n{:<7} {:<5} {:<4} {:<10.6} {:<10.6} {:.6}\nlog2 N! = {:.6} in ({:.6}, {:.6})",
                    r.metric, r.n, r.t, r.lower, r.upper, r.c, r.log_factorial, r.stirling_lower, r.stirling_upper()
                )
            });
        }
        AnalyzeCommand::Fm { n, m } => {
            let ms: Vec<usize> = match m {
                Some(m) => vec![*m],
                None => (0..*n).collect(),
            };
            let rows: Vec<(usize, String)> = ms
                .iter()
                .map(|&m| weight_count(*n, m).map(|f| (m, f.to_string())))
                .collect::<Result<_>>()?;
            let table: BTreeMap<String, &String> =
                rows.iter().map(|(m, f)| (m.to_string(), f)).collect();
            emit(json, &table, || {
                let mut out = "m    F(m)".to_string();
                for (m, f) in &rows {
                    out.push_str(&format!("\n{m:<4} {f}"));
                }
                out
            });
        }
        AnalyzeCommand::Lcm {
            n,
            k,
            y,
            samples,
            seed,
        } => {
            let subsets: Vec<BTreeSet<usize>> = match y {
                Some(y) => vec![y.iter().copied().collect()],
                None => {
                    let mut rng = seeded_rng(*seed);
                    (0..*samples)
                        .map(|_| {
                            let m = rng.gen_range(0..=*k);
                            sample(&mut rng, *k, m).into_iter().map(|i| i + 1).collect()
                        })
                        .collect()
                }
            };
            #[derive(Serialize)]
            struct Row {
                y: Vec<usize>,
                #[serde(flatten)]
                check: permcode_core::analysis::LcmCheck,
            }
            let rows: Vec<Row> = subsets
                .into_iter()
                .map(|y| {
                    lcm_bound_check(*n, *k, &y).map(|check| Row {
                        y: y.into_iter().collect(),
                        check,
                    })
                })
                .collect::<Result<_>>()?;
            let holds = rows.iter().filter(|r| r.check.holds).count();
            emit(json, &rows, || {
                let mut out = String::from("|Y|  2|Y|-k  holds  LCM");
                for r in &rows {
                    out.push_str(&format!(
                        "\n{:<4} {:<6} {:<6} {}",
                        r.y.len(),
                        r.check.exponent,
                        r.check.holds,
                        r.check.lcm
                    ));
                }
                out.push_str(&format!("\n{holds}/{} hold", rows.len()));
                out
            });
        }
        AnalyzeCommand::Mindist { opts, metric } => {
            let params = coset_params(opts)?;
            let book = enumerate_codebook(&params, enumeration_cap(8))?;
            let mut overall: Option<usize> = None;
            for bucket in book.buckets.values().filter(|b| b.len() >= 2) {
                let d = min_distance(bucket, *metric)?;
                overall = Some(overall.map_or(d, |o| o.min(d)));
            }
            #[derive(Serialize)]
            struct Report {
                n: usize,
                t: usize,
                q: u64,
                metric: Metric,
                buckets: usize,
                min_distance: Option<usize>,
                required: Option<usize>,
            }
            let r = Report {
                n: params.n(),
                t: params.t(),
                q: params.q(),
                metric: *metric,
                buckets: book.buckets.len(),
                min_distance: overall,
                required: match metric {
                    Metric::Block => Some(2 * params.t() + 1),
                    Metric::Cayley => opts.cayley_errors.map(|g| 2 * g + 1),
                },
            };
            emit(json, &r, || {
                format!(
                    "buckets {}\nminimum in-bucket {} distance {}{}",
                    r.buckets,
                    r.metric,
                    r.min_distance.map_or("-".into(), |d| d.to_string()),
                    r.required
                        .map_or(String::new(), |d| format!(" (need ≥ {d})"))
                )
            });
        }
    }
    Ok(())
}
