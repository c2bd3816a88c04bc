//! Implementations of the five subcommands.

use std::fs;
use std::path::Path;
use std::process::ExitCode;

use serde::Serialize;

use hyperwalk::fock::ModeOccupation;
use hyperwalk::interference::full_distribution;
use hyperwalk::stats::StatKind;
use hyperwalk::supplaw::{classify, ratio_approx, ratio_exact, verify, Classification};
use hyperwalk::symmetry::{group_rank, partition, SymmetrySet};
use hyperwalk::unitary::{build_generalized, BuilderRegistry, ComplexMatrix, MatrixFile};

use crate::output::{csv_quote, fmt_probability, write_output, OutFormat};
use crate::{CliError, Figure4Args, PredictArgs, RatioArgs, UnitaryArgs, VerifyArgs};

fn usage<T>(message: impl Into<String>) -> Result<T, CliError> {
    Err(CliError::Usage(message.into()))
}

pub fn unitary(args: &UnitaryArgs) -> Result<ExitCode, CliError> {
    let spec = args.graph.spec()?;
    let matrix = if spec.subgraph_modes() == 1 {
        let registry = BuilderRegistry::builtin();
        let method = args.method.as_deref().unwrap_or("tensor");
        let builder = registry.get(method).ok_or_else(|| {
            CliError::Usage(format!(
                "unknown construction method {:?}; available: {}",
                method,
                registry.names().join(", ")
            ))
        })?;
        builder.build(spec.hc_dimension())?
    } else {
        if args.method.is_some() {
            return usage("--method applies only to the bare hypercube (--m 1)");
        }
        build_generalized(&spec)?
    };
    let residual = matrix.unitarity_residual();
    let file = MatrixFile::built(&matrix, spec.hc_dimension(), spec.subgraph_modes());
    let json = serde_json::to_string_pretty(&file).map_err(|source| CliError::Json {
        context: "serializing unitary".into(),
        source,
    })?;
    let report = format!(
        "{}x{} unitary, residual max|U^H U - I| = {:.3e}",
        matrix.rows(),
        matrix.cols(),
        residual
    );
    match &args.out {
        Some(path) => {
            write_io(&json, Some(path))?;
            println!("{} -> {}", report, path.display());
        }
        None => {
            write_io(&json, None)?;
            eprintln!("{}", report);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn write_io(text: &str, out: Option<&Path>) -> Result<(), CliError> {
    write_output(text, out).map_err(|source| CliError::Io {
        context: match out {
            Some(path) => format!("writing {}", path.display()),
            None => "writing stdout".into(),
        },
        source,
    })
}

#[derive(Serialize)]
struct PredictReport {
    initial: ModeOccupation,
    statistics: String,
    eta: u32,
    invariance_group: Vec<SymmetrySet>,
    law_applicable: bool,
    records: Vec<PredictRecord>,
}

#[derive(Serialize)]
struct PredictRecord {
    final_state: ModeOccupation,
    #[serde(skip_serializing_if = "Option::is_none")]
    probability: Option<f64>,
    suppressed_predicted: bool,
    /// First suppressing symmetry set, or `None` when allowed everywhere.
    classification_set: Option<SymmetrySet>,
}

pub fn predict(args: &PredictArgs) -> Result<ExitCode, CliError> {
    let spec = args.graph.spec()?;
    let statistics: StatKind = args.stats.parse()?;
    let initial: ModeOccupation = args.initial.parse()?;
    let mut classification = classify(&initial, &spec, statistics)?;

    if let Some(sym) = &args.sym {
        let set: SymmetrySet = sym.parse()?;
        if !classification.invariance_group.contains(&set) {
            return usage(format!(
                "initial state {} is not invariant under the symmetry set ({})",
                initial, set
            ));
        }
        restrict_to(&mut classification, set);
    }

    let probabilities = if args.probs {
        let unitary = build_generalized(&spec)?;
        Some(full_distribution(&unitary, &initial, statistics)?)
    } else {
        None
    };

    let records: Vec<PredictRecord> = classification
        .records
        .iter()
        .enumerate()
        .map(|(idx, record)| PredictRecord {
            final_state: record.final_state.clone(),
            probability: probabilities.as_ref().map(|dist| dist[idx].1),
            suppressed_predicted: record.any_suppressed,
            classification_set: record.classification,
        })
        .collect();
    let report = PredictReport {
        initial,
        statistics: statistics.to_string(),
        eta: classification.eta,
        invariance_group: classification.invariance_group.clone(),
        law_applicable: classification.law_applicable,
        records,
    };

    let text = match args.format {
        OutFormat::Json => to_json(&report)?,
        OutFormat::Csv => predict_csv(&report),
    };
    write_io(&text, args.out.as_deref())?;
    Ok(ExitCode::SUCCESS)
}

fn restrict_to(classification: &mut Classification, set: SymmetrySet) {
    classification.invariance_group = vec![set];
    classification.eta = group_rank(&[set]);
    for record in &mut classification.records {
        record.verdicts.retain(|entry| entry.symmetry == set);
        record.classification = record
            .verdicts
            .iter()
            .find(|entry| entry.verdict.is_suppressed())
            .map(|entry| entry.symmetry);
        record.any_suppressed = record.classification.is_some();
    }
}

fn group_header(sets: &[SymmetrySet]) -> String {
    if sets.is_empty() {
        "none".into()
    } else {
        sets.iter()
            .map(|s| format!("({})", s))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

fn predict_csv(report: &PredictReport) -> String {
    let mut text = String::new();
    text.push_str(&format!("# initial = {}\n", report.initial));
    text.push_str(&format!("# statistics = {}\n", report.statistics));
    text.push_str(&format!("# eta = {}\n", report.eta));
    text.push_str(&format!(
        "# invariance_group = {}\n",
        group_header(&report.invariance_group)
    ));
    text.push_str(&format!("# law_applicable = {}\n", report.law_applicable));
    let with_probability = report
        .records
        .first()
        .is_some_and(|r| r.probability.is_some());
    if with_probability {
        text.push_str("final_state,probability,suppressed_predicted,classification_set\n");
    } else {
        text.push_str("final_state,suppressed_predicted,classification_set\n");
    }
    for record in &report.records {
        let classification = match (&record.classification_set, report.law_applicable) {
            (Some(set), _) => csv_quote(&set.to_string()),
            (None, true) => "unsuppressed".into(),
            (None, false) => "inapplicable".into(),
        };
        let state = csv_quote(&record.final_state.to_string());
        match record.probability {
            Some(p) => text.push_str(&format!(
                "{},{},{},{}\n",
                state,
                fmt_probability(p),
                record.suppressed_predicted,
                classification
            )),
            None => text.push_str(&format!(
                "{},{},{}\n",
                state, record.suppressed_predicted, classification
            )),
        }
    }
    text
}

pub fn verify_cmd(args: &VerifyArgs) -> Result<ExitCode, CliError> {
    let spec = args.graph.spec()?;
    let statistics: StatKind = args.stats.parse()?;
    let initial: ModeOccupation = args.initial.parse()?;
    let tolerance = validated_tolerance(args.tol)?;
    let report = verify(&initial, &spec, statistics, tolerance)?;
    let text = to_json(&report)?;
    write_io(&text, args.out.as_deref())?;
    if args.out.is_some() || !report.pass {
        eprintln!(
            "verify: {} ({} predicted-suppressed of {} finals, max predicted probability {})",
            if report.pass { "PASS" } else { "FAIL" },
            report.predicted_suppressed_count,
            report.total_finals,
            report
                .max_predicted_probability
                .map(|p| format!("{:.3e}", p))
                .unwrap_or_else(|| "n/a".into()),
        );
    }
    Ok(if report.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    })
}

fn validated_tolerance(tol: f64) -> Result<f64, CliError> {
    if !(tol > 0.0 && tol <= 1e-4) {
        return usage(format!("tolerance must lie in (0, 1e-4], got {:e}", tol));
    }
    Ok(tol)
}

fn to_json<T: Serialize>(value: &T) -> Result<String, CliError> {
    serde_json::to_string_pretty(value)
        .map(|mut s| {
            s.push('\n');
            s
        })
        .map_err(|source| CliError::Json {
            context: "serializing report".into(),
            source,
        })
}

/// The frozen reproduction scenario: eight bosons on the three-dimensional
/// hypercube, three symmetric initial states, final states grouped by the
/// first partitioning that suppresses them with precedence
/// (2,8) > {2 or 8} > 4.
pub fn figure4(args: &Figure4Args) -> Result<ExitCode, CliError> {
    let tolerance = validated_tolerance(args.tol)?;
    let spec = hyperwalk::unitary::HypercubeSpec::bare(3)?;
    let unitary = hyperwalk::unitary::build_tensor(3)?;
    let initials = [
        ("ra", ModeOccupation::new(vec![3, 0, 1, 0, 0, 3, 0, 1])),
        ("rb", ModeOccupation::new(vec![0, 0, 2, 2, 0, 0, 2, 2])),
        ("rc", ModeOccupation::uniform(8)),
    ];

    let labelings = [
        partition(&SymmetrySet::from_segmentations(&[2, 8]).unwrap(), 8)?,
        partition(&SymmetrySet::from_segmentations(&[2]).unwrap(), 8)?,
        partition(&SymmetrySet::from_segmentations(&[8]).unwrap(), 8)?,
        partition(&SymmetrySet::from_segmentations(&[4]).unwrap(), 8)?,
    ];
    let set_label = |state: &ModeOccupation| -> char {
        let odd = |idx: usize| labelings[idx].minus_count(state) % 2 == 1;
        if odd(0) {
            'a'
        } else if odd(1) || odd(2) {
            'b'
        } else if odd(3) {
            'c'
        } else {
            'd'
        }
    };

    fs::create_dir_all(&args.out_dir).map_err(|source| CliError::Io {
        context: format!("creating {}", args.out_dir.display()),
        source,
    })?;

    let mut finals: Vec<ModeOccupation> = Vec::new();
    let mut set_sizes = [0u64; 4];
    let mut max_per_set: Vec<[f64; 4]> = vec![[0.0; 4]; initials.len()];

    for (run, (tag, initial)) in initials.iter().enumerate() {
        let classification = classify(initial, &spec, StatKind::Boson)?;
        let distribution = full_distribution(&unitary, initial, StatKind::Boson)?;
        let mut text = String::new();
        text.push_str(&format!("# initial = {}\n", initial));
        text.push_str("# statistics = boson\n");
        text.push_str(&format!("# eta = {}\n", classification.eta));
        text.push_str(&format!(
            "# invariance_group = {}\n",
            group_header(&classification.invariance_group)
        ));
        text.push_str("final_state,probability,suppressed_predicted,suppressed_observed,set\n");
        for (record, (final_state, p)) in classification.records.iter().zip(distribution.iter()) {
            let label = set_label(final_state);
            let set_index = (label as u8 - b'a') as usize;
            if run == 0 {
                finals.push(final_state.clone());
                set_sizes[set_index] += 1;
            }
            max_per_set[run][set_index] = max_per_set[run][set_index].max(*p);
            text.push_str(&format!(
                "{},{},{},{},{}\n",
                csv_quote(&final_state.to_string()),
                fmt_probability(*p),
                record.any_suppressed,
                *p < tolerance,
                label
            ));
        }
        let path = args.out_dir.join(format!("figure4_{}.csv", tag));
        write_io(&text, Some(&path))?;
    }

    let mut sets_text = String::from("final_state,set\n");
    for final_state in &finals {
        sets_text.push_str(&format!(
            "{},{}\n",
            csv_quote(&final_state.to_string()),
            set_label(final_state)
        ));
    }
    write_io(&sets_text, Some(&args.out_dir.join("figure4_sets.csv")))?;

    let mut summary =
        String::from("set,size,max_probability_ra,max_probability_rb,max_probability_rc\n");
    for (idx, label) in ['a', 'b', 'c', 'd'].into_iter().enumerate() {
        summary.push_str(&format!(
            "{},{},{},{},{}\n",
            label,
            set_sizes[idx],
            fmt_probability(max_per_set[0][idx]),
            fmt_probability(max_per_set[1][idx]),
            fmt_probability(max_per_set[2][idx]),
        ));
        println!(
            "set ({}): {} states, max probability ra/rb/rc = {:.3e} / {:.3e} / {:.3e}",
            label, set_sizes[idx], max_per_set[0][idx], max_per_set[1][idx], max_per_set[2][idx],
        );
    }
    write_io(&summary, Some(&args.out_dir.join("figure4_summary.csv")))?;
    println!(
        "wrote figure4_ra.csv, figure4_rb.csv, figure4_rc.csv, figure4_sets.csv, figure4_summary.csv to {}",
        args.out_dir.display()
    );
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct RatioRow {
    statistics: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    eta: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    particles: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    modes: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    initial: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    ratio: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    limit: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    exact_suppressed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    exact_total: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    exact_ratio: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

impl RatioRow {
    fn empty(statistics: String) -> Self {
        Self {
            statistics,
            eta: None,
            particles: None,
            modes: None,
            initial: None,
            ratio: None,
            limit: None,
            exact_suppressed: None,
            exact_total: None,
            exact_ratio: None,
            error: None,
        }
    }
}

fn approx_row(
    statistics: StatKind,
    eta: u32,
    particles: Option<u32>,
    modes: Option<usize>,
) -> RatioRow {
    let mut row = RatioRow::empty(statistics.to_string());
    row.eta = Some(eta);
    row.particles = particles;
    row.modes = modes;
    match ratio_approx(eta, statistics, particles, modes) {
        Ok(approx) => {
            row.ratio = Some(approx.ratio);
            row.limit = approx.limit;
        }
        Err(err) => row.error = Some(err.to_string()),
    }
    row
}

pub fn ratio(args: &RatioArgs) -> Result<ExitCode, CliError> {
    let rows: Vec<RatioRow> = if let Some(preset) = &args.preset {
        if preset != "fig3" {
            return usage(format!("unknown preset {:?}; available: fig3", preset));
        }
        if args.stats.is_some() || args.eta.is_some() || args.initial.is_some() {
            return usage("--preset replaces the explicit grid flags");
        }
        // Bosons by symmetry count; fermions in the large-lattice limit
        // for 4, 16 and 64 particles, up to the particle-number bound on
        // the symmetry count.
        let mut rows = Vec::new();
        for eta in 1..=6u32 {
            rows.push(approx_row(StatKind::Boson, eta, None, None));
        }
        for particles in [4u32, 16, 64] {
            let max_eta = particles.ilog2();
            for eta in 1..=max_eta {
                rows.push(approx_row(StatKind::Fermion, eta, Some(particles), None));
            }
        }
        rows
    } else if let Some(initial_text) = &args.initial {
        let statistics: StatKind = required_stats(&args.stats)?;
        let graph = crate::GraphArgs::assemble(
            args.d,
            args.m,
            args.sub.clone(),
            args.random_sub,
            args.seed,
        )?
        .spec()?;
        let initial: ModeOccupation = initial_text.parse()?;
        let report = ratio_exact(&initial, &graph, statistics)?;
        let mut row = RatioRow::empty(statistics.to_string());
        row.eta = Some(report.eta);
        row.particles = Some(initial.particles());
        row.modes = Some(graph.modes());
        row.initial = Some(initial.to_string());
        row.ratio = report.approx_ratio;
        row.limit = report.limit_ratio;
        row.exact_suppressed = Some(report.exact_suppressed);
        row.exact_total = Some(report.exact_total);
        row.exact_ratio = Some(report.exact_ratio);
        vec![row]
    } else {
        let statistics: StatKind = required_stats(&args.stats)?;
        let etas = parse_eta_list(args.eta.as_deref().unwrap_or("1"))?;
        etas.into_iter()
            .map(|eta| approx_row(statistics, eta, args.particles, args.modes))
            .collect()
    };

    let text = match args.format {
        OutFormat::Json => to_json(&rows)?,
        OutFormat::Csv => ratio_csv(&rows),
    };
    write_io(&text, args.out.as_deref())?;
    Ok(ExitCode::SUCCESS)
}

fn required_stats(stats: &Option<String>) -> Result<StatKind, CliError> {
    stats
        .as_deref()
        .ok_or_else(|| CliError::Usage("--stats is required without --preset".into()))?
        .parse()
        .map_err(CliError::Lib)
}

fn parse_eta_list(text: &str) -> Result<Vec<u32>, CliError> {
    text.split(',')
        .map(|tok| {
            tok.trim()
                .parse::<u32>()
                .map_err(|_| CliError::Usage(format!("bad symmetry count {:?} in --eta", tok)))
        })
        .collect()
}

fn ratio_csv(rows: &[RatioRow]) -> String {
    let mut text = String::from(
        "statistics,eta,particles,modes,initial,ratio,limit,exact_suppressed,exact_total,exact_ratio,error\n",
    );
    let opt = |v: Option<String>| v.unwrap_or_default();
    for row in rows {
        text.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{}\n",
            row.statistics,
            opt(row.eta.map(|v| v.to_string())),
            opt(row.particles.map(|v| v.to_string())),
            opt(row.modes.map(|v| v.to_string())),
            opt(row.initial.as_ref().map(|v| csv_quote(v))),
            opt(row.ratio.map(fmt_probability)),
            opt(row.limit.map(fmt_probability)),
            opt(row.exact_suppressed.map(|v| v.to_string())),
            opt(row.exact_total.map(|v| v.to_string())),
            opt(row.exact_ratio.map(fmt_probability)),
            opt(row.error.as_ref().map(|v| csv_quote(v))),
        ));
    }
    text
}

/// Load and validate a subunitary matrix file.
pub fn load_subunitary(path: &Path, expected_modes: usize) -> Result<ComplexMatrix, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        context: format!("reading {}", path.display()),
        source,
    })?;
    let file: MatrixFile = serde_json::from_str(&text).map_err(|source| CliError::Json {
        context: format!("parsing {}", path.display()),
        source,
    })?;
    if file.m != expected_modes {
        return usage(format!(
            "{} declares m = {} but --m is {}",
            path.display(),
            file.m,
            expected_modes
        ));
    }
    Ok(file.to_matrix()?)
}
