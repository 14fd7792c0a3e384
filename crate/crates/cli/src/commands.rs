//! Command implementations. Each returns the text to print and whether every
//! invariant held; `main` turns that into an exit status.

use std::time::Instant;

use clap::ValueEnum;
use gelfand_core::combinatorics::ParsePartitionError;
use gelfand_core::config::DEFAULT_SEED;
use gelfand_core::hecke::verify_double_cosets;
use gelfand_core::{
    conjugacy_classes, decompose_induced_trivial, double_cosets, extensions,
    induced_trivial_prediction, is_gelfand_hecke, structure_constants, BranchingPrediction,
    CharacterTable, ChartabOptions, FiniteGroup, GroupError, Limits, Partition,
};
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::cache::TableCache;
use crate::report::{
    scan_table, BranchReport, CharacterVerdict, GroupReport, HeckeReport, PairReport,
    PartitionsReport, PredictionReport, ScanSummary, Timings, Witness, SCHEMA_VERSION,
};
use crate::spec::{GroupSpecAst, PairSpec, SpecError};

/// Character tables beyond this order are skipped by `--method both`.
pub const DEFAULT_CHARTAB_ORDER_LIMIT: usize = 20_000;

/// Largest rank for which `--show-constants` prints the full table.
pub const SHOW_CONSTANTS_MAX_RANK: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Hecke,
    Character,
    Both,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Machine,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Spec(#[from] SpecError),
    #[error(transparent)]
    Partition(#[from] ParsePartitionError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("cannot serialize record: {0}")]
    Json(#[from] serde_json::Error),
}

/// Settings shared by all commands.
#[derive(Debug, Clone)]
pub struct Context {
    pub size_budget: usize,
    pub chartab: ChartabOptions,
    pub cache: TableCache,
    pub timings: bool,
}

impl Default for Context {
    fn default() -> Self {
        Context::new(
            Limits::default().size_budget,
            DEFAULT_SEED,
            TableCache::disabled(),
        )
    }
}

impl Context {
    pub fn new(size_budget: usize, seed: u64, cache: TableCache) -> Self {
        let limits = Limits {
            size_budget,
            chartab_order_limit: DEFAULT_CHARTAB_ORDER_LIMIT,
            ..Limits::default()
        };
        Context {
            size_budget,
            chartab: ChartabOptions {
                limits,
                seed,
                ..ChartabOptions::default()
            },
            cache,
            timings: false,
        }
    }

    fn table(&self, group: &FiniteGroup) -> Result<CharacterTable, GroupError> {
        self.cache
            .character_table(group, &self.chartab)
            .map(|(t, status)| {
                log::debug!("character table {}: {status:?}", group.descriptor());
                t
            })
    }
}

/// Text to print plus the exit verdict.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Output {
    pub text: String,
    pub ok: bool,
}

fn render<T: Serialize>(
    format: Format,
    record: &T,
    table: impl FnOnce() -> String,
) -> Result<String, CliError> {
    Ok(match format {
        Format::Table => table(),
        Format::Machine => serde_json::to_string(record)? + "\n",
    })
}

fn elapsed_ms(start: Instant) -> f64 {
    start.elapsed().as_secs_f64() * 1e3
}

fn prediction_report(p: &BranchingPrediction) -> PredictionReport {
    PredictionReport {
        rendered: p.render(),
        term_count: p.len(),
        rank: p.rank(),
        multiset: p.multiset(),
        multiplicity_free: p.is_multiplicity_free(),
    }
}

/// Runs the selected criteria on one pair. Errors are recorded in the
/// report rather than returned.
pub fn pair_report(ctx: &Context, spec: &PairSpec, method: Method) -> PairReport {
    let mut report = PairReport::new(spec.to_string(), spec.base.render(), spec.n);
    let mut timings = Timings::default();
    if let Err(e) = fill_pair_report(ctx, spec, method, &mut report, &mut timings) {
        report.error = Some(e.to_string());
    }
    if ctx.timings {
        report.timings = Some(timings);
    }
    report.ok = report.error.is_none() && report.violations.is_empty();
    report
}

fn fill_pair_report(
    ctx: &Context,
    spec: &PairSpec,
    method: Method,
    r: &mut PairReport,
    t: &mut Timings,
) -> Result<(), GroupError> {
    let start = Instant::now();
    let (base, k) = spec.build(ctx.size_budget)?;
    t.build_ms = elapsed_ms(start);
    r.order_g = Some(k.parent().order() as u64);
    r.order_k = Some(k.order() as u64);
    let abelian = base.is_abelian();
    r.base_abelian = Some(abelian);

    if method != Method::Character {
        let start = Instant::now();
        let verdict = is_gelfand_hecke(&k)?;
        t.hecke_ms = elapsed_ms(start);
        r.rank = Some(verdict.rank);
        r.gelfand_hecke = Some(verdict.gelfand);
    }

    if method != Method::Hecke {
        let start = Instant::now();
        match ctx.table(k.parent()) {
            Ok(table) => {
                let d = decompose_induced_trivial(&table, &k, None)?;
                r.multiplicities = Some(d.multiset());
                r.gelfand_character = CharacterVerdict::Computed(d.is_multiplicity_free());
                match r.rank {
                    Some(rank) if d.rank() != rank as u64 => r.violations.push(format!(
                        "sum of squared multiplicities {} differs from {rank} double cosets",
                        d.rank()
                    )),
                    Some(_) => {}
                    None => r.rank = Some(d.rank() as usize),
                }
            }
            Err(e @ GroupError::ResourceLimit { .. }) if method == Method::Both => {
                log::info!("{}: character criterion skipped: {e}", r.pair);
                r.character_note = Some(e.to_string());
            }
            Err(e) => return Err(e),
        }
        t.character_ms = elapsed_ms(start);
    }

    if let (Some(h), Some(c)) = (r.gelfand_hecke, r.gelfand_character.computed()) {
        if h != c {
            log::error!(
                "{}: INTERNAL CONSISTENCY FAILURE: hecke says {h}, character says {c}",
                r.pair
            );
            r.violations.push(format!(
                "internal consistency: hecke verdict {h} disagrees with character verdict {c}"
            ));
        }
    }
    if let Some(g) = r.gelfand() {
        if g != abelian {
            r.violations
                .push(format!("gelfand = {g} but base abelian = {abelian}"));
        }
    }

    let start = Instant::now();
    match ctx.table(&base) {
        Ok(table) => {
            let p = induced_trivial_prediction(table.degrees(), spec.n)?;
            let p = prediction_report(&p);
            check_prediction(r, &p, table.degrees().len());
            r.prediction = Some(p);
        }
        Err(e @ GroupError::ResourceLimit { .. }) => {
            log::info!("{}: prediction skipped: {e}", r.pair);
        }
        Err(e) => return Err(e),
    }
    t.prediction_ms = elapsed_ms(start);
    Ok(())
}

fn check_prediction(r: &mut PairReport, p: &PredictionReport, base_classes: usize) {
    if p.term_count != base_classes + 1 {
        r.violations.push(format!(
            "prediction has {} terms, expected {}",
            p.term_count,
            base_classes + 1
        ));
    }
    if let Some(rank) = r.rank {
        if p.rank != rank as u64 {
            r.violations
                .push(format!("predicted rank {} but rank is {rank}", p.rank));
        }
    }
    if let Some(m) = &r.multiplicities {
        if *m != p.multiset {
            r.violations.push(format!(
                "predicted multiplicities {:?} but computed {:?}",
                p.multiset, m
            ));
        }
    }
    if let Some(g) = r.gelfand() {
        if g != p.multiplicity_free {
            r.violations.push(format!(
                "prediction multiplicity-free = {} but gelfand = {g}",
                p.multiplicity_free
            ));
        }
    }
}

pub fn cmd_pair_check(
    ctx: &Context,
    pair: &str,
    method: Method,
    format: Format,
) -> Result<Output, CliError> {
    let spec: PairSpec = pair.parse()?;
    let report = pair_report(ctx, &spec, method);
    Ok(Output {
        text: render(format, &report, || report.to_table())?,
        ok: report.ok,
    })
}

/// One report per base, computed in parallel and listed in input order.
pub fn scan(
    ctx: &Context,
    bases: &[GroupSpecAst],
    n: usize,
    method: Method,
) -> (Vec<PairReport>, ScanSummary) {
    let rows: Vec<PairReport> = bases
        .par_iter()
        .map(|b| pair_report(ctx, &PairSpec::new(b.clone(), n), method))
        .collect();
    let holds = |r: &PairReport| {
        r.error.is_none() && r.gelfand().is_some() && r.gelfand() == r.base_abelian
    };
    let summary = ScanSummary {
        schema_version: SCHEMA_VERSION,
        record: "summary".into(),
        rows: rows.len(),
        errors: rows.iter().filter(|r| r.error.is_some()).count(),
        violations: rows.iter().filter(|r| !r.violations.is_empty()).count(),
        gelfand_equals_abelian: rows.iter().all(holds),
        ok: rows.iter().all(|r| r.ok),
    };
    (rows, summary)
}

pub fn cmd_scan(
    ctx: &Context,
    bases: &[String],
    n: usize,
    method: Method,
    format: Format,
) -> Result<Output, CliError> {
    let asts = bases
        .iter()
        .map(|b| b.parse())
        .collect::<Result<Vec<GroupSpecAst>, _>>()?;
    let (rows, summary) = scan(ctx, &asts, n, method);
    let text = match format {
        Format::Table => scan_table(&rows, &summary),
        Format::Machine => {
            let mut out = String::new();
            for r in &rows {
                out += &(serde_json::to_string(r)? + "\n");
            }
            out + &serde_json::to_string(&summary)? + "\n"
        }
    };
    Ok(Output {
        text,
        ok: summary.ok && summary.gelfand_equals_abelian,
    })
}

pub fn branch_report(
    ctx: &Context,
    base: &GroupSpecAst,
    n: usize,
) -> Result<BranchReport, CliError> {
    let group = base.build(ctx.size_budget)?;
    let table = ctx.table(&group)?;
    let dims = table.degrees().to_vec();
    let p = induced_trivial_prediction(&dims, n)?;
    Ok(BranchReport {
        schema_version: SCHEMA_VERSION,
        record: "branch".into(),
        base: base.render(),
        n,
        dimensions: dims,
        prediction: prediction_report(&p),
    })
}

pub fn cmd_branch(ctx: &Context, base: &str, n: usize, format: Format) -> Result<Output, CliError> {
    let report = branch_report(ctx, &base.parse()?, n)?;
    Ok(Output {
        text: render(format, &report, || report.to_table())?,
        ok: true,
    })
}

pub fn hecke_report(
    ctx: &Context,
    spec: &PairSpec,
    show_constants: bool,
) -> Result<HeckeReport, CliError> {
    let (_, k) = spec.build(ctx.size_budget)?;
    let dc = double_cosets(&k);
    verify_double_cosets(&k, &dc)?;
    let c = structure_constants(&k, &dc)?;
    c.check_counting_identities()?;
    let rank = dc.rank();
    let witness = c.commutativity_witness().map(|(i, j, k)| Witness {
        i,
        j,
        k,
        c_ijk: c.get(i, j, k),
        c_jik: c.get(j, i, k),
    });
    let constants = (show_constants && rank <= SHOW_CONSTANTS_MAX_RANK).then(|| {
        (0..rank)
            .map(|i| {
                (0..rank)
                    .map(|j| (0..rank).map(|k| c.get(i, j, k)).collect())
                    .collect()
            })
            .collect()
    });
    if show_constants && constants.is_none() {
        log::warn!("rank {rank} exceeds {SHOW_CONSTANTS_MAX_RANK}; constants not shown");
    }
    Ok(HeckeReport {
        schema_version: SCHEMA_VERSION,
        record: "hecke".into(),
        pair: spec.to_string(),
        order_g: k.parent().order() as u64,
        order_k: k.order() as u64,
        rank,
        block_sizes: dc.sizes(),
        representatives: dc.representatives().iter().map(|g| g.index()).collect(),
        commutative: witness.is_none(),
        witness,
        constants,
    })
}

pub fn cmd_hecke(
    ctx: &Context,
    pair: &str,
    show_constants: bool,
    format: Format,
) -> Result<Output, CliError> {
    let report = hecke_report(ctx, &pair.parse()?, show_constants)?;
    Ok(Output {
        text: render(format, &report, || report.to_table())?,
        ok: true,
    })
}

pub fn partitions_report(lambda: &str) -> Result<PartitionsReport, CliError> {
    let lambda: Partition = lambda.parse()?;
    Ok(PartitionsReport {
        schema_version: SCHEMA_VERSION,
        record: "partitions".into(),
        input: lambda.to_string(),
        extensions: extensions(&lambda)
            .iter()
            .map(Partition::to_string)
            .collect(),
    })
}

pub fn cmd_partitions_extend(lambda: &str, format: Format) -> Result<Output, CliError> {
    let report = partitions_report(lambda)?;
    Ok(Output {
        text: render(format, &report, || report.to_table())?,
        ok: true,
    })
}

pub fn group_report(ctx: &Context, spec: &GroupSpecAst) -> Result<GroupReport, CliError> {
    let g = spec.build(ctx.size_budget)?;
    let classes = conjugacy_classes(&g);
    let (irrep_dimensions, note) = match ctx.table(&g) {
        Ok(t) => {
            let mut d = t.degrees().to_vec();
            d.sort_unstable();
            (Some(d), None)
        }
        Err(e @ GroupError::ResourceLimit { .. }) => (None, Some(e.to_string())),
        Err(e) => return Err(e.into()),
    };
    Ok(GroupReport {
        schema_version: SCHEMA_VERSION,
        record: "group".into(),
        group: g.descriptor().to_string(),
        order: g.order() as u64,
        abelian: g.is_abelian(),
        class_count: classes.len(),
        class_sizes: classes.sizes(),
        irrep_dimensions,
        note,
    })
}

pub fn cmd_group(ctx: &Context, spec: &str, format: Format) -> Result<Output, CliError> {
    let report = group_report(ctx, &spec.parse()?)?;
    Ok(Output {
        text: render(format, &report, || report.to_table())?,
        ok: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> Context {
        Context::default()
    }

    fn pair(text: &str, method: Method) -> PairReport {
        pair_report(&ctx(), &text.parse().unwrap(), method)
    }

    #[test]
    fn pair_check_examples() {
        let r = pair("wr(Z2,3)", Method::Both);
        assert!(r.ok, "{r:?}");
        assert_eq!((r.rank, r.gelfand_hecke), (Some(3), Some(true)));
        assert_eq!(r.gelfand_character, CharacterVerdict::Computed(true));

        let r = pair("wr(S3,2)", Method::Both);
        assert!(r.ok, "{r:?}");
        assert_eq!((r.rank, r.gelfand()), (Some(7), Some(false)));
        assert_eq!(r.multiplicities, Some(vec![1, 1, 1, 2]));
        assert_eq!(r.prediction.as_ref().unwrap().term_count, 4);

        let r = pair("wr(Z1,4)", Method::Both);
        assert!(r.ok);
        assert_eq!((r.order_g, r.order_k, r.rank), (Some(24), Some(6), Some(2)));
    }

    #[test]
    fn single_methods() {
        let r = pair("wr(Z3,2)", Method::Hecke);
        assert_eq!(r.gelfand_character, CharacterVerdict::Skipped);
        assert_eq!(r.rank, Some(4));
        assert!(r.ok);
        let r = pair("wr(Z3,2)", Method::Character);
        assert_eq!(r.gelfand_hecke, None);
        assert_eq!((r.rank, r.gelfand()), (Some(4), Some(true)));
        assert!(r.ok);
    }

    #[test]
    fn both_degrades_to_hecke_when_chartab_limits_are_exceeded() {
        let mut c = ctx();
        c.chartab.limits.chartab_order_limit = 40;
        let r = pair_report(&c, &"wr(S3,2)".parse().unwrap(), Method::Both);
        assert_eq!(r.gelfand_character, CharacterVerdict::Skipped);
        assert!(r
            .character_note
            .as_deref()
            .unwrap()
            .contains("resource limit"));
        assert_eq!(r.gelfand_hecke, Some(false));
        assert!(r.ok);
        c.chartab.limits.chartab_order_limit = 40;
        let r = pair_report(&c, &"wr(S3,2)".parse().unwrap(), Method::Character);
        assert!(r.error.is_some() && !r.ok);
    }

    #[test]
    fn errors_are_recorded_per_row() {
        let mut c = ctx();
        c.size_budget = 100;
        let bases: Vec<GroupSpecAst> = ["Z2", "S4", "Z3"]
            .iter()
            .map(|b| b.parse().unwrap())
            .collect();
        let (rows, summary) = scan(&c, &bases, 2, Method::Both);
        assert_eq!(rows.len(), 3);
        assert!(rows[0].ok && rows[2].ok);
        assert!(rows[1].error.as_deref().unwrap().contains("resource limit"));
        assert_eq!((summary.errors, summary.ok), (1, false));
        assert!(!summary.gelfand_equals_abelian);
    }

    #[test]
    fn scan_examples() {
        let bases: Vec<GroupSpecAst> = ["Z1", "Z2", "Z3", "Z4", "S3", "D4", "Z2xZ2"]
            .iter()
            .map(|b| b.parse().unwrap())
            .collect();
        let (rows, summary) = scan(&ctx(), &bases, 2, Method::Both);
        let verdicts: Vec<_> = rows.iter().map(|r| r.gelfand().unwrap()).collect();
        assert_eq!(verdicts, [true, true, true, true, false, false, true]);
        assert!(summary.ok && summary.gelfand_equals_abelian);
    }

    #[test]
    fn machine_output_is_deterministic() {
        let a = cmd_scan(
            &ctx(),
            &["Z2".into(), "S3".into()],
            2,
            Method::Both,
            Format::Machine,
        )
        .unwrap();
        let b = cmd_scan(
            &ctx(),
            &["Z2".into(), "S3".into()],
            2,
            Method::Both,
            Format::Machine,
        )
        .unwrap();
        assert_eq!(a, b);
        let lines: Vec<&str> = a.text.lines().collect();
        assert_eq!(lines.len(), 3);
        assert!(lines
            .iter()
            .all(|l| l.starts_with("{\"schema_version\":1,")));
        assert!(lines[2].contains("\"record\":\"summary\""));
    }

    #[test]
    fn branch_examples() {
        let r = branch_report(&ctx(), &"Z2".parse().unwrap(), 3).unwrap();
        assert_eq!(r.prediction.term_count, 3);
        assert_eq!(r.prediction.multiset, [1, 1, 1]);
        let r = branch_report(&ctx(), &"S3".parse().unwrap(), 2).unwrap();
        assert_eq!(r.prediction.multiset, [1, 1, 1, 2]);
        let r = branch_report(&ctx(), &"Z1".parse().unwrap(), 5).unwrap();
        assert_eq!(r.prediction.rendered, "S^(5) ⊕ S^(4,1)");
        assert!(branch_report(&ctx(), &"Z2".parse().unwrap(), 1).is_err());
    }

    #[test]
    fn hecke_examples() {
        let r = hecke_report(&ctx(), &"wr(Z1,3)".parse().unwrap(), true).unwrap();
        assert_eq!(r.block_sizes, [2, 4]);
        let c = r.constants.as_ref().unwrap();
        assert_eq!(c[0][0], [2, 0]);
        assert_eq!(c[1][1], [4, 2]);
        assert!(r.to_table().contains("c[i][j][1]"));

        let r = hecke_report(&ctx(), &"wr(Z2,2)".parse().unwrap(), false).unwrap();
        assert_eq!((r.rank, r.commutative), (3, true));
        assert!(r.constants.is_none());

        let r = hecke_report(&ctx(), &"wr(S3,2)".parse().unwrap(), false).unwrap();
        assert_eq!((r.rank, r.commutative), (7, false));
        let w = r.witness.unwrap();
        assert_ne!(w.c_ijk, w.c_jik);
    }

    #[test]
    fn partitions_examples() {
        let r = partitions_report("3,3,2,2,2,1").unwrap();
        assert_eq!(
            r.extensions,
            [
                "(4,3,2,2,2,1)",
                "(3,3,3,2,2,1)",
                "(3,3,2,2,2,2)",
                "(3,3,2,2,2,1,1)"
            ]
        );
        assert_eq!(partitions_report("").unwrap().extensions, ["(1)"]);
        assert_eq!(partitions_report("1").unwrap().extensions, ["(2)", "(1,1)"]);
        assert!(matches!(
            partitions_report("1,2"),
            Err(CliError::Partition(_))
        ));
    }

    #[test]
    fn group_examples() {
        let r = group_report(&ctx(), &"S4".parse().unwrap()).unwrap();
        assert_eq!((r.order, r.class_count, r.abelian), (24, 5, false));
        assert_eq!(r.irrep_dimensions, Some(vec![1, 1, 2, 3, 3]));
        let r = group_report(&ctx(), &"Z2xZ3".parse().unwrap()).unwrap();
        assert!(r.abelian);
        assert_eq!(r.irrep_dimensions, Some(vec![1; 6]));
    }
}
