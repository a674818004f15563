//! Sweeps that check the constituent-count bounds over a catalog of
//! p-groups and assemble JSON reports.

pub mod catalog;
pub mod report;

use std::collections::{BTreeMap, BTreeSet};
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use rayon::prelude::*;

use crate::charops::{decompose_product, ConstituentDecomposition};
use crate::chartab::{character_table, CharTable, TableCache};
use crate::clifford::{build_chain, classify_chain, layer_constituents, ChainContext};
use crate::constructions::prop5_witness;
use crate::error::{Error, Result};
use crate::perm::io::write_group_file;
use crate::perm::PermGroup;

pub use catalog::{default_catalog, resolve_catalog, CatalogEntry};
pub use report::{Counterexample, GroupResult, Record, VerificationReport};

pub const DEFAULT_MAX_ORDER: usize = 64;

/// Witness pairs checked by [`verify_prop5`] by default.
pub const PROP5_PAIRS: &[(u64, u32)] = &[(2, 0), (2, 1), (2, 2), (3, 0), (3, 1)];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Check {
    TheoremA,
    TheoremB,
    CorollaryA,
    Ledger,
    Prop5,
}

impl Check {
    pub fn name(self) -> &'static str {
        match self {
            Check::TheoremA => "theorem-a",
            Check::TheoremB => "theorem-b",
            Check::CorollaryA => "corollary-a",
            Check::Ledger => "ledger",
            Check::Prop5 => "prop5",
        }
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "theorem-a" => Check::TheoremA,
            "theorem-b" => Check::TheoremB,
            "corollary-a" => Check::CorollaryA,
            "ledger" => Check::Ledger,
            "prop5" => Check::Prop5,
            _ => return Err(Error::InvalidArgument(format!("unknown check {s:?}"))),
        })
    }
}

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    /// Largest group order included in the pairwise sweep.
    pub max_order: usize,
    /// Record wall-clock time in the report. Off gives byte-identical reports.
    pub timing: bool,
    pub cache: Option<TableCache>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        Self {
            max_order: DEFAULT_MAX_ORDER,
            timing: true,
            cache: None,
        }
    }
}

pub fn run_check(
    check: Check,
    entries: &[CatalogEntry],
    opts: &VerifyOptions,
) -> Result<VerificationReport> {
    match check {
        Check::TheoremA => verify_theorem_a(entries, opts),
        Check::TheoremB => verify_theorem_b(entries, opts),
        Check::CorollaryA => verify_corollary_a(entries, opts),
        Check::Ledger => verify_ledger(entries, opts),
        Check::Prop5 => verify_prop5(PROP5_PAIRS, opts),
    }
}

struct Prepared<'a> {
    entry: &'a CatalogEntry,
    group: Arc<PermGroup>,
    table: CharTable,
    p: u64,
}

fn table_for(group: &Arc<PermGroup>, opts: &VerifyOptions) -> Result<CharTable> {
    match &opts.cache {
        Some(cache) => cache.get_or_compute(group),
        None => character_table(group),
    }
}

fn prepare<'a>(entry: &'a CatalogEntry, opts: &VerifyOptions) -> Result<Prepared<'a>> {
    let group = entry.build()?;
    let p = group.prime()?;
    let table = table_for(&group, opts)?;
    Ok(Prepared {
        entry,
        group,
        table,
        p,
    })
}

impl Prepared<'_> {
    fn result(&self, records: Vec<Record>) -> GroupResult {
        GroupResult::new(self.entry.name.clone(), self.group.order(), self.p, records)
    }

    fn counterexample(
        &self,
        chi: usize,
        psi: Option<usize>,
        decomposition: &ConstituentDecomposition,
        detail: String,
    ) -> Counterexample {
        Counterexample {
            group_file: self.entry.source.clone(),
            chi,
            psi,
            decomposition: decomposition.constituents.clone(),
            detail,
        }
    }

    fn degree(&self, i: usize) -> u64 {
        self.table[i]
            .degree()
            .expect("irreducible degrees are integers")
    }
}

/// `log_p d`, or None when d is not a power of p.
pub fn log_p(p: u64, d: u64) -> Option<u32> {
    if d == 1 {
        return Some(0);
    }
    if p < 2 {
        return None;
    }
    let mut k = 0;
    let mut x = d;
    while x.is_multiple_of(p) {
        x /= p;
        k += 1;
    }
    (x == 1).then_some(k)
}

/// `2n(p-1) + 1`.
pub fn eta_bound(p: u64, n: u32) -> usize {
    (2 * n as u64 * p.saturating_sub(1) + 1) as usize
}

fn elapsed(start: Instant, opts: &VerifyOptions) -> Option<u64> {
    opts.timing.then(|| start.elapsed().as_millis() as u64)
}

fn sweep<F>(
    check: Check,
    entries: &[CatalogEntry],
    opts: &VerifyOptions,
    per_group: F,
) -> Result<VerificationReport>
where
    F: Fn(&Prepared<'_>) -> Result<GroupResult> + Sync,
{
    let start = Instant::now();
    let results = entries
        .par_iter()
        .map(|entry| per_group(&prepare(entry, opts)?))
        .collect::<Result<Vec<_>>>()?;
    Ok(VerificationReport::new(
        check.name(),
        results,
        elapsed(start, opts),
    ))
}

fn per_character<F>(prep: &Prepared<'_>, f: F) -> Result<Vec<Record>>
where
    F: Fn(usize) -> Result<Record> + Sync + Send,
{
    (0..prep.table.len()).into_par_iter().map(f).collect()
}

fn degree_failure(prep: &Prepared<'_>, chi: usize, d: &ConstituentDecomposition) -> Record {
    let degree = prep.degree(chi);
    Record {
        chi,
        degree,
        eta: Some(d.eta),
        pass: false,
        counterexample: Some(prep.counterexample(
            chi,
            None,
            d,
            format!("degree {degree} is not a power of {}", prep.p),
        )),
        ..Record::default()
    }
}

fn theorem_a_record(prep: &Prepared<'_>, chi: usize) -> Result<Record> {
    let t = &prep.table;
    let d = decompose_product(t, chi, t.conjugate_index(chi))?;
    let degree = prep.degree(chi);
    let Some(n) = log_p(prep.p, degree) else {
        return Ok(degree_failure(prep, chi, &d));
    };
    let bound = eta_bound(prep.p, n);
    let pass = d.eta >= bound;
    Ok(Record {
        chi,
        degree,
        n: Some(n),
        eta: Some(d.eta),
        bound: Some(bound),
        pass,
        counterexample: (!pass).then(|| {
            prep.counterexample(chi, None, &d, format!("eta {} below bound {bound}", d.eta))
        }),
        ..Record::default()
    })
}

/// For every irreducible χ: `η(χ, χ̄) ≥ 2n(p-1) + 1` with `χ(1) = p^n`.
pub fn verify_theorem_a(
    entries: &[CatalogEntry],
    opts: &VerifyOptions,
) -> Result<VerificationReport> {
    sweep(Check::TheoremA, entries, opts, |prep| {
        Ok(prep.result(per_character(prep, |i| theorem_a_record(prep, i))?))
    })
}

fn theorem_b_record(prep: &Prepared<'_>, chi: usize) -> Result<Record> {
    let t = &prep.table;
    let p = prep.p;
    let d = decompose_product(t, chi, t.conjugate_index(chi))?;
    let degree = prep.degree(chi);
    let Some(n) = log_p(p, degree) else {
        return Ok(degree_failure(prep, chi, &d));
    };
    let eta = d.eta;
    let mut record = Record {
        chi,
        degree,
        n: Some(n),
        eta: Some(eta),
        ..Record::default()
    };
    let detail;
    match n {
        0 => {
            record.bound = Some(1);
            record.pass = eta == 1;
            detail = "linear character with eta != 1".to_string();
        }
        1 => {
            let linear = d.constituents.iter().filter(|c| c.degree == 1).count() as u64;
            let of_degree_p = d.constituents.iter().filter(|c| c.degree == p).count() as u64;
            let simple = d.constituents.iter().all(|c| c.multiplicity == 1);
            let pattern_ok = (linear == p && of_degree_p == p - 1 && eta as u64 == 2 * p - 1)
                || (linear == p * p && of_degree_p == 0 && eta as u64 == p * p);
            record.bound = Some((2 * p - 1) as usize);
            record.pattern = Some(format!("{linear} linear + {of_degree_p} of degree {p}"));
            record.pass = simple && pattern_ok;
            detail = if simple {
                format!("eta {eta} with pattern {linear} linear + {of_degree_p} of degree {p}")
            } else {
                "a constituent has multiplicity greater than 1".to_string()
            };
        }
        _ => {
            let bound = (4 * p - 3) as usize;
            record.bound = Some(bound);
            record.pass = eta >= bound;
            detail = format!("eta {eta} below bound {bound}");
        }
    }
    if !record.pass {
        record.counterexample = Some(prep.counterexample(chi, None, &d, detail));
    }
    Ok(record)
}

/// Trichotomy by degree: linear gives η = 1; degree p gives η ∈ {2p-1, p²}
/// with multiplicity-free constituents of the matching degree pattern;
/// degree at least p² gives η ≥ 4p-3. Records the η distribution of the
/// degree-p characters of each group.
pub fn verify_theorem_b(
    entries: &[CatalogEntry],
    opts: &VerifyOptions,
) -> Result<VerificationReport> {
    sweep(Check::TheoremB, entries, opts, |prep| {
        let records = per_character(prep, |i| theorem_b_record(prep, i))?;
        let mut dist = BTreeMap::new();
        for r in records.iter().filter(|r| r.n == Some(1)) {
            *dist.entry(r.eta.unwrap()).or_insert(0) += 1;
        }
        let mut result = prep.result(records);
        result.eta_distribution = Some(dist);
        Ok(result)
    })
}

/// Over ordered pairs (χ, ψ) of groups of order at most `max_order`:
/// if χψ has a linear constituent then `η(χ, ψ) ≥ 2n(p-1) + 1`. Pairs
/// without one are recorded as skipped together with their η.
pub fn verify_corollary_a(
    entries: &[CatalogEntry],
    opts: &VerifyOptions,
) -> Result<VerificationReport> {
    let selected: Vec<CatalogEntry> = entries
        .iter()
        .filter(|e| e.build().map_or(true, |g| g.order() <= opts.max_order))
        .cloned()
        .collect();
    sweep(Check::CorollaryA, &selected, opts, |prep| {
        let r = prep.table.len();
        let records = (0..r * r)
            .into_par_iter()
            .map(|k| {
                let (chi, psi) = (k / r, k % r);
                let d = decompose_product(&prep.table, chi, psi)?;
                let degree = prep.degree(chi);
                let has_linear = d.constituents.iter().any(|c| c.degree == 1);
                let mut record = Record {
                    chi,
                    psi: Some(psi),
                    degree,
                    eta: Some(d.eta),
                    ..Record::default()
                };
                if !has_linear {
                    record.skipped = true;
                    record.pass = true;
                    return Ok(record);
                }
                let Some(n) = log_p(prep.p, degree) else {
                    let mut failed = degree_failure(prep, chi, &d);
                    failed.psi = Some(psi);
                    return Ok(failed);
                };
                let bound = eta_bound(prep.p, n);
                record.n = Some(n);
                record.bound = Some(bound);
                record.pass = d.eta >= bound;
                if !record.pass {
                    record.counterexample = Some(prep.counterexample(
                        chi,
                        Some(psi),
                        &d,
                        format!("eta {} below bound {bound}", d.eta),
                    ));
                }
                Ok(record)
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(prep.result(records))
    })
}

fn ledger_record(prep: &Prepared<'_>, ctx: &ChainContext, chi: usize) -> Result<Record> {
    let p = prep.p;
    let t = ctx.top_table();
    let d = decompose_product(t, chi, t.conjugate_index(chi))?;
    let degree = prep.degree(chi);
    let mut record = Record {
        chi,
        degree,
        n: log_p(p, degree),
        eta: Some(d.eta),
        ..Record::default()
    };
    let fail = |mut record: Record, detail: String| {
        record.pass = false;
        record.counterexample = Some(prep.counterexample(chi, None, &d, detail));
        Ok(record)
    };
    let Some(n) = record.n else {
        return Ok(degree_failure(prep, chi, &d));
    };
    let chain = build_chain(ctx, chi)?;
    let ledger = match classify_chain(ctx, &chain) {
        Ok(ledger) => ledger,
        Err(e @ (Error::UnstableCaseViolation { .. } | Error::LedgerViolation { .. })) => {
            return fail(record, e.to_string());
        }
        Err(e) => return Err(e),
    };
    let layers = layer_constituents(ctx, &chain, &ledger)?;
    record.bound = Some(eta_bound(p, n));
    record.ledger = Some(ledger.clone());

    if let Some(last) = ledger.final_entry() {
        if last.s != n || last.r != 0 || last.m != 2 * n {
            return fail(
                record,
                format!(
                    "final counters m={} s={} r={} for n={n}",
                    last.m, last.s, last.r
                ),
            );
        }
    }
    let mut seen = BTreeSet::new();
    let mut total = 0usize;
    for layer in &layers {
        if let Some((delta, _)) = layer.over_delta.iter().find(|(_, over)| over.is_empty()) {
            return fail(
                record,
                format!(
                    "at unstable index {}: no constituent lies over character {delta} of the layer",
                    layer.index
                ),
            );
        }
        if (layer.nonprincipal.len() as u64) < p - 1 {
            return fail(
                record,
                format!(
                    "at unstable index {}: only {} nonprincipal constituents",
                    layer.index,
                    layer.nonprincipal.len()
                ),
            );
        }
        total += layer.nonprincipal.len();
        seen.extend(layer.nonprincipal.iter().copied());
    }
    if seen.len() != total {
        return fail(
            record,
            "constituents attached to different unstable indices overlap".into(),
        );
    }
    if total + 1 > d.eta {
        return fail(
            record,
            format!("{total} attached constituents exceed eta {}", d.eta),
        );
    }
    record.pass = true;
    Ok(record)
}

/// For every irreducible χ: classify its canonical chain, check the counter
/// identity at every index, the case split at every unstable index, and
/// that the constituents of χχ̄ attached to distinct unstable indices are
/// distinct, at least p-1 per index.
pub fn verify_ledger(entries: &[CatalogEntry], opts: &VerifyOptions) -> Result<VerificationReport> {
    sweep(Check::Ledger, entries, opts, |prep| {
        let ctx = ChainContext::with_table(prep.table.clone())?;
        let records = per_character(prep, |i| ledger_record(prep, &ctx, i))?;
        Ok(prep.result(records))
    })
}

/// For each (p, n): the witness character χ has degree p^n, is not real,
/// and `η(χ, χ̄) = 2n(p-1) + 1` exactly.
pub fn verify_prop5(pairs: &[(u64, u32)], opts: &VerifyOptions) -> Result<VerificationReport> {
    let start = Instant::now();
    let results = pairs
        .par_iter()
        .map(|&(p, n)| {
            let w = prop5_witness(p, n)?;
            let table = table_for(&w.group, opts)?;
            let chi = table
                .index_of(&w.chi)
                .ok_or_else(|| Error::WitnessFailure("χ is not in the table".into()))?;
            let d = decompose_product(&table, chi, table.conjugate_index(chi))?;
            let degree = table[chi].degree().unwrap_or(0);
            let bound = eta_bound(p, n);
            let real = table.conjugate_index(chi) == chi;
            let pass = degree == p.pow(n) && !real && d.eta == bound;
            let group_file = write_group_file(
                &w.group,
                Some(&format!("witness ({p}, {n}); base: {}", w.base_case)),
            );
            let record = Record {
                chi,
                degree,
                n: Some(n),
                eta: Some(d.eta),
                bound: Some(bound),
                pass,
                counterexample: (!pass).then(|| Counterexample {
                    group_file,
                    chi,
                    psi: None,
                    decomposition: d.constituents.clone(),
                    detail: format!(
                        "degree {degree}, real {real}, eta {} (expected {bound})",
                        d.eta
                    ),
                }),
                ..Record::default()
            };
            Ok(GroupResult::new(
                format!("W({p},{n})"),
                w.group.order(),
                p,
                vec![record],
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(VerificationReport::new(
        Check::Prop5.name(),
        results,
        elapsed(start, opts),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> Vec<CatalogEntry> {
        ["c4", "d8", "q8", "c3", "e27"]
            .iter()
            .map(|n| catalog::default_entry(n).unwrap())
            .collect()
    }

    #[test]
    fn log_p_values() {
        assert_eq!(log_p(2, 8), Some(3));
        assert_eq!(log_p(3, 1), Some(0));
        assert_eq!(log_p(2, 6), None);
        assert_eq!(log_p(1, 1), Some(0));
        assert_eq!(eta_bound(3, 1), 5);
    }

    #[test]
    fn small_sweeps_pass() {
        let opts = VerifyOptions {
            timing: false,
            ..VerifyOptions::default()
        };
        for check in [
            Check::TheoremA,
            Check::TheoremB,
            Check::CorollaryA,
            Check::Ledger,
        ] {
            let report = run_check(check, &small(), &opts).unwrap();
            assert!(report.pass, "{}", check.name());
        }
    }

    #[test]
    fn dihedral_theorem_a_record() {
        let opts = VerifyOptions::default();
        let report = verify_theorem_a(&[catalog::default_entry("d8").unwrap()], &opts).unwrap();
        let rec = &report.results[0].records[4];
        assert_eq!((rec.degree, rec.eta, rec.bound), (2, Some(4), Some(3)));
    }

    #[test]
    fn non_p_group_is_an_error() {
        let s3 = CatalogEntry::new("s3", "degree 3\ngen (1,2,3)\ngen (1,2)\n");
        assert!(matches!(
            verify_theorem_a(&[s3], &VerifyOptions::default()),
            Err(Error::NotAPGroup { .. })
        ));
    }

    #[test]
    fn reports_are_deterministic_without_timing() {
        let opts = VerifyOptions {
            timing: false,
            ..VerifyOptions::default()
        };
        let a = verify_theorem_b(&small(), &opts).unwrap().to_json_pretty();
        let b = verify_theorem_b(&small(), &opts).unwrap().to_json_pretty();
        assert_eq!(a, b);
        assert!(a.contains("\"elapsed_ms\": null"));
    }
}
