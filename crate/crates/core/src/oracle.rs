//! Ground truth by brute force: enumerate every nonzero field element and
//! tally (tr(x), tr(1/x)).

use rayon::prelude::*;

use crate::counting::TraceCotraceTable;
use crate::error::{Error, Result};
use crate::ext_field::FieldCtx;
use crate::kloosterman::enumeration_guard;

/// A contiguous slice `[start, end)` of the counting-order index space.
#[derive(Debug, Clone, Copy)]
pub struct TallyJob<'a> {
    pub ctx: &'a FieldCtx,
    pub start: u128,
    pub end: u128,
}

/// Splits `[start, end)` into at most `parts` nonempty intervals.
pub fn split_range(start: u128, end: u128, parts: usize) -> Vec<(u128, u128)> {
    if end <= start {
        return Vec::new();
    }
    let parts = (parts.max(1) as u128).min(end - start);
    let step = (end - start).div_ceil(parts);
    (0..parts)
        .map(|k| (start + k * step, (start + (k + 1) * step).min(end)))
        .filter(|(a, b)| a < b)
        .collect()
}

fn empty_table(ctx: &FieldCtx) -> TraceCotraceTable {
    let n = ctx.p() as usize;
    TraceCotraceTable {
        p: ctx.p(),
        m: ctx.m() as u32,
        q: ctx.q(),
        modulus: ctx.modulus().to_vec(),
        counts: vec![vec![0; n]; n],
    }
}

fn check_guard(ctx: &FieldCtx, guard: u128) -> Result<()> {
    if ctx.q() > guard {
        Err(Error::TooLarge { q: ctx.q(), guard })
    } else {
        Ok(())
    }
}

fn tally_job(job: &TallyJob<'_>) -> Vec<Vec<u128>> {
    let ctx = job.ctx;
    let n = ctx.p() as usize;
    let mut counts = vec![vec![0u128; n]; n];
    for x in ctx.range(job.start.max(1), job.end) {
        let inv = ctx.inverse_raw(x.coeffs()).expect("nonzero element");
        let i = ctx.trace_raw(x.coeffs()) as usize;
        let j = ctx.trace_raw(&inv) as usize;
        counts[i][j] += 1;
    }
    counts
}

fn merge(mut a: Vec<Vec<u128>>, b: Vec<Vec<u128>>) -> Vec<Vec<u128>> {
    for (ra, rb) in a.iter_mut().zip(b) {
        for (x, y) in ra.iter_mut().zip(rb) {
            *x += y;
        }
    }
    a
}

/// Single pass over F_q^*, guarded by `TRACE_COTRACE_GUARD`.
pub fn tally(ctx: &FieldCtx) -> Result<TraceCotraceTable> {
    tally_guarded(ctx, enumeration_guard())
}

pub fn tally_guarded(ctx: &FieldCtx, guard: u128) -> Result<TraceCotraceTable> {
    check_guard(ctx, guard)?;
    let mut table = empty_table(ctx);
    table.counts = tally_job(&TallyJob {
        ctx,
        start: 1,
        end: ctx.q(),
    });
    Ok(table)
}

/// Tallies each job on the rayon pool and adds the partial tables. The jobs
/// must share one field and cover `[1, q)` without gaps or overlaps.
pub fn tally_partitioned(jobs: &[TallyJob<'_>]) -> Result<TraceCotraceTable> {
    let Some(first) = jobs.first() else {
        return Err(Error::BadPartition {
            q: 0,
            reason: "no jobs".into(),
        });
    };
    let ctx = first.ctx;
    let q = ctx.q();
    check_guard(ctx, enumeration_guard())?;
    let bad = |reason: String| Err(Error::BadPartition { q, reason });
    if jobs.iter().any(|j| j.ctx != ctx) {
        return bad("jobs refer to different fields".into());
    }
    let mut spans: Vec<(u128, u128)> = jobs.iter().map(|j| (j.start, j.end)).collect();
    spans.sort_unstable();
    let mut cursor = 1;
    for (a, b) in spans {
        if a >= b {
            return bad(format!("empty interval [{a}, {b})"));
        }
        match a.cmp(&cursor) {
            std::cmp::Ordering::Less => return bad(format!("overlap at {a}")),
            std::cmp::Ordering::Greater => return bad(format!("gap [{cursor}, {a})")),
            std::cmp::Ordering::Equal => cursor = b,
        }
    }
    if cursor != q {
        return bad(format!("coverage ends at {cursor}"));
    }
    let n = ctx.p() as usize;
    let counts = jobs
        .par_iter()
        .map(tally_job)
        .reduce(|| vec![vec![0u128; n]; n], merge);
    let mut table = empty_table(ctx);
    table.counts = counts;
    Ok(table)
}

/// Partitions `[1, q)` across the rayon pool and tallies in parallel.
pub fn tally_parallel(ctx: &FieldCtx) -> Result<TraceCotraceTable> {
    check_guard(ctx, enumeration_guard())?;
    if ctx.q() <= 1 {
        return Ok(empty_table(ctx));
    }
    let jobs: Vec<TallyJob<'_>> = split_range(1, ctx.q(), rayon::current_num_threads() * 4)
        .into_iter()
        .map(|(start, end)| TallyJob { ctx, start, end })
        .collect();
    tally_partitioned(&jobs)
}
