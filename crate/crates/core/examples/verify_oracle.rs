// Closed-form counts against brute-force enumeration, with the enumeration
// split into explicit jobs.
//
// cargo run --release --example verify_oracle -- 7 3 4

use trace_cotrace::counting::full_table;
use trace_cotrace::oracle::{split_range, tally_partitioned, TallyJob};
use trace_cotrace::FieldCtx;

pub fn run(args: &[String]) -> Result<(), Box<dyn std::error::Error>> {
    let p: u64 = args.first().map_or(Ok(5), |s| s.parse())?;
    let m: u32 = args.get(1).map_or(Ok(4), |s| s.parse())?;
    let parts: usize = args.get(2).map_or(Ok(3), |s| s.parse())?;

    let ctx = FieldCtx::new(p, m as usize)?;
    let jobs: Vec<TallyJob<'_>> = split_range(1, ctx.q(), parts)
        .into_iter()
        .map(|(start, end)| TallyJob { ctx: &ctx, start, end })
        .collect();
    for job in &jobs {
        println!("job [{}, {})", job.start, job.end);
    }
    let brute = tally_partitioned(&jobs)?;
    let closed = full_table(p, m)?;

    let mut diffs = 0;
    for i in 0..p {
        for j in 0..p {
            if brute.get(i, j) != closed.get(i, j) {
                diffs += 1;
                println!("T{i}{j}: oracle {} closed {}", brute.get(i, j), closed.get(i, j));
            }
        }
    }
    println!("p={p} m={m}: {diffs} of {} cells differ", p * p);
    if diffs > 0 {
        return Err("mismatch".into());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    if let Err(e) = run(&args) {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
