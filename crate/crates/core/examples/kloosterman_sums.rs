// Exact Kloosterman sums over F_p, their lifts to F_{p^m}, and a
// floating-point cross-check by direct summation over the field.
//
// cargo run --release --example kloosterman_sums -- 5 3

use trace_cotrace::kloosterman::{check_lehmer, kloosterman_direct, weil_bound, KloostermanProfile};
use trace_cotrace::FieldCtx;

pub fn run(args: &[String]) -> Result<(), Box<dyn std::error::Error>> {
    let p: u64 = args.first().map_or(Ok(5), |s| s.parse())?;
    let m: u32 = args.get(1).map_or(Ok(3), |s| s.parse())?;

    let profile = KloostermanProfile::new(p, m)?;
    let ctx = FieldCtx::new(p, m as usize)?;
    let bound = weil_bound(ctx.q());
    for u in 1..p {
        let lifted = profile.lifted(u);
        let direct = kloosterman_direct(u, &ctx)?;
        println!("K({u}) = {}", profile.prime(u));
        println!(
            "  K^({m})({u}) = {lifted} ~ {:.6}, direct {:.6}, |.| <= {bound:.3}",
            lifted.to_f64(),
            direct.re
        );
    }

    let report = check_lehmer(p)?;
    for c in &report.checks {
        println!("{}: {} ({})", c.name, if c.passed { "ok" } else { "FAILED" }, c.detail);
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
