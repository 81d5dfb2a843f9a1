// How fast T_ij / q approaches 1/p², next to the proven bounds.
//
// cargo run --example asymptotics -- 2 20

use trace_cotrace::counting::{asymptotic_report, residual_bound};

pub fn run(args: &[String]) -> Result<(), Box<dyn std::error::Error>> {
    let p: u64 = args.first().map_or(Ok(2), |s| s.parse())?;
    let m_max: u32 = args.get(1).map_or(Ok(20), |s| s.parse())?;

    let r = residual_bound(p)?;
    println!("R_{p} = {} ~ {:.6}", r.exact, r.value);
    println!("{:>3} {:>5} {:>12} {:>10} {:>12} {:>12}", "m", "cell", "T", "T/q", "|T-c|", "bound");
    for row in asymptotic_report(p, 1..=m_max)? {
        println!(
            "{:>3} {:>5} {:>12} {:>10.6} {:>12.3} {:>12.3}",
            row.m,
            row.cell.to_string(),
            row.count,
            row.ratio,
            row.deviation,
            row.bound
        );
    }
    println!("limit 1/p^2 = {:.6}", 1.0 / (p * p) as f64);
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
