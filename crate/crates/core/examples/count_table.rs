// Full trace/co-trace table for one field, from the Kloosterman system.
//
// cargo run --example count_table -- 5 4

use trace_cotrace::counting::{build_system, full_table};

pub fn run(args: &[String]) -> Result<(), Box<dyn std::error::Error>> {
    let p: u64 = args.first().map_or(Ok(3), |s| s.parse())?;
    let m: u32 = args.get(1).map_or(Ok(4), |s| s.parse())?;

    let system = build_system(p, m)?;
    println!("system for p={p} m={m}, row u: sum_s (K(us)+p+1) t_s = K^(m)(u)+q+1");
    for (u, (row, rhs)) in system.matrix.iter().zip(&system.rhs).enumerate() {
        let cells: Vec<String> = row.iter().map(|c| format!("({c})")).collect();
        println!("  u={}: {} | {rhs}", u + 1, cells.join(" "));
    }

    let table = full_table(p, m)?;
    println!("T_ij over F_{}^{m} (q = {}), modulus {:?}", p, table.q, table.modulus);
    for row in &table.counts {
        let cells: Vec<String> = row.iter().map(|t| format!("{t:>8}")).collect();
        println!("{}", cells.join(""));
    }
    println!("T1s = {:?}, total = {}", table.t1s(), table.total());
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
