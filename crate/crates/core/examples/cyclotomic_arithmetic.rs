// Exact arithmetic in Q(ζ_p): Gaussian periods, inverses and embeddings.

use trace_cotrace::cyclotomic::zeta_pow;
use trace_cotrace::CycloNum;

pub fn run(args: &[String]) -> Result<(), Box<dyn std::error::Error>> {
    let p: u64 = args.first().map_or(Ok(5), |s| s.parse())?;
    let z = |k| zeta_pow(k, p);

    let sum = (0..p as i64).try_fold(CycloNum::zero(p), |acc, k| z(k).map(|x| acc + x))?;
    println!("sum of z^k, k < {p}: {sum}");

    let a = z(1)? + z(-1)?;
    let b = z(2)? + z(-2)?;
    println!("a = z + z^-1 = {a} ~ {:.6}", a.to_f64());
    println!("b = z^2 + z^-2 = {b} ~ {:.6}", b.to_f64());
    println!("a * b = {}", &a * &b);

    let x = z(1)? + CycloNum::from_int(2, p);
    let inv = x.invert()?;
    println!("1/(z + 2) = {inv}");
    println!("check: {}", &x * &inv);
    let e = inv.embed_complex();
    let direct = 1.0 / x.embed_complex();
    println!("embedding {e:.6} vs {direct:.6}");
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
