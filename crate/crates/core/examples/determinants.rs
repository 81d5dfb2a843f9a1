// Determinants of the circulant Kloosterman matrices K and K' for every
// prime up to a limit, exactly and from the circulant eigenvalues.
//
// cargo run --release --example determinants -- 31

use trace_cotrace::circulant::{kloosterman_matrix, system_matrix};
use trace_cotrace::kloosterman::KloostermanProfile;
use trace_cotrace::prime_field::{is_prime, primitive_root};

pub fn run(args: &[String]) -> Result<(), Box<dyn std::error::Error>> {
    let limit: u64 = args.first().map_or(Ok(13), |s| s.parse())?;
    println!("{:>3} {:>3} {:>40} {:>40} {:>10}", "p", "g", "det K", "det K'", "eigen err");
    for p in (2..=limit).filter(|&p| is_prime(p)) {
        let g = primitive_root(p)?.value();
        let profile = KloostermanProfile::new(p, 1)?;
        let k = system_matrix(&profile, g)?;
        let kp = kloosterman_matrix(&profile, g)?;
        let (dk, dkp) = (k.det_exact(), kp.det_exact());
        let exact = dk.as_integer().ok_or("det K is not an integer")?;
        let eigen = k.det_eigen();
        let rel = (eigen.re - dk.to_f64()).abs() / dk.to_f64().abs();
        println!("{p:>3} {g:>3} {exact:>40} {:>40} {rel:>10.2e}", dkp.as_integer().ok_or("det K' is not an integer")?);
        let p2 = trace_cotrace::CycloNum::from_int((p * p) as i64, p);
        if dk != &p2 * &dkp {
            return Err(format!("det K != p^2 det K' at p={p}").into());
        }
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
