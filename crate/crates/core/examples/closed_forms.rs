// Explicit formulas in characteristics 2, 3 and 5 next to the counts from
// the general solver.

use trace_cotrace::counting::{char3_expressions, char5_expressions, closed_form_char2, full_table, phi_q5};

pub fn run(args: &[String]) -> Result<(), Box<dyn std::error::Error>> {
    let m_max: u32 = args.first().map_or(Ok(8), |s| s.parse())?;

    println!("p=2: (T00, T01, T11)");
    for m in 1..=m_max {
        let t = full_table(2, m)?;
        let formula = closed_form_char2(m)?;
        println!("  m={m:<2} formula {formula:?} table {:?}", (t.get(0, 0), t.get(0, 1), t.get(1, 1)));
    }

    println!("p=3: (T11, T12, T00, T01)");
    for m in 1..=m_max {
        let t = full_table(3, m)?;
        let e = char3_expressions(m)?;
        let vals: Vec<String> = e.iter().map(ToString::to_string).collect();
        println!(
            "  m={m:<2} formula ({}) table ({}, {}, {}, {})",
            vals.join(", "),
            t.get(1, 1),
            t.get(1, 2),
            t.get(0, 0),
            t.get(0, 1)
        );
    }

    // with phi = z + z^4 the four rows come out as T14, T13, T12, T11
    println!("p=5: rows with phi = z + z^4, then T00 and T01");
    let phi = phi_q5();
    for m in 1..=m_max {
        let t = full_table(5, m)?;
        let e = char5_expressions(m, &phi)?;
        let rows: Vec<String> = e.rows.iter().map(ToString::to_string).collect();
        println!(
            "  m={m:<2} rows ({}) T1s {:?} T00 {} T01 {}",
            rows.join(", "),
            t.t1s(),
            e.t00_derived,
            e.t01
        );
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
