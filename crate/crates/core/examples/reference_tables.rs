// Recomputes the reference tables for p = 2, 3, 5 and reports each cell.

use trace_cotrace::counting::full_table;
use trace_cotrace::golden::{self, GoldenTable};

pub fn run(_args: &[String]) -> Result<(), Box<dyn std::error::Error>> {
    let mut checked = 0;
    let mut wrong = 0;
    for g in &golden::ALL {
        println!("p = {}", g.p);
        for (k, &m) in g.ms.iter().enumerate() {
            let table = full_table(g.p, m)?;
            let mut line = format!("  m={m:<3}");
            for (r, label) in g.cells.iter().enumerate() {
                let (i, j) = GoldenTable::cell_index(label);
                let got = table.get(i, j);
                let mark = if got == g.values[r][k] { "" } else { "*" };
                wrong += usize::from(!mark.is_empty());
                checked += 1;
                line += &format!(" {label}={got}{mark}");
            }
            println!("{line}");
        }
    }
    println!("{checked} cells, {wrong} differ");
    if wrong > 0 {
        return Err("reference mismatch".into());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    if let Err(e) = run(&[]) {
        eprintln!("error: {e}");
        std::process::exit(1);
    }
}
