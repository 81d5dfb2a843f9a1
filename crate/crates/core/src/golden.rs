//! Reference values of T_ij for characteristics 2, 3 and 5.

/// One published table: for each m, the listed cells in row order.
#[derive(Debug, Clone, Copy)]
pub struct GoldenTable {
    pub p: u64,
    pub ms: &'static [u32],
    /// Row labels, e.g. "T00".
    pub cells: &'static [&'static str],
    /// `values[r][k]` is cell `cells[r]` at `ms[k]`.
    pub values: &'static [&'static [u128]],
}

impl GoldenTable {
    /// (i, j) indices of a row label such as "T12".
    pub fn cell_index(label: &str) -> (u64, u64) {
        let b = label.as_bytes();
        ((b[1] - b'0') as u64, (b[2] - b'0') as u64)
    }

    pub fn cell_count(&self) -> usize {
        self.cells.len() * self.ms.len()
    }
}

pub const TABLE_1: GoldenTable = GoldenTable {
    p: 2,
    ms: &[2, 3, 4, 5, 6, 7, 8, 9, 10],
    cells: &["T00", "T01", "T11"],
    values: &[
        &[1, 0, 3, 10, 13, 28, 71, 126, 241],
        &[0, 3, 4, 5, 18, 35, 56, 129, 270],
        &[2, 1, 4, 11, 14, 29, 72, 127, 242],
    ],
};

pub const TABLE_2: GoldenTable = GoldenTable {
    p: 3,
    ms: &[1, 2, 3, 4, 5, 6],
    cells: &["T00", "T01", "T11", "T12"],
    values: &[
        &[0, 2, 2, 10, 20, 68],
        &[0, 0, 3, 8, 30, 87],
        &[1, 1, 0, 13, 31, 72],
        &[0, 2, 6, 6, 20, 84],
    ],
};

pub const TABLE_3: GoldenTable = GoldenTable {
    p: 5,
    ms: &[1, 2, 3, 4, 5, 6],
    cells: &["T00", "T01", "T11", "T12", "T13", "T14"],
    values: &[
        &[0, 4, 0, 28, 164, 628],
        &[0, 0, 6, 24, 115, 624],
        &[1, 2, 0, 21, 120, 601],
        &[0, 0, 6, 38, 130, 590],
        &[0, 2, 6, 16, 140, 660],
        &[0, 1, 7, 26, 120, 650],
    ],
};

pub const ALL: [GoldenTable; 3] = [TABLE_1, TABLE_2, TABLE_3];
