#![allow(dead_code)]

use dirlat::ratcore::{rat, Rat, RatMat};

pub fn grid_values() -> Vec<Rat> {
    vec![rat(0, 1), rat(1, 2), rat(1, 1)]
}

/// Every `rows x cols` matrix with entries in `values`, in a fixed order.
pub fn all_matrices(rows: usize, cols: usize, values: &[Rat]) -> Vec<RatMat> {
    let cells = rows * cols;
    let total = values.len().pow(cells as u32);
    (0..total)
        .map(|mut code| {
            let mut m = RatMat::zeros(rows, cols);
            for cell in 0..cells {
                m.set(cell / cols, cell % cols, values[code % values.len()].clone());
                code /= values.len();
            }
            m
        })
        .collect()
}
