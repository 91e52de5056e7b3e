//! Intersection numbers of the cycles `Sigma_Lambda` on `X[r,s]_l^l`.

mod intersect;
mod series;

pub use intersect::{
    a_matrix, a_matrix_det_formula, excess_series, intersection_number_11,
    intersection_number_11_in, intersection_number_lc, intersection_number_lc_in, neg_pow,
    CyclePair, GramTables,
};
pub use series::TruncSeries;
