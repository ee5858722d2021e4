mod ambient;
mod group;
mod matrix;

pub use ambient::LinearGroupSpec;
pub use group::{closure, default_cap, ElementaryAbelian, EnumeratedGroup, Subgroup, DEFAULT_CAP, TABLE_LIMIT};
pub use matrix::{Matrix, MatrixContext, MAX_DIM};
