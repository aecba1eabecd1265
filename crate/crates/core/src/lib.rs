pub mod ff;
pub mod ring;
pub mod series;
pub mod linalg;
pub mod mpoly;
pub mod semilinear;
pub mod npoly;
pub mod btgroup;
pub mod gltheory;
pub mod monodromy;
pub mod strata;
pub mod json;
