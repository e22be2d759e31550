pub mod cases;
pub mod cluster;
pub mod dynkin;
pub mod laurent;
pub mod linalg;
pub mod nmatrix;
pub mod phi;
pub mod prepmod;
