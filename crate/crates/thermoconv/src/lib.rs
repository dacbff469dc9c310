pub mod approx;
pub mod arith;
pub mod asymptotics;
pub mod cli;
pub mod compressed;
pub mod dist;
pub mod error;
pub mod iid;
pub mod majorize;
pub mod normal;
pub mod quadrature;
pub mod rayleigh;
pub mod thermo;
