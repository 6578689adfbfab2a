pub mod surface_group;
pub mod hyperbolic;
pub mod mapping_class;
pub mod curve_calculus;
pub mod complex_engine;
pub mod pants_trivalent;
pub mod cayley_audit;
pub mod cli_io;
