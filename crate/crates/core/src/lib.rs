pub mod bisim;
pub mod boolean;
pub mod cli;
pub mod format;
pub mod model;
pub mod overlap;
pub mod prop;
pub mod random;
pub mod semantics;
pub mod skolem;
pub mod solver;
pub mod syntax;
