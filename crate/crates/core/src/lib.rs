pub mod error;
pub mod numeric;
pub mod monotone;
pub mod tnorm;
pub mod value;
pub mod generated;
pub mod oracle;
pub mod classify;
pub mod cli;
