pub mod axiom;
pub mod expr;
pub mod psi;
pub mod scalar;
pub mod tnorm;
pub mod space;
pub mod sequence;
pub mod maps;
pub mod conditions;
pub mod instance;
pub mod engine;
pub mod profile;
pub mod verify;
pub mod corpus;
pub mod oracle;
