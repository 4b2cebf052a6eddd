pub mod expr;
pub mod registry;
