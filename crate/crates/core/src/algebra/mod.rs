//! Exact scalars and the sparse polynomial ring Q[l, x, y, t].

mod poly;
mod rat;

pub use poly::{parse_binding, Bindings, Monomial, Poly, Var};
pub use rat::Rat;
