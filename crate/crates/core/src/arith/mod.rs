//! Exact arithmetic: integers, rational and modular polynomials, p-adic
//! factorization and factorization over number fields.

pub mod factor_q;
pub mod hensel;
pub mod int;
pub mod linalg;
pub mod modp;
pub mod nf_poly;
pub mod order;
pub mod padic;
pub mod poly;
