//! Exact-arithmetic engine and arbitrary-precision evaluator for the
//! continued fraction of F(x) = e^x E1(x).
//!
//! The exact layer (`rational`, `poly`, `seriesqd`, `hankelmat`,
//! `convergents`) works entirely over arbitrary-precision rationals and
//! proves its identities by structural equality. The numeric layer
//! (`numeval`) evaluates E1 by three independent routes at explicit
//! precision, and `lfunction` applies it to the first derivative of an
//! elliptic-curve L-series at 1.

pub mod convergents;
pub mod hankelmat;
pub mod lfunction;
pub mod linalg;
pub mod numeval;
pub mod poly;
pub mod rational;
pub mod seriesqd;
