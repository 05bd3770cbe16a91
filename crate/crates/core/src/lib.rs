//! Exact verification of WZ-pair identities and supercongruences modulo
//! prime powers.
//!
//! The crate is layered bottom-up: [`exactnum`] (rationals, valuations,
//! residue rings), [`combinat`] (binomials, Pochhammer symbols, harmonic and
//! Euler numbers), [`term`] (hypergeometric terms as data), [`wz`] (the
//! registered pairs), [`congruences`] (the case catalog) and [`harness`]
//! (sweeps, reports, baselines).

pub mod combinat;
pub mod congruences;
pub mod exactnum;
pub mod harness;
pub mod term;
pub mod wz;
