//! Desarguesian projective planes PG(2,q) and the combinatorics of their
//! incidence graphs: resolving sets, semi-resolving sets, blocking sets,
//! semiovals, exact minimum searches, and Redei-polynomial machinery over
//! GF(q).
//!
//! The crate is organised around a small pipeline:
//!
//! * [`galois`] — exact arithmetic in GF(p^h), subfield embeddings and the
//!   cubic extension GF(q^3) used by Singer cycles;
//! * [`plane`] — PG(2,q) as a canonically indexed incidence structure with
//!   duality, collineations and Singer cycles;
//! * [`resolve`] — verifiers: distance lists, resolving / semi-resolving /
//!   split checks, secant profiles, point indices, semiovals;
//! * [`construct`] — generators for the explicit constructions (the 4q-4
//!   mixed sets and their 32-completion catalogue, hyperovals, Baer
//!   subplanes, vertexless triangles, ...), each self-verified;
//! * [`search`] — exhaustive and branch-and-bound searches for metric
//!   dimension, minimum semi-resolving sets and double blocking sets;
//! * [`redei`] — polynomials over GF(q), Redei polynomials of affine point
//!   sets and gcd-degree profiles;
//! * [`cert`] — the canonical JSON certificate format shared with the CLI.
//!
//! All structures are immutable once built and safe to share across threads.

pub mod cert;
pub mod construct;
pub mod galois;
pub mod plane;
pub mod redei;
pub mod resolve;
pub mod search;
pub mod util;
