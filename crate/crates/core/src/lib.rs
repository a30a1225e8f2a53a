//! Exact polynomial pipeline for elliptic curve pairs in the family
//! `y^2 = x^4 - (delta^2 + 1/delta^2) x^2 + 1` whose projective torsion
//! images overlap in at least 22 points, with numeric certification of a
//! concrete pair.

pub mod bigpoly;
pub mod curves;
pub mod intersect;
pub mod numcert;
pub mod torfield;
