//! Integral homology of real flag manifolds from Schubert cell complexes,
//! together with the geometry of line triples in projective space, the
//! quaternion cover of the Klein rotation group, and the Serre E₂ page of
//! the bundle of line triples in RP³ over RP³.
//!
//! The pipeline for homology is [`weyl`] (cell labels and Bruhat covers) →
//! [`schubert`] (the integer cellular chain complex) → [`homalg`] (Smith
//! normal form and homology).

pub mod cli;
pub mod geometry;
pub mod homalg;
pub mod quotient_models;
pub mod report;
pub mod schubert;
pub mod spectral;
pub mod verify;
pub mod weyl;
