//! Virtual Poincaré polynomials of the semialgebraic classes that arise from
//! plane-curve resolutions.

mod beta;

pub use beta::{chi_c, BetaPoly};
mod curve;

pub use curve::{
    beta_positive_locus, dedup_points, fibre_size, multiplicity_at, place_graph,
    positive_interval_count, reduce_sign_poly, same_point, sample_between, superelliptic_beta,
    PlaceGraph, SignSemantics,
};
mod catalog;

pub use catalog::{
    beta_constructible, beta_curve, beta_sign_recursion, verify_relations, Condition,
    CurveDescriptor, CurveTarget, FormulaAtom, Shape,
};
