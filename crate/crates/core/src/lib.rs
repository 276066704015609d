//! Finite-model toolkit for choice under limited consideration.
//!
//! Alternatives live in a [`Universe`] of at most [`MAX_UNIVERSE_CAP`]
//! names. Menus are bitmasks over it, and a [`Filter`] maps every menu to
//! the subset a decision maker actually considers. On top of that sit
//! checkers for filter properties ([`axioms`]), sequential composition
//! ([`sequential`]), a rational-attention filter chooser ([`attention`]),
//! and threshold representations with WARP audits of choice data
//! ([`representation`]).

pub mod attention;
pub mod axioms;
pub mod cli;
pub mod dataset;
pub mod error;
pub mod filter;
pub mod ordered;
pub mod preference;
pub mod report;
pub mod representation;
pub mod sampling;
pub mod sequential;
pub mod universe;

pub use attention::{
    check_convex_cost, check_preference_for_flexibility, choose_filter, evaluate_filter_utility,
    verify_costless_full_consideration, verify_remark1, verify_worthless_consideration, FilterSpace,
    FilterUtilityModel,
};
pub use axioms::{
    check_condition_tau, check_constant_number, check_dio, check_dio_all, check_io, check_sens_alpha, check_sens_beta,
    verify_theorem1, BetaVariant, Property, PropertyReport, Witness,
};
pub use dataset::{check_choice_membership, ChoiceDataset};
pub use error::{Error, Result};
pub use filter::{apply_filter, build_filter, Filter, Rule};
pub use ordered::{OrderedFilter, OrderedMenu, OrderedRule};
pub use preference::{choose, Preference};
pub use report::{Finding, Mode, TheoremReport};
pub use representation::{
    check_warp, check_warp_co, check_warp_io, construct_threshold_representation, induced_filter,
    rationalizability_oracle, threshold_choice, verify_theorem6, AggregateUtility, ThresholdRepresentation, WarpAxiom,
    WarpReport, WarpViolation,
};
pub use sequential::{
    check_commutative2, check_commutative_n, compose2, compose_n, verify_theorem2, verify_theorem3,
    CommutativityReport, Direction, FilterSequence,
};
pub use universe::{enumerate_menus, Alt, Menu, Universe, DEFAULT_UNIVERSE_CAP, MAX_UNIVERSE_CAP};
