//! Hyperelliptic periodic diffeomorphisms of closed oriented surfaces.
//!
//! * [`valency`]: total valencies, Nielsen equality, powers and the
//!   hyperelliptic classification.
//! * [`action`]: abelian group actions given by orbifold data, and the three
//!   standard models `G₁`, `G₂`, `G₃`.
//! * [`polygon`]: surfaces glued from regular polygons, and valencies of
//!   polygon rotations read off from vertex links.
//! * [`word`]: free reduction and partial rewriting tables.
//! * [`twist`]: Dehn twist products checked against rotations on
//!   fundamental-group generators.
//! * [`cli`]: the command-line front end.
//!
//! All arithmetic is exact; overflow is reported as an error.

pub mod action;
pub mod arith;
pub mod cli;
pub mod family;
pub mod polygon;
pub mod twist;
pub mod valency;
pub mod word;

pub use action::{classify_pair, make_action, pair_case, quotient_signature, OrbifoldAction, StandardModel};
pub use family::Family;
pub use valency::{
    classify_hyperelliptic, closed_form_tv, nielsen_equal, tv_power, FamilyTag, TagKind, TotalValency, Valency,
};
