//! Exact stabilizer computations for the toric code on a half-plane with a
//! smooth boundary.

pub mod category;
pub mod check;
pub mod duality;
pub mod error;
pub mod gf2;
pub mod groundstate;
pub mod lattice;
pub mod pauli;
pub mod sampling;
pub mod sectors;
pub mod strings;
mod text;

pub use error::{Error, Result};
pub use lattice::{Bond, ConeRegion, Direction, Face, Orientation, Region, Stabilizer, Vertex, Window};
pub use pauli::{PauliOp, Sign};
pub use groundstate::{eval_ground, eval_ground_dense, eval_ground_gf2, GroundValue, MarginPolicy};
pub use strings::{connect_x, connect_z, enclosing_loop, Anchor, FinitePath, Kind, RayPath, Ribbon, Step, XEnd, XPath, ZPath};
pub use check::CheckOutcome;
pub use sectors::{apply_auto, canonical_pair, canonical_window, condensation_suite, SamplingPlan, intertwiner_approx, sector_state, tensor_compose, verify_intertwiner, BoundaryLabel, BulkLabel, Sector, SectorState};
pub use category::{bulk_braiding_scalar, bulk_to_boundary, fuse_boundary, fuse_bulk, half_braiding_scalar, verify_braided_functor, verify_selfdual_zigzag, FunctorTable, Geometry, HalfBraidingObject};
pub use duality::{
    build_f0_family, canonical_factorization, index_two_check, reroute_to_region, rvd_density_check,
    split_isometry_check, Factorization, GramCertificate, IndexReport, OperatorFamily,
};
