//! Exact computation with finite groupoids and their representations.
//!
//! The crate implements, with exact rational arithmetic, the two-way
//! correspondence between representations of a finite groupoid `G ⇉ M` and
//! semi-linear, local representations of two groups attached to it: the
//! bisection group `Bis(G)` acting on sections `Γ(E)` of a bundle over the
//! objects, and the self-map group `S_G(α)` acting on sections `Γ(α*E)` of
//! the pullback bundle over the arrows.
//!
//! Module map:
//!
//! * [`groupoid`] — the groupoid data model, axioms and standard builders;
//! * [`linear`] — rational matrices, bundles, sections, frame arrows;
//! * [`bisections`] / [`selfmaps`] — the groups `Bis(G)` and `S_G(α)`;
//! * [`semilinear`] — semi-linear maps and the chain
//!   `Bis(Φ(E)) ≅ Aut(E) ≅ SL(Γ(E))`;
//! * [`transfer`] — induction, recovery, restriction and functorial
//!   transfer of intertwiners;
//! * [`textio`] — the `.gpd`/`.grep` text formats, JSON and DOT export;
//! * [`gen`] — random exact test data.
//!
//! All values are immutable after construction and safe to share across
//! threads. Enumerations may parallelise internally; set
//! `GROUPOIDREP_THREADS` to cap the thread count. Results are returned in a
//! canonical sorted order either way.

// Index-style loops mirror the pointwise formulas they implement.
#![allow(clippy::needless_range_loop)]

pub mod bisections;
pub mod error;
pub mod gen;
pub mod groupoid;
pub mod linear;
pub mod selfmaps;
pub mod semilinear;
pub mod textio;
pub mod transfer;

pub use error::{Error, Result, ValidationReport, Violation};
pub use groupoid::{ActionTable, ArrId, FiniteGroupoid, GroupTable, ObjId};
pub use linear::{
    pullback_bundle, pullback_section, BundleAutomorphism, BundleMorphism, FrameArrow, Matrix,
    Scalar, Section, VectorBundle,
};
pub use bisections::Bisection;
pub use selfmaps::{SelfMap, SgUnitGroup};
pub use semilinear::{AbstractSectionMap, FrameBisection, SemiLinearMap};
pub use transfer::{BisRep, GroupoidRep, RecoveredFromSg, RepMorphism, SgRep};

/// Default guard on the raw `S_G(α)` search space.
pub const DEFAULT_SELFMAP_SPACE_BOUND: u128 = 1_000_000;

/// Builds the global thread pool once, honouring `GROUPOIDREP_THREADS`.
/// Without the variable rayon's default sizing applies.
pub(crate) fn ensure_thread_pool() {
    static INIT: std::sync::Once = std::sync::Once::new();
    INIT.call_once(|| {
        if let Some(n) = std::env::var("GROUPOIDREP_THREADS")
            .ok()
            .and_then(|v| v.parse::<usize>().ok())
            .filter(|&n| n >= 1)
        {
            let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
        }
    });
}
