//! HOMFLY polynomials from oriented planar diagrams, Wilson loops at roots
//! of unity, and symmetric-power traces of holonomies.
//!
//! Skein convention: `a P(L+) - a^-1 P(L-) = z P(L0)` with the unknot
//! normalized to 1. Diagrams are evaluated as given, without any writhe
//! correction.

mod diagram;
mod skein;
mod symtrace;
mod wilson;

pub use diagram::{parse_pd, Crossing, LinkDiagram};
pub use skein::{
    homfly, homfly_ring, homfly_with, skein_holds_at, HomflyEngine, HomflyOptions,
    ResolutionStrategy,
};
pub use symtrace::{
    complete_homogeneous, inverse_determinant_series, symmetric_trace_series, HolonomySpectrum,
    TRACE_VAR,
};
pub use wilson::{cyclotomic, wilson_from_homfly, wilson_loop, wilson_loop_with, WilsonLoop};

/// Bundled diagrams as `(name, PD text)`.
pub const BUNDLED: &[(&str, &str)] = &[
    ("trefoil", include_str!("../../data/trefoil.pd")),
    ("trefoil_kink", include_str!("../../data/trefoil_kink.pd")),
    ("unknot_kink", include_str!("../../data/unknot_kink.pd")),
    ("hopf", include_str!("../../data/hopf.pd")),
    ("unlink2", include_str!("../../data/unlink2.pd")),
    ("figure_eight", include_str!("../../data/figure_eight.pd")),
];

/// A bundled diagram by name.
pub fn bundled(name: &str) -> Option<LinkDiagram> {
    BUNDLED
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, text)| parse_pd(text).expect("bundled diagrams are valid"))
}
