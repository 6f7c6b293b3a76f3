//! Data files shipped with the crate.

/// Parametric bases for every catalogued degeneration.
pub const WITNESSES: &str = include_str!("../data/table_c.wit");

/// Non-degeneration claims with their closed sets.
pub const CLAIMS: &str = include_str!("../data/table_d.cert");

/// Reference edge list of the published degeneration diagram.
pub const REFERENCE_EDGES: &str = include_str!("../data/figure_b.edges");
