//! DP-coloring (correspondence coloring) engine and discharging auditor for
//! plane graphs.
//!
//! The crate has five working parts:
//!
//! * [`plane_graph`] — plane graphs given by a rotation system: face tracing,
//!   fixed-length cycle enumeration, triangle distance, separating cycles,
//!   chords, vertex identification, and classification of 9-cycles against
//!   the built-in "bad 9-cycle" templates.
//! * [`dp_cover`] — list assignments, per-edge matching assignments, cover
//!   graphs, straightening (list renaming), and residual lists.
//! * [`solver`] — exact decision procedures: find an `M_L`-coloring, extend a
//!   precoloring of an outer cycle, and certify DP-k-colorability by
//!   adversarial enumeration of matching assignments.
//! * [`reducibility`] — the near-2-degenerate ordering check, the constructive
//!   greedy extension, a brute-force reducibility oracle, the built-in
//!   configuration library, and replayable identification arguments.
//! * [`discharging`] — exact half-integer charge ledgers, the two built-in
//!   rule systems, structural tags, and the outer-face audit.
//!
//! Everything is exact: charges are stored as doubled integers, and all
//! colorability verdicts come from exhaustive search, never sampling, unless a
//! sampling mode is explicitly requested.

pub mod configuration;
pub mod discharging;
pub mod dp_cover;
pub mod graph;
pub mod plane_graph;
pub mod reducibility;
pub mod samples;
pub mod solver;

/// Vertex identifier. Nonnegative integers, as in the JSON graph format.
pub type Vertex = u32;

/// Color identifier. Small nonnegative integers; canonical instances use
/// `1..=k`.
pub type Color = u8;

/// An unordered edge, normalized so the smaller endpoint comes first.
pub type Edge = (Vertex, Vertex);

/// Normalizes an edge to `(min, max)` form.
pub fn edge(u: Vertex, v: Vertex) -> Edge {
    if u <= v {
        (u, v)
    } else {
        (v, u)
    }
}
