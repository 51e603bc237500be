//! Secondary structures and their abstractions.

mod dotbracket;
mod elements;
mod generate;
mod shapes;

pub use dotbracket::{SecondaryStructure, StructureError};
pub use elements::{
    analyze_elements, Bulge, ElementReport, Hairpin, InteriorLoop, Multiloop, Pair, Run, Stack,
};
pub use generate::{
    generate_island_diagrams, generate_island_diagrams_with_limit, GenerateError,
    MAX_ISLAND_PAIRS,
};
pub use shapes::{
    to_island_diagram, to_pi, to_pi_prime, IslandDiagram, IslandStats, PiPrimeShape, PiShape,
    PiStats, ShapeError,
};

/// Hairpins, multiloops and components of a pi-shape.
pub fn pi_stats(shape: &PiShape) -> PiStats {
    shape.stats()
}
