//! Circular-arc drawings in the plane and in space: representation,
//! inversion, explicit constructions, verification, and SVG export.

mod construct;
mod drawing;
mod kernel;
mod svg;
mod verify;

pub use construct::{
    book_to_spheres, complete_book, construction, cube_four_arcs, icosahedron_seven_circles,
    kpq_circle_drawing, nested_triangles_drawing, segment_drawing, validate_book,
};
pub use drawing::{invert, sweep_between, Arc, Circle3, Curve, Drawing, Sphere, Support, Sweep};
pub use kernel::{circle_through, circle_through3, meet, Carrier, GenCircle2, Meet, P3};
pub use svg::{svg_export, SvgOptions};
pub use verify::{verify_drawing, Issue, IssueKind, VerificationReport, DEFAULT_TOLERANCE};

#[cfg(test)]
mod tests;
