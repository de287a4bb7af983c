//! Expression parsing, surface files and verification reports.

mod checks;
mod parse;
mod report;
mod surface;

pub use checks::{place_label, run_checks};
pub use parse::{parse_bivariate, parse_constant, parse_expression, parse_rational_function, Expression};
pub use report::{CheckRecord, VerificationReport};
pub use surface::{
    load_surface, parse_place, parse_surface, NamedPoint, PointExpectations, QuarticExpectations, SurfaceFile,
    SurfaceModel,
};
