//! Trivial 3-webs formed by confocal conics and Apollonian circle pencils
//! with foci `(-1, 0)` and `(1, 0)`.
//!
//! - [`focal`]: focal distances, the coordinate functions `f, g, h, e`
//!   and their level curves.
//! - [`webs`]: the four chart maps straightening the webs, their inverses
//!   and Jacobians.
//! - [`tangency`]: scaled pencil circles and the conic they touch.
//! - [`verify`]: seeded numerical checks producing JSON-ready reports.
//! - [`viz`]: SVG figures of lattice images and tangency configurations.

pub mod error;
pub mod focal;
pub mod tangency;
pub mod verify;
pub mod viz;
pub mod webs;

pub use error::{Error, Result};
pub use focal::{CurveDescriptor, Family, FocalMeasures, Point};
pub use verify::VerificationReport;
pub use webs::{Direction, WebCoords, WebId};
