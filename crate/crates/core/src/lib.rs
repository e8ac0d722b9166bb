//! Classification of reduction types (ordinary / Hodge-Witt /
//! non-Hodge-Witt) for CM abelian varieties, products of elliptic curves,
//! and Fermat hypersurfaces at primes, with the matching Chebotarev
//! densities computed both from conjugacy-class data and by scanning
//! primes.
//!
//! The crate is organized by subject:
//!
//! - [`ffpoly`]: polynomial factorization over F_p
//! - [`numfield`]: residue field degree sequences and split classes
//! - [`cm`]: reduction-type verdicts and the product criterion
//! - [`polygons`]: Newton/Hodge polygons and the trace checks
//! - [`elliptic`]: point counts, supersingular searches, product surfaces
//! - [`density`]: group class tables, prime scans, density reports
//! - [`fermat`]: the table-driven Fermat hypersurface classifier
//! - [`catalog`]: the bundled example fields and curves
//!
//! All polygon slopes and densities are exact rationals; nothing in the
//! classification path goes through floating point.

pub mod arith;
pub mod catalog;
pub mod cm;
pub mod density;
pub mod elliptic;
pub mod error;
pub mod fermat;
pub mod ffpoly;
pub mod numfield;
pub mod polygons;

pub use cm::{FactorStatus, ReductionType};
pub use density::{DensityReport, GroupClassTable, ScanOptions, ScanOutput, ScanRow, ScanTarget};
pub use elliptic::{EllipticCurveQ, SearchOutcome};
pub use error::{Error, Result};
pub use fermat::{FermatDensities, FermatSpec};
pub use ffpoly::PolyModP;
pub use numfield::{NumberField, SplitClass, SplittingPattern};
pub use polygons::{Polygon, TraceDatum, Valuation};
