//! Production technologies represented by symmetric transformation functions,
//! the directional technology distance function (DTDF) derived from them, and
//! numerical checks of the properties D1-D6 and F1-F4.
//!
//! * [`technology`]: transformation functions `F`, frontier membership, parameter validation.
//! * [`ddf`]: the DTDF via the constructive solution of problem (P), and D1-D6 checks.
//! * [`quad_translation`]: the translation-restricted quadratic and its failure of D2.
//! * [`oracle`]: brute-force grid references for the DTDF, frontiers and JPF existence.
//!
//! ```
//! use ddfkit::{eval_ddf, Bundle, Direction, QuadraticSeparableParams, TechnologyKind};
//!
//! let tech = TechnologyKind::QuadraticSeparable(QuadraticSeparableParams::figure4());
//! let bundle = Bundle::new(vec![0.5, 0.5], vec![1.0, 1.0]).unwrap();
//! let dir = Direction::new(vec![0.5, 0.5], vec![0.0, 0.0]).unwrap();
//! let beta = eval_ddf(&tech, &bundle, &dir).unwrap().to_f64();
//! assert!((beta - (2.0 * 3f64.sqrt() - 3.0)).abs() < 1e-12);
//! ```

pub mod ddf;
pub mod error;
pub mod oracle;
pub mod order;
pub mod quad_translation;
pub mod report;
pub mod sampling;
pub mod search;
pub mod technology;
pub mod tolerance;

pub use ddf::{check_property, eval_ddf, unsymmetric_t, DProperty, DdfEvaluation, DdfEvaluator, LambdaClass, Method};
pub use error::{Error, Result};
pub use oracle::{grid_ddf, grid_frontier, jpf_existence_check, GridSpec, JpfKind};
pub use order::{compare, Bundle, Direction, ExtendedValue, Relation};
pub use quad_translation::{
    eval_q, homogeneity_deviation, restrict_parameters, FreeQuadraticParams, RestrictedQuadraticParams,
};
pub use report::PropertyReport;
pub use sampling::{SampleConfig, Sampler};
pub use technology::{
    check_technology_property, FrontierKind, PartitionCell, QuadraticSeparableParams, Side, TechProperty,
    TechnologyKind, ValidationReport,
};
