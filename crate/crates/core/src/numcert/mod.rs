//! High-precision numerics: dyadic floats, complex balls, root isolation,
//! and the certificate of shared torsion images.

pub mod cert;
pub mod complex;
pub mod eval;
pub mod float;
pub mod roots;

pub use cert::{
    build_certificate, common_v_roots, verify_certificate, CertError, CertPoint, CertReport, Certificate, CheckEntry,
    PointValue, Transform, USource,
};
pub use complex::{Complex, ComplexBall};
pub use eval::{eval_ball, eval_complex, specialize};
pub use float::Float;
pub use roots::{roots_balls, roots_univariate, roots_upoly, sort_roots, RootError};
