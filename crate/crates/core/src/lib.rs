//! Maximal edge removal preserving the Ramanujan property for circulant
//! graphs of odd order, and for Cayley graphs of odd abelian groups.
//!
//! Numeric code is generic over [`scalar::Real`]; `f64` drives fast scans and
//! [`ExtReal`] settles comparisons too close for double precision.

pub mod abelian;
pub mod bounds;
pub mod classify;
pub mod error;
pub mod golden;
pub mod numtheory;
pub mod oracle;
pub mod scalar;
pub mod spectra;
pub mod tables;

pub use abelian::{abelian_hat_l, AbelianCayleySet, AbelianGroup};
pub use bounds::{in_j, trivial_bound};
pub use classify::{classify, classify_factored, classify_with, Class, MKind, Verdict};
pub use error::{Error, Result};
pub use oracle::OracleConfig;
pub use numtheory::{factorize, is_prime, Factorization};
pub use spectra::{
    eigenvalue, is_ramanujan, mu_sl_closed, sl_complement, spectrum, CayleySet, Decision, Modulus,
    NumericPolicy, RamanujanCheck, Spectrum,
};

/// Extended-precision scalar (IEEE 754 octuple precision, about 71 digits).
pub type ExtReal = scalar::f256;

pub type Spectrum64 = Spectrum<f64>;
pub type SpectrumExt = Spectrum<ExtReal>;
