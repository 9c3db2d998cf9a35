//! Secrecy limits of Gaussian and quasi-static Rayleigh-fading wiretap channels.
//!
//! The crate is organised bottom-up:
//!
//! * [`special_math`]: modified Bessel `I0`, Marcum `Q1`, monotone bisection,
//!   golden-section search and semi-infinite quadrature.
//! * [`channel_model`]: channel configuration types and the seeded fading sampler.
//! * [`secrecy`]: closed-form and numerically-defined secrecy quantities.
//! * [`monte_carlo`]: seeded simulation oracle for every closed form, plus the
//!   imperfect-CSI throughputs that have no closed form.
//!
//! All SNRs are linear; rates are in bits per complex channel use.

pub mod channel_model;
mod error;
pub mod exec;
pub mod monte_carlo;
pub mod secrecy;
pub mod special_math;

pub use channel_model::{
    from_db, gbar_from_geometry, sample_joint, sample_snr, to_db, ChannelPair, EstimationModel,
    FadingDraw, Geometry, SeededStream,
};
pub use error::{Error, Result};
pub use exec::Backend;
pub use monte_carlo::{ImperfectCsiReport, McConfig, McReport};
pub use secrecy::{OutageQuery, SecrecyRate};
pub use special_math::Tolerance;
