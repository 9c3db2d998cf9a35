//! Wiretap channel configuration and the seeded Rayleigh fading sampler.
//!
//! Fading coefficients are standard circularly-symmetric complex Gaussians with
//! unit total variance (½ per real component), so `|h|²` is a unit-mean
//! exponential and `γ = γ̄ |h|²`. Alice's estimate of the wiretap coefficient is
//! `ĥ_W = h_W + δ_W`, with `σ²` variance in each real component of `δ_W`.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Exp1, StandardNormal};

use crate::error::{require_finite, Error, Result};

/// Average SNRs (linear) of the main (Alice→Bob) and wiretap (Alice→Eve) channels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelPair {
    gbar_m: f64,
    gbar_w: f64,
}

impl ChannelPair {
    pub fn new(gbar_m: f64, gbar_w: f64) -> Result<Self> {
        positive("gbar_m", gbar_m)?;
        positive("gbar_w", gbar_w)?;
        Ok(Self { gbar_m, gbar_w })
    }

    /// Builds a pair from average SNRs in dB.
    pub fn from_db(gbar_m_db: f64, gbar_w_db: f64) -> Result<Self> {
        Self::new(from_db(gbar_m_db), from_db(gbar_w_db))
    }

    pub fn gbar_m(&self) -> f64 {
        self.gbar_m
    }

    pub fn gbar_w(&self) -> f64 {
        self.gbar_w
    }
}

/// Terminal placement under a power-law pathloss `γ̄ = snr_at_unit_distance / d^α`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Geometry {
    d_m: f64,
    d_w: f64,
    alpha: f64,
    snr_at_unit_distance: f64,
}

impl Geometry {
    pub fn new(d_m: f64, d_w: f64, alpha: f64, snr_at_unit_distance: f64) -> Result<Self> {
        positive("d_m", d_m)?;
        positive("d_w", d_w)?;
        positive("alpha", alpha)?;
        positive("snr_at_unit_distance", snr_at_unit_distance)?;
        Ok(Self {
            d_m,
            d_w,
            alpha,
            snr_at_unit_distance,
        })
    }

    pub fn d_m(&self) -> f64 {
        self.d_m
    }

    pub fn d_w(&self) -> f64 {
        self.d_w
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn snr_at_unit_distance(&self) -> f64 {
        self.snr_at_unit_distance
    }
}

/// Error model of Alice's estimate of the wiretap coefficient.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EstimationModel {
    sigma2: f64,
}

impl EstimationModel {
    /// `sigma2` is the variance of each real component of the estimation error.
    pub fn new(sigma2: f64) -> Result<Self> {
        require_finite("sigma2", sigma2)?;
        if sigma2 < 0.0 {
            return Err(Error::domain(format!("sigma2 must be >= 0, got {sigma2}")));
        }
        Ok(Self { sigma2 })
    }

    /// Exact knowledge of the wiretap channel.
    pub fn perfect() -> Self {
        Self { sigma2: 0.0 }
    }

    pub fn sigma2(&self) -> f64 {
        self.sigma2
    }
}

impl Default for EstimationModel {
    fn default() -> Self {
        Self::perfect()
    }
}

/// One joint realisation of the instantaneous SNRs.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FadingDraw {
    pub gamma_m: f64,
    pub gamma_w: f64,
    /// Alice's estimate of `gamma_w`.
    pub gamma_w_hat: f64,
}

/// A reproducible random stream: ChaCha8 keyed by `seed`, on stream `stream_id`.
///
/// Distinct stream ids give non-overlapping sequences for the same seed. A
/// stream owns its state and is meant to be driven by one worker.
#[derive(Debug, Clone)]
pub struct SeededStream {
    seed: u64,
    stream_id: u64,
    rng: ChaCha8Rng,
}

impl SeededStream {
    pub fn new(seed: u64, stream_id: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream_id);
        Self {
            seed,
            stream_id,
            rng,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream_id(&self) -> u64 {
        self.stream_id
    }

    fn complex_gaussian(&mut self, per_component_std: f64) -> Complex64 {
        let re: f64 = self.rng.sample(StandardNormal);
        let im: f64 = self.rng.sample(StandardNormal);
        Complex64::new(re * per_component_std, im * per_component_std)
    }
}

impl rand::RngCore for SeededStream {
    fn next_u32(&mut self) -> u32 {
        self.rng.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.rng.next_u64()
    }

    fn fill_bytes(&mut self, dest: &mut [u8]) {
        self.rng.fill_bytes(dest)
    }

    fn try_fill_bytes(&mut self, dest: &mut [u8]) -> std::result::Result<(), rand::Error> {
        self.rng.try_fill_bytes(dest)
    }
}

/// Draws an instantaneous SNR under Rayleigh fading: exponential with mean `gbar`.
pub fn sample_snr(gbar: f64, stream: &mut SeededStream) -> Result<f64> {
    positive("gbar", gbar)?;
    let unit: f64 = stream.rng.sample(Exp1);
    Ok(gbar * unit)
}

/// Draws independent `h_M`, `h_W` and the estimation error `δ_W`.
///
/// Always consumes six normals, whatever `est`, so a stream's layout does not
/// depend on the estimation model. With `sigma2 = 0` the error is exactly zero
/// and `gamma_w_hat == gamma_w`.
pub fn sample_joint(pair: ChannelPair, est: EstimationModel, stream: &mut SeededStream) -> FadingDraw {
    let h_m = stream.complex_gaussian(FRAC_1_SQRT_2);
    let h_w = stream.complex_gaussian(FRAC_1_SQRT_2);
    let h_w_hat = perturb(h_w, est, stream);
    FadingDraw {
        gamma_m: pair.gbar_m * h_m.norm_sqr(),
        gamma_w: pair.gbar_w * h_w.norm_sqr(),
        gamma_w_hat: pair.gbar_w * h_w_hat.norm_sqr(),
    }
}

/// Draws `γ̂_W` conditioned on the true wiretap SNR `gamma_w`.
///
/// By circular symmetry the phase of `h_W` is irrelevant, so it is taken real.
pub fn sample_estimate_given(
    gamma_w: f64,
    gbar_w: f64,
    est: EstimationModel,
    stream: &mut SeededStream,
) -> Result<f64> {
    require_finite("gamma_w", gamma_w)?;
    if gamma_w < 0.0 {
        return Err(Error::domain(format!("gamma_w must be >= 0, got {gamma_w}")));
    }
    positive("gbar_w", gbar_w)?;
    let h_w = Complex64::new((gamma_w / gbar_w).sqrt(), 0.0);
    Ok(gbar_w * perturb(h_w, est, stream).norm_sqr())
}

fn perturb(h: Complex64, est: EstimationModel, stream: &mut SeededStream) -> Complex64 {
    h + stream.complex_gaussian(est.sigma2.sqrt())
}

/// Average SNRs implied by a geometry.
pub fn gbar_from_geometry(geom: &Geometry) -> ChannelPair {
    ChannelPair {
        gbar_m: geom.snr_at_unit_distance / geom.d_m.powf(geom.alpha),
        gbar_w: geom.snr_at_unit_distance / geom.d_w.powf(geom.alpha),
    }
}

pub fn to_db(linear: f64) -> f64 {
    10.0 * linear.log10()
}

pub fn from_db(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(Error::domain(format!("{name} must be positive and finite, got {v}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn constructors_validate() {
        assert!(ChannelPair::new(0.0, 1.0).is_err());
        assert!(ChannelPair::new(1.0, f64::INFINITY).is_err());
        assert!(Geometry::new(1.0, 1.0, 0.0, 1.0).is_err());
        assert!(Geometry::new(1.0, -1.0, 3.0, 1.0).is_err());
        assert!(EstimationModel::new(-0.1).is_err());
        assert!(EstimationModel::new(f64::NAN).is_err());
        assert_eq!(EstimationModel::new(0.0).unwrap(), EstimationModel::perfect());
    }

    #[test]
    fn geometry_examples() {
        let p = gbar_from_geometry(&Geometry::new(1.0, 2.0, 3.0, 8.0).unwrap());
        assert_eq!((p.gbar_m(), p.gbar_w()), (8.0, 1.0));
        let p = gbar_from_geometry(&Geometry::new(2.0, 1.0, 3.0, 8.0).unwrap());
        assert_eq!((p.gbar_m(), p.gbar_w()), (1.0, 8.0));
        let p = gbar_from_geometry(&Geometry::new(3.3, 3.3, 2.7, 5.0).unwrap());
        assert_eq!(p.gbar_m(), p.gbar_w());
    }

    #[test]
    fn db_round_trip() {
        let mut x = -40.0;
        while x <= 60.0 {
            assert_relative_eq!(to_db(from_db(x)), x, epsilon = 1e-12);
            x += 0.37;
        }
        assert_relative_eq!(from_db(4.771_212_547_196_624), 3.0, max_relative = 1e-15);
    }

    #[test]
    fn sample_snr_rejects_nonpositive_mean() {
        let mut s = SeededStream::new(1, 0);
        assert!(sample_snr(0.0, &mut s).is_err());
        assert!(sample_snr(-2.0, &mut s).is_err());
    }

    #[test]
    fn perfect_estimate_is_exact() {
        let pair = ChannelPair::new(3.0, 7.0).unwrap();
        let mut s = SeededStream::new(9, 4);
        for _ in 0..10_000 {
            let d = sample_joint(pair, EstimationModel::perfect(), &mut s);
            assert_eq!(d.gamma_w, d.gamma_w_hat);
        }
    }

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let pair = ChannelPair::new(2.0, 1.0).unwrap();
        let est = EstimationModel::new(0.5).unwrap();
        let draw = |seed, id| {
            let mut s = SeededStream::new(seed, id);
            (0..100).map(|_| sample_joint(pair, est, &mut s)).collect::<Vec<_>>()
        };
        assert_eq!(draw(5, 1), draw(5, 1));
        assert_ne!(draw(5, 1), draw(5, 2));
        assert_ne!(draw(5, 1), draw(6, 1));
    }
}
