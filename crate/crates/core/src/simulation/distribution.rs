use std::fmt;

use rand::distr::Uniform;
use rand::Rng;
use num_traits::Float;
use rand_distr::{Distribution, Exp, Exp1, Gamma, Normal, Open01, StandardNormal, StudentT};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Source distribution for simulated data.
///
/// Gamma is parameterized by `(shape, rate)`, so `Gamma { shape: 10, rate: 2 }`
/// has mean 5 and variance 2.5. The shifted Student t is `t_ν + shift`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "dist", rename_all = "snake_case")]
pub enum DistributionSpec<T> {
    Normal { mean: T, variance: T },
    Uniform { low: T, high: T },
    ShiftedStudentT { dof: T, shift: T },
    Gamma { shape: T, rate: T },
    Exponential { rate: T },
}

impl<T: Scalar> DistributionSpec<T> {
    pub fn validate(&self) -> Result<()> {
        let ok = |cond: bool, msg: String| if cond { Ok(()) } else { Err(Error::InvalidDistribution(msg)) };
        let finite = |xs: &[T]| xs.iter().all(|x| x.is_finite());
        match *self {
            Self::Normal { mean, variance } => ok(
                finite(&[mean, variance]) && variance > T::zero(),
                format!("normal needs variance > 0, got {variance}"),
            ),
            Self::Uniform { low, high } => {
                ok(finite(&[low, high]) && low < high, format!("uniform needs low < high, got [{low}, {high}]"))
            }
            Self::ShiftedStudentT { dof, shift } => ok(
                finite(&[dof, shift]) && dof > T::lit(2.0),
                format!("student t needs dof > 2 for a finite variance, got {dof}"),
            ),
            Self::Gamma { shape, rate } => ok(
                finite(&[shape, rate]) && shape > T::zero() && rate > T::zero(),
                format!("gamma needs shape, rate > 0, got ({shape}, {rate})"),
            ),
            Self::Exponential { rate } => {
                ok(rate.is_finite() && rate > T::zero(), format!("exponential needs rate > 0, got {rate}"))
            }
        }
    }

    /// Non-fatal caveats about the parameters.
    pub fn warnings(&self) -> Vec<String> {
        match *self {
            Self::ShiftedStudentT { dof, .. } if dof <= T::lit(4.0) => vec![format!(
                "student t with dof = {dof} has no finite fourth moment; squared-loss variance estimates are unstable"
            )],
            _ => Vec::new(),
        }
    }

    pub fn mean(&self) -> T {
        match *self {
            Self::Normal { mean, .. } => mean,
            Self::Uniform { low, high } => (low + high) / T::lit(2.0),
            Self::ShiftedStudentT { shift, .. } => shift,
            Self::Gamma { shape, rate } => shape / rate,
            Self::Exponential { rate } => rate.recip(),
        }
    }

    pub fn variance(&self) -> T {
        match *self {
            Self::Normal { variance, .. } => variance,
            Self::Uniform { low, high } => (high - low).powi(2) / T::lit(12.0),
            Self::ShiftedStudentT { dof, .. } => dof / (dof - T::lit(2.0)),
            Self::Gamma { shape, rate } => shape / (rate * rate),
            Self::Exponential { rate } => (rate * rate).recip(),
        }
    }

    pub fn is_normal(&self) -> bool {
        matches!(self, Self::Normal { .. })
    }
}

impl<T: Scalar> fmt::Display for DistributionSpec<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Normal { mean, variance } => write!(f, "N({mean}, {variance})"),
            Self::Uniform { low, high } => write!(f, "U({low}, {high})"),
            Self::ShiftedStudentT { dof, shift } => write!(f, "t_{dof}({shift})"),
            Self::Gamma { shape, rate } => write!(f, "Gamma(shape {shape}, rate {rate})"),
            Self::Exponential { rate } => write!(f, "Exp({rate})"),
        }
    }
}

/// Ready-to-draw form of a [`DistributionSpec`].
#[derive(Debug, Clone, Copy)]
pub struct Sampler<F: Variate>(F::Kind);

#[doc(hidden)]
#[derive(Debug, Clone, Copy)]
pub enum SamplerKind<F>
where
    F: Float,
    StandardNormal: Distribution<F>,
    Exp1: Distribution<F>,
    Open01: Distribution<F>,
    F: rand::distr::uniform::SampleUniform,
    F::Sampler: Copy + fmt::Debug,
{
    Normal(Normal<F>),
    Uniform(Uniform<F>),
    StudentT(StudentT<F>, F),
    Gamma(Gamma<F>),
    Exponential(Exp<F>),
}

/// Scalars that can be drawn from every [`DistributionSpec`].
pub trait Variate: Scalar + rand::distr::uniform::SampleUniform {
    #[doc(hidden)]
    type Kind: fmt::Debug + Clone + Copy + Send + Sync;
    fn sampler(spec: &DistributionSpec<Self>) -> Result<Sampler<Self>>;
    fn draw<R: Rng + ?Sized>(sampler: &Sampler<Self>, rng: &mut R) -> Self;
    fn standard_normal<R: Rng + ?Sized>(rng: &mut R) -> Self;
    /// Uniform on `[0, 1)`.
    fn unit<R: Rng + ?Sized>(rng: &mut R) -> Self;
}

macro_rules! impl_variate {
    ($t:ty) => {
        impl Variate for $t {
            type Kind = SamplerKind<$t>;

            fn sampler(spec: &DistributionSpec<Self>) -> Result<Sampler<Self>> {
                spec.validate()?;
                let err = |e: &dyn fmt::Display| Error::InvalidDistribution(format!("{spec}: {e}"));
                Ok(match *spec {
                    DistributionSpec::Normal { mean, variance } => {
                        Sampler(SamplerKind::Normal(Normal::new(mean, variance.sqrt()).map_err(|e| err(&e))?))
                    }
                    DistributionSpec::Uniform { low, high } => {
                        Sampler(SamplerKind::Uniform(Uniform::new(low, high).map_err(|e| err(&e))?))
                    }
                    DistributionSpec::ShiftedStudentT { dof, shift } => {
                        Sampler(SamplerKind::StudentT(StudentT::new(dof).map_err(|e| err(&e))?, shift))
                    }
                    DistributionSpec::Gamma { shape, rate } => {
                        Sampler(SamplerKind::Gamma(Gamma::new(shape, rate.recip()).map_err(|e| err(&e))?))
                    }
                    DistributionSpec::Exponential { rate } => {
                        Sampler(SamplerKind::Exponential(Exp::new(rate).map_err(|e| err(&e))?))
                    }
                })
            }

            #[inline]
            fn draw<R: Rng + ?Sized>(sampler: &Sampler<Self>, rng: &mut R) -> Self {
                match &sampler.0 {
                    SamplerKind::Normal(d) => d.sample(rng),
                    SamplerKind::Uniform(d) => d.sample(rng),
                    SamplerKind::StudentT(d, shift) => d.sample(rng) + shift,
                    SamplerKind::Gamma(d) => d.sample(rng),
                    SamplerKind::Exponential(d) => d.sample(rng),
                }
            }

            fn standard_normal<R: Rng + ?Sized>(rng: &mut R) -> Self {
                StandardNormal.sample(rng)
            }

            fn unit<R: Rng + ?Sized>(rng: &mut R) -> Self {
                rng.random::<$t>()
            }
        }
    };
}

impl_variate!(f64);
impl_variate!(f32);

impl<F: Variate> Sampler<F> {
    pub fn new(spec: &DistributionSpec<F>) -> Result<Self> {
        F::sampler(spec)
    }

    pub fn sample_into<R: Rng + ?Sized>(&self, rng: &mut R, out: &mut Vec<F>, count: usize) {
        out.extend((0..count).map(|_| F::draw(self, rng)));
    }
}
