//! Cohort sizes for a population growing at a constant rate.

use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Initial cohort size `a0` and per-period growth rate `g`, generating
/// `a_i = a0 * (1 + g)^i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DemographyParams {
    a0: Rational,
    growth: Rational,
}

impl DemographyParams {
    pub fn new(a0: Rational, growth: Rational) -> Result<Self> {
        if !a0.is_positive() {
            return Err(Error::InvalidParameter {
                name: "a0",
                reason: format!("must be positive, got {a0}"),
            });
        }
        if growth.is_negative() {
            return Err(Error::InvalidParameter {
                name: "g",
                reason: format!("must be non-negative, got {growth}"),
            });
        }
        Ok(Self { a0, growth })
    }

    pub fn a0(&self) -> &Rational {
        &self.a0
    }

    pub fn growth(&self) -> &Rational {
        &self.growth
    }

    /// `1 + g`
    pub fn growth_factor(&self) -> Rational {
        Rational::one() + &self.growth
    }

    /// Size of generation `i`.
    pub fn cohort_size(&self, i: usize) -> Rational {
        &self.a0 * num::pow(self.growth_factor(), i)
    }

    /// Iterator over `a_0, a_1, a_2, ...` computed by repeated multiplication.
    pub fn cohorts(&self) -> impl Iterator<Item = Rational> + '_ {
        let factor = self.growth_factor();
        std::iter::successors(Some(self.a0.clone()), move |a| Some(a * &factor))
    }

    pub fn is_stationary(&self) -> bool {
        self.growth.is_zero()
    }
}

/// Free-function form of [`DemographyParams::cohort_size`].
pub fn cohort_size(params: &DemographyParams, i: usize) -> Rational {
    params.cohort_size(i)
}
