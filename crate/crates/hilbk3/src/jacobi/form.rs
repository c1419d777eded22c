//! Series tagged with their quasi-Jacobi bigrading.

use crate::arith::rat;
use crate::coeff::{Gq, QSeries, SRat};
use crate::error::{Error, Result};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

/// A `q`-series together with weight, index, pole order at `z = 0` and a `q`-prefactor.
///
/// The represented function is `q^{q_offset} · series(q^{1/q_step})`, i.e. the stored series is
/// in the variable `t = q^{1/q_step}`. Weight and index are stored doubled so that `η`, `θ₁`
/// and `F` (half-integral weight or index) fit the same type.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuasiJacobiForm {
    /// The stored series in `t = q^{1/q_step}`.
    pub series: QSeries,
    /// Twice the weight.
    pub weight2: i64,
    /// Twice the index.
    pub index2: i64,
    /// Upper bound for the pole order at `z = 0` (additive under products).
    pub pole_order: i64,
    /// Exponent of the `q`-prefactor.
    pub q_offset: BigRational,
    /// The series variable is `q^{1/q_step}`.
    pub q_step: i64,
}

impl QuasiJacobiForm {
    /// A form with integral weight, no prefactor, in the variable `q`.
    pub fn new(series: QSeries, weight: i64, index2: i64, pole_order: i64) -> Self {
        Self { series, weight2: 2 * weight, index2, pole_order, q_offset: BigRational::zero(), q_step: 1 }
    }

    /// A form whose series carries the prefactor `q^{offset}`.
    pub fn with_prefactor(series: QSeries, weight2: i64, index2: i64, pole_order: i64, offset: BigRational) -> Self {
        Self { series, weight2, index2, pole_order, q_offset: offset, q_step: 1 }
    }

    /// Weight, if integral.
    pub fn weight(&self) -> Option<i64> {
        self.weight2.is_even().then_some(self.weight2 / 2)
    }

    /// Index as a rational number.
    pub fn index(&self) -> BigRational {
        rat(self.index2, 2)
    }

    fn same_frame(&self, o: &Self) -> Result<()> {
        if self.q_offset != o.q_offset || self.q_step != o.q_step {
            return Err(Error::InvalidArgument("forms with different q-prefactors cannot be added".into()));
        }
        Ok(())
    }

    /// Sum of two forms of equal weight and index.
    pub fn add(&self, o: &Self) -> Result<Self> {
        self.same_frame(o)?;
        if self.weight2 != o.weight2 || self.index2 != o.index2 {
            return Err(Error::InvalidArgument(format!(
                "adding forms of weight/index {}/{} and {}/{} (doubled)",
                self.weight2, self.index2, o.weight2, o.index2
            )));
        }
        Ok(Self { series: self.series.add(&o.series), pole_order: self.pole_order.max(o.pole_order), ..self.clone() })
    }

    /// Difference.
    pub fn sub(&self, o: &Self) -> Result<Self> {
        self.add(&o.neg())
    }

    /// Negation.
    pub fn neg(&self) -> Self {
        Self { series: self.series.neg(), ..self.clone() }
    }

    /// Multiplication by a scalar.
    pub fn scale(&self, c: &Gq) -> Self {
        Self { series: self.series.scale(c), ..self.clone() }
    }

    /// Product; weights, indices, pole orders and prefactors add.
    pub fn mul(&self, o: &Self) -> Result<Self> {
        if self.q_step != o.q_step {
            return Err(Error::InvalidArgument("forms on different q-grids cannot be multiplied".into()));
        }
        Ok(Self {
            series: self.series.mul(&o.series),
            weight2: self.weight2 + o.weight2,
            index2: self.index2 + o.index2,
            pole_order: self.pole_order + o.pole_order,
            q_offset: &self.q_offset + &o.q_offset,
            q_step: self.q_step,
        })
    }

    /// `e`-th power, `e ≥ 0`.
    pub fn pow(&self, e: u32) -> Self {
        let e_i = i64::from(e);
        Self {
            series: self.series.pow(e),
            weight2: self.weight2 * e_i,
            index2: self.index2 * e_i,
            pole_order: self.pole_order * e_i,
            q_offset: &self.q_offset * BigRational::from_integer(e_i.into()),
            q_step: self.q_step,
        }
    }

    /// Quotient by a form whose leading coefficient is a unit; weights and indices subtract.
    pub fn div(&self, o: &Self) -> Result<Self> {
        if self.q_step != o.q_step {
            return Err(Error::InvalidArgument("forms on different q-grids cannot be divided".into()));
        }
        Ok(Self {
            series: self.series.div(&o.series)?,
            weight2: self.weight2 - o.weight2,
            index2: self.index2 - o.index2,
            pole_order: self.pole_order,
            q_offset: &self.q_offset - &o.q_offset,
            q_step: self.q_step,
        })
    }

    /// `y d/dy`: weight `+1`, pole order `+1`.
    pub fn dz(&self) -> Self {
        Self { series: self.series.dz(), weight2: self.weight2 + 2, pole_order: self.pole_order + 1, ..self.clone() }
    }

    /// `q d/dq`: weight `+2`; the prefactor contributes `q_offset · f`.
    pub fn dtau(&self) -> Self {
        let step = Gq::frac(1, self.q_step);
        let mut s = self.series.dq().scale(&step);
        if !self.q_offset.is_zero() {
            s = s.add(&self.series.scale(&Gq::from_rational(self.q_offset.clone())));
        }
        Self { series: s, weight2: self.weight2 + 4, ..self.clone() }
    }

    /// The plain `q`-series, if the prefactor is an integral power of `q` and the grid is `q`.
    pub fn to_plain(&self) -> Result<QSeries> {
        if self.q_step != 1 || !self.q_offset.is_integer() {
            return Err(Error::InvalidArgument(format!(
                "prefactor q^{} on grid q^(1/{}) is not integral",
                self.q_offset, self.q_step
            )));
        }
        Ok(self.series.shift_q(self.q_offset.to_integer().to_i64().expect("small prefactor")))
    }

    /// Pole order at `z = 0` read off from the `w`-expansion through `w^{w_order}`.
    pub fn computed_pole_order(&self, w_order: i64) -> i64 {
        self.series.substitute_w(w_order).pole_order()
    }

    /// A `q`-independent constant form of weight 0 and index 0.
    pub fn constant(c: Gq) -> Self {
        Self::new(QSeries::constant(SRat::constant(c)), 0, 0, 0)
    }
}
