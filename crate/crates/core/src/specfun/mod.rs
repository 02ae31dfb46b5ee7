//! Bessel functions of real order and their positive zeros.

mod bessel;
mod zeros;

pub use bessel::{bessel_j, bessel_jy, bessel_y, BesselValues, MAX_ORDER};
pub use zeros::{
    bessel_zero, cylinder, next_zero_after, BesselOrder, BesselZero, Family, ZeroTable,
    MAX_ZERO_INDEX,
};
