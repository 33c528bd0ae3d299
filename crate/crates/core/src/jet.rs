//! Second-order jets: a value with its first two derivatives.
//!
//! The coordinate the derivatives are taken in is part of the type, so a
//! t-jet cannot be handed to a z-equation residual by accident.

use std::fmt;
use std::marker::PhantomData;
use std::ops::{Add, Mul, Sub};

use num_complex::Complex64;

use crate::error::Result;
use crate::mobius;

/// Derivatives taken with respect to `z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ZCoord;

/// Derivatives taken with respect to `t = (z - i)/(z + i)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TCoord;

pub trait Coordinate: Copy {
    const NAME: &'static str;
}

impl Coordinate for ZCoord {
    const NAME: &'static str = "z";
}

impl Coordinate for TCoord {
    const NAME: &'static str = "t";
}

#[derive(Clone, Copy, PartialEq)]
pub struct Jet2<C: Coordinate> {
    pub y: Complex64,
    pub dy: Complex64,
    pub d2y: Complex64,
    coord: PhantomData<C>,
}

pub type ZJet = Jet2<ZCoord>;
pub type TJet = Jet2<TCoord>;

impl<C: Coordinate> Jet2<C> {
    pub fn new(y: Complex64, dy: Complex64, d2y: Complex64) -> Self {
        Self {
            y,
            dy,
            d2y,
            coord: PhantomData,
        }
    }

    pub fn zero() -> Self {
        let z = Complex64::new(0.0, 0.0);
        Self::new(z, z, z)
    }

    pub fn constant(y: Complex64) -> Self {
        let z = Complex64::new(0.0, 0.0);
        Self::new(y, z, z)
    }

    /// `|y| + |y'| + |y''|`.
    pub fn magnitude(&self) -> f64 {
        self.y.norm() + self.dy.norm() + self.d2y.norm()
    }
}

impl TJet {
    /// Chain rule to z: `y_z = y_t t'`, `y_zz = y_tt t'^2 + y_t t''`.
    pub fn to_z(&self, z: Complex64) -> Result<ZJet> {
        let t1 = mobius::dt_dz(z)?;
        let t2 = mobius::d2t_dz2(z)?;
        Ok(ZJet::new(
            self.y,
            self.dy * t1,
            self.d2y * t1 * t1 + self.dy * t2,
        ))
    }
}

impl<C: Coordinate> fmt::Debug for Jet2<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Jet2")
            .field("coord", &C::NAME)
            .field("y", &self.y)
            .field("dy", &self.dy)
            .field("d2y", &self.d2y)
            .finish()
    }
}

impl<C: Coordinate> Add for Jet2<C> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Self::new(self.y + rhs.y, self.dy + rhs.dy, self.d2y + rhs.d2y)
    }
}

impl<C: Coordinate> Sub for Jet2<C> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.y - rhs.y, self.dy - rhs.dy, self.d2y - rhs.d2y)
    }
}

impl<C: Coordinate> Mul<Complex64> for Jet2<C> {
    type Output = Self;
    fn mul(self, k: Complex64) -> Self {
        Self::new(self.y * k, self.dy * k, self.d2y * k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_rule_for_t_itself() {
        // y(t) = t as a t-jet becomes the jet of z_to_t
        let z = Complex64::new(0.7, 1.3);
        let t = mobius::z_to_t(z).unwrap();
        let one = Complex64::new(1.0, 0.0);
        let zj = TJet::new(t, one, Complex64::new(0.0, 0.0)).to_z(z).unwrap();
        assert_eq!(zj.dy, mobius::dt_dz(z).unwrap());
        assert_eq!(zj.d2y, mobius::d2t_dz2(z).unwrap());
    }

    #[test]
    fn linear_ops() {
        let a = ZJet::new(
            Complex64::new(1.0, 0.0),
            Complex64::new(0.0, 1.0),
            Complex64::new(2.0, 0.0),
        );
        let k = Complex64::new(0.0, 2.0);
        let b = a * k + ZJet::constant(Complex64::new(1.0, 0.0)) - ZJet::zero();
        assert_eq!(b.y, Complex64::new(1.0, 2.0));
        assert_eq!(b.dy, Complex64::new(-2.0, 0.0));
        assert_eq!(b.d2y, Complex64::new(0.0, 4.0));
    }
}
