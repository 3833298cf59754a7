use core::fmt;

use crate::error::{invalid, Result};

/// A non-zero half-integer spin `S`, stored as `2S`.
///
/// The restricted modulator couples `2S+1` modes with offsets
/// `Δm = -S, -S+1, …, S`; matrices built from a spin use that ascending order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Spin(u32);

impl Spin {
    pub fn from_twice(twice: u32) -> Result<Self> {
        if twice == 0 {
            return Err(invalid!("spin must be at least 1/2 (two or more modes)"));
        }
        Ok(Spin(twice))
    }

    pub fn new(s: f64) -> Result<Self> {
        let twice = 2.0 * s;
        if !twice.is_finite() || twice < 0.0 || libm::round(twice) != twice || twice > u32::MAX as f64 {
            return Err(invalid!("spin {s} is not a non-negative half-integer"));
        }
        Self::from_twice(twice as u32)
    }

    #[inline]
    pub fn twice(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn value(self) -> f64 {
        self.0 as f64 / 2.0
    }

    /// Number of modes, `2S+1`.
    #[inline]
    pub fn dim(self) -> usize {
        self.0 as usize + 1
    }

    #[inline]
    pub fn is_integer(self) -> bool {
        self.0.is_multiple_of(2)
    }

    /// Mode offset `Δm` of row/column `index`.
    #[inline]
    pub fn offset(self, index: usize) -> f64 {
        index as f64 - self.value()
    }

    /// Row/column index of the mode offset `dm`, if it lies on the ladder.
    pub fn index_of(self, dm: f64) -> Option<usize> {
        let shifted = dm + self.value();
        if shifted < 0.0 || shifted > self.0 as f64 || libm::round(shifted) != shifted {
            return None;
        }
        Some(shifted as usize)
    }

    /// Index of `Δm = 0`, present only for integer spin.
    pub fn central_index(self) -> Option<usize> {
        self.is_integer().then_some(self.0 as usize / 2)
    }

    pub fn offsets(self) -> impl Iterator<Item = f64> {
        (0..self.dim()).map(move |i| self.offset(i))
    }
}

impl fmt::Display for Spin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_integer() {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}
