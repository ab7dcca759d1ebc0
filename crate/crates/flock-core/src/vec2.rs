//! Fixed-dimension Euclidean vectors.
//!
//! The control laws are dimension-agnostic, so the arithmetic lives on a
//! const-generic [`Vector`]. Everything public in this workspace uses the
//! planar [`Vec2`] alias.

use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

/// A `D`-dimensional vector of `f64` components.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Vector<const D: usize> {
    components: [f64; D],
}

impl<const D: usize> Default for Vector<D> {
    fn default() -> Self {
        Self::ZERO
    }
}

/// Planar vector used for positions, velocities, and accelerations.
pub type Vec2 = Vector<2>;

impl<const D: usize> Vector<D> {
    /// The zero vector.
    pub const ZERO: Self = Self {
        components: [0.0; D],
    };

    /// Builds a vector from its components.
    pub const fn from_components(components: [f64; D]) -> Self {
        Self { components }
    }

    /// Returns the components as an array.
    pub const fn components(&self) -> [f64; D] {
        self.components
    }

    /// Inner product with `other`.
    pub fn dot(self, other: Self) -> f64 {
        let mut acc = 0.0;
        for d in 0..D {
            acc += self.components[d] * other.components[d];
        }
        acc
    }

    /// Squared Euclidean norm.
    pub fn norm_squared(self) -> f64 {
        self.dot(self)
    }

    /// Euclidean norm.
    pub fn norm(self) -> f64 {
        self.norm_squared().sqrt()
    }

    /// True when every component is finite.
    pub fn is_finite(self) -> bool {
        self.components.iter().all(|c| c.is_finite())
    }

    /// Rescales the vector so its norm does not exceed `max`.
    ///
    /// Vectors already within the limit (and the zero vector) are returned
    /// unchanged, bit for bit.
    pub fn clamp_norm(self, max: f64) -> Self {
        let norm = self.norm();
        if norm > max {
            self * (max / norm)
        } else {
            self
        }
    }
}

impl Vec2 {
    /// Builds a planar vector from `x` and `y`.
    pub const fn new(x: f64, y: f64) -> Self {
        Self::from_components([x, y])
    }

    /// First component.
    pub const fn x(self) -> f64 {
        self.components[0]
    }

    /// Second component.
    pub const fn y(self) -> f64 {
        self.components[1]
    }
}

impl<const D: usize> Add for Vector<D> {
    type Output = Self;

    fn add(mut self, rhs: Self) -> Self {
        self += rhs;
        self
    }
}

impl<const D: usize> AddAssign for Vector<D> {
    fn add_assign(&mut self, rhs: Self) {
        for d in 0..D {
            self.components[d] += rhs.components[d];
        }
    }
}

impl<const D: usize> Sub for Vector<D> {
    type Output = Self;

    fn sub(mut self, rhs: Self) -> Self {
        self -= rhs;
        self
    }
}

impl<const D: usize> SubAssign for Vector<D> {
    fn sub_assign(&mut self, rhs: Self) {
        for d in 0..D {
            self.components[d] -= rhs.components[d];
        }
    }
}

impl<const D: usize> Neg for Vector<D> {
    type Output = Self;

    fn neg(mut self) -> Self {
        for d in 0..D {
            self.components[d] = -self.components[d];
        }
        self
    }
}

impl<const D: usize> Mul<f64> for Vector<D> {
    type Output = Self;

    fn mul(mut self, rhs: f64) -> Self {
        for d in 0..D {
            self.components[d] *= rhs;
        }
        self
    }
}

impl<const D: usize> Mul<Vector<D>> for f64 {
    type Output = Vector<D>;

    fn mul(self, rhs: Vector<D>) -> Vector<D> {
        rhs * self
    }
}

impl<const D: usize> Div<f64> for Vector<D> {
    type Output = Self;

    fn div(self, rhs: f64) -> Self {
        self * (1.0 / rhs)
    }
}
