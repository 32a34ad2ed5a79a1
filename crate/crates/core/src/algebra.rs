//! Linear algebra of the ambient space `E^4_2` (metric `+,+,-,-`) and of its
//! exterior square.
//!
//! Everything here is plain `Copy` data. Bivectors use the fixed coordinate
//! order `(12, 13, 14, 23, 24, 34)`; serialization follows that order.

use std::ops::{Add, AddAssign, Index, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// Signs of the ambient metric on the standard basis.
pub const METRIC_SIGNS: [f64; 4] = [1.0, 1.0, -1.0, -1.0];

/// Signs of the induced metric on the bivector basis `(12, 13, 14, 23, 24, 34)`.
pub const BIVECTOR_SIGNS: [f64; 6] = [1.0, -1.0, -1.0, -1.0, -1.0, 1.0];

/// Index pairs of the bivector basis, in storage order.
pub const BIVECTOR_BASIS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// Default tolerance on the quadratic form when deciding lightlike vectors.
pub const LIGHTLIKE_TOL: f64 = 1e-12;

/// A vector of `E^4_2` in the standard basis `ε₁..ε₄`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[f64; 4]", into = "[f64; 4]")]
pub struct Vector4(pub [f64; 4]);

impl Vector4 {
    pub const ZERO: Vector4 = Vector4([0.0; 4]);

    pub const fn new(x1: f64, x2: f64, x3: f64, x4: f64) -> Self {
        Vector4([x1, x2, x3, x4])
    }

    /// The standard basis vector `ε_{i+1}`.
    pub fn basis(i: usize) -> Self {
        let mut v = [0.0; 4];
        v[i] = 1.0;
        Vector4(v)
    }

    pub fn x1(&self) -> f64 {
        self.0[0]
    }
    pub fn x2(&self) -> f64 {
        self.0[1]
    }
    pub fn x3(&self) -> f64 {
        self.0[2]
    }
    pub fn x4(&self) -> f64 {
        self.0[3]
    }

    /// Indefinite inner product with `other`.
    pub fn dot(&self, other: &Vector4) -> f64 {
        inner(*self, *other)
    }

    /// Largest absolute coordinate.
    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0_f64, |m, x| m.max(x.abs()))
    }

    /// Euclidean length of the coordinate tuple (not the metric norm).
    pub fn coord_norm(&self) -> f64 {
        self.0.iter().map(|x| x * x).sum::<f64>().sqrt()
    }
}

impl From<[f64; 4]> for Vector4 {
    fn from(v: [f64; 4]) -> Self {
        Vector4(v)
    }
}

impl From<Vector4> for [f64; 4] {
    fn from(v: Vector4) -> Self {
        v.0
    }
}

impl Index<usize> for Vector4 {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

/// An element of `Λ²E^4_2`, coordinates in the basis `(ε₁∧ε₂, ε₁∧ε₃, ε₁∧ε₄, ε₂∧ε₃, ε₂∧ε₄, ε₃∧ε₄)`.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
#[serde(from = "[f64; 6]", into = "[f64; 6]")]
pub struct Bivector6(pub [f64; 6]);

impl Bivector6 {
    pub const ZERO: Bivector6 = Bivector6([0.0; 6]);

    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0_f64, |m, x| m.max(x.abs()))
    }

    pub fn coord_norm(&self) -> f64 {
        self.0.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    /// Euclidean coordinate dot product, used by the least-squares solver.
    pub fn coord_dot(&self, other: &Bivector6) -> f64 {
        self.0.iter().zip(other.0.iter()).map(|(a, b)| a * b).sum()
    }
}

impl From<[f64; 6]> for Bivector6 {
    fn from(v: [f64; 6]) -> Self {
        Bivector6(v)
    }
}

impl From<Bivector6> for [f64; 6] {
    fn from(v: Bivector6) -> Self {
        v.0
    }
}

impl Index<usize> for Bivector6 {
    type Output = f64;
    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

macro_rules! impl_vector_ops {
    ($ty:ident, $n:expr) => {
        impl Add for $ty {
            type Output = $ty;
            fn add(self, rhs: $ty) -> $ty {
                let mut out = self.0;
                for (o, r) in out.iter_mut().zip(rhs.0) {
                    *o += r;
                }
                $ty(out)
            }
        }

        impl AddAssign for $ty {
            fn add_assign(&mut self, rhs: $ty) {
                *self = *self + rhs;
            }
        }

        impl Sub for $ty {
            type Output = $ty;
            fn sub(self, rhs: $ty) -> $ty {
                let mut out = self.0;
                for (o, r) in out.iter_mut().zip(rhs.0) {
                    *o -= r;
                }
                $ty(out)
            }
        }

        impl Neg for $ty {
            type Output = $ty;
            fn neg(self) -> $ty {
                $ty(self.0.map(|x| -x))
            }
        }

        impl Mul<$ty> for f64 {
            type Output = $ty;
            fn mul(self, rhs: $ty) -> $ty {
                $ty(rhs.0.map(|x| self * x))
            }
        }

        impl Mul<f64> for $ty {
            type Output = $ty;
            fn mul(self, rhs: f64) -> $ty {
                rhs * self
            }
        }

        impl std::iter::Sum for $ty {
            fn sum<I: Iterator<Item = $ty>>(iter: I) -> $ty {
                iter.fold($ty([0.0; $n]), |acc, x| acc + x)
            }
        }
    };
}

impl_vector_ops!(Vector4, 4);
impl_vector_ops!(Bivector6, 6);

/// `⟨u, v⟩ = u₁v₁ + u₂v₂ − u₃v₃ − u₄v₄`.
pub fn inner(u: Vector4, v: Vector4) -> f64 {
    u.0.iter().zip(v.0.iter()).zip(METRIC_SIGNS.iter()).map(|((a, b), s)| s * a * b).sum()
}

/// Causal character of a vector under the indefinite metric.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CausalCharacter {
    Spacelike,
    Timelike,
    Lightlike,
    Zero,
}

/// Classifies `v` by the sign of `⟨v, v⟩`, treating `|⟨v, v⟩| ≤ tol` as null.
pub fn causal_character(v: Vector4, tol: f64) -> CausalCharacter {
    let q = inner(v, v);
    if q > tol {
        CausalCharacter::Spacelike
    } else if q < -tol {
        CausalCharacter::Timelike
    } else if v.coord_norm() > tol {
        CausalCharacter::Lightlike
    } else {
        CausalCharacter::Zero
    }
}

/// Exterior product `u ∧ v` with coordinates `u_i v_j − u_j v_i`.
pub fn wedge(u: Vector4, v: Vector4) -> Bivector6 {
    Bivector6(BIVECTOR_BASIS.map(|(i, j)| u[i] * v[j] - u[j] * v[i]))
}

/// Induced inner product on bivectors:
/// `⟨a∧b, c∧d⟩ = ⟨a,c⟩⟨b,d⟩ − ⟨a,d⟩⟨b,c⟩`, diagonal in the coordinate basis.
pub fn inner_bivector(a: Bivector6, b: Bivector6) -> f64 {
    a.0.iter().zip(b.0.iter()).zip(BIVECTOR_SIGNS.iter()).map(|((x, y), s)| s * x * y).sum()
}
