//! Dimension-generic access to the plane and space point types.

use std::fmt::Debug;
use std::ops::{Add, Mul, Sub};

/// A point (or vector) with a fixed number of real coordinates.
pub trait Coords:
    Copy + Debug + PartialEq + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self>
{
    const DIM: usize;

    fn coord(&self, axis: usize) -> f64;

    fn from_fn(f: impl FnMut(usize) -> f64) -> Self;

    fn zero() -> Self {
        Self::from_fn(|_| 0.0)
    }

    fn axis(axis: usize) -> Self {
        Self::from_fn(|i| if i == axis { 1.0 } else { 0.0 })
    }

    fn dot(&self, other: &Self) -> f64 {
        (0..Self::DIM).map(|i| self.coord(i) * other.coord(i)).sum()
    }

    fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    fn is_finite(&self) -> bool {
        (0..Self::DIM).all(|i| self.coord(i).is_finite())
    }

    fn to_vec(&self) -> Vec<f64> {
        (0..Self::DIM).map(|i| self.coord(i)).collect()
    }
}

macro_rules! impl_point_ops {
    ($ty:ident { $($field:ident),+ }) => {
        impl std::ops::Add for $ty {
            type Output = $ty;
            #[inline]
            fn add(self, rhs: $ty) -> $ty {
                $ty { $($field: self.$field + rhs.$field),+ }
            }
        }

        impl std::ops::Sub for $ty {
            type Output = $ty;
            #[inline]
            fn sub(self, rhs: $ty) -> $ty {
                $ty { $($field: self.$field - rhs.$field),+ }
            }
        }

        impl std::ops::Mul<f64> for $ty {
            type Output = $ty;
            #[inline]
            fn mul(self, rhs: f64) -> $ty {
                $ty { $($field: self.$field * rhs),+ }
            }
        }

        impl std::ops::Neg for $ty {
            type Output = $ty;
            #[inline]
            fn neg(self) -> $ty {
                $ty { $($field: -self.$field),+ }
            }
        }
    };
}

pub(crate) use impl_point_ops;

/// Gaussian elimination with partial pivoting on an augmented matrix.
pub(crate) fn solve_dense(mut a: Vec<Vec<f64>>) -> Option<Vec<f64>> {
    let k = a.len();
    for col in 0..k {
        let piv = (col..k).max_by(|&x, &y| a[x][col].abs().total_cmp(&a[y][col].abs()))?;
        if a[piv][col].abs() < 1e-14 {
            return None;
        }
        a.swap(col, piv);
        let (top, rest) = a.split_at_mut(col + 1);
        let pivot = &top[col];
        for row in rest {
            let f = row[col] / pivot[col];
            for (x, p) in row[col..].iter_mut().zip(&pivot[col..]) {
                *x -= f * p;
            }
        }
    }
    let mut x = vec![0.0; k];
    for row in (0..k).rev() {
        let tail: f64 = (row + 1..k).map(|j| a[row][j] * x[j]).sum();
        x[row] = (a[row][k] - tail) / a[row][row];
    }
    Some(x)
}
