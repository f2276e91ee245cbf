//! Numeric traits the rest of the crate is generic over.
//!
//! Edge costs only need ordered ring arithmetic, so integer TSPLIB costs,
//! real euclidean costs and exact rationals all work through [`Cost`].
//! The CNN kernels need transcendental functions and a GEMM, which is what
//! [`Real`] adds on top of `num_traits::Float`.

use std::cmp::Ordering;
use std::fmt::Debug;
use std::iter::Sum;
use std::ops::AddAssign;

use num_traits::{Float, FromPrimitive, Num, ToPrimitive};

/// Scalar type of an edge cost.
pub trait Cost: Num + Copy + PartialOrd + Debug + Sum + Send + Sync + 'static {
    fn as_f64(self) -> f64;

    /// Total order used by every sort in the crate. Incomparable values
    /// (NaN) compare equal so sorting never panics.
    #[inline]
    fn cost_cmp(&self, other: &Self) -> Ordering {
        self.partial_cmp(other).unwrap_or(Ordering::Equal)
    }
}

impl<T> Cost for T
where
    T: Num + Copy + PartialOrd + Debug + Sum + ToPrimitive + Send + Sync + 'static,
{
    #[inline]
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

/// Floating-point scalar for tensors: f32 or f64.
pub trait Real: Float + FromPrimitive + Default + Debug + Sum + AddAssign + Send + Sync + 'static {
    /// `c = a * b + beta * c` for row-major `a` (m x k), `b` (k x n), `c` (m x n).
    fn gemm(m: usize, k: usize, n: usize, a: &[Self], b: &[Self], beta: Self, c: &mut [Self]);

    #[inline]
    fn of(v: f64) -> Self {
        Self::from_f64(v).expect("representable constant")
    }
}

impl Real for f32 {
    fn gemm(m: usize, k: usize, n: usize, a: &[f32], b: &[f32], beta: f32, c: &mut [f32]) {
        assert!(a.len() >= m * k && b.len() >= k * n && c.len() >= m * n);
        // SAFETY: bounds asserted above; strides describe dense row-major buffers.
        unsafe {
            matrixmultiply::sgemm(
                m,
                k,
                n,
                1.0,
                a.as_ptr(),
                k as isize,
                1,
                b.as_ptr(),
                n as isize,
                1,
                beta,
                c.as_mut_ptr(),
                n as isize,
                1,
            );
        }
    }
}

impl Real for f64 {
    fn gemm(m: usize, k: usize, n: usize, a: &[f64], b: &[f64], beta: f64, c: &mut [f64]) {
        assert!(a.len() >= m * k && b.len() >= k * n && c.len() >= m * n);
        // SAFETY: bounds asserted above; strides describe dense row-major buffers.
        unsafe {
            matrixmultiply::dgemm(
                m,
                k,
                n,
                1.0,
                a.as_ptr(),
                k as isize,
                1,
                b.as_ptr(),
                n as isize,
                1,
                beta,
                c.as_mut_ptr(),
                n as isize,
                1,
            );
        }
    }
}
