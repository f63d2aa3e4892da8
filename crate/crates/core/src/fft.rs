//! Thin wrapper around rustfft with the crate's DFT convention.
//!
//! Forward transform: `X(k) = sum_t x(t) exp(-2 pi i k t / N)`, no
//! normalization. The inverse carries the `1/N`.

use num_complex::Complex64;
use rustfft::{Fft, FftPlanner};
use std::sync::Arc;

pub struct Dft {
    n: usize,
    fwd: Arc<dyn Fft<f64>>,
    inv: Arc<dyn Fft<f64>>,
}

impl Dft {
    pub fn new(n: usize) -> Self {
        let mut planner = FftPlanner::new();
        Self {
            n,
            fwd: planner.plan_fft_forward(n),
            inv: planner.plan_fft_inverse(n),
        }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// In-place forward DFT.
    pub fn forward(&self, buf: &mut [Complex64]) {
        debug_assert_eq!(buf.len(), self.n);
        self.fwd.process(buf);
    }

    /// In-place inverse DFT including the `1/N` factor.
    pub fn inverse(&self, buf: &mut [Complex64]) {
        debug_assert_eq!(buf.len(), self.n);
        self.inv.process(buf);
        let scale = 1.0 / self.n as f64;
        for v in buf.iter_mut() {
            *v *= scale;
        }
    }

    /// In-place forward 2-D DFT of an `n x n` row-major buffer.
    pub fn forward_2d(&self, buf: &mut [Complex64]) {
        let n = self.n;
        debug_assert_eq!(buf.len(), n * n);
        for row in buf.chunks_exact_mut(n) {
            self.fwd.process(row);
        }
        let mut col = vec![Complex64::default(); n];
        for j in 0..n {
            for i in 0..n {
                col[i] = buf[i * n + j];
            }
            self.fwd.process(&mut col);
            for i in 0..n {
                buf[i * n + j] = col[i];
            }
        }
    }

    /// In-place inverse 2-D DFT including the `1/N^2` factor.
    pub fn inverse_2d(&self, buf: &mut [Complex64]) {
        let n = self.n;
        debug_assert_eq!(buf.len(), n * n);
        for row in buf.chunks_exact_mut(n) {
            self.inv.process(row);
        }
        let mut col = vec![Complex64::default(); n];
        for j in 0..n {
            for i in 0..n {
                col[i] = buf[i * n + j];
            }
            self.inv.process(&mut col);
            for i in 0..n {
                buf[i * n + j] = col[i];
            }
        }
        let scale = 1.0 / (n * n) as f64;
        for v in buf.iter_mut() {
            *v *= scale;
        }
    }
}
