//! Convolution, dense and pooling kernels over CHW activations.

use crate::scalar::Real;

/// Activation volume in channel-major (CHW) layout.
#[derive(Debug, Clone, PartialEq)]
pub struct Tensor<R> {
    pub c: usize,
    pub h: usize,
    pub w: usize,
    pub data: Vec<R>,
}

impl<R: Real> Tensor<R> {
    pub fn zeros(c: usize, h: usize, w: usize) -> Self {
        Self {
            c,
            h,
            w,
            data: vec![R::zero(); c * h * w],
        }
    }

    /// Converts an interleaved HWC buffer.
    pub fn from_hwc(src: &[f32], h: usize, w: usize, c: usize) -> Self {
        let mut t = Self::zeros(c, h, w);
        for y in 0..h {
            for x in 0..w {
                for ch in 0..c {
                    t.data[(ch * h + y) * w + x] = R::from_f32(src[(y * w + x) * c + ch]).unwrap_or_else(R::zero);
                }
            }
        }
        t
    }

    pub fn relu(mut self) -> Self {
        for v in &mut self.data {
            if *v < R::zero() {
                *v = R::zero();
            }
        }
        self
    }

    /// Mean over the spatial axes, one value per channel.
    pub fn global_average_pool(&self) -> Vec<R> {
        let hw = self.h * self.w;
        let inv = R::one() / R::of(hw as f64);
        self.data.chunks_exact(hw).map(|ch| ch.iter().copied().sum::<R>() * inv).collect()
    }
}

/// 2-D convolution with a square kernel. Weights are `[out, in, k, k]` row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Conv2d<R> {
    pub out_channels: usize,
    pub in_channels: usize,
    pub kernel: usize,
    pub stride: usize,
    pub padding: usize,
    pub weight: Vec<R>,
    pub bias: Vec<R>,
}

impl<R: Real> Conv2d<R> {
    pub fn output_size(&self, h: usize, w: usize) -> (usize, usize) {
        (
            (h + 2 * self.padding - self.kernel) / self.stride + 1,
            (w + 2 * self.padding - self.kernel) / self.stride + 1,
        )
    }

    /// Lowers the input patches to a `[in * k * k, oh * ow]` matrix.
    fn im2col(&self, x: &Tensor<R>, oh: usize, ow: usize) -> Vec<R> {
        let k = self.kernel;
        let mut col = vec![R::zero(); self.in_channels * k * k * oh * ow];
        let pad = self.padding as isize;
        for ch in 0..self.in_channels {
            let plane = &x.data[ch * x.h * x.w..(ch + 1) * x.h * x.w];
            for ky in 0..k {
                for kx in 0..k {
                    let row = (ch * k + ky) * k + kx;
                    let dst = &mut col[row * oh * ow..(row + 1) * oh * ow];
                    for oy in 0..oh {
                        let iy = (oy * self.stride + ky) as isize - pad;
                        if iy < 0 || iy >= x.h as isize {
                            continue;
                        }
                        let src = &plane[iy as usize * x.w..(iy as usize + 1) * x.w];
                        for ox in 0..ow {
                            let ix = (ox * self.stride + kx) as isize - pad;
                            if ix >= 0 && ix < x.w as isize {
                                dst[oy * ow + ox] = src[ix as usize];
                            }
                        }
                    }
                }
            }
        }
        col
    }

    pub fn forward(&self, x: &Tensor<R>) -> Tensor<R> {
        assert_eq!(x.c, self.in_channels, "convolution input channels");
        let (oh, ow) = self.output_size(x.h, x.w);
        let col = self.im2col(x, oh, ow);
        let mut out = Tensor::zeros(self.out_channels, oh, ow);
        let plane = oh * ow;
        for (o, chunk) in out.data.chunks_exact_mut(plane).enumerate() {
            chunk.fill(self.bias[o]);
        }
        let inner = self.in_channels * self.kernel * self.kernel;
        R::gemm(self.out_channels, inner, plane, &self.weight, &col, R::one(), &mut out.data);
        out
    }
}

/// Fully connected layer with `[out, in]` row-major weights.
#[derive(Debug, Clone, PartialEq)]
pub struct Dense<R> {
    pub out_features: usize,
    pub in_features: usize,
    pub weight: Vec<R>,
    pub bias: Vec<R>,
}

impl<R: Real> Dense<R> {
    pub fn forward(&self, x: &[R]) -> Vec<R> {
        assert_eq!(x.len(), self.in_features, "dense input features");
        let mut out = self.bias.clone();
        R::gemm(self.out_features, self.in_features, 1, &self.weight, x, R::one(), &mut out);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn direct(conv: &Conv2d<f64>, x: &Tensor<f64>) -> Tensor<f64> {
        let (oh, ow) = conv.output_size(x.h, x.w);
        let mut out = Tensor::zeros(conv.out_channels, oh, ow);
        let k = conv.kernel;
        for o in 0..conv.out_channels {
            for oy in 0..oh {
                for ox in 0..ow {
                    let mut s = conv.bias[o];
                    for i in 0..conv.in_channels {
                        for ky in 0..k {
                            for kx in 0..k {
                                let iy = (oy * conv.stride + ky) as isize - conv.padding as isize;
                                let ix = (ox * conv.stride + kx) as isize - conv.padding as isize;
                                if iy >= 0 && ix >= 0 && (iy as usize) < x.h && (ix as usize) < x.w {
                                    s += conv.weight[((o * conv.in_channels + i) * k + ky) * k + kx]
                                        * x.data[(i * x.h + iy as usize) * x.w + ix as usize];
                                }
                            }
                        }
                    }
                    out.data[(o * oh + oy) * ow + ox] = s;
                }
            }
        }
        out
    }

    #[test]
    fn im2col_matches_direct_convolution() {
        for (kernel, stride, padding) in [(3, 1, 1), (3, 2, 1), (1, 2, 0)] {
            let conv = Conv2d {
                out_channels: 4,
                in_channels: 3,
                kernel,
                stride,
                padding,
                weight: (0..4 * 3 * kernel * kernel).map(|v| ((v * 7 % 11) as f64 - 5.0) / 10.0).collect(),
                bias: vec![0.1, -0.2, 0.3, 0.0],
            };
            let mut x = Tensor::zeros(3, 7, 6);
            for (idx, v) in x.data.iter_mut().enumerate() {
                *v = ((idx * 13 % 17) as f64) / 17.0;
            }
            let a = conv.forward(&x);
            let b = direct(&conv, &x);
            assert_eq!((a.h, a.w), (b.h, b.w));
            for (p, q) in a.data.iter().zip(&b.data) {
                assert!((p - q).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn stride_two_halves_the_grid() {
        let conv: Conv2d<f32> = Conv2d {
            out_channels: 1,
            in_channels: 1,
            kernel: 3,
            stride: 2,
            padding: 1,
            weight: vec![0.0; 9],
            bias: vec![0.0],
        };
        assert_eq!(conv.output_size(96, 96), (48, 48));
        assert_eq!(conv.output_size(12, 12), (6, 6));
    }

    #[test]
    fn hwc_conversion_and_pooling() {
        let src: Vec<f32> = (0..2 * 2 * 3).map(|v| v as f32).collect();
        let t: Tensor<f64> = Tensor::from_hwc(&src, 2, 2, 3);
        assert_eq!(&t.data[..4], &[0.0, 3.0, 6.0, 9.0]);
        assert_eq!(t.global_average_pool(), vec![4.5, 5.5, 6.5]);
    }
}
