//! Direct-loop, double-precision forward pass over a weight bundle.
//!
//! Shares nothing with the library's layer code: every convolution is the
//! textbook six-deep loop, and parameters are read straight from named
//! records.

use mlc_core::cnn::WeightBundle;

struct Map {
    c: usize,
    h: usize,
    w: usize,
    data: Vec<f64>,
}

fn record(bundle: &WeightBundle, name: &str) -> (Vec<usize>, Vec<f64>) {
    let r = bundle.get(name).unwrap_or_else(|| panic!("missing record {name}"));
    (r.shape.clone(), r.data.iter().map(|&v| v as f64).collect())
}

fn conv(bundle: &WeightBundle, prefix: &str, x: &Map, stride: usize) -> Map {
    let (shape, weight) = record(bundle, &format!("{prefix}.weight"));
    let (_, bias) = record(bundle, &format!("{prefix}.bias"));
    let (oc, ic, k) = (shape[0], shape[1], shape[2]);
    assert_eq!(ic, x.c);
    let pad = k / 2;
    let oh = (x.h + 2 * pad - k) / stride + 1;
    let ow = (x.w + 2 * pad - k) / stride + 1;
    let mut out = vec![0.0; oc * oh * ow];
    for o in 0..oc {
        for r in 0..oh {
            for c in 0..ow {
                let mut acc = bias[o];
                for i in 0..ic {
                    for dr in 0..k {
                        for dc in 0..k {
                            let y = (r * stride + dr) as isize - pad as isize;
                            let z = (c * stride + dc) as isize - pad as isize;
                            if y < 0 || z < 0 || y >= x.h as isize || z >= x.w as isize {
                                continue;
                            }
                            let xv = x.data[(i * x.h + y as usize) * x.w + z as usize];
                            acc += weight[((o * ic + i) * k + dr) * k + dc] * xv;
                        }
                    }
                }
                out[(o * oh + r) * ow + c] = acc;
            }
        }
    }
    Map { c: oc, h: oh, w: ow, data: out }
}

fn relu(mut m: Map) -> Map {
    for v in &mut m.data {
        *v = v.max(0.0);
    }
    m
}

fn dense(bundle: &WeightBundle, prefix: &str, x: &[f64]) -> Vec<f64> {
    let (shape, weight) = record(bundle, &format!("{prefix}.weight"));
    let (_, bias) = record(bundle, &format!("{prefix}.bias"));
    (0..shape[0])
        .map(|o| bias[o] + (0..shape[1]).map(|i| weight[o * shape[1] + i] * x[i]).sum::<f64>())
        .collect()
}

/// Logits for an HWC image of side `size` with `channels` channels.
pub fn logits(bundle: &WeightBundle, hwc: &[f32], size: usize, channels: usize) -> Vec<f64> {
    let mut chw = vec![0.0; hwc.len()];
    for r in 0..size {
        for c in 0..size {
            for ch in 0..channels {
                chw[(ch * size + r) * size + c] = hwc[(r * size + c) * channels + ch] as f64;
            }
        }
    }
    let input = Map {
        c: channels,
        h: size,
        w: size,
        data: chw,
    };
    let mut x = relu(conv(bundle, "stem", &input, 1));
    let mut b = 0;
    while bundle.get(&format!("block{b}.conv1.weight")).is_some() {
        let y = conv(bundle, &format!("block{b}.conv2"), &relu(conv(bundle, &format!("block{b}.conv1"), &x, 2)), 1);
        let mut s = conv(bundle, &format!("block{b}.proj"), &x, 2);
        for (a, v) in s.data.iter_mut().zip(&y.data) {
            *a += v;
        }
        x = relu(s);
        b += 1;
    }
    let plane = x.h * x.w;
    let pooled: Vec<f64> = (0..x.c)
        .map(|ch| x.data[ch * plane..(ch + 1) * plane].iter().sum::<f64>() / plane as f64)
        .collect();
    let hidden: Vec<f64> = dense(bundle, "fc", &pooled).into_iter().map(|v| v.max(0.0)).collect();
    dense(bundle, "out", &hidden)
}

/// Softmax of two logits, as `(p_optimal, p_not_optimal)`.
pub fn softmax2(l: &[f64]) -> (f64, f64) {
    let m = l[0].max(l[1]);
    let (a, b) = ((l[0] - m).exp(), (l[1] - m).exp());
    (a / (a + b), b / (a + b))
}
