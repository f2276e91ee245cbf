//! ResNet-10 edge classifier: forward pass and weight loading.
//!
//! Layout: a 3x3 stride-1 stem, four residual blocks that each halve the grid
//! and double the channels (3x3 stride-2 conv, 3x3 conv, 1x1 stride-2
//! projection shortcut), global average pooling, a small fully connected
//! layer and a two-way softmax. Output 0 is the probability that the edge
//! belongs to the optimal tour.

mod layers;
mod weights;

pub use layers::{Conv2d, Dense, Tensor};
pub use weights::{Record, WeightBundle, MAGIC, META_RECORD, VERSION};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, FormatError, Result};
use crate::render::ContextImage;
use crate::scalar::Real;

/// Default confidence threshold for accepting an edge.
pub const DEFAULT_THRESHOLD: f64 = 0.99;

/// Name of the architecture descriptor record.
pub const ARCH_RECORD: &str = "arch";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Architecture {
    pub input_size: usize,
    pub channels: usize,
    pub stem_width: usize,
    pub blocks: usize,
    pub kernel: usize,
    pub fc_hidden: usize,
    pub outputs: usize,
}

impl Architecture {
    /// 96x96x3 input, 64-channel stem, four blocks, 1024 pooled features.
    pub const fn resnet10() -> Self {
        Self {
            input_size: 96,
            channels: 3,
            stem_width: 64,
            blocks: 4,
            kernel: 3,
            fc_hidden: 9,
            outputs: 2,
        }
    }

    /// Same topology with a narrower stem.
    pub const fn with_stem_width(self, stem_width: usize) -> Self {
        Self { stem_width, ..self }
    }

    /// Channel count entering block `b` (and leaving block `b - 1`).
    pub fn width(&self, b: usize) -> usize {
        self.stem_width << b
    }

    /// Length of the pooled feature vector.
    pub fn features(&self) -> usize {
        self.width(self.blocks)
    }

    pub fn validate(&self) -> Result<(), FormatError> {
        let bad = |msg: &str| Err(FormatError::InvalidArchitecture(msg.to_string()));
        if self.input_size == 0 || self.channels == 0 || self.stem_width == 0 || self.fc_hidden == 0 {
            return bad("sizes must be positive");
        }
        if self.outputs != 2 {
            return bad("the head must have exactly two outputs");
        }
        if self.kernel % 2 == 0 {
            return bad("kernel size must be odd");
        }
        if self.blocks == 0 || self.blocks > 16 || self.input_size >> self.blocks == 0 {
            return bad("too many downsampling blocks for the input size");
        }
        Ok(())
    }

    fn to_record(self) -> Record {
        let v = [
            self.input_size,
            self.channels,
            self.stem_width,
            self.blocks,
            self.kernel,
            self.fc_hidden,
            self.outputs,
        ];
        Record::new(ARCH_RECORD, vec![v.len()], v.iter().map(|&x| x as f32).collect())
    }

    fn from_record(r: &Record) -> Result<Self, FormatError> {
        if r.shape != [7] {
            return Err(FormatError::ShapeMismatch {
                name: ARCH_RECORD.into(),
                expected: vec![7],
                found: r.shape.clone(),
            });
        }
        let mut v = [0usize; 7];
        for (slot, &x) in v.iter_mut().zip(&r.data) {
            if !(x >= 0.0 && x.fract() == 0.0 && x < 1e7) {
                return Err(FormatError::InvalidArchitecture(format!("non-integral field {x}")));
            }
            *slot = x as usize;
        }
        let arch = Self {
            input_size: v[0],
            channels: v[1],
            stem_width: v[2],
            blocks: v[3],
            kernel: v[4],
            fc_hidden: v[5],
            outputs: v[6],
        };
        arch.validate()?;
        Ok(arch)
    }
}

impl Default for Architecture {
    fn default() -> Self {
        Self::resnet10()
    }
}

/// Softmax output of the classifier.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Prediction {
    pub p_optimal: f64,
    pub p_not_optimal: f64,
}

impl Prediction {
    pub fn from_logits(optimal: f64, not_optimal: f64) -> Self {
        let m = optimal.max(not_optimal);
        let a = (optimal - m).exp();
        let b = (not_optimal - m).exp();
        Self {
            p_optimal: a / (a + b),
            p_not_optimal: b / (a + b),
        }
    }

    /// Accept iff `p_optimal > threshold`.
    pub fn accept(&self, threshold: f64) -> bool {
        self.p_optimal > threshold
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResidualBlock<R> {
    pub conv1: Conv2d<R>,
    pub conv2: Conv2d<R>,
    pub projection: Conv2d<R>,
}

impl<R: Real> ResidualBlock<R> {
    pub fn forward(&self, x: &Tensor<R>) -> Tensor<R> {
        let y = self.conv2.forward(&self.conv1.forward(x).relu());
        let mut s = self.projection.forward(x);
        for (a, b) in s.data.iter_mut().zip(&y.data) {
            *a += *b;
        }
        s.relu()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Network<R> {
    arch: Architecture,
    stem: Conv2d<R>,
    blocks: Vec<ResidualBlock<R>>,
    fc: Dense<R>,
    out: Dense<R>,
}

fn conv_shape(out: usize, inp: usize, k: usize) -> Vec<usize> {
    vec![out, inp, k, k]
}

/// `(name, shape)` of every parameter tensor, in file order.
pub fn parameter_layout(arch: &Architecture) -> Vec<(String, Vec<usize>)> {
    let k = arch.kernel;
    let mut out = vec![
        ("stem.weight".to_string(), conv_shape(arch.stem_width, arch.channels, k)),
        ("stem.bias".to_string(), vec![arch.stem_width]),
    ];
    for b in 0..arch.blocks {
        let (cin, cout) = (arch.width(b), arch.width(b + 1));
        out.push((format!("block{b}.conv1.weight"), conv_shape(cout, cin, k)));
        out.push((format!("block{b}.conv1.bias"), vec![cout]));
        out.push((format!("block{b}.conv2.weight"), conv_shape(cout, cout, k)));
        out.push((format!("block{b}.conv2.bias"), vec![cout]));
        out.push((format!("block{b}.proj.weight"), conv_shape(cout, cin, 1)));
        out.push((format!("block{b}.proj.bias"), vec![cout]));
    }
    out.push(("fc.weight".into(), vec![arch.fc_hidden, arch.features()]));
    out.push(("fc.bias".into(), vec![arch.fc_hidden]));
    out.push(("out.weight".into(), vec![arch.outputs, arch.fc_hidden]));
    out.push(("out.bias".into(), vec![arch.outputs]));
    out
}

impl<R: Real> Network<R> {
    /// Builds a network from parameter tensors listed in [`parameter_layout`] order.
    fn assemble(arch: Architecture, mut tensors: impl Iterator<Item = Vec<R>>) -> Self {
        let k = arch.kernel;
        let mut next = || tensors.next().expect("parameter tensor");
        let conv = |weight: Vec<R>, bias: Vec<R>, cin: usize, kernel: usize, stride: usize| Conv2d {
            out_channels: bias.len(),
            in_channels: cin,
            kernel,
            stride,
            padding: kernel / 2,
            weight,
            bias,
        };
        let stem = conv(next(), next(), arch.channels, k, 1);
        let blocks = (0..arch.blocks)
            .map(|b| {
                let (cin, cout) = (arch.width(b), arch.width(b + 1));
                ResidualBlock {
                    conv1: conv(next(), next(), cin, k, 2),
                    conv2: conv(next(), next(), cout, k, 1),
                    projection: conv(next(), next(), cin, 1, 2),
                }
            })
            .collect();
        let fc = Dense {
            out_features: arch.fc_hidden,
            in_features: arch.features(),
            weight: next(),
            bias: next(),
        };
        let out = Dense {
            out_features: arch.outputs,
            in_features: arch.fc_hidden,
            weight: next(),
            bias: next(),
        };
        Self {
            arch,
            stem,
            blocks,
            fc,
            out,
        }
    }

    /// He-uniform weights and small uniform biases from a seeded generator.
    pub fn random(arch: Architecture, seed: u64) -> Result<Self> {
        arch.validate()?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let tensors: Vec<Vec<R>> = parameter_layout(&arch)
            .into_iter()
            .map(|(name, shape)| {
                let len: usize = shape.iter().product();
                let bound = if name.ends_with("bias") {
                    0.05
                } else {
                    let fan_in: usize = shape[1..].iter().product();
                    (6.0 / fan_in as f64).sqrt()
                };
                (0..len).map(|_| R::of(rng.random_range(-bound..=bound))).collect()
            })
            .collect();
        Ok(Self::assemble(arch, tensors.into_iter()))
    }

    /// Network with every weight and bias set to zero.
    pub fn zeros(arch: Architecture) -> Result<Self> {
        arch.validate()?;
        let tensors = parameter_layout(&arch)
            .into_iter()
            .map(|(_, shape)| vec![R::zero(); shape.iter().product()]);
        Ok(Self::assemble(arch, tensors))
    }

    pub fn from_bundle(bundle: &WeightBundle) -> Result<Self> {
        let arch = Architecture::from_record(
            bundle
                .get(ARCH_RECORD)
                .ok_or_else(|| FormatError::MissingRecord(ARCH_RECORD.into()))?,
        )?;
        let mut tensors = Vec::new();
        for (name, shape) in parameter_layout(&arch) {
            let r = bundle.get(&name).ok_or_else(|| FormatError::MissingRecord(name.clone()))?;
            if r.shape != shape {
                return Err(FormatError::ShapeMismatch {
                    name,
                    expected: shape,
                    found: r.shape.clone(),
                }
                .into());
            }
            tensors.push(r.data.iter().map(|&v| R::from_f32(v).unwrap_or_else(R::zero)).collect());
        }
        Ok(Self::assemble(arch, tensors.into_iter()))
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        Self::from_bundle(&WeightBundle::from_bytes(bytes)?)
    }

    pub fn load(path: impl AsRef<std::path::Path>) -> Result<Self> {
        Self::from_bundle(&WeightBundle::read(path)?)
    }

    pub fn to_bundle(&self) -> WeightBundle {
        let mut tensors: Vec<&[R]> = vec![&self.stem.weight, &self.stem.bias];
        for b in &self.blocks {
            for c in [&b.conv1, &b.conv2, &b.projection] {
                tensors.push(&c.weight);
                tensors.push(&c.bias);
            }
        }
        tensors.extend([&self.fc.weight[..], &self.fc.bias, &self.out.weight, &self.out.bias]);
        let mut bundle = WeightBundle::new();
        bundle.push(self.arch.to_record()).expect("fresh bundle");
        for ((name, shape), t) in parameter_layout(&self.arch).into_iter().zip(tensors) {
            let data = t.iter().map(|v| v.to_f32().unwrap_or(0.0)).collect();
            bundle.push(Record::new(name, shape, data)).expect("unique parameter names");
        }
        bundle
    }

    pub fn architecture(&self) -> &Architecture {
        &self.arch
    }

    /// Raw head outputs for an HWC float image.
    pub fn logits(&self, hwc: &[f32]) -> Result<Vec<R>> {
        let a = &self.arch;
        let want = a.input_size * a.input_size * a.channels;
        if hwc.len() != want {
            return Err(Error::DimensionMismatch {
                expected: vec![a.input_size, a.input_size, a.channels],
                found: vec![hwc.len()],
            });
        }
        let mut x = self.stem.forward(&Tensor::from_hwc(hwc, a.input_size, a.input_size, a.channels)).relu();
        for b in &self.blocks {
            x = b.forward(&x);
        }
        let mut h = self.fc.forward(&x.global_average_pool());
        for v in &mut h {
            if *v < R::zero() {
                *v = R::zero();
            }
        }
        Ok(self.out.forward(&h))
    }

    pub fn forward(&self, img: &ContextImage) -> Result<Prediction> {
        if img.size() != self.arch.input_size {
            return Err(Error::DimensionMismatch {
                expected: vec![self.arch.input_size],
                found: vec![img.size()],
            });
        }
        self.predict(img.as_slice())
    }

    pub fn predict(&self, hwc: &[f32]) -> Result<Prediction> {
        let l = self.logits(hwc)?;
        Ok(Prediction::from_logits(
            l[0].to_f64().unwrap_or(f64::NAN),
            l[1].to_f64().unwrap_or(f64::NAN),
        ))
    }

    /// Accept iff the predicted optimal probability is strictly above `threshold`.
    pub fn decide(&self, img: &ContextImage, threshold: f64) -> Result<bool> {
        Ok(self.forward(img)?.accept(threshold))
    }
}
