//! The `MLCW` weight container.
//!
//! ```text
//! "MLCW" | u32 version | u32 count | count x record | u32 crc32
//! record = u16 name_len | name | u8 rank | u32 dims[rank] | f32 payload[prod(dims)]
//! ```
//!
//! Everything is little-endian; the CRC covers every byte before it.

use std::collections::HashSet;
use std::path::Path;

use crate::error::{FormatError, Result};

pub const MAGIC: [u8; 4] = *b"MLCW";
pub const VERSION: u32 = 1;
/// Name of the optional free-form metadata record.
pub const META_RECORD: &str = "meta";

/// One named tensor.
#[derive(Debug, Clone, PartialEq)]
pub struct Record {
    pub name: String,
    pub shape: Vec<usize>,
    pub data: Vec<f32>,
}

impl Record {
    pub fn new(name: impl Into<String>, shape: Vec<usize>, data: Vec<f32>) -> Self {
        debug_assert_eq!(shape.iter().product::<usize>(), data.len());
        Self {
            name: name.into(),
            shape,
            data,
        }
    }
}

/// Ordered collection of uniquely named tensors.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct WeightBundle {
    records: Vec<Record>,
}

impl WeightBundle {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn records(&self) -> &[Record] {
        &self.records
    }

    pub fn get(&self, name: &str) -> Option<&Record> {
        self.records.iter().find(|r| r.name == name)
    }

    pub fn push(&mut self, record: Record) -> Result<(), FormatError> {
        if self.get(&record.name).is_some() {
            return Err(FormatError::DuplicateRecord(record.name));
        }
        if record.name.len() > u16::MAX as usize || record.shape.len() > u8::MAX as usize {
            return Err(FormatError::InvalidName);
        }
        self.records.push(record);
        Ok(())
    }

    /// Metadata string, stored one byte per float.
    pub fn meta(&self) -> Option<String> {
        let r = self.get(META_RECORD)?;
        let bytes: Vec<u8> = r.data.iter().map(|&v| v as u8).collect();
        String::from_utf8(bytes).ok()
    }

    pub fn set_meta(&mut self, text: &str) {
        self.records.retain(|r| r.name != META_RECORD);
        let data: Vec<f32> = text.bytes().map(f32::from).collect();
        self.records.push(Record::new(META_RECORD, vec![data.len()], data));
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let payload: usize = self.records.iter().map(|r| 7 + r.name.len() + 4 * r.shape.len() + 4 * r.data.len()).sum();
        let mut out = Vec::with_capacity(16 + payload);
        out.extend_from_slice(&MAGIC);
        out.extend_from_slice(&VERSION.to_le_bytes());
        out.extend_from_slice(&(self.records.len() as u32).to_le_bytes());
        for r in &self.records {
            out.extend_from_slice(&(r.name.len() as u16).to_le_bytes());
            out.extend_from_slice(r.name.as_bytes());
            out.push(r.shape.len() as u8);
            for &d in &r.shape {
                out.extend_from_slice(&(d as u32).to_le_bytes());
            }
            for v in &r.data {
                out.extend_from_slice(&v.to_le_bytes());
            }
        }
        let crc = crc32fast::hash(&out);
        out.extend_from_slice(&crc.to_le_bytes());
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self, FormatError> {
        let mut rd = Reader { bytes, pos: 0 };
        let magic = rd.take(4, "magic")?;
        if magic != MAGIC {
            let mut m = [0u8; 4];
            m.copy_from_slice(magic);
            return Err(FormatError::BadMagic(m));
        }
        let version = rd.u32("version")?;
        if version != VERSION {
            return Err(FormatError::UnsupportedVersion(version));
        }
        let count = rd.u32("record count")?;
        let mut records = Vec::new();
        let mut seen = HashSet::new();
        for idx in 0..count {
            let len = rd.u16(&format!("name length of record {idx}"))? as usize;
            let name = std::str::from_utf8(rd.take(len, &format!("name of record {idx}"))?)
                .map_err(|_| FormatError::InvalidName)?
                .to_string();
            let rank = rd.take(1, &format!("rank of {name:?}"))?[0] as usize;
            let mut shape = Vec::with_capacity(rank);
            for _ in 0..rank {
                shape.push(rd.u32(&format!("dims of {name:?}"))? as usize);
            }
            let elems = shape
                .iter()
                .try_fold(1usize, |acc, &d| acc.checked_mul(d))
                .and_then(|e| e.checked_mul(4).map(|_| e))
                .ok_or_else(|| FormatError::Truncated(format!("payload of {name:?}")))?;
            let raw = rd.take(elems * 4, &format!("payload of {name:?}"))?;
            let data = raw.chunks_exact(4).map(|b| f32::from_le_bytes([b[0], b[1], b[2], b[3]])).collect();
            if !seen.insert(name.clone()) {
                return Err(FormatError::DuplicateRecord(name));
            }
            records.push(Record { name, shape, data });
        }
        let body_end = rd.pos;
        let stored = rd.u32("checksum")?;
        if rd.pos != bytes.len() {
            return Err(FormatError::TrailingBytes(bytes.len() - rd.pos));
        }
        let computed = crc32fast::hash(&bytes[..body_end]);
        if stored != computed {
            return Err(FormatError::ChecksumMismatch { stored, computed });
        }
        Ok(Self { records })
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        let bytes = std::fs::read(path)?;
        Ok(Self::from_bytes(&bytes)?)
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_bytes())?;
        Ok(())
    }
}

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, len: usize, what: &str) -> Result<&'a [u8], FormatError> {
        let end = self
            .pos
            .checked_add(len)
            .filter(|&e| e <= self.bytes.len())
            .ok_or_else(|| FormatError::Truncated(what.to_string()))?;
        let out = &self.bytes[self.pos..end];
        self.pos = end;
        Ok(out)
    }

    fn u16(&mut self, what: &str) -> Result<u16, FormatError> {
        let b = self.take(2, what)?;
        Ok(u16::from_le_bytes([b[0], b[1]]))
    }

    fn u32(&mut self, what: &str) -> Result<u32, FormatError> {
        let b = self.take(4, what)?;
        Ok(u32::from_le_bytes([b[0], b[1], b[2], b[3]]))
    }
}
