//! Binary memory format.
//!
//! ```text
//! "QAMNET1\0"                      8 bytes
//! version: u32 = 1, N: u32, P: u32 little-endian
//! N·N matrix entries, row-major    (re: f64, im: f64) little-endian
//! P stored patterns × N entries    same layout
//! P labels                         u32 byte length, UTF-8 bytes (0 = no label)
//! CRC-32 (IEEE) of all preceding bytes, u32 little-endian
//! ```

use alloc::string::String;
use alloc::vec::Vec;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::memory::Hologram;

pub const MAGIC: &[u8; 8] = b"QAMNET1\0";
pub const VERSION: u32 = 1;

const HEADER_LEN: usize = 8 + 3 * 4;
const CRC_LEN: usize = 4;
const COMPLEX_LEN: usize = 16;

fn put_complex(out: &mut Vec<u8>, z: Complex64) {
    out.extend_from_slice(&z.re.to_le_bytes());
    out.extend_from_slice(&z.im.to_le_bytes());
}

impl Hologram {
    pub fn to_bytes(&self) -> Vec<u8> {
        let n = self.dim();
        let p = self.pattern_count();
        let label_bytes: usize = self
            .labels()
            .iter()
            .map(|l| 4 + l.as_ref().map_or(0, String::len))
            .sum();
        let mut out =
            Vec::with_capacity(HEADER_LEN + COMPLEX_LEN * (n * n + p * n) + label_bytes + CRC_LEN);
        out.extend_from_slice(MAGIC);
        out.extend_from_slice(&VERSION.to_le_bytes());
        out.extend_from_slice(&(n as u32).to_le_bytes());
        out.extend_from_slice(&(p as u32).to_le_bytes());
        for &z in self.matrix() {
            put_complex(&mut out, z);
        }
        for psi in self.stored_patterns() {
            for &z in psi {
                put_complex(&mut out, z);
            }
        }
        for label in self.labels() {
            let bytes = label.as_deref().unwrap_or("").as_bytes();
            out.extend_from_slice(&(bytes.len() as u32).to_le_bytes());
            out.extend_from_slice(bytes);
        }
        let crc = crc32fast::hash(&out);
        out.extend_from_slice(&crc.to_le_bytes());
        out
    }

    /// Parses a memory and re-checks its structural invariants.
    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        if bytes.len() < MAGIC.len() {
            return Err(Error::Truncated {
                needed: MAGIC.len(),
                available: bytes.len(),
            });
        }
        if &bytes[..MAGIC.len()] != MAGIC {
            return Err(Error::BadMagic);
        }
        if bytes.len() < HEADER_LEN + CRC_LEN {
            return Err(Error::Truncated {
                needed: HEADER_LEN + CRC_LEN,
                available: bytes.len(),
            });
        }
        let (body, tail) = bytes.split_at(bytes.len() - CRC_LEN);
        let stored_crc = u32::from_le_bytes(tail.try_into().unwrap());
        let computed = crc32fast::hash(body);
        if stored_crc != computed {
            return Err(Error::ChecksumMismatch {
                stored: stored_crc,
                computed,
            });
        }

        let mut r = Reader {
            buf: body,
            pos: MAGIC.len(),
        };
        let version = r.u32()?;
        if version != VERSION {
            return Err(Error::UnsupportedVersion(version));
        }
        let n = r.u32()? as usize;
        let p = r.u32()? as usize;
        if n == 0 || p == 0 {
            return Err(Error::Corrupt(alloc::format!(
                "dimension {n}, pattern count {p}"
            )));
        }
        let numeric = n
            .checked_mul(n)
            .and_then(|nn| p.checked_mul(n).and_then(|pn| nn.checked_add(pn)))
            .and_then(|c| c.checked_mul(COMPLEX_LEN))
            .ok_or_else(|| Error::Corrupt(String::from("size overflow")))?;
        r.need(numeric)?;

        let matrix = (0..n * n)
            .map(|_| r.complex())
            .collect::<Result<Vec<_>>>()?;
        let stored = (0..p)
            .map(|_| (0..n).map(|_| r.complex()).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let labels = (0..p)
            .map(|index| {
                let len = r.u32()? as usize;
                let raw = r.take(len)?;
                if len == 0 {
                    return Ok(None);
                }
                core::str::from_utf8(raw)
                    .map(|s| Some(String::from(s)))
                    .map_err(|_| Error::InvalidLabel { index })
            })
            .collect::<Result<Vec<_>>>()?;
        if r.pos != body.len() {
            return Err(Error::TrailingBytes(body.len() - r.pos));
        }

        let h = Hologram::from_raw_parts(n, matrix, stored, labels);
        h.verify_invariants()?;
        Ok(h)
    }
}

struct Reader<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn need(&self, len: usize) -> Result<()> {
        let available = self.buf.len() - self.pos;
        if len > available {
            return Err(Error::Truncated {
                needed: self.pos + len + CRC_LEN,
                available: self.buf.len() + CRC_LEN,
            });
        }
        Ok(())
    }

    fn take(&mut self, len: usize) -> Result<&'a [u8]> {
        self.need(len)?;
        let s = &self.buf[self.pos..self.pos + len];
        self.pos += len;
        Ok(s)
    }

    fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }

    fn f64(&mut self) -> Result<f64> {
        Ok(f64::from_le_bytes(self.take(8)?.try_into().unwrap()))
    }

    fn complex(&mut self) -> Result<Complex64> {
        Ok(Complex64::new(self.f64()?, self.f64()?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::StatePattern;
    use alloc::vec;

    fn sample() -> Hologram {
        let a = StatePattern::from_phases(&[0.1, 0.2, 3.0])
            .unwrap()
            .with_label(Some("a".into()));
        let b = StatePattern::from_phases(&[2.0, 5.0, 1.0]).unwrap();
        Hologram::build(&[a, b]).unwrap()
    }

    #[test]
    fn layout_is_as_documented() {
        let h = sample();
        let bytes = h.to_bytes();
        assert_eq!(&bytes[..8], b"QAMNET1\0");
        assert_eq!(&bytes[8..12], &1u32.to_le_bytes());
        assert_eq!(&bytes[12..16], &3u32.to_le_bytes());
        assert_eq!(&bytes[16..20], &2u32.to_le_bytes());
        assert_eq!(&bytes[20..28], &h.entry(0, 0).re.to_le_bytes());
        assert_eq!(bytes.len(), 20 + 16 * (9 + 6) + (4 + 1) + 4 + 4);
        let crc = crc32fast::hash(&bytes[..bytes.len() - 4]);
        assert_eq!(&bytes[bytes.len() - 4..], &crc.to_le_bytes());
    }

    #[test]
    fn roundtrip() {
        let h = sample();
        let back = Hologram::from_bytes(&h.to_bytes()).unwrap();
        assert_eq!(back, h);
        assert_eq!(back.label(0), Some("a"));
        assert_eq!(back.label(1), None);
    }

    #[test]
    fn bad_magic() {
        let mut bytes = sample().to_bytes();
        bytes[..4].copy_from_slice(b"XXXX");
        assert_eq!(Hologram::from_bytes(&bytes), Err(Error::BadMagic));
    }

    #[test]
    fn truncation_is_detected() {
        let bytes = sample().to_bytes();
        for cut in [3, 10, 23, 100, bytes.len() - 1] {
            let err = Hologram::from_bytes(&bytes[..cut]).unwrap_err();
            assert!(
                matches!(
                    err,
                    Error::Truncated { .. } | Error::ChecksumMismatch { .. }
                ),
                "{err:?}"
            );
        }
    }

    #[test]
    fn wrong_version_is_reported_after_checksum() {
        let mut bytes = sample().to_bytes();
        bytes[8] = 2;
        let len = bytes.len();
        let crc = crc32fast::hash(&bytes[..len - 4]);
        bytes[len - 4..].copy_from_slice(&crc.to_le_bytes());
        assert_eq!(
            Hologram::from_bytes(&bytes),
            Err(Error::UnsupportedVersion(2))
        );
    }

    #[test]
    fn invariant_violation_with_valid_checksum() {
        let h = sample();
        let mut matrix = h.matrix().to_vec();
        matrix[1] += Complex64::new(1e-6, 0.0);
        let bad = Hologram::from_raw_parts(
            3,
            matrix,
            h.stored_patterns().map(<[_]>::to_vec).collect(),
            vec![None, None],
        );
        assert!(matches!(
            Hologram::from_bytes(&bad.to_bytes()),
            Err(Error::Corrupt(_))
        ));
    }
}
