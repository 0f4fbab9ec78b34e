//! Binary configuration dumps.
//!
//! Layout, all integers little-endian:
//!
//! | bytes | field |
//! |-------|-------|
//! | 4     | magic `PERC` |
//! | 4     | format version (u32) |
//! | 8     | p (f64) |
//! | 4     | radius N (u32) |
//! | 4     | center x (i32) |
//! | 4     | center y (i32) |
//! | 8     | seed (u64) |
//! | ...   | horizontal edge bits then vertical edge bits, row-major, packed LSB first |

use std::io::{Read, Write};

use super::Configuration;
use crate::error::{Error, Result};
use crate::lattice::Site;

pub const DUMP_VERSION: u32 = 1;

pub fn write_dump<W: Write>(mut w: W, cfg: &Configuration) -> Result<()> {
    w.write_all(b"PERC")?;
    w.write_all(&DUMP_VERSION.to_le_bytes())?;
    w.write_all(&cfg.p.to_le_bytes())?;
    w.write_all(&(cfg.radius as u32).to_le_bytes())?;
    w.write_all(&cfg.center.x.to_le_bytes())?;
    w.write_all(&cfg.center.y.to_le_bytes())?;
    w.write_all(&cfg.seed.to_le_bytes())?;
    let bits: Vec<bool> = cfg.horizontal.iter().chain(&cfg.vertical).copied().collect();
    let mut bytes = vec![0u8; bits.len().div_ceil(8)];
    for (i, &b) in bits.iter().enumerate() {
        if b {
            bytes[i / 8] |= 1 << (i % 8);
        }
    }
    w.write_all(&bytes)?;
    Ok(())
}

fn take<const K: usize>(r: &mut impl Read) -> Result<[u8; K]> {
    let mut buf = [0u8; K];
    r.read_exact(&mut buf)?;
    Ok(buf)
}

pub fn read_dump<R: Read>(mut r: R) -> Result<Configuration> {
    if &take::<4>(&mut r)? != b"PERC" {
        return Err(Error::Format("bad magic".into()));
    }
    let version = u32::from_le_bytes(take(&mut r)?);
    if version != DUMP_VERSION {
        return Err(Error::Format(format!("unsupported dump version {version}")));
    }
    let p = f64::from_le_bytes(take(&mut r)?);
    let radius = u32::from_le_bytes(take(&mut r)?) as i32;
    let cx = i32::from_le_bytes(take(&mut r)?);
    let cy = i32::from_le_bytes(take(&mut r)?);
    let seed = u64::from_le_bytes(take(&mut r)?);
    let mut cfg = Configuration::from_fn(p, radius, Site::new(cx, cy), seed, |_| false)?;
    let nh = cfg.horizontal.len();
    let total = nh + cfg.vertical.len();
    let mut bytes = vec![0u8; total.div_ceil(8)];
    r.read_exact(&mut bytes)?;
    for i in 0..total {
        let b = bytes[i / 8] >> (i % 8) & 1 == 1;
        if i < nh {
            cfg.horizontal[i] = b;
        } else {
            cfg.vertical[i - nh] = b;
        }
    }
    Ok(cfg)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip() {
        let cfg = Configuration::sample(0.63, 9, 1234).unwrap().translated(Site::new(3, -2));
        let mut buf = Vec::new();
        write_dump(&mut buf, &cfg).unwrap();
        assert_eq!(read_dump(&buf[..]).unwrap(), cfg);
        buf[0] = b'X';
        assert!(read_dump(&buf[..]).is_err());
    }
}
