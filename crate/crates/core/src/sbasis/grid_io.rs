//! CSV and little-endian binary fixtures for [`GridFunction`].

use std::io::{BufRead, Read, Write};

use num_complex::Complex64;

use super::grid::{GridFunction, Interval};
use crate::error::{Error, Result};

const CSV_MAGIC: &str = "# almost-hilbert grid v1";
const BIN_MAGIC: &[u8; 4] = b"AHGF";
const BIN_VERSION: u32 = 1;

pub fn write_csv<W: Write>(f: &GridFunction, mut w: W) -> Result<()> {
    writeln!(w, "{CSV_MAGIC}")?;
    writeln!(w, "# dim={}", f.dim())?;
    let bounds: Vec<String> = f
        .bounds()
        .iter()
        .map(|b| format!("{:?}:{:?}", b.lo, b.hi))
        .collect();
    writeln!(w, "# box={}", bounds.join(","))?;
    writeln!(w, "# resolution={}", f.resolution())?;
    writeln!(w, "re,im")?;
    for z in f.samples() {
        writeln!(w, "{:?},{:?}", z.re, z.im)?;
    }
    Ok(())
}

fn header_value<'a>(line: Option<&'a str>, key: &str) -> Result<&'a str> {
    let line = line.ok_or_else(|| Error::Format(format!("missing `{key}` header")))?;
    line.strip_prefix("# ")
        .and_then(|s| s.strip_prefix(key))
        .and_then(|s| s.strip_prefix('='))
        .ok_or_else(|| Error::Format(format!("expected `# {key}=`, found `{line}`")))
}

fn parse_f64(s: &str) -> Result<f64> {
    s.trim()
        .parse()
        .map_err(|_| Error::Format(format!("not a number: `{s}`")))
}

pub fn read_csv<R: BufRead>(r: R) -> Result<GridFunction> {
    let lines: Vec<String> = r.lines().collect::<std::io::Result<_>>()?;
    let mut it = lines.iter().map(|s| s.trim_end()).filter(|s| !s.is_empty());
    if it.next() != Some(CSV_MAGIC) {
        return Err(Error::Format("missing grid header".into()));
    }
    let dim: usize = header_value(it.next(), "dim")?
        .parse()
        .map_err(|_| Error::Format("bad dim".into()))?;
    let bounds = header_value(it.next(), "box")?
        .split(',')
        .map(|iv| {
            let (lo, hi) = iv
                .split_once(':')
                .ok_or_else(|| Error::Format(format!("bad interval `{iv}`")))?;
            Ok(Interval::new(parse_f64(lo)?, parse_f64(hi)?))
        })
        .collect::<Result<Vec<_>>>()?;
    if bounds.len() != dim {
        return Err(Error::Format(format!("dim={dim} but {} intervals", bounds.len())));
    }
    let resolution: usize = header_value(it.next(), "resolution")?
        .parse()
        .map_err(|_| Error::Format("bad resolution".into()))?;
    if it.next() != Some("re,im") {
        return Err(Error::Format("missing `re,im` column header".into()));
    }
    let samples = it
        .map(|row| {
            let (re, im) = row
                .split_once(',')
                .ok_or_else(|| Error::Format(format!("bad row `{row}`")))?;
            Ok(Complex64::new(parse_f64(re)?, parse_f64(im)?))
        })
        .collect::<Result<Vec<_>>>()?;
    GridFunction::new(bounds, resolution, samples)
}

/// Layout: magic `AHGF`, u32 version, u32 dim, `dim` pairs of f64 bounds,
/// u64 resolution, then interleaved f64 `re, im` per sample. All little-endian.
pub fn write_binary<W: Write>(f: &GridFunction, mut w: W) -> Result<()> {
    w.write_all(BIN_MAGIC)?;
    w.write_all(&BIN_VERSION.to_le_bytes())?;
    w.write_all(&(f.dim() as u32).to_le_bytes())?;
    for b in f.bounds() {
        w.write_all(&b.lo.to_le_bytes())?;
        w.write_all(&b.hi.to_le_bytes())?;
    }
    w.write_all(&(f.resolution() as u64).to_le_bytes())?;
    for z in f.samples() {
        w.write_all(&z.re.to_le_bytes())?;
        w.write_all(&z.im.to_le_bytes())?;
    }
    Ok(())
}

fn read_array<const N: usize, R: Read>(r: &mut R) -> Result<[u8; N]> {
    let mut buf = [0u8; N];
    r.read_exact(&mut buf).map_err(|e| match e.kind() {
        std::io::ErrorKind::UnexpectedEof => Error::Format("truncated grid file".into()),
        _ => Error::Io(e),
    })?;
    Ok(buf)
}

pub fn read_binary<R: Read>(mut r: R) -> Result<GridFunction> {
    if &read_array::<4, _>(&mut r)? != BIN_MAGIC {
        return Err(Error::Format("bad magic".into()));
    }
    let version = u32::from_le_bytes(read_array(&mut r)?);
    if version != BIN_VERSION {
        return Err(Error::Format(format!("unsupported version {version}")));
    }
    let dim = u32::from_le_bytes(read_array(&mut r)?) as usize;
    if !(1..=2).contains(&dim) {
        return Err(Error::Format(format!("bad dim {dim}")));
    }
    let mut bounds = Vec::with_capacity(dim);
    for _ in 0..dim {
        let lo = f64::from_le_bytes(read_array(&mut r)?);
        let hi = f64::from_le_bytes(read_array(&mut r)?);
        bounds.push(Interval::new(lo, hi));
    }
    let resolution = u64::from_le_bytes(read_array(&mut r)?);
    let count = usize::try_from(resolution)
        .ok()
        .and_then(|n| n.checked_pow(dim as u32))
        .filter(|&n| n <= 1 << 28)
        .ok_or_else(|| Error::Format(format!("resolution {resolution} too large")))?;
    let mut samples = Vec::with_capacity(count);
    for _ in 0..count {
        let re = f64::from_le_bytes(read_array(&mut r)?);
        let im = f64::from_le_bytes(read_array(&mut r)?);
        samples.push(Complex64::new(re, im));
    }
    let mut extra = [0u8; 1];
    if r.read(&mut extra)? != 0 {
        return Err(Error::Format("trailing bytes after samples".into()));
    }
    GridFunction::new(bounds, resolution as usize, samples)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> GridFunction {
        GridFunction::from_fn(
            vec![Interval::new(-1.0, 2.0), Interval::unit()],
            5,
            |x| Complex64::new(x[0].sin(), x[1] / 3.0),
        )
        .unwrap()
    }

    #[test]
    fn csv_round_trip_is_exact() {
        let f = sample();
        let mut buf = Vec::new();
        write_csv(&f, &mut buf).unwrap();
        assert_eq!(read_csv(buf.as_slice()).unwrap(), f);
    }

    #[test]
    fn binary_round_trip_is_exact() {
        let f = sample();
        let mut buf = Vec::new();
        write_binary(&f, &mut buf).unwrap();
        assert_eq!(buf.len(), 4 + 4 + 4 + 2 * 16 + 8 + 25 * 16);
        assert_eq!(read_binary(buf.as_slice()).unwrap(), f);
    }

    #[test]
    fn corrupt_inputs_rejected() {
        let f = sample();
        let mut buf = Vec::new();
        write_binary(&f, &mut buf).unwrap();
        assert!(matches!(read_binary(&buf[..buf.len() - 3]), Err(Error::Format(_))));
        let mut bad = buf.clone();
        bad[0] = b'X';
        assert!(read_binary(bad.as_slice()).is_err());
        buf.push(0);
        assert!(read_binary(buf.as_slice()).is_err());

        assert!(read_csv("hello\n".as_bytes()).is_err());
        let mut text = Vec::new();
        write_csv(&f, &mut text).unwrap();
        let s = String::from_utf8(text).unwrap().replace("# resolution=5", "# resolution=6");
        assert!(read_csv(s.as_bytes()).is_err());
    }
}
