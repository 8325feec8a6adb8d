//! Reading and writing voxel images.
//!
//! Two formats are supported. The text format has a `dims nx ny nz` line
//! followed by one `x y z` line per foreground voxel; `#` starts a comment.
//! VOX3 is a 16-byte header (`VOX3`, then `nx ny nz` as little-endian u32)
//! followed by `nx·ny·nz` bytes in x-fastest order, nonzero meaning
//! foreground.

use std::fmt;
use std::path::Path;
use std::str::FromStr;

use polycup_core::VoxelImage;
use thiserror::Error;

pub const VOX3_MAGIC: &[u8; 4] = b"VOX3";
const HEADER_LEN: usize = 16;

#[derive(Debug, Error)]
pub enum IngestError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("input is not UTF-8 text")]
    NotText,
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("no `dims` line")]
    MissingDims,
    #[error("line {line}: point {point:?} lies outside the {dims:?} grid")]
    OutOfBounds { line: usize, point: [i64; 3], dims: [u32; 3] },
    #[error("not a VOX3 file (bad magic)")]
    BadMagic,
    #[error("truncated VOX3 data: expected {expected} bytes, found {found}")]
    Truncated { expected: u64, found: u64 },
    #[error("VOX3 data has {found} bytes, expected exactly {expected}")]
    TrailingBytes { expected: u64, found: u64 },
    #[error(transparent)]
    Image(#[from] polycup_core::Error),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Vox3,
}

impl Format {
    /// VOX3 if the data starts with the magic, text otherwise.
    pub fn sniff(bytes: &[u8]) -> Format {
        if bytes.starts_with(VOX3_MAGIC) {
            Format::Vox3
        } else {
            Format::Text
        }
    }
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "text" => Ok(Format::Text),
            "vox3" => Ok(Format::Vox3),
            other => Err(format!("unknown format `{other}` (expected text or vox3)")),
        }
    }
}

impl fmt::Display for Format {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Format::Text => "text",
            Format::Vox3 => "vox3",
        })
    }
}

fn numbers<const N: usize>(fields: &[&str], line: usize) -> Result<[i64; N], IngestError> {
    if fields.len() != N {
        return Err(IngestError::Syntax {
            line,
            message: format!("expected {N} integers, found {} fields", fields.len()),
        });
    }
    let mut out = [0; N];
    for (o, f) in out.iter_mut().zip(fields) {
        *o = f.parse().map_err(|_| IngestError::Syntax { line, message: format!("`{f}` is not an integer") })?;
    }
    Ok(out)
}

/// Parses the text format. A voxel listed twice is kept once.
pub fn parse_voxel_text(bytes: &[u8]) -> Result<VoxelImage, IngestError> {
    let text = std::str::from_utf8(bytes).map_err(|_| IngestError::NotText)?;
    let mut image: Option<VoxelImage> = None;
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let content = raw.split('#').next().unwrap_or("");
        let fields: Vec<&str> = content.split_whitespace().collect();
        if fields.is_empty() {
            continue;
        }
        match &mut image {
            None => {
                if fields[0] != "dims" {
                    return Err(IngestError::Syntax { line, message: "expected `dims nx ny nz`".into() });
                }
                let d = numbers::<3>(&fields[1..], line)?;
                if d.iter().any(|&v| v <= 0 || v > u32::MAX as i64) {
                    return Err(IngestError::Syntax { line, message: format!("dimensions {d:?} must be positive") });
                }
                image = Some(VoxelImage::new(d.map(|v| v as u32))?);
            }
            Some(img) => {
                let p = numbers::<3>(&fields, line)?;
                img.set(p, true).map_err(|_| IngestError::OutOfBounds { line, point: p, dims: img.dims() })?;
            }
        }
    }
    image.ok_or(IngestError::MissingDims)
}

/// Writes the text format, voxels in x-fastest order.
pub fn write_voxel_text(img: &VoxelImage) -> String {
    let [nx, ny, nz] = img.dims();
    let mut out = format!("dims {nx} {ny} {nz}\n");
    for [x, y, z] in img.points() {
        out.push_str(&format!("{x} {y} {z}\n"));
    }
    out
}

/// Parses VOX3. The payload must be exactly `nx·ny·nz` bytes.
pub fn parse_raw_volume(bytes: &[u8]) -> Result<VoxelImage, IngestError> {
    if bytes.len() < 4 || &bytes[..4] != VOX3_MAGIC {
        return Err(IngestError::BadMagic);
    }
    if bytes.len() < HEADER_LEN {
        return Err(IngestError::Truncated { expected: HEADER_LEN as u64, found: bytes.len() as u64 });
    }
    let word = |i: usize| u32::from_le_bytes(bytes[4 + 4 * i..8 + 4 * i].try_into().unwrap());
    let dims = [word(0), word(1), word(2)];
    let payload = &bytes[HEADER_LEN..];
    let expected = dims.iter().map(|&d| d as u64).product::<u64>();
    let found = payload.len() as u64;
    if found < expected {
        return Err(IngestError::Truncated { expected, found });
    }
    if found > expected {
        return Err(IngestError::TrailingBytes { expected, found });
    }
    Ok(VoxelImage::from_mask(dims, payload.iter().map(|&b| b != 0).collect())?)
}

/// Writes VOX3 with foreground bytes set to 1.
pub fn write_raw_volume(img: &VoxelImage) -> Vec<u8> {
    let mut out = Vec::with_capacity(HEADER_LEN + img.mask().len());
    out.extend_from_slice(VOX3_MAGIC);
    for d in img.dims() {
        out.extend_from_slice(&d.to_le_bytes());
    }
    out.extend(img.mask().iter().map(|&b| b as u8));
    out
}

pub fn parse(bytes: &[u8], format: Format) -> Result<VoxelImage, IngestError> {
    match format {
        Format::Text => parse_voxel_text(bytes),
        Format::Vox3 => parse_raw_volume(bytes),
    }
}

/// Reads a file, returning its bytes alongside the image; the format is
/// sniffed when not given.
pub fn read_image(path: &Path, format: Option<Format>) -> Result<(Vec<u8>, VoxelImage), IngestError> {
    let bytes = std::fs::read(path).map_err(|source| IngestError::Io { path: path.display().to_string(), source })?;
    let image = parse(&bytes, format.unwrap_or_else(|| Format::sniff(&bytes)))?;
    Ok((bytes, image))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn text_examples() {
        let one = parse_voxel_text(b"dims 1 1 1\n0 0 0").unwrap();
        assert_eq!((one.dims(), one.len()), ([1, 1, 1], 1));
        let pair = parse_voxel_text(b"# corner pair\ndims 2 2 2\n0 0 0\n1 1 1 # far corner\n\n").unwrap();
        assert_eq!(pair.points().collect::<Vec<_>>(), [[0, 0, 0], [1, 1, 1]]);
        let dup = parse_voxel_text(b"dims 2 1 1\n1 0 0\n1 0 0\n").unwrap();
        assert_eq!(dup.len(), 1);
    }

    #[test]
    fn text_errors_carry_line_numbers() {
        let err = |s: &str| parse_voxel_text(s.as_bytes()).unwrap_err();
        assert!(matches!(err("dims 2 1 1\n0 0 0\n5 0 0"), IngestError::OutOfBounds { line: 3, point: [5, 0, 0], .. }));
        assert!(matches!(err("dims 2 1 1\n0 0 -1"), IngestError::OutOfBounds { line: 2, .. }));
        assert!(matches!(err("dims 2 1 1\n\n0 zero 0"), IngestError::Syntax { line: 3, .. }));
        assert!(matches!(err("dims 2 1\n"), IngestError::Syntax { line: 1, .. }));
        assert!(matches!(err("dims 0 1 1\n"), IngestError::Syntax { line: 1, .. }));
        assert!(matches!(err("0 0 0\n"), IngestError::Syntax { line: 1, .. }));
        assert!(matches!(err("# nothing\n"), IngestError::MissingDims));
        assert!(matches!(parse_voxel_text(&[0xff, 0xfe]), Err(IngestError::NotText)));
    }

    #[test]
    fn raw_examples() {
        let mut one = b"VOX3".to_vec();
        for d in [1u32, 1, 1] {
            one.extend(d.to_le_bytes());
        }
        one.push(1);
        assert_eq!(parse_raw_volume(&one).unwrap().len(), 1);

        let mut empty = b"VOX3".to_vec();
        for d in [2u32, 2, 2] {
            empty.extend(d.to_le_bytes());
        }
        empty.extend([0; 8]);
        let img = parse_raw_volume(&empty).unwrap();
        assert!(img.is_empty() && img.dims() == [2, 2, 2]);

        assert!(matches!(parse_raw_volume(b"VOX4...."), Err(IngestError::BadMagic)));
        assert!(matches!(parse_raw_volume(b"VOX3\x01\x00"), Err(IngestError::Truncated { .. })));
        assert!(matches!(parse_raw_volume(&empty[..20]), Err(IngestError::Truncated { expected: 8, found: 4 })));
        let mut long = empty.clone();
        long.push(0);
        assert!(matches!(parse_raw_volume(&long), Err(IngestError::TrailingBytes { expected: 8, found: 9 })));
    }

    #[test]
    fn sniffing() {
        assert_eq!(Format::sniff(b"VOX3\0\0"), Format::Vox3);
        assert_eq!(Format::sniff(b"dims 1 1 1"), Format::Text);
        assert_eq!("vox3".parse::<Format>(), Ok(Format::Vox3));
        assert!("png".parse::<Format>().is_err());
    }
}
