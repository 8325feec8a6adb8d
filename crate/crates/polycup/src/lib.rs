//! File formats, reports, exports and the pipeline driver behind the
//! `polycup` command.

pub mod export;
pub mod ingest;
pub mod pipeline;
pub mod report;

pub use export::obj_string;
pub use ingest::{
    parse_raw_volume, parse_voxel_text, read_image, write_raw_volume, write_voxel_text, Format, IngestError,
};
pub use pipeline::{cross_check, run, Config, Run, Stage, StageError};
pub use report::{digest, CupTriple, Report};
